"""Quasisymmetric functions with exact rational coefficients.

Elements are stored in the monomial basis, keyed by compositions; the empty
composition is the unit of degree 0.  The fundamental basis F and the
doubled basis K exist as per-degree conversion views keyed by subsets:
for a homogeneous element of degree n + 1,

    F_S = sum of M_T over T containing S,
    K_S = sum of F_T over T containing S,

with S, T running over subsets of [n].  The same triangular transforms
convert a flag f-vector to the flag h- and k-vectors, so the conversion
helpers below are shared between both readings.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .combinat import (
    Composition,
    Subset,
    IntervalFamily,
    _reflect_mask,
    composition_of_subset,
    subset_of_composition,
)


class QSym:
    """A quasisymmetric function, stored as {composition: Fraction}.

    Instances are treated as immutable: all arithmetic returns new objects
    and nothing in the library mutates `terms` after construction.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean: dict[Composition, Fraction] = {}
        if terms:
            for comp, coeff in terms.items() if isinstance(terms, dict) else terms:
                comp = tuple(comp)
                if any(not isinstance(p, int) or p < 1 for p in comp):
                    raise ValueError(f"bad composition {comp!r}")
                c = Fraction(coeff)
                if c:
                    c0 = clean.get(comp)
                    c = c if c0 is None else c0 + c
                    if c:
                        clean[comp] = c
                    else:
                        del clean[comp]
        self.terms = clean

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls) -> "QSym":
        return cls()

    @classmethod
    def one(cls) -> "QSym":
        return cls({(): 1})

    @classmethod
    def monomial(cls, comp: Composition, coeff=1) -> "QSym":
        """coeff * M_comp."""
        return cls({tuple(comp): coeff})

    @classmethod
    def monomial_of_subset(cls, s: Subset, coeff=1) -> "QSym":
        """coeff * M_S as an element of degree ambient + 1."""
        return cls({composition_of_subset(s): coeff})

    # -- structure ----------------------------------------------------

    def coeff(self, comp: Composition) -> Fraction:
        return self.terms.get(tuple(comp), Fraction(0))

    def degrees(self) -> list[int]:
        return sorted({sum(c) for c in self.terms})

    def component(self, degree: int) -> "QSym":
        return QSym({c: v for c, v in self.terms.items() if sum(c) == degree})

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def degree(self) -> int:
        """Degree of a homogeneous element (0 for the zero element)."""
        degs = self.degrees()
        if len(degs) > 1:
            raise ValueError("element is not homogeneous")
        return degs[0] if degs else 0

    def counit(self) -> Fraction:
        """The coefficient of the empty composition."""
        return self.coeff(())

    def m_coeffs(self, degree: int) -> dict[Subset, Fraction]:
        """Monomial coefficients of the degree-`degree` component, keyed by
        subsets of [degree - 1].  Requires degree >= 1."""
        if degree < 1:
            raise ValueError("subset-keyed coefficients exist in degree >= 1 only")
        out = {}
        for comp, coeff in self.terms.items():
            if sum(comp) == degree:
                out[subset_of_composition(comp)] = coeff
        return out

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other: "QSym") -> "QSym":
        out = dict(self.terms)
        for comp, coeff in other.terms.items():
            c = out.get(comp, 0) + coeff
            if c:
                out[comp] = c
            else:
                out.pop(comp, None)
        return QSym(out)

    def __sub__(self, other: "QSym") -> "QSym":
        return self + (-other)

    def __neg__(self) -> "QSym":
        return QSym({c: -v for c, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, QSym):
            out: dict[Composition, Fraction] = {}
            for a, ca in self.terms.items():
                for b, cb in other.terms.items():
                    cab = ca * cb
                    for comp, mult in _quasi_shuffle(a, b):
                        c = out.get(comp, 0) + cab * mult
                        if c:
                            out[comp] = c
                        else:
                            out.pop(comp, None)
            return QSym(out)
        return QSym({c: v * Fraction(other) for c, v in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, QSym) and self.terms == other.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "QSym(0)"
        bits = []
        for comp in sorted(self.terms, key=lambda c: (sum(c), c)):
            bits.append(f"{self.terms[comp]}*M{list(comp)}")
        return "QSym(" + " + ".join(bits) + ")"


@lru_cache(maxsize=None)
def _quasi_shuffle(a: Composition, b: Composition) -> tuple[tuple[Composition, int], ...]:
    """M_a * M_b as a multiplicity list of compositions (overlapping shuffle)."""
    if not a:
        return ((b, 1),)
    if not b:
        return ((a, 1),)
    out: dict[Composition, int] = {}
    for head, tails in (
        ((a[0],), _quasi_shuffle(a[1:], b)),
        ((b[0],), _quasi_shuffle(a, b[1:])),
        ((a[0] + b[0],), _quasi_shuffle(a[1:], b[1:])),
    ):
        for comp, mult in tails:
            key = head + comp
            out[key] = out.get(key, 0) + mult
    return tuple(out.items())


# -- subset-lattice transforms ---------------------------------------
#
# Arrays are indexed by bitmask over [n].  zeta_lower sends h to
# f[S] = sum over T inside S of h[T]; mobius_lower inverts it.


def zeta_lower(arr: list, n: int) -> list:
    a = list(arr)
    for i in range(n):
        bit = 1 << i
        for mask in range(1 << n):
            if mask & bit:
                a[mask] = a[mask] + a[mask ^ bit]
    return a


def mobius_lower(arr: list, n: int) -> list:
    a = list(arr)
    for i in range(n):
        bit = 1 << i
        for mask in range(1 << n):
            if mask & bit:
                a[mask] = a[mask] - a[mask ^ bit]
    return a


def _to_array(coeffs: dict[Subset, Fraction], n: int) -> list[Fraction]:
    arr = [Fraction(0)] * (1 << n)
    for s, v in coeffs.items():
        if s.ambient != n:
            raise ValueError(f"subset of [{s.ambient}] in a degree-{n + 1} coefficient map")
        arr[s.mask] += Fraction(v)
    return arr


def _from_array(arr: list[Fraction], n: int) -> dict[Subset, Fraction]:
    return {Subset(n, mask): v for mask, v in enumerate(arr) if v}


def m_array(element: QSym, degree: int) -> list[Fraction]:
    n = degree - 1
    arr = [Fraction(0)] * (1 << n)
    for comp, coeff in element.terms.items():
        if sum(comp) == degree:
            arr[subset_of_composition(comp).mask] = coeff
    return arr


def f_coeffs(element: QSym, degree: int) -> dict[Subset, Fraction]:
    """Fundamental-basis coefficients of the degree component."""
    n = degree - 1
    return _from_array(mobius_lower(m_array(element, degree), n), n)


def k_coeffs(element: QSym, degree: int) -> dict[Subset, Fraction]:
    """K-basis coefficients of the degree component."""
    n = degree - 1
    arr = mobius_lower(mobius_lower(m_array(element, degree), n), n)
    return _from_array(arr, n)


def from_m_coeffs(degree: int, coeffs: dict[Subset, Fraction]) -> QSym:
    return QSym({composition_of_subset(s): v for s, v in coeffs.items()})


def from_f_coeffs(degree: int, coeffs: dict[Subset, Fraction]) -> QSym:
    n = degree - 1
    arr = zeta_lower(_to_array(coeffs, n), n)
    return from_m_coeffs(degree, _from_array(arr, n))


def from_k_coeffs(degree: int, coeffs: dict[Subset, Fraction]) -> QSym:
    n = degree - 1
    arr = zeta_lower(zeta_lower(_to_array(coeffs, n), n), n)
    return from_m_coeffs(degree, _from_array(arr, n))


def convert(element: QSym, to: str) -> dict[int, dict[Subset, Fraction]]:
    """Coefficients of every positive-degree component in basis M, F or K."""
    pick = {"M": lambda e, d: e.m_coeffs(d), "F": f_coeffs, "K": k_coeffs}
    try:
        fn = pick[to]
    except KeyError:
        raise ValueError(f"unknown basis {to!r}; expected M, F or K") from None
    return {d: fn(element, d) for d in element.degrees() if d >= 1}


# -- flag vector conversions (same transforms, plain maps) ------------


def _flag_transform(coeffs: dict[Subset, object], steps: int) -> dict[Subset, object]:
    if not coeffs:
        return {}
    n = next(iter(coeffs)).ambient
    arr = [0] * (1 << n)
    for s, v in coeffs.items():
        if s.ambient != n:
            raise ValueError("mixed ambients in flag vector")
        arr[s.mask] = arr[s.mask] + v
    for _ in range(abs(steps)):
        arr = mobius_lower(arr, n) if steps > 0 else zeta_lower(arr, n)
    return {Subset(n, mask): v for mask, v in enumerate(arr) if v}


def flag_f_to_h(f: dict) -> dict:
    return _flag_transform(f, 1)


def flag_h_to_k(h: dict) -> dict:
    return _flag_transform(h, 1)


def flag_f_to_k(f: dict) -> dict:
    return _flag_transform(f, 2)


def flag_h_to_f(h: dict) -> dict:
    return _flag_transform(h, -1)


def flag_k_to_h(k: dict) -> dict:
    return _flag_transform(k, -1)


def flag_k_to_f(k: dict) -> dict:
    return _flag_transform(k, -2)


# -- coalgebra structure ---------------------------------------------


def coproduct(element: QSym) -> dict[tuple[Composition, Composition], Fraction]:
    """Deconcatenation coproduct, as {(left, right): coefficient}."""
    out: dict[tuple[Composition, Composition], Fraction] = {}
    for comp, coeff in element.terms.items():
        for i in range(len(comp) + 1):
            key = (comp[:i], comp[i:])
            c = out.get(key, 0) + coeff
            if c:
                out[key] = c
            else:
                out.pop(key, None)
    return out


def antipode(element: QSym) -> QSym:
    """The antipode, computed degreewise on the fundamental basis:
    F_T of degree n + 1 goes to (-1)^(n+1) F of the reflected complement."""
    out = QSym({(): element.counit()})
    for d in element.degrees():
        if d < 1:
            continue
        n = d - 1
        h = mobius_lower(m_array(element, d), n)
        sign = -1 if d % 2 else 1
        target = [Fraction(0)] * (1 << n)
        full = (1 << n) - 1
        for mask, v in enumerate(h):
            if v:
                target[_reflect_mask(mask ^ full, n)] += sign * v
        out = out + from_m_coeffs(d, _from_array(zeta_lower(target, n), n))
    return out


# -- degree-shift and scaling operators ------------------------------


def raise_degree(element: QSym) -> QSym:
    """The linear map sending M_S of degree n to M_S of degree n + 1:
    on compositions, the last part grows by one (the unit goes to M_(1))."""
    out: dict[Composition, Fraction] = {}
    for comp, coeff in element.terms.items():
        key = comp[:-1] + (comp[-1] + 1,) if comp else (1,)
        c = out.get(key, 0) + coeff
        if c:
            out[key] = c
    return QSym(out)


def dilate(element: QSym) -> QSym:
    """Scale each M_comp by 2^(number of parts); on subset indexing this is
    the factor 2^(|S| + 1) in every positive degree."""
    return QSym({c: v * (1 << len(c)) for c, v in element.terms.items()})


def right_sparse_projection(element: QSym) -> QSym:
    """Keep the M_S terms with S right sparse, kill the rest.

    In composition terms S is right sparse exactly when every part after
    the first is at least 2.
    """
    return QSym(
        {c: v for c, v in element.terms.items() if all(p >= 2 for p in c[1:])}
    )


def interval_qsym(family: IntervalFamily) -> QSym:
    """Sum of M_S over the subsets S of [n] meeting every interval of the family."""
    n = family.ambient
    masks = family.masks()
    out = {}
    for mask in range(1 << n):
        if all(mask & m for m in masks):
            out[composition_of_subset(Subset(n, mask))] = 1
    return QSym(out)
