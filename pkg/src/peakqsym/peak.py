"""The peak subalgebra, cd-indices, and Eulerian flag relations.

The peak function of a cd-word w of degree n is

    Theta_w = sum over subsets S of [n] meeting every interval {i-1, i},
              i in S_w, of 2^(|S| + 1) M_S,

an element of degree n + 1.  The peak functions are a basis of the peak
algebra Pi, which is also cut out of QSym degreewise by the generalized
Dehn-Sommerville relations.  The cd-index of a quasisymmetric function is
read off from its flag k-coefficients at right sparse subsets by a block
triangular-free exact solve; the ab-index rewrite provides an independent
route to the same coefficients and doubles as a membership test.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .combinat import (
    Composition,
    Subset,
    cd_words,
    compositions_of,
    composition_of_subset,
    interval_family_of_right_sparse,
    interval_family_of_word,
    reverse_word,
    subset_of_composition,
    subsets,
    sw_of_word,
    word_d_count,
    word_degree,
    word_of_left_sparse,
)
from .linalg import SingularSystemError, solve_exact, solve_unique
from .qsym import QSym, from_k_coeffs, m_array, mobius_lower
from . import poset as poset_mod


class NotInPeakAlgebraError(ValueError):
    """Raised when an operation needs a peak algebra element but the input
    violates a Dehn-Sommerville relation (or cannot be written in c and d)."""

    def __init__(self, message, degree=None, relation=None):
        super().__init__(message)
        self.degree = degree
        self.relation = relation


class CdPolynomial:
    """A finite linear combination of cd-words with Fraction coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        clean: dict[str, Fraction] = {}
        if coeffs:
            for w, c in coeffs.items() if isinstance(coeffs, dict) else coeffs:
                if set(w) - {"c", "d"}:
                    raise ValueError(f"bad cd-word {w!r}")
                c = Fraction(c)
                if c:
                    prev = clean.get(w)
                    c = c if prev is None else prev + c
                    if c:
                        clean[w] = c
                    else:
                        del clean[w]
        self.coeffs = clean

    def coeff(self, w: str) -> Fraction:
        return self.coeffs.get(w, Fraction(0))

    def items(self):
        """Terms in canonical order: by degree, then lexicographically (c < d)."""
        return [(w, self.coeffs[w]) for w in sorted(self.coeffs, key=lambda w: (word_degree(w), w))]

    def degrees(self) -> list[int]:
        return sorted({word_degree(w) for w in self.coeffs})

    def __add__(self, other):
        out = dict(self.coeffs)
        for w, c in other.coeffs.items():
            v = out.get(w, 0) + c
            if v:
                out[w] = v
            else:
                out.pop(w, None)
        return CdPolynomial(out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return CdPolynomial({w: -c for w, c in self.coeffs.items()})

    def __mul__(self, scalar):
        return CdPolynomial({w: c * Fraction(scalar) for w, c in self.coeffs.items()})

    __rmul__ = __mul__

    def reverse(self) -> "CdPolynomial":
        return CdPolynomial({reverse_word(w): c for w, c in self.coeffs.items()})

    def c2d(self) -> "CdPolynomial":
        """Divide the coefficient of each word by 2^(number of d's); this is
        the change from the cd basis to the (c, 2d) basis."""
        return CdPolynomial({w: c / (1 << word_d_count(w)) for w, c in self.coeffs.items()})

    def __eq__(self, other):
        return isinstance(other, CdPolynomial) and self.coeffs == other.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __repr__(self):
        if not self.coeffs:
            return "CdPolynomial(0)"
        return "CdPolynomial(" + " + ".join(f"{c}*{w or '1'}" for w, c in self.items()) + ")"


# -- peak functions ---------------------------------------------------


@lru_cache(maxsize=None)
def peak_function(w: str) -> QSym:
    """Theta_w: the dilation of the interval quasisymmetric function of
    {{i-1, i} : i in S_w}; homogeneous of degree deg(w) + 1."""
    fam = interval_family_of_word(w)
    n = fam.ambient
    masks = fam.masks()
    terms = {}
    for mask in range(1 << n):
        if all(mask & m for m in masks):
            comp = composition_of_subset(Subset(n, mask))
            terms[comp] = 1 << len(comp)
    return QSym(terms)


def peak_function_of_set(s: Subset) -> QSym:
    """Theta indexed by a left sparse subset (the peak set form)."""
    return peak_function(word_of_left_sparse(s))


def peak_function_f_coeffs(w: str) -> dict[Subset, Fraction]:
    """Theta_w in the fundamental basis: coefficient 2^(#d + 1) on F_T for
    every T such that both T and its complement block the intervals of w."""
    fam = interval_family_of_word(w)
    n = fam.ambient
    masks = fam.masks()
    full = (1 << n) - 1
    scale = Fraction(1 << (word_d_count(w) + 1))
    out = {}
    for mask in range(1 << n):
        co = mask ^ full
        if all(mask & m for m in masks) and all(co & m for m in masks):
            out[Subset(n, mask)] = scale
    return out


def sparse_peak_function(w: str) -> QSym:
    """The K-basis companion of Theta_w: the sum of K_S over the right
    sparse blocking sets S with |S| = #d's of w."""
    fam = interval_family_of_word(w)
    n = fam.ambient
    j = word_d_count(w)
    coeffs = {}
    for s in subsets(n):
        if s.size == j and s.is_right_sparse() and fam.blocks(s):
            coeffs[s] = Fraction(1)
    return from_k_coeffs(n + 1, coeffs)


def peak_combination(poly: CdPolynomial) -> QSym:
    """The quasisymmetric function sum of coeff * Theta_w."""
    out = QSym.zero()
    for w, c in poly.coeffs.items():
        out = out + c * peak_function(w)
    return out


# -- Dehn-Sommerville relations and membership ------------------------


def euler_relation(k: int) -> dict[Composition, int]:
    """The degree-k Euler form: sum over i + j = k of (-1)^i y_i y_j,
    written as a signed combination of compositions of k (y_0 = 1).
    The k = 1 form cancels to zero; every k >= 2 form is nonzero."""
    out: dict[Composition, int] = {}
    for i in range(k + 1):
        j = k - i
        comp = tuple(p for p in (i, j) if p > 0)
        c = out.get(comp, 0) + (-1) ** i
        if c:
            out[comp] = c
        else:
            out.pop(comp, None)
    return out


@lru_cache(maxsize=None)
def dehn_sommerville_relations(degree: int) -> tuple[dict[Subset, int], ...]:
    """A spanning family of the linear functionals (on monomial coefficients
    of degree-`degree` elements) that vanish exactly on the peak algebra.

    Each functional is alpha . chi_k . beta expanded into compositions and
    read as subset coefficients.  The family is redundant by construction.
    """
    rels = []
    for a in range(degree - 1):
        for alpha in compositions_of(a):
            for k in range(2, degree - a + 1):
                chi = euler_relation(k)
                if not chi:
                    continue
                b = degree - a - k
                for beta in compositions_of(b):
                    rel: dict[Subset, int] = {}
                    for mid, c in chi.items():
                        s = subset_of_composition(alpha + mid + beta)
                        v = rel.get(s, 0) + c
                        if v:
                            rel[s] = v
                        else:
                            rel.pop(s, None)
                    if rel:
                        rels.append(rel)
    return tuple(rels)


def format_relation(relation: dict[Subset, int]) -> str:
    bits = []
    for s in sorted(relation, key=lambda s: (s.size, s.mask)):
        c = relation[s]
        key = ",".join(map(str, s.members))
        bits.append(f"{'+' if c >= 0 else '-'} {abs(c)}*f[{key}]")
    return " ".join(bits).lstrip("+ ")


def find_violation(element: QSym):
    """First violated Dehn-Sommerville functional, as (degree, relation,
    value), or None when the element lies in the peak algebra."""
    for d in element.degrees():
        if d < 1:
            continue
        arr = m_array(element, d)
        for rel in dehn_sommerville_relations(d):
            total = sum(c * arr[s.mask] for s, c in rel.items())
            if total:
                return d, rel, total
    return None


def is_in_peak_algebra(element: QSym) -> bool:
    return find_violation(element) is None


def _require_membership(element: QSym):
    hit = find_violation(element)
    if hit is not None:
        d, rel, value = hit
        raise NotInPeakAlgebraError(
            f"degree-{d} component violates {format_relation(rel)} (value {value})",
            degree=d,
            relation=rel,
        )


# -- cd-index ---------------------------------------------------------


@lru_cache(maxsize=None)
def _ksw_blocks(n: int):
    """For each d-count j: the right sparse subsets of [n] of size j, the
    words of degree n with j d's, and the 0/1 matrix [S_w blocks the
    intervals of S].  Row and column counts agree within every block."""
    words = cd_words(n)
    blocks = []
    max_j = n // 2
    for j in range(max_j + 1):
        rows = [s for s in subsets(n) if s.size == j and s.is_right_sparse()]
        cols = [w for w in words if word_d_count(w) == j]
        mats = []
        for s in rows:
            fam = interval_family_of_right_sparse(s)
            mats.append([1 if fam.blocks(sw_of_word(w)) else 0 for w in cols])
        blocks.append((rows, cols, mats))
    return tuple(blocks)


def cd_index(element: QSym) -> CdPolynomial:
    """The cd-index, computed componentwise for every positive degree.

    For the degree n + 1 component, the flag k-coefficients at right sparse
    subsets determine the cd-coefficients through one exact linear solve per
    d-count; the solve failing would be an internal invariant breach.
    """
    out: dict[str, Fraction] = {}
    for d in element.degrees():
        if d < 1:
            continue
        n = d - 1
        karr = mobius_lower(mobius_lower(m_array(element, d), n), n)
        for rows, cols, mat in _ksw_blocks(n):
            rhs = [karr[s.mask] for s in rows]
            if not cols:
                continue
            try:
                sol = solve_unique(mat, rhs)
            except SingularSystemError as exc:
                raise SingularSystemError(
                    f"cd-coefficient system for degree {d}, d-count {word_d_count(cols[0])} is singular"
                ) from exc
            for w, c in zip(cols, sol):
                if c:
                    out[w] = c
    return CdPolynomial(out)


def c2d_index(element: QSym) -> CdPolynomial:
    """The cd-index rescaled so that d carries a factor 1/2 per occurrence."""
    return cd_index(element).c2d()


def peak_expansion(element: QSym) -> CdPolynomial:
    """Coefficients of the element in the peak function basis.

    Requires peak algebra membership; the expansion of F is half its
    rescaled cd-index, word by word.
    """
    _require_membership(element)
    return cd_index(element).c2d() * Fraction(1, 2)


def eulerian_projection(element: QSym) -> QSym:
    """The projection of QSym onto the peak algebra that reads off the
    cd-index and rebuilds the corresponding peak combination.  Fixes the
    peak algebra pointwise; scalars pass through unchanged."""
    poly = cd_index(element).c2d() * Fraction(1, 2)
    return QSym({(): element.counit()}) + peak_combination(poly)


def peak_antipode_rule(w: str) -> tuple[int, str]:
    """The antipode sends Theta_w to sign * Theta of the reversed word,
    with sign (-1)^(deg w + 1)."""
    return (-1) ** (word_degree(w) + 1), reverse_word(w)


# -- the ab-index oracle ----------------------------------------------


@lru_cache(maxsize=None)
def _ab_expansion(w: str) -> tuple[int, ...]:
    """Masks of the ab-monomials of w under c -> a + b, d -> ab + ba;
    bit p - 1 set means the letter at position p is b."""
    out = [0]
    pos = 0
    for ch in w:
        if ch == "c":
            out = [m for m in out] + [m | 1 << pos for m in out]
            pos += 1
        else:
            out = [m | 1 << (pos + 1) for m in out] + [m | 1 << pos for m in out]
            pos += 2
    return tuple(out)


def cd_index_via_ab(element: QSym) -> CdPolynomial:
    """Rewrite the ab-index (the fundamental-coefficient generating
    polynomial in the letters a, b) exactly in terms of c = a + b and
    d = ab + ba.

    A nonzero residual means the element is not expressible in c and d,
    which is equivalent to failing peak algebra membership at that degree.
    """
    out: dict[str, Fraction] = {}
    for d in element.degrees():
        if d < 1:
            continue
        n = d - 1
        harr = mobius_lower(m_array(element, d), n)
        words = cd_words(n)
        matrix = [[0] * len(words) for _ in range(1 << n)]
        for j, w in enumerate(words):
            for mask in _ab_expansion(w):
                matrix[mask][j] = 1
        sol = solve_exact(matrix, harr)
        if sol is None:
            raise NotInPeakAlgebraError(
                f"degree-{d} component is not expressible in c and d", degree=d
            )
        for w, c in zip(words, sol):
            if c:
                out[w] = c
    return CdPolynomial(out)


def dual_cd_check(p: "poset_mod.GradedPoset") -> bool:
    """cd-index of the dual poset equals the word-reversed cd-index.

    Requires an Eulerian poset; raises ValueError with the failing interval
    otherwise.
    """
    witness = p.eulerian_witness()
    if witness is not None:
        x, y, mu = witness
        raise ValueError(
            f"poset is not Eulerian: mobius({p.label_of(x)}, {p.label_of(y)}) = {mu}"
        )
    here = cd_index(poset_mod.qsym_of_poset(p))
    there = cd_index(poset_mod.qsym_of_poset(poset_mod.dual(p)))
    return there == here.reverse()
