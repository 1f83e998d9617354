"""The toric g- and h-polynomials and their quasisymmetric extension.

For a graded poset of rank n + 1 the toric f- and g-polynomials obey the
mutual recursion

    f(P, x)  =  sum over y strictly below the top of
                g([bottom, y], x) * (x - 1)^(n - rank(y)),
    g  =  truncation of f:  g_0 = f_0,  g_i = f_i - f_{i-1}  for
          1 <= i <= floor(n / 2),

with f = g = 1 for the one-point poset.  The same recursion makes sense
coefficientwise on quasisymmetric functions through rank truncation, which
extends g to a linear map on all of QSym; on the peak basis that map has a
product closed form built from ballot-number polynomials.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb

from .combinat import Subset, check_word
from .qsym import QSym, from_m_coeffs, m_array
from .poset import GradedPoset


class Polynomial:
    """Dense univariate polynomial over the rationals."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [Fraction(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def constant(cls, c) -> "Polynomial":
        return cls((c,))

    @classmethod
    def monomial(cls, c, k: int) -> "Polynomial":
        return cls((0,) * k + (c,))

    @property
    def degree(self):
        """Degree, with -inf for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else float("-inf")

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Polynomial([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Polynomial([-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            if not self.coeffs or not other.coeffs:
                return Polynomial()
            out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                if a:
                    for j, b in enumerate(other.coeffs):
                        out[i + j] += a * b
            return Polynomial(out)
        return Polynomial([c * Fraction(other) for c in self.coeffs])

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, Polynomial) and self.coeffs == other.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __hash__(self):
        return hash(self.coeffs)

    def __call__(self, x):
        out = Fraction(0)
        for c in reversed(self.coeffs):
            out = out * x + c
        return out

    def __repr__(self):
        if not self.coeffs:
            return "Polynomial(0)"
        bits = [f"{c}*x^{i}" for i, c in enumerate(self.coeffs) if c]
        return "Polynomial(" + " + ".join(bits) + ")"


ONE = Polynomial((1,))
X = Polynomial((0, 1))


@lru_cache(maxsize=None)
def _x_minus_one_pow(j: int) -> Polynomial:
    if j == 0:
        return ONE
    return _x_minus_one_pow(j - 1) * Polynomial((-1, 1))


def g_truncate(f: Polynomial, n: int) -> Polynomial:
    """Pass from the toric f-polynomial of a rank n + 1 poset to g:
    keep the successive differences of coefficients up to degree n // 2."""
    out = [f.coeff(0)]
    for i in range(1, n // 2 + 1):
        out.append(f.coeff(i) - f.coeff(i - 1))
    return Polynomial(out)


# -- posets -----------------------------------------------------------


def fg_poly_poset(p: GradedPoset) -> tuple[Polynomial, Polynomial]:
    """The toric (f, g) pair of a graded poset, by the defining recursion
    with one memoized g per lower interval."""
    memo: dict[int, Polynomial] = {}

    def g_of(y: int) -> Polynomial:
        if y not in memo:
            memo[y] = g_truncate(f_of(y), p.rank[y] - 1) if p.rank[y] else ONE
        return memo[y]

    def f_of(y: int) -> Polynomial:
        n = p.rank[y] - 1
        out = Polynomial()
        for z in range(p.size):
            if z != y and p.leq(z, y):
                out = out + g_of(z) * _x_minus_one_pow(n - p.rank[z])
        return out

    if p.top_rank == 0:
        return ONE, ONE
    f = f_of(p.top)
    return f, g_truncate(f, p.top_rank - 1)


def toric_h(p: GradedPoset) -> tuple[Fraction, ...]:
    """The toric h-vector (h_0, ..., h_n): the coefficients of f reversed."""
    f, _ = fg_poly_poset(p)
    n = p.top_rank - 1
    if n < 0:
        return ()
    return tuple(f.coeff(n - i) for i in range(n + 1))


# -- the linear extension to QSym ------------------------------------


def truncate_rank(element: QSym, k: int) -> QSym:
    """The degree-k element whose coefficient at S (inside [k-1]) is the
    original coefficient at S with k adjoined; this aggregates the flag
    vectors of the rank-k lower intervals when the input comes from a
    poset."""
    degree = element.degree()
    n = degree - 1
    if not 1 <= k <= n:
        raise ValueError(f"truncation rank {k} outside 1..{n}")
    arr = m_array(element, degree)
    coeffs = {}
    for mask in range(1 << (k - 1)):
        v = arr[mask | 1 << (k - 1)]
        if v:
            coeffs[Subset(k - 1, mask)] = v
    return from_m_coeffs(k, coeffs)


def g_on_qsym(element: QSym) -> Polynomial:
    """The toric g-polynomial of a quasisymmetric function: the linear map
    agreeing with the poset recursion on flag elements, applied to each
    homogeneous component and summed.  Scalars map to constants."""
    out = Polynomial.constant(element.counit())
    for d in element.degrees():
        if d >= 1:
            out = out + _g_homogeneous(element.component(d), d)
    return out


def _g_homogeneous(component: QSym, degree: int) -> Polynomial:
    n = degree - 1
    f = Polynomial.constant(component.coeff((degree,))) * _x_minus_one_pow(n)
    for k in range(1, n + 1):
        piece = truncate_rank(component, k)
        if piece:
            f = f + _g_homogeneous(piece, k) * _x_minus_one_pow(n - k)
    return g_truncate(f, n)


# -- closed form on the peak basis -----------------------------------


def ballot(n: int, k: int) -> int:
    """C(n, k) - C(n, k - 1), the ballot-number triangle."""
    if k < 0 or n < 0:
        return 0
    return comb(n, k) - (comb(n, k - 1) if k >= 1 else 0)


def q_poly(m: int) -> Polynomial:
    """The alternating ballot polynomial of a rank-m chain block:
    sum over k <= (m-1)/2 of (-1)^k ballot(m-1, k) x^k; q_poly(1) = 1."""
    if m < 1:
        raise ValueError("q_poly is defined for m >= 1")
    n = m - 1
    return Polynomial([(-1) ** k * ballot(n, k) for k in range(n // 2 + 1)])


def t_poly(m: int) -> Polynomial:
    """The single-term companion for even blocks: for m = n + 1 with n
    even, (-1)^(n/2) ballot(n, n/2) x^(n/2); t_poly(1) = 1."""
    if m < 1 or m % 2 == 0:
        raise ValueError("t_poly needs m = n + 1 with n even")
    n = m - 1
    return Polynomial.monomial((-1) ** (n // 2) * ballot(n, n // 2), n // 2)


def g_theta(w: str) -> Polynomial:
    """g of the peak function of w, in closed form.

    Writing w = c^{n_1} d c^{n_2} d ... c^{n_k} d c^m, the value is zero
    unless every n_j is even, and otherwise equals
    2^(k+1) x^k q_poly(m+1) * product of t_poly(n_j + 1).
    """
    check_word(w)
    runs = [len(r) for r in w.split("d")]
    m = runs[-1]
    inner = runs[:-1]
    if any(r % 2 for r in inner):
        return Polynomial()
    out = Polynomial.monomial(1 << (len(inner) + 1), len(inner)) * q_poly(m + 1)
    for r in inner:
        out = out * t_poly(r + 1)
    return out
