"""The descent-to-peak transfer map and its diagonalization.

The transfer map sends the fundamental basis element F_S to the peak
function of the peak set of S.  It is an algebra map, restricts to a
diagonalizable endomorphism of the peak algebra, and (after scaling by
2^-(n+1) in degree n + 1) is the transition matrix of a random walk on
peak sets whose stationary law is the distribution of peak sets of a
uniform random permutation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

from .combinat import (
    Subset,
    cd_words,
    interval_family_of_word,
    peaks,
    subsets,
    sw_of_word,
    word_c_count,
    word_d_count,
    word_degree,
    word_of_left_sparse,
)
from .linalg import solve_unique
from .peak import CdPolynomial, cd_index, peak_combination, peak_expansion, peak_function
from .qsym import QSym, m_array, mobius_lower


def peak_transfer(element: QSym) -> QSym:
    """The algebra map F_S -> Theta of the peak set of S, degreewise."""
    out = QSym({(): element.counit()})
    for d in element.degrees():
        if d < 1:
            continue
        n = d - 1
        harr = mobius_lower(m_array(element, d), n)
        for mask, coeff in enumerate(harr):
            if coeff:
                word = word_of_left_sparse(peaks(Subset(n, mask)))
                out = out + coeff * peak_function(word)
    return out


# -- the transfer matrix in the peak basis ----------------------------


@dataclass(frozen=True)
class TransferMatrix:
    """Counts eta[u][w] = #{T : T and its complement block the intervals
    of w, and the peak set of T is S_u}, rows and columns in the canonical
    cd-word order of one degree.

    The transfer map itself acts on peak functions by
    Theta_w -> 2^(#d(w) + 1) * sum over u of eta[u][w] * Theta_u.
    """

    degree: int
    words: tuple[str, ...]
    counts: tuple[tuple[int, ...], ...]

    def index(self, w: str) -> int:
        return self.words.index(w)

    def scaled(self) -> tuple[tuple[int, ...], ...]:
        """Column w picks up the factor 2^(#d(w) + 1)."""
        factors = [1 << (word_d_count(w) + 1) for w in self.words]
        return tuple(
            tuple(c * factors[j] for j, c in enumerate(row)) for row in self.counts
        )

    def scaled_column_sums(self) -> tuple[int, ...]:
        scaled = self.scaled()
        return tuple(sum(row[j] for row in scaled) for j in range(len(self.words)))

    def walk(self) -> tuple[tuple[Fraction, ...], ...]:
        """Column-stochastic matrix: the scaled matrix divided by 2^(n+1)."""
        denom = 1 << (self.degree + 1)
        return tuple(
            tuple(Fraction(c, denom) for c in row) for row in self.scaled()
        )

    def apply_theta(self, poly: CdPolynomial) -> CdPolynomial:
        """The transfer map on peak-basis coordinates of this degree."""
        out: dict[str, Fraction] = {}
        scaled = self.scaled()
        for w, c in poly.coeffs.items():
            j = self.index(w)
            for i, u in enumerate(self.words):
                v = scaled[i][j]
                if v:
                    out[u] = out.get(u, 0) + c * v
        return CdPolynomial(out)


def transfer_matrix_brute(n: int) -> TransferMatrix:
    """Count the blocking sets directly: for every word w and every subset T
    with T and complement blocking, tally the peak set of T."""
    words = cd_words(n)
    index = {w: i for i, w in enumerate(words)}
    counts = [[0] * len(words) for _ in words]
    full = (1 << n) - 1
    for j, w in enumerate(words):
        masks = interval_family_of_word(w).masks()
        for mask in range(1 << n):
            co = mask ^ full
            if all(mask & m for m in masks) and all(co & m for m in masks):
                u = word_of_left_sparse(peaks(Subset(n, mask)))
                counts[index[u]][j] += 1
    return TransferMatrix(n, words, tuple(tuple(r) for r in counts))


def transfer_matrix(n: int) -> TransferMatrix:
    """Closed form: with S_u = {u_1 < ... < u_m}, u_0 = 0, u_{m+1} = n + 2,
    the count for (u, w) is zero if some open gap (u_i, u_{i+1}) holds more
    than one element of S_w, and otherwise the product of u_{i+1} - u_i - 1
    over the gaps that miss S_w entirely."""
    words = cd_words(n)
    sws = [sw_of_word(w).mask for w in words]
    counts = []
    for u in words:
        su = sw_of_word(u)
        bounds = (0,) + su.members + (n + 2,)
        gap_masks = []
        for lo, hi in zip(bounds, bounds[1:]):
            inside = 0
            for x in range(lo + 1, min(hi, n + 1)):
                inside |= 1 << (x - 1)
            gap_masks.append((inside, hi - lo - 1))
        row = []
        for swm in sws:
            val = 1
            for inside, width in gap_masks:
                hit = (swm & inside).bit_count()
                if hit > 1:
                    val = 0
                    break
                if hit == 0:
                    val *= width
            row.append(val)
        counts.append(tuple(row))
    return TransferMatrix(n, words, tuple(counts))


def walk_step(dist: dict[str, Fraction]) -> dict[str, Fraction]:
    """One step of the peak-set walk: multiply by the column-stochastic
    transfer matrix of the common degree of the keys."""
    degrees = {word_degree(w) for w in dist}
    if len(degrees) != 1:
        raise ValueError(f"distribution keys must share one degree, got {sorted(degrees)}")
    n = degrees.pop()
    tm = transfer_matrix(n)
    walk = tm.walk()
    out = {}
    for i, u in enumerate(tm.words):
        total = sum(walk[i][tm.index(w)] * c for w, c in dist.items())
        if total:
            out[u] = total
    return out


# -- peak distributions of random permutations ------------------------


@dataclass(frozen=True)
class PeakDistribution:
    """Counts of permutations of {1, ..., size} by peak set."""

    size: int
    counts: tuple[tuple[Subset, int], ...]

    def as_dict(self) -> dict[Subset, int]:
        return dict(self.counts)

    def total(self) -> int:
        return sum(c for _, c in self.counts)

    def normalized(self) -> dict[str, Fraction]:
        """Probability of each peak set, keyed by its cd-word."""
        t = self.total()
        return {
            word_of_left_sparse(s): Fraction(c, t) for s, c in self.counts
        }

    def element(self) -> QSym:
        """Sum of count * Theta over the observed peak sets."""
        out = QSym.zero()
        for s, c in self.counts:
            out = out + c * peak_function(word_of_left_sparse(s))
        return out


def peak_distribution_enumerate(size: int) -> PeakDistribution:
    """Tally peak sets over all permutations; practical for size <= 9."""
    if not 1 <= size <= 9:
        raise ValueError("permutation enumeration is limited to sizes 1..9")
    n = size - 1
    counts: dict[int, int] = {}
    for perm in permutations(range(size)):
        desc = 0
        for i in range(n):
            if perm[i] > perm[i + 1]:
                desc |= 1 << i
        pk = desc & ~(desc << 1) & ~1
        counts[pk] = counts.get(pk, 0) + 1
    pairs = tuple(sorted((Subset(n, m), c) for m, c in counts.items()))
    return PeakDistribution(size, pairs)


def peak_distribution_power(size: int) -> PeakDistribution:
    """Read the same counts off the peak expansion of (Theta of degree 1)
    raised to the `size` power."""
    if size < 1:
        raise ValueError("size must be positive")
    theta1 = peak_function("")
    power = QSym.one()
    for _ in range(size):
        power = power * theta1
    poly = peak_expansion(power)
    pairs = []
    for w, c in poly.items():
        if c.denominator != 1:
            raise ArithmeticError(f"non-integer peak count {c} for word {w}")
        pairs.append((sw_of_word(w), int(c)))
    return PeakDistribution(size, tuple(sorted(pairs)))


def peak_distribution(size: int) -> PeakDistribution:
    """Peak-set counts of uniform permutations, cross-checked between the
    direct enumeration and the power route whenever both are feasible."""
    by_power = peak_distribution_power(size)
    if size <= 9:
        by_enum = peak_distribution_enumerate(size)
        if by_enum != by_power:
            raise ArithmeticError(f"peak distribution routes disagree at size {size}")
    return by_power


# -- word-level operators and the eigenbasis --------------------------


def theta1_mult_word(w: str) -> CdPolynomial:
    """Multiplication by the degree-1 peak function, on the peak basis:
    Theta_w goes to Theta_cw + Theta_wc, plus Theta with each c replaced
    by d, plus Theta with each d replaced by cd and by dc."""
    out: dict[str, int] = {}

    def add(word):
        out[word] = out.get(word, 0) + 1

    add("c" + w)
    add(w + "c")
    for i, ch in enumerate(w):
        if ch == "c":
            add(w[:i] + "d" + w[i + 1 :])
        else:
            add(w[:i] + "cd" + w[i + 1 :])
            add(w[:i] + "dc" + w[i + 1 :])
    return CdPolynomial(out)


def raise2_word(w: str) -> CdPolynomial:
    """The two-step degree raise on the peak basis: Theta_w goes to
    Theta_{wcc} - Theta_{wd}."""
    return CdPolynomial({w + "cc": 1, w + "d": -1})


def theta1_mult(poly: CdPolynomial) -> CdPolynomial:
    out = CdPolynomial()
    for w, c in poly.coeffs.items():
        out = out + c * theta1_mult_word(w)
    return out


def raise2(poly: CdPolynomial) -> CdPolynomial:
    out = CdPolynomial()
    for w, c in poly.coeffs.items():
        out = out + c * raise2_word(w)
    return out


def transfer_eigenvector_theta(w: str) -> CdPolynomial:
    """The eigenvector of the transfer map attached to w, in peak-basis
    coordinates: read w left to right, apply the multiplication operator
    for c and the two-step raise for d, with the leftmost letter acting
    last, all starting from the degree-1 peak function."""
    poly = CdPolynomial({"": 1})
    for ch in reversed(w):
        poly = theta1_mult(poly) if ch == "c" else raise2(poly)
    return poly


def transfer_eigenvector(w: str) -> QSym:
    return peak_combination(transfer_eigenvector_theta(w))


def transfer_eigenvalue(w: str) -> int:
    return 1 << (word_c_count(w) + 1)


def transfer_spectrum(n: int) -> list[tuple[int, str, CdPolynomial]]:
    """(eigenvalue, word, eigenvector in peak coordinates) for each word of
    degree n; eigenvalues are 2^(#c + 1), i.e. 2^(n+1-2k) with multiplicity
    the number of words with k d's."""
    return [(transfer_eigenvalue(w), w, transfer_eigenvector_theta(w)) for w in cd_words(n)]


def eigen_expansion(element: QSym) -> CdPolynomial:
    """Coordinates of a peak algebra element in the eigenvector basis."""
    theta = peak_expansion(element)
    out: dict[str, Fraction] = {}
    for d in theta.degrees():
        n = d
        words = cd_words(n)
        cols = [transfer_eigenvector_theta(w) for w in words]
        matrix = [[col.coeff(u) for col in cols] for u in words]
        rhs = [theta.coeff(u) for u in words]
        sol = solve_unique(matrix, rhs)
        for w, c in zip(words, sol):
            if c:
                out[w] = c
    return CdPolynomial(out)


# -- nonnegativity cone ----------------------------------------------


def cone_rows_eta(n: int) -> list[tuple[str, dict[str, int]]]:
    """One inequality per word u of degree n: the eta-weighted sum of the
    cd-coefficients must be nonnegative."""
    tm = transfer_matrix(n)
    rows = []
    for i, u in enumerate(tm.words):
        rows.append((u, {w: tm.counts[i][j] for j, w in enumerate(tm.words) if tm.counts[i][j]}))
    return rows


def cone_rows_h(n: int) -> list[tuple[Subset, dict[str, int]]]:
    """The finer system: one inequality per subset T of [n], summing the
    cd-coefficients of the words whose intervals are blocked by both T and
    its complement."""
    words = cd_words(n)
    fams = [(w, interval_family_of_word(w).masks()) for w in words]
    full = (1 << n) - 1
    rows = []
    for mask in range(1 << n):
        co = mask ^ full
        row = {
            w: 1
            for w, masks in fams
            if all(mask & m for m in masks) and all(co & m for m in masks)
        }
        rows.append((Subset(n, mask), row))
    return rows


def cone_check(target) -> tuple[bool, list]:
    """Evaluate both inequality systems on a cd-polynomial (or on the
    cd-index of a quasisymmetric element).  Returns (all nonnegative,
    failures), each failure naming the system, the row and the value."""
    poly = target if isinstance(target, CdPolynomial) else cd_index(target)
    failures = []
    for d in poly.degrees():
        n = d
        part = {w: c for w, c in poly.coeffs.items() if word_degree(w) == n}
        for u, row in cone_rows_eta(n):
            val = sum(c * part.get(w, 0) for w, c in row.items())
            if val < 0:
                failures.append(("eta", u, val))
        for t, row in cone_rows_h(n):
            val = sum(part.get(w, 0) for w in row)
            if val < 0:
                failures.append(("h", t, val))
    return not failures, failures


def zonotope_check(k: int) -> bool:
    """Exact identity: the transfer map applied to the flag element of the
    boolean lattice with a new bottom adjoined equals twice the flag element
    of the face lattice of the k-cube."""
    from . import poset as poset_mod

    lhs = peak_transfer(
        poset_mod.qsym_of_poset(poset_mod.adjoin_hat_below(poset_mod.boolean(k)))
    )
    rhs = 2 * poset_mod.qsym_of_poset(poset_mod.cube_faces(k))
    return lhs == rhs
