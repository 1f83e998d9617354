"""Exact linear algebra for small dense systems.

Everything is done over the rationals with fractions.Fraction; nothing here
ever rounds.  Rank computations get a fast path through modular arithmetic:
full rank modulo a prime certifies full rank over the rationals, and the
expensive exact elimination only runs when that certificate is unavailable.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

_PRIMES = (2147483629, 2147483587)


class SingularSystemError(ArithmeticError):
    """A linear system that was expected to determine its unknowns did not."""


def solve_unique(matrix, rhs) -> list[Fraction]:
    """Solve the square system A x = b exactly.

    Raises SingularSystemError when A is singular.
    """
    n = len(matrix)
    aug = [[Fraction(x) for x in row] + [Fraction(rhs[i])] for i, row in enumerate(matrix)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise SingularSystemError(f"square system is singular (no pivot in column {col})")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = Fraction(1) / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        prow = aug[col]
        for r in range(n):
            f = aug[r][col]
            if r != col and f:
                aug[r] = [a - f * b for a, b in zip(aug[r], prow)]
    return [aug[i][n] for i in range(n)]


def solve_exact(matrix, rhs) -> list[Fraction] | None:
    """Solve A x = b exactly for a (possibly overdetermined) system.

    Returns None when the system is inconsistent; raises SingularSystemError
    when solutions exist but are not unique.
    """
    m = len(matrix)
    k = len(matrix[0]) if m else 0
    aug = [[Fraction(x) for x in row] + [Fraction(rhs[i])] for i, row in enumerate(matrix)]
    pivots = []
    r = 0
    for col in range(k):
        piv = next((i for i in range(r, m) if aug[i][col] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = Fraction(1) / aug[r][col]
        aug[r] = [v * inv for v in aug[r]]
        prow = aug[r]
        for i in range(m):
            f = aug[i][col]
            if i != r and f:
                aug[i] = [a - f * b for a, b in zip(aug[i], prow)]
        pivots.append(col)
        r += 1
    for i in range(r, m):
        if aug[i][k] != 0:
            return None
    if len(pivots) != k:
        raise SingularSystemError("system does not determine all unknowns")
    return [aug[i][k] for i in range(k)]


def _clear_denominators(matrix) -> list[list[int]]:
    out = []
    for row in matrix:
        fr = [Fraction(x) for x in row]
        lcm = 1
        for x in fr:
            d = x.denominator
            lcm = lcm * d // _gcd(lcm, d)
        out.append([int(x * lcm) for x in fr])
    return out


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def rank_mod_p(int_matrix, p: int) -> int:
    """Rank of an integer matrix over GF(p).  Always a lower bound for the
    rational rank; equality with min(rows, cols) certifies full rank."""
    m = len(int_matrix)
    if m == 0:
        return 0
    k = len(int_matrix[0])
    if k == 0:
        return 0
    a = np.array([[x % p for x in row] for row in int_matrix], dtype=np.int64)
    rank = 0
    for col in range(k):
        if rank == m:
            break
        nz = np.nonzero(a[rank:, col])[0]
        if nz.size == 0:
            continue
        piv = rank + int(nz[0])
        if piv != rank:
            a[[rank, piv]] = a[[piv, rank]]
        inv = pow(int(a[rank, col]), -1, p)
        a[rank] = a[rank] * inv % p
        rest = np.nonzero(a[rank + 1 :, col])[0] + rank + 1
        if rest.size:
            a[rest] = (a[rest] - np.outer(a[rest, col], a[rank])) % p
        rank += 1
    return rank


def rank_exact(matrix) -> int:
    """Rank over the rationals by fraction elimination."""
    rows = [[Fraction(x) for x in row] for row in matrix]
    m = len(rows)
    k = len(rows[0]) if m else 0
    rank = 0
    for col in range(k):
        piv = next((i for i in range(rank, m) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        prow = rows[rank]
        inv = Fraction(1) / prow[col]
        rows[rank] = prow = [v * inv for v in prow]
        for i in range(rank + 1, m):
            f = rows[i][col]
            if f:
                rows[i] = [a - f * b for a, b in zip(rows[i], prow)]
        rank += 1
        if rank == m:
            break
    return rank


def rank(matrix) -> int:
    """Exact rational rank, with a modular full-rank fast path."""
    m = len(matrix)
    if m == 0 or len(matrix[0]) == 0:
        return 0
    ints = _clear_denominators(matrix)
    cap = min(m, len(matrix[0]))
    for p in _PRIMES:
        if rank_mod_p(ints, p) == cap:
            return cap
    return rank_exact(matrix)


def independent(vectors) -> bool:
    """Exact linear independence of a list of coefficient vectors."""
    vectors = list(vectors)
    return rank(vectors) == len(vectors)
