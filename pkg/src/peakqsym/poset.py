"""Finite graded posets with unique bottom and top.

Elements are integers 0 .. size-1.  A poset is built from its cover
relation; validation checks that the covers define a DAG with a single
source and sink in which every cover raises rank by exactly one, so every
maximal chain runs from bottom to top through all ranks.

Flag counting walks rank-selected comparability matrices instead of
enumerating chains, which keeps the full flag vector cheap for the poset
sizes this library targets.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product as iproduct

from .combinat import Subset
from .qsym import QSym, from_m_coeffs


class PosetValidationError(ValueError):
    """The supplied cover data does not describe a graded bounded poset."""


class GradedPoset:
    __slots__ = ("size", "covers", "rank", "labels", "bottom", "top", "_strata", "_above", "_mobius_memo")

    def __init__(self, size: int, covers, labels=None):
        covers = sorted({(int(a), int(b)) for a, b in covers})
        if size < 1:
            raise PosetValidationError("poset needs at least one element")
        for a, b in covers:
            if not (0 <= a < size and 0 <= b < size):
                raise PosetValidationError(f"cover ({a}, {b}) references a missing element")
            if a == b:
                raise PosetValidationError(f"cover ({a}, {a}) is a self-loop")
        if labels is not None:
            labels = tuple(str(x) for x in labels)
            if len(labels) != size:
                raise PosetValidationError("label count does not match element count")

        up = [[] for _ in range(size)]
        indeg = [0] * size
        outdeg = [0] * size
        for a, b in covers:
            up[a].append(b)
            indeg[b] += 1
            outdeg[a] += 1

        sources = [x for x in range(size) if indeg[x] == 0]
        sinks = [x for x in range(size) if outdeg[x] == 0]
        if len(sources) != 1:
            raise PosetValidationError(f"expected a unique bottom, found minimal elements {sources}")
        if len(sinks) != 1:
            raise PosetValidationError(f"expected a unique top, found maximal elements {sinks}")

        # topological order (Kahn); a leftover edge means a cycle
        order = []
        deg = list(indeg)
        stack = [sources[0]]
        while stack:
            x = stack.pop()
            order.append(x)
            for y in up[x]:
                deg[y] -= 1
                if deg[y] == 0:
                    stack.append(y)
        if len(order) != size:
            raise PosetValidationError("cover relation contains a cycle")

        rank = [None] * size
        rank[sources[0]] = 0
        for x in order:
            for y in up[x]:
                want = rank[x] + 1
                if rank[y] is None:
                    rank[y] = want
                elif rank[y] != want:
                    raise PosetValidationError(
                        f"cover ({x}, {y}) raises rank by {rank[y] - rank[x]}, not 1; poset is not graded"
                    )

        self.size = size
        self.covers = tuple(covers)
        self.rank = tuple(rank)
        self.labels = labels
        self.bottom = sources[0]
        self.top = sinks[0]

        top_rank = rank[self.top]
        strata = [[] for _ in range(top_rank + 1)]
        for x in range(size):
            strata[rank[x]].append(x)
        self._strata = tuple(tuple(s) for s in strata)

        above = [1 << x for x in range(size)]
        for x in reversed(order):
            for y in up[x]:
                above[x] |= above[y]
        self._above = tuple(above)
        self._mobius_memo = {}

    # -- basic queries ------------------------------------------------

    @property
    def top_rank(self) -> int:
        return self.rank[self.top]

    def leq(self, x: int, y: int) -> bool:
        return bool(self._above[x] >> y & 1)

    def elements_of_rank(self, r: int) -> tuple[int, ...]:
        return self._strata[r]

    def label_of(self, x: int) -> str:
        return self.labels[x] if self.labels else str(x)

    # -- flag counting ------------------------------------------------

    def flag_f(self, s: Subset) -> int:
        """Number of chains visiting exactly the ranks in s (a subset of
        [top_rank - 1])."""
        n = self.top_rank - 1
        if s.ambient != n:
            raise ValueError(f"rank set must sit inside [{n}], got ambient {s.ambient}")
        counts = {self.bottom: 1}
        for r in s.members:
            counts = self._step(counts, r)
        return sum(counts.values())

    def _step(self, counts: dict[int, int], r: int) -> dict[int, int]:
        out = {}
        for y in self._strata[r]:
            total = 0
            for x, c in counts.items():
                if self._above[x] >> y & 1:
                    total += c
            if total:
                out[y] = total
        return out

    def flag_vector(self) -> dict[Subset, int]:
        """The full flag f-vector, indexed by subsets of [top_rank - 1]."""
        if self.top_rank == 0:
            return {}
        n = self.top_rank - 1
        out: dict[Subset, int] = {}

        def descend(next_rank: int, mask: int, counts: dict[int, int]):
            out[Subset(n, mask)] = sum(counts.values()) if mask else 1
            for r in range(next_rank, n + 1):
                descend(r + 1, mask | 1 << (r - 1), self._step(counts, r))

        descend(1, 0, {self.bottom: 1})
        return out

    # -- Mobius function and the Eulerian test ------------------------

    def mobius(self, x: int, y: int) -> int:
        if not self.leq(x, y):
            return 0
        memo = self._mobius_memo
        key = (x, y)
        if key not in memo:
            if x == y:
                memo[key] = 1
            else:
                total = 0
                for z in range(self.size):
                    if z != y and self._above[x] >> z & 1 and self._above[z] >> y & 1:
                        total += self.mobius(x, z)
                memo[key] = -total
        return memo[key]

    def eulerian_witness(self):
        """None when Eulerian; otherwise (x, y, mobius) for a failing interval."""
        by_rank = sorted(range(self.size), key=lambda x: self.rank[x])
        for x in by_rank:
            for y in by_rank:
                if self.leq(x, y):
                    mu = self.mobius(x, y)
                    if mu != (-1) ** (self.rank[y] - self.rank[x]):
                        return x, y, mu
        return None

    def is_eulerian(self) -> bool:
        return self.eulerian_witness() is None

    def __repr__(self):
        return f"GradedPoset(size={self.size}, rank={self.top_rank})"


# -- families --------------------------------------------------------


def chain(k: int) -> GradedPoset:
    """The chain with ranks 0 .. k."""
    if k < 0:
        raise ValueError("chain length must be nonnegative")
    return GradedPoset(k + 1, [(i, i + 1) for i in range(k)])


def boolean(k: int) -> GradedPoset:
    """The lattice of subsets of a k-element set."""
    if k < 0:
        raise ValueError("boolean rank must be nonnegative")
    covers = []
    for mask in range(1 << k):
        for i in range(k):
            if not mask >> i & 1:
                covers.append((mask, mask | 1 << i))
    return GradedPoset(1 << k, covers)


def polygon(m: int) -> GradedPoset:
    """The face lattice of an m-gon (rank 3)."""
    if m < 3:
        raise ValueError("polygon needs at least 3 vertices")
    bottom = 0
    vert = lambda i: 1 + i
    edge = lambda i: 1 + m + i
    top = 1 + 2 * m
    covers = []
    for i in range(m):
        covers.append((bottom, vert(i)))
        covers.append((vert(i), edge(i)))
        covers.append((vert((i + 1) % m), edge(i)))
        covers.append((edge(i), top))
    return GradedPoset(2 * m + 2, covers)


def simplex_faces(d: int) -> GradedPoset:
    """The face lattice of the d-simplex, empty face and full face included."""
    if d < 0:
        raise ValueError("simplex dimension must be nonnegative")
    return boolean(d + 1)


def cube_faces(d: int) -> GradedPoset:
    """The face lattice of the d-cube, empty face included (rank d + 1)."""
    if d < 0:
        raise ValueError("cube dimension must be nonnegative")
    faces = list(iproduct("01*", repeat=d))
    index = {f: i + 1 for i, f in enumerate(faces)}
    covers = []
    for f in faces:
        stars = [i for i, ch in enumerate(f) if ch == "*"]
        if not stars:
            covers.append((0, index[f]))
        for i in stars:
            for fix in "01":
                g = f[:i] + (fix,) + f[i + 1 :]
                covers.append((index[g], index[f]))
    labels = ["empty"] + ["".join(f) for f in faces]
    return GradedPoset(len(faces) + 1, covers, labels=labels)


def product(p: GradedPoset, q: GradedPoset) -> GradedPoset:
    """Cartesian product; ranks add."""
    idx = lambda x, y: x * q.size + y
    covers = []
    for x in range(p.size):
        for a, b in q.covers:
            covers.append((idx(x, a), idx(x, b)))
    for a, b in p.covers:
        for y in range(q.size):
            covers.append((idx(a, y), idx(b, y)))
    return GradedPoset(p.size * q.size, covers)


def dual(p: GradedPoset) -> GradedPoset:
    """Order reversed; covers flip."""
    return GradedPoset(p.size, [(b, a) for a, b in p.covers], labels=p.labels)


def adjoin_hat_below(p: GradedPoset) -> GradedPoset:
    """Add a new bottom element under the existing one; all ranks shift by 1."""
    new = p.size
    covers = list(p.covers) + [(new, p.bottom)]
    return GradedPoset(p.size + 1, covers)


def from_covers(elements, cover_pairs) -> GradedPoset:
    """Build from labelled cover data, validating as usual."""
    labels = [str(x) for x in elements]
    if len(set(labels)) != len(labels):
        raise PosetValidationError("element labels must be distinct")
    index = {lab: i for i, lab in enumerate(labels)}
    covers = []
    for a, b in cover_pairs:
        a, b = str(a), str(b)
        if a not in index or b not in index:
            raise PosetValidationError(f"cover ({a}, {b}) references an unknown element")
        covers.append((index[a], index[b]))
    return GradedPoset(len(labels), covers, labels=labels)


_FAMILIES = {
    "chain": chain,
    "boolean": boolean,
    "polygon": polygon,
    "simplex_faces": simplex_faces,
    "cube_faces": cube_faces,
}


def build_family(spec: str) -> GradedPoset:
    """Parse a family description like "boolean:4" or "polygon:5"."""
    name, sep, arg = spec.partition(":")
    if name not in _FAMILIES:
        raise ValueError(f"unknown poset family {name!r}; choose from {sorted(_FAMILIES)}")
    if not sep or not arg:
        raise ValueError(f"family {name!r} needs a numeric parameter, e.g. {name}:3")
    try:
        k = int(arg)
    except ValueError:
        raise ValueError(f"bad family parameter {arg!r}") from None
    return _FAMILIES[name](k)


# -- the quasisymmetric function of a poset --------------------------


def qsym_of_poset(p: GradedPoset) -> QSym:
    """Sum of flag_f(S) * M_S over all rank sets S; degree = top_rank."""
    degree = p.top_rank
    if degree == 0:
        return QSym.one()
    coeffs = {s: Fraction(v) for s, v in p.flag_vector().items()}
    return from_m_coeffs(degree, coeffs)
