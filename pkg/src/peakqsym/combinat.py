"""Subsets, compositions, cd-words and interval families.

This is the indexing layer shared by the whole library.  Subsets of the
ground set [n] = {1, ..., n} carry their ambient n and are stored as
bitmasks (bit i-1 represents the element i).  Compositions are tuples of
positive integers.  cd-words are strings over the letters "c" and "d",
graded by deg(c) = 1, deg(d) = 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

# Bitmask subsets fit in a machine word; anything larger is a usage error
# long before it is a performance problem.
MAX_AMBIENT = 62

Composition = tuple[int, ...]


@dataclass(frozen=True, order=True)
class Subset:
    """A subset of [n] = {1, ..., n} together with its ambient n."""

    ambient: int
    mask: int = 0

    def __post_init__(self):
        if not 0 <= self.ambient <= MAX_AMBIENT:
            raise ValueError(f"ambient must be between 0 and {MAX_AMBIENT}, got {self.ambient}")
        if not 0 <= self.mask < (1 << self.ambient):
            raise ValueError(f"mask {self.mask} out of range for ambient {self.ambient}")

    @classmethod
    def from_members(cls, ambient: int, members) -> "Subset":
        mask = 0
        for i in members:
            if not 1 <= i <= ambient:
                raise ValueError(f"element {i} outside ground set [{ambient}]")
            mask |= 1 << (i - 1)
        return cls(ambient, mask)

    @property
    def members(self) -> tuple[int, ...]:
        return tuple(i + 1 for i in range(self.ambient) if self.mask >> i & 1)

    @property
    def size(self) -> int:
        return self.mask.bit_count()

    def __contains__(self, i: int) -> bool:
        return 1 <= i <= self.ambient and bool(self.mask >> (i - 1) & 1)

    def complement(self) -> "Subset":
        return Subset(self.ambient, self.mask ^ ((1 << self.ambient) - 1))

    def reflect(self) -> "Subset":
        """The image of this set under i -> n + 1 - i."""
        return Subset(self.ambient, _reflect_mask(self.mask, self.ambient))

    def is_left_sparse(self) -> bool:
        """True when 1 is absent and no two members are consecutive."""
        return not self.mask & 1 and not self.mask & (self.mask >> 1)

    def is_right_sparse(self) -> bool:
        """True when n is absent and no two members are consecutive."""
        if self.ambient and self.mask >> (self.ambient - 1) & 1:
            return False
        return not self.mask & (self.mask >> 1)

    def __repr__(self):
        return f"Subset({self.ambient}, {{{','.join(map(str, self.members))}}})"


def _reflect_mask(mask: int, n: int) -> int:
    out = 0
    for i in range(n):
        if mask >> i & 1:
            out |= 1 << (n - 1 - i)
    return out


def subsets(n: int):
    """All subsets of [n] in mask order."""
    for mask in range(1 << n):
        yield Subset(n, mask)


def peaks(s: Subset) -> Subset:
    """The peak set of s: members i >= 2 of s whose predecessor i-1 is not in s."""
    return Subset(s.ambient, s.mask & ~(s.mask << 1) & ~1)


def composition_of_subset(s: Subset) -> Composition:
    """The composition (i_1, i_2 - i_1, ..., n + 1 - i_k) of n + 1 attached to s."""
    parts = []
    prev = 0
    for i in s.members:
        parts.append(i - prev)
        prev = i
    parts.append(s.ambient + 1 - prev)
    return tuple(parts)


def subset_of_composition(parts: Composition) -> Subset:
    """Inverse of composition_of_subset: partial sums short of the degree."""
    if not parts or any(not isinstance(p, int) or p < 1 for p in parts):
        raise ValueError(f"composition parts must be positive integers, got {parts!r}")
    degree = sum(parts)
    mask = 0
    total = 0
    for p in parts[:-1]:
        total += p
        mask |= 1 << (total - 1)
    return Subset(degree - 1, mask)


def compositions_of(degree: int) -> list[Composition]:
    """All compositions of `degree`; the empty composition for degree 0."""
    if degree == 0:
        return [()]
    return [composition_of_subset(s) for s in subsets(degree - 1)]


def check_word(w: str) -> str:
    if not isinstance(w, str) or set(w) - {"c", "d"}:
        raise ValueError(f"cd-word must use only the letters c and d, got {w!r}")
    return w


def word_degree(w: str) -> int:
    """deg(c) = 1 and deg(d) = 2."""
    return len(w) + w.count("d")


def word_d_count(w: str) -> int:
    return w.count("d")


def word_c_count(w: str) -> int:
    return len(w) - w.count("d")


def reverse_word(w: str) -> str:
    return w[::-1]


@lru_cache(maxsize=None)
def cd_words(n: int) -> tuple[str, ...]:
    """All cd-words of degree n, lexicographically with c < d.

    Counting them gives the Fibonacci numbers: 1, 1, 2, 3, 5, ...
    """
    if n < 0:
        return ()
    if n == 0:
        return ("",)
    return tuple("c" + w for w in cd_words(n - 1)) + tuple("d" + w for w in cd_words(n - 2))


def sw_of_word(w: str) -> Subset:
    """The set S_w of degrees of the prefixes of w that end in d.

    S_w is a left sparse subset of [n] for a word of degree n, and
    |S_w| equals the number of d's in w.
    """
    check_word(w)
    mask = 0
    deg = 0
    for ch in w:
        deg += 1 if ch == "c" else 2
        if ch == "d":
            mask |= 1 << (deg - 1)
    return Subset(word_degree(w), mask)


def word_of_left_sparse(s: Subset) -> str:
    """Inverse of sw_of_word on left sparse subsets; result has degree = ambient."""
    if not s.is_left_sparse():
        raise ValueError(f"{s!r} is not left sparse")
    out = []
    prev = 0
    for i in s.members:
        out.append("c" * (i - prev - 2))
        out.append("d")
        prev = i
    out.append("c" * (s.ambient - prev))
    return "".join(out)


def is_even_word(w: str) -> bool:
    """True when every run of c's strictly before a d has even length."""
    check_word(w)
    runs = w.split("d")
    return all(len(r) % 2 == 0 for r in runs[:-1])


def fibonacci(k: int) -> int:
    """a_1 = a_2 = 1, a_k = a_{k-1} + a_{k-2}."""
    if k < 1:
        raise ValueError("fibonacci index starts at 1")
    a, b = 1, 1
    for _ in range(k - 1):
        a, b = b, a + b
    return a


@dataclass(frozen=True)
class IntervalFamily:
    """A finite family of integer intervals [lo, hi] inside [n]."""

    ambient: int
    intervals: frozenset[tuple[int, int]]

    def __post_init__(self):
        for lo, hi in self.intervals:
            if not 1 <= lo <= hi <= self.ambient:
                raise ValueError(f"interval [{lo},{hi}] does not sit inside [1,{self.ambient}]")

    @classmethod
    def of(cls, ambient: int, intervals) -> "IntervalFamily":
        return cls(ambient, frozenset((int(lo), int(hi)) for lo, hi in intervals))

    def masks(self) -> tuple[int, ...]:
        return tuple((1 << hi) - (1 << (lo - 1)) for lo, hi in sorted(self.intervals))

    def blocks(self, s: Subset) -> bool:
        """True when s meets every interval of the family."""
        if s.ambient != self.ambient:
            raise ValueError(f"ambient mismatch: subset of [{s.ambient}] against family in [{self.ambient}]")
        return all(s.mask & m for m in self.masks())

    def reflect(self) -> "IntervalFamily":
        n = self.ambient
        return IntervalFamily(n, frozenset((n + 1 - hi, n + 1 - lo) for lo, hi in self.intervals))


def interval_family_of_word(w: str) -> IntervalFamily:
    """The family {{i-1, i} : i in S_w} inside [n], n = deg w."""
    sw = sw_of_word(w)
    return IntervalFamily(sw.ambient, frozenset((i - 1, i) for i in sw.members))


def interval_family_of_right_sparse(s: Subset) -> IntervalFamily:
    """The family {{i, i+1} : i in s} inside [n] for right sparse s."""
    if not s.is_right_sparse():
        raise ValueError(f"{s!r} is not right sparse")
    return IntervalFamily(s.ambient, frozenset((i, i + 1) for i in s.members))
