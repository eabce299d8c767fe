"""Partition combinatorics for the box poset P(m, n).

A partition in P(m, n) has at most ``m`` parts, each at most ``n - m``.
Partitions are stored normalized (no trailing zeros); the box is carried
separately by :class:`BoxedPartition`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import factorial, prod
from typing import Iterable, Iterator, List, Sequence, Tuple, Union


@dataclass(frozen=True, order=False)
class Partition:
    parts: Tuple[int, ...]

    def __init__(self, parts: Iterable[int] = ()) -> None:
        seq = tuple(int(x) for x in parts)
        if any(x < 0 for x in seq):
            raise ValueError(f"negative part in {seq}")
        if any(seq[i] < seq[i + 1] for i in range(len(seq) - 1)):
            raise ValueError(f"parts must be weakly decreasing: {seq}")
        while seq and seq[-1] == 0:
            seq = seq[:-1]
        object.__setattr__(self, "parts", seq)

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Read ``"2,1"`` (or ``""``, ``"0"``, ``"()"``) as a partition."""
        body = text.strip().strip("()[]").strip()
        if not body:
            return cls()
        return cls(int(tok) for tok in body.split(","))

    @property
    def size(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __getitem__(self, i: int) -> int:
        """Part ``i`` (0-based); parts beyond the length read as zero."""
        return self.parts[i] if 0 <= i < len(self.parts) else 0

    def padded(self, length: int) -> Tuple[int, ...]:
        if len(self.parts) > length:
            raise ValueError(f"{self} has more than {length} parts")
        return self.parts + (0,) * (length - len(self.parts))

    def conjugate(self) -> "Partition":
        top = self.parts[0] if self.parts else 0
        return Partition(sum(1 for x in self.parts if x >= c) for c in range(1, top + 1))

    def cells(self) -> Iterator[Tuple[int, int]]:
        for i, row in enumerate(self.parts):
            for j in range(row):
                yield i, j

    def sort_key(self) -> Tuple[int, Tuple[int, ...]]:
        return self.size, self.parts

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")"

    def __repr__(self) -> str:
        return f"Partition({self.parts})"


PartitionLike = Union[Partition, "BoxedPartition", Sequence[int]]


def as_partition(a: PartitionLike) -> Partition:
    if isinstance(a, Partition):
        return a
    if isinstance(a, BoxedPartition):
        return a.partition
    return Partition(a)


@dataclass(frozen=True)
class BoxedPartition:
    """A partition together with the m x width box it is required to fit."""

    partition: Partition
    m: int
    width: int

    def __post_init__(self) -> None:
        if self.m < 1 or self.width < 1:
            raise ValueError(f"box must be at least 1 x 1, got {self.m} x {self.width}")
        if len(self.partition) > self.m or self.partition[0] > self.width:
            raise ValueError(f"{self.partition} does not fit in a {self.m} x {self.width} box")

    @classmethod
    def of(cls, parts: PartitionLike, m: int, n: int) -> "BoxedPartition":
        """Element of P(m, n) with the given parts."""
        _check_box(m, n)
        return cls(as_partition(parts), m, n - m)

    @property
    def n(self) -> int:
        return self.m + self.width

    @property
    def parts(self) -> Tuple[int, ...]:
        return self.partition.parts

    @property
    def size(self) -> int:
        return self.partition.size

    @property
    def codim(self) -> int:
        """d(a) = m(n - m) - |a|."""
        return self.m * self.width - self.size

    def padded(self) -> Tuple[int, ...]:
        return self.partition.padded(self.m)

    def __getitem__(self, i: int) -> int:
        return self.partition[i]

    def __str__(self) -> str:
        return str(self.partition)


def _check_box(m: int, n: int) -> None:
    if not (isinstance(m, int) and isinstance(n, int)) or not 0 < m < n:
        raise ValueError(f"need 0 < m < n, got m={m}, n={n}")


def enumerate_pmn(m: int, n: int) -> List[BoxedPartition]:
    """All of P(m, n), sorted by size and then lexicographically."""
    _check_box(m, n)
    width = n - m
    out: List[Partition] = []

    def grow(prefix: List[int], cap: int) -> None:
        if len(prefix) == m:
            out.append(Partition(prefix))
            return
        for x in range(cap + 1):
            prefix.append(x)
            grow(prefix, x)
            prefix.pop()

    grow([], width)
    out.sort(key=Partition.sort_key)
    return [BoxedPartition(p, m, width) for p in out]


def dual(a: BoxedPartition) -> BoxedPartition:
    """a* = (n-m-a_m, ..., n-m-a_1)."""
    parts = a.padded()
    return BoxedPartition(Partition(a.width - x for x in reversed(parts)), a.m, a.width)


def conjugate(a: BoxedPartition) -> BoxedPartition:
    """Transpose of the diagram, as an element of P(n-m, n)."""
    return BoxedPartition(a.partition.conjugate(), a.width, a.m)


def leq(a: PartitionLike, b: PartitionLike) -> bool:
    pa, pb = as_partition(a), as_partition(b)
    return all(pa[i] <= pb[i] for i in range(len(pa)))


def _young_covers(parts: Tuple[int, ...], max_len: int, width: int) -> Iterator[Tuple[int, ...]]:
    padded = parts + (0,)
    for i in range(min(len(parts) + 1, max_len)):
        if padded[i] < width and (i == 0 or padded[i - 1] > padded[i]):
            new = list(padded)
            new[i] += 1
            while new and new[-1] == 0:
                new.pop()
            yield tuple(new)


def covers(a: BoxedPartition) -> List[BoxedPartition]:
    """Elements of P(m, n) obtained from ``a`` by adding one box."""
    return [
        BoxedPartition(Partition(c), a.m, a.width)
        for c in _young_covers(a.parts, a.m, a.width)
    ]


def chain_count(a: PartitionLike, b: PartitionLike) -> int:
    """Number of saturated chains from ``a`` up to ``b`` in Young's lattice."""
    pa, pb = as_partition(a), as_partition(b)
    if not leq(pa, pb):
        return 0
    target = pb.parts
    bound = len(target)

    @lru_cache(maxsize=None)
    def count(c: Tuple[int, ...]) -> int:
        if c == target:
            return 1
        total = 0
        for nxt in _young_covers(c, bound, target[0]):
            if all(x <= (target[i] if i < bound else 0) for i, x in enumerate(nxt)):
                total += count(nxt)
        return total

    return count(pa.parts)


def hook_lengths(a: PartitionLike) -> List[int]:
    p = as_partition(a)
    conj = p.conjugate()
    return [p[i] - j + conj[j] - i - 1 for i, j in p.cells()]


def dim_symgroup(a: PartitionLike) -> int:
    """Dimension of the symmetric-group irreducible V_a (hook-length formula)."""
    p = as_partition(a)
    return factorial(p.size) // prod(hook_lengths(p))


def dim_schur(a: PartitionLike, m: int) -> int:
    """Dimension of the Schur module S_a(C^m) (hook-content formula)."""
    p = as_partition(a)
    if len(p) > m:
        return 0
    num = prod(m + j - i for i, j in p.cells())
    return num // prod(hook_lengths(p))


def max_integral_dim(a: BoxedPartition) -> int:
    """max{|b| : b in P(m, n), b not >= a}, via the maximal elements a^q."""
    if a.size == 0:
        raise ValueError("every b satisfies b >= (); no integral bound exists")
    parts = a.padded() + (0,)
    best = 0
    for q in range(a.m):
        if parts[q] > parts[q + 1]:
            best = max(best, q * a.width + (a.m - q) * (parts[q] - 1))
    return best

