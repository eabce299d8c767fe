"""The cohomology ring of Gr(m, n) in the basis of Schubert classes q_a.

Products are computed by writing one factor as a polynomial in the special
classes q_k (Giambelli) and applying the horizontal-strip Pieri rule.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import factorial
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Tuple

from .partitions import (
    BoxedPartition,
    Partition,
    PartitionLike,
    as_partition,
    chain_count,
    covers,
    dim_symgroup,
)

Monomial = Tuple[int, ...]


def _perm_sign(perm: Tuple[int, ...]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


@dataclass(frozen=True)
class ChernPolynomial:
    """Integer polynomial in graded variables x_1..x_r with deg x_j = j.

    ``poly`` maps exponent vectors (length r) to nonzero coefficients.
    """

    r: int
    poly: Mapping[Monomial, int]
    symbol: str = "c"

    def __post_init__(self) -> None:
        clean = {tuple(e): c for e, c in self.poly.items() if c}
        for e in clean:
            if len(e) != self.r or any(x < 0 for x in e):
                raise ValueError(f"bad exponent vector {e} for rank {self.r}")
        object.__setattr__(self, "poly", clean)

    @classmethod
    def constant(cls, r: int, value: int = 1, symbol: str = "c") -> "ChernPolynomial":
        return cls(r, {(0,) * r: value}, symbol)

    @classmethod
    def variable(cls, r: int, j: int, symbol: str = "c") -> "ChernPolynomial":
        """x_j, with x_0 = 1 and x_j = 0 outside 0..r."""
        if j == 0:
            return cls.constant(r, 1, symbol)
        if j < 0 or j > r:
            return cls(r, {}, symbol)
        return cls(r, {tuple(int(i == j - 1) for i in range(r)): 1}, symbol)

    def _same(self, other: "ChernPolynomial") -> None:
        if other.r != self.r:
            raise ValueError("rank mismatch")

    def __add__(self, other: "ChernPolynomial") -> "ChernPolynomial":
        self._same(other)
        out = dict(self.poly)
        for e, c in other.poly.items():
            out[e] = out.get(e, 0) + c
        return ChernPolynomial(self.r, out, self.symbol)

    def __neg__(self) -> "ChernPolynomial":
        return ChernPolynomial(self.r, {e: -c for e, c in self.poly.items()}, self.symbol)

    def __sub__(self, other: "ChernPolynomial") -> "ChernPolynomial":
        return self + (-other)

    def __mul__(self, other: "ChernPolynomial") -> "ChernPolynomial":
        self._same(other)
        out: Dict[Monomial, int] = {}
        for e1, c1 in self.poly.items():
            for e2, c2 in other.poly.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return ChernPolynomial(self.r, out, self.symbol)

    def is_zero(self) -> bool:
        return not self.poly

    @staticmethod
    def weight(e: Monomial) -> int:
        return sum((j + 1) * x for j, x in enumerate(e))

    def homogeneous_part(self, degree: int) -> "ChernPolynomial":
        return ChernPolynomial(
            self.r, {e: c for e, c in self.poly.items() if self.weight(e) == degree}, self.symbol
        )

    def _monomial_text(self, e: Monomial) -> str:
        factors = []
        for j, x in enumerate(e):
            if x == 1:
                factors.append(f"{self.symbol}{j + 1}")
            elif x > 1:
                factors.append(f"{self.symbol}{j + 1}^{x}")
        return "*".join(factors)

    def __str__(self) -> str:
        if not self.poly:
            return "0"
        # graded-lex: higher weight first, then lexicographically larger exponents
        keys = sorted(self.poly, key=lambda e: (self.weight(e), e), reverse=True)
        out = ""
        for i, e in enumerate(keys):
            c = self.poly[e]
            mono = self._monomial_text(e)
            mag = abs(c)
            body = mono if mono and mag == 1 else (f"{mag}*{mono}" if mono else str(mag))
            if i == 0:
                out = ("-" if c < 0 else "") + body
            else:
                out += (" - " if c < 0 else " + ") + body
        return out


def _jacobi_trudi(parts: Tuple[int, ...], r: int, symbol: str, bounded: bool) -> ChernPolynomial:
    ell = len(parts)
    if ell == 0:
        return ChernPolynomial.constant(r, 1, symbol)

    def entry(j: int) -> ChernPolynomial:
        if bounded or 0 <= j <= r:
            return ChernPolynomial.variable(r, j, symbol)
        raise ValueError(f"index {j} exceeds the number of variables {r}")

    total = ChernPolynomial(r, {}, symbol)
    for perm in permutations(range(ell)):
        term = ChernPolynomial.constant(r, _perm_sign(perm), symbol)
        for i in range(ell):
            term = term * entry(parts[i] - i + perm[i])
            if term.is_zero():
                break
        total = total + term
    return total


def giambelli_expand(a: BoxedPartition) -> ChernPolynomial:
    """q_a as the determinant det[q_{a_i - i + j}] in q_1..q_{n-m}."""
    return _jacobi_trudi(a.parts, a.width, "q", bounded=True)


def schur_chern(a: PartitionLike, r: int) -> ChernPolynomial:
    """Schur-Chern class c_a of a rank r bundle, via det[c_{a_i - i + j}]."""
    if r < 1:
        raise ValueError("bundle rank must be positive")
    return _jacobi_trudi(as_partition(a).parts, r, "c", bounded=True)


def sub_chern_from_quotient(r: int, m: int) -> Tuple[List[ChernPolynomial], List[ChernPolynomial]]:
    """Solve (1 + s_1 + ...)(1 + q_1 + ... + q_r) = 1 degree by degree.

    Returns s_1..s_m and the relations R_{m+1}..R_{m+r}, which are the would-be
    classes s_j in degrees above the rank m of the subbundle.
    """
    if m < 1 or r < 1:
        raise ValueError("need positive ranks")
    s = [ChernPolynomial.constant(r, 1, "q")]
    for j in range(1, m + r + 1):
        acc = ChernPolynomial(r, {}, "q")
        for i in range(j):
            acc = acc + s[i] * ChernPolynomial.variable(r, j - i, "q")
        s.append(-acc)
    return s[1 : m + 1], s[m + 1 :]


@dataclass(frozen=True)
class CohomologyClass:
    m: int
    n: int
    terms: Mapping[Partition, int]

    def __post_init__(self) -> None:
        if not 0 < self.m < self.n:
            raise ValueError(f"need 0 < m < n, got {self.m}, {self.n}")
        clean: Dict[Partition, int] = {}
        for key, c in self.terms.items():
            p = as_partition(key)
            if len(p) > self.m or p[0] > self.n - self.m:
                raise ValueError(f"{p} is not in P({self.m},{self.n})")
            if c:
                clean[p] = clean.get(p, 0) + c
        object.__setattr__(self, "terms", {p: c for p, c in clean.items() if c})

    @classmethod
    def basis(cls, a: BoxedPartition, coeff: int = 1) -> "CohomologyClass":
        return cls(a.m, a.n, {a.partition: coeff})

    @classmethod
    def unit(cls, m: int, n: int) -> "CohomologyClass":
        return cls(m, n, {Partition(): 1})

    @classmethod
    def zero(cls, m: int, n: int) -> "CohomologyClass":
        return cls(m, n, {})

    @property
    def width(self) -> int:
        return self.n - self.m

    def _check(self, other: "CohomologyClass") -> None:
        if (self.m, self.n) != (other.m, other.n):
            raise ValueError(f"box mismatch: Gr({self.m},{self.n}) vs Gr({other.m},{other.n})")

    def __add__(self, other: "CohomologyClass") -> "CohomologyClass":
        self._check(other)
        out = dict(self.terms)
        for p, c in other.terms.items():
            out[p] = out.get(p, 0) + c
        return CohomologyClass(self.m, self.n, out)

    def scale(self, k: int) -> "CohomologyClass":
        return CohomologyClass(self.m, self.n, {p: k * c for p, c in self.terms.items()})

    def __neg__(self) -> "CohomologyClass":
        return self.scale(-1)

    def __sub__(self, other: "CohomologyClass") -> "CohomologyClass":
        return self + (-other)

    def coefficient(self, a: PartitionLike) -> int:
        return self.terms.get(as_partition(a), 0)

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> Optional[int]:
        """Common |a| of all terms, or None for a mixed (or zero) class."""
        sizes = {p.size for p in self.terms}
        return sizes.pop() if len(sizes) == 1 else None

    def is_homogeneous(self) -> bool:
        return len({p.size for p in self.terms}) <= 1

    def items(self) -> Iterator[Tuple[Partition, int]]:
        return iter(sorted(self.terms.items(), key=lambda kv: kv[0].sort_key()))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = ""
        for i, (p, c) in enumerate(self.items()):
            name = "q[" + ",".join(map(str, p.parts)) + "]"
            body = name if abs(c) == 1 else f"{abs(c)}*{name}"
            if i == 0:
                out = ("-" if c < 0 else "") + body
            else:
                out += (" - " if c < 0 else " + ") + body
        return out


def _boxed(cls: CohomologyClass, p: Partition) -> BoxedPartition:
    return BoxedPartition(p, cls.m, cls.width)


def pieri_q1(cls: CohomologyClass) -> CohomologyClass:
    """Multiply by q_1: each q_a becomes the sum of q_b over the covers b of a."""
    out: Dict[Partition, int] = {}
    for p, c in cls.terms.items():
        for b in covers(_boxed(cls, p)):
            out[b.partition] = out.get(b.partition, 0) + c
    return CohomologyClass(cls.m, cls.n, out)


def horizontal_strips(a: Partition, k: int, m: int, width: int) -> Iterator[Partition]:
    """Partitions in the m x width box obtained from ``a`` by adding a horizontal k-strip."""
    base = a.padded(m)

    def grow(i: int, left: int, acc: List[int]) -> Iterator[Partition]:
        if i == m:
            if left == 0:
                yield Partition(acc)
            return
        cap = width if i == 0 else base[i - 1]
        for extra in range(min(left, cap - base[i]) + 1):
            acc.append(base[i] + extra)
            yield from grow(i + 1, left - extra, acc)
            acc.pop()

    return grow(0, k, [])


def pieri_qk(cls: CohomologyClass, k: int) -> CohomologyClass:
    if not 1 <= k <= cls.width:
        raise ValueError(f"k must lie in 1..{cls.width}, got {k}")
    out: Dict[Partition, int] = {}
    for p, c in cls.terms.items():
        for b in horizontal_strips(p, k, cls.m, cls.width):
            out[b] = out.get(b, 0) + c
    return CohomologyClass(cls.m, cls.n, out)


def evaluate(poly: ChernPolynomial, base: CohomologyClass) -> CohomologyClass:
    """base * poly(q_1, ..., q_r), with the q_k acting by the Pieri rule."""
    if poly.r != base.width:
        raise ValueError("polynomial and class use different numbers of q variables")
    total = CohomologyClass.zero(base.m, base.n)
    for e, c in poly.poly.items():
        term = base
        for j, power in enumerate(e):
            for _ in range(power):
                term = pieri_qk(term, j + 1)
        total = total + term.scale(c)
    return total


def multiply(x: CohomologyClass, y: CohomologyClass) -> CohomologyClass:
    x._check(y)
    total = CohomologyClass.zero(x.m, x.n)
    for p, c in y.terms.items():
        total = total + evaluate(giambelli_expand(_boxed(y, p)), x).scale(c)
    return total


def top_partition(m: int, n: int) -> Partition:
    return Partition((n - m,) * m)


def pairing(a: BoxedPartition, b: BoxedPartition) -> int:
    """Coefficient of the top class in q_a q_b."""
    prod = multiply(CohomologyClass.basis(a), CohomologyClass.basis(b))
    return prod.coefficient(top_partition(a.m, a.n))


def schubert_degree(b: BoxedPartition) -> int:
    """Coefficient of q_b in q_1^|b|."""
    return chain_count(Partition(), b.partition)


def schubert_volume(b: BoxedPartition) -> Fraction:
    return Fraction(dim_symgroup(b.partition), factorial(b.size))


def q1_power(base: CohomologyClass, p: int) -> CohomologyClass:
    out = base
    for _ in range(p):
        out = pieri_q1(out)
    return out


def parse_class(text: str, m: int, n: int) -> CohomologyClass:
    """Read a single basis class written as a partition, e.g. ``"2,1"``."""
    return CohomologyClass(m, n, {Partition.parse(text): 1})


def all_classes(m: int, n: int) -> Iterable[CohomologyClass]:
    from .partitions import enumerate_pmn

    return [CohomologyClass.basis(a) for a in enumerate_pmn(m, n)]
