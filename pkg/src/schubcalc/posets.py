"""Bruhat (ideal) posets of the compact irreducible Hermitian symmetric spaces."""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass, field, replace
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

from .partitions import Partition, conjugate, covers, dim_schur, dual, enumerate_pmn

PINNED = "pinned"
UNPINNED = "computed, unpinned"


class LabelError(ValueError):
    """Raised when dimension labels are requested for an unsupported space."""


@dataclass(frozen=True)
class PosetNode:
    id: str
    degree: int
    label: str
    dual: str
    dim_label: Optional[int] = None
    dim_status: Optional[str] = None


@dataclass(frozen=True)
class BruhatPoset:
    space: str
    dimension: int
    nodes: Tuple[PosetNode, ...]
    edges: Tuple[Tuple[str, str], ...]
    _index: Dict[str, PosetNode] = field(default_factory=dict, compare=False, repr=False)

    @classmethod
    def create(
        cls,
        space: str,
        dimension: int,
        nodes: Iterable[PosetNode],
        edges: Iterable[Tuple[str, str]],
    ) -> "BruhatPoset":
        ordered = tuple(sorted(nodes, key=lambda n: (n.degree, n.id)))
        index = {n.id: n for n in ordered}
        if len(index) != len(ordered):
            raise ValueError("duplicate node ids")
        # edges always point upward in degree
        oriented = set()
        for a, b in edges:
            if index[a].degree > index[b].degree:
                a, b = b, a
            oriented.add((a, b))
        return cls(space, dimension, ordered, tuple(sorted(oriented)), index)

    def node(self, node_id: str) -> PosetNode:
        try:
            return self._index[node_id]
        except KeyError:
            raise ValueError(f"no node {node_id!r} in {self.space}") from None

    def __contains__(self, node_id: str) -> bool:
        return node_id in self._index

    def __len__(self) -> int:
        return len(self.nodes)

    def with_nodes(self, nodes: Iterable[PosetNode]) -> "BruhatPoset":
        return BruhatPoset.create(self.space, self.dimension, nodes, self.edges)

    def upper_covers(self) -> Dict[str, List[str]]:
        up: Dict[str, List[str]] = {n.id: [] for n in self.nodes}
        for a, b in self.edges:
            up[a].append(b)
        return up

    def above(self) -> Dict[str, Set[str]]:
        """For each node, the set of nodes greater than or equal to it."""
        up = self.upper_covers()
        result: Dict[str, Set[str]] = {}
        for n in reversed(self.nodes):
            reach = {n.id}
            for b in up[n.id]:
                reach |= result[b]
            result[n.id] = reach
        return result

    def leq(self, a: str, b: str) -> bool:
        return b in self.above()[a]

    def problems(self) -> List[str]:
        """Violations of the graded, bounded, self-dual poset invariants."""
        out: List[str] = []
        for a, b in self.edges:
            if self._index[b].degree != self._index[a].degree + 1:
                out.append(f"edge {a}->{b} skips a degree")
        ranks = poincare_polynomial(self)
        if ranks[0] != 1 or ranks[-1] != 1 or len(ranks) != self.dimension + 1:
            out.append("poset is not bounded with the expected top degree")
        if ranks != ranks[::-1]:
            out.append("rank generating function is not palindromic")
        for n in self.nodes:
            if n.dual not in self._index:
                out.append(f"dual of {n.id} is missing")
                continue
            d = self._index[n.dual]
            if d.dual != n.id:
                out.append(f"dual is not an involution at {n.id}")
            if d.degree != self.dimension - n.degree:
                out.append(f"dual of {n.id} has the wrong degree")
        for a, b in self.edges:
            if (self._index[b].dual, self._index[a].dual) not in set(self.edges):
                out.append(f"dual does not reverse edge {a}->{b}")
        return out


@dataclass(frozen=True)
class HssSpace:
    family: str
    params: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        f, p = self.family, self.params
        valid = {
            "gr": len(p) == 2 and 0 < p[0] < p[1],
            "quadric": len(p) == 1 and p[0] >= 3,
            "nplus": len(p) == 1 and p[0] >= 2,
            "lag": len(p) == 1 and p[0] >= 2,
            "e3": not p,
            "e7": not p,
        }
        if not valid.get(f, False):
            raise ValueError(f"invalid space {f}{p}")

    @property
    def id(self) -> str:
        if not self.params:
            return self.family
        return f"{self.family}:" + ",".join(map(str, self.params))

    @property
    def dimension(self) -> int:
        f, p = self.family, self.params
        if f == "gr":
            return p[0] * (p[1] - p[0])
        if f == "quadric":
            return p[0]
        if f == "nplus":
            return p[0] * (p[0] - 1) // 2
        if f == "lag":
            return p[0] * (p[0] + 1) // 2
        return 16 if f == "e3" else 27

    @classmethod
    def parse(cls, text: str) -> "HssSpace":
        m = re.fullmatch(r"\s*(gr|quadric|nplus|lag|e3|e7)(?::(\d+(?:,\d+)*))?\s*", text)
        if not m:
            raise ValueError(f"cannot parse space {text!r}")
        params = tuple(int(x) for x in m.group(2).split(",")) if m.group(2) else ()
        return cls(m.group(1), params)

    def __str__(self) -> str:
        return self.id


def Grassmannian(m: int, n: int) -> HssSpace:
    return HssSpace("gr", (m, n))


def Quadric(n: int) -> HssSpace:
    return HssSpace("quadric", (n,))


def IsotropicN(m: int) -> HssSpace:
    return HssSpace("nplus", (m,))


def LagrangianL(m: int) -> HssSpace:
    return HssSpace("lag", (m,))


EIII = HssSpace("e3")
EVII = HssSpace("e7")

# Bourbaki node of the (co)minuscule weight defining each exceptional space
EXCEPTIONAL = {"e3": ("E", 6, 1), "e7": ("E", 7, 7)}


def _grassmannian_poset(space: HssSpace) -> BruhatPoset:
    m, n = space.params
    elems = enumerate_pmn(m, n)
    nodes = [PosetNode(str(a), a.size, str(a), str(dual(a))) for a in elems]
    edges = [(str(a), str(c)) for a in elems for c in covers(a)]
    return BruhatPoset.create(space.id, space.dimension, nodes, edges)


def strict_partitions(bound: int) -> List[Tuple[int, ...]]:
    """Strict partitions with largest part at most ``bound``."""
    out: List[Tuple[int, ...]] = []
    for mask in range(1 << bound):
        out.append(tuple(sorted((i + 1 for i in range(bound) if mask >> i & 1), reverse=True)))
    return sorted(out, key=lambda p: (sum(p), p))


def shifted_dual(parts: Sequence[int], bound: int) -> Tuple[int, ...]:
    """Complement in the shifted staircase of size ``bound``, turned end over end.

    Cells of the shifted staircase are (i, j) with i <= j < bound; the
    complement is reflected through the anti-diagonal, which maps the
    staircase onto itself.
    """
    cells = {(i, i + k) for i, row in enumerate(parts) for k in range(row)}
    rows = [0] * bound
    for i in range(bound):
        for j in range(i, bound):
            if (i, j) not in cells:
                rows[bound - 1 - j] += 1
    return tuple(r for r in rows if r)


def _strict_covers(parts: Tuple[int, ...], bound: int) -> List[Tuple[int, ...]]:
    out = []
    padded = list(parts) + [0]
    for i in range(len(padded)):
        new = padded[:]
        new[i] += 1
        if new[0] > bound or (i > 0 and new[i] >= new[i - 1]):
            continue
        out.append(tuple(x for x in new if x))
    return out


def _strict_text(parts: Sequence[int]) -> str:
    return "(" + ",".join(map(str, parts)) + ")"


def _strict_poset(space: HssSpace, bound: int) -> BruhatPoset:
    elems = strict_partitions(bound)
    nodes = [
        PosetNode(_strict_text(p), sum(p), _strict_text(p), _strict_text(shifted_dual(p, bound)))
        for p in elems
    ]
    edges = [(_strict_text(p), _strict_text(c)) for p in elems for c in _strict_covers(p, bound)]
    return BruhatPoset.create(space.id, space.dimension, nodes, edges)


def _quadric_poset(space: HssSpace) -> BruhatPoset:
    (n,) = space.params
    if n % 2:
        nodes = [PosetNode(str(p), p, str(p), str(n - p)) for p in range(n + 1)]
        edges = [(str(p), str(p + 1)) for p in range(n)]
        return BruhatPoset.create(space.id, n, nodes, edges)
    m = n // 2
    mid = [f"{m}+", f"{m}-"]

    def ident(p: int) -> List[str]:
        return mid if p == m else [str(p)]

    nodes = [PosetNode(str(p), p, str(p), str(n - p)) for p in range(n + 1) if p != m]
    for i, name in enumerate(mid):
        partner = mid[1 - i] if m % 2 else name
        nodes.append(PosetNode(name, m, name, partner))
    edges = [(a, b) for p in range(n) for a in ident(p) for b in ident(p + 1)]
    return BruhatPoset.create(space.id, n, nodes, edges)


def _exceptional_poset(space: HssSpace) -> BruhatPoset:
    from . import roots

    family, rank, node = EXCEPTIONAL[space.family]
    rs = roots.build_root_system(family, rank)
    p = roots.minuscule_orbit_poset(rs, node)
    return BruhatPoset.create(space.id, space.dimension, p.nodes, p.edges)


def build_poset(space: HssSpace) -> BruhatPoset:
    f = space.family
    if f == "gr":
        return _grassmannian_poset(space)
    if f == "quadric":
        return _quadric_poset(space)
    if f in ("nplus", "lag"):
        (m,) = space.params
        floor = 4 if f == "nplus" else 3
        if m < floor:
            warnings.warn(f"{space.id}: below the usual range m >= {floor}", stacklevel=2)
        return _strict_poset(space, m - 1 if f == "nplus" else m)
    return _exceptional_poset(space)


def poincare_polynomial(p: BruhatPoset) -> List[int]:
    """Number of nodes in each degree."""
    top = max(n.degree for n in p.nodes)
    counts = [0] * (top + 1)
    for n in p.nodes:
        counts[n.degree] += 1
    return counts


def dual_node(p: BruhatPoset, node_id: str) -> str:
    return p.node(node_id).dual


def frobenius_shape(strict: Sequence[int], shift: int) -> Partition:
    """Partition with Frobenius coordinates (alpha - shift | alpha - 1 + shift).

    With shift 1 these index the summands of the exterior algebra on
    Lambda^2(C^m); with shift 0 those on S^2(C^m).
    """
    arms = [a - shift for a in strict]
    legs = [a - 1 + shift for a in strict]
    rows = []
    depth = max((i + 1 + leg for i, leg in enumerate(legs)), default=0)
    for i in range(depth):
        if i < len(arms):
            rows.append(i + 1 + arms[i])
        else:
            rows.append(sum(1 for j, leg in enumerate(legs) if j < i and j + leg >= i))
    return Partition(rows)


# reference dimensions for the exceptional spaces, keyed by degree
PINNED_DIMS = {
    "e3": {1: {16}, 4: {770, 1050}, 5: {672, 3696}, 8: {660}},
    "e7": {1: {27}, 6: {43758}, 10: {100386}},
}


def _k_label(k_sys, weight, family: str, rank: int) -> str:
    from . import roots

    texts = []
    for pi in roots.diagram_isomorphisms(k_sys.cartan, family, rank):
        text = "[" + ",".join(str(weight.coords[pi[i]]) for i in range(rank)) + "]"
        if text not in texts:
            texts.append(text)
    return "|".join(texts)


def assign_dim_labels(p: BruhatPoset) -> BruhatPoset:
    """Attach to each node the dimension of the corresponding summand of the
    exterior algebra of the cotangent space."""
    space = HssSpace.parse(p.space)
    f = space.family
    nodes: List[PosetNode] = []
    if f == "gr":
        m, n = space.params
        for node in p.nodes:
            a = Partition.parse(node.id)
            d = dim_schur(a, m) * dim_schur(a.conjugate(), n - m)
            nodes.append(replace(node, dim_label=d))
    elif f in ("nplus", "lag"):
        (m,) = space.params
        shift = 1 if f == "nplus" else 0
        for node in p.nodes:
            strict = Partition.parse(node.id).parts
            d = dim_schur(frobenius_shape(strict, shift), m)
            status = PINNED if node.degree == 3 else UNPINNED
            nodes.append(replace(node, dim_label=d, dim_status=status))
    elif f in EXCEPTIONAL:
        from . import roots

        family, rank, top = EXCEPTIONAL[f]
        rs = roots.build_root_system(family, rank)
        k_family, k_rank = ("D", 5) if f == "e3" else ("E", 6)
        pinned = PINNED_DIMS[f]
        for node in p.nodes:
            k_sys, lam = roots.k_highest_weight(rs, top, node.id)
            d = roots.weyl_dim(k_sys, lam)
            status = PINNED if d in pinned.get(node.degree, ()) else UNPINNED
            label = _k_label(k_sys, lam, k_family, k_rank)
            nodes.append(replace(node, label=label, dim_label=d, dim_status=status))
    else:
        raise LabelError(f"dimension labels are not available for {p.space}")
    return p.with_nodes(nodes)
