"""Root systems of types A-E7, the Weyl dimension formula and minuscule orbits.

Simple roots are numbered as in Bourbaki.  Roots are integer vectors in the
simple-root basis and weights are integer vectors in the fundamental-weight
basis; ``cartan[i][j]`` is the pairing of the coroot of ``alpha_i`` with
``alpha_j``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .posets import BruhatPoset, PosetNode

Vector = Tuple[int, ...]


@dataclass(frozen=True)
class Weight:
    coords: Vector

    def __init__(self, coords: Iterable[int]) -> None:
        object.__setattr__(self, "coords", tuple(int(x) for x in coords))

    def is_dominant(self) -> bool:
        return all(x >= 0 for x in self.coords)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.coords)) + ")"


@dataclass(frozen=True)
class RootSystem:
    family: str
    rank: int
    cartan: Tuple[Vector, ...]
    positive_roots: Tuple[Vector, ...]
    # half squared lengths of the simple roots, up to a common scale
    half_norms: Tuple[Fraction, ...]

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}"

    def pair(self, weight: Sequence[int], root: Sequence[int]) -> Fraction:
        """<weight, root^vee> for a weight in fundamental coordinates."""
        num = 2 * sum(c * d * w for c, d, w in zip(root, self.half_norms, weight))
        return Fraction(num) / self.norm(root)

    def norm(self, root: Sequence[int]) -> Fraction:
        """(root, root) in the normalization (alpha_i, alpha_i) = 2 half_norms[i]."""
        r = self.rank
        return sum(
            (root[i] * root[j] * self.half_norms[i] * self.cartan[i][j]
             for i in range(r) for j in range(r)),
            Fraction(0),
        )

    def root_to_weight(self, root: Sequence[int]) -> Vector:
        return tuple(
            sum(self.cartan[i][j] * root[j] for j in range(self.rank)) for i in range(self.rank)
        )

    def simple_reflect_root(self, j: int, root: Sequence[int]) -> Vector:
        """s_j applied to a root (0-based j)."""
        k = sum(self.cartan[j][i] * root[i] for i in range(self.rank))
        out = list(root)
        out[j] -= k
        return tuple(out)

    def simple_reflect_weight(self, j: int, weight: Sequence[int]) -> Vector:
        k = weight[j]
        return tuple(w - k * self.cartan[i][j] for i, w in enumerate(weight))

    @property
    def highest_root(self) -> Vector:
        return max(self.positive_roots, key=sum)


def _chain(r: int) -> List[List[int]]:
    a = [[0] * r for _ in range(r)]
    for i in range(r):
        a[i][i] = 2
        if i + 1 < r:
            a[i][i + 1] = a[i + 1][i] = -1
    return a


def cartan_matrix(family: str, rank: int) -> List[List[int]]:
    family = family.upper()
    minimum = {"A": 1, "B": 2, "C": 2, "D": 3}
    if family in minimum:
        if not isinstance(rank, int) or rank < minimum[family]:
            raise ValueError(f"unsupported root system {family}{rank}")
        a = _chain(rank)
        if family == "B":
            a[rank - 1][rank - 2] = -2
        elif family == "C":
            a[rank - 2][rank - 1] = -2
        elif family == "D":
            # last node hangs off node rank-2 instead of node rank-1
            a[rank - 1][rank - 2] = a[rank - 2][rank - 1] = 0
            a[rank - 1][rank - 3] = a[rank - 3][rank - 1] = -1
        return a
    if family == "E" and rank in (6, 7):
        a = [[0] * rank for _ in range(rank)]
        bonds = [(1, 3), (3, 4), (4, 5), (5, 6), (2, 4)] + ([(6, 7)] if rank == 7 else [])
        for i in range(rank):
            a[i][i] = 2
        for i, j in bonds:
            a[i - 1][j - 1] = a[j - 1][i - 1] = -1
        return a
    raise ValueError(f"unsupported root system {family}{rank}")


def _half_norms(cartan: Sequence[Sequence[int]]) -> Tuple[Fraction, ...]:
    r = len(cartan)
    d: List[Optional[Fraction]] = [None] * r
    for start in range(r):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        queue = deque([start])
        while queue:
            i = queue.popleft()
            for j in range(r):
                if j != i and cartan[i][j] != 0 and d[j] is None:
                    d[j] = d[i] * cartan[i][j] / cartan[j][i]
                    queue.append(j)
    return tuple(d)  # type: ignore[arg-type]


def root_system_from_cartan(cartan: Sequence[Sequence[int]], family: str = "X") -> RootSystem:
    """Root system of an arbitrary (possibly reducible) finite-type Cartan matrix."""
    r = len(cartan)
    cart = tuple(tuple(int(x) for x in row) for row in cartan)
    for i in range(r):
        if cart[i][i] != 2:
            raise ValueError("Cartan matrix must have 2 on the diagonal")
        for j in range(r):
            if i != j and (cart[i][j] > 0 or (cart[i][j] == 0) != (cart[j][i] == 0)):
                raise ValueError("malformed Cartan matrix")
    half = _half_norms(cart)
    simple = [tuple(int(i == j) for j in range(r)) for i in range(r)]
    found = set(simple)
    ordered = list(simple)
    layer = list(simple)
    while layer:
        nxt: List[Vector] = []
        for beta in layer:
            for j in range(r):
                p = 0
                while True:
                    down = list(beta)
                    down[j] -= p + 1
                    if tuple(down) not in found:
                        break
                    p += 1
                q = p - sum(cart[j][i] * beta[i] for i in range(r))
                if q > 0:
                    up = list(beta)
                    up[j] += 1
                    up_t = tuple(up)
                    if up_t not in found:
                        found.add(up_t)
                        nxt.append(up_t)
        nxt.sort(key=lambda v: (sum(v), v))
        ordered.extend(nxt)
        layer = nxt
    return RootSystem(family, r, cart, tuple(ordered), half)


def build_root_system(family: str, rank: int) -> RootSystem:
    """Root system of type A_k, B_k, C_k, D_k, E6 or E7 (Bourbaki numbering)."""
    return root_system_from_cartan(cartan_matrix(family, rank), family.upper())


def _as_coords(rs: RootSystem, weight: "Weight | Sequence[int]") -> Vector:
    coords = weight.coords if isinstance(weight, Weight) else tuple(int(x) for x in weight)
    if len(coords) != rs.rank:
        raise ValueError(f"weight {coords} has wrong length for rank {rs.rank}")
    return coords


def weyl_dim(rs: RootSystem, weight: "Weight | Sequence[int]") -> int:
    """Dimension of the irreducible module with the given dominant highest weight."""
    lam = _as_coords(rs, weight)
    if any(x < 0 for x in lam):
        raise ValueError(f"weight {lam} is not dominant")
    rho = (1,) * rs.rank
    shifted = tuple(x + 1 for x in lam)
    total = Fraction(1)
    for alpha in rs.positive_roots:
        total *= rs.pair(shifted, alpha) / rs.pair(rho, alpha)
    if total.denominator != 1:
        raise ArithmeticError(f"non-integral Weyl dimension {total}")
    return int(total)


def is_minuscule(rs: RootSystem, node: int) -> bool:
    omega = _fundamental(rs, node)
    return all(rs.pair(omega, alpha) <= 1 for alpha in rs.positive_roots)


def _fundamental(rs: RootSystem, node: int) -> Vector:
    if not 1 <= node <= rs.rank:
        raise ValueError(f"node {node} out of range 1..{rs.rank}")
    return tuple(int(i == node - 1) for i in range(rs.rank))


@dataclass
class _Orbit:
    top: Vector
    level: Dict[Vector, int]
    # one lowering step (parent weight, 0-based simple index) per non-top weight
    parent: Dict[Vector, Tuple[Vector, int]]
    edges: List[Tuple[Vector, Vector, int]]


def _orbit(rs: RootSystem, node: int) -> _Orbit:
    """Weyl orbit of omega_node, explored by lowering simple reflections."""
    top = _fundamental(rs, node)
    level = {top: 0}
    parent: Dict[Vector, Tuple[Vector, int]] = {}
    edges: List[Tuple[Vector, Vector, int]] = []
    queue = deque([top])
    while queue:
        mu = queue.popleft()
        for j in range(rs.rank):
            if mu[j] > 0:
                nu = rs.simple_reflect_weight(j, mu)
                edges.append((mu, nu, j))
                if nu not in level:
                    level[nu] = level[mu] + 1
                    parent[nu] = (mu, j)
                    queue.append(nu)
    return _Orbit(top, level, parent, edges)


def weight_id(weight: Sequence[int]) -> str:
    return "(" + ",".join(map(str, weight)) + ")"


def parse_weight_id(text: str) -> Vector:
    body = text.strip().strip("()")
    return tuple(int(t) for t in body.split(",")) if body else ()


def longest_element_word(rs: RootSystem) -> List[int]:
    """A reduced word for w0, found by driving rho to -rho."""
    mu = (1,) * rs.rank
    word: List[int] = []
    while True:
        for j in range(rs.rank):
            if mu[j] > 0:
                mu = rs.simple_reflect_weight(j, mu)
                word.append(j)
                break
        else:
            return word


def apply_word(rs: RootSystem, word: Sequence[int], weight: Sequence[int]) -> Vector:
    mu = tuple(weight)
    for j in word:
        mu = rs.simple_reflect_weight(j, mu)
    return mu


def minuscule_orbit_poset(rs: RootSystem, node: int) -> BruhatPoset:
    """Weight poset of the minuscule module V(omega_node)."""
    if not is_minuscule(rs, node):
        raise ValueError(f"node {node} of {rs.name} is not minuscule")
    return orbit_poset(rs, node)


def orbit_poset(rs: RootSystem, node: int) -> BruhatPoset:
    """Bruhat poset of W/W_P realized on the orbit of omega_node.

    For minuscule nodes the degree equals the height of omega - mu; for other
    nodes the degree is the length of the minimal coset representative.
    """
    orb = _orbit(rs, node)
    w0 = longest_element_word(rs)
    nodes = [
        PosetNode(
            id=weight_id(mu),
            degree=lvl,
            label=weight_id(mu),
            dual=weight_id(apply_word(rs, w0, mu)),
        )
        for mu, lvl in orb.level.items()
    ]
    edges = sorted({(weight_id(a), weight_id(b)) for a, b, _ in orb.edges})
    top_degree = max(orb.level.values())
    return BruhatPoset.create(f"orbit:{rs.name}/{node}", top_degree, nodes, edges)


def chain_to(rs: RootSystem, node: int, weight: Sequence[int]) -> List[int]:
    """Simple indices (0-based) of one saturated chain from omega_node down to ``weight``."""
    orb = _orbit(rs, node)
    mu = tuple(weight)
    if mu not in orb.level:
        raise ValueError(f"{weight_id(mu)} is not in the orbit of omega_{node} of {rs.name}")
    steps: List[int] = []
    while mu != orb.top:
        mu, j = orb.parent[mu]
        steps.append(j)
    steps.reverse()
    return steps


def inversion_sum(rs: RootSystem, steps: Sequence[int]) -> Vector:
    """Sum, in root coordinates, of the roots used up along a chain of simple steps.

    Step t with simple index j_t uses the root s_{j_1} ... s_{j_{t-1}} alpha_{j_t}.
    """
    total = [0] * rs.rank
    for t, j in enumerate(steps):
        gamma = tuple(int(i == j) for i in range(rs.rank))
        for k in reversed(steps[:t]):
            gamma = rs.simple_reflect_root(k, gamma)
        if any(c < 0 for c in gamma):
            raise ValueError("step sequence is not a reduced lowering chain")
        for i, c in enumerate(gamma):
            total[i] += c
    return tuple(total)


def inversion_weight(rs: RootSystem, node: int, poset_node: "str | Sequence[int]") -> Weight:
    """Sum of the positive roots used along a chain from the bottom to ``poset_node``,
    in fundamental-weight coordinates of the full system."""
    mu = parse_weight_id(poset_node) if isinstance(poset_node, str) else tuple(poset_node)
    if len(mu) != rs.rank:
        raise ValueError(f"{poset_node} is not a weight of {rs.name}")
    steps = chain_to(rs, node, mu)
    return Weight(rs.root_to_weight(inversion_sum(rs, steps)))


def levi_system(rs: RootSystem, node: int) -> Tuple[RootSystem, List[int]]:
    """Semisimple part of the Levi factor: the diagram with ``node`` removed.

    Returns the subsystem and the kept 0-based indices in their original order.
    """
    keep = [i for i in range(rs.rank) if i != node - 1]
    sub = [[rs.cartan[i][j] for j in keep] for i in keep]
    return root_system_from_cartan(sub, "K"), keep


def k_highest_weight(rs: RootSystem, node: int, poset_node: "str | Sequence[int]") -> Tuple[RootSystem, Weight]:
    """Highest weight, for the Levi factor, of the summand of the exterior algebra
    of the cotangent space indexed by ``poset_node``.

    This is minus the restriction of :func:`inversion_weight`.
    """
    k_sys, keep = levi_system(rs, node)
    inv = inversion_weight(rs, node, poset_node).coords
    lam = Weight(-inv[i] for i in keep)
    if not lam.is_dominant():
        raise ArithmeticError(f"restricted weight {lam} is not dominant")
    return k_sys, lam


def k_dimension(rs: RootSystem, node: int, poset_node: "str | Sequence[int]") -> int:
    k_sys, lam = k_highest_weight(rs, node, poset_node)
    return weyl_dim(k_sys, lam) if k_sys.rank else 1


def diagram_isomorphisms(cartan: Sequence[Sequence[int]], family: str, rank: int) -> List[Tuple[int, ...]]:
    """All index maps ``pi`` with cartan[pi[i]][pi[j]] equal to the standard matrix.

    ``pi[i]`` is the index in ``cartan`` of standard (Bourbaki) node ``i``.
    """
    std = cartan_matrix(family, rank)
    if len(cartan) != rank:
        return []
    return [
        pi
        for pi in permutations(range(rank))
        if all(cartan[pi[i]][pi[j]] == std[i][j] for i in range(rank) for j in range(rank))
    ]
