"""Integral elements of the invariant ideals, checked by exact generator evaluation.

A candidate integral element is a :class:`MatrixSubspace` of a general,
alternating or symmetric matrix space.  Each ideal is represented by a list of
generator p-forms written in the coordinates of the ambient space, and a
subspace is integral when every generator vanishes on every p-tuple of its
basis.  All scalars are Gaussian rationals, so vanishing is decided exactly.
"""

from __future__ import annotations

import zlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from itertools import combinations, combinations_with_replacement, permutations, product
from math import factorial, lcm
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
from sympy.polys.domains import QQ, QQ_I, ZZ
from sympy.polys.matrices import DomainMatrix

from .partitions import (
    BoxedPartition,
    Partition,
    as_partition,
    dual,
    enumerate_pmn,
    leq,
    max_integral_dim,
)

GaussianRational = type(QQ_I(0))
Scalar = Union[int, "GaussianRational", Any]
Matrix = Tuple[Tuple[Any, ...], ...]

ZERO = QQ_I(0)
ONE = QQ_I(1)
I_UNIT = QQ_I(0, 1)


def gauss(re: Any = 0, im: Any = 0) -> "GaussianRational":
    """Gaussian rational re + i*im from ints, Fractions, strings or rationals."""
    return QQ_I(_rational(re), _rational(im))


def _rational(x: Any):
    if isinstance(x, str):
        num, _, den = x.partition("/")
        return QQ(int(num), int(den) if den else 1)
    if hasattr(x, "numerator") and hasattr(x, "denominator"):
        return QQ(int(x.numerator), int(x.denominator))
    return QQ(int(x))


def to_gauss(x: Any) -> "GaussianRational":
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, complex):
        if x.real != int(x.real) or x.imag != int(x.imag):
            raise ValueError(f"complex entry {x} is not a Gaussian integer")
        return QQ_I(int(x.real), int(x.imag))
    return gauss(x)


def real_part(z: "GaussianRational"):
    return z.x


def imag_part(z: "GaussianRational"):
    return z.y


def conj(z: "GaussianRational") -> "GaussianRational":
    return QQ_I(z.x, -z.y)


# ---------------------------------------------------------------------------
# ambient spaces and subspaces


@dataclass(frozen=True)
class Ambient:
    """A matrix space: ``general`` r x c, or ``alternating`` / ``symmetric`` m x m."""

    kind: str
    rows: int
    cols: int

    def __post_init__(self) -> None:
        if self.kind not in ("general", "alternating", "symmetric"):
            raise ValueError(f"unknown ambient kind {self.kind!r}")
        if self.rows < 1 or self.cols < 1:
            raise ValueError("ambient dimensions must be positive")
        if self.kind != "general" and self.rows != self.cols:
            raise ValueError(f"{self.kind} matrices must be square")

    @property
    def coords(self) -> Tuple[Tuple[int, int], ...]:
        return _ambient_coords(self)

    @property
    def dim(self) -> int:
        return len(self.coords)

    def index(self, a: int, b: int) -> Tuple[int, int]:
        """(coordinate index, sign) of the entry (a, b); index -1 for a forced zero."""
        if self.kind == "general":
            return a * self.cols + b, 1
        if self.kind == "symmetric":
            lo, hi = min(a, b), max(a, b)
            return _coord_lookup(self)[(lo, hi)], 1
        if a == b:
            return -1, 0
        if a < b:
            return _coord_lookup(self)[(a, b)], 1
        return _coord_lookup(self)[(b, a)], -1

    def to_vector(self, mat: Matrix) -> List[Any]:
        return [mat[a][b] for a, b in self.coords]

    def from_vector(self, vec: Sequence[Any]) -> Matrix:
        out = [[ZERO] * self.cols for _ in range(self.rows)]
        for (a, b), x in zip(self.coords, vec):
            out[a][b] = x
            if self.kind == "symmetric":
                out[b][a] = x
            elif self.kind == "alternating":
                out[b][a] = -x
        return tuple(tuple(r) for r in out)

    def label(self) -> str:
        if self.kind == "general":
            return f"General({self.rows},{self.cols})"
        return f"{self.kind.capitalize()}({self.rows})"


def General(rows: int, cols: int) -> Ambient:
    return Ambient("general", rows, cols)


def Alternating(m: int) -> Ambient:
    return Ambient("alternating", m, m)


def Symmetric(m: int) -> Ambient:
    return Ambient("symmetric", m, m)


@lru_cache(maxsize=None)
def _ambient_coords(amb: Ambient) -> Tuple[Tuple[int, int], ...]:
    if amb.kind == "general":
        return tuple((a, b) for a in range(amb.rows) for b in range(amb.cols))
    if amb.kind == "symmetric":
        return tuple((a, b) for a in range(amb.rows) for b in range(a, amb.rows))
    return tuple((a, b) for a in range(amb.rows) for b in range(a + 1, amb.rows))


@lru_cache(maxsize=None)
def _coord_lookup(amb: Ambient) -> Dict[Tuple[int, int], int]:
    return {c: i for i, c in enumerate(_ambient_coords(amb))}


def as_matrix(rows: Iterable[Iterable[Any]]) -> Matrix:
    return tuple(tuple(to_gauss(x) for x in row) for row in rows)


def _dm(rows: Sequence[Sequence[Any]], ncols: int) -> DomainMatrix:
    return DomainMatrix([list(r) for r in rows], (len(rows), ncols), QQ_I)


def _rank(vectors: Sequence[Sequence[Any]], n: int) -> int:
    if not vectors:
        return 0
    return _dm(vectors, n).rank()


@dataclass(frozen=True, eq=False)
class MatrixSubspace:
    ambient: Ambient
    basis: Tuple[Matrix, ...]

    def __post_init__(self) -> None:
        amb = self.ambient
        clean = tuple(as_matrix(b) for b in self.basis)
        for mat in clean:
            if len(mat) != amb.rows or any(len(r) != amb.cols for r in mat):
                raise ValueError(f"basis matrix has wrong shape for {amb.label()}")
            if amb.kind == "symmetric" and any(
                mat[a][b] != mat[b][a] for a in range(amb.rows) for b in range(amb.rows)
            ):
                raise ValueError("basis matrix is not symmetric")
            if amb.kind == "alternating" and any(
                mat[a][b] != -mat[b][a] for a in range(amb.rows) for b in range(amb.rows)
            ):
                raise ValueError("basis matrix is not alternating")
        object.__setattr__(self, "basis", clean)
        if _rank(self.vectors(), amb.dim) != len(clean):
            raise ValueError("basis matrices are linearly dependent")

    @property
    def dim(self) -> int:
        return len(self.basis)

    def vectors(self) -> List[List[Any]]:
        return [self.ambient.to_vector(b) for b in self.basis]

    @classmethod
    def from_vectors(cls, ambient: Ambient, vectors: Iterable[Sequence[Any]]) -> "MatrixSubspace":
        return cls(ambient, tuple(ambient.from_vector([to_gauss(x) for x in v]) for v in vectors))

    @classmethod
    def span(cls, ambient: Ambient, mats: Iterable[Any]) -> "MatrixSubspace":
        """Subspace spanned by possibly dependent matrices (basis in reduced echelon form)."""
        vecs = [ambient.to_vector(as_matrix(m)) for m in mats]
        if not vecs:
            return cls(ambient, ())
        rref, pivots = _dm(vecs, ambient.dim).rref()
        rows = rref.to_list()[: len(pivots)]
        return cls.from_vectors(ambient, rows)

    @classmethod
    def zero(cls, ambient: Ambient) -> "MatrixSubspace":
        return cls(ambient, ())

    def contains(self, mat: Any) -> bool:
        vec = self.ambient.to_vector(as_matrix(mat))
        return _rank(self.vectors() + [vec], self.ambient.dim) == self.dim

    def same_span(self, other: "MatrixSubspace") -> bool:
        if self.ambient != other.ambient or self.dim != other.dim:
            return False
        return _rank(self.vectors() + other.vectors(), self.ambient.dim) == self.dim

    def __repr__(self) -> str:
        return f"MatrixSubspace({self.ambient.label()}, dim={self.dim})"


# ---------------------------------------------------------------------------
# ideals and their generators


class IdealId(str, Enum):
    Gr2 = "Gr2"
    Gr11 = "Gr11"
    Gr3 = "Gr3"
    Gr21 = "Gr21"
    Gr111 = "Gr111"
    Gr2star = "Gr2star"
    Gr11star = "Gr11star"
    N222 = "N222"
    N3111 = "N3111"
    L33 = "L33"
    L411 = "L411"
    QuadMinus = "QuadMinus"
    QuadPlus = "QuadPlus"


_BY_PARTITION = {
    (2,): IdealId.Gr2,
    (1, 1): IdealId.Gr11,
    (3,): IdealId.Gr3,
    (2, 1): IdealId.Gr21,
    (1, 1, 1): IdealId.Gr111,
}

GR_PARTITIONS: Tuple[Partition, ...] = tuple(Partition(k) for k in _BY_PARTITION)


def ideal_for(a: Any) -> IdealId:
    """The Grassmannian ideal I_a for a in {(2), (1,1), (3), (2,1), (1,1,1)}."""
    key = as_partition(a).parts
    if key not in _BY_PARTITION:
        raise ValueError(f"no explicit generators for I_{as_partition(a)}")
    return _BY_PARTITION[key]


Form = Dict[Tuple[int, ...], complex]


def _sign(seq: Sequence[int]) -> int:
    s = 1
    seq = list(seq)
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                s = -s
    return s


def _add_wedge(out: Dict[Tuple[int, ...], int], coef: int, factors: Sequence[Tuple[int, int]]) -> None:
    """out += coef * (wedge of signed coordinate 1-forms)."""
    idx = []
    for i, s in factors:
        if i < 0:
            return
        coef *= s
        idx.append(i)
    if len(set(idx)) < len(idx):
        return
    key = tuple(sorted(idx))
    out[key] = out.get(key, 0) + coef * _sign(idx)


def _clean(forms: Iterable[Dict[Tuple[int, ...], Any]]) -> List[Dict[Tuple[int, ...], Any]]:
    seen = set()
    out = []
    for f in forms:
        f = {k: v for k, v in f.items() if v}
        if not f:
            continue
        key = tuple(sorted(f.items()))
        if key not in seen:
            seen.add(key)
            out.append(f)
    return out


def gr2_generators(k: int, m: int) -> List[Dict[Tuple[int, ...], int]]:
    """xi^a1_i1 ^ xi^a2_i2 - xi^a2_i1 ^ xi^a1_i2 on General(k, m)."""
    amb = General(k, m)
    forms = []
    for a1, a2 in combinations(range(k), 2):
        for i1, i2 in combinations_with_replacement(range(m), 2):
            f: Dict[Tuple[int, ...], int] = {}
            _add_wedge(f, 1, [amb.index(a1, i1), amb.index(a2, i2)])
            _add_wedge(f, -1, [amb.index(a2, i1), amb.index(a1, i2)])
            forms.append(f)
    return _clean(forms)


def gr3_generators(k: int, m: int) -> List[Dict[Tuple[int, ...], int]]:
    """Upper indices skew-symmetrized: sum_tau sgn(tau) xi^{a_tau1}_i1 ^ xi^{a_tau2}_i2 ^ xi^{a_tau3}_i3."""
    amb = General(k, m)
    forms = []
    for alphas in combinations(range(k), 3):
        for ii in combinations_with_replacement(range(m), 3):
            f: Dict[Tuple[int, ...], int] = {}
            for tau in permutations(range(3)):
                _add_wedge(f, _sign(tau), [amb.index(alphas[tau[t]], ii[t]) for t in range(3)])
            forms.append(f)
    return _clean(forms)


@lru_cache(maxsize=None)
def s21_tensor_basis(k: int) -> Tuple[Tuple[int, ...], ...]:
    """Integer basis of {c in (C^k)^(x3) : c_abc = c_bac, c_abc + c_bca + c_cab = 0}."""
    idx = list(product(range(k), repeat=3))
    pos = {t: i for i, t in enumerate(idx)}
    rows = []
    for a, b, c in idx:
        r = [0] * len(idx)
        r[pos[(a, b, c)]] += 1
        r[pos[(b, a, c)]] -= 1
        rows.append(r)
        r = [0] * len(idx)
        r[pos[(a, b, c)]] += 1
        r[pos[(b, c, a)]] += 1
        r[pos[(c, a, b)]] += 1
        rows.append(r)
    null = DomainMatrix([[QQ(x) for x in r] for r in rows], (len(rows), len(idx)), QQ).nullspace()
    out = []
    for vec in null.to_list():
        den = lcm(*(int(x.denominator) for x in vec))
        out.append(tuple(int(x * den) for x in vec))
    return tuple(out)


def gr21_generators(k: int, m: int) -> List[Dict[Tuple[int, ...], int]]:
    """theta_{i1 i2 i3}(c) = sum c_{a1a2a3} xi^a1_i1 ^ xi^a2_i2 ^ xi^a3_i3 over c in S_(2,1)(C^k)."""
    amb = General(k, m)
    alphas = list(product(range(k), repeat=3))
    forms = []
    for c in s21_tensor_basis(k):
        support = [(al, w) for al, w in zip(alphas, c) if w]
        for ii in product(range(m), repeat=3):
            f: Dict[Tuple[int, ...], int] = {}
            for al, w in support:
                _add_wedge(f, w, [amb.index(al[t], ii[t]) for t in range(3)])
            forms.append(f)
    return _clean(forms)


def _sym2_basis(m: int) -> List[Dict[Tuple[int, int], int]]:
    out = []
    for a, b in combinations_with_replacement(range(m), 2):
        out.append({(a, a): 1} if a == b else {(a, b): 1, (b, a): 1})
    return out


def _sym3_basis(m: int) -> List[Dict[Tuple[int, ...], int]]:
    out = []
    for trip in combinations_with_replacement(range(m), 3):
        out.append({p: 1 for p in set(permutations(trip))})
    return out


def _alt_basis(m: int, r: int) -> List[Dict[Tuple[int, ...], int]]:
    out = []
    for sub in combinations(range(m), r):
        out.append({tuple(sub[t] for t in tau): _sign(tau) for tau in permutations(range(r))})
    return out


def n222_generators(m: int) -> List[Dict[Tuple[int, ...], int]]:
    """psi(X,Y,Z) = X_{i1i2} Y_{i3i4} Z_{i5i6} eta^{i1i3} ^ eta^{i2i5} ^ eta^{i4i6}, X, Y, Z symmetric."""
    amb = Alternating(m)
    basis = _sym2_basis(m)
    forms = []
    for x, y, z in combinations_with_replacement(range(len(basis)), 3):
        f: Dict[Tuple[int, ...], int] = {}
        for (i1, i2), cx in basis[x].items():
            for (i3, i4), cy in basis[y].items():
                for (i5, i6), cz in basis[z].items():
                    _add_wedge(f, cx * cy * cz, [amb.index(i1, i3), amb.index(i2, i5), amb.index(i4, i6)])
        forms.append(f)
    return _clean(forms)


def n3111_generators(m: int) -> List[Dict[Tuple[int, ...], int]]:
    """psi(X,Y) = X_{i1i2i3i4} Y_{j1j2} eta^{i1i2} ^ eta^{i3j1} ^ eta^{i4j2}, X alternating, Y symmetric."""
    amb = Alternating(m)
    forms = []
    for x in _alt_basis(m, 4):
        for y in _sym2_basis(m):
            f: Dict[Tuple[int, ...], int] = {}
            for (i1, i2, i3, i4), cx in x.items():
                for (j1, j2), cy in y.items():
                    _add_wedge(f, cx * cy, [amb.index(i1, i2), amb.index(i3, j1), amb.index(i4, j2)])
            forms.append(f)
    return _clean(forms)


def l33_generators(m: int) -> List[Dict[Tuple[int, ...], int]]:
    """psi(X,Y) = X_{i1i2i3} Y_{i4i5i6} eta^{i1i2} ^ eta^{i3i4} ^ eta^{i5i6}, X, Y symmetric."""
    amb = Symmetric(m)
    basis = _sym3_basis(m)
    forms = []
    for x in basis:
        for y in basis:
            f: Dict[Tuple[int, ...], int] = {}
            for (i1, i2, i3), cx in x.items():
                for (i4, i5, i6), cy in y.items():
                    _add_wedge(f, cx * cy, [amb.index(i1, i2), amb.index(i3, i4), amb.index(i5, i6)])
            forms.append(f)
    return _clean(forms)


def l411_generators(m: int) -> List[Dict[Tuple[int, ...], int]]:
    """psi(X,Y) = X_{i1i2i3} Y_{i4i5i6} eta^{i1i4} ^ eta^{i2i5} ^ eta^{i3i6}, X symmetric, Y skew."""
    amb = Symmetric(m)
    forms = []
    for x in _sym3_basis(m):
        for y in _alt_basis(m, 3):
            f: Dict[Tuple[int, ...], int] = {}
            for (i1, i2, i3), cx in x.items():
                for (i4, i5, i6), cy in y.items():
                    _add_wedge(f, cx * cy, [amb.index(i1, i4), amb.index(i2, i5), amb.index(i3, i6)])
            forms.append(f)
    return _clean(forms)


def _i_power(m: int) -> complex:
    return (1j) ** (m % 4)


def quad_generators(m: int, chirality: int) -> List[Dict[Tuple[int, ...], complex]]:
    """Basis of the half-space of m-forms on C^{2m} spanned by e_I + chirality * s * i^m e_J.

    Here I ranges over m-subsets containing the first index, J is its complement and
    s is the sign of the shuffle (I, J).  The chirality +1 space vanishes on the
    maximal isotropic planes of negative chirality and vice versa.
    """
    forms = []
    unit = _i_power(m)
    for rest in combinations(range(1, 2 * m), m - 1):
        big_i = (0,) + rest
        big_j = tuple(x for x in range(2 * m) if x not in big_i)
        s = _sign(big_i + big_j)
        coef = chirality * s * unit
        forms.append({big_i: 1, big_j: complex(round(coef.real), round(coef.imag))})
    return forms


# ---------------------------------------------------------------------------
# evaluation engine


@dataclass(frozen=True)
class _Generators:
    p: int
    ncoords: int
    columns: np.ndarray  # (nS, p) coordinate index tuples
    g_re: np.ndarray  # (nGen, nS)
    g_im: np.ndarray
    gmax: int


def _pack(forms: List[Dict[Tuple[int, ...], Any]], p: int, ncoords: int) -> _Generators:
    keys = sorted({k for f in forms for k in f})
    pos = {k: i for i, k in enumerate(keys)}
    g_re = np.zeros((len(forms), len(keys)), dtype=object)
    g_im = np.zeros((len(forms), len(keys)), dtype=object)
    gmax = 0
    for r, f in enumerate(forms):
        for k, v in f.items():
            v = complex(v)
            re, im = int(v.real), int(v.imag)
            g_re[r, pos[k]] = re
            g_im[r, pos[k]] = im
            gmax = max(gmax, abs(re), abs(im))
    cols = np.array(keys, dtype=np.int64).reshape(len(keys), p)
    return _Generators(p, ncoords, cols, g_re, g_im, gmax)


@lru_cache(maxsize=None)
def generators(ideal: IdealId, ambient: Ambient) -> _Generators:
    """Generator p-forms of ``ideal`` in the coordinates of ``ambient`` (cached)."""
    ideal = IdealId(ideal)
    k, m = ambient.rows, ambient.cols
    if ideal is IdealId.Gr2:
        return _pack(gr2_generators(k, m), 2, ambient.dim)
    if ideal is IdealId.Gr3:
        return _pack(gr3_generators(k, m), 3, ambient.dim)
    if ideal is IdealId.Gr21:
        return _pack(gr21_generators(k, m), 3, ambient.dim)
    if ideal is IdealId.N222:
        return _pack(n222_generators(m), 3, ambient.dim)
    if ideal is IdealId.N3111:
        return _pack(n3111_generators(m), 3, ambient.dim)
    if ideal is IdealId.L33:
        return _pack(l33_generators(m), 3, ambient.dim)
    if ideal is IdealId.L411:
        return _pack(l411_generators(m), 3, ambient.dim)
    if ideal in (IdealId.QuadMinus, IdealId.QuadPlus):
        half = k // 2
        return _pack(quad_generators(half, -1 if ideal is IdealId.QuadMinus else 1), half, ambient.dim)
    raise ValueError(f"{ideal.value} has no direct generator table")


def _integer_rows(vectors: Sequence[Sequence[Any]]) -> Tuple[List[List[int]], List[List[int]]]:
    """Scale each row to Gaussian integers; returns (real parts, imaginary parts)."""
    re_rows, im_rows = [], []
    for vec in vectors:
        den = lcm(1, *(int(z.x.denominator) for z in vec), *(int(z.y.denominator) for z in vec))
        re_rows.append([int(z.x * den) for z in vec])
        im_rows.append([int(z.y * den) for z in vec])
    return re_rows, im_rows


_PERMS: Dict[int, List[Tuple[Tuple[int, ...], int]]] = {}


def _perms(p: int) -> List[Tuple[Tuple[int, ...], int]]:
    if p not in _PERMS:
        _PERMS[p] = [(perm, _sign(perm)) for perm in permutations(range(p))]
    return _PERMS[p]


def _vanishes(gens: _Generators, vectors: Sequence[Sequence[Any]], tuples: np.ndarray) -> bool:
    """True iff every generator vanishes on every tuple of rows of ``vectors``."""
    if len(tuples) == 0 or gens.g_re.shape[0] == 0:
        return True
    re_rows, im_rows = _integer_rows(vectors)
    p = gens.p
    mbound = max(1, max((abs(x) for r in re_rows + im_rows for x in r), default=1))
    bound = gens.columns.shape[0] * max(gens.gmax, 1) * 2 * factorial(p) * (2 * mbound) ** p
    dtype = np.int64 if bound < 2**62 else object
    b_re = np.array(re_rows, dtype=dtype)
    b_im = np.array(im_rows, dtype=dtype)
    rows = tuples[:, None, :, None]
    cols = gens.columns[None, :, None, :]
    sub_re = b_re[rows, cols]
    sub_im = b_im[rows, cols]
    det_re = np.zeros(sub_re.shape[:2], dtype=dtype)
    det_im = np.zeros(sub_re.shape[:2], dtype=dtype)
    for perm, sgn in _perms(p):
        t_re = sub_re[:, :, 0, perm[0]]
        t_im = sub_im[:, :, 0, perm[0]]
        for i in range(1, p):
            f_re = sub_re[:, :, i, perm[i]]
            f_im = sub_im[:, :, i, perm[i]]
            t_re, t_im = t_re * f_re - t_im * f_im, t_re * f_im + t_im * f_re
        det_re = det_re + sgn * t_re
        det_im = det_im + sgn * t_im
    g_re = gens.g_re.astype(dtype)
    g_im = gens.g_im.astype(dtype)
    v_re = g_re @ det_re.T - g_im @ det_im.T
    if np.any(v_re != 0):
        return False
    v_im = g_re @ det_im.T + g_im @ det_re.T
    return not np.any(v_im != 0)


def _all_tuples(d: int, p: int) -> np.ndarray:
    return np.array(list(combinations(range(d), p)), dtype=np.int64).reshape(-1, p)


def _evaluate_on_subspace(E: MatrixSubspace, ideal: IdealId, ambient: Ambient) -> bool:
    gens = generators(ideal, ambient)
    if E.dim < gens.p:
        return True
    return _vanishes(gens, E.vectors(), _all_tuples(E.dim, gens.p))


def ideal_degree(ideal: IdealId, ambient: Ambient) -> int:
    ideal = IdealId(ideal)
    if ideal in (IdealId.Gr2, IdealId.Gr11):
        return 2
    if ideal in (IdealId.Gr2star, IdealId.Gr11star):
        return ambient.dim - 2
    if ideal in (IdealId.QuadMinus, IdealId.QuadPlus):
        return ambient.rows // 2
    return 3


def _expected_kind(ideal: IdealId) -> str:
    if ideal.value.startswith("Gr"):
        return "general"
    if ideal.value.startswith("N"):
        return "alternating"
    if ideal.value.startswith("L"):
        return "symmetric"
    return "quadric"


def check_ambient(E: MatrixSubspace, ideal: IdealId) -> None:
    ideal = IdealId(ideal)
    want = _expected_kind(ideal)
    amb = E.ambient
    if want == "quadric":
        if amb.kind != "general" or amb.cols != 1 or amb.rows % 2 or amb.rows < 2:
            raise ValueError(f"{ideal.value} needs column vectors in C^(2m), got {amb.label()}")
    elif amb.kind != want:
        raise ValueError(f"{ideal.value} needs a {want} ambient, got {amb.label()}")


def _star_integral(E: MatrixSubspace, base: IdealId) -> bool:
    """E lies in Z(I_{a*}) iff every |a*|-plane in E has its 2-dimensional perp in Z(I_a).

    Those perps are exactly the 2-planes containing perp_dual(E), so the base
    generators are evaluated on tuples made of a basis of perp_dual(E) completed
    by coordinate vectors.  Multilinearity makes this finite check exact.
    """
    amb = E.ambient
    p = amb.dim - 2
    if E.dim < p:
        return True
    perp = perp_dual(E)
    if base is IdealId.Gr11:
        perp = transpose(perp)
    target = perp.ambient
    gens = generators(IdealId.Gr2, target)
    q = perp.dim
    vectors = perp.vectors()
    for j in range(target.dim):
        vectors.append([ONE if t == j else ZERO for t in range(target.dim)])
    extra = [tuple(range(q)) + tuple(q + c for c in combo) for combo in combinations(range(target.dim), 2 - q)]
    return _vanishes(gens, vectors, np.array(extra, dtype=np.int64).reshape(-1, 2))


def is_integral(E: MatrixSubspace, ideal: Union[IdealId, str]) -> bool:
    """True iff every generator p-form of ``ideal`` vanishes on every p-tuple of a basis of E.

    Subspaces of dimension below the degree of the ideal are integral vacuously.
    """
    ideal = IdealId(ideal)
    check_ambient(E, ideal)
    if ideal is IdealId.Gr11:
        return _evaluate_on_subspace(transpose(E), IdealId.Gr2, General(E.ambient.cols, E.ambient.rows))
    if ideal is IdealId.Gr111:
        return _evaluate_on_subspace(transpose(E), IdealId.Gr3, General(E.ambient.cols, E.ambient.rows))
    if ideal is IdealId.Gr2star:
        return _star_integral(E, IdealId.Gr2)
    if ideal is IdealId.Gr11star:
        return _star_integral(E, IdealId.Gr11)
    return _evaluate_on_subspace(E, ideal, E.ambient)


# ---------------------------------------------------------------------------
# transforms


def _mat_conj_transpose(mat: Matrix) -> Matrix:
    return tuple(tuple(conj(mat[a][b]) for a in range(len(mat))) for b in range(len(mat[0])))


def transpose(E: MatrixSubspace) -> MatrixSubspace:
    amb = E.ambient
    if amb.kind != "general":
        raise ValueError("transpose is defined for general ambients")
    new = General(amb.cols, amb.rows)
    return MatrixSubspace(new, tuple(tuple(zip(*b)) for b in E.basis))


def perp_dual(E: MatrixSubspace) -> MatrixSubspace:
    """Orthogonal complement under <u, v> = trace(u* v)."""
    amb = E.ambient
    if amb.kind != "general":
        raise ValueError("perp_dual needs a general ambient")
    if E.dim == 0:
        return MatrixSubspace.from_vectors(
            amb, [[ONE if t == j else ZERO for t in range(amb.dim)] for j in range(amb.dim)]
        )
    rows = [[conj(z) for z in v] for v in E.vectors()]
    null = _dm(rows, amb.dim).nullspace()
    return MatrixSubspace.from_vectors(amb, null.to_list())


def complement_transform(E: MatrixSubspace) -> MatrixSubspace:
    """Conjugate transpose of every basis matrix; exchanges I_a and I_a' integral elements."""
    amb = E.ambient
    if amb.kind != "general":
        raise ValueError("complement_transform needs a general ambient")
    return MatrixSubspace(General(amb.cols, amb.rows), tuple(_mat_conj_transpose(b) for b in E.basis))


# ---------------------------------------------------------------------------
# small exact matrix helpers


def _to_dm(mat: Sequence[Sequence[Any]]) -> DomainMatrix:
    rows = [[to_gauss(x) for x in r] for r in mat]
    return DomainMatrix(rows, (len(rows), len(rows[0]) if rows else 0), QQ_I)


def _invert(mat: Sequence[Sequence[Any]], what: str) -> List[List[Any]]:
    dm = _to_dm(mat)
    if dm.shape[0] != dm.shape[1] or dm.det() == ZERO:
        raise ValueError(f"{what} must be square and invertible")
    return dm.inv().to_list()


def _identity(n: int) -> List[List[Any]]:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def _outer(col: Sequence[Any], row: Sequence[Any]) -> Matrix:
    return tuple(tuple(to_gauss(c) * to_gauss(r) for r in row) for c in col)


def type_subspace(a: BoxedPartition, g: Any = "identity", s: Any = "identity") -> MatrixSubspace:
    """g . n_a . s^-1 with n_a = {Z : z^alpha_i = 0 when alpha > n-m-a_i} in General(n-m, m)."""
    k, m = a.width, a.m
    g_mat = _identity(k) if isinstance(g, str) and g == "identity" else [[to_gauss(x) for x in r] for r in g]
    s_inv = _identity(m) if isinstance(s, str) and s == "identity" else _invert(s, "s")
    if not (isinstance(g, str) and g == "identity"):
        _invert(g_mat, "g")
    parts = a.padded()
    basis = []
    for alpha in range(k):
        for i in range(m):
            if alpha < k - parts[i]:
                col = [g_mat[r][alpha] for r in range(k)]
                basis.append(_outer(col, s_inv[i]))
    return MatrixSubspace(General(k, m), tuple(basis))


def _det(mat: Sequence[Sequence[Any]]):
    return _to_dm(mat).det()


def chirality(V: Union[MatrixSubspace, Sequence[Sequence[Any]]]) -> int:
    """Sign of a maximal isotropic m-plane in C^{2m} for the form sum x_j^2.

    With U the 2m x m basis matrix and W any solution of U^T W = I, the sign is
    det[U | W] / i^m, which does not depend on the choices of basis or of W.
    """
    if isinstance(V, MatrixSubspace):
        if V.ambient.kind != "general" or V.ambient.cols != 1:
            raise ValueError("chirality needs column vectors")
        cols = [[b[r][0] for r in range(V.ambient.rows)] for b in V.basis]
    else:
        cols = [[to_gauss(x) for x in c] for c in V]
    if not cols:
        raise ValueError("empty subspace")
    two_m = len(cols[0])
    if two_m % 2 or any(len(c) != two_m for c in cols):
        raise ValueError("ambient must be C^(2m)")
    m = two_m // 2
    ut = _to_dm(cols)  # m x 2m, rows are the basis vectors
    if len(cols) != m or ut.rank() != m:
        raise ValueError(f"need {m} independent vectors for a maximal isotropic subspace")
    gram = ut * ut.transpose()
    if any(x != ZERO for row in gram.to_list() for x in row):
        raise ValueError("subspace is not isotropic")
    _, pivots = ut.rref()
    inv = ut.extract(list(range(m)), list(pivots)).inv().to_list()
    w = [[ZERO] * m for _ in range(two_m)]
    for r, piv in enumerate(pivots):
        w[piv] = inv[r]
    full = [[cols[j][r] for j in range(m)] + w[r] for r in range(two_m)]
    val = _det(full) * conj(I_UNIT ** (m % 4))
    if val == ONE:
        return 1
    if val == -ONE:
        return -1
    raise ArithmeticError(f"unexpected chirality value {val}")


def quadric_ambient(m: int) -> Ambient:
    return General(2 * m, 1)


def column_subspace(cols: Sequence[Sequence[Any]]) -> MatrixSubspace:
    amb = General(len(cols[0]), 1)
    return MatrixSubspace(amb, tuple(tuple((to_gauss(x),) for x in c) for c in cols))


def standard_isotropic(m: int) -> List[List[Any]]:
    """Columns e_k - i e_{m+k}: the reference plane of chirality +1."""
    out = []
    for k in range(m):
        v = [ZERO] * (2 * m)
        v[k] = ONE
        v[m + k] = -I_UNIT
        out.append(v)
    return out


def reflect(vectors: Sequence[Sequence[Any]], r: Sequence[int]) -> List[List[Any]]:
    """Apply the reflection v -> v - 2 (r.v)/(r.r) r to each vector."""
    rr = sum(x * x for x in r)
    if rr == 0:
        raise ValueError("reflection vector must be nonzero")
    scale = QQ_I(QQ(2, rr))
    out = []
    for v in vectors:
        dot = sum((v[i] * r[i] for i in range(len(r))), ZERO)
        out.append([v[i] - scale * dot * r[i] for i in range(len(r))])
    return out


# ---------------------------------------------------------------------------
# random instances


def trial_rng(seed: int, trial: int, case: str) -> np.random.Generator:
    return np.random.default_rng([seed & 0xFFFFFFFF, trial, zlib.crc32(case.encode())])


def _rand_ints(rng: np.random.Generator, *shape: int) -> np.ndarray:
    return rng.integers(-9, 10, size=shape)


def _rand_vectors(rng: np.random.Generator, count: int, dim: int) -> List[List[int]]:
    """``count`` linearly independent random integer vectors (rejection sampling)."""
    if count > dim:
        raise ValueError(f"cannot pick {count} independent vectors in dimension {dim}")
    while True:
        vecs = _rand_ints(rng, count, dim).tolist()
        if count == 0 or DomainMatrix([[ZZ(x) for x in v] for v in vecs], (count, dim), ZZ).rank() == count:
            return vecs


def random_invertible(rng: np.random.Generator, n: int) -> List[List[int]]:
    return _rand_vectors(rng, n, n)


def random_matrix(rng: np.random.Generator, ambient: Ambient) -> Matrix:
    while True:
        vec = _rand_ints(rng, ambient.dim).tolist()
        if any(vec):
            return ambient.from_vector([QQ_I(x) for x in vec])


def random_subspace(rng: np.random.Generator, ambient: Ambient, dim: int) -> MatrixSubspace:
    vecs = _rand_vectors(rng, dim, ambient.dim)
    return MatrixSubspace.from_vectors(ambient, vecs)


def _random_sub(rng: np.random.Generator, ambient: Ambient, mats: List[Matrix], dim: int) -> MatrixSubspace:
    """A random ``dim``-dimensional subspace of span(mats), mats independent."""
    if dim == len(mats):
        return MatrixSubspace(ambient, tuple(mats))
    coeffs = _rand_vectors(rng, dim, len(mats))
    vecs = [ambient.to_vector(mm) for mm in mats]
    out = []
    for c in coeffs:
        out.append([sum((QQ_I(ci) * v[t] for ci, v in zip(c, vecs)), ZERO) for t in range(ambient.dim)])
    return MatrixSubspace.from_vectors(ambient, out)


def perturb(rng: np.random.Generator, E: MatrixSubspace, p: int) -> MatrixSubspace:
    """Add an independent random matrix to every basis vector, then pad with random matrices up to dim p.

    Moving a single vector is not enough: a class such as L (x) V* + C.R still
    contains the result when only one of its vectors is moved.
    """
    amb = E.ambient
    for _ in range(1000):
        mats = []
        for mat in E.basis:
            noise = random_matrix(rng, amb)
            mats.append(
                tuple(tuple(mat[a][b] + noise[a][b] for b in range(amb.cols)) for a in range(amb.rows))
            )
        while len(mats) < p:
            mats.append(random_matrix(rng, amb))
        vecs = [amb.to_vector(mm) for mm in mats]
        if _rank(vecs, amb.dim) == len(mats):
            return MatrixSubspace(amb, tuple(mats))
    raise RuntimeError("could not draw a nondegenerate perturbation")


@dataclass(frozen=True)
class ClassKind:
    name: str
    ideals: Tuple[IdealId, ...]
    family: str  # "gr", "nplus", "lag" or "quadric"
    build: Callable[[np.random.Generator, Dict[str, int]], MatrixSubspace]
    applies: Callable[[Dict[str, int]], bool] = lambda params: True


def _gr_dims(params: Dict[str, int]) -> Tuple[int, int]:
    return params["n"] - params["m"], params["m"]


def _pick_dim(rng: np.random.Generator, lo: int, hi: int) -> int:
    lo = min(lo, hi)
    return int(rng.integers(lo, hi + 1))


def _line_tensor(rng, params, lo):
    k, m = _gr_dims(params)
    amb = General(k, m)
    (line,) = _rand_vectors(rng, 1, k)
    vs = _rand_vectors(rng, m, m)
    mats = [_outer(line, v) for v in vs]
    return _random_sub(rng, amb, mats, _pick_dim(rng, lo, m))


def _tensor_line(rng, params, lo):
    k, m = _gr_dims(params)
    amb = General(k, m)
    (cov,) = _rand_vectors(rng, 1, m)
    qs = _rand_vectors(rng, k, k)
    mats = [_outer(q, cov) for q in qs]
    return _random_sub(rng, amb, mats, _pick_dim(rng, lo, k))


def _generic(rng, params, dim):
    k, m = _gr_dims(params)
    return random_subspace(rng, General(k, m), dim)


def _star_class(rng, params, transpose_roles: bool):
    """(H x V*) + (Q x W), H a hyperplane of Q and W of codimension 2 in V*, or the transposed roles."""
    k, m = _gr_dims(params)
    g = random_invertible(rng, k)
    s = random_invertible(rng, m)
    qcols = [[g[r][c] for r in range(k)] for c in range(k)]
    mats = []
    for alpha in range(k):
        for j in range(m):
            if transpose_roles:
                keep = alpha < k - 2 or j < m - 1
            else:
                keep = alpha < k - 1 or j < m - 2
            if keep:
                mats.append(_outer(qcols[alpha], s[j]))
    return MatrixSubspace(General(k, m), tuple(mats))


def _plane_tensor(rng, params, lo):
    k, m = _gr_dims(params)
    amb = General(k, m)
    ps = _rand_vectors(rng, 2, k)
    vs = _rand_vectors(rng, m, m)
    mats = [_outer(p, v) for p in ps for v in vs]
    return _random_sub(rng, amb, mats, _pick_dim(rng, lo, 2 * m))


def _tensor_plane(rng, params, lo):
    k, m = _gr_dims(params)
    amb = General(k, m)
    ps = _rand_vectors(rng, 2, m)
    qs = _rand_vectors(rng, k, k)
    mats = [_outer(q, p) for q in qs for p in ps]
    return _random_sub(rng, amb, mats, _pick_dim(rng, lo, 2 * k))


def _line_plus(rng, params, transposed: bool):
    k, m = _gr_dims(params)
    amb = General(k, m)
    while True:
        if transposed:
            (cov,) = _rand_vectors(rng, 1, m)
            mats = [_outer(q, cov) for q in _rand_vectors(rng, k, k)]
        else:
            (line,) = _rand_vectors(rng, 1, k)
            mats = [_outer(line, v) for v in _rand_vectors(rng, m, m)]
        mats.append(random_matrix(rng, amb))
        if _rank([amb.to_vector(x) for x in mats], amb.dim) == len(mats):
            return MatrixSubspace(amb, tuple(mats))


def _neg(v: Sequence[int]) -> List[int]:
    return [-x for x in v]


def _sum_mats(*mats: Matrix) -> Matrix:
    return tuple(
        tuple(sum((mm[a][b] for mm in mats), ZERO) for b in range(len(mats[0][0])))
        for a in range(len(mats[0]))
    )


def _triple_wedge(rng, params):
    k, m = _gr_dims(params)
    q1, q2, q3 = _rand_vectors(rng, 3, k)
    l1, l2, l3 = _rand_vectors(rng, 3, m)
    mats = [
        _sum_mats(_outer(q2, l3), _outer(_neg(q3), l2)),
        _sum_mats(_outer(q3, l1), _outer(_neg(q1), l3)),
        _sum_mats(_outer(q1, l2), _outer(_neg(q2), l1)),
    ]
    return MatrixSubspace(General(k, m), tuple(mats))


def _plane_plane(rng, params):
    k, m = _gr_dims(params)
    ps = _rand_vectors(rng, 2, k)
    vs = _rand_vectors(rng, 2, m)
    mats = [_outer(p, v) for p in ps for v in vs]
    return _random_sub(rng, General(k, m), mats, _pick_dim(rng, 3, 4))


def _mixed_a(rng, params):
    k, m = _gr_dims(params)
    q1, q2 = _rand_vectors(rng, 2, k)
    v1, v2, v3 = _rand_vectors(rng, 3, m)
    mats = [
        _outer(q2, v3),
        _outer(_neg(q1), v3),
        _sum_mats(_outer(q1, v2), _outer(_neg(q2), v1)),
    ]
    return MatrixSubspace(General(k, m), tuple(mats))


def _mixed_b(rng, params):
    k, m = _gr_dims(params)
    q1, q2, q3 = _rand_vectors(rng, 3, k)
    v1, v2 = _rand_vectors(rng, 2, m)
    mats = [
        _outer(_neg(q3), v2),
        _outer(q3, v1),
        _sum_mats(_outer(q1, v2), _outer(_neg(q2), v1)),
    ]
    return MatrixSubspace(General(k, m), tuple(mats))


def _wedge_mat(l: Sequence[int], v: Sequence[int]) -> Matrix:
    n = len(l)
    return tuple(tuple(QQ_I(l[a] * v[b] - v[a] * l[b]) for b in range(n)) for a in range(n))


def _sym_mat(l: Sequence[int], v: Sequence[int]) -> Matrix:
    n = len(l)
    return tuple(tuple(QQ_I(l[a] * v[b] + v[a] * l[b]) for b in range(n)) for a in range(n))


def _line_wedge(rng, params):
    m = params["m"]
    vs = _rand_vectors(rng, m, m)
    mats = [_wedge_mat(vs[0], v) for v in vs[1:]]
    return _random_sub(rng, Alternating(m), mats, _pick_dim(rng, 3, m - 1))


def _wedge_square(rng, params):
    m = params["m"]
    ws = _rand_vectors(rng, 3, m)
    mats = [_wedge_mat(ws[a], ws[b]) for a, b in combinations(range(3), 2)]
    return MatrixSubspace(Alternating(m), tuple(mats))


def _line_sym(rng, params):
    m = params["m"]
    vs = _rand_vectors(rng, m, m)
    mats = [_sym_mat(vs[0], v) for v in vs]
    return _random_sub(rng, Symmetric(m), mats, _pick_dim(rng, 3, m))


def _sym_square(rng, params):
    m = params["m"]
    w1, w2 = _rand_vectors(rng, 2, m)
    mats = [_sym_mat(w1, w1), _sym_mat(w1, w2), _sym_mat(w2, w2)]
    return MatrixSubspace(Symmetric(m), tuple(mats))


def random_isotropic(rng: np.random.Generator, m: int, sign: int, reflections: Optional[int] = None) -> List[List[Any]]:
    """A maximal isotropic plane of the requested chirality, as m column vectors.

    The reference plane is moved by a product of rational reflections; each
    reflection reverses the chirality.
    """
    if reflections is None:
        reflections = int(rng.integers(2, 6))
    if (reflections % 2 == 0) != (sign == 1):
        reflections += 1
    cols = standard_isotropic(m)
    for _ in range(reflections):
        while True:
            r = _rand_ints(rng, 2 * m).tolist()
            if any(r):
                break
        cols = reflect(cols, r)
    basis_change = random_invertible(rng, m)
    return [
        [sum((QQ_I(basis_change[j][t]) * cols[t][r] for t in range(m)), ZERO) for r in range(2 * m)]
        for j in range(m)
    ]


def _quad(sign: int):
    def build(rng, params):
        return column_subspace(random_isotropic(rng, params["m"], sign))

    return build


def _kmin(n: int):
    return lambda params: params["n"] - params["m"] >= n


def _mmin(n: int):
    return lambda params: params["m"] >= n


def _both(*conds):
    return lambda params: all(c(params) for c in conds)


CLASS_KINDS: Dict[str, ClassKind] = {
    kind.name: kind
    for kind in [
        ClassKind("i2-line-tensor", (IdealId.Gr2,), "gr", lambda r, p: _line_tensor(r, p, 2)),
        ClassKind("i2-generic-line", (IdealId.Gr2,), "gr", lambda r, p: _generic(r, p, 1)),
        ClassKind("i11-tensor-line", (IdealId.Gr11,), "gr", lambda r, p: _tensor_line(r, p, 2)),
        ClassKind("i11-generic-line", (IdealId.Gr11,), "gr", lambda r, p: _generic(r, p, 1)),
        ClassKind("i2star-hyperplane", (IdealId.Gr2star,), "gr", lambda r, p: _star_class(r, p, False), _mmin(2)),
        ClassKind("i11star-hyperplane", (IdealId.Gr11star,), "gr", lambda r, p: _star_class(r, p, True), _kmin(2)),
        ClassKind("i3-plane-tensor", (IdealId.Gr3,), "gr", lambda r, p: _plane_tensor(r, p, 3), _kmin(2)),
        ClassKind("i3-line-plus-one", (IdealId.Gr3,), "gr", lambda r, p: _line_plus(r, p, False)),
        ClassKind("i3-triple-wedge", (IdealId.Gr3, IdealId.Gr111), "gr", _triple_wedge, _both(_kmin(3), _mmin(3))),
        ClassKind("i3-generic-plane", (IdealId.Gr3,), "gr", lambda r, p: _generic(r, p, 2)),
        ClassKind("i111-tensor-plane", (IdealId.Gr111,), "gr", lambda r, p: _tensor_plane(r, p, 3), _mmin(2)),
        ClassKind("i111-line-plus-one", (IdealId.Gr111,), "gr", lambda r, p: _line_plus(r, p, True)),
        ClassKind("i111-generic-plane", (IdealId.Gr111,), "gr", lambda r, p: _generic(r, p, 2)),
        ClassKind("i3-i111-plane-plane", (IdealId.Gr3, IdealId.Gr111), "gr", _plane_plane, _both(_kmin(2), _mmin(2))),
        ClassKind("i3-i111-mixed-a", (IdealId.Gr3, IdealId.Gr111), "gr", _mixed_a, _both(_kmin(2), _mmin(3))),
        ClassKind("i3-i111-mixed-b", (IdealId.Gr3, IdealId.Gr111), "gr", _mixed_b, _both(_kmin(3), _mmin(2))),
        ClassKind("i21-line-tensor", (IdealId.Gr21,), "gr", lambda r, p: _line_tensor(r, p, 3), _mmin(3)),
        ClassKind("i21-tensor-line", (IdealId.Gr21,), "gr", lambda r, p: _tensor_line(r, p, 3), _kmin(3)),
        ClassKind("i21-generic-plane", (IdealId.Gr21,), "gr", lambda r, p: _generic(r, p, 2)),
        ClassKind("n222-line-wedge", (IdealId.N222,), "nplus", _line_wedge, _mmin(4)),
        ClassKind("n3111-wedge-square", (IdealId.N3111,), "nplus", _wedge_square, _mmin(3)),
        ClassKind("l33-line-sym", (IdealId.L33,), "lag", _line_sym, _mmin(3)),
        ClassKind("l411-sym-square", (IdealId.L411,), "lag", _sym_square, _mmin(2)),
        ClassKind("quad-positive", (IdealId.QuadMinus,), "quadric", _quad(1)),
        ClassKind("quad-negative", (IdealId.QuadPlus,), "quadric", _quad(-1)),
    ]
}


def classified_subspace(kind: str, params: Dict[str, int], seed: int) -> MatrixSubspace:
    """A seeded random instance of one class from the classification lemmas.

    ``params`` holds ``m`` and ``n`` for Grassmannian kinds and ``m`` otherwise.
    """
    if kind not in CLASS_KINDS:
        raise ValueError(f"unknown class kind {kind!r}; choose from {sorted(CLASS_KINDS)}")
    spec = CLASS_KINDS[kind]
    _check_params(spec.family, params)
    if not spec.applies(params):
        raise ValueError(f"kind {kind} does not exist for parameters {params}")
    return spec.build(trial_rng(seed, 0, kind), params)


def _check_params(family: str, params: Dict[str, int]) -> None:
    if family == "gr":
        if "m" not in params or "n" not in params or not 0 < params["m"] < params["n"]:
            raise ValueError(f"Grassmannian kinds need 0 < m < n, got {params}")
    elif "m" not in params or params["m"] < 2:
        raise ValueError(f"{family} kinds need m >= 2, got {params}")


# ---------------------------------------------------------------------------
# verification harness


@dataclass
class VerifyReport:
    lemma: str
    params: Dict[str, Any]
    trials: int
    seed: int
    passed: int = 0
    failed: int = 0
    counterexamples: List[Dict[str, Any]] = field(default_factory=list)
    tally: Dict[str, int] = field(default_factory=dict)

    def record(self, ok: bool, check: str, trial: int, **detail: Any) -> None:
        """Count one check; ``tally`` is keyed by check name plus kind and ideal when present."""
        key = ":".join(str(x) for x in (check, detail.get("kind"), detail.get("ideal")) if x is not None)
        self.tally[key] = self.tally.get(key, 0) + 1
        if ok:
            self.passed += 1
        else:
            self.failed += 1
            self.counterexamples.append({"check": check, "trial": trial, **detail})

    def merge(self, other: "VerifyReport") -> None:
        self.passed += other.passed
        self.failed += other.failed
        self.counterexamples.extend(other.counterexamples)
        for key, count in other.tally.items():
            self.tally[key] = self.tally.get(key, 0) + count

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "lemma": self.lemma,
            "params": dict(sorted(self.params.items())),
            "trials": self.trials,
            "seed": self.seed,
            "passed": self.passed,
            "failed": self.failed,
            "counterexamples": self.counterexamples,
            "tally": dict(sorted(self.tally.items())),
        }


def _gr_box(params: Dict[str, int]) -> Tuple[int, int]:
    _check_params("gr", params)
    return params["m"], params["n"]


def _fits(a: Partition, m: int, n: int) -> bool:
    return len(a) <= m and a[0] <= n - m


def _random_type(rng, a: BoxedPartition) -> MatrixSubspace:
    return type_subspace(a, random_invertible(rng, a.width), random_invertible(rng, a.m))


def _trial_ideal_inclusions(params, seed, trial, rep: VerifyReport) -> None:
    m, n = _gr_box(params)
    for a in GR_PARTITIONS:
        if not _fits(a, m, n):
            continue
        ideal = ideal_for(a)
        for b in enumerate_pmn(m, n):
            rng = trial_rng(seed, trial, f"incl:{a}:{b}")
            E = _random_type(rng, dual(b))
            expect = not leq(a, b.partition)
            got = is_integral(E, ideal)
            rep.record(got == expect, "type-b*-vs-I_a", trial, a=str(a), b=str(b), expected=expect, got=got)


def _lemma_kinds(lemma: str) -> List[str]:
    return {
        "i2-classification": [
            "i2-line-tensor", "i2-generic-line", "i11-tensor-line", "i11-generic-line",
            "i2star-hyperplane", "i11star-hyperplane",
        ],
        "i21-classification": ["i21-line-tensor", "i21-tensor-line", "i21-generic-plane"],
        "i3-classes": [
            "i3-plane-tensor", "i3-line-plus-one", "i3-triple-wedge", "i3-generic-plane",
            "i111-tensor-plane", "i111-line-plus-one", "i111-generic-plane",
            "i3-i111-plane-plane", "i3-i111-mixed-a", "i3-i111-mixed-b",
        ],
        "n-deg3-classes": ["n222-line-wedge", "n3111-wedge-square"],
        "l-deg3-classes": ["l33-line-sym", "l411-sym-square"],
    }[lemma]


_STAR_BASE = {IdealId.Gr2star: (2,), IdealId.Gr11star: (1, 1)}


def _ideal_exists(ideal: IdealId, params: Dict[str, int]) -> bool:
    """False when the ideal is zero for these parameters (its partition leaves the box)."""
    if not ideal.value.startswith("Gr"):
        return True
    key = _STAR_BASE.get(ideal) or next(k for k, v in _BY_PARTITION.items() if v is ideal)
    return _fits(Partition(key), params["m"], params["n"])


def _trial_classes(lemma: str):
    def run(params, seed, trial, rep: VerifyReport) -> None:
        for name in _lemma_kinds(lemma):
            kind = CLASS_KINDS[name]
            _check_params(kind.family, params)
            if not kind.applies(params):
                continue
            rng = trial_rng(seed, trial, name)
            E = kind.build(rng, params)
            for ideal in kind.ideals:
                if not _ideal_exists(ideal, params):
                    continue
                ok = is_integral(E, ideal)
                rep.record(ok, "positive", trial, kind=name, ideal=ideal.value, dim=E.dim)
                bad = perturb(rng, E, ideal_degree(ideal, E.ambient))
                ok = not is_integral(bad, ideal)
                rep.record(ok, "perturbed", trial, kind=name, ideal=ideal.value, dim=bad.dim)

    return run


def _intersection_dim(p: List[List[Any]], q: List[List[Any]]) -> int:
    return len(p) + len(q) - _rank(p + q, len(p[0]))


def _trial_quad(params, seed, trial, rep: VerifyReport) -> None:
    m = params["m"]
    for sign in (1, -1):
        rng = trial_rng(seed, trial, f"quad:{sign}")
        cols = random_isotropic(rng, m, sign)
        E = column_subspace(cols)
        rep.record(chirality(E) == sign, "chirality", trial, sign=sign)
        kills, other = (IdealId.QuadMinus, IdealId.QuadPlus) if sign == 1 else (IdealId.QuadPlus, IdealId.QuadMinus)
        rep.record(is_integral(E, kills), "vanishing", trial, sign=sign, ideal=kills.value)
        rep.record(not is_integral(E, other), "nonvanishing", trial, sign=sign, ideal=other.value)
        change = random_invertible(rng, m)
        moved = [
            [sum((QQ_I(change[j][t]) * cols[t][r] for t in range(m)), ZERO) for r in range(2 * m)]
            for j in range(m)
        ]
        rep.record(chirality(moved) == sign, "basis-change", trial, sign=sign)
    rng = trial_rng(seed, trial, "quad:parity")
    p = random_isotropic(rng, m, int(rng.choice([1, -1])), int(rng.integers(0, 4)))
    q = random_isotropic(rng, m, int(rng.choice([1, -1])), int(rng.integers(0, 4)))
    same = chirality(p) == chirality(q)
    dim = _intersection_dim(p, q)
    rep.record(same == ((dim - m) % 2 == 0), "parity", trial, intersection=dim)


def _random_gr_subspace(rng, m: int, n: int) -> MatrixSubspace:
    k = n - m
    choice = int(rng.integers(3))
    if choice == 0:
        boxes = enumerate_pmn(m, n)
        return _random_type(rng, boxes[int(rng.integers(len(boxes)))])
    if choice == 1:
        names = [
            nm for nm, kd in CLASS_KINDS.items()
            if kd.family == "gr" and kd.applies({"m": m, "n": n})
        ]
        return CLASS_KINDS[names[int(rng.integers(len(names)))]].build(rng, {"m": m, "n": n})
    return random_subspace(rng, General(k, m), int(rng.integers(0, min(5, k * m) + 1)))


def _conj_inv(mat: List[List[int]]) -> List[List[Any]]:
    inv = _invert(mat, "matrix")
    n = len(inv)
    return [[conj(inv[c][r]) for c in range(n)] for r in range(n)]


def _trial_duality(params, seed, trial, rep: VerifyReport) -> None:
    m, n = _gr_box(params)
    k = n - m
    rng = trial_rng(seed, trial, "duality")
    E = _random_gr_subspace(rng, m, n)
    perp = perp_dual(E)
    rep.record(E.dim + perp.dim == m * k, "dimension", trial, dim=E.dim)
    rep.record(perp_dual(perp).same_span(E), "involution", trial, dim=E.dim)
    boxes = enumerate_pmn(m, n)
    a = boxes[int(rng.integers(len(boxes)))]
    g = random_invertible(rng, k)
    s = random_invertible(rng, m)
    rev_k = [[1 if i + j == k - 1 else 0 for j in range(k)] for i in range(k)]
    rev_m = [[1 if i + j == m - 1 else 0 for j in range(m)] for i in range(m)]
    g2 = [[sum((x * QQ_I(rev_k[t][c]) for t, x in enumerate(row)), ZERO) for c in range(k)] for row in _conj_inv(g)]
    s2 = [[sum((x * QQ_I(rev_m[t][c]) for t, x in enumerate(row)), ZERO) for c in range(m)] for row in _conj_inv(s)]
    lhs = perp_dual(type_subspace(a, g, s))
    rhs = type_subspace(dual(a), g2, s2)
    rep.record(lhs.same_span(rhs), "type-dual", trial, a=str(a))
    # a 2-plane is in Z(I_2) iff its perp is in Z(I_2*); likewise for I_11
    F = E if E.dim == 2 else random_subspace(rng, General(k, m), min(2, k * m))
    if F.dim == 2 and m * k > 2:
        for base, star in ((IdealId.Gr2, IdealId.Gr2star), (IdealId.Gr11, IdealId.Gr11star)):
            lhs_ok = is_integral(F, base)
            rhs_ok = is_integral(perp_dual(F), star)
            rep.record(lhs_ok == rhs_ok, "star-agreement", trial, ideal=base.value)


def _trial_complementarity(params, seed, trial, rep: VerifyReport) -> None:
    m, n = _gr_box(params)
    rng = trial_rng(seed, trial, "complementarity")
    E = _random_gr_subspace(rng, m, n)
    C = complement_transform(E)
    rep.record(complement_transform(C).same_span(E), "involution", trial)
    for a in GR_PARTITIONS:
        if not _fits(a, m, n):
            continue
        a_conj = a.conjugate()
        lhs = is_integral(E, ideal_for(a))
        rhs = is_integral(C, ideal_for(a_conj))
        rep.record(lhs == rhs, "exchange", trial, a=str(a), dim=E.dim)


def _max_witness(a: BoxedPartition) -> BoxedPartition:
    """b = a^q of maximal size with b not >= a."""
    parts = a.padded() + (0,)
    best = None
    for q in range(a.m):
        if parts[q] > parts[q + 1]:
            cand = [a.width] * q + [parts[q] - 1] * (a.m - q)
            if best is None or sum(cand) > sum(best):
                best = cand
    return BoxedPartition(Partition(best), a.m, a.width)


def _trial_max_dim(params, seed, trial, rep: VerifyReport) -> None:
    m, n = _gr_box(params)
    k = n - m
    chosen = params.get("a")
    if isinstance(chosen, str):
        chosen = Partition.parse(chosen)
    targets = [as_partition(chosen)] if chosen is not None else list(GR_PARTITIONS)
    for a in targets:
        if not _fits(a, m, n):
            continue
        boxed = BoxedPartition(a, m, k)
        ideal = ideal_for(a)
        bound = max_integral_dim(boxed)
        rng = trial_rng(seed, trial, f"maxdim:{a}")
        witness = _random_type(rng, dual(_max_witness(boxed)))
        rep.record(witness.dim == bound and is_integral(witness, ideal), "witness", trial, a=str(a), dim=witness.dim)
        if bound + 1 > m * k:
            continue
        extended = MatrixSubspace.span(witness.ambient, list(witness.basis) + [random_matrix(rng, witness.ambient)])
        if extended.dim == bound + 1:
            rep.record(not is_integral(extended, ideal), "extended-witness", trial, a=str(a), dim=extended.dim)
        sample = random_subspace(rng, General(k, m), bound + 1)
        rep.record(not is_integral(sample, ideal), "random-above-bound", trial, a=str(a), dim=sample.dim)


_LEMMAS: Dict[str, Tuple[str, Callable[..., None]]] = {
    "ideal-inclusions": ("gr", _trial_ideal_inclusions),
    "i2-classification": ("gr", _trial_classes("i2-classification")),
    "i21-classification": ("gr", _trial_classes("i21-classification")),
    "i3-classes": ("gr", _trial_classes("i3-classes")),
    "n-deg3-classes": ("nplus", _trial_classes("n-deg3-classes")),
    "l-deg3-classes": ("lag", _trial_classes("l-deg3-classes")),
    "quad-vanishing": ("quadric", _trial_quad),
    "duality": ("gr", _trial_duality),
    "complementarity": ("gr", _trial_complementarity),
    "max-dim": ("gr", _trial_max_dim),
}

LEMMAS: Tuple[str, ...] = tuple(_LEMMAS)


def lemma_family(lemma: str) -> str:
    if lemma not in _LEMMAS:
        raise ValueError(f"unknown lemma {lemma!r}; choose from {', '.join(LEMMAS)}")
    return _LEMMAS[lemma][0]


def verify_lemma(
    lemma: str, params: Dict[str, Any], trials: int, seed: int, jobs: int = 1
) -> VerifyReport:
    """Run seeded membership and anti-membership checks for one lemma.

    Each trial draws from its own generator keyed by (seed, trial, case), so the
    report does not depend on ``jobs`` or on the order in which trials finish.
    """
    family = lemma_family(lemma)
    if trials < 0:
        raise ValueError("trials must be nonnegative")
    _check_params(family, params)
    runner = _LEMMAS[lemma][1]

    def one(trial: int) -> VerifyReport:
        rep = VerifyReport(lemma, params, trials, seed)
        runner(params, seed, trial, rep)
        return rep

    report = VerifyReport(lemma, dict(params), trials, seed)
    if jobs > 1 and trials > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(one, range(trials)))
    else:
        parts = [one(t) for t in range(trials)]
    for part in parts:
        report.merge(part)
    return report
