"""Command-line front end.

Every command writes to standard output only.  Exit codes: 0 on success, 1 when
a verification fails or a request is unsupported, 2 when the arguments do not
parse.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

from . import cohomology as coh
from . import integral
from .partitions import BoxedPartition, Partition, dim_schur, dim_symgroup
from .posets import BruhatPoset, HssSpace, LabelError, assign_dim_labels, build_poset

SCHEMA_VERSION = "1"


class UsageError(Exception):
    """Bad user input discovered after argparse (exit code 2)."""


@dataclass(frozen=True)
class DocNode:
    id: str
    degree: int
    label: str
    dual: str
    dim: Optional[str] = None
    dim_status: Optional[str] = None


@dataclass(frozen=True)
class PosetDocument:
    space: str
    nodes: Tuple[DocNode, ...]
    edges: Tuple[Tuple[str, str], ...]
    schema_version: str = SCHEMA_VERSION

    @classmethod
    def from_poset(cls, p: BruhatPoset) -> "PosetDocument":
        nodes = tuple(
            DocNode(
                n.id,
                n.degree,
                n.label,
                n.dual,
                None if n.dim_label is None else str(n.dim_label),
                n.dim_status if n.dim_label is not None else None,
            )
            for n in sorted(p.nodes, key=lambda n: (n.degree, n.id))
        )
        return cls(p.space, nodes, tuple(sorted(p.edges)))

    def to_json(self) -> str:
        nodes = []
        for n in self.nodes:
            entry: Dict[str, Any] = {"id": n.id, "degree": n.degree, "label": n.label, "dual": n.dual}
            if n.dim is not None:
                entry["dim"] = n.dim
            if n.dim_status is not None:
                entry["dim_status"] = n.dim_status
            nodes.append(entry)
        doc = {
            "schema_version": self.schema_version,
            "space": self.space,
            "nodes": nodes,
            "edges": [list(e) for e in self.edges],
        }
        return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "PosetDocument":
        raw = json.loads(text)
        if raw.get("schema_version") != SCHEMA_VERSION:
            raise ValueError(f"unsupported schema version {raw.get('schema_version')!r}")
        nodes = tuple(
            DocNode(n["id"], n["degree"], n["label"], n["dual"], n.get("dim"), n.get("dim_status"))
            for n in raw["nodes"]
        )
        ids = {n.id for n in nodes}
        if len(ids) != len(nodes):
            raise ValueError("duplicate node ids")
        edges = tuple((a, b) for a, b in raw["edges"])
        if any(a not in ids or b not in ids for a, b in edges):
            raise ValueError("edge references an unknown node")
        return cls(raw["space"], nodes, edges, raw["schema_version"])


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def render_dot(doc: PosetDocument, labels: bool) -> str:
    lines = [f"graph {_quote(doc.space)} {{", "  rankdir=LR;", "  node [shape=box];"]
    degrees = sorted({n.degree for n in doc.nodes})
    for d in degrees:
        members = " ".join(_quote(n.id) + ";" for n in doc.nodes if n.degree == d)
        lines.append(f"  {{ rank=same; {members} }}")
    for n in doc.nodes:
        text = _quote(n.label)
        if labels and n.dim is not None:
            # DOT line break between the node label and its dimension
            text = text[:-1] + "\\n" + n.dim + '"'
        lines.append(f"  {_quote(n.id)} [label={text}];")
    for a, b in doc.edges:
        lines.append(f"  {_quote(a)} -- {_quote(b)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def render_text(doc: PosetDocument) -> str:
    lines = [f"space {doc.space}", f"nodes {len(doc.nodes)}"]
    for n in doc.nodes:
        parts = [str(n.degree), n.id]
        if n.label != n.id:
            parts.append(f"label={n.label}")
        if n.dim is not None:
            parts.append(f"dim={n.dim}")
        if n.dim_status is not None and n.dim is not None:
            parts.append(f"status={n.dim_status.replace(' ', '')}")
        parts.append(f"dual={n.dual}")
        lines.append(" ".join(parts))
    lines.append(f"edges {len(doc.edges)}")
    lines.extend(f"{a} -- {b}" for a, b in doc.edges)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# argument helpers


def _partition(text: str) -> Partition:
    try:
        return Partition.parse(text)
    except ValueError as exc:
        raise UsageError(f"bad partition {text!r}: {exc}") from None


def _space(text: str) -> HssSpace:
    try:
        return HssSpace.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _gr_space(text: str) -> Tuple[int, int]:
    space = _space(text)
    if space.family != "gr":
        raise UsageError(f"this command needs a Grassmannian space gr:m,n, got {text!r}")
    return space.params[0], space.params[1]


def _boxed(a: Partition, m: int, n: int) -> BoxedPartition:
    try:
        return BoxedPartition.of(a, m, n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _params_for(lemma: str, text: str) -> Dict[str, int]:
    family = integral.lemma_family(lemma)
    space = _space(text)
    if family == "quadric":
        if space.family != "quadric" or space.params[0] % 2:
            raise UsageError(f"{lemma} needs an even quadric quadric:2m, got {text!r}")
        return {"m": space.params[0] // 2}
    if space.family != family:
        raise UsageError(f"{lemma} needs a {family} space, got {text!r}")
    if family == "gr":
        return {"m": space.params[0], "n": space.params[1]}
    return {"m": space.params[0]}


def _read_matrix(path: str) -> List[List[Any]]:
    """JSON rows of [re_num, re_den, im_num, im_den] quadruples."""
    try:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
        rows = []
        for row in raw:
            out = []
            for q in row:
                if len(q) != 4 or not all(isinstance(x, int) for x in q) or q[1] == 0 or q[3] == 0:
                    raise ValueError(f"bad entry {q!r}")
                out.append(integral.gauss(f"{q[0]}/{q[1]}", f"{q[2]}/{q[3]}"))
            rows.append(out)
        if not rows or any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("matrix rows must be nonempty and of equal length")
        return rows
    except (OSError, ValueError, TypeError) as exc:
        raise UsageError(f"cannot read matrix from {path}: {exc}") from None


# ---------------------------------------------------------------------------
# commands


def cmd_poset(args: argparse.Namespace) -> int:
    space = _space(args.space)
    poset = build_poset(space)
    labels = args.labels == "on"
    if labels:
        try:
            poset = assign_dim_labels(poset)
        except LabelError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1
    doc = PosetDocument.from_poset(poset)
    if args.format == "json":
        sys.stdout.write(doc.to_json())
    elif args.format == "dot":
        sys.stdout.write(render_dot(doc, labels))
    else:
        sys.stdout.write(render_text(doc))
    return 0


def cmd_product(args: argparse.Namespace) -> int:
    m, n = _gr_space(args.space)
    x = coh.CohomologyClass.basis(_boxed(_partition(args.a), m, n))
    y = coh.CohomologyClass.basis(_boxed(_partition(args.b), m, n))
    print(coh.multiply(x, y))
    return 0


def cmd_giambelli(args: argparse.Namespace) -> int:
    a = _partition(args.a)
    if args.space:
        m, n = _gr_space(args.space)
        boxed = _boxed(a, m, n)
    else:
        # wide enough that no q_j in the determinant is truncated
        rows = max(len(a), 1)
        boxed = BoxedPartition(a, rows, max(a[0] + len(a) - 1, 1))
    print(coh.giambelli_expand(boxed))
    return 0


def cmd_pieri(args: argparse.Namespace) -> int:
    m, n = _gr_space(args.space)
    cls = coh.CohomologyClass.basis(_boxed(_partition(args.a), m, n))
    if not 1 <= args.k <= n - m:
        raise UsageError(f"k must lie in 1..{n - m}")
    print(coh.pieri_qk(cls, args.k))
    return 0


def cmd_degree(args: argparse.Namespace) -> int:
    a = _partition(args.a)
    if args.space:
        m, n = _gr_space(args.space)
        boxed = _boxed(a, m, n)
    else:
        boxed = BoxedPartition(a, max(len(a), 1), max(a[0], 1))
    print(f"degree {coh.schubert_degree(boxed)}")
    print(f"volume {coh.schubert_volume(boxed)}")
    return 0


def cmd_chern(args: argparse.Namespace) -> int:
    if args.rank < 1:
        raise UsageError("rank must be positive")
    print(coh.schur_chern(_partition(args.a), args.rank))
    return 0


def cmd_dims(args: argparse.Namespace) -> int:
    a = _partition(args.shape)
    if args.m < 1:
        raise UsageError("m must be positive")
    print(f"schur {dim_schur(a, args.m)}")
    print(f"symmetric {dim_symgroup(a)}")
    return 0


def cmd_chirality(args: argparse.Namespace) -> int:
    rows = _read_matrix(args.matrix)
    cols = [[rows[r][c] for r in range(len(rows))] for c in range(len(rows[0]))]
    try:
        sign = integral.chirality(cols)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print("+1" if sign > 0 else "-1")
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    if args.lemma not in integral.LEMMAS:
        raise UsageError(f"unknown lemma {args.lemma!r}; choose from {', '.join(integral.LEMMAS)}")
    params: Dict[str, Any] = _params_for(args.lemma, args.space)
    if args.a is not None:
        if args.lemma != "max-dim":
            raise UsageError("--a is only used by max-dim")
        a = _partition(args.a)
        try:
            integral.ideal_for(a)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        _boxed(a, params["m"], params["n"])
        params["a"] = ",".join(map(str, a.parts))
    if args.trials < 0 or args.jobs < 1:
        raise UsageError("trials must be >= 0 and jobs >= 1")
    try:
        report = integral.verify_lemma(args.lemma, params, args.trials, args.seed, jobs=args.jobs)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    sys.stdout.write(json.dumps(report.to_dict(), sort_keys=True, indent=2) + "\n")
    return 0 if report.ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="schubcalc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("poset", help="Bruhat poset of a Hermitian symmetric space")
    p.add_argument("--space", required=True, help="gr:m,n | quadric:n | nplus:m | lag:m | e3 | e7")
    p.add_argument("--format", choices=("dot", "json", "text"), default="text")
    p.add_argument("--labels", choices=("on", "off"), default="off")
    p.set_defaults(func=cmd_poset)

    p = sub.add_parser("product", help="product q_a q_b in H*(Gr(m,n))")
    p.add_argument("--space", required=True)
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.set_defaults(func=cmd_product)

    p = sub.add_parser("giambelli", help="q_a as a polynomial in the special classes")
    p.add_argument("--a", required=True)
    p.add_argument("--space", help="truncate q_j to j <= n-m")
    p.set_defaults(func=cmd_giambelli)

    p = sub.add_parser("pieri", help="q_a q_k by horizontal strips")
    p.add_argument("--space", required=True)
    p.add_argument("--a", required=True)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_pieri)

    p = sub.add_parser("degree", help="degree and volume of the Schubert cycle of shape a")
    p.add_argument("--a", required=True)
    p.add_argument("--space")
    p.set_defaults(func=cmd_degree)

    p = sub.add_parser("chern", help="Schur-Chern class c_a of a rank r bundle")
    p.add_argument("--a", required=True)
    p.add_argument("--rank", type=int, required=True)
    p.set_defaults(func=cmd_chern)

    p = sub.add_parser("dims", help="hook-content and hook-length dimensions")
    p.add_argument("--shape", required=True)
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(func=cmd_dims)

    p = sub.add_parser("chirality", help="chirality of a maximal isotropic plane")
    p.add_argument("--matrix", required=True, help="JSON file, 2m rows x m columns")
    p.set_defaults(func=cmd_chirality)

    p = sub.add_parser("verify", help="seeded check of an integral-element lemma")
    p.add_argument("--lemma", required=True, help=", ".join(integral.LEMMAS))
    p.add_argument("--space", required=True)
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--a", help="max-dim only: restrict to one partition")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
