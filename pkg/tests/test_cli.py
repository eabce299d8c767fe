import io
import json
from contextlib import redirect_stderr, redirect_stdout
from pathlib import Path

import pytest

from schubcalc.cli import PosetDocument, main, render_dot, render_text
from schubcalc.posets import HssSpace, assign_dim_labels, build_poset

GOLDEN = Path(__file__).parent / "golden"

# name -> argv; "{golden}" expands to the golden directory
CASES = {
    "poset_gr24_text": ["poset", "--space", "gr:2,4", "--format", "text"],
    "poset_gr24_dot": ["poset", "--space", "gr:2,4", "--format", "dot", "--labels", "on"],
    "poset_gr25_json": ["poset", "--space", "gr:2,5", "--format", "json"],
    "poset_gr36_json_labels": ["poset", "--space", "gr:3,6", "--format", "json", "--labels", "on"],
    "poset_quadric7_text": ["poset", "--space", "quadric:7", "--format", "text"],
    "poset_quadric6_dot": ["poset", "--space", "quadric:6", "--format", "dot"],
    "poset_nplus5_json_labels": ["poset", "--space", "nplus:5", "--format", "json", "--labels", "on"],
    "poset_lag4_text_labels": ["poset", "--space", "lag:4", "--format", "text", "--labels", "on"],
    "poset_e3_dot_labels": ["poset", "--space", "e3", "--format", "dot", "--labels", "on"],
    "poset_e7_json_labels": ["poset", "--space", "e7", "--format", "json", "--labels", "on"],
    "product_gr24_2_2": ["product", "--space", "gr:2,4", "--a", "2", "--b", "2"],
    "product_gr36_21_21": ["product", "--space", "gr:3,6", "--a", "2,1", "--b", "2,1"],
    "giambelli_11": ["giambelli", "--a", "1,1"],
    "giambelli_21_gr25": ["giambelli", "--a", "2,1", "--space", "gr:2,5"],
    "pieri_gr25_1_k2": ["pieri", "--space", "gr:2,5", "--a", "1", "--k", "2"],
    "degree_333": ["degree", "--a", "3,3,3"],
    "chern_21_rank3": ["chern", "--a", "2,1", "--rank", "3"],
    "chern_11_rank2": ["chern", "--a", "1,1", "--rank", "2"],
    "dims_222_m5": ["dims", "--shape", "2,2,2", "--m", "5"],
    "dims_3111_m5": ["dims", "--shape", "3,1,1,1", "--m", "5"],
    "chirality_plus": ["chirality", "--matrix", "{golden}/plane_plus.json"],
    "chirality_minus": ["chirality", "--matrix", "{golden}/plane_minus.json"],
    "verify_inclusions_gr36": ["verify", "--lemma", "ideal-inclusions", "--space", "gr:3,6", "--seed", "7", "--trials", "1"],
    "verify_quad_q6": ["verify", "--lemma", "quad-vanishing", "--space", "quadric:6", "--seed", "3", "--trials", "4"],
    "verify_maxdim_21": ["verify", "--lemma", "max-dim", "--space", "gr:3,6", "--a", "2,1", "--trials", "3", "--seed", "1"],
    "verify_n_classes": ["verify", "--lemma", "n-deg3-classes", "--space", "nplus:5", "--trials", "3", "--seed", "2"],
}


def run(argv):
    argv = [a.replace("{golden}", str(GOLDEN)) for a in argv]
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        try:
            code = main(argv)
        except SystemExit as exc:
            code = exc.code
    return code, out.getvalue(), err.getvalue()


@pytest.mark.criterion_9
@pytest.mark.parametrize("name", sorted(CASES))
def test_golden(name, request):
    code, out, _ = run(CASES[name])
    assert code == 0
    path = GOLDEN / f"{name}.out"
    if request.config.getoption("--update-goldens"):
        path.write_text(out, encoding="utf-8")
    assert path.read_bytes() == out.encode("utf-8")
    # a second invocation is byte-identical
    assert run(CASES[name])[1] == out


@pytest.mark.criterion_9
@pytest.mark.parametrize("name", [n for n in sorted(CASES) if n.startswith("verify")])
def test_thread_count_invariance(name):
    _, one, _ = run(CASES[name] + ["--jobs", "1"])
    _, four, _ = run(CASES[name] + ["--jobs", "4"])
    assert one == four == (GOLDEN / f"{name}.out").read_text(encoding="utf-8")


class TestOutputs:
    def test_examples(self):
        assert run(CASES["product_gr24_2_2"])[1] == "q[2,2]\n"
        assert run(CASES["chern_21_rank3"])[1] == "c1*c2 - c3\n"
        assert run(CASES["giambelli_11"])[1] == "q1^2 - q2\n"
        assert run(CASES["chern_11_rank2"])[1] == "c1^2 - c2\n"
        assert run(CASES["chirality_plus"])[1] == "+1\n"
        assert run(CASES["chirality_minus"])[1] == "-1\n"
        assert "42" in run(CASES["degree_333"])[1]
        assert "50" in run(CASES["dims_222_m5"])[1]

    def test_gr25_json_has_ten_nodes(self):
        doc = json.loads(run(CASES["poset_gr25_json"])[1])
        assert len(doc["nodes"]) == 10
        assert doc["schema_version"] == "1"

    def test_e3_dot(self):
        out = run(CASES["poset_e3_dot_labels"])[1]
        assert out.startswith('graph "e3" {')
        assert "rankdir=LR;" in out
        assert out.count("rank=same") == 17
        assert sum(1 for line in out.splitlines() if "[label=" in line) == 27
        assert "\\n660\"" in out

    def test_quadric7_is_chain(self):
        out = run(CASES["poset_quadric7_text"])[1]
        assert "nodes 8" in out and "edges 7" in out

    def test_verify_report(self):
        code, out, _ = run(CASES["verify_inclusions_gr36"])
        rep = json.loads(out)
        # five ideals against all twenty classes of P(3,6)
        assert code == 0
        assert (rep["passed"], rep["failed"]) == (100, 0)


class TestExitCodes:
    @pytest.mark.parametrize(
        "argv",
        [
            ["poset", "--space", "gr:3,3"],
            ["poset", "--space", "e8"],
            ["poset", "--space", "gr:2,4", "--format", "svg"],
            ["product", "--space", "quadric:5", "--a", "1", "--b", "1"],
            ["product", "--space", "gr:2,4", "--a", "3", "--b", "1"],
            ["product", "--space", "gr:2,4", "--a", "x", "--b", "1"],
            ["pieri", "--space", "gr:2,4", "--a", "1", "--k", "5"],
            ["verify", "--lemma", "nope", "--space", "gr:2,4"],
            ["verify", "--lemma", "duality", "--space", "nplus:5"],
            ["verify", "--lemma", "quad-vanishing", "--space", "quadric:7"],
            ["verify", "--lemma", "duality", "--space", "gr:2,4", "--a", "2"],
            ["chirality", "--matrix", "/nonexistent.json"],
            ["dims", "--shape", "2,1"],
            [],
        ],
    )
    def test_usage_errors(self, argv):
        code, out, _ = run(argv)
        assert code == 2
        assert out == ""

    def test_unsupported_labels(self):
        code, out, err = run(["poset", "--space", "quadric:6", "--labels", "on"])
        assert code == 1
        assert "error" in err

    def test_not_isotropic(self):
        assert run(["chirality", "--matrix", str(GOLDEN / "not_isotropic.json")])[0] == 1


class TestDocument:
    @pytest.mark.parametrize("space", ["gr:3,6", "quadric:8", "nplus:5", "lag:4", "e3"])
    def test_json_roundtrip(self, space):
        p = build_poset(HssSpace.parse(space))
        if not space.startswith("quadric"):
            p = assign_dim_labels(p)
        doc = PosetDocument.from_poset(p)
        text = doc.to_json()
        back = PosetDocument.from_json(text)
        assert back == doc
        assert back.to_json() == text
        assert render_dot(back, True) == render_dot(doc, True)
        assert render_text(back) == render_text(doc)

    def test_sorted(self):
        doc = PosetDocument.from_poset(build_poset(HssSpace.parse("gr:3,6")))
        assert list(doc.nodes) == sorted(doc.nodes, key=lambda n: (n.degree, n.id))
        assert list(doc.edges) == sorted(doc.edges)

    def test_rejects_bad_documents(self):
        good = json.loads(PosetDocument.from_poset(build_poset(HssSpace.parse("gr:2,4"))).to_json())
        bad_version = dict(good, schema_version="2")
        with pytest.raises(ValueError):
            PosetDocument.from_json(json.dumps(bad_version))
        dup = dict(good, nodes=good["nodes"] + good["nodes"][:1])
        with pytest.raises(ValueError):
            PosetDocument.from_json(json.dumps(dup))
        dangling = dict(good, edges=good["edges"] + [["()", "(9)"]])
        with pytest.raises(ValueError):
            PosetDocument.from_json(json.dumps(dangling))
