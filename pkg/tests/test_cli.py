import json
import pathlib
import subprocess
import sys

import pytest
from hypothesis import given
from hypothesis import strategies as st

from finmodel import cli

WS = pathlib.Path(__file__).resolve().parent.parent / "workspaces"
SAMPLES = sorted(WS.glob("*.json"))


def _doc(instance="sset:2", objects=None, morphisms=None, commands=None):
    return json.dumps({"instance": instance, "objects": objects or {}, "morphisms": morphisms or {},
                       "commands": commands or []})


def _run(text, *flags):
    p = subprocess.run([sys.executable, "-m", "finmodel", "-", *flags], input=text,
                       capture_output=True, text=True)
    return p.returncode, p.stdout, p.stderr


def test_minimal_document_parses():
    doc = cli.parse(_doc(objects={"pt": {"vertices": 1}}))
    assert doc.instance == "sset:2" and list(doc.objects) == ["pt"]


def test_syntax_error():
    with pytest.raises(cli.SyntaxProblem):
        cli.parse("{not json")


def test_unresolved_morphism():
    text = _doc(objects={"pt": {"vertices": 1}}, commands=[{"op": "is-weq", "args": ["f"]}])
    with pytest.raises(cli.UnresolvedName):
        cli.parse(text)


def test_type_mismatch():
    text = _doc(objects={"pt": {"vertices": 1}, "e": {"vertices": 0}},
                morphisms={"f": {"source": "pt", "target": "e", "images": [[0], [0]]}})
    with pytest.raises(cli.TypeMismatch):
        cli.parse(text)


def test_chain_invariant_violation_names_degree():
    text = _doc("chain:2", objects={"A": {"dims": {"0": 1, "1": 1, "2": 1}, "d": {"1": [[1]], "2": [[1]]}}})
    with pytest.raises(cli.InvariantViolation) as e:
        cli.parse(text)
    assert "degree" in str(e.value)


def test_unknown_op_is_rejected():
    with pytest.raises(cli.WorkspaceError):
        cli.parse(_doc(commands=[{"op": "explode"}]))


def test_is_weq_in_sets():
    text = _doc("sset:1", objects={"a": {"vertices": 2}, "b": {"vertices": 3}},
                morphisms={"f": {"source": "a", "target": "b", "images": [[0, 2]]}},
                commands=[{"op": "is-weq", "args": ["f"]}])
    code, out, _ = _run(text)
    assert code == 0 and out.splitlines()[-1].strip() == "true"


def test_classify_keyed_by_components():
    code, out, _ = _run(_doc(commands=[{"op": "classify", "args": ["corpus"]}]))
    assert code == 0
    keys = [line.split(":")[0].strip() for line in out.splitlines() if line.strip().startswith("pi0=")]
    assert keys == ["pi0=0", "pi0=1", "pi0=2", "pi0=3"]


def test_verify_truncation_passes():
    code, out, _ = _run((WS / "chain_truncation.json").read_text())
    assert code == 0
    assert "  pass" in out.splitlines()


def test_exit_codes():
    assert _run("{")[0] == 2
    bad_cmd = _doc(objects={"e": {"vertices": 2, "edges": [[0, 1]]}},
                   commands=[{"op": "ho-hom", "args": ["e", "e"]}, {"op": "factorize", "args": ["e"]}])
    code, out, _ = _run(bad_cmd)
    assert code == 1 and "error" in out


def test_budget_flag_reports_guard():
    text = _doc(objects={"x": {"vertices": 3, "edges": [[0, 1], [1, 2], [2, 0]]}},
                commands=[{"op": "ho-hom", "args": ["x", "x"]}])
    code, out, _ = _run(text, "--budget", "5")
    assert code == 1 and "budget" in out.lower()


@pytest.mark.parametrize("path", SAMPLES, ids=[p.stem for p in SAMPLES])
def test_reports_are_deterministic(path):
    a = _run(path.read_text())
    b = _run(path.read_text())
    assert a == b and a[0] == 0


@pytest.mark.parametrize("path", SAMPLES, ids=[p.stem for p in SAMPLES])
def test_roundtrip(path):
    doc = cli.parse(path.read_text())
    again = cli.parse(cli.serialize(doc))
    assert cli.serialize(again) == cli.serialize(doc)
    assert again.commands == doc.commands


edge = st.tuples(st.integers(0, 2), st.integers(0, 2))


@given(st.integers(1, 3), st.lists(edge, max_size=3))
def test_roundtrip_generated(nv, edges):
    edges = [[s % nv, t % nv] for s, t in edges]
    text = _doc(objects={"g": {"vertices": nv, "edges": edges}, "pt": {"vertices": 1}},
                morphisms={"t": {"source": "g", "target": "pt",
                                 "images": [[0] * nv, [0] * len(edges)]}},
                commands=[{"op": "is-weq", "args": ["t"]}])
    doc = cli.parse(text)
    assert cli.serialize(cli.parse(cli.serialize(doc))) == cli.serialize(doc)
