import json
import os
from pathlib import Path

import pytest

import hyperprox

MODELS = Path(os.environ.get("HYPERPROX_MODELS_DIR", Path(__file__).resolve().parents[2] / "models"))

THREE_POINT_OVERLAP = """\
points: [a, b, c]
topology: discrete
subsets:
  A: [a]
  B: [b, c]
proximity:
  kind: overlap
"""


def test_parse_and_classify():
    m = hyperprox.Model.parse(THREE_POINT_OVERLAP)
    assert m.points == 3
    assert m.labels == ["a", "b", "c"]
    assert m.classification() == "ef"
    assert m.is_compatible() and m.is_t1()
    assert all(v["passed"] for v in m.axioms().values())


def test_relations_and_witnesses():
    m = hyperprox.Model.parse(THREE_POINT_OVERLAP)
    assert m.far("A", "B") and not m.near("A", "B")
    assert m.near("B", "{c}")
    holds, witness = m.strongly_far("A", "B")
    assert holds
    (c,) = witness
    # A is far from the complement of C, and C is far from B.
    assert m.subset("A") <= c and not (c & m.subset("B"))
    holds, (e, c) = m.hat_strongly_far("A", "B")
    assert holds and {"a"} <= e and {"b", "c"} <= c


def test_line_gap_model_file():
    m = hyperprox.Model.load(str(MODELS / "line_gap.yaml"))
    assert m.kind == "gap"
    assert m.strongly_far("A", "B")[0]
    assert not m.is_compatible()


def test_compare_discrete_collapse():
    m = hyperprox.Model.parse(THREE_POINT_OVERLAP)
    assert m.compare("far_miss", "vietoris") == "equal"
    assert m.compare("vietoris", "trivial") == "left-strictly-finer"
    assert hyperprox.compare(str(MODELS / "discrete_overlap.yaml"), "vietoris", "fell:all") == "equal"


def test_search_finds_and_replays_witness():
    r = hyperprox.search("basic-not-lodato", max_n=3)
    assert r["status"] == "witness-found"
    assert r["replay"] is True
    witness = hyperprox.Model.parse(r["witness"])
    assert witness.classification() == "basic"
    assert hyperprox.search("sf-not-hat", max_n=3)["witness"] is None


def test_errors_surface_as_exceptions():
    with pytest.raises(hyperprox.Error):
        hyperprox.Model.parse("points: 3\nproximty: {kind: overlap}\n")
    with pytest.raises(hyperprox.Error):
        hyperprox.search("no-such-target")
    with pytest.raises(ValueError):
        hyperprox.Model.parse(THREE_POINT_OVERLAP).near("A", "Z")


def test_cli_round_trip_is_deterministic():
    args = ["--json", "--no-timestamp", "validate", str(MODELS / "discrete_overlap.yaml")]
    first = hyperprox.run_cli(args)
    assert first == hyperprox.run_cli(args)
    code, out, _ = first
    assert code == 0
    assert json.loads(out)["proximity"]["classification"] == "ef"
