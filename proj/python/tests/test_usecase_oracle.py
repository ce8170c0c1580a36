"""Recomputes the use-case matrix from the generator's intended labels.

The oracle never looks at signatures or the C++ mapping: it rebuilds
episodes, objective paths and the node set straight from the stage labels
and compares ranking and scores with the library.
"""

import json

import pytest

import alertgraph
import make_usecase_fixture as gen
from conftest import ROOT

WEIGHTS = {"Low": 0.25, "Medium": 0.5, "High": 1.0}
HIGH = {"Arbitrary Code Execution", "Root Privilege Escalation", "Network DoS", "Endpoint DoS",
        "Resource Hijacking", "Data Manipulation", "Data Distortion", "Data Destruction", "Data Exfiltration"}
MEDIUM = {"Brute Force Credentials", "Public App Exploitation", "Data Delivery", "User Privilege Escalation",
          "Account Manipulation", "C2 Communication"}


def level(micro):
    return "High" if micro in HIGH else "Medium" if micro in MEDIUM else "Low"


def oracle_nodes(victim=None):
    nodes = set()
    for attacker, vic, _, steps in gen.SEQUENCES:
        if victim and vic != victim:
            continue
        for i, (micro, service) in enumerate(steps):
            if level(micro) == "High":
                nodes.update(steps[: i + 1])
    return nodes


def oracle_ranking(victim=None):
    nodes = oracle_nodes(victim)
    counts = {}
    for micro, _ in nodes:
        counts[micro] = counts.get(micro, 0) + 1
    scores = {m: WEIGHTS[level(m)] * c / len(nodes) for m, c in counts.items()}
    return sorted(scores.items(), key=lambda kv: (-kv[1], kv[0]))


def library_ranking(doc):
    cells = [c for col in doc["columns"] for c in col["cells"] if c["node_count"] > 0]
    cells.sort(key=lambda c: (-c["urgency_score"], c["micro"]))
    return [(c["micro"], c["urgency_score"]) for c in cells]


@pytest.fixture(scope="module")
def run(tmp_path_factory):
    svc = alertgraph.Service(tmp_path_factory.mktemp("oracle") / "store.db")
    info = svc.upload((ROOT / "data" / "usecase_alerts.jsonl").read_bytes(), "usecase.jsonl")
    return svc, info["run_id"]


def test_bundled_fixture_matches_generator(tmp_path):
    out = tmp_path / "regen.jsonl"
    records, _ = gen.generate()
    out.write_text("".join(json.dumps(r, separators=(",", ":")) + "\n" for r in records))
    assert out.read_bytes() == (ROOT / "data" / "usecase_alerts.jsonl").read_bytes()


def test_no_frequent_suffix_so_all_contexts_are_unspecified():
    last_tokens = {}
    for _, _, _, steps in gen.SEQUENCES:
        tokens = [s for s in steps if level(s[0]) != "Low"]
        if tokens:
            last_tokens[tokens[-1]] = last_tokens.get(tokens[-1], 0) + 1
    assert max(last_tokens.values()) < 5


@pytest.mark.parametrize("victim", [None, "10.0.0.20"])
def test_matrix_ranking_matches_oracle(run, victim):
    svc, run_id = run
    doc = svc.matrix(run_id, victim=victim)
    expected = oracle_ranking(victim)
    got = library_ranking(doc)
    assert [m for m, _ in got] == [m for m, _ in expected]
    for (_, a), (_, b) in zip(got, expected):
        assert a == pytest.approx(b, abs=1e-12)


def test_frozen_victim_ranking_agrees_with_oracle():
    frozen = ["Data Exfiltration", "Data Manipulation", "Root Privilege Escalation", "Service Discovery",
              "Host Discovery"]
    assert [m for m, _ in oracle_ranking("10.0.0.20")] == frozen


def test_graph_nodes_match_oracle(run):
    svc, run_id = run
    for victim in (None, "10.0.0.20", "10.0.0.22"):
        doc = svc.graph(run_id, victim=victim)
        keys = {n["key"] for n in doc["nodes"] if not n["is_root"]}
        assert keys == {f"{m}|{s}|0" for m, s in oracle_nodes(victim)}
