import json
import math

import pytest

import alertgraph
from conftest import ROOT

FIXTURE = ROOT / "data" / "usecase_alerts.jsonl"


def record(ts, src, dst, port, signature, category="", sid=1):
    return json.dumps({
        "timestamp": ts, "event_type": "alert", "src_ip": src, "dest_ip": dst, "dest_port": port,
        "alert": {"signature": signature, "signature_id": sid, "category": category},
    })


def test_version():
    assert alertgraph.__version__ == "0.3.0"


def test_elapsed_label():
    assert alertgraph.elapsed_label(3661) == "01:01:01"
    assert alertgraph.elapsed_label(59.9) == "00:00:59"
    with pytest.raises(alertgraph.ValidationError):
        alertgraph.elapsed_label(-1)


def test_resolve_service():
    assert alertgraph.resolve_service(80) == "http"
    assert alertgraph.resolve_service(5026) == "etlservicemgr"
    assert alertgraph.resolve_service(61000) == "port-61000"
    with pytest.raises(alertgraph.ValidationError):
        alertgraph.resolve_service(70000)


def test_map_signature():
    assert alertgraph.map_signature("GPL EXPLOIT CodeRed v2 root.exe access") == (
        "Root Privilege Escalation", "Privilege Escalation", "High")
    assert alertgraph.map_signature("nothing we know") == ("Unknown", "Unknown", "Low")


def test_urgency_functions():
    assert alertgraph.normalized_prevalence(
        ["Host Discovery", "Host Discovery", "Network DoS", "Data Exfiltration"], "Host Discovery") == 0.5
    assert alertgraph.urgency_score("Data Exfiltration", ["Data Exfiltration", "Network DoS"]) == 0.5
    raised = {"severity_levels": {"Host Discovery": "Medium"}}
    assert alertgraph.urgency_score("Host Discovery", ["Host Discovery"], raised) == 0.5
    assert alertgraph.classify_urgency(0.05) == "Major"
    assert alertgraph.classify_urgency(1.0) == "Critical"
    with pytest.raises(alertgraph.EmptyNodeSetError):
        alertgraph.normalized_prevalence([], "Host Discovery")
    with pytest.raises(alertgraph.ConfigError):
        alertgraph.classify_urgency(0.1, {"urgency_ranges": {"minor": [0, 0.5], "major": [0.4, 0.8],
                                                             "critical": [0.8, 1]}})


def test_analyze_in_memory():
    raw = "\n".join([
        record("2018-11-03T00:00:00Z", "10.0.254.202", "10.0.0.20", 80, "GPL ICMP PING NMAP"),
        record("2018-11-03T00:20:00Z", "10.0.254.202", "10.0.0.20", 80, "GPL EXPLOIT CodeRed v2 root.exe access"),
        "{truncated",
    ])
    doc = alertgraph.analyze(raw)
    assert doc["alerts"] == 2 and doc["skipped"] == 1 and doc["episodes"] == 2
    assert doc["objective_graphs"] == 1
    keys = [n["key"] for n in doc["graph"]["nodes"]]
    assert "Root Privilege Escalation|http|0" in keys and "root" in keys
    with pytest.raises(alertgraph.RecordError):
        alertgraph.analyze(raw, strict=True)


def test_service_round_trip(tmp_path):
    svc = alertgraph.Service(tmp_path / "store.db")
    data = FIXTURE.read_bytes()
    first = svc.upload(data, "usecase.jsonl")
    again = svc.upload(data, "usecase.jsonl")
    assert first["run_id"] == again["run_id"] and again["existing"]
    run = first["run_id"]

    matrix = svc.matrix(run, victim="10.0.0.20")
    cells = [c for col in matrix["columns"] for c in col["cells"]]
    top = max(cells, key=lambda c: c["urgency_score"])
    assert top["micro"] == "Data Exfiltration"
    assert math.isclose(sum(c["node_count"] for c in cells), 9)

    graph = svc.graph(run, layout="hubsize", micro="Data Exfiltration", service="http")
    assert all("level" in n for n in graph["nodes"])
    assert svc.export(run, "dot").startswith("digraph")

    lanes = svc.timeline(run, "victim")["lanes"]
    assert "10.0.0.22" in [lane["lane"] for lane in lanes]

    cfg = svc.put_config({"severity_levels": {"Host Discovery": "Medium"}})
    assert cfg["severity_levels"]["Host Discovery"] == "Medium"
    with pytest.raises(alertgraph.ConfigError):
        svc.put_config({"severity_weights": {"High": 2}})
    assert svc.config() == cfg
    with pytest.raises(alertgraph.NotFound):
        svc.matrix(999)
