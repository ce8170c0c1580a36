#!/usr/bin/env python3
"""Writes data/usecase_alerts.jsonl, the bundled use-case scenario.

Three attackers reach the database host 10.0.0.20; one of them also works
through 10.0.0.22. The remaining victims only see denial of service, brute
force and database tampering. Output is deterministic.

Usage: make_usecase_fixture.py [output] [--labels labels.json]
"""

import argparse
import json
import random
from datetime import datetime, timedelta, timezone

PORTS = {
    "http": 80,
    "mongodb": 27017,
    "etlservicemgr": 5026,
    "ssh": 22,
    "domain": 53,
    "mysql": 3306,
    "microsoft-ds": 445,
}

# micro -> (category, [signatures]); the bundled mapping resolves each of
# these to the micro named here.
STAGES = {
    "Host Discovery": ("Misc activity", ["GPL ICMP PING NMAP", "ET ICMP PING Nmap host probe"]),
    "Service Discovery": (
        "Detection of a Network Scan",
        ["ET SCAN Nmap Scripting Engine User-Agent Detected", "ET SCAN Potential SSH Scan"],
    ),
    "Root Privilege Escalation": (
        "Attempted Administrator Privilege Gain",
        ["GPL EXPLOIT CodeRed v2 root.exe access", "ET WEB_SERVER ColdFusion administrator access"],
    ),
    "Data Manipulation": (
        "Web Application Attack",
        ["ET WEB_SERVER Possible SQL Injection UPDATE SET in URI", "GPL SQL INSERT INTO mysql.user attempt"],
    ),
    "Data Exfiltration": (
        "Potentially Bad Traffic",
        ["ET ATTACK_RESPONSE Possible /etc/passwd via HTTP", "ET EXFIL Large outbound transfer",
         "ETPRO ATTACK_RESPONSE MongoDB Database numeration Request"],
    ),
    "Network DoS": ("Attempted Denial of Service", ["ET DOS Possible SYN Flood", "ET DOS DNS Amplification Flood"]),
    "Brute Force Credentials": ("Suspicious Login Attempt", ["ET POLICY SSH Brute Force Attempt"]),
    "Resource Hijacking": ("Crypto Currency Mining Activity Detected", ["ET COINMINER CoinHive In-Browser Miner"]),
    "Arbitrary Code Execution": ("Executable code was detected", ["GPL SHELLCODE x86 NOOP"]),
    "Information Discovery": ("Not Suspicious Traffic", ["ET INFO Session Cookie Observed"]),
}

# (attacker, victim, first episode offset in minutes, [(micro, service)]);
# a sequence listed in LAST_ALERT is shifted so its final alert lands there.
SEQUENCES = [
    ("10.0.254.202", "10.0.0.20", 0, [
        ("Service Discovery", "http"), ("Root Privilege Escalation", "http"), ("Data Manipulation", "http"),
        ("Data Exfiltration", "http"), ("Data Exfiltration", "mongodb"), ("Information Discovery", "http"),
    ]),
    ("10.0.254.203", "10.0.0.20", 25, [
        ("Host Discovery", "http"), ("Root Privilege Escalation", "http"), ("Data Manipulation", "mysql"),
        ("Data Exfiltration", "http"),
    ]),
    ("10.0.254.204", "10.0.0.20", 50, [
        ("Service Discovery", "etlservicemgr"), ("Root Privilege Escalation", "http"),
        ("Data Exfiltration", "etlservicemgr"),
    ]),
    ("10.0.254.202", "10.0.0.22", 5, [
        ("Host Discovery", "http"), ("Root Privilege Escalation", "http"), ("Resource Hijacking", "http"),
        ("Data Exfiltration", "ssh"), ("Resource Hijacking", "http"), ("Arbitrary Code Execution", "http"),
        ("Resource Hijacking", "http"), ("Data Manipulation", "http"),
    ]),
    ("10.0.254.205", "10.0.0.21", 12, [("Network DoS", "http")]),
    ("10.0.254.206", "10.0.0.21", 30, [("Host Discovery", "domain"), ("Network DoS", "domain")]),
    ("10.0.254.207", "10.0.0.23", 18, [
        ("Service Discovery", "ssh"), ("Brute Force Credentials", "ssh"), ("Network DoS", "http"),
    ]),
    ("10.0.254.208", "10.0.0.24", 40, [("Data Manipulation", "mysql")]),
    ("10.0.254.209", "10.0.0.24", 44, [("Data Manipulation", "microsoft-ds")]),
]

START = datetime(2018, 11, 3, 0, 0, 0, tzinfo=timezone.utc)
LAST_ALERT = {("10.0.254.202", "10.0.0.22"): datetime(2018, 11, 3, 1, 40, 0, tzinfo=timezone.utc)}
EPISODE_SPACING = timedelta(minutes=12)


def stamp(t):
    return t.strftime("%Y-%m-%dT%H:%M:%S.%f") + "+0000"


def generate():
    rng = random.Random(2018)
    records, labels = [], []
    flow_id = 1000
    for attacker, victim, offset, steps in SEQUENCES:
        seq_records = []
        t0 = START + timedelta(minutes=offset)
        for i, (micro, service) in enumerate(steps):
            category, signatures = STAGES[micro]
            t = t0 + i * EPISODE_SPACING
            count = rng.randint(2, 6)
            for _ in range(count):
                signature = rng.choice(signatures)
                seq_records.append({
                    "timestamp": t,
                    "flow_id": flow_id,
                    "event_type": "alert",
                    "src_ip": attacker,
                    "src_port": rng.randint(32768, 60999),
                    "dest_ip": victim,
                    "dest_port": PORTS[service],
                    "proto": "TCP",
                    "alert": {
                        "action": "allowed",
                        "gid": 1,
                        "signature_id": 2000000 + (sum(map(ord, signature)) % 100000),
                        "rev": 1,
                        "signature": signature,
                        "category": category,
                        "severity": 2,
                    },
                })
                labels.append({"attacker": attacker, "victim": victim, "micro": micro, "service": service})
                flow_id += 1
                last = t
                t += timedelta(seconds=rng.randint(5, 40))
            seq_records.append({
                "timestamp": t,
                "flow_id": flow_id,
                "event_type": "flow",
                "src_ip": attacker,
                "dest_ip": victim,
                "dest_port": PORTS[service],
            })
            flow_id += 1
        shift = LAST_ALERT[(attacker, victim)] - last if (attacker, victim) in LAST_ALERT else timedelta(0)
        for r in seq_records:
            r["timestamp"] = stamp(r["timestamp"] + shift)
        records.extend(seq_records)
    order = sorted(range(len(records)), key=lambda i: (records[i]["timestamp"], i))
    return [records[i] for i in order], labels


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("output", nargs="?", default="data/usecase_alerts.jsonl")
    ap.add_argument("--labels")
    args = ap.parse_args()
    records, labels = generate()
    with open(args.output, "w") as f:
        for r in records:
            f.write(json.dumps(r, separators=(",", ":")) + "\n")
    if args.labels:
        with open(args.labels, "w") as f:
            json.dump({"sequences": SEQUENCES, "alerts": labels}, f, indent=1)


if __name__ == "__main__":
    main()
