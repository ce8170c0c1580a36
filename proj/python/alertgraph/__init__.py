"""Python access to the alertgraph core.

Documents come back as plain dicts; the C++ side serializes them as JSON.
"""

import json

from ._alertgraph import (  # noqa: F401
    AlertGraphError,
    ConfigError,
    EmptyNodeSetError,
    FormatError,
    NotFound,
    NotReady,
    RecordError,
    ValidationError,
    __version__,
    classify_urgency as _classify_urgency,
    elapsed_label,
    map_signature,
    normalized_prevalence,
    resolve_service,
    urgency_score as _urgency_score,
    analyze_json as _analyze_json,
    _Service,
)


def _config_arg(config):
    if config is None:
        return ""
    return config if isinstance(config, str) else json.dumps(config)


def urgency_score(micro, node_micros, config=None):
    return _urgency_score(micro, list(node_micros), _config_arg(config))


def classify_urgency(score, config=None):
    return _classify_urgency(score, _config_arg(config))


def analyze(raw, gap_seconds=300.0, merge_min_count=5, strict=False):
    """Runs the full pipeline in memory and returns counts, graph and matrix."""
    if isinstance(raw, bytes):
        raw = raw.decode("utf-8")
    return json.loads(_analyze_json(raw, gap_seconds, merge_min_count, strict))


class Service:
    """Store-backed service, the same operations the HTTP API exposes."""

    def __init__(self, store_path):
        self._impl = _Service(str(store_path))

    def upload(self, raw, filename="upload.jsonl"):
        if isinstance(raw, bytes):
            raw = raw.decode("utf-8")
        return json.loads(self._impl.upload(raw, filename))

    def runs(self):
        return json.loads(self._impl.runs())

    def graph(self, run_id, layout="directed", **filters):
        return json.loads(self._impl.graph(run_id, layout, filters))

    def export(self, run_id, format="json", **filters):
        return self._impl.export(run_id, format, filters)

    def matrix(self, run_id, **filters):
        return json.loads(self._impl.matrix(run_id, filters))

    def timeline(self, run_id, perspective="victim"):
        return json.loads(self._impl.timeline(run_id, perspective))

    def config(self):
        return json.loads(self._impl.config())

    def put_config(self, document):
        return json.loads(self._impl.put_config(_config_arg(document)))
