"""JSON helpers: fixed field order, numpy-to-python coercion, stable dumps."""

import json

import numpy as np


def jsonable(obj):
    """Recursively convert numpy containers/scalars for json serialization,
    preserving insertion order of dicts."""
    if isinstance(obj, dict):
        return {k: jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    return obj


def dumps(obj):
    """Deterministic JSON text: fixed field order, 2-space indent, UTF-8-safe."""
    return json.dumps(jsonable(obj), indent=2, allow_nan=True)
