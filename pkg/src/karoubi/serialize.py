"""JSON encoding of package values.

Concrete types implement ``to_json()``; :func:`to_jsonable` walks containers
and falls back to ``repr`` so that any counterexample can be written out.
"""
from __future__ import annotations

import dataclasses
import json
from fractions import Fraction


def to_jsonable(x):
    if x is None or isinstance(x, (bool, int, float, str)):
        return x
    if isinstance(x, Fraction):
        return str(x)
    if hasattr(x, "to_json"):
        return x.to_json()
    if isinstance(x, dict):
        return {str(k): to_jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [to_jsonable(v) for v in x]
    if dataclasses.is_dataclass(x) and not isinstance(x, type):
        return {f.name: to_jsonable(getattr(x, f.name)) for f in dataclasses.fields(x)}
    return repr(x)


def dumps(x, **kw) -> str:
    kw.setdefault("sort_keys", True)
    return json.dumps(to_jsonable(x), **kw)
