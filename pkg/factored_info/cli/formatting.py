"""Table rendering of command reports with pandas"""

import json
from typing import Any, Dict, List, Sequence

import pandas as pd


def _cell(value: Any) -> Any:
    if isinstance(value, (list, tuple, dict)):
        return json.dumps(value)
    return value


def to_frame(rows: Sequence[Dict[str, Any]]) -> pd.DataFrame:
    """DataFrame with nested values flattened to JSON text"""
    return pd.DataFrame([{k: _cell(v) for k, v in row.items()} for row in rows])


def render_table(rows: Sequence[Dict[str, Any]], title: str = "") -> str:
    if not rows:
        return f"{title}\n(empty)" if title else "(empty)"
    with pd.option_context("display.max_colwidth", 120, "display.width", 200):
        body = to_frame(rows).to_string(index=False)
    return f"{title}\n{body}" if title else body


def render_key_values(payload: Dict[str, Any], title: str = "") -> str:
    """Two-column table of the scalar fields of a report"""
    rows: List[Dict[str, Any]] = [
        {"field": key, "value": value} for key, value in payload.items()
        if not isinstance(value, (list, dict))
    ]
    return render_table(rows, title)
