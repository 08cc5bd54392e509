"""
Plot-ready tables, key-value reports and run manifests.

Numbers are written with 15 significant digits in a locale-independent
format. Sweep tables use the column names ``$p$ $f_{min}$ $c$ $d$ der``
followed by a ``family`` column, so pgfplots/gnuplot scripts can read them
directly.
"""

from __future__ import annotations

import csv
import io
import json
import math
import time
from datetime import datetime, timezone
from pathlib import Path

from .families import FamilyInstance, FamilyKind
from .transitions import SweepRecord, TransitionReport

DAT_HEADER = ["$p$", "$f_{min}$", "$c$", "$d$", "der", "family"]
CSV_HEADER = ["p", "f_min", "c", "d", "der", "family"]
FAILED = "failed"


def fmt(x) -> str:
    if x is None:
        return "nan"
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    x = float(x)
    if math.isnan(x):
        return "nan"
    return format(x, ".15g")


def _num(s: str) -> float:
    return float(s)


def _row(r: SweepRecord) -> list[str]:
    tag = FAILED if r.failed else r.family.kind.value
    return [fmt(r.p), fmt(r.f_min), fmt(r.y_alpha), fmt(r.z_alpha), fmt(r.dfdp), tag]


def sweep_table(records, fmt_name: str = "dat", n: int | None = None) -> str:
    """Render sweep records as ``dat`` (whitespace), ``csv`` or ``json`` text."""
    if fmt_name == "dat":
        lines = [" ".join(DAT_HEADER)] + [" ".join(_row(r)) for r in records]
        return "\n".join(lines) + "\n"
    if fmt_name == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        w.writerows(_row(r) for r in records)
        return buf.getvalue()
    if fmt_name == "json":
        rows = [dict(zip(CSV_HEADER, _row(r))) for r in records]
        return json.dumps(rows, indent=1) + "\n"
    raise ValueError(f"unknown format {fmt_name!r}")


def parse_sweep_table(text: str, n: int) -> list[SweepRecord]:
    """Inverse of :func:`sweep_table` for ``dat`` and ``csv`` text."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        return []
    if lines[0].split() == DAT_HEADER:
        rows = [ln.split() for ln in lines[1:]]
    elif lines[0].split(",") == CSV_HEADER:
        rows = list(csv.reader(lines[1:]))
    else:
        raise ValueError("unrecognized sweep table header")
    out = []
    for p, f, c, d, der, tag in rows:
        failed = tag == FAILED
        kind = FamilyKind.CUSTOM if failed else FamilyKind(tag)
        alpha = _num(c) if kind is FamilyKind.Y else _num(d) if kind is FamilyKind.Z else None
        fam = FamilyInstance(kind, n, alpha)
        dfdp = None if der == "nan" else _num(der)
        out.append(
            SweepRecord(_num(p), _num(f), fam, alpha, dfdp, custom=kind is FamilyKind.CUSTOM, failed=failed)
        )
    return out


def key_value_text(items: dict) -> str:
    lines = []
    for k, v in items.items():
        if isinstance(v, (list, tuple)):
            v = ",".join(fmt(x) for x in v)
        elif not isinstance(v, str):
            v = fmt(v)
        lines.append(f"{k} = {v}")
    return "\n".join(lines) + "\n"


def parse_key_value(text: str) -> dict:
    out = {}
    for ln in text.splitlines():
        if "=" in ln:
            k, v = ln.split("=", 1)
            out[k.strip()] = v.strip()
    return out


def transition_items(rep: TransitionReport) -> dict:
    return {
        "p_star": rep.p_star,
        "left_family": rep.left_family.value,
        "right_family": rep.right_family.value,
        "method": rep.method,
        "precision": rep.precision,
    }


def transitions_text(reports, fmt_name: str = "kv") -> str:
    if fmt_name == "json":
        return json.dumps([{k: (fmt(v) if isinstance(v, float) else v) for k, v in transition_items(r).items()} for r in reports], indent=1) + "\n"
    blocks = [f"[transition {i}]\n" + key_value_text(transition_items(r)) for i, r in enumerate(reports, 1)]
    return f"count = {len(reports)}\n" + "".join(blocks)


def write_text(path, text: str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8", newline="\n")
    return path


class RunManifest:
    """Command name, parameters, seed and version recorded next to an output file."""

    TIMING_KEYS = ("started_utc", "duration_s")

    def __init__(self, command: str, params: dict, master_seed: int, version: str, t0: float | None = None):
        self.command = command
        self.params = dict(params)
        self.master_seed = master_seed
        self.version = version
        self._t0 = time.perf_counter() if t0 is None else t0
        self.started = datetime.now(timezone.utc).isoformat(timespec="seconds")

    def text(self) -> str:
        items = {"command": self.command, "tool_version": self.version, "master_seed": int(self.master_seed)}
        for k in sorted(self.params):
            v = self.params[k]
            items[f"param.{k}"] = v if isinstance(v, (str, int, float, list, tuple)) and v is not None else str(v)
        items["started_utc"] = self.started
        items["duration_s"] = f"{time.perf_counter() - self._t0:.3f}"
        return key_value_text(items)

    def write_beside(self, out_path) -> Path:
        out_path = Path(out_path)
        return write_text(out_path.with_name(out_path.name + ".manifest"), self.text())
