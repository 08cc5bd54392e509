from __future__ import annotations

import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fplab.families import FamilyInstance, FamilyKind
from fplab.tables import (
    DAT_HEADER,
    RunManifest,
    fmt,
    key_value_text,
    parse_key_value,
    parse_sweep_table,
    sweep_table,
    transitions_text,
)
from fplab.transitions import CROSSING, SweepRecord, TransitionReport

K = FamilyKind


def test_fmt_fifteen_digits():
    assert fmt(1 / 3) == "0.333333333333333"
    assert fmt(8.0) == "8"
    assert fmt(math.nan) == "nan"
    assert fmt(None) == "nan"
    assert fmt(True) == "true"
    assert fmt(7) == "7"
    assert fmt(1.23e-20) == "1.23e-20"


def _records():
    return [
        SweepRecord(1.75, 8.0, FamilyInstance(K.PERP, 5)),
        SweepRecord(1.78, 7.99, FamilyInstance(K.Y, 5, 0.51), alpha=0.51, dfdp=-1.1),
        SweepRecord(1.9, 7.72, FamilyInstance(K.Z, 5, 0.9), alpha=0.9, dfdp=-3.0),
        SweepRecord(1.95, math.nan, FamilyInstance(K.CUSTOM, 5), custom=True, failed=True),
        SweepRecord(2.1, 7.2, FamilyInstance(K.HARMONIC, 5)),
    ]


def test_dat_header_and_columns():
    text = sweep_table(_records(), "dat")
    lines = text.splitlines()
    assert lines[0] == "$p$ $f_{min}$ $c$ $d$ der family"
    assert lines[0].split() == DAT_HEADER
    assert lines[1].split() == ["1.75", "8", "nan", "nan", "nan", "perp"]
    assert lines[2].split()[2:4] == ["0.51", "nan"]
    assert lines[3].split()[2:4] == ["nan", "0.9"]
    assert lines[4].split()[-1] == "failed"
    assert all(len(ln.split()) == 6 for ln in lines)


@pytest.mark.parametrize("fmt_name", ["dat", "csv"])
def test_sweep_round_trip(fmt_name):
    text = sweep_table(_records(), fmt_name)
    back = parse_sweep_table(text, 5)
    assert sweep_table(back, fmt_name) == text
    for a, b in zip(_records(), back):
        assert a.failed == b.failed and a.custom == b.custom
        assert (a.family.kind is b.family.kind) or a.failed


def test_json_table_and_bad_format():
    assert '"f_min": "7.72"' in sweep_table(_records(), "json")
    with pytest.raises(ValueError):
        sweep_table(_records(), "xml")
    with pytest.raises(ValueError):
        parse_sweep_table("a b c\n", 5)


@given(
    st.lists(
        st.tuples(st.floats(0.1, 10), st.floats(0, 100), st.one_of(st.none(), st.floats(-50, 50))),
        min_size=1,
        max_size=10,
    )
)
def test_round_trip_property(rows):
    recs = [SweepRecord(p, f, FamilyInstance(K.PERP, 5), dfdp=d) for p, f, d in rows]
    text = sweep_table(recs)
    back = parse_sweep_table(text, 5)
    assert sweep_table(back) == text
    for a, b in zip(recs, back):
        assert float(fmt(a.p)) == b.p and float(fmt(a.f_min)) == b.f_min


def test_key_value_round_trip():
    items = {"value": 8.0, "angles": [0.0, 1.5707963267948966], "family": "perp", "converged": True}
    text = key_value_text(items)
    back = parse_key_value(text)
    assert back == {"value": "8", "angles": "0,1.5707963267949", "family": "perp", "converged": "true"}


def test_transitions_text():
    reps = [TransitionReport(1.7776625188704, K.PERP, K.Y, CROSSING, 1e-12)]
    text = transitions_text(reps)
    assert text.startswith("count = 1\n[transition 1]\n")
    assert "p_star = 1.7776625188704" in text
    assert '"left_family": "perp"' in transitions_text(reps, "json")


def test_manifest_fields(tmp_path):
    m = RunManifest("minimize", {"n": 5, "p": 1.0, "only": None}, 7, "0.1.0")
    out = tmp_path / "r.txt"
    path = m.write_beside(out)
    assert path.name == "r.txt.manifest"
    kv = parse_key_value(path.read_text())
    assert kv["command"] == "minimize" and kv["master_seed"] == "7" and kv["tool_version"] == "0.1.0"
    assert kv["param.n"] == "5" and kv["param.only"] == "None"
    assert set(RunManifest.TIMING_KEYS) <= set(kv)
