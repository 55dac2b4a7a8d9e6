import csv
import io
import json
import subprocess
import sys

import pytest

from orbitbound.cli import RunReport, main, parse_m_range, UsageError


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    return code, json.loads(out) if out else None


def counts(report):
    return [int(r["orbit_count"]) for r in report["rows"]]


def test_count_graphs_on_four_vertices(capsys):
    code, rep = run_json(capsys, "count", "S:4^2", "--m", "0..6")
    assert code == 0
    assert counts(rep) == [1, 1, 2, 3, 2, 1, 1]


def test_count_affine_single(capsys):
    code, rep = run_json(capsys, "count", "AGL:2,2", "--m", "2", "--kind", "subsets")
    assert code == 0 and counts(rep) == [1]


def test_count_multisets(capsys):
    code, rep = run_json(capsys, "count", "S:3", "--m", "2", "--kind", "multisets")
    assert code == 0 and counts(rep) == [2]


def test_count_with_oracle(capsys):
    code, rep = run_json(capsys, "count", "D:7", "--m", "0..7", "--oracle")
    assert code == 0
    assert all(r["oracle"]["agree"] for r in rep["rows"])
    assert rep["options"]["oracle"] is True


def test_big_integers_are_strings(capsys):
    _, rep = run_json(capsys, "count", "S:25", "--m", "2")
    assert rep["group_order"] == "15511210043330985984000000"
    assert isinstance(rep["rows"][0]["orbit_count"], str)


def test_bounds_pair_action_group_order(capsys):
    code, rep = run_json(capsys, "bounds", "S:5^2", "--m", "1..9", "--thm", "4.1")
    assert code == 0
    for row in rep["rows"]:
        assert list(row["bounds"]) == ["delta.group_order"]
        assert row["bounds"]["delta.group_order"]["slack"] >= 0
    assert rep["summary"]["pair_chain"]["radii"] == [2]


def test_bounds_affine(capsys):
    code, rep = run_json(capsys, "bounds", "AGL:2,3", "--m", "2..7", "--thm", "5.1")
    assert code == 0 and len(rep["rows"]) == 6
    for row in rep["rows"]:
        b = row["bounds"]
        assert b["delta.affine"]["slack"] >= 0 and b["delta.affine_exact_order"]["slack"] >= 0
        assert b["delta.affine_exact_order"]["ln"] < b["delta.affine"]["ln"]


def test_bounds_spheres(capsys):
    code, rep = run_json(capsys, "bounds", "S:6", "--m", "3", "--spheres")
    assert code == 0
    b = rep["rows"][0]["bounds"]
    assert b["delta.spheres"]["ln"] <= b["delta.group_order"]["ln"]


def test_bounds_chain_flag(capsys):
    code, rep = run_json(capsys, "bounds", "S:5", "--m", "2", "--thm", "4.3", "--chain", "2,3")
    assert code == 0
    assert rep["options"]["chain"] == [2, 3]
    assert set(rep["rows"][0]["bounds"]) == {"delta.chain"}


def test_bounds_out_of_range_rows(capsys):
    code, rep = run_json(capsys, "bounds", "C:5", "--m", "0..5")
    assert code == 0
    notes = [r.get("note") for r in rep["rows"]]
    assert notes[0] == notes[-1] == "out of theorem range"
    assert notes[1:-1] == [None] * 4


def test_bounds_all_default(capsys):
    code, rep = run_json(capsys, "bounds", "S:4^2", "--m", "1..5", "--oracle")
    assert code == 0
    keys = set(rep["rows"][0]["bounds"])
    assert {"delta.group_order", "delta.chain", "delta.spheres", "delta.pair_chain",
            "passive_pairs.support_profile", "carrier.stirling", "per_element.per_element"} <= keys


def test_bounds_affine_refused_for_other_groups(capsys):
    code, out, err = run(capsys, "bounds", "S:4", "--m", "2", "--thm", "5.1")
    assert code == 1 and "affine" in err


@pytest.mark.parametrize("argv,flag", [
    (["certify", "C:8", "--m", "0..8"], None),
    (["certify", "S:5^2", "--m", "0..10"], "symmetric"),
    (["certify", "S:4", "--m", "0..4", "--kind", "multisets"], None),
])
def test_certify_examples(capsys, argv, flag):
    code, rep = run_json(capsys, *argv)
    assert code == 0
    assert rep["summary"]["oracle_all_equal"] is True
    if flag:
        assert rep["summary"][flag] is True
    assert rep["violations"] == []


def test_certify_regular_orbits(capsys):
    code, rep = run_json(capsys, "certify", "C:8", "--m", "0..8")
    certified = [r for r in rep["rows"] if "regular" in r]
    assert len(certified) == 7 and all(r["regular"]["holds"] for r in certified)
    assert rep["summary"]["unimodal"] is True


def test_json_is_deterministic_and_round_trips(capsys):
    argv = ["bounds", "S:4^2", "--m", "1..5", "--format", "json"]
    main(argv)
    first = capsys.readouterr().out
    main(argv)
    second = capsys.readouterr().out
    assert first == second
    report = RunReport.from_json(first)
    assert report.to_json() + "\n" == first
    assert RunReport.from_json(report.to_json()) == report


def test_json_deterministic_across_processes():
    cmd = [sys.executable, "-m", "orbitbound", "count", "S:5^2", "--m", "0..10", "--format", "json"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and b"wall" not in a


def test_csv_one_row_per_m(capsys):
    code, out, _ = run(capsys, "count", "C:6", "--m", "0..6", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and [r["m"] for r in rows] == [str(m) for m in range(7)]
    assert rows[2]["orbit_count"] == "3"


def test_text_has_wall_time(capsys):
    code, out, _ = run(capsys, "count", "C:6", "--m", "2")
    assert code == 0 and "wall time" in out and "orbit_count" in out


@pytest.mark.parametrize("argv", [
    ["count"],
    ["count", "S:4", "--m", "x"],
    ["count", "S:4", "--m", "3..1"],
    ["count", "Q:4", "--m", "1"],
    ["count", "S:4", "--m", "5"],
    ["bounds", "S:4", "--m", "1", "--thm", "9.9"],
    ["bounds", "S:4", "--m", "1", "--chain", "a,b"],
    ["count", "S:4", "--m", "1", "--element-cap", "0"],
    ["count", "AGL:2,6", "--m", "1"],
    ["count", "D:2", "--m", "1"],
])
def test_usage_errors_exit_1(capsys, argv):
    with pytest.raises(SystemExit) as info:
        code = main(argv)
        raise SystemExit(code)
    assert info.value.code == 1


@pytest.mark.parametrize("argv", [
    ["count", "C:30", "--m", "15", "--oracle", "--carrier-cap", "1000"],
    ["count", "S:4", "--m", "9", "--kind", "multisets"],
    ["count", "gens:(0 1);(0 1 2 3 4 5 6 7)", "--m", "1", "--element-cap", "100"],
])
def test_cap_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and "cap" in err


def test_multiset_cap_flag_raises_limit(capsys):
    code, rep = run_json(capsys, "count", "S:3", "--m", "9", "--kind", "multisets", "--multiset-m-cap", "9")
    assert code == 0 and counts(rep) == [12]


def test_env_overrides(capsys, monkeypatch):
    monkeypatch.setenv("ORBITBOUND_CARRIER_CAP", "10")
    code, _, _ = run(capsys, "count", "C:6", "--m", "3", "--oracle")
    assert code == 2
    code, _, _ = run(capsys, "count", "C:6", "--m", "3", "--oracle", "--carrier-cap", "100")
    assert code == 0
    monkeypatch.setenv("ORBITBOUND_FORMAT", "csv")
    code, out, _ = run(capsys, "count", "C:6", "--m", "3")
    assert out.startswith("m,")
    monkeypatch.setenv("ORBITBOUND_ELEMENT_CAP", "oops")
    code, _, _ = run(capsys, "count", "C:6", "--m", "3")
    assert code == 1


def test_threads_flag_accepted(capsys):
    code, _, _ = run(capsys, "count", "C:6", "--m", "3", "--threads", "4")
    assert code == 0


def test_parse_m_range():
    assert parse_m_range("3") == (3, 3)
    assert parse_m_range("0..6") == (0, 6)
    with pytest.raises(UsageError):
        parse_m_range("2..")
