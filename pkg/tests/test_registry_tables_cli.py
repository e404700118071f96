"""Registry invariants, suite determinism, table round-trips, and the CLI."""

from fractions import Fraction
import subprocess
import sys

import pytest

from degsimsek.registry import (FIXED_POINTS, REGISTRY, default_grid,
                                random_points, registry_ids, run_suite,
                                suite_failed)
from degsimsek.reports import reports_to_csv, reports_to_json
from degsimsek.tables import (TableUsageError, build_table, parse_csv,
                              parse_json, render_csv, render_json)

CORE_IDS = {"FUNC-EQ", "THM-S1", "EXPL-B", "EXPL-C", "EXPL-D", "REL-S2A",
            "REL-S2STAR", "REC-K", "REC-N", "PHI-EGF", "PHI-LOG", "PHI-REC",
            "PHI-DER", "PHI-AE", "PHI-INT", "PHI-FT", "RED-A0",
            "RED-CLASSICAL"}


# ---------------------------------------------------------------------------
# registry structure
# ---------------------------------------------------------------------------

def test_registry_ids_unique_and_complete():
    ids = registry_ids()
    assert len(ids) == len(set(ids))
    assert CORE_IDS <= set(ids)
    # variants must point at a real core entry
    for entry in REGISTRY:
        if entry.variant_of:
            assert entry.variant_of in CORE_IDS


def test_default_grid_contains_fixed_points():
    grid = default_grid(seed=3, extra=2)
    assert grid[:5] == list(FIXED_POINTS)
    assert len(grid) == 7
    for lam, alpha in grid:
        assert lam not in (0, -1)


def test_random_points_are_seed_stable():
    assert random_points(5, 4) == random_points(5, 4)
    assert random_points(5, 4) != random_points(6, 4)
    for lam, alpha in random_points(0, 50):
        assert lam not in (0, -1)
        assert lam + alpha != -1
        assert abs(lam.numerator) <= 9 and lam.denominator <= 9
        assert abs(alpha.numerator) <= 9 and alpha.denominator <= 9


def test_unknown_filter_id_is_rejected():
    with pytest.raises(KeyError):
        run_suite(["NOT-AN-ID"])


# ---------------------------------------------------------------------------
# suite behaviour
# ---------------------------------------------------------------------------

@pytest.fixture(scope="module")
def suite_reports():
    return run_suite(order=8, seed=0, extra_points=2, workers=1)


def test_suite_has_no_failures(suite_reports):
    assert not suite_failed(suite_reports)
    statuses = {r.status for r in suite_reports}
    assert "fail" not in statuses


def test_suite_report_per_identity_point(suite_reports):
    grid_size = 7
    rational = [e for e in REGISTRY if e.mode == "rational"]
    symbolic = [e for e in REGISTRY if e.mode == "symbolic"]
    assert len(suite_reports) == len(symbolic) + grid_size * len(rational)


def test_suite_expected_discrepancies(suite_reports):
    by_id = {}
    for r in suite_reports:
        by_id.setdefault(r.id, []).append(r)
    # PHI-INT: pass iff alpha = 0, expected-discrepancy otherwise
    for r in by_id["PHI-INT"]:
        expected = "pass" if r.alpha == 0 else "expected-discrepancy"
        assert r.status == expected, (r.lam, r.alpha, r.status)
    for r in by_id["PHI-INT-CORR"]:
        assert r.status == "pass"
    for r in by_id["REL-S2STAR"]:
        assert r.status == "pass"
    for r in by_id["REL-S2STAR-KIDX"] + by_id["REL-S2STAR-ZERO0"]:
        assert r.status == "expected-discrepancy"
    # the duplicated-lambda reading is indistinguishable exactly at lam = 1
    for r in by_id["REL-S2STAR-DUPL"]:
        expected = "pass" if r.lam == 1 else "expected-discrepancy"
        assert r.status == expected
    assert by_id["EXPL-C-PRINTED"][0].status == "expected-discrepancy"
    for rid in CORE_IDS - {"PHI-INT", "PHI-LOG"}:
        for r in by_id[rid]:
            assert r.status == "pass", (rid, r.mismatch)
    for r in by_id["PHI-LOG"]:
        expected = "trivially-true" if r.alpha == 0 else "pass"
        assert r.status == expected


def test_suite_determinism_across_workers(suite_reports):
    again = run_suite(order=8, seed=0, extra_points=2, workers=4)
    assert reports_to_csv(suite_reports) == reports_to_csv(again)
    assert reports_to_json(suite_reports) == reports_to_json(again)


def test_suite_filter_runs_subset():
    reports = run_suite(["REC-K", "RED-A0"])
    assert [r.id for r in reports] == ["REC-K", "RED-A0"]
    assert all(r.status == "pass" for r in reports)


# ---------------------------------------------------------------------------
# tables
# ---------------------------------------------------------------------------

def test_table_golden_entries():
    table = build_table("y1star", "A", 1, 2)
    assert table.entries[1][2] == "1*l^2 + 1*l + -1/2*l*a"
    assert [row[0] for row in table.entries] == ["1", "0"]
    s2 = build_table("stirling2", None, 4, 4)
    assert s2.entries[4][2] == "7"


def test_table_round_trip_csv_and_json():
    cases = [
        build_table("y1star", "B", 3, 4),
        build_table("y1star", "A", 2, 2, lam=Fraction(1, 2)),
        build_table("y1", None, 3, 3, lam=Fraction(2)),
        build_table("deg-stirling1", None, 4, 4),
        build_table("deg-stirling2", None, 4, 4, alpha=Fraction(1, 3)),
        build_table("s2star", None, 3, 3),
        build_table("bernoulli", None, 4, 3),
        build_table("y1deg", None, 3, 3, lam=Fraction(1), alpha=Fraction(1, 2)),
    ]
    for table in cases:
        csv_text = render_csv(table)
        assert render_csv(parse_csv(csv_text)) == csv_text
        json_text = render_json(table)
        assert render_json(parse_json(json_text)) == json_text


def test_table_determinism():
    a = render_csv(build_table("y1star", "E", 4, 4))
    b = render_csv(build_table("y1star", "E", 4, 4))
    assert a == b


def test_table_usage_errors():
    with pytest.raises(TableUsageError):
        build_table("nope", None, 2, 2)
    with pytest.raises(TableUsageError):
        build_table("stirling2", "A", 2, 2)
    with pytest.raises(TableUsageError):
        build_table("stirling1", None, 2, 2, lam=Fraction(1))
    with pytest.raises(TableUsageError):
        build_table("y1", None, 2, 2, alpha=Fraction(1))


def test_symbolic_and_substituted_tables_agree():
    sym = build_table("y1star", "A", 3, 3)
    sub = build_table("y1star", "A", 3, 3, lam=Fraction(1), alpha=Fraction(1, 2))
    from degsimsek.simsek import y1star
    from degsimsek.algebra import poly_eval
    for n in range(4):
        for k in range(4):
            value = poly_eval(y1star(n, k), Fraction(1), Fraction(1, 2))
            assert sub.entries[n][k] == str(value)


# ---------------------------------------------------------------------------
# CLI
# ---------------------------------------------------------------------------

def run_cli(*args):
    return subprocess.run([sys.executable, "-m", "degsimsek.cli", *args],
                          capture_output=True, text=True)


def test_cli_compute_goldens():
    out = run_cli("compute", "--family", "y1star", "--route", "B",
                  "--n", "1", "--k", "2")
    assert out.returncode == 0
    assert out.stdout.strip() == "1*l^2 + 1*l + -1/2*l*a"
    out = run_cli("compute", "--family", "y1", "--n", "0", "--k", "3",
                  "--lambda", "1")
    assert out.returncode == 0 and out.stdout.strip() == "4/3"


def test_cli_phi_golden():
    out = run_cli("phi", "--n", "0", "--lambda", "0", "--alpha", "1",
                  "--degree", "4")
    assert out.returncode == 0
    assert out.stdout.strip() == "[1, 1, 0, 0, 0]"


def test_cli_series():
    out = run_cli("series", "--family", "y1star", "--k", "0", "--order", "3")
    assert out.returncode == 0
    assert out.stdout.strip() == "[1, 0, 0, 0]"
    out = run_cli("series", "--family", "y1star", "--k", "2", "--order", "2",
                  "--lambda", "1", "--alpha", "1/2")
    assert out.returncode == 0
    # F_2 at (1, 1/2): [ (2)(3/2)/2, 7/4, ... ]
    assert out.stdout.strip().startswith("[3/2, 7/4")


def test_cli_usage_errors_exit_2():
    assert run_cli("compute", "--family", "y1", "--n", "-1", "--k", "0").returncode == 2
    assert run_cli("compute", "--family", "y1", "--n", "1", "--k", "0",
                   "--lambda", "x/y").returncode == 2
    assert run_cli("compute", "--family", "y1", "--n", "1", "--k", "0",
                   "--alpha", "1").returncode == 2
    assert run_cli("table", "--family", "stirling2", "--route", "A",
                   "--n-max", "2", "--k-max", "2").returncode == 2
    assert run_cli("verify", "--identity", "BOGUS").returncode == 2


def test_cli_table_bytes_match_library(tmp_path):
    out_path = tmp_path / "table.csv"
    result = run_cli("table", "--family", "y1star", "--route", "A",
                     "--n-max", "1", "--k-max", "2", "--out", str(out_path))
    assert result.returncode == 0
    expected = render_csv(build_table("y1star", "A", 1, 2))
    assert out_path.read_text(encoding="utf-8") == expected


def test_cli_verify_subset_and_list():
    out = run_cli("verify", "--identity", "REC-K,RED-CLASSICAL")
    assert out.returncode == 0
    assert "REC-K" in out.stdout and "0 failures" in out.stdout
    listing = run_cli("verify", "--list")
    assert listing.returncode == 0
    for rid in CORE_IDS:
        assert rid in listing.stdout


def test_cli_verify_exit_one_on_failure(monkeypatch, capsys):
    # exit status must be 1 exactly when some report has status "fail"
    from degsimsek import cli
    from degsimsek.reports import IdentityReport

    def fake_suite(*args, **kwargs):
        return [IdentityReport("PHI-DER", Fraction(1), Fraction(0), "K=8",
                               "fail", "x^0;lhs=0;rhs=1")]

    monkeypatch.setattr(cli, "run_suite", fake_suite)
    assert cli.main(["verify"]) == 1
    out = capsys.readouterr().out
    assert "1 failures" in out


def test_cli_verify_deterministic_bytes():
    args = ("verify", "--identity", "PHI-DER,PHI-INT", "--seed", "11",
            "--random-points", "1", "--format", "json")
    first = run_cli(*args)
    second = run_cli(*args, "--workers", "3")
    assert first.returncode == 0 and second.returncode == 0
    assert first.stdout == second.stdout
