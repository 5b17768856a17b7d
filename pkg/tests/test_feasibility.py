"""Feasibility enumeration: the candidate filters, the regenerated
reference tables, the closed-form oracle for one block, realization
verification, and the four-eigenvalue classification."""

from fractions import Fraction

import pytest

from walklab.exact import extract_spectrum
from walklab.feasibility import (
    REFERENCE_TABLE,
    REALIZATIONS,
    ThetaClass,
    classify_four_eigenvalue,
    closed_walks_integral,
    enumerate_rows,
    multiplicities,
    n_bounds,
    read_tables_csv,
    render_tables,
    row_comment,
    verify_realization,
)
from walklab.walk import Periodic, decide_periodic, quadrangle_report

EXPECTED_N_COLUMNS = {
    (ThetaClass.HALF, 4): [12, 16, 24, 32, 48, 64, 96],
    (ThetaClass.HALF, 6): [18, 24, 36, 54, 72, 108, 162, 216, 324],
    (ThetaClass.HALF, 8): [24, 32, 48, 64, 96, 128, 192, 256, 384, 512, 768],
    (ThetaClass.HALF, 10): [30, 40, 50, 60, 100, 120, 150, 200, 250, 300,
                            500, 600, 750, 1000, 1250, 1500],
    (ThetaClass.SQRT2, 2): [8],
    (ThetaClass.SQRT2, 4): [16, 32, 64],
    (ThetaClass.SQRT2, 6): [18, 24, 36, 48, 54, 72, 108, 144, 162, 216],
    (ThetaClass.SQRT2, 8): [32, 64, 128, 256, 512],
    (ThetaClass.SQRT2, 10): [40, 50, 80, 100, 200, 250, 400, 500, 1000],
    (ThetaClass.SQRT3, 4): [32],
    (ThetaClass.SQRT3, 8): [64, 256],
    (ThetaClass.SQRT3, 10): [50, 200, 500],
}


# ---------------------------------------------------------------------------
# filters


def test_multiplicities_examples():
    assert multiplicities(4, 4, 12) == (2, 6)
    assert multiplicities(6, 18, 18) == (1, 14)
    assert multiplicities(4, 4, 11) is None  # a = 3/2


def test_n_bounds_examples():
    assert n_bounds(4, 4) == (Fraction(10), 96)
    assert n_bounds(4, 8) == (Fraction(12), 64)
    assert n_bounds(2, 2) == (Fraction(6), 8)
    with pytest.raises(ValueError):
        n_bounds(2, 4)


def test_closed_walks_examples():
    assert closed_walks_integral(4, 4, 12)
    assert not closed_walks_integral(4, 4, 10)  # fourth moment 54.4
    assert closed_walks_integral(6, 9, 27)  # arithmetic holds; parity kills it


def test_closed_walks_matches_direct_scan():
    # direct check of the first dozen powers agrees with the cycle decision
    for k, theta_sq in ((4, 4), (4, 8), (6, 9), (6, 18), (8, 16)):
        lo, hi = n_bounds(k, theta_sq)
        for n in range(int(lo), hi + 1, max(1, hi // 37)):
            direct = all(
                (2 * k ** (2 * r) + (n * k - 2 * k * k) * theta_sq ** (r - 1)) % n == 0
                for r in range(1, 13))
            if closed_walks_integral(k, theta_sq, n):
                assert direct, (k, theta_sq, n)
            else:
                assert not all(
                    (2 * k ** (2 * r) + (n * k - 2 * k * k) * theta_sq ** (r - 1)) % n == 0
                    for r in range(1, 61)), (k, theta_sq, n)


# ---------------------------------------------------------------------------
# enumeration against the reference tables


def test_enumerate_reproduces_reference_columns():
    for (cls, k), expected in EXPECTED_N_COLUMNS.items():
        got = [row.n for row in enumerate_rows(cls, k)]
        assert got == expected, (cls, k)


def test_enumerate_half4_closed_form():
    # independent oracle: even n in [10, 96] dividing 384
    expected = [n for n in range(10, 97) if n % 2 == 0 and 384 % n == 0]
    got = [row.n for row in enumerate_rows(ThetaClass.HALF, 4)]
    assert got == expected
    assert all(row.b == 6 for row in enumerate_rows(ThetaClass.HALF, 4))


def test_enumerate_sqrt3_k4():
    rows = enumerate_rows(ThetaClass.SQRT3, 4)
    assert len(rows) == 1
    row = rows[0]
    assert (row.n, row.a, row.b) == (32, 4, 22)
    assert row.spectrum().render() == "{[±4]^1, [±2√3]^4, [0]^22}"


def test_enumerate_rejects_odd_degree():
    with pytest.raises(ValueError):
        enumerate_rows(ThetaClass.HALF, 5)


def test_row_counting_identities():
    # multiplicities add up and the second moment balances exactly
    for (cls, k) in EXPECTED_N_COLUMNS:
        for row in enumerate_rows(cls, k):
            assert 2 + 2 * row.a + row.b == row.n
            theta_sq = cls.theta_sq(k)
            assert 2 * k * k + 2 * row.a * theta_sq == row.n * k
            spec = row.spectrum()
            assert spec.dimension() == row.n
            assert spec.power_sum(2) == row.n * k


def test_rows_agree_with_walk_engine_quadrangles():
    for (cls, k) in EXPECTED_N_COLUMNS:
        for row in enumerate_rows(cls, k):
            rep = quadrangle_report(row.spectrum(), row.n, row.k)
            assert rep.q_spectral == row.q
            assert rep.qx_spectral == row.q_x


def test_elimination_annotations_match_reference():
    # the reference comment column agrees with the exact computation
    # everywhere except the two flagged sqrt3 k=10 rows
    flagged = {(ThetaClass.SQRT3, 10, 50), (ThetaClass.SQRT3, 10, 200)}
    for (cls, k, n), ann in REFERENCE_TABLE.items():
        if ann.elimination is None:
            continue
        row = next(r for r in enumerate_rows(cls, k) if r.n == n)
        if (cls, k, n) in flagged:
            assert row.elimination() != ann.elimination
        else:
            assert row.elimination() == ann.elimination, (cls, k, n)


def test_flagged_rows_exact_values():
    rows50 = {r.n: r for r in enumerate_rows(ThetaClass.SQRT3, 10)}
    assert rows50[50].q == 4125 and rows50[50].q_x == 330
    assert rows50[50].feasible  # not quadrangle-eliminable after all
    assert "reference says" in row_comment(rows50[50])
    assert rows50[200].q == 14625 and rows50[200].q_x == Fraction(585, 2)
    assert rows50[200].elimination() == "qx_nonintegral"
    assert "reference says" in row_comment(rows50[200])


def test_eliminated_rows_are_retained():
    rows = enumerate_rows(ThetaClass.HALF, 6)
    by_n = {r.n: r for r in rows}
    assert by_n[24].status == "eliminated" and by_n[24].elimination() == "qx_nonintegral"
    assert by_n[216].status == "eliminated" and by_n[216].elimination() == "q_negative"
    assert by_n[18].status == "feasible"


# ---------------------------------------------------------------------------
# realizations


def test_realizations_verify():
    for (cls, k, n), (label, builder) in REALIZATIONS.items():
        row = next(r for r in enumerate_rows(cls, k) if r.n == n)
        assert row.known_realization == label
        assert verify_realization(row), label


def test_realization_graphs_are_periodic():
    for (cls, k, n), (label, builder) in REALIZATIONS.items():
        g = builder()
        verdict = decide_periodic(g, cross_check=2 * g.edge_count <= 200)
        assert isinstance(verdict, Periodic), label
        assert verdict.period == (12 if cls is ThetaClass.HALF else 8), label


# ---------------------------------------------------------------------------
# four-eigenvalue classification


def test_classification_is_c6_only():
    rows = classify_four_eigenvalue(100)
    assert len(rows) == 1
    k, n, spec = rows[0]
    assert (k, n) == (2, 6)
    assert spec.render() == "{[±2]^1, [±1]^2}"


def test_classification_independent_of_kmax():
    expected = classify_four_eigenvalue(2)
    for k_max in (4, 10, 60):
        assert classify_four_eigenvalue(k_max) == expected


def test_classification_window():
    # half class with k = 4 fails k > theta^2 (4 is not above 4)
    assert not any(k == 4 for k, _, _ in classify_four_eigenvalue(10))
    # surd classes never qualify: k > theta^2 would force k < 2
    for k, n, spec in classify_four_eigenvalue(40):
        theta = [v for v in spec.values() if v.sign() > 0][-1]
        assert theta.is_rational


# ---------------------------------------------------------------------------
# rendering


def test_render_tables_csv_roundtrip():
    text = render_tables(6, "csv")
    rows = read_tables_csv(text)
    import csv
    import io
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=tuple(rows[0].keys()), lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    assert buf.getvalue() == text


def test_render_tables_text_layout():
    text = render_tables(4, "text")
    lines = [l for l in text.splitlines() if l]
    assert lines[0] == "theta-class half"
    first = next(l for l in lines if l.startswith("4 | 12"))
    assert "C6⊗J2" in first
    assert "theta-class sqrt2" in lines
    assert any(l.startswith("2 | 8") and "C8" in l for l in lines)


def test_render_tables_json_exact_strings():
    import json
    rows = json.loads(render_tables(10, "json"))
    rec = next(r for r in rows
               if r["class"] == "sqrt3" and r["k"] == "10" and r["n"] == "200")
    assert rec["q"] == "14625" and rec["q_x"] == "585/2"
    assert rec["status"] == "eliminated"


def test_render_tables_deterministic():
    assert render_tables(8, "csv") == render_tables(8, "csv")
