"""Acceptance gate: twelve end-to-end guarantees at literal-equality tolerance.

Every criterion prints exactly one [PASS]/[FAIL] line on the terminal
(outside pytest capture) and then asserts, so a full run reads as a
twelve-line scoreboard whatever else the suite prints.
"""

import io
from fractions import Fraction

from inflectionary.conjectures import (
    DEFAULT_LAMBDA_GRID,
    PARITY_COUNT_MULTIPLIER,
    check_coeff_symmetry,
    check_determinant_identity,
    check_face_structure,
    check_homogenization_symmetry,
    check_shift_symmetry,
    check_support,
    conjecture4_scan,
    singular_probe,
    separability_check,
)
from inflectionary.inflection import (
    basic_inflection,
    calibrate_recurrence_coefficient,
    derivative_oracle,
    general_inflection,
    predicted_delta,
    predicted_genus,
    q_template,
    torsion_check,
)
from inflectionary.poly import VAR_LAMBDA, VAR_X, SparsePoly
from inflectionary.render import (
    DEFAULT_WINDOW,
    render_curve,
    row_sign_changes,
    sample_sign_grid,
)
from inflectionary.roots import sturm_count

XL = (VAR_X, VAR_LAMBDA)

LEMMA1_PAIRS = ((2, 3), (2, 4), (3, 4), (2, 5))
TORSION_LAMBDAS = (Fraction(-1), Fraction(-1, 2), Fraction(1, 3),
                   Fraction(2), Fraction(5))
SEPARABILITY_PAIRS = ((1, 2), (1, 3), (1, 4), (2, 3))
ALLOWED_SINGULAR_KEYS = {"[0:0:1]", "[0:1:0]", "[1:1:1]"}

# Ten sampled grid rows of the default 512-row window, avoiding the two
# degenerate parameter rows lambda = 0 (j = 128) and lambda = 1 (j = 256).
CENSUS_ROWS = (32, 96, 160, 200, 224, 288, 320, 384, 448, 500)


def _criterion(capsys, number, label, failures):
    status = "FAIL" if failures else "PASS"
    with capsys.disabled():
        print(f"[{status}] criterion {number:02d}: {label}")
    assert not failures, f"criterion {number:02d} ({label}): {failures[:4]}"


def test_criterion_01_seed_and_degrees(capsys):
    failures = []
    seed = basic_inflection(0).poly
    expected = SparsePoly(XL, {(2, 0): Fraction(3, 2), (1, 0): -1,
                               (1, 1): -1, (0, 1): Fraction(1, 2)})
    if seed != expected:
        failures.append("seed polynomial mismatch")
    for k in range(9):
        p = basic_inflection(k).poly
        if p.degree(VAR_X) != 2 * (k + 1):
            failures.append(f"x-degree at k={k}: {p.degree(VAR_X)}")
        if p.degree(VAR_LAMBDA) != k + 1:
            failures.append(f"lambda-degree at k={k}: {p.degree(VAR_LAMBDA)}")
    _criterion(capsys, 1, "seed polynomial and degree growth", failures)


def test_criterion_02_derivative_oracle(capsys):
    failures = []
    for m in range(1, 10):
        form = derivative_oracle(m)
        if form.exponent != m:
            failures.append(f"denominator exponent at m={m}: {form.exponent}")
        if form.numerator != basic_inflection(m - 1).poly:
            failures.append(f"numerator mismatch at m={m}")
    calibration = calibrate_recurrence_coefficient()
    if not calibration["results"].get(calibration["selected"]):
        failures.append("selected recurrence coefficient fails its own calibration")
    if sum(1 for ok in calibration["results"].values() if ok) != 1:
        failures.append("coefficient calibration is not decisive")
    _criterion(capsys, 2, "derivative oracle agrees with the recurrence", failures)


def test_criterion_03_determinant_identity(capsys):
    failures = []
    for mu, k in LEMMA1_PAIRS:
        report = check_determinant_identity(mu, k)
        if report.verdict != "PASS":
            failures.append(f"routes disagree at (mu,k)=({mu},{k})")
    for mu in range(1, 5):
        for n in range(1, 9):
            template = q_template(mu, n).poly
            if template.is_zero:
                failures.append(f"template vanishes at (mu,n)=({mu},{n})")
            if any(sum(e) != mu for e in template.support()):
                failures.append(f"inhomogeneous template at (mu,n)=({mu},{n})")
    _criterion(capsys, 3, "determinant identity and template homogeneity", failures)


def test_criterion_04_torsion_identity(capsys):
    failures = []
    for k in (2, 3):
        for lambda0 in TORSION_LAMBDAS:
            report = torsion_check(k, lambda0)
            if report.verdict != "PASS":
                failures.append(f"not proportional at k={k}, lambda={lambda0}")
                continue
            expected_degree = 2 * k * k - 2
            if report.data["degree_inflection"] != expected_degree:
                failures.append(f"inflection degree at k={k}, lambda={lambda0}")
            if report.data["degree_division"] != expected_degree:
                failures.append(f"division degree at k={k}, lambda={lambda0}")
    _criterion(capsys, 4, "torsion proportionality against division polynomials",
               failures)


def test_criterion_05_symmetries(capsys):
    failures = []
    for k in range(1, 9):
        if check_homogenization_symmetry(k).verdict != "PASS":
            failures.append(f"homogenization swap at k={k}")
        if check_shift_symmetry(k).verdict != "PASS":
            failures.append(f"unit shift at k={k}")
    _criterion(capsys, 5, "homogenization and shift symmetries", failures)


def test_criterion_06_support_and_involution(capsys):
    failures = []
    frozen_k1 = {(0, 2), (2, 1), (3, 1), (3, 0), (4, 0)}
    if basic_inflection(1).poly.support() != frozen_k1:
        failures.append("k=1 support drifted")
    for k in range(1, 9):
        if check_support(k).verdict != "PASS":
            failures.append(f"support prediction at k={k}")
        if check_coeff_symmetry(k).verdict != "PASS":
            failures.append(f"coefficient involution at k={k}")
    _criterion(capsys, 6, "support prediction and coefficient involution", failures)


def test_criterion_07_face_structure(capsys):
    failures = []
    for k in range(2, 7):
        report = check_face_structure(k)
        if report.verdict != "PASS":
            failures.append(f"face structure at k={k}: {report.witness}")
    _criterion(capsys, 7, "two-face boundary structure", failures)


def test_criterion_08_separability(capsys):
    failures = []
    for mu, k in SEPARABILITY_PAIRS:
        for lambda0 in DEFAULT_LAMBDA_GRID:
            report = separability_check(mu, k, lambda0)
            if report.verdict != "PASS":
                failures.append(f"(mu,k)=({mu},{k}) at lambda={lambda0}")
    _criterion(capsys, 8, "separability away from x in {0, 1}", failures)


def test_criterion_09_root_count_dichotomy(capsys):
    failures = []
    if PARITY_COUNT_MULTIPLIER != {"even": 1, "odd": 2}:
        failures.append("pinned parity direction changed")
    for mu, k in SEPARABILITY_PAIRS:
        report = conjecture4_scan(mu, k)
        expected = mu * (1 if (k - mu) % 2 == 0 else 2)
        if report.verdict != "PASS":
            failures.append(f"scan failed at (mu,k)=({mu},{k})")
            continue
        counts = set(report.data["counts"])
        if counts != {expected}:
            failures.append(f"counts {sorted(counts)} at (mu,k)=({mu},{k})")
        if expected not in (mu, 2 * mu):
            failures.append(f"expected count outside {{mu, 2mu}} at ({mu},{k})")
    _criterion(capsys, 9, "real-root-count dichotomy across the grid", failures)


def test_criterion_10_singular_locus(capsys):
    failures = []
    for k in (2, 3):
        report = singular_probe(k)
        if report.verdict != "PASS":
            failures.append(f"probe verdict {report.verdict} at k={k}")
            continue
        for chart, info in report.data["charts"].items():
            strays = set(info["certified"]) - ALLOWED_SINGULAR_KEYS
            if strays:
                failures.append(f"stray points {sorted(strays)} in chart {chart}")
    _criterion(capsys, 10, "no singular points beyond the three known", failures)


def test_criterion_11_invariant_formulas(capsys):
    failures = []
    for k, expected in ((2, 4), (3, 7)):
        if predicted_delta(k) != expected:
            failures.append(f"delta({k}) = {predicted_delta(k)}")
    if predicted_genus(3) != 0:
        failures.append(f"genus(3) = {predicted_genus(3)}")
    _criterion(capsys, 11, "closed-form delta and genus values", failures)


def test_criterion_12_render_census_consistency(capsys):
    failures = []
    w = DEFAULT_WINDOW
    for mu, k in ((1, 2), (1, 3)):
        p = general_inflection(mu, k).poly
        grid = sample_sign_grid(p, w)
        for j in CENSUS_ROWS:
            lambda0 = w.lambda_at(j)
            changes = row_sign_changes(grid, j)
            expected = sturm_count(p.specialize(VAR_LAMBDA, lambda0),
                                   w.x_min, w.x_max)
            if changes != expected:
                failures.append(
                    f"(mu,k)=({mu},{k}) row j={j}: {changes} != {expected}")
        first = render_curve(p, w, io.BytesIO())
        second = render_curve(p, w, io.BytesIO())
        if first != second:
            failures.append(f"render bytes differ for (mu,k)=({mu},{k})")
    _criterion(capsys, 12, "render rows match Sturm counts; bytes deterministic",
               failures)
