from fractions import Fraction

import pytest

from src.core import tables
from src.core.bounds import (
    DOWN, UP, brown_bound, decimal_render, finite_theorem_bound, friable_prefix_values,
    gp_int_asymptotic, gp_rat_asymptotic, mcnew_asymptotic, prime_power_asymptotic,
    resolve_table_values, riddell_bound, square_asymptotic, theorem1_bound, theorem2_bound,
    threshold_search,
)
from src.core.gradings import (
    build_friable_grading, build_gp_grading, build_prime_power_grading, build_square_grading,
)
from src.exceptions import BoundInputError
from src.models.records import Quantity, RamseyRecord, RecordStatus, TableFile
from src.models.sets import PatternFamily


@pytest.fixture
def table(bundled_table_path):
    return tables.load(bundled_table_path)


# ----------------------------------------------------------------------
# 渐近界的标准值


def test_gp_rat_golden_value(table):
    report = gp_rat_asymptotic(3, table, depth=6)
    assert report.lead == Fraction(6, 7)
    assert report.remainder == Fraction(16755239936, 23695945898625)
    assert report.value == Fraction(6, 7) - Fraction(16755239936, 23695945898625)
    assert report.decimal == "0.856436"
    assert [t.coefficient for t in report.terms] == [1, 0, 2, 5, 5, 19]


def test_gp_int_golden_value(table):
    report = gp_int_asymptotic(3, table, depth=5)
    assert report.decimal == "0.857131"
    assert [t.coefficient for t in report.terms] == [1, 0, 0, 2, 6]


def test_gp_int_default_depth(table):
    report = gp_int_asymptotic(3, table)
    assert report.depth == 6
    assert report.terms[-1].coefficient == 0
    assert report.value == gp_int_asymptotic(3, table, depth=5).value


def test_gp_int_first_term(table):
    assert gp_int_asymptotic(3, table, depth=1).value == Fraction(6, 7)
    assert gp_int_asymptotic(3, table, depth=0).value == 1


def test_square_golden_value(table):
    report = square_asymptotic(table, depth=5)
    assert report.value == Fraction(3699337, 4002075)
    assert [t.coefficient for t in report.terms] == [0, 1, 0, 1, 1]
    assert square_asymptotic(table, depth=1).value == 1
    assert square_asymptotic(table).depth == 5


@pytest.mark.parametrize("bound", [
    lambda t, d: gp_int_asymptotic(3, t, depth=d),
    lambda t, d: gp_rat_asymptotic(3, t, depth=d),
    lambda t, d: square_asymptotic(t, depth=min(d, 5)),
])
def test_truncation_is_monotone(table, bound):
    values = [bound(table, d).value for d in range(7)]
    for shorter, longer in zip(values, values[1:]):
        assert longer <= shorter
    assert all(0 < v <= 1 for v in values)
    for report in (bound(table, d) for d in range(7)):
        assert all(t.coefficient >= 0 for t in report.terms)
        assert report.value == report.lead - report.remainder


def test_lower_records_are_ignored():
    records = [RamseyRecord(Quantity.dhj(0, 3), 1), RamseyRecord(Quantity.dhj(1, 3), 2),
               RamseyRecord(Quantity.dhj(2, 3), 5, RecordStatus.LOWER)]
    table = TableFile(records=records)
    assert resolve_table_values(table, lambda d: Quantity.dhj(d, 3)) == [1, 2]
    with pytest.raises(BoundInputError):
        resolve_table_values(table, lambda d: Quantity.dhj(d, 3), depth=2)


def test_upper_records_are_used():
    records = [RamseyRecord(Quantity.dhj(0, 3), 1), RamseyRecord(Quantity.dhj(1, 3), 2),
               RamseyRecord(Quantity.dhj(2, 3), 7, RecordStatus.UPPER)]
    table = TableFile(records=records)
    assert resolve_table_values(table, lambda d: Quantity.dhj(d, 3), depth=2) == [1, 2, 7]


def test_missing_values():
    with pytest.raises(BoundInputError):
        gp_int_asymptotic(3, TableFile())


# ----------------------------------------------------------------------
# 定理界


def test_theorem1_examples():
    report = theorem1_bound(32, [32, 4], [1, 2], 3)
    assert report.value == Fraction(7, 8)
    assert report.integer_form == 28
    assert theorem1_bound(32, [32, 5], [1, 2], 3).value == Fraction(27, 32)
    assert brown_bound(32, 3).value == Fraction(7, 8)


def test_theorem2_example():
    report = theorem2_bound(8, [8, 2, 1, 1], [1, 2, 2, 3], 1)
    assert report.integer_form == 7
    assert report.value == Fraction(7, 8)


def test_theorem_length_mismatch():
    with pytest.raises(BoundInputError):
        theorem1_bound(32, [32, 5], [1], 3)
    with pytest.raises(BoundInputError):
        theorem2_bound(8, [], [], 1)


def test_finite_bound_with_solver(solver):
    report = finite_theorem_bound(build_gp_grading(32, 3), PatternFamily.gp_int(3), solver)
    assert report.value == Fraction(27, 32)
    assert solver.g_value(PatternFamily.gp_int(3), 32) <= report.integer_form

    report = finite_theorem_bound(build_prime_power_grading(8, 2, 3), PatternFamily.gp_prime_power(2, 3), solver)
    assert report.integer_form == 7
    assert solver.g_value(PatternFamily.gp_prime_power(2, 3), 8) == 7


SWEEP = [
    (lambda n: build_gp_grading(n, 3), PatternFamily.gp_int(3)),
    (lambda n: build_gp_grading(n, 3), PatternFamily.gp_rat(3)),
    (build_square_grading, PatternFamily.geom_square()),
    (lambda n: build_prime_power_grading(n, 2, 3), PatternFamily.gp_prime_power(2, 3)),
    (lambda n: build_friable_grading(n, 1), PatternFamily.gp_friable3(1)),
]


@pytest.mark.parametrize("build, family", SWEEP)
def test_finite_bound_is_sound(solver, build, family):
    for n in range(1, 25):
        report = finite_theorem_bound(build(n), family, solver)
        assert solver.g_value(family, n) <= report.integer_form


@pytest.mark.slow
@pytest.mark.parametrize("build, family", SWEEP)
def test_finite_bound_is_sound_up_to_60(solver, build, family):
    for n in range(25, 61):
        report = finite_theorem_bound(build(n), family, solver)
        assert solver.g_value(family, n) <= report.integer_form


def test_riddell_bound_converges():
    report = riddell_bound(2 ** 20, 3)
    assert abs(float(report.value) - 6 / 7) < 1e-3
    assert riddell_bound(3, 3).value == 1


# ----------------------------------------------------------------------
# 增长型渐近界


def test_prime_power_asymptotic():
    report = prime_power_asymptotic(2, 3, [0, 1, 2, 2, 3], depth=3)
    assert report.value == Fraction(7, 8)
    assert [t.coefficient for t in report.terms] == [0, 1, 0]
    assert prime_power_asymptotic(3, 3, [0, 1, 2, 2, 3], depth=3).value == Fraction(25, 27)
    with pytest.raises(BoundInputError):
        prime_power_asymptotic(2, 3, [0, 1, 2], depth=3)


def test_prime_power_asymptotic_with_solver(solver):
    r = solver.r_values(3, 12)
    values = [prime_power_asymptotic(2, 3, r, depth=d).value for d in range(11)]
    assert all(b <= a for a, b in zip(values, values[1:]))
    assert prime_power_asymptotic(3, 3, r, depth=10).value >= values[-1]


def test_mcnew_matches_prime_power_for_one_prime(solver):
    R = friable_prefix_values(1, 5, solver)
    assert R == [solver.r_value(3, i + 1) for i in range(6)]
    r = solver.r_values(3, 7)
    assert mcnew_asymptotic(1, R, 5).value == prime_power_asymptotic(2, 3, r, 5).value


def test_mcnew_two_primes(solver):
    R = friable_prefix_values(2, 6, solver)
    report = mcnew_asymptotic(2, R, 6)
    assert 0 < report.value < 1
    assert all(t.coefficient >= 0 for t in report.terms)
    with pytest.raises(BoundInputError):
        mcnew_asymptotic(2, R[:3], 6)


# ----------------------------------------------------------------------
# 小数与阈值


@pytest.mark.parametrize("value, digits, direction, expected", [
    (Fraction(6, 7), 6, UP, "0.857143"),
    (Fraction(6, 7), 6, DOWN, "0.857142"),
    (Fraction(7, 8), 3, UP, "0.875"),
    (Fraction(1), 2, UP, "1.00"),
    (Fraction(1, 100), 1, UP, "0.1"),
])
def test_decimal_render(value, digits, direction, expected):
    assert decimal_render(value, digits, direction) == expected


def test_decimal_render_errors():
    with pytest.raises(ValueError):
        decimal_render(Fraction(1, 2), 0)
    with pytest.raises(ValueError):
        decimal_render(Fraction(1, 2), 3, "NEAREST")


def test_threshold_search(solver):
    result = threshold_search(3, 20, solver)
    assert result.found
    assert (result.n, result.r_value, result.easy_bound) == (7, 4, 5)
    assert not threshold_search(3, 5, solver).found


def test_threshold_search_k4(solver):
    result = threshold_search(4, 30, solver)
    assert result.found
    assert (result.n, result.r_value, result.easy_bound) == (7, 5, 6)
    for n in range(1, result.n):
        assert solver.r_value(4, n) == n - n // 4


@pytest.mark.parametrize("k, n_max", [(3, 20), (4, 20)])
def test_threshold_agrees_with_exhaustive_r(solver, oracle_solver, k, n_max):
    result = threshold_search(k, n_max, solver)
    assert result.found
    for n in range(1, n_max + 1):
        exact = oracle_solver.r_value(k, n)
        assert solver.r_value(k, n) == exact
        if n < result.n:
            assert exact == n - n // k
    assert oracle_solver.r_value(k, result.n) == result.r_value < result.easy_bound
