import random

import pytest

from src.core.gradings import (
    algebra_identity_check, build_brown_grading, build_friable_grading, build_gp_grading,
    build_prime_power_grading, build_square_grading, gp_level_count, level_sizes,
    partition_from_grading, verify_grading,
)
from src.core.numtheory import primorial, primorial_phi
from src.exceptions import GradingError
from src.models.grading import Cell, Grading, GradingKind
from src.models.sets import PatternFamily

BUILDERS = {
    "gp3": (lambda n: build_gp_grading(n, 3), PatternFamily.gp_int(3)),
    "gp4": (lambda n: build_gp_grading(n, 4), PatternFamily.gp_int(4)),
    "brown": (lambda n: build_brown_grading(n, 3), PatternFamily.gp_int(3)),
    "prime-power": (lambda n: build_prime_power_grading(n, 2, 3), PatternFamily.gp_prime_power(2, 3)),
    "prime-power-3": (lambda n: build_prime_power_grading(n, 3, 3), PatternFamily.gp_prime_power(3, 3)),
    "square": (build_square_grading, PatternFamily.geom_square()),
    "friable": (lambda n: build_friable_grading(n, 2), PatternFamily.gp_friable3(2)),
}


def _elements(level):
    return [cell.elements for cell in level]


def test_gp_grading_example():
    g = build_gp_grading(32, 3)
    assert _elements(g.level(1)) == [(1, 2, 4), (3, 6, 12), (5, 10, 20), (7, 14, 28), (8, 16, 32)]
    assert level_sizes(g) == [32, 5]
    assert g.kind == GradingKind.EXPANSION and g.parameter == 3


def test_gp_grading_second_level():
    g = build_gp_grading(36, 3)
    assert _elements(g.level(2)) == [(1, 2, 3, 4, 6, 9, 12, 18, 36)]


def test_gp_grading_single_scale():
    g = build_gp_grading(32, 3, max_level=1)
    assert g.depth == 1
    assert gp_level_count(32, 3, 1, max_scale=1) == 4


def test_brown_grading_example():
    g = build_brown_grading(32, 3)
    assert _elements(g.level(1)) == [(1, 2, 4), (3, 6, 12), (5, 10, 20), (7, 14, 28)]


def test_prime_power_grading_example():
    g = build_prime_power_grading(8, 2, 3)
    assert _elements(g.level(1)) == [(1, 2), (3, 6)]
    assert _elements(g.level(2)) == [(1, 2, 4)]
    assert _elements(g.level(3)) == [(1, 2, 4, 8)]
    assert level_sizes(g) == [8, 2, 1, 1]
    assert g.kind == GradingKind.GROWTH and g.parameter == 1


def test_square_grading_example():
    g = build_square_grading(6)
    assert _elements(g.level(1)) == [(1, 2), (3, 6)]
    assert _elements(g.level(2)) == [(1, 2, 3, 6)]
    assert build_square_grading(3).depth == 1


def test_friable_grading_example():
    g = build_friable_grading(6, 2)
    assert _elements(g.level(1)) == [(1, 2)]
    assert _elements(g.level(2)) == [(1, 2, 3)]
    assert _elements(g.level(3)) == [(1, 2, 3, 4)]
    assert _elements(g.level(4)) == [(1, 2, 3, 4, 6)]
    assert g.depth == 4


def _assert_structural(build, family, n):
    g = build(n)
    report = verify_grading(g, family)
    assert report.passed, (n, report.failures())
    assert report[1].passed and report[2].passed and report[3].passed and report[4].passed
    if g.kind == GradingKind.EXPANSION:
        assert report[5].passed and report[6].passed is None
    else:
        assert report[6].passed and report[5].passed is None


@pytest.mark.parametrize("name", sorted(BUILDERS))
def test_builders_satisfy_structural_conditions(name):
    build, family = BUILDERS[name]
    for n in range(1, 201):
        _assert_structural(build, family, n)


@pytest.mark.slow
@pytest.mark.parametrize("name", sorted(BUILDERS))
def test_builders_satisfy_structural_conditions_up_to_500(name):
    build, family = BUILDERS[name]
    for n in range(201, 501):
        _assert_structural(build, family, n)


@pytest.mark.parametrize("name", sorted(BUILDERS))
def test_builders_satisfy_ramsey_condition(solver, name):
    build, family = BUILDERS[name]
    for n in range(1, 61):
        report = verify_grading(build(n), family, check_ramsey=True, solver=solver, conditions=(4,))
        assert report[4].passed, (n, report[4].detail)


def test_overlapping_cells_are_reported():
    singletons = [Cell((b,), 0) for b in range(1, 5)]
    g = Grading(4, [singletons, [Cell((1, 2), 1), Cell((2, 3), 1)]], GradingKind.EXPANSION, 2)
    report = verify_grading(g)
    assert not report.passed
    assert report[2].passed is False
    assert report[2].counterexample == ((1, 2), (2, 3))
    with pytest.raises(GradingError):
        partition_from_grading(g)


def test_missing_singletons_are_reported():
    g = Grading(3, [[Cell((1,), 0), Cell((2,), 0)]], GradingKind.EXPANSION, 2)
    assert verify_grading(g, conditions=(1,))[1].passed is False


def test_bad_expansion_is_reported():
    singletons = [Cell((b,), 0) for b in range(1, 5)]
    g = Grading(4, [singletons, [Cell((1, 2, 3), 1)]], GradingKind.EXPANSION, 2)
    assert verify_grading(g, conditions=(5,))[5].passed is False


def test_family_required_for_ramsey_condition():
    assert verify_grading(build_gp_grading(32, 3), conditions=(4,))[4].passed is None


def test_partition_prime_power():
    view = partition_from_grading(build_prime_power_grading(8, 2, 3))
    assert view.alpha == [2, 1, 0, 1]
    assert sorted(view.parts) == [(1, 2, 4, 8), (3, 6), (5,), (7,)]


def test_partition_gp():
    view = partition_from_grading(build_gp_grading(32, 3))
    assert view.alpha == [17, 5]
    covered = sorted(x for part in view.parts for x in part)
    assert covered == list(range(1, 33))


@pytest.mark.parametrize("name", ["gp3", "gp4", "brown", "square"])
@pytest.mark.parametrize("n", [7, 32, 100, 500])
def test_expansion_partition_identities(name, n):
    g = BUILDERS[name][0](n)
    view = partition_from_grading(g)
    k = g.parameter
    sizes = level_sizes(g)
    alpha = view.alpha
    assert sum(k ** i * a for i, a in enumerate(alpha)) == n
    for i in range(len(alpha)):
        assert sum(k ** (j - i) * alpha[j] for j in range(i, len(alpha))) == sizes[i]


@pytest.mark.parametrize("name", ["prime-power", "prime-power-3", "friable"])
@pytest.mark.parametrize("n", [7, 32, 100, 500])
def test_growth_partition_identities(name, n):
    g = BUILDERS[name][0](n)
    view = partition_from_grading(g)
    alpha = view.alpha
    sizes = level_sizes(g)
    assert sum((i + 1) * a for i, a in enumerate(alpha)) == n
    for i in range(1, len(alpha)):
        assert sum(alpha[i:]) == sizes[i]


def test_algebra_identity_examples():
    assert algebra_identity_check([2, 1, 0, 1], [1, 2, 2, 3], 1, GradingKind.GROWTH)
    assert algebra_identity_check([17, 5], [1, 2], 3)
    assert algebra_identity_check([], [], 3)
    with pytest.raises(GradingError):
        algebra_identity_check([1, 2], [1], 3)


def test_algebra_identity_random():
    rng = random.Random(42)
    for _ in range(100):
        size = rng.randrange(1, 7)
        alpha = [rng.randrange(0, 50) for _ in range(size)]
        R = [rng.randrange(0, 100) for _ in range(size)]
        k = rng.randrange(1, 6)
        assert algebra_identity_check(alpha, R, k + 1, GradingKind.EXPANSION)
        assert algebra_identity_check(alpha, R, k, GradingKind.GROWTH)


@pytest.mark.parametrize("k", [3, 4])
@pytest.mark.parametrize("n", [32, 100, 500, 5000])
def test_level_count_matches_construction(k, n):
    sizes = level_sizes(build_gp_grading(n, k))
    for d in range(1, len(sizes)):
        assert gp_level_count(n, k, d) == sizes[d]
    assert gp_level_count(n, k, len(sizes)) == 0


@pytest.mark.parametrize("d", [1, 2])
def test_level_count_density(d):
    n = 10 ** 6
    k = 3
    expected = n * primorial_phi(d) / primorial(d) ** k * 2 ** k / (2 ** k - 1)
    assert abs(gp_level_count(n, k, d) - expected) <= 0.1 * expected
