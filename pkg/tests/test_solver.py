import random
from itertools import combinations

import pytest

from src.backends.branch_bound import BranchBoundSolver
from src.backends.solver_client import SolverClient
from src.core.grid import enumerate_geometric_lines, enumerate_lines, enumerate_spaces, grid_hypergraph
from src.core.patterns import is_free
from src.core.solver import PatternSolver, build_hypergraph, exhaustive_max_free, max_free
from src.exceptions import OracleCapExceeded, SolverBudgetExceeded
from src.models.hypergraph import ForbiddenHypergraph, ProofStatus
from src.models.sets import NaturalSet, PatternFamily

FAMILIES = [
    PatternFamily.ap(3),
    PatternFamily.ap(4),
    PatternFamily.gp_int(3),
    PatternFamily.gp_int(4),
    PatternFamily.gp_rat(3),
    PatternFamily.geom_square(),
    PatternFamily.gp_prime_power(2, 3),
    PatternFamily.gp_prime_power(3, 3),
    PatternFamily.gp_friable3(1),
    PatternFamily.gp_friable3(2),
]


def _oracle_instances():
    rng = random.Random(20240601)
    instances = []
    for family in FAMILIES:
        for n in range(1, 21):
            instances.append(build_hypergraph(family, NaturalSet.interval(n))[0])
        for _ in range(20):
            size = rng.randrange(4, 19)
            ground = NaturalSet.of(rng.sample(range(1, 73), size), 72)
            instances.append(build_hypergraph(family, ground)[0])
    for k, d in [(2, 2), (2, 3), (2, 4), (3, 2), (4, 2)]:
        instances.append(grid_hypergraph(enumerate_lines(k, d), k, d))
        instances.append(grid_hypergraph(enumerate_geometric_lines(k, d), k, d))
    for d in (2, 3, 4):
        instances.append(grid_hypergraph(enumerate_spaces(2, d, 2), 2, d))
    for _ in range(150):
        n = rng.randrange(2, 17)
        edges = []
        for _ in range(rng.randrange(0, 3 * n)):
            size = rng.randrange(2, min(4, n) + 1)
            edges.append(rng.sample(range(n), size))
        instances.append(ForbiddenHypergraph.from_sets(n, edges))
    return instances


def test_branch_bound_agrees_with_exhaustive(client):
    instances = _oracle_instances()
    assert len(instances) >= 500
    for h in instances:
        fast = max_free(h, client)
        slow = exhaustive_max_free(h)
        assert fast.exact
        assert fast.optimum == slow.optimum
        assert h.is_free(fast.witness)
        assert len(fast.witness) == fast.optimum


def test_exhaustive_witness_is_lexicographically_least():
    h = ForbiddenHypergraph.from_sets(4, [(0, 1), (2, 3)])
    result = exhaustive_max_free(h)
    assert result.optimum == 2
    assert result.witness == (0, 2)


def test_exhaustive_cap():
    with pytest.raises(OracleCapExceeded):
        exhaustive_max_free(ForbiddenHypergraph.from_sets(30, []), cap=24)


def test_hypergraph_examples(client):
    h = ForbiddenHypergraph.from_sets(10, [(0, 1, 2), (1, 2, 3), (0, 4, 8)])
    result = max_free(h, client)
    assert result.optimum == 8
    assert result.proof_status == ProofStatus.EXACT

    h = ForbiddenHypergraph.from_sets(3, [(0, 1), (1, 2), (0, 2)])
    assert max_free(h, client).optimum == 1

    assert max_free(ForbiddenHypergraph.from_sets(5, []), client).optimum == 5


def test_hypergraph_rejects_bad_edges():
    with pytest.raises(ValueError):
        ForbiddenHypergraph.from_sets(3, [(0,)])
    with pytest.raises(ValueError):
        ForbiddenHypergraph.from_sets(3, [(0, 3)])


@pytest.mark.parametrize("family, n, expected", [
    (PatternFamily.gp_int(3), 10, 8),
    (PatternFamily.gp_rat(3), 10, 8),
    (PatternFamily.geom_square(), 6, 5),
    (PatternFamily.geom_square(), 12, 10),
    (PatternFamily.ap(3), 4, 3),
    (PatternFamily.ap(3), 7, 4),
    (PatternFamily.ap(3), 9, 5),
])
def test_g_value_examples(solver, family, n, expected):
    assert solver.g_value(family, n) == expected


def test_square_example_matches_oracle(solver, oracle_solver):
    ground = NaturalSet.interval(12)
    family = PatternFamily.geom_square()
    assert solver.g_value_of(family, ground).optimum == oracle_solver.g_value_of(family, ground).optimum


def test_r_value_small_cases(solver):
    assert solver.r_value(3, 0) == 0
    assert solver.r_value(3, 2) == 2
    assert solver.r_values(3, 6) == [0, 1, 2, 2, 3, 4]


def test_r_value_matches_oracle(solver):
    for k in (3, 4):
        for n in range(1, 21):
            h, _ = build_hypergraph(PatternFamily.ap(k), NaturalSet.interval(n))
            assert solver.r_value(k, n) == exhaustive_max_free(h).optimum


def test_r_result_witness(solver):
    result = solver.r_result(3, 20)
    witness = NaturalSet.of(result.witness_labels(), 20)
    assert len(witness) == solver.r_value(3, 20)
    assert is_free(witness, PatternFamily.ap(3))


@pytest.mark.parametrize("family", FAMILIES, ids=lambda f: f.label)
def test_g_value_monotone(solver, family):
    values = [0] + [solver.g_value(family, n) for n in range(1, 31)]
    for n in range(1, 31):
        assert values[n - 1] <= values[n] <= values[n - 1] + 1


@pytest.mark.parametrize("family", FAMILIES, ids=lambda f: f.label)
def test_g_value_subadditive_over_disjoint_splits(solver, family):
    rng = random.Random(family.label)
    for _ in range(12):
        n = rng.randrange(2, 31)
        left = set(rng.sample(range(1, n + 1), rng.randrange(1, n)))
        right = set(range(1, n + 1)) - left
        parts = (solver.g_value_of(family, NaturalSet.of(left, n)).optimum
                 + solver.g_value_of(family, NaturalSet.of(right, n)).optimum)
        assert solver.g_value(family, n) <= parts


@pytest.mark.parametrize("family", FAMILIES, ids=lambda f: f.label)
def test_witness_is_free(solver, family):
    result = solver.g_value_of(family, NaturalSet.interval(30))
    witness = NaturalSet.of(result.witness_labels(), 30)
    assert len(witness) == result.optimum
    assert is_free(witness, family)


def test_rational_dominance(solver):
    for k in (3, 4):
        for n in (10, 20, 30, 45, 60):
            assert solver.g_value(PatternFamily.gp_rat(k), n) <= solver.g_value(PatternFamily.gp_int(k), n)


@pytest.mark.parametrize("family", FAMILIES, ids=lambda f: f.label)
def test_dilation_invariance(solver, family):
    rng = random.Random(99)
    for _ in range(5):
        ground = NaturalSet.of(rng.sample(range(1, 41), 16), 40)
        c = rng.randrange(2, 6)
        assert solver.g_value_of(family, ground).optimum == solver.g_value_of(family, ground.dilate(c)).optimum


@pytest.mark.parametrize("k", [3, 4, 5])
def test_easy_ap_bound(solver, k):
    for n in range(1, 101):
        assert solver.certify_easy_ap_bound(k, n)


@pytest.mark.parametrize("k", [3, 4, 5])
def test_r_value_within_easy_ap_bound(solver, k):
    for n in range(1, 41):
        assert solver.r_value(k, n) <= n - n // k


def test_reaches_easy_ap_bound(solver):
    witness = solver.reaches_easy_ap_bound(3, 6)
    assert witness is not None and len(witness) == 4
    assert is_free(NaturalSet.of(witness, 6), PatternFamily.ap(3))
    assert solver.reaches_easy_ap_bound(3, 7) is None


def test_exists_free_returns_elements(solver):
    ground = NaturalSet.of([3, 6, 12, 24])
    witness = solver.exists_free(PatternFamily.gp_int(3), ground, 3)
    assert witness is not None
    assert set(witness) <= {3, 6, 12, 24}
    assert solver.exists_free(PatternFamily.gp_int(3), ground, 4) is None


def test_hint_does_not_change_answer(client):
    h, _ = build_hypergraph(PatternFamily.gp_int(3), NaturalSet.interval(30))
    exact = max_free(h, client).optimum
    for hint in (exact - 2, exact, exact + 3):
        assert max_free(h, client, hint=hint).optimum == exact


def test_budget_exceeded_is_reported():
    h = ForbiddenHypergraph.from_sets(10, combinations(range(10), 3))
    result = SolverClient(node_budget=3).solve(h)
    assert result.proof_status == ProofStatus.BUDGET_EXCEEDED
    assert result.optimum == 2
    assert h.is_free(result.witness)

    solver = PatternSolver(SolverClient(node_budget=3))
    with pytest.raises(SolverBudgetExceeded) as info:
        solver.g_value_of(PatternFamily.ap(3), NaturalSet.interval(60))
    assert info.value.best_known > 0


def test_parallel_result_independent_of_workers():
    h, _ = build_hypergraph(PatternFamily.gp_int(3), NaturalSet.interval(40))
    results = [
        BranchBoundSolver(workers=workers, split_depth=3, parallel_min_vertices=20).solve(h)
        for workers in (1, 2, 3)
    ]
    assert len({(r.optimum, r.witness) for r in results}) == 1
    assert results[0].exact
    assert results[0].optimum == max_free(h).optimum


def test_unknown_backend():
    with pytest.raises(ValueError):
        SolverClient(provider="sat")
