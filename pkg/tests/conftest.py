"""共享测试夹具"""

import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT))

from src.backends.solver_client import SolverClient  # noqa: E402
from src.core.grid import GridRamsey  # noqa: E402
from src.core.solver import PatternSolver  # noqa: E402

BUNDLED_TABLE = ROOT / "data" / "default_table.json"


@pytest.fixture
def client():
    return SolverClient(provider="branch_bound", workers=1)


@pytest.fixture
def oracle_client():
    return SolverClient(provider="exhaustive", oracle_cap=24)


@pytest.fixture
def solver(client):
    return PatternSolver(client)


@pytest.fixture
def oracle_solver(oracle_client):
    return PatternSolver(oracle_client)


@pytest.fixture
def grid(client):
    return GridRamsey(client.solve)


@pytest.fixture
def bundled_table_path():
    return BUNDLED_TABLE
