import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

FIXTURES = Path(__file__).parent.parent / "fixtures"

EQ5_JW4 = ["XIII", "YIII", "ZXII", "ZYII", "ZZXI", "ZZYI", "ZZZX", "ZZZY"]


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def water_hamiltonian():
    from ferrtree.hamiltonians import load_any
    h, info = load_any(FIXTURES / "h2o_sto3g.json")
    return h, info


@pytest.fixture(scope="session")
def h2_hamiltonian():
    from ferrtree.hamiltonians import load_any
    h, info = load_any(FIXTURES / "h2_sto3g.json")
    return h, info
