import json
from pathlib import Path

import pytest

from src.units.params import GasParameters
from src.units.species import lookup_species

FIXTURE_DIR = Path(__file__).parent / "fixtures"
POTENTIAL_FIXTURE = FIXTURE_DIR / "potential_oracle.json"
REFERENCE_VALUES = FIXTURE_DIR / "reference_values.json"


@pytest.fixture(scope="session")
def yb():
    return lookup_species("Yb-174")


@pytest.fixture
def make_params(yb):
    """GasParameters for Yb-174, defaulting to the N = 1e16, L = 1 cm scenario."""

    def _make(atom_count=1e16, box_length=0.01, g_em_override=None, species=None):
        return GasParameters(species or yb, atom_count, box_length, g_em_override)

    return _make


@pytest.fixture
def gravity_dominated(make_params):
    """No contact interaction at all: gravity is the only coupling."""
    return make_params(g_em_override=0.0)


@pytest.fixture(scope="session")
def potential_fixture():
    if not POTENTIAL_FIXTURE.exists():
        pytest.skip(
            "oracle fixture not generated; run "
            "`becg potential --max-n2 27 --fixture tests/fixtures/potential_oracle.json`"
        )
    return json.loads(POTENTIAL_FIXTURE.read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def reference_values():
    """Frozen scenario values: N = 1e15 energy deviation, ground state at cutoff 10, fitted g_em."""
    return json.loads(REFERENCE_VALUES.read_text(encoding="utf-8"))
