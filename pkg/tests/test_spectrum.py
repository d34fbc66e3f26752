import math

import numpy as np
import pytest

from src.common.errors import ConfigError, DegenerateRegimeError, DynamicalInstabilityError, ZeroModeError
from src.potential.coefficients import GravityCoupling
from src.potential.modes import ZERO_MODE, ModeIndex, canonical_modes, shell_mode
from src.spectrum.couplings import GravityTheory, Regime, build_couplings, chemical_potential
from src.spectrum.dispersion import (
    bogolyubov_coefficients,
    dispersion,
    ground_state_energy,
    kinetic_energies,
    pre_gapless_energy,
    shell_energies,
)
from src.spectrum.ngb import NgbType, classify_ngb
from src.thermo.shells import shell_table
from src.units.constants import CODATA2018

CLASSICAL = GravityTheory.CLASSICAL
QUANTUM = GravityTheory.QUANTUM
MODE_100 = ModeIndex(1, 0, 0)


def test_theory_selection():
    assert GravityTheory.select("both") == [CLASSICAL, QUANTUM]
    assert GravityTheory.select("Quantum") == [QUANTUM]
    with pytest.raises(ConfigError):
        GravityTheory.select("newtonian")


# couplings


def test_yb_scenario_is_em_dominated(make_params):
    couplings = build_couplings(make_params())
    assert couplings.regime is Regime.EM_DOMINATED
    assert 1e10 <= couplings.g_em / abs(couplings.g_g0) <= 1e13


def test_regime_from_override(make_params, yb):
    assert build_couplings(make_params(g_em_override=0.0)).regime is Regime.GRAVITY_DOMINATED
    g_g0 = GravityCoupling(yb.mass, 0.01).g_g0
    assert build_couplings(make_params(g_em_override=2 * abs(g_g0))).regime is Regime.EM_DOMINATED


def test_regime_boundary_is_rejected(make_params, yb):
    g_g0 = GravityCoupling(yb.mass, 0.01).g_g0
    with pytest.raises(DegenerateRegimeError):
        build_couplings(make_params(g_em_override=abs(g_g0)))


def test_coupling_signs(make_params):
    couplings = build_couplings(make_params())
    assert couplings.g_g0 < 0
    assert couplings.g_gk(1) < 0
    assert abs(couplings.g_gk(1)) < abs(couplings.g_g0)
    assert couplings.g_gk(4) == couplings.g_gk(1) / 4


def test_coupling_overrides(make_params):
    couplings = build_couplings(make_params())
    bare = couplings.without_gravity()
    assert bare.g_g0 == 0.0 and bare.g_gk(3) == 0.0 and bare.g_em == couplings.g_em
    assert couplings.with_gk_zeroed().g_g0 == couplings.g_g0
    assert couplings.with_gk_zeroed().g_gk(1) == 0.0


def test_chemical_potential(make_params, gravity_dominated):
    couplings = build_couplings(make_params())
    expected = couplings.density * (couplings.g_em + couplings.g_g0)
    assert chemical_potential(couplings, CLASSICAL).mu == expected
    assert chemical_potential(couplings, QUANTUM).mu == expected

    gd = build_couplings(gravity_dominated)
    base = gd.density * (gd.g_em + gd.g_g0)
    assert chemical_potential(gd, CLASSICAL).mu == base
    assert chemical_potential(gd, QUANTUM).mu == 3.0 * base
    assert chemical_potential(gd, QUANTUM).regime is Regime.GRAVITY_DOMINATED


# dispersion


def test_free_particle_limit(gravity_dominated):
    point = dispersion(gravity_dominated, CLASSICAL, MODE_100)
    couplings = build_couplings(gravity_dominated)
    assert point.epsilon == pytest.approx(kinetic_energies(couplings, 1)[0], rel=1e-14)
    assert point.k == pytest.approx(2 * math.pi / 0.01)


def test_quantum_without_gk_reduces_to_classical(make_params):
    params = make_params()
    couplings = build_couplings(params).with_gk_zeroed()
    for mode in canonical_modes(30):
        classical = dispersion(params, CLASSICAL, mode, couplings=couplings)
        quantum = dispersion(params, QUANTUM, mode, couplings=couplings)
        assert quantum.epsilon == classical.epsilon


def test_gravity_dominated_quantum_shift(gravity_dominated):
    couplings = build_couplings(gravity_dominated)
    free = kinetic_energies(couplings, 1)[0]
    eps = dispersion(gravity_dominated, QUANTUM, MODE_100).epsilon
    assert free < eps < 1.01 * free


def test_textbook_bogolyubov_reduction(make_params, yb):
    rng = np.random.default_rng(20240611)
    for _ in range(20):
        params = make_params(
            atom_count=10 ** rng.uniform(6, 16),
            box_length=10 ** rng.uniform(-3, -1),
            g_em_override=10 ** rng.uniform(-54, -49),
        )
        couplings = build_couplings(params).without_gravity()
        n2 = int(rng.integers(1, 50))
        if shell_table(n2)[n2] == 0:
            n2 += 1
        classical = shell_energies(couplings, CLASSICAL, n2)
        quantum = shell_energies(couplings, QUANTUM, n2)

        m = yb.mass
        hk = CODATA2018.hbar * (2.0 * math.pi * np.sqrt(np.array([float(n2)])) / params.box_length)
        textbook = hk * np.sqrt(hk * hk / (4.0 * m * m) + couplings.density * couplings.g_em / m)
        assert classical[0] == textbook[0]
        assert quantum[0] == classical[0]


def test_negative_radicand_is_an_instability(make_params):
    params = make_params(g_em_override=-1e-50)
    with pytest.raises(DynamicalInstabilityError) as info:
        dispersion(params, CLASSICAL, MODE_100)
    assert info.value.shell == 1
    assert info.value.radicand < 0
    assert info.value.theory == "classical"
    assert info.value.to_dict()["error"] == "DynamicalInstability"


def test_zero_mode_has_no_dispersion(make_params):
    with pytest.raises(ZeroModeError):
        dispersion(make_params(), CLASSICAL, ZERO_MODE)


@pytest.mark.parametrize("n2", [1, 2, 5, 9])
def test_isotropy(make_params, n2):
    params = make_params(atom_count=1e12)
    reference = dispersion(params, QUANTUM, shell_mode(n2)).epsilon
    for mode in [ModeIndex(a, b, c) for a in range(-3, 4) for b in range(-3, 4) for c in range(-3, 4)]:
        if mode.n2 == n2:
            assert dispersion(params, QUANTUM, mode).epsilon == reference


@pytest.mark.parametrize(
    "g_em_override, theory",
    [(None, CLASSICAL), (None, QUANTUM), (0.0, QUANTUM), (0.0, CLASSICAL)],
)
def test_energies_increase_with_shell(make_params, g_em_override, theory):
    couplings = build_couplings(make_params(g_em_override=g_em_override))
    eps = shell_energies(couplings, theory, [1, 2, 3])
    assert eps[0] < eps[1] < eps[2]


def test_gravity_dominated_radicand_never_negative(gravity_dominated):
    couplings = build_couplings(gravity_dominated)
    shells = np.flatnonzero(shell_table(100)[1:]) + 1
    eps = shell_energies(couplings, QUANTUM, shells)
    assert np.all(eps > 0)


# pre-gapless form


@pytest.mark.parametrize("g_em_override", [None, 0.0])
@pytest.mark.parametrize("theory", [CLASSICAL, QUANTUM])
def test_gapless_mu_reproduces_dispersion(make_params, g_em_override, theory):
    params = make_params(atom_count=1e6, g_em_override=g_em_override)
    couplings = build_couplings(params)
    mu = chemical_potential(couplings, theory).mu
    for mode in canonical_modes(12):
        expected = dispersion(params, theory, mode, couplings=couplings).epsilon
        assert pre_gapless_energy(couplings, theory, mode, mu) == pytest.approx(expected, rel=1e-9)


# Bogolyubov coefficients


def test_bogolyubov_normalisation(make_params):
    rng = np.random.default_rng(7)
    for _ in range(100):
        params = make_params(atom_count=10 ** rng.uniform(12, 16), box_length=10 ** rng.uniform(-2.3, -1.3))
        mode = ModeIndex(*(int(v) for v in rng.integers(-5, 6, size=3)))
        if mode.is_zero:
            mode = MODE_100
        theory = CLASSICAL if rng.random() < 0.5 else QUANTUM
        b = bogolyubov_coefficients(params, theory, mode)
        assert b.u * b.u - b.v * b.v == pytest.approx(1.0, abs=1e-10)
        assert b.u >= 1.0 and b.v >= 0.0


def test_free_gas_has_no_mixing(gravity_dominated):
    b = bogolyubov_coefficients(gravity_dominated, CLASSICAL, MODE_100)
    assert b.u == 1.0 and b.v == 0.0


def test_mixing_fades_at_high_momentum(make_params):
    params = make_params(atom_count=1e6)
    shells = [int(s) for s in np.flatnonzero(shell_table(400)[1:]) + 1]
    vs = [bogolyubov_coefficients(params, CLASSICAL, shell_mode(s)).v for s in shells]
    assert all(a > b for a, b in zip(vs, vs[1:]))
    assert vs[-1] < 1e-2 * vs[0]


# ground state


def test_ground_state_is_cutoff_dependent(make_params):
    params = make_params()
    one = ground_state_energy(params, QUANTUM, 1)
    two = ground_state_energy(params, QUANTUM, 2)
    assert one.energy != two.energy
    assert one.shell_cutoff == 1 and two.shell_cutoff == 2


def test_ground_state_differs_between_theories(make_params):
    params = make_params()
    assert ground_state_energy(params, QUANTUM, 10).energy != ground_state_energy(params, CLASSICAL, 10).energy


def test_ground_state_matches_recorded_values(make_params, reference_values):
    frozen = reference_values["ground_state"]
    params = make_params(atom_count=frozen["atom_count"], box_length=frozen["box_length_m"])
    classical = ground_state_energy(params, CLASSICAL, frozen["shell_cutoff"])
    quantum = ground_state_energy(params, QUANTUM, frozen["shell_cutoff"])
    assert classical.energy == pytest.approx(frozen["classical_J"], rel=1e-12)
    assert quantum.energy == pytest.approx(frozen["quantum_J"], rel=1e-12)
    assert quantum.kinetic_scale == classical.kinetic_scale
    assert classical.kinetic_scale == pytest.approx(frozen["kinetic_scale_J"], rel=1e-12)
    # the gap is the condensate's own gravitational mean-field energy
    couplings = build_couplings(params)
    condensate = 0.5 * couplings.density * couplings.atom_count * couplings.g_g0
    assert quantum.energy - classical.energy == pytest.approx(condensate, rel=1e-2)


@pytest.mark.parametrize("theory", [CLASSICAL, QUANTUM])
def test_ground_state_of_a_single_atom_is_kinetic_dominated(make_params, theory):
    result = ground_state_energy(make_params(atom_count=1), theory, 10)
    assert result.kinetic_scale > 0
    assert abs(result.energy) < 1e-6 * result.kinetic_scale


def test_ground_state_needs_a_cutoff(make_params):
    with pytest.raises(ConfigError):
        ground_state_energy(make_params(), QUANTUM, 0)


# Nambu-Goldstone classification


def test_phonons_are_type_a(make_params):
    result = classify_ngb(make_params(), CLASSICAL)
    assert result.kind is NgbType.TYPE_A
    assert 0.9 <= result.slope <= 1.1


def test_gravity_only_quantum_mode_is_type_b(gravity_dominated):
    result = classify_ngb(gravity_dominated, QUANTUM)
    assert result.kind is NgbType.TYPE_B
    assert 1.9 <= result.slope <= 2.1


def test_free_gas_slope_is_two(gravity_dominated):
    result = classify_ngb(gravity_dominated, CLASSICAL)
    assert result.kind is NgbType.TYPE_B
    assert result.slope == pytest.approx(2.0, abs=1e-9)


def test_crossover_is_indeterminate(make_params):
    result = classify_ngb(make_params(atom_count=1e6), CLASSICAL)
    assert result.kind is NgbType.INDETERMINATE
    assert 1.1 < result.slope < 1.9
