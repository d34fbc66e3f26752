import math

import pytest
from scipy import special

from src.common.errors import (
    ConfigError,
    NoConvergenceError,
    NonFiniteError,
    SingularityHandlingError,
    ZeroModeError,
)
from src.potential.coefficients import GravityCoupling, gk_approx, gk_prefactor, v0_closed_form, v0_coefficient
from src.potential.modes import ZERO_MODE, ModeIndex, canonical_modes, shell_mode
from src.potential.oracles import gk_oracle_1d, gk_oracle_3d
from src.potential.specfun import erf_contour_oracle, re_erf_complex, scaled_re_erf
from src.units.constants import CODATA2018

L = 0.01


def gm2l2(mass, box_length=L):
    return CODATA2018.G * mass * mass * box_length * box_length


# modes


def test_mode_properties():
    mode = ModeIndex(1, -2, 2)
    assert mode.n2 == 9
    assert mode.canonical() == (1, 2, 2)
    assert mode.wavenumber(L) == pytest.approx(2 * math.pi * 3 / L)
    assert str(mode) == "(1,-2,2)"
    assert ZERO_MODE.is_zero


def test_mode_parse():
    assert ModeIndex.parse("1, 0,-1") == ModeIndex(1, 0, -1)
    with pytest.raises(ConfigError):
        ModeIndex.parse("1,0")
    with pytest.raises(ConfigError):
        ModeIndex.parse("a,b,c")


def test_zero_mode_is_not_an_excitation():
    with pytest.raises(ZeroModeError):
        ZERO_MODE.require_excitation()


def test_canonical_modes():
    assert list(canonical_modes(3)) == [ModeIndex(0, 0, 1), ModeIndex(0, 1, 1), ModeIndex(1, 1, 1)]
    # 7 is not a sum of three squares
    assert all(m.n2 != 7 for m in canonical_modes(27))
    assert shell_mode(5).n2 == 5
    with pytest.raises(ConfigError):
        shell_mode(7)


# complex error function


def test_re_erf_on_real_axis():
    assert re_erf_complex(1.0, 0.0) == pytest.approx(0.8427007929, abs=1e-10)


@pytest.mark.parametrize("y", [0.1, 1.0, 7.5, 40.0])
def test_re_erf_on_imaginary_axis(y):
    assert re_erf_complex(0.0, y) == 0.0


def test_re_erf_against_contour_quadrature():
    x, y = 0.5, math.pi * 0.3
    oracle = erf_contour_oracle(x, y)
    assert re_erf_complex(x, y) == pytest.approx(oracle.real, rel=1e-10)


def test_contour_oracle_matches_real_erf():
    assert erf_contour_oracle(1.0, 0.0).real == pytest.approx(special.erf(1.0), rel=1e-12)
    assert erf_contour_oracle(1.0, 0.0).imag == pytest.approx(0.0, abs=1e-15)


@pytest.mark.parametrize("x, y", [(0.5, 1.2), (2.0, 3.0), (-1.3, 0.7), (0.05, 4.0), (6.0, 2.5)])
def test_scaled_re_erf_matches_plain(x, y):
    expected = re_erf_complex(x, y) * math.exp(-y * y)
    assert scaled_re_erf(x, y) == pytest.approx(expected, rel=1e-9, abs=1e-15)


def test_scaled_re_erf_is_odd_and_finite():
    assert scaled_re_erf(-0.8, 3.0) == -scaled_re_erf(0.8, 3.0)
    # far beyond the range where Re erf itself overflows
    assert math.isfinite(scaled_re_erf(0.01, 200.0))
    assert scaled_re_erf(1e9, 3.0) == pytest.approx(math.exp(-9.0), rel=1e-12)


def test_re_erf_overflow_is_an_error():
    with pytest.raises(NonFiniteError):
        re_erf_complex(0.1, 30.0)
    with pytest.raises(NonFiniteError):
        re_erf_complex(math.nan, 1.0)


# closed forms


def test_v0_coefficient():
    expected = 0.5 * math.pi * (12.0 / math.pi * math.asinh(1.0 / math.sqrt(2.0)) - 1.0)
    assert v0_coefficient() == pytest.approx(expected, rel=1e-12)
    assert v0_coefficient() == pytest.approx(2.3807, abs=1e-3)


def test_v0_closed_form(yb):
    value = v0_closed_form(yb.mass, L)
    assert value < 0
    assert value / -gm2l2(yb.mass) == pytest.approx(v0_coefficient(), rel=1e-14)
    assert v0_closed_form(2 * yb.mass, L) == pytest.approx(4 * value, rel=1e-14)
    assert v0_closed_form(yb.mass, 2 * L) == pytest.approx(4 * value, rel=1e-14)


def test_gk_approx_values(yb):
    g100 = gk_approx(ModeIndex(1, 0, 0), yb.mass, L)
    assert g100 == pytest.approx(-gm2l2(yb.mass) / math.pi, rel=1e-14)
    assert g100 / -gm2l2(yb.mass) == pytest.approx(0.3183, abs=1e-4)
    assert gk_approx(ModeIndex(1, 1, 1), yb.mass, L) == pytest.approx(g100 / 3, rel=1e-14)
    assert gk_approx(ModeIndex(-1, 0, 0), yb.mass, L) == g100
    with pytest.raises(ZeroModeError):
        gk_approx(ZERO_MODE, yb.mass, L)


def test_gk_approx_decreases_with_shell(yb):
    coupling = GravityCoupling(yb.mass, L)
    values = [abs(coupling.g_gk(shell_mode(n2))) for n2 in (1, 2, 3, 4, 5, 6, 8, 9)]
    assert all(a > b for a, b in zip(values, values[1:]))
    assert all(v < abs(coupling.g_g0) for v in values)
    assert coupling.prefactor == gk_prefactor(yb.mass, L)


@pytest.mark.parametrize("mode", [ModeIndex(2, 1, 0), ModeIndex(-2, 0, 1), ModeIndex(0, 2, -1)])
def test_gk_approx_parity(yb, mode):
    assert gk_approx(mode, yb.mass, L) == gk_approx(ModeIndex(1, 2, 0), yb.mass, L)


# 1D oracle


def test_oracle_1d_is_negative_for_low_shells(yb):
    for mode in canonical_modes(27):
        assert gk_oracle_1d(mode, yb.mass, L, rel_tol=1e-6) < 0, mode


def test_oracle_1d_permutation_and_sign_symmetry(yb):
    a = gk_oracle_1d(ModeIndex(2, 1, 0), yb.mass, L)
    assert gk_oracle_1d(ModeIndex(1, 2, 0), yb.mass, L) == a
    assert gk_oracle_1d(ModeIndex(0, 1, 2), yb.mass, L) == a
    assert gk_oracle_1d(ModeIndex(0, -1, 2), yb.mass, L) == a


def test_oracle_1d_tolerance_self_consistency(yb):
    mode = ModeIndex(1, 0, 0)
    loose = gk_oracle_1d(mode, yb.mass, L, rel_tol=1e-4)
    tight = gk_oracle_1d(mode, yb.mass, L, rel_tol=1e-8)
    assert loose == pytest.approx(tight, rel=1e-4)


@pytest.mark.parametrize("n", [(0, 0, 1), (0, 0, 2), (0, 1, 1), (1, 1, 1), (0, 0, 4), (1, 2, 2), (0, 3, 4)])
def test_approximation_error_matches_fixture(potential_fixture, yb, n):
    entry = next(e for e in potential_fixture["modes"] if tuple(e["n"]) == n)
    mode = ModeIndex(*n)
    oracle = gk_oracle_1d(mode, yb.mass, L)
    approx = gk_approx(mode, yb.mass, L)
    assert abs(approx - oracle) / abs(oracle) == pytest.approx(entry["rel_err"], abs=1e-6)


def test_oracle_1d_scales_like_m2_l2(yb):
    mode = ModeIndex(1, 1, 0)
    base = gk_oracle_1d(mode, yb.mass, L)
    assert gk_oracle_1d(mode, 2 * yb.mass, 3 * L) == pytest.approx(36 * base, rel=1e-12)


def test_oracle_1d_rejects_bad_input(yb):
    with pytest.raises(ZeroModeError):
        gk_oracle_1d(ZERO_MODE, yb.mass, L)
    with pytest.raises(ConfigError):
        gk_oracle_1d(ModeIndex(1, 0, 0), yb.mass, L, rel_tol=0.1)


def test_oracle_1d_subdivision_budget(yb):
    with pytest.raises(NoConvergenceError):
        gk_oracle_1d(ModeIndex(2, 2, 1), yb.mass, L, rel_tol=1e-11, subdivisions=1)


# 3D oracle


def test_oracle_3d_zero_mode_matches_closed_form(yb):
    value = gk_oracle_3d(ZERO_MODE, yb.mass, L, grid=128)
    assert value == pytest.approx(v0_closed_form(yb.mass, L), rel=5e-3)


def test_oracle_3d_converges_with_grid(yb):
    exact = v0_closed_form(yb.mass, L)
    coarse = abs(gk_oracle_3d(ZERO_MODE, yb.mass, L, grid=16) - exact)
    fine = abs(gk_oracle_3d(ZERO_MODE, yb.mass, L, grid=64) - exact)
    assert fine < 0.5 * coarse


def test_oracles_agree_on_lowest_mode(yb):
    mode = ModeIndex(1, 0, 0)
    one_d = gk_oracle_1d(mode, yb.mass, L, rel_tol=1e-10)
    three_d = gk_oracle_3d(mode, yb.mass, L, grid=128)
    assert three_d == pytest.approx(one_d, rel=2e-3)


def test_oracle_3d_independent_of_workers(yb):
    mode = ModeIndex(1, 1, 0)
    assert gk_oracle_3d(mode, yb.mass, L, grid=32, workers=1) == gk_oracle_3d(mode, yb.mass, L, grid=32, workers=3)


def test_oracle_3d_grid_checks(yb):
    with pytest.raises(SingularityHandlingError):
        gk_oracle_3d(ZERO_MODE, yb.mass, L, grid=33)
    with pytest.raises(ConfigError):
        gk_oracle_3d(ZERO_MODE, yb.mass, L, grid=8)


# generated fixture


def test_fixture_zero_mode(potential_fixture):
    zero = potential_fixture["zero_mode"]
    assert zero["closed_form_coefficient"] == pytest.approx(v0_coefficient(), rel=1e-12)
    assert zero["rel_err"] < 5e-3


def test_fixture_matches_current_oracle(potential_fixture, yb):
    scale = gm2l2(yb.mass)
    for entry in potential_fixture["modes"]:
        if entry["n2"] > 4:
            continue
        mode = ModeIndex(*entry["n"])
        oracle = gk_oracle_1d(mode, yb.mass, L, rel_tol=potential_fixture["rel_tol"])
        assert oracle / scale == pytest.approx(entry["oracle1d_coefficient"], rel=1e-6)
        assert gk_approx(mode, yb.mass, L) / scale == pytest.approx(entry["approx_coefficient"], rel=1e-12)


def test_fixture_covers_every_class_up_to_27(potential_fixture):
    listed = [tuple(e["n"]) for e in potential_fixture["modes"]]
    assert listed == [m.canonical() for m in canonical_modes(potential_fixture["max_n2"])]


def test_fixture_rel_err_is_consistent(potential_fixture, yb):
    scale = gm2l2(yb.mass)
    for entry in potential_fixture["modes"]:
        approx = gk_approx(ModeIndex(*entry["n"]), yb.mass, L) / scale
        oracle = entry["oracle1d_coefficient"]
        assert oracle < 0
        assert abs(approx - oracle) / abs(oracle) == pytest.approx(entry["rel_err"], rel=1e-9)


def test_axis_mode_error_does_not_shrink_with_n2(potential_fixture):
    # the error along an axis alternates with the parity of n and stays far above 5%
    errors = {tuple(e["n"]): e["rel_err"] for e in potential_fixture["modes"]}
    axis = [errors[(0, 0, k)] for k in range(1, 6)]
    assert axis[1] > axis[0]
    assert axis[3] > axis[2]
    assert axis[3] > axis[1] > axis[4] > axis[2] > axis[0]
    assert min(axis) > 0.15


def test_error_is_small_only_off_the_coordinate_planes(potential_fixture):
    for entry in potential_fixture["modes"]:
        if 0 not in entry["n"]:
            assert entry["rel_err"] < 0.05, entry["n"]
    worst = max(e["rel_err"] for e in potential_fixture["modes"])
    assert worst == pytest.approx(0.4931, abs=1e-4)
