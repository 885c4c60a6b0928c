import math

import numpy as np
import pytest

from pdem import checks, model, oracle
from pdem.errors import BelowContinuum, DomainError, LevelOutOfRange, NonConvergence
from pdem.model import ModelParams, WavefunctionForm


# ---------------------------------------------------------------- parameters

def test_params_validation():
    with pytest.raises(ValueError):
        ModelParams(m0=-1.0)
    with pytest.raises(ValueError):
        ModelParams(a=0.5)  # below 1/(sqrt(2) lambda0)
    with pytest.raises(ValueError):
        ModelParams(a=1.0 / math.sqrt(2.0))  # bound is strict
    p = ModelParams(a=2.0)
    assert p.lambda0 == 1.0
    assert p.b == 2.0
    assert p.b2 == 4.0


def test_reduced_constants(params_a2):
    rc = model.reduced_constants(params_a2, 3.0)
    assert rc.c0 == 24.0
    assert rc.c2 == rc.c0 + params_a2.b2**2


# ---------------------------------------------------------------- profiles

def test_effective_mass(params_a2):
    assert model.effective_mass(params_a2, 0.0) == params_a2.m0
    assert model.effective_mass(params_a2, 2.0) == 0.25
    with pytest.raises(DomainError):
        model.effective_mass(ModelParams(a=1.0), -1.0)


def test_effective_mass_decreasing(params_a2):
    xs = np.linspace(-1.9, 20.0, 50)
    vals = [model.effective_mass(params_a2, float(x)) for x in xs]
    assert all(v > 0 for v in vals)
    assert all(b < a for a, b in zip(vals, vals[1:]))


def test_potential(params_a2):
    assert model.potential(params_a2, 0.0) == 0.0
    assert model.potential(params_a2, 2.0) == 0.5
    assert math.isinf(model.potential(params_a2, -2.5))
    assert math.isinf(model.potential(params_a2, -2.0))
    assert model.potential(params_a2, 1e9) == pytest.approx(
        model.well_depth(params_a2), rel=1e-8
    )


def test_well_depth():
    assert model.well_depth(ModelParams(a=1.0)) == 0.5
    assert model.well_depth(ModelParams(a=4.0)) == 8.0
    assert model.well_depth(ModelParams(m0=2.0, omega=3.0, a=1.0)) == 9.0


# ---------------------------------------------------------------- spectrum

@pytest.mark.parametrize("a,n_max", [(1.0, 0), (2.0, 3), (3.0, 8), (4.0, 15)])
def test_max_level(a, n_max):
    assert model.max_level(ModelParams(a=a)) == n_max


def test_energies(params_a2):
    assert model.energy(params_a2, 0).energy == 0.5
    assert model.energy(params_a2, 3).energy == 2.0
    with pytest.raises(LevelOutOfRange):
        model.energy(params_a2, 4)
    with pytest.raises(LevelOutOfRange):
        model.energy(params_a2, -1)


def test_discrete_state_fields(params_a2):
    st = model.energy(params_a2, 1)
    assert st.mu == 2.0 * params_a2.b2 - 2.0
    assert st.gamma == -1.0
    assert st.mu > 1.0
    assert st.energy <= model.well_depth(params_a2)


@pytest.mark.parametrize("a", [1.0, 2.0, 3.0, 4.0])
def test_spectrum_shape(a):
    p = ModelParams(a=a)
    energies = [model.energy(p, n).energy for n in range(model.max_level(p) + 1)]
    v_inf = model.well_depth(p)
    gaps = [e2 - e1 for e1, e2 in zip(energies, energies[1:])]
    assert all(g > 0.0 for g in gaps)
    assert all(g2 < g1 for g1, g2 in zip(gaps, gaps[1:]))
    # the top level may sit exactly at the plateau (it does for integer b^2)
    assert all(e <= v_inf + 1e-12 for e in energies)
    assert energies[-1] == pytest.approx(v_inf, rel=1e-14)


def test_ground_state_matches_canonical():
    for a in (1.0, 2.0, 3.0, 4.0, 10.0):
        assert model.energy(ModelParams(a=a), 0).energy == 0.5


# ---------------------------------------------------------------- normalization

def test_normalization_closed_form_a1(params_a1):
    assert math.exp(model.normalization(params_a1, 0)) == pytest.approx(
        math.sqrt(2.0), rel=1e-14
    )


@pytest.mark.parametrize("n", [0, 3])
def test_normalization_by_quadrature(params_a2, n):
    assert checks.bound_overlap(params_a2, n, n) == pytest.approx(1.0, abs=1e-8)


def test_normalization_log_space_large_a():
    # Gamma(2 b^2 - n) overflows a float at a = 20 but the log form is finite
    p = ModelParams(a=20.0)
    val = model.normalization(p, 0)
    assert math.isfinite(val)
    with pytest.raises(OverflowError):
        math.exp(math.lgamma(2.0 * p.b2))  # the quantity the log form avoids


# ---------------------------------------------------------------- wavefunctions

def test_wavefunction_value_at_origin(params_a2):
    expected = math.exp(model.normalization(params_a2, 0)) * math.exp(-4.0)
    assert model.wavefunction(params_a2, 0, 0.0) == pytest.approx(expected, rel=1e-14)


def test_wavefunction_wall_underflow(params_a1):
    assert model.wavefunction(params_a1, 0, -1.0 + 1e-4) == 0.0


def test_wavefunction_domain_and_range(params_a2):
    with pytest.raises(DomainError):
        model.wavefunction(params_a2, 0, -2.0)
    with pytest.raises(LevelOutOfRange):
        model.wavefunction(params_a2, 4, 0.0)


@pytest.mark.parametrize("a", [1.0, 2.0, 3.0])
def test_dual_form_agreement(a):
    p = ModelParams(a=a)
    xs = np.linspace(-a + 0.02 * a, a + 10.0 / p.lambda0, 200)
    for n in range(model.max_level(p) + 1):
        for x in xs:
            x = float(x)
            vb = model.wavefunction(p, n, x, WavefunctionForm.BESSEL)
            vl = model.wavefunction(p, n, x, WavefunctionForm.LAGUERRE)
            if vb == 0.0 and vl == 0.0:
                continue
            assert abs(vb - vl) <= 1e-10 * max(abs(vb), abs(vl))


@pytest.mark.parametrize("a", [1.0, 2.0, 3.0])
def test_boundary_decay_monotone(a):
    p = ModelParams(a=a)
    for n in range(min(2, model.max_level(p)) + 1):
        vals = [abs(model.wavefunction(p, n, -a + eps * a)) for eps in (1e-1, 1e-2, 1e-3)]
        assert vals[0] > vals[1] or vals[0] == 0.0
        assert vals[1] > vals[2] or vals[1] == 0.0


def test_wavefunction_far_tail_decay(params_a2):
    # power-law decay with exponent n - b^2 < -1/2
    for n in range(4):
        v1 = abs(model.wavefunction(params_a2, n, 400.0))
        v2 = abs(model.wavefunction(params_a2, n, 800.0))
        expected = 2.0 ** (n - params_a2.b2)
        assert v2 / v1 == pytest.approx(expected, rel=0.05)


def test_orthonormality_small_case(params_a1):
    assert checks.bound_overlap(params_a1, 0, 0) == pytest.approx(1.0, abs=1e-9)


# ---------------------------------------------------------------- derivatives

def test_derivative_zero_at_ground_maximum():
    for a in (1.0, 2.0):
        p = ModelParams(a=a)
        scale = abs(model.wavefunction(p, 0, 0.0))
        assert abs(model.wavefunction_derivative(p, 0, 0.0)) <= 1e-8 * scale


@pytest.mark.parametrize("n", [0, 2])
def test_derivative_matches_finite_differences(params_a2, n):
    h = 1e-5 * params_a2.a
    xs = np.linspace(-1.8, 14.0, 60)
    peak = max(abs(model.wavefunction(params_a2, n, float(x))) for x in xs)
    for x in xs:
        x = float(x)
        psi = model.wavefunction(params_a2, n, x)
        if abs(psi) <= 1e-8 * peak:
            continue
        fd = (
            model.wavefunction(params_a2, n, x + h) - model.wavefunction(params_a2, n, x - h)
        ) / (2.0 * h)
        d = model.wavefunction_derivative(params_a2, n, x)
        assert abs(d - fd) <= 1e-6 * max(abs(d), abs(fd))


# ---------------------------------------------------------------- continuum

def test_continuum_state_examples():
    p2 = ModelParams(a=2.0)
    st = model.continuum_state(p2, 3.0)
    assert st.c0 == 24.0
    assert st.q == pytest.approx(math.sqrt(31.0), rel=1e-15)
    assert st.mu == pytest.approx(complex(1.0, math.sqrt(31.0)))
    assert st.gamma == pytest.approx(complex(-3.5, 0.5 * math.sqrt(31.0)))

    p1 = ModelParams(a=1.0)
    st = model.continuum_state(p1, 1.0)
    assert st.c0 == 2.0
    assert st.q == pytest.approx(math.sqrt(3.0), rel=1e-15)


def test_continuum_rejections(params_a2):
    with pytest.raises(BelowContinuum):
        model.continuum_state(params_a2, model.well_depth(params_a2))
    # thin band above the plateau where q^2 <= 0
    with pytest.raises(BelowContinuum):
        model.continuum_state(params_a2, 2.01)


def test_continuum_scale_linearity(params_a2):
    st0 = model.continuum_state(params_a2, 3.0, scale=0.0)
    assert model.continuum_wavefunction(st0, params_a2, 1.3) == 0.0
    st1 = model.continuum_state(params_a2, 3.0, scale=1.0)
    st2 = model.continuum_state(params_a2, 3.0, scale=2.5j)
    v1 = model.continuum_wavefunction(st1, params_a2, 1.3)
    v2 = model.continuum_wavefunction(st2, params_a2, 1.3)
    assert v2 == pytest.approx(2.5j * v1, rel=1e-14)


def test_continuum_domain_error(params_a2):
    st = model.continuum_state(params_a2, 3.0)
    with pytest.raises(DomainError):
        model.continuum_wavefunction(st, params_a2, -2.0)


def test_continuum_near_wall_raises_nonconvergence(params_a2):
    # e^z growth of the Kummer series beats the e^(-z/2) prefactor near the
    # wall; in floating point the series overflows and the evaluator refuses
    st = model.continuum_state(params_a2, 3.0)
    with pytest.raises(NonConvergence):
        model.continuum_wavefunction(st, params_a2, -2.0 + 2e-4)


@pytest.mark.parametrize("frac", [1.25, 1.5, 2.0])
def test_continuum_ode_residual(params_a2, frac):
    e = frac * model.well_depth(params_a2)
    st = model.continuum_state(params_a2, e)
    psi = lambda x: model.continuum_wavefunction_with_derivatives(st, params_a2, x)
    for x in np.linspace(-2.0 + 0.05, 14.0, 40):
        assert oracle.ode_residual(params_a2, psi, e, float(x)) <= 1e-6


def test_continuum_derivative_consistency(params_a2):
    st = model.continuum_state(params_a2, 3.0)
    h = 1e-5
    for x in (-1.0, 0.5, 2.0, 7.0):
        v, d1, d2 = model.continuum_wavefunction_with_derivatives(st, params_a2, x)
        assert v == pytest.approx(model.continuum_wavefunction(st, params_a2, x), rel=1e-13)
        fd = (
            model.continuum_wavefunction(st, params_a2, x + h)
            - model.continuum_wavefunction(st, params_a2, x - h)
        ) / (2.0 * h)
        assert abs(d1 - fd) <= 1e-7 * max(abs(d1), abs(fd))


# ---------------------------------------------------------------- factorization

def test_alpha0_values():
    assert model.alpha0(ModelParams(a=1.0), 0.0) == 0.0
    assert model.alpha0(ModelParams(a=2.0), 0.0) == 0.0
    assert model.alpha0(ModelParams(a=2.0), 2.0) == -0.5
    with pytest.raises(DomainError):
        model.alpha0(ModelParams(a=1.0), -1.0)


def test_kinetic_weight(params_a2):
    # hbar^2 / (2 M); M(2) = 1/4 for a=2
    assert model.kinetic_weight(params_a2, 2.0) == pytest.approx(2.0, rel=1e-15)


def test_lowering_annihilates_ground_state(params_a2):
    pair = model.bound_state_pair(params_a2, 0)
    for x in np.linspace(-1.9, 14.0, 50):
        x = float(x)
        psi = model.wavefunction(params_a2, 0, x)
        if abs(psi) < 1e-280:
            continue
        assert abs(model.apply_lowering(params_a2, pair, x)) <= 1e-12 * abs(psi)


def test_lowering_on_constant(params_a2):
    from pdem.types import FunctionPair

    c = 0.7
    pair = FunctionPair(value=lambda x: c, derivative=lambda x: 0.0)
    x = 1.1
    expected = -math.sqrt(
        model.kinetic_weight(params_a2, x) / (params_a2.hbar * params_a2.omega)
    ) * model.alpha0(params_a2, x) * c
    assert model.apply_lowering(params_a2, pair, x) == pytest.approx(expected, rel=1e-15)


def _alpha0_prime(p, x):
    xa = x + p.a
    return p.b2 / xa**2 - 2.0 * p.wall_scale / xa**3


@pytest.mark.parametrize("n", range(4))
def test_hamiltonian_factorization(params_a2, n):
    # hbar w (A+ A- + 1/2) psi_n = E_n psi_n with analytic derivatives
    p = params_a2
    hw = p.hbar * p.omega
    e_n = model.energy(p, n).energy
    for x in np.linspace(-1.8, 12.0, 50):
        x = float(x)
        psi, dpsi, d2psi = model.wavefunction_with_derivatives(p, n, x)
        if psi == 0.0:
            continue
        a0 = model.alpha0(p, x)
        s = math.sqrt(model.kinetic_weight(p, x) / hw)
        ds = s / (x + p.a)
        g = s * (dpsi - a0 * psi)
        dg = ds * (dpsi - a0 * psi) + s * (d2psi - _alpha0_prime(p, x) * psi - a0 * dpsi)
        h_psi = hw * (-((ds * g + s * dg) + a0 * s * g) + 0.5 * psi)
        assert abs(h_psi - e_n * psi) <= 1e-10 * max(abs(e_n * psi), 1e-30)


def test_lowering_excited_state_not_proportional(params_a2):
    # the ladder algebra of the variable-mass well does not close: A- psi_1
    # is not a multiple of psi_0 (unlike the canonical oscillator)
    pair1 = model.bound_state_pair(params_a2, 1)
    xs = np.linspace(-1.5, 10.0, 40)
    peak = max(abs(model.wavefunction(params_a2, 0, float(x))) for x in xs)
    ratios = []
    for x in xs:
        x = float(x)
        psi0 = model.wavefunction(params_a2, 0, x)
        if abs(psi0) < 1e-6 * peak:
            continue
        ratios.append(model.apply_lowering(params_a2, pair1, x) / psi0)
    spread = (max(ratios) - min(ratios)) / abs(np.mean(ratios))
    assert spread > 0.5
