"""Named verification checks driven by the verify command and the test suite.

Each check compares a closed form against an independent route (quadrature,
finite differences, recurrence identities) and reports a measured worst case
next to its bound, so failures carry numbers rather than booleans.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import canonical, limits, model, oracle
from .canonical import LadderDirection
from .types import FunctionPair


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    measured: str
    bound: str
    detail: str = ""

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        extra = f" ({self.detail})" if self.detail else ""
        return f"{status} {self.name}: measured={self.measured} bound={self.bound}{extra}"


def bound_overlap(params, m, n, tol=1e-11):
    """<psi_m, psi_n> over the whole domain (-a, infinity).

    Substituting u = 1/(x+a) maps the infinite tail to a compact interval and
    turns the slow power-law decay of near-threshold states into a bounded
    integrand, so plain adaptive quadrature reaches 1e-10 accuracy.  The
    integrand underflows to exact zero inside the wall layer, so the upper
    cutoff in u only needs to overshoot it.
    """
    a = params.a
    u_hi = (900.0 + 4.0 * params.b2 * math.log(1e3)) / (2.0 * params.wall_scale)

    def integrand(u):
        x = 1.0 / u - a
        return (
            model.wavefunction(params, m, x)
            * model.wavefunction(params, n, x)
            / (u * u)
        )

    return oracle.integrate(integrand, 1e-12, u_hi, tol)


def check_level_counts():
    expected = {1.0: 0, 2.0: 3, 3.0: 8, 4.0: 15}
    got = {a: model.max_level(model.ModelParams(a=a)) for a in expected}
    ok = got == expected
    return CheckResult(
        "level-counts", ok, str(got), str(expected), "bound levels per a, unit constants"
    )


def check_ground_state(a_values=(1.0, 2.0, 3.0, 4.0, 10.0)):
    worst = 0.0
    for a in a_values:
        p = model.ModelParams(a=a)
        e0 = model.energy(p, 0).energy
        worst = max(worst, abs(e0 - 0.5 * p.hbar * p.omega))
    ok = worst <= 4.0 * np.finfo(float).eps
    return CheckResult(
        "ground-state", ok, f"{worst:.3e}", "4 eps", "E_0 equals hbar*omega/2 exactly"
    )


def check_spectrum_shape(a_values=(1.0, 2.0)):
    detail = "gaps positive and decreasing; all levels at or below the depth"
    for a in a_values:
        p = model.ModelParams(a=a)
        nmax = model.max_level(p)
        energies = [model.energy(p, n).energy for n in range(nmax + 1)]
        v_inf = model.well_depth(p)
        gaps = [b - c for b, c in zip(energies[1:], energies)]
        if any(g <= 0.0 for g in gaps):
            return CheckResult("spectrum-shape", False, f"a={a}: non-positive gap", ">0", detail)
        if any(g2 >= g1 for g1, g2 in zip(gaps, gaps[1:])):
            return CheckResult("spectrum-shape", False, f"a={a}: gaps not decreasing", "", detail)
        if any(e > v_inf + 1e-12 for e in energies):
            return CheckResult("spectrum-shape", False, f"a={a}: level above depth", "<= V_inf", detail)
    return CheckResult("spectrum-shape", True, "ok", "", detail)


def check_orthonormality(a_values=(1.0, 2.0), tol=1e-8):
    worst = 0.0
    for a in a_values:
        p = model.ModelParams(a=a)
        nmax = model.max_level(p)
        for m in range(nmax + 1):
            for n in range(m, nmax + 1):
                v = bound_overlap(p, m, n)
                worst = max(worst, abs(v - (1.0 if m == n else 0.0)))
    return CheckResult(
        "orthonormality", worst <= tol, f"{worst:.3e}", f"{tol:.0e}",
        f"|<m|n> - delta| over all pairs, a in {list(a_values)}",
    )


def check_dual_form(a_values=(1.0, 2.0), tol=1e-10, points=200):
    worst = 0.0
    for a in a_values:
        p = model.ModelParams(a=a)
        xs = np.linspace(-a + 0.02 * a, a + 10.0 / p.lambda0, points)
        for n in range(model.max_level(p) + 1):
            for x in xs:
                vb = model.wavefunction(p, n, float(x), model.WavefunctionForm.BESSEL)
                vl = model.wavefunction(p, n, float(x), model.WavefunctionForm.LAGUERRE)
                if vb == 0.0 and vl == 0.0:
                    continue
                worst = max(worst, abs(vb - vl) / max(abs(vb), abs(vl)))
    return CheckResult(
        "dual-form", worst <= tol, f"{worst:.3e}", f"{tol:.0e}",
        "Bessel vs Laguerre closed forms on 200-point grids",
    )


def _interior_grid(lo, hi, count):
    span = hi - lo
    return np.linspace(lo + 0.05 * span, hi - 0.05 * span, count)


def check_ode_residual(a_values=(1.0, 2.0), tol=1e-6):
    worst = 0.0
    for a in a_values:
        p = model.ModelParams(a=a)
        xs = _interior_grid(-a + 1e-3 * a, a + 12.0 / p.lambda0, 160)
        for n in range(model.max_level(p) + 1):
            e = model.energy(p, n).energy
            psi = lambda t: model.wavefunction_with_derivatives(p, n, t)
            for x in xs:
                worst = max(worst, oracle.ode_residual(p, psi, e, float(x)))
    return CheckResult(
        "ode-residual", worst <= tol, f"{worst:.3e}", f"{tol:.0e}",
        "bound states, analytic derivatives, interior 90% of the domain",
    )


def check_continuum_residual(a=2.0, fractions=(1.25, 1.5, 2.0), tol=1e-6):
    p = model.ModelParams(a=a)
    worst = 0.0
    for frac in fractions:
        e = frac * model.well_depth(p)
        state = model.continuum_state(p, e)
        xs = _interior_grid(-a + a / 50.0, a + 12.0 / p.lambda0, 120)
        psi = lambda t: model.continuum_wavefunction_with_derivatives(state, p, t)
        for x in xs:
            worst = max(worst, oracle.ode_residual(p, psi, e, float(x)))
    return CheckResult(
        "continuum-residual", worst <= tol, f"{worst:.3e}", f"{tol:.0e}",
        f"scattering states at E/V_inf in {list(fractions)}, a={a}",
    )


def _gaussian_battery():
    """Test functions p(x) exp(-x^2/2) with analytic derivative triples."""
    polys = [
        np.polynomial.Polynomial([1.0]),
        np.polynomial.Polynomial([0.0, 1.0]),
        np.polynomial.Polynomial([-1.0, 0.0, 1.0]),
        np.polynomial.Polynomial([0.0, -0.5, 0.0, 1.0]),
        np.polynomial.Polynomial([0.3, 0.0, -3.0, 0.0, 1.0]),
    ]
    out = []
    for p in polys:
        dp = p.deriv()
        d2p = dp.deriv()

        def g(x, p=p):
            return float(p(x)) * math.exp(-0.5 * x * x)

        def dg(x, p=p, dp=dp):
            return (float(dp(x)) - x * float(p(x))) * math.exp(-0.5 * x * x)

        def d2g(x, p=p, dp=dp, d2p=d2p):
            return (
                float(d2p(x)) - 2.0 * x * float(dp(x)) + (x * x - 1.0) * float(p(x))
            ) * math.exp(-0.5 * x * x)

        out.append((g, dg, d2g))
    return out


def check_factorization(a_values=(2.0,), tol_annihilate=1e-12, tol_commutator=1e-8):
    worst_lower = 0.0
    for a in a_values:
        p = model.ModelParams(a=a)
        pair = model.bound_state_pair(p, 0)
        for x in np.linspace(-a + 0.05 * a, a + 8.0 / p.lambda0, 60):
            psi = model.wavefunction(p, 0, float(x))
            if abs(psi) < 1e-280:
                continue
            worst_lower = max(worst_lower, abs(model.apply_lowering(p, pair, float(x))) / abs(psi))

    cp = canonical.CanonicalParams()
    pair0 = canonical.canonical_state_pair(cp, 0)
    worst_can = 0.0
    for x in np.linspace(-3.0, 3.0, 25):
        psi = canonical.canonical_wavefunction(cp, 0, float(x))
        worst_can = max(
            worst_can,
            abs(canonical.apply_ladder(cp, LadderDirection.LOWER, pair0, float(x))) / abs(psi),
        )

    lam0 = cp.lambda0
    rt = math.sqrt(2.0) * lam0
    worst_comm = 0.0
    for g, dg, d2g in _gaussian_battery():
        raise_pair = FunctionPair(
            value=lambda x, g=g, dg=dg: canonical.apply_ladder(
                cp, LadderDirection.RAISE, FunctionPair(g, dg), x
            ),
            derivative=lambda x, g=g, dg=dg, d2g=d2g: (
                lam0**2 * g(x) + lam0**2 * x * dg(x) - d2g(x)
            ) / rt,
        )
        lower_pair = FunctionPair(
            value=lambda x, g=g, dg=dg: canonical.apply_ladder(
                cp, LadderDirection.LOWER, FunctionPair(g, dg), x
            ),
            derivative=lambda x, g=g, dg=dg, d2g=d2g: (
                lam0**2 * g(x) + lam0**2 * x * dg(x) + d2g(x)
            ) / rt,
        )
        for x in np.linspace(-3.0, 3.0, 25):
            x = float(x)
            comm = canonical.apply_ladder(
                cp, LadderDirection.LOWER, raise_pair, x
            ) - canonical.apply_ladder(cp, LadderDirection.RAISE, lower_pair, x)
            worst_comm = max(worst_comm, abs(comm - g(x)) / max(1.0, abs(g(x))))

    ok = worst_lower <= tol_annihilate and worst_can <= tol_annihilate and worst_comm <= tol_commutator
    return CheckResult(
        "factorization", ok,
        f"lower={worst_lower:.2e} canonical={worst_can:.2e} commutator={worst_comm:.2e}",
        f"{tol_annihilate:.0e}/{tol_annihilate:.0e}/{tol_commutator:.0e}",
        "ground-state annihilation and [lower, raise] = 1",
    )


def check_eigensolver(a=2.0, grid_points=32000, x_max=140.0, levels=(0, 1), tol=1e-5):
    """FD eigenvalues against the closed-form spectrum on an adequate box.

    Near-threshold levels converge only polynomially in the box size (their
    tails are power laws), so the default validates the strongly bound levels
    at 1e-5; wider boxes and per-level bounds live in the test suite.
    """
    p = model.ModelParams(a=a)
    grid = oracle.Grid(x_min=-a + 1e-3 * a, x_max=x_max, count=grid_points)
    matrix = oracle.build_hamiltonian(p, grid)
    lams = oracle.lowest_eigenvalues(matrix, max(levels) + 1)
    worst = 0.0
    for n in levels:
        exact = model.energy(p, n).energy
        worst = max(worst, abs(lams[n] - exact) / abs(exact))
    return CheckResult(
        "eigensolver", worst <= tol, f"{worst:.3e}", f"{tol:.0e}",
        f"finite-difference levels {list(levels)} vs closed form, a={a}, "
        f"{grid_points} points on (-a+1e-3 a, {x_max}]",
    )


def check_convergence(a=2.0, x_max=300.0, counts=(12500, 25000, 50000, 100000),
                      level=0, window=(3.5, 4.5), floor=1e-9):
    p = model.ModelParams(a=a)
    exact = model.energy(p, level).energy
    errs = []
    for count in counts:
        grid = oracle.Grid(x_min=-a + 1e-3 * a, x_max=x_max, count=count)
        lams = oracle.lowest_eigenvalues(oracle.build_hamiltonian(p, grid), level + 1)
        errs.append(abs(lams[level] - exact))
    ratios = [e1 / e2 for e1, e2 in zip(errs, errs[1:]) if e1 > floor and e2 > floor]
    ok = all(window[0] <= r <= window[1] for r in ratios) and ratios
    return CheckResult(
        "convergence", bool(ok),
        "ratios=" + ",".join(f"{r:.2f}" for r in ratios),
        f"[{window[0]}, {window[1]}]",
        f"error reduction per grid halving, level {level}, a={a}",
    )


def check_bessel_hermite(rate_nus=(1e4, 4e4, 1.6e5), sup_nu=2e8, sup_tol=0.05,
                         window=(0.35, 0.65)):
    from . import specfun

    grid = np.linspace(-2.0, 2.0, 17)

    def err(n, nu):
        return max(
            abs(limits.scaled_bessel(n, float(x), nu) - specfun.hermite(n, float(x)))
            for x in grid
        )

    ratios = []
    for n in range(1, 7):
        for nu in rate_nus:
            e1, e4 = err(n, nu), err(n, 4.0 * nu)
            if e1 > 1e-8:
                ratios.append(e4 / e1)
    rate_ok = all(window[0] <= r <= window[1] for r in ratios)

    sup = max(
        abs(limits.scaled_bessel(n, float(x), sup_nu) - specfun.hermite(n, float(x)))
        / max(1.0, abs(specfun.hermite(n, float(x))))
        for n in range(7)
        for x in grid
    )
    ok = rate_ok and sup <= sup_tol
    return CheckResult(
        "bessel-hermite", ok,
        f"sup@nu={sup_nu:.0e}: {sup:.3f}; rate in [{min(ratios):.2f}, {max(ratios):.2f}]",
        f"sup<={sup_tol}, rate in {list(window)}",
        "scaled Bessel polynomials against Hermite, O(nu^-1/2) rate",
    )


def check_wavefunction_limit(a_values=(3.0, 5.0, 10.0, 20.0), levels=(0, 1, 2),
                             final_over_first=0.2):
    ok = True
    summary = []
    for n in levels:
        ds = [limits.wavefunction_distance(model.ModelParams(a=a), n) for a in a_values]
        decreasing = all(d2 < d1 for d1, d2 in zip(ds, ds[1:]))
        ratio = ds[-1] / ds[0]
        ok = ok and decreasing and ratio <= final_over_first
        summary.append(f"n={n}: ratio={ratio:.3f} dec={decreasing}")
    return CheckResult(
        "wavefunction-limit", ok, "; ".join(summary), f"decreasing, ratio<={final_over_first}",
        "sign-minimized L2 distance to the canonical states",
    )


def check_continuum_vanishing(a_values=(2.0, 4.0), q=2.0, x=1.0):
    """|psi_E| falls with a at fixed q.  a = 8 is excluded: there the Kummer
    series cancels below double precision (about 15 digits lost) and the
    evaluator refuses rather than return noise."""
    sweep = limits.continuum_magnitude(
        [model.ModelParams(a=a) for a in a_values], q, x
    )
    vals = sweep.metric_values
    ok = all(v2 < v1 for v1, v2 in zip(vals, vals[1:]))
    return CheckResult(
        "continuum-vanishing", ok,
        ", ".join(f"a={a}: {v:.4f}" for a, v in zip(sweep.parameter_values, vals)),
        "strictly decreasing",
        f"|psi_E({x})| at fixed q={q}",
    )


DEFAULT_CHECKS = (
    "level-counts",
    "ground-state",
    "spectrum-shape",
    "orthonormality",
    "dual-form",
    "ode-residual",
    "continuum-residual",
    "factorization",
    "eigensolver",
    "bessel-hermite",
)

ALL_CHECKS = DEFAULT_CHECKS + ("convergence", "wavefunction-limit", "continuum-vanishing")


def run_checks(names=None, a_values=(1.0, 2.0), grid_points=32000, eigen_tol=1e-5):
    """Run the named checks (default set if names is None); returns results."""
    if names is None:
        names = DEFAULT_CHECKS
    available = {
        "level-counts": check_level_counts,
        "ground-state": check_ground_state,
        "spectrum-shape": lambda: check_spectrum_shape(a_values),
        "orthonormality": lambda: check_orthonormality(a_values),
        "dual-form": lambda: check_dual_form(a_values),
        "ode-residual": lambda: check_ode_residual(a_values),
        "continuum-residual": check_continuum_residual,
        "factorization": check_factorization,
        "eigensolver": lambda: check_eigensolver(grid_points=grid_points, tol=eigen_tol),
        "bessel-hermite": check_bessel_hermite,
        "convergence": check_convergence,
        "wavefunction-limit": check_wavefunction_limit,
        "continuum-vanishing": check_continuum_vanishing,
    }
    unknown = [n for n in names if n not in available]
    if unknown:
        raise ValueError(f"unknown checks: {unknown}; available: {sorted(available)}")
    return [available[n]() for n in names]
