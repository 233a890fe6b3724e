"""Named numerical checks run by ``bicoulomb verify``.

Each check returns a :class:`CheckResult` carrying the measured figure of
merit and the tolerance it was held to.  Randomized checks draw from a
``numpy`` generator seeded by the caller, so repeated runs are identical.
"""

from __future__ import annotations

import math
import time
from dataclasses import asdict, dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy import special as sp

from .bicomplex import Bicomplex, E1, E2, ONE, ZERO, real_norm
from .errors import NullConeError
from .hilbert import (
    QuadratureGrid,
    SampledKet,
    commutator_residual,
    expected_orthonormality,
    gaussian_ket,
    normalize,
    orthonormality_matrix,
    scalar_product,
)
from .params import ATOMIC_UNITS, PhysicalParams
from .spectrum import (
    EigenfunctionSpec,
    QuantumNumbers,
    all_states,
    degeneracy,
    energy,
    energy_symmetry_check,
    enumerate_states,
    radial_ode_residual,
    wavefunction_eval,
)
from .surfaces import surface_eval_idempotent, surface_eval_polynomial

EPS = 2.0 ** -52


@dataclass
class CheckResult:
    name: str
    passed: bool
    value: float
    tolerance: float
    detail: str = ""
    seconds: float = 0.0

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass
class VerifyConfig:
    seed: int = 0
    samples: int = 10_000
    n: Optional[int] = None
    l: Optional[int] = None
    extra: dict = field(default_factory=dict)


def _random_bicomplex(rng: np.random.Generator) -> Bicomplex:
    v = rng.uniform(-1, 1, 4) * 10.0 ** rng.uniform(-3, 3)
    return Bicomplex(complex(v[0], v[1]), complex(v[2], v[3]))


def _component_error(a: Bicomplex, b: Bicomplex, scale: tuple[float, float]) -> float:
    """Componentwise difference in units of ``EPS * scale``."""
    errs = []
    for x, y, s in ((a.c1, b.c1, scale[0]), (a.c2, b.c2, scale[1])):
        d = abs(x - y)
        errs.append(0.0 if d == 0 else d / (EPS * s) if s > 0 else math.inf)
    return max(errs)


def check_ring_axioms(cfg: VerifyConfig) -> CheckResult:
    rng = np.random.default_rng(cfg.seed)
    worst = 0.0
    for _ in range(cfg.samples):
        a, b, c = (_random_bicomplex(rng) for _ in range(3))
        m = [(abs(a.c1), abs(b.c1), abs(c.c1)), (abs(a.c2), abs(b.c2), abs(c.c2))]
        prod3 = (m[0][0] * m[0][1] * m[0][2], m[1][0] * m[1][1] * m[1][2])
        sum3 = (sum(m[0]), sum(m[1]))
        dist = (m[0][0] * (m[0][1] + m[0][2]), m[1][0] * (m[1][1] + m[1][2]))
        pair = (m[0][0] * m[0][1], m[1][0] * m[1][1])
        worst = max(
            worst,
            _component_error((a * b) * c, a * (b * c), prod3),
            _component_error((a + b) + c, a + (b + c), sum3),
            _component_error(a * (b + c), a * b + a * c, dist),
            _component_error(a * b, b * a, pair),
            _component_error(a + b, b + a, sum3),
            _component_error(a * ONE, a, (m[0][0], m[1][0])),
            _component_error(a + ZERO, a, (m[0][0], m[1][0])),
            _component_error(a + (-a), ZERO, (m[0][0], m[1][0])),
        )
    return CheckResult("ring-axioms", worst <= 4.0, worst, 4.0, "max error in ulp of per-component magnitude")


def check_norm_inequalities(cfg: VerifyConfig) -> CheckResult:
    rng = np.random.default_rng(cfg.seed + 1)
    slack = 8 * EPS
    worst = -math.inf
    for _ in range(cfg.samples):
        a, b = _random_bicomplex(rng), _random_bicomplex(rng)
        z = complex(*rng.normal(size=2))
        na, nb = real_norm(a), real_norm(b)
        worst = max(
            worst,
            -na,
            abs(real_norm(z * a) - abs(z) * na) / (abs(z) * na),
            (real_norm(a + b) - (na + nb)) / (na + nb),
            (real_norm(a * b) - math.sqrt(2) * na * nb) / (na * nb),
        )
    return CheckResult("norm-inequalities", worst <= slack, worst, slack, "largest relative violation")


def _random_ket(rng: np.random.Generator) -> SampledKet:
    parts = []
    for unit in (E1, E2):
        w = complex(*rng.normal(size=2))
        g = gaussian_ket(width=rng.uniform(0.5, 2.0), weights=(w, w), center=rng.uniform(-1, 1, 3))
        parts.append(g.scale(unit))
    return parts[0] + parts[1]


def check_scalar_product_axioms(cfg: VerifyConfig) -> CheckResult:
    rng = np.random.default_rng(cfg.seed + 2)
    grid = QuadratureGrid.build(r_cut=12.0, decay_length=2.0, l_max=3, n_r=60)
    pool = [_random_ket(rng) for _ in range(24)]
    zero = SampledKet.zero()
    tol = 1e-8
    worst = 0.0
    for _ in range(cfg.samples):
        i, k, m = rng.integers(len(pool), size=3)
        f, g, h = pool[i], pool[k], pool[m]
        alpha = _random_bicomplex(rng)
        fg, fh = scalar_product(f, g, grid), scalar_product(f, h, grid)
        ax1 = real_norm(scalar_product(f, g + h, grid) - (fg + fh))
        ax2 = real_norm(scalar_product(f, alpha * g, grid) - alpha * fg) / max(real_norm(alpha), 1e-300)
        ax3 = real_norm(fg - scalar_product(g, f, grid).dagger())
        ff = scalar_product(f, f, grid)
        ax4 = max(0.0, -ff.c1.real, -ff.c2.real, abs(ff.c1.imag), abs(ff.c2.imag))
        if ff.c1.real <= 0 or ff.c2.real <= 0:
            ax4 = math.inf
        worst = max(worst, ax1, ax2, ax3, ax4)
    z = scalar_product(zero, zero, grid)
    if z != ZERO:
        worst = math.inf
    return CheckResult("scalar-product-axioms", worst <= tol, worst, tol, "axioms 1-4 on random kets")


def check_ground_state(cfg: VerifyConfig) -> CheckResult:
    e = energy(1, 1, ATOMIC_UNITS)
    err = max(abs(e.x + 0.5), abs(e.y))
    return CheckResult("ground-state", err <= 1e-14, err, 1e-14)


def textbook_hydrogen(n: int, l: int, m: int, r, theta, phi):
    """Hydrogen eigenfunction in atomic units via scipy special functions."""
    rho = 2 * np.asarray(r) / n
    norm = math.sqrt((2 / n) ** 3 * math.factorial(n - l - 1) / (2 * n * math.factorial(n + l)))
    radial = norm * np.exp(-rho / 2) * rho ** l * sp.eval_genlaguerre(n - l - 1, 2 * l + 1, rho)
    return radial * sp.sph_harm_y(l, m, theta, phi)


def check_standard_limit(cfg: VerifyConfig) -> CheckResult:
    rng = np.random.default_rng(cfg.seed + 3)
    worst = 0.0
    for _ in range(100):
        n = int(rng.integers(1, 7))
        l = int(rng.integers(0, n))
        m = int(rng.integers(-l, l + 1))
        r, theta, phi = rng.uniform(0.1, 4 * n * n), rng.uniform(0, math.pi), rng.uniform(0, 2 * math.pi)
        psi = wavefunction_eval(QuantumNumbers(n, n, l, l, m, m), ATOMIC_UNITS, r, theta, phi)
        ref = complex(textbook_hydrogen(n, l, m, r, theta, phi))
        if psi.c1 != psi.c2:
            return CheckResult("standard-limit", False, math.inf, 1e-10, "components differ")
        worst = max(worst, abs(psi.c1 - ref) / abs(ref))
    return CheckResult("standard-limit", worst <= 1e-10, worst, 1e-10, "100 random points")


def check_orthonormality(cfg: VerifyConfig) -> CheckResult:
    worst = 0.0
    for params in (ATOMIC_UNITS, PhysicalParams(xi1=0.5, xi2=2.0)):
        states = all_states(3)
        dev = orthonormality_matrix(states, params).max_deviation(expected_orthonormality(states))
        worst = max(worst, dev)
    return CheckResult("orthonormality", worst < 1e-8, worst, 1e-8, "all sextuplets with n_s <= 3")


def check_ode_residual(cfg: VerifyConfig) -> CheckResult:
    if cfg.n is not None:
        l = cfg.l if cfg.l is not None else 0
        tol = 1e-6 if cfg.n <= 10 else 1e-4
        value = radial_ode_residual(cfg.n, l, 1.0, ATOMIC_UNITS)
        return CheckResult("ode-residual", value < tol, value, tol, f"(n, l) = ({cfg.n}, {l})")
    worst = 0.0
    for xi in (0.5, 1.0, 2.0):
        for n in range(1, 11):
            for l in range(n):
                worst = max(worst, radial_ode_residual(n, l, xi, ATOMIC_UNITS))
    big = radial_ode_residual(25, 12, 1.0, ATOMIC_UNITS)
    passed = worst < 1e-6 and big < 1e-4
    return CheckResult("ode-residual", passed, max(worst, big), 1e-6, f"n <= 10: {worst:.3e}; (25,12): {big:.3e}")


def check_degeneracy(cfg: VerifyConfig) -> CheckResult:
    bad = [
        (n1, n2)
        for n1 in range(1, 7)
        for n2 in range(1, 7)
        if sum(1 for _ in enumerate_states(n1, n2)) != degeneracy(n1, n2)
    ]
    return CheckResult("degeneracy", not bad, float(len(bad)), 0.0, f"mismatches: {bad}")


def check_symmetry(cfg: VerifyConfig) -> CheckResult:
    rng = np.random.default_rng(cfg.seed + 4)
    failures = 0
    for _ in range(1000):
        n1, n2 = (int(v) for v in rng.integers(1, 30, size=2))
        xi1, xi2 = rng.uniform(0.05, 5.0, size=2)
        if not energy_symmetry_check(QuantumNumbers(n1, n2), PhysicalParams(xi1=xi1, xi2=xi2), 1e-12):
            failures += 1
    return CheckResult("symmetry", failures == 0, float(failures), 1e-12, "1000 random (n, xi)")


def check_commutator(cfg: VerifyConfig) -> CheckResult:
    rng = np.random.default_rng(cfg.seed + 5)
    probes = rng.uniform(-2, 2, size=(40, 3))
    probes = probes[np.linalg.norm(probes, axis=1) > 0.2]
    kets = [gaussian_ket(), gaussian_ket(width=0.8, weights=(1.0, 0.5j), center=(0.3, -0.2, 0.1))]
    worst = 0.0
    for xi in ((1.0, 1.0), (0.5, 2.0)):
        params = PhysicalParams(xi1=xi[0], xi2=xi[1])
        for f in kets:
            for i in (1, 2, 3):
                for k in (1, 2, 3):
                    worst = max(worst, commutator_residual(i, k, f, params, probes))
    return CheckResult("commutator", worst < 1e-6, worst, 1e-6, "9 axis pairs, xi in {(1,1), (0.5,2)}")


def check_path_equivalence(cfg: VerifyConfig) -> CheckResult:
    xs = np.linspace(0.0, 120.0, 100)
    ys = np.linspace(-40.0, 40.0, 100)
    X, Y = np.meshgrid(xs, ys, indexing="ij")
    a = surface_eval_idempotent(25, 12, None, X, Y)
    b = surface_eval_polynomial(25, 12, None, X, Y)
    mod = np.hypot(a[0], a[1])
    mask = mod > 1e-12
    rel = float(np.max(np.hypot(a[0] - b[0], a[1] - b[1])[mask] / mod[mask]))
    cut_x = np.linspace(0.0, 120.0, 100)
    hy_cut = max(
        float(np.max(np.abs(surface_eval_idempotent(25, 12, None, cut_x, 0.0)[1]))),
        float(np.max(np.abs(surface_eval_polynomial(25, 12, None, cut_x, 0.0)[1]))),
    )
    passed = rel < 1e-9 and hy_cut < 1e-12
    return CheckResult("path-equivalence", passed, rel, 1e-9, f"hy on y=0 cut: {hy_cut:.3e}")


def check_null_cone(cfg: VerifyConfig) -> CheckResult:
    params = ATOMIC_UNITS
    spec = EigenfunctionSpec(QuantumNumbers(2, 2), {(1, 0, 0): 1.0, (1, 1, 0): 0.5j})
    ket = SampledKet.from_spec(spec, params)
    grid = QuadratureGrid.for_states([QuantumNumbers(2, 2, 1, 1)], params)
    ff = scalar_product(ket, ket, grid)
    try:
        normalize(ket, grid)
        raised = False
    except NullConeError:
        raised = True
    passed = ff.is_null_cone() and raised
    return CheckResult("null-cone", passed, abs(ff.c2), 0.0, f"(f, f) = {ff}")


CHECKS: dict[str, Callable[[VerifyConfig], CheckResult]] = {
    "ground-state": check_ground_state,
    "standard-limit": check_standard_limit,
    "orthonormality": check_orthonormality,
    "ode-residual": check_ode_residual,
    "degeneracy": check_degeneracy,
    "symmetry": check_symmetry,
    "ring-axioms": check_ring_axioms,
    "norm-inequalities": check_norm_inequalities,
    "scalar-product-axioms": check_scalar_product_axioms,
    "commutator": check_commutator,
    "path-equivalence": check_path_equivalence,
    "null-cone": check_null_cone,
}


def run_checks(names=None, config: Optional[VerifyConfig] = None) -> list[CheckResult]:
    config = config or VerifyConfig()
    names = list(names) if names else list(CHECKS)
    results = []
    for name in names:
        t0 = time.perf_counter()
        res = CHECKS[name](config)
        res.seconds = round(time.perf_counter() - t0, 3)
        results.append(res)
    return results
