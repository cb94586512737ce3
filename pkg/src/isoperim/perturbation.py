"""Area-preserving perturbations of the unit circle and their effect on
the isoperimetric profile.

A perturbation field f(u) (a zero-mean Fourier series) moves the circle
radially; the first variation of the length of the arc with lower contact
point u and half-angle b is

    l(u) = -cot b ∫_u^{u+2b} f + f(u) + f(u + 2b),

closed form for Fourier data. Modes cos(nu), sin(nu) give l ≡ 0 exactly
when cos b sin nb − n sin b cos nb = 0; the zero set of
F(x, y) = cos y sin xy − x sin y cos xy catalogs all such pairs (x carries
the mode, y the half-angle). `profile_decrease_experiment` measures the
induced change of the profile itself through the arc-search oracle and
fits its first and second order in the perturbation size.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import disk as diskmod
from . import profile as profilemod
from .errors import (AreaNormalizationFailure, FitIllConditioned,
                     NonConvexPerturbation, OracleFailure, OutOfRange)
from .geometry import RadialCurve, TWO_PI
from .trig import TrigSeries, fit_periodic

HALF_PI = np.pi / 2.0


@dataclass(frozen=True)
class PerturbationField:
    """Zero-mean real Fourier series f(u) = Σ_{n≥1} a_n cos nu + b_n sin nu."""

    fourier_cos: tuple = ()
    fourier_sin: tuple = ()
    description: str = ""

    @staticmethod
    def mode(n: int, amplitude: float = 1.0, phase: str = "cos",
             description: str = "") -> "PerturbationField":
        if n < 1:
            raise ValueError("mode index must be >= 1")
        coeffs = (0.0,) * (n - 1) + (float(amplitude),)
        if phase == "cos":
            return PerturbationField(coeffs, (), description or f"cos({n}u)")
        return PerturbationField((), coeffs, description or f"sin({n}u)")

    def _series(self) -> TrigSeries:
        return TrigSeries(np.concatenate([[0.0], np.asarray(self.fourier_cos, float)]),
                          np.concatenate([[0.0], np.asarray(self.fourier_sin, float)]))

    def __call__(self, u):
        return self._series()(u)

    def integral_between(self, u0, u1):
        return self._series().integral_between(u0, u1)

    def power(self) -> float:
        """∫_0^{2π} f² du by Parseval."""
        a = np.asarray(self.fourier_cos, float)
        b = np.asarray(self.fourier_sin, float)
        return float(np.pi * (np.sum(a * a) + np.sum(b * b)))

    def is_zero(self) -> bool:
        return self.power() == 0.0


# --------------------------------------------------------------------------
# first variation
# --------------------------------------------------------------------------

def first_variation_l(f: PerturbationField, b: float, u) -> np.ndarray | float:
    """l(u) = -cot b ∫_u^{u+2b} f + f(u) + f(u+2b); exact for Fourier f."""
    b = float(b)
    if not 0.0 < b < HALF_PI:
        raise OutOfRange(f"contact half-angle must lie in (0, pi/2), got {b}")
    u_arr = np.asarray(u, dtype=float)
    integral = f.integral_between(u_arr, u_arr + 2.0 * b)
    out = -integral / np.tan(b) + f(u_arr) + f(u_arr + 2.0 * b)
    return out if u_arr.ndim else float(out)


def mean_l(f: PerturbationField, b: float, n_nodes: int = 4096) -> float:
    """∫_0^{2π} l(u) du by spectral trapezoid; identically 0 for zero-mean f."""
    u = np.linspace(0.0, TWO_PI, n_nodes, endpoint=False)
    return float(np.mean(first_variation_l(f, b, u)) * TWO_PI)


def mode_condition(n: int, b: float) -> float:
    """cos b sin nb − n sin b cos nb; its zeros make mode n profile-critical."""
    if n == 0:
        raise ValueError("mode index must be nonzero")
    return float(np.cos(b) * np.sin(n * b) - n * np.sin(b) * np.cos(n * b))


@dataclass(frozen=True)
class ModeRoot:
    """Half-angle b where the Fourier mode n satisfies l ≡ 0."""

    n: int
    b: float
    theta: float
    area: float


def find_mode_roots(n: int, n_scan: int = 10_000, delta: float = 1e-6) -> list:
    """All roots of the mode condition in (0, π/2), bisected to 1e-13."""
    if n < 2:
        raise ValueError("nontrivial modes start at n = 2 (n = 1 is translation)")
    grid = np.linspace(delta, HALF_PI - delta, n_scan)
    vals = np.array([mode_condition(n, b) for b in grid])
    roots = []
    for i in range(n_scan - 1):
        va, vb = vals[i], vals[i + 1]
        if va == 0.0:
            roots.append(float(grid[i]))
            continue
        if (va < 0.0) != (vb < 0.0):
            lo, hi = grid[i], grid[i + 1]
            flo = mode_condition(n, lo)
            for _ in range(200):
                mid = 0.5 * (lo + hi)
                fm = mode_condition(n, mid)
                if (flo < 0.0) == (fm < 0.0):
                    lo, flo = mid, fm
                else:
                    hi = mid
                if hi - lo < 1e-13:
                    break
            roots.append(0.5 * (lo + hi))
    return [ModeRoot(n=n, b=r, theta=r, area=diskmod.theta_to_area(r))
            for r in roots]


# --------------------------------------------------------------------------
# implicit zero-set of the mode condition
# --------------------------------------------------------------------------

def implicit_curve_sample(x_range, y_range, resolution: int = 400) -> np.ndarray:
    """Zero set of F(x, y) = cos y sin xy − x sin y cos xy by marching squares.

    Returns an (m, 2) array of edge-crossing points (unordered point cloud,
    deterministic cell-scan order). The vertical lines x ∈ {−1, 0, 1} lie in
    the zero set and show up as sign changes across them.
    """
    x_lo, x_hi = map(float, x_range)
    y_lo, y_hi = map(float, y_range)
    nx = ny = int(resolution)
    xs = np.linspace(x_lo, x_hi, nx)
    ys = np.linspace(y_lo, y_hi, ny)
    xg, yg = np.meshgrid(xs, ys, indexing="ij")
    vals = np.cos(yg) * np.sin(xg * yg) - xg * np.sin(yg) * np.cos(xg * yg)

    pts = []

    def emit(p0, v0, p1, v1):
        if v0 == 0.0:
            pts.append(p0)
            return
        if (v0 < 0.0) != (v1 < 0.0):
            t = v0 / (v0 - v1)
            pts.append((p0[0] + t * (p1[0] - p0[0]), p0[1] + t * (p1[1] - p0[1])))

    for i in range(nx - 1):
        for j in range(ny - 1):
            p00, p10 = (xs[i], ys[j]), (xs[i + 1], ys[j])
            p01, p11 = (xs[i], ys[j + 1]), (xs[i + 1], ys[j + 1])
            v00, v10 = vals[i, j], vals[i + 1, j]
            v01, v11 = vals[i, j + 1], vals[i + 1, j + 1]
            emit(p00, v00, p10, v10)
            emit(p00, v00, p01, v01)
            if i == nx - 2:
                emit(p10, v10, p11, v11)
            if j == ny - 2:
                emit(p01, v01, p11, v11)
    return np.array(pts) if pts else np.zeros((0, 2))


# --------------------------------------------------------------------------
# perturbed domains
# --------------------------------------------------------------------------

def build_perturbed_domain(f: PerturbationField, s: float) -> RadialCurve:
    """Radial domain λ(s)·(1 + s f(u)) with area exactly π.

    The uniform factor λ(s) = √(π/area) preserves the field's shape; the
    curve must stay convex (r² + 2r'² − r r'' > 0), which bounds |s|.
    """
    s = float(s)
    series = f._series()
    cos_c = s * series.cos_c
    cos_c[0] = 1.0
    curve = RadialCurve(TrigSeries(cos_c, s * series.sin_c))
    if curve.min_curvature() <= 0.0:
        raise NonConvexPerturbation(f"radial curve not convex at s = {s}")
    lam = np.sqrt(np.pi / curve.area())
    scaled = curve.scaled(lam)
    if abs(scaled.area() - np.pi) > 1e-12:
        raise AreaNormalizationFailure(
            f"area after rescaling off by {scaled.area() - np.pi:.3e}")
    return scaled


def translated_disk(offset: float) -> RadialCurve:
    """Unit disk centered at (offset, 0) in radial form (rigid-motion control)."""
    if not -1.0 < offset < 1.0:
        raise OutOfRange("offset must keep the origin inside the disk")
    fn = lambda u: offset * np.cos(u) + np.sqrt(1.0 - (offset * np.sin(u)) ** 2)
    return RadialCurve(fit_periodic(fn, 2048))


def aggregate_second_variation(f: PerturbationField) -> float:
    """−2∫_0^{2π} f² du = −2π Σ(a_n² + b_n²); strictly negative for f ≠ 0."""
    return -2.0 * f.power()


# --------------------------------------------------------------------------
# profile-decrease experiment
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class ExperimentConfig:
    """Controls for the profile-decrease fit."""

    s_grid: tuple = (1e-3, 2e-3, 3e-3, 4e-3, 5e-3)
    oracle_tol: float = 1e-6
    oracle: profilemod.OracleConfig = field(default_factory=profilemod.OracleConfig)
    threads: int = 1


@dataclass(frozen=True)
class ExperimentReport:
    """Fitted profile response I(s) ≈ I(0) + αs + βs² and its verdict."""

    area: float
    s_values: tuple
    profile_values: tuple
    alpha: float
    beta: float
    verdict: str            # first_order_decrease | second_order_decrease | no_decrease
    noise_floor: float
    intercept: float

    def to_dict(self) -> dict:
        return {
            "area": self.area,
            "s_values": list(self.s_values),
            "profile_values": list(self.profile_values),
            "alpha": self.alpha,
            "beta": self.beta,
            "verdict": self.verdict,
            "noise_floor": self.noise_floor,
            "intercept": self.intercept,
        }


def profile_decrease_experiment(f: PerturbationField, area: float,
                                config: ExperimentConfig = ExperimentConfig(),
                                domain_builder=None) -> ExperimentReport:
    """Measure I_{Ω_s}(area) over an s-grid and fit the leading orders.

    The profile at s = 0 is included in the fit and must agree with the
    closed-form disk profile within the oracle tolerance. The verdict is
    first_order_decrease when α clears the noise floor 10·tol/s_max,
    second_order_decrease when the profile moved but α does not clear it
    and β < 0, and no_decrease when the profile is flat within 5·tol
    (rigid motions).
    """
    s_values = (0.0,) + tuple(float(s) for s in config.s_grid)
    if len(s_values) < 4:
        raise FitIllConditioned("need at least three nonzero s values")
    builder = domain_builder or (lambda s: build_perturbed_domain(f, s))

    def profile_at(s):
        curve = builder(s)
        try:
            return profilemod.general_profile_oracle(curve, area, config.oracle)
        except Exception as exc:  # noqa: BLE001 - surfaced with context
            raise OracleFailure(f"profile oracle failed at s={s}: {exc}") from exc

    if config.threads > 1:
        with ThreadPoolExecutor(max_workers=config.threads) as tpe:
            values = tuple(tpe.map(profile_at, s_values))
    else:
        values = tuple(profile_at(s) for s in s_values)

    i_disk = diskmod.profile(area)
    if abs(values[0] - i_disk) > config.oracle_tol:
        raise OracleFailure(
            f"oracle at s=0 deviates from the disk profile by "
            f"{values[0] - i_disk:.3e} (tol {config.oracle_tol:.1e})")

    s_arr = np.asarray(s_values)
    design = np.stack([np.ones_like(s_arr), s_arr, s_arr ** 2], axis=-1)
    coef, *_ = np.linalg.lstsq(design, np.asarray(values), rcond=None)
    intercept, alpha, beta = (float(c) for c in coef)

    s_max = float(np.max(s_arr))
    noise_floor = 10.0 * config.oracle_tol / s_max
    flat = float(np.max(np.abs(np.asarray(values) - values[0])))
    if flat <= 5.0 * config.oracle_tol:
        verdict = "no_decrease"
    elif alpha < -noise_floor:
        verdict = "first_order_decrease"
    elif beta < 0.0:
        verdict = "second_order_decrease"
    else:
        verdict = "no_decrease"

    return ExperimentReport(
        area=float(area),
        s_values=s_values,
        profile_values=values,
        alpha=alpha,
        beta=beta,
        verdict=verdict,
        noise_floor=noise_floor,
        intercept=intercept,
    )
