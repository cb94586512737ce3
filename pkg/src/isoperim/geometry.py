"""Smooth convex plane curves and their differential geometry.

Two boundary representations are provided. `SupportCurve` stores a truncated
Fourier support function h(θ) parametrized by the outward normal angle;
convexity is the positivity of ρ = h + h'' and closure is automatic.
`RadialCurve` stores r(u) for star-shaped boundaries parametrized by the
polar angle, used for radial perturbations of the circle. Both expose the
same sampling surface (position, tangent, normal, curvature, parametric
speed) so the arc machinery works on either.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

import numpy as np

from .errors import NonConvex, NumericalError
from .trig import TrigSeries, fit_periodic

TWO_PI = 2.0 * np.pi

# dense grid size for convexity / extrema scans
SCAN_NODES = 4096


@dataclass(frozen=True, eq=False)
class CurvePoint:
    """Boundary point with its Frenet data at parameter theta."""

    theta: float
    position: np.ndarray
    tangent: np.ndarray
    normal: np.ndarray
    curvature: float


class CurveSamples(NamedTuple):
    """Vectorized boundary samples; arrays are indexed like `theta`."""

    theta: np.ndarray
    position: np.ndarray   # shape (n, 2)
    tangent: np.ndarray    # shape (n, 2)
    normal: np.ndarray     # shape (n, 2)
    curvature: np.ndarray
    speed: np.ndarray      # |dC/dθ|


class PlaneBoundary:
    """Shared surface of both curve representations."""

    def sample(self, theta) -> CurveSamples:  # pragma: no cover - abstract
        raise NotImplementedError

    def area(self) -> float:  # pragma: no cover - abstract
        raise NotImplementedError

    def contains(self, point, tol: float = 1e-9) -> bool:  # pragma: no cover
        raise NotImplementedError

    def moment_between(self, t0, t1):
        """∫ (x y' − y x') dt over [t0, t1]; twice the swept Green area."""
        return self._moment_series.integral_between(t0, t1)

    def point(self, theta: float) -> CurvePoint:
        s = self.sample(np.array([float(theta)]))
        return CurvePoint(
            theta=float(theta),
            position=s.position[0],
            tangent=s.tangent[0],
            normal=s.normal[0],
            curvature=float(s.curvature[0]),
        )

    def speed(self, theta):
        return self.sample(np.atleast_1d(np.asarray(theta, float))).speed

    def perimeter(self) -> float:  # pragma: no cover - abstract
        raise NotImplementedError


class SupportCurve(PlaneBoundary):
    """Convex boundary from a truncated Fourier support function.

    cos_coeffs holds a_m for cos(mθ), m = 0..M; sin_coeffs holds b_m for
    sin(mθ), m = 1..M. All geometry (position, curvature, area, arclength)
    derives from these coefficients in closed form.
    """

    def __init__(self, cos_coeffs, sin_coeffs=()):
        self.cos_coeffs = tuple(float(c) for c in cos_coeffs)
        self.sin_coeffs = tuple(float(c) for c in sin_coeffs)
        if not self.cos_coeffs:
            raise ValueError("need at least the constant support coefficient")

    # --- series ------------------------------------------------------------

    @cached_property
    def h_series(self) -> TrigSeries:
        return TrigSeries(np.array(self.cos_coeffs),
                          np.array((0.0,) + self.sin_coeffs))

    @cached_property
    def rho_series(self) -> TrigSeries:
        """Radius of curvature ρ = h + h'' (Fourier multiplier 1 − m²)."""
        h = self.h_series
        k = np.arange(h.order + 1, dtype=float)
        mult = 1.0 - k * k
        return TrigSeries(mult * h.cos_c, mult * h.sin_c)

    @cached_property
    def _h_prime(self) -> TrigSeries:
        return self.h_series.derivative()

    @cached_property
    def _moment_series(self) -> TrigSeries:
        # x y' − y x' = (C·N)(h + h'') = h·ρ for the normal-angle parametrization
        return self.h_series.product(self.rho_series)

    @cached_property
    def _min_rho(self) -> float:
        t = np.linspace(0.0, TWO_PI, SCAN_NODES, endpoint=False)
        return float(np.min(self.rho_series(t)))

    # --- constructors --------------------------------------------------------

    @staticmethod
    def disk(radius: float = 1.0) -> "SupportCurve":
        return SupportCurve((float(radius),))

    @staticmethod
    def ellipse(a: float, b: float) -> "SupportCurve":
        """Axis-aligned ellipse with semi-axes a (x) and b (y)."""
        if a <= 0 or b <= 0:
            raise ValueError("semi-axes must be positive")
        fn = lambda t: np.sqrt(a * a * np.cos(t) ** 2 + b * b * np.sin(t) ** 2)
        series = fit_periodic(fn)
        return SupportCurve(tuple(series.cos_c), tuple(series.sin_c[1:]))

    @staticmethod
    def from_support_function(fn, n_samples: int = 4096) -> "SupportCurve":
        series = fit_periodic(fn, n_samples)
        return SupportCurve(tuple(series.cos_c), tuple(series.sin_c[1:]))

    # --- geometry ------------------------------------------------------------

    def h(self, theta):
        return self.h_series(theta)

    def rho(self, theta):
        return self.rho_series(theta)

    def kappa(self, theta):
        rho = self.rho_series(theta)
        return 1.0 / rho

    def require_convex(self, margin: float = 0.0):
        if self._min_rho <= margin:
            raise NonConvex(f"h + h'' has minimum {self._min_rho:.3e} <= {margin}")

    def sample(self, theta) -> CurveSamples:
        theta = np.atleast_1d(np.asarray(theta, dtype=float))
        h = self.h_series(theta)
        hp = self._h_prime(theta)
        rho = self.rho_series(theta)
        if np.any(rho <= 0.0):
            raise NonConvex("h + h'' <= 0 at a requested angle")
        ct, st = np.cos(theta), np.sin(theta)
        position = np.stack([h * ct - hp * st, h * st + hp * ct], axis=-1)
        normal = np.stack([ct, st], axis=-1)
        tangent = np.stack([-st, ct], axis=-1)
        return CurveSamples(theta, position, tangent, normal, 1.0 / rho, rho)

    def area(self) -> float:
        """Enclosed area, exact for Fourier data (Parseval on ½∮h(h+h''))."""
        self.require_convex()
        h = self.h_series
        k = np.arange(h.order + 1, dtype=float)
        mult = 1.0 - k * k
        quad = h.cos_c[0] ** 2 * TWO_PI + np.pi * np.sum(
            mult[1:] * (h.cos_c[1:] ** 2 + h.sin_c[1:] ** 2))
        return float(quad / 2.0)

    def perimeter(self) -> float:
        return TWO_PI * self.cos_coeffs[0]

    def normalized_to(self, target_area: float) -> "SupportCurve":
        """Uniformly rescale so the enclosed area equals target_area."""
        if target_area <= 0.0:
            raise ValueError("target area must be positive")
        lam = np.sqrt(target_area / self.area())
        return SupportCurve(tuple(lam * c for c in self.cos_coeffs),
                            tuple(lam * c for c in self.sin_coeffs))

    @cached_property
    def _support_table(self):
        t = np.linspace(0.0, TWO_PI, 720, endpoint=False)
        normals = np.stack([np.cos(t), np.sin(t)], axis=-1)
        return normals, self.h_series(t)

    def contains(self, point, tol: float = 1e-9) -> bool:
        """Support test P·N(φ) ≤ h(φ) on a dense grid of directions."""
        return self.contains_many(np.asarray(point, float)[None, :], tol)

    def contains_many(self, points, tol: float = 1e-9) -> bool:
        normals, h = self._support_table
        margins = h[None, :] - np.asarray(points, float) @ normals.T
        return bool(np.min(margins) >= -tol)

    # --- arclength -----------------------------------------------------------

    def arclength_between(self, t0, t1):
        """∫ ρ dθ over [t0, t1], exact."""
        return self.rho_series.integral_between(t0, t1)

    def theta_at_arclength(self, theta_ref: float, s: float) -> float:
        """Invert the arclength map from theta_ref (guarded Newton)."""
        self.require_convex()
        lo_rho = self._min_rho
        theta = theta_ref + s / max(self.rho(theta_ref), lo_rho)
        for _ in range(100):
            g = self.arclength_between(theta_ref, theta) - s
            step = g / self.rho(theta)
            theta -= step
            if abs(step) < 1e-15 * max(1.0, abs(theta)):
                break
        if abs(self.arclength_between(theta_ref, theta) - s) > 1e-11:
            raise NumericalError("arclength inversion did not converge")
        return float(theta)

    # --- misc ---------------------------------------------------------------

    def spec_dict(self) -> dict:
        return {"support_cos": list(self.cos_coeffs),
                "support_sin": list(self.sin_coeffs)}

    def domain_id(self) -> str:
        payload = json.dumps(self.spec_dict(), sort_keys=True)
        return hashlib.sha256(payload.encode()).hexdigest()[:16]

    def __repr__(self):
        return f"SupportCurve(modes={self.h_series.order}, area={self.area():.6g})"


class RadialCurve(PlaneBoundary):
    """Star-shaped boundary r(u)·(cos u, sin u) with Fourier radial profile."""

    def __init__(self, radius_series: TrigSeries):
        self.radius_series = radius_series

    @staticmethod
    def from_function(fn, n_samples: int = 4096) -> "RadialCurve":
        return RadialCurve(fit_periodic(fn, n_samples))

    @cached_property
    def _moment_series(self) -> TrigSeries:
        # x y' − y x' = r² in polar parametrization
        return self.radius_series.product(self.radius_series)

    @cached_property
    def _r_prime(self) -> TrigSeries:
        return self.radius_series.derivative()

    @cached_property
    def _r_second(self) -> TrigSeries:
        return self._r_prime.derivative()

    def r(self, u):
        return self.radius_series(u)

    def sample(self, u) -> CurveSamples:
        u = np.atleast_1d(np.asarray(u, dtype=float))
        r = self.radius_series(u)
        rp = self._r_prime(u)
        rpp = self._r_second(u)
        cu, su = np.cos(u), np.sin(u)
        position = np.stack([r * cu, r * su], axis=-1)
        dx = rp * cu - r * su
        dy = rp * su + r * cu
        w = np.hypot(dx, dy)
        tangent = np.stack([dx / w, dy / w], axis=-1)
        normal = np.stack([tangent[..., 1], -tangent[..., 0]], axis=-1)
        curvature = (r * r + 2.0 * rp * rp - r * rpp) / w ** 3
        return CurveSamples(u, position, tangent, normal, curvature, w)

    def area(self) -> float:
        c = self.radius_series.cos_c
        s = self.radius_series.sin_c
        return float(np.pi * c[0] ** 2 + (np.pi / 2.0) * np.sum(c[1:] ** 2 + s[1:] ** 2))

    def perimeter(self) -> float:
        u = np.linspace(0.0, TWO_PI, SCAN_NODES, endpoint=False)
        return float(np.mean(self.sample(u).speed) * TWO_PI)

    def min_curvature(self) -> float:
        u = np.linspace(0.0, TWO_PI, SCAN_NODES, endpoint=False)
        return float(np.min(self.sample(u).curvature))

    def contains(self, point, tol: float = 1e-9) -> bool:
        return self.contains_many(np.asarray(point, float)[None, :], tol)

    def contains_many(self, points, tol: float = 1e-9) -> bool:
        p = np.asarray(points, dtype=float)
        rad = np.hypot(p[:, 0], p[:, 1])
        bound = self.radius_series(np.arctan2(p[:, 1], p[:, 0]))
        return bool(np.all(rad <= bound + tol))

    def scaled(self, lam: float) -> "RadialCurve":
        rs = self.radius_series
        return RadialCurve(TrigSeries(lam * rs.cos_c, lam * rs.sin_c))

    def __repr__(self):
        return f"RadialCurve(modes={self.radius_series.order}, area={self.area():.6g})"


# --------------------------------------------------------------------------
# classification
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class DomainClassReport:
    """Vertex structure, curvature extremes and symmetry-class verdict."""

    is_class_A: bool
    vertex_thetas: tuple
    kappa_max: float
    kappa_min: float
    area: float
    perimeter: float
    is_disk: bool = False
    degenerate: bool = False


SYMMETRY_TOL = 1e-12
DEGENERATE_KPP_TOL = 1e-8


def _is_disk_coeffs(curve: SupportCurve, tol: float = SYMMETRY_TOL) -> bool:
    scale = max(abs(curve.cos_coeffs[0]), 1.0)
    rest = list(curve.cos_coeffs[1:]) + list(curve.sin_coeffs)
    return all(abs(c) <= tol * scale for c in rest)


def _bisect_root(fn, lo: float, hi: float, tol: float = 1e-12) -> float:
    flo = fn(lo)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        fm = fn(mid)
        if hi - lo < tol:
            return mid
        if (flo < 0.0) == (fm < 0.0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def curvature_arclength_derivatives(curve: SupportCurve, theta: float):
    """(dκ/ds, d²κ/ds², d³κ/ds³) at a boundary angle, from the ρ series."""
    rho_s = curve.rho_series
    rho1_s = rho_s.derivative()
    rho2_s = rho1_s.derivative()
    rho3_s = rho2_s.derivative()
    rho = rho_s(theta)
    r1, r2, r3 = rho1_s(theta), rho2_s(theta), rho3_s(theta)
    kap = 1.0 / rho
    k_t = -r1 / rho ** 2
    k_tt = -r2 / rho ** 2 + 2.0 * r1 ** 2 / rho ** 3
    k_ttt = -r3 / rho ** 2 + 6.0 * r1 * r2 / rho ** 3 - 6.0 * r1 ** 3 / rho ** 4
    # chain rule through dθ/ds = κ
    k_s = k_t * kap
    k_ss = (k_tt * kap + k_t ** 2) * kap
    k_sss = ((k_ttt * kap + 3.0 * k_t * k_tt) * kap + (k_tt * kap + k_t ** 2) * k_t) * kap
    return k_s, k_ss, k_sss


def find_vertices(curve: SupportCurve, n_scan: int = SCAN_NODES):
    """Roots of κ'(θ) (equivalently ρ'(θ)) by sign-change scan + bisection."""
    rho1 = curve.rho_series.derivative()
    t = np.linspace(0.0, TWO_PI, n_scan, endpoint=False)
    vals = rho1(t)
    roots = []
    for i in range(n_scan):
        j = (i + 1) % n_scan
        a, b = vals[i], vals[j]
        lo, hi = t[i], t[i] + (TWO_PI / n_scan)
        if a == 0.0:
            roots.append(lo)
        elif (a < 0.0) != (b < 0.0):
            roots.append(_bisect_root(rho1, lo, hi))
    # dedupe near-identical roots (including wrap-around)
    uniq = []
    wrapped = sorted((x % TWO_PI) - (TWO_PI if (x % TWO_PI) > TWO_PI - 1e-6 else 0.0)
                     for x in roots)
    for r in wrapped:
        if all(min(abs(r - u), TWO_PI - abs(r - u)) > 1e-9 for u in uniq):
            uniq.append(r)
    return uniq


def classify(curve: SupportCurve, n_scan: int = SCAN_NODES) -> DomainClassReport:
    """Locate vertices, report curvature extremes and the symmetry class.

    The disk is reported as a distinguished degenerate case (κ' ≡ 0): it gets
    is_disk=True, no vertex list, and is_class_A=False.
    """
    curve.require_convex()
    area = curve.area()
    perimeter = TWO_PI * curve.cos_coeffs[0]

    t = np.linspace(0.0, TWO_PI, n_scan, endpoint=False)
    kap = 1.0 / curve.rho_series(t)

    if _is_disk_coeffs(curve):
        k = 1.0 / curve.cos_coeffs[0]
        return DomainClassReport(False, (), k, k, area, perimeter,
                                 is_disk=True, degenerate=True)

    vertices = find_vertices(curve, n_scan)
    kap_v = [float(1.0 / curve.rho(v)) for v in vertices]
    kappa_max = max([float(np.max(kap))] + kap_v)
    kappa_min = min([float(np.min(kap))] + kap_v)

    degenerate = False
    for v in vertices:
        _, k_ss, _ = curvature_arclength_derivatives(curve, v)
        if abs(k_ss) < DEGENERATE_KPP_TOL:
            degenerate = True

    scale = max(abs(curve.cos_coeffs[0]), 1.0)
    sym = all(abs(b) <= SYMMETRY_TOL * scale for b in curve.sin_coeffs) and all(
        abs(a) <= SYMMETRY_TOL * scale
        for m, a in enumerate(curve.cos_coeffs) if m % 2 == 1)

    expected = {0.0, np.pi / 2.0, np.pi, 3.0 * np.pi / 2.0}
    at_axes = len(vertices) == 4 and all(
        any(min(abs(v - e), TWO_PI - abs(v - e)) < 1e-6 for e in expected)
        for v in vertices)

    is_class_a = sym and at_axes and not degenerate
    return DomainClassReport(is_class_a, tuple(vertices), kappa_max, kappa_min,
                             area, perimeter, is_disk=False, degenerate=degenerate)


# --------------------------------------------------------------------------
# domain specs (CLI / file interface)
# --------------------------------------------------------------------------

def domain_from_spec(spec: dict) -> SupportCurve:
    """Build a SupportCurve from the JSON domain spec.

    Accepted forms:
      {"preset": "disk", "params": {"radius": 1.0}}
      {"preset": "ellipse", "params": {"a": ..., "b": ...}}
      {"support_cos": [...], "support_sin": [...]}
    """
    if not isinstance(spec, dict):
        raise ValueError("domain spec must be a JSON object")
    if "preset" in spec:
        params = spec.get("params", {}) or {}
        preset = spec["preset"]
        if preset == "disk":
            return SupportCurve.disk(float(params.get("radius", 1.0)))
        if preset == "ellipse":
            if "a" not in params or "b" not in params:
                raise ValueError("ellipse preset needs params a and b")
            return SupportCurve.ellipse(float(params["a"]), float(params["b"]))
        raise ValueError(f"unknown preset {preset!r}")
    if "support_cos" in spec:
        return SupportCurve(tuple(spec["support_cos"]),
                            tuple(spec.get("support_sin", ())))
    raise ValueError("domain spec needs 'preset' or 'support_cos'")
