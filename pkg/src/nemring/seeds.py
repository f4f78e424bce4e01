"""Analytic initial fields realizing a prescribed interface angle.

For an interface at latitude theta_d the exterior splits into

  * the aligned cap theta <= theta_d - 2 eta, carrying the optimal radial
    profile toward +e3,
  * the opposite cap theta >= theta_d + 2 eta, carrying the mirrored profile
    (director first component negated, same tensor at the surface),
  * two interpolation wedges |theta - theta_d| <= 2 eta for r >= 1 + 4 eta,
    where the director phase is ramped linearly in theta to hit e3 exactly at
    theta_d,
  * a square collar [1, 1 + 4 eta] x [theta_d -+ 2 eta] containing a disk of
    radius eta centered at (1 + 2 eta, theta_d) that hosts a half-winding
    defect core with an isotropic ramp of width epsilon.

Inside the collar, the phase is interpolated linearly between the core phase
on the disk boundary and the phase sampled from whichever region owns the
collar's outer boundary, which makes the construction continuous without any
case analysis. theta_d = 0 or pi degenerates to a single cap covering the
whole sphere (the dipole seed).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .energy import Field2D, Mesh, apply_boundary_conditions
from .errors import InvalidInputError, InvalidSpecError
from .potentials import ModelParams
from .profile import ROOT4_24, profile_A, turning_rate
from .qtensor import QTensor, from_director

SQRT2 = math.sqrt(2.0)
SQRT6 = math.sqrt(6.0)
PI = math.pi


@dataclass(frozen=True)
class SeedSpec:
    """Interface angle and length scales of the constructed field."""

    theta_d: float
    eta: float
    epsilon: float
    orientation: str = "up"

    def __post_init__(self):
        if not 0.0 <= self.theta_d <= PI:
            raise InvalidSpecError(f"theta_d = {self.theta_d} outside [0, pi]")
        if self.eta <= 0.0 or self.epsilon <= 0.0:
            raise InvalidSpecError("eta and epsilon must be positive")
        if not 0.0 < self.epsilon < 0.5:
            raise InvalidSpecError("epsilon is a fraction of the core radius, need < 1/2")
        if self.orientation not in ("up", "down"):
            raise InvalidSpecError("orientation must be 'up' or 'down'")
        if self.is_interface and 2.0 * self.eta >= min(self.theta_d, PI - self.theta_d):
            raise InvalidSpecError(
                "interpolation wedges do not fit: need 2 eta < min(theta_d, pi - theta_d)"
            )

    @property
    def is_interface(self) -> bool:
        return 0.0 < self.theta_d < PI


def _profile_n3(t: float, theta: float, s_star: float) -> float:
    """Optimal turning profile with boundary value cos(theta), target +1."""
    if theta <= 0.0:
        return 1.0
    if theta >= PI:
        return -1.0
    a = profile_A(theta)
    e = math.exp(-turning_rate(s_star) * t)
    return (a - e) / (a + e)


def _coords_from_phase(phase: float, s_star: float, amp: float = 1.0):
    """Coordinates of amp * s*(n x n - Id/3), n = (sin phase, 0, cos phase)."""
    s = amp * s_star
    sp, cp = math.sin(phase), math.cos(phase)
    return (
        0.0,
        SQRT2 * s * sp * cp,
        0.0,
        s * sp * sp / SQRT2,
        s * (3.0 * cp * cp - 1.0) / SQRT6,
    )


def seed_region_F(r: float, theta: float, spec: SeedSpec, s_star: float) -> QTensor:
    """Aligned-cap field: optimal profile in t = (r - 1)/eta at latitude theta."""
    if spec.is_interface and theta > spec.theta_d - 2.0 * spec.eta + 1e-12:
        raise InvalidInputError("point outside the aligned cap")
    n3 = _profile_n3((r - 1.0) / spec.eta, theta, s_star)
    n1 = math.sqrt(max(0.0, 1.0 - n3 * n3))
    return from_director((n1, 0.0, n3), s_star)


def seed_region_Fc(r: float, theta: float, spec: SeedSpec, s_star: float) -> QTensor:
    """Opposite-cap field: mirrored profile with negated first component."""
    if spec.is_interface and theta < spec.theta_d + 2.0 * spec.eta - 1e-12:
        raise InvalidInputError("point outside the opposite cap")
    n3 = _profile_n3((r - 1.0) / spec.eta, PI - theta, s_star)
    n1 = -math.sqrt(max(0.0, 1.0 - n3 * n3))
    return from_director((n1, 0.0, n3), s_star)


def seed_wedge(r: float, theta: float, spec: SeedSpec, s_star: float) -> QTensor:
    """Interpolation wedge: phase ramp between the caps and e3 at theta_d."""
    if not spec.is_interface:
        raise InvalidInputError("wedge undefined without an interface")
    if abs(theta - spec.theta_d) > 2.0 * spec.eta + 1e-12:
        raise InvalidInputError("point outside the wedge")
    return QTensor(_coords_from_phase(_wedge_phase(r, theta, spec, s_star), s_star))


def _wedge_phase(r: float, theta: float, spec: SeedSpec, s_star: float) -> float:
    t = (r - 1.0) / spec.eta
    th0, eta = spec.theta_d, spec.eta
    if theta <= th0:
        n3 = _profile_n3(t, th0 - 2.0 * eta, s_star)
        return (th0 - theta) / (2.0 * eta) * math.acos(min(1.0, max(-1.0, n3)))
    n3 = _profile_n3(t, PI - (th0 + 2.0 * eta), s_star)
    return -(theta - th0) / (2.0 * eta) * math.acos(min(1.0, max(-1.0, n3)))


def core_ramp(local_r: float, epsilon: float) -> float:
    """Amplitude of the defect core: 0, linear ramp on [eps, 2 eps), then 1."""
    if local_r < epsilon:
        return 0.0
    if local_r < 2.0 * epsilon:
        return local_r / epsilon - 1.0
    return 1.0


def seed_core(local_r: float, alpha: float, epsilon: float, s_star: float) -> QTensor:
    """Half-winding defect core on the unit disk in local polar coordinates.

    The director turns by pi over one loop (phase alpha/2), which the tensor's
    sign blindness closes into a degree -1/2 singularity; the amplitude ramps
    from 0 through [epsilon, 2 epsilon) to full strength.
    """
    if not 0.0 <= local_r <= 1.0 + 1e-12:
        raise InvalidInputError("local_r must lie in [0, 1]")
    amp = core_ramp(local_r, epsilon)
    if amp == 0.0:
        return QTensor.zero()
    return QTensor(_coords_from_phase(0.5 * alpha, s_star, amp))


def seed_core_coords(local_r, alpha, epsilon: float, s_star: float) -> np.ndarray:
    """Vectorized :func:`seed_core` for the planar energy harness."""
    local_r = np.asarray(local_r, dtype=float)
    alpha = np.asarray(alpha, dtype=float)
    local_r, alpha = np.broadcast_arrays(local_r, alpha)
    amp = np.clip(local_r / epsilon - 1.0, 0.0, 1.0)
    s = amp * s_star
    half = 0.5 * alpha
    sp, cp = np.sin(half), np.cos(half)
    out = np.zeros(local_r.shape + (5,))
    out[..., 1] = SQRT2 * s * sp * cp
    out[..., 3] = s * sp * sp / SQRT2
    out[..., 4] = s * (3.0 * cp * cp - 1.0) / SQRT6
    return out


# ---------------------------------------------------------------------------
# assembly of the full field
# ---------------------------------------------------------------------------


def _outside_phase(r: float, theta: float, spec: SeedSpec, s_star: float) -> float:
    """Director phase of the non-collar construction at (r, theta), mod pi.

    The aligned cap uses +arccos(n3), the opposite cap the continuous
    representative -arccos(n3); at the colloid surface both reduce to the
    anchoring phase theta (mod pi).
    """
    th0, eta = spec.theta_d, spec.eta
    if r <= 1.0 + 1e-12:
        return theta
    t = (r - 1.0) / eta
    if theta <= th0 - 2.0 * eta:
        n3 = _profile_n3(t, theta, s_star)
        return math.acos(min(1.0, max(-1.0, n3)))
    if theta >= th0 + 2.0 * eta:
        n3 = _profile_n3(t, PI - theta, s_star)
        return -math.acos(min(1.0, max(-1.0, n3)))
    return _wedge_phase(r, theta, spec, s_star)


def _collar_outer_radius(alpha: float, eta: float) -> float:
    """Distance from the core center to the collar's square boundary."""
    return 2.0 * eta / max(abs(math.cos(alpha)), abs(math.sin(alpha)))


def _sample_interface(r: float, theta: float, spec: SeedSpec, s_star: float):
    """Seed coordinates at one node for an interior interface angle."""
    th0, eta, eps = spec.theta_d, spec.eta, spec.epsilon
    x = th0 - theta
    y = r - 1.0 - 2.0 * eta
    inside_square = r <= 1.0 + 4.0 * eta and abs(x) <= 2.0 * eta
    if not inside_square:
        if theta <= th0 - 2.0 * eta:
            t = (r - 1.0) / eta
            n3 = _profile_n3(t, theta, s_star)
            n1 = math.sqrt(max(0.0, 1.0 - n3 * n3))
            return _coords_from_director(n1, n3, s_star)
        if theta >= th0 + 2.0 * eta:
            t = (r - 1.0) / eta
            n3 = _profile_n3(t, PI - theta, s_star)
            return _coords_from_director(-math.sqrt(max(0.0, 1.0 - n3 * n3)), n3, s_star)
        return _coords_from_phase(_wedge_phase(r, theta, spec, s_star), s_star)

    rbar = math.hypot(x, y)
    alpha = math.atan2(x, y) % (2.0 * PI)
    core_phase = th0 - 0.5 * PI + 0.5 * alpha
    if rbar <= eta:
        amp = core_ramp(rbar / eta, eps)
        if amp == 0.0:
            return (0.0, 0.0, 0.0, 0.0, 0.0)
        return _coords_from_phase(core_phase, s_star, amp)

    # collar: interpolate the phase between the core disk and the square edge
    radius = _collar_outer_radius(alpha, eta)
    xb = radius * math.sin(alpha)
    yb = radius * math.cos(alpha)
    rb = min(max(1.0, 1.0 + 2.0 * eta + yb), 1.0 + 4.0 * eta)
    thb = min(max(th0 - 2.0 * eta, th0 - xb), th0 + 2.0 * eta)
    raw = _outside_phase(rb, thb, spec, s_star)
    shift = round((core_phase - raw) / PI)
    outer_phase = raw + PI * shift
    if abs(outer_phase - core_phase) > 0.5 * PI + 1e-9:
        raise InvalidSpecError(
            "collar phase mismatch exceeds pi/2; construction would be discontinuous"
        )
    rbar = min(rbar, radius)
    lam = (rbar - eta) / (radius - eta)
    phase = (1.0 - lam) * core_phase + lam * outer_phase
    return _coords_from_phase(phase, s_star)


def _coords_from_director(n1: float, n3: float, s_star: float):
    return (
        0.0,
        SQRT2 * s_star * n1 * n3,
        0.0,
        s_star * n1 * n1 / SQRT2,
        s_star * (3.0 * n3 * n3 - 1.0) / SQRT6,
    )


def sample_seed(r: float, theta: float, spec: SeedSpec, s_star: float):
    """Seed coordinates at a single point (python floats, loop friendly)."""
    if spec.orientation == "down":
        mirrored = SeedSpec(
            theta_d=PI - spec.theta_d,
            eta=spec.eta,
            epsilon=spec.epsilon,
            orientation="up",
        )
        q1, q2, q3, q4, q5 = sample_seed(r, PI - theta, mirrored, s_star)
        return (q1, -q2, -q3, q4, q5)
    if spec.theta_d <= 0.0:
        t = (r - 1.0) / spec.eta
        n3 = _profile_n3(t, PI - theta, s_star)
        return _coords_from_director(-math.sqrt(max(0.0, 1.0 - n3 * n3)), n3, s_star)
    if spec.theta_d >= PI:
        t = (r - 1.0) / spec.eta
        n3 = _profile_n3(t, theta, s_star)
        return _coords_from_director(math.sqrt(max(0.0, 1.0 - n3 * n3)), n3, s_star)
    return _sample_interface(r, theta, spec, s_star)


def build_seed(mesh: Mesh, spec: SeedSpec, params: ModelParams) -> Field2D:
    """Sample the construction at every node and enforce the Dirichlet rows."""
    if spec.is_interface:
        outer_edge = 1.0 + 4.0 * spec.eta
        if mesh.spec.r_max <= outer_edge:
            raise InvalidSpecError(
                f"mesh r_max = {mesh.spec.r_max} cannot contain the defect collar "
                f"(needs > {outer_edge})"
            )
    s = params.s_star
    values = np.empty((mesh.n_r, mesh.n_theta, 5))
    for i, r in enumerate(mesh.rs):
        for j, theta in enumerate(mesh.thetas):
            values[i, j] = sample_seed(float(r), float(theta), spec, s)
    field = Field2D(values, mesh, params)
    apply_boundary_conditions(field)
    return field
