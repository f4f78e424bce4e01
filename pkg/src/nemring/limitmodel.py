"""Closed-form limit energy on the sphere and its dipole/saturn-ring landscape.

For a single interface at latitude theta_d (region F = {theta <= theta_d}
aligned with +e3, complement with -e3) the limit energy is

    E0(theta_d) = 4 24^(1/4) pi s* (sin^4(theta_d/2) + cos^4(theta_d/2))
                  + pi^2 beta s*^2 sin(theta_d),

whose stationary points obey pi s* cos(theta_d)(pi beta s* - 4 24^(1/4)
sin(theta_d)) = 0. The saturn ring (theta_d = pi/2) and the dipole
(theta_d in {0, pi}) exchange roles at beta s* = 2 24^(1/4)/pi and the ring
loses stability at beta s* = 4 24^(1/4)/pi, which produces hysteresis under
quasi-static sweeps of beta.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvalidInputError

ROOT4_24 = 24.0 ** 0.25
PI = math.pi

# quasi-static continuation controls
DESCENT_STEP = 1e-3
DESCENT_MAX_ITER = 10_000
KICK = 1e-6  # deterministic tie-break at degenerate stationary points
JUMP_THRESHOLD = 0.3  # rad moved in one beta step counts as a branch jump


def limit_energy(theta_d: float, beta: float, s_star: float) -> float:
    """Limit energy of the single-interface configuration at theta_d."""
    half = 0.5 * theta_d
    align = 4.0 * ROOT4_24 * PI * s_star * (math.sin(half) ** 4 + math.cos(half) ** 4)
    return align + PI**2 * beta * s_star**2 * math.sin(theta_d)


def limit_energy_deriv(theta_d: float, beta: float, s_star: float) -> float:
    """d E0/d theta_d = pi s* cos(theta)(pi beta s* - 4 24^(1/4) sin(theta))."""
    return (
        PI
        * s_star
        * math.cos(theta_d)
        * (PI * beta * s_star - 4.0 * ROOT4_24 * math.sin(theta_d))
    )


def limit_energy_curvature(theta_d: float, beta: float, s_star: float) -> float:
    """Second theta derivative of the landscape."""
    k = PI * beta * s_star
    m4 = 4.0 * ROOT4_24
    sin, cos = math.sin(theta_d), math.cos(theta_d)
    return PI * s_star * (-sin * (k - m4 * sin) - m4 * cos * cos)


def _cap_integral_minus(theta: float) -> float:
    """integral_0^theta (1 - cos t) sin t dt."""
    return (1.0 - math.cos(theta)) - 0.5 * math.sin(theta) ** 2


def _cap_integral_plus(theta: float) -> float:
    """integral_0^theta (1 + cos t) sin t dt."""
    return (1.0 - math.cos(theta)) + 0.5 * math.sin(theta) ** 2


def limit_energy_bandset(
    interfaces, first_region: str, beta: float, s_star: float
) -> float:
    """Limit energy when F is a union of latitude bands.

    ``interfaces`` are the strictly increasing interface angles in (0, pi);
    ``first_region`` says whether the band containing the north pole belongs
    to F ('F') or its complement ('Fc'). The defect-line term charges
    (pi/2) s*^2 beta per unit length, and a band interface at theta_i is a
    circle of length 2 pi sin(theta_i).
    """
    if first_region not in ("F", "Fc"):
        raise InvalidInputError("first_region must be 'F' or 'Fc'")
    angles = [float(t) for t in interfaces]
    if any(not 0.0 < t < PI for t in angles):
        raise InvalidInputError("interfaces must lie strictly inside (0, pi)")
    if any(angles[i] >= angles[i + 1] for i in range(len(angles) - 1)):
        raise InvalidInputError("interfaces must be strictly increasing")

    bounds = [0.0] + angles + [PI]
    in_f = first_region == "F"
    align = 0.0
    for lo, hi in zip(bounds[:-1], bounds[1:]):
        if in_f:
            align += _cap_integral_minus(hi) - _cap_integral_minus(lo)
        else:
            align += _cap_integral_plus(hi) - _cap_integral_plus(lo)
        in_f = not in_f
    align *= 2.0 * PI * ROOT4_24 * s_star

    perimeter = 2.0 * PI * sum(math.sin(t) for t in angles)
    return align + 0.5 * PI * s_star**2 * beta * perimeter


def critical_betas(s_star: float) -> tuple[float, float]:
    """(beta at the dipole/ring energy crossing, beta where the ring destabilizes).

    The products beta s* are 2 24^(1/4)/pi and 4 24^(1/4)/pi.
    """
    if s_star <= 0.0:
        raise InvalidInputError("s_star must be positive")
    return 2.0 * ROOT4_24 / (PI * s_star), 4.0 * ROOT4_24 / (PI * s_star)


def stationary_angles(beta: float, s_star: float):
    """Stationary points of the landscape with their classification.

    Returns a sorted list of (theta, kind) with kind in
    {'boundary-min', 'local-min', 'local-max', 'degenerate'}.
    """
    if beta < 0.0 or s_star <= 0.0:
        raise InvalidInputError("need beta >= 0 and s_star > 0")
    ratio = PI * beta * s_star / (4.0 * ROOT4_24)
    candidates = {0.0, PI, 0.5 * PI}
    if 0.0 < ratio < 1.0:
        t2 = math.asin(ratio)
        candidates.add(t2)
        candidates.add(PI - t2)

    h = 1e-6
    out = []
    for theta in sorted(candidates):
        if theta <= 0.0:
            slope = limit_energy_deriv(h, beta, s_star)
            kind = "boundary-min" if slope > 0.0 else "local-max"
        elif theta >= PI:
            slope = limit_energy_deriv(PI - h, beta, s_star)
            kind = "boundary-min" if slope < 0.0 else "local-max"
        elif abs(ratio - 1.0) < 1e-12 and abs(theta - 0.5 * PI) < 1e-12:
            kind = "degenerate"  # both stationary families merge here
        else:
            left = limit_energy_deriv(theta - h, beta, s_star)
            right = limit_energy_deriv(theta + h, beta, s_star)
            if left < 0.0 < right:
                kind = "local-min"
            elif left > 0.0 > right:
                kind = "local-max"
            else:
                kind = "degenerate"
        out.append((theta, kind))
    return out


# ---------------------------------------------------------------------------
# quasi-static hysteresis continuation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TraceRecord:
    beta: float
    theta_d: float
    energy: float
    branch: str


@dataclass(frozen=True)
class LimitTrace:
    records: tuple[TraceRecord, ...]

    @property
    def jumps(self) -> tuple[float, ...]:
        """Beta values at which theta_d moved by more than the jump threshold."""
        out = []
        for prev, cur in zip(self.records[:-1], self.records[1:]):
            if abs(cur.theta_d - prev.theta_d) > JUMP_THRESHOLD:
                out.append(cur.beta)
        return tuple(out)

    def to_csv(self) -> str:
        lines = ["beta,theta_d,energy,branch"]
        for rec in self.records:
            lines.append(
                f"{rec.beta:.17g},{rec.theta_d:.17g},{rec.energy:.17g},{rec.branch}"
            )
        return "\n".join(lines) + "\n"


def _branch_label(theta: float) -> str:
    if min(theta, PI - theta) < 0.1:
        return "DP"
    if abs(theta - 0.5 * PI) < 0.1:
        return "SR"
    return "other"


def _descend(theta: float, beta: float, s_star: float) -> float:
    """Local gradient descent on the landscape starting at theta.

    Derivative-only flow with the step capped by the local curvature,
    theta <- clip(theta - E'/( |E''| + floor )), which contracts toward any
    local minimum and amplifies away from a destabilized stationary point.
    Energy comparisons are deliberately avoided: right past the spinodal the
    decrease per step underflows double precision and a monotonicity test
    would pin the iterate on the stationary point, pushing the detected jump
    several grid steps late.
    """
    floor = max(DESCENT_STEP, 1e-3 * PI * s_star * (PI * beta * s_star + 4.0 * ROOT4_24))
    for _ in range(DESCENT_MAX_ITER):
        g = limit_energy_deriv(theta, beta, s_star)
        h = abs(limit_energy_curvature(theta, beta, s_star))
        cand = min(PI, max(0.0, theta - g / (h + floor)))
        if abs(cand - theta) < 1e-13:
            return cand
        theta = cand
    return theta


def hysteresis_sweep(
    beta_from: float,
    beta_to: float,
    n_steps: int,
    s_star: float,
    start_branch: str,
) -> LimitTrace:
    """Quasi-static continuation of the landscape minimum along a beta ramp.

    The configuration angle is relaxed by local descent at every beta,
    warm-started from the previous angle plus a deterministic kick of 1e-6
    (so a state sitting exactly on a freshly destabilized stationary point
    rolls off instead of staying pinned).
    """
    branch = start_branch.strip().lower()
    if branch == "dp":
        theta = 0.0
    elif branch == "sr":
        theta = 0.5 * PI
    else:
        raise InvalidInputError(f"unknown start branch {start_branch!r}")
    if n_steps < 2:
        raise InvalidInputError("n_steps must be at least 2")

    records = []
    for i in range(n_steps):
        beta = beta_from + (beta_to - beta_from) * i / (n_steps - 1)
        theta = _descend(min(PI, theta + KICK), beta, s_star)
        records.append(
            TraceRecord(
                beta=beta,
                theta_d=theta,
                energy=limit_energy(theta, beta, s_star),
                branch=_branch_label(theta),
            )
        )
    return LimitTrace(records=tuple(records))
