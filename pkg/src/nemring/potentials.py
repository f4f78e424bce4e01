"""Bulk and external-field potentials on traceless symmetric tensors.

The bulk potential

    f(Q) = C - (a/2) tr(Q^2) - (b/3) tr(Q^3) + (c/4) (tr(Q^2))^2

vanishes exactly on the uniaxial manifold N = {s*(n x n - Id/3)} once C is
chosen from the trace identities tr(Q^2) = (2/3)s*^2, tr(Q^3) = (2/9)s*^3 on N.
The field potential

    g(Q) = sqrt(2/3) - Q33/|Q|      (g(0) = 0)

is nonnegative, scale invariant, and zero exactly on the ray t(e3 x e3 - Id/3),
t >= 0. Gradients are taken in the 5-coordinate basis, so tracelessness is
automatic and no Lagrange multiplier is needed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError, NearZeroTensorError
from .qtensor import SQRT6, QTensor, coords_to_entries, entries_to_coords

SQRT23 = math.sqrt(2.0 / 3.0)
SQRT32 = math.sqrt(1.5)

# |Q| < NORM_FLOOR_SCALE * s_star is treated as "at a defect core" by the
# field-potential gradient (g is continuous but not differentiable at 0)
NORM_FLOOR_SCALE = 1e-8


def s_star(a: float, b: float, c: float) -> float:
    """Preferred uniaxial order parameter (b + sqrt(b^2 + 24 a c))/(4 c)."""
    if a <= 0.0 or b <= 0.0 or c <= 0.0:
        raise InvalidInputError("bulk coefficients must be positive")
    return (b + math.sqrt(b * b + 24.0 * a * c)) / (4.0 * c)


def bulk_constant(a: float, b: float, c: float) -> float:
    """Additive constant making min f = 0 (attained on the uniaxial manifold)."""
    s = s_star(a, b, c)
    return (a / 3.0) * s**2 + (2.0 * b / 27.0) * s**3 - (c / 9.0) * s**4


@dataclass(frozen=True)
class ModelParams:
    """Physical and derived parameters tying the three energy terms together.

    a, b, c are the bulk coefficients, C the additive constant with min f = 0,
    s_star the preferred order parameter. xi and eta are the bulk and field
    coherence lengths, coupled to beta through eta |ln xi| = beta. Any of the
    regime parameters may be None when a computation does not need them.
    """

    a: float
    b: float
    c: float
    C: float
    s_star: float
    xi: float | None = None
    eta: float | None = None
    beta: float | None = None

    def __post_init__(self):
        if self.a <= 0.0 or self.b <= 0.0 or self.c <= 0.0:
            raise InvalidInputError("bulk coefficients must be positive")
        expected = s_star(self.a, self.b, self.c)
        if abs(self.s_star - expected) > 1e-12 * max(1.0, expected):
            raise InvalidInputError(
                f"s_star = {self.s_star} inconsistent with coefficients "
                f"(expected {expected})"
            )
        for name in ("xi", "eta", "beta"):
            v = getattr(self, name)
            if v is not None and v <= 0.0:
                raise InvalidInputError(f"{name} must be positive when given")
        if self.xi is not None and self.eta is not None and self.beta is not None:
            if abs(self.eta * abs(math.log(self.xi)) - self.beta) > 1e-9:
                raise InvalidInputError("eta |ln xi| = beta violated")

    @staticmethod
    def create(
        a: float = 1.0,
        b: float = 1.0,
        c: float = 1.0,
        *,
        beta: float | None = None,
        eta: float | None = None,
        xi: float | None = None,
    ) -> "ModelParams":
        """Build params from bulk coefficients plus any two regime parameters.

        The third of (beta, eta, xi) is derived from eta |ln xi| = beta.
        """
        given = [v is not None for v in (beta, eta, xi)]
        if sum(given) == 2:
            if beta is None:
                beta = eta * abs(math.log(xi))
            elif eta is None:
                if xi >= 1.0:
                    raise InvalidInputError("xi must lie in (0, 1) to derive eta")
                eta = beta / abs(math.log(xi))
            else:
                xi = math.exp(-beta / eta)
        elif sum(given) == 3:
            pass  # validated in __post_init__
        elif any(given):
            raise InvalidInputError("give exactly two of (beta, eta, xi)")
        return ModelParams(
            a=a,
            b=b,
            c=c,
            C=bulk_constant(a, b, c),
            s_star=s_star(a, b, c),
            xi=xi,
            eta=eta,
            beta=beta,
        )


DEFAULT_PARAMS = ModelParams.create()  # a = b = c = 1, s* = 1.5, C = 7/16


# ---------------------------------------------------------------------------
# bulk potential f
# ---------------------------------------------------------------------------


def _traces(q: np.ndarray):
    """tr(Q^2) and tr(Q^3) of a coords array."""
    t2 = np.sum(q * q, axis=-1)
    m11, m22, m33, m12, m13, m23 = coords_to_entries(q)
    t3 = (
        m11**3
        + m22**3
        + m33**3
        + 3.0 * (m11 * (m12**2 + m13**2) + m22 * (m12**2 + m23**2) + m33 * (m13**2 + m23**2))
        + 6.0 * m12 * m13 * m23
    )
    return t2, t3


def bulk_f_arr(q: np.ndarray, p: ModelParams) -> np.ndarray:
    t2, t3 = _traces(q)
    return p.C - 0.5 * p.a * t2 - (p.b / 3.0) * t3 + 0.25 * p.c * t2 * t2


def bulk_f(q: QTensor, p: ModelParams) -> float:
    return float(bulk_f_arr(q.coords, p))


def bulk_grad_arr(q: np.ndarray, p: ModelParams) -> np.ndarray:
    """Gradient of f in coordinates: -aQ - b(Q^2 - tr(Q^2)/3 Id) + c tr(Q^2) Q."""
    t2 = np.sum(q * q, axis=-1)
    m11, m22, m33, m12, m13, m23 = coords_to_entries(q)
    # entries of Q^2
    s11 = m11 * m11 + m12 * m12 + m13 * m13
    s22 = m12 * m12 + m22 * m22 + m23 * m23
    s33 = m13 * m13 + m23 * m23 + m33 * m33
    s12 = m11 * m12 + m12 * m22 + m13 * m23
    s13 = m11 * m13 + m12 * m23 + m13 * m33
    s23 = m12 * m13 + m22 * m23 + m23 * m33
    third = t2 / 3.0
    qsq = entries_to_coords(s11 - third, s22 - third, s33 - third, s12, s13, s23)
    t2e = t2[..., None]
    return -p.a * q - p.b * qsq + p.c * t2e * q


def bulk_grad(q: QTensor, p: ModelParams) -> QTensor:
    return QTensor(bulk_grad_arr(q.coords, p))


# ---------------------------------------------------------------------------
# field potential g
# ---------------------------------------------------------------------------


def field_g_arr(q: np.ndarray) -> np.ndarray:
    nrm = np.linalg.norm(q, axis=-1)
    q33 = 2.0 * q[..., 4] / SQRT6
    safe = np.where(nrm > 0.0, nrm, 1.0)
    return np.where(nrm > 0.0, SQRT23 - q33 / safe, 0.0)


def field_g(q: QTensor) -> float:
    return float(field_g_arr(q.coords))


def field_grad_arr(q: np.ndarray, norm_floor: float) -> np.ndarray:
    """Gradient of g where |Q| > norm_floor, zero elsewhere.

    Zero is the substitution the solver uses at defect cores; the exact
    gradient there does not exist.
    """
    nrm = np.linalg.norm(q, axis=-1)
    ok = nrm > norm_floor
    safe = np.where(ok, nrm, 1.0)
    q33 = 2.0 * q[..., 4] / SQRT6
    grad = (q33 / safe**3)[..., None] * q
    grad[..., 4] -= (2.0 / SQRT6) / safe
    return np.where(ok[..., None], grad, 0.0)


def field_grad(q: QTensor, norm_floor: float = 0.0) -> QTensor:
    nrm = q.norm
    if nrm <= max(norm_floor, 1e-300):
        raise NearZeroTensorError(
            f"field gradient undefined at |Q| = {nrm:.3e} (floor {norm_floor:.3e})"
        )
    return QTensor(field_grad_arr(q.coords, 0.0))


def g_on_N(n3: float) -> float:
    """Field potential restricted to the uniaxial manifold: sqrt(3/2)(1 - n3^2)."""
    n3 = float(n3)
    if abs(n3) > 1.0 + 1e-12:
        raise InvalidInputError(f"n3 = {n3} outside [-1, 1]")
    n3 = min(1.0, max(-1.0, n3))
    return SQRT32 * (1.0 - n3 * n3)
