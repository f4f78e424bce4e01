"""Value-level algebra on traceless symmetric 3x3 tensors.

A tensor is stored as 5 coordinates in the fixed orthonormal basis

    E1 = (e1 x e2 + e2 x e1)/sqrt(2)      E4 = (e1 x e1 - e2 x e2)/sqrt(2)
    E2 = (e1 x e3 + e3 x e1)/sqrt(2)      E5 = (2 e3 x e3 - e1 x e1 - e2 x e2)/sqrt(6)
    E3 = (e2 x e3 + e3 x e2)/sqrt(2)

so tracelessness and symmetry hold by construction and the Frobenius norm
equals the Euclidean norm of the coordinates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateTensorError, InvalidInputError

SQRT2 = math.sqrt(2.0)
SQRT6 = math.sqrt(6.0)
SQRT23 = math.sqrt(2.0 / 3.0)

# lambda1 - lambda2 below this (times max(1, |Q|)) counts as "on the cone"
TIE_TOL = 1e-9


class QTensor:
    """Immutable traceless symmetric tensor in the 5-coordinate basis."""

    __slots__ = ("coords",)

    def __init__(self, coords):
        arr = np.asarray(coords, dtype=float)
        if arr.shape != (5,):
            raise InvalidInputError(f"expected 5 coordinates, got shape {arr.shape}")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "coords", arr)

    def __setattr__(self, name, value):
        raise AttributeError("QTensor is immutable")

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.coords))

    def matrix(self) -> np.ndarray:
        """Reconstruct the full 3x3 matrix."""
        q1, q2, q3, q4, q5 = self.coords
        m11 = q4 / SQRT2 - q5 / SQRT6
        m22 = -q4 / SQRT2 - q5 / SQRT6
        m33 = 2.0 * q5 / SQRT6
        m12 = q1 / SQRT2
        m13 = q2 / SQRT2
        m23 = q3 / SQRT2
        return np.array([[m11, m12, m13], [m12, m22, m23], [m13, m23, m33]])

    @staticmethod
    def from_matrix(m) -> "QTensor":
        m = np.asarray(m, dtype=float)
        if m.shape != (3, 3):
            raise InvalidInputError("expected a 3x3 matrix")
        if not np.allclose(m, m.T, atol=1e-12) or abs(np.trace(m)) > 1e-12 * max(
            1.0, float(np.abs(m).max())
        ):
            raise InvalidInputError("matrix must be symmetric and traceless")
        return QTensor(
            [
                SQRT2 * m[0, 1],
                SQRT2 * m[0, 2],
                SQRT2 * m[1, 2],
                (m[0, 0] - m[1, 1]) / SQRT2,
                (2.0 * m[2, 2] - m[0, 0] - m[1, 1]) / SQRT6,
            ]
        )

    @staticmethod
    def zero() -> "QTensor":
        return QTensor(np.zeros(5))

    def __add__(self, other):
        return QTensor(self.coords + other.coords)

    def __sub__(self, other):
        return QTensor(self.coords - other.coords)

    def __mul__(self, t):
        return QTensor(self.coords * float(t))

    __rmul__ = __mul__

    def __neg__(self):
        return QTensor(-self.coords)

    def __eq__(self, other):
        return isinstance(other, QTensor) and np.array_equal(self.coords, other.coords)

    def __hash__(self):
        return hash(self.coords.tobytes())

    def allclose(self, other, atol=1e-12):
        return bool(np.allclose(self.coords, other.coords, rtol=0.0, atol=atol))

    def __repr__(self):
        return f"QTensor({np.array2string(self.coords, precision=6)})"


@dataclass(frozen=True)
class SpectralData:
    """Eigen-decomposition of a QTensor.

    lam: eigenvalues sorted descending, summing to zero.
    n, m: unit eigenvectors of lam[0] and lam[1], orthogonal, signs fixed so
          the largest-magnitude component is positive.
    s, r: parameters of Q = s((n x n - Id/3) + r(m x m - Id/3)) with
          s = 2 lam1 + lam2 and r = (lam1 + 2 lam2)/s (r = 0 when s = 0).
    """

    lam: tuple[float, float, float]
    n: np.ndarray
    m: np.ndarray
    s: float
    r: float


def from_director(n, s: float) -> QTensor:
    """Uniaxial tensor s(n x n - Id/3) for a unit director n."""
    n = np.asarray(n, dtype=float)
    if n.shape != (3,):
        raise InvalidInputError("director must be a 3-vector")
    nn = float(np.dot(n, n))
    if abs(nn - 1.0) > 1e-12:
        raise InvalidInputError(f"director must be unit length, |n|^2 = {nn}")
    s = float(s)
    n1, n2, n3 = n
    return QTensor(
        [
            SQRT2 * s * n1 * n2,
            SQRT2 * s * n1 * n3,
            SQRT2 * s * n2 * n3,
            s * (n1 * n1 - n2 * n2) / SQRT2,
            s * (3.0 * n3 * n3 - 1.0) / SQRT6,
        ]
    )


# ---------------------------------------------------------------------------
# closed-form symmetric 3x3 eigen decomposition
#
# Eigenvalues come from the characteristic polynomial via the trigonometric
# formula; eigenvectors from cross products of rows of (A - lam Id), with one
# Rayleigh-quotient refinement pass. Plain floats throughout: this routine is
# called per-sample in the invariant suites, so numpy scalar overhead matters.
# ---------------------------------------------------------------------------

_GS_FRAME = ((1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0))


def _cross(a, b):
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def _dot(a, b):
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def _normalize(v):
    nrm = math.sqrt(_dot(v, v))
    if nrm == 0.0:
        return None
    return (v[0] / nrm, v[1] / nrm, v[2] / nrm)


def _eigvec_candidate(entries, lam, scale):
    """Best cross-product eigenvector of (A - lam Id); None if degenerate."""
    a11, a22, a33, a12, a13, a23 = entries
    r1 = (a11 - lam, a12, a13)
    r2 = (a12, a22 - lam, a23)
    r3 = (a13, a23, a33 - lam)
    best, best_sq = None, 0.0
    for u, v in ((r1, r2), (r1, r3), (r2, r3)):
        c = _cross(u, v)
        csq = _dot(c, c)
        if csq > best_sq:
            best, best_sq = c, csq
    if best is None or best_sq <= (1e-12 * scale * scale) ** 2:
        return None
    return _normalize(best)


def _gs_complete(v):
    """First basis vector not parallel to v, Gram-Schmidt orthogonalized."""
    for e in _GS_FRAME:
        w = (e[0] - _dot(e, v) * v[0], e[1] - _dot(e, v) * v[1], e[2] - _dot(e, v) * v[2])
        out = _normalize(w)
        if out is not None and _dot(w, w) > 1e-8:
            return out
    raise AssertionError("unreachable: no frame vector orthogonal to v")


def _apply(entries, v):
    a11, a22, a33, a12, a13, a23 = entries
    return (
        a11 * v[0] + a12 * v[1] + a13 * v[2],
        a12 * v[0] + a22 * v[1] + a23 * v[2],
        a13 * v[0] + a23 * v[1] + a33 * v[2],
    )


def _rayleigh(entries, v):
    return _dot(v, _apply(entries, v))


def _symeig3(entries):
    """Eigen system of a symmetric traceless 3x3 given by its 6 entries.

    Returns (lam1, lam2, lam3) descending and orthonormal (v1, v2, v3).
    """
    a11, a22, a33, a12, a13, a23 = entries
    p1 = a12 * a12 + a13 * a13 + a23 * a23
    p2 = a11 * a11 + a22 * a22 + a33 * a33 + 2.0 * p1
    scale = math.sqrt(p2)
    if scale <= 1e-300:
        return (0.0, 0.0, 0.0), _GS_FRAME
    p = math.sqrt(p2 / 6.0)
    b11, b22, b33 = a11 / p, a22 / p, a33 / p
    b12, b13, b23 = a12 / p, a13 / p, a23 / p
    detb = (
        b11 * (b22 * b33 - b23 * b23)
        - b12 * (b12 * b33 - b23 * b13)
        + b13 * (b12 * b23 - b22 * b13)
    )
    rr = min(1.0, max(-1.0, detb / 2.0))
    phi = math.acos(rr) / 3.0
    lam1 = 2.0 * p * math.cos(phi)
    lam3 = 2.0 * p * math.cos(phi + 2.0 * math.pi / 3.0)
    lam2 = -lam1 - lam3

    def vectors(l1, l3):
        v1 = _eigvec_candidate(entries, l1, scale)
        v3 = _eigvec_candidate(entries, l3, scale)
        if v1 is None and v3 is None:
            # fully degenerate spectrum: any orthonormal frame diagonalizes
            return _GS_FRAME
        if v1 is None:
            v1 = _gs_complete(v3)
        if v3 is None:
            v3 = _gs_complete(v1)
        else:
            w = (
                v3[0] - _dot(v3, v1) * v1[0],
                v3[1] - _dot(v3, v1) * v1[1],
                v3[2] - _dot(v3, v1) * v1[2],
            )
            v3 = _normalize(w) or _gs_complete(v1)
        v2 = _cross(v3, v1)
        return v1, v2, v3

    v1, v2, v3 = vectors(lam1, lam3)
    lam1 = _rayleigh(entries, v1)
    lam3 = _rayleigh(entries, v3)
    # one refinement pass with the improved eigenvalues
    v1, v2, v3 = vectors(lam1, lam3)
    trio = sorted(
        ((_rayleigh(entries, v), v) for v in (v1, v2, v3)),
        key=lambda t: t[0],
        reverse=True,
    )
    lams = tuple(t[0] for t in trio)
    vecs = tuple(t[1] for t in trio)
    return lams, vecs


def _fix_sign(v):
    i = max(range(3), key=lambda k: abs(v[k]))
    if v[i] < 0.0:
        return (-v[0], -v[1], -v[2])
    return v


def _entries(q: QTensor):
    q1, q2, q3, q4, q5 = q.coords
    return (
        q4 / SQRT2 - q5 / SQRT6,
        -q4 / SQRT2 - q5 / SQRT6,
        2.0 * q5 / SQRT6,
        q1 / SQRT2,
        q2 / SQRT2,
        q3 / SQRT2,
    )


def spectral(q: QTensor) -> SpectralData:
    """Eigen-decomposition with the (s, r, n, m) uniaxial/biaxial parameters.

    Never raises: exact eigenvalue ties resolve deterministically by
    Gram-Schmidt against the fixed frame (e1, e2, e3 priority).
    """
    lams, vecs = _symeig3(_entries(q))
    n = np.array(_fix_sign(vecs[0]))
    m = np.array(_fix_sign(vecs[1]))
    l1, l2, _ = lams
    s = 2.0 * l1 + l2
    if abs(s) <= 1e-14 * max(1.0, q.norm):
        s, r = max(s, 0.0), 0.0
    else:
        r = min(1.0, max(0.0, (l1 + 2.0 * l2) / s))
    return SpectralData(lam=lams, n=n, m=m, s=s, r=r)


def reconstruct(sd: SpectralData) -> QTensor:
    """Inverse of :func:`spectral`: s((n x n - Id/3) + r(m x m - Id/3))."""
    return from_director(sd.n, sd.s) + from_director(sd.m, sd.s * sd.r)


def _require_off_cone(q: QTensor, sd: SpectralData, op: str):
    gap = sd.lam[0] - sd.lam[1]
    if gap <= TIE_TOL * max(1.0, q.norm):
        raise DegenerateTensorError(
            f"{op}: tensor lies on the biaxial cone (lambda1 - lambda2 = {gap:.3e})"
        )


def project_N(q: QTensor, s_star: float) -> QTensor:
    """Nearest-point projection onto the vacuum manifold s*(n x n - Id/3)."""
    sd = spectral(q)
    _require_off_cone(q, sd, "project_N")
    return from_director(sd.n, s_star)


def dist_N(q: QTensor, s_star: float) -> float:
    """Frobenius distance to the vacuum manifold."""
    return (q - project_N(q, s_star)).norm


def biaxiality_phi(q: QTensor, s_star: float) -> float:
    """Biaxiality indicator s(1 - r)/s*, which equals (lambda1 - lambda2)/s*.

    1 on the vacuum manifold, 0 on the biaxial cone and at the zero tensor.
    """
    lams, _ = _symeig3(_entries(q))
    return (lams[0] - lams[1]) / float(s_star)


def retract_Linf(q: QTensor, s_star: float) -> QTensor:
    """Radial retraction onto the ball |Q| <= sqrt(2/3) s*; never increases |Q|."""
    cap = SQRT23 * float(s_star)
    nrm = q.norm
    if nrm <= cap:
        return q
    return q * (cap / nrm)


def azimuthal_grad_sq(q: QTensor) -> float:
    """Squared azimuthal derivative of the rotated tensor field.

    Equals |Q|^2 + 6(Q12^2 - Q11 Q22), which in basis coordinates reduces to
    4 q1^2 + q2^2 + q3^2 + 4 q4^2 (the q5 component is rotation invariant).
    """
    q1, q2, q3, q4, _ = q.coords
    return float(4.0 * q1 * q1 + q2 * q2 + q3 * q3 + 4.0 * q4 * q4)


def rotate(q: QTensor, phi: float) -> QTensor:
    """Conjugate by the rotation of angle phi around the z axis."""
    c, s = math.cos(phi), math.sin(phi)
    rot = np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])
    return QTensor.from_matrix(rot.T @ q.matrix() @ rot)


# ---------------------------------------------------------------------------
# vectorized kernels operating on (..., 5) coordinate arrays
# ---------------------------------------------------------------------------


def coords_to_entries(q: np.ndarray):
    """Matrix entries (m11, m22, m33, m12, m13, m23) of a coords array."""
    q1, q2, q3, q4, q5 = np.moveaxis(q, -1, 0)
    m11 = q4 / SQRT2 - q5 / SQRT6
    m22 = -q4 / SQRT2 - q5 / SQRT6
    m33 = 2.0 * q5 / SQRT6
    return m11, m22, m33, q1 / SQRT2, q2 / SQRT2, q3 / SQRT2


def entries_to_coords(m11, m22, m33, m12, m13, m23) -> np.ndarray:
    del m33  # implied by tracelessness
    return np.stack(
        [
            SQRT2 * m12,
            SQRT2 * m13,
            SQRT2 * m23,
            (m11 - m22) / SQRT2,
            -(m11 + m22) * math.sqrt(1.5),
        ],
        axis=-1,
    )


def azimuthal_grad_sq_arr(q: np.ndarray) -> np.ndarray:
    q1, q2, q3, q4 = q[..., 0], q[..., 1], q[..., 2], q[..., 3]
    return 4.0 * q1 * q1 + q2 * q2 + q3 * q3 + 4.0 * q4 * q4


def eigvals_desc_arr(q: np.ndarray) -> np.ndarray:
    """Sorted (descending) eigenvalues of a coords array, shape (..., 3).

    Trigonometric closed form; adequate for field diagnostics where only
    eigenvalue gaps are consumed.
    """
    m11, m22, m33, m12, m13, m23 = coords_to_entries(q)
    p1 = m12**2 + m13**2 + m23**2
    p2 = (m11**2 + m22**2 + m33**2 + 2.0 * p1) / 6.0
    p = np.sqrt(p2)
    safe = np.where(p > 0.0, p, 1.0)
    b11, b22, b33 = m11 / safe, m22 / safe, m33 / safe
    b12, b13, b23 = m12 / safe, m13 / safe, m23 / safe
    det = (
        b11 * (b22 * b33 - b23 * b23)
        - b12 * (b12 * b33 - b23 * b13)
        + b13 * (b12 * b23 - b22 * b13)
    )
    phi = np.arccos(np.clip(det / 2.0, -1.0, 1.0)) / 3.0
    l1 = 2.0 * p * np.cos(phi)
    l3 = 2.0 * p * np.cos(phi + 2.0 * np.pi / 3.0)
    l2 = -l1 - l3
    return np.stack([l1, l2, l3], axis=-1)


def biaxiality_phi_arr(q: np.ndarray, s_star: float) -> np.ndarray:
    """Vectorized biaxiality (lambda1 - lambda2)/s* over a coords array."""
    lam = eigvals_desc_arr(q)
    return (lam[..., 0] - lam[..., 1]) / float(s_star)


def retract_Linf_arr(q: np.ndarray, s_star: float) -> np.ndarray:
    """Vectorized L-infinity retraction of a coords array."""
    cap = SQRT23 * float(s_star)
    nrm = np.linalg.norm(q, axis=-1, keepdims=True)
    factor = np.where(nrm > cap, cap / np.where(nrm > 0.0, nrm, 1.0), 1.0)
    return q * factor
