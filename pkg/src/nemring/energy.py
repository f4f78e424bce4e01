"""Equivariant reduction of the 3D energy to the meridional half-plane.

The full energy of a rotationally equivariant tensor field around a unit
colloid in the regime of coherence lengths (xi, eta) is

    E = integral over r > 1 of  1/2 |grad Q|^2 + f(Q)/xi^2 + g(Q)/eta^2,

which in polar meridional coordinates (r, theta) with rho = r sin(theta)
becomes a 2D integral with volume element 2 pi rho r dr dtheta and gradient
density 1/2(|dQ/dr|^2 + r^-2 |dQ/dtheta|^2) + (1/(2 rho^2)) |dQ/dphi|^2,
the azimuthal part being the algebraic function of Q from the equivariance
identity. The discretization is midpoint quadrature on cells of the node
grid with 4-corner averages, and the solver gradient is the exact gradient
of that discrete sum (discretize then optimize), so finite differences of
the assembled energy match the assembled gradient to rounding.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import asdict, dataclass, field as dc_field
from pathlib import Path

import numpy as np

from .errors import (
    BoundaryViolationError,
    InvalidInputError,
    InvalidSpecError,
    SolverStallError,
)
from .potentials import (
    NORM_FLOOR_SCALE,
    ModelParams,
    bulk_f_arr,
    bulk_grad_arr,
    field_g_arr,
    field_grad_arr,
)
from .qtensor import SQRT23, QTensor, azimuthal_grad_sq_arr, retract_Linf_arr

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class MeshSpec:
    """Polar mesh over the truncated exterior domain 1 <= r <= r_max."""

    r_max: float
    n_r: int
    n_theta: int
    stretch: float = 1.0

    def __post_init__(self):
        if not self.r_max > 1.0:
            raise InvalidSpecError("r_max must exceed the colloid radius 1")
        if self.n_r < 8 or self.n_theta < 8:
            raise InvalidSpecError("need at least 8 nodes per direction")
        if self.stretch < 1.0:
            raise InvalidSpecError("stretch must be >= 1")


class Mesh:
    """Node coordinates, cell midpoints and quadrature weights."""

    def __init__(self, spec: MeshSpec):
        self.spec = spec
        g = spec.stretch
        if g == 1.0:
            rs = np.linspace(1.0, spec.r_max, spec.n_r)
        else:
            steps = np.power(g, np.arange(spec.n_r - 1))
            cum = np.concatenate([[0.0], np.cumsum(steps)])
            rs = 1.0 + (spec.r_max - 1.0) * cum / cum[-1]
            rs[-1] = spec.r_max
        self.rs = rs
        self.thetas = np.linspace(0.0, math.pi, spec.n_theta)
        self.dr = np.diff(rs)
        self.dtheta = float(self.thetas[1] - self.thetas[0])
        self.r_c = 0.5 * (rs[:-1] + rs[1:])
        self.theta_c = 0.5 * (self.thetas[:-1] + self.thetas[1:])
        self.rho_c = self.r_c[:, None] * np.sin(self.theta_c)[None, :]
        # 2 pi rho r  dr dtheta, the 3D volume carried by each cell
        self.weight = (
            TWO_PI
            * self.rho_c
            * self.r_c[:, None]
            * self.dr[:, None]
            * self.dtheta
        )

    @property
    def n_r(self) -> int:
        return self.spec.n_r

    @property
    def n_theta(self) -> int:
        return self.spec.n_theta

    @property
    def weighted_volume(self) -> float:
        return float(self.weight.sum())


def build_mesh(spec: MeshSpec, eta: float | None = None) -> Mesh:
    """Construct the mesh; warns when the truncation is tight for a given eta."""
    if eta is not None and spec.r_max <= 1.0 + 4.0 * eta:
        warnings.warn(
            f"r_max = {spec.r_max} is inside the boundary layer 1 + 4 eta = "
            f"{1.0 + 4.0 * eta}; truncation error will not be negligible",
            stacklevel=2,
        )
    return Mesh(spec)


def boundary_datum_coords(thetas, s_star: float) -> np.ndarray:
    """Radial anchoring s*(x^ x x^ - Id/3), x^ = (sin t, 0, cos t), as coords."""
    t = np.asarray(thetas, dtype=float)
    sin, cos = np.sin(t), np.cos(t)
    z = np.zeros_like(t)
    return np.stack(
        [
            z,
            math.sqrt(2.0) * s_star * sin * cos,
            z,
            s_star * sin * sin / math.sqrt(2.0),
            s_star * (3.0 * cos * cos - 1.0) / math.sqrt(6.0),
        ],
        axis=-1,
    )


def far_field_coords(s_star: float) -> np.ndarray:
    return np.array([0.0, 0.0, 0.0, 0.0, 2.0 * s_star / math.sqrt(6.0)])


@dataclass
class Field2D:
    """A tensor per node of the (r, theta) grid, plus mesh and parameters."""

    values: np.ndarray
    mesh: Mesh
    params: ModelParams

    def __post_init__(self):
        expected = (self.mesh.n_r, self.mesh.n_theta, 5)
        if self.values.shape != expected:
            raise InvalidInputError(
                f"field shape {self.values.shape} does not match mesh {expected}"
            )

    def copy(self) -> "Field2D":
        return Field2D(self.values.copy(), self.mesh, self.params)

    def qtensor_at(self, i: int, j: int) -> QTensor:
        return QTensor(self.values[i, j])

    @staticmethod
    def constant(mesh: Mesh, params: ModelParams, q: QTensor) -> "Field2D":
        vals = np.broadcast_to(q.coords, (mesh.n_r, mesh.n_theta, 5)).copy()
        return Field2D(vals, mesh, params)


def apply_boundary_conditions(field: Field2D) -> None:
    """Overwrite the Dirichlet rows with the exact boundary data."""
    s = field.params.s_star
    field.values[0] = boundary_datum_coords(field.mesh.thetas, s)
    field.values[-1] = far_field_coords(s)


def project_axis(values: np.ndarray) -> None:
    """Restrict the axis rows to the equivariant subspace t(e3 x e3 - Id/3)."""
    values[:, 0, :4] = 0.0
    values[:, -1, :4] = 0.0


def boundary_residual(field: Field2D) -> float:
    """Largest violation of the boundary, axis and norm-cap invariants."""
    s = field.params.s_star
    vals = field.values
    res = float(
        np.abs(vals[0] - boundary_datum_coords(field.mesh.thetas, s)).max()
    )
    res = max(res, float(np.abs(vals[-1] - far_field_coords(s)).max()))
    res = max(res, float(np.abs(vals[:, 0, :4]).max()))
    res = max(res, float(np.abs(vals[:, -1, :4]).max()))
    cap = SQRT23 * s + 1e-12
    norms = np.linalg.norm(vals, axis=-1)
    res = max(res, float(max(0.0, norms.max() - cap)))
    return res


def check_boundary(field: Field2D, tol: float = 1e-9) -> None:
    res = boundary_residual(field)
    if res > tol:
        raise BoundaryViolationError(
            f"field violates boundary/axis/cap invariants by {res:.3e}"
        )


@dataclass(frozen=True)
class EnergyBreakdown:
    elastic_meridional: float
    elastic_azimuthal: float
    bulk: float
    field: float
    total: float
    grad_norm: float

    def as_dict(self) -> dict:
        return asdict(self)


def _regime(params: ModelParams) -> tuple[float, float]:
    if params.xi is None or params.eta is None:
        raise InvalidInputError("energy assembly needs both xi and eta set")
    return params.xi, params.eta


def _corners(values: np.ndarray):
    return values[:-1, :-1], values[:-1, 1:], values[1:, :-1], values[1:, 1:]


def _energy_parts(values: np.ndarray, mesh: Mesh, params: ModelParams):
    xi, eta = _regime(params)
    q00, q01, q10, q11 = _corners(values)
    dr = mesh.dr[:, None, None]
    d_r = (q10 + q11 - q00 - q01) / (2.0 * dr)
    d_t = (q01 + q11 - q00 - q10) / (2.0 * mesh.dtheta)
    qc = 0.25 * (q00 + q01 + q10 + q11)

    r2 = (mesh.r_c**2)[:, None]
    rho2 = mesh.rho_c**2
    w = mesh.weight

    em = 0.5 * (np.sum(d_r * d_r, axis=-1) + np.sum(d_t * d_t, axis=-1) / r2)
    ea = azimuthal_grad_sq_arr(qc) / (2.0 * rho2)
    # clamp rounding-level negatives: f and g are nonnegative analytically,
    # and their gradients vanish wherever the clamp can activate
    fb = np.maximum(bulk_f_arr(qc, params), 0.0) / xi**2
    fg = np.maximum(field_g_arr(qc), 0.0) / eta**2
    return (
        float((w * em).sum()),
        float((w * ea).sum()),
        float((w * fb).sum()),
        float((w * fg).sum()),
    )


def _mask_gradient(grad: np.ndarray) -> None:
    grad[0] = 0.0
    grad[-1] = 0.0
    grad[:, 0, :4] = 0.0
    grad[:, -1, :4] = 0.0


def _free_dof_count(mesh: Mesh) -> int:
    interior = (mesh.n_r - 2) * (mesh.n_theta - 2) * 5
    axis = 2 * (mesh.n_r - 2)
    return interior + axis


def _energy_gradient(values: np.ndarray, mesh: Mesh, params: ModelParams):
    """Exact gradient of the discrete energy with respect to node coordinates."""
    xi, eta = _regime(params)
    q00, q01, q10, q11 = _corners(values)
    dr = mesh.dr[:, None, None]
    d_r = (q10 + q11 - q00 - q01) / (2.0 * dr)
    d_t = (q01 + q11 - q00 - q10) / (2.0 * mesh.dtheta)
    qc = 0.25 * (q00 + q01 + q10 + q11)

    r2 = (mesh.r_c**2)[:, None]
    rho2 = mesh.rho_c**2
    w = mesh.weight
    we = w[..., None]

    em = 0.5 * (np.sum(d_r * d_r, axis=-1) + np.sum(d_t * d_t, axis=-1) / r2)
    ea = azimuthal_grad_sq_arr(qc) / (2.0 * rho2)
    fb = np.maximum(bulk_f_arr(qc, params), 0.0) / xi**2
    fg = np.maximum(field_g_arr(qc), 0.0) / eta**2
    parts = (
        float((w * em).sum()),
        float((w * ea).sum()),
        float((w * fb).sum()),
        float((w * fg).sum()),
    )

    # elastic contributions enter through the finite differences
    gr = we * d_r / (2.0 * dr)
    gt = we * d_t / (2.0 * mesh.dtheta * r2[..., None])

    # pointwise contributions enter through the 4-corner midpoint value
    q1, q2, q3, q4 = qc[..., 0], qc[..., 1], qc[..., 2], qc[..., 3]
    azi = np.zeros_like(qc)
    azi[..., 0] = 8.0 * q1
    azi[..., 1] = 2.0 * q2
    azi[..., 2] = 2.0 * q3
    azi[..., 3] = 8.0 * q4
    point = azi / (2.0 * rho2)[..., None]
    point += bulk_grad_arr(qc, params) / xi**2
    point += field_grad_arr(qc, NORM_FLOOR_SCALE * params.s_star) / eta**2
    gc = 0.25 * we * point

    grad = np.zeros_like(values)
    grad[:-1, :-1] += gc - gr - gt
    grad[:-1, 1:] += gc - gr + gt
    grad[1:, :-1] += gc + gr - gt
    grad[1:, 1:] += gc + gr + gt
    _mask_gradient(grad)
    return parts, grad


def _projected_gradient(values: np.ndarray, grad: np.ndarray, s_star: float) -> np.ndarray:
    """KKT residual of the norm-cap constraint |Q| <= sqrt(2/3) s*.

    Where a node saturates the cap and the descent direction points outward,
    the retraction annihilates the radial component, so that component is
    removed before measuring stationarity.
    """
    cap = SQRT23 * s_star
    nrm = np.linalg.norm(values, axis=-1)
    active = nrm >= cap * (1.0 - 1e-9)
    safe = np.where(nrm > 0.0, nrm, 1.0)
    radial = np.sum(grad * values, axis=-1) / safe
    blocked = active & (radial < 0.0)
    out = grad.copy()
    out -= np.where(blocked, radial, 0.0)[..., None] * (values / safe[..., None])
    _mask_gradient(out)
    return out


def _grad_norm(values: np.ndarray, grad: np.ndarray, mesh: Mesh, s_star: float) -> float:
    gp = _projected_gradient(values, grad, s_star)
    return float(np.linalg.norm(gp) / math.sqrt(_free_dof_count(mesh)))


def assemble_energy(field: Field2D, check: bool = True) -> EnergyBreakdown:
    """Energy breakdown of a field, including the projected-gradient norm."""
    if check:
        check_boundary(field)
    parts, grad = _energy_gradient(field.values, field.mesh, field.params)
    em, ea, fb, fg = parts
    return EnergyBreakdown(
        elastic_meridional=em,
        elastic_azimuthal=ea,
        bulk=fb,
        field=fg,
        total=em + ea + fb + fg,
        grad_norm=_grad_norm(field.values, grad, field.mesh, field.params.s_star),
    )


def assemble_gradient(field: Field2D, check: bool = True) -> np.ndarray:
    """Gradient of the discrete energy; zero on Dirichlet and constrained slots."""
    if check:
        check_boundary(field)
    _, grad = _energy_gradient(field.values, field.mesh, field.params)
    return grad


@dataclass(frozen=True)
class SolverOpts:
    tol: float = 1e-5
    max_iter: int = 20000
    step0: float = 1e-3
    record_energy: bool = True


@dataclass(frozen=True)
class ConvergenceReport:
    converged: bool
    iterations: int
    grad_norm: float
    energy_initial: float
    energy_final: float
    backtracks: int
    message: str
    energy_trace: tuple = ()

    def as_dict(self) -> dict:
        d = asdict(self)
        d["energy_trace"] = list(self.energy_trace)
        return d


def minimize(field0: Field2D, opts: SolverOpts = SolverOpts()):
    """Projected gradient flow with Barzilai-Borwein steps and backtracking.

    Every accepted step is followed by the L-infinity retraction and the
    axis-subspace projection, and never increases the energy. Returns the
    relaxed field and a convergence report; raises SolverStallError when no
    descent step of any size is accepted.
    """
    check_boundary(field0)
    mesh, params = field0.mesh, field0.params
    x = field0.values.copy()
    project_axis(x)
    x = retract_Linf_arr(x, params.s_star)

    parts, grad = _energy_gradient(x, mesh, params)
    energy = sum(parts)
    gnorm = _grad_norm(x, grad, mesh, params.s_star)
    trace = [energy] if opts.record_energy else []
    backtracks = 0
    alpha = opts.step0
    prev_x = None
    prev_grad = None

    it = 0
    while gnorm > opts.tol and it < opts.max_iter:
        it += 1
        if prev_x is not None:
            s = x - prev_x
            y = grad - prev_grad
            sy = float(np.sum(s * y))
            if sy > 0.0:
                alpha = min(max(float(np.sum(s * s)) / sy, 1e-14), 1e6)
            else:
                alpha = min(alpha * 2.0, 1e6)

        step = alpha
        accepted = False
        for _ in range(70):
            cand = x - step * grad
            project_axis(cand)
            cand = retract_Linf_arr(cand, params.s_star)
            cand_energy = sum(_energy_parts(cand, mesh, params))
            if cand_energy < energy:
                accepted = True
                break
            backtracks += 1
            step *= 0.5
        if not accepted:
            report = ConvergenceReport(
                converged=False,
                iterations=it,
                grad_norm=gnorm,
                energy_initial=trace[0] if trace else energy,
                energy_final=energy,
                backtracks=backtracks,
                message="line search underflow",
                energy_trace=tuple(trace),
            )
            raise SolverStallError(
                "minimize: no descent direction found",
                last_iterate=Field2D(x, mesh, params),
                diagnostics={"report": report, "alpha": alpha, "grad_norm": gnorm},
            )
        prev_x, prev_grad = x, grad
        parts, grad = _energy_gradient(cand, mesh, params)
        x = cand
        energy = cand_energy
        alpha = step
        gnorm = _grad_norm(x, grad, mesh, params.s_star)
        if opts.record_energy:
            trace.append(energy)

    em, ea, fb, fg = parts
    report = ConvergenceReport(
        converged=gnorm <= opts.tol,
        iterations=it,
        grad_norm=gnorm,
        energy_initial=trace[0] if trace else energy,
        energy_final=energy,
        backtracks=backtracks,
        message="converged" if gnorm <= opts.tol else "max_iter reached",
        energy_trace=tuple(trace),
    )
    return Field2D(x, mesh, params), report


def breakdown_of(field: Field2D) -> EnergyBreakdown:
    return assemble_energy(field, check=False)


# ---------------------------------------------------------------------------
# planar polar harness (defect-core energy law)
# ---------------------------------------------------------------------------


def annulus_elastic_energy(
    sample_fn, r_inner: float, r_outer: float, n_r: int, n_alpha: int
) -> float:
    """Meridional elastic energy 1/2 integral |grad' Q|^2 over a planar annulus.

    ``sample_fn(r, alpha)`` must accept broadcast arrays and return coords of
    shape (..., 5). Uniform polar grid, periodic in alpha, same midpoint
    finite-difference quadrature as the main assembler.
    """
    if n_r < 2 or n_alpha < 8:
        raise InvalidInputError("annulus grid too coarse")
    rs = np.linspace(r_inner, r_outer, n_r)
    alphas = np.linspace(0.0, TWO_PI, n_alpha, endpoint=False)
    q = sample_fn(rs[:, None], alphas[None, :])
    dalpha = TWO_PI / n_alpha
    dr = rs[1] - rs[0]

    nxt = np.roll(np.arange(n_alpha), -1)
    q00 = q[:-1]
    q01 = q[:-1, nxt]
    q10 = q[1:]
    q11 = q[1:, nxt]
    d_r = (q10 + q11 - q00 - q01) / (2.0 * dr)
    d_a = (q01 + q11 - q00 - q10) / (2.0 * dalpha)
    r_c = 0.5 * (rs[:-1] + rs[1:])[:, None]
    dens = 0.5 * (np.sum(d_r * d_r, axis=-1) + np.sum(d_a * d_a, axis=-1) / r_c**2)
    return float(np.sum(dens * r_c * dr * dalpha))


# ---------------------------------------------------------------------------
# checkpoint files
# ---------------------------------------------------------------------------

CHECKPOINT_HEADER = "i,j,r,theta,q1,q2,q3,q4,q5"


def _meta_path(path: Path) -> Path:
    return path.with_name(path.stem + ".meta.json") if path.suffix else Path(
        str(path) + ".meta.json"
    )


def write_checkpoint(
    field: Field2D,
    path,
    breakdown: EnergyBreakdown | None = None,
    report: ConvergenceReport | None = None,
) -> Path:
    """Write the field as CSV plus a JSON sidecar with mesh/params/energy."""
    path = Path(path)
    mesh = field.mesh
    lines = [CHECKPOINT_HEADER]
    for i in range(mesh.n_r):
        r = mesh.rs[i]
        for j in range(mesh.n_theta):
            th = mesh.thetas[j]
            q = field.values[i, j]
            lines.append(
                f"{i},{j},{r:.17g},{th:.17g},"
                f"{q[0]:.17g},{q[1]:.17g},{q[2]:.17g},{q[3]:.17g},{q[4]:.17g}"
            )
    path.write_text("\n".join(lines) + "\n")

    meta = {
        "mesh": asdict(mesh.spec),
        "params": asdict(field.params),
        "energy": breakdown.as_dict() if breakdown is not None else None,
        "solver": report.as_dict() if report is not None else None,
    }
    _meta_path(path).write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n")
    return path


def read_checkpoint(path) -> tuple[Field2D, dict]:
    """Load a checkpoint written by :func:`write_checkpoint`."""
    path = Path(path)
    meta = json.loads(_meta_path(path).read_text())
    mesh = Mesh(MeshSpec(**meta["mesh"]))
    params = ModelParams(**meta["params"])
    values = np.zeros((mesh.n_r, mesh.n_theta, 5))
    with path.open() as fh:
        header = fh.readline().strip()
        if header != CHECKPOINT_HEADER:
            raise InvalidInputError(f"unexpected checkpoint header {header!r}")
        for line in fh:
            cells = line.strip().split(",")
            i, j = int(cells[0]), int(cells[1])
            values[i, j] = [float(v) for v in cells[4:9]]
    return Field2D(values, mesh, params), meta
