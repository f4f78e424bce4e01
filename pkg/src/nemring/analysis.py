"""Post-processing of relaxed fields: defect detection and limit comparison.

Defects are located through the biaxiality indicator, which drops from 1
(uniaxial) to 0 where the two leading eigenvalues cross; node clusters below
a threshold are grouped by 4-neighbor flood fill. A single off-axis cluster
near the equator is a saturn ring, clusters hugging the symmetry axis (or no
cluster at all, when the defect has merged into the axis wall) count as a
dipole.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .energy import EnergyBreakdown, Field2D, assemble_energy
from .errors import InvalidInputError
from .limitmodel import limit_energy
from .potentials import ModelParams
from .qtensor import biaxiality_phi_arr

PI = math.pi
DEFAULT_PHI_THRESHOLD = 0.3
AXIS_ZONE = PI / 8.0
RING_ZONE = PI / 4.0


@dataclass(frozen=True)
class Defect:
    r: float
    theta: float
    min_phi: float
    eigen_gap: float
    n_nodes: int
    touches_axis: bool


@dataclass(frozen=True)
class DefectReport:
    defects: tuple[Defect, ...]
    ring_angle: float | None
    classification: str
    energy: EnergyBreakdown
    phi_min: float
    threshold: float

    def as_dict(self) -> dict:
        return {
            "classification": self.classification,
            "ring_angle": self.ring_angle,
            "phi_min": self.phi_min,
            "threshold": self.threshold,
            "defects": [
                {
                    "r": d.r,
                    "theta": d.theta,
                    "min_phi": d.min_phi,
                    "eigen_gap": d.eigen_gap,
                    "n_nodes": d.n_nodes,
                    "touches_axis": d.touches_axis,
                }
                for d in self.defects
            ],
            "energy": self.energy.as_dict(),
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=True) + "\n"


def biaxiality_field(field: Field2D) -> np.ndarray:
    """Biaxiality indicator per node, shape (n_r, n_theta)."""
    return biaxiality_phi_arr(field.values, field.params.s_star)


def phi_dump_csv(field: Field2D) -> str:
    """CSV dump r,theta,phi for heatmap plotting."""
    phi = biaxiality_field(field)
    mesh = field.mesh
    lines = ["r,theta,phi"]
    for i in range(mesh.n_r):
        for j in range(mesh.n_theta):
            lines.append(f"{mesh.rs[i]:.17g},{mesh.thetas[j]:.17g},{phi[i, j]:.17g}")
    return "\n".join(lines) + "\n"


def _clusters(mask: np.ndarray):
    """4-neighbor flood fill; yields lists of (i, j) per connected cluster."""
    n_r, n_t = mask.shape
    seen = np.zeros_like(mask, dtype=bool)
    for i0 in range(n_r):
        for j0 in range(n_t):
            if not mask[i0, j0] or seen[i0, j0]:
                continue
            stack = [(i0, j0)]
            seen[i0, j0] = True
            nodes = []
            while stack:
                i, j = stack.pop()
                nodes.append((i, j))
                for di, dj in ((1, 0), (-1, 0), (0, 1), (0, -1)):
                    a, b = i + di, j + dj
                    if 0 <= a < n_r and 0 <= b < n_t and mask[a, b] and not seen[a, b]:
                        seen[a, b] = True
                        stack.append((a, b))
            yield nodes


def detect_defects(
    field: Field2D, phi_threshold: float = DEFAULT_PHI_THRESHOLD
) -> DefectReport:
    """Locate low-biaxiality clusters and classify the configuration."""
    if not 0.0 < phi_threshold < 1.0:
        raise InvalidInputError("phi_threshold must lie in (0, 1)")
    phi = biaxiality_field(field)
    mesh = field.mesh
    mask = phi < phi_threshold

    defects = []
    for nodes in _clusters(mask):
        idx = np.array(nodes)
        rs = mesh.rs[idx[:, 0]]
        ths = mesh.thetas[idx[:, 1]]
        phis = phi[idx[:, 0], idx[:, 1]]
        min_phi = float(phis.min())
        defects.append(
            Defect(
                r=float(rs.mean()),
                theta=float(ths.mean()),
                min_phi=min_phi,
                eigen_gap=min_phi * field.params.s_star,
                n_nodes=len(nodes),
                touches_axis=bool((idx[:, 1] == 0).any() or (idx[:, 1] == mesh.n_theta - 1).any()),
            )
        )
    defects.sort(key=lambda d: d.theta)
    classification = classify_defects(defects)
    ring_angle = None
    if classification == "SR":
        ring_angle = defects[0].theta
    return DefectReport(
        defects=tuple(defects),
        ring_angle=ring_angle,
        classification=classification,
        energy=assemble_energy(field, check=False),
        phi_min=float(phi.min()),
        threshold=phi_threshold,
    )


def _is_axis_cluster(d: Defect) -> bool:
    return d.touches_axis or d.theta < AXIS_ZONE or d.theta > PI - AXIS_ZONE


def classify_defects(defects) -> str:
    """'SR' for one interior equatorial cluster, 'DP' for axis-bound clusters
    (or none), 'mixed' otherwise."""
    defects = list(defects)
    if all(_is_axis_cluster(d) for d in defects):
        return "DP"
    interior = [d for d in defects if not _is_axis_cluster(d)]
    if (
        len(defects) == 1
        and len(interior) == 1
        and abs(interior[0].theta - 0.5 * PI) < RING_ZONE
    ):
        return "SR"
    return "mixed"


def classify_configuration(report: DefectReport) -> str:
    """Re-derive the configuration label from a report's defect list."""
    return classify_defects(report.defects)


@dataclass(frozen=True)
class ComparisonRecord:
    eta_energy: float
    limit_value: float
    rel_gap: float
    theta_d: float

    def as_dict(self) -> dict:
        return {
            "eta_energy": self.eta_energy,
            "limit_value": self.limit_value,
            "rel_gap": self.rel_gap,
            "theta_d": self.theta_d,
        }


def compare_to_limit(
    report: DefectReport, params: ModelParams, theta_d: float | None = None
) -> ComparisonRecord:
    """Scaled numerical energy against the limit-model prediction.

    No assertion is made; this is a data record for convergence studies.
    The configuration angle defaults to the detected ring angle for a saturn
    ring and to 0 for a dipole.
    """
    if params.eta is None or params.beta is None:
        raise InvalidInputError("comparison needs eta and beta in the parameters")
    if theta_d is None:
        if report.classification == "SR":
            if report.ring_angle is None:
                raise InvalidInputError("saturn-ring report lacks a ring angle")
            theta_d = report.ring_angle
        elif report.classification == "DP":
            theta_d = 0.0
        else:
            raise InvalidInputError(
                "mixed configuration: pass theta_d explicitly for the comparison"
            )
    eta_energy = params.eta * report.energy.total
    limit_value = limit_energy(theta_d, params.beta, params.s_star)
    return ComparisonRecord(
        eta_energy=eta_energy,
        limit_value=limit_value,
        rel_gap=abs(eta_energy - limit_value) / abs(limit_value),
        theta_d=theta_d,
    )
