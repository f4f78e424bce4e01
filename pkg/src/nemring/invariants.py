"""Runnable invariant suites, shared by the CLI ``check`` command and pytest.

Each suite returns a list of CheckResult records. Sampling is driven by a
single 64-bit seed so runs are reproducible; the default seed matches the
CLI default.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import limitmodel, profile
from .energy import (
    Field2D,
    MeshSpec,
    annulus_elastic_energy,
    assemble_energy,
    boundary_residual,
    build_mesh,
    minimize,
    SolverOpts,
)
from .potentials import (
    ModelParams,
    bulk_f,
    bulk_f_arr,
    bulk_grad,
    field_g,
    field_g_arr,
    field_grad,
    g_on_N,
)
from .qtensor import (
    QTensor,
    azimuthal_grad_sq,
    biaxiality_phi,
    dist_N,
    from_director,
    project_N,
    reconstruct,
    retract_Linf,
    spectral,
)
from .seeds import SeedSpec, build_seed, seed_core_coords

DEFAULT_SEED = 0xC0FFEE
PI = math.pi


@dataclass(frozen=True)
class CheckResult:
    suite: str
    name: str
    passed: bool
    detail: str


def _res(suite, name, passed, detail=""):
    return CheckResult(suite=suite, name=name, passed=bool(passed), detail=detail)


def _random_coords(rng, n, scale=1.0):
    return rng.normal(0.0, scale, size=(n, 5))


def _random_unit_vectors(rng, n):
    v = rng.normal(size=(n, 3))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def _random_rotations(rng, n):
    """Uniform-ish rotations from QR of Gaussian matrices."""
    a = rng.normal(size=(n, 3, 3))
    q, r = np.linalg.qr(a)
    sign = np.sign(np.einsum("nii->ni", r))
    return q * sign[:, None, :]


# ---------------------------------------------------------------------------
# qtensor
# ---------------------------------------------------------------------------


def check_qtensor(seed: int = DEFAULT_SEED, quick: bool = False) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    out = []
    s_star = 1.5
    n_recon = 2_000 if quick else 100_000

    # spectral reconstruction roundtrip
    worst = 0.0
    for row in _random_coords(rng, n_recon):
        q = QTensor(row)
        err = (reconstruct(spectral(q)) - q).norm
        worst = max(worst, err)
    out.append(_res("qtensor", "spectral roundtrip <= 1e-10", worst <= 1e-10, f"max {worst:.2e}"))

    # azimuthal identity, vectorized
    n_azi = 10_000 if quick else 100_000
    qs = _random_coords(rng, n_azi)
    from .qtensor import azimuthal_grad_sq_arr, coords_to_entries

    m11, m22, m33, m12, m13, m23 = coords_to_entries(qs)
    lhs = np.sum(qs * qs, axis=-1) + 6.0 * (m12**2 - m11 * m22)
    rhs = 2.0 * (m11 - m22) ** 2 + 8.0 * m12**2 + 2.0 * m13**2 + 2.0 * m23**2
    ident = float(np.abs(lhs - rhs).max())
    coded = float(np.abs(lhs - azimuthal_grad_sq_arr(qs)).max())
    out.append(
        _res(
            "qtensor",
            "azimuthal identity <= 1e-12",
            ident <= 1e-12 and coded <= 1e-12,
            f"max {max(ident, coded):.2e}",
        )
    )

    # projection optimality against a brute-force direction search
    n_proj = 100 if quick else 1_000
    n_dirs = 10_000
    worst_gap = -np.inf
    tried = 0
    while tried < n_proj:
        q = QTensor(rng.normal(0.0, 1.0, 5))
        sd = spectral(q)
        if sd.lam[0] - sd.lam[1] <= 0.1:
            continue
        tried += 1
        proj = project_N(q, s_star)
        d_best = (q - proj).norm
        us = _random_unit_vectors(rng, n_dirs)
        cand = np.stack([(q - from_director(u, s_star)).norm for u in us[:50]])
        # vectorized distance for the remaining directions
        qm = q.matrix()
        diffs = qm[None, :, :] - s_star * (
            np.einsum("ni,nj->nij", us, us) - np.eye(3) / 3.0
        )
        dists = np.sqrt(np.einsum("nij,nij->n", diffs, diffs))
        gap = d_best - float(dists.min())
        worst_gap = max(worst_gap, gap)
    out.append(
        _res(
            "qtensor",
            "projection optimality vs direction grid",
            worst_gap <= 1e-6,
            f"max excess {worst_gap:.2e}",
        )
    )

    # biaxiality pinching near the vacuum manifold
    n_pinch = 500 if quick else 5_000
    worst_pinch = 0.0
    for _ in range(n_pinch):
        u = _random_unit_vectors(rng, 2)
        n, m = u[0], u[1] - np.dot(u[1], u[0]) * u[0]
        if np.linalg.norm(m) < 1e-6:
            continue
        m /= np.linalg.norm(m)
        q = from_director(n, s_star) + rng.uniform(0, 0.1 * s_star) * QTensor(
            rng.normal(0, 1, 5)
        ) * (1.0 / math.sqrt(5))
        try:
            delta = dist_N(q, s_star)
        except Exception:
            continue
        if delta > 0.1 * s_star:
            continue
        viol = abs(biaxiality_phi(q, s_star) - 1.0) - (2.0 * math.sqrt(3.0) / s_star) * delta
        worst_pinch = max(worst_pinch, viol)
    out.append(
        _res(
            "qtensor",
            "phi pinching |phi-1| <= 2 sqrt(3) dist/s*",
            worst_pinch <= 1e-12,
            f"max excess {worst_pinch:.2e}",
        )
    )

    # gradient splitting along smooth paths avoiding the cone
    n_paths = 100 if quick else 1_000
    h = 1e-6
    worst_split = -np.inf
    done = 0
    while done < n_paths:
        q0 = QTensor(rng.normal(0, 1, 5))
        dq = QTensor(rng.normal(0, 1, 5))
        t = rng.uniform(-0.5, 0.5)
        qt = q0 + t * dq
        sd = spectral(qt)
        if sd.lam[0] - sd.lam[1] < 0.2 or qt.norm < 0.2:
            continue
        done += 1
        qp, qm = q0 + (t + h) * dq, q0 + (t - h) * dq
        dphi = (biaxiality_phi(qp, s_star) - biaxiality_phi(qm, s_star)) / (2 * h)
        drho = (project_N(qp, s_star) - project_N(qm, s_star)) * (1.0 / (2 * h))
        phi_val = biaxiality_phi(qt, s_star)
        lhs = dq.norm**2
        rhs = (s_star**2 / 3.0) * dphi**2 + phi_val**2 * drho.norm**2
        worst_split = max(worst_split, rhs - lhs)
    out.append(
        _res(
            "qtensor",
            "gradient splitting inequality",
            worst_split <= 1e-6,
            f"max excess {worst_split:.2e}",
        )
    )

    # retraction: idempotent and 1-Lipschitz
    n_ret = 500 if quick else 2_000
    ok = True
    detail = ""
    for _ in range(n_ret):
        q1 = QTensor(rng.normal(0, 1.5, 5))
        q2 = QTensor(rng.normal(0, 1.5, 5))
        r1, r2 = retract_Linf(q1, s_star), retract_Linf(q2, s_star)
        if (retract_Linf(r1, s_star) - r1).norm > 1e-14:
            ok, detail = False, "not idempotent"
            break
        if (r1 - r2).norm > (q1 - q2).norm + 1e-12:
            ok, detail = False, "not 1-Lipschitz"
            break
    out.append(_res("qtensor", "retraction idempotent and 1-Lipschitz", ok, detail))
    return out


# ---------------------------------------------------------------------------
# potentials
# ---------------------------------------------------------------------------


def check_potentials(seed: int = DEFAULT_SEED, quick: bool = False) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    out = []
    p = ModelParams.create()
    s_star = p.s_star

    # nonnegativity of f over a large sample (mixed scales)
    n_f = 50_000 if quick else 1_000_000
    qs = _random_coords(rng, n_f) * rng.uniform(0.05, 3.0, size=(n_f, 1))
    fmin = float(bulk_f_arr(qs, p).min())
    out.append(_res("potentials", "f >= -1e-9 on random sample", fmin >= -1e-9, f"min {fmin:.2e}"))

    # frame invariance of f
    n_rot = 1_000 if quick else 10_000
    qs = _random_coords(rng, n_rot)
    rots = _random_rotations(rng, n_rot)
    from .qtensor import coords_to_entries, entries_to_coords

    m11, m22, m33, m12, m13, m23 = coords_to_entries(qs)
    mats = np.empty((n_rot, 3, 3))
    mats[:, 0, 0], mats[:, 1, 1], mats[:, 2, 2] = m11, m22, m33
    mats[:, 0, 1] = mats[:, 1, 0] = m12
    mats[:, 0, 2] = mats[:, 2, 0] = m13
    mats[:, 1, 2] = mats[:, 2, 1] = m23
    rotated = np.einsum("nki,nkl,nlj->nij", rots, mats, rots)
    qs_rot = entries_to_coords(
        rotated[:, 0, 0],
        rotated[:, 1, 1],
        rotated[:, 2, 2],
        rotated[:, 0, 1],
        rotated[:, 0, 2],
        rotated[:, 1, 2],
    )
    frame_err = float(np.abs(bulk_f_arr(qs, p) - bulk_f_arr(qs_rot, p)).max())
    out.append(
        _res("potentials", "frame invariance of f <= 1e-12", frame_err <= 1e-12, f"max {frame_err:.2e}")
    )

    # f vanishes on the vacuum manifold
    ns = _random_unit_vectors(rng, 1_000)
    fvals = [abs(bulk_f(from_director(n, s_star), p)) for n in ns]
    out.append(
        _res("potentials", "f = 0 on N <= 1e-12", max(fvals) <= 1e-12, f"max {max(fvals):.2e}")
    )

    # scale invariance of g
    qs = _random_coords(rng, 1_000)
    ts = rng.uniform(0.1, 10.0, size=(1_000, 1))
    gerr = float(np.abs(field_g_arr(qs) - field_g_arr(qs * ts)).max())
    out.append(_res("potentials", "g scale invariance", gerr <= 1e-12, f"max {gerr:.2e}"))

    # analytic gradients against central finite differences
    n_grad = 50 if quick else 300
    h = 1e-6
    worst_f = worst_g = 0.0
    for _ in range(n_grad):
        q = QTensor(rng.normal(0, 1, 5))
        if q.norm < 0.3:
            continue
        gf = bulk_grad(q, p).coords
        gg = field_grad(q).coords
        for k in range(5):
            e = np.zeros(5)
            e[k] = h
            fd_f = (bulk_f(QTensor(q.coords + e), p) - bulk_f(QTensor(q.coords - e), p)) / (2 * h)
            fd_g = (field_g(QTensor(q.coords + e)) - field_g(QTensor(q.coords - e))) / (2 * h)
            worst_f = max(worst_f, abs(fd_f - gf[k]) / max(1.0, abs(fd_f)))
            worst_g = max(worst_g, abs(fd_g - gg[k]) / max(1.0, abs(fd_g)))
    out.append(
        _res(
            "potentials",
            "analytic vs FD gradients <= 1e-6",
            worst_f <= 1e-6 and worst_g <= 1e-6,
            f"f {worst_f:.2e}, g {worst_g:.2e}",
        )
    )

    # Euler relation: g is 0-homogeneous, so <grad g, Q> = 0
    worst_euler = 0.0
    for _ in range(200):
        q = QTensor(rng.normal(0, 1, 5))
        if q.norm < 0.3:
            continue
        worst_euler = max(worst_euler, abs(float(np.dot(field_grad(q).coords, q.coords))))
    out.append(
        _res("potentials", "<grad g, Q> = 0 (0-homogeneity)", worst_euler <= 1e-12, f"max {worst_euler:.2e}")
    )

    # Lipschitz bound for g near N
    n_lip = 500 if quick else 5_000
    ratio_max = 0.0
    budget = 10.0 * (2.0 * math.sqrt(3.0) / s_star) * 1.5
    for _ in range(n_lip):
        n = _random_unit_vectors(rng, 1)[0]
        q = from_director(n, s_star) + QTensor(rng.normal(0, 0.08 * s_star, 5))
        try:
            d = dist_N(q, s_star)
        except Exception:
            continue
        if d <= 1e-12 or d > s_star / (2.0 * math.sqrt(3.0)):
            continue
        ratio = abs(field_g(q) - field_g(project_N(q, s_star))) / d
        ratio_max = max(ratio_max, ratio)
    out.append(
        _res(
            "potentials",
            "g Lipschitz near N (ratio finite)",
            0.0 < ratio_max <= budget,
            f"max ratio {ratio_max:.3f}, budget {budget:.3f}",
        )
    )

    # quadratic growth near N
    n_growth = 500 if quick else 5_000
    growth_min = np.inf
    for _ in range(n_growth):
        n = _random_unit_vectors(rng, 1)[0]
        q = from_director(n, s_star) + QTensor(rng.normal(0, 0.03, 5))
        try:
            d = dist_N(q, s_star)
        except Exception:
            continue
        if d <= 1e-8 or d > 0.1:
            continue
        growth_min = min(growth_min, bulk_f(q, p) / d**2)
    out.append(
        _res(
            "potentials",
            "quadratic growth f >= gamma1 dist^2 near N",
            growth_min > 1e-4,
            f"empirical gamma1 {growth_min:.4f}",
        )
    )

    # retraction decreases f outside the cap
    n_ret = 500 if quick else 5_000
    ok = True
    cap = math.sqrt(2.0 / 3.0) * s_star
    for _ in range(n_ret):
        q = QTensor(rng.normal(0, 1.5, 5))
        if q.norm <= cap * (1.0 + 1e-9):
            continue
        if not bulk_f(q, p) > bulk_f(retract_Linf(q, s_star), p):
            ok = False
            break
    out.append(_res("potentials", "f decreases under norm retraction", ok))

    # g on N consistency with the closed form
    worst = 0.0
    for n3 in rng.uniform(-1, 1, 100):
        n1 = math.sqrt(1 - n3 * n3)
        worst = max(worst, abs(g_on_N(n3) - field_g(from_director((n1, 0.0, n3), 2.0))))
    out.append(_res("potentials", "g on N closed form", worst <= 1e-12, f"max {worst:.2e}"))
    return out


# ---------------------------------------------------------------------------
# profile
# ---------------------------------------------------------------------------


def check_profile(seed: int = DEFAULT_SEED, quick: bool = False) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    out = []
    s_star = 1.5

    # pointwise equipartition of the optimal profile
    worst = 0.0
    for theta in np.linspace(0.05, PI - 0.05, 25):
        spec = profile.ProfileSpec(theta=float(theta), s_star=s_star)
        ts = np.linspace(0.0, 30.0, 500)
        n3 = np.asarray(profile.optimal_n3(ts, spec))
        dn3 = np.asarray(profile.optimal_n3_deriv(ts, spec))
        one = 1.0 - n3 * n3
        resid = np.abs(s_star**2 * dn3 * dn3 / np.maximum(one, 1e-300) - profile.SQRT32 * one)
        worst = max(worst, float(resid.max()))
    out.append(_res("profile", "equipartition residual <= 1e-10", worst <= 1e-10, f"max {worst:.2e}"))

    # quadrature agrees with the closed form
    worst = 0.0
    for theta in np.linspace(0.0, PI, 21):
        spec = profile.ProfileSpec(theta=float(theta), s_star=s_star, n_points=10_001)
        got = profile.quadrature_I(spec).value
        want = profile.closed_form_I(float(theta), 1, s_star)
        worst = max(worst, abs(got - want))
    out.append(_res("profile", "quadrature vs closed form <= 1e-6", worst <= 1e-6, f"max {worst:.2e}"))

    # subadditivity of the infimum under interval splitting
    n_sub = 10 if quick else 100
    worst_slack = np.inf
    npts = 200
    for _ in range(n_sub):
        a, b, c = rng.uniform(-1, 1, 3)
        r2 = rng.uniform(1.0, 4.0)
        r3 = r2 + rng.uniform(1.0, 4.0)
        left = profile.minimize_I(0.0, r2, a, b, s_star, npts).value
        right = profile.minimize_I(r2, r3, b, c, s_star, npts).value
        full = profile.minimize_I(0.0, r3, a, c, s_star, 2 * npts).value
        worst_slack = min(worst_slack, left + right - full)
    out.append(
        _res(
            "profile",
            "subadditivity slack >= -1e-3",
            worst_slack >= -1e-3,
            f"min slack {worst_slack:.2e}",
        )
    )

    # exponential approach to the aligned state
    worst = -np.inf
    for theta in np.linspace(0.2, PI - 0.2, 9):
        spec = profile.ProfileSpec(theta=float(theta), s_star=s_star)
        a = profile.profile_A(float(theta))
        k = profile.turning_rate(s_star)
        ts = np.linspace(0.0, 30.0, 301)
        n3 = np.asarray(profile.optimal_n3(ts, spec))
        excess = np.abs(1.0 - n3) - (2.0 / a) * np.exp(-k * ts)
        worst = max(worst, float(excess.max()))
    out.append(_res("profile", "exponential tail bound", worst <= 1e-12, f"max excess {worst:.2e}"))
    return out


# ---------------------------------------------------------------------------
# equivariant energy
# ---------------------------------------------------------------------------


def check_energy(seed: int = DEFAULT_SEED, quick: bool = False) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    out = []
    params = ModelParams.create(beta=0.5, xi=0.05)
    mesh = build_mesh(MeshSpec(r_max=4.0, n_r=12, n_theta=11))

    # weighted volume against the shell volume
    exact = 4.0 * PI / 3.0 * (4.0**3 - 1.0)
    rel = abs(mesh.weighted_volume / exact - 1.0)
    out.append(_res("energy", "weighted volume within 0.5%", rel < 5e-3, f"rel {rel:.2e}"))

    from .energy import _energy_gradient, _energy_parts, apply_boundary_conditions, project_axis

    # smooth compatible field for the gradient test
    vals = np.zeros((mesh.n_r, mesh.n_theta, 5))
    for i, r in enumerate(mesh.rs):
        for j, th in enumerate(mesh.thetas):
            ang = th + 0.3 * math.sin(2 * th) * math.exp(-(r - 1.0))
            s = params.s_star * (0.8 + 0.15 * math.cos(r))
            vals[i, j] = from_director((math.sin(ang), 0.0, math.cos(ang)), s).coords
    # out-of-plane noise on interior nodes keeps all five components active
    vals[1:-1, 1:-1] += rng.normal(0.0, 0.02, vals[1:-1, 1:-1].shape)
    f = Field2D(vals, mesh, params)
    apply_boundary_conditions(f)
    project_axis(f.values)

    parts, grad = _energy_gradient(f.values, mesh, params)
    e_scale = sum(parts)
    h = 1e-6
    worst = 0.0
    tested = 0
    while tested < 60:
        i = int(rng.integers(1, mesh.n_r - 1))
        j = int(rng.integers(0, mesh.n_theta))
        k = int(rng.integers(0, 5))
        if j in (0, mesh.n_theta - 1) and k != 4:
            continue
        tested += 1
        vp = f.values.copy()
        vp[i, j, k] += h
        vm = f.values.copy()
        vm[i, j, k] -= h
        fd = (sum(_energy_parts(vp, mesh, params)) - sum(_energy_parts(vm, mesh, params))) / (2 * h)
        noise = 1e-10 * e_scale / h
        worst = max(worst, abs(fd - grad[i, j, k]) / max(abs(fd), abs(grad[i, j, k]), noise))
    out.append(
        _res("energy", "assembled gradient vs FD <= 1e-6", worst <= 1e-6, f"max rel {worst:.2e}")
    )

    # energy against an independent per-cell summation oracle
    def oracle(values):
        from .potentials import bulk_f_arr, field_g_arr
        from .qtensor import azimuthal_grad_sq_arr

        total = 0.0
        for i in range(mesh.n_r - 1):
            for j in range(mesh.n_theta - 1):
                qc = 0.25 * (
                    values[i, j] + values[i, j + 1] + values[i + 1, j] + values[i + 1, j + 1]
                )
                d_r = (
                    values[i + 1, j] + values[i + 1, j + 1] - values[i, j] - values[i, j + 1]
                ) / (2 * mesh.dr[i])
                d_t = (
                    values[i, j + 1] + values[i + 1, j + 1] - values[i, j] - values[i + 1, j]
                ) / (2 * mesh.dtheta)
                dens = 0.5 * (np.dot(d_r, d_r) + np.dot(d_t, d_t) / mesh.r_c[i] ** 2)
                dens += float(azimuthal_grad_sq_arr(qc[None])[0]) / (2 * mesh.rho_c[i, j] ** 2)
                dens += max(float(bulk_f_arr(qc[None], params)[0]), 0.0) / params.xi**2
                dens += max(float(field_g_arr(qc[None])[0]), 0.0) / params.eta**2
                total += mesh.weight[i, j] * dens
        return total

    got = sum(_energy_parts(f.values, mesh, params))
    want = oracle(f.values)
    rel = abs(got - want) / abs(want)
    out.append(_res("energy", "independent summation oracle <= 1e-10", rel <= 1e-10, f"rel {rel:.2e}"))

    # constant preferred state: all four parts vanish, solver exits at once
    pref = Field2D.constant(mesh, params, from_director((0.0, 0.0, 1.0), params.s_star))
    bd = assemble_energy(pref, check=False)
    zero_ok = max(abs(bd.elastic_meridional), abs(bd.elastic_azimuthal), abs(bd.bulk), abs(bd.field)) <= 1e-10
    relaxed, rep = minimize(pref, SolverOpts(tol=1e-8, max_iter=10))
    out.append(
        _res(
            "energy",
            "preferred constant state is stationary",
            zero_ok and rep.converged and rep.iterations == 0,
            f"parts max {max(abs(bd.total), 0.0):.1e}, iters {rep.iterations}",
        )
    )
    return out


# ---------------------------------------------------------------------------
# seed fields
# ---------------------------------------------------------------------------


def check_seeds(seed: int = DEFAULT_SEED, quick: bool = False) -> list[CheckResult]:
    out = []
    params = ModelParams.create(beta=0.3, eta=0.15)
    mesh = build_mesh(MeshSpec(r_max=6.0, n_r=96, n_theta=96, stretch=1.02), eta=params.eta)
    from .qtensor import biaxiality_phi_arr

    for theta_d in (0.5, PI / 2, 2.5):
        spec = SeedSpec(theta_d=theta_d, eta=0.15, epsilon=0.2)
        fld = build_seed(mesh, spec, params)
        res = boundary_residual(fld)
        out.append(
            _res(
                "seeds",
                f"boundary exactness theta_d={theta_d:.3f}",
                res <= 1e-12,
                f"residual {res:.2e}",
            )
        )

        # continuity: largest neighbor jump vs interior median
        vals = fld.values
        jr = np.linalg.norm(np.diff(vals, axis=0), axis=-1) / mesh.dr[:, None]
        jt = np.linalg.norm(np.diff(vals, axis=1), axis=-1) / (
            mesh.rs[:, None] * mesh.dtheta
        )
        med = np.median(np.concatenate([jr.ravel(), jt.ravel()]))
        peak = max(jr.max(), jt.max())
        # the core ramp concentrates gradient ~ s*/(eta eps); scale the budget
        budget = 10.0 * max(med, params.s_star / (spec.eta * spec.epsilon) / 10.0)
        out.append(
            _res(
                "seeds",
                f"continuity (no O(1) jumps) theta_d={theta_d:.3f}",
                peak <= budget,
                f"peak {peak:.2f}, median {med:.4f}, budget {budget:.2f}",
            )
        )

        # uniaxial outside the core ramp
        phi = biaxiality_phi_arr(vals, params.s_star)
        rr = mesh.rs[:, None] * np.ones((1, mesh.n_theta))
        tt = np.ones((mesh.n_r, 1)) * mesh.thetas[None, :]
        local = np.hypot(rr - 1.0 - 2.0 * spec.eta, tt - theta_d) / spec.eta
        outside = local >= 2.0 * spec.epsilon + 0.05
        uni = float(np.abs(phi[outside] - 1.0).max())
        out.append(
            _res(
                "seeds",
                f"uniaxial outside ramp theta_d={theta_d:.3f}",
                uni <= 1e-12,
                f"max |phi-1| {uni:.2e}",
            )
        )

    # planar core energy law
    worst = 0.0
    for eps in (1e-2,) if quick else (1e-2, 1e-3):
        n = 512 if quick else 1024
        got = annulus_elastic_energy(
            lambda r, a: seed_core_coords(r, a, eps, 1.0), 2.0 * eps, 1.0, n, n
        )
        want = 0.5 * PI * (abs(math.log(eps)) - math.log(2.0))
        worst = max(worst, abs(got / want - 1.0))
    out.append(_res("seeds", "core energy law within 1%", worst <= 1e-2, f"rel {worst:.2e}"))
    return out


# ---------------------------------------------------------------------------
# limit model
# ---------------------------------------------------------------------------


def check_limitmodel(seed: int = DEFAULT_SEED, quick: bool = False) -> list[CheckResult]:
    out = []
    s_star = 1.0

    # analytic derivative against central differences
    h = 1e-6
    worst = 0.0
    for beta in np.linspace(0.0, 4.0, 9):
        for theta in np.linspace(0.05, PI - 0.05, 41):
            fd = (
                limitmodel.limit_energy(theta + h, beta, s_star)
                - limitmodel.limit_energy(theta - h, beta, s_star)
            ) / (2 * h)
            an = limitmodel.limit_energy_deriv(theta, beta, s_star)
            worst = max(worst, abs(fd - an) / max(1.0, abs(an)))
    out.append(_res("limit", "dE/dtheta vs FD <= 1e-8", worst <= 1e-8, f"max rel {worst:.2e}"))

    # connectedness: <= 2-interface band sets never beat one interface
    betas = [0.0, 0.5, 2.0 * 24**0.25 / PI, 2.0, 4.0 * 24**0.25 / PI, 4.0]
    grid = np.deg2rad(np.arange(1.0, 180.0, 1.0))
    worst_gap = -np.inf
    for beta in betas:
        best_single = min(
            limitmodel.limit_energy(t, beta, s_star) for t in np.concatenate([[0.0], grid, [PI]])
        )
        best_double = np.inf
        for i in range(len(grid)):
            for j in range(i + 1, len(grid)):
                for first in ("F", "Fc"):
                    e = limitmodel.limit_energy_bandset(
                        [grid[i], grid[j]], first, beta, s_star
                    )
                    if e < best_double:
                        best_double = e
        worst_gap = max(worst_gap, best_single - best_double)
    out.append(
        _res(
            "limit",
            "two-interface sets never beat one interface",
            worst_gap <= 1e-9,
            f"max advantage {worst_gap:.2e}",
        )
    )

    # bisection of the dipole/ring crossing
    def demo(beta):
        return limitmodel.limit_energy(PI / 2, beta, s_star) - limitmodel.limit_energy(
            0.0, beta, s_star
        )

    lo, hi = 0.5, 2.5
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if demo(mid) < 0:
            lo = mid
        else:
            hi = mid
    root = 0.5 * (lo + hi)
    want = limitmodel.critical_betas(s_star)[0]
    out.append(
        _res("limit", "crossing root = 2 24^(1/4)/pi", abs(root - want) <= 1e-10, f"err {abs(root-want):.2e}")
    )

    # alignment coefficients equal the radial turning closed form
    worst = 0.0
    for theta in np.linspace(0.0, PI, 31):
        worst = max(
            worst,
            abs(
                limitmodel.ROOT4_24 * s_star * (1.0 - math.cos(theta))
                - profile.closed_form_I(theta, 1, s_star)
            ),
            abs(
                limitmodel.ROOT4_24 * s_star * (1.0 + math.cos(theta))
                - profile.closed_form_I(theta, -1, s_star)
            ),
        )
    out.append(_res("limit", "E0 coefficients match turning problem", worst <= 1e-12, f"max {worst:.2e}"))
    return out


SUITES = {
    "qtensor": check_qtensor,
    "potentials": check_potentials,
    "profile": check_profile,
    "energy": check_energy,
    "seeds": check_seeds,
    "limit": check_limitmodel,
}


def run_suites(only=None, seed: int = DEFAULT_SEED, quick: bool = False):
    results = []
    for name, fn in SUITES.items():
        if only and name not in only:
            continue
        results.extend(fn(seed=seed, quick=quick))
    return results
