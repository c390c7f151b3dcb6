"""Verification suites behind ``su3euler verify``.

Each suite returns a list of Check records. A check passes when its measured
value is at most its tolerance; ``tol`` in the config replaces every default
tolerance when given.
"""
from dataclasses import dataclass

import numpy as np

from . import cg, diffops, euler, haar, irreps
from .algebra import LAMBDA, commutator, structure_constants
from .euler import FundamentalRep
from .polystate import FundamentalSymbol, PolyState

SUITES = ("fundamental", "adjoint", "diffops", "irreps", "haar", "cg")


@dataclass(frozen=True)
class VerifyConfig:
    tol: float = None
    gauss_order: int = 24
    mc_samples: int = 10**6
    seed: int = 0

    @property
    def spec(self):
        return haar.QuadratureSpec(gauss_order=self.gauss_order, mc_samples=self.mc_samples, seed=self.seed)


@dataclass(frozen=True)
class Check:
    name: str
    value: float
    tol: float

    @property
    def passed(self):
        return bool(np.isfinite(self.value) and self.value <= self.tol)

    def to_json(self):
        return {"name": self.name, "value": float(self.value), "tol": float(self.tol), "passed": self.passed}


class _Collector:
    def __init__(self, cfg):
        self.cfg = cfg
        self.checks = []

    def add(self, name, value, tol):
        self.checks.append(Check(name, float(value), self.cfg.tol if self.cfg.tol is not None else tol))


def random_angles(n, seed):
    """Seeded draws over the canonical ranges."""
    rng = np.random.default_rng(seed)
    lo = np.array([r[0] for r in euler.CANONICAL_RANGES])
    hi = np.array([r[1] for r in euler.CANONICAL_RANGES])
    return rng.uniform(lo, hi, size=(n, 8))


def suite_fundamental(cfg):
    c = _Collector(cfg)
    x = random_angles(1000, cfg.seed)
    for rep in FundamentalRep:
        cl, pr = euler.closed_rep(x, rep), euler.product_rep(x, rep)
        c.add(f"closed_vs_product[{rep.value}]", np.max(np.abs(cl - pr)), 1e-12)
        c.add(f"unitarity[{rep.value}]", np.max(np.abs(cl @ np.conj(np.swapaxes(cl, -1, -2)) - np.eye(3))), 1e-12)
        c.add(f"det[{rep.value}]", np.max(np.abs(np.linalg.det(cl) - 1)), 1e-12)
    sub = euler.substituted_rep(x)
    c.add("star_is_substituted", np.max(np.abs(sub - euler.closed_rep(x, FundamentalRep.THREE_STAR))), 1e-12)
    f = structure_constants()
    resid = max(
        np.max(np.abs(commutator(LAMBDA[i], LAMBDA[j]) - 2j * np.einsum("k,kab->ab", f[i, j], LAMBDA)))
        for i in range(8) for j in range(8)
    )
    c.add("gellmann_commutators", resid, 1e-12)
    return c.checks


def suite_adjoint(cfg):
    c = _Collector(cfg)
    x = random_angles(500, cfg.seed)
    R = euler.adjoint_closed(x)
    Rc = euler.adjoint_from_conjugation(x)
    Rs = euler.adjoint_from_conjugation(x, FundamentalRep.THREE_STAR)
    c.add("closed_vs_conjugation", np.max(np.abs(R - Rc)), 1e-10)
    c.add("three_vs_threestar", np.max(np.abs(Rc - Rs)), 1e-10)
    c.add("orthogonality", np.max(np.abs(np.swapaxes(R, -1, -2) @ R - np.eye(8))), 1e-10)
    c.add("det", np.max(np.abs(np.linalg.det(R) - 1)), 1e-10)
    # the angle product factors as U = U1 U2 by zeroing trailing / leading angles
    x1, x2 = x.copy(), x.copy()
    x1[:, 3:] = 0.0
    x2[:, :3] = 0.0
    split = euler.adjoint_from_conjugation(x2) @ euler.adjoint_from_conjugation(x1)
    c.add("homomorphism_split", np.max(np.abs(Rc - split)), 1e-12)
    # composition: R(u1 u2) = R(u2) R(u1) for the matrices conjugated with
    u1, u2 = euler.product_rep(x[:2])
    c.add("homomorphism", np.max(np.abs(euler.adjoint_of_matrix(u1 @ u2)
                                        - euler.adjoint_of_matrix(u2) @ euler.adjoint_of_matrix(u1))), 1e-12)
    return c.checks


def _element_field(rep, i, j):
    return lambda x: euler.closed_rep(x, rep)[..., i, j]


def suite_diffops(cfg):
    c = _Collector(cfg)
    pts = irreps.probe_points(4, cfg.seed)
    worst = {"T3": 0.0, "Y": 0.0, "T3r": 0.0, "Yr": 0.0}
    for rep in FundamentalRep:
        wts = euler.FUNDAMENTAL_WEIGHTS[rep]
        for i in range(3):
            for j in range(3):
                f = _element_field(rep, i, j)
                fx = f(pts)
                expect = {"T3": wts[i][0], "Y": wts[i][1], "T3r": wts[j][0], "Yr": wts[j][1]}
                for name, lab in expect.items():
                    got = diffops.apply(name, f, pts)
                    worst[name] = max(worst[name], float(np.max(np.abs(got - float(lab) * fx))))
    for name, v in worst.items():
        c.add(f"eigenvalue[{name}]", v, 1e-6)
    # su(2) triples on both sides: [X+, X-] = 2 X3 and [X3, X+] = X+ with
    # U3 = (3/4) Y - T3/2 and V3 = (3/4) Y + T3/2
    probes = _commutator_probes(cfg.seed)
    for side in ("", "r"):
        for x in ("T", "U", "V"):
            three = _x3(x, side)
            r1 = diffops.commutator_residual(x + "+" + side, x + "-" + side, [(2 * a, op) for a, op in three], probes)
            r3 = _x3_raise_residual(x, side, probes)
            c.add(f"commutator[{x}+{side},{x}-{side}]", r1, 1e-5)
            c.add(f"commutator[{x}3{side},{x}+{side}]", r3, 1e-5)
    c.add("commutator[T3,T3r]", diffops.commutator_residual("T3", "T3r", None, probes), 1e-5)
    return c.checks


def _x3(x, side):
    if x == "T":
        return [(1.0, "T3" + side)]
    s = -0.5 if x == "U" else 0.5
    return [(0.75, "Y" + side), (s, "T3" + side)]


def _x3_raise_residual(x, side, probes):
    # [X3, X+] = X+ with X3 a combination of T3 and Y: linear in the commutator
    worst = 0.0
    for f, at in probes:
        plus = x + "+" + side
        lhs = 0.0
        for a, op in _x3(x, side):
            lhs = lhs + a * (diffops.apply(op, diffops.applied(plus, f), at)
                             - diffops.apply(plus, diffops.applied(op, f), at))
        worst = max(worst, float(np.max(np.abs(lhs - diffops.apply(plus, f, at)))))
    return worst


def _commutator_probes(seed, n=20):
    """20 (field, point) probes over the 18 fundamental elements."""
    pts = irreps.probe_points(n, seed + 1)
    out = []
    for k in range(n):
        rep = FundamentalRep.THREE if k % 2 == 0 else FundamentalRep.THREE_STAR
        i, j = divmod(k % 9, 3)
        out.append((_element_field(rep, i, j), pts[k]))
    return out


HW_LABELS = ((1, 0), (0, 1), (1, 1), (2, 0), (2, 1))
RAISING = ("T+", "U+", "V+", "T+r", "U+r", "V+r")


def suite_irreps(cfg):
    c = _Collector(cfg)
    pts = irreps.probe_points(5, cfg.seed)
    worst = 0.0
    for lab in HW_LABELS:
        f = irreps.highest_weight_field(lab)
        for op in RAISING:
            worst = max(worst, float(np.max(np.abs(diffops.apply(op, f, pts)))))
        c.add(f"field_vs_symbols[{lab[0]},{lab[1]}]",
              np.max(np.abs(f(pts) - irreps.highest_weight(lab)(pts))), 1e-12)
    c.add("highest_weight_annihilation", worst, 1e-5)
    for lab in ((1, 1), (2, 1)):
        ir = irreps.generate_irrep(lab)
        c.add(f"state_count[{lab[0]},{lab[1]}]", abs(ir.dim - irreps.dimension(lab)), 0)
        G = haar.gram_matrix([s.state for s in ir.states], cfg.spec)
        nrm = haar.V0 / ir.dim
        c.add(f"gram[{lab[0]},{lab[1]}]", np.max(np.abs(G - nrm * np.eye(ir.dim))) / nrm, 1e-8)
        cas = [casimir_ratio(s.state) for s in ir.states]
        c.add(f"casimir_constant[{lab[0]},{lab[1]}]", np.ptp(cas), 1e-10)
    # algebraic ladder action against finite differences on the octet
    ir = irreps.generate_irrep((1, 1))
    x = irreps.probe_points(3, cfg.seed + 2)
    worst = 0.0
    for s in ir.states:
        for op in ("T+", "T-", "U+", "U-", "V+", "V-"):
            alg = irreps.ladder_action(op, s.state)(x)
            fd = diffops.apply(op, s.state, x)
            worst = max(worst, float(np.max(np.abs(alg - fd))))
    c.add("octet_algebraic_vs_fd", worst, 1e-5)
    return c.checks


def casimir_ratio(state, n=3, seed=11):
    x = irreps.probe_points(n, seed)
    return float(np.mean((irreps.casimir(state)(x) / state(x)).real))


def suite_haar(cfg):
    c = _Collector(cfg)
    spec = cfg.spec
    v = haar.group_volume(spec)
    c.add("volume_separable", abs(v - haar.V0) / haar.V0, 1e-12)
    v2 = haar.group_volume(haar.QuadratureSpec(gauss_order=2 * spec.gauss_order))
    c.add("volume_order_doubling", abs(v2 - v) / v, 1e-12)
    mc_spec = haar.QuadratureSpec(mode=haar.Mode.MONTE_CARLO, mc_samples=spec.mc_samples, seed=spec.seed)
    vm, err = haar.group_volume_mc(mc_spec)
    c.add("volume_mc_sigmas", abs(vm - haar.V0) / err, 3.0)
    groups = [(1, [irreps.generate_irrep((0, 0)).states[0].state])]
    for lab in ((1, 0), (0, 1), (1, 1)):
        groups.append((irreps.dimension(lab), [s.state for s in irreps.generate_irrep(lab).states]))
    rep = haar.orthogonality_suite(groups, spec)
    c.add("gram_offdiag", rep.gram_max_offdiag, 1e-8)
    c.add("gram_diag", rep.gram_max_diag_err, 1e-8)
    # translation invariance, exact in separable mode
    g = euler.product_rep(random_angles(1, spec.seed + 5))[0]
    sts = [PolyState.symbol(FundamentalSymbol(FundamentalRep.THREE, i, j)) for i in range(3) for j in range(3)]
    G0 = haar.gram_matrix(sts, spec)
    GL = haar.gram_matrix([s.left_translate(g) for s in sts], spec)
    GR = haar.gram_matrix([s.right_translate(g) for s in sts], spec)
    c.add("left_invariance", np.max(np.abs(GL - G0)) / haar.V0, 1e-10)
    c.add("right_invariance", np.max(np.abs(GR - G0)) / haar.V0, 1e-10)
    return c.checks


def suite_cg(cfg):
    c = _Collector(cfg)
    expect = {
        ((1, 0), (0, 1)): {(1, 1): 1, (0, 0): 1},
        ((1, 0), (1, 0)): {(2, 0): 1, (0, 1): 1},
        ((0, 0), (1, 1)): {(1, 1): 1},
    }
    for (r1, r2), want in expect.items():
        got = {(t.p, t.q): m for t, m in cg.tensor_decompose(r1, r2)}
        c.add(f"decompose[{r1}x{r2}]", 0.0 if got == want else 1.0, 0.0)
        tables = cg.all_couplings(r1, r2)
        S = cg.stacked_matrix(tables)
        c.add(f"orthogonal[{r1}x{r2}]", np.max(np.abs(S @ S.T - np.eye(len(S)))), 1e-8)
        worst = 0.0
        for t in tables:
            O = cg.oracle_coefficients(r1, r2, t.target)
            worst = max(worst, _phase_aligned_diff(O, t.coefficients))
        c.add(f"oracle[{r1}x{r2}]", worst, 1e-8)
        c.add(f"equivariance[{r1}x{r2}]", max(cg.equivariance_residual(t) for t in tables), 1e-10)
    return c.checks


def _phase_aligned_diff(a, b):
    """max |a e^{i phi} - b| with one global phase phi chosen optimally."""
    ov = np.vdot(a.ravel(), b.ravel())
    ph = ov / abs(ov) if abs(ov) > 0 else 1.0
    return float(np.max(np.abs(a * ph - b)))


_RUNNERS = {
    "fundamental": suite_fundamental,
    "adjoint": suite_adjoint,
    "diffops": suite_diffops,
    "irreps": suite_irreps,
    "haar": suite_haar,
    "cg": suite_cg,
}


def run(suite, cfg=VerifyConfig()):
    """{suite name: [Check]} for one suite or 'all'."""
    names = SUITES if suite == "all" else (suite,)
    if any(n not in _RUNNERS for n in names):
        raise ValueError(f"unknown suite {suite!r}")
    return {n: _RUNNERS[n](cfg) for n in names}


def report(results, cfg):
    return {
        "config": {"tol": cfg.tol, "gauss_order": cfg.gauss_order, "mc_samples": cfg.mc_samples, "seed": cfg.seed},
        "suites": {n: [ch.to_json() for ch in checks] for n, checks in results.items()},
        "passed": all(ch.passed for checks in results.values() for ch in checks),
    }
