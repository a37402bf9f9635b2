"""The acceptance battery: every criterion as a function returning a verdict and details."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable

from heisenberg_sc import commutant as cm
from heisenberg_sc import variety as vr
from heisenberg_sc.corpus import build_corpus, comparable_pair, lambda_sample, random_point, unit_vectors
from heisenberg_sc.fock import FockElement, basis_of_degree, injected_fault
from heisenberg_sc.linalg import Matrix
from heisenberg_sc.modes import virasoro_bracket_check
from heisenberg_sc.partitions import colored_partition_numbers
from heisenberg_sc.scalars import GaussianRational
from heisenberg_sc.semiconformal import (
    NormError,
    ScPoint,
    central_charge_of,
    check_direct,
    check_matrix,
    omega_from_norm_one,
)


@dataclass
class SuiteConfig:
    d_max: int = 3
    degree_bound: int = 6
    seed: int = 0
    corpus_size: int = 60  # per (d, Lambda); two Lambda settings per d
    order_pairs: int = 60
    unit_samples: int = 12


@dataclass
class CriterionResult:
    cid: int
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)
    seconds: float = 0.0

    def line(self) -> str:
        flag = "PASS" if self.passed else "FAIL"
        return f"[{flag}] {self.cid:2d}. {self.name} ({self.seconds:.2f}s)"

    def to_json(self, timings: bool = False) -> dict:
        out = {"id": self.cid, "name": self.name, "passed": self.passed, "detail": self.detail}
        if timings:
            out["seconds"] = round(self.seconds, 3)
        return out


class Context:
    """Shared corpora and cached profiles for one suite run."""

    def __init__(self, cfg: SuiteConfig):
        self.cfg = cfg
        self.corpora: dict = {}
        self._profiles: dict = {}

    def dims(self):
        return range(1, self.cfg.d_max + 1)

    def lambdas(self, d):
        return [None, lambda_sample(d)]

    def corpus(self, d, lam):
        key = (d, lam)
        if key not in self.corpora:
            self.corpora[key] = build_corpus(d, lam, self.cfg.corpus_size, self.cfg.seed)
        return self.corpora[key]

    def positives(self, d, lam) -> list[ScPoint]:
        seen = {}
        for c in self.corpus(d, lam):
            if check_matrix(c.quadratic) and c.quadratic not in seen:
                seen[c.quadratic] = ScPoint.from_quadratic(c.quadratic)
        return list(seen.values())

    def profile(self, p: ScPoint) -> cm.CommutantProfile:
        key = p.quadratic
        if key not in self._profiles:
            self._profiles[key] = cm.commutant_dims(p, self.cfg.degree_bound)
        return self._profiles[key]


def _lam_tag(lam):
    return "0" if lam is None else ",".join(str(x) for x in lam)


def crit_equivalence(ctx: Context) -> tuple[bool, dict]:
    t0 = time.perf_counter()
    counts, disagreements = {}, []
    for d in ctx.dims():
        total = 0
        for lam in ctx.lambdas(d):
            for c in ctx.corpus(d, lam):
                q = c.quadratic
                a = check_matrix(q)
                b = check_direct(q.to_element(), q.Lambda).verdict
                total += 1
                if a != b:
                    disagreements.append({"d": d, "Lambda": _lam_tag(lam), "candidate": q.to_json(), "matrix": a, "direct": b})
        counts[str(d)] = total
    elapsed = time.perf_counter() - t0
    ok = not disagreements and all(v >= 100 for v in counts.values()) and elapsed <= 30
    return ok, {"candidates_per_d": counts, "disagreements": disagreements[:5], "within_30s": elapsed <= 30}


def crit_virasoro(ctx: Context) -> tuple[bool, dict]:
    t0 = time.perf_counter()
    checked, bad = 0, []
    for d in ctx.dims():
        if d > 2:
            continue
        for lam in ctx.lambdas(d):
            for p in ctx.positives(d, lam):
                rep = virasoro_bracket_check(p.element(), degree_bound=4, mode_bound=3, stop_at_first=True)
                checked += 1
                expected_c = central_charge_of(p.A, p.B)
                c_ok = rep.central_charge == expected_c
                if lam is None:
                    c_ok = c_ok and rep.central_charge == p.A.trace() == p.rank_of_A
                if not (rep.ok and c_ok):
                    bad.append({"point": p.to_json(), "bracket_ok": rep.ok, "c": str(rep.central_charge)})
    elapsed = time.perf_counter() - t0
    return (not bad and checked > 0 and elapsed <= 60), {"points": checked, "failures": bad[:5], "within_60s": elapsed <= 60}


def crit_graded_dims(ctx: Context) -> tuple[bool, dict]:
    rows, ok = {}, True
    for d in range(1, 4):
        got = [len(basis_of_degree(d, n)) for n in range(9)]
        want = list(colored_partition_numbers(d, 8))
        rows[str(d)] = {"enumerated": got, "oracle": want}
        ok &= got == want
    ok &= rows["2"]["enumerated"] == [1, 2, 5, 10, 20, 36, 65, 110, 185]
    return ok, rows


def crit_commutant(ctx: Context) -> tuple[bool, dict]:
    checked, bad = 0, []
    for d in ctx.dims():
        for p in ctx.positives(d, None):
            prof = ctx.profile(p)
            checked += 1
            if not prof.matches_expected:
                bad.append(prof.to_json())
    return (not bad and checked > 0), {"points": checked, "failures": bad[:3]}


def crit_tensor(ctx: Context) -> tuple[bool, dict]:
    checked, bad = 0, []
    for d in ctx.dims():
        for p in ctx.positives(d, None):
            prof = ctx.profile(p)
            checked += 1
            if not prof.tensor_identity_holds:
                bad.append(prof.to_json())
    return (not bad and checked > 0), {"points": checked, "failures": bad[:3]}


def crit_weight1(ctx: Context) -> tuple[bool, dict]:
    checked, bad = 0, []
    for d in ctx.dims():
        for p in ctx.positives(d, None):
            checked += 1
            if not cm.weight1_identification(p):
                bad.append(p.to_json())
    return (not bad and checked > 0), {"points": checked, "failures": bad[:3]}


def crit_order(ctx: Context) -> tuple[bool, dict]:
    rng = random.Random(f"order:{ctx.cfg.seed}")
    pairs = []
    for t in range(ctx.cfg.order_pairs):
        d = 1 + t % ctx.cfg.d_max
        if t % 3 == 0:
            pairs.append((random_point(rng, d), random_point(rng, d)))
        else:
            p1, p2 = comparable_pair(rng, d)
            pairs.append((p1, p2) if t % 3 == 1 else (p2, p1))
    disagreements = 0
    true_count = 0
    reversal_ok = True
    for p1, p2 in pairs:
        m = vr.leq_matrix(p1, p2)
        dr = vr.leq_direct(p1, p2)
        im = vr.leq_by_images(p1, p2)
        disagreements += not (m == dr == im)
        true_count += m
        if m:
            reversal_ok &= vr.leq_matrix(vr.involution(p2), vr.involution(p1))
    # partial-order axioms on a pool of points
    pool = []
    for d in ctx.dims():
        pool_d = [random_point(rng, d) for _ in range(8)]
        pool_d += [pairs[i][j] for i in range(len(pairs)) for j in (0, 1) if pairs[i][j].d == d][:8]
        pool.append(pool_d)
    axioms_ok = True
    for pool_d in pool:
        for a in pool_d:
            axioms_ok &= vr.leq_matrix(a, a)
            for b in pool_d:
                ab, ba = vr.leq_matrix(a, b), vr.leq_matrix(b, a)
                if ab and ba:
                    axioms_ok &= a.A == b.A
                for c in pool_d:
                    if ab and vr.leq_matrix(b, c):
                        axioms_ok &= vr.leq_matrix(a, c)
    involution_ok = True
    duality_ok = True
    for pool_d in pool:
        for a in pool_d:
            ia = vr.involution(a)
            involution_ok &= check_matrix(ia.quadratic) and vr.involution(ia) == a
            involution_ok &= ia.element() == _omega(a) - a.element()
            duality_ok &= vr.is_minimal(a) == vr.is_maximal(ia)
            duality_ok &= vr.is_maximal(a) == vr.is_minimal(ia)
            if a.d >= 3:
                swap = {vr.MINIMAL: vr.MAXIMAL, vr.MAXIMAL: vr.MINIMAL, vr.BOTTOM: vr.TOP, vr.TOP: vr.BOTTOM, vr.INTERIOR: vr.INTERIOR}
                duality_ok &= vr.classify_extremal(ia) == swap[vr.classify_extremal(a)]
    ok = disagreements == 0 and len(pairs) >= 50 and axioms_ok and reversal_ok and involution_ok and duality_ok
    return ok, {
        "pairs": len(pairs),
        "comparable_pairs": true_count,
        "route_disagreements": disagreements,
        "partial_order_axioms": axioms_ok,
        "order_reversing": reversal_ok,
        "involution": involution_ok,
        "min_max_duality": duality_ok,
    }


def _omega(p: ScPoint) -> FockElement:
    from heisenberg_sc.modes import conformal_vector

    return conformal_vector(p.d, p.Lambda)


def crit_orbits(ctx: Context) -> tuple[bool, dict]:
    rng = random.Random(f"orbit:{ctx.cfg.seed}")
    detail, ok = {}, True
    for d in ctx.dims():
        pts = ctx.positives(d, None)
        ranks = sorted({p.rank_of_A for p in pts})
        # every rank class must be represented; top up deterministically if the corpus missed one
        for k in range(d + 1):
            if k not in ranks:
                pts.append(random_point(rng, d, k=k))
        ranks = sorted({p.rank_of_A for p in pts})
        conj_ok = True
        for p in pts[:12]:
            o = vr.OrthogonalElement.random(d, rng)
            q = vr.conjugate(p, o)
            conj_ok &= check_direct(q.element()).verdict and q.rank_of_A == p.rank_of_A
            conj_ok &= vr.involution(q) == vr.conjugate(vr.involution(p), o)
        order_ok = True
        for _ in range(6):
            p1, p2 = comparable_pair(rng, d)
            o = vr.OrthogonalElement.random(d, rng)
            order_ok &= vr.leq_matrix(vr.conjugate(p1, o), vr.conjugate(p2, o)) and vr.leq_direct(
                vr.conjugate(p1, o), vr.conjugate(p2, o)
            )
        chain = vr.build_chain(d)
        chain_ok = chain.length == d and chain.is_complete()
        classes_ok = ranks == list(range(d + 1))
        ok &= conj_ok and order_ok and chain_ok and classes_ok
        detail[str(d)] = {
            "ranks_realized": ranks,
            "classes": len(ranks),
            "conjugation_preserves": conj_ok,
            "conjugation_preserves_order": order_ok,
            "chain_length": chain.length,
        }
    return ok, detail


def crit_norm_one(ctx: Context) -> tuple[bool, dict]:
    rng = random.Random(f"unit:{ctx.cfg.seed}")
    built, ok = 0, True
    for d in ctx.dims():
        for u in unit_vectors(rng, d, ctx.cfg.unit_samples):
            h = FockElement(d, [(((1, i + 1),), x) for i, x in enumerate(u)])
            p = omega_from_norm_one(h)
            rep = check_direct(p.element())
            ok &= p.central_charge == 1 and p.rank_of_A == 1 and rep.verdict and rep.central_charge == 1
            ok &= p.A == Matrix.outer(u, u)
            built += 1
    rejected = 0
    isotropic = []
    for d in range(2, ctx.cfg.d_max + 1):
        isotropic.append(FockElement(d, [(((1, 1),), 1), (((1, 2),), GaussianRational(0, 1))]))
    isotropic.append(FockElement(1, [(((1, 1),), 2)]))
    for h in isotropic:
        try:
            omega_from_norm_one(h)
        except NormError:
            rejected += 1
    ok &= rejected == len(isotropic) and built >= 10
    return ok, {"constructed": built, "rejected": rejected, "rejection_inputs": len(isotropic)}


CRITERIA: list[tuple[int, str, Callable]] = [
    (1, "semi-conformal equivalence: direct equations <=> matrix conditions", crit_equivalence),
    (2, "Virasoro bracket holds with c' = tr(A) - 12 B^T B (= rank A at Lambda = 0)", crit_virasoro),
    (3, "graded dimensions equal colored partition numbers", crit_graded_dims),
    (4, "commutant and double-commutant dimensions", crit_commutant),
    (5, "tensor decomposition of graded dimensions", crit_tensor),
    (6, "weight-1 identification of image and kernel", crit_weight1),
    (7, "order relation with its reversing involution", crit_order),
    (8, "rank orbits under conjugation and coordinate chains", crit_orbits),
    (9, "norm-one construction", crit_norm_one),
]


def _run(cid, name, fn, ctx) -> CriterionResult:
    t0 = time.perf_counter()
    try:
        passed, detail = fn(ctx)
    except Exception as exc:  # a crash is a failed criterion, not a suite crash
        passed, detail = False, {"error": f"{type(exc).__name__}: {exc}"}
    return CriterionResult(cid, name, bool(passed), detail, time.perf_counter() - t0)


def run_criterion(cid: int, cfg: SuiteConfig | None = None, ctx: Context | None = None) -> CriterionResult:
    ctx = ctx or Context(cfg or SuiteConfig())
    if cid == 10:
        return _run(10, FAULT_NAME, crit_fault_sensitivity, ctx)
    for c, name, fn in CRITERIA:
        if c == cid:
            return _run(c, name, fn, ctx)
    raise KeyError(cid)


FAULT_NAME = "injected fault makes the battery fail"
FAULT_PROBES = (1, 3, 9)


def crit_fault_sensitivity(ctx: Context) -> tuple[bool, dict]:
    cfg = ctx.cfg
    with injected_fault():
        fctx = Context(SuiteConfig(d_max=cfg.d_max, degree_bound=cfg.degree_bound, seed=cfg.seed, corpus_size=cfg.corpus_size))
        verdicts = {str(c): run_criterion(c, ctx=fctx).passed for c in FAULT_PROBES}
    failed = [c for c, v in verdicts.items() if not v]
    return bool(failed), {"probed": verdicts, "failed_under_fault": failed}


def run_suite(cfg: SuiteConfig | None = None, fault: bool = False, progress: Callable | None = None) -> list[CriterionResult]:
    """Run criteria 1-10. With ``fault`` the whole battery runs on a broken algebra."""
    cfg = cfg or SuiteConfig()
    results = []
    if fault:
        with injected_fault():
            ctx = Context(cfg)
            for cid, name, fn in CRITERIA:
                r = _run(cid, name, fn, ctx)
                results.append(r)
                if progress:
                    progress(r)
        return results
    ctx = Context(cfg)
    for cid, name, fn in CRITERIA:
        r = _run(cid, name, fn, ctx)
        results.append(r)
        if progress:
            progress(r)
    r = _run(10, FAULT_NAME, crit_fault_sensitivity, ctx)
    results.append(r)
    if progress:
        progress(r)
    return results


def summary(results: list[CriterionResult], cfg: SuiteConfig, timings: bool = False, fault: bool = False) -> dict:
    return {
        "config": {"d_max": cfg.d_max, "degree_bound": cfg.degree_bound, "seed": cfg.seed, "injected_fault": fault},
        "criteria": [r.to_json(timings) for r in results],
        "passed": all(r.passed for r in results),
    }
