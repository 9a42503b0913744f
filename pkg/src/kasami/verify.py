"""Cross-check suite: every closed form against an independent enumeration.

Each check returns ``(ok, expected, actual)``; a check that would exceed the
enumeration budget raises :class:`Skip` (or ``BudgetExceeded``) and is reported
as skipped with the reason.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field

import numpy as np

from . import codes, curves, quadform as qf, sequences as sq, sums, tables
from .cyclo import CyclotomicInteger, classify_value
from .errors import BudgetExceeded, Order3NotCovered, ParameterError
from .field import FieldCtx, TowerParams, build_tower, coordinate_table, is_irreducible

SUITES = ("fields", "sums", "ranks", "curves", "codes", "sequences")


class Skip(Exception):
    pass


@dataclass
class CheckResult:
    name: str
    status: str
    expected: object = None
    actual: object = None
    elapsed: float = 0.0
    reason: str | None = None

    def to_json(self) -> dict:
        # elapsed time is left out so reports are byte-reproducible; see to_table
        return {"name": self.name, "status": self.status, "expected": _jsonable(self.expected),
                "actual": _jsonable(self.actual), "reason": self.reason}


@dataclass
class VerifyReport:
    params: TowerParams
    suite: str
    seed: int
    checks: list = field(default_factory=list)

    @property
    def status(self) -> str:
        return "fail" if any(c.status == "fail" for c in self.checks) else "pass"

    def to_json_obj(self) -> dict:
        return {"params": self.params.as_dict(), "suite": self.suite, "seed": self.seed,
                "status": self.status, "checks": [c.to_json() for c in self.checks]}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), indent=2, sort_keys=True)

    def to_table(self) -> str:
        lines = [f"{c.status:>7}  {c.elapsed:7.2f} s  {c.name}"
                 + (f"  ({c.reason})" if c.reason else "") for c in self.checks]
        lines.append(f"overall: {self.status}")
        return "\n".join(lines)


def _jsonable(x):
    if x is None or isinstance(x, (bool, str, float)):
        return x
    if isinstance(x, (int, np.integer)):
        return int(x) if abs(int(x)) < 2**53 else str(int(x))
    if isinstance(x, CyclotomicInteger):
        return x.key()
    if isinstance(x, dict):
        return {str(_jsonable(k)) if not isinstance(k, str) else k: _jsonable(v)
                for k, v in sorted(x.items(), key=lambda kv: str(kv[0]))}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, np.ndarray):
        return _jsonable(x.tolist())
    return str(x)


def _dist_summary(counts: dict) -> dict:
    return {(v.key() if isinstance(v, CyclotomicInteger) else v): c
            for v, c in counts.items() if c}


class _Runner:
    def __init__(self, report: VerifyReport):
        self.report = report

    def __call__(self, name: str, fn):
        t0 = time.perf_counter()
        try:
            ok, expected, actual = fn()
            status, reason = ("pass" if ok else "fail"), None
        except (Skip, BudgetExceeded, Order3NotCovered) as exc:
            status, reason, expected, actual = "skipped", str(exc), None, None
        except Exception as exc:  # a crash is a failure of that check, not of the suite
            status, reason, expected, actual = "fail", f"{type(exc).__name__}: {exc}", None, None
        self.report.checks.append(CheckResult(name, status, expected, actual,
                                              time.perf_counter() - t0, reason))


# -- fields ------------------------------------------------------------------

def _fields(run, ctx: FieldCtx, P: TowerParams, rng: random.Random, budget):
    run("modulus irreducible", lambda: (is_irreducible(list(ctx.modulus), P.p), True,
                                        is_irreducible(list(ctx.modulus), P.p)))

    def primitive():
        from .field import prime_factors
        pi = ctx.from_coeffs(ctx.primitive)
        orders = [ctx.pow(pi, ctx.order // r) for r in prime_factors(ctx.order)]
        return ctx.element_order(pi) == ctx.order and 1 not in orders, ctx.order, ctx.element_order(pi)
    run("primitive element has order q-1", primitive)

    def basis():
        coordinate_table(ctx, P)
        return True, "independent", "independent"
    run("tower basis independent over F_q0", basis)

    def transitivity():
        xs = np.array([rng.randrange(ctx.q) for _ in range(1000)])
        a = ctx.trace(xs, P.n, 1)
        b = ctx.trace(ctx.trace(xs, P.n, P.d), P.d, 1)
        return bool(np.array_equal(a, b)), "equal", int(np.count_nonzero(a != b))
    run("trace transitivity Tr^n_1 = Tr^d_1 Tr^n_d", transitivity)

    def fibers():
        tr = ctx.abs_trace(np.arange(ctx.q))
        got = np.bincount(tr, minlength=P.p).tolist()
        return got == [P.p ** (P.n - 1)] * P.p, [P.p ** (P.n - 1)] * P.p, got
    run("absolute trace fibers", fibers)

    def eta_pi():
        pi = ctx.from_coeffs(ctx.primitive)
        return ctx.quadratic_character(pi, P.n) == -1, -1, int(ctx.quadratic_character(pi, P.n))
    run("primitive element is a non-square", eta_pi)


# -- ranks -------------------------------------------------------------------

def _ranks(run, ctx, P, rng, budget, state):
    def closed_vs_brute():
        bad = 0
        alphas = sums.alpha_domain(ctx, P).tolist()
        for _ in range(30):
            a, b, g = rng.choice(alphas), rng.randrange(ctx.q), rng.randrange(ctx.q)
            H, A = qf.build_H_and_A(ctx, P, a, b, g)
            bad += qf.quad_char_sum(H, A, "closed") != qf.quad_char_sum(H, A, "brute")
        return bad == 0, 0, bad
    if P.q0 ** P.s * 30 > budget.max_terms:
        run("quadratic form sums closed = brute (30 sampled H, A)",
            lambda: (_ for _ in ()).throw(Skip("budget")))
    else:
        run("quadratic form sums closed = brute (30 sampled H, A)", closed_vs_brute)

    def two_route():
        R = qf.rank_tables(ctx, P)
        state["ranks"] = R
        return bool(np.array_equal(R["rank"], R["kernel_rank"])), "equal", \
            int(np.count_nonzero(R["rank"] != R["kernel_rank"]))
    if len(sums.alpha_domain(ctx, P)) * ctx.q > 50000:
        run("rank: elimination = kernel route (exhaustive)",
            lambda: (_ for _ in ()).throw(Skip("more than 50000 pairs")))
    else:
        run("rank: elimination = kernel route (exhaustive)", two_route)

    def rank_sets():
        R = state.get("ranks")
        if R is None:
            raise Skip("rank table unavailable")
        r = R["rank"].copy()
        zero = (R["alphas"][:, None] == 0) & (np.arange(ctx.q)[None, :] == 0)
        allowed = ({P.s, P.s - 1, P.s - 2} if P.dprime == P.d else {P.s, P.s - 2, P.s - 4})
        got = set(np.unique(r[~zero]).tolist())
        n1 = int(np.count_nonzero(r == P.s - 1))
        expect_n1 = P.p ** (P.m - P.d) * (P.q - 1) if P.dprime == P.d else 0
        ok = got <= allowed and n1 == expect_n1
        return ok, {"ranks": sorted(allowed), "n_1": expect_n1}, {"ranks": sorted(got), "n_1": n1}
    run("rank values and n_1", rank_sets)

    def psi():
        R = state.get("ranks")
        if R is None:
            raise Skip("rank table unavailable")
        allowed = {0, 1, 2, P.p ** P.dprime + 1}
        seen, bad_link = set(), 0
        alphas = R["alphas"].tolist()
        for i, a in enumerate(alphas):
            if a == 0:
                continue
            for b in range(1, ctx.q):
                c = qf.psi_solution_count(ctx, P, a, b)
                seen.add(c)
                if P.dprime == P.d and ((c == 1) != (R["rank"][i, b] == P.s - 1)):
                    bad_link += 1
        return seen <= allowed and bad_link == 0, {"counts": sorted(allowed), "link": 0}, \
            {"counts": sorted(seen), "link": bad_link}
    run("psi root counts (and unique root <=> r = s-1 when d' = d)", psi)

    def bluher():
        sub = ctx.subfield(P.m).tolist()[1:]
        unique = sum(1 for b in sub if qf.bluher_root_count(ctx, P, b) == 1)
        return unique == P.p ** (P.m - P.d), P.p ** (P.m - P.d), unique
    run("Bluher parameters with a unique root", bluher)

    def scaling():
        R = state.get("ranks")
        if R is None:
            raise Skip("rank table unavailable")
        alphas = R["alphas"]
        hist = sums.t_table(ctx, P, budget=budget)
        bad = 0
        for w in ctx.subfield(P.d).tolist()[1:]:
            ai = np.searchsorted(alphas, ctx.mul(w, alphas))
            bi = ctx.mul(w, np.arange(ctx.q))
            eta = int(ctx.quadratic_character(w, P.d))
            bad += int(np.count_nonzero(R["rank"][ai][:, bi] != R["rank"]))
            lhs = hist[ai][:, bi]
            canon_l = lhs - lhs[..., -1:]
            canon_r = hist - hist[..., -1:]
            sign = np.where(R["rank"] % 2 == 1, eta, 1)[..., None]
            bad += int(np.count_nonzero((canon_l != sign * canon_r).any(axis=-1)))
        return bad == 0, 0, bad
    run("omega-scaling of rank and T", scaling)

    def affine():
        bad = 0
        alphas = sums.alpha_domain(ctx, P).tolist()
        for _ in range(50):
            a, b, g = rng.choice(alphas), rng.randrange(ctx.q), rng.randrange(ctx.q)
            H, A = qf.build_H_and_A(ctx, P, a, b, g)
            s1 = qf.affine_shift(H, A) is not None
            s2 = bool((ctx.add(qf.phi_values(ctx, P, a, b), g) == 0).any())
            bad += s1 != s2
        return bad == 0, 0, bad
    run("affine solvability <=> phi + gamma solvable (50 samples)", affine)


# -- sums --------------------------------------------------------------------

def _sums(run, ctx, P, rng, budget, workers, state):
    def t_dist():
        b = sums.t_distribution(ctx, P, "brute", workers, budget)
        th = sums.t_distribution(ctx, P, "theorem")
        return b == th, _dist_summary(th.counts), _dist_summary(b.counts)
    run("T distribution: enumeration = closed table", t_dist)

    def table_vs_direct():
        hist = sums.t_table(ctx, P, workers, budget)
        alphas = sums.alpha_domain(ctx, P)
        bad = 0
        for _ in range(50):
            i, b = rng.randrange(len(alphas)), rng.randrange(ctx.q)
            bad += CyclotomicInteger(P.p, hist[i, b].tolist()) != sums.eval_T(ctx, P, int(alphas[i]), b)
        return bad == 0, 0, bad
    run("T table = direct evaluation (50 samples)", table_vs_direct)

    def magnitude():
        dist = sums.t_distribution(ctx, P, "brute", workers, budget)
        bad = 0
        for v in dist.counts:
            lab = classify_value(v, P)
            if lab.kind in ("Zero", "FullSum"):
                continue
            bad += (v * v.conj()) != P.p ** (P.n + lab.i * P.d)
        return bad == 0, 0, bad
    run("|T|^2 = p^(n + i d) for every value", magnitude)

    for order in (1, 2, 3):
        def moment(order=order):
            closed = sums.moments_T(ctx, P, order, "closed")
            brute = sums.moments_T(ctx, P, order, "brute", workers, budget)
            return closed == brute, closed, brute
        run(f"moment of order {order}", moment)

    def s_brute():
        b = sums.s_distribution(ctx, P, "brute", workers, budget)
        th = sums.s_distribution(ctx, P, "theorem")
        return b == th and b.mass == P.p ** P.m * P.q**2, _dist_summary(th.counts), \
            _dist_summary(b.counts)
    run("S distribution: enumeration = closed table", s_brute)

    def s_hybrid():
        h = sums.s_distribution(ctx, P, "hybrid", workers, budget)
        th = sums.s_distribution(ctx, P, "theorem")
        return h == th, _dist_summary(th.counts), _dist_summary(h.counts)
    run("S distribution: rank + gamma-fiber route = closed table", s_hybrid)

    def gamma_counts():
        alphas = sums.alpha_domain(ctx, P).tolist()
        sub = ctx.subfield(P.t).tolist()
        bad, n = 0, 0
        pairs = set()
        while len(pairs) < min(200, len(alphas) * ctx.q - 1):
            pr = (rng.choice(alphas), rng.randrange(ctx.q))
            if pr != (0, 0):
                pairs.add(pr)
        for a, b in sorted(pairs):
            fib = sums.gamma_fibers(ctx, P, a, b)
            for x in sub:
                brute = sum(1 for v in fib.values() if v == x)
                bad += brute != sums.count_gamma_trace(ctx, P, a, b, x, "closed")
                n += 1
        return bad == 0, f"0 of {n}", f"{bad} of {n}"
    run("gamma counts: closed = enumeration (200 sampled pairs)", gamma_counts)

    def shift_independence():
        try:
            hist = sums.s_table(ctx, P, workers, budget)
        except BudgetExceeded as exc:
            raise Skip(str(exc))
        ref = sums.histogram_counts(hist[:, :, 1], P.p)
        bad = 0
        for g in rng.sample(range(2, ctx.q), min(5, ctx.q - 2)):
            bad += sums.histogram_counts(hist[:, :, g], P.p) != ref
        return bad == 0, 0, bad
    run("S multiset independent of gamma != 0 (5 samples)", shift_independence)


# -- curves ------------------------------------------------------------------

def _curves(run, ctx, P, rng, budget, workers):
    def naive():
        if ctx.q > 81:
            raise Skip("naive double loop limited to q <= 81")
        alphas = sums.alpha_domain(ctx, P).tolist()
        bad = 0
        for _ in range(20):
            a, b = rng.choice(alphas), rng.randrange(ctx.q)
            bad += curves.count_points(ctx, P, a, b) != curves.count_points_naive(ctx, P, a, b)
        return bad == 0, 0, bad
    run("point count: fiber rule = double loop (20 samples)", naive)

    def general_identity():
        hist = sums.t_table(ctx, P, workers, budget)
        R = sums.omega_sum(ctx, P, hist, P.d)
        N = curves.count_points_table(ctx, P)
        bad = int(np.count_nonzero(N != P.q + R))
        return bad == 0, 0, bad
    run("N = q + sum over omega in F_(p^d)^* of T(omega alpha, omega beta) (all pairs)",
        general_identity)

    def identity():
        if P.dprime != 2 * P.d:
            raise Skip("N = q + (p^d - 1) T is only asserted when d' = 2d")
        hist = sums.t_table(ctx, P, workers, budget)
        canon = hist - hist[..., -1:]
        if (canon[..., 1:] != 0).any():
            raise ArithmeticError("T not rational although d' = 2d")
        res = curves.identity_check(ctx, P, canon[..., 0])
        ok = res["identity"] == res["pairs"] == res["congruence"]
        return ok, {"pairs": res["pairs"]}, res
    if P.dprime == 2 * P.d:
        run("N = q + (p^d - 1) T and N = p^d mod p^(2d) - 1 (all pairs)", identity)


# -- codes -------------------------------------------------------------------

def _codes(run, ctx, P, rng, budget, workers):
    for name in ("C1", "C2"):
        spec = codes.CodeSpec(P, name)

        def brute(spec=spec):
            b = codes.weight_distribution(ctx, spec, "brute", workers, budget)
            th = codes.weight_distribution(ctx, spec, "theorem")
            return b == th, dict(th.entries()), dict(b.entries())
        run(f"{name} weights: enumeration = closed table", brute)

        if P.t == 1:
            def push(spec=spec):
                b = codes.weight_distribution(ctx, spec, "pushforward", workers, budget)
                th = codes.weight_distribution(ctx, spec, "theorem")
                return b == th, dict(th.entries()), dict(b.entries())
            run(f"{name} weights: pushforward of value distribution = closed table", push)

        def degrees(spec=spec):
            got = [len(codes.min_poly(ctx, P, e)) - 1 for e in spec.exponents]
            want = [P.n0, P.n0, P.n0 // 2]
            return got == want, want, got
        run(f"{name} minimal polynomial degrees", degrees)

        def dimension(spec=spec):
            words = codes.all_codewords(ctx, spec, budget)
            distinct = len(np.unique(words, axis=0))
            want = P.p ** (P.t * spec.dimension)
            return distinct == want, want, distinct
        run(f"{name} distinct codewords = p^(t dim)", dimension)

        def parity(spec=spec):
            h = codes.parity_check_poly(ctx, spec)
            alphas = sums.alpha_domain(ctx, P).tolist()
            bad = 0
            for _ in range(10):
                g = rng.randrange(ctx.q) if spec.uses_gamma else None
                w = codes.codeword(ctx, spec, rng.choice(alphas), rng.randrange(ctx.q), g)
                bad += not codes.annihilated(ctx, w.tolist(), h)
            return bad == 0, 0, bad
        run(f"{name} parity check annihilates codewords (10 samples)", parity)

        def shift(spec=spec):
            # pi^(-1) c is the codeword of (alpha pi^(p^m+1), beta pi^(p^k+1), gamma pi)
            alphas = sums.alpha_domain(ctx, P).tolist()
            e1, e2, e3 = spec.exponents
            bad = 0
            for _ in range(100):
                a, b = rng.choice(alphas), rng.randrange(ctx.q)
                g = rng.randrange(ctx.q) if spec.uses_gamma else None
                w = codes.codeword(ctx, spec, a, b, g)
                g2 = ctx.mul(g, ctx.power_of_primitive(e1)) if spec.uses_gamma else None
                w2 = codes.codeword(ctx, spec, ctx.mul(a, ctx.power_of_primitive(e3)),
                                    ctx.mul(b, ctx.power_of_primitive(e2)), g2)
                bad += not np.array_equal(np.roll(w, -1), w2)
            return bad == 0, 0, bad
        run(f"{name} cyclic shift stays in the code (100 samples)", shift)

        def direct_vs_sum(spec=spec):
            alphas = sums.alpha_domain(ctx, P).tolist()
            bad = 0
            for _ in range(50):
                a, b = rng.choice(alphas), rng.randrange(ctx.q)
                g = rng.randrange(ctx.q) if spec.uses_gamma else None
                bad += (codes.codeword_weight(ctx, spec, a, b, g, "direct")
                        != codes.codeword_weight(ctx, spec, a, b, g, "sum"))
            return bad == 0, 0, bad
        run(f"{name} weight: codeword count = sum formula (50 samples)", direct_vs_sum)


# -- sequences ---------------------------------------------------------------

def _sequences(run, ctx, P, rng, budget, workers, state):
    def corr():
        b = sq.correlation_distribution(ctx, P, "brute", workers=workers, budget=budget)
        state["corr"] = b
        th = sq.correlation_distribution(ctx, P, "theorem", "corrected")
        return b == th, _dist_summary(th.counts), _dist_summary(b.counts)
    run("correlation distribution: enumeration = closed table (corrected reading)", corr)

    def readings():
        b = state.get("corr")
        if b is None:
            raise Skip("no enumerated correlation distribution")
        rep = sq.reading_report(ctx, P, b)
        return rep["corrected"] is True, {"corrected": True}, rep
    run("which reading of the correlation table the data supports", readings)

    def combine():
        s = sums.s_distribution(ctx, P, "hybrid", workers, budget).counts
        t = sums.t_distribution(ctx, P, "brute", workers, budget).counts
        got = tables.combine_corr(s, t, P)
        th = tables.rows_to_counts(tables.corr_rows(P))
        return got == th, _dist_summary(th), _dist_summary(got)
    run("correlation: combining rule on S and T = closed table", combine)

    def direct():
        alphas = sums.alpha_domain(ctx, P).tolist()
        bad = 0
        for _ in range(500):
            p1 = (rng.choice(alphas), rng.randrange(ctx.q))
            p2 = (rng.choice(alphas), rng.randrange(ctx.q))
            tau = rng.randrange(ctx.order)
            bad += (sq.correlation(ctx, P, p1, p2, tau, "direct")
                    != sq.correlation(ctx, P, p1, p2, tau, "via_S"))
        return bad == 0, 0, bad
    run("correlation: direct = via S (500 samples)", direct)

    def coverage():
        alphas = sums.alpha_domain(ctx, P).tolist()
        if len(alphas) * ctx.q * ctx.order > budget.max_terms // 10:
            raise Skip("budget")
        a2, b2 = rng.choice(alphas), rng.randrange(ctx.q)
        seen = set()
        for a1 in alphas:
            for b1 in range(ctx.q):
                for tau in range(ctx.order):
                    seen.add(sq.shifted_parameters(ctx, P, (a1, b1), (a2, b2), tau))
        want = len(alphas) * ctx.q * (ctx.q - 1)
        ok = len(seen) == want and all(g != 1 for _, _, g in seen)
        return ok, want, len(seen)
    if ctx.q > 81:
        run("shift map hits each (alpha', beta', gamma' != 1) once",
            lambda: (_ for _ in ()).throw(Skip("exhaustive coverage limited to q <= 81")))
    else:
        run("shift map hits each (alpha', beta', gamma' != 1) once", coverage)

    def balance():
        s = sq.sequence(ctx, P, 0, 0)
        got = np.bincount(s, minlength=P.p).tolist()
        want = [P.p ** (P.n - 1) - 1] + [P.p ** (P.n - 1)] * (P.p - 1)
        return got == want, want, got
    run("a_{0,0} is balanced", balance)


# -- entry point -------------------------------------------------------------

def verify_suite(p: int, m: int, k: int, t: int = 1, suite: str = "all", seed: int = 0,
                 workers: int | None = 1, budget=None) -> VerifyReport:
    if suite != "all" and suite not in SUITES:
        raise ParameterError(f"suite must be 'all' or one of {SUITES}")
    P, ctx = build_tower(p, m, k, t)
    budget = sums._budget(budget)
    rng = random.Random(seed)
    report = VerifyReport(P, suite, seed)
    run = _Runner(report)
    state: dict = {}
    chosen = SUITES if suite == "all" else (suite,)
    for name in chosen:
        if name == "fields":
            _fields(run, ctx, P, rng, budget)
        elif name == "ranks":
            _ranks(run, ctx, P, rng, budget, state)
        elif name == "sums":
            _sums(run, ctx, P, rng, budget, workers, state)
        elif name == "curves":
            _curves(run, ctx, P, rng, budget, workers)
        elif name == "codes":
            _codes(run, ctx, P, rng, budget, workers)
        elif name == "sequences":
            _sequences(run, ctx, P, rng, budget, workers, state)
    return report
