"""Verification suites: wiring probes to catalogs and assembling reports.

A run spec names a catalog (or a relation-table file), a ring, parameter
bindings, hbar values and a probe list; ``run_suites`` executes every
(probe, hbar) combination with its own deterministically derived RNG and
returns one report row per combination.  Reports are byte-stable for a
fixed seed: rows are sorted, floats serialized by repr, and wall-clock
timings kept out unless explicitly requested.
"""

from __future__ import annotations

import json
import math
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

from .catalog import (
    CatalogInstance,
    StarProduct,
    build_catalog,
    catalog_poisson,
    log_canonical_table,
    symmetrized_star,
    symmetrized_star_by_averaging,
    translated_star,
    wick_involution_condition,
)
from .params import ParameterCatalog
from .poly import Polynomial
from .probes import (
    BIG_MARGIN,
    ProbeCase,
    ProbeReport,
    classical_limit_probe,
    degree_filtration_check,
    digest_of,
    exponent_ball,
    first_order_commutator,
    generator_product_bound,
    macgyver_continuity_probe,
    random_polynomial,
    submultiplicativity_probe,
)
from .qcomb import q_multinomial
from .reduction import check_overlaps, jacobi_check, poisson_from_table
from .scalars import GaussRational, RationalQRing, RationalRing, make_ring
from .states import (
    StateFunctional,
    WickPoint,
    gns_build,
    gram_matrix,
    nonpositivity_witness,
    point_separation_probe,
    psd_check,
    random_wick_point,
)
from .tableio import table_from_dict

SCHEMA = "starprod/1"


class ConfigError(ValueError):
    pass


@dataclass
class RunContext:
    label: str
    catalog_name: Optional[str]
    d: Optional[int]
    rules: Optional[ParameterCatalog]
    options: Dict
    ring_name: str
    truncation: int
    table_spec: Optional[Dict] = None

    def instance(self, ring_name: Optional[str] = None,
                 hbar: Optional[complex] = None) -> CatalogInstance:
        name = ring_name or self.ring_name
        ring = make_ring(name, truncation_order=self.truncation)
        if self.table_spec is not None:
            table = table_from_dict(self.table_spec, hbar=hbar, ring=ring)
            star = StarProduct(self.label, ring, table.dim, table.kind, table, None)
            return CatalogInstance(self.label, ring, table.dim, table.kind,
                                   star, table, star, {}, {})
        return build_catalog(self.catalog_name, ring, self.d, self.rules,
                             hbar, dict(self.options))

    def poisson(self, order: int = 4):
        if self.table_spec is not None:
            ring = make_ring("series", truncation_order=order)
            return poisson_from_table(table_from_dict(self.table_spec, ring=ring))
        return catalog_poisson(self.catalog_name, self.d, self.rules,
                               dict(self.options), order)


# -- suite runners ----------------------------------------------------------------
# signature: fn(ctx, cfg, rng, hbar) -> ProbeReport


def _bool_cases(rows: List[Tuple[str, bool]]) -> Tuple[List[ProbeCase], bool]:
    cases = [ProbeCase(digest, 0.0 if ok else 1.0, 0.0, 1.0 if ok else -1.0)
             for digest, ok in rows]
    return cases, all(ok for _, ok in rows)


def suite_overlaps(ctx: RunContext, cfg: Dict, rng, hbar) -> ProbeReport:
    inst = ctx.instance(hbar=hbar)
    report = check_overlaps(inst.table, tol=float(cfg.get("tol", 1e-10)))
    failed = {(i, j, k) for (i, j, k, _) in report.failures}
    rows = []
    for k in range(3, inst.dim + 1):
        for j in range(2, k):
            for i in range(1, j):
                rows.append((digest_of("overlap", str((i, j, k))), (i, j, k) not in failed))
    if not rows:
        rows.append((digest_of("overlap", "no-triples"), True))
    cases, ok = _bool_cases(rows)
    return ProbeReport("overlaps", ok and report.ok,
                       min((c.margin for c in cases), default=BIG_MARGIN), cases,
                       {"failures": len(report.failures)})


def suite_jacobi(ctx: RunContext, cfg: Dict, rng, hbar) -> ProbeReport:
    eta = ctx.poisson(order=int(cfg.get("order", 4)))
    ok = jacobi_check(eta, tol=float(cfg.get("tol", 1e-10)))
    cases, _ = _bool_cases([(digest_of("jacobi", ctx.label), ok)])
    return ProbeReport("jacobi", ok, cases[0].margin, cases)


def suite_oracle(ctx: RunContext, cfg: Dict, rng, hbar) -> ProbeReport:
    """Closed form against reduction on a full monomial sweep."""
    inst = ctx.instance(hbar=hbar)
    max_degree = int(cfg.get("max_degree", 3))
    tol = float(cfg.get("tol", 1e-10))
    ring = inst.ring
    cases = []
    ok = True
    ball = exponent_ball(inst.dim, max_degree)

    def compare(K, L, closed: Polynomial, reduced: Polynomial):
        nonlocal ok
        if ring.exact:
            good = closed == reduced
            margin = 1.0 if good else -1.0
            lhs = 0.0 if good else 1.0
        else:
            keys = set(closed.terms) | set(reduced.terms)
            zero = ring.zero
            diff = max((abs(ring.to_complex(closed.terms.get(M, zero))
                            - ring.to_complex(reduced.terms.get(M, zero)))
                        for M in keys), default=0.0)
            scale = max((abs(ring.to_complex(c)) for c in reduced.terms.values()),
                        default=1.0)
            good = diff <= tol * max(1.0, scale)
            margin = tol * max(1.0, scale) - diff
            lhs = diff
        if not good:
            ok = False
        cases.append(ProbeCase(digest_of("oracle", str(K), str(L)), lhs, tol, margin))

    if ctx.catalog_name == "translated":
        base = inst.options["base_table"]
        offsets = inst.options["c"]
        for K in ball:
            for L in ball:
                f = Polynomial.monomial(ring, inst.dim, K, kind=inst.kind)
                g = Polynomial.monomial(ring, inst.dim, L, kind=inst.kind)
                compare(K, L, translated_star(f, g, base, offsets),
                        inst.reduction_star(f, g))
    elif ctx.catalog_name == "symmetrized_log_canonical":
        table = log_canonical_table(ring, inst.dim, inst.params["q"])
        for K in ball:
            for L in ball:
                compare(K, L, inst.star.monomial_product(K, L),
                        symmetrized_star_by_averaging(K, L, table))
    elif inst.star.mono is not None:
        for K in ball:
            for L in ball:
                compare(K, L, inst.star.monomial_product(K, L),
                        inst.reduction_star.monomial_product(K, L))
    else:
        # no closed form: check independence of the rewriting strategy instead
        from .reduction import star_by_reduction
        for K in ball:
            for L in ball:
                f = Polynomial.monomial(ring, inst.dim, K, kind=inst.kind)
                g = Polynomial.monomial(ring, inst.dim, L, kind=inst.kind)
                right = star_by_reduction(f, g, inst.table, strategy="rightmost").result
                left = star_by_reduction(f, g, inst.table, strategy="leftmost").result
                compare(K, L, right, left)
    worst = min((c.margin for c in cases), default=BIG_MARGIN)
    return ProbeReport("oracle", ok, worst, cases)


def suite_degree_filtration(ctx: RunContext, cfg: Dict, rng, hbar) -> ProbeReport:
    inst = ctx.instance(hbar=hbar)
    return degree_filtration_check(inst.star, rng, inst.dim, inst.ring,
                                   samples=int(cfg.get("samples", 200)),
                                   max_degree=int(cfg.get("max_degree", 5)),
                                   terms=int(cfg.get("terms", 3)),
                                   kind=inst.kind)


def suite_submultiplicativity(ctx: RunContext, cfg: Dict, rng, hbar) -> ProbeReport:
    inst = ctx.instance(hbar=hbar)
    rho = cfg.get("rho")
    if not rho:
        raise ConfigError("submultiplicativity probe needs 'rho'")
    return submultiplicativity_probe(inst.star, rho, rng, inst.dim, inst.ring,
                                     samples=int(cfg.get("samples", 1000)),
                                     max_degree=int(cfg.get("max_degree", 6)),
                                     terms=int(cfg.get("terms", 3)),
                                     kind=inst.kind,
                                     tol=float(cfg.get("tol", 1e-10)))


def _auto_q_bound(ctx: RunContext, hbar: float, samples: int = 16) -> float:
    """N * sup of generator-product coefficients over a disc around 0 of
    radius |hbar| + 0.5 (sampled on the boundary circle plus hbar itself)."""
    radius = abs(hbar) + 0.5
    points = [hbar] + [radius * complex(math.cos(2 * math.pi * k / samples),
                                        math.sin(2 * math.pi * k / samples))
                       for k in range(samples)]
    bound = 1.0
    for z in points:
        try:
            inst = ctx.instance(ring_name="complex", hbar=z)
        except Exception:
            continue
        count, sup = generator_product_bound(inst.star)
        bound = max(bound, count * sup)
    return bound


def suite_macgyver(ctx: RunContext, cfg: Dict, rng, hbar) -> ProbeReport:
    inst = ctx.instance(hbar=hbar)
    Q = cfg.get("Q", "auto")
    if Q == "auto":
        Q = _auto_q_bound(ctx, float(hbar if hbar is not None else 0.0))
    return macgyver_continuity_probe(inst.star, float(cfg.get("C", 2.0)),
                                     float(cfg.get("alpha", 1.0)),
                                     float(cfg.get("beta", 1.0)), rng,
                                     Q=float(Q),
                                     samples=int(cfg.get("samples", 150)),
                                     max_degree=int(cfg.get("max_degree", 4)),
                                     terms=int(cfg.get("terms", 3)),
                                     sweep_degree=int(cfg.get("sweep_degree", 3)))


def suite_classical_limit(ctx: RunContext, cfg: Dict, rng, hbar) -> ProbeReport:
    eta = ctx.poisson()
    ring = make_ring("complex")
    dim = ctx.instance(ring_name="complex", hbar=0.0).dim
    pairs = [(random_polynomial(rng, ring, dim, int(cfg.get("max_degree", 3)),
                                int(cfg.get("terms", 3))),
              random_polynomial(rng, ring, dim, int(cfg.get("max_degree", 3)),
                                int(cfg.get("terms", 3))))
             for _ in range(int(cfg.get("pairs", 20)))]
    hbars = cfg.get("hbars")

    def star_at(h):
        return ctx.instance(ring_name="complex", hbar=h).star

    return classical_limit_probe(star_at, eta, pairs, cfg.get("rho", [1.0] * dim),
                                 hbars=hbars, tol=cfg.get("tol"))


def suite_first_order(ctx: RunContext, cfg: Dict, rng, hbar) -> ProbeReport:
    inst = ctx.instance(ring_name="series")
    if inst.table is None:
        raise ConfigError("first_order suite needs a relation table")
    eta = poisson_from_table(inst.table)
    base = inst.ring.base
    i_unit = base.imaginary_unit
    rows = []
    for _ in range(int(cfg.get("pairs", 50))):
        f = random_polynomial(rng, inst.ring, inst.dim,
                              int(cfg.get("max_degree", 3)),
                              int(cfg.get("terms", 3)), inst.kind)
        g = random_polynomial(rng, inst.ring, inst.dim,
                              int(cfg.get("max_degree", 3)),
                              int(cfg.get("terms", 3)), inst.kind)
        antisym = first_order_commutator(f, g, inst.table)
        f0 = f.map_coefficients(lambda s: s.coefficient(0), base)
        g0 = g.map_coefficients(lambda s: s.coefficient(0), base)
        bracket = poisson_bracket_scaled(eta, f0, g0, i_unit)
        rows.append((digest_of("B1", repr(f.terms), repr(g.terms)), antisym == bracket))
    cases, ok = _bool_cases(rows)
    return ProbeReport("first_order", ok,
                       min((c.margin for c in cases), default=BIG_MARGIN), cases)


def poisson_bracket_scaled(eta, f, g, i_unit):
    from .reduction import poisson_bracket
    return poisson_bracket(eta, f, g).scale(i_unit)


def suite_q_identities(ctx: RunContext, cfg: Dict, rng, hbar) -> ProbeReport:
    """q-multinomial positivity, constant term 1, and the q <-> 1/q identity."""
    ring = RationalQRing()
    q = ring.q
    rows = []
    for dim in cfg.get("dims", [2, 3]):
        for K in exponent_ball(int(dim), int(cfg.get("max_total", 4))):
            value = q_multinomial(K, q, ring)
            ok = value.is_polynomial()
            coeffs = value.numerator_coefficients() if ok else ()
            if ok and coeffs:
                ok = coeffs[0] == GaussRational(1)
                ok = ok and all(c.im == 0 and c.re >= 0 and c.re.denominator == 1
                                for c in coeffs)
            pair_sum = (sum(K) ** 2 - sum(k * k for k in K)) // 2
            mirrored = q ** pair_sum * q_multinomial(K, ring.inverse(q), ring)
            ok = ok and value == mirrored
            rows.append((digest_of("qmult", str(dim), str(K)), ok))
    cases, ok = _bool_cases(rows)
    return ProbeReport("q_identities", ok,
                       min((c.margin for c in cases), default=BIG_MARGIN), cases)


def suite_sigma_oracle(ctx: RunContext, cfg: Dict, rng, hbar) -> ProbeReport:
    ring = RationalRing()
    dim = int(cfg.get("d", ctx.d or 2))
    max_degree = int(cfg.get("max_degree", 2))
    rows = []
    for q_text in cfg.get("q_values", ["3/2", "5/7"]):
        q = GaussRational(Fraction(q_text))
        table = log_canonical_table(ring, dim, q)
        for K in exponent_ball(dim, max_degree):
            for L in exponent_ball(dim, max_degree):
                closed = symmetrized_star(K, L, q, ring)
                oracle = symmetrized_star_by_averaging(K, L, table)
                rows.append((digest_of("sigma", q_text, str(K), str(L)),
                             closed == oracle))
    cases, ok = _bool_cases(rows)
    return ProbeReport("sigma_oracle", ok,
                       min((c.margin for c in cases), default=BIG_MARGIN), cases)


def suite_wick_involution(ctx: RunContext, cfg: Dict, rng, hbar) -> ProbeReport:
    inst = ctx.instance(hbar=hbar)
    ok = wick_involution_condition(inst.table, tol=float(cfg.get("tol", 1e-10)))
    cases, _ = _bool_cases([(digest_of("wick-involution", ctx.label), ok)])
    return ProbeReport("wick_involution", ok, cases[0].margin, cases)


def suite_states_psd(ctx: RunContext, cfg: Dict, rng, hbar) -> ProbeReport:
    tol = float(cfg.get("tol", 1e-9))
    cases = []
    ok = True
    for dim in cfg.get("dims", [2, 3, 4]):
        for h in cfg.get("hbars", [-1.0, -0.1, 0.0, 0.1, 1.0]):
            for _ in range(int(cfg.get("points", 5))):
                z = random_wick_point(rng, int(dim))
                state = StateFunctional(z, float(h))
                _, M = gram_matrix(state, int(cfg.get("degree", 3)))
                res = psd_check(M, tol=tol)
                margin = res.min_eigenvalue + tol * max(1.0, res.scale)
                if not res.passed:
                    ok = False
                cases.append(ProbeCase(digest_of("psd", str(dim), repr(h), repr(z.z)),
                                       res.min_eigenvalue, 0.0, margin))
    return ProbeReport("states_psd", ok,
                       min((c.margin for c in cases), default=BIG_MARGIN), cases)


def suite_witness(ctx: RunContext, cfg: Dict, rng, hbar) -> ProbeReport:
    tol = float(cfg.get("tol", 1e-12))
    cases = []
    ok = True
    for dim in cfg.get("dims", [2, 3]):
        for h in cfg.get("hbars", [math.log(2), 1.0]):
            z = random_wick_point(rng, int(dim))
            while abs(z.z[0]) < 0.1:
                z = random_wick_point(rng, int(dim))
            value = nonpositivity_witness(z, float(h), 1)
            expected = math.exp(-float(h)) - 1
            err = abs(value - expected)
            margin = tol - err
            if err > tol:
                ok = False
            cases.append(ProbeCase(digest_of("witness", str(dim), repr(h)),
                                   err, tol, margin))
    return ProbeReport("witness", ok,
                       min((c.margin for c in cases), default=BIG_MARGIN), cases)


def suite_psi(ctx: RunContext, cfg: Dict, rng, hbar) -> ProbeReport:
    """The reversal isomorphism intertwines the opposite-sign products and
    pulls deformed evaluations back: delta_z^h = delta_conj(z)^(-h) after it."""
    from .catalog import wick_log_canonical_table
    from .states import reversal_isomorphism

    ring = make_ring("complex")
    tol = float(cfg.get("tol", 1e-9))
    cases = []
    ok = True
    for dim in cfg.get("dims", [2, 3]):
        dim = int(dim)
        for h in cfg.get("hbars", [0.6]):
            h = float(h)
            plus = wick_log_canonical_table(ring, dim, complex(math.exp(-h)))
            minus = wick_log_canonical_table(ring, dim, complex(math.exp(h)))
            ball = exponent_ball(dim, int(cfg.get("max_degree", 3)))
            worst = 0.0
            from .reduction import star_by_reduction
            for K in ball:
                fK = Polynomial.monomial(ring, dim, K, kind="w")
                for L in ball:
                    fL = Polynomial.monomial(ring, dim, L, kind="w")
                    lhs = reversal_isomorphism(
                        star_by_reduction(fK, fL, plus).result, h)
                    rhs = star_by_reduction(reversal_isomorphism(fK, h),
                                            reversal_isomorphism(fL, h), minus).result
                    diff = lhs - rhs
                    scale = max((abs(c) for c in rhs.terms.values()), default=1.0)
                    err = max((abs(c) for c in diff.terms.values()), default=0.0)
                    worst = max(worst, err / max(1.0, scale))
            z = random_wick_point(rng, dim)
            state = StateFunctional(z, h)
            zbar = WickPoint(tuple(v.conjugate() for v in z.z))
            mirror = StateFunctional(zbar, -h)
            for K in ball:
                lhs_val = state.eval_monomial(K)
                rhs_val = mirror(reversal_isomorphism(
                    Polynomial.monomial(ring, dim, K, kind="w"), h))
                worst = max(worst, abs(lhs_val - rhs_val) / max(1.0, abs(lhs_val)))
            margin = tol - worst
            if worst > tol:
                ok = False
            cases.append(ProbeCase(digest_of("psi", str(dim), repr(h)), worst, tol, margin))
    return ProbeReport("psi", ok,
                       min((c.margin for c in cases), default=BIG_MARGIN), cases)


def suite_gns(ctx: RunContext, cfg: Dict, rng, hbar) -> ProbeReport:
    tol = float(cfg.get("tol", 1e-8))
    dim = int(cfg.get("d", 2))
    degree = int(cfg.get("degree", 3))
    cases = []
    ok = True
    for h in cfg.get("hbars", [0.4]):
        for _ in range(int(cfg.get("states", 5))):
            z = random_wick_point(rng, dim)
            data = gns_build(StateFunctional(z, float(h)), degree)
            margin = tol - data.adjoint_residual
            if data.adjoint_residual > tol:
                ok = False
            cases.append(ProbeCase(digest_of("gns", repr(h), repr(z.z)),
                                   data.adjoint_residual, tol, margin))
    return ProbeReport("gns", ok,
                       min((c.margin for c in cases), default=BIG_MARGIN), cases)


def suite_separation(ctx: RunContext, cfg: Dict, rng, hbar) -> ProbeReport:
    ring = make_ring("complex")
    dim = int(cfg.get("d", 2))
    rows = []
    for _ in range(int(cfg.get("samples", 5))):
        f = random_polynomial(rng, ring, dim, int(cfg.get("max_degree", 2)), 2, "w")
        result = point_separation_probe(f, float(cfg.get("hbar", 0.5)), rng)
        rows.append((digest_of("separation", repr(sorted(f.terms))), result.separated))
    cases, ok = _bool_cases(rows)
    return ProbeReport("separation", ok,
                       min((c.margin for c in cases), default=BIG_MARGIN), cases)


SUITES: Dict[str, Tuple[Callable, bool]] = {
    # kind -> (runner, consumes hbar values)
    "overlaps": (suite_overlaps, True),
    "jacobi": (suite_jacobi, False),
    "oracle": (suite_oracle, True),
    "degree_filtration": (suite_degree_filtration, True),
    "submultiplicativity": (suite_submultiplicativity, True),
    "macgyver": (suite_macgyver, True),
    "classical_limit": (suite_classical_limit, False),
    "first_order": (suite_first_order, False),
    "q_identities": (suite_q_identities, False),
    "sigma_oracle": (suite_sigma_oracle, False),
    "wick_involution": (suite_wick_involution, True),
    "states_psd": (suite_states_psd, False),
    "witness": (suite_witness, False),
    "psi": (suite_psi, False),
    "gns": (suite_gns, False),
    "separation": (suite_separation, False),
}


# -- spec handling -------------------------------------------------------------------


def context_from_run(run: Dict) -> RunContext:
    ring_name = run.get("ring", "complex")
    truncation = int(run.get("truncation", 8))
    if "phi" in run or "table" in run:
        spec = run.get("table")
        if spec is None:
            with open(run["phi"], "r", encoding="utf-8") as fh:
                spec = json.load(fh)
        label = run.get("label", f"phi:{run.get('phi', 'inline')}")
        return RunContext(label, None, None, None, {}, ring_name, truncation, spec)
    catalog = run.get("catalog")
    if catalog is None:
        raise ConfigError("run needs a 'catalog' id or a 'phi' table file")
    from .catalog import CATALOG_IDS
    if catalog not in CATALOG_IDS:
        raise ConfigError(f"unknown catalog {catalog!r}; expected one of {CATALOG_IDS}")
    rules = None
    if run.get("params"):
        rules = ParameterCatalog.from_spec(run["params"])
    label = run.get("label", catalog)
    return RunContext(label, catalog, run.get("d"), rules,
                      dict(run.get("options", {})), ring_name, truncation)


def _normalize_hbars(run: Dict) -> List[Optional[float]]:
    h = run.get("hbar")
    if h is None:
        return [None]
    if isinstance(h, (int, float)):
        return [float(h)]
    return [float(v) for v in h]


@dataclass
class SuiteResult:
    catalog: str
    probe: str
    hbar: Optional[float]
    report: ProbeReport
    elapsed: float

    def row(self, include_cases: bool = False) -> Dict:
        out = {
            "catalog": self.catalog,
            "probe": self.probe,
            "hbar": self.hbar,
            "pass": self.report.passed,
            "worst_margin": self.report.worst_margin,
            "case_count": len(self.report.cases),
        }
        if self.report.meta:
            out["meta"] = self.report.meta
        if include_cases:
            out["cases"] = [c.to_row() for c in self.report.cases]
        return out


def run_suites(spec: Dict, seed: Optional[int] = None, jobs: int = 1) -> List[SuiteResult]:
    actual_seed = spec.get("seed", 42) if seed is None else seed
    tasks = []
    for run_idx, run in enumerate(spec.get("runs", [])):
        ctx = context_from_run(run)
        hbars = _normalize_hbars(run)
        for probe_idx, probe in enumerate(run.get("probes", [])):
            kind = probe.get("kind")
            if kind not in SUITES:
                raise ConfigError(f"unknown probe kind {kind!r}")
            fn, needs_hbar = SUITES[kind]
            for h in (hbars if needs_hbar else [None]):
                tasks.append((ctx, dict(probe), kind, h, run_idx, probe_idx, fn))

    def execute(task):
        ctx, cfg, kind, h, run_idx, probe_idx, fn = task
        rng = random.Random(f"{actual_seed}:{run_idx}:{probe_idx}:{kind}:{h}")
        start = time.monotonic()
        try:
            report = fn(ctx, cfg, rng, h)
        except ConfigError:
            raise
        except Exception as exc:  # a crashed suite is a failed suite
            report = ProbeReport(kind, False, -BIG_MARGIN, [],
                                 {"error": f"{type(exc).__name__}: {exc}"})
        return SuiteResult(ctx.label, kind, h, report, time.monotonic() - start)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(execute, tasks))
    else:
        results = [execute(t) for t in tasks]
    results.sort(key=lambda r: (r.catalog, r.probe, repr(r.hbar)))
    return results


def assemble_report(results: List[SuiteResult], seed: int,
                    include_cases: bool = False, include_timings: bool = False) -> Dict:
    report = {
        "schema": SCHEMA,
        "seed": seed,
        "pass": all(r.report.passed for r in results),
        "suites": [r.row(include_cases) for r in results],
    }
    if include_timings:
        report["timings"] = {
            f"{r.catalog}/{r.probe}/{r.hbar}": round(r.elapsed, 3) for r in results
        }
    return report


def report_to_json(report: Dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def cases_to_csv_rows(results: List[SuiteResult]) -> List[List[str]]:
    rows = [["catalog", "probe", "hbar", "digest", "lhs", "rhs", "margin"]]
    for r in results:
        for c in r.report.cases:
            rows.append([r.catalog, r.probe, repr(r.hbar), c.digest,
                         repr(c.lhs), repr(c.rhs), repr(c.margin)])
    return rows


# -- the bundled default run spec -----------------------------------------------------

DEFAULT_RUNSPEC: Dict = {
    "schema": SCHEMA,
    "seed": 42,
    "runs": [
        {"catalog": "log_canonical", "d": 3, "ring": "series", "truncation": 4,
         "params": {"q": "exp_i"},
         "probes": [{"kind": "overlaps"}, {"kind": "jacobi"},
                    {"kind": "first_order", "pairs": 40, "max_degree": 3}]},
        {"catalog": "log_canonical", "d": 2, "ring": "complex",
         "params": {"q": "exp_i"}, "hbar": [0.3, 0.7],
         "probes": [{"kind": "oracle", "max_degree": 3},
                    {"kind": "degree_filtration", "samples": 150},
                    {"kind": "submultiplicativity", "rho": [1.5, 0.8],
                     "samples": 1200, "max_degree": 6},
                    {"kind": "macgyver", "C": 2.0, "alpha": 1, "beta": 1,
                     "Q": 1.0, "samples": 120},
                    {"kind": "classical_limit", "rho": [1.0, 1.0], "pairs": 15}]},
        {"catalog": "wick_log_canonical", "d": 3, "ring": "complex",
         "params": {"q": "exp_neg"}, "hbar": [0.5],
         "probes": [{"kind": "oracle", "max_degree": 3},
                    {"kind": "wick_involution"},
                    {"kind": "submultiplicativity", "rho": [0.9, 1.2, 0.7],
                     "samples": 800, "max_degree": 5},
                    {"kind": "states_psd", "dims": [2, 3], "degree": 2,
                     "points": 6, "hbars": [-0.5, 0.0, 0.5]},
                    {"kind": "witness", "dims": [2, 3], "hbars": [0.25, 1.0]},
                    {"kind": "psi", "dims": [2, 3], "max_degree": 3, "hbars": [0.6]},
                    {"kind": "gns", "d": 2, "degree": 2, "states": 4, "hbars": [0.4]},
                    {"kind": "separation", "d": 2, "samples": 5}]},
        {"catalog": "nonquadratic", "ring": "series", "truncation": 4,
         "options": {"N": 2},
         "probes": [{"kind": "overlaps"}, {"kind": "jacobi"},
                    {"kind": "first_order", "pairs": 25, "max_degree": 3}]},
        {"catalog": "nonquadratic", "ring": "complex", "options": {"N": 2},
         "hbar": [0.4],
         "probes": [{"kind": "oracle", "max_degree": 3}]},
        {"catalog": "quantum_weyl", "ring": "series", "truncation": 4,
         "options": {"lambda": 1},
         "probes": [{"kind": "overlaps"},
                    {"kind": "first_order", "pairs": 25, "max_degree": 3}]},
        {"catalog": "quantum_weyl", "ring": "complex", "options": {"lambda": 1},
         "hbar": [0.3],
         "probes": [{"kind": "oracle", "max_degree": 3},
                    {"kind": "classical_limit", "rho": [1.0, 1.0], "pairs": 10}]},
        {"catalog": "symmetrized_log_canonical", "d": 2, "ring": "rational",
         "params": {"q": "const:3/5"},
         "probes": [{"kind": "q_identities", "dims": [2, 3], "max_total": 4},
                    {"kind": "sigma_oracle", "q_values": ["3/2", "5/7", "-2/3"],
                     "max_degree": 2}]},
        {"catalog": "translated", "d": 2, "ring": "series", "truncation": 4,
         "options": {"c": ["1", "-1"]},
         "probes": [{"kind": "overlaps"},
                    {"kind": "first_order", "pairs": 20, "max_degree": 2},
                    {"kind": "oracle", "max_degree": 2}]},
    ],
}
