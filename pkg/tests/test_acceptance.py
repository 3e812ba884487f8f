"""Acceptance criteria, one test per criterion, at the stated tolerances.

Each test prints a single PASS line when it holds; a failing criterion
fails its test.  Criteria with runtime budgets assert them.
"""

import json
import math
import random
import time
from fractions import Fraction

from click.testing import CliRunner

from starprod.catalog import (
    build_catalog,
    catalog_poisson,
    log_canonical_table,
    symmetrized_star,
    symmetrized_star_by_averaging,
)
from starprod.cli import main as cli_main
from starprod.norms import NormSpec, seminorm
from starprod.params import ParameterCatalog, ParameterRule
from starprod.poly import Polynomial, inversion_weight
from starprod.probes import (
    classical_limit_probe,
    degree_filtration_check,
    exponent_ball,
    first_order_commutator,
    random_polynomial,
    submultiplicativity_probe,
)
from starprod.qcomb import q_multinomial
from starprod.reduction import check_overlaps, poisson_bracket, star_by_reduction
from starprod.scalars import (
    GaussRational,
    RationalQRing,
    SeriesRing,
    make_ring,
)
from starprod.states import (
    StateFunctional,
    WickPoint,
    gns_build,
    gram_matrix,
    nonpositivity_witness,
    psd_check,
    random_wick_point,
    reversal_isomorphism,
)

R = make_ring("rational")
C = make_ring("complex")


def _const(text):
    return ParameterRule.parse(f"const:{text}")


def _exact_catalogs():
    """Catalog instances over exact rings for the associativity sweep."""
    out = []
    rules_lc = ParameterCatalog({"q": _const("5/4")})
    out.append(("log_canonical", build_catalog("log_canonical", R, 3, rules_lc)))
    rules_w = ParameterCatalog({"q": _const("3/4")})
    out.append(("wick_log_canonical",
                build_catalog("wick_log_canonical", R, 3, rules_w)))
    rules_nq = ParameterCatalog({"p": _const("7/5"), "q": _const("5/4"),
                                 "r": _const("4/3")})
    for n in (0, 1, 2):
        out.append((f"nonquadratic(N={n})",
                    build_catalog("nonquadratic", R, 3, rules_nq, options={"N": n})))
    sring = SeriesRing(order=4, exact=True)
    out.append(("quantum_weyl(lambda=1)",
                build_catalog("quantum_weyl", sring, 2, options={"lambda": 1})))
    rules_t = ParameterCatalog({"q": _const("5/4")})
    out.append(("translated(c=(1,-1))",
                build_catalog("translated", R, 2, rules_t,
                              options={"c": ["1", "-1"]})))
    return out


def test_criterion_01_associativity():
    start = time.monotonic()
    rng = random.Random(101)
    for name, inst in _exact_catalogs():
        assert check_overlaps(inst.table).ok, name
        star = inst.reduction_star
        for _ in range(200):
            f = random_polynomial(rng, inst.ring, inst.dim, 4, 3, inst.kind)
            g = random_polynomial(rng, inst.ring, inst.dim, 4, 3, inst.kind)
            h = random_polynomial(rng, inst.ring, inst.dim, 4, 3, inst.kind)
            assert star(star(f, g), h) == star(f, star(g, h)), name
    elapsed = time.monotonic() - start
    assert elapsed < 60.0, f"associativity sweep took {elapsed:.1f}s"
    print(f"\nPASS criterion 1: associativity on 200 triples x {len(_exact_catalogs())} "
          f"catalogs, exact, {elapsed:.1f}s")


def test_criterion_02_oracle_equivalence():
    start = time.monotonic()
    checked = 0
    # log-canonical and Wick on d = 2 and 3
    q = GaussRational(Fraction(5, 4))
    for name, d, kind in (("log_canonical", 2, "x"), ("log_canonical", 3, "x"),
                          ("wick_log_canonical", 2, "w"), ("wick_log_canonical", 3, "w")):
        rules = ParameterCatalog({"q": _const("5/4" if kind == "x" else "3/4")})
        inst = build_catalog(name, R, d, rules)
        for K in exponent_ball(d, 5):
            for L in exponent_ball(d, 5):
                assert inst.star.monomial_product(K, L) == \
                    inst.reduction_star.monomial_product(K, L), (name, d, K, L)
                checked += 1
    # the word-sum closed form on d = 3
    rules_nq = ParameterCatalog({"p": _const("7/5"), "q": _const("5/4"),
                                 "r": _const("4/3")})
    inst = build_catalog("nonquadratic", R, 3, rules_nq, options={"N": 2})
    for K in exponent_ball(3, 5):
        for L in exponent_ball(3, 5):
            assert inst.star.monomial_product(K, L) == \
                inst.reduction_star.monomial_product(K, L), ("nonquadratic", K, L)
            checked += 1
    # quantum Weyl in exact series mode
    sring = SeriesRing(order=4, exact=True)
    inst = build_catalog("quantum_weyl", sring, 2, options={"lambda": 1})
    for K in exponent_ball(2, 5):
        for L in exponent_ball(2, 5):
            assert inst.star.monomial_product(K, L) == \
                inst.reduction_star.monomial_product(K, L), ("quantum_weyl", K, L)
            checked += 1
    elapsed = time.monotonic() - start
    assert elapsed < 120.0, f"oracle sweep took {elapsed:.1f}s"
    print(f"\nPASS criterion 2: {checked} closed-form products match reduction "
          f"exactly, {elapsed:.1f}s")


def test_criterion_03_reduction_count_law():
    q = GaussRational(Fraction(5, 4))
    checked = 0
    for d in (2, 3):
        tab = log_canonical_table(R, d, q)
        for K in exponent_ball(d, 6):
            for L in exponent_ball(d, 6):
                trace = star_by_reduction(Polynomial.monomial(R, d, K),
                                          Polynomial.monomial(R, d, L), tab)
                expected = inversion_weight(K, L)
                assert trace.reduction_count == expected, (d, K, L)
                size = sum(K) + sum(L)
                assert trace.reduction_count <= size * size  # alpha = 1
                if not trace.result.is_zero():
                    assert trace.result.total_degree() <= size  # beta = 1
                checked += 1
    print(f"\nPASS criterion 3: reduction-count law and alpha=beta=1 hypotheses "
          f"on {checked} pairs")


def test_criterion_04_local_m_convexity():
    cases_per_combo = 10 ** 4 // 6 + 1
    for name, kind, d, rule, hbars in (
            ("log_canonical", "x", 2, "exp_i", (0.1, 0.7, 2.0)),
            ("wick_log_canonical", "w", 2, "exp_neg", (0.0, 0.5, 3.0))):
        total = 0
        worst = float("inf")
        for hbar in hbars:
            rules = ParameterCatalog({"q": ParameterRule(rule)})
            inst = build_catalog(name, C, d, rules, hbar)
            for rho in ((0.5, 2.0), (1.0, 1.0)):
                rng = random.Random(f"c4:{name}:{hbar}:{rho}")
                report = submultiplicativity_probe(
                    inst.star, rho, rng, d, C, samples=cases_per_combo,
                    max_degree=6, kind=kind, tol=1e-10)
                assert report.passed, (name, hbar, rho, report.worst_margin)
                total += len(report.cases)
                worst = min(worst, report.worst_margin)
        assert total >= 10 ** 4
        print(f"\nPASS criterion 4: submultiplicativity for {name} on {total} cases, "
              f"worst margin {worst:.3e}")


def test_criterion_05_classical_limit():
    configs = [
        ("log_canonical", 2, None, {}),
        ("quantum_weyl", 2, None, {"lambda": 1}),
        ("nonquadratic", 3,
         ParameterCatalog({"p": ParameterRule("exp_i"), "q": ParameterRule("exp_i"),
                           "r": _const("1")}), {"N": 2}),
    ]
    for name, d, rules, options in configs:
        rng = random.Random(f"c5:{name}")
        eta = catalog_poisson(name, d, rules, dict(options))

        def star_at(h, _name=name, _d=d, _rules=rules, _options=options):
            return build_catalog(_name, C, _d, _rules, h, dict(_options)).star

        pairs = [(random_polynomial(rng, C, d, 3, 2), random_polynomial(rng, C, d, 3, 2))
                 for _ in range(50)]
        rho = (1.0,) * d
        spec = NormSpec.rho_norm(rho)
        # residual bound at hbar = 1e-6
        product = star_at(1e-6)
        for f, g in pairs:
            bracket = poisson_bracket(eta, f, g)
            delta = (product(f, g) - product(g, f)).scale(1 / (1j * 1e-6))
            residual = seminorm(delta - bracket, spec)
            scale = max(1.0, seminorm(f, spec) * seminorm(g, spec))
            assert residual <= 1e-4 * scale, (name, residual, scale)
        # fitted order in hbar
        report = classical_limit_probe(star_at, eta, pairs, rho)
        assert report.passed, name
        for order in report.meta["orders"]:
            assert 0.8 <= order <= 1.2, (name, order)
        print(f"\nPASS criterion 5: classical limit for {name}, "
              f"orders {min(report.meta['orders']):.2f}..{max(report.meta['orders']):.2f}")


def _series_coefficient(f, k, base):
    return f.map_coefficients(lambda s: s.coefficient(k), base)


def test_criterion_06_first_order_law():
    ring = SeriesRing(order=4, exact=True)
    i_unit = ring.base.imaginary_unit
    catalogs = [
        ("log_canonical", 3, None, {}),
        ("wick_log_canonical", 3, None, {}),
        ("nonquadratic", 3, None, {"N": 2}),
        ("quantum_weyl", 2, None, {"lambda": 1}),
        ("translated", 2, None, {"c": ["1", "-1"]}),
        ("symmetrized_log_canonical", 2, None, {}),
    ]
    for name, d, rules, options in catalogs:
        rng = random.Random(f"c6:{name}")
        inst = build_catalog(name, ring, d, rules, options=dict(options))
        eta = catalog_poisson(name, d, rules, dict(options))
        for _ in range(100):
            f = random_polynomial(rng, ring, d, 3, 2, inst.kind)
            g = random_polynomial(rng, ring, d, 3, 2, inst.kind)
            if inst.table is not None:
                antisym = first_order_commutator(f, g, inst.table)
            else:
                product = inst.star(f, g) - inst.star(g, f)
                antisym = _series_coefficient(product, 1, ring.base)
            f0 = _series_coefficient(f, 0, ring.base)
            g0 = _series_coefficient(g, 0, ring.base)
            expected = poisson_bracket(eta, f0, g0).scale(i_unit)
            assert antisym == expected, name
    print("\nPASS criterion 6: antisymmetrized first-order term equals i{f,g} "
          "for all catalogs, 100 pairs each, exact")


def test_criterion_07_q_combinatorics():
    QR = RationalQRing()
    q = QR.q
    # the q <-> 1/q identity as an exact rational-function identity
    for d in (2, 3):
        for K in exponent_ball(d, 6):
            pair_sum = (sum(K) ** 2 - sum(k * k for k in K)) // 2
            assert q_multinomial(K, q, QR) == \
                q ** pair_sum * q_multinomial(K, QR.inverse(q), QR)
    # the symmetrized product against the averaging oracle, d <= 3
    q_values = [Fraction(3, 2), Fraction(5, 7), Fraction(-2, 3),
                Fraction(7, 4), Fraction(1, 5)]
    for qv in q_values:
        qs = GaussRational(qv)
        for d in (2, 3):
            tab = log_canonical_table(R, d, qs)
            cache = {}
            for K in exponent_ball(d, 4):
                for L in exponent_ball(d, 4):
                    assert symmetrized_star(K, L, qs, R) == \
                        symmetrized_star_by_averaging(K, L, tab, cache=cache)
    # the generator coefficients
    one = GaussRational(1)
    for qv in q_values:
        qs = GaussRational(qv)
        s12 = symmetrized_star((1, 0), (0, 1), qs, R).terms[(1, 1)]
        s21 = symmetrized_star((0, 1), (1, 0), qs, R).terms[(1, 1)]
        assert s12 == GaussRational(2) / (one + qs)
        assert s21 == GaussRational(2) * qs / (one + qs)
    print("\nPASS criterion 7: q-multinomial identity (|K| <= 6), symmetrized "
          "product vs averaging oracle, generator coefficients, exact")


def test_criterion_08_states():
    rng = random.Random(808)
    # PSD sweep
    for d in (2, 3, 4):
        for hbar in (-1.0, -0.1, 0.0, 0.1, 1.0):
            for _ in range(20):
                z = random_wick_point(rng, d)
                _, M = gram_matrix(StateFunctional(z, hbar), 3)
                result = psd_check(M, tol=1e-9)
                assert result.passed, (d, hbar, result.min_eigenvalue)
    # witness value
    for d in (2, 3, 4):
        for hbar in (0.25, math.log(2), 1.0):
            z = random_wick_point(rng, d)
            while abs(z.z[0]) < 0.1:
                z = random_wick_point(rng, d)
            value = nonpositivity_witness(z, hbar, 1)
            assert abs(value - (math.exp(-hbar) - 1)) <= 1e-12
    # the reversal isomorphism intertwines the products, |K|, |L| <= 5
    for d in (2, 3):
        hbar = 0.8
        qp = math.exp(-hbar)
        qm = math.exp(hbar)
        ball = exponent_ball(d, 5)
        for K in ball:
            for L in ball:
                fK = Polynomial.monomial(C, d, K, kind="w")
                fL = Polynomial.monomial(C, d, L, kind="w")
                lhs = reversal_isomorphism(
                    _wick_product(fK, fL, qp), hbar)
                rhs = _wick_product(reversal_isomorphism(fK, hbar),
                                    reversal_isomorphism(fL, hbar), qm)
                assert lhs.close_to(rhs, tol=1e-12, scale=_max_mag(rhs))
        # pull-back of the mirrored functional
        z = random_wick_point(rng, d)
        state = StateFunctional(z, hbar)
        mirror = StateFunctional(WickPoint(tuple(v.conjugate() for v in z.z)), -hbar)
        for K in exponent_ball(d, 5):
            direct = state.eval_monomial(K)
            pulled = mirror(reversal_isomorphism(
                Polynomial.monomial(C, d, K, kind="w"), hbar))
            assert abs(direct - pulled) <= 1e-12 * max(1.0, abs(direct))
    # GNS adjoint relation
    for _ in range(10):
        z = random_wick_point(rng, 2)
        data = gns_build(StateFunctional(z, 0.6), 3)
        assert data.adjoint_residual <= 1e-8
    print("\nPASS criterion 8: Gram PSD (300 states), witness value, reversal "
          "isomorphism, GNS adjoint relation")


def _wick_product(f, g, q):
    from starprod.catalog import wick_star
    acc = Polynomial.zero(C, f.dim, "w")
    for K, a in f.terms.items():
        for L, b in g.terms.items():
            acc = acc + wick_star(K, L, complex(q), C).scale(a * b)
    return acc


def _max_mag(f):
    return max((abs(c) for c in f.terms.values()), default=1.0)


def test_criterion_09_negative_controls():
    # broken nonquadratic: overlap failure with the predicted difference
    p = GaussRational(Fraction(7, 5))
    q = GaussRational(Fraction(5, 4))
    r = GaussRational(Fraction(4, 3))
    s = GaussRational(2)
    from starprod.catalog import nonquadratic_table
    N = 2
    report = check_overlaps(nonquadratic_table(R, N, p, q, r, s))
    assert not report.ok
    (i, j, k, diff) = report.failures[0]
    predicted = (p - GaussRational(1)) * (r * s - GaussRational(1))
    assert (i, j, k) == (1, 2, 3)
    assert diff.terms == {(N + 1, 0, 0): predicted}
    # submultiplicativity breaks for q = affine at hbar = 1
    rng = random.Random(909)
    rules = ParameterCatalog({"q": ParameterRule("affine")})
    inst = build_catalog("log_canonical", C, 2, rules, 1.0)
    sub = submultiplicativity_probe(inst.star, (1.0, 1.0), rng, 2, C,
                                    samples=50, max_degree=8)
    assert not sub.passed
    # the degree filtration fails for the quantum Weyl product
    instw = build_catalog("quantum_weyl", C, 2, None, 0.5, {"lambda": 1})
    filt = degree_filtration_check(instw.star, rng, 2, C, samples=100)
    assert not filt.passed
    print("\nPASS criterion 9: all three negative controls fail as they must")


def test_criterion_10_determinism_and_runtime(tmp_path):
    runner = CliRunner()
    start = time.monotonic()
    outputs = []
    for name in ("one.json", "two.json"):
        out = tmp_path / name
        result = runner.invoke(cli_main, ["verify", "--seed", "42",
                                          "--out", str(out)])
        assert result.exit_code == 0
        outputs.append(out.read_bytes())
    elapsed = time.monotonic() - start
    assert outputs[0] == outputs[1], "reports differ between identical runs"
    assert elapsed < 600.0, f"two default verify runs took {elapsed:.0f}s"
    report = json.loads(outputs[0])
    assert report["pass"] is True
    assert report["schema"] == "starprod/1"
    print(f"\nPASS criterion 10: byte-identical default verify, "
          f"2 runs in {elapsed:.1f}s")
