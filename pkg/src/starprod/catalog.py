"""Closed-form star products and their relation tables.

Every entry here comes in two computable routes: a closed formula on
monomials and a relation table that the rewrite engine can run, so each
formula is cross-checkable against the generic reduction.  Catalog ids used
by the CLI:

    log_canonical             q^(sum_{i<j} K_j L_i) x^(K+L)
    wick_log_canonical        the same exponent rule on Wick coordinates
    nonquadratic              d=3 family with tails (r-1)xy, (1/r-1)xz,
                              (q-1)yz + (p-1)x^N; closed form is a weighted
                              sum over binary words
    quantum_weyl              d=2 specialization with relation
                              z y = q y z + (p-1), q = e^(i*lambda*hbar),
                              p = 1 + i*hbar
    symmetrized_log_canonical the log-canonical product conjugated by the
                              symmetrization map; coefficients are ratios of
                              q-multinomials
    translated                pull-back of log_canonical under the shift
                              x_i -> x_i + c_i
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .params import ParameterCatalog, ParameterRule
from .poly import Exponent, NcPolynomial, Polynomial, inversion_weight
from .qcomb import (
    PoleAtRootOfUnity,
    multinomial,
    q_multinomial,
    q_multinomial_value_or_pole,
    root_of_unity_order,
)
from .reduction import (
    DEFAULT_STEP_LIMIT,
    PoissonStructure,
    ReductionTrace,
    RelationTable,
    poisson_from_table,
    reduce_to_standard,
    star_by_reduction,
)
from .scalars import ComplexRing, RationalRing, Ring, SeriesRing, scalar_power

CATALOG_IDS = (
    "log_canonical",
    "wick_log_canonical",
    "nonquadratic",
    "quantum_weyl",
    "symmetrized_log_canonical",
    "translated",
)


class CatalogError(ValueError):
    pass


# -- relation tables ----------------------------------------------------------


def log_canonical_table(ring: Ring, dim: int, q, kind: str = "x") -> RelationTable:
    tails = {}
    qm1 = q - ring.one
    for j in range(2, dim + 1):
        for i in range(1, j):
            K = tuple(1 if p in (i - 1, j - 1) else 0 for p in range(dim))
            tails[(i, j)] = Polynomial(ring, dim, {K: qm1}, kind)
    return RelationTable(ring, dim, kind, tails, name="log_canonical")


def wick_log_canonical_table(ring: Ring, dim: int, q) -> RelationTable:
    table = log_canonical_table(ring, dim, q, kind="w")
    table.name = "wick_log_canonical"
    if isinstance(ring, SeriesRing):
        first = q.coefficient(1)
        if first != ring.base.coerce(-1):
            raise CatalogError("Wick-type q must expand as 1 - t + O(t^2)")
    return table


def nonquadratic_table(ring: Ring, N: int, p, q, r, s=None) -> RelationTable:
    if N < 0:
        raise CatalogError("N must be non-negative")
    if s is None:
        s = ring.inverse(r)
    one = ring.one
    xy = Polynomial(ring, 3, {(1, 1, 0): r - one}, "x")
    xz = Polynomial(ring, 3, {(1, 0, 1): s - one}, "x")
    yz = Polynomial(ring, 3, {(0, 1, 1): q - one, (N, 0, 0): p - one}, "x")
    return RelationTable(ring, 3, "x", {(1, 2): xy, (1, 3): xz, (2, 3): yz},
                         name="nonquadratic")


def quantum_weyl_table(ring: Ring, p, q) -> RelationTable:
    one = ring.one
    tail = Polynomial(ring, 2, {(1, 1): q - one, (0, 0): p - one}, "x")
    return RelationTable(ring, 2, "x", {(1, 2): tail}, name="quantum_weyl")


def translated_table(base: RelationTable, offsets: Sequence) -> RelationTable:
    """Table of the pull-back product: every tail is shifted by the offsets."""
    offs = [base.ring.coerce(c) if type(c) is not type(base.ring.zero) else c
            for c in offsets]
    tails = {pair: tail.shift(offs) for pair, tail in base.tails.items()}
    return RelationTable(base.ring, base.dim, base.kind, tails,
                         name=f"translated({base.name})")


# -- closed forms --------------------------------------------------------------


def log_canonical_star(K: Exponent, L: Exponent, q, ring: Ring, kind: str = "x") -> Polynomial:
    """x^K * x^L = q^(sum_{i<j} K_j L_i) x^(K+L)."""
    if len(K) != len(L):
        raise CatalogError("multi-index dimensions differ")
    M = tuple(a + b for a, b in zip(K, L))
    return Polynomial.monomial(ring, len(K), M, q ** inversion_weight(K, L), kind)


def wick_star(K: Exponent, L: Exponent, q, ring: Ring) -> Polynomial:
    """Same exponent rule on Wick coordinates; q must expand as 1 - t + O(t^2)."""
    if isinstance(ring, SeriesRing) and q.coefficient(1) != ring.base.coerce(-1):
        raise CatalogError("Wick-type q must expand as 1 - t + O(t^2)")
    return log_canonical_star(K, L, q, ring, kind="w")


def wick_involution_condition(table: RelationTable, tol: float = 1e-10) -> bool:
    """conjugate(tail(i, j)) must equal tail(d-j+1, d-i+1) for all i < j."""
    if table.kind != "w":
        raise CatalogError("the involution condition applies to Wick-type tables")
    d = table.dim
    for j in range(2, d + 1):
        for i in range(1, j):
            lhs = table.tail(i, j).conjugate()
            rhs = table.tail(d - j + 1, d - i + 1)
            if table.ring.exact:
                if lhs != rhs:
                    return False
            elif not lhs.close_to(rhs, tol=tol):
                return False
    return True


def step_weight(m: int, prefix: Sequence[int], bit: int, p, q, r, N: int, ring: Ring):
    """Weight of extending a binary word by one letter.

    bit 0 contributes q^(m - ones(prefix)); bit 1 contributes
    (p - 1) * sum_{j < m - ones(prefix)} (q r^N)^j.
    """
    ones = sum(prefix)
    if bit == 0:
        return q ** (m - ones)
    base = q * scalar_power(ring, r, N)
    acc = ring.zero
    power = ring.one
    for _ in range(m - ones):
        acc = acc + power
        power = power * base
    return (p - 1) * acc


def word_weight(m: int, word: Sequence[int], p, q, r, N: int, ring: Ring):
    """Product of step weights along a binary word, with r^(-N ones) twists."""
    acc = ring.one
    ones = 0
    for idx, bit in enumerate(word):
        acc = acc * scalar_power(ring, r, -N * ones)
        acc = acc * step_weight(m, word[:idx], bit, p, q, r, N, ring)
        ones += bit
    return acc


def _binary_words(k: int, max_ones: int) -> Iterable[Tuple[int, ...]]:
    """Words in {0,1}^k with at most max_ones ones, lexicographic, pruned."""
    def extend(prefix: Tuple[int, ...], ones: int):
        if len(prefix) == k:
            yield prefix
            return
        yield from extend(prefix + (0,), ones)
        if ones < max_ones:
            yield from extend(prefix + (1,), ones + 1)

    yield from extend((), 0)


def nonquadratic_star(e1: Tuple[int, int, int], e2: Tuple[int, int, int],
                      p, q, r, N: int, ring: Ring) -> Polynomial:
    """Closed form for the d=3 family, as a weighted sum over binary words.

    x^i y^j z^k * x^l y^m z^n =
        sum over w in {0,1}^k, |w| <= m of
        r^((j-k) l + j N |w|) * weight(w) * x^(i+l+N|w|) y^(j+m-|w|) z^(k+n-|w|)
    """
    i, j, k = e1
    l, m, n = e2
    if min(i, j, k, l, m, n) < 0:
        raise CatalogError("exponents must be non-negative")
    terms: Dict[Exponent, object] = {}
    for w in _binary_words(k, m):
        ones = sum(w)
        coeff = scalar_power(ring, r, (j - k) * l + j * N * ones)
        coeff = coeff * word_weight(m, w, p, q, r, N, ring)
        M = (i + l + N * ones, j + m - ones, k + n - ones)
        if M in terms:
            terms[M] = terms[M] + coeff
        else:
            terms[M] = coeff
    return Polynomial(ring, 3, terms, "x")


def quantum_weyl_star(e1: Sequence[int], e2: Sequence[int], p, q, ring: Ring) -> Polynomial:
    """d=2 pairs (y-exponent, z-exponent); the N=0 word-sum with r = 1.

    Three-component inputs are accepted when their first exponent is zero.
    """
    def as_pair(e):
        if len(e) == 3:
            if e[0] != 0:
                raise CatalogError("quantum Weyl inputs must have zero x-exponent")
            return e[1], e[2]
        if len(e) != 2:
            raise CatalogError("expected (y, z) exponent pairs")
        return e[0], e[1]

    j, k = as_pair(e1)
    m, n = as_pair(e2)
    full = nonquadratic_star((0, j, k), (0, m, n), p, q, ring.one, 0, ring)
    terms = {}
    for (a, b, c), coeff in full.terms.items():
        if a != 0:
            raise CatalogError("unexpected x-exponent in quantum Weyl product")
        terms[(b, c)] = coeff
    return Polynomial(ring, 2, terms, "x")


def symmetrized_star(K: Exponent, L: Exponent, q, ring: Ring, kind: str = "x") -> Polynomial:
    """Symmetrized product: a q-multinomial ratio times the log-canonical term."""
    if len(K) != len(L):
        raise CatalogError("multi-index dimensions differ")
    M = tuple(a + b for a, b in zip(K, L))
    bq_K = q_multinomial(K, q, ring)
    bq_L = q_multinomial(L, q, ring)
    if isinstance(ring, (RationalRing, ComplexRing)):
        bq_M = q_multinomial_value_or_pole(M, q, ring)
    else:
        bq_M = q_multinomial(M, q, ring)
    classical = Fraction(multinomial(M), multinomial(K) * multinomial(L))
    coeff = ring.coerce(classical) * bq_K * bq_L * ring.inverse(bq_M)
    coeff = coeff * q ** inversion_weight(K, L)
    return Polynomial.monomial(ring, len(K), M, coeff, kind)


def equivalence_transform(f: Polynomial, q, direction: str = "forward") -> Polynomial:
    """Diagonal rescaling x^K -> (binom_q(K)/binom(K))^(+-1) x^K.

    Intertwines the standard and symmetrized products:
    f symmetrized-star g = T^(-1)(T f * T g).
    """
    if direction not in ("forward", "inverse"):
        raise CatalogError("direction must be 'forward' or 'inverse'")
    ring = f.ring
    out = {}
    for K, c in f.terms.items():
        bq = q_multinomial(K, q, ring)
        cl = ring.coerce(Fraction(1, multinomial(K)))
        if direction == "forward":
            out[K] = c * bq * cl
        else:
            if ring.is_zero(bq):
                raise PoleAtRootOfUnity(root_of_unity_order(q, ring, max_order=max(2, sum(K))))
            out[K] = c * ring.coerce(Fraction(multinomial(K))) * ring.inverse(bq)
    return Polynomial(ring, f.dim, out, f.kind)


def translated_star(f: Polynomial, g: Polynomial, base: RelationTable,
                    offsets: Sequence, step_limit: int = DEFAULT_STEP_LIMIT) -> Polynomial:
    """Pull-back product T(T^(-1) f * T^(-1) g) under T(x_i) = x_i + c_i."""
    ring = base.ring
    offs = [ring.coerce(c) if type(c) is not type(ring.zero) else c for c in offsets]
    neg = [-c for c in offs]
    inner = star_by_reduction(f.shift(neg), g.shift(neg), base, step_limit).result
    return inner.shift(offs)


# -- brute-force symmetrization oracle ------------------------------------------


class SigmaError(ArithmeticError):
    pass


def _distinct_arrangements(K: Exponent) -> List[Tuple[int, ...]]:
    """Distinct orderings of the multiset word of x^K, lexicographic."""
    counts = list(K)
    total = sum(counts)
    out: List[Tuple[int, ...]] = []

    def walk(prefix):
        if len(prefix) == total:
            out.append(tuple(prefix))
            return
        for letter in range(1, len(counts) + 1):
            if counts[letter - 1]:
                counts[letter - 1] -= 1
                prefix.append(letter)
                walk(prefix)
                prefix.pop()
                counts[letter - 1] += 1

    walk([])
    return out


def _symmetrized_word(K: Exponent, ring: Ring, dim: int) -> NcPolynomial:
    """Average over all arrangements of the multiset word of x^K."""
    words = _distinct_arrangements(K)
    weight = ring.coerce(Fraction(1, multinomial(K)))
    return NcPolynomial(ring, dim, {w: weight for w in words})


def symmetrized_star_by_averaging(K: Exponent, L: Exponent, table: RelationTable,
                                  step_limit: int = DEFAULT_STEP_LIMIT,
                                  cache: Optional[Dict] = None) -> Polynomial:
    """Oracle route for the symmetrized product.

    Averages the words of x^K and x^L over all letter orders, multiplies in
    the rewritten algebra, and inverts the symmetrization monomial-wise.
    Independent of the closed-form coefficients, so agreement is a real
    check.  Pass a dict as ``cache`` to reuse reduced symmetrizations
    across calls with the same table.
    """
    if sum(K) > 6 or sum(L) > 6:
        raise SigmaError("oracle guard: |K|, |L| <= 6")
    ring = table.ring
    dim = table.dim
    u = _symmetrized_word(K, ring, dim)
    v = _symmetrized_word(L, ring, dim)
    product, _, _ = reduce_to_standard(u.concat(v), table, step_limit)
    h = product.to_polynomial(table.kind)

    sigma_cache: Dict[Exponent, Polynomial] = cache if cache is not None else {}

    def sigma_reduced(M: Exponent) -> Polynomial:
        if M not in sigma_cache:
            nc = _symmetrized_word(M, ring, dim)
            normal, _, _ = reduce_to_standard(nc, table, step_limit)
            sigma_cache[M] = normal.to_polynomial(table.kind)
        return sigma_cache[M]

    # solve sigma(g) = h on the monomial basis
    diagonal = True
    for M in h.terms:
        image = sigma_reduced(M)
        if image.is_zero():
            raise SigmaError(
                "symmetrization is not invertible at this q (root-of-unity degeneration)")
        if set(image.terms) != {M}:
            diagonal = False
            break

    if diagonal:
        out = {}
        for M, c in h.terms.items():
            factor = sigma_reduced(M).terms[M]
            if ring.is_zero(factor):
                raise SigmaError(
                    "symmetrization is not invertible at this q (root-of-unity degeneration)")
            out[M] = c * ring.inverse(factor)
        return Polynomial(ring, dim, out, table.kind)

    if not isinstance(ring, SeriesRing) or not ring.exact:
        raise SigmaError("non-diagonal symmetrization inversion needs exact series mode")

    def sigma_apply(g: Polynomial) -> Polynomial:
        acc = Polynomial.zero(ring, dim, table.kind)
        for M, c in g.terms.items():
            acc = acc + sigma_reduced(M).scale(c)
        return acc

    g = h
    for _ in range(ring.order + 2):
        residual = sigma_apply(g) - h
        if residual.is_zero():
            return g
        g = g - residual
    raise SigmaError("symmetrization inversion did not stabilize")


# -- catalog registry -----------------------------------------------------------


@dataclass
class StarProduct:
    """A bilinear product handle, with optional closed form and table."""

    name: str
    ring: Ring
    dim: int
    kind: str = "x"
    table: Optional[RelationTable] = None
    mono: Optional[Callable[[Exponent, Exponent], Polynomial]] = None
    step_limit: int = DEFAULT_STEP_LIMIT

    def monomial_product(self, K: Exponent, L: Exponent) -> Polynomial:
        if self.mono is not None:
            return self.mono(tuple(K), tuple(L))
        return self.traced_monomials(K, L).result

    def traced_monomials(self, K: Exponent, L: Exponent) -> ReductionTrace:
        if self.table is None:
            raise CatalogError(f"{self.name} has no relation table to trace")
        f = Polynomial.monomial(self.ring, self.dim, K, kind=self.kind)
        g = Polynomial.monomial(self.ring, self.dim, L, kind=self.kind)
        return star_by_reduction(f, g, self.table, self.step_limit)

    def __call__(self, f: Polynomial, g: Polynomial) -> Polynomial:
        if self.mono is None:
            if self.table is None:
                raise CatalogError(f"{self.name} has neither closed form nor table")
            return star_by_reduction(f, g, self.table, self.step_limit).result
        acc = Polynomial.zero(self.ring, self.dim, self.kind)
        for K, a in f.terms.items():
            for L, b in g.terms.items():
                acc = acc + self.mono(K, L).scale(a * b)
        return acc


@dataclass
class CatalogInstance:
    name: str
    ring: Ring
    dim: int
    kind: str
    star: StarProduct
    table: Optional[RelationTable]
    reduction_star: Optional[StarProduct]
    params: Dict[str, object] = field(default_factory=dict)
    options: Dict[str, object] = field(default_factory=dict)


def default_rules(name: str, options: Optional[Dict] = None) -> ParameterCatalog:
    options = options or {}
    if name in ("log_canonical", "symmetrized_log_canonical", "translated"):
        return ParameterCatalog({"q": ParameterRule("exp_i")})
    if name == "wick_log_canonical":
        return ParameterCatalog({"q": ParameterRule("exp_neg")})
    if name == "nonquadratic":
        return ParameterCatalog({"p": ParameterRule("exp_i"),
                                 "q": ParameterRule("exp_i"),
                                 "r": ParameterRule("exp_i")})
    if name == "quantum_weyl":
        lam = Fraction(str(options.get("lambda", 1)))
        return ParameterCatalog({"p": ParameterRule("affine"),
                                 "q": ParameterRule("exp_scaled", scale=lam)})
    raise CatalogError(f"unknown catalog {name!r}; expected one of {CATALOG_IDS}")


def build_catalog(name: str, ring: Ring, d: Optional[int] = None,
                  rules: Optional[ParameterCatalog] = None,
                  hbar: Optional[complex] = None,
                  options: Optional[Dict] = None) -> CatalogInstance:
    """Assemble a catalog instance: resolved parameters, table, product handle."""
    options = dict(options or {})
    if name not in CATALOG_IDS:
        raise CatalogError(f"unknown catalog {name!r}; expected one of {CATALOG_IDS}")
    if rules is None:
        rules = default_rules(name, options)
    scalars = rules.resolve(ring, hbar)

    if name == "log_canonical":
        dim = d or 2
        q = scalars["q"]
        table = log_canonical_table(ring, dim, q)
        mono = lambda K, L: log_canonical_star(K, L, q, ring)
        star = StarProduct(name, ring, dim, "x", table, mono)
    elif name == "wick_log_canonical":
        dim = d or 2
        q = scalars["q"]
        table = wick_log_canonical_table(ring, dim, q)
        mono = lambda K, L: wick_star(K, L, q, ring)
        star = StarProduct(name, ring, dim, "w", table, mono)
    elif name == "nonquadratic":
        dim = 3
        if d not in (None, 3):
            raise CatalogError("nonquadratic lives on d = 3")
        N = int(options.get("N", 2))
        options["N"] = N
        p, q, r = scalars["p"], scalars["q"], scalars["r"]
        s = scalars.get("s")
        table = nonquadratic_table(ring, N, p, q, r, s)
        mono = None
        if s is None:
            mono = lambda K, L: nonquadratic_star(K, L, p, q, r, N, ring)
        star = StarProduct(name, ring, dim, "x", table, mono)
    elif name == "quantum_weyl":
        dim = 2
        if d not in (None, 2):
            raise CatalogError("quantum_weyl lives on d = 2")
        p, q = scalars["p"], scalars["q"]
        table = quantum_weyl_table(ring, p, q)
        mono = lambda K, L: quantum_weyl_star(K, L, p, q, ring)
        star = StarProduct(name, ring, dim, "x", table, mono)
    elif name == "symmetrized_log_canonical":
        dim = d or 2
        q = scalars["q"]
        table = None
        mono = lambda K, L: symmetrized_star(K, L, q, ring)
        star = StarProduct(name, ring, dim, "x", None, mono)
    else:  # translated
        offsets = options.get("c", (1, -1))
        offsets = [Fraction(str(c)) for c in offsets]
        options["c"] = offsets
        dim = d or len(offsets)
        if dim != len(offsets):
            raise CatalogError("offset vector length must equal the dimension")
        q = scalars["q"]
        base = log_canonical_table(ring, dim, q)
        table = translated_table(base, offsets)
        star = StarProduct(name, ring, dim, "x", table, None)
        options["base_table"] = base

    reduction_star = None
    if table is not None:
        reduction_star = StarProduct(name + "(reduction)", ring, dim, star.kind, table, None)
    return CatalogInstance(name, ring, dim, star.kind, star, table, reduction_star,
                           scalars, options)


def catalog_poisson(name: str, d: Optional[int] = None,
                    rules: Optional[ParameterCatalog] = None,
                    options: Optional[Dict] = None,
                    order: int = 4) -> PoissonStructure:
    """First-order bracket of a catalog, from its exact series table."""
    ring = SeriesRing(order=order, exact=True)
    if name == "symmetrized_log_canonical":
        inst = build_catalog("log_canonical", ring, d, rules, None, options)
    else:
        inst = build_catalog(name, ring, d, rules, None, options)
    if inst.table is None:
        raise CatalogError(f"{name} has no table to extract a bracket from")
    return poisson_from_table(inst.table)
