"""Ellipticity and hyperbolicity diagnostics for minimal Sullivan algebras.

The finiteness test works on the associated pure algebra: cohomology is
finite iff the quotient of the even polynomial part by the pure
differential's image is finite, and that quotient is a graded ring
generated in even-generator degrees D, so a run of D consecutive zero
dimensions certifies vanishing in all higher degrees.  Ellipticity then
pins the formal dimension through the exponent identity and is
re-verified on the full cohomology table.  Hyperbolic verdicts are
evidence, never proof: either unbounded pure-quotient mass within the
scan bound, or (for space classification) nonzero homotopy ranks inside
the dichotomy window [2n, 3n-2].
"""

from __future__ import annotations

import math
from fractions import Fraction

from .cdga import Cdga, CdgaError, word_length_quotient
from .graded import AlgElement, Derivation
from .linalg import RatMatrix, rref, span_basis
from .models import check_minimal_sullivan, minimal_model

__all__ = [
    "InvariantsError",
    "ExponentProfile",
    "is_pure",
    "associated_pure",
    "pure_filtration_homology",
    "Finite",
    "ExceededBound",
    "finiteness_test",
    "exponent_numerology",
    "euler_characteristics",
    "EllipticityReport",
    "classify_ellipticity",
    "classify_space",
    "torus_rank_bound",
    "cuplength",
    "cat_bounds",
    "toomer_rank",
    "PoincareSeries",
    "loop_poincare_series",
    "growth_classify",
    "gap_probe",
    "full_invariants",
]


class InvariantsError(CdgaError):
    pass


class ExponentProfile:
    """Even exponents a_j (degrees 2a_j) and odd exponents b_i (degrees
    2b_i - 1), with the formal-dimension candidate
    sum(2b_i - 1) - sum(2a_j - 1)."""

    def __init__(self, even_exponents, odd_exponents):
        self.even_exponents = sorted(even_exponents)
        self.odd_exponents = sorted(odd_exponents)

    @classmethod
    def of(cls, c):
        even = [g.degree // 2 for g in c.algebra.generators
                if g.degree % 2 == 0]
        odd = [(g.degree + 1) // 2 for g in c.algebra.generators
               if g.degree % 2 == 1]
        return cls(even, odd)

    @property
    def dim_even(self):
        return len(self.even_exponents)

    @property
    def dim_odd(self):
        return len(self.odd_exponents)

    @property
    def chi_v(self):
        return self.dim_even - self.dim_odd

    @property
    def formal_dimension_candidate(self):
        return (sum(2 * b - 1 for b in self.odd_exponents)
                - sum(2 * a - 1 for a in self.even_exponents))

    def __repr__(self):
        return (f"ExponentProfile(even={self.even_exponents}, "
                f"odd={self.odd_exponents})")


def _even_part(elem):
    alg = elem.algebra
    keep = {}
    for mono, c in elem.terms.items():
        if all(alg.degree_of(o) % 2 == 0 for o, _ in mono):
            keep[mono] = c
    return AlgElement(alg, keep)


def is_pure(c):
    """d vanishes on even generators and maps odd generators into the
    even subalgebra."""
    if not c.is_free:
        raise InvariantsError("purity is defined for free CDGAs")
    for g in c.algebra.generators:
        dg = c.differential.images.get(g.ordinal)
        if dg is None:
            continue
        if g.degree % 2 == 0:
            if not dg.is_zero():
                return False
        elif _even_part(dg) != dg:
            return False
    return True


def associated_pure(c):
    """Keep only the even-subalgebra summand of each odd generator's
    differential; the result is pure and squares to zero."""
    if not c.is_free:
        raise InvariantsError("associated pure algebra needs a free CDGA")
    images = {}
    for g in c.algebra.generators:
        if g.degree % 2 == 0:
            continue
        dg = c.differential.images.get(g.ordinal)
        if dg is None:
            continue
        part = _even_part(dg)
        if not part.is_zero():
            images[g.name] = part
    d = Derivation(c.algebra, +1, images)
    return Cdga(f"{c.name}-pure", c.algebra, d)


def _odd_count(alg, mono):
    return sum(p for o, p in mono if alg.degree_of(o) % 2 == 1)


def pure_filtration_homology(c, k, max_degree):
    """Dimension table (degrees 0..max_degree) of the odd-word-count k
    layer H_k = ker(d on count k) / d(count k+1) of a pure algebra."""
    if not is_pure(c):
        raise InvariantsError(f"{c.name} is not pure")
    alg = c.algebra

    def layer(j, m):
        if j < 0 or m < 0:
            return []
        return [mono for mono in alg.basis_of_degree(m)
                if _odd_count(alg, mono) == j]

    def d_matrix(j, m):
        src = layer(j, m)
        tgt = layer(j - 1, m + 1)
        index = {mono: i for i, mono in enumerate(tgt)}
        cols = []
        for mono in src:
            img = c.d(AlgElement(alg, {mono: Fraction(1)}))
            col = [Fraction(0)] * len(tgt)
            for mm, cc in img.terms.items():
                col[index[mm]] = cc
            cols.append(col)
        return RatMatrix([[cols[jj][i] for jj in range(len(src))]
                          for i in range(len(tgt))], cols=len(src))

    dims = []
    for m in range(max_degree + 1):
        n_src = len(layer(k, m))
        rank_out = rref(d_matrix(k, m))[2]
        rank_in = rref(d_matrix(k + 1, m - 1))[2]
        dims.append(n_src - rank_out - rank_in)
    return dims


class Finite:
    def __init__(self, total_dim, last_nonzero, h0_dims):
        self.total_dim = total_dim
        self.last_nonzero = last_nonzero
        self.h0_dims = h0_dims

    def __repr__(self):
        return f"Finite(total={self.total_dim}, last={self.last_nonzero})"


class ExceededBound:
    def __init__(self, bound, h0_dims, trailing_zeros):
        self.bound = bound
        self.h0_dims = h0_dims
        self.trailing_zeros = trailing_zeros

    def __repr__(self):
        return f"ExceededBound({self.bound})"


def finiteness_test(c, bound):
    """Decide finiteness of H* via the associated pure algebra's bottom
    filtration layer, scanning for a zero window of length >= the largest
    even generator degree.  On success the full cohomology of `c` is
    recomputed through the candidate formal dimension as a cross-check."""
    pure = c if is_pure(c) else associated_pure(c)
    even_degs = [g.degree for g in c.algebra.generators if g.degree % 2 == 0]
    window = max(even_degs, default=1)
    alg = pure.algebra

    odd_gens = [g for g in alg.generators if g.degree % 2 == 1]
    even_monos = {}

    def even_basis(m):
        if m not in even_monos:
            even_monos[m] = [mono for mono in alg.basis_of_degree(m)
                             if _odd_count(alg, mono) == 0]
        return even_monos[m]

    def h0_dim(m):
        tgt = even_basis(m)
        if not tgt:
            return 0
        index = {mono: i for i, mono in enumerate(tgt)}
        vectors = []
        for g in odd_gens:
            dg = pure.differential.images.get(g.ordinal)
            if dg is None:
                continue
            for mono in even_basis(m - (g.degree + 1)):
                img = AlgElement(alg, {mono: Fraction(1)}) * dg
                if img.is_zero():
                    continue
                v = [Fraction(0)] * len(tgt)
                for mm, cc in img.terms.items():
                    v[index[mm]] = cc
                vectors.append(v)
        return len(tgt) - span_basis(vectors, len(tgt)).dim

    dims = []
    zeros = 0
    for m in range(bound + 1):
        d = h0_dim(m)
        dims.append(d)
        if m == 0:
            continue
        zeros = 0 if d else zeros + 1
        if zeros >= window:
            last = max((i for i, v in enumerate(dims) if v), default=0)
            result = Finite(sum(dims), last, dims)
            # cross-check on the full cohomology of c itself
            n = ExponentProfile.of(c).formal_dimension_candidate
            for k in range(max(n, 0) + 1):
                c.h_dim(k)
            return result
    trailing = 0
    for v in reversed(dims):
        if v:
            break
        trailing += 1
    return ExceededBound(bound, dims, trailing)


def exponent_numerology(profile, n):
    """The four elliptic constraints, evaluated exactly:
    (1) sum(2b-1) - sum(2a-1) = n, (2) sum 2a <= n,
    (3) sum(2b-1) <= 2n - 1, (4) dim V^even <= dim V^odd."""
    sum_odd = sum(2 * b - 1 for b in profile.odd_exponents)
    sum_even_m1 = sum(2 * a - 1 for a in profile.even_exponents)
    sum_even = sum(2 * a for a in profile.even_exponents)
    return (
        sum_odd - sum_even_m1 == n,
        sum_even <= n,
        sum_odd <= 2 * n - 1 if profile.odd_exponents else True,
        profile.dim_even <= profile.dim_odd,
    )


def euler_characteristics(c, max_degree, h_dims=None):
    """chi of H* (alternating sum over the computed range), chi_V, and the
    equivalence cluster chi_H > 0 <=> H^odd = 0 <=> chi_V = 0."""
    if h_dims is None:
        h_dims = [c.h_dim(k) for k in range(max_degree + 1)]
    chi_h = sum((-1 if k % 2 else 1) * d for k, d in enumerate(h_dims))
    profile = ExponentProfile.of(c)
    chi_v = profile.chi_v
    h_odd_zero = all(d == 0 for k, d in enumerate(h_dims) if k % 2)
    cluster = {"chi_H_positive": chi_h > 0,
               "H_odd_zero": h_odd_zero,
               "chi_V_zero": chi_v == 0}
    vals = set(cluster.values())
    return {"chi_H": chi_h, "chi_V": chi_v, "chi_pi": chi_v,
            "cluster": cluster, "cluster_consistent": len(vals) == 1}


class EllipticityReport:
    def __init__(self, verdict, *, bound=None, formal_dimension=None,
                 h_dims=None, numerology=None, profile=None, euler=None,
                 consequences=None, h0_dims=None, v_dims=None,
                 gap_report=None):
        self.verdict = verdict  # "Elliptic" | "HyperbolicEvidence" | "Inconclusive"
        self.bound = bound
        self.formal_dimension = formal_dimension
        self.h_dims = h_dims
        self.numerology = numerology
        self.profile = profile
        self.euler = euler
        self.consequences = consequences
        self.h0_dims = h0_dims
        self.v_dims = v_dims
        self.gap_report = gap_report

    @property
    def chi_v(self):
        return self.euler["chi_V"] if self.euler else None

    def __repr__(self):
        return f"EllipticityReport({self.verdict})"


def _v_histogram(c):
    hist = {}
    for g in c.algebra.generators:
        hist[g.degree] = hist.get(g.degree, 0) + 1
    return hist


def classify_ellipticity(c, bound):
    """Classify a minimal Sullivan algebra with finitely many generators.

    Elliptic verdicts carry the formal dimension (pinned by exponent
    identity (1) and confirmed by an explicit zero window of cohomology
    of length >= the maximal generator degree); a scan that runs out of
    its bound yields hyperbolic evidence or an inconclusive report.
    """
    if not check_minimal_sullivan(c):
        raise InvariantsError(f"{c.name} is not a minimal Sullivan algebra")
    profile = ExponentProfile.of(c)
    ft = finiteness_test(c, bound)
    if isinstance(ft, ExceededBound):
        verdict = "Inconclusive" if ft.trailing_zeros else "HyperbolicEvidence"
        return EllipticityReport(verdict, bound=bound, profile=profile,
                                 h0_dims=ft.h0_dims, v_dims=_v_histogram(c))
    n = profile.formal_dimension_candidate
    window = c.max_generator_degree()
    h_dims = [c.h_dim(k) for k in range(n + window + 1)]
    fdim = max((k for k, d in enumerate(h_dims) if d), default=0)
    window_clear = all(d == 0 for d in h_dims[fdim + 1:])
    if not window_clear or fdim != n:
        return EllipticityReport("Inconclusive", bound=bound, profile=profile,
                                 formal_dimension=fdim, h_dims=h_dims,
                                 h0_dims=ft.h0_dims, v_dims=_v_histogram(c))
    numerology = exponent_numerology(profile, n)
    euler = euler_characteristics(c, n, h_dims=h_dims[:n + 1])
    consequences = {
        "V_below_2n": all(g.degree <= 2 * n - 1
                          for g in c.algebra.generators),
        "V_above_n_at_most_one": sum(1 for g in c.algebra.generators
                                     if g.degree > n) <= 1,
        "dim_V_at_most_n": len(c.algebra.generators) <= n,
    }
    return EllipticityReport("Elliptic", bound=bound, formal_dimension=n,
                             h_dims=h_dims, numerology=numerology,
                             profile=profile, euler=euler,
                             consequences=consequences, h0_dims=ft.h0_dims,
                             v_dims=_v_histogram(c))


def gap_probe(v_dims, n, computed_to):
    """Check that every open window (k, k+n) in the computed range meets a
    nonzero homotopy rank; windows reaching past the range are
    inconclusive."""
    out = []
    for k in range(1, computed_to + 1):
        if k + n > computed_to + 1:
            out.append((k, "inconclusive"))
            continue
        hit = any(v_dims.get(i, 0) for i in range(k + 1, k + n))
        out.append((k, "ok" if hit else "fail"))
    return out


def classify_space(target, bound):
    """Dichotomy test for a space presented by a degreewise-finite CDGA:
    find the formal dimension n, synthesize the minimal model through
    3n - 2, and decide by the vanishing of homotopy ranks in [2n, 3n-2].
    Elliptic candidates are handed to classify_ellipticity; otherwise the
    report carries the generator growth table and the gap probe."""
    window = target.max_generator_degree()
    dims = []
    zeros = 0
    fdim = None
    for m in range(bound + 1):
        d = target.h_dim(m)
        dims.append(d)
        if m > 0:
            zeros = zeros + 1 if d == 0 else 0
            if zeros >= window:
                fdim = max(i for i, v in enumerate(dims) if v)
                break
    if fdim is None:
        return EllipticityReport("Inconclusive", bound=bound, h_dims=dims)
    if fdim == 0:
        return EllipticityReport("Elliptic", bound=bound, formal_dimension=0,
                                 h_dims=[1],
                                 profile=ExponentProfile([], []),
                                 numerology=(True, True, True, True),
                                 euler={"chi_H": 1, "chi_V": 0, "chi_pi": 0,
                                        "cluster_consistent": True,
                                        "cluster": {}},
                                 consequences={}, v_dims={})
    depth = 3 * fdim - 2
    res = minimal_model(target, depth)
    v_hist = _v_histogram(res.model)
    in_window = [j for j in range(2 * fdim, 3 * fdim - 1)
                 if v_hist.get(j, 0)]
    if not in_window:
        report = classify_ellipticity(res.model, bound)
        report.v_dims = v_hist
        return report
    return EllipticityReport(
        "HyperbolicEvidence", bound=bound, formal_dimension=fdim,
        h_dims=dims, v_dims=v_hist,
        gap_report=gap_probe(v_hist, fdim, depth))


def torus_rank_bound(report):
    """Upper bound -chi_pi for the rank of a free torus action; only
    meaningful on an elliptic certificate."""
    if report.verdict != "Elliptic":
        raise InvariantsError("torus rank bound needs an elliptic verdict")
    return -report.euler["chi_V"]


def cuplength(c, max_degree):
    """Longest nonzero product of positive-degree cohomology classes,
    within degrees <= max_degree."""
    ones = []
    for k in range(1, max_degree + 1):
        for r in c.h_representatives(k):
            ones.append((k, r))
    if not ones:
        return 0
    current = ones
    length = 1
    while True:
        nxt = []
        spans = {}
        for dk, e in current:
            for dj, r in ones:
                deg = dk + dj
                if deg > max_degree:
                    continue
                prod = c.mult(e, r)
                if prod.is_zero():
                    continue
                vec = c.class_coords(prod, deg)
                if not any(vec):
                    continue
                known = spans.setdefault(deg, [])
                before = span_basis(known, len(vec)).dim
                after = span_basis(known + [vec], len(vec)).dim
                if after > before:
                    known.append(vec)
                    nxt.append((deg, prod))
        if not nxt:
            return length
        current = nxt
        length += 1


def cat_bounds(c, max_degree):
    """(cuplength lower bound, dimension/connectivity upper bound).

    The upper bound floor(fdim / r) needs a finite cohomology certificate
    within range: the table must end in a zero window of length >= the
    maximal generator degree; otherwise it is None.
    """
    low = cuplength(c, max_degree)
    h_dims = [c.h_dim(k) for k in range(max_degree + 1)]
    nonzero = [k for k, d in enumerate(h_dims) if d and k > 0]
    if not nonzero:
        return low, 0
    fdim = nonzero[-1]
    window = c.max_generator_degree()
    if max_degree - fdim < window or any(h_dims[fdim + 1:]):
        return low, None
    r = nonzero[0]
    return low, fdim // r


def toomer_rank(c, cap, max_degree):
    """Least word-length cap n <= cap whose quotient map is injective on
    cohomology through max_degree, with the per-degree rank tables."""
    if not check_minimal_sullivan(c):
        raise InvariantsError("word-length quotients need a minimal model")
    details = []
    first = None
    for n in range(1, cap + 1):
        q, proj = word_length_quotient(c, n)
        ranks = []
        injective = True
        for k in range(max_degree + 1):
            m = proj.h_matrix(k)
            rank = rref(m)[2]
            ranks.append({"degree": k, "source_dim": m.cols, "rank": rank})
            if rank != m.cols:
                injective = False
        details.append({"n": n, "injective": injective, "ranks": ranks})
        if injective:
            first = n
            break
    return first, details


class PoincareSeries:
    """prod (1+z^m) / prod (1-z^m), expanded exactly to a given order."""

    def __init__(self, numerator_exponents, denominator_exponents, order):
        self.numerator_exponents = sorted(numerator_exponents)
        self.denominator_exponents = sorted(denominator_exponents)
        self.order = order
        coeffs = [0] * (order + 1)
        coeffs[0] = 1
        for m in self.numerator_exponents:
            if m <= 0:
                raise InvariantsError("numerator factor exponent must be >= 1")
            nxt = list(coeffs)
            for i in range(m, order + 1):
                nxt[i] += coeffs[i - m]
            coeffs = nxt
        for m in self.denominator_exponents:
            if m <= 0:
                raise InvariantsError("denominator factor exponent must be >= 1")
            nxt = [0] * (order + 1)
            for i in range(order + 1):
                nxt[i] = coeffs[i] + (nxt[i - m] if i >= m else 0)
            coeffs = nxt
        self.coefficients = coeffs

    def __repr__(self):
        num = "".join(f"(1+z^{m})" for m in self.numerator_exponents) or "1"
        den = "".join(f"(1-z^{m})" for m in self.denominator_exponents)
        return f"PoincareSeries({num}{'/' + den if den else ''})"


def loop_poincare_series(model, order):
    """Loop-space Poincare series of a minimal model: a factor (1+z^(2a-1))
    per even generator of degree 2a and 1/(1-z^(2b-2)) per odd generator
    of degree 2b-1."""
    if not check_minimal_sullivan(model):
        raise InvariantsError("loop series needs a minimal Sullivan algebra")
    num = []
    den = []
    for g in model.algebra.generators:
        if g.degree % 2 == 0:
            num.append(g.degree - 1)
        else:
            den.append(g.degree - 1)
    return PoincareSeries(num, den, order)


class GrowthVerdict:
    def __init__(self, kind, estimate=None):
        self.kind = kind  # "Exponential" | "Polynomial" | "Constant"
        self.estimate = estimate

    def __repr__(self):
        if self.estimate is None:
            return f"GrowthVerdict({self.kind})"
        return f"GrowthVerdict({self.kind}, {self.estimate:.3f})"


def growth_classify(coeffs, eps=Fraction(1, 20)):
    """Heuristic growth class of a nonnegative coefficient table, judged
    on partial sums over the trailing half: geometric mean ratio above
    1 + eps is exponential, a flat tail is constant, anything else is
    polynomial (with a log-log slope estimate)."""
    sums = []
    acc = 0
    for v in coeffs:
        acc += v
        sums.append(acc)
    n = len(sums) - 1
    if n < 1 or sums[n] == 0:
        return GrowthVerdict("Constant")
    half = n // 2
    if sums[half] == sums[n] and half < n:
        return GrowthVerdict("Constant")
    steps = n - half
    if sums[half] > 0 and Fraction(sums[n], sums[half]) > (1 + eps) ** steps:
        est = float(Fraction(sums[n], sums[half])) ** (1.0 / steps)
        return GrowthVerdict("Exponential", est)
    slope = None
    if half >= 1 and sums[half] > 0:
        slope = (math.log(sums[n]) - math.log(sums[half])) \
            / (math.log(n) - math.log(half))
    return GrowthVerdict("Polynomial", slope)


def full_invariants(model, max_degree, bound, report=None):
    """The whole battery on a minimal model, as one report dict
    (mirrors the documented JSON schema).  A classification report for
    the original presentation may be passed in; otherwise the model is
    classified directly."""
    if report is None:
        report = classify_ellipticity(model, bound)
    low, upper = cat_bounds(model, max_degree)
    cap = report.formal_dimension or max_degree
    toomer_n, _ = toomer_rank(model, max(cap, 1), max_degree)
    series = loop_poincare_series(model, max_degree)
    profile = report.profile or ExponentProfile.of(model)
    return {
        "verdict": report.verdict,
        "formalDimension": report.formal_dimension,
        "exponents": {"even": profile.even_exponents,
                      "odd": profile.odd_exponents},
        "numerology": list(report.numerology) if report.numerology else None,
        "chi": ({"H": report.euler["chi_H"], "V": report.euler["chi_V"],
                 "pi": report.euler["chi_pi"]} if report.euler else None),
        "cuplength": low,
        "catUpper": upper,
        "toomerN": toomer_n,
        "poincare": {
            "factors": {"numerator": series.numerator_exponents,
                        "denominator": series.denominator_exponents},
            "coeffs": series.coefficients,
        },
    }
