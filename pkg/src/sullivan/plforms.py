"""Polynomial differential forms on simplices and the integration map.

A form on the n-simplex lives in the coordinate algebra on t_1..t_n
(degree 0) and y_1..y_n (degree 1) with dt_i = y_i; the index-0
coordinates are always eliminated through t_0 = 1 - sum t_i and
y_0 = -sum y_i, and reintroduced transiently inside the face
substitutions.  Finite simplicial sets are given by nondegenerate
simplices with face data carrying degeneracy words; integration sends a
compatible family of k-forms to a normalized rational k-cochain, exactly,
via the Dirichlet simplex integral
prod(a_i!) / (k + sum a_i)! for the monomial t^a dt_1...dt_k.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations, product
from math import factorial

from .graded import AlgElement, Derivation, FreeAlgebra
from .linalg import RatMatrix, kernel_basis, rref, span_basis

__all__ = [
    "FormError",
    "PolyForm",
    "form_basis",
    "SimplicialComplexFin",
    "GlobalForm",
    "Cochain",
    "normalize_word",
    "delta_complex",
    "boundary_delta",
    "builtin_complex",
    "BUILTIN_COMPLEXES",
    "sample_global_form",
    "sample_closed_global_form",
    "integrate",
    "cochain_differential",
    "cochain_cohomology",
    "cochain_cup",
    "verify_stokes",
    "parse_scomplex_file",
    "load_scomplex",
]


class FormError(ValueError):
    pass


_ALGEBRAS = {}


def form_algebra(n):
    """Coordinate algebra of the n-simplex in reduced coordinates."""
    if n not in _ALGEBRAS:
        specs = [(f"t{i}", 0) for i in range(1, n + 1)] \
            + [(f"y{i}", 1) for i in range(1, n + 1)]
        _ALGEBRAS[n] = FreeAlgebra.build(specs, allow_degree0=True)
    return _ALGEBRAS[n]


def _t(alg, n, i):
    """t_i in reduced coordinates (t_0 expands)."""
    if i == 0:
        out = alg.one()
        for j in range(1, n + 1):
            out = out - alg.gen_elem(f"t{j}")
        return out
    return alg.gen_elem(f"t{i}")


def _y(alg, n, i):
    if i == 0:
        out = alg.zero()
        for j in range(1, n + 1):
            out = out - alg.gen_elem(f"y{j}")
        return out
    return alg.gen_elem(f"y{i}")


_DIFFS = {}


def _form_diff(n):
    if n not in _DIFFS:
        alg = form_algebra(n)
        _DIFFS[n] = Derivation(alg, +1, {
            f"t{i}": alg.gen_elem(f"y{i}") for i in range(1, n + 1)})
    return _DIFFS[n]


class PolyForm:
    """A polynomial differential form on the n-simplex."""

    __slots__ = ("dim", "element")

    def __init__(self, dim, element):
        self.dim = dim
        self.element = element

    @classmethod
    def zero(cls, dim):
        return cls(dim, form_algebra(dim).zero())

    @classmethod
    def parse(cls, dim, text):
        return cls(dim, form_algebra(dim).parse(text))

    def is_zero(self):
        return self.element.is_zero()

    def form_degree(self):
        """Exterior degree (number of y factors); None for the zero form."""
        return self.element.degree()

    def poly_degree(self):
        alg = self.element.algebra
        best = 0
        for mono in self.element.terms:
            best = max(best, sum(p for o, p in mono
                                 if alg.degree_of(o) == 0))
        return best

    def d(self):
        return PolyForm(self.dim, _form_diff(self.dim).apply(self.element))

    def face(self, i):
        """Restriction along the i-th coface, landing on dimension n-1."""
        n = self.dim
        if n < 1:
            raise FormError("no faces on the 0-simplex")
        if not 0 <= i <= n:
            raise FormError(f"face index {i} out of range for dimension {n}")
        tgt = form_algebra(n - 1)
        images = {}
        src = form_algebra(n)
        for k in range(1, n + 1):
            if k < i:
                tk, yk = _t(tgt, n - 1, k), _y(tgt, n - 1, k)
            elif k == i:
                tk, yk = tgt.zero(), tgt.zero()
            else:
                tk, yk = _t(tgt, n - 1, k - 1), _y(tgt, n - 1, k - 1)
            images[src.generator(f"t{k}").ordinal] = tk
            images[src.generator(f"y{k}").ordinal] = yk
        from .graded import substitute
        return PolyForm(n - 1, substitute(self.element, images, tgt))

    def degen(self, i):
        """Pullback along the i-th codegeneracy, landing on dimension n+1."""
        n = self.dim
        if not 0 <= i <= n:
            raise FormError(f"degeneracy index {i} out of range for "
                            f"dimension {n}")
        tgt = form_algebra(n + 1)
        images = {}
        src = form_algebra(n)
        for k in range(1, n + 1):
            if k < i:
                tk, yk = tgt.gen_elem(f"t{k}"), tgt.gen_elem(f"y{k}")
            elif k == i:
                tk = tgt.gen_elem(f"t{k}") + tgt.gen_elem(f"t{k + 1}")
                yk = tgt.gen_elem(f"y{k}") + tgt.gen_elem(f"y{k + 1}")
            else:
                tk, yk = tgt.gen_elem(f"t{k + 1}"), tgt.gen_elem(f"y{k + 1}")
            images[src.generator(f"t{k}").ordinal] = tk
            images[src.generator(f"y{k}").ordinal] = yk
        from .graded import substitute
        return PolyForm(n + 1, substitute(self.element, images, tgt))

    def __add__(self, other):
        self._same(other)
        return PolyForm(self.dim, self.element + other.element)

    def __sub__(self, other):
        self._same(other)
        return PolyForm(self.dim, self.element - other.element)

    def __mul__(self, other):
        if isinstance(other, PolyForm):
            self._same(other)
            return PolyForm(self.dim, self.element * other.element)
        return PolyForm(self.dim, self.element.scale(other))

    def scale(self, c):
        return PolyForm(self.dim, self.element.scale(c))

    def _same(self, other):
        if self.dim != other.dim:
            raise FormError("forms live on different simplex dimensions")

    def __eq__(self, other):
        return (isinstance(other, PolyForm) and self.dim == other.dim
                and self.element == other.element)

    def __repr__(self):
        return f"PolyForm(dim {self.dim}: {self.element})"


def form_basis(n, k, poly_cap):
    """Monomial basis of k-forms on the n-simplex with polynomial degree
    <= poly_cap, in a fixed deterministic order."""
    if k < 0 or k > n:
        return []
    alg = form_algebra(n)
    out = []
    for exps in product(range(poly_cap + 1), repeat=n):
        if sum(exps) > poly_cap:
            continue
        tpart = tuple((i, e) for i, e in enumerate(exps) if e)
        for subset in combinations(range(1, n + 1), k):
            mono = tpart + tuple((n + i - 1, 1) for i in subset)
            out.append(mono)
    return out


# ----- finite simplicial sets -----

def normalize_word(word):
    """Rewrite a degeneracy word (outermost first) into the canonical
    strictly decreasing form using s_i s_j = s_(j+1) s_i for i <= j."""
    def insert(a, dec):
        if not dec or a > dec[0]:
            return (a,) + dec
        return (dec[0] + 1,) + insert(a, dec[1:])

    out = ()
    for a in reversed(word):
        out = insert(a, out)
    return out


class SimplicialComplexFin:
    """Finite simplicial set: nondegenerate simplices with face data
    (target nondegenerate simplex plus a degeneracy word)."""

    def __init__(self, name, dims, faces, check=True):
        self.name = name
        self.dims = dict(dims)
        self.faces = {key: (tgt, normalize_word(tuple(word)))
                      for key, (tgt, word) in faces.items()}
        self.by_dim = {}
        for sid in sorted(self.dims):
            self.by_dim.setdefault(self.dims[sid], []).append(sid)
        self.top_dim = max(self.dims.values(), default=0)
        self._sample_cache = {}
        if check:
            defects = self.validate()
            if defects:
                raise FormError(f"{name}: " + "; ".join(defects))

    def simplices(self, k):
        return self.by_dim.get(k, [])

    def face_expr(self, expr, i):
        """Apply the i-th face to (simplex, degeneracy word)."""
        sid, word = expr
        if not word:
            try:
                return self.faces[(sid, i)]
            except KeyError:
                raise FormError(f"missing face ({sid}, {i})") from None
        j, rest = word[0], word[1:]
        if i < j:
            tgt, w = self.face_expr((sid, rest), i)
            return tgt, normalize_word((j - 1,) + w)
        if i in (j, j + 1):
            return sid, rest
        tgt, w = self.face_expr((sid, rest), i - 1)
        return tgt, normalize_word((j,) + w)

    def validate(self):
        defects = []
        for sid, dim in self.dims.items():
            for i in range(dim + 1):
                if dim > 0 and (sid, i) not in self.faces:
                    defects.append(f"simplex {sid} missing face {i}")
        if defects:
            return defects
        for (sid, i), (tgt, word) in self.faces.items():
            if tgt not in self.dims:
                defects.append(f"face ({sid},{i}) hits unknown simplex {tgt}")
                continue
            if self.dims[tgt] + len(word) != self.dims[sid] - 1:
                defects.append(
                    f"face ({sid},{i}) dimension mismatch: "
                    f"{self.dims[tgt]} + {len(word)} != {self.dims[sid]} - 1")
        if defects:
            return defects
        for sid, dim in self.dims.items():
            if dim < 2:
                continue
            for j in range(dim + 1):
                for i in range(j):
                    a = self.face_expr(self.face_expr((sid, ()), j), i)
                    b = self.face_expr(self.face_expr((sid, ()), i), j - 1)
                    if a != b:
                        defects.append(
                            f"simplicial identity d_{i} d_{j} = "
                            f"d_{j - 1} d_{i} fails on {sid}: {a} != {b}")
        return defects

    def __repr__(self):
        counts = ", ".join(f"{k}:{len(v)}" for k, v in sorted(self.by_dim.items()))
        return f"SimplicialComplexFin({self.name}; dims {counts})"


class GlobalForm:
    """A compatible family of degree-k polynomial forms, one per
    nondegenerate simplex."""

    def __init__(self, complex_, degree, assignment, check=True):
        self.complex = complex_
        self.degree = degree
        self.assignment = dict(assignment)
        if check:
            defects = self.validate()
            if defects:
                raise FormError("incompatible global form: "
                                + "; ".join(defects))

    def form(self, sid):
        return self.assignment.get(sid) or PolyForm.zero(self.complex.dims[sid])

    def validate(self):
        defects = []
        for sid in sorted(self.complex.dims):
            dim = self.complex.dims[sid]
            own = self.form(sid)
            if not own.is_zero() and own.form_degree() != self.degree:
                defects.append(f"form on {sid} has degree "
                               f"{own.form_degree()}, expected {self.degree}")
                continue
            for i in range(dim + 1):
                if dim == 0:
                    break
                tgt, word = self.complex.faces[(sid, i)]
                rhs = self.form(tgt)
                for j in reversed(word):
                    rhs = rhs.degen(j)
                lhs = own.face(i)
                if lhs != rhs:
                    defects.append(f"face {i} of {sid} disagrees with {tgt}")
        return defects

    def d(self):
        return GlobalForm(self.complex, self.degree + 1,
                          {sid: f.d() for sid, f in self.assignment.items()},
                          check=False)

    def is_zero(self):
        return all(f.is_zero() for f in self.assignment.values())


class Cochain:
    """Normalized rational cochain: values on nondegenerate simplices."""

    def __init__(self, complex_, degree, values=None):
        self.complex = complex_
        self.degree = degree
        self.values = {sid: Fraction(v) for sid, v in (values or {}).items()
                       if v}

    def value(self, sid):
        return self.values.get(sid, Fraction(0))

    def __add__(self, other):
        self._same(other)
        out = dict(self.values)
        for sid, v in other.values.items():
            s = out.get(sid, 0) + v
            if s:
                out[sid] = s
            else:
                out.pop(sid, None)
        return Cochain(self.complex, self.degree, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return Cochain(self.complex, self.degree,
                       {sid: c * v for sid, v in self.values.items()})

    def _same(self, other):
        if self.complex is not other.complex or self.degree != other.degree:
            raise FormError("cochain mismatch")

    def is_zero(self):
        return not self.values

    def __eq__(self, other):
        return (isinstance(other, Cochain) and self.degree == other.degree
                and self.values == other.values)

    def __repr__(self):
        vals = ", ".join(f"{sid}: {v}" for sid, v in sorted(self.values.items()))
        return f"Cochain(deg {self.degree}; {vals})"


def _simplex_integral(n, exps):
    """Exact integral of t_1^a1 ... t_n^an dt_1...dt_n over the n-simplex."""
    num = 1
    for a in exps:
        num *= factorial(a)
    return Fraction(num, factorial(n + sum(exps)))


def integrate(gf):
    """The integration cochain map: integrate the top coefficient of each
    degree-k form over its k-simplex."""
    K = gf.complex
    k = gf.degree
    values = {}
    for sid in K.simplices(k):
        form = gf.form(sid)
        alg = form.element.algebra
        total = Fraction(0)
        for mono, coeff in form.element.terms.items():
            exps = [0] * k
            for o, p in mono:
                g = alg.by_ordinal(o)
                if g.degree == 0:
                    exps[int(g.name[1:]) - 1] = p
            # the exterior part of a k-form on the k-simplex is
            # y_1 ^ ... ^ y_k, already in ascending storage order
            total += coeff * _simplex_integral(k, exps)
        if total:
            values[sid] = total
    return Cochain(K, k, values)


def cochain_differential(c):
    """(delta c)(x) = sum_i (-1)^i c(d_i x); degenerate faces contribute 0."""
    K = c.complex
    values = {}
    for sid in K.simplices(c.degree + 1):
        total = Fraction(0)
        for i in range(c.degree + 2):
            tgt, word = K.faces[(sid, i)]
            if word:
                continue
            total += (-1 if i % 2 else 1) * c.value(tgt)
        if total:
            values[sid] = total
    return Cochain(K, c.degree + 1, values)


def _delta_matrix(K, k):
    src = K.simplices(k)
    tgt = K.simplices(k + 1)
    index = {sid: i for i, sid in enumerate(src)}
    data = [[Fraction(0)] * len(src) for _ in tgt]
    for r, sid in enumerate(tgt):
        for i in range(k + 2):
            face, word = K.faces[(sid, i)]
            if word:
                continue
            data[r][index[face]] += -1 if i % 2 else 1
    return RatMatrix(data, cols=len(src))


def cochain_cohomology(K, max_degree):
    """Dimension table of the normalized cochain cohomology."""
    dims = []
    for k in range(max_degree + 1):
        n = len(K.simplices(k))
        rank_out = rref(_delta_matrix(K, k))[2]
        rank_in = rref(_delta_matrix(K, k - 1))[2] if k else 0
        dims.append(n - rank_out - rank_in)
    return dims


def _front_face(K, sid, p):
    """Front p-face: drop the trailing vertices one at a time."""
    expr = (sid, ())
    dim = K.dims[sid]
    while dim > p:
        expr = K.face_expr(expr, dim)
        dim -= 1
    return expr


def _back_face(K, sid, q):
    expr = (sid, ())
    dim = K.dims[sid]
    while dim > q:
        expr = K.face_expr(expr, 0)
        dim -= 1
    return expr


def cochain_cup(a, b):
    """Simplicial cup product (front face / back face); used to record
    that integration is not multiplicative."""
    K = a.complex
    p, q = a.degree, b.degree
    values = {}
    for sid in K.simplices(p + q):
        fa, wa = _front_face(K, sid, p)
        fb, wb = _back_face(K, sid, q)
        va = a.value(fa) if not wa else Fraction(0)
        vb = b.value(fb) if not wb else Fraction(0)
        if va and vb:
            values[sid] = va * vb
    return Cochain(K, p + q, values)


# ----- built-in complexes -----

def _subset_id(vertices):
    return "".join(str(v) for v in vertices)


def delta_complex(n, name=None):
    """The standard n-simplex with all its faces."""
    dims = {}
    faces = {}
    for k in range(n + 1):
        for vs in combinations(range(n + 1), k + 1):
            sid = _subset_id(vs)
            dims[sid] = k
            for i in range(k + 1):
                if k > 0:
                    rest = vs[:i] + vs[i + 1:]
                    faces[(sid, i)] = (_subset_id(rest), ())
    return SimplicialComplexFin(name or f"delta{n}", dims, faces)


def boundary_delta(n, name=None):
    """The boundary of the standard n-simplex."""
    full = delta_complex(n)
    dims = {sid: d for sid, d in full.dims.items() if d < n}
    faces = {key: val for key, val in full.faces.items()
             if full.dims[key[0]] < n}
    return SimplicialComplexFin(name or f"bddelta{n}", dims, faces)


BUILTIN_COMPLEXES = ("delta2", "delta3", "bddelta3")


def builtin_complex(name):
    if name == "delta2":
        return delta_complex(2)
    if name == "delta3":
        return delta_complex(3)
    if name == "bddelta3":
        return boundary_delta(3)
    raise FormError(f"unknown builtin complex {name!r} "
                    f"(have {', '.join(BUILTIN_COMPLEXES)})")


# ----- sampling and Stokes verification -----

def _compatibility_kernel(K, degree, poly_cap, closed=False):
    """Kernel basis of the face-compatibility system (plus closedness when
    asked) over the per-simplex monomial coefficient spaces."""
    key = (degree, poly_cap, closed)
    if key in K._sample_cache:
        return K._sample_cache[key]
    order = sorted(K.dims, key=lambda sid: (K.dims[sid], sid))
    var_index = {}
    bases = {}
    for sid in order:
        bases[sid] = form_basis(K.dims[sid], degree, poly_cap)
        for idx in range(len(bases[sid])):
            var_index[(sid, idx)] = len(var_index)
    nvars = len(var_index)
    rows = []

    def coords_of(elem, n, k):
        basis = form_basis(n, k, poly_cap)
        index = {m: i for i, m in enumerate(basis)}
        v = [Fraction(0)] * len(basis)
        for mono, c in elem.terms.items():
            v[index[mono]] = c
        return v

    for sid in order:
        dim = K.dims[sid]
        if dim == 0:
            continue
        for i in range(dim + 1):
            tgt, word = K.faces[(sid, i)]
            tgt_len = len(form_basis(dim - 1, degree, poly_cap))
            if tgt_len == 0:
                continue
            block = [[Fraction(0)] * nvars for _ in range(tgt_len)]
            for idx, mono in enumerate(bases[sid]):
                f = PolyForm(dim, AlgElement(form_algebra(dim),
                                             {mono: Fraction(1)}))
                vec = coords_of(f.face(i).element, dim - 1, degree)
                col = var_index[(sid, idx)]
                for r in range(tgt_len):
                    if vec[r]:
                        block[r][col] += vec[r]
            for idx, mono in enumerate(bases[tgt]):
                f = PolyForm(K.dims[tgt],
                             AlgElement(form_algebra(K.dims[tgt]),
                                        {mono: Fraction(1)}))
                for j in reversed(word):
                    f = f.degen(j)
                vec = coords_of(f.element, dim - 1, degree)
                col = var_index[(tgt, idx)]
                for r in range(tgt_len):
                    if vec[r]:
                        block[r][col] -= vec[r]
            rows.extend(block)
    if closed:
        for sid in order:
            dim = K.dims[sid]
            tgt_len = len(form_basis(dim, degree + 1, poly_cap))
            if tgt_len == 0:
                continue
            block = [[Fraction(0)] * nvars for _ in range(tgt_len)]
            for idx, mono in enumerate(bases[sid]):
                f = PolyForm(dim, AlgElement(form_algebra(dim),
                                             {mono: Fraction(1)}))
                vec = coords_of(f.d().element, dim, degree + 1)
                col = var_index[(sid, idx)]
                for r in range(tgt_len):
                    if vec[r]:
                        block[r][col] += vec[r]
            rows.extend(block)
    rows = [r for r in rows if any(r)]
    kernel = kernel_basis(RatMatrix(rows, cols=nvars)) if rows else \
        span_basis([[Fraction(1 if i == j else 0) for j in range(nvars)]
                    for i in range(nvars)], nvars)
    result = (order, bases, var_index, kernel.vectors)
    K._sample_cache[key] = result
    return result


def _assemble(K, degree, order, bases, var_index, vec):
    assignment = {}
    for sid in order:
        alg = form_algebra(K.dims[sid])
        terms = {}
        for idx, mono in enumerate(bases[sid]):
            c = vec[var_index[(sid, idx)]]
            if c:
                terms[mono] = c
        assignment[sid] = PolyForm(K.dims[sid], AlgElement(alg, terms))
    return GlobalForm(K, degree, assignment)


def _sample(K, degree, poly_cap, seed, closed):
    order, bases, var_index, kernel = _compatibility_kernel(
        K, degree, poly_cap, closed)
    rng = random.Random(seed)
    nvars = len(var_index)
    vec = [Fraction(0)] * nvars
    for kv in kernel:
        c = rng.randint(-3, 3)
        if c:
            for i in range(nvars):
                if kv[i]:
                    vec[i] += c * kv[i]
    return _assemble(K, degree, order, bases, var_index, vec)


def sample_global_form(K, degree, poly_cap, seed):
    """A reproducible pseudorandom compatible family of degree-k forms:
    a random rational point of the compatibility solution space (the zero
    form when that space is trivial)."""
    if degree > K.top_dim:
        return GlobalForm(K, degree, {}, check=False)
    return _sample(K, degree, poly_cap, seed, closed=False)


def sample_closed_global_form(K, degree, poly_cap, seed):
    """Like sample_global_form but restricted to d-closed families."""
    if degree > K.top_dim:
        return GlobalForm(K, degree, {}, check=False)
    return _sample(K, degree, poly_cap, seed, closed=True)


class StokesReport:
    def __init__(self, complex_name, trials, cocycle_ranks, h_dims):
        self.complex_name = complex_name
        self.trials = trials
        self.cocycle_ranks = cocycle_ranks
        self.h_dims = h_dims

    @property
    def ok(self):
        return all(t["passed"] for t in self.trials)

    @property
    def passed(self):
        return sum(1 for t in self.trials if t["passed"])

    def __repr__(self):
        return (f"StokesReport({self.complex_name}: "
                f"{self.passed}/{len(self.trials)})")


def verify_stokes(K, trials, poly_cap, seed):
    """Check integrate(d w) = delta(integrate(w)) exactly on sampled
    global forms, and compare the rank of integration on sampled cocycles
    with the cochain cohomology dimensions."""
    if trials < 1:
        raise FormError("need at least one trial")
    records = []
    for t in range(trials):
        degree = t % (K.top_dim + 1)
        gf = sample_global_form(K, degree, poly_cap, seed + t)
        lhs = integrate(gf.d())
        rhs = cochain_differential(integrate(gf))
        records.append({
            "trial": t,
            "degree": degree,
            "zero_form": gf.is_zero(),
            "passed": lhs == rhs,
        })
    h_dims = cochain_cohomology(K, K.top_dim)
    cocycle_ranks = []
    for k in range(K.top_dim + 1):
        simplices = K.simplices(k)
        index = {sid: i for i, sid in enumerate(simplices)}
        bnd = _delta_matrix(K, k - 1) if k else None
        bvecs = bnd.transpose().data if bnd is not None else []
        base = span_basis(bvecs, len(simplices))
        vectors = list(base.vectors)
        achieved = base.dim
        rank = 0
        for t in range(trials):
            gf = sample_closed_global_form(K, k, poly_cap, seed + 1000 + t)
            ch = integrate(gf)
            v = [Fraction(0)] * len(simplices)
            for sid, val in ch.values.items():
                v[index[sid]] = val
            grown = span_basis(vectors + [v], len(simplices)).dim
            if grown > achieved:
                vectors.append(v)
                achieved = grown
                rank += 1
        cocycle_ranks.append({"degree": k, "sampled_rank": rank,
                              "h_dim": h_dims[k]})
    return StokesReport(K.name, records, cocycle_ranks, h_dims)


# ----- file format -----

def parse_scomplex_file(text, filename="<scomplex>", check=True):
    """Parse the `scomplex/simplex/face` line format."""
    name = None
    dims = {}
    faces = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kw = parts[0]
        if kw == "scomplex":
            if len(parts) != 2:
                raise FormError(f"{filename}:{lineno}: expected: scomplex <name>")
            name = parts[1]
        elif kw == "simplex":
            if len(parts) != 3:
                raise FormError(f"{filename}:{lineno}: expected: "
                                f"simplex <id> <dim>")
            sid = parts[1]
            try:
                dims[sid] = int(parts[2])
            except ValueError:
                raise FormError(f"{filename}:{lineno}: bad dimension") from None
        elif kw == "face":
            if len(parts) < 5 or parts[3] != "=":
                raise FormError(f"{filename}:{lineno}: expected: "
                                f"face <id> <i> = <target> [s<j> ...]")
            sid = parts[1]
            try:
                i = int(parts[2])
            except ValueError:
                raise FormError(f"{filename}:{lineno}: bad face index") from None
            tgt = parts[4]
            word = []
            for tok in parts[5:]:
                if not tok.startswith("s"):
                    raise FormError(f"{filename}:{lineno}: bad degeneracy "
                                    f"token {tok!r}")
                try:
                    word.append(int(tok[1:]))
                except ValueError:
                    raise FormError(f"{filename}:{lineno}: bad degeneracy "
                                    f"token {tok!r}") from None
            if sid not in dims:
                raise FormError(f"{filename}:{lineno}: simplex {sid} not "
                                f"declared before use")
            faces[(sid, i)] = (tgt, tuple(word))
        else:
            raise FormError(f"{filename}:{lineno}: unknown keyword {kw!r}")
    if name is None:
        raise FormError(f"{filename}:1: missing scomplex header line")
    try:
        return SimplicialComplexFin(name, dims, faces, check=check)
    except FormError as exc:
        raise FormError(f"{filename}:1: {exc}") from None


def load_scomplex(path, check=True):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_scomplex_file(fh.read(), filename=str(path), check=check)
