"""CDGA presentations and their degreewise homological machinery.

A Cdga is a free graded-commutative algebra with a degree +1 differential
given on generators, optionally cut down by one of two quotients:

* relation generators (`relations`): the quotient by the ideal they
  generate, handled purely by per-degree linear reduction (the span at
  degree k is generated by monomial multiples of the relation
  generators).  This is how truncated cohomology rings like H*(S^2n) or
  H*(CP^n) are presented as targets.
* a word-length cap (`word_cap`): the quotient by the ideal of words of
  length > n, used by the category machinery.

All per-degree data (bases, relation echelons, differential matrices,
cocycle/boundary/cohomology bases) is computed lazily and cached, with
deterministic echelon representatives throughout.
"""

from __future__ import annotations

from fractions import Fraction

from .graded import (
    AlgebraError,
    AlgElement,
    Derivation,
    FreeAlgebra,
    format_element,
    parse_poly,
)
from .linalg import (
    NoSolution,
    RatMatrix,
    image_basis,
    kernel_basis,
    quotient_basis,
    rref,
    solve,
    span_basis,
)

__all__ = [
    "CdgaError",
    "CdgaFileError",
    "Cdga",
    "CdgaMorphism",
    "CohomologyReport",
    "QuasiIsoReport",
    "identity_morphism",
    "check_quasi_iso",
    "tensor_product",
    "fibered_product_augmented",
    "word_length_quotient",
    "parse_cdga_file",
    "load_cdga",
    "format_cdga",
]


class CdgaError(ValueError):
    pass


class CdgaFileError(CdgaError):
    def __init__(self, filename, line, msg):
        super().__init__(f"{filename}:{line}: {msg}")
        self.filename = filename
        self.line = line


class CohomologyReport:
    """Per-degree dimensions and deterministic cocycle representatives."""

    def __init__(self, max_degree, dims, representatives, boundary_dims):
        self.max_degree = max_degree
        self.dims = dims
        self.representatives = representatives
        self.boundary_dims = boundary_dims

    def dim(self, k):
        return self.dims[k] if 0 <= k <= self.max_degree else 0

    def __repr__(self):
        return f"CohomologyReport(dims={self.dims})"


class Cdga:
    def __init__(self, name, algebra, differential, relations=None,
                 word_cap=None, check=True):
        self.name = name
        self.algebra = algebra
        if differential.shift != 1:
            raise CdgaError("differential must have shift +1")
        self.differential = differential
        self.relations = list(relations) if relations else []
        if self.relations and word_cap is not None:
            raise CdgaError("relations and a word cap cannot be combined")
        self.word_cap = word_cap
        for g in algebra.generators:
            if g.degree < 1:
                raise CdgaError(f"generator {g.name} has degree {g.degree}")
        for r in self.relations:
            if r.is_zero() or not r.is_homogeneous():
                raise CdgaError("relations must be nonzero homogeneous")
        self._basis_cache = {}
        self._rel_cache = {}
        self._diff_cache = {}
        self._h_cache = {}
        if check:
            defects = self.validate()
            if defects:
                raise CdgaError(f"{name}: " + "; ".join(defects))

    # ----- constructors -----

    @classmethod
    def build(cls, name, gen_specs, diff_strings=None, relation_strings=None,
              check=True):
        """From (name, degree) generator pairs and polynomial strings."""
        alg = FreeAlgebra.build(gen_specs)
        diff_strings = diff_strings or {}
        images = {g: parse_poly(s, alg) for g, s in diff_strings.items()}
        d = Derivation(alg, +1, images)
        rels = [parse_poly(s, alg) for s in (relation_strings or [])]
        return cls(name, alg, d, relations=rels, check=check)

    @property
    def is_free(self):
        return not self.relations and self.word_cap is None

    def max_generator_degree(self):
        return max((g.degree for g in self.algebra.generators), default=1)

    # ----- quotient machinery -----

    def free_basis(self, k):
        if k not in self._basis_cache:
            monos = self.algebra.basis_of_degree(k, word_max=self.word_cap)
            self._basis_cache[k] = (monos, {m: i for i, m in enumerate(monos)})
        return self._basis_cache[k]

    def _rel_echelon(self, k):
        """Echelon basis of the relation ideal's degree-k component."""
        if k not in self._rel_cache:
            monos, index = self.free_basis(k)
            vectors = []
            for r in self.relations:
                dr = r.degree()
                if dr > k:
                    continue
                for m in self.algebra.basis_of_degree(k - dr):
                    prod = AlgElement(self.algebra, {m: Fraction(1)}) * r
                    if prod.is_zero():
                        continue
                    v = [Fraction(0)] * len(monos)
                    for mono, c in prod.terms.items():
                        v[index[mono]] = c
                    vectors.append(v)
            self._rel_cache[k] = span_basis(vectors, len(monos))
        return self._rel_cache[k]

    def basis(self, k):
        """Monomial labels of the degree-k quotient basis."""
        monos, _ = self.free_basis(k)
        if not self.relations:
            return monos
        pivots = set(self._rel_echelon(k).pivots)
        return [m for i, m in enumerate(monos) if i not in pivots]

    def dim(self, k):
        return len(self.basis(k))

    def reduce(self, elem):
        """Canonical quotient representative of an element."""
        if self.word_cap is not None:
            elem = elem.word_truncate(self.word_cap)
        if not self.relations:
            return elem
        out = self.algebra.zero()
        for k, piece in elem.degree_parts().items():
            monos, index = self.free_basis(k)
            v = [Fraction(0)] * len(monos)
            for m, c in piece.terms.items():
                v[index[m]] = c
            v = self._rel_echelon(k).reduce(v)
            out = out + AlgElement(
                self.algebra, {m: c for m, c in zip(monos, v) if c})
        return out

    def coords(self, elem, k):
        basis = self.basis(k)
        index = {m: i for i, m in enumerate(basis)}
        v = [Fraction(0)] * len(basis)
        for m, c in self.reduce(elem).terms.items():
            if self.algebra.mono_degree(m) != k:
                raise CdgaError(f"element not homogeneous of degree {k}")
            v[index[m]] = c
        return v

    def element(self, k, coords):
        basis = self.basis(k)
        return AlgElement(self.algebra,
                          {m: Fraction(c) for m, c in zip(basis, coords) if c})

    def d(self, elem):
        return self.reduce(self.differential.apply(self.reduce(elem)))

    def mult(self, a, b):
        return self.reduce(a * b)

    def diff_matrix(self, k):
        """Matrix of d: degree k -> degree k+1 over the quotient bases."""
        if k not in self._diff_cache:
            src = self.basis(k)
            tgt_len = self.dim(k + 1)
            cols = []
            for m in src:
                dm = self.d(AlgElement(self.algebra, {m: Fraction(1)}))
                cols.append(self.coords(dm, k + 1))
            data = [[cols[j][i] for j in range(len(src))]
                    for i in range(tgt_len)]
            self._diff_cache[k] = RatMatrix(data, cols=len(src))
        return self._diff_cache[k]

    # ----- validation -----

    def validate(self):
        """Defect list: d^2 residues on generators, relation-span escape.
        Empty list means the presentation is a genuine CDGA."""
        defects = []
        for r in self.relations:
            dr = self.reduce(self.differential.apply(r))
            if not dr.is_zero():
                defects.append(
                    f"d does not preserve the relation span: "
                    f"d({format_element(r)}) = {format_element(dr)}")
        for g in self.algebra.generators:
            ge = self.algebra.gen_elem(g.name)
            res = self.d(self.d(ge))
            if not res.is_zero():
                defects.append(
                    f"d^2 {g.name} = {format_element(res)} != 0")
        return defects

    # ----- cohomology -----

    def _h_data(self, k):
        if k not in self._h_cache:
            z = kernel_basis(self.diff_matrix(k))
            if k == 0:
                b = span_basis([], self.dim(0))
            else:
                b = image_basis(self.diff_matrix(k - 1))
            reps = quotient_basis(b, z)
            n = self.dim(k)
            cols = reps + b.vectors
            mat = RatMatrix([[cols[j][i] for j in range(len(cols))]
                             for i in range(n)], cols=len(cols))
            self._h_cache[k] = (z, b, reps, mat)
        return self._h_cache[k]

    def h_dim(self, k):
        return len(self._h_data(k)[2])

    def h_representatives(self, k):
        return [self.element(k, v) for v in self._h_data(k)[2]]

    def class_coords(self, elem, k):
        """Coordinates of a cocycle's class in the chosen H^k basis."""
        _, _, reps, mat = self._h_data(k)
        v = self.coords(elem, k)
        sol = solve(mat, v)
        if isinstance(sol, NoSolution):
            raise CdgaError(f"element of degree {k} is not a cocycle "
                            f"modulo boundaries")
        return sol[:len(reps)]

    def cohomology(self, max_degree):
        dims = []
        reps = {}
        bdims = []
        for k in range(max_degree + 1):
            _, b, r, _ = self._h_data(k)
            dims.append(len(r))
            bdims.append(b.dim)
            reps[k] = [self.element(k, v) for v in r]
        return CohomologyReport(max_degree, dims, reps, bdims)

    def __repr__(self):
        return f"Cdga({self.name})"


class CdgaMorphism:
    """Algebra map determined by generator images; checked to commute
    with the differentials.  Generators without an image map to zero."""

    def __init__(self, source, target, images, check=True):
        self.source = source
        self.target = target
        imgs = {}
        for key, elem in images.items():
            g = (source.algebra.generator(key) if isinstance(key, str)
                 else source.algebra.by_ordinal(key))
            elem = target.reduce(elem)
            if elem.is_zero():
                continue
            if check:
                d = elem.degree()
                if d != g.degree:
                    raise CdgaError(f"image of {g.name} has degree {d}, "
                                    f"expected {g.degree}")
            imgs[g.ordinal] = elem
        self.images = imgs
        if check:
            for g in source.algebra.generators:
                lhs = self.apply(source.d(source.algebra.gen_elem(g.name)))
                rhs = target.d(self.image_of(g.name))
                if lhs != rhs:
                    raise CdgaError(
                        f"not a chain map at {g.name}: phi(d{g.name}) = "
                        f"{format_element(lhs)}, d phi({g.name}) = "
                        f"{format_element(rhs)}")

    def image_of(self, name):
        g = self.source.algebra.generator(name)
        return self.images.get(g.ordinal, self.target.algebra.zero())

    def apply(self, elem):
        tgt = self.target
        out = tgt.algebra.zero()
        for mono, coeff in elem.terms.items():
            acc = tgt.algebra.scalar(coeff)
            for o, p in mono:
                img = self.images.get(o)
                if img is None:
                    acc = tgt.algebra.zero()
                    break
                for _ in range(p):
                    acc = tgt.mult(acc, img)
                    if acc.is_zero():
                        break
                if acc.is_zero():
                    break
            out = out + acc
        return tgt.reduce(out)

    def h_matrix(self, k):
        """Matrix of H^k(phi) from source to target class coordinates."""
        src_reps = self.source.h_representatives(k)
        tgt_dim = self.target.h_dim(k)
        cols = [self.target.class_coords(self.apply(r), k) for r in src_reps]
        return RatMatrix([[cols[j][i] for j in range(len(cols))]
                          for i in range(tgt_dim)], cols=len(cols))


def identity_morphism(c):
    return CdgaMorphism(c, c, {g.name: c.algebra.gen_elem(g.name)
                               for g in c.algebra.generators})


class QuasiIsoReport:
    def __init__(self, max_degree, table):
        self.max_degree = max_degree
        self.table = table  # per degree: dict with dims, rank, injective, surjective

    @property
    def ok(self):
        return all(row["injective"] and row["surjective"] for row in self.table)

    def __repr__(self):
        return f"QuasiIsoReport(ok={self.ok})"


def check_quasi_iso(phi, max_degree):
    table = []
    for k in range(max_degree + 1):
        m = phi.h_matrix(k)
        _, _, rank = rref(m)
        table.append({
            "degree": k,
            "source_dim": m.cols,
            "target_dim": m.rows,
            "rank": rank,
            "injective": rank == m.cols,
            "surjective": rank == m.rows,
        })
    return QuasiIsoReport(max_degree, table)


# ----- constructions -----

def _disjoint_specs(factors):
    """Generator specs for a disjoint union, renaming clashes with _2, _3..."""
    used = set()
    per_factor = []
    for c in factors:
        renames = {}
        specs = []
        for g in c.algebra.generators:
            name = g.name
            n = 1
            while name in used:
                n += 1
                name = f"{g.name}_{n}"
            used.add(name)
            renames[g.ordinal] = name
            specs.append((name, g.degree))
        per_factor.append((specs, renames))
    return per_factor


def _transport(elem, renames, target_alg):
    images = {o: target_alg.gen_elem(name) for o, name in renames.items()}
    from .graded import substitute
    return substitute(elem, images, target_alg)


def tensor_product(a, b, name=None):
    """Tensor CDGA with the two inclusions; Kunneth holds degreewise."""
    for c in (a, b):
        if c.word_cap is not None:
            raise CdgaError("tensor products of word-capped quotients "
                            "are not supported")
    per = _disjoint_specs([a, b])
    specs = per[0][0] + per[1][0]
    alg = FreeAlgebra.build(specs)
    images = {}
    relations = []
    for c, (fspecs, renames) in zip((a, b), per):
        for g in c.algebra.generators:
            dg = c.differential.images.get(g.ordinal)
            if dg is not None:
                images[renames[g.ordinal]] = _transport(dg, renames, alg)
        relations.extend(_transport(r, renames, alg) for r in c.relations)
    d = Derivation(alg, +1, images)
    t = Cdga(name or f"{a.name}(x){b.name}", alg, d, relations=relations)
    incl_a = CdgaMorphism(a, t, {
        g.name: alg.gen_elem(per[0][1][g.ordinal])
        for g in a.algebra.generators})
    incl_b = CdgaMorphism(b, t, {
        g.name: alg.gen_elem(per[1][1][g.ordinal])
        for g in b.algebra.generators})
    return t, incl_a, incl_b


def fibered_product_augmented(factors, name=None):
    """Augmented fiber product: one degree-0 line, direct sum in positive
    degrees, cross products zero.  Presented as the quotient of the tensor
    by all cross products of generators from different factors; models the
    wedge of the factors' spaces."""
    if not factors:
        raise CdgaError("need at least one factor")
    if len(factors) == 1:
        return factors[0]
    for c in factors:
        if c.word_cap is not None:
            raise CdgaError("word-capped factors are not supported")
    per = _disjoint_specs(factors)
    specs = [s for fspecs, _ in per for s in fspecs]
    alg = FreeAlgebra.build(specs)
    images = {}
    relations = []
    for c, (fspecs, renames) in zip(factors, per):
        for g in c.algebra.generators:
            dg = c.differential.images.get(g.ordinal)
            if dg is not None:
                images[renames[g.ordinal]] = _transport(dg, renames, alg)
        relations.extend(_transport(r, renames, alg) for r in c.relations)
    for i in range(len(factors)):
        for j in range(i + 1, len(factors)):
            for gi in factors[i].algebra.generators:
                for gj in factors[j].algebra.generators:
                    cross = (alg.gen_elem(per[i][1][gi.ordinal])
                             * alg.gen_elem(per[j][1][gj.ordinal]))
                    if not cross.is_zero():
                        relations.append(cross)
    d = Derivation(alg, +1, images)
    label = name or "(" + " v ".join(c.name for c in factors) + ")"
    return Cdga(label, alg, d, relations=relations)


def word_length_quotient(c, n):
    """Quotient by the ideal of words of length > n, with the projection."""
    if not c.is_free:
        raise CdgaError("word-length quotient needs a free CDGA")
    if n < 1:
        raise CdgaError("word cap must be >= 1")
    q = Cdga(f"{c.name}/words>{n}", c.algebra, c.differential, word_cap=n)
    proj = CdgaMorphism(c, q, {g.name: c.algebra.gen_elem(g.name)
                               for g in c.algebra.generators})
    return q, proj


# ----- file format -----

def parse_cdga_file(text, filename="<cdga>", check=True):
    """Parse the `cdga/gen/diff/rel` line format."""
    name = None
    specs = []
    diffs = []
    rels = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split(None, 1)
        kw = parts[0]
        rest = parts[1] if len(parts) > 1 else ""
        if kw == "cdga":
            if name is not None:
                raise CdgaFileError(filename, lineno, "repeated cdga line")
            if not rest:
                raise CdgaFileError(filename, lineno, "missing name")
            name = rest.strip()
        elif kw == "gen":
            bits = rest.split()
            if len(bits) != 2:
                raise CdgaFileError(filename, lineno, "expected: gen <ident> <degree>")
            gname, deg = bits
            try:
                deg = int(deg)
            except ValueError:
                raise CdgaFileError(filename, lineno, f"bad degree {deg!r}") from None
            if any(gname == s[0] for s in specs):
                raise CdgaFileError(filename, lineno, f"duplicate generator {gname}")
            specs.append((gname, deg))
        elif kw == "diff":
            if "=" not in rest:
                raise CdgaFileError(filename, lineno, "expected: diff <ident> = <poly>")
            gname, poly = rest.split("=", 1)
            diffs.append((lineno, gname.strip(), poly.strip()))
        elif kw == "rel":
            if ":" not in rest:
                raise CdgaFileError(filename, lineno, "expected: rel <degree> : <poly>")
            deg, poly = rest.split(":", 1)
            rels.append((lineno, deg.strip(), poly.strip()))
        else:
            raise CdgaFileError(filename, lineno, f"unknown keyword {kw!r}")
    if name is None:
        raise CdgaFileError(filename, 1, "missing cdga header line")
    try:
        alg = FreeAlgebra.build(specs)
    except AlgebraError as exc:
        raise CdgaFileError(filename, 1, str(exc)) from None
    images = {}
    for lineno, gname, poly in diffs:
        try:
            alg.generator(gname)
            images[gname] = parse_poly(poly, alg)
        except AlgebraError as exc:
            raise CdgaFileError(filename, lineno, str(exc)) from None
    relations = []
    for lineno, deg, poly in rels:
        try:
            deg = int(deg)
        except ValueError:
            raise CdgaFileError(filename, lineno, f"bad degree {deg!r}") from None
        try:
            r = parse_poly(poly, alg)
            if r.degree() != deg:
                raise AlgebraError(
                    f"relation has degree {r.degree()}, declared {deg}")
        except AlgebraError as exc:
            raise CdgaFileError(filename, lineno, str(exc)) from None
        relations.append(r)
    try:
        d = Derivation(alg, +1, images)
        return Cdga(name, alg, d, relations=relations, check=check)
    except (AlgebraError, CdgaError) as exc:
        raise CdgaFileError(filename, 1, str(exc)) from None


def load_cdga(path, check=True):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_cdga_file(fh.read(), filename=str(path), check=check)


def format_cdga(c, comments=()):
    lines = [f"cdga {c.name}"]
    lines.extend(f"# {text}" for text in comments)
    for g in c.algebra.generators:
        lines.append(f"gen {g.name} {g.degree}")
    for g in c.algebra.generators:
        dg = c.differential.images.get(g.ordinal)
        if dg is not None and not dg.is_zero():
            lines.append(f"diff {g.name} = {format_element(dg)}")
    for r in c.relations:
        lines.append(f"rel {r.degree()} : {format_element(r)}")
    return "\n".join(lines) + "\n"
