"""Sullivan model synthesis and fibration-style constructions.

Minimal models are built degree by degree against any degreewise-finite
target: at stage n we first adjoin closed generators hitting the cokernel
of H^n(phi), then degree-n generators killing the kernel of H^(n+1)(phi),
with all representative choices delegated to the deterministic echelon
conventions of the linear algebra layer.

The based path space is realized as an inductively corrected acyclic
closure (D vbar = v - C with C solved degreewise so that D^2 = 0), the
unbased path space by the divided-power series differential, and the free
loop space by the suspension-derivation formula; the path/free-loop pair
is related by pushout along the multiplication map.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .cdga import Cdga, CdgaError, CdgaMorphism, check_quasi_iso
from .graded import AlgElement, Derivation, FreeAlgebra, format_element, substitute
from .linalg import (
    NoSolution,
    RatMatrix,
    kernel_basis,
    quotient_basis,
    solve,
    span_basis,
)

__all__ = [
    "ModelError",
    "RelativeSullivanAlgebra",
    "MinimalModelResult",
    "check_minimal_sullivan",
    "minimal_model",
    "fiber_model",
    "pushout_model",
    "acyclic_closure",
    "loop_cohomology",
    "LoopCohomology",
    "path_space_model",
    "multiplication_morphism",
    "free_loop_model",
]


class ModelError(CdgaError):
    pass


def _require_free(c, what):
    if not c.is_free:
        raise ModelError(f"{what} needs a free CDGA, got {c.name}")


def _require_simply_connected(c, what):
    for g in c.algebra.generators:
        if g.degree < 2:
            raise ModelError(
                f"{what}: generator {g.name} has degree {g.degree} < 2 "
                f"(not simply connected)")


def check_minimal_sullivan(c):
    """True iff every generator's differential lies in words of length >= 2.
    Raises on non-free input or generators of degree < 2."""
    _require_free(c, "minimality check")
    _require_simply_connected(c, "minimality check")
    for g in c.algebra.generators:
        dg = c.differential.images.get(g.ordinal)
        if dg is None:
            continue
        if any(w < 2 for w in dg.word_length_split()):
            return False
    return True


class RelativeSullivanAlgebra:
    """Base CDGA extended by well-ordered fiber generators with a twisted
    differential: D restricts to the base differential and D(w) only
    involves earlier fiber generators."""

    def __init__(self, base, fiber_names, total, check=True):
        self.base = base
        self.total = total
        self.fiber = tuple(total.algebra.generator(n) for n in fiber_names)
        if check:
            self._validate()

    def _validate(self):
        _require_free(self.total, "relative Sullivan algebra")
        base_ords = {g.ordinal for g in self.base.algebra.generators}
        fiber_ords = [g.ordinal for g in self.fiber]
        if base_ords & set(fiber_ords):
            raise ModelError("fiber generators overlap the base")
        if set(fiber_ords) | base_ords != \
                {g.ordinal for g in self.total.algebra.generators}:
            raise ModelError("total algebra must be base plus fiber")
        zero = self.total.algebra.zero()
        for g in self.base.algebra.generators:
            want = self.base.differential.images.get(g.ordinal)
            want = want.in_algebra(self.total.algebra) if want is not None else zero
            got = self.total.differential.images.get(g.ordinal, zero)
            if want != got:
                raise ModelError(
                    f"D does not restrict to the base differential at {g.name}")
        allowed = set(base_ords)
        for g in self.fiber:
            dg = self.total.differential.images.get(g.ordinal)
            if dg is not None:
                for mono in dg.terms:
                    for o, _ in mono:
                        if o not in allowed:
                            bad = self.total.algebra.by_ordinal(o).name
                            raise ModelError(
                                f"D({g.name}) uses later fiber generator {bad}")
            allowed.add(g.ordinal)

    def fiber_degrees(self):
        return [g.degree for g in self.fiber]

    def __repr__(self):
        fib = ", ".join(f"{g.name}:{g.degree}" for g in self.fiber)
        return f"RelativeSullivanAlgebra({self.base.name}; {fib})"


def fiber_model(rel):
    """Quotient by the base: set base generators to zero."""
    specs = [(g.name, g.degree) for g in rel.fiber]
    alg = FreeAlgebra.build(specs)
    images = {g.ordinal: alg.gen_elem(g.name) for g in rel.fiber}
    d_images = {}
    for g in rel.fiber:
        dg = rel.total.differential.images.get(g.ordinal)
        if dg is None:
            continue
        img = substitute(dg, images, alg, missing_zero=True)
        if not img.is_zero():
            d_images[g.name] = img
    d = Derivation(alg, +1, d_images)
    return Cdga(f"{rel.total.name}-fiber", alg, d)


def pushout_model(phi, rel):
    """Base change of a relative algebra along phi: reuse the fiber, map
    base generators through phi in the twisting terms."""
    if not rel.base.algebra.same_universe(phi.source.algebra) \
            or rel.base.differential != phi.source.differential:
        raise ModelError("base mismatch: relative algebra is not over "
                         "the source of the morphism")
    target = phi.target
    _require_free(target, "pushout")
    specs = [(g.name, g.degree) for g in target.algebra.generators]
    fiber_specs = [(g.name, g.degree) for g in rel.fiber]
    alg = FreeAlgebra.build(specs + fiber_specs)
    sub = {}
    for g in rel.base.algebra.generators:
        sub[g.ordinal] = phi.image_of(g.name).in_algebra(alg)
    for g in rel.fiber:
        sub[g.ordinal] = alg.gen_elem(g.name)
    d_images = {}
    for g in target.algebra.generators:
        dg = target.differential.images.get(g.ordinal)
        if dg is not None:
            d_images[g.name] = dg.in_algebra(alg)
    for g in rel.fiber:
        dg = rel.total.differential.images.get(g.ordinal)
        if dg is not None:
            img = substitute(dg, sub, alg)
            if not img.is_zero():
                d_images[g.name] = img
    d = Derivation(alg, +1, d_images)
    total = Cdga(f"{target.name}(x){rel.total.name}-fiber", alg, d)
    return RelativeSullivanAlgebra(target, [g.name for g in rel.fiber], total)


def _bar_order(model):
    return sorted(model.algebra.generators, key=lambda g: (g.degree, g.ordinal))


def acyclic_closure(model, verify_to=0):
    """Extension by vbar (degree |v| - 1) with D vbar = v - C(v), the
    correction C solved degreewise so that D^2 vbar = 0; verified acyclic
    in degrees 1..verify_to."""
    _require_free(model, "acyclic closure")
    if not check_minimal_sullivan(model):
        raise ModelError("acyclic closure needs a minimal model")
    alg = model.algebra
    d_images = {}
    for g in alg.generators:
        dg = model.differential.images.get(g.ordinal)
        if dg is not None:
            d_images[g.name] = dg
    bar_names = []
    bar_ordinals = set()
    for v in _bar_order(model):
        cur_d = Derivation(alg, +1,
                           {n: e.in_algebra(alg) for n, e in d_images.items()},
                           check=False)
        m = v.degree
        candidates = [mono for mono in alg.basis_of_degree(m)
                      if any(o in bar_ordinals for o, _ in mono)]
        target_basis = alg.basis_of_degree(m + 1)
        index = {mono: i for i, mono in enumerate(target_basis)}
        dv = cur_d.apply(alg.gen_elem(v.name))
        rhs = [Fraction(0)] * len(target_basis)
        for mono, c in dv.terms.items():
            rhs[index[mono]] = c
        correction = alg.zero()
        if not dv.is_zero():
            cols = []
            for mono in candidates:
                img = cur_d.apply(AlgElement(alg, {mono: Fraction(1)}))
                col = [Fraction(0)] * len(target_basis)
                for mm, c in img.terms.items():
                    col[index[mm]] = c
                cols.append(col)
            mat = RatMatrix([[cols[j][i] for j in range(len(cols))]
                             for i in range(len(target_basis))],
                            cols=len(cols))
            sol = solve(mat, rhs)
            if isinstance(sol, NoSolution):
                raise ModelError(
                    f"acyclic closure correction unsolvable for {v.name} "
                    f"in degree {m}")
            correction = AlgElement(
                alg, {mono: c for mono, c in zip(candidates, sol) if c})
        bar = f"{v.name}_bar"
        alg = alg.extend([(bar, m - 1)])
        d_images = {n: e.in_algebra(alg) for n, e in d_images.items()}
        d_images[bar] = alg.gen_elem(v.name) - correction.in_algebra(alg)
        bar_names.append(bar)
        bar_ordinals.add(alg.generator(bar).ordinal)
    d = Derivation(alg, +1, d_images)
    total = Cdga(f"{model.name}-acyclic", alg, d)
    rel = RelativeSullivanAlgebra(model, bar_names, total)
    for k in range(1, verify_to + 1):
        if total.h_dim(k) != 0:
            raise ModelError(
                f"acyclic closure of {model.name} has H^{k} != 0")
    return rel


class LoopCohomology:
    """Loop-space cohomology dimensions (the free algebra on the
    desuspended generators) plus homotopy-group ranks of the input."""

    def __init__(self, model, max_degree):
        self.model = model
        self.max_degree = max_degree
        self.bar_specs = [(f"{g.name}_bar", g.degree - 1)
                          for g in _bar_order(model)]
        bar_alg = FreeAlgebra.build(self.bar_specs)
        self.dims = [len(bar_alg.basis_of_degree(k))
                     for k in range(max_degree + 1)]
        self.pi_ranks = {}
        for g in model.algebra.generators:
            self.pi_ranks[g.degree] = self.pi_ranks.get(g.degree, 0) + 1

    def pi_rank(self, k):
        return self.pi_ranks.get(k, 0)


def loop_cohomology(model, max_degree):
    _require_free(model, "loop cohomology")
    if not check_minimal_sullivan(model):
        raise ModelError("loop cohomology needs a minimal model")
    return LoopCohomology(model, max_degree)


def path_space_model(model, series_cap=64):
    """Model of the unbased path space over two base copies: the fiber
    differential is D vbar = v_p1 - v_p0 - sum_n (SD)^n/n! (v_p0),
    evaluated term by term until it vanishes."""
    _require_free(model, "path space model")
    if not check_minimal_sullivan(model):
        raise ModelError("path space model needs a minimal model")
    gens = list(model.algebra.generators)
    bars = _bar_order(model)
    specs = ([(f"{g.name}_p0", g.degree) for g in gens]
             + [(f"{g.name}_p1", g.degree) for g in gens]
             + [(f"{g.name}_bar", g.degree - 1) for g in bars])
    alg = FreeAlgebra.build(specs)

    def copy_diff(suffix):
        out = {}
        ren = {g.ordinal: alg.gen_elem(f"{g.name}{suffix}") for g in gens}
        for g in gens:
            dg = model.differential.images.get(g.ordinal)
            if dg is not None:
                out[f"{g.name}{suffix}"] = substitute(dg, ren, alg)
        return out

    d_images = copy_diff("_p0")
    d_images.update(copy_diff("_p1"))
    base_alg = FreeAlgebra.build(specs[:2 * len(gens)])
    base_d = Derivation(base_alg, +1,
                        {n: e.in_algebra(base_alg)
                         for n, e in d_images.items()})
    base = Cdga(f"{model.name}^2", base_alg, base_d)

    s_images = {}
    for g in gens:
        s_images[f"{g.name}_p0"] = alg.gen_elem(f"{g.name}_bar")
        s_images[f"{g.name}_p1"] = alg.gen_elem(f"{g.name}_bar")
    s = Derivation(alg, -1, s_images)

    for g in bars:
        partial = Derivation(alg, +1, d_images, check=False)
        v0 = alg.gen_elem(f"{g.name}_p0")
        v1 = alg.gen_elem(f"{g.name}_p1")
        total = v1 - v0
        term = v0
        n = 0
        while True:
            term = s.apply(partial.apply(term))
            if term.is_zero():
                break
            n += 1
            if n > series_cap:
                raise ModelError(
                    f"path-space series for {g.name} did not terminate "
                    f"within {series_cap} iterations")
            total = total - term.scale(Fraction(1, factorial(n)))
        d_images[f"{g.name}_bar"] = total
    d = Derivation(alg, +1, d_images)
    total_cdga = Cdga(f"{model.name}-paths", alg, d)
    return RelativeSullivanAlgebra(base, [f"{g.name}_bar" for g in bars],
                                   total_cdga)


def multiplication_morphism(model, doubled):
    """The product map from the doubled base (v_p0, v_p1 copies) back to
    the model: both copies of v map to v."""
    images = {}
    for g in model.algebra.generators:
        images[f"{g.name}_p0"] = model.algebra.gen_elem(g.name)
        images[f"{g.name}_p1"] = model.algebra.gen_elem(g.name)
    return CdgaMorphism(doubled, model, images)


def free_loop_model(model):
    """Model of the free loop space: adjoin vbar with D vbar = -S(dv),
    where S is the degree -1 derivation sending v to vbar."""
    _require_free(model, "free loop model")
    if not check_minimal_sullivan(model):
        raise ModelError("free loop model needs a minimal model")
    gens = list(model.algebra.generators)
    bars = _bar_order(model)
    alg = model.algebra.extend([(f"{g.name}_bar", g.degree - 1) for g in bars])
    s_images = {g.name: alg.gen_elem(f"{g.name}_bar") for g in gens}
    s = Derivation(alg, -1, s_images)
    d_images = {}
    for g in gens:
        dg = model.differential.images.get(g.ordinal)
        if dg is not None:
            d_images[g.name] = dg.in_algebra(alg)
    for g in bars:
        dg = model.differential.images.get(g.ordinal)
        if dg is not None:
            img = -s.apply(dg.in_algebra(alg))
            if not img.is_zero():
                d_images[f"{g.name}_bar"] = img
    d = Derivation(alg, +1, d_images)
    return Cdga(f"{model.name}-loops", alg, d)


class MinimalModelResult:
    def __init__(self, model, quasi_iso, certified_degree, stages):
        self.model = model
        self.quasi_iso = quasi_iso
        self.certified_degree = certified_degree
        self.stages = stages

    def generator_profile(self):
        return [(g.name, g.degree) for g in self.model.algebra.generators]

    def to_json_dict(self):
        diffs = {}
        for g in self.model.algebra.generators:
            dg = self.model.differential.images.get(g.ordinal)
            if dg is not None and not dg.is_zero():
                diffs[g.name] = format_element(dg)
        return {
            "generators": [{"name": g.name, "degree": g.degree}
                           for g in self.model.algebra.generators],
            "differentials": diffs,
            "certifiedDegree": self.certified_degree,
        }

    def __repr__(self):
        gens = ", ".join(f"{n}:{d}" for n, d in self.generator_profile())
        return f"MinimalModelResult({gens})"


def minimal_model(target, max_degree):
    """Construct the minimal Sullivan model of `target` with its
    quasi-isomorphism, certified through `max_degree`.

    Requires H^0 = Q and H^1 = 0, and target bases computable through
    degree max_degree + 2.
    """
    if target.dim(0) != 1:
        raise ModelError("target must be connected (degree 0 = Q)")
    if target.h_dim(1) != 0:
        raise ModelError("target has H^1 != 0; minimal model synthesis "
                         "needs a simply connected target")
    alg = FreeAlgebra.build([])
    d_images = {}
    phi_images = {}
    stages = []

    def current():
        d = Derivation(alg, +1,
                       {name: e.in_algebra(alg)
                        for name, e in d_images.items()}, check=False)
        model = Cdga("model", alg, d, check=False)
        phi = CdgaMorphism(model, target, dict(phi_images), check=False)
        return model, phi

    for n in range(2, max_degree + 1):
        model, phi = current()
        new_specs = []
        new_d = {}
        new_phi = {}
        count = 0

        def fresh_name():
            nonlocal count
            count += 1
            return f"v{n}" if count == 1 else f"v{n}_{count}"

        # (a) new closed generators spanning coker H^n(phi)
        hmat = phi.h_matrix(n)
        tgt_dim = target.h_dim(n)
        image_vs = [[hmat.data[i][j] for i in range(tgt_dim)]
                    for j in range(hmat.cols)]
        im = span_basis(image_vs, tgt_dim)
        full = span_basis([[Fraction(1 if i == j else 0)
                            for i in range(tgt_dim)]
                           for j in range(tgt_dim)], tgt_dim)
        coker = quotient_basis(im, full)
        tgt_reps = target.h_representatives(n)
        cocycle_names = []
        for vec in coker:
            name = fresh_name()
            rep = target.algebra.zero()
            for c, r in zip(vec, tgt_reps):
                if c:
                    rep = rep + r.scale(c)
            new_specs.append((name, n))
            new_phi[name] = target.reduce(rep)
            cocycle_names.append(name)

        # (b) generators of degree n killing ker H^(n+1)(phi)
        kmat = phi.h_matrix(n + 1)
        kernel = kernel_basis(kmat)
        src_reps = model.h_representatives(n + 1)
        kernel_names = []
        for vec in kernel.vectors:
            name = fresh_name()
            zeta = model.algebra.zero()
            for c, r in zip(vec, src_reps):
                if c:
                    zeta = zeta + r.scale(c)
            img = phi.apply(zeta)
            b = target.algebra.zero()
            if not img.is_zero():
                sol = solve(target.diff_matrix(n), target.coords(img, n + 1))
                if isinstance(sol, NoSolution):
                    raise ModelError(
                        f"internal consistency: phi of a kernel class is "
                        f"not exact in degree {n + 1}")
                b = target.element(n, sol)
            new_specs.append((name, n))
            new_d[name] = zeta
            new_phi[name] = b
            kernel_names.append(name)

        if new_specs:
            alg = alg.extend(new_specs)
            d_images = {k: e.in_algebra(alg) for k, e in d_images.items()}
            for k, e in new_d.items():
                d_images[k] = e.in_algebra(alg)
            phi_images.update(new_phi)
        stages.append({"degree": n,
                       "cocycle_gens": cocycle_names,
                       "kernel_gens": kernel_names})

    d = Derivation(alg, +1, {n: e.in_algebra(alg) for n, e in d_images.items()})
    model = Cdga(f"model({target.name})", alg, d)
    phi = CdgaMorphism(model, target, phi_images)
    if model.algebra.generators and not check_minimal_sullivan(model):
        raise ModelError("constructed model is not minimal")
    rep = check_quasi_iso(phi, max_degree - 1)
    if not rep.ok:
        raise ModelError("constructed map is not a quasi-isomorphism "
                         f"through degree {max_degree - 1}")
    return MinimalModelResult(model, phi, max_degree, stages)
