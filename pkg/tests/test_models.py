"""Minimal models, acyclic closures, loop/path/free-loop constructions."""

import pytest

from sullivan.catalog import (
    cp_cohomology,
    cp_model,
    nonformal_model,
    product_model,
    sphere_cohomology,
    sphere_model,
    wedge_cohomology,
)
from sullivan.cdga import Cdga, check_quasi_iso, tensor_product
from sullivan.models import (
    ModelError,
    acyclic_closure,
    check_minimal_sullivan,
    fiber_model,
    free_loop_model,
    loop_cohomology,
    minimal_model,
    multiplication_morphism,
    path_space_model,
    pushout_model,
)


def minimal_fixtures():
    return [sphere_model(2), sphere_model(3), cp_model(2), cp_model(3),
            nonformal_model(),
            product_model(sphere_model(3), sphere_model(3))]


# ----- minimality check -----

def test_even_sphere_model_is_minimal():
    assert check_minimal_sullivan(sphere_model(2))


def test_word_length_one_differential_is_not_minimal():
    c = Cdga.build("cone", [("u", 3), ("v", 2)], {"v": "u"})
    assert not check_minimal_sullivan(c)


def test_minimality_check_rejects_low_degrees():
    c = Cdga.build("circle-ish", [("t", 1)])
    with pytest.raises(ModelError, match="degree 1"):
        check_minimal_sullivan(c)


# ----- minimal models -----

def profile(res):
    return [(g.degree,
             str(res.model.differential.images.get(g.ordinal, "")) or "0")
            for g in res.model.algebra.generators]


def test_minimal_model_of_odd_sphere():
    res = minimal_model(sphere_cohomology(3), 9)
    assert [d for d, _ in profile(res)] == [3]
    assert profile(res)[0][1] == "0"
    assert check_quasi_iso(res.quasi_iso, 8).ok


def test_minimal_model_of_even_sphere():
    res = minimal_model(sphere_cohomology(2), 8)
    assert [d for d, _ in profile(res)] == [2, 3]
    y, z = res.model.algebra.generators
    dz = res.model.differential.images[z.ordinal]
    assert dz == res.model.algebra.parse(f"{y.name}^2")


@pytest.mark.parametrize("n,xdeg,power", [(2, 5, 3), (3, 7, 4)])
def test_minimal_model_of_projective_spaces(n, xdeg, power):
    res = minimal_model(cp_cohomology(n), 2 * n + 4)
    degs = [d for d, _ in profile(res)]
    assert degs == [2, xdeg]
    u, x = res.model.algebra.generators
    dx = res.model.differential.images[x.ordinal]
    assert dx == res.model.algebra.parse(f"{u.name}^{power}")


def test_minimal_model_output_is_minimal_and_quasi_iso():
    for target in [sphere_cohomology(2), sphere_cohomology(3),
                   cp_cohomology(2), wedge_cohomology(3, 3)]:
        res = minimal_model(target, 8)
        if res.model.algebra.generators:
            assert check_minimal_sullivan(res.model)
        assert check_quasi_iso(res.quasi_iso, 7).ok


def test_minimal_model_idempotence_on_formal_fixtures():
    # running synthesis on the model's own cohomology presentation gives the
    # same generator counts per degree and the same differential word ranks
    for target, model in [(sphere_cohomology(2), sphere_model(2)),
                          (cp_cohomology(2), cp_model(2))]:
        res = minimal_model(target, 9)
        got = sorted(g.degree for g in res.model.algebra.generators)
        want = sorted(g.degree for g in model.algebra.generators)
        assert got == want
        got_wl = sorted(
            max(e.word_length_split(), default=0)
            for e in res.model.differential.images.values())
        want_wl = sorted(
            max(e.word_length_split(), default=0)
            for e in model.differential.images.values())
        assert got_wl == want_wl


def test_minimal_model_resynthesis_of_nonformal_algebra():
    # the nonformal algebra is its own minimal model; synthesis against it
    # reproduces the generator profile and a word-length-2 differential
    res = minimal_model(nonformal_model(), 12)
    assert sorted(g.degree for g in res.model.algebra.generators) == [3, 3, 5]
    images = list(res.model.differential.images.values())
    assert len(images) == 1
    assert set(images[0].word_length_split()) == {2}


def test_minimal_model_of_wedge_grows():
    res = minimal_model(wedge_cohomology(3, 3), 8)
    hist = {}
    for g in res.model.algebra.generators:
        hist[g.degree] = hist.get(g.degree, 0) + 1
    assert hist[3] == 2
    assert hist[5] == 1
    assert hist[7] == 2


def test_minimal_model_rejects_non_simply_connected():
    bad = Cdga.build("h1", [("t", 1)])
    with pytest.raises(ModelError, match="H\\^1"):
        minimal_model(bad, 5)


def test_minimal_model_stage_log():
    res = minimal_model(sphere_cohomology(2), 6)
    by_degree = {s["degree"]: s for s in res.stages}
    assert by_degree[2]["cocycle_gens"] != []
    assert by_degree[3]["kernel_gens"] != []


# ----- relative algebras: fiber, pushout -----

def test_fiber_model_of_odd_cone():
    # (Lu -> L(u, v), Dv = u), u odd: fiber is a polynomial line
    base = Cdga.build("Lu", [("u", 3)])
    total = Cdga.build("cone", [("u", 3), ("v", 2)], {"v": "u"})
    from sullivan.models import RelativeSullivanAlgebra
    rel = RelativeSullivanAlgebra(base, ["v"], total)
    fib = fiber_model(rel)
    assert fib.d(fib.algebra.gen_elem("v")).is_zero()
    assert [fib.h_dim(k) for k in range(7)] == [1, 0, 1, 0, 1, 0, 1]


def test_pushout_along_identity_is_unchanged():
    from sullivan.cdga import identity_morphism
    m = sphere_model(2)
    rel = acyclic_closure(m)
    out = pushout_model(identity_morphism(m), rel)
    assert out.total.differential == rel.total.differential


def test_pushout_to_unit_gives_fiber():
    m = sphere_model(2)
    rel = acyclic_closure(m)
    unit = Cdga.build("Q", [])
    from sullivan.cdga import CdgaMorphism
    aug = CdgaMorphism(m, unit, {})
    out = pushout_model(aug, rel)
    fib = fiber_model(rel)
    assert [g.degree for g in out.fiber] == \
        [g.degree for g in fib.algebra.generators]
    for g in out.fiber:
        dg = out.total.differential.images.get(g.ordinal)
        assert dg is None or dg.is_zero()


def test_pushout_base_mismatch():
    from sullivan.cdga import identity_morphism
    rel = acyclic_closure(sphere_model(2))
    with pytest.raises(ModelError, match="base mismatch"):
        pushout_model(identity_morphism(sphere_model(3)), rel)


# ----- acyclic closures -----

def test_acyclic_closure_of_odd_sphere():
    rel = acyclic_closure(sphere_model(3), verify_to=10)
    d = rel.total.differential
    xbar = rel.total.algebra.generator("x_bar")
    assert d.images[xbar.ordinal] == rel.total.algebra.gen_elem("x")


def test_acyclic_closure_of_even_sphere_correction():
    rel = acyclic_closure(sphere_model(2), verify_to=10)
    alg = rel.total.algebra
    d = rel.total.differential
    assert d.images[alg.generator("y_bar").ordinal] == alg.gen_elem("y")
    assert d.images[alg.generator("z_bar").ordinal] == alg.parse("z - y*y_bar")


def test_acyclic_closure_acyclic_on_fixtures():
    for m in [sphere_model(2), sphere_model(3), cp_model(2)]:
        rel = acyclic_closure(m, verify_to=12)
        for k in range(1, 13):
            assert rel.total.h_dim(k) == 0


def test_fiber_of_acyclic_closure_has_zero_differential():
    for m in minimal_fixtures():
        rel = acyclic_closure(m)
        fib = fiber_model(rel)
        assert all(e.is_zero() for e in fib.differential.images.values())


# ----- loop cohomology -----

def test_loop_cohomology_odd_sphere():
    lc = loop_cohomology(sphere_model(3), 20)
    assert lc.dims == [1 if k % 2 == 0 else 0 for k in range(21)]
    assert lc.pi_rank(3) == 1 and lc.pi_rank(2) == 0


def test_loop_cohomology_even_sphere():
    lc = loop_cohomology(sphere_model(2), 20)
    assert lc.dims == [1] * 21


def test_loop_cohomology_cp3_pi_ranks():
    lc = loop_cohomology(cp_model(3), 10)
    assert lc.pi_rank(2) == 1 and lc.pi_rank(7) == 1
    assert sum(lc.pi_ranks.values()) == 2


def test_loop_cohomology_matches_acyclic_closure_fiber():
    for m in [sphere_model(2), sphere_model(4), cp_model(2)]:
        lc = loop_cohomology(m, 10)
        fib = fiber_model(acyclic_closure(m))
        assert [fib.h_dim(k) for k in range(11)] == lc.dims


# ----- path space and free loops -----

def test_path_space_even_sphere_differentials():
    rel = path_space_model(sphere_model(2))
    alg = rel.total.algebra
    d = rel.total.differential
    assert d.images[alg.generator("y_bar").ordinal] == \
        alg.parse("y_p1 - y_p0")
    assert d.images[alg.generator("z_bar").ordinal] == \
        alg.parse("z_p1 - z_p0 - y_p0*y_bar - y_bar*y_p1")


def test_path_space_zero_differential_model():
    rel = path_space_model(sphere_model(3))
    alg = rel.total.algebra
    assert rel.total.differential.images[alg.generator("x_bar").ordinal] == \
        alg.parse("x_p1 - x_p0")


def test_free_loop_even_sphere():
    fl = free_loop_model(sphere_model(2))
    alg = fl.algebra
    assert fl.differential.images[alg.generator("z_bar").ordinal] == \
        alg.parse("-2*y*y_bar")
    assert fl.h_dim(1) == 1
    assert [str(r) for r in fl.cohomology(3).representatives[1]] == ["y_bar"]
    assert fl.h_dim(3) == 1
    reps3 = fl.cohomology(3).representatives[3]
    assert [str(r) for r in reps3] == ["y_bar*z_bar"]


def test_free_loop_odd_sphere_dims():
    fl = free_loop_model(sphere_model(3))
    assert [fl.h_dim(k) for k in range(7)] == [1, 0, 1, 1, 1, 1, 1]


def test_pushout_of_path_space_equals_free_loop():
    for m in [sphere_model(2), sphere_model(3), cp_model(2),
              product_model(sphere_model(3), sphere_model(3))]:
        rel = path_space_model(m)
        mult = multiplication_morphism(m, rel.base)
        po = pushout_model(mult, rel)
        fl = free_loop_model(m)
        assert po.total.algebra.generators == fl.algebra.generators
        assert po.total.differential == fl.differential
