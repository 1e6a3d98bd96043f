"""Polynomial forms on simplices, simplicial sets, integration, Stokes."""

import random
from fractions import Fraction

import pytest

from sullivan.plforms import (
    Cochain,
    FormError,
    GlobalForm,
    PolyForm,
    boundary_delta,
    builtin_complex,
    cochain_cohomology,
    cochain_cup,
    cochain_differential,
    delta_complex,
    form_basis,
    integrate,
    normalize_word,
    parse_scomplex_file,
    sample_closed_global_form,
    sample_global_form,
    verify_stokes,
)


# ----- faces and degeneracies on the coordinate algebras -----

def test_face_of_t1_on_the_interval():
    f = PolyForm.parse(1, "t1")
    assert f.face(0) == PolyForm.parse(0, "1")
    assert f.face(1).is_zero()


def test_face_of_constant():
    f = PolyForm.parse(2, "1")
    for i in range(3):
        assert f.face(i) == PolyForm.parse(1, "1")


def test_degeneracies_of_t1_on_the_interval():
    f = PolyForm.parse(1, "t1")
    assert f.degen(1) == PolyForm.parse(2, "t1 + t2")
    assert f.degen(0) == PolyForm.parse(2, "t2")


def test_form_differential():
    assert PolyForm.parse(1, "t1^2").d() == PolyForm.parse(1, "2*t1*y1")
    assert PolyForm.parse(2, "t1*y2").d() == PolyForm.parse(2, "y1*y2")
    assert PolyForm.parse(1, "y1").d().is_zero()


def _random_form(rng, n, k, cap=2):
    basis = form_basis(n, k, cap)
    from sullivan.plforms import form_algebra
    from sullivan.graded import AlgElement
    terms = {m: Fraction(rng.randint(-3, 3)) for m in basis
             if rng.random() < 0.4}
    terms = {m: c for m, c in terms.items() if c}
    return PolyForm(n, AlgElement(form_algebra(n), terms))


def test_simplicial_identities_on_random_forms():
    rng = random.Random(12)
    for _ in range(40):
        n = rng.randint(2, 3)
        k = rng.randint(0, n)
        w = _random_form(rng, n, k)
        # faces: d_i d_j = d_(j-1) d_i for i < j
        for j in range(n + 1):
            for i in range(j):
                assert w.face(j).face(i) == w.face(i).face(j - 1)
        # degeneracies: s_i s_j = s_(j+1) s_i for i <= j
        for j in range(n + 1):
            for i in range(j + 1):
                assert w.degen(j).degen(i) == w.degen(i).degen(j + 1)
        # mixed identities
        for j in range(n + 1):
            for i in range(n + 2):
                lhs = w.degen(j).face(i)
                if i < j:
                    assert lhs == w.face(i).degen(j - 1)
                elif i in (j, j + 1):
                    assert lhs == w
                else:
                    assert lhs == w.face(i - 1).degen(j)


def test_faces_and_degeneracies_commute_with_d():
    rng = random.Random(77)
    for _ in range(30):
        n = rng.randint(1, 3)
        k = rng.randint(0, n - 1)
        w = _random_form(rng, n, k)
        for i in range(n + 1):
            assert w.face(i).d() == w.d().face(i)
            assert w.degen(i).d() == w.d().degen(i)


def test_d_squared_zero_on_random_forms():
    rng = random.Random(5)
    for _ in range(30):
        w = _random_form(rng, 3, rng.randint(0, 2), cap=3)
        assert w.d().d().is_zero()


# ----- degeneracy words -----

def test_normalize_word():
    assert normalize_word(()) == ()
    assert normalize_word((0, 0)) == (1, 0)
    assert normalize_word((2, 0, 1)) == (3, 2, 0)
    assert normalize_word((3, 1)) == (3, 1)


# ----- complexes -----

def test_delta_and_boundary_counts():
    d3 = delta_complex(3)
    assert [len(d3.simplices(k)) for k in range(4)] == [4, 6, 4, 1]
    b3 = boundary_delta(3)
    assert [len(b3.simplices(k)) for k in range(3)] == [4, 6, 4]
    assert b3.top_dim == 2


def test_builtin_names():
    assert builtin_complex("delta2").top_dim == 2
    with pytest.raises(FormError, match="unknown builtin"):
        builtin_complex("nope")


def test_simplicial_identity_validation_catches_bad_gluing():
    # a triangle whose edges point at the wrong vertices
    dims = {"a": 0, "b": 0, "c": 0, "e0": 1, "e1": 1, "e2": 1, "T": 2}
    faces = {
        ("e0", 0): ("a", ()), ("e0", 1): ("b", ()),
        ("e1", 0): ("a", ()), ("e1", 1): ("c", ()),
        ("e2", 0): ("b", ()), ("e2", 1): ("c", ()),
        ("T", 0): ("e0", ()), ("T", 1): ("e1", ()),
        ("T", 2): ("e0", ()),   # wrong: repeats e0 incompatibly
    }
    from sullivan.plforms import SimplicialComplexFin
    with pytest.raises(FormError, match="identity"):
        SimplicialComplexFin("bad", dims, faces)


def test_scomplex_file_roundtrip_with_degeneracy_word():
    text = """\
scomplex circle
simplex p 0
simplex e 1
face e 0 = p
face e 1 = p
"""
    K = parse_scomplex_file(text)
    assert K.dims == {"p": 0, "e": 1}
    assert cochain_cohomology(K, 1) == [1, 1]


# ----- cochains -----

def test_cochain_cohomology_boundary_delta3():
    assert cochain_cohomology(boundary_delta(3), 2) == [1, 0, 1]


def test_cochain_cohomology_delta3_acyclic():
    assert cochain_cohomology(delta_complex(3), 3) == [1, 0, 0, 0]


def test_delta_squared_zero_on_random_cochains():
    rng = random.Random(3)
    K = boundary_delta(3)
    for _ in range(20):
        c = Cochain(K, 0, {sid: rng.randint(-4, 4) for sid in K.simplices(0)})
        assert cochain_differential(cochain_differential(c)).is_zero()


# ----- integration -----

def test_integrate_volume_form_of_triangle():
    K = delta_complex(2)
    gf = GlobalForm(K, 2, {"012": PolyForm.parse(2, "y1*y2")}, check=False)
    ch = integrate(gf)
    assert ch.value("012") == Fraction(1, 2)


def test_integrate_t_y_on_interval():
    K = delta_complex(1)
    gf = GlobalForm(K, 1, {"01": PolyForm.parse(1, "t1*y1")}, check=False)
    assert integrate(gf).value("01") == Fraction(1, 2)


def test_integrate_dirichlet_monomial():
    K = delta_complex(2)
    gf = GlobalForm(K, 2, {"012": PolyForm.parse(2, "t1*t2*y1*y2")},
                    check=False)
    assert integrate(gf).value("012") == Fraction(1, 24)


def test_volume_normalization_top_monomial():
    for n in (1, 2, 3):
        K = delta_complex(n)
        top = "".join(str(v) for v in range(n + 1))
        expr = "*".join(f"y{i}" for i in range(1, n + 1))
        gf = GlobalForm(K, n, {top: PolyForm.parse(n, expr)}, check=False)
        import math
        assert integrate(gf).value(top) == Fraction(1, math.factorial(n))


# ----- sampling and Stokes -----

def test_sample_is_deterministic():
    K = builtin_complex("delta2")
    a = sample_global_form(K, 1, 2, seed=7)
    b = sample_global_form(K, 1, 2, seed=7)
    assert a.assignment == {sid: f for sid, f in b.assignment.items()}
    c = sample_global_form(K, 1, 2, seed=8)
    assert any(a.assignment[s] != c.assignment[s] for s in a.assignment)


def test_sampled_forms_are_compatible():
    for name in ("delta2", "bddelta3"):
        K = builtin_complex(name)
        for k in range(K.top_dim + 1):
            gf = sample_global_form(K, k, 2, seed=11 + k)
            assert gf.validate() == []


def test_closed_samples_are_closed():
    K = builtin_complex("bddelta3")
    for k in (0, 1, 2):
        gf = sample_closed_global_form(K, k, 2, seed=5 + k)
        assert gf.d().is_zero()


def test_nonzero_solution_space_on_boundary_sphere():
    K = builtin_complex("bddelta3")
    gf = sample_global_form(K, 2, 2, seed=7)
    assert not gf.is_zero()


def test_stokes_delta2():
    rep = verify_stokes(builtin_complex("delta2"), 12, 2, seed=1)
    assert rep.ok
    assert rep.passed == 12


def test_stokes_boundary_sphere_and_cocycle_ranks():
    rep = verify_stokes(builtin_complex("bddelta3"), 9, 2, seed=1)
    assert rep.ok
    ranks = {r["degree"]: r for r in rep.cocycle_ranks}
    assert ranks[2]["h_dim"] == 1
    # a sampled degree-2 cocycle with nonzero class certifies H^2 != 0
    assert ranks[2]["sampled_rank"] == 1
    assert ranks[0]["sampled_rank"] == 1


def test_stokes_zero_form_trivially_passes():
    K = builtin_complex("delta2")
    gf = GlobalForm(K, 1, {}, check=False)
    assert integrate(gf.d()) == cochain_differential(integrate(gf))


def test_integration_is_not_multiplicative():
    # f = t1 (a 0-form) and w = y1 on the interval: the integral of f*w is
    # 1/2 but the cup product of the integrals vanishes.  Recorded, not a
    # failure: the integration map is a cochain map, not an algebra map.
    K = delta_complex(1)
    f = GlobalForm(K, 0, {
        "01": PolyForm.parse(1, "t1"),
        "0": PolyForm.parse(0, "0"),
        "1": PolyForm.parse(0, "1"),
    })
    w = GlobalForm(K, 1, {"01": PolyForm.parse(1, "y1")})
    fw = GlobalForm(K, 1, {sid: f.form(sid) * w.form(sid)
                           for sid in K.dims})
    lhs = integrate(fw)
    rhs = cochain_cup(integrate(f), integrate(w))
    assert lhs.value("01") == Fraction(1, 2)
    assert rhs.value("01") == 0
    assert lhs != rhs
