"""Stock CDGA presentations: spheres, projective spaces, and the standard
elliptic and nonformal test algebras.  Every builder returns a fresh Cdga."""

from .cdga import Cdga, fibered_product_augmented, tensor_product

__all__ = [
    "sphere_model",
    "sphere_cohomology",
    "cp_model",
    "cp_cohomology",
    "nonformal_model",
    "elliptic_six",
    "product_model",
    "wedge_cohomology",
]


def sphere_model(n):
    """Minimal model of the n-sphere."""
    if n < 1:
        raise ValueError("n >= 1")
    if n % 2:
        return Cdga.build(f"S{n}-model", [("x", n)])
    return Cdga.build(f"S{n}-model", [("y", n), ("z", 2 * n - 1)],
                      {"z": "y^2"})


def sphere_cohomology(n):
    """H*(S^n) as a quotient presentation with zero differential."""
    if n % 2:
        return Cdga.build(f"H(S{n})", [("x", n)])
    return Cdga.build(f"H(S{n})", [("y", n)], relation_strings=["y^2"])


def cp_model(n):
    """Minimal model of complex projective n-space."""
    return Cdga.build(f"CP{n}-model", [("u", 2), ("x", 2 * n + 1)],
                      {"x": f"u^{n + 1}"})


def cp_cohomology(n):
    """H*(CP^n) = Q[u]/(u^(n+1))."""
    return Cdga.build(f"H(CP{n})", [("u", 2)],
                      relation_strings=[f"u^{n + 1}"])


def nonformal_model():
    """Free CDGA on u3, v3, w5 with dw = uv; its degree-8 classes are
    represented by uw and vw, so no algebra map to its cohomology is a
    quasi-isomorphism."""
    return Cdga.build("nonformal", [("u", 3), ("v", 3), ("w", 5)],
                      {"w": "u*v"})


def elliptic_six():
    """Six-generator elliptic algebra (a2, x3, u3, b4, v5, w7).

    du = a^2, db = ax, dv = ab - ux, dw = b^2 - 2vx.  The coefficient 2
    is forced by d^2 w = 0; the associated pure differential is still
    d_s v = ab, d_s w = b^2.
    """
    return Cdga.build(
        "elliptic6",
        [("a", 2), ("x", 3), ("u", 3), ("b", 4), ("v", 5), ("w", 7)],
        {"u": "a^2", "b": "a*x", "v": "a*b - u*x", "w": "b^2 - 2*v*x"})


def product_model(a, b):
    """Model of a product space: the tensor CDGA."""
    t, _, _ = tensor_product(a, b)
    return t


def wedge_cohomology(*degrees):
    """H* of a wedge of spheres, as an augmented fiber product."""
    return fibered_product_augmented(
        [sphere_cohomology(n) for n in degrees],
        name="H(" + "v".join(f"S{n}" for n in degrees) + ")")
