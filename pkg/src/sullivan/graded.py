"""Free graded-commutative algebras over Q.

Generators carry an explicit ordinal giving the canonical monomial order.
A monomial is a sparse exponent tuple ((ordinal, power), ...) sorted by
ordinal; odd-degree generators never carry a power above 1 (their squares
vanish).  Elements store monomial -> Fraction maps with no zero
coefficients, so element equality is dict equality.  All values are
immutable by convention and all arithmetic is exact.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "AlgebraError",
    "Generator",
    "FreeAlgebra",
    "AlgElement",
    "Derivation",
    "substitute",
    "parse_poly",
    "format_element",
]


class AlgebraError(ValueError):
    """Malformed algebra data, or an operation across different universes."""


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int
    ordinal: int

    @property
    def is_odd(self):
        return self.degree % 2 == 1


# A monomial is a tuple of (ordinal, power) pairs, sorted by ordinal,
# powers > 0, odd generators with power exactly 1.  () is the unit.
UNIT = ()


class FreeAlgebra:
    """A fixed, ordered universe of generators.

    Degree-0 generators are only legal with allow_degree0=True (used by the
    polynomial-forms coordinate algebras); everything Sullivan-facing keeps
    degrees >= 1.
    """

    def __init__(self, generators, allow_degree0=False):
        gens = sorted(generators, key=lambda g: g.ordinal)
        names = set()
        ordinals = set()
        for g in gens:
            if g.degree < 0 or (g.degree == 0 and not allow_degree0):
                raise AlgebraError(f"generator {g.name} has degree {g.degree}")
            if g.name in names:
                raise AlgebraError(f"duplicate generator name {g.name}")
            if g.ordinal in ordinals:
                raise AlgebraError(f"duplicate ordinal {g.ordinal}")
            names.add(g.name)
            ordinals.add(g.ordinal)
        self.generators = tuple(gens)
        self.allow_degree0 = allow_degree0
        self._by_ordinal = {g.ordinal: g for g in gens}
        self._by_name = {g.name: g for g in gens}

    @classmethod
    def build(cls, specs, allow_degree0=False):
        """Build from (name, degree) pairs; ordinals are assigned 0, 1, ..."""
        gens = [Generator(n, d, i) for i, (n, d) in enumerate(specs)]
        return cls(gens, allow_degree0=allow_degree0)

    def extend(self, specs):
        """New algebra with extra (name, degree) generators appended after
        the existing ones (ordinals continue, old monomials stay valid)."""
        nxt = max((g.ordinal for g in self.generators), default=-1) + 1
        new = [Generator(n, d, nxt + i) for i, (n, d) in enumerate(specs)]
        return FreeAlgebra(self.generators + tuple(new),
                           allow_degree0=self.allow_degree0)

    def generator(self, name):
        try:
            return self._by_name[name]
        except KeyError:
            raise AlgebraError(f"unknown generator {name}") from None

    def by_ordinal(self, o):
        try:
            return self._by_ordinal[o]
        except KeyError:
            raise AlgebraError(f"unknown generator ordinal {o}") from None

    def degree_of(self, o):
        return self.by_ordinal(o).degree

    def same_universe(self, other):
        return self.generators == other.generators

    def foreign_generator(self, other):
        """Name a generator witnessing that two universes differ."""
        mine = set(self.generators)
        theirs = set(other.generators)
        for g in self.generators + other.generators:
            if g not in mine or g not in theirs:
                return g.name
        return "?"

    # ----- element constructors -----

    def zero(self):
        return AlgElement(self, {})

    def one(self):
        return AlgElement(self, {UNIT: Fraction(1)})

    def scalar(self, c):
        c = Fraction(c)
        return AlgElement(self, {UNIT: c} if c else {})

    def gen_elem(self, name):
        g = self.generator(name)
        return AlgElement(self, {((g.ordinal, 1),): Fraction(1)})

    def element(self, terms):
        """From a raw {monomial: coefficient} dict; validates monomials."""
        clean = {}
        for m, c in terms.items():
            c = Fraction(c)
            if not c:
                continue
            self._check_mono(m)
            clean[m] = c
        return AlgElement(self, clean)

    def _check_mono(self, m):
        last = -1
        for o, p in m:
            g = self.by_ordinal(o)
            if o <= last:
                raise AlgebraError(f"monomial not sorted at {g.name}")
            if p <= 0:
                raise AlgebraError(f"nonpositive power of {g.name}")
            if g.is_odd and p > 1:
                raise AlgebraError(f"odd generator {g.name} with power {p}")
            last = o

    def mono_degree(self, m):
        return sum(p * self.degree_of(o) for o, p in m)

    def parse(self, text):
        return parse_poly(text, self)

    def basis_of_degree(self, n, word_min=0, word_max=None):
        """All monomials of total degree n, canonically ordered
        (lexicographic in the exponent vector over ordinals).

        Refuses to enumerate when degree-0 generators exist, since their
        powers would be unbounded.
        """
        if n < 0:
            return []
        if any(g.degree == 0 for g in self.generators):
            raise AlgebraError("basis enumeration needs all degrees >= 1")
        gens = self.generators
        out = []

        def rec(i, rem, wl, acc):
            if rem == 0:
                if wl >= word_min:
                    out.append(tuple(acc))
                return
            if i == len(gens):
                return
            g = gens[i]
            cap = 1 if g.is_odd else rem // g.degree
            for p in range(cap + 1):
                if p * g.degree > rem:
                    break
                if word_max is not None and wl + p > word_max:
                    break
                if p:
                    acc.append((g.ordinal, p))
                rec(i + 1, rem - p * g.degree, wl + p, acc)
                if p:
                    acc.pop()

        rec(0, n, 0, [])
        return out

    def __repr__(self):
        gens = ", ".join(f"{g.name}:{g.degree}" for g in self.generators)
        return f"FreeAlgebra({gens})"


def mono_word(m):
    return sum(p for _, p in m)


def mono_mul(alg, m1, m2):
    """Product of two monomials: (sign, monomial), or None when an odd
    generator repeats.  The Koszul sign counts the odd-odd inversions
    needed to merge the two sorted letter sequences."""
    odd1 = [o for o, p in m1 if alg.degree_of(o) % 2]
    odd2 = [o for o, p in m2 if alg.degree_of(o) % 2]
    if set(odd1) & set(odd2):
        return None
    inversions = 0
    for a in odd1:
        for b in odd2:
            if a > b:
                inversions += 1
    merged = {}
    for o, p in m1:
        merged[o] = p
    for o, p in m2:
        merged[o] = merged.get(o, 0) + p
    mono = tuple(sorted(merged.items()))
    return (-1 if inversions % 2 else 1), mono


class AlgElement:
    """Sparse exact-rational combination of monomials, in canonical form."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra, terms):
        self.algebra = algebra
        self.terms = terms

    def _need_same(self, other):
        if self.algebra is other.algebra:
            return
        if not self.algebra.same_universe(other.algebra):
            bad = self.algebra.foreign_generator(other.algebra)
            raise AlgebraError(f"operands over different universes "
                               f"(generator {bad})")

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, AlgElement):
            return NotImplemented
        return (self.algebra.same_universe(other.algebra)
                and self.terms == other.terms)

    def __ne__(self, other):
        eq = self.__eq__(other)
        return NotImplemented if eq is NotImplemented else not eq

    def __hash__(self):
        return hash((self.algebra.generators,
                     tuple(sorted(self.terms.items()))))

    def __add__(self, other):
        self._need_same(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = terms.get(m, 0) + c
            if s:
                terms[m] = s
            else:
                terms.pop(m, None)
        return AlgElement(self.algebra, terms)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return AlgElement(self.algebra, {m: -c for m, c in self.terms.items()})

    def scale(self, c):
        c = Fraction(c)
        if not c:
            return self.algebra.zero()
        return AlgElement(self.algebra, {m: c * v for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._need_same(other)
        alg = self.algebra
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                sm = mono_mul(alg, m1, m2)
                if sm is None:
                    continue
                sign, m = sm
                s = out.get(m, 0) + sign * c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return AlgElement(alg, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def degree(self):
        """Degree of a homogeneous element (None for 0); raises on
        inhomogeneous input."""
        degs = {self.algebra.mono_degree(m) for m in self.terms}
        if not degs:
            return None
        if len(degs) > 1:
            raise AlgebraError(f"inhomogeneous element (degrees {sorted(degs)})")
        return degs.pop()

    def is_homogeneous(self):
        return len({self.algebra.mono_degree(m) for m in self.terms}) <= 1

    def homogeneous_part(self, k):
        alg = self.algebra
        return AlgElement(alg, {m: c for m, c in self.terms.items()
                                if alg.mono_degree(m) == k})

    def degree_parts(self):
        """Decompose into homogeneous pieces: {degree: piece}."""
        parts = {}
        for m, c in self.terms.items():
            parts.setdefault(self.algebra.mono_degree(m), {})[m] = c
        return {k: AlgElement(self.algebra, t) for k, t in sorted(parts.items())}

    def word_length_split(self):
        """Decompose by word length: {length: piece}; pieces sum to self."""
        parts = {}
        for m, c in self.terms.items():
            parts.setdefault(mono_word(m), {})[m] = c
        return {w: AlgElement(self.algebra, t) for w, t in sorted(parts.items())}

    def word_truncate(self, cap):
        return AlgElement(self.algebra,
                          {m: c for m, c in self.terms.items()
                           if mono_word(m) <= cap})

    def max_word_length(self):
        return max((mono_word(m) for m in self.terms), default=0)

    def in_algebra(self, other):
        """Reinterpret over another universe containing the same ordinals."""
        for m in self.terms:
            for o, _ in m:
                g0 = self.algebra.by_ordinal(o)
                g1 = other.by_ordinal(o)
                if (g0.name, g0.degree) != (g1.name, g1.degree):
                    raise AlgebraError(f"ordinal {o} disagrees between universes")
        return AlgElement(other, dict(self.terms))

    def __repr__(self):
        return format_element(self)


class Derivation:
    """A degree-`shift` derivation given by generator images; extends to
    products by the graded Leibniz rule d(ab) = da*b + (-1)^|a| a*db.

    Generators missing from `images` map to zero.
    """

    def __init__(self, algebra, shift, images, check=True):
        self.algebra = algebra
        self.shift = shift
        imgs = {}
        for key, elem in images.items():
            g = (algebra.generator(key) if isinstance(key, str)
                 else algebra.by_ordinal(key))
            if elem.is_zero():
                continue
            if check:
                if not elem.algebra.same_universe(algebra):
                    raise AlgebraError(f"image of {g.name} lives elsewhere")
                d = elem.degree()
                if d != g.degree + shift:
                    raise AlgebraError(
                        f"image of {g.name} has degree {d}, "
                        f"expected {g.degree + shift}")
            imgs[g.ordinal] = elem
        self.images = imgs

    def image_of(self, name):
        g = self.algebra.generator(name)
        return self.images.get(g.ordinal, self.algebra.zero())

    def apply(self, elem):
        alg = self.algebra
        if elem.algebra is not alg and not elem.algebra.same_universe(alg):
            bad = alg.foreign_generator(elem.algebra)
            raise AlgebraError(f"derivation applied across universes "
                               f"(generator {bad})")
        out = alg.zero()
        for mono, coeff in elem.terms.items():
            prefix_deg = 0
            for i, (o, p) in enumerate(mono):
                img = self.images.get(o)
                gdeg = alg.degree_of(o)
                if img is not None:
                    # all p copies contribute equally: an even generator
                    # commutes past its own copies without sign
                    rest = list(mono[:i])
                    if p > 1:
                        rest.append((o, p - 1))
                    pre = AlgElement(alg, {tuple(rest): Fraction(1)})
                    suf = AlgElement(alg, {mono[i + 1:]: Fraction(1)})
                    sign = -1 if prefix_deg % 2 else 1
                    out = out + (pre * img * suf).scale(coeff * sign * p)
                prefix_deg += p * gdeg
            # the unit monomial contributes nothing
        return out

    def __eq__(self, other):
        if not isinstance(other, Derivation):
            return NotImplemented
        if self.shift != other.shift:
            return False
        if not self.algebra.same_universe(other.algebra):
            return False
        keys = set(self.images) | set(other.images)
        zero = self.algebra.zero()
        for o in keys:
            a = self.images.get(o, zero)
            b = other.images.get(o, zero)
            if dict(a.terms) != dict(b.terms):
                return False
        return True

    def __ne__(self, other):
        eq = self.__eq__(other)
        return NotImplemented if eq is NotImplemented else not eq

    def __repr__(self):
        parts = ", ".join(
            f"{self.algebra.by_ordinal(o).name} -> {format_element(e)}"
            for o, e in sorted(self.images.items()))
        return f"Derivation(shift={self.shift}; {parts})"


def substitute(elem, images, target, missing_zero=False):
    """Multiplicative extension of a generator-image map.

    `images` maps source ordinals to target elements.  Ordinals absent
    from the map raise, unless missing_zero is set (then they kill the
    term, as in setting base generators to zero).
    """
    out = target.zero()
    for mono, coeff in elem.terms.items():
        acc = target.scalar(coeff)
        dead = False
        for o, p in mono:
            if o not in images:
                if missing_zero:
                    dead = True
                    break
                raise AlgebraError(f"no image for generator ordinal {o}")
            img = images[o]
            for _ in range(p):
                acc = acc * img
                if acc.is_zero():
                    break
            if acc.is_zero():
                break
        if dead or acc.is_zero():
            continue
        out = out + acc
    return out


# ----- parsing and printing -----

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|([-+*/^()]))")


def _tokenize(text):
    # comments run to end of line
    text = "\n".join(line.split("#", 1)[0] for line in text.splitlines())
    pos = 0
    toks = []
    while pos < len(text):
        if not text[pos:].strip():
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise AlgebraError(
                f"bad character {text[pos:].strip()[0]!r} in polynomial")
        num, ident, op = m.groups()
        if num is not None:
            toks.append(("num", int(num)))
        elif ident is not None:
            toks.append(("ident", ident))
        else:
            toks.append(("op", op))
        pos = m.end()
    return toks


class _Parser:
    def __init__(self, toks, algebra):
        self.toks = toks
        self.i = 0
        self.alg = algebra

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def next(self):
        t = self.peek()
        self.i += 1
        return t

    def expect_op(self, op):
        kind, val = self.next()
        if kind != "op" or val != op:
            raise AlgebraError(f"expected {op!r} in polynomial")

    def parse(self):
        # poly := ['-'] term (('+'|'-') term)*
        sign = 1
        kind, val = self.peek()
        if kind == "op" and val in "+-":
            self.next()
            sign = -1 if val == "-" else 1
        out = self.term().scale(sign)
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.next()
                t = self.term()
                out = out + (t if val == "+" else -t)
            else:
                break
        if self.i != len(self.toks):
            raise AlgebraError("trailing junk in polynomial")
        return out

    def term(self):
        # term := rat ['*' factor ...] | factor ('*' factor)*
        kind, val = self.peek()
        if kind == "num":
            coeff = self.rat()
            out = self.alg.scalar(coeff)
            while True:
                kind, val = self.peek()
                if kind == "op" and val == "*":
                    self.next()
                    out = out * self.factor()
                else:
                    return out
        out = self.factor()
        while True:
            kind, val = self.peek()
            if kind == "op" and val == "*":
                self.next()
                out = out * self.factor()
            else:
                return out

    def rat(self):
        kind, val = self.next()
        if kind != "num":
            raise AlgebraError("expected a number")
        num = val
        kind, nxt = self.peek()
        if kind == "op" and nxt == "/":
            self.next()
            kind, den = self.next()
            if kind != "num" or den == 0:
                raise AlgebraError("expected a positive denominator")
            return Fraction(num, den)
        return Fraction(num)

    def factor(self):
        kind, val = self.next()
        if kind != "ident":
            raise AlgebraError(f"expected a generator name, got {val!r}")
        g = self.alg.generator(val)
        power = 1
        kind, nxt = self.peek()
        if kind == "op" and nxt == "^":
            self.next()
            kind, p = self.next()
            if kind != "num" or p <= 0:
                raise AlgebraError("expected a positive exponent")
            power = p
        if g.is_odd and power > 1:
            return self.alg.zero()
        return AlgElement(self.alg, {((g.ordinal, power),): Fraction(1)})


def parse_poly(text, algebra):
    """Parse `rat*x^2*y - z + 1/2` style expressions over `algebra`."""
    toks = _tokenize(text)
    if not toks:
        raise AlgebraError("empty polynomial")
    return _Parser(toks, algebra).parse()


def _format_mono(alg, mono):
    parts = []
    for o, p in mono:
        name = alg.by_ordinal(o).name
        parts.append(name if p == 1 else f"{name}^{p}")
    return "*".join(parts)


def format_element(elem):
    """Canonical print form; parse(format(e)) == e."""
    if not elem.terms:
        return "0"
    alg = elem.algebra
    items = sorted(elem.terms.items(),
                   key=lambda mc: (alg.mono_degree(mc[0]), mc[0]))
    chunks = []
    for i, (m, c) in enumerate(items):
        neg = c < 0
        mag = -c if neg else c
        if m == UNIT:
            body = str(mag)
        elif mag == 1:
            body = _format_mono(alg, m)
        else:
            body = f"{mag}*{_format_mono(alg, m)}"
        if i == 0:
            chunks.append(f"-{body}" if neg else body)
        else:
            chunks.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(chunks)
