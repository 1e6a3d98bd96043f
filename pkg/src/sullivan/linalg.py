"""Exact linear algebra over the rationals.

Row reduction clears denominators and runs a fraction-free forward pass
(cross-multiplication updates with gcd containment); rational division
happens only when the reduced echelon form is finalized.  Pivot choice is
deterministic (leftmost nonzero column, first available row), so kernels,
images, quotient representatives and canonical solutions are reproducible.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


class LinalgError(ValueError):
    pass


class RatMatrix:
    __slots__ = ("rows", "cols", "data")

    def __init__(self, data, cols=None):
        self.data = [[Fraction(x) for x in row] for row in data]
        self.rows = len(self.data)
        if self.rows:
            widths = {len(r) for r in self.data}
            if len(widths) != 1:
                raise LinalgError("ragged rows")
            self.cols = widths.pop()
        else:
            self.cols = 0 if cols is None else cols

    @staticmethod
    def zero(rows, cols):
        return RatMatrix([[Fraction(0)] * cols for _ in range(rows)], cols=cols)

    @staticmethod
    def identity(n):
        m = RatMatrix.zero(n, n)
        for i in range(n):
            m.data[i][i] = Fraction(1)
        return m

    def mult_vec(self, v):
        if len(v) != self.cols:
            raise LinalgError(f"vector length {len(v)} vs {self.cols} columns")
        return [sum((row[j] * v[j] for j in range(self.cols)), Fraction(0))
                for row in self.data]

    def transpose(self):
        return RatMatrix([[self.data[r][c] for r in range(self.rows)]
                          for c in range(self.cols)], cols=self.rows)

    def __eq__(self, other):
        return (isinstance(other, RatMatrix) and self.cols == other.cols
                and self.data == other.data)

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in row) for row in self.data)
        return f"RatMatrix[{self.rows}x{self.cols}: {body}]"


def _integerize(row):
    """Scale a rational row to integers, divided by the common gcd."""
    denom = 1
    for x in row:
        denom = denom * x.denominator // gcd(denom, x.denominator)
    ints = [int(x * denom) for x in row]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g > 1:
        ints = [v // g for v in ints]
    return ints


def _forward_eliminate(rows, ncols, limit=None):
    """Fraction-free forward elimination in place on integer rows.

    Pivots are searched in columns [0, limit); trailing columns are
    carried along (for augmented systems).  Returns the pivot columns.
    """
    if limit is None:
        limit = ncols
    pivots = []
    pr = 0
    for c in range(limit):
        sel = None
        for r in range(pr, len(rows)):
            if rows[r][c]:
                sel = r
                break
        if sel is None:
            continue
        if sel != pr:
            rows[pr], rows[sel] = rows[sel], rows[pr]
        p = rows[pr][c]
        for r in range(pr + 1, len(rows)):
            f = rows[r][c]
            if not f:
                continue
            new = [p * rows[r][j] - f * rows[pr][j] for j in range(ncols)]
            g = 0
            for v in new:
                g = gcd(g, v)
            if g > 1:
                new = [v // g for v in new]
            rows[r] = new
        pivots.append(c)
        pr += 1
        if pr == len(rows):
            break
    return pivots


def rref(m):
    """Reduced row echelon form: (RatMatrix, pivot columns, rank)."""
    rows = [_integerize(r) for r in m.data]
    pivots = _forward_eliminate(rows, m.cols)
    rank = len(pivots)
    # finalize: rational normalization and elimination above the pivots
    out = [[Fraction(x) for x in r] for r in rows]
    for i in reversed(range(rank)):
        c = pivots[i]
        p = out[i][c]
        out[i] = [x / p for x in out[i]]
        for r in range(i):
            f = out[r][c]
            if f:
                out[r] = [out[r][j] - f * out[i][j] for j in range(m.cols)]
    return RatMatrix(out, cols=m.cols), pivots, rank


class SubspaceBasis:
    """Subspace given by reduced-echelon basis rows with pivot columns."""

    __slots__ = ("ambient", "vectors", "pivots")

    def __init__(self, ambient, vectors, pivots):
        self.ambient = ambient
        self.vectors = vectors
        self.pivots = pivots

    @property
    def dim(self):
        return len(self.vectors)

    def reduce(self, v):
        """Residue of v modulo the subspace (eliminate pivot coordinates)."""
        v = list(v)
        for row, c in zip(self.vectors, self.pivots):
            f = v[c]
            if f:
                for j in range(self.ambient):
                    v[j] -= f * row[j]
        return v

    def contains(self, v):
        return not any(self.reduce(v))

    def __repr__(self):
        return f"SubspaceBasis(dim {self.dim} in Q^{self.ambient})"


def span_basis(vectors, ambient):
    """Canonical SubspaceBasis spanned by arbitrary vectors."""
    if not vectors:
        return SubspaceBasis(ambient, [], [])
    r, pivots, rank = rref(RatMatrix(vectors, cols=ambient))
    return SubspaceBasis(ambient, r.data[:rank], pivots)


def kernel_basis(m):
    """Canonical basis of {v : m v = 0}."""
    r, pivots, rank = rref(m)
    pivset = set(pivots)
    free = [c for c in range(m.cols) if c not in pivset]
    vecs = []
    for f in free:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -r.data[i][f]
        vecs.append(v)
    return span_basis(vecs, m.cols)


def image_basis(m):
    """Canonical basis of the column space."""
    return span_basis(m.transpose().data, m.rows)


def quotient_basis(sub, within):
    """Coset representatives spanning within/sub.

    Representatives are drawn from `within`'s echelon vectors, reduced
    modulo `sub`; their count is dim(within) - dim(sub).
    """
    if sub.ambient != within.ambient:
        raise LinalgError("ambient dimensions differ")
    for i, v in enumerate(sub.vectors):
        if not within.contains(v):
            raise LinalgError(
                f"containment violation: sub basis vector {i} "
                f"({[str(x) for x in v]}) is not in the larger subspace")
    stack = [list(v) for v in sub.vectors]
    stack_pivots = list(sub.pivots)
    reps = []
    for w in within.vectors:
        v = list(w)
        # reduce against the growing echelon stack
        changed = True
        while changed:
            changed = False
            for row, c in zip(stack, stack_pivots):
                if v[c]:
                    f = v[c] / row[c]
                    for j in range(len(v)):
                        v[j] -= f * row[j]
                    changed = True
        lead = next((j for j, x in enumerate(v) if x), None)
        if lead is None:
            continue
        v = [x / v[lead] for x in v]
        reps.append(v)
        k = 0
        while k < len(stack_pivots) and stack_pivots[k] < lead:
            k += 1
        stack.insert(k, v)
        stack_pivots.insert(k, lead)
    return reps


class NoSolution:
    """Inconsistency certificate: y with y.m = 0 but y.b != 0."""

    __slots__ = ("row", "certificate")

    def __init__(self, row, certificate):
        self.row = row
        self.certificate = certificate

    def __bool__(self):
        return False

    def __repr__(self):
        return f"NoSolution(row {self.row})"


def solve(m, b):
    """One exact solution of m x = b (free variables zeroed), or NoSolution.

    The NoSolution certificate y satisfies y.m = 0 and y.b = 1.
    """
    if len(b) != m.rows:
        raise LinalgError(f"rhs length {len(b)} vs {m.rows} rows")
    n = m.rows
    aug = [list(m.data[i]) + [Fraction(b[i])]
           + [Fraction(1 if j == i else 0) for j in range(n)]
           for i in range(n)]
    rows = [_integerize(r) for r in aug]
    width = m.cols + 1 + n
    pivots = _forward_eliminate(rows, width, limit=m.cols + 1)
    rank = len(pivots)
    if pivots and pivots[-1] == m.cols:
        r = rank - 1
        scale = Fraction(1, rows[r][m.cols])
        cert = [scale * rows[r][m.cols + 1 + j] for j in range(n)]
        return NoSolution(r, cert)
    # rational back substitution on the coefficient block
    out = [[Fraction(x) for x in row[:m.cols + 1]] for row in rows]
    for i in reversed(range(rank)):
        c = pivots[i]
        p = out[i][c]
        out[i] = [x / p for x in out[i]]
        for r in range(i):
            f = out[r][c]
            if f:
                out[r] = [out[r][j] - f * out[i][j] for j in range(m.cols + 1)]
    x = [Fraction(0)] * m.cols
    for i, c in enumerate(pivots):
        x[c] = out[i][m.cols]
    return x
