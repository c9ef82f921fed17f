"""Sparse exact linear algebra over the rationals.

Vectors are dicts column-index -> Fraction with no stored zeros; matrices are
lists of such rows.  Elimination pivots on the smallest available column
index, so echelon forms, ranks, kernels and representatives are deterministic
functions of the input order -- required for reproducible reports.
"""

from __future__ import annotations

from fractions import Fraction

QQ = Fraction


def vec_add(u, v, c=QQ(1)):
    """u + c*v as sparse dicts."""
    out = dict(u)
    for j, x in v.items():
        s = out.get(j, QQ(0)) + c * x
        if s:
            out[j] = s
        elif j in out:
            del out[j]
    return out

def vec_scale(u, c):
    return {j: c * x for j, x in u.items()} if c else {}


class Echelon:
    """Row-echelon accumulator with unit pivots and full back-substitution."""

    def __init__(self):
        self.rows = {}  # pivot column -> reduced row (dict), row[pivot] == 1

    @property
    def rank(self):
        return len(self.rows)

    def reduce(self, vec):
        """Residual of vec modulo the row space (fully reduced)."""
        vec = dict(vec)
        while True:
            hit = None
            for j in vec:
                if j in self.rows:
                    if hit is None or j < hit:
                        hit = j
            if hit is None:
                return vec
            vec = vec_add(vec, self.rows[hit], -vec[hit])

    def add(self, vec):
        """Insert vec; returns the pivot column or None if dependent."""
        res = self.reduce(vec)
        if not res:
            return None
        piv = min(res)
        row = vec_scale(res, 1 / res[piv])
        # keep earlier rows fully reduced against the new pivot
        for p, r in list(self.rows.items()):
            if piv in r:
                self.rows[p] = vec_add(r, row, -r[piv])
        self.rows[piv] = row
        return piv

    def contains(self, vec):
        return not self.reduce(vec)


class ForwardSpan:
    """Echelon without back-substitution; cheaper for large relation spans.

    Residuals of `reduce` are still canonical coset representatives (their
    support avoids every pivot column), so membership tests and quotient
    coordinates are deterministic.
    """

    def __init__(self):
        self.rows = {}

    @property
    def rank(self):
        return len(self.rows)

    def reduce(self, vec):
        vec = dict(vec)
        while True:
            hit = None
            for j in vec:
                if j in self.rows and (hit is None or j < hit):
                    hit = j
            if hit is None:
                return vec
            vec = vec_add(vec, self.rows[hit], -vec[hit])

    def add(self, vec):
        res = self.reduce(vec)
        if not res:
            return None
        piv = min(res)
        self.rows[piv] = vec_scale(res, 1 / res[piv])
        return piv

    def contains(self, vec):
        return not self.reduce(vec)


def rank(rows):
    ech = Echelon()
    for r in rows:
        ech.add(r)
    return ech.rank


def kernel_basis(rows, ncols):
    """Basis of the right kernel {x : A x = 0}, deterministic order.

    `rows` are the equations (rows of A); columns 0..ncols-1 are unknowns.
    """
    ech = Echelon()
    for r in rows:
        ech.add(r)
    pivots = set(ech.rows)
    basis = []
    for j in range(ncols):
        if j in pivots:
            continue
        # free column j: x_j = 1, pivot variables solved from reduced rows
        vec = {j: QQ(1)}
        for p, row in ech.rows.items():
            c = row.get(j)
            if c:
                vec[p] = -c
        basis.append(vec)
    return basis


def solve(rows, rhs, ncols):
    """One solution x of A x = b, or None.  rhs is a list aligned with rows."""
    ech = Echelon()
    aug = ncols  # the extra column carries the (negated) right-hand side
    for r, b in zip(rows, rhs):
        v = dict(r)
        if b:
            v[aug] = -b
        ech.add(v)
    # a pivot in the augmented column means the system forces 0 = 1
    if aug in ech.rows:
        return None
    sol = {}
    for p, row in ech.rows.items():
        c = row.get(aug)
        if c:
            sol[p] = -c
    return sol


def quotient_dimension(space_vectors, sub_vectors):
    """dim(span(space) / span(sub)); sub must lie inside span(space)."""
    ech = Echelon()
    for v in sub_vectors:
        ech.add(v)
    sub_rank = ech.rank
    for v in space_vectors:
        ech.add(v)
    return ech.rank - sub_rank


def quotient_representatives(space_vectors, sub_vectors):
    """Representatives of a basis of span(space)/span(sub), deterministically."""
    ech = Echelon()
    for v in sub_vectors:
        ech.add(v)
    reps = []
    for v in space_vectors:
        if ech.add(v) is not None:
            reps.append(v)
    return reps
