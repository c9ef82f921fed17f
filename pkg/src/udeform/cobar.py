"""The cobar construction in cohomological degrees <= 3 and the twist moduli.

Two independent computations of the same space live here:

* ``h2``         -- kernel/image ranks of the differential of the cobar
  complex on the counit kernel, per block;
* ``twi_direct`` -- the solution space of the additive twist equation on the
  full B@B, modulo the additive gauge action.

Their agreement (identical block dimensions, gauge-equivalent
representatives) is a theorem and doubles as the oracle test for both
implementations.

Blocks: primitively generated kinds are sliced by internal degree (their
coproduct is degree-graded).  Grouplike-flavored kinds (monoid,
matrix-coordinate) are not graded that way, but every degree-<=D truncation
is a subcoalgebra, so they are handled as one finite block.
"""

from __future__ import annotations

import itertools

from .kernel import QQ
from .bialgebra import TensorElement
from .linalg import Echelon, kernel_basis, quotient_representatives
from .reports import CheckReport

GRADED_KINDS = ("polynomial-primitive", "tensor-primitive")


def lambda_expected(num_primitives):
    """Expected total H^2 dimension for a primitively generated polynomial
    bialgebra on k generators: the dimension k(k-1)/2 of the degree-2 part
    of the exterior algebra on the primitives."""
    k = num_primitives
    if k < 0:
        raise ValueError("the number of primitives is nonnegative")
    return k * (k - 1) // 2


# ---------------------------------------------------------------------------
# the counit kernel and its reduced diagonal
# ---------------------------------------------------------------------------

def reduced_diagonal(u):
    """Delta(u) - u@1 - 1@u for u with eps(u) = 0; lands in Bbar @ Bbar."""
    if u.arity != 1:
        raise ValueError("the reduced diagonal acts on arity-1 elements")
    B = u.parent
    if u.apply_counit(1).scalar_value() != 0:
        raise ValueError("reduced diagonal needs eps(u) = 0")
    out = u.apply_coproduct(1) - u.outer(B.one(1)) - B.one(1).outer(u)
    assert is_reduced_member(out), "reduced diagonal left Bbar @ Bbar"
    return out


def reduced_keys(B, max_degree):
    """Non-unit basis keys; key m stands for the class of m - eps(m)1."""
    return [k for k in B.basis_keys(max_degree) if k != B.unit_key]


def embed_reduced(B, coords, arity):
    """Expand reduced coordinates into B^(@arity) via m -> m - eps(m)1."""
    out = B.zero(arity)
    for keys, c in coords.items():
        piece = TensorElement(B, 0, {(): c})
        for k in keys:
            e = B.element({k: QQ(1)})
            eps = B.counit_key(k)
            if eps:
                e = e - B.one(1).scale(eps)
            piece = piece.outer(e)
        out = out + piece
    return out


def extract_reduced(T):
    """Coordinates of a (Bbar)^(@n) member: drop every unit-slot term."""
    B = T.parent
    unit = B.unit_key
    return {keys: c for keys, c in T.terms.items() if unit not in keys}


def is_reduced_member(T):
    """Does T lie in the embedded (Bbar)^(@n) inside B^(@n)?"""
    return embed_reduced(T.parent, extract_reduced(T), T.arity) == T


class CobarCochain:
    """A cochain of word length 1, 2 or 3 with value in (Bbar)^(@w)."""

    def __init__(self, value, word_length=None):
        w = value.arity if word_length is None else word_length
        if w not in (1, 2, 3):
            raise ValueError("supported word lengths are 1, 2, 3")
        if value.arity != w:
            raise ValueError("value arity does not match the word length")
        if not is_reduced_member(value):
            raise ValueError("cochain values live in the counit kernel slots")
        self.word_length = w
        self.value = value

    def internal_degree(self):
        parts = self.value.homogeneous_parts()
        if len(parts) > 1:
            raise ValueError("cochain is not internal-degree homogeneous")
        return next(iter(parts), 0)

    def differential(self):
        """d1 = reduced diagonal; d2(x@y) = dbar(x)@y - x@dbar(y)."""
        if self.word_length >= 3:
            raise ValueError("only differentials out of word length <= 2 ship")
        v = self.value
        B = v.parent
        if self.word_length == 1:
            out = _reduced_coproduct_slot(v, 1)
        else:
            out = _reduced_coproduct_slot(v, 1) - _reduced_coproduct_slot(v, 2)
        return CobarCochain(out, self.word_length + 1)


def _insert_unit(T, position):
    """Insert a unit tensor factor so it becomes slot `position` (1-based)."""
    B = T.parent
    out = {}
    i = position - 1
    for keys, c in T.terms.items():
        out[keys[:i] + (B.unit_key,) + keys[i:]] = c
    return TensorElement(B, T.arity + 1, out)


def _reduced_coproduct_slot(T, slot):
    """Apply the reduced diagonal to one slot of a (Bbar)-tensor."""
    return (
        T.apply_coproduct(slot)
        - _insert_unit(T, slot + 1)
        - _insert_unit(T, slot)
    )


# ---------------------------------------------------------------------------
# block-by-block linear algebra
# ---------------------------------------------------------------------------

class ModuliBlock:
    """One block of the moduli computation (per degree, or the single block)."""

    def __init__(self, degree, dim, representatives, solutions=None, gauge=None):
        self.degree = degree          # int, or None for the unsliced block
        self.dim = dim
        self.representatives = representatives  # tensors in B@B
        self.solutions = solutions or []
        self.gauge = gauge or []

    def to_json(self):
        return {
            "degree": self.degree,
            "dim": self.dim,
            "representatives": [r.render() for r in self.representatives],
        }

    def __repr__(self):
        return "<block degree=%s dim=%d>" % (self.degree, self.dim)


def _is_graded(B):
    return B.spec.kind in GRADED_KINDS


def _block_labels(B, cutoff):
    if _is_graded(B):
        return list(range(cutoff + 1))
    return [None]


def _keys_for_block(B, cutoff, label, reduced):
    pool = reduced_keys(B, cutoff) if reduced else B.basis_keys(cutoff)
    if label is None:
        return pool
    return [k for k in pool if B.degree(k) == label]


def _tuples_for_block(B, cutoff, label, arity, reduced):
    """Key tuples of the given arity in one block, deterministically ordered."""
    pool = reduced_keys(B, cutoff) if reduced else B.basis_keys(cutoff)
    if label is None:
        return list(itertools.product(pool, repeat=arity))
    by_degree = {}
    for k in pool:
        by_degree.setdefault(B.degree(k), []).append(k)
    degrees = sorted(by_degree)
    out = []
    for combo in itertools.product(degrees, repeat=arity):
        if sum(combo) != label:
            continue
        out.extend(itertools.product(*(by_degree[d] for d in combo)))
    return out


def _reduced_pair_coords(B, m):
    """Reduced coordinates of dbar(m - eps(m)1) as dict pair-of-keys -> c."""
    e = B.element({m: QQ(1)})
    eps = B.counit_key(m)
    if eps:
        e = e - B.one(1).scale(eps)
    img = reduced_diagonal(e)
    return extract_reduced(img)


class CobarComplex:
    """d1 and d2 of the cobar construction, sliced into finite blocks.

    d2 o d1 = 0 is asserted per block at build time.
    """

    def __init__(self, B, cutoff):
        B.require_counit()
        self.B = B
        self.cutoff = cutoff
        self.graded = _is_graded(B)
        self._dbar = {}  # key -> reduced pair coords, shared across blocks
        for m in reduced_keys(B, cutoff):
            self._dbar[m] = _reduced_pair_coords(B, m)
        self.blocks = {}
        for label in _block_labels(B, cutoff):
            self.blocks[label] = self._build_block(label)

    def _build_block(self, label):
        B = self.B
        keys1 = _keys_for_block(B, self.cutoff, label, reduced=True)
        pairs = _tuples_for_block(B, self.cutoff, label, 2, reduced=True)
        triples = _tuples_for_block(B, self.cutoff, label, 3, reduced=True)
        pair_index = {p: i for i, p in enumerate(pairs)}
        triple_index = {t: i for i, t in enumerate(triples)}

        dbar = self._dbar

        d1_cols = []
        for m in keys1:
            col = {}
            for (a, b), c in dbar[m].items():
                col[pair_index[(a, b)]] = c
            d1_cols.append(col)

        d2_cols = []
        for (m, n) in pairs:
            col = {}
            for (a, b), c in dbar[m].items():
                idx = triple_index[(a, b, n)]
                col[idx] = col.get(idx, QQ(0)) + c
            for (a, b), c in dbar[n].items():
                idx = triple_index[(m, a, b)]
                col[idx] = col.get(idx, QQ(0)) - c
            d2_cols.append({k: v for k, v in col.items() if v})

        # the complex property, blockwise
        for j, m in enumerate(keys1):
            acc = {}
            for pi, c in d1_cols[j].items():
                for ti, c2 in d2_cols[pi].items():
                    s = acc.get(ti, QQ(0)) + c * c2
                    if s:
                        acc[ti] = s
                    elif ti in acc:
                        del acc[ti]
            assert not acc, "d2 o d1 != 0 at key %s" % (B.key_str(m),)

        return {
            "keys1": keys1,
            "pairs": pairs,
            "triples": triples,
            "pair_index": pair_index,
            "triple_index": triple_index,
            "d1_cols": d1_cols,
            "d2_cols": d2_cols,
        }


def h2(B, cutoff):
    """Second cohomology of the cobar construction, per block.

    Per block: dim ker d2 - rank d1, with representatives embedded back into
    B@B and chosen deterministically.
    """
    complex_ = CobarComplex(B, cutoff)
    out = []
    for label, blk in complex_.blocks.items():
        npairs = len(blk["pairs"])
        # rows of d2 as a matrix: one row per triple coordinate
        rows = {}
        for col, colvec in enumerate(blk["d2_cols"]):
            for ti, c in colvec.items():
                rows.setdefault(ti, {})[col] = c
        kernel = kernel_basis(list(rows.values()), npairs)
        image = [col for col in blk["d1_cols"] if col]
        reps = quotient_representatives(kernel, image)
        dim = len(reps)
        embedded = [
            embed_reduced(B, {blk["pairs"][j]: c for j, c in vec.items()}, 2)
            for vec in reps
        ]
        out.append(
            ModuliBlock(
                label,
                dim,
                embedded,
                solutions=[
                    embed_reduced(B, {blk["pairs"][j]: c for j, c in vec.items()}, 2)
                    for vec in kernel
                ],
                gauge=[
                    embed_reduced(B, {blk["pairs"][j]: c for j, c in vec.items()}, 2)
                    for vec in image
                ],
            )
        )
    return out


def twi_direct(B, cutoff):
    """Solutions of the additive twist equation on the full B@B, mod gauge.

    The linear system is not pre-reduced to the counit kernel: unknowns run
    over all pairs of basis keys in the block, and the gauge span includes
    gamma = 1.  Agreement with h2 is the Prop-style oracle equivalence.
    """
    B.require_counit()
    out = []
    for label in _block_labels(B, cutoff):
        pairs = _tuples_for_block(B, cutoff, label, 2, reduced=False)
        triples = _tuples_for_block(B, cutoff, label, 3, reduced=False)
        pair_index = {p: i for i, p in enumerate(pairs)}
        triple_index = {t: i for i, t in enumerate(triples)}
        unit = B.unit_key

        rows = {}

        def put(ti, col, c):
            row = rows.setdefault(ti, {})
            s = row.get(col, QQ(0)) + c
            if s:
                row[col] = s
            elif col in row:
                del row[col]

        for col, (m, n) in enumerate(pairs):
            for (a, b), c in B.coproduct_key(m).items():
                put(triple_index[(a, b, n)], col, c)          # (Delta @ id) xi
            put(triple_index[(m, n, unit)], col, QQ(1))       # xi @ 1
            for (a, b), c in B.coproduct_key(n).items():
                put(triple_index[(m, a, b)], col, -c)         # -(id @ Delta) xi
            put(triple_index[(unit, m, n)], col, QQ(-1))      # -1 @ xi

        kernel = kernel_basis(list(rows.values()), len(pairs))

        gauge_keys = _keys_for_block(B, cutoff, label, reduced=False)
        gauge_vecs = []
        for g in gauge_keys:
            img = {}
            for (a, b), c in B.coproduct_key(g).items():
                img[(a, b)] = img.get((a, b), QQ(0)) + c
            img[(unit, g)] = img.get((unit, g), QQ(0)) - 1
            img[(g, unit)] = img.get((g, unit), QQ(0)) - 1
            vec = {pair_index[p]: c for p, c in img.items() if c}
            if vec:
                gauge_vecs.append(vec)

        # every gauge vector solves the equation; a failure here is a bug
        ech = Echelon()
        for v in kernel:
            ech.add(v)
        for v in gauge_vecs:
            assert ech.contains(v), "gauge image is not a solution"

        reps = quotient_representatives(kernel, gauge_vecs)

        def to_tensor(vec):
            return TensorElement(B, 2, {pairs[j]: c for j, c in vec.items()})

        out.append(
            ModuliBlock(
                label,
                len(reps),
                [to_tensor(v) for v in reps],
                solutions=[to_tensor(v) for v in kernel],
                gauge=[to_tensor(v) for v in gauge_vecs],
            )
        )
    return out


# ---------------------------------------------------------------------------
# cross-checks
# ---------------------------------------------------------------------------

def profile(blocks):
    """The graded dimension profile as a sorted list of (degree, dim)."""
    return sorted(
        ((b.degree if b.degree is not None else -1), b.dim) for b in blocks
    )


def corner_solutions_trivial(B, blocks):
    """Each solution's component in k@B + B@k must be a multiple of 1@1.

    The component is taken with respect to the splitting
    B@B = (k@B + B@k) + (embedded Bbar@Bbar): subtract the embedded reduced
    part and what remains has to be proportional to 1@1.
    """
    unit = B.unit_key
    for blk in blocks:
        for sol in blk.solutions:
            corner = sol - embed_reduced(B, extract_reduced(sol), 2)
            for keys, c in corner.terms.items():
                if keys != (unit, unit):
                    return False, {"degree": blk.degree, "term": sol.render()}
    return True, None


def gauge_equivalent(B, blk_a, blk_b):
    """Do two blocks present the same classes?  (Same span modulo gauge.)"""
    def coords(T):
        return {keys: c for keys, c in T.terms.items()}

    index = {}

    def vec(T):
        out = {}
        for keys, c in coords(T).items():
            if keys not in index:
                index[keys] = len(index)
            out[index[keys]] = c
        return out

    span_a = Echelon()
    for g in blk_a.gauge + blk_b.gauge:
        span_a.add(vec(g))
    for r in blk_a.representatives:
        span_a.add(vec(r))
    rank_a = span_a.rank
    for r in blk_b.representatives:
        span_a.add(vec(r))
    return span_a.rank == rank_a and blk_a.dim == blk_b.dim


def check_oracle_agreement(B, cutoff):
    """Compare h2 and twi_direct: profiles match, representatives agree."""
    report = CheckReport("moduli oracle agreement (%s)" % B.spec.kind)
    blocks_h2 = h2(B, cutoff)
    blocks_twi = twi_direct(B, cutoff)
    report.add(
        "graded dimension profiles are identical",
        profile(blocks_h2) == profile(blocks_twi),
        {
            "h2": profile(blocks_h2),
            "twi": profile(blocks_twi),
        },
    )
    by_label_h2 = {b.degree: b for b in blocks_h2}
    by_label_twi = {b.degree: b for b in blocks_twi}
    ok = True
    witness = None
    for label, blk in by_label_twi.items():
        other = by_label_h2.get(label)
        if other is None:
            if blk.dim:
                ok, witness = False, {"degree": label}
                break
            continue
        if not gauge_equivalent(B, blk, other):
            ok, witness = False, {"degree": label}
            break
    report.add("representatives are gauge-equivalent", ok, witness)
    ok, witness = corner_solutions_trivial(B, blocks_twi)
    report.add("corner components of solutions are multiples of 1@1", ok, witness)
    return report
