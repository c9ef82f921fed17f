"""Twisting elements and universal deformation formulas over Q[[t]]/t^(N+1).

A twisting element is an arity-2 tensor F over a bialgebra subject to the
hexagon-style condition

    (d1)  [(Delta @ id)(F)] (F @ 1)  =  [(id @ Delta)(F)] (1 @ F)

and, in the counital variant,

    (d2)  (eps @ id)(F) = 1 = (id @ eps)(F).

Everything t-dependent is carried as a TruncSeries whose coefficients are
tensors, so the generic series arithmetic of the kernel module does all the
order bookkeeping.  A UDF is a twisting element of the shape 1@1 + (ideal
part); gauge elements G = 1 + (ideal part) act by F -> Delta(G) F (G^-1 @
G^-1).  For commutative coefficients the formal logarithm turns all of this
into linear algebra (the additive picture), and over one-generator
polynomial bialgebras there is a further dictionary into bivariate
polynomials and a functional equation.
"""

from __future__ import annotations

from fractions import Fraction

from .bialgebra import TensorElement
from .kernel import Monomial, Polynomial, QQ, TruncSeries, as_scalar, series_bilinear
from .linalg import solve as linalg_solve
from .operad import circ_B
from .reports import CheckReport

DEFAULT_ORDER = 6


# ---------------------------------------------------------------------------
# series-of-tensors helpers
# ---------------------------------------------------------------------------

def constant_series(te, order):
    """The tensor te regarded as a series concentrated in t^0."""
    return TruncSeries([te] + [te.zero_like()] * order)

def series_from_orders(B, arity, order, coeffs):
    """Series with prescribed tensor coefficients, dict t-order -> tensor."""
    slots = []
    for k in range(order + 1):
        c = coeffs.get(k)
        slots.append(B.zero(arity) if c is None else c)
    return TruncSeries(slots)

def series_outer(a, b):
    """Tensor-concatenation of two tensor-valued series (Cauchy pattern)."""
    return series_bilinear(lambda x, y: x.outer(y), a, b)

def series_coproduct(s, slot):
    return s.map_coeffs(lambda c: c.apply_coproduct(slot))

def series_counit(s, slot):
    return s.map_coeffs(lambda c: c.apply_counit(slot))

def series_permute(s, sigma):
    return s.map_coeffs(lambda c: c.permute(tuple(sigma)))

def series_circ(a, i, b):
    """Multiplicative operadic composition extended over series (bilinear)."""
    return series_bilinear(lambda x, y: circ_B(x, i, y), a, b)

def first_failing_order(a, b):
    """Index of the first differing coefficient of two series, or None."""
    for k in range(a.order + 1):
        if a.coeffs[k] != b.coeffs[k]:
            return k
    return None


# ---------------------------------------------------------------------------
# twisting elements
# ---------------------------------------------------------------------------

class TwistingElement:
    """An arity-2 tensor series; validity is established by check(), never assumed."""

    def __init__(self, series):
        first = series.coeffs[0]
        if not isinstance(first, TensorElement) or first.arity != 2:
            raise ValueError("twisting elements are arity-2 tensor series")
        for c in series.coeffs:
            if c.parent is not first.parent or c.arity != 2:
                raise ValueError("series coefficients disagree on parent or arity")
        self.series = series
        self._verdicts = {}

    @staticmethod
    def from_tensor(te, order=0):
        return TwistingElement(constant_series(te, order))

    @property
    def parent(self):
        return self.series.coeffs[0].parent

    @property
    def order(self):
        return self.series.order

    def coefficient(self, k):
        return self.series.coeffs[k]

    def check(self, counital=True, symmetric=False):
        key = (self.order, bool(counital), bool(symmetric))
        hit = self._verdicts.get(key)
        if hit is None:
            hit = check_twisting(self, counital=counital, symmetric=symmetric)
            self._verdicts[key] = hit
        return hit

    def __eq__(self, other):
        return isinstance(other, TwistingElement) and self.series == other.series

    def render(self):
        return repr(self.series)


class UDF(TwistingElement):
    """Twisting element of the shape 1@1 + t F1 + t^2 F2 + ..."""

    def __init__(self, series):
        super().__init__(series)
        if self.series.coeffs[0] != self.parent.one(2):
            raise ValueError("a UDF starts at 1@1 in the t^0 slot")


class GaugeElement:
    """G = 1 + (ideal part) in B[[t]]/t^(N+1), with its inverse cached.

    Over a counital bialgebra the ideal part must be counit-free: a gauge
    with eps(G) != 1 rescales the twist by the unit scalar series eps(G)^-1,
    which breaks the counit normalization the gauge action is supposed to
    preserve.
    """

    def __init__(self, series):
        first = series.coeffs[0]
        if not isinstance(first, TensorElement) or first.arity != 1:
            raise ValueError("gauge elements are arity-1 tensor series")
        if first != first.parent.one(1):
            raise ValueError("a gauge element starts at 1 in the t^0 slot")
        if first.parent.counital:
            for k in range(1, series.order + 1):
                if series.coeffs[k].apply_counit(1).scalar_value():
                    raise ValueError(
                        "gauge elements are counit-normalized: eps vanishes "
                        "on the ideal part (fails at order %d)" % k
                    )
        self.series = series
        self._inverse = None

    @property
    def parent(self):
        return self.series.coeffs[0].parent

    @property
    def order(self):
        return self.series.order

    def inverse(self):
        if self._inverse is None:
            self._inverse = self.series.inverse()
            assert (self.series * self._inverse) == constant_series(
                self.parent.one(1), self.order
            )
        return self._inverse


class AdditiveTwist:
    """Arity-2 tensor series with no t^0 part; the logarithmic picture."""

    def __init__(self, series):
        first = series.coeffs[0]
        if not isinstance(first, TensorElement) or first.arity != 2:
            raise ValueError("additive twists are arity-2 tensor series")
        if first:
            raise ValueError("an additive twist has zero t^0 part")
        self.series = series

    @property
    def parent(self):
        return self.series.coeffs[0].parent

    @property
    def order(self):
        return self.series.order

    def __eq__(self, other):
        return isinstance(other, AdditiveTwist) and self.series == other.series


# ---------------------------------------------------------------------------
# the checkers
# ---------------------------------------------------------------------------

def _tensor_witness(order, diff):
    return {
        "first_failing_order": order,
        "difference": diff.render(),
    }


def check_twisting(F, counital=True, symmetric=False):
    """Verify (d1), optionally (d2) and the symmetry F = tau F, exactly.

    Works order by order in t; the witness names the first failing order and
    the offending difference tensor.
    """
    if isinstance(F, TensorElement):
        F = TwistingElement.from_tensor(F)
    B = F.parent
    s = F.series
    report = CheckReport("twisting element over %s" % B.spec.kind)

    one1 = constant_series(B.one(1), F.order)
    lhs = series_coproduct(s, 1) * series_outer(s, one1)
    rhs = series_coproduct(s, 2) * series_outer(one1, s)
    k = first_failing_order(lhs, rhs)
    report.add(
        "(d1) cocycle identity",
        k is None,
        None if k is None else _tensor_witness(k, lhs.coeffs[k] - rhs.coeffs[k]),
    )

    if counital:
        B.require_counit()
        target = constant_series(B.one(1), F.order)
        left = series_counit(s, 1)
        right = series_counit(s, 2)
        k = first_failing_order(left, target)
        if k is None:
            k = first_failing_order(right, target)
            side = "right"
        else:
            side = "left"
        report.add(
            "(d2) counit normalization",
            k is None,
            None if k is None else {"first_failing_order": k, "side": side},
        )

    if symmetric:
        flipped = series_permute(s, (2, 1))
        k = first_failing_order(s, flipped)
        report.add(
            "symmetry F = tau F",
            k is None,
            None
            if k is None
            else _tensor_witness(k, s.coeffs[k] - flipped.coeffs[k]),
        )

    return report


def make_exp_udf(r, order=DEFAULT_ORDER):
    """exp(t*r) as a UDF, for r an arity-2 tensor over a commutative bialgebra.

    Over a noncommutative coefficient algebra exp is not multiplicative and
    the result would be unvalidated, so this constructor refuses.
    """
    if r.arity != 2:
        raise ValueError("the exponent must be an arity-2 tensor")
    B = r.parent
    if not B.is_commutative():
        raise ValueError(
            "exp twists need a commutative bialgebra; %s is not" % B.spec.kind
        )
    x = series_from_orders(B, 2, order, {1: r})
    return UDF(x.exp())


def gauge_transform(F, G):
    """Delta(G) F (G^-1 @ G^-1); preserves (d1)-validity, which is re-verified."""
    if not isinstance(F, UDF):
        raise ValueError("gauge transforms act on UDFs")
    if F.parent is not G.parent:
        raise ValueError("UDF and gauge element live over different bialgebras")
    if F.order != G.order:
        raise ValueError("truncation orders differ")
    ginv = G.inverse()
    out = series_coproduct(G.series, 1) * F.series * series_outer(ginv, ginv)
    result = UDF(out)
    d1_before = F.check(counital=False).passed
    if d1_before and not result.check(counital=False).passed:
        raise AssertionError("gauge transform broke (d1); this is a bug")
    return result


def additive_twist_equation(f):
    """Check (Delta@id)f + f@1 = (id@Delta)f + 1@f; returns a report."""
    s = f.series if isinstance(f, AdditiveTwist) else f
    B = s.coeffs[0].parent
    one1 = constant_series(B.one(1), s.order)
    lhs = series_coproduct(s, 1) + series_outer(s, one1)
    rhs = series_coproduct(s, 2) + series_outer(one1, s)
    report = CheckReport("additive twist equation")
    k = first_failing_order(lhs, rhs)
    report.add(
        "additive cocycle identity",
        k is None,
        None if k is None else _tensor_witness(k, lhs.coeffs[k] - rhs.coeffs[k]),
    )
    return report


def _require_log_trick(B, order):
    if not (B.is_commutative() or order <= 1):
        raise ValueError(
            "the logarithm dictionary needs a commutative bialgebra or order 1"
        )


def to_additive(F):
    """f = log(F); valid for commutative B or truncation order 1.

    The two pictures are equivalent, and that equivalence is re-checked here:
    f solves the additive equation exactly when F satisfies (d1).
    """
    if not isinstance(F, UDF):
        raise ValueError("the logarithm is taken of a UDF")
    B = F.parent
    _require_log_trick(B, F.order)
    f = AdditiveTwist(F.series.log())
    mult_ok = F.check(counital=False).passed
    add_ok = additive_twist_equation(f).passed
    if mult_ok != add_ok:
        raise AssertionError(
            "logarithm broke the twist-equation equivalence; this is a bug"
        )
    return f


def from_additive(f):
    """exp(f); inverse of to_additive under the same hypotheses."""
    B = f.parent
    _require_log_trick(B, f.order)
    return UDF(f.series.exp())


def additive_gauge(f, g):
    """f + Delta(g) - 1@g - g@1 for g an arity-1 series with zero t^0 part."""
    if not isinstance(g, TruncSeries):
        raise ValueError("g must be an arity-1 tensor series")
    gs = g
    B = f.parent
    _require_log_trick(B, f.order)
    if gs.coeffs[0]:
        raise ValueError("additive gauge elements have zero t^0 part")
    one1 = constant_series(B.one(1), f.order)
    shift = series_coproduct(gs, 1) - series_outer(one1, gs) - series_outer(gs, one1)
    return AdditiveTwist(f.series + shift)


def rescale(F, a):
    """Normalize a general morphism pair (F, a) by the literal 1/a rescaling.

    Preconditions: F o_1 F = F o_2 F and a*(eps@id)F = 1 = a*(id@eps)F.
    The rescaled twist (1/a)F is then validated against the counit
    normalization; pairs whose rescaling fails it are rejected.
    """
    a = as_scalar(a)
    if a == 0:
        raise ValueError("the arity-0 value must be nonzero")
    if not isinstance(F, TensorElement) or F.arity != 2:
        raise ValueError("rescale acts on plain arity-2 tensors")
    B = F.parent
    one3 = B.one(1)
    d1_lhs = F.apply_coproduct(1) * F.outer(one3)
    d1_rhs = F.apply_coproduct(2) * one3.outer(F)
    if d1_lhs != d1_rhs:
        raise ValueError("pair rejected: F does not satisfy the cocycle relation")
    one = B.one(1)
    if a * F.apply_counit(1) != one or a * F.apply_counit(2) != one:
        raise ValueError("pair rejected: a*(eps@id)F = 1 fails")
    scaled = F.scale(1 / a)
    if scaled.apply_counit(1) != one or scaled.apply_counit(2) != one:
        raise ValueError(
            "pair rejected: the rescaled twist fails the counit normalization"
        )
    return scaled, QQ(1)


# ---------------------------------------------------------------------------
# first-order gauge search
# ---------------------------------------------------------------------------

def first_order_gauge(F1, F2, degree_bound=None):
    """Find g in B with F2_1 - F1_1 = Delta(g) - 1@g - g@1, or None.

    Only the t^1 layer is searched (a finite linear solve over the
    degree-bounded basis of B); higher orders are out of scope.
    """
    s1 = F1.series if isinstance(F1, TwistingElement) else F1
    s2 = F2.series if isinstance(F2, TwistingElement) else F2
    B = s1.coeffs[0].parent
    bound = B.cutoff if degree_bound is None else degree_bound
    target = s2.coeffs[1] - s1.coeffs[1]

    gamma_keys = B.basis_keys(bound)
    pair_index = {}
    rows_by_pair = {}

    def pair_col(keys):
        if keys not in pair_index:
            pair_index[keys] = len(pair_index)
        return pair_index[keys]

    columns = []
    for k in gamma_keys:
        e = B.element({k: QQ(1)})
        img = e.apply_coproduct(1) - B.one(1).outer(e) - e.outer(B.one(1))
        columns.append(img)
    # assemble rows: one equation per tensor pair appearing anywhere
    for img in columns + [target]:
        for keys in img.terms:
            pair_col(keys)
    nrows = len(pair_index)
    rows = [dict() for _ in range(nrows)]
    rhs = [QQ(0)] * nrows
    for col, img in enumerate(columns):
        for keys, c in img.terms.items():
            rows[pair_index[keys]][col] = c
    for keys, c in target.terms.items():
        rhs[pair_index[keys]] = c
    sol = linalg_solve(rows, rhs, len(columns))
    if sol is None:
        return None
    g = B.zero(1)
    for col, c in sol.items():
        g = g + B.element({gamma_keys[col]: c})
    return g


# ---------------------------------------------------------------------------
# the one-variable polynomial dictionary
# ---------------------------------------------------------------------------

def to_bivariate(F, names=("u1", "u2")):
    """Image of an arity-2 tensor (series) over k[p] in k[u1, u2].

    p^a @ p^b goes to u1^a u2^b; only single-generator polynomial-primitive
    parents admit this dictionary.
    """
    s = F.series if isinstance(F, TwistingElement) else F
    if isinstance(s, TensorElement):
        s = constant_series(s, 0)
    B = s.coeffs[0].parent
    if B.spec.kind != "polynomial-primitive" or len(B.spec.generators) != 1:
        raise ValueError("the bivariate dictionary needs one primitive generator")

    def convert(te):
        out = Polynomial()
        for (k1, k2), c in te.terms.items():
            e1 = dict(k1.exps).get(B.spec.generators[0], 0)
            e2 = dict(k2.exps).get(B.spec.generators[0], 0)
            out = out + Polynomial({Monomial({names[0]: e1, names[1]: e2}): c})
        return out

    return s.map_coeffs(convert)


def check_functional_equation(F, names=("u1", "u2", "u3")):
    """The three-variable coherence identity for a bivariate F, plus boundaries.

    F may be a Polynomial in (u1, u2) or a TruncSeries of such; the identity

        F(u1+u2, u3) F(u1, u2) = F(u1, u2+u3) F(u2, u3)

    is checked exactly (mod t^(N+1) for series), as are F(0,u) = F(u,0) = 1.
    """
    u1, u2, u3 = names
    if isinstance(F, Polynomial):
        F = TruncSeries([F])
    v1, v2, v3 = (Polynomial.variable(n) for n in names)
    zero = Polynomial()

    def sub(poly, img1, img2):
        return poly.substitute_linear({u1: img1, u2: img2})

    lhs = F.map_coeffs(lambda p: sub(p, v1 + v2, v3)) * F
    rhs = F.map_coeffs(lambda p: sub(p, v1, v2 + v3)) * F.map_coeffs(
        lambda p: sub(p, v2, v3)
    )
    report = CheckReport("functional equation")
    k = None
    witness = None
    for idx in range(F.order + 1):
        if lhs.coeffs[idx] != rhs.coeffs[idx]:
            k = idx
            diff = lhs.coeffs[idx] - rhs.coeffs[idx]
            first = sorted(diff.terms, key=Monomial.sort_key)[0]
            witness = {
                "first_failing_order": idx,
                "monomial": repr(first),
                "difference": repr(diff),
            }
            break
    report.add("three-variable identity", k is None, witness)

    one = Polynomial.constant(1)
    ok = True
    for img1, img2 in (((zero), v1), (v1, zero)):
        val = F.map_coeffs(lambda p: sub(p, img1, img2))
        expected = TruncSeries([one] + [zero] * F.order)
        if val != expected:
            ok = False
    report.add("boundary condition F(0,u) = F(u,0) = 1", ok)
    return report
