"""Beyond binary associative targets: ternary twists, interchange, diagrams.

Three generalizations of the twisting machinery live here.

* Partially associative ternary algebras: a twisting element F induces an
  arity-3 twist H = F o_1 F, and a bialgebra acting by ternary derivations
  deforms the ternary product slotwise.  The free (symmetric) partially
  associative algebra is built by explicit tree enumeration and exact
  relation-span elimination, leaf count by leaf count.

* Interchange algebras: a pair (F', F'') twists the two operations when the
  middle-interchange coherence identity holds in B^(@4); grouplike pairs in
  commutative monoid bialgebras are the standard solutions.

* Diagrams of module algebras: a single arrow carries an algebra morphism h
  and a bialgebra morphism phi (in the opposite direction) subject to
  b h(a) = h(phi(b) a); a twisting triple (F1, G, F2) deforms both nodes so
  that a -> h(G a) stays a morphism of the twisted algebras.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .bialgebra import CutoffError, TensorElement
from .deform import AlgebraElement, StarProduct, check_module_algebra
from .kernel import QQ, TruncSeries, as_scalar
from .linalg import ForwardSpan
from .reports import CheckReport
from .twist import (
    UDF,
    GaugeElement,
    TwistingElement,
    check_twisting,
    constant_series,
    first_failing_order,
    gauge_transform,
    series_circ,
    series_coproduct,
    series_outer,
    series_permute,
)

MAX_PUBLIC_LEAVES = 7

TAU_1324 = (1, 3, 2, 4)


# ---------------------------------------------------------------------------
# ternary trees and the free partially associative algebra
# ---------------------------------------------------------------------------

def _leaves(tree):
    if isinstance(tree, int):
        return 1
    return sum(_leaves(c) for c in tree)

def _tree_key(tree):
    if isinstance(tree, int):
        return (1, 0, tree)
    return (_leaves(tree), 1, tuple(_tree_key(c) for c in tree))

def _node(a, b, c, symmetric):
    children = (a, b, c)
    if symmetric:
        children = tuple(sorted(children, key=_tree_key))
    return children


class FreePAssAlgebra:
    """Free (optionally symmetric) partially associative ternary algebra.

    Basis classes are canonical trees modulo the graded relation span

        (a,b,(c,d,e)) + (a,(b,c,d),e) + ((a,b,c),d,e) = 0,

    eliminated exactly per leaf count.  The public basis stops at the
    construction cutoff, but the carrier extends itself on demand -- the
    twisted product raises leaf counts, and truncating silently would
    corrupt the relation checks.
    """

    def __init__(self, generators, leaf_cutoff, symmetric):
        if leaf_cutoff % 2 == 0:
            raise ValueError("leaf counts of ternary trees are odd")
        if leaf_cutoff > MAX_PUBLIC_LEAVES:
            raise ValueError(
                "leaf cutoff %d exceeds the resource guard %d"
                % (leaf_cutoff, MAX_PUBLIC_LEAVES)
            )
        if len(set(generators)) != len(generators):
            raise ValueError("duplicate generator names")
        self.generators = list(generators)
        self.leaf_cutoff = leaf_cutoff
        self.symmetric = bool(symmetric)
        self._trees = {}      # leaf count -> sorted list of canonical trees
        self._span = {}       # leaf count -> ForwardSpan over tree indices
        self._index = {}      # leaf count -> dict tree -> column
        self._built = 0

    # -- construction ---------------------------------------------------------
    def _ensure(self, n):
        count = self._built
        while count < n:
            count += 2 if count else 1
            self._build_count(count)
            self._built = count

    def _build_count(self, n):
        if n == 1:
            trees = list(range(len(self.generators)))
        else:
            seen = set()
            trees = []
            for a_leaves in range(1, n - 1, 2):
                for b_leaves in range(1, n - a_leaves, 2):
                    c_leaves = n - a_leaves - b_leaves
                    if c_leaves < 1 or c_leaves % 2 == 0:
                        continue
                    for a in self._trees[a_leaves]:
                        for b in self._trees[b_leaves]:
                            for c in self._trees[c_leaves]:
                                t = _node(a, b, c, self.symmetric)
                                if t not in seen:
                                    seen.add(t)
                                    trees.append(t)
            trees.sort(key=_tree_key)
        self._trees[n] = trees
        self._index[n] = {t: i for i, t in enumerate(trees)}
        span = ForwardSpan()
        self._span[n] = span
        if n < 5:
            return

        def tree_vec(parts):
            vec = {}
            for tree, c in parts:
                col = self._index[n][tree]
                s = vec.get(col, QQ(0)) + c
                if s:
                    vec[col] = s
                elif col in vec:
                    del vec[col]
            return vec

        seen_vecs = set()

        def feed(vec):
            if not vec:
                return
            frozen = frozenset(vec.items())
            if frozen in seen_vecs:
                return
            seen_vecs.add(frozen)
            span.add(vec)

        # direct relation instances on lower trees
        for split in _compositions(n, 5):
            pools = [self._trees[m] for m in split]
            for t1, t2, t3, t4, t5 in itertools.product(*pools):
                parts = [
                    (_node(t1, t2, _node(t3, t4, t5, self.symmetric), self.symmetric), QQ(1)),
                    (_node(t1, _node(t2, t3, t4, self.symmetric), t5, self.symmetric), QQ(1)),
                    (_node(_node(t1, t2, t3, self.symmetric), t4, t5, self.symmetric), QQ(1)),
                ]
                feed(tree_vec(parts))

        # relation consequences wrapped one node deeper
        for m in range(5, n - 1, 2):
            lower = self._span[m]
            if not lower.rows:
                continue
            rest = n - m
            for u_leaves in range(1, rest, 2):
                v_leaves = rest - u_leaves
                if v_leaves < 1 or v_leaves % 2 == 0:
                    continue
                for row in lower.rows.values():
                    terms = [(self._trees[m][col], c) for col, c in row.items()]
                    for u in self._trees[u_leaves]:
                        for v in self._trees[v_leaves]:
                            for slot in range(3):
                                parts = []
                                for tree, c in terms:
                                    args = [u, v]
                                    args.insert(slot, tree)
                                    parts.append(
                                        (_node(*args, symmetric=self.symmetric), c)
                                    )
                                feed(tree_vec(parts))

    # -- public surface ---------------------------------------------------------
    def basis(self, leaf_count):
        """Canonical quotient basis trees at one leaf count."""
        self._ensure(leaf_count)
        span = self._span[leaf_count]
        return [
            t
            for i, t in enumerate(self._trees[leaf_count])
            if i not in span.rows
        ]

    def dimension(self, leaf_count):
        self._ensure(leaf_count)
        return len(self._trees[leaf_count]) - self._span[leaf_count].rank

    def raw_tree_count(self, leaf_count):
        self._ensure(leaf_count)
        return len(self._trees[leaf_count])

    def generator(self, name):
        return PAssElement(self, {self.generators.index(name): QQ(1)})

    def zero(self):
        return PAssElement(self, {})

    def element(self, coords):
        return PAssElement(
            self, {self.parse_tree(t): c for t, c in coords.items()}
        )

    def parse_tree(self, tree):
        """Normalize a tree given by generator names or indices; children of
        symmetric nodes are put into canonical order."""
        if isinstance(tree, str):
            try:
                return self.generators.index(tree)
            except ValueError:
                raise KeyError("unknown generator %r" % (tree,))
        if isinstance(tree, int):
            if not 0 <= tree < len(self.generators):
                raise KeyError("generator index %d out of range" % (tree,))
            return tree
        if isinstance(tree, (tuple, list)) and len(tree) == 3:
            a, b, c = (self.parse_tree(x) for x in tree)
            return _node(a, b, c, self.symmetric)
        raise ValueError("a tree is a generator or a triple of trees: %r" % (tree,))

    def reduce_coords(self, coords):
        """Canonical quotient coordinates of a tree combination."""
        by_count = {}
        for tree, c in coords.items():
            by_count.setdefault(_leaves(tree), {})[tree] = c
        out = {}
        for n, part in by_count.items():
            self._ensure(n)
            vec = {self._index[n][t]: c for t, c in part.items() if c}
            res = self._span[n].reduce(vec)
            for col, c in res.items():
                out[self._trees[n][col]] = c
        return out

    def ternary(self, x, y, z):
        """The ternary product of three elements, reduced."""
        coords = {}
        for tx, cx in x.coords.items():
            for ty, cy in y.coords.items():
                for tz, cz in z.coords.items():
                    t = _node(tx, ty, tz, self.symmetric)
                    c = cx * cy * cz
                    s = coords.get(t, QQ(0)) + c
                    if s:
                        coords[t] = s
                    elif t in coords:
                        del coords[t]
        return PAssElement(self, coords)

    def structure_constants(self, t1, t2, t3):
        """The product of three basis trees in quotient coordinates."""
        prod = self.ternary(
            self.element({t1: QQ(1)}),
            self.element({t2: QQ(1)}),
            self.element({t3: QQ(1)}),
        )
        return dict(prod.coords)

    def tree_str(self, tree):
        if isinstance(tree, int):
            return self.generators[tree]
        return "(%s)" % ",".join(self.tree_str(c) for c in tree)

    def __repr__(self):
        flavor = "symmetric" if self.symmetric else "planar"
        return "<free %s pAss algebra on {%s}, leaf cutoff %d>" % (
            flavor,
            ",".join(self.generators),
            self.leaf_cutoff,
        )


def _compositions(total, parts):
    """Odd compositions of `total` into `parts` parts, each >= 1."""
    if parts == 1:
        return [(total,)] if total >= 1 and total % 2 == 1 else []
    out = []
    for first in range(1, total, 2):
        for rest in _compositions(total - first, parts - 1):
            out.append((first,) + rest)
    return out


class PAssElement:
    """A reduced element of the free pAss quotient, sparse on basis trees."""

    __slots__ = ("parent", "coords")

    def __init__(self, parent, coords):
        cleaned = {}
        for t, c in coords.items():
            c = as_scalar(c)
            if c:
                cleaned[t] = c
        self.parent = parent
        self.coords = parent.reduce_coords(cleaned) if cleaned else {}

    def __bool__(self):
        return bool(self.coords)

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.coords
        return (
            isinstance(other, PAssElement)
            and self.parent is other.parent
            and self.coords == other.coords
        )

    def __add__(self, other):
        out = dict(self.coords)
        for t, c in other.coords.items():
            s = out.get(t, QQ(0)) + c
            if s:
                out[t] = s
            elif t in out:
                del out[t]
        el = PAssElement.__new__(PAssElement)
        el.parent, el.coords = self.parent, out
        return el

    def __neg__(self):
        el = PAssElement.__new__(PAssElement)
        el.parent = self.parent
        el.coords = {t: -c for t, c in self.coords.items()}
        return el

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = as_scalar(c)
        el = PAssElement.__new__(PAssElement)
        el.parent = self.parent
        el.coords = {t: c * v for t, v in self.coords.items()} if c else {}
        return el

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def zero_like(self):
        return self.parent.zero()

    def leaf_counts(self):
        return sorted({_leaves(t) for t in self.coords})

    def render(self):
        if not self.coords:
            return "0"
        P = self.parent
        bits = []
        for t in sorted(self.coords, key=_tree_key):
            c = self.coords[t]
            name = P.tree_str(t)
            if c == 1:
                bits.append(name)
            elif c == -1:
                bits.append("-%s" % name)
            else:
                bits.append("%s*%s" % (c, name))
        return " + ".join(bits).replace("+ -", "- ")

    def __repr__(self):
        return self.render()


def build_free_pass(generators, leaf_cutoff, symmetric):
    """Free pAss algebra with basis classes up to the (odd, <= 7) leaf cutoff."""
    return FreePAssAlgebra(generators, leaf_cutoff, symmetric)


# ---------------------------------------------------------------------------
# ternary derivations and module actions
# ---------------------------------------------------------------------------

class TernaryDerivation:
    """A derivation for the ternary product: the three-slot Leibniz rule

        theta((a,b,c)) = (theta a, b, c) + (a, theta b, c) + (a, b, theta c)

    is the defining recursion, so it holds by construction; commutation of
    action images is what gets checked separately."""

    def __init__(self, algebra, generator_images):
        self.parent = algebra
        self.images = {}
        for name, img in generator_images.items():
            idx = algebra.generators.index(name)
            if not isinstance(img, PAssElement):
                img = algebra.element(img)
            self.images[idx] = img
        self._tree_cache = {}

    def apply_tree(self, tree):
        hit = self._tree_cache.get(tree)
        if hit is not None:
            return hit
        P = self.parent
        if isinstance(tree, int):
            out = self.images.get(tree, P.zero())
        else:
            a, b, c = tree
            ea = P.element({a: QQ(1)})
            eb = P.element({b: QQ(1)})
            ec = P.element({c: QQ(1)})
            out = (
                P.ternary(self.apply_tree(a), eb, ec)
                + P.ternary(ea, self.apply_tree(b), ec)
                + P.ternary(ea, eb, self.apply_tree(c))
            )
        self._tree_cache[tree] = out
        return out

    def apply(self, elem):
        out = self.parent.zero()
        for t, c in elem.coords.items():
            out = out + self.apply_tree(t).scale(c)
        return out

    def commutes_with(self, other):
        P = self.parent
        for idx in range(len(P.generators)):
            g = P.element({idx: QQ(1)})
            if self.apply(other.apply(g)) != other.apply(self.apply(g)):
                return False
        return True


class TernaryAction:
    """B-generators acting by ternary derivations on a free pAss algebra."""

    def __init__(self, B, algebra, images):
        if B.spec.kind != "polynomial-primitive":
            raise ValueError("ternary actions ship for polynomial-primitive B")
        self.B = B
        self.algebra = algebra
        self.images = {}
        for name in B.spec.generators:
            op = images.get(name)
            if op is None:
                raise ValueError("missing image for generator %r" % (name,))
            if not isinstance(op, TernaryDerivation):
                op = TernaryDerivation(algebra, op)
            self.images[name] = op
        ops = [self.images[n] for n in B.spec.generators]
        for i, op1 in enumerate(ops):
            for op2 in ops[i + 1:]:
                if not op1.commutes_with(op2):
                    raise ValueError("ternary derivations must commute")

    def apply_key(self, bkey, elem):
        out = elem
        for name, e in bkey.exps:
            op = self.images[name]
            for _ in range(e):
                out = op.apply(out)
        return out


# ---------------------------------------------------------------------------
# the arity-3 twist
# ---------------------------------------------------------------------------

class TernaryTwist:
    """H = F o_1 F: the arity-3 twist induced by an ordinary UDF."""

    def __init__(self, series):
        first = series.coeffs[0]
        if not isinstance(first, TensorElement) or first.arity != 3:
            raise ValueError("ternary twists are arity-3 tensor series")
        if first != first.parent.one(3):
            raise ValueError("a ternary twist starts at 1@1@1")
        self.series = series

    @property
    def parent(self):
        return self.series.coeffs[0].parent

    @property
    def order(self):
        return self.series.order


def pass_udf(F):
    """The induced ternary twist H = F o_1 F, cross-checked against F o_2 F.

    The two composites agree exactly when F satisfies the cocycle identity,
    so their equality is asserted here.
    """
    if not isinstance(F, UDF):
        raise ValueError("the ternary twist is induced by a UDF")
    h1 = series_circ(F.series, 1, F.series)
    h2 = series_circ(F.series, 2, F.series)
    k = first_failing_order(h1, h2)
    if k is not None:
        raise ValueError(
            "F o_1 F != F o_2 F at order %d; F is not a twisting element" % k
        )
    return TernaryTwist(h1)


class TwistedTernaryProduct:
    """The deformed ternary product (a,b,c) -> sum_i (H1_i a, H2_i b, H3_i c)."""

    def __init__(self, H, action):
        if H.parent is not action.B:
            raise ValueError("twist and action disagree on the bialgebra")
        self.H = H
        self.action = action
        self.order = H.order
        self.terms = []
        for k in range(self.order + 1):
            coeff = H.series.coeffs[k]
            self.terms.append(
                [(c, b1, b2, b3) for (b1, b2, b3), c in coeff.sorted_terms()]
            )

    def _triple(self, k, x, y, z):
        P = self.action.algebra
        act = self.action.apply_key
        out = P.zero()
        for c, b1, b2, b3 in self.terms[k]:
            out = out + P.ternary(act(b1, x), act(b2, y), act(b3, z)).scale(c)
        return out

    def product(self, sa, sb, sc):
        """Deformed product of three element series, truncated."""
        P = self.action.algebra
        if not isinstance(sa, TruncSeries):
            sa = constant_series(sa, self.order)
        if not isinstance(sb, TruncSeries):
            sb = constant_series(sb, self.order)
        if not isinstance(sc, TruncSeries):
            sc = constant_series(sc, self.order)
        out = []
        for n in range(self.order + 1):
            acc = P.zero()
            for k in range(n + 1):
                for i in range(n - k + 1):
                    for j in range(n - k - i + 1):
                        x = sa.coeffs[i]
                        y = sb.coeffs[j]
                        z = sc.coeffs[n - k - i - j]
                        if not x or not y or not z:
                            continue
                        acc = acc + self._triple(k, x, y, z)
            out.append(acc)
        return TruncSeries(out)


def twisted_ternary(H, action, a, b, c):
    """One twisted ternary product value as a series."""
    return TwistedTernaryProduct(H, action).product(a, b, c)


def check_partial_assoc(product, cutoff, order=None):
    """The three-term partial associativity sum on basis 5-tuples.

    `product` is a TwistedTernaryProduct (take the trivial twist for the
    undeformed structure); 5-tuples run over quotient basis trees with
    total leaf count <= cutoff, checked mod t^(order+1).
    """
    P = product.action.algebra
    order = product.order if order is None else order
    report = CheckReport("partial associativity")
    pools = {}
    for n in range(1, cutoff + 1, 2):
        pools[n] = [P.element({t: QQ(1)}) for t in P.basis(n)]

    bad = None
    count = 0
    for split in _compositions5_upto(cutoff):
        for combo in itertools.product(*(pools[m] for m in split)):
            a, b, c, d, e = combo
            count += 1
            total = (
                product.product(a, b, product.product(c, d, e))
                + product.product(a, product.product(b, c, d), e)
                + product.product(product.product(a, b, c), d, e)
            )
            failing = None
            for k in range(order + 1):
                if total.coeffs[k]:
                    failing = k
                    break
            if failing is not None:
                bad = {
                    "tuple": [x.render() for x in combo],
                    "first_failing_order": failing,
                    "value": total.coeffs[failing].render(),
                }
                break
        if bad:
            break
    report.add(
        "relation on %d basis 5-tuples (mod t^%d)" % (count, order + 1),
        bad is None,
        bad,
    )
    return report


def _compositions5_upto(cutoff):
    out = []
    for total in range(5, cutoff + 1, 2):
        out.extend(_compositions(total, 5))
    return out


# ---------------------------------------------------------------------------
# interchange twists
# ---------------------------------------------------------------------------

def interchange_check(F1, F2):
    """The middle-interchange coherence identity for a pair of twists:

        tau_1324 [ (Delta@Delta)(F') (F''@F'') ] = (Delta@Delta)(F'') (F'@F')

    in B^(@4), exactly or order by order for series."""
    s1 = F1.series if isinstance(F1, TwistingElement) else F1
    s2 = F2.series if isinstance(F2, TwistingElement) else F2
    if isinstance(s1, TensorElement):
        s1 = constant_series(s1, 0)
    if isinstance(s2, TensorElement):
        s2 = constant_series(s2, 0)
    if s1.order != s2.order:
        raise ValueError("truncation orders differ")

    def double_coproduct(s):
        return series_coproduct(series_coproduct(s, 1), 3)

    lhs = series_permute(double_coproduct(s1) * series_outer(s2, s2), TAU_1324)
    rhs = double_coproduct(s2) * series_outer(s1, s1)
    report = CheckReport("interchange coherence")
    k = first_failing_order(lhs, rhs)
    report.add(
        "tau_1324 identity in B^4",
        k is None,
        None
        if k is None
        else {
            "first_failing_order": k,
            "difference": (lhs.coeffs[k] - rhs.coeffs[k]).render(),
        },
    )
    return report


# ---------------------------------------------------------------------------
# diagrams of module algebras (single arrows and finite shapes)
# ---------------------------------------------------------------------------

class AlgebraMorphism:
    """A unital algebra morphism between truncated polynomial algebras,
    given by variable images (substitution is automatically multiplicative)."""

    def __init__(self, source, target, var_images):
        self.source = source
        self.target = target
        self.images = {}
        for name in source.variables:
            img = var_images.get(name)
            if img is None:
                raise ValueError("missing image for variable %r" % (name,))
            if not isinstance(img, AlgebraElement):
                img = target.element(img)
            self.images[name] = img

    def apply_key(self, key):
        out = self.target.one()
        for name, e in key.exps:
            img = self.images[name]
            for _ in range(e):
                out = out * img
        return out

    def apply(self, elem):
        out = self.target.zero()
        for k, c in elem.terms.items():
            out = out + self.apply_key(k).scale(c)
        return out

    def apply_series(self, s):
        return s.map_coeffs(self.apply)


class BialgebraMorphism:
    """A bialgebra morphism given on generators; the coalgebra conditions
    Delta(phi g) = (phi@phi)(Delta g) and eps(phi g) = eps(g) are verified."""

    def __init__(self, source, target, gen_images):
        if source.spec.kind not in ("polynomial-primitive", "monoid", "tensor-primitive"):
            raise ValueError("unsupported source kind %r" % (source.spec.kind,))
        if source.spec.kind == "monoid" and source.spec.monoid_table is not None:
            raise ValueError("finite-monoid sources are not supported here")
        self.source = source
        self.target = target
        self.images = {}
        for name in source.spec.generators:
            img = gen_images.get(name)
            if img is None:
                raise ValueError("missing image for generator %r" % (name,))
            if not isinstance(img, TensorElement):
                img = target.element(img)
            self.images[name] = img
        for name, img in self.images.items():
            lhs = img.apply_coproduct(1)
            g = source.generator(name)
            rhs = g.apply_coproduct(1).map_keys_linear(self.apply_key, target)
            if lhs != rhs:
                raise ValueError("images do not intertwine the coproducts at %r" % name)
            if source.counital and target.counital:
                if img.apply_counit(1).scalar_value() != source.counit_key(
                    source.generator_key(name)
                ):
                    raise ValueError("images do not intertwine the counits at %r" % name)

    def apply_key(self, key):
        src = self.source
        out = self.target.one(1)
        if src.spec.kind == "tensor-primitive":
            for idx in key:
                out = out * self.images[src.spec.generators[idx]]
            return out
        for name, e in key.exps:
            img = self.images[name]
            for _ in range(e):
                out = out * img
        return out

    def apply_tensor(self, T):
        return T.map_keys_linear(self.apply_key, self.target)

    def apply_tensor_series(self, s):
        return s.map_coeffs(self.apply_tensor)


class DiagramNode:
    def __init__(self, name, bialgebra, algebra, action):
        if action.B is not bialgebra or action.A is not algebra:
            raise ValueError("node action must bind the node's own B and A")
        self.name = name
        self.bialgebra = bialgebra
        self.algebra = algebra
        self.action = action


class DiagramArrow:
    """An arrow r: src -> dst with h: A_src -> A_dst and phi: B_dst -> B_src."""

    def __init__(self, src, dst, h, phi):
        self.src = src
        self.dst = dst
        self.h = h
        self.phi = phi


class DiagramSpec:
    """A finite diagram of module algebras with explicit nodes and arrows."""

    def __init__(self, nodes, arrows):
        self.nodes = {}
        for node in nodes:
            if node.name in self.nodes:
                raise ValueError("duplicate node name %r" % (node.name,))
            self.nodes[node.name] = node
        self.arrows = []
        for arrow in arrows:
            if arrow.src not in self.nodes or arrow.dst not in self.nodes:
                raise ValueError("arrow endpoints must be declared nodes")
            src, dst = self.nodes[arrow.src], self.nodes[arrow.dst]
            if arrow.h.source is not src.algebra or arrow.h.target is not dst.algebra:
                raise ValueError("h must map the source algebra to the target algebra")
            if (
                arrow.phi.source is not dst.bialgebra
                or arrow.phi.target is not src.bialgebra
            ):
                raise ValueError("phi must map the target bialgebra back to the source")
            self.arrows.append(arrow)


def diagram_compat_check(D, cutoff=None):
    """Per arrow: b h(a) = h(phi(b) a) on generators of B_dst and the basis
    of A_src; per node, module-algebra validity is delegated."""
    report = CheckReport("diagram compatibility")
    for name, node in D.nodes.items():
        sub = check_module_algebra(node.action, cutoff)
        report.add(
            "node %s is a module algebra" % name,
            sub.passed,
            None if sub.passed else {"detail": [e.label for e in sub.failures]},
        )
    for idx, arrow in enumerate(D.arrows):
        src, dst = D.nodes[arrow.src], D.nodes[arrow.dst]
        bad = None
        for gname in dst.bialgebra.spec.generators:
            bkey = dst.bialgebra.generator_key(gname)
            phi_b = arrow.phi.apply_key(bkey)
            for akey in src.algebra.basis_keys():
                a = src.algebra.element({akey: QQ(1)})
                try:
                    lhs = dst.action.apply_key(bkey, arrow.h.apply(a))
                    rhs = arrow.h.apply(src.action.apply_element(phi_b, a))
                except CutoffError as exc:
                    bad = {"generator": gname, "a": src.algebra.key_str(akey),
                           "error": str(exc)}
                    break
                if lhs != rhs:
                    bad = {
                        "generator": gname,
                        "a": src.algebra.key_str(akey),
                        "lhs": lhs.render(),
                        "rhs": rhs.render(),
                    }
                    break
            if bad:
                break
        report.add(
            "arrow %d (%s -> %s): b h(a) = h(phi(b) a)"
            % (idx, arrow.src, arrow.dst),
            bad is None,
            bad,
        )
    return report


class TwistTriple:
    """(F1, G, F2) for a single arrow; G is an arity-1 series over B_src."""

    def __init__(self, F1, G, F2):
        self.F1 = F1
        self.G = G  # TruncSeries of arity-1 tensors
        self.F2 = F2


def diagram_twist_check(D, arrow_index, triple, order=None):
    """All conditions of a twisting triple on one arrow, plus the deformed
    morphism property and (for invertible G) the gauge reduction."""
    arrow = D.arrows[arrow_index]
    src, dst = D.nodes[arrow.src], D.nodes[arrow.dst]
    F1, G, F2 = triple.F1, triple.G, triple.F2
    order = F1.order if order is None else order
    report = CheckReport("twisting triple on arrow %s -> %s" % (arrow.src, arrow.dst))

    report.add(
        "F1 is a twisting element",
        F1.check().passed,
    )
    report.add(
        "F2 is a twisting element",
        F2.check().passed,
    )

    lhs = series_coproduct(G, 1) * F1.series
    rhs = arrow.phi.apply_tensor_series(F2.series) * series_outer(G, G)
    k = first_failing_order(lhs, rhs)
    report.add(
        "triple condition Delta(G) F1 = (phi@phi)(F2) (G@G)",
        k is None,
        None
        if k is None
        else {
            "first_failing_order": k,
            "difference": (lhs.coeffs[k] - rhs.coeffs[k]).render(),
        },
    )

    star1 = StarProduct(F1, src.action)
    star2 = StarProduct(F2, dst.action)

    def h_twisted(a):
        ga = TruncSeries(
            [src.action.apply_element(G.coeffs[k], a) for k in range(order + 1)]
        )
        return arrow.h.apply_series(ga)

    bad = None
    keys = src.algebra.basis_keys()
    pair_bound = getattr(src.algebra, "cutoff", None)
    for k1 in keys:
        for k2 in keys:
            if (
                pair_bound is not None
                and src.algebra.degree(k1) + src.algebra.degree(k2) > pair_bound
            ):
                continue
            a = src.algebra.element({k1: QQ(1)})
            b = src.algebra.element({k2: QQ(1)})
            try:
                left = h_twisted_series(star1.star(a, b), arrow, src, G, order)
                right = star2.star(h_twisted(a), h_twisted(b))
            except CutoffError as exc:
                bad = {
                    "pair": "%s , %s"
                    % (src.algebra.key_str(k1), src.algebra.key_str(k2)),
                    "error": str(exc),
                }
                break
            if left != right:
                failing = first_failing_order(left, right)
                bad = {
                    "pair": "%s , %s"
                    % (src.algebra.key_str(k1), src.algebra.key_str(k2)),
                    "first_failing_order": failing,
                }
                break
        if bad:
            break
    report.add("h(G .) is a morphism of twisted algebras", bad is None, bad)

    if G.coeffs[0] == src.bialgebra.one(1):
        gauge = GaugeElement(G)
        reduced_F1 = gauge_transform(F1, gauge)
        lhs2 = reduced_F1.series
        rhs2 = arrow.phi.apply_tensor_series(F2.series)
        k = first_failing_order(lhs2, rhs2)
        report.add(
            "gauge-reduced triple (F1', 1, F2) satisfies the condition",
            k is None,
            None if k is None else {"first_failing_order": k},
        )
    return report


def h_twisted_series(sa, arrow, src, G, order):
    """h(G .) applied to an algebra-element series, order by order."""
    out = []
    for n in range(order + 1):
        acc = arrow.h.target.zero()
        for k in range(n + 1):
            x = sa.coeffs[n - k]
            if not x:
                continue
            acc = acc + arrow.h.apply(src.action.apply_element(G.coeffs[k], x))
        out.append(acc)
    return TruncSeries(out)


def morphism_image_check(D, arrow_index, triple, degree):
    """Injectivity of the deformed morphism on the source basis, and
    surjectivity of its t^0 image onto the degree-<= bound target basis."""
    arrow = D.arrows[arrow_index]
    src = D.nodes[arrow.src]
    images = {}
    for key in src.algebra.basis_keys():
        a = src.algebra.element({key: QQ(1)})
        g0 = src.action.apply_element(triple.G.coeffs[0], a)
        images[key] = arrow.h.apply(g0)
    seen = {}
    injective = True
    for key, img in images.items():
        sig = frozenset(img.terms.items())
        if sig in seen:
            injective = False
            break
        seen[sig] = key
    covered = set()
    for img in images.values():
        covered.update(img.terms)
    target_keys = [
        k for k in arrow.h.target.basis_keys() if arrow.h.target.degree(k) <= degree
    ]
    surjective = all(k in covered for k in target_keys)
    return {"injective": injective, "surjective": surjective}
