"""Module-algebra actions, twisted products, and infinitesimal (non)triviality.

A bialgebra B acts on an algebra A through operators attached to its
generators: commuting derivations for polynomial-primitive B, arbitrary
derivations for tensor-primitive B, unital algebra endomorphisms for monoid
B.  A twisting element F then deforms the product of A by

    a * b = mu_A( F (a @ b) ),

computed order by order in t.  The infinitesimal layer extracts the t^1
Hochschild 2-cochain of a deformation, decides coboundary-ness inside a
declared finite search space, and computes the wedge obstruction for pairs
of derivations on free polynomial algebras.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .bialgebra import CutoffError
from .kernel import Monomial, ONE_MONOMIAL, Polynomial, QQ, TruncSeries, as_scalar
from .linalg import solve as linalg_solve
from .reports import CheckReport
from .twist import UDF, constant_series


# ---------------------------------------------------------------------------
# algebra presentations
# ---------------------------------------------------------------------------

class AlgebraSpec:
    """Base for the two target-algebra kinds."""

    def unit_key(self):
        raise NotImplementedError

    def degree(self, key):
        raise NotImplementedError

    def product_keys(self, k1, k2):
        raise NotImplementedError

    def basis_keys(self, max_degree=None):
        raise NotImplementedError

    def key_str(self, key):
        raise NotImplementedError

    def zero(self):
        return AlgebraElement(self, {})

    def one(self):
        return AlgebraElement(self, {self.unit_key(): QQ(1)})

    def element(self, terms):
        return AlgebraElement(self, terms)


class PolynomialTruncatedAlgebra(AlgebraSpec):
    """k[x1,...,xv] hard-truncated at a total degree; overflow is an error."""

    kind = "polynomial-truncated"

    def __init__(self, variables, degree_cutoff):
        if len(set(variables)) != len(variables):
            raise ValueError("duplicate variable names")
        if degree_cutoff < 1:
            raise ValueError("degree cutoff must be >= 1")
        self.variables = list(variables)
        self.cutoff = degree_cutoff

    def unit_key(self):
        return ONE_MONOMIAL

    def degree(self, key):
        return key.degree

    def product_keys(self, k1, k2):
        key = k1 * k2
        if key.degree > self.cutoff:
            raise CutoffError(
                "product %s exceeds the degree cutoff %d" % (key, self.cutoff)
            )
        return {key: QQ(1)}

    def basis_keys(self, max_degree=None):
        top = self.cutoff if max_degree is None else min(max_degree, self.cutoff)
        out = []
        for deg in range(top + 1):
            batch = []
            for combo in itertools.combinations_with_replacement(self.variables, deg):
                d = {}
                for n in combo:
                    d[n] = d.get(n, 0) + 1
                batch.append(Monomial(d))
            batch.sort(key=Monomial.sort_key)
            out.extend(batch)
        return out

    def key_str(self, key):
        return repr(key)

    def variable(self, name):
        if name not in self.variables:
            raise KeyError("unknown variable %r" % (name,))
        return self.element({Monomial({name: 1}): QQ(1)})

    def __repr__(self):
        return "<k[%s] truncated at %d>" % (",".join(self.variables), self.cutoff)


class FiniteDimensionalAlgebra(AlgebraSpec):
    """Explicit basis and structure constants; associativity is asserted."""

    kind = "finite-dimensional"

    def __init__(self, basis, unit, products):
        """products maps (x, y) -> dict name -> coefficient; missing pairs
        multiply to zero; products with the unit are implied."""
        if len(set(basis)) != len(basis):
            raise ValueError("duplicate basis names")
        if unit not in basis:
            raise ValueError("unit %r is not a basis element" % (unit,))
        self.basis = list(basis)
        self.unit = unit
        self._table = {}
        for x in basis:
            for y in basis:
                if x == unit:
                    self._table[(x, y)] = {y: QQ(1)}
                elif y == unit:
                    self._table[(x, y)] = {x: QQ(1)}
                else:
                    raw = products.get((x, y), {})
                    row = {}
                    for name, c in raw.items():
                        if name not in basis:
                            raise ValueError("structure constant hits unknown %r" % name)
                        c = as_scalar(c)
                        if c:
                            row[name] = c
                    self._table[(x, y)] = row
        for x in basis:
            for y in basis:
                for z in basis:
                    lhs = self._compose(self._table[(x, y)], z, left=True)
                    rhs = self._compose(self._table[(y, z)], x, left=False)
                    if lhs != rhs:
                        raise ValueError(
                            "structure constants are not associative at (%s,%s,%s)"
                            % (x, y, z)
                        )

    def _compose(self, combo, other, left):
        out = {}
        for name, c in combo.items():
            tbl = self._table[(name, other)] if left else self._table[(other, name)]
            for n2, c2 in tbl.items():
                s = out.get(n2, QQ(0)) + c * c2
                if s:
                    out[n2] = s
                elif n2 in out:
                    del out[n2]
        return out

    def unit_key(self):
        return self.unit

    def degree(self, key):
        return 0

    def product_keys(self, k1, k2):
        return dict(self._table[(k1, k2)])

    def basis_keys(self, max_degree=None):
        return list(self.basis)

    def key_str(self, key):
        return key

    def __repr__(self):
        return "<finite-dimensional algebra on {%s}>" % ",".join(self.basis)


class AlgebraElement:
    """Sparse element of an AlgebraSpec with exact coefficients."""

    __slots__ = ("parent", "terms")

    def __init__(self, parent, terms):
        cleaned = {}
        for k, c in terms.items():
            c = as_scalar(c)
            if c:
                cleaned[k] = cleaned.get(k, QQ(0)) + c
                if not cleaned[k]:
                    del cleaned[k]
        self.parent = parent
        self.terms = cleaned

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return not self.terms
            other = self.parent.one().scale(other)
        return (
            isinstance(other, AlgebraElement)
            and self.parent is other.parent
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, QQ(0)) + c
            if s:
                out[k] = s
            elif k in out:
                del out[k]
        return AlgebraElement(self.parent, out)

    def __neg__(self):
        return AlgebraElement(self.parent, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = as_scalar(c)
        if not c:
            return AlgebraElement(self.parent, {})
        return AlgebraElement(self.parent, {k: c * v for k, v in self.terms.items()})

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        out = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                for key, c3 in self.parent.product_keys(k1, k2).items():
                    s = out.get(key, QQ(0)) + c1 * c2 * c3
                    if s:
                        out[key] = s
                    elif key in out:
                        del out[key]
        return AlgebraElement(self.parent, out)

    def one_like(self):
        return self.parent.one()

    def zero_like(self):
        return self.parent.zero()

    def to_polynomial(self):
        return Polynomial(dict(self.terms))

    def render(self):
        if not self.terms:
            return "0"
        A = self.parent
        def sort_key(k):
            return (A.degree(k), A.key_str(k))
        bits = []
        for k in sorted(self.terms, key=sort_key):
            c = self.terms[k]
            name = A.key_str(k)
            if name == "1":
                bits.append(str(c))
            elif c == 1:
                bits.append(name)
            elif c == -1:
                bits.append("-%s" % name)
            else:
                bits.append("%s*%s" % (c, name))
        return " + ".join(bits).replace("+ -", "- ")

    def __repr__(self):
        return self.render()


# ---------------------------------------------------------------------------
# operators: derivations and endomorphisms
# ---------------------------------------------------------------------------

def _partial_monomial(key, name, parent):
    """d/d(name) of a basis monomial as an AlgebraElement."""
    d = dict(key.exps)
    e = d.get(name, 0)
    if not e:
        return parent.zero()
    if e == 1:
        del d[name]
    else:
        d[name] = e - 1
    return AlgebraElement(parent, {Monomial(d): QQ(e)})


class Derivation:
    """A derivation of A; the Leibniz rule is verified at construction.

    Polynomial kind: a polynomial coefficient per partial derivative
    (theta = sum_v coeff_v d/dv).  Finite-dimensional kind: images of the
    basis elements.
    """

    def __init__(self, A, data):
        self.parent = A
        if isinstance(A, PolynomialTruncatedAlgebra):
            self.kind = "polynomial"
            self.coeffs = {}
            for name, poly in data.items():
                if name not in A.variables:
                    raise ValueError("unknown variable %r" % (name,))
                if isinstance(poly, AlgebraElement):
                    poly = poly.to_polynomial()
                if not isinstance(poly, Polynomial):
                    poly = Polynomial.constant(poly)
                if poly:
                    self.coeffs[name] = poly
        elif isinstance(A, FiniteDimensionalAlgebra):
            self.kind = "matrix"
            self.images = {}
            for name in A.basis:
                img = data.get(name, A.zero())
                if not isinstance(img, AlgebraElement):
                    img = A.element(img)
                self.images[name] = img
            self._verify_leibniz()
        else:
            raise ValueError("unsupported algebra kind for derivations")

    def _verify_leibniz(self):
        A = self.parent
        for x in A.basis_keys():
            ex = A.element({x: QQ(1)})
            for y in A.basis_keys():
                ey = A.element({y: QQ(1)})
                if self.apply(ex * ey) != self.apply(ex) * ey + ex * self.apply(ey):
                    raise ValueError(
                        "Leibniz rule fails at (%s, %s)" % (A.key_str(x), A.key_str(y))
                    )

    def apply_key(self, key):
        A = self.parent
        if self.kind == "polynomial":
            out = A.zero()
            for name, coeff in self.coeffs.items():
                part = _partial_monomial(key, name, A)
                if not part:
                    continue
                for mono, c in coeff.terms.items():
                    for k2, c2 in part.terms.items():
                        prod = mono * k2
                        if prod.degree > A.cutoff:
                            raise CutoffError(
                                "derivation output %s exceeds cutoff %d"
                                % (prod, A.cutoff)
                            )
                        out = out + AlgebraElement(A, {prod: c * c2})
            return out
        return self.images[key]

    def apply(self, elem):
        out = self.parent.zero()
        for k, c in elem.terms.items():
            out = out + self.apply_key(k).scale(c)
        return out

    def commutes_with(self, other):
        """Exact commutation test on the generators (sufficient for derivations)."""
        A = self.parent
        if self.kind == "polynomial":
            probes = [A.variable(v) for v in A.variables]
        else:
            probes = [A.element({k: QQ(1)}) for k in A.basis_keys()]
        for x in probes:
            if self.apply(other.apply(x)) != other.apply(self.apply(x)):
                return False
        return True


class AlgebraEndomorphism:
    """A unital algebra endomorphism of A, for monoid-bialgebra actions."""

    def __init__(self, A, data):
        self.parent = A
        if isinstance(A, PolynomialTruncatedAlgebra):
            self.kind = "polynomial"
            self.var_images = {}
            for name in A.variables:
                img = data.get(name)
                if img is None:
                    img = A.variable(name)
                if not isinstance(img, AlgebraElement):
                    img = A.element(img)
                self.var_images[name] = img
        elif isinstance(A, FiniteDimensionalAlgebra):
            self.kind = "matrix"
            self.images = {}
            for name in A.basis:
                img = data.get(name, A.zero())
                if not isinstance(img, AlgebraElement):
                    img = A.element(img)
                self.images[name] = img
            self._verify_morphism()
        else:
            raise ValueError("unsupported algebra kind for endomorphisms")

    def _verify_morphism(self):
        A = self.parent
        if self.apply(A.one()) != A.one():
            raise ValueError("endomorphism does not fix the unit")
        for x in A.basis_keys():
            ex = A.element({x: QQ(1)})
            for y in A.basis_keys():
                ey = A.element({y: QQ(1)})
                if self.apply(ex * ey) != self.apply(ex) * self.apply(ey):
                    raise ValueError(
                        "endomorphism is not multiplicative at (%s, %s)"
                        % (A.key_str(x), A.key_str(y))
                    )

    def apply_key(self, key):
        A = self.parent
        if self.kind == "polynomial":
            out = A.one()
            for name, e in key.exps:
                img = self.var_images[name]
                for _ in range(e):
                    out = out * img
            return out
        return self.images[key]

    def apply(self, elem):
        out = self.parent.zero()
        for k, c in elem.terms.items():
            out = out + self.apply_key(k).scale(c)
        return out

    def commutes_with(self, other):
        A = self.parent
        if self.kind == "polynomial":
            probes = [A.variable(v) for v in A.variables]
        else:
            probes = [A.element({k: QQ(1)}) for k in A.basis_keys()]
        return all(
            self.apply(other.apply(x)) == other.apply(self.apply(x)) for x in probes
        )


# ---------------------------------------------------------------------------
# module actions
# ---------------------------------------------------------------------------

class ModuleAction:
    """Assignment of B-generators to operators on A, inducing all of B.

    Validation is kind-dependent: polynomial-primitive needs pairwise
    commuting derivations, tensor-primitive arbitrary derivations, monoid
    kinds unital algebra endomorphisms (commuting for the free commutative
    monoid, multiplicative against the table for finite monoids).
    """

    def __init__(self, B, A, images):
        self.B = B
        self.A = A
        kind = B.spec.kind
        self.images = dict(images)
        if kind == "polynomial-primitive":
            for name, op in self.images.items():
                if not isinstance(op, Derivation):
                    raise ValueError("generator %r needs a derivation" % (name,))
            self._require_all_generators()
            ops = [self.images[n] for n in B.spec.generators]
            for i, op1 in enumerate(ops):
                for op2 in ops[i + 1:]:
                    if not op1.commutes_with(op2):
                        raise ValueError(
                            "derivations must commute for a polynomial-primitive action"
                        )
        elif kind == "tensor-primitive":
            for name, op in self.images.items():
                if not isinstance(op, Derivation):
                    raise ValueError("generator %r needs a derivation" % (name,))
            self._require_all_generators()
        elif kind == "monoid":
            for name, op in self.images.items():
                if not isinstance(op, AlgebraEndomorphism):
                    raise ValueError(
                        "monoid element %r needs a unital algebra endomorphism" % (name,)
                    )
            if B.spec.monoid_table is None:
                self._require_all_generators()
                ops = [self.images[n] for n in B.spec.generators]
                for i, op1 in enumerate(ops):
                    for op2 in ops[i + 1:]:
                        if not op1.commutes_with(op2):
                            raise ValueError(
                                "endomorphisms must commute for a commutative monoid"
                            )
            else:
                for name in B.elements:
                    if name not in self.images:
                        raise ValueError("missing image for monoid element %r" % name)
                unit_op = self.images[B.unit_name]
                for x in A.basis_keys():
                    e = A.element({x: QQ(1)})
                    if unit_op.apply(e) != e:
                        raise ValueError("the monoid unit must act as the identity")
                for x in B.elements:
                    for y in B.elements:
                        z = B.product_keys(x, y)
                        (zkey,) = z
                        for a in A.basis_keys():
                            e = A.element({a: QQ(1)})
                            lhs = self.images[x].apply(self.images[y].apply(e))
                            rhs = self.images[zkey].apply(e)
                            if lhs != rhs:
                                raise ValueError(
                                    "images are not multiplicative at (%s, %s)" % (x, y)
                                )
        else:
            raise ValueError("no action support for bialgebra kind %r" % (kind,))

    def _require_all_generators(self):
        for name in self.B.spec.generators:
            if name not in self.images:
                raise ValueError("missing image for generator %r" % (name,))

    def operator_names(self):
        return list(self.images)

    def apply_key(self, bkey, elem):
        """Action of a single B-basis key on an algebra element."""
        B, kind = self.B, self.B.spec.kind
        if kind in ("polynomial-primitive", "matrix-coordinate"):
            out = elem
            for name, e in bkey.exps:
                op = self.images[name]
                for _ in range(e):
                    out = op.apply(out)
            return out
        if kind == "tensor-primitive":
            out = elem
            for idx in reversed(bkey):
                out = self.images[B.spec.generators[idx]].apply(out)
            return out
        if kind == "monoid":
            if B.spec.monoid_table is None:
                out = elem
                for name, e in bkey.exps:
                    op = self.images[name]
                    for _ in range(e):
                        out = op.apply(out)
                return out
            return self.images[bkey].apply(elem)
        raise AssertionError(kind)

    def apply_element(self, belem, elem):
        """Action of an arity-1 tensor over B, extended linearly."""
        out = self.A.zero()
        for (bkey,), c in belem.terms.items():
            out = out + self.apply_key(bkey, elem).scale(c)
        return out


def action_from_derivations(B, A, images):
    """Wrap generator images (Derivations/endomorphisms or raw data) into a
    validated ModuleAction."""
    wrapped = {}
    for name, op in images.items():
        if isinstance(op, (Derivation, AlgebraEndomorphism)):
            wrapped[name] = op
        elif B.spec.kind == "monoid":
            wrapped[name] = AlgebraEndomorphism(A, op)
        else:
            wrapped[name] = Derivation(A, op)
    return ModuleAction(B, A, wrapped)


def check_module_algebra(action, cutoff=None):
    """B-linearity of the product plus the unit condition, on basis data."""
    B, A = action.B, action.A
    own = getattr(A, "cutoff", None)
    if cutoff is None:
        cutoff = own
    elif own is not None:
        cutoff = min(cutoff, own)
    report = CheckReport("module-algebra compatibility")
    bkeys = [k for k in B.basis_keys(min(2, B.cutoff)) if B.degree(k) <= 2]
    akeys = A.basis_keys()

    bad = None
    for bk in bkeys:
        delta = B.coproduct_key(bk)
        for k1 in akeys:
            for k2 in akeys:
                if cutoff is not None and A.degree(k1) + A.degree(k2) > cutoff:
                    continue
                e1, e2 = A.element({k1: QQ(1)}), A.element({k2: QQ(1)})
                lhs = action.apply_key(bk, e1 * e2)
                rhs = A.zero()
                for (b1, b2), c in delta.items():
                    rhs = rhs + (
                        action.apply_key(b1, e1) * action.apply_key(b2, e2)
                    ).scale(c)
                if lhs != rhs:
                    bad = {
                        "b": B.key_str(bk),
                        "pair": "%s , %s" % (A.key_str(k1), A.key_str(k2)),
                        "lhs": lhs.render(),
                        "rhs": rhs.render(),
                    }
                    break
            if bad:
                break
        if bad:
            break
    report.add("product is B-linear", bad is None, bad)

    bad = None
    for bk in bkeys:
        got = action.apply_key(bk, A.one())
        want = A.one().scale(B.counit_key(bk))
        if got != want:
            bad = {"b": B.key_str(bk), "got": got.render()}
            break
    report.add("unit condition b.1 = eps(b) 1", bad is None, bad)
    return report


# ---------------------------------------------------------------------------
# twisted products
# ---------------------------------------------------------------------------

class StarProduct:
    """The deformed product of one (F, action) pair, with F's terms unpacked."""

    def __init__(self, F, action):
        if not isinstance(F, UDF):
            raise ValueError("twisted products need a UDF")
        if F.parent is not action.B:
            raise ValueError("twist and action disagree on the bialgebra")
        self.F = F
        self.action = action
        self.order = F.order
        self.terms = []
        for k in range(self.order + 1):
            coeff = F.series.coeffs[k]
            self.terms.append([(c, b1, b2) for (b1, b2), c in coeff.sorted_terms()])

    def _pair(self, k, x, y):
        """mu(F_k (x @ y)) for plain algebra elements x, y."""
        A = self.action.A
        out = A.zero()
        for c, b1, b2 in self.terms[k]:
            out = out + (
                self.action.apply_key(b1, x) * self.action.apply_key(b2, y)
            ).scale(c)
        return out

    def star(self, sa, sb):
        """Deformed product of two algebra-element series."""
        A = self.action.A
        if not isinstance(sa, TruncSeries):
            sa = constant_series(sa, self.order)
        if not isinstance(sb, TruncSeries):
            sb = constant_series(sb, self.order)
        out = []
        for n in range(self.order + 1):
            acc = A.zero()
            for k in range(n + 1):
                for i in range(n - k + 1):
                    x, y = sa.coeffs[i], sb.coeffs[n - k - i]
                    if not x or not y:
                        continue
                    acc = acc + self._pair(k, x, y)
            out.append(acc)
        return TruncSeries(out)


def twisted_product(F, action, a, b):
    """a * b = mu(F(a @ b)) as a series over the truncation ring."""
    return StarProduct(F, action).star(a, b)


def check_associativity(F, action, cutoff=None, order=None):
    """(a*b)*c = a*(b*c) on basis triples within the cutoff, plus unitality.

    Reports localize the first failing t-order and the witness triple.
    """
    star = StarProduct(F, action)
    A = action.A
    cutoff = getattr(A, "cutoff", 0) or 0 if cutoff is None else cutoff
    report = CheckReport("twisted product associativity")
    keys = A.basis_keys()

    bad = None
    count = 0
    for k1 in keys:
        for k2 in keys:
            for k3 in keys:
                if A.degree(k1) + A.degree(k2) + A.degree(k3) > cutoff:
                    continue
                count += 1
                x = A.element({k1: QQ(1)})
                y = A.element({k2: QQ(1)})
                z = A.element({k3: QQ(1)})
                lhs = star.star(star.star(x, y), z)
                rhs = star.star(x, star.star(y, z))
                if lhs != rhs:
                    failing = next(
                        n
                        for n in range(lhs.order + 1)
                        if lhs.coeffs[n] != rhs.coeffs[n]
                    )
                    bad = {
                        "triple": "(%s, %s, %s)"
                        % (A.key_str(k1), A.key_str(k2), A.key_str(k3)),
                        "first_failing_order": failing,
                        "lhs": lhs.coeffs[failing].render(),
                        "rhs": rhs.coeffs[failing].render(),
                    }
                    break
            if bad:
                break
        if bad:
            break
    report.add("associativity on %d basis triples" % count, bad is None, bad)

    bad = None
    one = A.one()
    for k in keys:
        x = A.element({k: QQ(1)})
        left = star.star(one, x)
        right = star.star(x, one)
        expect = constant_series(x, star.order)
        if left != expect or right != expect:
            bad = {"element": A.key_str(k)}
            break
    report.add("1 is a unit for the twisted product", bad is None, bad)
    return report


# ---------------------------------------------------------------------------
# Hochschild layer
# ---------------------------------------------------------------------------

class HochschildCochain:
    """A multilinear map A^(@n) -> A, tabulated lazily on basis tuples."""

    def __init__(self, A, degree, fn):
        self.parent = A
        self.degree = degree
        self._fn = fn
        self._cache = {}

    def on_keys(self, *keys):
        if len(keys) != self.degree:
            raise ValueError("expected %d arguments" % self.degree)
        if keys not in self._cache:
            self._cache[keys] = self._fn(*keys)
        return self._cache[keys]

    def evaluate(self, *elems):
        out = self.parent.zero()
        for combo in itertools.product(*(e.terms.items() for e in elems)):
            keys = tuple(k for k, _ in combo)
            c = QQ(1)
            for _, ci in combo:
                c *= ci
            out = out + self.on_keys(*keys).scale(c)
        return out

    def __sub__(self, other):
        if other.parent is not self.parent or other.degree != self.degree:
            raise ValueError("cochain mismatch")
        return HochschildCochain(
            self.parent,
            self.degree,
            lambda *keys: self.on_keys(*keys) - other.on_keys(*keys),
        )

    def is_zero_within(self, cutoff):
        ok, _ = self.zero_witness(cutoff)
        return ok

    def zero_witness(self, cutoff):
        A = self.parent
        for keys in itertools.product(A.basis_keys(), repeat=self.degree):
            if sum(A.degree(k) for k in keys) > cutoff:
                continue
            val = self.on_keys(*keys)
            if val:
                return False, {
                    "keys": [A.key_str(k) for k in keys],
                    "value": val.render(),
                }
        return True, None


def hochschild_differential(c):
    """The Hochschild coboundary of a 1- or 2-cochain."""
    A = c.parent
    if c.degree == 1:
        def d(x, y):
            ex, ey = A.element({x: QQ(1)}), A.element({y: QQ(1)})
            return ex * c.on_keys(y) - c.evaluate(ex * ey) + c.on_keys(x) * ey
        return HochschildCochain(A, 2, d)
    if c.degree == 2:
        def d3(x, y, z):
            ex, ey, ez = (A.element({k: QQ(1)}) for k in (x, y, z))
            return (
                ex * c.on_keys(y, z)
                - c.evaluate(ex * ey, ez)
                + c.evaluate(ex, ey * ez)
                - c.on_keys(x, y) * ez
            )
        return HochschildCochain(A, 3, d3)
    raise ValueError("differentials ship for degrees 1 and 2 only")


def infinitesimal_cocycle(F, action, cutoff=None):
    """The t^1 Hochschild 2-cochain mu_1(a,b) = mu(F_1(a@b)) of a UDF.

    Its cocycle property is verified on basis triples within the cutoff.
    """
    star = StarProduct(F, action)
    A = action.A

    def mu1(x, y):
        return star._pair(1, A.element({x: QQ(1)}), A.element({y: QQ(1)}))

    cochain = HochschildCochain(A, 2, mu1)
    bound = getattr(A, "cutoff", 0) or 0 if cutoff is None else cutoff
    ok, witness = hochschild_differential(cochain).zero_witness(bound)
    if not ok:
        raise AssertionError(
            "the order-t layer of a UDF must be a Hochschild cocycle: %s" % witness
        )
    return cochain


# -- coboundary search -------------------------------------------------------

def _multiindices(variables, max_order):
    out = []
    for total in range(max_order + 1):
        for combo in itertools.combinations_with_replacement(variables, total):
            d = {}
            for v in combo:
                d[v] = d.get(v, 0) + 1
            out.append(tuple(sorted(d.items())))
    return out


def _apply_poly_operator(mono_coeff, alpha, poly):
    """(mono_coeff * d^alpha) applied to an untruncated polynomial."""
    out = poly
    for name, order in alpha:
        for _ in range(order):
            out = out.partial(name)
            if not out:
                return Polynomial()
    return Polynomial({mono_coeff: QQ(1)}) * out


class PolynomialOperator1Cochain:
    """A differential operator regarded as a Hochschild 1-cochain."""

    def __init__(self, A, terms):
        self.parent = A
        self.terms = terms  # list of (coeff_monomial, alpha, coefficient)

    def as_cochain(self):
        A = self.parent

        def g(key):
            poly = Polynomial({key: QQ(1)})
            out = Polynomial()
            for mono, alpha, c in self.terms:
                out = out + _apply_poly_operator(mono, alpha, poly).scale(c)
            return AlgebraElement(A, dict(out.terms))

        return HochschildCochain(A, 1, g)

    def describe(self):
        bits = []
        for mono, alpha, c in sorted(
            self.terms, key=lambda t: (t[1], t[0].sort_key())
        ):
            dpart = "*".join(
                "d%s" % name if order == 1 else "d%s^%d" % (name, order)
                for name, order in alpha
            )
            body = repr(mono) if not dpart else "%s*%s" % (repr(mono), dpart)
            bits.append("%s*%s" % (c, body))
        return " + ".join(bits) if bits else "0"


def is_hochschild_coboundary(A, cochain, search_bound=2, coeff_degree=None):
    """Solve cochain = delta(g) inside a declared finite search space.

    Returns (g, info): g is a 1-cochain witness or None, info echoes the
    searched space (a negative verdict is only as strong as that space).
    """
    if cochain.degree != 2:
        raise ValueError("coboundary search is for 2-cochains")

    if isinstance(A, FiniteDimensionalAlgebra):
        info = {"search_space": "all linear maps on the %d-dim basis" % len(A.basis)}
        basis = A.basis_keys()
        unknown = {(src, dst): i for i, (src, dst) in enumerate(
            itertools.product(basis, basis)
        )}
        rows = {}
        rhs_map = {}

        def put(eqkey, col, c):
            row = rows.setdefault(eqkey, {})
            s = row.get(col, QQ(0)) + c
            if s:
                row[col] = s
            elif col in row:
                del row[col]

        for x in basis:
            for y in basis:
                ex, ey = A.element({x: QQ(1)}), A.element({y: QQ(1)})
                # delta g (x, y) = x g(y) - g(xy) + g(x) y
                for dst in basis:
                    img = ex * A.element({dst: QQ(1)})
                    for k, c in img.terms.items():
                        put(((x, y), k), unknown[(y, dst)], c)
                for pk, pc in (ex * ey).terms.items():
                    for dst in basis:
                        put(((x, y), dst), unknown[(pk, dst)], -pc)
                for dst in basis:
                    img = A.element({dst: QQ(1)}) * ey
                    for k, c in img.terms.items():
                        put(((x, y), k), unknown[(x, dst)], c)
                for k, c in cochain.on_keys(x, y).terms.items():
                    rhs_map[((x, y), k)] = c

        eqkeys = sorted(set(rows) | set(rhs_map), key=repr)
        row_list = [rows.get(k, {}) for k in eqkeys]
        rhs = [rhs_map.get(k, QQ(0)) for k in eqkeys]
        sol = linalg_solve(row_list, rhs, len(unknown))
        if sol is None:
            return None, info
        images = {}
        for (src, dst), col in unknown.items():
            c = sol.get(col, QQ(0))
            if c:
                images.setdefault(src, {})[dst] = c
        g_images = {k: A.element(v) for k, v in images.items()}

        def g(key):
            return g_images.get(key, A.zero())

        return HochschildCochain(A, 1, g), info

    if not isinstance(A, PolynomialTruncatedAlgebra):
        raise ValueError("unsupported algebra kind for the coboundary search")

    coeff_degree = A.cutoff if coeff_degree is None else coeff_degree
    info = {
        "search_space": "differential operators",
        "operator_order": search_bound,
        "coefficient_degree": coeff_degree,
    }
    alphas = _multiindices(A.variables, search_bound)
    coeff_monos = [
        m for m in A.basis_keys(coeff_degree)
    ]
    unknown = {}
    for alpha in alphas:
        for mono in coeff_monos:
            unknown[(mono, alpha)] = len(unknown)

    rows = {}
    rhs_map = {}

    def put(eqkey, col, c):
        row = rows.setdefault(eqkey, {})
        s = row.get(col, QQ(0)) + c
        if s:
            row[col] = s
        elif col in row:
            del row[col]

    pairs = []
    for x in A.basis_keys():
        for y in A.basis_keys():
            if A.degree(x) + A.degree(y) <= A.cutoff:
                pairs.append((x, y))

    for (x, y) in pairs:
        px = Polynomial({x: QQ(1)})
        py = Polynomial({y: QQ(1)})
        pxy = px * py
        for (mono, alpha), col in unknown.items():
            gy = _apply_poly_operator(mono, alpha, py)
            gxy = _apply_poly_operator(mono, alpha, pxy)
            gx = _apply_poly_operator(mono, alpha, px)
            delta = px * gy - gxy + gx * py
            for m, c in delta.terms.items():
                put(((x, y), m), col, c)
        for m, c in cochain.on_keys(x, y).terms.items():
            rhs_map[((x, y), m)] = c

    eqkeys = sorted(set(rows) | set(rhs_map), key=repr)
    row_list = [rows.get(k, {}) for k in eqkeys]
    rhs = [rhs_map.get(k, QQ(0)) for k in eqkeys]
    sol = linalg_solve(row_list, rhs, len(unknown))
    if sol is None:
        return None, info
    terms = []
    for (mono, alpha), col in unknown.items():
        c = sol.get(col, QQ(0))
        if c:
            terms.append((mono, alpha, c))
    op = PolynomialOperator1Cochain(A, terms)
    witness = op.as_cochain()
    witness.operator = op
    return witness, info


def wedge_over_A(theta1, theta2):
    """Antisymmetrized coefficient matrix of theta1 wedge theta2 over A.

    Only free polynomial Der-modules are supported: the coefficient on
    d_i wedge d_j (i < j) is the 2x2 minor of the coefficient columns;
    any nonzero entry certifies the wedge obstruction.
    """
    A = theta1.parent
    if not isinstance(A, PolynomialTruncatedAlgebra):
        raise ValueError("the wedge matrix needs a free polynomial Der module")
    if theta1.kind != "polynomial" or theta2.parent is not A:
        raise ValueError("both derivations must live on the same polynomial algebra")
    out = {}
    vs = A.variables
    for i in range(len(vs)):
        for j in range(i + 1, len(vs)):
            c1i = theta1.coeffs.get(vs[i], Polynomial())
            c1j = theta1.coeffs.get(vs[j], Polynomial())
            c2i = theta2.coeffs.get(vs[i], Polynomial())
            c2j = theta2.coeffs.get(vs[j], Polynomial())
            minor = c1i * c2j - c1j * c2i
            if minor:
                out[(vs[i], vs[j])] = minor
    return out
