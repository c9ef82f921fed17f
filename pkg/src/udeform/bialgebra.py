"""Bialgebra presentations, their tensor powers, and axiom checkers.

A Bialgebra object tabulates structure maps on a canonical basis, lazily and
memoized, for all elements of internal degree up to a cutoff supplied at
construction.  Operations that would leave the tabulated range raise
CutoffError instead of truncating -- silent truncation would corrupt the
identity checks built on top of this module.

Shipped kinds:

* ``polynomial-primitive`` -- k[p1,...,pk] with primitive generators,
* ``tensor-primitive``     -- the tensor algebra on a word basis, primitive
  generators (free noncommutative analogue of the above),
* ``monoid``               -- k[M] with grouplike basis: either a finite
  multiplication table or the free commutative monoid on named generators,
* ``matrix-coordinate``    -- the coordinate bialgebra of 2x2 matrices,
  commutative but not cocommutative (Delta a = a@a + b@c, ...).
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .kernel import Monomial, ONE_MONOMIAL, QQ, as_scalar
from .reports import CheckReport


class CutoffError(Exception):
    """A basis key of internal degree above the construction cutoff appeared."""


class CounitUnavailable(Exception):
    """An eps-dependent operation was invoked on a non-counital bialgebra."""


# ---------------------------------------------------------------------------
# presentations
# ---------------------------------------------------------------------------

KINDS = ("polynomial-primitive", "tensor-primitive", "monoid", "matrix-coordinate")


class BialgebraSpec:
    """Serializable description of a bialgebra presentation.

    ``counital`` is structural (it switches eps off); commutativity and
    cocommutativity are never asserted here -- they are derived by the
    checkers up to the degree cutoff.
    """

    def __init__(self, kind, generators=(), counital=True, monoid_table=None):
        if kind not in KINDS:
            raise ValueError("unknown bialgebra kind %r" % (kind,))
        self.kind = kind
        self.generators = list(generators)
        self.counital = bool(counital)
        self.monoid_table = monoid_table
        if len(set(self.generators)) != len(self.generators):
            raise ValueError("duplicate generator names")
        if kind == "matrix-coordinate":
            if not self.generators:
                self.generators = ["a", "b", "c", "d"]
            if len(self.generators) != 4:
                raise ValueError("matrix-coordinate kind needs exactly 4 generators")

    def to_json(self, degree_cutoff=None):
        doc = {
            "kind": self.kind,
            "generators": list(self.generators),
            "flags": {"counital": self.counital},
        }
        if self.monoid_table is not None:
            doc["monoid_table"] = self.monoid_table
        if degree_cutoff is not None:
            doc["degree_cutoff"] = degree_cutoff
        return doc

    @staticmethod
    def from_json(doc):
        flags = doc.get("flags", {})
        return BialgebraSpec(
            doc["kind"],
            doc.get("generators", ()),
            counital=flags.get("counital", True),
            monoid_table=doc.get("monoid_table"),
        )


def construct_bialgebra(spec, degree_cutoff):
    """Build the lazily-tabulated structure maps for one presentation."""
    if degree_cutoff < 1:
        raise ValueError("degree cutoff must be >= 1")
    if spec.kind == "polynomial-primitive":
        return PolynomialPrimitiveBialgebra(spec, degree_cutoff)
    if spec.kind == "tensor-primitive":
        return TensorPrimitiveBialgebra(spec, degree_cutoff)
    if spec.kind == "matrix-coordinate":
        return MatrixCoordinateBialgebra(spec, degree_cutoff)
    if spec.kind == "monoid":
        if spec.monoid_table is not None:
            return FiniteMonoidBialgebra(spec, degree_cutoff)
        return FreeCommutativeMonoidBialgebra(spec, degree_cutoff)
    raise AssertionError(spec.kind)


class Bialgebra:
    """Common machinery over a canonical ordered basis of keys.

    Structure-map tabulation is memoized; recomputation is pure and
    deterministic, so a duplicated first computation under concurrent access
    is harmless and the caches never hold inconsistent state.
    """

    def __init__(self, spec, cutoff):
        self.spec = spec
        self.cutoff = cutoff
        self.counital = spec.counital
        self._coproduct_cache = {}
        self._product_cache = {}
        self._flag_cache = {}

    # -- kind-specific primitives ------------------------------------------
    @property
    def unit_key(self):
        raise NotImplementedError

    def degree(self, key):
        raise NotImplementedError

    def product_keys(self, k1, k2):
        """Sparse product of two basis keys, dict key -> Fraction."""
        raise NotImplementedError

    def _coproduct_generator(self, name):
        """Coproduct of a generator as dict (key, key) -> Fraction."""
        raise NotImplementedError

    def counit_key(self, key):
        raise NotImplementedError

    def basis_keys(self, max_degree):
        """All basis keys of degree <= max_degree, canonically ordered."""
        raise NotImplementedError

    def generator_key(self, name):
        raise NotImplementedError

    def key_str(self, key):
        raise NotImplementedError

    def parse_key(self, text):
        raise NotImplementedError

    def key_sort_key(self, key):
        raise NotImplementedError

    # -- derived structure --------------------------------------------------
    def check_cutoff(self, key):
        if self.degree(key) > self.cutoff:
            raise CutoffError(
                "key %s exceeds degree cutoff %d" % (self.key_str(key), self.cutoff)
            )
        return key

    def coproduct_key(self, key):
        """Delta on a basis key, memoized, dict (key, key) -> Fraction."""
        hit = self._coproduct_cache.get(key)
        if hit is not None:
            return hit
        out = self._coproduct_key(key)
        self._coproduct_cache[key] = out
        return out

    def product_single(self, k1, k2):
        """(key, coeff) when the product of two basis keys is one term, else
        None; memoized.  Every shipped kind is single-term, which makes this
        the fast path of the slotwise tensor product."""
        pair = (k1, k2)
        hit = self._product_cache.get(pair)
        if hit is None:
            table = self.product_keys(k1, k2)
            hit = next(iter(table.items())) if len(table) == 1 else False
            self._product_cache[pair] = hit
        return None if hit is False else hit

    def _coproduct_key(self, key):
        raise NotImplementedError

    def require_counit(self):
        if not self.counital:
            raise CounitUnavailable(
                "bialgebra was constructed in non-counital mode"
            )

    # -- element constructors ------------------------------------------------
    def zero(self, arity=1):
        return TensorElement(self, arity, {})

    def one(self, arity=1):
        return TensorElement(self, arity, {(self.unit_key,) * arity: QQ(1)})

    def element(self, terms):
        return self.tensor(1, {(k,): c for k, c in terms.items()})

    def generator(self, name):
        return self.element({self.generator_key(name): QQ(1)})

    def tensor(self, arity, terms):
        return TensorElement(self, arity, terms)

    # -- derived flags --------------------------------------------------------
    def is_commutative(self, cutoff=None):
        cutoff = self.cutoff if cutoff is None else cutoff
        hit = self._flag_cache.get(("comm", cutoff))
        if hit is not None:
            return hit
        keys = self.basis_keys(cutoff)
        ok = True
        for k1, k2 in itertools.combinations(keys, 2):
            if self.degree(k1) + self.degree(k2) > cutoff:
                continue
            if self.product_keys(k1, k2) != self.product_keys(k2, k1):
                ok = False
                break
        self._flag_cache[("comm", cutoff)] = ok
        return ok

    def is_cocommutative(self, cutoff=None):
        ok, _ = check_cocommutative(self, cutoff)
        return ok

    def __repr__(self):
        return "<Bialgebra %s on %s, cutoff %d>" % (
            self.spec.kind,
            ",".join(self.spec.generators) or "table",
            self.cutoff,
        )


class _MonomialBasisMixin:
    """Keys are Monomials over the generator names."""

    @property
    def unit_key(self):
        return ONE_MONOMIAL

    def degree(self, key):
        return key.degree

    def generator_key(self, name):
        if name not in self.spec.generators:
            raise KeyError("unknown generator %r" % (name,))
        return Monomial({name: 1})

    def basis_keys(self, max_degree):
        names = self.spec.generators
        out = []
        for deg in range(max_degree + 1):
            batch = []
            for combo in itertools.combinations_with_replacement(names, deg):
                d = {}
                for n in combo:
                    d[n] = d.get(n, 0) + 1
                batch.append(Monomial(d))
            batch.sort(key=Monomial.sort_key)
            out.extend(batch)
        return out

    def key_str(self, key):
        return repr(key)

    def parse_key(self, text):
        key = Monomial.parse(text)
        for name, _ in key.exps:
            if name not in self.spec.generators:
                raise KeyError("unknown generator %r" % (name,))
        return key

    def key_sort_key(self, key):
        return key.sort_key()

    def product_keys(self, k1, k2):
        return {self.check_cutoff(k1 * k2): QQ(1)}


class PolynomialPrimitiveBialgebra(_MonomialBasisMixin, Bialgebra):
    """k[p1,...,pk], Delta(p) = p@1 + 1@p, eps(p) = 0."""

    def _coproduct_key(self, key):
        # product of binomial expansions, one generator at a time
        out = {(ONE_MONOMIAL, ONE_MONOMIAL): QQ(1)}
        for name, e in key.exps:
            binom = {}
            c = 1
            for i in range(e + 1):
                binom[(Monomial({name: i}), Monomial({name: e - i}))] = QQ(c)
                c = c * (e - i) // (i + 1)
            out = _convolve_pairs(out, binom)
        return out

    def counit_key(self, key):
        self.require_counit()
        return QQ(1) if key == ONE_MONOMIAL else QQ(0)


class MatrixCoordinateBialgebra(_MonomialBasisMixin, Bialgebra):
    """Coordinate bialgebra of 2x2 matrices on generators (a, b, c, d).

    Delta is the matrix-comultiplication Delta(x_ij) = sum_k x_ik @ x_kj;
    commutative, counital, and visibly not cocommutative.
    """

    def _generator_tables(self):
        a, b, c, d = (Monomial({n: 1}) for n in self.spec.generators)
        one = QQ(1)
        return {
            self.spec.generators[0]: {(a, a): one, (b, c): one},
            self.spec.generators[1]: {(a, b): one, (b, d): one},
            self.spec.generators[2]: {(c, a): one, (d, c): one},
            self.spec.generators[3]: {(c, b): one, (d, d): one},
        }

    def _coproduct_key(self, key):
        tables = self._generator_tables()
        out = {(ONE_MONOMIAL, ONE_MONOMIAL): QQ(1)}
        for name, e in key.exps:
            for _ in range(e):
                out = _convolve_pairs(out, tables[name])
        return out

    def counit_key(self, key):
        self.require_counit()
        # eps(a) = eps(d) = 1, eps(b) = eps(c) = 0, extended multiplicatively
        ga, gb, gc, gd = self.spec.generators
        for name, _ in key.exps:
            if name in (gb, gc):
                return QQ(0)
        return QQ(1)


class TensorPrimitiveBialgebra(Bialgebra):
    """Tensor algebra T(X) on a word basis with primitive generators."""

    @property
    def unit_key(self):
        return ()

    def degree(self, key):
        return len(key)

    def generator_key(self, name):
        return (self.spec.generators.index(name),)

    def product_keys(self, k1, k2):
        return {self.check_cutoff(k1 + k2): QQ(1)}

    def _coproduct_key(self, key):
        # Delta(e_i1 ... e_in) = sum over subsets, order preserved in each slot
        out = {}
        n = len(key)
        for mask in range(1 << n):
            left = tuple(key[i] for i in range(n) if mask >> i & 1)
            right = tuple(key[i] for i in range(n) if not mask >> i & 1)
            out[(left, right)] = out.get((left, right), QQ(0)) + 1
        return out

    def counit_key(self, key):
        self.require_counit()
        return QQ(1) if not key else QQ(0)

    def basis_keys(self, max_degree):
        out = []
        for deg in range(max_degree + 1):
            out.extend(itertools.product(range(len(self.spec.generators)), repeat=deg))
        return out

    def key_str(self, key):
        if not key:
            return "1"
        return "*".join(self.spec.generators[i] for i in key)

    def parse_key(self, text):
        text = text.strip()
        if text in ("", "1"):
            return ()
        return tuple(self.spec.generators.index(f.strip()) for f in text.split("*"))

    def key_sort_key(self, key):
        return (len(key), key)


class FreeCommutativeMonoidBialgebra(_MonomialBasisMixin, Bialgebra):
    """k[M] for the free commutative monoid on named generators.

    Basis elements are grouplike: Delta(m) = m@m and eps(m) = 1; word length
    is the internal degree.
    """

    def _coproduct_key(self, key):
        return {(key, key): QQ(1)}

    def counit_key(self, key):
        self.require_counit()
        return QQ(1)


class FiniteMonoidBialgebra(Bialgebra):
    """k[M] for a finite monoid given by an explicit multiplication table."""

    def __init__(self, spec, cutoff):
        super().__init__(spec, cutoff)
        table = spec.monoid_table
        try:
            self.elements = list(table["elements"])
            self.unit_name = table["unit"]
            rows = table["table"]
        except (TypeError, KeyError) as exc:
            raise ValueError("malformed monoid table: %s" % (exc,))
        if len(set(self.elements)) != len(self.elements):
            raise ValueError("malformed monoid table: duplicate element names")
        if self.unit_name not in self.elements:
            raise ValueError("malformed monoid table: unit not among elements")
        n = len(self.elements)
        if len(rows) != n or any(len(r) != n for r in rows):
            raise ValueError("malformed monoid table: table is not %d x %d" % (n, n))
        self._mul = {}
        for i, x in enumerate(self.elements):
            for j, y in enumerate(self.elements):
                z = rows[i][j]
                if z not in self.elements:
                    raise ValueError("malformed monoid table: product %r unknown" % (z,))
                self._mul[(x, y)] = z
        u = self.unit_name
        for x in self.elements:
            if self._mul[(u, x)] != x or self._mul[(x, u)] != x:
                raise ValueError("malformed monoid table: unit law fails at %r" % (x,))
        for x in self.elements:
            for y in self.elements:
                for z in self.elements:
                    if self._mul[(self._mul[(x, y)], z)] != self._mul[(x, self._mul[(y, z)])]:
                        raise ValueError(
                            "malformed monoid table: associativity fails at (%r,%r,%r)"
                            % (x, y, z)
                        )

    @property
    def unit_key(self):
        return self.unit_name

    def degree(self, key):
        return 0

    def generator_key(self, name):
        if name not in self.elements:
            raise KeyError("unknown monoid element %r" % (name,))
        return name

    def product_keys(self, k1, k2):
        return {self._mul[(k1, k2)]: QQ(1)}

    def _coproduct_key(self, key):
        return {(key, key): QQ(1)}

    def counit_key(self, key):
        self.require_counit()
        return QQ(1)

    def basis_keys(self, max_degree):
        return list(self.elements)

    def key_str(self, key):
        return key

    def parse_key(self, text):
        return self.generator_key(text.strip())

    def key_sort_key(self, key):
        return (0, self.elements.index(key))


def _convolve_pairs(t1, t2):
    """Product of two sparse B@B tables whose keys multiply to single keys."""
    out = {}
    for (a1, b1), c1 in t1.items():
        for (a2, b2), c2 in t2.items():
            key = (a1 * a2, b1 * b2) if isinstance(a1, Monomial) else (a1 + a2, b1 + b2)
            s = out.get(key, QQ(0)) + c1 * c2
            if s:
                out[key] = s
            elif key in out:
                del out[key]
    return out


# ---------------------------------------------------------------------------
# sparse elements of B^(@n)
# ---------------------------------------------------------------------------

class TensorElement:
    """A sparse element of B^(@n); arity 0 means a bare scalar.

    terms map n-tuples of basis keys to Fractions; zero coefficients are
    never stored.  Instances are immutable and may be shared freely.
    """

    __slots__ = ("parent", "arity", "terms")

    def __init__(self, parent, arity, terms):
        if arity < 0:
            raise ValueError("arity must be >= 0")
        cleaned = {}
        for keys, c in terms.items():
            keys = tuple(keys)
            if len(keys) != arity:
                raise ValueError("key tuple %r does not have arity %d" % (keys, arity))
            c = as_scalar(c)
            if c:
                s = cleaned.get(keys, QQ(0)) + c
                if s:
                    cleaned[keys] = s
                elif keys in cleaned:
                    del cleaned[keys]
        self.parent = parent
        self.arity = arity
        self.terms = cleaned

    # -- basics ---------------------------------------------------------------
    def _check_mate(self, other):
        if self.parent is not other.parent:
            raise ValueError("tensor elements live over different bialgebras")
        if self.arity != other.arity:
            raise ValueError("arity mismatch: %d vs %d" % (self.arity, other.arity))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return not self.terms
            return self == other * self.parent.one(self.arity)
        return (
            isinstance(other, TensorElement)
            and self.parent is other.parent
            and self.arity == other.arity
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((id(self.parent), self.arity, frozenset(self.terms.items())))

    def __add__(self, other):
        self._check_mate(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, QQ(0)) + c
            if s:
                out[k] = s
            elif k in out:
                del out[k]
        t = TensorElement.__new__(TensorElement)
        t.parent, t.arity, t.terms = self.parent, self.arity, out
        return t

    def __neg__(self):
        t = TensorElement.__new__(TensorElement)
        t.parent, t.arity = self.parent, self.arity
        t.terms = {k: -c for k, c in self.terms.items()}
        return t

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = as_scalar(c)
        t = TensorElement.__new__(TensorElement)
        t.parent, t.arity = self.parent, self.arity
        t.terms = {k: c * v for k, v in self.terms.items()} if c else {}
        return t

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __mul__(self, other):
        """Slotwise product for equal arities; scalars scale."""
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check_mate(other)
        B = self.parent
        single = B.product_single
        out = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                c = c1 * c2
                keys = []
                for a, b in zip(k1, k2):
                    hit = single(a, b)
                    if hit is None:
                        keys = None
                        break
                    key, kc = hit
                    keys.append(key)
                    if kc != 1:
                        c = c * kc
                if keys is not None:
                    keys = tuple(keys)
                    s = out.get(keys, QQ(0)) + c
                    if s:
                        out[keys] = s
                    elif keys in out:
                        del out[keys]
                    continue
                # general sparse expansion (multi-term slot products)
                partial = {(): c1 * c2}
                for a, b in zip(k1, k2):
                    grown = {}
                    for prefix, pc in partial.items():
                        for key, kc in B.product_keys(a, b).items():
                            nk = prefix + (key,)
                            grown[nk] = grown.get(nk, QQ(0)) + pc * kc
                    partial = grown
                for keys2, c3 in partial.items():
                    s = out.get(keys2, QQ(0)) + c3
                    if s:
                        out[keys2] = s
                    elif keys2 in out:
                        del out[keys2]
        t = TensorElement.__new__(TensorElement)
        t.parent, t.arity, t.terms = B, self.arity, out
        return t

    def one_like(self):
        return self.parent.one(self.arity)

    def zero_like(self):
        return self.parent.zero(self.arity)

    def outer(self, other):
        """Tensor-product concatenation u @ v of arities m and n."""
        if self.parent is not other.parent:
            raise ValueError("tensor elements live over different bialgebras")
        out = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                out[k1 + k2] = c1 * c2
        t = TensorElement.__new__(TensorElement)
        t.parent, t.arity, t.terms = self.parent, self.arity + other.arity, out
        return t

    # -- structure maps on slots ----------------------------------------------
    def apply_coproduct(self, slot):
        """Delta on slot i (1-based); arity grows by one."""
        if not 1 <= slot <= self.arity:
            raise ValueError("slot %d out of range for arity %d" % (slot, self.arity))
        B = self.parent
        out = {}
        i = slot - 1
        for keys, c in self.terms.items():
            for (a, b), c2 in B.coproduct_key(keys[i]).items():
                nk = keys[:i] + (a, b) + keys[i + 1:]
                s = out.get(nk, QQ(0)) + c * c2
                if s:
                    out[nk] = s
                elif nk in out:
                    del out[nk]
        t = TensorElement.__new__(TensorElement)
        t.parent, t.arity, t.terms = B, self.arity + 1, out
        return t

    def apply_counit(self, slot):
        """eps on slot i (1-based); arity shrinks by one."""
        if not 1 <= slot <= self.arity:
            raise ValueError("slot %d out of range for arity %d" % (slot, self.arity))
        B = self.parent
        out = {}
        i = slot - 1
        for keys, c in self.terms.items():
            c2 = c * B.counit_key(keys[i])
            if not c2:
                continue
            nk = keys[:i] + keys[i + 1:]
            s = out.get(nk, QQ(0)) + c2
            if s:
                out[nk] = s
            elif nk in out:
                del out[nk]
        t = TensorElement.__new__(TensorElement)
        t.parent, t.arity, t.terms = B, self.arity - 1, out
        return t

    def permute(self, sigma):
        """Right action (u . sigma)_i = u_{sigma(i)}; sigma is a 1-based tuple."""
        if sorted(sigma) != list(range(1, self.arity + 1)):
            raise ValueError("%r is not a permutation of 1..%d" % (sigma, self.arity))
        out = {}
        for keys, c in self.terms.items():
            out[tuple(keys[s - 1] for s in sigma)] = c
        t = TensorElement.__new__(TensorElement)
        t.parent, t.arity, t.terms = self.parent, self.arity, out
        return t

    def scalar_value(self):
        """The Fraction carried by an arity-0 element."""
        if self.arity != 0:
            raise ValueError("not an arity-0 element")
        return self.terms.get((), QQ(0))

    def map_keys_linear(self, images, target=None):
        """Apply phi@...@phi slotwise, phi given on basis keys by `images`.

        `images(key)` must return an arity-1 element over `target` (defaults
        to this element's parent).
        """
        target = target or self.parent
        out = target.zero(self.arity)
        for keys, c in self.terms.items():
            piece = TensorElement(target, 0, {(): c})
            for k in keys:
                piece = piece.outer(images(k))
            out = out + piece
        return out

    def degree(self):
        """Largest total internal degree over the support."""
        B = self.parent
        return max(
            (sum(B.degree(k) for k in keys) for keys in self.terms),
            default=0,
        )

    def homogeneous_parts(self):
        """Split into internal-degree-homogeneous pieces, dict degree -> element."""
        B = self.parent
        buckets = {}
        for keys, c in self.terms.items():
            d = sum(B.degree(k) for k in keys)
            buckets.setdefault(d, {})[keys] = c
        return {
            d: TensorElement(B, self.arity, terms) for d, terms in buckets.items()
        }

    def sorted_terms(self):
        B = self.parent
        return sorted(
            self.terms.items(),
            key=lambda item: tuple(B.key_sort_key(k) for k in item[0]),
        )

    def render(self):
        """Canonical text form, terms in basis order."""
        if not self.terms:
            return "0"
        B = self.parent
        bits = []
        for keys, c in self.sorted_terms():
            body = "@".join(B.key_str(k) for k in keys) if keys else "()"
            if c == 1:
                bits.append(body)
            elif c == -1:
                bits.append("-" + body)
            else:
                bits.append("%s*%s" % (c, body))
        return " + ".join(bits).replace("+ -", "- ")

    def __repr__(self):
        return self.render()


# ---------------------------------------------------------------------------
# module-level operation entry points
# ---------------------------------------------------------------------------

def tensor_multiply(u, v):
    """Slotwise product on B^(@n)."""
    return u * v


def slot_apply(map_name, slot, u):
    """Apply Delta, eps or id to one slot of a tensor."""
    if map_name == "delta":
        return u.apply_coproduct(slot)
    if map_name == "eps":
        return u.apply_counit(slot)
    if map_name == "id":
        if not 1 <= slot <= u.arity:
            raise ValueError("slot %d out of range for arity %d" % (slot, u.arity))
        return u
    raise ValueError("map must be one of delta/eps/id, got %r" % (map_name,))


def permute_factors(sigma, u):
    return u.permute(tuple(sigma))


def iterated_coproduct(b, k):
    """Delta^k sending B to B^(@(k+1)); Delta^0 = id and Delta^(-1) = eps."""
    if b.arity != 1:
        raise ValueError("iterated coproduct starts from an arity-1 element")
    if k < -1:
        raise ValueError("k must be >= -1")
    if k == -1:
        return b.apply_counit(1)
    out = b
    for _ in range(k):
        out = out.apply_coproduct(1)
    return out


# ---------------------------------------------------------------------------
# checkers
# ---------------------------------------------------------------------------

def check_axioms(B, cutoff=None):
    """Verify the bialgebra axioms on all basis elements within the cutoff."""
    cutoff = B.cutoff if cutoff is None else cutoff
    report = CheckReport("bialgebra axioms (%s)" % B.spec.kind)
    keys = B.basis_keys(cutoff)

    bad = None
    for k in keys:
        e = B.element({k: QQ(1)})
        lhs = e.apply_coproduct(1).apply_coproduct(1)
        rhs = e.apply_coproduct(1).apply_coproduct(2)
        if lhs != rhs:
            bad = {"element": B.key_str(k), "lhs": lhs.render(), "rhs": rhs.render()}
            break
    report.add("coassociativity", bad is None, bad)

    if B.counital:
        bad = None
        for k in keys:
            e = B.element({k: QQ(1)})
            d = e.apply_coproduct(1)
            if d.apply_counit(1) != e or d.apply_counit(2) != e:
                bad = {"element": B.key_str(k)}
                break
        report.add("counit law", bad is None, bad)

    bad = None
    for k1 in keys:
        for k2 in keys:
            if B.degree(k1) + B.degree(k2) > cutoff:
                continue
            e1 = B.element({k1: QQ(1)})
            e2 = B.element({k2: QQ(1)})
            lhs = (e1 * e2).apply_coproduct(1)
            rhs = e1.apply_coproduct(1) * e2.apply_coproduct(1)
            if lhs != rhs:
                bad = {
                    "pair": "%s , %s" % (B.key_str(k1), B.key_str(k2)),
                    "lhs": lhs.render(),
                    "rhs": rhs.render(),
                }
                break
        if bad:
            break
    report.add("coproduct is an algebra morphism", bad is None, bad)

    if B.counital:
        bad = None
        for k1 in keys:
            for k2 in keys:
                if B.degree(k1) + B.degree(k2) > cutoff:
                    continue
                e1 = B.element({k1: QQ(1)})
                e2 = B.element({k2: QQ(1)})
                lhs = (e1 * e2).apply_counit(1).scalar_value()
                rhs = B.counit_key(k1) * B.counit_key(k2)
                if lhs != rhs:
                    bad = {"pair": "%s , %s" % (B.key_str(k1), B.key_str(k2))}
                    break
            if bad:
                break
        report.add("counit is an algebra morphism", bad is None, bad)

    return report


def check_cocommutative(B, cutoff=None):
    """True iff tau.Delta = Delta on all basis keys within the cutoff."""
    cutoff = B.cutoff if cutoff is None else cutoff
    for k in B.basis_keys(cutoff):
        d = B.element({k: QQ(1)}).apply_coproduct(1)
        if d.permute((2, 1)) != d:
            return False, B.key_str(k)
    return True, None


class _CoproductOverride(Bialgebra):
    """A bialgebra with the coproduct of selected basis keys replaced.

    Deliberately breaks the axioms; used to exercise the failure branches of
    the checkers (everything else delegates to the wrapped bialgebra).
    """

    def __init__(self, base, overrides):
        super().__init__(base.spec, base.cutoff)
        self._base = base
        self._overrides = dict(overrides)

    @property
    def unit_key(self):
        return self._base.unit_key

    def degree(self, key):
        return self._base.degree(key)

    def product_keys(self, k1, k2):
        return self._base.product_keys(k1, k2)

    def counit_key(self, key):
        self.require_counit()
        return self._base.counit_key(key)

    def basis_keys(self, max_degree):
        return self._base.basis_keys(max_degree)

    def generator_key(self, name):
        return self._base.generator_key(name)

    def key_str(self, key):
        return self._base.key_str(key)

    def parse_key(self, text):
        return self._base.parse_key(text)

    def key_sort_key(self, key):
        return self._base.key_sort_key(key)

    def _coproduct_key(self, key):
        hit = self._overrides.get(key)
        if hit is not None:
            return hit
        return self._base._coproduct_key(key)


def with_coproduct_override(B, overrides):
    """Copy of B whose Delta is replaced on the given basis keys.

    overrides: dict basis-key -> dict (key, key) -> coefficient.  The result
    generally violates coassociativity or multiplicativity; that is the point.
    """
    return _CoproductOverride(B, overrides)
