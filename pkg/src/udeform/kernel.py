"""Exact scalar, polynomial, and truncated-power-series arithmetic.

Everything here is exact: scalars are arbitrary-precision rationals, and no
operation ever stores a zero coefficient or an unreduced fraction.  The series
layer is generic over its coefficient space -- any objects with +, -, * and
scalar multiplication by Fraction will do (rationals, polynomials, tensors),
so one code path serves scalar series and tensor-valued series alike.
"""

from __future__ import annotations

from fractions import Fraction

QQ = Fraction

__all__ = [
    "QQ",
    "Monomial",
    "Polynomial",
    "TruncSeries",
    "series_bilinear",
]


def as_scalar(x):
    """Coerce ints/strings like '3/2' to Fraction; pass Fractions through."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError("not an exact scalar: %r" % (x,))


# ---------------------------------------------------------------------------
# sparse monomials and polynomials
# ---------------------------------------------------------------------------

class Monomial:
    """A sparse product of named variables with positive integer exponents.

    Stored as a sorted tuple of (name, exponent) pairs; zero exponents are
    never stored, so the empty monomial is the constant 1.
    """

    __slots__ = ("exps", "_hash")

    def __init__(self, exps=()):
        if isinstance(exps, Monomial):
            self.exps = exps.exps
            self._hash = exps._hash
            return
        if isinstance(exps, dict):
            items = exps.items()
        else:
            items = exps
        cleaned = {}
        for name, e in items:
            e = int(e)
            if e < 0:
                raise ValueError("negative exponent in monomial")
            if e:
                cleaned[name] = cleaned.get(name, 0) + e
        self.exps = tuple(sorted(cleaned.items()))
        self._hash = hash(self.exps)

    @property
    def degree(self):
        return sum(e for _, e in self.exps)

    def __mul__(self, other):
        d = dict(self.exps)
        for name, e in other.exps:
            d[name] = d.get(name, 0) + e
        return Monomial(d)

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        return isinstance(other, Monomial) and self.exps == other.exps

    def __lt__(self, other):
        # degree-then-lexicographic; gives every basis a canonical order
        return (self.degree, self.exps) < (other.degree, other.exps)

    def sort_key(self):
        return (self.degree, self.exps)

    def __repr__(self):
        if not self.exps:
            return "1"
        return "*".join(n if e == 1 else "%s^%d" % (n, e) for n, e in self.exps)

    @staticmethod
    def parse(text):
        """Parse '1', 'p', 'p^2*q' into a Monomial."""
        text = text.strip()
        if text in ("", "1"):
            return Monomial()
        d = {}
        for factor in text.split("*"):
            factor = factor.strip()
            if factor == "1":
                continue
            if "^" in factor:
                name, e = factor.split("^")
                d[name.strip()] = d.get(name.strip(), 0) + int(e)
            else:
                d[factor] = d.get(factor, 0) + 1
        return Monomial(d)


ONE_MONOMIAL = Monomial()


class Polynomial:
    """Sparse multivariate polynomial with Fraction coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        cleaned = {}
        if terms:
            for mono, c in terms.items():
                c = as_scalar(c)
                if not isinstance(mono, Monomial):
                    mono = Monomial(mono)
                if c:
                    acc = cleaned.get(mono)
                    c = c if acc is None else acc + c
                    if c:
                        cleaned[mono] = c
                    elif mono in cleaned:
                        del cleaned[mono]
        self.terms = cleaned

    @staticmethod
    def constant(c):
        c = as_scalar(c)
        return Polynomial({ONE_MONOMIAL: c} if c else {})

    @staticmethod
    def variable(name):
        return Polynomial({Monomial({name: 1}): QQ(1)})

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    @property
    def degree(self):
        return max((m.degree for m in self.terms), default=0)

    def constant_term(self):
        return self.terms.get(ONE_MONOMIAL, QQ(0))

    def one_like(self):
        return Polynomial({ONE_MONOMIAL: QQ(1)})

    def zero_like(self):
        return Polynomial()

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, QQ(0)) + c
            if s:
                out[m] = s
            elif m in out:
                del out[m]
        p = Polynomial.__new__(Polynomial)
        p.terms = out
        return p

    def __neg__(self):
        p = Polynomial.__new__(Polynomial)
        p.terms = {m: -c for m, c in self.terms.items()}
        return p

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (Fraction, int)):
            return self.scale(other)
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = m1 * m2
                s = out.get(m, QQ(0)) + c1 * c2
                if s:
                    out[m] = s
                elif m in out:
                    del out[m]
        p = Polynomial.__new__(Polynomial)
        p.terms = out
        return p

    def __rmul__(self, other):
        if isinstance(other, (Fraction, int)):
            return self.scale(other)
        return NotImplemented

    def scale(self, c):
        c = as_scalar(c)
        p = Polynomial.__new__(Polynomial)
        p.terms = {} if not c else {m: c * v for m, v in self.terms.items()}
        return p

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(other)
        return isinstance(other, Polynomial) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __pow__(self, n):
        assert isinstance(n, int) and n >= 0
        out = Polynomial.constant(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def substitute_linear(self, images):
        """Substitute each variable by a Polynomial (e.g. u1 -> u1 + u2)."""
        out = Polynomial()
        for mono, c in self.terms.items():
            term = Polynomial.constant(c)
            for name, e in mono.exps:
                img = images.get(name)
                if img is None:
                    img = Polynomial.variable(name)
                term = term * img ** e
            out = out + term
        return out

    def partial(self, name):
        """Exact partial derivative with respect to one variable."""
        out = {}
        for mono, c in self.terms.items():
            d = dict(mono.exps)
            e = d.get(name, 0)
            if not e:
                continue
            if e == 1:
                del d[name]
            else:
                d[name] = e - 1
            m = Monomial(d)
            s = out.get(m, QQ(0)) + c * e
            if s:
                out[m] = s
            elif m in out:
                del out[m]
        p = Polynomial.__new__(Polynomial)
        p.terms = out
        return p

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for mono in sorted(self.terms, key=Monomial.sort_key):
            c = self.terms[mono]
            if mono == ONE_MONOMIAL:
                bits.append(str(c))
            elif c == 1:
                bits.append(repr(mono))
            elif c == -1:
                bits.append("-%s" % repr(mono))
            else:
                bits.append("%s*%s" % (c, repr(mono)))
        s = " + ".join(bits)
        return s.replace("+ -", "- ")


# ---------------------------------------------------------------------------
# the truncation ring R = Q[[t]]/t^(N+1), generic in the coefficient space
# ---------------------------------------------------------------------------

def _one_like(c):
    """Multiplicative unit of the coefficient space that c lives in."""
    fn = getattr(c, "one_like", None)
    if fn is not None:
        return fn()
    return QQ(1)


def _is_zero(c):
    return not c


class TruncSeries:
    """c0 + c1*t + ... + cN*t^N with exactly N+1 stored coefficient slots.

    Operations silently discard degrees above N; two series are equal iff
    their orders match and all N+1 slots agree.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        self.coeffs = tuple(coeffs)
        if not self.coeffs:
            raise ValueError("a truncated series needs at least the t^0 slot")

    @property
    def order(self):
        return len(self.coeffs) - 1

    @staticmethod
    def scalar(values, order=None):
        """Series with Fraction coefficients; pads with zeros up to order."""
        vals = [as_scalar(v) for v in values]
        if order is not None:
            if len(vals) > order + 1:
                raise ValueError("too many coefficients for requested order")
            vals += [QQ(0)] * (order + 1 - len(vals))
        return TruncSeries(vals)

    @staticmethod
    def constant(value, order):
        zero = value - value  # zero of the same coefficient space
        return TruncSeries([value] + [zero] * order)

    def _require_same_order(self, other):
        if self.order != other.order:
            raise ValueError(
                "truncation orders differ: %d vs %d" % (self.order, other.order)
            )

    def __add__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        self._require_same_order(other)
        return TruncSeries([a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        self._require_same_order(other)
        return TruncSeries([a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return TruncSeries([-a for a in self.coeffs])

    def __mul__(self, other):
        """Cauchy product truncated at the common order."""
        if not isinstance(other, TruncSeries):
            return NotImplemented
        self._require_same_order(other)
        n = self.order
        out = []
        for k in range(n + 1):
            acc = None
            for i in range(k + 1):
                a, b = self.coeffs[i], other.coeffs[k - i]
                if _is_zero(a) or _is_zero(b):
                    continue
                term = a * b
                acc = term if acc is None else acc + term
            if acc is None:
                acc = self.coeffs[0] * other.coeffs[0]
                acc = acc - acc  # typed zero
            out.append(acc)
        return TruncSeries(out)

    def scale(self, c):
        c = as_scalar(c)
        return TruncSeries([c * a for a in self.coeffs])

    def shift(self, k):
        """Multiply by t^k, truncating."""
        zero = self.coeffs[0] - self.coeffs[0]
        return TruncSeries(([zero] * k + list(self.coeffs))[: self.order + 1])

    def map_coeffs(self, fn):
        return TruncSeries([fn(a) for a in self.coeffs])

    def __eq__(self, other):
        return (
            isinstance(other, TruncSeries)
            and self.order == other.order
            and all(a == b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __hash__(self):
        return hash(self.coeffs)

    def is_zero(self):
        return all(_is_zero(a) for a in self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def exp(self):
        """Sum x^k/k! for x with zero constant term; exp(0) = 1."""
        if not _is_zero(self.coeffs[0]):
            raise ValueError("exp needs a zero constant term")
        one = _one_like(self.coeffs[0])
        out = TruncSeries.constant(one, self.order)
        power = out
        factorial = 1
        for k in range(1, self.order + 1):
            power = power * self
            factorial *= k
            out = out + power.scale(QQ(1, factorial))
        return out

    def log(self):
        """Sum (-1)^(k+1) (y-1)^k / k for y with constant term 1."""
        one = _one_like(self.coeffs[0])
        if not self.coeffs[0] == one:
            raise ValueError("log needs constant term 1")
        u = self - TruncSeries.constant(one, self.order)
        out = TruncSeries.constant(one - one, self.order)
        power = TruncSeries.constant(one, self.order)
        for k in range(1, self.order + 1):
            power = power * u
            out = out + power.scale(QQ((-1) ** (k + 1), k))
        return out

    def inverse(self):
        """Multiplicative inverse; constant term must be 1 or a nonzero scalar."""
        one = _one_like(self.coeffs[0])
        if not self.coeffs[0] == one:
            c = self.coeffs[0]
            if isinstance(c, Fraction) and c != 0:
                return self.scale(1 / c).inverse().scale(1 / c)
            raise ValueError("constant term is not invertible")
        u = TruncSeries.constant(one, self.order) - self
        out = TruncSeries.constant(one, self.order)
        power = TruncSeries.constant(one, self.order)
        for _ in range(self.order):
            power = power * u
            out = out + power
        return out

    def __repr__(self):
        bits = []
        for k, c in enumerate(self.coeffs):
            if _is_zero(c):
                continue
            if k == 0:
                bits.append("%s" % (c,))
            elif k == 1:
                bits.append("(%s)*t" % (c,))
            else:
                bits.append("(%s)*t^%d" % (c, k))
        return " + ".join(bits) if bits else "0"


def series_bilinear(fn, a, b):
    """Extend a bilinear map over two series in the Cauchy pattern.

    Returns the series whose t^k slot is sum_{i+j=k} fn(a_i, b_j); used for
    operadic compositions of series-valued tensors, which are bilinear but
    not coefficientwise products.
    """
    if a.order != b.order:
        raise ValueError("truncation orders differ")
    n = a.order
    out = []
    for k in range(n + 1):
        acc = None
        for i in range(k + 1):
            x, y = a.coeffs[i], b.coeffs[k - i]
            if _is_zero(x) or _is_zero(y):
                continue
            term = fn(x, y)
            acc = term if acc is None else acc + term
        if acc is None:
            probe = fn(a.coeffs[0], b.coeffs[0])
            acc = probe - probe
        out.append(acc)
    return TruncSeries(out)
