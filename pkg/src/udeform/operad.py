"""The two operads a bialgebra generates, and executable axiom checkers.

For a bialgebra B the multiplicative operad has n-th component B^(@n) and
grafts v into slot i of u by multiplying the (n-1)-times iterated coproduct
of the i-th factor into v.  The additive ("logarithmic") operad has the same
components but composes by adding a coproduct-expanded copy of u to a
unit-padded copy of v; it never touches the product of B, so it makes sense
for a bare coalgebra with a grouplike unit.  The operad unit is 1 in the
multiplicative flavor and 0 in the additive one.

The axioms are theorems, so the checkers here exist to catch implementation
bugs: they combine fixed-seed random sweeps with exhaustive low-degree
sweeps and report witnesses on failure.
"""

from __future__ import annotations

import itertools
import random

from .bialgebra import CutoffError, TensorElement, iterated_coproduct
from .kernel import QQ
from .reports import CheckReport

FLAVOR_MULTIPLICATIVE = "multiplicative"
FLAVOR_ADDITIVE = "additive"
FLAVORS = (FLAVOR_MULTIPLICATIVE, FLAVOR_ADDITIVE)


class OperadElement:
    """A flavored element: payload in B^(@n), n >= 1 for the additive flavor."""

    __slots__ = ("flavor", "payload")

    def __init__(self, flavor, payload):
        if flavor not in FLAVORS:
            raise ValueError("unknown operad flavor %r" % (flavor,))
        if flavor == FLAVOR_ADDITIVE and payload.arity < 1:
            raise ValueError("the additive operad has no arity-0 component")
        if payload.arity == 0 and not payload.parent.counital:
            raise ValueError("arity 0 needs a counital bialgebra")
        self.flavor = flavor
        self.payload = payload

    @property
    def arity(self):
        return self.payload.arity

    @staticmethod
    def unit(flavor, B):
        if flavor == FLAVOR_MULTIPLICATIVE:
            return OperadElement(flavor, B.one(1))
        return OperadElement(flavor, B.zero(1))

    def compose(self, i, other):
        if self.flavor != other.flavor:
            raise ValueError("cannot compose across operad flavors")
        if self.flavor == FLAVOR_MULTIPLICATIVE:
            return OperadElement(self.flavor, circ_B(self.payload, i, other.payload))
        return OperadElement(self.flavor, circ_b(self.payload, i, other.payload))

    def __eq__(self, other):
        return (
            isinstance(other, OperadElement)
            and self.flavor == other.flavor
            and self.payload == other.payload
        )

    def __repr__(self):
        return "<%s operad element %s>" % (self.flavor, self.payload.render())


def circ_B(u, i, v):
    """Multiplicative partial composition of tensors u (arity m), v (arity n).

    Slot i of u is replaced by Delta^(n-1)(u_i) multiplied slotwise into v,
    extended bilinearly.  Arity-0 v uses the counit (our Delta^(-1)).
    """
    m, n = u.arity, v.arity
    if not 1 <= i <= m:
        raise ValueError("composition slot %d out of range for arity %d" % (i, m))
    B = u.parent
    if B is not v.parent:
        raise ValueError("operands live over different bialgebras")
    out = B.zero(m + n - 1)
    for keys, c in u.terms.items():
        mid = iterated_coproduct(B.element({keys[i - 1]: QQ(1)}), n - 1) * v
        for mkeys, mc in mid.terms.items():
            term = keys[: i - 1] + mkeys + keys[i:]
            out = out + TensorElement(B, m + n - 1, {term: c * mc})
    return out


def circ_b(u, i, v):
    """Additive partial composition; touches only the coproduct and unit of B.

    Result is (u with slot i coproduct-expanded to arity n) plus
    (v padded by operadic units 1 on both sides).  The product of B must
    never be invoked here; a regression test pins that down.
    """
    m, n = u.arity, v.arity
    if m < 1 or n < 1:
        raise ValueError("the additive operad is indexed from arity 1")
    if not 1 <= i <= m:
        raise ValueError("composition slot %d out of range for arity %d" % (i, m))
    B = u.parent
    if B is not v.parent:
        raise ValueError("operands live over different bialgebras")
    expanded = u
    for _ in range(n - 1):
        expanded = expanded.apply_coproduct(i)
    padded = B.one(i - 1).outer(v).outer(B.one(m - i))
    return expanded + padded


def _compose(flavor, u, i, v):
    return circ_B(u, i, v) if flavor == FLAVOR_MULTIPLICATIVE else circ_b(u, i, v)


def _unit_payload(flavor, B):
    return B.one(1) if flavor == FLAVOR_MULTIPLICATIVE else B.zero(1)


# ---------------------------------------------------------------------------
# permutation helpers (right action, one-line notation, 1-based)
# ---------------------------------------------------------------------------

def compose_permutations(sigma, tau):
    """sigma then tau in the right-action sense: u.(sigma tau) = (u.sigma).tau."""
    return tuple(sigma[tau[k] - 1] for k in range(len(tau)))

def inflate_inner(tau, i, m):
    """tau acting on the block [i, i+n-1] inside m+n-1 slots, identity outside."""
    n = len(tau)
    out = []
    for p in range(1, m + n):
        if p < i:
            out.append(p)
        elif p < i + n:
            out.append(i - 1 + tau[p - i])
        else:
            out.append(p)
    return tuple(out)

def inflate_outer(sigma, i, n):
    """sigma in Sigma_m with input sigma(i) expanded to a block of n slots."""
    m = len(sigma)
    s_i = sigma[i - 1]
    out = []
    for p in range(1, m + n):
        if p < i:
            q = sigma[p - 1]
            out.append(q if q < s_i else q + n - 1)
        elif p < i + n:
            out.append(s_i + (p - i))
        else:
            q = sigma[p - n]
            out.append(q if q < s_i else q + n - 1)
    return tuple(out)


# ---------------------------------------------------------------------------
# sampling
# ---------------------------------------------------------------------------

def random_tensor(B, rng, arity, max_degree=2, max_terms=2):
    keys = B.basis_keys(max_degree)
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        tup = tuple(rng.choice(keys) for _ in range(arity))
        terms[tup] = terms.get(tup, 0) + rng.choice([-2, -1, 1, 2])
    return TensorElement(B, arity, {k: QQ(c) for k, c in terms.items() if c})


def _sample_arity(rng, flavor, counital):
    lo = 0 if (flavor == FLAVOR_MULTIPLICATIVE and counital) else 1
    # arity 0 stays rare; most of the interesting cases live at 1..3
    pick = rng.randint(max(lo, 1), 3)
    if lo == 0 and rng.random() < 0.1:
        return 0
    return pick


# ---------------------------------------------------------------------------
# checkers
# ---------------------------------------------------------------------------

def _assoc_case_triples(a, b, c):
    """Yield (case, j, i, checker) index data for the three associativity cases."""
    for j in range(1, a + 1):
        for i in range(1, j):
            yield 1, j, i
        for i in range(j, b + j):
            yield 2, j, i
        for i in range(j + b, a + b):
            yield 3, j, i


def _check_assoc_on(flavor, u, v, w, tested, skipped):
    """Return (case, j, i, lhs, rhs) for the first failing case, else None.

    Instances whose intermediate products leave the tabulated degree range
    cannot be decided inside the truncation and are counted as skipped."""
    a, b, c = u.arity, v.arity, w.arity
    for case, j, i in _assoc_case_triples(a, b, c):
        try:
            uv = _compose(flavor, u, j, v)
            lhs = _compose(flavor, uv, i, w)
            if case == 1:
                rhs = _compose(flavor, _compose(flavor, u, i, w), j + c - 1, v)
            elif case == 2:
                rhs = _compose(flavor, u, j, _compose(flavor, v, i - j + 1, w))
            else:
                rhs = _compose(flavor, _compose(flavor, u, i - b + 1, w), j, v)
        except CutoffError:
            skipped[case] += 1
            continue
        tested[case] += 1
        if lhs != rhs:
            return case, j, i, lhs, rhs
    return None


def _exhaustive_low_degree_elements(B, flavor, total_degree=2, max_arity=2):
    """Single-term tensors on basis keys; used for the exhaustive sweeps."""
    out = []
    keys = B.basis_keys(total_degree)
    lo = 0 if (flavor == FLAVOR_MULTIPLICATIVE and B.counital) else 1
    for arity in range(max(lo, 1), max_arity + 1):
        for tup in itertools.product(keys, repeat=arity):
            deg = sum(B.degree(k) for k in tup)
            if deg <= total_degree:
                out.append(TensorElement(B, arity, {tup: QQ(1)}))
    if lo == 0:
        out.append(TensorElement(B, 0, {(): QQ(1)}))
    return out


def check_assoc_cases(flavor, B, samples=50, cutoff=None, seed=0):
    """All three associativity cases on random and exhaustive triples."""
    if flavor not in FLAVORS:
        raise ValueError("unknown operad flavor %r" % (flavor,))
    report = CheckReport("operad associativity (%s over %s)" % (flavor, B.spec.kind))
    rng = random.Random(seed)
    max_degree = 2 if cutoff is None else max(1, min(2, cutoff // 3))

    failures = {1: None, 2: None, 3: None}
    tested = {1: 0, 2: 0, 3: 0}
    skipped = {1: 0, 2: 0, 3: 0}

    def run(u, v, w):
        bad = _check_assoc_on(flavor, u, v, w, tested, skipped)
        if bad is not None:
            case, j, i, lhs, rhs = bad
            if failures[case] is None:
                failures[case] = {
                    "case": case,
                    "i": i,
                    "j": j,
                    "u": u.render(),
                    "v": v.render(),
                    "w": w.render(),
                    "lhs": lhs.render(),
                    "rhs": rhs.render(),
                }

    for _ in range(samples):
        u = random_tensor(B, rng, _sample_arity(rng, flavor, B.counital), max_degree)
        v = random_tensor(B, rng, _sample_arity(rng, flavor, B.counital), max_degree)
        w = random_tensor(B, rng, _sample_arity(rng, flavor, B.counital), max_degree)
        if u.arity == 0:
            u = B.one(1)
        run(u, v, w)

    basis_elements = _exhaustive_low_degree_elements(B, flavor)
    for u in basis_elements:
        if u.arity == 0:
            continue
        for v in basis_elements:
            for w in basis_elements:
                if u.degree() + v.degree() + w.degree() > 2:
                    continue
                run(u, v, w)

    for case in (1, 2, 3):
        label = "associativity case %d (%d instances)" % (case, tested[case])
        if skipped[case]:
            label += ", %d outside the degree range" % skipped[case]
        report.add(label, failures[case] is None, failures[case])
    return report


def check_equivariance(B, samples=50, seed=0):
    """Right-equivariance of the multiplicative composition.

    Checks u o_i (v.tau) = (u o_i v).tau' and (u.sigma) o_i v =
    (u o_sigma(i) v).sigma'' on random data; passes exactly when the
    coproduct is cocommutative.
    """
    report = CheckReport("operad equivariance (%s)" % B.spec.kind)
    rng = random.Random(seed)
    bad_inner = None
    bad_outer = None

    def perms(n):
        return list(itertools.permutations(range(1, n + 1)))

    cases = []
    for _ in range(samples):
        u = random_tensor(B, rng, rng.randint(1, 3), 2)
        v = random_tensor(B, rng, rng.randint(1, 3), 2)
        cases.append((u, v))
    # the decisive low-degree case: a generator against 1@1
    for name in B.spec.generators[:4]:
        g = B.generator(name)
        cases.append((g, B.one(2)))

    for u, v in cases:
        m, n = u.arity, v.arity
        for i in range(1, m + 1):
            for tau in perms(n):
                try:
                    lhs = circ_B(u, i, v.permute(tau))
                    rhs = circ_B(u, i, v).permute(inflate_inner(tau, i, m))
                except CutoffError:
                    continue
                if lhs != rhs and bad_inner is None:
                    bad_inner = {
                        "u": u.render(),
                        "v": v.render(),
                        "i": i,
                        "tau": list(tau),
                        "lhs": lhs.render(),
                        "rhs": rhs.render(),
                    }
        for sigma in perms(m):
            for i in range(1, m + 1):
                try:
                    lhs = circ_B(u.permute(sigma), i, v)
                    rhs = circ_B(u, sigma[i - 1], v).permute(
                        inflate_outer(sigma, i, n)
                    )
                except CutoffError:
                    continue
                if lhs != rhs and bad_outer is None:
                    bad_outer = {
                        "u": u.render(),
                        "v": v.render(),
                        "i": i,
                        "sigma": list(sigma),
                        "lhs": lhs.render(),
                        "rhs": rhs.render(),
                    }

    report.add("inner equivariance u o (v.tau)", bad_inner is None, bad_inner)
    report.add("outer equivariance (u.sigma) o v", bad_outer is None, bad_outer)
    return report


def check_unit(flavor, B, samples=50, seed=0):
    """Unit laws: unit o_1 v = v and u o_i unit = u."""
    report = CheckReport("operad unit laws (%s over %s)" % (flavor, B.spec.kind))
    rng = random.Random(seed)
    unit = _unit_payload(flavor, B)
    bad_left = None
    bad_right = None
    elements = [random_tensor(B, rng, rng.randint(1, 3), 2) for _ in range(samples)]
    elements.extend(
        e for e in _exhaustive_low_degree_elements(B, flavor) if e.arity >= 1
    )
    for v in elements:
        try:
            got = _compose(flavor, unit, 1, v)
            if got != v and bad_left is None:
                bad_left = {"v": v.render(), "got": got.render()}
            for i in range(1, v.arity + 1):
                got = _compose(flavor, v, i, unit)
                if got != v and bad_right is None:
                    bad_right = {"u": v.render(), "i": i, "got": got.render()}
        except CutoffError:
            continue
    report.add("unit o_1 v = v", bad_left is None, bad_left)
    report.add("u o_i unit = u", bad_right is None, bad_right)
    return report


def reconstruct_bialgebra_check(B, cutoff=2):
    """Diagnostic for the bialgebra <-> operad dictionary, one direction.

    Reads the bialgebra structure back off the multiplicative operad
    (product = o_1 at arity one, Delta(b) = b o_1 (1@1), eps via the arity-0
    component) and confirms it agrees with the declared structure maps.
    """
    report = CheckReport("bialgebra reconstruction from the operad (%s)" % B.spec.kind)
    keys = [k for k in B.basis_keys(cutoff)]

    bad = None
    for k1 in keys:
        for k2 in keys:
            if B.degree(k1) + B.degree(k2) > B.cutoff:
                continue
            e1, e2 = B.element({k1: QQ(1)}), B.element({k2: QQ(1)})
            if circ_B(e1, 1, e2) != e1 * e2:
                bad = {"pair": "%s , %s" % (B.key_str(k1), B.key_str(k2))}
                break
        if bad:
            break
    report.add("product recovered by o_1", bad is None, bad)

    bad = None
    for k in keys:
        e = B.element({k: QQ(1)})
        if circ_B(e, 1, B.one(2)) != e.apply_coproduct(1):
            bad = {"element": B.key_str(k)}
            break
    report.add("coproduct recovered by b o_1 (1@1)", bad is None, bad)

    if B.counital:
        bad = None
        scalar_one = TensorElement(B, 0, {(): QQ(1)})
        for k in keys:
            e = B.element({k: QQ(1)})
            got = circ_B(e, 1, scalar_one).scalar_value()
            if got != B.counit_key(k):
                bad = {"element": B.key_str(k)}
                break
        report.add("counit recovered by the arity-0 slot", bad is None, bad)

    return report
