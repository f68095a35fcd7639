"""Dimension theory: largest purely even quotient, associated graded
presentation, even/odd Krull dimension, systems of odd parameters, odd
regular sequences, minimal odd generator count at a rational point, and
covering checks for affine super-dimension.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from superalg.groebner import (
    SuperAlgebra,
    SuperIdeal,
    annihilator,
    ideal_equal,
    localize_at_even,
    module_groebner,
    odd_square_free_monomials,
    superideal_closure,
    weight_term_key,
)
from superalg.superpoly import ParityError, StructureError, SuperPoly, VarSet, mask_indices

ZERO_RING_DIM = float("-inf")  # sentinel even dimension of the zero ring


@dataclass(frozen=True)
class SuperDim:
    even: object  # int, or ZERO_RING_DIM for the zero ring
    odd: int

    def as_tuple(self):
        return (self.even, self.odd)

    def __lt__(self, other):
        return self.as_tuple() < other.as_tuple()

    def __le__(self, other):
        return self.as_tuple() <= other.as_tuple()

    def __sub__(self, other):
        return SuperDim(self.even - other.even, self.odd - other.odd)

    def render(self):
        if self.even == ZERO_RING_DIM:
            return "-inf|%d" % self.odd
        return "%d|%d" % (self.even, self.odd)

    def __str__(self):
        return self.render()


@dataclass
class OddParamCertificate:
    elements: list
    annihilator: object  # SuperIdeal or None
    even_dim_witness: object
    reason: str = ""


# ---------------------------------------------------------------------------
# largest purely even quotient and even Krull dimension


def bar(algebra):
    """The largest purely even quotient: all odd generators become zero."""
    vs = algebra.vs
    bvs = VarSet(vs.even, (), vs.field)
    images = {n: bvs.gen(n) for n in vs.even}
    images.update({n: bvs.zero() for n in vs.odd})
    rels = []
    for r in algebra.relations:
        rr = r.substitute(images, bvs)
        if rr and rr not in rels:
            rels.append(rr)
    return SuperAlgebra(bvs, rels)


def leading_term_dim(comm_algebra):
    """Krull dimension of k[x]/I via the maximum size of a variable subset
    touching no leading monomial of the reduced basis."""
    gb = comm_algebra.module_gb
    if any(g.total_degree() == 0 for g in gb):
        return ZERO_RING_DIM
    m = comm_algebra.vs.m
    supports = []
    for g in gb:
        (exps, _), _ = g.lead_term()
        supports.append(frozenset(i for i, e in enumerate(exps) if e))
    for size in range(m, -1, -1):
        for combo in itertools.combinations(range(m), size):
            u = set(combo)
            if all(not s <= u for s in supports):
                return size
    return 0


def krull_dim_even(algebra):
    """Kdim of the even part, computed on the largest purely even quotient
    (the kernel of the projection is nil, so the dimension agrees)."""
    return leading_term_dim(bar(algebra))


def even_annihilator_image_in_bar(ideal, bar_algebra):
    """Generators (in the purely even quotient) of the image of the even
    part of a parity-graded superideal."""
    vs = ideal.ambient.vs
    bvs = bar_algebra.vs
    images = {n: bvs.gen(n) for n in vs.even}
    images.update({n: bvs.zero() for n in vs.odd})
    out = []
    for g in ideal.module_gb:
        if g.parity() == 0:
            gg = g.substitute(images, bvs)
            if gg and gg not in out:
                out.append(gg)
    return out


# ---------------------------------------------------------------------------
# systems of odd parameters


def _check_all_odd(elements):
    for y in elements:
        if y.parity() != 1:
            raise ParityError("%s is not odd" % y)


def is_odd_parameter_system(algebra, elements):
    """Tests whether the product of the elements has an annihilator small
    enough to preserve the even Krull dimension."""
    _check_all_odd(elements)
    prod = algebra.vs.one()
    for y in elements:
        prod = prod * y
    prod = algebra.nf(prod)
    if prod.is_zero():
        return False, OddParamCertificate(list(elements), None, None, "product is zero")
    ann = annihilator(prod, algebra)
    bar_a = bar(algebra)
    d = leading_term_dim(bar_a)
    image = even_annihilator_image_in_bar(ann, bar_a)
    quotient = SuperAlgebra(bar_a.vs, bar_a.relations + image)
    dq = leading_term_dim(quotient)
    ok = dq == d
    reason = "" if ok else "annihilator drops even dimension to %s" % dq
    return ok, OddParamCertificate(list(elements), ann, d, reason)


def is_odd_regular_sequence(algebra, elements):
    """Stronger condition: the annihilator of the product equals the
    superideal generated by the elements themselves."""
    _check_all_odd(elements)
    prod = algebra.vs.one()
    for y in elements:
        prod = prod * y
    ann = annihilator(prod, algebra)
    if ann.ann_of_zero:
        return False
    return ideal_equal(ann, SuperIdeal(algebra, list(elements)))


def odd_parameter_candidates(algebra, extra=(), random_combos=4, seed=0):
    """Finite search pool: odd generators, square-free odd monomials of odd
    degree, caller extras, and seeded random combinations."""
    vs = algebra.vs
    pool = []
    for p in odd_square_free_monomials(vs, parity=1):
        q = algebra.nf(p)
        if q and q not in pool:
            pool.append(q)
    for p in extra:
        if p.parity() != 1:
            raise ParityError("extra candidate %s is not odd" % p)
        q = algebra.nf(p)
        if q and q not in pool:
            pool.append(q)
    if pool and random_combos:
        rng = random.Random(seed)
        monos = odd_square_free_monomials(vs, parity=1)
        for _ in range(random_combos):
            combo = vs.zero()
            for mpoly in monos:
                combo = combo + mpoly.scale(rng.randint(-2, 2))
            q = algebra.nf(combo)
            if q and q not in pool:
                pool.append(q)
    return pool


def ksdim(algebra, extra_candidates=(), random_combos=4, seed=0):
    """Krull super-dimension with an explicit certificate.

    The odd component is the longest parameter system found in the finite
    candidate pool; it is a certified lower bound, capped above by the
    number of odd generators.
    """
    even = krull_dim_even(algebra)
    if even == ZERO_RING_DIM:
        return SuperDim(ZERO_RING_DIM, 0), OddParamCertificate([], None, even, "zero ring")
    pool = odd_parameter_candidates(algebra, extra_candidates, random_combos, seed)
    n = algebra.vs.n
    for k in range(min(n, len(pool)), 0, -1):
        for combo in itertools.combinations(pool, k):
            ok, cert = is_odd_parameter_system(algebra, list(combo))
            if ok:
                return SuperDim(even, k), cert
    return SuperDim(even, 0), OddParamCertificate([], None, even, "no odd parameters")


def sdim_affine(algebra, **kw):
    """Super-dimension of the affine superscheme presented by the algebra."""
    return ksdim(algebra, **kw)


# ---------------------------------------------------------------------------
# rational points


@dataclass
class PointIdeal:
    point: dict  # even generator name -> scalar

    def validate(self, algebra):
        """The point lies on the scheme iff every relation vanishes there
        (odd monomials die under evaluation)."""
        for r in algebra.relations:
            if r.evaluate_at_point(self.point):
                raise StructureError("point does not satisfy relation %s" % r)

    def max_ideal_even_gens(self, algebra):
        """Generators of the maximal ideal of the even part: translated
        even generators plus the even nilpotents from odd pairs."""
        vs = algebra.vs
        gens = [vs.gen(x) - vs.const(self.point[x]) for x in vs.even]
        for i in range(vs.n):
            for j in range(i + 1, vs.n):
                gens.append(vs.gen(vs.odd[i]) * vs.gen(vs.odd[j]))
        return gens

    def max_superideal_gens(self, algebra):
        vs = algebra.vs
        return [vs.gen(x) - vs.const(self.point[x]) for x in vs.even] + [
            vs.gen(y) for y in vs.odd
        ]


def phi_dim_at_point(algebra, pt):
    """Dimension of the odd part modulo the maximal ideal: the minimal
    number of odd module generators at the point."""
    return len(phi_basis_lift(algebra, pt))


def phi_basis_lift(algebra, pt):
    """Odd monomials whose classes form a basis of the odd part modulo the
    maximal ideal, as elements of the algebra."""
    from superalg.oracle import EchelonSpan

    pt.validate(algebra)
    vs = algebra.vs
    ideal = SuperIdeal(algebra, pt.max_ideal_even_gens(algebra))
    out = []
    span = EchelonSpan()
    zero_exps = (0,) * vs.m
    for mask in range(1, 1 << vs.n):
        if mask.bit_count() & 1 == 0:
            continue
        mono = vs.monomial(zero_exps, mask)
        r = ideal.nf(mono)
        if r and span.insert(r.terms):
            out.append(mono)
    return out


def check_oddly_regular_at_point(algebra, pt):
    """Sufficient certificate: a lifted minimal odd generating set is an
    odd regular sequence."""
    lifts = phi_basis_lift(algebra, pt)
    if not lifts:
        return True
    return is_odd_regular_sequence(algebra, lifts)


# ---------------------------------------------------------------------------
# associated graded presentation


def gr_presentation(algebra):
    """Same generators; relations replaced by the lowest odd-weight slices
    of a basis computed with the odd-weight-first order."""
    vs = algebra.vs
    closed = superideal_closure(algebra.relations)
    gb = module_groebner(closed, key=weight_term_key)
    rels = []
    for g in gb:
        wmin = min(mask.bit_count() for (_, mask) in g.terms)
        slice_terms = {t: c for t, c in g.terms.items() if t[1].bit_count() == wmin}
        p = SuperPoly(vs, slice_terms)
        if p and p not in rels:
            rels.append(p)
    return SuperAlgebra(vs, rels)


def is_odd_weight_homogeneous(p):
    weights = {mask.bit_count() for (_, mask) in p.terms}
    return len(weights) <= 1


def hilbert_slice_dims(algebra, max_degree):
    """Number of standard monomials in each total degree up to the bound."""
    from superalg.oracle import all_monomials
    from superalg import _kernel

    gb = algebra.module_gb
    leads = [g.lead_term()[0] for g in gb]
    dims = [0] * (max_degree + 1)
    for exps, mask in all_monomials(algebra.vs, max_degree):
        reducible = any(
            lm == mask and _kernel.exp_divides(le, exps) for (le, lm) in leads
        )
        if not reducible:
            dims[sum(exps) + mask.bit_count()] += 1
    return dims


# ---------------------------------------------------------------------------
# coverings


def covers_unit(algebra, elements):
    """True iff the even parts of the elements generate the unit ideal of
    the even part (checked in the purely even quotient; the kernel is nil,
    so the answer agrees)."""
    bar_a = bar(algebra)
    bvs = bar_a.vs
    images = {n: bvs.gen(n) for n in algebra.vs.even}
    images.update({n: bvs.zero() for n in algebra.vs.odd})
    gens = [a.substitute(images, bvs) for a in elements]
    test = SuperAlgebra(bvs, bar_a.relations + [g for g in gens if g])
    return test.is_zero_ring()


def verify_cover(algebra, elements, **kw):
    """Checks the covering identity: the lexicographic maximum of the
    localized super-dimensions, with the odd part maximized over the
    indices of maximal even dimension, equals the global value."""
    for a in elements:
        if a.parity() != 0:
            raise ParityError("cover element %s is not even" % a)
    if not covers_unit(algebra, elements):
        raise StructureError("elements do not generate the unit ideal of the even part")
    global_dim, _ = ksdim(algebra, **kw)
    local = []
    for a in elements:
        loc, _ = localize_at_even(algebra, a)
        d, _ = ksdim(loc, **kw)
        local.append(d)
    d0 = max(d.even for d in local)
    max_idx = [i for i, d in enumerate(local) if d.even == d0]
    d1 = max(local[i].odd for i in max_idx)
    agreed = SuperDim(d0, d1) == global_dim
    return {
        "global": global_dim,
        "local": local,
        "even_max_indices": max_idx,
        "cover_max": SuperDim(d0, d1),
        "agrees": agreed,
    }
