"""Ideal theory for supercommutative superalgebras.

A superideal of k[x's | y's] is handled as a k[x]-submodule of the free
module of rank 2^n whose components are indexed by square-free odd
monomials.  Signs enter only when the closure operation multiplies
generators by odd monomials; after that everything is commutative module
Gröbner theory with a position-over-term flavored order.

Vectors are dicts {(comp, exps): coeff} where comp is a hashable component
id (an odd bitmask for superideals, a (block, bitmask) pair for the
annihilator elimination) and exps is an even exponent tuple.
"""

from __future__ import annotations

from superalg import _kernel
from superalg.superpoly import (
    ParityError,
    StructureError,
    SuperPoly,
    VarSet,
    mask_indices,
    term_key,
)


# ---------------------------------------------------------------------------
# term orders on module monomials


def super_term_key(comp, exps):
    """Standard order: grevlex on even exponents, then odd subset."""
    return (
        0,
        sum(exps),
        tuple(-e for e in reversed(exps)),
        comp.bit_count(),
        tuple(mask_indices(comp)),
    )


def weight_term_key(comp, exps):
    """Odd-weight-first order: fewer odd factors = greater.  The leading
    term of any element then lies in its lowest odd-weight slice, which is
    what makes initial forms of a Gröbner basis present gr(A)."""
    return (
        -comp.bit_count(),
        sum(exps),
        tuple(-e for e in reversed(exps)),
        tuple(mask_indices(comp)),
    )


def elim_term_key(comp, exps):
    """Elimination order for the annihilator computation: every term in the
    main block dominates every term in the tag block."""
    block, mask = comp
    return (1 if block == 0 else 0,) + super_term_key(mask, exps)[1:]


# ---------------------------------------------------------------------------
# vector arithmetic


def vec_is_zero(v):
    return not v


def vec_add_scaled(dst, src, coeff, shift=None):
    """dst += coeff * x^shift * src, in place."""
    eadd = _kernel.exp_add
    for (comp, exps), c in src.items():
        t = (comp, exps if shift is None else eadd(exps, shift))
        nc = dst.get(t)
        nc = coeff * c if nc is None else nc + coeff * c
        if nc:
            dst[t] = nc
        elif t in dst:
            del dst[t]


def vec_lead(v, key):
    return max(v, key=lambda t: key(*t))


def vec_monic(v, key):
    lt = vec_lead(v, key)
    lc = v[lt]
    one_like = lc / lc
    if lc == one_like:
        return dict(v)
    return {t: c / lc for t, c in v.items()}


class GBasis:
    """A list of monic vectors with normal-form reduction against them."""

    def __init__(self, vectors, key):
        self.key = key
        self.vectors = []
        self.leads = []
        for v in vectors:
            if v:
                self.append(vec_monic(v, key))

    def append(self, v):
        self.vectors.append(v)
        self.leads.append(vec_lead(v, self.key))

    def _find_reducer(self, comp, exps, skip=None):
        divides = _kernel.exp_divides
        for i, (lc_comp, lc_exps) in enumerate(self.leads):
            if i == skip:
                continue
            if lc_comp == comp and divides(lc_exps, exps):
                return i
        return None

    def nf(self, v, skip=None):
        """Full normal form: every term of the result is a standard
        monomial (irreducible against the basis)."""
        if not self.vectors:
            return dict(v)
        key = self.key
        sub = _kernel.exp_sub
        work = dict(v)
        result = {}
        while work:
            t = max(work, key=lambda u: key(*u))
            comp, exps = t
            i = self._find_reducer(comp, exps, skip=skip)
            if i is None:
                result[t] = work.pop(t)
            else:
                c = work[t]
                shift = sub(exps, self.leads[i][1])
                # the reducer is monic, so the lead term cancels exactly
                vec_add_scaled(work, self.vectors[i], -c, shift)
        return result


def buchberger(vectors, key):
    """Unique reduced Gröbner basis of the k[x]-submodule spanned by
    ``vectors`` with respect to the module order ``key``."""
    gb = GBasis([], key)
    seed = sorted((vec_monic(v, key) for v in vectors if v), key=lambda v: key(*vec_lead(v, key)))
    for v in seed:
        gb.append(v)
    lcm = _kernel.exp_lcm
    sub = _kernel.exp_sub
    pairs = [(i, j) for i in range(len(gb.vectors)) for j in range(i + 1, len(gb.vectors))]
    while pairs:
        i, j = pairs.pop(0)
        (ci, ei), (cj, ej) = gb.leads[i], gb.leads[j]
        if ci != cj:
            continue
        m = lcm(ei, ej)
        s = {}
        vec_add_scaled(s, gb.vectors[i], _one_of(gb.vectors[i]), sub(m, ei))
        vec_add_scaled(s, gb.vectors[j], -_one_of(gb.vectors[j]), sub(m, ej))
        r = gb.nf(s)
        if r:
            gb.append(vec_monic(r, key))
            k = len(gb.vectors) - 1
            pairs.extend((t, k) for t in range(k))
    return _autoreduce(gb)


def _one_of(v):
    c = next(iter(v.values()))
    return c / c


def _autoreduce(gb):
    key = gb.key
    divides = _kernel.exp_divides
    # dedupe identical monic vectors (the closure produces sign twins)
    vectors = []
    for v in gb.vectors:
        if v not in vectors:
            vectors.append(v)
    # minimalize: drop any element whose lead another (kept) lead divides
    vectors.sort(key=lambda v: key(*vec_lead(v, key)))
    kept = []
    kept_leads = []
    for v in vectors:
        comp, exps = vec_lead(v, key)
        if any(lc == comp and divides(le, exps) for lc, le in kept_leads):
            continue
        kept.append(v)
        kept_leads.append((comp, exps))
    # tail-reduce each element against the others; with pairwise
    # indivisible leads this terminates in the unique reduced basis
    work = GBasis([], key)
    for v in kept:
        work.append(v)
    out = [vec_monic(work.nf(v, skip=i), key) for i, v in enumerate(work.vectors)]
    out.sort(key=lambda v: key(*vec_lead(v, key)), reverse=True)
    final = GBasis([], key)
    for v in out:
        final.append(v)
    return final


# ---------------------------------------------------------------------------
# SuperPoly <-> vector


def poly_to_vec(p):
    return {(mask, exps): c for (exps, mask), c in p.terms.items()}


def vec_to_poly(vs, v):
    return SuperPoly(vs, {(exps, mask): c for (mask, exps), c in v.items()})


# ---------------------------------------------------------------------------
# closure and algebra presentations


def odd_square_free_monomials(vs, min_degree=1, parity=None):
    """All square-free odd monomials y_T as SuperPolys, ascending order."""
    out = []
    for mask in range(1, 1 << vs.n):
        deg = mask.bit_count()
        if deg < min_degree:
            continue
        if parity is not None and deg & 1 != parity:
            continue
        out.append(vs.monomial((0,) * vs.m, mask))
    out.sort(key=lambda p: term_key(next(iter(p.terms))))
    return out


def superideal_closure(gens):
    """Close a generating set under multiplication by odd monomials; the
    k[x]-span of the result is the two-sided superideal generated by gens."""
    out = [g for g in gens if g]
    if not out:
        return []
    vs = out[0].vs
    closed = list(out)
    for g in out:
        for mask in range(1, 1 << vs.n):
            prod = vs.monomial((0,) * vs.m, mask) * g
            if prod and prod not in closed:
                closed.append(prod)
    return closed


def module_groebner(gens, key=super_term_key):
    """Reduced Gröbner basis (as SuperPolys) of the k[x]-span of gens.
    Callers pass a superideal-closed generating set."""
    if not gens:
        return []
    vs = gens[0].vs
    gb = buchberger([poly_to_vec(g) for g in gens], key)
    return [vec_to_poly(vs, v) for v in gb.vectors]


class SuperAlgebra:
    """Finite presentation k[x's | y's] / J with cached Gröbner data.

    Relations are split into parity-homogeneous components at
    construction, so the relation superideal is parity-graded.
    """

    def __init__(self, vs, relations=()):
        self.vs = vs
        rels = []
        for r in relations:
            if r.vs != vs:
                raise StructureError("relation over a different generator set")
            for par in (0, 1):
                part = r.parity_part(par)
                if part and part not in rels:
                    rels.append(part)
        self.relations = rels
        self._gb = None
        self._gbasis = None

    @property
    def module_gb(self):
        """Reduced Gröbner basis of the superideal closure of the relations."""
        if self._gb is None:
            closed = superideal_closure(self.relations)
            self._gb = module_groebner(closed)
            self._gbasis = GBasis([poly_to_vec(g) for g in self._gb], super_term_key)
        return self._gb

    def nf(self, f):
        if not self.module_gb:
            return f
        return vec_to_poly(self.vs, self._gbasis.nf(poly_to_vec(f)))

    def contains_in_ideal(self, f):
        return self.nf(f).is_zero()

    def is_zero_ring(self):
        return self.contains_in_ideal(self.vs.one())

    def parse(self, text):
        from superalg.dsl import parse_poly

        return parse_poly(text, self.vs)

    def __repr__(self):
        return "SuperAlgebra(even=%r, odd=%r, relations=%r)" % (
            list(self.vs.even),
            list(self.vs.odd),
            [str(r) for r in self.relations],
        )


class SuperIdeal:
    """A superideal of a SuperAlgebra, i.e. a k[x]-submodule of the free
    module containing the relation module and closed under odd
    multiplication."""

    def __init__(self, ambient, generators=(), ann_of_zero=False):
        self.ambient = ambient
        self.generators = [ambient.nf(g) for g in generators]
        self.generators = [g for g in self.generators if g]
        self.ann_of_zero = ann_of_zero
        closed = superideal_closure(self.generators) + list(ambient.module_gb)
        self.module_gb = module_groebner(closed)
        self._gbasis = GBasis([poly_to_vec(g) for g in self.module_gb], super_term_key)

    def nf(self, f):
        return vec_to_poly(self.ambient.vs, self._gbasis.nf(poly_to_vec(f)))

    def contains(self, f):
        return self.nf(f).is_zero()

    def is_unit_ideal(self):
        return self.contains(self.ambient.vs.one())

    def __repr__(self):
        return "SuperIdeal(%r)" % [str(g) for g in self.generators]


def normal_form(f, ideal):
    """Unique remainder of f supported on standard monomials; zero iff f
    lies in the ideal."""
    return ideal.nf(f)


def ideal_equal(I, J):
    if I.ambient is not J.ambient and I.ambient.vs != J.ambient.vs:
        raise StructureError("ideals live in different ambient algebras")
    return all(J.contains(g) for g in I.generators + I.ambient.module_gb) and all(
        I.contains(g) for g in J.generators + J.ambient.module_gb
    )


# ---------------------------------------------------------------------------
# annihilators via tag-block elimination


def annihilator(p, algebra):
    """Ann_A(p) = {f : f*p = 0 in A} as a SuperIdeal.

    Computed as the kernel of multiplication-by-p on the free module: the
    graph vectors (y_S * p, e_S-tag) together with the relation basis are
    completed under an order eliminating the main block; basis elements
    supported entirely on the tag block generate the kernel.
    """
    vs = algebra.vs
    if p.parity() is None:
        raise ParityError("annihilator argument must be parity-homogeneous")
    p = algebra.nf(p)
    if p.is_zero():
        return SuperIdeal(algebra, [vs.one()], ann_of_zero=True)
    vectors = []
    zero_exps = (0,) * vs.m
    for mask in range(1 << vs.n):
        col = vs.monomial(zero_exps, mask) * p if mask else p
        v = {((0, cm), ce): c for (cm, ce), c in poly_to_vec(algebra.nf(col)).items()}
        v[((1, mask), zero_exps)] = vs.field.one
        vectors.append(v)
    for g in algebra.module_gb:
        vectors.append({((0, cm), ce): c for (cm, ce), c in poly_to_vec(g).items()})
    gb = buchberger(vectors, elim_term_key)
    gens = []
    for v in gb.vectors:
        if all(comp[0] == 1 for comp, _ in v):
            poly = SuperPoly(vs, {(exps, comp[1]): c for (comp, exps), c in v.items()})
            # the kernel is parity-graded; split defensively
            for par in (0, 1):
                part = poly.parity_part(par)
                if part:
                    gens.append(part)
    return SuperIdeal(algebra, gens)


# ---------------------------------------------------------------------------
# localization at an even element


def fresh_name(base, taken):
    if base not in taken:
        return base
    i = 1
    while "%s%d" % (base, i) in taken:
        i += 1
    return "%s%d" % (base, i)


def extend_poly(p, target_vs):
    """Reinterpret p over a VarSet obtained by appending even variables."""
    images = {n: target_vs.gen(n) for n in p.vs.even + p.vs.odd}
    return p.substitute(images, target_vs)


def localize_at_even(algebra, a):
    """Presentation of A_a: one new even variable t with relation t*a - 1.

    Returns (localized_algebra, inverse_variable_name).  Inverting zero
    yields the zero ring (flagged by is_zero_ring()).
    """
    if a.parity() != 0:
        raise ParityError("can only localize at an even element")
    vs = algebra.vs
    t = fresh_name("t", set(vs.even + vs.odd))
    vs2 = VarSet(vs.even + (t,), vs.odd, vs.field)
    rels = [extend_poly(r, vs2) for r in algebra.relations]
    rels.append(vs2.gen(t) * extend_poly(a, vs2) - vs2.one())
    return SuperAlgebra(vs2, rels), t


# ---------------------------------------------------------------------------
# morphisms and the monomorphism necessary condition


class Morphism:
    """Superalgebra morphism given by generator images."""

    def __init__(self, src, dst, images):
        self.src = src
        self.dst = dst
        self.images = {}
        for name in src.vs.even + src.vs.odd:
            if name not in images:
                raise StructureError("no image for generator %s" % name)
            img = dst.nf(images[name])
            if img and img.parity() != src.vs.parity_of(name):
                raise ParityError("image of %s has wrong parity" % name)
            self.images[name] = img

    def apply(self, f):
        return self.dst.nf(f.substitute(self.images, self.dst.vs, check_parity=False))

    def check_well_defined(self):
        """Returns the first violated relation, or None when the map is a
        morphism (every relation maps into the target ideal)."""
        for r in self.src.relations:
            if not self.apply(r).is_zero():
                return r
        return None


def check_mono_necessary(phi):
    """Necessary condition for SSpec(dst) -> SSpec(src) to be a
    monomorphism: the odd part of the target must be generated, as a
    module over the even part, by the images of odd elements."""
    bad = phi.check_well_defined()
    if bad is not None:
        raise StructureError("map is not well defined: relation %s is not sent to zero" % bad)
    dst = phi.dst
    vs = dst.vs
    src_odd_monomials = odd_square_free_monomials(phi.src.vs, parity=1)
    vectors = [poly_to_vec(g) for g in dst.module_gb]
    even_monomials = [vs.one()] + odd_square_free_monomials(vs, parity=0)
    for m in src_odd_monomials:
        img = phi.apply(m)
        if img.is_zero():
            continue
        for u in even_monomials:
            prod = dst.nf(u * img)
            if prod:
                vectors.append(poly_to_vec(prod))
    gb = buchberger(vectors, super_term_key) if vectors else GBasis([], super_term_key)
    for w in odd_square_free_monomials(vs, parity=1):
        wn = dst.nf(w)
        if wn.is_zero():
            continue
        if gb.nf(poly_to_vec(wn)):
            return False
    return True
