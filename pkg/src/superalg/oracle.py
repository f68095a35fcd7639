"""Degree-truncated dense linear-algebra oracles.

These deliberately avoid the Gröbner machinery: ideals are spanned
degree-by-degree by monomial multiples of the generators and membership is
decided by exact row reduction.  The test suite uses them as an
independent second implementation.
"""

from __future__ import annotations

from superalg.superpoly import SuperPoly, term_key


def all_monomials(vs, max_degree):
    """Every monomial x^a y_S with total degree <= max_degree."""
    out = []

    def even_parts(i, remaining, acc):
        if i == vs.m:
            yield tuple(acc)
            return
        for e in range(remaining + 1):
            acc.append(e)
            yield from even_parts(i + 1, remaining - e, acc)
            acc.pop()

    for mask in range(1 << vs.n):
        odd_deg = mask.bit_count()
        if odd_deg > max_degree:
            continue
        for exps in even_parts(0, max_degree - odd_deg, []):
            out.append((exps, mask))
    out.sort(key=term_key)
    return out


class EchelonSpan:
    """Echelon basis of a k-linear span of polynomials, keyed by leading
    monomial in the global order."""

    def __init__(self):
        self.rows = {}  # pivot term -> monic row dict {term: coeff}

    def reduce(self, terms):
        work = dict(terms)
        while work:
            t = max(work, key=term_key)
            row = self.rows.get(t)
            if row is None:
                return work
            c = work[t]
            for u, cu in row.items():
                nc = work.get(u)
                nc = -c * cu if nc is None else nc - c * cu
                if nc:
                    work[u] = nc
                elif u in work:
                    del work[u]
        return work

    def insert(self, terms):
        r = self.reduce(terms)
        if not r:
            return False
        t = max(r, key=term_key)
        lc = r[t]
        self.rows[t] = {u: c / lc for u, c in r.items()}
        return True


def ideal_span(gens, max_degree):
    """Echelon basis of the degree-truncated superideal span: all monomial
    multiples u*g with total degree <= max_degree."""
    span = EchelonSpan()
    if not gens:
        return span
    vs = gens[0].vs
    for g in gens:
        if g.is_zero():
            continue
        gdeg = g.total_degree()
        for exps, mask in all_monomials(vs, max(0, max_degree - gdeg)):
            prod = vs.monomial(exps, mask) * g
            if prod and prod.total_degree() <= max_degree:
                span.insert(prod.terms)
    return span


def oracle_member(f, gens, max_degree):
    """Membership of f in the superideal generated by gens, certified by
    the degree-truncated span."""
    span = ideal_span(gens, max_degree)
    return not span.reduce(f.terms)


def oracle_annihilator_basis(p, gens, elt_degree, span_degree):
    """All k-linear combinations f of monomials of degree <= elt_degree
    with f*p in the degree-truncated ideal span: returns a basis of that
    kernel as SuperPolys."""
    vs = p.vs
    span = ideal_span(gens, span_degree)
    candidates = all_monomials(vs, elt_degree)
    residuals = []
    for exps, mask in candidates:
        prod = vs.monomial(exps, mask) * p
        residuals.append(span.reduce(prod.terms))
    # kernel of c -> sum c_i residual_i via elimination with bookkeeping
    basis = []  # list of (residual_row, combination dict {cand_index: coeff})
    kernel = []
    for i, r in enumerate(residuals):
        work = dict(r)
        combo = {i: vs.field.one}
        for row, row_combo in basis:
            if not work:
                break
            t = max(row, key=term_key)
            c = work.get(t)
            if c is None:
                continue
            for u, cu in row.items():
                nc = work.get(u)
                nc = -c * cu if nc is None else nc - c * cu
                if nc:
                    work[u] = nc
                elif u in work:
                    del work[u]
            for j, cj in row_combo.items():
                nc = combo.get(j)
                nc = -c * cj if nc is None else nc - c * cj
                if nc:
                    combo[j] = nc
                elif j in combo:
                    del combo[j]
        if not work:
            kernel.append(combo)
        else:
            t = max(work, key=term_key)
            lc = work[t]
            basis.append(
                ({u: c / lc for u, c in work.items()}, {j: c / lc for j, c in combo.items()})
            )
            # keep rows ordered by pivot so earlier pivots reduce first
            basis.sort(key=lambda rc: term_key(max(rc[0], key=term_key)), reverse=True)
    out = []
    for combo in kernel:
        poly = vs.zero()
        for j, c in combo.items():
            exps, mask = candidates[j]
            poly = poly + vs.monomial(exps, mask, c)
        if poly:
            out.append(poly)
    return out
