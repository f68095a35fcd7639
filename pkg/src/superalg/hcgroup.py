"""Matrix Harish-Chandra pairs and the normal form of their group points.

A pair is an even matrix group (cut out of GL_N by a polynomial ideal in
the entries and an inverse-determinant variable), a finite dimensional
module with a polynomial action, and a symmetric equivariant bracket from
the module square into the Lie algebra.  Group points over a coefficient
superalgebra are words in an even matrix and odd-parameter exponentials;
every word rewrites to the unique form  g * e(a_1, v_1) ... e(a_t, v_t).
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from superalg.groebner import SuperAlgebra
from superalg.superpoly import ParityError, StructureError, SuperPoly, VarSet


class HCError(ValueError):
    pass


# ---------------------------------------------------------------------------
# small exact linear algebra over the coefficient field


def nullspace(rows, ncols, field):
    """Basis of the kernel of the matrix given by ``rows`` (lists of field
    scalars) acting on column vectors of length ncols."""
    rows = [list(r) for r in rows if any(r)]
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, len(rows)):
            if rows[i][c]:
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        lc = rows[r][c]
        rows[r] = [v / lc for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [field.zero] * ncols
        vec[fc] = field.one
        for ri, pc in enumerate(pivots):
            vec[pc] = -rows[ri][fc]
        basis.append(vec)
    return basis


# ---------------------------------------------------------------------------
# symbolic matrices


def mat_mul(A, B):
    n = len(A)
    k = len(B)
    m = len(B[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = None
            for t in range(k):
                a = A[i][t]
                b = B[t][j]
                if a and b:
                    p = a * b
                    acc = p if acc is None else acc + p
            row.append(_zero_like(A[i][0]) if acc is None else acc)
        out.append(row)
    return out


def _zero_like(x):
    if isinstance(x, SuperPoly):
        return x.vs.zero()
    return x * 0


def mat_det(A):
    n = len(A)
    if n == 1:
        return A[0][0]
    acc = None
    for j in range(n):
        minor = [row[:j] + row[j + 1 :] for row in A[1:]]
        term = A[0][j] * mat_det(minor)
        if j % 2:
            term = -term
        acc = term if acc is None else acc + term
    return acc


def mat_adjugate(A):
    n = len(A)
    if n == 1:
        one = A[0][0] ** 0 if isinstance(A[0][0], SuperPoly) else Fraction(1)
        return [[one]]
    out = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [
                [A[r][c] for c in range(n) if c != j] for r in range(n) if r != i
            ]
            cof = mat_det(minor)
            if (i + j) % 2:
                cof = -cof
            out[j][i] = cof
    return out


def identity_matrix(n, one):
    zero = _zero_like(one)
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


# ---------------------------------------------------------------------------
# invertible even elements of a coefficient algebra


def invert_even(algebra, u, cap=64):
    """Inverse of an even element whose non-constant part is nilpotent:
    geometric series, terminating because the odd part of a finitely
    generated coefficient algebra is nilpotent."""
    u = algebra.nf(u)
    if u.parity() not in (0,):
        raise ParityError("can only invert even elements")
    c = u.constant_coeff()
    if not c:
        raise HCError("element %s has zero constant term, not invertible here" % u)
    nu = algebra.nf(u - algebra.vs.const(c))
    if nu.is_zero():
        return algebra.vs.const(1 / c)
    inv = algebra.vs.const(1 / c)
    power = algebra.vs.one()
    for _ in range(cap):
        power = algebra.nf(power * nu.scale(-1 / c))
        if power.is_zero():
            return algebra.nf(inv)
        inv = inv + power.scale(1 / c)
    raise HCError("non-constant part of %s is not nilpotent" % u)


_INVERSE_CACHE = {}


def _matrix_key(M):
    return tuple(
        tuple(e.frozen_terms() for e in row) for row in M
    )


def mat_inverse(algebra, M):
    key = (id(algebra), _matrix_key(M))
    if key in _INVERSE_CACHE:
        return _INVERSE_CACHE[key]
    det = algebra.nf(mat_det(M))
    adj = mat_adjugate(M)
    if det == algebra.vs.one():
        out = [[algebra.nf(e) for e in row] for row in adj]
    else:
        dinv = invert_even(algebra, det)
        out = [[algebra.nf(e * dinv) for e in row] for row in adj]
    if len(_INVERSE_CACHE) > 4096:
        _INVERSE_CACHE.clear()
    _INVERSE_CACHE[key] = out
    return out


# ---------------------------------------------------------------------------
# even matrix groups


def group_varset(N, field):
    names = tuple("g%d%d" % (i + 1, j + 1) for i in range(N) for j in range(N))
    return VarSet(names + ("d",), (), field)


class EvenGroupSpec:
    """A closed subgroup of GL_N given by polynomial equations in the
    matrix entries and the inverse determinant d."""

    def __init__(self, N, defining, field=None):
        self.N = N
        if defining:
            self.vs = defining[0].vs
            field = self.vs.field
        else:
            if field is None:
                from superalg.scalars import QQ

                field = QQ
            self.vs = group_varset(N, field)
        self.field = field
        self.defining = list(defining)
        gen_matrix = [
            [self.vs.gen("g%d%d" % (i + 1, j + 1)) for j in range(N)] for i in range(N)
        ]
        self.gen_matrix = gen_matrix
        self.det = mat_det(gen_matrix)
        self.unit_relation = self.vs.gen("d") * self.det - self.vs.one()
        self.algebra = SuperAlgebra(self.vs, self.defining + [self.unit_relation])
        self._check_identity()
        self._lie = None

    def identity_point(self):
        pt = {}
        for i in range(self.N):
            for j in range(self.N):
                pt["g%d%d" % (i + 1, j + 1)] = 1 if i == j else 0
        pt["d"] = 1
        return pt

    def _check_identity(self):
        pt = self.identity_point()
        for f in self.defining:
            if f.evaluate_at_point(pt):
                raise HCError("identity matrix does not satisfy %s" % f)

    def lie_basis(self):
        """Kernel of the Jacobian of the defining equations at the
        identity, as a list of N x N matrices of scalars.  The
        first-order variation of d is minus the trace."""
        if self._lie is not None:
            return self._lie
        N = self.N
        field = self.field
        pt = self.identity_point()
        rows = []
        for f in self.defining + [self.unit_relation]:
            row = []
            dd = f.diff_even("d").evaluate_at_point(pt)
            for i in range(N):
                for j in range(N):
                    c = f.diff_even("g%d%d" % (i + 1, j + 1)).evaluate_at_point(pt)
                    if i == j:
                        c = c - dd  # delta d = -trace contribution
                    row.append(c)
            rows.append(row)
        basis = []
        for vec in nullspace(rows, N * N, field):
            basis.append([[vec[i * N + j] for j in range(N)] for i in range(N)])
        self._lie = basis
        return basis

    def contains_matrix(self, algebra, M, raising=True):
        """Membership of a matrix over the even part of a coefficient
        algebra, modulo the coefficient relations."""
        images = {}
        for i in range(self.N):
            for j in range(self.N):
                images["g%d%d" % (i + 1, j + 1)] = algebra.nf(M[i][j])
        dname = "d"
        didx = self.vs.even_index(dname)
        if any(
            any(exps[didx] for (exps, _) in f.terms) for f in self.defining
        ):
            det = algebra.nf(mat_det(M))
            images[dname] = invert_even(algebra, det)
        else:
            # no defining equation mentions the inverse determinant, but
            # membership still requires the determinant to be invertible
            det = algebra.nf(mat_det(M))
            if not det.constant_coeff():
                if raising:
                    raise HCError("matrix determinant %s is not invertible" % det)
                return False
            images[dname] = algebra.vs.zero()
        for f in self.defining:
            r = algebra.nf(f.substitute(images, algebra.vs, check_parity=False))
            if r:
                if raising:
                    raise HCError("matrix leaves the group: %s evaluates to %s" % (f, r))
                return False
        return True

    def check_closure_randomized(self, seed=0, trials=8):
        """Probabilistic closure check on points of the form
        exp(nilpotent * Lie element) over a purely odd coefficient
        algebra."""
        A = lambda_algebra(("s", "t", "u", "w"), self.field)
        rng = random.Random(seed)
        lie = self.lie_basis()
        if not lie:
            return True
        nilp = [
            A.vs.gen("s") * A.vs.gen("t"),
            A.vs.gen("u") * A.vs.gen("w"),
            A.vs.gen("s") * A.vs.gen("w"),
        ]
        def sample():
            N = self.N
            zero = A.vs.zero()
            mat = [[zero for _ in range(N)] for _ in range(N)]
            for x in lie:
                c = rng.randint(-2, 2)
                nu = nilp[rng.randrange(len(nilp))]
                for i in range(N):
                    for j in range(N):
                        mat[i][j] = mat[i][j] + nu.scale(c * x[i][j])
            return matrix_exp(A, mat)

        for _ in range(trials):
            g = sample()
            h = sample()
            self.contains_matrix(A, g)
            self.contains_matrix(A, mat_mul(g, h))
            self.contains_matrix(A, mat_inverse(A, g))
        return True


def matrix_exp(algebra, Nmat, cap=16):
    """exp of a matrix with nilpotent entries; terminates when the powers
    vanish."""
    n = len(Nmat)
    out = identity_matrix(n, algebra.vs.one())
    power = identity_matrix(n, algebra.vs.one())
    fact = 1
    for k in range(1, cap + 1):
        power = [[algebra.nf(e) for e in row] for row in mat_mul(power, Nmat)]
        if all(e.is_zero() for row in power for e in row):
            return [[algebra.nf(e) for e in row] for row in out]
        fact *= k
        out = [
            [out[i][j] + power[i][j].scale(Fraction(1, fact)) for j in range(n)]
            for i in range(n)
        ]
    raise HCError("matrix is not nilpotent")


def lambda_algebra(odd_names, field=None):
    from superalg.scalars import QQ

    return SuperAlgebra(VarSet((), tuple(odd_names), field or QQ), [])


def lie_algebra_of(group):
    return group.lie_basis()


def f_of(group, algebra, b, x):
    """The dual-number exponential: the matrix I + b*x for an even b with
    b^2 = 0; checked to stay inside the group."""
    b = algebra.nf(b)
    if algebra.nf(b * b):
        raise HCError("square of %s is not zero" % b)
    one = algebra.vs.one()
    N = len(x)
    M = [
        [
            (one if i == j else algebra.vs.zero()) + b.scale(x[i][j])
            for j in range(N)
        ]
        for i in range(N)
    ]
    group.contains_matrix(algebra, M)
    return M


# ---------------------------------------------------------------------------
# pairs


class HCPair:
    def __init__(self, group, t, rho, bracket, name=""):
        """rho: t x t matrix of polynomials over the group coordinates;
        bracket: dict {(i, j): N x N scalar matrix} for i <= j."""
        self.group = group
        self.t = t
        self.rho = rho
        self.name = name
        self.bracket = {}
        for i in range(t):
            for j in range(t):
                key = (min(i, j), max(i, j))
                if key in bracket:
                    self.bracket[(i, j)] = bracket[key]
                else:
                    self.bracket[(i, j)] = [
                        [group.field.zero] * group.N for _ in range(group.N)
                    ]
        self._drho_cache = {}

    def drho(self, x):
        """Linearization of the module action at the identity applied to a
        Lie element: a t x t scalar matrix."""
        key = tuple(tuple(row) for row in x)
        if key in self._drho_cache:
            return self._drho_cache[key]
        group = self.group
        pt = group.identity_point()
        field = group.field
        trace = sum((x[i][i] for i in range(group.N)), start=field.zero)
        out = []
        for r in range(self.t):
            row = []
            for c in range(self.t):
                p = self.rho[r][c]
                acc = field.zero
                for i in range(group.N):
                    for j in range(group.N):
                        pd = p.diff_even("g%d%d" % (i + 1, j + 1)).evaluate_at_point(pt)
                        acc = acc + pd * x[i][j]
                dd = p.diff_even("d").evaluate_at_point(pt)
                acc = acc - dd * trace
                row.append(acc)
            out.append(row)
        self._drho_cache[key] = out
        return out

    def rho_at(self, algebra, M):
        """Evaluate the action matrix at a group point over the even part
        of a coefficient algebra.  Memoized on the matrix contents: the
        rewriting engine hits the same group factors repeatedly."""
        key = (id(algebra), _matrix_key(M))
        cache = getattr(self, "_rho_at_cache", None)
        if cache is None:
            cache = self._rho_at_cache = {}
        if key in cache:
            return cache[key]
        out = self._rho_at(algebra, M)
        cache[key] = out
        return out

    def _rho_at(self, algebra, M):
        images = {}
        for i in range(self.group.N):
            for j in range(self.group.N):
                images["g%d%d" % (i + 1, j + 1)] = algebra.nf(M[i][j])
        didx = self.group.vs.even_index("d")
        if any(
            any(exps[didx] for (exps, _) in p.terms) for row in self.rho for p in row
        ):
            det = algebra.nf(mat_det(M))
            images["d"] = invert_even(algebra, det)
        else:
            images["d"] = algebra.vs.zero()
        return [
            [algebra.nf(p.substitute(images, algebra.vs, check_parity=False)) for p in row]
            for row in self.rho
        ]

    def bracket_matrix(self, i, j):
        return self.bracket[(min(i, j), max(i, j))]


def validate_hc_pair(pair):
    """Checks the pair axioms; returns {check_name: (ok, witness)}."""
    report = {}
    group = pair.group
    vs = group.vs
    t = pair.t
    N = group.N

    # identity action
    pt = group.identity_point()
    ok = True
    wit = None
    for r in range(t):
        for c in range(t):
            want = 1 if r == c else 0
            got = pair.rho[r][c].evaluate_at_point(pt)
            if got != vs.field.of(want):
                ok, wit = False, "rho[%d][%d](identity) = %s" % (r, c, got)
    report["action_identity"] = (ok, wit)

    # action is multiplicative, symbolically over two generic group points
    report["action_homomorphism"] = _check_rho_multiplicative(pair)

    # bracket symmetry (by construction of storage, verify the input shape)
    ok = True
    wit = None
    for i in range(t):
        for j in range(t):
            if pair.bracket_matrix(i, j) != pair.bracket_matrix(j, i):
                ok, wit = False, "bracket[%d][%d] != bracket[%d][%d]" % (i, j, j, i)
    report["bracket_symmetric"] = (ok, wit)

    # bracket values lie in the Lie algebra
    lie = group.lie_basis()
    ok = True
    wit = None
    for i in range(t):
        for j in range(i, t):
            if not _in_span(pair.bracket_matrix(i, j), lie, group.field):
                ok, wit = False, "bracket[%d][%d] outside the Lie algebra" % (i, j)
    report["bracket_in_lie"] = (ok, wit)

    # equivariance: conjugation transport of the bracket equals the
    # action transport, modulo the defining ideal with generic entries
    galg = group.algebra
    G = group.gen_matrix
    adjG = mat_adjugate(G)
    dvar = vs.gen("d")
    ok = True
    wit = None
    for i in range(t):
        for j in range(i, t):
            B = pair.bracket_matrix(i, j)
            Bpoly = [[vs.const(c) for c in row] for row in B]
            lhs = mat_mul(mat_mul(G, Bpoly), adjG)
            lhs = [[e * dvar for e in row] for row in lhs]
            rhs = [[vs.zero() for _ in range(N)] for _ in range(N)]
            for k in range(t):
                for l in range(t):
                    coeff = pair.rho[k][i] * pair.rho[l][j]
                    Bkl = pair.bracket_matrix(k, l)
                    for r in range(N):
                        for c in range(N):
                            if Bkl[r][c]:
                                rhs[r][c] = rhs[r][c] + coeff.scale(Bkl[r][c])
            for r in range(N):
                for c in range(N):
                    diff = galg.nf(lhs[r][c] - rhs[r][c])
                    if diff:
                        ok, wit = False, "bracket[%d][%d] entry (%d,%d): %s" % (
                            i,
                            j,
                            r,
                            c,
                            diff,
                        )
    report["bracket_equivariant"] = (ok, wit)

    # cubic identity with indeterminate coefficients
    tvs = VarSet(tuple("t%d" % (i + 1) for i in range(t)), (), group.field)
    tgens = [tvs.gen("t%d" % (i + 1)) for i in range(t)]
    ok = True
    wit = None
    for l in range(t):
        acc = tvs.zero()
        for i in range(t):
            for j in range(t):
                dr = pair.drho(pair.bracket_matrix(i, j))
                for k in range(t):
                    if dr[l][k]:
                        acc = acc + (tgens[i] * tgens[j] * tgens[k]).scale(dr[l][k])
        if acc:
            ok, wit = False, "component %d: %s" % (l, acc)
    report["cubic_identity"] = (ok, wit)

    return report


def _check_rho_multiplicative(pair):
    group = pair.group
    N = group.N
    field = group.field
    names1 = tuple("g%d%d" % (i + 1, j + 1) for i in range(N) for j in range(N)) + ("d",)
    names2 = tuple("h%d%d" % (i + 1, j + 1) for i in range(N) for j in range(N)) + ("e",)
    vs2 = VarSet(names1 + names2, (), field)
    sub1 = {n: vs2.gen(n) for n in names1}
    sub2 = dict(zip(names1, (vs2.gen(n) for n in names2)))
    rels = [f.substitute(sub1, vs2) for f in group.defining + [group.unit_relation]]
    rels += [f.substitute(sub2, vs2) for f in group.defining + [group.unit_relation]]
    alg2 = SuperAlgebra(vs2, rels)
    G = [[vs2.gen("g%d%d" % (i + 1, j + 1)) for j in range(N)] for i in range(N)]
    H = [[vs2.gen("h%d%d" % (i + 1, j + 1)) for j in range(N)] for i in range(N)]
    GH = mat_mul(G, H)
    prod_images = {}
    for i in range(N):
        for j in range(N):
            prod_images["g%d%d" % (i + 1, j + 1)] = GH[i][j]
    prod_images["d"] = vs2.gen("d") * vs2.gen("e")
    for r in range(pair.t):
        for c in range(pair.t):
            lhs = pair.rho[r][c].substitute(prod_images, vs2)
            rhs = vs2.zero()
            for k in range(pair.t):
                rhs = rhs + pair.rho[r][k].substitute(sub1, vs2) * pair.rho[k][c].substitute(
                    sub2, vs2
                )
            if alg2.nf(lhs - rhs):
                return (False, "rho entry (%d,%d) not multiplicative" % (r, c))
    return (True, None)


def _in_span(mat, basis, field):
    n = len(mat)
    cols = [[b[i][j] for b in basis] for i in range(n) for j in range(n)]
    target = [mat[i][j] for i in range(n) for j in range(n)]
    # solve basis coefficients by Gaussian elimination on the stacked system
    rows = [cols[r] + [target[r]] for r in range(n * n)]
    ncols = len(basis)
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, len(rows)):
            if rows[i][c]:
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        lc = rows[r][c]
        rows[r] = [v / lc for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
    # rows beyond rank must have zero target
    return all(not rows[i][-1] for i in range(r, len(rows)))


def is_graded_pair(pair):
    """The pair presents a graded group iff the bracket vanishes."""
    zero = pair.group.field.zero
    for (i, j), B in pair.bracket.items():
        for row in B:
            for c in row:
                if c != zero:
                    return False
    return True


def gr_pair(pair):
    """Same group and action with the bracket replaced by zero."""
    return HCPair(pair.group, pair.t, pair.rho, {}, name=pair.name + "_gr")


def sdim_of_pair(pair):
    from superalg.sdim import SuperDim, leading_term_dim

    return SuperDim(leading_term_dim(pair.group.algebra), pair.t)


# ---------------------------------------------------------------------------
# elements and the rewriting engine


class HCElement:
    """The normal form g * e(a_1, v_1) ... e(a_t, v_t)."""

    def __init__(self, pair, algebra, g, odd):
        self.pair = pair
        self.algebra = algebra
        self.g = [[algebra.nf(e) for e in row] for row in g]
        for row in self.g:
            for e in row:
                if e and e.parity() != 0:
                    raise ParityError("matrix entry %s is not even" % e)
        odd = [algebra.nf(a) for a in odd]
        if len(odd) != pair.t:
            raise StructureError("expected %d odd coordinates" % pair.t)
        for a in odd:
            if a and a.parity() != 1:
                raise ParityError("odd coordinate %s is not odd" % a)
        self.odd = tuple(odd)

    def __eq__(self, other):
        if not isinstance(other, HCElement):
            return NotImplemented
        return self.pair is other.pair and self.g == other.g and self.odd == other.odd

    def __hash__(self):
        return hash(
            (id(self.pair), tuple(tuple(row) for row in self.g), self.odd)
        )

    def word(self):
        w = [("g", self.g)]
        for i, a in enumerate(self.odd):
            if a:
                w.append(("e", a, i))
        return w

    def map_coefficients(self, morphism):
        """Apply a coefficient-algebra morphism entrywise, then
        renormalize."""
        g = [[morphism.apply(e) for e in row] for row in self.g]
        word = [("g", g)] + [
            ("e", morphism.apply(a), i) for i, a in enumerate(self.odd) if a
        ]
        return normalize_word(self.pair, morphism.dst, word)

    def __repr__(self):
        mat = "[" + ", ".join(
            "[" + ", ".join(str(e) for e in row) + "]" for row in self.g
        ) + "]"
        return "HCElement(g=%s, odd=(%s))" % (mat, ", ".join(str(a) for a in self.odd))


def hc_identity(pair, algebra):
    one = algebra.vs.one()
    return HCElement(
        pair,
        algebra,
        identity_matrix(pair.group.N, one),
        [algebra.vs.zero()] * pair.t,
    )


def _f_matrix(pair, algebra, b, x):
    """I + b*x for a scalar Lie matrix x and an even nilpotent b."""
    one = algebra.vs.one()
    N = pair.group.N
    return [
        [
            (one if i == j else algebra.vs.zero()) + b.scale(x[i][j])
            for j in range(N)
        ]
        for i in range(N)
    ]


def normalize_word(pair, algebra, word, strategy="left", max_steps=100000):
    """Rewrite a word of group factors ('g', matrix) and odd exponentials
    ('e', coefficient, basis_index) into the unique normal form.

    Rules: merge adjacent group factors; push group factors left past
    exponentials via conjugation of the module vector; expand
    exponentials of non-basis vectors; sort exponentials by basis index,
    emitting bracket corrections; merge equal indices.  Termination:
    every emitted correction carries coefficients of strictly higher odd
    degree, and the odd part of the coefficient algebra is nilpotent.
    """
    word = list(word)
    half = Fraction(1, 2) if algebra.vs.field.char == 0 else algebra.vs.field.of(Fraction(1, 2))

    def rule_positions():
        pos = []
        for k in range(len(word)):
            f = word[k]
            if f[0] == "e" and f[1].is_zero():
                pos.append(k)
                continue
            if k + 1 < len(word):
                nxt = word[k + 1]
                if f[0] == "g" and nxt[0] == "g":
                    pos.append(k)
                elif f[0] == "e" and nxt[0] == "g":
                    pos.append(k)
                elif f[0] == "e" and nxt[0] == "e" and f[2] >= nxt[2]:
                    pos.append(k)
        return pos

    steps = 0
    while True:
        steps += 1
        if steps > max_steps:
            raise HCError("rewriting did not terminate within %d steps" % max_steps)
        pos = rule_positions()
        if not pos:
            break
        k = pos[0] if strategy == "left" else pos[-1]
        f = word[k]
        if f[0] == "e" and f[1].is_zero():
            del word[k]
            continue
        nxt = word[k + 1]
        if f[0] == "g" and nxt[0] == "g":
            merged = [
                [algebra.nf(e) for e in row] for row in mat_mul(f[1], nxt[1])
            ]
            word[k : k + 2] = [("g", merged)]
        elif f[0] == "e" and nxt[0] == "g":
            # e(a, v_i) g  ->  g e(a, rho(g^-1) v_i), expanded over the basis
            M = nxt[1]
            Minv = mat_inverse(algebra, M)
            R = pair.rho_at(algebra, Minv)
            a, i = f[1], f[2]
            new = [("g", M)]
            for kk in range(pair.t):
                c = R[kk][i]
                if c:
                    coeff = algebra.nf(c * a)
                    if coeff:
                        new.append(("e", coeff, kk))
            word[k : k + 2] = new
        else:
            a, i = f[1], f[2]
            b, j = nxt[1], nxt[2]
            if i == j:
                corr = algebra.nf((a * b).scale(-1))
                new = []
                if corr:
                    x = pair.bracket_matrix(i, i)
                    xh = [[half * e for e in row] for row in x]
                    if any(e for row in xh for e in row):
                        new.append(("g", _f_matrix(pair, algebra, corr, xh)))
                merged = algebra.nf(a + b)
                if merged:
                    new.append(("e", merged, i))
                word[k : k + 2] = new
            else:
                corr = algebra.nf((a * b).scale(-1))
                new = []
                if corr:
                    x = pair.bracket_matrix(i, j)
                    if any(e for row in x for e in row):
                        new.append(("g", _f_matrix(pair, algebra, corr, x)))
                new.extend([("e", b, j), ("e", a, i)])
                word[k : k + 2] = new
    # collapse: optional single leading group factor, exponentials ascending
    g = identity_matrix(pair.group.N, algebra.vs.one())
    odd = [algebra.vs.zero()] * pair.t
    for f in word:
        if f[0] == "g":
            g = [[algebra.nf(e) for e in row] for row in mat_mul(g, f[1])]
        else:
            odd[f[2]] = f[1]
    pair.group.contains_matrix(algebra, g)
    return HCElement(pair, algebra, g, odd)


def hc_mul(E1, E2, strategy="left"):
    if E1.pair is not E2.pair or E1.algebra is not E2.algebra:
        raise StructureError("elements live over different pairs or coefficients")
    return normalize_word(E1.pair, E1.algebra, E1.word() + E2.word(), strategy)


def hc_inv(E):
    """Reverse the word with negated coefficients and normalize."""
    word = []
    for i in range(E.pair.t - 1, -1, -1):
        if E.odd[i]:
            word.append(("e", -E.odd[i], i))
    word.append(("g", mat_inverse(E.algebra, E.g)))
    return normalize_word(E.pair, E.algebra, word)


# ---------------------------------------------------------------------------
# built-in pair library


def _upper_unitriangular_2x2(field):
    vs = group_varset(2, field)
    defining = [
        vs.gen("g11") - vs.one(),
        vs.gen("g22") - vs.one(),
        vs.gen("g21"),
    ]
    return EvenGroupSpec(2, defining)


def unipotent_pair(field=None):
    """1-dimensional odd space, trivial action, bracket 2*E12."""
    from superalg.scalars import QQ

    field = field or QQ
    group = _upper_unitriangular_2x2(field)
    rho = [[group.vs.one()]]
    two = field.of(2)
    z = field.zero
    bracket = {(0, 0): [[z, two], [z, z]]}
    return HCPair(group, 1, rho, bracket, name="unipotent")


def gl1_weight_pair(field=None):
    """GL_1 acting with weight one on a 1-dimensional odd space, zero
    bracket."""
    from superalg.scalars import QQ

    field = field or QQ
    group = EvenGroupSpec(1, [], field=field)
    rho = [[group.vs.gen("g11")]]
    return HCPair(group, 1, rho, {}, name="gl1-weight")


def sl2_standard_pair(field=None):
    """SL_2 on its 2-dimensional standard module with the symmetric
    equivariant bracket [v, w] = v w^T eps + w v^T eps (eps the
    symplectic form); the cubic identity holds identically."""
    from superalg.scalars import QQ

    field = field or QQ
    vs = group_varset(2, field)
    det = vs.gen("g11") * vs.gen("g22") - vs.gen("g12") * vs.gen("g21")
    group = EvenGroupSpec(2, [det - vs.one()])
    rho = [
        [vs.gen("g11"), vs.gen("g12")],
        [vs.gen("g21"), vs.gen("g22")],
    ]
    z = field.zero
    one = field.one
    two = field.of(2)
    # basis v1 = (1,0), v2 = (0,1); eps = [[0,1],[-1,0]]
    # [v_i, v_j] = v_i v_j^T eps + v_j v_i^T eps
    bracket = {
        (0, 0): [[z, two], [z, z]],
        (0, 1): [[-one, z], [z, one]],
        (1, 1): [[z, z], [-two, z]],
    }
    return HCPair(group, 2, rho, bracket, name="sl2-standard")


def builtin_pairs(field=None):
    return {
        "unipotent": unipotent_pair(field),
        "gl1-weight": gl1_weight_pair(field),
        "sl2-standard": sl2_standard_pair(field),
    }


def unipotent_matrix_model(E):
    """Faithful 3 x 3 model of the unipotent pair: the group factor
    I + c*E12 embeds as I - c*E13 and e(a, v) as I + a*(E12 + E23)."""
    A = E.algebra
    zero = A.vs.zero()
    one = A.vs.one()
    c = E.g[0][1]
    a = E.odd[0]
    return [
        [one, a, -c],
        [zero, one, a],
        [zero, zero, one],
    ]


def unipotent_model_mul(T1, T2, algebra):
    return [[algebra.nf(e) for e in row] for row in mat_mul(T1, T2)]
