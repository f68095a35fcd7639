# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled monomial kernels; semantics identical to _kernel_py."""

from fractions import Fraction

IMPLEMENTATION = "cython"

cdef object _FR = Fraction


cdef inline object _cmul(object ca, object cb):
    # integer-valued rationals multiply without re-running gcd reduction
    if type(ca) is _FR and type(cb) is _FR:
        if ca._denominator == 1 and cb._denominator == 1:
            return _FR(ca._numerator * cb._numerator)
    return ca * cb


cdef inline object _cadd(object ca, object cb):
    if type(ca) is _FR and type(cb) is _FR:
        if ca._denominator == 1 and cb._denominator == 1:
            return _FR(ca._numerator + cb._numerator)
    return ca + cb


cdef inline object _cneg(object c):
    if type(c) is _FR and c._denominator == 1:
        return _FR(-c._numerator)
    return -c


cdef inline int _popcount(unsigned long long x):
    cdef int c = 0
    while x:
        x &= x - 1
        c += 1
    return c


def odd_merge(unsigned long long a, unsigned long long b):
    cdef unsigned long long bb, low
    cdef int inv = 0, j
    if a & b:
        return 0, 0
    bb = b
    while bb:
        low = bb & (~bb + 1)
        j = 0
        while not (low >> j) & 1:
            j += 1
        inv += _popcount(a >> (j + 1))
        bb ^= low
    return (-1 if inv & 1 else 1), a | b


def exp_add(tuple ea, tuple eb):
    cdef Py_ssize_t i, n = len(ea)
    return tuple([ea[i] + eb[i] for i in range(n)])


def exp_sub(tuple ea, tuple eb):
    cdef Py_ssize_t i, n = len(ea)
    return tuple([ea[i] - eb[i] for i in range(n)])


def exp_divides(tuple ea, tuple eb):
    cdef Py_ssize_t i, n = len(ea)
    for i in range(n):
        if ea[i] > eb[i]:
            return False
    return True


def exp_lcm(tuple ea, tuple eb):
    cdef Py_ssize_t i, n = len(ea)
    return tuple([ea[i] if ea[i] >= eb[i] else eb[i] for i in range(n)])


def mul_terms(dict aterms, dict bterms):
    """Product of two term dicts {(exps, mask): coeff}; signs from
    odd_merge, like terms combined, zeros dropped."""
    cdef dict out = {}
    cdef unsigned long long ma, mb, bb, low
    cdef int inv, j
    cdef Py_ssize_t i, n
    cdef tuple ka, kb, ea, eb, t
    for ka, ca in aterms.items():
        ea = <tuple> ka[0]
        ma = <unsigned long long> ka[1]
        n = len(ea)
        for kb, cb in bterms.items():
            mb = <unsigned long long> kb[1]
            if ma & mb:
                continue
            eb = <tuple> kb[0]
            inv = 0
            bb = mb
            while bb:
                low = bb & (~bb + 1)
                j = 0
                while not (low >> j) & 1:
                    j += 1
                inv += _popcount(ma >> (j + 1))
                bb ^= low
            c = _cmul(ca, cb)
            if inv & 1:
                c = _cneg(c)
            t = (tuple([ea[i] + eb[i] for i in range(n)]), ma | mb)
            nc = out.get(t)
            nc = c if nc is None else _cadd(nc, c)
            if nc:
                out[t] = nc
            elif t in out:
                del out[t]
    return out


def scale_terms(dict terms, object c):
    cdef dict out = {}
    for t, v in terms.items():
        out[t] = _cmul(v, c)
    return out
