"""Pure-Python fallback for the monomial hot-path kernels.

Odd index sets are bitmasks (bit i set = generator i present, i < 63).
The compiled twin in ``_speedups.pyx`` implements the same functions with
identical semantics; ``_kernel`` picks one at import time.
"""

from __future__ import annotations

IMPLEMENTATION = "python"


def odd_merge(a: int, b: int):
    """Merge two odd index sets written in ascending order.

    Returns ``(sign, mask)``.  ``sign`` is 0 when the sets overlap (a
    repeated odd generator squares to zero), otherwise (-1)**k where k is
    the number of index inversions in the concatenation a.b.
    """
    if a & b:
        return 0, 0
    # inversions = pairs (i in a, j in b) with i > j
    inv = 0
    bb = b
    while bb:
        low = bb & -bb
        j = low.bit_length() - 1
        inv += (a >> (j + 1)).bit_count()
        bb ^= low
    return (-1 if inv & 1 else 1), a | b


def exp_add(ea, eb):
    """Componentwise sum of two exponent tuples."""
    return tuple(x + y for x, y in zip(ea, eb))


def exp_sub(ea, eb):
    """Componentwise difference; caller guarantees divisibility."""
    return tuple(x - y for x, y in zip(ea, eb))


def exp_divides(ea, eb):
    """True iff x^ea divides x^eb."""
    return all(x <= y for x, y in zip(ea, eb))


def exp_lcm(ea, eb):
    return tuple(x if x >= y else y for x, y in zip(ea, eb))


def mul_terms(aterms, bterms):
    """Product of two term dicts {(exps, mask): coeff}; signs from
    odd_merge, like terms combined, zeros dropped."""
    out = {}
    for (ea, ma), ca in aterms.items():
        for (eb, mb), cb in bterms.items():
            sign, mask = odd_merge(ma, mb)
            if sign == 0:
                continue
            t = (tuple(x + y for x, y in zip(ea, eb)), mask)
            c = ca * cb if sign > 0 else -(ca * cb)
            nc = out.get(t)
            nc = c if nc is None else nc + c
            if nc:
                out[t] = nc
            elif t in out:
                del out[t]
    return out


def scale_terms(terms, c):
    return {t: v * c for t, v in terms.items()}
