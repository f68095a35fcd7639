"""The compiled kernel and the pure-Python fallback must agree exactly."""

import random

from superalg import _kernel, _kernel_py


def brute_odd_merge(a, b):
    """Reference implementation: concatenate index lists, count the
    inversions needed to sort, zero on repeats."""
    if a & b:
        return 0, 0
    ia = [i for i in range(64) if a >> i & 1]
    ib = [i for i in range(64) if b >> i & 1]
    seq = ia + ib
    inversions = sum(
        1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j]
    )
    return (-1) ** inversions, a | b


def test_odd_merge_matches_bruteforce():
    rng = random.Random(11)
    for _ in range(2000):
        a = rng.randrange(1 << 10)
        b = rng.randrange(1 << 10)
        assert _kernel_py.odd_merge(a, b) == brute_odd_merge(a, b)


def test_kernels_agree():
    rng = random.Random(12)
    for _ in range(2000):
        a = rng.randrange(1 << 12)
        b = rng.randrange(1 << 12)
        assert _kernel.odd_merge(a, b) == _kernel_py.odd_merge(a, b)
    for _ in range(500):
        m = rng.randint(1, 5)
        e1 = tuple(rng.randint(0, 6) for _ in range(m))
        e2 = tuple(rng.randint(0, 6) for _ in range(m))
        assert _kernel.exp_add(e1, e2) == _kernel_py.exp_add(e1, e2)
        assert _kernel.exp_lcm(e1, e2) == _kernel_py.exp_lcm(e1, e2)
        assert _kernel.exp_divides(e1, e2) == _kernel_py.exp_divides(e1, e2)
        big = _kernel.exp_lcm(e1, e2)
        assert _kernel.exp_sub(big, e1) == _kernel_py.exp_sub(big, e1)


def test_high_bits():
    a = 1 << 62
    b = 1 << 61
    assert _kernel.odd_merge(b, a) == (1, a | b)
    assert _kernel.odd_merge(a, b) == (-1, a | b)
    assert _kernel.odd_merge(a, a) == (0, 0)
