import random

import pytest

from superalg.groebner import SuperAlgebra
from superalg.scalars import QQ
from superalg.superpoly import SuperPoly, VarSet


def make_algebra(even, odd, rel_builder=None, field=QQ):
    vs = VarSet(tuple(even), tuple(odd), field)
    rels = rel_builder(vs) if rel_builder else []
    return SuperAlgebra(vs, rels)


def random_poly(vs, rng, max_degree=3, terms=4, coeff_range=3):
    """A random SuperPoly over vs with small integer coefficients."""
    p = vs.zero()
    for _ in range(terms):
        exps = [0] * vs.m
        budget = rng.randint(0, max_degree)
        for _ in range(budget):
            if vs.m:
                exps[rng.randrange(vs.m)] += 1
        mask = rng.randrange(1 << vs.n) if vs.n else 0
        c = rng.randint(-coeff_range, coeff_range)
        if c:
            p = p + vs.monomial(tuple(exps), mask, c)
    return p


@pytest.fixture
def rng():
    return random.Random(20240817)
