"""Random small filtrations shared by the property tests."""

import random
from itertools import combinations

from cayleypers.complex import FilteredComplex, all_faces, simplex
from cayleypers.grading import CayleyGrading


def random_complex(rng: random.Random, n_vertices: int = 6, n_top: int = 6, max_dim: int = 2, limit: int = 60):
    verts = list(range(n_vertices))
    out = set((v,) for v in verts)
    for _ in range(n_top):
        k = rng.randint(2, max_dim + 1)
        s = simplex(rng.sample(verts, k))
        new = out | set(all_faces(s))
        if len(new) > limit:
            break
        out = new
    return sorted(out, key=lambda s: (len(s), s))


def random_filtration(rng: random.Random, arity: int = 1, top: int = 4, **kw) -> FilteredComplex:
    """Face-monotone grades drawn uniformly in ``[0, top]^arity``."""
    simps = random_complex(rng, **kw)
    grades = {}
    for s in simps:
        g = [rng.randint(0, top) for _ in range(arity)]
        for f in combinations(s, len(s) - 1) if len(s) > 1 else []:
            g = [max(x, y) for x, y in zip(g, grades[f])]
        grades[s] = tuple(g)
    grid = ((0,) * arity, (top,) * arity)
    return FilteredComplex(CayleyGrading.standard(arity), grades, grid)


def random_suite(seed: int = 7, one: int = 50, two: int = 20):
    rng = random.Random(seed)
    ones = [random_filtration(rng, 1, top=rng.randint(2, 5), n_vertices=rng.randint(3, 7),
                              n_top=rng.randint(2, 9)) for _ in range(one)]
    twos = [random_filtration(rng, 2, top=rng.randint(1, 3), n_vertices=rng.randint(3, 6),
                              n_top=rng.randint(2, 7)) for _ in range(two)]
    return ones, twos
