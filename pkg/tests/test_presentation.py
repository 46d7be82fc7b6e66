import random

import numpy as np
import pytest

from cayleypers.complex import FilteredComplex, ValidationError, closure
from cayleypers.grading import BOTTOM, TOP, CayleyGrading, GradingError
from cayleypers.homology import COHOMOLOGY, HOMOLOGY, Engine
from cayleypers.linalg import Eliminator
from cayleypers.presentation import (GeneratorLookupError, bar_counted_betti, barcode, compute_presentation,
                                     elder_decomposition, union_of_survivals, reduction_barcode, survival_space)
from cayleypers.shapes import torus_filtration

from randgen import random_filtration
from test_complex import weighted4
from test_homology import constant


def relation_span(pres, a):
    e = Eliminator(pres.field)
    for r in pres.relations:
        if all(x <= y for x, y in zip(r.grade, a)):
            e.add(dict(r.coeffs))
    return e


# expected relations over generator ids v=0, w=1, u=2 in degree 0 and e=0 in degree 1
EXPECTED_RELATIONS_H0 = [((0, 3), {0: 1}), ((1, 1), {1: 1, 0: -1}), ((1, 2), {1: 1}), ((2, 1), {2: 1})]
EXPECTED_RELATIONS_H1 = [((2, 3), {0: 1})]


@pytest.mark.parametrize("p", [2, 3, 5])
def test_weighted4_presentation(p):
    fc = weighted4()
    h0, h1 = compute_presentation(fc, 0, p), compute_presentation(fc, 1, p)
    assert [g.grade for g in h0.generators] == [(0, 0), (1, 0), (2, 0)]
    assert [g.grade for g in h1.generators] == [(2, 2)]
    for pres, expected in ((h0, EXPECTED_RELATIONS_H0), (h1, EXPECTED_RELATIONS_H1)):
        got = [(r.grade, {k: v % p for k, v in r.coeffs.items()}) for r in pres.relations]
        want = [(g, {k: v % p for k, v in c.items()}) for g, c in expected]
        assert got == want
        for a, (x, y) in pres.dimension_check().items():
            assert x == y
    # the w - v relation is the merge of v and w
    assert h0.relations[1].merge == (0, 1)


def test_weighted4_generators_are_the_named_classes():
    fc = weighted4()
    eng = Engine(fc, 3)
    pres = compute_presentation(fc, 0, 3, engine=eng)
    v = eng.snapshot((0, 0), 0).representative(pres.generators[0].rep)
    cx = fc.complex_at((0, 0))
    # v is the difference of the two weight-1 points P4 - P1
    assert {cx.simplices(0)[i]: int(c) for i, c in enumerate(v) if c} == {(0,): 2, (3,): 1}


def test_constant_filtration_has_no_relations():
    fc = constant([(0, 1, 2), (2, 3), (3, 4), (2, 4)], arity=2)
    for p in range(3):
        pres = compute_presentation(fc, p, 2, reduced=False)
        assert all(g.grade == (0, 0) for g in pres.generators)
        assert pres.relations == []
        assert all(g.free for g in pres.generators)


def test_unvalidated_filtration_rejected():
    fc = FilteredComplex(CayleyGrading.standard(1), {(0,): (1,), (0, 1): (0,), (1,): (0,)})
    with pytest.raises(ValidationError):
        compute_presentation(fc, 0)


@pytest.mark.parametrize("theory", [HOMOLOGY, COHOMOLOGY])
def test_random_presentations_are_sound(theory):
    rng = random.Random(2)
    for k in range(12):
        fc = random_filtration(rng, 1 + k % 2, top=3 if k % 2 == 0 else 2)
        for p in (0, 1):
            pres = compute_presentation(fc, p, 3, theory)
            for a, (x, y) in pres.dimension_check().items():
                assert x == y, (a, x, y)
            for r in pres.relations:
                assert pres.relation_holds(r)
            # dropping any relation changes a gradewise dimension
            for i in range(len(pres.relations)):
                kept = pres.relations[:i] + pres.relations[i + 1:]
                r = pres.relations[i]
                e = Eliminator(3)
                for s in kept:
                    if all((x <= y) if theory == HOMOLOGY else (x >= y) for x, y in zip(s.grade, r.grade)):
                        e.add(dict(s.coeffs))
                assert e.express(dict(r.coeffs)) is None


def test_survival_of_a_single_free_generator():
    fc = constant([(0, 1), (1, 2), (0, 2)], arity=2)
    pres = compute_presentation(fc, 1, 2)
    assert survival_space(pres, 0) == sorted(fc.grid_grades())
    co = compute_presentation(fc, 1, 2, COHOMOLOGY)
    assert co.generators[0].grade == (2, 2)
    assert survival_space(co, 0) == sorted(fc.grid_grades())


def test_survival_of_w_in_weighted4():
    pres = compute_presentation(weighted4(), 0, 3)
    assert survival_space(pres, 1) == [(1, 0), (1, 1), (2, 0), (2, 1)]
    assert survival_space(pres, 0) == [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (2, 0), (2, 1)]
    with pytest.raises(GeneratorLookupError):
        survival_space(pres, 7)


def test_barcode_examples():
    bars = barcode(torus_filtration("i"), 1, 2, COHOMOLOGY)
    assert [(b.display(((0,), (3,)))) for b in bars] == [(1, 3), (2, 3)]
    assert all(b.death is TOP for b in bars)
    empty = FilteredComplex(CayleyGrading.standard(1), {}, ((0,), (3,)))
    assert list(barcode(empty, 0)) == []
    with pytest.raises(GradingError):
        barcode(weighted4(), 0)


def test_cohomology_bars_alive_at_the_bottom_start_at_minus_infinity():
    bars = barcode(torus_filtration("iii"), 1, 2, COHOMOLOGY)
    assert [b.birth for b in bars] == [BOTTOM, BOTTOM]
    assert [b.display(((0,), (3,))) for b in bars] == [(0, 2), (0, 1)]


def test_survival_union_over_compatible_generators():
    fc = torus_filtration("ii")
    bars = barcode(fc, 1, 2, COHOMOLOGY)
    both = survival_space(bars, {0: 1, 1: 1})
    assert both == union_of_survivals(bars, [0, 1]) == [(1,), (2,), (3,)]
    rng = random.Random(4)
    for _ in range(15):
        fc = random_filtration(rng, 1, top=4)
        for theory in (HOMOLOGY, COHOMOLOGY):
            for p in (0, 1):
                bars = elder_decomposition(Engine(fc, 3), p, theory)
                gens = bars.generators
                if len(gens) < 2:
                    continue
                ids = rng.sample([g.id for g in gens], 2)
                pick = max if theory == COHOMOLOGY else min
                at = (pick(bars.generator(i).grade[0] for i in ids),)
                # only grades where every summand can be formed
                elem = {i: rng.randrange(1, 3) for i in ids}
                got = set(survival_space(bars, elem, at=(min(bars.generator(i).grade[0] for i in ids),)
                                         if theory == COHOMOLOGY else (max(bars.generator(i).grade[0] for i in ids),)))
                want = set()
                for i in ids:
                    want |= set(survival_space(bars, {i: 1}, at=(min(bars.generator(j).grade[0] for j in ids),)
                                               if theory == COHOMOLOGY else (max(bars.generator(j).grade[0] for j in ids),)))
                assert got == want


def _random_suite(n=30, seed=9):
    rng = random.Random(seed)
    return [random_filtration(rng, 1, top=rng.randint(2, 5), n_vertices=rng.randint(3, 7), n_top=rng.randint(2, 9))
            for _ in range(n)]


@pytest.mark.parametrize("field", [2, 3])
def test_bar_count_matches_rank(field):
    for fc in _random_suite():
        eng = Engine(fc, field)
        lo, hi = fc.grid[0][0], fc.grid[1][0]
        for theory in (HOMOLOGY, COHOMOLOGY):
            for p in range(3):
                bars = barcode(fc, p, field, theory)
                for a in range(lo, hi + 1):
                    for b in range(a, hi + 1):
                        assert bar_counted_betti(bars, a, b) == eng.persistent_betti((a,), (b,), p, theory)


def test_reduction_agrees_with_elder_rule():
    for fc in _random_suite(20, seed=3):
        for reduced in (True, False):
            eng = Engine(fc, 5, reduced)
            for p in range(3):
                red = sorted(b.key() for b in reduction_barcode(fc, p, 5, reduced))
                assert red == elder_decomposition(eng, p, HOMOLOGY).multiset()


def test_barcode_independent_of_insertion_order():
    for fc in _random_suite(10, seed=21):
        shuffled = dict(random.Random(0).sample(sorted(fc.grades.items()), len(fc.grades)))
        other = FilteredComplex(fc.grading, shuffled, fc.grid)
        perm = list(range(10))
        random.Random(1).shuffle(perm)
        relabeled = other.relabel(dict(enumerate(perm)))
        for p in range(3):
            for theory in (HOMOLOGY, COHOMOLOGY):
                assert barcode(fc, p, 3, theory).multiset() == barcode(relabeled, p, 3, theory).multiset()
