import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from cayleypers.complex import (FilteredComplex, ManifoldError, OrientationError, RangeError, SimplicialComplex,
                                SimplicialMapError, StageSequence, WeightedPointCloud, boundary_matrix, closure,
                                ConfigError, fundamental_cycle, induced_chain_map, rips_bifiltration, validate)
from cayleypers.grading import CayleyGrading, leq
from cayleypers.linalg import Matrix, dense_rank, rank
from cayleypers.shapes import (SCALE_LEVELS, WEIGHT_LEVELS, WEIGHTED_POINTS, WEIGHTS, grid_torus,
                               tetrahedron_boundary, torus_vertex)

from randgen import random_complex, random_filtration

Z2 = CayleyGrading.standard(2)


def weighted4():
    return rips_bifiltration(WeightedPointCloud(WEIGHTED_POINTS, WEIGHTS), WEIGHT_LEVELS, SCALE_LEVELS)


def test_validate_examples():
    assert validate(FilteredComplex(Z2, {(0,): (0, 0)})).ok
    bad = FilteredComplex(Z2, {(0,): (0, 0), (1,): (1, 0), (0, 1): (0, 0)})
    rep = validate(bad)
    assert not rep.ok and [s for s, _, _ in rep.problems] == [(0, 1)]
    assert validate(weighted4()).ok


def test_validate_reports_missing_face_and_grid():
    fc = FilteredComplex(Z2, {(0,): (0, 0), (0, 1): (1, 1)}, ((0, 0), (0, 0)))
    why = [w for _, _, w in validate(fc).problems]
    assert any("missing" in w for w in why) and any("outside" in w for w in why)


def test_slice_examples():
    fc = weighted4()
    assert fc.slice((0, 0)) == [(0,), (3,)]
    assert fc.slice((1, 1)) == [(0,), (1,), (3,), (1, 3)]
    assert len(fc.slice((2, 3))) == len(fc.grades)
    empty = FilteredComplex(Z2, {(0,): (1, 1)}, ((0, 0), (2, 2)))
    assert empty.slice((0, 2)) == []
    with pytest.raises(RangeError):
        fc.slice((3, 0))


def test_slice_monotone():
    fc = random_filtration(random.Random(1), 2, top=3)
    grades = fc.grid_grades()
    for a in grades:
        for b in grades:
            if leq(Z2, a, b):
                assert set(fc.slice(a)) <= set(fc.slice(b))


def test_boundary_examples():
    tri = closure([(0, 1, 2)])
    assert boundary_matrix(tri, 2, 2).to_dense().ravel().tolist() == [1, 1, 1]
    d2 = boundary_matrix(tri, 2, 3).to_dense().ravel().tolist()
    assert d2 == [1, 2, 1]  # +[12] -[02] +[01] in rows 01, 02, 12
    square = [(0, 1), (1, 2), (2, 3), (0, 3), (0,), (1,), (2,), (3,)]
    assert rank(boundary_matrix(square, 1, 2)) == 3 == dense_rank(boundary_matrix(square, 1, 2).to_dense(), 2)


def test_reduced_augmentation_row():
    d0 = boundary_matrix([(0,), (1,), (2,)], 0, 5, reduced=True)
    assert d0.shape == (1, 3) and d0.to_dense().tolist() == [[1, 1, 1]]
    assert boundary_matrix([(0,), (1,)], 0, 5).shape == (0, 2)


@given(st.integers(0, 10**6), st.sampled_from([2, 3, 5]))
def test_boundary_squares_to_zero(seed, p):
    cx = SimplicialComplex(random_complex(random.Random(seed), 6, 6, 3))
    for k in range(0, cx.dimension + 1):
        for red in (False, True):
            prod = cx.boundary(k, p, red) @ cx.boundary(k + 1, p, red)
            assert prod.nnz() == 0


def test_rips_examples():
    single = rips_bifiltration(WeightedPointCloud([[0.0, 0.0]], [2.0]), [1, 2, 3], [0, 1])
    assert single.grades == {(0,): (1, 0)}
    pair = rips_bifiltration(WeightedPointCloud([[0.0], [1.5]], [1, 1]), [1], [0, 1, 2, 3])
    assert pair.grades[(0, 1)] == (0, 2)
    with pytest.raises(ConfigError):
        rips_bifiltration(WeightedPointCloud([[0.0]], [1]), [], [0])


def test_rips_weighted4_grid():
    fc = weighted4()
    assert fc.grid == ((0, 0), (2, 3))
    assert fc.grades[(0, 2)] == (2, 1) and fc.grades[(1, 3)] == (1, 1)
    assert fc.grades[(0, 3)] == (0, 3) and fc.grades[(0, 1)] == (1, 2)


def test_rips_tolerance_admits_truncated_threshold():
    cloud = WeightedPointCloud(WEIGHTED_POINTS, WEIGHTS)
    fc = rips_bifiltration(cloud, WEIGHT_LEVELS, [0, 1, 2, 2.2360679])
    assert fc.grades == weighted4().grades
    strict = rips_bifiltration(cloud, WEIGHT_LEVELS, [0, 1, 2, 2.2360679], tol=0.0)
    assert (0, 3) not in strict.grades


def test_rips_independent_of_point_order():
    rng = np.random.default_rng(0)
    pts, w = rng.random((6, 2)) * 3, rng.integers(1, 4, size=6).astype(float)
    base = rips_bifiltration(WeightedPointCloud(pts, w), [1, 2, 3], [0.5, 1, 1.5, 2, 5])
    perm = rng.permutation(6)
    shuffled = rips_bifiltration(WeightedPointCloud(pts[perm], w[perm]), [1, 2, 3], [0.5, 1, 1.5, 2, 5])
    relabel = {new: int(old) for new, old in enumerate(perm)}
    assert shuffled.relabel(relabel).grades == base.grades


def test_induced_chain_map_examples():
    tri = closure([(0, 1, 2)])
    seq = StageSequence([tri, tri], [{0: 0, 1: 1, 2: 2}])
    for p in range(3):
        assert induced_chain_map(seq, 0, 1, p, 3) == Matrix.identity(SimplicialComplex(tri).count(p), 3)
    collapse = StageSequence([closure([(0, 1)]), [(0,)]], [{0: 0, 1: 0}])
    assert induced_chain_map(collapse, 0, 1, 1, 2).to_dense().shape == (0, 1)
    with pytest.raises(SimplicialMapError):
        StageSequence([closure([(0, 1)]), [(0,), (1,)]], [{0: 0, 1: 1}])


def test_induced_chain_map_sign():
    edge = closure([(0, 1)])
    seq = StageSequence([edge, edge], [{0: 1, 1: 0}])
    assert induced_chain_map(seq, 0, 1, 1, 5).to_dense().tolist() == [[4]]


def test_torus_collapse_kills_top_class():
    t = grid_torus()
    vmap = {torus_vertex(i, j): torus_vertex(i, 0) for i in range(3) for j in range(3)}
    seq = StageSequence([t, t], [vmap])
    f2 = induced_chain_map(seq, 0, 1, 2, 2)
    assert f2.nnz() == 0


@given(st.integers(0, 10**6), st.sampled_from([2, 3, 5]))
def test_chain_maps_commute_with_boundary(seed, p):
    rng = random.Random(seed)
    src = SimplicialComplex(closure(random_complex(rng, 6, 5, 2)))
    dst_verts = rng.randint(2, 4)
    vmap = {v: rng.randrange(dst_verts) for (v,) in src.simplices(0)}
    dst = SimplicialComplex(closure(tuple(sorted({vmap[v] for v in s})) for s in src))
    seq = StageSequence([src, dst], [vmap])
    for k in range(1, src.dimension + 1):
        lhs = dst.boundary(k, p) @ seq.chain_map((0,), (1,), k, p)
        rhs = seq.chain_map((0,), (1,), k - 1, p) @ src.boundary(k, p)
        assert lhs == rhs


def test_fundamental_cycles():
    s2 = SimplicialComplex(closure(tetrahedron_boundary()))
    assert fundamental_cycle(s2, 2).tolist() == [1, 1, 1, 1]
    t = SimplicialComplex(closure(grid_torus()))
    for p in (2, 3, 5):
        w = fundamental_cycle(t, p)
        assert len(w) == 18 and all(x in (1, p - 1) for x in w)
        assert not np.any(t.boundary(2, p) @ w)
    assert fundamental_cycle(t, 5)[0] == 1


def test_fundamental_cycle_errors():
    with pytest.raises(ManifoldError):
        fundamental_cycle(SimplicialComplex(closure([(0, 1, 2)])), 2)
    # 6-vertex real projective plane is not orientable
    rp2 = [(0, 1, 3), (0, 1, 4), (0, 2, 3), (0, 2, 5), (0, 4, 5), (1, 2, 4), (1, 2, 5), (1, 3, 5), (2, 3, 4),
           (3, 4, 5)]
    cx = SimplicialComplex(closure(rp2))
    assert fundamental_cycle(cx, 2).sum() == 10
    with pytest.raises(OrientationError):
        fundamental_cycle(cx, 3)


@pytest.mark.parametrize("seed", range(5))
def test_restrict_grid_keeps_slices(seed):
    fc = random_filtration(random.Random(seed), 2, top=3)
    sub = fc.restrict_grid((1, 1), (2, 3))
    assert validate(sub).ok
    for a in sub.grid_grades():
        assert sub.slice(a) == fc.slice(a)
