import random

import numpy as np
import pytest

from cayleypers.complex import FilteredComplex, SimplicialComplex, StageSequence, closure
from cayleypers.grading import CayleyGrading, OrderError, leq
from cayleypers.homology import COHOMOLOGY, HOMOLOGY, Engine, homology_basis, persistent_betti, structure_map
from cayleypers.linalg import dense_nullspace, dense_rank
from cayleypers.shapes import grid_torus, torus_bifiltration

from randgen import random_filtration
from test_complex import weighted4

Z1 = CayleyGrading.standard(1)


def constant(simplices, arity=1):
    g = CayleyGrading.standard(arity)
    return FilteredComplex(g, {s: (0,) * arity for s in closure(simplices)}, ((0,) * arity, (2,) * arity))


def oracle_betti(cx: SimplicialComplex, p: int, field: int, reduced: bool) -> int:
    d = cx.boundary(p, field, reduced).to_dense()
    d_up = cx.boundary(p + 1, field, reduced).to_dense()
    z = dense_nullspace(d, field).shape[1] if d.size else cx.count(p)
    return z - (dense_rank(d_up, field) if d_up.size else 0)


def test_circle():
    fc = constant([(0, 1), (1, 2), (0, 2)])
    for p in (2, 3, 5):
        snap = homology_basis(fc, (0,), 1, p)
        assert snap.size == 1
        assert not np.any(fc.complex_at((0,)).boundary(1, p) @ snap.basis[0] % p)


def test_weighted4_components():
    fc = weighted4()
    assert homology_basis(fc, (1, 0), 0).size == 2
    assert [homology_basis(fc, (0, t), 0).size for t in range(4)] == [1, 1, 1, 0]
    assert [homology_basis(fc, (1, t), 0).size for t in range(4)] == [2, 1, 0, 0]
    assert [homology_basis(fc, (2, t), 0).size for t in range(4)] == [3, 1, 0, 0]
    assert [homology_basis(fc, (s, t), 1).size for s in range(3) for t in range(4)] == [0] * 10 + [1, 0]


def test_torus_betti():
    fc = constant(grid_torus())
    for p in (2, 3, 5):
        assert [homology_basis(fc, (0,), k, p, reduced=False).size for k in range(3)] == [1, 2, 1]
        cx = fc.complex_at((0,))
        assert [oracle_betti(cx, k, p, False) for k in range(3)] == [1, 2, 1]


def test_structure_map_examples():
    fc = weighted4()
    assert np.array_equal(structure_map(fc, (1, 1), (1, 1), 0).matrix, np.eye(1, dtype=np.int64))
    sm = structure_map(fc, (1, 0), (1, 1), 0)
    assert sm.matrix.shape == (1, 2) and sm.rank == 1
    # v lives along the first row up to scale index 2 ...
    assert persistent_betti(fc, (0, 0), (0, 2), 0) == 1
    # ... but is identified with w at (1, 1), and w dies at (1, 2)
    assert persistent_betti(fc, (0, 0), (2, 2), 0) == 0
    with pytest.raises(OrderError):
        structure_map(fc, (1, 1), (0, 2), 0)


def test_cohomology_map_is_dual_of_homology_map():
    rng = random.Random(3)
    for _ in range(10):
        fc = random_filtration(rng, 2, top=2)
        for p in (2, 3):
            eng = Engine(fc, p, reduced=True)
            for a in fc.grid_grades():
                for b in fc.grid_grades():
                    if not leq(fc.grading, a, b):
                        continue
                    for k in range(3):
                        h = eng.structure_map(a, b, k, HOMOLOGY).matrix
                        c = eng.structure_map(a, b, k, COHOMOLOGY).matrix
                        # pairing matrices <cocycle_i, cycle_j> at a and at b
                        pa = _pairing(eng, a, k)
                        pb = _pairing(eng, b, k)
                        if pa.size and pb.size:
                            assert np.array_equal((c.T @ pa) % p, (pb @ h) % p)


def _pairing(eng, a, k):
    co = eng.snapshot(a, k, COHOMOLOGY).basis
    ho = eng.snapshot(a, k, HOMOLOGY).basis
    if not co or not ho:
        return np.zeros((len(co), len(ho)), dtype=np.int64)
    return np.array([[int(np.dot(x, y)) % eng.field for y in ho] for x in co])


def test_functoriality_along_chains():
    rng = random.Random(11)
    for _ in range(6):
        fc = random_filtration(rng, 2, top=2)
        eng = Engine(fc, 3)
        grades = fc.grid_grades()
        for a in grades:
            for b in grades:
                for c in grades:
                    if not (leq(fc.grading, a, b) and leq(fc.grading, b, c)):
                        continue
                    for k in range(2):
                        h = eng.structure_map
                        assert np.array_equal(h(a, c, k).matrix, h(b, c, k).matrix @ h(a, b, k).matrix % 3)
                        co = eng.structure_map
                        assert np.array_equal(co(a, c, k, COHOMOLOGY).matrix,
                                              co(a, b, k, COHOMOLOGY).matrix @ co(b, c, k, COHOMOLOGY).matrix % 3)


def test_staircase_paths_agree():
    fc = torus_bifiltration()
    eng = Engine(fc, 2, reduced=False)
    a, c = (0, 0), (2, 2)
    direct = eng.structure_map(a, c, 1).matrix
    for path in ([(0, 0), (1, 0), (2, 0), (2, 1), (2, 2)], [(0, 0), (0, 1), (0, 2), (1, 2), (2, 2)]):
        m = np.eye(eng.dimension(a, 1), dtype=np.int64)
        for x, y in zip(path, path[1:]):
            m = eng.structure_map(x, y, 1).matrix @ m % 2
        assert np.array_equal(m, direct)


def test_universal_coefficients_and_isomorphism_count():
    rng = random.Random(5)
    for arity in (1, 2):
        for _ in range(8):
            fc = random_filtration(rng, arity, top=3 if arity == 1 else 2)
            for p in (2, 5):
                eng = Engine(fc, p)
                for a in fc.grid_grades():
                    for b in fc.grid_grades():
                        if not leq(fc.grading, a, b):
                            continue
                        for k in range(3):
                            hb = eng.persistent_betti(a, b, k, HOMOLOGY)
                            cb = eng.persistent_betti(a, b, k, COHOMOLOGY)
                            assert hb == cb
                            assert eng.dimension(b, k, COHOMOLOGY) == cb + (eng.dimension(b, k) - hb)


def test_stage_sequence_homology():
    t = grid_torus()
    seq = StageSequence([t, t], [{v: v for v in range(9)}])
    eng = Engine(seq, 2, reduced=False)
    assert [eng.dimension((1,), k) for k in range(3)] == [1, 2, 1]
    assert eng.persistent_betti((0,), (1,), 1) == 2
