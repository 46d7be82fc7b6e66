"""Small triangulations and filtrations used by fixtures, demos and tests."""

from __future__ import annotations

from typing import Dict, Iterable, List, Sequence, Tuple

from .complex import FilteredComplex, Simplex, StageSequence, all_faces, closure, simplex
from .grading import CayleyGrading


def torus_vertex(i: int, j: int, m: int = 3, n: int = 3) -> int:
    return (i % m) * n + (j % n)


def torus_square(i: int, j: int, m: int = 3, n: int = 3) -> List[Simplex]:
    """The two triangles of square ``(i, j)`` of the ``m x n`` grid torus."""
    v = lambda a, b: torus_vertex(a, b, m, n)  # noqa: E731
    return [simplex((v(i, j), v(i + 1, j), v(i + 1, j + 1))),
            simplex((v(i, j), v(i, j + 1), v(i + 1, j + 1)))]


def grid_torus(m: int = 3, n: int = 3) -> List[Simplex]:
    """All triangles of the ``m x n`` grid torus (``m, n >= 3``)."""
    return [t for i in range(m) for j in range(n) for t in torus_square(i, j, m, n)]


def tetrahedron_boundary() -> List[Simplex]:
    return [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]


def cone(apex: int, base: Iterable[Simplex]) -> List[Simplex]:
    return [simplex((apex,) + tuple(s)) for s in base]


def _grades_from_stages(stages: Sequence[Iterable[Simplex]]) -> Dict[Simplex, Tuple[int]]:
    grades: Dict[Simplex, Tuple[int]] = {}
    for t, tops in enumerate(stages):
        for s in tops:
            for f in all_faces(simplex(s)):
                if f not in grades:
                    grades[f] = (t,)
    return grades


def _squares(cells) -> List[Simplex]:
    return [t for i, j in cells for t in torus_square(i, j)]


def torus_filtration(kind: str) -> FilteredComplex:
    """The three one-parameter torus filtrations with stages 0..3.

    ``"i"``: a 2x2 block of squares (a disk), then a cylinder, then the torus.
    ``"ii"``: the block, then the torus minus one square (a wedge of two
    circles up to homotopy), then the torus.
    ``"iii"``: the torus, then a cone on a horizontal circle, then also a cone
    on a vertical circle (a sphere up to homotopy).
    """
    block = _squares((i, j) for i in range(2) for j in range(2))
    torus = grid_torus()
    if kind == "i":
        stages = [block, _squares((i, j) for i in range(3) for j in range(2)), torus]
    elif kind == "ii":
        stages = [block, _squares((i, j) for i in range(3) for j in range(3) if (i, j) != (2, 2)), torus]
    elif kind == "iii":
        horiz = [tuple(sorted((torus_vertex(i, 0), torus_vertex(i + 1, 0)))) for i in range(3)]
        vert = [tuple(sorted((torus_vertex(0, j), torus_vertex(0, j + 1)))) for j in range(3)]
        stages = [torus, cone(9, horiz), cone(10, vert)]
    else:
        raise ValueError(f"unknown torus filtration {kind!r}")
    return FilteredComplex(CayleyGrading.standard(1), _grades_from_stages(stages), ((0,), (3,)))


def torus_bifiltration() -> FilteredComplex:
    """Two-parameter torus filtration graded by the stages of ``"i"`` and ``"ii"``."""
    f1, f2 = torus_filtration("i"), torus_filtration("ii")
    grades = {s: f1.grades[s] + f2.grades[s] for s in f1.grades}
    return FilteredComplex(CayleyGrading.standard(2), grades, ((0, 0), (3, 3)))


def torus_identity_sequence() -> StageSequence:
    t = grid_torus()
    return StageSequence([t, t], [{v: v for v in range(9)}])


def torus_collapse_sequence() -> StageSequence:
    """Torus to torus by ``(i, j) -> (i, 0)``, a map of degree zero."""
    t = grid_torus()
    vmap = {torus_vertex(i, j): torus_vertex(i, 0) for i in range(3) for j in range(3)}
    return StageSequence([t, t], [vmap])


def torus_refinement_sequence() -> StageSequence:
    """6x6 grid torus onto the 3x3 one by ``(i, j) -> (i // 2, j // 2)``, degree one."""
    fine, coarse = grid_torus(6, 6), grid_torus()
    vmap = {torus_vertex(i, j, 6, 6): torus_vertex(i // 2, j // 2) for i in range(6) for j in range(6)}
    return StageSequence([fine, coarse], [vmap])


WEIGHTED_POINTS = [(0.0, 0.0), (2.0, 0.0), (0.0, 1.0), (2.0, 1.0)]
WEIGHTS = [1.0, 2.0, 3.0, 1.0]
WEIGHT_LEVELS = [1.0, 2.0, 3.0]
SCALE_LEVELS = [0.0, 1.0, 2.0, 5 ** 0.5]
