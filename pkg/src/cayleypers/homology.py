"""Gradewise (co)homology, structure maps and persistent Betti numbers.

Any object exposing ``grading``, ``grid``, ``in_grid``, ``complex_at(a)`` and
``chain_map(a, b, p, field)`` can be fed to :class:`Engine`; both
:class:`~cayleypers.complex.FilteredComplex` and
:class:`~cayleypers.complex.StageSequence` qualify.

Cohomology is computed on the dual cochain spaces: cocycles are
``ker d_{p+1}^T`` and coboundaries ``im d_p^T``. Cohomology maps run against
the grading order, ``b -> a`` for ``a <= b``, and are the pullbacks along the
transposed chain maps.
"""

from __future__ import annotations

import weakref
from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .complex import RangeError
from .grading import Grade, OrderError, leq
from .linalg import Eliminator, Matrix, check_prime, dense_rank, image_basis, kernel_basis, to_sparse

HOMOLOGY = "homology"
COHOMOLOGY = "cohomology"
THEORIES = (HOMOLOGY, COHOMOLOGY)


def check_theory(theory: str) -> str:
    if theory not in THEORIES:
        raise ValueError(f"theory must be one of {THEORIES}, got {theory!r}")
    return theory


@dataclass
class HomologySnapshot:
    """A basis of ``H_p`` (or ``H^p``) at one grade.

    ``basis`` holds cycle (cocycle) representatives as dense vectors over the
    p-simplices of the slice, independent modulo ``boundaries``.
    """

    grade: Grade
    dim: int
    theory: str
    reduced: bool
    field: int
    basis: List[np.ndarray]
    boundaries: List[np.ndarray]
    _elim: Eliminator = dc_field(repr=False, default=None)

    @property
    def size(self) -> int:
        return len(self.basis)

    def coordinates(self, vec) -> np.ndarray:
        """Coordinates of the class of a (co)cycle in ``basis``.

        Raises ValueError if ``vec`` is not in cycles = basis + boundaries.
        """
        combo = self._elim.express(to_sparse(vec, self.field))
        if combo is None:
            raise ValueError(f"vector is not a {'cycle' if self.theory == HOMOLOGY else 'cocycle'} at {self.grade}")
        nb = len(self.boundaries)
        out = np.zeros(self.size, dtype=np.int64)
        for k, c in combo.items():
            if k >= nb:
                out[k - nb] = c
        return out

    def is_zero_class(self, vec) -> bool:
        return not np.any(self.coordinates(vec))

    def representative(self, coords) -> np.ndarray:
        """The (co)cycle ``sum coords[i] * basis[i]``."""
        n = len(self.basis[0]) if self.basis else 0
        out = np.zeros(n, dtype=np.int64)
        for c, v in zip(coords, self.basis):
            if c % self.field:
                out = (out + int(c) * v) % self.field
        return out


@dataclass
class StructureMap:
    """Matrix of an induced map in the snapshot bases.

    Homology maps go ``source = a -> target = b``; cohomology maps go
    ``source = b -> target = a``. Columns index the source basis.
    """

    source: Grade
    target: Grade
    dim: int
    theory: str
    matrix: np.ndarray
    field: int = 2

    @property
    def rank(self) -> int:
        return dense_rank(self.matrix, self.field) if self.matrix.size else 0


class Engine:
    """Caches slices' (co)homology snapshots and structure maps for one diagram.

    Parameters
    ----------
    diagram : FilteredComplex or StageSequence
    field : int
        Prime coefficient field.
    reduced : bool
        Use augmented chain complexes (reduced (co)homology in degree 0).
    """

    def __init__(self, diagram, field: int = 2, reduced: bool = True):
        self.diagram = diagram
        self.field = check_prime(field)
        self.reduced = bool(reduced)
        self.grading = diagram.grading
        self._snaps: Dict[tuple, HomologySnapshot] = {}
        self._maps: Dict[tuple, StructureMap] = {}

    def _check_grade(self, a) -> Grade:
        a = tuple(int(c) for c in a)
        self.grading.check(a)
        if not self.diagram.in_grid(a):
            raise RangeError(f"grade {a} is outside the grid {self.diagram.grid}")
        return a

    def snapshot(self, a: Sequence[int], p: int, theory: str = HOMOLOGY) -> HomologySnapshot:
        a = self._check_grade(a)
        check_theory(theory)
        key = (a, p, theory)
        snap = self._snaps.get(key)
        if snap is None:
            snap = self._snaps[key] = self._compute(a, p, theory)
        return snap

    def _compute(self, a: Grade, p: int, theory: str) -> HomologySnapshot:
        cx = self.diagram.complex_at(a)
        fp, red = self.field, self.reduced
        if p < 0 or p > cx.dimension:
            return HomologySnapshot(a, p, theory, red, fp, [], [], Eliminator(fp))
        if theory == HOMOLOGY:
            cycles = kernel_basis(cx.boundary(p, fp, red))
            bounds = image_basis(cx.boundary(p + 1, fp, red))
        else:
            cycles = kernel_basis(cx.coboundary(p, fp, red))
            bounds = image_basis(cx.coboundary(p - 1, fp, red)) if p > 0 or red else []
        basis = []
        elim = Eliminator(fp)
        for b in bounds:
            elim.add(to_sparse(b, fp))
        for z in cycles:
            if elim.express(to_sparse(z, fp)) is None:
                elim.add(to_sparse(z, fp))
                basis.append(z)
        return HomologySnapshot(a, p, theory, red, fp, basis, bounds, elim)

    def dimension(self, a, p: int, theory: str = HOMOLOGY) -> int:
        return self.snapshot(a, p, theory).size

    def check_order(self, a, b) -> Tuple[Grade, Grade]:
        a, b = self._check_grade(a), self._check_grade(b)
        if not leq(self.grading, a, b):
            raise OrderError(f"{a} is not <= {b}")
        return a, b

    def transport(self, vec, src, dst, p: int, theory: str) -> np.ndarray:
        """Move a (co)chain along the diagram.

        Homology pushes forward (``src <= dst``); cohomology pulls back
        (``dst <= src``).
        """
        if theory == HOMOLOGY:
            return self.diagram.chain_map(src, dst, p, self.field) @ np.asarray(vec, dtype=np.int64)
        return self.diagram.chain_map(dst, src, p, self.field).T @ np.asarray(vec, dtype=np.int64)

    def structure_map(self, a, b, p: int, theory: str = HOMOLOGY) -> StructureMap:
        """Induced map for ``a <= b`` in the theory's direction."""
        a, b = self.check_order(a, b)
        check_theory(theory)
        key = (a, b, p, theory)
        sm = self._maps.get(key)
        if sm is None:
            src, dst = (a, b) if theory == HOMOLOGY else (b, a)
            s_src, s_dst = self.snapshot(src, p, theory), self.snapshot(dst, p, theory)
            mat = np.zeros((s_dst.size, s_src.size), dtype=np.int64)
            if p >= 0 and s_src.size and s_dst.size:
                for j, z in enumerate(s_src.basis):
                    mat[:, j] = s_dst.coordinates(self.transport(z, src, dst, p, theory))
            sm = self._maps[key] = StructureMap(src, dst, p, theory, mat, self.field)
        return sm

    def push_coords(self, coords, src, dst, p: int, theory: str) -> np.ndarray:
        """Apply the structure map from ``src`` to ``dst`` to basis coordinates."""
        a, b = (src, dst) if theory == HOMOLOGY else (dst, src)
        m = self.structure_map(a, b, p, theory).matrix
        return (m @ np.asarray(coords, dtype=np.int64)) % self.field

    def persistent_betti(self, a, b, p: int, theory: str = HOMOLOGY) -> int:
        return self.structure_map(a, b, p, theory).rank

    def image_basis(self, a, b, p: int, theory: str = HOMOLOGY) -> List[np.ndarray]:
        """Basis (in target coordinates) of the image of the structure map."""
        m = self.structure_map(a, b, p, theory).matrix
        return image_basis(Matrix.from_dense(m, self.field)) if m.size else []


_ENGINES: "weakref.WeakKeyDictionary" = weakref.WeakKeyDictionary()


def engine_for(diagram, field: int = 2, reduced: bool = True) -> Engine:
    """Shared cached engine per (diagram, field, reduced)."""
    per = _ENGINES.setdefault(diagram, {})
    key = (int(field), bool(reduced))
    if key not in per:
        per[key] = Engine(diagram, field, reduced)
    return per[key]


def homology_basis(fc, a, p: int, field: int = 2, reduced: bool = True, theory: str = HOMOLOGY) -> HomologySnapshot:
    return engine_for(fc, field, reduced).snapshot(a, p, theory)


def structure_map(fc, a, b, p: int, theory: str = HOMOLOGY, field: int = 2, reduced: bool = True) -> StructureMap:
    return engine_for(fc, field, reduced).structure_map(a, b, p, theory)


def persistent_betti(fc, a, b, p: int, theory: str = HOMOLOGY, field: int = 2, reduced: bool = True) -> int:
    return engine_for(fc, field, reduced).persistent_betti(a, b, p, theory)


def betti_table(fc, dims: Sequence[int], field: int = 2, reduced: bool = True,
                theory: str = HOMOLOGY) -> List[dict]:
    """Rows ``{dim, a, b, beta}`` for every comparable grid pair ``a <= b``."""
    eng = engine_for(fc, field, reduced)
    grades = list(fc.grid_grades())
    rows = []
    for p in dims:
        for a in grades:
            for b in grades:
                if leq(fc.grading, a, b):
                    rows.append({"dim": p, "a": list(a), "b": list(b), "beta": eng.persistent_betti(a, b, p, theory)})
    return rows
