"""Simplicial complexes, graded filtrations and stage sequences.

Simplices are sorted tuples of nonnegative vertex labels. Within a complex the
p-simplices are indexed in lexicographic order, which fixes the row/column
order of every boundary and chain-map matrix.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from .grading import CayleyGrading, Grade, GradingError, box_grades, in_box, leq
from .linalg import Matrix, check_prime

Simplex = Tuple[int, ...]


class ComplexError(ValueError):
    pass


class RangeError(ComplexError):
    """A grade outside the grid of interest."""


class SimplicialMapError(ComplexError):
    pass


class ManifoldError(ComplexError):
    pass


class OrientationError(ManifoldError):
    pass


class ConfigError(ComplexError):
    pass


class ValidationError(ComplexError):
    """A filtration failed :func:`validate`."""


def simplex(vertices: Iterable[int]) -> Simplex:
    s = tuple(sorted(int(v) for v in vertices))
    if not s or len(set(s)) != len(s) or s[0] < 0:
        raise ComplexError(f"invalid simplex {s}")
    return s


def facets(s: Simplex) -> List[Simplex]:
    """Codimension-one faces, ``facets(s)[i]`` omits vertex ``i``."""
    return [s[:i] + s[i + 1:] for i in range(len(s))] if len(s) > 1 else []


def all_faces(s: Simplex) -> Iterable[Simplex]:
    for k in range(1, len(s) + 1):
        yield from combinations(s, k)


def closure(simplices: Iterable[Iterable[int]]) -> set:
    out = set()
    for s in simplices:
        out.update(all_faces(simplex(s)))
    return out


class SimplicialComplex:
    """A finite simplicial complex with cached boundary operators."""

    def __init__(self, simplices: Iterable[Iterable[int]]):
        simps = {simplex(s) for s in simplices}
        top = max((len(s) for s in simps), default=0)
        self.by_dim: List[List[Simplex]] = [sorted(s for s in simps if len(s) == k + 1) for k in range(top)]
        self.index: List[Dict[Simplex, int]] = [{s: i for i, s in enumerate(ss)} for ss in self.by_dim]
        self._cache: Dict[tuple, Matrix] = {}

    @property
    def dimension(self) -> int:
        return len(self.by_dim) - 1

    def simplices(self, p: int) -> List[Simplex]:
        return self.by_dim[p] if 0 <= p < len(self.by_dim) else []

    def count(self, p: int) -> int:
        return len(self.simplices(p))

    def __contains__(self, s) -> bool:
        s = tuple(s)
        return 0 < len(s) <= len(self.index) and s in self.index[len(s) - 1]

    def __len__(self) -> int:
        return sum(len(x) for x in self.by_dim)

    def __iter__(self):
        for ss in self.by_dim:
            yield from ss

    def is_closed(self) -> bool:
        return all(f in self for s in self for f in facets(s))

    def boundary(self, p: int, field: int, reduced: bool = False) -> Matrix:
        """``d_p : C_p -> C_{p-1}`` with alternating signs.

        For ``p == 0`` this is the augmentation row when ``reduced`` and the
        empty map otherwise.
        """
        key = ("d", p, field, reduced)
        if key not in self._cache:
            self._cache[key] = self._boundary(p, field, reduced)
        return self._cache[key]

    def _boundary(self, p: int, field: int, reduced: bool) -> Matrix:
        cols = self.simplices(p)
        if p < 0:
            return Matrix.zeros(0, 0, field)
        if p == 0:
            rows = 1 if reduced else 0
            return Matrix.from_columns(rows, [{0: 1} if reduced else {} for _ in cols], field)
        rows = self.index[p - 1] if p - 1 < len(self.index) else {}
        columns = []
        for s in cols:
            col = {}
            for i, f in enumerate(facets(s)):
                col[rows[f]] = 1 if i % 2 == 0 else field - 1
            columns.append(col)
        return Matrix.from_columns(len(rows), columns, field)

    def coboundary(self, p: int, field: int, reduced: bool = False) -> Matrix:
        """``delta_p : C^p -> C^{p+1}``, the transpose of ``d_{p+1}``."""
        key = ("delta", p, field, reduced)
        if key not in self._cache:
            self._cache[key] = self.boundary(p + 1, field, reduced).T
        return self._cache[key]

    def chain(self, p: int, coeffs: Mapping[Simplex, int], field: int) -> np.ndarray:
        v = np.zeros(self.count(p), dtype=np.int64)
        for s, c in coeffs.items():
            v[self.index[p][tuple(s)]] = c % field
        return v

    def __repr__(self) -> str:
        return f"SimplicialComplex(f={[len(x) for x in self.by_dim]})"


def boundary_matrix(simplices: Iterable[Iterable[int]], p: int, field: int = 2, reduced: bool = False) -> Matrix:
    """Boundary operator of the complex spanned by ``simplices`` in degree ``p``."""
    return SimplicialComplex(simplices).boundary(p, check_prime(field), reduced)


def inclusion_matrix(sub: SimplicialComplex, sup: SimplicialComplex, p: int, field: int) -> Matrix:
    rows = sup.index[p] if p < len(sup.index) else {}
    try:
        cols = [{rows[s]: 1} for s in sub.simplices(p)]
    except KeyError as exc:
        raise ComplexError(f"simplex {exc.args[0]} is not in the target complex") from None
    return Matrix.from_columns(len(rows), cols, field)


def vertex_map_chain_matrix(src: SimplicialComplex, dst: SimplicialComplex, vmap: Mapping[int, int], p: int, field: int) -> Matrix:
    """Chain map of a simplicial vertex map in degree ``p``.

    A simplex goes to its image with the sign of the sorting permutation, or to
    zero when two of its vertices collide.
    """
    rows = dst.index[p] if p < len(dst.index) else {}
    cols = []
    for s in src.simplices(p):
        try:
            img = [int(vmap[v]) for v in s]
        except KeyError as exc:
            raise SimplicialMapError(f"vertex {exc.args[0]} has no image") from None
        if len(set(img)) < len(img):
            cols.append({})
            continue
        t = tuple(sorted(img))
        if t not in rows:
            raise SimplicialMapError(f"image {t} of {s} is not a simplex of the target")
        cols.append({rows[t]: 1 if _perm_sign(img) > 0 else field - 1})
    return Matrix.from_columns(len(rows), cols, field)


def _perm_sign(seq: Sequence[int]) -> int:
    sign = 1
    seq = list(seq)
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def check_simplicial(src: SimplicialComplex, dst: SimplicialComplex, vmap: Mapping[int, int]) -> None:
    for s in src:
        if any(v not in vmap for v in s):
            raise SimplicialMapError(f"vertex map undefined on {s}")
        img = tuple(sorted({int(vmap[v]) for v in s}))
        if img not in dst:
            raise SimplicialMapError(f"image of {s} spans {img}, which is not a simplex of the target")


# ---------------------------------------------------------------------------
# Filtrations
# ---------------------------------------------------------------------------


@dataclass
class ValidationReport:
    ok: bool
    problems: List[Tuple[Simplex, Optional[Grade], str]] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


class FilteredComplex:
    """A simplicial complex whose simplices carry appearance grades.

    Parameters
    ----------
    grading : CayleyGrading
    grades : mapping of simplex -> grade
        Appearance grade of every simplex.
    grid : (lower, upper), optional
        Box of grades of interest; defaults to the bounding box of the grades.
        The filtration is taken to be empty below ``lower`` and constant above
        ``upper``.
    field : int, optional
        Suggested coefficient prime carried along from input files.
    """

    def __init__(self, grading: CayleyGrading, grades: Mapping[Iterable[int], Sequence[int]],
                 grid: Optional[Tuple[Sequence[int], Sequence[int]]] = None, field: Optional[int] = None):
        self.grading = grading
        self.grades: Dict[Simplex, Grade] = {}
        for s, g in grades.items():
            g = tuple(int(c) for c in g)
            if len(g) != grading.arity:
                raise GradingError(f"grade {g} of {tuple(s)} does not have arity {grading.arity}")
            self.grades[simplex(s)] = g
        if grid is None:
            if self.grades:
                vals = list(self.grades.values())
                grid = (tuple(min(c) for c in zip(*vals)), tuple(max(c) for c in zip(*vals)))
            else:
                grid = (grading.zero, grading.zero)
        lo, hi = (tuple(int(c) for c in x) for x in grid)
        grading.check(lo, hi)
        if any(l > h for l, h in zip(lo, hi)):
            raise ConfigError(f"grid lower {lo} exceeds upper {hi}")
        self.grid: Tuple[Grade, Grade] = (lo, hi)
        self.field = field
        self._slices: Dict[frozenset, SimplicialComplex] = {}
        self._slice_keys: Dict[Grade, frozenset] = {}

    @property
    def simplices(self) -> List[Simplex]:
        return sorted(self.grades, key=lambda s: (len(s), s))

    @property
    def dimension(self) -> int:
        return max((len(s) - 1 for s in self.grades), default=-1)

    def grid_grades(self) -> List[Grade]:
        return list(box_grades(*self.grid))

    def in_grid(self, a: Sequence[int]) -> bool:
        return in_box(tuple(a), *self.grid)

    def slice(self, a: Sequence[int]) -> List[Simplex]:
        """Simplices whose grade is ``<= a``."""
        a = tuple(int(c) for c in a)
        if not self.in_grid(a):
            raise RangeError(f"grade {a} is outside the grid {self.grid}")
        return sorted(self._slice_key(a), key=lambda s: (len(s), s))

    def _slice_key(self, a: Grade) -> frozenset:
        key = self._slice_keys.get(a)
        if key is None:
            key = frozenset(s for s, g in self.grades.items() if leq(self.grading, g, a))
            self._slice_keys[a] = key
        return key

    def complex_at(self, a: Sequence[int]) -> SimplicialComplex:
        a = tuple(int(c) for c in a)
        if not self.in_grid(a):
            raise RangeError(f"grade {a} is outside the grid {self.grid}")
        key = self._slice_key(a)
        cx = self._slices.get(key)
        if cx is None:
            cx = self._slices[key] = SimplicialComplex(key)
        return cx

    def chain_map(self, a: Sequence[int], b: Sequence[int], p: int, field: int) -> Matrix:
        """Inclusion of p-chains from the slice at ``a`` into the slice at ``b``."""
        return inclusion_matrix(self.complex_at(a), self.complex_at(b), p, field)

    def restrict_grid(self, lo: Sequence[int], hi: Sequence[int]) -> "FilteredComplex":
        """The same filtration seen only on the box ``[lo, hi]``.

        Simplices that never enter the box are dropped. With the standard
        grading, grades below ``lo`` are raised to their join with ``lo``,
        which leaves every slice in the box unchanged.
        """
        lo, hi = tuple(lo), tuple(hi)
        grades = {}
        for s, g in self.grades.items():
            if not leq(self.grading, g, hi):
                continue
            if self.grading.is_standard:
                g = tuple(max(x, y) for x, y in zip(g, lo))
            elif not in_box(g, lo, hi):
                raise ConfigError(f"grade {g} of {s} cannot be moved into the grid")
            grades[s] = g
        return FilteredComplex(self.grading, grades, (lo, hi), self.field)

    def relabel(self, perm: Mapping[int, int]) -> "FilteredComplex":
        grades = {tuple(sorted(perm[v] for v in s)): g for s, g in self.grades.items()}
        return FilteredComplex(self.grading, grades, self.grid, self.field)

    def __eq__(self, other) -> bool:
        return (isinstance(other, FilteredComplex) and self.grading == other.grading
                and self.grades == other.grades and self.grid == other.grid)

    __hash__ = object.__hash__

    def __repr__(self) -> str:
        return f"FilteredComplex(arity={self.grading.arity}, simplices={len(self.grades)}, grid={self.grid})"


def validate(fc: FilteredComplex) -> ValidationReport:
    """Check face closure, face monotonicity and that grades sit in the grid.

    Grades inside the grid give lower boundedness (empty below the lower
    corner); a finite grid with the filtration constant past the upper corner
    gives the stabilization half of finite generation.
    """
    problems = []
    for s, g in sorted(fc.grades.items(), key=lambda kv: (len(kv[0]), kv[0])):
        if not fc.in_grid(g):
            problems.append((s, g, "grade outside grid"))
        for f in facets(s):
            if f not in fc.grades:
                problems.append((s, g, f"face {f} missing"))
            elif not leq(fc.grading, fc.grades[f], g):
                problems.append((s, g, f"face {f} appears later at {fc.grades[f]}"))
    return ValidationReport(not problems, problems)


def slice(fc: FilteredComplex, a: Sequence[int]) -> List[Simplex]:  # noqa: A001 - public name
    return fc.slice(a)


class StageSequence:
    """Complexes ``K_0 -> K_1 -> ... -> K_m`` linked by simplicial vertex maps.

    ``maps[i]`` sends vertices of stage ``i`` to vertices of stage ``i + 1``.
    Stages are graded by ``(i,)`` in the standard one-parameter grading.
    """

    def __init__(self, stages: Sequence[Iterable[Iterable[int]]], maps: Sequence[Mapping[int, int]],
                 field: Optional[int] = None):
        self.stages = [s if isinstance(s, SimplicialComplex) else SimplicialComplex(closure(s)) for s in stages]
        if len(maps) != max(len(self.stages) - 1, 0):
            raise ConfigError("need exactly one vertex map between consecutive stages")
        self.maps = [{int(k): int(v) for k, v in m.items()} for m in maps]
        for i, m in enumerate(self.maps):
            check_simplicial(self.stages[i], self.stages[i + 1], m)
        self.grading = CayleyGrading.standard(1)
        self.grid: Tuple[Grade, Grade] = ((0,), (len(self.stages) - 1,))
        self.field = field
        self._cache: Dict[tuple, Matrix] = {}

    def __len__(self) -> int:
        return len(self.stages)

    def grid_grades(self) -> List[Grade]:
        return [(i,) for i in range(len(self.stages))]

    def in_grid(self, a) -> bool:
        return in_box(tuple(a), *self.grid)

    def complex_at(self, a) -> SimplicialComplex:
        i = a[0] if isinstance(a, tuple) else int(a)
        if not 0 <= i < len(self.stages):
            raise RangeError(f"stage {i} does not exist")
        return self.stages[i]

    def vertex_map(self, i: int, j: int) -> Dict[int, int]:
        if i > j:
            raise ComplexError("stage maps only go forward")
        out = {v: v for s in self.stages[i].simplices(0) for v in s}
        for k in range(i, j):
            out = {v: self.maps[k][w] for v, w in out.items()}
        return out

    def chain_map(self, a, b, p: int, field: int) -> Matrix:
        i = a[0] if isinstance(a, tuple) else int(a)
        j = b[0] if isinstance(b, tuple) else int(b)
        key = (i, j, p, field)
        if key not in self._cache:
            self._cache[key] = vertex_map_chain_matrix(self.stages[i], self.stages[j], self.vertex_map(i, j), p, field)
        return self._cache[key]

    __hash__ = object.__hash__


def induced_chain_map(seq: StageSequence, i: int, j: int, p: int, field: int = 2) -> Matrix:
    """Chain map ``C_p(K_i) -> C_p(K_j)`` of the composite vertex map."""
    if i > j:
        raise ComplexError("stage i must precede stage j")
    return seq.chain_map((i,), (j,), p, check_prime(field))


# ---------------------------------------------------------------------------
# Weighted Vietoris-Rips bifiltration
# ---------------------------------------------------------------------------


@dataclass
class WeightedPointCloud:
    points: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        self.points = np.asarray(self.points, dtype=float)
        self.weights = np.asarray(self.weights, dtype=float).reshape(-1)
        if self.points.size == 0:
            self.points = self.points.reshape(0, 0)
        if self.points.ndim != 2:
            raise ConfigError("points must be a 2-d array")
        if len(self.points) != len(self.weights):
            raise ConfigError("one weight per point is required")

    def __len__(self) -> int:
        return len(self.weights)


def _level_index(levels: Sequence[float], value: float, tol: float) -> Optional[int]:
    for i, t in enumerate(levels):
        if value <= t + tol:
            return i
    return None


def rips_bifiltration(cloud: WeightedPointCloud, weight_levels: Sequence[float], scale_levels: Sequence[float],
                      max_dim: int = 2, tol: float = 1e-6) -> FilteredComplex:
    """Weighted Vietoris-Rips complexes on a ``(weight, scale)`` index grid.

    A simplex enters at grade ``(i, j)`` where ``i`` is the first weight level
    covering all vertex weights and ``j`` the first scale level covering all
    pairwise distances. Comparisons allow an absolute slack ``tol`` so that
    thresholds typed as truncated decimals (e.g. ``2.2360679`` for sqrt 5)
    still admit the intended edges. Points whose weight exceeds every level
    are left out.
    """
    if not len(weight_levels) or not len(scale_levels):
        raise ConfigError("weight and scale levels must be nonempty")
    if list(weight_levels) != sorted(weight_levels) or list(scale_levels) != sorted(scale_levels):
        raise ConfigError("levels must be sorted ascending")
    if max_dim < 0:
        raise ConfigError("max_dim must be nonnegative")
    n = len(cloud)
    wi = [_level_index(weight_levels, w, tol) for w in cloud.weights]
    d = np.sqrt(((cloud.points[:, None, :] - cloud.points[None, :, :]) ** 2).sum(-1)) if n else np.zeros((0, 0))
    di = {}
    for u in range(n):
        for v in range(u + 1, n):
            di[u, v] = _level_index(scale_levels, float(d[u, v]), tol)
    grades: Dict[Simplex, Grade] = {}
    verts = [v for v in range(n) if wi[v] is not None]
    for k in range(1, max_dim + 2):
        for s in combinations(verts, k):
            pair = [di[u, v] for u, v in combinations(s, 2)]
            if any(x is None for x in pair):
                continue
            grades[s] = (max(wi[v] for v in s), max(pair, default=0))
    grid = ((0, 0), (len(weight_levels) - 1, len(scale_levels) - 1))
    return FilteredComplex(CayleyGrading.standard(2), grades, grid)


# ---------------------------------------------------------------------------
# Fundamental cycles
# ---------------------------------------------------------------------------


def _facet_sign(s: Simplex, f: Simplex) -> int:
    i = next(k for k, v in enumerate(s) if v not in f)
    return 1 if i % 2 == 0 else -1


def check_closed_manifold(cx: SimplicialComplex) -> Dict[Simplex, List[Simplex]]:
    """Every codimension-one simplex must have exactly two top-dimensional cofaces.

    Returns the codimension-one adjacency (face -> its two cofaces).
    """
    n = cx.dimension
    if n < 1:
        raise ManifoldError("a closed manifold triangulation needs dimension >= 1")
    cofaces: Dict[Simplex, List[Simplex]] = {f: [] for f in cx.simplices(n - 1)}
    for s in cx.simplices(n):
        for f in facets(s):
            cofaces[f].append(s)
    for f, cs in cofaces.items():
        if len(cs) != 2:
            raise ManifoldError(f"face {f} has {len(cs)} top-dimensional cofaces, expected 2")
    covered = {f for s in cx.simplices(n) for f in all_faces(s)}
    stray = [s for s in cx if s not in covered]
    if stray:
        raise ManifoldError(f"simplex {stray[0]} is not a face of any top simplex")
    return cofaces


def fundamental_cycle(cx: SimplicialComplex, field: int = 2, orientation: int = 1) -> np.ndarray:
    """Top-dimensional cycle with coefficients +-1.

    Orientation is propagated by depth-first search over the adjacency of top
    simplices, starting from the first one in sorted order with coefficient
    ``orientation``. Each connected component is seeded the same way. Over
    GF(2) no orientation is needed.
    """
    field = check_prime(field)
    cofaces = check_closed_manifold(cx)
    n = cx.dimension
    tops = cx.simplices(n)
    idx = cx.index[n]
    coeff = np.zeros(len(tops), dtype=np.int64)
    if field == 2:
        coeff[:] = 1
        return coeff
    sign: Dict[Simplex, int] = {}
    for seed in tops:
        if seed in sign:
            continue
        sign[seed] = 1 if orientation >= 0 else -1
        stack = [seed]
        while stack:
            s = stack.pop()
            for f in facets(s):
                a, b = cofaces[f]
                t = b if a == s else a
                want = -sign[s] * _facet_sign(s, f) * _facet_sign(t, f)
                if t in sign:
                    if sign[t] != want:
                        raise OrientationError("complex is not orientable")
                else:
                    sign[t] = want
                    stack.append(t)
    for s, e in sign.items():
        coeff[idx[s]] = e % field
    return coeff
