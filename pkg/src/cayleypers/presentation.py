"""Generators, relations, barcodes and survival spaces of persistence modules.

A theory fixes a direction on the grid. Homology classes move up the grading
order, cohomology classes move down. Everything below is phrased in terms of
that *forward* direction, so the same code presents both theories: for
cohomology, a generator sits at the largest grade where its class is not
pulled back from above, and its survival space extends downward.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from .complex import FilteredComplex, ValidationError, validate
from .grading import BOTTOM, TOP, ExtendedGrade, Grade, GradingError, box_grades, is_extreme, leq
from .homology import COHOMOLOGY, HOMOLOGY, Engine, check_theory, engine_for
from .linalg import Eliminator, Matrix, kernel_basis, to_sparse


class GeneratorLookupError(KeyError):
    """Unknown generator id."""


def forward_leq(grading, theory: str, a: Sequence[int], b: Sequence[int]) -> bool:
    """``a`` precedes ``b`` in the theory's direction."""
    return leq(grading, a, b) if theory == HOMOLOGY else leq(grading, b, a)


def _forward_grades(diagram, theory: str) -> List[Grade]:
    grades = sorted(box_grades(*diagram.grid))
    return grades if theory == HOMOLOGY else grades[::-1]


def _predecessors(diagram, theory: str, a: Grade) -> List[Grade]:
    sign = -1 if theory == HOMOLOGY else 1
    out = []
    for g in diagram.grading.generators:
        b = tuple(x + sign * y for x, y in zip(a, g))
        if diagram.in_grid(b):
            out.append(b)
    return out


def _transfer(eng: Engine, src: Grade, dst: Grade, p: int, theory: str) -> np.ndarray:
    a, b = (src, dst) if theory == HOMOLOGY else (dst, src)
    return eng.structure_map(a, b, p, theory).matrix


def _unit(n: int, k: int) -> np.ndarray:
    v = np.zeros(n, dtype=np.int64)
    v[k] = 1
    return v


@dataclass
class GeneratorRecord:
    id: int
    grade: Grade
    dim: int
    rep: np.ndarray  # coordinates in the snapshot basis at ``grade``
    free: bool = False


@dataclass
class RelationRecord:
    """A vanishing combination ``sum coeffs[g] * L^{shift} g`` at ``grade``."""

    grade: Grade
    coeffs: Dict[int, int]
    merge: Optional[Tuple[int, int]] = None

    def terms(self, pres: "Presentation") -> List[Tuple[int, int, Grade]]:
        """``(generator id, coefficient, shift)`` for each term."""
        out = []
        for gid, c in sorted(self.coeffs.items()):
            g = pres.generator(gid).grade
            shift = tuple(abs(x - y) for x, y in zip(self.grade, g))
            out.append((gid, c, shift))
        return out


@dataclass
class Presentation:
    generators: List[GeneratorRecord]
    relations: List[RelationRecord]
    grading: object
    dim: int
    theory: str
    field: int
    engine: Engine = field(repr=False)

    def generator(self, gid: int) -> GeneratorRecord:
        for g in self.generators:
            if g.id == gid:
                return g
        raise GeneratorLookupError(f"unknown generator id {gid}")

    def free_rank_at(self, a: Sequence[int]) -> int:
        return sum(forward_leq(self.grading, self.theory, g.grade, a) for g in self.generators)

    def presented_dimension(self, a: Sequence[int]) -> int:
        """Dimension at ``a`` of the free module modulo the relation submodule."""
        a = tuple(a)
        e = Eliminator(self.field)
        for r in self.relations:
            if forward_leq(self.grading, self.theory, r.grade, a):
                e.add(dict(r.coeffs))
        return self.free_rank_at(a) - e.rank

    def dimension_check(self) -> Dict[Grade, Tuple[int, int]]:
        """``grade -> (presented dim, actual dim)`` over the grid."""
        return {a: (self.presented_dimension(a), self.engine.dimension(a, self.dim, self.theory))
                for a in box_grades(*self.engine.diagram.grid)}

    def relation_holds(self, r: RelationRecord) -> bool:
        total = np.zeros(self.engine.dimension(r.grade, self.dim, self.theory), dtype=np.int64)
        for gid, c in r.coeffs.items():
            g = self.generator(gid)
            total = (total + c * self.engine.push_coords(g.rep, g.grade, r.grade, self.dim, self.theory)) % self.field
        return not np.any(total)


def compute_presentation(fc, p: int, field: int = 2, theory: str = HOMOLOGY, reduced: bool = True,
                         engine: Optional[Engine] = None) -> Presentation:
    """Gradewise generators and a greedy minimal set of relations.

    Grades are processed along a linear extension of the theory's order. At
    each grade ``a`` the generators are the snapshot basis vectors that are
    independent of the joint image from the immediate predecessors
    ``a -+ g`` (``g`` a monoid generator). The relations at ``a`` extend the
    relations already present below ``a`` to a spanning set of the kernel of
    the free module onto ``H(a)``. Kernel vectors are computed with the
    youngest generator first and scaled so its coefficient is 1.
    """
    check_theory(theory)
    if isinstance(fc, FilteredComplex):
        rep = validate(fc)
        if not rep:
            s, g, why = rep.problems[0]
            raise ValidationError(f"filtration is invalid: simplex {s} at {g}: {why}")
    eng = engine or engine_for(fc, field, reduced)
    fp = eng.field
    grading = fc.grading
    gens: List[GeneratorRecord] = []
    rels: List[RelationRecord] = []
    for a in _forward_grades(fc, theory):
        n = eng.dimension(a, p, theory)
        img = Eliminator(fp)
        for b in _predecessors(fc, theory, a):
            m = _transfer(eng, b, a, p, theory)
            for k in range(m.shape[1]):
                img.add(to_sparse(m[:, k], fp))
        for k in range(n):
            ok, _ = img.add({k: 1})
            if ok:
                gens.append(GeneratorRecord(len(gens), a, p, _unit(n, k)))
        below = [g for g in gens if forward_leq(grading, theory, g.grade, a)]
        if not below:
            continue
        cols = [to_sparse(eng.push_coords(g.rep, g.grade, a, p, theory), fp) for g in reversed(below)]
        span = Eliminator(fp)
        for r in rels:
            if forward_leq(grading, theory, r.grade, a):
                span.add(dict(r.coeffs))
        for vec in kernel_basis(Matrix.from_columns(n, cols, fp)):
            coeffs = {below[len(below) - 1 - i].id: int(c) for i, c in enumerate(vec) if c}
            young = max(coeffs)
            scale = pow(coeffs[young], fp - 2, fp)
            coeffs = {k: c * scale % fp for k, c in coeffs.items()}
            ok, _ = span.add(dict(coeffs))
            if ok:
                rels.append(RelationRecord(a, coeffs, _merge_triple(coeffs, fp)))
    pres = Presentation(gens, rels, grading, p, theory, fp, eng)
    corner = _forward_grades(fc, theory)[-1]
    for g in gens:
        g.free = bool(np.any(eng.push_coords(g.rep, g.grade, corner, p, theory)))
    return pres


def _merge_triple(coeffs: Mapping[int, int], p: int) -> Optional[Tuple[int, int]]:
    if len(coeffs) == 2 and all(c in (1, p - 1) for c in coeffs.values()):
        s, t = sorted(coeffs)
        return (s, t)
    return None


# ---------------------------------------------------------------------------
# Survival spaces
# ---------------------------------------------------------------------------


def _as_element(element) -> Dict[int, int]:
    if isinstance(element, Mapping):
        return {int(k): int(v) for k, v in element.items()}
    if isinstance(element, (int, np.integer)):
        return {int(element): 1}
    return {int(k): 1 for k in element}


def survival_space(pres, element, at: Optional[Sequence[int]] = None) -> List[Grade]:
    """Grades where the class of ``element`` is nonzero.

    ``element`` maps generator ids to coefficients (a bare id or list of ids
    means unit coefficients). The sum is formed at ``at``, by default the
    forward join of the generators' grades, and pushed forward from there.
    """
    elem = _as_element(element)
    gens = {gid: pres.generator(gid) for gid in elem}
    eng, theory, p, fp = pres.engine, pres.theory, pres.dim, pres.field
    if at is None:
        pick = max if theory == HOMOLOGY else min
        at = tuple(pick(g.grade[i] for g in gens.values()) for i in range(eng.grading.arity))
    at = tuple(at)
    for g in gens.values():
        if not forward_leq(eng.grading, theory, g.grade, at):
            raise ValueError(f"generator {g.id} at {g.grade} cannot be moved to {at}")
    total = np.zeros(eng.dimension(at, p, theory), dtype=np.int64)
    for gid, c in elem.items():
        g = gens[gid]
        total = (total + c * eng.push_coords(g.rep, g.grade, at, p, theory)) % fp
    out = []
    for a in sorted(box_grades(*eng.diagram.grid)):
        if forward_leq(eng.grading, theory, at, a) and np.any(eng.push_coords(total, at, a, p, theory)):
            out.append(a)
    return out


# ---------------------------------------------------------------------------
# One-parameter barcodes
# ---------------------------------------------------------------------------


@dataclass
class PInterval:
    """A bar.

    ``first`` and ``last`` are the smallest and largest grid indices where the
    class is alive. ``birth = first`` and ``death = last + 1``, except that a
    bar alive at the top of the grid dies at TOP, and a cohomology bar alive at
    the bottom of the grid is born at BOTTOM.
    """

    birth: ExtendedGrade
    death: ExtendedGrade
    dim: int
    theory: str
    first: int
    last: int
    id: int = -1
    grade: Optional[Grade] = None
    rep: Optional[np.ndarray] = None

    def alive_at(self, t: int) -> bool:
        return self.first <= t <= self.last

    def display(self, grid) -> Tuple[int, int]:
        lo, hi = grid[0][0], grid[1][0]
        b = lo if self.birth is BOTTOM else self.birth[0]
        d = hi if self.death is TOP else self.death[0]
        return b, d

    def key(self) -> tuple:
        return (self.dim, self.first, self.last)


def _make_bar(theory, p, first, last, lo, hi, **kw) -> PInterval:
    birth = BOTTOM if (theory == COHOMOLOGY and first == lo) else (first,)
    death = TOP if last == hi else (last + 1,)
    return PInterval(birth, death, p, theory, first, last, **kw)


class Barcode(list):
    """List of :class:`PInterval` with the engine that produced it."""

    def __init__(self, bars: Iterable[PInterval], engine: Engine, dim: int, theory: str):
        super().__init__(bars)
        self.engine, self.dim, self.theory = engine, dim, theory
        self.grading = engine.grading
        self.field = engine.field

    def generator(self, gid: int) -> PInterval:
        for b in self:
            if b.id == gid:
                return b
        raise GeneratorLookupError(f"unknown generator id {gid}")

    @property
    def generators(self) -> List[PInterval]:
        return [b for b in self if b.rep is not None]

    def count_containing(self, a: int, b: int) -> int:
        return sum(bar.first <= a and b <= bar.last for bar in self)

    def multiset(self) -> List[tuple]:
        return sorted(bar.key() for bar in self)


def _check_arity(diagram):
    if diagram.grading.arity != 1 or not diagram.grading.is_standard:
        raise GradingError("barcodes need the standard one-parameter grading")


def elder_decomposition(engine: Engine, p: int, theory: str = HOMOLOGY) -> Barcode:
    """Interval decomposition with compatible generators, by the elder rule.

    Walks the grid in the theory's direction keeping one representative per
    live bar. When pushed representatives become dependent the youngest bar
    dies, and its representative at birth is corrected by the older ones so
    that it pushes to zero exactly there. The surviving pushed
    representatives form a basis at every grade.
    """
    diagram = engine.diagram
    _check_arity(diagram)
    check_theory(theory)
    fp = engine.field
    lo, hi = diagram.grid[0][0], diagram.grid[1][0]
    steps = _forward_grades(diagram, theory)
    alive: List[dict] = []
    done: List[dict] = []
    prev = None
    for t in steps:
        n = engine.dimension(t, p, theory)
        for bar in alive:
            bar["cur"] = engine.push_coords(bar["cur"], prev, t, p, theory)
        elim = Eliminator(fp)
        keep = []
        for k, bar in enumerate(alive):
            ok, combo = elim.add(to_sparse(bar["cur"], fp))
            if ok:
                keep.append(bar)
                continue
            rep = bar["rep"].copy()
            for j, c in combo.items():
                older = alive[j]
                rep = (rep - c * engine.push_coords(older["rep"], older["grade"], bar["grade"], p, theory)) % fp
            bar["rep"] = rep
            bar["end"] = prev
            done.append(bar)
        alive = keep
        # unit vectors independent of the surviving bars start new bars
        nxt = len(alive)
        for k in range(n):
            ok, _ = elim.add({k: 1})
            if ok:
                alive.append({"grade": t, "rep": _unit(n, k), "cur": _unit(n, k), "order": nxt})
                nxt += 1
        prev = t
    for bar in alive:
        bar["end"] = prev
        done.append(bar)
    bars = []
    done.sort(key=lambda b: (steps.index(b["grade"]), b["order"]))
    for i, b in enumerate(done):
        x, y = b["grade"][0], b["end"][0]
        first, last = min(x, y), max(x, y)
        bars.append(_make_bar(theory, p, first, last, lo, hi, id=i, grade=b["grade"], rep=b["rep"]))
    return Barcode(bars, engine, p, theory)


def reduction_barcode(fc: FilteredComplex, p: int, field: int = 2, reduced: bool = True) -> List[PInterval]:
    """Homology bars by the standard column reduction of the filtered boundary matrix."""
    _check_arity(fc)
    fp = field
    lo, hi = fc.grid[0][0], fc.grid[1][0]
    order = sorted(fc.grades, key=lambda s: (fc.grades[s][0], len(s), s))
    pos = {s: i for i, s in enumerate(order)}
    lows: Dict[int, int] = {}
    cols: List[Dict[int, int]] = []
    paired: Dict[int, int] = {}
    for j, s in enumerate(order):
        col = {}
        if len(s) > 1:
            for i, f in enumerate(s[:k] + s[k + 1:] for k in range(len(s))):
                col[pos[f]] = 1 if i % 2 == 0 else fp - 1
        while col:
            low = max(col)
            if low not in lows:
                break
            other = cols[lows[low]]
            c = col[low] * pow(other[low], fp - 2, fp) % fp
            for r, v in other.items():
                x = (col.get(r, 0) - c * v) % fp
                if x:
                    col[r] = x
                else:
                    col.pop(r, None)
        cols.append(col)
        if col:
            lows[max(col)] = j
            paired[max(col)] = j
    bars = []
    for i, s in enumerate(order):
        if len(s) != p + 1 or cols[i]:
            continue
        b = fc.grades[s][0]
        if i in paired:
            d = fc.grades[order[paired[i]]][0]
            if d > b:
                bars.append(_make_bar(HOMOLOGY, p, b, d - 1, lo, hi))
        else:
            bars.append(_make_bar(HOMOLOGY, p, b, hi, lo, hi))
    if reduced and p == 0 and bars:
        oldest = min(range(len(bars)), key=lambda k: (bars[k].last != hi, bars[k].first))
        bars.pop(oldest)
    return bars


def barcode(fc, p: int, field: int = 2, theory: str = HOMOLOGY, reduced: bool = True) -> Barcode:
    """Bars of ``H_p`` or ``H^p`` for a one-parameter filtration.

    Homology uses the filtered column reduction; cohomology uses the elder
    rule on the reversed module, which also yields compatible generators.
    """
    _check_arity(fc)
    check_theory(theory)
    eng = engine_for(fc, field, reduced)
    if theory == HOMOLOGY and isinstance(fc, FilteredComplex):
        bars = reduction_barcode(fc, p, field, reduced)
        bars.sort(key=lambda b: (b.first, b.last))
        for i, b in enumerate(bars):
            b.id = i
        return Barcode(bars, eng, p, theory)
    return elder_decomposition(eng, p, theory)


def bar_counted_betti(bars: Sequence[PInterval], a: int, b: int) -> int:
    """Number of bars alive on all of ``[a, b]``."""
    return sum(bar.first <= a and b <= bar.last for bar in bars)


def ext_key(x: ExtendedGrade) -> float:
    """Sort key for one-parameter extended grades."""
    if x is BOTTOM:
        return float("-inf")
    if x is TOP:
        return float("inf")
    return float(x[0])


def union_of_survivals(pres, element) -> List[Grade]:
    """Union of the survival spaces of the individual summands."""
    out = set()
    for gid in _as_element(element):
        out.update(survival_space(pres, {gid: 1}))
    return sorted(out)
