"""Cup products on persistent cohomology.

Cochains are evaluated with the Alexander-Whitney formula on sorted vertex
tuples: ``(a u b)(v_0..v_{p+q}) = a(v_0..v_p) * b(v_p..v_{p+q})``. The cup
algebra works with unreduced cohomology so the degree-0 unit is available.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .complex import SimplicialComplex
from .grading import BOTTOM, TOP, Grade, GradingError, OrderError, leq, meet
from .homology import COHOMOLOGY, Engine, engine_for
from .linalg import solve_in_span, span_rank
from .presentation import Barcode, PInterval, elder_decomposition, ext_key


class ContextError(ValueError):
    """Cochains that do not live on the given complex."""


def cup_cochain(cx: SimplicialComplex, alpha, p: int, beta, q: int, field: int) -> np.ndarray:
    """Alexander-Whitney cup of a p-cochain and a q-cochain on ``cx``."""
    alpha = np.asarray(alpha, dtype=np.int64)
    beta = np.asarray(beta, dtype=np.int64)
    if alpha.shape != (cx.count(p),) or beta.shape != (cx.count(q),):
        raise ContextError("cochain lengths do not match the complex")
    out = np.zeros(cx.count(p + q), dtype=np.int64)
    if not out.size:
        return out
    ia, ib = cx.index[p], cx.index[q]
    for k, s in enumerate(cx.simplices(p + q)):
        x = alpha[ia[s[:p + 1]]]
        if x:
            y = beta[ib[s[p:]]]
            if y:
                out[k] = x * y % field
    return out


@dataclass(frozen=True)
class CohomologyClass:
    """A class in ``H^dim`` at ``grade``, by coordinates in the snapshot basis."""

    grade: Grade
    dim: int
    coords: Tuple[int, ...]

    @property
    def is_zero(self) -> bool:
        return not any(self.coords)


@dataclass
class CupReport:
    a: Grade
    b: Grade
    dims: Dict[int, int]
    restricted_first: Dict[int, int]
    cup_number: int
    convention: str = "degrees >= 1, products of positive-degree classes"

    @property
    def consistent(self) -> bool:
        return self.dims == self.restricted_first


class CupAlgebra:
    """Persistence-cup products on one diagram."""

    def __init__(self, diagram, field: int = 2, engine: Optional[Engine] = None):
        self.diagram = diagram
        self.engine = engine or engine_for(diagram, field, reduced=False)
        if self.engine.reduced:
            raise ValueError("the cup algebra needs unreduced cohomology")
        self.field = self.engine.field
        self.grading = diagram.grading

    # classes ------------------------------------------------------------

    def make(self, grade, dim: int, coords) -> CohomologyClass:
        grade = tuple(grade)
        n = self.engine.dimension(grade, dim, COHOMOLOGY)
        coords = tuple(int(c) % self.field for c in coords)
        if len(coords) != n:
            raise ValueError(f"H^{dim} at {grade} has dimension {n}, got {len(coords)} coordinates")
        return CohomologyClass(grade, dim, coords)

    def basis(self, grade, dim: int) -> List[CohomologyClass]:
        n = self.engine.dimension(grade, dim, COHOMOLOGY)
        return [self.make(grade, dim, [int(i == k) for i in range(n)]) for k in range(n)]

    def zero(self, grade, dim: int) -> CohomologyClass:
        return self.make(grade, dim, [0] * self.engine.dimension(grade, dim, COHOMOLOGY))

    def unit(self, grade) -> CohomologyClass:
        """The class of the constant cochain 1."""
        cx = self.diagram.complex_at(grade)
        return self.from_cocycle(grade, 0, np.ones(cx.count(0), dtype=np.int64))

    def cocycle(self, c: CohomologyClass) -> np.ndarray:
        snap = self.engine.snapshot(c.grade, c.dim, COHOMOLOGY)
        if not snap.basis:
            return np.zeros(self.diagram.complex_at(c.grade).count(c.dim), dtype=np.int64)
        return snap.representative(c.coords)

    def from_cocycle(self, grade, dim: int, vec) -> CohomologyClass:
        snap = self.engine.snapshot(grade, dim, COHOMOLOGY)
        if not snap.basis:
            return self.zero(grade, dim)
        return CohomologyClass(tuple(grade), dim, tuple(int(x) for x in snap.coordinates(vec)))

    def add(self, *terms: Tuple[int, CohomologyClass]) -> CohomologyClass:
        first = terms[0][1]
        acc = np.zeros(len(first.coords), dtype=np.int64)
        for c, x in terms:
            if (x.grade, x.dim) != (first.grade, first.dim):
                raise ValueError("classes live in different groups")
            acc = (acc + c * np.asarray(x.coords, dtype=np.int64)) % self.field
        return CohomologyClass(first.grade, first.dim, tuple(int(v) for v in acc))

    # products -----------------------------------------------------------

    def restrict(self, c: CohomologyClass, a) -> CohomologyClass:
        """Apply the structure map ``H^p(grade) -> H^p(a)`` for ``a <= grade``."""
        a = tuple(a)
        if not leq(self.grading, a, c.grade):
            raise OrderError(f"cannot restrict a class at {c.grade} to {a}")
        if a == c.grade:
            return c
        if not c.coords:
            return self.zero(a, c.dim)
        return self.make(a, c.dim, self.engine.push_coords(c.coords, c.grade, a, c.dim, COHOMOLOGY))

    def shift(self, c: CohomologyClass, x) -> CohomologyClass:
        """``L_x c``: restriction from ``grade`` to ``grade - x``."""
        return self.restrict(c, tuple(g - s for g, s in zip(c.grade, x)))

    def cup_at(self, a, beta: CohomologyClass, gamma: CohomologyClass) -> CohomologyClass:
        """Restrict both classes to ``a`` and cup there."""
        a = tuple(a)
        rb, rg = self.restrict(beta, a), self.restrict(gamma, a)
        d = beta.dim + gamma.dim
        cx = self.diagram.complex_at(a)
        if self.engine.dimension(a, d, COHOMOLOGY) == 0:
            return self.zero(a, d)
        prod = cup_cochain(cx, self.cocycle(rb), beta.dim, self.cocycle(rg), gamma.dim, self.field)
        return self.from_cocycle(a, d, prod)

    def product(self, beta: CohomologyClass, gamma: CohomologyClass) -> CohomologyClass:
        """The persistence-cup product, graded at the meet of the two grades."""
        return self.cup_at(meet(self.grading, beta.grade, gamma.grade), beta, gamma)

    def evaluate(self, c: CohomologyClass, chain) -> int:
        return int(np.dot(self.cocycle(c), np.asarray(chain, dtype=np.int64)) % self.field)

    # cup spaces ---------------------------------------------------------

    def _top(self, grade) -> int:
        return self.diagram.complex_at(grade).dimension

    def cup_space(self, a, b, positive_only: bool = True) -> CupReport:
        """Per-degree dimension of the image of ``H^*(b) x H^*(b) -> H^*(b) -> H^*(a)``.

        Computed twice: cup at ``b`` then restrict, and restrict to ``a`` then
        cup the images. ``positive_only`` restricts to factors of degree >= 1.
        """
        a, b = tuple(a), tuple(b)
        if not leq(self.grading, a, b):
            raise OrderError(f"{a} is not <= {b}")
        top = self._top(a)
        lo = 1 if positive_only else 0
        dims, alt = {}, {}
        for d in range(lo, top + 1):
            direct, via = [], []
            for p in range(lo, d - lo + 1):
                q = d - p
                left = self.basis(b, p)
                right = self.basis(b, q)
                for x in left:
                    for y in right:
                        direct.append(self.restrict(self.cup_at(b, x, y), a).coords)
                lres = [self.restrict(x, a) for x in left]
                rres = [self.restrict(y, a) for y in right]
                for x in lres:
                    for y in rres:
                        via.append(self.cup_at(a, x, y).coords)
            dims[d] = span_rank([np.array(v, dtype=np.int64) for v in direct if v], self.field)
            alt[d] = span_rank([np.array(v, dtype=np.int64) for v in via if v], self.field)
        number = sum(v for d, v in dims.items() if d >= 1)
        conv = "degrees >= 1, products of positive-degree classes" if positive_only else "all degrees, all products"
        return CupReport(a, b, dims, alt, number, conv)

    def cup_number(self, a, b) -> int:
        return self.cup_space(a, b).cup_number


def cup_space(fc, a, b, field: int = 2, positive_only: bool = True) -> CupReport:
    return CupAlgebra(fc, field).cup_space(a, b, positive_only)


def persistence_cup(fc, beta: CohomologyClass, gamma: CohomologyClass, field: int = 2) -> CohomologyClass:
    return CupAlgebra(fc, field).product(beta, gamma)


def cup_at(fc, a, beta: CohomologyClass, gamma: CohomologyClass, field: int = 2) -> CohomologyClass:
    return CupAlgebra(fc, field).cup_at(a, beta, gamma)


# ---------------------------------------------------------------------------
# Products of barcode generators
# ---------------------------------------------------------------------------


def cohomology_decomposition(fc, field: int = 2, dims: Optional[Sequence[int]] = None) -> Dict[int, Barcode]:
    """Elder-rule cohomology barcodes with compatible generators, per degree."""
    eng = engine_for(fc, field, reduced=False)
    if dims is None:
        top = max(fc.complex_at(a).dimension for a in fc.grid_grades())
        dims = range(0, top + 1)
    return {p: elder_decomposition(eng, p, COHOMOLOGY) for p in dims}


@dataclass
class ProductSurvival:
    i: Tuple[int, int]
    j: Tuple[int, int]
    trivial: bool
    grade: Optional[Grade] = None
    coefficients: Dict[int, int] = field(default_factory=dict)
    birth: object = None
    death: object = None
    upper: Optional[Tuple[object, object]] = None  # (min(death_i, death_j), death of product)
    lower: Optional[Tuple[object, object]] = None  # (max(birth_i, birth_j), birth of product)
    holds: Optional[bool] = None

    def interval(self) -> Optional[Tuple[object, object]]:
        return None if self.trivial else (self.birth, self.death)


def _class_of_bar(alg: CupAlgebra, bar: PInterval) -> CohomologyClass:
    return alg.make(bar.grade, bar.dim, bar.rep)


def product_survival(dec: Dict[int, Barcode], i: Tuple[int, int], j: Tuple[int, int],
                     alg: Optional[CupAlgebra] = None) -> ProductSurvival:
    """Survival interval of the product of two cohomology generators.

    Generators are addressed as ``(degree, bar id)``. The product is formed
    at the meet of the generators' grades and expanded in the compatible basis
    of the degree ``p + q`` generators alive there; its interval is the union
    of the intervals of the generators that occur. The bounds
    ``min(death_i, death_j) <= death`` and ``max(birth_i, birth_j) <= birth``
    are then checked.
    """
    bi, bj = dec[i[0]].generator(i[1]), dec[j[0]].generator(j[1])
    eng = dec[i[0]].engine
    alg = alg or CupAlgebra(eng.diagram, engine=eng)
    prod = alg.product(_class_of_bar(alg, bi), _class_of_bar(alg, bj))
    if prod.is_zero:
        return ProductSurvival(i, j, True, prod.grade)
    d = i[0] + j[0]
    if d not in dec:
        dec[d] = elder_decomposition(eng, d, COHOMOLOGY)
    m = prod.grade
    live = [bar for bar in dec[d].generators if bar.alive_at(m[0]) and m[0] <= bar.grade[0]]
    vecs = [eng.push_coords(bar.rep, bar.grade, m, d, COHOMOLOGY) for bar in live]
    coeffs = solve_in_span(vecs, np.asarray(prod.coords, dtype=np.int64), alg.field)
    if coeffs is None:
        raise RuntimeError("compatible basis does not span the product's group")
    used = {bar.id: int(c) for bar, c in zip(live, coeffs) if c}
    bars = [dec[d].generator(k) for k in used]
    birth = min((b.birth for b in bars), key=ext_key)
    death = max((b.death for b in bars), key=ext_key)
    up = min((bi.death, bj.death), key=ext_key)
    low = max((bi.birth, bj.birth), key=ext_key)
    ok = ext_key(up) <= ext_key(death) and ext_key(low) <= ext_key(birth)
    return ProductSurvival(i, j, False, m, used, birth, death, (up, death), (low, birth), ok)


def all_generator_products(dec: Dict[int, Barcode], alg: Optional[CupAlgebra] = None) -> List[ProductSurvival]:
    """Products of every ordered pair of positive-degree generators."""
    gens = [(p, bar.id) for p in sorted(dec) if p >= 1 for bar in dec[p].generators]
    if not gens:
        return []
    eng = dec[gens[0][0]].engine
    alg = alg or CupAlgebra(eng.diagram, engine=eng)
    return [product_survival(dec, x, y, alg) for x in gens for y in gens]


# ---------------------------------------------------------------------------
# Twisted-algebra identities
# ---------------------------------------------------------------------------


@dataclass
class TwistReport:
    checked: int = 0
    failures: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def _random_class(alg: CupAlgebra, rng: random.Random, grade, dim: int) -> CohomologyClass:
    n = alg.engine.dimension(grade, dim, COHOMOLOGY)
    return alg.make(grade, dim, [rng.randrange(alg.field) for _ in range(n)])


def _sub(a, x) -> Grade:
    return tuple(s - t for s, t in zip(a, x))


def twisted_identity_check(fc, field: int = 2, samples: int = 100, seed: int = 0,
                           max_dim: int = 2) -> TwistReport:
    """Check the twisted-algebra identities on random classes and shifts.

    For each sample draws grades ``a, b, c``, classes of random degrees there
    and shifts ``x, y``, then checks

    1. ``L_x(b . c) = (L_x b) . (L_x c)``
    2. ``(a' . L_x) . (b' . L_y) = (a' . b') . L_z`` with
       ``z = meet(a, b) - meet(a - x, b - y)``
    3. associativity of the persistence-cup product
    4. ``b . c = (-1)^(pq) c . b``
    """
    alg = CupAlgebra(fc, field)
    rng = random.Random(seed)
    lo, hi = fc.grid
    grades = list(fc.grid_grades())
    rep = TwistReport()
    fp = alg.field

    def rand_grade():
        return grades[rng.randrange(len(grades))]

    def rand_shift(g):
        return tuple(rng.randint(0, gi - li) for gi, li in zip(g, lo))

    for _ in range(samples):
        a, b, c = rand_grade(), rand_grade(), rand_grade()
        p, q, r = (rng.randint(0, max_dim) for _ in range(3))
        A, B, C = _random_class(alg, rng, a, p), _random_class(alg, rng, b, q), _random_class(alg, rng, c, r)
        m = meet(alg.grading, b, c)
        x = rand_shift(m)
        lhs = alg.shift(alg.product(B, C), x)
        rhs = alg.product(alg.shift(B, x), alg.shift(C, x))
        if lhs != rhs:
            rep.failures.append(f"shift compatibility at b={b} c={c} x={x}")
        x, y = rand_shift(a), rand_shift(b)
        z = _sub(meet(alg.grading, a, b), meet(alg.grading, _sub(a, x), _sub(b, y)))
        lhs = alg.product(alg.shift(A, x), alg.shift(B, y))
        rhs = alg.shift(alg.product(A, B), z)
        if lhs != rhs:
            rep.failures.append(f"monomial twist at a={a} b={b} x={x} y={y}")
        if alg.product(alg.product(A, B), C) != alg.product(A, alg.product(B, C)):
            rep.failures.append(f"associativity at {a} {b} {c}")
        bc, cb = alg.product(B, C), alg.product(C, B)
        sign = fp - 1 if (q * r) % 2 else 1
        if bc != alg.add((sign, cb)):
            rep.failures.append(f"graded commutativity at {b} {c} degrees {q},{r}")
        rep.checked += 1
    return rep
