"""Cap products, fundamental-class transport and persistent Poincare duality.

Everything here uses unreduced (co)homology on stage sequences of closed
triangulated n-manifolds. The cap product uses the front-face convention
matching the cup product in :mod:`cayleypers.cupalg`:
``sigma cap phi = phi(v_0..v_p) * [v_p..v_q]``, so that
``psi(sigma cap phi) = (phi cup psi)(sigma)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np

from .complex import ManifoldError, SimplicialComplex, fundamental_cycle
from .cupalg import CohomologyClass, CupAlgebra
from .grading import OrderError, leq, meet
from .homology import COHOMOLOGY, HOMOLOGY, engine_for
from .linalg import Matrix, dense_rank, image_basis, solve_in_span


class DegreeError(ValueError):
    pass


class AmbiguityError(ValueError):
    """Top homology of a stage is not one-dimensional."""


def cap_cochain(cx: SimplicialComplex, chain, q: int, cochain, p: int, field: int) -> np.ndarray:
    """Cap a q-chain with a p-cochain, giving a (q - p)-chain."""
    if p > q:
        raise DegreeError(f"cannot cap a {q}-chain with a {p}-cochain")
    chain = np.asarray(chain, dtype=np.int64)
    cochain = np.asarray(cochain, dtype=np.int64)
    if chain.shape != (cx.count(q),) or cochain.shape != (cx.count(p),):
        raise ValueError("chain or cochain does not match the complex")
    out = np.zeros(cx.count(q - p), dtype=np.int64)
    ip, ir = cx.index[p] if cx.count(p) else {}, cx.index[q - p] if cx.count(q - p) else {}
    for k, s in enumerate(cx.simplices(q)):
        c = chain[k]
        if c:
            x = cochain[ip[s[:p + 1]]]
            if x:
                r = ir[s[p:]]
                out[r] = (out[r] + c * x) % field
    return out


class ManifoldSequence:
    """Fundamental cycles and duality computations on a stage sequence."""

    def __init__(self, seq, field: int = 2):
        self.seq = seq
        self.engine = engine_for(seq, field, reduced=False)
        self.field = self.engine.field
        self.alg = CupAlgebra(seq, engine=self.engine)
        self._omega: Dict[int, np.ndarray] = {}
        dims = {s.dimension for s in seq.stages}
        if len(dims) != 1:
            raise ManifoldError("all stages must have the same dimension")
        self.n = dims.pop()

    def omega(self, a) -> np.ndarray:
        """Fundamental cycle of stage ``a`` (first top simplex oriented +1)."""
        i = a[0] if isinstance(a, tuple) else int(a)
        if i not in self._omega:
            self._omega[i] = fundamental_cycle(self.seq.stages[i], self.field)
        return self._omega[i]

    def lam(self, a, b) -> int:
        """``lambda`` with ``f_#(omega^a) = lambda * omega^b``."""
        a, b = _stage(a), _stage(b)
        if not leq(self.seq.grading, a, b):
            raise OrderError(f"stage {a[0]} does not precede {b[0]}")
        if self.engine.dimension(b, self.n, HOMOLOGY) != 1:
            raise AmbiguityError(f"H_{self.n} of stage {b[0]} is not one-dimensional")
        self.omega(a)
        pushed = self.seq.chain_map(a, b, self.n, self.field) @ self.omega(a)
        c = solve_in_span([self.omega(b)], pushed, self.field)
        if c is None:
            raise ManifoldError("pushed fundamental cycle is not a multiple of the target's")
        return int(c[0])

    def pairing(self, beta: CohomologyClass, gamma: CohomologyClass) -> int:
        """``(beta, gamma)_D``: the product evaluated on the meet's fundamental cycle."""
        if beta.dim + gamma.dim != self.n:
            raise DegreeError(f"degrees {beta.dim} + {gamma.dim} do not add up to {self.n}")
        prod = self.alg.product(beta, gamma)
        return self.alg.evaluate(prod, self.omega(prod.grade))

    def cap_class(self, a, c: CohomologyClass) -> np.ndarray:
        """``omega^a cap c`` as a chain at ``a``."""
        cx = self.seq.complex_at(a)
        return cap_cochain(cx, self.omega(a), self.n, self.alg.cocycle(c), c.dim, self.field)

    def duality_map(self, a, p: int) -> np.ndarray:
        """Matrix of ``D: H^p(a) -> H_{n-p}(a)``."""
        a = _stage(a)
        snap = self.engine.snapshot(a, self.n - p, HOMOLOGY)
        cols = []
        for c in self.alg.basis(a, p):
            cols.append(snap.coordinates(self.cap_class(a, c)))
        if not cols:
            return np.zeros((snap.size, 0), dtype=np.int64)
        return np.stack(cols, axis=1)


def _stage(a):
    return a if isinstance(a, tuple) else (int(a),)


def lam(seq, a, b, field: int = 2) -> int:
    return ManifoldSequence(seq, field).lam(a, b)


def pairing_D(seq, beta: CohomologyClass, gamma: CohomologyClass, field: int = 2) -> int:
    return ManifoldSequence(seq, field).pairing(beta, gamma)


@dataclass
class DualityReport:
    a: tuple
    b: tuple
    n: int
    lam: int
    case: str
    betti_cohomology: Dict[int, int]  # p -> beta^p_{a,b}
    betti_homology: Dict[int, int]  # p -> beta_p^{a,b}
    betti_at_a: Dict[int, int]  # p -> beta_p^a
    cobetti_at_a: Dict[int, int]  # p -> beta^p_a
    witnesses: Dict[int, List[List[int]]] = field(default_factory=dict)
    bijective: Dict[int, bool] = field(default_factory=dict)
    top_cup_space: Optional[int] = None
    inequalities: Dict[str, Dict[int, bool]] = field(default_factory=dict)
    holds: bool = False


def duality_report(seq, a, b, field: int = 2) -> DualityReport:
    """Check the persistent duality dichotomy for stages ``a <= b``.

    When ``lambda != 0`` the map ``D^{a,b} = f_* . (omega^a cap -)`` is built on
    ``H^p_{a,b}`` for every ``p`` and must be a bijection onto
    ``H_{n-p}^{a,b}``, forcing ``beta^p_{a,b} = beta^{n-p}_{a,b}``. When
    ``lambda == 0`` the top persistent cup-space must vanish and both
    families ``beta_p + beta_{n-p} <= beta_p^a`` (homology and cohomology)
    must hold.
    """
    ms = ManifoldSequence(seq, field)
    a, b = _stage(a), _stage(b)
    eng, n, fp = ms.engine, ms.n, ms.field
    lam_ab = ms.lam(a, b)
    for s in (a, b):
        ms.omega(s)  # manifold check on both stages
    bc = {p: eng.persistent_betti(a, b, p, COHOMOLOGY) for p in range(n + 1)}
    bh = {p: eng.persistent_betti(a, b, p, HOMOLOGY) for p in range(n + 1)}
    ba = {p: eng.dimension(a, p, HOMOLOGY) for p in range(n + 1)}
    cba = {p: eng.dimension(a, p, COHOMOLOGY) for p in range(n + 1)}
    rep = DualityReport(a, b, n, lam_ab, "i" if lam_ab else "ii", bc, bh, ba, cba)
    if lam_ab:
        ok = True
        for p in range(n + 1):
            # basis of H^p_{a,b} inside H^p(a)
            img = eng.image_basis(a, b, p, COHOMOLOGY)
            tgt = eng.snapshot(b, n - p, HOMOLOGY)
            hom_img = eng.image_basis(a, b, n - p, HOMOLOGY)
            cols = []
            for v in img:
                c = ms.alg.make(a, p, v)
                chain = seq.chain_map(a, b, n - p, fp) @ ms.cap_class(a, c)
                cols.append(tgt.coordinates(chain))
            w = np.stack(cols, axis=1) if cols else np.zeros((tgt.size, 0), dtype=np.int64)
            rank = dense_rank(w, fp) if w.size else 0
            inside = all(solve_in_span(hom_img, col, fp) is not None for col in cols)
            bij = rank == len(img) == len(hom_img) and inside
            rep.witnesses[p] = w.tolist()
            rep.bijective[p] = bij
            ok = ok and bij and bc[p] == bc[n - p]
        rep.holds = ok
    else:
        report = ms.alg.cup_space(a, b, positive_only=False)
        rep.top_cup_space = report.dims.get(n, 0)
        hom = {p: bh[p] + bh[n - p] <= ba[p] for p in range(n + 1)}
        coh = {p: bc[p] + bc[n - p] <= cba[p] for p in range(n + 1)}
        rep.inequalities = {"homology": hom, "cohomology": coh}
        rep.holds = rep.top_cup_space == 0 and all(hom.values()) and all(coh.values())
    return rep
