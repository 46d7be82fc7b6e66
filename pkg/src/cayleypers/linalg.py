"""Exact linear algebra over prime fields.

Production routines work on sparse columns (``dict`` row -> residue) with a
deterministic pivot rule: the pivot of a reduced column is its lowest row
index. Vectors at the API boundary are 1-d ``numpy`` integer arrays with
entries in ``[0, p)``.

The ``dense_*`` functions are an independent Gaussian-elimination oracle on
dense arrays. They share no code with the sparse path and exist so tests can
check one against the other.
"""

from __future__ import annotations

from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

SparseVec = Dict[int, int]


class FieldError(ValueError):
    pass


class DimensionError(ValueError):
    pass


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def check_prime(p: int) -> int:
    if not is_prime(int(p)):
        raise FieldError(f"field modulus {p} is not prime")
    return int(p)


def inverse(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise ZeroDivisionError("zero has no inverse")
    return pow(a, p - 2, p)


def to_sparse(v: Iterable[int], p: int) -> SparseVec:
    return {i: int(x) % p for i, x in enumerate(v) if int(x) % p}


def to_dense(v: SparseVec, n: int) -> np.ndarray:
    out = np.zeros(n, dtype=np.int64)
    for i, x in v.items():
        out[i] = x
    return out


class Matrix:
    """Sparse matrix over ``GF(p)`` stored column-wise.

    Zero entries are never stored. Columns are ``dict`` objects and must not be
    mutated by callers.
    """

    __slots__ = ("rows", "cols", "p", "_columns")

    def __init__(self, rows: int, cols: int, entries: Optional[Dict[Tuple[int, int], int]] = None, p: int = 2):
        self.rows, self.cols, self.p = int(rows), int(cols), int(p)
        self._columns: List[SparseVec] = [dict() for _ in range(self.cols)]
        for (r, c), v in (entries or {}).items():
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise DimensionError(f"entry ({r}, {c}) outside {self.rows}x{self.cols}")
            v = int(v) % self.p
            if v:
                self._columns[c][r] = v

    @classmethod
    def from_columns(cls, rows: int, columns: Sequence[SparseVec], p: int) -> "Matrix":
        m = cls(rows, len(columns), None, p)
        m._columns = [{r: v % p for r, v in col.items() if v % p} for col in columns]
        return m

    @classmethod
    def from_dense(cls, arr, p: int) -> "Matrix":
        arr = np.asarray(arr, dtype=np.int64) % p
        if arr.ndim != 2:
            raise DimensionError("expected a 2-d array")
        rows, cols = arr.shape
        columns = [{int(r): int(arr[r, c]) for r in np.flatnonzero(arr[:, c])} for c in range(cols)]
        return cls.from_columns(rows, columns, p)

    @classmethod
    def identity(cls, n: int, p: int) -> "Matrix":
        return cls.from_columns(n, [{i: 1} for i in range(n)], p)

    @classmethod
    def zeros(cls, rows: int, cols: int, p: int) -> "Matrix":
        return cls(rows, cols, None, p)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    def column(self, j: int) -> SparseVec:
        return self._columns[j]

    def columns(self) -> List[SparseVec]:
        return self._columns

    def entries(self) -> Dict[Tuple[int, int], int]:
        return {(r, c): v for c, col in enumerate(self._columns) for r, v in col.items()}

    def nnz(self) -> int:
        return sum(len(c) for c in self._columns)

    def to_dense(self) -> np.ndarray:
        out = np.zeros((self.rows, self.cols), dtype=np.int64)
        for c, col in enumerate(self._columns):
            for r, v in col.items():
                out[r, c] = v
        return out

    @property
    def T(self) -> "Matrix":
        cols: List[SparseVec] = [dict() for _ in range(self.rows)]
        for c, col in enumerate(self._columns):
            for r, v in col.items():
                cols[r][c] = v
        return Matrix.from_columns(self.cols, cols, self.p)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if other.rows != self.cols or other.p != self.p:
                raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
            return Matrix.from_columns(self.rows, [self._apply(col) for col in other._columns], self.p)
        v = np.asarray(other, dtype=np.int64)
        if v.shape != (self.cols,):
            raise DimensionError(f"vector of length {v.shape} does not match {self.cols} columns")
        return to_dense(self._apply({i: int(x) for i, x in enumerate(v) if x % self.p}), self.rows)

    def _apply(self, vec: SparseVec) -> SparseVec:
        p = self.p
        out: SparseVec = {}
        for j, a in vec.items():
            for r, v in self._columns[j].items():
                out[r] = (out.get(r, 0) + a * v) % p
        return {r: v for r, v in out.items() if v}

    def __eq__(self, other) -> bool:
        return isinstance(other, Matrix) and self.shape == other.shape and self.p == other.p and self._columns == other._columns

    def __repr__(self) -> str:
        return f"Matrix({self.rows}x{self.cols}, p={self.p}, nnz={self.nnz()})"


class Eliminator:
    """Incremental column elimination with tracked combinations.

    Vectors are added one at a time. Each independent vector is stored in
    reduced form together with the combination of previously *added* vectors
    (by insertion index) that produces it, so membership queries can return
    coefficients with respect to the original inputs.
    """

    def __init__(self, p: int):
        self.p = p
        self._pivots: Dict[int, Tuple[SparseVec, SparseVec]] = {}
        self.count = 0  # number of vectors offered to add()

    @property
    def rank(self) -> int:
        return len(self._pivots)

    def reduce(self, vec: SparseVec) -> Tuple[SparseVec, SparseVec]:
        """Return ``(residual, combo)`` with ``vec = residual + sum combo[k] * input_k``."""
        p = self.p
        res = {r: v % p for r, v in vec.items() if v % p}
        combo: SparseVec = {}
        pivots = self._pivots
        while True:
            hits = [r for r in res if r in pivots]
            if not hits:
                break
            r = min(hits)
            pvec, pcombo = pivots[r]
            c = res[r] * inverse(pvec[r], p) % p
            for k, v in pvec.items():
                x = (res.get(k, 0) - c * v) % p
                if x:
                    res[k] = x
                else:
                    res.pop(k, None)
            for k, v in pcombo.items():
                x = (combo.get(k, 0) + c * v) % p
                if x:
                    combo[k] = x
                else:
                    combo.pop(k, None)
        return res, combo

    def add(self, vec: SparseVec) -> Tuple[bool, SparseVec]:
        """Offer a vector. Returns ``(independent, combo)``.

        When dependent, ``combo`` expresses it through earlier inputs.
        """
        idx = self.count
        self.count += 1
        res, combo = self.reduce(vec)
        if not res:
            return False, combo
        p = self.p
        own = {k: (-v) % p for k, v in combo.items()}
        own[idx] = 1
        self._pivots[min(res)] = (res, own)
        return True, combo

    def express(self, vec: SparseVec) -> Optional[SparseVec]:
        """Coefficients over earlier inputs summing to ``vec``, or None."""
        res, combo = self.reduce(vec)
        return None if res else combo


def rank(m: Matrix) -> int:
    """Rank over GF(p) by sparse column reduction."""
    e = Eliminator(m.p)
    for col in m.columns():
        e.add(col)
    return e.rank


def kernel_basis(m: Matrix) -> List[np.ndarray]:
    """Basis of the null space, one vector per dependent column.

    For a column ``j`` that reduces to zero against earlier pivot columns the
    basis vector is ``e_j - sum(combo)``; the count is ``cols - rank``.
    """
    p = m.p
    e = Eliminator(p)
    independent: List[int] = []
    out = []
    for j, col in enumerate(m.columns()):
        ok, combo = e.add(col)
        if ok:
            independent.append(j)
            continue
        v = np.zeros(m.cols, dtype=np.int64)
        v[j] = 1
        for k, c in combo.items():
            # combo indexes insertion order, which equals column order here
            v[k] = (v[k] - c) % p
        out.append(v)
    return out


def image_basis(m: Matrix) -> List[np.ndarray]:
    """The columns of ``m`` that are independent of all earlier columns."""
    e = Eliminator(m.p)
    out = []
    for col in m.columns():
        ok, _ = e.add(col)
        if ok:
            out.append(to_dense(col, m.rows))
    return out


def solve_in_span(basis: Sequence[np.ndarray], target, p: int) -> Optional[np.ndarray]:
    """Coefficients ``c`` with ``sum c_i basis_i == target (mod p)``, or None.

    When the basis is dependent, dependent members get coefficient zero.
    """
    target = np.asarray(target, dtype=np.int64)
    for b in basis:
        if np.shape(b) != target.shape:
            raise DimensionError("basis vectors and target must have equal length")
    e = Eliminator(p)
    for b in basis:
        e.add(to_sparse(b, p))
    combo = e.express(to_sparse(target, p))
    if combo is None:
        return None
    out = np.zeros(len(basis), dtype=np.int64)
    for k, c in combo.items():
        out[k] = c
    return out


def span_rank(vectors: Sequence[np.ndarray], p: int) -> int:
    e = Eliminator(p)
    for v in vectors:
        e.add(to_sparse(v, p))
    return e.rank


# ---------------------------------------------------------------------------
# Dense oracle
# ---------------------------------------------------------------------------


def dense_row_echelon(a, p: int) -> Tuple[np.ndarray, List[int]]:
    """Reduced row echelon form mod p and the list of pivot columns."""
    a = np.array(a, dtype=np.int64) % p
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        k = r + nz[0]
        a[[r, k]] = a[[k, r]]
        a[r] = a[r] * pow(int(a[r, c]), p - 2, p) % p
        for i in range(rows):
            if i != r and a[i, c]:
                a[i] = (a[i] - a[i, c] * a[r]) % p
        pivots.append(c)
        r += 1
    return a, pivots


def dense_rank(a, p: int) -> int:
    a = np.asarray(a)
    if a.size == 0:
        return 0
    return len(dense_row_echelon(a, p)[1])


def dense_nullspace(a, p: int) -> np.ndarray:
    """Null space basis as the columns of the returned array."""
    a = np.asarray(a, dtype=np.int64)
    rows, cols = a.shape
    if rows == 0:
        return np.eye(cols, dtype=np.int64)
    rref, pivots = dense_row_echelon(a, p)
    free = [c for c in range(cols) if c not in pivots]
    out = np.zeros((cols, len(free)), dtype=np.int64)
    for k, f in enumerate(free):
        out[f, k] = 1
        for i, pc in enumerate(pivots):
            out[pc, k] = (-rref[i, f]) % p
    return out


def dense_in_span(basis_cols, target, p: int) -> bool:
    """Membership of ``target`` in the column span of ``basis_cols``."""
    b = np.asarray(basis_cols, dtype=np.int64).reshape(len(target), -1)
    aug = np.hstack([b, np.asarray(target, dtype=np.int64).reshape(-1, 1)])
    return dense_rank(b, p) == dense_rank(aug, p)


def brute_force_kernel(a, p: int) -> List[np.ndarray]:
    """Every vector ``v`` with ``a @ v == 0``; only for tiny inputs."""
    a = np.asarray(a, dtype=np.int64)
    cols = a.shape[1]
    if p ** cols > 200_000:
        raise ValueError("too many vectors to enumerate")
    out = []
    for idx in range(p ** cols):
        v = np.array([(idx // p ** k) % p for k in range(cols)], dtype=np.int64)
        if not np.any((a @ v) % p):
            out.append(v)
    return out
