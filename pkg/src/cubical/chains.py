"""Exact integer linear algebra and homology of bounded chain complexes.

Matrices are 2-d numpy arrays of dtype ``object`` holding Python ints, so no
entry ever overflows.  The heavy routines work on sparse dict rows/columns
internally because boundary matrices of cubical complexes are very sparse.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from math import gcd
from typing import Hashable, Mapping, Sequence

import numpy as np


class ChainError(ValueError):
    pass


class DegreeOutOfRange(ChainError):
    pass


def int_matrix(data, shape: tuple[int, int] | None = None) -> np.ndarray:
    """Coerce ``data`` to an object array of Python ints."""
    if shape is not None and (data is None or len(data) == 0):
        return np.zeros(shape, dtype=object)
    arr = np.array(data, dtype=object)
    if arr.ndim != 2:
        if shape is not None:
            arr = arr.reshape(shape)
        else:
            raise ChainError(f"expected a 2-d matrix, got shape {arr.shape}")
    return np.vectorize(int, otypes=[object])(arr) if arr.size else arr


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(x, y, g)`` with ``x*a + y*b == g == gcd(a, b) >= 0``."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -x0, -y0, -a
    return x0, y0, a


def _columns(M: np.ndarray) -> list[dict[int, int]]:
    cols: list[dict[int, int]] = [dict() for _ in range(M.shape[1])]
    for r, c in zip(*np.nonzero(M)):
        cols[c][int(r)] = int(M[r, c])
    return cols


def _entries(M: np.ndarray) -> dict[tuple[int, int], int]:
    return {(int(r), int(c)): int(M[r, c]) for r, c in zip(*np.nonzero(M))}


# -- Smith normal form ---------------------------------------------------------

def invariant_factors(diagonal: Sequence[int]) -> list[int]:
    """Turn any nonzero diagonal into the divisibility chain ``d1 | d2 | ...``."""
    d = sorted(abs(x) for x in diagonal if x)
    ones = [x for x in d if x == 1]
    rest = [x for x in d if x != 1]
    for i in range(len(rest)):
        for j in range(i + 1, len(rest)):
            g = gcd(rest[i], rest[j])
            rest[i], rest[j] = g, rest[i] // g * rest[j]
    rest.sort()
    return ones + rest


def smith_diagonal(M) -> list[int]:
    """Nonzero invariant factors of ``M``, by sparse elimination.

    Pivots on a minimal-absolute-value entry (ties broken by fill-in), which
    keeps the ±1-dominated boundary matrices from growing.
    """
    M = int_matrix(M) if not isinstance(M, dict) else M
    entries = M if isinstance(M, dict) else _entries(M)
    rows: dict[int, dict[int, int]] = defaultdict(dict)
    cols: dict[int, dict[int, int]] = defaultdict(dict)
    for (r, c), v in entries.items():
        if v:
            rows[r][c] = v
            cols[c][r] = v

    def put(r, c, v):
        if v:
            rows[r][c] = v
            cols[c][r] = v
        else:
            rows[r].pop(c, None)
            cols[c].pop(r, None)
            if not rows[r]:
                del rows[r]
            if not cols[c]:
                del cols[c]

    def best_pivot():
        best, key = None, None
        for r, row in rows.items():
            nr = len(row)
            for c, v in row.items():
                k = (abs(v), (nr - 1) * (len(cols[c]) - 1))
                if key is None or k < key:
                    best, key = (r, c), k
                    if k == (1, 0):
                        return best
        return best

    diag = []
    while rows:
        r, c = best_pivot()
        while True:
            a = rows[r][c]
            # clear column c with row operations
            smaller = None
            for r2, v in list(cols[c].items()):
                if r2 == r:
                    continue
                q = v // a
                for c2, w in list(rows[r].items()):
                    put(r2, c2, rows.get(r2, {}).get(c2, 0) - q * w)
                rem = cols.get(c, {}).get(r2, 0)
                if rem and (smaller is None or abs(rem) < abs(smaller[2])):
                    smaller = (r2, c, rem)
            if smaller is None:
                # clear row r with column operations; column c is a singleton now
                for c2, v in list(rows[r].items()):
                    if c2 == c:
                        continue
                    q = v // a
                    put(r, c2, v - q * a)
                    rem = rows.get(r, {}).get(c2, 0)
                    if rem and (smaller is None or abs(rem) < abs(smaller[2])):
                        smaller = (r, c2, rem)
            if smaller is None:
                break
            r, c = smaller[0], smaller[1]
        diag.append(abs(a))
        put(r, c, 0)
    return invariant_factors(diag)


def _smith_dense(M: np.ndarray):
    """Dense SNF with transforms; returns ``(D, U, V)`` with ``U @ M @ V == D``."""
    A = [[int(x) for x in row] for row in M]
    m, n = M.shape
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def row_comb(i, j, a, b, c, d):
        # rows (i, j) <- (a*ri + b*rj, c*ri + d*rj), determinant ±1
        for mat in (A, U):
            ri, rj = mat[i], mat[j]
            mat[i] = [a * x + b * y for x, y in zip(ri, rj)]
            mat[j] = [c * x + d * y for x, y in zip(ri, rj)]

    def col_comb(i, j, a, b, c, d):
        for mat in (A, V):
            for row in mat:
                x, y = row[i], row[j]
                row[i], row[j] = a * x + b * y, c * x + d * y

    t = 0
    while t < min(m, n):
        nz = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
        if not nz:
            break
        _, pi, pj = min(nz)
        if pi != t:
            row_comb(t, pi, 0, 1, 1, 0)
        if pj != t:
            col_comb(t, pj, 0, 1, 1, 0)
        done = False
        while not done:
            done = True
            for i in range(t + 1, m):
                if A[i][t] % A[t][t] == 0:
                    if A[i][t]:
                        row_comb(t, i, 1, 0, -(A[i][t] // A[t][t]), 1)
                else:
                    x, y, g = xgcd(A[t][t], A[i][t])
                    a, b = A[t][t] // g, A[i][t] // g
                    row_comb(t, i, x, y, -b, a)
            for j in range(t + 1, n):
                if A[t][j] % A[t][t] == 0:
                    if A[t][j]:
                        col_comb(t, j, 1, 0, -(A[t][j] // A[t][t]), 1)
                else:
                    x, y, g = xgcd(A[t][t], A[t][j])
                    a, b = A[t][t] // g, A[t][j] // g
                    col_comb(t, j, x, y, -b, a)
                    done = False
            if any(A[i][t] for i in range(t + 1, m)):
                done = False
            if done:
                # divisibility: fold a non-divisible entry into the pivot row
                piv = A[t][t]
                for i in range(t + 1, m):
                    if any(A[i][j] % piv for j in range(t + 1, n)):
                        row_comb(t, i, 1, 1, 0, 1)
                        done = False
                        break
        if A[t][t] < 0:
            U[t] = [-x for x in U[t]]
            A[t] = [-x for x in A[t]]
        t += 1
    return int_matrix(A, (m, n)), int_matrix(U, (m, m)), int_matrix(V, (n, n))


def snf(M, transforms: bool = False):
    """Smith normal form of an integer matrix.

    Returns the nonzero diagonal ``[d1, d2, ...]`` with ``d_i | d_{i+1}``.
    With ``transforms=True`` returns ``(diagonal, U, V)`` where ``U``, ``V``
    are unimodular and ``U @ M @ V`` is the diagonal matrix.
    """
    M = int_matrix(M)
    if not transforms:
        return smith_diagonal(M)
    D, U, V = _smith_dense(M)
    diag = [D[i, i] for i in range(min(D.shape)) if D[i, i]]
    return diag, U, V


# -- kernels -------------------------------------------------------------------

@dataclass
class ColumnReduction:
    """Result of unimodular column reduction ``M @ V = [pivots | 0]``.

    ``kernel`` are the columns of ``V`` reduced to zero (a saturated basis of
    ``ker M``); ``coords`` are the matching rows of ``V^{-1}``, so
    ``coords[k] . x`` is the k-th coordinate of a kernel vector ``x``.
    """

    rank: int
    kernel: list[dict[int, int]]
    coords: list[dict[int, int]] = field(default_factory=list)


def _axpy(y: dict, a: int, x: Mapping) -> None:
    """``y += a * x`` on sparse vectors."""
    for k, v in x.items():
        w = y.get(k, 0) + a * v
        if w:
            y[k] = w
        else:
            y.pop(k, None)


def _lincomb(a: int, x: Mapping, b: int, y: Mapping) -> dict:
    out = {k: a * v for k, v in x.items() if a * v}
    _axpy(out, b, y)
    return out


def column_reduce(columns: Sequence[Mapping[int, int]], track_inverse: bool = False) -> ColumnReduction:
    ncols = len(columns)
    vecs = [dict(c) for c in columns]
    V = [{j: 1} for j in range(ncols)]
    W = [{j: 1} for j in range(ncols)] if track_inverse else None  # rows of V^{-1}
    pivots: dict[int, int] = {}
    zero = []
    for j in range(ncols):
        c = vecs[j]
        while c:
            r = min(c)
            p = pivots.get(r)
            if p is None:
                pivots[r] = j
                break
            a, b = vecs[p][r], c[r]
            if b % a == 0:
                q = b // a
                _axpy(c, -q, vecs[p])
                _axpy(V[j], -q, V[p])
                if W is not None:
                    _axpy(W[p], q, W[j])
            else:
                x, y, g = xgcd(a, b)
                ag, bg = a // g, b // g
                vp, vc = vecs[p], c
                vecs[p] = _lincomb(x, vp, y, vc)
                vecs[j] = c = _lincomb(-bg, vp, ag, vc)
                Vp, Vc = V[p], V[j]
                V[p], V[j] = _lincomb(x, Vp, y, Vc), _lincomb(-bg, Vp, ag, Vc)
                if W is not None:
                    Wp, Wc = W[p], W[j]
                    W[p], W[j] = _lincomb(ag, Wp, bg, Wc), _lincomb(-y, Wp, x, Wc)
        if not c:
            zero.append(j)
    return ColumnReduction(
        rank=len(pivots),
        kernel=[V[j] for j in zero],
        coords=[W[j] for j in zero] if W is not None else [],
    )


def kernel_basis(M) -> np.ndarray:
    """Columns form a saturated lattice basis of ``{x : M x = 0}``."""
    M = int_matrix(M)
    red = column_reduce(_columns(M))
    K = np.zeros((M.shape[1], len(red.kernel)), dtype=object)
    for k, vec in enumerate(red.kernel):
        for i, v in vec.items():
            K[i, k] = v
    return K


def rank(M) -> int:
    M = int_matrix(M)
    return column_reduce(_columns(M)).rank


# -- groups and complexes -------------------------------------------------------

@dataclass(frozen=True)
class AbelianGroup:
    """``Z^rank + Z/t1 + Z/t2 + ...`` with ``t1 | t2 | ...`` and every ``t >= 2``."""

    rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        t = tuple(invariant_factors(self.torsion))
        object.__setattr__(self, "torsion", tuple(x for x in t if x > 1))

    @property
    def is_trivial(self):
        return self.rank == 0 and not self.torsion

    def __str__(self):
        parts = []
        if self.rank == 1:
            parts.append("Z")
        elif self.rank > 1:
            parts.append(f"Z^{self.rank}")
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"

    @classmethod
    def parse(cls, text: str) -> "AbelianGroup":
        text = text.strip()
        if text == "0":
            return cls()
        r, tors = 0, []
        for part in text.split("+"):
            part = part.strip()
            if part == "Z":
                r += 1
            elif part.startswith("Z^"):
                r += int(part[2:])
            elif part.startswith("Z/"):
                tors.append(int(part[2:]))
            else:
                raise ValueError(f"bad group term {part!r}")
        return cls(r, tuple(tors))


class ChainComplexRep:
    """Labelled bases per degree and boundary matrices ``d[n] : C_n -> C_{n-1}``.

    ``boundaries[n]`` has shape ``(len(bases[n-1]), len(bases[n]))``; degree 0
    has the zero boundary.  ``dd = 0`` is checked on construction.
    """

    def __init__(self, bases: Mapping[int, Sequence[Hashable]],
                 boundaries: Mapping[int, np.ndarray], check: bool = True):
        self.bases = {n: list(b) for n, b in bases.items()}
        self.boundaries = {}
        for n, basis in self.bases.items():
            if n == 0:
                continue
            if n - 1 not in self.bases:
                continue
            shape = (len(self.bases[n - 1]), len(basis))
            d = boundaries.get(n)
            d = np.zeros(shape, dtype=object) if d is None else int_matrix(d, shape)
            if d.shape != shape:
                raise ChainError(f"boundary {n} has shape {d.shape}, expected {shape}")
            self.boundaries[n] = d
        self._cols = {n: _columns(d) for n, d in self.boundaries.items()}
        if check:
            bad = self.failing_dd()
            if bad:
                raise ChainError(f"boundary squares to nonzero in degrees {bad}")

    @property
    def degrees(self) -> list[int]:
        return sorted(self.bases)

    def rank(self, n: int) -> int:
        return len(self.bases.get(n, ()))

    def boundary(self, n: int) -> np.ndarray:
        if n in self.boundaries:
            return self.boundaries[n]
        rows = len(self.bases.get(n - 1, ()))
        return np.zeros((rows, self.rank(n)), dtype=object)

    def apply(self, n: int, v: Mapping[int, int]) -> dict[int, int]:
        """Boundary of a sparse chain ``{basis index: coefficient}`` in degree n."""
        out: dict[int, int] = {}
        cols = self._cols.get(n)
        if cols is None:
            return out
        for j, a in v.items():
            _axpy(out, a, cols[j])
        return out

    def failing_dd(self) -> list[int]:
        bad = []
        for n in self.boundaries:
            if n - 1 not in self.boundaries:
                continue
            for j in range(self.rank(n)):
                if self.apply(n - 1, self._cols[n][j]):
                    bad.append(n)
                    break
        return bad

    def homology(self, n: int) -> AbelianGroup:
        return homology_at(self, n)


def homology_at(C: ChainComplexRep, n: int) -> AbelianGroup:
    """``ker d_n / im d_{n+1}`` (``C_0 / im d_1`` in degree 0)."""
    if n not in C.bases or n + 1 not in C.bases:
        raise DegreeOutOfRange(f"degrees {n} and {n + 1} must be present")
    dn = C._cols.get(n)
    rank_n = column_reduce(dn).rank if dn else 0
    d_up = C.boundaries.get(n + 1)
    factors = smith_diagonal(_entries(d_up)) if d_up is not None and d_up.size else []
    free = C.rank(n) - rank_n - len(factors)
    return AbelianGroup(free, tuple(d for d in factors if d > 1))
