"""Independent oracles.  Nothing here uses the package's normal forms,
rewriting or integer elimination; maps are plain vertex tables."""

import itertools
from collections import deque

import sympy
from sympy.matrices.normalforms import invariant_factors


def vertices(n):
    return list(itertools.product((0, 1), repeat=n))


# letters as (kind, index, eps) with kind in "fsnp", acting on points


def point_step(letter, x):
    kind, i, e = letter
    if kind == "f":
        return x[:i - 1] + (e,) + x[i - 1:]
    if kind == "s":
        return x[:i - 1] + x[i:]
    op = max if kind == "n" else min
    return x[:i - 1] + (op(x[i - 1], x[i]),) + x[i + 1:]


def legal_letters(dim, kinds, cap):
    out = []
    if "f" in kinds and dim + 1 <= cap:
        out += [("f", i, e) for i in range(1, dim + 2) for e in (0, 1)]
    if "s" in kinds:
        out += [("s", i, 0) for i in range(1, dim + 1)]
    for k in "np":
        if k in kinds:
            out += [(k, i, 0) for i in range(1, dim)]
    return out


def table(word, n):
    """The map of a word (letters applied to points left to right) as a tuple."""
    out = []
    for x in vertices(n):
        for letter in word:
            x = point_step(letter, x)
        out.append(x)
    return tuple(out)


def bfs_maps(n, m, kinds):
    """All distinct maps [1]^n -> [1]^m generated by the given letter kinds.

    Standard forms never pass through a dimension above max(n, m), so the
    search is capped there.
    """
    cap = max(n, m)
    start = (n, tuple(vertices(n)))
    seen = {start}
    queue = deque([start])
    while queue:
        dim, tab = queue.popleft()
        for letter in legal_letters(dim, kinds, cap):
            new = tuple(point_step(letter, y) for y in tab)
            nd = len(new[0]) if new else dim
            state = (nd, new)
            if state not in seen:
                seen.add(state)
                queue.append(state)
    return {tab for dim, tab in seen if dim == m}


def factors_through(tab, letter, n):
    """Is the map constant on the fibres of the letter?"""
    image = {}
    for x, y in zip(vertices(n), tab):
        key = point_step(letter, x)
        if image.setdefault(key, y) != y:
            return False
    return True


def quotient_letters(n, kinds):
    out = []
    if "s" in kinds:
        out += [("s", i, 0) for i in range(1, n + 1)]
    for k in "np":
        if k in kinds:
            out += [(k, i, 0) for i in range(1, n)]
    return out


def degenerate(tab, n, kinds):
    return any(factors_through(tab, lam, n) for lam in quotient_letters(n, kinds))


def circle_basis_size(n, kinds):
    """Reduced Moore basis of the circle in degree n: nonconstant maps to [1]^1
    that do not factor through a quotiented letter."""
    maps = [t for t in bfs_maps(n, 1, "snp") if len(set(t)) > 1]
    return sum(1 for t in maps if not degenerate(t, n, kinds))


# -- integer linear algebra via sympy ----------------------------------------------------

def sympy_invariants(rows):
    M = sympy.Matrix(rows)
    if M.rows == 0 or M.cols == 0:
        return []
    d = invariant_factors(M, domain=sympy.ZZ)
    return [abs(int(x)) for x in d if x != 0]


def cw_homology(dims, boundaries, n):
    """(rank, torsion) of a cellular chain complex; boundaries[k] is a list of rows."""
    def rank(k):
        B = boundaries.get(k)
        return sympy.Matrix(B).rank() if B and dims[k] and dims[k - 1] else 0
    inv = sympy_invariants(boundaries[n + 1]) if boundaries.get(n + 1) and dims.get(n + 1) else []
    free = dims[n] - rank(n) - len(inv)
    return free, tuple(d for d in inv if d > 1)


# reduced cellular complexes (vertex removed): one 1-cell per loop, one 2-cell
TORUS_CW = ({0: 0, 1: 2, 2: 1, 3: 0}, {1: [], 2: [[0], [0]], 3: []})   # word a b a^-1 b^-1
KLEIN_CW = ({0: 0, 1: 2, 2: 1, 3: 0}, {1: [], 2: [[0], [2]], 3: []})   # word a b a^-1 b


def circle_normalized_rank(n):
    """Rank of the normalized group of the reduced circle in degree n, from a
    rational nullspace of the stacked vertex-table face maps."""
    def nonconstant(k):
        return sorted(t for t in bfs_maps(k, 1, "snp") if len(set(t)) > 1)
    top, low = nonconstant(n), nonconstant(n - 1)
    where = {t: j for j, t in enumerate(low)}
    rows = []
    for i in range(1, n + 1):
        for e in (0, 1):
            if (i, e) == (n, 0):
                continue
            block = [[0] * len(top) for _ in low]
            for k, t in enumerate(top):
                face = tuple(t[vertices(n).index(point_step(("f", i, e), x))] for x in vertices(n - 1))
                if face in where:
                    block[where[face]][k] = 1
            rows += block
    if not rows:
        return len(top)
    return len(top) - sympy.Matrix(rows).rank()
