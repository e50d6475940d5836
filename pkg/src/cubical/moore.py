"""Chain complexes of free cubical abelian groups.

``A_n`` is the free abelian group on the n-cubes of a presentation.  The
degenerate subgroups are spanned by basis cubes, so every quotient complex is
realised by deleting those cubes from the basis.  Reduced complexes also drop
the cubes rooted at the basepoint.
"""

from __future__ import annotations

import enum
from functools import lru_cache
from dataclasses import dataclass, field

from . import boxcat as bc
from . import chains as ch
from .boxcat import BoxMorphism, Kind
from .chains import AbelianGroup, ChainComplexRep
from .cset import Cube, CubePresentation, cubes, face_of, validate, interval


class MooreError(ValueError):
    pass


class InvalidPresentation(MooreError):
    pass


class MissingBasepoint(MooreError):
    pass


class Variant(enum.Enum):
    NONE = "none"
    S = "s"
    SNEG = "sn"
    SPOS = "sp"
    SBOTH = "snp"

    @property
    def quotient(self) -> frozenset:
        return _QUOTIENT[self]

    def letters(self, n: int) -> list[bc.Letter]:
        """The letters ``[1]^n -> [1]^(n-1)`` whose images are quotiented."""
        out = []
        if Kind.DEGEN in self.quotient:
            out += [bc.degen(i) for i in range(1, n + 1)]
        for kind, e in ((Kind.NEG, 0), (Kind.POS, 1)):
            if kind in self.quotient:
                out += [bc.conn(i, e) for i in range(1, n)]
        return out

    def degenerate(self, op: BoxMorphism) -> bool:
        """True if ``x.op`` lies in the quotiented subgroup for every root ``x``.

        That subgroup is spanned by the cubes ``x.l`` with ``l`` a quotiented
        letter, so the test is whether ``op`` factors through such a letter.
        It is narrower than asking whether the standard form contains one.
        """
        return _degenerate(op, self)

    @classmethod
    def parse(cls, text) -> "Variant":
        if isinstance(text, cls):
            return text
        try:
            return cls(str(text).lower())
        except ValueError:
            raise MooreError(f"unknown variant {text!r}") from None


_QUOTIENT = {
    Variant.NONE: frozenset(),
    Variant.S: frozenset({Kind.DEGEN}),
    Variant.SNEG: frozenset({Kind.DEGEN, Kind.NEG}),
    Variant.SPOS: frozenset({Kind.DEGEN, Kind.POS}),
    Variant.SBOTH: frozenset({Kind.DEGEN, Kind.NEG, Kind.POS}),
}

@lru_cache(maxsize=None)
def _degenerate(op: BoxMorphism, variant: Variant) -> bool:
    if not op.kinds() & variant.quotient:
        return False
    return any(bc.factors_through(op, x) for x in variant.letters(op.dom))


QUOTIENT_VARIANTS = (Variant.S, Variant.SNEG, Variant.SPOS, Variant.SBOTH)


def _sign(i: int, e: int) -> int:
    return -1 if (i + e) % 2 else 1


class CubicalChains:
    """Bases, face maps and boundaries of ``F(X, x)`` modulo one degenerate subgroup."""

    def __init__(self, X: CubePresentation, variant=Variant.SNEG, basepoint: str | None = None,
                 reduced: bool = True, max_dim: int = 3, check: bool = True):
        if check:
            bad = validate(X)
            if bad:
                raise InvalidPresentation("; ".join(map(str, bad)))
        self.X = X
        self.variant = Variant.parse(variant)
        if reduced:
            basepoint = basepoint if basepoint is not None else X.basepoint
            if basepoint is None:
                raise MissingBasepoint("reduced chains need a basepoint")
            if X.dims.get(basepoint) != 0:
                raise InvalidPresentation(f"{basepoint!r} is not a vertex")
        else:
            basepoint = None
        self.basepoint = basepoint
        self.max_dim = max_dim
        self._bases: dict[int, list[Cube]] = {}
        self._index: dict[int, dict[Cube, int]] = {}
        self._faces: dict[tuple[Cube, int, int], Cube] = {}

    def killed(self, c: Cube) -> bool:
        """True if the cube is zero in the quotient."""
        return c.gen == self.basepoint or self.variant.degenerate(c.op)

    def basis(self, n: int) -> list[Cube]:
        if n not in self._bases:
            B = [c for c in cubes(self.X, n) if not self.killed(c)]
            self._bases[n] = B
            self._index[n] = {c: j for j, c in enumerate(B)}
        return self._bases[n]

    def index(self, n: int) -> dict[Cube, int]:
        self.basis(n)
        return self._index[n]

    def face(self, c: Cube, i: int, e: int) -> Cube:
        key = (c, i, e)
        r = self._faces.get(key)
        if r is None:
            r = self._faces[key] = face_of(self.X, c, i, e)
        return r

    def project(self, c: Cube) -> int | None:
        """Basis position of a cube, or None when it is zero in the quotient."""
        j = self.index(c.dim).get(c)
        if j is None and not self.killed(c):
            raise MooreError(f"{c} is neither a basis cube nor degenerate")
        return j

    def face_columns(self, n: int, i: int, e: int) -> list[dict[int, int]]:
        out = []
        for c in self.basis(n):
            j = self.project(self.face(c, i, e))
            out.append({} if j is None else {j: 1})
        return out

    def boundary_columns(self, n: int) -> list[dict[int, int]]:
        out = []
        for c in self.basis(n):
            col: dict[int, int] = {}
            for i in range(1, n + 1):
                for e in (0, 1):
                    j = self.project(self.face(c, i, e))
                    if j is not None:
                        v = col.get(j, 0) + _sign(i, e)
                        if v:
                            col[j] = v
                        else:
                            del col[j]
            out.append(col)
        return out

    def complex(self, max_dim: int | None = None) -> ChainComplexRep:
        top = self.max_dim if max_dim is None else max_dim
        bases = {n: self.basis(n) for n in range(top + 1)}
        bounds = {n: _dense(self.boundary_columns(n), len(bases[n - 1])) for n in range(1, top + 1)}
        return ChainComplexRep(bases, bounds)


def _dense(cols: list[dict[int, int]], rows: int):
    M = ch.int_matrix([[0] * len(cols) for _ in range(rows)], (rows, len(cols)))
    for j, col in enumerate(cols):
        for i, v in col.items():
            M[i, j] = v
    return M


def build_complex(X: CubePresentation, variant=Variant.SNEG, basepoint: str | None = None,
                  max_dim: int = 3, reduced: bool = True) -> ChainComplexRep:
    """Moore complex of ``X`` in degrees ``0..max_dim``.

    With ``reduced`` the basepoint (argument, else the presentation's) is
    killed; ``reduced=False`` gives the unreduced complex.
    """
    return CubicalChains(X, variant, basepoint, reduced, max_dim).complex()


def reduced_homology(X: CubePresentation, variant=Variant.SNEG, basepoint: str | None = None,
                     n: int = 1, reduced: bool = True) -> AbelianGroup:
    C = build_complex(X, variant, basepoint, n + 1, reduced)
    return ch.homology_at(C, n)


def homology_table(X: CubePresentation, variant=Variant.SNEG, basepoint: str | None = None,
                   top: int = 3, reduced: bool = True) -> dict[int, AbelianGroup]:
    C = build_complex(X, variant, basepoint, top + 1, reduced)
    return {n: ch.homology_at(C, n) for n in range(top + 1)}


# -- normalized subcomplex -----------------------------------------------------------

@dataclass
class NormalizedLevel:
    kernel: list[dict[int, int]]  # basis vectors in A_n coordinates
    coords: list[dict[int, int]]  # rows recovering kernel coordinates from A_n vectors


class NormalizedChains:
    """``N_n``: the chains of ``A_n`` (reduced, nothing quotiented) killed by
    every face except ``d_{n,0}`` (or ``d_{n,1}`` when ``mirrored``)."""

    def __init__(self, X: CubePresentation, basepoint: str | None = None, max_dim: int = 3,
                 mirrored: bool = False):
        self.A = CubicalChains(X, Variant.NONE, basepoint, True, max_dim)
        self.free_eps = 1 if mirrored else 0
        self.max_dim = max_dim
        self._levels: dict[int, NormalizedLevel] = {}

    def stacked_columns(self, n: int) -> list[dict[int, int]]:
        size = len(self.A.basis(n - 1)) if n > 0 else 0
        cols = [dict() for _ in self.A.basis(n)]
        block = 0
        for i in range(1, n + 1):
            for e in (0, 1):
                if (i, e) == (n, self.free_eps):
                    continue
                for col, fc in zip(cols, self.A.face_columns(n, i, e)):
                    for r, v in fc.items():
                        col[block + r] = v
                block += size
        return cols

    def level(self, n: int) -> NormalizedLevel:
        if n not in self._levels:
            red = ch.column_reduce(self.stacked_columns(n), track_inverse=True)
            self._levels[n] = NormalizedLevel(red.kernel, red.coords)
        return self._levels[n]

    def rank(self, n: int) -> int:
        return len(self.level(n).kernel)

    def coordinates(self, n: int, v: dict[int, int]) -> list[int]:
        """Coordinates of a vector of ``N_n`` in the kernel basis."""
        lev = self.level(n)
        c = [sum(w.get(k, 0) * a for k, a in v.items()) for w in lev.coords]
        back: dict[int, int] = {}
        for a, k in zip(c, lev.kernel):
            ch._axpy(back, a, k)
        if back != {k: a for k, a in v.items() if a}:
            raise MooreError(f"vector is not in N_{n}")
        return c

    def boundary_columns(self, n: int) -> list[list[int]]:
        # on N_n only the free face survives: d = (-1)^(n + eps) d_{n,eps}
        s = _sign(n, self.free_eps)
        dA = self.A.boundary_columns(n)
        dfree = self.A.face_columns(n, n, self.free_eps)
        out = []
        for k in self.level(n).kernel:
            image: dict[int, int] = {}
            for j, a in k.items():
                ch._axpy(image, a, dA[j])
            free: dict[int, int] = {}
            for j, a in k.items():
                ch._axpy(free, s * a, dfree[j])
            if free != image:
                raise MooreError(f"boundary of N_{n} is not carried by the free face")
            out.append(self.coordinates(n - 1, image))
        return out

    def complex(self) -> ChainComplexRep:
        bases = {n: [tuple(sorted(k.items())) for k in self.level(n).kernel]
                 for n in range(self.max_dim + 1)}
        bounds = {}
        for n in range(1, self.max_dim + 1):
            cols = self.boundary_columns(n)
            rows = self.rank(n - 1)
            bounds[n] = ch.int_matrix([[c[r] for c in cols] for r in range(rows)], (rows, len(cols)))
        return ChainComplexRep(bases, bounds)


def normalized_complex(X: CubePresentation, basepoint: str | None = None, max_dim: int = 3,
                       mirrored: bool = False) -> ChainComplexRep:
    """The normalized subcomplex; basis labels are sorted sparse kernel vectors."""
    return NormalizedChains(X, basepoint, max_dim, mirrored).complex()


# -- the splitting A = N + D ---------------------------------------------------------

@dataclass
class DecompositionReport:
    n: int
    variant: Variant
    rank_A: int
    rank_N: int
    rank_D: int
    invariants: list[int]
    counts: dict[int, tuple[int, int]] = field(default_factory=dict)  # i -> (rank N_i, #maps)

    @property
    def ranks_add_up(self) -> bool:
        return self.rank_N + self.rank_D == self.rank_A

    @property
    def unimodular(self) -> bool:
        return len(self.invariants) == self.rank_A and all(d == 1 for d in self.invariants)

    @property
    def counting_ok(self) -> bool:
        return sum(a * b for a, b in self.counts.values()) == self.rank_A

    @property
    def ok(self) -> bool:
        return self.ranks_add_up and self.unimodular and self.counting_ok

    def __str__(self):
        verdict = "split" if self.ok else "NOT split"
        return (f"degree {self.n} ({self.variant.value}): rank A = {self.rank_A}, "
                f"rank N = {self.rank_N}, rank D = {self.rank_D}, {verdict}")


def check_decomposition(X: CubePresentation, n: int, variant=Variant.SNEG,
                        basepoint: str | None = None) -> DecompositionReport:
    """Check ``A_n = N_n + D_n`` as an internal direct sum over the integers.

    ``variant`` is ``SNEG`` (the usual normalized complex) or ``SPOS`` (the
    mirrored one, free face ``d_{n,1}``).  Besides ranks and unimodularity
    the report tallies ``rank A_n = sum_i rank N_i * #maps [1]^n -> [1]^i``
    using degeneracies and connections of the quotiented sign.
    """
    variant = Variant.parse(variant)
    if variant not in (Variant.SNEG, Variant.SPOS):
        raise MooreError("decomposition is stated for the sn and sp variants")
    N = NormalizedChains(X, basepoint, n, mirrored=variant is Variant.SPOS)
    A = N.A
    basis = A.basis(n)
    D = [j for j, c in enumerate(basis) if variant.degenerate(c.op)]
    kernel = N.level(n).kernel
    cols = [dict(k) for k in kernel] + [{j: 1} for j in D]
    entries = {(r, c): v for c, col in enumerate(cols) for r, v in col.items()}
    inv = ch.smith_diagonal(entries) if entries else []
    kinds = variant.quotient
    counts = {i: (N.rank(i), len(bc.enumerate_morphisms(n, i, kinds))) for i in range(n + 1)}
    return DecompositionReport(n, variant, len(basis), len(kernel), len(D), inv, counts)


# -- the counterexample for the symmetric quotient ----------------------------------------

def witness_chain() -> dict[Cube, int]:
    """The square ``e s1 + e s2 - e p1 - e n1`` on a 1-cube ``e``."""
    def cube(op: BoxMorphism) -> Cube:
        return Cube("e", op)
    return {
        cube(BoxMorphism(2, 1, (), (), (1,))): 1,
        cube(BoxMorphism(2, 1, (), (), (2,))): 1,
        cube(BoxMorphism(2, 1, (), ((1, 1),), ())): -1,
        cube(BoxMorphism(2, 1, (), ((1, 0),), ())): -1,
    }


@dataclass
class CounterexampleReport:
    chain: dict[Cube, int]
    faces: dict[tuple[int, int], dict[Cube, int]]
    nonzero: bool
    in_normalized: bool
    in_degenerate: bool
    intersections: dict[Variant, int]

    @property
    def all_faces_zero(self) -> bool:
        return all(not v for v in self.faces.values())

    @property
    def ok(self) -> bool:
        return (self.all_faces_zero and self.nonzero and self.in_normalized and self.in_degenerate
                and self.intersections[Variant.SBOTH] >= 1 and self.intersections[Variant.SNEG] == 0)


def intersection_rank(N: NormalizedChains, n: int, variant: Variant) -> int:
    """Rank of ``N_n`` meet the span of the cubes the variant quotients."""
    basis = N.A.basis(n)
    D = [{j: 1} for j, c in enumerate(basis) if variant.degenerate(c.op)]
    K = N.level(n).kernel
    both = ch.column_reduce([dict(k) for k in K] + D).rank
    return len(K) + len(D) - both


def counterexample_witness(X: CubePresentation | None = None, basepoint: str | None = None,
                           ) -> CounterexampleReport:
    """Evaluate the witness square in the reduced chains of an interval with one
    end as basepoint (any presentation with a 1-generator ``e`` will do)."""
    X = interval() if X is None else X
    N = NormalizedChains(X, basepoint, 2)
    A = N.A
    chain = witness_chain()
    faces = {}
    for i in (1, 2):
        for e in (0, 1):
            acc: dict[Cube, int] = {}
            for c, a in chain.items():
                f = A.face(c, i, e)
                if A.killed(f):
                    continue
                v = acc.get(f, 0) + a
                if v:
                    acc[f] = v
                else:
                    acc.pop(f)
            faces[(i, e)] = acc
    idx = A.index(2)
    vec = {idx[c]: a for c, a in chain.items()}
    try:
        N.coordinates(2, vec)
        in_n = True
    except MooreError:
        in_n = False
    in_d = all(Variant.SBOTH.degenerate(c.op) for c in chain)
    inter = {v: intersection_rank(N, 2, v) for v in (Variant.SNEG, Variant.SBOTH)}
    return CounterexampleReport(chain, faces, bool(vec), in_n, in_d, inter)


# -- homology of N against the Moore quotient ---------------------------------------------

@dataclass
class PiNReport:
    n: int
    normalized: AbelianGroup
    moore: AbelianGroup

    @property
    def equal(self) -> bool:
        return self.normalized == self.moore

    def __str__(self):
        return f"H_{self.n}(N) = {self.normalized}, H~_{self.n} = {self.moore}"


def check_pi_n(X: CubePresentation, basepoint: str | None = None, n: int = 1) -> PiNReport:
    """Compare ``H_n`` of the normalized complex with reduced Moore homology.

    For a free cubical abelian group both compute ``pi_n`` of the underlying
    pointed cubical set, so agreement is the computable face of Hurewicz.
    """
    Nn = ch.homology_at(normalized_complex(X, basepoint, n + 1), n)
    Hn = reduced_homology(X, Variant.SNEG, basepoint, n)
    return PiNReport(n, Nn, Hn)
