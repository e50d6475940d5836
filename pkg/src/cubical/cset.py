"""Finite presentations of cubical sets and the cube calculus.

A presentation lists generators with dimensions and, for every generator of
positive dimension, the cube sitting in each face.  The cubical set it
presents is freely generated subject only to those face relations: its
k-cubes are the pairs ``(g, s)`` with ``s : [1]^k -> [1]^dim(g)`` a surjection
(degeneracies and connections) in standard form.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from networkx.utils import UnionFind

from . import boxcat as bc
from .boxcat import BoxMorphism, Kind, Letter


class PresentationError(ValueError):
    pass


class UnknownName(PresentationError):
    pass


@dataclass(frozen=True, order=True)
class Cube:
    gen: str
    op: BoxMorphism

    @property
    def dim(self) -> int:
        return self.op.dom

    def __str__(self):
        if self.op.is_identity:
            return self.gen
        return self.gen + "." + ".".join(str(x) for x in self.op.letters())


def root(gen: str, dim: int) -> Cube:
    """The nondegenerate cube of a generator."""
    return Cube(gen, bc.identity(dim))


def degenerate_point(gen: str, k: int) -> Cube:
    """The k-cube ``x s1 s2 ... sk`` that is constant at the 0-cube ``gen``."""
    return Cube(gen, BoxMorphism(k, 0, (), (), tuple(range(1, k + 1))))


@dataclass(frozen=True)
class FaceViolation:
    gen: str
    first: tuple[int, int]
    second: tuple[int, int]
    lhs: Cube
    rhs: Cube

    def __str__(self):
        (j, e1), (i, e2) = self.first, self.second
        return (f"{self.gen}: d{j},{e1} then d{i},{e2} gives {self.lhs}, "
                f"but d{i + 1},{e2} then d{j},{e1} gives {self.rhs}")


class CubePresentation:
    """Generators (in insertion order), a total face table and an optional basepoint."""

    def __init__(self, dims: Mapping[str, int], faces: Mapping[tuple[str, int, int], Cube],
                 basepoint: str | None = None, name: str | None = None):
        self.dims = MappingProxyType(dict(dims))
        self.name = name
        table = {}
        for g, n in self.dims.items():
            if not isinstance(n, int) or n < 0:
                raise PresentationError(f"generator {g!r} has bad dimension {n!r}")
            for i in range(1, n + 1):
                for e in (0, 1):
                    c = faces.get((g, i, e))
                    if c is None:
                        raise PresentationError(f"missing face {g} {i} {e}")
                    self._check_cube(c, n - 1, f"face {g} {i} {e}")
                    table[(g, i, e)] = c
        extra = set(faces) - set(table)
        if extra:
            raise PresentationError(f"faces for unknown slots: {sorted(extra)}")
        self.faces = MappingProxyType(table)
        if basepoint is not None:
            if basepoint not in self.dims:
                raise UnknownName(f"basepoint {basepoint!r} is not a generator")
            if self.dims[basepoint] != 0:
                raise PresentationError("basepoint must be a 0-dimensional generator")
        self.basepoint = basepoint

    def _check_cube(self, c: Cube, dim: int, where: str):
        if c.gen not in self.dims:
            raise UnknownName(f"{where}: unknown generator {c.gen!r}")
        if c.op.faces or c.op.cod != self.dims[c.gen] or c.op.dom != dim:
            raise PresentationError(f"{where}: {c} is not a {dim}-cube of {c.gen}")

    @property
    def generators(self) -> list[str]:
        return list(self.dims)

    def dim(self, gen: str) -> int:
        try:
            return self.dims[gen]
        except KeyError:
            raise UnknownName(gen) from None

    @property
    def max_gen_dim(self) -> int:
        return max(self.dims.values(), default=0)

    def root(self, gen: str) -> Cube:
        return root(gen, self.dim(gen))

    def face(self, gen: str, i: int, eps: int) -> Cube:
        return self.faces[(gen, i, eps)]

    def with_basepoint(self, basepoint: str | None) -> "CubePresentation":
        return CubePresentation(self.dims, self.faces, basepoint, self.name)

    def __eq__(self, other):
        if not isinstance(other, CubePresentation):
            return NotImplemented
        return (list(self.dims.items()) == list(other.dims.items())
                and dict(self.faces) == dict(other.faces)
                and self.basepoint == other.basepoint)

    def __hash__(self):
        return hash((tuple(self.dims.items()), self.basepoint))

    def __repr__(self):
        counts = {}
        for n in self.dims.values():
            counts[n] = counts.get(n, 0) + 1
        label = self.name or "CubePresentation"
        return f"<{label} generators by dim {dict(sorted(counts.items()))}, base={self.basepoint}>"


# -- the cube calculus -----------------------------------------------------------

def resolve(X: CubePresentation, gen: str, m: BoxMorphism) -> Cube:
    """The cube ``gen . m`` in canonical form, peeling faces through the table."""
    if m.cod != X.dim(gen):
        raise bc.DimensionMismatch(f"{m} does not land in the {X.dim(gen)}-cube {gen}")
    while m.faces:
        (c, e), rest = m.faces[0], m.faces[1:]
        f = X.faces[(gen, c, e)]
        tail = BoxMorphism(m.dom, m.cod - 1, rest, m.connections, m.degeneracies)
        gen, m = f.gen, bc.compose(tail, f.op)
    return Cube(gen, m)


def act(X: CubePresentation, c: Cube, f: BoxMorphism) -> Cube:
    """Right action ``c . f`` of a box morphism ``f : [1]^k -> [1]^dim(c)``."""
    if f.cod != c.dim:
        raise bc.DimensionMismatch(f"cannot act on a {c.dim}-cube by {f}")
    return resolve(X, c.gen, bc.compose(f, c.op))


def apply(X: CubePresentation, c: Cube, word: Sequence[Letter]) -> Cube:
    """``c . w1 . w2 ...`` with the letters acting on the cube from the right."""
    dom = bc.action_dom(word, c.dim)
    return act(X, c, bc.from_letters(word, dom))


def parse_cube(X: CubePresentation, text: str) -> Cube:
    """Read ``gen.l1.l2...`` (letters acting from the right) as a cube of X."""
    gen, _, rest = text.strip().partition(".")
    if gen not in X.dims:
        raise UnknownName(f"unknown generator {gen!r}")
    word = bc.parse_word(rest) if rest else []
    return apply(X, X.root(gen), word)


def face_of(X: CubePresentation, c: Cube, i: int, eps: int) -> Cube:
    if not 1 <= i <= c.dim:
        raise bc.IndexOutOfRange(f"face {i} of a {c.dim}-cube")
    return act(X, c, bc.from_letters([bc.face(i, eps)], c.dim - 1))


def validate(X: CubePresentation) -> list[FaceViolation]:
    """Check ``d_{j,e'} d_{i,e} = d_{i+1,e} d_{j,e'}`` (j <= i) on every generator.

    Each side is resolved one face at a time so the two routes really go
    through different table entries.
    """
    out = []
    for g, n in X.dims.items():
        if n < 2:
            continue
        for i in range(1, n):
            for j in range(1, i + 1):
                for e1 in (0, 1):
                    for e2 in (0, 1):
                        lhs = face_of(X, X.face(g, j, e1), i, e2)
                        rhs = face_of(X, X.face(g, i + 1, e2), j, e1)
                        if lhs != rhs:
                            out.append(FaceViolation(g, (j, e1), (i, e2), lhs, rhs))
    return out


@lru_cache(maxsize=None)
def _surjections(k: int, m: int, allowed: frozenset) -> tuple[BoxMorphism, ...]:
    return tuple(bc.enumerate_morphisms(k, m, allowed))


def cubes(X: CubePresentation, k: int, allowed: Iterable[Kind] = bc.SURJECTIVE_KINDS) -> list[Cube]:
    """All k-cubes whose operator uses only ``allowed`` letters.

    Generators in presentation order, operators in standard-form order.
    """
    allowed = frozenset(allowed) - {Kind.FACE}
    out = []
    for g, n in X.dims.items():
        if n <= k:
            out.extend(Cube(g, s) for s in _surjections(k, n, allowed))
    return out


def pi0(X: CubePresentation) -> list[list[str]]:
    """Connected components as lists of 0-dimensional generators."""
    verts = [g for g, n in X.dims.items() if n == 0]
    uf = UnionFind(verts)
    for g, n in X.dims.items():
        if n == 1:
            uf.union(X.face(g, 1, 0).gen, X.face(g, 1, 1).gen)
    classes: dict[str, list[str]] = {}
    for v in verts:
        classes.setdefault(uf[v], []).append(v)
    return list(classes.values())


# -- products --------------------------------------------------------------------

def pair_name(g: str, h: str) -> str:
    return f"{g}*{h}"


def product(X: CubePresentation, Y: CubePresentation) -> CubePresentation:
    """Geometric product; generator ``g*h`` has dimension ``dim g + dim h``.

    Faces follow the block rule: the first ``dim g`` faces come from ``g``,
    the rest from ``h``; the degenerate part of a face is the product map of
    the two operators.
    """
    dims, faces = {}, {}
    for g, m in X.dims.items():
        for h, n in Y.dims.items():
            name = pair_name(g, h)
            if name in dims:
                raise PresentationError(f"generator name clash on {name!r}")
            dims[name] = m + n
    for g, m in X.dims.items():
        for h, n in Y.dims.items():
            name = pair_name(g, h)
            for e in (0, 1):
                for i in range(1, m + 1):
                    x = X.face(g, i, e)
                    faces[(name, i, e)] = Cube(pair_name(x.gen, h),
                                               bc.tensor(x.op, bc.identity(n)))
                for i in range(1, n + 1):
                    y = Y.face(h, i, e)
                    faces[(name, m + i, e)] = Cube(pair_name(g, y.gen),
                                                   bc.tensor(bc.identity(m), y.op))
    base = None
    if X.basepoint is not None and Y.basepoint is not None:
        base = pair_name(X.basepoint, Y.basepoint)
    label = f"{X.name}*{Y.name}" if X.name and Y.name else None
    return CubePresentation(dims, faces, base, label)


def product_cube(c: Cube, d: Cube) -> Cube:
    """The cube ``(c, d)`` of the product presentation."""
    return Cube(pair_name(c.gen, d.gen), bc.tensor(c.op, d.op))


# -- maps ------------------------------------------------------------------------

@dataclass(frozen=True)
class CubicalMap:
    source: CubePresentation
    target: CubePresentation
    assignment: Mapping[str, Cube] = field(hash=False)

    def __call__(self, c: Cube) -> Cube:
        return map_cube(self, c)


def map_cube(F: CubicalMap, c: Cube) -> Cube:
    return act(F.target, F.assignment[c.gen], c.op)


def validate_map(F: CubicalMap) -> list[str]:
    """Violations of dimension preservation, face commutation and basepoints."""
    X, Y = F.source, F.target
    out = []
    for g, n in X.dims.items():
        img = F.assignment.get(g)
        if img is None:
            out.append(f"{g}: no image")
            continue
        if img.gen not in Y.dims or img.op.cod != Y.dim(img.gen) or img.op.faces:
            out.append(f"{g}: {img} is not a cube of the target")
            continue
        if img.dim != n:
            out.append(f"{g}: dimension {n} sent to a {img.dim}-cube")
    if out:
        return out
    for g, n in X.dims.items():
        for i in range(1, n + 1):
            for e in (0, 1):
                lhs = face_of(Y, F.assignment[g], i, e)
                rhs = map_cube(F, X.face(g, i, e))
                if lhs != rhs:
                    out.append(f"({g}, {i}, {e}): image face {lhs} != image of face {rhs}")
    if X.basepoint is not None and Y.basepoint is not None:
        if F.assignment[X.basepoint] != Y.root(Y.basepoint):
            out.append(f"basepoint {X.basepoint} not sent to {Y.basepoint}")
    return out


def identity_map(X: CubePresentation) -> CubicalMap:
    return CubicalMap(X, X, {g: X.root(g) for g in X.dims})


def constant_map(X: CubePresentation, Y: CubePresentation, vertex: str) -> CubicalMap:
    return CubicalMap(X, Y, {g: degenerate_point(vertex, n) for g, n in X.dims.items()})


# -- built-in presentations ---------------------------------------------------------

def point() -> CubePresentation:
    return CubePresentation({"v": 0}, {}, "v", "point")


def two_points() -> CubePresentation:
    return CubePresentation({"a": 0, "b": 0}, {}, "a", "two_points")


def interval() -> CubePresentation:
    faces = {("e", 1, 0): root("v0", 0), ("e", 1, 1): root("v1", 0)}
    return CubePresentation({"v0": 0, "v1": 0, "e": 1}, faces, "v0", "interval")


def circle() -> CubePresentation:
    faces = {("e", 1, 0): root("v", 0), ("e", 1, 1): root("v", 0)}
    return CubePresentation({"v": 0, "e": 1}, faces, "v", "circle")


def sphere(n: int) -> CubePresentation:
    """One vertex and one n-cube whose faces are all the degenerate basepoint."""
    if n < 1:
        raise PresentationError("sphere dimension must be >= 1")
    faces = {("s", i, e): degenerate_point("v", n - 1)
             for i in range(1, n + 1) for e in (0, 1)}
    return CubePresentation({"v": 0, "s": n}, faces, "v", f"sphere({n})")


def torus() -> CubePresentation:
    T = product(circle(), circle())
    return CubePresentation(T.dims, T.faces, T.basepoint, "torus")


def klein() -> CubePresentation:
    """Klein bottle from two squares, each with one side collapsed to the vertex.

    Reading boundaries as ``d2,0 . d1,1 . (d2,1)^-1 . (d1,0)^-1``, square ``s``
    spells ``a b c^-1`` and ``t`` spells ``b c a^-1``; gluing along ``c``
    gives the word ``a b a^-1 b``.
    """
    v = root("v", 0)
    dims = {"v": 0, "a": 1, "b": 1, "c": 1, "s": 2, "t": 2}
    faces = {}
    for e in "abc":
        faces[(e, 1, 0)] = faces[(e, 1, 1)] = v
    line = lambda g: root(g, 1)  # noqa: E731
    flat = degenerate_point("v", 1)
    faces.update({
        ("s", 1, 0): flat, ("s", 1, 1): line("b"), ("s", 2, 0): line("a"), ("s", 2, 1): line("c"),
        ("t", 1, 0): flat, ("t", 1, 1): line("c"), ("t", 2, 0): line("b"), ("t", 2, 1): line("a"),
    })
    return CubePresentation(dims, faces, "v", "klein")


_BUILTINS = {
    "point": point,
    "two_points": two_points,
    "interval": interval,
    "circle": circle,
    "torus": torus,
    "klein": klein,
}

CORPUS = ("point", "two_points", "interval", "circle", "sphere(2)", "sphere(3)", "torus", "klein")


def builtin(name: str) -> CubePresentation:
    """Look up ``point``, ``two_points``, ``interval``, ``circle``, ``sphere(n)``,
    ``torus`` or ``klein``.  ``sphereN`` is accepted for ``sphere(N)``."""
    m = re.fullmatch(r"sphere\(?(\d+)\)?", name.strip())
    if m:
        return sphere(int(m.group(1)))
    try:
        return _BUILTINS[name.strip()]()
    except KeyError:
        raise UnknownName(f"no built-in presentation {name!r}") from None
