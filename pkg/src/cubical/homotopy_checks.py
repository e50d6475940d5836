"""Chain homotopies from cubical homotopies, checked on explicit matrices.

A homotopy ``h : X (x) I -> Y`` from ``f`` to ``g`` gives maps
``alpha_n(z) = (-1)^(n+1) h(z, id)`` with ``alpha d + d alpha = f# - g#``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import boxcat as bc
from .chains import AbelianGroup
from .cset import (Cube, CubePresentation, CubicalMap, act, constant_map, cubes, identity_map,
                   interval, map_cube, pair_name, parse_cube, point, product, validate_map)
from .moore import QUOTIENT_VARIANTS, CubicalChains, Variant, reduced_homology


class InvalidHomotopy(ValueError):
    pass


@dataclass
class HomotopyData:
    """``h`` is a map ``product(X, I) -> Y``; ``h(x, v0) = f(x)`` and ``h(x, v1) = g(x)``.

    With ``based`` the complexes are reduced at the basepoints of X and Y and
    ``h`` must be constant on the basepoint of X.
    """
    f: CubicalMap
    g: CubicalMap
    h: CubicalMap
    based: bool = True

    @property
    def source(self) -> CubePresentation:
        return self.f.source

    @property
    def target(self) -> CubePresentation:
        return self.f.target


def cylinder(X: CubePresentation) -> CubePresentation:
    return product(X, interval())


def homotopy(f: CubicalMap, g: CubicalMap, paths: dict[str, Cube], based: bool = True) -> HomotopyData:
    """Assemble ``h`` from the images of the ``(x, e)`` cubes; the ends come from f and g."""
    X, Y = f.source, f.target
    cyl = cylinder(X)
    assignment = {}
    for x in X.dims:
        assignment[pair_name(x, "v0")] = f.assignment[x]
        assignment[pair_name(x, "v1")] = g.assignment[x]
        assignment[pair_name(x, "e")] = paths[x]
    return HomotopyData(f, g, CubicalMap(cyl, Y, assignment), based)


def constant_homotopy(f: CubicalMap, based: bool = True) -> HomotopyData:
    """The homotopy ``h(x, t) = f(x)`` from f to itself."""
    paths = {}
    for x, m in f.source.dims.items():
        s = bc.BoxMorphism(m + 1, m, (), (), (m + 1,))
        paths[x] = act(f.target, f.assignment[x], s)
    return homotopy(f, f, paths, based)


def check_homotopy(d: HomotopyData) -> list[str]:
    """Problems with the data; empty when it is a (based) homotopy from f to g."""
    out = []
    for name, F in (("f", d.f), ("g", d.g), ("h", d.h)):
        out += [f"{name}: {msg}" for msg in validate_map(F)]
    if out:
        return out
    X = d.source
    for x in X.dims:
        if d.h.assignment[pair_name(x, "v0")] != d.f.assignment[x]:
            out.append(f"h({x}, v0) is not f({x})")
        if d.h.assignment[pair_name(x, "v1")] != d.g.assignment[x]:
            out.append(f"h({x}, v1) is not g({x})")
    if d.based:
        if X.basepoint is None or d.target.basepoint is None:
            out.append("based homotopy needs pointed source and target")
        else:
            b = d.target.basepoint
            flat = Cube(b, bc.BoxMorphism(1, 0, (), (), (1,)))
            if d.h.assignment[pair_name(X.basepoint, "e")] != flat:
                out.append("h is not constant on the basepoint")
    return out


@dataclass
class ChainHomotopyReport:
    variant: Variant
    degrees: list[int]
    failures: dict[int, list[str]] = field(default_factory=dict)
    degeneracy_failures: list[str] = field(default_factory=list)
    alpha: dict[int, dict[int, dict[int, int]]] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not any(self.failures.values()) and not self.degeneracy_failures

    def __str__(self):
        if self.ok:
            return f"alpha d + d alpha = f - g in degrees {self.degrees} ({self.variant.value})"
        bad = sorted(n for n, v in self.failures.items() if v)
        return f"identity fails in degrees {bad}; degeneracy claim failures {len(self.degeneracy_failures)}"


def _add(acc: dict, j, a):
    v = acc.get(j, 0) + a
    if v:
        acc[j] = v
    else:
        acc.pop(j, None)


def _induced(CX: CubicalChains, CY: CubicalChains, F: CubicalMap, n: int) -> list[dict[int, int]]:
    out = []
    for z in CX.basis(n):
        col: dict[int, int] = {}
        j = CY.project(map_cube(F, z))
        if j is not None:
            col[j] = 1
        out.append(col)
    return out


def _compose(cols_first: list[dict], cols_second: list[dict]) -> list[dict]:
    out = []
    for col in cols_first:
        acc: dict[int, int] = {}
        for j, a in col.items():
            for k, b in cols_second[j].items():
                _add(acc, k, a * b)
        out.append(acc)
    return out


def verify_chain_homotopy(d: HomotopyData, variant=Variant.SNEG, max_dim: int = 3) -> ChainHomotopyReport:
    """Check ``alpha_{n-1} d_n + d_{n+1} alpha_n = f#_n - g#_n`` for ``n <= max_dim``."""
    problems = check_homotopy(d)
    if problems:
        raise InvalidHomotopy("; ".join(problems))
    variant = Variant.parse(variant)
    X, Y = d.source, d.target
    CX = CubicalChains(X, variant, None, d.based, max_dim)
    CY = CubicalChains(Y, variant, None, d.based, max_dim + 1)
    report = ChainHomotopyReport(variant, list(range(max_dim + 1)))

    def alpha_cube(z: Cube) -> Cube:
        zi = Cube(pair_name(z.gen, "e"), bc.tensor(z.op, bc.identity(1)))
        return map_cube(d.h, zi)

    for n in range(max_dim + 1):
        sign = -1 if (n + 1) % 2 else 1
        cols = []
        for z in CX.basis(n):
            j = CY.project(alpha_cube(z))
            cols.append({} if j is None else {j: sign})
        report.alpha[n] = dict(enumerate(cols))

    for n in range(max_dim + 1):
        lhs = _compose(list(report.alpha[n].values()), CY.boundary_columns(n + 1))
        if n > 0:
            low = _compose(CX.boundary_columns(n), list(report.alpha[n - 1].values()))
            for acc, extra in zip(lhs, low):
                for k, v in extra.items():
                    _add(acc, k, v)
        fs, gs = _induced(CX, CY, d.f, n), _induced(CX, CY, d.g, n)
        msgs = []
        for z, acc, fc, gc in zip(CX.basis(n), lhs, fs, gs):
            want = dict(fc)
            for k, v in gc.items():
                _add(want, k, -v)
            if acc != want:
                msgs.append(f"degree {n}, {z}: got {acc}, want {want}")
        report.failures[n] = msgs

    # quotiented cubes must go to quotiented cubes
    for n in range(max_dim + 1):
        for z in cubes(X, n):
            if CX.killed(z) and not CY.killed(alpha_cube(z)):
                report.degeneracy_failures.append(f"{z} -> {alpha_cube(z)}")
    return report


@dataclass
class VariantReport:
    n: int
    groups: dict[Variant, AbelianGroup]

    @property
    def agree(self) -> bool:
        return len(set(self.groups.values())) <= 1

    def disagreement(self) -> str | None:
        if self.agree:
            return None
        return ", ".join(f"{v.value}: {g}" for v, g in self.groups.items())

    def __str__(self):
        if self.agree:
            return f"all variants agree in degree {self.n}: {next(iter(self.groups.values()))}"
        return f"variants disagree in degree {self.n}: {self.disagreement()}"


def variant_agreement(X: CubePresentation, basepoint: str | None = None, n: int = 1) -> VariantReport:
    """Reduced homology in degree n for the four quotient variants."""
    return VariantReport(n, {v: reduced_homology(X, v, basepoint, n) for v in QUOTIENT_VARIANTS})


# -- stock homotopies --------------------------------------------------------------------

def interval_contraction() -> HomotopyData:
    """Identity of the interval to the constant map at v1, based at v1.

    The square ``h(e, e) = e.n1`` takes ``(s, t)`` to ``max(s, t)``.
    """
    I = interval().with_basepoint("v1")
    f, g = identity_map(I), constant_map(I, I, "v1")
    paths = {"v0": I.root("e"), "v1": parse_cube(I, "v1.s1"), "e": parse_cube(I, "e.n1")}
    return homotopy(f, g, paths, based=True)


def endpoint_path() -> HomotopyData:
    """The edge of the interval as a homotopy between the two inclusions of a point."""
    P, I = point().with_basepoint(None), interval().with_basepoint(None)
    f = CubicalMap(P, I, {"v": I.root("v0")})
    g = CubicalMap(P, I, {"v": I.root("v1")})
    return homotopy(f, g, {"v": I.root("e")}, based=False)
