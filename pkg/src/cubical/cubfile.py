"""The ``.cub`` text format for cubical-set presentations.

::

    # circle
    cube v 0
    cube e 1
    base v
    face e 1 0 = v
    face e 1 1 = v

Face images are ``gen`` followed by dot-separated ``s<i>``, ``n<i>``, ``p<i>``
letters acting on the right.  Every face of every positive-dimensional
generator must be given exactly once.
"""

from __future__ import annotations

import re

from . import boxcat as bc
from .cset import Cube, CubePresentation, validate


class CubError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


class CubSyntaxError(CubError):
    pass


class UndefinedGenerator(CubError):
    pass


class MissingFace(CubError):
    pass


class DimensionError(CubError):
    pass


class DuplicateEntry(CubError):
    pass


class FaceIdentityError(CubError):
    def __init__(self, violations):
        self.violations = violations
        super().__init__("; ".join(str(v) for v in violations))


_NAME = r"[^\s.=#]+"
_CUBE = re.compile(rf"cube\s+({_NAME})\s+(\d+)")
_BASE = re.compile(rf"base\s+({_NAME})")
_FACE = re.compile(rf"face\s+({_NAME})\s+(\d+)\s+([01])\s*=\s*(\S+)")


def _face_cube(dims, owner, text, lineno) -> Cube:
    gen, _, rest = text.partition(".")
    if gen not in dims:
        raise UndefinedGenerator(f"unknown generator {gen!r}", lineno)
    try:
        word = bc.parse_word(rest) if rest else []
    except bc.BoxError as exc:
        raise CubSyntaxError(str(exc), lineno) from None
    if any(x.kind is bc.Kind.FACE for x in word):
        raise CubSyntaxError("face images may only use s, n and p letters", lineno)
    try:
        dom = bc.action_dom(word, dims[gen])
        op = bc.from_letters(word, dom)
    except bc.BoxError as exc:
        raise DimensionError(str(exc), lineno) from None
    if op.dom != dims[owner] - 1:
        raise DimensionError(f"{text} has dimension {op.dom}, "
                             f"a face of {owner} needs {dims[owner] - 1}", lineno)
    return Cube(gen, op)


def parse_cub(text: str, check: bool = True, name: str | None = None) -> CubePresentation:
    """Parse ``.cub`` text.  With ``check`` the face identities must hold."""
    dims: dict[str, int] = {}
    declared: dict[str, int] = {}
    base = None
    face_lines = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if m := _CUBE.fullmatch(line):
            g, n = m.group(1), int(m.group(2))
            if g in dims:
                raise DuplicateEntry(f"generator {g!r} declared twice", lineno)
            dims[g], declared[g] = n, lineno
        elif m := _BASE.fullmatch(line):
            if base is not None:
                raise DuplicateEntry("second base line", lineno)
            base = (m.group(1), lineno)
        elif m := _FACE.fullmatch(line):
            face_lines.append((lineno, m.group(1), int(m.group(2)), int(m.group(3)), m.group(4)))
        else:
            raise CubSyntaxError(f"cannot parse {line!r}", lineno)

    faces: dict[tuple[str, int, int], Cube] = {}
    for lineno, owner, i, e, image in face_lines:
        if owner not in dims:
            raise UndefinedGenerator(f"unknown generator {owner!r}", lineno)
        if not 1 <= i <= dims[owner]:
            raise DimensionError(f"{owner} has no face {i}", lineno)
        if (owner, i, e) in faces:
            raise DuplicateEntry(f"face {owner} {i} {e} given twice", lineno)
        faces[(owner, i, e)] = _face_cube(dims, owner, image, lineno)

    for g, n in dims.items():
        for i in range(1, n + 1):
            for e in (0, 1):
                if (g, i, e) not in faces:
                    raise MissingFace(f"no face {g} {i} {e}", declared[g])

    basepoint = None
    if base is not None:
        basepoint, lineno = base
        if basepoint not in dims:
            raise UndefinedGenerator(f"unknown basepoint {basepoint!r}", lineno)
        if dims[basepoint] != 0:
            raise DimensionError("basepoint must have dimension 0", lineno)
    X = CubePresentation(dims, faces, basepoint, name)
    if check:
        bad = validate(X)
        if bad:
            raise FaceIdentityError(bad)
    return X


def serialize(X: CubePresentation) -> str:
    lines = [f"# {X.name}"] if X.name else []
    lines += [f"cube {g} {n}" for g, n in X.dims.items()]
    if X.basepoint is not None:
        lines.append(f"base {X.basepoint}")
    for g, n in X.dims.items():
        for i in range(1, n + 1):
            for e in (0, 1):
                lines.append(f"face {g} {i} {e} = {X.face(g, i, e)}")
    return "\n".join(lines) + "\n"


def read_cub(path, check: bool = True) -> CubePresentation:
    with open(path, encoding="utf-8") as fh:
        return parse_cub(fh.read(), check=check)


def write_cub(path, X: CubePresentation) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize(X))

