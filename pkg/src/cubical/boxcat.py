"""Morphisms of the box category with both connections.

A morphism ``[1]^n -> [1]^m`` is stored in its unique standard form

    (d_{c1,e1} ... d_{cr,er}) (g_{b1,e1} ... g_{bq,eq}) (s_{a1} ... s_{ap})

written as a composite of functions (the rightmost letter touches a vertex
first), with ``a`` strictly increasing, ``b`` non-decreasing (strictly when
neighbouring signs agree) and ``c`` strictly decreasing.

Two orders for words of letters are used in this package:

* *point order* -- the letters in the order they are applied to a vertex.
  ``from_word``, ``compose`` and the ``normalize`` command use this order.
* *action order* -- the letters in the order they act on a cube from the
  right (``x.s1.n2``).  This is the written order of the composite above and
  is what :func:`cubical.cset.apply` and ``.cub`` face lines use.

Normalization is a rewriting system built from the cubical identities.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from math import comb
from typing import Iterable, NamedTuple, Sequence


class Kind(enum.Enum):
    FACE = "f"
    DEGEN = "s"
    NEG = "n"
    POS = "p"


ALL_KINDS = frozenset(Kind)
SURJECTIVE_KINDS = frozenset({Kind.DEGEN, Kind.NEG, Kind.POS})


class BoxError(ValueError):
    pass


class IndexOutOfRange(BoxError):
    pass


class DimensionMismatch(BoxError):
    pass


class LengthMismatch(BoxError):
    pass


class Letter(NamedTuple):
    """One generator.  ``eps`` is the face sign, or 0/1 for NEG/POS connections."""

    kind: Kind
    index: int
    eps: int = 0

    def __str__(self):
        if self.kind is Kind.FACE:
            return f"f{self.index}:{self.eps}"
        return f"{self.kind.value}{self.index}"

    @property
    def is_connection(self):
        return self.kind is Kind.NEG or self.kind is Kind.POS


def face(i: int, eps: int) -> Letter:
    if eps not in (0, 1):
        raise BoxError(f"face sign must be 0 or 1, got {eps}")
    return Letter(Kind.FACE, i, eps)


def degen(i: int) -> Letter:
    return Letter(Kind.DEGEN, i, 0)


def conn(i: int, eps: int) -> Letter:
    """``conn(i, 0)`` is the negative (max) connection, ``conn(i, 1)`` the positive (min) one."""
    if eps not in (0, 1):
        raise BoxError(f"connection sign must be 0 or 1, got {eps}")
    return Letter(Kind.POS if eps else Kind.NEG, i, eps)


def parse_letter(token: str) -> Letter:
    """Parse ``f<i>:<e>``, ``s<i>``, ``n<i>`` or ``p<i>``."""
    token = token.strip()
    if not token:
        raise BoxError("empty letter")
    head, rest = token[0], token[1:]
    try:
        if head == "f":
            idx, _, eps = rest.partition(":")
            return face(int(idx), int(eps))
        if head == "s":
            return degen(int(rest))
        if head == "n":
            return conn(int(rest), 0)
        if head == "p":
            return conn(int(rest), 1)
    except ValueError as exc:
        raise BoxError(f"bad letter {token!r}") from exc
    raise BoxError(f"bad letter {token!r}")


def parse_word(text: str) -> list[Letter]:
    text = text.strip()
    if text in ("", "id"):
        return []
    return [parse_letter(tok) for tok in text.split(".")]


def format_word(letters: Iterable[Letter]) -> str:
    letters = list(letters)
    return ".".join(str(x) for x in letters) if letters else "id"


def step_dims(letter: Letter, dom: int) -> int:
    """Codomain dimension of ``letter`` applied to vertices of ``[1]^dom``.

    Raises IndexOutOfRange when the index is illegal there.
    """
    i = letter.index
    if letter.kind is Kind.FACE:
        n = dom + 1
        if not 1 <= i <= n:
            raise IndexOutOfRange(f"{letter} needs 1 <= i <= {n}")
        return n
    if letter.kind is Kind.DEGEN:
        if not 1 <= i <= dom:
            raise IndexOutOfRange(f"{letter} on [1]^{dom} needs 1 <= i <= {dom}")
        return dom - 1
    if not 1 <= i <= dom - 1:
        raise IndexOutOfRange(f"{letter} on [1]^{dom} needs 1 <= i <= {dom - 1}")
    return dom - 1


def apply_letter(letter: Letter, x: Sequence[int]) -> tuple[int, ...]:
    i = letter.index - 1
    x = tuple(x)
    if letter.kind is Kind.FACE:
        return x[:i] + (letter.eps,) + x[i:]
    if letter.kind is Kind.DEGEN:
        return x[:i] + x[i + 1:]
    op = max if letter.kind is Kind.NEG else min
    return x[:i] + (op(x[i], x[i + 1]),) + x[i + 2:]


# -- rewriting ---------------------------------------------------------------

def _rewrite(x: Letter, y: Letter) -> list[Letter] | None:
    """Rewrite the composite ``x o y`` (``y`` touches vertices first).

    Returns None when the pair is already in standard order.
    """
    if y.kind is Kind.FACE:
        i, e = y.index, y.eps
        j = x.index
        if x.kind is Kind.FACE:
            if j <= i:
                return [face(i + 1, e), face(j, x.eps)]
            return None
        if x.kind is Kind.DEGEN:
            if j < i:
                return [face(i - 1, e), degen(j)]
            if j == i:
                return []
            return [face(i, e), degen(j - 1)]
        if j < i - 1:
            return [face(i - 1, e), x]
        if j == i - 1 or j == i:
            if e == x.eps:
                return []
            # the inserted constant absorbs the merged coordinate
            return [face(j, e), degen(j)]
        return [face(i, e), conn(j - 1, x.eps)]

    if y.is_connection:
        i = y.index
        j = x.index
        if x.kind is Kind.DEGEN:
            if j < i:
                return [conn(i - 1, y.eps), degen(j)]
            if j == i:
                return [degen(i), degen(i)]
            return [y, degen(j + 1)]
        if x.is_connection:
            if j > i:
                return [y, conn(j + 1, x.eps)]
            if j == i and x.eps == y.eps:
                return [y, conn(i + 1, y.eps)]
        return None

    # y is a degeneracy
    if x.kind is Kind.DEGEN and x.index >= y.index:
        return [y, degen(x.index + 1)]
    return None


def normalize_letters(letters: Sequence[Letter]) -> list[Letter]:
    """Standard form of a composite given in written (action) order."""
    word = list(letters)
    k = 0
    while k < len(word) - 1:
        rep = _rewrite(word[k], word[k + 1])
        if rep is None:
            k += 1
            continue
        word[k:k + 2] = rep
        k = max(k - 1, 0)
    return word


# -- morphisms ----------------------------------------------------------------

@dataclass(frozen=True, order=True)
class BoxMorphism:
    """A morphism ``[1]^dom -> [1]^cod`` in standard form.

    ``faces`` holds ``(c, eps)`` pairs, ``connections`` holds ``(b, eps)``
    pairs and ``degeneracies`` holds indices, each block in written order.
    Build instances with :func:`from_word`, :func:`from_letters` or
    :func:`identity` rather than directly.
    """

    dom: int
    cod: int
    faces: tuple[tuple[int, int], ...] = ()
    connections: tuple[tuple[int, int], ...] = ()
    degeneracies: tuple[int, ...] = ()

    def letters(self) -> list[Letter]:
        """Written (action) order: faces first, degeneracies last."""
        return ([face(c, e) for c, e in self.faces]
                + [conn(b, e) for b, e in self.connections]
                + [degen(a) for a in self.degeneracies])

    def word(self) -> list[Letter]:
        """Point order, suitable for :func:`from_word`."""
        return self.letters()[::-1]

    @property
    def is_identity(self):
        return not (self.faces or self.connections or self.degeneracies)

    @property
    def is_surjective(self):
        return not self.faces

    def kinds(self) -> set[Kind]:
        return {x.kind for x in self.letters()}

    def __str__(self):
        return format_word(self.word())

    def __call__(self, x):
        return evaluate(self, x)


def identity(n: int) -> BoxMorphism:
    if n < 0:
        raise BoxError("dimension must be non-negative")
    return BoxMorphism(n, n)


def _check_standard(letters: list[Letter]) -> None:
    kinds_order = [0 if x.kind is Kind.FACE else 1 if x.is_connection else 2
                   for x in letters]
    assert kinds_order == sorted(kinds_order), letters


def from_letters(letters: Sequence[Letter], dom: int) -> BoxMorphism:
    """Standard form of a composite given in written (action) order.

    ``dom`` is the dimension the rightmost letter is applied to.
    """
    return from_word(list(letters)[::-1], dom)


def from_word(letters: Sequence[Letter], dom: int) -> BoxMorphism:
    """Standard form of the composite of ``letters`` applied to vertices left to right."""
    if dom < 0:
        raise BoxError("dimension must be non-negative")
    dim = dom
    for x in letters:
        dim = step_dims(x, dim)
    std = normalize_letters(list(letters)[::-1])
    _check_standard(std)
    return BoxMorphism(
        dom, dim,
        tuple((x.index, x.eps) for x in std if x.kind is Kind.FACE),
        tuple((x.index, x.eps) for x in std if x.is_connection),
        tuple(x.index for x in std if x.kind is Kind.DEGEN),
    )


def action_dom(letters: Sequence[Letter], cod: int) -> int:
    """Domain dimension of a written-order composite whose leftmost letter lands in ``[1]^cod``."""
    dim = cod
    for x in letters:
        i = x.index
        if x.kind is Kind.FACE:
            if not 1 <= i <= dim:
                raise IndexOutOfRange(f"{x} acting on a {dim}-cube needs 1 <= i <= {dim}")
            dim -= 1
        elif x.kind is Kind.DEGEN:
            if not 1 <= i <= dim + 1:
                raise IndexOutOfRange(f"{x} acting on a {dim}-cube needs 1 <= i <= {dim + 1}")
            dim += 1
        else:
            if not 1 <= i <= dim:
                raise IndexOutOfRange(f"{x} acting on a {dim}-cube needs 1 <= i <= {dim}")
            dim += 1
    return dim


def compose(f: BoxMorphism, g: BoxMorphism) -> BoxMorphism:
    """The composite "f, then g" (``g o f`` as functions)."""
    if f.cod != g.dom:
        raise DimensionMismatch(f"cannot compose [1]^{f.dom}->[1]^{f.cod} "
                                f"with [1]^{g.dom}->[1]^{g.cod}")
    return from_word(f.word() + g.word(), f.dom)


def section(letter: Letter, dom: int) -> BoxMorphism:
    """A face map ``s`` with ``compose(s, letter) = id``, ``letter`` starting at ``dom``."""
    if letter.kind is Kind.DEGEN:
        s = face(letter.index, 0)
    elif letter.is_connection:
        s = face(letter.index + 1, letter.eps)
    else:
        raise BoxError("only degeneracies and connections have sections")
    return from_word([s], step_dims(letter, dom))


def factors_through(f: BoxMorphism, letter: Letter) -> bool:
    """True if ``f = compose(letter, g)`` for some ``g`` (the letter applied first)."""
    try:
        lam = from_word([letter], f.dom)
    except BoxError:
        return False
    return compose(lam, compose(section(letter, f.dom), f)) == f


def evaluate(f: BoxMorphism, x: Sequence[int]) -> tuple[int, ...]:
    if len(x) != f.dom:
        raise LengthMismatch(f"expected a vertex of length {f.dom}, got {len(x)}")
    v = tuple(x)
    for letter in f.word():
        v = apply_letter(letter, v)
    return v


def evaluate_word(letters: Sequence[Letter], x: Sequence[int]) -> tuple[int, ...]:
    """Letter-by-letter evaluation in point order, no normalization."""
    v = tuple(x)
    for letter in letters:
        v = apply_letter(letter, v)
    return v


def graph(f: BoxMorphism) -> tuple[tuple[int, ...], ...]:
    """Values of ``f`` on all vertices, in lexicographic vertex order."""
    return tuple(evaluate(f, v) for v in itertools.product((0, 1), repeat=f.dom))


def shift(f: BoxMorphism, k: int, extra: int = 0) -> BoxMorphism:
    """``id_k (x) f (x) id_extra``: act by ``f`` on a block of coordinates."""
    return BoxMorphism(
        f.dom + k + extra, f.cod + k + extra,
        tuple((c + k, e) for c, e in f.faces),
        tuple((b + k, e) for b, e in f.connections),
        tuple(a + k for a in f.degeneracies),
    )


def tensor(f: BoxMorphism, g: BoxMorphism) -> BoxMorphism:
    """Product map ``f x g`` acting on the first ``f.dom`` and last ``g.dom`` coordinates."""
    first = shift(f, 0, g.dom)
    second = shift(g, f.cod)
    return compose(first, second)


# -- enumeration ---------------------------------------------------------------

def _connection_blocks(d: int, q: int, signs: Sequence[int]):
    """Non-decreasing ``(b, eps)`` sequences of length q legal on ``[1]^d``."""
    # b_k is applied at dimension d - (q - k); it must be <= d - (q - k) - 1
    def rec(prefix):
        k = len(prefix)
        if k == q:
            yield tuple(prefix)
            return
        bound = d - (q - (k + 1)) - 1
        lo = prefix[-1][0] if prefix else 1
        for b in range(lo, bound + 1):
            for e in signs:
                if prefix and b == prefix[-1][0] and e == prefix[-1][1]:
                    continue
                prefix.append((b, e))
                yield from rec(prefix)
                prefix.pop()
    yield from rec([])


def enumerate_morphisms(n: int, m: int, kinds: Iterable[Kind] = ALL_KINDS) -> list[BoxMorphism]:
    """All standard forms ``[1]^n -> [1]^m`` built from the given kinds, sorted."""
    kinds = frozenset(kinds)
    signs = [e for e, k in ((0, Kind.NEG), (1, Kind.POS)) if k in kinds]
    out = []
    p_range = range(n + 1) if Kind.DEGEN in kinds else (0,)
    for p in p_range:
        d = n - p
        q_range = range(max(d, 1)) if signs else (0,)
        for q in q_range:
            e = d - q
            r = m - e
            if r < 0 or (r > 0 and Kind.FACE not in kinds):
                continue
            for degs in itertools.combinations(range(1, n + 1), p):
                for conns in _connection_blocks(d, q, signs):
                    for faces in itertools.combinations(range(m, 0, -1), r):
                        for eps in itertools.product((0, 1), repeat=r):
                            out.append(BoxMorphism(
                                n, m, tuple(zip(faces, eps)), conns, degs))
    out.sort()
    return out


class CountClass(enum.Enum):
    NEG_ONLY = "gm"
    DEGEN_AND_NEG = "sgm"


def count_closed_form(n: int, i: int, cls: CountClass | str) -> int:
    """Closed-form count of maps ``[1]^n -> [1]^i`` of a given class.

    ``gm``: negative connections only, ``C(n-1, n-i)``.
    ``sgm``: degeneracies and negative connections,
    ``sum_{j=0}^{n-i} C(n, j) C(n-j-1, n-j-i)``.
    """
    cls = CountClass(cls)
    if not 1 <= i <= n:
        raise BoxError("need 1 <= i <= n")
    if cls is CountClass.NEG_ONLY:
        return comb(n - 1, n - i)
    return sum(comb(n, j) * comb(n - j - 1, n - j - i) for j in range(n - i + 1))
