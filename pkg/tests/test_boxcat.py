import itertools
import random
from math import comb

import pytest

from cubical import boxcat as bc
from cubical.boxcat import BoxMorphism, Kind

import oracles

KINDS = {"f": Kind.FACE, "s": Kind.DEGEN, "n": Kind.NEG, "p": Kind.POS}


def as_oracle(letters):
    return [(x.kind.value, x.index, x.eps) for x in letters]


def random_word(rng, dom, length, cap=6):
    word, dim = [], dom
    for _ in range(length):
        options = oracles.legal_letters(dim, "fsnp", cap)
        if not options:
            break
        kind, i, e = rng.choice(options)
        letter = {"f": lambda: bc.face(i, e), "s": lambda: bc.degen(i),
                  "n": lambda: bc.conn(i, 0), "p": lambda: bc.conn(i, 1)}[kind]()
        word.append(letter)
        dim = bc.step_dims(letter, dim)
    return word


def test_identity():
    f = bc.identity(0)
    assert (f.dom, f.cod, f.faces, f.connections, f.degeneracies) == (0, 0, (), (), ())
    assert bc.evaluate(bc.identity(3), (0, 1, 1)) == (0, 1, 1)


def test_identity_is_unit():
    f = bc.from_word([bc.conn(1, 0), bc.face(2, 1)], 2)
    assert bc.compose(bc.identity(2), f) == f
    assert bc.compose(f, bc.identity(f.cod)) == f


def test_from_word_face_then_degeneracy():
    assert bc.from_word([bc.face(1, 0), bc.degen(1)], 0) == bc.identity(0)


def test_from_word_face_then_other_connection():
    # the left side has domain [1]^1; it collapses to the face of a degeneracy
    f = bc.from_word([bc.face(1, 1), bc.conn(1, 0)], 1)
    assert (f.dom, f.cod) == (1, 1)
    assert f.faces == ((1, 1),) and f.degeneracies == (1,) and f.connections == ()
    assert str(f) == "s1.f1:1"


def test_from_word_face_then_connection_same_sign_below():
    # x d_{2,0} then n1 on [1]^1: max(x, 0) = x
    assert bc.from_word([bc.face(2, 0), bc.conn(1, 0)], 1) == bc.identity(1)


def test_from_word_connections_stack():
    f = bc.from_word([bc.conn(1, 0), bc.conn(1, 0)], 3)
    assert f.connections == ((1, 0), (2, 0))
    assert (f.dom, f.cod) == (3, 1)


def test_from_word_rejects_bad_index():
    with pytest.raises(bc.IndexOutOfRange):
        bc.from_word([bc.degen(3)], 2)
    with pytest.raises(bc.IndexOutOfRange):
        bc.from_word([bc.conn(2, 0)], 2)
    with pytest.raises(bc.IndexOutOfRange):
        bc.from_word([bc.face(3, 0)], 1)


def test_compose_degeneracy_then_face():
    f = bc.compose(bc.from_word([bc.degen(1)], 1), bc.from_word([bc.face(1, 0)], 0))
    assert [bc.evaluate(f, (x,)) for x in (0, 1)] == [(0,), (0,)]


def test_compose_dimension_mismatch():
    with pytest.raises(bc.DimensionMismatch):
        bc.compose(bc.identity(2), bc.identity(3))


def test_associativity_spot_check():
    rng = random.Random(7)
    for _ in range(50):
        d = rng.randint(0, 4)
        w1 = random_word(rng, d, rng.randint(0, 4))
        f = bc.from_word(w1, d)
        w2 = random_word(rng, f.cod, rng.randint(0, 4))
        g = bc.from_word(w2, f.cod)
        w3 = random_word(rng, g.cod, rng.randint(0, 4))
        h = bc.from_word(w3, g.cod)
        assert bc.compose(bc.compose(f, g), h) == bc.compose(f, bc.compose(g, h))
        assert bc.graph(bc.compose(f, g)) == oracles.table(as_oracle(w1 + w2), f.dom)


def test_evaluate_connections():
    assert bc.evaluate(bc.from_word([bc.conn(1, 0)], 2), (0, 1)) == (1,)
    assert bc.evaluate(bc.from_word([bc.conn(1, 1)], 2), (0, 1)) == (0,)


def test_evaluate_degeneracy_all_vertices():
    s2 = bc.from_word([bc.degen(2)], 3)
    for x in itertools.product((0, 1), repeat=3):
        assert bc.evaluate(s2, x) == (x[0], x[2])


def test_evaluate_face():
    assert bc.evaluate(bc.from_word([bc.face(2, 1)], 1), (0,)) == (0, 1)


def test_evaluate_length_mismatch():
    with pytest.raises(bc.LengthMismatch):
        bc.evaluate(bc.identity(2), (0,))


def test_enumerate_negative_connections():
    maps = bc.enumerate_morphisms(3, 2, {Kind.NEG})
    assert len(maps) == 2
    assert all(m.kinds() <= {Kind.NEG} for m in maps)


def test_enumerate_nothing_is_identity():
    for n in range(4):
        assert bc.enumerate_morphisms(n, n, set()) == [bc.identity(n)]
        assert bc.enumerate_morphisms(n + 1, n, set()) == []


@pytest.mark.parametrize("n,m,kinds", [
    (4, 2, "sn"), (3, 1, "snp"), (2, 3, "f"), (3, 3, "fsnp"), (4, 1, "p"), (2, 2, "fsnp"),
])
def test_enumerate_matches_brute_force(n, m, kinds):
    tool = bc.enumerate_morphisms(n, m, {KINDS[k] for k in kinds})
    assert len(set(tool)) == len(tool)
    assert {bc.graph(f) for f in tool} == oracles.bfs_maps(n, m, kinds)


def test_frozen_counts():
    # values from the brute-force search in oracles.bfs_maps
    assert len(bc.enumerate_morphisms(4, 2)) == 290
    assert len(bc.enumerate_morphisms(4, 2, {Kind.DEGEN, Kind.NEG})) == 17
    assert len(bc.enumerate_morphisms(5, 2, {Kind.DEGEN, Kind.NEG})) == 49
    assert len(bc.enumerate_morphisms(4, 2, bc.SURJECTIVE_KINDS)) == 38
    assert len(bc.enumerate_morphisms(4, 1, bc.SURJECTIVE_KINDS)) == 62


def test_count_closed_form_examples():
    assert bc.count_closed_form(3, 2, "gm") == 2
    for n in range(1, 7):
        assert bc.count_closed_form(n, n, "gm") == 1
    assert bc.count_closed_form(4, 2, "sgm") == len(bc.enumerate_morphisms(4, 2, {Kind.DEGEN, Kind.NEG}))


def test_count_closed_form_sgm_agrees_with_enumeration():
    for n in range(1, 7):
        for i in range(1, n + 1):
            assert bc.count_closed_form(n, i, "sgm") == len(
                bc.enumerate_morphisms(n, i, {Kind.DEGEN, Kind.NEG})), (n, i)


def test_count_closed_form_range():
    with pytest.raises(bc.BoxError):
        bc.count_closed_form(3, 0, "gm")
    with pytest.raises(bc.BoxError):
        bc.count_closed_form(3, 4, "sgm")


def test_gm_formula_small():
    for n in range(1, 6):
        for i in range(1, n + 1):
            assert len(bc.enumerate_morphisms(n, i, {Kind.NEG})) == comb(n - 1, n - i)


def test_text_syntax_round_trip():
    word = bc.parse_word("s1.n2.f3:1.p1")
    assert bc.format_word(word) == "s1.n2.f3:1.p1"
    assert bc.parse_word("id") == []
    with pytest.raises(bc.BoxError):
        bc.parse_letter("q1")
    with pytest.raises(bc.BoxError):
        bc.parse_letter("f1")


def test_standard_form_string_reparses():
    f = bc.from_word(bc.parse_word("s2.n1.f1:0.f3:1"), 3)
    assert bc.from_word(bc.parse_word(str(f)), f.dom) == f


def test_action_order_and_point_order_agree():
    w = bc.parse_word("n1.f2:1")
    f = bc.from_word(w, 2)
    assert bc.from_letters(w[::-1], 2) == f
    assert bc.action_dom(w[::-1], f.cod) == f.dom


def test_factors_through():
    s1 = bc.from_word([bc.degen(1)], 2)
    assert bc.factors_through(s1, bc.degen(1))
    assert not bc.factors_through(s1, bc.degen(2))
    # max(min(x1, x2), x3) does not factor through either max
    f = bc.from_word(bc.parse_word("p1.n1"), 3)
    assert not bc.factors_through(f, bc.conn(1, 0))
    assert not bc.factors_through(f, bc.conn(2, 0))
    assert bc.factors_through(f, bc.conn(1, 1))


def test_tensor_evaluates_blockwise():
    f = bc.from_word([bc.conn(1, 0)], 2)
    g = bc.from_word([bc.face(1, 1)], 1)
    t = bc.tensor(f, g)
    for x in itertools.product((0, 1), repeat=3):
        assert bc.evaluate(t, x) == bc.evaluate(f, x[:2]) + bc.evaluate(g, x[2:])


def test_standard_form_is_frozen_and_ordered():
    f = BoxMorphism(2, 1, (), ((1, 0),), ())
    with pytest.raises(AttributeError):
        f.dom = 3
    assert sorted([bc.identity(1), f]) == sorted([f, bc.identity(1)])
