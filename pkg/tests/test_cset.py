import pytest

from cubical import boxcat as bc
from cubical import cset as cs
from cubical import moore as mo
from cubical.boxcat import BoxMorphism, Kind
from cubical.cset import Cube


def word(text):
    return bc.parse_word(text)


def test_point_is_valid():
    assert cs.validate(cs.point()) == []


def test_corpus_is_valid():
    for name in cs.CORPUS:
        assert cs.validate(cs.builtin(name)) == [], name


def test_broken_square_is_reported():
    X = cs.CubePresentation(
        {"v": 0, "w": 0, "a": 1, "s": 2},
        {("a", 1, 0): cs.root("v", 0), ("a", 1, 1): cs.root("w", 0),
         ("s", 1, 0): cs.root("a", 1), ("s", 1, 1): cs.root("a", 1),
         ("s", 2, 0): cs.degenerate_point("v", 1), ("s", 2, 1): cs.degenerate_point("v", 1)})
    bad = cs.validate(X)
    assert bad
    assert all(v.gen == "s" for v in bad)
    assert any(v.first == (1, 0) and v.second == (1, 1) for v in bad)


def test_presentation_needs_every_face():
    with pytest.raises(cs.PresentationError):
        cs.CubePresentation({"v": 0, "e": 1}, {("e", 1, 0): cs.root("v", 0)})


def test_presentation_checks_face_dimension():
    with pytest.raises(cs.PresentationError):
        cs.CubePresentation({"v": 0, "e": 1},
                            {("e", 1, 0): cs.root("e", 1), ("e", 1, 1): cs.root("v", 0)})


def test_apply_degeneracy_then_face():
    I = cs.interval()
    e = I.root("e")
    assert cs.apply(I, e, word("s1.f1:0")) == e


def test_apply_face_reads_table():
    I = cs.interval()
    assert cs.apply(I, I.root("e"), word("f1:0")) == I.root("v0")
    C = cs.circle()
    assert cs.apply(C, C.root("e"), word("f1:0")) == C.root("v")


def test_apply_on_the_two_sphere():
    S = cs.sphere(2)
    c = cs.apply(S, S.root("s"), word("p1.f3:0"))
    assert c.gen == "v"
    assert c.op.faces == () and c.op.connections == () and len(c.op.degeneracies) == 2
    assert c == cs.degenerate_point("v", 2)


def test_apply_rejects_bad_index():
    I = cs.interval()
    with pytest.raises(bc.IndexOutOfRange):
        cs.apply(I, I.root("e"), word("f3:0"))


def test_action_law():
    T = cs.torus()
    c = T.root("e*e")
    w1, w2 = word("n1.s2"), word("f3:1.p1")
    assert cs.apply(T, c, w1 + w2) == cs.apply(T, cs.apply(T, c, w1), w2)


def test_cubes_of_interval():
    I = cs.interval()
    got = {str(c) for c in cs.cubes(I, 1)}
    assert got == {"e", "v0.s1", "v1.s1"}


def test_cubes_positive_connections_only():
    I = cs.interval()
    got = cs.cubes(I, 2, {Kind.POS})
    assert got == [Cube("e", BoxMorphism(2, 1, (), ((1, 1),), ()))]


def test_cubes_of_point():
    for k in range(5):
        assert len(cs.cubes(cs.point(), k)) == 1


def test_cubes_count_matches_enumeration():
    K = cs.klein()
    for k in range(4):
        expected = sum(len(bc.enumerate_morphisms(k, n, bc.SURJECTIVE_KINDS))
                       for n in K.dims.values() if n <= k)
        assert len(cs.cubes(K, k)) == expected


def test_product_with_point():
    P = cs.product(cs.point(), cs.circle())
    assert list(P.dims) == ["v*v", "v*e"]
    assert P.face("v*e", 1, 0) == cs.root("v*v", 0)


def test_product_of_intervals():
    P = cs.product(cs.interval(), cs.interval())
    dims = list(P.dims.values())
    assert dims.count(2) == 1 and dims.count(1) == 4 and dims.count(0) == 4
    assert P.face("e*e", 2, 0) == cs.root("e*v0", 1)
    assert P.face("e*e", 1, 1) == cs.root("v1*e", 1)
    assert cs.validate(P) == []


def test_product_identification():
    # (x s_{m+1}, y) and (x, y s_1) are one cube
    I = cs.interval()
    P = cs.product(I, I)
    x, y = I.root("e"), I.root("e")
    left = cs.product_cube(cs.apply(I, x, word("s2")), y)
    right = cs.product_cube(x, cs.apply(I, y, word("s1")))
    assert left == right


def test_product_is_associative_up_to_names():
    A, B, C = cs.circle(), cs.interval(), cs.circle()
    L, R = cs.product(cs.product(A, B), C), cs.product(A, cs.product(B, C))
    assert list(L.dims.values()) == list(R.dims.values())
    names = dict(zip(L.dims, R.dims))
    for (g, i, e), c in L.faces.items():
        assert R.face(names[g], i, e) == Cube(names[c.gen], c.op)


def test_torus_homology():
    T = cs.product(cs.circle(), cs.circle())
    assert str(mo.reduced_homology(T, "sn", None, 1)) == "Z^2"


def test_pi0():
    assert len(cs.pi0(cs.two_points())) == 2
    assert len(cs.pi0(cs.interval())) == 1
    X = cs.product(cs.two_points(), cs.interval())
    assert sorted(map(sorted, cs.pi0(X))) == [["a*v0", "a*v1"], ["b*v0", "b*v1"]]


def test_identity_and_collapse_maps():
    for name in cs.CORPUS:
        X = cs.builtin(name)
        assert cs.validate_map(cs.identity_map(X)) == []
    F = cs.constant_map(cs.interval(), cs.point(), "v")
    assert cs.validate_map(F) == []


def test_map_with_wrong_endpoint():
    I = cs.interval()
    F = cs.CubicalMap(I, I, {"v0": I.root("v1"), "v1": I.root("v1"), "e": I.root("e")})
    bad = cs.validate_map(F)
    assert any("(e, 1, 0)" in msg for msg in bad)


def test_map_must_keep_basepoint():
    I = cs.interval()
    F = cs.CubicalMap(I, I, {"v0": I.root("v1"), "v1": I.root("v1"),
                             "e": cs.degenerate_point("v1", 1)})
    assert any("basepoint" in msg for msg in cs.validate_map(F))


def test_builtin_names():
    assert cs.validate(cs.builtin("circle")) == []
    S = cs.builtin("sphere(2)")
    assert {S.face("s", i, e) for i in (1, 2) for e in (0, 1)} == {cs.parse_cube(S, "v.s1")}
    assert cs.builtin("sphere3") == cs.sphere(3)
    with pytest.raises(cs.UnknownName):
        cs.builtin("moebius")


def test_klein_homology():
    assert str(mo.reduced_homology(cs.builtin("klein"), "sn", None, 1)) == "Z + Z/2"


def test_cube_text_round_trip():
    T = cs.torus()
    c = cs.parse_cube(T, "e*e.n1.s2")
    assert cs.parse_cube(T, str(c)) == c
