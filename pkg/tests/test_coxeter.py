import itertools

import pytest

from affcoinv.coxeter import (KINDS, STANDARD_CONFIGS, CoxeterDiagram, GalleryType, Monomial, alpha,
                              base_chamber, covolume, gallery_count, gallery_distance, is_reduced,
                              minimal_gallery_type, residue_words, sector_translation,
                              sector_translation_words, walk, _config_target)

# golden words, derived once from the alcove model
GOLDEN = {
    ("A2affine", "CtoCprime"): "s,a,b,a",
    ("A2affine", "CtoCdoublePrime"): "s,a,b,s,a,b",
    ("A2affine", "CtoCprimeTwoSpecial"): "s,a",
    ("B2affine", "CtoCprime"): "s,a,b,a",
    ("B2affine", "CtoCdoublePrime"): "s,a,s,b,a,b",
    ("B2affine", "CtoCprimeTwoSpecial"): "s,a,s",
    ("G2affine", "CtoCprime"): "s,a,b,a,b,a",
    ("G2affine", "CtoCdoublePrime"): "s,a,b,a,s,b,a,b,a,b",
}


def valid_params(kind, values=range(2, 6)):
    for qs in itertools.product(values, repeat=3):
        try:
            yield CoxeterDiagram(kind, qs)
        except ValueError:
            continue


# --- alpha / covolume --------------------------------------------------------------

@pytest.mark.parametrize("kind,q,expected", [("A2", 2, 21), ("A2", 4, 105), ("G2", 2, 189)])
def test_alpha_examples(kind, q, expected):
    assert alpha(CoxeterDiagram.make(kind, q), "s") == expected


@pytest.mark.parametrize("q", range(2, 10))
def test_alpha_split_closed_forms(q):
    assert alpha(CoxeterDiagram.make("A2", q), "s") == (1 + q) * (1 + q + q * q)
    assert alpha(CoxeterDiagram.make("B2", q), "s") == (1 + q) * (1 + q + q**2 + q**3)
    assert alpha(CoxeterDiagram.make("G2", q), "s") == (1 + q) * sum(q**k for k in range(6))


def test_alpha_nonsplit_b2():
    d = CoxeterDiagram("B2affine", (2, 3, 5))
    qa, qb = 3, 5
    # dihedral group of order 8 on {a, b}: 1, a, b, ab, ba, aba, bab, abab
    assert alpha(d, "s") == 1 + qa + qb + 2 * qa * qb + qa * qa * qb + qa * qb * qb + qa * qa * qb * qb
    assert len(residue_words(d, "s")) == 8
    assert len(residue_words(d, "a")) == 4  # s and b commute


@pytest.mark.parametrize("kind,order", [("A2affine", 6), ("B2affine", 8), ("G2affine", 12)])
def test_residue_sizes(kind, order):
    assert len(residue_words(CoxeterDiagram.make(kind, 2), "s")) == order


def test_covolume_examples():
    assert covolume(1, CoxeterDiagram.make("A2", 4)) == 105
    assert covolume(1, CoxeterDiagram.make("A2", 3)) == 52
    assert covolume(2, CoxeterDiagram.make("A2", 2)) == 42
    with pytest.raises(ValueError):
        covolume(0, CoxeterDiagram.make("A2", 2))


# --- diagrams ------------------------------------------------------------------------

def test_diagram_invariants():
    assert CoxeterDiagram.make("A2", 2).special_types == ("s", "a", "b")
    assert CoxeterDiagram.make("B2", 2).special_types == ("s", "b")
    assert CoxeterDiagram.make("G2", 2).special_types == ("s",)
    with pytest.raises(ValueError):
        CoxeterDiagram.make("A2", 1)
    with pytest.raises(ValueError):
        CoxeterDiagram("A2affine", (2, 3, 2))
    with pytest.raises(ValueError):
        CoxeterDiagram("G2affine", (2, 3, 3))
    assert CoxeterDiagram("G2affine", (3, 3, 2)).q("b") == 2
    assert CoxeterDiagram.make("B2", {"s": 2, "a": 3, "b": 4}).params == (2, 3, 4)
    with pytest.raises(ValueError):
        CoxeterDiagram.make("F4", 2)


def test_gallery_type_validation():
    with pytest.raises(ValueError):
        GalleryType(("s", "x"))


# --- minimal galleries ---------------------------------------------------------------

@pytest.mark.parametrize("key,word", sorted(GOLDEN.items()))
def test_golden_minimal_galleries(key, word):
    kind, config = key
    g = minimal_gallery_type(CoxeterDiagram.make(kind, 2), config)
    assert str(g) == word
    assert g.word[0] == "s"


def test_g2_monomials_match_reported_counts():
    d = CoxeterDiagram.make("G2", 2)
    assert gallery_count(d, minimal_gallery_type(d, "CtoCprime")).exponents == (1, 3, 2)
    assert gallery_count(d, minimal_gallery_type(d, "CtoCdoublePrime")).exponents == (2, 4, 4)
    assert len(minimal_gallery_type(d, "CtoCprime")) == 6
    assert len(minimal_gallery_type(d, "CtoCdoublePrime")) == 10


def test_b2_two_special_degree_three():
    d = CoxeterDiagram.make("B2", 2)
    assert gallery_count(d, minimal_gallery_type(d, "CtoCprimeTwoSpecial")).degree == 3


def test_two_special_invalid_on_g2():
    with pytest.raises(ValueError):
        minimal_gallery_type(CoxeterDiagram.make("G2", 2), "CtoCprimeTwoSpecial")
    with pytest.raises(ValueError):
        minimal_gallery_type(CoxeterDiagram.make("G2", 2), "nonsense")


@pytest.mark.parametrize("kind", KINDS)
def test_minimal_gallery_is_shortest_and_reduced(kind):
    d = CoxeterDiagram.make(kind, 2)
    for config in STANDARD_CONFIGS:
        if config == "CtoCprimeTwoSpecial" and len(d.special_types) < 2:
            continue
        g = minimal_gallery_type(d, config)
        target = _config_target(d, config)
        assert walk(kind, g.word)[-1] == target
        assert len(g) == gallery_distance(kind, target)
        assert is_reduced(kind, g.word)


def test_walk_returns_on_double_crossing():
    c = base_chamber("A2affine")
    for t in "sab":
        assert walk("A2affine", (t, t))[-1] == c
    assert not is_reduced("A2affine", ("s", "s"))


# --- counts --------------------------------------------------------------------------

def test_gallery_count_examples():
    d = CoxeterDiagram.make("A2", 3)
    assert gallery_count(d, ()).value(d) == 1
    assert gallery_count(d, ("s", "a", "b")).value(d) == 27
    g2 = CoxeterDiagram("G2affine", (2, 2, 3))
    assert gallery_count(g2, minimal_gallery_type(g2, "CtoCprime")) == Monomial(1, 3, 2)
    assert str(Monomial(1, 3, 2)) == "q_s q_a^3 q_b^2"


@pytest.mark.parametrize("kind", KINDS)
def test_count_below_qs_alpha(kind):
    for d in valid_params(kind):
        n = gallery_count(d, minimal_gallery_type(d, "CtoCprime")).value(d)
        assert n < d.q("s") * alpha(d, "s")


@pytest.mark.parametrize("key", sorted(GOLDEN))
def test_reversal_symmetry(key):
    d = CoxeterDiagram("B2affine", (2, 3, 5)) if key[0] == "B2affine" else CoxeterDiagram.make(key[0], 3)
    g = GalleryType(tuple(GOLDEN[key].split(",")))
    assert gallery_count(d, g) == gallery_count(d, g.reversed())


# --- sector words --------------------------------------------------------------------

def test_sector_words_a2():
    words = [str(g) for g in sector_translation_words(CoxeterDiagram.make("A2", 2), 6)]
    assert words == ["s,a,b,a", "s,a,b,s,a,b", "s,b,a,s,b,a"]
    assert sector_translation("A2affine", ("s", "a", "b", "a")) is not None
    for bad in [("s", "a"), ("s", "s"), ("s", "x")]:
        with pytest.raises(ValueError):
            sector_translation("A2affine", bad)
