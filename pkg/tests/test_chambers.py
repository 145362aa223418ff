import numpy as np
import pytest

from affcoinv.chambers import (ChamberSystem, WalkState, chamber_orbits, coinvariant_model,
                               default_galleries, gallery_matrix, gallery_matrix_dfs, neighbors,
                               parse_gallery, relation_rows)
from affcoinv.coxeter import CoxeterDiagram, alpha, covolume
from affcoinv.cellcomplex import build_complex, homology
from affcoinv.exactalg import AbelianGroup, INFINITE
from affcoinv.orderbounds import bounds_report
from affcoinv.presentation import RelatorSchema, expand_schema

DEFAULT = ("s,a,b,a", "s,a,b,s,a,b")

# q = 2: relators x_j x_{j+1} x_{j+3} mod 7 (the Fano difference set {0, 1, 3})
FANO = RelatorSchema(7, ((0, 1, 3),))


def fano_presentation():
    return expand_schema(FANO, name="fano-q2")


def test_default_words():
    assert tuple(str(g) for g in default_galleries()) == DEFAULT


def test_orbit_counts(regular_q4, group_q3):
    assert len(chamber_orbits(regular_q4)) == 105 == covolume(1, CoxeterDiagram.make("A2", 4))
    assert len(chamber_orbits(group_q3)) == 52 == covolume(1, CoxeterDiagram.make("A2", 3))
    assert len(chamber_orbits(fano_presentation())) == 21 == alpha(CoxeterDiagram.make("A2", 2), "s")


def test_neighbors_example(group_q3, system_q3):
    nb = neighbors(WalkState(0, (0, 8, 6)), 0, group_q3)
    assert len(nb) == 3
    assert all(s.dtype == 1 and s.triple[0] == 8 for s in nb)
    assert WalkState(1, (8, 6, 0)) not in nb
    assert nb == system_q3.neighbors(WalkState(0, (0, 8, 6)), "s")


def test_every_panel_has_q_plus_one(fixture_presentation):
    system = ChamberSystem(fixture_presentation)
    q = fixture_presentation.q
    for t in system.triples:
        for d in range(3):
            for label in range(3):
                state = WalkState(d, t)
                nb = system.neighbors(state, label)
                assert len(nb) == q
                # crossing back returns to a panel-mate set containing the start
                for other in nb:
                    back = system.neighbors(other, label)
                    assert system.rebased(state) in {system.rebased(s) for s in back}


def test_neighbors_bad_label(system_q3):
    with pytest.raises(ValueError):
        system_q3.neighbors(WalkState(0, (0, 8, 6)), 5)
    with pytest.raises(ValueError):
        system_q3.neighbors(WalkState(0, (0, 1, 2)), 0)


def test_rebasing_consistency(system_q4):
    for t in system_q4.triples:
        i, j, k = t
        assert (j, k, i) in system_q4.index and (k, i, j) in system_q4.index
        once_twice = system_q4.rebased(WalkState(2, t))
        step = system_q4.rebased(WalkState(1, system_q4.rebased(WalkState(1, t))))
        assert once_twice == step


@pytest.mark.parametrize("word,n", [(DEFAULT[0], 81), (DEFAULT[1], 729)])
def test_gallery_matrix_q3(system_q3, word, n):
    m = gallery_matrix(system_q3, word)
    assert m.m.shape == (52, 52) and m.n_value == n
    assert m.row_sums_ok and m.col_sums_ok
    assert np.array_equal(m.m, gallery_matrix_dfs(system_q3, word))


@pytest.mark.parametrize("word,n", [(DEFAULT[0], 256), (DEFAULT[1], 4096), ("s,a,b", 64)])
def test_gallery_matrix_q4(system_q4, word, n):
    m = gallery_matrix(system_q4, word)
    assert m.m.shape == (105, 105) and m.n_value == n
    assert m.row_sums_ok and m.col_sums_ok
    assert np.all(m.m >= 0)


def test_empty_gallery_is_identity(system_q3):
    m = gallery_matrix(system_q3, "")
    assert np.array_equal(m.m.astype(int), np.eye(52, dtype=int))


def test_gallery_matrix_rejects_bad_words(system_q3):
    with pytest.raises(ValueError):
        gallery_matrix(system_q3, "a,b")
    with pytest.raises(ValueError):
        parse_gallery("s,x")
    assert parse_gallery("0,1,2") == parse_gallery("s,a,b")


def test_threads_do_not_change_counts(system_q4):
    a = gallery_matrix(system_q4, DEFAULT[1], workers=1)
    b = gallery_matrix(system_q4, DEFAULT[1], workers=4, chunk=7)
    assert np.array_equal(a.m, b.m)


def test_relation_rows():
    rows = relation_rows(np.array([[0, 2], [1, 1]], dtype=object))
    assert rows == [[1, -2], [-1, 0]]


def test_coinvariants_q3(system_q3):
    cm = coinvariant_model(system_q3)
    assert cm.ord_one == 2  # observed; q - 1 = 2 divides it and it divides 8
    assert cm.group == AbelianGroup(15, (3, 3, 39, 39, 39, 78))
    assert cm.relation_source == DEFAULT


def test_coinvariants_q4(system_q4):
    cm = coinvariant_model(system_q4)
    assert cm.ord_one == 3
    assert cm.group == AbelianGroup(44, (2, 2, 2, 2, 2, 2, 2, 6, 42, 42, 42, 126))


def test_coinvariant_certificate(fixture_presentation):
    q = fixture_presentation.q
    cm = coinvariant_model(ChamberSystem(fixture_presentation))
    annihilator = bounds_report(CoxeterDiagram.make("A2", q), 1).gcd_annihilator
    assert cm.ord_one is not INFINITE
    assert cm.ord_one % (q - 1) == 0
    assert annihilator % cm.ord_one == 0 and annihilator == q * q - 1


def test_more_relations_divide_order(system_q3):
    base = coinvariant_model(system_q3, [DEFAULT[0]])
    more = coinvariant_model(system_q3, [DEFAULT[0]], extra=["s,b,a,s,b,a"])
    assert base.ord_one % more.ord_one == 0
    full = coinvariant_model(system_q3, extra=["s,b,a,s,b,a"])
    assert coinvariant_model(system_q3).ord_one % full.ord_one == 0


def test_extra_words_must_be_sector_loops(system_q3):
    with pytest.raises(ValueError):
        coinvariant_model(system_q3, extra=["s,a"])


def test_fano_presentation_runs():
    p = fano_presentation()
    assert p.q == 2
    cm = coinvariant_model(ChamberSystem(p))
    assert cm.ord_one == 1  # [1] = 0 when q = 2
    h = homology(build_complex(p))
    assert h.euler == 3 and h.H2 == AbelianGroup(2)
