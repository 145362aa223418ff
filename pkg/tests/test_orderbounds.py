import itertools
import random
from math import gcd

import pytest

from affcoinv.coxeter import KINDS, CoxeterDiagram, Monomial
from affcoinv.orderbounds import (GalleryIdentity, annihilator_from_identity, bounds_report,
                                  refined_annihilator)


def loop(exponents, n_s=1):
    return GalleryIdentity("s", "s", Monomial(*exponents), n_s, n_s)


def split_exponents(degree, rnd):
    cuts = sorted(rnd.randint(0, degree) for _ in range(2))
    return (cuts[0], cuts[1] - cuts[0], degree - cuts[1])


def brute_annihilator(q, degrees, n_s=1, coeff=3):
    """gcd of q^e - 1 over positive e = sum c_i d_i with |c_i| <= coeff."""
    g = 0
    for cs in itertools.product(range(-coeff, coeff + 1), repeat=len(degrees)):
        e = sum(c * d for c, d in zip(cs, degrees))
        if e > 0:
            g = gcd(g, q**e - 1)
    return n_s * g


def valid(kind, values):
    for qs in itertools.product(values, repeat=3):
        try:
            yield CoxeterDiagram(kind, qs)
        except ValueError:
            pass


def test_identity_examples():
    a2 = CoxeterDiagram.make("A2", 3)
    assert annihilator_from_identity(loop((1, 1, 1)), a2) == 26
    g2 = CoxeterDiagram.make("G2", 2)
    assert annihilator_from_identity(loop((1, 3, 2)), g2) == 63
    b2 = CoxeterDiagram.make("B2", 2)
    assert annihilator_from_identity(GalleryIdentity("s", "b", Monomial(2, 1, 0), 1, 1), b2) == 7
    assert annihilator_from_identity(GalleryIdentity("s", "b", Monomial(2, 1, 0), 1, 3), b2) == 23


def test_identity_errors():
    g2 = CoxeterDiagram.make("G2", 2)
    with pytest.raises(ValueError):
        annihilator_from_identity(loop((0, 0, 0)), g2)
    with pytest.raises(ValueError):
        annihilator_from_identity(GalleryIdentity("s", "a", Monomial(1, 0, 0)), g2)
    with pytest.raises(ValueError):
        refined_annihilator([], g2)


@pytest.mark.parametrize("q", range(2, 8))
def test_g2_loops_6_10(q):
    d = CoxeterDiagram.make("G2", q)
    for n_s in (1, 2, 3):
        ids = [loop((1, 3, 2), n_s), loop((2, 4, 4), n_s)]
        assert refined_annihilator(ids, d) == n_s * (q * q - 1) == brute_annihilator(q, (6, 10), n_s)


@pytest.mark.parametrize("q", range(2, 8))
def test_b2_exponents_2_3(q):
    d = CoxeterDiagram.make("B2", q)
    for n_s in (1, 2, 3):
        ids = [loop((0, 2, 0), n_s), loop((2, 1, 0), n_s)]
        assert refined_annihilator(ids, d) == n_s * (q - 1) == brute_annihilator(q, (2, 3), n_s)


def test_single_loop():
    d = CoxeterDiagram.make("A2", 5)
    assert refined_annihilator([loop((2, 2, 1))], d) == 5**5 - 1


@pytest.mark.parametrize("q", [2, 3, 4])
def test_split_refinement_equals_brute_force(q):
    rnd = random.Random(q)
    d = CoxeterDiagram.make("A2", q)
    for size in (1, 2, 3):
        for degrees in itertools.combinations(range(2, 11), size):
            ids = [loop(split_exponents(k, rnd)) for k in degrees]
            r = refined_annihilator(ids, d)
            g = 0
            for k in degrees:
                g = gcd(g, k)
            assert r == q**g - 1 == brute_annihilator(q, degrees, coeff=2)
            for ident in ids:
                assert annihilator_from_identity(ident, d) % r == 0


def test_nonsplit_refinement_divides_annihilators():
    d = CoxeterDiagram("B2affine", (2, 3, 5))
    ids = [loop((1, 2, 1)), loop((2, 2, 2)), loop((2, 1, 0))]
    r = refined_annihilator(ids, d)
    for ident in ids:
        assert annihilator_from_identity(ident, d) % r == 0


def test_bounds_examples():
    c = bounds_report(CoxeterDiagram.make("A2", 4), 1)
    assert (c.bound_thm2, c.bound_thm3, c.gcd_annihilator) == (420, 104, 15)
    assert c.words == ("s,a,b,a", "s,a,b,s,a,b")
    g = bounds_report(CoxeterDiagram.make("G2", 2), 1)
    assert g.bound_thm3 is None and g.exceptional
    a3 = bounds_report(CoxeterDiagram.make("A2", 3), 1)
    assert a3.gcd_annihilator == 8 and 8 < a3.bound_thm2 == 156
    b = bounds_report(CoxeterDiagram.make("B2", 3), 2, equal_hyperspecial=True)
    assert b.gcd_annihilator == 2 * (3 - 1)
    assert bounds_report(CoxeterDiagram.make("B2", 3), 2).gcd_annihilator == 2 * (9 - 1)


@pytest.mark.parametrize("kind", KINDS)
def test_annihilator_below_thm2_bound(kind):
    for d in valid(kind, range(2, 8)):
        for n_s in range(1, 5):
            c = bounds_report(d, n_s)
            assert c.gcd_annihilator < c.bound_thm2
            assert all(a % c.gcd_annihilator == 0 for a in c.annihilators)
