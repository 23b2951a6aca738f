import pytest

from xmodlab.actions import (PointMorphism, action_from_function, coinvariants,
                             conjugation_action, displacement, displacement_all_pairs,
                             is_perfect_action, is_trivial_action, make_action,
                             quotient_point, semidirect, trivial_action)
from xmodlab.errors import NotAHomomorphism, NotEquivariant, NotNormalized
from xmodlab.perm import (are_isomorphic, cyclic_group, direct_product, group_from_generators,
                          hom, is_normal, klein_four, normal_closure, subgroup_generated,
                          symmetric_group)

from conftest import cyc


def inversion(L, M):
    """The generator of L (order 2) inverts the cyclic group M."""
    return action_from_function(L, M, lambda l, m: m.inverse() if not l.is_identity() else m)


@pytest.fixture
def z2z3():
    return inversion(cyclic_group(2), cyclic_group(3))


def s3_on_a3(s3):
    a3 = subgroup_generated(s3, [cyc("(1 2 3)", 3)])
    return conjugation_action(s3, s3.whole, a3, L_group=s3)


class TestConstruction:
    def test_trivial(self):
        a = trivial_action(cyclic_group(2), klein_four())
        assert is_trivial_action(a)

    def test_conjugation(self, s3):
        a = s3_on_a3(s3)
        assert not a.is_trivial()
        a3 = subgroup_generated(s3, [cyc("(1 2 3)", 3)])
        with pytest.raises(NotNormalized):
            conjugation_action(s3, a3, subgroup_generated(s3, [cyc("(1 2)", 3)]))
        a = conjugation_action(s3, s3.trivial, s3.whole)
        assert a.is_trivial()

    def test_rejects_non_automorphism(self):
        z2, z4 = cyclic_group(2), cyclic_group(4)
        x = z4.generators[0]
        with pytest.raises(NotAHomomorphism):
            make_action(z2, z4, [[x * x]])

    def test_rejects_non_action(self):
        # an automorphism of order 4 cannot be the image of an element of order 2
        z2, z5 = cyclic_group(2), cyclic_group(5)
        x = z5.generators[0]
        with pytest.raises(NotAHomomorphism):
            make_action(z2, z5, [[x * x]])

    def test_act_matches_images(self, z2z3):
        t = z2z3.L.generators[0]
        for m in z2z3.M.elements:
            assert z2z3.act(t, m) == m.inverse()
            assert z2z3.automorphism(t)(m) == m.inverse()


class TestSemidirect:
    def test_inversion_gives_s3(self, z2z3):
        ext = semidirect(z2z3)
        assert ext.X.order == 6 and not ext.X.is_abelian
        assert are_isomorphic(ext.X, symmetric_group(3))

    def test_trivial_is_direct(self, s3):
        z2 = cyclic_group(2)
        ext = semidirect(trivial_action(z2, s3))
        assert are_isomorphic(ext.X, direct_product(s3, z2).group)

    def test_trivial_m(self, s3):
        one = group_from_generators(1, [])
        assert are_isomorphic(semidirect(trivial_action(s3, one)).X, s3)

    def test_split_exact(self, s3):
        ext = semidirect(s3_on_a3(s3))
        L = ext.action.L
        assert all(ext.p(ext.s(l)) == l for l in L.elements)
        assert set(ext.p.kernel.elements) == set(ext.k_image.elements)
        assert ext.X.order == 18
        assert ext.k.is_injective() and is_normal(ext.k_image)

    def test_element_order(self, z2z3):
        ext = semidirect(z2z3)
        expected = [ext.pair(m, l) for m in z2z3.M.elements for l in z2z3.L.elements]
        assert list(ext.X.elements) == expected


class TestDisplacementAndCoinvariants:
    def test_displacement(self, s3, z2z3):
        z2 = cyclic_group(2)
        assert displacement(trivial_action(z2, klein_four())).is_trivial()
        assert displacement(s3_on_a3(s3)).order == 3
        assert displacement(z2z3).order == 3

    def test_generator_form_matches_all_pairs(self, s3, z2z3):
        for a in (s3_on_a3(s3), z2z3, inversion(cyclic_group(2), cyclic_group(4))):
            assert displacement(a) == displacement_all_pairs(a)

    def test_coinvariants(self, s3):
        z2 = cyclic_group(2)
        v4 = klein_four()
        assert are_isomorphic(coinvariants(trivial_action(z2, v4)).C, v4)
        assert coinvariants(s3_on_a3(s3)).C.order == 1
        c = coinvariants(inversion(z2, cyclic_group(4)))
        assert are_isomorphic(c.C, z2)
        assert c.action.is_trivial()

    def test_perfect_actions(self, s3):
        z2 = cyclic_group(2)
        assert not is_perfect_action(trivial_action(z2, klein_four()))
        assert is_perfect_action(s3_on_a3(s3))
        assert is_perfect_action(trivial_action(s3, group_from_generators(1, [])))

    def test_perfect_iff_normal_closure(self, s3, z2z3):
        for a in (s3_on_a3(s3), z2z3, trivial_action(cyclic_group(2), cyclic_group(3))):
            ext = semidirect(a)
            full = normal_closure(ext.s_image).order == ext.X.order
            assert full == (displacement(a).order == a.M.order)


class TestPointMorphisms:
    def test_quotient_point(self):
        z2, z4 = cyclic_group(2), cyclic_group(4)
        a = inversion(z2, z4)
        x = z4.generators[0]
        pm = quotient_point(a, subgroup_generated(z4, [x * x]))
        assert pm.target.M.order == 2 and pm.target.is_trivial()
        c1, c2 = coinvariants(a), coinvariants(pm.target)
        assert pm.on_coinvariants(c1, c2).is_surjective()
        f = pm.on_carriers(semidirect(a), semidirect(pm.target))
        assert f.is_surjective()

    def test_not_equivariant(self):
        z2, z4 = cyclic_group(2), cyclic_group(4)
        a = inversion(z2, z4)
        b = trivial_action(z2, z4)
        with pytest.raises(NotEquivariant):
            PointMorphism(a, b, hom(z4, z4, list(z4.generators)))
