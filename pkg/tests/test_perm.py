import pytest

from xmodlab.errors import (AmbientMismatch, EnumerationCapExceeded, NotAHomomorphism)
from xmodlab.perm import (Perm, abelian_invariants, all_subgroups, alternating_group,
                          are_isomorphic, commutator, cyclic_group, dihedral_group,
                          direct_product, group_from_generators, hom, identity_hom, is_normal,
                          klein_four, normal_closure, parse_cycles, quaternion_group,
                          quotient, subgroup_generated, symmetric_group, ternary_commutator)

from conftest import cyc, gen_group


def sub(g, *cycles):
    return subgroup_generated(g, [cyc(c, g.degree) for c in cycles])


def sign_map(s3):
    z2 = cyclic_group(2)
    x = z2.generators[0]
    return hom(s3, z2, [x, z2.identity])


class TestPerm:
    def test_composition_is_right_to_left(self):
        a, b = cyc("(1 2)", 3), cyc("(2 3)", 3)
        assert (a * b)(1) == a(b(1))

    def test_cycle_text_round_trip(self):
        p = cyc("(1 3 2)(4 5)", 5)
        assert str(p) == "(1 3 2)(4 5)"
        assert str(Perm.identity(3)) == "()"

    def test_parse_cycles_rejects_malformed(self):
        with pytest.raises(ValueError):
            parse_cycles("(1 2")

    def test_order_and_inverse(self):
        p = cyc("(1 2 3)(4 5)", 5)
        assert p.order() == 6
        assert (p * p.inverse()).is_identity()


class TestGroupFromGenerators:
    def test_s3(self, s3):
        assert s3.order == 6

    def test_trivial(self):
        assert group_from_generators(1, []).order == 1

    def test_s5(self):
        assert gen_group(5, "(1 2 3 4 5)", "(1 2)").order == 120

    def test_breadth_first_order(self, s3):
        assert s3.elements[0].is_identity()
        assert list(s3.elements[1:3]) == [cyc("(1 2)", 3), cyc("(1 2 3)", 3)]

    def test_cap(self):
        with pytest.raises(EnumerationCapExceeded):
            group_from_generators(5, [cyc("(1 2 3 4 5)", 5), cyc("(1 2)", 5)], cap=50)

    def test_env_cap(self, monkeypatch):
        monkeypatch.setenv("XMODLAB_CAP", "10")
        with pytest.raises(EnumerationCapExceeded):
            symmetric_group(4)


class TestSubgroups:
    def test_generated(self, s3):
        assert sub(s3, "(1 2 3)").order == 3
        assert subgroup_generated(s3, []).order == 1
        s4 = symmetric_group(4)
        assert sub(s4, "(1 2)(3 4)", "(1 3)(2 4)").order == 4

    def test_is_normal(self, s3):
        assert is_normal(sub(s3, "(1 2 3)"))
        assert not is_normal(sub(s3, "(1 2)"))
        assert is_normal(s3.trivial)

    def test_normal_closure(self, s3):
        assert normal_closure(sub(s3, "(1 2)")) == s3.whole
        a3 = sub(s3, "(1 2 3)")
        assert normal_closure(a3) == a3
        assert normal_closure(s3.trivial) == s3.trivial

    def test_commutator(self, s3):
        a3 = sub(s3, "(1 2 3)")
        assert commutator(a3, s3.whole) == a3
        assert commutator(s3.whole, s3.trivial).is_trivial()
        v4 = klein_four()
        assert commutator(v4.whole, v4.whole).is_trivial()

    def test_ternary(self, s3):
        a3 = sub(s3, "(1 2 3)")
        assert ternary_commutator(s3.trivial, s3.whole, s3.whole).is_trivial()
        assert ternary_commutator(a3, a3, s3.whole) <= commutator(a3, s3.whole)
        assert ternary_commutator(s3.whole, s3.whole, s3.whole) == a3

    def test_ambient_mismatch(self, s3):
        other = symmetric_group(3)
        with pytest.raises(AmbientMismatch):
            commutator(s3.whole, other.whole)

    def test_all_subgroups_counts(self, s3):
        assert len(all_subgroups(s3)) == 6
        assert len(all_subgroups(symmetric_group(4))) == 30
        assert len(all_subgroups(dihedral_group(4))) == 10


class TestHoms:
    def test_sign(self, s3):
        f = sign_map(s3)
        assert f.kernel == sub(s3, "(1 2 3)")
        assert f.image.order == 2 and f.is_surjective()

    def test_order_obstruction(self):
        z2, z3 = cyclic_group(2), cyclic_group(3)
        with pytest.raises(NotAHomomorphism):
            hom(z2, z3, [z3.generators[0]])

    def test_identity(self, s3):
        f = identity_hom(s3)
        assert f.kernel.is_trivial() and f.is_isomorphism()

    def test_composition(self, s3):
        f = sign_map(s3)
        assert identity_hom(s3).then(f) == f


class TestQuotientsAndProducts:
    def test_quotients(self, s3):
        q, f = quotient(s3, sub(s3, "(1 2 3)"))
        assert q.order == 2 and f.is_surjective()
        q, _ = quotient(s3, s3.trivial)
        assert are_isomorphic(q, s3)
        s4 = symmetric_group(4)
        q, _ = quotient(s4, sub(s4, "(1 2)(3 4)", "(1 3)(2 4)"))
        assert q.order == 6 and are_isomorphic(q, s3)

    def test_quotient_is_reproducible(self, s3):
        a, _ = quotient(s3, sub(s3, "(1 2 3)"))
        b, _ = quotient(s3, sub(s3, "(1 2 3)"))
        assert a.elements == b.elements

    def test_direct_products(self, s3):
        z2, z3 = cyclic_group(2), cyclic_group(3)
        dp = direct_product(z2, z3)
        assert dp.group.order == 6 and are_isomorphic(dp.group, cyclic_group(6))
        triv = group_from_generators(1, [])
        assert are_isomorphic(direct_product(s3, triv).group, s3)
        dp = direct_product(s3, z2)
        assert dp.group.order == 12
        for a in s3.elements:
            for b in z2.elements:
                assert dp.split(dp.pair(a, b)) == (a, b)
        assert dp.proj1(dp.inj1(s3.generators[0])) == s3.generators[0]

    def test_isomorphism(self, s3):
        assert not are_isomorphic(cyclic_group(4), klein_four())
        assert not are_isomorphic(dihedral_group(4), quaternion_group())
        assert are_isomorphic(alternating_group(3), cyclic_group(3))

    def test_abelian_invariants(self):
        assert abelian_invariants(cyclic_group(6)) == [2, 3]
        assert abelian_invariants(klein_four()) == [2, 2]
        assert abelian_invariants(group_from_generators(1, [])) == []
