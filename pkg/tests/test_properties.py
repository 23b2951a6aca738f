"""Property tests over random elements and subgroups of small groups."""
from math import gcd

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from xmodlab.actions import (action_from_function, displacement, displacement_all_pairs,
                             semidirect, trivial_action)
from xmodlab.errors import NotAHomomorphism
from xmodlab.perm import (Perm, commutator, cyclic_group, dihedral_group, hom, is_normal, join,
                          normal_closure, quaternion_group, quotient, subgroup_generated,
                          symmetric_group, ternary_commutator)
from xmodlab.tensor import abelian_tensor_order, tensor
from xmodlab.words import higgins_oracle_binary
from xmodlab.xmod import zero_xmod

GROUPS = [symmetric_group(3), symmetric_group(4), dihedral_group(4), quaternion_group(),
          dihedral_group(6), cyclic_group(6)]
SMALL = [g for g in GROUPS if g.order <= 8]

settings.register_profile("xmodlab", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("xmodlab")


@st.composite
def group_and_subgroups(draw, count, groups=GROUPS):
    g = draw(st.sampled_from(groups))
    subs = []
    for _ in range(count):
        seeds = draw(st.lists(st.sampled_from(g.elements), max_size=2))
        subs.append(subgroup_generated(g, seeds))
    return g, subs


perms5 = st.permutations(range(5)).map(Perm)


@given(perms5, perms5, perms5)
def test_composition_associative(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert (a * a.inverse()).is_identity()
    assert Perm.from_cycles(str(a), 5) == a


@given(group_and_subgroups(2))
def test_commutator_symmetric_and_normal_in_join(data):
    g, (k, m) = data
    c = commutator(k, m)
    assert c == commutator(m, k)
    assert c <= join(k, m)


@given(group_and_subgroups(3))
def test_commutator_monotone(data):
    g, (k1, k2, m) = data
    small = join(k1)
    big = join(k1, k2)
    assert commutator(small, m) <= commutator(big, m)


@given(group_and_subgroups(1))
def test_normality_and_closure(data):
    g, (k,) = data
    assert is_normal(k) == (commutator(k, g.whole) <= k)
    assert normal_closure(k) == join(k, commutator(k, g.whole))


@given(group_and_subgroups(3))
def test_join_decomposition(data):
    g, (k1, k2, k3) = data
    lhs = commutator(k1, join(k2, k3))
    rhs = join(commutator(k1, k2), commutator(k1, k3), ternary_commutator(k1, k2, k3))
    assert lhs == rhs


@given(group_and_subgroups(3))
def test_ternary_bounded_by_binary(data):
    g, (k1, k2, k3) = data
    assert ternary_commutator(k1, k1, k2) <= commutator(k1, k2)
    t = ternary_commutator(k1, k2, k3)
    assert t == ternary_commutator(k2, k1, k3) == ternary_commutator(k3, k2, k1)


@given(group_and_subgroups(3))
def test_image_under_quotient(data):
    g, (n, k1, k2) = data
    n = normal_closure(n)
    _, f = quotient(g, n)
    assert f.image_of(commutator(k1, k2)) == commutator(f.image_of(k1), f.image_of(k2))


@given(group_and_subgroups(2, SMALL))
def test_binary_oracle_matches(data):
    g, (k, m) = data
    assert higgins_oracle_binary(k, m, max_len=6).subgroup == commutator(k, m)


@given(st.integers(1, 12), st.integers(1, 12), st.integers(0, 11))
def test_graph_validation(n, m, img):
    zn, zm = cyclic_group(n), cyclic_group(m)
    target = zm.elements[img % m]
    ok = n == 1 or n % target.order() == 0
    try:
        hom(zn, zm, [target] if zn.generators else [])
        assert ok
    except NotAHomomorphism:
        assert not ok


@given(st.integers(2, 10), st.integers(1, 9))
def test_power_actions(n, k):
    """Z2 acting on Zn by a power map that squares to the identity."""
    if gcd(n, k) != 1 or (k * k) % n != 1 % n:
        return
    z2, zn = cyclic_group(2), cyclic_group(n)
    a = action_from_function(z2, zn, lambda l, m: m if l.is_identity() else m ** k)
    assert displacement(a) == displacement_all_pairs(a)
    ext = semidirect(a)
    assert ext.X.order == 2 * n
    assert all(ext.p(ext.s(l)) == l for l in z2.elements)


@given(st.integers(1, 6), st.integers(1, 6))
def test_cyclic_tensor_is_gcd(a, b):
    za, zb = cyclic_group(a), cyclic_group(b)
    assert abelian_tensor_order(za, zb) == gcd(a, b)
    assert tensor(zero_xmod(trivial_action(za, zb))).xm.top.order == gcd(a, b)
