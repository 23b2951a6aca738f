from itertools import product

import pytest

from xmodlab.coset import Presentation, parse_word, presentation_of, todd_coxeter, verify_table
from xmodlab.errors import CosetCapExceeded, WordBudgetExceeded
from xmodlab.perm import (_closure_from_seeds, alternating_group, are_isomorphic, commutator,
                          cyclic_group, dihedral_group, quaternion_group, subgroup_generated,
                          symmetric_group, ternary_commutator)
from xmodlab.words import FreeWord, higgins_oracle_binary, higgins_oracle_ternary

from conftest import cyc


def sub(g, *cycles):
    return subgroup_generated(g, [cyc(c, g.degree) for c in cycles])


def explicit_kernel_orders(subs, max_len):
    """Reference enumeration over explicit reduced words.

    A word lies in the kernel when deleting any single factor collapses it to
    the empty word; for two factors this is the kernel of the sum-to-product
    map, for three it is the joint kernel of the three collapse maps.
    """
    amb = subs[0].ambient
    letters = [[g for g in s.elements if not g.is_identity()] for s in subs]
    drops = range(len(subs))
    found = []
    orders = {}
    words = [FreeWord()]
    for length in range(1, max_len + 1):
        nxt = []
        for w in words:
            last = w.letters[-1][0] if w.letters else None
            for f, ls in enumerate(letters):
                if f == last:
                    continue
                for g in ls:
                    nxt.append(FreeWord(w.letters + ((f, g),)))
        words = nxt
        for w in words:
            if all(len(w.drop(i)) == 0 for i in drops):
                found.append(w.evaluate(amb.identity))
        orders[length] = _closure_from_seeds(amb, found).order
    return orders


class TestFreeWord:
    def test_reduction(self):
        a = cyc("(1 2)", 3)
        w = FreeWord.from_letters([(0, a), (0, a), (1, a)])
        assert w.letters == ((1, a),)
        assert len(w * w.inverse()) == 0

    def test_invalid(self):
        a = cyc("(1 2)", 3)
        with pytest.raises(ValueError):
            FreeWord(((0, a), (0, a)))

    def test_drop_and_evaluate(self):
        a, b = cyc("(1 2)", 3), cyc("(1 2 3)", 3)
        w = FreeWord.from_letters([(0, a), (1, b), (0, a), (1, b.inverse())])
        assert len(w.drop(1)) == 0 and len(w.drop(0)) == 0
        assert w.evaluate(a * a) == a * b * a * b.inverse()


class TestBinaryOracle:
    def test_trivial_factor(self):
        s3 = symmetric_group(3)
        for n in (2, 4, 6):
            assert higgins_oracle_binary(s3.trivial, s3.whole, max_len=n).subgroup.is_trivial()

    def test_s3(self):
        s3 = symmetric_group(3)
        a3 = sub(s3, "(1 2 3)")
        assert higgins_oracle_binary(s3.whole, s3.whole, max_len=4).subgroup == a3
        assert higgins_oracle_binary(a3, sub(s3, "(1 2)"), max_len=4).subgroup == a3

    @pytest.mark.parametrize("g", [symmetric_group(3), dihedral_group(4), quaternion_group()],
                             ids=["S3", "D8", "Q8"])
    def test_against_explicit_words(self, g):
        subs = [g.whole, sub(g, *[str(x) for x in g.generators[:1]])]
        for k, m in product(subs, repeat=2):
            got = higgins_oracle_binary(k, m, max_len=6)
            ref = explicit_kernel_orders([k, m], 6)
            for length, order in got.orders_by_length.items():
                assert ref[length] == order

    def test_monotone_and_stabilized(self):
        s4 = symmetric_group(4)
        r = higgins_oracle_binary(s4.whole, s4.whole, max_len=6)
        orders = [r.orders_by_length[k] for k in sorted(r.orders_by_length)]
        assert orders == sorted(orders)
        assert r.stabilized_at is not None and r.stabilized_at >= 4
        assert r.subgroup == commutator(s4.whole, s4.whole)

    def test_early_stop(self):
        s4 = symmetric_group(4)
        r = higgins_oracle_binary(s4.whole, s4.whole, max_len=8, early_stop=True)
        assert max(r.orders_by_length) == r.stabilized_at + 1

    def test_budget(self):
        s4 = symmetric_group(4)
        with pytest.raises(WordBudgetExceeded):
            higgins_oracle_binary(s4.whole, s4.whole, max_len=6, word_budget=50)


class TestTernaryOracle:
    def test_trivial_factor(self):
        s3 = symmetric_group(3)
        r = higgins_oracle_ternary(s3.trivial, s3.whole, s3.whole, max_len=6)
        assert r.subgroup.is_trivial()

    def test_s3(self):
        s3 = symmetric_group(3)
        w = s3.whole
        got = higgins_oracle_ternary(w, w, w).subgroup
        assert got == ternary_commutator(w, w, w) == sub(s3, "(1 2 3)")

    def test_abelian_ambient(self):
        z2 = cyclic_group(2)
        w = z2.whole
        assert higgins_oracle_ternary(w, w, w).subgroup.is_trivial()

    def test_needs_length_ten(self):
        # the shortest kernel words of the three-fold sum have length 10
        s3 = symmetric_group(3)
        w = s3.whole
        r = higgins_oracle_ternary(w, w, w, max_len=9)
        assert r.subgroup.is_trivial()

    @pytest.mark.parametrize("gens", [("(1 2)", "(1 3)", "(2 3)"),
                                      ("(1 2 3)", "(1 2)", "(1 3)")])
    def test_against_explicit_words(self, gens):
        s3 = symmetric_group(3)
        subs = [sub(s3, g) for g in gens]
        got = higgins_oracle_ternary(*subs, max_len=10)
        ref = explicit_kernel_orders(subs, 10)
        assert got.subgroup.order == ref[10]
        for length, order in got.orders_by_length.items():
            assert ref[length] == order


class TestToddCoxeter:
    def test_cyclic(self):
        assert todd_coxeter(Presentation(1, ((1, 1),))).group.order == 2

    @pytest.mark.parametrize("strategy", ["hlt", "felsch"])
    def test_coxeter_s3(self, strategy):
        p = Presentation.from_text("gens a b\nrel a^2\nrel b^2\nrel (a b)^3".replace(
            "(a b)^3", "a b a b a b"))
        r = todd_coxeter(p, strategy=strategy)
        assert r.group.order == 6
        assert verify_table(p, r.table)
        assert are_isomorphic(r.group, symmetric_group(3))

    def test_infinite_cyclic_hits_cap(self):
        with pytest.raises(CosetCapExceeded):
            todd_coxeter(Presentation(1, ()), coset_cap=100)

    @pytest.mark.parametrize("g", [symmetric_group(3), alternating_group(5), quaternion_group(),
                                   dihedral_group(4), cyclic_group(1)],
                             ids=["S3", "A5", "Q8", "D8", "Z1"])
    def test_recovers_group(self, g):
        assert are_isomorphic(todd_coxeter(presentation_of(g)).group, g)

    def test_text_round_trip(self):
        p = Presentation(2, ((1, 1), (2, 2, 2), (1, 2, 1, 2)), ("a", "b"))
        assert Presentation.from_text(p.to_text()) == p

    def test_word_parsing(self):
        assert parse_word("rrs^-1", ["r", "s"]) == (1, 1, -2)
        assert parse_word("a b^-2", ["a", "b"]) == (1, -2, -2)
        assert parse_word("1", ["a"]) == ()
        with pytest.raises(ValueError):
            parse_word("q", ["a"])
