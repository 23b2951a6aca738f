"""Bounded-word oracles for binary and ternary Higgins commutators.

Both oracles enumerate reduced words in a free product of subgroups, keep the
words killed by the relevant collapse maps, evaluate the survivors in the
ambient group and return the subgroup they generate.  Words are explored as a
frontier of distinct prefix states, so equivalent prefixes are expanded once.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import WordBudgetExceeded
from .perm import Perm, PermGroup, Subgroup, _closure_from_seeds, _same_ambient

DEFAULT_WORD_BUDGET = 5_000_000
BINARY_DEFAULT_LEN = 6
TERNARY_DEFAULT_LEN = 10
# Shortest lengths at which a nontrivial kernel word can occur; stabilization
# is only trusted from these lengths on.
BINARY_MIN_KERNEL_LEN = 4
TERNARY_MIN_KERNEL_LEN = 10


@dataclass(frozen=True)
class FreeWord:
    """A reduced word in a free product; letters are ``(factor, element)`` pairs."""

    letters: tuple[tuple[int, Perm], ...] = ()

    def __post_init__(self):
        for i, (f, g) in enumerate(self.letters):
            if g.is_identity():
                raise ValueError("identity letter in reduced word")
            if i and self.letters[i - 1][0] == f:
                raise ValueError("adjacent letters from the same factor")

    @classmethod
    def from_letters(cls, letters: Sequence[tuple[int, Perm]]) -> "FreeWord":
        w = cls()
        for f, g in letters:
            w = w.append(f, g)
        return w

    def append(self, factor: int, g: Perm) -> "FreeWord":
        letters = list(self.letters)
        if letters and letters[-1][0] == factor:
            merged = letters[-1][1] * g
            letters.pop()
            if not merged.is_identity():
                letters.append((factor, merged))
        elif not g.is_identity():
            letters.append((factor, g))
        return FreeWord(tuple(letters))

    def __mul__(self, other: "FreeWord") -> "FreeWord":
        w = self
        for f, g in other.letters:
            w = w.append(f, g)
        return w

    def inverse(self) -> "FreeWord":
        return FreeWord(tuple((f, g.inverse()) for f, g in reversed(self.letters)))

    def __len__(self) -> int:
        return len(self.letters)

    def drop(self, factor: int) -> "FreeWord":
        """Image under the map killing one factor."""
        return FreeWord.from_letters([(f, g) for f, g in self.letters if f != factor])

    def evaluate(self, identity: Perm) -> Perm:
        x = identity
        for _, g in self.letters:
            x = x * g
        return x


@dataclass
class OracleResult:
    subgroup: Subgroup
    orders_by_length: dict[int, int] = field(default_factory=dict)
    stabilized_at: int | None = None
    states_explored: int = 0


class _Table:
    """Integer Cayley table of a small ambient group."""

    def __init__(self, ambient: PermGroup):
        els = ambient.elements
        idx = ambient._index
        self.ambient = ambient
        self.mul = [[idx[a * b] for b in els] for a in els]
        self.inv = [idx[a.inverse()] for a in els]


def _letters(sub: Subgroup) -> list[int]:
    idx = sub.ambient._index
    return sorted(idx[g] for g in sub.elements if not g.is_identity())


def _generated(ambient: PermGroup, values: set[int]) -> Subgroup:
    els = ambient.elements
    return _closure_from_seeds(ambient, (els[i] for i in sorted(values)))


def _record(result: OracleResult, length: int, sub: Subgroup, min_len: int,
            early_stop: bool) -> bool:
    """Store the result at ``length``; true when the caller should stop."""
    orders = result.orders_by_length
    prev = orders.get(length - 1)
    orders[length] = sub.order
    result.subgroup = sub
    if prev != sub.order or length - 1 < min_len:
        result.stabilized_at = None
        return False
    if result.stabilized_at is None:
        result.stabilized_at = length - 1
    return early_stop


def higgins_oracle_binary(k: Subgroup, m: Subgroup, max_len: int = BINARY_DEFAULT_LEN,
                          word_budget: int = DEFAULT_WORD_BUDGET,
                          early_stop: bool = False) -> OracleResult:
    """Image of the kernel of ``K*M -> KxM`` restricted to words of length <= max_len.

    ``word_budget`` bounds the number of distinct prefix states explored.
    """
    if max_len < 2:
        raise ValueError("max_len must be at least 2")
    amb = _same_ambient(k, m)
    t = _Table(amb)
    mul = t.mul
    factors = (_letters(k), _letters(m))
    e = amb.index(amb.identity)
    # state: (last factor, ambient value, K-product, M-product)
    frontier = {(-1, e, e, e)}
    survivors: set[int] = {e}
    result = OracleResult(subgroup=amb.trivial)
    explored = 0
    for length in range(1, max_len + 1):
        nxt = set()
        for last, x, kp, mp in frontier:
            for f in (0, 1):
                if f == last:
                    continue
                for g in factors[f]:
                    if f == 0:
                        nxt.add((0, mul[x][g], mul[kp][g], mp))
                    else:
                        nxt.add((1, mul[x][g], kp, mul[mp][g]))
        explored += len(nxt)
        if explored > word_budget:
            raise WordBudgetExceeded(f"more than {word_budget} prefix states at length {length}")
        frontier = nxt
        survivors.update(x for _, x, kp, mp in frontier if kp == e and mp == e)
        sub = _generated(amb, survivors)
        if _record(result, length, sub, BINARY_MIN_KERNEL_LEN, early_stop):
            break
    result.states_explored = explored
    return result


def _reduce_push(word: tuple, f: int, g: int, mul, e: int) -> tuple:
    # word is a reduced tuple of (factor, element index) letters
    if word and word[-1][0] == f:
        merged = mul[word[-1][1]][g]
        return word[:-1] if merged == e else word[:-1] + ((f, merged),)
    return word + ((f, g),)


def higgins_oracle_ternary(k: Subgroup, m: Subgroup, n: Subgroup,
                           max_len: int = TERNARY_DEFAULT_LEN,
                           word_budget: int = DEFAULT_WORD_BUDGET,
                           early_stop: bool = False) -> OracleResult:
    """Image of the words in ``K*M*N`` of length <= max_len killed by all three
    pairwise collapse maps (each map deletes one factor)."""
    if max_len < 3:
        raise ValueError("max_len must be at least 3")
    amb = _same_ambient(k, m, n)
    t = _Table(amb)
    mul = t.mul
    factors = (_letters(k), _letters(m), _letters(n))
    e = amb.index(amb.identity)
    # Projections are indexed by the deleted factor: proj[d] lives in the
    # free product of the two other factors.
    frontier = {(-1, e, (), (), ())}
    survivors: set[int] = {e}
    result = OracleResult(subgroup=amb.trivial)
    explored = 0
    for length in range(1, max_len + 1):
        remaining = max_len - length
        nxt = set()
        for last, x, p0, p1, p2 in frontier:
            projs = (p0, p1, p2)
            for f in (0, 1, 2):
                if f == last:
                    continue
                for g in factors[f]:
                    new = list(projs)
                    for d in (0, 1, 2):
                        if d != f:
                            new[d] = _reduce_push(projs[d], f, g, mul, e)
                    # each later letter shortens at most two projections by one
                    lens = [len(w) for w in new]
                    if max(lens) > remaining or sum(lens) > 2 * remaining:
                        continue
                    nxt.add((f, mul[x][g], new[0], new[1], new[2]))
        explored += len(nxt)
        if explored > word_budget:
            raise WordBudgetExceeded(f"more than {word_budget} prefix states at length {length}")
        frontier = nxt
        survivors.update(s[1] for s in frontier if not s[2] and not s[3] and not s[4])
        sub = _generated(amb, survivors)
        if _record(result, length, sub, TERNARY_MIN_KERNEL_LEN, early_stop):
            break
    result.states_explored = explored
    return result
