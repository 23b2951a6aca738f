"""Group actions by automorphisms, semidirect products and coinvariants."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .errors import NotAHomomorphism, NotEquivariant, NotNormalized
from .perm import (GroupHom, Perm, PermGroup, Subgroup, _closure_from_seeds, commutator,
                   hom, is_normal, normal_closure, quotient)


class Action:
    """A left action of L on M by automorphisms.

    ``table[l]`` is the permutation of ``M.elements`` indices induced by ``l``.
    """

    def __init__(self, L: PermGroup, M: PermGroup, table: dict[Perm, tuple[int, ...]],
                 name: str | None = None):
        self.L = L
        self.M = M
        self.table = table
        self.name = name

    def act(self, l: Perm, m: Perm) -> Perm:
        return self.M.elements[self.table[l][self.M.index(m)]]

    def automorphism(self, l: Perm) -> GroupHom:
        row = self.table[l]
        els = self.M.elements
        table = {g: els[row[i]] for i, g in enumerate(els)}
        return GroupHom(self.M, self.M, [table[g] for g in self.M.generators], table)

    def is_trivial(self) -> bool:
        ident = tuple(range(self.M.order))
        return all(self.table[l] == ident for l in self.L.generators)

    def restrict(self, sub: Subgroup, group: PermGroup | None = None) -> "Action":
        """Restriction to an L-invariant subgroup of M."""
        g = group if group is not None else sub.as_group()
        for l in self.L.generators:
            for m in sub.gens:
                if self.act(l, m) not in sub:
                    raise NotNormalized("subgroup is not invariant under the action")
        return _action_from_callable(self.L, g, self.act)

    def __repr__(self) -> str:
        return f"<Action {self.name or ''} of {self.L!r} on {self.M!r}>"


def _action_from_callable(L: PermGroup, M: PermGroup, fn) -> Action:
    """Build the action table, checking each generator acts by an automorphism
    of M and that ``l -> act(l)`` is a homomorphism."""
    n = M.order
    ident = tuple(range(n))
    gen_rows = []
    for s in L.generators:
        aut = hom(M, M, [fn(s, m) for m in M.generators])
        if not aut.is_injective():
            raise NotAHomomorphism(f"{s} does not act by an automorphism")
        gen_rows.append(tuple(M.index(aut(g)) for g in M.elements))
    table = {L.identity: ident}
    queue = [L.identity]
    i = 0
    while i < len(queue):
        l = queue[i]
        row = table[l]
        i += 1
        for s, srow in zip(L.generators, gen_rows):
            ls = l * s
            new = tuple(row[j] for j in srow)
            known = table.get(ls)
            if known is None:
                table[ls] = new
                queue.append(ls)
            elif known != new:
                raise NotAHomomorphism("generator automorphisms do not define an action")
    return Action(L, M, table)


def make_action(L: PermGroup, M: PermGroup, images: Sequence[Sequence[Perm]],
                name: str | None = None) -> Action:
    """``images[i][j]`` is the image of ``M.generators[j]`` under ``L.generators[i]``."""
    if len(images) != len(L.generators):
        raise ValueError("need one image list per generator of L")
    lookup = {}
    for s, imgs in zip(L.generators, images):
        if len(imgs) != len(M.generators):
            raise ValueError("need one image per generator of M")
        lookup[s] = dict(zip(M.generators, imgs))

    def fn(s, m):
        return lookup[s][m]

    a = _action_from_callable(L, M, fn)
    a.name = name
    return a


def action_from_function(L: PermGroup, M: PermGroup, fn, name: str | None = None) -> Action:
    """Action from a function ``fn(l, m)``; only generator values are used."""
    a = _action_from_callable(L, M, fn)
    a.name = name
    return a


def trivial_action(L: PermGroup, M: PermGroup) -> Action:
    ident = tuple(range(M.order))
    return Action(L, M, {l: ident for l in L.elements}, name="trivial")


def conjugation_action(X: PermGroup, L: Subgroup, M: Subgroup,
                       L_group: PermGroup | None = None,
                       M_group: PermGroup | None = None) -> Action:
    """L acting on M by ``m -> l m l^-1`` inside X."""
    for l in L.gens:
        li = l.inverse()
        for m in M.gens:
            if l * m * li not in M:
                raise NotNormalized(f"{l} conjugates {m} outside M")
    Lg = L_group if L_group is not None else L.as_group()
    Mg = M_group if M_group is not None else M.as_group()
    a = _action_from_callable(Lg, Mg, lambda l, m: l * m * l.inverse())
    a.name = "conjugation"
    return a


def is_trivial_action(a: Action) -> bool:
    return a.is_trivial()


@dataclass
class SplitExtension:
    """``M -k-> X <-s- L`` with ``p: X -> L`` and ``p s = 1``."""

    X: PermGroup
    k: GroupHom
    p: GroupHom
    s: GroupHom
    action: Action

    def pair(self, m: Perm, l: Perm) -> Perm:
        """The element ``(m, l)`` of the carrier."""
        return self.k(m) * self.s(l)

    @cached_property
    def k_image(self) -> Subgroup:
        return self.k.image

    @cached_property
    def s_image(self) -> Subgroup:
        return self.s.image


def semidirect(a: Action) -> SplitExtension:
    """The semidirect product ``M ⋊ L`` with its split short exact sequence.

    The carrier acts on the disjoint union of M and L (points ``0..|M|-1``
    then ``|M|..|M|+|L|-1``): ``(m, l)`` sends ``x`` in M to ``m (l.x)`` and
    ``y`` in L to ``l y``.  The action is faithful, and elements are listed
    in ``(M index, L index)`` order.
    """
    L, M = a.L, a.M
    nm, nl = M.order, L.order
    m_els, l_els = M.elements, L.elements
    m_mul = [[M.index(x * y) for y in m_els] for x in m_els]

    def carrier(mi: int, l: Perm) -> Perm:
        row = a.table[l]
        left = m_mul[mi]
        images = [left[row[x]] for x in range(nm)]
        images.extend(nm + L.index(l * y) for y in l_els)
        return Perm(images)

    e_m = M.index(M.identity)
    k_gens = [carrier(M.index(m), L.identity) for m in M.generators]
    s_gens = [carrier(e_m, l) for l in L.generators]
    elements = [carrier(i, l) for i in range(nm) for l in l_els]
    X = PermGroup(nm + nl, k_gens + s_gens, elements,
                  name=f"{M.name or 'M'}x|{L.name or 'L'}")
    if len(set(elements)) != nm * nl:
        raise AssertionError("semidirect carrier is not faithful")
    coords = {g: (i, l) for g, (i, l) in zip(elements, ((i, l) for i in range(nm)
                                                         for l in l_els))}
    k_table = {m: carrier(M.index(m), L.identity) for m in m_els}
    s_table = {l: carrier(e_m, l) for l in l_els}
    p_table = {g: l for g, (_, l) in coords.items()}
    k = GroupHom(M, X, k_gens, k_table)
    s = GroupHom(L, X, s_gens, s_table)
    p = GroupHom(X, L, [p_table[g] for g in X.generators], p_table)
    return SplitExtension(X, k, p, s, a)


def displacement(a: Action) -> Subgroup:
    """``⟨ m^-1 (l.m) ⟩``, a subgroup of M."""
    M = a.M
    seeds = {}
    for l in a.L.generators:
        for m in M.elements:
            seeds.setdefault(m.inverse() * a.act(l, m), None)
    sub = _closure_from_seeds(M, seeds)
    # generator displacements suffice once closed under the action
    return _invariant_closure(a, sub)


def _invariant_closure(a: Action, sub: Subgroup) -> Subgroup:
    while True:
        seeds = list(sub.gens)
        for l in a.L.generators:
            seeds.extend(a.act(l, g) for g in sub.gens)
        nxt = _closure_from_seeds(a.M, seeds)
        if nxt.order == sub.order:
            return sub
        sub = nxt


def displacement_all_pairs(a: Action) -> Subgroup:
    """Displacement subgroup from every pair ``(l, m)``; the reference definition."""
    M = a.M
    seeds = {}
    for l in a.L.elements:
        for m in M.elements:
            seeds.setdefault(m.inverse() * a.act(l, m), None)
    return _closure_from_seeds(M, seeds)


@dataclass
class Coinvariants:
    C: PermGroup
    projection: GroupHom
    action: Action


def coinvariants(a: Action) -> Coinvariants:
    """``M / [L, M]`` with its projection and the trivial action of L on it."""
    d = displacement(a)
    c, q = quotient(a.M, d)
    return Coinvariants(c, q, trivial_action(a.L, c))


def is_perfect_action(a: Action, cross_check: bool = True) -> bool:
    """True iff the displacement subgroup is all of M.

    With ``cross_check`` the answer is compared against the normal closure of
    ``s(L)`` in the semidirect carrier.
    """
    result = displacement(a).order == a.M.order
    if cross_check:
        ext = semidirect(a)
        other = normal_closure(ext.s_image).order == ext.X.order
        if other != result:
            raise AssertionError("displacement and normal-closure perfectness disagree")
    return result


def carrier_commutator(ext: SplitExtension) -> Subgroup:
    """``[s(L), k(M)]`` computed inside the carrier."""
    return commutator(ext.s_image, ext.k_image)


def pull_to_M(ext: SplitExtension, sub: Subgroup) -> Subgroup:
    """A subgroup of ``k(M)`` transported back to M."""
    back = {ext.k(m): m for m in ext.action.M.elements}
    return _closure_from_seeds(ext.action.M, (back[g] for g in sub.gens))


@dataclass
class PointMorphism:
    """An equivariant hom ``f: M -> M'`` between two actions of the same L."""

    source: Action
    target: Action
    f: GroupHom

    def __post_init__(self):
        if self.source.L is not self.target.L:
            raise ValueError("point morphisms must share the acting group")
        for l in self.source.L.generators:
            for m in self.source.M.elements:
                if self.f(self.source.act(l, m)) != self.target.act(l, self.f(m)):
                    raise NotEquivariant("map does not commute with the action", (l, m))

    def on_carriers(self, e1: SplitExtension, e2: SplitExtension) -> GroupHom:
        """The induced ``f ⋊ 1`` between semidirect carriers."""
        table = {}
        for m in self.source.M.elements:
            for l in self.source.L.elements:
                table[e1.pair(m, l)] = e2.pair(self.f(m), l)
        return GroupHom(e1.X, e2.X, [table[g] for g in e1.X.generators], table)

    def on_coinvariants(self, c1: Coinvariants, c2: Coinvariants) -> GroupHom:
        table = {}
        for m in self.source.M.elements:
            a = c1.projection(m)
            b = c2.projection(self.f(m))
            if table.setdefault(a, b) != b:
                raise AssertionError("map does not descend to coinvariants")
        return GroupHom(c1.C, c2.C, [table[g] for g in c1.C.generators], table)


def quotient_point(a: Action, n: Subgroup) -> PointMorphism:
    """``M -> M/N`` for an L-invariant normal subgroup N, as a point morphism."""
    if not is_normal(n):
        raise NotNormalized("N is not normal in M")
    for l in a.L.generators:
        for g in n.gens:
            if a.act(l, g) not in n:
                raise NotNormalized("N is not invariant under the action")
    q_group, q = quotient(a.M, n)
    target = action_from_function(a.L, q_group, lambda l, c: q(a.act(l, _lift(q, c))))
    return PointMorphism(a, target, q)


def _lift(f: GroupHom, y: Perm) -> Perm:
    for g in f.domain.elements:
        if f(g) == y:
            return g
    raise ValueError("element has no preimage")


def invariant_normal_subgroups(a: Action, subgroups: Sequence[Subgroup]) -> list[Subgroup]:
    """Those subgroups of M that are normal and L-invariant."""
    out = []
    for n in subgroups:
        if is_normal(n) and all(a.act(l, g) in n for l in a.L.generators for g in n.gens):
            out.append(n)
    return out
