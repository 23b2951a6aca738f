"""Finite permutation groups with full element enumeration.

Points are 1-based in every textual form (cycle notation, files, ``Perm.images``)
but stored 0-based. Products compose as functions: ``(p * q)(i) == p(q(i))``.
"""

from __future__ import annotations

import math
import os
import re
from collections import Counter
from functools import cached_property
from itertools import product
from typing import Iterable, Sequence

from .errors import (
    AmbientMismatch,
    CapExceeded,
    ElementNotInAmbient,
    EnumerationCapExceeded,
    NotAbelian,
    NotAHomomorphism,
    NotNormal,
)

DEFAULT_ENUMERATION_CAP = 20000
DEFAULT_ISO_CAP = 512


def enumeration_cap() -> int:
    """The element-enumeration cap; ``XMODLAB_CAP`` overrides the default."""
    value = os.environ.get("XMODLAB_CAP")
    return int(value) if value else DEFAULT_ENUMERATION_CAP


class Perm(tuple):
    """A permutation stored as the 0-based tuple of images."""

    __slots__ = ()

    def __new__(cls, images: Iterable[int] = ()):
        return tuple.__new__(cls, images)

    @classmethod
    def identity(cls, degree: int) -> "Perm":
        return tuple.__new__(cls, range(degree))

    @classmethod
    def from_images(cls, images: Sequence[int]) -> "Perm":
        """Build from the 1-based image list ``images[i-1] = image of i``."""
        perm = tuple.__new__(cls, (x - 1 for x in images))
        if sorted(perm) != list(range(len(perm))):
            raise ValueError(f"not a bijection: {list(images)}")
        return perm

    @classmethod
    def from_cycles(cls, cycles: str | Sequence[Sequence[int]], degree: int) -> "Perm":
        if isinstance(cycles, str):
            cycles = parse_cycles(cycles)
        img = list(range(degree))
        seen: set[int] = set()
        for cyc in cycles:
            for pt in cyc:
                if not 1 <= pt <= degree:
                    raise ValueError(f"point {pt} outside 1..{degree}")
                if pt in seen:
                    raise ValueError(f"point {pt} repeated in cycles")
                seen.add(pt)
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                img[a - 1] = b - 1
        return tuple.__new__(cls, img)

    @property
    def degree(self) -> int:
        return len(self)

    @property
    def images(self) -> tuple[int, ...]:
        return tuple(x + 1 for x in self)

    def __mul__(self, other: "Perm") -> "Perm":
        return tuple.__new__(Perm, map(self.__getitem__, other))

    def __rmul__(self, other):
        return NotImplemented

    def inverse(self) -> "Perm":
        inv = [0] * len(self)
        for i, x in enumerate(self):
            inv[x] = i
        return tuple.__new__(Perm, inv)

    def __pow__(self, k: int) -> "Perm":
        base = self if k >= 0 else self.inverse()
        result = Perm.identity(len(self))
        for _ in range(abs(k)):
            result = result * base
        return result

    def __call__(self, point: int) -> int:
        """Image of a 1-based point."""
        return self[point - 1] + 1

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self))

    def cycles(self) -> list[tuple[int, ...]]:
        seen = [False] * len(self)
        out = []
        for start in range(len(self)):
            if seen[start] or self[start] == start:
                seen[start] = True
                continue
            cyc = []
            i = start
            while not seen[i]:
                seen[i] = True
                cyc.append(i + 1)
                i = self[i]
            out.append(tuple(cyc))
        return out

    def order(self) -> int:
        return math.lcm(*(len(c) for c in self.cycles())) if not self.is_identity() else 1

    def __str__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)

    def __repr__(self) -> str:
        return f"Perm({self})"


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str) -> list[list[int]]:
    """Parse ``"(1 2)(3 4 5)"``; ``"()"`` is the identity. Raises ValueError."""
    text = text.strip()
    if not text:
        raise ValueError("empty cycle string")
    pos = 0
    cycles = []
    for m in _CYCLE_RE.finditer(text):
        if text[pos:m.start()].strip():
            raise ValueError(f"unexpected text {text[pos:m.start()]!r}")
        body = m.group(1).replace(",", " ").split()
        try:
            pts = [int(tok) for tok in body]
        except ValueError:
            raise ValueError(f"non-integer point in ({m.group(1)})") from None
        if pts:
            cycles.append(pts)
        pos = m.end()
    if text[pos:].strip():
        raise ValueError(f"malformed cycle notation near {text[pos:]!r}")
    if pos == 0:
        raise ValueError(f"no cycles in {text!r}")
    return cycles


def _bfs_closure(identity: Perm, gens: Sequence[Perm], cap: int) -> list[Perm]:
    elements = [identity]
    seen = {identity}
    i = 0
    while i < len(elements):
        g = elements[i]
        i += 1
        for s in gens:
            h = g * s
            if h not in seen:
                seen.add(h)
                elements.append(h)
                if len(elements) > cap:
                    raise EnumerationCapExceeded(f"closure exceeds cap {cap}")
    return elements


class PermGroup:
    """A finite permutation group with all of its elements enumerated."""

    def __init__(self, degree: int, generators: Sequence[Perm], elements: Sequence[Perm],
                 name: str | None = None):
        self.degree = degree
        self.generators = tuple(generators)
        self.elements = tuple(elements)
        self.name = name
        self._index = {g: i for i, g in enumerate(self.elements)}
        self.identity = Perm.identity(degree)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, g) -> bool:
        return g in self._index

    def index(self, g: Perm) -> int:
        return self._index[g]

    def __repr__(self) -> str:
        label = self.name or "PermGroup"
        return f"<{label} degree={self.degree} order={self.order}>"

    @cached_property
    def is_abelian(self) -> bool:
        gens = self.generators
        return all(a * b == b * a for a in gens for b in gens)

    @cached_property
    def order_histogram(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(Counter(g.order() for g in self.elements).items()))

    @cached_property
    def whole(self) -> "Subgroup":
        return Subgroup(self, self.generators, self.elements)

    @cached_property
    def trivial(self) -> "Subgroup":
        return Subgroup(self, (), (self.identity,))

    @cached_property
    def derived_subgroup(self) -> "Subgroup":
        return commutator(self.whole, self.whole)

    def small_generators(self) -> list[Perm]:
        """A non-redundant generating set, favouring elements of large order."""
        ranked = sorted(self.elements, key=lambda g: (-g.order(), self._index[g]))
        return _greedy_generators(self, ranked)


def _greedy_generators(group: PermGroup, candidates: Iterable[Perm]) -> list[Perm]:
    chosen: list[Perm] = []
    current = {group.identity}
    target = group.order
    for g in candidates:
        if len(current) == target:
            break
        if g not in current:
            chosen.append(g)
            current = set(_bfs_closure(group.identity, chosen, target))
    return chosen


def group_from_generators(degree: int, gens: Sequence[Perm], cap: int | None = None,
                          name: str | None = None) -> PermGroup:
    """Closure of ``gens``; elements are listed breadth-first from the identity."""
    gens = [Perm(g) for g in gens]
    for g in gens:
        if len(g) != degree:
            raise ValueError(f"generator {g} has degree {len(g)}, expected {degree}")
    cap = enumeration_cap() if cap is None else cap
    elements = _bfs_closure(Perm.identity(degree), gens, cap)
    return PermGroup(degree, gens, elements, name=name)


class Subgroup:
    """A subgroup of an enumerated ambient group; compares by element set."""

    def __init__(self, ambient: PermGroup, gens: Sequence[Perm], elements: Sequence[Perm]):
        self.ambient = ambient
        self.gens = tuple(gens)
        self.elements = tuple(elements)
        self._set = frozenset(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, g) -> bool:
        return g in self._set

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.ambient is other.ambient and self._set == other._set

    def __hash__(self) -> int:
        return hash(self._set)

    def __le__(self, other: "Subgroup") -> bool:
        return self._set <= other._set

    def __repr__(self) -> str:
        return f"<Subgroup order={self.order} of {self.ambient!r}>"

    def is_trivial(self) -> bool:
        return len(self.elements) == 1

    def is_whole(self) -> bool:
        return len(self.elements) == self.ambient.order

    def sorted_indices(self) -> list[int]:
        return sorted(self.ambient.index(g) for g in self.elements)

    def as_group(self, name: str | None = None) -> PermGroup:
        gens = self.gens if self.gens else ()
        return PermGroup(self.ambient.degree, gens, self.elements, name=name)


def _closure_from_seeds(ambient: PermGroup, seeds: Iterable[Perm]) -> Subgroup:
    gens: list[Perm] = []
    current: set[Perm] = {ambient.identity}
    elements = [ambient.identity]
    for s in seeds:
        if s in current:
            continue
        gens.append(s)
        elements = _bfs_closure(ambient.identity, gens, ambient.order)
        current = set(elements)
    return Subgroup(ambient, gens, elements)


def subgroup_generated(ambient: PermGroup, seed: Iterable[Perm]) -> Subgroup:
    """Smallest subgroup of ``ambient`` containing ``seed``."""
    seed = list(seed)
    for g in seed:
        if g not in ambient:
            raise ElementNotInAmbient(f"{g} is not an element of {ambient!r}")
    return _closure_from_seeds(ambient, seed)


def _same_ambient(*subs: Subgroup) -> PermGroup:
    amb = subs[0].ambient
    for s in subs[1:]:
        if s.ambient is not amb:
            raise AmbientMismatch("subgroups live in different ambient groups")
    return amb


def join(*subs: Subgroup) -> Subgroup:
    amb = _same_ambient(*subs)
    return _closure_from_seeds(amb, (g for s in subs for g in s.gens))


def intersection(a: Subgroup, b: Subgroup) -> Subgroup:
    amb = _same_ambient(a, b)
    return _closure_from_seeds(amb, (g for g in a.elements if g in b._set))


def is_normal(h: Subgroup) -> bool:
    amb = h.ambient
    for x in amb.generators:
        xi = x.inverse()
        for g in h.gens:
            if x * g * xi not in h._set:
                return False
    return True


def normal_closure(k: Subgroup) -> Subgroup:
    """Smallest normal subgroup of the ambient group containing ``k``."""
    amb = k.ambient
    current = k
    while True:
        seeds = list(current.gens)
        for x in amb.generators:
            xi = x.inverse()
            seeds.extend(x * g * xi for g in current.gens)
        nxt = _closure_from_seeds(amb, seeds)
        if nxt.order == current.order:
            return current
        current = nxt


def comm(a: Perm, b: Perm) -> Perm:
    """The commutator ``a b a^-1 b^-1``."""
    return a * b * a.inverse() * b.inverse()


def commutator(k: Subgroup, m: Subgroup) -> Subgroup:
    """The subgroup generated by all ``[k, m]`` with ``k`` in K and ``m`` in M."""
    amb = _same_ambient(k, m)
    if k.is_trivial() or m.is_trivial():
        return amb.trivial
    m_inv = [(y, y.inverse()) for y in m.elements]
    seeds = {}
    for x in k.elements:
        xi = x.inverse()
        for y, yi in m_inv:
            seeds.setdefault(x * y * xi * yi, None)
    return _closure_from_seeds(amb, seeds)


def ternary_commutator(k: Subgroup, m: Subgroup, n: Subgroup) -> Subgroup:
    """Join of the iterated commutators ``[[K,M],N]``, ``[[M,N],K]`` and ``[[N,K],M]``."""
    _same_ambient(k, m, n)
    parts = (commutator(commutator(k, m), n),
             commutator(commutator(m, n), k),
             commutator(commutator(n, k), m))
    return join(*parts)


class GroupHom:
    """A validated homomorphism, determined by the images of the domain generators."""

    def __init__(self, domain: PermGroup, codomain: PermGroup, gen_images: Sequence[Perm],
                 table: dict[Perm, Perm]):
        self.domain = domain
        self.codomain = codomain
        self.gen_images = tuple(gen_images)
        self._table = table

    def __call__(self, g: Perm) -> Perm:
        return self._table[g]

    def __repr__(self) -> str:
        return f"<GroupHom {self.domain!r} -> {self.codomain!r}>"

    def image_of(self, h: Subgroup) -> Subgroup:
        return _closure_from_seeds(self.codomain, (self._table[g] for g in h.gens))

    def preimage_of(self, h: Subgroup) -> Subgroup:
        return _closure_from_seeds(self.domain,
                                   (g for g in self.domain.elements if self._table[g] in h))

    @cached_property
    def kernel(self) -> Subgroup:
        e = self.codomain.identity
        return _closure_from_seeds(self.domain,
                                   (g for g in self.domain.elements if self._table[g] == e))

    @cached_property
    def image(self) -> Subgroup:
        return _closure_from_seeds(self.codomain, self.gen_images)

    def is_surjective(self) -> bool:
        return self.image.order == self.codomain.order

    def is_injective(self) -> bool:
        return self.kernel.order == 1

    def is_isomorphism(self) -> bool:
        return self.is_injective() and self.is_surjective()

    def then(self, other: "GroupHom") -> "GroupHom":
        """The composite ``other ∘ self``."""
        table = {g: other._table[h] for g, h in self._table.items()}
        return GroupHom(self.domain, other.codomain,
                        [other._table[h] for h in self.gen_images], table)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupHom):
            return NotImplemented
        return (self.domain is other.domain and self.codomain is other.codomain
                and all(self._table[g] == other._table[g] for g in self.domain.generators))

    __hash__ = None


def _graph_table(domain: PermGroup, codomain: PermGroup,
                 gen_images: Sequence[Perm]) -> dict[Perm, Perm] | None:
    # Breadth-first walk of the subgroup of domain x codomain generated by the
    # graph pairs; a second image for some domain element means the graph
    # subgroup is larger than the domain.
    pairs = list(zip(domain.generators, gen_images))
    table = {domain.identity: codomain.identity}
    queue = [domain.identity]
    i = 0
    while i < len(queue):
        g = queue[i]
        h = table[g]
        i += 1
        for s, t in pairs:
            gs = g * s
            ht = h * t
            known = table.get(gs)
            if known is None:
                table[gs] = ht
                queue.append(gs)
            elif known != ht:
                return None
    return table


def hom(domain: PermGroup, codomain: PermGroup, gen_images: Sequence[Perm]) -> GroupHom:
    """Validate and build the homomorphism sending ``domain.generators[i]`` to ``gen_images[i]``."""
    gen_images = [Perm(x) for x in gen_images]
    if len(gen_images) != len(domain.generators):
        raise ValueError("need one image per domain generator")
    for x in gen_images:
        if x not in codomain:
            raise ElementNotInAmbient(f"{x} is not in the codomain")
    table = _graph_table(domain, codomain, gen_images)
    if table is None:
        raise NotAHomomorphism("graph subgroup is larger than the domain")
    return GroupHom(domain, codomain, gen_images, table)


def hom_from_function(domain: PermGroup, codomain: PermGroup, fn) -> GroupHom:
    """Validated homomorphism from a function known on generators."""
    return hom(domain, codomain, [fn(g) for g in domain.generators])


def identity_hom(g: PermGroup) -> GroupHom:
    return GroupHom(g, g, g.generators, {x: x for x in g.elements})


def inclusion_hom(h: Subgroup, domain: PermGroup | None = None) -> GroupHom:
    dom = domain if domain is not None else h.as_group()
    return GroupHom(dom, h.ambient, dom.generators, {x: x for x in dom.elements})


def kernel(f: GroupHom) -> Subgroup:
    return f.kernel


def image(f: GroupHom) -> Subgroup:
    return f.image


def quotient(x: PermGroup, n: Subgroup) -> tuple[PermGroup, GroupHom]:
    """``X/N`` acting on the left cosets of N, with the projection."""
    if n.ambient is not x:
        raise AmbientMismatch("N is not a subgroup of X")
    if not is_normal(n):
        raise NotNormal("quotient requires a normal subgroup")
    coset_of: dict[Perm, int] = {}
    reps: list[Perm] = []
    for g in x.elements:
        if g in coset_of:
            continue
        idx = len(reps)
        reps.append(g)
        for y in n.elements:
            coset_of[g * y] = idx
    k = len(reps)

    def act(s: Perm) -> Perm:
        return Perm(coset_of[s * r] for r in reps)

    images = [act(s) for s in x.generators]
    q = group_from_generators(k, images)
    table = {g: act(g) for g in x.elements}
    return q, GroupHom(x, q, images, table)


class DirectProduct:
    """``G x H`` on ``deg G + deg H`` points with its injections and projections."""

    def __init__(self, g: PermGroup, h: PermGroup):
        self.left = g
        self.right = h
        dg, dh = g.degree, h.degree
        self._dg = dg
        gens = [self.pair(a, h.identity) for a in g.generators]
        gens += [self.pair(g.identity, b) for b in h.generators]
        self.group = group_from_generators(dg + dh, gens)
        self.inj1 = GroupHom(g, self.group, gens[:len(g.generators)],
                             {a: self.pair(a, h.identity) for a in g.elements})
        self.inj2 = GroupHom(h, self.group, gens[len(g.generators):],
                             {b: self.pair(g.identity, b) for b in h.elements})
        split = {p: self.split(p) for p in self.group.elements}
        self.proj1 = GroupHom(self.group, g, [split[p][0] for p in gens],
                              {p: ab[0] for p, ab in split.items()})
        self.proj2 = GroupHom(self.group, h, [split[p][1] for p in gens],
                              {p: ab[1] for p, ab in split.items()})

    def pair(self, a: Perm, b: Perm) -> Perm:
        dg = self._dg
        return Perm(tuple(a) + tuple(x + dg for x in b))

    def split(self, p: Perm) -> tuple[Perm, Perm]:
        dg = self._dg
        return Perm(p[:dg]), Perm(x - dg for x in p[dg:])


def direct_product(g: PermGroup, h: PermGroup) -> DirectProduct:
    return DirectProduct(g, h)


def _iso_invariants(g: PermGroup):
    return (g.order, g.order_histogram, g.is_abelian, g.derived_subgroup.order)


def are_isomorphic(g: PermGroup, h: PermGroup, cap: int = DEFAULT_ISO_CAP) -> bool:
    """Brute-force isomorphism test with invariant pruning."""
    if g.order > cap or h.order > cap:
        raise CapExceeded(f"isomorphism test limited to order {cap}")
    if _iso_invariants(g) != _iso_invariants(h):
        return False
    return find_isomorphism(g, h) is not None


def find_isomorphism(g: PermGroup, h: PermGroup) -> GroupHom | None:
    if g.order != h.order:
        return None
    gens = g.small_generators()
    if not gens:
        return identity_like(g, h)
    by_order: dict[int, list[Perm]] = {}
    for y in h.elements:
        by_order.setdefault(y.order(), []).append(y)
    candidates = [by_order.get(x.order(), []) for x in gens]
    subs = [PermGroup(g.degree, gens[:i + 1], _bfs_closure(g.identity, gens[:i + 1], g.order))
            for i in range(len(gens))]

    def extend(i: int, chosen: list[Perm]):
        if i == len(gens):
            return chosen
        for y in candidates[i]:
            trial = chosen + [y]
            table = _graph_table(subs[i], h, trial)
            if table is None or len(set(table.values())) != subs[i].order:
                continue
            found = extend(i + 1, trial)
            if found is not None:
                return found
        return None

    images = extend(0, [])
    if images is None:
        return None
    src = PermGroup(g.degree, gens, g.elements)
    table = _graph_table(src, h, images)
    return GroupHom(g, h, [table[x] for x in g.generators], table)


def identity_like(g: PermGroup, h: PermGroup) -> GroupHom:
    return GroupHom(g, h, [h.identity] * len(g.generators), {x: h.identity for x in g.elements})


def _prime_factors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def abelian_invariants(g: PermGroup) -> list[int]:
    """Primary invariants (prime powers) of an abelian group, sorted ascending."""
    if not g.is_abelian:
        raise NotAbelian(f"{g!r} is not abelian")
    orders = [x.order() for x in g.elements]
    result = []
    for p in _prime_factors(g.order):
        p_orders = [o for o in orders if o > 0 and _is_power_of(o, p)]
        # counts[k] = #{x : x^(p^k) = 1} inside the Sylow p-subgroup
        counts = [1]
        k = 1
        while counts[-1] < len(p_orders):
            counts.append(sum(1 for o in p_orders if (p ** k) % o == 0))
            k += 1
        ranks = [round(math.log(counts[i] // counts[i - 1], p)) for i in range(1, len(counts))]
        # ranks[i-1] = number of cyclic factors of order >= p^i
        for i in range(len(ranks)):
            nxt = ranks[i + 1] if i + 1 < len(ranks) else 0
            result.extend([p ** (i + 1)] * (ranks[i] - nxt))
    return sorted(result)


def _is_power_of(o: int, p: int) -> bool:
    while o % p == 0:
        o //= p
    return o == 1


def all_subgroups(g: PermGroup) -> list[Subgroup]:
    """Every subgroup of ``g``, sorted by (order, sorted element indices)."""
    cyclic = {}
    for x in g.elements:
        c = _closure_from_seeds(g, [x])
        cyclic.setdefault(c._set, c)
    found = dict(cyclic)
    frontier = list(found.values())
    cyc_list = list(cyclic.values())
    while frontier:
        new = []
        for a in frontier:
            for c in cyc_list:
                if c._set <= a._set:
                    continue
                j = _closure_from_seeds(g, list(a.gens) + list(c.gens))
                if j._set not in found:
                    found[j._set] = j
                    new.append(j)
        frontier = new
    return sorted(found.values(), key=lambda s: (s.order, s.sorted_indices()))


# Small named groups used by tests and the catalog.

def cyclic_group(n: int) -> PermGroup:
    if n == 1:
        return group_from_generators(1, [], name="Z1")
    return group_from_generators(n, [Perm(list(range(1, n)) + [0])], name=f"Z{n}")


def symmetric_group(n: int) -> PermGroup:
    if n == 1:
        return group_from_generators(1, [], name="S1")
    gens = [Perm.from_cycles([list(range(1, n + 1))], n), Perm.from_cycles([[1, 2]], n)]
    return group_from_generators(n, gens, name=f"S{n}")


def alternating_group(n: int) -> PermGroup:
    if n < 3:
        return group_from_generators(max(n, 1), [], name=f"A{n}")
    gens = [Perm.from_cycles([[1, 2, i]], n) for i in range(3, n + 1)]
    return group_from_generators(n, gens, name=f"A{n}")


def dihedral_group(n: int) -> PermGroup:
    """Symmetries of the n-gon (order 2n)."""
    rot = Perm(list(range(1, n)) + [0])
    ref = Perm([(-i) % n for i in range(n)])
    return group_from_generators(n, [rot, ref], name=f"D{2 * n}")


def quaternion_group() -> PermGroup:
    i = Perm.from_cycles("(1 2 3 4)(5 6 7 8)", 8)
    j = Perm.from_cycles("(1 5 3 7)(2 8 4 6)", 8)
    return group_from_generators(8, [i, j], name="Q8")


def klein_four() -> PermGroup:
    return group_from_generators(4, [Perm.from_cycles("(1 2)(3 4)", 4),
                                     Perm.from_cycles("(1 3)(2 4)", 4)], name="V4")


def element_pairs(g: PermGroup):
    return product(g.elements, g.elements)
