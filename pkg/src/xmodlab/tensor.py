"""The non-abelian tensor product ``L ⊗ M`` of a crossed module and universal
central extensions.

Conventions: left actions; M acts on L by ``m.l = ∂(m) l ∂(m)^-1``; the pair
generator ``l⊗m`` is subject to

    (l l')⊗m = (l l' l^-1 ⊗ l.m)(l⊗m)
    l⊗(m m') = (l⊗m)(m.l ⊗ m m' m^-1)

and ``δ(l⊗m) = (l.m) m^-1``.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Sequence

from .actions import _action_from_callable
from .coset import DEFAULT_COSET_CAP, Presentation, todd_coxeter
from .errors import IsPerfect, LiftFailure, NotCentral, NotPerfect
from .perm import (GroupHom, Perm, PermGroup, _bfs_closure, _closure_from_seeds,
                   hom)
from .xmod import (ExtensionL, ProductXMod, XModL, XModMorphismL, _minimal_lifts, ab_reflect,
                   check_morphism, extension, identity_extension, is_central, is_perfect,
                   product_trick, xmod_new)


@dataclass
class TensorPresentation:
    presentation: Presentation
    L: PermGroup
    M: PermGroup
    reduced: bool

    def generator(self, l: Perm, m: Perm) -> int:
        """0-based index of the pair generator ``l⊗m``."""
        return self.L.index(l) * self.M.order + self.M.index(m)

    def pair(self, g: int) -> tuple[Perm, Perm]:
        li, mi = divmod(g, self.M.order)
        return self.L.elements[li], self.M.elements[mi]


def _generating_orbits(group: PermGroup, orbits: list[list[Perm]]) -> list[Perm]:
    """Union of whole orbits, smallest first, until they generate ``group``.

    The trivial group gets its identity so that its relator family is not empty.
    """
    if group.order == 1:
        return [group.identity]
    idx = group._index
    ranked = sorted((o for o in orbits if not o[0].is_identity()),
                    key=lambda o: (len(o), min(idx[g] for g in o)))
    chosen: list[Perm] = []
    current = {group.identity}
    for orbit in ranked:
        if len(current) == group.order:
            break
        if any(g not in current for g in orbit):
            chosen.extend(sorted(orbit, key=idx.__getitem__))
            current = set(_bfs_closure(group.identity, chosen, group.order))
    return chosen


def _orbits(els: Sequence[Perm], gens: Sequence[Perm], move) -> list[list[Perm]]:
    seen: set[Perm] = set()
    out = []
    for x in els:
        if x in seen:
            continue
        orbit = [x]
        seen.add(x)
        i = 0
        while i < len(orbit):
            y = orbit[i]
            i += 1
            for s in gens:
                z = move(s, y)
                if z not in seen:
                    seen.add(z)
                    orbit.append(z)
        out.append(orbit)
    return out


def relator_slots(xm: XModL) -> tuple[list[Perm], list[Perm]]:
    """A conjugation-closed generating set of L and an L-invariant generating set of M.

    Restricting the first relator family to ``l`` in the first set and the
    second family to ``m`` in the second set presents the same group: the
    restricted relator set is stable under the L-action on pair generators,
    and the full families follow by induction on word length.
    """
    L, M = xm.base, xm.top
    conj = _orbits(L.elements, L.generators, lambda s, y: s * y * s.inverse())
    orbit = _orbits(M.elements, L.generators, xm.act)
    return _generating_orbits(L, conj), _generating_orbits(M, orbit)


def tensor_presentation(xm: XModL, reduced: bool = True) -> TensorPresentation:
    """Pair presentation of ``L ⊗ M`` with generators indexed by all pairs.

    With ``reduced`` the relator families are restricted as in
    :func:`relator_slots`; otherwise every triple contributes.
    """
    L, M = xm.base, xm.top
    nm = M.order
    lidx, midx = L._index, M._index
    act_rows = xm.action.table
    m_els = M.elements

    def gen(l, m):
        return lidx[l] * nm + midx[m] + 1

    def act(l, m):
        return m_els[act_rows[l][midx[m]]]

    if reduced:
        x_slots, y_slots = relator_slots(xm)
    else:
        x_slots, y_slots = list(L.elements), list(M.elements)
    rels = []
    for l in x_slots:
        li = l.inverse()
        for l2 in L.elements:
            conj = l * l2 * li
            ll2 = l * l2
            for m in m_els:
                rels.append((gen(ll2, m), -gen(l, m), -gen(conj, act(l, m))))
    for m in y_slots:
        mi = m.inverse()
        dm = xm.boundary(m)
        dmi = dm.inverse()
        for l in L.elements:
            ml = dm * l * dmi
            lm = gen(l, m)
            for m2 in m_els:
                rels.append((gen(l, m * m2), -gen(ml, m * m2 * mi), -lm))
    names = [f"t{i}_{j}" for i in range(L.order) for j in range(nm)]
    p = Presentation(L.order * nm, tuple(rels), tuple(names))
    return TensorPresentation(p, L, M, reduced)


@dataclass
class TensorResult:
    xm: XModL
    delta: GroupHom
    source: XModL
    pair_perms: list[Perm]
    presentation: TensorPresentation
    report: dict = field(default_factory=dict)

    def pair_map(self, l: Perm, m: Perm) -> Perm:
        return self.pair_perms[self.presentation.generator(l, m)]


def _pair_displacement(xm: XModL, l: Perm, m: Perm) -> Perm:
    return xm.act(l, m) * m.inverse()


def tensor(xm: XModL, coset_cap: int = DEFAULT_COSET_CAP, strategy: str = "felsch",
           reduced: bool = True) -> TensorResult:
    """Enumerate ``L ⊗ M`` and build the crossed module ``L ⊗ M -> L`` with ``δ``."""
    t0 = time.perf_counter()
    tp = tensor_presentation(xm, reduced=reduced)
    enum = todd_coxeter(tp.presentation, coset_cap=coset_cap, strategy=strategy)
    T = enum.group
    T.name = f"{xm.base.name or 'L'}(x){xm.top.name or 'M'}"
    perms = enum.gen_perms
    L, M = xm.base, xm.top
    first_pair: dict[Perm, tuple[Perm, Perm]] = {}
    for g, p in enumerate(perms):
        first_pair.setdefault(p, tp.pair(g))
    delta = hom(T, M, [_pair_displacement(xm, *first_pair[g]) for g in T.generators])
    for g, p in enumerate(perms):
        l, m = tp.pair(g)
        if delta(p) != _pair_displacement(xm, l, m):
            raise AssertionError(f"delta disagrees on the pair {l}⊗{m}")
    bd_table = {t: xm.boundary(delta(t)) for t in T.elements}
    boundary = GroupHom(T, L, [bd_table[g] for g in T.generators], bd_table)

    def act(l, t):
        a, m = first_pair[t]
        return perms[tp.generator(l * a * l.inverse(), xm.act(l, m))]

    action = _action_from_callable(L, T, act)
    txm = xmod_new(L, T, boundary, action, name=f"{xm.name or 'xm'}(x)")
    check_morphism(txm, xm, delta)
    img = delta.image
    if set(img.elements) != set(xm.displacement.elements):
        raise AssertionError("image of delta differs from the displacement subgroup")
    for g, p in enumerate(perms):
        l, m = tp.pair(g)
        dm = xm.boundary(m)
        if boundary(p) != l * dm * l.inverse() * dm.inverse():
            raise AssertionError("boundary of the tensor disagrees with the square's left leg")
    ker = delta.kernel
    central = all(action.act(l, k) == k for l in L.generators for k in ker.gens)
    report = {
        "xmod": xm.name,
        "pair_generators": tp.presentation.n_generators,
        "relators": len(tp.presentation.relators),
        "order": T.order,
        "delta_image_order": img.order,
        "kernel_order": ker.order,
        "central": central,
        "max_cosets_defined": enum.max_defined,
        "seconds": round(time.perf_counter() - t0, 3),
    }
    return TensorResult(txm, delta, xm, perms, tp, report)


@dataclass
class UniversalExtension(ExtensionL):
    tensor: TensorResult | None = None


def uce(xm: XModL, coset_cap: int = DEFAULT_COSET_CAP, **kwargs) -> UniversalExtension:
    """The universal central extension ``(δ, 1_L)`` of a perfect crossed module."""
    if not is_perfect(xm):
        raise NotPerfect(f"{xm.name or 'crossed module'} is not perfect: [L,M] != M")
    tr = tensor(xm, coset_cap=coset_cap, **kwargs)
    ext = extension(tr.xm, xm, tr.delta)
    if not is_central(ext):
        raise AssertionError("(delta, 1) is not central")
    return UniversalExtension(ext.morphism, ext.kernel_xm, ext.kernel_inclusion, tr)


@dataclass
class Universality:
    phi: GroupHom
    unique: bool


def universality_witness(u: UniversalExtension, e: ExtensionL) -> Universality:
    """The morphism ``φ: L ⊗ M -> M̄`` over the common target, with ``φ(l⊗m) = (l.m̄) m̄^-1``."""
    if not e.f.is_surjective():
        raise LiftFailure("the extension map is not surjective")
    if not is_central(e):
        raise NotCentral("the target extension is not central")
    if e.target.top is not u.target.top:
        raise ValueError("both extensions must be over the same crossed module")
    tr = u.tensor
    src = e.source
    lift = _minimal_lifts(e.f)
    L, M = tr.source.base, tr.source.top

    def value(l, m):
        mb = lift[m]
        return src.act(l, mb) * mb.inverse()

    T = tr.xm.top
    first_pair = {}
    for g, p in enumerate(tr.pair_perms):
        first_pair.setdefault(p, tr.presentation.pair(g))
    phi = hom(T, src.top, [value(*first_pair[g]) for g in T.generators])
    for l in L.elements:
        for m in M.elements:
            if phi(tr.pair_map(l, m)) != value(l, m):
                raise AssertionError("phi disagrees with its defining formula")
    XModMorphismL(u.source, src, phi)
    for t in T.elements:
        if e.f(phi(t)) != u.f(t):
            raise AssertionError("phi does not commute with the extension maps")
    # homs agreeing on a generating set coincide
    spanned = _closure_from_seeds(T, dict.fromkeys(tr.pair_perms))
    return Universality(phi, spanned.order == T.order)


@dataclass
class NonPerfectWitness:
    A: PermGroup
    product: ProductXMod
    candidate: ExtensionL
    filler_quotient: GroupHom
    filler_zero: GroupHom

    @property
    def distinct(self) -> bool:
        return self.filler_quotient != self.filler_zero


def non_perfect_witness(xm: XModL, candidate: ExtensionL | None = None) -> NonPerfectWitness:
    """Two distinct fillers from a candidate central extension into ``A x M -> M``
    with ``A = M/[L,M]``, so no candidate is initial."""
    if is_perfect(xm):
        raise IsPerfect(f"{xm.name or 'crossed module'} is perfect")
    cand = candidate if candidate is not None else identity_extension(xm)
    if cand.target is not xm:
        raise ValueError("candidate must be an extension of the given crossed module")
    refl = ab_reflect(xm)
    refl.group.name = "Ab"
    pt = product_trick(xm, refl.group)
    dp = pt.product
    src = cand.source.top
    e_a = refl.group.identity

    def filler(fn):
        images = [dp.pair(fn(g), cand.f(g)) for g in src.generators]
        h = hom(src, pt.xm.top, images)
        XModMorphismL(cand.source, pt.xm, h)
        for g in src.elements:
            if pt.extension.f(h(g)) != cand.f(g):
                raise AssertionError("filler does not lie over the candidate")
        return h

    fq = filler(lambda g: refl.projection(cand.f(g)))
    f0 = filler(lambda g: e_a)
    return NonPerfectWitness(refl.group, pt, cand, fq, f0)


def _relation_lattice(g: PermGroup) -> tuple[list[Perm], list[list[int]]]:
    """Generators of an abelian group and integer relations spanning all relations."""
    gens = list(g.generators)
    k = len(gens)
    vec = {g.identity: [0] * k}
    queue = [g.identity]
    rels = []
    i = 0
    while i < len(queue):
        x = queue[i]
        i += 1
        for j, s in enumerate(gens):
            y = x * s
            v = list(vec[x])
            v[j] += 1
            if y in vec:
                rel = [a - b for a, b in zip(v, vec[y])]
                if any(rel):
                    rels.append(rel)
            else:
                vec[y] = v
                queue.append(y)
    return gens, rels


def abelian_tensor_order(a: PermGroup, b: PermGroup) -> int:
    """``|A ⊗_Z B|`` from the Smith normal form of its relation matrix."""
    from sympy import Matrix, ZZ
    from sympy.matrices.normalforms import smith_normal_form

    ga, ra = _relation_lattice(a)
    gb, rb = _relation_lattice(b)
    ka, kb = len(ga), len(gb)
    if ka == 0 or kb == 0:
        return 1
    rows = []
    for r in ra:
        for j in range(kb):
            row = [0] * (ka * kb)
            for i in range(ka):
                row[i * kb + j] = r[i]
            rows.append(row)
    for r in rb:
        for i in range(ka):
            row = [0] * (ka * kb)
            for j in range(kb):
                row[i * kb + j] = r[j]
            rows.append(row)
    snf = smith_normal_form(Matrix(rows), domain=ZZ)
    order = 1
    for i in range(ka * kb):
        d = abs(int(snf[i, i])) if i < snf.rows else 0
        if d == 0:
            raise AssertionError("tensor of finite groups cannot be infinite")
        order *= d
    return order
