"""Crossed modules over a fixed base group: validation, extensions, centrality
and the two reflectors (action-acyclic quotient and abelianisation)."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .actions import (Action, SplitExtension, _action_from_callable, _invariant_closure,
                      displacement, semidirect, trivial_action)
from .errors import (BoundaryMismatch, NotAbelian, NotEquivariant, NotNormalized,
                     NotSplitExact, NotSurjective, PeifferViolation, PrecrossedViolation)
from .perm import (DirectProduct, GroupHom, Perm, PermGroup, Subgroup, _closure_from_seeds,
                   commutator, direct_product, hom, identity_hom, inclusion_hom,
                   intersection, is_normal, join, quotient, ternary_commutator)


class XModL:
    """A crossed module ``boundary: M -> L`` with an action of L on M."""

    def __init__(self, base: PermGroup, top: PermGroup, boundary: GroupHom, action: Action,
                 name: str | None = None):
        self.base = base
        self.top = top
        self.boundary = boundary
        self.action = action
        self.name = name

    @property
    def L(self) -> PermGroup:
        return self.base

    @property
    def M(self) -> PermGroup:
        return self.top

    def act(self, l: Perm, m: Perm) -> Perm:
        return self.action.act(l, m)

    @cached_property
    def displacement(self) -> Subgroup:
        return displacement(self.action)

    @cached_property
    def boundary_kernel(self) -> Subgroup:
        return self.boundary.kernel

    @cached_property
    def semidirect(self) -> SplitExtension:
        return semidirect(self.action)

    def __repr__(self) -> str:
        return f"<XModL {self.name or ''} {self.top!r} -> {self.base!r}>"


def xmod_new(base: PermGroup, top: PermGroup, boundary: GroupHom, action: Action,
             name: str | None = None) -> XModL:
    """Validate both crossed-module axioms over all element pairs."""
    if boundary.domain is not top or boundary.codomain is not base:
        raise ValueError("boundary must be a hom from the top group to the base")
    if action.L is not base or action.M is not top:
        raise ValueError("action must be of the base group on the top group")
    for l in base.elements:
        li = l.inverse()
        for m in top.elements:
            if boundary(action.act(l, m)) != l * boundary(m) * li:
                raise PrecrossedViolation(l, m)
    for m in top.elements:
        dm = boundary(m)
        mi = m.inverse()
        for m2 in top.elements:
            if action.act(dm, m2) != m * m2 * mi:
                raise PeifferViolation(m, m2)
    return XModL(base, top, boundary, action, name=name)


def _zero_hom(src: PermGroup, dst: PermGroup) -> GroupHom:
    e = dst.identity
    return GroupHom(src, dst, [e] * len(src.generators), {g: e for g in src.elements})


def identity_xmod(g: PermGroup, name: str | None = None) -> XModL:
    """``1_G: G -> G`` with conjugation."""
    a = _action_from_callable(g, g, lambda l, m: l * m * l.inverse())
    return xmod_new(g, g, identity_hom(g), a, name=name)


def inclusion_xmod(x: PermGroup, n: Subgroup, name: str | None = None) -> XModL:
    """The inclusion of a normal subgroup with conjugation."""
    if n.ambient is not x or not is_normal(n):
        raise NotNormalized("inclusion crossed modules need a normal subgroup")
    m = n.as_group()
    a = _action_from_callable(x, m, lambda l, y: l * y * l.inverse())
    return xmod_new(x, m, inclusion_hom(n, m), a, name=name)


def zero_xmod(action: Action, name: str | None = None) -> XModL:
    """Zero boundary with the given action; valid exactly when M is abelian."""
    return xmod_new(action.L, action.M, _zero_hom(action.M, action.L), action, name=name)


def image_is_central(xm: XModL) -> bool:
    """``[ker boundary, M]`` is trivial."""
    return commutator(xm.boundary_kernel, xm.top.whole).is_trivial()


@dataclass
class XModMorphismL:
    """``f: M -> M'`` commuting with boundaries and the common L-action."""

    source: XModL
    target: XModL
    f: GroupHom

    def __post_init__(self):
        check_morphism(self.source, self.target, self.f)


def check_morphism(source: XModL, target: XModL, f: GroupHom) -> None:
    if source.base is not target.base:
        raise ValueError("morphisms must fix the base group")
    if f.domain is not source.top or f.codomain is not target.top:
        raise ValueError("map must go between the top groups")
    for m in source.top.elements:
        if target.boundary(f(m)) != source.boundary(m):
            raise BoundaryMismatch(f"boundaries disagree at {m}")
    for l in source.base.generators:
        for m in source.top.elements:
            if f(source.act(l, m)) != target.act(l, f(m)):
                raise NotEquivariant("map is not equivariant", (l, m))


@dataclass
class ExtensionL:
    """A surjective morphism of L-crossed modules with its kernel crossed module."""

    morphism: XModMorphismL
    kernel_xm: XModL
    kernel_inclusion: GroupHom

    @property
    def source(self) -> XModL:
        return self.morphism.source

    @property
    def target(self) -> XModL:
        return self.morphism.target

    @property
    def f(self) -> GroupHom:
        return self.morphism.f


def extension(source: XModL, target: XModL, f: GroupHom) -> ExtensionL:
    if not f.is_surjective():
        raise NotSurjective("extension map must be surjective")
    morph = XModMorphismL(source, target, f)
    k = f.kernel
    kg = k.as_group(name="ker")
    restricted = _action_from_callable(source.base, kg, source.act)
    kernel_xm = xmod_new(source.base, kg, _zero_hom(kg, source.base), restricted)
    return ExtensionL(morph, kernel_xm, inclusion_hom(k, kg))


def identity_extension(xm: XModL) -> ExtensionL:
    return extension(xm, xm, identity_hom(xm.top))


def is_central(ext: ExtensionL) -> bool:
    """The kernel carries the trivial L-action."""
    return ext.kernel_xm.action.is_trivial()


def is_perfect(xm: XModL) -> bool:
    return xm.displacement.order == xm.top.order


@dataclass
class Reflection:
    group: PermGroup
    projection: GroupHom


def ab_reflect(xm: XModL) -> Reflection:
    """``M / [L, M]`` with its projection."""
    c, q = quotient(xm.top, xm.displacement)
    if not c.is_abelian:
        raise NotAbelian("M/[L,M] is not abelian")
    return Reflection(c, q)


def is_action_acyclic(xm: XModL) -> bool:
    return intersection(xm.boundary_kernel, xm.displacement).is_trivial()


def quotient_xmod(xm: XModL, n: Subgroup, name: str | None = None) -> tuple[XModL, GroupHom]:
    """``M/N -> L`` for an L-invariant normal ``N`` inside ``ker boundary``."""
    if not n <= xm.boundary_kernel:
        raise BoundaryMismatch("N must lie in the kernel of the boundary")
    for l in xm.base.generators:
        for g in n.gens:
            if xm.act(l, g) not in n:
                raise NotNormalized("N is not invariant under the action")
    q_group, q = quotient(xm.top, n)
    lift = _minimal_lifts(q)
    bd = hom(q_group, xm.base, [xm.boundary(lift[c]) for c in q_group.generators])
    a = _action_from_callable(xm.base, q_group, lambda l, c: q(xm.act(l, lift[c])))
    return xmod_new(xm.base, q_group, bd, a, name=name), q


def _minimal_lifts(f: GroupHom) -> dict[Perm, Perm]:
    """Preimage of each element of the image, first in domain element order."""
    lift: dict[Perm, Perm] = {}
    for g in f.domain.elements:
        lift.setdefault(f(g), g)
    return lift


@dataclass
class AAReflection:
    xm: XModL
    unit: ExtensionL


def aa_reflect(xm: XModL) -> AAReflection:
    """Quotient by ``ker boundary ∧ [L,M]``; the result is action-acyclic."""
    n = intersection(xm.boundary_kernel, xm.displacement)
    refl, q = quotient_xmod(xm, n, name=f"F({xm.name})" if xm.name else None)
    if not is_action_acyclic(refl):
        raise AssertionError("reflection is not action-acyclic")
    return AAReflection(refl, extension(xm, refl, q))


@dataclass
class ProductXMod:
    """``K x M' -> L`` with the diagonal action and boundary through M'."""

    xm: XModL
    product: DirectProduct
    extension: ExtensionL
    section: GroupHom


def product_xmod(k_action: Action, xm: XModL, name: str | None = None) -> ProductXMod:
    """Product of an L-module ``K`` (zero boundary) with ``xm``, projecting onto ``xm``."""
    if k_action.L is not xm.base:
        raise ValueError("the module must be acted on by the base group")
    if not k_action.M.is_abelian:
        raise NotAbelian("the kernel factor must be abelian")
    dp = direct_product(k_action.M, xm.top)
    top = dp.group
    top.name = name
    bd = hom(top, xm.base, [xm.boundary(dp.proj2(g)) for g in top.generators])

    def act(l, g):
        a, m = dp.split(g)
        return dp.pair(k_action.act(l, a), xm.act(l, m))

    action = _action_from_callable(xm.base, top, act)
    new = xmod_new(xm.base, top, bd, action, name=name)
    ext = extension(new, xm, dp.proj2)
    return ProductXMod(new, dp, ext, dp.inj2)


def product_trick(xm: XModL, a: PermGroup) -> ProductXMod:
    """``A x M' -> M'`` with A acted on trivially; always a central extension."""
    if not a.is_abelian:
        raise NotAbelian("product trick needs an abelian group")
    label = f"{a.name or 'A'}x{xm.name or 'M'}"
    return product_xmod(trivial_action(xm.base, a), xm, name=label)


@dataclass
class XModMorphism:
    """A morphism of crossed modules over possibly different bases."""

    source: XModL
    target: XModL
    f: GroupHom
    l: GroupHom

    def __post_init__(self):
        s, t = self.source, self.target
        for m in s.top.elements:
            if t.boundary(self.f(m)) != self.l(s.boundary(m)):
                raise BoundaryMismatch(f"boundary square fails at {m}")
        for lam in s.base.generators:
            for m in s.top.elements:
                if self.f(s.act(lam, m)) != t.act(self.l(lam), self.f(m)):
                    raise NotEquivariant("map is not equivariant", (lam, m))


def is_trivial_extension_xmod(mor: XModMorphism) -> bool:
    """``l`` is an isomorphism and ``f`` restricts to an isomorphism of
    displacement subgroups."""
    if not mor.l.is_isomorphism():
        return False
    d_src = mor.source.displacement
    d_tgt = mor.target.displacement
    imgs = {mor.f(g) for g in d_src.elements}
    return len(imgs) == d_src.order and imgs == set(d_tgt.elements)


def as_general_morphism(ext: ExtensionL) -> XModMorphism:
    return XModMorphism(ext.source, ext.target, ext.f, identity_hom(ext.source.base))


@dataclass
class KernelPair:
    xm: XModL
    pi1: GroupHom
    pi2: GroupHom
    product: DirectProduct


def kernel_pair(ext: ExtensionL) -> KernelPair:
    """``M x_{M'} M`` as a crossed module with boundary through either factor."""
    src = ext.source
    m = src.top
    dp = direct_product(m, m)
    seeds = [dp.pair(g, g) for g in m.generators]
    seeds += [dp.pair(m.identity, ext.kernel_inclusion(k)) for k in ext.kernel_xm.top.generators]
    sub = _closure_from_seeds(dp.group, seeds)
    eq = sub.as_group(name="Eq")
    split = {g: dp.split(g) for g in eq.elements}
    p1 = {g: a for g, (a, _) in split.items()}
    p2 = {g: b for g, (_, b) in split.items()}
    pi1 = GroupHom(eq, m, [p1[g] for g in eq.generators], p1)
    pi2 = GroupHom(eq, m, [p2[g] for g in eq.generators], p2)
    bdt = {g: src.boundary(a) for g, a in p1.items()}
    bd = GroupHom(eq, src.base, [bdt[g] for g in eq.generators], bdt)

    def act(l, g):
        a, b = split[g]
        return dp.pair(src.act(l, a), src.act(l, b))

    action = _action_from_callable(src.base, eq, act)
    return KernelPair(xmod_new(src.base, eq, bd, action, name="Eq"), pi1, pi2, dp)


@dataclass
class ChainReport:
    """Conditions (i) to (vi) of the centrality chain; (i) is carried by (ii)."""

    i: bool
    ii: bool
    iii: bool
    iv: bool
    v: bool
    vi: bool

    def flags(self) -> tuple[bool, ...]:
        return (self.i, self.ii, self.iii, self.iv, self.v, self.vi)

    @property
    def consistent(self) -> bool:
        return len(set(self.flags())) == 1


def centrality_chain_check(ext: ExtensionL) -> ChainReport:
    kp = kernel_pair(ext)
    pi1 = XModMorphism(kp.xm, ext.source, kp.pi1, identity_hom(ext.source.base))
    ii = is_trivial_extension_xmod(pi1)
    # kernel of pi1 restricted to the displacement subgroup of Eq
    d_eq = kp.xm.displacement
    e = ext.source.top.identity
    iii = all(kp.pi1(g) != e or g == kp.xm.top.identity for g in d_eq.elements)
    k_pi1 = _closure_from_seeds(kp.xm.top, (g for g in kp.xm.top.elements if kp.pi1(g) == e))
    iv = _invariant_closure(kp.xm.action, _displacement_of(kp.xm.action, k_pi1)).is_trivial()
    v = ext.kernel_xm.displacement.is_trivial()
    vi = is_central(ext)
    return ChainReport(ii, ii, iii, iv, v, vi)


def _displacement_of(a: Action, sub: Subgroup) -> Subgroup:
    seeds = {}
    for l in a.L.generators:
        for m in sub.elements:
            seeds.setdefault(m.inverse() * a.act(l, m), None)
    return _closure_from_seeds(a.M, seeds)


def crossed_square_check(ext: ExtensionL) -> bool:
    """``[M ⋊ L, K_f]`` is trivial in the semidirect carrier of the source.

    Checked both directly and through the decomposition into ``[M, K]``,
    ``[L, K]`` and the ternary term ``[M, L, K]``.
    """
    sd = ext.source.semidirect
    k_img = _closure_from_seeds(sd.X, (sd.k(ext.kernel_inclusion(g))
                                       for g in ext.kernel_xm.top.generators))
    direct = commutator(sd.X.whole, k_img).is_trivial()
    parts = (commutator(sd.k_image, k_img), commutator(sd.s_image, k_img),
             ternary_commutator(sd.k_image, sd.s_image, k_img))
    decomposed = join(*parts).is_trivial()
    if direct != decomposed:
        raise AssertionError("crossed-square decomposition disagrees with direct check")
    return direct


@dataclass
class SplitSequence:
    """``K -> M <=> M'``: an extension with an equivariant section."""

    extension: ExtensionL
    section: GroupHom
    name: str | None = None


def _induced(h: GroupHom, q_src: GroupHom, q_dst: GroupHom) -> GroupHom:
    """The map ``q_dst ∘ h ∘ q_src^-1`` between quotients."""
    table = {}
    for g in h.domain.elements:
        a, b = q_src(g), q_dst(h(g))
        if table.setdefault(a, b) != b:
            raise AssertionError("map does not descend to the quotients")
    dom = q_src.codomain
    return GroupHom(dom, q_dst.codomain, [table[g] for g in dom.generators], table)


def _check_split_exact(k: GroupHom, f: GroupHom, g: GroupHom, label: str) -> None:
    if not f.is_surjective():
        raise NotSplitExact(f"{label}: projection not surjective")
    if not k.is_injective():
        raise NotSplitExact(f"{label}: kernel map not injective")
    if any(f(g(x)) != x for x in f.codomain.elements):
        raise NotSplitExact(f"{label}: section is not a right inverse")
    if set(k.image.elements) != set(f.kernel.elements):
        raise NotSplitExact(f"{label}: image of kernel map differs from kernel")


def protoadditivity_check(seq: SplitSequence) -> bool:
    """The reflector onto action-acyclic crossed modules preserves the split
    sequence, as does passing to displacement subgroups."""
    ext = seq.extension
    k_xm, m_xm, mp_xm = ext.kernel_xm, ext.source, ext.target
    XModMorphismL(mp_xm, m_xm, seq.section)
    _check_split_exact(ext.kernel_inclusion, ext.f, seq.section, "input")
    fk, fm, fmp = aa_reflect(k_xm), aa_reflect(m_xm), aa_reflect(mp_xm)
    qk, qm, qmp = fk.unit.f, fm.unit.f, fmp.unit.f
    _check_split_exact(_induced(ext.kernel_inclusion, qk, qm), _induced(ext.f, qm, qmp),
                       _induced(seq.section, qmp, qm), "reflected")
    dk, dm, dmp = k_xm.displacement, m_xm.displacement, mp_xm.displacement
    dkg, dmg, dmpg = dk.as_group(), dm.as_group(), dmp.as_group()
    _check_split_exact(_restrict(ext.kernel_inclusion, dkg, dmg),
                       _restrict(ext.f, dmg, dmpg), _restrict(seq.section, dmpg, dmg),
                       "commutators")
    return True


def _restrict(h: GroupHom, dom: PermGroup, cod: PermGroup) -> GroupHom:
    table = {}
    for g in dom.elements:
        y = h(g)
        if y not in cod:
            raise NotSplitExact("map does not restrict to displacement subgroups")
        table[g] = y
    return GroupHom(dom, cod, [table[g] for g in dom.generators], table)


def product_sequence(k_action: Action, xm: XModL, name: str | None = None) -> SplitSequence:
    px = product_xmod(k_action, xm, name=name)
    return SplitSequence(px.extension, px.section, name=name)
