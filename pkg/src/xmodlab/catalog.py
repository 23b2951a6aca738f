"""Text formats for groups (.grp), actions (.act) and crossed modules (.xm),
and the catalog assembled from a directory of such files.

Files are loaded kind by kind (groups, then actions, then crossed modules),
each kind in lexicographic filename order.  Extensions and split sequences
are generated from the loaded crossed modules rather than read from files.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

from .actions import Action, make_action
from .coset import parse_word
from .errors import ParseError, ValidationError, XModLabError
from .perm import (Perm, PermGroup, Subgroup, all_subgroups, cyclic_group,
                   group_from_generators, hom, is_normal, klein_four, parse_cycles)
from .xmod import (ExtensionL, SplitSequence, XModL, extension, identity_extension,
                   product_sequence, product_trick, quotient_xmod, xmod_new)

KINDS = (".grp", ".act", ".xm")


@dataclass
class GroupEntry:
    group: PermGroup
    gen_names: list[str]
    file: Path


@dataclass
class _Parsed:
    kind: str
    name: str
    file: Path
    fields: dict = field(default_factory=dict)
    acts: list = field(default_factory=list)
    boundary: list = field(default_factory=list)
    gens: list = field(default_factory=list)


def _lines(path: Path):
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise ParseError(path, 0, f"cannot read file: {exc}") from exc
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line


def parse_file(path: str | Path) -> _Parsed:
    """Parse one file into its raw fields; no group-theoretic validation."""
    path = Path(path)
    kind = path.suffix
    if kind not in KINDS:
        raise ParseError(path, 0, f"unknown file kind {kind!r}")
    header = {".grp": "group", ".act": "action", ".xm": "xmod"}[kind]
    out = _Parsed(kind, "", path)
    for no, line in _lines(path):
        key, _, rest = line.partition(" ")
        rest = rest.strip()
        if not out.name:
            if key != header or not rest:
                raise ParseError(path, no, f"expected '{header} <name>'")
            out.name = rest
            continue
        if kind == ".grp" and key == "degree":
            try:
                out.fields["degree"] = int(rest)
            except ValueError:
                raise ParseError(path, no, "degree must be an integer") from None
            if out.fields["degree"] < 1:
                raise ParseError(path, no, "degree must be positive")
        elif kind == ".grp" and key == "gen":
            gname, _, cyc = rest.partition(" ")
            if not gname or not cyc.strip():
                raise ParseError(path, no, "expected 'gen <name> <cycles>'")
            try:
                cycles = parse_cycles(cyc.strip())
            except ValueError as exc:
                raise ParseError(path, no, str(exc)) from None
            out.gens.append((gname, cycles, no))
        elif kind != ".grp" and key in ("L", "M"):
            if not rest:
                raise ParseError(path, no, f"expected '{key} <groupname>'")
            out.fields[key] = rest
        elif kind == ".xm" and key == "boundary":
            src, arrow, word = rest.partition("->")
            if not arrow or not src.strip():
                raise ParseError(path, no, "expected 'boundary <Mgen> -> <word>'")
            out.boundary.append((src.strip(), word.strip(), no))
        elif kind != ".grp" and key == "act":
            lgen, colon, tail = rest.partition(":")
            mgen, arrow, word = tail.partition("->")
            if not colon or not arrow or not lgen.strip() or not mgen.strip():
                raise ParseError(path, no, "expected 'act <Lgen> : <Mgen> -> <word>'")
            out.acts.append((lgen.strip(), mgen.strip(), word.strip(), no))
        else:
            raise ParseError(path, no, f"unexpected line {line!r}")
    if not out.name:
        raise ParseError(path, 0, f"missing '{header}' line")
    if kind == ".grp" and "degree" not in out.fields:
        raise ParseError(path, 0, "missing 'degree' line")
    if kind != ".grp":
        for key in ("L", "M"):
            if key not in out.fields:
                raise ParseError(path, 0, f"missing '{key}' line")
    return out


def _build_group(p: _Parsed) -> GroupEntry:
    deg = p.fields["degree"]
    names, perms = [], []
    for gname, cycles, no in p.gens:
        if gname in names:
            raise ParseError(p.file, no, f"duplicate generator {gname!r}")
        try:
            perms.append(Perm.from_cycles(cycles, deg))
        except ValueError as exc:
            raise ParseError(p.file, no, str(exc)) from None
        names.append(gname)
    try:
        g = group_from_generators(deg, perms, name=p.name)
    except XModLabError as exc:
        raise ValidationError(p.name, exc) from exc
    return GroupEntry(g, names, p.file)


def _evaluate(entry: GroupEntry, text: str, p: _Parsed, no: int) -> Perm:
    try:
        letters = parse_word(text, entry.gen_names)
    except ValueError as exc:
        raise ParseError(p.file, no, str(exc)) from None
    x = entry.group.identity
    gens = entry.group.generators
    for a in letters:
        x = x * (gens[a - 1] if a > 0 else gens[-a - 1].inverse())
    return x


def _resolve(groups: dict[str, GroupEntry], p: _Parsed, key: str) -> GroupEntry:
    name = p.fields[key]
    if name not in groups:
        raise ValidationError(p.name, f"unknown group {name!r} for {key}")
    return groups[name]


def _action_images(p: _Parsed, le: GroupEntry, me: GroupEntry) -> list[list[Perm]]:
    table: dict[tuple[str, str], Perm] = {}
    for lgen, mgen, word, no in p.acts:
        if lgen not in le.gen_names:
            raise ValidationError(p.name, f"line {no}: {lgen!r} is not a generator of L")
        if mgen not in me.gen_names:
            raise ValidationError(p.name, f"line {no}: {mgen!r} is not a generator of M")
        if (lgen, mgen) in table:
            raise ValidationError(p.name, f"line {no}: duplicate action of {lgen} on {mgen}")
        table[(lgen, mgen)] = _evaluate(me, word, p, no)
    images = []
    for lgen in le.gen_names:
        row = []
        for mgen in me.gen_names:
            if (lgen, mgen) not in table:
                raise ValidationError(p.name, f"missing action of {lgen} on {mgen}")
            row.append(table[(lgen, mgen)])
        images.append(row)
    return images


def _build_action(p: _Parsed, groups: dict[str, GroupEntry]) -> Action:
    le, me = _resolve(groups, p, "L"), _resolve(groups, p, "M")
    images = _action_images(p, le, me)
    try:
        return make_action(le.group, me.group, images, name=p.name)
    except XModLabError as exc:
        raise ValidationError(p.name, exc) from exc


def _build_xmod(p: _Parsed, groups: dict[str, GroupEntry]) -> XModL:
    le, me = _resolve(groups, p, "L"), _resolve(groups, p, "M")
    bd: dict[str, Perm] = {}
    for mgen, word, no in p.boundary:
        if mgen not in me.gen_names:
            raise ValidationError(p.name, f"line {no}: {mgen!r} is not a generator of M")
        if mgen in bd:
            raise ValidationError(p.name, f"line {no}: duplicate boundary of {mgen}")
        bd[mgen] = _evaluate(le, word, p, no)
    for mgen in me.gen_names:
        if mgen not in bd:
            raise ValidationError(p.name, f"missing boundary of {mgen}")
    images = _action_images(p, le, me)
    try:
        boundary = hom(me.group, le.group, [bd[g] for g in me.gen_names])
        action = make_action(le.group, me.group, images, name=p.name)
        return xmod_new(le.group, me.group, boundary, action, name=p.name)
    except XModLabError as exc:
        raise ValidationError(p.name, exc) from exc


class Catalog:
    """Validated groups, actions and crossed modules from one directory."""

    def __init__(self, directory: Path):
        self.directory = directory
        self.group_entries: dict[str, GroupEntry] = {}
        self.actions: dict[str, Action] = {}
        self.xmods: dict[str, XModL] = {}
        self.files: dict[str, Path] = {}

    @property
    def groups(self) -> dict[str, PermGroup]:
        return {k: e.group for k, e in self.group_entries.items()}

    def _register(self, name: str, path: Path):
        if name in self.files:
            raise ValidationError(name, f"defined twice ({self.files[name]} and {path})")
        self.files[name] = path

    def _small_abelian(self, name: str, fallback) -> PermGroup:
        entry = self.group_entries.get(name)
        return entry.group if entry is not None else fallback()

    @cached_property
    def trick_groups(self) -> list[PermGroup]:
        """The abelian groups used by the product construction."""
        z2 = self._small_abelian("Z2", lambda: cyclic_group(2))
        z3 = self._small_abelian("Z3", lambda: cyclic_group(3))
        v4 = self._small_abelian("V4", klein_four)
        return [z2, z3, v4]

    @cached_property
    def extensions(self) -> dict[str, ExtensionL]:
        """Generated extensions, in crossed-module name order:

        identity extensions, quotients by every nontrivial L-invariant
        subgroup of the boundary kernel, and the product construction with
        ``Z2`` (plus ``Z3`` and ``V4`` when ``|M| <= 12``).
        """
        out: dict[str, ExtensionL] = {}
        z2, z3, v4 = self.trick_groups
        for name in sorted(self.xmods):
            xm = self.xmods[name]
            out[f"id:{name}"] = identity_extension(xm)
            for i, n in enumerate(invariant_kernel_subgroups(xm)):
                q, proj = quotient_xmod(xm, n, name=f"{name}/N{i}")
                out[f"quot:{name}/N{i}"] = extension(xm, q, proj)
            tricks = [z2] if xm.top.order > 12 else [z2, z3, v4]
            for a in tricks:
                out[f"trick:{a.name}x{name}"] = product_trick(xm, a).extension
        return out

    @cached_property
    def split_sequences(self) -> dict[str, SplitSequence]:
        """Product sequences: every trick group with every crossed module, and
        every catalog action on an abelian group with every crossed module over
        the same base for which the product is again a crossed module."""
        out: dict[str, SplitSequence] = {}
        for name in sorted(self.xmods):
            xm = self.xmods[name]
            if xm.top.order > 24:
                continue
            for a in self.trick_groups:
                px = product_trick(xm, a)
                out[f"trick:{a.name}x{name}"] = SplitSequence(px.extension, px.section,
                                                              name=f"trick:{a.name}x{name}")
        for aname in sorted(self.actions):
            act = self.actions[aname]
            if not act.M.is_abelian or act.is_trivial():
                continue
            for name in sorted(self.xmods):
                xm = self.xmods[name]
                if xm.base is not act.L or xm.top.order > 24:
                    continue
                try:
                    seq = product_sequence(act, xm, name=f"{aname}x{name}")
                except XModLabError:
                    continue
                out[f"semi:{aname}x{name}"] = seq
        return out


def invariant_kernel_subgroups(xm: XModL) -> list[Subgroup]:
    """Nontrivial L-invariant subgroups of the boundary kernel, ordered by
    order and then by element indices."""
    k = xm.boundary_kernel
    if k.is_trivial():
        return []
    out = []
    for s in all_subgroups(xm.top):
        if s.is_trivial() or not s <= k:
            continue
        if is_normal(s) and all(xm.act(l, g) in s for l in xm.base.generators for g in s.gens):
            out.append(s)
    return out


def _files(directory: Path, kind: str) -> list[Path]:
    return sorted(p for p in directory.iterdir() if p.is_file() and p.suffix == kind)


def load_catalog(directory: str | Path) -> Catalog:
    """Parse and validate every catalog file in ``directory``."""
    directory = Path(directory)
    if not directory.is_dir():
        raise ParseError(directory, 0, "catalog directory does not exist")
    cat = Catalog(directory)
    for path in _files(directory, ".grp"):
        p = parse_file(path)
        cat._register(p.name, path)
        cat.group_entries[p.name] = _build_group(p)
    for path in _files(directory, ".act"):
        p = parse_file(path)
        cat._register(p.name, path)
        cat.actions[p.name] = _build_action(p, cat.group_entries)
    for path in _files(directory, ".xm"):
        p = parse_file(path)
        cat._register(p.name, path)
        cat.xmods[p.name] = _build_xmod(p, cat.group_entries)
    return cat


def load_single(path: str | Path) -> tuple[Catalog, str, object]:
    """Load one file, resolving group references from the groups beside it."""
    path = Path(path)
    p = parse_file(path)
    cat = Catalog(path.parent)
    if p.kind == ".grp":
        entry = _build_group(p)
        cat.group_entries[p.name] = entry
        return cat, p.name, entry.group
    for gpath in _files(path.parent, ".grp"):
        gp = parse_file(gpath)
        cat.group_entries[gp.name] = _build_group(gp)
    if p.kind == ".act":
        obj = _build_action(p, cat.group_entries)
        cat.actions[p.name] = obj
    else:
        obj = _build_xmod(p, cat.group_entries)
        cat.xmods[p.name] = obj
    return cat, p.name, obj
