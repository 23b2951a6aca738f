"""Finite presentations and Todd-Coxeter coset enumeration over the trivial subgroup.

Two strategies share one compiled core: ``"hlt"`` scans every relator at each
coset in order and fills gaps; ``"felsch"`` fills the first undefined table
entry and closes it under deductions only. Both process a deduction stack and
merge coincidences in place. Table rows grow on demand up to ``coset_cap``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Sequence

import numba
import numpy as np

from .errors import CosetCapExceeded
from .perm import Perm, PermGroup, _bfs_closure, group_from_generators

DEFAULT_COSET_CAP = 200000
# Bytes the coset table may occupy before enumeration gives up.
TABLE_MEMORY_LIMIT = 1_500_000_000

# Letters are signed generator numbers: +(g+1) for generator g, -(g+1) for its inverse.


def free_reduce(word: Sequence[int]) -> tuple[int, ...]:
    out: list[int] = []
    for a in word:
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


def cyclic_reduce(word: Sequence[int]) -> tuple[int, ...]:
    w = list(free_reduce(word))
    while len(w) >= 2 and w[0] == -w[-1]:
        w = w[1:-1]
    return tuple(w)


def invert_word(word: Sequence[int]) -> tuple[int, ...]:
    return tuple(-a for a in reversed(word))


@dataclass(frozen=True)
class Presentation:
    n_generators: int
    relators: tuple[tuple[int, ...], ...]
    names: tuple[str, ...] = field(default=())

    def __post_init__(self):
        rels = []
        for r in self.relators:
            for a in r:
                if a == 0 or abs(a) > self.n_generators:
                    raise ValueError(f"relator letter {a} does not index a generator")
            cr = cyclic_reduce(r)
            if cr:
                rels.append(cr)
        object.__setattr__(self, "relators", tuple(rels))
        if not self.names:
            object.__setattr__(self, "names", tuple(f"g{i}" for i in range(self.n_generators)))

    def word_to_text(self, word: Sequence[int]) -> str:
        parts = [self.names[abs(a) - 1] + ("^-1" if a < 0 else "") for a in word]
        return " ".join(parts) if parts else "1"

    def to_text(self) -> str:
        """Debug dump, one ``rel <word>`` line per relator."""
        lines = [f"gens {' '.join(self.names)}"]
        lines += [f"rel {self.word_to_text(r)}" for r in self.relators]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Presentation":
        names: list[str] = []
        rels = []
        for raw in text.splitlines():
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, _, rest = line.partition(" ")
            if key == "gens":
                names = rest.split()
            elif key == "rel":
                rels.append(parse_word(rest, names))
            else:
                raise ValueError(f"unknown line {raw!r}")
        return cls(len(names), tuple(rels), tuple(names))


_TOKEN = re.compile(r"\s*([A-Za-z_][A-Za-z0-9_]*)\s*(\^\s*(-?\d+))?")


def _split_names(chunk: str, lookup: dict[str, int]) -> list[int] | None:
    """Split a juxtaposed run such as ``abA`` into known names, longest first."""
    if chunk in lookup:
        return [lookup[chunk]]
    for cut in range(len(chunk) - 1, 0, -1):
        head = chunk[:cut]
        if head in lookup:
            rest = _split_names(chunk[cut:], lookup)
            if rest is not None:
                return [lookup[head]] + rest
    return None


def parse_word(text: str, names: Sequence[str]) -> tuple[int, ...]:
    """Parse ``a b^-1 c^2`` (or juxtaposed ``ab^-1c^2``) over ``names`` into signed letters."""
    lookup = {n: i + 1 for i, n in enumerate(names)}
    text = text.strip()
    if text in ("", "1"):
        return ()
    out: list[int] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        parts = _split_names(m.group(1), lookup) if m else None
        if parts is None:
            raise ValueError(f"bad word {text!r} at {pos}")
        e = int(m.group(3)) if m.group(2) else 1
        out.extend(parts[:-1])
        g = parts[-1]
        out.extend([g if e > 0 else -g] * abs(e))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return tuple(out)


@dataclass
class CosetTable:
    """Compacted table: ``rows[c, 2g]`` is ``c·g`` and ``rows[c, 2g+1]`` is ``c·g^-1``."""

    rows: np.ndarray
    complete: bool

    @property
    def n_cosets(self) -> int:
        return self.rows.shape[0]


@dataclass
class EnumerationResult:
    group: PermGroup
    gen_perms: list[Perm]
    table: CosetTable
    max_defined: int


# ---- compiled core -----------------------------------------------------------

_N_DEFINED, _ALPHA, _COL, _REL, _DED_TOP, _OVERFLOW, _N_LIVE = range(7)
_DONE, _NEED_SPACE, _CAP = 0, 1, 2


@numba.njit(cache=True)
def _rep(parent, c):
    r = c
    while parent[r] != r:
        r = parent[r]
    while parent[c] != r:
        nxt = parent[c]
        parent[c] = r
        c = nxt
    return r


@numba.njit(cache=True)
def _merge(parent, queue, qn, a, b):
    ra = _rep(parent, a)
    rb = _rep(parent, b)
    if ra == rb:
        return qn
    lo = min(ra, rb)
    hi = max(ra, rb)
    parent[hi] = lo
    queue[qn] = hi
    return qn + 1


@numba.njit(cache=True)
def _push(ded_c, ded_x, st, c, x):
    top = st[_DED_TOP]
    if top < ded_c.shape[0]:
        ded_c[top] = c
        ded_x[top] = x
        st[_DED_TOP] = top + 1
    else:
        st[_OVERFLOW] = 1


@numba.njit(cache=True)
def _coincidence(table, parent, queue, ded_c, ded_x, st, a, b):
    ncols = table.shape[1]
    qn = _merge(parent, queue, 0, a, b)
    i = 0
    while i < qn:
        g = queue[i]
        i += 1
        for x in range(ncols):
            d = table[g, x]
            if d >= 0:
                xi = x ^ 1
                table[d, xi] = -1
                mu = _rep(parent, g)
                nu = _rep(parent, d)
                if table[mu, x] >= 0:
                    qn = _merge(parent, queue, qn, nu, table[mu, x])
                elif table[nu, xi] >= 0:
                    qn = _merge(parent, queue, qn, mu, table[nu, xi])
                else:
                    table[mu, x] = nu
                    table[nu, xi] = mu
                    _push(ded_c, ded_x, st, mu, x)
    st[_N_LIVE] -= qn


@numba.njit(cache=True)
def _scan(table, parent, queue, ded_c, ded_x, st, letters, start, length, alpha):
    f = alpha
    i = 0
    while i < length:
        nx = table[f, letters[start + i]]
        if nx < 0:
            break
        f = nx
        i += 1
    if i == length:
        if f != alpha:
            _coincidence(table, parent, queue, ded_c, ded_x, st, f, alpha)
        return
    b = alpha
    j = length - 1
    while j >= i:
        nx = table[b, letters[start + j] ^ 1]
        if nx < 0:
            break
        b = nx
        j -= 1
    if j < i:
        _coincidence(table, parent, queue, ded_c, ded_x, st, f, b)
    elif j == i:
        col = letters[start + i]
        table[f, col] = b
        table[b, col ^ 1] = f
        _push(ded_c, ded_x, st, f, col)


@numba.njit(cache=True)
def _define(table, parent, st, ded_c, ded_x, c, x):
    beta = st[_N_DEFINED]
    st[_N_DEFINED] = beta + 1
    st[_N_LIVE] += 1
    parent[beta] = beta
    table[c, x] = beta
    table[beta, x ^ 1] = c
    _push(ded_c, ded_x, st, c, x)
    return beta


@numba.njit(cache=True)
def _scan_and_fill(table, parent, queue, ded_c, ded_x, st, letters, start, length, alpha):
    f = alpha
    b = alpha
    i = 0
    j = length - 1
    while True:
        while i <= j:
            nx = table[f, letters[start + i]]
            if nx < 0:
                break
            f = nx
            i += 1
        if i > j:
            if f != b:
                _coincidence(table, parent, queue, ded_c, ded_x, st, f, b)
            return
        while j >= i:
            nx = table[b, letters[start + j] ^ 1]
            if nx < 0:
                break
            b = nx
            j -= 1
        if j < i:
            _coincidence(table, parent, queue, ded_c, ded_x, st, f, b)
            return
        if j == i:
            col = letters[start + i]
            table[f, col] = b
            table[b, col ^ 1] = f
            _push(ded_c, ded_x, st, f, col)
            return
        _define(table, parent, st, ded_c, ded_x, f, letters[start + i])


@numba.njit(cache=True)
def _process_deductions(table, parent, queue, ded_c, ded_x, st,
                        letters, wstart, wlen, col_ptr, col_words):
    while st[_DED_TOP] > 0:
        top = st[_DED_TOP] - 1
        st[_DED_TOP] = top
        c = ded_c[top]
        x = ded_x[top]
        if parent[c] != c:
            continue
        for k in range(col_ptr[x], col_ptr[x + 1]):
            if parent[c] != c:
                break
            w = col_words[k]
            _scan(table, parent, queue, ded_c, ded_x, st, letters, wstart[w], wlen[w], c)
        if parent[c] != c:
            continue
        d = table[c, x]
        if d < 0:
            continue
        xi = x ^ 1
        for k in range(col_ptr[xi], col_ptr[xi + 1]):
            if parent[d] != d:
                break
            w = col_words[k]
            _scan(table, parent, queue, ded_c, ded_x, st, letters, wstart[w], wlen[w], d)


@numba.njit(cache=True)
def _lookahead(table, parent, queue, ded_c, ded_x, st, letters, wstart, wlen,
               rel_words, col_ptr, col_words):
    """Scan every relator at every live coset; returns True if the table changed."""
    changed = False
    n = st[_N_DEFINED]
    for alpha in range(n):
        for r in range(rel_words.shape[0]):
            if parent[alpha] != alpha:
                break
            w = rel_words[r]
            before_live = st[_N_LIVE]
            before_top = st[_DED_TOP]
            _scan(table, parent, queue, ded_c, ded_x, st, letters, wstart[w], wlen[w], alpha)
            if st[_N_LIVE] != before_live or st[_DED_TOP] != before_top:
                changed = True
            _process_deductions(table, parent, queue, ded_c, ded_x, st,
                                letters, wstart, wlen, col_ptr, col_words)
    return changed


@numba.njit(cache=True)
def _run(table, parent, queue, ded_c, ded_x, st, letters, wstart, wlen,
         rel_words, col_ptr, col_words, felsch, cap):
    ncols = table.shape[1]
    alloc = table.shape[0]
    maxlen = 0
    for r in range(rel_words.shape[0]):
        maxlen = max(maxlen, wlen[rel_words[r]])
    alpha = st[_ALPHA]
    while alpha < st[_N_DEFINED]:
        if parent[alpha] == alpha:
            if not felsch:
                r = st[_REL]
                while r < rel_words.shape[0]:
                    if parent[alpha] != alpha:
                        break
                    if st[_N_DEFINED] + maxlen > alloc:
                        st[_ALPHA] = alpha
                        st[_REL] = r
                        return _NEED_SPACE
                    if st[_N_DEFINED] + maxlen > cap:
                        return _CAP
                    w = rel_words[r]
                    _scan_and_fill(table, parent, queue, ded_c, ded_x, st,
                                   letters, wstart[w], wlen[w], alpha)
                    _process_deductions(table, parent, queue, ded_c, ded_x, st,
                                        letters, wstart, wlen, col_ptr, col_words)
                    r += 1
                st[_REL] = 0
            x = st[_COL]
            while x < ncols and parent[alpha] == alpha:
                if table[alpha, x] < 0:
                    if st[_N_DEFINED] + 1 > alloc:
                        st[_ALPHA] = alpha
                        st[_COL] = x
                        return _NEED_SPACE
                    if st[_N_DEFINED] + 1 > cap:
                        return _CAP
                    _define(table, parent, st, ded_c, ded_x, alpha, x)
                    _process_deductions(table, parent, queue, ded_c, ded_x, st,
                                        letters, wstart, wlen, col_ptr, col_words)
                x += 1
            st[_COL] = 0
        alpha += 1
        st[_ALPHA] = alpha
    return _DONE


# ---- Python driver -----------------------------------------------------------

def _compile_words(p: Presentation):
    """Relators and all cyclic conjugates of relators and inverses, as table columns."""

    def to_cols(word):
        return [2 * (a - 1) if a > 0 else 2 * (-a - 1) + 1 for a in word]

    words: list[tuple[int, ...]] = []
    index: dict[tuple[int, ...], int] = {}

    def add(w):
        w = tuple(w)
        if w not in index:
            index[w] = len(words)
            words.append(w)
        return index[w]

    rel_words = [add(to_cols(r)) for r in p.relators]
    conj_ids = set()
    for r in p.relators:
        for base in (r, invert_word(r)):
            cols = to_cols(base)
            for k in range(len(cols)):
                conj_ids.add(add(cols[k:] + cols[:k]))
    ncols = 2 * p.n_generators
    by_col: list[list[int]] = [[] for _ in range(ncols)]
    for w in sorted(conj_ids):
        by_col[words[w][0]].append(w)
    col_ptr = np.zeros(ncols + 1, dtype=np.int64)
    for x in range(ncols):
        col_ptr[x + 1] = col_ptr[x] + len(by_col[x])
    col_words = np.array([w for lst in by_col for w in lst], dtype=np.int64)
    wlen = np.array([len(w) for w in words], dtype=np.int64)
    wstart = np.zeros(len(words), dtype=np.int64)
    if len(words):
        wstart[1:] = np.cumsum(wlen)[:-1]
    letters = np.array([c for w in words for c in w], dtype=np.int64)
    return (letters, wstart, wlen, np.array(rel_words, dtype=np.int64), col_ptr, col_words)


def enumerate_cosets(p: Presentation, coset_cap: int = DEFAULT_COSET_CAP,
                     strategy: str = "hlt") -> tuple[CosetTable, int]:
    """Enumerate cosets of the trivial subgroup; returns the compacted table."""
    if coset_cap < 1:
        raise ValueError("coset_cap must be at least 1")
    if strategy not in ("hlt", "felsch"):
        raise ValueError(f"unknown strategy {strategy!r}")
    ncols = 2 * p.n_generators
    if ncols == 0:
        return CosetTable(np.zeros((1, 0), dtype=np.int32), True), 1
    letters, wstart, wlen, rel_words, col_ptr, col_words = _compile_words(p)
    row_bytes = 4 * ncols
    alloc = max(2, min(coset_cap, 1024, TABLE_MEMORY_LIMIT // row_bytes))
    table = np.full((alloc, ncols), -1, dtype=np.int32)
    parent = np.zeros(alloc, dtype=np.int64)
    queue = np.zeros(alloc, dtype=np.int64)
    ded_size = 1 << 20
    ded_c = np.zeros(ded_size, dtype=np.int64)
    ded_x = np.zeros(ded_size, dtype=np.int64)
    st = np.zeros(7, dtype=np.int64)
    st[_N_DEFINED] = 1
    st[_N_LIVE] = 1
    felsch = strategy == "felsch"
    while True:
        status = _run(table, parent, queue, ded_c, ded_x, st, letters, wstart, wlen,
                      rel_words, col_ptr, col_words, felsch, coset_cap)
        if status == _CAP:
            raise CosetCapExceeded(f"coset enumeration exceeded {coset_cap} cosets")
        if status == _NEED_SPACE:
            new_alloc = min(coset_cap, 2 * alloc)
            if new_alloc <= alloc:
                raise CosetCapExceeded(f"coset enumeration exceeded {coset_cap} cosets")
            if new_alloc * row_bytes > TABLE_MEMORY_LIMIT:
                raise CosetCapExceeded(
                    f"coset table would need {new_alloc} rows of {ncols} columns")
            grown = np.full((new_alloc, ncols), -1, dtype=np.int32)
            grown[:alloc] = table
            table = grown
            parent = np.concatenate([parent, np.zeros(new_alloc - alloc, dtype=np.int64)])
            queue = np.zeros(new_alloc, dtype=np.int64)
            alloc = new_alloc
            continue
        if st[_OVERFLOW]:
            st[_OVERFLOW] = 0
            if _lookahead(table, parent, queue, ded_c, ded_x, st, letters, wstart, wlen,
                          rel_words, col_ptr, col_words):
                st[_ALPHA] = 0
                continue
        n = int(st[_N_DEFINED])
        live = np.flatnonzero(parent[:n] == np.arange(n))
        sub = table[live]
        if (sub < 0).any():
            st[_ALPHA] = 0
            continue
        relabel = np.full(n, -1, dtype=np.int64)
        relabel[live] = np.arange(len(live))
        rows = relabel[sub].astype(np.int32)
        return CosetTable(rows, True), n


def verify_table(p: Presentation, table: CosetTable) -> bool:
    """Every relator traced from every coset returns to that coset."""
    rows = table.rows
    for r in p.relators:
        cols = [2 * (a - 1) if a > 0 else 2 * (-a - 1) + 1 for a in r]
        cur = np.arange(rows.shape[0])
        for c in cols:
            cur = rows[cur, c]
        if not (cur == np.arange(rows.shape[0])).all():
            return False
    return True


def todd_coxeter(p: Presentation, coset_cap: int = DEFAULT_COSET_CAP,
                 strategy: str = "hlt") -> EnumerationResult:
    """Regular permutation representation of the finite group presented by ``p``.

    ``gen_perms[g]`` represents abstract generator ``g``; the returned group is
    generated by a non-redundant subset of them, in generator order.
    """
    table, max_defined = enumerate_cosets(p, coset_cap, strategy)
    n = table.n_cosets
    # Column 2g+1 is right multiplication by g^-1; as functions these compose
    # like the generators themselves.
    gen_perms = [Perm(table.rows[:, 2 * g + 1].tolist()) for g in range(p.n_generators)]
    identity = Perm.identity(n)
    chosen: list[Perm] = []
    current = {identity}
    for g in dict.fromkeys(gen_perms):
        if len(current) == n:
            break
        if g not in current:
            chosen.append(g)
            current = set(_bfs_closure(identity, chosen, n))
    group = group_from_generators(n, chosen, cap=n)
    if group.order != n:
        raise AssertionError("regular representation has wrong order")
    return EnumerationResult(group, gen_perms, table, max_defined)


def presentation_of(group: PermGroup) -> Presentation:
    """A presentation on the group's generators read off its Cayley graph.

    Each edge ``g -s-> gs`` contributes ``w(g) s w(gs)^-1``, where ``w`` is the
    breadth-first spanning-tree word; these relators define the group.
    """
    gens = group.generators
    words = {group.identity: ()}
    order = [group.identity]
    i = 0
    while i < len(order):
        g = order[i]
        i += 1
        for j, s in enumerate(gens):
            h = g * s
            if h not in words:
                words[h] = words[g] + (j + 1,)
                order.append(h)
    rels = []
    for g in order:
        for j, s in enumerate(gens):
            rels.append(free_reduce(words[g] + (j + 1,) + invert_word(words[g * s])))
    names = tuple(f"g{j}" for j in range(len(gens)))
    return Presentation(len(gens), tuple(r for r in rels if r), names)
