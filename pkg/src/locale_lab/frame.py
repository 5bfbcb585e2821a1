"""Finite frames: bounded distributive lattices with all tables precomputed.

A Frame is immutable once built.  ``validate_frame`` is the only public
constructor: it closes the input relation reflexively and transitively,
rejects anything that is not a bounded distributive lattice, and fills the
meet / join / Heyting-arrow tables.  Elements are dense ints; every element
set elsewhere in the package is a bitmask over those ints.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

import numpy as np

from ._bits import iter_bits, row_masks
from .errors import (BoundExceeded, FrameFormatError, InternalInconsistency,
                     NoBoundedLattice, NotAPartialOrder, NotDistributive)

DEFAULT_MAX_FRAME = 32
DISTRIBUTIVITY_SCAN_LIMIT = 512
CANONICAL_NODE_BUDGET = 200_000
HOM_NODE_BUDGET = 1_000_000


class Frame:
    """Bounded distributive lattice on elements 0..n-1.

    leq[i, j] is i <= j.  Tables are n x n int arrays.  down_masks[i] /
    up_masks[i] are bitmasks of the principal ideal / filter of i.
    """

    __slots__ = ("n", "leq", "bottom", "top", "meet_table", "join_table",
                 "arrow_table", "labels", "down_masks", "up_masks", "pops",
                 "full_mask", "_label_index", "_canon", "_covers")

    def __init__(self, leq, bottom, top, meet_table, join_table, arrow_table,
                 labels):
        self.n = int(leq.shape[0])
        self.leq = leq
        self.bottom = bottom
        self.top = top
        self.meet_table = meet_table
        self.join_table = join_table
        self.arrow_table = arrow_table
        self.labels = tuple(labels)
        self.down_masks = row_masks(leq.T)
        self.up_masks = row_masks(leq)
        self.pops = tuple(int(leq[:, i].sum()) for i in range(self.n))
        self.full_mask = (1 << self.n) - 1
        self._label_index = {lb: i for i, lb in enumerate(self.labels)}
        self._canon = None
        self._covers = None
        for arr in (leq, meet_table, join_table, arrow_table):
            arr.setflags(write=False)

    # table lookups returned as plain ints
    def le(self, a: int, b: int) -> bool:
        return bool(self.leq[a, b])

    def meet(self, a: int, b: int) -> int:
        return int(self.meet_table[a, b])

    def join(self, a: int, b: int) -> int:
        return int(self.join_table[a, b])

    def arrow(self, a: int, b: int) -> int:
        return int(self.arrow_table[a, b])

    def meet_all(self, elems) -> int:
        out = self.top
        for x in elems:
            out = int(self.meet_table[out, x])
        return out

    def join_all(self, elems) -> int:
        out = self.bottom
        for x in elems:
            out = int(self.join_table[out, x])
        return out

    def meet_mask(self, mask: int) -> int:
        return self.meet_all(iter_bits(mask))

    def join_mask(self, mask: int) -> int:
        return self.join_all(iter_bits(mask))

    def index(self, label: str) -> int:
        try:
            return self._label_index[label]
        except KeyError:
            raise FrameFormatError(f"unknown element label {label!r}") from None

    @property
    def is_trivial(self) -> bool:
        return self.n == 1

    @property
    def covers(self) -> np.ndarray:
        if self._covers is None:
            strict = self.leq & ~np.eye(self.n, dtype=bool)
            c = strict & ~(strict @ strict)
            c.setflags(write=False)
            self._covers = c
        return self._covers

    def __repr__(self):
        return f"Frame(n={self.n}, bottom={self.labels[self.bottom]!r}, " \
               f"top={self.labels[self.top]!r})"


# --- construction -----------------------------------------------------------


def _as_relation_matrix(relation, n=None) -> np.ndarray:
    if isinstance(relation, np.ndarray):
        if relation.ndim != 2 or relation.shape[0] != relation.shape[1]:
            raise FrameFormatError("relation matrix must be square")
        return relation.astype(bool).copy()
    pairs = list(relation)
    size = n
    if size is None:
        size = max((max(i, j) for i, j in pairs), default=-1) + 1
    m = np.zeros((size, size), dtype=bool)
    for i, j in pairs:
        if not (0 <= i < size and 0 <= j < size):
            raise FrameFormatError(f"pair ({i}, {j}) out of range for n={size}")
        m[i, j] = True
    return m


def _reflexive_transitive_closure(m: np.ndarray) -> np.ndarray:
    n = m.shape[0]
    out = m | np.eye(n, dtype=bool)
    for k in range(n):
        out |= np.outer(out[:, k], out[k, :])
    return out


def validate_frame(relation, labels=None, *, n=None,
                   max_elements: int | None = DEFAULT_MAX_FRAME) -> Frame:
    """Build a Frame from an order relation (matrix or (i, j) pairs).

    The relation may be given as covers; its reflexive-transitive closure
    is computed here.  Raises NotAPartialOrder, NoBoundedLattice,
    NotDistributive or BoundExceeded.
    """
    m = _as_relation_matrix(relation, n=n)
    size = m.shape[0]
    if size == 0:
        raise NoBoundedLattice("a frame needs at least one element")
    if max_elements is not None and size > max_elements:
        raise BoundExceeded(f"{size} elements exceeds the frame cap "
                            f"{max_elements}", bound=max_elements)
    if labels is None:
        labels = tuple(f"e{i}" for i in range(size))
    else:
        labels = tuple(str(x) for x in labels)
        if len(labels) != size:
            raise FrameFormatError("label count does not match element count")
        if len(set(labels)) != size:
            raise FrameFormatError("element labels must be unique")
    leq = _reflexive_transitive_closure(m)
    sym = leq & leq.T & ~np.eye(size, dtype=bool)
    if sym.any():
        i, j = map(int, np.argwhere(sym)[0])
        raise NotAPartialOrder(
            f"cycle through {labels[i]!r} and {labels[j]!r}", witness=(i, j))
    return _build_frame(leq, labels)


def _distributivity_scan(meet: np.ndarray, join: np.ndarray, labels) -> None:
    'Check every triple; the witness is the lexicographically first failure.'
    n = meet.shape[0]
    for i in range(n):
        lhs = meet[i, join]
        mi = meet[i]
        rhs = join[mi[:, None], mi[None, :]]
        bad = lhs != rhs
        if bad.any():
            j, k = map(int, np.argwhere(bad)[0])
            raise NotDistributive((i, j, k),
                                  labels=(labels[i], labels[j], labels[k]))


def _distributive_by_counting(leq: np.ndarray) -> bool:
    """Distributive iff x -> {irreducibles below x} is injective and the
    irreducible poset has exactly n downsets.

    Injectivity plus the count force the map onto all downsets, and with
    x = join of the irreducibles below it the map is an order isomorphism
    onto a downset lattice.  Cubic-cost triple scans stay affordable only
    on small lattices; this is the big-lattice route.
    """
    n = leq.shape[0]
    strict = leq & ~np.eye(n, dtype=bool)
    covers = strict & ~(strict @ strict)
    irr = np.flatnonzero(covers.sum(axis=0) == 1)
    if len(irr) == 0:
        return n == 1
    below = leq[irr, :]                     # below[k, x]: irr[k] <= x
    packed = np.packbits(below.T, axis=1)
    if len(np.unique(packed, axis=0)) != n:
        return False
    jleq = leq[np.ix_(irr, irr)]
    order = np.argsort(jleq.sum(axis=0), kind="stable")
    downs = [0]
    for e in order:
        need = 0
        for x in range(len(irr)):
            if jleq[x, e] and x != e:
                need |= 1 << x
        downs += [d | 1 << int(e) for d in downs if d & need == need]
        if len(downs) > n:
            return False
    return len(downs) == n


def _tables_by_irreducibles(leq: np.ndarray):
    """Meet/join/arrow tables through the downset-lattice picture.

    Once the counting check certifies the order as the downset lattice of
    its own irreducible poset, each element is the uint64 mask of the
    irreducibles below it: meet and join are mask AND / OR, and the arrow
    x -> y is the largest downset avoiding the part of x outside y.  All
    cubic loops collapse to outer mask operations plus index lookups.
    Returns None when the certificate fails or needs more than 64 bits;
    callers then fall back to the elementwise build.
    """
    n = leq.shape[0]
    if not _distributive_by_counting(leq):
        return None
    strict = leq & ~np.eye(n, dtype=bool)
    covers = strict & ~(strict @ strict)
    irr = np.flatnonzero(covers.sum(axis=0) == 1)
    if len(irr) > 64:
        return None
    jmu = np.array(row_masks(leq[irr, :].T), dtype=np.uint64)
    order = np.argsort(jmu, kind="stable")
    ordered = jmu[order]

    def lookup(masks):
        pos = np.minimum(np.searchsorted(ordered, masks), n - 1)
        if (ordered[pos] != masks).any():
            raise InternalInconsistency("mask outside the downset lattice")
        return order[pos].astype(np.int32)

    meet = lookup(np.bitwise_and.outer(jmu, jmu))
    join = lookup(np.bitwise_or.outer(jmu, jmu))
    full = np.uint64((1 << len(irr)) - 1)
    allowed = np.bitwise_or.outer(jmu ^ full, jmu)   # ~x | y inside the bits
    jdown = np.array(row_masks(leq[np.ix_(irr, irr)].T), dtype=np.uint64)
    amask = np.zeros((n, n), dtype=np.uint64)
    for p in range(len(irr)):
        amask[allowed & jdown[p] == jdown[p]] |= np.uint64(1 << p)
    arrow = lookup(amask)
    return meet, join, arrow


def _build_frame(leq: np.ndarray, labels) -> Frame:
    'Tables from a validated partial order.  Shared with the tensor builder.'
    n = leq.shape[0]
    bottoms = np.flatnonzero(leq.all(axis=1))
    tops = np.flatnonzero(leq.all(axis=0))
    if len(bottoms) != 1 or len(tops) != 1:
        raise NoBoundedLattice("order has no least or no greatest element")
    bottom, top = int(bottoms[0]), int(tops[0])

    if n > DISTRIBUTIVITY_SCAN_LIMIT:
        tables = _tables_by_irreducibles(leq)
        if tables is not None:
            meet, join, arrow = tables
            return Frame(leq, bottom, top, meet, join, arrow, labels)

    pops = leq.sum(axis=0).astype(np.int64)
    meet = np.empty((n, n), dtype=np.int32)
    join = np.empty((n, n), dtype=np.int32)
    for i in range(n):
        low = leq[:, i:i + 1] & leq                # low[k, j]: k <= i, k <= j
        cand = np.where(low, pops[:, None], -1).argmax(axis=0)
        bad = low & ~leq[:, cand]
        if bad.any():
            j = int(np.argwhere(bad.any(axis=0))[0][0])
            raise NoBoundedLattice(
                f"elements {labels[i]!r}, {labels[j]!r} have no meet",
                witness=(i, j))
        meet[i] = cand
        upp = leq[i] & leq                          # upp[j, k]: i <= k, j <= k
        cand = np.where(upp, pops[None, :], n + 1).argmin(axis=1)
        bad = upp & ~leq[cand]
        if bad.any():
            j = int(np.argwhere(bad.any(axis=1))[0][0])
            raise NoBoundedLattice(
                f"elements {labels[i]!r}, {labels[j]!r} have no join",
                witness=(i, j))
        join[i] = cand

    _distributivity_scan(meet, join, labels)

    # arrow[i, j] = largest c with c /\ i <= j; the candidate set is closed
    # under joins once distributivity holds, so the popcount argmax is it
    arrow = np.empty((n, n), dtype=np.int32)
    for i in range(n):
        cond = leq[meet[:, i], :]
        arrow[i] = np.where(cond, pops[:, None], -1).argmax(axis=0)

    return Frame(leq, bottom, top, meet, join, arrow, labels)


# --- JSON form ---------------------------------------------------------------


def load_frame_json(obj: dict, *,
                    max_elements: int | None = DEFAULT_MAX_FRAME) -> Frame:
    'Frame from {"elements": [labels], "leq": [[a, b], ...]} (covers allowed).'
    if not isinstance(obj, dict) or "elements" not in obj or "leq" not in obj:
        raise FrameFormatError('expected {"elements": [...], "leq": [...]}')
    labels = obj["elements"]
    if not isinstance(labels, list) or not all(isinstance(x, str)
                                               for x in labels):
        raise FrameFormatError('"elements" must be a list of strings')
    if len(set(labels)) != len(labels):
        raise FrameFormatError("element labels must be unique")
    index = {lb: i for i, lb in enumerate(labels)}
    pairs = []
    for entry in obj["leq"]:
        if (not isinstance(entry, (list, tuple)) or len(entry) != 2
                or entry[0] not in index or entry[1] not in index):
            raise FrameFormatError(f'bad "leq" entry: {entry!r}')
        pairs.append((index[entry[0]], index[entry[1]]))
    return validate_frame(pairs, labels, n=len(labels),
                          max_elements=max_elements)


def frame_to_json(frame: Frame) -> dict:
    'Covers only; round-trips through load_frame_json.'
    cov = frame.covers
    pairs = [[frame.labels[i], frame.labels[j]]
             for i, j in np.argwhere(cov)]
    return {"elements": list(frame.labels), "leq": pairs}


# --- Heyting structure -------------------------------------------------------


def heyting_arrow(frame: Frame, a: int, b: int) -> int:
    return frame.arrow(a, b)


def pseudocomplement(frame: Frame, a: int) -> int:
    return frame.arrow(a, frame.bottom)


def primes(frame: Frame) -> tuple[int, ...]:
    'Elements p != 1 with x /\\ y <= p only if x <= p or y <= p.'
    out = []
    for p in range(frame.n):
        if p == frame.top:
            continue
        under = frame.leq[frame.meet_table, p]
        above = ~frame.leq[:, p]
        if not (under & above[:, None] & above[None, :]).any():
            out.append(p)
    return tuple(out)


def booleanization(frame: Frame) -> frozenset[int]:
    'Image of double pseudocomplementation; cross-checked two ways.'
    psc = frame.arrow_table[:, frame.bottom]
    via_image = frozenset(int(x) for x in psc)
    via_fixed = frozenset(i for i in range(frame.n) if int(psc[psc[i]]) == i)
    if via_image != via_fixed:
        raise InternalInconsistency(
            "pseudocomplement image disagrees with its fixed points")
    return via_image


def is_irreducible(frame: Frame) -> bool:
    return (booleanization(frame) == {frame.bottom, frame.top}
            and frame.bottom != frame.top)


# --- homomorphisms -----------------------------------------------------------


@dataclass(frozen=True)
class FrameHom:
    'Map preserving bottom, top and all binary meets and joins.'
    source: Frame
    target: Frame
    mapping: tuple[int, ...]

    def __call__(self, a: int) -> int:
        return self.mapping[a]


def _verify_hom(src: Frame, dst: Frame, f: tuple[int, ...]) -> bool:
    if f[src.bottom] != dst.bottom or f[src.top] != dst.top:
        return False
    fa = np.asarray(f, dtype=np.int32)
    if not (fa[src.meet_table] == dst.meet_table[fa[:, None],
                                                 fa[None, :]]).all():
        return False
    return bool((fa[src.join_table] == dst.join_table[fa[:, None],
                                                      fa[None, :]]).all())


def enumerate_homs(src: Frame, dst: Frame, *,
                   node_budget: int = HOM_NODE_BUDGET) -> list[FrameHom]:
    """All frame homomorphisms src -> dst, in lexicographic assignment order.

    Backtracks over a linear extension of src.  Join-reducible elements are
    forced by any decomposition; every produced map is re-verified against
    the full tables afterwards.
    """
    order = sorted(range(src.n), key=lambda i: (src.pops[i], i))
    pos = {x: k for k, x in enumerate(order)}
    decomp: list[tuple[int, int] | None] = [None] * src.n
    join_pairs: list[list[tuple[int, int]]] = [[] for _ in range(src.n)]
    for y in range(src.n):
        for z in range(src.n):
            w = src.join(y, z)
            if w != y and w != z:
                join_pairs[w].append((y, z))
                if decomp[w] is None:
                    decomp[w] = (y, z)

    assigned = [-1] * src.n
    out: list[FrameHom] = []
    nodes = 0

    def candidates(x):
        if src.n == 1:
            return (dst.bottom,) if dst.n == 1 else ()
        if x == src.bottom:
            return (dst.bottom,)
        if x == src.top:
            return (dst.top,)
        d = decomp[x]
        if d is not None:
            return (dst.join(assigned[d[0]], assigned[d[1]]),)
        floor = dst.bottom
        for c in iter_bits(src.down_masks[x] & ~(1 << x)):
            floor = dst.join(floor, assigned[c])
        return tuple(iter_bits(dst.up_masks[floor]))

    def consistent(x, m):
        for y in order[:pos[x]]:
            if dst.meet(m, assigned[y]) != assigned[src.meet(x, y)]:
                return False
        for (y, z) in join_pairs[x]:
            if pos[y] < pos[x] and pos[z] < pos[x]:
                if dst.join(assigned[y], assigned[z]) != m:
                    return False
        return True

    def extend(k):
        nonlocal nodes
        if k == src.n:
            f = tuple(assigned)
            if not _verify_hom(src, dst, f):
                raise InternalInconsistency("search produced a non-hom")
            out.append(FrameHom(src, dst, f))
            return
        x = order[k]
        for m in candidates(x):
            nodes += 1
            if nodes > node_budget:
                raise BoundExceeded("hom search budget exhausted",
                                    bound=node_budget)
            if consistent(x, m):
                assigned[x] = m
                extend(k + 1)
                assigned[x] = -1

    extend(0)
    out.sort(key=lambda h: h.mapping)
    return out


def hom_leq(h: FrameHom, k: FrameHom) -> bool:
    'Pointwise order on homomorphisms with the same source and target.'
    if h.source is not k.source or h.target is not k.target:
        raise InternalInconsistency("hom_leq across different hom-sets")
    t = h.target
    return all(t.le(a, b) for a, b in zip(h.mapping, k.mapping))


# --- canonical form ----------------------------------------------------------


def _refine(adj_out, adj_in, colors):
    'Colour refinement on a digraph until stable.  Deterministic ranks.'
    n = len(colors)
    while True:
        keys = []
        for v in range(n):
            keys.append((colors[v],
                         tuple(sorted(colors[w] for w in adj_out[v])),
                         tuple(sorted(colors[w] for w in adj_in[v]))))
        ranking = {k: r for r, k in enumerate(sorted(set(keys)))}
        new = [ranking[k] for k in keys]
        if len(set(new)) == len(set(colors)):
            return new
        colors = new


def _canonical_relation(leq: np.ndarray, budget: int) -> bytes:
    'Exact canonical bytes of the cover digraph of a partial order.'
    n = leq.shape[0]
    strict = leq & ~np.eye(n, dtype=bool)
    covers = strict & ~(strict @ strict)
    adj_out = [list(np.flatnonzero(covers[v])) for v in range(n)]
    adj_in = [list(np.flatnonzero(covers[:, v])) for v in range(n)]

    height = [0] * n
    for v in sorted(range(n), key=lambda v: int(strict[:, v].sum())):
        height[v] = max((height[w] + 1 for w in adj_in[v]), default=0)
    start = _refine(adj_out, adj_in,
                    [(height[v], len(adj_in[v]), len(adj_out[v]))
                     for v in range(n)])

    nodes = 0

    def encode(perm_by_color):
        order = sorted(range(n), key=lambda v: perm_by_color[v])
        pos = {v: i for i, v in enumerate(order)}
        m = np.zeros((n, n), dtype=bool)
        for v in range(n):
            for w in adj_out[v]:
                m[pos[v], pos[w]] = True
        return np.packbits(m).tobytes()

    def search(colors):
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise BoundExceeded("canonical form budget exhausted",
                                bound=budget)
        classes: dict[int, list[int]] = {}
        for v, c in enumerate(colors):
            classes.setdefault(c, []).append(v)
        target = None
        for c in sorted(classes):
            if len(classes[c]) > 1:
                target = classes[c]
                break
        if target is None:
            return encode(colors)
        best = None
        for v in target:
            split = [2 * c for c in colors]
            split[v] += 1
            cand = search(_refine(adj_out, adj_in, split))
            if best is None or cand < best:
                best = cand
        return best

    return n.to_bytes(4, "big") + search(_refine(adj_out, adj_in, start))


def canonical_form(frame_or_leq, *,
                   budget: int = CANONICAL_NODE_BUDGET) -> bytes:
    """Isomorphism-invariant bytes; equal exactly for isomorphic lattices.

    Works for any finite partial order given as a Frame or a reflexive
    leq matrix (two orders get equal forms iff they are isomorphic).
    """
    if isinstance(frame_or_leq, Frame):
        if frame_or_leq._canon is None:
            frame_or_leq._canon = _canonical_relation(frame_or_leq.leq, budget)
        return frame_or_leq._canon
    return _canonical_relation(np.asarray(frame_or_leq, dtype=bool), budget)


def canonical_digest(frame_or_leq) -> str:
    return hashlib.sha256(canonical_form(frame_or_leq)).hexdigest()
