"""Finite posets, their downset frames, and the exhaustive frame corpus.

Every finite frame is the downset lattice of a finite poset, so enumerating
posets up to isomorphism and taking downsets enumerates all finite frames
up to isomorphism.  Finite spaces appear through the same dictionary: the
opens of a finite space are the up-sets of its specialization order
(x <= y meaning x lies in the closure of y).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._bits import iter_bits
from .errors import BoundExceeded, FrameFormatError, NotAPartialOrder
from .frame import (Frame, _reflexive_transitive_closure, canonical_form,
                    canonical_digest, validate_frame)

DEFAULT_MAX_POSET = 5
DEFAULT_MAX_FRAME = 32
_LETTERS = "abcdefghijklmnopqrstuvwxyz"


@dataclass(frozen=True)
class FinPoset:
    'Finite poset; when read as a space, opens are the up-closed sets.'
    leq: np.ndarray
    labels: tuple[str, ...] = field(default=())

    def __post_init__(self):
        m = self.leq
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise FrameFormatError("poset relation must be square")
        labels = self.labels or tuple(_LETTERS[i] for i in range(m.shape[0]))
        object.__setattr__(self, "labels", labels)
        if len(labels) != m.shape[0]:
            raise FrameFormatError("label count does not match poset size")
        closed = _reflexive_transitive_closure(m)
        if (closed & closed.T & ~np.eye(m.shape[0], dtype=bool)).any():
            raise NotAPartialOrder("poset relation has a cycle")
        closed.setflags(write=False)
        object.__setattr__(self, "leq", closed)

    @property
    def n(self) -> int:
        return self.leq.shape[0]

    def dual(self) -> "FinPoset":
        return FinPoset(self.leq.T.copy(), self.labels)

    def downset_masks(self) -> list[int]:
        'All downsets as bitmasks, by dynamic programming over an extension.'
        order = sorted(range(self.n), key=lambda i: int(self.leq[:, i].sum()))
        out = [0]
        for e in order:
            need = 0
            for x in range(self.n):
                if self.leq[x, e] and x != e:
                    need |= 1 << x
            out += [d | (1 << e) for d in out if d & need == need]
        return sorted(out)


def poset_from_pairs(n: int, pairs, labels=None) -> FinPoset:
    m = np.zeros((n, n), dtype=bool)
    for i, j in pairs:
        m[i, j] = True
    return FinPoset(m, tuple(labels) if labels else ())


# --- Birkhoff dictionary -----------------------------------------------------


def _subset_label(poset: FinPoset, mask: int) -> str:
    return "{" + ",".join(poset.labels[i] for i in iter_bits(mask)) + "}"


def downset_frame(poset: FinPoset) -> Frame:
    'Downsets ordered by inclusion; always a frame.'
    downs = poset.downset_masks()
    rel = np.array([[a & b == a for b in downs] for a in downs], dtype=bool)
    labels = [_subset_label(poset, d) for d in downs]
    return validate_frame(rel, labels, max_elements=None)


def alexandrov_frame(space: FinPoset) -> Frame:
    'Opens (up-sets) of a finite space ordered by inclusion.'
    return downset_frame(space.dual())


def product_space(x: FinPoset, y: FinPoset) -> FinPoset:
    'Componentwise order; the product of the two finite spaces.'
    labels = tuple(f"({a},{b})" for a in x.labels for b in y.labels)
    return FinPoset(np.kron(x.leq, y.leq), labels)


# --- poset enumeration -------------------------------------------------------


def enumerate_posets(k: int, *, max_k: int = DEFAULT_MAX_POSET) -> list[FinPoset]:
    """All posets on exactly k elements, one per isomorphism class.

    Grows element by element: a poset on k elements is an element added
    maximally above a downset of a poset on k - 1, so exhausting those
    extensions and deduplicating by canonical form exhausts every class.
    """
    if k > max_k:
        raise BoundExceeded(f"poset enumeration capped at {max_k} elements",
                            bound=max_k)
    if k < 1:
        return []
    level = [np.eye(1, dtype=bool)]
    for size in range(2, k + 1):
        seen = {}
        for rel in level:
            p = FinPoset(rel)
            for d in p.downset_masks():
                m = np.eye(size, dtype=bool)
                m[:size - 1, :size - 1] = rel
                for x in iter_bits(d):
                    m[x, size - 1] = True
                m = _reflexive_transitive_closure(m)
                seen.setdefault(canonical_form(m), m)
        level = [seen[key] for key in sorted(seen)]
    return [FinPoset(rel) for rel in level]


def enumerate_posets_bruteforce(k: int, *, max_k: int = 4) -> list[FinPoset]:
    'Raw scan over every relation matrix.  Oracle for the incremental path.'
    if k > max_k:
        raise BoundExceeded(f"raw poset scan capped at {max_k} elements",
                            bound=max_k)
    off = [(i, j) for i in range(k) for j in range(k) if i != j]
    seen = {}
    for bits in range(1 << len(off)):
        m = np.eye(k, dtype=bool)
        for r, (i, j) in enumerate(off):
            if bits >> r & 1:
                m[i, j] = True
        closed = _reflexive_transitive_closure(m)
        if (closed != m).any():
            continue
        if (m & m.T & ~np.eye(k, dtype=bool)).any():
            continue
        seen.setdefault(canonical_form(m), m)
    return [FinPoset(seen[key]) for key in sorted(seen)]


# --- fixtures ----------------------------------------------------------------


def trivial_frame() -> Frame:
    return downset_frame(FinPoset(np.zeros((0, 0), dtype=bool)))


def two_frame() -> Frame:
    return chain_frame(2)


def chain_frame(height: int) -> Frame:
    'Chain with `height` elements, counting bottom and top.'
    k = height - 1
    rel = np.array([[i <= j for j in range(k)] for i in range(k)], dtype=bool)
    return downset_frame(FinPoset(rel))


def boolean_frame(atoms: int) -> Frame:
    return downset_frame(FinPoset(np.eye(atoms, dtype=bool)))


def sierpinski_space() -> FinPoset:
    'Two points, closed one below the open one.'
    return poset_from_pairs(2, [(0, 1)], labels=("c", "o"))


def m3_diamond_relation():
    'Bottom, three incomparable middles, top: modular, not distributive.'
    pairs = [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]
    labels = ("0", "x", "y", "z", "1")
    return pairs, labels


FIXTURE_BUILDERS = {
    "trivial": trivial_frame,
    "two": two_frame,
    "chain3": lambda: chain_frame(3),
    "chain4": lambda: chain_frame(4),
    "bool4": lambda: boolean_frame(2),
    "bool8": lambda: boolean_frame(3),
    "sierpinski_opens": lambda: alexandrov_frame(sierpinski_space()),
    "sierpinski_square_opens": lambda: alexandrov_frame(
        product_space(sierpinski_space(), sierpinski_space())),
}

_ALIAS_CACHE: dict[bytes, str] | None = None


def _fixture_aliases() -> dict[bytes, str]:
    global _ALIAS_CACHE
    if _ALIAS_CACHE is None:
        _ALIAS_CACHE = {}
        for name, build in FIXTURE_BUILDERS.items():
            _ALIAS_CACHE.setdefault(canonical_form(build()), name)
    return _ALIAS_CACHE


def frame_id(frame: Frame) -> str:
    'Stable identifier: fixture name when known, else size plus digest.'
    alias = _fixture_aliases().get(canonical_form(frame))
    if alias is not None:
        return alias
    return f"n{frame.n:02d}_{canonical_digest(frame)[:10]}"


# --- the corpus --------------------------------------------------------------


def build_corpus(max_poset: int = DEFAULT_MAX_POSET,
                 max_frame: int = DEFAULT_MAX_FRAME) -> list[Frame]:
    """Every frame with at most max_frame elements whose poset of
    join-irreducibles has at most max_poset points, one per isomorphism
    class, deterministically ordered by (size, canonical form)."""
    found: dict[bytes, Frame] = {}
    for k in range(0, max_poset + 1):
        posets = ([FinPoset(np.zeros((0, 0), dtype=bool))] if k == 0
                  else enumerate_posets(k, max_k=max_poset))
        for p in posets:
            if len(p.downset_masks()) > max_frame:
                continue
            f = downset_frame(p)
            found.setdefault(canonical_form(f), f)
    return [found[key] for key in
            sorted(found, key=lambda c: (found[c].n, c))]
