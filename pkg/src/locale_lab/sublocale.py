"""Sublocales of a finite frame.

A sublocale is a subset containing the top, closed under binary meets, and
closed under x -> s for every frame element x (not just members).  We keep
them as bitmasks over the parent's element indices, so the lattice
operations on sublocales are plain mask arithmetic plus one closure pass.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._bits import iter_bits, submask
from .errors import BoundExceeded, InternalInconsistency
from .frame import Frame, primes, validate_frame

DEFAULT_MAX_ENUMERATION = 12


def sublocale_violation(frame: Frame, members: int):
    """First reason the mask fails to be a sublocale, or None.

    Scans ascending, so the witness is deterministic.
    """
    if members < 0 or members >> frame.n:
        return ("outside frame", ())
    if not members >> frame.top & 1:
        return ("missing top", ())
    idx = list(iter_bits(members))
    for a in idx:
        row = frame.meet_table[a]
        for b in idx:
            if not members >> int(row[b]) & 1:
                return ("meet escapes", (a, b))
    for x in range(frame.n):
        row = frame.arrow_table[x]
        for s in idx:
            if not members >> int(row[s]) & 1:
                return ("arrow escapes", (x, s))
    return None


def is_sublocale(frame: Frame, members: int) -> bool:
    return sublocale_violation(frame, members) is None


@dataclass(frozen=True)
class Sublocale:
    'Validated on construction; `members` is a bitmask of parent indices.'
    parent: Frame
    members: int

    def __post_init__(self):
        reason = sublocale_violation(self.parent, self.members)
        if reason is not None:
            raise ValueError(f"not a sublocale: {reason[0]} at {reason[1]}")

    def __len__(self) -> int:
        return self.members.bit_count()

    def __contains__(self, a: int) -> bool:
        return bool(self.members >> a & 1)

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(iter_bits(self.members))

    def __repr__(self):
        names = ", ".join(self.parent.labels[i] for i in self.indices)
        return f"Sublocale({{{names}}})"


def _certify(frame: Frame, members: int, what: str) -> Sublocale:
    # constructions below are sublocales by theorem; a failure is our bug
    try:
        return Sublocale(frame, members)
    except ValueError as exc:
        raise InternalInconsistency(f"{what}: {exc}") from exc


# --- the basic constructions --------------------------------------------------


def _open_mask(frame: Frame, a: int) -> int:
    members = 0
    for v in np.unique(frame.arrow_table[a]):
        members |= 1 << int(v)
    return members


def open_sublocale(frame: Frame, a: int) -> Sublocale:
    'Image of x |-> (a -> x); exactly the fixed points of that map.'
    return _certify(frame, _open_mask(frame, a), f"open at {a}")


def closed_sublocale(frame: Frame, a: int) -> Sublocale:
    return _certify(frame, int(frame.up_masks[a]), f"closed at {a}")


def one_point(frame: Frame, p: int) -> Sublocale:
    if p not in primes(frame):
        raise ValueError(f"one-point sublocale needs a prime, got index {p}")
    return _certify(frame, 1 << frame.top | 1 << p, f"one-point at {p}")


def sublocale_close(frame: Frame, seed: int) -> Sublocale:
    'Least sublocale containing the seed mask.'
    members = seed | 1 << frame.top
    while True:
        nxt = members
        for s in iter_bits(members):
            for x in range(frame.n):
                nxt |= 1 << int(frame.arrow_table[x, s])
        for a in iter_bits(nxt):
            row = frame.meet_table[a]
            for b in iter_bits(nxt):
                nxt |= 1 << int(row[b])
        if nxt == members:
            return Sublocale(frame, members)
        members = nxt


# --- lattice of sublocales -----------------------------------------------------


def sublocale_meet(first: Sublocale, *rest: Sublocale) -> Sublocale:
    'Intersection; sublocales are stable under it.'
    acc = first.members
    for s in rest:
        acc &= s.members
    return _certify(first.parent, acc, "meet of sublocales")


def sublocale_join(first: Sublocale, *rest: Sublocale) -> Sublocale:
    'Meet-closure of the union; no arrow pass is needed.'
    frame = first.parent
    acc = first.members
    for s in rest:
        acc |= s.members
    while True:
        nxt = acc
        for a in iter_bits(acc):
            row = frame.meet_table[a]
            for b in iter_bits(acc):
                nxt |= 1 << int(row[b])
        if nxt == acc:
            return _certify(frame, acc, "join of sublocales")
        acc = nxt


def closure(sub: Sublocale) -> Sublocale:
    'Least closed sublocale containing it: closed at the meet of members.'
    return closed_sublocale(sub.parent, sub.parent.meet_mask(sub.members))


def fitting(sub: Sublocale) -> Sublocale:
    'Intersection of the open sublocales containing it.'
    frame = sub.parent
    acc = frame.full_mask
    for a in range(frame.n):
        om = _open_mask(frame, a)
        if submask(sub.members, om):
            acc &= om
    return _certify(frame, acc, "fitting")


def is_fitted(sub: Sublocale) -> bool:
    return fitting(sub).members == sub.members


def nucleus_image(sub: Sublocale, a: int) -> int:
    'Least member above a.'
    frame = sub.parent
    m = frame.meet_mask(sub.members & int(frame.up_masks[a]))
    if not (sub.members >> m & 1 and frame.leq[a, m]):
        raise InternalInconsistency("nucleus image escaped the sublocale")
    return m


# --- enumeration ----------------------------------------------------------------


def enumerate_sublocales(frame: Frame, *,
                         max_elements: int = DEFAULT_MAX_ENUMERATION
                         ) -> list[Sublocale]:
    """All sublocales, via closures of generated subsets.

    Any sublocale is reached from {top} by adding one member at a time and
    closing (the closure stays inside it and strictly grows), so the search
    is exhaustive without scanning all 2^n subsets.
    """
    if frame.n > max_elements:
        raise BoundExceeded(
            f"sublocale enumeration capped at {max_elements} elements",
            bound=max_elements)
    least = sublocale_close(frame, 0)
    seen = {least.members: least}
    queue = [least]
    while queue:
        sub = queue.pop()
        for x in iter_bits(frame.full_mask & ~sub.members):
            bigger = sublocale_close(frame, sub.members | 1 << x)
            if bigger.members not in seen:
                seen[bigger.members] = bigger
                queue.append(bigger)
    return [seen[m] for m in sorted(seen, key=lambda m: (m.bit_count(), m))]


def enumerate_sublocales_bruteforce(frame: Frame, *,
                                    max_elements: int = 10
                                    ) -> list[Sublocale]:
    'Raw scan over every subset.  Oracle for the closure-generated path.'
    if frame.n > max_elements:
        raise BoundExceeded(
            f"raw sublocale scan capped at {max_elements} elements",
            bound=max_elements)
    out = []
    for mask in range(1 << frame.n):
        if is_sublocale(frame, mask):
            out.append(Sublocale(frame, mask))
    return sorted(out, key=lambda s: (len(s), s.members))


# --- the induced frame ---------------------------------------------------------


def induced_frame(sub: Sublocale) -> Frame:
    """The sublocale as a frame in its own right.

    Meets and arrows are inherited; joins are the nucleus applied to the
    parent join.  Restricting the order and revalidating rebuilds exactly
    that structure and re-checks distributivity along the way.
    """
    idx = list(sub.indices)
    rel = sub.parent.leq[np.ix_(idx, idx)].copy()
    labels = [sub.parent.labels[i] for i in idx]
    return validate_frame(rel, labels, max_elements=None)
