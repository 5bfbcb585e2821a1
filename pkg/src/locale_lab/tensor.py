"""Binary coproducts of finite frames.

Elements are subsets of the L x M grid that are downward closed, contain
every cell with a bottom coordinate, and contain the join of each of their
rows and columns.  Closing the full row or column family is enough: the
join of any subfamily sits below it, so downward closure supplies it.

A grid subset is one bitmask (cell (a, b) is bit a*|M| + b), which keeps
the closure passes to integer arithmetic.  Everything is generated by the
basic elements, the saturations of single cells, by joining; meets add
nothing new since basic elements intersect in basic elements.
"""

from __future__ import annotations

import numpy as np

from ._bits import iter_bits
from .errors import BoundExceeded, InternalInconsistency
from .frame import Frame, FrameHom, _verify_hom, pseudocomplement, validate_frame

DEFAULT_MAX_PRODUCT = 64
DEFAULT_MAX_ELEMENTS = 4096


class _Grid:
    'Cell bookkeeping for one left/right pair.'

    def __init__(self, left: Frame, right: Frame):
        self.left = left
        self.right = right
        self.m = right.n
        self.cells = left.n * right.n
        down = []
        for a in range(left.n):
            rb_all = [int(right.down_masks[b]) for b in range(right.n)]
            for b in range(right.n):
                mask = 0
                for x in iter_bits(int(left.down_masks[a])):
                    mask |= rb_all[b] << (x * self.m)
                down.append(mask)
        self.cell_down = tuple(down)
        self.zeros = (self.cell_down[self.cell(left.bottom, right.top)]
                      | self.cell_down[self.cell(left.top, right.bottom)])

    def cell(self, a: int, b: int) -> int:
        return a * self.m + b


def _saturate(grid: _Grid, bits: int) -> int:
    'Least coproduct element containing the given cells.'
    left, right, m = grid.left, grid.right, grid.m
    bits |= grid.zeros
    row_mask = (1 << m) - 1
    while True:
        start = bits
        closed = 0
        for c in iter_bits(bits):
            closed |= grid.cell_down[c]
        bits = closed
        for b in range(m):
            j = left.bottom
            for a in range(left.n):
                if bits >> (a * m + b) & 1:
                    j = left.join(j, a)
            bits |= 1 << (j * m + b)
        for a in range(left.n):
            j = right.bottom
            for b in iter_bits(bits >> (a * m) & row_mask):
                j = right.join(j, b)
            bits |= 1 << (a * m + j)
        if bits == start:
            return bits


def _is_element(grid: _Grid, bits: int) -> bool:
    return _saturate(grid, bits) == bits


class TensorFrame:
    """A built coproduct: the frame plus the grid dictionary.

    `elements[i]` is the cell mask of frame element i; masks are sorted
    ascending so the construction is order-independent.
    """

    def __init__(self, left, right, frame, elements, grid):
        self.left = left
        self.right = right
        self.frame = frame
        self.elements = elements
        self._grid = grid
        self._index = {e: i for i, e in enumerate(elements)}

    def element_index(self, bits: int) -> int:
        try:
            return self._index[bits]
        except KeyError:
            raise ValueError("cell mask is not a coproduct element") from None

    def has_cell(self, i: int, a: int, b: int) -> bool:
        return bool(self.elements[i] >> self._grid.cell(a, b) & 1)

    def cells_of(self, i: int) -> list[tuple[int, int]]:
        m = self._grid.m
        return [divmod(c, m) for c in iter_bits(self.elements[i])]

    def basic(self, a: int, b: int) -> int:
        'Frame index of the element generated by the single cell (a, b).'
        g = self._grid
        bits = g.cell_down[g.cell(a, b)] | g.zeros
        if not _is_element(g, bits):
            raise InternalInconsistency("basic rectangle is not saturated")
        return self.element_index(bits)

    def __repr__(self):
        return (f"TensorFrame({self.left.n}x{self.right.n} cells, "
                f"{self.frame.n} elements)")


def build_tensor(left: Frame, right: Frame, *,
                 max_product: int = DEFAULT_MAX_PRODUCT,
                 max_elements: int = DEFAULT_MAX_ELEMENTS) -> TensorFrame:
    'Enumerate every coproduct element by join-closing the basic ones.'
    if left.n * right.n > max_product:
        raise BoundExceeded(
            f"coproduct grid {left.n}x{right.n} exceeds bound {max_product}",
            bound=max_product)
    grid = _Grid(left, right)
    gens = set()
    for a in range(left.n):
        for b in range(right.n):
            gens.add(grid.cell_down[grid.cell(a, b)] | grid.zeros)
    for g in gens:
        if not _is_element(grid, g):
            raise InternalInconsistency("basic rectangle is not saturated")
    gens = sorted(gens)
    elems = set(gens)
    for i, d in enumerate(gens):
        for e in gens[:i]:
            dm = d & e
            if not _is_element(grid, dm):
                raise InternalInconsistency(
                    "meet of basic elements escaped the basics")
            elems.add(dm)
    # joining against generators only is exhaustive: every element is a
    # join of basics, and join is associative
    frontier = sorted(elems)
    while frontier:
        fresh = []
        for d in frontier:
            for g in gens:
                if g & ~d == 0:     # swallowed, join is d itself
                    continue
                j = _saturate(grid, d | g)
                if j not in elems:
                    elems.add(j)
                    fresh.append(j)
                    if len(elems) > max_elements:
                        raise BoundExceeded(
                            f"coproduct exceeds {max_elements} elements",
                            bound=max_elements)
        frontier = sorted(fresh)
    order = sorted(elems)
    if grid.cells <= 64:
        arr = np.array(order, dtype=np.uint64)
        rel = np.bitwise_and.outer(arr, arr) == arr[:, None]
    else:
        rel = np.array([[d & e == d for e in order] for d in order])
    frame = validate_frame(rel, [f"t{i}" for i in range(len(order))],
                           max_elements=None)
    return TensorFrame(left, right, frame, tuple(order), grid)


def enumerate_elements_bruteforce(left: Frame, right: Frame, *,
                                  max_cells: int = 16) -> list[int]:
    'Scan every grid subset.  Oracle for the join-closure construction.'
    cells = left.n * right.n
    if cells > max_cells:
        raise BoundExceeded(f"raw coproduct scan capped at {max_cells} cells",
                            bound=max_cells)
    grid = _Grid(left, right)
    return [bits for bits in range(1 << cells) if _is_element(grid, bits)]


# --- structure maps -----------------------------------------------------------


def injection_left(t: TensorFrame) -> FrameHom:
    mapping = tuple(t.basic(a, t.right.top) for a in range(t.left.n))
    if not _verify_hom(t.left, t.frame, mapping):
        raise InternalInconsistency("left injection is not a frame map")
    return FrameHom(t.left, t.frame, mapping)


def injection_right(t: TensorFrame) -> FrameHom:
    mapping = tuple(t.basic(t.left.top, b) for b in range(t.right.n))
    if not _verify_hom(t.right, t.frame, mapping):
        raise InternalInconsistency("right injection is not a frame map")
    return FrameHom(t.right, t.frame, mapping)


def projection_left(t: TensorFrame, i: int) -> int:
    'Largest a with (a, top) inside element i; right adjoint coordinate.'
    j = t.left.bottom
    for a in range(t.left.n):
        if t.has_cell(i, a, t.right.top):
            j = t.left.join(j, a)
    return j


def projection_right(t: TensorFrame, i: int) -> int:
    j = t.right.bottom
    for b in range(t.right.n):
        if t.has_cell(i, t.left.top, b):
            j = t.right.join(j, b)
    return j


def transpose_cells(t: TensorFrame, bits: int) -> int:
    'Swap the two coordinates; only meaningful when left == right.'
    m = t._grid.m
    out = 0
    for c in iter_bits(bits):
        a, b = divmod(c, m)
        out |= 1 << (b * t.left.n + a)
    return out


# --- the diagonal -------------------------------------------------------------


def diagonal_elements(t: TensorFrame) -> tuple[int, ...]:
    """Frame indices of d_a = {(u, v) : u /\\ v <= a}, one per a.

    The map a -> d_a embeds the frame into its own square; each d_a is
    symmetric in the two coordinates.
    """
    L = t.left
    if t.right is not L:
        raise ValueError("diagonal needs the two factors to be the same frame")
    out = []
    for a in range(L.n):
        cond = L.leq[L.meet_table, a]
        packed = np.packbits(cond.reshape(-1), bitorder="little")
        bits = int.from_bytes(packed.tobytes(), "little")
        try:
            out.append(t.element_index(bits))
        except ValueError as exc:
            raise InternalInconsistency(
                f"diagonal image of {a} is not a coproduct element") from exc
    if len(set(out)) != L.n:
        raise InternalInconsistency("diagonal embedding is not injective")
    return tuple(out)


def diagonal_sublocale(t: TensorFrame):
    from .sublocale import Sublocale
    members = 0
    for i in diagonal_elements(t):
        members |= 1 << i
    try:
        return Sublocale(t.frame, members)
    except ValueError as exc:
        raise InternalInconsistency(f"diagonal: {exc}") from exc


def disjointness_element(t: TensorFrame) -> int:
    'The least diagonal element, all (u, v) with u /\\ v = 0.'
    L = t.left
    if t.right is not L:
        raise ValueError("diagonal needs the two factors to be the same frame")
    cond = L.meet_table == L.bottom
    packed = np.packbits(cond.reshape(-1), bitorder="little")
    direct = int.from_bytes(packed.tobytes(), "little")
    # same thing as the join of the disjoint rectangles a x a*
    alt = t.frame.bottom
    for a in range(L.n):
        alt = t.frame.join(alt, t.basic(a, pseudocomplement(L, a)))
    if t.elements[alt] != direct:
        raise InternalInconsistency(
            "disjointness element disagrees with its rectangle join form")
    return t.element_index(direct)
