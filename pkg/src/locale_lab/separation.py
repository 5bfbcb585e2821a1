"""Separation properties of a finite frame.

Each checker keeps the defining quantifier shape and returns
(holds, witness): the witness is the first offending tuple of element
indices in ascending scan order, or None when the property holds.
Matrix forms of the inner existentials (plain boolean matmuls) keep the
pair checkers usable on coproduct-sized frames.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import BoundExceeded, EquivalenceViolation
from .frame import Frame, enumerate_homs, hom_leq, is_irreducible, primes
from .sublocale import fitting, one_point
from .tensor import (DEFAULT_MAX_PRODUCT, TensorFrame, build_tensor,
                     diagonal_sublocale)

AXIOMS = ("regular", "fit", "subfit", "weakly_subfit", "prefit", "T1", "TU",
          "H", "F", "F_sep", "sH", "pt_fit")
EXTRA_PROPERTIES = ("anti_urysohn", "irreducible")


def _psc(frame: Frame) -> np.ndarray:
    return frame.arrow_table[:, frame.bottom]


def _first_false(res: np.ndarray, quals: np.ndarray):
    bad = np.argwhere(quals & ~res)
    if len(bad) == 0:
        return True, None
    return False, tuple(int(x) for x in bad[0])


def _nontrivial_pairs(frame: Frame) -> np.ndarray:
    'Pairs (a, b) with 1 != a and a not<= b.'
    quals = ~frame.leq
    quals[frame.top, :] = False
    return quals


def is_regular(frame: Frame):
    'a is the join of the elements b with b* v a = 1.'
    below = frame.join_table[_psc(frame)[None, :].repeat(frame.n, 0),
                             np.arange(frame.n)[:, None]] == frame.top
    for a in range(frame.n):
        acc = frame.bottom
        for b in np.flatnonzero(below[a]):
            acc = frame.join(acc, int(b))
        if acc != a:
            return False, (a,)
    return True, None


def is_fit(frame: Frame):
    'a not<= b gives c with a v c = 1 and (c -> b) not<= b.'
    cov = frame.join_table == frame.top
    # nb[b, c]: the arrow c -> b is not below b
    nb = (~frame.leq[frame.arrow_table, np.arange(frame.n)[None, :]]).T
    return _first_false(cov @ nb.T, ~frame.leq)


def is_subfit(frame: Frame):
    'a not<= b gives c joining a to the top but not b.'
    cov = frame.join_table == frame.top
    return _first_false(cov @ ~cov.T, ~frame.leq)


def is_weakly_subfit(frame: Frame):
    'a > 0 gives c < 1 with a v c = 1.'
    cov = frame.join_table == frame.top
    cov[:, frame.top] = False
    quals = np.ones(frame.n, dtype=bool)
    quals[frame.bottom] = False
    return _first_false(cov.any(axis=1), quals)


def is_prefit(frame: Frame):
    'a > 0 gives c > 0 with c* v a = 1.'
    cov = frame.join_table[_psc(frame)[:, None], np.arange(frame.n)[None, :]]
    cov = (cov == frame.top)
    cov[frame.bottom, :] = False
    quals = np.ones(frame.n, dtype=bool)
    quals[frame.bottom] = False
    return _first_false(cov.any(axis=0), quals)


def is_T1(frame: Frame):
    'Every prime is maximal.'
    for p in primes(frame):
        strictly_above = np.flatnonzero(frame.leq[p] &
                                        (np.arange(frame.n) != p) &
                                        (np.arange(frame.n) != frame.top))
        if len(strictly_above):
            return False, (p, int(strictly_above[0]))
    return True, None


def is_hausdorff(frame: Frame):
    '1 != a not<= b gives disjoint u not<= a, v not<= b.'
    na = ~frame.leq.T
    dis = frame.meet_table == frame.bottom
    res = (na @ dis) @ na.T
    return _first_false(res, _nontrivial_pairs(frame))


def has_property_F(frame: Frame):
    '1 != a not<= b gives u, v covering the top and moved by the arrows.'
    idx = np.arange(frame.n)
    moved = (frame.arrow_table != idx[None, :]).T  # moved[a, u]: u->a != a
    cov = frame.join_table == frame.top
    res = (moved @ cov) @ moved.T
    return _first_false(res, _nontrivial_pairs(frame))


def is_anti_urysohn(frame: Frame):
    'No two nonzero elements have complementary pseudocomplements.'
    psc = _psc(frame)
    bad = frame.join_table[psc[:, None], psc[None, :]] == frame.top
    bad[frame.bottom, :] = False
    bad[:, frame.bottom] = False
    hit = np.argwhere(bad)
    if len(hit):
        return False, tuple(int(x) for x in hit[0])
    return True, None


def is_pt_fit(frame: Frame):
    'Every one-point sublocale is an intersection of opens.'
    for p in primes(frame):
        pt = one_point(frame, p)
        if fitting(pt).members != pt.members:
            return False, (p,)
    return True, None


# --- the six equivalent pair conditions ----------------------------------------


def _pair_conditions(frame: Frame, a: int, b: int) -> tuple[bool, ...]:
    'Literal transcriptions, checked per qualifying pair.'
    n, top = frame.n, frame.top
    le, arrow, join, meet = frame.le, frame.arrow, frame.join, frame.meet

    def c1():
        for u in range(n):
            if le(u, a):
                continue
            for v in range(n):
                if not le(v, b) and join(arrow(u, a), arrow(v, b)) == top:
                    return True
        return False

    def c2():
        for u in range(n):
            if not (le(a, u) and a != u):
                continue
            for v in range(n):
                if le(b, v) and b != v and \
                        join(arrow(u, a), arrow(v, b)) == top:
                    return True
        return False

    def c3():
        for u in range(n):
            if not (le(a, u) and a != u):
                continue
            for v in range(n):
                if le(v, a) and not le(v, b) and \
                        join(arrow(u, a), arrow(v, b)) == top:
                    return True
        return False

    def c4():
        for u in range(n):
            if arrow(u, a) == a:
                continue
            for v in range(n):
                if arrow(v, b) != b and join(u, v) == top:
                    return True
        return False

    def c5():
        for u in range(n):
            if not le(a, u) or arrow(u, a) == a:
                continue
            for v in range(n):
                if le(b, v) and arrow(v, b) != b and join(u, v) == top:
                    return True
        return False

    def c6():
        for u in range(n):
            if not le(a, u) or arrow(u, a) == a:
                continue
            for v in range(n):
                if not le(meet(a, arrow(v, b)), b) and join(u, v) == top:
                    return True
        return False

    return c1(), c2(), c3(), c4(), c5(), c6()


def check_F_equivalences(frame: Frame):
    """Frame-level verdicts of all six pair conditions.

    Each condition quantifies over every pair with 1 != a and a not below
    b.  The six verdicts must agree as properties of the whole frame, but a
    single pair can satisfy some conditions and not others: the equivalence
    arguments re-aim at different pairs, e.g. route through (a, a -> b).  So
    only the quantified verdicts are compared; disagreement there raises,
    since it can only mean one of the evaluators is wrong.
    """
    verdicts = [True] * 6
    for a in range(frame.n):
        if a == frame.top:
            continue
        for b in range(frame.n):
            if frame.le(a, b):
                continue
            vals = _pair_conditions(frame, a, b)
            for k in range(6):
                verdicts[k] = verdicts[k] and vals[k]
        if not any(verdicts):
            break
    if len(set(verdicts)) != 1:
        raise EquivalenceViolation(
            f"quantified pair conditions disagree: {tuple(verdicts)}")
    return tuple(verdicts)


# --- properties of the square -------------------------------------------------


def is_strongly_hausdorff(frame: Frame, tensor: TensorFrame | None = None):
    'The diagonal sublocale of the square is closed.'
    t = tensor if tensor is not None else build_tensor(frame, frame)
    diag = diagonal_sublocale(t)
    from .sublocale import closure
    return closure(diag).members == diag.members, None


def is_F_separated(frame: Frame, tensor: TensorFrame | None = None):
    'The diagonal sublocale of the square is fitted.'
    t = tensor if tensor is not None else build_tensor(frame, frame)
    diag = diagonal_sublocale(t)
    return fitting(diag).members == diag.members, None


# --- bounded total unorderedness ------------------------------------------------


def is_totally_unordered(frame: Frame, targets, *,
                         node_budget: int = 1_000_000):
    """No two distinct maps into any target are pointwise comparable.

    Conclusive only over the supplied targets; the caller owns that bound.
    """
    for ti, target in enumerate(targets):
        homs = enumerate_homs(frame, target, node_budget=node_budget)
        for i, f in enumerate(homs):
            for g in homs[i + 1:]:
                if hom_leq(f, g) or hom_leq(g, f):
                    return False, (ti, f.mapping, g.mapping)
    return True, None


# --- one-stop evaluation ---------------------------------------------------------


@dataclass
class AxiomReport:
    frame_name: str
    n: int
    verdicts: dict = field(default_factory=dict)

    def holds(self, axiom: str) -> bool:
        v = self.verdicts[axiom]
        if "skipped" in v:
            raise KeyError(f"{axiom} was skipped: {v['skipped']}")
        return v["holds"]

    def to_json(self) -> dict:
        return {"frame": self.frame_name, "elements": self.n,
                "verdicts": self.verdicts}


def _witness_labels(frame: Frame, witness):
    if witness is None:
        return None
    return [frame.labels[i] for i in witness]


def evaluate_frame(frame: Frame, *, name: str = "",
                   tensor: TensorFrame | None = None,
                   max_product: int = DEFAULT_MAX_PRODUCT,
                   tu_targets=None,
                   node_budget: int = 1_000_000) -> AxiomReport:
    'Run every axiom on one frame, recording witnesses and skips.'
    report = AxiomReport(frame_name=name, n=frame.n)

    simple = {
        "regular": is_regular, "fit": is_fit, "subfit": is_subfit,
        "weakly_subfit": is_weakly_subfit, "prefit": is_prefit,
        "T1": is_T1, "H": is_hausdorff, "F": has_property_F,
        "pt_fit": is_pt_fit, "anti_urysohn": is_anti_urysohn,
    }
    for axiom in AXIOMS + EXTRA_PROPERTIES:
        if axiom in simple:
            holds, witness = simple[axiom](frame)
            report.verdicts[axiom] = {
                "holds": holds, "witness": _witness_labels(frame, witness)}
        elif axiom == "irreducible":
            report.verdicts[axiom] = {"holds": is_irreducible(frame),
                                      "witness": None}
        elif axiom in ("sH", "F_sep"):
            if tensor is None and frame.n * frame.n > max_product:
                report.verdicts[axiom] = {"skipped": "tensor-bound"}
                continue
            t = tensor if tensor is not None else build_tensor(
                frame, frame, max_product=max_product)
            tensor = t
            fn = is_strongly_hausdorff if axiom == "sH" else is_F_separated
            holds, _ = fn(frame, t)
            report.verdicts[axiom] = {"holds": holds, "witness": None}
        elif axiom == "TU":
            if tu_targets is None:
                report.verdicts[axiom] = {"skipped": "no-targets"}
                continue
            try:
                holds, witness = is_totally_unordered(
                    frame, tu_targets, node_budget=node_budget)
            except BoundExceeded:
                report.verdicts[axiom] = {"skipped": "hom-budget"}
                continue
            wit = None
            if witness is not None:
                ti, f, g = witness
                wit = {"target": ti, "f": list(f), "g": list(g)}
            report.verdicts[axiom] = {"holds": holds, "witness": wit}
    return report
