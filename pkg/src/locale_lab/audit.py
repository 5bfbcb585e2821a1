"""Corpus-wide audit: every axiom on every frame, checked against the
expected implication graph.

The expected edges ship as package data.  An audit confirms each edge on
every frame where both sides were decided, hunts counterexamples for every
non-edge, and runs a suite of structural cross-checks (heredity, coproduct
preservation, geometric characterizations, obstructions).  Everything it
emits is deterministic: rerunning with the same configuration produces
byte-identical JSON.
"""

from __future__ import annotations

import itertools
import json
import os
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from importlib import resources

from . import __version__
from .corpus import build_corpus, frame_id
from .errors import ExpectedEdgeViolated
from .frame import Frame, canonical_digest, primes
from .separation import (EXTRA_PROPERTIES, check_F_equivalences,
                         evaluate_frame, has_property_F, is_fit, is_subfit,
                         is_T1)
from .sublocale import (closed_sublocale, enumerate_sublocales,
                        induced_frame, is_fitted, one_point, open_sublocale,
                        sublocale_join)
from .tensor import TensorFrame, build_tensor, diagonal_elements, \
    disjointness_element, transpose_cells


def _default_threads() -> int:
    try:
        return max(1, int(os.environ.get("LOCALE_LAB_THREADS", "1")))
    except ValueError:
        return 1


@dataclass
class AuditConfig:
    max_poset: int = 5
    max_frame: int = 32
    tensor_bound: int = 64          # cap on |L| * |M| for square/product work
    tu_bound: int = 8               # targets for the map-comparability check
    sublocale_bound: int = 12       # cap for full sublocale enumeration
    node_budget: int = 1_000_000
    threads: int = field(default_factory=_default_threads)
    raise_on_violation: bool = True


def load_expected_edges(path: str | None = None) -> dict:
    'Expected implication graph; packaged data unless a path is given.'
    if path is None:
        ref = resources.files("locale_lab").joinpath("data/figure2_edges.json")
        data = json.loads(ref.read_text())
    else:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    for key in ("axioms", "edges"):
        if key not in data:
            raise ValueError(f"expected-edge file lacks {key!r}")
    data.setdefault("not_finitely_witnessable", [])
    return data


def _transitive_closure(pairs) -> set[tuple[str, str]]:
    clo = set(pairs)
    changed = True
    while changed:
        changed = False
        for a, b in list(clo):
            for c, d in list(clo):
                if b == c and (a, d) not in clo:
                    clo.add((a, d))
                    changed = True
    return clo


class TensorCache:
    'Squares and products get reused across audit stages.'

    def __init__(self, max_product: int):
        self.max_product = max_product
        self._built: dict[tuple[int, int], TensorFrame] = {}
        self._lock = threading.Lock()

    def square(self, frame: Frame) -> TensorFrame:
        return self.pair(frame, frame)

    def pair(self, left: Frame, right: Frame) -> TensorFrame:
        key = (id(left), id(right))
        with self._lock:
            hit = self._built.get(key)
        if hit is not None:
            return hit
        t = build_tensor(left, right, max_product=self.max_product)
        with self._lock:
            return self._built.setdefault(key, t)


# --- stages --------------------------------------------------------------------


def _evaluate_all(corpus, ids, targets, cache: TensorCache, cfg: AuditConfig):
    def one(pair):
        f, fid = pair
        tensor = None
        if f.n * f.n <= cfg.tensor_bound:
            tensor = cache.square(f)
        return evaluate_frame(f, name=fid, tensor=tensor,
                              max_product=cfg.tensor_bound,
                              tu_targets=targets,
                              node_budget=cfg.node_budget)
    work = list(zip(corpus, ids))
    if cfg.threads > 1:
        with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
            results = list(pool.map(one, work))
    else:
        results = [one(w) for w in work]
    return {fid: rep for fid, rep in zip(ids, results)}


def _verdict(reports, fid: str, axiom: str):
    v = reports[fid].verdicts[axiom]
    return None if "skipped" in v else v["holds"]


def _edge_results(reports, ids, edges, raise_on_violation: bool):
    out = []
    for p, q in edges:
        checked = skipped = 0
        violations = []
        for fid in ids:
            vp, vq = _verdict(reports, fid, p), _verdict(reports, fid, q)
            if vp is None or vq is None:
                skipped += 1
                continue
            checked += 1
            if vp and not vq:
                violations.append(fid)
        entry = {"edge": [p, q], "checked": checked, "skipped": skipped}
        if violations:
            entry["status"] = "violated"
            entry["witnesses"] = violations
            if raise_on_violation:
                raise ExpectedEdgeViolated((p, q), violations[0],
                                           witness=violations)
        else:
            entry["status"] = "confirmed"
        out.append(entry)
    return out


def _non_edges(reports, ids, axioms, closure, nf_pairs):
    out = []
    for p, q in itertools.permutations(axioms, 2):
        if (p, q) in closure:
            continue
        checked = 0
        witness = None
        for fid in ids:
            vp, vq = _verdict(reports, fid, p), _verdict(reports, fid, q)
            if vp is None or vq is None:
                continue
            checked += 1
            if vp and not vq and witness is None:
                witness = fid
        entry = {"pair": [p, q], "checked": checked}
        if witness is not None:
            entry["status"] = "refuted"
            entry["witness"] = witness
        elif (p, q) in nf_pairs:
            entry["status"] = "not-finitely-witnessable"
        else:
            entry["status"] = "unrefuted-at-bound"
        out.append(entry)
    return out


def _collapse_section(reports, ids, axioms):
    'How the hierarchy degenerates on the corpus.'
    extensions = {}
    for ax in axioms:
        extensions[ax] = sorted(
            fid for fid in ids if _verdict(reports, fid, ax) is True)
    distinct = set()
    for ax in axioms:
        decided = frozenset(fid for fid in ids
                            if _verdict(reports, fid, ax) is not None)
        holding = frozenset(extensions[ax])
        distinct.add((decided, holding))
    coincide = True
    for (d1, h1), (d2, h2) in itertools.combinations(distinct, 2):
        common = d1 & d2
        if {f for f in h1 if f in common} != {f for f in h2 if f in common}:
            coincide = False
    return {"extensions": extensions,
            "coincide_on_common_decided_frames": coincide}


def _theorem_suite(corpus, ids, reports, cache: TensorCache,
                   cfg: AuditConfig) -> list[dict]:
    suite = []

    def entry(name, checked, skipped, violations):
        e = {"name": name, "checked": checked, "skipped": skipped,
             "status": "violated" if violations else "confirmed"}
        if violations:
            e["witnesses"] = violations[:10]
        suite.append(e)

    # the six pair conditions agree with each other and the matrix route
    bad = []
    for f, fid in zip(corpus, ids):
        six = check_F_equivalences(f)   # raises if the six disagree
        if six[0] != has_property_F(f)[0]:
            bad.append(fid)
    entry("pair-conditions-match-matrix-route", len(ids), 0, bad)

    # heredity: the pair property and fitness both pass to sublocales,
    # and fitness equals hereditary subfitness
    f_her_bad, her_bad, iff_bad, checked, skipped = [], [], [], 0, 0
    for f, fid in zip(corpus, ids):
        if f.n > cfg.sublocale_bound:
            skipped += 1
            continue
        checked += 1
        subs = enumerate_sublocales(f, max_elements=cfg.sublocale_bound)
        induced = [induced_frame(s) for s in subs]
        if has_property_F(f)[0] and not all(
                has_property_F(g)[0] for g in induced):
            f_her_bad.append(fid)
        fit_here = is_fit(f)[0]
        if fit_here and not all(is_fit(g)[0] for g in induced):
            her_bad.append(fid)
        if fit_here != all(is_subfit(g)[0] for g in induced):
            iff_bad.append(fid)
    entry("F-hereditary", checked, skipped, f_her_bad)
    entry("fit-hereditary", checked, skipped, her_bad)
    entry("fit-iff-hereditarily-subfit", checked, skipped, iff_bad)

    # geometric characterizations, checkable on every frame
    fit_bad, subfit_bad, t1_bad = [], [], []
    for f, fid in zip(corpus, ids):
        fit_here = is_fit(f)[0]
        closed_fitted = all(is_fitted(closed_sublocale(f, a))
                            for a in range(f.n))
        if fit_here != closed_fitted:
            fit_bad.append(fid)
        subfit_here = is_subfit(f)[0]
        opens_joins = True
        for a in range(f.n):
            o = open_sublocale(f, a)
            parts = [closed_sublocale(f, b) for b in range(f.n)
                     if closed_sublocale(f, b).members & ~o.members == 0]
            if sublocale_join(*parts).members != o.members:
                opens_joins = False
                break
        if subfit_here != opens_joins:
            subfit_bad.append(fid)
        t1_here = is_T1(f)[0]
        pts_closed = all(
            one_point(f, p).members == closed_sublocale(f, p).members
            for p in primes(f))
        if t1_here != pts_closed:
            t1_bad.append(fid)
    entry("fit-iff-closed-sublocales-fitted", len(ids), 0, fit_bad)
    entry("subfit-iff-opens-are-joins-of-closed", len(ids), 0, subfit_bad)
    entry("T1-iff-one-point-sublocales-closed", len(ids), 0, t1_bad)

    # squares: diagonal elements exist, are symmetric, start at the
    # disjointness element; builders raise internally if the embedding breaks
    checked = skipped = 0
    diag_bad = []
    for f, fid in zip(corpus, ids):
        if f.n * f.n > cfg.tensor_bound:
            skipped += 1
            continue
        checked += 1
        t = cache.square(f)
        diag = diagonal_elements(t)
        least = min(diag, key=lambda i: t.frame.pops[i])
        if least != disjointness_element(t):
            diag_bad.append(fid)
        if any(transpose_cells(t, t.elements[i]) != t.elements[i]
               for i in diag):
            diag_bad.append(fid)
    entry("square-diagonal-symmetric-from-disjointness", checked, skipped,
          diag_bad)

    # binary coproducts of frames with the pair property keep it
    fprop = [(f, fid) for f, fid in zip(corpus, ids)
             if has_property_F(f)[0]]
    checked = skipped = 0
    prod_bad = []
    for i, (f, fid) in enumerate(fprop):
        for g, gid in fprop[i:]:
            if f.n * g.n > cfg.tensor_bound:
                skipped += 1
                continue
            checked += 1
            t = cache.pair(f, g)
            if not has_property_F(t.frame)[0]:
                prod_bad.append(f"{fid}*{gid}")
    entry("coproduct-preserves-F", checked, skipped, prod_bad)

    # irreducible or anti-Urysohn frames beyond the two-element one fail F
    irr_bad, au_bad, counted = [], [], 0
    for f, fid in zip(corpus, ids):
        if f.n < 3:
            continue
        counted += 1
        holds_F = _verdict(reports, fid, "F")
        if holds_F and _verdict(reports, fid, "irreducible"):
            irr_bad.append(fid)
        if holds_F and _verdict(reports, fid, "anti_urysohn"):
            au_bad.append(fid)
    entry("irreducible-blocks-F", counted, len(ids) - counted, irr_bad)
    entry("anti-urysohn-blocks-F", counted, len(ids) - counted, au_bad)
    return suite


# --- the audit -------------------------------------------------------------------


def run_audit(config: AuditConfig | None = None,
              expected: dict | None = None) -> dict:
    cfg = config or AuditConfig()
    expected = expected or load_expected_edges()
    axioms = list(expected["axioms"])
    base_edges = [tuple(e) for e in expected["edges"]]
    nf_pairs = {tuple(e) for e in expected["not_finitely_witnessable"]}
    closure = _transitive_closure(base_edges)

    corpus = build_corpus(cfg.max_poset, cfg.max_frame)
    ids = [frame_id(f) for f in corpus]
    targets = [f for f in corpus if f.n <= cfg.tu_bound]
    cache = TensorCache(cfg.tensor_bound)
    reports = _evaluate_all(corpus, ids, targets, cache, cfg)

    edge_results = _edge_results(reports, ids, base_edges,
                                 cfg.raise_on_violation)
    non_edges = _non_edges(reports, ids, axioms, closure, nf_pairs)
    theorems = _theorem_suite(corpus, ids, reports, cache, cfg)

    report = {
        "version": __version__,
        "config": {k: v for k, v in asdict(cfg).items() if k != "threads"},
        "axioms": axioms,
        "extra_properties": list(EXTRA_PROPERTIES),
        "corpus": [{"name": fid, "elements": f.n,
                    "canonical": canonical_digest(f)}
                   for f, fid in zip(corpus, ids)],
        "tu_targets": [fid for f, fid in zip(corpus, ids)
                       if f.n <= cfg.tu_bound],
        "expected_edges": [list(e) for e in base_edges],
        "edge_results": edge_results,
        "non_edges": non_edges,
        "finite_collapse": _collapse_section(reports, ids, axioms),
        "theorems": theorems,
        "verdicts": {fid: reports[fid].to_json() for fid in ids},
        "summary": {
            "frames": len(corpus),
            "edges_confirmed": sum(1 for e in edge_results
                                   if e["status"] == "confirmed"),
            "edges_violated": sum(1 for e in edge_results
                                  if e["status"] == "violated"),
            "non_edges_refuted": sum(1 for e in non_edges
                                     if e["status"] == "refuted"),
            "non_edges_unrefuted": sum(1 for e in non_edges
                                       if e["status"] == "unrefuted-at-bound"),
            "non_edges_not_finitely_witnessable": sum(
                1 for e in non_edges
                if e["status"] == "not-finitely-witnessable"),
            "theorems_confirmed": sum(1 for t in theorems
                                      if t["status"] == "confirmed"),
            "theorems_violated": sum(1 for t in theorems
                                     if t["status"] == "violated"),
        },
    }
    return report


def report_to_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


# --- exports ---------------------------------------------------------------------


def _transitive_reduction(nodes, pairs: set[tuple[str, str]]):
    'Drop pairs implied by chaining the others.'
    keep = []
    for a, b in sorted(pairs):
        rest = pairs - {(a, b)}
        if (a, b) not in _transitive_closure(rest):
            keep.append((a, b))
    return keep


def export_dot(report: dict) -> str:
    """Implication graph: solid expected edges, dashed corpus-only ones.

    Dashed edges are implications observed on every decided frame that the
    expected graph does not already entail, transitively reduced.
    """
    base = [tuple(e) for e in report["expected_edges"]]
    closure = _transitive_closure(base)
    observed = {tuple(e["pair"]) for e in report["non_edges"]
                if e["status"] != "refuted"}
    extra = _transitive_reduction(report["axioms"],
                                  closure | observed) if observed else []
    lines = ["digraph implications {", "  rankdir=BT;", "  node [shape=box];"]
    for a, b in base:
        lines.append(f'  "{a}" -> "{b}";')
    for a, b in extra:
        if (a, b) in closure or (a, b) in set(base):
            continue
        lines.append(f'  "{a}" -> "{b}" [style=dashed];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_corpus_jsonl(max_poset: int = 5, max_frame: int = 32) -> str:
    'One frame per line, loadable back through load_frame_json.'
    from .frame import frame_to_json
    lines = []
    for f in build_corpus(max_poset, max_frame):
        obj = frame_to_json(f)
        obj["name"] = frame_id(f)
        obj["canonical"] = canonical_digest(f)
        lines.append(json.dumps(obj, sort_keys=True))
    return "\n".join(lines) + "\n"
