"""Exception taxonomy.  Every rejection carries a machine-readable witness."""

from __future__ import annotations


class LocaleLabError(Exception):
    'Base class for every error this package raises on purpose.'


class FrameFormatError(LocaleLabError):
    'Malformed frame description (bad JSON shape, duplicate labels, ...).'


class NotAPartialOrder(LocaleLabError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class NoBoundedLattice(LocaleLabError):
    'Missing bottom, top, meet or join.  witness names the offending pair.'

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class NotDistributive(LocaleLabError):
    'witness is the first (a, b, c) with a ∧ (b ∨ c) != (a ∧ b) ∨ (a ∧ c).'

    def __init__(self, witness, labels=None):
        self.witness = tuple(witness)
        self.labels = tuple(labels) if labels is not None else None
        shown = self.labels or self.witness
        super().__init__(f"meet does not distribute over join at {shown}")


class BoundExceeded(LocaleLabError):
    'A configured size or search budget was exceeded.'

    def __init__(self, message: str, bound=None):
        super().__init__(message)
        self.bound = bound


class InternalInconsistency(LocaleLabError):
    'Two routes that must agree disagreed.  Always a bug, never user error.'


class EquivalenceViolation(InternalInconsistency):
    'Provably equivalent conditions evaluated differently on some frame.'


class ExpectedEdgeViolated(LocaleLabError):
    'An implication the audit treats as proved failed on a concrete frame.'

    def __init__(self, edge, frame_id, witness=None):
        self.edge = tuple(edge)
        self.frame_id = frame_id
        self.witness = witness
        super().__init__(f"expected implication {edge[0]} -> {edge[1]} "
                         f"fails on frame {frame_id}")
