"""Workbench for finite frames.

Validate finite lattices as frames, compute with sublocales and binary
coproducts, decide separation properties, and audit how those properties
relate across an exhaustive corpus of small frames.
"""

__version__ = "0.1.0"

from .errors import (BoundExceeded, EquivalenceViolation,
                     ExpectedEdgeViolated, FrameFormatError,
                     InternalInconsistency, LocaleLabError, NoBoundedLattice,
                     NotAPartialOrder, NotDistributive)
from .frame import (Frame, FrameHom, booleanization, canonical_digest,
                    canonical_form, enumerate_homs, frame_to_json,
                    heyting_arrow, hom_leq, is_irreducible, load_frame_json,
                    primes, pseudocomplement, validate_frame)
from .sublocale import (Sublocale, closed_sublocale, closure,
                        enumerate_sublocales, fitting, induced_frame,
                        is_fitted, is_sublocale, nucleus_image, one_point,
                        open_sublocale, sublocale_close, sublocale_join,
                        sublocale_meet, sublocale_violation)
from .tensor import (TensorFrame, build_tensor, diagonal_elements,
                     diagonal_sublocale, disjointness_element,
                     injection_left, injection_right, projection_left,
                     projection_right)
from .corpus import (FinPoset, alexandrov_frame, boolean_frame, build_corpus,
                     chain_frame, downset_frame, enumerate_posets, frame_id,
                     product_space, sierpinski_space, trivial_frame,
                     two_frame)
from .separation import (AXIOMS, AxiomReport, check_F_equivalences,
                         evaluate_frame, has_property_F, is_anti_urysohn,
                         is_F_separated, is_fit, is_hausdorff, is_prefit,
                         is_pt_fit, is_regular, is_strongly_hausdorff,
                         is_subfit, is_T1, is_totally_unordered,
                         is_weakly_subfit)
from .audit import (AuditConfig, TensorCache, export_corpus_jsonl,
                    export_dot, load_expected_edges, report_to_json,
                    run_audit)

__all__ = [
    "__version__",
    # errors
    "BoundExceeded", "EquivalenceViolation", "ExpectedEdgeViolated",
    "FrameFormatError", "InternalInconsistency", "LocaleLabError",
    "NoBoundedLattice", "NotAPartialOrder", "NotDistributive",
    # frames
    "Frame", "FrameHom", "booleanization", "canonical_digest",
    "canonical_form", "enumerate_homs", "frame_to_json", "heyting_arrow",
    "hom_leq", "is_irreducible", "load_frame_json", "primes",
    "pseudocomplement", "validate_frame",
    # sublocales
    "Sublocale", "closed_sublocale", "closure", "enumerate_sublocales",
    "fitting", "induced_frame", "is_fitted", "is_sublocale", "nucleus_image",
    "one_point", "open_sublocale", "sublocale_close", "sublocale_join",
    "sublocale_meet", "sublocale_violation",
    # coproducts
    "TensorFrame", "build_tensor", "diagonal_elements", "diagonal_sublocale",
    "disjointness_element", "injection_left", "injection_right",
    "projection_left", "projection_right",
    # corpus
    "FinPoset", "alexandrov_frame", "boolean_frame", "build_corpus",
    "chain_frame", "downset_frame", "enumerate_posets", "frame_id",
    "product_space", "sierpinski_space", "trivial_frame", "two_frame",
    # separation
    "AXIOMS", "AxiomReport", "check_F_equivalences", "evaluate_frame",
    "has_property_F", "is_anti_urysohn", "is_F_separated", "is_fit",
    "is_hausdorff", "is_prefit", "is_pt_fit", "is_regular",
    "is_strongly_hausdorff", "is_subfit", "is_T1", "is_totally_unordered",
    "is_weakly_subfit",
    # audit
    "AuditConfig", "TensorCache", "export_corpus_jsonl", "export_dot",
    "load_expected_edges", "report_to_json", "run_audit",
]
