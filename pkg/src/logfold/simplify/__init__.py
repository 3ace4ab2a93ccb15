"""Folding of sequence, or and self-loop substructures."""

from logfold.simplify.folding import (
    collapse_runs,
    fold_label,
    fold_or,
    fold_self_loop,
    fold_sequence,
    or_delay,
    repeat_runs,
    sequence_runs,
)
from logfold.simplify.manifest import DELAY_RULES, FoldedActivity, FoldManifest
from logfold.simplify.simplifier import build_manifest, check_disjoint, fresh_labels, rewrite_net, simplify_log

__all__ = [
    "fold_sequence",
    "fold_or",
    "fold_self_loop",
    "fold_label",
    "or_delay",
    "collapse_runs",
    "sequence_runs",
    "repeat_runs",
    "simplify_log",
    "rewrite_net",
    "check_disjoint",
    "fresh_labels",
    "build_manifest",
    "FoldedActivity",
    "FoldManifest",
    "DELAY_RULES",
]
