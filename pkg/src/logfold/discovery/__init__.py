"""Process discovery and reducible-substructure detection."""

from logfold.discovery.alpha import alpha_discover, collapse_runs, self_looping_activities
from logfold.discovery.net_io import gspn_from_dict, gspn_to_dict, load_gspn, replay, save_gspn
from logfold.discovery.substructures import SubstructureDetector, detect_substructures

__all__ = [
    "alpha_discover",
    "collapse_runs",
    "self_looping_activities",
    "detect_substructures",
    "SubstructureDetector",
    "save_gspn",
    "load_gspn",
    "gspn_to_dict",
    "gspn_from_dict",
    "replay",
]
