# hpl/pda/__init__.py
from .backtranslate import kappa, pda_to_hors
from .derive import derive_pda
from .lockstep import lockstep_check
from .normalize import is_normalized, normalize_pda, resolve_op
from .pdafile import format_pda, load_pda, parse_pda
from .roundtrip import roundtrip_safe_scheme
from .run import run_pda

__all__ = [
    "derive_pda",
    "format_pda",
    "is_normalized",
    "kappa",
    "load_pda",
    "lockstep_check",
    "normalize_pda",
    "parse_pda",
    "pda_to_hors",
    "resolve_op",
    "roundtrip_safe_scheme",
    "run_pda",
]
