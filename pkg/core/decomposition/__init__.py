from .decomposition_handler import DecompositionHandler
from .efd import band_mode, decompose_with_boundaries, efd_decompose
from .ewt import EwtFilterBank, build_filter_bank, ewt_decompose, ewt_reconstruct, meyer_beta
from .fdm import FdmScanState, fdm_decompose, phase_monotone_span, verify_fibf_phase
from .results import DecompositionResult, Mode

__all__ = [

#results
    'Mode',
    'DecompositionResult',

#efd
    'band_mode',
    'efd_decompose',
    'decompose_with_boundaries',

#ewt
    'meyer_beta',
    'EwtFilterBank',
    'build_filter_bank',
    'ewt_decompose',
    'ewt_reconstruct',

#fdm
    'FdmScanState',
    'phase_monotone_span',
    'fdm_decompose',
    'verify_fibf_phase',

#dispatch
    'DecompositionHandler',
]
