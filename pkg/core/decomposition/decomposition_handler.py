"""
Decomposition Handler
Path: core/decomposition/decomposition_handler.py

Dispatches a signal to EFD, EWT or FDM, times the run and writes a one-line
audit record. Callers get an outcome dict instead of an exception.
"""

import logging
import time
from typing import Optional

from core.decomposition.efd import efd_decompose
from core.decomposition.ewt import ewt_decompose
from core.decomposition.fdm import fdm_decompose
from core.decomposition.results import DecompositionResult
from core.spectral.corefiles.base import Signal
from core.spectral.corefiles.enums import DecompositionMethod, ExitStatus, SegmentationMethod, SignalExtension
from core.spectral.corefiles.errors import DecompositionError, InvalidInputError, exit_status_for

logger = logging.getLogger(__name__)


class DecompositionHandler:
    """
    Runs one decomposition per call and reports how it went.

    The handler holds the method parameters; `process` can be called on any
    number of signals.
    """

    def __init__(self, method: DecompositionMethod = DecompositionMethod.EFD,
                 n_segments: Optional[int] = None,
                 segmentation: Optional[SegmentationMethod] = None,
                 gamma: Optional[float] = None,
                 extension: SignalExtension = SignalExtension.NONE):
        """
        Args:
            method: Which decomposition to run.
            n_segments: Requested segment count; required for EFD and EWT.
            segmentation: EWT boundary rule (defaults to midpoint of maxima).
            gamma: EWT transition ratio override.
            extension: EFD frame extension.
        """
        self.method = DecompositionMethod(method)
        self.n_segments = n_segments
        self.segmentation = SegmentationMethod(segmentation) if segmentation else None
        self.gamma = gamma
        self.extension = SignalExtension(extension)

    def decompose(self, signal: Signal) -> DecompositionResult:
        """Run the configured method and let errors propagate."""
        if self.method.needs_segments() and self.n_segments is None:
            raise InvalidInputError(f"{self.method.value} needs a segment count")

        if self.method == DecompositionMethod.EFD:
            return efd_decompose(signal, self.n_segments, extension=self.extension)
        if self.method == DecompositionMethod.EWT:
            segmentation = self.segmentation or SegmentationMethod.MIDPOINT_MAXIMA
            return ewt_decompose(signal, self.n_segments, segmentation=segmentation, gamma=self.gamma)
        return fdm_decompose(signal)

    def process(self, signal: Signal) -> dict:
        """
        Decompose and summarise.

        Returns:
            dict: 'success' (bool), 'status' (ExitStatus value), 'message' (str),
            'result' (DecompositionResult or None) and 'elapsed_ms' (float).
        """
        start_time = time.perf_counter()
        try:
            result = self.decompose(signal)
            residual = result.reconstruction_residual(signal)
            message = f"{result.n_modes} modes, residual {residual:.3e}"
            return self._finalize(ExitStatus.OK, message, result, start_time)

        except DecompositionError as e:
            return self._finalize(exit_status_for(e), str(e), None, start_time)

        except Exception as e:
            logger.error(f"Unexpected failure in {self.method.value} decomposition: {str(e)}")
            return self._finalize(ExitStatus.NUMERICAL, "Internal numerical error", None, start_time)

    def _finalize(self, status: ExitStatus, message: str, result: Optional[DecompositionResult],
                  start_time: float) -> dict:
        elapsed_ms = (time.perf_counter() - start_time) * 1000

        log_msg = f"{self.method.value.upper()} | status: {status.name} | {elapsed_ms:.2f} ms | {message}"
        if status.is_success():
            logger.info(log_msg)
        else:
            logger.error(log_msg)

        return {
            "success": status.is_success(),
            "status": int(status),
            "message": message,
            "result": result,
            "elapsed_ms": elapsed_ms,
        }


__all__ = [
    'DecompositionHandler',
]
