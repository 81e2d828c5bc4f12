# scalediff/core/imaging/matching.py

"""
Template matching with the normalized correlation coefficient
(mean-subtracted, norm-divided cross-correlation, a.k.a. CCOEFF_NORMED).

Matching runs on the grayscale of the RGB channels. The cross term uses an
FFT convolution; window sums come from integral images in exact integer
arithmetic so flat windows score exactly 0.
"""

import logging
from typing import Tuple

import numpy as np
from numpy.typing import NDArray
from pydantic import BaseModel, ConfigDict
from scipy.signal import fftconvolve

from ..errors import DegenerateTemplate, TemplateTooLarge
from .binarization import to_gray

logger = logging.getLogger(__name__)

# Scores within this distance of the maximum count as tied; the first one in
# row-major order wins.
_TIE_TOLERANCE = 1e-9


class MatchResult(BaseModel):
    """
    Score map and best location of a template search.

    `score_map` has shape (T.h - S.h + 1, T.w - S.w + 1), i.e. rows by columns;
    `best_loc` is (x, y) in target coordinates.
    """
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    score_map: np.ndarray
    best_loc: Tuple[int, int]
    best_score: float


def _as_gray(img: np.ndarray) -> NDArray[np.int64]:
    if img.ndim == 3:
        img = to_gray(img)
    return img.astype(np.int64)


def _window_sums(values: NDArray[np.int64], h: int, w: int) -> NDArray[np.int64]:
    """Sum over every h x w window (valid positions only) via an integral image."""
    integral = np.zeros((values.shape[0] + 1, values.shape[1] + 1), dtype=np.int64)
    integral[1:, 1:] = values.cumsum(axis=0).cumsum(axis=1)
    return integral[h:, w:] - integral[:-h, w:] - integral[h:, :-w] + integral[:-h, :-w]


def template_match(target: np.ndarray, template: np.ndarray) -> MatchResult:
    """
    Slides `template` over `target` and scores every placement.

    Args:
        target: RGBA image (or 2-D gray array) to search in.
        template: RGBA image (or 2-D gray array) to search for; no larger than target.

    Returns:
        MatchResult with scores in [-1, 1]; windows of zero variance score 0.

    Raises:
        TemplateTooLarge: The template exceeds the target in either dimension.
        DegenerateTemplate: The template has zero intensity variance.
    """
    t_gray = _as_gray(target)
    s_gray = _as_gray(template)
    th, tw = t_gray.shape
    sh, sw = s_gray.shape
    if sh > th or sw > tw:
        raise TemplateTooLarge(f"Template {sw}x{sh} larger than target {tw}x{th}")
    if sh == 0 or sw == 0:
        raise DegenerateTemplate("Empty template")

    n = sh * sw
    s_sum = int(s_gray.sum())
    s_var_n = n * int((s_gray * s_gray).sum()) - s_sum * s_sum  # n^2 * variance
    if s_var_n == 0:
        raise DegenerateTemplate(f"Template {sw}x{sh} has uniform intensity")

    s_zero = s_gray.astype(np.float64) - s_sum / n
    s_norm2 = s_var_n / n

    t_float = t_gray.astype(np.float64)
    # The template is zero-mean, so re-centring the target changes nothing but rounding.
    numerator = fftconvolve(t_float - t_float.mean(), s_zero[::-1, ::-1], mode="valid")

    win_sum = _window_sums(t_gray, sh, sw)
    win_sq = _window_sums(t_gray * t_gray, sh, sw)
    win_var_n = (n * win_sq - win_sum * win_sum).astype(np.float64) / n

    denom = np.sqrt(win_var_n * s_norm2)
    scores = np.zeros_like(numerator)
    np.divide(numerator, denom, out=scores, where=win_var_n > 0)
    np.clip(scores, -1.0, 1.0, out=scores)

    best_score = float(scores.max())
    flat_index = int(np.flatnonzero(scores >= best_score - _TIE_TOLERANCE)[0])
    row, col = divmod(flat_index, scores.shape[1])
    logger.debug(f"Template {sw}x{sh} in {tw}x{th}: best {best_score:.6f} at ({col},{row})")
    return MatchResult(score_map=scores, best_loc=(col, row), best_score=best_score)
