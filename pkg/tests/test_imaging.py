# tests/test_imaging.py

"""
Tests for the image kernels: compositing, binarization, connected components,
template matching, SSIM, resampling and IoU.
"""

from collections import deque

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays
from numpy.testing import assert_array_equal

from scalediff.core.errors import (
    DegenerateImage,
    DegenerateTemplate,
    DimensionMismatch,
    OutOfBounds,
    TemplateTooLarge,
)
from scalediff.core.imaging import (
    binarize,
    composite_src_over,
    connected_components,
    foreground,
    iou,
    otsu_threshold,
    paste_clipped,
    resize_area,
    ssim,
    template_match,
    to_gray,
    visible_matrix,
)
from scalediff.core.snapshot.models import Rect

# --- Oracles ---

def _src_over_scalar(dest, src):
    """Full-precision source-over of one straight-alpha pixel."""
    sa, da = src[3] / 255.0, dest[3] / 255.0
    out_a = sa + (1.0 - sa) * da
    if out_a == 0:
        return [0.0, 0.0, 0.0, 0.0]
    colour = [(src[c] * sa + dest[c] * da * (1.0 - sa)) / out_a for c in range(3)]
    return colour + [out_a * 255.0]


def _flood_fill_components(mask):
    """(area, bbox) of each 8-connected component in raster order of first pixel."""
    h, w = mask.shape
    seen = np.zeros_like(mask, dtype=bool)
    found = []
    for y in range(h):
        for x in range(w):
            if not mask[y, x] or seen[y, x]:
                continue
            queue = deque([(y, x)])
            seen[y, x] = True
            cells = []
            while queue:
                cy, cx = queue.popleft()
                cells.append((cy, cx))
                for dy in (-1, 0, 1):
                    for dx in (-1, 0, 1):
                        ny, nx = cy + dy, cx + dx
                        if 0 <= ny < h and 0 <= nx < w and mask[ny, nx] and not seen[ny, nx]:
                            seen[ny, nx] = True
                            queue.append((ny, nx))
            ys = [c[0] for c in cells]
            xs = [c[1] for c in cells]
            found.append((len(cells), Rect(x=min(xs), y=min(ys), w=max(xs) - min(xs) + 1, h=max(ys) - min(ys) + 1)))
    return found


def _otsu_exhaustive(gray):
    """Direct between-class variance search; smallest t wins ties."""
    values = gray.ravel().astype(np.float64)
    best_t, best = None, -1.0
    for t in range(256):
        low, high = values[values <= t], values[values > t]
        if low.size == 0 or high.size == 0:
            continue
        w0, w1 = low.size / values.size, high.size / values.size
        between = w0 * w1 * (low.mean() - high.mean()) ** 2
        if between > best * (1 + 1e-12) + 1e-12:
            best_t, best = t, between
    return best_t


# --- Compositing ---

def test_opaque_source_replaces_destination():
    dest = np.full((4, 4, 4), 100, dtype=np.uint8)
    src = np.zeros((2, 2, 4), dtype=np.uint8)
    src[...] = (10, 20, 30, 255)
    out = composite_src_over(dest, src, (1, 1))
    assert_array_equal(out[1:3, 1:3], src)
    assert_array_equal(out[0], dest[0])
    assert out is not dest


def test_transparent_source_keeps_destination():
    dest = np.random.default_rng(0).integers(0, 256, size=(5, 5, 4), dtype=np.uint8)
    src = np.zeros((5, 5, 4), dtype=np.uint8)
    assert_array_equal(composite_src_over(dest, src, (0, 0)), dest)


def test_composite_rejects_source_outside_destination():
    dest = np.zeros((4, 4, 4), dtype=np.uint8)
    with pytest.raises(OutOfBounds):
        composite_src_over(dest, np.zeros((2, 2, 4), dtype=np.uint8), (3, 0))
    with pytest.raises(OutOfBounds):
        composite_src_over(dest, np.zeros((2, 2, 4), dtype=np.uint8), (-1, 0))


def test_composite_matches_scalar_oracle_on_random_pixels():
    rng = np.random.default_rng(7)
    for _ in range(100):
        dest = rng.integers(0, 256, size=(1, 1, 4), dtype=np.uint8)
        src = rng.integers(0, 256, size=(1, 1, 4), dtype=np.uint8)
        out = composite_src_over(dest, src, (0, 0))[0, 0].astype(np.float64)
        expected = np.array(_src_over_scalar(dest[0, 0].astype(float), src[0, 0].astype(float)))
        assert np.all(np.abs(out - expected) <= 1.0), (dest, src, out, expected)


def test_paste_clipped_discards_outside_part():
    dest = np.zeros((4, 4, 4), dtype=np.uint8)
    src = np.full((3, 3, 4), 255, dtype=np.uint8)
    out = paste_clipped(dest, src, (-1, 2))
    assert out[2:4, 0:2, 3].all()
    assert not out[0:2].any()
    assert not out[:, 2:].any()
    assert paste_clipped(dest, src, (10, 10)) is dest


def test_visible_matrix_marks_nonzero_alpha():
    img = np.zeros((2, 3, 4), dtype=np.uint8)
    img[0, 1, 3] = 1
    assert_array_equal(visible_matrix(img), [[False, True, False], [False, False, False]])


# --- Binarization ---

def test_to_gray_weights_and_rounding():
    img = np.array([[[255, 0, 0, 255], [0, 255, 0, 0], [0, 0, 255, 9], [255, 255, 255, 255]]], dtype=np.uint8)
    assert to_gray(img).tolist() == [[76, 150, 29, 255]]


def test_otsu_two_level_image_splits_between_levels():
    gray = np.array([[10, 10, 200, 200]], dtype=np.uint8)
    t = otsu_threshold(gray)
    assert t == 10
    assert_array_equal(binarize(gray, t), [[True, True, False, False]])


def test_otsu_matches_exhaustive_search_on_random_histograms():
    rng = np.random.default_rng(3)
    for _ in range(100):
        levels = rng.integers(0, 256, size=rng.integers(2, 6))
        gray = rng.choice(levels, size=(12, 12)).astype(np.uint8)
        if np.unique(gray).size < 2:
            continue
        assert otsu_threshold(gray) == _otsu_exhaustive(gray)


def test_otsu_uniform_image_is_degenerate():
    with pytest.raises(DegenerateImage):
        otsu_threshold(np.full((3, 3), 7, dtype=np.uint8))
    with pytest.raises(DegenerateImage):
        otsu_threshold(np.zeros((0, 3), dtype=np.uint8))


def test_foreground_of_uniform_image_is_empty():
    img = np.full((4, 4, 4), 128, dtype=np.uint8)
    assert not foreground(img).any()


def test_foreground_selects_dark_content():
    img = np.full((3, 3, 4), 240, dtype=np.uint8)
    img[1, 1, :3] = 10
    mask = foreground(img)
    assert mask.sum() == 1 and mask[1, 1]


@given(arrays(np.uint8, (6, 6)), st.integers(0, 254))
def test_binarize_is_monotone_in_threshold(gray, t):
    assert np.all(binarize(gray, t) <= binarize(gray, t + 1))


# --- Connected components ---

def test_diagonal_cells_join_one_component():
    m = np.array([[1, 0, 0], [0, 1, 0], [0, 0, 0], [1, 1, 0]], dtype=bool)
    comps = connected_components(m)
    assert [c.label for c in comps] == [1, 2]
    assert comps[0].area == 2 and comps[0].bbox == Rect(x=0, y=0, w=2, h=2)
    assert comps[1].area == 2 and comps[1].bbox == Rect(x=0, y=3, w=2, h=1)


def test_empty_matrix_has_no_components():
    assert connected_components(np.zeros((4, 4), dtype=bool)) == []


@settings(max_examples=200, deadline=None)
@given(arrays(np.bool_, st.tuples(st.integers(1, 64), st.integers(1, 64))))
def test_components_match_flood_fill_oracle(mask):
    comps = connected_components(mask)
    assert [(c.area, c.bbox) for c in comps] == _flood_fill_components(mask)
    assert sum(c.area for c in comps) == int(mask.sum())


# --- Template matching ---

def test_template_match_recovers_planted_offsets():
    rng = np.random.default_rng(11)
    for _ in range(100):
        target = rng.integers(0, 256, size=(40, 50, 4), dtype=np.uint8)
        h, w = int(rng.integers(3, 12)), int(rng.integers(3, 12))
        y, x = int(rng.integers(0, 40 - h + 1)), int(rng.integers(0, 50 - w + 1))
        template = target[y:y + h, x:x + w].copy()
        if to_gray(template).std() == 0:
            continue
        result = template_match(target, template)
        assert result.best_loc == (x, y)
        assert result.best_score >= 1 - 1e-6
        assert result.score_map.shape == (40 - h + 1, 50 - w + 1)


def test_template_match_scores_are_bounded():
    rng = np.random.default_rng(2)
    target = rng.integers(0, 256, size=(20, 20), dtype=np.uint8)
    template = rng.integers(0, 256, size=(5, 5), dtype=np.uint8)
    scores = template_match(target, template).score_map
    assert scores.min() >= -1.0 and scores.max() <= 1.0


def test_template_larger_than_target_raises():
    with pytest.raises(TemplateTooLarge):
        template_match(np.zeros((4, 4), dtype=np.uint8), np.arange(25, dtype=np.uint8).reshape(5, 5))


def test_uniform_template_is_degenerate():
    with pytest.raises(DegenerateTemplate):
        template_match(np.arange(100, dtype=np.uint8).reshape(10, 10), np.full((3, 3), 9, dtype=np.uint8))


def test_flat_target_windows_score_zero():
    target = np.full((6, 6), 50, dtype=np.uint8)
    template = np.array([[0, 255], [255, 0]], dtype=np.uint8)
    result = template_match(target, template)
    assert not result.score_map.any()
    assert result.best_loc == (0, 0)


# --- SSIM and resampling ---

def test_ssim_of_identical_images_is_one():
    rng = np.random.default_rng(5)
    img = rng.integers(0, 256, size=(24, 30, 4), dtype=np.uint8)
    assert ssim(img, img) == pytest.approx(1.0, abs=1e-9)


def test_ssim_drops_for_different_content():
    rng = np.random.default_rng(6)
    a = rng.integers(0, 256, size=(24, 24, 4), dtype=np.uint8)
    b = rng.integers(0, 256, size=(24, 24, 4), dtype=np.uint8)
    assert ssim(a, b) < 0.5


def test_ssim_requires_equal_sizes():
    with pytest.raises(DimensionMismatch):
        ssim(np.zeros((4, 4, 4), dtype=np.uint8), np.zeros((4, 5, 4), dtype=np.uint8))


def test_ssim_falls_back_to_alpha_when_rgb_is_zero():
    alpha = np.zeros((24, 24), dtype=np.uint8)
    alpha[4:14, 4:14] = 255
    moved = np.roll(alpha, 8, axis=1)
    zeros = np.zeros((24, 24, 3), dtype=np.uint8)
    a = np.dstack([zeros, alpha])
    b = np.dstack([zeros, moved])
    assert ssim(a, a) == pytest.approx(1.0, abs=1e-9)
    # on the all-zero RGB channels alone the pair would score exactly 1
    assert ssim(a, b) < 0.9


def test_ssim_is_symmetric():
    rng = np.random.default_rng(11)
    for _ in range(20):
        a = rng.integers(0, 256, size=(16, 20, 4), dtype=np.uint8)
        b = rng.integers(0, 256, size=(16, 20, 4), dtype=np.uint8)
        assert abs(ssim(a, b) - ssim(b, a)) <= 1e-9


def test_ssim_of_inverted_image_is_negative():
    ramp = np.tile(np.linspace(0, 255, 32), (32, 1))
    stripes = np.where((np.arange(32) // 4) % 2 == 0, 60.0, 0.0)[:, None]
    gray = np.clip(ramp * 0.75 + stripes, 0, 255).astype(np.uint8)
    opaque = np.full_like(gray, 255)
    a = np.dstack([gray, gray, gray, opaque])
    inverted = 255 - gray
    b = np.dstack([inverted, inverted, inverted, opaque])
    assert ssim(a, b) < 0.0


def test_ssim_agrees_with_gaussian_reference():
    """Cross-check against an independent windowed implementation on gray images."""
    from scipy.ndimage import gaussian_filter

    rng = np.random.default_rng(9)
    c1, c2 = (0.01 * 255) ** 2, (0.03 * 255) ** 2
    for _ in range(50):
        base = rng.integers(0, 256, size=(32, 32), dtype=np.uint8)
        noisy = np.clip(base.astype(int) + rng.integers(-40, 41, size=base.shape), 0, 255).astype(np.uint8)
        x, y = base.astype(np.float64), noisy.astype(np.float64)

        def mean(v):
            return gaussian_filter(v, sigma=1.5, truncate=5 / 1.5, mode="reflect")[5:-5, 5:-5]

        mx, my = mean(x), mean(y)
        sxx, syy, sxy = mean(x * x) - mx * mx, mean(y * y) - my * my, mean(x * y) - mx * my
        reference = np.mean((2 * mx * my + c1) * (2 * sxy + c2) / ((mx * mx + my * my + c1) * (sxx + syy + c2)))

        a = np.dstack([base, base, base, np.full_like(base, 255)])
        b = np.dstack([noisy, noisy, noisy, np.full_like(noisy, 255)])
        assert ssim(a, b) == pytest.approx(reference, abs=1e-3)


def test_resize_area_identity_and_box_average():
    img = np.zeros((2, 2, 4), dtype=np.uint8)
    img[0, 0] = img[1, 1] = 200
    assert_array_equal(resize_area(img, 2, 2), img)
    assert resize_area(img, 1, 1)[0, 0].tolist() == [100, 100, 100, 100]


def test_resize_area_upscale_keeps_uniform_colour():
    img = np.full((3, 3, 4), 77, dtype=np.uint8)
    out = resize_area(img, 7, 5)
    assert out.shape == (5, 7, 4)
    assert (out == 77).all()


def test_resize_area_rejects_empty_target():
    with pytest.raises(ValueError):
        resize_area(np.zeros((2, 2, 4), dtype=np.uint8), 0, 2)


# --- IoU ---

def test_iou_cases():
    a = Rect(x=0, y=0, w=10, h=10)
    assert iou(a, a) == 1.0
    assert iou(a, Rect(x=5, y=0, w=10, h=10)) == pytest.approx(50 / 150)
    assert iou(a, Rect(x=20, y=20, w=1, h=1)) == 0.0
    assert iou(Rect(x=0, y=0, w=0, h=0), Rect(x=0, y=0, w=0, h=0)) == 0.0


rects = st.builds(Rect, x=st.integers(-20, 20), y=st.integers(-20, 20), w=st.integers(0, 20), h=st.integers(0, 20))


@given(rects, rects)
def test_iou_is_symmetric_and_bounded(a, b):
    assert iou(a, b) == iou(b, a)
    assert 0.0 <= iou(a, b) <= 1.0
