import itertools
import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sphcodes import binary, spherical
from sphcodes.errors import (
    CollapseError,
    DegenerateCode,
    InputFormatError,
    LambdaOutOfRange,
)
from sphcodes.geometry import Hyperplane, LineThroughOrigin


def random_sph_code(rng, dim_max=6, card_max=32):
    dim = int(rng.integers(2, dim_max + 1))
    card = int(rng.integers(2, card_max + 1))
    pts = rng.standard_normal((card, dim))
    return spherical.SphericalCode(pts, normalize=True, check_distinct=False)


def square_code():
    return spherical.SphericalCode(
        [[1, 0], [0, 1], [-1, 0], [0, -1]], check_distinct=False
    )


# -- construction ------------------------------------------------------------

def test_rejects_non_unit_points():
    with pytest.raises(ValueError):
        spherical.SphericalCode([[1.0, 1.0]])


def test_rejects_duplicate_points():
    with pytest.raises(ValueError):
        spherical.SphericalCode([[1.0, 0.0], [1.0, 0.0]])


def test_rate_and_code_point():
    code = square_code()
    assert code.rate == pytest.approx(1.0)
    pt = code.code_point("demo")
    assert pt.cos_phi == pytest.approx(0.0, abs=1e-12)
    assert pt.phi == pytest.approx(math.pi / 2, abs=1e-9)
    assert pt.provenance == "demo"


# -- spoil1: hyperplane section embedding ------------------------------------

@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2 ** 32 - 1), st.floats(0.0, 0.99))
def test_spoil1_transforms_every_pair(seed, offset):
    rng = np.random.default_rng(seed)
    code = random_sph_code(rng)
    normal = rng.standard_normal(code.dimension + 1)
    normal /= np.linalg.norm(normal)
    hp = Hyperplane(normal, offset)
    out = spherical.spoil1(code, hp)
    assert out.dimension == code.dimension + 1
    assert out.card == code.card
    rho2 = hp.section_radius ** 2
    g_old = code.points @ code.points.T
    g_new = out.points @ out.points.T
    assert np.allclose(g_new, rho2 * g_old + (1 - rho2), atol=1e-9)


def test_spoil1_lambda_one_is_equatorial():
    code = square_code()
    out = spherical.spoil1_lambda(code, 1.0)
    assert out.cos_min_angle == pytest.approx(code.cos_min_angle, abs=1e-12)


def test_spoil1_lambda_zero_collapses():
    with pytest.raises(CollapseError):
        spherical.spoil1_lambda(square_code(), 0.0)


def test_spoil1_preserves_binary_min_distance():
    # embedded binary code: section embedding sends cos to 1 - 2d/(n+1)
    code = binary.BinaryCode(["00000", "00111", "11001", "11110"])
    sph = binary.embed_binary(code)
    n, d = code.length, code.min_distance
    lam = n / (n + 1)
    out = spherical.spoil1_lambda(sph, lam)
    assert out.cos_min_angle == pytest.approx(1 - 2 * d / (n + 1), abs=1e-9)


# -- spoil2: projection off a line -------------------------------------------

@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2 ** 32 - 1))
def test_spoil2_two_sided_formula(seed):
    rng = np.random.default_rng(seed)
    code = random_sph_code(rng, dim_max=6, card_max=12)
    v = rng.standard_normal(code.dimension)
    line = LineThroughOrigin(v / np.linalg.norm(v))
    comps = code.points @ line.direction
    if np.min(1 - comps ** 2) < 1e-6:
        return  # a point too close to the axis: covered by its own test
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            out, xi = spherical.spoil2(code, line)
    except DegenerateCode:
        return  # all projections coincided; nothing to compare
    if out.card != code.card:
        return
    assert xi == pytest.approx(float(np.sqrt(np.min(1 - comps ** 2))), abs=1e-12)
    for a in range(code.card):
        for b in range(a + 1, code.card):
            x = math.sqrt(1 - comps[a] ** 2)
            y = math.sqrt(1 - comps[b] ** 2)
            cos_theta = float(code.points[a] @ code.points[b])
            # minus when the axis components agree in sign, plus otherwise
            expected = (cos_theta - comps[a] * comps[b]) / (x * y)
            got = float(out.points[a] @ out.points[b])
            assert got == pytest.approx(expected, abs=1e-9)


def test_spoil2_opposite_axis_components_construction():
    # two points with equal-magnitude opposite axis components: the
    # projected cosine is (1 + u) cos theta + u with u = (1 - xi^2)/xi^2
    a = math.sqrt(0.5)
    x = np.array([a, 0.0, a])
    y = np.array([0.0, a, -a])
    code = spherical.SphericalCode([x, y])
    line = LineThroughOrigin([0.0, 0.0, 1.0])
    out, xi = spherical.spoil2(code, line)
    u = spherical.xi_to_u(xi)
    assert xi == pytest.approx(math.sqrt(0.5), abs=1e-12)
    assert u == pytest.approx(1.0, abs=1e-12)
    cos_theta = float(x @ y)
    got = float(out.points[0] @ out.points[1])
    assert got == pytest.approx((1 + u) * cos_theta + u, abs=1e-9)
    assert got == pytest.approx(0.0, abs=1e-12)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2 ** 32 - 1))
def test_spoil2_bisector_construction(seed):
    # line through the bisector of a two-point code: the projections are
    # exactly antipodal, (1 + u) cos - u = -1
    rng = np.random.default_rng(seed)
    dim = int(rng.integers(2, 7))
    x = rng.standard_normal(dim)
    x /= np.linalg.norm(x)
    y = rng.standard_normal(dim)
    y -= (y @ x) * x
    y = math.cos(1.0) * x + math.sin(1.0) * (y / np.linalg.norm(y))
    code = spherical.SphericalCode([x, y], check_distinct=False)
    mid = x + y
    line = LineThroughOrigin(mid / np.linalg.norm(mid))
    out, xi = spherical.spoil2(code, line)
    u = spherical.xi_to_u(xi)
    cos_theta = float(x @ y)
    assert (1 + u) * cos_theta - u == pytest.approx(-1.0, abs=1e-9)
    assert float(out.points[0] @ out.points[1]) == pytest.approx(-1.0, abs=1e-9)


def test_spoil2_merges_coinciding_rays():
    # two points differing only along the axis project to the same ray
    a = math.sqrt(0.5)
    code = spherical.SphericalCode(
        [[a, 0.0, a], [a, 0.0, -a], [0.0, 1.0, 0.0]]
    )
    line = LineThroughOrigin([0.0, 0.0, 1.0])
    with pytest.warns(UserWarning):
        out, _ = spherical.spoil2(code, line)
    assert out.card == 2


# -- spoil3: hemisphere restriction -------------------------------------------

@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2 ** 32 - 1))
def test_spoil3_monotone_min_angle(seed):
    rng = np.random.default_rng(seed)
    code = random_sph_code(rng)
    v = rng.standard_normal(code.dimension)
    line = LineThroughOrigin(v / np.linalg.norm(v))
    sign = 1 if rng.integers(2) else -1
    try:
        out = spherical.spoil3(code, line, sign)
    except DegenerateCode:
        return
    plus, minus = spherical.hemisphere_counts(code, line)
    assert plus + minus == code.card
    assert out.card == (plus if sign > 0 else minus)
    if out.card >= 2:
        assert out.min_angle >= code.min_angle - 1e-12


def test_spoil3_boundary_convention():
    code = square_code()
    line = LineThroughOrigin([1.0, 0.0])
    out = spherical.spoil3(code, line, +1)
    # the two boundary points (0, +-1) count as non-negative
    assert out.card == 3


# -- find_balanced_line --------------------------------------------------------

def test_balanced_line_exhaustive_on_circle():
    # all codes with card <= 8 on S^1 from a fixed angular menu
    angles = [2 * math.pi * k / 16 for k in range(16)]
    rng = np.random.default_rng(11)
    for card in range(2, 9):
        for _ in range(20):
            chosen = rng.choice(16, size=card, replace=False)
            pts = [[math.cos(angles[i]), math.sin(angles[i])] for i in chosen]
            code = spherical.SphericalCode(pts, check_distinct=False)
            line, sign, count = spherical.find_balanced_line(code, seed=0)
            assert code.card / 2 <= count < code.card
            out = spherical.spoil3(code, line, sign)
            assert out.card == count
            if out.card >= 2:
                assert out.min_angle >= code.min_angle - 1e-12


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2 ** 32 - 1))
def test_balanced_line_random_codes(seed):
    rng = np.random.default_rng(seed)
    code = random_sph_code(rng, dim_max=6, card_max=16)
    line, sign, count = spherical.find_balanced_line(code, seed=seed)
    assert code.card / 2 <= count < code.card
    out = spherical.spoil3(code, line, sign)
    assert out.card == count


def test_two_point_code_splits_one_one():
    code = spherical.SphericalCode([[1.0, 0.0], [0.0, 1.0]])
    _line, _sign, count = spherical.find_balanced_line(code, seed=0)
    assert count == 1


# -- composite pipelines -------------------------------------------------------

def test_composite_up_square():
    # two orthogonal points on S^1 -> [3, 1, 1/3]
    code = spherical.SphericalCode([[1.0, 0.0], [0.0, 1.0]])
    out = spherical.composite_spoil_up(code)
    assert out.dimension == 3
    assert out.card == 2
    assert out.cos_min_angle == pytest.approx(1 / 3, abs=1e-9)


def test_composite_up_iterated_rate():
    code = binary.embed_binary(
        binary.BinaryCode(["0000", "0011", "0101", "0110"])
    )
    n, m = code.dimension, 3
    out = code
    for _ in range(m):
        out = spherical.composite_spoil_up(out)
    assert out.rate == pytest.approx(n / (n + m) * code.rate, abs=1e-12)


def test_subcode_template_tetrahedron():
    code = binary.embed_binary(binary.BinaryCode(["000", "011", "101", "110"]))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        out = spherical.numerical_spoil(code, "subcode", subcode_steps=1, seed=0)
    assert out.dimension == code.dimension - 1
    assert code.card / 2 <= out.card < code.card
    assert out.cos_min_angle == pytest.approx(code.cos_min_angle, abs=1e-6)


def test_dim_down_template():
    rng = np.random.default_rng(5)
    code = random_sph_code(rng, dim_max=5, card_max=8)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        out = spherical.numerical_spoil(code, "dim_down", seed=1)
    assert out.dimension == code.dimension - 1


def test_dim_up_template_lambda():
    code = square_code()
    out = spherical.numerical_spoil(code, "dim_up", lam=0.7)
    assert out.dimension == 3
    assert out.cos_min_angle == pytest.approx(
        0.7 * code.cos_min_angle + 0.3, abs=1e-9
    )


def test_composite_down_matches_template():
    words = [format(v, "04b") for v in range(16)]
    code = binary.embed_binary(binary.BinaryCode(words))
    for _ in range(6):
        code = spherical.composite_spoil_up(code)
    phi_c = 0.5
    n = code.dimension
    target = n / (n - 1) * code.cos_min_angle - math.cos(phi_c) / (n - 1)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        out = spherical.composite_spoil_down(code, phi_c, seed=0)
    assert out.dimension == n - 1
    assert math.log2(out.card) == pytest.approx(math.log2(code.card) - 1)
    assert out.cos_min_angle == pytest.approx(target, abs=1e-6)


def test_composite_down_reports_violated_precondition():
    # cube-corner code with phi = pi/3, well below the requested cutoff
    code = binary.embed_binary(binary.BinaryCode(["0000", "0001", "0011"]))
    assert code.min_angle < 1.5
    with pytest.raises(ValueError, match="phi > phi_c"):
        spherical.composite_spoil_down(code, 1.5)


def test_lambda_out_of_range_is_reported():
    with pytest.raises(LambdaOutOfRange):
        spherical._solve_lambda(-0.5, 0.2)


# -- file format ---------------------------------------------------------------

def test_file_roundtrip_17_digits():
    rng = np.random.default_rng(2)
    code = random_sph_code(rng, dim_max=5, card_max=6)
    text = spherical.dump_spherical_code(code)
    back = spherical.load_spherical_code(text)
    assert np.array_equal(back.points, code.points)


def test_load_normalize_flag():
    text = "dim 2\n3 4\n-1 0\n"
    with pytest.raises(InputFormatError):
        spherical.load_spherical_code(text)
    code = spherical.load_spherical_code(text, normalize=True)
    assert np.allclose(code.points[0], [0.6, 0.8], atol=1e-12)


def test_load_rejects_bad_header():
    with pytest.raises(InputFormatError):
        spherical.load_spherical_code("2\n1 0\n")
