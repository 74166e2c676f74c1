"""Point-configuration tests: validation, lengths, systole/volume, matching."""

import cmath
import math

import numpy as np
import pytest

from adesystole.milnor import (
    geometric_systole,
    geometric_volume,
    induced_charge,
    points_from_coefficients,
    segment_lengths,
    validate_configuration,
    verify_correspondence,
)
from adesystole.roots import AdeType, build_root_system
from adesystole.stability import evaluate_charge

CUBE_ROOTS = [1, cmath.exp(2j * math.pi / 3), cmath.exp(-2j * math.pi / 3)]


def random_configuration(rng, n):
    pts = rng.standard_normal(n + 1) + 1j * rng.standard_normal(n + 1)
    return validate_configuration(pts)


# == Validation ==============================================================

def test_two_point_configuration():
    config = validate_configuration([1, -1])
    assert config.n == 1
    assert sum(config.points) == 0
    assert config.general_position  # no triples at all


def test_recentering():
    config = validate_configuration([0, 1, 2])
    assert config.points == (-1 + 0j, 0j, 1 + 0j)
    assert not config.general_position  # collinear triple


def test_cube_roots_are_general_position():
    config = validate_configuration(CUBE_ROOTS)
    assert config.general_position
    assert abs(sum(config.points)) < 1e-12


def test_duplicate_points_rejected_with_pair():
    with pytest.raises(ValueError, match=r"pair 1, 3"):
        validate_configuration([2, 5, 2, 7])
    with pytest.raises(ValueError):
        validate_configuration([1, 1])


def test_too_few_points_rejected():
    with pytest.raises(ValueError):
        validate_configuration([1])
    with pytest.raises(ValueError):
        validate_configuration([])


def test_default_ordering_is_lexicographic():
    config = validate_configuration([1, -1, 1j])
    labeled = config.labeled
    keys = [(z.real, z.imag) for z in labeled]
    assert keys == sorted(keys)


def test_explicit_ordering_override():
    config = validate_configuration([1, -1], ordering=[0, 1])
    assert config.labeled == (1 + 0j, -1 + 0j)
    assert induced_charge(config)[0] == -2
    with pytest.raises(ValueError):
        validate_configuration([1, -1], ordering=[0, 0])


# == Segment lengths =========================================================

def test_segment_lengths_two_points():
    config = validate_configuration([1, -1])
    lengths = segment_lengths(config)
    assert lengths.get(1, 1) == pytest.approx(2.0)


def test_segment_lengths_cube_roots():
    lengths = segment_lengths(validate_configuration(CUBE_ROOTS))
    for i, j, value in lengths.entries:
        assert value == pytest.approx(math.sqrt(3))
    assert len(lengths.entries) == 3


def test_segment_lengths_collinear():
    lengths = segment_lengths(validate_configuration([0, 1, 2]))
    assert lengths.get(1, 1) == pytest.approx(1.0)
    assert lengths.get(1, 2) == pytest.approx(2.0)
    assert lengths.get(2, 2) == pytest.approx(1.0)


def test_lengths_are_all_pairwise_distances():
    rng = np.random.default_rng(3)
    config = random_configuration(rng, 5)
    lengths = segment_lengths(config)
    pts = config.labeled
    expected = sorted(
        abs(pts[b] - pts[a]) for a in range(len(pts)) for b in range(a + 1, len(pts))
    )
    assert sorted(v for _, _, v in lengths.entries) == pytest.approx(expected)


# == Systole and volume ======================================================

def test_geometry_two_points():
    config = validate_configuration([1, -1])
    assert geometric_systole(config) == pytest.approx(2 * math.pi)
    assert geometric_volume(config) == pytest.approx(2 * math.pi**2)


def test_geometry_cube_roots():
    config = validate_configuration(CUBE_ROOTS)
    assert geometric_systole(config) == pytest.approx(math.pi * math.sqrt(3))
    assert geometric_volume(config) == pytest.approx(3 * math.pi**2)


def test_rigid_motion_equivariance():
    rng = np.random.default_rng(11)
    base = rng.standard_normal(5) + 1j * rng.standard_normal(5)
    config = validate_configuration(base)
    sys0, vol0 = geometric_systole(config), geometric_volume(config)
    rotated = validate_configuration(base * cmath.exp(0.37j))
    assert geometric_systole(rotated) == pytest.approx(sys0)
    assert geometric_volume(rotated) == pytest.approx(vol0)
    scaled = validate_configuration(base * 2.5)
    assert geometric_systole(scaled) == pytest.approx(2.5 * sys0)
    assert geometric_volume(scaled) == pytest.approx(2.5**2 * vol0)


def test_squared_systole_bounded_by_volume():
    rng = np.random.default_rng(23)
    for n in range(1, 7):
        for _ in range(50):
            config = random_configuration(rng, n)
            sys2 = geometric_systole(config) ** 2
            bound = (n + 1) / n * geometric_volume(config)
            assert sys2 <= bound * (1 + 1e-12)


def test_two_point_equality_case():
    config = validate_configuration([1, -1])
    assert geometric_systole(config) ** 2 == pytest.approx(2 * geometric_volume(config))


# == Induced charge and matching =============================================

def test_induced_charge_examples():
    config = validate_configuration([1, -1])
    assert induced_charge(config) == pytest.approx(np.array([2 + 0j]))
    config = validate_configuration([0, 1, 2])
    assert induced_charge(config) == pytest.approx(np.array([1 + 0j, 1 + 0j]))


def test_charge_telescopes_to_lengths():
    rng = np.random.default_rng(40)
    for n in (2, 4, 6):
        config = random_configuration(rng, n)
        rs = build_root_system(AdeType("A", n))
        z = induced_charge(config)
        lengths = segment_lengths(config)
        for i, j, value in lengths.entries:
            segment = tuple(int(i <= k + 1 <= j) for k in range(n))
            assert abs(evaluate_charge(rs, z, segment)) == pytest.approx(value)


def test_correspondence_two_points_exact():
    report = verify_correspondence(validate_configuration([1, -1]))
    assert report.passed
    assert report.systole_geometric == report.systole_categorical
    assert report.volume_geometric == pytest.approx(report.volume_categorical)
    assert report.inequality_slack == pytest.approx(0.0, abs=1e-12)


def test_correspondence_cube_roots():
    report = verify_correspondence(validate_configuration(CUBE_ROOTS))
    assert report.passed
    assert report.systole_rel_error < 1e-12
    assert report.volume_rel_error < 1e-12


def test_correspondence_random_configurations():
    rng = np.random.default_rng(52)
    for n in range(1, 6):
        for _ in range(40):
            report = verify_correspondence(random_configuration(rng, n))
            assert report.passed
            assert report.systole_rel_error <= 1e-9
            assert report.volume_rel_error <= 1e-9


def test_correspondence_collinear_configuration_still_checked():
    report = verify_correspondence(validate_configuration([0, 1, 2]))
    assert not report.general_position
    assert report.passed


# == Polynomial input ========================================================

def test_poly_two_points():
    pts = points_from_coefficients([-1])  # z^2 - 1
    config = validate_configuration(pts)
    assert sorted((z.real, z.imag) for z in config.points) == pytest.approx([(-1, 0), (1, 0)])


def test_poly_cube_roots_of_unity():
    pts = points_from_coefficients([0, -1])  # z^3 - 1
    config = validate_configuration(pts)
    expected = np.array(sorted((z.real, z.imag) for z in validate_configuration(CUBE_ROOTS).points))
    obtained = np.array(sorted((z.real, z.imag) for z in config.points))
    assert np.abs(obtained - expected).max() < 1e-12


def test_poly_roots_satisfy_polynomial():
    rng = np.random.default_rng(60)
    coeffs = rng.standard_normal(5) + 1j * rng.standard_normal(5)
    pts = points_from_coefficients(coeffs)
    poly = np.array([1, 0, *coeffs])
    assert np.abs(np.polyval(poly, np.array(pts))).max() < 1e-9
    assert abs(sum(pts)) < 1e-9  # no z^n term means centroid zero


def test_poly_with_repeated_roots_rejected_downstream():
    pts = points_from_coefficients([0, 0])  # z^3: triple root at 0
    with pytest.raises(ValueError):
        validate_configuration(pts)


def test_poly_requires_coefficients():
    with pytest.raises(ValueError):
        points_from_coefficients([])
