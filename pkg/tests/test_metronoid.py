import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from floatlab import floating as F
from floatlab import geometry as g
from floatlab import metronoid as M
from floatlab import shapes
from floatlab.errors import TooFewSamples

SQRT2 = math.sqrt(2.0)


def symmetric_polygon(seed, n=9):
    p = np.random.default_rng(seed).standard_normal((n, 2))
    return g.build_polygon(np.vstack([p, -p]))


def test_isotropy_disk_half(unit_disk):
    for phi in (0.0, 1.0, 4.0):
        u = np.array([math.cos(phi), math.sin(phi)])
        v = np.array([-u[1], u[0]])
        assert M.isotropy_moment(unit_disk, 0.5, u, v) == pytest.approx(2 / 3, rel=1e-5)


def test_isotropy_square_half(square):
    assert M.isotropy_moment(square, 0.5, [1, 0], [0, 1]) == pytest.approx(2 / 3, rel=1e-12)
    u = np.array([1, 1]) / SQRT2
    assert M.isotropy_moment(square, 0.5, u, [-u[1], u[0]]) == pytest.approx(4 * SQRT2 / 3, rel=1e-12)


def test_isotropy_ball_half(unit_ball):
    u = g.unit([0.3, 0.1, -0.7])
    v = g.unit(np.cross(u, [1.0, 0, 0]))
    assert abs(M.isotropy_moment(unit_ball, 0.5, u, v) - math.pi / 4) < 5e-3


def test_isotropy_rejects_non_tangent(square):
    with pytest.raises(ValueError):
        M.isotropy_moment(square, 0.5, [1, 0], g.unit([1, 1]))


def test_isotropy_even_in_v(ellipse21):
    u = g.unit([0.4, 0.9])
    v = np.array([-u[1], u[0]])
    assert M.isotropy_moment(ellipse21, 0.3, u, v) == M.isotropy_moment(ellipse21, 0.3, u, -v)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6), st.floats(0, 2 * math.pi))
def test_uncentred_equals_centred_for_symmetric_half(seed, phi):
    K = symmetric_polygon(seed)
    u = np.array([math.cos(phi), math.sin(phi)])
    rec = F.cap_record(K, u, 0.5)
    assert np.linalg.norm(rec.section_centroid) < 1e-9 * K.diameter
    uncentred = rec.section_moments.second_moment[0, 0]
    assert M.section_isotropy(rec, rec.section_frame.basis)[0] == pytest.approx(uncentred, rel=1e-8)


def test_metronoid_disk_circle(unit_disk):
    s = M.metronoid_boundary(unit_disk, 0.5, shapes.circle_directions(256))
    r = np.linalg.norm([x.point for x in s], axis=1)
    assert np.all(np.abs(r - 4 / (3 * math.pi)) < 1e-4)


def test_metronoid_ball_sphere(unit_ball):
    s = M.metronoid_boundary(unit_ball, 0.5, shapes.fibonacci_sphere(64))
    r = np.linalg.norm([x.point for x in s], axis=1)
    assert np.all(np.abs(r - 0.375) < 5e-3)


def test_metronoid_square_not_round(square):
    s = M.metronoid_boundary(square, 0.5, shapes.circle_directions(8))
    r = np.linalg.norm([x.point for x in s], axis=1)
    assert r[0] - r[1] > 0.02
    # curvature radius ratio between diagonal and axis directions
    assert M.curvature_radius_2d(square, 0.5, math.pi / 4) / M.curvature_radius_2d(square, 0.5, 0.0) > 1.5


def test_metronoid_convex_closed_curve(ellipse21):
    s = M.metronoid_boundary(ellipse21, 0.2, shapes.circle_directions(128))
    X = np.array([x.point for x in s])
    hull = g.build_polygon(X)
    assert len(hull.vertices) == len(X)


def test_metronoid_rotation_equivariance(ellipse21):
    a = 0.37
    Q = np.array([[math.cos(a), -math.sin(a)], [math.sin(a), math.cos(a)]])
    U = shapes.circle_directions(64)
    base = M.metronoid_boundary(ellipse21, 0.3, U)
    turned = M.metronoid_boundary(g.affine_transform(ellipse21, Q), 0.3, U @ Q.T)
    for s, t in zip(base, turned):
        assert np.allclose(Q @ s.u, t.u, atol=1e-12)
        assert np.allclose(Q @ s.point, t.point, atol=1e-9)


def test_metronoid_rotation_equivariance_3d(cube):
    Q, _ = np.linalg.qr(np.random.default_rng(5).standard_normal((3, 3)))
    U = shapes.fibonacci_sphere(16)
    base = M.metronoid_boundary(cube, 0.2, U)
    turned = M.metronoid_boundary(g.affine_transform(cube, Q), 0.2, U @ Q.T)
    for s, t in zip(base, turned):
        assert np.allclose(Q @ s.point, t.point, atol=1e-9)


def test_gauss_map_residuals(unit_disk, square, ellipse21):
    U = shapes.circle_directions(1024)
    assert M.gauss_map_residual(M.metronoid_boundary(unit_disk, 0.3, U)) < 1e-3
    assert M.gauss_map_residual(M.metronoid_boundary(square, 0.1, U)) < 5e-3
    assert M.gauss_map_residual(M.metronoid_boundary(ellipse21, 0.25, U)) < 5e-3


def test_gauss_map_needs_samples(square):
    with pytest.raises(TooFewSamples):
        M.gauss_map_residual(M.metronoid_boundary(square, 0.3, shapes.circle_directions(8)))
    with pytest.raises(ValueError):
        M.gauss_map_residual(M.metronoid_boundary(square, 0.3, shapes.circle_directions(64)))


def test_curvature_radius_examples(unit_disk, square):
    assert M.curvature_radius_2d(unit_disk, 0.5, 1.3) == pytest.approx(4 / (3 * math.pi), rel=1e-5)
    assert M.curvature_radius_2d(square, 0.5, 0.0) == pytest.approx(1 / 3, rel=1e-12)
    assert M.curvature_radius_2d(square, 0.5, math.pi / 4) == pytest.approx(2 * SQRT2 / 3, rel=1e-12)


def test_curvature_identity_ellipse(ellipse21):
    phi, R, speed = M.curvature_profile(ellipse21, 0.25, 2048)
    assert np.max(np.abs(speed - R) / R) < 1e-2


def test_ulam_disk(unit_disk):
    rep = M.ulam_report(unit_disk, 0.3)
    assert rep.spread < 1e-3 and rep.verdict
    assert rep.min >= 0 and rep.R_estimate > 0


def test_ulam_ellipse_ratio(ellipse21):
    rep = M.ulam_report(ellipse21, 0.5)
    assert rep.max / rep.min == pytest.approx(8.0, rel=1e-2)
    assert not rep.verdict


def test_ulam_samples_listing(square):
    rep = M.ulam_report(square, 0.5, shapes.circle_directions(16))
    rows = list(rep.samples)
    assert len(rows) == 16
    u, v, m = rows[0]
    assert abs(u @ v) < 1e-15 and m == pytest.approx(2 / 3)


def test_ulam_3d_tangent_grid(cube):
    rep = M.ulam_report(cube, 0.5, shapes.fibonacci_sphere(8), tangents_per_direction=6)
    assert rep.values.shape == (8, 6)
    assert np.allclose(np.einsum("ij,ikj->ik", rep.directions, rep.tangents), 0.0, atol=1e-12)


def test_ulam_radius_matches_metronoid(unit_disk):
    U = shapes.circle_directions(256)
    recs = F.cap_records(unit_disk, U, 0.3)
    rep = M.ulam_report(unit_disk, 0.3, records=recs)
    X = np.array([s.point for s in M.metronoid_boundary(unit_disk, 0.3, records=recs)])
    radius = np.linalg.norm(X - X.mean(axis=0), axis=1).mean()
    assert abs(rep.R_estimate - radius) / rep.R_estimate < 2e-2
