import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from floatlab import geometry as g
from floatlab import radon as R
from floatlab import shapes
from floatlab.errors import AsymmetricBody

SQRT2 = math.sqrt(2.0)
directions = st.tuples(st.floats(-1, 1), st.floats(-1, 1), st.floats(-1, 1)).filter(
    lambda t: np.linalg.norm(t) > 0.1)


def test_radon_constant():
    assert R.spherical_radon(R.constant(3.0), g.unit([1, 2, 3])) == pytest.approx(6 * math.pi, rel=1e-14)


def test_radon_ball_r4(unit_ball):
    r4 = R.radial_function(unit_ball) ** 4
    assert R.spherical_radon(r4, [0, 0, 1]) == pytest.approx(2 * math.pi, rel=2e-3)
    big = R.radial_function(shapes.ball(2.0, 2000)) ** 4
    assert R.spherical_radon(big, [1, 0, 0]) == pytest.approx(32 * math.pi, rel=1e-2)


def test_radon_equator_zero():
    f = R.SphericalFunction(lambda x: x[:, 2] ** 2)
    assert abs(R.spherical_radon(f, [0, 0, 1])) < 1e-28


def test_radon_needs_nodes():
    with pytest.raises(ValueError):
        R.spherical_radon(R.constant(1.0), [0, 0, 1], 32)


@settings(max_examples=50, deadline=None)
@given(directions)
def test_radon_even(u):
    f = R.SphericalFunction(lambda x: np.exp(x[:, 0]) + x[:, 1] ** 3)
    assert R.spherical_radon(f, u) == R.spherical_radon(f, -np.array(u))


@settings(max_examples=30, deadline=None)
@given(directions, st.floats(-3, 3), st.floats(-3, 3))
def test_radon_linear(u, a, b):
    f = R.SphericalFunction(lambda x: np.cos(3 * x[:, 0]) * x[:, 2])
    h = R.SphericalFunction(lambda x: x[:, 1] ** 2 + 1.0)
    lhs = R.spherical_radon(a * f + b * h, u)
    rhs = a * R.spherical_radon(f, u) + b * R.spherical_radon(h, u)
    assert abs(lhs - rhs) <= 1e-12 * (1 + abs(a) + abs(b)) * 2 * math.pi


def test_radon_degree_two_exact():
    # R(<x,e1>^2)(u) = pi (1 - u1^2) for the unnormalised transform
    f = R.SphericalFunction(lambda x: x[:, 0] ** 2)
    u = g.unit([0.3, 0.5, -0.2])
    assert R.spherical_radon(f, u) == pytest.approx(math.pi * (1 - u[0] ** 2), rel=1e-13)


def test_radial_function_cube(cube):
    r = R.radial_function(cube)
    assert r([[1, 0, 0]])[0] == pytest.approx(1.0)
    assert r([[1, 1, 1]])[0] == pytest.approx(math.sqrt(3.0))
    assert r([[1, 1, 0]])[0] == pytest.approx(SQRT2)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6))
def test_radial_function_matches_brute_force(seed):
    rng = np.random.default_rng(seed)
    K = g.build_polytope(rng.standard_normal((60, 3)) * rng.uniform(0.5, 2, 3))
    K = g.affine_transform(K, np.eye(3), -g.moments(K).centroid)
    xi = rng.standard_normal((200, 3))
    xi /= np.linalg.norm(xi, axis=1)[:, None]
    n = K.face_vectors / np.linalg.norm(K.face_vectors, axis=1)[:, None]
    d = np.einsum("ij,ij->i", n, K.vertices[K.faces[:, 0]])
    brute = 1.0 / (xi @ (n / d[:, None]).T).max(axis=1)
    assert np.allclose(R.radial_function(K, xi), brute, rtol=1e-13)
    # boundary points really lie on the surface
    pts = xi * R.radial_function(K, xi)[:, None]
    assert np.allclose((pts @ n.T - d).max(axis=1), 0.0, atol=1e-12)


def test_central_section_moment_ball(unit_ball):
    u = g.unit([1, 2, 2])
    v = g.unit(np.cross(u, [0, 0, 1]))
    assert abs(R.central_section_moment(unit_ball, u, v) - math.pi / 4) < 5e-3


def test_central_section_moment_cube(cube):
    for a in (0.0, 0.4, 1.2):
        v = [math.cos(a), math.sin(a), 0.0]
        assert R.central_section_moment(cube, [0, 0, 1], v) == pytest.approx(4 / 3)
    u = np.array([1, 1, 0]) / SQRT2
    assert R.central_section_moment(cube, u, [1 / SQRT2, -1 / SQRT2, 0]) == pytest.approx(8 * SQRT2 / 3)
    assert R.central_section_moment(cube, u, [0, 0, 1]) == pytest.approx(4 * SQRT2 / 3)


def test_central_section_needs_symmetry(tetrahedron, cube):
    shifted = g.affine_transform(cube, np.eye(3), [0.1, 0, 0])
    with pytest.raises(AsymmetricBody):
        R.central_section_moment(shifted, [0, 0, 1], [1, 0, 0])
    with pytest.raises(AsymmetricBody):
        R.theorem2_report(g.affine_transform(tetrahedron, np.eye(3), [0.2, 0.1, 0]))


def test_projection_constants():
    assert R.mean_sq_projection(3) == 0.5
    assert R.mean_abs_projection(3) == pytest.approx(2 / math.pi)
    # Monte-Carlo means on the unit circle
    a = np.linspace(0, 2 * math.pi, 100000, endpoint=False)
    assert np.mean(np.cos(a) ** 2) == pytest.approx(R.mean_sq_projection(3))
    assert np.mean(np.abs(np.cos(a))) == pytest.approx(R.mean_abs_projection(3), rel=1e-8)


def test_theorem2_cube_negative(cube):
    rep = R.theorem2_report(cube, shapes.fibonacci_sphere(256))
    assert rep.spread >= 0.5 and not rep.verdict
    assert rep.min >= 4 / 3 - 1e-9 and rep.max <= 8 * SQRT2 / 3 + 1e-9
    exact = R.theorem2_report(cube, np.array([[0, 0, 1.0], [1 / SQRT2, 1 / SQRT2, 0]]))
    assert exact.min == pytest.approx(4 / 3) and exact.max == pytest.approx(8 * SQRT2 / 3, rel=1e-6)


def test_theorem2_identity_holds_for_cube(cube):
    rep = R.theorem2_report(cube, shapes.fibonacci_sphere(64), quadrature_points=4096)
    assert rep.cross_check().max() < 1e-3


def test_theorem2_small_ball():
    rep = R.theorem2_report(shapes.ball(1.0, 3000), shapes.fibonacci_sphere(128))
    assert rep.verdict
    assert rep.cross_check().max() < 2e-2
    assert np.all(rep.values >= 0)
