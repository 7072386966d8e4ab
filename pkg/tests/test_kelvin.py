import numpy as np
import pytest

from bigreen.errors import CoincidentPoints, NonUnitNormal
from bigreen.kelvin import kelvin_gradient, kelvin_matrix, kelvin_traction
from bigreen.materials import material_from_poisson
from bigreen.quadrature_identities import equilibrium_check

MAT = material_from_poisson(1.0, 0.3)
RNG = np.random.default_rng(7)


def random_points(n, rng=RNG, spread=2.0):
    x = rng.normal(size=(n, 3)) * spread
    y = rng.normal(size=(n, 3)) * spread
    bad = np.linalg.norm(x - y, axis=-1) < 0.3
    y[bad] += 1.0
    return x, y


def test_on_axis_closed_form():
    mu, nu, r = 1.3, 0.27, 0.8
    mat = material_from_poisson(mu, nu)
    g = kelvin_matrix(np.array([0.0, 0.0, r]), np.zeros(3), mat)
    assert g[2, 2] == pytest.approx(1.0 / (4 * np.pi * mu * r), rel=1e-14)
    expected = (3 - 4 * nu) / (16 * np.pi * mu * (1 - nu) * r)
    assert g[0, 0] == pytest.approx(expected, rel=1e-14)
    assert g[1, 1] == pytest.approx(expected, rel=1e-14)
    off = g - np.diag(np.diag(g))
    assert np.max(np.abs(off)) < 1e-16


def test_scaling_identity():
    x, y = random_points(50)
    g1 = kelvin_matrix(x, y, MAT)
    g2 = kelvin_matrix(2 * x, 2 * y, MAT)
    assert np.allclose(g2, g1 / 2, rtol=1e-14, atol=0)


def test_symmetry_in_arguments():
    x, y = random_points(50)
    a = kelvin_matrix(x, y, MAT)
    b = kelvin_matrix(y, x, MAT)
    assert np.allclose(a, np.swapaxes(b, -2, -1), rtol=1e-14)
    # the matrix itself is symmetric as well
    assert np.allclose(a, np.swapaxes(a, -2, -1), rtol=1e-14)


def test_gradient_matches_finite_differences():
    x = np.array([1.0, 2.0, 3.0])
    y = np.zeros(3)
    g = kelvin_gradient(x, y, MAT)
    h = 1e-5 * np.linalg.norm(x - y)
    for k in range(3):
        e = np.zeros(3)
        e[k] = h
        fd = (kelvin_matrix(x + e, y, MAT) - kelvin_matrix(x - e, y, MAT)) / (2 * h)
        assert np.max(np.abs(g[:, :, k] - fd)) <= 1e-6 * np.max(np.abs(g))


def test_gradient_homogeneity():
    x, y = random_points(20)
    g1 = kelvin_gradient(x, y, MAT)
    g2 = kelvin_gradient(2 * x, 2 * y, MAT)
    assert np.allclose(g2, g1 / 4, rtol=1e-13)


def test_gradient_swap_antisymmetry():
    # d/dx_k G_ij(x, y) = -d/dy_k G_ji(y, x) by translation invariance
    x, y = random_points(10)
    g = kelvin_gradient(x, y, MAT)
    h = 1e-6
    for k in range(3):
        e = np.zeros(3)
        e[k] = h
        fd_y = (kelvin_matrix(y + e, x, MAT) - kelvin_matrix(y - e, x, MAT)) / (2 * h)
        assert np.max(np.abs(g[..., k] + np.swapaxes(fd_y, -2, -1))) <= 1e-6 * np.max(np.abs(g))


def test_coincident_points_rejected():
    with pytest.raises(CoincidentPoints):
        kelvin_matrix(np.zeros(3), np.zeros(3), MAT)
    with pytest.raises(CoincidentPoints):
        kelvin_gradient(np.ones(3), np.ones(3) + 1e-14, MAT)


def test_traction_requires_unit_normal():
    with pytest.raises(NonUnitNormal):
        kelvin_traction(np.array([1.0, 0, 0]), np.zeros(3), np.array([0, 0, 2.0]), MAT)


def test_traction_matches_gradient_composition():
    # mu=1, nu=0.25, x-y=(0,0,1), n=e3: cross-check against the gradient path
    mat = material_from_poisson(1.0, 0.25)
    x = np.array([0.0, 0.0, 1.0])
    y = np.zeros(3)
    n = np.array([0.0, 0.0, 1.0])
    t = kelvin_traction(x, y, n, mat)
    g = kelvin_gradient(x, y, mat)
    lam, mu = mat.lam, mat.mu
    expect = np.empty((3, 3))
    for j in range(3):
        H = g[:, j, :]
        sig = lam * np.trace(H) * np.eye(3) + mu * (H + H.T)
        expect[:, j] = sig @ n
    assert np.allclose(t, expect, rtol=1e-14)


def test_traction_scales_like_r_minus_2():
    x, y = random_points(10)
    n = RNG.normal(size=(10, 3))
    n /= np.linalg.norm(n, axis=-1, keepdims=True)
    t1 = kelvin_traction(x, y, n, MAT)
    t2 = kelvin_traction(3 * x, 3 * y, n, MAT)
    assert np.allclose(t2, t1 / 9, rtol=1e-13)


@pytest.mark.parametrize("r", [0.1, 1.0, 10.0])
def test_equilibrium_integral(r):
    defect = equilibrium_check("kelvin", np.array([0.3, -0.2, 0.5]), r, MAT)
    assert np.max(np.abs(defect)) <= 1e-8


def _navier_residual(x, y, mat, h):
    """4th-order stencil residual of mu lap(u) + mu/(1-2nu) grad(div u)."""
    mu, nu = mat.mu, mat.nu

    def col(p):
        return kelvin_matrix(p, y, mat)

    def d1(f, i, p):
        e = np.zeros(3)
        e[i] = h
        return (-f(p + 2 * e) + 8 * f(p + e) - 8 * f(p - e) + f(p - 2 * e)) / (12 * h)

    def d2(f, i, p):
        e = np.zeros(3)
        e[i] = h
        return (-f(p + 2 * e) + 16 * f(p + e) - 30 * f(p) + 16 * f(p - e)
                - f(p - 2 * e)) / (12 * h * h)

    lap = sum(d2(col, i, x) for i in range(3))
    div = lambda p: sum(d1(col, j, p)[j] for j in range(3))
    grad_div = np.stack([d1(div, i, x) for i in range(3)])
    return mu * lap + mu / (1 - 2 * nu) * grad_div


def test_navier_residual_shrinks_at_stencil_order():
    rng = np.random.default_rng(3)
    y = np.zeros(3)
    worst_ratio = np.inf
    for _ in range(100):
        x = rng.normal(size=3)
        r = np.linalg.norm(x)
        if not 0.5 <= r <= 5:
            x *= np.clip(r, 0.5, 5) / r
        r1 = np.max(np.abs(_navier_residual(x, y, MAT, 2e-2)))
        r2 = np.max(np.abs(_navier_residual(x, y, MAT, 1e-2)))
        if r1 > 1e-11:  # above the roundoff floor
            worst_ratio = min(worst_ratio, r1 / max(r2, 1e-300))
    # 4th-order stencil: halving h should shrink the residual ~16x
    assert worst_ratio >= 8.0
