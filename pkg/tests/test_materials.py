import json
from fractions import Fraction

import numpy as np
import pytest

from bigreen.errors import (
    ConfigParse,
    JumpTooSmall,
    NotStronglyConvex,
    OutOfBounds,
    PoissonOutOfRange,
)
from bigreen.materials import (
    AprioriData,
    DEFAULT_APRIORI,
    LameMaterial,
    apply_isotropic_tensor,
    ellipticity_constant,
    isotropic_tensor_components,
    load_material_config,
    make_material,
    material_from_poisson,
    parse_material_config,
    poisson_ratio,
    validate_pair,
)


def test_make_material_basic():
    m = make_material(1.0, 1.0)
    assert m.nu == pytest.approx(0.25)
    m2 = make_material(2.0, 0.5)
    assert m2.nu == pytest.approx(0.1)


def test_make_material_rejects_nonconvex():
    with pytest.raises(NotStronglyConvex):
        make_material(1.0, -1.0, AprioriData(gamma0=0.5))
    with pytest.raises(NotStronglyConvex):
        make_material(-1.0, 1.0)


def test_make_material_upper_bounds():
    with pytest.raises(OutOfBounds):
        make_material(2.0, 0.0, AprioriData(mu_bar=1.0))
    with pytest.raises(OutOfBounds):
        make_material(1.0, 2.0, AprioriData(lambda_bar=1.0))


def test_poisson_round_trip():
    for nu in np.arange(-0.9, 0.499, 0.03):
        m = material_from_poisson(1.3, float(nu))
        assert poisson_ratio(m) == pytest.approx(nu, rel=1e-14, abs=1e-15)


def test_material_from_poisson_examples():
    assert material_from_poisson(1.0, 0.25).lam == pytest.approx(1.0)
    assert material_from_poisson(1.0, 0.0).lam == 0.0
    # algebraic inversion: lambda = 2*3*(1/3)/(1 - 2/3) = 6
    assert material_from_poisson(3.0, 1.0 / 3.0).lam == pytest.approx(6.0)
    with pytest.raises(PoissonOutOfRange):
        material_from_poisson(1.0, 0.5)
    with pytest.raises(PoissonOutOfRange):
        material_from_poisson(1.0, -1.0)


def test_poisson_ratio_values():
    assert poisson_ratio(LameMaterial(1.0, 1.0)) == pytest.approx(0.25)
    assert poisson_ratio(LameMaterial(1.0, 0.0)) == 0.0
    assert poisson_ratio(LameMaterial(1.0, 4.0)) == pytest.approx(0.4)


def test_fraction_fields_stay_exact():
    m = material_from_poisson(Fraction(1), Fraction(1, 4))
    assert m.lam == Fraction(1)
    assert poisson_ratio(m) == Fraction(1, 4)


def test_apply_isotropic_tensor_identity():
    m = LameMaterial(1.0, 1.0)
    out = apply_isotropic_tensor(m, np.eye(3))
    assert np.allclose(out, 5.0 * np.eye(3))


def test_apply_isotropic_tensor_kills_antisymmetric():
    m = LameMaterial(2.0, 0.7)
    A = np.array([[0, 1, -2], [-1, 0, 3], [2, -3, 0.0]])
    assert np.allclose(apply_isotropic_tensor(m, A), 0.0)


def test_apply_isotropic_tensor_dyad():
    m = LameMaterial(2.0, 0.0)
    A = np.outer([1, 0, 0], [0, 1, 0.0])
    expect = 2.0 * (A + A.T)
    assert np.allclose(apply_isotropic_tensor(m, A), expect)


def test_tensor_symmetries_componentwise():
    C = isotropic_tensor_components(LameMaterial(1.7, 0.3))
    assert np.array_equal(C, np.einsum("ijkl->klij", C))
    assert np.array_equal(C, np.einsum("ijkl->jikl", C))
    assert np.array_equal(C, np.einsum("ijkl->ijlk", C))


def test_ellipticity_over_random_symmetric():
    rng = np.random.default_rng(0)
    mu, lam = 1.4, -0.3
    m = make_material(mu, lam, AprioriData(alpha0=1e-9, gamma0=1e-9))
    xi0 = min(2 * mu, 2 * mu + 3 * lam)
    for _ in range(1000):
        A = rng.normal(size=(3, 3))
        A = 0.5 * (A + A.T)
        lhs = np.tensordot(apply_isotropic_tensor(m, A), A)
        assert lhs >= xi0 * np.sum(A * A) - 1e-12


def test_ellipticity_constant():
    ap = AprioriData(alpha0=0.5, gamma0=0.7)
    assert ellipticity_constant(ap) == 0.7


def test_validate_pair():
    host = make_material(1.0, 1.0)
    with pytest.raises(JumpTooSmall):
        validate_pair(host, host, AprioriData(eta0=0.5))
    incl = make_material(2.0, 1.0)
    pair = validate_pair(host, incl, AprioriData(eta0=0.5))
    assert pair.jump == pytest.approx(1.0)
    close = make_material(1.05, 1.05)
    with pytest.raises(JumpTooSmall):
        validate_pair(host, close, AprioriData(eta0=0.1))


def test_apriori_validation():
    with pytest.raises(ValueError):
        AprioriData(alpha0=0.0)
    with pytest.raises(ValueError):
        AprioriData(alpha=1.5)
    # lambda_bar may be any real
    AprioriData(lambda_bar=-2.0)


def test_parse_material_config():
    cfg = {"host": {"mu": 1.0, "lambda": 1.0},
           "inclusion": {"mu": 2.0, "nu": 1.0 / 3.0},
           "apriori": {"eta0": 0.1}}
    pair, apriori = parse_material_config(cfg)
    assert pair.host.lam == 1.0
    assert pair.inclusion.lam == pytest.approx(4.0)
    assert apriori.eta0 == 0.1


@pytest.mark.parametrize("bad", [
    {"host": {"mu": 1.0, "lambda": 1.0, "nu": 0.2}, "inclusion": {"mu": 2.0, "nu": 0.3}},
    {"host": {"mu": 1.0}, "inclusion": {"mu": 2.0, "nu": 0.3}},
    {"host": {"mu": 1.0, "nu": 0.2}},
    {"host": {"mu": 1.0, "nu": 0.2}, "inclusion": {"mu": 1.0, "nu": 0.2}},
    {"host": {"mu": 1.0, "nu": 0.9}, "inclusion": {"mu": 2.0, "nu": 0.3}},
])
def test_parse_material_config_rejects(bad):
    with pytest.raises(ConfigParse):
        parse_material_config(bad)


def test_load_material_config(tmp_path):
    path = tmp_path / "mat.json"
    path.write_text(json.dumps({"host": {"mu": 1.0, "nu": 0.25},
                                "inclusion": {"mu": 2.0, "nu": 1.0 / 3.0}}))
    pair, _ = load_material_config(path)
    assert pair.host.mu == 1.0
    with pytest.raises(ConfigParse):
        load_material_config(tmp_path / "missing.json")
