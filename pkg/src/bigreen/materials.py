"""Isotropic elastic constants, tensor action, and admissibility validation.

Materials are pairs of Lame moduli (mu, lambda) subject to strong convexity
(mu >= alpha0 > 0, 2*mu + 3*lambda >= gamma0 > 0) and a-priori upper bounds.
Host/inclusion pairs must additionally jump by at least eta0 in the
(lambda, mu) plane.  All values are dimensionless; lengths are measured in
units of the normalization length rho0 = 1.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from fractions import Fraction

import numpy as np

from .errors import (
    ConfigParse,
    JumpTooSmall,
    NotStronglyConvex,
    OutOfBounds,
    PoissonOutOfRange,
)


@dataclass(frozen=True)
class AprioriData:
    """A-priori constants bounding the admissible material/geometry class.

    alpha0, gamma0: strong-convexity lower bounds; mu_bar, lambda_bar: upper
    bounds on the moduli; eta0: minimum (lambda, mu) jump between host and
    inclusion; rho0: length normalization (fixed to 1); M0, M1, alpha:
    geometry constants consumed by the oracle and metric modules.
    """

    alpha0: float = 1e-6
    gamma0: float = 1e-6
    mu_bar: float = 1e6
    lambda_bar: float = 1e6
    eta0: float = 1e-3
    rho0: float = 1.0
    M0: float = 1.0
    M1: float = 10.0
    alpha: float = 0.5

    def __post_init__(self):
        for name in ("alpha0", "gamma0", "mu_bar", "eta0", "rho0", "M0", "M1"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be strictly positive")
        if not 0 < self.alpha < 1:
            raise ValueError("alpha must lie in (0, 1)")


DEFAULT_APRIORI = AprioriData()


@dataclass(frozen=True)
class LameMaterial:
    """Validated isotropic material with shear modulus mu and modulus lam.

    Construct through make_material / material_from_poisson; fields may be
    floats or exact Fractions (exactness is preserved downstream by the
    gap-polynomial code).
    """

    mu: float
    lam: float

    @property
    def nu(self) -> float:
        """Poisson ratio lam / (2*(lam + mu))."""
        return self.lam / (2 * (self.lam + self.mu))


@dataclass(frozen=True)
class MaterialPair:
    """Host (outside) and inclusion (inside) materials.

    validate_pair is the checking constructor; direct construction is allowed
    for degenerate configurations such as the equal-material limit used by
    verification suites.
    """

    host: LameMaterial
    inclusion: LameMaterial

    @property
    def jump(self) -> float:
        """Euclidean jump magnitude in the (lambda, mu) plane."""
        dl = self.host.lam - self.inclusion.lam
        dm = self.host.mu - self.inclusion.mu
        return float(np.hypot(float(dl), float(dm)))

    @property
    def jump_nu(self) -> float:
        """Euclidean jump magnitude in the (nu, mu) plane."""
        dn = self.host.nu - self.inclusion.nu
        dm = self.host.mu - self.inclusion.mu
        return float(np.hypot(float(dn), float(dm)))


def make_material(mu, lam, apriori: AprioriData = DEFAULT_APRIORI) -> LameMaterial:
    """Validate (mu, lambda) against strong convexity and upper bounds."""
    if not np.isfinite(float(mu)) or not np.isfinite(float(lam)):
        raise NotStronglyConvex(f"non-finite moduli: mu={mu}, lambda={lam}")
    if mu < apriori.alpha0 or 2 * mu + 3 * lam < apriori.gamma0:
        raise NotStronglyConvex(
            f"mu={mu}, lambda={lam} violate mu>={apriori.alpha0}, "
            f"2mu+3lambda>={apriori.gamma0}"
        )
    if mu > apriori.mu_bar or lam > apriori.lambda_bar:
        raise OutOfBounds(
            f"mu={mu}, lambda={lam} exceed bounds "
            f"mu_bar={apriori.mu_bar}, lambda_bar={apriori.lambda_bar}"
        )
    return LameMaterial(mu=mu, lam=lam)


def material_from_poisson(mu, nu, apriori: AprioriData = DEFAULT_APRIORI) -> LameMaterial:
    """Build a material from (mu, nu); nu must lie strictly in (-1, 1/2)."""
    half = Fraction(1, 2) if isinstance(nu, Fraction) else 0.5
    if not (-1 < nu < half):
        raise PoissonOutOfRange(f"nu={nu} outside (-1, 1/2)")
    lam = 2 * mu * nu / (1 - 2 * nu)
    return make_material(mu, lam, apriori)


def poisson_ratio(mat: LameMaterial):
    """Poisson ratio lam / (2*(lam + mu)), in (-1, 1/2) for valid materials."""
    return mat.lam / (2 * (mat.lam + mat.mu))


def apply_isotropic_tensor(mat: LameMaterial, A: np.ndarray) -> np.ndarray:
    """Apply C to a 3x3 matrix (or batch): lam*tr(A)*Id + mu*(A + A^T).

    Accepts arrays of shape (..., 3, 3); the tensor acts on the trailing two
    axes.
    """
    A = np.asarray(A, dtype=float)
    tr = np.trace(A, axis1=-2, axis2=-1)
    eye = np.eye(3)
    return (
        float(mat.lam) * tr[..., None, None] * eye
        + float(mat.mu) * (A + np.swapaxes(A, -2, -1))
    )


def isotropic_tensor_components(mat: LameMaterial) -> np.ndarray:
    """Full C_ijkl = lam*d_ij*d_kl + mu*(d_ki*d_lj + d_li*d_kj) as (3,3,3,3)."""
    d = np.eye(3)
    return (
        float(mat.lam) * np.einsum("ij,kl->ijkl", d, d)
        + float(mat.mu) * (np.einsum("ki,lj->ijkl", d, d) + np.einsum("li,kj->ijkl", d, d))
    )


def ellipticity_constant(apriori: AprioriData = DEFAULT_APRIORI) -> float:
    """xi0 = min(2*alpha0, gamma0): C A . A >= xi0 |A|^2 for symmetric A."""
    return min(2 * apriori.alpha0, apriori.gamma0)


def validate_pair(
    host: LameMaterial,
    inclusion: LameMaterial,
    apriori: AprioriData = DEFAULT_APRIORI,
) -> MaterialPair:
    """Check the eta0 jump condition and return the validated pair."""
    pair = MaterialPair(host=host, inclusion=inclusion)
    if pair.jump ** 2 < float(apriori.eta0) ** 2:
        raise JumpTooSmall(
            f"(lambda, mu) jump {pair.jump:.6g} below eta0={apriori.eta0}"
        )
    return pair


# -- JSON material configuration ----------------------------------------------

def _material_from_dict(d: dict, apriori: AprioriData, where: str) -> LameMaterial:
    if not isinstance(d, dict):
        raise ConfigParse(f"{where}: expected an object")
    has_lam = "lambda" in d
    has_nu = "nu" in d
    if has_lam == has_nu:
        raise ConfigParse(f"{where}: exactly one of 'lambda'/'nu' is required")
    if "mu" not in d:
        raise ConfigParse(f"{where}: 'mu' is required")
    extra = set(d) - {"mu", "lambda", "nu"}
    if extra:
        raise ConfigParse(f"{where}: unknown keys {sorted(extra)}")
    try:
        if has_lam:
            return make_material(float(d["mu"]), float(d["lambda"]), apriori)
        return material_from_poisson(float(d["mu"]), float(d["nu"]), apriori)
    except (NotStronglyConvex, OutOfBounds, PoissonOutOfRange) as exc:
        raise ConfigParse(f"{where}: {exc}") from exc


def parse_material_config(cfg: dict) -> tuple[MaterialPair, AprioriData]:
    """Parse {"host": {...}, "inclusion": {...}, "apriori": {...}} into a pair."""
    if not isinstance(cfg, dict):
        raise ConfigParse("material config must be a JSON object")
    extra = set(cfg) - {"host", "inclusion", "apriori"}
    if extra:
        raise ConfigParse(f"unknown top-level keys {sorted(extra)}")
    apriori = DEFAULT_APRIORI
    overrides = cfg.get("apriori", {})
    if overrides:
        known = set(AprioriData.__dataclass_fields__)
        bad = set(overrides) - known
        if bad:
            raise ConfigParse(f"apriori: unknown keys {sorted(bad)}")
        try:
            apriori = replace(apriori, **{k: float(v) for k, v in overrides.items()})
        except ValueError as exc:
            raise ConfigParse(f"apriori: {exc}") from exc
    for key in ("host", "inclusion"):
        if key not in cfg:
            raise ConfigParse(f"missing '{key}' material")
    host = _material_from_dict(cfg["host"], apriori, "host")
    inclusion = _material_from_dict(cfg["inclusion"], apriori, "inclusion")
    try:
        pair = validate_pair(host, inclusion, apriori)
    except JumpTooSmall as exc:
        raise ConfigParse(str(exc)) from exc
    return pair, apriori


def load_material_config(path) -> tuple[MaterialPair, AprioriData]:
    """Load and parse a JSON material configuration file."""
    try:
        with open(path) as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigParse(f"{path}: {exc}") from exc
    return parse_material_config(cfg)
