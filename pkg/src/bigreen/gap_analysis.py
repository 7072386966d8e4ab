"""Degeneracy algebra of the bimaterial gap matrix.

Closed-form polynomials P(t) reproducing the on-axis diagonal gap entries,
the coincident-point polynomials Q2(nu, nu_I, s) and their zero loci, the
lambda_w selection rule, grid scans, and the exact-scaling blowup profile.

Two polynomial families coexist deliberately:

* the *printed* family (q2_value, nu_i_on_zero_locus, zero_locus_scan) is the
  published algebra, internally consistent as a set (factorizations, zero
  loci, degenerate triples);
* the *recomputed* family (p_poly_zz, p_poly_xx, q2_value_recomputed) is
  derived from the closed-form fundamental solution and is what gap_matrix
  actually evaluates to.  For the xx case the two coincide; for the zz case
  they differ by the sign of the linear (t - 1) term, a discrepancy the
  verification suite logs explicitly.

All polynomial identities run in exact rational arithmetic (fractions);
floats appear only in grid scans and gap evaluations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational

import numpy as np

from .bimaterial import gap_matrix
from .errors import AllCandidatesZero, DegenerateDenominator
from .materials import MaterialPair

LAMBDA_W_CANDIDATES = (Fraction(2, 3), Fraction(3, 4), Fraction(4, 5))


def _frac(x) -> Fraction:
    """Exact conversion; floats convert by their exact binary value."""
    if isinstance(x, Rational):
        return Fraction(x)
    return Fraction(x)


def _is_exact(*values) -> bool:
    return all(isinstance(v, Rational) for v in values)


# -- minimal multivariate polynomials over Fraction -----------------------------

class RationalPoly:
    """Dense-dict multivariate polynomial with Fraction coefficients.

    Terms map exponent tuples (one entry per variable) to coefficients.
    Supports ring arithmetic, variable substitution, and exact evaluation;
    just enough for the degeneracy-algebra identities.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: dict | None = None):
        self.nvars = nvars
        self.terms: dict[tuple, Fraction] = {}
        if terms:
            for e, c in terms.items():
                c = Fraction(c)
                if c:
                    self.terms[tuple(e)] = c

    @classmethod
    def const(cls, nvars: int, c) -> "RationalPoly":
        return cls(nvars, {(0,) * nvars: Fraction(c)})

    @classmethod
    def var(cls, nvars: int, i: int) -> "RationalPoly":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): Fraction(1)})

    def _coerce(self, o) -> "RationalPoly":
        if isinstance(o, RationalPoly):
            return o
        return RationalPoly.const(self.nvars, o)

    def __add__(self, o):
        o = self._coerce(o)
        out = dict(self.terms)
        for e, c in o.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return RationalPoly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return RationalPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, o):
        return self + (-self._coerce(o))

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        o = self._coerce(o)
        out: dict[tuple, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return RationalPoly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = RationalPoly.const(self.nvars, 1)
        for _ in range(n):
            out = out * self
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def subs(self, i: int, value) -> "RationalPoly":
        """Substitute variable i by a polynomial or constant (same nvars)."""
        repl = value if isinstance(value, RationalPoly) else RationalPoly.const(self.nvars, value)
        out = RationalPoly(self.nvars, {})
        for e, c in self.terms.items():
            term = RationalPoly.const(self.nvars, c)
            for j, p in enumerate(e):
                if p == 0:
                    continue
                base = repl if j == i else RationalPoly.var(self.nvars, j)
                term = term * base ** p
            out = out + term
        return out

    def divide_out(self, i: int, power: int) -> "RationalPoly":
        """Exactly divide by variable_i ** power; raises if not divisible."""
        out: dict[tuple, Fraction] = {}
        for e, c in self.terms.items():
            if e[i] != power:
                raise ValueError(f"term {e} does not carry variable {i}^{power}")
            e2 = list(e)
            e2[i] = 0
            out[tuple(e2)] = c
        return RationalPoly(self.nvars, out)

    def __call__(self, *values) -> Fraction:
        vals = [Fraction(v) for v in values]
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for v, p in zip(vals, e):
                term *= v ** p
            total += term
        return total

    def __eq__(self, o):
        if not isinstance(o, RationalPoly):
            return NotImplemented
        return self.nvars == o.nvars and self.terms == o.terms

    def __repr__(self):
        return f"RationalPoly(nvars={self.nvars}, terms={len(self.terms)})"


# -- gap polynomials from the closed-form solution -------------------------------

@dataclass(frozen=True)
class GapPolynomial:
    """Quadratic t-polynomial reproducing a diagonal on-axis gap entry.

    coefficients = (c0, c1, c2) for c0 + c1 t + c2 t^2, exact Fractions when
    the material moduli are exact, floats otherwise.  For the xx case the
    stored polynomial is 4*pi*P(t) so that coefficients stay rational; the
    pi reappears in gap_value.  gap_value(t) applies the full prefactor and
    equals gap_matrix((0,0,-1), (0,0,-(t-1)))_{ii} for t in (1, 2].
    """

    case: str
    coefficients: tuple
    mu: object = field(repr=False, default=None)
    nu: object = field(repr=False, default=None)
    mu_i: object = field(repr=False, default=None)
    nu_i: object = field(repr=False, default=None)

    def __call__(self, t):
        c0, c1, c2 = self.coefficients
        return c0 + c1 * t + c2 * t * t

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coefficients)

    def coefficient_norm_sq(self):
        return sum(c * c for c in self.coefficients)

    def gap_value(self, t) -> float:
        """Predicted diagonal gap entry at evaluation (0,0,-1), source (0,0,-(t-1))."""
        mu, nu, mu_i, nu_i = (float(self.mu), float(self.nu),
                              float(self.mu_i), float(self.nu_i))
        p = float(self(t))
        t = float(t)
        if self.case == "zz":
            return p / (4 * np.pi * mu * (1 - nu) * t**3 * (mu + mu_i * (3 - 4 * nu)))
        # stored polynomial is 4*pi*P(t); Eq-83.5-style prefactor P(t)/(4(1-nu)t^3)
        return p / (16 * np.pi * (1 - nu) * t**3)


def _pair_numbers(pair: MaterialPair):
    mu, lam = pair.host.mu, pair.host.lam
    mu_i, lam_i = pair.inclusion.mu, pair.inclusion.lam
    if _is_exact(mu, lam, mu_i, lam_i):
        mu, lam, mu_i, lam_i = map(_frac, (mu, lam, mu_i, lam_i))
    else:
        mu, lam, mu_i, lam_i = map(float, (mu, lam, mu_i, lam_i))
    nu = lam / (2 * (lam + mu))
    nu_i = lam_i / (2 * (lam_i + mu_i))
    return mu, nu, mu_i, nu_i


def p_poly_zz(pair: MaterialPair) -> GapPolynomial:
    """Gap polynomial for the normal-force diagonal entry (3,3).

    P(t) = (1-nu)[(mu-mu_I)(3-4nu) - gamma*mu] t^2 + (mu-mu_I)(t-1), with the
    linear-term sign fixed to match the closed-form solution (the published
    form carries (mu_I-mu)(t-1), inconsistent with the actual gap).
    """
    mu, nu, mu_i, nu_i = _pair_numbers(pair)
    gam = ((mu * (1 - 2 * nu) * (3 - 4 * nu_i) - mu_i * (1 - 2 * nu_i) * (3 - 4 * nu))
           / (mu_i + mu * (3 - 4 * nu_i)))
    c2 = (1 - nu) * ((mu - mu_i) * (3 - 4 * nu) - gam * mu)
    c1 = mu - mu_i
    c0 = -(mu - mu_i)
    return GapPolynomial("zz", (c0, c1, c2), mu, nu, mu_i, nu_i)


def p_poly_xx(pair: MaterialPair) -> GapPolynomial:
    """Gap polynomial for the tangential-force diagonal entries (1,1)/(2,2).

    Stored scaled by 4*pi to keep coefficients rational; gap_value applies
    the prefactor P(t)/(4(1-nu)t^3).
    """
    mu, nu, mu_i, nu_i = _pair_numbers(pair)
    ast = (((mu - mu_i) * (1 - 2 * nu)
            * (mu_i * (3 - 4 * nu) * (1 - 2 * nu_i) - mu * (3 - 4 * nu_i) * (1 - 2 * nu))
            - 2 * mu_i * (nu - nu_i) * (mu + mu_i * (3 - 4 * nu)))
           / (mu_i + mu * (3 - 4 * nu_i)))
    denom = (mu + mu_i) * (mu + mu_i * (3 - 4 * nu))
    c2 = ((3 - 4 * nu) * (mu - mu_i) / (mu * (mu + mu_i))
          - (1 - 2 * nu) * (mu - mu_i) / denom
          - ast / denom)
    c1 = 2 * (mu - mu_i) / (mu * (mu + mu_i * (3 - 4 * nu)))
    c0 = -c1
    return GapPolynomial("xx", (c0, c1, c2), mu, nu, mu_i, nu_i)


# -- printed coincident-point polynomials ----------------------------------------

def q2_value(case: str, nu, nu_i, s) -> Fraction:
    """Printed coincident-point polynomial Q2(nu, nu_I, s), exact rational."""
    n, m, t = _frac(nu), _frac(nu_i), _frac(s)
    if case == "zz":
        return (32*n**2*m*t**2 - 32*n**2*m*t - 24*n**2*t**2 - 64*n*m*t**2
                + 16*n**2*t + 56*n*m*t + 48*n*t**2 + 28*m*t**2 + 16*n**2
                - 28*n*t - 20*m*t - 21*t**2 - 28*n + 10*t + 11)
    if case == "xx":
        return (32*n**2*m*t**3 + 64*n**2*m*t**2 - 24*n**2*t**3 - 48*n*m*t**3
                - 96*n**2*m*t - 56*n**2*t**2 - 104*n*m*t**2 + 36*n*t**3
                + 28*m*t**3 + 64*n**2*t + 136*n*m*t + 88*n*t**2 + 40*m*t**2
                + 32*n**2 - 21*t**3 - 92*n*t - 52*m*t - 35*t**2 - 48*n + 37*t + 19)
    raise ValueError(f"case must be 'zz' or 'xx', got {case!r}")


def q2_value_recomputed(case: str, nu, nu_i, s) -> Fraction:
    """Coincident-point polynomial recomputed from the closed-form solution.

    Matches the printed polynomial for 'xx'; for 'zz' it differs (linear-term
    sign of the gap polynomial), and it is the one consistent with
    gap_matrix(y0, y0).
    """
    n, m, t = _frac(nu), _frac(nu_i), _frac(s)
    if case not in ("zz", "xx"):
        raise ValueError(f"case must be 'zz' or 'xx', got {case!r}")
    mu, mu_i = t, Fraction(1)
    lam = 2 * mu * n / (1 - 2 * n)
    lam_i = 2 * mu_i * m / (1 - 2 * m)
    from .materials import LameMaterial
    pair = MaterialPair(LameMaterial(mu, lam), LameMaterial(mu_i, lam_i))
    if case == "zz":
        p = p_poly_zz(pair)
        return Fraction(p(2)) * (mu_i + mu * (3 - 4 * m))
    p = p_poly_xx(pair)
    # gap(2) = P(2)/(32(1-nu)) and Q = 16(1-nu) R gap(2) with
    # R = -4*pi*mu*(mu+mu_i)(mu+mu_i(3-4nu))(mu_i+mu(3-4nu_i)); stored poly is 4*pi*P
    r_over_4pi = -mu * (mu + mu_i) * (mu + mu_i * (3 - 4 * n)) * (mu_i + mu * (3 - 4 * m))
    return Fraction(p(2)) * r_over_4pi / 2


def xx_denominator_r(pair: MaterialPair) -> float:
    """Denominator R of the coincident-point xx gap, derived in closed form:

    R = -4 pi mu (mu + mu_I)(mu + mu_I (3 - 4 nu))(mu_I + mu (3 - 4 nu_I));
    nonzero for mu, mu_I > 0.
    """
    mu, nu, mu_i, nu_i = _pair_numbers(pair)
    return float(-4 * np.pi * float(mu) * float(mu + mu_i)
                 * float(mu + mu_i * (3 - 4 * nu)) * float(mu_i + mu * (3 - 4 * nu_i)))


def nu_i_on_zero_locus(case: str, nu, s) -> Fraction:
    """The nu_I putting (nu, nu_I, s) on the printed zero locus Q2 = 0."""
    n, t = _frac(nu), _frac(s)
    if case == "zz":
        num = 3*(8*n**2 - 16*n + 7)*t**2 - 2*(8*n**2 - 14*n + 5)*t - 16*n**2 + 28*n - 11
        den = 4*((8*n**2 - 16*n + 7)*t**2 - (8*n**2 - 14*n + 5)*t)
    elif case == "xx":
        num = (3*(8*n**2 - 12*n + 7)*t**3 + (56*n**2 - 88*n + 35)*t**2
               - (64*n**2 - 92*n + 37)*t - 32*n**2 + 48*n - 19)
        den = 4*((8*n**2 - 12*n + 7)*t**3 + 2*(8*n**2 - 13*n + 5)*t**2
                 - (24*n**2 - 34*n + 13)*t)
    else:
        raise ValueError(f"case must be 'zz' or 'xx', got {case!r}")
    if den == 0:
        raise DegenerateDenominator(f"zero-locus denominator vanishes at nu={nu}, s={s}")
    return num / den


# -- printed polynomials as RationalPoly objects (identity checks) ---------------

# variable order (nu, nu_i, s)
def q2_polynomial(case: str) -> RationalPoly:
    """Printed Q2 as a RationalPoly in (nu, nu_I, s)."""
    n = RationalPoly.var(3, 0)
    m = RationalPoly.var(3, 1)
    s = RationalPoly.var(3, 2)
    if case == "zz":
        return (32*n**2*m*s**2 - 32*n**2*m*s - 24*n**2*s**2 - 64*n*m*s**2
                + 16*n**2*s + 56*n*m*s + 48*n*s**2 + 28*m*s**2 + 16*n**2
                - 28*n*s - 20*m*s - 21*s**2 - 28*n + 10*s + 11)
    if case == "xx":
        return (32*n**2*m*s**3 + 64*n**2*m*s**2 - 24*n**2*s**3 - 48*n*m*s**3
                - 96*n**2*m*s - 56*n**2*s**2 - 104*n*m*s**2 + 36*n*s**3
                + 28*m*s**3 + 64*n**2*s + 136*n*m*s + 88*n*s**2 + 40*m*s**2
                + 32*n**2 - 21*s**3 - 92*n*s - 52*m*s - 35*s**2 - 48*n + 37*s + 19)
    raise ValueError(f"case must be 'zz' or 'xx', got {case!r}")


# variable order (mu, nu, mu_i, nu_i)
def q_polynomial(case: str) -> RationalPoly:
    """Printed coincident-point numerator Q as a RationalPoly in (mu, nu, mu_I, nu_I)."""
    u = RationalPoly.var(4, 0)
    n = RationalPoly.var(4, 1)
    w = RationalPoly.var(4, 2)
    m = RationalPoly.var(4, 3)
    if case == "zz":
        return (32*u**2*n**2*m - 32*u*w*n**2*m - 24*u**2*n**2 - 64*u**2*n*m
                + 16*u*w*n**2 + 56*u*w*n*m + 16*w**2*n**2 + 48*u**2*n
                + 28*u**2*m - 28*u*w*n - 20*u*w*m - 28*w**2*n
                - 21*u**2 + 10*u*w + 11*w**2)
    if case == "xx":
        return (32*u**3*n**2*m + 64*u**2*w*n**2*m - 96*u*w**2*n**2*m
                - 24*u**3*n**2 - 48*u**3*n*m - 56*u**2*w*n**2 - 104*u**2*w*n*m
                + 64*u*w**2*n**2 + 136*u*w**2*n*m + 32*w**3*n**2 + 36*u**3*n
                + 28*u**3*m + 88*u**2*w*n + 40*u**2*w*m - 92*u*w**2*n
                - 52*u*w**2*m - 48*w**3*n - 21*u**3 - 35*u**2*w + 37*u*w**2 + 19*w**3)
    raise ValueError(f"case must be 'zz' or 'xx', got {case!r}")


def dimensional_reduction_residual(case: str) -> RationalPoly:
    """Q(s*mu_I, nu, mu_I, nu_I) / mu_I^deg - Q2(nu, nu_I, s); zero iff Eq. holds.

    Returned in variables (nu, nu_I, s) after exact division by the mu_I power
    (2 for zz, 3 for xx).
    """
    deg = 2 if case == "zz" else 3
    q = q_polynomial(case)
    # substitute mu -> s * mu_i inside a 5-var ring (mu, nu, mu_i, nu_i, s)
    q5 = RationalPoly(5, {e + (0,): c for e, c in q.terms.items()})
    s5 = RationalPoly.var(5, 4)
    mu_i5 = RationalPoly.var(5, 2)
    q5 = q5.subs(0, s5 * mu_i5)
    q3 = q5.divide_out(2, deg)  # strip mu_i^deg
    # remaining vars: (mu=0 unused, nu, _, nu_i, s) -> repack to (nu, nu_i, s)
    out = RationalPoly(3, {})
    for e, c in q3.terms.items():
        assert e[0] == 0 and e[2] == 0
        out = out + RationalPoly(3, {(e[1], e[3], e[4]): c})
    return out - q2_polynomial(case)


def factorization_residuals() -> dict[str, RationalPoly]:
    """Residual polynomials of the printed factorization identities (all zero).

    s=1 slices: Q2(nu, nu_I, 1) - 8(nu-1)(nu-nu_I)  [zz; 16(...) for xx];
    nu_I=nu slices: Q2(nu, nu, s) - (s-1) * printed curve of degree 3 [zz]
    or degree 5 [xx].
    """
    n = RationalPoly.var(3, 0)
    m = RationalPoly.var(3, 1)
    s = RationalPoly.var(3, 2)
    out = {}
    out["zz_s1"] = q2_polynomial("zz").subs(2, 1) - 8 * (n - 1) * (n - m)
    out["xx_s1"] = q2_polynomial("xx").subs(2, 1) - 16 * (n - 1) * (n - m)
    cubic = (32*n**3 - 88*n**2 + 76*n - 21) * s + (-16*n**2 + 28*n - 11)
    out["zz_slice"] = q2_polynomial("zz").subs(1, n) - (s - 1) * cubic
    quintic = (32*n**3*s**2 + 96*n**3*s - 72*n**2*s**2 - 232*n**2*s + 64*n*s**2
               - 32*n**2 + 192*n*s - 21*s**2 + 48*n - 56*s - 19)
    out["xx_slice"] = q2_polynomial("xx").subs(1, n) - (s - 1) * quintic
    return out


# -- lambda_w selection and profiles ---------------------------------------------

def select_lambda_w(pair: MaterialPair, i: int) -> tuple[Fraction, float]:
    """Pick lambda_w in {2/3, 3/4, 4/5} maximizing |gap((0,0,-1),(0,0,-l))_{ii}|.

    i is the axis index 1..3.  Ties break toward the smallest candidate.
    Raises AllCandidatesZero if every candidate evaluates to exactly zero
    (believed unreachable for admissible pairs; surfaced, never swallowed).
    """
    if i not in (1, 2, 3):
        raise ValueError("axis index i must be 1, 2 or 3")
    y0 = np.array([0.0, 0.0, -1.0])
    best = None
    for lw in LAMBDA_W_CANDIDATES:
        g = gap_matrix(y0, np.array([0.0, 0.0, -float(lw)]), pair)
        val = abs(float(g[i - 1, i - 1]))
        if best is None or val > best[1]:
            best = (lw, val)
    if best[1] == 0.0:
        raise AllCandidatesZero(
            f"gap entry ({i},{i}) vanished at all three lambda_w candidates")
    return best


@dataclass(frozen=True)
class ScanDataset:
    """Tabular scan output with a fixed column schema, CSV-serializable."""

    kind: str
    columns: tuple
    rows: list
    crossings: "ScanDataset | None" = None
    meta: dict | None = None

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            fh.write(",".join(self.columns) + "\n")
            for row in self.rows:
                fh.write(",".join(_csv_cell(v) for v in row) + "\n")

    def column(self, name: str) -> np.ndarray:
        j = self.columns.index(name)
        return np.array([float(r[j]) for r in self.rows])


def _csv_cell(v) -> str:
    if isinstance(v, str):
        return v
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return f"{float(v):.17g}"


def _axis_samples(rng: tuple) -> np.ndarray:
    lo, hi, n = rng
    if int(n) < 2:
        raise ValueError("resolution must be >= 2 per axis")
    return np.linspace(float(lo), float(hi), int(n))


def _bisect_root(f, a: float, b: float, tol: float = 1e-10) -> float:
    fa, fb = f(a), f(b)
    while b - a > tol:
        m = 0.5 * (a + b)
        fm = f(m)
        if fm == 0.0:
            return m
        if (fa < 0) != (fm < 0):
            b, fb = m, fm
        else:
            a, fa = m, fm
    return 0.5 * (a + b)


def zero_locus_scan(case: str, *, nu: tuple, s: tuple | None = None,
                    nu_i: tuple | None = None, slice: str | None = None) -> ScanDataset:
    """Sample the printed Q2 on a grid and bracket its zero crossings.

    Modes: slice=None scans the full (nu, nu_I, s) box with crossings along s;
    slice='nu-eq-nui' scans (nu, s) on the diagonal nu_I = nu; slice='s-eq-1'
    scans (nu, nu_I) at s = 1 with crossings along nu_I.  Axis ranges are
    (lo, hi, resolution) with resolution >= 2.  Crossings are bisected to
    1e-10 and exposed on the result's .crossings dataset.
    """
    if case not in ("zz", "xx"):
        raise ValueError(f"case must be 'zz' or 'xx', got {case!r}")
    columns = ("case", "nu", "nu_i", "s", "q2")
    rows: list = []
    cross: list = []

    def q2f(n, m, t) -> float:
        return float(q2_value(case, Fraction(n).limit_denominator(10**12),
                               Fraction(m).limit_denominator(10**12),
                               Fraction(t).limit_denominator(10**12)))

    if slice == "nu-eq-nui":
        if s is None:
            raise ValueError("slice 'nu-eq-nui' needs an s range")
        for n in _axis_samples(nu):
            svals = _axis_samples(s)
            q = [q2f(n, n, t) for t in svals]
            rows += [(case, n, n, t, v) for t, v in zip(svals, q)]
            cross += [(case, n, n, _bisect_root(lambda t: q2f(n, n, t), svals[j], svals[j + 1]), 0.0)
                      for j in range(len(svals) - 1)
                      if q[j] == 0.0 or (q[j] < 0) != (q[j + 1] < 0)]
    elif slice == "s-eq-1":
        if nu_i is None:
            raise ValueError("slice 's-eq-1' needs a nu_i range")
        for n in _axis_samples(nu):
            mvals = _axis_samples(nu_i)
            q = [q2f(n, m, 1.0) for m in mvals]
            rows += [(case, n, m, 1.0, v) for m, v in zip(mvals, q)]
            cross += [(case, n, _bisect_root(lambda m: q2f(n, m, 1.0), mvals[j], mvals[j + 1]), 1.0, 0.0)
                      for j in range(len(mvals) - 1)
                      if q[j] == 0.0 or (q[j] < 0) != (q[j + 1] < 0)]
    elif slice is None:
        if s is None or nu_i is None:
            raise ValueError("full scan needs nu, nu_i and s ranges")
        for n in _axis_samples(nu):
            for m in _axis_samples(nu_i):
                svals = _axis_samples(s)
                q = [q2f(n, m, t) for t in svals]
                rows += [(case, n, m, t, v) for t, v in zip(svals, q)]
                cross += [(case, n, m, _bisect_root(lambda t: q2f(n, m, t), svals[j], svals[j + 1]), 0.0)
                          for j in range(len(svals) - 1)
                          if q[j] == 0.0 or (q[j] < 0) != (q[j + 1] < 0)]
    else:
        raise ValueError(f"unknown slice {slice!r}")

    # record the residual at the bisected root in the q2 column
    cross = [(c, n, m, t, q2f(n, m, t)) for (c, n, m, t, _) in cross]
    crossings = ScanDataset(kind="zero_crossings", columns=columns, rows=cross)
    return ScanDataset(kind="zero_locus", columns=columns, rows=rows, crossings=crossings)


def blowup_profile(pair: MaterialPair, i: int, lambda_w: float, h_list) -> ScanDataset:
    """Rows (h, |gap((0,0,-h),(0,0,-lambda_w h))_{ii}|, axis, lambda_w).

    By exact scaling of the fundamental solutions every value equals
    (1/h) * value(h=1), so the log-log slope versus h is exactly -1.
    """
    if i not in (1, 2, 3):
        raise ValueError("axis index i must be 1, 2 or 3")
    lw = float(lambda_w)
    if not 0 < lw < 1:
        raise ValueError("lambda_w must lie in (0, 1)")
    hs = [float(h) for h in h_list]
    if any(h <= 0 for h in hs):
        raise ValueError("all h must be > 0")
    rows = []
    for h in hs:
        g = gap_matrix(np.array([0.0, 0.0, -h]), np.array([0.0, 0.0, -lw * h]), pair)
        rows.append((h, abs(float(g[i - 1, i - 1])), i, lw))
    return ScanDataset(kind="blowup", columns=("h", "gap_abs", "axis", "lambda_w"), rows=rows)


def loglog_slope(xs, ys) -> float:
    """Least-squares slope of log|y| against log x."""
    lx = np.log(np.asarray(xs, dtype=float))
    ly = np.log(np.abs(np.asarray(ys, dtype=float)))
    A = np.stack([lx, np.ones_like(lx)], axis=1)
    sol, *_ = np.linalg.lstsq(A, ly, rcond=None)
    return float(sol[0])
