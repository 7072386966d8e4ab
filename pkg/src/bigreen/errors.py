"""Exception hierarchy for the bigreen package."""


class BigreenError(Exception):
    """Base class for all bigreen errors."""


# -- materials ---------------------------------------------------------------

class NotStronglyConvex(BigreenError):
    """Lame moduli violate mu >= alpha0 > 0 or 2*mu + 3*lambda >= gamma0 > 0."""


class OutOfBounds(BigreenError):
    """Lame moduli exceed the a-priori upper bounds."""


class PoissonOutOfRange(BigreenError):
    """Poisson ratio outside the open interval (-1, 1/2)."""


class JumpTooSmall(BigreenError):
    """Material pair violates (lambda - lambda_I)^2 + (mu - mu_I)^2 >= eta0^2."""


# -- fundamental solutions ---------------------------------------------------

class CoincidentPoints(BigreenError):
    """Evaluation and source point coincide (or are numerically inseparable)."""


class NonUnitNormal(BigreenError):
    """Supplied normal vector is not unit length."""


class NonPositiveSourceHeight(BigreenError):
    """Source height c must be strictly positive."""


class SourceOnWrongSide(BigreenError):
    """Source point lies on the inclusion side; pass allow_source_in_inclusion."""


# -- gap analysis ------------------------------------------------------------

class DegenerateDenominator(BigreenError):
    """Zero-locus denominator vanished; no finite solution for nu_I."""


class AllCandidatesZero(BigreenError):
    """All three lambda_w candidates gave a zero gap (believed unreachable)."""


# -- quadrature --------------------------------------------------------------

class QuadratureNotConverged(BigreenError):
    """Self-estimated quadrature error exceeds tolerance after max refinement."""


# -- finite-difference oracle ------------------------------------------------

class SolverDiverged(BigreenError):
    """Conjugate-gradient iteration failed to reach the target residual."""


class GridTooCoarse(BigreenError):
    """Grid resolution below the documented minimum for the operation."""


class SourceTooCloseToInterface(BigreenError):
    """Point source must sit at least two cells away from the interface."""


# -- geometry metrics --------------------------------------------------------

class EmptySet(BigreenError):
    """Distance requested for an empty voxel set."""


class NoFreeMargin(BigreenError):
    """Bounding grid must contain a one-voxel free margin around the sets."""


# -- cli ---------------------------------------------------------------------

class ConfigParse(BigreenError):
    """Configuration file failed to parse or validate."""
