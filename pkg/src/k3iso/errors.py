"""Exception types shared across the package."""


class K3IsoError(Exception):
    """Base class for all domain errors."""


class NotPrimitive(K3IsoError):
    """Input Mukai vector is not primitive: gcd(r, d, s) > 1."""


class NotDivisible(K3IsoError):
    """d^2 does not divide r*s, so the primitive polarization has no even square."""


class SplitFailure(K3IsoError):
    """gamma does not factor through gcds with a1 and b1 (precondition violated)."""


class InvalidLattice(K3IsoError):
    """Lattice parameters fail an invariant (divisibility, unit, congruence)."""


class NotInLattice(K3IsoError):
    """Coordinate pair violates the membership congruence x = mu*y (mod M)."""


class NotEven(K3IsoError):
    """Gram matrix is not a symmetric integer matrix with even diagonal."""


class NotHyperbolic(K3IsoError):
    """Gram determinant is not negative."""


class NotPrimitivePolarization(K3IsoError):
    """Polarization vector is not primitive in Z^2."""


class NotPositive(K3IsoError):
    """Polarization vector has non-positive square."""


class ZeroTarget(K3IsoError):
    """Form equation with target m = 0 is rejected."""


class IncompatibleConstraints(K3IsoError):
    """Congruence system has no solution."""


class PreconditionViolated(K3IsoError):
    """A morphism was applied to a Mukai vector outside its domain."""


class NotIsotropic(K3IsoError):
    """Vector was expected to have square zero."""


class LatticeMismatch(K3IsoError):
    """Lattice n_half disagrees with the invariants of (r, s, d)."""


class HypothesisViolated(K3IsoError):
    """gcd(c, d*gamma) != 1: the decision criterion does not apply."""


class SynthesisFailure(K3IsoError):
    """An exactness step of certificate synthesis failed on an accepted witness."""
