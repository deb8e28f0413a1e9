"""Exception types shared across the package."""


class FracrepError(Exception):
    """Base class for all package-specific errors."""


class FactorizationTooLarge(FracrepError):
    """Trial division would have to exceed the configured ceiling."""


class NotAUnit(FracrepError):
    """Residue shares a factor with the modulus."""


class ModuliNotCoprime(FracrepError):
    """CRT input moduli have a nontrivial common factor."""


class ModulusMismatch(FracrepError):
    """Character group operation on characters of different moduli."""


class DegenerateFamily(FracrepError):
    """Fraction family with vanishing discriminant or zero leading coefficient."""


class StratumEmpty(FracrepError):
    """No admissible residue satisfies the stratum's divisibility pattern."""


class DegenerateQuadruple(FracrepError):
    """Constancy-scan quadruple violates its coprimality or discriminant preconditions."""


class TargetNotPositive(FracrepError):
    """Membership target must be a positive rational."""


class TargetNotReduced(FracrepError):
    """Membership target must be given in lowest terms."""


class TargetNotSmooth(FracrepError):
    """Target has a prime factor outside the factor base."""


class SearchExhausted(FracrepError):
    """Bounded representation search ended without a certificate."""
