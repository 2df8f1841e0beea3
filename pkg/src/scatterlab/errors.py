"""Exception hierarchy shared by all scatterlab modules."""


class ScatterlabError(Exception):
    """Base class for every error raised by this package."""


# field construction and tower bookkeeping

class NotPrime(ScatterlabError):
    """The characteristic passed to make_field is not a prime number."""


class DegreeOverflow(ScatterlabError):
    """Requested field size exceeds the configured arithmetic cap."""


class NonMonic(ScatterlabError):
    """Polynomial argument must be monic."""


class BadTowerLevel(ScatterlabError):
    """Subfield degree m does not divide n."""


class NotInSubfield(ScatterlabError):
    """Element is not fixed by the required Frobenius power."""


class ZeroInput(ScatterlabError):
    """Operation is undefined at zero."""


class CtxMismatch(ScatterlabError):
    """Operands belong to different field contexts."""


# linearized polynomials and binomials

class DegenerateBinomial(ScatterlabError):
    """Binomial exponents coincide modulo n."""


class NotNormalized(ScatterlabError):
    """Binomial does not satisfy the preconditions of the criterion."""


# scan control

class ScanCapExceeded(ScatterlabError):
    """Exhaustive scan would exceed the configured scan cap."""


# family criteria and classification

class NormOne(ScatterlabError):
    """The relevant norm equals one, outside the criterion's domain."""


class OutOfTheoremScope(ScatterlabError):
    """Parameters fall outside the classification theorem's hypotheses."""


# multivariate polynomial engine

class VarCountMismatch(ScatterlabError):
    """Operands have different variable counts."""


class DegreeTooHigh(ScatterlabError):
    """Polynomial degree in the pivot variable exceeds the expected bound."""


class ZeroPolynomial(ScatterlabError):
    """Operation is undefined for the zero polynomial."""


class GcdNotOne(ScatterlabError):
    """Exponent gap and n are not coprime."""


class CaseSelectionFailed(ScatterlabError):
    """No index satisfies the certificate's avoidance constraints."""


class EliminationDegenerate(ScatterlabError):
    """Leading coefficient of the eliminated variable vanishes identically."""


class SearchExhausted(ScatterlabError):
    """Deterministic parameter sweep found no point satisfying the side conditions."""


class PreconditionViolated(ScatterlabError):
    """Stated precondition of the operation does not hold."""


class BetaDegenerate(ScatterlabError):
    """beta lies in the degenerate set {0, 1}."""
