"""Exception hierarchy shared by all modules."""


class RBirkhoffError(Exception):
    """Base class for all errors raised by this package."""


class InputError(RBirkhoffError, ValueError):
    """Malformed or out-of-domain input."""


# geometry
class EmptyPolytope(RBirkhoffError):
    pass


class UnboundedPolytope(RBirkhoffError):
    pass


class ZeroDimensional(RBirkhoffError):
    pass


class NotInPolytope(InputError):
    pass


class BudgetExceeded(RBirkhoffError):
    """An explicit node/state cap was hit before the computation finished."""


# birkhoff / gt
class InfeasibleMargins(InputError):
    pass


class CapExceeded(InputError):
    pass


# rsk
class NonIntegerInput(InputError):
    pass


class NegativeEntry(InputError):
    pass


class ShapeMismatch(InputError):
    pass


class NotAValidGluing(InputError):
    pass


class NotInCone(InputError):
    pass


# ehrhart
class DegreeOverflow(RBirkhoffError):
    pass


class NotAPolynomial(RBirkhoffError):
    """Counts disagree with the interpolated polynomial at a verification point."""


class NoPeriodFound(RBirkhoffError):
    pass


# posets
class NotInOrderPolytope(NotInPolytope):
    pass


class NotInChainPolytope(NotInPolytope):
    pass


class NotProductOfChains(InputError):
    pass
