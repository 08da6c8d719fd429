"""Exception hierarchy.

Everything a user can trigger with bad input derives from :class:`InputError`;
the command line maps those to exit status 2.
"""


class InputError(ValueError):
    pass


class DimensionMismatch(InputError):
    pass


class UnsupportedRootSystem(InputError):
    pass


class CapExceeded(InputError):
    pass


class NonRegularError(InputError):
    pass


class DuplicatePoints(InputError):
    pass


class InconsistentBasis(InputError):
    pass


class FanError(InputError):
    """Raised for a fan that is not smooth and complete.

    ``where`` names the offending cone or facet (ray indices).
    """

    def __init__(self, message, where=None):
        super().__init__(message)
        self.where = where


class GammaRejected(InputError):
    pass


class EmbeddingError(InputError):
    pass
