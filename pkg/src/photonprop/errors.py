"""Exception hierarchy.

Every error carries an ``exit_code`` used by the command line front end:
1 for numerical-contract failures, 2 for usage/config problems.
"""


class PhotonPropError(Exception):
    exit_code = 1

    def to_json(self):
        return {"error": type(self).__name__, "message": str(self)}


class InvalidSpec(PhotonPropError, ValueError):
    exit_code = 2


class SchemaError(PhotonPropError, ValueError):
    exit_code = 2

    def __init__(self, message, pointer=""):
        super().__init__(message)
        self.pointer = pointer

    def to_json(self):
        d = super().to_json()
        d["pointer"] = self.pointer
        return d


class GridTooNarrow(PhotonPropError, ValueError):
    pass


class OutOfRange(PhotonPropError, ValueError):
    pass


class GridMismatch(PhotonPropError, ValueError):
    pass


class NearSingularOrder(PhotonPropError, ValueError):
    pass


class AliasedInput(PhotonPropError, ValueError):
    pass


class SingularTime(PhotonPropError, ValueError):
    pass


class OutOfBranch(PhotonPropError, ValueError):
    pass


class NoRealSolution(PhotonPropError, ValueError):
    pass


class NonpositiveOrder(PhotonPropError, ValueError):
    pass


class NonpositiveDistance(PhotonPropError, ValueError):
    pass


class KrTooSmall(PhotonPropError, ValueError):
    pass


class CoincidentPoints(PhotonPropError, ValueError):
    pass


class TooCloseToSingularity(PhotonPropError, ValueError):
    pass


class QuadratureNotConverged(PhotonPropError, RuntimeError):
    pass


class OutOfWindow(PhotonPropError, ValueError):
    pass


class DegenerateModel(PhotonPropError, ValueError):
    pass
