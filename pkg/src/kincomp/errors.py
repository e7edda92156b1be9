"""Exception hierarchy.

Every error raised on purpose by the library derives from :class:`KincompError`,
so callers can catch one class at an API boundary.
"""


class KincompError(Exception):
    pass


# -- input validation -------------------------------------------------------

class InputError(KincompError, ValueError):
    """Malformed user input (graph document, rate spec, initial state)."""


class LoopEdgeError(InputError):
    pass


class DuplicateEdgeError(InputError):
    pass


class NonpositiveCapacityError(InputError):
    pass


class DanglingEndpointError(InputError):
    pass


class SchemaError(InputError):
    """JSON document with missing, unknown or mistyped fields."""


class InvalidRateError(InputError):
    """Rate function violating the monotonicity/vanishing requirements."""


class InvalidReactionError(InputError):
    pass


# -- structural analysis ----------------------------------------------------

class EmptySetError(KincompError, ValueError):
    pass


class PlaceCapExceededError(KincompError):
    def __init__(self, n_places: int, cap: int):
        super().__init__(
            f"net has {n_places} places, above the enumeration cap of {cap}; "
            "for compartmental nets of strongly connected graphs use "
            "closed_form_siphons, or raise max_places explicitly"
        )
        self.n_places = n_places
        self.cap = cap


class NotStronglyConnectedError(KincompError):
    pass


# -- numerics ---------------------------------------------------------------

class NegativeStateError(KincompError, ValueError):
    pass


class StateOutOfBoxError(KincompError, ValueError):
    pass


class NumericalError(KincompError):
    """Integrator or solver failure (not a property of the model)."""


class StepSizeUnderflowError(NumericalError):
    pass


class BoxViolationError(NumericalError):
    pass


class NoConvergenceError(NumericalError):
    def __init__(self, message: str, diagnostics: dict | None = None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class OrderViolationError(KincompError):
    pass


class ExpansionDetectedError(KincompError):
    pass
