"""Bell-inequality bounds, concurrences and entanglement entropies for n-qubit states."""

from ._qbell import *  # noqa: F401,F403
from ._qbell import CapacityError, DomainError, Error, NotPsdError, ValidationError  # noqa: F401
