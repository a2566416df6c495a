"""Component data-dependency analysis of layered system architectures."""

from .model import (
    Architecture,
    ComponentRecord,
    InvalidIdentifierError,
    ModelError,
    SubcomponentCycleError,
    UnknownIdentifierError,
    case_study_fixture,
)

__all__ = [
    "Architecture",
    "ComponentRecord",
    "InvalidIdentifierError",
    "ModelError",
    "SubcomponentCycleError",
    "UnknownIdentifierError",
    "case_study_fixture",
]

__version__ = "0.1.0"
