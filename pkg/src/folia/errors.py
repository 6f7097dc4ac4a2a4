"""Exception hierarchy.

Index attributes on exceptions are 0-based (internal); messages and
``to_dict`` payloads are 1-based to match the external document format.
"""

from __future__ import annotations


class FoliaError(Exception):
    """Base class for every error raised by the engine."""

    kind = "FoliaError"

    def __init__(self, message: str, **details):
        super().__init__(message)
        self.details = details

    def to_dict(self) -> dict:
        return {"error": self.kind, "message": str(self), **self.details}


class ValidationError(FoliaError):
    kind = "ValidationError"


class ShapeMismatch(ValidationError, ValueError):
    kind = "ShapeMismatch"


class AntisymmetryViolation(ValidationError):
    kind = "AntisymmetryViolation"

    def __init__(self, i: int, j: int, k: int, magnitude: float):
        self.index = (i, j, k)
        self.magnitude = magnitude
        super().__init__(
            f"c[{i + 1}][{j + 1}][{k + 1}] + c[{j + 1}][{i + 1}][{k + 1}] = {magnitude:.3e}",
            index=[i + 1, j + 1, k + 1],
            magnitude=magnitude,
        )


class JacobiViolation(ValidationError):
    kind = "JacobiViolation"

    def __init__(self, i: int, j: int, l: int, k: int, magnitude: float):
        self.index = (i, j, l, k)
        self.magnitude = magnitude
        super().__init__(
            f"Jacobi sum for (e{i + 1}, e{j + 1}, e{l + 1}) has e{k + 1} component {magnitude:.3e}",
            index=[i + 1, j + 1, l + 1, k + 1],
            magnitude=magnitude,
        )


class InvalidFoliation(ValidationError):
    """Leaf/normal index sets do not partition the frame."""

    kind = "InvalidFoliation"


class NotIntegrable(ValidationError):
    kind = "NotIntegrable"

    def __init__(self, a: int, b: int, x: int, magnitude: float):
        self.index = (a, b, x)
        self.magnitude = magnitude
        super().__init__(
            f"[e{a + 1}, e{b + 1}] has normal component {magnitude:.3e} along e{x + 1}",
            index=[a + 1, b + 1, x + 1],
            magnitude=magnitude,
        )


class NotRiemannian(ValidationError):
    kind = "NotRiemannian"

    def __init__(self, a: int, x: int, y: int, magnitude: float):
        self.index = (a, x, y)
        self.magnitude = magnitude
        super().__init__(
            f"L_e{a + 1} g_Q(e{x + 1}, e{y + 1}) = {magnitude:.3e}: "
            "transverse metric is not leaf-invariant",
            index=[a + 1, x + 1, y + 1],
            magnitude=magnitude,
        )


class StandingAssumptionViolation(ValidationError):
    """The mean curvature form is not basic, closed and basic-coclosed."""

    kind = "StandingAssumptionViolation"

    def __init__(self, name: str, magnitude: float):
        self.name = name
        self.magnitude = magnitude
        super().__init__(f"{name} = {magnitude:.3e}", name=name, magnitude=magnitude)


class InvalidFactor(FoliaError, ValueError):
    kind = "InvalidFactor"


class InconsistentCriteria(FoliaError):
    kind = "InconsistentCriteria"


class InvalidParameter(FoliaError, ValueError):
    kind = "InvalidParameter"


class ParseError(FoliaError):
    kind = "ParseError"


class SchemaError(ParseError):
    kind = "SchemaError"


class DuplicateBracket(SchemaError):
    kind = "DuplicateBracket"
