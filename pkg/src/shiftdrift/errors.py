"""Exception hierarchy.

Every error carries an ``exit_code`` so the command line front end can map
failures onto its documented exit statuses without a lookup table.
"""


class ShiftDriftError(Exception):
    exit_code = 1


class InputError(ShiftDriftError, ValueError):
    """Malformed input: bad ranges, foreign symbols, short words."""

    exit_code = 2


class ResourceError(ShiftDriftError):
    """An enumeration would exceed the configured cap."""

    exit_code = 3


class NotAPairError(InputError):
    """The two points are equal, so they do not form an asymptotic pair."""


class NotAsymptoticError(InputError):
    """The two points differ infinitely often to the left."""


class InvariantViolation(ShiftDriftError):
    """A structural guarantee failed at runtime (usually a bad automorphism)."""


class FamilyIncompleteError(ShiftDriftError):
    """A CA family claims a word pair that none of its schemas realizes."""


class InvalidCocycleError(InputError):
    """An orbit cocycle does not induce a bijection."""


class RefusedError(ShiftDriftError):
    """The drift pipeline refuses a space (positive entropy or finite)."""

    def __init__(self, message, certificate=None):
        super().__init__(message)
        self.certificate = certificate


class SpecError(InputError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)
