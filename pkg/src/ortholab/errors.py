"""Exception hierarchy.

Validation and resource errors map to CLI exit code 2; a :class:`RejectedError`
is a failed precondition of a representation map and maps to a false verdict.
"""


class OrthoLabError(Exception):
    pass


class ValidationError(OrthoLabError, ValueError):
    """Malformed input: dimension/arity mismatch, bad literal, violated precondition."""


class ResourceError(OrthoLabError):
    """A configured size bound would be exceeded."""


class RejectedError(OrthoLabError):
    """A form or polynomial is outside the class a representation map accepts.

    ``witness`` holds the concrete evidence (e.g. a p-disjoint tuple on which
    the form does not vanish).
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness
