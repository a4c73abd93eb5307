"""Exception hierarchy.

Every error carries a short machine-readable ``code`` that the CLI puts in
its JSON output.
"""


class GGMError(Exception):
    code = "error"


class InvalidManifold(GGMError):
    """Input does not describe a valid generalized graph manifold."""

    code = "invalid_manifold"


class BadDimension(InvalidManifold):
    code = "bad_dimension"


class BadEuler(InvalidManifold):
    code = "bad_euler"


class NotUnimodular(InvalidManifold):
    code = "not_unimodular"


class FiberIdentified(InvalidManifold):
    code = "fiber_identified"


class DanglingLabel(InvalidManifold):
    code = "dangling_label"


class DuplicateLabel(InvalidManifold):
    code = "duplicate_label"


class NotSymmetric(GGMError):
    code = "not_symmetric"


class MalformedBasisChange(GGMError):
    code = "malformed_basis_change"


class DimensionTooSmall(GGMError):
    code = "dimension_too_small"


class ManifoldSyntaxError(InvalidManifold):
    code = "syntax_error"

    def __init__(self, msg, line=None, column=None):
        if line is not None:
            msg = f"{msg} (line {line}, column {column})"
        super().__init__(msg)
        self.line = line
        self.column = column


class SchemaError(InvalidManifold):
    code = "schema_error"

    def __init__(self, msg, field=None):
        if field is not None:
            msg = f"{field}: {msg}"
        super().__init__(msg)
        self.field = field
