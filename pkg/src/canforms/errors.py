"""Error taxonomy shared by every module.

Three failure classes, mapped one-to-one onto CLI exit codes:

* ``ValidationError`` (exit 1): the input itself is malformed or
  inconsistent (bad schema, mismatched dimensions, repeated hyperplanes).
* ``PreconditionError`` (exit 2): the input is well formed but violates a
  documented precondition of the requested operation (point on a
  hyperplane, non-generic infinity, non-simple vertex, cut missing the
  interior).
* ``InternalInvariantError`` (exit 3): a cross-check that should hold by
  construction failed; indicates a defect, not a user error.
"""

from __future__ import annotations


class CanformsError(Exception):
    """Base class for all package errors."""

    exit_code = 3


class ValidationError(CanformsError):
    exit_code = 1


class PreconditionError(CanformsError):
    exit_code = 2


class InternalInvariantError(CanformsError):
    exit_code = 3
