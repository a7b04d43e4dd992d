"""Command decorators that turn domain failures into the CLI exit-code contract."""

import logging
from functools import wraps

import click

from .helpers import ParseError
from .models import BitradeError, LabelError
from .services.generator_service import EnumerationLimitError
from .services.partition_service import INCONSISTENT_LABELING, PartitionFailure
from .services.permutation_service import CycleNotationError
from .services.surface_service import GenusError
from .services.tessellation_service import LabelConflict

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_USAGE = 2
EXIT_INTERNAL = 3

USAGE_ERRORS = (ParseError, CycleNotationError, LabelError, EnumerationLimitError)


def exit_code_for(exc: BaseException) -> int:
    """0 ok, 1 the data fails a check, 2 unusable input, 3 an internal invariant broke."""
    if isinstance(exc, PartitionFailure):
        return EXIT_INTERNAL if exc.kind == INCONSISTENT_LABELING else EXIT_INVALID
    if isinstance(exc, (LabelConflict, GenusError)):
        return EXIT_INTERNAL
    if isinstance(exc, USAGE_ERRORS):
        return EXIT_USAGE
    return EXIT_INVALID


def maps_errors(f):
    """Report a BitradeError on stderr and exit with its contract code."""
    @wraps(f)
    def wrapper(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except BitradeError as exc:
            code = exit_code_for(exc)
            if code == EXIT_INTERNAL:
                logger.error("Internal invariant breach: %s", exc)
            click.echo(f"Error: {exc}", err=True)
            raise click.exceptions.Exit(code)
    return wrapper
