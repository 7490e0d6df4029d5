"""
Utility functions for logging and error handling
"""
import logging
from typing import Optional


def setup_logger(name: str, level: str = "INFO") -> logging.Logger:
    logger = logging.getLogger(name)
    logger.setLevel(getattr(logging, level.upper(), logging.INFO))
    if not logger.handlers:  # repeated CLI invocations in one process
        handler = logging.StreamHandler()
        formatter = logging.Formatter('%(asctime)s %(levelname)s %(message)s')
        handler.setFormatter(formatter)
        logger.addHandler(handler)
    return logger


class SolitonCSError(Exception):
    pass


class InvalidParameterError(SolitonCSError, ValueError):
    """Raised when an input violates a documented precondition."""


class NumericalFailure(SolitonCSError):
    """Base class for failures of a numerical procedure on valid input."""


def format_number(value: Optional[complex]) -> Optional[str]:
    """
    Render a number with 17 significant digits (round-trip safe).

    Complex values with a vanishing imaginary part are rendered as reals,
    the others as "re+imj".
    """
    if value is None:
        return None
    if isinstance(value, complex):
        if value.imag == 0.0:
            return format(value.real, ".17g")
        return f"{value.real:.17g}{value.imag:+.17g}j"
    return format(float(value), ".17g")


def parse_complex(text) -> complex:
    """Parse "re+imi" (or "re+imj") literals such as "0.7+0.2i", "1", "-2i"."""
    if isinstance(text, (int, float, complex)):
        return complex(text)
    try:
        return complex(str(text).strip().replace(" ", "").replace("i", "j"))
    except ValueError as e:
        raise InvalidParameterError(f"cannot parse complex literal {text!r}") from e


def parse_float_list(text) -> list:
    """Comma separated floats: "1,2" -> [1.0, 2.0]"""
    if isinstance(text, (list, tuple)):
        return [float(v) for v in text]
    try:
        return [float(v) for v in str(text).split(",") if v.strip()]
    except ValueError as e:
        raise InvalidParameterError(f"cannot parse number list {text!r}") from e
