"""Python bindings for the ASF+ toolchain."""

from ._asfplus import (  # noqa: F401
    NormError,
    check,
    diagram,
    expand,
    fingerprint,
    normalize,
    parse_module,
    print_module,
)

__all__ = [
    "NormError",
    "check",
    "diagram",
    "expand",
    "fingerprint",
    "normalize",
    "parse_module",
    "print_module",
]
