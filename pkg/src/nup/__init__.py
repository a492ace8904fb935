"""Exact group arithmetic, non-unique product set constructions, and their verifier."""

__version__ = "0.1.0"

from .words import (
    ELLIPTIC,
    HYPERBOLIC,
    GroupParams,
    NormalForm,
    ParseError,
    from_string,
    from_word,
    generator,
    identity,
    parse,
    to_string,
)
from .sets import (
    FactorizationTable,
    GroupSet,
    is_nonunique_square,
    make_set,
    product_table,
    unique_products,
)
from .families import FamilySpec, SliceLabel, build_family, expected_cardinality

__all__ = [
    "ELLIPTIC",
    "HYPERBOLIC",
    "GroupParams",
    "NormalForm",
    "ParseError",
    "FactorizationTable",
    "GroupSet",
    "FamilySpec",
    "SliceLabel",
    "build_family",
    "expected_cardinality",
    "from_string",
    "from_word",
    "generator",
    "identity",
    "is_nonunique_square",
    "make_set",
    "parse",
    "product_table",
    "to_string",
    "unique_products",
    "__version__",
]
