from .errors import (QVandError, ParseError, DegenerateQ, ZeroQ, DimensionMismatch,
                     SingularD, SingularMatrix, DenseCapExceeded, ConfigError)
from .scalar_utils import (EXACT, COMPLEX, get_field, field_for, field_for_array,
                           parse_scalar, format_scalar)
from .io_utils import read_vector, format_vector, format_matrix, json_float, save_json, save_text

__all__ = [
    'QVandError',
    'ParseError',
    'DegenerateQ',
    'ZeroQ',
    'DimensionMismatch',
    'SingularD',
    'SingularMatrix',
    'DenseCapExceeded',
    'ConfigError',
    'EXACT',
    'COMPLEX',
    'get_field',
    'field_for',
    'field_for_array',
    'parse_scalar',
    'format_scalar',
    'read_vector',
    'format_vector',
    'format_matrix',
    'json_float',
    'save_json',
    'save_text',
]
