from utils.errors import (
    LieToolkitError,
    DimensionMismatchError,
    InvalidInnerProductError,
    NonIdentityGramError,
    FlowError,
    LimitExceededError,
    ParseError,
    SingularMatrixError,
)
from utils.formatters import format_json, format_csv, format_matrix, format_certificate
from utils.settings import Settings, TOOL_VERSION

__all__ = [
    'LieToolkitError',
    'DimensionMismatchError',
    'InvalidInnerProductError',
    'NonIdentityGramError',
    'FlowError',
    'LimitExceededError',
    'ParseError',
    'SingularMatrixError',
    'format_json',
    'format_csv',
    'format_matrix',
    'format_certificate',
    'Settings',
    'TOOL_VERSION',
]
