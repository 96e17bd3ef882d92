"""Input checking for user-supplied scalars, vectors and matrices.

Floats are refused: every computation is exact, and a float is rarely the
number its author meant.
"""

from __future__ import annotations

from numbers import Rational

import numpy as np

from .fields import Field, GFElement
from .linalg import LinearMap


def check_scalar(x, field: Field, name: str = "value"):
    if isinstance(x, (bool, np.bool_)):
        raise TypeError(f"{name}: booleans are not scalars")
    if isinstance(x, (float, np.floating, complex)):
        raise TypeError(f"{name}: floats are inexact; pass int, Fraction or 'n/d' strings")
    if isinstance(x, (Rational, GFElement, str)):
        return field(x)
    raise TypeError(f"{name}: cannot read {type(x).__name__} as a field element")


def check_vector(x, field: Field, dim: int | None = None, name: str = "vector") -> tuple:
    if isinstance(x, np.ndarray) and x.ndim != 1:
        raise ValueError(f"{name}: expected a 1-d array, got shape {x.shape}")
    try:
        items = list(x)
    except TypeError:
        raise TypeError(f"{name}: expected a sequence of scalars") from None
    if dim is not None and len(items) != dim:
        raise ValueError(f"{name}: expected {dim} coordinates, got {len(items)}")
    return tuple(check_scalar(c, field, name) for c in items)


def check_samples(X, field: Field, n_features: int, name: str = "X") -> list[tuple]:
    """2-d input with one coordinate vector per row."""
    if isinstance(X, LinearMap):
        X = X.rows
    rows = list(X)
    if rows and not hasattr(rows[0], "__len__"):
        raise ValueError(f"{name}: expected a 2-d array; reshape a single vector to (1, -1)")
    return [check_vector(r, field, n_features, f"{name}[{i}]") for i, r in enumerate(rows)]


def check_matrix(m, field: Field, shape: tuple[int, int] | None = None,
                 name: str = "matrix") -> LinearMap:
    """Coerce ``m`` (LinearMap, nested lists or 2-d array; rows = codomain) to a LinearMap."""
    if isinstance(m, LinearMap):
        if m.field != field:
            raise ValueError(f"{name}: defined over {m.field.spec}, expected {field.spec}")
        out = m
    else:
        if isinstance(m, np.ndarray) and m.ndim != 2:
            raise ValueError(f"{name}: expected a 2-d array, got shape {m.shape}")
        rows = [list(r) for r in m]
        width = len(rows[0]) if rows else 0
        out = LinearMap([check_vector(r, field, width, f"{name}[{i}]")
                         for i, r in enumerate(rows)], field, width)
    if shape is not None and out.shape != tuple(shape):
        raise ValueError(f"{name}: expected shape {tuple(shape)}, got {out.shape}")
    return out


def to_object_array(rows) -> np.ndarray:
    """Exact scalars in a numpy object array (no float conversion)."""
    rows = [list(r) for r in rows]
    out = np.empty((len(rows), len(rows[0]) if rows else 0), dtype=object)
    for i, r in enumerate(rows):
        out[i, :] = r
    return out
