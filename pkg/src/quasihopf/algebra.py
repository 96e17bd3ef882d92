"""Finite-dimensional algebras by structure constants, and sparse tensor elements.

A :class:`Space` is a labelled basis over a field.  :class:`BasedAlgebra`
adds a (sparse) multiplication table and a unit; the table is *not*
required to be associative, so the same class carries module-algebra
carriers.  :class:`TensorProduct` is the tensor product of spaces with
basis keys given by index tuples; products of tensor elements are computed
leg by leg, never from materialized structure constants.
"""

from __future__ import annotations

import functools
import itertools
from typing import Callable, Iterable, Mapping, Sequence

from .fields import Field
from .linalg import LinearMap, NoSolution, NotInvertible, solve_linear
from .report import VerificationReport


class Space:
    """Coordinate space with a labelled basis; keys are ``0 .. dim-1``."""

    is_algebra = False

    def __init__(self, labels: Sequence[str], field: Field, name: str | None = None):
        labels = tuple(str(s) for s in labels)
        if not labels:
            raise ValueError("a carrier must have positive dimension")
        if len(set(labels)) != len(labels):
            raise ValueError(f"duplicate basis labels in {labels}")
        self.labels = labels
        self.field = field
        self.dim = len(labels)
        self.name = name

    @property
    def factors(self) -> tuple[Space, ...]:
        return (self,)

    def keys(self) -> Iterable:
        return range(self.dim)

    def index(self, key) -> int:
        return key

    def key(self, index: int):
        return index

    def split(self, key) -> tuple:
        return (key,)

    def join(self, parts: tuple):
        (k,) = parts
        return k

    def basis(self, key) -> Element:
        return Element(self, {key: self.field.one})

    def element(self, coords: Sequence) -> Element:
        if len(coords) != self.dim:
            raise ValueError(f"{len(coords)} coordinates for a space of dimension {self.dim}")
        f = self.field
        return Element(self, {self.key(i): f(c) for i, c in enumerate(coords) if c})

    def zero(self) -> Element:
        return Element(self, {})

    def label(self, key) -> str:
        return self.labels[key]

    def __repr__(self):
        return f"<{type(self).__name__} {self.name or ''} dim={self.dim}>"


class BasedAlgebra(Space):
    """Unital algebra given by structure constants ``e_i e_j = sum_k c[i][j][k] e_k``."""

    is_algebra = True

    def __init__(
        self,
        labels: Sequence[str],
        table: Mapping[tuple[int, int], Mapping[int, object]],
        unit: Sequence,
        field: Field,
        name: str | None = None,
    ):
        super().__init__(labels, field, name)
        n = self.dim
        self._table: list[list[dict]] = [[{} for _ in range(n)] for _ in range(n)]
        for (i, j), row in table.items():
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"structure constant index ({i}, {j}) out of range")
            d = {}
            for k, c in row.items():
                if not 0 <= k < n:
                    raise ValueError(f"structure constant index {k} out of range")
                c = field(c)
                if c:
                    d[k] = c
            self._table[i][j] = d
        if len(unit) != n:
            raise ValueError("unit has wrong length")
        self.unit_coords = tuple(field(c) for c in unit)

    @classmethod
    def from_triples(cls, labels, triples: Iterable[tuple[int, int, int, object]], unit, field,
                     name=None) -> BasedAlgebra:
        table: dict = {}
        for i, j, k, c in triples:
            row = table.setdefault((i, j), {})
            row[k] = row.get(k, 0) + field(c)
        return cls(labels, table, unit, field, name)

    @classmethod
    def from_product(cls, labels, product: Callable[[int, int], Mapping[int, object]], unit, field,
                     name=None) -> BasedAlgebra:
        n = len(labels)
        table = {(i, j): product(i, j) for i in range(n) for j in range(n)}
        return cls(labels, table, unit, field, name)

    def mul_basis(self, i: int, j: int) -> dict:
        return self._table[i][j]

    def triples(self) -> Iterable[tuple[int, int, int, object]]:
        for i, row in enumerate(self._table):
            for j, d in enumerate(row):
                for k, c in sorted(d.items()):
                    yield i, j, k, c

    def one(self) -> Element:
        return self.element(self.unit_coords)

    @property
    def unit_terms(self) -> dict:
        return {i: c for i, c in enumerate(self.unit_coords) if c}

    def left_matrix(self, x: Element) -> LinearMap:
        """Matrix of ``y -> x y``."""
        cols = [(x * self.basis(j)).coords for j in range(self.dim)]
        return LinearMap.from_columns(cols, self.field, self.dim)

    def right_matrix(self, x: Element) -> LinearMap:
        """Matrix of ``y -> y x``."""
        cols = [(self.basis(j) * x).coords for j in range(self.dim)]
        return LinearMap.from_columns(cols, self.field, self.dim)

    def same_structure(self, other: BasedAlgebra) -> bool:
        return (
            isinstance(other, BasedAlgebra)
            and self.field == other.field
            and self.dim == other.dim
            and self.unit_coords == other.unit_coords
            and self._table == other._table
        )


class Ground(BasedAlgebra):
    """The ground field as a one-dimensional algebra; a tensor factor that vanishes."""

    def __init__(self, field: Field):
        super().__init__(["1"], {(0, 0): {0: 1}}, [1], field, name="k")

    @property
    def factors(self) -> tuple[Space, ...]:
        return ()

    def split(self, key) -> tuple:
        return ()

    def join(self, parts: tuple):
        if parts:
            raise ValueError("ground field has no tensor legs")
        return 0


@functools.lru_cache(maxsize=None)
def ground(field: Field) -> Ground:
    return Ground(field)


class TensorProduct(Space):
    """``F_1 (x) ... (x) F_n`` with left-major flat indexing and leg-wise products."""

    def __init__(self, factors: Sequence[Space]):
        self._factors = tuple(factors)
        if len(self._factors) < 2:
            raise ValueError("use tensor() to build products of fewer than two factors")
        self.field = self._factors[0].field
        if any(f.field != self.field for f in self._factors):
            raise ValueError("tensor factors over different fields")
        self.dims = tuple(f.dim for f in self._factors)
        dim = 1
        for d in self.dims:
            dim *= d
        self.dim = dim
        self.name = "⊗".join(f.name or "?" for f in self._factors)
        self.is_algebra = all(f.is_algebra for f in self._factors)
        self._mul_cache: dict = {}

    @property
    def factors(self) -> tuple[Space, ...]:
        return self._factors

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(self.label(k) for k in self.keys())

    def label(self, key) -> str:
        return "⊗".join(f.label(k) for f, k in zip(self._factors, key))

    def keys(self) -> Iterable:
        return itertools.product(*(range(d) for d in self.dims))

    def index(self, key) -> int:
        i = 0
        for k, d in zip(key, self.dims):
            i = i * d + k
        return i

    def key(self, index: int) -> tuple:
        out = []
        for d in reversed(self.dims):
            index, r = divmod(index, d)
            out.append(r)
        return tuple(reversed(out))

    def split(self, key) -> tuple:
        return key

    def join(self, parts: tuple):
        return tuple(parts)

    def mul_basis(self, k1: tuple, k2: tuple) -> dict:
        cached = self._mul_cache.get((k1, k2))
        if cached is not None:
            return cached
        result: dict = {(): self.field.one}
        for f, a, b in zip(self._factors, k1, k2):
            d = f.mul_basis(a, b)
            if not d:
                result = {}
                break
            result = {key + (k,): c * e for key, c in result.items() for k, e in d.items()}
        self._mul_cache[(k1, k2)] = result
        return result

    @property
    def unit_coords(self) -> tuple:
        return self.one().coords

    def one(self) -> Element:
        return outer(*(f.one() for f in self._factors))

    def __eq__(self, other):
        return (isinstance(other, TensorProduct) and len(other._factors) == len(self._factors)
                and all(a is b for a, b in zip(self._factors, other._factors)))

    def __hash__(self):
        return hash(tuple(id(f) for f in self._factors))


def tensor(*spaces: Space) -> Space:
    """Tensor product of spaces, flattening nested products and dropping ground factors."""
    if not spaces:
        raise ValueError("tensor() needs at least one space")
    factors: list[Space] = []
    for s in spaces:
        factors.extend(s.factors)
    if not factors:
        return ground(spaces[0].field)
    if len(factors) == 1:
        return factors[0]
    return TensorProduct(factors)


class Element:
    """Vector of a :class:`Space`, stored as a sparse ``{key: scalar}`` dict."""

    __slots__ = ("space", "terms")

    def __init__(self, space: Space, terms: Mapping):
        self.space = space
        self.terms = {k: c for k, c in terms.items() if c}

    @property
    def field(self) -> Field:
        return self.space.field

    @property
    def coords(self) -> tuple:
        zero = self.space.field.zero
        out = [zero] * self.space.dim
        for k, c in self.terms.items():
            out[self.space.index(k)] = c
        return tuple(out)

    def _check(self, other: Element):
        if not isinstance(other, Element):
            raise TypeError(f"expected Element, got {type(other).__name__}")
        if other.space != self.space:
            raise ValueError(f"space mismatch: {self.space!r} vs {other.space!r}")

    def __add__(self, other: Element) -> Element:
        self._check(other)
        t = dict(self.terms)
        for k, c in other.terms.items():
            t[k] = t.get(k, 0) + c
        return Element(self.space, t)

    def __sub__(self, other: Element) -> Element:
        self._check(other)
        t = dict(self.terms)
        for k, c in other.terms.items():
            t[k] = t.get(k, 0) - c
        return Element(self.space, t)

    def __neg__(self) -> Element:
        return Element(self.space, {k: -c for k, c in self.terms.items()})

    def scale(self, c) -> Element:
        c = self.field(c)
        return Element(self.space, {k: c * v for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Element):
            return self.scale(other)
        self._check(other)
        if not self.space.is_algebra:
            raise TypeError(f"{self.space!r} is not an algebra")
        mul = self.space.mul_basis
        acc: dict = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                c = c1 * c2
                for k, e in mul(k1, k2).items():
                    acc[k] = acc.get(k, 0) + c * e
        return Element(self.space, acc)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.space == other.space and self.terms == other.terms

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    def items(self):
        """``(leg-key tuple, coefficient)`` pairs in a deterministic order."""
        split = self.space.split
        for k in sorted(self.terms, key=self.space.index):
            yield split(k), self.terms[k]

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms, key=self.space.index):
            parts.append(f"{self.terms[k]}*{self.space.label(k)}")
        return " + ".join(parts)


def outer(*xs: Element) -> Element:
    """``x_1 (x) ... (x) x_n`` in ``tensor(x_1.space, ..., x_n.space)``."""
    space = tensor(*(x.space for x in xs))
    result: dict = {(): space.field.one}
    for x in xs:
        split = x.space.split
        result = {key + split(k): c * e for key, c in result.items() for k, e in x.terms.items()}
    return Element(space, {space.join(k): c for k, c in result.items()})


def on_leg(x: Element, leg: int, f: LinearMap, codomain: Space) -> Element:
    """Apply ``f: F_leg -> codomain`` to one tensor leg of ``x``.

    ``codomain`` may itself be a tensor product (legs are spliced in) or the
    ground field (the leg disappears, e.g. for a counit).
    """
    factors = x.space.factors
    if not 0 <= leg < len(factors):
        raise IndexError(f"leg {leg} out of range for {len(factors)} factors")
    if f.src_dim != factors[leg].dim or f.dst_dim != codomain.dim:
        raise ValueError(f"map of shape {f.shape} does not fit leg {leg}")
    target = tensor(*factors[:leg], codomain, *factors[leg + 1:])
    cols = f.sparse_columns
    csplit, ckey = codomain.split, codomain.key
    acc: dict = {}
    for key, c in x.items():
        pre, mid, post = key[:leg], key[leg], key[leg + 1:]
        for r, a in cols[mid]:
            k = target.join(pre + csplit(ckey(r)) + post)
            acc[k] = acc.get(k, 0) + c * a
    return Element(target, acc)


def apply_map(f: LinearMap, x: Element, codomain: Space) -> Element:
    """Apply a matrix to ``x`` using flat coordinates on both sides."""
    if f.src_dim != x.space.dim or f.dst_dim != codomain.dim:
        raise ValueError(f"map of shape {f.shape} does not fit {x.space!r} -> {codomain!r}")
    cols = f.sparse_columns
    acc: dict = {}
    key = codomain.key
    for k, c in x.terms.items():
        for r, a in cols[x.space.index(k)]:
            kk = key(r)
            acc[kk] = acc.get(kk, 0) + c * a
    return Element(codomain, acc)


def contract(x: Element, fn: Callable[..., Element], target: Space) -> Element:
    """Linear extension ``sum c * fn(*legs)`` over the terms of ``x``."""
    acc: dict = {}
    for key, c in x.items():
        y = fn(*key)
        if y.space != target:
            raise ValueError(f"contraction produced {y.space!r}, expected {target!r}")
        for k, e in y.terms.items():
            acc[k] = acc.get(k, 0) + c * e
    return Element(target, acc)


def legwise(x: Element, y: Element, ops: Sequence[Callable[[object, object], Mapping]],
            target: Space) -> Element:
    """Bilinear leg-by-leg combination: leg ``l`` of the result is ``ops[l](x_l, y_l)``."""
    acc: dict = {}
    for kx, cx in x.items():
        for ky, cy in y.items():
            partial: dict = {(): cx * cy}
            for op, a, b in zip(ops, kx, ky):
                d = op(a, b)
                if not d:
                    partial = {}
                    break
                partial = {key + (k,): c * e for key, c in partial.items() for k, e in d.items()}
            for key, c in partial.items():
                k = target.join(key)
                acc[k] = acc.get(k, 0) + c
    return Element(target, acc)


def multiply(x: Element, y: Element) -> Element:
    """Product in the algebra both elements belong to."""
    if x.space != y.space:
        raise ValueError("algebra mismatch")
    return x * y


def tensor_algebra(A: BasedAlgebra, B: BasedAlgebra) -> BasedAlgebra:
    """Materialized ``A (x) B`` with basis pairs in lexicographic order."""
    if A.field != B.field:
        raise ValueError("field mismatch")
    labels = [f"{a}⊗{b}" for a in A.labels for b in B.labels]
    nb = B.dim

    def product(i, j):
        (a, b), (c, d) = divmod(i, nb), divmod(j, nb)
        return {p * nb + q: x * y for p, x in A.mul_basis(a, c).items()
                for q, y in B.mul_basis(b, d).items()}

    unit = [x * y for x in A.unit_coords for y in B.unit_coords]
    return BasedAlgebra.from_product(labels, product, unit, A.field,
                                     name=f"{A.name or 'A'}⊗{B.name or 'B'}")


def invert_element(x: Element) -> Element:
    """Two-sided inverse; raises :class:`NotInvertible`."""
    space = x.space
    if not space.is_algebra:
        raise TypeError("inversion needs an algebra")
    one = space.one()
    # solve y x = 1 through the right-multiplication matrix
    cols = [(space.basis(space.key(j)) * x).coords for j in range(space.dim)]
    R = LinearMap.from_columns(cols, space.field, space.dim)
    try:
        y = space.element(solve_linear(R, one.coords))
    except NoSolution:
        raise NotInvertible("element has no left inverse") from None
    if x * y != one:
        raise NotInvertible("left inverse is not a right inverse")
    return y


def verify_associative_unital(A: BasedAlgebra) -> VerificationReport:
    report = VerificationReport()
    report.declare("assoc")
    report.declare("unit")
    n = A.dim
    basis = [A.basis(i) for i in range(n)]
    prods = [[basis[i] * basis[j] for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(n):
            ij = prods[i][j]
            for k in range(n):
                report.expect("assoc", (i, j, k), ij * basis[k], basis[i] * prods[j][k])
    one = A.one()
    for i in range(n):
        report.expect("unit", (i, "left"), one * basis[i], basis[i])
        report.expect("unit", (i, "right"), basis[i] * one, basis[i])
    return report


def check_algebra_morphism(f: LinearMap, A: BasedAlgebra, B: Space) -> VerificationReport:
    """``f(xy) = f(x) f(y)`` on basis pairs and ``f(1) = 1``; ``B`` may be a tensor product."""
    if f.src_dim != A.dim or f.dst_dim != B.dim:
        raise ValueError(f"map of shape {f.shape} does not fit {A.dim} -> {B.dim}")
    report = VerificationReport()
    images = [apply_map(f, A.basis(i), B) for i in range(A.dim)]
    for i in range(A.dim):
        for j in range(A.dim):
            lhs = apply_map(f, A.basis(i) * A.basis(j), B)
            report.expect("morph-mult", (i, j), lhs, images[i] * images[j])
    report.expect("morph-unit", (), apply_map(f, A.one(), B), B.one())
    return report
