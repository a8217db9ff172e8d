"""Exact linear algebra over prime fields GF(p).

Vectors are plain tuples of residues in ``[0, p)``.  A subspace is always
held in reduced row-echelon form, so two equal subspaces compare equal
structurally and can be used as dict keys.  Everything is immutable and
pure; sizes are desk scale (ambient dimension up to a few dozen).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

from .errors import InputShapeError, UnsupportedFieldError

MAX_PRIME = 251

Vec = tuple[int, ...]


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class GF:
    """A prime field GF(p), 2 <= p <= 251."""

    p: int

    def __post_init__(self) -> None:
        if not isinstance(self.p, int) or not _is_prime(self.p) or self.p > MAX_PRIME:
            raise UnsupportedFieldError(
                f"field order must be a prime in [2, {MAX_PRIME}], got {self.p!r}"
            )

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError("no inverse of 0 in GF(p)")
        return pow(a, self.p - 2, self.p)


def weight(v: Sequence[int]) -> int:
    """Hamming weight: number of nonzero entries."""
    return sum(1 for x in v if x)


def vec_add(u: Vec, v: Vec, p: int) -> Vec:
    return tuple((a + b) % p for a, b in zip(u, v))


def vec_scale(v: Vec, c: int, p: int) -> Vec:
    return tuple((c * a) % p for a in v)


def _rref(rows: list[list[int]], p: int) -> tuple[tuple[Vec, ...], tuple[int, ...]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    mat = [list(r) for r in rows]
    if not mat:
        return (), ()
    ncols = len(mat[0])
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        pr = next((i for i in range(r, len(mat)) if mat[i][col]), None)
        if pr is None:
            continue
        mat[r], mat[pr] = mat[pr], mat[r]
        inv = pow(mat[r][col], p - 2, p)
        mat[r] = [(inv * x) % p for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][col]:
                c = mat[i][col]
                mat[i] = [(a - c * b) % p for a, b in zip(mat[i], mat[r])]
        pivots.append(col)
        r += 1
        if r == len(mat):
            break
    return tuple(tuple(row) for row in mat[:r]), tuple(pivots)


def _iter_span(basis: Sequence[Vec], p: int, n: int) -> Iterator[Vec]:
    """All q^k vectors spanned by ``basis`` (zero included), each exactly once."""
    if not basis:
        yield (0,) * n
        return
    head = basis[0]
    multiples = [vec_scale(head, c, p) for c in range(p)]
    for rest in _iter_span(basis[1:], p, n):
        for m in multiples:
            yield vec_add(rest, m, p)


@dataclass(frozen=True)
class Subspace:
    """A linear code C <= GF(p)^n in canonical RREF basis form.

    Equality is structural: two Subspace values represent the same space
    iff they are equal.  Construct through :meth:`span` (arbitrary rows)
    or the :meth:`zero` / :meth:`full` helpers.
    """

    field: GF
    ambient_dim: int
    basis: tuple[Vec, ...]

    def __post_init__(self) -> None:
        p = self.field.p
        last_pivot = -1
        for row in self.basis:
            if len(row) != self.ambient_dim:
                raise InputShapeError("basis row length differs from ambient dimension")
            piv = next((j for j, x in enumerate(row) if x), None)
            if piv is None or row[piv] != 1 or piv <= last_pivot:
                raise InputShapeError("basis is not in reduced row-echelon form")
            if any(not (0 <= x < p) for x in row):
                raise InputShapeError(f"basis entries must be residues in [0, {p})")
            last_pivot = piv
        for j in self.pivot_cols:
            if sum(1 for row in self.basis if row[j]) != 1:
                raise InputShapeError("pivot column has a second nonzero entry")

    @classmethod
    def span(cls, field: GF, ambient_dim: int, rows: Sequence[Sequence[int]]) -> "Subspace":
        """Row space of ``rows`` in canonical form; rows may be dependent or empty."""
        if ambient_dim < 0:
            raise InputShapeError("ambient dimension must be >= 0")
        clean: list[list[int]] = []
        for row in rows:
            row = list(row)
            if len(row) != ambient_dim:
                raise InputShapeError(
                    f"row length {len(row)} differs from ambient dimension {ambient_dim}"
                )
            if any(not isinstance(x, int) or not (0 <= x < field.p) for x in row):
                raise InputShapeError(f"entries must be integer residues in [0, {field.p})")
            clean.append(row)
        basis, _ = _rref(clean, field.p)
        return cls(field, ambient_dim, basis)

    @classmethod
    def zero(cls, field: GF, ambient_dim: int) -> "Subspace":
        return cls(field, ambient_dim, ())

    @classmethod
    def full(cls, field: GF, ambient_dim: int) -> "Subspace":
        rows = tuple(
            tuple(1 if j == i else 0 for j in range(ambient_dim)) for i in range(ambient_dim)
        )
        return cls(field, ambient_dim, rows)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def pivot_cols(self) -> tuple[int, ...]:
        return tuple(next(j for j, x in enumerate(row) if x) for row in self.basis)

    def reduce(self, v: Sequence[int]) -> Vec:
        """Residual of v after elimination against the basis; zero iff v is a member."""
        if len(v) != self.ambient_dim:
            raise InputShapeError("vector length differs from ambient dimension")
        p = self.field.p
        out = [x % p for x in v]
        for row, j in zip(self.basis, self.pivot_cols):
            c = out[j]
            if c:
                out = [(a - c * b) % p for a, b in zip(out, row)]
        return tuple(out)

    def contains(self, v: Sequence[int]) -> bool:
        return not any(self.reduce(v))

    def contains_space(self, other: "Subspace") -> bool:
        if other.ambient_dim != self.ambient_dim or other.field != self.field:
            raise InputShapeError("subspaces live in different ambient spaces")
        return all(self.contains(row) for row in other.basis)

    def vectors(self) -> Iterator[Vec]:
        """All q^dim member vectors, zero included."""
        return _iter_span(self.basis, self.field.p, self.ambient_dim)

    def dual(self) -> "Subspace":
        """Dual code under the standard inner product sum(v_i * c_i) mod p."""
        p = self.field.p
        pivots = set(self.pivot_cols)
        rows: list[list[int]] = []
        for f in range(self.ambient_dim):
            if f in pivots:
                continue
            x = [0] * self.ambient_dim
            x[f] = 1
            for row, j in zip(self.basis, self.pivot_cols):
                x[j] = (-row[f]) % p
            rows.append(x)
        return Subspace.span(self.field, self.ambient_dim, rows)

    def symplectic_dual(self) -> "Subspace":
        """Dual under <(a|b),(c|d)> = a.d - b.c on GF(p)^{2n}."""
        if self.ambient_dim % 2:
            raise InputShapeError("symplectic dual needs an even ambient dimension")
        n = self.ambient_dim // 2
        p = self.field.p
        # <v, w> = 0 for v = (a|b) is the standard-product condition (-b|a).w = 0.
        twisted = [
            tuple((-x) % p for x in row[n:]) + row[:n] for row in self.basis
        ]
        return Subspace.span(self.field, self.ambient_dim, twisted).dual()
