"""Dense linear algebra over a prime field F_p, with vectors as permutation points.

Vectors are rows and matrices act on the right: ``v -> v M``.  The vector
``(v_0, ..., v_{d-1})`` is the point ``v_0 + v_1 p + ... + v_{d-1} p^(d-1)``
(little-endian mixed radix), so the zero vector is point 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import fields
from .errors import InvalidInput
from .numtheory import is_prime
from .perm import Permutation


def _check_prime(p: int):
    if not is_prime(p):
        raise InvalidInput(f"{p} is not prime")


@dataclass(frozen=True)
class MatrixFp:
    p: int
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        _check_prime(self.p)
        d = len(self.rows)
        if any(len(r) != d for r in self.rows):
            raise InvalidInput("matrix must be square")
        object.__setattr__(self, "rows", tuple(tuple(int(x) % self.p for x in r) for r in self.rows))

    @classmethod
    def from_array(cls, p: int, a) -> MatrixFp:
        return cls(p, tuple(tuple(int(x) for x in r) for r in np.asarray(a)))

    @classmethod
    def identity(cls, p: int, d: int) -> MatrixFp:
        return cls.from_array(p, np.eye(d, dtype=np.int64))

    @property
    def d(self) -> int:
        return len(self.rows)

    @property
    def array(self) -> np.ndarray:
        return np.array(self.rows, dtype=np.int64).reshape(self.d, self.d)

    @property
    def field(self) -> fields.GF:
        return fields.field(self.p)

    def _same(self, other: MatrixFp):
        if self.p != other.p or self.d != other.d:
            raise InvalidInput("matrices over different fields or dimensions")

    def __matmul__(self, other: MatrixFp) -> MatrixFp:
        self._same(other)
        return MatrixFp.from_array(self.p, (self.array @ other.array) % self.p)

    __mul__ = __matmul__

    def __add__(self, other: MatrixFp) -> MatrixFp:
        self._same(other)
        return MatrixFp.from_array(self.p, (self.array + other.array) % self.p)

    def __sub__(self, other: MatrixFp) -> MatrixFp:
        self._same(other)
        return MatrixFp.from_array(self.p, (self.array - other.array) % self.p)

    def __pow__(self, k: int) -> MatrixFp:
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = MatrixFp.identity(self.p, self.d)
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def det(self) -> int:
        return fields.det(self.field, self.array)

    def is_invertible(self) -> bool:
        return self.det() != 0

    def inverse(self) -> MatrixFp:
        return MatrixFp.from_array(self.p, fields.inverse(self.field, self.array))

    def shifted(self) -> MatrixFp:
        """``M - I``."""
        return self - MatrixFp.identity(self.p, self.d)

    def transpose(self) -> MatrixFp:
        return MatrixFp.from_array(self.p, self.array.T)

    def is_identity(self) -> bool:
        return self == MatrixFp.identity(self.p, self.d)

    def order(self, cap: int = 10**6) -> int:
        if not self.is_invertible():
            raise InvalidInput("singular matrix has no multiplicative order")
        x, k = self, 1
        while not x.is_identity():
            x = x @ self
            k += 1
            if k > cap:
                raise InvalidInput("matrix order exceeds cap")
        return k

    def act(self, v) -> tuple[int, ...]:
        return tuple(int(x) for x in (np.asarray(v, dtype=np.int64) @ self.array) % self.p)

    def permutation(self) -> Permutation:
        """The permutation of ``F_p^d`` (point encoding above) induced by ``v -> v M``."""
        if not self.is_invertible():
            raise InvalidInput("singular matrix does not permute vectors")
        vecs = all_vectors(self.p, self.d)
        return Permutation._trusted(tuple(encode_rows((vecs @ self.array) % self.p, self.p).tolist()))

    def __str__(self):
        return "\n".join(" ".join(str(x) for x in r) for r in self.rows)


@dataclass(frozen=True)
class SubspaceFp:
    """A subspace of ``F_p^d`` with its basis in reduced row echelon form."""

    p: int
    d: int
    basis: tuple[tuple[int, ...], ...]

    @classmethod
    def span(cls, p: int, d: int, vectors) -> SubspaceFp:
        vecs = np.asarray(list(vectors), dtype=np.int64).reshape(-1, d) % p
        if vecs.shape[0] == 0:
            return cls(p, d, ())
        red, _ = fields.rref(fields.field(p), vecs)
        return cls(p, d, tuple(tuple(int(x) for x in r) for r in red))

    @classmethod
    def whole(cls, p: int, d: int) -> SubspaceFp:
        return cls.span(p, d, np.eye(d, dtype=np.int64))

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def __len__(self):
        return self.dimension

    def contains(self, v) -> bool:
        v = tuple(int(x) % self.p for x in v)
        if len(v) != self.d:
            raise InvalidInput("vector length does not match the ambient dimension")
        return SubspaceFp.span(self.p, self.d, list(self.basis) + [v]).dimension == self.dimension

    __contains__ = contains

    def is_invariant(self, m: MatrixFp) -> bool:
        return all(self.contains(m.act(b)) for b in self.basis)


def mat_rank_image_kernel(m: MatrixFp, shift: bool = False) -> tuple[int, SubspaceFp, SubspaceFp]:
    """Rank, image and kernel of ``v -> v m`` (or of ``v -> v (m - 1)`` when ``shift``)."""
    if shift:
        m = m.shifted()
    F = m.field
    img = SubspaceFp.span(m.p, m.d, m.array)
    ker_rows = fields.left_kernel(F, m.array)
    ker = SubspaceFp(m.p, m.d, tuple(tuple(int(x) for x in r) for r in ker_rows))
    assert img.dimension + ker.dimension == m.d
    return img.dimension, img, ker


# vector <-> point encoding --------------------------------------------------------


def encode(v, p: int) -> int:
    k = 0
    for x in reversed(tuple(v)):
        k = k * p + int(x) % p
    return k


def decode(k: int, p: int, d: int) -> tuple[int, ...]:
    out = []
    for _ in range(d):
        out.append(k % p)
        k //= p
    if k:
        raise InvalidInput("point out of range for F_p^d")
    return tuple(out)


@lru_cache(maxsize=64)
def _all_vectors(p: int, d: int) -> np.ndarray:
    n = p**d
    k = np.arange(n, dtype=np.int64)
    out = np.empty((n, d), dtype=np.int64)
    for i in range(d):
        out[:, i] = k % p
        k //= p
    out.setflags(write=False)
    return out


def all_vectors(p: int, d: int) -> np.ndarray:
    """Row ``k`` is the vector encoded by point ``k``."""
    return _all_vectors(p, d)


def encode_rows(vecs: np.ndarray, p: int) -> np.ndarray:
    d = vecs.shape[1]
    weights = p ** np.arange(d, dtype=np.int64)
    return vecs @ weights


def translation_permutation(u, p: int) -> Permutation:
    u = np.asarray(u, dtype=np.int64)
    vecs = all_vectors(p, len(u))
    return Permutation._trusted(tuple(encode_rows((vecs + u) % p, p).tolist()))


@dataclass(frozen=True)
class AffineMap:
    """The map ``w -> (w + translation) linear``."""

    translation: tuple[int, ...]
    linear: MatrixFp

    def __post_init__(self):
        t = tuple(int(x) % self.linear.p for x in self.translation)
        if len(t) != self.linear.d:
            raise InvalidInput("translation length does not match the matrix")
        if not self.linear.is_invertible():
            raise InvalidInput("affine map needs an invertible linear part")
        object.__setattr__(self, "translation", t)

    @property
    def p(self) -> int:
        return self.linear.p

    @property
    def d(self) -> int:
        return self.linear.d

    def apply(self, w) -> tuple[int, ...]:
        w = np.asarray(w, dtype=np.int64) + np.asarray(self.translation, dtype=np.int64)
        return self.linear.act(w)

    def __mul__(self, other: AffineMap) -> AffineMap:
        """Apply ``self`` first, then ``other``."""
        shift = self.linear.inverse().act(other.translation)
        u = tuple(a + b for a, b in zip(self.translation, shift))
        return AffineMap(u, self.linear @ other.linear)

    def inverse(self) -> AffineMap:
        u = self.linear.act(self.translation)
        return AffineMap(tuple(-x for x in u), self.linear.inverse())

    def permutation(self) -> Permutation:
        vecs = all_vectors(self.p, self.d)
        out = ((vecs + np.asarray(self.translation)) @ self.linear.array) % self.p
        return Permutation._trusted(tuple(encode_rows(out, self.p).tolist()))

    def fixed_vectors(self) -> list[tuple[int, ...]]:
        perm = self.permutation()
        return [decode(k, self.p, self.d) for k in perm.fixed_points()]
