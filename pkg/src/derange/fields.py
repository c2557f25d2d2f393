"""Finite fields GF(p^f) via lookup tables, and dense matrices over them.

Elements are the integers ``0..q-1``; the base-``p`` digits of an element
(least significant first) are its coefficients in the polynomial basis
``1, x, ..., x^(f-1)`` modulo the defining polynomial.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np

from .errors import InvalidInput
from .numtheory import is_prime


def _digits(a: int, p: int, f: int) -> list[int]:
    out = []
    for _ in range(f):
        out.append(a % p)
        a //= p
    return out


def _undigits(c, p: int) -> int:
    a = 0
    for x in reversed(list(c)):
        a = a * p + int(x)
    return a


def _polymulmod(a, b, modulus, p):
    f = len(modulus) - 1
    prod = [0] * (2 * f - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    # modulus is monic, coefficients low to high
    for k in range(len(prod) - 1, f - 1, -1):
        c = prod[k]
        if c:
            for i in range(f + 1):
                prod[k - f + i] = (prod[k - f + i] - c * modulus[i]) % p
    return prod[:f]


def _is_irreducible(modulus, p) -> bool:
    """A monic polynomial of degree f is irreducible iff the quotient ring has no zero divisors."""
    f = len(modulus) - 1
    if f == 1:
        return True
    q = p**f
    for a in range(1, q):
        da = _digits(a, p, f)
        for b in range(a, q):
            if not any(_polymulmod(da, _digits(b, p, f), modulus, p)):
                return False
    return True


def smallest_irreducible(p: int, f: int) -> tuple[int, ...]:
    """Lexicographically least monic irreducible of degree ``f``, coefficients low to high."""
    if f == 1:
        return (0, 1)
    for tail in itertools.product(range(p), repeat=f):
        coeffs = tuple(reversed(tail)) + (1,)
        if coeffs[0] == 0:
            continue
        if _is_irreducible(coeffs, p):
            return coeffs
    raise AssertionError("no irreducible polynomial found")


class GF:
    """The field with ``p**f`` elements, with full add/mul tables."""

    def __init__(self, p: int, f: int = 1, modulus=None):
        if not is_prime(p):
            raise InvalidInput(f"{p} is not prime")
        if f < 1:
            raise InvalidInput("extension degree must be positive")
        self.p, self.f, self.q = p, f, p**f
        modulus = tuple(modulus) if modulus is not None else smallest_irreducible(p, f)
        if len(modulus) != f + 1 or modulus[-1] != 1 or not _is_irreducible(modulus, p):
            raise InvalidInput(f"{modulus} is not a monic irreducible of degree {f}")
        self.modulus = modulus
        q = self.q
        digits = [_digits(a, p, f) for a in range(q)]
        add = np.empty((q, q), dtype=np.int64)
        mul = np.empty((q, q), dtype=np.int64)
        for a in range(q):
            for b in range(q):
                add[a, b] = _undigits([(x + y) % p for x, y in zip(digits[a], digits[b])], p)
                mul[a, b] = _undigits(_polymulmod(digits[a], digits[b], modulus, p), p)
        self.add, self.mul = add, mul
        self.neg = np.array([_undigits([(-x) % p for x in digits[a]], p) for a in range(q)], dtype=np.int64)
        inv = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            inv[a] = int(np.flatnonzero(mul[a] == 1)[0])
        self.inv = inv
        self.sub = add[:, self.neg]  # sub[a, b] = a - b
        self.prime_subfield = [_undigits([c] + [0] * (f - 1), p) for c in range(p)]

    def __repr__(self):
        return f"GF({self.p}^{self.f}, modulus={self.modulus})"

    def element_order(self, a: int) -> int:
        if a == 0:
            raise InvalidInput("zero has no multiplicative order")
        k, x = 1, a
        while x != 1:
            x = int(self.mul[x, a])
            k += 1
        return k

    def primitive_element(self) -> int:
        return next(a for a in range(1, self.q) if self.element_order(a) == self.q - 1)

    def embed(self, a: int) -> np.ndarray:
        """``f x f`` matrix over GF(p) of multiplication by ``a`` on row coordinate vectors."""
        f, p = self.f, self.p
        rows = []
        for k in range(f):
            xk = _undigits([1 if i == k else 0 for i in range(f)], p)
            rows.append(_digits(int(self.mul[xk, a]), p, f))
        return np.array(rows, dtype=np.int64)

    def frobenius_matrix(self) -> np.ndarray:
        """Matrix over GF(p) of ``a -> a^p`` in the polynomial basis."""
        rows = []
        for k in range(self.f):
            xk = _undigits([1 if i == k else 0 for i in range(self.f)], self.p)
            y = 1
            for _ in range(self.p):
                y = int(self.mul[y, xk])
            rows.append(_digits(y, self.p, self.f))
        return np.array(rows, dtype=np.int64)


@lru_cache(maxsize=None)
def field(p: int, f: int = 1) -> GF:
    return GF(p, f)


# matrices over GF(q) as integer arrays -----------------------------------------


def mat_mul(F: GF, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if F.f == 1:
        return (a @ b) % F.p
    # products for every (i, k, j), then field-sum along k
    prods = F.mul[a[:, :, None], b[None, :, :]]
    out = prods[:, 0, :]
    for k in range(1, a.shape[1]):
        out = F.add[out, prods[:, k, :]]
    return out


def identity(F: GF, n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def rref(F: GF, m: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns."""
    a = np.array(m, dtype=np.int64, copy=True)
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        a[r] = F.mul[F.inv[a[r, c]], a[r]]
        for i in range(rows):
            if i != r and a[i, c]:
                a[i] = F.sub[a[i], F.mul[a[i, c], a[r]]]
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank(F: GF, m: np.ndarray) -> int:
    return len(rref(F, m)[1])


def left_kernel(F: GF, m: np.ndarray) -> np.ndarray:
    """Basis (rows, reduced echelon) of ``{v : v m = 0}``."""
    m = np.asarray(m, dtype=np.int64)
    n = m.shape[0]
    return right_kernel(F, m.T) if n else np.zeros((0, 0), dtype=np.int64)


def right_kernel(F: GF, m: np.ndarray) -> np.ndarray:
    """Basis (rows, reduced echelon) of ``{x : m x = 0}``."""
    m = np.asarray(m, dtype=np.int64)
    cols = m.shape[1]
    red, pivots = rref(F, m) if m.shape[0] else (np.zeros((0, cols), dtype=np.int64), [])
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = np.zeros(cols, dtype=np.int64)
        v[fc] = 1
        for r, pc in enumerate(pivots):
            v[pc] = F.neg[red[r, fc]]
        basis.append(v)
    if not basis:
        return np.zeros((0, cols), dtype=np.int64)
    return rref(F, np.array(basis))[0]


def det(F: GF, m: np.ndarray) -> int:
    a = np.array(m, dtype=np.int64, copy=True)
    n = a.shape[0]
    d = 1
    for c in range(n):
        nz = np.flatnonzero(a[c:, c])
        if nz.size == 0:
            return 0
        k = c + int(nz[0])
        if k != c:
            a[[c, k]] = a[[k, c]]
            d = int(F.neg[d])
        d = int(F.mul[d, a[c, c]])
        inv = F.inv[a[c, c]]
        for i in range(c + 1, n):
            if a[i, c]:
                a[i] = F.sub[a[i], F.mul[F.mul[a[i, c], inv], a[c]]]
    return d


def inverse(F: GF, m: np.ndarray) -> np.ndarray:
    m = np.asarray(m, dtype=np.int64)
    n = m.shape[0]
    red, pivots = rref(F, np.hstack([m, identity(F, n)]))
    if pivots[:n] != list(range(n)):
        raise InvalidInput("matrix is singular")
    return red[:, n:]


def embed_matrix(F: GF, m: np.ndarray) -> np.ndarray:
    """Block matrix over GF(p) realising an ``n x n`` matrix over GF(p^f) on ``F_p^(n f)``."""
    m = np.asarray(m, dtype=np.int64)
    n, f = m.shape[0], F.f
    out = np.zeros((n * f, n * f), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            out[i * f:(i + 1) * f, j * f:(j + 1) * f] = F.embed(int(m[i, j]))
    return out


def gl_order(n: int, q: int) -> int:
    out = 1
    for i in range(n):
        out *= q**n - q**i
    return out
