"""Finite fields GF(p^h) with Conway-polynomial moduli and log/antilog tables.

Elements are plain integers in ``[0, q)``: the residue polynomial
``d_0 + d_1 x + ... + d_{h-1} x^{h-1}`` is stored as ``sum(d_i * p**i)``.
Every file format and every array in the package uses this encoding.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Sequence

import numpy as np

from .errors import FieldMismatch

MAX_ORDER = 2**20
_ADD_TABLE_MAX = 1024


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of ``n`` in increasing order."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, h)`` with ``q == p**h``, or None if ``q`` is not a prime power."""
    if q < 2:
        return None
    fs = prime_factors(q)
    if len(fs) != 1:
        return None
    p, h = fs[0], 0
    while q > 1:
        q //= p
        h += 1
    return p, h


# ---------- polynomials over GF(p), coefficient lists low -> high ----------

def _mulmod(a: Sequence[int], b: Sequence[int], f: Sequence[int], p: int) -> list[int]:
    n = len(f) - 1
    prod = [0] * (2 * n - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] += ai * bj
    for d in range(2 * n - 2, n - 1, -1):
        c = prod[d] % p
        if c:
            base = d - n
            for i in range(n):
                prod[base + i] -= c * f[i]
    return [x % p for x in prod[:n]]


def _powmod(base: Sequence[int], e: int, f: Sequence[int], p: int) -> list[int]:
    n = len(f) - 1
    result = [1] + [0] * (n - 1)
    b = list(base)
    while e:
        if e & 1:
            result = _mulmod(result, b, f, p)
        e >>= 1
        if e:
            b = _mulmod(b, b, f, p)
    return result


def _x_mod(f: Sequence[int], p: int) -> list[int]:
    n = len(f) - 1
    if n == 1:
        return [(-f[0]) % p]
    return [0, 1] + [0] * (n - 2)


def _polyrem(a: list[int], b: Sequence[int], p: int) -> list[int]:
    a = [x % p for x in a]
    db = len(b) - 1
    inv_lead = pow(b[-1], p - 2, p)
    for d in range(len(a) - 1, db - 1, -1):
        c = a[d] * inv_lead % p
        if c:
            for i in range(db + 1):
                a[d - db + i] = (a[d - db + i] - c * b[i]) % p
    return a[:db]


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Irreducibility over GF(p) by trial division by every monic polynomial of degree <= deg/2."""
    n = len(f) - 1
    if n < 1 or f[-1] % p != 1:
        raise ValueError("expected a monic polynomial of positive degree")
    if n == 1:
        return True
    if f[0] % p == 0:
        return False
    for d in range(1, n // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            g = list(tail) + [1]
            if not any(_polyrem(list(f), g, p)):
                return False
    return True


def is_primitive(f: Sequence[int], p: int) -> bool:
    """True when x has multiplicative order p^n - 1 modulo ``f`` (which forces irreducibility)."""
    n = len(f) - 1
    if f[0] % p == 0:
        return False
    order = p**n - 1
    x = _x_mod(f, p)
    one = [1] + [0] * (n - 1)
    if _powmod(x, order, f, p) != one:
        return False
    return all(_powmod(x, order // r, f, p) != one for r in prime_factors(order))


def _compatible(f: Sequence[int], p: int, n: int) -> bool:
    x = _x_mod(f, p)
    for m in range(1, n):
        if n % m:
            continue
        g = conway_polynomial(p, m)
        y = _powmod(x, (p**n - 1) // (p**m - 1), f, p)
        acc = [0] * n
        for coef in reversed(g):
            acc = _mulmod(acc, y, f, p)
            acc[0] = (acc[0] + coef) % p
        if any(acc):
            return False
    return True


@lru_cache(maxsize=None)
def conway_polynomial(p: int, n: int) -> tuple[int, ...]:
    """Conway polynomial C_{p,n} as a coefficient tuple, constant term first.

    Candidates ``x^n - a_{n-1} x^{n-1} + a_{n-2} x^{n-2} - ...`` are visited in
    lexicographic order of ``(a_{n-1}, ..., a_0)``; the first primitive one that is
    compatible with every C_{p,m}, m | n, is returned.
    """
    if not is_prime(p) or n < 1:
        raise ValueError(f"bad Conway parameters ({p}, {n})")
    for t in itertools.product(range(p), repeat=n):
        coeffs = [0] * n + [1]
        for i, a in enumerate(t):
            j = n - 1 - i
            coeffs[j] = a % p if (n - j) % 2 == 0 else (-a) % p
        if coeffs[0] == 0:
            continue
        if is_primitive(coeffs, p) and _compatible(coeffs, p, n):
            return tuple(coeffs)
    raise AssertionError("no Conway polynomial found")  # pragma: no cover


# ---------- field contexts ----------

@dataclass(frozen=True, eq=False)
class FieldCtx:
    """GF(p^h) with fixed modulus and primitive element ``alpha`` (the class of x)."""

    p: int
    h: int
    modulus: tuple[int, ...]
    exp: np.ndarray = field(repr=False)
    log: np.ndarray = field(repr=False)

    @property
    def q(self) -> int:
        return self.p**self.h

    @property
    def alpha(self) -> int:
        return int(self.exp[1 % (self.q - 1)])

    def __eq__(self, other):
        return isinstance(other, FieldCtx) and (self.p, self.h, self.modulus) == (other.p, other.h, other.modulus)

    def __hash__(self):
        return hash((self.p, self.h, self.modulus))

    def __str__(self):
        return f"GF({self.q})"

    # scalar arithmetic

    def digits(self, a: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.h):
            a, d = divmod(a, self.p)
            out.append(d)
        return tuple(out)

    def from_digits(self, ds: Sequence[int]) -> int:
        v = 0
        for d in reversed(ds):
            v = v * self.p + d % self.p
        return v

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.h == 1:
            return (a + b) % self.p
        return self.from_digits([x + y for x, y in zip(self.digits(a), self.digits(b))])

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        if self.h == 1:
            return (-a) % self.p
        return self.from_digits([-x for x in self.digits(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self.exp[(self.log[a] + self.log[b]) % (self.q - 1)])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in " + str(self))
        return int(self.exp[(-self.log[a]) % (self.q - 1)])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return 1 if e == 0 else 0
        return int(self.exp[(self.log[a] * e) % (self.q - 1)])

    # vectorized arithmetic on integer arrays

    @cached_property
    def _add_table(self) -> np.ndarray | None:
        if self.p == 2 or self.h == 1 or self.q > _ADD_TABLE_MAX:
            return None
        dig = self._digit_array(np.arange(self.q))
        s = (dig[:, None, :] + dig[None, :, :]) % self.p
        return (s * (self.p ** np.arange(self.h))).sum(axis=2)

    @cached_property
    def _neg_table(self) -> np.ndarray:
        return np.array([self.neg(a) for a in range(self.q)], dtype=np.int64)

    def _digit_array(self, a: np.ndarray) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        out = np.empty(a.shape + (self.h,), dtype=np.int64)
        for i in range(self.h):
            a, out[..., i] = np.divmod(a, self.p)
        return out

    def vadd(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.p == 2:
            return a ^ b
        if self.h == 1:
            return (a + b) % self.p
        table = self._add_table
        if table is not None:
            return table[a, b]
        s = (self._digit_array(a) + self._digit_array(b)) % self.p
        return (s * (self.p ** np.arange(self.h))).sum(axis=-1)

    def vneg(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if self.p == 2:
            return a.copy()
        if self.h == 1:
            return (-a) % self.p
        return self._neg_table[a]

    def vsub(self, a, b) -> np.ndarray:
        return self.vadd(a, self.vneg(b))

    def vmul(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.h == 1:
            return (a * b) % self.p
        idx = (self.log[a] + self.log[b]) % (self.q - 1)
        return np.where((a == 0) | (b == 0), 0, self.exp[idx])

    def vinv(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero in " + str(self))
        return self.exp[(-self.log[a]) % (self.q - 1)]

    def matmul(self, a, b) -> np.ndarray:
        """Matrix product over the field for 2-D integer arrays."""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if a.shape[1] != b.shape[0]:
            raise ValueError(f"shape mismatch {a.shape} x {b.shape}")
        if self.h == 1 and self.p < 2**20:
            return (a @ b) % self.p
        out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
        for i in range(a.shape[1]):
            out = self.vadd(out, self.vmul(a[:, i : i + 1], b[i : i + 1, :]))
        return out

    def dot(self, u, v) -> int:
        return int(self.matmul(np.asarray(u).reshape(1, -1), np.asarray(v).reshape(-1, 1))[0, 0])

    def normalize(self, v) -> np.ndarray:
        """Scale a nonzero vector (or each row of a matrix) so its first nonzero entry is 1."""
        v = np.asarray(v, dtype=np.int64)
        flat = v.reshape(1, -1) if v.ndim == 1 else v
        nz = flat != 0
        if not nz.any(axis=1).all():
            raise ValueError("cannot normalize the zero vector")
        lead = flat[np.arange(flat.shape[0]), nz.argmax(axis=1)]
        out = self.vmul(flat, self.vinv(lead)[:, None])
        return out.reshape(v.shape)


def _build_tables(p: int, h: int, modulus: Sequence[int]) -> tuple[np.ndarray, np.ndarray]:
    q = p**h
    exp = np.zeros(q - 1, dtype=np.int64)
    log = np.full(q, -1, dtype=np.int64)
    if h == 1:
        g = (-modulus[0]) % p
        v = 1
        for j in range(q - 1):
            exp[j] = v
            v = v * g % p
    else:
        ds = [1] + [0] * (h - 1)
        weights = [p**i for i in range(h)]
        for j in range(q - 1):
            exp[j] = sum(d * w for d, w in zip(ds, weights))
            top = ds[-1]
            ds = [0] + ds[:-1]
            if top:
                ds = [(d - top * m) % p for d, m in zip(ds, modulus)]
    log[exp] = np.arange(q - 1)
    if (log[1:] < 0).any():
        raise ValueError("modulus is not primitive")
    return exp, log


@lru_cache(maxsize=None)
def make_field(p: int, h: int = 1) -> FieldCtx:
    """GF(p^h) with the Conway polynomial C_{p,h} as modulus."""
    if not is_prime(p):
        raise ValueError(f"characteristic {p} is not prime")
    if h < 1:
        raise ValueError("extension degree must be at least 1")
    if p**h > MAX_ORDER:
        raise ValueError(f"field order {p}^{h} exceeds the cap {MAX_ORDER}")
    modulus = conway_polynomial(p, h)
    exp, log = _build_tables(p, h, modulus)
    return FieldCtx(p, h, modulus, exp, log)


def gf(q: int) -> FieldCtx:
    """Field of order ``q`` (a prime power)."""
    ph = prime_power(q)
    if ph is None:
        raise ValueError(f"{q} is not a prime power")
    return make_field(*ph)


# ---------- GF(q^k) as a GF(q)-vector space ----------

def embed(big: FieldCtx, small: FieldCtx, a):
    """Image of ``a`` (scalar or array) under the Conway embedding GF(small) -> GF(big)."""
    _check_pair(big, small)
    a = np.asarray(a, dtype=np.int64)
    step = (big.q - 1) // (small.q - 1)
    out = np.where(a == 0, 0, big.exp[(np.maximum(small.log[a], 0) * step) % (big.q - 1)])
    return int(out) if out.ndim == 0 else out


def _check_pair(big: FieldCtx, small: FieldCtx) -> None:
    if big.p != small.p or big.h % small.h:
        raise FieldMismatch(f"{big} is not an extension of {small}")


@lru_cache(maxsize=64)
def expansion_table(big: FieldCtx, small: FieldCtx) -> np.ndarray:
    """``table[x]`` = coordinates of x in the basis 1, beta, ..., beta^{k-1}, beta = big.alpha."""
    _check_pair(big, small)
    k = big.h // small.h
    if big.q > 2**16 * max(1, small.q):
        raise ValueError("expansion table too large")
    powers = [big.pow(big.alpha, i) for i in range(k)]
    coeffs = np.array(list(itertools.product(range(small.q), repeat=k)), dtype=np.int64)[:, ::-1]
    values = np.zeros(len(coeffs), dtype=np.int64)
    for i in range(k):
        values = big.vadd(values, big.vmul(embed(big, small, coeffs[:, i]), powers[i]))
    table = np.full((big.q, k), -1, dtype=np.int64)
    table[values] = coeffs
    if (table < 0).any():  # pragma: no cover - basis is always independent
        raise AssertionError("powers of alpha do not form a basis")
    table.setflags(write=False)
    return table


def expand(big: FieldCtx, small: FieldCtx, x: int) -> tuple[int, ...]:
    """Coordinates of ``x`` in GF(big) as a vector over GF(small)."""
    return tuple(int(c) for c in expansion_table(big, small)[x])


def contract(big: FieldCtx, small: FieldCtx, coords: Sequence[int]) -> int:
    """Inverse of :func:`expand`."""
    k = big.h // small.h
    if len(coords) != k:
        raise ValueError(f"expected {k} coordinates")
    acc = 0
    for i, c in enumerate(coords):
        acc = big.add(acc, big.mul(embed(big, small, int(c)), big.pow(big.alpha, i)))
    return acc
