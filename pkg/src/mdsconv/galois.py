"""Finite fields GF(p^t) with table-driven arithmetic.

An element is a plain integer: the coefficient vector (c_0, ..., c_{t-1}) of its
polynomial-basis representation packed as sum(c_i * p**i).  Every arithmetic
method accepts ints or integer numpy arrays and works elementwise.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache, reduce

import numpy as np

from .errors import (
    CoefficientNotInBaseField,
    DivisionByZero,
    FieldMismatch,
    NonPrimeCharacteristic,
    NoSuchRoot,
    SizeLimitExceeded,
)

MAX_FIELD_SIZE = 1 << 20
_ADD_TABLE_LIMIT = 1024


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _digits(v: int, p: int, t: int) -> list[int]:
    out = []
    for _ in range(t):
        v, r = divmod(v, p)
        out.append(r)
    return out


def _polymulmod(a: list[int], b: list[int], f: list[int], p: int) -> list[int]:
    # a, b have length t; f is monic of length t + 1
    t = len(f) - 1
    prod = [0] * (2 * t - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    for d in range(len(prod) - 1, t - 1, -1):
        c = prod[d]
        if c:
            for j in range(t + 1):
                prod[d - t + j] = (prod[d - t + j] - c * f[j]) % p
    return prod[:t]


def _x_power(e: int, f: list[int], p: int) -> list[int]:
    t = len(f) - 1
    result = [1] + [0] * (t - 1)
    base = [0] * t
    if t == 1:
        base = [(-f[0]) % p]
    else:
        base[1] = 1
    while e:
        if e & 1:
            result = _polymulmod(result, base, f, p)
        base = _polymulmod(base, base, f, p)
        e >>= 1
    return result


def is_primitive_polynomial(f: list[int], p: int) -> bool:
    """True iff the monic f (ascending coefficients) has x of order exactly p^t - 1."""
    t = len(f) - 1
    if f[-1] != 1 or f[0] % p == 0:
        return False
    order = p**t - 1
    one = [1] + [0] * (t - 1)
    if _x_power(order, f, p) != one:
        return False
    return all(_x_power(order // r, f, p) != one for r in prime_factors(order))


def first_primitive_polynomial(p: int, t: int) -> tuple[int, ...]:
    """Lexicographically smallest primitive polynomial, ordered by its base-p integer value."""
    for low in range(1, p**t):
        f = _digits(low, p, t) + [1]
        if is_primitive_polynomial(f, p):
            return tuple(f)
    raise AssertionError("no primitive polynomial found")  # impossible for prime p


@dataclass(frozen=True, eq=False, repr=False)
class FieldSpec:
    """GF(p^t) defined by a primitive modulus (ascending coefficients, monic)."""

    p: int
    t: int
    modulus: tuple[int, ...]
    q: int = field(init=False)
    generator: int = field(init=False)

    def __post_init__(self):
        p, t = self.p, self.t
        q = p**t
        object.__setattr__(self, "q", q)
        n = q - 1
        # powers of x in integer encoding
        exp_x = np.zeros(n, dtype=np.int64)
        if t == 1:
            g0 = (-self.modulus[0]) % p
            v = 1
            for k in range(n):
                exp_x[k] = v
                v = (v * g0) % p
        elif p == 2:
            mod_int = sum(c << i for i, c in enumerate(self.modulus))
            v = 1
            for k in range(n):
                exp_x[k] = v
                v <<= 1
                if v & q:
                    v ^= mod_int
        else:
            f = list(self.modulus)
            coeffs = [1] + [0] * (t - 1)
            pw = [p**i for i in range(t)]
            for k in range(n):
                exp_x[k] = sum(c * w for c, w in zip(coeffs, pw))
                top = coeffs[-1]
                coeffs = [0] + coeffs[:-1]
                if top:
                    coeffs = [(c - top * fj) % p for c, fj in zip(coeffs, f[:t])]
        log_x = np.zeros(q, dtype=np.int64)
        log_x[exp_x] = np.arange(n)
        # canonical generator: smallest element whose x-logarithm is a unit mod q-1
        cand = np.arange(1, q)
        gens = cand[np.gcd(log_x[cand], n) == 1]
        g = int(gens[0])
        lg = int(log_x[g])
        exp = exp_x[(np.arange(n) * lg) % n]
        log = np.zeros(q, dtype=np.int64)
        log[exp] = np.arange(n)
        object.__setattr__(self, "generator", g)
        object.__setattr__(self, "_exp", np.concatenate([exp, exp]))
        object.__setattr__(self, "_log", log)
        digits = np.array([_digits(v, p, t) for v in range(q)], dtype=np.int64) if p != 2 else None
        object.__setattr__(self, "_digits", digits)
        if p == 2:
            neg = np.arange(q, dtype=np.int64)
        else:
            neg = (((-digits) % p) * (p ** np.arange(t))).sum(axis=1)
        object.__setattr__(self, "_neg", neg)
        add_table = None
        if p != 2 and q <= _ADD_TABLE_LIMIT:
            add_table = self._digit_add(np.arange(q)[:, None], np.arange(q)[None, :])
        object.__setattr__(self, "_add_table", add_table)

    # identity --------------------------------------------------------------
    def key(self):
        return (self.p, self.t, self.modulus)

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"GF({self.p}^{self.t})" if self.t > 1 else f"GF({self.p})"

    def to_dict(self) -> dict:
        return {"p": self.p, "t": self.t, "modulus": list(self.modulus)}

    # arithmetic ------------------------------------------------------------
    def _digit_add(self, a, b):
        p, t = self.p, self.t
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        w = 1
        for _ in range(t):
            out += ((a % p + b % p) % p) * w
            a = a // p
            b = b // p
            w *= p
        return out

    def add(self, a, b):
        if self.p == 2:
            return np.bitwise_xor(a, b) if isinstance(a, np.ndarray) or isinstance(b, np.ndarray) else a ^ b
        if self._add_table is not None:
            r = self._add_table[a, b]
        else:
            r = self._digit_add(a, b)
        return _out(r, a, b)

    def neg(self, a):
        if self.p == 2:
            return a
        return _out(self._neg[a], a)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if _is_scalar(a) and _is_scalar(b):
            if a == 0 or b == 0:
                return 0
            return int(self._exp[self._log[a] + self._log[b]])
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        r = self._exp[self._log[a] + self._log[b]]
        return np.where((a == 0) | (b == 0), 0, r)

    def inv(self, a):
        if _is_scalar(a):
            if a == 0:
                raise DivisionByZero("inverse of zero")
            return int(self._exp[(-self._log[a]) % (self.q - 1)])
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise DivisionByZero("inverse of zero")
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        if _is_scalar(a):
            if a == 0:
                if e < 0:
                    raise DivisionByZero("negative power of zero")
                return 1 if e == 0 else 0
            return int(self._exp[(self._log[a] * e) % (self.q - 1)])
        a = np.asarray(a, dtype=np.int64)
        if e < 0 and np.any(a == 0):
            raise DivisionByZero("negative power of zero")
        r = self._exp[(self._log[a] * e) % (self.q - 1)]
        if e == 0:
            return np.ones_like(a)
        return np.where(a == 0, 0, r)

    def exp(self, k):
        """g^k for the canonical generator g."""
        return _out(self._exp[np.asarray(k) % (self.q - 1)], k)

    def log(self, a):
        if np.any(np.asarray(a) == 0):
            raise DivisionByZero("logarithm of zero")
        return _out(self._log[a], a)

    def order(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("order of zero")
        lg = int(self._log[a])
        n = self.q - 1
        return n // np.gcd(lg, n)

    def sum(self, a, axis=None):
        a = np.asarray(a, dtype=np.int64)
        if axis is None:
            a = a.reshape(-1)
            axis = 0
        if self.p == 2:
            return np.bitwise_xor.reduce(a, axis=axis)
        if a.shape[axis] == 0:
            return np.zeros(a.shape[:axis] + a.shape[axis + 1:], dtype=np.int64)
        parts = np.moveaxis(a, axis, 0)
        return reduce(self.add, parts)

    def dot(self, u, v):
        return self.sum(self.mul(u, v), axis=-1)

    def matmul(self, A, B):
        A = np.asarray(A, dtype=np.int64)
        B = np.asarray(B, dtype=np.int64)
        m, k = A.shape
        k2, n = B.shape
        if k != k2:
            raise ValueError("shape mismatch")
        if k == 0:
            return np.zeros((m, n), dtype=np.int64)
        out = np.empty((m, n), dtype=np.int64)
        step = max(1, 4_000_000 // max(1, k * n))
        for s in range(0, m, step):
            out[s:s + step] = self.sum(self.mul(A[s:s + step, :, None], B[None, :, :]), axis=1)
        return out

    def element(self, v: int) -> "FieldElement":
        return FieldElement(int(v), self)

    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)


def _is_scalar(a) -> bool:
    return isinstance(a, (int, np.integer))


def _out(r, *inputs):
    if all(_is_scalar(x) for x in inputs):
        return int(r)
    return r


@lru_cache(maxsize=None)
def make_field(p: int, t: int) -> FieldSpec:
    if not is_prime(p):
        raise NonPrimeCharacteristic(f"{p} is not prime")
    if t < 1:
        raise SizeLimitExceeded("degree must be at least 1")
    if p**t > MAX_FIELD_SIZE:
        raise SizeLimitExceeded(f"{p}^{t} exceeds 2^20")
    return FieldSpec(p, t, first_primitive_polynomial(p, t))


def field_from_dict(d: dict) -> FieldSpec:
    F = make_field(int(d["p"]), int(d["t"]))
    if "modulus" in d and tuple(int(c) for c in d["modulus"]) != F.modulus:
        mod = [int(c) for c in d["modulus"]]
        if len(mod) != F.t + 1 or not is_primitive_polynomial(mod, F.p):
            raise FieldMismatch("modulus is not a primitive polynomial of the stated degree")
        return FieldSpec(F.p, F.t, tuple(mod))
    return F


@dataclass(frozen=True)
class FieldElement:
    value: int
    field: FieldSpec

    def _check(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other.value
        return int(other)

    def __add__(self, o):
        return FieldElement(self.field.add(self.value, self._check(o)), self.field)

    def __sub__(self, o):
        return FieldElement(self.field.sub(self.value, self._check(o)), self.field)

    def __mul__(self, o):
        return FieldElement(self.field.mul(self.value, self._check(o)), self.field)

    def __truediv__(self, o):
        return FieldElement(self.field.div(self.value, self._check(o)), self.field)

    def __neg__(self):
        return FieldElement(self.field.neg(self.value), self.field)

    def __pow__(self, e: int):
        return FieldElement(self.field.pow(self.value, e), self.field)

    def inv(self):
        return FieldElement(self.field.inv(self.value), self.field)

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value}@{self.field!r}"


def arith(a: FieldElement, b: FieldElement | int | None, kind: str) -> FieldElement:
    if kind == "inv":
        return a.inv()
    if kind == "pow":
        return a ** int(b)
    ops = {"add": a.__add__, "sub": a.__sub__, "mul": a.__mul__, "div": a.__truediv__}
    return ops[kind](b)


def primitive_nth_root(n: int, ext: FieldSpec) -> FieldElement:
    if n < 1 or (ext.q - 1) % n:
        raise NoSuchRoot(f"{n} does not divide {ext.q - 1}")
    return FieldElement(ext.exp((ext.q - 1) // n), ext)


@dataclass(frozen=True, eq=False, repr=False)
class ExtensionEmbedding:
    """GF(q) inside GF(q^l) with the basis {1, g_ext, ..., g_ext^(l-1)}."""

    base: FieldSpec
    ext: FieldSpec
    basis: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        base, ext = self.base, self.ext
        if base.p != ext.p or ext.t % base.t:
            raise FieldMismatch(f"{base} is not a subfield of {ext}")
        l = ext.t // base.t
        object.__setattr__(self, "l", l)
        # image of the base field's x: smallest root of the base modulus in ext
        if base.t == 1:
            root = 0
        else:
            xs = ext.elements()
            acc = np.zeros(ext.q, dtype=np.int64)
            pw = np.ones(ext.q, dtype=np.int64)
            for c in base.modulus:
                if c:
                    acc = ext.add(acc, ext.mul(pw, c))
                pw = ext.mul(pw, xs)
            root = int(np.nonzero(acc == 0)[0][0])
        table = np.zeros(base.q, dtype=np.int64)
        rp = [ext.pow(root, i) for i in range(base.t)]
        for v in range(base.q):
            acc_v = 0
            for i, c in enumerate(_digits(v, base.p, base.t)):
                if c:
                    acc_v = ext.add(acc_v, ext.mul(c, rp[i]))
            table[v] = acc_v
        object.__setattr__(self, "_embed", table)
        g = ext.generator
        basis = tuple(ext.pow(g, i) for i in range(l))
        object.__setattr__(self, "basis", basis)
        # coordinate table over all ext elements
        combos = np.stack(np.meshgrid(*([np.arange(base.q)] * l), indexing="ij"), axis=-1).reshape(-1, l)
        vals = np.zeros(len(combos), dtype=np.int64)
        for i, b in enumerate(basis):
            vals = ext.add(vals, ext.mul(table[combos[:, i]], b))
        coords = np.full((ext.q, l), -1, dtype=np.int64)
        coords[vals] = combos
        if np.any(coords < 0):
            raise FieldMismatch("basis is not independent")
        object.__setattr__(self, "_coords", coords)
        back = np.full(ext.q, -1, dtype=np.int64)
        back[table] = np.arange(base.q)
        object.__setattr__(self, "_project", back)

    def embed(self, a):
        return _out(self._embed[a], a)

    def project(self, a):
        r = self._project[a]
        if np.any(np.asarray(r) < 0):
            raise CoefficientNotInBaseField("element not in the base field")
        return _out(r, a)

    def in_base(self, a) -> bool:
        return bool(np.all(self._project[a] >= 0))

    def coords(self, a) -> np.ndarray:
        """Coordinates over the basis, shape a.shape + (l,), entries in the base field."""
        return self._coords[np.asarray(a, dtype=np.int64)]

    def from_coords(self, c) -> np.ndarray:
        c = np.asarray(c, dtype=np.int64)
        out = np.zeros(c.shape[:-1], dtype=np.int64)
        for i, b in enumerate(self.basis):
            out = self.ext.add(out, self.ext.mul(self._embed[c[..., i]], b))
        return out

    def frobenius(self, a):
        return self.ext.pow(a, self.base.q)

    def __repr__(self):
        return f"{self.base!r}<{self.ext!r}"


@lru_cache(maxsize=None)
def make_embedding(base: FieldSpec, ext: FieldSpec) -> ExtensionEmbedding:
    return ExtensionEmbedding(base, ext)


def frobenius(a: FieldElement, over: ExtensionEmbedding) -> FieldElement:
    if a.field != over.ext:
        raise FieldMismatch(f"{a.field} is not {over.ext}")
    return FieldElement(over.frobenius(a.value), a.field)
