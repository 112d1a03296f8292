"""Univariate polynomials over GF(q) as ascending lists of integer-encoded coefficients."""
from __future__ import annotations

from .errors import DivisionByZero
from .galois import FieldSpec


def trim(a) -> list[int]:
    a = [int(c) for c in a]
    while a and a[-1] == 0:
        a.pop()
    return a


def deg(a) -> int:
    a = trim(a)
    return len(a) - 1  # -1 for the zero polynomial


def add(F: FieldSpec, a, b) -> list[int]:
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return trim(F.add(x, y) for x, y in zip(a, b))


def sub(F: FieldSpec, a, b) -> list[int]:
    return add(F, a, [F.neg(c) for c in b])


def scale(F: FieldSpec, a, c: int) -> list[int]:
    return trim(F.mul(x, c) for x in a)


def mul(F: FieldSpec, a, b) -> list[int]:
    a, b = trim(a), trim(b)
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = F.add(out[i + j], F.mul(x, y))
    return trim(out)


def divmod_(F: FieldSpec, a, b) -> tuple[list[int], list[int]]:
    a, b = trim(a), trim(b)
    if not b:
        raise DivisionByZero("polynomial division by zero")
    inv_lead = F.inv(b[-1])
    quo = [0] * max(0, len(a) - len(b) + 1)
    rem = list(a)
    for d in range(len(a) - len(b), -1, -1):
        c = F.mul(rem[d + len(b) - 1], inv_lead)
        if c:
            quo[d] = c
            for j, y in enumerate(b):
                rem[d + j] = F.sub(rem[d + j], F.mul(c, y))
    return trim(quo), trim(rem)


def monic(F: FieldSpec, a) -> list[int]:
    a = trim(a)
    if not a:
        return []
    return scale(F, a, F.inv(a[-1]))


def gcd(F: FieldSpec, a, b) -> list[int]:
    a, b = trim(a), trim(b)
    while b:
        a, b = b, divmod_(F, a, b)[1]
    return monic(F, a)


def evaluate(F: FieldSpec, a, x: int) -> int:
    acc = 0
    for c in reversed(list(a)):
        acc = F.add(F.mul(acc, x), c)
    return acc
