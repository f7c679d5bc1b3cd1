"""Arithmetic in the prime field F_p.

Constructions work on plain ints reduced mod p for speed; ``FieldElement``
is the checked scalar type used at API boundaries and in tests.
"""

from __future__ import annotations

from functools import lru_cache

from sympy import isprime

MAX_MODULUS = 2**61 - 1


class FieldError(ValueError):
    """Bad modulus, modulus mismatch, or division by zero."""


def check_prime(p: int) -> int:
    """Return ``p`` if it is an odd prime usable as a field modulus."""
    if not isinstance(p, int) or isinstance(p, bool):
        raise FieldError(f"modulus must be an int, got {p!r}")
    if p < 3 or p % 2 == 0:
        raise FieldError(f"modulus must be an odd prime, got {p}")
    if p > MAX_MODULUS:
        raise FieldError(f"modulus {p} exceeds 2**61 - 1")
    if not isprime(p):
        raise FieldError(f"modulus {p} is not prime")
    return p


class FieldElement:
    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = value % p
        self.p = p

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.p != self.p:
                raise FieldError(f"modulus mismatch: {self.p} vs {other.p}")
            return other.value
        if isinstance(other, int):
            return other % self.p
        return NotImplemented

    def __add__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.value + b, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.value - b, self.p)

    def __rsub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(b - self.value, self.p)

    def __mul__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        # Python ints do not overflow, so no widening trick is needed.
        return FieldElement(self.value * b, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(-self.value, self.p)

    def __truediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return self * FieldElement(b, self.p).inv()

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        return FieldElement(pow(self.value, k, self.p), self.p)

    def inv(self) -> FieldElement:
        if self.value == 0:
            raise FieldError("zero has no multiplicative inverse")
        return FieldElement(pow(self.value, -1, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash(self.value)

    def __int__(self):
        return self.value

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"FieldElement({self.value}, {self.p})"


def arith(op: str, a: FieldElement, b: FieldElement | None = None) -> FieldElement:
    """Apply ``op`` in {"add", "sub", "mul", "neg"} to field elements."""
    if op == "neg":
        return -a
    if b is None:
        raise FieldError(f"{op} needs two operands")
    if a.p != b.p:
        raise FieldError(f"modulus mismatch: {a.p} vs {b.p}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise FieldError(f"unknown operation {op!r}")


def inv(a: FieldElement) -> FieldElement:
    return a.inv()


def inv_mod(a: int, p: int) -> int:
    if a % p == 0:
        raise FieldError("zero has no multiplicative inverse")
    return pow(a, -1, p)


@lru_cache(maxsize=64)
def residue_values(p: int) -> tuple[frozenset[int], frozenset[int]]:
    """(QR, QNR) of F_p as int sets, by squaring every nonzero element."""
    check_prime(p)
    qr = frozenset(x * x % p for x in range(1, p))
    qnr = frozenset(range(1, p)) - qr
    return qr, qnr


def residue_classes(p: int) -> tuple[set[FieldElement], set[FieldElement]]:
    qr, qnr = residue_values(p)
    return {FieldElement(v, p) for v in qr}, {FieldElement(v, p) for v in qnr}
