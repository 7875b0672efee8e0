"""Residue ring elements for moduli that are prime powers."""

from __future__ import annotations


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def check_prime_power(m: int) -> tuple[int, int]:
    """Return (ell, r) with m = ell^r, ell prime, r >= 1."""
    for ell in range(2, m + 1):
        if m % ell == 0:
            if not _is_prime(ell):
                break
            r, n = 0, m
            while n % ell == 0:
                n //= ell
                r += 1
            if n == 1:
                return ell, r
            break
    raise ValueError(f"{m} is not a prime power")


class ResidueRingElem:
    """Element of Z/ell^r."""

    __slots__ = ("modulus", "value")

    def __init__(self, modulus: int, value: int):
        check_prime_power(modulus)
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "value", value % modulus)

    def __setattr__(self, name, value):
        raise AttributeError("ResidueRingElem is immutable")

    def _check(self, other) -> "ResidueRingElem":
        if isinstance(other, int):
            return ResidueRingElem(self.modulus, other)
        if not isinstance(other, ResidueRingElem):
            raise TypeError(f"cannot combine with {type(other).__name__}")
        if other.modulus != self.modulus:
            raise ValueError("modulus mismatch")
        return other

    def __add__(self, other):
        other = self._check(other)
        return ResidueRingElem(self.modulus, self.value + other.value)

    __radd__ = __add__

    def __neg__(self):
        return ResidueRingElem(self.modulus, -self.value)

    def __sub__(self, other):
        other = self._check(other)
        return ResidueRingElem(self.modulus, self.value - other.value)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        return ResidueRingElem(self.modulus, self.value * other.value)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self.value == other % self.modulus
        if isinstance(other, ResidueRingElem):
            return self.modulus == other.modulus and self.value == other.value
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.modulus, self.value))

    def is_unit(self) -> bool:
        ell, _ = check_prime_power(self.modulus)
        return self.value % ell != 0

    def __repr__(self) -> str:
        return f"ResidueRingElem({self.modulus}, {self.value})"

    def __str__(self) -> str:
        return f"{self.value} (mod {self.modulus})"
