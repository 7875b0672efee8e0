"""Small finite fields F_q with table-based arithmetic.

Elements are integers 0..q-1. For prime q the encoding is the residue
itself; for q = p^e an element sum(c_i * alpha^i) is encoded in base p as
sum(c_i * p^i), where alpha is a root of a fixed irreducible modulus.
The modulus is the lexicographically least monic irreducible of degree e
over F_p (comparing coefficient tuples from the constant term up), so a
given (p, e) always yields the same tables.
"""

from __future__ import annotations

_MAX_Q = 121


def _factor_prime_power(q: int) -> tuple[int, int]:
    if q < 2:
        raise ValueError("field size must be at least 2")
    p = None
    for cand in range(2, q + 1):
        if q % cand == 0:
            p = cand
            break
    e = 0
    n = q
    while n % p == 0:
        n //= p
        e += 1
    if n != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, e


def _poly_mul_mod(a: list[int], b: list[int], modulus: list[int], p: int) -> list[int]:
    e = len(modulus) - 1
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    for k in range(len(out) - 1, e - 1, -1):
        c = out[k]
        if c:
            out[k] = 0
            for i in range(e):
                out[k - e + i] = (out[k - e + i] - c * modulus[i]) % p
    out = out[:e]
    return out + [0] * (e - len(out))


def _is_irreducible(coeffs: list[int], p: int) -> bool:
    """Check irreducibility of a monic polynomial over F_p by trial division."""
    e = len(coeffs) - 1
    if e <= 1:
        return e == 1
    # Root check covers degrees 2 and 3 completely.
    for a in range(p):
        acc = 0
        for c in reversed(coeffs):
            acc = (acc * a + c) % p
        if acc == 0:
            return False
    if e <= 3:
        return True
    # Trial division by monic polynomials of degree 2..e//2.
    for deg in range(2, e // 2 + 1):
        for enc in range(p**deg):
            div = [(enc // p**i) % p for i in range(deg)] + [1]
            rem = list(coeffs)
            while len(rem) - 1 >= deg:
                while rem and rem[-1] == 0:
                    rem.pop()
                if len(rem) - 1 < deg:
                    break
                k = len(rem) - 1 - deg
                c = rem[-1]
                for i, dc in enumerate(div):
                    rem[k + i] = (rem[k + i] - c * dc) % p
            if not any(rem):
                return False
    return True


def _find_modulus(p: int, e: int) -> list[int]:
    for enc in range(p**e):
        coeffs = [(enc // p**i) % p for i in range(e)] + [1]
        if _is_irreducible(coeffs, p):
            return coeffs
    raise AssertionError("no irreducible modulus found")


class Fq:
    """The finite field with q elements, q = p^e <= 121."""

    _cache: dict[int, "Fq"] = {}

    def __new__(cls, q: int):
        if q in cls._cache:
            return cls._cache[q]
        self = super().__new__(cls)
        cls._cache[q] = self
        return self

    def __init__(self, q: int):
        if getattr(self, "q", None) == q:
            return
        if q > _MAX_Q:
            raise ValueError(f"field size {q} exceeds supported bound {_MAX_Q}")
        p, e = _factor_prime_power(q)
        self.q = q
        self.p = p
        self.e = e
        if e == 1:
            self.modulus = None
            self._add = [[(a + b) % p for b in range(q)] for a in range(q)]
            self._mul = [[(a * b) % p for b in range(q)] for a in range(q)]
        else:
            self.modulus = _find_modulus(p, e)
            polys = [[(enc // p**i) % p for i in range(e)] for enc in range(q)]
            self._add = [
                [
                    sum(((polys[a][i] + polys[b][i]) % p) * p**i for i in range(e))
                    for b in range(q)
                ]
                for a in range(q)
            ]
            self._mul = []
            for a in range(q):
                row = []
                for b in range(q):
                    prod = _poly_mul_mod(polys[a], polys[b], self.modulus, p)
                    row.append(sum(prod[i] * p**i for i in range(e)))
                self._mul.append(row)
        self._neg = [0] * q
        for a in range(q):
            for b in range(q):
                if self._add[a][b] == 0:
                    self._neg[a] = b
                    break
        self._inv = [None] * q
        for a in range(1, q):
            for b in range(1, q):
                if self._mul[a][b] == 1:
                    self._inv[a] = b
                    break
        self.generator = self._find_generator()
        self._dlog: list[int | None] = [None] * q
        acc = 1
        for k in range(q - 1):
            self._dlog[acc] = k
            acc = self._mul[acc][self.generator]

    def _find_generator(self) -> int:
        for g in range(1, self.q):
            seen = set()
            acc = 1
            for _ in range(self.q - 1):
                seen.add(acc)
                acc = self._mul[acc][g]
            if len(seen) == self.q - 1:
                return g
        raise AssertionError("no multiplicative generator")

    def add(self, a: int, b: int) -> int:
        return self._add[a][b]

    def sub(self, a: int, b: int) -> int:
        return self._add[a][self._neg[b]]

    def neg(self, a: int) -> int:
        return self._neg[a]

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return self._inv[a]

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            a, n = self.inv(a), -n
        out = 1
        while n:
            if n & 1:
                out = self._mul[out][a]
            a = self._mul[a][a]
            n >>= 1
        return out

    def dlog(self, a: int) -> int:
        """Discrete log base the fixed generator; a must be nonzero."""
        if a == 0:
            raise ValueError("dlog of 0")
        return self._dlog[a]

    def frobenius_trace(self, a: int) -> int:
        """Trace to the prime field, as an integer in [0, p)."""
        if self.e == 1:
            return a
        acc = a
        total = a
        for _ in range(self.e - 1):
            acc = self.pow(acc, self.p)
            total = self._add[total][acc]
        return total  # lies in the prime subfield, encoded as itself

    def elements(self) -> range:
        return range(self.q)

    def units(self) -> range:
        return range(1, self.q)

    def __repr__(self) -> str:
        return f"Fq({self.q})"
