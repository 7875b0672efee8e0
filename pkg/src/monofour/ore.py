"""Noncommutative operator algebras.

Two algebras are provided, with exact rational coefficients throughout:

* the shift algebra, generated by s, T, T^-1 with the commutation rule
  s*T = T*(s+1); normal form puts T-powers on the left and polynomials
  in s on the right, so every element is a finite sum T^j * p_j(s);
* the Weyl algebra in d variables (dx*x = x*dx + 1), together with its
  Laurent variant in one variable where x is invertible.

The module also houses the Mellin identification between the Laurent
algebra and the shift algebra (x -> T, dx -> T^-1 s), the Fourier
automorphism of the Weyl algebra (x -> -dx, dx -> x), the inversion
twist of the shift algebra, and right reduction modulo a cyclic
relation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Union

from .scalars import Poly, RatFun, UnsupportedInputError, frac
from .scalars.ratfun import partial_fractions

Scalar = Union[int, Fraction]


def falling(a: int, k: int) -> int:
    """Falling factorial a(a-1)...(a-k+1); valid for negative a."""
    out = 1
    for i in range(k):
        out *= a - i
    return out


def falling_poly(b: int) -> Poly:
    """s(s-1)...(s-b+1) as a polynomial; the Mellin image of dx^b is
    T^-b times this."""
    out = Poly.const(1)
    for i in range(b):
        out = out * (Poly.x() - i)
    return out


class ShiftOp:
    """Element of the shift algebra in normal form sum_j T^j * p_j(s)."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean: dict[int, Poly] = {}
        if terms:
            for j, p in terms.items():
                if not isinstance(p, Poly):
                    p = Poly.const(p)
                if not p.is_zero:
                    clean[j] = clean.get(j, Poly()) + p if j in clean else p
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("ShiftOp is immutable")

    @classmethod
    def from_poly(cls, p) -> "ShiftOp":
        if not isinstance(p, Poly):
            p = Poly.const(p)
        return cls({0: p})

    @classmethod
    def s(cls) -> "ShiftOp":
        return cls({0: Poly.x()})

    @classmethod
    def t_power(cls, j: int, coeff: Scalar = 1) -> "ShiftOp":
        return cls({j: Poly.const(coeff)})

    @classmethod
    def one(cls) -> "ShiftOp":
        return cls({0: Poly.const(1)})

    @classmethod
    def zero(cls) -> "ShiftOp":
        return cls()

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def levels(self) -> list[int]:
        return sorted(self.terms)

    def coeff(self, j: int) -> Poly:
        return self.terms.get(j, Poly())

    def __bool__(self) -> bool:
        return not self.is_zero

    def __eq__(self, other) -> bool:
        other = _coerce_shift(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(tuple(sorted((j, p.coeffs) for j, p in self.terms.items())))

    def __add__(self, other) -> "ShiftOp":
        other = _coerce_shift(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for j, p in other.terms.items():
            out[j] = out.get(j, Poly()) + p
        return ShiftOp(out)

    __radd__ = __add__

    def __neg__(self) -> "ShiftOp":
        return ShiftOp({j: -p for j, p in self.terms.items()})

    def __sub__(self, other) -> "ShiftOp":
        other = _coerce_shift(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "ShiftOp":
        return (-self) + other

    def __mul__(self, other) -> "ShiftOp":
        other = _coerce_shift(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict[int, Poly] = {}
        for i, p in self.terms.items():
            for j, q in other.terms.items():
                contrib = p.shift(j) * q
                k = i + j
                out[k] = out.get(k, Poly()) + contrib
        return ShiftOp(out)

    def __rmul__(self, other) -> "ShiftOp":
        other = _coerce_shift(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self

    def __pow__(self, n: int) -> "ShiftOp":
        if n < 0:
            raise ValueError("use t_power for negative powers of T")
        out = ShiftOp.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def to_str(self) -> str:
        if self.is_zero:
            return "0"
        pieces = []
        many = len(self.terms) > 1
        for j in self.levels():
            p = self.terms[j]
            if j == 0:
                tpart = ""
            elif j == 1:
                tpart = "T"
            elif j > 1:
                tpart = f"T^{j}"
            elif j == -1:
                tpart = "Ti"
            else:
                tpart = f"Ti^{-j}"
            if not tpart:
                pieces.append(f"({p})" if many else str(p))
            elif p == Poly.const(1):
                pieces.append(tpart)
            else:
                pieces.append(f"{tpart}*({p})")
        return " + ".join(pieces)

    def __str__(self) -> str:
        return self.to_str()

    def __repr__(self) -> str:
        return f"ShiftOp({self.to_str()})"


def _coerce_shift(x):
    if isinstance(x, ShiftOp):
        return x
    if isinstance(x, (int, Fraction, Poly)):
        return ShiftOp.from_poly(x)
    return NotImplemented


def ore_mul(a: ShiftOp, b: ShiftOp) -> ShiftOp:
    """Product in the shift algebra (same as a * b)."""
    return a * b


class _WeylBase:
    """Shared implementation for the Weyl algebra and its Laurent variant."""

    __slots__ = ("rank", "terms")
    laurent = False

    def __init__(self, rank: int = 1, terms=None):
        clean: dict[tuple[tuple[int, ...], tuple[int, ...]], Fraction] = {}
        if terms:
            for key, c in terms.items():
                alpha, beta = key
                alpha = (alpha,) if isinstance(alpha, int) else tuple(alpha)
                beta = (beta,) if isinstance(beta, int) else tuple(beta)
                if len(alpha) != rank or len(beta) != rank:
                    raise ValueError("multi-index length does not match rank")
                if any(b < 0 for b in beta):
                    raise ValueError("negative power of dx")
                if not self.laurent and any(a < 0 for a in alpha):
                    raise ValueError("negative power of x in the plain Weyl algebra")
                c = frac(c)
                if c:
                    k = (alpha, beta)
                    if k in clean:
                        c = clean[k] + c
                        if c:
                            clean[k] = c
                        else:
                            del clean[k]
                    else:
                        clean[k] = c
        object.__setattr__(self, "rank", rank)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("operator is immutable")

    @classmethod
    def x(cls, i: int = 0, rank: int = 1) -> "_WeylBase":
        alpha = tuple(1 if k == i else 0 for k in range(rank))
        beta = (0,) * rank
        return cls(rank, {(alpha, beta): 1})

    @classmethod
    def dx(cls, i: int = 0, rank: int = 1) -> "_WeylBase":
        alpha = (0,) * rank
        beta = tuple(1 if k == i else 0 for k in range(rank))
        return cls(rank, {(alpha, beta): 1})

    @classmethod
    def const(cls, c: Scalar, rank: int = 1) -> "_WeylBase":
        return cls(rank, {((0,) * rank, (0,) * rank): c})

    @classmethod
    def one(cls, rank: int = 1) -> "_WeylBase":
        return cls.const(1, rank)

    @classmethod
    def zero(cls, rank: int = 1) -> "_WeylBase":
        return cls(rank)

    @classmethod
    def monomial(cls, alpha, beta, c: Scalar = 1, rank: int | None = None) -> "_WeylBase":
        alpha = (alpha,) if isinstance(alpha, int) else tuple(alpha)
        beta = (beta,) if isinstance(beta, int) else tuple(beta)
        if rank is None:
            rank = len(alpha)
        return cls(rank, {(alpha, beta): c})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return not self.is_zero

    def _coerce(self, other):
        if isinstance(other, (int, Fraction)):
            return type(self).const(other, self.rank)
        if isinstance(other, type(self)):
            if other.rank != self.rank:
                raise ValueError("rank mismatch")
            return other
        return NotImplemented

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.rank, tuple(sorted(self.terms.items()))))

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k, Fraction(0)) + c
            if v:
                out[k] = v
            elif k in out:
                del out[k]
        return type(self)(self.rank, out)

    __radd__ = __add__

    def __neg__(self):
        return type(self)(self.rank, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = frac(other)
            return type(self)(
                self.rank, {k: v * c for k, v in self.terms.items()} if c else {}
            )
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                for alpha, beta, c in _normal_product(a1, b1, a2, b2):
                    k = (alpha, beta)
                    v = out.get(k, Fraction(0)) + c1 * c2 * c
                    if v:
                        out[k] = v
                    elif k in out:
                        del out[k]
        return type(self)(self.rank, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative operator power")
        out = type(self).one(self.rank)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def _monomial_str(self, alpha, beta) -> str:
        parts = []
        for i in range(self.rank):
            name = "x" if self.rank == 1 else f"x{i + 1}"
            if alpha[i] == 1:
                parts.append(name)
            elif alpha[i] != 0:
                parts.append(f"{name}^{alpha[i]}")
        for i in range(self.rank):
            name = "dx" if self.rank == 1 else f"dx{i + 1}"
            if beta[i] == 1:
                parts.append(name)
            elif beta[i] != 0:
                parts.append(f"{name}^{beta[i]}")
        return "*".join(parts)

    def to_str(self) -> str:
        if self.is_zero:
            return "0"
        keys = sorted(self.terms)
        pieces = []
        for k in keys:
            c = self.terms[k]
            mono = self._monomial_str(*k)
            if not mono:
                body = str(c)
            elif c == 1:
                body = mono
            elif c == -1:
                body = f"-{mono}"
            else:
                body = f"{c}*{mono}"
            pieces.append(body)
        out = pieces[0]
        for body in pieces[1:]:
            out += " - " + body[1:] if body.startswith("-") else " + " + body
        return out

    def __str__(self) -> str:
        return self.to_str()

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.to_str()})"


def _normal_product(a1, b1, a2, b2):
    """Normal-order (x^a1 dx^b1)(x^a2 dx^b2) coordinate by coordinate."""
    factors_per_coord = []
    for i in range(len(a1)):
        coords = []
        for k in range(b1[i] + 1):
            c = comb(b1[i], k) * falling(a2[i], k)
            if c:
                coords.append((a1[i] + a2[i] - k, b1[i] + b2[i] - k, c))
        factors_per_coord.append(coords)
    combos = [((), (), 1)]
    for coords in factors_per_coord:
        new = []
        for alpha, beta, c in combos:
            for a, b, c2 in coords:
                new.append((alpha + (a,), beta + (b,), c * c2))
        combos = new
    return combos


class WeylOp(_WeylBase):
    """Polynomial differential operator in normal order x^alpha dx^beta."""

    __slots__ = ()
    laurent = False


class LaurentWeylOp(_WeylBase):
    """Rank-1 differential operator with x invertible."""

    __slots__ = ()
    laurent = True

    def __init__(self, rank: int = 1, terms=None):
        if rank != 1:
            raise ValueError("the Laurent algebra is rank 1 only")
        super().__init__(rank, terms)

    @classmethod
    def x_power(cls, a: int, c: Scalar = 1) -> "LaurentWeylOp":
        return cls(1, {((a,), (0,)): c})


def weyl_mul(a: _WeylBase, b: _WeylBase) -> _WeylBase:
    """Normal-ordered product (same as a * b)."""
    return a * b


def to_laurent(w: WeylOp) -> LaurentWeylOp:
    if w.rank != 1:
        raise ValueError("only rank-1 operators restrict to the torus")
    return LaurentWeylOp(1, dict(w.terms))


def mellin_op(w: "LaurentWeylOp | WeylOp") -> ShiftOp:
    """Image under the identification x -> T, x*dx -> s.

    A normal-form monomial x^a dx^b maps to T^(a-b) * s(s-1)...(s-b+1).
    """
    if w.rank != 1:
        raise ValueError("the Mellin identification is rank 1")
    out = ShiftOp.zero()
    for ((a,), (b,)), c in w.terms.items():
        out = out + ShiftOp({a - b: falling_poly(b) * c})
    return out


def inverse_mellin_op(sh: ShiftOp) -> LaurentWeylOp:
    """Two-sided inverse of mellin_op, via Newton forward differences."""
    terms: dict = {}
    for j, p in sh.terms.items():
        # p(s) = sum_b c_b * s(s-1)...(s-b+1) with c_b = Delta^b p(0) / b!
        work = p
        b = 0
        while not work.is_zero:
            c = work.eval(0) / factorial(b)
            if c:
                key = ((j + b,), (b,))
                terms[key] = terms.get(key, Fraction(0)) + c
            work = work.shift(1) - work
            b += 1
    return LaurentWeylOp(1, {k: v for k, v in terms.items() if v})


def fourier_auto(w: WeylOp) -> WeylOp:
    """Algebra automorphism x_i -> -dx_i, dx_i -> x_i, in normal form."""
    if not isinstance(w, WeylOp):
        raise UnsupportedInputError("the Fourier automorphism acts on the plain Weyl algebra")
    rank = w.rank
    out = WeylOp(rank)
    for (alpha, beta), c in w.terms.items():
        combos = [((), (), Fraction(1))]
        for i in range(rank):
            # (-dx)^alpha_i * x^beta_i, normal ordered:
            # dx^a x^b = sum_k C(a,k) falling(b,k) x^(b-k) dx^(a-k)
            a, b = alpha[i], beta[i]
            coords = []
            sign = -1 if a % 2 else 1
            for k in range(min(a, b) + 1):
                cc = comb(a, k) * falling(b, k) * sign
                if cc:
                    coords.append((b - k, a - k, cc))
            new = []
            for al, be, acc in combos:
                for xa, xb, cc in coords:
                    new.append((al + (xa,), be + (xb,), acc * cc))
            combos = new
        for al, be, acc in combos:
            out = out + WeylOp(rank, {(al, be): c * acc})
    return out


def antipode(w: WeylOp) -> WeylOp:
    """The substitution x -> -x, dx -> -dx."""
    return WeylOp(
        w.rank,
        {
            (alpha, beta): c * ((-1) ** (sum(alpha) + sum(beta)))
            for (alpha, beta), c in w.terms.items()
        },
    )


TWIST_VARIANTS = ("affine", "plain")


def inversion_twist(sh: ShiftOp, variant: str = "affine") -> ShiftOp:
    """Automorphism of the shift algebra induced by the coordinate inversion
    that sends a point to minus its reciprocal.

    Both variants send T to -T^-1.  The "plain" variant sends s to -s
    (the chain-rule image of the Euler operator); the "affine" variant
    sends s to -s-1, the adjoint-corrected form appropriate for right
    modules.  The affine variant is the default: it is the one validated
    by the exponential-square check, while the plain variant fails it.
    Both are involutions and preserve the defining commutation rule.
    """
    if variant not in TWIST_VARIANTS:
        raise ValueError(f"unknown twist variant {variant!r}")
    shift_const = -1 if variant == "affine" else 0
    out: dict[int, Poly] = {}
    for j, p in sh.terms.items():
        q = p.compose_linear(-1, shift_const)
        if j % 2:
            q = -q
        out[-j] = out.get(-j, Poly()) + q
    return ShiftOp(out)


@dataclass(frozen=True)
class CyclicPresentation:
    """Cyclic right module D/(g)D over one of the operator algebras.

    algebra is "shift", "weyl", or "laurent"; relations are stored in
    normal form.  The zero relation presents the free module of rank 1;
    a unit relation presents the zero module.
    """

    algebra: str
    relations: tuple
    rank: int = 1

    def __post_init__(self):
        if self.algebra not in ("shift", "weyl", "laurent"):
            raise ValueError(f"unknown algebra {self.algebra!r}")
        object.__setattr__(self, "relations", tuple(self.relations))

    def single_relation(self):
        nonzero = [r for r in self.relations if r]
        if len(nonzero) > 1:
            raise UnsupportedInputError("only single-relation presentations supported")
        return nonzero[0] if nonzero else None


def right_reduce(elem, presentation: CyclicPresentation):
    """Canonical representative of (generator * elem) in D/(g)D.

    Supports the confluent relation shapes used by the canonical modules:
    single-level shift relations T^a p(s); two-adjacent-level shift
    relations with a constant end (pushed up or down until no trigger
    divides a coefficient); the simple-pole kernel relation (reduced
    through its rational-function embedding); and the Weyl relations
    c(1 - dx), x - c, and dx.
    """
    rel = presentation.single_relation()
    if rel is None:
        return elem
    if presentation.algebra == "shift":
        if not isinstance(elem, ShiftOp):
            raise TypeError("expected a ShiftOp")
        return _reduce_shift(elem, rel)
    if not isinstance(elem, _WeylBase):
        raise TypeError("expected a Weyl-type operator")
    if presentation.rank != 1 or elem.rank != 1:
        raise UnsupportedInputError("reduction is rank 1 only")
    return _reduce_weyl(elem, rel)


def _reduce_shift(elem: ShiftOp, rel: ShiftOp) -> ShiftOp:
    levels = rel.levels()
    if len(levels) == 1:
        a = levels[0]
        p = rel.coeff(a)
        if p.degree == 0:
            return ShiftOp.zero()
        out = {}
        for j, w in elem.terms.items():
            out[j] = w % p.shift(j - a)
        return ShiftOp(out)
    if len(levels) == 2 and levels[1] == levels[0] + 1:
        i = levels[0]
        p, q = rel.coeff(i), rel.coeff(i + 1)
        if p.degree == 0 and q.degree == 0:
            # T^(j+1) u == -(p/q) T^j u: collapse every level to level 0.
            ratio = -p.lc / q.lc
            total = Poly()
            for j, w in elem.terms.items():
                total = total + w * ratio**j
            return ShiftOp({0: total})
        if q.degree == 0:
            return _push(elem, trigger=lambda j: p.shift(j - i), step=+1,
                         carry=lambda u: -(q.lc) * u)
        if p.degree == 0:
            return _push(elem, trigger=lambda j: q.shift(j - i - 1), step=-1,
                         carry=lambda u: -(p.lc) * u)
        return _reduce_via_embedding(elem, rel)
    raise UnsupportedInputError(f"no confluent reduction for relation {rel}")


def _push(elem: ShiftOp, trigger, step: int, carry) -> ShiftOp:
    terms = {j: p for j, p in elem.terms.items()}
    changed = True
    while changed:
        changed = False
        for j in sorted(terms):
            w = terms.get(j)
            if w is None or w.is_zero:
                continue
            f = trigger(j)
            u, r = divmod(w, f)
            if u.is_zero:
                continue
            terms[j] = r
            k = j + step
            terms[k] = terms.get(k, Poly()) + carry(u)
            changed = True
            break
    return ShiftOp({j: p for j, p in terms.items() if not p.is_zero})


def _kernel_relation_match(rel: ShiftOp):
    """Detect a rational multiple of the simple-pole kernel relation
    (s+1) - T^-1 s; return the scalar or None."""
    base = ShiftOp({0: Poly.x() + 1, -1: -Poly.x()})
    lv = rel.levels()
    if lv != [-1, 0]:
        return None
    c = rel.coeff(0).lc / (Poly.x() + 1).lc if rel.coeff(0).degree == 1 else None
    if c is None:
        return None
    if rel == ShiftOp({j: p * c for j, p in base.terms.items()}):
        return c
    return None


def _reduce_via_embedding(elem: ShiftOp, rel: ShiftOp) -> ShiftOp:
    c = _kernel_relation_match(rel)
    if c is None:
        raise UnsupportedInputError(f"no confluent reduction for relation {rel}")
    # The generator embeds as 1/(s+1); T^j p(s) acts as p(s)/(s+j+1).
    image = RatFun(0)
    for j, p in elem.terms.items():
        image = image + RatFun(p, Poly((j + 1, 1)))
    poly_part, parts = partial_fractions(image)
    out = ShiftOp.from_poly(poly_part * (Poly.x() + 1))
    for a, coefs in parts:
        if len(coefs) != 1 or a.denominator != 1:
            raise AssertionError("kernel-module image must have simple integer poles")
        m = -int(a)
        out = out + ShiftOp.t_power(m - 1, coefs[0])
    return out


def _reduce_weyl(elem: _WeylBase, rel: _WeylBase):
    keys = sorted(rel.terms)
    zero = ((0,), (0,))
    if keys == [zero]:
        return type(elem)(1)
    if set(keys) <= {zero, ((0,), (1,))}:
        # Relation c0 + c1 dx, so dx == -c0/c1; the product rule adds the
        # usual derivative correction: x^a dx^b == lam x^a dx^(b-1)
        #                                          - a x^(a-1) dx^(b-1).
        lam = -rel.terms.get(zero, Fraction(0)) / rel.terms[((0,), (1,))]
        return _weyl_push(
            elem,
            lambda a, b: [((a, b - 1), lam), ((a - 1, b - 1), Fraction(-a))],
        )
    if set(keys) <= {zero, ((1,), (0,))}:
        # Relation c1 x - c0: substitute x = c0/c1 into every x-power.
        cx = rel.terms[((1,), (0,))]
        c = -rel.terms.get(zero, Fraction(0)) / cx
        out: dict = {}
        for ((a,), (b,)), coeff in elem.terms.items():
            if a < 0 and c == 0:
                raise UnsupportedInputError("negative x-power under the relation x")
            key = ((0,), (b,))
            v = out.get(key, Fraction(0)) + coeff * c**a
            if v:
                out[key] = v
            elif key in out:
                del out[key]
        return type(elem)(1, out)
    raise UnsupportedInputError(f"no confluent reduction for relation {rel}")


def _weyl_push(elem: _WeylBase, rewrite):
    terms = {k: v for k, v in elem.terms.items()}
    while True:
        target = None
        for (alpha, beta) in terms:
            if beta[0] >= 1:
                target = (alpha, beta)
                break
        if target is None:
            break
        coeff = terms.pop(target)
        (a,), (b,) = target
        for (na, nb), c in rewrite(a, b):
            if c == 0:
                continue
            key = ((na,), (nb,))
            v = terms.get(key, Fraction(0)) + coeff * c
            if v:
                terms[key] = v
            elif key in terms:
                del terms[key]
    return type(elem)(1, terms)
