"""
Noncommutative operator arithmetic in the Weyl and shift algebras
=================================================================

Exact normal forms for polynomial differential operators (generated by
x and dx with dx*x = x*dx + 1) and for difference operators (generated
by s, T, Ti with s*T = T*(s+1) and T*Ti = 1), plus the substitution
maps that connect them.
"""

from monofour.ore import (
    ShiftOp,
    WeylOp,
    antipode,
    fourier_auto,
    inversion_twist,
    mellin_op,
)
from monofour.parser import parse_operator

# Build operators either from constructors or by parsing expressions;
# both produce the same canonical normal form.
x, dx = WeylOp.x(), WeylOp.dx()
print("dx*x        =", dx * x)                       # x*dx + 1
print("parse       =", parse_operator("dx*(x-1)", "weyl"))

# The commutation rule is applied automatically during multiplication,
# so operator identities can be tested with ==.
euler = x * dx
print("[dx,x] == 1 :", dx * x - x * dx == WeylOp.const(1))

# The transform substitution sends x -> -dx and dx -> x.  Applying it
# twice negates both generators, which is exactly the antipode.
op = x * x * dx - WeylOp.const(3)
print("F(op)       =", fourier_auto(op))
print("F^2 == S    :", fourier_auto(fourier_auto(op)) == antipode(op))

# The Mellin substitution turns differential operators on the
# multiplicative line into shift operators: x -> T and x*dx -> s.
print("M(x*dx)     =", mellin_op(euler))
print("M(x)        =", mellin_op(x))
print("M(dx)       =", mellin_op(dx))                # Ti*s

# Shift operators normalize to sums T^j * p(s) with the polynomial on
# the right; the inverse level prints as Ti.
rel = parse_operator("(s+1) - Ti*s", "shift")
print("relation    =", rel)

# The inversion twist reverses the orbit direction: s -> -s-1, T -> -Ti.
s, T = ShiftOp.s(), ShiftOp.t_power(1)
print("inv(s)      =", inversion_twist(s))
print("inv(T)      =", inversion_twist(T))
print("involution  :", inversion_twist(inversion_twist(rel)) == rel)
