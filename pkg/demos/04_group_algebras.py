"""
Cyclic group algebras with modular coefficients
===============================================

Exact computations in (Z/ell^r)[Z/n]: the augmentation ideal, the
annihilator of t-1 across transition maps, surjectivity of transition
on unit groups, and formal rank-one modules whose twist indices add
under tensor.
"""

from monofour import groupalg

# Elements are written in the group generator t; arithmetic wraps both
# the exponents (mod n) and the coefficients (mod ell^r).
a = groupalg.ga_elem(3, 2, 3, [1, 2, 0])       # 1 + 2t in (Z/9)[Z/3]
t = groupalg.t_gen(3, 2, 3)
print("a       =", a)
print("a * t^2 =", a * t * t)

# The augmentation map sums coefficients; its kernel is exactly the
# ideal generated by t - 1, with explicit cofactors for each member.
aug = groupalg.augmentation_kernel_check(2, 2, 3)
print("augmentation kernel = (t-1):", aug["verdict"],
      "order", aug["kernel_order"])

# t - 1 is a zero divisor at every finite level, but its annihilator
# at level m*ell^r maps to zero at level m: the transition image of
# the norm element sigma vanishes exactly when ell^r divides m/n.
nzd = groupalg.pro_nzd_check(3, 1, 2)
print("annihilator dies under transition:", nzd["verdict"])
control = groupalg.pro_nzd_check(3, 1, 2, m=4)
print("shallow control keeps it alive   :", control["verdict"] is False)

# Units: gcd with x^n - 1 over F_ell detects invertibility, and every
# unit downstairs lifts to a unit upstairs along the transition map.
units = groupalg.unit_surjectivity_check(2, 2, 3, 6)
print("units surject (method:", units["method"] + "):", units["verdict"])

# Formal rank-one modules carry an integer twist; tensoring adds the
# twists, associatively and compatibly with level transitions.
tensor = groupalg.twisted_tensor_check()
print("twist indices add under tensor   :", tensor["verdict"])
print("example:", tensor["example"])
