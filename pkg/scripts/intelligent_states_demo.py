#!/usr/bin/env python3
"""Walk through saturation of the uncertainty relations for canonical states.

Prints the star-moment matrices of (q, p) for the ground and squeezed
states, the three relation verdicts, and the annihilated combinations that
certify saturation.
"""

from fractions import Fraction

from dq import (
    check_annihilating_transform,
    check_hr,
    check_rs,
    check_trace,
    coordinate,
    find_ideal_direction,
    gelfand_norm,
    ground,
    moment_matrices,
    squeezed,
    two_observable_ideal_witness,
)
from dq.observables import constant
from dq.series import I_UNIT


def show(state, label, xs):
    mm = moment_matrices(state, xs)
    print(f"== {label} ==")
    print("covariance part a:")
    for row in mm.a:
        print("   [" + ", ".join(str(x) for x in row) + "]")
    print("skew part b:")
    for row in mm.b:
        print("   [" + ", ".join(str(x) for x in row) + "]")
    rs = check_rs(state, xs, mm)
    hr = check_hr(state, xs, mm)
    tr, _ = check_trace(state, xs, mm)
    for v in (rs, hr, tr):
        print(f"{v.relation_name:>6}: {v.status.value:15} lhs={v.lhs} rhs={v.rhs}")
    print()


def main():
    q = coordinate(1, "q", 1)
    p = coordinate(1, "p", 1)

    g = ground(1)
    show(g, "ground state", [q, p])
    qip = q + constant(1, I_UNIT) * p
    print("rho(conj(q+ip) * (q+ip)) =", gelfand_norm(g, qip))
    sat, witness = two_observable_ideal_witness(g, q, p)
    print("saturation witness (u1, u2):", witness)
    print()

    s = squeezed(4)
    show(s, "squeezed state (s=4)", [q, p])
    res = check_annihilating_transform(
        s, [q, p], [[Fraction(5, 4)]], [[Fraction(-3, 4)]]
    )
    print("transformed ladder annihilated:", res.all_in_ideal, "->", res.rs.status.value)
    print()

    print("== singular covariance part: (q, p, q+p) on the ground state ==")
    direction = find_ideal_direction(g, [q, p, q + p])
    print("annihilated real combination of deviations:", [str(x) for x in direction])


if __name__ == "__main__":
    main()
