#!/usr/bin/env python3
"""Why the inequality checks are formulated without square roots.

The uncertainty of q in the ground state is sqrt(h/2), whose leading
coefficient 1/2 is not a rational square, so the exact backend refuses it.
The float backend computes it with a sign tolerance instead; fine for a
demo, useless for theorem checking.
"""

from dq import coordinate, ground
from dq.errors import IrrationalLeadingCoefficient
from dq.floatseries import FloatSeries
from dq.observables import star


def main():
    g = ground(1)
    q = coordinate(1, "q", 1)
    p = coordinate(1, "p", 1)
    var_q = g.expect_real(star(q, q))
    var_p = g.expect_real(star(p, p))
    print("Var(q) =", var_q, "   Var(p) =", var_p)

    try:
        var_q.sqrt()
    except IrrationalLeadingCoefficient as exc:
        print("exact sqrt refused:", exc)

    dq_f = FloatSeries.from_exact(var_q).sqrt()
    dp_f = FloatSeries.from_exact(var_p).sqrt()
    print("float backend: Delta q =", dq_f)
    print("float backend: Delta p =", dp_f)
    print("product Delta q * Delta p =", dq_f * dp_f, "  (= h/2: saturated)")

    bumpy = FloatSeries.from_exact(var_q + var_q * var_q).sqrt()
    print("sqrt(h/2 + h^2/4) =", bumpy)


if __name__ == "__main__":
    main()
