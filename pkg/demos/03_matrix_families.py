"""Special linear and projective special linear families over small
finite fields, plus the exact characteristic-zero witness triples."""

import math

from ctcsa.fields import make_field
from ctcsa.groups import is_isomorphic, symmetric_group
from ctcsa.psl2 import (
    char0_ct_counterexample,
    commutes,
    gaussian_tuv_example,
    psl2_group,
    psl2_order,
    sl2_group,
)


def main() -> None:
    for q in (2, 3, 4, 5, 7, 8, 9):
        group = psl2_group(q)
        formula = q * (q * q - 1) // math.gcd(2, q - 1)
        print(f"psl2:{q}: closure order {group.n}, formula {formula}, "
              f"match={group.n == formula}")

    print(f"sl2:5 order {sl2_group(5).n} (double cover of psl2:5, "
          f"order {psl2_order(5)})")
    print(f"psl2:2 isomorphic to symmetric:3? "
          f"{is_isomorphic(psl2_group(2), symmetric_group(3))}")
    print(f"psl2:4 isomorphic to psl2:5? "
          f"{is_isomorphic(psl2_group(4), psl2_group(5))}")

    qi = make_field("gaussian-rational")
    a, b, c = char0_ct_counterexample(qi, qi.i(), qi.zero())
    print("Q(i) triple:")
    print(f"  A = {a.rep.label()}  B = {b.rep.label()}  C = {c.rep.label()}")
    print(f"  AB=BA: {commutes(a, b)}, BC=CB: {commutes(b, c)}, "
          f"AC=CA: {commutes(a, c)}")

    t, u, v = gaussian_tuv_example()
    print("Q(i) T/U/V example:")
    print(f"  UT=TU: {commutes(u, t)}, UV=VU: {commutes(u, v)}, "
          f"TV=VT: {commutes(t, v)}")


if __name__ == "__main__":
    main()
