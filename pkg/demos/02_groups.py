"""The Cayley-table group engine: construction, subgroup structure,
series, and isomorphism testing."""

from ctcsa.groups import (
    alternating_group,
    center,
    dihedral_group,
    frobenius_pq,
    is_isomorphic,
    is_solvable,
    maximal_abelian_subgroups,
    monolith,
    normal_subgroups,
    symmetric_group,
)
from ctcsa.recipes import build_group


def main() -> None:
    s4 = symmetric_group(4)
    print(f"{s4.provenance}: order {s4.n}, solvable={is_solvable(s4)}, "
          f"center size {center(s4).size}")
    normals = normal_subgroups(s4)
    print(f"  normal subgroup sizes: {[s.size for s in normals]}")
    mono = monolith(s4)
    print(f"  monolith: size {mono.size} "
          f"(orders {sorted(mono.as_group().orders.tolist())})")

    d6 = dihedral_group(6)
    maxab = maximal_abelian_subgroups(d6)
    print(f"{d6.provenance}: {len(maxab)} maximal abelian subgroups, "
          f"sizes {sorted(s.size for s in maxab)}")

    f21 = frobenius_pq(3, 7)
    print(f"{f21.provenance}: order {f21.n}, "
          f"element orders {sorted(set(f21.orders.tolist()))}")

    v4_rot = build_group(
        "semidirect(direct(cyclic:2,cyclic:2),cyclic:3,rotate-involutions)"
    )
    a4 = alternating_group(4)
    print(f"{v4_rot.provenance} isomorphic to alternating:4? "
          f"{is_isomorphic(v4_rot, a4)}")


if __name__ == "__main__":
    main()
