"""Property deciders: CT and CSA verdicts with re-verifiable witnesses,
the solvable/simple classification, and constructive extraction."""

from ctcsa.properties import is_csa, is_ct, theorem41_extract, wu_classify
from ctcsa.recipes import build_group


def main() -> None:
    for recipe in ("cyclic:12", "symmetric:3", "frobenius:3,7", "psl2:4",
                   "psl2:7", "direct(symmetric:3,symmetric:3)"):
        group = build_group(recipe)
        ct = is_ct(group, "centralizer")
        csa = is_csa(group, "malnormal")
        line = f"{recipe}: CT={ct.verdict} CSA={csa.verdict}"
        if not ct.verdict:
            labels = ct.witness["labels"]
            line += f"  CT witness (x,y,z)=({labels[0]}, {labels[1]}, {labels[2]})"
        print(line)

    f21 = build_group("frobenius:3,7")
    g0, a = theorem41_extract(f21)
    print(f"frobenius:3,7 extraction: |G0|={g0.size}, |A|={a.size}, "
          f"A abelian={a.is_abelian}, A normal in G0={a.is_normal_in(g0)}")

    for recipe in ("cyclic:12", "frobenius:3,7", "alternating:5", "psl2:8",
                   "symmetric:4"):
        print(f"wu_classify({recipe}) = {wu_classify(build_group(recipe))}")


if __name__ == "__main__":
    main()
