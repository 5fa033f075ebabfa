"""First-order sentences over the group signature: parsing, the shipped
axiom sentences, negation duality, and evaluation with witnesses."""

from ctcsa.logic import builtin, evaluate, negate_sentence, parse, to_text
from ctcsa.recipes import build_group


def main() -> None:
    ct = builtin("CT")
    print("CT sentence:", to_text(ct))
    mal = builtin("MAL")
    print("MAL sentence:", to_text(mal))
    print("negate(MAL) == NOTMAL:", negate_sentence(mal) == builtin("NOTMAL"))

    roundtrip = parse(to_text(ct))
    print("parse(to_text(CT)) == CT:", roundtrip == ct)

    for recipe in ("cyclic:6", "symmetric:3", "dihedral:4", "psl2:7"):
        group = build_group(recipe)
        result = evaluate(ct, group)
        line = f"CT over {recipe}: {result.verdict}"
        if result.assignment is not None:
            bindings = {v: group.labels[i] for v, i in result.assignment.items()}
            line += f"  counterexample {bindings}"
        print(line)

    custom = parse("exists x,y (x != 1 & y != 1 & [x,y] != 1)")
    print("some pair does not commute over symmetric:3:",
          evaluate(custom, build_group("symmetric:3")).verdict)


if __name__ == "__main__":
    main()
