"""Run the reproduction suites over a compact corpus and emit a report.

The full default corpus is the CLI's job (`ctcsa corpus run`); this demo
keeps the corpus small so it finishes in seconds.
"""

from ctcsa.harness import (
    config_from_dict,
    emit_markdown,
    failing_rows,
    run_suite,
)

SUITES = ("pq-example", "psl2-ct", "char0-witness", "wu")


def main() -> None:
    config = config_from_dict(
        {
            "corpus": [
                "cyclic:6",
                "symmetric:3",
                "frobenius:3,7",
                "psl2:3",
                "psl2:4",
                "psl2:7",
            ],
            "known_refutations": [
                {"suite": "psl2-ct", "subject": "psl2:3", "check": "ct"}
            ],
        }
    )
    all_rows = []
    for name in SUITES:
        rows = run_suite(name, config)
        bad = failing_rows(rows, config)
        print(f"{name}: {len(rows)} rows, {len(bad)} failing")
        all_rows.extend(rows)
    print()
    print(emit_markdown(all_rows, config))


if __name__ == "__main__":
    main()
