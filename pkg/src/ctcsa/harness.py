"""Corpus configuration, named check suites, and report emission.

Each suite turns one finitely checkable statement into deterministic rows.
A row records what the deciders computed next to what this artifact expects,
plus a paper_claim tag saying how the published claim relates to the row:
"confirms" when they agree, "refutes" when the computation contradicts the
claim, "unaddressed" when the claim does not speak to the row.  Refuting
rows are accepted only when the config lists them, so a run stays green
while the discrepancy stays visible.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Iterator, Optional

import numpy as np

from .errors import ConfigError, PreconditionFailed, WorkbenchError
from .fields import make_field
from .groups import (
    FiniteGroup,
    NORMAL_ENUM_CAP,
    SubgroupSet,
    center,
    default_order_cap,
    fitting_subgroup,
    is_simple,
    is_solvable,
    maximal_abelian_subgroups,
    monolith,
    normal_subgroups,
    subgroup_generated,
)
from .logic import builtin, evaluate
from .properties import (
    CSA_METHODS,
    CT_METHODS,
    TRIPLE_SCAN_CAP,
    is_csa,
    is_ct,
    notmal_witness,
    theorem41_extract,
    verify_wu_solvable_structure,
    wu_classify,
)
from .psl2 import (
    Mat2,
    ProjMat2,
    char0_ct_counterexample,
    commutes,
    compose,
    conjugation_kernel,
    equal_automorphisms,
    frobenius_automorphism,
    gaussian_tuv_example,
    inner_automorphism,
    matrix_index,
)
from .recipes import build_group, normalize_recipe, parse_recipe

__all__ = [
    "Caps",
    "CorpusEntry",
    "Config",
    "SuiteRow",
    "SUITE_NAMES",
    "default_config",
    "config_from_dict",
    "config_to_dict",
    "load_config",
    "config_hash",
    "run_suite",
    "run_all",
    "rows_pass",
    "failing_rows",
    "emit_json",
    "emit_markdown",
    "group_info",
]

REPORT_VERSION = "1"


# ---------------------------------------------------------------------------
# configuration


@dataclass(frozen=True)
class Caps:
    # explicit value > CTCSA_ORDER_CAP env var > built-in default
    order_cap: int = field(default_factory=default_order_cap)
    triple_scan_cap: int = TRIPLE_SCAN_CAP
    normal_enum_cap: int = NORMAL_ENUM_CAP


@dataclass(frozen=True)
class CorpusEntry:
    recipe: str
    nickname: Optional[str] = None
    centralizer_only: bool = False  # too large for anything but CT-by-centralizer


@dataclass(frozen=True)
class Config:
    entries: tuple
    caps: Caps
    known_refutations: frozenset  # of (suite, subject, check)

    def entry(self, recipe: str) -> Optional[CorpusEntry]:
        for e in self.entries:
            if e.recipe == recipe:
                return e
        return None


def default_config() -> Config:
    entries = []
    for n in range(1, 31):
        entries.append(CorpusEntry(f"cyclic:{n}"))
    for n in range(3, 13):
        entries.append(CorpusEntry(f"dihedral:{n}"))
    for n in range(3, 6):
        entries.append(CorpusEntry(f"symmetric:{n}"))
    for n in (4, 5):
        entries.append(CorpusEntry(f"alternating:{n}"))
    for p, q in ((2, 3), (3, 7), (5, 11), (2, 7)):
        entries.append(CorpusEntry(f"frobenius:{p},{q}"))
    for q in (2, 3, 4, 5, 7, 8, 9, 11, 13):
        entries.append(CorpusEntry(f"psl2:{q}"))
    for q in (2, 3, 4, 5, 7, 8, 9, 11, 13):
        entries.append(CorpusEntry(f"sl2:{q}"))
    entries.append(CorpusEntry("psl2:16", centralizer_only=True))
    entries.append(CorpusEntry("direct(symmetric:3,symmetric:3)"))
    entries.append(CorpusEntry("direct(alternating:4,cyclic:2)"))
    entries.append(
        CorpusEntry("semidirect(direct(cyclic:2,cyclic:2),cyclic:3,rotate-involutions)")
    )
    refutations = frozenset(("psl2-ct", f"psl2:{q}", "ct") for q in (3, 5))
    return Config(tuple(entries), Caps(), refutations)


def config_from_dict(data: dict) -> Config:
    if not isinstance(data, dict):
        raise ConfigError("config must be a JSON object")
    unknown = set(data) - {"corpus", "caps", "known_refutations"}
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    raw_entries = data.get("corpus")
    if not isinstance(raw_entries, list) or not raw_entries:
        raise ConfigError("config needs a nonempty 'corpus' list")
    entries = []
    for item in raw_entries:
        if isinstance(item, str):
            item = {"recipe": item}
        if not isinstance(item, dict) or "recipe" not in item:
            raise ConfigError(f"corpus entry {item!r} needs a 'recipe'")
        bad = set(item) - {"recipe", "nickname", "centralizer_only"}
        if bad:
            raise ConfigError(f"unknown corpus entry keys: {sorted(bad)}")
        try:
            recipe = normalize_recipe(item["recipe"])
        except WorkbenchError as e:
            raise ConfigError(f"bad recipe {item['recipe']!r}: {e}")
        entries.append(
            CorpusEntry(
                recipe,
                item.get("nickname"),
                bool(item.get("centralizer_only", False)),
            )
        )
    caps_data = data.get("caps", {})
    bad = set(caps_data) - {"order_cap", "triple_scan_cap", "normal_enum_cap"}
    if bad:
        raise ConfigError(f"unknown caps keys: {sorted(bad)}")
    caps = Caps(
        int(caps_data.get("order_cap", default_order_cap())),
        int(caps_data.get("triple_scan_cap", TRIPLE_SCAN_CAP)),
        int(caps_data.get("normal_enum_cap", NORMAL_ENUM_CAP)),
    )
    if min(caps.order_cap, caps.triple_scan_cap, caps.normal_enum_cap) <= 0:
        raise ConfigError("caps must be positive")
    refs = []
    for item in data.get("known_refutations", []):
        if not isinstance(item, dict) or set(item) != {"suite", "subject", "check"}:
            raise ConfigError(
                "known_refutations entries need exactly suite, subject, check"
            )
        refs.append((item["suite"], item["subject"], item["check"]))
    return Config(tuple(entries), caps, frozenset(refs))


def config_to_dict(config: Config) -> dict:
    return {
        "corpus": [
            {
                "recipe": e.recipe,
                **({"nickname": e.nickname} if e.nickname else {}),
                **({"centralizer_only": True} if e.centralizer_only else {}),
            }
            for e in config.entries
        ],
        "caps": {
            "order_cap": config.caps.order_cap,
            "triple_scan_cap": config.caps.triple_scan_cap,
            "normal_enum_cap": config.caps.normal_enum_cap,
        },
        "known_refutations": [
            {"suite": s, "subject": g, "check": c}
            for s, g, c in sorted(config.known_refutations)
        ],
    }


def load_config(path: str) -> Config:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as e:
        raise ConfigError(f"cannot read config {path}: {e}")
    except json.JSONDecodeError as e:
        raise ConfigError(f"config {path} is not valid JSON: {e}")
    return config_from_dict(data)


def config_hash(config: Config) -> str:
    canonical = json.dumps(config_to_dict(config), sort_keys=True)
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


# ---------------------------------------------------------------------------
# rows


@dataclass
class SuiteRow:
    suite: str
    subject: str
    check: str
    expected: bool
    computed: bool
    paper_claim: str  # confirms | refutes | unaddressed
    claim: str  # the statement under check, in this artifact's words
    witness: Optional[dict] = None
    error: Optional[str] = None

    def passes(self, config: Config) -> bool:
        if self.error is not None:
            return False
        if self.computed != self.expected:
            return False
        if self.paper_claim == "refutes":
            return (self.suite, self.subject, self.check) in config.known_refutations
        return True

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "subject": self.subject,
            "check": self.check,
            "expected": self.expected,
            "computed": self.computed,
            "paper_claim": self.paper_claim,
            "claim": self.claim,
            "witness": self.witness,
            "error": self.error,
        }


def _row(suite, subject, check, expected, compute, claim,
         paper_claim="confirms") -> SuiteRow:
    """Runs one check now, capturing workbench errors as row-level failures."""
    try:
        computed, witness = compute()
        return SuiteRow(
            suite, subject, check, expected, bool(computed), paper_claim, claim,
            witness,
        )
    except WorkbenchError as e:
        return SuiteRow(
            suite, subject, check, expected, False, paper_claim, claim,
            None, f"{type(e).__name__}: {e}",
        )
    except AssertionError as e:
        return SuiteRow(
            suite, subject, check, expected, False, paper_claim, claim,
            None, f"postcondition failed: {e}",
        )


def _build_row_error(suite: str, entry: CorpusEntry, e: WorkbenchError) -> SuiteRow:
    return SuiteRow(
        suite, entry.recipe, "build", True, False, "unaddressed",
        "the recipe builds within the configured caps",
        None, f"{type(e).__name__}: {e}",
    )


def _corpus_groups(
    config: Config,
    suite: str,
    rows: list,
    *,
    max_order: Optional[int] = None,
    skip_centralizer_only: bool = True,
) -> Iterator:
    """Yields (entry, group); a failed build becomes an error row instead."""
    for entry in config.entries:
        if skip_centralizer_only and entry.centralizer_only:
            continue
        try:
            group = build_group(entry.recipe, order_cap=config.caps.order_cap)
        except WorkbenchError as e:
            rows.append(_build_row_error(suite, entry, e))
            continue
        if max_order is not None and group.n > max_order:
            continue
        yield entry, group


# ---------------------------------------------------------------------------
# the suites


def _suite_lemma22(config: Config) -> list:
    rows = []
    cap = config.caps.triple_scan_cap
    for entry, group in _corpus_groups(
        config, "lemma22-equivalence", rows, max_order=cap
    ):
        def agree_ct(group=group):
            verdicts = {m: is_ct(group, m, scan_cap=cap).verdict for m in CT_METHODS}
            return len(set(verdicts.values())) == 1, {"verdicts": verdicts}

        rows.append(_row(
            "lemma22-equivalence", entry.recipe, "ct-methods-agree", True, agree_ct,
            "centralizer abelianness, the exhaustive triple scan, and pairwise "
            "intersection of maximal abelian subgroups give one CT verdict",
        ))

        def agree_csa(group=group):
            verdicts = {m: is_csa(group, m, scan_cap=cap).verdict for m in CSA_METHODS}
            return len(set(verdicts.values())) == 1, {"verdicts": verdicts}

        rows.append(_row(
            "lemma22-equivalence", entry.recipe, "csa-methods-agree", True, agree_csa,
            "malnormality of maximal abelian subgroups and the sentence pair "
            "give one CSA verdict",
        ))
    return rows


def _suite_wu(config: Config) -> list:
    rows = []
    for entry, group in _corpus_groups(config, "wu", rows, max_order=600):
        holder = {}

        def classify(group=group, holder=holder):
            cls = wu_classify(group)
            holder["cls"] = cls
            return cls.kind != "Contradiction", {"classification": str(cls)}

        rows.append(_row(
            "wu", entry.recipe, "dichotomy", True, classify,
            "a finite CT group is solvable or isomorphic to a projective "
            "special linear 2x2 group over a field of order 2^f, f >= 2",
        ))
        cls = holder.get("cls")
        if cls is not None and cls.kind == "SolvableCT":
            def structure(group=group):
                report = verify_wu_solvable_structure(group)
                return report.verdict, report.witness

            rows.append(_row(
                "wu", entry.recipe, "solvable-structure", True, structure,
                "a solvable CT group has an abelian Fitting subgroup on which "
                "conjugation from outside acts without fixed points",
            ))
    return rows


def _suite_csa_abelian(config: Config) -> list:
    rows = []
    for entry, group in _corpus_groups(config, "csa-abelian", rows):
        holder = {}

        def implies_ct(group=group, holder=holder):
            csa = is_csa(group, "malnormal")
            holder["csa"] = csa.verdict
            if not csa.verdict:
                return True, {"csa": False}
            ct = is_ct(group, "centralizer")
            return ct.verdict, {"csa": True, "ct": ct.verdict}

        rows.append(_row(
            "csa-abelian", entry.recipe, "csa-implies-ct", True, implies_ct,
            "conjugate separation forces commutative transitivity",
        ))
        if holder.get("csa"):
            def abelian(group=group):
                return bool(group.is_abelian), {"order": group.n}

            rows.append(_row(
                "csa-abelian", entry.recipe, "csa-implies-abelian", True, abelian,
                "a finite group whose maximal abelian subgroups are all "
                "malnormal is abelian",
            ))
    return rows


def _suite_pq_example(config: Config) -> list:
    rows = []
    for entry in config.entries:
        tree = parse_recipe(entry.recipe)
        if tree[0] != "family" or tree[1] != "frobenius":
            continue
        p, q = tree[2]
        try:
            group = build_group(entry.recipe, order_cap=config.caps.order_cap)
        except WorkbenchError as e:
            rows.append(_build_row_error("pq-example", entry, e))
            continue

        def ct(group=group):
            report = is_ct(group, "centralizer")
            return report.verdict, report.witness

        rows.append(_row(
            "pq-example", entry.recipe, "ct", True, ct,
            "the nonabelian group of order p*q with cyclic normal part is "
            "commutative transitive",
        ))

        def not_csa(group=group):
            report = is_csa(group, "malnormal")
            return not report.verdict, report.witness

        rows.append(_row(
            "pq-example", entry.recipe, "not-csa", True, not_csa,
            "the normal cyclic subgroup of order q is maximal abelian but "
            "not malnormal, so the group is not conjugately separated",
        ))

        def extraction(group=group, p=p, q=q):
            g0, a = theorem41_extract(group, scan_cap=config.caps.triple_scan_cap)
            sub = a.as_group()
            cyclic_of_q = sorted(sub.orders.tolist()) == [1] + [q] * (q - 1)
            ok = g0.size == p * q and a.size == q and cyclic_of_q
            return ok, {"g0_size": g0.size, "a_size": a.size, "a_cyclic": cyclic_of_q}

        rows.append(_row(
            "pq-example", entry.recipe, "extraction", True, extraction,
            "the constructive witness subgroup is the whole group and its "
            "abelian normal core is the cyclic group of order q",
        ))
    return rows


_PSL2_CSA_RANGE = (2, 3, 4, 5, 7, 8)


def _suite_psl2_csa(config: Config) -> list:
    rows = []
    for entry in config.entries:
        tree = parse_recipe(entry.recipe)
        if tree[0] != "family" or tree[1] != "psl2" or entry.centralizer_only:
            continue
        (q,) = tree[2]
        if q not in _PSL2_CSA_RANGE:
            continue
        try:
            group = build_group(entry.recipe, order_cap=config.caps.order_cap)
        except WorkbenchError as e:
            rows.append(_build_row_error("psl2-csa", entry, e))
            continue

        def not_csa(group=group):
            report = is_csa(group, "malnormal")
            return not report.verdict, report.witness

        rows.append(_row(
            "psl2-csa", entry.recipe, "not-csa", True, not_csa,
            "no projective special linear 2x2 group over a finite field is "
            "conjugately separated abelian",
        ))
    return rows


def _suite_psl2_ct(config: Config) -> list:
    rows = []
    for entry in config.entries:
        tree = parse_recipe(entry.recipe)
        if tree[0] != "family" or tree[1] != "psl2":
            continue
        (q,) = tree[2]
        expected = (q % 2 == 0) or q <= 5
        if q in (3, 5):
            paper_claim = "refutes"
            claim = (
                "computed ground truth: this small group is commutative "
                "transitive, though the published claim for odd "
                "characteristic says it never is"
            )
        elif q % 2 == 0:
            paper_claim = "confirms"
            claim = (
                "projective special linear 2x2 groups over fields of "
                "characteristic 2 are commutative transitive"
            )
        else:
            paper_claim = "confirms"
            claim = (
                "projective special linear 2x2 groups over larger fields of "
                "odd characteristic are not commutative transitive"
            )
        try:
            group = build_group(entry.recipe, order_cap=config.caps.order_cap)
        except WorkbenchError as e:
            rows.append(_build_row_error("psl2-ct", entry, e))
            continue

        def ct(group=group):
            report = is_ct(group, "centralizer")
            return report.verdict, report.witness

        rows.append(_row(
            "psl2-ct", entry.recipe, "ct", expected, ct, claim, paper_claim
        ))
    return rows


def _suite_thm41(config: Config) -> list:
    rows = []
    cap = config.caps.triple_scan_cap
    for entry, group in _corpus_groups(config, "thm41", rows, max_order=cap):
        ct = is_ct(group, "centralizer").verdict
        csa = is_csa(group, "malnormal").verdict
        if ct and not csa:
            def forward(group=group):
                g0, a = theorem41_extract(group, scan_cap=cap)
                return True, {"g0_size": g0.size, "a_size": a.size}

            rows.append(_row(
                "thm41", entry.recipe, "extract-postconditions", True, forward,
                "a commutative transitive group that is not conjugately "
                "separated contains a nonabelian subgroup with a nontrivial "
                "abelian normal subgroup, found constructively",
            ))
        if csa:
            def no_witness(group=group):
                triple = notmal_witness(group, scan_cap=cap)
                return triple is None, None

            rows.append(_row(
                "thm41", entry.recipe, "no-witness", True, no_witness,
                "a conjugately separated group admits no malnormality "
                "violation triple",
            ))
        if ct:
            bad = _sampled_bad_subgroup(group)
            if bad is not None:
                def converse(csa=csa, bad=bad):
                    return not csa, {"subgroup_size": bad}

                rows.append(_row(
                    "thm41", entry.recipe, "bad-subgroup-implies-not-csa", True,
                    converse,
                    "finding a nonabelian subgroup with a nontrivial abelian "
                    "normal subgroup rules out conjugate separation",
                ))
    return rows


def _sampled_bad_subgroup(group: FiniteGroup, samples: int = 50) -> Optional[int]:
    """Size of a sampled nonabelian subgroup with nontrivial Fitting part."""
    rng = np.random.default_rng(group.n + 2)
    for _ in range(samples):
        seeds = [int(v) for v in rng.integers(0, group.n, size=3)]
        sub = subgroup_generated(group, seeds)
        as_group = sub.as_group()
        if not as_group.is_abelian and fitting_subgroup(as_group).size > 1:
            return sub.size
    return None


_MONOLITH_SIZES = {
    "symmetric:3": 3,
    "symmetric:4": 4,
    "alternating:4": 4,
    "alternating:5": 60,
    "psl2:7": 168,
    "frobenius:3,7": 7,
}

_NO_MONOLITH = {
    "cyclic:6",
    "cyclic:12",
    "cyclic:30",
    "direct(symmetric:3,symmetric:3)",
}


def _suite_monolith(config: Config) -> list:
    rows = []
    cap = config.caps.normal_enum_cap
    for entry, group in _corpus_groups(config, "monolith", rows, max_order=cap):
        mono = monolith(group, cap=cap)
        if mono is not None:
            def least(group=group, mono=mono):
                normals = normal_subgroups(group, cap=cap)
                ok = all(
                    mono.members <= sub.members for sub in normals if sub.size > 1
                )
                return ok, {"monolith_size": mono.size}

            rows.append(_row(
                "monolith", entry.recipe, "contained-in-every-normal", True, least,
                "the unique minimal normal subgroup lies inside every "
                "nontrivial normal subgroup",
            ))
        if is_simple(group, cap=cap):
            def self_mono(group=group, mono=mono):
                return mono is not None and mono.size == group.n, None

            rows.append(_row(
                "monolith", entry.recipe, "simple-group-is-own-monolith", True,
                self_mono,
                "a simple group is monolithic with itself as monolith",
            ))
        if entry.recipe in _MONOLITH_SIZES:
            size = _MONOLITH_SIZES[entry.recipe]

            def known_size(mono=mono, size=size):
                return mono is not None and mono.size == size, {
                    "monolith_size": None if mono is None else mono.size
                }

            rows.append(_row(
                "monolith", entry.recipe, "known-monolith-size", True, known_size,
                "the monolith has the structurally forced size",
            ))
        if entry.recipe in _NO_MONOLITH:
            def no_mono(mono=mono):
                return mono is None, None

            rows.append(_row(
                "monolith", entry.recipe, "no-monolith", True, no_mono,
                "several minimal normal subgroups coexist, so no monolith",
            ))
    return rows


def _suite_aut_sl2(config: Config) -> list:
    rows = []
    try:
        sl24 = build_group("sl2:4", order_cap=config.caps.order_cap)
        spec = sl24.field_spec
        one, zero = spec.one(), spec.zero()
        alpha = inner_automorphism(sl24, matrix_index(sl24, Mat2(one, one, zero, one)))
        beta = inner_automorphism(sl24, matrix_index(sl24, Mat2(one, zero, one, one)))
        tau = frobenius_automorphism(sl24)
    except WorkbenchError as e:
        rows.append(_build_row_error("aut-sl2", CorpusEntry("sl2:4"), e))
        return rows

    checks = [
        ("alpha-tau-commute", True,
         lambda: (equal_automorphisms(compose(alpha, tau), compose(tau, alpha)), None),
         "conjugation by the upper transvection commutes with entrywise squaring"),
        ("beta-tau-commute", True,
         lambda: (equal_automorphisms(compose(beta, tau), compose(tau, beta)), None),
         "conjugation by the lower transvection commutes with entrywise squaring"),
        ("alpha-beta-noncommute", True,
         lambda: (not equal_automorphisms(compose(alpha, beta), compose(beta, alpha)),
                  None),
         "the two transvection conjugations do not commute with each other"),
        ("tau-squared-identity", True,
         lambda: (compose(tau, tau).is_identity(), None),
         "entrywise squaring has order two over the four-element field"),
    ]
    for check, expected, fn, claim in checks:
        rows.append(_row("aut-sl2", "sl2:4", check, expected, fn, claim))

    def tau8():
        group = build_group("sl2:8", order_cap=config.caps.order_cap)
        t = frobenius_automorphism(group)
        tt = compose(t, t)
        return (
            not t.is_identity()
            and not tt.is_identity()
            and compose(t, tt).is_identity()
        ), None

    rows.append(_row(
        "aut-sl2", "sl2:8", "tau-order-three", True, tau8,
        "entrywise squaring has order three over the eight-element field",
    ))

    def kernel():
        group = build_group("psl2:4", order_cap=config.caps.order_cap)
        ker = conjugation_kernel(group, SubgroupSet(group, np.arange(group.n)))
        return ker.size == 1, {"kernel_size": ker.size}

    rows.append(_row(
        "aut-sl2", "psl2:4", "conjugation-kernel-trivial", True, kernel,
        "only the identity acts trivially on the projective group by "
        "conjugation",
    ))
    return rows


def _suite_char0(config: Config) -> list:
    rows = []

    def gaussian_abc():
        qi = make_field("gaussian-rational")
        a, b, c = char0_ct_counterexample(qi, qi.i(), qi.zero())
        ok = commutes(a, b) and commutes(b, c) and not commutes(a, c)
        return ok, {"a": a.rep.label(), "b": b.rep.label(), "c": c.rep.label()}

    rows.append(_row(
        "char0-witness", "gaussian-rational", "abc-relations", True, gaussian_abc,
        "with a square root of minus one adjoined, the rotation-style triple "
        "satisfies AB = BA and BC = CB while AC differs from CA, so the "
        "projective group is not commutative transitive",
    ))

    def rational_bc():
        qq = make_field("rational")
        one, zero = qq.one(), qq.zero()
        b = ProjMat2.of(Mat2(zero, one, -one, zero))
        c = ProjMat2.of(Mat2(
            qq.from_fraction(3, 5), qq.from_fraction(4, 5),
            qq.from_fraction(-4, 5), qq.from_fraction(3, 5),
        ))
        strict = b.rep * c.rep == c.rep * b.rep
        return strict and commutes(b, c), {"b": b.rep.label(), "c": c.rep.label()}

    rows.append(_row(
        "char0-witness", "rational", "bc-commute", True, rational_bc,
        "the quarter turn and the 3/5-4/5 rotation commute over the "
        "rationals, strictly and projectively",
    ))

    def rational_no_xy():
        qq = make_field("rational")
        try:
            char0_ct_counterexample(qq, qq.from_int(0), qq.from_int(1))
            return False, None
        except PreconditionFailed:
            pass
        from fractions import Fraction
        from math import gcd

        vals = [
            Fraction(n, d)
            for d in range(1, 8)
            for n in range(-12, 13)
            if gcd(n, d) == 1
        ]
        none_found = all(x * x + y * y != -1 for x in vals for y in vals)
        return none_found, {"search_space": len(vals) ** 2}

    rows.append(_row(
        "char0-witness", "rational", "no-squares-summing-to-minus-one", True,
        rational_no_xy,
        "no pair of rationals has squares summing to minus one, so the A "
        "matrix of the triple cannot be realized over the rationals",
    ))

    def tuv():
        t, u, v = gaussian_tuv_example()
        ok = commutes(u, t) and commutes(u, v) and not commutes(t, v)
        return ok, {"t": t.rep.label(), "u": u.rep.label(), "v": v.rep.label()}

    rows.append(_row(
        "char0-witness", "gaussian-rational", "tuv-relations", True, tuv,
        "with a square root of minus one present, U commutes with both T "
        "and V while T and V do not commute projectively",
    ))
    return rows


def _suite_axiomatic(config: Config) -> list:
    rows = []
    cap = config.caps.triple_scan_cap
    for entry, group in _corpus_groups(config, "axiomatic", rows, max_order=cap):
        ct_eval = evaluate(builtin("CT"), group).verdict
        mal_eval = evaluate(builtin("MAL"), group).verdict
        notmal_eval = evaluate(builtin("NOTMAL"), group).verdict

        def ct_agrees(group=group, ct_eval=ct_eval):
            native = is_ct(group, "centralizer").verdict
            return ct_eval == native, {"sentence": ct_eval, "decider": native}

        rows.append(_row(
            "axiomatic", entry.recipe, "ct-sentence-agrees", True, ct_agrees,
            "the universal sentence for commutative transitivity and the "
            "structural decider agree",
        ))

        def csa_agrees(group=group, ct_eval=ct_eval, mal_eval=mal_eval):
            native = is_csa(group, "malnormal").verdict
            sentence = ct_eval and mal_eval
            return sentence == native, {"sentence": sentence, "decider": native}

        rows.append(_row(
            "axiomatic", entry.recipe, "csa-sentence-pair-agrees", True, csa_agrees,
            "the two-sentence axiomatization of conjugate separation and the "
            "malnormality decider agree",
        ))

        def duality(mal_eval=mal_eval, notmal_eval=notmal_eval):
            return notmal_eval == (not mal_eval), {
                "mal": mal_eval, "notmal": notmal_eval
            }

        rows.append(_row(
            "axiomatic", entry.recipe, "notmal-negates-mal", True, duality,
            "the existential dual sentence holds exactly when the universal "
            "malnormality sentence fails",
        ))
    return rows


_SUITES: dict = {
    "lemma22-equivalence": _suite_lemma22,
    "wu": _suite_wu,
    "csa-abelian": _suite_csa_abelian,
    "pq-example": _suite_pq_example,
    "psl2-csa": _suite_psl2_csa,
    "psl2-ct": _suite_psl2_ct,
    "thm41": _suite_thm41,
    "monolith": _suite_monolith,
    "aut-sl2": _suite_aut_sl2,
    "char0-witness": _suite_char0,
    "axiomatic": _suite_axiomatic,
}

SUITE_NAMES = tuple(_SUITES)


def run_suite(name: str, config: Optional[Config] = None) -> list:
    if name not in _SUITES:
        raise ConfigError(f"unknown suite {name!r}; known: {', '.join(SUITE_NAMES)}")
    config = config or default_config()
    rows = _SUITES[name](config)
    rows.sort(key=lambda r: (r.suite, r.subject, r.check))
    return rows


def run_all(config: Optional[Config] = None) -> dict:
    config = config or default_config()
    return {name: run_suite(name, config) for name in SUITE_NAMES}


def failing_rows(rows, config: Config) -> list:
    return [r for r in rows if not r.passes(config)]


def rows_pass(rows, config: Config) -> bool:
    return not failing_rows(rows, config)


# ---------------------------------------------------------------------------
# reports


def _as_suites_dict(results) -> dict:
    if isinstance(results, dict):
        return results
    suites: dict = {}
    for row in results:
        suites.setdefault(row.suite, []).append(row)
    return suites


def emit_json(results, config: Config) -> str:
    suites = _as_suites_dict(results)
    doc = {
        "version": REPORT_VERSION,
        "config_hash": config_hash(config),
        "generated_at": datetime.now(timezone.utc).isoformat(),
        "suites": [
            {
                "name": name,
                "rows": [
                    r.to_dict()
                    for r in sorted(suites[name], key=lambda r: (r.subject, r.check))
                ],
            }
            for name in sorted(suites)
        ],
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def emit_markdown(results, config: Config) -> str:
    suites = _as_suites_dict(results)
    lines = [
        "# Check suite report",
        "",
        f"Config hash: `{config_hash(config)}`",
        "",
        f"Generated: {datetime.now(timezone.utc).isoformat()}",
        "",
    ]
    for name in sorted(suites):
        rows = sorted(suites[name], key=lambda r: (r.subject, r.check))
        lines.append(f"## {name}")
        lines.append("")
        lines.append(
            "| subject | check | expected | computed | paper claim "
            "| status | statement |"
        )
        lines.append("|---|---|---|---|---|---|---|")
        for r in rows:
            if r.error:
                status = "error"
            elif not r.passes(config):
                status = "FAIL"
            elif r.paper_claim == "refutes":
                status = "pass (known refutation)"
            else:
                status = "pass"
            lines.append(
                f"| {r.subject} | {r.check} | {r.expected} | {r.computed} "
                f"| {r.paper_claim} | {status} | {r.claim} |"
            )
        lines.append("")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# single-group summaries


def group_info(recipe: str, config: Optional[Config] = None) -> dict:
    config = config or default_config()
    canonical = normalize_recipe(recipe)
    group = build_group(canonical, order_cap=config.caps.order_cap)
    info = {
        "recipe": canonical,
        "order": group.n,
        "abelian": bool(group.is_abelian),
        "center_size": center(group).size,
        "solvable": is_solvable(group),
        "ct": is_ct(group, "centralizer").verdict,
        "maximal_abelian_count": len(maximal_abelian_subgroups(group)),
    }
    entry = config.entry(canonical)
    heavy_ok = group.n <= config.caps.normal_enum_cap and not (
        entry is not None and entry.centralizer_only
    )
    if heavy_ok:
        mono = monolith(group, cap=config.caps.normal_enum_cap)
        info["simple"] = is_simple(group, cap=config.caps.normal_enum_cap)
        info["monolith_size"] = None if mono is None else mono.size
        info["csa"] = is_csa(group, "malnormal").verdict
    else:
        info["simple"] = None
        info["monolith_size"] = None
        info["csa"] = None
        info["skipped"] = "normal-subgroup analyses skipped above cap"
    return info
