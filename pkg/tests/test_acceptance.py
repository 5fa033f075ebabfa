"""Acceptance suite: one test per shipped criterion, one printed line each.

Run with `pytest tests/test_acceptance.py -v`; the criterion outcomes are
listed in the "acceptance criteria" section after the summary.
"""

import json
import math
import subprocess
import sys
import time
from contextlib import contextmanager
from fractions import Fraction
from functools import lru_cache

import numpy as np
import pytest

from conftest import record_acceptance
from ctcsa.errors import OrderCapExceeded, PreconditionFailed
from ctcsa.fields import make_field
from ctcsa.groups import SubgroupSet, fitting_subgroup, subgroup_generated
from ctcsa.harness import default_config, run_suite
from ctcsa.logic import builtin, evaluate
from ctcsa.properties import (
    CSA_METHODS,
    CT_METHODS,
    is_csa,
    is_ct,
    notmal_witness,
    theorem41_extract,
    wu_classify,
)
from ctcsa.psl2 import (
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
    psl2_group,
)
from ctcsa.recipes import build_group


@contextmanager
def criterion(num: int, name: str):
    try:
        yield
    except BaseException:
        record_acceptance(f"criterion {num:02d} {name}: FAIL")
        raise
    record_acceptance(f"criterion {num:02d} {name}: PASS")


@lru_cache(maxsize=None)
def _corpus():
    """Every default corpus group, built once."""
    config = default_config()
    return tuple(
        (entry, build_group(entry.recipe, order_cap=config.caps.order_cap))
        for entry in config.entries
    )


def _small_corpus():
    return tuple((e, g) for e, g in _corpus() if g.n <= 600)


def _verify_ct_triple(group, witness):
    x, y, z = witness["indices"]
    assert y != 0  # the shared neighbor must be nontrivial
    assert group.commutator(x, y) == 0
    assert group.commutator(y, z) == 0
    assert group.commutator(x, z) != 0
    return True


def test_criterion_01_psl2_order_formula():
    with criterion(1, "psl2 order formula"):
        start = time.perf_counter()
        for q in (2, 3, 4, 5, 7, 8, 9, 11, 13, 16):
            group = psl2_group(q)
            expected = q * (q * q - 1) // math.gcd(2, q - 1)
            assert group.n == expected, (q, group.n, expected)
        elapsed = time.perf_counter() - start
        assert elapsed < 120.0, f"order sweep took {elapsed:.1f}s"


def test_criterion_02_ct_methods_agree():
    with criterion(2, "three CT methods agree on corpus <= 600"):
        for entry, group in _small_corpus():
            verdicts = {is_ct(group, m).verdict for m in CT_METHODS}
            assert len(verdicts) == 1, (entry.recipe, verdicts)


def test_criterion_03_csa_agreement_and_implication():
    with criterion(3, "CSA methods agree and CSA implies CT on corpus"):
        for entry, group in _corpus():
            malnormal = is_csa(group, "malnormal")
            if group.n <= 600 and not entry.centralizer_only:
                sentence = is_csa(group, "sentence")
                assert malnormal.verdict == sentence.verdict, entry.recipe
            if malnormal.verdict:
                assert is_ct(group, "centralizer").verdict, entry.recipe


def test_criterion_04_wu_dichotomy():
    with criterion(4, "CT dichotomy: solvable or simple of psl2 type"):
        for entry, group in _corpus():
            try:
                cls = wu_classify(group)
            except OrderCapExceeded:
                assert entry.centralizer_only or group.n > 600, entry.recipe
                continue
            assert cls.kind != "Contradiction", entry.recipe
        a5 = wu_classify(build_group("alternating:5"))
        assert a5.kind == "SimpleCT" and a5.f == 2


def test_criterion_05_csa_groups_abelian():
    with criterion(5, "every CSA corpus group is abelian"):
        csa_count = 0
        for entry, group in _corpus():
            if is_csa(group, "malnormal").verdict:
                csa_count += 1
                assert group.is_abelian, entry.recipe
        assert csa_count > 0


def test_criterion_06_psl2_never_csa():
    with criterion(6, "psl2 groups are never CSA"):
        for q in (2, 3, 4, 5, 7, 8):
            report = is_csa(psl2_group(q), "malnormal")
            assert report.verdict is False, q
        s3_like = psl2_group(2)
        witness = is_csa(s3_like, "malnormal").witness
        sub = SubgroupSet(s3_like, np.array(witness["subgroup"], dtype=np.int64))
        assert sub.size == 3
        assert sub.is_normal()


def test_criterion_07_psl2_ct_pattern():
    with criterion(7, "psl2 CT pattern with witnesses and refutation rows"):
        for q in (2, 4, 8, 16):
            assert is_ct(psl2_group(q), "centralizer").verdict is True, q
        for q in (7, 9, 11, 13):
            report = is_ct(psl2_group(q), "centralizer")
            assert report.verdict is False, q
            assert _verify_ct_triple(psl2_group(q), report.witness)
        for q in (3, 5):
            assert is_ct(psl2_group(q), "centralizer").verdict is True, q
        config = default_config()
        rows = run_suite("psl2-ct", config)
        refuting = {r.subject for r in rows if r.paper_claim == "refutes"}
        assert refuting == {"psl2:3", "psl2:5"}
        assert all(r.passes(config) for r in rows)
        big = psl2_group(16)
        start = time.perf_counter()
        assert is_ct(big, "centralizer").verdict is True
        elapsed = time.perf_counter() - start
        assert elapsed < 60.0, f"psl2:16 centralizer check took {elapsed:.1f}s"


def test_criterion_08_pq_example():
    with criterion(8, "order-21 frobenius group: CT, not CSA, extraction"):
        group = build_group("frobenius:3,7")
        assert is_ct(group, "centralizer").verdict is True
        assert is_csa(group, "malnormal").verdict is False
        g0, a = theorem41_extract(group)
        assert g0.size == 21
        assert a.size == 7
        assert a.is_abelian
        assert a.is_normal_in(g0)
        orders = sorted(a.as_group().orders.tolist())
        assert orders == [1] + [7] * 6


def test_criterion_09_extraction_both_directions():
    with criterion(9, "nonabelian-with-abelian-normal subgroup iff CT and not CSA"):
        sampled_hits = 0
        for entry, group in _small_corpus():
            ct = is_ct(group, "centralizer").verdict
            csa = is_csa(group, "malnormal").verdict
            if ct and not csa:
                assert notmal_witness(group) is not None, entry.recipe
                g0, a = theorem41_extract(group)
                assert not g0.is_abelian
                assert a.size > 1 and a.is_abelian and a.is_normal_in(g0)
                if _find_bad_subgroup(group):
                    sampled_hits += 1
            if csa:
                assert notmal_witness(group) is None, entry.recipe
                assert group.is_abelian, entry.recipe
        assert sampled_hits >= 2


def _find_bad_subgroup(group, samples: int = 50) -> bool:
    rng = np.random.default_rng(group.n + 2)
    for _ in range(samples):
        seeds = [int(v) for v in rng.integers(0, group.n, size=3)]
        sub = subgroup_generated(group, seeds)
        as_group = sub.as_group()
        if not as_group.is_abelian and fitting_subgroup(as_group).size > 1:
            return True
    return False


def test_criterion_10_sl2_4_automorphisms():
    with criterion(10, "sl2:4 automorphism relations and trivial kernel"):
        group = build_group("sl2:4")
        spec = group.field_spec
        one, zero = spec.one(), spec.zero()
        alpha = inner_automorphism(group, matrix_index(group, Mat2(one, one, zero, one)))
        beta = inner_automorphism(group, matrix_index(group, Mat2(one, zero, one, one)))
        tau = frobenius_automorphism(group)
        assert equal_automorphisms(compose(alpha, tau), compose(tau, alpha))
        assert equal_automorphisms(compose(beta, tau), compose(tau, beta))
        assert not equal_automorphisms(compose(alpha, beta), compose(beta, alpha))
        assert compose(tau, tau).is_identity()
        proj = build_group("psl2:4")
        ker = conjugation_kernel(proj, SubgroupSet(proj, np.arange(proj.n)))
        assert ker.size == 1


def test_criterion_11_char0_witnesses():
    with criterion(11, "characteristic-zero witness triples"):
        qq = make_field("rational")
        b = ProjMat2.of(Mat2(qq.zero(), qq.one(), -qq.one(), qq.zero()))
        c = ProjMat2.of(
            Mat2(
                qq.from_fraction(3, 5), qq.from_fraction(4, 5),
                qq.from_fraction(-4, 5), qq.from_fraction(3, 5),
            )
        )
        assert b.rep * c.rep == c.rep * b.rep
        assert commutes(b, c)
        with pytest.raises(PreconditionFailed):
            char0_ct_counterexample(qq, qq.from_int(0), qq.from_int(1))
        rationals = [
            Fraction(n, d)
            for d in range(1, 8)
            for n in range(-12, 13)
            if math.gcd(n, d) == 1
        ]
        assert all(x * x + y * y != -1 for x in rationals for y in rationals)

        qi = make_field("gaussian-rational")
        a, b2, c2 = char0_ct_counterexample(qi, qi.i(), qi.zero())
        assert commutes(a, b2) and commutes(b2, c2) and not commutes(a, c2)

        t, u, v = gaussian_tuv_example()
        assert commutes(u, t) and commutes(u, v) and not commutes(t, v)


def test_criterion_12_sentences_match_deciders():
    with criterion(12, "sentence evaluation matches native deciders"):
        ct_sentence = builtin("CT")
        csa_pair = builtin("CSA")
        mal, notmal = builtin("MAL"), builtin("NOTMAL")
        for entry, group in _small_corpus():
            sent_ct = evaluate(ct_sentence, group).verdict
            assert sent_ct == is_ct(group, "centralizer").verdict, entry.recipe
            sent_csa = all(evaluate(s, group).verdict for s in csa_pair)
            assert sent_csa == is_csa(group, "malnormal").verdict, entry.recipe
            assert evaluate(notmal, group).verdict == (
                not evaluate(mal, group).verdict
            ), entry.recipe


def test_criterion_13_nonabelian_products_not_ct():
    with criterion(13, "nonabelian product controls are not CT"):
        for recipe in (
            "direct(symmetric:3,symmetric:3)",
            "direct(alternating:4,cyclic:2)",
        ):
            report = is_ct(build_group(recipe), "centralizer")
            assert report.verdict is False, recipe
            assert _verify_ct_triple(build_group(recipe), report.witness)


def test_criterion_14_determinism_and_budget():
    with criterion(14, "byte-identical reruns within the time budget"):
        docs = []
        for _ in range(2):
            start = time.perf_counter()
            proc = subprocess.run(
                [sys.executable, "-m", "ctcsa", "corpus", "run"],
                capture_output=True, text=True, timeout=600,
            )
            elapsed = time.perf_counter() - start
            assert proc.returncode == 0, proc.stderr
            assert elapsed < 300.0, f"full run took {elapsed:.1f}s"
            doc = json.loads(proc.stdout)
            doc.pop("generated_at")
            docs.append(json.dumps(doc, sort_keys=True))
        assert docs[0] == docs[1]
