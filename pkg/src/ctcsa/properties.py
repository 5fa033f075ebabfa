"""Deciders for commutative transitivity and conjugate separation.

Each property has more than one route to a verdict so the routes can be
cross-checked: CT via centralizer abelianness, an exhaustive triple scan, or
pairwise intersections of maximal abelian subgroups; CSA via malnormality of
maximal abelian subgroups or via sentence evaluation.  A false verdict always
carries a witness that re-verifies against the Cayley table.

Verdicts here are computed ground truth only; how they relate to published
claims is recorded at the reporting layer, not in this module.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import IsCSA, NotCT, NotSolvableCT, OrderCapExceeded
from .groups import (
    FiniteGroup,
    SubgroupSet,
    centralizer,
    fitting_subgroup,
    is_isomorphic,
    is_malnormal,
    is_simple,
    is_solvable,
    maximal_abelian_subgroups,
    normal_closure,
    subgroup_generated,
)
from .logic import builtin, evaluate
from .psl2 import psl2_group, psl2_order

__all__ = [
    "PropertyReport",
    "WuClassification",
    "TRIPLE_SCAN_CAP",
    "is_ct",
    "is_csa",
    "notmal_witness",
    "theorem41_extract",
    "wu_classify",
    "verify_wu_solvable_structure",
    "csa_implies_abelian_scan",
]

TRIPLE_SCAN_CAP = 600

CT_METHODS = ("centralizer", "triple-scan", "maximal-abelian")
CSA_METHODS = ("malnormal", "sentence")


@dataclass
class PropertyReport:
    group: str
    property: str
    method: str
    verdict: bool
    witness: Optional[dict] = None
    paper_claim: Optional[str] = None
    elapsed: float = 0.0

    def to_dict(self) -> dict:
        return {
            "group": self.group,
            "property": self.property,
            "method": self.method,
            "verdict": self.verdict,
            "witness": self.witness,
            "paper_claim": self.paper_claim,
            "elapsed": self.elapsed,
        }


def _triple_witness(group: FiniteGroup, x: int, y: int, z: int) -> dict:
    return {
        "kind": "triple",
        "indices": [int(x), int(y), int(z)],
        "labels": [group.labels[x], group.labels[y], group.labels[z]],
    }


def _first_noncommuting_pair(group: FiniteGroup, members: np.ndarray):
    sub = group.table[np.ix_(members, members)]
    bad = sub != sub.T
    if not bad.any():
        return None
    a, b = np.unravel_index(int(np.argmax(bad)), bad.shape)
    return int(members[a]), int(members[b])


# ---------------------------------------------------------------------------
# CT


def is_ct(group: FiniteGroup, method: str = "centralizer", *,
          scan_cap: Optional[int] = None) -> PropertyReport:
    """Whether commuting is transitive on nontrivial elements.

    A false verdict carries a triple (x, y, z) with y != 1, [x,y] = 1,
    [y,z] = 1 and [x,z] != 1, whichever method found it.
    """
    if method not in CT_METHODS:
        raise ValueError(f"unknown CT method {method!r}")
    t0 = time.perf_counter()
    if method == "centralizer":
        verdict, witness = _ct_by_centralizers(group)
    elif method == "triple-scan":
        cap = scan_cap if scan_cap is not None else TRIPLE_SCAN_CAP
        if group.n > cap:
            raise OrderCapExceeded(
                f"triple scan needs order <= {cap}, got {group.n}", cap
            )
        verdict, witness = _ct_by_triple_scan(group)
    else:
        verdict, witness = _ct_by_maximal_abelian(group)
    return PropertyReport(
        group=group.provenance,
        property="CT",
        method=method,
        verdict=verdict,
        witness=witness,
        elapsed=time.perf_counter() - t0,
    )


def _ct_by_centralizers(group: FiniteGroup):
    for y in range(1, group.n):
        members = np.flatnonzero(group.table[:, y] == group.table[y, :])
        pair = _first_noncommuting_pair(group, members)
        if pair is not None:
            x, z = pair
            return False, _triple_witness(group, x, y, z)
    return True, None


def _ct_by_triple_scan(group: FiniteGroup):
    comm = group.table == group.table.T
    for x in range(group.n):
        grid = comm[x][:, None] & comm & ~comm[x][None, :]
        grid[0, :] = False  # y must be nontrivial
        if grid.any():
            y, z = np.unravel_index(int(np.argmax(grid)), grid.shape)
            return False, _triple_witness(group, x, int(y), int(z))
    return True, None


def _ct_by_maximal_abelian(group: FiniteGroup):
    subs = maximal_abelian_subgroups(group)
    for i in range(len(subs)):
        for j in range(i + 1, len(subs)):
            shared = subs[i].members & subs[j].members
            if len(shared) <= 1:
                continue
            s = min(k for k in shared if k != 0)
            a_side = subs[i].indices
            b_side = subs[j].indices
            for a in a_side:  # find noncommuting a in A, b in B
                row = group.table[a, b_side] != group.table[b_side, a]
                if row.any():
                    b = int(b_side[int(np.argmax(row))])
                    return False, _triple_witness(group, int(a), s, b)
    return True, None


# ---------------------------------------------------------------------------
# CSA


def is_csa(group: FiniteGroup, method: str = "malnormal", *,
           scan_cap: Optional[int] = None) -> PropertyReport:
    """Whether every maximal abelian subgroup is malnormal.

    A false verdict carries either a (subgroup, conjugator) pair or, for the
    sentence method, a violating triple.
    """
    if method not in CSA_METHODS:
        raise ValueError(f"unknown CSA method {method!r}")
    t0 = time.perf_counter()
    if method == "malnormal":
        verdict, witness = _csa_by_malnormal(group)
    else:
        cap = scan_cap if scan_cap is not None else TRIPLE_SCAN_CAP
        if group.n > cap:
            raise OrderCapExceeded(
                f"sentence method needs order <= {cap}, got {group.n}", cap
            )
        verdict, witness = _csa_by_sentences(group)
    return PropertyReport(
        group=group.provenance,
        property="CSA",
        method=method,
        verdict=verdict,
        witness=witness,
        elapsed=time.perf_counter() - t0,
    )


def _csa_by_malnormal(group: FiniteGroup):
    for sub in maximal_abelian_subgroups(group):
        ok, conjugator = is_malnormal(group, sub)
        if not ok:
            witness = {
                "kind": "subgroup-conjugator",
                "subgroup": [int(i) for i in sub.indices],
                "subgroup_labels": [group.labels[i] for i in sub.indices],
                "conjugator": int(conjugator),
                "conjugator_label": group.labels[conjugator],
            }
            return False, witness
    return True, None


def _csa_by_sentences(group: FiniteGroup):
    for sentence, name in zip(builtin("CSA"), ("CT", "MAL")):
        result = evaluate(sentence, group)
        if not result.verdict:
            x, y, z = (result.assignment[v] for v in ("x", "y", "z"))
            witness = _triple_witness(group, x, y, z)
            witness["sentence"] = name
            return False, witness
    return True, None


# ---------------------------------------------------------------------------
# the constructive extraction


def notmal_witness(group: FiniteGroup, *,
                   scan_cap: Optional[int] = None) -> Optional[tuple]:
    """First (x, y, z) in index order with x,y nontrivial, [x,y] = 1,
    [x, z^-1 y z] = 1 and [y,z] != 1, or None when malnormality holds."""
    cap = scan_cap if scan_cap is not None else TRIPLE_SCAN_CAP
    if group.n > cap:
        raise OrderCapExceeded(
            f"witness scan needs order <= {cap}, got {group.n}", cap
        )
    result = evaluate(builtin("NOTMAL"), group)
    if not result.verdict:
        return None
    return tuple(result.assignment[v] for v in ("x", "y", "z"))


def theorem41_extract(group: FiniteGroup, *,
                      scan_cap: Optional[int] = None) -> tuple:
    """From a CT non-CSA group, a nonabelian subgroup G0 with a nontrivial
    abelian normal subgroup A: G0 = <g,h,k> for the first witness triple,
    A = the normal closure of h within G0."""
    ct = is_ct(group, "centralizer")
    if not ct.verdict:
        raise NotCT(f"{group.provenance} is not CT")
    triple = notmal_witness(group, scan_cap=scan_cap)
    if triple is None:
        raise IsCSA(f"{group.provenance} has no malnormality violation")
    g, h, k = triple
    g0 = subgroup_generated(group, [g, h, k])
    inner = g0.as_group()
    to_inner = {int(x): i for i, x in enumerate(g0.indices)}
    closure = normal_closure(inner, [to_inner[h]])
    a = SubgroupSet(group, g0.indices[closure.indices])
    assert not g0.is_abelian
    assert a.size > 1
    assert a.is_abelian
    assert a.is_normal_in(g0)
    return g0, a


# ---------------------------------------------------------------------------
# the dichotomy for finite CT groups


@dataclass(frozen=True)
class WuClassification:
    kind: str  # NotCT | SolvableCT | SimpleCT | Contradiction
    f: Optional[int] = None

    def __str__(self) -> str:
        if self.kind == "SimpleCT":
            return f"SimpleCT{{f={self.f}}}"
        return self.kind


def wu_classify(group: FiniteGroup) -> WuClassification:
    """Every finite CT group is solvable or isomorphic to PSL(2,2^f), f >= 2;
    Contradiction flags a group outside both arms (never expected)."""
    if not is_ct(group, "centralizer").verdict:
        return WuClassification("NotCT")
    if is_solvable(group):
        return WuClassification("SolvableCT")
    if group.n > 600:
        raise OrderCapExceeded(
            f"isomorphism step needs order <= 600, got {group.n}", 600
        )
    if not is_simple(group):
        return WuClassification("Contradiction")
    f = 2
    while psl2_order(2**f) < group.n:
        f += 1
    if psl2_order(2**f) != group.n:
        return WuClassification("Contradiction")
    if not is_isomorphic(group, psl2_group(2**f)):
        return WuClassification("Contradiction")
    return WuClassification("SimpleCT", f)


def verify_wu_solvable_structure(group: FiniteGroup) -> PropertyReport:
    """For a solvable CT group: the Fitting subgroup is abelian and
    conjugation by anything outside it fixes no nontrivial element of it."""
    t0 = time.perf_counter()
    if not (is_solvable(group) and is_ct(group, "centralizer").verdict):
        raise NotSolvableCT(f"{group.provenance} is not a solvable CT group")
    fit = fitting_subgroup(group)
    verdict, witness = True, None
    if not fit.is_abelian:
        pair = _first_noncommuting_pair(group, fit.indices)
        verdict = False
        witness = {
            "kind": "nonabelian-fitting",
            "indices": [pair[0], pair[1]],
            "labels": [group.labels[pair[0]], group.labels[pair[1]]],
        }
    else:
        nontrivial = fit.indices[fit.indices != 0]
        for g in range(group.n):
            if fit.contains(g):
                continue
            conj = group.table[group.table[g, nontrivial], group.inv[g]]
            fixed = conj == nontrivial
            if fixed.any():
                x = int(nontrivial[int(np.argmax(fixed))])
                verdict = False
                witness = {
                    "kind": "fixed-point",
                    "actor": g,
                    "actor_label": group.labels[g],
                    "fixed": x,
                    "fixed_label": group.labels[x],
                }
                break
    return PropertyReport(
        group=group.provenance,
        property="solvable",
        method="fitting-fpf",
        verdict=verdict,
        witness=witness,
        elapsed=time.perf_counter() - t0,
    )


def csa_implies_abelian_scan(corpus) -> list:
    """For each CSA group in the corpus, reports whether it is abelian;
    a report with verdict False would be a counterexample (never expected)."""
    reports = []
    for group in corpus:
        if not is_csa(group, "malnormal").verdict:
            continue
        t0 = time.perf_counter()
        verdict = group.is_abelian
        witness = None
        if not verdict:
            pair = _first_noncommuting_pair(group, np.arange(group.n))
            witness = {
                "kind": "noncommuting-pair",
                "indices": [pair[0], pair[1]],
                "labels": [group.labels[pair[0]], group.labels[pair[1]]],
            }
        reports.append(
            PropertyReport(
                group=group.provenance,
                property="abelian",
                method="csa-implies-abelian",
                verdict=verdict,
                witness=witness,
                elapsed=time.perf_counter() - t0,
            )
        )
    return reports
