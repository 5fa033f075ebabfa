"""Text recipes naming the constructible groups.

Grammar: "cyclic:n", "dihedral:n", "symmetric:n", "alternating:n",
"frobenius:p,q", "psl2:q", "sl2:q", "direct(A,B)", "semidirect(A,B,action)"
where A and B are themselves recipes and action is a named automorphism
scheme of A powered by a cyclic acting group.

A built group's provenance equals its normalized recipe, so reports can
name groups by the string that rebuilds them.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Optional

import numpy as np

from .errors import RecipeError
from .groups import (
    FiniteGroup,
    alternating_group,
    cyclic_group,
    dihedral_group,
    direct_product,
    frobenius_pq,
    semidirect_product,
    symmetric_group,
)
from .psl2 import psl2_group, sl2_group

__all__ = ["parse_recipe", "build_group", "normalize_recipe", "ACTION_NAMES"]

_FAMILIES = {
    "cyclic": 1,
    "dihedral": 1,
    "symmetric": 1,
    "alternating": 1,
    "frobenius": 2,
    "psl2": 1,
    "sl2": 1,
}

ACTION_NAMES = ("square", "rotate-involutions")


def _split_top_level(text: str, where: str) -> list:
    parts, depth, start = [], 0, 0
    for i, c in enumerate(text):
        if c == "(":
            depth += 1
        elif c == ")":
            depth -= 1
            if depth < 0:
                raise RecipeError(f"unbalanced ')' in {where!r}")
        elif c == "," and depth == 0:
            parts.append(text[start:i])
            start = i + 1
    if depth != 0:
        raise RecipeError(f"unbalanced '(' in {where!r}")
    parts.append(text[start:])
    return parts


def parse_recipe(recipe: str) -> tuple:
    """Syntactic validation; returns a nested tuple without building anything."""
    r = recipe.replace(" ", "")
    if not r:
        raise RecipeError("empty recipe")
    for combiner in ("direct", "semidirect"):
        if r.startswith(combiner + "("):
            if not r.endswith(")"):
                raise RecipeError(f"missing ')' in {recipe!r}")
            parts = _split_top_level(r[len(combiner) + 1 : -1], recipe)
            if combiner == "direct":
                if len(parts) != 2:
                    raise RecipeError(f"direct(A,B) takes two recipes, got {len(parts)}")
                return ("direct", parse_recipe(parts[0]), parse_recipe(parts[1]))
            if len(parts) != 3:
                raise RecipeError(
                    f"semidirect(A,B,action) takes two recipes and an action name"
                )
            if parts[2] not in ACTION_NAMES:
                raise RecipeError(
                    f"unknown action {parts[2]!r}; known: {', '.join(ACTION_NAMES)}"
                )
            return (
                "semidirect",
                parse_recipe(parts[0]),
                parse_recipe(parts[1]),
                parts[2],
            )
    name, sep, argstr = r.partition(":")
    if name not in _FAMILIES:
        raise RecipeError(f"unknown family {name!r} in {recipe!r}")
    if not sep:
        raise RecipeError(f"{name} needs ':' arguments")
    args = argstr.split(",")
    if len(args) != _FAMILIES[name]:
        raise RecipeError(
            f"{name} takes {_FAMILIES[name]} argument(s), got {len(args)}"
        )
    try:
        values = tuple(int(a) for a in args)
    except ValueError:
        raise RecipeError(f"non-integer argument in {recipe!r}")
    return ("family", name, values)


def normalize_recipe(recipe: str) -> str:
    """The canonical spelling (whitespace dropped); equals the provenance
    of the group the recipe builds."""
    tree = parse_recipe(recipe)
    return _tree_text(tree)


def _tree_text(tree: tuple) -> str:
    if tree[0] == "family":
        return f"{tree[1]}:{','.join(str(v) for v in tree[2])}"
    if tree[0] == "direct":
        return f"direct({_tree_text(tree[1])},{_tree_text(tree[2])})"
    return f"semidirect({_tree_text(tree[1])},{_tree_text(tree[2])},{tree[3]})"


def _base_automorphism(name: str, a: FiniteGroup) -> np.ndarray:
    if name == "square":
        perm = a.table[np.arange(a.n), np.arange(a.n)]
        if len(set(perm.tolist())) != a.n:
            raise RecipeError(
                f"squaring is not a bijection on {a.provenance} (even order)"
            )
        return perm.astype(np.int32)
    if name == "rotate-involutions":
        if a.n != 4 or not (a.orders <= 2).all():
            raise RecipeError(
                f"rotate-involutions needs the order-4 group of exponent 2, "
                f"got {a.provenance}"
            )
        return np.array([0, 2, 3, 1], dtype=np.int32)
    raise RecipeError(f"unknown action {name!r}")


def _named_action(name: str, a: FiniteGroup, h: FiniteGroup) -> list:
    if h.provenance != f"cyclic:{h.n}":
        raise RecipeError(
            f"named actions act through a cyclic group, got {h.provenance}"
        )
    base = _base_automorphism(name, a)
    perms = [np.arange(a.n, dtype=np.int32)]
    for _ in range(1, h.n):
        perms.append(base[perms[-1]])
    return perms


@lru_cache(maxsize=None)
def _build_cached(canonical: str, order_cap: Optional[int]) -> FiniteGroup:
    tree = parse_recipe(canonical)
    return _build_tree(tree, order_cap)


def _build_tree(tree: tuple, order_cap: Optional[int]) -> FiniteGroup:
    if tree[0] == "direct":
        return direct_product(
            _build_tree(tree[1], order_cap),
            _build_tree(tree[2], order_cap),
            order_cap=order_cap,
        )
    if tree[0] == "semidirect":
        a = _build_tree(tree[1], order_cap)
        h = _build_tree(tree[2], order_cap)
        return semidirect_product(
            a, h, _named_action(tree[3], a, h),
            action_name=tree[3], order_cap=order_cap,
        )
    name, values = tree[1], tree[2]
    if name == "cyclic":
        return cyclic_group(values[0], order_cap=order_cap)
    if name == "dihedral":
        return dihedral_group(values[0], order_cap=order_cap)
    if name == "symmetric":
        return symmetric_group(values[0], order_cap=order_cap)
    if name == "alternating":
        return alternating_group(values[0], order_cap=order_cap)
    if name == "frobenius":
        return frobenius_pq(values[0], values[1], order_cap=order_cap)
    if name == "psl2":
        return psl2_group(values[0], order_cap=order_cap)
    return sl2_group(values[0], order_cap=order_cap)


def build_group(recipe: str, *, order_cap: Optional[int] = None) -> FiniteGroup:
    """Builds (and caches) the group a recipe names."""
    return _build_cached(normalize_recipe(recipe), order_cap)
