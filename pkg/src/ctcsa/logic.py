"""First-order sentences of the group language, parsed and evaluated.

The grammar is prenex only: a quantifier prefix followed by a quantifier-free
matrix of word (in)equations.  Variables are single lowercase letters, the
constant is 1, and [u,v] is commutator sugar expanded at parse time, so the
evaluator only ever multiplies words over the Cayley table.

Words are stored as tuples of (variable, inverted) pairs; the empty tuple is
the identity word and prints as "1".
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .errors import DepthCapExceeded, ParseError, UnboundVariable, UnknownBuiltin
from .groups import FiniteGroup

__all__ = [
    "Atom",
    "Not",
    "And",
    "Or",
    "Implies",
    "Sentence",
    "EvalResult",
    "parse",
    "to_text",
    "builtin",
    "negate_sentence",
    "evaluate",
    "check_assignment",
    "BUILTIN_NAMES",
    "SENTENCE_DEPTH_CAP",
    "SENTENCE_GROUP_CAP",
]

Word = tuple  # of (name: str, inverted: bool)

SENTENCE_DEPTH_CAP = 3
SENTENCE_GROUP_CAP = 600


@dataclass(frozen=True)
class Atom:
    left: Word
    right: Word
    equal: bool


@dataclass(frozen=True)
class Not:
    inner: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


Formula = Union[Atom, Not, And, Or, Implies]


@dataclass(frozen=True)
class Sentence:
    prefix: tuple  # of (quantifier: "forall" | "exists", variable: str)
    matrix: Formula


@dataclass(frozen=True)
class EvalResult:
    verdict: bool
    assignment: Optional[dict]  # variable -> element index; None when no
    # single assignment tells the story (mixed prefixes, or nothing to show)


# ---------------------------------------------------------------------------
# tokenizer


_SINGLE = {
    "(": "LPAREN",
    ")": "RPAREN",
    "[": "LBRACK",
    "]": "RBRACK",
    ",": "COMMA",
    "&": "AMP",
    "|": "PIPE",
    "=": "EQ",
    "1": "ONE",
}


def _tokenize(text: str):
    tokens = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if text.startswith("forall", i) and not text[i + 6 : i + 7].isalpha():
            tokens.append(("FORALL", "forall", i))
            i += 6
            continue
        if text.startswith("exists", i) and not text[i + 6 : i + 7].isalpha():
            tokens.append(("EXISTS", "exists", i))
            i += 6
            continue
        if text.startswith("!=", i):
            tokens.append(("NEQ", "!=", i))
            i += 2
            continue
        if text.startswith("->", i):
            tokens.append(("ARROW", "->", i))
            i += 2
            continue
        if text.startswith("^-1", i):
            tokens.append(("INV", "^-1", i))
            i += 3
            continue
        if c == "^":
            raise ParseError("'^' must be followed by -1", i)
        if c == "!":
            tokens.append(("BANG", "!", i))
            i += 1
            continue
        if c in _SINGLE:
            tokens.append((_SINGLE[c], c, i))
            i += 1
            continue
        if c.isalpha() and c.islower():
            tokens.append(("VAR", c, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {c!r}", i)
    tokens.append(("END", "", n))
    return tokens


# ---------------------------------------------------------------------------
# recursive-descent parser


def _invert_word(word: Word) -> Word:
    return tuple((name, not inv) for name, inv in reversed(word))


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.bound: list[str] = []

    def peek(self) -> str:
        return self.tokens[self.pos][0]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str):
        tok = self.tokens[self.pos]
        if tok[0] != kind:
            raise ParseError(f"expected {kind}, found {tok[1] or 'end of input'}", tok[2])
        return self.next()

    def sentence(self) -> Sentence:
        prefix = []
        while self.peek() in ("FORALL", "EXISTS"):
            quant = "forall" if self.next()[0] == "FORALL" else "exists"
            while True:
                kind, name, at = self.expect("VAR")
                if name in self.bound:
                    raise ParseError(f"variable {name} bound twice", at)
                self.bound.append(name)
                prefix.append((quant, name))
                if self.peek() != "COMMA":
                    break
                self.next()
        matrix = self.formula()
        kind, value, at = self.tokens[self.pos]
        if kind != "END":
            raise ParseError(f"unexpected trailing input {value!r}", at)
        return Sentence(tuple(prefix), matrix)

    def formula(self) -> Formula:
        left = self.disjunction()
        if self.peek() == "ARROW":
            self.next()
            return Implies(left, self.formula())  # right-associative
        return left

    def disjunction(self) -> Formula:
        left = self.conjunction()
        while self.peek() == "PIPE":
            self.next()
            left = Or(left, self.conjunction())
        return left

    def conjunction(self) -> Formula:
        left = self.unary()
        while self.peek() == "AMP":
            self.next()
            left = And(left, self.unary())
        return left

    def unary(self) -> Formula:
        if self.peek() == "BANG":
            self.next()
            return Not(self.unary())
        if self.peek() == "LPAREN":
            self.next()
            inner = self.formula()
            self.expect("RPAREN")
            return inner
        return self.atom()

    def atom(self) -> Atom:
        left = self.word()
        kind, value, at = self.next()
        if kind == "EQ":
            equal = True
        elif kind == "NEQ":
            equal = False
        else:
            raise ParseError(f"expected = or !=, found {value or 'end of input'}", at)
        return Atom(left, self.word(), equal)

    def word(self) -> Word:
        kind, value, at = self.tokens[self.pos]
        symbols = []
        matched = False
        while self.peek() in ("VAR", "ONE", "LBRACK"):
            matched = True
            symbols.extend(self.factor())
        if not matched:
            raise ParseError(
                f"expected a word, found {self.tokens[self.pos][1] or 'end of input'}",
                self.tokens[self.pos][2],
            )
        return tuple(symbols)

    def factor(self) -> Word:
        kind, value, at = self.next()
        if kind == "VAR":
            if value not in self.bound:
                raise UnboundVariable(value, at)
            base: Word = ((value, False),)
        elif kind == "ONE":
            base = ()
        else:  # LBRACK: commutator [u,v] = u^-1 v^-1 u v
            u = self.word()
            self.expect("COMMA")
            v = self.word()
            self.expect("RBRACK")
            base = _invert_word(u) + _invert_word(v) + u + v
        if self.peek() == "INV":
            self.next()
            base = _invert_word(base)
        return base


def parse(text: str) -> Sentence:
    return _Parser(text).sentence()


# ---------------------------------------------------------------------------
# printing


def _word_text(word: Word) -> str:
    if not word:
        return "1"
    return "".join(name + ("^-1" if inv else "") for name, inv in word)


def _formula_text(node: Formula) -> str:
    if isinstance(node, Atom):
        op = "=" if node.equal else "!="
        return f"{_word_text(node.left)} {op} {_word_text(node.right)}"
    if isinstance(node, Not):
        return f"!({_formula_text(node.inner)})"
    if isinstance(node, And):
        return f"({_formula_text(node.left)} & {_formula_text(node.right)})"
    if isinstance(node, Or):
        return f"({_formula_text(node.left)} | {_formula_text(node.right)})"
    return f"({_formula_text(node.left)} -> {_formula_text(node.right)})"


def to_text(sentence: Sentence) -> str:
    parts = []
    i, prefix = 0, sentence.prefix
    while i < len(prefix):
        quant = prefix[i][0]
        j = i
        while j < len(prefix) and prefix[j][0] == quant:
            j += 1
        parts.append(quant + " " + ",".join(name for _, name in prefix[i:j]))
        i = j
    body = _formula_text(sentence.matrix)
    if isinstance(sentence.matrix, Atom) or isinstance(sentence.matrix, Not):
        body = f"({body})"
    parts.append(body)
    return " ".join(parts)


# ---------------------------------------------------------------------------
# builtins and negation


_BUILTIN_TEXT = {
    "CT": "forall x,y,z ((y != 1 & [x,y] = 1 & [y,z] = 1) -> [x,z] = 1)",
    "MAL": "forall x,y,z ((x != 1 & y != 1 & [x,y] = 1 & [x,z^-1yz] = 1) -> [y,z] = 1)",
    "NOTMAL": "exists x,y,z ((x != 1 & y != 1 & [x,y] = 1 & [x,z^-1yz] = 1) & [y,z] != 1)",
}

BUILTIN_NAMES = ("CT", "MAL", "NOTMAL", "CSA")


def builtin(name: str):
    """A named sentence; CSA is the pair [CT, MAL], both of which must hold."""
    if name == "CSA":
        return [builtin("CT"), builtin("MAL")]
    if name not in _BUILTIN_TEXT:
        raise UnknownBuiltin(f"no builtin sentence named {name!r}")
    return parse(_BUILTIN_TEXT[name])


def _negate_formula(node: Formula) -> Formula:
    if isinstance(node, Atom):
        return Atom(node.left, node.right, not node.equal)
    if isinstance(node, Not):
        return node.inner
    if isinstance(node, And):
        return Or(_negate_formula(node.left), _negate_formula(node.right))
    if isinstance(node, Or):
        return And(_negate_formula(node.left), _negate_formula(node.right))
    return And(node.left, _negate_formula(node.right))  # ¬(a -> b) = a ∧ ¬b


def negate_sentence(sentence: Sentence) -> Sentence:
    flipped = tuple(
        ("exists" if q == "forall" else "forall", v) for q, v in sentence.prefix
    )
    return Sentence(flipped, _negate_formula(sentence.matrix))


# ---------------------------------------------------------------------------
# evaluation over a finite group


def _matrix_variables(node: Formula) -> set:
    if isinstance(node, Atom):
        return {name for name, _ in node.left} | {name for name, _ in node.right}
    if isinstance(node, Not):
        return _matrix_variables(node.inner)
    return _matrix_variables(node.left) | _matrix_variables(node.right)


def _axis_grid(name: str, env: dict, rest: tuple, n: int):
    if name in env:
        return np.int32(env[name])
    shape = [1] * len(rest)
    shape[rest.index(name)] = n
    return np.arange(n, dtype=np.int32).reshape(shape)


def _word_value(word: Word, env: dict, rest: tuple, group: FiniteGroup):
    if not word:
        return np.int32(0)
    value = None
    for name, inverted in word:
        idx = _axis_grid(name, env, rest, group.n)
        if inverted:
            idx = group.inv[idx]
        value = idx if value is None else group.table[value, idx]
    return value


def _formula_grid(node: Formula, env: dict, rest: tuple, group: FiniteGroup):
    if isinstance(node, Atom):
        left = _word_value(node.left, env, rest, group)
        right = _word_value(node.right, env, rest, group)
        return left == right if node.equal else left != right
    if isinstance(node, Not):
        return ~_formula_grid(node.inner, env, rest, group)
    if isinstance(node, And):
        return _formula_grid(node.left, env, rest, group) & _formula_grid(
            node.right, env, rest, group
        )
    if isinstance(node, Or):
        return _formula_grid(node.left, env, rest, group) | _formula_grid(
            node.right, env, rest, group
        )
    return ~_formula_grid(node.left, env, rest, group) | _formula_grid(
        node.right, env, rest, group
    )


def evaluate(sentence: Sentence, group: FiniteGroup) -> EvalResult:
    """Brute-force semantics, short-circuited on the outermost variable.

    A failed all-forall sentence carries the first counterexample in index
    order; a satisfied all-exists sentence carries the first witness.  The
    inner variables are evaluated as one vectorized grid per outer value.
    """
    names = tuple(v for _, v in sentence.prefix)
    quants = tuple(q for q, _ in sentence.prefix)
    unbound = _matrix_variables(sentence.matrix) - set(names)
    if unbound:
        raise UnboundVariable(sorted(unbound)[0], 0)
    k = len(names)
    if k > SENTENCE_DEPTH_CAP and group.n > SENTENCE_GROUP_CAP:
        raise DepthCapExceeded(
            f"quantifier depth {k} over a group of order {group.n} "
            f"exceeds the {SENTENCE_DEPTH_CAP}-variable cap"
        )
    n = group.n
    if k == 0:
        verdict = bool(_formula_grid(sentence.matrix, {}, (), group))
        return EvalResult(verdict, None)
    uniform = len(set(quants)) == 1
    outer_q, rest = quants[0], names[1:]
    full_shape = (n,) * len(rest)
    for a in range(n):
        env = {names[0]: a}
        grid = np.broadcast_to(
            _formula_grid(sentence.matrix, env, rest, group), full_shape
        )
        value = grid
        for q in reversed(quants[1:]):
            value = value.all(axis=-1) if q == "forall" else value.any(axis=-1)
        if outer_q == "forall" and not value:
            return EvalResult(False, _first_assignment(~grid, a, names, uniform))
        if outer_q == "exists" and value:
            return EvalResult(True, _first_assignment(grid, a, names, uniform))
    return EvalResult(outer_q == "forall", None)


def _first_assignment(grid, outer_value: int, names: tuple, uniform: bool):
    if not uniform:
        return None
    coords = ()
    if grid.ndim:
        flat = int(np.argmax(grid.reshape(-1)))  # row-major = index order
        coords = np.unravel_index(flat, grid.shape)
    assignment = {names[0]: outer_value}
    assignment.update({v: int(c) for v, c in zip(names[1:], coords)})
    return assignment


def check_assignment(sentence: Sentence, group: FiniteGroup, assignment: dict) -> bool:
    """Re-evaluates the quantifier-free matrix under a full assignment."""
    missing = [v for _, v in sentence.prefix if v not in assignment]
    if missing:
        raise UnboundVariable(missing[0], 0)
    env = {v: int(assignment[v]) for _, v in sentence.prefix}
    return bool(_formula_grid(sentence.matrix, env, (), group))
