"""Group-spec expression language: AST, recursive-descent parser, printer, evaluator."""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache

from .constructions import (
    ACTION_REGISTRY,
    alternating_group,
    cyclic_group,
    dihedral_cube_pair,
    dihedral_group,
    dihedral_on_cyclic_pair,
    direct_product_many,
    elementary_abelian_group,
    generalized_quaternion_group,
    heisenberg_group,
    heisenberg_pair,
    semidirect_product,
    symmetric_group,
)
from .errors import SpecSyntaxError, UnknownSpec
from .groups import FiniteGroup, SubgroupRef

Word = tuple[tuple[str, int], ...]  # ((name, exponent), ...); empty = identity


class GroupSpec:
    """Base class for spec AST nodes."""

    __slots__ = ()


@dataclass(frozen=True)
class Atom(GroupSpec):
    kind: str  # C, D, Q, S, A, EA, Heis
    params: tuple[int, ...]


@dataclass(frozen=True)
class NamedExample(GroupSpec):
    name: str  # ex-heis-pair, ex-d8cube, ex-d8xc4


@dataclass(frozen=True)
class Product(GroupSpec):
    factors: tuple[GroupSpec, ...]


@dataclass(frozen=True)
class Quot(GroupSpec):
    base: GroupSpec
    words: tuple[Word, ...]


@dataclass(frozen=True)
class Sdp(GroupSpec):
    normal: GroupSpec
    actor: GroupSpec
    action: str


@dataclass(frozen=True)
class Subgroup(GroupSpec):
    base: GroupSpec
    words: tuple[Word, ...]


_ATOM_ARITY = {"C": 1, "D": 1, "Q": 1, "S": 1, "A": 1, "EA": 2, "Heis": 1}

_EXAMPLES = {
    "ex-heis-pair": heisenberg_pair,
    "ex-d8cube": dihedral_cube_pair,
    "ex-d8xc4": dihedral_on_cyclic_pair,
}


# -- lexer ----------------------------------------------------------------------

class _Token:
    __slots__ = ("kind", "text", "line", "col")

    def __init__(self, kind, text, line, col):
        self.kind = kind
        self.text = text
        self.line = line
        self.col = col


def _lex(text: str) -> list[_Token]:
    toks = []
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            col += 1
            i += 1
            continue
        if ch in "(),[]*^:":
            toks.append(_Token(ch, ch, line, col))
            col += 1
            i += 1
            continue
        if ch == "-" or ch.isdigit():
            j = i + 1
            while j < n and text[j].isdigit():
                j += 1
            word = text[i:j]
            if word == "-":
                raise SpecSyntaxError(line, col, "digits after '-'")
            toks.append(_Token("INT", word, line, col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i + 1
            while j < n and (text[j].isalnum() or text[j] in "_-"):
                j += 1
            word = text[i:j]
            # trailing hyphens belong to no name
            while word.endswith("-"):
                word = word[:-1]
                j -= 1
            toks.append(_Token("NAME", word, line, col))
            col += j - i
            i = j
            continue
        if ch == '"':
            j = i + 1
            while j < n and text[j] != '"':
                j += 1
            if j >= n:
                raise SpecSyntaxError(line, col, "closing '\"'")
            toks.append(_Token("STR", text[i + 1:j], line, col))
            col += j + 1 - i
            i = j + 1
            continue
        raise SpecSyntaxError(line, col, "a spec token")
    toks.append(_Token("EOF", "", line, col))
    return toks


# -- parser ---------------------------------------------------------------------

class _Parser:
    def __init__(self, text: str):
        self.toks = _lex(text)
        self.pos = 0

    def peek(self) -> _Token:
        return self.toks[self.pos]

    def take(self, kind: str, expected: str | None = None) -> _Token:
        tok = self.toks[self.pos]
        if tok.kind != kind:
            raise SpecSyntaxError(tok.line, tok.col, expected or f"'{kind}'")
        self.pos += 1
        return tok

    def parse(self) -> GroupSpec:
        spec = self.expr()
        tok = self.peek()
        if tok.kind != "EOF":
            raise SpecSyntaxError(tok.line, tok.col, "end of input")
        return spec

    def expr(self) -> GroupSpec:
        factors = [self.term()]
        while self.peek().kind == "NAME" and self.peek().text == "x":
            self.pos += 1
            factors.append(self.term())
        if len(factors) == 1:
            return factors[0]
        return Product(tuple(factors))

    def term(self) -> GroupSpec:
        tok = self.peek()
        if tok.kind == "(":
            self.pos += 1
            inner = self.expr()
            self.take(")")
            return inner
        if tok.kind != "NAME":
            raise SpecSyntaxError(tok.line, tok.col, "a group atom")
        name = tok.text
        if name in _ATOM_ARITY:
            self.pos += 1
            self.take("(")
            params = [self.int_value()]
            for _ in range(_ATOM_ARITY[name] - 1):
                self.take(",")
                params.append(self.int_value())
            self.take(")")
            return Atom(name, tuple(params))
        if name == "paper":
            self.pos += 1
            self.take(":")
            ex = self.take("NAME", "an example name")
            if ex.text not in _EXAMPLES:
                raise SpecSyntaxError(ex.line, ex.col, "one of " + ", ".join(sorted(_EXAMPLES)))
            return NamedExample(ex.text)
        if name == "quot":
            self.pos += 1
            self.take("(")
            base = self.expr()
            self.take(",")
            words = self.word_list()
            self.take(")")
            return Quot(base, words)
        if name == "subgroup":
            self.pos += 1
            self.take("(")
            base = self.expr()
            self.take(",")
            words = self.word_list()
            self.take(")")
            return Subgroup(base, words)
        if name == "sdp":
            self.pos += 1
            self.take("(")
            normal = self.expr()
            self.take(",")
            actor = self.expr()
            self.take(",")
            action = self.action_name()
            self.take(")")
            return Sdp(normal, actor, action)
        raise SpecSyntaxError(tok.line, tok.col, "a group atom")

    def int_value(self) -> int:
        tok = self.take("INT", "an integer")
        return int(tok.text)

    def action_name(self) -> str:
        tok = self.peek()
        if tok.kind == "STR":
            self.pos += 1
            return tok.text
        tok = self.take("NAME", "an action name")
        return tok.text

    def word_list(self) -> tuple[Word, ...]:
        self.take("[")
        words = []
        if self.peek().kind != "]":
            words.append(self.word())
            while self.peek().kind == ",":
                self.pos += 1
                words.append(self.word())
        self.take("]")
        return tuple(words)

    def word(self) -> Word:
        parts = [self.word_factor()]
        while self.peek().kind == "*":
            self.pos += 1
            parts.append(self.word_factor())
        return tuple(p for p in parts if p is not None)

    def word_factor(self) -> tuple[str, int] | None:
        tok = self.peek()
        if tok.kind == "INT" and tok.text == "1":
            self.pos += 1
            return None  # the identity factor
        name = self.take("NAME", "a generator name").text
        exp = 1
        if self.peek().kind == "^":
            self.pos += 1
            exp = self.int_value()
        return (name, exp)


def parse_spec(text: str) -> GroupSpec:
    return _Parser(text).parse()


def parse_word_list(text: str) -> tuple[Word, ...]:
    parser = _Parser(text)
    words = parser.word_list()
    tok = parser.peek()
    if tok.kind != "EOF":
        raise SpecSyntaxError(tok.line, tok.col, "end of input")
    return words


# -- printer ---------------------------------------------------------------------

def print_word(word: Word) -> str:
    if not word:
        return "1"
    return "*".join(name if exp == 1 else f"{name}^{exp}" for name, exp in word)


def _print_words(words: tuple[Word, ...]) -> str:
    return "[" + ", ".join(print_word(w) for w in words) + "]"


def print_spec(spec: GroupSpec) -> str:
    if isinstance(spec, Atom):
        return f"{spec.kind}({', '.join(str(p) for p in spec.params)})"
    if isinstance(spec, NamedExample):
        return f"paper:{spec.name}"
    if isinstance(spec, Product):
        parts = []
        for f in spec.factors:
            text = print_spec(f)
            parts.append(f"({text})" if isinstance(f, Product) else text)
        return " x ".join(parts)
    if isinstance(spec, Quot):
        return f"quot({print_spec(spec.base)}, {_print_words(spec.words)})"
    if isinstance(spec, Subgroup):
        return f"subgroup({print_spec(spec.base)}, {_print_words(spec.words)})"
    if isinstance(spec, Sdp):
        action = spec.action
        if not action.replace("-", "").replace("_", "").isalnum() or not action[:1].isalpha():
            action = f'"{action}"'
        return f"sdp({print_spec(spec.normal)}, {print_spec(spec.actor)}, {action})"
    raise UnknownSpec(f"cannot print {type(spec).__name__}")


# -- evaluation --------------------------------------------------------------------

def evaluate_word(group: FiniteGroup, word: Word) -> int:
    names = {**group.marks, **group.gens}
    out = group.identity
    for name, exp in word:
        if name not in names:
            raise UnknownSpec(f"word names {name!r}, which the group does not declare")
        out = group.mul[out][group.power(names[name], exp)]
    return out


def _load_action_file(path: str):
    with open(path) as fh:
        perms = json.load(fh)
    return lambda n_grp, h_grp: perms


_ATOM_BUILDERS = {
    "C": cyclic_group,
    "D": dihedral_group,
    "Q": generalized_quaternion_group,
    "S": symmetric_group,
    "A": alternating_group,
    "EA": elementary_abelian_group,
    "Heis": heisenberg_group,
}


@lru_cache(maxsize=None)
def build_group(spec: GroupSpec) -> FiniteGroup:
    """Construct the group an AST describes; cached so equal specs share the object."""
    if isinstance(spec, Atom):
        return _ATOM_BUILDERS[spec.kind](*spec.params)
    if isinstance(spec, NamedExample):
        return _EXAMPLES[spec.name]()[0]
    if isinstance(spec, Product):
        return direct_product_many([build_group(f) for f in spec.factors])[0]
    if isinstance(spec, Quot):
        base = build_group(spec.base)
        elems = [evaluate_word(base, w) for w in spec.words]
        return base.quotient(base.normal_closure(elems))[0]
    if isinstance(spec, Subgroup):
        base = build_group(spec.base)
        elems = [evaluate_word(base, w) for w in spec.words]
        return base.subgroup_generated(elems).as_group()[0]
    if isinstance(spec, Sdp):
        normal = build_group(spec.normal)
        actor = build_group(spec.actor)
        if spec.action in ACTION_REGISTRY:
            action = ACTION_REGISTRY[spec.action](normal, actor)
        elif spec.action.startswith("file:"):
            action = _load_action_file(spec.action[5:])(normal, actor)
        else:
            raise UnknownSpec(f"unknown action {spec.action!r}")
        return semidirect_product(normal, actor, action)
    raise UnknownSpec(f"cannot build {type(spec).__name__}")


def designated_subgroup(spec: GroupSpec) -> SubgroupRef | None:
    """The example pairs carry a distinguished subgroup; other specs do not."""
    if isinstance(spec, NamedExample):
        return _EXAMPLES[spec.name]()[1]
    return None


def subgroup_from_words(group: FiniteGroup, text: str) -> SubgroupRef:
    words = parse_word_list(text)
    return group.subgroup_generated([evaluate_word(group, w) for w in words])
