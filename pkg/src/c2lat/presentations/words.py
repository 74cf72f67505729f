"""Words over a generating set and the presentation file format.

A word is a tuple of nonzero integers: ``k`` stands for generator ``k-1`` and
``-k`` for its inverse.  Files look like::

    # comment
    generators: a1:a a2:a b:b
    alias: x = a1 | a2
    a1^2
    (a1 b^-1)^3 a2

Generators carry an optional side tag after a colon.  An ``alias`` line names
an ambiguous symbol together with its possible readings; the first reading is
the primary one and every further reading yields an alternate relator set.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Sequence

Word = tuple[int, ...]

_TOKEN = re.compile(r"\s*(?:(\()|(\))(?:\^(-?\d+))?|([A-Za-z][A-Za-z0-9_]*)(?:\^(-?\d+))?)")


def free_reduce(word: Sequence[int]) -> Word:
    out: list[int] = []
    for s in word:
        if out and out[-1] == -s:
            out.pop()
        else:
            out.append(s)
    return tuple(out)


def invert_word(word: Sequence[int]) -> Word:
    return tuple(-s for s in reversed(word))


def word_power(word: Sequence[int], k: int) -> Word:
    if k < 0:
        word, k = invert_word(word), -k
    return tuple(word) * k


def parse_word(text: str, names: Sequence[str]) -> Word:
    """Parse ``text`` into a word over ``names``; raises ``ValueError`` on bad input."""
    index = {n: i + 1 for i, n in enumerate(names)}
    stack: list[list[int]] = [[]]
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse {text[pos:]!r} in word {text!r}")
        pos = m.end()
        opening, closing, group_exp, name, exp = m.groups()
        if opening:
            stack.append([])
        elif closing:
            if len(stack) == 1:
                raise ValueError(f"unbalanced ')' in {text!r}")
            inner = stack.pop()
            stack[-1].extend(word_power(inner, int(group_exp) if group_exp else 1))
        else:
            if name not in index:
                raise ValueError(f"undeclared generator {name!r} in {text!r}")
            stack[-1].extend(word_power((index[name],), int(exp) if exp else 1))
    if len(stack) != 1:
        raise ValueError(f"unbalanced '(' in {text!r}")
    return tuple(stack[0])


def format_word(word: Sequence[int], names: Sequence[str]) -> str:
    """Render a word with runs collapsed into powers, e.g. ``a^2 b^-1``."""
    if not word:
        return "1"
    parts = []
    i = 0
    while i < len(word):
        j = i
        while j < len(word) and word[j] == word[i]:
            j += 1
        name = names[abs(word[i]) - 1]
        k = (j - i) * (1 if word[i] > 0 else -1)
        parts.append(name if k == 1 else f"{name}^{k}")
        i = j
    return " ".join(parts)


@dataclass(frozen=True)
class FinPresentation:
    """Generators (with optional side tags ``'a'``/``'b'``) and relators.

    ``alternates`` holds further relator sets obtained from other readings
    of an ambiguous symbol; ``relators`` is always the primary reading.
    """

    name: str
    generators: tuple[str, ...]
    relators: tuple[Word, ...]
    sides: tuple[str | None, ...] = ()
    alternates: tuple[tuple[str, tuple[Word, ...]], ...] = ()
    notes: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        n = len(self.generators)
        if len(set(self.generators)) != n:
            raise ValueError(f"{self.name}: repeated generator names")
        for rel in self.relators + tuple(r for _, rs in self.alternates for r in rs):
            if any(s == 0 or abs(s) > n for s in rel):
                raise ValueError(f"{self.name}: relator uses an undeclared generator")
        if self.sides:
            if len(self.sides) != n:
                raise ValueError(f"{self.name}: one side tag per generator expected")
            if set(self.sides) != {"a", "b"}:
                raise ValueError(f"{self.name}: side tags must split into nonempty a and b sets")

    @property
    def ngens(self) -> int:
        return len(self.generators)

    def side_indices(self, side: str) -> list[int]:
        return [i for i, s in enumerate(self.sides) if s == side]

    def with_relators(self, relators: Sequence[Word], label: str = "") -> "FinPresentation":
        return FinPresentation(self.name + (f"[{label}]" if label else ""), self.generators,
                               tuple(relators), self.sides)

    def readings(self) -> list[tuple[str, "FinPresentation"]]:
        """The primary reading followed by each alternate one."""
        out = [("primary", self)]
        out += [(label, self.with_relators(rels, label)) for label, rels in self.alternates]
        return out

    def to_text(self) -> str:
        gens = " ".join(g if not self.sides else f"{g}:{s}"
                        for g, s in zip(self.generators, self.sides or [None] * self.ngens))
        lines = [f"generators: {gens}"]
        lines += [format_word(r, self.generators) for r in self.relators]
        return "\n".join(lines) + "\n"


def parse_presentation(text: str, name: str = "") -> FinPresentation:
    names: list[str] = []
    sides: list[str | None] = []
    aliases: list[tuple[str, list[str]]] = []
    raw: list[str] = []
    notes: list[str] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        body, _, comment = line.partition("#")
        if comment.strip():
            notes.append(comment.strip())
        body = body.strip()
        if not body:
            continue
        if body.startswith("generators:"):
            for tok in body.split(":", 1)[1].split():
                g, _, side = tok.partition(":")
                names.append(g)
                sides.append(side or None)
        elif body.startswith("alias:"):
            m = re.fullmatch(r"alias:\s*(\w+)\s*=\s*(.+)", body)
            if not m:
                raise ValueError(f"{name}:{lineno}: malformed alias line")
            aliases.append((m.group(1), [t.strip() for t in m.group(2).split("|")]))
        else:
            raw.append(body)
    if not names:
        raise ValueError(f"{name}: no generators line")
    tagged = [s for s in sides if s is not None]
    if tagged and len(tagged) != len(sides):
        raise ValueError(f"{name}: either all or no generators carry a side tag")

    def relators_for(choice: dict[str, str]) -> tuple[Word, ...]:
        out = []
        for r in raw:
            for sym, target in choice.items():
                r = re.sub(rf"\b{re.escape(sym)}\b", target, r)
            out.append(parse_word(r, names))
        return tuple(out)

    primary = {sym: opts[0] for sym, opts in aliases}
    alternates = []
    for sym, opts in aliases:
        for opt in opts[1:]:
            choice = dict(primary, **{sym: opt})
            alternates.append((f"{sym}={opt}", relators_for(choice)))
    return FinPresentation(name, tuple(names), relators_for(primary),
                           tuple(sides) if tagged else (), tuple(alternates), tuple(notes))
