"""Finite presentations: a small relator grammar and HLT coset enumeration.

Grammar (whitespace and ``#`` comments ignored; sections separated by ``;``
or newlines)::

    presentation := "gens" ":" ident ("," ident)* sep "rels" ":" [relation ("," relation)*]
    relation     := word ("=" word)*
    word         := factor+                      (juxtaposition or "*")
    factor       := primary ("^" exponent)*
    exponent     := ["-"] integer | primary      (a^b means b^-1 a b)
    primary      := ident | "1" | "(" word ")" | "[" word "," word "]"

``[a,b]`` expands to ``a^-1 b^-1 a b``.  A chain ``u = v`` gives the relator
``u v^-1``; a chain ending in ``1`` (``u = v = 1``) makes each member a relator.
When every generator name is a single character, ``xy`` reads as ``x y``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import CapExceeded, InvalidInput
from .group import PermGroup
from .perm import Permutation

DEFAULT_COSET_CAP = 10**5


class PresentationSyntaxError(InvalidInput):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {message}")
        self.line = line
        self.col = col


Word = tuple[int, ...]  # letter 2*i is generator i, 2*i+1 its inverse


def inverse_word(w: Word) -> Word:
    return tuple(x ^ 1 for x in reversed(w))


def free_reduce(w) -> Word:
    out: list[int] = []
    for x in w:
        if out and out[-1] == x ^ 1:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def cyclic_reduce(w: Word) -> Word:
    w = free_reduce(w)
    while len(w) >= 2 and w[0] == w[-1] ^ 1:
        w = w[1:-1]
    return w


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...]

    def __post_init__(self):
        k = 2 * len(self.generators)
        for r in self.relators:
            if any(not 0 <= x < k for x in r):
                raise InvalidInput("relator uses an undeclared generator")

    def word_str(self, w: Word) -> str:
        if not w:
            return "1"
        parts = []
        for x in w:
            name = self.generators[x >> 1]
            parts.append(name + ("^-1" if x & 1 else ""))
        return "*".join(parts)

    def parse_word(self, text: str) -> Word:
        parser = _Parser(text, self.generators)
        w = parser.word()
        parser.expect_end()
        return w


_TOKEN = re.compile(r"\s*(?:(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<int>\d+)|(?P<sym>[\^\-\(\)\[\],=*]))")


class _Parser:
    def __init__(self, text: str, generators, line: int = 1, col0: int = 1):
        self.gens = {name: i for i, name in enumerate(generators)}
        self.single = all(len(g) == 1 for g in generators)
        self.tokens = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise PresentationSyntaxError(f"unexpected character {text[pos]!r}", line, col0 + pos)
            kind = m.lastgroup
            start = m.start(kind)
            value = m.group(kind)
            if kind == "ident" and value not in self.gens and self.single:
                for k, ch in enumerate(value):
                    self.tokens.append(("ident", ch, line, col0 + start + k))
            else:
                self.tokens.append((kind, value, line, col0 + start))
            pos = m.end()
        self.i = 0
        self.line = line
        self.end_col = col0 + len(text)

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None, self.line, self.end_col)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        return PresentationSyntaxError(msg, tok[2], tok[3])

    def expect(self, value):
        tok = self.take()
        if tok[1] != value:
            raise self.error(f"expected {value!r}", tok)

    def expect_end(self):
        if self.i < len(self.tokens):
            raise self.error(f"unexpected {self.peek()[1]!r}")

    def relations(self) -> list[Word]:
        rels = []
        if self.peek()[0] is None:
            return rels
        while True:
            rels.extend(self.relation())
            if self.peek()[1] == ",":
                self.take()
                continue
            break
        self.expect_end()
        return rels

    def relation(self) -> list[Word]:
        chain = [self.word()]
        while self.peek()[1] == "=":
            self.take()
            chain.append(self.word())
        if len(chain) == 1:
            return [chain[0]]
        if len(chain) > 2 and chain[-1] == ():
            return [w for w in chain[:-1]]
        return [free_reduce(a + inverse_word(b)) for a, b in zip(chain, chain[1:])]

    def word(self) -> Word:
        letters: list[int] = []
        if not self._starts_primary():
            raise self.error("expected a word")
        while self._starts_primary() or self.peek()[1] == "*":
            if self.peek()[1] == "*":
                self.take()
                continue
            letters.extend(self.factor())
        return free_reduce(letters)

    def _starts_primary(self):
        kind, value, _, _ = self.peek()
        return kind == "ident" or value in ("(", "[") or (kind == "int" and value == "1")

    def factor(self) -> Word:
        w = self.primary()
        while self.peek()[1] == "^":
            self.take()
            kind, value, _, _ = self.peek()
            if value == "-" or kind == "int":
                sign = 1
                if value == "-":
                    self.take()
                    sign = -1
                tok = self.take()
                if tok[0] != "int":
                    raise self.error("expected an exponent", tok)
                e = sign * int(tok[1])
                w = free_reduce((w if e >= 0 else inverse_word(w)) * abs(e))
            else:
                b = self.primary()
                w = free_reduce(inverse_word(b) + w + b)
        return w

    def primary(self) -> Word:
        tok = self.take()
        kind, value = tok[0], tok[1]
        if kind == "ident":
            if value not in self.gens:
                raise self.error(f"undeclared generator {value!r}", tok)
            return (2 * self.gens[value],)
        if kind == "int" and value == "1":
            return ()
        if value == "(":
            w = self.word()
            self.expect(")")
            return w
        if value == "[":
            a = self.word()
            self.expect(",")
            b = self.word()
            self.expect("]")
            return free_reduce(inverse_word(a) + inverse_word(b) + a + b)
        raise self.error(f"unexpected {value!r}", tok)


def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0]


def parse_presentation(text: str) -> Presentation:
    """Parse the ``gens: ...; rels: ...`` format into a canonical presentation."""
    # locate the two sections, remembering where each body starts for error positions
    sections = {}
    lines = text.splitlines()
    current = None
    for lineno, raw in enumerate(lines, 1):
        line = _strip_comment(raw)
        pos = 0
        for piece in line.split(";"):
            col = pos + 1
            pos += len(piece) + 1
            m = re.match(r"\s*(gens|rels)\s*:", piece)
            if m:
                current = m.group(1)
                if current in sections:
                    raise PresentationSyntaxError(f"duplicate {current!r} section", lineno, col)
                sections[current] = [(piece[m.end():], lineno, col + m.end())]
            elif piece.strip():
                if current is None:
                    raise PresentationSyntaxError("expected 'gens:'", lineno, col)
                sections[current].append((piece, lineno, col))
    if "gens" not in sections:
        raise PresentationSyntaxError("missing 'gens:' section", 1, 1)
    names = []
    for body, lineno, col in sections["gens"]:
        for name in body.split(","):
            name = name.strip()
            if not name:
                continue
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", name):
                raise PresentationSyntaxError(f"bad generator name {name!r}", lineno, col)
            if name in names:
                raise PresentationSyntaxError(f"generator {name!r} declared twice", lineno, col)
            names.append(name)
    if not names:
        raise PresentationSyntaxError("no generators declared", 1, 1)
    relators = []
    # a relation list may continue onto the next line after a trailing operator or comma
    buffer = ""
    start = None
    for body, lineno, col in sections.get("rels", []):
        if start is None:
            start = (lineno, col)
        buffer = buffer + " " + body if buffer else body
        if _balanced(buffer) and not buffer.rstrip().endswith((",", "=", "*", "^")):
            relators.extend(_Parser(buffer, names, *start).relations())
            buffer, start = "", None
    if buffer.strip():
        relators.extend(_Parser(buffer, names, *start).relations())
    relators = [r for r in (free_reduce(r) for r in relators) if r]
    return Presentation(tuple(names), tuple(relators))


def _balanced(text: str) -> bool:
    depth = 0
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
    return depth == 0


# coset enumeration -------------------------------------------------------------


@dataclass
class CosetTable:
    rows: list[list[int]]  # coset x letter, letters ordered as in Word
    status: str  # "complete", "collapsed" or "overflow"
    n_cosets: int
    generator_images: list[Permutation]

    def group(self, enum_cap: int | None = None) -> PermGroup:
        kw = {} if enum_cap is None else {"enum_cap": enum_cap}
        return PermGroup(self.n_cosets, self.generator_images, **kw)


class _Enumerator:
    def __init__(self, ngens: int, cap: int):
        self.nl = 2 * ngens
        self.cap = cap
        self.table: list[list[int]] = [[-1] * self.nl]
        self.p = [0]

    def rep(self, k: int) -> int:
        p = self.p
        root = k
        while p[root] != root:
            root = p[root]
        while p[k] != root:
            p[k], k = root, p[k]
        return root

    def live(self, k: int) -> bool:
        return self.p[k] == k

    def define(self, a: int, x: int):
        if len(self.table) >= self.cap:
            raise CapExceeded(f"coset enumeration exceeded {self.cap} cosets")
        b = len(self.table)
        self.table.append([-1] * self.nl)
        self.p.append(b)
        self.table[a][x] = b
        self.table[b][x ^ 1] = a

    def scan_and_fill(self, a: int, w: Word):
        t = self.table
        f, b = a, a
        i, j = 0, len(w) - 1
        while True:
            while i <= j and t[f][w[i]] >= 0:
                f = t[f][w[i]]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i and t[b][w[j] ^ 1] >= 0:
                b = t[b][w[j] ^ 1]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                t[f][w[i]] = b
                t[b][w[i] ^ 1] = f
                return
            self.define(f, w[i])

    def coincidence(self, a: int, b: int):
        t = self.table
        queue: list[int] = []

        def merge(k, l):
            k, l = self.rep(k), self.rep(l)
            if k == l:
                return
            lo, hi = min(k, l), max(k, l)
            self.p[hi] = lo
            queue.append(hi)

        merge(a, b)
        i = 0
        while i < len(queue):
            g = queue[i]
            i += 1
            for x in range(self.nl):
                d = t[g][x]
                if d < 0:
                    continue
                t[d][x ^ 1] = -1
                mu, nu = self.rep(g), self.rep(d)
                if t[mu][x] >= 0:
                    merge(nu, t[mu][x])
                elif t[nu][x ^ 1] >= 0:
                    merge(mu, t[nu][x ^ 1])
                else:
                    t[mu][x] = nu
                    t[nu][x ^ 1] = mu


def todd_coxeter(pr: Presentation, subgroup_words=(), cap: int = DEFAULT_COSET_CAP) -> CosetTable:
    """Enumerate the cosets of the subgroup generated by ``subgroup_words``.

    Relator-based (HLT) strategy with immediate coincidence handling.
    Raises :class:`CapExceeded` when more than ``cap`` cosets are defined.
    """
    en = _Enumerator(len(pr.generators), cap)
    relators = [cyclic_reduce(r) for r in pr.relators]
    relators = [r for r in relators if r]
    for w in subgroup_words:
        en.scan_and_fill(0, free_reduce(w))
    a = 0
    while a < len(en.table):
        if en.live(a):
            for r in relators:
                en.scan_and_fill(a, r)
                if not en.live(a):
                    break
            if en.live(a):
                for x in range(en.nl):
                    if en.table[a][x] < 0:
                        en.define(a, x)
        a += 1
    live = [k for k in range(len(en.table)) if en.live(k)]
    number = {k: i for i, k in enumerate(live)}
    rows = [[number[en.rep(en.table[k][x])] for x in range(en.nl)] for k in live]
    images = [Permutation([row[2 * g] for row in rows]) for g in range(len(pr.generators))]
    status = "collapsed" if len(live) == 1 else "complete"
    return CosetTable(rows, status, len(live), images)


def evaluate_word(w: Word, images) -> Permutation:
    """Image of a word given permutation images of the generators."""
    if not images:
        raise InvalidInput("no generator images")
    result = Permutation.identity(images[0].degree)
    invs = {}
    for x in w:
        g = x >> 1
        if x & 1:
            if g not in invs:
                invs[g] = images[g].inverse()
            result = result * invs[g]
        else:
            result = result * images[g]
    return result
