"""Text file formats read and written by the command line.

Group file::

    degree 7
    # one generator per line, 1-based disjoint cycle notation
    (1 2 3 4 5 6 7)
    (2 4 3 7 5 6)

Action file: a group file followed by ``orbits k`` and ``k`` lines of
1-based points, one orbit per line.

Matrix file: a ``p d`` header, then one or more ``d x d`` matrices given as
``d`` rows of integers each (blank lines between matrices are optional).

Affine instance file: a ``field p d`` header followed by keyword sections.

* ``linear``: generators of the linear group H, ``d`` rows each
* ``element``: one matrix h (optional)
* ``subgroup``: generators of a subgroup M of H (optional)
* ``vector a b ...``: a vector of ``F_p^d`` on one line (optional)
* ``rep degree n``: a permutation group given as alternating lines, one
  generator in cycle notation followed by the ``d`` rows of its matrix
  (optional)
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .actions import MultiOrbitAction
from .errors import InvalidInput
from .group import DEFAULT_ENUM_CAP, PermGroup
from .linalg import MatrixFp
from .perm import format_cycles, parse_cycles


def read_text(path) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc.strerror or exc}") from None


def _lines(text: str) -> list[tuple[int, str]]:
    out = []
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((no, line))
    return out


def _ints(line: str, no: int) -> list[int]:
    try:
        return [int(x) for x in line.replace(",", " ").split()]
    except ValueError:
        raise InvalidInput(f"line {no}: expected integers, got {line!r}") from None


def _keyword(line: str, word: str) -> list[str] | None:
    parts = line.split()
    if parts and parts[0].lower() == word:
        return parts[1:]
    return None


def _degree(no: int, line: str) -> int:
    rest = _keyword(line, "degree")
    if rest is None or len(rest) != 1:
        raise InvalidInput(f"line {no}: expected 'degree n'")
    n = _ints(rest[0], no)[0]
    if n < 1:
        raise InvalidInput(f"line {no}: degree must be positive")
    return n


def _perm(line: str, no: int, n: int):
    try:
        p = parse_cycles(line, n)
    except InvalidInput as exc:
        raise InvalidInput(f"line {no}: {exc}") from None
    except (IndexError, ValueError):
        raise InvalidInput(f"line {no}: point out of range 1..{n} in {line!r}") from None
    return p


# groups and actions ----------------------------------------------------------------------


def _split_group(lines, enum_cap):
    if not lines:
        raise InvalidInput("empty group file")
    no, first = lines[0]
    n = _degree(no, first)
    gens = []
    rest = lines[1:]
    while rest and rest[0][1].startswith("("):
        no, line = rest[0]
        gens.append(_perm(line, no, n))
        rest = rest[1:]
    return PermGroup(n, gens, enum_cap=enum_cap), rest


def parse_group(text: str, enum_cap: int = DEFAULT_ENUM_CAP) -> PermGroup:
    g, rest = _split_group(_lines(text), enum_cap)
    if rest:
        no, line = rest[0]
        raise InvalidInput(f"line {no}: unexpected {line!r} in a group file")
    return g


def parse_action(text: str, enum_cap: int = DEFAULT_ENUM_CAP) -> MultiOrbitAction:
    """An action file, or a plain group file whose orbits are then computed."""
    g, rest = _split_group(_lines(text), enum_cap)
    if not rest:
        return MultiOrbitAction.from_group(g)
    no, line = rest[0]
    kw = _keyword(line, "orbits")
    if kw is None or len(kw) != 1:
        raise InvalidInput(f"line {no}: expected 'orbits k'")
    k = _ints(kw[0], no)[0]
    body = rest[1:]
    if len(body) != k:
        raise InvalidInput(f"line {no}: 'orbits {k}' followed by {len(body)} orbit lines")
    parts = []
    for no, line in body:
        pts = _ints(line, no)
        if any(not 1 <= x <= g.degree for x in pts):
            raise InvalidInput(f"line {no}: point out of range 1..{g.degree}")
        parts.append(tuple(x - 1 for x in pts))
    return MultiOrbitAction(g, tuple(parts))


def format_group(g: PermGroup, comment: str = "") -> str:
    out = [f"# {c}" for c in comment.splitlines()] if comment else []
    out.append(f"degree {g.degree}")
    out.extend(format_cycles(s) for s in g.generators)
    return "\n".join(out) + "\n"


def format_action(a: MultiOrbitAction, comment: str = "") -> str:
    out = [format_group(a.group, comment).rstrip("\n"), f"orbits {len(a.orbits)}"]
    out.extend(" ".join(str(x + 1) for x in o) for o in a.orbits)
    return "\n".join(out) + "\n"


def read_group(path, enum_cap: int = DEFAULT_ENUM_CAP) -> PermGroup:
    return parse_group(read_text(path), enum_cap)


def read_action(path, enum_cap: int = DEFAULT_ENUM_CAP) -> MultiOrbitAction:
    return parse_action(read_text(path), enum_cap)


# matrices ---------------------------------------------------------------------------------


def _matrices(rows, p: int, d: int) -> list[MatrixFp]:
    if len(rows) % d:
        raise InvalidInput(f"matrix rows come in blocks of {d}; got {len(rows)} rows")
    out = []
    for i in range(0, len(rows), d):
        block = []
        for no, line in rows[i : i + d]:
            r = _ints(line, no)
            if len(r) != d:
                raise InvalidInput(f"line {no}: expected {d} entries")
            block.append(tuple(r))
        out.append(MatrixFp(p, tuple(block)))
    return out


def _field_header(no: int, vals: list[int]) -> tuple[int, int]:
    if len(vals) != 2 or vals[1] < 1:
        raise InvalidInput(f"line {no}: expected 'p d'")
    return vals[0], vals[1]


def parse_matrices(text: str) -> tuple[int, int, list[MatrixFp]]:
    lines = _lines(text)
    if not lines:
        raise InvalidInput("empty matrix file")
    p, d = _field_header(lines[0][0], _ints(lines[0][1], lines[0][0]))
    mats = _matrices(lines[1:], p, d)
    if not mats:
        raise InvalidInput("matrix file has no matrices")
    return p, d, mats


def format_matrices(mats) -> str:
    mats = list(mats)
    out = [f"{mats[0].p} {mats[0].d}"]
    for m in mats:
        out.append("")
        out.append(str(m))
    return "\n".join(out) + "\n"


@dataclass
class AffineInstance:
    p: int
    d: int
    linear: list[MatrixFp] = field(default_factory=list)
    element: MatrixFp | None = None
    subgroup: list[MatrixFp] | None = None
    vector: tuple[int, ...] | None = None
    rep_group: PermGroup | None = None
    rep_images: list[MatrixFp] | None = None


_SECTIONS = ("linear", "element", "subgroup", "vector", "rep")


def parse_affine_instance(text: str, enum_cap: int = DEFAULT_ENUM_CAP) -> AffineInstance:
    lines = _lines(text)
    if not lines:
        raise InvalidInput("empty affine instance file")
    no, head = lines[0]
    kw = _keyword(head, "field")
    if kw is None and not any(line.split()[0].lower() in _SECTIONS for _, line in lines[1:]):
        # a bare matrix file: its matrices generate the linear group
        p, d, mats = parse_matrices(text)
        return AffineInstance(p, d, linear=mats)
    p, d = _field_header(no, _ints(" ".join(kw) if kw is not None else head, no))
    inst = AffineInstance(p, d)
    sections: list[tuple[int, str, list[str], list]] = []
    for no, line in lines[1:]:
        word = line.split()[0].lower()
        if word in _SECTIONS:
            sections.append((no, word, line.split()[1:], []))
        elif not sections:
            raise InvalidInput(f"line {no}: expected one of {', '.join(_SECTIONS)}")
        else:
            sections[-1][3].append((no, line))
    seen = set()
    for no, word, args, body in sections:
        if word in seen:
            raise InvalidInput(f"line {no}: section {word!r} repeated")
        seen.add(word)
        if word == "linear":
            inst.linear = _matrices(body, p, d)
        elif word == "element":
            mats = _matrices(body, p, d)
            if len(mats) != 1:
                raise InvalidInput(f"line {no}: 'element' takes exactly one matrix")
            inst.element = mats[0]
        elif word == "subgroup":
            inst.subgroup = _matrices(body, p, d)
        elif word == "vector":
            if body:
                raise InvalidInput(f"line {no}: the vector goes on the 'vector' line")
            v = _ints(" ".join(args), no)
            if len(v) != d:
                raise InvalidInput(f"line {no}: vector needs {d} entries")
            inst.vector = tuple(x % p for x in v)
        else:
            if len(args) != 2 or args[0].lower() != "degree":
                raise InvalidInput(f"line {no}: expected 'rep degree n'")
            n = _degree(no, " ".join(args))
            perms, mats = [], []
            i = 0
            while i < len(body):
                pno, pline = body[i]
                if not pline.startswith("("):
                    raise InvalidInput(f"line {pno}: expected a generator in cycle notation")
                perms.append(_perm(pline, pno, n))
                mats.extend(_matrices(body[i + 1 : i + 1 + d], p, d))
                i += 1 + d
            if not perms:
                raise InvalidInput(f"line {no}: empty 'rep' section")
            inst.rep_group = PermGroup(n, perms, enum_cap=enum_cap)
            inst.rep_images = mats
    if not inst.linear and inst.rep_images is None:
        raise InvalidInput("affine instance needs a 'linear' or a 'rep' section")
    return inst


def read_affine_instance(path, enum_cap: int = DEFAULT_ENUM_CAP) -> AffineInstance:
    return parse_affine_instance(read_text(path), enum_cap)


def format_affine_instance(inst: AffineInstance) -> str:
    out = [f"field {inst.p} {inst.d}"]
    if inst.linear:
        out.append("linear")
        out.extend(str(m) for m in inst.linear)
    if inst.element is not None:
        out.append("element")
        out.append(str(inst.element))
    if inst.subgroup is not None:
        out.append("subgroup")
        out.extend(str(m) for m in inst.subgroup)
    if inst.vector is not None:
        out.append("vector " + " ".join(map(str, inst.vector)))
    if inst.rep_group is not None:
        out.append(f"rep degree {inst.rep_group.degree}")
        for s, m in zip(inst.rep_group.generators, inst.rep_images):
            out.append(format_cycles(s))
            out.append(str(m))
    return "\n".join(out) + "\n"
