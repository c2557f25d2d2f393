"""The group catalog: named families, two explicit covering examples, and a manifest.

Every construction is deterministic: same generators in the same order on
every run, so catalog reports are byte-stable.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache

from . import fields
from .actions import MultiOrbitAction, coset_action, is_primitive, is_transitive
from .affine import AffineGroup, affine_group, gl_generators, is_irreducible, sl_generators
from .derangements import find_derangement, is_normal_covering
from .errors import InvalidInput, InvariantViolation
from .group import PermGroup
from .lattice import DEFAULT_LATTICE_CAP, SubgroupLattice
from .linalg import MatrixFp
from .numtheory import is_prime, primes_upto
from .perm import Permutation
from .presentation import Presentation, evaluate_word, parse_presentation, todd_coxeter

# named families ---------------------------------------------------------------------


def cyclic(n: int) -> PermGroup:
    if n < 1:
        raise InvalidInput("cyclic group needs n >= 1")
    return PermGroup(n, [Permutation([(i + 1) % n for i in range(n)])])


def dihedral(n: int) -> PermGroup:
    """Symmetries of the n-gon: order 2n on n points."""
    if n < 3:
        raise InvalidInput("dihedral group needs n >= 3")
    rot = Permutation([(i + 1) % n for i in range(n)])
    ref = Permutation([(-i) % n for i in range(n)])
    return PermGroup(n, [rot, ref])


def symmetric(n: int) -> PermGroup:
    if n < 1:
        raise InvalidInput("symmetric group needs n >= 1")
    if n == 1:
        return PermGroup(1)
    return PermGroup(n, [Permutation.from_cycles(n, [(0, 1)]), Permutation([(i + 1) % n for i in range(n)])])


def alternating(n: int) -> PermGroup:
    if n < 1:
        raise InvalidInput("alternating group needs n >= 1")
    if n < 3:
        return PermGroup(n)
    three = Permutation.from_cycles(n, [(0, 1, 2)])
    long = tuple(range(n)) if n % 2 else tuple(range(1, n))
    return PermGroup(n, [three, Permutation.from_cycles(n, [long])])


def direct_product(*groups: PermGroup) -> PermGroup:
    """Product acting on the disjoint union of the factors' domains."""
    total = sum(g.degree for g in groups)
    gens = []
    offset = 0
    for g in groups:
        for s in g.generators:
            images = list(range(total))
            for i, x in enumerate(s.images):
                images[offset + i] = offset + x
            gens.append(Permutation(images))
        offset += g.degree
    return PermGroup(total, gens)


def gl_natural(d: int, p: int) -> PermGroup:
    """GL_d(p) on the ``p^d - 1`` nonzero vectors (vector with code ``k`` is point ``k - 1``)."""
    gens = []
    for m in gl_generators(d, p):
        imgs = m.permutation().images
        gens.append(Permutation([x - 1 for x in imgs[1:]]))
    return PermGroup(p**d - 1, gens)


def psl2(p: int) -> PermGroup:
    """PSL_2(p) on the projective line ``0..p-1`` plus infinity as point ``p``."""
    if not is_prime(p):
        raise InvalidInput(f"{p} is not prime")
    inf = p
    shift = [(x + 1) % p for x in range(p)] + [inf]
    inv = []
    for x in range(p):
        inv.append(inf if x == 0 else (-pow(x, -1, p)) % p)
    inv.append(0)
    return PermGroup(p + 1, [Permutation(shift), Permutation(inv)])


FAMILIES = {
    "cyclic": cyclic,
    "dihedral": dihedral,
    "symmetric": symmetric,
    "alternating": alternating,
    "gl": gl_natural,
    "psl2": psl2,
}


def named_group(family: str, *params) -> PermGroup:
    """Build a named group.  ``direct_product`` takes ``(family, params)`` pairs."""
    if family == "direct_product":
        return direct_product(*(named_group(f, *ps) for f, ps in params))
    try:
        build = FAMILIES[family]
    except KeyError:
        raise InvalidInput(f"unknown family {family!r}") from None
    try:
        return build(*params)
    except TypeError as exc:
        raise InvalidInput(f"bad parameters for {family}: {params}") from exc


# the affine line on two orbits --------------------------------------------------------


def agl1(p: int, verify: bool = True) -> MultiOrbitAction:
    """AGL_1(p) on ``F_p`` (points ``0..p-1``) and on ``F_p^x`` by right multiplication.

    The unit ``x`` of ``F_p^x`` is point ``p - 1 + x``.  Generators: the translation
    ``w -> w + 1`` (trivial on the second orbit) and multiplication by a primitive root.
    With ``verify`` the absence of derangements is checked by class sweep.
    """
    if not is_prime(p):
        raise InvalidInput(f"{p} is not prime")
    w = fields.field(p).primitive_element() if p > 2 else 1
    n = 2 * p - 1
    t = [(x + 1) % p for x in range(p)] + list(range(p, n))
    m = [(x * w) % p for x in range(p)] + [p - 1 + (x * w) % p for x in range(1, p)]
    g = PermGroup(n, [Permutation(t), Permutation(m)])
    a = MultiOrbitAction(g, (tuple(range(p)), tuple(range(p, n))), ("affine", "regular"))
    assert g.order == p * (p - 1)
    if verify and find_derangement(a).found:
        raise InvariantViolation(f"agl1({p}) has a derangement")
    return a


# a group of order 96 covered by conjugates of two subgroups ---------------------------

ORDER_96_PRESENTATION = """\
gens: x, y, z, t
rels: x^4 = y^4 = z^2 = t^3 = [x,z] = [y,z] = 1,
      [x,y] = z, x^t = y, y^t = (x*y)^-1
"""


@dataclass
class CoveringExample:
    presentation: Presentation
    group: PermGroup  # generators aligned with the presentation's generators
    h1: PermGroup
    h2: PermGroup
    normal: PermGroup
    degree_rule: str
    checks: dict = field(default_factory=dict)


def _words(pr: Presentation, texts):
    return [pr.parse_word(t) for t in texts]


@lru_cache(maxsize=1)
def order_96_example() -> CoveringExample:
    """Realise the presented group of order 96 and validate the covering by H1 and H2.

    The group is enumerated on its 96 elements, then moved to the action on
    the cosets of H2 when that action is faithful.
    """
    pr = parse_presentation(ORDER_96_PRESENTATION)
    table = todd_coxeter(pr)
    regular = table.group()
    h2_words = _words(pr, ["x", "y^2"])
    h2_reg = regular.subgroup([evaluate_word(w, regular.generators) for w in h2_words])
    act = coset_action(regular, h2_reg)
    if act.kernel.is_trivial:
        images = list(act.quotient_images)
        rule = "action on the cosets of H2 (core is trivial)"
    else:
        images = list(regular.generators)
        rule = "regular action (H2 has a nontrivial core)"
    g = PermGroup(len(images[0]), images)

    def sub(texts):
        return g.subgroup([evaluate_word(w, g.generators) for w in _words(pr, texts)])

    h1, h2, normal = sub(["x^2", "y^2", "z", "t"]), sub(["x", "y^2"]), sub(["x^2", "y^2", "z"])
    ex = CoveringExample(pr, g, h1, h2, normal, rule)
    c = ex.checks
    c["order"] = g.order
    c["h1_order"] = h1.order
    c["h2_order"] = h2.order
    lattice = SubgroupLattice(g)
    c["h1_maximal"] = lattice.find(h1).is_maximal
    c["h2_maximal"] = lattice.find(h2).is_maximal
    orders = Counter(x.order() for x in h2.element_list())
    c["h2_abelian_c4xc2"] = h2.is_abelian() and orders == Counter({1: 1, 2: 3, 4: 4})
    c["normal_order"] = normal.order
    c["normal_is_normal"] = normal.is_normal_subgroup_of(g)
    quotient = coset_action(g, normal).image_group
    qorders = Counter(x.order() for x in quotient.element_list())
    # the only nonabelian group of order 12 without elements of order 6 is A4
    c["quotient_is_a4"] = quotient.order == 12 and not quotient.is_abelian() and 6 not in qorders
    c["covering"] = is_normal_covering(g, [h1, h2], cross_check=True).covered
    expected = {
        "order": 96, "h1_order": 24, "h2_order": 8, "h1_maximal": True, "h2_maximal": False,
        "h2_abelian_c4xc2": True, "normal_order": 8, "normal_is_normal": True, "quotient_is_a4": True,
        "covering": True,
    }
    bad = {k: c[k] for k in expected if c[k] != expected[k]}
    if bad:
        raise InvariantViolation(f"order-96 example failed checks: {bad}")
    return ex


# affine catalog entries -------------------------------------------------------------------


def _mat(p, rows) -> MatrixFp:
    return MatrixFp(p, tuple(tuple(r) for r in rows))


def singer_generators(p: int, d: int, frobenius: bool = False) -> list[MatrixFp]:
    """A Singer cycle of GL_d(p) (multiplication by a primitive element of F_{p^d})."""
    F = fields.field(p, d)
    gens = [MatrixFp.from_array(p, F.embed(F.primitive_element()))]
    if frobenius:
        gens.append(MatrixFp.from_array(p, F.frobenius_matrix()))
    return gens


def _quaternion_f3() -> list[MatrixFp]:
    return [_mat(3, [[0, 1], [2, 0]]), _mat(3, [[1, 1], [1, 2]])]


AFFINE_SPECS = {
    "AGL(2,2)": lambda: gl_generators(2, 2),
    "ASL(2,3)": lambda: sl_generators(2, 3),
    "AGL(2,3)": lambda: gl_generators(2, 3),
    "3^2:Q8": _quaternion_f3,
    "3^2:8": lambda: singer_generators(3, 2),
    "5^2:24": lambda: singer_generators(5, 2),
    "ASL(2,5)": lambda: sl_generators(2, 5),
    "7^2:48": lambda: singer_generators(7, 2),
    "2^3:7": lambda: singer_generators(2, 3),
    "2^3:7:3": lambda: singer_generators(2, 3, frobenius=True),
    "AGL(3,2)": lambda: gl_generators(3, 2),
    "3^3:26": lambda: singer_generators(3, 3),
    "2^4:15": lambda: singer_generators(2, 4),
    "2^4:15:4": lambda: singer_generators(2, 4, frobenius=True),
    "2^5:31": lambda: singer_generators(2, 5),
    "2^6:63": lambda: singer_generators(2, 6),
    "2^2:2 (reducible)": lambda: [_mat(2, [[1, 1], [0, 1]])],
    "3^2:2^2 (reducible)": lambda: [_mat(3, [[2, 0], [0, 1]]), _mat(3, [[1, 0], [0, 2]])],
    "2^3:unitriangular (reducible)": lambda: [_mat(2, [[1, 1, 0], [0, 1, 0], [0, 0, 1]]), _mat(2, [[1, 0, 0], [0, 1, 1], [0, 0, 1]])],
}


def affine_catalog_group(name: str) -> AffineGroup:
    if name.startswith("AGL(1,"):
        p = int(name[6:-1])
        w = fields.field(p).primitive_element() if p > 2 else 1
        return affine_group([_mat(p, [[w]])])
    try:
        gens = AFFINE_SPECS[name]()
    except KeyError:
        raise InvalidInput(f"unknown affine catalog group {name!r}") from None
    return affine_group(gens)


# the catalog manifest ---------------------------------------------------------------------


def _base_entries() -> list[dict]:
    out = []

    def add(name, family, params):
        out.append({"name": name, "family": family, "params": list(params)})

    for n in range(1, 13):
        add(f"cyclic({n})", "cyclic", [n])
    for n in range(3, 13):
        add(f"dihedral({n})", "dihedral", [n])
    for n in range(2, 7):
        add(f"symmetric({n})", "symmetric", [n])
    for n in range(3, 7):
        add(f"alternating({n})", "alternating", [n])
    for p in primes_upto(31):
        add(f"agl1({p})", "agl1", [p])
    add("order96", "order96", [])
    for p in (5, 7, 11, 13):
        add(f"psl2({p})", "psl2", [p])
    for d, p in ((2, 2), (3, 2), (2, 3)):
        add(f"gl({d},{p})", "gl", [d, p])
    for p in primes_upto(61):
        add(f"affine:AGL(1,{p})", "affine", [f"AGL(1,{p})"])
    for name in AFFINE_SPECS:
        add(f"affine:{name}", "affine", [name])
    add("direct_product(cyclic(2),cyclic(3))", "direct_product", [["cyclic", [2]], ["cyclic", [3]]])
    add("direct_product(symmetric(3),symmetric(3))", "direct_product", [["symmetric", [3]], ["symmetric", [3]]])
    add("direct_product(cyclic(2),cyclic(2),cyclic(2))", "direct_product", [["cyclic", [2]]] * 3)
    return out


def build_entry(entry: dict) -> MultiOrbitAction:
    """The labelled action described by a manifest entry."""
    fam, params = entry["family"], entry["params"]
    if fam == "agl1":
        return agl1(*params, verify=False)
    if fam == "order96":
        return MultiOrbitAction.from_group(order_96_example().group)
    if fam == "affine":
        return MultiOrbitAction.from_group(affine_catalog_group(params[0]).group)
    if fam == "direct_product":
        return MultiOrbitAction.from_group(named_group("direct_product", *[(f, tuple(ps)) for f, ps in params]))
    if fam == "coset":
        parent = _built(params[0])
        lattice = _lattice(params[0])
        rec = _maximal_class_reps(lattice)[params[1]]
        act = coset_action(parent.group, rec.group(parent.group.degree, parent.group.enum_cap))
        return MultiOrbitAction.from_group(PermGroup(act.degree, act.quotient_images))
    return MultiOrbitAction.from_group(named_group(fam, *params))


_BASE = None


def _base_by_name() -> dict:
    global _BASE
    if _BASE is None:
        _BASE = {e["name"]: e for e in _base_entries()}
    return _BASE


@lru_cache(maxsize=None)
def _built(name: str) -> MultiOrbitAction:
    return build_entry(_base_by_name()[name])


@lru_cache(maxsize=None)
def _lattice(name: str) -> SubgroupLattice:
    return SubgroupLattice(_built(name).group)


def _maximal_class_reps(lattice: SubgroupLattice):
    seen, out = set(), []
    for r in lattice.maximal:
        if r.conjugacy_class_id not in seen:
            seen.add(r.conjugacy_class_id)
            out.append(r)
    return out


@lru_cache(maxsize=4)
def _manifest(lattice_cap: int) -> tuple:
    out = []
    for e in _base_entries():
        out.append(e)
        g = _built(e["name"]).group
        if 1 < g.order <= lattice_cap:
            for k, rec in enumerate(_maximal_class_reps(_lattice(e["name"]))):
                out.append(
                    {
                        "name": f"{e['name']}/maximal[{k}]",
                        "family": "coset",
                        "params": [e["name"], k],
                        "index": str(g.order // rec.order),
                    }
                )
    return tuple(json.dumps(x, sort_keys=True) for x in out)


def catalog_manifest(lattice_cap: int = DEFAULT_LATTICE_CAP) -> list[dict]:
    """The default catalog.

    Base entries are the named families, agl1(p) for p <= 31, the order-96
    example, psl2(p) for p in {5, 7, 11, 13} and affine groups with
    ``p^d <= 64``.  Every base group of order at most ``lattice_cap`` also
    contributes its action on the cosets of one maximal subgroup per
    conjugacy class.
    """
    return [json.loads(x) for x in _manifest(lattice_cap)]


def manifest_json(lattice_cap: int = DEFAULT_LATTICE_CAP) -> str:
    return json.dumps(catalog_manifest(lattice_cap), sort_keys=True, indent=2)


def build_catalog_entry(entry: dict) -> MultiOrbitAction:
    if entry["family"] != "coset" and entry["name"] in _base_by_name():
        return _built(entry["name"])
    return build_entry(entry)


def catalog_actions(max_order: int | None = None, lattice_cap: int = DEFAULT_LATTICE_CAP):
    """Yield ``(entry, action)`` for every manifest entry within ``max_order``."""
    for e in catalog_manifest(lattice_cap):
        a = build_catalog_entry(e)
        if max_order is None or a.group.order <= max_order:
            yield e, a


def affine_primitivity_agrees(name: str) -> bool:
    """The natural affine action is primitive exactly when the linear part is irreducible."""
    A = affine_catalog_group(name)
    irreducible = bool(is_irreducible(A.linear_generators, A.p, A.d))
    return bool(is_primitive(A.group)) == irreducible and is_transitive(A.group)
