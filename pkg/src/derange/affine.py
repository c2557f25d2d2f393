"""Affine groups V:H over F_p realised as permutation groups, and checks built on them.

Points of the affine action are vectors under the encoding in :mod:`derange.linalg`.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from . import fields
from .actions import coset_action, disjoint_union, is_primitive, is_transitive, point_stabilizer
from .derangements import is_derangement
from .errors import CapExceeded, InvalidInput
from .group import PermGroup
from .linalg import (
    AffineMap,
    MatrixFp,
    SubspaceFp,
    all_vectors,
    decode,
    encode_rows,
    mat_rank_image_kernel,
    translation_permutation,
)
from .numtheory import is_prime
from .perm import Permutation, format_cycles

DEFAULT_SPIN_CAP = 2**20


# standard generating sets --------------------------------------------------------


def _primitive_root(p: int) -> int:
    return fields.field(p).primitive_element() if p > 2 else 1


def transvections(p: int, d: int) -> list[MatrixFp]:
    out = []
    for i in range(d):
        for j in range(d):
            if i != j:
                a = np.eye(d, dtype=np.int64)
                a[i, j] = 1
                out.append(MatrixFp.from_array(p, a))
    return out


def sl_generators(d: int, p: int) -> list[MatrixFp]:
    """Elementary transvections, which generate SL_d(p)."""
    if d == 1:
        return []
    return transvections(p, d)


def gl_generators(d: int, p: int) -> list[MatrixFp]:
    """Transvections together with ``diag(w, 1, ..., 1)`` for a primitive root ``w``."""
    gens = sl_generators(d, p)
    if p > 2:
        a = np.eye(d, dtype=np.int64)
        a[0, 0] = _primitive_root(p)
        gens.append(MatrixFp.from_array(p, a))
    return gens


def _dims(gens, p, d):
    gens = list(gens)
    if gens:
        p = gens[0].p if p is None else p
        d = gens[0].d if d is None else d
        if any(g.p != p or g.d != d for g in gens):
            raise InvalidInput("generators over different fields or dimensions")
    if p is None or d is None:
        raise InvalidInput("p and d are needed when there are no generators")
    if not is_prime(p) or d < 1:
        raise InvalidInput("need a prime p and d >= 1")
    return gens, p, d


def linear_group(gens, p: int | None = None, d: int | None = None, cap: int = 10**6) -> PermGroup:
    """The matrix group as a permutation group on all ``p^d`` vectors (0 is fixed)."""
    gens, p, d = _dims(gens, p, d)
    if p**d > cap:
        raise CapExceeded(f"p^d = {p ** d} exceeds the degree cap {cap}")
    for g in gens:
        if not g.is_invertible():
            raise InvalidInput("linear generators must be invertible")
    return PermGroup(p**d, [g.permutation() for g in gens])


def matrix_of_permutation(perm: Permutation, p: int, d: int) -> MatrixFp:
    """Recover ``M`` from the permutation ``v -> v M`` via the images of the unit vectors."""
    rows = [decode(perm(p**i), p, d) for i in range(d)]
    return MatrixFp(p, tuple(rows))


# irreducibility ------------------------------------------------------------------


@dataclass(frozen=True)
class IrreducibilityResult:
    irreducible: bool
    witness: SubspaceFp | None = None

    def __bool__(self):
        return self.irreducible


def spin(gens, v, p: int, d: int) -> SubspaceFp:
    """Smallest subspace containing ``v`` and stable under every generator."""
    F = fields.field(p)
    basis = np.asarray([v], dtype=np.int64) % p
    basis, _ = fields.rref(F, basis)
    frontier = list(basis)
    while frontier:
        new = []
        for w in frontier:
            for g in gens:
                img = (w @ g.array) % p
                red, _ = fields.rref(F, np.vstack([basis, img]))
                if red.shape[0] > basis.shape[0]:
                    basis = red
                    new.append(img)
        frontier = new
        if basis.shape[0] == d:
            break
    return SubspaceFp(p, d, tuple(tuple(int(x) for x in r) for r in basis))


def is_irreducible(gens, p: int | None = None, d: int | None = None, cap: int = DEFAULT_SPIN_CAP) -> IrreducibilityResult:
    gens, p, d = _dims(gens, p, d)
    if p**d > cap:
        raise CapExceeded(f"p^d = {p ** d} exceeds the spin cap {cap}")
    vecs = all_vectors(p, d)
    for row in vecs[1:]:
        # scalar multiples spin the same subspace; only try vectors with leading entry 1
        lead = row[np.flatnonzero(row)[0]]
        if lead != 1:
            continue
        sub = spin(gens, row, p, d)
        if sub.dimension < d:
            return IrreducibilityResult(False, sub)
    return IrreducibilityResult(True)


# affine groups -------------------------------------------------------------------


@dataclass
class AffineGroup:
    """``V:H`` on the ``p^d`` vectors; generators are the unit translations, then H's generators."""

    p: int
    d: int
    linear_generators: list[MatrixFp]
    group: PermGroup
    translations: PermGroup
    linear: PermGroup

    @property
    def degree(self) -> int:
        return self.p**self.d

    def element(self, g: AffineMap) -> Permutation:
        return g.permutation()


def affine_group(h_gens, p: int | None = None, d: int | None = None, cap: int = 10**6) -> AffineGroup:
    h_gens, p, d = _dims(h_gens, p, d)
    lin = linear_group(h_gens, p, d, cap)
    unit = np.eye(d, dtype=np.int64)
    trans = [translation_permutation(unit[i], p) for i in range(d)]
    group = PermGroup(p**d, trans + list(lin.generators))
    stab = point_stabilizer(group, 0)
    assert stab.order == lin.order and lin.is_subgroup_of(stab), "stabiliser of 0 must be the linear group"
    assert group.order == p**d * lin.order
    return AffineGroup(p, d, list(h_gens), group, PermGroup(p**d, trans), lin)


# fixed-space congruence ------------------------------------------------------------


@dataclass(frozen=True)
class CongruenceResult:
    status: str  # "holds", "fails" or "hypothesis unmet"
    element_order: int
    q: int
    e: int
    fixed_dim: int | None = None
    dim: int | None = None

    @property
    def holds(self) -> bool:
        return self.status == "holds"


def congruence_hypothesis(order: int, q: int, e: int) -> bool:
    """``order`` divides ``q^e - 1`` and is coprime to ``q^i - 1`` for ``0 < i < e``."""
    if (q**e - 1) % order:
        return False
    return all(math.gcd(order, q**i - 1) == 1 for i in range(1, e))


def check_fixed_space_congruence(g: MatrixFp, q: int, e: int) -> CongruenceResult:
    """For ``g`` an F_q-linear map written over F_p (q = p^f), test ``dim C_V(g) = dim V mod e``.

    Dimensions are over F_q, i.e. the F_p dimensions divided by ``f``.
    """
    f = round(math.log(q, g.p))
    if g.p**f != q or g.d % f:
        raise InvalidInput(f"q = {q} is not a power of {g.p} dividing the dimension")
    order = g.order()
    if not congruence_hypothesis(order, q, e):
        return CongruenceResult("hypothesis unmet", order, q, e)
    _, _, ker = mat_rank_image_kernel(g, shift=True)
    fixed, n = ker.dimension // f, g.d // f
    status = "holds" if (fixed - n) % e == 0 else "fails"
    return CongruenceResult(status, order, q, e, fixed, n)


def congruence_sweep(elements, q: int, max_e: int | None = None) -> dict:
    """Check every element against every ``e`` satisfying the hypothesis."""
    checked = failed = 0
    for g in elements:
        top = max_e or g.d
        for e in range(1, top + 1):
            r = check_fixed_space_congruence(g, q, e)
            if r.status == "hypothesis unmet":
                continue
            checked += 1
            failed += r.status == "fails"
    return {"checked": checked, "failed": failed}


def matrix_group_elements(gens, p: int | None = None, d: int | None = None) -> list[MatrixFp]:
    """All elements of the matrix group generated by ``gens`` (via its action on vectors)."""
    gens, p, d = _dims(gens, p, d)
    lin = linear_group(gens, p, d)
    return [matrix_of_permutation(x, p, d) for x in lin.element_list()]


def gl_elements(d: int, p: int) -> list[MatrixFp]:
    return matrix_group_elements(gl_generators(d, p), p, d)


def gl_over_extension_as_subgroup(n: int, p: int, f: int) -> list[MatrixFp]:
    """Generators of GL_n(p^f) embedded in GL_{nf}(p) via the regular representation."""
    F = fields.field(p, f)
    gens = []
    for i in range(n):
        for j in range(n):
            if i != j:
                a = np.eye(n, dtype=np.int64)
                a[i, j] = 1
                gens.append(a)
    a = np.eye(n, dtype=np.int64)
    a[0, 0] = F.primitive_element()
    gens.append(a)
    return [MatrixFp.from_array(p, fields.embed_matrix(F, m)) for m in gens]


# derangements from a vector outside im(h - 1) ---------------------------------------


@dataclass
class AffineDerangementReport:
    status: str  # "ok", "precondition failed" or "no admissible v"
    failures: list[str] = field(default_factory=list)
    element: AffineMap | None = None
    permutation: Permutation | None = None
    degrees: tuple[int, int] | None = None
    verified: bool = False
    checks: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = {"status": self.status, "failures": list(self.failures), "verified": self.verified, "checks": self.checks}
        if self.element is not None:
            out["translation"] = list(self.element.translation)
            out["linear"] = [list(r) for r in self.element.linear.rows]
            out["permutation"] = format_cycles(self.permutation)
            out["degrees"] = list(self.degrees)
        return out


def affine_derangement_from(h: MatrixFp, h_gens, m_gens, v) -> AffineDerangementReport:
    """Build ``(v, h^-1)`` in ``V:H`` and verify that it derangs ``V`` and the cosets of ``V:M``.

    Preconditions: ``h`` lies in ``H``, ``M <= H``, ``h`` fixes no coset of ``M``
    in ``H``, and ``v`` is not in the image of ``h - 1``.
    """
    h_gens, p, d = _dims(h_gens, h.p, h.d)
    m_gens, _, _ = _dims(m_gens, p, d)
    v = tuple(int(x) % p for x in v)
    if len(v) != d:
        raise InvalidInput("vector length does not match the dimension")
    rep = AffineDerangementReport("ok")
    A = affine_group(h_gens, p, d)
    H = A.linear
    hp = h.permutation()
    M = PermGroup(p**d, [g.permutation() for g in m_gens])
    if not H.contains(hp):
        rep.failures.append("h is not in H")
    if not M.is_subgroup_of(H):
        rep.failures.append("M is not a subgroup of H")
    if not rep.failures:
        if coset_action(H, M).image(hp).num_fixed():
            rep.failures.append("h fixes a coset of M in H")
    rank, image, _ = mat_rank_image_kernel(h, shift=True)
    rep.checks["rank(h-1)"] = rank
    if rank == d:
        rep.status = "no admissible v"
        return rep
    if image.contains(v):
        rep.failures.append("v lies in im(h-1)")
    if rep.failures:
        rep.status = "precondition failed"
        return rep

    g = AffineMap(v, h.inverse())
    gp = g.permutation()
    VM = A.group.subgroup(list(A.translations.generators) + list(M.generators))
    cosets = coset_action(A.group, VM)
    union = disjoint_union(A.group, cosets, labels=("V", "cosets"))
    full = Permutation._trusted(gp.images + tuple(A.degree + x for x in cosets.image(gp).images))
    assert union.group.contains(full)
    rep.element, rep.permutation, rep.degrees = g, full, (A.degree, cosets.degree)
    # independent check: no conjugate of g lies in H (fixes 0) or in V:M
    conj_in_h = conj_in_vm = False
    for x in A.group.element_list():
        c = gp.conjugate(x)
        conj_in_h = conj_in_h or c(0) == 0
        conj_in_vm = conj_in_vm or VM.contains(c)
    rep.checks["conjugate in H"] = conj_in_h
    rep.checks["conjugate in V:M"] = conj_in_vm
    rep.verified = is_derangement(full, union) and not conj_in_h and not conj_in_vm
    return rep


# a derangement whose image fixes a vector -----------------------------------------------


@dataclass
class IsbellReport:
    status: str  # "ok", "precondition failed" or "no witness"
    preconditions: dict = field(default_factory=dict)
    witness: Permutation | None = None
    witness_order: int | None = None
    witness_matrix: MatrixFp | None = None
    fixed_vector: tuple[int, ...] | None = None
    p_divides_stabilizer: bool | None = None
    classes_examined: int = 0

    def to_dict(self) -> dict:
        out = {
            "status": self.status,
            "preconditions": {k: v for k, v in self.preconditions.items()},
            "classes_examined": self.classes_examined,
            "p_divides_stabilizer": self.p_divides_stabilizer,
        }
        if self.witness is not None:
            out["witness"] = format_cycles(self.witness)
            out["witness_order"] = str(self.witness_order)
            out["witness_matrix"] = [list(r) for r in self.witness_matrix.rows]
            out["fixed_vector"] = list(self.fixed_vector)
        return out


def isbell_witness(G: PermGroup, rho, cap: int | None = None) -> IsbellReport:
    """Find a derangement ``g`` of ``G`` whose image under ``rho`` fixes a nonzero vector.

    ``rho`` lists matrices aligned with ``G.generators``.  The map is validated as a
    homomorphism by comparing ``|G|`` with the order of the diagonal group
    ``<(g_i, rho_i)>``: the projection onto ``G`` is injective exactly when the
    images respect every relation of ``G``.
    """
    rho = list(rho)
    if len(rho) != len(G.generators):
        raise InvalidInput("rho must give one matrix per generator")
    rho, p, d = _dims(rho, None, None)
    rep = IsbellReport("ok")
    pre = rep.preconditions
    n = G.degree
    pre["primitive"] = G.degree >= 2 and is_transitive(G) and bool(is_primitive(G))
    lin = linear_group(rho, p, d)
    diag_gens = [
        Permutation._trusted(s.images + tuple(n + x for x in m.permutation().images)) for s, m in zip(G.generators, rho)
    ]
    D = PermGroup(n + p**d, diag_gens, enum_cap=G.enum_cap if cap is None else cap)
    pre["homomorphism"] = D.order == G.order
    pre["faithful"] = pre["homomorphism"] and lin.order == G.order
    pre["irreducible"] = bool(is_irreducible(rho, p, d))
    pre["p^d divides degree"] = n % p**d == 0
    if not all(pre.values()):
        rep.status = "precondition failed"
        return rep
    rep.p_divides_stabilizer = point_stabilizer(G, 0).order % p == 0
    table = D.conjugacy_classes(cap)
    for k, rep_perm in enumerate(table.representatives):
        rep.classes_examined = k + 1
        row = np.asarray(rep_perm.images)
        g_part = row[:n]
        if np.any(g_part == np.arange(n)):
            continue
        vec_part = row[n:] - n
        fixed = np.flatnonzero(vec_part == np.arange(p**d))
        fixed = fixed[fixed != 0]
        if fixed.size:
            g = Permutation._trusted(tuple(int(x) for x in g_part))
            rep.witness = g
            rep.witness_order = g.order()
            rep.witness_matrix = matrix_of_permutation(Permutation._trusted(tuple(int(x) for x in vec_part)), p, d)
            rep.fixed_vector = decode(int(fixed[0]), p, d)
            assert rep.witness_matrix.act(rep.fixed_vector) == rep.fixed_vector
            return rep
    rep.status = "no witness"
    return rep


def gl32_on_eight_points() -> tuple[PermGroup, list[MatrixFp]]:
    """GL_3(2) acting on the 8 cosets of a subgroup of order 21, with its natural matrices."""
    gens = gl_generators(3, 2)
    lin = linear_group(gens, 2, 3)
    F = fields.field(2, 3)
    singer = MatrixFp.from_array(2, F.embed(F.primitive_element()))
    frob = MatrixFp.from_array(2, F.frobenius_matrix())
    sub = lin.subgroup([singer.permutation(), frob.permutation()])
    assert sub.order == 21
    act = coset_action(lin, sub)
    assert act.degree == 8 and act.kernel.is_trivial
    return PermGroup(8, act.quotient_images), gens


# unipotent elements of GL_m(p^2) and the subgroup GL_m(p) ---------------------------------


def partitions(m: int, largest: int | None = None):
    """Partitions of ``m`` in non-increasing order, lexicographically decreasing."""
    largest = m if largest is None else largest
    if m == 0:
        yield ()
        return
    for k in range(min(m, largest), 0, -1):
        for rest in partitions(m - k, k):
            yield (k,) + rest


def jordan_unipotent(partition, m: int) -> np.ndarray:
    """Block-diagonal unipotent Jordan matrix (1 on the diagonal and superdiagonal within blocks)."""
    a = np.eye(m, dtype=np.int64)
    pos = 0
    for k in partition:
        for i in range(k - 1):
            a[pos + i, pos + i + 1] = 1
        pos += k
    return a


def _v(n: int, p: int) -> int:
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def _nilpotent_matrices(F: fields.GF, m: int, cap: int) -> np.ndarray:
    """All nilpotent ``m x m`` matrices over F, by brute force over ``q^(m^2)`` candidates."""
    q = F.q
    total = q ** (m * m)
    if total > cap:
        raise CapExceeded(f"{total} matrices exceed the enumeration cap {cap}")
    k = np.arange(total, dtype=np.int64)
    mats = np.empty((total, m, m), dtype=np.int64)
    for idx in range(m * m):
        mats[:, idx // m, idx % m] = k % q
        k //= q
    power = mats.copy()
    for _ in range(m - 1):
        power = _batch_mul(F, power, mats)
    keep = ~power.reshape(total, -1).any(axis=1)
    return mats[keep]


def _batch_mul(F: fields.GF, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    m = a.shape[1]
    out = np.zeros_like(a)
    for i in range(m):
        for j in range(m):
            acc = np.zeros(a.shape[0], dtype=np.int64)
            for k in range(m):
                acc = F.add[acc, F.mul[a[:, i, k], b[:, k, j]]]
            out[:, i, j] = acc
    return out


def jordan_type(F: fields.GF, u: np.ndarray) -> tuple[int, ...]:
    """Partition of the unipotent ``u`` read off from the ranks of powers of ``u - 1``."""
    m = u.shape[0]
    n = F.sub[u, np.eye(m, dtype=np.int64)]
    ranks = [m]
    x = np.eye(m, dtype=np.int64)
    while ranks[-1] > 0:
        x = fields.mat_mul(F, x, n)
        ranks.append(fields.rank(F, x))
    # number of blocks of size >= k is rank(N^(k-1)) - rank(N^k)
    at_least = [ranks[k - 1] - ranks[k] for k in range(1, len(ranks))]
    parts = []
    for k in range(len(at_least), 0, -1):
        exactly = at_least[k - 1] - (at_least[k] if k < len(at_least) else 0)
        parts.extend([k] * exactly)
    return tuple(parts)


def conjugator(F: fields.GF, u: np.ndarray, j: np.ndarray) -> np.ndarray | None:
    """An invertible ``X`` over F with ``u X = X j``, or None."""
    m = u.shape[0]
    # linear system in the m*m entries of X: (u X - X j)[r, c] = 0
    rows = []
    for r in range(m):
        for c in range(m):
            coeffs = np.zeros(m * m, dtype=np.int64)
            for k in range(m):
                coeffs[k * m + c] = F.add[coeffs[k * m + c], u[r, k]]
                coeffs[r * m + k] = F.sub[coeffs[r * m + k], j[k, c]]
            rows.append(coeffs)
    basis = fields.right_kernel(F, np.array(rows))
    dim = basis.shape[0]
    for combo in itertools.product(range(F.q), repeat=dim):
        x = np.zeros(m * m, dtype=np.int64)
        for c, b in zip(combo, basis):
            if c:
                x = F.add[x, F.mul[c, b]]
        xm = x.reshape(m, m)
        if fields.det(F, xm):
            return xm
    return None


@dataclass
class UnipotentReport:
    m: int
    p: int
    field_modulus: tuple[int, ...]
    group_order: int
    subgroup_order: int
    index: int
    index_valuation: int
    divisibility_claim: bool  # p^(2m) divides the index
    in_stated_range: bool  # 2m >= 6
    classes: list[tuple[int, ...]] = field(default_factory=list)
    class_sizes: dict = field(default_factory=dict)
    representatives_in_subgroup: bool = False
    unipotents_enumerated: int | None = None
    conjugators_verified: int | None = None
    all_meet_subgroup: bool = False

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "p": self.p,
            "field_modulus": list(self.field_modulus),
            "group_order": str(self.group_order),
            "subgroup_order": str(self.subgroup_order),
            "index": str(self.index),
            "index_valuation": self.index_valuation,
            "p^(2m) divides index": self.divisibility_claim,
            "in_stated_range": self.in_stated_range,
            "unipotent_classes": ["+".join(map(str, c)) for c in self.classes],
            "class_sizes": {"+".join(map(str, k)): str(v) for k, v in self.class_sizes.items()},
            "representatives_in_subgroup": self.representatives_in_subgroup,
            "unipotents_enumerated": self.unipotents_enumerated,
            "conjugators_verified": self.conjugators_verified,
            "all_unipotents_meet_subgroup": self.all_meet_subgroup,
        }


def unipotent_field_extension_check(m: int, p: int, enumerate_cap: int = 2**20) -> UnipotentReport:
    """Do the p-elements of GL_m(p^2) all lie in conjugates of GL_m(p)?

    The p-elements are the unipotent matrices; their classes are indexed by
    partitions of ``m`` through Jordan forms with entries 0 and 1, which already
    lie in GL_m(p).  When ``q^(m^2)`` is within ``enumerate_cap`` every unipotent
    element is also enumerated and given an explicit conjugator to its Jordan form.
    Also records whether ``p^(2m)`` divides the index ``|GL_m(p^2) : GL_m(p)|``.
    """
    if not is_prime(p) or m < 1:
        raise InvalidInput("need a prime p and m >= 1")
    F = fields.field(p, 2)
    go, ho = fields.gl_order(m, p * p), fields.gl_order(m, p)
    index = go // ho
    vp = _v(index, p)
    rep = UnipotentReport(
        m, p, F.modulus, go, ho, index, vp, vp >= 2 * m, 2 * m >= 6,
    )
    rep.classes = list(partitions(m))
    jordans = {lam: jordan_unipotent(lam, m) for lam in rep.classes}
    rep.representatives_in_subgroup = all(
        set(np.unique(j).tolist()) <= {0, 1} and fields.det(fields.field(p), j) != 0 for j in jordans.values()
    )
    met = rep.representatives_in_subgroup
    if F.q ** (m * m) <= enumerate_cap:
        nil = _nilpotent_matrices(F, m, enumerate_cap)
        eye = np.eye(m, dtype=np.int64)
        counts = dict.fromkeys(rep.classes, 0)
        verified = 0
        for nmat in nil:
            u = F.add[nmat, eye]
            lam = jordan_type(F, u)
            counts[lam] += 1
            x = conjugator(F, u, jordans[lam])
            if x is not None and np.array_equal(fields.mat_mul(F, u, x), fields.mat_mul(F, x, jordans[lam])):
                verified += 1
        rep.unipotents_enumerated = len(nil)
        rep.conjugators_verified = verified
        rep.class_sizes = counts
        # every unipotent element of GL_m(q) numbers q^(m(m-1))
        assert len(nil) == F.q ** (m * (m - 1))
        met = met and verified == len(nil)
    rep.all_meet_subgroup = met
    return rep
