"""The ``derange`` command line.

Exit status: 0 when the analysis ran to completion (whatever the verdict),
1 for invalid input, 2 when a cap was exceeded and 3 when a proved statement
failed, which points to a bug rather than to the input.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from . import affine, fields, formats, invariants, roots
from .actions import coset_action, disjoint_union, is_primitive, is_transitive
from .constructions import build_catalog_entry, catalog_manifest
from .derangements import (
    coset_average_fixed_points,
    find_derangement,
    find_prime_power_derangement,
    is_normal_covering,
    lift_derangement,
)
from .errors import CapExceeded, DerangeError, InvalidInput, InvariantViolation
from .group import DEFAULT_ENUM_CAP
from .harness import HARNESS_MAX_ORDER, coset_average_samples, conjecture_harness, sweep_single_group
from .lattice import DEFAULT_LATTICE_CAP
from .presentation import DEFAULT_COSET_CAP, parse_presentation, todd_coxeter
from .perm import format_cycles, parse_cycles

EXIT_OK, EXIT_INVALID, EXIT_CAP, EXIT_INVARIANT = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def canonical(obj):
    """JSON-ready copy with integers and fractions as decimal strings."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, (int, Fraction)):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): canonical(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [canonical(v) for v in obj]
    if hasattr(obj, "item"):  # numpy scalars
        return canonical(obj.item())
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(report: dict) -> str:
    return json.dumps(canonical(report), sort_keys=True, indent=2) + "\n"


def _text(obj, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.extend(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)) and v:
                sub = _text(v, indent + 1)
                lines.append(f"{pad}- " + sub[0].lstrip())
                lines.extend(sub[1:])
            else:
                lines.append(f"{pad}- {_scalar(v)}")
    else:
        lines.append(pad + _scalar(obj))
    return lines


def _scalar(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, (list, dict)):
        return "none"
    return str(v)


class Run:
    """Collects the result and the list of checked preconditions for one command."""

    def __init__(self, args):
        self.args = args
        self.assumptions: list[dict] = []
        self.raw_text: str | None = None

    def check(self, name: str, how: str, result: bool):
        self.assumptions.append({"name": name, "how": how, "result": bool(result)})

    @property
    def enum_cap(self) -> int:
        return self.args.cap_enum


# commands --------------------------------------------------------------------------------


def cmd_check(run: Run) -> dict:
    a = run.args
    cap = run.enum_cap
    if a.cosets_of:
        g = formats.read_action(a.file, cap).group
        parts = []
        for path in a.cosets_of:
            h = formats.read_group(path, cap)
            if h.degree != g.degree or not h.is_subgroup_of(g):
                raise InvalidInput(f"{path} is not a subgroup of the group in {a.file}")
            parts.append(coset_action(g, h, a.cap_coset))
            run.check(f"{path} is a subgroup", "sifting its generators", True)
        action = disjoint_union(*parts)
        source = {"group_order": g.order, "coset_degrees": [p.degree for p in parts]}
    else:
        action = formats.read_action(a.file, cap)
        source = {"group_order": action.group.order}
    run.check("listed parts are orbits", "orbit recomputation", True)
    rep = find_derangement(action, cap, a.seed)
    run.check("fixed-point count is a class function", "random conjugate per class", True)
    out = rep.to_dict()
    out["orbit_sizes"] = action.orbit_sizes
    out.update(source)
    pp = find_prime_power_derangement(action, cap, a.seed)
    out["prime_power_witness"] = None if not pp.found else {
        "cycles": format_cycles(pp.witness), "order": pp.witness_order, "prime": pp.prime,
    }
    if len(action.orbits) == 2:
        lift = lift_derangement(action, cap)
        out["lifting_strategy"] = {"verdict": lift.verdict, "status": lift.status}
        if lift.found != rep.found and lift.verdict != "inapplicable":
            raise InvariantViolation("lifting strategy disagrees with the class sweep")
    return out


def cmd_covering(run: Run) -> dict:
    a = run.args
    g = formats.read_group(a.group, run.enum_cap)
    subs = [formats.read_group(p, run.enum_cap) for p in a.subgroups]
    rep = is_normal_covering(g, subs, cross_check=True)
    run.check("subgroups proper and contained", "sifting generators", True)
    run.check("class sweep agrees with derangement search on the coset union", "independent search", rep.cross_checked)
    return rep.to_dict()


def cmd_verify(run: Run) -> dict:
    a = run.args
    target = a.target or ("catalog" if a.catalog else None)
    if target is None:
        raise InvalidInput("give a group file or --catalog default")
    if target == "catalog":
        if a.catalog not in (None, "default"):
            raise InvalidInput(f"unknown catalog {a.catalog!r}")
        rep = conjecture_harness(a.max_order, a.jobs, a.cap_lattice)
        run.check("faithful coset actions skipped", "image order equals base order", True)
    else:
        g = formats.read_group(target, run.enum_cap)
        rep = sweep_single_group(g, target, a.cap_lattice)
    run.check("covering is conjugation invariant", "pairs over class representatives", True)
    run.check("class sweep agrees with coset-action search", "every pair cross-checked", True)
    return rep.to_dict()


def cmd_coset_average(run: Run) -> dict:
    a = run.args
    if a.samples:
        if a.group or a.perm:
            raise InvalidInput("--samples draws its own group and permutation")
        rows = coset_average_samples(a.samples, a.seed)
        run.check("every sampled group is transitive", "orbit computation", True)
        return {"samples": len(rows), "all_equal_one": True, "average": "1", "rows": rows}
    if not (a.group and a.perm):
        raise InvalidInput("give a group file and a permutation, or --samples N")
    g = formats.read_group(a.group, run.enum_cap)
    h = parse_cycles(a.perm, g.degree)
    if not is_transitive(g):
        raise InvalidInput("the group must be transitive")
    run.check("group is transitive", "orbit computation", True)
    avg = coset_average_fixed_points(g, h)
    if avg != 1:
        raise InvariantViolation(f"average number of fixed points over the coset is {avg}, not 1")
    return {"average": avg, "h": format_cycles(h), "group_order": g.order}


def cmd_present(run: Run) -> dict:
    a = run.args
    pr = parse_presentation(formats.read_text(a.file))
    words = [pr.parse_word(w) for w in a.subgroup.split(",") if w.strip()] if a.subgroup else []
    table = todd_coxeter(pr, words, cap=a.cap_coset)
    g = table.group(run.enum_cap)
    header = f"action on {table.n_cosets} cosets"
    if words:
        header += " of <" + ", ".join(pr.word_str(w) for w in words) + ">"
    run.raw_text = formats.format_group(g, header)
    return {
        "cosets": table.n_cosets,
        "image_order": g.order,
        "generators": list(pr.generators),
        "group_file": run.raw_text,
    }


def cmd_affine(run: Run) -> dict:
    a = run.args
    out = {}
    if a.gl:
        d, p = a.gl
        q = p ** a.extension
        if a.extension > 1:
            gens = affine.gl_over_extension_as_subgroup(d, p, a.extension)
            elems = affine.matrix_group_elements(gens, p, d * a.extension)
            label = f"GL({d},{q}) inside GL({d * a.extension},{p})"
        else:
            elems = affine.gl_elements(d, p)
            label = f"GL({d},{p})"
        sweep = affine.congruence_sweep(elems, q)
        out["fixed_space_congruence"] = {"group": label, "elements": len(elems), **sweep}
        if a.extension > 1:
            out["fixed_space_congruence"]["field_modulus"] = list(fields.field(p, a.extension).modulus)
        if sweep["failed"]:
            raise InvariantViolation(f"fixed-space congruence fails in {label}")
    if a.field_extension:
        m, p = a.field_extension
        out["field_extension"] = affine.unipotent_field_extension_check(m, p).to_dict()
    if a.instance:
        inst = formats.read_affine_instance(a.instance, run.enum_cap)
        if not inst.linear:
            raise InvalidInput("the instance has no 'linear' section")
        irr = affine.is_irreducible(inst.linear, inst.p, inst.d, a.cap_spin)
        A = affine.affine_group(inst.linear, inst.p, inst.d, run.enum_cap)
        prim = bool(is_primitive(A.group))
        run.check("stabilizer of 0 equals H", "order comparison", True)
        if prim != bool(irr):
            raise InvariantViolation("affine primitivity disagrees with irreducibility")
        run.check("primitive iff irreducible", "block search and spin", True)
        out["affine_group"] = {
            "p": inst.p, "d": inst.d, "order": A.group.order, "linear_order": A.linear.order,
            "irreducible": bool(irr),
            "invariant_subspace_witness": None if irr.witness is None else list(irr.witness.basis),
            "primitive": prim,
        }
        if inst.element is not None or inst.vector is not None or inst.subgroup is not None:
            if inst.element is None or inst.vector is None or inst.subgroup is None:
                raise InvalidInput("the derangement construction needs 'element', 'subgroup' and 'vector'")
            rep = affine.affine_derangement_from(inst.element, inst.linear, inst.subgroup, inst.vector)
            if rep.status == "ok" and not rep.verified:
                raise InvariantViolation("constructed element is not a derangement")
            out["derangement_construction"] = rep.to_dict()
    if not out:
        raise InvalidInput("nothing to do: give an instance file, --gl or --field-extension")
    return out


def cmd_isbell(run: Run) -> dict:
    a = run.args
    if a.example == "gl32":
        G, rho = affine.gl32_on_eight_points()
    elif a.instance:
        inst = formats.read_affine_instance(a.instance, run.enum_cap)
        if inst.rep_group is None:
            raise InvalidInput("the instance has no 'rep' section")
        G, rho = inst.rep_group, inst.rep_images
    else:
        raise InvalidInput("give an instance file or --example gl32")
    rep = affine.isbell_witness(G, rho, run.enum_cap)
    for k, v in rep.preconditions.items():
        run.check(k, "computed", v)
    if rep.status == "no witness":
        raise InvariantViolation("hypotheses hold but no witness exists")
    return rep.to_dict()


def cmd_roots(run: Run) -> dict:
    a = run.args
    rank = int(a.system[1:])
    system = roots.build_root_system(rank)
    out = {
        "system": a.system,
        "roots": len(system),
        "expected": roots.EXPECTED_COUNTS[rank],
        "positive_roots": len(system.positive_roots()),
        "simple_roots": [roots.format_vector(r) for r in system.simple_roots],
    }
    if len(system) != roots.EXPECTED_COUNTS[rank]:
        raise InvariantViolation(f"{a.system} has {len(system)} roots")
    run.check("coefficients integral and sign-coherent", "exact rational solve", True)
    if a.verify_lemma:
        out["end_node_filter"] = roots.end_node_roots(rank, system).to_dict()
    return out


def cmd_bounds(run: Run) -> dict:
    a = run.args
    out = {}
    if a.check:
        d, r, p = a.check
        out["valuation_bound"] = invariants.valuation_bound_check(d, r, p).to_dict()
    if a.field:
        b, p, f = a.field
        out["field_bound"] = invariants.field_bound_check(b, p, f).to_dict()
    if a.grid or not (a.check or a.field):
        out["valuation_bound_grid"] = invariants.valuation_bound_grid()
        out["field_bound_grid"] = invariants.field_bound_grid()
    if not (a.check or a.field or a.grid):
        out["factorial_valuations"] = _factorial_grid()
        out["table_invariant_b_ge_d_minus_2"] = invariants.table_invariant_holds()
        out["records"] = [invariants.check_ppart_bounds(r).to_dict() for r in invariants.shipped_records()]
    return out


def _factorial_grid(max_m: int = 2000, max_p: int = 97) -> dict:
    from .numtheory import primes_upto

    ps = primes_upto(max_p)
    bad = [(m, p) for p in ps for m in range(max_m + 1) if invariants.vp_factorial(m, p) != invariants.legendre(m, p)]
    return {"max_m": max_m, "max_p": max_p, "checked": (max_m + 1) * len(ps), "mismatches": bad}


def cmd_catalog(run: Run) -> dict:
    a = run.args
    entries = catalog_manifest(a.cap_lattice)
    if a.export:
        match = [e for e in entries if e["name"] == a.export]
        if not match:
            raise InvalidInput(f"no catalog entry named {a.export!r}")
        action = build_catalog_entry(match[0])
        run.raw_text = formats.format_action(action, f"catalog entry {a.export}")
        return {"name": a.export, "action_file": run.raw_text}
    return {"entries": entries, "count": len(entries)}


COMMANDS = {
    "check": cmd_check,
    "covering": cmd_covering,
    "verify-conjecture": cmd_verify,
    "coset-average": cmd_coset_average,
    "present": cmd_present,
    "affine": cmd_affine,
    "isbell": cmd_isbell,
    "roots": cmd_roots,
    "bounds": cmd_bounds,
    "catalog": cmd_catalog,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="canonical JSON report on stdout")
    common.add_argument("--timing", action="store_true", help="elapsed time on stderr")
    common.add_argument("--jobs", type=_positive, default=1, help="worker processes for the catalog sweep")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--cap-enum", type=_positive, default=DEFAULT_ENUM_CAP, help="largest group to enumerate")
    common.add_argument("--cap-lattice", type=_positive, default=DEFAULT_LATTICE_CAP, help="largest group for the subgroup lattice")
    common.add_argument("--cap-coset", type=_positive, default=DEFAULT_COSET_CAP, help="largest coset table or coset action")
    common.add_argument("--cap-spin", type=_positive, default=affine.DEFAULT_SPIN_CAP, help="largest p^d for irreducibility by spinning")

    parser = _Parser(prog="derange", description="Derangements, normal coverings and affine groups at desk scale.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check", parents=[common], help="search an action for a derangement")
    p.add_argument("file", help="action file, or a group file")
    p.add_argument("--cosets-of", action="append", metavar="SUBGROUP_FILE", help="act on the cosets of this subgroup (repeatable)")

    p = sub.add_parser("covering", parents=[common], help="is the group the union of conjugates of these subgroups?")
    p.add_argument("group")
    p.add_argument("subgroups", nargs="+")

    p = sub.add_parser("verify-conjecture", parents=[common], help="equal-order subgroup pairs never cover")
    p.add_argument("target", nargs="?", help="a group file, or 'catalog'")
    p.add_argument("--catalog", choices=["default"])
    p.add_argument("--max-order", type=_positive, default=HARNESS_MAX_ORDER)

    p = sub.add_parser("coset-average", parents=[common], help="exact mean fixed-point count over a coset G h")
    p.add_argument("group", nargs="?")
    p.add_argument("perm", nargs="?", help="h in 1-based cycle notation")
    p.add_argument("--samples", type=_positive, help="random (catalog group, h) pairs instead")

    p = sub.add_parser("present", parents=[common], help="coset enumeration on a presentation file")
    p.add_argument("file")
    p.add_argument("--subgroup", help="comma-separated subgroup generators as words")

    p = sub.add_parser("affine", parents=[common], help="affine groups, fixed spaces and the field-extension check")
    p.add_argument("instance", nargs="?", help="affine instance file or matrix file")
    p.add_argument("--gl", nargs=2, type=_positive, metavar=("D", "P"), help="fixed-space congruence over GL_D(P^F)")
    p.add_argument("--extension", type=_positive, default=1, metavar="F")
    p.add_argument("--field-extension", nargs=2, type=_positive, metavar=("M", "P"), help="unipotents of GL_M(P^2) against GL_M(P)")

    p = sub.add_parser("isbell", parents=[common], help="a derangement whose matrix fixes a nonzero vector")
    p.add_argument("instance", nargs="?", help="affine instance file with a 'rep' section")
    p.add_argument("--example", choices=["gl32"])

    p = sub.add_parser("roots", parents=[common], help="exceptional root systems")
    p.add_argument("system", choices=["E6", "E7", "E8"])
    p.add_argument("--verify-lemma", action="store_true", help="run the end-node filter")

    p = sub.add_parser("bounds", parents=[common], help="numeric bounds and valuations")
    p.add_argument("--lemma", choices=["2.7"], help="accepted for compatibility; the grids are the same")
    p.add_argument("--grid", action="store_true", help="only the two bound grids")
    p.add_argument("--check", nargs=3, type=_positive, metavar=("D", "R", "P"))
    p.add_argument("--field", nargs=3, type=_positive, metavar=("B", "P", "F"))

    p = sub.add_parser("catalog", parents=[common], help="the default catalog manifest")
    p.add_argument("--export", metavar="NAME", help="print one entry as an action file")
    return parser


def _config(args) -> dict:
    skip = {"json", "timing", "command"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    run = Run(args)
    start = time.perf_counter()
    try:
        result = COMMANDS[args.command](run)
        status = EXIT_OK
    except InvalidInput as exc:
        print(f"derange: invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except CapExceeded as exc:
        print(f"derange: cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (InvariantViolation, AssertionError) as exc:
        print(f"derange: invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except DerangeError as exc:
        print(f"derange: {exc}", file=sys.stderr)
        return EXIT_INVALID
    elapsed = time.perf_counter() - start
    report = {
        "command": args.command,
        "config": _config(args),
        "result": result,
        "assumptions": run.assumptions,
    }
    if args.json:
        sys.stdout.write(dumps(report))
    elif run.raw_text is not None:
        sys.stdout.write(run.raw_text)
    else:
        sys.stdout.write("\n".join(_text(canonical({"result": result, "assumptions": run.assumptions}))) + "\n")
    if args.timing:
        print(json.dumps({"timing": {"seconds": round(elapsed, 3)}}), file=sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
