"""Command-line entry point: ``weightlab COMMAND [flags]``.

Reports are deterministic JSON on stdout (a plain table with ``--pretty``).
Exit codes: 0 when every check passes, 1 when a mathematical violation was
found (the report carries the witness), 2 on input errors.
"""

import argparse
import sys
from fractions import Fraction

from . import k0
from . import slopes as sl
from .base import Quiver
from .complexes import cone
from .sampling import (
    make_rng, random_chain_map, random_complex, random_heart_complex, random_splitting,
)
from .serialize import InputError, complex_from_json, complex_to_json, dumps, load_json_file, make_category
from .weights import WeightStructureSpec, construct_from_negative, negativity_check, retract_tower, stalk_generators
from .weights.certificates import CertificateError, tree_to_json
from .weights.checks import check_axioms, corrupted_spec, heart_of
from .weights.decomposition import combine_decompositions
from .weights.spec import NotNegativeError

COMMANDS = ("axioms", "decompose", "construct-w", "negativity", "heart", "retract-tower", "combine",
            "counterexample", "pad-to-c", "k0-criterion", "self-test")


class Outcome:
    """Report plus verdict; ``violation`` selects exit code 1."""

    def __init__(self, report, violation=False):
        self.report = report
        self.violation = violation


# ---------------------------------------------------------------------------
# shared plumbing


def _category(args):
    quiver = None
    if args.base == "quiver":
        quiver = Quiver.linear_a(3) if args.quiver is None else _quiver_from_file(args.quiver)
    field = args.field or ("q" if args.base == "vect" else "fp")
    try:
        return make_category(args.base, quiver, field)
    except ValueError as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(str(exc), "--field") from exc


def _quiver_from_file(path):
    data = load_json_file(path)
    try:
        return Quiver.from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad quiver ({exc})", path) from exc


def _scenario(args):
    return load_json_file(args.scenario) if args.scenario else None


def _complexes(data, cat, key, path):
    """Complexes listed under ``key`` of a scenario document (a single one is accepted too)."""
    if key not in data:
        raise InputError(f"missing '{key}'", path)
    items = data[key]
    if isinstance(items, dict):
        items = [items]
    if not isinstance(items, list):
        raise InputError(f"'{key}' must be a complex or a list of complexes", path)
    return [complex_from_json(c, cat, f"{path}:{key}[{k}]") for k, c in enumerate(items)]


def _samples(args, cat, rng):
    return [random_complex(rng, cat) for _ in range(args.samples)]


def _fraction(text, flag):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"not a rational number: {text!r}", flag) from exc


def _structure(args, cat):
    name = args.structure
    if name == "stupid":
        return WeightStructureSpec.stupid(cat)
    if name == "generated":
        return construct_from_negative(stalk_generators(cat))
    if name == "corrupted":
        return corrupted_spec()
    raise InputError(f"unknown structure {name!r}", "--structure")


def _profile(data, location):
    try:
        return sl.SlopeObject.from_json(data)
    except (sl.ProfileError, KeyError, TypeError, ValueError) as exc:
        raise InputError(str(exc), location) from exc


# ---------------------------------------------------------------------------
# commands


def cmd_axioms(args):
    cat = _category(args)
    W = _structure(args, cat)
    rng = make_rng(args.seed)
    rep = check_axioms(W, _samples(args, cat, rng))
    return Outcome(rep.to_json(), not rep.ok)


def cmd_decompose(args):
    cat = _category(args)
    W = _structure(args, cat)
    data = _scenario(args)
    if data is not None:
        objs = _complexes(data, cat, "complexes" if "complexes" in data else "complex", args.scenario)
    else:
        objs = _samples(args, cat, make_rng(args.seed))
    out = []
    bad = False
    for M in objs:
        d = W.decompose(M, args.m)
        fails = d.verify(W)
        bad |= bool(fails)
        out.append({"input": complex_to_json(M), "m": args.m, "X": complex_to_json(d.X),
                    "Y": complex_to_json(d.Y), "verification_failures": fails})
    return Outcome({"structure": W.name, "decompositions": out, "ok": not bad}, bad)


def _generators(args, cat):
    data = _scenario(args)
    if data is None:
        return stalk_generators(cat)
    return _complexes(data, cat, "generators", args.scenario)


def cmd_negativity(args):
    cat = _category(args)
    rep = negativity_check(_generators(args, cat))
    return Outcome(rep.to_json(), not rep.negative)


def cmd_construct_w(args):
    cat = _category(args)
    gens = _generators(args, cat)
    try:
        W = construct_from_negative(gens)
    except NotNegativeError:
        return Outcome({"negative": False, "negativity": negativity_check(gens).to_json()}, True)
    rng = make_rng(args.seed)
    rows = []
    for M in _samples(args, cat, rng):
        try:
            cert = W.certify(M)
        except CertificateError:
            cert = None
        row = {"object": complex_to_json(M), "le": {}, "ge": {}}
        for m in (-1, 0, 1):
            row["le"][str(m)] = W.in_le(M, m)
            row["ge"][str(m)] = W.in_ge(M, m)
        row["certificate"] = tree_to_json(cert) if cert is not None else None
        rows.append(row)
    return Outcome({"structure": W.name, "generators": [complex_to_json(g) for g in gens], "negative": True,
                    "samples": rows})


def cmd_heart(args):
    cat = _category(args)
    W = construct_from_negative(_generators(args, cat))
    rng = make_rng(args.seed)
    rep = heart_of(W, [random_heart_complex(rng, cat) for _ in range(args.samples)])
    return Outcome(rep.to_json(), not rep.ok)


def cmd_retract_tower(args):
    cat = _category(args)
    rng = make_rng(args.seed)
    rows = []
    bad = False
    for _ in range(args.samples):
        N, M, r, s = random_splitting(rng, cat)
        tris, sp = retract_tower(N, M, r, s, args.n)
        fails = [f for t in tris for f in t.verify()]
        if not sp.check():
            fails.append("splitting identities fail")
        bad |= bool(fails)
        rows.append({"retract": complex_to_json(N), "ambient": complex_to_json(M), "triangles": len(tris),
                     "verification_failures": fails})
    return Outcome({"n": args.n, "splittings": rows, "ok": not bad}, bad)


def cmd_combine(args):
    cat = _category(args)
    W = WeightStructureSpec.stupid(cat)
    rng = make_rng(args.seed)
    rows = []
    bad = False
    for _ in range(args.samples):
        A = random_complex(rng, cat, -1, 1, pieces=(1, 3), contractible=(0, 1))
        B = random_complex(rng, cat, -1, 1, pieces=(1, 3), contractible=(0, 1))
        t = cone(random_chain_map(rng, A, B))
        d = combine_decompositions(t, W.decompose(t.N, args.m), W.decompose(t.M1, args.m))
        fails = d.verify(W)
        bad |= bool(fails)
        rows.append({"cone": complex_to_json(t.cone), "X": complex_to_json(d.X), "Y": complex_to_json(d.Y),
                     "verification_failures": fails})
    return Outcome({"m": args.m, "extensions": rows, "ok": not bad}, bad)


def cmd_counterexample(args):
    alpha = _fraction(args.alpha, "--alpha")
    beta = _fraction(args.beta, "--beta") if args.beta is not None else alpha
    M = sl.SlopeObject.with_slopes(alpha, beta)
    if not sl.in_Cprime(M) or sl.in_C(M):
        raise InputError("slopes must be non-integral for an obstruction", "--alpha/--beta")
    cert = sl.no_decomposition_witness(M, make_rng(args.seed))
    fails = cert.verify()
    found, tried = sl.exhaustive_decomposition_search(M)
    report = {
        "object": M.to_json(),
        "certificate": cert.to_json(),
        "verification_failures": fails,
        "oracle": {"decompositions_tried": tried, "decompositions_in_Cprime": len(found)},
        "summary": (f"the object with slopes ({alpha}, {beta}) lies in C' and has no weight decomposition "
                    f"with both parts in C'"),
    }
    return Outcome(report, bool(fails or found))


def cmd_pad_to_c(args):
    data = _scenario(args)
    if data is not None:
        M = _profile(data.get("profile", data), f"{args.scenario}:profile")
    else:
        M = sl.SlopeObject.with_slopes(_fraction(args.alpha, "--alpha"),
                                       _fraction(args.beta if args.beta is not None else args.alpha, "--beta"))
    N, ev = sl.pad_to_C(M)
    ok = ev.verify() and sl.in_C(N)
    return Outcome({"input": M.to_json(), "input_slopes": sl.slopes(M).to_json(), "padded": N.to_json(),
                    "padded_slopes": sl.slopes(N).to_json(), "evidence": ev.to_json(), "ok": ok}, not ok)


def cmd_k0_criterion(args):
    name = args.scenario or "cprime"
    if name in ("c", "cprime", "d"):
        return Outcome(k0.necessary_condition_report(name, args.period))
    data = load_json_file(name)
    try:
        G = k0.ScaledLattice.from_vectors(data["G"])
        n = G.ambient_rank
        Km = k0.ScaledLattice.from_vectors(data["Kminus"], n)
        Kp = k0.ScaledLattice.from_vectors(data["Kplus"], n)
        v = k0.criterion_check(G, Km, Kp)
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"lattice scenario needs G, Kminus, Kplus as rational vectors ({exc})", name) from exc
    return Outcome({"scenario": name, "criterion": v.to_json(),
                    "verdict": "no obstruction" if v.satisfied else "no extension exists"})


def cmd_self_test(args):
    from .acceptance import mutation_check, run_all
    if args.mutate:
        fails, checked = mutation_check(seed=args.seed)
        # a corrupted convention must be caught: failures are the expected outcome
        return Outcome({"mutation": "flipped shift sign", "triangle_failures": fails, "checked": checked,
                        "detected": fails > 0}, True)
    results = run_all(seed=args.seed)
    ok = all(r.ok for r in results)
    return Outcome({"criteria": [r.to_json() for r in results], "ok": ok}, not ok)


HANDLERS = {
    "axioms": cmd_axioms, "decompose": cmd_decompose, "construct-w": cmd_construct_w,
    "negativity": cmd_negativity, "heart": cmd_heart, "retract-tower": cmd_retract_tower,
    "combine": cmd_combine, "counterexample": cmd_counterexample, "pad-to-c": cmd_pad_to_c,
    "k0-criterion": cmd_k0_criterion, "self-test": cmd_self_test,
}


# ---------------------------------------------------------------------------
# rendering


def render_table(report, prefix=""):
    """Flatten a report into ``key  value`` lines."""
    lines = []
    if isinstance(report, dict):
        for k in sorted(report):
            lines += render_table(report[k], f"{prefix}.{k}" if prefix else str(k))
    elif isinstance(report, list) and report and all(isinstance(x, (dict, list)) for x in report):
        for i, x in enumerate(report):
            lines += render_table(x, f"{prefix}[{i}]")
    else:
        lines.append(f"{prefix:<48} {dumps(report)}")
    return lines


def _render_self_test(report):
    from .acceptance import Result
    out = []
    for c in report.get("criteria", []):
        r = Result(c["criterion"], c["title"], c["status"] == "pass", c["detail"])
        out.append(r.line())
    if "criteria" in report:
        out.append("all criteria pass" if report["ok"] else "SOME CRITERIA FAIL")
    return out


def build_parser():
    p = argparse.ArgumentParser(prog="weightlab", description="Weight structures on homotopy categories.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--base", choices=("vect", "quiver"), default="vect")
    p.add_argument("--quiver", metavar="FILE", help="quiver JSON (default: linear A3)")
    p.add_argument("--field", help="q or fp:P (default q for vect, fp for quiver)")
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--pretty", action="store_true", help="human-readable table instead of JSON")
    p.add_argument("--scenario", metavar="FILE", help="input document; k0-criterion also takes c, cprime or d")
    p.add_argument("--structure", default="stupid", choices=("stupid", "generated", "corrupted"))
    p.add_argument("--alpha", default="1/2")
    p.add_argument("--beta")
    p.add_argument("--period", type=int, default=2)
    p.add_argument("--m", type=int, default=0, help="weight index for decompositions")
    p.add_argument("--n", type=int, default=2, help="tower height for retract-tower")
    p.add_argument("--mutate", action="store_true", help="self-test: flip the shift sign and expect failures")
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    if args.samples < 0 or args.period < 1 or args.n < 1:
        print(dumps({"error": "--samples must be >= 0, --period and --n >= 1", "location": "flags"}))
        return 2
    try:
        outcome = HANDLERS[args.command](args)
    except InputError as exc:
        print(dumps({"error": str(exc), "location": exc.location}, pretty=args.pretty))
        return 2
    report = outcome.report
    if args.pretty:
        lines = _render_self_test(report) if args.command == "self-test" else []
        print("\n".join(lines or render_table(report)))
    else:
        print(dumps(report))
    return 1 if outcome.violation else 0


if __name__ == "__main__":
    sys.exit(main())
