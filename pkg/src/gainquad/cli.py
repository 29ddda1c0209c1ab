"""Command-line surface: build, verify, isocheck, payne-check, search,
export, selftest.

Exit codes: 0 verified/isomorphic/success, 1 disproved with witness,
2 usage or IO error, 3 budget exceeded.  Every report embeds the run
configuration (seed included) so runs are reproducible; output files are
written atomically.

Wherever a structure file is expected, a generator spec is also
accepted: "ag2:p[:n]" for the affine plane over GF(p^n), "w:q" for the
symplectic quadrangle, "payne-dual:q" for the dual of its derivation.
"""

import argparse
import json
import os
import random
import sys
import time

from . import catalog
from .construction import expand, gq_criterion, switching_isomorphism
from .fields import GF, field_from_order
from .gains import gains_from_json, gains_to_json, identity_gains
from .geometry import (is_generalized_ngon, is_linear_space, is_ovoid,
                       quadrangle_order, steiner_parameters, structure_from_json,
                       structure_to_json, verify_isomorphism)
from .groups import CyclicGroup, group_from_spec
from .iso import are_isomorphic, canonical_form, distinguishing_invariant
from .search import run_search, verify_known

GENERATORS = ("ag2", "w", "payne-dual")


def _atomic_write(path, text):
    tmp = f"{path}.tmp{os.getpid()}"
    with open(tmp, "w") as fh:
        fh.write(text)
    os.replace(tmp, path)


def _write_json(path, doc):
    _atomic_write(path, json.dumps(doc, indent=1, sort_keys=True) + "\n")


def _field_from_args(args):
    if len(args) == 1:
        return GF(args[0])
    if len(args) == 2:
        return GF(args[0], args[1])
    raise ValueError("ag2 takes one or two integer arguments: p [n]")


def realize_base(tokens):
    """Resolve a structure source: file path or generator spec.

    Returns a dict with structure, optional tags, optional plane, name.
    """
    if isinstance(tokens, str):
        tokens = tokens.split(":")
    name = tokens[0]
    if os.path.exists(name) and len(tokens) == 1:
        with open(name) as fh:
            doc = json.load(fh)
        s, tags = structure_from_json(doc)
        return {"structure": s, "tags": tags, "plane": None, "name": name}
    if name not in GENERATORS:
        raise ValueError(f"{name!r} is neither a file nor one of {GENERATORS}")
    args = [int(t) for t in tokens[1:]]
    if name == "ag2":
        plane = catalog.affine_plane(_field_from_args(args))
        return {"structure": plane.structure, "tags": None, "plane": plane,
                "name": ":".join(str(t) for t in tokens)}
    if len(args) != 1:
        raise ValueError(f"{name} takes one integer argument: q")
    w = catalog.symplectic_quadrangle(args[0])
    if name == "w":
        s = w.structure
    else:
        s = catalog.dual(catalog.payne_derivation(w))
    return {"structure": s, "tags": None, "plane": None,
            "name": ":".join(str(t) for t in tokens)}


def parse_group(spec):
    """Group spec: "z:n", "gf:p[:n]", or "q"."""
    parts = spec.lower().split(":")
    if parts[0] in ("z", "zn"):
        return CyclicGroup(int(parts[1]))
    if parts[0] == "gf":
        return group_from_spec({"kind": "GFpn", "p": int(parts[1]),
                                "n": int(parts[2]) if len(parts) > 2 else 1})
    if parts[0] == "q":
        return group_from_spec({"kind": "Q"})
    raise ValueError(f"unknown group spec {spec!r}")


def _config(args, command):
    return {
        "command": command,
        "seed": args.seed,
        "threads": args.threads,
        "verbose": args.verbose,
        "argv": [a for a in args.raw_argv],
    }


def _note(args, message):
    if args.verbose:
        print(message, file=sys.stderr)


# -- subcommands --------------------------------------------------------------


def cmd_build(args):
    tokens = list(args.base)
    gains_path = args.gains
    # "build base.json gains.json" as positional pair
    if (gains_path is None and len(tokens) == 2
            and os.path.exists(tokens[0]) and os.path.exists(tokens[1])):
        tokens, gains_path = [tokens[0]], tokens[1]
    base = realize_base(tokens)
    s = base["structure"]
    if gains_path:
        with open(gains_path) as fh:
            g = gains_from_json(s, json.load(fh))
    elif args.with_gains:
        if base["plane"] is None:
            raise ValueError("--with-gains needs an ag2 base")
        g = catalog.affine_gains(base["plane"])
    elif args.identity_gains:
        group = parse_group(args.group) if args.group else None
        if group is None and base["plane"] is not None:
            group = catalog.affine_gains(base["plane"]).group
        if group is None:
            raise ValueError("--identity-gains needs --group for this base")
        g = identity_gains(s, group)
    else:
        raise ValueError("no gain source: give a gains file, --with-gains, "
                         "or --identity-gains")
    if args.emit_base:
        _write_json(args.emit_base, structure_to_json(s))
    if args.emit_gains:
        _write_json(args.emit_gains, gains_to_json(g))
    c = expand(g)
    doc = structure_to_json(c, tags=c.tags_json())
    doc["config"] = _config(args, "build")
    if args.output:
        _write_json(args.output, doc)
    print(f"built expansion: {c.n_points} points, {c.n_lines} lines, "
          f"{len(c.incidence)} incidences")
    return 0


def cmd_verify(args):
    base = realize_base(args.structure)
    s, tags = base["structure"], base["tags"]
    report = {"config": _config(args, "verify"), "input": base["name"],
              "check": args.check}
    ok = False
    if args.check == "linear-space":
        verdict = is_linear_space(s)
        ok = verdict.ok
        report["witness"] = verdict.witness
    elif args.check == "steiner":
        verdict = is_linear_space(s)
        sp = steiner_parameters(s) if verdict else None
        ok = sp is not None
        if ok:
            report["v"], report["k"] = sp
        else:
            report["witness"] = (verdict.witness if not verdict
                                 else "unequal-line-sizes")
    elif args.check == "gq":
        verdict = is_generalized_ngon(s, 4)
        ok = verdict.ok
        if ok:
            s_par, t_par = quadrangle_order(s)
            report["s"], report["t"] = s_par, t_par
        else:
            report["witness"] = verdict.witness
    elif args.check == "ovoid":
        if tags is None:
            raise ValueError("ovoid check needs an expansion file with tags")
        verdict = is_generalized_ngon(s, 4)
        if not verdict:
            report["witness"] = ("not-a-quadrangle",) + tuple(verdict.witness)
        else:
            xs = {i for i, t in enumerate(tags["points"]) if t[0] == "x"}
            ok = is_ovoid(s, xs)
            if not ok:
                report["witness"] = "x-points-not-an-ovoid"
    report["ok"] = ok
    if args.report:
        _write_json(args.report, report)
    print(f"{args.check}: {'pass' if ok else 'fail'}"
          + ("" if ok else f" witness={report.get('witness')}"))
    return 0 if ok else 1


def cmd_isocheck(args):
    s1 = realize_base(args.first)["structure"]
    s2 = realize_base(args.second)["structure"]
    deadline = time.monotonic() + args.timeout if args.timeout else None
    iso = are_isomorphic(s1, s2, deadline=deadline)
    if iso is None:
        inv = distinguishing_invariant(s1, s2) or "search-exhausted"
        print(f"non-isomorphic ({inv})")
        return 1
    assert verify_isomorphism(s1, s2, iso)
    doc = {"point_map": list(iso.point_map), "line_map": list(iso.line_map),
           "config": _config(args, "isocheck")}
    if args.witness:
        _write_json(args.witness, doc)
    print("isomorphic")
    return 0


def cmd_payne_check(args):
    q = args.q
    plane = catalog.affine_plane(field_from_order(q))
    left = expand(catalog.affine_gains(plane))
    _note(args, f"built the affine expansion: {left.n_points}/{left.n_lines}")
    right = catalog.dual(catalog.payne_derivation(catalog.symplectic_quadrangle(q)))
    _note(args, f"built the dual derivation: {right.n_points}/{right.n_lines}")
    deadline = time.monotonic() + args.timeout if args.timeout else None
    iso = are_isomorphic(left, right, deadline=deadline)
    doc = {"q": q, "config": _config(args, "payne-check"),
           "left": {"points": left.n_points, "lines": left.n_lines},
           "right": {"points": right.n_points, "lines": right.n_lines}}
    if iso is None:
        doc["isomorphic"] = False
        doc["distinguishing"] = distinguishing_invariant(left, right) or "search-exhausted"
        if args.witness:
            _write_json(args.witness, doc)
        print(f"q={q}: NOT isomorphic ({doc['distinguishing']})")
        return 1
    doc["isomorphic"] = True
    doc["point_map"] = list(iso.point_map)
    doc["line_map"] = list(iso.line_map)
    if args.witness:
        _write_json(args.witness, doc)
    print(f"q={q}: isomorphic (witness verified)")
    return 0


def cmd_search(args):
    base = realize_base(args.base)
    group = parse_group(args.group)
    report = run_search(base["structure"], group, budget=args.budget,
                        unreduced=args.unreduced, near_miss=not args.fast,
                        checkpoint_path=args.checkpoint)
    report.config = _config(args, "search")
    doc = report.to_json()
    if args.report:
        _write_json(args.report, doc)
        stem = args.report[:-5] if args.report.endswith(".json") else args.report
        for i, rep in enumerate(report.representatives):
            _write_json(f"{stem}.class{i:03d}.json", rep["structure"])
    print(f"scanned {report.scanned}/{report.total_space} assignments; "
          f"{report.gq_count} quadrangles in {len(report.certificates)} classes"
          + (" [partial]" if report.partial else ""))
    return 3 if report.partial else 0


def cmd_export(args):
    base = realize_base(args.structure)
    s, tags = base["structure"], base["tags"]
    if args.format == "json":
        doc = structure_to_json(s, tags=tags)
        text = json.dumps(doc, indent=1, sort_keys=True) + "\n"
    elif args.format == "dot":
        text = _to_dot(s, tags)
    else:
        raise ValueError(f"unknown format {args.format!r}")
    if args.output:
        _atomic_write(args.output, text)
    else:
        sys.stdout.write(text)
    return 0


def _dot_quote(s):
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


def _to_dot(s, tags=None):
    lines = ["graph incidence {"]
    for i in range(s.n_points):
        attrs = [f"label={_dot_quote(s.point_labels[i])}", "shape=circle"]
        if tags is not None:
            attrs.append(f"tag={_dot_quote(':'.join(str(x) for x in tags['points'][i]))}")
        lines.append(f"  p{i} [{', '.join(attrs)}];")
    for j in range(s.n_lines):
        attrs = [f"label={_dot_quote(s.line_labels[j])}", "shape=box"]
        if tags is not None:
            attrs.append(f"tag={_dot_quote(':'.join(str(x) for x in tags['lines'][j]))}")
        lines.append(f"  b{j} [{', '.join(attrs)}];")
    for b, p in sorted((b, p) for p, b in s.incidence):
        lines.append(f"  b{b} -- p{p};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_selftest(args):
    rng = random.Random(args.seed)
    failures = 0

    def check(name, ok):
        nonlocal failures
        print(f"{'PASS' if ok else 'FAIL'} {name}")
        if not ok:
            failures += 1

    for q in (2, 3):
        entry = verify_known(catalog.affine_plane(GF(q)))
        check(f"shipped gains over GF({q}) give order "
              f"({entry['s']},{entry['t']})",
              entry["passed"] and [entry["s"], entry["t"]] == entry["expected"])

    plane = catalog.affine_plane(GF(2))
    g0 = catalog.affine_gains(plane)
    agreement = True
    for _ in range(20):
        gains = {k: g0.group.decode([rng.randrange(2)]) for k in g0.gains}
        from .gains import GainGraph
        g = GainGraph(plane.structure, g0.group, gains)
        if bool(gq_criterion(g)) != bool(is_generalized_ngon(expand(g), 4)):
            agreement = False
            break
    check("criterion agrees with the generic verifier on random gains",
          agreement)

    ok = True
    for _ in range(10):
        f = {e: g0.group.decode([rng.randrange(2)])
             for e in range(plane.structure.n_elements)}
        try:
            switching_isomorphism(g0, f)
        except RuntimeError:
            ok = False
            break
    check("switching induces verified isomorphisms", ok)

    c = expand(g0)
    perm_pts = list(range(c.n_points))
    perm_lns = list(range(c.n_lines))
    rng.shuffle(perm_pts)
    rng.shuffle(perm_lns)
    from .geometry import IncidenceStructure
    inv_p = [0] * len(perm_pts)
    for i, j in enumerate(perm_pts):
        inv_p[j] = i
    inv_l = [0] * len(perm_lns)
    for i, j in enumerate(perm_lns):
        inv_l[j] = i
    shuffled = IncidenceStructure(
        [c.point_labels[j] for j in perm_pts],
        [c.line_labels[j] for j in perm_lns],
        [(inv_p[p], inv_l[b]) for p, b in c.incidence])
    check("canonical form survives relabeling",
          canonical_form(c) == canonical_form(shuffled))

    report = run_search(plane.structure, CyclicGroup(2))
    check("gauge-fixed scan of the smallest plane finds quadrangles",
          report.scanned == 8 and report.gq_count >= 1)

    print(f"selftest: {'all passed' if failures == 0 else f'{failures} failed'}")
    return 0 if failures == 0 else 1


# -- parser -------------------------------------------------------------------


def build_parser():
    ap = argparse.ArgumentParser(
        prog="gainquad",
        description="Build and verify generalized quadrangles from gain "
                    "functions on incidence graphs of linear spaces.")
    ap.add_argument("--seed", type=int, default=0,
                    help="seed for randomized property checks (recorded in reports)")
    ap.add_argument("--threads", type=int, default=os.cpu_count() or 1,
                    help="worker count recorded in reports; scans are "
                         "deterministic regardless")
    ap.add_argument("-v", "--verbose", action="store_true",
                    help="progress notes on stderr")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="expand a gain graph into a structure file")
    p.add_argument("base", nargs="+",
                   help="structure file, or generator: ag2 p [n]")
    p.add_argument("--gains", help="gain-function JSON file")
    p.add_argument("--with-gains", action="store_true",
                   help="use the shipped affine-plane gains (ag2 bases)")
    p.add_argument("--identity-gains", action="store_true")
    p.add_argument("--group", help="group spec for --identity-gains, e.g. z:2")
    p.add_argument("-o", "--output")
    p.add_argument("--emit-base", help="also write the base structure JSON")
    p.add_argument("--emit-gains", help="also write the gain-function JSON")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("verify", help="run a structural verifier")
    p.add_argument("structure")
    p.add_argument("--as", dest="check", required=True,
                   choices=["gq", "linear-space", "steiner", "ovoid"])
    p.add_argument("--report", help="write the verdict JSON here")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("isocheck", help="isomorphism test with witness")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--witness", help="write the witness JSON here")
    p.add_argument("--timeout", type=float, default=None, help="seconds")
    p.set_defaults(func=cmd_isocheck)

    p = sub.add_parser("payne-check",
                       help="compare the affine-plane quadrangle with the "
                            "dual derived symplectic quadrangle")
    p.add_argument("q", type=int)
    p.add_argument("--witness")
    p.add_argument("--timeout", type=float, default=None, help="seconds")
    p.set_defaults(func=cmd_payne_check)

    p = sub.add_parser("search", help="scan gain functions on a linear space")
    p.add_argument("--base", required=True,
                   help="structure file or generator spec like ag2:2")
    p.add_argument("--group", required=True, help="z:n, gf:p[:n]")
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--unreduced", action="store_true",
                   help="scan every assignment instead of one per switching class")
    p.add_argument("--fast", action="store_true",
                   help="stop at the first bad pair; skip near-miss tallies")
    p.add_argument("--checkpoint")
    p.add_argument("--report")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("export", help="write a structure as DOT or JSON")
    p.add_argument("structure")
    p.add_argument("--format", default="dot", choices=["dot", "json"])
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("selftest", help="quick deterministic property sweep")
    p.set_defaults(func=cmd_selftest)

    return ap


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    ap = build_parser()
    args = ap.parse_args(argv)
    args.raw_argv = argv
    try:
        return args.func(args)
    except TimeoutError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return 3
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
