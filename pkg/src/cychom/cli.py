"""Command-line surface: homology tables, HH/HC, and verification suites.

Exit codes: 0 success, 1 verification failure, 2 bad input, 3 resource
limit.  All output is deterministic for a fixed input; human-readable
tables go to stdout, errors to stderr, and --json switches the payload to
the documented schema.
"""

from __future__ import annotations

import argparse
import json
import sys

from .chains import (
    aw_map,
    check_module_identities,
    ez_map,
    homology,
    induced_map,
    linearize_module,
)
from .cyclic import connes_maps, hc, hc_window
from .derham import hkr_epsilon, hkr_pi, omega_power
from .domains import Q, parse_domain
from .errors import BudgetExceeded, CychomError, InputFormatError
from .groups import group_from_json, group_from_preset
from .hochschild import (
    DEFAULT_BUDGET,
    algebra_from_json,
    algebra_from_preset,
    hh,
    hochschild_module,
)
from .linalg import rank
from .matrix import Matrix
from .simplicial import (
    check_identities,
    check_map,
    circle,
    circle_to_bz,
    classifying_space,
    cyclic_bar,
    evaluation_map,
    free_cyclic,
    unit_section,
)

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_RESOURCE = 0, 1, 2, 3

SIMPLICIAL_PRESETS = ("circle", "bg", "cyclicbar", "fcircle", "fbg")


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="cychom", description=__doc__)
    sub = top.add_subparsers(dest="command", required=True)

    def common(p, domain_default="q"):
        p.add_argument("--preset", help="built-in input name")
        p.add_argument("--input", help="JSON input file")
        p.add_argument("--group", help="group preset, e.g. cyclic:2 or symmetric:3")
        p.add_argument("--domain", default=domain_default,
                       help="scalar domain: q, zp:<p>, or z")
        p.add_argument("--max-degree", type=int, required=True)
        norm = p.add_mutually_exclusive_group()
        norm.add_argument("--normalized", dest="mode", action="store_const",
                          const="normalized", default="normalized")
        norm.add_argument("--unnormalized", dest="mode", action="store_const",
                          const="unnormalized")
        p.add_argument("--json", dest="as_json", action="store_true")
        p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)

    common(sub.add_parser("homology", help="homology of a simplicial set"))
    common(sub.add_parser("hh", help="Hochschild homology of an algebra"))
    p_hc = sub.add_parser("hc", help="cyclic homology and its variants")
    common(p_hc)
    p_hc.add_argument("--variant", choices=("cyclic", "negative", "periodic"),
                      default="cyclic")
    p_hc.add_argument("--window", type=int, default=2)
    p_v = sub.add_parser("verify", help="run a verification suite")
    p_v.add_argument("suite", choices=("relations", "sbi", "hkr", "aw-ez",
                                       "adjunction", "exercise-bz"))
    common(p_v)
    return top


def _load_json(path):
    with open(path) as f:
        return json.load(f)


def _get_group(args):
    if args.input:
        return group_from_json(_load_json(args.input))
    if args.group:
        return group_from_preset(args.group)
    raise InputFormatError("this preset needs --group or --input")


def _get_algebra(args, dom):
    if args.input:
        return algebra_from_json(_load_json(args.input), dom)
    if args.preset:
        return algebra_from_preset(args.preset, dom)
    raise InputFormatError("need --preset or --input for an algebra")


def _spec_budget_guard(spec, top, budget):
    total = 0
    for n in range(top + 1):
        total += len(spec.elements(n))
        if total > budget:
            raise BudgetExceeded(
                f"simplicial set has more than {budget} cells up to degree {top}")


def _simplicial_spec(args, top):
    preset = args.preset
    if preset == "circle":
        return circle(top)
    if preset == "bg":
        G = _get_group(args)
        return classifying_space(G, top, central=G.identity if G.is_abelian() else None)
    if preset == "cyclicbar":
        return cyclic_bar(_get_group(args), top)
    if preset == "fcircle":
        return free_cyclic(circle(top))
    if preset == "fbg":
        G = _get_group(args)
        return free_cyclic(classifying_space(G, top))
    raise InputFormatError(f"unknown simplicial preset {preset!r}")


def _print_homology(res, degrees, as_json):
    if as_json:
        print(json.dumps(res.rows(), sort_keys=True))
        return
    for n in degrees:
        tors = res.torsion.get(n, [])
        line = f"H_{n}: betti {res.betti[n]}"
        if tors:
            line += "  torsion " + " ".join(f"Z/{d}" for d in tors)
        print(line)


def cmd_homology(args) -> int:
    dom = parse_domain(args.domain)
    top = args.max_degree + 1
    spec = _simplicial_spec(args, top)
    _spec_budget_guard(spec, top, args.budget)
    sm = linearize_module(spec, dom)
    res = homology(sm.chain_complex(args.mode), range(args.max_degree + 1))
    _print_homology(res, range(args.max_degree + 1), args.as_json)
    return EXIT_OK


def cmd_hh(args) -> int:
    dom = parse_domain(args.domain)
    A = _get_algebra(args, dom)
    res = hh(A, range(args.max_degree + 1), mode=args.mode, budget=args.budget)
    _print_homology(res, range(args.max_degree + 1), args.as_json)
    return EXIT_OK


def cmd_hc(args) -> int:
    dom = parse_domain(args.domain)
    A = _get_algebra(args, dom)
    degrees = range(args.max_degree + 1)
    if args.variant == "cyclic":
        res = hc(A, degrees, budget=args.budget)
        _print_homology(res, degrees, args.as_json)
        return EXIT_OK
    res, rep = hc_window(args.variant, A, degrees, args.window,
                         budget=args.budget)
    if args.as_json:
        print(json.dumps({"homology": res.rows(), "tower": rep.rows(),
                          "stable": rep.stable}, sort_keys=True))
        return EXIT_OK
    _print_homology(res, degrees, False)
    for row in rep.rows():
        print(f"tower H_{row['degree']}: {row['tower']}"
              f" {'stabilized' if row['stabilized'] else 'open'}")
    print("window flag:", "STABLE" if rep.stable else "UNSTABLE")
    return EXIT_OK


# ---------------------------------------------------------------------------
# verification suites
# ---------------------------------------------------------------------------

def _suite_relations(args) -> int:
    dom = parse_domain(args.domain)
    top = args.max_degree
    if args.preset in SIMPLICIAL_PRESETS:
        spec = _simplicial_spec(args, top)
        _spec_budget_guard(spec, top, args.budget)
        mode = "cyclic" if spec.has_cyclic else "simplicial"
        report = check_identities(spec, mode=mode)
        print(f"relations [{mode}]: {report.checked} instances,"
              f" {len(report.violations)} failures")
        for msg in report.violations[:10]:
            print("  fail:", msg, file=sys.stderr)
        return EXIT_OK if report.passed else EXIT_FAIL
    A = _get_algebra(args, dom)
    sm = hochschild_module(A, top, budget=args.budget)
    bad = check_module_identities(sm, cyclic=True, signed=True, top=top)
    print(f"relations [cyclic module]: degrees <= {top},"
          f" {len(bad)} failures")
    for msg in bad[:10]:
        print("  fail:", msg, file=sys.stderr)
    return EXIT_OK if not bad else EXIT_FAIL


def _suite_sbi(args) -> int:
    dom = parse_domain(args.domain)
    A = _get_algebra(args, dom)
    rep = connes_maps(A, range(args.max_degree + 1), budget=args.budget)
    if args.as_json:
        print(json.dumps(rep.rows(), sort_keys=True))
    else:
        for row in rep.rows():
            print(f"{row['node']}: im {row['im_dim']} ker {row['ker_dim']}"
                  f" {'exact' if row['exact'] else 'NOT EXACT'}")
        print(f"sbi: {'pass' if rep.passed else 'FAIL'}")
    return EXIT_OK if rep.passed else EXIT_FAIL


def _identity_matrix(k, dom):
    return Matrix.identity(k, dom)


def _suite_hkr(args) -> int:
    dom = parse_domain(args.domain)
    A = _get_algebra(args, dom)
    ok = True
    for n in range(args.max_degree + 1):
        om = omega_power(A, n)
        eps = hkr_epsilon(A, n, om)
        pi = hkr_pi(A, n, om)
        section = (pi @ eps) == _identity_matrix(om.dim, dom)
        ok = ok and section
        hres = hh(A, [n], mode="unnormalized", budget=args.budget)
        betti = hres.betti[n]
        # induced maps on homology: eps sends Omega^n to cycles, pi kills
        # boundaries, so ranks against the class basis decide the isos
        eps_classes = _classes_of(eps, hres, n, dom)
        iso_eps = betti == om.dim and rank(eps_classes) == om.dim
        pi_classes = Matrix.from_columns(
            [pi.apply(list(r)) for r in hres.reps[n]], om.dim, dom)
        iso_pi = betti == om.dim and rank(pi_classes) == betti
        print(f"degree {n}: omega dim {om.dim}, HH betti {betti},"
              f" pi.eps=id {'pass' if section else 'FAIL'},"
              f" eps iso {iso_eps}, pi iso {iso_pi}")
    print("hkr:", "pass" if ok else "FAIL")
    return EXIT_OK if ok else EXIT_FAIL


def _classes_of(eps, hres, n, dom):
    """Coordinates of eps columns against the homology class basis."""
    from .linalg import solve_in_span
    reps = [list(v) for v in hres.reps[n]]
    bound = [list(v) for v in hres.boundary_image[n].vectors]
    cols = []
    for c in range(eps.cols):
        x = solve_in_span(reps + bound, eps.column_vector(c), dom)
        if x is None:
            raise CychomError("cycle class not expressible")
        cols.append(x[:len(reps)])
    return Matrix.from_columns(cols, len(reps), dom)


def _suite_aw_ez(args) -> int:
    dom = parse_domain(args.domain)
    top = args.max_degree + 1
    S = linearize_module(circle(top), dom)
    H = hochschild_module(algebra_from_preset("truncpoly:2", dom), top,
                          budget=args.budget)
    ok = True
    for name, C, D in (("circle(x)circle", S, S),
                       ("circle(x)truncpoly", S, H)):
        aw = aw_map(C, D, mode="normalized", top=top)
        ez = ez_map(C, D, mode="normalized", top=top)
        retr = all((aw.mat(n) @ ez.mat(n)) ==
                   _identity_matrix(aw.target.rank(n), dom)
                   for n in range(top + 1))
        from .chains import ChainMap
        round_trip = ChainMap(aw.source, aw.source,
                              {n: ez.mat(n) @ aw.mat(n) for n in range(top + 1)},
                              name="EZ.AW")
        h_src = homology(aw.source, range(args.max_degree + 1))
        ident = all(induced_map(round_trip, h_src, h_src, n) ==
                    _identity_matrix(h_src.betti[n], dom)
                    for n in range(args.max_degree + 1))
        print(f"{name}: AW.EZ=id {'pass' if retr else 'FAIL'},"
              f" EZ.AW=id on homology {'pass' if ident else 'FAIL'}")
        ok = ok and retr and ident
    return EXIT_OK if ok else EXIT_FAIL


def _suite_adjunction(args) -> int:
    top = args.max_degree
    X = _simplicial_spec(args, top) if args.preset else circle(top)
    FX = free_cyclic(X)
    unit = unit_section(X)
    unit_ok = check_map(unit, mode="simplicial").passed
    counit_ok = True
    tri1_ok = True
    checked = 0
    if X.has_cyclic:
        ev = evaluation_map(X)
        counit_ok = check_map(ev, mode="cyclic").passed
        # triangle: ev_X . unit_X = id elementwise
        for n in range(top + 1):
            for x in X.elements(n):
                checked += 1
                if ev.fn(n, unit.fn(n, x)) != x:
                    tri1_ok = False
    # triangle on the free side: ev_{F(X)} . F(unit) = id
    ev_f = evaluation_map(FX)
    tri2_ok = True
    for n in range(top + 1):
        for (g, y) in FX.elements(n):
            checked += 1
            if ev_f.fn(n, (g, (0, y))) != (g, y):
                tri2_ok = False
    ok = unit_ok and counit_ok and tri1_ok and tri2_ok
    print(f"adjunction: unit map {'pass' if unit_ok else 'FAIL'},"
          f" counit map {'pass' if counit_ok else 'FAIL'},"
          f" triangles {'pass' if tri1_ok and tri2_ok else 'FAIL'}"
          f" ({checked} instances)")
    return EXIT_OK if ok else EXIT_FAIL


def _suite_exercise_bz(args) -> int:
    m = circle_to_bz(args.max_degree)
    rep = check_map(m, mode="cyclic")
    print(f"circle -> BZ: {rep.checked} instances,"
          f" {len(rep.violations)} failures")
    return EXIT_OK if rep.passed else EXIT_FAIL


_SUITES = {
    "relations": _suite_relations,
    "sbi": _suite_sbi,
    "hkr": _suite_hkr,
    "aw-ez": _suite_aw_ez,
    "adjunction": _suite_adjunction,
    "exercise-bz": _suite_exercise_bz,
}


def cmd_verify(args) -> int:
    return _SUITES[args.suite](args)


_COMMANDS = {
    "homology": cmd_homology,
    "hh": cmd_hh,
    "hc": cmd_hc,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "max_degree", 0) < 0:
        print("error: --max-degree must be nonnegative", file=sys.stderr)
        return EXIT_PARSE
    if getattr(args, "budget", 1) <= 0:
        print("error: --budget must be positive", file=sys.stderr)
        return EXIT_PARSE
    try:
        return _COMMANDS[args.command](args)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (InputFormatError, FileNotFoundError, json.JSONDecodeError,
            ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except CychomError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
