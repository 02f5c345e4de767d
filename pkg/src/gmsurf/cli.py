"""Command-line interface.

Subcommands:

- ``analyze``  decide both properties for a manifold file;
- ``certify``  build a surface certificate (positive-eigenvalue branch only);
- ``verify``   recheck a certificate file independently;
- ``gen``      generate a random manifold with a requested spectral profile;
- ``matrix``   run the decision and reduction machinery on a raw matrix;
- ``cover``    parity check / witness search / exhaustive oracle for surface covers.

Exit codes are a stable contract: 0 = property holds or certificate valid,
1 = property fails (or no cover exists), 2 = input error, 3 = certificate
unavailable, 4 = certificate invalid.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .covers import (
    BudgetExceededError,
    CoverSpec,
    ParityError,
    SearchBudgetExhaustedError,
    cover_exists_bruteforce,
    cycle_type,
    find_cover,
    parity_check,
)
from .decision import NotTwoPieceError, decide, two_piece_d
from .exact_linalg import DisconnectedMatrixError, SymMatrix, rational_str
from .fileio import (
    FileFormatError,
    load_json,
    load_manifold,
    manifold_to_json,
    matrix_rows_from_json,
    matrix_to_json,
    reduction_cert_from_json,
    reduction_cert_to_json,
    rows_to_json,
    save_json,
    surface_cert_from_json,
    surface_cert_to_json,
)
from .generate import PROFILES, generate_manifold
from .manifold import InvalidGraphError, a_minus, decomposition_matrix, split_blocks
from .reduction import NegativeDefiniteError, find_singular_reduction, verify_reduction
from .surface import (
    DegenerateSupportError,
    NotPositiveEigenvalueBranchError,
    build_surface_certificate,
    verify_surface_certificate,
)

EXIT_HOLDS = 0
EXIT_FAILS = 1
EXIT_INPUT = 2
EXIT_UNAVAILABLE = 3
EXIT_INVALID = 4


def _fail_input(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return EXIT_INPUT


def _analysis_report(A: SymMatrix) -> dict:
    verdict = decide(A)
    pos, neg, zero = split_blocks(A)
    report = {
        "matrix": matrix_to_json(A),
        "a_minus": matrix_to_json(a_minus(A)),
        "inertia": {
            "n_pos": verdict.inertia_of_a_minus.n_pos,
            "n_zero": verdict.inertia_of_a_minus.n_zero,
            "n_neg": verdict.inertia_of_a_minus.n_neg,
        },
        "blocks": {"positive": pos, "negative": neg, "zero": zero},
        "property_i": verdict.property_i,
        "property_ve": verdict.property_ve,
        "branch": verdict.branch.value,
        "two_piece": None,
        "notes": [],
    }
    if zero and verdict.branch.value.startswith("Semidefinite"):
        report["notes"].append(
            "zero diagonal entries present: 'same sign' means all >= 0 or all <= 0"
        )
    try:
        inv = two_piece_d(A)
    except NotTwoPieceError:
        inv = None
    if inv is not None:
        report["two_piece"] = {
            "d": rational_str(inv.d),
            "i_via_d": inv.i_via_d,
            "ve_via_d": inv.ve_via_d,
            "fibers_over_circle": inv.fibers_over_circle,
            "virtually_fibers": inv.virtually_fibers,
        }
    return report


def _print_report(report: dict, as_json: bool) -> None:
    if as_json:
        print(json.dumps(report, indent=2))
        return
    print("decomposition matrix:")
    for row in report["matrix"]:
        print("  [" + ", ".join(row) + "]")
    ine = report["inertia"]
    print(
        f"inertia of A-minus: ({ine['n_pos']} positive, {ine['n_zero']} zero, "
        f"{ine['n_neg']} negative)"
    )
    blocks = report["blocks"]
    print(
        f"diagonal blocks: positive {blocks['positive']}, negative {blocks['negative']}, "
        f"zero {blocks['zero']}"
    )
    print(f"branch: {report['branch']}")
    print(f"immersed essential surface (I): {'yes' if report['property_i'] else 'no'}")
    print(f"virtually embedded surface (VE): {'yes' if report['property_ve'] else 'no'}")
    if report["two_piece"] is not None:
        tp = report["two_piece"]
        print(
            f"two-piece invariant D = {tp['d']} "
            f"(I: {tp['i_via_d']}, VE: {tp['ve_via_d']}, "
            f"fibers over circle: {tp['fibers_over_circle']}, "
            f"virtually fibers: {tp['virtually_fibers']})"
        )
    for note in report["notes"]:
        print(f"note: {note}")


def cmd_analyze(args) -> int:
    try:
        G = load_manifold(args.manifold)
        A = decomposition_matrix(G)
        report = _analysis_report(A)
    except (FileFormatError, InvalidGraphError, DisconnectedMatrixError, OSError, ValueError) as exc:
        return _fail_input(str(exc))
    _print_report(report, args.json)
    return EXIT_HOLDS if report["property_i"] else EXIT_FAILS


def cmd_certify(args) -> int:
    try:
        G = load_manifold(args.manifold)
        decomposition_matrix(G)
    except (FileFormatError, InvalidGraphError, OSError, ValueError) as exc:
        return _fail_input(str(exc))
    try:
        cert = build_surface_certificate(G, seed=args.seed, attempts=args.attempts)
    except NotPositiveEigenvalueBranchError as exc:
        print(f"no certificate: {exc}", file=sys.stderr)
        return EXIT_UNAVAILABLE
    except DegenerateSupportError as exc:
        print(f"no certificate: {exc}", file=sys.stderr)
        return EXIT_UNAVAILABLE
    problems = verify_surface_certificate(G, cert)
    if problems:
        for p in problems:
            print(f"invalid: {p}", file=sys.stderr)
        return EXIT_INVALID
    save_json(surface_cert_to_json(cert), args.out)
    summary = {
        "out": str(args.out),
        "degrees": list(cert.degrees),
        "scale": cert.scale,
        "systems": len(cert.systems),
    }
    if args.json:
        print(json.dumps(summary, indent=2))
    else:
        print(f"certificate written to {args.out}")
        print(f"piece degrees: {list(cert.degrees)}, scale {cert.scale}, "
              f"{len(cert.systems)} curve systems")
    return EXIT_HOLDS


def cmd_verify(args) -> int:
    try:
        G = load_manifold(args.manifold)
        doc = load_json(args.certificate)
        if args.kind == "surface":
            cert = surface_cert_from_json(doc)
            violations = verify_surface_certificate(G, cert)
        else:
            cert, matrix = reduction_cert_from_json(doc)
            source = matrix if matrix is not None else decomposition_matrix(G)
            violations = verify_reduction(source, cert)
    except (FileFormatError, InvalidGraphError, OSError, ValueError) as exc:
        return _fail_input(str(exc))
    if violations:
        for v in violations:
            print(f"violation: {v}")
        if args.json:
            print(json.dumps({"valid": False, "violations": violations}, indent=2))
        return EXIT_INVALID
    if args.json:
        print(json.dumps({"valid": True, "violations": []}, indent=2))
    else:
        print("certificate is valid")
    return EXIT_HOLDS


def cmd_gen(args) -> int:
    if args.pieces < 2:
        return _fail_input("need at least 2 pieces")
    if args.profile not in PROFILES:
        return _fail_input(f"unknown profile {args.profile!r}")
    try:
        G = generate_manifold(args.pieces, seed=args.seed, profile=args.profile)
    except (RuntimeError, ValueError) as exc:
        return _fail_input(str(exc))
    doc = manifold_to_json(G)
    if args.out:
        save_json(doc, args.out)
        print(f"manifold written to {args.out}")
    else:
        print(json.dumps(doc, indent=2))
    return EXIT_HOLDS


def _reject_float(text: str):
    raise FileFormatError(f"floats are not exact; write {text!r} as a rational string")


def _read_matrix(source: str) -> SymMatrix:
    if source == "-":
        text = sys.stdin.read()
    else:
        text = Path(source).read_text()
    data = json.loads(text, parse_float=_reject_float)
    rows = matrix_rows_from_json(data, "matrix")
    A = SymMatrix(rows)
    for i in range(A.order):
        for j in range(A.order):
            if i != j and A[i, j] < 0:
                raise FileFormatError(f"negative off-diagonal entry at ({i}, {j})")
    return A


def cmd_matrix(args) -> int:
    try:
        A = _read_matrix(args.source)
        report = _analysis_report(A)
    except (FileFormatError, DisconnectedMatrixError, OSError, ValueError, json.JSONDecodeError) as exc:
        return _fail_input(str(exc))
    try:
        reduction = find_singular_reduction(A)
    except NegativeDefiniteError:
        reduction = None
    if reduction is not None:
        report["reduction"] = reduction_cert_to_json(reduction, matrix=A)
        if args.out:
            save_json(report["reduction"], args.out)
    else:
        report["reduction"] = None
    _print_report(report, args.json)
    if not args.json:
        if reduction is None:
            print("singular reduction: none (A-minus is negative definite)")
        else:
            print("singular reduction A':")
            for row in rows_to_json(reduction.a_prime):
                print("  [" + ", ".join(row) + "]")
            print("annihilated vector a: [" + ", ".join(rational_str(v) for v in reduction.a) + "]")
            if args.out:
                print(f"reduction certificate written to {args.out}")
    return EXIT_HOLDS if report["property_i"] else EXIT_FAILS


def _parse_degrees(text: str) -> tuple[tuple[int, ...], ...]:
    groups = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            raise ValueError("empty boundary group in --degrees")
        groups.append(tuple(int(d) for d in chunk.split(",")))
    return tuple(groups)


def _cycle_str(perm: tuple[int, ...]) -> str:
    seen = [False] * len(perm)
    parts = []
    for start in range(len(perm)):
        if seen[start] or perm[start] == start:
            seen[start] = True
            continue
        cycle = []
        i = start
        while not seen[i]:
            seen[i] = True
            cycle.append(i)
            i = perm[i]
        parts.append("(" + " ".join(str(c) for c in cycle) + ")")
    return "".join(parts) if parts else "()"


def cmd_cover(args) -> int:
    try:
        spec = CoverSpec(
            genus=args.genus, alpha=args.alpha, boundary_degrees=_parse_degrees(args.degrees)
        )
    except ValueError as exc:
        return _fail_input(str(exc))
    if args.action == "check":
        ok = parity_check(spec)
        if args.json:
            print(json.dumps({"parity": ok}))
        else:
            print(f"parity condition: {'holds (cover exists)' if ok else 'fails (no cover)'}")
        return EXIT_HOLDS if ok else EXIT_FAILS
    if args.action == "brute":
        try:
            exists = cover_exists_bruteforce(spec)
        except BudgetExceededError as exc:
            return _fail_input(str(exc))
        if args.json:
            print(json.dumps({"exists": exists}))
        else:
            print(f"exhaustive search: {'cover exists' if exists else 'no cover'}")
        return EXIT_HOLDS if exists else EXIT_FAILS
    try:
        cert = find_cover(spec, seed=args.seed, attempts=args.attempts)
    except ParityError as exc:
        print(f"no certificate: {exc}", file=sys.stderr)
        return EXIT_UNAVAILABLE
    except SearchBudgetExhaustedError as exc:
        print(f"no certificate: {exc}", file=sys.stderr)
        return EXIT_UNAVAILABLE
    doc = {
        "alpha": cert.alpha,
        "x": [_cycle_str(p) for p in cert.x],
        "y": [_cycle_str(p) for p in cert.y],
        "z": [_cycle_str(p) for p in cert.z],
        "last_z": _cycle_str(cert.last_z()),
        "boundary_cycle_types": [list(cycle_type(z)) for z in cert.all_z()],
    }
    if args.json:
        print(json.dumps(doc, indent=2))
    else:
        for k, p in enumerate(cert.x):
            print(f"x{k + 1} = {_cycle_str(p)}")
        for k, p in enumerate(cert.y):
            print(f"y{k + 1} = {_cycle_str(p)}")
        for k, p in enumerate(cert.z):
            print(f"z{k + 1} = {_cycle_str(p)}")
        print(f"z{len(cert.z) + 1} = {doc['last_z']} (determined by the relation)")
    return EXIT_HOLDS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gmsurf",
        description="Decide immersed/virtually embedded surface existence for "
        "graph manifolds and emit checkable certificates.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="decide both properties for a manifold file")
    p.add_argument("manifold", help="manifold JSON file")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("certify", help="build a surface certificate")
    p.add_argument("manifold", help="manifold JSON file")
    p.add_argument("--out", required=True, help="certificate output path")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--attempts", type=int, default=40, help="slide-order retry budget")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("verify", help="recheck a certificate file")
    p.add_argument("manifold", help="manifold JSON file")
    p.add_argument("certificate", help="certificate JSON file")
    p.add_argument("--kind", choices=("surface", "reduction"), default="surface")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="generate a random manifold")
    p.add_argument("pieces", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--profile", choices=PROFILES, default="any")
    p.add_argument("--out", help="write to file instead of stdout")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("matrix", help="decide and reduce a raw symmetric matrix")
    p.add_argument("source", nargs="?", default="-", help="matrix JSON file, or - for stdin")
    p.add_argument("--out", help="write the reduction certificate here")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser("cover", help="surface covers with prescribed boundary")
    p.add_argument("action", choices=("check", "find", "brute"))
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--alpha", type=int, required=True)
    p.add_argument(
        "--degrees",
        required=True,
        help="boundary degrees: comma-separated per circle, circles separated by ';' "
        "(example: '1,1;2')",
    )
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--attempts", type=int, default=20000)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_cover)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
