"""``lk``: command-line access to fronts, rulings, DGAs, augmentations and movies.

Exit codes: 0 on success or a true verdict, 1 on a false verdict, 2 on an
input or usage error.  Inputs are a path, ``-`` for stdin, or the literal
text itself.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from collections import Counter
from typing import Callable, Sequence

from .augment import Augmentation, augmentation_to_ruling, enumerate_augmentations, linearized_homology
from .errors import FrontError, LegendrianError
from .front import classical_invariants, maslov_potential, parse_front
from .movie import (
    MorseMovie,
    duality_check,
    format_dims,
    gf_homology,
    ruling_to_movie,
    theorem53_check,
    validate_movie,
)
from .ruling import enumerate_rulings, is_graded, is_normal, j_statistic, ruling_polynomial, sweep_involutions
from .splash import splash_dga
from .z2 import DGA, dga_check

EXIT_OK, EXIT_FALSE, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def read_input(source: str) -> str:
    if source == "-":
        return sys.stdin.read()
    if os.path.isfile(source):
        with open(source, encoding="utf-8") as fh:
            return fh.read()
    return source


def load_json(source: str) -> dict:
    text = read_input(source)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"not valid JSON: {exc}") from exc


def _front(args):
    return parse_front(read_input(args.input))


def _potential(front, args):
    shifts = None
    if getattr(args, "shifts", None):
        shifts = [int(s) for s in args.shifts.split(",")]
    return maslov_potential(front, shifts)


def _movie(args) -> MorseMovie:
    return MorseMovie.from_json(load_json(args.input))


class Result:
    """Output of a subcommand: JSON payload, text rendering, and exit code."""

    def __init__(self, payload, text: str, code: int = EXIT_OK):
        self.payload = payload
        self.text = text
        self.code = code


# ---------------------------------------------------------------------------
# subcommands


def cmd_validate(args) -> Result:
    text = read_input(args.input).strip()
    if text.startswith("{") and '"slices"' in text:
        report = validate_movie(MorseMovie.from_json(text))
        payload = {"valid": report.ok, "step": report.step, "message": report.message}
        return Result(payload, str(report), EXIT_OK if report.ok else EXIT_FALSE)
    try:
        front = parse_front(text)
    except FrontError as exc:
        return Result({"valid": False, "message": str(exc)}, f"invalid: {exc}", EXIT_FALSE)
    profile = list(front.profile)
    payload = {"valid": True, "events": len(front), "profile": profile}
    return Result(payload, f"valid: {len(front)} events, profile {' '.join(map(str, profile))}")


def cmd_invariants(args) -> Result:
    front = _front(args)
    inv = classical_invariants(front)
    potential = _potential(front, args)
    payload = {**inv.to_json(), "profile": list(front.profile), "potential": potential.to_json()}
    tb = "n/a (link)" if inv.tb is None else str(inv.tb)
    lines = [
        f"components: {inv.component_count}",
        f"tb: {tb}",
        f"rotation: {' '.join(map(str, inv.rotation))}",
        f"profile: {' '.join(map(str, front.profile))}",
    ]
    if potential.modulus:
        lines.append(f"potential modulus: {potential.modulus}")
    return Result(payload, "\n".join(lines))


def _ruling_rows(front, rulings, potential):
    rows = []
    for r in rulings:
        rows.append({
            **r.to_json(),
            "normal": is_normal(front, r),
            "graded": is_graded(front, r, 0, potential),
            "j": j_statistic(front, r),
        })
    return rows


def cmd_rulings(args) -> Result:
    front = _front(args)
    potential = _potential(front, args)
    rulings = enumerate_rulings(front, normal=args.normal, rho=args.rho, potential=potential)
    rows = _ruling_rows(front, rulings, potential)
    lines = [f"{len(rows)} ruling(s)"]
    for row in rows:
        sw = "{" + ",".join(map(str, row["switches"])) + "}"
        pairs = " ".join(f"({a},{b})" for a, b in row["pairing"])
        flags = ("normal" if row["normal"] else "abnormal") + (", graded" if row["graded"] else "")
        lines.append(f"switches {sw}  pairing {pairs}  j={row['j']}  [{flags}]")
    return Result({"rulings": rows}, "\n".join(lines))


def cmd_ruling_poly(args) -> Result:
    front = _front(args)
    poly = ruling_polynomial(front, args.rho, _potential(front, args))
    return Result({**poly.to_json(), "rho": args.rho, "text": str(poly)}, f"R^{args.rho}(z) = {poly}")


def cmd_splash_dga(args) -> Result:
    front = _front(args)
    splashed = splash_dga(front, potential=_potential(front, args))
    dga = splashed.dga
    lines = [f"{len(dga.degrees)} generators"]
    for g in dga.generators:
        lines.append(f"|{g}| = {dga.degrees[g]}   d {g} = {dga.differential[g]}")
    return Result(splashed.to_json(), "\n".join(lines))


def cmd_check_d2(args) -> Result:
    text = read_input(args.input).strip()
    if text.startswith("{") and '"generators"' in text:
        dga = DGA.from_json(json.loads(text))
    else:
        front = parse_front(text)
        dga = splash_dga(front, potential=_potential(front, args)).dga
    diag = dga_check(dga)
    problems = [str(p) for p in diag.problems]
    text_out = "d^2 = 0 and deg d = -1 on all generators" if diag.ok else "\n".join(problems)
    return Result({"ok": diag.ok, "problems": problems}, text_out, EXIT_OK if diag.ok else EXIT_FALSE)


def cmd_augmentations(args) -> Result:
    front = _front(args)
    splashed = splash_dga(front, potential=_potential(front, args))
    augs = enumerate_augmentations(splashed, args.rho)
    lines = [f"{len(augs)} augmentation(s) with rho = {args.rho}"]
    for a in augs:
        lines.append("  " + (" ".join(a.support()) or "(zero)"))
    return Result({"augmentations": [a.to_json() for a in augs]}, "\n".join(lines))


def cmd_lch(args) -> Result:
    front = _front(args)
    splashed = splash_dga(front, potential=_potential(front, args))
    if args.aug:
        aug = Augmentation.from_json(load_json(args.aug))
        dims = linearized_homology(splashed.dga, aug)
        return Result({"dims": {str(k): v for k, v in dims.items()}}, format_dims(dims))
    tables = Counter()
    for aug in enumerate_augmentations(splashed, args.rho):
        dims = linearized_homology(splashed.dga, aug)
        tables[tuple(sorted(dims.items()))] += 1
    rows = [{"dims": {str(k): v for k, v in t}, "count": c} for t, c in sorted(tables.items())]
    lines = [f"{format_dims(dict(t))}  x{c}" for t, c in sorted(tables.items())]
    return Result({"tables": rows}, "\n".join(lines) if lines else "no augmentations")


def cmd_aug_to_ruling(args) -> Result:
    front = _front(args)
    splashed = splash_dga(front, potential=_potential(front, args))
    aug = Augmentation.from_json(load_json(args.aug))
    ruling = augmentation_to_ruling(splashed, aug)
    sw = "{" + ",".join(map(str, sorted(ruling.switches))) + "}"
    return Result(ruling.to_json(), f"switches {sw}")


def cmd_ruling_to_movie(args) -> Result:
    front = _front(args)
    switches = [int(s) for s in args.switches.split(",") if s.strip()] if args.switches else []
    movie = ruling_to_movie(front, sweep_involutions(front, switches))
    text = " ".join(str(e) for e in movie.events)
    return Result(movie.to_json(), text)


def cmd_gfh(args) -> Result:
    dims = gf_homology(_movie(args))
    return Result({"dims": {str(k): v for k, v in dims.items()}}, f"GH = {format_dims(dims)}")


def cmd_theorem53(args) -> Result:
    report = theorem53_check(_movie(args))
    return Result(report.to_json(), str(report), EXIT_OK if report.equal else EXIT_FALSE)


def cmd_duality(args) -> Result:
    data = load_json(args.input)
    dims = {int(k): int(v) for k, v in data.get("dims", data).items()}
    ok = duality_check(dims, args.kind)
    verdict = "holds" if ok else "fails"
    return Result({"kind": args.kind, "holds": ok}, f"duality ({args.kind}) {verdict}", EXIT_OK if ok else EXIT_FALSE)


COMMANDS: dict[str, Callable] = {
    "validate": cmd_validate,
    "invariants": cmd_invariants,
    "rulings": cmd_rulings,
    "ruling-poly": cmd_ruling_poly,
    "splash-dga": cmd_splash_dga,
    "check-d2": cmd_check_d2,
    "augmentations": cmd_augmentations,
    "lch": cmd_lch,
    "aug-to-ruling": cmd_aug_to_ruling,
    "ruling-to-movie": cmd_ruling_to_movie,
    "gfh": cmd_gfh,
    "theorem53": cmd_theorem53,
    "duality": cmd_duality,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--out", help="also write the JSON result to this file")
    parser = argparse.ArgumentParser(prog="lk", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        p.add_argument("input", help="path, '-' for stdin, or literal text")
        if name in ("invariants", "rulings", "ruling-poly", "splash-dga", "check-d2",
                    "augmentations", "lch", "aug-to-ruling"):
            p.add_argument("--shifts", help="comma-separated potential shift per component")
        if name == "rulings":
            p.add_argument("--normal", action="store_true")
            p.add_argument("--rho", type=int, default=None)
        if name in ("ruling-poly", "augmentations", "lch"):
            p.add_argument("--rho", type=int, default=0)
        if name in ("lch", "aug-to-ruling"):
            p.add_argument("--aug", required=name == "aug-to-ruling", help="augmentation JSON")
        if name == "ruling-to-movie":
            p.add_argument("--switches", default="", help="comma-separated crossing event indices")
        if name == "duality":
            p.add_argument("--kind", choices=("lch", "gf", "LCH", "GF"), default="lch")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        result = COMMANDS[args.command](args)
    except (InputError, LegendrianError, ValueError, KeyError) as exc:
        print(f"lk {args.command}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    rendered = json.dumps(result.payload, indent=2, sort_keys=True)
    print(rendered if args.format == "json" else result.text)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(rendered + "\n")
    return result.code


if __name__ == "__main__":
    sys.exit(main())
