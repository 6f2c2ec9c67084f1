"""Command-line front end.

Subcommands: eta, zero, decide, density, report, reproduce.  Summaries go to
stdout, diagnostics to stderr.  Exit codes: 0 success, 1 nothing found
(zero), 2 bad input, 3 limit breached, 4 golden mismatch.
"""

import argparse
import json
import os
import sys
from importlib import resources
from pathlib import Path

from .errors import BFreeError, FamilyParseError, TooLargeError
from .families import FamilySpec, parse_family, preset
from .proximality import (
    Covering,
    SearchBudget,
    conditions_report,
    crt_window_certificate,
    decide,
    prove_no_zero_window,
)
from .windows import (
    Box,
    DEFAULT_CELL_LIMIT,
    Shape,
    density_profile,
    find_zero_window,
    free_window,
    syndetic_period,
)

EXIT_OK = 0
EXIT_NOT_FOUND = 1
EXIT_BAD_INPUT = 2
EXIT_LIMIT = 3
EXIT_MISMATCH = 4


def _load_spec(args) -> FamilySpec:
    if (args.preset is None) == (args.spec is None):
        raise FamilyParseError(0, "give exactly one of --preset or --spec")
    if args.preset is not None:
        return preset(args.preset)
    return parse_family(Path(args.spec).read_text())


def _cell_limit(args) -> int:
    env = os.environ.get("BFREE_LIMIT_CELLS")
    if args.limit_cells is not None:
        return args.limit_cells
    if env is not None:
        return int(env)
    return DEFAULT_CELL_LIMIT


def _parse_shape(text: str, dim: int) -> Shape:
    if text.startswith("@"):
        offsets = []
        for line in Path(text[1:]).read_text().splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            offsets.append(tuple(int(x) for x in line.split()))
        return Shape.from_offsets(offsets)
    return Shape.parse(text, dim)


def cmd_eta(args) -> int:
    spec = _load_spec(args)
    box = Box.parse(args.box)
    window = free_window(spec, box, cell_limit=_cell_limit(args), workers=args.threads)
    out = Path(args.out) if args.out else Path(f"eta.{args.format}")
    if args.format == "csv":
        out.write_text(window.to_csv())
    elif args.format == "pgm":
        out.write_text(window.to_pgm())
    else:
        out.write_text(json.dumps(window.to_json_dict(), indent=2) + "\n")
    print(f"ones={window.ones()} cells={window.box.volume}")
    return EXIT_OK


def cmd_zero(args) -> int:
    spec = _load_spec(args)
    shape = _parse_shape(args.shape, spec.dim)
    if args.crt:
        translate, period, cert = crt_window_certificate(
            spec, shape, instance_bound=args.instance_bound
        )
        payload = {
            "translate": list(translate),
            "period": period.to_columns(),
            "certificate": cert.to_json_dict(),
        }
        print(json.dumps(payload))
        return EXIT_OK
    search = Box.parse(args.search) if args.search else Box.centered(16, spec.dim)
    if args.periodic_exact:
        verdict = decide(spec)
        if verdict.status == "NotProximal" and isinstance(verdict.certificate, Covering):
            covers = verdict.certificate.covers
            if prove_no_zero_window(spec, shape, covers):
                print("exact: no zero translate exists", file=sys.stderr)
                return EXIT_NOT_FOUND
    translate = find_zero_window(spec, shape, search, cell_limit=_cell_limit(args))
    if translate is None:
        print(
            "not found in search box (not a nonexistence proof)",
            file=sys.stderr,
        )
        return EXIT_NOT_FOUND
    period = syndetic_period(spec, translate, shape)
    print(json.dumps({"translate": list(translate), "period": period.to_columns()}))
    return EXIT_OK


def cmd_decide(args) -> int:
    spec = _load_spec(args)
    verdict = decide(spec, SearchBudget(max_side=args.max_side, search_radius=args.radius))
    print(verdict.to_json())
    return EXIT_OK


def cmd_density(args) -> int:
    spec = _load_spec(args)
    sides = [int(x) for x in args.sides.split(",")]
    shift = Box.parse(args.shift_search) if args.shift_search else Box.centered(20, spec.dim)
    profile = density_profile(spec, sides, shift, cell_limit=_cell_limit(args))
    text = profile.to_csv()
    if args.out:
        Path(args.out).write_text(text)
        print(f"rows={len(profile.rows)}")
    else:
        print(text, end="")
    return EXIT_OK


def cmd_report(args) -> int:
    spec = _load_spec(args)
    budget = SearchBudget(max_side=args.max_side, search_radius=args.radius)
    candidate = parse_family(Path(args.dprime).read_text()) if args.dprime else None
    report = conditions_report(spec, budget, dprime_candidate=candidate)
    print(report.to_json())
    return EXIT_OK


# Golden artifacts: window exports over [-25, 25]^2 plus the conditions
# report under a fixed budget.  Regenerate only with --bless.
_GOLDEN_BOX = Box((-25, -25), (25, 25))
_GOLDEN_BUDGET = SearchBudget(max_side=6, search_radius=16)

_DPRIME_CANDIDATE = "dim 2\nrecttemplate [t,t] params=oddprimes\n"


def _golden_artifacts(name: str) -> dict[str, str]:
    spec = preset(name)
    window = free_window(spec, _GOLDEN_BOX)
    candidate = parse_family(_DPRIME_CANDIDATE)
    report = conditions_report(spec, _GOLDEN_BUDGET, dprime_candidate=candidate)
    return {
        f"{name}_window.pgm": window.to_pgm(),
        f"{name}_window.csv": window.to_csv(),
        f"{name}_conditions.json": report.to_json() + "\n",
    }


def cmd_reproduce(args) -> int:
    if args.name not in ("ex1", "ex2"):
        print(f"unknown golden target {args.name!r}", file=sys.stderr)
        return EXIT_BAD_INPUT
    artifacts = _golden_artifacts(args.name)
    outdir = Path(args.outdir) if args.outdir else Path(".")
    outdir.mkdir(parents=True, exist_ok=True)
    for fname, text in artifacts.items():
        (outdir / fname).write_text(text)
    golden_root = resources.files("bfree") / "goldens" / args.name
    if args.bless:
        bless_dir = Path(str(golden_root))
        bless_dir.mkdir(parents=True, exist_ok=True)
        for fname, text in artifacts.items():
            (bless_dir / fname).write_text(text)
        print(f"blessed {len(artifacts)} artifacts for {args.name}")
        return EXIT_OK
    mismatches = []
    for fname, text in artifacts.items():
        ref = golden_root / fname
        if not ref.is_file():
            mismatches.append(f"{fname}: missing golden")
            continue
        if ref.read_text() != text:
            mismatches.append(f"{fname}: differs from golden")
    if mismatches:
        for m in mismatches:
            print(m, file=sys.stderr)
        return EXIT_MISMATCH
    print(f"reproduced {len(artifacts)} artifacts for {args.name}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bfree", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_spec_args(p):
        p.add_argument("--preset", help="built-in family name")
        p.add_argument("--spec", help="family description file")
        p.add_argument("--limit-cells", type=int, default=None)

    p_eta = sub.add_parser("eta", help="export the free-set window over a box")
    add_spec_args(p_eta)
    p_eta.add_argument("--box", required=True, help="lo:hi,lo:hi,...")
    p_eta.add_argument("--format", choices=("csv", "pgm", "json"), default="csv")
    p_eta.add_argument("--out", help="artifact path (default eta.<format>)")
    p_eta.add_argument("--threads", type=int, default=1)
    p_eta.set_defaults(func=cmd_eta)

    p_zero = sub.add_parser("zero", help="find or construct a zero window")
    add_spec_args(p_zero)
    p_zero.add_argument("--shape", required=True, help="a:bxc:d or @offsets-file")
    p_zero.add_argument("--search", help="search box, default centered radius 16")
    p_zero.add_argument("--crt", action="store_true", help="constructive route for rectangular specs")
    p_zero.add_argument("--periodic-exact", action="store_true")
    p_zero.add_argument("--instance-bound", type=int, default=2000)
    p_zero.set_defaults(func=cmd_zero)

    p_decide = sub.add_parser("decide", help="proximality verdict with certificate")
    add_spec_args(p_decide)
    p_decide.add_argument("--max-side", type=int, default=3)
    p_decide.add_argument("--radius", type=int, default=16)
    p_decide.set_defaults(func=cmd_decide)

    p_density = sub.add_parser("density", help="best-shift density lower bounds")
    add_spec_args(p_density)
    p_density.add_argument("--sides", required=True, help="comma-separated box radii")
    p_density.add_argument("--shift-search", help="shift box, default centered radius 20")
    p_density.add_argument("--out")
    p_density.set_defaults(func=cmd_density)

    p_report = sub.add_parser("report", help="status of the equivalent conditions")
    add_spec_args(p_report)
    p_report.add_argument("--max-side", type=int, default=3)
    p_report.add_argument("--radius", type=int, default=16)
    p_report.add_argument("--dprime", help="candidate family file for the d' check")
    p_report.set_defaults(func=cmd_report)

    p_repr = sub.add_parser("reproduce", help="regenerate and compare golden artifacts")
    p_repr.add_argument("name", help="ex1 or ex2")
    p_repr.add_argument("--outdir")
    p_repr.add_argument("--bless", action="store_true")
    p_repr.set_defaults(func=cmd_reproduce)

    return parser


# flags whose values may start with "-" (negative coordinates); joined into
# --flag=value form so argparse does not mistake the value for an option
_VALUE_FLAGS = ("--box", "--search", "--shift-search", "--shape", "--sides")


def _join_flag_values(argv):
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_FLAGS and i + 1 < len(argv):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    args = parser.parse_args(_join_flag_values(list(argv)))
    try:
        return args.func(args)
    except TooLargeError as exc:
        print(f"limit breached: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except (FamilyParseError, FileNotFoundError) as exc:
        print(f"bad input: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except BFreeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
