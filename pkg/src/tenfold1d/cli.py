"""Command line front end.

Subcommands:

    classify   class membership and index of one bulk model
    junction   zero-mode prediction for a glued pair or a mass profile
    sweep      index and gap along a one-parameter model family
    table      the ten symmetry classes and their invariants
    verify     prediction against a finite-size diagonalization oracle

Data goes to stdout as CSV (or JSON with --json); diagnostics and
metadata go to stderr. Exit status: 0 on success (including WARN
verdicts), 2 when a check fails (membership, consistency, or a FAIL
verdict), 3 on parse and usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import asdict, dataclass, field

import numpy as np

from .errors import (
    BadParity,
    BadSpec,
    BadTemplate,
    GapClosed,
    IncompatibleBoundary,
    NotInGap,
    ParseError,
)
from .index import topological_index
from .junction import (
    continuous_junction_report,
    hard_junction,
    predicted_zero_modes,
    protected_bound,
)
from .linalg import TOL, Tolerances
from .modelfile import (
    build_bulk,
    build_profile,
    build_tb,
    parse_model,
    parse_model_text,
)
from .models import tb_bulk
from .symmetry import CartanClass, membership
from .verify import (
    DiscretizationSpec,
    count_near_zero_localized,
    discretize_dirac_junction,
    finite_chain,
    oracle_compare,
)

__all__ = ["RunReport", "main"]


@dataclass
class RunReport:
    """Tabular result of one command run.

    Serializes losslessly to JSON; the CSV rendering carries the same
    columns and rows, with metadata delivered separately on stderr.
    """

    kind: str
    columns: list
    rows: list
    meta: dict = field(default_factory=dict)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.columns)
        writer.writerows(self.rows)
        return buf.getvalue()

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "RunReport":
        data = json.loads(text)
        return cls(kind=data["kind"], columns=data["columns"],
                   rows=data["rows"], meta=data.get("meta", {}))


def _fmt(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return repr(float(x))
    return str(x)


def _membership_row(U, label: CartanClass, tol: Tolerances):
    """(member, index string) of one unitary in one class."""
    try:
        member = membership(U.U, label, tol)
    except BadParity:
        member = False
    if not member:
        return False, ""
    return True, str(topological_index(U, label, tol))


def cmd_classify(args, tol: Tolerances):
    mf = parse_model(args.model)
    bulk = build_bulk(mf, tol, energy=args.energy)
    labels = [CartanClass.coerce(args.cartan)] if args.cartan else list(CartanClass)
    rows = []
    exit_code = 0
    for label in labels:
        member, idx = _membership_row(bulk.u_plus, label, tol)
        rows.append([label.value, _fmt(member), idx])
        if args.cartan and not member:
            exit_code = 2
    meta = {
        "model": args.model,
        "energy": bulk.energy,
        "gap": bulk.gap,
        "boundary_dim": bulk.form.dim,
    }
    return RunReport("classify", ["class", "member", "index"], rows, meta), exit_code


def cmd_junction(args, tol: Tolerances):
    if args.profile:
        if not args.cartan:
            raise ParseError("junction --profile needs --class")
        mf = parse_model(args.profile)
        profile = build_profile(mf)
        energy = _pick_energy(args, mf)
        rep = continuous_junction_report(profile, energy, args.cartan, tol)
        columns = ["class", "energy", "predicted", "bound", "index_left",
                   "index_right", "transport_consistent", "gap_left", "gap_right"]
        rows = [[rep.cartan, _fmt(rep.energy), _fmt(rep.predicted),
                 _fmt(rep.bound), str(rep.index_left), str(rep.index_right),
                 _fmt(rep.transport_consistent), _fmt(rep.gap_left),
                 _fmt(rep.gap_right)]]
        meta = {
            "profile": args.profile,
            "predicted_principal_angles": rep.predicted_principal_angles,
            "index_plus_transported": str(rep.index_plus_transported),
            "index_minus_transported": str(rep.index_minus_transported),
            "defect_plus": rep.defect_plus,
            "defect_minus": rep.defect_minus,
        }
        exit_code = 0 if rep.transport_consistent else 2
        return RunReport("junction", columns, rows, meta), exit_code

    if not (args.left and args.right):
        raise ParseError("junction needs --left and --right, or --profile")
    left_mf = parse_model(args.left)
    right_mf = parse_model(args.right)
    energy = _pick_energy(args, left_mf, right_mf)
    left = build_bulk(left_mf, tol, energy=energy)
    right = build_bulk(right_mf, tol, energy=energy)
    pair = hard_junction(left, right, tol)
    predicted = predicted_zero_modes(pair.left, pair.right, tol)
    bound = ""
    index_left = index_right = ""
    if args.cartan:
        label = CartanClass.coerce(args.cartan)
        il = topological_index(left.u_plus, label, tol)
        ir = topological_index(right.u_plus, label, tol)
        bound = _fmt(protected_bound(label, il, ir))
        index_left, index_right = str(il), str(ir)
    columns = ["class", "energy", "predicted", "bound", "index_left",
               "index_right", "gap_left", "gap_right"]
    rows = [[args.cartan or "", _fmt(energy), _fmt(predicted), bound,
             index_left, index_right, _fmt(left.gap), _fmt(right.gap)]]
    meta = {"left": args.left, "right": args.right}
    return RunReport("junction", columns, rows, meta), 0


def _pick_energy(args, *mfs) -> float:
    if args.energy is not None:
        return float(args.energy)
    for mf in mfs:
        if mf.energy is not None:
            return float(mf.energy)
    return 0.0


def _parse_values(spec: str) -> list:
    """Grid spec: 'start:stop:count' or comma-separated values."""
    try:
        if ":" in spec:
            parts = spec.split(":")
            if len(parts) != 3:
                raise ValueError("expected start:stop:count")
            start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
            if count < 1:
                raise ValueError("count must be positive")
            return [float(v) for v in np.linspace(start, stop, count)]
        return [float(v) for v in spec.split(",")]
    except ValueError as exc:
        raise ParseError(f"bad --values {spec!r}: {exc}") from None


def cmd_sweep(args, tol: Tolerances):
    with open(args.model, encoding="utf-8") as fh:
        template = fh.read()
    holes = template.count("?")
    if holes != 1:
        raise BadTemplate(
            f"{args.model}: template needs exactly one '?', found {holes}"
        )
    label = CartanClass.coerce(args.cartan)
    values = _parse_values(args.values)

    def bulk_at(v: float):
        text = template.replace("?", repr(float(v)))
        mf = parse_model_text(text, source=f"{args.model}[?={v:g}]")
        return build_bulk(mf, tol, energy=args.energy)

    ref_value = values[0] if args.ref is None else float(args.ref)
    try:
        ref_bulk = bulk_at(ref_value)
    except (GapClosed, NotInGap) as exc:
        raise ParseError(
            f"reference point {ref_value:g} is not gapped: {exc}"
        ) from None

    rows = []
    for v in values:
        try:
            bulk = bulk_at(v)
        except (GapClosed, NotInGap):
            rows.append([_fmt(v), "GAP_CLOSED", "", ""])
            continue
        idx = topological_index(bulk.u_plus, label, tol)
        try:
            pair = hard_junction(ref_bulk, bulk, tol)
            predicted = _fmt(predicted_zero_modes(pair.left, pair.right, tol))
        except IncompatibleBoundary:
            predicted = "NA"
        rows.append([_fmt(v), _fmt(bulk.gap), str(idx), predicted])
    meta = {"model": args.model, "class": label.value, "reference": ref_value}
    return RunReport("sweep", ["parameter", "gap", "index", "predicted"],
                     rows, meta), 0


def cmd_table(args, tol: Tolerances):
    signs = {1: "+1", -1: "-1", 0: "none"}
    rows = [
        [label.value, signs[label.t_sign], signs[label.c_sign],
         "yes" if label.has_chiral else "no", label.manifold, label.index_range]
        for label in CartanClass
    ]
    columns = ["class", "T^2", "C^2", "chiral", "manifold", "index"]
    return RunReport("table", columns, rows, {}), 0


def cmd_verify(args, tol: Tolerances):
    spec = DiscretizationSpec(
        length=args.length,
        step=args.step,
        cells=args.cells,
        energy_window=args.energy_window,
        core_fraction=args.core_fraction,
        min_weight=args.min_weight,
    )
    extra_meta = {}
    if args.profile:
        if not args.cartan:
            raise ParseError("verify --profile needs --class")
        mf = parse_model(args.profile)
        profile = build_profile(mf)
        energy = _pick_energy(args, mf)
        rep = continuous_junction_report(profile, energy, args.cartan, tol)
        H = discretize_dirac_junction(profile, spec)
        predicted, bound = rep.predicted, rep.bound
        source = args.profile
    elif args.left and args.right:
        left_mf = parse_model(args.left)
        right_mf = parse_model(args.right)
        energy = _pick_energy(args, left_mf, right_mf)
        left_model = build_tb(left_mf, tol)
        right_model = build_tb(right_mf, tol)
        left = tb_bulk(left_model, energy, tol)
        right = tb_bulk(right_model, energy, tol)
        bound = 0
        if args.cartan:
            label = CartanClass.coerce(args.cartan)
            il = topological_index(left.u_plus, label, tol)
            ir = topological_index(right.u_plus, label, tol)
            bound = protected_bound(label, il, ir)
            extra_meta = {"index_left": str(il), "index_right": str(ir)}
        try:
            pair = hard_junction(left, right, tol)
            predicted = predicted_zero_modes(pair.left, pair.right, tol)
        except IncompatibleBoundary:
            # seam bonds differ: no common boundary form, so the
            # transversal count is unavailable; the bound still stands
            predicted = None
        H = finite_chain(left_model, right_model, spec)
        source = f"{args.left} | {args.right}"
    else:
        raise ParseError("verify needs --profile, or --left and --right")

    shifted = H - energy * np.eye(H.shape[0]) if energy else H
    oracle = count_near_zero_localized(shifted, spec, tol)
    compare_predicted = bound if predicted is None else predicted
    verdict = oracle_compare((compare_predicted, bound), oracle)
    columns = ["class", "energy", "predicted", "bound", "near_zero",
               "localized", "verdict"]
    rows = [[args.cartan or "", _fmt(energy),
             "NA" if predicted is None else _fmt(predicted), _fmt(bound),
             _fmt(oracle.near_zero), _fmt(oracle.localized), verdict]]
    meta = {
        "source": source,
        "matrix_dim": int(H.shape[0]),
        "energies": [float(e) for e in oracle.energies],
    }
    meta.update(extra_meta)
    return RunReport("verify", columns, rows, meta), 2 if verdict == "FAIL" else 0


_COMMANDS = {
    "classify": cmd_classify,
    "junction": cmd_junction,
    "sweep": cmd_sweep,
    "table": cmd_table,
    "verify": cmd_verify,
}


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--tol-eig", type=float,
                        help="eigenvalue clustering tolerance")
    common.add_argument("--tol-rank", type=float,
                        help="rank decision tolerance")
    common.add_argument("--json", action="store_true",
                        help="emit JSON instead of CSV")
    common.add_argument("--out", metavar="FILE",
                        help="write output to FILE instead of stdout")

    parser = argparse.ArgumentParser(
        prog="tenfold1d",
        description="Tenfold-way classification of gapped 1d operators "
                    "and their junction zero modes.",
        parents=[common],
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="classify one bulk model", parents=[common])
    p.add_argument("--model", required=True, help="model file")
    p.add_argument("--class", dest="cartan", default=None,
                   help="check one class instead of all ten")
    p.add_argument("--energy", type=float, default=None)

    p = sub.add_parser("junction", parents=[common], help="predict zero modes at a junction")
    p.add_argument("--left", help="left model file")
    p.add_argument("--right", help="right model file")
    p.add_argument("--profile", help="piecewise mass profile file")
    p.add_argument("--class", dest="cartan", default=None)
    p.add_argument("--energy", type=float, default=None)

    p = sub.add_parser("sweep", parents=[common], help="sweep one model parameter")
    p.add_argument("--model", required=True,
                   help="model file with a single '?' placeholder")
    p.add_argument("--class", dest="cartan", required=True)
    p.add_argument("--values", required=True,
                   help="'start:stop:count' or comma-separated list")
    p.add_argument("--ref", type=float, default=None,
                   help="reference parameter for the predicted column "
                        "(default: first grid point)")
    p.add_argument("--energy", type=float, default=None)

    sub.add_parser("table", parents=[common], help="print the ten symmetry classes")

    p = sub.add_parser("verify", parents=[common], help="check a prediction numerically")
    p.add_argument("--profile", help="piecewise mass profile file")
    p.add_argument("--left", help="left chain model file")
    p.add_argument("--right", help="right chain model file")
    p.add_argument("--class", dest="cartan", default=None)
    p.add_argument("--energy", type=float, default=None)
    p.add_argument("--length", type=float, default=None,
                   help="half-width of the Dirac domain")
    p.add_argument("--step", type=float, default=None,
                   help="Dirac grid spacing")
    p.add_argument("--cells", type=int, default=None,
                   help="unit cells per side of a finite chain")
    p.add_argument("--energy-window", type=float, required=True,
                   help="half-width of the near-zero window")
    p.add_argument("--core-fraction", type=float, default=0.5)
    p.add_argument("--min-weight", type=float, default=0.9)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    # the shared flags suppress their defaults so that a value given before
    # the subcommand survives the subparser pass; fill the gaps here
    for key, value in (("tol_eig", None), ("tol_rank", None),
                       ("json", False), ("out", None)):
        if not hasattr(args, key):
            setattr(args, key, value)
    tol = TOL
    if args.tol_eig is not None or args.tol_rank is not None:
        tol = Tolerances(
            rank_tol=args.tol_rank if args.tol_rank is not None else TOL.rank_tol,
            eig_tol=args.tol_eig if args.tol_eig is not None else TOL.eig_tol,
            frame_tol=TOL.frame_tol,
        )
    try:
        report, exit_code = _COMMANDS[args.command](args, tol)
    except (ParseError, BadSpec, BadTemplate, OSError) as exc:
        print(f"tenfold1d: error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"tenfold1d: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3

    text = report.to_json() if args.json else report.to_csv()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if not args.json and report.meta:
        for key, value in report.meta.items():
            print(f"# {key}: {value}", file=sys.stderr)
    return exit_code


if __name__ == "__main__":
    sys.exit(main())
