"""Command-line front end.

Output is JSON lines by default (``--format csv`` for CSV).  Exact rationals
are printed as strings.  Exit codes: 2 usage, 3 domain error, 4 size cap.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path

import mpmath

from .basis import SchurLabel, enumerate_paths, iter_labels, path_count
from .errors import DomainError, DomainTooLarge
from .estimator import PqcCircuit, estimate_transition
from .exact import round_to_float
from .oracle import exact_transition, yor_transposition_matrix
from .overlap import format_bits, overlap, parse_bits
from .sampler import sample, telescoping_marginal
from .spin import format_half, parse_half

EXIT_USAGE, EXIT_DOMAIN, EXIT_CAP = 2, 3, 4


class UsageError(Exception):
    pass


def _load_json(text: str, what: str):
    text = text.strip()
    if not text.startswith("{"):
        path = Path(text)
        if not path.is_file():
            raise UsageError(f"{what}: neither inline JSON nor an existing file: {text!r}")
        text = path.read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{what}: malformed JSON ({exc})") from None


def _label(text: str) -> SchurLabel:
    return SchurLabel.from_json(_load_json(text, "--label"))


def _seed(text: str) -> int:
    try:
        value = int(text, 10)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a decimal integer: {text!r}") from None
    if not 0 <= value < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def _emit(records: list[dict], fmt: str, out) -> None:
    if fmt == "csv":
        keys: list[str] = []
        for r in records:
            keys.extend(k for k in r if k not in keys)
        writer = csv.DictWriter(out, fieldnames=keys, lineterminator="\n")
        writer.writeheader()
        for r in records:
            writer.writerow({k: json.dumps(v) if isinstance(v, (dict, list)) else v
                             for k, v in r.items()})
    else:
        for r in records:
            out.write(json.dumps(r, sort_keys=False) + "\n")


def _cmd_overlap(args) -> list[dict]:
    label = _label(args.label)
    bits = parse_bits(args.y)
    value = overlap(bits, label)
    rec = {"y": format_bits(bits), "label": label.to_json()}
    if args.float_view:
        digits = max(1, math.ceil(args.bits * math.log10(2)))
        rec["bits"] = args.bits
        rec["value"] = mpmath.nstr(round_to_float(value, args.bits), digits) \
            if args.bits > 53 else repr(round_to_float(value, args.bits))
    rec.update(value.to_json())
    return [rec]


def _cmd_marginal(args) -> list[dict]:
    label = _label(args.label)
    p = telescoping_marginal(label, args.suffix)
    return [{"label": label.to_json(), "suffix": args.suffix, "exact": str(p), "float": float(p)}]


def _cmd_sample(args) -> list[dict] | None:
    label = _label(args.label)
    draws = sample(label, args.seed, args.count, workers=args.workers)
    strings = [format_bits(b) for b in draws]
    header = {"label": label.to_json(), "seed": args.seed, "count": args.count,
              "workers": args.workers}
    if args.format == "csv":
        return [dict(y=s) for s in strings]
    if args.format == "lines":
        sys.stderr.write(json.dumps(header) + "\n")
        sys.stdout.write("".join(s + "\n" for s in strings))
        return None
    if args.format == "json":
        sys.stdout.write(json.dumps(dict(header, samples=strings)) + "\n")
        return None
    sys.stdout.write(json.dumps(header) + "\n")
    sys.stdout.write("".join(json.dumps(s) + "\n" for s in strings))
    return None


def _cmd_estimate(args) -> list[dict]:
    circuit = PqcCircuit.from_json(_load_json(args.circuit, "--circuit"))
    est = estimate_transition(circuit, args.epsilon, args.delta, args.seed, workers=args.workers)
    return [est.to_json()]


def _cmd_exact(args) -> list[dict]:
    circuit = PqcCircuit.from_json(_load_json(args.circuit, "--circuit"))
    value = exact_transition(circuit)
    if isinstance(value, complex):
        return [{"re": value.real, "im": value.imag, "exact": False}]
    z = complex(value)
    return [{"re": z.real, "im": z.imag, "exact": True,
             "re_exact": str(value.re), "im_exact": str(value.im)}]


def _cmd_basis(args) -> list[dict]:
    J = None if args.J is None else parse_half(args.J)
    if args.list:
        if J is None:
            enumerate_paths(args.n)  # size cap
            return [lab.to_json() for lab in iter_labels(args.n)]
        return [lab.to_json() for lab in iter_labels(args.n, J)]
    rec = {"n": args.n}
    if J is not None:
        rec["J"] = format_half(J)
        rec["paths"] = path_count(args.n, J)
        rec["labels"] = rec["paths"] * (J + 1)
    else:
        rec["paths"] = sum(path_count(args.n, j) for j in range(args.n % 2, args.n + 1, 2))
        rec["labels"] = 2 ** args.n
    return [rec]


def _cmd_yor(args) -> list[dict]:
    J = parse_half(args.J)
    matrix = yor_transposition_matrix(args.n, J, args.k)
    paths = enumerate_paths(args.n, J)
    return [{"row": r, "col": c, "row_path": [format_half(j) for j in paths[r].js],
             "col_path": [format_half(j) for j in paths[c].js],
             "s": str(v.s), "q": str(v.q), "float": float(v)}
            for r, row in enumerate(matrix) for c, v in enumerate(row) if v]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="schursim", description=__doc__.splitlines()[0])
    parser.add_argument("--format", choices=["jsonl", "csv"], default="jsonl")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("overlap", help="exact <y|label>")
    p.add_argument("--label", required=True)
    p.add_argument("--y", required=True)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true")
    mode.add_argument("--float", dest="float_view", action="store_true")
    p.add_argument("--bits", type=int, default=53)
    p.set_defaults(run=_cmd_overlap)

    p = sub.add_parser("marginal", help="telescoping suffix marginal")
    p.add_argument("--label", required=True)
    p.add_argument("--suffix", required=True)
    p.set_defaults(run=_cmd_marginal)

    p = sub.add_parser("sample", help="exact samples of p(y) = <y|label>^2")
    p.add_argument("--label", required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--seed", type=_seed, required=True)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--format", dest="sample_format", choices=["jsonl", "json", "lines", "csv"])
    p.set_defaults(run=_cmd_sample)

    p = sub.add_parser("estimate", help="Monte Carlo transition amplitude")
    p.add_argument("--circuit", required=True)
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--seed", type=_seed, required=True)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(run=_cmd_estimate)

    p = sub.add_parser("exact", help="exhaustive transition amplitude (small n)")
    p.add_argument("--circuit", required=True)
    p.set_defaults(run=_cmd_exact)

    p = sub.add_parser("basis", help="enumerate or count basis labels")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--J")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--list", action="store_true")
    group.add_argument("--count", action="store_true")
    p.set_defaults(run=_cmd_basis)

    p = sub.add_parser("yor", help="Young's orthogonal form of (k, k+1)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--J", required=True)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(run=_cmd_yor)
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command == "sample":
        args.format = args.sample_format or ("csv" if args.format == "csv" else "jsonl")
    try:
        records = args.run(args)
    except UsageError as exc:
        print(f"schursim: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DomainTooLarge as exc:
        print(f"schursim: size cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    except DomainError as exc:
        print(f"schursim: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    if records is not None:
        buf = io.StringIO()
        _emit(records, "csv" if args.format == "csv" else "jsonl", buf)
        sys.stdout.write(buf.getvalue())
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
