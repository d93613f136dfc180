"""Command-line surface: exact analysis, Monte Carlo runs, channel math,
and the circuit interpreter, with JSON or CSV output.

Statistical commands require an explicit --seed; identical invocations
produce byte-identical output at any --workers setting. The default
output format comes from the QSIGNAL_FORMAT environment variable when
set; the --format flag always wins.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
from collections import Counter

import numpy as np

from .channel import (
    ZChannel,
    ancilla_model_distribution,
    block_error_probability,
    channel_capacity,
    exact_distribution,
    monte_carlo_block_error,
    mutual_information,
)
from .dsl import ParseError, execute, load
from .protocol import transmit_message

FORMAT_ENV_VAR = "QSIGNAL_FORMAT"
_FORMATS = ("json", "csv")


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be a positive integer, got {value}")
    return value


def _probability(text: str) -> float:
    value = float(text)
    if not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError(f"must lie in [0, 1], got {value}")
    return value


def _bit_string(text: str) -> str:
    if not re.match(r"[01]+\Z", text):
        raise argparse.ArgumentTypeError(f"must be a non-empty string of 0s and 1s, got {text!r}")
    return text


def cmd_exact(args) -> tuple[list[str], list[dict], bool]:
    dist = exact_distribution(args.bit)
    row = {
        "experiment": "exact",
        "bit": args.bit,
        "p_bob_0": dist.p_bob_0,
        "p_bob_1": dist.p_bob_1,
    }
    return list(row), [row], False


def cmd_ancilla(args) -> tuple[list[str], list[dict], bool]:
    unitary = ancilla_model_distribution(args.bit)
    collapse = exact_distribution(args.bit)
    diff = max(
        abs(unitary.p_bob_0 - collapse.p_bob_0),
        abs(unitary.p_bob_1 - collapse.p_bob_1),
    )
    row = {
        "experiment": "ancilla",
        "bit": args.bit,
        "p_bob_0": unitary.p_bob_0,
        "p_bob_1": unitary.p_bob_1,
        "max_abs_diff_vs_collapse": diff,
    }
    return list(row), [row], False


def cmd_block(args) -> tuple[list[str], list[dict], bool]:
    estimate = monte_carlo_block_error(
        args.bit, args.n, args.trials, np.random.default_rng(args.seed), args.workers
    )
    expected = block_error_probability(args.n) if args.bit == 1 else 0.0
    # workers is an execution detail: the counts do not depend on it, and
    # omitting it keeps output byte-identical across parallelism degrees.
    row = {
        "experiment": "block",
        "bit": args.bit,
        "n_pairs": args.n,
        "trials": args.trials,
        "seed": args.seed,
        "count_decoded_one": estimate.count_decoded_one,
        "rate_decoded_one": estimate.rate_decoded_one,
        "error_rate": estimate.error_rate,
        "expected_error_rate": expected,
        "stderr_error_rate": estimate.stderr_error_rate,
    }
    return list(row), [row], False


def cmd_channel(args) -> tuple[list[str], list[dict], bool]:
    chan = ZChannel(args.n)
    row = {
        "experiment": "channel",
        "n_pairs": args.n,
        "p_false_one": chan.p_false_one,
        "p_missed_one": chan.p_missed_one,
    }
    if args.prior is not None:
        row["prior_p1"] = args.prior
        row["mutual_information_bits"] = mutual_information(chan, args.prior)
    else:
        capacity, argmax_prior = channel_capacity(chan)
        row["capacity_bits"] = capacity
        row["argmax_prior_p1"] = argmax_prior
    return list(row), [row], False


_RUN_FIELDS = ["experiment", "file", "shots", "seed", "outcome", "count", "frequency"]


def cmd_run(args) -> tuple[list[str], list[dict], bool]:
    circuit = load(args.file)
    records = execute(circuit, args.shots, np.random.default_rng(args.seed))
    histogram = Counter(
        "".join(str(m.bit) for m in record.measurement_outcomes)
        for record in records
        if record.measurement_outcomes
    )
    rows = [
        {
            "experiment": "run",
            "file": args.file,
            "shots": args.shots,
            "seed": args.seed,
            "outcome": outcome,
            "count": count,
            "frequency": count / args.shots,
        }
        for outcome, count in sorted(histogram.items())
    ]
    return _RUN_FIELDS, rows, True


def cmd_transmit(args) -> tuple[list[str], list[dict], bool]:
    bits = [int(c) for c in args.message]
    decoded = transmit_message(bits, args.n, np.random.default_rng(args.seed))
    row = {
        "experiment": "transmit",
        "message": args.message,
        "n_pairs": args.n,
        "seed": args.seed,
        "decoded": "".join(str(b) for b in decoded),
        "bit_errors": sum(d != b for d, b in zip(decoded, bits)),
    }
    return list(row), [row], False


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format",
        choices=_FORMATS,
        default=None,
        help=f"output format (default: ${FORMAT_ENV_VAR} or json)",
    )

    parser = argparse.ArgumentParser(
        prog="qsignal",
        description="Entangled-pair signalling protocol: simulation and channel analysis.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("exact", parents=[common], help="exact receiver distribution for one sent bit")
    p.add_argument("--bit", type=int, choices=(0, 1), required=True)
    p.set_defaults(handler=cmd_exact)

    p = sub.add_parser("ancilla", parents=[common], help="receiver distribution under the unitary ancilla model")
    p.add_argument("--bit", type=int, choices=(0, 1), required=True)
    p.set_defaults(handler=cmd_ancilla)

    p = sub.add_parser("block", parents=[common], help="Monte Carlo OR-decoded block statistics")
    p.add_argument("--n", type=_positive_int, required=True, help="pairs per block")
    p.add_argument("--bit", type=int, choices=(0, 1), required=True)
    p.add_argument("--trials", type=_positive_int, default=100_000)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--workers", type=_positive_int, default=1)
    p.set_defaults(handler=cmd_block)

    p = sub.add_parser("channel", parents=[common], help="induced Z-channel information measures")
    p.add_argument("--n", type=_positive_int, required=True, help="pairs per block")
    p.add_argument("--prior", type=_probability, default=None,
                   help="input prior P(send 1); omit to report capacity")
    p.set_defaults(handler=cmd_channel)

    p = sub.add_parser("run", parents=[common], help="interpret a .qc circuit file")
    p.add_argument("file")
    p.add_argument("--shots", type=_positive_int, default=10_000)
    p.add_argument("--seed", type=int, required=True)
    p.set_defaults(handler=cmd_run)

    p = sub.add_parser("transmit", parents=[common], help="send a bit string through OR-decoded blocks")
    p.add_argument("--message", type=_bit_string, required=True)
    p.add_argument("--n", type=_positive_int, default=10, help="pairs per block")
    p.add_argument("--seed", type=int, required=True)
    p.set_defaults(handler=cmd_transmit)

    return parser


def _render(fieldnames: list[str], rows: list[dict], stream: bool, fmt: str) -> str:
    if fmt == "json":
        payload = rows if stream else rows[0]
        return json.dumps(payload, indent=2)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=fieldnames, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue().rstrip("\n")


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    fmt = args.format or os.environ.get(FORMAT_ENV_VAR) or "json"
    if fmt not in _FORMATS:
        print(
            f"error: {FORMAT_ENV_VAR} must be one of {', '.join(_FORMATS)}, got {fmt!r}",
            file=sys.stderr,
        )
        return 1
    try:
        fieldnames, rows, stream = args.handler(args)
    except (ParseError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(_render(fieldnames, rows, stream, fmt))
    return 0


if __name__ == "__main__":
    sys.exit(main())
