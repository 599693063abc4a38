"""
Command-Line Front End

    kasami-welch params  --n 8 --k 1
    kasami-welch tdist   --n 8 --k 1 --strategy fast --format csv
    kasami-welch sdist   --n 5 --k 1 --strategy naive
    kasami-welch weights --n 8 --k 1 --code C1 --strategy direct
    kasami-welch corr    --n 5 --k 1 --strategy brute --threads 8
    kasami-welch curve   --n 8 --k 1 --samples 200 --seed 0
    kasami-welch verify  --n 5 --k 1

Reports go to stdout (or --out), logs to stderr. Exit codes: 0 success,
1 failed verification or internal error, 2 rejected parameters, 3 size guard.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from kasami_welch.errors import KasamiWelchError, exit_code_for
from kasami_welch.field_core import MAX_DEGREE, validate_params
from kasami_welch.parallel import default_threads
from kasami_welch.reports import (
    ParamSetPayload,
    correlation_payload,
    curve_csv,
    curve_payload,
    report_payload,
    to_csv,
    to_json,
    verification_payload,
    weights_report_payload,
)
from kasami_welch.sequences import cmax
from kasami_welch.toolkit import Toolkit

logger = logging.getLogger(__name__)

Command = Literal["params", "tdist", "sdist", "weights", "corr", "curve", "verify"]
Strategy = Literal[
    "naive", "fast", "walsh", "rank_fast", "reduced", "brute", "lemma2", "direct", "via_sums"
]

DEFAULT_STRATEGY: dict[str, str] = {
    "tdist": "naive",
    "sdist": "lemma2",
    "weights": "via_sums",
    "corr": "reduced",
}


class RunConfig(BaseModel):
    """Validated command-line configuration."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    command: Command
    n: int = Field(ge=1, le=MAX_DEGREE)
    k: int
    strategy: Optional[Strategy] = None
    code: Literal["C1", "C2"] = "C1"
    format: Literal["json", "csv"] = "json"
    threads: int = Field(default_factory=default_threads, ge=1)
    out: Optional[Path] = None
    allow_large: bool = False
    samples: int = Field(default=200, ge=1)
    seed: int = 0
    verbose: int = Field(default=0, ge=0, le=2)

    @property
    def resolved_strategy(self) -> str:
        strategy = self.strategy or DEFAULT_STRATEGY.get(self.command, "")
        return "rank_fast" if strategy == "fast" else strategy


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kasami-welch",
        description="Exact Kasami-Welch sums, code weights and sequence correlations",
    )
    parser.add_argument("command", choices=list(Command.__args__))  # type: ignore[attr-defined]
    parser.add_argument("--n", type=int, required=True, help="Field degree")
    parser.add_argument("--k", type=int, required=True, help="Exponent parameter, 1 <= k <= n-1")
    parser.add_argument("--strategy", choices=list(Strategy.__args__))  # type: ignore[attr-defined]
    parser.add_argument("--code", choices=["C1", "C2"], default="C1")
    parser.add_argument("--format", choices=["json", "csv"], default="json")
    parser.add_argument("--threads", type=int, default=None, help="Worker processes")
    parser.add_argument("--out", type=Path, default=None, help="Write the report here")
    parser.add_argument("--allow-large", action="store_true", help="Bypass size guards")
    parser.add_argument("--samples", type=int, default=200, help="Curve samples")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("-v", "--verbose", action="count", default=0)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    values = {
        "command": args.command,
        "n": args.n,
        "k": args.k,
        "strategy": args.strategy,
        "code": args.code,
        "format": args.format,
        "out": args.out,
        "allow_large": args.allow_large,
        "samples": args.samples,
        "seed": args.seed,
        "verbose": min(args.verbose, 2),
    }
    if args.threads is not None:
        values["threads"] = args.threads
    return RunConfig(**values)


def configure_logging(verbose: int) -> None:
    level = {0: logging.WARNING, 1: logging.INFO}.get(verbose, logging.DEBUG)
    logging.basicConfig(
        stream=sys.stderr, level=level, format="%(asctime)s %(levelname)s %(name)s: %(message)s"
    )


def _params_csv(payload: ParamSetPayload) -> str:
    lines = ["field,value"]
    lines += [f"{key},{value}" for key, value in payload.model_dump().items()]
    return "\n".join(lines) + "\n"


def render(config: RunConfig) -> tuple[str, int]:
    """Compute the report text for one command and its exit status.

    Raises:
        KasamiWelchError: Parameter, guard or verification failures
    """
    params = validate_params(config.n, config.k)
    csv_out = config.format == "csv"
    if config.command == "params":
        payload = ParamSetPayload.of(params)
        return (_params_csv(payload) if csv_out else to_json(payload)), 0

    kit = Toolkit(params=params, threads=config.threads, allow_large=config.allow_large)
    strategy = config.resolved_strategy

    if config.command in ("tdist", "sdist"):
        report = kit.t_report(strategy) if config.command == "tdist" else kit.s_report(strategy)
        status = 0 if report.passed else 1
        if csv_out:
            return to_csv(report.empirical.entries), status
        return to_json(report_payload(report)), status

    if config.command == "weights":
        weights = kit.weights(config.code, strategy)
        if csv_out:
            return to_csv(weights.entries, key="weight"), 0
        punctured = kit.punctured_weights() if config.code == "C1" and params.s_even else None
        return to_json(weights_report_payload(weights, punctured)), 0

    if config.command == "corr":
        dist = kit.correlations(strategy)
        if csv_out:
            return to_csv(dist.entries), 0
        return to_json(correlation_payload(dist, cmax(params, dist))), 0

    if config.command == "curve":
        samples = kit.curve_samples(config.samples, config.seed)
        if csv_out:
            return curve_csv(samples), 0
        return to_json(curve_payload(params, samples)), 0

    summary = kit.verify()
    return to_json(verification_payload(summary)), summary.exit_code


def run(config: RunConfig) -> int:
    """Execute one command; returns the process exit status."""
    try:
        text, status = render(config)
    except KasamiWelchError as e:
        print(f"error: {e}", file=sys.stderr)
        return exit_code_for(e)

    if config.out is not None:
        config.out.write_text(text)
        logger.info("Wrote %s", config.out)
    else:
        sys.stdout.write(text)
    return status


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose)
    try:
        config = config_from_args(args)
    except ValidationError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
