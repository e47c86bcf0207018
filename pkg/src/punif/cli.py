"""Command-line front end.

Subcommands: norm, fourier, membership, fidelity, enumerate, test-c3, verify.
Reports go to stdout (json, csv, or human format); logs and errors go to
stderr. Environment variables PUNIF_SEED, PUNIF_CACHE_DIR and PUNIF_THREADS
supply defaults for the corresponding flags (threads is accepted as a hint;
the kernels are vectorized single-process numpy).

Exit codes: 0 success, 1 verification failure, 2 gate parse failure,
3 exact-mode budget exceeded, 4 out-of-scope parameters.
"""

from __future__ import annotations

import dataclasses
import json
import os
import sys
import time

import click

from .galois import SympVector
from .gates import ParseError, parse_gate
from .hierarchy import (
    OutOfScopeError,
    enumerate_level,
    fidelity,
    in_level,
)
from .matcore import NonUnitaryError, Unitary, load_matrix, save_matrix
from .testersim import TesterConfig, c3_tester, oracle_pair
from .uniformity import BudgetExceededError, fourier_coeffs, pnorm_exact, pnorm_sampled
from .verify import SUITE_NAMES, run_suites

EXIT_VERIFY_FAILED = 1
EXIT_PARSE = 2
EXIT_BUDGET = 3
EXIT_OUT_OF_SCOPE = 4


@dataclasses.dataclass
class RunConfig:
    """Resolved run-wide options (flags win over environment variables)."""

    seed: int | None = None
    fmt: str = "human"
    cache_dir: str | None = None
    threads: int = 1

    @classmethod
    def resolve(cls, seed, fmt, cache_dir=None):
        if seed is None and os.environ.get("PUNIF_SEED"):
            seed = int(os.environ["PUNIF_SEED"])
        if cache_dir is None:
            cache_dir = os.environ.get("PUNIF_CACHE_DIR")
        threads = int(os.environ.get("PUNIF_THREADS", "1"))
        return cls(seed=seed, fmt=fmt, cache_dir=cache_dir, threads=threads)


def _fail(code: int, message: str):
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _resolve_gate(source: str, d: int | None) -> Unitary:
    """A gate spec is either an expression or a path to a matrix JSON file."""
    looks_like_file = source.endswith(".json") or os.path.sep in source
    if looks_like_file or os.path.isfile(source):
        try:
            gate = load_matrix(source)
        except (OSError, ValueError, NonUnitaryError) as exc:
            _fail(EXIT_PARSE, f"cannot load matrix file {source!r}: {exc}")
        if d is not None and gate.d != d:
            _fail(EXIT_PARSE, f"matrix file has d={gate.d}, flag requested d={d}")
        return gate
    try:
        return parse_gate(source, d=2 if d is None else d)
    except ParseError as exc:
        _fail(EXIT_PARSE, f"cannot parse gate {source!r}: {exc}")


def _emit(report: dict, fmt: str):
    if fmt == "json":
        click.echo(json.dumps(report, indent=2))
    elif fmt == "csv":
        keys = list(report)
        flat = [
            json.dumps(report[k]) if isinstance(report[k], (dict, list)) else report[k]
            for k in keys
        ]
        click.echo(",".join(str(k) for k in keys))
        click.echo(",".join(str(v) for v in flat))
    else:
        width = max(len(k) for k in report)
        for key, value in report.items():
            click.echo(f"{key.ljust(width)}  {value}")


_gate_option = click.option("--gate", "-g", required=True, help="gate expression or matrix JSON path")
_d_option = click.option("--d", default=None, type=int, help="qudit dimension (prime), default 2")
_format_option = click.option(
    "--format", "fmt", type=click.Choice(["json", "csv", "human"]), default="human",
    show_default=True, help="report format on stdout",
)
_seed_option = click.option("--seed", type=int, default=None, help="RNG seed (env PUNIF_SEED)")
_dump_option = click.option(
    "--dump-matrix", type=click.Path(dir_okay=False), default=None,
    help="also write the parsed gate to this matrix JSON file",
)


@click.group()
def main():
    """Uniformity norms, hierarchy membership, and tester simulation."""


@main.command("norm")
@_gate_option
@click.option("--k", required=True, type=int, help="norm order (>= 1)")
@click.option("--mode", type=click.Choice(["exact", "sampled"]), default="exact", show_default=True)
@click.option("--samples", type=int, default=10000, show_default=True, help="sampled-mode draws")
@_d_option
@_seed_option
@_format_option
@_dump_option
def cmd_norm(gate, k, mode, samples, d, seed, fmt, dump_matrix):
    """Uniformity norm of a gate."""
    config = RunConfig.resolve(seed, fmt)
    u = _resolve_gate(gate, d)
    if dump_matrix:
        save_matrix(dump_matrix, u)
    try:
        if mode == "exact":
            report = pnorm_exact(u, k)
        else:
            report = pnorm_sampled(u, k, samples, seed=config.seed)
    except BudgetExceededError as exc:
        _fail(EXIT_BUDGET, f"{exc}")
    except ValueError as exc:
        _fail(EXIT_OUT_OF_SCOPE, f"{exc}")
    out = {"gate": gate, "n": u.n, "d": u.d}
    out.update(report.to_json_dict())
    _emit(out, config.fmt)


@main.command("fourier")
@_gate_option
@_d_option
@_format_option
@_dump_option
def cmd_fourier(gate, d, fmt, dump_matrix):
    """Weyl-basis expansion of a gate."""
    u = _resolve_gate(gate, d)
    if dump_matrix:
        save_matrix(dump_matrix, u)
    table = fourier_coeffs(u)
    entries = [
        {
            "label": str(label),
            "re": coeff.real,
            "im": coeff.imag,
            "abs": abs(coeff),
        }
        for label, coeff in table.items()
        if abs(coeff) > 1e-12
    ]
    report = {
        "gate": gate,
        "n": u.n,
        "d": u.d,
        "l2_mass": table.l2_mass(),
        "l4_mass": table.l4_mass(),
        "entries": entries,
    }
    if fmt == "human":
        click.echo(f"gate {gate}  (n={u.n}, d={u.d})")
        for e in entries:
            click.echo(f"  W{e['label']}: {e['re']:+.6f}{e['im']:+.6f}i  |c|={e['abs']:.6f}")
        click.echo(f"l2 mass {report['l2_mass']:.12f}, l4 mass {report['l4_mass']:.12f}")
    else:
        _emit(report, fmt)


@main.command("membership")
@_gate_option
@click.option("--k", required=True, type=int, help="hierarchy level (>= 0)")
@click.option("--tol", type=float, default=1e-8, show_default=True)
@_d_option
@_format_option
@_dump_option
def cmd_membership(gate, k, tol, d, fmt, dump_matrix):
    """Membership of a gate in hierarchy level k."""
    u = _resolve_gate(gate, d)
    if dump_matrix:
        save_matrix(dump_matrix, u)
    if k < 0:
        _fail(EXIT_OUT_OF_SCOPE, "level must be >= 0")
    verdict = in_level(u, k, tol=tol)
    out = {"gate": gate, "n": u.n, "d": u.d}
    out.update(verdict.to_json_dict())
    _emit(out, fmt)


@main.command("fidelity")
@_gate_option
@click.option("--k", required=True, type=int, help="hierarchy level of the comparison set")
@_d_option
@_format_option
@_dump_option
def cmd_fidelity(gate, k, d, fmt, dump_matrix):
    """Best squared overlap of a gate with an enumerated level."""
    u = _resolve_gate(gate, d)
    if dump_matrix:
        save_matrix(dump_matrix, u)
    try:
        level_set = enumerate_level(u.n, u.d, k)
    except OutOfScopeError as exc:
        _fail(EXIT_OUT_OF_SCOPE, str(exc))
    result = fidelity(u, level_set)
    _emit(
        {
            "gate": gate,
            "n": u.n,
            "d": u.d,
            "k": k,
            "value": result.value,
            "completeness": result.completeness,
            "exact": result.is_exact,
        },
        fmt,
    )


@main.command("enumerate")
@click.option("--n", required=True, type=int)
@click.option("--d", "d", required=True, type=int)
@click.option("--k", required=True, type=int)
@click.option("--cache-dir", default=None, help="level-set cache directory (env PUNIF_CACHE_DIR)")
@_format_option
def cmd_enumerate(n, d, k, cache_dir, fmt):
    """Enumerate a hierarchy level and report its size."""
    config = RunConfig.resolve(None, fmt, cache_dir)
    try:
        level_set = enumerate_level(n, d, k, cache_dir=config.cache_dir)
    except OutOfScopeError as exc:
        _fail(EXIT_OUT_OF_SCOPE, str(exc))
    _emit(
        {
            "n": n,
            "d": d,
            "k": k,
            "count": len(level_set),
            "completeness": level_set.completeness,
            "construction": level_set.construction,
        },
        config.fmt,
    )


@main.command("test-c3")
@_gate_option
@click.option("--epsilon", type=float, default=0.02, show_default=True)
@click.option("--repetitions", type=int, default=None, help="override the Hoeffding count")
@_d_option
@_seed_option
@_format_option
@_dump_option
def cmd_test_c3(gate, epsilon, repetitions, d, seed, fmt, dump_matrix):
    """Run the level-3 tester against a gate."""
    config = RunConfig.resolve(seed, fmt)
    u = _resolve_gate(gate, d)
    if dump_matrix:
        save_matrix(dump_matrix, u)
    try:
        tester_config = TesterConfig(
            epsilon=epsilon, repetitions=repetitions, seed=config.seed
        )
    except ValueError as exc:
        _fail(EXIT_OUT_OF_SCOPE, str(exc))
    o_u, o_uadj = oracle_pair(u)
    report = c3_tester(u.n, u.d, o_u, o_uadj, epsilon, tester_config)
    out = {"gate": gate}
    out.update(report.to_json_dict())
    _emit(out, config.fmt)


@main.command("verify")
@click.argument("suite", default="all")
@_seed_option
@_format_option
def cmd_verify(suite, seed, fmt):
    """Run a named property suite (or 'all'); nonzero exit iff anything fails."""
    config = RunConfig.resolve(seed, fmt)
    started = time.perf_counter()
    try:
        results = run_suites(suite, seed=config.seed or 0)
    except KeyError as exc:
        _fail(EXIT_OUT_OF_SCOPE, str(exc.args[0]))
    failed = [r for r in results if not r.passed]
    if config.fmt == "human":
        for r in results:
            mark = "pass" if r.passed else "FAIL"
            detail = f"  ({r.detail})" if r.detail else ""
            click.echo(f"[{mark}] {r.suite}: {r.name}{detail}")
        click.echo(
            f"{len(results) - len(failed)}/{len(results)} properties hold "
            f"({(time.perf_counter() - started):.1f}s)"
        )
    else:
        _emit(
            {
                "suite": suite,
                "passed": len(results) - len(failed),
                "failed": len(failed),
                "checks": [r.to_json_dict() for r in results],
            },
            config.fmt,
        )
    if failed:
        sys.exit(EXIT_VERIFY_FAILED)


if __name__ == "__main__":
    main()
