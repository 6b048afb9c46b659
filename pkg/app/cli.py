# app/cli.py
"""
Command-line front end.

    python -m app.cli jump enum --variant b --base evens --stage 500
    python -m app.cli ordinal sum "w*2+1" "w+3"
    python -m app.cli ershov eval --witness w.json --n 3 --stage 400
    python -m app.cli construct shoenfield --witness b.json --N 3 --budget 20000 --trace t.jsonl
    python -m app.cli verify --suite ordinals
    python -m app.cli replay t.jsonl

Exit codes: 0 on success, 1 when a check fails, 2 on a usage error.
Results are printed as JSON; ordinals print in their text form.
"""

import logging
import random
import sys
from contextlib import contextmanager
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Sequence

import click
from pydantic import BaseModel, Field, ValidationError, field_validator
from pydantic_core import to_json

from app.core.config import settings
from app.schemas.jump import VARIANTS, JumpViewResponse

logger = logging.getLogger(__name__)


class RunConfig(BaseModel):
    """Flags shared by the subcommands, validated before anything runs."""
    command: str
    steps: int = Field(default_factory=lambda: settings.RUN_BUDGET, gt=0)
    stages: Optional[int] = Field(None, gt=0)
    budgets: List[int] = Field(default_factory=list)
    N: int = Field(1, ge=1)
    witness: Optional[Path] = None
    output: Optional[Path] = None
    seed: int = 0

    @field_validator("budgets")
    @classmethod
    def positive_budgets(cls, v: List[int]) -> List[int]:
        if any(b <= 0 for b in v):
            raise ValueError("budgets must be positive")
        return v

    @field_validator("witness")
    @classmethod
    def witness_exists(cls, v: Optional[Path]) -> Optional[Path]:
        if v is not None and not v.exists():
            raise ValueError(f"witness script {v} does not exist")
        return v


def _config(command: str, **flags) -> RunConfig:
    fields = {k: v for k, v in flags.items() if v is not None}
    try:
        return RunConfig(command=command, **fields)
    except ValidationError as exc:
        message = "; ".join(f"{err['loc'][-1]}: {err['msg']}" for err in exc.errors())
        raise click.UsageError(message) from None


@contextmanager
def _usage_errors() -> Iterator[None]:
    """Domain errors raised while reading flags become usage errors."""
    try:
        yield
    except (ValueError, ArithmeticError) as exc:
        raise click.UsageError(str(exc)) from None


def _dump(payload) -> str:
    """JSON through pydantic; types it cannot infer are written as str()."""
    return to_json(payload, indent=2, serialize_unknown=True).decode()


def _emit(payload) -> None:
    click.echo(_dump(payload))


def _parse_budgets(text: Optional[str]) -> List[int]:
    if not text:
        return []
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise click.UsageError(f"budgets must be comma-separated integers, got {text!r}") from None


def _program(text: str) -> int:
    """A program index, or the name of a corpus program."""
    from app.constructions.strinc import strinc_candidates
    from app.machine.corpus import acceptability_corpus, oracle_corpus

    if text.isdigit():
        return int(text)
    named: Dict[str, int] = {**acceptability_corpus(), **oracle_corpus(), **strinc_candidates()}
    index = named.get(text.lower())
    if index is None:
        raise click.UsageError(f"Unsupported program: {text} (use an index or one of "
                               f"{', '.join(sorted(named))})")
    return index


def _history(w, n: int, stage: int) -> dict:
    from app.ershov.witness import witness_history

    state = witness_history(w, n, stage)
    return {
        "n": n,
        "stage": stage,
        "history": [{"stage": c.stage, "ordinal": str(c.ordinal), "value": c.value}
                    for c in state.history],
        "value": state.current.value if state.current is not None else None,
        "flips": state.flips,
    }


@click.group()
@click.option("--log-level", default=None, help="Overrides LOG_LEVEL.")
def cli(log_level: Optional[str]) -> None:
    """Bounded-jump workbench."""
    logging.basicConfig(level=(log_level or settings.LOG_LEVEL).upper(),
                        format="%(levelname)s %(name)s: %(message)s")


# machine -------------------------------------------------------------------


@cli.group()
def machine() -> None:
    """Run register-machine programs."""


@machine.command("run")
@click.option("--program", "program_text", default=None, help="Program text; ';' separates lines.")
@click.option("--index", default=None, help="Program index or corpus name.")
@click.option("--x", default=0, type=int, show_default=True)
@click.option("--steps", default=None, type=int)
@click.option("--oracle", default="empty", show_default=True, help="Set spec of the oracle.")
def machine_run(program_text: Optional[str], index: Optional[str], x: int, steps: Optional[int],
                oracle: str) -> None:
    """Run one program on one input."""
    from app.machine.instructions import compile_program
    from app.machine.interpreter import run
    from app.machine.program import encode
    from app.oracles.specs import parse_set_spec

    config = _config("machine run", steps=steps)
    if (program_text is None) == (index is None):
        raise click.UsageError("Give exactly one of --program and --index")
    with _usage_errors():
        e = encode(compile_program(program_text.replace(";", "\n"))) if program_text else _program(index)
        outcome = run(e, x, config.steps, parse_set_spec(oracle))
    _emit({"index": e, "status": outcome.status.value, "value": outcome.value,
           "steps": outcome.steps, "use": outcome.use})


# jump ----------------------------------------------------------------------


@cli.group()
def jump() -> None:
    """Stage views of the bounded jumps."""


@jump.command("enum")
@click.option("--variant", type=click.Choice(VARIANTS, case_sensitive=False), default="b",
              show_default=True)
@click.option("--base", default="empty", show_default=True, help="Set spec of A.")
@click.option("--stage", default=None, type=int, help="Step budget s.")
@click.option("--domain", "domain_size", default=None, type=int, help="Decide x < DOMAIN.")
@click.option("--k", default=1, type=int, show_default=True, help="Norm bound for bk.")
@click.option("--sample", default=None, type=int, help="Decide SAMPLE random points of the domain.")
@click.option("--seed", default=None, type=int, help="Seed for --sample.")
def jump_enum(variant: str, base: str, stage: Optional[int], domain_size: Optional[int], k: int,
              sample: Optional[int], seed: Optional[int]) -> None:
    """Print the members and pendings of a jump at stage s."""
    from app.jumps.views import JumpBudget, JumpEnumerator
    from app.oracles.specs import parse_set_spec

    config = _config("jump enum", steps=stage, N=domain_size or settings.VIEW_SPAN, seed=seed)
    domain = list(range(config.N))
    if sample is not None:
        if not 0 < sample <= config.N:
            raise click.UsageError(f"--sample must be in 1..{config.N}")
        domain = sorted(random.Random(config.seed).sample(domain, sample))
    options = {"k": k} if variant.lower() == "bk" else {}
    with _usage_errors():
        enumerator = JumpEnumerator.create(variant, parse_set_spec(base), JumpBudget(config.steps),
                                           **options)
    view = enumerator.view(domain)
    response = JumpViewResponse(variant=view.variant, stage=view.stage, points=view.to_points(),
                                fragile=sorted(view.fragile))
    click.echo(response.model_dump_json(indent=2))


@jump.command("iterate")
@click.option("--n", "depth", default=2, type=int, show_default=True, help="Number of jumps.")
@click.option("--budgets", default=None, help="Comma-separated budgets, outermost first.")
@click.option("--domain", "domain_size", default=16, type=int, show_default=True)
def jump_iterate(depth: int, budgets: Optional[str], domain_size: int) -> None:
    """Stage view of the n-th iterated bounded jump of the empty set."""
    from app.jumps.views import iterate_jump

    config = _config("jump iterate", budgets=_parse_budgets(budgets), N=domain_size)
    with _usage_errors():
        view = iterate_jump(depth, config.budgets or None, range(config.N))
    _emit({"n": depth, "members": sorted(view.members), "fragile": sorted(view.fragile)})


# ordinal -------------------------------------------------------------------


@cli.group()
def ordinal() -> None:
    """Ordinal arithmetic below ω^ω."""


@ordinal.command("sum")
@click.argument("terms", nargs=-1, required=True)
def ordinal_sum(terms: Sequence[str]) -> None:
    """Natural (commutative) sum of the terms."""
    from app.ordinals.cnf import natural_sum, parse_ordinal

    with _usage_errors():
        click.echo(str(natural_sum(parse_ordinal(t) for t in terms)))


@ordinal.command("cmp")
@click.argument("left")
@click.argument("right")
def ordinal_cmp(left: str, right: str) -> None:
    """Print <, = or >."""
    from app.ordinals.cnf import compare, parse_ordinal

    with _usage_errors():
        click.echo(compare(parse_ordinal(left), parse_ordinal(right)).value)


@ordinal.command("rank")
@click.option("--k", default=1, type=int, show_default=True)
@click.option("--l", "level", default=0, type=int, show_default=True)
@click.argument("alphas", nargs=-1)
def ordinal_rank(k: int, level: int, alphas: Sequence[str]) -> None:
    """ω^k·l + α_0 + ... + α_m + u(α_0 + ... + α_m)."""
    from app.ordinals.cnf import parse_ordinal, rank_r

    with _usage_errors():
        click.echo(str(rank_r(k, level, [parse_ordinal(a) for a in alphas])))


# ershov --------------------------------------------------------------------


def _load_script(path: Optional[Path], default):
    from app.ershov.witness import WitnessScript

    if path is None:
        return default()
    with _usage_errors():
        return WitnessScript.load(path)


@cli.group()
def ershov() -> None:
    """α-c.e. witnesses and their transforms."""


@ershov.command("eval")
@click.option("--witness", type=click.Path(path_type=Path), default=None,
              help="Witness script (JSON); a sample ω-c.e. script by default.")
@click.option("--n", "n", default=0, type=int, show_default=True)
@click.option("--stage", default=None, type=int)
def ershov_eval(witness: Optional[Path], n: int, stage: Optional[int]) -> None:
    """Mind-change history of ψ at n up to stage s."""
    from app.suites import omega_script

    config = _config("ershov eval", witness=witness, steps=stage)
    source = _load_script(config.witness, omega_script)
    with _usage_errors():
        payload = _history(source.compile(), n, config.steps)
    payload["limit"] = source.limit(n)
    _emit(payload)


@ershov.command("downward")
@click.option("--witness", type=click.Path(path_type=Path), default=None)
@click.option("--phi", default="query-input", show_default=True, help="Functional Φ.")
@click.option("--f", "bound", default="identity", show_default=True, help="Total bound f.")
@click.option("--k", default=1, type=int, show_default=True)
@click.option("--n", "n", default=0, type=int, show_default=True)
@click.option("--stage", default=None, type=int)
def ershov_downward(witness: Optional[Path], phi: str, bound: str, k: int, n: int,
                    stage: Optional[int]) -> None:
    """χ for A ≤_bT B via (Φ, f), read at n."""
    from app.ershov.transforms import downward_transform
    from app.suites import omega_script

    config = _config("ershov downward", witness=witness, steps=stage)
    source = _load_script(config.witness, omega_script)
    with _usage_errors():
        chi = downward_transform(_program(phi), _program(bound), source.compile(), k)
        _emit(_history(chi, n, config.steps))


@ershov.command("jump")
@click.option("--witness", type=click.Path(path_type=Path), default=None)
@click.option("--k", default=1, type=int, show_default=True)
@click.option("--n", "n", default=0, type=int, show_default=True)
@click.option("--stage", default=None, type=int)
def ershov_jump(witness: Optional[Path], k: int, n: int, stage: Optional[int]) -> None:
    """χ witnessing that A^b is ω^{k+1}-c.e., read at n."""
    from app.ershov.transforms import jump_transform
    from app.suites import omega_script

    config = _config("ershov jump", witness=witness, steps=stage)
    source = _load_script(config.witness, omega_script)
    with _usage_errors():
        chi = jump_transform(source.compile(), k)
        _emit(_history(chi, n, config.steps))


def _reduce_into_jump(source, k: int, n: int, budget: int) -> None:
    from app.ershov.reductions import inductive_reduce
    from app.ershov.witness import UnresolvedWitnessError
    from app.jumps.views import nested_jump

    with _usage_errors():
        reduction = inductive_reduce(source.compile(), k, budget)
    try:
        f = reduction.f(n)
    except UnresolvedWitnessError as exc:
        raise click.ClickException(str(exc)) from None
    member = nested_jump(k, [budget] * k, hints=reduction.hints([n])).member(f) is not None
    expected = source.limit(n)
    _emit({"n": n, "k": k, "f": f, "member": member, "limit": expected})
    if expected is not None and member != bool(expected):
        logger.warning("f(%d) membership %s disagrees with the limit %s", n, member, expected)
        sys.exit(1)


@ershov.command("erbase")
@click.option("--witness", type=click.Path(path_type=Path), default=None)
@click.option("--n", "n", default=0, type=int, show_default=True)
@click.option("--budget", default=5000, type=int, show_default=True)
def ershov_erbase(witness: Optional[Path], n: int, budget: int) -> None:
    """f(n) for an ω²-c.e. set and its membership in the double jump."""
    from app.suites import erbase_script

    config = _config("ershov erbase", witness=witness, steps=budget)
    _reduce_into_jump(_load_script(config.witness, erbase_script), 2, n, config.steps)


@ershov.command("inductive")
@click.option("--witness", type=click.Path(path_type=Path), default=None)
@click.option("--k", default=3, type=int, show_default=True)
@click.option("--n", "n", default=0, type=int, show_default=True)
@click.option("--budget", default=5000, type=int, show_default=True)
def ershov_inductive(witness: Optional[Path], k: int, n: int, budget: int) -> None:
    """f(n) for an ω^k-c.e. set and its membership in the k-th jump."""
    from app.suites import inductive_script

    config = _config("ershov inductive", witness=witness, steps=budget)
    _reduce_into_jump(_load_script(config.witness, inductive_script), k, n, config.steps)


# construct -----------------------------------------------------------------


@cli.group()
def construct() -> None:
    """Run a construction and optionally save its trace."""


def _save_trace(trace, path: Optional[Path]) -> None:
    if path is not None:
        trace.save(path)
        logger.info("trace written to %s", path)


@construct.command("strinc")
@click.option("--gamma", default="constant-0", show_default=True, help="Functional Γ.")
@click.option("--g", "bound", default=None, help="Total bound g; x + 1 by default.")
@click.option("--base", default="empty", show_default=True)
@click.option("--budget", default=None, type=int)
@click.option("--trace", "trace_path", type=click.Path(path_type=Path), default=None)
def construct_strinc(gamma: str, bound: Optional[str], base: str, budget: Optional[int],
                     trace_path: Optional[Path]) -> None:
    """Refute (Γ, g) as a bT reduction of A^b to A."""
    from app.constructions.strinc import diagonalize_strinc, successor_bound
    from app.oracles.specs import parse_set_spec

    config = _config("construct strinc", steps=budget, output=trace_path)
    with _usage_errors():
        g = successor_bound() if bound is None else _program(bound)
        report = diagonalize_strinc(_program(gamma), g, parse_set_spec(base), config.steps, base)
    _save_trace(report.trace, config.output)
    _emit({"gamma": report.gamma, "g": report.g, "m": report.m, "bound": report.bound,
           "branch": report.branch.value, "refuted": report.refuted, "evidence": report.evidence})
    if not report.refuted:
        sys.exit(1)


@construct.command("shoenfield")
@click.option("--witness", type=click.Path(path_type=Path), default=None,
              help="ω²-c.e. witness script of B; a sample script by default.")
@click.option("--N", "size", default=3, type=int, show_default=True,
              help="Requirements n < N; g grows about sixfold in bits per n.")
@click.option("--budget", default=None, type=int, help="Stages; CONSTRUCTION_BUDGET by default.")
@click.option("--window", default=None, type=int)
@click.option("--trace", "trace_path", type=click.Path(path_type=Path), default=None)
def construct_shoenfield(witness: Optional[Path], size: int, budget: Optional[int],
                         window: Optional[int], trace_path: Optional[Path]) -> None:
    """Build A with A ω-c.e. and B ≤_1 A^b."""
    from app.constructions.shoenfield import PlanExhaustedError, shoenfield_inversion
    from app.ershov.witness import UnresolvedWitnessError
    from app.suites import shoenfield_script

    config = _config("construct shoenfield", witness=witness, N=size, stages=budget,
                     output=trace_path)
    source = _load_script(config.witness, lambda: shoenfield_script(config.N))
    try:
        with _usage_errors():
            w = source.compile()
        result = shoenfield_inversion(w, config.N, config.stages, window)
    except (UnresolvedWitnessError, PlanExhaustedError) as exc:
        raise click.ClickException(str(exc)) from None
    except ValueError as exc:
        raise click.UsageError(str(exc)) from None
    _save_trace(result.trace, config.output)
    members = result.jump_members()
    summary = {
        "N": config.N,
        "A": result.approx.to_json(),
        "h_bits": [h.bit_length() for h in result.plan.h],
        "g_bits": [g.bit_length() for g in result.plan.g],
        "final_levels": result.final_levels(),
        "definition_counts": result.definition_counts(),
        "change_violations": result.change_violations(),
        "count_violations": {n: {"definitions": c, "h_bits": h.bit_length()}
                             for n, (c, h) in result.count_violations().items()},
        "jump_members": members,
        "limits": {n: source.limit(n) for n in range(config.N)},
    }
    _emit(summary)
    mismatched = [n for n in range(config.N)
                  if source.limit(n) is not None and members[n] != bool(source.limit(n))]
    if summary["change_violations"] or summary["count_violations"] or mismatched:
        sys.exit(1)


@construct.command("ttsep")
@click.option("--N", "size", default=3, type=int, show_default=True)
@click.option("--budget", default=None, type=int, help="Stages; CONSTRUCTION_BUDGET by default.")
@click.option("--opponent", "opponents", multiple=True,
              help="FUNCTIONAL,BOUND index pair; repeat once per requirement.")
@click.option("--trace", "trace_path", type=click.Path(path_type=Path), default=None)
def construct_ttsep(size: int, budget: Optional[int], opponents: Sequence[str],
                    trace_path: Optional[Path]) -> None:
    """Build a c.e. A with A^b not bT-below A_tt."""
    from app.constructions.ttsep import RequirementStatus, tt_separation

    config = _config("construct ttsep", N=size, stages=budget, output=trace_path)
    pairs = []
    for text in opponents:
        parts = text.split(",")
        if len(parts) != 2:
            raise click.UsageError(f"--opponent needs FUNCTIONAL,BOUND, got {text!r}")
        pairs.append((_program(parts[0].strip()), _program(parts[1].strip())))
    with _usage_errors():
        result = tt_separation(config.N, config.stages, pairs)
    _save_trace(result.trace, config.output)
    statuses = {n: result.requirement_status(n) for n in range(config.N)}
    violations = result.double_action_violations()
    _emit({
        "N": config.N,
        "A": result.approx.to_json(),
        "is_ce": result.is_ce(),
        "markers": result.markers,
        "requirements": {n: s.value for n, s in statuses.items()},
        "attention": result.attention_counts(),
        "double_action_violations": [a.stage for a in violations],
    })
    if not result.is_ce() or violations or RequirementStatus.AGREE in statuses.values():
        sys.exit(1)


# verify / replay -----------------------------------------------------------


@cli.command()
@click.option("--suite", default="all", show_default=True, help="Suite name or 'all'.")
@click.option("--budget", default=None, type=int)
@click.option("--N", "size", default=None, type=int)
@click.option("--output", type=click.Path(path_type=Path), default=None,
              help="Write the full JSON report here.")
def verify(suite: str, budget: Optional[int], size: Optional[int], output: Optional[Path]) -> None:
    """Run verification suites; exit 1 if any property fails."""
    from app.suites import run_suites

    config = _config("verify", steps=budget, N=size, output=output)
    options = {"budget": budget, "N": config.N if size is not None else None}
    try:
        reports = run_suites(suite, **options)
    except ValueError as exc:
        if str(exc).startswith("Unsupported suite"):
            raise click.UsageError(str(exc)) from None
        raise
    failed = []
    for report in reports:
        counts = report.counts()
        click.echo(f"{report.suite}: {counts['passed']} passed, {counts['failed']} failed")
        for result in report.results:
            mark = "ok" if result.passed else "FAIL"
            click.echo(f"  [{mark}] {result.name} ({result.checked} checked, "
                       f"{len(result.unresolved)} unresolved)")
            if not result.passed:
                failed.append({"suite": report.suite, **result.model_dump()})
    if config.output is not None:
        config.output.write_text(_dump(reports))
    if failed:
        _emit({"failures": failed})
        sys.exit(1)


@cli.command("replay")
@click.argument("trace_path", type=click.Path(exists=True, dir_okay=False, path_type=Path))
def replay_command(trace_path: Path) -> None:
    """Re-run a saved trace and compare it bit for bit."""
    from app.constructions.trace import ConstructionTrace, CorruptedTraceError, replay

    try:
        trace = ConstructionTrace.load(trace_path)
        report = replay(trace)
    except CorruptedTraceError as exc:
        _emit({"status": "corrupted-trace", "first_divergent_stage": None, "error": str(exc)})
        sys.exit(1)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from None
    _emit(report.to_json())
    if not report.passed:
        sys.exit(1)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run the CLI and return its exit code instead of exiting."""
    try:
        code = cli.main(args=list(argv) if argv is not None else None, prog_name="app.cli",
                        standalone_mode=False)
    except click.ClickException as exc:
        exc.show()
        return exc.exit_code
    except click.Abort:
        return 1
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    return code if isinstance(code, int) else 0


if __name__ == "__main__":
    sys.exit(main())
