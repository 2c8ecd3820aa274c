import os
from typing import Dict, List, Optional, Sequence

import click
from rich.console import Console

from .config import load_limits
from .debug import get_logger, reset_logger
from .decomposition import (
    EXCLUDED_FACTORS,
    ProductShift,
    admissible_factorization,
    check_decomposition_equivariance,
    decompose,
    default_sections,
    is_member,
    make_section,
    reconstruct,
)
from .errors import DomainError, LatinViolation, NoIdempotentSquare, QuasidynError
from .interval import (
    conjugacy_holds,
    endomorphism_holds,
    phi,
    phi_inv,
    random_admissible,
    try_bullet,
)
from .oracle import (
    count_latin_squares,
    count_latin_squares_by_rows,
    enumerate_automorphic,
    make_avector,
    search_idempotent,
    sum_contradiction_report,
    verify_lemma,
)
from .parser import (
    parse_bases,
    parse_components,
    parse_digits,
    parse_int_list,
    parse_rational,
    read_square,
    write_square,
)
from .quasigroup import (
    FiniteQuasigroup,
    LatinSquare,
    build_cyclic_group,
    build_idempotent_quasigroup,
    build_translation_quasigroup,
    check_latin,
    is_associative,
    is_automorphism,
    is_commutative,
    is_idempotent,
    quasigroup_from_square,
    translation,
)
from .report import (
    Report,
    fraction_to_json,
    point_to_json,
    quasigroup_to_json,
    render_text,
    rotor_point_to_json,
    square_to_json,
)
from .shift import (
    PeriodicPoint,
    RotorShiftSystem,
    check_automorphism_exhaustive,
    check_automorphism_random,
    entropy,
    ergodic_period,
    op_canonical,
    system_map,
)
from .utils import Stopwatch, split_rng
from .version import __version__

log = get_logger("cli")


class _Group(click.Group):
    """Top-level group turning library errors into usage errors (exit code 2)."""

    def invoke(self, ctx: click.Context):
        try:
            return super().invoke(ctx)
        except QuasidynError as exc:
            log.debug("usage error: %s", exc)
            raise click.UsageError(str(exc), ctx=ctx) from exc


def _emit(ctx: click.Context, report: Report, squares: Optional[List[LatinSquare]] = None) -> None:
    if ctx.obj["format"] == "json":
        click.echo(report.dumps())
    else:
        Console().print(render_text(report, squares))
    log.debug("%s: passed=%s elapsed_ms=%.1f", report.command, report.passed, report.elapsed_ms)
    if not report.passed:
        ctx.exit(1)


@click.group(cls=_Group)
@click.option(
    "--format",
    "fmt",
    type=click.Choice(["text", "json"], case_sensitive=False),
    default="text",
    show_default=True,
    help="Human-readable tables or a JSON report (schema 1).",
)
@click.option(
    "--debug",
    is_flag=True,
    default=False,
    help="Enable verbose debug logging to quasidyn_debug.log",
    show_default=True,
)
@click.version_option(__version__, prog_name="quasidyn")
@click.pass_context
def main(ctx: click.Context, fmt: str, debug: bool) -> None:
    """
    Quasigroup operations on shift spaces: constructions, decompositions and
    brute-force oracles, all checked exactly.
    """
    global log
    if debug:
        os.environ["QUASIDYN_DEBUG"] = "1"
        reset_logger()
        log = get_logger("cli")
        Console(stderr=True).print("[dim]Debug logging enabled -> quasidyn_debug.log[/dim]")
    ctx.obj = {"format": fmt.lower(), "limits": load_limits()}
    log.debug("start: command=%s format=%s", ctx.invoked_subcommand, fmt)


# -- latin -------------------------------------------------------------------


@main.group()
def latin() -> None:
    """Build and verify finite quasigroups (Latin squares)."""


_out_option = click.option(
    "--out",
    type=click.Path(dir_okay=False, writable=True),
    default=None,
    help="Also write the table to FILE as plain text.",
)


@latin.command("build-translation")
@click.argument("n", type=int)
@_out_option
@click.pass_context
def latin_build_translation(ctx: click.Context, n: int, out: Optional[str]) -> None:
    """Odd order N: x*y = (N+1)/2 * (x+y) mod N, with x -> x+1 an automorphism."""
    with Stopwatch() as sw:
        q = build_translation_quasigroup(n)
        checks = {
            "latin": check_latin(q.table) is None,
            "idempotent": is_idempotent(q.square),
            "translation_automorphism": is_automorphism(q, translation(n)),
        }
        outputs: Dict[str, object] = {"square": quasigroup_to_json(q)}
        if out:
            write_square(out, q.square)
            outputs["written"] = out
    report = Report("latin build-translation", {"n": n}, outputs, checks, elapsed_ms=sw.elapsed_ms)
    _emit(ctx, report, [q.square])


@latin.command("build-idempotent")
@click.argument("n", type=int)
@_out_option
@click.pass_context
def latin_build_idempotent(ctx: click.Context, n: int, out: Optional[str]) -> None:
    """Idempotent quasigroup of order N (none exists for N = 2)."""
    squares = []
    with Stopwatch() as sw:
        outputs: Dict[str, object] = {}
        try:
            q = build_idempotent_quasigroup(n)
        except NoIdempotentSquare as exc:
            outputs["exists"] = False
            outputs["certificate"] = exc.certificate._asdict()
            checks = {"exists": False}
        else:
            squares.append(q.square)
            outputs["exists"] = True
            outputs["square"] = quasigroup_to_json(q)
            checks = {"latin": check_latin(q.table) is None, "idempotent": is_idempotent(q.square)}
            if out:
                write_square(out, q.square)
                outputs["written"] = out
        if n in EXCLUDED_FACTORS:
            outputs["note"] = f"product shifts refuse factor size {n}"
    _emit(ctx, Report("latin build-idempotent", {"n": n}, outputs, checks, elapsed_ms=sw.elapsed_ms), squares)


@latin.command("verify")
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.pass_context
def latin_verify(ctx: click.Context, path: str) -> None:
    """Check a table file (n lines of n integers)."""
    squares = []
    with Stopwatch() as sw:
        try:
            square = read_square(path)
        except LatinViolation as exc:
            outputs = {"axis": exc.axis, "index": exc.index, "error": str(exc)}
            checks = {"latin": False}
        else:
            q = quasigroup_from_square(square)
            squares.append(square)
            outputs = {
                "square": square_to_json(square),
                "idempotent": q.is_idempotent,
                "commutative": is_commutative(square),
                "associative": is_associative(square),
                "translation_automorphism": q.automorphic_translation is not None,
            }
            checks = {"latin": True}
    _emit(ctx, Report("latin verify", {"path": path}, outputs, checks, elapsed_ms=sw.elapsed_ms), squares)


# -- oracle ------------------------------------------------------------------


@main.group()
def oracle() -> None:
    """Brute-force certifiers."""


@oracle.command("automorphic")
@click.argument("n", type=int)
@click.option("--list", "show_list", is_flag=True, default=False, help="Include every Latin table found.")
@click.option("--workers", type=int, default=None, help="Processes for the enumeration (default from QUASIDYN_WORKERS).")
@click.pass_context
def oracle_automorphic(ctx: click.Context, n: int, show_list: bool, workers: Optional[int]) -> None:
    """Count Latin tables among all operations with x -> x+1 as an automorphism."""
    limits = ctx.obj["limits"]
    with Stopwatch() as sw:
        result = enumerate_automorphic(
            n,
            collect=show_list or n % 2 == 1,
            workers=workers or limits.workers,
            limit=limits.max_automorphic_order,
        )
        outputs: Dict[str, object] = {"count": result.count, "candidates": result.candidates}
        checks = {"count_zero_iff_even": (result.count == 0) == (n % 2 == 0)}
        if n % 2 == 1:
            checks["translation_square_listed"] = build_translation_quasigroup(n).table in result.tables
        if show_list:
            outputs["tables"] = [[list(row) for row in t] for t in result.tables]
    _emit(ctx, Report("oracle automorphic", {"n": n}, outputs, checks, elapsed_ms=sw.elapsed_ms))


@oracle.command("latin-count")
@click.argument("n", type=int)
@click.pass_context
def oracle_latin_count(ctx: click.Context, n: int) -> None:
    """Number of N x N Latin squares, cross-checked by a second counter for N <= 4."""
    limits = ctx.obj["limits"]
    with Stopwatch() as sw:
        count = count_latin_squares(n, limit=limits.max_count_order)
        outputs: Dict[str, object] = {"count": count}
        checks = {}
        if n <= 4:
            by_rows = count_latin_squares_by_rows(n, limit=limits.max_count_order)
            outputs["count_by_rows"] = by_rows
            checks["methods_agree"] = by_rows == count
    _emit(ctx, Report("oracle latin-count", {"n": n}, outputs, checks, elapsed_ms=sw.elapsed_ms))


@oracle.command("idempotent")
@click.argument("n", type=int)
@click.pass_context
def oracle_idempotent(ctx: click.Context, n: int) -> None:
    """Search for an idempotent Latin square of order N."""
    limits = ctx.obj["limits"]
    squares = []
    with Stopwatch() as sw:
        found = search_idempotent(n, limit=limits.max_idempotent_search_order)
        if isinstance(found, LatinSquare):
            squares.append(found)
            outputs = {"exists": True, "square": square_to_json(found)}
            checks = {"latin": check_latin(found.table) is None, "idempotent": is_idempotent(found)}
        else:
            outputs = {"exists": False, "certificate": found._asdict()}
            checks = {"search_exhausted": True}
    _emit(ctx, Report("oracle idempotent", {"n": n}, outputs, checks, elapsed_ms=sw.elapsed_ms), squares)


@oracle.command("sums")
@click.argument("n", type=int)
@click.option("--a", "a_text", default=None, help="Comma-separated a-vector; random distinct vectors otherwise.")
@click.option("--samples", type=int, default=20, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.pass_context
def oracle_sums(ctx: click.Context, n: int, a_text: Optional[str], samples: int, seed: int) -> None:
    """Row and column sums of automorphic tables of even order N."""
    with Stopwatch() as sw:
        if a_text:
            vectors = [make_avector(parse_int_list(a_text))]
        else:
            if samples < 1:
                raise DomainError(f"--samples must be at least 1, got {samples}")
            vectors = []
            for i in range(samples):
                entries = list(range(n))
                split_rng(seed, i).shuffle(entries)
                vectors.append(make_avector(entries))
        results = [sum_contradiction_report(n, a) for a in vectors]
        outputs = {
            "samples": [
                {"a": list(a.entries), "row_sum": r.row_sum, "col_sum": r.col_sum} for a, r in zip(vectors, results)
            ]
        }
        checks = {
            "row_sum_is_half_n": all(r.row_sums_constant and r.row_sum == n // 2 for r in results),
            "col_sum_is_zero": all(r.col_sums_constant and r.col_sum == 0 for r in results),
            "contradiction": all(r.contradiction for r in results),
        }
    report = Report(
        "oracle sums", {"n": n}, outputs, checks, seed=None if a_text else seed, elapsed_ms=sw.elapsed_ms
    )
    _emit(ctx, report)


@oracle.command("lemma")
@click.option("--max-n", type=int, default=7, show_default=True)
@click.pass_context
def oracle_lemma(ctx: click.Context, max_n: int) -> None:
    """Exhaustively confirm: a Latin automorphic table exists iff n is odd, for n <= MAX_N."""
    limits = ctx.obj["limits"]
    if max_n > limits.max_automorphic_order:
        raise DomainError(f"--max-n must be at most {limits.max_automorphic_order}")
    with Stopwatch() as sw:
        rows = verify_lemma(max_n, workers=limits.workers)
        outputs = {"counts": {str(r.n): r.count for r in rows}}
        checks = {f"n={r.n}": r.holds for r in rows}
    _emit(ctx, Report("oracle lemma", {"max_n": max_n}, outputs, checks, elapsed_ms=sw.elapsed_ms))


# -- shift -------------------------------------------------------------------


def _system(alphabet: int, rotor_size: int, square: Optional[str]) -> RotorShiftSystem:
    base_op = quasigroup_from_square(read_square(square)) if square else None
    return RotorShiftSystem.for_entropy(alphabet, rotor_size, base_op)


_system_options = [
    click.option("--alphabet", "-N", type=int, default=3, show_default=True, help="Alphabet size N of the shift."),
    click.option("--rotor-size", "-B", type=int, default=3, show_default=True, help="Odd rotor size B (ergodic period)."),
    click.option("--square", type=click.Path(exists=True, dir_okay=False), default=None, help="Base operation table file."),
]


def _with_system_options(f):
    for option in reversed(_system_options):
        f = option(f)
    return f


@main.group()
def shift() -> None:
    """The rotor system Y = {0..N-1}^Z x Z_B and its canonical operation."""


@shift.command("op")
@click.argument("u_digits")
@click.argument("v_digits")
@_with_system_options
@click.option("--rotor-u", type=int, default=0, show_default=True)
@click.option("--rotor-v", type=int, default=0, show_default=True)
@click.pass_context
def shift_op(
    ctx: click.Context,
    u_digits: str,
    v_digits: str,
    alphabet: int,
    rotor_size: int,
    square: Optional[str],
    rotor_u: int,
    rotor_v: int,
) -> None:
    """Multiply two periodic rotor points, e.g. 'shift op 012 111 --rotor-u 1 --rotor-v 2'."""
    with Stopwatch() as sw:
        system = _system(alphabet, rotor_size, square)
        u = system.point(parse_digits(u_digits), rotor_u)
        v = system.point(parse_digits(v_digits), rotor_v)
        w = op_canonical(system, u, v)
        shifted = system_map(system, w)
        outputs = {"product": rotor_point_to_json(w), "shifted_product": rotor_point_to_json(shifted)}
        checks = {"automorphism": shifted == op_canonical(system, system_map(system, u), system_map(system, v))}
    inputs = {"u": rotor_point_to_json(u), "v": rotor_point_to_json(v), "N": alphabet, "B": rotor_size}
    _emit(ctx, Report("shift op", inputs, outputs, checks, elapsed_ms=sw.elapsed_ms))


@shift.command("check-automorphism")
@_with_system_options
@click.option("--trials", type=int, default=1000, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--max-period", type=int, default=None, help="Largest sampled period (default QUASIDYN_PERIOD_BOUND, 8).")
@click.option("--exhaustive-period", type=int, default=0, show_default=True, help="Also check every pair up to this period.")
@click.pass_context
def shift_check_automorphism(
    ctx: click.Context,
    alphabet: int,
    rotor_size: int,
    square: Optional[str],
    trials: int,
    seed: int,
    max_period: Optional[int],
    exhaustive_period: int,
) -> None:
    """Check S(u*v) = S(u)*S(v) on seeded random pairs of periodic points."""
    with Stopwatch() as sw:
        system = _system(alphabet, rotor_size, square)
        if exhaustive_period < 0:
            raise DomainError(f"--exhaustive-period must be at least 0, got {exhaustive_period}")
        if max_period is None:
            max_period = ctx.obj["limits"].period_bound
        result = check_automorphism_random(system, trials, seed, max_period)
        outputs: Dict[str, object] = {
            "pairs": result.pairs,
            "failures": result.failures,
            "max_period": result.max_period,
            "counterexample": [rotor_point_to_json(p) for p in result.counterexample] if result.counterexample else None,
        }
        checks = {"random_pairs": result.passed}
        if exhaustive_period:
            full = check_automorphism_exhaustive(system, exhaustive_period)
            outputs["exhaustive_pairs"] = full.pairs
            outputs["exhaustive_failures"] = full.failures
            checks["exhaustive_pairs"] = full.passed
    inputs = {"N": alphabet, "B": rotor_size, "trials": trials}
    _emit(ctx, Report("shift check-automorphism", inputs, outputs, checks, seed=seed, elapsed_ms=sw.elapsed_ms))


@shift.command("entropy")
@_with_system_options
@click.pass_context
def shift_entropy(ctx: click.Context, alphabet: int, rotor_size: int, square: Optional[str]) -> None:
    """Topological entropy (nats) and ergodic period of the rotor system."""
    with Stopwatch() as sw:
        system = _system(alphabet, rotor_size, square)
        outputs = {
            "entropy": entropy(system),
            "ergodic_period": ergodic_period(system),
            "ergodically_aperiodic": ergodic_period(system) == 1,
        }
    _emit(ctx, Report("shift entropy", {"N": alphabet, "B": rotor_size}, outputs, {}, elapsed_ms=sw.elapsed_ms))


# -- decomposition -----------------------------------------------------------


@main.command("factorize")
@click.argument("n", type=int)
@click.option("--nontrivial", is_flag=True, default=False, help="Only factorizations with at least two factors.")
@click.pass_context
def factorize(ctx: click.Context, n: int, nontrivial: bool) -> None:
    """Factorizations of N into factors avoiding 2 and 6."""
    with Stopwatch() as sw:
        found = admissible_factorization(n, require_nontrivial=nontrivial)
    outputs = {"factorizations": [list(f) for f in found]}
    _emit(ctx, Report("factorize", {"n": n, "nontrivial": nontrivial}, outputs, {}, elapsed_ms=sw.elapsed_ms))


def _sections(Y: ProductShift, bases_text: Optional[str]):
    if not bases_text:
        return default_sections(Y)
    sections = []
    for k, entry in enumerate(parse_bases(bases_text, Y.q)):
        bases = {}
        for j, digits in entry.items():
            if not 0 <= j < Y.q:
                raise DomainError(f"base for section {k} names coordinate {j}, outside 0..{Y.q - 1}")
            bases[j] = PeriodicPoint(Y.alphabets[j], digits)
        sections.append(make_section(Y, k, bases))
    return sections


@main.command("decompose")
@click.option("--factors", required=True, help="Comma-separated alphabet sizes, e.g. 3,5.")
@click.option("--point", "point_text", required=True, help='JSON list of component digit strings, e.g. ["01","2"].')
@click.option("--bases", "bases_text", default=None, help='JSON list of {coordinate: digits} objects, one per section.')
@click.pass_context
def decompose_command(ctx: click.Context, factors: str, point_text: str, bases_text: Optional[str]) -> None:
    """Split a product point into one part per section and check the reassembly."""
    with Stopwatch() as sw:
        Y = ProductShift.from_sizes(parse_int_list(factors), strict=True)
        x = Y.point(*parse_components(point_text, Y.q))
        sections = _sections(Y, bases_text)
        parts = decompose(Y, x, sections)
        outputs = {"parts": [[point_to_json(c) for c in p.components] for p in parts]}
        checks = {
            "reconstruction": reconstruct(Y, parts) == x,
            "parts_in_sections": all(is_member(s, p) for s, p in zip(sections, parts)),
            "shift_equivariance": check_decomposition_equivariance(Y, x, sections),
        }
    inputs = {"factors": list(Y.alphabets), "point": [point_to_json(c) for c in x.components]}
    _emit(ctx, Report("decompose", inputs, outputs, checks, elapsed_ms=sw.elapsed_ms))


# -- interval ----------------------------------------------------------------


@main.group()
def interval() -> None:
    """The weak operation pulled back to x -> Mx mod 1 on [0, 1)."""


def _interval_op(name: str, base: int, square: Optional[str]) -> FiniteQuasigroup:
    if name == "sum":
        return build_cyclic_group(base)
    if name == "translation":
        return build_translation_quasigroup(base)
    if not square:
        raise DomainError("--op file needs --square")
    q = quasigroup_from_square(read_square(square))
    if q.order != base:
        raise DomainError(f"square has order {q.order}, base is {base}")
    return q


@interval.command("demo")
@click.option("--base", type=int, default=10, show_default=True)
@click.option("--x", "x_text", required=True, help="Rational a/b in [0, 1).")
@click.option("--y", "y_text", required=True, help="Rational c/d in [0, 1).")
@click.option("--op", "op_name", type=click.Choice(["sum", "translation", "file"]), default="sum", show_default=True)
@click.option("--square", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--trials", type=int, default=0, show_default=True, help="Extra seeded random pairs to check.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.pass_context
def interval_demo(
    ctx: click.Context,
    base: int,
    x_text: str,
    y_text: str,
    op_name: str,
    square: Optional[str],
    trials: int,
    seed: int,
) -> None:
    """Digits of x and y, their weak product, and the endomorphism check."""
    with Stopwatch() as sw:
        base_op = _interval_op(op_name, base, square)
        x, y = parse_rational(x_text), parse_rational(y_text)
        dx, dy = phi(x, base), phi(y, base)
        product = try_bullet(dx, dy, base_op)
        outputs: Dict[str, object] = {
            "x_digits": str(dx),
            "y_digits": str(dy),
            "product_defined": product is not None,
            "product_digits": str(product) if product is not None else None,
            "product_value": fraction_to_json(phi_inv(product)) if product is not None else None,
        }
        checks = {
            "round_trip": phi_inv(dx) == x and phi_inv(dy) == y,
            "conjugacy": conjugacy_holds(x, base) and conjugacy_holds(y, base),
        }
        if product is not None:
            checks["endomorphism"] = endomorphism_holds(dx, dy, base_op) is not False
        if trials:
            undefined = failures = 0
            for i in range(trials):
                rng = split_rng(seed, i)
                a, b = random_admissible(rng, base), random_admissible(rng, base)
                da, db = phi(a, base), phi(b, base)
                if phi_inv(da) != a or phi_inv(db) != b:
                    failures += 1
                    continue
                holds = endomorphism_holds(da, db, base_op)
                if holds is None:
                    undefined += 1
                elif not holds:
                    failures += 1
            outputs["random"] = {"pairs": trials, "undefined": undefined, "failures": failures}
            checks["random_pairs"] = failures == 0
    inputs = {"base": base, "x": fraction_to_json(x), "y": fraction_to_json(y), "op": op_name}
    _emit(ctx, Report("interval demo", inputs, outputs, checks, seed=seed if trials else None, elapsed_ms=sw.elapsed_ms))


def run(argv: Sequence[str]) -> int:
    """Run the CLI in-process and return its exit code instead of exiting."""
    try:
        rv = main.main(args=list(argv), prog_name="quasidyn", standalone_mode=False)
    except click.ClickException as exc:
        exc.show()
        return exc.exit_code
    except click.exceptions.Abort:
        return 1
    return rv if isinstance(rv, int) else 0


if __name__ == "__main__":
    main()
