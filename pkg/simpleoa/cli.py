"""
CLI interface for simpleoa
Entry point for all oa commands
"""

import json
import logging

import click

from simpleoa import constructions
from simpleoa.arrays import parse_oa, serialize_oa
from simpleoa.boolean import parse_truth_table
from simpleoa.codes import parse_generator
from simpleoa.constants import (
    DEFAULT_NODE_BUDGET,
    DEFAULT_WORKERS,
    EXIT_INCONCLUSIVE,
    EXIT_USAGE,
    EXIT_VERIFICATION_FAILED,
    SUBSET_VERIFY_LIMIT,
    TABLE_SEARCH_BUDGET,
)
from simpleoa.errors import (
    FormatError,
    InconclusiveSearch,
    OAError,
    ParameterError,
    VerificationError,
)
from simpleoa.reports import (
    analyze_report,
    bound_command_report,
    construct_report,
    fourier_report,
    search_report,
    table_report,
    verify_report,
)
from simpleoa.strength import strength_of


def _exit_code(error: OAError) -> int:
    if isinstance(error, InconclusiveSearch):
        return EXIT_INCONCLUSIVE
    if isinstance(error, VerificationError):
        return EXIT_VERIFICATION_FAILED
    if isinstance(error, (FormatError, ParameterError)):
        return EXIT_USAGE
    return EXIT_VERIFICATION_FAILED


class OAGroup(click.Group):
    """Command group that turns library errors into a single ✗ line and an exit code"""

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except OAError as e:
            click.echo(click.style("✗ ", fg="red") + str(e), err=True)
            raise SystemExit(_exit_code(e))


def _emit(report, details=()):
    """Print a report as JSON or as the ✓/✗ summary plus indented detail lines"""
    ctx = click.get_current_context()
    if ctx.obj.get("json"):
        click.echo(json.dumps(report.to_json(), indent=2))
    elif report.success:
        click.echo(click.style("✓ ", fg="green") + report.message)
        for key in details:
            if key in report.results:
                click.echo(f"  {key}: {click.style(str(report.results[key]), fg='cyan')}")
    else:
        click.echo(click.style("✗ ", fg="red") + report.message, err=True)
    if not report.success:
        raise SystemExit(EXIT_VERIFICATION_FAILED)


@click.group(cls=OAGroup)
@click.option("--json", "as_json", is_flag=True, help="Machine-readable JSON output")
@click.option("-v", "--verbose", count=True, help="Log progress (-v) or every step (-vv) to stderr")
@click.pass_context
def cli(ctx, as_json, verbose):
    """simpleoa - orthogonal arrays, their bounds, and correlation-immune functions"""
    ctx.ensure_object(dict)
    ctx.obj["json"] = as_json
    level = {0: logging.WARNING, 1: logging.INFO}.get(verbose, logging.DEBUG)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")


@cli.command(name="verify")
@click.argument("file", type=click.File("r", encoding="utf-8"))
@click.option("--t", "t", type=int, default=None, help="Strength to check (default: report the largest)")
def cmd_verify(file, t):
    """Check the strength of an array file (- for stdin)"""
    A = parse_oa(file.read())
    _emit(verify_report(A, t), ("lambda_", "max_strength", "simple", "max_multiplicity"))


@cli.command(name="analyze")
@click.argument("file", type=click.File("r", encoding="utf-8"))
@click.option("--u", "u", type=int, required=True, help="Half the strength: the array must have strength 2u")
def cmd_analyze(file, u):
    """Apply the multiplicity theorem to an array of strength 2u"""
    A = parse_oa(file.read())
    _emit(analyze_report(A, u), ("rao", "rho_max", "rho_max_bound", "simple", "rao_tight", "ell_weights", "details"))


@cli.command(name="bound")
@click.option("--k", "k", type=int, required=True, help="Number of columns")
@click.option("--s", "s", type=int, default=2, show_default=True, help="Number of symbols")
@click.option("--t", "t", type=int, required=True, help="Strength")
@click.option("--lp", is_flag=True, help="Include the Delsarte LP bound (s=2)")
@click.option("--integral", is_flag=True, help="Round the best bound up to a multiple of s^t")
@click.option("--certificate", type=click.File("w"), default=None, help="Write the LP certificate as JSON")
def cmd_bound(k, s, t, lp, integral, certificate):
    """Lower bounds on the number of rows of an OA(N, k, s, t)"""
    if certificate is not None and not lp:
        raise click.UsageError("--certificate needs --lp")
    report = bound_command_report(k, s, t, lp=lp, integral=integral)
    if certificate is not None and report.results.get("lp"):
        json.dump(report.results["lp"], certificate, indent=2)
    if not click.get_current_context().obj.get("json"):
        report.results["fb"] = f"{report.results['fb_num']}/{report.results['fb_den']}"
        if report.results.get("lp"):
            lp_opt = report.results["lp"]["optimum"]
            report.results["lp_optimum"] = f"{lp_opt['num']}/{lp_opt['den']}" if lp_opt["den"] != 1 else lp_opt["num"]
    _emit(report, ("rao", "fb", "khalyavin", "lp_optimum", "verdict", "best_lower", "notes"))


# ===================== CONSTRUCT =====================

@cli.group(name="construct", cls=OAGroup)
def cmd_construct():
    """Build a verified orthogonal array"""


def _write_array(kind, A, strength, inputs, out):
    """Array text to --out, or to stdout with the summary on stderr"""
    report = construct_report(kind, A, strength, inputs)
    ctx = click.get_current_context()
    if ctx.obj.get("json"):
        _emit(report)
        return
    if out is None:
        click.echo(serialize_oa(A), nl=False)
        click.echo(click.style("✓ ", fg="green") + report.message, err=True)
        return
    out.write(serialize_oa(A))
    _emit(report)


def _out_option(f):
    return click.option("--out", type=click.File("w"), default=None, help="Write the array to this file")(f)


@cmd_construct.command(name="sylvester")
@click.option("--h", "h", type=int, required=True, help="Order 2^h of the Hadamard matrix")
@_out_option
def cmd_sylvester(h, out):
    """OA(2^h, 2^h - 1, 2, 2) from the Sylvester-Hadamard matrix"""
    A = constructions.sylvester_oa(h)
    _write_array("sylvester", A, min(2, A.k), {"h": h}, out)


@cmd_construct.command(name="even-weight")
@click.option("--k", "k", type=int, required=True, help="Number of columns")
@_out_option
def cmd_even_weight(k, out):
    """All even-weight vectors of length k, strength k-1"""
    _write_array("even-weight", constructions.even_weight_oa(k), k - 1, {"k": k}, out)


@cmd_construct.command(name="double")
@click.option("--in", "infile", type=click.File("r", encoding="utf-8"), required=True, help="Simple binary array of even strength")
@click.option("--t", "t", type=int, default=None, help="Even strength of the input (default: computed)")
@_out_option
def cmd_double(infile, t, out):
    """[0 | A ; 1 | complement(A)]: strength 2u becomes 2u+1"""
    A = constructions.double_strength(parse_oa(infile.read()), strength=t)
    _write_array("double", A, strength_of(A, SUBSET_VERIFY_LIMIT), {"t": t}, out)


@cmd_construct.command(name="shorten")
@click.option("--in", "infile", type=click.File("r", encoding="utf-8"), required=True, help="Array to shorten")
@click.option("--col", type=int, default=1, show_default=True, help="Column to condition on (1-based)")
@click.option("--symbol", type=int, default=0, show_default=True, help="Symbol the kept rows carry")
@_out_option
def cmd_shorten(infile, col, symbol, out):
    """Keep the rows with SYMBOL in column COL and delete that column"""
    A = constructions.zero_shorten(parse_oa(infile.read()), column=col - 1, symbol=symbol)
    _write_array("shorten", A, strength_of(A, SUBSET_VERIFY_LIMIT), {"col": col, "symbol": symbol}, out)


@cmd_construct.command(name="dual")
@click.option("--gen", "gen", type=click.File("r", encoding="utf-8"), required=True, help="Generator-matrix file")
@_out_option
def cmd_dual(gen, out):
    """All codewords of the dual of a binary linear code"""
    code = parse_generator(gen.read())
    A = constructions.dual_code_oa(code)
    _write_array("dual", A, max(code.minimum_distance() - 1, 0), {"n": code.n, "dim": code.dim}, out)


@cmd_construct.command(name="nordstrom-robinson")
@_out_option
def cmd_nordstrom_robinson(out):
    """The (16, 256) Nordstrom-Robinson code, a simple OA(256, 16, 2, 5)"""
    _write_array("nordstrom-robinson", constructions.nordstrom_robinson(), 5, {}, out)


@cmd_construct.command(name="kerdock")
@click.option("--m", "m", type=int, default=4, show_default=True, help="Even m >= 4; length 2^m")
@_out_option
def cmd_kerdock(m, out):
    """Binary Kerdock code of length 2^m, a simple OA(4^m, 2^m, 2, 5)"""
    _write_array("kerdock", constructions.kerdock(m), 5, {"m": m}, out)


# ===================== SEARCH / TABLE =====================

@cli.command(name="search")
@click.option("--k", "k", type=int, required=True, help="Number of columns")
@click.option("--s", "s", type=int, default=2, show_default=True, help="Number of symbols")
@click.option("--t", "t", type=int, required=True, help="Strength")
@click.option("--n", "N", type=int, default=None, help="Decide existence at exactly N rows")
@click.option("--max-n", "max_N", type=int, default=None, help="Find the minimum N up to this limit")
@click.option("--simple", is_flag=True, help="Require distinct rows")
@click.option("--budget", type=int, default=DEFAULT_NODE_BUDGET, show_default=True, help="Node budget per N")
@click.option("--workers", type=int, default=DEFAULT_WORKERS, show_default=True, help="Worker processes")
def cmd_search(k, s, t, N, max_N, simple, budget, workers):
    """Exhaustive search for an OA(N, k, s, t)"""
    if N is not None and max_N is not None:
        raise click.UsageError("use either --n or --max-n")
    report = search_report(k, s, t, simple, N=N, max_N=max_N, budget=budget, workers=workers)
    _emit(report, ("nodes_visited", "exhausted_rows", "found"))


@cli.command(name="table")
@click.option("--max-k", type=int, default=5, show_default=True, help="Largest number of columns")
@click.option("--max-t", type=int, default=4, show_default=True, help="Largest strength")
@click.option("--lp/--no-lp", default=True, show_default=True, help="Use the Delsarte LP for lower bounds")
@click.option("--search", is_flag=True, help="Search unresolved cells with few rows")
@click.option("--budget", type=int, default=TABLE_SEARCH_BUDGET, show_default=True, help="Node budget per searched N")
def cmd_table(max_k, max_t, lp, search, budget):
    """Certified intervals for the minimal simple binary OA sizes F*(k, 2, t)"""
    report = table_report(max_k, max_t, lp=lp, search=search, budget=budget)
    if click.get_current_context().obj.get("json"):
        _emit(report)
        return
    cells = {(c["k"], c["t"]): c for c in report.results["cells"]}
    header = "k\\t" + "".join(f"{t:>12}" for t in range(1, max_t + 1))
    click.echo(header)
    for k in range(1, max_k + 1):
        line = f"{k:<3}"
        for t in range(1, max_t + 1):
            cell = cells.get((k, t))
            if cell is None:
                line += " " * 12
            elif cell["resolved"]:
                line += click.style(f"{cell['lower']:>12}", fg="green")
            else:
                upper = cell["upper"] if cell["upper"] is not None else "?"
                line += click.style(f"{str(cell['lower']) + '..' + str(upper):>12}", fg="yellow")
        click.echo(line)
    _emit(report)


@cli.command(name="fourier")
@click.argument("file", type=click.File("r", encoding="utf-8"))
@click.option("--spectrum", is_flag=True, help="Also print all Fourier coefficients")
def cmd_fourier(file, spectrum):
    """Weight and correlation-immunity order of a truth-table file"""
    f = parse_truth_table(file.read())
    _emit(fourier_report(f, spectrum=spectrum), ("weight", "ci_order", "support_strength", "spectrum"))


def main():
    """Main entry point for the oa CLI"""
    try:
        cli(obj={})
    except Exception as e:
        click.echo(click.style(f"Error: {str(e)}", fg="red"), err=True)
        raise SystemExit(EXIT_VERIFICATION_FAILED)


if __name__ == "__main__":
    main()
