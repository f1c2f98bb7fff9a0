"""Command-line surface.

Every verb reads the poset text format on stdin unless ``--poset FILE`` is
given.  ``realize`` emits a pipe-composable bundle (the poset text followed
by the realizer JSON) so that ``gen | realize | verify`` works; ``verify``
also accepts a plain poset on stdin with ``--realizer FILE``.

Exit codes: 0 success/verified, 1 property violated, 2 usage or input error.
"""

import json
import sys

import click

from . import exactdim, generators, poset as posetio, stdecomp
from .errors import (
    BadParameter,
    CycleError,
    Exceeded,
    NotTreewidth2,
    ParseError,
    ReversibilityViolation,
    SpdimError,
    TooLarge,
    UnknownElement,
)
from .graphs import dumps_dot
from .realizer import (
    build_instance,
    dumps_realizer,
    loads_realizer,
    metamorphic_check,
    realize_tw2,
    signature_census,
    ALL_CLASSES,
)
from .spembed import augment_with_fresh_terminals, embed_into_sp

INPUT_ERRORS = (ParseError, CycleError, UnknownElement, BadParameter,
                NotTreewidth2, TooLarge, json.JSONDecodeError)


def _fail_usage(exc):
    click.echo("error: %s" % exc, err=True)
    sys.exit(2)


def _read_text(poset_file):
    if poset_file is not None:
        with open(poset_file, "r", encoding="utf-8") as fh:
            return fh.read()
    return sys.stdin.read()


def _read_poset(poset_file):
    try:
        return posetio.loads(_read_text(poset_file))
    except INPUT_ERRORS as exc:
        _fail_usage(exc)


def _split_bundle(text):
    "Split a poset-text + realizer-JSON stream at the first JSON line."
    lines = text.splitlines(keepends=True)
    for k, raw in enumerate(lines):
        line = raw.strip()
        if line.startswith(("[", "{")) and " < " not in line and not line.startswith("elements:"):
            return "".join(lines[:k]), "".join(lines[k:])
    return text, None


poset_option = click.option("--poset", "-f", "poset_file", type=click.Path(exists=True),
                            default=None, help="Read the poset from FILE instead of stdin.")


@click.group()
def main():
    "Realizers, exact dimension and decompositions for treewidth-2 posets."


@main.command()
@click.option("--family", required=True,
              type=click.Choice(sorted(generators.FAMILIES)))
@click.option("--n", "n", required=True, type=int)
@click.option("--seed", type=int, default=0, show_default=True)
def gen(family, n, seed):
    "Generate a poset and write it in the poset text format."
    try:
        p = generators.generate(family, n, seed)
    except BadParameter as exc:
        _fail_usage(exc)
    click.echo(posetio.dumps(p), nl=False)


@main.command()
@poset_option
@click.option("--max-d", type=int, default=12, show_default=True)
@click.option("--cap", type=int, default=60, show_default=True,
              help="Refuse instances with more incomparable ordered pairs.")
def dim(poset_file, max_d, cap):
    "Print the exact dimension (brute-force oracle)."
    p = _read_poset(poset_file)
    try:
        result = exactdim.dimension_exact(p, max_d=max_d, cap=cap)
    except TooLarge as exc:
        _fail_usage(exc)
    except Exceeded as exc:
        click.echo("dimension exceeds %d" % exc.max_d, err=True)
        sys.exit(1)
    click.echo(str(result.dimension))


@main.command()
@poset_option
def realize(poset_file):
    "Emit the poset followed by its realizer JSON (at most 12 extensions)."
    p = _read_poset(poset_file)
    try:
        r = realize_tw2(p)
    except NotTreewidth2 as exc:
        _fail_usage(exc)
    except ReversibilityViolation as exc:
        click.echo("error: %s" % exc, err=True)
        sys.exit(1)
    click.echo(posetio.dumps(p), nl=False)
    click.echo(dumps_realizer(r), nl=False)


@main.command()
@poset_option
@click.option("--realizer", "realizer_file", type=click.Path(exists=True), default=None,
              help="Read the realizer JSON from FILE (stdin then carries the poset only).")
def verify(poset_file, realizer_file):
    "Check that the given extensions realize the poset; exit 1 if not."
    try:
        if realizer_file is not None:
            p = posetio.loads(_read_text(poset_file))
            with open(realizer_file, "r", encoding="utf-8") as fh:
                r = loads_realizer(fh.read())
        else:
            text, tail = _split_bundle(_read_text(poset_file))
            if tail is None:
                raise ParseError("no realizer JSON found on stdin (use --realizer)", 1)
            p = posetio.loads(text)
            r = loads_realizer(tail)
    except INPUT_ERRORS as exc:
        _fail_usage(exc)
    problems = p.realizer_violations(r.orders())
    if len(r) > 12:
        problems.append("realizer uses %d extensions (more than 12)" % len(r))
    if problems:
        for line in problems:
            click.echo("violation: %s" % line, err=True)
        sys.exit(1)
    click.echo("verified: %d extension(s), %d incomparable pairs"
               % (len(r), len(p.incomparable_pairs())))


@main.command()
@poset_option
@click.option("--json", "as_json", is_flag=True, default=False,
              help="Emit the decomposition as JSON (default).")
@click.option("--dot", "as_dot", is_flag=True, default=False,
              help="Emit the host graph as DOT with fill edges dashed.")
def decompose(poset_file, as_json, as_dot):
    "Embed the cover graph and print the s-t tree-decomposition."
    p = _read_poset(poset_file)
    try:
        embedding = augment_with_fresh_terminals(embed_into_sp(p.cover_graph()))
    except NotTreewidth2 as exc:
        _fail_usage(exc)
    if as_dot:
        click.echo(dumps_dot(embedding.host, embedding.added_edges), nl=False)
        return
    decomp = stdecomp.build_st_decomposition(embedding.sp, embedding.host)
    click.echo(stdecomp.dumps_decomposition(decomp), nl=False)


@main.command()
@poset_option
def classify(poset_file):
    "Print the signature census table."
    p = _read_poset(poset_file)
    try:
        instance = build_instance(p)
    except NotTreewidth2 as exc:
        _fail_usage(exc)
    census = signature_census(instance)
    for cls in ALL_CLASSES:
        click.echo("%-28s %d" % (cls, census[cls]))
    click.echo("%-28s %d" % ("total", sum(census.values())))


@main.command("check-claims")
@poset_option
def check_claims(poset_file):
    "Re-classify under dual/reversed/swapped transforms and report violations."
    p = _read_poset(poset_file)
    try:
        instance = build_instance(p)
    except NotTreewidth2 as exc:
        _fail_usage(exc)
    report = metamorphic_check(instance)
    if report:
        for violation in report:
            click.echo("violation: %s" % violation, err=True)
        sys.exit(1)
    click.echo("no violations (%d pairs checked)" % len(instance.classification))


@main.command()
@click.option("--family", default="random_tw2", type=click.Choice(sorted(generators.FAMILIES)),
              show_default=True)
@click.option("--n", "n", required=True, type=int)
@click.option("--count", required=True, type=int)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--jobs", type=int, default=1, show_default=True)
@click.option("--oracle-cap", type=int, default=0, show_default=True,
              help="Also run the exact oracle when |Inc| fits under this cap.")
def batch(family, n, count, seed, jobs, oracle_cap):
    "Generate COUNT instances, realize and verify each, print a summary."
    tasks = [(family, n, seed + k, oracle_cap) for k in range(count)]
    if jobs > 1:
        import multiprocessing

        with multiprocessing.Pool(jobs) as pool:
            results = pool.map(_batch_one, tasks)
    else:
        results = [_batch_one(t) for t in tasks]
    failures = [r for r in results if r["error"]]
    max_ext = max((r["extensions"] for r in results if r["extensions"]), default=0)
    dims = [r["dimension"] for r in results if r["dimension"]]
    click.echo("instances: %d  failures: %d  max extensions: %d"
               % (len(results), len(failures), max_ext))
    if dims:
        click.echo("max exact dimension observed: %d" % max(dims))
    for r in failures:
        click.echo("failed seed %d: %s" % (r["seed"], r["error"]), err=True)
    if failures:
        sys.exit(1)


def _batch_one(task):
    family, n, seed, oracle_cap = task
    out = {"seed": seed, "error": None, "extensions": 0, "dimension": None}
    try:
        p = generators.generate(family, n, seed)
        r = realize_tw2(p)
        out["extensions"] = len(r)
        if len(r) > 12:
            out["error"] = "more than 12 extensions"
        elif not p.verify_realizer(r.orders()):
            out["error"] = "realizer does not verify"
        elif oracle_cap and len(p.incomparable_pairs()) <= oracle_cap:
            out["dimension"] = exactdim.dimension_exact(p, cap=oracle_cap).dimension
    except SpdimError as exc:
        out["error"] = str(exc)
    return out


if __name__ == "__main__":
    main()
