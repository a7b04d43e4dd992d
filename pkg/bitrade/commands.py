"""Command-line front end: validation, tau permutations, genus, partitions, drawings and corpora."""

import json
import logging
import sys
from typing import Any, Optional

import click

from . import __version__, load_config
from .decorators import EXIT_INVALID, maps_errors
from .helpers import FORMATS, dump_bitrade, load_bitrade, parse_pair, read_text, write_text
from .models import Entry
from .services.generator_service import (
    LatticeSpec,
    cyclic_shift_bitrade,
    enumerate_small,
    example2,
    intercalate,
    lattice_quotient_bitrade,
    lattice_quotients,
    write_corpus,
)
from .services.latin_service import validate_bitrade
from .services.partition_service import (
    PartitionFailure,
    brute_force_partitions,
    partition_from_json,
    partition_to_json,
    three_transversal_partition,
    verify_partition,
)
from .services.permutation_service import (
    bitrade_from_tau,
    rename_cycle_labels,
    tau_from_text,
    tau_representation,
    tau_to_text,
)
from .services.surface_service import genus, genus_by_orbit, hypermap_from_tau, hypermap_to_dot
from .services.tessellation_service import lift_to_plane
from .utils.svg import render_svg

logger = logging.getLogger(__name__)

INPUT = click.Path(exists=True, dir_okay=False, allow_dash=True)


def _json(payload: Any) -> str:
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


def _emit(text: str, output: Optional[str]) -> None:
    if output in (None, "-"):
        click.echo(text, nl=False)
    else:
        write_text(output, text)


def _entry(value: Optional[str]) -> Optional[Entry]:
    return Entry.parse(value) if value else None


format_option = click.option(
    "--format", "fmt", default="triples", show_default=True, type=click.Choice(FORMATS), help="Input format."
)
output_option = click.option("--output", "-o", default=None, help="Output path; stdout when omitted.")


@click.group()
@click.option("--config", "config_path", default=None, type=click.Path(dir_okay=False), help="TOML configuration file.")
@click.option("-v", "--verbose", is_flag=True, help="Log at DEBUG level on stderr.")
@click.version_option(__version__, prog_name="bitrade")
@click.pass_context
def cli(ctx, config_path, verbose):
    """Latin bitrades: validation, tau permutations, genus, transversal partitions and drawings."""
    try:
        config = load_config(config_path)
    except FileNotFoundError as exc:
        raise click.UsageError(str(exc)) from exc

    level = "DEBUG" if verbose else str(config["logging"]["level"]).upper()
    logging.basicConfig(level=level, format=config["logging"]["format"], stream=sys.stderr, force=True)
    ctx.obj = config


@cli.command("validate")
@click.argument("source", type=INPUT)
@format_option
@click.option("--json", "as_json", is_flag=True, help="Print the report as JSON.")
@maps_errors
def validate_cmd(source, fmt, as_json):
    """Check the latin and bitrade conditions; exit 0 iff the pair is a bitrade."""
    t_dia, t_oti = parse_pair(read_text(source), fmt)
    report = validate_bitrade(t_dia, t_oti)
    if as_json:
        click.echo(_json(report.to_dict()), nl=False)
    elif report.ok:
        click.echo(f"OK: bitrade with {len(t_dia)} entries")
    else:
        for violation in report.violations:
            click.echo(f"[{violation.rule}] {violation.subject}: {violation.message}")
    if not report.ok:
        raise click.exceptions.Exit(EXIT_INVALID)


@cli.command("convert")
@click.argument("source", type=INPUT)
@format_option
@click.option("--to", "target_fmt", required=True, type=click.Choice(FORMATS), help="Output format.")
@output_option
@maps_errors
def convert_cmd(source, fmt, target_fmt, output):
    """Rewrite a bitrade in another format."""
    dump_bitrade(load_bitrade(source, fmt), output, target_fmt)


@cli.command("tau")
@click.argument("source", type=INPUT)
@format_option
@output_option
@maps_errors
def tau_cmd(source, fmt, output):
    """Print τ₁, τ₂, τ₃ in cycle notation, one per line."""
    _emit(tau_to_text(tau_representation(load_bitrade(source, fmt))), output)


@cli.command("from-tau")
@click.argument("source", type=INPUT)
@click.option("--to", "target_fmt", default="triples", show_default=True, type=click.Choice(FORMATS))
@click.option("--rename/--no-rename", default=False, help="Relabel cycles with the labels their r:c:s darts share.")
@output_option
@maps_errors
def from_tau_cmd(source, target_fmt, rename, output):
    """Rebuild a bitrade from three permutations."""
    t = tau_from_text(read_text(source))
    b = bitrade_from_tau(t)
    if rename:
        b = rename_cycle_labels(b, t)
    dump_bitrade(b, output, target_fmt)


@cli.command("genus")
@click.argument("source", type=INPUT)
@format_option
@click.option("--by-orbit", is_flag=True, help="One report per orbit, for bitrades that are not primary.")
@maps_errors
def genus_cmd(source, fmt, by_orbit):
    """Genus of the surface carrying the bitrade's hypermap."""
    t = tau_representation(load_bitrade(source, fmt))
    if by_orbit:
        click.echo(_json([report.to_dict() for report in genus_by_orbit(t)]), nl=False)
    else:
        click.echo(_json(genus(t).to_dict()), nl=False)


@cli.command("hypermap")
@click.argument("source", type=INPUT)
@format_option
@output_option
@maps_errors
def hypermap_cmd(source, fmt, output):
    """The bipartite hypermap graph as DOT source."""
    _emit(hypermap_to_dot(hypermap_from_tau(tau_representation(load_bitrade(source, fmt)))), output)


@cli.command("partition")
@click.argument("source", type=INPUT)
@format_option
@click.option("--base", default=None, help="Dart r:c:s placed in class 0.")
@output_option
@maps_errors
def partition_cmd(source, fmt, base, output):
    """Partition a 3-homogeneous bitrade into three transversals."""
    b = load_bitrade(source, fmt)
    try:
        p = three_transversal_partition(b, base=_entry(base), canonical=base is None)
    except PartitionFailure as exc:
        click.echo(_json(exc.to_dict()), nl=False)
        raise
    _emit(partition_to_json(p), output)


@cli.command("verify")
@click.argument("source", type=INPUT)
@click.argument("partition_file", type=INPUT)
@format_option
@maps_errors
def verify_cmd(source, partition_file, fmt):
    """Check a partition JSON document against a bitrade."""
    report = verify_partition(partition_from_json(read_text(partition_file)), load_bitrade(source, fmt))
    click.echo(_json(report.to_dict()), nl=False)
    if not report.ok:
        raise click.exceptions.Exit(EXIT_INVALID)


@cli.command("oracle")
@click.argument("source", type=INPUT)
@format_option
@click.option("--cap", type=int, default=None, help="Largest |T⋄| searched; defaults to [oracle] cap.")
@click.pass_obj
@maps_errors
def oracle_cmd(config, source, fmt, cap):
    """Every partition into three transversals, by exhaustive search."""
    found = brute_force_partitions(load_bitrade(source, fmt), cap=cap if cap is not None else int(config["oracle"]["cap"]))
    click.echo(_json({"count": len(found), "partitions": [p.to_dict() for p in found]}), nl=False)


@cli.command("tessellate")
@click.argument("source", type=INPUT)
@format_option
@click.option("--output", "-o", required=True, type=click.Path(dir_okay=False), help="SVG file to write.")
@click.option("--base", default=None, help="Dart r:c:s at the origin; the least entry when omitted.")
@click.option("--radius", type=float, default=None)
@click.option("--labels/--no-labels", default=None)
@click.option("--axes/--no-axes", default=None)
@click.option("--shade-color", default=None)
@click.option("--scale", type=float, default=None)
@click.option("--lattice", nargs=4, type=int, default=None, help="Two black-lattice vectors m1 n1 m2 n2 outlining a fundamental domain.")
@click.pass_obj
@maps_errors
def tessellate_cmd(config, source, fmt, output, base, radius, labels, axes, shade_color, scale, lattice):
    """Draw the labelled plane tessellation of a 3-homogeneous bitrade."""
    settings = config["tessellate"]
    b = load_bitrade(source, fmt)
    start = None if b.is_empty else (_entry(base) or b.t_dia.sorted()[0])
    vectors = ((lattice[0], lattice[1]), (lattice[2], lattice[3])) if lattice else None
    drawing = lift_to_plane(b, start, radius if radius is not None else settings["radius"], lattice=vectors)
    document = render_svg(
        drawing,
        show_labels=settings["show_labels"] if labels is None else labels,
        show_axes=settings["show_axes"] if axes is None else axes,
        shade_color=shade_color or settings["shade_color"],
        scale=scale if scale is not None else settings["scale"],
        margin=settings["margin"],
        font_size=settings["label_font_size"],
    )
    with open(output, "wb") as handle:
        handle.write(document)
    click.echo(f"Wrote {len(drawing.triangles)} triangles to {output}", err=True)


@cli.command("generate")
@click.argument("family", type=click.Choice(["intercalate", "example2", "cyclic", "lattice", "lattices"]))
@click.option("-n", "size", type=int, default=3, show_default=True, help="Order of the cyclic family.")
@click.option("--lattice", "vectors", nargs=4, type=int, default=None, help="Black-lattice vectors m1 n1 m2 n2.")
@click.option("--max-index", type=int, default=9, show_default=True, help="Largest index for the lattices corpus.")
@click.option("--to", "target_fmt", default="triples", show_default=True, type=click.Choice(FORMATS))
@click.option("--output-dir", default=None, type=click.Path(file_okay=False), help="Corpus directory for 'lattices'.")
@output_option
@maps_errors
def generate_cmd(family, size, vectors, max_index, target_fmt, output_dir, output):
    """Reference bitrades, the cyclic family, and lattice quotients."""
    if family == "lattices":
        if not output_dir:
            raise click.UsageError("'lattices' writes a corpus; pass --output-dir.")
        accepted, rejected = lattice_quotients(max_index)
        manifest = write_corpus([b for _, b in accepted], output_dir, prefix="lattice")
        click.echo(_json({
            "accepted": [[list(spec.v1), list(spec.v2)] for spec, _ in accepted],
            "rejected": [[list(exc.spec.v1), list(exc.spec.v2)] for exc in rejected],
            "count": manifest["count"],
        }), nl=False)
        return

    if family == "intercalate":
        b = intercalate()
    elif family == "example2":
        b = example2()
    elif family == "cyclic":
        b = cyclic_shift_bitrade(size)
    else:
        if not vectors:
            raise click.UsageError("'lattice' needs --lattice m1 n1 m2 n2.")
        b = lattice_quotient_bitrade(LatticeSpec((vectors[0], vectors[1]), (vectors[2], vectors[3])))
    dump_bitrade(b, output, target_fmt)


@cli.command("enumerate")
@click.option("--order", type=int, required=True)
@click.option("--output-dir", required=True, type=click.Path(file_okay=False))
@click.option("--workers", type=int, default=None)
@click.option("--xlsx", is_flag=True, help="Also write manifest.xlsx.")
@click.pass_obj
@maps_errors
def enumerate_cmd(config, order, output_dir, workers, xlsx):
    """Every bitrade that is the difference of two latin squares of a small order."""
    settings = config["enumerate"]
    corpus = enumerate_small(
        order,
        workers=workers or int(settings["workers"]),
        max_order=int(settings["max_order"]),
    )
    manifest = write_corpus(corpus, output_dir, prefix=f"order{order}", xlsx=xlsx)
    summary = {key: value for key, value in manifest.items() if key != "bitrades"}
    click.echo(_json(summary), nl=False)
