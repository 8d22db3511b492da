"""Command-line front end.

Generator subcommands write point-cloud files next to a ``<out>.meta.json``
run manifest; ``bcjulia replay <manifest>`` regenerates the same files.
"""

from __future__ import annotations

import hashlib
import json
import platform
import sys
import time
from pathlib import Path

import click
import numpy as np

from . import __version__
from .bcdynamics import as_param, bc_fixed_points, dendrite_heuristic, iim_bicomplex
from .bicomplex import Bicomplex, norm
from .boundary import build_julia_boundary
from .dynamics import RNG_NAME, GridSpec, IimConfig, iim
from .slicing import SliceSpec, export, planar_slice, slice3d, stats, write_metadata

MANIFEST_SUFFIX = ".meta.json"
FORMATS = ("csv", "ply", "xyz")


def parse_reals(text: str, max_parts: int, what: str = "--c") -> list[float]:
    """Parse ``"x[,y[,...]]"`` into ``max_parts`` floats, padding with zeros."""
    parts = text.split(",")
    if len(parts) > max_parts:
        raise click.BadParameter(f"expected at most {max_parts} comma-separated numbers, got {len(parts)} in {text!r}",
                                 param_hint=what)
    values = []
    for pos, part in enumerate(parts, 1):
        try:
            v = float(part)
        except ValueError:
            raise click.BadParameter(f"component {pos} of {text!r} ({part.strip()!r}) is not a number",
                                     param_hint=what) from None
        if not np.isfinite(v):
            raise click.BadParameter(f"component {pos} of {text!r} is not finite", param_hint=what)
        values.append(v)
    return values + [0.0] * (max_parts - len(values))


def parse_grid(text: str) -> tuple[int, int]:
    sep = "x" if "x" in text else ","
    parts = text.split(sep)
    try:
        dims = [int(p) for p in parts]
    except ValueError:
        raise click.BadParameter(f"expected N or NXxNY, got {text!r}", param_hint="--grid") from None
    if len(dims) == 1:
        dims = dims * 2
    if len(dims) != 2:
        raise click.BadParameter(f"expected N or NXxNY, got {text!r}", param_hint="--grid")
    return dims[0], dims[1]


def _out_prefix(out: str) -> Path:
    p = Path(out)
    return p.with_suffix("") if p.suffix.lower() in {".csv", ".ply", ".xyz"} else p


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _iim_cfg(params: dict) -> IimConfig:
    return IimConfig(seed=params["seed"], n_points=params["points"], warmup=params["warmup"],
                     mode=params["mode"], depth=params["depth"])


def _grid(params: dict) -> GridSpec:
    x_min, x_max, y_min, y_max = params["bounds"]
    nx, ny = params["grid"]
    return GridSpec(x_min, x_max, y_min, y_max, nx, ny, params["max_iter"])


def _generate(subcommand: str, params: dict):
    """Compute the cut point set and the metadata for one generator run."""
    if subcommand == "julia2d":
        c = complex(*params["c"])
        z = iim(c, _iim_cfg(params))
        meta = {"c_complex": [c.real, c.imag], "count": int(z.size)}
        return planar_slice(z), meta
    c = as_param(Bicomplex.from_parts(*params["c"]))
    if subcommand == "julia3d-iim":
        cloud = iim_bicomplex(c, _iim_cfg(params))
    elif subcommand == "julia3d-boundary":
        cloud = build_julia_boundary(c, _iim_cfg(params), _grid(params), params["budget"])
    else:
        raise click.UsageError(f"cannot replay subcommand {subcommand!r}")
    spec = SliceSpec(params["axis"], params["epsilon"])
    cut = slice3d(cloud, spec)
    meta = {
        "c_projections": [[c.c_minus.real, c.c_minus.imag], [c.c_plus.real, c.c_plus.imag]],
        "cloud": cloud.meta,
        "cloud_stats": stats(cloud).as_dict(),
        "slice": {"axis": spec.drop_axis, "epsilon": spec.epsilon, "kept_axes": list(spec.kept_axes),
                  "count": len(cut)},
    }
    return cut, meta


def run_generator(subcommand: str, params: dict) -> dict:
    """Run a generator, write its outputs and manifest, return the manifest."""
    t0 = time.perf_counter()
    cut, meta = _generate(subcommand, params)
    elapsed = time.perf_counter() - t0
    prefix = _out_prefix(params["out"])
    if prefix.parent != Path("."):
        prefix.parent.mkdir(parents=True, exist_ok=True)
    outputs = []
    for fmt in params["formats"]:
        path = export(cut, prefix.with_name(prefix.name + "." + fmt), fmt)
        outputs.append({"format": fmt, "path": str(path), "sha256": _sha256(path)})
    manifest = {
        "tool": "bcjulia",
        "version": __version__,
        "subcommand": subcommand,
        "params": params,
        "rng": RNG_NAME,
        "seed": params["seed"],
        "outputs": outputs,
        "result": meta,
        "timing_s": {"generate": elapsed, "total": time.perf_counter() - t0},
        "versions": {"python": platform.python_version(), "numpy": np.__version__, "bcjulia": __version__},
    }
    write_metadata(prefix.with_name(prefix.name + MANIFEST_SUFFIX), manifest)
    return manifest


def _echo_outputs(manifest: dict):
    for o in manifest["outputs"]:
        click.echo(f"wrote {o['path']}")
    click.echo(f"wrote {_out_prefix(manifest['params']['out'])}{MANIFEST_SUFFIX}")


def iim_options(f):
    f = click.option("--depth", type=click.IntRange(1), default=12, show_default=True,
                     help="Tree depth for --mode tree.")(f)
    f = click.option("--mode", type=click.Choice(["random", "tree"]), default="random", show_default=True)(f)
    f = click.option("--seed", type=click.IntRange(0, 2**64 - 1), default=0, show_default=True)(f)
    f = click.option("--warmup", type=click.IntRange(0), default=20, show_default=True)(f)
    f = click.option("-n", "--points", type=click.IntRange(1), default=100_000, show_default=True)(f)
    return f


def slice_options(f):
    f = click.option("--axis", type=click.Choice(["a", "b", "c", "d"]), default="d", show_default=True,
                     help="Real coordinate removed by the cut.")(f)
    f = click.option("--epsilon", type=float, default=0.05, show_default=True)(f)
    return f


def grid_options(f):
    f = click.option("--bounds", default="-2,2,-2,2", show_default=True, help="x_min,x_max,y_min,y_max")(f)
    f = click.option("--max-iter", type=click.IntRange(1), default=200, show_default=True)(f)
    f = click.option("--grid", default="401", show_default=True, help="N or NXxNY grid nodes.")(f)
    return f


def _formats(values, default):
    return list(dict.fromkeys(values)) if values else list(default)


@click.group()
@click.version_option(__version__, prog_name="bcjulia")
def main():
    """Complex and bicomplex Julia sets by inverse iteration."""


@main.command()
@click.option("-c", "--c", "c_text", required=True, help="Parameter as re[,im].")
@iim_options
@click.option("--out", default="julia2d", show_default=True, help="Output path prefix.")
@click.option("--format", "formats", type=click.Choice(FORMATS), multiple=True, help="Repeatable; default csv.")
def julia2d(c_text, points, warmup, seed, mode, depth, out, formats):
    """Julia set of z^2 + c in the plane (written with z = 0)."""
    params = dict(c=parse_reals(c_text, 2), points=points, warmup=warmup, seed=seed, mode=mode, depth=depth,
                  out=out, formats=_formats(formats, ["csv"]))
    _echo_outputs(run_generator("julia2d", params))


@main.command("julia3d-iim")
@click.option("-c", "--c", "c_text", required=True, help="Parameter as a,b,c,d.")
@iim_options
@slice_options
@click.option("--out", default="julia3d_iim", show_default=True, help="Output path prefix.")
@click.option("--format", "formats", type=click.Choice(FORMATS), multiple=True,
              help="Repeatable; default csv and ply.")
def julia3d_iim(c_text, points, warmup, seed, mode, depth, epsilon, axis, out, formats):
    """J x_e J part of a bicomplex Julia set by inverse iteration, cut to 3D."""
    params = dict(c=parse_reals(c_text, 4), points=points, warmup=warmup, seed=seed, mode=mode, depth=depth,
                  epsilon=epsilon, axis=axis, out=out, formats=_formats(formats, ["csv", "ply"]))
    _echo_outputs(run_generator("julia3d-iim", params))


@main.command("julia3d-boundary")
@click.option("-c", "--c", "c_text", required=True, help="Parameter as a,b,c,d.")
@iim_options
@grid_options
@click.option("--budget", type=click.IntRange(1), default=300_000, show_default=True,
              help="Total number of combined 4D points.")
@slice_options
@click.option("--out", default="julia3d_boundary", show_default=True, help="Output path prefix.")
@click.option("--format", "formats", type=click.Choice(FORMATS), multiple=True,
              help="Repeatable; default csv and ply.")
def julia3d_boundary(c_text, points, warmup, seed, mode, depth, grid, max_iter, bounds, budget, epsilon, axis,
                     out, formats):
    """Full bicomplex Julia set from Julia and filled-in Julia samples, cut to 3D."""
    params = dict(c=parse_reals(c_text, 4), points=points, warmup=warmup, seed=seed, mode=mode, depth=depth,
                  grid=list(parse_grid(grid)), max_iter=max_iter, bounds=parse_reals(bounds, 4, "--bounds"),
                  budget=budget, epsilon=epsilon, axis=axis, out=out, formats=_formats(formats, ["csv", "ply"]))
    _echo_outputs(run_generator("julia3d-boundary", params))


@main.command()
@click.argument("manifest", type=click.Path(exists=True, dir_okay=False))
@click.option("--out", default=None, help="Write to this prefix instead of the recorded one.")
def replay(manifest, out):
    """Re-run a generator from its .meta.json manifest."""
    try:
        recorded = json.loads(Path(manifest).read_text())
        subcommand = recorded["subcommand"]
        params = dict(recorded["params"])
    except (ValueError, KeyError) as exc:
        raise click.UsageError(f"{manifest}: not a bcjulia manifest ({exc})") from None
    if out is not None:
        params["out"] = out
    _echo_outputs(run_generator(subcommand, params))


def _fmt_c(z: complex) -> str:
    return f"{z.real:.17g}{z.imag:+.17g}i1"


@main.command("fixed-points")
@click.option("-c", "--c", "c_text", required=True, help="Parameter as a,b,c,d.")
def fixed_points_cmd(c_text):
    """List the fixed points of w^2 + c with their classification."""
    c = as_param(Bicomplex.from_parts(*parse_reals(c_text, 4)))
    click.echo(f"c = {c.c}")
    click.echo(f"c_minus = {_fmt_c(c.c_minus)}  c_plus = {_fmt_c(c.c_plus)}")
    fps = bc_fixed_points(c)
    click.echo(f"{len(fps)} fixed point(s)")
    for k, fp in enumerate(fps, 1):
        w = fp.point
        residual = norm(w * w + c.c - w)
        click.echo(f"[{k}] w = {w}")
        click.echo(f"    P1 = {_fmt_c(fp.comp1.point)}  {fp.comp1.kind.value} |2z| = {fp.comp1.multiplier_mag:.17g}")
        click.echo(f"    P2 = {_fmt_c(fp.comp2.point)}  {fp.comp2.kind.value} |2z| = {fp.comp2.multiplier_mag:.17g}")
        click.echo(f"    residual = {residual:.3e}  in JxJ: {'yes' if fp.in_JxJ else 'no'}")


@main.command("dendrite-check")
@click.option("-c", "--c", "c_text", required=True, help="Parameter as a,b,c,d.")
@grid_options
def dendrite_check(c_text, grid, max_iter, bounds):
    """Grid heuristic: are both filled-in Julia sets free of interior?"""
    c = as_param(Bicomplex.from_parts(*parse_reals(c_text, 4)))
    nx, ny = parse_grid(grid)
    x_min, x_max, y_min, y_max = parse_reals(bounds, 4, "--bounds")
    spec = GridSpec(x_min, x_max, y_min, y_max, nx, ny, max_iter)
    report = dendrite_heuristic(c, spec)
    click.echo(f"P1: c = {_fmt_c(c.c_minus)}  inside nodes = {report.inside_counts[0]}  {report.comp1.value}")
    click.echo(f"P2: c = {_fmt_c(c.c_plus)}  inside nodes = {report.inside_counts[1]}  {report.comp2.value}")
    click.echo(f"verdict: {report.verdict.value}")


def run(argv=None) -> int:
    """Entry point; errors become one ``bcjulia: error: ...`` line on stderr."""
    try:
        rv = main.main(args=argv, prog_name="bcjulia", standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.Abort:
        click.echo("bcjulia: error: aborted", err=True)
        return 1
    except click.ClickException as exc:
        msg = " ".join(exc.format_message().split())
        click.echo(f"bcjulia: error: {msg}", err=True)
        return exc.exit_code
    except (OSError, ValueError, ArithmeticError) as exc:
        msg = " ".join(str(exc).split())
        click.echo(f"bcjulia: error: {type(exc).__name__}: {msg}", err=True)
        return 1
    return rv if isinstance(rv, int) else 0


if __name__ == "__main__":
    sys.exit(run())
