"""Command-line front end.

Every computation routes through the library; the CLI only parses,
validates, dispatches, and writes files.  Exit codes: 0 success,
1 validation error, 2 numerical failure (tolerance/convergence),
3 I/O error.  Flag values override config-file values, which override
defaults; relative output paths resolve against $GHASTATES_OUTDIR when set.
"""

from __future__ import annotations

import os
import sys
from pathlib import Path

import click

from . import __version__
from .algebra import build_rep, verify_algebra
from .config import load_key_values
from .dynamics import trace, write_trace_csv
from .errors import (
    GhaError,
    ImaginaryResidualError,
    NegativeVarianceError,
    TailBoundError,
    UncertaintyFloorError,
)
from .spectrum import (
    EV,
    MorsePhysicalParams,
    SpectrumModel,
    energy,
    make_spectrum,
    morse,
    morse_from_physical,
    nilpotency_index,
)

OUTDIR_ENV = "GHASTATES_OUTDIR"

EXIT_VALIDATION = 1
EXIT_NUMERICAL = 2
EXIT_IO = 3

_NUMERICAL_ERRORS = (TailBoundError, NegativeVarianceError,
                     ImaginaryResidualError, UncertaintyFloorError)

# standard curve sets: two labels per system, phase 0, unit energy scale.
# The last entry reproduces the O2 Morse ladder with its published
# parameterization (p = 7.59, eight bound levels).
FIGURES = {
    1: ("type1", "gha", (0.1, 0.5)),
    2: ("type1", "linear", (0.1, 0.5)),
    3: ("type2", "gha", (0.1, 0.5)),
    4: ("type2", "linear", (0.1, 0.5)),
    5: ("hydrogen", "gha", (0.1, 0.5)),
    6: ("hydrogen", "linear", (0.1, 0.5)),
    7: ("morse", "gha", (0.03, 0.1)),
}
O2_P = 7.59

click.UsageError.exit_code = EXIT_VALIDATION


def _fail(code: int, message: str):
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _guard(fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except _NUMERICAL_ERRORS as exc:
        _fail(EXIT_NUMERICAL, str(exc))
    except (GhaError, ValueError) as exc:
        _fail(EXIT_VALIDATION, str(exc))
    except OSError as exc:
        _fail(EXIT_IO, str(exc))


def _resolve_out(path: str) -> Path:
    p = Path(path)
    base = os.environ.get(OUTDIR_ENV)
    if base and not p.is_absolute():
        p = Path(base) / p
    return p


def _open_out(path: str, force: bool):
    p = _resolve_out(path)
    if p.exists() and not force:
        _fail(EXIT_VALIDATION,
              f"{p} exists; pass --force to overwrite")
    if p.parent and not p.parent.exists():
        _fail(EXIT_IO, f"output directory {p.parent} does not exist")
    return p


_CONFIG_ALIASES = {"path": "route", "format": "fmt"}


def _merged(ctx: click.Context, config: str | None) -> dict:
    """Effective parameters: command line > config file > defaults."""
    values = dict(ctx.params)
    values["_config"] = {}
    if not config:
        return values
    cfg = _guard(load_key_values, config)
    values["_config"] = cfg
    src = click.core.ParameterSource
    params = {p.name: p for p in ctx.command.params}
    for key, raw in cfg.items():
        key = _CONFIG_ALIASES.get(key.replace("-", "_"), key.replace("-", "_"))
        if key not in values or key == "config":
            continue
        if ctx.get_parameter_source(key) == src.COMMANDLINE:
            continue
        param = params.get(key)
        if param is not None and getattr(param, "is_flag", False):
            values[key] = raw.lower() in ("1", "true", "yes", "on")
        elif param is not None:
            try:
                values[key] = param.type.convert(raw, param, ctx)
            except click.UsageError as exc:
                _fail(EXIT_VALIDATION, f"config key {key!r}: {exc}")
        else:
            values[key] = raw
    return values


def _spectrum_from(v: dict) -> SpectrumModel:
    system = (v.get("system") or "").strip()
    if not system:
        _fail(EXIT_VALIDATION, "--system is required (or set it in --config)")
    tag = system.lower().replace("-", "_")
    if tag == "morse":
        return _morse_from(v)
    if tag == "custom":
        raw = v.get("_config", {}).get("energies")
        if raw is None:
            _fail(EXIT_VALIDATION,
                  "custom spectra need an 'energies' list in --config")
        return _guard(make_spectrum, tag,
                      energies=[float(tok) for tok in raw.split(",")
                                if tok.strip()])
    return _guard(make_spectrum, tag, b=v.get("b", 1.0), q=v.get("q"),
                  p=v.get("p"))


def _morse_from(v: dict) -> SpectrumModel:
    o_nu, o_p, o_nmax = (v.get("override_nu"), v.get("override_p"),
                         v.get("override_nmax"))
    phys = None
    if all(v.get(f) is not None for f in ("beta", "v0", "mr")):
        phys = _guard(MorsePhysicalParams, beta=v["beta"], V0=v["v0"] * EV,
                      m_r=v["mr"])
    # omega depends only on beta and m_r, so it survives nu/p overrides
    omega = phys.omega if phys is not None else None
    if o_p is not None:
        return _guard(morse, o_p, n_max=o_nmax, omega=omega)
    if o_nu is not None:
        return _guard(morse, (o_nu - 1.0) / 2.0, n_max=o_nmax, omega=omega)
    if v.get("p") is not None:
        return _guard(morse, v["p"], n_max=o_nmax)
    if phys is None:
        missing = [f for f in ("beta", "v0", "mr") if v.get(f) is None]
        _fail(EXIT_VALIDATION,
              "morse needs --p or the physical constants --beta, --v0 "
              f"(eV) and --mr (missing: {', '.join('--' + m for m in missing)})")
    return _guard(morse_from_physical, phys, n_max=o_nmax)


def _spectrum_options(fn):
    for dec in reversed([
        click.option("--system", type=str, default=None,
                     help="System tag: harmonic, q-deformed, square-well, "
                          "type1, type2, hydrogen, morse."),
        click.option("--b", type=float, default=1.0, show_default=True,
                     help="Dimensionless energy constant of the b-scaled systems."),
        click.option("--q", type=float, default=None,
                     help="Deformation parameter of the q-deformed ladder."),
        click.option("--p", type=float, default=None,
                     help="Morse well parameter p."),
        click.option("--beta", type=float, default=None,
                     help="Morse inverse width in 1/m."),
        click.option("--v0", type=float, default=None,
                     help="Morse well depth in eV."),
        click.option("--mr", type=float, default=None,
                     help="Reduced mass in kg."),
        click.option("--override-nmax", type=int, default=None,
                     help="Pin the number of Morse levels to n_max + 1."),
        click.option("--override-nu", type=float, default=None,
                     help="Use this nu instead of the physical-constant value."),
        click.option("--override-p", type=float, default=None,
                     help="Use this p instead of the physical-constant value."),
        click.option("--config", type=click.Path(exists=True, dir_okay=False),
                     default=None, help="key=value config file."),
    ]):
        fn = dec(fn)
    return fn


@click.group()
@click.version_option(version=__version__, prog_name="ghastates")
def main() -> None:
    """Ladder-operator quantum systems: spectra, coherent states, and
    uncertainty-product dynamics."""


@main.command()
@_spectrum_options
@click.option("--dim", type=int, default=30, show_default=True,
              help="Truncation dimension (finite ladders ignore this).")
@click.option("--tol", type=float, default=1e-12, show_default=True,
              help="Pass tolerance for the scaled identity residuals.")
@click.option("--out", type=str, default=None,
              help="Write the report to this file instead of stdout.")
@click.option("--format", "fmt", type=click.Choice(["text", "records"]),
              default="text", show_default=True,
              help="records = one tab-separated line per identity.")
@click.option("--force", is_flag=True, help="Overwrite an existing --out file.")
@click.pass_context
def verify(ctx, **kwargs) -> None:
    """Check every algebraic identity numerically; exit 0 iff all pass."""
    v = _merged(ctx, kwargs.get("config"))
    spec = _spectrum_from(v)
    dim = spec.max_level + 1 if spec.system == "morse" else v["dim"]
    rep = _guard(build_rep, spec, dim)
    report = _guard(verify_algebra, rep, spec, v["tol"])
    body = "\n".join(report.to_records()) if v["fmt"] == "records" \
        else report.to_text()
    if v["out"]:
        path = _open_out(v["out"], v["force"])
        _guard(path.write_text, body + "\n", encoding="utf-8")
        click.echo(f"wrote {path}")
    else:
        click.echo(body)
    if not report.passed:
        _fail(EXIT_NUMERICAL,
              f"identity residuals exceed tol = {v['tol']:g}")


@main.command(name="trace")
@_spectrum_options
@click.option("--kind", type=click.Choice(["gha", "linear"]), default="gha",
              show_default=True, help="Coherent-state family.")
@click.option("--r", type=float, default=None,
              help="State label radius (required here or in --config).")
@click.option("--phi", type=float, default=0.0, show_default=True,
              help="State label phase.")
@click.option("--t-start", type=float, default=0.0, show_default=True)
@click.option("--t-end", type=float, default=100.0, show_default=True)
@click.option("--points", type=int, default=2001, show_default=True)
@click.option("--path", "route", type=click.Choice(["oracle", "series", "both"]),
              default="oracle", show_default=True,
              help="Evaluation route; 'both' adds a discrepancy column.")
@click.option("--dim", type=int, default=None,
              help="Explicit truncation dimension for the state.")
@click.option("--tol", type=float, default=1e-9, show_default=True,
              help="With --path both: largest allowed route discrepancy.")
@click.option("--out", type=str, required=True, help="Output CSV path.")
@click.option("--force", is_flag=True, help="Overwrite an existing file.")
@click.pass_context
def trace_cmd(ctx, **kwargs) -> None:
    """Write the uncertainty product over a time grid as CSV."""
    v = _merged(ctx, kwargs.get("config"))
    if v.get("r") is None:
        _fail(EXIT_VALIDATION, "--r is required (flag or config)")
    spec = _spectrum_from(v)
    tr = _guard(trace, spec, v["kind"], v["r"], v["phi"], v["t_start"],
                v["t_end"], v["points"], v["route"], v["dim"])
    path = _open_out(v["out"], v["force"])
    _guard(write_trace_csv, tr, path)
    click.echo(f"wrote {path}")
    if spec.system == "morse" and spec.omega:
        click.echo(f"time column is omega*t with omega = {spec.omega:.6g} rad/s "
                   f"(1 time unit = {1.0 / spec.omega:.6g} s)")
    if tr.max_discrepancy is not None:
        click.echo(f"max route discrepancy: {tr.max_discrepancy:.3e}")
        if tr.max_discrepancy > v["tol"]:
            _fail(EXIT_NUMERICAL,
                  f"route discrepancy {tr.max_discrepancy:.3e} exceeds "
                  f"tol = {v['tol']:g}")


@main.command(name="figure")
@click.argument("figure_id", type=str)
@click.option("--out-dir", type=str, default=".", show_default=True,
              help="Directory for the CSV bundle and manifest.")
@click.option("--t-end", type=float, default=60.0, show_default=True,
              help="Window end; 60 covers several periods of every "
                   "dominant oscillation in these curve sets.")
@click.option("--points", type=int, default=2001, show_default=True)
@click.option("--force", is_flag=True, help="Overwrite existing files.")
def figure_cmd(figure_id, out_dir, t_end, points, force) -> None:
    """Reproduce one standard curve set (1..7, or 'o2' for the Morse set)."""
    key = figure_id.strip().lower()
    if key == "o2":
        fid = 7
    else:
        try:
            fid = int(key)
        except ValueError:
            fid = -1
    if fid not in FIGURES:
        _fail(EXIT_VALIDATION,
              f"unknown figure id {figure_id!r}; choose 1..7 or 'o2'")
    system, kind, radii = FIGURES[fid]
    spec = morse(O2_P) if system == "morse" else make_spectrum(system)

    base = _resolve_out(out_dir)
    if not base.exists():
        _fail(EXIT_IO, f"output directory {base} does not exist")
    written = []
    manifest = ["file,system,kind,r,phi,t_start,t_end,points,path"]
    for r in radii:
        name = f"fig{fid}_{system}_{kind}_r{r:g}.csv"
        target = base / name
        if target.exists() and not force:
            _fail(EXIT_VALIDATION, f"{target} exists; pass --force to overwrite")
        tr = _guard(trace, spec, kind, r, 0.0, 0.0, t_end, points, "series")
        _guard(write_trace_csv, tr, target)
        written.append(str(target))
        manifest.append(f"{name},{system},{kind},{r:g},0,0,{t_end:g},"
                        f"{points},series")
    mpath = base / f"fig{fid}_manifest.csv"
    if mpath.exists() and not force:
        _fail(EXIT_VALIDATION, f"{mpath} exists; pass --force to overwrite")
    _guard(mpath.write_text, "\n".join(manifest) + "\n", encoding="utf-8")
    for name in written + [str(mpath)]:
        click.echo(f"wrote {name}")


@main.command(name="morse-info")
@click.option("--p", type=float, default=None, help="Morse parameter p.")
@click.option("--beta", type=float, default=None, help="Inverse width in 1/m.")
@click.option("--v0", type=float, default=None, help="Well depth in eV.")
@click.option("--mr", type=float, default=None, help="Reduced mass in kg.")
@click.option("--override-nmax", type=int, default=None)
@click.option("--override-nu", type=float, default=None)
@click.option("--override-p", type=float, default=None)
@click.pass_context
def morse_info(ctx, **kwargs) -> None:
    """Report nu, p, the level table, and the time scale of a Morse well."""
    v = dict(ctx.params)
    v["system"] = "morse"
    physical = all(v.get(f) is not None for f in ("beta", "v0", "mr"))
    if physical:
        phys = _guard(MorsePhysicalParams, beta=v["beta"], V0=v["v0"] * EV,
                      m_r=v["mr"])
        click.echo(f"nu from constants: {phys.nu:.6g}")
        click.echo(f"omega = hbar beta^2 / 2 m_r = {phys.omega:.6g} rad/s")
    spec = _morse_from(v)
    click.echo(f"p = {spec.p:.6g}")
    click.echo(f"n_max = {spec.max_level}")
    click.echo(f"nilpotency index = {nilpotency_index(spec)}")
    click.echo("level table (dimensionless energies):")
    for n in range(spec.max_level + 1):
        click.echo(f"  n = {n:>3d}   eps = {energy(spec, n):.12g}")


if __name__ == "__main__":
    main()
