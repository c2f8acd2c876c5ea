"""Plain-text key=value configuration files.

Grammar: one ``key = value`` pair per line, ``#`` starts a comment, blank
lines are ignored, keys are case-insensitive.  Values stay strings; callers
cast.  Spectrum definitions use the keys documented in the README
(``system``, ``b``, ``q``, ``p``, ``n_max``, ``beta``, ``v0_ev``, ``mr``,
``energies``).
"""

from __future__ import annotations

import os

from .errors import InvalidParameterError
from .spectrum import (
    EV,
    MorsePhysicalParams,
    SpectrumModel,
    make_spectrum,
    morse_from_physical,
)


def parse_key_values(text: str) -> dict[str, str]:
    out: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InvalidParameterError(
                f"config line {lineno}: expected 'key = value', got {raw!r}")
        key, value = line.split("=", 1)
        out[key.strip().lower()] = value.strip()
    return out


def load_key_values(path: str | os.PathLike) -> dict[str, str]:
    with open(path, encoding="utf-8") as fh:
        return parse_key_values(fh.read())


def spectrum_from_config(source) -> SpectrumModel:
    """Build a spectrum from a config path, text, or parsed mapping."""
    if isinstance(source, dict):
        cfg = {k.lower(): str(v) for k, v in source.items()}
    elif isinstance(source, str) and "=" in source:
        cfg = parse_key_values(source)
    else:
        cfg = load_key_values(source)

    system = cfg.get("system")
    if system is None:
        raise InvalidParameterError("config is missing the 'system' key")
    system = system.lower().replace("-", "_")

    if system == "morse" and "p" not in cfg:
        missing = [k for k in ("beta", "v0_ev", "mr") if k not in cfg]
        if missing:
            raise InvalidParameterError(
                "morse config needs either 'p' or the physical constants "
                f"beta/v0_ev/mr (missing: {', '.join(missing)})")
        phys = MorsePhysicalParams(beta=float(cfg["beta"]),
                                   V0=float(cfg["v0_ev"]) * EV,
                                   m_r=float(cfg["mr"]))
        n_max = int(cfg["n_max"]) if "n_max" in cfg else None
        return morse_from_physical(phys, n_max=n_max)

    energies = None
    if "energies" in cfg:
        energies = [float(tok) for tok in cfg["energies"].split(",") if tok.strip()]

    return make_spectrum(
        system,
        b=float(cfg.get("b", 1.0)),
        q=float(cfg["q"]) if "q" in cfg else None,
        p=float(cfg["p"]) if "p" in cfg else None,
        n_max=int(cfg["n_max"]) if "n_max" in cfg else None,
        energies=energies,
    )
