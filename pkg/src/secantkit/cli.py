"""Thin command-line client over the shared dispatcher.

By default everything runs in-process (no network); ``--server URL`` proxies
the same request to a running service instead.  Exit codes: 0 success,
1 violations present, 2 input error, 3 resource cap exceeded.
"""

from __future__ import annotations

import json
import sys
import time
import urllib.request

import click

from . import __version__
from .corpus import CorpusError, SamplingUnavailable, corpus_generate
from .groebner import DegreeCapExceeded
from .inputlang import InputError
from .reports import (
    COMMANDS,
    EXIT_INPUT_ERROR,
    EXIT_OK,
    EXIT_RESOURCE,
    EXIT_VIOLATIONS,
    CommandError,
    canonical_json,
    run_command,
)


def _common(f):
    decorators = [
        click.argument("input_file", required=False,
                       type=click.Path(exists=True, dir_okay=False)),
        click.option("--family", default=None,
                     help="built-in family, e.g. rational-normal-curve:4"),
        click.option("--ideal", "ideal_name", default=None,
                     help="named ideal from the input file"),
        click.option("--seed", default=0, type=int, show_default=True),
        click.option("--degree-cap", default=40, type=int, show_default=True),
        click.option("--trials", default=100, type=int, show_default=True),
        click.option("--field", "field_tag", default="q", show_default=True,
                     help="q or gfp:<p>"),
        click.option("--out", "out_path", default=None,
                     type=click.Path(dir_okay=False)),
        click.option("--format", "fmt", default="json", show_default=True,
                     type=click.Choice(["json", "text"])),
        click.option("--server", default=None,
                     help="proxy to a running service, e.g. http://localhost:8000"),
    ]
    for d in reversed(decorators):
        f = d(f)
    return f


def _execute(command: str, input_file, family, ideal_name, seed, degree_cap,
             trials, field_tag, out_path, fmt, server, extra: dict):
    input_text = None
    if input_file:
        with open(input_file, encoding="utf-8") as fh:
            input_text = fh.read()
    options = {"seed": seed, "degree_cap": degree_cap, "trials": trials,
               "field": field_tag}
    options.update({k: v for k, v in extra.items() if v is not None})
    started = time.monotonic()
    try:
        if server:
            doc, ok = _remote(server, command, input_text, family,
                              ideal_name, options)
        else:
            report = run_command(command, input_text, family, ideal_name,
                                 options)
            doc, ok = report.document(), report.ok
    except (CommandError, InputError, CorpusError, SamplingUnavailable) as exc:
        click.echo(f"input error: {exc}", err=True)
        sys.exit(EXIT_INPUT_ERROR)
    except DegreeCapExceeded as exc:
        click.echo(f"resource cap: {exc}", err=True)
        sys.exit(EXIT_RESOURCE)
    except ValueError as exc:
        click.echo(f"input error: {exc}", err=True)
        sys.exit(EXIT_INPUT_ERROR)
    elapsed_ms = int((time.monotonic() - started) * 1000)
    rendered = canonical_json(doc) if fmt == "json" else _render_text(doc)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(rendered)
    else:
        click.echo(rendered, nl=False)
    click.echo(f"# wall_ms={elapsed_ms}", err=True)
    sys.exit(EXIT_OK if ok else EXIT_VIOLATIONS)


def _remote(server, command, input_text, family, ideal_name, options):
    body = {
        "command": command,
        "input_text": input_text,
        "family": family,
        "ideal": ideal_name,
        "seed": options.pop("seed"),
        "degree_cap": options.pop("degree_cap"),
        "trials": options.pop("trials"),
        "field": options.pop("field"),
        "params": {k: v for k, v in options.items() if v is not None},
    }
    req = urllib.request.Request(
        server.rstrip("/") + "/run",
        data=json.dumps(body).encode(),
        headers={"Content-Type": "application/json"},
    )
    with urllib.request.urlopen(req) as resp:
        doc = json.loads(resp.read().decode())
    ok = doc.pop("ok", True)
    return doc, ok


def _render_text(doc: dict, indent: int = 0) -> str:
    lines = [f"{doc['command']}  (engine {doc['engine_version']})"]

    def walk(obj, depth):
        pad = "  " * depth
        if isinstance(obj, dict):
            for k in sorted(obj):
                v = obj[k]
                if isinstance(v, (dict, list)):
                    lines.append(f"{pad}{k}:")
                    walk(v, depth + 1)
                else:
                    lines.append(f"{pad}{k}: {v}")
        elif isinstance(obj, list):
            for v in obj:
                if isinstance(v, (dict, list)):
                    walk(v, depth)
                else:
                    lines.append(f"{pad}- {v}")

    walk(doc["payload"], 1)
    return "\n".join(lines) + "\n"


@click.group()
@click.version_option(version=__version__)
def main():
    """Exact checks for syzygy conditions, secant varieties, cohomology
    vanishing and flip lattice arithmetic."""


def _register(name: str, help_text: str, extra_options=()):
    def decorator(param_names):
        @main.command(name=name, help=help_text)
        @_common
        def _cmd(input_file, family, ideal_name, seed, degree_cap, trials,
                 field_tag, out_path, fmt, server, **kwargs):
            _execute(name, input_file, family, ideal_name, seed, degree_cap,
                     trials, field_tag, out_path, fmt, server, kwargs)

        for opt in reversed(extra_options):
            _cmd = opt(_cmd)
        return _cmd

    return decorator(None)


_register("gb", "Reduced deterministic basis of the ideal.")
_register("syz", "Minimal first syzygies of the ideal's generators.")
_register("betti", "Betti table of a minimal free resolution.",
          (click.option("--max-length", "max_length", default=3, type=int,
                        show_default=True),))
_register("check-k2", "Koszul relations against linear syzygies, degree 2.")
_register("check-kd", "Koszul relations against linear syzygies.",
          (click.option("--d", default=None, type=int),))
_register("check-n2", "Quadric generation, linear syzygies, normality range.",
          (click.option("--normality-bound", "normality_bound", default=None,
                        type=int),))
_register("lines", "Line content via Grassmannian chart elimination.")
_register("secant", "Ideal of the secant variety (join elimination).")
_register("deficiency", "Secant dimension, deficiency, image-variety check.")
_register("fiber", "Fiber of the quadric map through a point.",
          (click.option("--point", default=None, help="named point"),
           click.option("--chord-seed", "chord_seed", default=None, type=int,
                        help="sample a seeded chord point (families only)")))
_register("cohomology", "Exact sheaf cohomology of the (power of the) ideal.",
          (click.option("--module", default="ideal", show_default=True,
                        type=click.Choice(["ideal", "quotient", "ring"])),
           click.option("--a", default=1, type=int, show_default=True),
           click.option("--k", default=None, type=int),
           click.option("--k-min", "k_min", default=None, type=int),
           click.option("--k-max", "k_max", default=None, type=int)))
_register("vanish-scan", "Ideal-power vanishing scan above the bound.",
          (click.option("--variant", default="little", show_default=True,
                        type=click.Choice(["little", "second"])),
           click.option("--a-min", "a_min", default=1, type=int, show_default=True),
           click.option("--a-max", "a_max", default=2, type=int, show_default=True),
           click.option("--window", default=3, type=int, show_default=True),
           click.option("--d", default=None, type=int)))
_register("flip-verify", "Lattice identity for the vanishing rewrite, "
                         "canonical class, pullback rules.")
_register("thresholds", "Vanishing thresholds for given parameters.",
          (click.option("--variant", default="little", show_default=True,
                        type=click.Choice(["little", "veronese", "second"])),
           click.option("--d", default=None, type=int),
           click.option("--e", default=None, type=int),
           click.option("--a", default=None, type=int),
           click.option("--n", default=None, type=int),
           click.option("--r", default=None, type=int)))
_register("report-all", "Full battery over the built-in corpus.")


@main.command()
@click.option("--family", required=True)
@click.option("--seed", default=0, type=int, show_default=True)
@click.option("--out", "out_path", default=None, type=click.Path(dir_okay=False))
def corpus(family, seed, out_path):
    """Emit the input-language text for a built-in family."""
    try:
        variety = corpus_generate(family, seed=seed)
    except CorpusError as exc:
        click.echo(f"input error: {exc}", err=True)
        sys.exit(EXIT_INPUT_ERROR)
    ring = variety.ideal.ring
    text = (f"ring R vars {' '.join(ring.vars)};\n"
            f"ideal X = {', '.join(str(g) for g in variety.ideal.gens)};\n")
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, type=int, show_default=True)
def serve(host, port):
    """Run the HTTP service."""
    import uvicorn

    from .service import app

    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
