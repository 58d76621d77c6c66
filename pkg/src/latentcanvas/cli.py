"""Command line entry points.

``latentcanvas render`` drives the same pipeline as the HTTP service from a
scene file; ``latentcanvas serve`` starts the API. Exit codes: 0 success,
2 validation problem, 3 backend failure.
"""

from __future__ import annotations

import json
import logging
import sys
from pathlib import Path

import click

from .backends import backend_from_config
from .backends.masks import FixedTemplateMaskProvider
from .config import load_config
from .errors import (
    BackendUnavailableError,
    GenerationError,
    LatentCanvasError,
)
from .imaging import encode_png
from .pipeline import RenderPipeline
from .scene import SceneSpec, scene_schema
from .store import ImageStore

EXIT_VALIDATION = 2
EXIT_BACKEND = 3


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity >= 2:
        level = logging.DEBUG
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")


@click.group()
def main() -> None:
    """Canvas-layout driven latent attribute transfer."""


@main.command()
@click.argument("spec_path", type=click.Path(path_type=Path))
@click.option("-o", "--output", "output_path", required=True, type=click.Path(path_type=Path),
              help="Where to write the generated PNG.")
@click.option("--backend", "backend_name", default=None, help="Override the scene/config backend.")
@click.option("--config", "config_path", default=None, type=click.Path(path_type=Path),
              help="TOML config file.")
@click.option("--force", is_flag=True, help="Overwrite the output file if it exists.")
@click.option("-v", "--verbose", count=True, help="Increase log verbosity (-v, -vv).")
def render(spec_path: Path, output_path: Path, backend_name: str | None,
           config_path: Path | None, force: bool, verbose: int) -> None:
    """Render a scene file to an image plus a report document."""
    _configure_logging(verbose)
    if output_path.exists() and not force:
        click.echo(f"error: {output_path} exists; pass --force to overwrite", err=True)
        sys.exit(EXIT_VALIDATION)
    try:
        scene = SceneSpec.load(spec_path)
        config = load_config(
            overrides={"backend": backend_name or scene.backend}, config_path=config_path
        )
        backend = backend_from_config(config)
        pipeline = RenderPipeline(backend, FixedTemplateMaskProvider(config.feather))
        image, contributions = pipeline.render_scene(scene)
    except (BackendUnavailableError, GenerationError) as exc:
        click.echo(f"backend error [{exc.code}]: {exc.message}", err=True)
        sys.exit(EXIT_BACKEND)
    except LatentCanvasError as exc:
        field = f" ({exc.field})" if exc.field else ""
        click.echo(f"error [{exc.code}]{field}: {exc.message}", err=True)
        sys.exit(EXIT_VALIDATION)

    png = encode_png(image)
    output_path.parent.mkdir(parents=True, exist_ok=True)
    output_path.write_bytes(png)
    report = {
        "scene": str(spec_path),
        "backend": backend.name,
        "canvas": {
            "width": scene.canvas_size[0],
            "height": scene.canvas_size[1],
            "d_min": scene.distance_model().d_min,
            "d_max": scene.distance_model().d_max,
        },
        "contributions": contributions,
        "output": str(output_path),
        "image": ImageStore.digest(png),
    }
    report_path = output_path.with_suffix(output_path.suffix + ".report.json")
    report_path.write_text(json.dumps(report, indent=2))
    click.echo(f"wrote {output_path} ({len(png)} bytes) and {report_path}")


@main.command()
@click.option("--port", default=None, type=int, help="Service port.")
@click.option("--data-dir", default=None, help="Session persistence directory.")
@click.option("--backend", "backend_name", default=None, help="Generator backend.")
@click.option("--static-dir", default=None, help="Directory with the built web UI to host at /.")
@click.option("--config", "config_path", default=None, type=click.Path(path_type=Path))
@click.option("-v", "--verbose", count=True)
def serve(port: int | None, data_dir: str | None, backend_name: str | None,
          static_dir: str | None, config_path: Path | None, verbose: int) -> None:
    """Run the HTTP API."""
    _configure_logging(verbose)
    import uvicorn

    from .service import create_app

    try:
        config = load_config(
            overrides={
                "port": port,
                "data_dir": data_dir,
                "backend": backend_name,
                "static_dir": static_dir,
            },
            config_path=config_path,
        )
        app = create_app(config)
    except LatentCanvasError as exc:
        click.echo(f"error [{exc.code}]: {exc.message}", err=True)
        sys.exit(EXIT_VALIDATION)
    uvicorn.run(app, host="0.0.0.0", port=config.port)


@main.command()
def schema() -> None:
    """Print the published scene-file JSON schema."""
    click.echo(json.dumps(scene_schema(), indent=2))


if __name__ == "__main__":
    main()
