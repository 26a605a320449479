"""Command-line entry point: ``mockalex <command> [input] [flags]``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any

from pydantic import BaseModel, ValidationError
from structlog.stdlib import BoundLogger

from mockalex import catalog
from mockalex.classical import alexander_determinant, alexander_state_sum
from mockalex.diagram import DiagramMap, census, load_document
from mockalex.errors import InternalConsistencyError, MockAlexError, StarError
from mockalex.invariants import (
    family,
    handle_polynomial,
    mock_alexander,
    nabla_sharp,
    skein_triple,
    trident_polynomial,
    verify_skein,
    virtual_closure,
)
from mockalex.log_config import configure_logging, get_logger
from mockalex.matrix import permanent, potential_matrix
from mockalex.models import PolyDoc, RunConfig
from mockalex.planar import k_bang_star, normalized_planar, resolve_outer
from mockalex.poly import LaurentPoly, decompose_symmetric, doteq
from mockalex.stars import StarredDiagram, load, make_starred
from mockalex.statesum import potential
from mockalex.suites import run_suite, write_artifacts


EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2

Target = StarredDiagram | DiagramMap


def _csv(value: str) -> list[str]:
    return [part.strip() for part in value.split(",") if part.strip()]


def _split_middle(token: str) -> tuple[str, str]:
    """Split ``b:c`` where either side may itself be a corner ref like ``t1:2``."""
    parts = token.split(":")
    if len(parts) == 2:
        return parts[0], parts[1]
    if len(parts) == 4:
        return ":".join(parts[:2]), ":".join(parts[2:])
    if len(parts) == 3:
        if parts[1].isdigit():
            return ":".join(parts[:2]), parts[2]
        return parts[0], ":".join(parts[1:])
    raise argparse.ArgumentTypeError(f"cannot split {token!r} into two face refs")


def _pairs(value: str) -> list[tuple[str, str]]:
    """``a,b:c,d`` -> [(a, b), (c, d)]. Pairs may also be separated by ``;``."""
    if ";" in value:
        chunks = [_csv(chunk) for chunk in value.split(";")]
    else:
        parts = _csv(value)
        if len(parts) != 3:
            raise argparse.ArgumentTypeError(f"expected two face pairs in {value!r}")
        b, c = _split_middle(parts[1])
        chunks = [[parts[0], b], [c, parts[2]]]
    for chunk in chunks:
        if len(chunk) != 2:
            raise argparse.ArgumentTypeError(f"expected two faces in {chunk!r}")
    return [(a, b) for a, b in chunks]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, default=None, help="YAML file with RunConfig defaults")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--format", dest="output_format", choices=["text", "json"], default=None)
    common.add_argument("--engine", choices=["states", "permanent", "ryser"], default=None)
    common.add_argument("--output", type=Path, default=None, help="Write the result here instead of stdout")
    common.add_argument("--log-json", action="store_true", default=None, help="JSON log lines on stderr")

    starred = argparse.ArgumentParser(add_help=False)
    starred.add_argument("input", type=Path, help="Diagram JSON file, '-' for stdin, or a catalog name")
    starred.add_argument("--stars-regions", dest="star_regions", type=_csv, default=None)
    starred.add_argument("--stars-crossings", dest="star_crossings", type=_csv, default=None)

    parser = argparse.ArgumentParser(prog="mockalex", description="Mock Alexander polynomials of starred diagrams")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("census", parents=[common, starred], help="Face, edge and genus statistics")
    sub.add_parser("potential", parents=[common, starred], help="Two-variable potential in W and B")
    sub.add_parser("mock", parents=[common, starred], help="Mock Alexander polynomial")
    sub.add_parser("sharp", parents=[common, starred], help="Tail-starred polynomial of a knotoid")
    p = sub.add_parser("matrix", parents=[common, starred], help="Potential matrix")
    p.add_argument("--labels", choices=["mock", "mock-specialized", "planar"], default=None)
    p = sub.add_parser("skein", parents=[common, starred], help="Skein triple at one crossing")
    p.add_argument("--crossing", required=True)
    sub.add_parser("closure", parents=[common, starred], help="Virtual closure of a knotoid")
    p = sub.add_parser("trident", parents=[common, starred], help="Glue three faces of a link")
    p.add_argument("--faces", type=_csv, required=True)
    p = sub.add_parser("handle", parents=[common, starred], help="Glue two pairs of faces of a link")
    p.add_argument("--pairs", type=_pairs, required=True)
    p = sub.add_parser("planar", parents=[common, starred], help="Normalized planar potential")
    p.add_argument("--outer", dest="outer_face", default=None)
    p.add_argument("--kbang", action="store_true", default=None, help="Reflect and mirror the diagram first")
    p = sub.add_parser("alexander", parents=[common, starred], help="Alexander determinant and state sum")
    p.add_argument("--edge", default=None, help="Edge whose two faces are deleted, e.g. a:2")

    p = sub.add_parser("family", parents=[common], help="Emit a twist or spiral diagram")
    p.add_argument("--kind", choices=["twist", "spiral"], required=True)
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("verify", parents=[common], help="Seeded verification suite")
    p.add_argument("--suite", choices=["invariance", "skein", "symmetry", "perm", "conjectures"], required=True)
    p.add_argument("--iters", dest="iterations", type=int, default=None)
    p.add_argument("--steps", type=int, default=None)
    p.add_argument("--size-bound", type=int, default=None)
    p.add_argument("--artifacts-dir", type=Path, default=None)
    return parser


def config_from_args(argv: list[str] | None = None) -> RunConfig:
    args = vars(build_parser().parse_args(argv))
    path = args.pop("config")
    source = args.pop("input", None)
    if source is not None:
        args["inputs"] = [source]
    return RunConfig.load(path, **args)


# input


def load_target(config: RunConfig) -> tuple[Target, str | None]:
    """The input diagram with star overrides applied, plus the document's outer face."""
    if not config.inputs:
        raise MockAlexError("no input diagram given")
    source = config.inputs[0]
    outer = None
    if str(source) == "-":
        doc = load_document(sys.stdin.read())
        target, outer = load(doc), doc.outer_face
    elif source.exists():
        doc = load_document(source)
        target, outer = load(doc), doc.outer_face
    elif str(source) in catalog.NAMED:
        target = catalog.NAMED[str(source)]()
    else:
        raise MockAlexError(f"{source}: no such file or catalog diagram")
    if config.star_regions is not None or config.star_crossings is not None:
        base = target.base if isinstance(target, StarredDiagram) else target
        target = make_starred(base, regions=config.star_regions, crossings=config.star_crossings)
    return target, config.outer_face or outer


def _base(target: Target) -> DiagramMap:
    return target.base if isinstance(target, StarredDiagram) else target


def _starred(target: Target) -> StarredDiagram:
    if isinstance(target, StarredDiagram):
        return target
    try:
        return StarredDiagram(target)
    except StarError:
        raise StarError("diagram is not admissible; pass --stars-regions or --stars-crossings") from None


def _default_edge(d: DiagramMap) -> str:
    for edge in d.edges:
        if d.left_face(edge) != d.right_face(edge):
            return str(edge[0])
    raise MockAlexError("no edge borders two distinct faces")


# output


class Output:
    def __init__(self, config: RunConfig):
        self.config = config
        self.chunks: list[str] = []

    def emit(self, text: str, model: BaseModel | dict[str, Any]) -> None:
        if self.config.output_format == "json":
            if isinstance(model, BaseModel):
                self.chunks.append(model.model_dump_json(by_alias=True, exclude_none=True, indent=2))
            else:
                self.chunks.append(json.dumps(model, indent=2, sort_keys=True))
        else:
            self.chunks.append(text)

    def poly(self, p: LaurentPoly, label: str | None = None) -> None:
        text = p.to_text() if label is None else f"{label}: {p.to_text()}"
        self.emit(text, PolyDoc.from_poly(p, engine=self.config.engine))

    def flush(self) -> None:
        body = "\n".join(self.chunks) + "\n"
        if self.config.output is not None:
            self.config.output.write_text(body)
        else:
            sys.stdout.write(body)


def _poly_fields(**polys: LaurentPoly | None) -> dict[str, Any]:
    return {k: PolyDoc.from_poly(p).model_dump() if p is not None else None for k, p in polys.items()}


# commands


def run(config: RunConfig, log: BoundLogger | None = None) -> int:
    """Execute one command. Returns the process exit status."""
    log = (log or get_logger()).bind(command=config.command)
    out = Output(config)
    status = EXIT_OK
    command = config.command

    if command == "family":
        if config.kind is None or config.n is None:
            raise MockAlexError("family needs --kind and --n")
        doc = family(config.kind, config.n).to_document(name=f"{config.kind}-{config.n}")
        out.emit(doc.to_json_text(), doc)
    elif command == "verify":
        if config.suite is None:
            raise MockAlexError("verify needs --suite")
        report = run_suite(config, config.suite, log)
        written = write_artifacts(report, config.artifacts_dir)
        for path in written:
            log.warning("Counterexample written", path=str(path))
        text = f"suite {report.suite}: {report.passed} passed, {report.failed} failed (seed {report.seed})"
        out.emit(text, report)
        status = EXIT_OK if report.ok else EXIT_FAILED
    else:
        target, outer = load_target(config)
        status = _run_on_diagram(config, target, outer, out, log)

    out.flush()
    log.info("Command done", status=status)
    return status


def _run_on_diagram(config: RunConfig, target: Target, outer: str | None, out: Output, log: BoundLogger) -> int:
    command = config.command
    engine = config.engine
    d = _base(target)

    if command == "census":
        report = census(d)
        out.emit("\n".join(f"{k}: {v}" for k, v in report.model_dump().items()), report)
    elif command == "potential":
        out.poly(potential(_starred(target)))
    elif command == "mock":
        out.poly(mock_alexander(_starred(target), engine))
    elif command == "sharp":
        out.poly(nabla_sharp(d, engine))
    elif command == "matrix":
        m = potential_matrix(_starred(target), config.labels)
        out.emit(m.pretty(), m.to_doc())
        log.debug("Matrix permanent", permanent=permanent(m).to_text())
    elif command == "skein":
        if config.crossing is None:
            raise MockAlexError("skein needs --crossing")
        report = verify_skein(skein_triple(_starred(target), config.crossing), engine)
        lines = [f"{k}: {v}" for k, v in report.model_dump(exclude_none=True).items()]
        out.emit("\n".join(lines), report)
        if report.verdict is False:
            return EXIT_FAILED
    elif command == "closure":
        closure = virtual_closure(d, engine)
        witness = decompose_symmetric(closure.nabla_v)
        text = "\n".join(
            [
                f"virtual: {closure.nabla_v.to_text()}",
                f"exterior: {closure.nabla_ext.to_text()}",
                f"interior: {closure.nabla_int.to_text()}",
                f"witness: {witness.to_text() if witness is not None else 'none'}",
            ]
        )
        out.emit(
            text,
            _poly_fields(virtual=closure.nabla_v, exterior=closure.nabla_ext, interior=closure.nabla_int, witness=witness),
        )
    elif command == "trident":
        out.poly(trident_polynomial(d, config.faces or [], engine))
    elif command == "handle":
        out.poly(handle_polynomial(d, config.pairs or [], engine))
    elif command == "planar":
        sd = _starred(target)
        outer_face: Any = outer
        if config.kbang:
            sd, outer_face = k_bang_star(sd, outer)
        outer_face = resolve_outer(sd.base, outer_face)
        log.debug("Outer face", face=outer_face.name)
        out.poly(normalized_planar(sd, outer_face.key))
    elif command == "alexander":
        edge = config.edge or _default_edge(d)
        det = alexander_determinant(d, edge)
        states = alexander_state_sum(d, edge)
        agree = doteq(det, states)
        out.emit(
            f"determinant: {det.to_text()}\nstate sum: {states.to_text()}\nagree: {str(agree).lower()}",
            {**_poly_fields(determinant=det, state_sum=states), "agree": agree, "edge": edge},
        )
        if not agree:
            return EXIT_FAILED
    else:
        raise MockAlexError(f"unknown command {command!r}")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    try:
        config = config_from_args(argv)
    except ValidationError as e:
        print(f"mockalex: invalid configuration: {e.errors()[0]['msg']}", file=sys.stderr)
        return EXIT_INPUT
    except (OSError, ValueError) as e:
        print(f"mockalex: {e}", file=sys.stderr)
        return EXIT_INPUT

    configure_logging(pretty=not config.log_json)
    log = get_logger()
    try:
        return run(config, log)
    except ValidationError as e:
        log.error("Malformed document", error=str(e.errors()[0]["msg"]))
        print(f"mockalex: malformed document: {e.errors()[0]['msg']}", file=sys.stderr)
        return EXIT_INPUT
    except InternalConsistencyError:
        log.exception("Internal consistency check failed")
        return EXIT_FAILED
    except (MockAlexError, json.JSONDecodeError, OSError) as e:
        print(f"mockalex: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
