"""Batch front-end.

Subcommands parse structured inputs, run a pipeline, and emit a
deterministic report: same inputs give byte-identical output, across
runs and across worker counts.  Exit codes: 0 success, 1 domain error
(with a machine-readable error object), 2 usage error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from concurrent.futures import ThreadPoolExecutor

from . import __version__
from .errors import SncxError
from .homology import homology, wedge_certificate
from .newton import (
    newton_polyhedron,
    predicted_sphere_count,
    resolution_complex,
    torus_hypersurface_boundary_complex,
    w0_report,
)
from .serialize import (
    complex_from_dict,
    complex_to_dict,
    dumps,
    script_from_list,
    script_to_list,
)
from .snc import dual_complex, fan_from_json, realize_boundary, strata_from_json, toric_link
from .transforms import run_blowup_script

FORMATS_HELP = """\
input schemas (JSON):
  complex       {"faces": [{"id", "dim", "facets": [...],
                 "label"?, "delta_order"?: [...], "level"?}]}
  strata        {"components": [{"label", "level"?}],
                 "strata": [{"indices": [...], "label",
                             "parents": {"<index>": "<label>"}}]}
  fan           {"rays": [[...]], "cones": [[ray indices]]}
  script        [{"case": 1 | 2 | 3 | "attach", "face"?, "base"?,
                  "attach"?: [...], "vertex"?, "new_vertex"?, "level"?}]
  support       [[exponent vector], ...]   (or {"points": [...]})
  polytope      [[lattice point], ...]     (or {"points": [...]})
  subsets       [[vertex, ...], ...]       (or {"faces": [...], "n"?})
"""


def _sha256(path: str) -> str:
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()


def _load_json(path: str):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _points_of(doc):
    if isinstance(doc, dict):
        return doc["points"]
    return doc


def _homology_report(path: str, reduced: bool) -> dict:
    c = complex_from_dict(_load_json(path))
    h = homology(c, reduced=reduced)
    return {
        "f_vector": list(c.f_vector()),
        "euler_characteristic": c.euler_characteristic(),
        "components": len(c.connected_components()),
        "reduced": reduced,
        "homology": h.as_json(),
    }


def _summary(c) -> dict:
    return {
        "f_vector": list(c.f_vector()),
        "euler_characteristic": c.euler_characteristic(),
        "homology": homology(c).as_json(),
    }


def _run_homology(args) -> dict:
    def one(path):
        return {"input": path, "sha256": _sha256(path),
                **_homology_report(path, args.reduced)}
    if args.jobs > 1 and len(args.inputs) > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            reports = list(pool.map(one, args.inputs))
    else:
        reports = [one(p) for p in args.inputs]
    return {"reports": reports}


def _run_transform(args) -> dict:
    c = complex_from_dict(_load_json(args.complex))
    script = script_from_list(_load_json(args.script))
    final, log = run_blowup_script(c, script)
    return {
        "inputs": [{"path": args.complex, "sha256": _sha256(args.complex)},
                   {"path": args.script, "sha256": _sha256(args.script)}],
        "log": log.as_json(),
        "final": _summary(final),
        "final_complex": complex_to_dict(final),
    }


def _run_dual(args) -> dict:
    desc = strata_from_json(_load_json(args.input))
    c = dual_complex(desc)
    return {"input": args.input, "sha256": _sha256(args.input),
            **_summary(c), "complex": complex_to_dict(c)}


def _run_toric_link(args) -> dict:
    fan = fan_from_json(_load_json(args.input))
    c = toric_link(fan)
    return {"input": args.input, "sha256": _sha256(args.input),
            **_summary(c), "complex": complex_to_dict(c)}


def _run_realize(args) -> dict:
    doc = _load_json(args.input)
    faces = doc["faces"] if isinstance(doc, dict) else doc
    ground = doc.get("n") if isinstance(doc, dict) else None
    c, script = realize_boundary(faces, n=ground)
    return {"input": args.input, "sha256": _sha256(args.input),
            **_summary(c), "complex": complex_to_dict(c),
            "script": script_to_list(script)}


def _run_newton(args) -> dict:
    np_ = newton_polyhedron(_points_of(_load_json(args.input)))
    report = w0_report(np_)
    if args.variant != "both":
        report["predicted_variant"] = args.variant
        report["predicted_count"] = predicted_sphere_count(np_, args.variant)
    model = resolution_complex(np_)
    report["model_complex"] = complex_to_dict(model)
    report["input"] = args.input
    report["sha256"] = _sha256(args.input)
    return report


def _run_torus_boundary(args) -> dict:
    c = torus_hypersurface_boundary_complex(_points_of(_load_json(args.input)))
    h = homology(c, reduced=True)
    return {"input": args.input, "sha256": _sha256(args.input),
            **_summary(c),
            "reduced_homology": h.as_json(),
            "complex": complex_to_dict(c)}


def _run_certify(args) -> dict:
    c = complex_from_dict(_load_json(args.input))
    cert = wedge_certificate(c, args.sphere_dim)
    return {"input": args.input, "sha256": _sha256(args.input),
            "sphere_dim": args.sphere_dim,
            "verdict": str(cert),
            "status": cert.status, "count": cert.count,
            "detail": cert.detail, "witness": cert.witness}


def _render_text(doc, indent=0) -> str:
    pad = "  " * indent
    lines = []
    if isinstance(doc, dict):
        for k in sorted(doc):
            v = doc[k]
            if isinstance(v, (dict, list)):
                lines.append(f"{pad}{k}:")
                lines.append(_render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {v}")
    elif isinstance(doc, list):
        for v in doc:
            if isinstance(v, (dict, list)):
                lines.append(f"{pad}-")
                lines.append(_render_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {v}")
    else:
        lines.append(f"{pad}{doc}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sncx",
        description="dual complex engine: homology, blowup moves, "
                    "toric links, Newton polyhedron pipelines",
        epilog=FORMATS_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=f"sncx {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("json", "text"), default="json")

    p = sub.add_parser("homology", help="Betti numbers and torsion of complexes")
    p.add_argument("inputs", nargs="+")
    p.add_argument("--reduced", action="store_true")
    p.add_argument("--jobs", type=int, default=1)
    common(p)
    p.set_defaults(fn=_run_homology)

    p = sub.add_parser("transform", help="replay a blowup script with a homology log")
    p.add_argument("complex")
    p.add_argument("script")
    common(p)
    p.set_defaults(fn=_run_transform)

    p = sub.add_parser("dual", help="dual complex of a strata description")
    p.add_argument("input")
    common(p)
    p.set_defaults(fn=_run_dual)

    p = sub.add_parser("toric-link", help="link of the origin of a fan")
    p.add_argument("input")
    common(p)
    p.set_defaults(fn=_run_toric_link)

    p = sub.add_parser("realize", help="realize a subset-closed complex as a boundary complex")
    p.add_argument("input")
    common(p)
    p.set_defaults(fn=_run_realize)

    p = sub.add_parser("newton", help="resolution complex pipeline of a monomial support")
    p.add_argument("input")
    p.add_argument("--variant", choices=("literal", "interior", "both"),
                   default="both")
    common(p)
    p.set_defaults(fn=_run_newton)

    p = sub.add_parser("torus-boundary", help="boundary complex of a nondegenerate torus hypersurface")
    p.add_argument("input")
    common(p)
    p.set_defaults(fn=_run_torus_boundary)

    p = sub.add_parser("certify", help="wedge-of-spheres certificate for a complex")
    p.add_argument("input")
    p.add_argument("--sphere-dim", type=int, required=True)
    common(p)
    p.set_defaults(fn=_run_certify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = args.fn(args)
    except SncxError as exc:
        err = {"error": {"type": type(exc).__name__, "message": str(exc)}}
        sys.stdout.write(dumps(err) if args.format == "json"
                         else _render_text(err) + "\n")
        return 1
    except FileNotFoundError as exc:
        sys.stderr.write(f"sncx: no such input: {exc.filename}\n")
        return 2
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        err = {"error": {"type": type(exc).__name__, "message": str(exc)}}
        sys.stdout.write(dumps(err) if args.format == "json"
                         else _render_text(err) + "\n")
        return 1
    envelope = {"tool": "sncx", "version": __version__,
                "command": args.command, "report": report}
    if args.format == "json":
        sys.stdout.write(dumps(envelope))
    else:
        sys.stdout.write(_render_text(envelope) + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
