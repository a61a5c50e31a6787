"""Command-line front end: ``padic-amoeba --matrix-b B.txt --prime 3 --mode components``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from .amoeba2d import assemble_amoeba, branch_pieces, build_digit_tree, zeros
from .arrangement import count_complement
from .checks import oracle_check
from .errors import (
    AmoebaError,
    DegenerateInputError,
    InvalidPrimeError,
    InvalidSupportError,
    InvariantError,
    ParseError,
    ResolutionError,
)
from .extremal import extremal_family, extremal_map, search_prime, target_components
from .linalg import Matrix, build_ahat, format_matrix, integer_kernel, matrix_to_json, parse_matrix
from .padic import check_prime, digits
from .render import emit_svg
from .tropical import DiscriminantMap

log = logging.getLogger("padic_amoeba")

MODES = ("amoeba", "tree", "components", "extremal", "oracle-check")
FORMATS = ("json", "svg", "dot", "text")
EXIT_OK, EXIT_PARSE, EXIT_DEGENERATE, EXIT_INVARIANT = 0, 2, 3, 4


@dataclass(frozen=True)
class JobSpec:
    """One pipeline run.  ``source`` says whether ``matrix`` is a support ``A`` or a kernel ``B``."""

    mode: str
    prime: Optional[int] = None
    source: Optional[str] = None
    matrix: Optional[Matrix] = None
    fmt: Optional[str] = None
    out: Optional[Path] = None
    extremal_k: Optional[int] = None
    samples: int = 1000
    seed: int = 0

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.fmt is not None and self.fmt not in FORMATS:
            raise ValueError(f"unknown format {self.fmt!r}")
        if self.prime is not None:
            check_prime(self.prime)
        if self.mode == "extremal":
            if self.extremal_k is None:
                raise ValueError("extremal mode needs --extremal-k")
        else:
            if self.source not in ("A", "B") or self.matrix is None:
                raise ValueError("exactly one of --matrix-a / --matrix-b is required")
            if self.prime is None:
                raise ValueError("--prime is required")

    @property
    def format(self) -> str:
        if self.fmt:
            return self.fmt
        return {"tree": "dot"}.get(self.mode, "json")


@dataclass
class JobResult:
    status: int
    output: str = ""
    message: str = ""


# ---------------------------------------------------------------------------


def _kernel_and_n(spec: JobSpec) -> tuple[DiscriminantMap, int]:
    if spec.source == "A":
        A = spec.matrix
        B = integer_kernel(build_ahat(A))
        n = A.nrows
    else:
        B = spec.matrix
        if not B.is_integral():
            raise InvalidSupportError("the kernel matrix must be integral")
        n = B.nrows - B.ncols - 1
    if B.ncols != 2:
        raise DegenerateInputError(
            f"the planar pipeline needs a kernel with 2 columns (got {B.ncols}); "
            "the support must have n rows and n + 3 columns"
        )
    for i in range(B.nrows):
        if all(x == 0 for x in B.row(i)):
            raise DegenerateInputError(f"row {i} of B is zero, so the support has a pyramid point")
    return DiscriminantMap.from_kernel(B, spec.prime), n


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _render_amoeba(dmap: DiscriminantMap, fmt: str) -> str:
    G = assemble_amoeba(dmap)
    if fmt == "svg":
        return emit_svg(G, branches=branch_pieces(dmap))
    if fmt == "json":
        return _dump(G.to_json_obj())
    if fmt == "text":
        lines = [f"{len(G.vertices)} vertices, {len(G.segments)} segments, {len(G.rays)} rays"]
        lines += [f"segment ({a[0]}, {a[1]}) -- ({b[0]}, {b[1]})" for a, b in G.segment_points()]
        lines += [f"ray ({b[0]}, {b[1]}) dir ({d[0]}, {d[1]})" for b, d in G.ray_points()]
        return "\n".join(lines) + "\n"
    raise ValueError(f"format {fmt} is not available for the amoeba")


def _render_tree(dmap: DiscriminantMap, fmt: str) -> str:
    Z = zeros(dmap)
    tree = build_digit_tree(Z, dmap.prime)
    if fmt == "dot":
        return tree.to_dot()
    depths = [n.depth for n in tree.nodes() if not n.is_leaf]
    lo, hi = (min(depths), max(depths)) if depths else (0, 0)
    table = {str(i): digits(z, dmap.prime, lo, hi + 1) for i, z in tree.zeros.items()}
    if fmt == "json":
        return _dump({"zeros": {str(i): str(z) for i, z in tree.zeros.items()},
                      "digit_range": [lo, hi + 1], "digits": table, "shape": tree.shape()})
    if fmt == "text":
        lines = [f"digits at indices {lo}..{hi + 1}"]
        lines += [f"z{i} = {tree.zeros[int(i)]}: {row}" for i, row in table.items()]
        return "\n".join(lines) + "\n"
    raise ValueError(f"format {fmt} is not available for the tree")


def _components(dmap: DiscriminantMap, n: int, fmt: str) -> str:
    G = assemble_amoeba(dmap)
    rep = count_complement(G, n).report()
    rep.update(n=n, edges=G.edge_count, edge_bound=2 * n + 4)
    if fmt == "json":
        return _dump(rep)
    if fmt == "text":
        return "".join(f"{k}: {rep[k]}\n" for k in sorted(rep))
    raise ValueError(f"format {fmt} is not available for a component report")


def _extremal(spec: JobSpec, fmt: str) -> tuple[str, str]:
    k = spec.extremal_k
    if spec.prime is not None:
        p, searched = spec.prime, None
    else:
        found = search_prime(k)
        if found.prime is None:
            raise InvariantError(f"no prime <= 100 reaches {target_components(k)} components for k={k}")
        p, searched = found.prime, [list(t) for t in found.tried]
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        fam = extremal_family(k, p)
    for w in caught:
        log.warning("%s", w.message)
    dmap = extremal_map(k, p)
    G = assemble_amoeba(dmap)
    rep = count_complement(G, 2 * k - 1).report()
    note = f"k={k} p={p}: {rep['total']} components (target {target_components(k)})"
    if fmt == "svg":
        return emit_svg(G, branches=branch_pieces(dmap)), note
    obj = {"k": k, "prime": p, "target": target_components(k), "report": rep,
           "A": matrix_to_json(fam.A), "B": matrix_to_json(fam.B), "searched": searched}
    if fmt == "json":
        return _dump(obj), note
    if fmt == "text":
        return (f"{note}\nA =\n{format_matrix(fam.A).rstrip()}\nB =\n{format_matrix(fam.B).rstrip()}\n"
                + "".join(f"{key}: {rep[key]}\n" for key in sorted(rep))), note
    raise ValueError(f"format {fmt} is not available for extremal mode")


def run(spec: JobSpec) -> JobResult:
    """Run one job; never raises for input problems, the status code says what went wrong."""
    fmt = spec.format
    try:
        if spec.mode == "extremal":
            text, note = _extremal(spec, fmt)
            log.info(note)
        else:
            dmap, n = _kernel_and_n(spec)
            if spec.mode == "amoeba":
                text = _render_amoeba(dmap, fmt)
            elif spec.mode == "tree":
                text = _render_tree(dmap, fmt)
            elif spec.mode == "components":
                text = _components(dmap, n, fmt)
            else:
                rep = oracle_check(dmap, spec.samples, spec.seed)
                text = _dump(rep.to_json_obj())
                if not rep.ok:
                    return JobResult(EXIT_INVARIANT, text, "oracle check failed")
    except ParseError as e:
        return JobResult(EXIT_PARSE, message=f"parse error: {e}")
    except (InvalidPrimeError, ValueError) as e:
        if isinstance(e, (InvalidSupportError, ResolutionError)):
            return JobResult(EXIT_DEGENERATE, message=f"degenerate input: {e}")
        return JobResult(EXIT_PARSE, message=f"bad argument: {e}")
    except DegenerateInputError as e:
        return JobResult(EXIT_DEGENERATE, message=f"degenerate input: {e}")
    except (InvariantError, AmoebaError) as e:
        return JobResult(EXIT_INVARIANT, message=f"internal invariant failed: {e}")
    if spec.out is not None:
        spec.out.write_text(text)
    return JobResult(EXIT_OK, text)


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="padic-amoeba",
        description="Exact p-adic amoebas of reduced A-discriminants (planar case).",
    )
    src = ap.add_argument_group("input")
    src.add_argument("--matrix-a", type=Path, metavar="FILE", help="support matrix A (n x (n+3))")
    src.add_argument("--matrix-b", type=Path, metavar="FILE", help="kernel matrix B ((n+3) x 2)")
    ap.add_argument("--prime", type=int, metavar="P")
    ap.add_argument("--mode", choices=MODES, default="components")
    ap.add_argument("--out", type=Path, metavar="FILE", help="write output here instead of stdout")
    ap.add_argument("--format", choices=FORMATS, dest="fmt")
    ap.add_argument("--extremal-k", type=int, metavar="K")
    ap.add_argument("--samples", type=int, default=1000, metavar="N")
    ap.add_argument("--seed", type=int, default=0, metavar="S")
    ap.add_argument("-v", "--verbose", action="store_true")
    return ap


def _read(path: Path) -> Matrix:
    text = sys.stdin.read() if str(path) == "-" else path.read_text()
    return parse_matrix(text)


def spec_from_args(args: argparse.Namespace) -> JobSpec:
    source, matrix = None, None
    if args.matrix_b is not None:
        if args.matrix_a is not None:
            log.warning("both --matrix-a and --matrix-b given; using B and ignoring A")
        source, matrix = "B", _read(args.matrix_b)
    elif args.matrix_a is not None:
        source, matrix = "A", _read(args.matrix_a)
    return JobSpec(
        mode=args.mode, prime=args.prime, source=source, matrix=matrix, fmt=args.fmt,
        out=args.out, extremal_k=args.extremal_k, samples=args.samples, seed=args.seed,
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        spec = spec_from_args(args)
    except ParseError as e:
        print(f"padic-amoeba: parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as e:
        print(f"padic-amoeba: cannot read input: {e}", file=sys.stderr)
        return EXIT_PARSE
    except ValueError as e:
        print(f"padic-amoeba: {e}", file=sys.stderr)
        return EXIT_PARSE
    t0 = time.perf_counter()
    result = run(spec)
    log.info("finished in %.3f s", time.perf_counter() - t0)
    if result.message:
        print(f"padic-amoeba: {result.message}", file=sys.stderr)
    if result.output and spec.out is None:
        sys.stdout.write(result.output)
    return result.status


if __name__ == "__main__":
    sys.exit(main())
