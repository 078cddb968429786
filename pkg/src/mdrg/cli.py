"""Command-line front end.

One command per process.  Reports are JSON on stdout with sorted keys,
so identical inputs produce byte-identical output; timing and
diagnostics go to stderr.  Exit codes: 0 the property is certified,
1 the property fails (a witness is in the report), 2 input or usage
error.  ``MDRG_THREADS`` caps internal parallelism (0 = auto).
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from fractions import Fraction
from typing import Optional

from . import __version__
from .certificates import Certificate
from .families import (cartesian_product, cell24, complete, cycle, gen24cell,
                       hamming_graph, pauli_scheme4, symmetrize)
from .graphs import (ColoredGraph, DisconnectedGraphError, GraphStructureError,
                     m_distance_table)
from .orders import AlphaBeta, MonomialOrder, PartialOrder
from .ppoly import (ExtractionError, IncompatibleOrderPairError, Labeling,
                    ab_region_for_scheme, boundary_check, certify_ppoly,
                    certify_ppoly_refined, certify_type_ab,
                    discover_labelings, extract_polynomials,
                    verify_recurrences)
from .schemes import (IntersectionTensor, SchemeClasses, intersection_tensor,
                      label_text, mdrg_check, verify_scheme_axioms)
from .serialize import (InputFormatError, dump_json, graph_from_dict,
                        graph_to_dict, load_document, polynomials_to_dict,
                        scheme_to_dict, table_to_dict, tensor_to_dict)


class UsageError(Exception):
    """Bad flags, parameters, or input documents: exit code 2."""


def _threads() -> int:
    raw = os.environ.get("MDRG_THREADS", "1")
    try:
        value = int(raw)
    except ValueError:
        raise UsageError("MDRG_THREADS must be an integer, got %r" % raw)
    if value < 0:
        raise UsageError("MDRG_THREADS must be >= 0")
    if value == 0:
        return os.cpu_count() or 1
    return value


def _parse_order(text: str) -> MonomialOrder:
    try:
        return MonomialOrder.parse(text)
    except ValueError as exc:
        raise UsageError("bad --order: %s" % exc)


def _parse_partial(text: str) -> PartialOrder:
    try:
        return PartialOrder.parse(text)
    except ValueError as exc:
        raise UsageError("bad --partial: %s" % exc)


def _parse_labeling(text: Optional[str]) -> Optional[Labeling]:
    if text is None:
        return None
    try:
        return Labeling.parse(text)
    except ValueError as exc:
        raise UsageError("bad --labeling: %s" % exc)


def _load(path: str):
    try:
        return load_document(path)
    except OSError as exc:
        raise UsageError("cannot read %s: %s" % (path, exc.strerror or exc))
    except (InputFormatError, ValueError) as exc:
        raise UsageError(str(exc))


def _report(command: str, inputs: dict, certificates: Optional[dict] = None,
            results: Optional[dict] = None) -> dict:
    doc = {"version": __version__, "command": command, "inputs": inputs}
    if certificates:
        doc["certificates"] = {name: cert.to_dict()
                               for name, cert in certificates.items()}
    if results is not None:
        doc["results"] = results
    return doc


def _verdict_code(certificates: dict) -> int:
    return 0 if all(cert.passed for cert in certificates.values()) else 1


# -- generate ---------------------------------------------------------------------

def _generate_document(family: str, scheme_path: Optional[str]) -> dict:
    name, _, params = family.partition(":")
    try:
        if name == "cycle":
            return graph_to_dict(cycle(int(params)))
        if name == "complete":
            return graph_to_dict(complete(int(params)))
        if name == "hamming":
            k, q = (int(x) for x in params.split(","))
            return graph_to_dict(hamming_graph(k, q))
        if name == "cartesian":
            paths = [p for p in params.split(",") if p]
            if len(paths) < 2:
                raise UsageError("cartesian needs at least two graph files")
            factors = []
            for p in paths:
                doc = _load(p)
                if not isinstance(doc, ColoredGraph):
                    raise UsageError("%s is not a graph file" % p)
                factors.append(doc)
            return graph_to_dict(cartesian_product(factors))
        if name == "cell24":
            return graph_to_dict(cell24())
        if name == "pauli4":
            return scheme_to_dict(pauli_scheme4())
        if name == "symmetrize":
            if scheme_path is None:
                raise UsageError("symmetrize:k reads a scheme file; "
                                 "give one with --scheme")
            base = _load(scheme_path)
            if not isinstance(base, SchemeClasses):
                raise UsageError("%s is not a scheme file" % scheme_path)
            return scheme_to_dict(symmetrize(base, int(params)))
        if name == "gen24cell":
            ell_text, _, s_text = params.partition(",")
            return tensor_to_dict(gen24cell(Fraction(ell_text), Fraction(s_text)))
    except UsageError:
        raise
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError("family %r: %s" % (family, exc))
    raise UsageError("unknown family %r; know cycle:n, complete:n, hamming:k,q, "
                     "cartesian:file1,file2,..., cell24, gen24cell:ell,s, "
                     "pauli4, symmetrize:k" % family)


def cmd_generate(args: argparse.Namespace) -> tuple[dict, int]:
    document = _generate_document(args.family, args.scheme)
    if args.out:
        with open(args.out, "w", encoding="ascii") as handle:
            handle.write(dump_json(document))
        return {}, 0
    return document, 0


# -- distances ---------------------------------------------------------------------

def cmd_distances(args: argparse.Namespace) -> tuple[dict, int]:
    order = _parse_order(args.order)
    doc = _load(args.input)
    if not isinstance(doc, ColoredGraph):
        raise UsageError("%s is not a graph file" % args.input)
    try:
        table = m_distance_table(doc, order, threads=_threads())
    except DisconnectedGraphError as exc:
        raise UsageError(str(exc))
    results = table_to_dict(table)
    results["size"] = len(table.realized)
    return _report("distances", {"input": args.input, "order": order.as_text()},
                   results=results), 0


# -- certify-mdrg ------------------------------------------------------------------

def cmd_certify_mdrg(args: argparse.Namespace) -> tuple[dict, int]:
    order = _parse_order(args.order)
    doc = _load(args.input)
    if not isinstance(doc, ColoredGraph):
        raise UsageError("%s is not a graph file" % args.input)
    try:
        result = mdrg_check(doc, order, threads=_threads())
    except DisconnectedGraphError as exc:
        raise UsageError(str(exc))
    certificates = {"mdrg": result.certificate}
    results = {}
    if result.tensor is not None:
        results["classes"] = sorted(lab.as_text() for lab in result.tensor.labels)
        results["valencies"] = {
            lab.as_text(): str(result.tensor.valency(lab))
            for lab in result.tensor.labels}
    return _report("certify-mdrg", {"input": args.input, "order": order.as_text()},
                   certificates, results), _verdict_code(certificates)


# -- verify-scheme -----------------------------------------------------------------

def cmd_verify_scheme(args: argparse.Namespace) -> tuple[dict, int]:
    doc = _load(args.input)
    certificates: dict[str, Certificate] = {}
    if isinstance(doc, ColoredGraph):
        raise UsageError("%s is a graph file; verify-scheme takes class "
                         "matrices or an intersection tensor" % args.input)
    if isinstance(doc, SchemeClasses):
        certificates["axioms"] = verify_scheme_axioms(doc)
        if certificates["axioms"].passed:
            certificates["numbers"] = intersection_tensor(doc).validate(
                strict_integral=True)
    else:
        certificates["numbers"] = doc.validate()
    return _report("verify-scheme", {"input": args.input},
                   certificates), _verdict_code(certificates)


# -- certify-ppoly -----------------------------------------------------------------

def _tensor_from_document(doc, labeling: Optional[Labeling], order: MonomialOrder,
                          certificates: dict) -> Optional[IntersectionTensor]:
    """Reduce any input document to a labeled tensor; None means a
    certificate already failed and the caller should stop at exit 1."""
    if isinstance(doc, ColoredGraph):
        result = mdrg_check(doc, order, threads=_threads())
        certificates["mdrg"] = result.certificate
        if result.tensor is None:
            return None
        tensor = result.tensor
    elif isinstance(doc, SchemeClasses):
        certificates["axioms"] = verify_scheme_axioms(doc)
        if not certificates["axioms"].passed:
            return None
        tensor = intersection_tensor(doc)
    else:
        tensor = doc
    if labeling is not None:
        try:
            tensor = labeling.apply(tensor)
        except ValueError as exc:
            raise UsageError("bad --labeling: %s" % exc)
    return tensor


def cmd_certify_ppoly(args: argparse.Namespace) -> tuple[dict, int]:
    order = _parse_order(args.order)
    partial = _parse_partial(args.partial) if args.partial else None
    labeling = _parse_labeling(args.labeling)
    inputs = {"input": args.input, "order": order.as_text()}
    if partial is not None:
        inputs["partial"] = partial.as_text()
    if labeling is not None:
        inputs["labeling"] = labeling.as_text()
    certificates: dict[str, Certificate] = {}
    tensor = _tensor_from_document(_load(args.input), labeling, order,
                                   certificates)
    if tensor is None:
        return _report("certify-ppoly", inputs, certificates), 1

    try:
        if partial is not None:
            certificates["ppoly"] = certify_ppoly_refined(tensor, order, partial)
        else:
            certificates["ppoly"] = certify_ppoly(tensor, order)
        if args.boundary:
            certificates["boundary"] = boundary_check(
                tensor, order=None if partial else order, partial=partial)
    except IncompatibleOrderPairError as exc:
        raise UsageError(str(exc))
    except ValueError as exc:
        raise UsageError(str(exc))

    results: dict = {"domain": sorted(lab.as_text() for lab in tensor.labels)}
    want_polys = args.polys is not None or args.recurrences
    if want_polys and certificates["ppoly"].passed:
        try:
            polys, extraction = extract_polynomials(
                tensor, order=None if partial else order, partial=partial)
        except ExtractionError as exc:
            raise UsageError(str(exc))
        certificates["extraction"] = extraction
        results["polynomials"] = polynomials_to_dict(polys)["polynomials"]
        if args.polys:
            with open(args.polys, "w", encoding="ascii") as handle:
                handle.write(dump_json(polynomials_to_dict(polys)))
        if args.recurrences:
            certificates["recurrences"] = verify_recurrences(polys, tensor,
                                                             partial)
    elif want_polys:
        print("skipping extraction: certification failed", file=sys.stderr)
    return _report("certify-ppoly", inputs, certificates,
                   results), _verdict_code(certificates)


# -- type-ab -----------------------------------------------------------------------

def cmd_type_ab(args: argparse.Namespace) -> tuple[dict, int]:
    labeling = _parse_labeling(args.labeling)
    inputs = {"input": args.input}
    if labeling is not None:
        inputs["labeling"] = labeling.as_text()
    parameters = args.alpha is not None or args.beta is not None
    if args.region == parameters:
        raise UsageError("give either --region or both --alpha and --beta")
    certificates: dict[str, Certificate] = {}
    doc = _load(args.input)
    if isinstance(doc, ColoredGraph):
        raise UsageError("type-ab takes a scheme or tensor file")
    if isinstance(doc, SchemeClasses):
        certificates["axioms"] = verify_scheme_axioms(doc)
        if not certificates["axioms"].passed:
            return _report("type-ab", inputs, certificates), 1
        tensor = intersection_tensor(doc)
    else:
        tensor = doc
    if labeling is not None:
        try:
            tensor = labeling.apply(tensor)
        except ValueError as exc:
            raise UsageError("bad --labeling: %s" % exc)

    if args.region:
        try:
            region = ab_region_for_scheme(tensor)
        except ValueError as exc:
            raise UsageError(str(exc))
        results = {"region": "empty" if region is None else region.as_text()}
        if region is not None:
            results["alpha"] = region.alpha.as_text()
            results["beta"] = region.beta.as_text()
        code = _verdict_code(certificates) if region is not None else 1
        return _report("type-ab", inputs, certificates, results), code

    if args.alpha is None or args.beta is None:
        raise UsageError("give both --alpha and --beta")
    try:
        ab = AlphaBeta(Fraction(args.alpha), Fraction(args.beta))
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(str(exc))
    inputs["alpha"] = str(ab.alpha)
    inputs["beta"] = str(ab.beta)
    try:
        certificates["type-ab"] = certify_type_ab(tensor, ab)
    except ValueError as exc:
        raise UsageError(str(exc))
    return _report("type-ab", inputs, certificates), _verdict_code(certificates)


# -- discover ----------------------------------------------------------------------

def cmd_discover(args: argparse.Namespace) -> tuple[dict, int]:
    order = _parse_order(args.order)
    doc = _load(args.input)
    if not isinstance(doc, SchemeClasses):
        raise UsageError("discover takes a scheme file with class matrices")
    try:
        found = discover_labelings(doc, args.m, order)
    except ValueError as exc:
        raise UsageError(str(exc))
    results = {
        "count": len(found),
        "labelings": [{"generators": [label_text(g) for g in d.generators],
                       "labeling": d.labeling.as_text()} for d in found],
    }
    inputs = {"input": args.input, "m": args.m, "order": order.as_text()}
    return _report("discover", inputs, results=results), 0 if found else 1


# -- Parser ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mdrg",
        description="exact m-distance, distance-regularity, and P-polynomial "
                    "certification for edge-colored graphs and association schemes")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("generate", help="emit a named graph/scheme/tensor family")
    p.add_argument("family", help="cycle:n | complete:n | hamming:k,q | "
                                  "cartesian:f1,f2,... | cell24 | "
                                  "gen24cell:ell,s | pauli4 | symmetrize:k")
    p.add_argument("--scheme", help="base scheme file for symmetrize:k")
    p.add_argument("--out", help="write here instead of stdout")
    p.set_defaults(handler=cmd_generate)

    p = sub.add_parser("distances", help="all-pairs m-distance table")
    p.add_argument("input", help="graph file")
    p.add_argument("--order", required=True)
    p.set_defaults(handler=cmd_distances)

    p = sub.add_parser("certify-mdrg", help="certify m-distance-regularity")
    p.add_argument("input", help="graph file")
    p.add_argument("--order", required=True)
    p.set_defaults(handler=cmd_certify_mdrg)

    p = sub.add_parser("verify-scheme", help="association scheme axioms")
    p.add_argument("input", help="scheme or tensor file")
    p.set_defaults(handler=cmd_verify_scheme)

    p = sub.add_parser("certify-ppoly", help="multivariate P-polynomial property")
    p.add_argument("input", help="graph, scheme, or tensor file")
    p.add_argument("--order", required=True)
    p.add_argument("--partial", help="refine the window: ab:a,b | componentwise")
    p.add_argument("--labeling", help="tag=index map, e.g. 'A0=0,0;A1=1,0'")
    p.add_argument("--boundary", action="store_true",
                   help="also check the boundary span condition")
    p.add_argument("--polys", metavar="FILE",
                   help="extract defining polynomials and write them here")
    p.add_argument("--recurrences", action="store_true",
                   help="re-verify the three-term-style recurrences")
    p.set_defaults(handler=cmd_certify_ppoly)

    p = sub.add_parser("type-ab", help="type-(alpha,beta) certification")
    p.add_argument("input", help="scheme or tensor file")
    p.add_argument("--labeling")
    p.add_argument("--alpha", help="rational in [0,1]")
    p.add_argument("--beta", help="rational in [0,1)")
    p.add_argument("--region", action="store_true",
                   help="compute the exact feasible (alpha,beta) region")
    p.set_defaults(handler=cmd_type_ab)

    p = sub.add_parser("discover", help="find P-polynomial labelings of a scheme")
    p.add_argument("input", help="scheme file")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--order", required=True)
    p.set_defaults(handler=cmd_discover)

    for sp in sub.choices.values():
        sp.add_argument("--quiet", action="store_true",
                        help="no output, just the exit code")
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    start = time.perf_counter()
    try:
        report, code = args.handler(args)
    except UsageError as exc:
        if not args.quiet:
            print("error: %s" % exc, file=sys.stderr)
        return 2
    except (GraphStructureError, InputFormatError) as exc:
        if not args.quiet:
            print("error: %s" % exc, file=sys.stderr)
        return 2
    elapsed = time.perf_counter() - start
    if not args.quiet:
        if report:
            sys.stdout.write(dump_json(report))
        print("elapsed: %.3fs" % elapsed, file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
