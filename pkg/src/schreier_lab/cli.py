"""Command line front end.

Each command group mirrors one library module.  Results print as ``key =
value`` lines by default or as a sorted, indented JSON document with
``--format json``; exact rationals cross the boundary as ``p/q`` strings.
Vector-valued flags accept inline JSON or ``@path`` to read a file.

The ``avg`` and ``norm`` groups run their primary operation when no
sub-operation is named, so ``avg --xi w --stream all --n 5`` and
``norm --space schreier --xi 1 --vec @x.json`` work as written.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .averages import (AmbiguousReconstructionError, ExplicitMethod,
                       RepeatedAverages, apply, cesaro_reweight, check_nibcc,
                       pair_sum, repeated_avg, successor_pair_prefix,
                       support_size)
from .budget import BudgetExceededError
from .ordinal import (Ordinal, classify, default_fundamental_seq,
                      parse as parse_ordinal)
from .quantities import (CanonicalBasis, ExplicitSequence, SeqSpec,
                         Subsequence, WeightedBasis, ca_window, cca_window,
                         cca_xi_tilde, cca_xi_tilde_sup, cca_xi_window,
                         f_delta, large_check, prop_formula, sm_constant)
from .reports import Report
from .schreier import (FinSet, enumerate_family, is_member, is_member_image,
                       is_member_oracle, threshold, trace_member)
from .spaces import NormSpec, coordinate_sum_functional, norm, norm_oracle
from .streams import IndexStream, parse_stream
from .vectors import ProbVector, RatVec, format_fraction, parse_fraction
from .verify import (verify_example_schreier, verify_example_star,
                     verify_prop_formula)

_SPACE_KINDS = ("l1", "l2", "sup", "schreier", "star", "baernstein")


# -- input and output helpers ----------------------------------------------------


def _read_arg(text: str) -> str:
    if text.startswith("@"):
        return Path(text[1:]).read_text()
    return text


def _load_vector(text: str) -> RatVec:
    return RatVec.from_json(_read_arg(text))


def _load_vector_list(text: str) -> list[RatVec]:
    data = json.loads(_read_arg(text))
    if not isinstance(data, list):
        raise ValueError("expected a JSON list of vectors")
    return [RatVec.from_map(item["entries"]) for item in data]


def _space_spec(space: str, xi_text: str | None) -> NormSpec:
    if xi_text is None:
        return NormSpec.parse(space)
    return NormSpec.parse(f"{space}:{xi_text}")


def _ambient_spec(args) -> NormSpec:
    order = getattr(args, "space_xi", None) or getattr(args, "xi", None)
    if args.space in ("l1", "l2", "sup"):
        return NormSpec.parse(args.space)
    if order is None:
        raise ValueError(f"--space {args.space} needs --space-xi")
    return _space_spec(args.space, order)


def _sequence(args, ambient: NormSpec) -> SeqSpec:
    base: SeqSpec
    if getattr(args, "weights", None) is not None:
        weights = [parse_fraction(w) for w in args.weights.split(",")]
        base = WeightedBasis(ambient, weights, parse_fraction(args.weight_tail))
    elif args.seq == "basis":
        base = CanonicalBasis(ambient)
    elif args.seq.startswith("@"):
        base = ExplicitSequence(ambient, _load_vector_list(args.seq))
    else:
        raise ValueError(f"unknown sequence {args.seq!r}; use basis or @file")
    if getattr(args, "along", None) is not None:
        base = Subsequence(base, parse_stream(args.along))
    return base


def _value_fields(value) -> dict:
    exact = format_fraction(value) if isinstance(value, Fraction) else None
    return {"value": exact, "approx": float(value)}


def _text_lines(payload: dict, prefix: str = "") -> list[str]:
    lines = []
    for key in sorted(payload):
        value = payload[key]
        name = prefix + str(key)
        if isinstance(value, dict):
            lines.extend(_text_lines(value, name + "."))
        elif isinstance(value, (list, tuple)):
            lines.append(f"{name} = [{', '.join(str(v) for v in value)}]")
        elif isinstance(value, bool) or value is None:
            lines.append(f"{name} = {json.dumps(value)}")
        else:
            lines.append(f"{name} = {value}")
    return lines


def _emit(args, payload: dict) -> None:
    if args.format == "json":
        sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    else:
        sys.stdout.write("\n".join(_text_lines(payload)) + "\n")


def _emit_report(args, report: Report) -> int:
    if args.format == "json":
        sys.stdout.write(report.json_bytes().decode())
    else:
        sys.stdout.write(report.render_text())
    return report.exit_code


# -- ord -------------------------------------------------------------------------


def _cmd_ord_parse(args) -> int:
    x = parse_ordinal(args.text)
    _emit(args, {"ordinal": str(x), "kind": classify(x).kind})
    return 0


def _cmd_ord_classify(args) -> int:
    x = parse_ordinal(args.xi)
    kind, pred = classify(x)
    _emit(args, {"ordinal": str(x), "kind": kind,
                 "predecessor": None if pred is None else str(pred)})
    return 0


def _cmd_ord_fseq(args) -> int:
    x = parse_ordinal(args.xi)
    values = [str(default_fundamental_seq(x, n)) for n in range(1, args.n + 1)]
    _emit(args, {"ordinal": str(x), "n": args.n, "sequence": values})
    return 0


# -- schreier --------------------------------------------------------------------


def _cmd_schreier_member(args) -> int:
    F = FinSet.parse(args.set)
    member = is_member(parse_ordinal(args.xi), F)
    _emit(args, {"xi": args.xi, "set": str(F), "member": member})
    return 0


def _cmd_schreier_oracle(args) -> int:
    F = FinSet.parse(args.set)
    member = is_member_oracle(parse_ordinal(args.xi), F)
    _emit(args, {"xi": args.xi, "set": str(F), "member": member})
    return 0


def _cmd_schreier_enum(args) -> int:
    sets = [str(F) for F in enumerate_family(parse_ordinal(args.xi),
                                             args.max_value)]
    payload = {"xi": args.xi, "max_value": args.max_value, "count": len(sets)}
    if args.limit is not None:
        sets = sets[:args.limit]
    payload["sets"] = sets
    _emit(args, payload)
    return 0


def _cmd_schreier_image(args) -> int:
    F = FinSet.parse(args.set)
    member = is_member_image(parse_ordinal(args.xi), parse_stream(args.stream), F)
    _emit(args, {"xi": args.xi, "stream": args.stream, "set": str(F),
                 "member": member})
    return 0


def _cmd_schreier_trace(args) -> int:
    F = FinSet.parse(args.set)
    member = trace_member(parse_ordinal(args.xi), parse_stream(args.stream), F)
    _emit(args, {"xi": args.xi, "stream": args.stream, "set": str(F),
                 "member": member})
    return 0


def _cmd_schreier_threshold(args) -> int:
    n = threshold(parse_ordinal(args.zeta), parse_ordinal(args.xi),
                  args.max_value)
    _emit(args, {"zeta": args.zeta, "xi": args.xi,
                 "max_value": args.max_value, "threshold": n})
    return 0


# -- avg -------------------------------------------------------------------------


class _UnitBasis:
    """The canonical basis as a bare sequence, for averaging against."""

    def element(self, n: int) -> RatVec:
        return RatVec.unit(n)


def _avg_sequence(text: str):
    if text == "basis":
        return _UnitBasis()
    if text.startswith("@"):
        return _load_vector_list(text)
    raise ValueError(f"unknown sequence {text!r}; use basis or @file")


def _nibcc_inputs(args) -> tuple[list[ProbVector], list[ProbVector]]:
    if args.z is not None or args.y is not None:
        if args.z is None or args.y is None:
            raise ValueError("--z and --y go together")
        z = [ProbVector(v.entries) for v in _load_vector_list(args.z)]
        y = [ProbVector(v.entries) for v in _load_vector_list(args.y)]
        return z, y
    return successor_pair_prefix(parse_ordinal(args.xi),
                                 parse_stream(args.stream), args.count)


def _cmd_avg_vector(args) -> int:
    vec = repeated_avg(parse_ordinal(args.xi), parse_stream(args.stream), args.n)
    _emit(args, {"xi": args.xi, "stream": args.stream, "n": args.n,
                 "size": len(vec), "vector": vec.to_map()})
    return 0


def _cmd_avg_size(args) -> int:
    size = support_size(parse_ordinal(args.xi), parse_stream(args.stream), args.n)
    _emit(args, {"xi": args.xi, "stream": args.stream, "n": args.n,
                 "size": size})
    return 0


def _cmd_avg_apply(args) -> int:
    method = RepeatedAverages(parse_ordinal(args.xi), parse_stream(args.stream))
    out = apply(method, _avg_sequence(args.seq), args.n)
    _emit(args, {"xi": args.xi, "stream": args.stream, "n": args.n,
                 "vector": out.to_map()})
    return 0


def _cmd_avg_pair_sum(args) -> int:
    value = pair_sum(_load_vector(args.vec), FinSet.parse(args.set))
    _emit(args, {"set": args.set, "value": format_fraction(value)})
    return 0


def _cmd_avg_validate(args) -> int:
    vectors = [ProbVector(v.entries) for v in _load_vector_list(args.seq)]
    method = ExplicitMethod(vectors, parse_stream(args.stream))
    n = args.n if args.n is not None else len(vectors)
    method.validate_prefix(n)
    _emit(args, {"stream": args.stream, "n": n, "ok": True})
    return 0


def _cmd_avg_nibcc(args) -> int:
    z, y = _nibcc_inputs(args)
    witness = check_nibcc(z, y)
    payload: dict = {"combined": len(z), "originals": len(y)}
    if witness is None:
        payload.update({"ok": False, "witness": None})
    else:
        payload.update({
            "ok": True,
            "witness": {
                "breakpoints": list(witness.breakpoints),
                "weights": [format_fraction(w) for w in witness.weights],
            },
        })
    _emit(args, payload)
    return 0 if witness is not None else 1


def _cmd_avg_reweight(args) -> int:
    z, y = _nibcc_inputs(args)
    witness = check_nibcc(z, y)
    if witness is None:
        raise ValueError("no block combination witness; nothing to reweight")
    beta = cesaro_reweight(witness, args.n)
    _emit(args, {"n": args.n,
                 "beta": {str(j): format_fraction(v) for j, v in beta.items()},
                 "total": format_fraction(sum(beta.values(), Fraction(0)))})
    return 0


# -- norm ------------------------------------------------------------------------


def _cmd_norm_eval(args) -> int:
    spec = _space_spec(args.space, args.xi)
    result = norm(spec, _load_vector(args.vec))
    _emit(args, result.to_json())
    return 0


def _cmd_norm_oracle(args) -> int:
    spec = _space_spec(args.space, args.xi)
    result = norm_oracle(spec, _load_vector(args.vec))
    _emit(args, result.to_json())
    return 0


def _cmd_norm_functional(args) -> int:
    spec = _space_spec(args.space, args.xi)
    functional = coordinate_sum_functional(FinSet.parse(args.set), spec)
    payload = functional.to_json()
    if args.vec is not None:
        value = functional.evaluate(_load_vector(args.vec),
                                    check=not args.no_check)
        payload["value"] = format_fraction(value)
    _emit(args, payload)
    return 0


# -- quantity --------------------------------------------------------------------


def _window_payload(args, ambient, xs, kind: str, value) -> dict:
    payload = {"kind": kind, "space": str(ambient), "sequence": xs.describe(),
               "window": [args.n0, args.N]}
    payload.update(_value_fields(value))
    return payload


def _cmd_q_ca(args) -> int:
    ambient = _ambient_spec(args)
    xs = _sequence(args, ambient)
    _emit(args, _window_payload(args, ambient, xs, "ca",
                                ca_window(xs, args.n0, args.N)))
    return 0


def _cmd_q_cca(args) -> int:
    ambient = _ambient_spec(args)
    xs = _sequence(args, ambient)
    _emit(args, _window_payload(args, ambient, xs, "cca",
                                cca_window(xs, args.n0, args.N)))
    return 0


def _cmd_q_cca_xi(args) -> int:
    ambient = _ambient_spec(args)
    xs = _sequence(args, ambient)
    value = cca_xi_window(parse_ordinal(args.xi), parse_stream(args.stream),
                          xs, args.n0, args.N)
    payload = _window_payload(args, ambient, xs, "cca-xi", value)
    payload.update({"xi": args.xi, "stream": args.stream})
    _emit(args, payload)
    return 0


def _parse_catalog(text: str) -> list[IndexStream]:
    return [parse_stream(part) for part in text.split(",") if part]


def _cmd_q_cca_tilde(args) -> int:
    ambient = _ambient_spec(args)
    xs = _sequence(args, ambient)
    est = cca_xi_tilde(parse_ordinal(args.xi), xs, _parse_catalog(args.catalog),
                       args.n0, args.N)
    payload = est.to_json()
    payload.update({"kind": "cca-tilde", "xi": args.xi, "space": str(ambient),
                    "catalog": args.catalog})
    _emit(args, payload)
    return 0


def _cmd_q_cca_tilde_sup(args) -> int:
    ambient = _ambient_spec(args)
    xs = _sequence(args, ambient)
    est = cca_xi_tilde_sup(parse_ordinal(args.xi), xs,
                           _parse_catalog(args.catalog), None,
                           args.n0, args.N)
    payload = est.to_json()
    payload.update({"kind": "cca-tilde-sup", "xi": args.xi,
                    "space": str(ambient), "catalog": args.catalog})
    _emit(args, payload)
    return 0


def _cmd_q_sm(args) -> int:
    ambient = _ambient_spec(args)
    xs = _sequence(args, ambient)
    est = sm_constant(parse_ordinal(args.xi), xs, args.N, args.coeff_budget)
    payload = est.to_json()
    payload.update({"kind": "sm", "xi": args.xi, "space": str(ambient),
                    "sequence": xs.describe()})
    _emit(args, payload)
    return 0


def _gamma_functionals(order: Ordinal, spec: NormSpec, N: int) -> list:
    return [coordinate_sum_functional(F, spec)
            for F in enumerate_family(order, N) if F]


def _gamma_order(args, ambient: NormSpec) -> Ordinal:
    if args.gamma_xi is not None:
        return parse_ordinal(args.gamma_xi)
    if ambient.xi is None:
        raise ValueError(f"--space {args.space} needs an explicit --gamma-xi")
    return ambient.xi


def _cmd_q_fdelta(args) -> int:
    ambient = _ambient_spec(args)
    xs = _sequence(args, ambient)
    functionals = _gamma_functionals(_gamma_order(args, ambient), ambient, args.N)
    family = f_delta(functionals, xs, parse_fraction(args.delta), args.N)
    payload = family.to_json()
    payload.update({"kind": "fdelta", "space": str(ambient),
                    "functionals": len(functionals)})
    _emit(args, payload)
    return 0


def _cmd_q_large(args) -> int:
    ambient = _ambient_spec(args)
    xs = _sequence(args, ambient)
    functionals = _gamma_functionals(_gamma_order(args, ambient), ambient, args.N)
    weak_limit = None if args.weak_limit is None else _load_vector(args.weak_limit)
    result = large_check(parse_ordinal(args.xi), parse_fraction(args.c), xs,
                         parse_stream(args.stream), functionals, args.N,
                         weak_limit=weak_limit)
    payload = result.to_json()
    payload.update({"kind": "large", "space": str(ambient),
                    "c": args.c, "functionals": len(functionals)})
    _emit(args, payload)
    return 0 if result.ok else 1


def _cmd_q_prop_formula(args) -> int:
    values = prop_formula(args.l, parse_fraction(args.c))
    _emit(args, values.to_json())
    return 0


# -- verify ----------------------------------------------------------------------


def _cmd_verify_schreier(args) -> int:
    c_override = None if args.c_override is None else parse_fraction(args.c_override)
    report = verify_example_schreier(parse_ordinal(args.xi), args.N,
                                     args.coeff_budget, c_override=c_override)
    return _emit_report(args, report)


def _cmd_verify_star(args) -> int:
    report = verify_example_star(parse_ordinal(args.xi), args.N,
                                 args.coeff_budget)
    return _emit_report(args, report)


def _cmd_verify_prop(args) -> int:
    report = verify_prop_formula(args.l_max, parse_fraction(args.c))
    return _emit_report(args, report)


# -- parser ----------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("json", "text"), default="text",
                     help="output format (default: text)")

    seq_flags = argparse.ArgumentParser(add_help=False)
    seq_flags.add_argument("--space", choices=_SPACE_KINDS, default="schreier",
                           help="ambient norm kind (default: schreier)")
    seq_flags.add_argument("--space-xi", metavar="ORD",
                           help="order of the ambient space; defaults to --xi "
                                "where that flag exists")
    seq_flags.add_argument("--seq", default="basis", metavar="SEQ",
                           help="basis, or @file with a JSON list of vectors")
    seq_flags.add_argument("--along", metavar="STREAM",
                           help="pass to the subsequence along this stream")
    seq_flags.add_argument("--weights", metavar="FRACS",
                           help="comma list of fractions weighting the basis")
    seq_flags.add_argument("--weight-tail", default="1", metavar="FRAC",
                           help="weight past the listed ones (default: 1)")

    window = argparse.ArgumentParser(add_help=False)
    window.add_argument("--n0", type=int, default=1,
                        help="window start (default: 1)")
    window.add_argument("--N", type=int, required=True, help="window end")

    parser = argparse.ArgumentParser(
        prog="schreier-lab",
        description="Ordinal-indexed families, repeated averages, and the "
                    "norms and constants built from them.")
    groups = parser.add_subparsers(dest="group", required=True)

    # ord
    ord_group = groups.add_parser("ord", help="ordinal arithmetic")
    ord_ops = ord_group.add_subparsers(dest="op", required=True)
    p = ord_ops.add_parser("parse", parents=[fmt], help="parse and normalize")
    p.add_argument("--text", required=True, help="like w^2*3+w+5")
    p.set_defaults(handler=_cmd_ord_parse)
    p = ord_ops.add_parser("classify", parents=[fmt],
                           help="zero, successor, or limit")
    p.add_argument("--xi", required=True)
    p.set_defaults(handler=_cmd_ord_classify)
    p = ord_ops.add_parser("fseq", parents=[fmt],
                           help="prefix of the fundamental sequence")
    p.add_argument("--xi", required=True)
    p.add_argument("--n", type=int, required=True, help="prefix length")
    p.set_defaults(handler=_cmd_ord_fseq)

    # schreier
    sch = groups.add_parser("schreier", help="admissible set families")
    sch_ops = sch.add_subparsers(dest="op", required=True)
    for name, handler, extra in (
            ("member", _cmd_schreier_member, ()),
            ("oracle", _cmd_schreier_oracle, ()),
            ("image", _cmd_schreier_image, ("stream",)),
            ("trace", _cmd_schreier_trace, ("stream",))):
        p = sch_ops.add_parser(name, parents=[fmt],
                               help=f"{name} membership test")
        p.add_argument("--xi", required=True)
        if "stream" in extra:
            p.add_argument("--stream", required=True,
                           help="all, shift:<k>, cubes, or evens")
        p.add_argument("--set", required=True, help="like 2,3,7")
        p.set_defaults(handler=handler)
    p = sch_ops.add_parser("enum", parents=[fmt],
                           help="every member inside 1..max-value")
    p.add_argument("--xi", required=True)
    p.add_argument("--max-value", type=int, required=True)
    p.add_argument("--limit", type=int, help="print at most this many sets")
    p.set_defaults(handler=_cmd_schreier_enum)
    p = sch_ops.add_parser("threshold", parents=[fmt],
                           help="smallest min value forcing one family "
                                "into another")
    p.add_argument("--zeta", required=True, help="order of the probed family")
    p.add_argument("--xi", required=True, help="order of the target family")
    p.add_argument("--max-value", type=int, required=True)
    p.set_defaults(handler=_cmd_schreier_threshold)

    # avg; the bare group computes a vector.
    avg = groups.add_parser("avg", help="repeated averaging vectors")
    avg_ops = avg.add_subparsers(dest="op", required=True)
    p = avg_ops.add_parser("vector", parents=[fmt],
                           help="the n-th averaging vector (default op)")
    p.add_argument("--xi", required=True)
    p.add_argument("--stream", default="all")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(handler=_cmd_avg_vector)
    p = avg_ops.add_parser("size", parents=[fmt],
                           help="support size without materializing")
    p.add_argument("--xi", required=True)
    p.add_argument("--stream", default="all")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(handler=_cmd_avg_size)
    p = avg_ops.add_parser("apply", parents=[fmt],
                           help="average a vector sequence")
    p.add_argument("--xi", required=True)
    p.add_argument("--stream", default="all")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seq", default="basis",
                   help="basis, or @file with a JSON list of vectors")
    p.set_defaults(handler=_cmd_avg_apply)
    p = avg_ops.add_parser("pair-sum", parents=[fmt],
                           help="coordinate sum over a set")
    p.add_argument("--vec", required=True, help="vector JSON or @file")
    p.add_argument("--set", required=True)
    p.set_defaults(handler=_cmd_avg_pair_sum)
    p = avg_ops.add_parser("validate", parents=[fmt],
                           help="check supports tile a stream prefix")
    p.add_argument("--seq", required=True, help="@file with a JSON list")
    p.add_argument("--stream", default="all")
    p.add_argument("--n", type=int, help="prefix length (default: all)")
    p.set_defaults(handler=_cmd_avg_validate)
    for name, handler in (("nibcc", _cmd_avg_nibcc),
                          ("reweight", _cmd_avg_reweight)):
        p = avg_ops.add_parser(
            name, parents=[fmt],
            help="block combination witness" if name == "nibcc"
            else "mean-of-means weights from the witness")
        p.add_argument("--xi", help="base order; combined vectors are one up")
        p.add_argument("--stream", default="all")
        p.add_argument("--count", type=int, default=3,
                       help="combined vectors to generate (default: 3)")
        p.add_argument("--z", help="@file with the combined vectors")
        p.add_argument("--y", help="@file with the original vectors")
        if name == "reweight":
            p.add_argument("--n", type=int, required=True,
                           help="how many combined vectors to average")
        p.set_defaults(handler=handler)

    # norm; the bare group evaluates a norm.
    nrm = groups.add_parser("norm", help="exact norms and functionals")
    nrm_ops = nrm.add_subparsers(dest="op", required=True)
    p = nrm_ops.add_parser("eval", parents=[fmt],
                           help="evaluate a norm (default op)")
    p.add_argument("--space", choices=_SPACE_KINDS, required=True)
    p.add_argument("--xi", help="family order; classical kinds take none")
    p.add_argument("--vec", required=True, help="vector JSON or @file")
    p.set_defaults(handler=_cmd_norm_eval)
    p = nrm_ops.add_parser("oracle", parents=[fmt],
                           help="brute-force cross-check on small supports")
    p.add_argument("--space", choices=_SPACE_KINDS, required=True)
    p.add_argument("--xi")
    p.add_argument("--vec", required=True)
    p.set_defaults(handler=_cmd_norm_oracle)
    p = nrm_ops.add_parser("functional", parents=[fmt],
                           help="certified coordinate-sum functional")
    p.add_argument("--space", choices=_SPACE_KINDS, required=True)
    p.add_argument("--xi")
    p.add_argument("--set", required=True)
    p.add_argument("--vec", help="evaluate on this vector")
    p.add_argument("--no-check", action="store_true",
                   help="skip the norm bound check")
    p.set_defaults(handler=_cmd_norm_functional)

    # quantity
    qty = groups.add_parser("quantity", help="finite-horizon constants")
    qty_ops = qty.add_subparsers(dest="op", required=True)
    p = qty_ops.add_parser("ca", parents=[fmt, seq_flags, window],
                           help="largest pairwise distance in the window")
    p.set_defaults(handler=_cmd_q_ca)
    p = qty_ops.add_parser("cca", parents=[fmt, seq_flags, window],
                           help="the same over running means")
    p.set_defaults(handler=_cmd_q_cca)
    p = qty_ops.add_parser("cca-xi", parents=[fmt, seq_flags, window],
                           help="over running means of the averaged sequence")
    p.add_argument("--xi", required=True)
    p.add_argument("--stream", default="all")
    p.set_defaults(handler=_cmd_q_cca_xi)
    p = qty_ops.add_parser("cca-tilde", parents=[fmt, seq_flags, window],
                           help="best stream in a catalog")
    p.add_argument("--xi", required=True)
    p.add_argument("--catalog", required=True,
                   help="comma list of streams, like all,shift:2,cubes")
    p.set_defaults(handler=_cmd_q_cca_tilde)
    p = qty_ops.add_parser("cca-tilde-sup", parents=[fmt, seq_flags, window],
                           help="worst catalog stream after refinement")
    p.add_argument("--xi", required=True)
    p.add_argument("--catalog", required=True)
    p.set_defaults(handler=_cmd_q_cca_tilde_sup)
    p = qty_ops.add_parser("sm", parents=[fmt, seq_flags],
                           help="spreading-model constant over a horizon")
    p.add_argument("--xi", required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--coeff-budget", type=int, default=4,
                   help="sign patterns up to this support size (default: 4)")
    p.set_defaults(handler=_cmd_q_sm)
    p = qty_ops.add_parser("fdelta", parents=[fmt, seq_flags],
                           help="threshold family of certified functionals")
    p.add_argument("--gamma-xi", metavar="ORD",
                   help="order of the functional family (default: space order)")
    p.add_argument("--delta", required=True, help="threshold, like 1/4")
    p.add_argument("--N", type=int, required=True)
    p.set_defaults(handler=_cmd_q_fdelta)
    p = qty_ops.add_parser("large", parents=[fmt, seq_flags],
                           help="largeness at a level along a stream")
    p.add_argument("--xi", required=True)
    p.add_argument("--c", required=True, help="level, like 9/10")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--stream", default="all")
    p.add_argument("--gamma-xi", metavar="ORD",
                   help="order of the functional family (default: space order)")
    p.add_argument("--weak-limit", metavar="VEC",
                   help="recenter by this vector (default: zero)")
    p.set_defaults(handler=_cmd_q_large)
    p = qty_ops.add_parser("prop-formula", parents=[fmt],
                           help="the two-term ratio formula")
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--c", required=True)
    p.set_defaults(handler=_cmd_q_prop_formula)

    # verify
    ver = groups.add_parser("verify", help="reproducible example bundles")
    ver_ops = ver.add_subparsers(dest="op", required=True)
    p = ver_ops.add_parser("example-schreier", parents=[fmt],
                           help="the normalized basis one order up")
    p.add_argument("--xi", required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--coeff-budget", type=int, default=3)
    p.add_argument("--c-override", metavar="FRAC",
                   help="replace the default largeness level 1 - 1/N")
    p.set_defaults(handler=_cmd_verify_schreier)
    p = ver_ops.add_parser("example-star", parents=[fmt],
                           help="the sign-split renorming of the basis")
    p.add_argument("--xi", required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--coeff-budget", type=int, default=3)
    p.set_defaults(handler=_cmd_verify_star)
    p = ver_ops.add_parser("prop-formula", parents=[fmt],
                           help="tabulate the ratio formula envelopes")
    p.add_argument("--l-max", type=int, required=True)
    p.add_argument("--c", required=True)
    p.set_defaults(handler=_cmd_verify_prop)

    return parser


_DEFAULT_OPS = {
    "avg": ("vector", {"vector", "size", "apply", "pair-sum", "nibcc",
                       "reweight", "validate"}),
    "norm": ("eval", {"eval", "oracle", "functional"}),
}


def _with_default_op(argv: list[str]) -> list[str]:
    """Insert the implied sub-operation, so ``avg --xi 1 ...`` parses."""
    if not argv or argv[0] not in _DEFAULT_OPS:
        return argv
    default, ops = _DEFAULT_OPS[argv[0]]
    rest = argv[1:]
    if rest and (rest[0] in ops or rest[0] in ("-h", "--help")):
        return argv
    return [argv[0], default, *rest]


def main(argv: Sequence[str] | None = None) -> int:
    raw = list(sys.argv[1:] if argv is None else argv)
    args = _build_parser().parse_args(_with_default_op(raw))
    try:
        return args.handler(args)
    except BudgetExceededError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return 2
    except AmbiguousReconstructionError as exc:
        print(f"ambiguous: {exc}", file=sys.stderr)
        return 2
    except (ValueError, RuntimeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
