"""Command-line interface.

Exit codes: 0 success, 1 verification mismatch, 2 usage error, 3 a
desk-scale size bound was exceeded.  All JSON output carries "schema": 1,
serializes field elements as strings, and is byte-identical across runs
for identical arguments and seed.
"""

from __future__ import annotations

import argparse
import json
import sys
from itertools import combinations

from . import agcode, decoder, stoptheory
from .curve import EllipticCurve, group_structure, parse_point, point_str, rational_points
from .errors import FieldMismatchError, IntegrityError, SizeLimitError
from .ffield import parse_element, parse_field
from .groupcount import AbelianGroup, count_formula, is_prime
from .stoptheory import classify


class VerificationFailure(Exception):
    def __init__(self, payload: dict):
        super().__init__("verification mismatch")
        self.payload = payload


def _emit(obj, args) -> None:
    text = json.dumps(obj, indent=2) + "\n"
    out = getattr(args, "out", None)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_csv(rows: list[tuple], header: tuple, args) -> None:
    lines = [",".join(str(c) for c in header)]
    lines += [",".join(str(c) for c in row) for row in rows]
    text = "\n".join(lines) + "\n"
    out = getattr(args, "out", None)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _curve_from_args(args) -> EllipticCurve:
    if not args.field and not args.p:
        raise ValueError("need --p or --field")
    if args.a is None or args.b is None:
        raise ValueError("need --a and --b")
    field = parse_field(args.field if args.field else str(args.p))
    return EllipticCurve(field, parse_element(field, args.a), parse_element(field, args.b))


def _spec_from_args(args) -> agcode.EllipticCodeSpec:
    E = _curve_from_args(args)
    return _spec_for_curve(E, args.m, getattr(args, "D", "all-minus-O"))


def _spec_for_curve(E: EllipticCurve, m: int, d_text: str) -> agcode.EllipticCodeSpec:
    if d_text == "all-minus-O":
        return agcode.spec_all_points(E, m)
    D = tuple(parse_point(E, part) for part in d_text.split(";") if part.strip())
    return agcode.EllipticCodeSpec(E, D, m)


def _curve_header(E: EllipticCurve) -> dict:
    from .ffield import field_str

    return {"field": field_str(E.field), "a": str(E.a), "b": str(E.b)}


def _add_curve_args(sub, with_m: bool, required: bool = True) -> None:
    sub.add_argument("--p", type=int, help="prime field characteristic (shorthand for --field p)")
    sub.add_argument("--field", help="field as 'p', 'p,k' or 'p,k,c0.c1...ck'")
    sub.add_argument("--a", required=required, help="curve coefficient a")
    sub.add_argument("--b", required=required, help="curve coefficient b")
    if with_m:
        sub.add_argument("--m", type=int, required=required, help="pole bound at infinity")
        sub.add_argument(
            "--D",
            default="all-minus-O",
            help="evaluation points: 'all-minus-O' or 'x,y;x,y;...'",
        )


def _cmd_points(args) -> int:
    E = _curve_from_args(args)
    pts = rational_points(E)
    payload = {"schema": 1, **_curve_header(E), "count": len(pts)}
    payload["points"] = ["inf" if P.is_infinity else [str(P.x), str(P.y)] for P in pts]
    _emit(payload, args)
    return 0


def _cmd_structure(args) -> int:
    E = _curve_from_args(args)
    gs = group_structure(E)
    payload = {
        "schema": 1,
        **_curve_header(E),
        "order": gs.order,
        "m1": gs.m1,
        "m2": gs.m2,
        "generators": [point_str(g) for g in gs.generators],
    }
    _emit(payload, args)
    return 0


def _cmd_groupcount(args) -> int:
    factors = [int(d) for d in args.group.lower().split("x")]
    G = AbelianGroup.from_cyclic_factors(factors)
    if args.target:
        b = G.element(int(c) for c in args.target.split(","))
    else:
        b = G.identity()
    count = count_formula(G, args.k, b)
    payload = {
        "schema": 1,
        "group": list(G.invariant_factors),
        "k": args.k,
        "target": list(b.coords),
        "count": count,
    }
    _emit(payload, args)
    return 0


def _cmd_gen(args) -> int:
    spec = _spec_from_args(args)
    M = agcode.generator_matrix(spec)
    payload = {
        "schema": 1,
        **_curve_header(spec.curve),
        "m": spec.m,
        "n": spec.n,
        "D": [point_str(P) for P in spec.D],
        "role": M.role,
        "matrix": [[str(e) for e in row] for row in M.entries],
    }
    _emit(payload, args)
    return 0


def _cmd_report(args) -> int:
    spec = _spec_from_args(args)
    rep = stoptheory.build_report(spec, seed=args.seed)
    if args.format == "csv":
        _emit_csv(list(enumerate(rep.distribution)), ("size", "count"), args)
        return 0
    payload = {
        "schema": 1,
        **_curve_header(spec.curve),
        "m": spec.m,
        "n": spec.n,
        "D": [point_str(P) for P in spec.D],
        "group": {"m1": rep.group.m1, "m2": rep.group.m2},
        "s_m_count": rep.S_m_count,
        "s_m": [list(A) for A in rep.S_m] if rep.S_m is not None else None,
        "distribution": list(rep.distribution),
        "stopping_distance": rep.stopping_distance,
        "oracle_agreement": rep.oracle_agreement,
    }
    _emit(payload, args)
    return 0


def _cmd_mds(args) -> int:
    dist = agcode.mds_distribution(args.n, args.k)
    if args.format == "csv":
        _emit_csv(list(enumerate(dist)), ("size", "count"), args)
        return 0
    payload = {"schema": 1, "n": args.n, "k": args.k, "distribution": list(dist)}
    _emit(payload, args)
    return 0


def _cmd_decode(args) -> int:
    if args.spec:
        with open(args.spec) as fh:
            doc = json.load(fh)
        field = parse_field(doc["field"])
        E = EllipticCurve(field, parse_element(field, doc["a"]), parse_element(field, doc["b"]))
        d_field = doc.get("D", "all-minus-O")
        d_text = d_field if isinstance(d_field, str) else ";".join(d_field)
        spec = _spec_for_curve(E, int(doc["m"]), d_text)
    else:
        if args.m is None:
            raise ValueError("need --m (or --spec)")
        spec = _spec_from_args(args)
    f = spec.field
    if args.codeword == "zero":
        word = [f.zero()] * spec.n
    else:
        word = [parse_element(f, t) for t in args.codeword.split(",")]
    erased = [int(i) for i in args.erased.split(",") if i.strip()]
    instance = decoder.make_instance(spec, word, erased)
    rows = list(agcode.hstar_rows(spec))
    recovered, residual = decoder.peel(rows, instance)
    payload = {
        "schema": 1,
        **_curve_header(spec.curve),
        "m": spec.m,
        "n": spec.n,
        "erased": sorted(instance.erased),
        "recovered": [None if v is None else str(v) for v in recovered],
        "residual": sorted(residual),
        "fully_recovered": not residual,
    }
    _emit(payload, args)
    return 0


# ---------------------------------------------------------------------------
# verify: sweep small instances, pitting the classification against the
# matrix oracle and the counting formula against enumeration


def _verify_instance(spec, samples: int, seed: int, corrupt: int | None, report: dict) -> list[dict]:
    mismatches = []
    if corrupt is None:
        mismatches += stoptheory.oracle_agreement_check(spec, sample_cap=samples, seed=seed)
    else:
        masks = _corrupted_masks(spec, corrupt)
        sizes = [s for s in range(spec.m - 1, spec.m + 3) if 0 <= s <= spec.n]
        for size in sizes:
            for A in combinations(range(1, spec.n + 1), size):
                by_rule = classify(spec, A).is_stopping
                by_matrix = agcode.is_stopping_set_masks(masks, agcode.subset_mask(A))
                if by_rule != by_matrix:
                    mismatches.append({"subset": list(A), "classify": by_rule, "oracle": by_matrix})
        report["corrupted"] = True
        return mismatches

    # counting cross-checks on the full evaluation set
    s_m = stoptheory.enumerate_S_m(spec)
    dist_enum = stoptheory.distribution(spec, source="enumerate")
    G = stoptheory.is_subgroup_minus_O(spec.curve, spec.D)
    if G is not None:
        dist_formula = stoptheory.distribution(spec, source="formula")
        if list(dist_formula) != list(dist_enum):
            mismatches.append(
                {"check": "distribution", "formula": list(dist_formula), "enumerate": list(dist_enum)}
            )
    try:
        stoptheory.build_S_m_plus(spec, s_m)
    except IntegrityError as exc:
        mismatches.append({"check": "disjoint-extension", "detail": str(exc)})
    sd = stoptheory.stopping_distance(spec)
    md = agcode.residue_min_distance(spec)
    if sd != md:
        mismatches.append({"check": "stopping-distance", "stopping": sd, "min_distance": md})
    return mismatches


def _corrupted_masks(spec, corrupt: int) -> frozenset[int]:
    """Support masks of H* with one entry of one row altered; the fault
    injection hook behind the verification smoke test."""
    f = spec.field
    rows = [list(r) for r in agcode.hstar_rows(spec)]
    row_idx = corrupt % len(rows)
    col_idx = corrupt % spec.n
    rows[row_idx][col_idx] = rows[row_idx][col_idx] + f.one()
    masks = set()
    for row in rows:
        mask = 0
        for j, e in enumerate(row):
            if e.value:
                mask |= 1 << j
        masks.add(mask)
    masks.discard(0)
    return frozenset(masks)


def _verify_specs(max_q: int, max_m: int):
    """All (curve, m) instances in the sweep: every nonsingular curve over
    each prime field 5 <= p <= max_q, every m in [2, max_m] with m < n and
    a streamable dual codebook."""
    limit = min(agcode.row_limit(None), 2 ** 17)
    p = 5
    while p <= max_q:
        if is_prime(p):
            field = parse_field(str(p))
            for av in range(field.q):
                for bv in range(field.q):
                    try:
                        E = EllipticCurve(field, field.from_value(av), field.from_value(bv))
                    except ValueError:
                        continue
                    n = len(rational_points(E)) - 1
                    for m in range(2, max_m + 1):
                        if m < n and field.q ** m <= limit:
                            yield agcode.spec_all_points(E, m)
        p += 2


def _cmd_verify(args) -> int:
    instances = 0
    mismatches = []
    report: dict = {"schema": 1, "max_q": args.max_q, "max_m": args.max_m}
    for spec in _verify_specs(args.max_q, args.max_m):
        found = _verify_instance(spec, args.samples, args.seed, args.corrupt, report)
        instances += 1
        for rec in found:
            rec.setdefault(
                "curve",
                {"field": str(spec.field.p), "a": str(spec.curve.a), "b": str(spec.curve.b)},
            )
            rec.setdefault("m", spec.m)
        mismatches += found
        if args.corrupt is not None:
            break  # fault injection targets the first instance only
    report["instances"] = instances
    report["mismatch_count"] = len(mismatches)
    report["mismatches"] = mismatches[:50]
    if mismatches:
        raise VerificationFailure(report)
    _emit(report, args)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stopset",
        description="Stopping sets of codes from elliptic curves over small finite fields",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("points", help="list the rational points of a curve")
    _add_curve_args(sp, with_m=False)
    sp.add_argument("--out")
    sp.set_defaults(func=_cmd_points)

    sp = sub.add_parser("structure", help="invariant factors of the curve group")
    _add_curve_args(sp, with_m=False)
    sp.add_argument("--out")
    sp.set_defaults(func=_cmd_structure)

    sp = sub.add_parser("groupcount", help="count k-subsets of G\\{0} with a given sum")
    sp.add_argument("--group", required=True, help="cyclic factors, e.g. 2x4")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--target", default="", help="coordinates, e.g. 0,2 (default identity)")
    sp.add_argument("--out")
    sp.set_defaults(func=_cmd_groupcount)

    sp = sub.add_parser("gen", help="emit the evaluation (dual generator) matrix")
    _add_curve_args(sp, with_m=True)
    sp.add_argument("--out")
    sp.set_defaults(func=_cmd_gen)

    sp = sub.add_parser("report", help="full stopping-set census for one code")
    _add_curve_args(sp, with_m=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    sp.add_argument("--out")
    sp.set_defaults(func=_cmd_report)

    sp = sub.add_parser("verify", help="sweep small curves: classification vs oracle vs formulas")
    sp.add_argument("--max-q", type=int, default=7)
    sp.add_argument("--max-m", type=int, default=3)
    sp.add_argument("--samples", type=int, default=5000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--corrupt", type=int, default=None, help="fault injection: alter one dual entry")
    sp.add_argument("--out")
    sp.set_defaults(func=_cmd_verify)

    sp = sub.add_parser("mds", help="stopping-set distribution of an MDS [n, k] code")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    sp.add_argument("--out")
    sp.set_defaults(func=_cmd_mds)

    sp = sub.add_parser("decode", help="peel erasures over the full dual codebook")
    _add_curve_args(sp, with_m=True, required=False)
    sp.add_argument("--spec", help="JSON file with field/a/b/m/D instead of flags")
    sp.add_argument("--erased", required=True, help="positions, e.g. 1,2,6")
    sp.add_argument("--codeword", default="zero", help="'zero' or comma-separated elements")
    sp.add_argument("--out")
    sp.set_defaults(func=_cmd_decode)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except VerificationFailure as vf:
        sys.stdout.write(json.dumps(vf.payload, indent=2) + "\n")
        sys.stderr.write("verification mismatch\n")
        return 1
    except SizeLimitError as exc:
        sys.stderr.write(f"size bound exceeded: {exc}\n")
        return 3
    except (ValueError, FieldMismatchError, IntegrityError, OSError, KeyError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
