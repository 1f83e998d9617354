"""Command line driver: poset reports, quasisymmetric operations, transfer
matrices, and the built-in acceptance self test.

All output is exact.  JSON payloads use these conventions:

* subsets of [n] serialize as comma-joined ascending integers, "" for the
  empty set;
* cd-words serialize as letter strings over {c, d} in canonical order
  (by degree, then lexicographically with c < d);
* coefficients serialize as rational strings "p" or "p/q";
* count data (flag vectors, transfer matrices, spectra, peak tallies) and
  poset g/toric-h coefficients serialize as JSON integers.

Exit codes: 0 success, 1 self-test failure, 2 validation error,
3 mathematical precondition failure, 4 internal invariant breach.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .combinat import Subset
from .linalg import SingularSystemError
from .peak import (
    NotInPeakAlgebraError,
    cd_index,
    eulerian_projection,
    find_violation,
    format_relation,
    peak_expansion,
)
from .poset import (
    GradedPoset,
    PosetValidationError,
    build_family,
    from_covers,
    qsym_of_poset,
)
from .qsym import (
    QSym,
    antipode,
    convert,
    coproduct,
    flag_f_to_h,
    flag_f_to_k,
    from_f_coeffs,
    from_k_coeffs,
    from_m_coeffs,
)
from .toricg import Polynomial, fg_poly_poset, g_on_qsym, toric_h
from .transfer import (
    cone_rows_eta,
    cone_rows_h,
    peak_distribution,
    transfer_matrix,
    transfer_spectrum,
)

EXIT_OK = 0
EXIT_TESTFAIL = 1
EXIT_VALIDATION = 2
EXIT_PRECONDITION = 3
EXIT_INTERNAL = 4

DEFAULT_DEGREE_BOUND = 12
DEFAULT_SIZE_BOUND = 8


class CliError(Exception):
    """Error with an exit code and a JSON-serializable payload."""

    def __init__(self, code: int, message: str, **extra):
        super().__init__(message)
        self.code = code
        self.payload = {"error": message, **extra}


# -- serialization ----------------------------------------------------


def subset_key(s: Subset) -> str:
    return ",".join(map(str, s.members))


def parse_subset_key(key: str, ambient: int) -> Subset:
    if key == "":
        return Subset(ambient, 0)
    try:
        members = [int(part) for part in key.split(",")]
    except ValueError:
        raise CliError(EXIT_VALIDATION, f"bad subset key {key!r}") from None
    if members != sorted(set(members)):
        raise CliError(
            EXIT_VALIDATION, f"subset key {key!r} must list distinct ascending integers"
        )
    if members and not (1 <= members[0] and members[-1] <= ambient):
        raise CliError(
            EXIT_VALIDATION, f"subset key {key!r} leaves the ground set [{ambient}]"
        )
    return Subset.from_members(ambient, members)


def rat(x) -> str:
    return str(Fraction(x))


def exact_int(x) -> int:
    f = Fraction(x)
    if f.denominator != 1:
        raise CliError(EXIT_INTERNAL, f"expected an integer, got {f}")
    return int(f)


def _subset_order(s: Subset):
    return (s.size, s.members)


def flag_payload(d: dict) -> dict:
    return {subset_key(s): exact_int(v) for s, v in sorted(d.items(), key=lambda kv: _subset_order(kv[0]))}


def cd_payload(poly) -> dict:
    return {w: rat(c) for w, c in poly.items()}


def poly_int_payload(poly: Polynomial) -> list:
    if not poly.coeffs:
        return [0]
    return [exact_int(c) for c in poly.coeffs]


def poly_rat_payload(poly: Polynomial) -> list:
    if not poly.coeffs:
        return ["0"]
    return [rat(c) for c in poly.coeffs]


def dump_qsym(element: QSym, degree: int) -> dict:
    """QSymFile object in the M basis; `degree` pins the shape when the
    element is zero."""
    degrees = [d for d in element.degrees() if element.component(d)]
    if degrees and degrees != [degree]:
        raise CliError(EXIT_INTERNAL, f"expected a homogeneous degree-{degree} element")
    if degree == 0:
        c = element.coeff(())
        coeffs = {"": rat(c)} if c else {}
    else:
        pairs = sorted(element.m_coeffs(degree).items(), key=lambda kv: _subset_order(kv[0]))
        coeffs = {subset_key(s): rat(v) for s, v in pairs if v}
    return {"degree": degree, "basis": "M", "coeffs": coeffs}


def load_qsym_data(data, source: str) -> tuple[QSym, int]:
    if not isinstance(data, dict):
        raise CliError(EXIT_VALIDATION, f"{source}: expected a JSON object")
    for field in ("degree", "basis", "coeffs"):
        if field not in data:
            raise CliError(EXIT_VALIDATION, f"{source}: missing field {field!r}")
    degree = data["degree"]
    if not isinstance(degree, int) or degree < 0:
        raise CliError(EXIT_VALIDATION, f"{source}: degree must be a nonnegative integer")
    basis = data["basis"]
    if basis not in ("M", "F", "K"):
        raise CliError(EXIT_VALIDATION, f"{source}: basis must be one of M, F, K")
    raw = data["coeffs"]
    if not isinstance(raw, dict):
        raise CliError(EXIT_VALIDATION, f"{source}: coeffs must be an object")
    parsed = {}
    for key, value in raw.items():
        try:
            c = Fraction(value)
        except (ValueError, ZeroDivisionError, TypeError):
            raise CliError(
                EXIT_VALIDATION, f"{source}: bad rational {value!r} at key {key!r}"
            ) from None
        if degree == 0:
            if key != "":
                raise CliError(
                    EXIT_VALIDATION, f"{source}: degree 0 admits only the empty key"
                )
            parsed[key] = c
        else:
            parsed[parse_subset_key(key, degree - 1)] = c
    if degree == 0:
        return parsed.get("", Fraction(0)) * QSym.one(), 0
    builder = {"M": from_m_coeffs, "F": from_f_coeffs, "K": from_k_coeffs}[basis]
    return builder(degree, parsed), degree


def load_qsym_file(path: str) -> tuple[QSym, int]:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise CliError(EXIT_VALIDATION, f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise CliError(EXIT_VALIDATION, f"{path}: invalid JSON ({exc})") from None
    return load_qsym_data(data, path)


def load_poset_file(path: str) -> GradedPoset:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise CliError(EXIT_VALIDATION, f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise CliError(EXIT_VALIDATION, f"{path}: invalid JSON ({exc})") from None
    if not isinstance(data, dict):
        raise CliError(EXIT_VALIDATION, f"{path}: expected a JSON object")
    for field in ("elements", "covers"):
        if field not in data:
            raise CliError(EXIT_VALIDATION, f"{path}: missing field {field!r}")
    elements = data["elements"]
    covers = data["covers"]
    if not isinstance(elements, list) or not all(isinstance(x, str) for x in elements):
        raise CliError(EXIT_VALIDATION, f"{path}: elements must be a list of strings")
    if not isinstance(covers, list) or not all(
        isinstance(c, list) and len(c) == 2 for c in covers
    ):
        raise CliError(EXIT_VALIDATION, f"{path}: covers must be a list of [lower, upper] pairs")
    return from_covers(elements, [tuple(c) for c in covers])


# -- text rendering ---------------------------------------------------


def _inline(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, str)):
        return str(value)
    if isinstance(value, list) and not any(isinstance(v, dict) for v in value):
        return " ".join(_inline(v) for v in value)
    return json.dumps(value, separators=(",", ":"))


def text_lines(payload, indent: str = "") -> list[str]:
    out = []
    if isinstance(payload, dict):
        for key, value in payload.items():
            shown = key if key != "" else "{}"
            if isinstance(value, dict) or (
                isinstance(value, list) and value and isinstance(value[0], list)
            ):
                out.append(f"{indent}{shown}:")
                out.extend(text_lines(value, indent + "  "))
            else:
                out.append(f"{indent}{shown} = {_inline(value)}")
    elif isinstance(payload, list) and payload and isinstance(payload[0], list):
        for row in payload:
            out.append(indent + _inline(row))
    else:
        out.append(indent + _inline(payload))
    return out


def emit(reports: list[tuple[str, object]], fmt: str) -> None:
    if fmt == "json":
        payload = reports[0][1] if len(reports) == 1 else dict(reports)
        json.dump(payload, sys.stdout, indent=2)
        sys.stdout.write("\n")
    else:
        blocks = []
        for name, payload in reports:
            lines = text_lines(payload)
            if len(reports) > 1:
                blocks.append(f"[{name}]")
            blocks.extend(lines)
        sys.stdout.write("\n".join(blocks) + "\n")


def emit_error(err: CliError, fmt: str) -> None:
    if fmt == "json":
        json.dump(err.payload, sys.stdout, indent=2)
        sys.stdout.write("\n")
    else:
        detail = {k: v for k, v in err.payload.items() if k != "error"}
        sys.stderr.write(f"error: {err.payload['error']}\n")
        for line in text_lines(detail, "  "):
            sys.stderr.write(line + "\n")


# -- poset subcommand -------------------------------------------------


def _load_poset(args) -> GradedPoset:
    if bool(args.family) == bool(args.file):
        raise CliError(EXIT_VALIDATION, "give exactly one of --family or --file")
    try:
        if args.family:
            return build_family(args.family)
        return load_poset_file(args.file)
    except PosetValidationError as exc:
        raise CliError(EXIT_VALIDATION, str(exc)) from None
    except ValueError as exc:
        raise CliError(EXIT_VALIDATION, str(exc)) from None


def _flag_dict(p: GradedPoset) -> dict:
    if p.top_rank == 0:
        return {Subset(0, 0): 1}
    return p.flag_vector()


def _membership_error(element: QSym) -> CliError:
    hit = find_violation(element)
    assert hit is not None
    d, rel, value = hit
    return CliError(
        EXIT_PRECONDITION,
        "flag vector violates a Dehn-Sommerville functional",
        degree=d,
        relation=format_relation(rel),
        value=rat(value),
    )


def cmd_poset(args) -> int:
    p = _load_poset(args)
    element = qsym_of_poset(p)
    reports: list[tuple[str, object]] = []
    exit_code = EXIT_OK

    wants_cd = args.cd_index or args.c2d_index or args.theta_expansion
    if wants_cd and find_violation(element) is not None:
        raise _membership_error(element)

    if args.flag_vector:
        reports.append(("flag_vector", flag_payload(_flag_dict(p))))
    if args.h_vector:
        reports.append(("h_vector", flag_payload(flag_f_to_h(_flag_dict(p)))))
    if args.k_vector:
        reports.append(("k_vector", flag_payload(flag_f_to_k(_flag_dict(p)))))
    if args.eulerian:
        witness = p.eulerian_witness()
        if witness is None:
            reports.append(("eulerian", True))
        else:
            x, y, mu = witness
            expected = (-1) ** (p.rank[y] - p.rank[x])
            reports.append(
                (
                    "eulerian",
                    {
                        "eulerian": False,
                        "interval": [p.label_of(x), p.label_of(y)],
                        "mobius": mu,
                        "expected": expected,
                    },
                )
            )
            exit_code = EXIT_PRECONDITION
    if args.cd_index:
        reports.append(("cd_index", cd_payload(cd_index(element))))
    if args.c2d_index:
        reports.append(("c2d_index", cd_payload(cd_index(element).c2d())))
    if args.theta_expansion:
        reports.append(("theta_expansion", cd_payload(peak_expansion(element))))
    if args.g:
        reports.append(("g", poly_int_payload(fg_poly_poset(p)[1])))
    if args.toric_h:
        reports.append(("toric_h", [exact_int(c) for c in toric_h(p)]))

    if not reports:
        raise CliError(EXIT_VALIDATION, "no report requested; pass at least one report flag")
    emit(reports, args.format)
    return exit_code


# -- qsym subcommand --------------------------------------------------


def cmd_qsym(args) -> int:
    element, degree = load_qsym_file(args.file)
    reports: list[tuple[str, object]] = []
    exit_code = EXIT_OK

    if args.to_basis:
        if degree == 0:
            c = element.coeff(())
            payload = {"": rat(c)} if c else {}
        else:
            coeffs = convert(element, args.to_basis).get(degree, {})
            payload = {
                subset_key(s): rat(v)
                for s, v in sorted(coeffs.items(), key=lambda kv: _subset_order(kv[0]))
                if v
            }
        reports.append(("coeffs", payload))
    if args.multiply:
        other, odeg = load_qsym_file(args.multiply)
        reports.append(("product", dump_qsym(element * other, degree + odeg)))
    if args.coproduct:
        terms = []
        for (left, right), c in sorted(coproduct(element).items()):
            terms.append(
                {
                    "left": ",".join(map(str, left)),
                    "right": ",".join(map(str, right)),
                    "coeff": rat(c),
                }
            )
        reports.append(("coproduct", terms))
    if args.antipode:
        reports.append(("antipode", dump_qsym(antipode(element), degree)))
    if args.peak_membership:
        hit = find_violation(element)
        if hit is None:
            reports.append(("peak_membership", True))
        else:
            d, rel, value = hit
            reports.append(
                (
                    "peak_membership",
                    {
                        "member": False,
                        "degree": d,
                        "relation": format_relation(rel),
                        "value": rat(value),
                    },
                )
            )
            exit_code = EXIT_PRECONDITION
    if args.eulerian_projection:
        reports.append(("eulerian_projection", dump_qsym(eulerian_projection(element), degree)))
    if args.theta_expansion:
        if degree == 0:
            raise CliError(EXIT_VALIDATION, "theta-expansion needs a degree >= 1 element")
        reports.append(("theta_expansion", cd_payload(peak_expansion(element))))
    if args.g:
        reports.append(("g", poly_rat_payload(g_on_qsym(element))))

    if not reports:
        raise CliError(EXIT_VALIDATION, "no action requested; pass at least one action flag")
    emit(reports, args.format)
    return exit_code


# -- theta subcommand -------------------------------------------------


def cmd_theta(args) -> int:
    reports: list[tuple[str, object]] = []
    degree_bound = args.max_degree if args.max_degree is not None else DEFAULT_DEGREE_BOUND
    size_bound = args.max_degree if args.max_degree is not None else DEFAULT_SIZE_BOUND

    matrix_actions = args.eta or args.spectrum or args.omega or args.walk or args.cone
    if matrix_actions:
        if args.degree is None:
            raise CliError(EXIT_VALIDATION, "--eta/--spectrum/--omega/--walk/--cone need --degree")
        n = args.degree
        if not 0 <= n <= degree_bound:
            raise CliError(
                EXIT_VALIDATION,
                f"--degree {n} is outside 0..{degree_bound}; raise with --max-degree",
            )
    if args.peaks:
        if args.size is None:
            raise CliError(EXIT_VALIDATION, "--peaks needs --size")
        if not 1 <= args.size <= min(size_bound, 9):
            raise CliError(
                EXIT_VALIDATION,
                f"--size {args.size} is outside 1..{min(size_bound, 9)} "
                "(permutation enumeration caps at 9)",
            )

    if args.eta:
        tm = transfer_matrix(args.degree)
        reports.append(("eta", [list(row) for row in tm.counts]))
    if args.spectrum:
        reports.append(
            ("spectrum", [value for value, _, _ in transfer_spectrum(args.degree)])
        )
    if args.omega:
        payload = {}
        for _, w, vec in transfer_spectrum(args.degree):
            payload[w] = {u: exact_int(c) for u, c in vec.items()}
        reports.append(("omega", payload))
    if args.walk:
        tm = transfer_matrix(args.degree)
        reports.append(("walk", [[rat(x) for x in row] for row in tm.walk()]))
    if args.cone:
        eta_rows = {u: {w: c for w, c in row.items()} for u, row in cone_rows_eta(args.degree)}
        h_rows = {
            subset_key(t): sorted(row) for t, row in cone_rows_h(args.degree)
        }
        reports.append(("cone", {"eta_rows": eta_rows, "h_rows": h_rows}))
    if args.peaks:
        dist = peak_distribution(args.size)
        payload = {
            subset_key(s): c
            for s, c in sorted(dist.as_dict().items(), key=lambda kv: _subset_order(kv[0]))
        }
        reports.append(("peaks", payload))

    if not reports:
        raise CliError(EXIT_VALIDATION, "no action requested; pass at least one action flag")
    emit(reports, args.format)
    return EXIT_OK


# -- selftest subcommand ----------------------------------------------


def cmd_selftest(args) -> int:
    from .selftest import run

    results = run(args.depth)
    ok = all(r.ok for r in results)
    if args.format == "json":
        payload = {
            "depth": args.depth,
            "ok": ok,
            "criteria": [
                {"name": r.name, "ok": r.ok, "detail": r.detail} for r in results
            ],
        }
        json.dump(payload, sys.stdout, indent=2)
        sys.stdout.write("\n")
    else:
        for r in results:
            sys.stdout.write(f"{'PASS' if r.ok else 'FAIL'}  {r.name}: {r.detail}\n")
        sys.stdout.write(f"{'all criteria passed' if ok else 'FAILURES PRESENT'}\n")
    return EXIT_OK if ok else EXIT_TESTFAIL


# -- argument parsing -------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="peakqsym",
        description="Exact flag-enumerative invariants of graded posets and the peak algebra.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", choices=("json", "text"), default="json")

    pp = sub.add_parser("poset", help="reports about one graded poset")
    pp.add_argument("--family", help="built-in family, e.g. boolean:4 or polygon:5")
    pp.add_argument("--file", help="poset JSON file with elements and covers")
    pp.add_argument("--flag-vector", action="store_true")
    pp.add_argument("--h-vector", action="store_true")
    pp.add_argument("--k-vector", action="store_true")
    pp.add_argument("--eulerian", action="store_true")
    pp.add_argument("--cd-index", action="store_true")
    pp.add_argument("--c2d-index", action="store_true")
    pp.add_argument("--theta-expansion", action="store_true")
    pp.add_argument("--g", action="store_true")
    pp.add_argument("--toric-h", action="store_true")
    add_format(pp)
    pp.set_defaults(func=cmd_poset)

    qp = sub.add_parser("qsym", help="operations on a quasisymmetric element file")
    qp.add_argument("file", help="QSym JSON file (degree, basis, coeffs)")
    qp.add_argument("--to-basis", choices=("M", "F", "K"))
    qp.add_argument("--multiply", metavar="FILE2")
    qp.add_argument("--coproduct", action="store_true")
    qp.add_argument("--antipode", action="store_true")
    qp.add_argument("--peak-membership", action="store_true")
    qp.add_argument("--eulerian-projection", action="store_true")
    qp.add_argument("--theta-expansion", action="store_true")
    qp.add_argument("--g", action="store_true")
    add_format(qp)
    qp.set_defaults(func=cmd_qsym)

    tp = sub.add_parser("theta", help="descent-to-peak transfer data by degree")
    tp.add_argument("--degree", type=int)
    tp.add_argument("--size", type=int, help="permutation size for --peaks")
    tp.add_argument("--max-degree", type=int, help="raise the degree/size bounds")
    tp.add_argument("--eta", action="store_true")
    tp.add_argument("--spectrum", action="store_true")
    tp.add_argument("--omega", action="store_true")
    tp.add_argument("--walk", action="store_true")
    tp.add_argument("--cone", action="store_true")
    tp.add_argument("--peaks", action="store_true")
    add_format(tp)
    tp.set_defaults(func=cmd_theta)

    sp = sub.add_parser("selftest", help="run the acceptance criteria")
    sp.add_argument("--depth", choices=("quick", "full"), default="quick")
    add_format(sp)
    sp.set_defaults(func=cmd_selftest)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as err:
        emit_error(err, args.format)
        return err.code
    except NotInPeakAlgebraError as exc:
        err = CliError(EXIT_PRECONDITION, str(exc))
        emit_error(err, args.format)
        return err.code
    except SingularSystemError as exc:
        err = CliError(EXIT_INTERNAL, str(exc))
        emit_error(err, args.format)
        return err.code


if __name__ == "__main__":
    sys.exit(main())
