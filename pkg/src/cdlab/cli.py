"""Command-line interface.

Exit status: 0 success (all checks passed), 1 verification failure,
2 input or usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from . import __version__
from .algebra import (
    ComplexScalar,
    Element,
    check_level,
    conjugate,
    format_rational,
    hermitian_inner_product,
    inner_product_real,
    make_element,
    multiply,
    to_rational,
)
from .constructions import (
    a4_zero_divisor,
    a5_family,
    build_octonion_automorphism,
    double_zero_divisor,
    element_with_ann_dim,
    scale_pair,
    top_zero_divisor,
)
from .documents import (
    certificate_to_doc,
    complex_to_doc,
    doc_to_element,
    element_to_doc,
    loads_json,
    matrix_to_doc,
    subspace_to_doc,
)
from .errors import InputError
from .operators import alternator_space, annihilator, associator_space
from .verify import (
    SUITES,
    SuiteSpec,
    failure_records,
    replay,
    run_suite,
    spectrum_search,
    suites_for_level,
)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise InputError(message)


def _emit(obj, out) -> None:
    out.write(json.dumps(obj, indent=2) + "\n")


# -- element input -------------------------------------------------------------


def _parse_sparse(text: str, level: int | None, where: str) -> Element:
    if level is None:
        raise InputError(f"{where}: inline 'IDX=VAL' coefficients need --level")
    coeffs = {}
    for k, item in enumerate(t for t in text.split(",") if t.strip()):
        if "=" not in item:
            raise InputError(f"{where}, item {k}: expected IDX=VAL, got {item!r}")
        idx, val = item.split("=", 1)
        idx = idx.strip()
        if not idx.isdigit():
            raise InputError(f"{where}, item {k}: bad index {idx!r}")
        try:
            coeffs[int(idx)] = coeffs.get(int(idx), 0) + to_rational(val.strip())
        except (InputError, ValueError, ZeroDivisionError) as e:
            raise InputError(f"{where}, item {k}: {e}") from None
    return make_element(level, coeffs)


def _read_element(spec: str, level: int | None, where: str) -> Element:
    """A file path, '-' for stdin, inline JSON, or inline 'IDX=VAL,...'."""
    s = spec.strip()
    if s.startswith("{"):
        return doc_to_element(loads_json(s, where), where)
    if s == "-":
        return doc_to_element(loads_json(sys.stdin.read(), "stdin"), "stdin")
    path = Path(spec)
    if path.exists():
        try:
            text = path.read_text(encoding="utf-8")
        except (OSError, UnicodeDecodeError) as e:
            raise InputError(f"{spec}: cannot read: {e}") from None
        return doc_to_element(loads_json(text, spec), spec)
    if "=" in s:
        return _parse_sparse(s, level, where)
    raise InputError(f"{where}: {spec!r} is not a file, JSON document, or IDX=VAL list")


def _elements(args) -> list[Element]:
    out = [_read_element(e, args.level, f"--elem #{k + 1}") for k, e in enumerate(args.elem or [])]
    if args.coeff:
        out.append(_parse_sparse(",".join(args.coeff), args.level, "--coeff"))
    return out


def _need(args, count: int, what: str) -> list[Element]:
    xs = _elements(args)
    if len(xs) != count:
        raise InputError(f"{what} takes {count} element(s), got {len(xs)}")
    return xs


def _complex(text: str, name: str) -> ComplexScalar:
    parts = text.split(",")
    if len(parts) > 2:
        raise InputError(f"{name}: expected RE or RE,IM, got {text!r}")
    try:
        vals = [to_rational(p.strip()) for p in parts]
    except (InputError, ValueError, ZeroDivisionError) as e:
        raise InputError(f"{name}: {e}") from None
    return ComplexScalar(*vals)


def _add_element_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--elem", action="append", metavar="SPEC",
                   help="element: file path, '-' (stdin), inline JSON, or IDX=VAL,... (repeatable)")
    p.add_argument("--coeff", action="append", metavar="IDX=VAL",
                   help="coefficient of one more element built from all --coeff flags (repeatable)")
    p.add_argument("--level", type=int, help="level for inline coefficients")


# -- commands ------------------------------------------------------------------


def _cmd_mul(args, out):
    x, y = _need(args, 2, "mul")
    _emit(element_to_doc(multiply(x, y)), out)
    return 0


def _cmd_conj(args, out):
    (x,) = _need(args, 1, "conj")
    _emit(element_to_doc(conjugate(x)), out)
    return 0


def _cmd_inner(args, out):
    x, y = _need(args, 2, "inner")
    _emit({"inner": format_rational(inner_product_real(x, y))}, out)
    return 0


def _cmd_herm(args, out):
    x, y = _need(args, 2, "herm")
    _emit(complex_to_doc(hermitian_inner_product(x, y)), out)
    return 0


def _space_doc(space, basis: bool) -> dict:
    doc = subspace_to_doc(space)
    if not basis:
        del doc["basis"]
    return doc


def _cmd_ann(args, out):
    (x,) = _need(args, 1, "ann")
    _emit(_space_doc(annihilator(x), args.basis), out)
    return 0


def _cmd_alt(args, out):
    (x,) = _need(args, 1, "alt")
    space = alternator_space(x)
    doc = _space_doc(space, args.basis)
    doc["alternative"] = space.dim == x.dim
    _emit(doc, out)
    return 0


def _cmd_assoc(args, out):
    a, b = _need(args, 2, "assoc")
    doc = _space_doc(associator_space(a, b, anti=args.anti), args.basis)
    doc["anti"] = args.anti
    _emit(doc, out)
    return 0


def _parse_signs(text: str) -> list[int]:
    signs = []
    for tok in (t.strip() for t in text.split(",") if t.strip()):
        if tok in ("+", "+1", "1"):
            signs.append(1)
        elif tok in ("-", "-1"):
            signs.append(-1)
        else:
            raise InputError(f"--signs: expected + or -, got {tok!r}")
    return signs


def _cmd_construct(args, out):
    if args.ann_dim is not None:
        if args.level is None:
            raise InputError("--ann-dim needs --level")
        cert = element_with_ann_dim(args.level, args.ann_dim)
    elif args.double:
        (a,) = _need(args, 1, "--double")
        cert = double_zero_divisor(a, args.sign)
    elif args.scale_pair:
        (a,) = _need(args, 1, "--scale-pair")
        cert = scale_pair(a, _complex(args.alpha, "--alpha"), _complex(args.beta, "--beta"))
    elif args.a4:
        a1, a2 = _need(args, 2, "--a4")
        cert = a4_zero_divisor(a1, a2)
    elif args.top:
        if args.level is None:
            raise InputError("--top needs --level")
        xs = _elements(args)
        if len(xs) not in (0, 2):
            raise InputError("--top takes no elements or a seed pair of two")
        cert = top_zero_divisor(args.level, _parse_signs(args.signs) if args.signs is not None else None,
                                tuple(xs) if xs else None)
    elif args.a5_alpha:
        (alpha,) = _need(args, 1, "--a5-alpha")
        cert = a5_family(alpha)
    elif args.automorphism:
        x, y, z = _need(args, 3, "--automorphism")
        _emit({"automorphism": matrix_to_doc(build_octonion_automorphism(x, y, z)), "self_check": "pass"}, out)
        return 0
    else:
        raise InputError("choose one construct mode")
    problems = cert.check()
    doc = certificate_to_doc(cert, include_witness=not args.no_witness)
    doc["self_check"] = "pass" if not problems else "fail"
    if problems:
        doc["problems"] = problems
    _emit(doc, out)
    return 0 if not problems else 1


def _cmd_verify(args, out):
    if args.list:
        _emit({name: {"levels": [s.min_level, s.max_level], "description": s.description} for name, s in SUITES.items()}, out)
        return 0
    if args.replay:
        try:
            text = Path(args.replay).read_text(encoding="utf-8")
        except OSError as e:
            raise InputError(f"{args.replay}: {e}") from None
        records = failure_records(loads_json(text, args.replay))
        if args.index is not None:
            if not 0 <= args.index < len(records):
                raise InputError(f"--index {args.index} out of range (file has {len(records)} failures)")
            records = [records[args.index]]
        results = [replay(r) for r in records]
        _emit([r.to_doc() for r in results], out)
        return 1 if any(not r.ok for r in results) else 0
    if args.suite is None or args.level is None:
        raise InputError("verify needs --suite and --level (or --replay / --list)")
    check_level(args.level)
    sparsity = to_rational(args.sparsity) if args.sparsity is not None else None
    names = suites_for_level(args.level) if args.suite == "all" else [args.suite]
    reports = []
    for name in names:
        spec = SuiteSpec(name, args.level, args.trials, args.seed, args.bound, sparsity, args.inject_fault)
        reports.append(run_suite(spec, jobs=args.jobs))
    docs = [r.to_doc() for r in reports]
    body = json.dumps(docs if args.suite == "all" else docs[0], indent=2) + "\n"
    if args.output:
        Path(args.output).write_text(body, encoding="utf-8")
    out.write(body)
    return 0 if all(r.ok for r in reports) else 1


def _cmd_spectrum(args, out):
    res = spectrum_search(args.level, args.target, args.strategy, args.budget, args.seed, args.bound)
    files: dict[int, str] = {}
    if args.exemplar_dir:
        d = Path(args.exemplar_dir)
        d.mkdir(parents=True, exist_ok=True)
        for dim, x in sorted(res.exemplars.items()):
            path = d / f"level{res.level}_{res.target}_dim{dim}.json"
            path.write_text(json.dumps(element_to_doc(x)) + "\n", encoding="utf-8")
            files[dim] = str(path)
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["level", "dimension", "count", "exemplar_file"])
        for dim, count in sorted(res.histogram.items()):
            w.writerow([res.level, dim, count, files.get(dim, "")])
        out.write(buf.getvalue())
    else:
        doc = res.to_doc()
        if files:
            doc["exemplar_files"] = {str(k): v for k, v in files.items()}
        _emit(doc, out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cdlab", description="Exact computations in Cayley-Dickson algebras A_n.")
    p.add_argument("--version", action="version", version=f"cdlab {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    for name, fn, text in [
        ("mul", _cmd_mul, "product x y"),
        ("conj", _cmd_conj, "conjugate x*"),
        ("inner", _cmd_inner, "real inner product <x, y>"),
        ("herm", _cmd_herm, "Hermitian inner product <x, y>_H"),
    ]:
        sp = sub.add_parser(name, help=text)
        _add_element_args(sp)
        sp.set_defaults(func=fn)

    for name, fn, text in [("ann", _cmd_ann, "annihilator of x"), ("alt", _cmd_alt, "alternator space of x")]:
        sp = sub.add_parser(name, help=text)
        _add_element_args(sp)
        sp.add_argument("--basis", action="store_true", help="also print the canonical basis")
        sp.set_defaults(func=fn)

    sp = sub.add_parser("assoc", help="Ass[a, b] or, with --anti, Ass'[a, b]")
    _add_element_args(sp)
    sp.add_argument("--anti", action="store_true")
    sp.add_argument("--basis", action="store_true")
    sp.set_defaults(func=_cmd_assoc)

    sp = sub.add_parser("construct", help="theorem-backed constructions with certificates")
    _add_element_args(sp)
    mode = sp.add_mutually_exclusive_group(required=True)
    mode.add_argument("--ann-dim", type=int, metavar="D", help="element of A_level with dim Ann = D")
    mode.add_argument("--double", action="store_true", help="(a, sign i_n a) from --elem a")
    mode.add_argument("--scale-pair", action="store_true", help="(alpha a, beta a) from --elem a")
    mode.add_argument("--a4", action="store_true", help="(a1, a2) in A_4 from two octonions")
    mode.add_argument("--top", action="store_true", help="top-dimensional zero-divisor of A_level")
    mode.add_argument("--a5-alpha", action="store_true", help="A_5 family member for quaternion --elem alpha")
    mode.add_argument("--automorphism", action="store_true", help="octonion automorphism i,j,t -> x,y,z")
    sp.add_argument("--sign", type=int, choices=[1, -1], default=1)
    sp.add_argument("--alpha", default="1", metavar="RE[,IM]")
    sp.add_argument("--beta", default="0", metavar="RE[,IM]")
    sp.add_argument("--signs", metavar="+,-,...", help="doubling signs for --top (default all +)")
    sp.add_argument("--no-witness", action="store_true", help="omit the witness basis")
    sp.set_defaults(func=_cmd_construct)

    sp = sub.add_parser("verify", help="run seeded property suites or replay a failure")
    sp.add_argument("--suite", metavar="NAME|all")
    sp.add_argument("--level", type=int)
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--bound", type=int, default=9, help="coefficient bound (default 9)")
    sp.add_argument("--sparsity", metavar="P/Q", help="fraction of coordinates kept in random elements")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--output", metavar="FILE", help="also write the report here")
    sp.add_argument("--replay", metavar="FILE", help="re-run failures from a report or failure record")
    sp.add_argument("--index", type=int, help="with --replay, only the failure at this position")
    sp.add_argument("--list", action="store_true", help="list suites")
    sp.add_argument("--inject-fault", action="store_true", help="testing hook: add one failing check to trial 0")
    sp.set_defaults(func=_cmd_verify)

    sp = sub.add_parser("spectrum", help="histogram of annihilator or alternator dimensions")
    sp.add_argument("--level", type=int, required=True)
    sp.add_argument("--target", choices=["ann", "alt"], default="ann")
    sp.add_argument("--strategy", choices=["random", "structured"], default="structured")
    sp.add_argument("--budget", type=int, default=1000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--bound", type=int, default=9)
    sp.add_argument("--format", choices=["json", "csv"], default="json")
    sp.add_argument("--exemplar-dir", metavar="DIR", help="write one exemplar element per dimension")
    sp.set_defaults(func=_cmd_spectrum)
    return p


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, out)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except SystemExit as e:  # --help / --version
        return int(e.code or 0)


run_command = main


def entry() -> None:
    sys.exit(main())
