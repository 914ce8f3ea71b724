"""Command-line front end.

Exit status: 0 on success with every verdict consistent, 2 when a criterion
verdict disagrees with the Walsh verdict (or a count/permutation check
fails), 1 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor, as_completed
from typing import Iterable, List, Optional, Sequence

from . import acceptance
from .boolfun import read_tt, spectrum_csv, walsh_spectrum
from .constructions import (FAMILIES, HuParams, LiParams, MaParams, NewParams,
                            enumerate_new, expected_count, hu_grid, li_grid, ma_grid)
from .field import MODULI_ENV, Field, first_noncube, make_field, noncubes
from .linpoly import LinearizedPoly, build_P, permutation_report
from .report import RowWriter, construct, instance_row
from .skewpoly import SkewPoly, gcrd

EXIT_OK, EXIT_USAGE, EXIT_MISMATCH = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _bits(text: str) -> tuple:
    if text is None:
        return ()
    text = text.replace(",", "").strip()
    if any(ch not in "01" for ch in text):
        raise UsageError(f"coefficient vector must be a 0/1 string, got {text!r}")
    return tuple(int(ch) for ch in text)


def _index_list(text: Optional[str]) -> frozenset:
    if not text:
        return frozenset()
    try:
        return frozenset(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise UsageError(f"bad index list {text!r}")


def _noncube_arg(F: Field, text: Optional[str]):
    if text is None or text == "first":
        return first_noncube(F)
    return F(text)


def build_parser() -> argparse.ArgumentParser:
    def global_args(q, defaults: bool):
        # accepted before or after the subcommand; the subcommand copy only overrides
        d = (lambda v: v) if defaults else (lambda v: argparse.SUPPRESS)
        q.add_argument("--format", choices=("json", "csv", "text"), default=d("text"))
        q.add_argument("--moduli", default=d(None), help=f"modulus override file (also ${MODULI_ENV})")
        q.add_argument("--seed", type=int, default=d(acceptance.DEFAULT_SEED))
        q.add_argument("--jobs", type=int, default=d(1), help="worker processes for sweeps")
        q.add_argument("--sorted", action="store_true", default=d(False),
                       help="buffer parallel rows into grid order")

    p = _Parser(prog="qbent", description="Quadratic bent functions over GF(2^n).")
    global_args(p, True)
    common = _Parser(add_help=False)
    global_args(common, False)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def command(name, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    def family_args(sp):
        sp.add_argument("--family", choices=FAMILIES, required=True)
        sp.add_argument("--n", type=int, required=True)
        sp.add_argument("--c", help="0/1 string c_1c_2... (ma, hu)")
        sp.add_argument("--e", type=int, help="step e (hu)")
        sp.add_argument("--beta", help="hex element of GF(2^e) (hu)")
        sp.add_argument("--strict", action="store_true", help="hu: gcd against x^n+1")
        sp.add_argument("--k", type=int, help="step k (li)")
        sp.add_argument("--t", type=int, help="number of Gold terms t (li)")
        sp.add_argument("--a", help="hex non-cube or 'first' (new)")
        sp.add_argument("--I", dest="I", help="comma-separated subset of T (new)")

    family_args(command("construct", help="print a trace form and criterion verdict"))
    family_args(command("verify", help="criterion, Walsh, rank and degree for one instance"))

    en = command("enumerate", help="sweep a family over its parameter grid")
    en.add_argument("--family", choices=FAMILIES, required=True)
    en.add_argument("--n", type=int, required=True)
    en.add_argument("--a", default="first", help="new: first | all | sample:K | <hex>")
    en.add_argument("--strict", action="store_true")
    en.add_argument("--tmax", type=int, default=5, help="li: largest t")

    g = command("gcrd", help="monic gcrd of two skew polynomials")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("f", help="comma-separated hex coefficients, constant first")
    g.add_argument("g")

    pc = command("perm-check", help="three permutation tests on a linearized polynomial")
    pc.add_argument("--n", type=int, required=True)
    grp = pc.add_mutually_exclusive_group(required=True)
    grp.add_argument("--coeffs", help="comma-separated hex a_0,...,a_(n-1)")
    grp.add_argument("--P", dest="P", action="store_true", help="use P(x) built from --a")
    pc.add_argument("--a", help="hex non-cube for --P, or 'first'")

    sp = command("spectrum", help="Walsh spectrum CSV of a truth-table file")
    sp.add_argument("--tt", required=True)

    command("selftest", help="run the acceptance checks")
    return p


def params_from_args(args, F: Field):
    fam = args.family
    if fam == "ma":
        return MaParams(F.n, _bits(args.c) if args.c is not None else (0,) * (F.n // 2 - 1))
    if fam == "hu":
        if args.e is None or args.c is None:
            raise UsageError("hu needs --e and --c")
        beta = F(args.beta) if args.beta else F.one
        return HuParams(F.n, args.e, beta, _bits(args.c))
    if fam == "li":
        if args.k is None or args.t is None:
            raise UsageError("li needs --k and --t")
        return LiParams(F.n, args.k, args.t)
    return NewParams(F, _noncube_arg(F, args.a), _index_list(args.I))


def _row_task(task):
    family, F, params, strict = task
    return instance_row(family, F, params, strict=strict)


def _stream(tasks: List, writer: RowWriter, jobs: int, ordered: bool) -> int:
    """Write one row per task as it completes; returns the number of mismatches."""
    if jobs <= 1:
        rows = map(_row_task, tasks)
        return _drain(rows, writer)
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        if ordered:
            return _drain(pool.map(_row_task, tasks, chunksize=8), writer)
        futures = [pool.submit(_row_task, t) for t in tasks]
        return _drain((f.result() for f in as_completed(futures)), writer)


def _drain(rows: Iterable[dict], writer: RowWriter) -> int:
    bad = 0
    for row in rows:
        writer.write(row)
        bad += row["predicted"] != row["verified"]
    return bad


def _select_noncubes(F: Field, mode: str, rng: random.Random):
    if mode == "first":
        return [first_noncube(F)]
    if mode == "all":
        return noncubes(F)
    if mode.startswith("sample:"):
        try:
            k = int(mode.split(":", 1)[1])
        except ValueError:
            raise UsageError(f"bad sample size in {mode!r}")
        if k < 1:
            raise UsageError("sample count must be >= 1")
        pool = noncubes(F)
        return sorted(rng.sample(pool, min(k, len(pool))), key=lambda z: z.value)
    return [F(mode)]


def cmd_enumerate(args, out) -> int:
    F = make_field(args.n)
    writer = RowWriter(out, args.format)
    status = EXIT_OK
    if args.family == "new":
        rng = random.Random(args.seed)
        tasks = []
        for a in _select_noncubes(F, args.a, rng):
            instances = enumerate_new(F, a)
            if len(instances) != expected_count(F.n):
                print(f"count mismatch for a={a.hex()}: {len(instances)} != {expected_count(F.n)}",
                      file=sys.stderr)
                status = EXIT_MISMATCH
            tasks.extend(("new", F, NewParams(F, a, I), False) for I, _ in instances)
    elif args.family == "ma":
        tasks = [("ma", F, p, False) for p in ma_grid(F.n)]
    elif args.family == "hu":
        tasks = [("hu", F, p, args.strict) for p in hu_grid(F.n, F)]
    else:
        tasks = [("li", F, p, False) for p in li_grid(F.n, args.tmax)]
    if _stream(tasks, writer, args.jobs, ordered=args.sorted or args.jobs <= 1):
        status = EXIT_MISMATCH
    return status


def cmd_construct(args, out, verify: bool) -> int:
    F = make_field(args.n)
    params = params_from_args(args, F)
    if verify:
        row = instance_row(args.family, F, params, strict=args.strict)
        RowWriter(out, args.format, fields=tuple(row)).write(row)
        return EXIT_OK if row["predicted"] == row["verified"] else EXIT_MISMATCH
    r, predicted = construct(args.family, F, params, strict=args.strict)
    row = {"family": args.family, "n": F.n, "params": params.label(),
           "predicted": predicted, "repr": str(r)}
    if args.format == "json":
        row["terms"] = r.to_json()["terms"]
    RowWriter(out, args.format, fields=tuple(row)).write(row)
    return EXIT_OK


def cmd_gcrd(args, out) -> int:
    F = make_field(args.n)
    f = SkewPoly.parse_hex_list(F, args.f)
    g = SkewPoly.parse_hex_list(F, args.g)
    d = gcrd(f, g)
    if args.format == "json":
        out.write(json.dumps(d.to_json()) + "\n")
    elif args.format == "csv":
        out.write("degree,coeffs\n")
        out.write(f"{d.degree},{' '.join(c.hex() for c in d.coeffs)}\n")
    else:
        out.write(f"{d}\n")
    return EXIT_OK


def cmd_perm_check(args, out) -> int:
    F = make_field(args.n)
    if args.P:
        L = build_P(F, _noncube_arg(F, args.a))
    else:
        items = [t.strip() for t in args.coeffs.split(",") if t.strip()]
        L = LinearizedPoly(F, [F(t) for t in items])
    rep = permutation_report(L)
    row = {"n": F.n, "L": str(L), **rep}
    RowWriter(out, args.format, fields=tuple(row)).write(row)
    if not rep["agree"] or (args.P and not rep["gcrd"]):
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_spectrum(args, out) -> int:
    with open(args.tt) as fh:
        f = read_tt(fh)
    spectrum_csv(walsh_spectrum(f, make_field(f.n)), out)
    return EXIT_OK


def cmd_selftest(args, out) -> int:
    results = acceptance.run_all(seed=args.seed, emit=lambda line: print(line, file=out, flush=True))
    failed = [r for r in results if not r.passed and not r.informational]
    print(f"{len(results) - len(failed)}/{len(results)} criteria passed", file=out)
    return EXIT_MISMATCH if failed else EXIT_OK


def run(argv: Sequence[str], out=None) -> int:
    out = out or sys.stdout
    saved = os.environ.get(MODULI_ENV)
    try:
        args = build_parser().parse_args(list(argv))
        if args.moduli:
            # worker processes inherit the override through the environment
            os.environ[MODULI_ENV] = args.moduli
        if args.jobs < 1:
            raise UsageError("--jobs must be >= 1")
        if args.command in ("construct", "verify"):
            return cmd_construct(args, out, verify=args.command == "verify")
        if args.command == "enumerate":
            return cmd_enumerate(args, out)
        if args.command == "gcrd":
            return cmd_gcrd(args, out)
        if args.command == "perm-check":
            return cmd_perm_check(args, out)
        if args.command == "spectrum":
            return cmd_spectrum(args, out)
        return cmd_selftest(args, out)
    except UsageError as exc:
        print(f"qbent: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, ArithmeticError, OSError) as exc:
        print(f"qbent: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        if saved is None:
            os.environ.pop(MODULI_ENV, None)
        else:
            os.environ[MODULI_ENV] = saved


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
