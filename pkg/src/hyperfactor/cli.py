"""Command-line front end: ``hyperfactor factor | sieve | mcss | bench``.

Exit status is 0 on success, 1 on bad input and 2 when a search finishes
without a factor (bound too small, or the number looks prime).
"""
import argparse
import json
import os
import sys
import time
from pathlib import Path

from . import bench, mcss
from .config import DEFAULTS
from .errors import HyperfactorError, InstanceFormatError, SearchExhausted
from .fermat import factor_auto, factor_with_lambda
from .sieve import FactoredModulus, build_sieve_set, sieve_cardinality, sieve_enumerate
from .tradeoff import factor_tradeoff

EXIT_OK, EXIT_INPUT, EXIT_SENTINEL = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _int(text):
    text = text.strip()
    if not text.isdigit():
        raise argparse.ArgumentTypeError(f"expected a non-negative decimal integer, got {text!r}")
    return int(text)


def _budget(text):
    name, sep, value = text.partition("=")
    name = name.upper().removeprefix("HYPERFACTOR_")
    if not sep or name not in DEFAULTS:
        raise argparse.ArgumentTypeError(f"expected NAME=VALUE with NAME in {sorted(DEFAULTS)}")
    return name, _int(value)


def _modulus(text):
    """Accept ``15015`` or a product such as ``2^8*3^3*5*7``."""
    text = text.replace(" ", "")
    if "*" in text or "^" in text:
        factors = {}
        for part in text.split("*"):
            base, _, exp = part.partition("^")
            p = _int(base)
            factors[p] = factors.get(p, 0) + (_int(exp) if exp else 1)
        return FactoredModulus(tuple(sorted(factors.items())))
    return FactoredModulus.from_int(_int(text))


def build_parser():
    parser = _Parser(prog="hyperfactor", description=__doc__.splitlines()[0])
    parser.add_argument("--budget", type=_budget, action="append", default=[],
                        metavar="NAME=VALUE", help="override an enumeration budget")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    f = sub.add_parser("factor", help="factor N with a small divisor gap")
    f.add_argument("--n", type=_int, required=True)
    f.add_argument("--lambda", dest="lam", type=_int, help="bound on the Fermat offset")
    f.add_argument("--a", type=_int, default=1)
    f.add_argument("--b", type=_int, default=1)
    f.add_argument("--algo", choices=["fermat", "tradeoff", "auto"], default="auto")
    f.add_argument("--tuned", action="store_true", help="tune prime-power exponents (fermat)")
    f.add_argument("--workers", type=int, default=1)
    f.add_argument("--output", choices=["text", "json"], default="text")

    s = sub.add_parser("sieve", help="sieve-set cardinality and enumeration")
    ssub = s.add_subparsers(dest="action", required=True, parser_class=_Parser)
    for name in ("card", "enum"):
        p = ssub.add_parser(name)
        p.add_argument("--n", type=_int, required=True)
        p.add_argument("--m", type=_modulus, required=True)
        p.add_argument("--k", type=_int, default=1)
        p.add_argument("--output", choices=["text", "json"], default="text")
    ssub.choices["card"].add_argument("--oracle", action="store_true",
                                      help="also count by enumeration")
    ssub.choices["enum"].add_argument("--shift", type=_int, default=0)

    m = sub.add_parser("mcss", help="factoring as multiple-choice subset sum")
    msub = m.add_subparsers(dest="action", required=True, parser_class=_Parser)
    ex = msub.add_parser("export")
    ex.add_argument("--n", type=_int, required=True)
    ex.add_argument("--mode", choices=["exact", "max"], default="exact")
    ex.add_argument("--u", type=_modulus, help="exact mode: U (default: primes just above sqrt N)")
    ex.add_argument("--v", type=_modulus, help="exact mode: V")
    ex.add_argument("--m", type=_modulus, help="max mode: modulus M")
    ex.add_argument("--k-sum", type=_int, help="max mode: size of the offset class")
    ex.add_argument("--bound", type=_int, help="max mode: bound added to the capacity")
    ex.add_argument("--out", type=Path, help="output file (default stdout)")
    ve = msub.add_parser("verify")
    ve.add_argument("--instance", type=Path, required=True)
    ve.add_argument("--selection", required=True, help="comma-separated class indices")
    ve.add_argument("--output", choices=["text", "json"], default="text")
    so = msub.add_parser("solve")
    so.add_argument("--instance", type=Path, required=True)
    so.add_argument("--limit", type=_int, help="stop after this many solutions")
    so.add_argument("--output", choices=["text", "json"], default="text")

    b = sub.add_parser("bench", help="CSV timings and sieve density profile")
    b.add_argument("--deltas", default="10000,100000,1000000,4000000",
                   help="comma-separated divisor gaps")
    b.add_argument("--bits", type=int, default=24, help="bit size of the smaller prime")
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--repeats", type=int, default=1)
    b.add_argument("--density", action="store_true",
                   help="print the density profile instead of timings")
    b.add_argument("--n", type=_int, help="N for the density profile")
    return parser


def _emit(args, fields, text):
    if getattr(args, "output", "text") == "json":
        print(json.dumps({k: str(v) if isinstance(v, int) and not isinstance(v, bool) else v
                          for k, v in fields.items()}))
    else:
        print(text)


def cmd_factor(args):
    N = args.n
    if N % 2 == 0:
        raise UsageError("N must be odd")
    if N < 9:
        raise UsageError("N must be at least 9")
    if args.workers < 1:
        raise UsageError("workers must be positive")
    if args.algo != "auto" and args.lam is None:
        raise UsageError(f"--lambda is required for --algo {args.algo}")
    if args.algo == "auto" and (args.a, args.b) != (1, 1):
        raise UsageError("--algo auto uses a = b = 1")
    start = time.perf_counter()
    if args.algo == "auto":
        report = factor_auto(N, workers=args.workers)
    elif args.algo == "fermat":
        report = factor_with_lambda(N, args.lam, args.a, args.b, tuned=args.tuned,
                                    workers=args.workers)
    else:
        report = factor_tradeoff(N, args.lam, args.a, args.b)
    elapsed = time.perf_counter() - start
    tests = report.square_tests
    approx = args.workers > 1 and args.algo != "tradeoff"
    fields = {
        "n": N, "divisor": report.divisor, "cofactor": report.cofactor,
        "z": report.z, "y": report.y, "square_tests": tests,
        "square_tests_approximate": approx,
        "modulus": str(report.modulus_used), "method": report.method,
        "seconds": f"{elapsed:.3f}",
    }
    lines = [f"{N} = {report.divisor} * {report.cofactor}"]
    if report.gcd_hit:
        lines.append("found by gcd with the modulus")
    else:
        lines.append(f"z = {report.z}")
        lines.append(f"y = {report.y}")
    lines.append(f"square tests = {tests}{' (approximate)' if approx else ''}")
    lines.append(f"modulus = {report.modulus_used}")
    lines.append(f"seconds = {elapsed:.3f}")
    _emit(args, fields, "\n".join(lines))
    return EXIT_OK


def cmd_sieve(args):
    N, modulus, k = args.n, args.m, args.k
    if args.action == "card":
        formula = sieve_cardinality(N, modulus, k)
        fields = {"n": N, "m": modulus.value, "k": k, "formula": formula}
        if args.oracle:
            fields["oracle"] = len(sieve_enumerate(N, modulus.value, k))
            text = f"formula={formula} oracle={fields['oracle']}"
        else:
            text = str(formula)
        _emit(args, fields, text)
        return EXIT_OK
    sieve_set = build_sieve_set(N, modulus, k, args.shift)
    if args.output == "json":
        print(json.dumps([str(x) for x in sorted(sieve_set.enumerator())]))
        return EXIT_OK
    # small sets are printed sorted; large ones stream in enumeration order
    stream = sieve_set.enumerator()
    if sieve_set.cardinality <= 1 << 16:
        stream = sorted(stream)
    out = sys.stdout
    first = True
    for x in stream:
        out.write(("" if first else " ") + str(x))
        first = False
    out.write("\n")
    return EXIT_OK


def _load_instance(path):
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return mcss.deserialize(text)


def _parse_selection(text):
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"selection must be comma-separated integers, got {text!r}") from None


def cmd_mcss(args):
    if args.action == "export":
        N = args.n
        if args.mode == "exact":
            if (args.u is None) != (args.v is None):
                raise UsageError("give both --u and --v, or neither")
            U, V = (args.u, args.v) if args.u is not None else mcss.default_split(N)
            instance = mcss.build_exact_instance(N, U, V)
        else:
            if args.m is None or args.bound is None:
                raise UsageError("max mode needs --m and --bound")
            instance = mcss.build_max_instance(N, args.m, args.k_sum, args.bound)
        text = mcss.serialize(instance)
        if args.out:
            args.out.write_text(text + "\n", encoding="utf-8")
        else:
            print(text)
        return EXIT_OK
    instance = _load_instance(args.instance)
    if args.action == "verify":
        selection = _parse_selection(args.selection)
        try:
            verdict = mcss.verify_selection(instance, selection)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        word = "satisfied" if verdict.satisfied else "violated"
        _emit(args, {"verdict": word, "total": verdict.total}, f"{word} total={verdict.total}")
        return EXIT_OK
    solutions = mcss.solve_small(instance, args.limit)
    hit = mcss.first_factoring(instance, solutions)
    fields = {"solutions": len(solutions)}
    lines = [f"solutions = {len(solutions)}"]
    if hit is not None:
        sel, s, d = hit
        fields.update(selection=",".join(map(str, sel)), offset=s, divisor=d,
                      cofactor=instance.n // d)
        lines += [f"selection = {fields['selection']}", f"offset = {s}",
                  f"{instance.n} = {d} * {instance.n // d}"]
    else:
        lines.append("no solution reconstructs a factor")
    _emit(args, fields, "\n".join(lines))
    return EXIT_OK if hit is not None else EXIT_SENTINEL


def cmd_bench(args):
    if args.density:
        N = args.n if args.n is not None else 17344343992304993085649094809
        rows = bench.density_profile(N)
        print("B,modulus,cardinality,ratio,window_count")
        for r in rows:
            print(f"{r.B},{r.modulus},{r.cardinality},{r.ratio:.4f},{r.window_count}")
        _, mean = bench.shrink_factors(rows)
        print(f"# geometric mean shrink per added prime: {mean:.3f}")
        return EXIT_OK
    try:
        deltas = [int(x) for x in args.deltas.split(",")]
    except ValueError:
        raise UsageError("--deltas must be comma-separated integers") from None
    rows = bench.run_bench(deltas, args.bits, args.seed, args.repeats)
    sys.stdout.write(bench.rows_to_csv(rows))
    return EXIT_OK


COMMANDS = {"factor": cmd_factor, "sieve": cmd_sieve, "mcss": cmd_mcss, "bench": cmd_bench}


def main(argv=None):
    parser = build_parser()
    saved = {}
    try:
        args = parser.parse_args(argv)
        for name, value in args.budget:
            key = "HYPERFACTOR_" + name
            saved.setdefault(key, os.environ.get(key))
            os.environ[key] = str(value)
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except SearchExhausted as exc:
        print(f"no factor: {exc} (square tests: {exc.square_tests})", file=sys.stderr)
        return EXIT_SENTINEL
    except InstanceFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (HyperfactorError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    finally:
        for key, value in saved.items():
            if value is None:
                os.environ.pop(key, None)
            else:
                os.environ[key] = value


if __name__ == "__main__":
    sys.exit(main())
