"""Command-line entry point wiring every module together.

Subcommands: verify-table, eval, trace, check-cancel, steenrod,
search, selftest.  All output is deterministic: randomized suites take
a seed (flag, else the CHAINPHASE_SEED environment variable, else 0)
and every report records the seed it used.  Phases are serialized as
reduced fractions, never floats.

Exit codes: 0 success; 1 a verification or comparison failed; 2 bad
input (unknown action, malformed file, inconsistent parameters).
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys

from . import fileio, process, search
from .actions import ActionFunctional, action_names, get_action
from .boundary import cylinder_theta, delta_on
from .intmat import smith_invariant_factors
from .operad import d_terms, p1_terms, phi_terms, psi
from .simplicial import Chain, Cochain, Phase, StandardComplex

BAD_INPUT = 2

TABLE_ROWS = {
    1: ("cube3", (2, 3, 5), lambda N: Phase(1, N)),
    2: ("pontryagin9", (3,), lambda N: Phase(1, 9)),
    3: ("p1b3", (3,), lambda N: Phase(1, 3)),
    4: ("p1b4", (3,), lambda N: Phase(1, 3)),
    5: ("p1b5", (3,), lambda N: Phase(1, 3)),
}

UNDETECTED_ROWS = (("cs-b3", 2), ("sq4-b5", 2))


class InputError(Exception):
    """Bad user input; maps to exit code 2."""


def _phase_obj(phase: Phase) -> dict:
    return {"num": phase.num, "den": phase.den}


def _emit(payload: dict, as_json: bool, lines) -> None:
    if as_json:
        print(json.dumps(payload, sort_keys=True, separators=(",", ":")))
    else:
        for line in lines:
            print(line)


def _resolve_seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("CHAINPHASE_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise InputError(f"CHAINPHASE_SEED must be an integer, "
                             f"got {env!r}")
    return 0


def _load_word(name_or_path: str):
    try:
        return process.builtin(name_or_path)
    except KeyError:
        pass
    try:
        return fileio.load_process(name_or_path)
    except OSError as exc:
        raise InputError(f"cannot read process {name_or_path!r}: {exc}")
    except ValueError as exc:
        raise InputError(f"malformed process file {name_or_path!r}: {exc}")


def _get_action(name: str, N) -> ActionFunctional:
    try:
        return get_action(name, N)
    except KeyError:
        raise InputError(f"unknown action {name!r}; known: "
                         f"{', '.join(action_names())}")
    except ValueError as exc:
        raise InputError(str(exc))


def cmd_verify_table(args) -> int:
    seed = _resolve_seed(args)
    rows = sorted(int(r) for r in args.rows.split(",")) if args.rows else \
        sorted(TABLE_ROWS)
    if any(r not in TABLE_ROWS for r in rows):
        raise InputError(f"rows must be a subset of 1-5, got {args.rows!r}")
    report = {"seed": seed, "rows": [], "undetected": [], "ok": True}
    lines = [f"seed: {seed}"]
    for r in rows:
        name, ns, expect = TABLE_ROWS[r]
        for N in ns:
            got = process.evaluate(process.MU56, _get_action(name, N))
            want = expect(N)
            ok = got == want
            report["rows"].append({
                "row": r, "action": name, "N": N,
                "expected": _phase_obj(want), "measured": _phase_obj(got),
                "ok": ok,
            })
            report["ok"] = report["ok"] and ok
            lines.append(f"row {r} {name} N={N}: expected {want} "
                         f"measured {got} {'ok' if ok else 'MISMATCH'}")
    if not args.rows:
        for name, N in UNDETECTED_ROWS:
            got = process.evaluate(process.MU56, _get_action(name, N))
            report["undetected"].append({
                "action": name, "N": N, "measured": _phase_obj(got),
                "detected": bool(got),
            })
            lines.append(f"{name} N={N}: measured {got} "
                         f"({'detected' if got else 'not detected'})")
    _emit(report, args.json, lines)
    return 0 if report["ok"] else 1


def cmd_eval(args) -> int:
    seed = _resolve_seed(args)
    action = _get_action(args.action, args.N)
    if args.D is not None and args.D != action.spacetime:
        raise InputError(f"action {action.name} lives in spacetime "
                         f"dimension {action.spacetime}, not {args.D}")
    word = _load_word(args.process)
    initial = None
    if args.initial:
        try:
            initial = fileio.load_cochain(args.initial)
        except (OSError, ValueError, KeyError) as exc:
            raise InputError(f"bad initial state file: {exc}")
    try:
        phase = process.evaluate(word, action, initial=initial)
    except ValueError as exc:
        raise InputError(str(exc))
    cancel = process.check_cancellation(word)
    payload = {
        "seed": seed, "action": action.name, "N": action.modulus,
        "D": action.spacetime, "steps": len(word),
        "phase": _phase_obj(phase), "trace_ok": True,
        "cancellation_ok": cancel.ok,
    }
    _emit(payload, args.json, [
        f"seed: {seed}",
        f"action: {action.name} (N={action.modulus}, D={action.spacetime})",
        f"steps: {len(word)}",
        f"phase: {phase}",
        f"cancellation: {'pass' if cancel.ok else 'FAIL'}",
    ])
    return 0


def cmd_trace(args) -> int:
    seed = _resolve_seed(args)
    word = _load_word(args.process)
    degree = len(word[0][1]) - 2
    initial = Chain(degree, {})
    if args.initial:
        try:
            initial = fileio.load_chain(args.initial)
        except (OSError, ValueError, KeyError) as exc:
            raise InputError(f"bad initial state file: {exc}")
    problems = []
    if args.diff_golden:
        path = None if args.diff_golden == "builtin" else args.diff_golden
        try:
            golden = fileio.load_golden_trace(path)
        except OSError as exc:
            raise InputError(f"cannot read golden file: {exc}")
        except ValueError as exc:
            raise InputError(f"malformed golden file: {exc}")
        problems = process.golden_trace_diff(word, golden, initial=initial)
    states = process.trace(word, initial)
    payload = {
        "seed": seed, "steps": len(word),
        "states": [sorted(("".join(map(str, t)), c) for t, c in st.items())
                   for st in states],
        "golden_diff": problems,
        "ok": not problems,
    }
    lines = [f"seed: {seed}"]
    for i, st in enumerate(states):
        body = " ".join(f"{c:+d}*{''.join(map(str, t))}"
                        for t, c in sorted(st.items())) or "0"
        lines.append(f"{i:3d}: {body}")
    lines.extend(problems)
    if args.diff_golden and not problems:
        lines.append("golden trace: exact match")
    _emit(payload, args.json, lines)
    return 0 if not problems else 1


def _parse_coeff(text: str) -> int:
    if text == "Z":
        return 0
    if text.startswith("Z") and text[1:].isdigit() and int(text[1:]) >= 2:
        return int(text[1:])
    raise InputError(f"coefficients must be Z or Z<n>, got {text!r}")


def cmd_check_cancel(args) -> int:
    seed = _resolve_seed(args)
    word = _load_word(args.process)
    modulus = _parse_coeff(args.coeff)
    report = process.check_cancellation(word, modulus=modulus)
    payload = {
        "seed": seed, "coeff": args.coeff, "steps": len(word),
        "ok": report.ok,
        "violations": [{"vertex": v, "cell": "".join(map(str, cell)),
                        "count": len(bad)}
                       for (v, cell), bad in sorted(report.residues.items())],
    }
    _emit(payload, args.json, [
        f"seed: {seed}",
        f"cancellation over {args.coeff}: "
        f"{'pass' if report.ok else 'FAIL'}",
    ] + [f"residue at vertex {v}, cell {''.join(map(str, cell))}"
         for (v, cell) in sorted(report.residues)])
    return 0 if report.ok else 1


def cmd_steenrod(args) -> int:
    seed = _resolve_seed(args)
    if args.what == "psi3":
        table = psi(3, args.n)
        items = ["".join(map(str, w)) for w, c in sorted(table.items())
                 for _ in range(c)]
        payload = {"seed": seed, "what": "psi3", "n": args.n,
                   "count": len(table), "words": items}
        lines = [f"seed: {seed}", f"psi(3)(e_{args.n}): {len(table)} words",
                 " ".join(items)]
    elif args.what == "d3":
        terms = d_terms(3, args.n, args.q)
        payload = {"seed": seed, "what": "d3", "i": args.n, "q": args.q,
                   "count": len(terms)}
        lines = [f"seed: {seed}",
                 f"D^3_{args.n} on degree-{args.q} cochains: "
                 f"{len(terms)} terms"]
    elif args.what == "p1":
        terms = p1_terms(args.q)
        payload = {"seed": seed, "what": "p1", "q": args.q,
                   "count": len(terms)}
        lines = [f"seed: {seed}",
                 f"P^1 on degree-{args.q} cochains: {len(terms)} terms"]
    else:
        raise InputError(f"unknown listing {args.what!r}")
    _emit(payload, args.json, lines)
    return 0


def _parse_group(text: str) -> int:
    if text.startswith("Z") and text[1:].isdigit():
        return int(text[1:])
    if text == "Z":
        return 0
    raise InputError(f"fusion group must be Z or Z<n>, got {text!r}")


def _lift_halved_expression(residual, model):
    """The paper's final step: find an all-even residual row, halve it,
    and rebuild a process word from the halved expression."""
    for rid in sorted(residual.rows):
        row = residual.rows[rid]
        if all(v % 2 == 0 for v in row.values()):
            halved = {col: v // 2 for col, v in row.items()}
            try:
                return search.reconstruct_process(halved, model)
            except search.ReconstructError:
                continue
    return None


def cmd_search(args) -> int:
    seed = _resolve_seed(args)
    modulus = _parse_group(args.G)
    try:
        model = search.build_model(modulus, args.p, args.d)
    except ValueError as exc:
        raise InputError(str(exc))
    if args.stretch_membrane:
        result = search.legality_search(
            model, attempts=args.attempts, checkpoint=args.checkpoint,
            seed=seed, max_depth=args.depth)
        payload = {"seed": seed, "mode": "legality",
                   "attempts": result["attempts"],
                   "successes": result["successes"]}
        _emit(payload, args.json, [
            f"seed: {seed}",
            f"legality trials: {result['attempts']}, "
            f"successes: {len(result['successes'])}",
        ])
        return 0
    factors, residual, log = search.classify(model, args.depth)
    payload = {
        "seed": seed, "G": args.G, "p": args.p, "d": args.d,
        "generators": len(model.generators),
        "configurations": len(model.configurations),
        "invariant_factors": factors,
        "residual_shape": list(residual.shape),
    }
    lines = [
        f"seed: {seed}",
        f"model: {model!r}",
        f"invariant factors: {factors or '[]'}",
    ]
    word = None
    if factors and args.emit_process:
        word = _lift_halved_expression(residual, model)
        if word:
            text = "".join(
                ("+ " if sign > 0 else "- ")
                + " ".join(map(str, cell)) + "\n"
                for sign, cell in word)
            with open(args.emit_process, "w") as fh:
                fh.write(text)
            lines.append(f"process written to {args.emit_process} "
                         f"({len(word)} steps)")
            payload["process_steps"] = len(word)
        else:
            lines.append("no halvable residual expression found")
            payload["process_steps"] = None
    _emit(payload, args.json, lines)
    return 0


def cmd_selftest(args) -> int:
    seed = _resolve_seed(args)
    rng = random.Random(seed)
    checks = []

    def check(name, fn):
        try:
            ok = bool(fn())
            detail = ""
        except Exception as exc:  # report, never crash the suite
            ok, detail = False, f" ({exc})"
        checks.append((name, ok))
        print(f"{'pass' if ok else 'FAIL'}: {name}{detail}")

    check("golden trace matches",
          lambda: not process.golden_trace_diff(
              process.MU56, fileio.load_golden_trace()))
    check("cancellation over Z",
          lambda: process.check_cancellation(process.MU56).ok)
    check("truncated word fails cancellation",
          lambda: not process.check_cancellation(process.MU56[:-1]).ok)
    check("operad golden: psi3 listings",
          lambda: all(psi(3, n) == table
                      for n, table in fileio.load_psi3().items()))
    check("operad golden: P1 term counts",
          lambda: (len(p1_terms(3)), len(d_terms(3, 4, 4)),
                   len(d_terms(3, 6, 5))) == (19, 177, 1110))
    check("table row 1 at N=2",
          lambda: process.evaluate(process.MU56, get_action("cube3", 2))
          == Phase(1, 2))
    check("pauli accumulation vanishes",
          lambda: not process.pauli_triviality_check(
              process.MU56,
              {cell: Cochain(2, {t: rng.randrange(5)
                                 for t in StandardComplex.simplex(5)
                                 .simplices(2)})
               for cell in {c for _, c in process.MU56}}, 5))
    check("particle model torsion is [4]",
          lambda: search.classify(search.build_model(2, 0, 2))[0] == [4])
    check("smith oracle on a fixed matrix",
          lambda: smith_invariant_factors([[2, 4, 4], [-6, 6, 12],
                                           [10, 4, 16]]) == [2, 2, 156])
    failed = [name for name, ok in checks if not ok]
    print(f"seed: {seed}")
    print(f"{len(checks) - len(failed)}/{len(checks)} checks passed")
    return 0 if not failed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chainphase",
        description="Exact phases of excitation-moving processes.")
    parser.add_argument("--seed", type=int, default=None,
                        help="seed for randomized suites "
                        "(default: $CHAINPHASE_SEED or 0)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-table",
                       help="evaluate the 56-step word against every "
                       "tabulated action")
    p.add_argument("--rows", help="comma-separated subset of 1-5")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_verify_table)

    p = sub.add_parser("eval", help="total phase of a word under an action")
    p.add_argument("--action", required=True)
    p.add_argument("--N", type=int, default=None)
    p.add_argument("--D", type=int, default=None)
    p.add_argument("--process", default="mu56",
                   help="builtin name (mu56, tjunction) or file path")
    p.add_argument("--initial", help="JSON cochain file for the start state")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_eval)

    p = sub.add_parser("trace", help="walk a word's chain states")
    p.add_argument("--process", default="mu56")
    p.add_argument("--initial", help="JSON chain file for the start state")
    p.add_argument("--diff-golden", metavar="PATH",
                   help="compare against a golden trace file "
                   "('builtin' for the packaged 56-step trace)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_trace)

    p = sub.add_parser("check-cancel",
                       help="local cancellation verdict for a word")
    p.add_argument("--process", default="mu56")
    p.add_argument("--coeff", default="Z", help="Z or Z<n>")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_check_cancel)

    p = sub.add_parser("steenrod", help="print operad term listings")
    p.add_argument("--what", required=True, choices=("psi3", "d3", "p1"))
    p.add_argument("--n", type=int, default=2,
                   help="subscript for psi3/d3 listings")
    p.add_argument("--q", type=int, default=3, help="input cochain degree")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_steenrod)

    p = sub.add_parser("search",
                       help="classify statistical processes for a model")
    p.add_argument("--G", required=True, help="fusion group, Z or Z<n>")
    p.add_argument("--p", type=int, required=True,
                   help="excitation dimension")
    p.add_argument("--d", type=int, required=True, help="space dimension")
    p.add_argument("--depth", type=int, default=3,
                   help="commutator nesting cutoff")
    p.add_argument("--stretch-membrane", action="store_true",
                   help="legality-lifting scan (batch scale, resumable)")
    p.add_argument("--attempts", type=int, default=1,
                   help="sign-function trials for the stretch scan")
    p.add_argument("--checkpoint", help="checkpoint file for the scan")
    p.add_argument("--workers", type=int, default=1,
                   help="reserved; trials run sequentially")
    p.add_argument("--emit-process", metavar="PATH",
                   help="write a reconstructed process word here")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_search)

    p = sub.add_parser("selftest", help="run the built-in smoke suite")
    p.set_defaults(fn=cmd_selftest)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
