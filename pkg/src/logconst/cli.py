"""Command-line front end.

Exit codes: 0 holds / verified / logical, 1 countermodel / failed / not
logical, 2 error or budget refusal. ``--machine`` prints one JSON object per
result line.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional

from . import entailment as ent
from .generators import DEFAULT_SIGNATURE, FormulaGenerator
from .kernel import AtLeast, AtMost, Exactly, enumerate_quantifier_functions, parse_multiset_literal, \
    parse_quantifier_literal
from .logicality import classify, render_matrix
from .quantifier_algebra import canonical_definition, verify_definition, verify_duality
from .semantics import eval_formula, load_model, render_model
from .syntax import ParseError, Signature, infer_signature, parse, parse_signature, print_formula

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    sig_path: Optional[str] = None
    model_path: Optional[str] = None
    max_size: int = ent.DEFAULT_MAX_SIZE
    budget: int = ent.DEFAULT_BUDGET
    machine: bool = False
    seed: int = 0
    jobs: int = 1

    def __post_init__(self):
        if self.max_size < 1:
            raise UsageError("--max-size must be at least 1")
        if self.budget < 1:
            raise UsageError("--budget must be at least 1")
        if self.jobs < 1:
            raise UsageError("--jobs must be at least 1")

    def map(self, fn, items, *extra):
        """Ordered map; results come back in input order whatever the worker count."""
        columns = [items] + [[e] * len(items) for e in extra]
        if self.jobs == 1:
            return list(map(fn, *columns))
        with ProcessPoolExecutor(self.jobs) as pool:
            return list(pool.map(fn, *columns))


class Output:
    def __init__(self, config: RunConfig, stream=None):
        self.machine = config.machine
        self.stream = stream or sys.stdout

    def emit(self, text: str, record: dict):
        if self.machine:
            line = json.dumps(record, sort_keys=True, ensure_ascii=False)
        else:
            line = text
        print(line, file=self.stream)


def _signature(config: RunConfig, texts: List[str]) -> Signature:
    base = parse_signature(Path(config.sig_path).read_text()) if config.sig_path else None
    return infer_signature(texts, base)


def _verdict(out: Output, command: str, verdict, config: RunConfig, **extra) -> int:
    if isinstance(verdict, ent.HoldsUpTo):
        out.emit(verdict.render(), dict(command=command, verdict="HoldsUpTo", max_size=verdict.max_size, **extra))
        return EXIT_OK
    model = render_model(verdict.interpretation)
    out.emit("Countermodel:\n" + model,
             dict(command=command, verdict="Countermodel", max_size=config.max_size, model=model, **extra))
    return EXIT_FAIL


def cmd_eval(config: RunConfig, out: Output, formula: str) -> int:
    if not config.model_path:
        raise UsageError("eval needs --model")
    sig = _signature(config, [formula])
    phi = parse(formula, sig, sentence=True)
    interp = load_model(Path(config.model_path).read_text(), sig)
    value = eval_formula(phi, interp)
    out.emit(str(value), dict(command="eval", formula=print_formula(phi), value=value))
    return EXIT_OK


def cmd_table(config: RunConfig, out: Output) -> int:
    qs = enumerate_quantifier_functions()
    reports = config.map(_define_and_verify, qs, config.max_size)
    for r in reports:
        out.emit(r.render(), dict(command="table", quantifier=r.quantifier.name,
                                  definition=print_formula(r.definition), status=r.status,
                                  verified_up_to=r.verified_up_to))
    return EXIT_OK if all(r.verified for r in reports) else EXIT_FAIL


def _define_and_verify(q, max_size):
    return verify_definition(q, canonical_definition(q), max_size)


def cmd_define(config: RunConfig, out: Output, literal: str) -> int:
    try:
        q = parse_quantifier_literal(literal)
    except ValueError as e:
        raise UsageError(str(e)) from None
    r = verify_definition(q, canonical_definition(q), config.max_size)
    out.emit(r.render(), dict(command="define", quantifier=q.name, definition=print_formula(r.definition),
                              status=r.status, verified_up_to=r.verified_up_to))
    return EXIT_OK if r.verified else EXIT_FAIL


def _quantifier(literal: str):
    for reader in (parse_quantifier_literal, parse_multiset_literal):
        try:
            return reader(literal)
        except ValueError:
            pass
    raise UsageError(f"unknown quantifier literal {literal!r}")


def default_quantifiers() -> list:
    out: list = list(enumerate_quantifier_functions())
    for family in (Exactly, AtLeast, AtMost):
        out += [family(k) for k in range(4)]
    return out


def cmd_classify(config: RunConfig, out: Output, literal: Optional[str]) -> int:
    quantifiers = [_quantifier(literal)] if literal else default_quantifiers()
    rows = config.map(classify, quantifiers)
    if out.machine:
        for c in rows:
            cx = c.surjection_counterexample
            out.emit("", dict(
                command="classify", quantifier=c.name, verdict=c.verdict.value, bound=c.bound,
                factors_through_support=c.factors_through_support,
                surjection_invariant=c.surjection_invariant, bijection_invariant=c.bijection_invariant,
                induced=c.induced.name if c.induced else None,
                surjection_counterexample=cx.render() if cx else None))
    else:
        lines = [render_matrix(rows)]
        for c in rows:
            if c.surjection_counterexample:
                lines.append(f"{c.name}: surjection counterexample {c.surjection_counterexample.render()}")
        out.emit("\n".join(lines), {})
    return EXIT_OK if all(c.verdict.value == "Logical" for c in rows) else EXIT_FAIL


def cmd_truth(config: RunConfig, out: Output, formula: str) -> int:
    sig = _signature(config, [formula])
    phi = parse(formula, sig, sentence=True)
    v = ent.is_logical_truth(phi, sig, config.max_size, config.budget)
    return _verdict(out, "truth", v, config, formula=print_formula(phi))


def cmd_equiv(config: RunConfig, out: Output, left: str, right: str) -> int:
    sig = _signature(config, [left, right])
    phi, psi = parse(left, sig, sentence=True), parse(right, sig, sentence=True)
    v = ent.check_equivalence(phi, psi, sig, config.max_size, config.budget)
    return _verdict(out, "equiv", v, config, left=print_formula(phi), right=print_formula(psi))


def read_premises(text: str) -> List[str]:
    lines = (raw.split("#", 1)[0].strip() for raw in text.splitlines())
    return [line for line in lines if line]


def cmd_consequence(config: RunConfig, out: Output, premises_path: str, conclusion: str) -> int:
    texts = read_premises(Path(premises_path).read_text())
    sig = _signature(config, texts + [conclusion])
    premises = [parse(t, sig, sentence=True) for t in texts]
    phi = parse(conclusion, sig, sentence=True)
    v = ent.consequence(premises, phi, sig, config.max_size, config.budget)
    return _verdict(out, "consequence", v, config,
                    premises=[print_formula(p) for p in premises], conclusion=print_formula(phi))


def cmd_duality(config: RunConfig, out: Output) -> int:
    report = verify_duality(config.max_size)
    for c in report.checks:
        text = f"{c.name}: " + ("Verified" if c.verified else "Countermodel\n" + c.verdict.render())
        rec = dict(command="duality", law=c.name, status="Verified" if c.verified else "Failed",
                   max_size=config.max_size)
        if not c.verified:
            rec["model"] = c.verdict.render()
        out.emit(text, rec)
    return EXIT_OK if report.verified else EXIT_FAIL


def cmd_roundtrip(config: RunConfig, out: Output, count: int) -> int:
    gen = FormulaGenerator(DEFAULT_SIGNATURE, seed=config.seed)
    failures = 0
    for _ in range(count):
        phi = gen.formula()
        if parse(print_formula(phi), DEFAULT_SIGNATURE) != phi:
            failures += 1
    out.emit(f"{count - failures}/{count} round-trips ok (seed {config.seed})",
             dict(command="roundtrip", count=count, failures=failures, seed=config.seed))
    return EXIT_OK if failures == 0 else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="logconst", description=__doc__.splitlines()[0])
    p.add_argument("--sig", dest="sig_path", help="signature file (const a / fun f/2 / pred P/1)")
    p.add_argument("--model", dest="model_path", help="model file for eval")
    p.add_argument("--max-size", type=int, default=ent.DEFAULT_MAX_SIZE)
    p.add_argument("--budget", type=int, default=ent.DEFAULT_BUDGET)
    p.add_argument("--machine", action="store_true", help="one JSON object per line")
    p.add_argument("--seed", type=int, default=0, help="seed for generated formulas")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for table/classify")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("eval", help="evaluate a sentence in --model").add_argument("formula")
    sub.add_parser("table", help="definitions of all 8 quantifier functions")
    sub.add_parser("define", help="definition of one Q[XYZ]").add_argument("literal")
    sub.add_parser("classify", help="logicality matrix").add_argument("literal", nargs="?")
    eq = sub.add_parser("equiv", help="bounded equivalence check")
    eq.add_argument("left")
    eq.add_argument("right")
    sub.add_parser("truth", help="bounded logical-truth check").add_argument("formula")
    cons = sub.add_parser("consequence", help="bounded consequence check")
    cons.add_argument("premises", help="file, one sentence per line")
    cons.add_argument("formula")
    sub.add_parser("duality", help="check forall/exists duality")
    rt = sub.add_parser("roundtrip", help="parse/print round-trip on generated formulas")
    rt.add_argument("--count", type=int, default=1000)
    return p


def main(argv=None, stream=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = RunConfig(args.sig_path, args.model_path, args.max_size, args.budget, args.machine, args.seed,
                           args.jobs)
        out = Output(config, stream)
        c = args.command
        if c == "eval":
            return cmd_eval(config, out, args.formula)
        if c == "table":
            return cmd_table(config, out)
        if c == "define":
            return cmd_define(config, out, args.literal)
        if c == "classify":
            return cmd_classify(config, out, args.literal)
        if c == "equiv":
            return cmd_equiv(config, out, args.left, args.right)
        if c == "truth":
            return cmd_truth(config, out, args.formula)
        if c == "consequence":
            return cmd_consequence(config, out, args.premises, args.formula)
        if c == "duality":
            return cmd_duality(config, out)
        return cmd_roundtrip(config, out, args.count)
    except (UsageError, ParseError, ValueError, OSError, ent.BudgetExceeded) as e:
        err = stream or sys.stderr
        if args.machine:
            print(json.dumps({"command": args.command, "error": str(e)}, sort_keys=True), file=stream or sys.stdout)
        else:
            print(f"error: {e}", file=err)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
