"""Execute parsed scripts and render deterministic reports."""

from __future__ import annotations

import hashlib
import json
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from ortholab import __version__
from ortholab.checks import CheckReport, derive_seed
from ortholab.config import DEFAULT_SEED, DEFAULT_TRIALS
from ortholab.dsl import Command, Script, format_command, parse
from ortholab.errors import OrthoLabError, RejectedError, ValidationError
from ortholab.lattice import Vec
from ortholab.multilinear import (
    FullTensor,
    Polynomial,
    SampledForm,
    SymTensor,
    as_form,
    is_positive,
    is_symmetric,
    symmetric_form,
)
from ortholab.npower import LinFunc, QuotientModel, represent_pl_polynomial, represent_polynomial
from ortholab.ortho import (
    Partition,
    disjoint,
    is_orthogonally_additive,
    is_orthosymmetric,
    is_p_disjoint,
    is_p_orthosymmetric,
)
from ortholab.pl import PLFunc, PPoly, is_support_disjoint
from ortholab.theorems import verify_corpus, verify_instance

EXIT_OK, EXIT_FAIL, EXIT_INVALID = 0, 1, 2


def jsonable(obj):
    """Tagged, order-stable JSON structure; every rational becomes a "p/q" string."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, int):
        return obj
    if isinstance(obj, Vec):
        return {"vec": [jsonable(a) for a in obj.entries]}
    if isinstance(obj, PLFunc):
        return {"pl": [[jsonable(t), jsonable(v)] for t, v in obj.points()]}
    if isinstance(obj, PPoly):
        return {"ppoly": {"breakpoints": jsonable(list(obj.breakpoints)), "pieces": jsonable(list(obj.pieces))}}
    if isinstance(obj, (FullTensor, SymTensor)):
        tag = "tensor" if isinstance(obj, FullTensor) else "sym"
        return {tag: {"d": obj.d, "n": obj.n, "entries": [[list(k), jsonable(v)] for k, v in obj.entries.items()]}}
    if isinstance(obj, SampledForm):
        return {"sampled": {"n": obj.n, "terms": [[jsonable(w), jsonable(list(p))] for w, p in obj.terms]}}
    if isinstance(obj, Polynomial):
        return {"poly": jsonable(obj.form)}
    if isinstance(obj, LinFunc):
        if obj.coefficients is not None:
            return {"functional": {"coefficients": jsonable(list(obj.coefficients))}}
        return {"functional": {"samples": [[jsonable(w), jsonable(s)] for w, s in obj.samples]}}
    if isinstance(obj, Partition):
        return {"partition": [list(b) for b in obj.blocks]}
    if isinstance(obj, QuotientModel):
        return {"quotient": {"d": obj.d, "n": obj.n, "dim": obj.dim, "kernel_rank": obj.kernel_rank}}
    if isinstance(obj, CheckReport):
        return report_fields(obj)
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [jsonable(v) for v in items]
    raise ValidationError(f"cannot serialize {type(obj).__name__}")


def report_fields(rep: CheckReport) -> Dict:
    return {
        "verdict": rep.verdict,
        "witness": jsonable(rep.witness),
        "trials": rep.trials,
        "seed": rep.seed,
        "method": rep.method,
        "note": rep.note,
        "details": jsonable(rep.details),
    }


def _form_for_checks(value):
    """Polynomials are checked through the symmetric form they determine."""
    return symmetric_form(value) if isinstance(value, Polynomial) else value


def _represent(value, trials: int, seed: int) -> CheckReport:
    form = as_form(value)
    try:
        if isinstance(form, SampledForm):
            trials = 0
            L = represent_pl_polynomial(value)
        else:
            L = represent_polynomial(value, trials=trials, seed=seed)
    except RejectedError as exc:
        return CheckReport(False, witness=exc.witness, trials=trials, seed=seed, note=f"rejected: {exc}")
    return CheckReport(True, trials=trials, seed=seed, details={"functional": L})


def execute(cmd: Command, env: Dict, trials: int, seed: int) -> CheckReport:
    args = [env[a].value for a in cmd.args]
    if cmd.verb == "represent":
        return _represent(args[0], trials, seed)
    if cmd.verb == "verify":
        if cmd.args:
            return verify_instance(cmd.target, args[0], trials=trials, seed=seed)
        return verify_corpus(cmd.target, count=trials, seed=seed,
                             d_max=cmd.opt("d", 4), n_max=cmd.opt("n", 4))
    name = cmd.target
    if name == "disjoint":
        ok = disjoint(*args)
        return CheckReport(ok, witness=None if ok else {"x": args[0], "y": args[1]})
    if name == "support_disjoint":
        ok = is_support_disjoint(*args)
        return CheckReport(ok, witness=None if ok else {"f": args[0], "g": args[1]})
    if name == "p_disjoint":
        return is_p_disjoint(args)
    form = _form_for_checks(args[0])
    if name == "positive":
        return is_positive(form, trials=trials, seed=seed)
    if name == "symmetric":
        return is_symmetric(form)
    if name == "orthosymmetric":
        return is_orthosymmetric(form, trials=trials, seed=seed)
    if name == "p_orthosymmetric":
        return is_p_orthosymmetric(form, trials=trials, seed=seed)
    if name == "oa":
        return is_orthogonally_additive(args[0], trials=trials, seed=seed)
    raise ValidationError(f"unknown check {name!r}")


@dataclass
class RunResult:
    report: Dict
    exit_code: int
    diagnostics: List[str]


def input_hash(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def run_script(script: Script, text: str = "", seed: int = DEFAULT_SEED, trials: Optional[int] = None,
               timing: bool = False) -> RunResult:
    env = script.bindings
    records = []
    diagnostics = []
    failed = errors = 0
    for index, cmd in enumerate(script.commands):
        cmd_seed = cmd.opt("seed", derive_seed(seed, index))
        cmd_trials = cmd.opt("trials", trials if trials is not None else DEFAULT_TRIALS)
        expected = cmd.opt("expect", True)
        record = {
            "index": index,
            "command": format_command(cmd),
            "arguments": list(cmd.args),
        }
        start = time.perf_counter()
        try:
            rep = execute(cmd, env, cmd_trials, cmd_seed)
        except OrthoLabError as exc:
            errors += 1
            diagnostics.append(f"{cmd.line}: {exc}")
            record.update({"verdict": None, "expected": expected, "passed": False, "error": str(exc)})
        else:
            passed = rep.verdict == expected
            failed += not passed
            record.update({"verdict": rep.verdict, "expected": expected, "passed": passed})
            fields = report_fields(rep)
            fields["seed"] = cmd_seed
            del fields["verdict"]
            record.update(fields)
        if timing:
            record["elapsed-ms"] = round((time.perf_counter() - start) * 1000, 3)
        records.append(record)
    code = EXIT_INVALID if errors else EXIT_FAIL if failed else EXIT_OK
    report = {
        "tool": "ortholab",
        "tool-version": __version__,
        "input-hash": input_hash(text),
        "seed": seed,
        "trials": trials if trials is not None else DEFAULT_TRIALS,
        "results": records,
        "summary": {"commands": len(records), "passed": len(records) - failed - errors,
                    "failed": failed, "errors": errors},
        "exit-code": code,
    }
    return RunResult(report, code, diagnostics)


def run_text(text: str, seed: int = DEFAULT_SEED, trials: Optional[int] = None,
             timing: bool = False) -> RunResult:
    """Parse and run; parse errors give exit 2 and a report with no results."""
    try:
        script = parse(text)
    except ValidationError as exc:
        report = {
            "tool": "ortholab",
            "tool-version": __version__,
            "input-hash": input_hash(text),
            "seed": seed,
            "error": str(exc),
            "exit-code": EXIT_INVALID,
        }
        return RunResult(report, EXIT_INVALID, [str(exc)])
    return run_script(script, text, seed=seed, trials=trials, timing=timing)


def render_json(report: Dict) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False) + "\n"


def _short(obj) -> str:
    return json.dumps(obj, ensure_ascii=False, separators=(",", ":"))


def render_text(report: Dict) -> str:
    lines = [f"ortholab {report['tool-version']}  input {report['input-hash'][:12]}  seed {report['seed']}"]
    if "error" in report:
        lines.append(f"error: {report['error']}")
        return "\n".join(lines) + "\n"
    for r in report["results"]:
        status = "PASS" if r["passed"] else "ERROR" if "error" in r else "FAIL"
        verdict = {True: "true", False: "false", None: "-"}[r["verdict"]]
        lines.append(f"[{status}] {r['command']}  verdict={verdict} expected={str(r['expected']).lower()}")
        if "error" in r:
            lines.append(f"    error: {r['error']}")
            continue
        lines.append(f"    method={r['method']} trials={r['trials']} seed={r['seed']}")
        if r["note"]:
            lines.append(f"    note: {r['note']}")
        if r["witness"] is not None:
            lines.append(f"    witness: {_short(r['witness'])}")
        if "elapsed-ms" in r:
            lines.append(f"    elapsed-ms: {r['elapsed-ms']}")
    s = report["summary"]
    lines.append(f"{s['commands']} commands: {s['passed']} passed, {s['failed']} failed, {s['errors']} errors")
    return "\n".join(lines) + "\n"
