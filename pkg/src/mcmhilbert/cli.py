"""Command line front end.

A job is a JSON file naming a field, a ring ``k[[variables]]`` truncated at
``D``, optional relations, and named modules, matrix factorizations, graded
candidates and semigroups, followed by a list of commands.  The whole file is
validated before anything runs.  Output is deterministic; every number comes
with the window it was checked on and a basis marker (``exact``,
``certified`` or ``evidence``).

Exit codes: 0 all passed, 1 something was refuted, 2 precision or window was
insufficient, 3 the input was rejected.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from . import eisops, grmod, homalg, locring, numsgp
from .exactla import ExactMatrix, FieldSpec
from .expr import ExpressionError

SCHEMA = 1

COMMANDS = (
    "hf-local", "hf-semigroup", "gr-verify", "gr-socle", "gr-regseq", "mf-check", "mf-resolve",
    "betti", "cx", "eis-lift", "eis-ops", "eis-basechange", "eis-ext", "eis-param",
    "reduce-strict", "scan-semigroups", "verify-presentation",
)

# which named collection a command's target refers to
_TARGET_KIND = {
    "hf-local": "modules", "hf-semigroup": "semigroups", "gr-verify": "graded", "gr-socle": "graded",
    "gr-regseq": "graded", "mf-check": "factorizations", "mf-resolve": "factorizations",
    "betti": "modules", "cx": "modules", "eis-lift": "modules", "eis-ops": "modules",
    "eis-basechange": "modules", "eis-ext": "modules", "eis-param": "modules",
    "reduce-strict": "modules", "scan-semigroups": None, "verify-presentation": "semigroups",
}

_ARGS = {
    "hf-local": {"n_max"}, "hf-semigroup": {"n_max"}, "gr-verify": {"n_max"}, "gr-socle": {"max_degree"},
    "gr-regseq": {"forms", "check_to"}, "mf-check": set(), "mf-resolve": {"N"}, "betti": {"N"},
    "cx": {"N"}, "eis-lift": {"N"}, "eis-ops": {"N"}, "eis-basechange": {"N", "alphas", "random", "seed"},
    "eis-ext": {"N"}, "eis-param": {"N", "window"}, "reduce-strict": {"N"},
    "scan-semigroups": {"max_multiplicity", "max_embdim", "max_frobenius", "min_embdim"},
    "verify-presentation": {"n_max"},
}

EXIT_OK, EXIT_REFUTED, EXIT_INCONCLUSIVE, EXIT_INPUT = 0, 1, 2, 3


class InputError(ValueError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        super().__init__(message)
        self.message = message
        self.line = line
        self.column = column

    def __str__(self):
        if self.line:
            return f"line {self.line}, column {self.column}: {self.message}"
        return self.message


# --- reports -------------------------------------------------------------------


@dataclass
class Record:
    key: str
    value: object
    window: str
    basis: str  # exact | certified | evidence
    index: int | None = None


@dataclass
class Result:
    command: str
    target: str | None
    status: str  # ok | refuted | inconclusive
    message: str = ""
    records: list[Record] = field(default_factory=list)

    def add(self, key, value, window, basis, index=None):
        self.records.append(Record(key, _plain(value), window, basis, index))


@dataclass
class Report:
    results: list[Result] = field(default_factory=list)
    schema: int = SCHEMA

    @property
    def exit_code(self) -> int:
        statuses = {r.status for r in self.results}
        if "refuted" in statuses:
            return EXIT_REFUTED
        if "inconclusive" in statuses:
            return EXIT_INCONCLUSIVE
        return EXIT_OK


def _plain(v):
    """JSON-safe copy: rationals and polynomials become strings."""
    if isinstance(v, bool) or v is None or isinstance(v, (int, str)):
        return v
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else str(v)
    if isinstance(v, ExactMatrix):
        return [[_plain(x) for x in row] for row in v.rows]
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    return str(v)


def _cell(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "-"
    if isinstance(v, list):
        return json.dumps(v, separators=(",", ":"))
    return str(v)


def render(report: Report, fmt: str = "table") -> str:
    if fmt == "json-lines":
        lines = [json.dumps({"schema": report.schema, "exit": report.exit_code}, sort_keys=True)]
        for r in report.results:
            lines.append(json.dumps(asdict(r), sort_keys=True, separators=(",", ":")))
        return "\n".join(lines) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["command", "target", "status", "key", "index", "value", "window", "basis"])
        for r in report.results:
            for rec in r.records:
                w.writerow([r.command, r.target or "", r.status, rec.key, "" if rec.index is None else rec.index,
                            _cell(rec.value), rec.window, rec.basis])
        return buf.getvalue()
    if fmt != "table":
        raise ValueError(f"unknown format {fmt!r}")
    out = [f"# mcmhilbert report (schema {report.schema})"]
    for r in report.results:
        head = f"## {r.command}" + (f" {r.target}" if r.target else "") + f": {r.status}"
        out.append(head)
        if r.message:
            out.append(f"   {r.message}")
        prev = None
        for rec in r.records:
            if rec.index is not None:
                if prev != rec.key:
                    label = "n" if rec.key == "H(n)" else "i"
                    out.append(f"   {label:>4}  {rec.key}")
                out.append(f"   {rec.index:>4}  {_cell(rec.value):<12} [{rec.window}; {rec.basis}]")
            elif isinstance(rec.value, list) and rec.value and isinstance(rec.value[0], list):
                out.append(f"   {rec.key}: [{rec.window}; {rec.basis}]")
                width = max(len(_cell(x)) for row in rec.value for x in row)
                for row in rec.value:
                    out.append("      " + "  ".join(_cell(x).rjust(width) for x in row))
            else:
                out.append(f"   {rec.key} = {_cell(rec.value)} [{rec.window}; {rec.basis}]")
            prev = rec.key
    out.append(f"# exit {report.exit_code}" if report.results else "")
    return "\n".join(x for x in out if x) + "\n"


def parse_report(text: str) -> Report:
    """Inverse of ``render(report, "json-lines")``."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty report")
    head = json.loads(lines[0])
    results = []
    for ln in lines[1:]:
        d = json.loads(ln)
        recs = [Record(**x) for x in d.pop("records")]
        results.append(Result(records=recs, **d))
    return Report(results, head["schema"])


# --- job files -----------------------------------------------------------------


@dataclass
class Job:
    field: FieldSpec
    ring: locring.RingSpec
    base: locring.QuotientPresentation
    modules: dict
    factorizations: dict
    mf_of_module: dict
    graded: dict
    semigroups: dict
    commands: list


def _position(raw: str, offset: int) -> tuple[int, int]:
    line = raw.count("\n", 0, offset) + 1
    col = offset - (raw.rfind("\n", 0, offset) + 1) + 1
    return line, col


def _where(raw: str, needle: str, extra: int = 0) -> tuple[int, int]:
    off = raw.find(needle)
    if off < 0:
        return 0, 0
    return _position(raw, off + extra)


class _Loader:
    def __init__(self, raw: str):
        self.raw = raw

    def fail(self, message, near=None):
        line, col = _where(self.raw, json.dumps(near)) if near is not None else (0, 0)
        raise InputError(message, line, col)

    def poly(self, ring, text):
        if isinstance(text, (int,)) and not isinstance(text, bool):
            return ring.series(text)
        if not isinstance(text, str):
            self.fail(f"expected a polynomial string, got {text!r}")
        try:
            return ring.series(text)
        except ExpressionError as exc:
            line, col = _where(self.raw, json.dumps(text), exc.column)
            raise InputError(str(exc), line, col) from None

    def matrix(self, ring, rows, what):
        if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
            self.fail(f"{what}: expected a nonempty list of rows", what)
        if len({len(r) for r in rows}) != 1:
            self.fail(f"{what}: ragged matrix", what)
        return [[self.poly(ring, x).terms for x in row] for row in rows]

    def integer(self, v, what, low=None):
        if isinstance(v, bool) or not isinstance(v, int):
            self.fail(f"{what} must be an integer, got {v!r}", what)
        if low is not None and v < low:
            self.fail(f"{what} must be >= {low}, got {v}", what)
        return v


def load_job(text: str, *, field_override: str | None = None, trunc_override: int | None = None,
             commands: list | None = None) -> Job:
    """Parse and validate a job; raises :class:`InputError` with a position.

    ``commands`` replaces the job's own command list.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(exc.msg, exc.lineno, exc.colno) from None
    L = _Loader(text)
    if not isinstance(data, dict):
        raise InputError("top level must be an object", 1, 1)
    known = {"schema", "field", "ring", "relations", "regular", "modules", "factorizations", "graded",
             "semigroups", "commands"}
    for k in data:
        if k not in known:
            L.fail(f"unknown key {k!r}", k)
    if data.get("schema", SCHEMA) != SCHEMA:
        L.fail(f"unsupported schema {data.get('schema')!r}", "schema")
    try:
        F = FieldSpec.parse(field_override or data.get("field", "q"))
    except ValueError as exc:
        L.fail(str(exc), "field")

    ring_d = data.get("ring")
    if not isinstance(ring_d, dict) or "variables" not in ring_d:
        L.fail("ring must be an object with 'variables'", "ring")
    variables = ring_d["variables"]
    if (not isinstance(variables, list) or not variables
            or not all(isinstance(v, str) and v.isidentifier() for v in variables)
            or len(set(variables)) != len(variables)):
        L.fail("variables must be distinct identifiers", "variables")
    D = trunc_override if trunc_override is not None else L.integer(ring_d.get("trunc", locring.DEFAULT_TRUNCATION), "trunc", 2)
    if D < 2:
        raise InputError("--trunc must be >= 2")
    ring = locring.RingSpec(tuple(variables), D, F)

    def quotient(rel_list, regular=True, near="relations"):
        if not isinstance(rel_list, list):
            L.fail("relations must be a list", near)
        rels = [L.poly(ring, x) for x in rel_list]
        try:
            return locring.QuotientPresentation(ring, [f.terms for f in rels], regular)
        except ValueError as exc:
            L.fail(str(exc), near)

    base = quotient(data.get("relations", []), bool(data.get("regular", True)))

    factorizations = {}
    for name, d in (data.get("factorizations") or {}).items():
        if not isinstance(d, dict) or not {"f", "phi", "psi"} <= set(d):
            L.fail(f"factorization {name!r} needs f, phi, psi", name)
        f = L.poly(ring, d["f"])
        phi = L.matrix(ring, d["phi"], "phi")
        psi = L.matrix(ring, d["psi"], "psi")
        try:
            factorizations[name] = homalg.MatrixFactorization(ring, f.terms, phi, psi)
        except ValueError as exc:
            L.fail(f"factorization {name!r}: {exc}", name)

    modules = {"A": locring.ModulePresentation.free(base, 1)}
    mf_of_module = {}
    for name, d in (data.get("modules") or {}).items():
        if not isinstance(d, dict):
            L.fail(f"module {name!r} must be an object", name)
        over = quotient(d["over"], near="over") if "over" in d else base
        try:
            if d.get("residue_field"):
                M = locring.ModulePresentation.residue_field(over)
            elif "free" in d:
                M = locring.ModulePresentation.free(over, L.integer(d["free"], "free", 1))
            elif "factorization" in d:
                mf = factorizations.get(d["factorization"])
                if mf is None:
                    L.fail(f"module {name!r}: unknown factorization {d['factorization']!r}", d["factorization"])
                M = mf.cokernel()
                mf_of_module[name] = mf
            elif "matrix" in d:
                M = locring.ModulePresentation(over, L.matrix(ring, d["matrix"], "matrix"))
            else:
                L.fail(f"module {name!r} needs residue_field, free, factorization or matrix", name)
        except ValueError as exc:
            if isinstance(exc, InputError):
                raise
            L.fail(f"module {name!r}: {exc}", name)
        modules[name] = M

    graded = {}
    for name, d in (data.get("graded") or {}).items():
        gens = d.get("generators") if isinstance(d, dict) else d
        if not isinstance(gens, list):
            L.fail(f"graded {name!r} needs a list of generators", name)
        exact = ring.exact()
        try:
            graded[name] = grmod.GradedQuotient(variables, [L.poly(exact, g).terms for g in gens], F)
        except ValueError as exc:
            if isinstance(exc, InputError):
                raise
            L.fail(f"graded {name!r}: {exc}", name)

    semigroups = {}
    for name, gens in (data.get("semigroups") or {}).items():
        if not isinstance(gens, list) or not gens or not all(isinstance(a, int) and not isinstance(a, bool) and a > 0 for a in gens):
            L.fail(f"semigroup {name!r} needs positive integer generators", name)
        try:
            numsgp.semigroup_closure(gens)
        except ValueError as exc:
            L.fail(f"semigroup {name!r}: {exc}", name)
        semigroups[name] = tuple(gens)

    collections = {"modules": modules, "factorizations": factorizations, "graded": graded, "semigroups": semigroups}
    parsed = []
    source = (data.get("commands") or []) if commands is None else commands
    for i, c in enumerate(source):
        if not isinstance(c, dict) or c.get("cmd") not in COMMANDS:
            L.fail(f"command {i}: unknown command {c.get('cmd') if isinstance(c, dict) else c!r}",
                   c.get("cmd") if isinstance(c, dict) else None)
        cmd = c["cmd"]
        extra = set(c) - {"cmd", "target"} - _ARGS[cmd]
        if extra:
            L.fail(f"command {i} ({cmd}): unexpected arguments {sorted(extra)}", sorted(extra)[0])
        kind = _TARGET_KIND[cmd]
        target = c.get("target")
        if kind == "modules" and target is None:
            target = "A"
        if kind and target is None and cmd != "gr-regseq":
            L.fail(f"command {i} ({cmd}) needs a target", cmd)
        if kind and target is not None and target not in collections[kind]:
            L.fail(f"command {i} ({cmd}): unknown {kind[:-1]} {target!r}", target)
        if cmd == "gr-regseq":
            if target is None and "forms" not in c:
                L.fail(f"command {i} (gr-regseq) needs forms or a graded target", cmd)
            if "forms" in c:
                exact = ring.exact()
                c = dict(c, forms=[L.poly(exact, x).terms for x in c["forms"]])
        if cmd == "eis-basechange" and "alphas" in c:
            c = dict(c, alphas=[[[str(x) for x in row] for row in a] for a in c["alphas"]])
        for k in ("n_max", "N", "max_degree", "check_to", "random", "seed", "max_multiplicity", "max_embdim",
                  "max_frobenius", "min_embdim"):
            if k in c:
                L.integer(c[k], k, 0)
        parsed.append(dict(c, target=target))
    return Job(F, ring, base, modules, factorizations, mf_of_module, graded, semigroups, parsed)


# --- running ---------------------------------------------------------------------

_INCONCLUSIVE = (locring.PrecisionExceeded, homalg.PrecisionUnstable, homalg.WindowTooShort,
                 eisops.SearchExhausted)
_REFUTED = (homalg.NotAFactorization, eisops.NotInIdeal, eisops.NotStrict, eisops.CertificateFailure,
            eisops.NotDimensionOne, eisops.NotMinimal, eisops.NotInvertible, AssertionError)


@dataclass
class Options:
    window: int | None = None
    seed: int = 0
    scan: dict = field(default_factory=dict)  # scan limits given on the command line


def _hf_records(res: Result, values, window, basis):
    for n, v in enumerate(values):
        res.add("H(n)", v, window, basis, index=n)


def _resolution(job: Job, target: str, N: int):
    M = job.modules[target]
    mf = job.mf_of_module.get(target)
    F = homalg.mf_resolution(mf, N) if mf is not None else homalg.minimal_resolution(M, N)
    return M, F


def _operators(job, target, N):
    M, F = _resolution(job, target, N)
    L = eisops.lift_complex(F)
    fam = eisops.solve_operators(L)
    return M, F, L, fam


def _run_one(job: Job, c: dict, opts: Options) -> Result:
    cmd, target = c["cmd"], c.get("target")
    res = Result(cmd, target, "ok")
    D = job.ring.D
    win = opts.window

    if cmd == "hf-local":
        M = job.modules[target]
        n_max = c.get("n_max", win if win is not None else D - 2)
        hv = locring.hilbert_function(M, n_max)
        w = f"n<={hv.valid_to}, D={D}"
        _hf_records(res, hv.values, w, "exact")
        rep = locring.monotonicity_report(hv.values)
        res.add("nondecreasing", rep.nondecreasing, w, "exact")
        if rep.first_violation is not None:
            res.add("first_violation", rep.first_violation, w, "exact")

    elif cmd == "hf-semigroup":
        n_max = c.get("n_max", win if win is not None else 9)
        S = numsgp.semigroup_closure(job.semigroups[target])
        _hf_records(res, numsgp.semigroup_hf(S.generators, n_max).values, f"n<={n_max}", "exact")
        res.add("frobenius", S.frobenius, "exact", "exact")
        res.add("gaps", list(S.gaps), "exact", "exact")
        res.add("apery", list(S.apery), "exact", "exact")

    elif cmd == "verify-presentation":
        n_max = c.get("n_max", win if win is not None else D - 2)
        v = numsgp.verify_presentation(job.semigroups[target], job.base, n_max)
        w = f"n<={n_max}, D={D}"
        res.add("verdict", "Verified" if v.verified else "Refuted", w, "certified")
        if v.failing_relation is not None:
            res.add("failing_relation", v.failing_relation, "exact", "exact")
        if v.mismatch_degree is not None:
            res.add("mismatch_degree", v.mismatch_degree, w, "exact")
        if not v.verified:
            res.status = "refuted"

    elif cmd == "gr-verify":
        n_max = c.get("n_max", win if win is not None else D - 2)
        G = job.graded[target]
        v = grmod.verify_assoc_graded(job.base, G, n_max)
        w = f"n<={n_max}, D={D}"
        res.add("verdict", "Verified" if v.verified else "Refuted", w, "certified")
        if not v.verified:
            res.status = "refuted"
            res.message = v.reason
            res.add("degree", v.degree, w, "exact")
        for h, elt, _ in v.witnesses:
            res.add(f"witness[{h}]", str(elt), f"mod n^{D}", "exact")
        _hf_records(res, grmod.graded_hf(G, n_max).values, f"n<={n_max}", "exact")

    elif cmd == "gr-socle":
        max_degree = c.get("max_degree", win if win is not None else 6)
        cert = grmod.socle_witness(job.graded[target], max_degree)
        w = f"degree<={max_degree}"
        if cert is None:
            res.add("socle", None, w, "evidence")
            res.message = "no socle element found in the searched degrees"
        else:
            res.add("socle", str(cert.element), w, "exact")
            res.add("degree", cert.degree, "exact", "exact")
            for var, prod, _ in cert.annihilation:
                res.add(f"{var}*socle", str(prod), "in ideal", "exact")
            res.add("depth", 0, "exact", "certified")

    elif cmd == "gr-regseq":
        forms = c.get("forms") or [h.terms for h in job.graded[target].generators]
        v = grmod.regular_sequence_test(job.ring.variables, forms, c.get("check_to"), job.field, opts.seed)
        w = f"degree<={len(v.hf) - 1}"
        res.add("status", v.status, w, "certified" if v.status != "Inconclusive" else "evidence")
        if v.degree is not None:
            res.add("degree", v.degree, w, "exact")
        res.add("hf", list(v.hf), w, "exact")
        res.add("expected", list(v.expected), w, "exact")
        if v.linear_forms:
            res.add("linear_forms", [str(x) for x in v.linear_forms], "exact", "exact")
        if v.status == "Inconclusive":
            res.status = "inconclusive"

    elif cmd == "mf-check":
        mf = job.factorizations[target]
        homalg.mf_verify(mf)
        res.add("factorization", True, "exact", "exact")
        res.add("size", mf.size, "exact", "exact")

    elif cmd == "mf-resolve":
        mf = job.factorizations[target]
        N = c.get("N", win if win is not None else 6)
        bt = homalg.betti_table(mf.cokernel(), N)
        w = f"i<={N}, D={D},{D + 2}"
        for i, b in enumerate(bt.betti):
            res.add("betti", b, w, "certified" if i <= bt.certified_to else "evidence", index=i)
        periodic = all(b == bt.betti[1] for b in bt.betti[1:])
        res.add("two_periodic", periodic, w, "evidence")
        cx = homalg.complexity_estimate(bt.betti) if len(bt.betti) >= 6 else None
        if cx is not None:
            res.add("cx", cx.cx_upper_evidence, w, "evidence")
        hv = locring.hilbert_function(mf.cokernel(), D - 2)
        hw = f"n<={D - 2}, D={D}"
        _hf_records(res, hv.values, hw, "exact")
        rep = locring.monotonicity_report(hv.values)
        res.add("nondecreasing", rep.nondecreasing, hw, "exact")
        if not periodic or not rep.nondecreasing:
            res.status = "refuted"

    elif cmd in ("betti", "cx"):
        N = c.get("N", win if win is not None else 6)
        bt = homalg.betti_table(job.modules[target], N)
        w = f"i<={N}, D={D},{D + 2}"
        for i, b in enumerate(bt.betti):
            res.add("betti", b, w, "certified" if i <= bt.certified_to else "evidence", index=i)
        res.add("certified_to", bt.certified_to, w, "exact")
        if cmd == "cx":
            ev = homalg.complexity_estimate(bt)
            res.add("cx", ev.cx_upper_evidence, f"i<={bt.certified_to}", "evidence")
            res.add("bounded", ev.bounded, f"i<={bt.certified_to}", "evidence")

    elif cmd == "eis-lift":
        N = c.get("N", win if win is not None else 4)
        _, F = _resolution(job, target, N)
        L = eisops.lift_complex(F)
        w = f"mod n^{D}"
        ok = L.reduces_to(F)
        res.add("reduces_to_input", ok, w, "exact")
        for i, m in enumerate(L.maps, start=1):
            res.add(f"d~{i}", m, w, "exact")
        if not ok:
            res.status = "refuted"

    elif cmd == "eis-ops":
        N = c.get("N", win if win is not None else 4)
        _, _, L, fam = _operators(job, target, N)
        w = f"i<={N}, mod n^{D}"
        res.add("identity", eisops.operator_identity_holds(L, fam.relations, fam.ops), w, "exact")
        for j in range(fam.c):
            for i in fam.indices():
                res.add(f"t~{j + 1}[{i}]", fam.ops[j][i], w, "exact")

    elif cmd == "eis-basechange":
        N = c.get("N", win if win is not None else 4)
        _, _, L, fam = _operators(job, target, N)
        alphas = [ExactMatrix(job.field, a) for a in c.get("alphas", [])]
        rng = random.Random(c.get("seed", opts.seed))
        alphas += [eisops.random_invertible(job.field, fam.c, rng) for _ in range(c.get("random", 0))]
        w = f"i<={N}, mod n^{D}"
        for k, a in enumerate(alphas):
            moved = eisops.base_change_operators(a, fam)
            res.add(f"alpha[{k}]", a, "exact", "exact")
            res.add(f"identity[{k}]", eisops.operator_identity_holds(L, moved.relations, moved.ops), w, "exact")

    elif cmd in ("eis-ext", "eis-param"):
        N = c.get("N", win if win is not None else 6)
        _, F, _, fam = _operators(job, target, N)
        E = eisops.ext_action(F, fam)
        w = f"i<={E.top}, D={D}"
        if cmd == "eis-ext":
            for i, d in enumerate(E.dims):
                res.add("dim Ext", d, w, "exact", index=i)
            for j in range(E.c):
                for i in sorted(E.maps[j]):
                    res.add(f"T{j + 1}[{i}]", E.maps[j][i], w, "exact")
            res.add("commute", E.commutes(), w, "exact")
            gen = eisops.finite_generation_window(E)
            res.add("new_generators", gen.new_generators, w, "evidence")
            res.add("stabilized", gen.stabilized, w, "evidence")
            if not E.commutes():
                res.status = "refuted"
        else:
            window = tuple(c["window"]) if "window" in c else None
            xi = eisops.parameter_search(E, job.field, window)
            res.add("xi", list(xi.coeffs), f"bijective for i in {list(xi.window)}", "evidence")

    elif cmd == "reduce-strict":
        N = c.get("N", win if win is not None else 6)
        M = job.modules[target]
        sr = eisops.strict_reduction(M.over, M, N=N)
        w = f"D={D}"
        res.add("order", sr.order, "exact", "exact")
        res.add("beta", sr.beta, "exact", "exact")
        res.add("g", [str(x) for x in sr.g], f"mod n^{D}", "exact")
        res.add("g*", [str(x) for x in sr.g_initial], "exact", "exact")
        res.add("P", [str(x) for x in sr.g[1:]], f"mod n^{D}", "exact")
        res.add("round_trip", sr.round_trip, f"mod n^{D}", "exact")
        res.add("g*_regular", sr.regular.status if sr.regular else "n/a (c = 1)", "exact", "certified")
        pd = sr.pd_evidence
        res.add("betti_over_P", list(pd["betti"]), f"i<={len(pd['betti']) - 1}, D={pd['D'][0]},{pd['D'][1]}", "certified")
        res.add("pd_P_le_1", pd["pd_le_1"], f"i<={pd['certified_to']}", "evidence")
        res.add("dim_P", sr.dim_P, "exact", "exact")
        res.add("hypothesis", sr.hypothesis_ok, "exact", "certified")
        res.add("xi", list(sr.xi.coeffs), f"bijective for i in {list(sr.xi.window)}", "evidence")
        res.add("action_matches", sr.action_matches, w, "exact")

    elif cmd == "scan-semigroups":
        kw = dict(max_multiplicity=8, max_embdim=3, max_frobenius=30, min_embdim=2)
        kw.update({k: c[k] for k in kw if k in c})
        kw.update(opts.scan)
        rep = numsgp.monotonicity_scan(**kw)
        w = ", ".join(f"{k}={v}" for k, v in kw.items())
        res.add("checked", rep.checked, w, "exact")
        res.add("embdim3_checked", rep.embdim3_checked, w, "exact")
        res.add("violations", [list(v.generators) for v in rep.violations], w, "exact")
        res.add("elias_consistent", rep.elias_consistent, w, "exact")
        if not rep.elias_consistent:
            res.status = "refuted"

    return res


def run(job: Job, opts: Options | None = None) -> Report:
    """Run the commands of a validated job in declaration order."""
    opts = opts or Options()
    report = Report()
    for c in job.commands:
        try:
            res = _run_one(job, c, opts)
        except _INCONCLUSIVE as exc:
            res = Result(c["cmd"], c.get("target"), "inconclusive", f"{type(exc).__name__}: {exc}")
        except _REFUTED as exc:
            res = Result(c["cmd"], c.get("target"), "refuted", f"{type(exc).__name__}: {exc}")
        report.results.append(res)
    return report


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mcmhilbert", description="Hilbert functions and resolutions over complete intersections.")
    p.add_argument("command", choices=("run",) + COMMANDS, help="'run' executes the job's command list")
    p.add_argument("job", help="JSON job file ('-' for stdin)")
    p.add_argument("--target", help="named object for a single command")
    p.add_argument("--field", help="q or fp:<p>; overrides the job file")
    p.add_argument("--trunc", type=int, help="truncation order D; overrides the job file")
    p.add_argument("--window", type=int, help="default n_max / resolution length")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    p.add_argument("--format", choices=("table", "csv", "json-lines"), default="table")
    p.add_argument("--max-embdim", type=int, help="scan-semigroups: largest embedding dimension")
    p.add_argument("--max-multiplicity", type=int, help="scan-semigroups: largest multiplicity")
    p.add_argument("--max-frobenius", type=int, help="scan-semigroups: largest Frobenius number")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.job == "-":
            text = sys.stdin.read()
        else:
            with open(args.job, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        single = None
        if args.command != "run":
            single = [{"cmd": args.command, **({"target": args.target} if args.target else {})}]
        job = load_job(text, field_override=args.field, trunc_override=args.trunc, commands=single)
    except InputError as exc:
        loc = f"{exc.line}:{exc.column}:" if exc.line else ""
        print(f"{args.job}:{loc} error: {exc.message}", file=sys.stderr)
        return EXIT_INPUT
    scan = {k: getattr(args, k) for k in ("max_embdim", "max_multiplicity", "max_frobenius")
            if getattr(args, k) is not None}
    report = run(job, Options(args.window, args.seed, scan))
    sys.stdout.write(render(report, args.format))
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
