"""Run scenarios, compare their outputs with expected values, write CSV tables."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Sequence

import numpy as np

from . import ckd as ckd_mod
from . import flp as flp_mod
from . import neutro as nx
from . import plants, rawmix, setpoint
from .errors import FuzzyProcError, ScenarioError
from .fre import FnnConfig, FreSystem, two_stage_solve
from .matrixio import parse_rows
from .membership import LinguisticVariable
from .scenario import Check, Scenario, bundled_scenarios, load_scenario

__all__ = [
    "Table",
    "CheckResult",
    "RunReport",
    "run",
    "evaluate_check",
    "format_cell",
    "table_to_csv",
    "emit_csv",
    "reproduce_paper",
    "SUMMARY_COLUMNS",
]


@dataclass
class Table:
    name: str
    columns: tuple[str, ...]
    rows: list[tuple] = field(default_factory=list)

    def add(self, *row) -> None:
        if len(row) != len(self.columns):
            raise ValueError(f"table {self.name}: expected {len(self.columns)} cells, got {len(row)}")
        self.rows.append(tuple(row))


@dataclass(frozen=True)
class CheckResult:
    key: str
    expected: float | str
    got: Any
    tolerance: float
    status: str
    note: str = ""


@dataclass
class RunReport:
    scenario_id: str
    kind: str
    title: str
    values: dict[str, Any]
    tables: list[Table]
    checks: list[CheckResult]

    @property
    def ok(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    def table(self, name: str) -> Table:
        for t in self.tables:
            if t.name == name:
                return t
        raise KeyError(name)


def _num(v: float) -> str:
    return f"{v:g}"


def _scalar(v: nx.NeutroValue) -> float | str:
    return str(v) if v.indeterminate else v.value


def format_cell(v: Any) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        s = f"{float(v):.6f}"
        return "0.000000" if s == "-0.000000" else s
    return str(v)


def evaluate_check(check: Check, values: dict[str, Any]) -> CheckResult:
    """``pass`` when the output matches; an expected erratum must mismatch."""
    got = values.get(check.key)
    if got is None:
        match = False
    elif isinstance(check.expected, str):
        match = (got if isinstance(got, str) else format_cell(got)) == check.expected
    elif isinstance(got, (str, bool)):
        match = False
    else:
        slack = 1e-12 * max(1.0, abs(check.expected))
        match = math.isfinite(got) and abs(float(got) - check.expected) <= check.tolerance + slack
    if check.expect_erratum:
        status = "erratum" if got is not None and not match else "fail"
    else:
        status = "pass" if match else "fail"
    return CheckResult(check.key, check.expected, "missing" if got is None else got, check.tolerance, status, check.note)


# --- kind runners -----------------------------------------------------------


def _variable(d: dict) -> LinguisticVariable:
    terms = {t["label"]: tuple(t["mf"]) for t in d["terms"]}
    if len(terms) != len(d["terms"]):
        raise ScenarioError(f"duplicate term labels in {d['name']}")
    return LinguisticVariable.from_mapping(d["name"], tuple(d["universe"]), terms, d.get("units", ""))


def _run_controller(p: dict, **_) -> tuple[dict, list[Table]]:
    rules = ckd_mod.RuleTable(p["rules"]["rows"], p["rules"]["cols"], p["rules"]["cells"])
    ctrl = ckd_mod.MamdaniController(_variable(p["x"]), _variable(p["y"]), _variable(p["output"]), rules)
    values: dict[str, Any] = {}
    cases = Table("cases", ("x", "y", "height", "lo", "hi", "midpoint"))
    fired = Table("fired", ("x", "y", "x_term", "y_term", "out_term", "strength"))
    grades = Table("grades", ("x", "y", "variable", "term", "grade"))
    agg = Table("aggregate", ("x", "y", "z", "mu"))
    if "volatile" in p:
        v = p["volatile"]
        tbl = ckd_mod.VolatileTable(v["weights"], v["numerator"], tuple(v["denominators"]))
        values["alkali_ratio"] = ckd_mod.alkali_ratio(tbl)
    for case in p["cases"]:
        x, y = float(case["x"]), float(case["y"])
        tag = f"{_num(x)},{_num(y)}"
        ev = ckd_mod.infer(ctrl, x, y)
        r = ev.result
        lo, hi = r.interval
        cases.add(x, y, r.height, lo, hi, r.midpoint)
        values.update({f"{tag}.height": r.height, f"{tag}.lo": lo, f"{tag}.hi": hi, f"{tag}.midpoint": r.midpoint})
        for var, g, axis in ((ctrl.input_x, ev.grades_x, "x"), (ctrl.input_y, ev.grades_y, "y")):
            for label in var.labels:
                grades.add(x, y, var.name, label, g[label])
                values[f"{tag}.grade_{axis}.{label}"] = g[label]
        for fr in ev.fired:
            fired.add(x, y, fr.x_label, fr.y_label, fr.out_label, fr.strength)
            values[f"{tag}.strength.{fr.x_label}.{fr.y_label}"] = fr.strength
        for z in ev.aggregate.breakpoints():
            agg.add(x, y, z, ev.aggregate(z))
    return values, [cases, fired, grades, agg]


def _run_setpoint(p: dict, **_) -> tuple[dict, list[Table]]:
    quant = {k: float(v) for k, v in p["quantization"].items()}
    normalize = p.get("normalize", True)
    cands = []
    rules_t = Table("rules", ("setpoint", "distillation", "grade_a", "grade_b", "subset", "throttle"))
    values: dict[str, Any] = {}
    for c in p["candidates"]:
        rules = tuple(setpoint.RuleGrades(r["distillation"], r["a"], r["b"], r["subset"]) for r in c.get("rules", ()))
        cand = setpoint.SetpointCandidate(
            c["setpoint"], rules, c.get("locations", {}), c.get("normalize"), c.get("throttle")
        )
        cands.append(cand)
        for r in rules:
            t = setpoint.rule_throttle(r.grade_a, r.grade_b)
            rules_t.add(cand.setpoint, r.distillation, r.grade_a, r.grade_b, r.subset, t)
            values[f"rule.{_num(cand.setpoint)}.{_num(r.distillation)}"] = t
    result = setpoint.select_setpoint(cands, quant, normalize)
    cand_t = Table("candidates", ("setpoint", "throttle", "pinned", "chosen"))
    for cand, (sp, thr) in zip(cands, result.throttles):
        cand_t.add(sp, thr, cand.throttle is not None, sp == result.chosen)
        values[f"throttle.{_num(sp)}"] = thr
    values["chosen"] = result.chosen
    return values, [rules_t, cand_t]


def _normalized(v: np.ndarray) -> np.ndarray:
    scale = float(np.abs(v).max(initial=0.0))
    return v / scale if scale > 0 else np.zeros_like(v)


def _run_flowsheet(p: dict, **_) -> tuple[dict, list[Table]]:
    k = p["known"]
    sysl = plants.build_flowsheet(plants.FlowScenario(k["F1"], k["F5"], k["F6"], k["F9"]), p.get("form", "matrix"))
    flows = sysl.solve()
    res = sysl.residual(flows)
    values: dict[str, Any] = dict(flows)
    values["residual"] = res
    flows_t = Table("flows", ("stream", "value"))
    for name, v in flows.items():
        flows_t.add(name, v)
    tables = [flows_t]
    if "network" in p:
        net = p["network"]
        W0 = np.array(net["weights"], dtype=float)
        mask = W0 == 0 if "mask" not in net else np.array(net["mask"]) == 0
        x = np.abs(_normalized(np.array(list(flows.values()))))
        targets = _normalized(sysl.b)
        if (targets < 0).any():
            raise ScenarioError("network targets must be non-negative; F9 - F6 is negative")
        cfg = FnnConfig(
            max_iters=net.get("max_iters", 100_000),
            tolerance=net.get("tolerance", 1e-6),
            seed=net.get("seed", 0),
            restarts=net.get("restarts", 4),
        )
        out = two_stage_solve(FreSystem(W0, targets, zero_mask=mask), x, cfg)
        values["network.solvable"] = out.solvable
        w_t = Table("network_weights", ("row",) + tuple(f"c{j + 1}" for j in range(5)))
        o_t = Table("network_outputs", ("row", "input", "target", "output"))
        if out.network is not None:
            values["network.residual"] = out.network.residual
            values["network.converged"] = out.network.converged
            W, y = out.network.weights, out.network.outputs
        else:
            values["network.residual"] = 0.0
            values["network.converged"] = True
            W, y = W0, targets
        for i, name in enumerate(plants.FLOW_UNKNOWNS):
            w_t.add(name, *W[i].tolist())
            o_t.add(name, x[i], targets[i], y[i])
        tables += [w_t, o_t]
    return values, tables


def _run_pipe(p: dict, **_) -> tuple[dict, list[Table]]:
    t = Table("velocities", ("case", "v", "v1", "v2", "residual", "mass_balance"))
    values: dict[str, Any] = {}
    for c in p["cases"]:
        sysl = plants.build_pipe_network(c["T"], c["T1"], c["T2"], c["D"], c["D1"], c["D2"], c["mu"], c["deltaP"])
        sol = sysl.solve()
        res = sysl.residual(sol)
        bal = c["D"] ** 2 * sol["v"] - c["D1"] ** 2 * sol["v1"] - c["D2"] ** 2 * sol["v2"]
        t.add(c["name"], sol["v"], sol["v1"], sol["v2"], res, bal)
        values.update({f"{c['name']}.{k}": v for k, v in sol.items()})
        values[f"{c['name']}.residual"] = res
        values[f"{c['name']}.mass_balance"] = bal
    return values, [t]


def _run_extraction(p: dict, **_) -> tuple[dict, list[Table]]:
    names = ("X1", "Y1", "X2", "Y2", "X3", "Y3")
    t = Table("stages", ("case",) + names + ("residual", "equilibrium_gap"))
    values: dict[str, Any] = {}
    for c in p["cases"]:
        sysl = plants.build_extraction(c["Es"], c["Rs"], c["K"], c["X0"], c["Y4"])
        try:
            sol = sysl.solve()
        except FuzzyProcError as exc:
            raise ScenarioError(
                f"{exc} (Es={c['Es']}, Rs={c['Rs']}, K={c['K']}, X0={c['X0']}, Y4={c['Y4']})", c["name"]
            ) from exc
        res = sysl.residual(sol)
        gap = max(abs(sol[f"Y{i}"] - c["K"] * sol[f"X{i}"]) for i in (1, 2, 3))
        t.add(c["name"], *(sol[k] for k in names), res, gap)
        values.update({f"{c['name']}.{k}": v for k, v in sol.items()})
        values[f"{c['name']}.residual"] = res
        values[f"{c['name']}.equilibrium_gap"] = gap
    return values, [t]


def _run_rawmix(p: dict, **_) -> tuple[dict, list[Table]]:
    feeders = p["feeders"]
    comp = rawmix.OxideComposition.from_table([f["oxides"] for f in feeders], p["unit"])
    state = rawmix.MixState([f["w"] for f in feeders], [f["lower"] for f in feeders], [f["upper"] for f in feeders])
    sp = p["setpoint"]
    target_m = np.array([sp["lsf"], sp["sm"], sp["am"]])
    now = rawmix.moduli(comp, state.w)
    measured = np.array([p["measured"][k] for k in ("lsf", "sm", "am")]) if "measured" in p else now.as_array()
    required = target_m - measured
    J = rawmix.moduli_jacobian(comp, state.w)
    msys = rawmix.build_mix_system(J, required, p.get("use_lsf", True))
    dw = rawmix.solve_dw(msys, state.lower, state.upper)
    after = rawmix.moduli(comp, state.w + dw)
    rc = p.get("refine", {})
    cfg = rawmix.RefineConfig(
        max_iters=rc.get("max_iters", 100_000), tolerance=rc.get("tolerance", 1e-10), seed=rc.get("seed", 0)
    )
    ref = rawmix.fnn_refine(comp, state, required, cfg)
    after_ref = rawmix.moduli(comp, state.w + ref.dw)

    values: dict[str, Any] = {
        "sum_dw": float(dw.sum()),
        "mix_error": rawmix.mix_error(required, J @ dw),
        "refine.error": ref.error,
        "refine.converged": ref.converged,
        "refine.sum_dw": float(ref.dw.sum()),
    }
    feed_t = Table("feeders", ("feeder", "w", "lower", "upper", "dw_lstsq", "dw_refine"))
    for i, f in enumerate(feeders):
        feed_t.add(f["name"], state.w[i], state.lower[i], state.upper[i], dw[i], ref.dw[i])
        values[f"dw.{f['name']}"] = float(dw[i])
        values[f"dw_refine.{f['name']}"] = float(ref.dw[i])
    mod_t = Table("moduli", ("stage", "lsf_x100", "sm", "am", "lsf_in_band", "sm_in_band", "am_in_band"))
    for stage, m in (("current", now), ("after_lstsq", after), ("after_refine", after_ref)):
        flags = rawmix.norm_band_flags(m)
        mod_t.add(stage, 100.0 * m.lsf, m.sm, m.am, flags["lsf"], flags["sm"], flags["am"])
        for k in ("lsf", "sm", "am"):
            values[f"{stage}.{k}"] = getattr(m, k)
    trace_t = Table("refine_trace", ("sweep", "error"))
    for k, e in enumerate(ref.trace):
        trace_t.add(k, e)
    return values, [feed_t, mod_t, trace_t]


def _flp_problem(p: dict) -> flp_mod.FlpProblem:
    cons = tuple(
        flp_mod.ParametricConstraint(
            c["a"], c["b"], c.get("p", 0.0), c.get("equality", False), c.get("enforce", True), c["name"]
        )
        for c in p["constraints"]
    )
    if len({c.name for c in cons}) != len(cons):
        raise ScenarioError("constraint names must be unique")
    return flp_mod.FlpProblem(p["objective"], cons, tuple(p.get("variables", ())))


def _mu_d(x, prob: flp_mod.FlpProblem, b0: float, b1: float) -> float:
    if b0 > b1 + 1e-12:
        return flp_mod.decision_feasibility(x, prob, b0, b1)
    # the objective ignores the tolerances: score it as reached or not
    mu_z = 1.0 if float(prob.c @ x) >= b0 - 1e-9 * max(1.0, abs(b0)) else 0.0
    return min([mu_z, *flp_mod.constraint_memberships(x, prob)])


def _run_flp(p: dict, alphas: Sequence[float] | None = None, **_) -> tuple[dict, list[Table]]:
    base = _flp_problem(p)
    names = [c.name for c in base.constraints]
    t = Table("sweep", ("p", "alpha") + base.variables + ("z", "mu_D"))
    values: dict[str, Any] = {}
    for sw in p["sweeps"]:
        prob = base
        for name, tol in sw.get("tolerances", {}).items():
            if name not in names:
                raise ScenarioError(f"sweep names unknown constraint {name!r}")
            prob = prob.with_tolerance(names.index(name), tol)
        tols = [prob.constraints[k].p for k in flp_mod.toleranced_rows(prob)]
        ptag = max(tols) if tols else 0.0
        b0, b1 = flp_mod.objective_bounds(prob)
        for sol in flp_mod.alpha_sweep(prob, sw["alphas"] if alphas is None else alphas):
            mu = _mu_d(sol.x_star, prob, b0, b1)
            t.add(ptag, sol.alpha, *sol.x_star.tolist(), sol.z_star, mu)
            tag = f"p{_num(ptag)}.a{_num(sol.alpha)}"
            for name, v in zip(prob.variables, sol.x_star):
                values[f"{tag}.{name}"] = float(v)
            values[f"{tag}.z"] = sol.z_star
            values[f"{tag}.mu_D"] = mu
        values[f"p{_num(ptag)}.b0"] = b0
        values[f"p{_num(ptag)}.b1"] = b1
    return values, [t]


def _neutro_table(name: str, M: nx.NeutroMatrix, labels: Sequence[str]) -> Table:
    t = Table(name, ("row",) + tuple(labels[: M.shape[1]]))
    for lab, r in zip(labels, M.rows()):
        t.add(lab, *(str(v) for v in r))
    return t


def _run_nre(p: dict, **_) -> tuple[dict, list[Table]]:
    raw = parse_rows(p["relation"], "payload.relation")
    R = raw if isinstance(raw, nx.NeutroMatrix) else nx.NeutroMatrix.from_array(raw)
    n, m = R.shape
    labels = list(p.get("labels", [chr(ord("a") + i) for i in range(max(n, m))]))
    if len(labels) < max(n, m):
        raise ScenarioError("need one label per row and column", "payload.labels")
    values: dict[str, Any] = {"height": _scalar(nx.height(R))}
    for lab, v in zip(labels, nx.dom(R)):
        values[f"dom.{lab}"] = _scalar(v)
    for lab, v in zip(labels, nx.ran(R)):
        values[f"ran.{lab}"] = _scalar(v)
    tables = [_neutro_table("relation", R, labels)]
    prop_t = Table("properties", ("property", "status", "witness"))
    if n == m:
        for name, res in (
            ("reflexive", nx.is_reflexive(R)),
            ("symmetric", nx.is_symmetric(R)),
            ("transitive", nx.is_transitive(R)),
        ):
            wit = "" if res.witness is None else f"({labels[res.witness[0]]},{labels[res.witness[1]]})"
            prop_t.add(name, res.status, wit)
            values[name] = res.status
        closure = nx.transitive_closure(R)
        values["closure_idempotent"] = nx.transitive_closure(closure) == closure
        tables.append(_neutro_table("closure", closure, labels))
    tables.append(prop_t)
    edges = Table("sagittal", ("edge",))
    for e in nx.sagittal_edges(R, labels[:n], labels[:m]):
        edges.add(e)
    tables.append(edges)
    if "targets" in p:
        if "inputs" not in p:
            raise ScenarioError("targets need inputs", "payload")
        cfg = FnnConfig(
            max_iters=p.get("max_iters", 100_000),
            tolerance=p.get("tolerance", 1e-6),
            seed=p.get("seed", 0),
            restarts=p.get("restarts", 4),
        )
        res = nx.nre_solve(R, p["targets"], p["inputs"], cfg)
        values["nre.residual"] = res.residual
        values["nre.converged"] = res.converged
        values["nre.indeterminate_rows"] = len(res.indeterminate_rows)
        tables.append(_neutro_table("nre_weights", res.weights, labels))
        out_t = Table("nre_outputs", ("row", "target", "output", "class"))
        for i, (tgt, out) in enumerate(zip(p["targets"], res.outputs)):
            cls = "indeterminate" if i in res.indeterminate_rows else "scalar"
            out_t.add(labels[i], str(tgt), str(out), cls)
            values[f"nre.output.{labels[i]}"] = _scalar(out)
        tables.append(out_t)
    return values, tables


RUNNERS: dict[str, Callable[..., tuple[dict, list[Table]]]] = {
    "ckd": _run_controller,
    "reprocess": _run_controller,
    "setpoint": _run_setpoint,
    "flowsheet": _run_flowsheet,
    "pipe": _run_pipe,
    "extraction": _run_extraction,
    "rawmix": _run_rawmix,
    "flp": _run_flp,
    "nre": _run_nre,
}


def run(s: Scenario, alphas: Sequence[float] | None = None) -> RunReport:
    """Compute a scenario and score its checks.

    ``alphas`` overrides the α list of every sweep (FLP scenarios only).
    """
    if alphas is not None and s.kind != "flp":
        raise ScenarioError("alpha overrides apply to flp scenarios only", f"scenario {s.id}")
    try:
        values, tables = RUNNERS[s.kind](s.payload, alphas=alphas)
    except ScenarioError as exc:
        raise ScenarioError(str(exc), f"scenario {s.id}") from exc
    except (FuzzyProcError, ValueError, ZeroDivisionError) as exc:
        raise ScenarioError(f"{type(exc).__name__}: {exc}", f"scenario {s.id}") from exc
    checks = [evaluate_check(c, values) for c in s.checks]
    return RunReport(s.id, s.kind, s.title, values, tables, checks)


def table_to_csv(columns: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([format_cell(v) for v in r])
    return buf.getvalue()


CHECK_COLUMNS = ("scenario", "check", "expected", "got", "tolerance", "status", "note")
SUMMARY_COLUMNS = CHECK_COLUMNS


def _check_rows(report: RunReport) -> list[tuple]:
    return [(report.scenario_id, c.key, c.expected, c.got, c.tolerance, c.status, c.note) for c in report.checks]


def emit_csv(report: RunReport, out_dir) -> list[Path]:
    """Write each table as ``<id>.<table>.csv`` plus ``<id>.checks.csv``."""
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
        paths = []
        for t in report.tables:
            path = out / f"{report.scenario_id}.{t.name}.csv"
            path.write_text(table_to_csv(t.columns, t.rows), encoding="utf-8")
            paths.append(path)
        path = out / f"{report.scenario_id}.checks.csv"
        path.write_text(table_to_csv(CHECK_COLUMNS, _check_rows(report)), encoding="utf-8")
        paths.append(path)
    except OSError as exc:
        raise OSError(f"cannot write report to {exc.filename or out}: {exc.strerror or exc}") from exc
    return paths


def reproduce_paper(out_dir=None, paths: Sequence[Path] | None = None) -> tuple[list[RunReport], list[tuple]]:
    """Run every bundled scenario in name order; return reports and the summary rows.

    With ``out_dir`` the per-scenario CSVs and ``acceptance.csv`` are written.
    """
    reports = [run(load_scenario(p)) for p in (paths or bundled_scenarios())]
    rows = [r for rep in reports for r in _check_rows(rep)]
    if out_dir is not None:
        for rep in reports:
            emit_csv(rep, out_dir)
        Path(out_dir, "acceptance.csv").write_text(table_to_csv(SUMMARY_COLUMNS, rows), encoding="utf-8")
    return reports, rows
