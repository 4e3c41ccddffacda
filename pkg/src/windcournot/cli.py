"""Command-line front end.

Every command reads an optional JSON config validated against a strict
schema (unknown keys are rejected), with command-line flags overriding
config keys.  Output is JSON or CSV on stdout or to --output, and is
byte-identical across runs of the same configuration.  Failures write a
single-line JSON object to stderr and exit with a contract code:
2 config problem, 3 regime-check refusal, 4 oracle disagreement,
1 any other model error.
"""

import functools
import json
import math
import random
import sys
from dataclasses import replace
from pathlib import Path

import click
import jsonschema

from .analysis import (
    SweepTable,
    expectations_duopoly,
    expectations_mixed,
    expectations_multi,
    sweep_duopoly,
    sweep_mixed,
    sweep_multi,
)
from .demand import DemandSpec, linear_demand
from .equilibrium import (
    DuopolyParams,
    check_duopoly_regime,
    solve_phi_duopoly,
    solve_phi_multi,
)
from .errors import (
    AssumptionViolation,
    ConfigError,
    ModelError,
    OracleDisagreement,
)
from .mixed_market import MixedMarketParams, check_mixed_regime, solve_mixed
from .oracle import (
    fixed_point_equilibrium,
    low_state_best_response,
    scan_transfer_feasibility,
)
from .stochastic import check_fosd, check_sosd, conditional_given_high, mixture_family
from .strategic_conduct import (
    CollusionParams,
    collusion_value,
    collusion_welfare_cost,
    gamma_hat,
    info_sharing_profit_gain,
    info_sharing_welfare_gain,
    l_star,
    transfer_bounds,
)

_NUM = {"type": "number"}
_PROB = {"type": "number", "exclusiveMinimum": 0, "exclusiveMaximum": 1}
_DISP = {"type": "number", "minimum": 0, "maximum": 1}
_POS = {"type": "number", "exclusiveMinimum": 0}
_NONNEG = {"type": "number", "minimum": 0}

_DEMAND_SCHEMA = {
    "type": "object",
    "properties": {
        "kind": {"enum": ["linear", "quadratic"]},
        "s": _POS,
        "a": _NUM,
        "b": _NUM,
    },
    "required": ["kind", "s"],
    "additionalProperties": False,
}

_SWEEP_SCHEMA = {
    "type": "object",
    "properties": {
        "over": {"type": "string"},
        "from": _NUM,
        "to": _NUM,
        "steps": {"type": "integer", "minimum": 1},
    },
    "additionalProperties": False,
}

_OUTPUT_KEYS = {
    "format": {"enum": ["csv", "json"]},
    "output": {"type": "string"},
}


def _market_schema(market: str, extra: dict, required: list) -> dict:
    props = {"market": {"const": market}, "sweep": _SWEEP_SCHEMA, **_OUTPUT_KEYS, **extra}
    return {
        "type": "object",
        "properties": props,
        "required": required,
        "additionalProperties": False,
    }


_SCHEMAS = {
    "duopoly": _market_schema(
        "duopoly",
        {"demand": _DEMAND_SCHEMA, "beta": _PROB, "d": _DISP, "L": _POS, "H": _POS},
        ["demand", "beta", "L", "H"],
    ),
    "multi": _market_schema(
        "multi",
        {
            "demand": _DEMAND_SCHEMA,
            "family": {"const": "mixture"},
            "n_plus_1": {"type": "integer", "minimum": 2},
            "beta": _PROB,
            "d": _DISP,
            "L": _POS,
            "H": _POS,
        },
        ["demand", "n_plus_1", "beta", "L", "H"],
    ),
    "mixed": _market_schema(
        "mixed",
        {
            "demand": _DEMAND_SCHEMA,
            "beta": _PROB,
            "d": _DISP,
            "L": _POS,
            "H": _POS,
            "c": _NONNEG,
        },
        ["demand", "beta", "L", "H", "c"],
    ),
    "collusion": _market_schema(
        "collusion",
        {"s": _POS, "beta": _PROB, "d": _DISP, "L": _POS, "gamma": _NONNEG},
        ["s", "beta", "L"],
    ),
    "info-sharing": _market_schema(
        "info-sharing",
        {"beta": _PROB, "d": _DISP, "L": _POS},
        [],
    ),
    "validate": _market_schema(
        "validate",
        {
            "family": {"const": "mixture"},
            "n_plus_1": {"type": "integer", "minimum": 2},
            "beta": _PROB,
            "d_grid": {"type": "integer", "minimum": 2},
        },
        [],
    ),
    "verify": _market_schema(
        "verify",
        {
            "demand": _DEMAND_SCHEMA,
            "beta": _PROB,
            "d": _DISP,
            "L": _POS,
            "H": _POS,
            "grid": {"type": "integer", "minimum": 100},
            "samples": {"type": "integer", "minimum": 0},
            "seed": {"type": "integer"},
        },
        [],
    ),
}


def _fail(exc: BaseException, code: int) -> None:
    line = json.dumps({"error": type(exc).__name__, "message": str(exc)}, sort_keys=True)
    click.echo(line, err=True)
    sys.exit(code)


def guarded(fn):
    """Map model exceptions onto the exit-code contract."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except click.ClickException:
            raise
        except ConfigError as exc:
            _fail(exc, 2)
        except AssumptionViolation as exc:
            _fail(exc, 3)
        except OracleDisagreement as exc:
            _fail(exc, 4)
        except ModelError as exc:
            _fail(exc, 1)

    return wrapper


def _load_config(path: str | None, market: str, overrides: dict) -> dict:
    """Parse, merge flag overrides, and schema-validate a run config."""
    cfg: dict = {}
    if path is not None:
        try:
            cfg = json.loads(Path(path).read_text())
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}")
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config {path} is not valid JSON: {exc}")
        if not isinstance(cfg, dict):
            raise ConfigError("config root must be a JSON object")
    for key, value in overrides.items():
        if value is None:
            continue
        if key.startswith("demand."):
            cfg.setdefault("demand", {})[key.split(".", 1)[1]] = value
        elif key.startswith("sweep."):
            cfg.setdefault("sweep", {})[key.split(".", 1)[1]] = value
        else:
            cfg[key] = value
    try:
        jsonschema.validate(cfg, _SCHEMAS[market])
    except jsonschema.ValidationError as exc:
        location = "/".join(str(p) for p in exc.absolute_path) or "(top level)"
        raise ConfigError(f"config invalid at {location}: {exc.message}")
    return cfg


def _require(cfg: dict, key: str):
    if key not in cfg:
        raise ConfigError(f"missing required key {key!r} (set it in the config or by flag)")
    return cfg[key]


def _demand_from(cfg: dict) -> DemandSpec:
    spec = cfg["demand"]
    try:
        return DemandSpec(
            kind=spec["kind"], s=spec["s"], a=spec.get("a", 1.0), b=spec.get("b", 0.0)
        )
    except ValueError as exc:
        raise ConfigError(f"bad demand spec: {exc}")


def _grid_from(cfg: dict, default_over: str) -> tuple[str, list]:
    sweep = cfg.get("sweep", {})
    over = sweep.get("over", default_over)
    lo = sweep.get("from", 0.0)
    hi = sweep.get("to", 1.0)
    steps = sweep.get("steps", 41)
    if steps == 1:
        return over, [lo]
    grid = [lo + (hi - lo) * i / (steps - 1) for i in range(steps - 1)]
    grid.append(hi)
    return over, grid


def _emit(text: str, cfg: dict) -> None:
    out = cfg.get("output")
    if out is None:
        click.echo(text, nl=False)
    else:
        Path(out).write_text(text)


def _jsonable(value):
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def _record_text(record: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(_jsonable(record), sort_keys=True, indent=2) + "\n"
    header = ",".join(record)
    cells = []
    for v in record.values():
        if isinstance(v, bool):
            cells.append("true" if v else "false")
        elif isinstance(v, float):
            cells.append(f"{v:.17g}")
        elif isinstance(v, (list, tuple, dict)):
            cells.append(json.dumps(_jsonable(v), sort_keys=True, separators=(";", ":")))
        else:
            cells.append(str(v))
    return header + "\n" + ",".join(cells) + "\n"


def _table_text(table: SweepTable, fmt: str) -> str:
    if fmt == "csv":
        return table.to_csv()
    return (
        json.dumps(
            {"columns": list(table.columns), "rows": [_jsonable(list(r)) for r in table.rows]},
            sort_keys=True,
            indent=2,
        )
        + "\n"
    )


def _emit_table(table: SweepTable, cfg: dict) -> None:
    _emit(_table_text(table, cfg.get("format", "csv")), cfg)
    if table.flagged:
        raise AssumptionViolation(
            "one or more grid points failed the regime checks (see status column)"
        )


def _build_duopoly(cfg: dict, need_d: bool = True) -> DuopolyParams:
    try:
        return DuopolyParams(
            demand=_demand_from(cfg),
            beta=_require(cfg, "beta"),
            d=_require(cfg, "d") if need_d else cfg.get("d", 0.0),
            L=_require(cfg, "L"),
            H=_require(cfg, "H"),
        )
    except ValueError as exc:
        raise ConfigError(str(exc))


def _build_mixed(cfg: dict, need_d: bool = True) -> MixedMarketParams:
    try:
        return MixedMarketParams(
            demand=_demand_from(cfg),
            beta=_require(cfg, "beta"),
            d=_require(cfg, "d") if need_d else cfg.get("d", 0.0),
            L=_require(cfg, "L"),
            H=_require(cfg, "H"),
            c=_require(cfg, "c"),
        )
    except ValueError as exc:
        raise ConfigError(str(exc))


def _build_collusion(cfg: dict, need_d: bool = True) -> CollusionParams:
    try:
        return CollusionParams(
            s=_require(cfg, "s"),
            beta=_require(cfg, "beta"),
            d=_require(cfg, "d") if need_d else cfg.get("d", 0.0),
            L=_require(cfg, "L"),
            gamma=cfg.get("gamma", 0.0),
        )
    except ValueError as exc:
        raise ConfigError(str(exc))


config_option = click.option(
    "--config", type=click.Path(dir_okay=False), default=None, help="JSON config file."
)
format_option = click.option(
    "--format", "fmt", type=click.Choice(["json", "csv"]), default=None, help="Output format."
)
output_option = click.option(
    "--output", type=click.Path(dir_okay=False), default=None, help="Write here instead of stdout."
)


def sweep_options(fn):
    fn = click.option("--over", default=None, help="Parameter to sweep.")(fn)
    fn = click.option("--from", "from_", type=float, default=None, help="Grid start.")(fn)
    fn = click.option("--to", type=float, default=None, help="Grid end (inclusive).")(fn)
    fn = click.option("--steps", type=click.IntRange(min=1), default=None, help="Grid size.")(fn)
    return fn


def market_flags(*names):
    """Attach numeric override flags shared by the market commands."""
    decorators = {
        "s": click.option("--s", type=float, default=None, help="Demand intercept."),
        "beta": click.option("--beta", type=float, default=None, help="High-state probability."),
        "d": click.option("--d", type=float, default=None, help="Dispersion in [0, 1]."),
        "L": click.option("--L", "L", type=float, default=None, help="Low-state capacity."),
        "H": click.option("--H", "H", type=float, default=None, help="High-state capacity."),
        "c": click.option("--c", type=float, default=None, help="Traditional marginal cost."),
        "gamma": click.option("--gamma", type=float, default=None, help="Expected penalty."),
        "n": click.option("--n", "n_plus_1", type=int, default=None, help="Producer count."),
        "kind": click.option(
            "--demand-kind",
            type=click.Choice(["linear", "quadratic"]),
            default=None,
            help="Inverse demand family.",
        ),
        "a": click.option("--a", type=float, default=None, help="Quadratic linear coefficient."),
        "b": click.option("--b", type=float, default=None, help="Quadratic curvature."),
    }

    def apply(fn):
        for name in reversed(names):
            fn = decorators[name](fn)
        return fn

    return apply


def _demand_overrides(kwargs: dict) -> dict:
    out = {}
    for flag, key in (
        ("s", "demand.s"),
        ("demand_kind", "demand.kind"),
        ("a", "demand.a"),
        ("b", "demand.b"),
    ):
        if flag in kwargs:
            out[key] = kwargs.pop(flag)
    return out


def _sweep_overrides(kwargs: dict) -> dict:
    out = {}
    for flag, key in (
        ("over", "sweep.over"),
        ("from_", "sweep.from"),
        ("to", "sweep.to"),
        ("steps", "sweep.steps"),
    ):
        if flag in kwargs:
            out[key] = kwargs.pop(flag)
    return out


@click.group()
def main() -> None:
    """Equilibrium and policy analysis for stochastic-capacity Cournot markets."""


@main.group()
def duopoly() -> None:
    """Two producers with private availability draws."""


@duopoly.command("solve")
@config_option
@market_flags("kind", "s", "a", "b", "beta", "d", "L", "H")
@format_option
@output_option
@guarded
def duopoly_solve(config, fmt, output, **kwargs) -> None:
    """Solve for the high-state output and report the equilibrium."""
    overrides = {**_demand_overrides(kwargs), **kwargs, "format": fmt, "output": output}
    cfg = _load_config(config, "duopoly", overrides)
    params = _build_duopoly(cfg)
    eq = solve_phi_duopoly(params)
    ex = expectations_duopoly(params, eq)
    record = {
        "phi": eq.phi,
        "strategy": eq.strategy,
        "foc_residual": eq.foc_residual,
        "method": eq.method,
        "regime": eq.regime,
        "e_welfare": ex.e_welfare,
        "e_price": ex.e_price,
        "e_profit_per_firm": ex.e_profit_per_firm,
        "e_total_output": ex.e_total_output,
    }
    _emit(_record_text(record, cfg.get("format", "json")), cfg)


@duopoly.command("sweep")
@config_option
@market_flags("kind", "s", "a", "b", "beta", "d", "L", "H")
@sweep_options
@format_option
@output_option
@guarded
def duopoly_sweep(config, fmt, output, **kwargs) -> None:
    """Scan one parameter and emit equilibrium plus analysis per point."""
    overrides = {
        **_demand_overrides(kwargs),
        **_sweep_overrides(kwargs),
        **kwargs,
        "format": fmt,
        "output": output,
    }
    cfg = _load_config(config, "duopoly", overrides)
    over, grid = _grid_from(cfg, "d")
    template = _build_duopoly(cfg, need_d=(over != "d"))
    try:
        table = sweep_duopoly(template, over, grid)
    except ValueError as exc:
        raise ConfigError(str(exc))
    _emit_table(table, cfg)


@main.group()
def multi() -> None:
    """Markets with three or more producers (mixture availability family)."""


@multi.command("solve")
@config_option
@click.option("--family", type=click.Choice(["mixture"]), default=None)
@market_flags("kind", "s", "a", "b", "n", "beta", "d", "L", "H")
@format_option
@output_option
@guarded
def multi_solve(config, family, fmt, output, **kwargs) -> None:
    """Solve the many-producer market at one parameter point."""
    overrides = {
        **_demand_overrides(kwargs),
        **kwargs,
        "family": family,
        "format": fmt,
        "output": output,
    }
    cfg = _load_config(config, "multi", overrides)
    demand = _demand_from(cfg)
    try:
        dist = mixture_family(_require(cfg, "n_plus_1"), _require(cfg, "beta"), _require(cfg, "d"))
    except ValueError as exc:
        raise ConfigError(str(exc))
    eq = solve_phi_multi(dist, demand, _require(cfg, "L"), _require(cfg, "H"))
    ex = expectations_multi(dist, demand, eq)
    record = {
        "phi": eq.phi,
        "strategy": eq.strategy,
        "foc_residual": eq.foc_residual,
        "regime": eq.regime,
        "n_plus_1": dist.n_plus_1,
        "e_welfare": ex.e_welfare,
        "e_price": ex.e_price,
        "e_profit_per_firm": ex.e_profit_per_firm,
        "e_total_output": ex.e_total_output,
    }
    _emit(_record_text(record, cfg.get("format", "json")), cfg)


@multi.command("sweep")
@config_option
@click.option("--family", type=click.Choice(["mixture"]), default=None)
@market_flags("kind", "s", "a", "b", "n", "beta", "d", "L", "H")
@sweep_options
@format_option
@output_option
@guarded
def multi_sweep(config, family, fmt, output, **kwargs) -> None:
    """Scan dispersion for the many-producer market."""
    overrides = {
        **_demand_overrides(kwargs),
        **_sweep_overrides(kwargs),
        **kwargs,
        "family": family,
        "format": fmt,
        "output": output,
    }
    cfg = _load_config(config, "multi", overrides)
    over, grid = _grid_from(cfg, "d")
    if over != "d":
        raise ConfigError("the many-producer sweep only supports --over d")
    demand = _demand_from(cfg)
    try:
        table = sweep_multi(
            demand,
            _require(cfg, "n_plus_1"),
            _require(cfg, "beta"),
            _require(cfg, "L"),
            _require(cfg, "H"),
            grid,
        )
    except ValueError as exc:
        raise ConfigError(str(exc))
    _emit_table(table, cfg)


@main.group()
def mixed() -> None:
    """Two wind producers plus a traditional generator."""


@mixed.command("solve")
@config_option
@market_flags("kind", "s", "a", "b", "beta", "d", "L", "H", "c")
@click.option(
    "--method",
    type=click.Choice(["auto", "closed_form", "iterative"]),
    default="auto",
    show_default=True,
)
@format_option
@output_option
@guarded
def mixed_solve(config, fmt, output, method, **kwargs) -> None:
    """Solve the wind-plus-traditional equilibrium."""
    overrides = {**_demand_overrides(kwargs), **kwargs, "format": fmt, "output": output}
    cfg = _load_config(config, "mixed", overrides)
    params = _build_mixed(cfg)
    sol = solve_mixed(params, method=method)
    regime = check_mixed_regime(params)
    ex = expectations_mixed(params, sol)
    record = {
        "phi": sol.phi,
        "x": sol.x,
        "residual_phi": sol.residual_phi,
        "residual_x": sol.residual_x,
        "method": sol.method,
        "iterations": sol.iterations,
        "x_clamped": sol.x_clamped,
        "regime_ok": regime.ok,
        "E_welfare": ex.e_welfare,
        "E_price": ex.e_price,
        "E_profit_wind": ex.e_profit_wind,
        "E_profit_trad": ex.e_profit_trad,
    }
    _emit(_record_text(record, cfg.get("format", "json")), cfg)


@mixed.command("sweep")
@config_option
@market_flags("kind", "s", "a", "b", "beta", "d", "L", "H", "c")
@sweep_options
@format_option
@output_option
@guarded
def mixed_sweep(config, fmt, output, **kwargs) -> None:
    """Scan one parameter of the mixed market."""
    overrides = {
        **_demand_overrides(kwargs),
        **_sweep_overrides(kwargs),
        **kwargs,
        "format": fmt,
        "output": output,
    }
    cfg = _load_config(config, "mixed", overrides)
    over, grid = _grid_from(cfg, "d")
    template = _build_mixed(cfg, need_d=(over != "d"))
    try:
        table = sweep_mixed(template, over, grid)
    except ValueError as exc:
        raise ConfigError(str(exc))
    _emit_table(table, cfg)


@main.group()
def collusion() -> None:
    """Cartel feasibility, deterrence threshold, value, and welfare cost."""


def _collusion_record(params: CollusionParams) -> dict:
    bounds = transfer_bounds(params)
    record = {
        "phi": params.phi(),
        "lb_irl": bounds.lb_irl,
        "ub_ic": bounds.ub_ic,
        "ub_irh": bounds.ub_irh,
        "feasible": bounds.feasible,
        "interval": list(bounds.interval) if bounds.interval else None,
        "gamma_hat": gamma_hat(params) if params.d > 0.0 else None,
        "value": collusion_value(params),
        "welfare_cost": collusion_welfare_cost(params),
    }
    return record


@collusion.command("assess")
@config_option
@market_flags("s", "beta", "d", "L", "gamma")
@format_option
@output_option
@guarded
def collusion_assess(config, fmt, output, **kwargs) -> None:
    """Report transfer bounds, deterrence threshold, value, welfare cost."""
    overrides = {**kwargs, "format": fmt, "output": output}
    cfg = _load_config(config, "collusion", overrides)
    params = _build_collusion(cfg)
    _emit(_record_text(_collusion_record(params), cfg.get("format", "json")), cfg)


@collusion.command("sweep")
@config_option
@market_flags("s", "beta", "d", "L", "gamma")
@sweep_options
@format_option
@output_option
@guarded
def collusion_sweep(config, fmt, output, **kwargs) -> None:
    """Scan one collusion parameter."""
    overrides = {**_sweep_overrides(kwargs), **kwargs, "format": fmt, "output": output}
    cfg = _load_config(config, "collusion", overrides)
    over, grid = _grid_from(cfg, "d")
    template = _build_collusion(cfg, need_d=(over != "d"))
    if over not in ("s", "beta", "d", "L", "gamma"):
        raise ConfigError(f"cannot sweep over {over!r}")
    columns = (
        over,
        "phi",
        "lb_irl",
        "ub_ic",
        "ub_irh",
        "feasible",
        "gamma_hat",
        "value",
        "welfare_cost",
        "status",
    )
    rows = []
    nan = float("nan")
    for value in grid:
        try:
            p = replace(template, **{over: value})
        except ValueError:
            rows.append((value,) + (nan,) * 8 + ("invalid_params",))
            continue
        bounds = transfer_bounds(p)
        g_hat = gamma_hat(p) if p.d > 0.0 else nan
        rows.append(
            (
                value,
                p.phi(),
                bounds.lb_irl,
                bounds.ub_ic,
                bounds.ub_irh,
                "true" if bounds.feasible else "false",
                g_hat,
                collusion_value(p),
                collusion_welfare_cost(p),
                "ok",
            )
        )
    _emit_table(SweepTable(columns=columns, rows=tuple(rows)), cfg)


@main.group(name="info-sharing")
def info_sharing() -> None:
    """Welfare and profit effects of producers pooling their draws (s = 1)."""


@info_sharing.command("assess")
@config_option
@market_flags("beta", "d", "L")
@format_option
@output_option
@guarded
def info_sharing_assess(config, fmt, output, **kwargs) -> None:
    """Evaluate the sharing gains and the capacity threshold at one point."""
    overrides = {**kwargs, "format": fmt, "output": output}
    cfg = _load_config(config, "info-sharing", overrides)
    beta = _require(cfg, "beta")
    d = _require(cfg, "d")
    L = _require(cfg, "L")
    try:
        record = {
            "welfare_gain": info_sharing_welfare_gain(beta, d, L),
            "profit_gain": info_sharing_profit_gain(beta, d, L),
            "l_star": l_star(beta, d),
        }
    except ValueError as exc:
        raise ConfigError(str(exc))
    record["sharing_profitable"] = record["profit_gain"] > 0.0
    _emit(_record_text(record, cfg.get("format", "json")), cfg)


@info_sharing.command("sweep")
@config_option
@click.option("--beta-from", type=float, default=0.1, show_default=True)
@click.option("--beta-to", type=float, default=0.9, show_default=True)
@click.option("--beta-steps", type=click.IntRange(min=1), default=9, show_default=True)
@sweep_options
@format_option
@output_option
@guarded
def info_sharing_sweep(config, beta_from, beta_to, beta_steps, fmt, output, **kwargs) -> None:
    """Emit the capacity threshold surface: beta rows by dispersion columns."""
    overrides = {**_sweep_overrides(kwargs), **kwargs, "format": fmt, "output": output}
    cfg = _load_config(config, "info-sharing", overrides)
    over, d_grid = _grid_from(cfg, "d")
    if over != "d":
        raise ConfigError("the threshold surface only sweeps dispersion")
    if beta_steps == 1:
        betas = [beta_from]
    else:
        betas = [
            beta_from + (beta_to - beta_from) * i / (beta_steps - 1) for i in range(beta_steps)
        ]
    columns = ("beta",) + tuple(f"d={d:.17g}" for d in d_grid)
    rows = []
    for beta in betas:
        try:
            rows.append((beta,) + tuple(l_star(beta, d) for d in d_grid))
        except ValueError as exc:
            raise ConfigError(str(exc))
    _emit_table(SweepTable(columns=columns, rows=tuple(rows)), cfg)


@main.command("validate")
@config_option
@click.option("--family", type=click.Choice(["mixture"]), default=None)
@click.option("--n", "n_plus_1", type=int, default=None, help="Producer count.")
@click.option("--beta", type=float, default=None)
@click.option("--d-grid", "d_grid_n", type=click.IntRange(min=2), default=None,
              help="Closed dispersion grid size.  [default: 11]")
@format_option
@output_option
@guarded
def validate(config, family, n_plus_1, beta, d_grid_n, fmt, output) -> None:
    """Check the dominance orderings of the availability family on a grid.

    For every pair d < d' the conditional-given-high law at d must
    first-order dominate the one at d', and the count law at d' must
    second-order dominate the one at d.  Any failed pair makes the
    command exit 4 after writing the table.
    """
    overrides = {"n_plus_1": n_plus_1, "beta": beta, "family": family,
                 "d_grid": d_grid_n, "format": fmt, "output": output}
    cfg = _load_config(config, "validate", overrides)
    n1 = _require(cfg, "n_plus_1")
    b = _require(cfg, "beta")
    points = cfg.get("d_grid", 11)
    grid = [i / (points - 1) for i in range(points)]
    try:
        dists = [mixture_family(n1, b, d) for d in grid]
    except ValueError as exc:
        raise ConfigError(str(exc))
    conds = [conditional_given_high(dist) for dist in dists]
    columns = ("n_plus_1", "beta", "d_low", "d_high", "fosd", "sosd")
    rows = []
    all_ok = True
    for i in range(len(grid)):
        for j in range(i + 1, len(grid)):
            fosd = check_fosd(conds[i], conds[j])
            sosd = check_sosd(dists[i].count_probs, dists[j].count_probs)
            all_ok = all_ok and fosd and sosd
            rows.append(
                (
                    float(n1),
                    b,
                    grid[i],
                    grid[j],
                    "true" if fosd else "false",
                    "true" if sosd else "false",
                )
            )
    table = SweepTable(columns=columns, rows=tuple(rows))
    _emit(_table_text(table, cfg.get("format", "csv")), cfg)
    if not all_ok:
        raise OracleDisagreement("a dominance ordering failed on the grid")


@main.command("verify")
@config_option
@click.option("--grid", type=click.IntRange(min=100), default=None, help="Oracle grid size.")
@click.option("--samples", type=click.IntRange(min=0), default=None, help="Random sets per check.")
@click.option("--seed", type=int, default=None, help="RNG seed.")
@format_option
@output_option
@guarded
def verify(config, grid, samples, seed, fmt, output) -> None:
    """Re-derive solver results by brute force and exit 4 on disagreement.

    Duopoly equilibria are re-found by gridded best-response iteration
    and the low-state optimality of selling capacity is checked
    exhaustively; collusion feasibility is re-checked by scanning the raw
    constraints over transfer shares.  A config supplies one extra
    duopoly parameter set to verify alongside the random draws.
    """
    overrides = {"grid": grid, "samples": samples, "seed": seed, "format": fmt, "output": output}
    cfg = _load_config(config, "verify", overrides)
    grid_n = cfg.get("grid", 4000)
    n_samples = cfg.get("samples", 5)
    rng = random.Random(cfg.get("seed", 0))

    duopoly_sets = []
    if "demand" in cfg:
        duopoly_sets.append(_build_duopoly(cfg))
    for _ in range(n_samples):
        duopoly_sets.append(
            DuopolyParams(
                demand=linear_demand(3.0),
                beta=rng.uniform(0.15, 0.85),
                d=rng.uniform(0.0, 1.0),
                L=rng.uniform(0.1, 0.65),
                H=2.0,
            )
        )
    max_gap = 0.0
    for params in duopoly_sets:
        if not check_duopoly_regime(params).ok:
            raise AssumptionViolation(
                "verification set fails the interior-regime check; adjust the config"
            )
        eq = solve_phi_duopoly(params)
        found = fixed_point_equilibrium(params, grid_n=grid_n)
        gap = abs(found.phi_hat - eq.phi)
        max_gap = max(max_gap, gap)
        settled = found.converged or found.cycle_width <= found.grid_step * 1.0000001
        if not settled or gap > found.grid_step:
            raise OracleDisagreement(
                f"grid search found phi = {found.phi_hat!r} but the solver "
                f"says {eq.phi!r} (step {found.grid_step!r})"
            )
        best_low = low_state_best_response(params, eq.phi, 2000)
        if best_low != params.L:
            raise OracleDisagreement(
                f"a low-state producer prefers {best_low!r} over capacity {params.L!r}"
            )

    collusion_checked = 0
    for _ in range(n_samples):
        cp = CollusionParams(
            s=1.0,
            beta=rng.uniform(0.15, 0.85),
            d=rng.uniform(0.05, 1.0),
            L=rng.uniform(0.05, 0.30),
            gamma=0.0,
        )
        bounds = transfer_bounds(cp)
        scan = scan_transfer_feasibility(cp)
        if not (bounds.feasible and scan.feasible):
            raise OracleDisagreement(f"feasibility mismatch at {cp!r}")
        ub = min(bounds.ub_ic, bounds.ub_irh)
        if abs(scan.t_first - bounds.lb_irl) > 2e-5 or abs(scan.t_last - ub) > 2e-5:
            raise OracleDisagreement(
                f"scan interval [{scan.t_first!r}, {scan.t_last!r}] does not match "
                f"bounds [{bounds.lb_irl!r}, {ub!r}]"
            )
        deterrence = gamma_hat(cp)
        blocked = replace(cp, gamma=2.0 * deterrence)
        if transfer_bounds(blocked).feasible or scan_transfer_feasibility(blocked).feasible:
            raise OracleDisagreement(
                f"collusion should be deterred at gamma = {2.0 * deterrence!r}"
            )
        collusion_checked += 1

    record = {
        "duopoly_sets": len(duopoly_sets),
        "collusion_sets": collusion_checked,
        "grid": grid_n,
        "max_phi_gap": max_gap,
        "ok": True,
    }
    _emit(_record_text(record, cfg.get("format", "json")), cfg)
