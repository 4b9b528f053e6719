"""Partition schedules: the grids a campaign sweeps, and their structural checks."""

import ast
import math
import operator
from dataclasses import dataclass, field

import numpy as np

from ..errors import ConfigError
from ..scalarfun import LOG3, LOG8, f_n, i_k_upper

LOG7 = math.log(7.0)

# Grid endpoints that should coincide with log 8 (or log 8 - delta_m) are
# accepted within this distance, so decimal transcriptions of the schedules
# that land an ulp away still validate.
ENDPOINT_TOL = 1e-12


@dataclass(frozen=True)
class AffineMax:
    """The monotone step function l -> max(floor, l + offset)."""

    floor: float
    offset: float

    def __call__(self, l):
        return max(self.floor, l + self.offset)


@dataclass
class GridSchedule:
    """Grids of one campaign. Arrays are indexed as in the condition lists:
    ``lam[0..m]``, ``delta[0..m]``, ``e_grid[0..n]``, ``h_grid[0..p]``,
    ``zeta[0..q]``. ``mu_table[i]`` (i = 1..m, entry 0 unused) replaces
    ``script_h(delta[i])`` on lambda cell i when present.
    """

    lam: np.ndarray
    delta: np.ndarray
    e_grid: np.ndarray
    h_grid: np.ndarray | None = None
    zeta: np.ndarray | None = None
    delta_hat: tuple | None = None
    script_h: AffineMax | None = None
    mu_table: np.ndarray | None = None

    @property
    def m(self):
        return len(self.lam) - 1

    @property
    def n(self):
        return len(self.e_grid) - 1

    @property
    def p(self):
        return 0 if self.h_grid is None else len(self.h_grid) - 1

    @property
    def q(self):
        return 0 if self.zeta is None else len(self.zeta) - 1

    def cell_mu(self):
        """mu used on each lambda cell (entry 0 mirrors cell 1)."""
        if self.mu_table is not None:
            mu = np.array(self.mu_table, dtype=float)
        elif self.script_h is not None:
            mu = np.array([self.script_h(d) for d in self.delta])
        else:
            raise ConfigError("schedule needs script_h or mu_table")
        mu[0] = mu[1]
        return mu


@dataclass
class StructuralCheck:
    name: str
    passed: bool
    detail: str = field(default="")


# ------------------------------------------------------------- config parsing

_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub,
           ast.Mult: operator.mul, ast.Div: operator.truediv}
_FUNCS = {"log": math.log, "sqrt": math.sqrt, "exp": math.exp}


def _eval_node(node):
    if isinstance(node, ast.Expression):
        return _eval_node(node.body)
    if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
        return float(node.value)
    if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
        return _BINOPS[type(node.op)](_eval_node(node.left), _eval_node(node.right))
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
        return -_eval_node(node.operand)
    if (isinstance(node, ast.Call) and isinstance(node.func, ast.Name)
            and node.func.id in _FUNCS and len(node.args) == 1 and not node.keywords):
        return _FUNCS[node.func.id](_eval_node(node.args[0]))
    raise ConfigError(f"unsupported expression element {ast.dump(node)}")


def number(value):
    """A config number: a JSON number or an arithmetic string such as
    ``"log(8) - 0.0335"`` (``+ - * /``, unary minus, log, sqrt, exp)."""
    if isinstance(value, bool):
        raise ConfigError(f"expected a number, got {value!r}")
    if isinstance(value, (int, float)):
        return float(value)
    if isinstance(value, str):
        try:
            tree = ast.parse(value, mode="eval")
        except SyntaxError as exc:
            raise ConfigError(f"cannot parse number {value!r}") from exc
        try:
            return _eval_node(tree)
        except (ValueError, ZeroDivisionError, OverflowError) as exc:
            raise ConfigError(f"cannot evaluate {value!r}: {exc}") from exc
    raise ConfigError(f"expected a number, got {value!r}")


def expand_segments(segments, name):
    """Expand ``[{from, to, base, step[, origin]}]`` into an array.

    Entry i of a segment is ``base + step * (i - origin)`` with origin
    defaulting to ``from``. Segments must tile 0..N without gaps or overlaps.
    """
    if not isinstance(segments, list) or not segments:
        raise ConfigError(f"{name}: segments must be a non-empty list")
    values = {}
    for seg in segments:
        try:
            lo, hi = int(seg["from"]), int(seg["to"])
            base = number(seg["base"])
        except KeyError as exc:
            raise ConfigError(f"{name}: segment missing {exc}") from None
        step = number(seg.get("step", 0.0))
        origin = int(seg.get("origin", lo))
        if hi < lo:
            raise ConfigError(f"{name}: segment from {lo} to {hi} is empty")
        for i in range(lo, hi + 1):
            if i in values:
                raise ConfigError(f"{name}: index {i} covered twice")
            values[i] = base + step * (i - origin)
    first = min(values)
    size = max(values) + 1
    if len(values) != size - first:
        raise ConfigError(f"{name}: segments leave gaps")
    out = np.full(size, np.nan)
    for i, v in values.items():
        out[i] = v
    return out


def _array(spec, name):
    if isinstance(spec, dict) and "segments" in spec:
        return expand_segments(spec["segments"], name)
    if isinstance(spec, list):
        return np.array([number(v) for v in spec])
    raise ConfigError(f"{name}: expected a list or {{segments: [...]}}")


def _uniform(spec, name, default_upper=None):
    # {count, upper}: upper * j / count for j = 0..count.
    if not isinstance(spec, dict) or "count" not in spec:
        raise ConfigError(f"{name}: expected {{count, upper}}")
    count = int(spec["count"])
    if count < 1:
        raise ConfigError(f"{name}: count must be positive")
    upper = number(spec["upper"]) if "upper" in spec else default_upper
    if upper is None:
        raise ConfigError(f"{name}: upper is required")
    return np.array([upper * j / count for j in range(count + 1)])


def schedule_from_config(cfg):
    """Build a GridSchedule from the ``schedule`` object of a campaign config."""
    if not isinstance(cfg, dict):
        raise ConfigError("schedule must be an object")
    for key in ("lambda", "delta", "e_grid"):
        if key not in cfg:
            raise ConfigError(f"schedule is missing {key!r}")
    lam = _array(cfg["lambda"], "lambda")
    delta = _array(cfg["delta"], "delta")
    if len(delta) != len(lam):
        raise ConfigError(f"delta has {len(delta)} entries, lambda has {len(lam)}")
    for name, arr in (("lambda", lam), ("delta", delta)):
        if np.isnan(arr).any():
            raise ConfigError(f"{name} must define every index from 0")
    e_grid = _uniform(cfg["e_grid"], "e_grid", default_upper=LOG8 - delta[-1])
    h_grid = _uniform(cfg["h_grid"], "h_grid") if "h_grid" in cfg else None
    zeta = _array(cfg["zeta"], "zeta") if "zeta" in cfg else None
    if zeta is not None and np.isnan(zeta).any():
        raise ConfigError("zeta must define every index from 0")
    delta_hat = None
    if "delta_hat" in cfg:
        pair = cfg["delta_hat"]
        if not isinstance(pair, list) or len(pair) != 2:
            raise ConfigError("delta_hat must be [lo, hi]")
        delta_hat = (number(pair[0]), number(pair[1]))
    script_h = None
    if "script_h" in cfg:
        sh = cfg["script_h"]
        try:
            script_h = AffineMax(number(sh["floor"]), number(sh["offset"]))
        except (KeyError, TypeError):
            raise ConfigError("script_h must be {floor, offset}") from None
    mu_table = None
    if "mu_table" in cfg:
        mu_table = _array(cfg["mu_table"], "mu_table")
        if len(mu_table) != len(lam) or np.isnan(mu_table[1:]).any():
            raise ConfigError("mu_table must define cells 1..m")
    if script_h is None and mu_table is None:
        raise ConfigError("schedule needs script_h or mu_table")
    return GridSchedule(lam=lam, delta=delta, e_grid=e_grid, h_grid=h_grid, zeta=zeta,
                        delta_hat=delta_hat, script_h=script_h, mu_table=mu_table)


# ------------------------------------------------------------------ validation


def _strictly_increasing(a):
    return bool(np.all(np.diff(a) > 0.0))


def _in_open_ik(k, x):
    return LOG3 < x < i_k_upper(k)


def validate_schedule(s, k):
    """Named structural checks of a schedule; failures are reported, not raised."""
    checks = []

    def check(name, ok, detail=""):
        checks.append(StructuralCheck(name, bool(ok), detail))

    lam, delta = s.lam, s.delta
    check("lambda_increasing", _strictly_increasing(lam))
    check("lambda0_ge_log7", lam[0] >= LOG7, f"lambda_0 = {lam[0]!r}")
    check("lambda_m_eq_log8", abs(lam[-1] - LOG8) <= ENDPOINT_TOL, f"lambda_m = {lam[-1]!r}")
    check("delta_nonincreasing", bool(np.all(np.diff(delta) <= 0.0)))
    check("delta_m_gt_f1_lambda0", delta[-1] > f_n(1, lam[0]),
          f"delta_m = {delta[-1]!r}, f1(lambda_0) = {f_n(1, lam[0])!r}")

    e = s.e_grid
    check("e_grid_increasing", _strictly_increasing(e))
    check("e_grid_endpoints", e[0] == 0.0 and abs(e[-1] - (LOG8 - delta[-1])) <= ENDPOINT_TOL,
          f"E_n = {e[-1]!r}")

    if s.h_grid is not None:
        check("h_grid_increasing", s.h_grid[0] == 0.0 and _strictly_increasing(s.h_grid))
    if s.zeta is not None:
        check("zeta_increasing", _strictly_increasing(s.zeta))

    if s.delta_hat is not None:
        lo, hi = s.delta_hat
        check("delta_hat_order", lo < LOG8 / 4.0 < hi < LOG3, f"delta_hat = ({lo!r}, {hi!r})")
        check("delta_hat0_lt_vsg_bound", lo < min(0.7, 0.5 * math.log(k - 1.0)))
        check("delta_range", delta[0] == hi and delta[-1] >= lo,
              f"delta_0 = {delta[0]!r}, delta_m = {delta[-1]!r}")
        if s.zeta is not None:
            check("zeta_endpoints", s.zeta[0] == lo and s.zeta[-1] == hi,
                  f"zeta_0 = {s.zeta[0]!r}, zeta_q = {s.zeta[-1]!r}")
        if s.script_h is not None:
            # Weakly increasing, so the range over (lo, hi] lies in [H(lo), H(hi)].
            h_lo, h_hi = s.script_h(lo), s.script_h(hi)
            check("scriptH_range_in_Ik", _in_open_ik(k, h_lo) and _in_open_ik(k, h_hi),
                  f"range within [{h_lo!r}, {h_hi!r}]")

    if s.mu_table is not None:
        mu = s.mu_table[1:]
        check("mu_table_in_Ik", all(_in_open_ik(k, x) for x in mu))
    return checks
