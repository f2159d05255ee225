"""
Verification suites: sweeps over k, m, p and q that call the services and
collect one report item per check, rendered as canonical JSON or TSV.
"""
import json
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

from services.ahss_service import first_lock, imj_exponent, second_lock
from services.chern_service import build_alpha, solve_gamma, solve_simple_chern
from services.mahowald_service import (
    fm_exists,
    jones_discrepancies,
    mahowald_line,
    mahowald_lower_bound,
    main_theorem_bound,
    minv_degree,
)
from services.ro_service import ROElem, euler_reduce, gamma_reduce, mod2A_feasible
from services.steenrod_service import (
    ThomTwist,
    cell_exists,
    periodicity_check,
    sq1_sq1_vanishes,
    sq_nonzero,
    zk_middle_structure,
    ZkMiddle,
)
from services.stems_service import relation_check, relation_citation, relation_names, table_is_consistent
from services.valuation_service import bm_coeff, verify_appendix_a
from utils.errors import ParameterError
from utils.exactarith import bm_multinomial_oracle, rat_to_str, val2

LOGGER = logging.getLogger(__name__)

DEFAULT_KMAX = 16
DEFAULT_MMAX = 63
DEFAULT_PMAX = 64
DEFAULT_QMAX = 256
DEFAULT_JOBS = 1

SUITES = ("appendix-a", "chern", "steenrod", "ro", "ahss", "mahowald", "stems")

_LEMMA_CITATIONS = {
    "nu_b4k": "ν(b_4k) = -4k",
    "range_bound": "ν(b_m) >= -(4k-2) for 1 <= m <= 4k-1",
    "nu_b4k_minus_2": "ν(b_(4k-2)) = ν(k) - (4k-3)",
    "nu_b4k_minus_3": "ν(b_(4k-3)) = ν(k) - (4k-3)",
    "nu_b4k_minus_4": "ν(b_(4k-4)) = ν(k) - (4k-4)",
    "nu_b4k2_minus_b4k3": "ν(b_(4k-2) - b_(4k-3)), split by the parity of k",
    "low_range_bound": "ν(b_m) >= ν(k) - (4k-5) for m <= 4k-5",
}


@dataclass(frozen=True)
class SuiteParams:
    kmax: int = DEFAULT_KMAX
    mmax: int = DEFAULT_MMAX
    pmax: int = DEFAULT_PMAX
    qmax: int = DEFAULT_QMAX
    deg_bound: int = None
    jobs: int = DEFAULT_JOBS

    def __post_init__(self):
        for name in ("kmax", "mmax", "pmax", "qmax"):
            if getattr(self, name) < 0:
                raise ParameterError(f"--{name} must be non-negative, got {getattr(self, name)}")
        if self.deg_bound is not None and self.deg_bound < 0:
            raise ParameterError(f"--deg-bound must be non-negative, got {self.deg_bound}")
        if self.jobs < 1:
            raise ParameterError(f"--jobs must be at least 1, got {self.jobs}")

    def to_dict(self):
        """Serialized parameters; the job count never reaches the report."""
        params = asdict(self)
        params.pop("jobs")
        if params["deg_bound"] is None:
            params["deg_bound"] = "4k+8"
        return params


@dataclass
class SuiteReport:
    suite: str
    params: dict
    items: list
    wall_time: float = field(default=0.0, compare=False)

    @property
    def pass_count(self):
        return sum(1 for item in self.items if item["pass"])

    @property
    def fail_count(self):
        return len(self.items) - self.pass_count

    @property
    def passed(self):
        return self.fail_count == 0

    def first_failure(self):
        return next((item for item in self.items if not item["pass"]), None)

    def to_dict(self):
        return {
            "suite": self.suite,
            "params": self.params,
            "items": self.items,
            "passCount": self.pass_count,
            "failCount": self.fail_count,
            "pass": self.passed,
        }


def _item(key, expected, computed, passed, citation):
    return {"key": key, "expected": expected, "computed": computed, "pass": bool(passed), "citation": citation}


def _appendix_a_items(k):
    report = verify_appendix_a(k)
    return [
        _item(f"appendix-a k={k} {row['lemma']}", row["expected"], row["computed"], row["pass"],
              _LEMMA_CITATIONS[row["lemma"]])
        for row in report.to_rows()
    ]


def _oracle_items(k):
    top = min(24, 4 * k)
    mismatch = next((m for m in range(top + 1) if bm_multinomial_oracle(k, m) != bm_coeff(k, m)), None)
    computed = "match" if mismatch is None else f"mismatch at m={mismatch}"
    return [_item(f"oracle k={k} m<={top}", "match", computed, mismatch is None,
                  "multinomial expansion of (ln(1+z)/z)^(4k+1)")]


def _chern_items(k):
    _, d = solve_simple_chern(k)
    items = [_item(f"chern k={k} simple nu(d)", -2, val2(d).to_json(), val2(d) == -2,
                   "ch(φ) = 2^(4k-2) + d x^(4k) with ν(d) = -2")]
    if k < 2:
        return items
    gamma = solve_gamma(k)
    items.append(_item(f"chern k={k} gamma nu(c_8k-8)", -1, val2(gamma.c8k8).to_json(), val2(gamma.c8k8) == -1,
                       "ν(c_(8k-8)) = -1"))
    items.append(_item(f"chern k={k} gamma nu(c_8k-4)", ">= 0", val2(gamma.c8k4).to_json(), val2(gamma.c8k4) >= 0,
                       "ν(c_(8k-4)) >= 0"))
    if k % 2 == 0:
        alpha = build_alpha(k)
        expected = 2 ** (4 * k - 4 - int(val2(k)))
        items.append(_item(f"chern k={k} alpha constant", str(expected), rat_to_str(alpha[0]),
                           alpha.support() == [0] and alpha[0] == expected,
                           "ch(c(α_k)) = 2^(4k-4-ν(k)) for k even"))
    else:
        for unit in (1, 3, 5, 7):
            alpha = build_alpha(k, unit)
            nu_d = val2(alpha[4 * k - 2])
            items.append(_item(f"chern k={k} alpha e={unit} nu(d)", 0, nu_d.to_json(), nu_d == 0,
                               "ν(d) = 0 for k odd"))
    return items


def _steenrod_items(task):
    m, jmax = task
    cells = 0
    for j in range(-m, jmax + 1):
        if not cell_exists(m, j):
            continue
        cells += 1
        sq_nonzero(1, m, j)
        sq_nonzero(2, m, j)
        if not sq1_sq1_vanishes(m, j):
            return [_item(f"steenrod m={m}", "Sq1Sq1 = 0", f"nonzero at j={j}", False, "Adem relation Sq1Sq1 = 0")]
    twist = ThomTwist.for_m(m)
    twist_ok = (twist.w0, twist.w1, twist.w2) == twist.closed_form()
    return [
        _item(f"steenrod m={m} tables", "residue tables", f"{cells} cells match", True,
              "Sq^1 and Sq^2 residue tables of X(m)"),
        _item(f"steenrod m={m} twist", list(twist.closed_form()), [twist.w0, twist.w1, twist.w2], twist_ok,
              "w(-mλ) = (1 + q + q^2)^m"),
    ]


def _periodicity_items(window):
    result = periodicity_check(window)
    return [_item(f"steenrod periodicity window={window}", "4-periodic", result.violation or "4-periodic",
                  result.ok, "attaching data is 4-periodic in m and j")]


def _zk_items(k):
    structure = zk_middle_structure(k)
    expected = ZkMiddle.SPLIT if k % 2 == 0 else ZkMiddle.ETA_CUBE_CONE
    return [_item(f"steenrod Z({k}) middle", expected.value, structure.value, structure is expected,
                  "p_1/2 · ν attaching map of the quaternionic Thom truncation")]


def _ro_items(task):
    k, deg_bound = task
    euler = euler_reduce(k)
    expected = 2 ** (4 * k)
    items = [_item(f"ro k={k} euler", str(expected), str(euler.coefficient),
                   euler.coefficient.integer == expected and not euler.coefficient.a_bits,
                   "γ(D)^(8k+2) = 2^(4k) (b_(-8D))^k γ(D)^2")]
    deg = 4 * k + 8 if deg_bound is None else deg_bound
    result = mod2A_feasible(k, deg)
    if k == 0:
        items.append(_item(f"ro k=0 mod2A deg={deg}", "feasible", "feasible" if result.feasible else "infeasible",
                           result.feasible, "(A+4)^0 = 1"))
    else:
        items.append(_item(f"ro k={k} mod2A deg={deg}", 2 * k, result.witness_index,
                           not result.feasible and result.witness_index == 2 * k,
                           "coefficients of A^0 and A^(2k) of (A+4)^(2k) P(A)"))
    return items


def _ro_reduction_items():
    a, b, d = ROElem.gen("A"), ROElem.gen("B"), ROElem.gen("D")
    reduced = gamma_reduce(a - 2 * b - 2 * d + 2)
    return [_item("ro reduce A-2B-2D+2", "A + 4", str(reduced), str(reduced) == "A + 4",
                  "(D+1)γ(D) = 2Aγ(D) = Bγ(D) = 0")]


def _ahss_items(k):
    verdict = second_lock(k)
    items = [
        _item(f"ahss k={k} second lock", {"exponent": 4 * k - 1, "targetDim": 8 * k - 1},
              {"exponent": verdict.exponent, "targetDim": verdict.target_dim},
              verdict.exponent == 4 * k - 1 and verdict.target_dim == 8 * k - 1,
              "2^(4k-1)[-1] supports a differential to the (8k-1)-cell"),
        _item(f"ahss k={k} imj exponent", 4 + int(val2(k)), imj_exponent(k), imj_exponent(k) == 4 + int(val2(k)),
              "π_(8k-1) j'' = Z/2^(4+ν(k))"),
    ]
    if k >= 2:
        first = first_lock(k)
        if k % 2 == 0:
            expected = {"kind": "PermanentCycle", "exponent": 4 * k - 4 - int(val2(k))}
            computed = {"kind": first.kind, "exponent": first.exponent}
        else:
            expected = {"kind": "NontrivialDifferential", "targetClass": "{P^{k-1}h_1^3}"}
            computed = {"kind": first.kind, "targetClass": first.target_class}
        items.append(_item(f"ahss k={k} first lock", expected, computed, expected == computed,
                           "first lock of X(8k+3)"))
    return items


def _keystone_items(p):
    bound = main_theorem_bound(p)
    for q in range(1, 4 * p + 9):
        if fm_exists(p, q).exists != (q >= bound):
            return [_item(f"mahowald p={p} keystone", bound, f"mismatch at q={q}", False,
                          "fm_exists(p, q) iff q >= main bound")]
    return [_item(f"mahowald p={p} keystone", bound, bound, True, "fm_exists(p, q) iff q >= main bound")]


def _minv_items(q):
    value = minv_degree(q)
    return [_item(f"mahowald q={q} minv", value, value, True, "16-periodic Mahowald-invariant table")]


def _mline_items(m):
    value = mahowald_line(m)
    passed = True
    if m >= 4:
        passed = value >= mahowald_lower_bound(m)
    if m % 8 == 3 and m >= 11:
        passed = passed and value <= m - 5
    return [_item(f"mahowald L({m})", "staircase bounds", value, passed, "explicit values of 𝔏")]


def _jones_items(pmax):
    found = jones_discrepancies(pmax)
    expected = [p for p in range(2, pmax + 1) if p % 8 == 4]
    return [_item(f"mahowald jones p<={pmax}", expected, found, found == expected,
                  "main bound differs from the Jones conjecture at p ≡ 4 mod 8")]


def _stems_items(name):
    if name == "table_is_consistent":
        return [_item("stems table", True, table_is_consistent(), table_is_consistent(), "stored stem table")]
    holds = relation_check(name)
    return [_item(f"stems {name}", True, holds, holds, relation_citation(name))]


def _tasks(name, params):
    krange = range(1, params.kmax + 1)
    if name == "appendix-a":
        return ([(_appendix_a_items, k) for k in krange]
                + [(_oracle_items, k) for k in range(1, min(params.kmax, 6) + 1)])
    if name == "chern":
        return [(_chern_items, k) for k in krange]
    if name == "steenrod":
        jmax = params.mmax + 1
        return ([(_steenrod_items, (m, jmax)) for m in range(params.mmax + 1)]
                + [(_periodicity_items, max(8, params.mmax + 1))]
                + [(_zk_items, k) for k in krange])
    if name == "ro":
        return [(_ro_items, (k, params.deg_bound)) for k in range(params.kmax + 1)] + [(_ro_reduction_items, None)]
    if name == "ahss":
        return [(_ahss_items, k) for k in krange]
    if name == "mahowald":
        return ([(_mline_items, m) for m in range(params.qmax + 1)]
                + [(_keystone_items, p) for p in range(2, params.pmax + 1)]
                + [(_minv_items, q) for q in range(4, params.qmax + 1)]
                + [(_jones_items, params.pmax)])
    if name == "stems":
        return [(_stems_items, relation) for relation in relation_names()] + [(_stems_items, "table_is_consistent")]
    raise ParameterError(f"Unknown suite: {name}")


def _run_task(task):
    fn, arg = task
    try:
        return fn(arg) if arg is not None else fn()
    except Exception as e:
        LOGGER.error("%s(%r) failed: %s", fn.__name__, arg, e)
        return [{
            "key": f"{fn.__name__.strip('_')} {arg}",
            "expected": None,
            "computed": None,
            "pass": False,
            "citation": "",
            "error": f"Failed to run {fn.__name__.strip('_')}: {str(e)}",
        }]


def run_suite(name, params=None):
    """
    Runs one verification suite, or all of them.

    Args:
        name (str): One of SUITES or "all"
        params (SuiteParams): Sweep ranges and job count

    Returns:
        SuiteReport: Items in ascending parameter order, independent of the job count
    """
    params = params or SuiteParams()
    names = SUITES if name == "all" else (name,)
    if name != "all" and name not in SUITES:
        raise ParameterError(f"Unknown suite: {name}")
    tasks = [task for suite in names for task in _tasks(suite, params)]

    LOGGER.info("Running suite %s: %d tasks on %d job(s)", name, len(tasks), params.jobs)
    start = time.perf_counter()
    if params.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=params.jobs) as executor:
            chunks = list(executor.map(_run_task, tasks))
    else:
        chunks = [_run_task(task) for task in tasks]
    items = [item for chunk in chunks for item in chunk]

    report = SuiteReport(name, params.to_dict(), items, time.perf_counter() - start)
    LOGGER.info("Suite %s finished in %.2fs: %d passed, %d failed",
                name, report.wall_time, report.pass_count, report.fail_count)
    return report


def canonical_json(obj):
    """Deterministic JSON: sorted keys, no whitespace."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def render_json(report):
    return canonical_json(report.to_dict()) + "\n"


def _cell(value):
    return value if isinstance(value, str) else canonical_json(value)


def render_tsv(report):
    """One row per item under a header; non-string values are written as canonical JSON."""
    columns = ("key", "expected", "computed", "pass", "citation")
    lines = ["\t".join(columns)]
    for item in report.items:
        lines.append("\t".join(_cell(item.get(column)) for column in columns))
    return "\n".join(lines) + "\n"
