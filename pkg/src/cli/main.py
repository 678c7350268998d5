"""
命令行入口
子命令：solve / ramsey / grid / bound / bound-finite / grading / threshold / table
"""

import argparse
import sys
from typing import List, Optional

from loguru import logger

from ..backends.solver_client import SolverClient
from ..config import AppConfig, load_config
from ..core import bounds as bounds_mod
from ..core import gradings as gradings_mod
from ..core.grid import GridRamsey, enumerate_geometric_lines, enumerate_lines, enumerate_spaces
from ..core.solver import PatternSolver
from ..core.tables import TableStore, dumps, load
from ..exceptions import ProscribeError
from ..models.records import Quantity
from ..models.sets import NaturalSet, PatternFamily
from ..report.formatter import TextFormatter

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_USAGE = 2

FAMILIES = ["ap", "gp-int", "gp-rat", "square", "pp-gp", "friable-gp3"]
GRADINGS = ["gp", "brown", "prime-power", "square", "friable"]


class UsageError(Exception):
    """参数组合不合法"""


class Workbench:
    """一次命令执行所需的求解器、网格计算器与数值表"""

    def __init__(self, config: AppConfig, table_override: Optional[str] = None, oracle: bool = False):
        self.config = config
        self.client = SolverClient.from_config(config.solver, provider="exhaustive" if oracle else None)
        self.solver = PatternSolver(self.client)
        self.grid = GridRamsey(self.client.solve)
        self.table_override = table_override
        self._store: Optional[TableStore] = None

    @property
    def store(self) -> TableStore:
        if self._store is None:
            table = self.config.table
            self._store = TableStore.open(
                table.resolve_path(self.table_override),
                bundled_path=table.bundled_path,
                grid=self.grid,
                solver=self.solver,
                verify_max_vertices=table.verify_max_vertices,
            )
        return self._store


def _require(args, *names: str) -> None:
    missing = [f"--{name.replace('_', '-')}" for name in names if getattr(args, name, None) is None]
    if missing:
        raise UsageError(f"{args.command} 需要参数: {' '.join(missing)}")


def _family(args) -> PatternFamily:
    name = args.family
    if name == "ap":
        return PatternFamily.ap(args.k)
    if name == "gp-int":
        return PatternFamily.gp_int(args.k)
    if name == "gp-rat":
        return PatternFamily.gp_rat(args.k)
    if name == "square":
        return PatternFamily.geom_square()
    if name == "pp-gp":
        _require(args, "p")
        return PatternFamily.gp_prime_power(args.p, args.k)
    if name == "friable-gp3":
        _require(args, "d")
        return PatternFamily.gp_friable3(args.d)
    raise UsageError(f"不支持的禁用族: {name}")


# ----------------------------------------------------------------------
# 子命令


def cmd_solve(args, bench: Workbench, fmt: TextFormatter) -> List[str]:
    _require(args, "n")
    family = _family(args)
    if args.n < 1:
        raise UsageError("--n 需 ≥ 1")
    if args.family == "ap":
        result = bench.solver.r_result(args.k, args.n)
    else:
        result = bench.solver.g_value_of(family, NaturalSet.interval(args.n))
    return fmt.solve(family.label, args.n, result, witness=args.witness)


def _quantity(args) -> Quantity:
    _require(args, "d")
    if args.which == "dhj":
        return Quantity.dhj(args.d, args.k)
    if args.which == "moser":
        return Quantity.moser(args.d, args.k)
    _require(args, "s")
    return Quantity.space(args.d, args.s, args.k)


def cmd_ramsey(args, bench: Workbench, fmt: TextFormatter) -> List[str]:
    record = bench.store.get_or_compute(_quantity(args), verify=args.recompute)
    return fmt.ramsey(record)


def cmd_grid(args, bench: Workbench, fmt: TextFormatter) -> List[str]:
    _require(args, "d")
    if args.object == "line":
        sets = enumerate_lines(args.k, args.d)
    elif args.object == "geoline":
        sets = enumerate_geometric_lines(args.k, args.d)
    else:
        _require(args, "s")
        sets = enumerate_spaces(args.k, args.d, args.s)
    lines = fmt.count(f"{args.object}s", len(sets))
    if not args.count_only:
        lines += fmt.point_sets(sets)
    return lines


def cmd_bound(args, bench: Workbench, fmt: TextFormatter) -> List[str]:
    digits = args.digits if args.digits is not None else bench.config.bounds.digits
    cfg = bench.config.bounds
    if args.which == "gp-int":
        report = bounds_mod.gp_int_asymptotic(args.k, bench.store.table, args.depth, digits)
    elif args.which == "gp-rat":
        report = bounds_mod.gp_rat_asymptotic(args.k, bench.store.table, args.depth, digits)
    elif args.which == "square":
        depth = args.depth if args.depth is not None else cfg.square_depth
        report = bounds_mod.square_asymptotic(bench.store.table, depth, digits)
    elif args.which == "prime-power":
        _require(args, "p")
        depth = args.depth if args.depth is not None else cfg.prime_power_depth
        r_values = bench.store.values(Quantity.r_ap(args.k, n) for n in range(depth + 2))
        report = bounds_mod.prime_power_asymptotic(args.p, args.k, r_values, depth, digits)
    else:
        _require(args, "d")
        depth = args.depth if args.depth is not None else cfg.mcnew_depth
        R = bench.store.values(Quantity.friable_prefix(args.d, i) for i in range(depth + 1))
        report = bounds_mod.mcnew_asymptotic(args.d, R, depth, digits)
    return fmt.bound(report, terms=args.terms)


def _build_grading(args):
    _require(args, "n")
    if args.grading == "gp":
        return gradings_mod.build_gp_grading(args.n, args.k, args.max_level)
    if args.grading == "brown":
        return gradings_mod.build_brown_grading(args.n, args.k)
    if args.grading == "prime-power":
        _require(args, "p")
        return gradings_mod.build_prime_power_grading(args.n, args.p, args.k)
    if args.grading == "square":
        return gradings_mod.build_square_grading(args.n)
    _require(args, "d")
    return gradings_mod.build_friable_grading(args.n, args.d)


def _grading_family(args) -> PatternFamily:
    """分级对应的默认禁用族，gp/brown 可用 --family 改为 gp-rat"""
    if args.family is not None:
        return _family(args)
    if args.grading in ("gp", "brown"):
        return PatternFamily.gp_int(args.k)
    if args.grading == "prime-power":
        return PatternFamily.gp_prime_power(args.p, args.k)
    if args.grading == "square":
        return PatternFamily.geom_square()
    return PatternFamily.gp_friable3(args.d)


def cmd_bound_finite(args, bench: Workbench, fmt: TextFormatter) -> List[str]:
    grading = _build_grading(args)
    family = _grading_family(args)
    digits = args.digits if args.digits is not None else bench.config.bounds.digits
    report = bounds_mod.finite_theorem_bound(grading, family, bench.solver, digits)
    lines = fmt.bound(report, terms=args.terms)
    if args.compare_exact:
        exact = bench.solver.g_value(family, args.n)
        lines += fmt.compare(exact, report)
    return lines


def cmd_grading(args, bench: Workbench, fmt: TextFormatter) -> List[str]:
    args.grading = args.build
    grading = _build_grading(args)
    report = None
    if args.verify or args.check_ramsey:
        family = _grading_family(args)
        report = gradings_mod.verify_grading(grading, family, check_ramsey=args.check_ramsey,
                                             solver=bench.solver)
    partition = None
    if report is None or all(report[c].passed for c in (1, 2, 3)):
        partition = gradings_mod.partition_from_grading(grading)
    return fmt.grading(grading, gradings_mod.level_sizes(grading), report, partition)


def cmd_threshold(args, bench: Workbench, fmt: TextFormatter) -> List[str]:
    result = bounds_mod.threshold_search(args.k, args.max_n, bench.solver)
    return fmt.threshold(result)


def cmd_table(args, bench: Workbench, fmt: TextFormatter) -> List[str]:
    store = bench.store
    if args.action == "export":
        if args.file is None:
            return dumps(store.table).rstrip("\n").split("\n")
        with open(args.file, 'w', encoding='utf-8') as f:
            f.write(dumps(store.table))
        return fmt.message("exported", len(store.table.records))
    if args.action == "import":
        _require(args, "file")
        added = store.merge(load(args.file))
        return fmt.message("imported", added)
    entries = store.verify_all()
    return fmt.verify(entries)


COMMANDS = {
    "solve": cmd_solve,
    "ramsey": cmd_ramsey,
    "grid": cmd_grid,
    "bound": cmd_bound,
    "bound-finite": cmd_bound_finite,
    "grading": cmd_grading,
    "threshold": cmd_threshold,
    "table": cmd_table,
}


# ----------------------------------------------------------------------
# 参数解析


def build_parser() -> argparse.ArgumentParser:
    """构造参数解析器"""
    parser = argparse.ArgumentParser(prog="proscribe", description="禁用子集极值计算工具")
    parser.add_argument("--table", help="数值表文件（覆盖 PROSCRIBE_TABLE）")
    parser.add_argument("--threads", type=int, help="并行进程数，0 为机器核数")
    parser.add_argument("--budget", type=int, help="分支定界节点预算")
    parser.add_argument("--machine", action="store_true", help="输出 key=value 行")
    parser.add_argument("--config", help="配置文件路径")
    parser.add_argument("--verbose", action="store_true", help="输出调试日志")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="求 G_𝒜([n])")
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--p", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--witness", action="store_true", help="输出见证集")
    p.add_argument("--oracle", action="store_true", help="使用穷举验证器")

    p = sub.add_parser("ramsey", help="c_{d,k} / c'_{d,k} / c_{d,s,k}")
    p.add_argument("--which", choices=["dhj", "moser", "space"], required=True)
    p.add_argument("--d", type=int)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--s", type=int)
    p.add_argument("--recompute", action="store_true", help="忽略已存精确值重新计算并比对")
    p.add_argument("--oracle", action="store_true")

    p = sub.add_parser("grid", help="枚举 [k]^d 中的线与子空间")
    p.add_argument("--object", choices=["line", "geoline", "space"], required=True)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--d", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--count-only", action="store_true")

    p = sub.add_parser("bound", help="渐近上界")
    p.add_argument("--which", choices=["gp-int", "gp-rat", "square", "prime-power", "mcnew"], required=True)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--p", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--depth", type=int)
    p.add_argument("--digits", type=int)
    p.add_argument("--terms", action="store_true", help="输出逐项分解")

    p = sub.add_parser("bound-finite", help="有限 n 的分级上界")
    p.add_argument("--grading", choices=GRADINGS, required=True)
    p.add_argument("--family", choices=FAMILIES)
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--p", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--max-level", type=int)
    p.add_argument("--digits", type=int)
    p.add_argument("--terms", action="store_true")
    p.add_argument("--compare-exact", action="store_true", help="同时求精确值对比")
    p.add_argument("--oracle", action="store_true")

    p = sub.add_parser("grading", help="构造并检查分级")
    p.add_argument("--build", choices=GRADINGS, required=True)
    p.add_argument("--family", choices=FAMILIES)
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--p", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--max-level", type=int)
    p.add_argument("--verify", action="store_true")
    p.add_argument("--check-ramsey", action="store_true")

    p = sub.add_parser("threshold", help="最小 n 使 r_k(n) < n − ⌊n/k⌋")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--max-n", type=int, required=True)

    p = sub.add_parser("table", help="数值表管理")
    p.add_argument("action", choices=["export", "import", "verify"])
    p.add_argument("--file")

    return parser


def _configure(args) -> AppConfig:
    config = load_config(args.config)
    if args.threads is not None:
        config.solver.threads = args.threads
    if args.budget is not None:
        config.solver.node_budget = args.budget
    level = "DEBUG" if args.verbose else config.log_level
    logger.remove()
    logger.add(sys.stderr, level=level, format="{time:HH:mm:ss} | {level: <7} | {message}")
    return config


def run(argv: Optional[List[str]] = None) -> int:
    """
    执行一条命令

    Args:
        argv: 参数列表，缺省取 sys.argv[1:]

    Returns:
        退出码：0 成功，1 计算错误，2 用法错误
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE

    try:
        config = _configure(args)
        bench = Workbench(config, args.table, oracle=getattr(args, "oracle", False))
        fmt = TextFormatter(machine=args.machine)
        lines = COMMANDS[args.command](args, bench, fmt)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (ProscribeError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR

    for line in lines:
        print(line)
    return EXIT_OK


def main() -> None:
    """主函数"""
    sys.exit(run())


if __name__ == "__main__":
    main()
