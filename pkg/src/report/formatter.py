"""
文本格式化器
把计算结果转换为人类可读文本或 key=value 行
"""

from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence

from ..models.grading import Grading, GradingReport, PartitionView
from ..models.hypergraph import SolveResult
from ..models.records import BoundReport, RamseyRecord, ThresholdResult, VerifyEntry


def format_fraction(value: Fraction) -> str:
    """num/den，整数时省略分母"""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def format_set(values: Iterable[int]) -> str:
    return "{" + ", ".join(str(v) for v in values) + "}"


class TextFormatter:
    """结果格式化器"""

    def __init__(self, machine: bool = False):
        """
        初始化格式化器

        Args:
            machine: 输出 key=value 行
        """
        self.machine = machine

    def _pairs(self, pairs: Sequence) -> List[str]:
        return [f"{key}={value}" for key, value in pairs]

    # ------------------------------------------------------------------

    def solve(self, label: str, n: int, result: SolveResult, witness: bool = False) -> List[str]:
        """G_𝒜([n]) 的求解结果"""
        elements = result.witness_labels()
        if self.machine:
            pairs = [("family", label), ("n", n), ("G", result.optimum),
                     ("status", result.proof_status.value), ("nodes", result.nodes_explored)]
            if witness:
                pairs.append(("witness", ",".join(str(x) for x in elements)))
            return self._pairs(pairs)
        lines = [f"G = {result.optimum}"]
        if witness:
            lines.append(f"witness = {format_set(elements)}")
        lines.append(f"status = {result.proof_status.value}, nodes = {result.nodes_explored}")
        return lines

    def ramsey(self, record: RamseyRecord) -> List[str]:
        """c_{d,k} 等数量"""
        if self.machine:
            return self._pairs([
                ("quantity", record.quantity.label), ("value", record.value),
                ("status", record.status.value), ("provenance", record.provenance.value),
            ])
        return [f"{record.quantity.label} = {record.value}"]

    def count(self, name: str, value: int) -> List[str]:
        if self.machine:
            return self._pairs([(name, value)])
        return [f"{name} = {value}"]

    def point_sets(self, sets: Sequence) -> List[str]:
        """几何对象列表，每个一行"""
        lines = []
        for points in sets:
            words = sorted("".join(str(c) for c in w) for w in points)
            lines.append(" ".join(words))
        return lines

    def bound(self, report: BoundReport, terms: bool = False) -> List[str]:
        """渐近界：lead - remainder ≈ decimal (upper)"""
        value = format_fraction(report.value)
        if self.machine:
            pairs = [("name", report.name), ("value", value), ("lead", format_fraction(report.lead)),
                     ("remainder", format_fraction(report.remainder)), ("decimal", report.decimal),
                     ("direction", report.direction.lower()), ("depth", report.depth)]
            if report.integer_form is not None:
                pairs.append(("integer_form", report.integer_form))
            if terms:
                for t in report.terms:
                    pairs.extend([(f"term.{t.index}.coefficient", t.coefficient),
                                  (f"term.{t.index}.weight", format_fraction(t.weight)),
                                  (f"term.{t.index}.contribution", format_fraction(t.contribution))])
            return self._pairs(pairs)

        if report.remainder:
            head = f"{format_fraction(report.lead)} - {format_fraction(report.remainder)}"
        else:
            head = format_fraction(report.lead)
        lines = [f"{head} ≈ {report.decimal} ({report.direction.lower()})", f"= {value}"]
        if report.integer_form is not None:
            lines.append(f"G <= {report.integer_form}")
        if terms:
            for t in report.terms:
                lines.append(f"  [{t.index}] {t.coefficient} × {format_fraction(t.weight)} = {format_fraction(t.contribution)}")
        return lines

    def compare(self, exact: int, report: BoundReport) -> List[str]:
        """有限界与精确值对比"""
        sound = report.integer_form is None or exact <= report.integer_form
        if self.machine:
            return self._pairs([("exact", exact), ("sound", str(sound).lower())])
        return [f"exact G = {exact} ({'sound' if sound else 'VIOLATED'})"]

    def grading(self, grading: Grading, sizes: Sequence[int],
                report: Optional[GradingReport] = None,
                partition: Optional[PartitionView] = None) -> List[str]:
        """分级层大小与条件检查"""
        lines = []
        if self.machine:
            pairs = [("grading", grading.name), ("n", grading.n), ("kind", grading.kind.value),
                     ("parameter", grading.parameter),
                     ("level_sizes", ",".join(str(s) for s in sizes))]
            if partition is not None:
                pairs.append(("alpha", ",".join(str(a) for a in partition.alpha)))
            if report is not None:
                for condition, result in sorted(report.results.items()):
                    state = "na" if result.passed is None else str(result.passed).lower()
                    pairs.append((f"condition.{condition}", state))
            return self._pairs(pairs)

        lines.append(f"{grading.name} grading of [{grading.n}], {grading.kind.value} {grading.parameter}")
        lines.append(f"level sizes = {list(sizes)}")
        if partition is not None:
            lines.append(f"alpha = {partition.alpha}")
        if report is not None:
            for condition, result in sorted(report.results.items()):
                if result.passed is None:
                    state = "n/a"
                else:
                    state = "pass" if result.passed else f"FAIL {result.counterexample}"
                lines.append(f"({condition}) {state}")
        return lines

    def threshold(self, result: ThresholdResult) -> List[str]:
        if self.machine:
            pairs = [("k", result.k), ("n", result.n if result.found else "NOT_FOUND")]
            if result.found:
                pairs += [("r", result.r_value), ("easy", result.easy_bound)]
            return self._pairs(pairs)
        if not result.found:
            return ["NOT_FOUND"]
        return [f"n = {result.n}", f"r_{result.k}({result.n}) = {result.r_value} < {result.easy_bound}"]

    def verify(self, entries: Sequence[VerifyEntry]) -> List[str]:
        """数值表复核结果"""
        lines = []
        for entry in entries:
            d: Dict = entry.to_dict()
            if self.machine:
                lines.append(f"{d['quantity']}={d['status']}")
            else:
                computed = "" if entry.computed is None else f" (computed {entry.computed})"
                lines.append(f"{d['quantity']} = {d['stored']}: {d['status']}{computed}")
        return lines

    def message(self, key: str, value) -> List[str]:
        if self.machine:
            return self._pairs([(key, value)])
        return [f"{key}: {value}"]
