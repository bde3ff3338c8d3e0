"""
控制台视图 - 负责判定报告、Gröbner 基与商代数呈示的显示
"""
import sys
from typing import Any, Optional

import pandas as pd

from models.groebner_model import GroebnerData
from models.heredity_model import HeredityChainReport, Verdict
from utils.presentation_parser import format_presentation

VERDICT_LABELS = {
    Verdict.QUASI_HEREDITARY: "✅ 拟遗传 (quasi_hereditary)",
    Verdict.NOT_QUASI_HEREDITARY: "❌ 非拟遗传 (not_quasi_hereditary)",
    Verdict.UNKNOWN: "❓ 未能判定 (unknown)",
}


def _mark(flag: Optional[bool]) -> str:
    if flag is None:
        return '-'
    return '✓' if flag else '✗'


class ConsoleView:
    """控制台视图类"""

    @staticmethod
    def show_json(text: str):
        """机器可读输出"""
        print(text)

    @staticmethod
    def step_table(report: HeredityChainReport) -> pd.DataFrame:
        """每一步的理想维数、张量积维数与三项检查"""
        rows = [
            {
                '步骤': i + 1,
                '顶点': step.vertex,
                'dim L': step.ideal_dim,
                'dim Λe⊗eΛ': '-' if step.tensor_dim is None else step.tensor_dim,
                'L²=L': _mark(step.l_squared_ok),
                'LJL=0': _mark(step.ljl_ok),
                '投射': _mark(step.projective_ok),
                '商维数': '-' if step.quotient_dim is None else step.quotient_dim,
            }
            for i, step in enumerate(report.steps)
        ]
        return pd.DataFrame(rows)

    @staticmethod
    def show_report(report: HeredityChainReport):
        """显示判定报告"""
        quiver = report.quiver
        print("=" * 60)
        print(f"🔍 判定结果: {VERDICT_LABELS[report.verdict]}")
        print("=" * 60)
        if report.order_used is not None:
            print(f"容许序: {report.order_used.describe(quiver)}")
        if report.data is not None:
            tips = [quiver.format_path(t) for t in report.data.tips.sorted(report.data.order)]
            print(f"首项集 T: {{{', '.join(tips)}}}")
            print(f"dim Λ = {len(report.data.normal_basis)}")

        elimination = report.ordering
        chain = ', '.join(report.ordering_names())
        if elimination.succeeded:
            print(f"🔗 遗传链顶点序列: ({chain})")
        else:
            print(f"⚠️  顶点序列在第 {elimination.failure_point + 1} 步受阻: ({chain})")
            if elimination.blocked:
                blocked = ', '.join(quiver.format_vertices(sorted(elimination.blocked)))
                print(f"   剩余顶点均真内部于首项: {blocked}")

        if report.steps:
            print("\n📊 逐步验证:")
            print("-" * 40)
            print(ConsoleView.step_table(report).to_string(index=False))
            for step in report.steps:
                if step.failed_condition:
                    print(f"❌ 顶点 {step.vertex} 未通过条件 {step.failed_condition}")

    @staticmethod
    def show_rejection(report: HeredityChainReport):
        """verify 拒绝给定顶点序列：verdict 仍为 unknown，退出码为 1"""
        failed = next((step for step in report.steps if not step.passed), None)
        where = f"顶点 {failed.vertex}" if failed else "序列"
        reason = failed.failed_condition if failed and failed.failed_condition else "遗传理想检查"
        print(f"🚫 遗传链被拒绝: {where} 未通过 {reason}（verdict=unknown，退出码 1）")

    @staticmethod
    def show_groebner_data(data: GroebnerData):
        """显示约化 Gröbner 基"""
        quiver = data.quiver
        print(f"📐 容许序: {data.order.describe(quiver)}")
        print(f"约化 Gröbner 基 ({len(data.basis)} 个元素):")
        for g in data.basis:
            print(f"  {g.element.format(quiver, data.order)}")
        tips = [quiver.format_path(t) for t in data.tips.sorted(data.order)]
        print(f"首项集 T: {{{', '.join(tips)}}}")
        print(f"|N| = {len(data.normal_basis)}, 长度界 = {data.length_bound}")

    @staticmethod
    def show_dimension(data: GroebnerData):
        print(f"dim Λ = {len(data.normal_basis)}")

    @staticmethod
    def show_quotient(text: str, dimension: int):
        """显示商代数的呈示"""
        print(f"📄 商代数呈示 (dim = {dimension}):")
        print(text, end='')

    @staticmethod
    def show_outcome(outcome: Any):
        """按命令类型渲染结果"""
        if outcome.error is not None:
            ConsoleView.show_error(outcome.error['message'])
        elif outcome.report is not None:
            ConsoleView.show_report(outcome.report)
            if outcome.command == 'verify' and not outcome.report.certified:
                ConsoleView.show_rejection(outcome.report)
        elif outcome.quotient is not None:
            ConsoleView.show_quotient(format_presentation(outcome.quotient), len(outcome.data.normal_basis))
        elif outcome.command == 'dim':
            ConsoleView.show_dimension(outcome.data)
        elif outcome.data is not None:
            ConsoleView.show_groebner_data(outcome.data)

    @staticmethod
    def show_warning(message: str):
        """显示警告信息"""
        print(f"⚠️  {message}", file=sys.stderr)

    @staticmethod
    def show_error(message: str):
        """显示错误信息"""
        print(f"❌ {message}", file=sys.stderr)
