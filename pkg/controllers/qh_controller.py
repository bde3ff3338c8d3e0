"""
拟遗传判定控制器 - 负责命令分发、参数解析与退出码映射
"""
from dataclasses import dataclass
from typing import List, Optional
import sys

from config.qhd_config import QhdConfig
from models.fd_algebra_model import build_fd_algebra
from models.groebner_model import GroebnerData, complete, is_monomial
from models.heredity_model import (
    HeredityChainReport, Verdict, brute_force_qh, decide_monomial_qh, decide_qh, quotient_algebra,
    verify_chain,
)
from models.quiver_model import AdmissibleOrder, Quiver
from utils.error_handler import (
    EXIT_DECIDED, EXIT_REJECTED, EXIT_UNKNOWN,
    ErrorHandler, NotMonomialError, PreconditionFailed, PresentationError, QhdError,
)
from utils.logger_util import LoggerMixin
from utils.presentation_parser import Presentation, format_presentation, parse_order, parse_presentation
from utils import report_serializer
from views.console_view import ConsoleView

COMMANDS = ('gb', 'dim', 'qh', 'verify', 'quotient')

VERDICT_EXIT_CODES = {
    Verdict.QUASI_HEREDITARY: EXIT_DECIDED,
    Verdict.NOT_QUASI_HEREDITARY: EXIT_REJECTED,
    Verdict.UNKNOWN: EXIT_UNKNOWN,
}


@dataclass
class CommandOptions:
    """命令行选项（未给出时为 None）"""
    order: Optional[str] = None
    orders: Optional[str] = None
    cap: Optional[int] = None
    monomial: bool = False
    ordering: Optional[str] = None
    remove: Optional[str] = None
    as_json: bool = False
    field: Optional[str] = None


@dataclass
class CommandOutcome:
    """一次命令执行的结果：退出码、机器可读输出以及供视图渲染的对象"""
    command: str
    exit_code: int
    json_text: str
    report: Optional[HeredityChainReport] = None
    data: Optional[GroebnerData] = None
    quotient: Optional[Presentation] = None
    error: Optional[dict] = None


def _vertex_list(text: str, quiver: Quiver, flag: str) -> List[int]:
    names = [name.strip() for name in text.split(',') if name.strip()]
    if not names:
        raise PresentationError(f"{flag} 需要至少一个顶点")
    unknown = [name for name in names if not quiver.has_vertex(name)]
    if unknown:
        raise PresentationError(f"{flag} 中未知的顶点 {unknown}")
    if len(set(names)) != len(names):
        raise PresentationError(f"{flag} 中有重复顶点")
    return [quiver.vertex_id(name) for name in names]


class QuasiHereditaryController(LoggerMixin):
    """拟遗传判定控制器类"""

    def __init__(self, config: Optional[QhdConfig] = None):
        self.config = config or QhdConfig()
        self.view = ConsoleView()
        self.error_handler = ErrorHandler(__name__)

    def load_presentation(self, source: str, field: Optional[str] = None) -> Presentation:
        """读取呈示文件；'-' 表示标准输入"""
        if source == '-':
            text = sys.stdin.read()
        else:
            with open(source, encoding='utf-8') as handle:
                text = handle.read()
        return parse_presentation(text, field_override=field, default_field=self.config.field)

    def resolve_orders(self, presentation: Presentation, options: CommandOptions) -> List[AdmissibleOrder]:
        """--orders > --order > 文件中的 order 列表 > (主序, 反向优先级)"""
        quiver = presentation.quiver
        if options.orders:
            orders = [parse_order(text, quiver) for text in options.orders.split(';') if text.strip()]
            if not orders:
                raise PresentationError("--orders 为空")
            return orders
        if options.order:
            return [parse_order(options.order, quiver)]
        if len(presentation.orders) > 1:
            return list(presentation.orders)
        primary = presentation.primary_order
        fallback = primary.reversed()
        return [primary] if fallback == primary else [primary, fallback]

    def resolve_cap(self, presentation: Presentation, options: CommandOptions) -> int:
        if options.cap is not None:
            return options.cap
        if presentation.cap is not None:
            return presentation.cap
        return self.config.default_cap(presentation.longest_relation(), presentation.quiver.vertex_count)

    def run_command(self, command: str, presentation: Presentation,
                    options: Optional[CommandOptions] = None) -> CommandOutcome:
        """执行单条命令；领域错误在此转换为退出码 3"""
        options = options or CommandOptions()
        try:
            if command not in COMMANDS:
                raise PresentationError(f"未知的命令 {command!r}")
            handler = getattr(self, f"_run_{command}")
            return handler(presentation, options)
        except QhdError as e:
            error_info = self.error_handler.handle_error(e, f"命令 {command}")
            return CommandOutcome(command, error_info['exit_code'],
                                  report_serializer.emit_error_json(error_info), error=error_info)

    def _complete(self, presentation: Presentation, options: CommandOptions) -> GroebnerData:
        order = self.resolve_orders(presentation, options)[0]
        cap = self.resolve_cap(presentation, options)
        return complete(presentation.quiver, list(presentation.relations), order, cap,
                        field=presentation.field)

    def _run_gb(self, presentation: Presentation, options: CommandOptions) -> CommandOutcome:
        data = self._complete(presentation, options)
        return CommandOutcome('gb', EXIT_DECIDED, report_serializer.emit_gb_json(data), data=data)

    def _run_dim(self, presentation: Presentation, options: CommandOptions) -> CommandOutcome:
        data = self._complete(presentation, options)
        return CommandOutcome('dim', EXIT_DECIDED, report_serializer.emit_dimension_json(data), data=data)

    def _run_qh(self, presentation: Presentation, options: CommandOptions) -> CommandOutcome:
        quiver = presentation.quiver
        relations = list(presentation.relations)
        cap = self.resolve_cap(presentation, options)
        orders = self.resolve_orders(presentation, options)

        if options.monomial:
            if not is_monomial(relations):
                raise NotMonomialError("--monomial 要求全部关系都是单项式")
            data = complete(quiver, relations, orders[0], cap, field=presentation.field)
            report = decide_monomial_qh(quiver, data.tips, order=orders[0], field=data.field, cap=cap)
            if quiver.vertex_count <= self.config.brute_force_limit:
                exhaustive = brute_force_qh(quiver, data.tips, self.config.brute_force_limit)
                if exhaustive != (report.verdict is not Verdict.NOT_QUASI_HEREDITARY):
                    self.logger.error(f"顶点消去判定与穷举排列结果不一致: 穷举={exhaustive}")
        else:
            report = decide_qh(quiver, relations, orders, cap, field=presentation.field)

        self.logger.info(f"判定结果: {report.verdict.value}, 顶点序列 {report.ordering_names()}")
        return CommandOutcome('qh', VERDICT_EXIT_CODES[report.verdict],
                              report_serializer.emit_json(report), report=report, data=report.data)

    def _run_verify(self, presentation: Presentation, options: CommandOptions) -> CommandOutcome:
        if not options.ordering:
            raise PresentationError("verify 需要 --ordering")
        quiver = presentation.quiver
        ordering = _vertex_list(options.ordering, quiver, '--ordering')
        if len(ordering) != quiver.vertex_count:
            raise PresentationError("--ordering 必须列出全部顶点")
        data = self._complete(presentation, options)
        report = verify_chain(build_fd_algebra(quiver, data), ordering)
        # 被拒绝的序列 verdict 为 unknown，退出码为 EXIT_REJECTED
        exit_code = EXIT_DECIDED if report.certified else EXIT_REJECTED
        return CommandOutcome('verify', exit_code, report_serializer.emit_json(report),
                              report=report, data=data)

    def _run_quotient(self, presentation: Presentation, options: CommandOptions) -> CommandOutcome:
        if not options.remove:
            raise PresentationError("quotient 需要 --remove")
        quiver = presentation.quiver
        removed = _vertex_list(options.remove, quiver, '--remove')
        if len(removed) == quiver.vertex_count:
            raise PreconditionFailed("不能删去全部顶点")
        data = self._complete(presentation, options)
        quotient = quotient_algebra(build_fd_algebra(quiver, data), removed)
        result = Presentation(
            quiver=quotient.quiver,
            relations=tuple(quotient.data.elements()),
            orders=(quotient.data.order,),
            cap=presentation.cap,
            field=presentation.field,
        )
        text = format_presentation(result)
        payload = report_serializer.emit_quotient_json(text, quiver.format_vertices(removed), quotient.dimension)
        return CommandOutcome('quotient', EXIT_DECIDED, payload, data=quotient.data, quotient=result)

    def execute(self, command: str, source: str, options: CommandOptions) -> int:
        """读取输入、执行命令并渲染输出，返回进程退出码"""
        try:
            presentation = self.load_presentation(source, options.field or None)
        except (QhdError, OSError) as e:
            error_info = self.error_handler.handle_error(e, f"读取 {source}", log_traceback=False)
            outcome = CommandOutcome(command, error_info['exit_code'],
                                     report_serializer.emit_error_json(error_info), error=error_info)
        else:
            outcome = self.run_command(command, presentation, options)

        if options.as_json:
            self.view.show_json(outcome.json_text)
        else:
            self.view.show_outcome(outcome)
        return outcome.exit_code

    def cleanup(self):
        """输出错误统计"""
        stats = {k: v for k, v in self.error_handler.get_error_stats().items() if v}
        if stats:
            self.logger.debug(f"错误统计: {stats}")
