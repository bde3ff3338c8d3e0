"""
主程序入口 - 路径代数商的拟遗传判定工具
"""
import sys
import argparse
import logging

from config.qhd_config import QhdConfig
from controllers.qh_controller import COMMANDS, CommandOptions, QuasiHereditaryController
from utils.error_handler import EXIT_INPUT_ERROR, ErrorHandler
from utils.logger_util import setup_logger
from views.console_view import ConsoleView

logger = logging.getLogger(__name__)


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("必须为正整数")
    return value


def parse_arguments(argv=None):
    """解析命令行参数"""
    parser = argparse.ArgumentParser(description='路径代数商 KQ/I 的拟遗传判定工具')
    parser.add_argument('command', choices=COMMANDS,
                        help='gb | dim | qh | verify | quotient')
    parser.add_argument('file', help="呈示文件路径，'-' 表示标准输入")
    parser.add_argument('--monomial', action='store_true',
                        help='qh: 仅对单项式关系做顶点消去判定')
    parser.add_argument('--ordering', help='verify: 逗号分隔的顶点序列，如 v3,v1,v2')
    parser.add_argument('--remove', help='quotient: 逗号分隔的待删顶点')
    parser.add_argument('--order', help='容许序，如 "lenlex a > b > c"')
    parser.add_argument('--orders', help='分号分隔的容许序列表（qh 依次尝试）')
    parser.add_argument('--cap', type=_positive_int, help='补全与正规基枚举的长度上限')
    parser.add_argument('--json', action='store_true', help='输出 JSON 报告')
    parser.add_argument('--field', help='系数域: q 或 fp:<素数>')
    parser.add_argument('--log-level', choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'],
                        help='日志级别（默认取 LOG_LEVEL，未设置时为 WARNING）')
    parser.add_argument('--log-file', help='同时写入日志文件')

    return parser.parse_args(argv)


def main(argv=None) -> int:
    """主程序入口，返回进程退出码"""
    controller = None

    try:
        try:
            args = parse_arguments(argv)
        except SystemExit as e:
            # argparse 的用法错误归入输入错误
            return 0 if e.code == 0 else EXIT_INPUT_ERROR

        config = QhdConfig()
        setup_logger(args.log_level or config.log_level, args.log_file or config.log_file)
        if not config.validate_config():
            ConsoleView.show_warning(f"配置无效: {config}")

        controller = QuasiHereditaryController(config)
        options = CommandOptions(
            order=args.order,
            orders=args.orders,
            cap=args.cap,
            monomial=args.monomial,
            ordering=args.ordering,
            remove=args.remove,
            as_json=args.json,
            field=args.field,
        )
        return controller.execute(args.command, args.file, options)

    except KeyboardInterrupt:
        logger.info("程序被用户中断")
        return EXIT_INPUT_ERROR

    except Exception as e:
        error_info = ErrorHandler(__name__).handle_error(e, "主程序")
        ConsoleView.show_error(f"未预期的错误: {e}")
        return error_info['exit_code']

    finally:
        if controller:
            controller.cleanup()


if __name__ == "__main__":
    sys.exit(main())
