"""
呈示文件解析 - 箭图声明、关系、容许序与选项的行式输入语言

语法：
    vertices v1 v2 ... vn
    arrow a: v1 -> v2
    rel <项> (+|-) <项> ...        项 = [系数*]箭头词，系数形如 3/2
    order lenlex a > b > c         （或 lenlex-right）
    cap 12
    field q | fp:<素数>
    # 注释到行尾
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple
import logging
import re

from sympy.polys.domains.domain import Domain
from sympy.polys.polyerrors import NotInvertible

from models.path_algebra_model import Element, coefficient, field_mode, make_field
from models.quiver_model import AdmissibleOrder, OrderKind, Path, Quiver
from utils.error_handler import PresentationError

logger = logging.getLogger(__name__)

NAME_PATTERN = re.compile(r"^[A-Za-z_][A-Za-z0-9_']*$")
ARROW_PATTERN = re.compile(r"^arrow\s+(?P<name>[^:\s]+)\s*:\s*(?P<source>\S+)\s*->\s*(?P<target>\S+)\s*$")
COEFFICIENT_PATTERN = re.compile(r"^\d+(/\d+)?$")


@dataclass(frozen=True)
class Presentation:
    """箭图、关系列表、声明的容许序以及选项"""
    quiver: Quiver
    relations: Tuple[Element, ...]
    orders: Tuple[AdmissibleOrder, ...] = ()
    cap: Optional[int] = None
    field: Optional[Domain] = None

    @property
    def primary_order(self) -> AdmissibleOrder:
        return self.orders[0] if self.orders else AdmissibleOrder.default(self.quiver)

    def longest_relation(self) -> int:
        return max((x.max_length() for x in self.relations), default=0)


def _strip_comment(line: str) -> str:
    return line.split('#', 1)[0].rstrip()


def parse_order(text: str, quiver: Quiver, line: Optional[int] = None, column: int = 1) -> AdmissibleOrder:
    """'lenlex a > b > c' 或 'lenlex-right ...'；省略优先级时使用声明顺序"""
    text = text.strip()
    if not text:
        raise PresentationError("缺少容许序声明", line, column)
    parts = text.split(None, 1)
    kinds = {kind.value: kind for kind in OrderKind}
    if parts[0] not in kinds:
        raise PresentationError(f"未知的序类型 {parts[0]!r}（可用 lenlex / lenlex-right）", line, column)
    kind = kinds[parts[0]]
    if len(parts) == 1 or not parts[1].strip():
        return AdmissibleOrder.default(quiver, kind)

    names = [name.strip() for name in parts[1].split('>')]
    seen = set()
    precedence = []
    for name in names:
        if not name:
            raise PresentationError("优先级列表中有空项", line, column)
        if not quiver.has_arrow(name):
            raise PresentationError(f"未知的箭头 {name!r}", line, column)
        if name in seen:
            raise PresentationError(f"优先级中重复的箭头 {name!r}", line, column)
        seen.add(name)
        precedence.append(quiver.arrow_id(name))
    missing = [a.name for a in quiver.arrows if a.name not in seen]
    if missing:
        raise PresentationError(f"优先级未覆盖箭头 {missing}", line, column)
    return AdmissibleOrder(kind, tuple(precedence))


def _parse_word(word: str, quiver: Quiver, line: int, column: int) -> Path:
    tokens = [token.strip() for token in word.split('*')]
    if any(not token for token in tokens):
        raise PresentationError("箭头词中有空因子", line, column)
    if len(tokens) == 1 and quiver.has_vertex(tokens[0]) and not quiver.has_arrow(tokens[0]):
        return quiver.vertex_path(quiver.vertex_id(tokens[0]))

    arrow_ids = []
    for token in tokens:
        if quiver.has_arrow(token):
            arrow_ids.append(quiver.arrow_id(token))
        elif quiver.single_letter_arrows and all(quiver.has_arrow(ch) for ch in token):
            arrow_ids.extend(quiver.arrow_id(ch) for ch in token)
        else:
            raise PresentationError(f"未知的箭头 {token!r}", line, column)
    try:
        return quiver.path(arrow_ids)
    except ValueError:
        raise PresentationError(f"箭头词 {word.strip()!r} 不可复合", line, column)


def _split_terms(body: str) -> List[Tuple[str, str, int]]:
    """按顶层 +/- 切分，返回 (符号, 项文本, 列偏移)"""
    terms = []
    sign, start = '+', 0
    for i, ch in enumerate(body):
        if ch in '+-':
            if terms or body[start:i].strip():
                terms.append((sign, body[start:i], start))
            sign, start = ch, i + 1
    terms.append((sign, body[start:], start))
    return terms


def parse_relation(body: str, quiver: Quiver, field: Domain, line: int = 1, column: int = 1) -> Element:
    """有理系数的箭头词线性组合"""
    total = Element.zero(field)
    for sign, text, offset in _split_terms(body):
        col = column + offset
        stripped = text.strip()
        if not stripped:
            raise PresentationError("缺少项", line, col)
        factors = stripped.split('*', 1)
        value = Fraction(1)
        word = stripped
        if COEFFICIENT_PATTERN.match(factors[0].strip()):
            if len(factors) == 1:
                raise PresentationError(f"常数项 {stripped!r} 不在 KQ 的路径中", line, col)
            value = factors[0].strip()
            word = factors[1]
        try:
            c = coefficient(field, -Fraction(value) if sign == '-' else Fraction(value))
        except (ZeroDivisionError, ValueError, NotInvertible):
            raise PresentationError(f"系数 {factors[0].strip()} 在当前域中无定义", line, col)
        path = _parse_word(word, quiver, line, col)
        total = total + Element.monomial(path, field, c)
    return total


def parse_presentation(text: str, field_override: Optional[str] = None,
                       default_field: str = 'q') -> Presentation:
    """解析呈示文本；错误带行列位置。域的优先级：field_override > field 指令 > default_field"""
    lines = [(number, _strip_comment(raw)) for number, raw in enumerate(text.splitlines(), start=1)]
    lines = [(number, line) for number, line in lines if line.strip()]

    vertex_names: List[str] = []
    arrows: List[Tuple[str, str, str]] = []
    cap: Optional[int] = None
    mode: Optional[str] = None
    deferred: List[Tuple[int, str, str, int]] = []

    for number, line in lines:
        stripped = line.strip()
        column = len(line) - len(line.lstrip()) + 1
        keyword, _, rest = stripped.partition(' ')
        if keyword == 'vertices':
            for name in rest.split():
                if not NAME_PATTERN.match(name):
                    raise PresentationError(f"非法的顶点名 {name!r}", number, column)
                if name in vertex_names:
                    raise PresentationError(f"重复的顶点 {name!r}", number, column)
                vertex_names.append(name)
        elif keyword == 'arrow':
            match = ARROW_PATTERN.match(stripped)
            if not match:
                raise PresentationError("箭头声明应为 'arrow a: v1 -> v2'", number, column)
            name = match.group('name')
            if not NAME_PATTERN.match(name):
                raise PresentationError(f"非法的箭头名 {name!r}", number, column)
            if name in vertex_names or any(name == a[0] for a in arrows):
                raise PresentationError(f"重复的名称 {name!r}", number, column)
            for end in ('source', 'target'):
                if match.group(end) not in vertex_names:
                    raise PresentationError(f"未知的顶点 {match.group(end)!r}", number, column)
            arrows.append((name, match.group('source'), match.group('target')))
        elif keyword in ('rel', 'order'):
            deferred.append((number, keyword, rest, column + len(keyword) + 1))
        elif keyword == 'cap':
            try:
                cap = int(rest.strip())
            except ValueError:
                raise PresentationError(f"无效的上限 {rest.strip()!r}", number, column)
            if cap < 1:
                raise PresentationError("上限必须为正整数", number, column)
        elif keyword == 'field':
            mode = rest.strip()
        else:
            raise PresentationError(f"未知的指令 {keyword!r}", number, column)

    if not vertex_names:
        raise PresentationError("缺少 'vertices' 声明", 1, 1)
    quiver = Quiver.build(vertex_names, arrows)
    try:
        field = make_field(field_override or mode or default_field)
    except ValueError as e:
        raise PresentationError(str(e))

    relations: List[Element] = []
    orders: List[AdmissibleOrder] = []
    for number, keyword, rest, column in deferred:
        if keyword == 'order':
            orders.append(parse_order(rest, quiver, number, column))
            continue
        relation = parse_relation(rest, quiver, field, number, column)
        if relation.is_zero():
            logger.warning(f"第 {number} 行的关系化简为 0，已忽略")
            continue
        relations.append(relation)

    logger.info(f"解析完成: {quiver.vertex_count} 个顶点, {quiver.arrow_count} 个箭头, {len(relations)} 条关系")
    return Presentation(quiver, tuple(relations), tuple(orders), cap, field)


def format_presentation(presentation: Presentation) -> str:
    """parse_presentation 的逆：输出可再次解析的文本"""
    quiver = presentation.quiver
    order = presentation.primary_order
    lines = ['vertices ' + ' '.join(quiver.vertex_names)]
    for arrow in quiver.arrows:
        lines.append(f"arrow {arrow.name}: {quiver.vertex_names[arrow.source]} -> "
                     f"{quiver.vertex_names[arrow.target]}")
    for relation in presentation.relations:
        lines.append('rel ' + relation.format(quiver, order))
    for declared in presentation.orders:
        lines.append('order ' + declared.describe(quiver))
    if presentation.cap is not None:
        lines.append(f"cap {presentation.cap}")
    if presentation.field is not None and field_mode(presentation.field) != 'q':
        lines.append(f"field {field_mode(presentation.field)}")
    return '\n'.join(lines) + '\n'
