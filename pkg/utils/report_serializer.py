"""
报告序列化 - 固定键顺序的 JSON 输出，系数一律以 "p/q" 字符串表示
"""
from typing import Any, Dict, Optional
import json

from models.groebner_model import GroebnerData, tip
from models.heredity_model import HeredityChainReport
from models.path_algebra_model import format_coefficient
from models.quiver_model import Quiver


def _dumps(payload: Dict[str, Any]) -> str:
    return json.dumps(payload, indent=2, ensure_ascii=False)


def _gb_summary(quiver: Quiver, data: Optional[GroebnerData]) -> Dict[str, Any]:
    if data is None:
        return {'tips': [], 'dim': None, 'length_bound': None}
    return {
        'tips': [quiver.format_path(t) for t in data.tips.sorted(data.order)],
        'dim': len(data.normal_basis),
        'length_bound': data.length_bound,
    }


def report_payload(report: HeredityChainReport) -> Dict[str, Any]:
    quiver = report.quiver
    steps = [
        {
            'vertex': step.vertex,
            'ideal_dim': step.ideal_dim,
            'tensor_dim': step.tensor_dim,
            'checks': {'L2': step.l_squared_ok, 'LJL': step.ljl_ok, 'proj': step.projective_ok},
        }
        for step in report.steps
    ]
    return {
        'verdict': report.verdict.value,
        'ordering': report.ordering_names(),
        'steps': steps,
        'gb': _gb_summary(quiver, report.data),
        'order_used': report.order_used.describe(quiver) if report.order_used else None,
    }


def emit_json(report: HeredityChainReport) -> str:
    """qh / verify 报告"""
    return _dumps(report_payload(report))


def gb_payload(data: GroebnerData) -> Dict[str, Any]:
    quiver = data.quiver
    basis = []
    for g in data.basis:
        element = g.element
        basis.append({
            'tip': quiver.format_path(tip(element, data.order)),
            'terms': [
                {'path': quiver.format_path(p), 'coef': format_coefficient(data.field, c)}
                for p, c in element.sorted_terms(data.order)
            ],
        })
    payload = {'order': data.order.describe(quiver), 'basis': basis}
    payload.update(_gb_summary(quiver, data))
    payload['normal_basis'] = [quiver.format_path(p) for p in data.normal_basis]
    return payload


def emit_gb_json(data: GroebnerData) -> str:
    """gb 命令：约化 Gröbner 基、首项、维数、长度界与正规基"""
    return _dumps(gb_payload(data))


def emit_dimension_json(data: GroebnerData) -> str:
    return _dumps({'dim': len(data.normal_basis), 'length_bound': data.length_bound})


def emit_quotient_json(presentation_text: str, removed, dimension: int) -> str:
    return _dumps({'removed': list(removed), 'dim': dimension, 'presentation': presentation_text})


def emit_error_json(error_info: Dict[str, Any]) -> str:
    return _dumps({'error': error_info['message'], 'type': error_info['type'],
                   'exit_code': error_info['exit_code']})
