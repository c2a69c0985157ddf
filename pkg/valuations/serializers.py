"""
JSON and CSV codecs for the library's types.

Rationals are always written as canonical "p/q" strings and JSON keys are
sorted, so equal inputs serialize to identical bytes.
"""

import csv
import io
import json
import logging
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Iterable, Sequence, Union

from .cluster import Cluster, ExceptionalDivisor
from .exceptions import ParseError, ValcalcError
from .polyhedra import MonomialIdeal
from .rational import format_rational, is_inf, parse_rational
from .surface import BDivisorTrace, SurfaceValuation

logger = logging.getLogger(__name__)


def to_jsonable(obj: Any) -> Any:
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, int):
        return obj
    if isinstance(obj, Fraction) or is_inf(obj):
        return format_rational(obj)
    if isinstance(obj, float):
        raise ParseError(f"Refusing to serialize inexact value {obj}")
    if isinstance(obj, MonomialIdeal):
        return obj.to_json()
    if isinstance(obj, Cluster):
        return cluster_to_json(obj)
    if isinstance(obj, SurfaceValuation):
        return valuation_to_json(obj)
    if isinstance(obj, ExceptionalDivisor):
        return {'basis': obj.basis.value, 'coeffs': [format_rational(c) for c in obj.coeffs]}
    if isinstance(obj, BDivisorTrace):
        return trace_to_json(obj)
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(x) for x in obj]
    if hasattr(obj, 'to_json'):
        return obj.to_json()
    raise ParseError(f"No JSON form for {type(obj).__name__}")


def dumps(obj: Any) -> str:
    return json.dumps(to_jsonable(obj), sort_keys=True, indent=2, ensure_ascii=False)


def load_json(path: Union[str, Path]) -> Any:
    try:
        with open(path, encoding='utf-8') as handle:
            return json.load(handle)
    except FileNotFoundError:
        raise ParseError(f"No such file: {path}")
    except json.JSONDecodeError as e:
        raise ParseError(f"Invalid JSON in {path}: {e}")


def cluster_to_json(cluster: Cluster) -> Dict[str, Any]:
    return {'points': [{'proximate_to': prox} for prox in cluster.to_lists()]}


def parse_cluster(doc: Any) -> Cluster:
    """{"points": [{"proximate_to": []}, {"proximate_to": [1]}, ...]} with 1-based indices."""
    try:
        points = doc['points']
        lists = [point['proximate_to'] for point in points]
    except (KeyError, TypeError) as e:
        raise ParseError(f"Malformed cluster document: {e}")
    if not isinstance(lists, list) or any(not isinstance(x, list) for x in lists):
        raise ParseError("Proximity entries must be lists of indices")
    return Cluster.from_lists(lists)


def valuation_to_json(v: SurfaceValuation) -> Dict[str, Any]:
    return {'cluster': cluster_to_json(v.cluster), 'normalization': format_rational(v.normalization)}


def parse_valuation(doc: Any) -> SurfaceValuation:
    """A valuation document, or a bare cluster document with normalization 1."""
    if isinstance(doc, dict) and 'cluster' in doc:
        normalization = parse_rational(doc.get('normalization', '1/1'))
        if is_inf(normalization):
            raise ParseError("The normalization must be finite")
        cluster = parse_cluster(doc['cluster'])
    else:
        normalization = Fraction(1)
        cluster = parse_cluster(doc)
    if normalization <= 0:
        raise ParseError(f"Normalization must be positive, got {normalization}")
    return SurfaceValuation.divisorial(cluster, normalization)


def parse_ideal(doc: Any) -> MonomialIdeal:
    """A JSON array of exponent vectors, optionally under a "generators" key."""
    if isinstance(doc, dict):
        doc = doc.get('generators')
    if not isinstance(doc, list) or not doc:
        raise ParseError("An ideal is a nonempty array of exponent vectors")
    try:
        gens = [tuple(int(x) for x in g) for g in doc]
    except (TypeError, ValueError) as e:
        raise ParseError(f"Malformed exponent vector: {e}")
    return MonomialIdeal.of(gens)


def parse_germ(doc: Any):
    """{"mults": [...], "residual": "0/1"} -> (mults, residual)."""
    try:
        mults = [int(x) for x in doc['mults']]
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError(f"Malformed curve germ: {e}")
    residual = parse_rational(doc.get('residual', '0/1'))
    return mults, residual


def trace_to_json(trace: BDivisorTrace) -> Dict[str, Any]:
    exceptional = trace.exceptional
    data = {
        'base_component': format_rational(trace.base_component),
        'total_transform': [format_rational(c) for c in exceptional.total_coords],
        'prime': [format_rational(c) for c in exceptional.prime_coords],
        'integral': trace.integral,
    }
    if trace.closed_form_agrees is not None:
        data['closed_form_agrees'] = trace.closed_form_agrees
    return data


def rows_to_csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(header)
    for row in rows:
        writer.writerow([_csv_cell(x) for x in row])
    return buffer.getvalue()


def write_text(path: Union[str, Path], text: str) -> None:
    try:
        Path(path).write_text(text, encoding='utf-8')
    except OSError as e:
        raise ValcalcError(f"Cannot write {path}: {e}")
    logger.info(f"Wrote {path}")


def _csv_cell(x: Any) -> str:
    if x is None:
        return ''
    if isinstance(x, (str, int)) and not isinstance(x, bool):
        return str(x)
    return format_rational(x)
