"""
Semicontinuity scans of ε, ω and D_ξ over grids of weights in the plane.

Each grid point is evaluated exactly. Boundary points of the grid are
limits of the grid points above them; along those sequences the chosen
invariant is tested for lower semicontinuity, and the failure for ε is
recorded as a certified counterexample.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .certificates import BOUND_PASS, EXACT_PASS, FAIL, Certificate
from .exceptions import ParseError
from .rational import parse_rational
from .serializers import dumps, rows_to_csv, write_text
from .toric import (
    dxi_on_ray,
    lattice_multiplier,
    seshadri_limit_term,
    seshadri_model,
    waldschmidt,
)

logger = logging.getLogger(__name__)

INVARIANTS = ('eps', 'omega', 'dxi')
CSV_HEADER = ('w1', 'w2', 'epsilon', 'omega', 'dxi_u1', 'dxi_u2', 'm_used', 'certificate')
TRIVIAL = 'TRIVIAL'

OMEGA_DEGREE_CAP = 3
CONTINUITY_REFINEMENTS = 4

Point = Tuple[Fraction, Fraction]


def _axis(spec: str) -> List[Fraction]:
    parts = spec.split(':')
    if len(parts) != 3:
        raise ParseError(f"Grid axis must be lo:hi:step, got '{spec}'")
    lo, hi, step = (parse_rational(p) for p in parts)
    if step <= 0:
        raise ParseError(f"Grid step must be positive, got {step}")
    if lo < 0 or hi < lo:
        raise ParseError(f"Grid range must satisfy 0 <= lo <= hi, got {lo}:{hi}")
    values = []
    x = lo
    while x <= hi:
        values.append(x)
        x += step
    return values


@dataclass(frozen=True)
class Grid:
    """
    Grid points in input order, plus explicit approach sequences.

    ``approaches`` maps a limit point to the sequence approaching it; for
    rectangular grids they are derived from the boundary points.
    """

    points: Tuple[Point, ...]
    approaches: Tuple[Tuple[Point, Tuple[Point, ...]], ...] = ()
    spec: str = ''


def parse_grid(spec: str) -> Grid:
    """
    "lo:hi:step" for both axes, "lo:hi:step,lo:hi:step" per axis, or
    "family:N" for the weights (1, 1/k), k = 1..N, approaching (1, 0).
    """
    spec = spec.strip()
    if spec.startswith('family:'):
        try:
            count = int(spec.split(':', 1)[1])
        except ValueError:
            raise ParseError(f"Family size must be an integer in '{spec}'")
        if count < 1:
            raise ParseError(f"Family size must be positive, got {count}")
        points = tuple((Fraction(1), Fraction(1, k)) for k in range(1, count + 1))
        return Grid(points, (((Fraction(1), Fraction(0)), points),), spec)
    axes = spec.split(',')
    if len(axes) == 1:
        axes = axes * 2
    if len(axes) != 2:
        raise ParseError(f"Expected one or two grid axes, got '{spec}'")
    xs, ys = _axis(axes[0]), _axis(axes[1])
    points = tuple((x, y) for x in xs for y in ys)
    return Grid(points, _boundary_approaches(points), spec)


def _boundary_approaches(points: Sequence[Point]) -> Tuple:
    approaches = []
    for point in points:
        x, y = point
        if (x == 0) == (y == 0):
            continue
        if y == 0:
            tail = tuple(sorted((p for p in points if p[0] == x and p[1] > 0), key=lambda p: -p[1]))
        else:
            tail = tuple(sorted((p for p in points if p[1] == y and p[0] > 0), key=lambda p: -p[0]))
        if tail:
            approaches.append((point, tail))
    return tuple(approaches)


@dataclass(frozen=True)
class ScanRow:
    w1: Fraction
    w2: Fraction
    epsilon: Optional[Fraction]
    omega: Optional[Fraction]
    dxi_u1: Optional[Fraction]
    dxi_u2: Optional[Fraction]
    m_used: Optional[int]
    certificate: str

    def as_tuple(self) -> Tuple:
        return (self.w1, self.w2, self.epsilon, self.omega, self.dxi_u1, self.dxi_u2,
                self.m_used, self.certificate)


def evaluate_point(point: Point) -> ScanRow:
    """
    ε by the single-model route, ω by monomial enumeration, and the D_ξ
    coefficients at the two axis divisors. Interior points are also
    certified against the ideal route at the lattice multiplier.
    """
    w1, w2 = point
    if w1 == 0 and w2 == 0:
        return ScanRow(w1, w2, None, None, None, None, None, TRIVIAL)
    epsilon = seshadri_model(point)
    omega = waldschmidt(point, OMEGA_DEGREE_CAP).value
    m_used = lattice_multiplier(point)
    ok = epsilon <= omega
    if w1 > 0 and w2 > 0:
        ok = ok and seshadri_limit_term(point, m_used) == epsilon
    return ScanRow(
        w1, w2, epsilon, omega,
        dxi_on_ray(point, (1, 0)), dxi_on_ray(point, (0, 1)),
        m_used, EXACT_PASS if ok else FAIL,
    )


def _invariant_value(invariant: str, point: Point, limit: Point) -> Fraction:
    if invariant == 'eps':
        return seshadri_model(point)
    if invariant == 'omega':
        return waldschmidt(point, OMEGA_DEGREE_CAP).value
    ray = (1, 0) if limit[1] == 0 else (0, 1)
    return dxi_on_ray(point, ray)


def _semicontinuity_certificate(invariant: str, limit: Point, tail: Sequence[Point]) -> Certificate:
    at_limit = _invariant_value(invariant, limit, limit)
    values = [_invariant_value(invariant, p, limit) for p in tail]
    tail_min = min(values)
    witness = {
        'invariant': invariant,
        'limit_point': limit,
        'value_at_limit': at_limit,
        'tail_points': list(tail),
        'tail_values': values,
        'tail_min': tail_min,
    }
    if at_limit <= tail_min:
        return Certificate('lower_semicontinuity', EXACT_PASS, witness, at_limit)
    if invariant == 'eps':
        logger.info(f"ε jumps at {limit}: {at_limit} above the approaching values {tail_min}")
        return Certificate('epsilon_not_lower_semicontinuous', EXACT_PASS, witness, at_limit)
    return Certificate('lower_semicontinuity', FAIL, witness)


def _continuity_certificate(invariant: str, points: Sequence[Point]) -> Optional[Certificate]:
    """
    ε = min(w) and ω = max(w) move by at most δ under a shift δ(1, 1), so
    on interior sequences p + δ_j (1, 1) they are continuous.
    """
    interior = [p for p in points if p[0] > 0 and p[1] > 0]
    if invariant not in ('eps', 'omega') or not interior:
        return None
    step = min(min(p) for p in interior)
    worst = Fraction(0)
    for p in interior:
        base = _invariant_value(invariant, p, p)
        for j in range(1, CONTINUITY_REFINEMENTS + 1):
            delta = step / 2 ** j
            moved = _invariant_value(invariant, (p[0] + delta, p[1] + delta), p)
            worst = max(worst, abs(moved - base) / delta)
    status = BOUND_PASS if worst <= 1 else FAIL
    return Certificate(
        'interior_continuity', status,
        {'invariant': invariant, 'points': len(interior), 'worst_ratio': worst},
    )


@dataclass(frozen=True)
class ScanReport:
    invariant: str
    rows: Tuple[ScanRow, ...]
    certificates: Tuple[Certificate, ...] = field(default_factory=tuple)
    spec: str = ''

    @property
    def passed(self) -> bool:
        rows_ok = all(row.certificate != FAIL for row in self.rows)
        return rows_ok and all(c.passed for c in self.certificates)

    def to_csv(self) -> str:
        return rows_to_csv(CSV_HEADER, (row.as_tuple() for row in self.rows))

    def summary(self) -> Dict:
        return {
            'grid': self.spec,
            'invariant': self.invariant,
            'rows': len(self.rows),
            'passed': self.passed,
            'certificates': [c.to_json() for c in self.certificates],
        }


def semicontinuity_scan(grid: Union[Grid, Iterable[Point]], invariant: str) -> ScanReport:
    if invariant not in INVARIANTS:
        raise ParseError(f"Unknown invariant '{invariant}', expected one of {INVARIANTS}")
    if not isinstance(grid, Grid):
        points = tuple((Fraction(x), Fraction(y)) for x, y in grid)
        grid = Grid(points, _boundary_approaches(points))
    if not grid.points:
        raise ParseError("Empty grid")

    rows = tuple(evaluate_point(p) for p in grid.points)
    certificates = [
        _semicontinuity_certificate(invariant, limit, tail) for limit, tail in grid.approaches
    ]
    continuity = _continuity_certificate(invariant, grid.points)
    if continuity is not None:
        certificates.append(continuity)
    logger.info(f"Scanned {len(rows)} points for {invariant}: {len(certificates)} certificates")
    return ScanReport(invariant, rows, tuple(certificates), grid.spec)


def summary_path(out: Union[str, Path]) -> Path:
    out = Path(out)
    return out.with_name(out.stem + '.summary.json')


def scan_to_csv(grid_spec: str, invariant: str, out: Union[str, Path]) -> ScanReport:
    """Run the scan, write the CSV to ``out`` and the summary JSON beside it."""
    report = semicontinuity_scan(parse_grid(grid_spec), invariant)
    write_text(out, report.to_csv())
    write_text(summary_path(out), dumps(report.summary()) + '\n')
    return report
