"""
Certificates: the outcome of one exactly checked claim.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, Optional

EXACT_PASS = 'EXACT_PASS'
BOUND_PASS = 'BOUND_PASS'
FAIL = 'FAIL'

STATUS_CHOICES = [
    (EXACT_PASS, 'Exact pass'),
    (BOUND_PASS, 'Bound pass'),
    (FAIL, 'Fail'),
]


@dataclass(frozen=True)
class Certificate:
    """
    A claim id, its status and the witness data: the inputs and both sides
    of the tested relation. EXACT_PASS carries the common value.
    """

    claim: str
    status: str
    witness: Dict[str, Any] = field(default_factory=dict)
    value: Optional[Any] = None

    @property
    def passed(self) -> bool:
        return self.status != FAIL

    @classmethod
    def equality(cls, claim: str, left, right, **witness) -> 'Certificate':
        if left == right:
            return cls(claim, EXACT_PASS, dict(witness, left=left, right=right), left)
        return cls(claim, FAIL, dict(witness, left=left, right=right))

    @classmethod
    def inequality(cls, claim: str, lower, upper, **witness) -> 'Certificate':
        """BOUND_PASS when lower <= upper."""
        status = BOUND_PASS if lower <= upper else FAIL
        return cls(claim, status, dict(witness, lower=lower, upper=upper))

    @classmethod
    def holds(cls, claim: str, ok: bool, **witness) -> 'Certificate':
        return cls(claim, EXACT_PASS if ok else FAIL, dict(witness))

    def to_json(self) -> Dict[str, Any]:
        from .serializers import to_jsonable

        data = {'claim': self.claim, 'status': self.status, 'witness': to_jsonable(self.witness)}
        if self.value is not None:
            data['value'] = to_jsonable(self.value)
        return data
