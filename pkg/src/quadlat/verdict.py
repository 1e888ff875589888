"""Three-valued answers with re-checkable evidence."""
from dataclasses import dataclass, field
from typing import Any, Optional

YES = "Yes"
NO = "No"
UNKNOWN = "Unknown"

CERTIFICATES = (
    "definite",
    "scaled-gram",
    "length-obstruction",
    "represented-values",
    "signature",
    "parity",
    "determinant",
    "disc-form",
    "exhaustive",
)


@dataclass(frozen=True)
class Verdict:
    state: str
    witness: Any = None
    certificate: Optional[str] = None
    bound: Optional[int] = None
    detail: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.state not in (YES, NO, UNKNOWN):
            raise ValueError(f"bad verdict state {self.state!r}")
        if self.state == NO and self.certificate not in CERTIFICATES:
            raise ValueError(f"No-verdict needs a known certificate, got {self.certificate!r}")

    @classmethod
    def yes(cls, witness, **detail):
        return cls(YES, witness=witness, detail=detail)

    @classmethod
    def no(cls, certificate, **detail):
        return cls(NO, certificate=certificate, detail=detail)

    @classmethod
    def unknown(cls, bound, **detail):
        return cls(UNKNOWN, bound=bound, detail=detail)

    @property
    def is_yes(self):
        return self.state == YES

    @property
    def is_no(self):
        return self.state == NO

    def __bool__(self):
        raise TypeError("Verdict is three-valued; test .is_yes / .is_no explicitly")
