"""Exception types shared by the toolkit."""


class MetricError(ValueError):
    """Base class for every error raised by ghdist."""


class AxiomViolation(MetricError):
    """A candidate matrix fails one of the metric axioms.

    ``kind`` is one of ``shape``, ``diagonal``, ``nonnegativity``,
    ``symmetry``, ``positivity``, ``triangle``; ``witness`` holds the
    offending indices.  For ``triangle`` the witness ``(i, j, k)`` means
    ``d[i][k] > d[i][j] + d[j][k]``.
    """

    def __init__(self, kind, witness=(), detail=""):
        self.kind = kind
        self.witness = tuple(witness)
        self.detail = detail
        msg = f"{kind} axiom violated at {self.witness}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)

    def to_dict(self):
        return {"error": "AxiomViolation", "kind": self.kind,
                "witness": list(self.witness), "detail": self.detail}


class DegenerateScale(MetricError):
    pass


class SizeLimit(MetricError):
    pass


class SpaceMismatch(MetricError):
    pass


class SizeMismatch(MetricError):
    pass


class DomainError(MetricError):
    pass


class FiberDiameter(MetricError):
    pass
