import json


class VerificationReport:
    """Outcome of a check: a verdict, the first failure found, and details.

    ``witness`` carries an optional in-memory payload (for example the
    comparison functor of a cone check); it is not serialized.
    """

    __slots__ = ("ok", "first_failure", "details", "witness")

    def __init__(self, ok, first_failure=None, details=None, witness=None):
        self.ok = bool(ok)
        self.first_failure = first_failure
        self.details = dict(details or {})
        self.witness = witness

    @classmethod
    def accept(cls, details=None, witness=None):
        return cls(True, None, details, witness)

    @classmethod
    def reject(cls, failure, details=None):
        return cls(False, failure, details)

    @property
    def verdict(self):
        return "accept" if self.ok else "reject"

    def __bool__(self):
        return self.ok

    def to_json(self):
        return {"verdict": self.verdict, "first_failure": self.first_failure,
                "details": self.details}

    def dumps(self):
        return json.dumps(self.to_json(), sort_keys=False, default=str)

    def __repr__(self):
        if self.ok:
            return "VerificationReport(accept)"
        return f"VerificationReport(reject: {self.first_failure})"
