from cubelab.environment.constants import VERDICT, WITNESS, TRACE, NOTES, DEFECTS
from cubelab.environment.utils import jsonify


class CheckReport:
    """
    Outcome of a property check.

    A false verdict always carries a witness. ``trace`` lists the sub-checks performed, ``notes`` carries remarks
    such as skipped element-level assertions and ``defects`` records disagreements between checkers that must agree.
    """

    def __init__(self, verdict, witness=None, trace=None, notes=None, defects=None):
        self.verdict = bool(verdict)
        self.witness = witness
        self.trace = [] if trace is None else list(trace)
        self.notes = [] if notes is None else list(notes)
        self.defects = [] if defects is None else list(defects)

        if not self.verdict and self.witness is None:
            raise ValueError("A failing CheckReport requires a witness")

    def __bool__(self):
        return self.verdict

    def __repr__(self):
        return "CheckReport(verdict={}, witness={})".format(self.verdict, self.witness)

    @classmethod
    def passed(cls, trace=None, notes=None):
        return cls(True, trace=trace, notes=notes)

    @classmethod
    def failed(cls, witness, trace=None, notes=None):
        return cls(False, witness=witness, trace=trace, notes=notes)

    def add_defect(self, description):
        self.defects.append(description)

    def to_json(self):
        return jsonify({
            VERDICT: self.verdict,
            WITNESS: self.witness,
            TRACE: self.trace,
            NOTES: self.notes,
            DEFECTS: self.defects,
        })

    @classmethod
    def from_json(cls, data):
        return cls(data[VERDICT], witness=data.get(WITNESS), trace=data.get(TRACE),
                   notes=data.get(NOTES), defects=data.get(DEFECTS))
