from cubelab.environment.checks.processors import CheckSkipped
from cubelab.environment.report import CheckReport


class CheckManager:
    """
    Runs a list of check processors on an instance and collects their reports by processor name.

    Processors are given as configs {"name": str, "class": CheckProcessor subclass, "config": dict}.
    """

    def __init__(self, processors):
        self.processors = []
        for p in processors:
            name = p["name"]
            cls = p["class"]
            config = dict(p.get("config") or {})
            config["name"] = name
            self.processors.append(cls(**config))
        self.reports = {}
        self.skipped = {}

    def process(self, instance):
        self.reports = {}
        self.skipped = {}
        for processor in self.processors:
            try:
                self.reports[processor.name] = processor.process(instance)
            except CheckSkipped as e:
                self.skipped[processor.name] = str(e)
        return self.reports

    def verdicts(self):
        return {name: report.verdict for name, report in self.reports.items()}

    def unanimous(self):
        return len(set(self.verdicts().values())) <= 1

    def generate_report(self):
        """
        One report for the whole run: the shared verdict when unanimous, false with a defect otherwise.
        """
        verdicts = self.verdicts()
        trace = [{"check": name, "verdict": verdict} for name, verdict in verdicts.items()]
        notes = ["{} skipped: {}".format(name, reason) for name, reason in self.skipped.items()]
        defects = []
        for name, report in self.reports.items():
            notes.extend("{}: {}".format(name, note) for note in report.notes)
            defects.extend("{}: {}".format(name, defect) for defect in report.defects)
        if not self.unanimous():
            defects.append("checks disagree: {}".format(
                ", ".join("{}={}".format(name, verdict) for name, verdict in verdicts.items())))

        failing = [name for name, verdict in verdicts.items() if not verdict]
        if failing:
            witness = {"verdicts": verdicts, "first_failing": failing[0], "witness": self.reports[failing[0]].witness}
            report = CheckReport.failed(witness, trace=trace, notes=notes)
        else:
            report = CheckReport.passed(trace=trace, notes=notes)
        for defect in defects:
            report.add_defect(defect)
        return report
