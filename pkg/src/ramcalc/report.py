"""Pass/fail reports for the verification routines."""
from dataclasses import dataclass, field


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""
    witness: object = None

    def line(self):
        tag = "PASS" if self.passed else "FAIL"
        return f"[{tag}] {self.name}" + (f": {self.detail}" if self.detail else "")


@dataclass
class Report:
    title: str
    checks: list = field(default_factory=list)
    facts: dict = field(default_factory=dict)

    def add(self, name, passed, detail="", witness=None):
        self.checks.append(Check(name, bool(passed), detail, witness))
        return passed

    def extend(self, other):
        self.checks.extend(other.checks)
        self.facts.update(other.facts)

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.passed]

    def lines(self):
        out = [f"{self.title}: {'PASS' if self.passed else 'FAIL'}"]
        out += [f"  {k} = {v}" for k, v in self.facts.items()]
        out += ["  " + c.line() for c in self.checks]
        return out

    def __str__(self):
        return "\n".join(self.lines())
