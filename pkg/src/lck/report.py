"""Check reports: residual polynomials, boolean facts, nested parts and verdicts."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Sequence

from .kernel import ZERO, Poly, evaluation_oracle, find_witness, render


@dataclass
class Residual:
    """A polynomial that must vanish, kept as the list of terms it sums."""

    label: str
    terms: tuple
    key: tuple = ()

    @cached_property
    def value(self) -> Poly:
        return sum(self.terms, ZERO)

    @property
    def vanishes(self) -> bool:
        return self.value.is_zero()


@dataclass
class Fact:
    """A yes/no condition that is not a polynomial identity (e.g. unit determinant)."""

    name: str
    holds: bool
    detail: str = ""


@dataclass
class Report:
    check: str
    subject: str
    residuals: list = field(default_factory=list)
    facts: list = field(default_factory=list)
    parts: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    split: bool = False
    error: str | None = None

    def add(self, label: str, terms: Sequence[Poly], key: tuple = ()) -> None:
        self.residuals.append(Residual(label, tuple(terms), key))

    def add_vec(self, label: str, basis: Sequence[str], vecs: Sequence[Sequence[Poly]], key: tuple = ()) -> None:
        """One residual per output generator; ``vecs`` are summed term by term."""
        for k, name in enumerate(basis):
            self.add(f"{label}[{name}]", [v[k] for v in vecs], key)

    @property
    def own_ok(self) -> bool:
        return all(r.vanishes for r in self.residuals) and all(f.holds for f in self.facts)

    @property
    def passed(self) -> bool:
        return self.error is None and self.own_ok and all(p.passed for p in self.parts)

    def __bool__(self) -> bool:
        return self.passed

    @property
    def verdict(self) -> str:
        if self.error is not None:
            return "error"
        if self.passed:
            return "pass"
        if self.split and self.own_ok and any(p.passed for p in self.parts):
            return "split"
        return "fail"

    def walk(self, prefix: str = "") -> Iterator[tuple[str, Residual]]:
        for r in self.residuals:
            yield prefix + r.label, r
        for p in self.parts:
            yield from p.walk(prefix + p.check + "/")

    def failures(self) -> list[tuple[str, Residual]]:
        return [(lab, r) for lab, r in self.walk() if not r.vanishes]

    def failed_keys(self) -> set:
        return {r.key for _, r in self.failures()}

    def part(self, check: str) -> "Report":
        for p in self.parts:
            if p.check == check:
                return p
        raise KeyError(check)

    def all_facts(self, prefix: str = "") -> Iterator[tuple[str, Fact]]:
        for f in self.facts:
            yield prefix + f.name, f
        for p in self.parts:
            yield from p.all_facts(prefix + p.check + "/")

    def all_notes(self) -> list[str]:
        out = list(self.notes)
        for p in self.parts:
            for n in p.all_notes():
                if n not in out:
                    out.append(n)
        return out

    def oracle_agreement(self, count: int | None = None, seed: int = 0) -> tuple[int, int]:
        """Re-decide every residual by exact evaluation; returns (agreeing, total)."""
        agree = total = 0
        for _, r in self.walk():
            total += 1
            if evaluation_oracle(list(r.terms), count, seed) == r.vanishes:
                agree += 1
        return agree, total

    def to_dict(self, seed: int = 0, oracle_points: int | None = None, millis: int | None = None) -> dict:
        residuals = []
        witness = None
        for label, r in self.failures():
            w = find_witness(r.value, seed=seed)
            residuals.append({"label": label, "poly": render(r.value), "witness": w})
            if witness is None:
                witness = {"label": label, "point": w}
        out = {
            "check": self.check,
            "subject": self.subject,
            "verdict": self.verdict,
            "residuals": residuals,
            "witness": witness,
            "millis": millis,
            "checked": sum(1 for _ in self.walk()),
            "facts": [{"name": n, "holds": f.holds, "detail": f.detail} for n, f in self.all_facts()],
            "notes": self.all_notes(),
        }
        if self.error is not None:
            out["error"] = self.error
        if oracle_points is not None:
            agree, total = self.oracle_agreement(oracle_points or None, seed)
            out["oracle"] = {"points": oracle_points, "agree": agree, "total": total}
        return out

    def summary(self) -> str:
        lines = [f"{self.verdict.upper():5} {self.check} {self.subject}"]
        if self.error:
            lines.append(f"      error: {self.error}")
        for name, f in self.all_facts():
            if not f.holds:
                lines.append(f"      {name}: no {f.detail}".rstrip())
        for label, r in self.failures()[:12]:
            lines.append(f"      {label} = {render(r.value)}")
        extra = len(self.failures()) - 12
        if extra > 0:
            lines.append(f"      ... {extra} more")
        return "\n".join(lines)

    def __str__(self) -> str:
        return self.summary()


def combine(check: str, subject: str, parts: Sequence[Report], **kw) -> Report:
    return Report(check, subject, parts=list(parts), **kw)
