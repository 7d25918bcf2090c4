"""Replayable sequences of moves, shellings and relabelings.

Text format, one record per line::

    TRACE seed=<int or -> start=<name>
    <k> <A labels> | <B labels> [| anneal]      Pachner move of kind k
    S <sigma> | <A> | <B>                       shelling (facet deletion)
    S+ <sigma> | <A> | <B>                      inverse shelling (facet addition)
    R <old>:<new> ...                           vertex relabeling
    END <sha256 of the final facet list>        optional

Blank lines and ``#`` comments are ignored.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional, Union

from .core import Complex, relabel
from .errors import FormatError, InadmissibleOperation, TraceDivergence
from .moves import MoveSite, apply_move


@dataclass(frozen=True)
class MoveStep:
    site: MoveSite
    anneal: bool = False

    def __str__(self) -> str:
        return f"{self.site} | anneal" if self.anneal else str(self.site)


@dataclass(frozen=True)
class ShellStep:
    site: Any  # ShellingSite; typed loosely to avoid an import cycle
    add: bool = False

    def __str__(self) -> str:
        return f"{'S+' if self.add else 'S'} {self.site}"


@dataclass(frozen=True)
class RelabelStep:
    mapping: tuple[tuple[int, int], ...]

    def __str__(self) -> str:
        return "R " + " ".join(f"{u}:{v}" for u, v in self.mapping)


Step = Union[MoveStep, ShellStep, RelabelStep]


@dataclass
class Trace:
    start: str = "-"
    seed: Optional[int] = None
    steps: list[Step] = field(default_factory=list)
    end_digest: Optional[str] = None

    def __len__(self) -> int:
        return len(self.steps)

    @property
    def moves(self) -> list[MoveSite]:
        return [s.site for s in self.steps if isinstance(s, MoveStep)]

    def to_text(self) -> str:
        seed = "-" if self.seed is None else str(self.seed)
        lines = [f"TRACE seed={seed} start={self.start}"]
        lines += [str(s) for s in self.steps]
        if self.end_digest:
            lines.append(f"END {self.end_digest}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> Trace:
        return parse_trace(text)


def _labels(chunk: str, lineno: int) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in chunk.split())
    except ValueError:
        raise FormatError(f"line {lineno}: non-integer label in {chunk.strip()!r}") from None


def parse_trace(text: str) -> Trace:
    from .shellings import ShellingSite

    trace = Trace()
    seen_header = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        if head == "TRACE":
            if seen_header or trace.steps:
                raise FormatError(f"line {lineno}: misplaced TRACE header")
            seen_header = True
            fields = rest.split(" start=", 1)
            seed = fields[0].strip().removeprefix("seed=")
            trace.seed = None if seed == "-" else int(seed)
            trace.start = fields[1] if len(fields) > 1 else "-"
        elif head == "END":
            trace.end_digest = rest.strip()
        elif head == "R":
            pairs = []
            for tok in rest.split():
                u, _, v = tok.partition(":")
                try:
                    pairs.append((int(u), int(v)))
                except ValueError:
                    raise FormatError(f"line {lineno}: bad relabel token {tok!r}") from None
            trace.steps.append(RelabelStep(tuple(pairs)))
        elif head in ("S", "S+"):
            parts = rest.split("|")
            if len(parts) != 3:
                raise FormatError(f"line {lineno}: shelling needs sigma | A | B")
            sigma, a, b = (_labels(p, lineno) for p in parts)
            trace.steps.append(ShellStep(ShellingSite(sigma, a, b), add=head == "S+"))
        else:
            parts = line.split("|")
            if len(parts) not in (2, 3):
                raise FormatError(f"line {lineno}: move needs 'k A | B'")
            left = _labels(parts[0], lineno)
            b = _labels(parts[1], lineno)
            anneal = len(parts) == 3
            if anneal and parts[2].strip() != "anneal":
                raise FormatError(f"line {lineno}: unknown tag {parts[2].strip()!r}")
            if not left or left[0] != len(left) - 2:
                raise FormatError(f"line {lineno}: kind does not match |A|")
            trace.steps.append(MoveStep(MoveSite(left[1:], b), anneal))
    return trace


def apply_step(C: Complex, step: Step) -> Complex:
    from .shellings import apply_inverse_shelling, apply_shelling

    if isinstance(step, MoveStep):
        return apply_move(C, step.site)
    if isinstance(step, RelabelStep):
        return relabel(C, dict(step.mapping))
    if step.add:
        result = apply_inverse_shelling(C, step.site.sigma)
        if result.witness.shelling != step.site:
            raise TraceDivergence(-1, f"gluing {step.site.sigma} splits as {result.witness.shelling}")
        return result.complex
    return apply_shelling(C, step.site).complex


def replay(C: Complex, trace: Trace, check_digest: bool = True) -> Complex:
    """Apply every step of ``trace`` to ``C``; raise TraceDivergence at the first failure."""
    from .io import facet_digest

    for i, step in enumerate(trace.steps, 1):
        try:
            C = apply_step(C, step)
        except TraceDivergence as exc:
            raise TraceDivergence(i, exc.reason) from None
        except InadmissibleOperation as exc:
            raise TraceDivergence(i, f"{exc.code}: {exc}") from None
    if check_digest and trace.end_digest and facet_digest(C) != trace.end_digest:
        raise TraceDivergence(len(trace.steps), "final complex does not match END digest")
    return C
