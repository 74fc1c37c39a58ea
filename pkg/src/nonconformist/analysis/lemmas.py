"""Runtime checks of the recurrent-cycle lemmas for an anti-threshold v1.

Each lemma is a pattern on v1's opinions c_t plus a conclusion about the
conformist +1 sets U*_t. Preconditions are slid around the cycle with all
indices taken mod p.
"""
from __future__ import annotations

from dataclasses import dataclass

from ..engine import CycleReport, compile_config, step_bits
from ..rules import AntiThreshold, SystemConfig


class LemmaError(ValueError):
    pass


@dataclass(frozen=True)
class LemmaViolation:
    lemma: str
    position: int
    sign: int
    detail: str


def _subset(a: int, b: int) -> bool:
    return a & ~b == 0


def check_recurrent_lemmas(config: SystemConfig, report: CycleReport) -> list[LemmaViolation]:
    if not isinstance(config.rule(1), AntiThreshold):
        raise LemmaError("lemma checks need an anti-threshold rule at vertex 1")
    if not config.conformist_regime:
        raise LemmaError("lemma checks need threshold rules at every conformist")
    p = report.period
    words = [s.bits for s in report.cycle_states]
    if p < 1 or len(words) != p:
        raise LemmaError("cycle report is inconsistent with its period")
    cc = compile_config(config)
    for j in range(p):
        if step_bits(cc, words[j]) != words[(j + 1) % p]:
            raise LemmaError(f"cycle report is not a cycle of this system (position {j})")

    def c(t):
        return 1 if words[t % p] & 1 else -1

    def us(t):
        return words[t % p] & ~1

    def u(t):
        return words[t % p]

    def window(start, length):
        return tuple(c(start + k) for k in range(length))

    loop_at_v1 = config.graph.has_loop(1)
    out: list[LemmaViolation] = []

    def fail(name, t, x, detail):
        out.append(LemmaViolation(name, t, x, detail))

    for t in range(p):
        # on a recurrent cycle: c_{t+1} = +1 forces U*_t <= U*_{t+2}, -1 the reverse
        if c(t + 1) == 1 and not _subset(us(t), us(t + 2)):
            fail("recurrence", t, 1, "c_{t+1}=+1 but U*_t is not inside U*_{t+2}")
        if c(t + 1) == -1 and not _subset(us(t + 2), us(t)):
            fail("recurrence", t, -1, "c_{t+1}=-1 but U*_{t+2} is not inside U*_t")
        for x in (1, -1):
            if window(t, 3) == (x, -x, x) and us(t + 1) != us(t + 3):
                fail("lemma1", t, x, "U*_{t+1} != U*_{t+3}")
            if window(t, 5) == (x, -x, x, x, -x) and not loop_at_v1:
                fail("lemma2", t, x, "pattern (x,-x,x,x,-x) without a loop at v1")
            if window(t + 1, 3) == (-x, x, x):
                ok = _subset(us(t), us(t + 4)) if x == 1 else _subset(us(t + 4), us(t))
                if not ok:
                    rel = "inside" if x == 1 else "containing"
                    fail("lemma3", t, x, f"U*_t not {rel} U*_{{t+4}}")
            if window(t + 1, 4) == (-x, x, x, x) and c(t + 5) != -x:
                fail("lemma4", t, x, "c_{t+5} != -x after (-x,x,x,x)")
            if window(t + 1, 5) == (-x, x, x, -x, x) and u(t + 6) != u(t):
                fail("lemma5", t, x, "U_{t+6} != U_t")
            if window(t + 1, 10) == (-x, x, x, x, -x, -x, x, x, x, -x) and c(t + 11) != -x:
                fail("lemma6", t, x, "c_{t+11} != -x")
    return out
