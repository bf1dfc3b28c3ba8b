"""
Involutions of a Weyl group and the parabolic criterion for smoothness.

In a simply laced type, an involution ``v`` indexes a smooth Schubert
variety exactly when ``v = w0(J)`` for some ``J``. :func:`verify_theorem`
checks this for every involution. For each singular one it also replays
the constructive argument: either the identity already has too many
neighbours in the Bruhat graph of ``[e, v]``, or there are ``s``
and ``t`` such that ``(st, sts, ts)`` is a broken rhombus of ``[e, v]``.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .bruhat import lower_interval
from .coxeter import (
    CoxeterSystem, GroupElement, Reflection, build_system, is_involution,
    longest_element, multiply, reflections, support,
)
from .errors import CapExceeded, PreconditionViolated, TheoremViolation
from .smoothness import (
    BrokenRhombus, DegreeDefect, SmoothnessCertificate, rationally_smooth_cp, validate_rhombus,
)

__all__ = [
    "ProofWitness", "InvolutionVerdict", "TheoremReport", "LONG_RUN_THRESHOLD",
    "involutions", "is_parabolic_longest", "proof_witness", "classify_involution",
    "verify_theorem",
]

# groups above this size are only swept with long_run=True
LONG_RUN_THRESHOLD = 10_000


@dataclass(frozen=True)
class ProofWitness:
    s: int
    t: Reflection
    rhombus: BrokenRhombus

    def to_dict(self) -> dict:
        return {"s": self.s, "t": self.t.label, "rhombus": self.rhombus.labels()}


@dataclass(frozen=True)
class InvolutionVerdict:
    element: GroupElement
    support: frozenset[int]
    is_parabolic_longest: bool
    certificate: SmoothnessCertificate
    proof_witness: ProofWitness | DegreeDefect | None


def involutions(system) -> list[GroupElement]:
    """Elements with ``w * w = e``, identity included, in (length, shortlex) order."""
    system = build_system(system)
    table = system.table
    fixed = np.flatnonzero(table.inverse == np.arange(table.size))
    return [system.element_at(int(i)) for i in fixed]


def is_parabolic_longest(v: GroupElement) -> bool:
    # if v = w0(J) then J = S(v), so only the support needs checking
    return v == longest_element(v.system, support(v))


def _degree_at_identity(v: GroupElement, mask: np.ndarray) -> int:
    # neighbours of e in the graph of [e, v] are exactly the reflections below v
    return int(mask[v.system.table.reflection_indices].sum())


def proof_witness(v: GroupElement) -> ProofWitness | DegreeDefect:
    """Singularity evidence for an involution that is not a parabolic longest element."""
    system = v.system
    if not system.simply_laced:
        raise PreconditionViolated(f"{system.label} is not simply laced")
    if not is_involution(v):
        raise PreconditionViolated(f"{v.label} is not an involution")
    if is_parabolic_longest(v):
        raise PreconditionViolated(f"{v.label} is the longest element of a parabolic subgroup")

    table = system.table
    below_v = lower_interval(v).mask
    deg = _degree_at_identity(v, below_v)
    if deg != v.length:
        return DegreeDefect(system.identity, deg, v.length)

    for s in sorted(support(v) - v.left_descents):
        sv = v.left_multiply(s)
        below_sv = lower_interval(sv).mask
        for t in reflections(system):
            k = t.element.index
            if below_sv[k] and not below_v[k]:
                break
        else:
            # degree at e of [e, sv] exceeds that of [e, v], so this is unreachable
            raise TheoremViolation(f"no reflection below {sv.label} but not below {v.label}")
        st = multiply(system.generator(s), t.element)
        ts = multiply(t.element, system.generator(s))
        sts = multiply(st, system.generator(s))
        ys = table.up_set(st.index) & table.up_set(ts.index)
        at = system.element_at
        rhombus = BrokenRhombus(st, sts, ts, tuple(at(y) for y in sorted(ys)))
        return ProofWitness(s, t, rhombus)
    raise TheoremViolation(f"{v.label}: every s in its support is a left descent")


def classify_involution(v: GroupElement) -> InvolutionVerdict:
    parabolic = is_parabolic_longest(v)
    cert = rationally_smooth_cp(v)
    witness = None
    if v.system.simply_laced and not parabolic:
        witness = proof_witness(v)
    return InvolutionVerdict(v, support(v), parabolic, cert, witness)


def _sweep_rows(system: CoxeterSystem, indices: list[int]) -> list[dict]:
    rows = []
    for i in indices:
        verdict = classify_involution(system.element_at(i))
        v, cert = verdict.element, verdict.certificate
        row = {
            "index": i,
            "word": v.label,
            "parabolic_longest": verdict.is_parabolic_longest,
            "rationally_smooth": cert.rationally_smooth,
            "witness_validated": False,
            "degree_defect": False,
        }
        entry = {"word": v.label, "length": v.length}
        w = verdict.proof_witness
        if isinstance(w, ProofWitness):
            if not validate_rhombus(w.rhombus, v):
                raise TheoremViolation(f"{v.label}: constructed rhombus fails to validate")
            row["witness_validated"] = True
            entry["rhombus"] = w.rhombus.labels()
            entry["witness"] = {"s": w.s, "t": w.t.label}
        elif isinstance(w, DegreeDefect):
            row["degree_defect"] = True
            entry["defect"] = {"vertex": w.vertex.label, "degree": w.degree}
        elif not cert.rationally_smooth:
            entry["defect"] = {"vertex": cert.evidence.vertex.label, "degree": cert.evidence.degree}
        row["entry"] = entry
        if system.simply_laced and verdict.is_parabolic_longest != cert.rationally_smooth:
            raise TheoremViolation(
                f"{system.label}: involution {v.label} has parabolic_longest="
                f"{verdict.is_parabolic_longest} but smooth={cert.rationally_smooth}"
            )
        rows.append(row)
    return rows


@dataclass
class TheoremReport:
    system: str
    simply_laced: bool
    rows: list[dict] = field(repr=False)
    elapsed_ms: int = 0

    @property
    def involution_count(self) -> int:
        return len(self.rows)

    @property
    def smooth(self) -> list[str]:
        return [r["word"] for r in self.rows if r["rationally_smooth"]]

    @property
    def singular(self) -> list[str]:
        return [r["word"] for r in self.rows if not r["rationally_smooth"]]

    @property
    def parabolic_longest(self) -> list[str]:
        return [r["word"] for r in self.rows if r["parabolic_longest"]]

    @property
    def mismatches(self) -> list[str]:
        return [r["word"] for r in self.rows if r["parabolic_longest"] != r["rationally_smooth"]]

    @property
    def equivalence_holds(self) -> bool:
        return not self.mismatches

    @property
    def witnesses_validated(self) -> int:
        return sum(r["witness_validated"] for r in self.rows)

    @property
    def degree_defects(self) -> int:
        return sum(r["degree_defect"] for r in self.rows)

    def to_dict(self, timing: bool = True) -> dict:
        doc = {
            "schema": 1,
            "system": self.system,
            "simply_laced": self.simply_laced,
            "verdict_kind": "smooth" if self.simply_laced else "rationally_smooth",
            "involution_count": self.involution_count,
            "parabolic_longest_count": len(self.parabolic_longest),
            "smooth": self.smooth,
            "singular": [r["entry"] for r in self.rows if not r["rationally_smooth"]],
            "witnesses_validated": self.witnesses_validated,
            "degree_defects": self.degree_defects,
            "mismatches": self.mismatches,
            "equivalence_holds": self.equivalence_holds,
        }
        if not self.simply_laced:
            doc["note"] = (
                "multiply laced: verdicts are rational smoothness only; "
                "smoothness is not decided by these criteria"
            )
        if timing:
            doc["elapsed_ms"] = self.elapsed_ms
        return doc

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), indent=2) + "\n"


def verify_theorem(system, jobs: int = 1, long_run: bool = False) -> TheoremReport:
    """Sweep all involutions; raises :class:`TheoremViolation` on a simply laced mismatch."""
    start = time.perf_counter()
    system = build_system(system)
    if system.order > LONG_RUN_THRESHOLD and not long_run:
        raise CapExceeded(
            f"{system.label} has {system.order} elements; sweeping it needs the long-run flag"
        )
    indices = [v.index for v in involutions(system)]
    if jobs <= 1 or len(indices) < 2 * jobs:
        rows = _sweep_rows(system, indices)
    else:
        chunks = [indices[k::jobs] for k in range(jobs)]
        with ProcessPoolExecutor(jobs) as pool:
            parts = list(pool.map(_sweep_rows, [system] * jobs, chunks))
        rows = sorted((r for part in parts for r in part), key=lambda r: r["index"])
    elapsed = int(round((time.perf_counter() - start) * 1000))
    return TheoremReport(system.label, system.simply_laced, rows, elapsed)
