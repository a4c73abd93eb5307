"""Obstruction reports: validate, build both systems, compare with the bounds."""
from __future__ import annotations

import json
import os
import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import __version__
from .errors import GGMError
from .fileio import spec_digest
from .ls1 import bound_c, build_ls1
from .ls2 import bound_c_prime, build_ls2
from .manifold import ManifoldSpec, ValidatedManifold, apply_basis_change, random_basis_change, validate
from .systems import LinearSystem

OBSTRUCTED_C = "OBSTRUCTED_C"
OBSTRUCTED_C_PRIME = "OBSTRUCTED_C_PRIME"
INCONCLUSIVE = "INCONCLUSIVE"
LS2_NOT_APPLICABLE = "LS2_NOT_APPLICABLE"


class InternalInconsistency(GGMError):
    code = "internal_error"


@dataclass
class RunOptions:
    systems: str = "both"  # "both", "ls1" or "ls2"
    dump_dir: str | None = None
    self_test: int = 0
    seed: int = 0


@dataclass
class SystemSummary:
    variables: int
    equations: int
    rank: int
    corank: int
    bound: Fraction

    @classmethod
    def of(cls, system: LinearSystem, bound: Fraction) -> SystemSummary:
        return cls(system.num_variables, system.num_equations, system.rank, system.corank, bound)

    def to_dict(self) -> dict:
        return {
            "variables": self.variables,
            "equations": self.equations,
            "rank": self.rank,
            "corank": self.corank,
            "lemma_bound": fraction_str(self.bound),
        }


@dataclass
class ObstructionReport:
    dimension: int
    num_blocks: int
    num_gluing_tori: int
    num_boundary_tori: int
    ls1: SystemSummary | None
    ls2: SystemSummary | None
    ls2_applicable: bool
    verdict: str
    obstructions: list
    input_digest: str
    notes: list = field(default_factory=list)
    self_test: dict | None = None
    version: str = __version__

    def to_dict(self) -> dict:
        return {
            "tool_version": self.version,
            "input_digest": self.input_digest,
            "dimension": self.dimension,
            "counts": {
                "blocks": self.num_blocks,
                "gluing_tori": self.num_gluing_tori,
                "boundary_tori": self.num_boundary_tori,
            },
            "ls1": self.ls1.to_dict() if self.ls1 else None,
            "ls2": self.ls2.to_dict() if self.ls2 else None,
            "ls2_applicable": self.ls2_applicable,
            "verdict": self.verdict,
            "obstructions": list(self.obstructions),
            "self_test": self.self_test,
            "notes": list(self.notes),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_text(self) -> str:
        lines = [
            f"ggm-obstruct {self.version}",
            f"input sha256   {self.input_digest}",
            f"dimension n    {self.dimension}",
            f"|V| = {self.num_blocks}  |W| = {self.num_gluing_tori}  |W_bd| = {self.num_boundary_tori}",
        ]
        for name, label, s in (("LS1", "c ", self.ls1), ("LS2", "c'", self.ls2)):
            if s is None:
                if name == "LS2" and not self.ls2_applicable:
                    lines.append("LS2            not applicable (needs n > 3)")
                continue
            lines.append(
                f"{name}            {s.variables} variables, {s.equations} equations, rank {s.rank}"
            )
            lines.append(f"  {label} = {s.corank}    lemma bound {fraction_str(s.bound)}")
        if self.self_test is not None:
            st = self.self_test
            status = "passed" if st["passed"] else f"FAILED ({st['failures']} failures)"
            lines.append(f"self-test      {st['trials']} basis changes (seed {st['seed']}): {status}")
        lines.append(f"verdict        {self.verdict}")
        for note in self.notes:
            lines.append(f"note: {note}")
        return "\n".join(lines)

    @property
    def obstructed(self) -> bool:
        return bool(self.obstructions)


def fraction_str(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _coranks(m: ValidatedManifold, systems: str) -> tuple:
    c = build_ls1(m).corank if systems in ("both", "ls1") else None
    cp = None
    if systems in ("both", "ls2") and m.dimension > 3:
        cp = build_ls2(m).corank
    return c, cp


def invariance_self_test(m: ValidatedManifold, trials: int, seed: int, systems: str = "both") -> dict:
    """Recompute the coranks after ``trials`` random changes of Waldhausen bases."""
    reference = _coranks(m, systems)
    rng = random.Random(seed)
    failures = []
    for t in range(trials):
        bc = random_basis_change(m, rng.getrandbits(64), 3)
        got = _coranks(apply_basis_change(m, bc), systems)
        if got != reference:
            failures.append({"trial": t, "expected": list(reference), "got": list(got)})
    return {
        "trials": trials,
        "seed": seed,
        "failures": len(failures),
        "failed_trials": failures,
        "passed": not failures,
    }


def dump_systems(dump_dir: str, systems: dict):
    os.makedirs(dump_dir, exist_ok=True)
    for name, system in systems.items():
        with open(os.path.join(dump_dir, f"{name}.json"), "w", encoding="utf-8") as fh:
            json.dump(system.to_dict(), fh, indent=1)
            fh.write("\n")


def run(spec, options: RunOptions | None = None) -> ObstructionReport:
    """Validate ``spec`` and compute the requested obstructions."""
    options = options or RunOptions()
    if options.systems not in ("both", "ls1", "ls2"):
        raise ValueError(f"unknown system selection {options.systems!r}")
    m = validate(spec)
    spec = m.spec
    n = m.dimension
    nV, nW, nWd = len(m.blocks), len(m.gluing_tori), len(m.boundary_tori)
    built = {}
    ls1 = ls2 = None
    if options.systems in ("both", "ls1"):
        built["ls1"] = build_ls1(m)
        ls1 = SystemSummary.of(built["ls1"], bound_c(n, nV, nW, nWd))
    ls2_applicable = n > 3
    if options.systems in ("both", "ls2") and ls2_applicable:
        built["ls2"] = build_ls2(m)
        ls2 = SystemSummary.of(built["ls2"], bound_c_prime(n, nV, nW))

    for name, s in (("c", ls1), ("c'", ls2)):
        if s is not None and s.corank < s.bound:
            raise InternalInconsistency(f"{name} = {s.corank} is below its lemma bound {s.bound}")

    obstructions = []
    if ls1 is not None and ls1.corank <= 0:
        obstructions.append(OBSTRUCTED_C)
    if ls2 is not None and ls2.corank <= 0:
        obstructions.append(OBSTRUCTED_C_PRIME)
    if obstructions:
        verdict = obstructions[0]
    elif options.systems in ("both", "ls2") and not ls2_applicable:
        verdict = LS2_NOT_APPLICABLE
    else:
        verdict = INCONCLUSIVE

    self_test = None
    if options.self_test:
        self_test = invariance_self_test(m, options.self_test, options.seed, options.systems)

    if options.dump_dir:
        dump_systems(options.dump_dir, built)

    return ObstructionReport(
        dimension=n,
        num_blocks=nV,
        num_gluing_tori=nW,
        num_boundary_tori=nWd,
        ls1=ls1,
        ls2=ls2,
        ls2_applicable=ls2_applicable,
        verdict=verdict,
        obstructions=obstructions,
        input_digest=spec_digest(spec),
        notes=list(spec.notes),
        self_test=self_test,
    )


def load_example() -> ManifoldSpec:
    """The bundled four-dimensional example with one boundary torus."""
    from importlib.resources import files

    from .fileio import parse_manifold

    return parse_manifold(files("ggm_obstruct").joinpath("data/example_4d.json").read_text())
