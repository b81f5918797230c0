"""Seeded random corpora and the cross-module self-check.

Every corpus item draws from its own generator seeded with
``"{seed}:{n}:{m}:{i}"`` so that reports do not depend on iteration order
and can be reproduced one item at a time.
"""

from __future__ import annotations

import random
from dataclasses import asdict, dataclass, field, replace
from fractions import Fraction
from itertools import product

import typer

from nary_python_cli.utils.classification import FAMILIES
from nary_python_cli.utils.degeneration import (
    degenerate_to_form,
    form_to_minimal,
    subalgebraic_to_max_attractive,
    verify_chain,
)
from nary_python_cli.utils.errors import NaryError, SearchExhausted
from nary_python_cli.utils.properties import (
    SearchBudget,
    is_form_algebra,
    is_p_anticommutative,
    is_p_attractive,
    is_subalgebraic,
    sampled_agrees,
    sampled_check,
)
from nary_python_cli.utils.scalars import RatMatrix
from nary_python_cli.utils.structures import (
    AlgebraStructure,
    change_basis,
    derivation_dimension,
    enumerate_partitions,
    gl_action,
)

SOURCES = ("dense", "form", "family", "sparse")


def hash_seed(seed: int, n: int, m: int, i: int) -> int:
    """Integer search seed for one corpus item."""
    return random.Random(f"{seed}:{n}:{m}:{i}:search").getrandbits(32)


def _nonzero(rng: random.Random, bound: int) -> Fraction:
    return Fraction(rng.choice([c for c in range(-bound, bound + 1) if c]))


def random_matrix(rng: random.Random, m: int, bound: int = 3, upper: bool = False) -> RatMatrix:
    """Random invertible integer matrix, upper triangular when ``upper``."""
    while True:
        grid = [
            [
                _nonzero(rng, bound) if i == j else (0 if upper and i > j else rng.randint(-bound, bound))
                for j in range(m)
            ]
            for i in range(m)
        ]
        g = RatMatrix(grid)
        if g.is_invertible():
            return g


def random_structure(rng: random.Random, n: int, m: int, density: float = 0.35, bound: int = 3) -> AlgebraStructure:
    """Each constant is nonzero with probability ``density``."""
    constants = {}
    for index in product(range(1, m + 1), repeat=n):
        vector = {j: _nonzero(rng, bound) for j in range(1, m + 1) if rng.random() < density}
        if vector:
            constants[index] = vector
    return AlgebraStructure(n, m, constants)


def random_form_algebra(rng: random.Random, n: int, m: int, density: float = 0.35, bound: int = 3) -> AlgebraStructure:
    """A nonzero form on <e_1..e_(m-1)> with values on e_m, moved by a random g."""
    if m < 2:
        return AlgebraStructure(n, m)
    while True:
        constants = {
            index: {m: _nonzero(rng, bound)}
            for index in product(range(1, m), repeat=n)
            if rng.random() < density
        }
        if constants:
            break
    return gl_action(random_matrix(rng, m, bound), AlgebraStructure(n, m, constants))


def random_family_member(rng: random.Random, n: int, m: int, bound: int = 3) -> AlgebraStructure | None:
    """A tabulated level-one representative moved by a random upper triangular g."""
    candidates = [f for f in FAMILIES if f.arity == n and f.min_dimension <= m]
    if not candidates:
        return None
    chosen = rng.choice(candidates)
    return gl_action(random_matrix(rng, m, bound, upper=True), chosen.structure(m))


def corpus_item(seed: int, n: int, m: int, i: int, density: float) -> tuple[str, AlgebraStructure]:
    rng = random.Random(f"{seed}:{n}:{m}:{i}")
    source = SOURCES[i % len(SOURCES)]
    mu = None
    if source == "form":
        mu = random_form_algebra(rng, n, m, density)
    elif source == "family":
        mu = random_family_member(rng, n, m)
    elif source == "sparse":
        mu = random_structure(rng, n, m, density / 4)
    if mu is None:
        source = "dense"
        mu = random_structure(rng, n, m, density)
    return source, mu


@dataclass
class ShapeReport:
    arity: int
    dimension: int
    structures: int = 0
    oracle_checks: int = 0
    oracle_disagreements: int = 0
    action_failures: int = 0
    disjointness_failures: int = 0
    pipeline_runs: int = 0
    pipeline_failures: int = 0
    inconclusive: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not (
            self.oracle_disagreements
            or self.action_failures
            or self.disjointness_failures
            or self.pipeline_failures
        )


@dataclass
class SelfcheckReport:
    seed: int
    shapes: list[ShapeReport] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(shape.passed for shape in self.shapes)

    def as_dict(self) -> dict:
        return {
            "seed": self.seed,
            "passed": self.passed,
            "shapes": [{**asdict(shape), "passed": shape.passed} for shape in self.shapes],
        }

    def render(self) -> str:
        lines = [f"selfcheck seed={self.seed}"]
        for shape in self.shapes:
            mark = "✅" if shape.passed else "❌"
            lines.append(
                f"{mark} n={shape.arity} m={shape.dimension}: {shape.structures} structures, "
                f"{shape.oracle_checks} oracle checks, {shape.oracle_disagreements} disagreements, "
                f"{shape.action_failures} action failures, {shape.disjointness_failures} disjointness failures, "
                f"{shape.pipeline_failures}/{shape.pipeline_runs} pipeline failures, "
                f"{shape.inconclusive} inconclusive"
            )
            lines.extend(f"    {failure}" for failure in shape.failures)
        return "\n".join(lines)


def _check_oracles(mu: AlgebraStructure, budget: SearchBudget, trials: int, report: ShapeReport, label: str) -> None:
    n = mu.arity
    checks = [("subalgebraic", None, lambda: is_subalgebraic(mu, budget))]
    for p in enumerate_partitions(n):
        checks.append(("anticommutative", p, lambda p=p: is_p_anticommutative(mu, p, budget)))
    for p in enumerate_partitions(n - 1):
        checks.append(("attractive", p, lambda p=p: is_p_attractive(mu, p, budget)))
    for name, p, symbolic in checks:
        verdict = symbolic()
        report.oracle_checks += 1
        sampled = sampled_check(mu, name, trials, budget.seed, p, budget.bound)
        if not sampled_agrees(verdict, sampled):
            report.oracle_disagreements += 1
            suffix = f" {p}" if p is not None else ""
            report.failures.append(f"{label}: sampled {name}{suffix} violation against a symbolic pass")


def _check_actions(mu: AlgebraStructure, rng: random.Random, report: ShapeReport, label: str) -> None:
    m = mu.dimension
    g, h = random_matrix(rng, m), random_matrix(rng, m)
    moved = gl_action(h, mu)
    broken = []
    if gl_action(g, moved) != gl_action(g @ h, mu):
        broken.append("g*(h*mu) != (gh)*mu")
    if gl_action(RatMatrix.identity(m), mu) != mu:
        broken.append("identity does not act trivially")
    if change_basis(moved, h) != mu:
        broken.append("change of basis does not undo the action")
    if derivation_dimension(moved) != derivation_dimension(mu):
        broken.append("derivation dimension is not invariant")
    if broken:
        report.action_failures += 1
        report.failures.append(f"{label}: {'; '.join(broken)}")


def _run_pipeline(mu: AlgebraStructure, budget: SearchBudget, report: ShapeReport, label: str) -> None:
    report.pipeline_runs += 1
    try:
        if is_form_algebra(mu):
            chain = form_to_minimal(mu, budget)
            ok = verify_chain(chain) and not chain.target.is_zero()
        elif is_subalgebraic(mu, budget).holds:
            chain = subalgebraic_to_max_attractive(mu, budget)
            ok = verify_chain(chain)
        else:
            witness = degenerate_to_form(mu, budget)
            ok = witness.verify() and is_form_algebra(witness.target)
    except SearchExhausted:
        report.inconclusive += 1
        return
    except NaryError as exc:
        report.pipeline_failures += 1
        report.failures.append(f"{label}: pipeline raised {type(exc).__name__}: {exc}")
        return
    if not ok:
        report.pipeline_failures += 1
        report.failures.append(f"{label}: pipeline witnesses do not re-apply")


def run_selfcheck(
    seed: int,
    shapes: list[tuple[int, int]],
    structures: int = 200,
    trials: int = 100,
    density: float = 0.35,
    pipeline_runs: int = 10,
    budget: SearchBudget | None = None,
    verbose: bool = False,
) -> SelfcheckReport:
    """Run the invariant suites over a seeded corpus per (n, m) shape.

    Failures are counted in the report, never raised.
    """
    budget = budget or SearchBudget(seed=seed)
    report = SelfcheckReport(seed)
    for n, m in shapes:
        shape = ShapeReport(n, m)
        report.shapes.append(shape)
        if verbose:
            typer.echo(f"  [verbose] corpus n={n} m={m}: {structures} structures")
        pipelines = 0
        for i in range(structures):
            source, mu = corpus_item(seed, n, m, i, density)
            label = f"item {i} ({source})"
            shape.structures += 1
            item_budget = replace(budget, seed=hash_seed(seed, n, m, i))
            _check_oracles(mu, item_budget, trials, shape, label)
            _check_actions(mu, random.Random(f"{seed}:{n}:{m}:{i}:action"), shape, label)
            if not mu.is_zero():
                if is_form_algebra(mu) and is_subalgebraic(mu, item_budget).holds:
                    shape.disjointness_failures += 1
                    shape.failures.append(f"{label}: both a form algebra and subalgebraic")
                if pipelines < pipeline_runs:
                    pipelines += 1
                    _run_pipeline(mu, item_budget, shape, label)
    return report
