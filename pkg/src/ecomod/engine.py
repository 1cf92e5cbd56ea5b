"""Seeded monthly agent-based executor for compiled programs.

One step advances the world a month through a fixed phase order:
metabolism, affect resolution, consume/destroy, produce, mortality,
reproduction, series recording. Every stochastic draw comes from a
counter-addressed substream keyed by (seed, rule-or-pool, month), so
results never depend on how agent storage happens to be ordered, and
adding rules or pools to a program leaves existing streams untouched.

Pools are struct-of-arrays (uid, age, carbon, months-since-reproduction)
kept in uid order. Unlimited pools are frozen boundaries: consumption and
destruction never shrink them (consumers still receive carbon, booked as
unlimited yield), they run no lifecycle, but deposits into an unlimited
abiotic pool accumulate normally.

A carbon ledger is checked after every step: the change in system mass
(agent carbon + abiotic amounts + detritus) must equal photosynthesis +
unlimited yield - respiration - egestion - destruction to one part in 1e9,
otherwise the run aborts with an engine diagnostic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .compiler import PopulationSchema, Rule, RuleKind, SimProgram
from .errors import EngineInvariantError
from .rng import init_age_stream, reproduction_stream, rule_stream

_LEDGER_RTOL = 1e-9


@dataclass(frozen=True)
class Agent:
    """External view of one simulation entity."""

    age: int
    carbon: float
    months_since_reproduction: int
    scale: int


@dataclass
class CarbonLedger:
    """Cumulative carbon flows across the system boundary, in kg."""

    fixed_total: float = 0.0
    respired_total: float = 0.0
    egested_total: float = 0.0
    destroyed_total: float = 0.0
    unlimited_yield_total: float = 0.0
    detritus_by_pool: dict[int, float] = field(default_factory=dict)

    def detritus_total(self) -> float:
        return math.fsum(self.detritus_by_pool.values())

    def boundary_flux(self) -> float:
        """Net carbon the fluxes say should have entered the system."""
        return (
            self.fixed_total
            + self.unlimited_yield_total
            - self.respired_total
            - self.egested_total
            - self.destroyed_total
        )

    def as_dict(self) -> dict:
        return {
            "fixed_total": self.fixed_total,
            "respired_total": self.respired_total,
            "egested_total": self.egested_total,
            "destroyed_total": self.destroyed_total,
            "unlimited_yield_total": self.unlimited_yield_total,
            "detritus_by_pool": {str(k): v for k, v in sorted(self.detritus_by_pool.items())},
        }


class _Pool:
    """Mutable agent arrays for one limited biotic population."""

    __slots__ = ("uid", "age", "carbon", "since_repro", "next_uid", "ordered")

    def __init__(self, n: int, ages: np.ndarray, carbon_each: float):
        self.uid = np.arange(n, dtype=np.int64)
        self.age = ages.astype(np.int64)
        self.carbon = np.full(n, carbon_each, dtype=np.float64)
        self.since_repro = np.zeros(n, dtype=np.int64)
        self.next_uid = n
        self.ordered = True

    def __len__(self) -> int:
        return len(self.uid)

    def ensure_order(self) -> None:
        if not self.ordered:
            order = np.argsort(self.uid, kind="stable")
            self.uid = self.uid[order]
            self.age = self.age[order]
            self.carbon = self.carbon[order]
            self.since_repro = self.since_repro[order]
            self.ordered = True

    def keep(self, mask: np.ndarray) -> None:
        self.uid = self.uid[mask]
        self.age = self.age[mask]
        self.carbon = self.carbon[mask]
        self.since_repro = self.since_repro[mask]

    def append(self, n: int, carbon_each: float) -> None:
        if n <= 0:
            return
        self.uid = np.concatenate([self.uid, np.arange(self.next_uid, self.next_uid + n, dtype=np.int64)])
        self.next_uid += n
        self.age = np.concatenate([self.age, np.zeros(n, dtype=np.int64)])
        self.carbon = np.concatenate([self.carbon, np.full(n, carbon_each, dtype=np.float64)])
        self.since_repro = np.concatenate([self.since_repro, np.zeros(n, dtype=np.int64)])


class WorldState:
    """Complete simulation state between steps."""

    def __init__(self, program: SimProgram, seed: int):
        self.program = program
        self.seed = seed
        self.month = 0
        self.pools: dict[int, _Pool] = {}
        self.frozen_counts: dict[int, int] = {}
        self.abiotic_amounts: dict[int, float] = {}
        self.ledger = CarbonLedger()
        self.series: list[list[float]] = [[] for _ in program.populations]

        for schema in program.populations:
            if schema.biotic:
                n = schema.initial_agents
                if schema.unlimited:
                    self.frozen_counts[schema.index] = n
                    continue
                if program.settings.spread_initial_ages and n > 0:
                    u = init_age_stream(seed, schema.index).random(n)
                    ages = np.floor(u * schema.attributes.lifespan)
                else:
                    ages = np.zeros(n)
                self.pools[schema.index] = _Pool(n, ages, schema.reference_carbon)
            else:
                self.abiotic_amounts[schema.index] = schema.initial_amount
        self._record()

    # -- observers ---------------------------------------------------------

    def population_count(self, index: int) -> float:
        """Represented individuals (biotic) or kg (abiotic) right now."""
        schema = self.program.populations[index]
        if not schema.biotic:
            return self.abiotic_amounts[index]
        if schema.unlimited:
            return float(self.frozen_counts[index] * schema.scale)
        return float(len(self.pools[index]) * schema.scale)

    def agents_of(self, index: int) -> list[Agent]:
        schema = self.program.populations[index]
        if not schema.biotic:
            raise ValueError(f"pool {index} is abiotic")
        if schema.unlimited:
            n = self.frozen_counts[index]
            return [Agent(0, schema.reference_carbon, 0, schema.scale)] * n
        pool = self.pools[index]
        pool.ensure_order()
        return [
            Agent(int(pool.age[i]), float(pool.carbon[i]), int(pool.since_repro[i]), schema.scale)
            for i in range(len(pool))
        ]

    def shuffle_storage(self, rng: np.random.Generator) -> None:
        """Permute agent array order (testing aid; results must not change)."""
        for pool in self.pools.values():
            perm = rng.permutation(len(pool))
            pool.uid = pool.uid[perm]
            pool.age = pool.age[perm]
            pool.carbon = pool.carbon[perm]
            pool.since_repro = pool.since_repro[perm]
            pool.ordered = False

    def system_carbon(self) -> float:
        parts = [pool.carbon.sum() for pool in self.pools.values()]
        parts.extend(
            self.frozen_counts[i] * self.program.populations[i].reference_carbon
            for i in self.frozen_counts
        )
        parts.extend(self.abiotic_amounts.values())
        parts.append(self.ledger.detritus_total())
        return math.fsum(parts)

    def _record(self) -> None:
        for schema in self.program.populations:
            self.series[schema.index].append(self.population_count(schema.index))


def init_world(program: SimProgram, seed: int) -> WorldState:
    return WorldState(program, seed)


def step(world: WorldState, program: SimProgram | None = None) -> WorldState:
    """Advance one month in place and return the world."""
    program = program or world.program
    settings = program.settings
    seed = world.seed
    month = world.month

    for pool in world.pools.values():
        pool.ensure_order()

    carbon_before = world.system_carbon()
    flux_before = world.ledger.boundary_flux()

    # (1) metabolism and aging
    for schema in program.populations:
        pool = world.pools.get(schema.index)
        if pool is None or len(pool) == 0:
            continue
        if schema.monthly_photosynthesis > 0.0:
            pool.carbon += schema.monthly_photosynthesis
            world.ledger.fixed_total += schema.monthly_photosynthesis * len(pool)
        if schema.monthly_respiration > 0.0:
            burn = np.minimum(pool.carbon, schema.monthly_respiration)
            pool.carbon -= burn
            world.ledger.respired_total += float(burn.sum())
        pool.age += 1
        pool.since_repro += 1

    # (2) affect resolution
    multipliers = _resolve_multipliers(world, program)

    # (3) consume / destroy, in rule order
    for rule in program.rules:
        if rule.kind is RuleKind.CONSUME and rule.enabled:
            _apply_consume(world, program, rule, seed, month)
        elif rule.kind is RuleKind.DESTROY and rule.enabled:
            _apply_destroy(world, program, rule, seed, month)

    # (4) produce
    for rule in program.rules:
        if rule.kind is RuleKind.PRODUCE and rule.enabled:
            _apply_produce(world, program, rule, seed, month, multipliers[rule.target_pool])

    # (5) mortality
    death_target = _death_targets(program)
    for schema in program.populations:
        pool = world.pools.get(schema.index)
        if pool is None or len(pool) == 0:
            continue
        threshold = settings.starvation_fraction * schema.reference_carbon
        dead = (pool.age >= schema.attributes.lifespan) | (pool.carbon < threshold)
        if not dead.any():
            continue
        dying_carbon = float(pool.carbon[dead].sum())
        target = death_target.get(schema.index)
        if target is not None:
            world.abiotic_amounts[target] += dying_carbon
        else:
            ledger = world.ledger.detritus_by_pool
            ledger[schema.index] = ledger.get(schema.index, 0.0) + dying_carbon
        pool.keep(~dead)

    # (6) reproduction
    for schema in program.populations:
        pool = world.pools.get(schema.index)
        if pool is None or len(pool) == 0:
            continue
        attrs = schema.attributes
        eligible = (pool.age >= attrs.reproductive_maturity) & (
            pool.since_repro >= attrs.reproductive_interval
        )
        n_eligible = int(eligible.sum())
        if n_eligible == 0:
            continue
        expected = attrs.offspring_count * multipliers[schema.index]
        unit = schema.reference_carbon
        reserve = settings.starvation_fraction * unit
        rng = reproduction_stream(seed, schema.index, month)
        base = math.floor(expected)
        frac = expected - base
        want = np.full(n_eligible, base, dtype=np.int64)
        if frac > 0.0:
            want += rng.random(n_eligible) < frac
        if unit > 0.0:
            afford = np.floor((pool.carbon[eligible] - reserve) / unit)
            afford = np.maximum(afford, 0.0).astype(np.int64)
            births = np.minimum(want, afford)
        else:
            births = want
        pool.carbon[eligible] -= births.astype(np.float64) * unit
        pool.since_repro[eligible] = 0
        pool.append(int(births.sum()), unit)

    # (7) bookkeeping
    world.month += 1
    world._record()

    carbon_after = world.system_carbon()
    flux_after = world.ledger.boundary_flux()
    gained = carbon_after - carbon_before
    expected_gain = flux_after - flux_before
    tolerance = _LEDGER_RTOL * max(1.0, abs(carbon_after), abs(carbon_before))
    if abs(gained - expected_gain) > tolerance:
        raise EngineInvariantError(
            f"carbon ledger identity violated at month {world.month}: "
            f"state moved {gained!r} kg but fluxes account for {expected_gain!r} kg"
        )
    for index, amount in world.abiotic_amounts.items():
        if amount < 0.0:
            raise EngineInvariantError(
                f"abiotic pool {index} went negative ({amount!r} kg) at month {world.month}"
            )
    for index, pool in world.pools.items():
        if len(pool) and float(pool.carbon.min()) < 0.0:
            raise EngineInvariantError(
                f"agent carbon went negative in pool {index} at month {world.month}"
            )
    return world


def _resolve_multipliers(world: WorldState, program: SimProgram) -> np.ndarray:
    multipliers = np.ones(len(program.populations), dtype=np.float64)
    for rule in program.rules:
        if rule.kind is not RuleKind.AFFECT or not rule.enabled:
            continue
        if _source_is_live(world, program, rule.source_pool):
            multipliers[rule.target_pool] *= 1.0 + rule.growth_modifier
    return np.maximum(multipliers, 0.0)


def _source_is_live(world: WorldState, program: SimProgram, index: int) -> bool:
    schema = program.populations[index]
    if schema.biotic:
        if schema.unlimited:
            return world.frozen_counts[index] > 0
        return len(world.pools[index]) > 0
    return schema.unlimited or world.abiotic_amounts[index] > 0.0


def _death_targets(program: SimProgram) -> dict[int, int]:
    """Pool index -> abiotic pool receiving its dying carbon."""
    targets: dict[int, int] = {}
    for rule in program.rules:
        if rule.kind is RuleKind.BECOME_ON_DEATH and rule.enabled:
            targets.setdefault(rule.source_pool, rule.target_pool)
    return targets


def _bite_size(schema: PopulationSchema) -> float:
    # a consumer's monthly respiration deficit, already scale-multiplied
    return max(schema.monthly_respiration - schema.monthly_photosynthesis, 0.0)


def _apply_consume(world: WorldState, program: SimProgram, rule: Rule, seed: int, month: int) -> None:
    src_schema = program.populations[rule.source_pool]
    tgt_schema = program.populations[rule.target_pool]
    src = world.pools.get(rule.source_pool)
    if src is None or len(src) == 0:
        return
    efficiency = src_schema.attributes.assimilation_efficiency

    if not tgt_schema.biotic:
        _consume_abiotic(world, rule, src, src_schema, tgt_schema, efficiency, seed, month)
        return

    if tgt_schema.unlimited:
        n_target = world.frozen_counts[rule.target_pool] * tgt_schema.scale
        if n_target <= 0:
            return
        p = n_target / (n_target + rule.half_saturation)
        rng = rule_stream(seed, rule.index, month)
        hit = rng.random(len(src)) < p
        successes = int(hit.sum())
        if successes == 0:
            return
        meal = tgt_schema.reference_carbon
        src.carbon[hit] += meal * efficiency
        world.ledger.unlimited_yield_total += meal * successes
        world.ledger.egested_total += meal * (1.0 - efficiency) * successes
        return

    tgt = world.pools[rule.target_pool]
    n_target = len(tgt) * tgt_schema.scale
    if n_target <= 0:
        return
    p = n_target / (n_target + rule.half_saturation)
    rng = rule_stream(seed, rule.index, month)
    hit = rng.random(len(src)) < p
    successes = int(hit.sum())
    if successes == 0:
        return

    whole_prey = tgt_schema.reference_carbon <= src_schema.reference_carbon
    if whole_prey:
        k = min(successes, len(tgt))
        chosen = rng.permutation(len(tgt))[:k]
        meals = tgt.carbon[chosen]
        feeders = np.flatnonzero(hit)[:k]
        src.carbon[feeders] += meals * efficiency
        world.ledger.egested_total += float(meals.sum()) * (1.0 - efficiency)
        mask = np.ones(len(tgt), dtype=bool)
        mask[chosen] = False
        tgt.keep(mask)
    else:
        bite = _bite_size(src_schema)
        if bite <= 0.0:
            return
        targets = rng.integers(0, len(tgt), size=successes)
        hits_per_prey = np.bincount(targets, minlength=len(tgt))
        demand = hits_per_prey * bite
        taken = np.minimum(demand, tgt.carbon)
        grant_per_hit = taken / np.maximum(hits_per_prey, 1)
        tgt.carbon = tgt.carbon - taken
        src.carbon[hit] += grant_per_hit[targets] * efficiency
        world.ledger.egested_total += float(taken.sum()) * (1.0 - efficiency)


def _consume_abiotic(world, rule, src, src_schema, tgt_schema, efficiency, seed, month) -> None:
    amount = world.abiotic_amounts[rule.target_pool]
    if amount <= 0.0:
        return
    bite = _bite_size(src_schema)
    if bite <= 0.0:
        return
    # half-saturation is kg here, matching the pool's amount dimension
    p = amount / (amount + rule.half_saturation)
    rng = rule_stream(seed, rule.index, month)
    hit = rng.random(len(src)) < p
    successes = int(hit.sum())
    if successes == 0:
        return
    demand = bite * successes
    if tgt_schema.unlimited:
        taken = demand
        world.ledger.unlimited_yield_total += taken
    else:
        taken = min(demand, amount)
        world.abiotic_amounts[rule.target_pool] = amount - taken
    grant = taken / successes
    src.carbon[hit] += grant * efficiency
    world.ledger.egested_total += taken * (1.0 - efficiency)


def _apply_destroy(world: WorldState, program: SimProgram, rule: Rule, seed: int, month: int) -> None:
    tgt_schema = program.populations[rule.target_pool]
    src = world.pools.get(rule.source_pool)
    if src is None or len(src) == 0:
        return
    if tgt_schema.unlimited:
        return  # boundary pools are never diminished
    tgt = world.pools[rule.target_pool]
    n_target = len(tgt) * tgt_schema.scale
    if n_target <= 0:
        return
    p = n_target / (n_target + rule.half_saturation)
    rng = rule_stream(seed, rule.index, month)
    hit = rng.random(len(src)) < p
    successes = int(hit.sum())
    if successes == 0:
        return
    targets = rng.integers(0, len(tgt), size=successes)
    hits_per_prey = np.bincount(targets, minlength=len(tgt))
    survival = (1.0 - rule.destroy_fraction) ** hits_per_prey
    lost = tgt.carbon * (1.0 - survival)
    tgt.carbon = tgt.carbon * survival
    world.ledger.destroyed_total += float(lost.sum())


def _apply_produce(world: WorldState, program: SimProgram, rule: Rule, seed: int, month: int,
                   multiplier: float) -> None:
    src_schema = program.populations[rule.source_pool]
    tgt_schema = program.populations[rule.target_pool]
    base = rule.produce_amount
    probability = rule.produce_probability
    if base <= 0.0 or probability <= 0.0 or multiplier <= 0.0:
        return

    if src_schema.biotic and not src_schema.unlimited:
        src = world.pools.get(rule.source_pool)
        if src is None or len(src) == 0:
            return
        rng = rule_stream(seed, rule.index, month)
        emitting = rng.random(len(src)) < probability
        n_emit = int(emitting.sum())
        if n_emit == 0:
            return
        pay_full = base * min(1.0, multiplier)
        scale_down = np.minimum(1.0, src.carbon[emitting] / pay_full)
        paid = pay_full * scale_down
        deposit = float((base * multiplier * scale_down).sum())
        src.carbon[emitting] -= paid
        world.abiotic_amounts[rule.target_pool] += deposit
        surplus = base * max(0.0, multiplier - 1.0)
        world.ledger.fixed_total += float((surplus * scale_down).sum())
        return

    if src_schema.biotic and src_schema.unlimited:
        n = world.frozen_counts[rule.source_pool]
        if n == 0:
            return
        rng = rule_stream(seed, rule.index, month)
        n_emit = int((rng.random(n) < probability).sum())
        if n_emit == 0:
            return
        deposit = base * multiplier * n_emit
        world.abiotic_amounts[rule.target_pool] += deposit
        world.ledger.unlimited_yield_total += deposit
        return

    # abiotic source: one emission event per month
    rng = rule_stream(seed, rule.index, month)
    if rng.random() >= probability:
        return
    if src_schema.unlimited:
        deposit = base * multiplier
        world.abiotic_amounts[rule.target_pool] += deposit
        world.ledger.unlimited_yield_total += deposit
        return
    amount = world.abiotic_amounts[rule.source_pool]
    if amount <= 0.0:
        return
    pay_full = base * min(1.0, multiplier)
    scale_down = min(1.0, amount / pay_full) if pay_full > 0 else 1.0
    paid = pay_full * scale_down
    deposit = base * multiplier * scale_down
    world.abiotic_amounts[rule.source_pool] = amount - paid
    world.abiotic_amounts[rule.target_pool] += deposit
    world.ledger.fixed_total += base * max(0.0, multiplier - 1.0) * scale_down


@dataclass(frozen=True)
class PopulationSeries:
    name: str
    component_id: str
    biotic: bool
    values: tuple[float, ...]


@dataclass(frozen=True)
class RunResult:
    seed: int
    duration: int
    program_hash: str
    settings: dict
    series: tuple[PopulationSeries, ...]
    final_state_summary: dict

    def series_by_name(self) -> dict[str, tuple[float, ...]]:
        return {s.name: s.values for s in self.series}

    def as_dict(self) -> dict:
        return {
            "seed": self.seed,
            "duration": self.duration,
            "program_hash": self.program_hash,
            "settings": self.settings,
            "series": [
                {
                    "name": s.name,
                    "component_id": s.component_id,
                    "biotic": s.biotic,
                    "values": list(s.values),
                }
                for s in self.series
            ],
            "final_state_summary": self.final_state_summary,
        }


def run(program: SimProgram, seed: int, duration: int) -> RunResult:
    """Initialize and advance `duration` months; series includes month 0."""
    if duration < 1:
        raise ValueError("duration must be >= 1 month")
    world = init_world(program, seed)
    for _ in range(duration):
        step(world, program)
    series = tuple(
        PopulationSeries(
            name=schema.name,
            component_id=schema.component_id,
            biotic=schema.biotic,
            values=tuple(world.series[schema.index]),
        )
        for schema in program.populations
    )
    summary = {
        "month": world.month,
        "populations": {
            schema.name: world.population_count(schema.index)
            for schema in program.populations
        },
        "ledger": world.ledger.as_dict(),
        "system_carbon": world.system_carbon(),
    }
    return RunResult(
        seed=seed,
        duration=duration,
        program_hash=program.program_hash(),
        settings=program.settings.as_dict(),
        series=series,
        final_state_summary=summary,
    )


def batch_run(program: SimProgram, seeds: list[int], duration: int):
    """Run every seed; returns (results, per-month mean/min/max summary).

    The summary is permutation-invariant in the seed list: means use exact
    compensated summation and min/max are order-free.
    """
    if not seeds:
        raise ValueError("seed list must not be empty")
    results = [run(program, seed, duration) for seed in seeds]
    summary: dict[str, dict[str, list[float]]] = {}
    for schema in program.populations:
        name = schema.name
        columns = [r.series[schema.index].values for r in results]
        months = len(columns[0])
        summary[name] = {
            "mean": [math.fsum(col[m] for col in columns) / len(columns) for m in range(months)],
            "min": [min(col[m] for col in columns) for m in range(months)],
            "max": [max(col[m] for col in columns) for m in range(months)],
        }
    return results, summary
