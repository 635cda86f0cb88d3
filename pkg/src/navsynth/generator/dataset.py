"""
Dataset generation for every augmentation mode.

Record `i` of a run depends only on the bundle, the global seed, `i` and the
template pool, so records can be produced by any number of workers and are
always written in index order.
"""

import asyncio
import hashlib
import multiprocessing
import random
import time
from collections.abc import Sequence
from concurrent.futures import ProcessPoolExecutor, ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import repeat

from navsynth.config import AppSettings, WorkerKind
from navsynth.exceptions import (
    DegenerateRouteError,
    EmptyTemplatePoolError,
    NoCompatibleTemplateError,
    NoEligibleGoalError,
    RewriterError,
    RoutingError,
    SamplingError,
    UnnameableEntityError,
)
from navsynth.generator.dummy import dummy_instruction
from navsynth.generator.instantiate import (
    available_placeholders,
    find_placeholder_residue,
    instantiate,
    slot_values,
)
from navsynth.generator.prompting import build_prompt
from navsynth.generator.scenario import ground_sample, landmarks_record
from navsynth.grammar.selection import TemplatePool, filter_by_style, minimal_cover
from navsynth.logging import LogContext, RunLedger, get_logger
from navsynth.mapgraph.bundle import MapBundle
from navsynth.models.grammar import Template, TemplateStyle
from navsynth.models.records import GenerationMode, InstructionRecord
from navsynth.rewriters.base import BaseRewriter, RewriterConfig, RewriterKind
from navsynth.rewriters.identity import IdentityRewriter
from navsynth.sampler.landmarks import pick_landmarks
from navsynth.sampler.walker import Walker


logger = get_logger(__name__)

RETRYABLE_ERRORS = (
    SamplingError,
    RoutingError,
    DegenerateRouteError,
    UnnameableEntityError,
)


def derive_seed(*parts: int | str) -> int:
    """64-bit seed from BLAKE2b over the colon-joined parts."""
    key = ":".join(str(p) for p in parts).encode("utf-8")
    return int.from_bytes(hashlib.blake2b(key, digest_size=8).digest(), "big")


def attempt_seed(seed: int, index: int, attempt: int) -> int:
    """Seed of one attempt at record `index`; the first attempt omits the attempt number."""
    if attempt == 0:
        return derive_seed(seed, index)
    return derive_seed(seed, index, attempt)


def record_id(mode: GenerationMode, index: int) -> str:
    return f"{mode.value}-{index:07d}"


def template_pool_for(mode: GenerationMode, templates: Sequence[Template]) -> TemplatePool | None:
    """The template pool a mode draws from; None for the dummy mode."""
    if mode is GenerationMode.DUMMY:
        return None
    if mode is GenerationMode.CFG_ALLOCENTRIC:
        selected = filter_by_style(templates, TemplateStyle.ALLOCENTRIC)
    elif mode is GenerationMode.CFG_EGOCENTRIC:
        selected = filter_by_style(templates, TemplateStyle.EGOCENTRIC)
    elif mode is GenerationMode.CFG_MINIMAL:
        selected = minimal_cover(templates)
    else:
        selected = list(templates)
    return TemplatePool(selected)


@dataclass
class GenerationResult:
    """Records of a run in index order, plus the indices that were missed."""

    mode: GenerationMode
    requested: int
    records: list[InstructionRecord] = field(default_factory=list)
    missed_indices: list[int] = field(default_factory=list)
    run_id: str = ""
    wall_time_s: float = 0.0

    @property
    def misses(self) -> int:
        return len(self.missed_indices)


class DatasetGenerator:
    """
    Produces instruction records for one mode.

    Raises on construction:
        EmptyTemplatePoolError: a grammar mode got no templates
        NoEligibleGoalError: the bundle has no goal candidates
    """

    def __init__(
        self,
        bundle: MapBundle,
        mode: GenerationMode,
        settings: AppSettings | None = None,
        pool: TemplatePool | None = None,
        rewriter: BaseRewriter | None = None,
        ledger: RunLedger | None = None,
    ):
        self.bundle = bundle
        self.mode = mode
        self.settings = settings or AppSettings()
        self.pool = pool
        self.ledger = ledger or RunLedger()
        if mode.uses_grammar and (pool is None or len(pool) == 0):
            raise EmptyTemplatePoolError(f"mode {mode.value} has an empty template pool")
        if mode is GenerationMode.PROMPT and rewriter is None:
            rewriter = IdentityRewriter(RewriterConfig(kind=RewriterKind.IDENTITY))
        self.rewriter = rewriter
        self.walker = Walker(bundle, self.settings.sampling, self.settings.map.snap_tolerance_m)
        if not self.walker.eligible_goals:
            raise NoEligibleGoalError(
                f"no entity with extent <= {self.settings.sampling.max_goal_extent_m:.0f} m "
                "and a type tag in the bundle"
            )

    def build_record(self, index: int, seed: int) -> InstructionRecord:
        """
        One attempt at a record from a fully derived seed.

        Raises:
            SamplingError, RoutingError, DegenerateRouteError, UnnameableEntityError
        """
        sampling = self.settings.sampling
        rng = random.Random(seed)
        sample = self.walker.sample_path(rng, seed)
        landmarks = pick_landmarks(self.bundle, sample, rng, sampling)
        grounded = ground_sample(self.bundle, sample, landmarks, sampling)
        text_rng = random.Random(derive_seed(seed, "text"))

        common = {
            "id": record_id(self.mode, index),
            "mode": self.mode,
            "start": sample.start.centroid,
            "goal": sample.goal.centroid,
            "route": sample.route.polyline,
            "seed": seed,
        }
        if self.mode is GenerationMode.DUMMY:
            return InstructionRecord(instruction=dummy_instruction(text_rng), **common)

        pool = self.pool
        if pool is None:
            raise EmptyTemplatePoolError(f"mode {self.mode.value} has no template pool")
        available = available_placeholders(landmarks, grounded.features)
        template = pool.choose(available, text_rng)
        if template is None:
            # no template mentions every available group; settle for one that fits
            template = pool.choose(available, text_rng, strict=False)
        if template is None:
            raise NoCompatibleTemplateError(
                f"no template fits placeholders {sorted(available)}"
            )
        values = slot_values(landmarks, grounded.features, grounded.names)
        instruction = instantiate(template, values)
        residue = find_placeholder_residue(instruction)
        if residue:
            raise NoCompatibleTemplateError(
                f"template {template.id} left placeholders {residue} unresolved"
            )
        return InstructionRecord(
            instruction=instruction,
            template_id=template.id,
            landmarks=landmarks_record(
                grounded, set(template.placeholder_set), sampling.proper_name_distance_m
            ),
            features=grounded.features.model_dump(mode="json"),
            **common,
        )

    def generate_index(self, seed: int, index: int, run_id: str = "") -> InstructionRecord | None:
        """Record `index`, retrying with fresh seeds; None when every attempt fails."""
        retries = self.settings.generation.retries
        reason = ""
        with LogContext(run_id=run_id or None, mode=self.mode.value, record_index=index):
            for attempt in range(retries + 1):
                try:
                    return self.build_record(index, attempt_seed(seed, index, attempt))
                except NoEligibleGoalError:
                    raise
                except RETRYABLE_ERRORS as e:
                    reason = f"{type(e).__name__}: {e}"
                    logger.debug("Attempt failed", attempt=attempt, reason=reason)
            self.ledger.log_sample_missed(run_id, index, retries + 1, reason)
        return None

    async def _rewrite_all(self, prompts: list[str]) -> list[str]:
        rewriter = self.rewriter
        if rewriter is None:
            raise RewriterError("prompt mode needs a rewriter")
        batch_size = self.settings.generation.rewrite_batch_size
        texts: list[str] = []
        async with rewriter:
            for offset in range(0, len(prompts), batch_size):
                batch = prompts[offset : offset + batch_size]
                started = time.perf_counter()
                try:
                    texts.extend(await rewriter.rewrite_batch(batch))
                except RewriterError as e:
                    self.ledger.log_rewrite_call(
                        rewriter.name,
                        len(batch),
                        int((time.perf_counter() - started) * 1000),
                        success=False,
                        error=str(e),
                    )
                    raise
                self.ledger.log_rewrite_call(
                    rewriter.name, len(batch), int((time.perf_counter() - started) * 1000)
                )
        return texts

    def rewrite_records(self, records: list[InstructionRecord]) -> list[InstructionRecord]:
        """Replace every instruction by the rewriter's text for its prompt."""
        if not records:
            return records
        prompts = [build_prompt(r.instruction) for r in records]
        texts = asyncio.run(self._rewrite_all(prompts))
        return [
            r.model_copy(update={"instruction": text, "template_id": None})
            for r, text in zip(records, texts)
        ]

    def generate(self, n: int, seed: int, jobs: int | None = None) -> GenerationResult:
        """Generate `n` records; missed indices are skipped and reported."""
        if n < 0:
            raise ValueError("record count must be non-negative")
        jobs = jobs or self.settings.generation.jobs
        started = time.perf_counter()
        with LogContext(mode=self.mode.value) as ctx:
            run_id = ctx.run_id
            self.ledger.log_run_started(run_id, self.mode.value, n, seed, jobs)

            def work(index: int) -> InstructionRecord | None:
                return self.generate_index(seed, index, run_id)

            if jobs == 1 or n <= 1:
                produced = [work(i) for i in range(n)]
            elif (context := self._process_context()) is not None:
                with ProcessPoolExecutor(
                    max_workers=jobs,
                    mp_context=context,
                    initializer=_adopt_generator,
                    initargs=(self,),
                ) as executor:
                    produced = list(
                        executor.map(
                            _generate_in_worker,
                            repeat(seed),
                            range(n),
                            repeat(run_id),
                            chunksize=max(1, n // (jobs * 16)),
                        )
                    )
            else:
                with ThreadPoolExecutor(max_workers=jobs) as executor:
                    produced = list(executor.map(work, range(n)))

            result = GenerationResult(mode=self.mode, requested=n, run_id=run_id)
            for index, record in enumerate(produced):
                if record is None:
                    result.missed_indices.append(index)
                else:
                    result.records.append(record)
            if result.misses:
                logger.warning(
                    "Some records could not be generated",
                    missed=result.misses,
                    requested=n,
                )
            if self.mode is GenerationMode.PROMPT:
                result.records = self.rewrite_records(result.records)

            result.wall_time_s = time.perf_counter() - started
            self.ledger.log_run_completed(
                run_id, len(result.records), result.misses, result.wall_time_s
            )
        return result

    def _process_context(self) -> multiprocessing.context.BaseContext | None:
        if self.settings.generation.executor is not WorkerKind.PROCESS:
            return None
        context = _fork_context()
        if context is None:
            logger.warning("Process workers need the fork start method; using threads")
        return context


# generator of the current worker process, inherited through fork
_worker_generator: DatasetGenerator | None = None


def _fork_context() -> multiprocessing.context.BaseContext | None:
    if "fork" not in multiprocessing.get_all_start_methods():
        return None
    return multiprocessing.get_context("fork")


def _adopt_generator(generator: DatasetGenerator) -> None:
    global _worker_generator
    _worker_generator = generator


def _generate_in_worker(seed: int, index: int, run_id: str) -> InstructionRecord | None:
    if _worker_generator is None:
        raise RuntimeError("worker process has no generator")
    return _worker_generator.generate_index(seed, index, run_id)


def generate_dataset(
    bundle: MapBundle,
    mode: GenerationMode,
    n: int,
    seed: int,
    templates: Sequence[Template] | None = None,
    settings: AppSettings | None = None,
    rewriter: BaseRewriter | None = None,
    jobs: int | None = None,
) -> list[InstructionRecord]:
    """Convenience wrapper: records of one run in index order."""
    pool = template_pool_for(mode, templates or [])
    generator = DatasetGenerator(bundle, mode, settings, pool, rewriter)
    return generator.generate(n, seed, jobs).records
