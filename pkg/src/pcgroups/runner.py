"""Corpus runner: load a directory of presentations, check everything, report.

The JSON report (schema "report v1") is deterministic: keys are sorted, sets
are emitted in canonical order, and timing data is only included when
explicitly requested, so identical corpus + options + seed give byte-identical
output.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from .families import builtin_corpus
from .fileformat import PcgParseError, load_pcp_file, serialize_pcp
from .lemmas import lemma_suite
from .presentation import PcPresentation
from .subgroups import lower_central_series
from .witness import Branch, check_single_slot_property

__all__ = ["CorpusEntry", "RunOptions", "RunReport", "load_corpus",
           "write_builtin_corpus", "run_suite"]

CORPUS_GLOB = "*.pcg"


@dataclass
class CorpusEntry:
    id: str
    source: str
    presentation: PcPresentation | None = None
    error: str | None = None


@dataclass(frozen=True)
class RunOptions:
    r_values: tuple[int, ...] = (2, 3)
    seed: int = 1
    jobs: int = 1
    include_lemmas: bool = True
    with_timings: bool = False


def load_corpus(directory: str | Path) -> list[CorpusEntry]:
    """Entries for every *.pcg file, sorted by name; load errors recorded."""
    directory = Path(directory)
    if not directory.is_dir():
        raise PcgParseError(f"corpus directory {directory} does not exist")
    entries = []
    for path in sorted(directory.glob(CORPUS_GLOB)):
        try:
            P = load_pcp_file(path)
            entries.append(CorpusEntry(id=path.stem, source=str(path),
                                       presentation=P))
        except PcgParseError as exc:
            entries.append(CorpusEntry(id=path.stem, source=str(path),
                                       error=str(exc)))
    return entries


def write_builtin_corpus(directory: str | Path) -> list[Path]:
    """Serialize the canonical builtin corpus into a directory."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for P in builtin_corpus():
        name = P.id.replace("(", "_").replace(")", "").replace(",", "_")
        path = directory / f"{name}.pcg"
        path.write_text(serialize_pcp(P), encoding="utf-8")
        paths.append(path)
    return paths


def _entry_result(entry: CorpusEntry, options: RunOptions) -> dict:
    if entry.presentation is None:
        return {"id": entry.id, "source": entry.source, "error": entry.error,
                "runs": []}
    P = entry.presentation
    series = lower_central_series(P)
    runs = []
    for r in options.r_values:
        verdict = check_single_slot_property(P, r)
        run: dict = {"r": r, "verdict": verdict.to_dict()}
        if options.include_lemmas:
            reports = lemma_suite(P, r, seed=options.seed)
            run["lemmas"] = [rep.to_dict(with_timings=options.with_timings)
                             for rep in reports]
        runs.append(run)
    return {
        "id": entry.id,
        "source": entry.source,
        "error": None,
        "order": P.order,
        "class": len(series) - 1,
        "series": [s.size for s in series],
        "runs": runs,
    }


@dataclass
class RunReport:
    seed: int
    r_values: tuple[int, ...]
    entries: list[dict] = field(default_factory=list)

    def totals(self) -> dict:
        load_errors = sum(1 for e in self.entries if e.get("error"))
        theorem_failures = 0
        theorem_verified = 0
        not_applicable = 0
        lemma_failures = 0
        lemma_passes = 0
        lemma_vacuous = 0
        for e in self.entries:
            for run in e.get("runs", ()):
                verdict = run["verdict"]
                branch = verdict["hypotheses"]["branch"]
                if branch == Branch.NOT_APPLICABLE.value:
                    not_applicable += 1
                elif verdict["equality_holds"]:
                    theorem_verified += 1
                else:
                    theorem_failures += 1
                for rep in run.get("lemmas", ()):
                    if rep["status"] == "fail":
                        lemma_failures += 1
                    elif rep["status"] == "pass":
                        lemma_passes += 1
                    else:
                        lemma_vacuous += 1
        return {
            "entries": len(self.entries),
            "load_errors": load_errors,
            "theorem_verified": theorem_verified,
            "theorem_failures": theorem_failures,
            "not_applicable": not_applicable,
            "lemma_passes": lemma_passes,
            "lemma_failures": lemma_failures,
            "lemma_vacuous": lemma_vacuous,
        }

    def ok(self) -> bool:
        t = self.totals()
        return (t["load_errors"] == 0 and t["theorem_failures"] == 0
                and t["lemma_failures"] == 0)

    def to_dict(self) -> dict:
        return {
            "schema": "report v1",
            "version": __version__,
            "seed": self.seed,
            "r_values": list(self.r_values),
            "entries": self.entries,
            "totals": self.totals(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"


def run_suite(entries: list[CorpusEntry], options: RunOptions) -> RunReport:
    """Run hypotheses, witness check and lemma suite for each entry and r.

    Entries run in parallel up to options.jobs; assembly order is the input
    order regardless of completion order.
    """
    results: list[dict]
    if options.jobs > 1 and len(entries) > 1:
        with ProcessPoolExecutor(max_workers=options.jobs) as pool:
            futures = [pool.submit(_entry_result, e, options) for e in entries]
            results = [f.result() for f in futures]
    else:
        results = [_entry_result(e, options) for e in entries]
    return RunReport(seed=options.seed, r_values=options.r_values,
                     entries=results)
