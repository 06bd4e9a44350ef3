"""Running the check registry over a corpus, reporting and replaying."""
from __future__ import annotations

import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from ..core import LatticeError
from ..families import (default_allowlist_path, default_manifest_path, format_spec, generate,
                        load_manifest, parse_spec)
from ..results import HOLDS, NOTED, STATUSES, UNMET, VIOLATED, CheckResult
from ..search import canonical_form, worker_count
from .checks import REGISTRY, evaluate_check, reproduces, resolve_checks
from .context import Context


class StaleWitnessError(LatticeError):
    """A stored witness no longer fits the current lattice or check."""


# ------------------------------------------------------------ one lattice

def run_lattice(spec, check_ids) -> tuple:
    """Results for one corpus entry, plus its canonical form when anything failed."""
    text = format_spec(spec) if not isinstance(spec, str) else spec
    L = generate(spec)          # a corpus entry that cannot be built is an error, not a finding
    ctx = Context(L)
    out = []
    for cid in check_ids:
        chk = REGISTRY[cid]
        try:
            status, inst, detail = evaluate_check(chk, ctx)
        except Exception as exc:             # a crash inside a check is a finding too
            status, inst, detail = VIOLATED, (), f"error: {type(exc).__name__}: {exc}"
        witness = tuple((k, L.names[v]) for k, v in inst)
        out.append(CheckResult(cid, text, status, witness, detail))
    canon = None
    if any(r.status == VIOLATED for r in out):
        canon = canonical_form(L)
    return out, canon


def _run_chunk(args):
    specs, ids = args
    return [run_lattice(s, ids) for s in specs]


# --------------------------------------------------------------- allowlist

def load_allowlist(path=None) -> set:
    """Pairs (check id, canonical form) read from ``<check> <familyspec>`` lines."""
    path = Path(path) if path is not None else default_allowlist_path()
    allowed = set()
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        cid, _, spec = line.partition(" ")
        if cid not in REGISTRY:
            raise KeyError(f"{path}:{lineno}: unknown check {cid!r}")
        allowed.add((cid, canonical_form(generate(spec.strip()))))
    return allowed


# ------------------------------------------------------------------ report

@dataclass
class SuiteReport:
    corpus: list
    checks: list
    results: list
    allowlisted: set = field(default_factory=set)     # indices into results
    seconds: float = 0.0

    def tally(self) -> dict:
        t = {cid: Counter() for cid in self.checks}
        for r in self.results:
            t.setdefault(r.check, Counter())[r.status] += 1
        return t

    def violations(self) -> list:
        return [(k, r) for k, r in enumerate(self.results) if r.status == VIOLATED]

    def unexpected(self) -> list:
        return [r for k, r in self.violations() if k not in self.allowlisted]

    def by_status(self, status) -> list:
        return [r for r in self.results if r.status == status]

    @property
    def exit_code(self) -> int:
        return 1 if self.unexpected() else 0

    def format_text(self) -> str:
        lines = [f"corpus: {len(self.corpus)} lattices, {len(self.checks)} checks, "
                 f"{len(self.results)} results"]
        width = max([len(c) for c in self.checks] + [5])
        lines.append(f"{'check':<{width}}  " + "  ".join(f"{s:>16}" for s in STATUSES))
        for cid, cnt in self.tally().items():
            lines.append(f"{cid:<{width}}  " + "  ".join(f"{cnt[s]:>16}" for s in STATUSES))
        viol = self.violations()
        lines.append(f"violations: {len(viol)} ({len(self.unexpected())} unexpected)")
        for k, r in viol:
            tag = " [allowlisted]" if k in self.allowlisted else ""
            extra = f" ({r.detail})" if r.detail else ""
            lines.append(f"  {r.check} on {r.lattice}: {r.witness_text() or '-'}{tag}{extra}")
        noted = self.by_status(NOTED)
        if noted:
            # literal readings that differ from the argument; one example each
            lines.append(f"noted: {len(noted)}")
            first = {}
            for r in noted:
                first.setdefault(r.check, r)
            counts = Counter(r.check for r in noted)
            for cid, r in first.items():
                lines.append(f"  {cid}: {counts[cid]} lattices, e.g. {r.lattice}: "
                             f"{r.witness_text() or '-'}")
        lines.append(f"wall-clock: {self.seconds:.2f} s")
        return "\n".join(lines) + "\n"

    def format_machine(self) -> str:
        rows = ["check\tlattice\tstatus\twitness"]
        for r in self.results:
            rows.append(f"{r.check}\t{r.lattice}\t{r.status}\t{r.witness_text()}")
        return "\n".join(rows) + "\n"


def run_suite(corpus=None, checks="all", workers=None, allowlist=None) -> SuiteReport:
    """Evaluate ``checks`` on every lattice of ``corpus`` (specs or their text).

    ``corpus`` defaults to the bundled manifest, ``allowlist`` to the bundled
    discrepancy file; pass an empty set to disable allowlisting.
    """
    start = time.perf_counter()
    if corpus is None:
        corpus = load_manifest(default_manifest_path())
    specs = [format_spec(parse_spec(s)) if isinstance(s, str) else format_spec(s) for s in corpus]
    ids = [c.id for c in resolve_checks(checks)]
    workers = worker_count() if workers is None else max(1, int(workers))
    if workers == 1 or len(specs) < 2:
        outs = [run_lattice(s, ids) for s in specs]
    else:
        chunks = [specs[k::workers] for k in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_run_chunk, [(c, ids) for c in chunks]))
        # undo the round-robin split so results follow corpus order
        outs = [None] * len(specs)
        for k, part in enumerate(parts):
            for j, res in enumerate(part):
                outs[k + j * workers] = res
    if allowlist is None:
        allowlist = load_allowlist()
    results, allowed = [], set()
    for res, canon in outs:
        for r in res:
            if r.status == VIOLATED and canon is not None and (r.check, canon) in allowlist:
                allowed.add(len(results))
            results.append(r)
    return SuiteReport(specs, ids, results, allowed, time.perf_counter() - start)


# ------------------------------------------------------------------ replay

def replay(result: CheckResult) -> bool:
    """Re-run a stored counterexample; True when it still fails.

    The lattice is regenerated from its spec text. Raises
    :class:`StaleWitnessError` when the witness does not fit any more.
    """
    chk = REGISTRY.get(result.check)
    if chk is None:
        raise StaleWitnessError(f"unknown check {result.check!r}")
    keys = tuple(k for k, _ in result.witness)
    if keys != chk.keys:
        raise StaleWitnessError(f"witness keys {keys} do not match {chk.keys}")
    try:
        L = generate(result.lattice)
        inst = [L.resolve(str(v)) for _, v in result.witness]
    except LatticeError as exc:
        raise StaleWitnessError(str(exc)) from None
    return reproduces(chk, Context(L), inst)


def parse_machine_line(line: str) -> CheckResult:
    """Inverse of one row of :meth:`SuiteReport.format_machine`."""
    check, lattice, status, witness = line.rstrip("\n").split("\t")
    pairs = tuple(tuple(w.split("=", 1)) for w in witness.split())
    return CheckResult(check, lattice, status, pairs)


__all__ = ["StaleWitnessError", "SuiteReport", "run_suite", "run_lattice", "load_allowlist",
           "replay", "parse_machine_line", "HOLDS", "UNMET"]
