"""Combined verification runs and their JSON form."""

from dataclasses import dataclass, field, asdict
import hashlib
import json
import time

from . import __version__
from .ado import build_representation
from .algebra import jacobi_check
from .catalog import sample_descriptors
from .config import DEFAULT
from .exact import format_fraction
from .geometry import bch_compose, group_of, sample_points, verify_identities
from .symcatalog import (compare_with_pipeline, verify_a410_closed_form,
                         verify_catalog_entry, symbolic_frame)

__all__ = ["RunReport", "run_algebra", "run_all", "matrix_digest", "NILPOTENT_BCH"]

NILPOTENT_BCH = ("Bianchi_II", "A3,1+A1", "A4,1")


def matrix_digest(rep):
    """Short SHA-256 digest of the exact representation matrices."""
    text = ";".join(",".join(format_fraction(v) for v in m.flat) for m in rep.matrices)
    return hashlib.sha256(text.encode()).hexdigest()[:16]


@dataclass
class RunReport:
    """Everything checked for one algebra.

    ``checks`` maps a unique check name to ``{"passed", "residual",
    "threshold", "source"}``; ``passed`` is the conjunction of all flags.
    """

    algebra: str
    params: dict
    representation: dict
    checks: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)
    seed: int = DEFAULT.seed
    version: str = __version__
    timings: dict = None

    @property
    def passed(self):
        return all(c["passed"] for c in self.checks.values())

    def add(self, name, passed, residual=None, threshold=None, source="pipeline"):
        if name in self.checks:
            raise ValueError(f"check {name!r} recorded twice")
        self.checks[name] = {"passed": bool(passed),
                             "residual": None if residual is None else float(residual),
                             "threshold": threshold, "source": source}

    def to_dict(self):
        d = asdict(self)
        d["passed"] = self.passed
        if self.timings is None:
            d.pop("timings")
        return d

    def lines(self):
        out = [f"{self.algebra}: {'PASS' if self.passed else 'FAIL'}"]
        for name, c in self.checks.items():
            flag = "PASS" if c["passed"] else "FAIL"
            res = "" if c["residual"] is None else f" residual={c['residual']:.3e}"
            out.append(f"  {flag}  [{c['source']}] {name}{res}")
        out.extend(f"  note: {n}" for n in self.notes)
        return out


def run_algebra(desc, config=DEFAULT, timings=False):
    """Run pipeline and table checks for one descriptor."""
    clock = {}
    t0 = time.perf_counter()
    rep = build_representation(desc, config)
    clock["represent"] = time.perf_counter() - t0
    report = RunReport(
        desc.name, {k: format_fraction(v) for k, v in desc.parameters.items()},
        {"dim": rep.rep_dim, "method": rep.method, "digest": matrix_digest(rep)},
        seed=config.seed)

    report.add("jacobi", bool(jacobi_check(desc.constants)), source="algebra")
    report.add("bracket homomorphism (exact)", rep.bracket_residual() == 0,
               float(rep.bracket_residual()), 0.0, "representation")
    report.add("faithful (exact rank)", rep.is_faithful(), source="representation")

    t0 = time.perf_counter()
    ident = verify_identities(rep, config=config)
    for c in ident.checks:
        report.add(c.name, c.passed, c.residual, c.threshold, "pipeline")
    clock["identities"] = time.perf_counter() - t0

    if desc.name in NILPOTENT_BCH:
        g = group_of(rep, config)
        pts = sample_points(desc.dim, 20, config.seed + 3)
        a, b = pts[:10], pts[10:]
        phi, _ = g.compose_batch(a, b)
        dev = float(abs(phi - bch_compose(desc.constants, a, b)).max())
        report.add("BCH oracle", dev < config.bch_tol, dev, config.bch_tol, "pipeline")

    if desc.dim >= 3:
        t0 = time.perf_counter()
        frame = symbolic_frame(desc.name, algebra=desc)
        sym = verify_catalog_entry(desc.name, frame=frame, config=config)
        for s in sym.suites:
            report.add(f"table: {s.name}", s.passed, source="tables")
        report.notes.extend(f"table correction: {c}" for c in sym.corrections)
        dev = compare_with_pipeline(desc.name, algebra=desc, config=config)
        if dev is not None:
            report.add("pipeline vs table on complement of derived algebra",
                       dev < config.identity_tol, dev, config.identity_tol, "cross")
        clock["tables"] = time.perf_counter() - t0
    else:
        sym = verify_catalog_entry(desc.name, frame=symbolic_frame(desc.name, algebra=desc),
                                   config=config)
        for s in sym.suites:
            report.add(f"table: {s.name}", s.passed, source="tables")

    if desc.name == "A4,10":
        cf = verify_a410_closed_form(rep, config)
        report.add("closed-form group matrix (after change of basis)", cf.passed,
                   cf.intertwined_deviation, cf.tol, "tables")
        report.notes.append(
            f"closed-form group matrix differs from exp(theta.Omega) by "
            f"{cf.raw_deviation:.3e} before the change of representation basis")
    if timings:
        report.timings = clock
    return report


def run_all(config=DEFAULT, dims=(2, 3, 4), timings=False):
    """:class:`RunReport` for every catalog sample, in catalog order."""
    return [run_algebra(d, config, timings) for d in sample_descriptors()
            if d.dim in dims]


def reports_to_json(reports):
    doc = {"version": __version__, "passed": all(r.passed for r in reports),
           "reports": [r.to_dict() for r in reports]}
    return json.dumps(doc, indent=2, sort_keys=False)
