"""End-to-end runs and the invariance checks built on them."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .arcsys import DiagramError, apply_braid, arc_slide, reference_system
from .braid import BraidWord, apply_handedness, parse
from .complex import GradingError, check_n, normalize_name
from .differential import Complex, assemble, verify_d_squared
from .homology import GradingShiftError, HomologyTable, compare_tables, graded_homology


@dataclass
class Run:
    braid: BraidWord
    handedness: str
    n: int
    complex: Complex

    @property
    def diagram(self):
        return self.complex.diagram

    @cached_property
    def d_squared(self):
        return verify_d_squared(self.complex)

    @cached_property
    def gradings(self):
        """{name: GradingValue} or None when the grading relations are inconsistent."""
        if self.complex.grading_error is not None:
            return None
        return {g.name: v for g, v in self.complex.gradings.items()}

    @cached_property
    def table(self) -> HomologyTable | None:
        if self.gradings is None:
            return None
        cx = self.complex
        grade = {i: self.gradings[g.name].lift for i, g in enumerate(cx.generators)}
        try:
            return graded_homology(cx.generators, cx.matrix(), grade)
        except GradingShiftError:
            return None

    @property
    def partial(self) -> bool:
        return self.complex.partial or self.table is None

    def relations(self) -> dict:
        return self.complex.relations_text()


def compute(braid, strands: int | None = None, n: int = 7, handedness: str = "left",
            allow_n3: bool = False, diagram=None) -> Run:
    """Braid text or word -> diagram -> complex, with lazily derived results."""
    check_n(n, allow_n3)
    b = parse(braid, strands) if isinstance(braid, str) else braid
    if diagram is None:
        diagram = apply_braid(reference_system(b.strands), apply_handedness(b, handedness))
    return Run(b, handedness, n, assemble(diagram, n))


def _names(name: str) -> list[str]:
    return [p for p in normalize_name(name).strip("{}").split(",") if p]


def stabilization_map(name: str, k: int) -> str:
    """Generator bijection onto the stabilized complex.

    Tuples through the top endpoint of the last strand gain the new top
    endpoint; all others gain the new puncture endpoint.
    """
    parts = _names(name)
    extra = f"x{k + 1}" if f"x{k}" in parts else f"z{k + 1}"
    return normalize_name("{" + ",".join(parts + [extra]) + "}")


def front_stabilize(b: BraidWord, sign: int = 1) -> BraidWord:
    """Stabilization with the new letter first; a cyclic rotation of the appended form."""
    return BraidWord(b.strands + 1, (sign * b.strands,) + b.letters)


def stabilize_check(b: BraidWord, n: int = 7, handedness: str = "left", sign: int = 1) -> dict:
    before = compute(b, n=n, handedness=handedness)
    after = compute(front_stabilize(b, sign), n=n, handedness=handedness)
    k = b.strands
    old = [g.name for g in before.complex.generators]
    new = {g.name for g in after.complex.generators}
    image = {g: stabilization_map(g, k) for g in old}
    bijection = len(set(image.values())) == len(old) and set(image.values()) == new
    report = {"braid": str(b), "stabilized": str(front_stabilize(b, sign)), "sign": sign,
              "bijection": bijection, "generators": [len(old), len(new)],
              "unknown": len(after.complex.unknown), "partial": after.partial}
    if bijection and before.gradings is not None and after.gradings is not None:
        shifts = {after.gradings[image[g]] - before.gradings[g] for g in old}
        report["gradings_preserved"] = len(shifts) <= 1
    else:
        report["gradings_preserved"] = None
    if before.table is not None and after.table is not None and not after.complex.unknown:
        report["homology"] = compare_tables(before.table, after.table)
    else:
        report["homology"] = None
    if sign == 1:
        report["passed"] = bool(bijection and report["gradings_preserved"]
                                and (report["homology"] is None or report["homology"]["match"]))
    else:
        # the name bijection is built for the positive stabilization only
        report["passed"] = None if report["homology"] is None else report["homology"]["match"]
    return report


def arc_slide_check(b: BraidWord, n: int = 7, handedness: str = "left", i: int = 1,
                    j: int = 2) -> dict:
    before = compute(b, n=n, handedness=handedness)
    eff = apply_handedness(b, handedness)
    report = {"braid": str(b), "slide": [i, j]}
    try:
        slid = arc_slide(before.diagram, i, j, eff)
        after = compute(b, n=n, handedness=handedness, diagram=slid)
        after.table
    except (DiagramError, GradingError, RuntimeError) as exc:
        report.update(passed=None, unresolved=str(exc))
        return report
    report["generators"] = [len(before.complex.generators), len(after.complex.generators)]
    report["unknown"] = [u.to_json() for u in after.complex.unknown]
    if before.table is None or after.table is None or after.complex.unknown:
        report.update(passed=None, unresolved="slid complex is partial")
        return report
    report["homology"] = compare_tables(before.table, after.table)
    report["passed"] = report["homology"]["match"]
    return report


def mirror_transpose(left: Run, right: Run) -> bool:
    """Right matrix equals the transpose of the left one with checks and hats swapped."""
    def swap(name):
        tr = str.maketrans({"v": "^", "^": "v"})
        return normalize_name(name.translate(tr))

    def entries(run):
        cx = run.complex
        return {(cx.generators[t].name, cx.generators[s].name) for (t, s) in cx.matrix()}
    lt = {(swap(s), swap(t)) for (t, s) in entries(left)}
    return lt == entries(right)
