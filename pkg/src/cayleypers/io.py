"""Text formats: ``.fsc`` filtrations, weighted-point CSV, JSON and SVG.

``.fsc`` is line oriented. ``#`` starts a comment. Recognized lines::

    field 3
    grading 2                 # standard grading of Z^2
    generator 1 1             # optional, replaces the standard generators
    grid 0 0 .. 2 3           # optional, defaults to the bounding box
    simplex 0 1 @ 1 2         # vertices @ grade

or, for a stage sequence::

    stage 0
    simplex 0 1 2             # ungraded, faces added automatically
    stage 1
    simplex 0 1
    map 0 1 : 0->0 1->1 2->1
"""

from __future__ import annotations

import csv
import io
import json
from importlib import resources
from typing import Dict, Iterable, List, Optional, Sequence, Union
from xml.sax.saxutils import escape

from .complex import FilteredComplex, StageSequence, WeightedPointCloud, closure
from .grading import BOTTOM, TOP, CayleyGrading, is_extreme

SCHEMA_KEYS = ("barcodes", "betti_table", "cup_reports", "duality_reports", "generators", "relations")


class FscError(ValueError):
    def __init__(self, line: int, msg: str):
        super().__init__(f"line {line}: {msg}")
        self.line = line


class PointsError(ValueError):
    pass


class UnsupportedError(ValueError):
    pass


def _ints(tokens: Sequence[str], lineno: int, what: str) -> List[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise FscError(lineno, f"{what} must be integers, got {' '.join(tokens)!r}") from None


def parse_fsc(text: str) -> Union[FilteredComplex, StageSequence]:
    """Parse ``.fsc`` text into a filtration or a stage sequence.

    Face monotonicity is not checked here; run
    :func:`cayleypers.complex.validate` on the result.
    """
    field = None
    arity = None
    gens: List[tuple] = []
    grid = None
    grades: Dict[tuple, tuple] = {}
    stages: Dict[int, List[tuple]] = {}
    maps: Dict[int, Dict[int, int]] = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split()
        if head == "field":
            if len(rest) != 1:
                raise FscError(lineno, "expected 'field P'")
            field = _ints(rest, lineno, "field")[0]
        elif head == "grading":
            if len(rest) != 1:
                raise FscError(lineno, "expected 'grading N'")
            arity = _ints(rest, lineno, "arity")[0]
            if arity < 1:
                raise FscError(lineno, "arity must be positive")
        elif head == "generator":
            g = tuple(_ints(rest, lineno, "generator"))
            if arity is None or len(g) != arity:
                raise FscError(lineno, f"generator {g} does not match the grading arity")
            gens.append(g)
        elif head == "grid":
            if ".." not in rest:
                raise FscError(lineno, "expected 'grid LO .. HI'")
            k = rest.index("..")
            lo, hi = _ints(rest[:k], lineno, "grid"), _ints(rest[k + 1:], lineno, "grid")
            if arity is None or len(lo) != arity or len(hi) != arity:
                raise FscError(lineno, "grid bounds do not match the grading arity")
            grid = (tuple(lo), tuple(hi))
        elif head == "simplex":
            if current is not None:
                if "@" in rest:
                    raise FscError(lineno, "stage simplices take no grade")
                verts = _ints(rest, lineno, "vertices")
                if not verts or len(set(verts)) != len(verts):
                    raise FscError(lineno, "a simplex needs distinct vertices")
                stages[current].append(tuple(sorted(verts)))
                continue
            if "@" not in rest:
                raise FscError(lineno, "expected 'simplex v0 .. vk @ g1 .. gN'")
            if arity is None:
                raise FscError(lineno, "'grading N' must precede graded simplices")
            k = rest.index("@")
            verts = _ints(rest[:k], lineno, "vertices")
            grade = tuple(_ints(rest[k + 1:], lineno, "grade"))
            if not verts or len(set(verts)) != len(verts) or min(verts) < 0:
                raise FscError(lineno, "a simplex needs distinct nonnegative vertices")
            if len(grade) != arity:
                raise FscError(lineno, f"grade {grade} does not have arity {arity}")
            s = tuple(sorted(verts))
            if s in grades:
                raise FscError(lineno, f"simplex {s} listed twice")
            grades[s] = grade
        elif head == "stage":
            if grades:
                raise FscError(lineno, "cannot mix graded simplices and stages")
            i = _ints(rest, lineno, "stage index")
            if len(i) != 1 or i[0] != len(stages):
                raise FscError(lineno, "stages must be numbered 0, 1, ... in order")
            current = i[0]
            stages[current] = []
        elif head == "map":
            if ":" not in rest:
                raise FscError(lineno, "expected 'map I J : v->w ...'")
            k = rest.index(":")
            ij = _ints(rest[:k], lineno, "stage indices")
            if len(ij) != 2 or ij[1] != ij[0] + 1:
                raise FscError(lineno, "maps must join consecutive stages 'map I I+1'")
            vmap = {}
            for tok in rest[k + 1:]:
                if "->" not in tok:
                    raise FscError(lineno, f"bad map entry {tok!r}")
                v, w = _ints(tok.split("->"), lineno, "map entry")
                vmap[v] = w
            maps[ij[0]] = vmap
            current = None
        else:
            raise FscError(lineno, f"unknown directive {head!r}")
    if stages:
        if set(maps) != set(range(len(stages) - 1)):
            raise FscError(0, "every pair of consecutive stages needs a map")
        return StageSequence([closure(stages[i]) for i in range(len(stages))],
                             [maps[i] for i in range(len(stages) - 1)], field)
    if arity is None:
        raise FscError(0, "missing 'grading N'")
    grading = CayleyGrading(arity, tuple(gens)) if gens else CayleyGrading.standard(arity)
    return FilteredComplex(grading, grades, grid, field)


def emit_fsc(obj: Union[FilteredComplex, StageSequence]) -> str:
    out = []
    if getattr(obj, "field", None):
        out.append(f"field {obj.field}")
    if isinstance(obj, StageSequence):
        for i, st in enumerate(obj.stages):
            out.append(f"stage {i}")
            out.extend("simplex " + " ".join(map(str, s)) for s in st)
            if i < len(obj.maps):
                entries = " ".join(f"{v}->{w}" for v, w in sorted(obj.maps[i].items()))
                out.append(f"map {i} {i + 1} : {entries}")
        return "\n".join(out) + "\n"
    g = obj.grading
    out.append(f"grading {g.arity}")
    if not g.is_standard:
        out.extend("generator " + " ".join(map(str, x)) for x in g.generators)
    lo, hi = obj.grid
    out.append("grid " + " ".join(map(str, lo)) + " .. " + " ".join(map(str, hi)))
    for s in obj.simplices:
        out.append("simplex " + " ".join(map(str, s)) + " @ " + " ".join(map(str, obj.grades[s])))
    return "\n".join(out) + "\n"


def fixture_path(name: str):
    """Path of a data file shipped in ``cayleypers/fixtures``."""
    return resources.files("cayleypers") / "fixtures" / name


def load_fixture(name: str) -> Union[FilteredComplex, StageSequence]:
    return parse_fsc(fixture_path(name).read_text(encoding="utf-8"))


def parse_points(text: str) -> WeightedPointCloud:
    """Rows ``x1,...,xd,weight``; a non-numeric first row is a header."""
    rows = [r for r in csv.reader(io.StringIO(text)) if r and any(c.strip() for c in r)]
    data = []
    width = None
    for i, row in enumerate(rows, 1):
        try:
            vals = [float(c) for c in row]
        except ValueError:
            if i == 1 and not data:
                continue
            bad = next(j for j, c in enumerate(row, 1) if not _is_float(c))
            raise PointsError(f"row {i}, column {bad}: {row[bad - 1]!r} is not a number") from None
        if len(vals) < 2:
            raise PointsError(f"row {i}: need at least one coordinate and a weight")
        if width is None:
            width = len(vals)
        elif len(vals) != width:
            raise PointsError(f"row {i}: expected {width} cells, got {len(vals)}")
        data.append(vals)
    if not data:
        return WeightedPointCloud([], [])
    return WeightedPointCloud([r[:-1] for r in data], [r[-1] for r in data])


def _is_float(s: str) -> bool:
    try:
        float(s)
        return True
    except ValueError:
        return False


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------


def empty_result(meta: Optional[dict] = None) -> dict:
    out = {k: [] for k in SCHEMA_KEYS}
    out["meta"] = dict(meta or {})
    return out


def emit_json(result: dict) -> bytes:
    full = empty_result()
    full.update(result)
    return (json.dumps(_plain(full), sort_keys=True, indent=2) + "\n").encode("utf-8")


def _plain(x):
    import numpy as np
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, np.ndarray):
        return [_plain(v) for v in x.tolist()]
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.bool_):
        return bool(x)
    if is_extreme(x):
        return str(x)
    return x


def presentation_json(pres) -> dict:
    gens = [{"id": g.id, "dim": pres.dim, "grade": list(g.grade), "theory": pres.theory, "free": g.free,
             "representative": [int(c) for c in g.rep]} for g in pres.generators]
    rels = []
    for r in pres.relations:
        rels.append({"dim": pres.dim, "grade": list(r.grade), "theory": pres.theory,
                     "terms": [{"generator": gid, "coeff": c, "shift": list(sh)} for gid, c, sh in r.terms(pres)],
                     "merge": list(r.merge) if r.merge else None})
    return {"generators": gens, "relations": rels}


def _bar_end(x, fallback: int, infinite: bool):
    if is_extreme(x):
        return str(x) if infinite else fallback
    return int(x[0])


def barcode_json(bars: Iterable, grid, infinite: bool = False) -> List[dict]:
    lo, hi = grid[0][0], grid[1][0]
    out = []
    for bar in bars:
        out.append({"id": bar.id, "dim": bar.dim, "theory": bar.theory,
                    "birth": _bar_end(bar.birth, lo, infinite), "death": _bar_end(bar.death, hi, infinite),
                    "alive": [bar.first, bar.last],
                    "grade": list(bar.grade) if bar.grade is not None else None})
    return out


def product_json(ps, grid, infinite: bool = False) -> dict:
    lo, hi = grid[0][0], grid[1][0]
    d = {"factors": [list(ps.i), list(ps.j)], "trivial": ps.trivial,
         "grade": list(ps.grade) if ps.grade is not None else None}
    if not ps.trivial:
        d.update({"birth": _bar_end(ps.birth, lo, infinite), "death": _bar_end(ps.death, hi, infinite),
                  "coefficients": {str(k): v for k, v in sorted(ps.coefficients.items())},
                  "upper_bound": [_bar_end(x, hi, infinite) for x in ps.upper],
                  "lower_bound": [_bar_end(x, lo, infinite) for x in ps.lower],
                  "holds": ps.holds})
    return d


def cup_report_json(rep) -> dict:
    return {"a": list(rep.a), "b": list(rep.b), "dims": {str(k): v for k, v in rep.dims.items()},
            "cup_number": rep.cup_number, "convention": rep.convention, "consistent": rep.consistent}


def duality_json(rep) -> dict:
    return {"a": list(rep.a), "b": list(rep.b), "n": rep.n, "lambda": rep.lam, "case": rep.case,
            "betti_cohomology": {str(k): v for k, v in rep.betti_cohomology.items()},
            "betti_homology": {str(k): v for k, v in rep.betti_homology.items()},
            "betti_at_a": {str(k): v for k, v in rep.betti_at_a.items()},
            "cobetti_at_a": {str(k): v for k, v in rep.cobetti_at_a.items()},
            "bijective": {str(k): v for k, v in rep.bijective.items()},
            "witnesses": {str(k): v for k, v in rep.witnesses.items()},
            "top_cup_space": rep.top_cup_space,
            "inequalities": {k: {str(p): ok for p, ok in v.items()} for k, v in rep.inequalities.items()},
            "holds": rep.holds}


# ---------------------------------------------------------------------------
# SVG
# ---------------------------------------------------------------------------


def emit_svg(bars: Sequence, grid=None, title: str = "") -> bytes:
    """One labeled horizontal bar per interval; infinite ends get arrowheads."""
    bars = list(bars)
    if grid is None:
        ends = [e for b in bars for e in (b.first, b.last)] or [0]
        grid = ((min(ends),), (max(ends),))
    if len(grid[0]) != 1:
        raise UnsupportedError("SVG barcodes need a one-parameter grid")
    lo, hi = grid[0][0], grid[1][0]
    span = max(hi - lo, 1)
    left, width, row = 140, 400, 24
    height = 50 + row * len(bars)
    x = lambda t: left + width * (t - lo) / span  # noqa: E731
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{left + width + 40}" height="{height}" '
           f'viewBox="0 0 {left + width + 40} {height}">',
           f'<text x="10" y="18" font-family="monospace" font-size="13">{escape(title)}</text>']
    for t in range(lo, hi + 1):
        out.append(f'<line x1="{x(t):.1f}" y1="26" x2="{x(t):.1f}" y2="{height - 8}" stroke="#ddd"/>')
        out.append(f'<text x="{x(t):.1f}" y="{height - 1}" font-family="monospace" font-size="10" '
                   f'text-anchor="middle">{t}</text>')
    for k, b in enumerate(bars):
        y = 40 + row * k
        b0 = lo if is_extreme(b.birth) else b.birth[0]
        d0 = hi if is_extreme(b.death) else b.death[0]
        kind = "H^" if b.theory == "cohomology" else "H_"
        label = f"{kind}{b.dim} #{b.id} [{b.birth if is_extreme(b.birth) else b0}, {b.death if is_extreme(b.death) else d0}]"
        out.append(f'<text x="10" y="{y + 4}" font-family="monospace" font-size="11">{escape(label)}</text>')
        out.append(f'<line x1="{x(b0):.1f}" y1="{y}" x2="{x(d0):.1f}" y2="{y}" stroke="#246" stroke-width="6"/>')
        if b.birth is BOTTOM:
            out.append(f'<polygon points="{x(b0) - 10:.1f},{y} {x(b0):.1f},{y - 6} {x(b0):.1f},{y + 6}" fill="#246"/>')
        if b.death is TOP:
            out.append(f'<polygon points="{x(d0) + 10:.1f},{y} {x(d0):.1f},{y - 6} {x(d0):.1f},{y + 6}" fill="#246"/>')
    out.append("</svg>")
    return ("\n".join(out) + "\n").encode("utf-8")
