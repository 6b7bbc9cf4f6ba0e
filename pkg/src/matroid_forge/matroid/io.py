"""Matroid exchange text format."""
from __future__ import annotations

from ..glgraph import (GroupLabeledGraph, format_biased, format_glgraph,
                       parse_biased, parse_glgraph)
from ..labels import GeometryLabel
from .core import BasisMatroid, CircuitMatroid, LinearMatroid, Matroid, circuit_masks
from .graphs import FrameMatroid, LiftMatroid


def _ids(m: Matroid, mask: int) -> str:
    return " ".join(str(e) for e in sorted(m.elements(mask)))


def format_matroid(m: Matroid, label: GeometryLabel | None = None) -> str:
    backend = m.backend
    if backend not in ("circuits", "bases", "linear", "frame", "lift", "lift+"):
        backend = "circuits"
    out = [f"matroid {m.n} {m.r} {backend}"]
    if label is not None:
        label.check(m.n)
        out.append("# label " + " ".join([f"kind={label.kind}"] + [f"{k}={v}" for k, v in label.params]))
        for e, tag in zip(m.ground, label.annotations):
            out.append(f"# elem {e} {tag}")
    if m.ground != tuple(range(m.n)):
        out.append("ground " + " ".join(map(str, m.ground)))
    if backend == "circuits":
        cs = sorted(circuit_masks(m), key=lambda c: (bin(c).count("1"), sorted(m.elements(c))))
        out += [_ids(m, c) for c in cs]
    elif backend == "bases":
        out += [_ids(m, b) for b in sorted(m.basis_masks, key=lambda b: sorted(m.elements(b)))]
    elif backend == "linear":
        out.append(f"field {m.q} {m.rows}")
        out += [" ".join(map(str, row)) for row in m.matrix()]
    else:
        g = m.graph
        block = format_glgraph(g) if isinstance(g, GroupLabeledGraph) else format_biased(g)
        out.append(block.rstrip("\n"))
    return "\n".join(out) + "\n"


def parse_matroid(text: str):
    """Returns (matroid, label or None)."""
    lines = text.splitlines()
    if not lines:
        raise ValueError("empty matroid text")
    head = lines[0].split()
    if len(head) != 4 or head[0] != "matroid":
        raise ValueError("line 1: expected 'matroid <n> <rank> <backend>'")
    try:
        n, rank = int(head[1]), int(head[2])
    except ValueError:
        raise ValueError("line 1: size and rank must be integers") from None
    backend = head[3]
    kind = None
    params = []
    tags = {}
    body = []
    ground = list(range(n))
    for lineno, ln in enumerate(lines[1:], start=2):
        s = ln.strip()
        if s.startswith("# label"):
            for tok in s[len("# label"):].split():
                k, sep, v = tok.partition("=")
                if not sep:
                    raise ValueError(f"line {lineno}: bad label token {tok!r}")
                if k == "kind":
                    kind = v
                else:
                    params.append((k, v))
        elif s.startswith("# elem"):
            parts = s.split()
            if len(parts) != 4:
                raise ValueError(f"line {lineno}: expected '# elem <id> <tag>'")
            tags[int(parts[2])] = parts[3]
        elif s.startswith("#"):
            continue
        elif s.startswith("ground") and not body:
            ground = [int(x) for x in s.split()[1:]]
        else:
            body.append((lineno, ln))
    if len(ground) != n:
        raise ValueError(f"ground line lists {len(ground)} ids, header says {n}")

    def ints(lineno, ln):
        try:
            return [int(x) for x in ln.split()]
        except ValueError:
            raise ValueError(f"line {lineno}: non-integer token") from None

    if backend == "circuits":
        m = CircuitMatroid(ground, [ints(*b) for b in body if b[1].strip()])
    elif backend == "bases":
        m = BasisMatroid(ground, [ints(*b) for b in body])
    elif backend == "linear":
        if not body:
            raise ValueError("linear backend needs a 'field <q> <rows>' line")
        lineno, ln = body[0]
        parts = ln.split()
        if len(parts) != 3 or parts[0] != "field":
            raise ValueError(f"line {lineno}: expected 'field <q> <rows>'")
        q, rows = int(parts[1]), int(parts[2])
        matrix = [ints(*b) for b in body[1:]]
        if len(matrix) != rows or any(len(r) != n for r in matrix):
            raise ValueError(f"expected a {rows} x {n} matrix")
        cols = [[matrix[i][j] for i in range(rows)] for j in range(n)]
        m = LinearMatroid(cols, q, ground=ground, rows=rows)
    elif backend in ("frame", "lift", "lift+"):
        block = "\n".join(ln for _, ln in body) + "\n"
        g = parse_glgraph(block) if block.lstrip().startswith("glgraph") else parse_biased(block)
        m = FrameMatroid(g) if backend == "frame" else LiftMatroid(g, extended=backend == "lift+")
        if list(m.ground) != ground:
            raise ValueError("graph backends use ids 0..n-1")
    else:
        raise ValueError(f"unknown backend {backend!r}")
    if m.n != n:
        raise ValueError(f"header says {n} elements, body gives {m.n}")
    if m.r != rank:
        raise ValueError(f"header says rank {rank}, body gives {m.r}")
    label = None
    if kind is not None:
        ann = tuple(tags[e] for e in m.ground) if tags else ()
        label = GeometryLabel(kind, tuple(params), ann)
        label.check(m.n)
    return m, label
