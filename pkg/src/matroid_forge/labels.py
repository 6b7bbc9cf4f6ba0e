from __future__ import annotations

from dataclasses import dataclass, field

KINDS = ("DG", "DGminus", "LG", "LGplus", "MKn", "PG", "cyclicDowlingMatrix", "Reid")


@dataclass(frozen=True)
class GeometryLabel:
    """What a constructed matroid is, with one tag per element when it comes from a graph.

    Tags look like ``loop:i``, ``edge:i,j,g`` (edge i->j labeled g) or ``e0``.
    """

    kind: str
    params: tuple[tuple[str, str], ...] = ()
    annotations: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown geometry kind {self.kind!r}")
        object.__setattr__(self, "params", tuple((str(k), str(v)) for k, v in self.params))
        for k, v in self.params:
            if not k or any(c.isspace() or c == "=" for c in k + v):
                raise ValueError(f"bad label parameter {k}={v}")

    def param(self, key, default=None):
        return dict(self.params).get(key, default)

    def check(self, ground_size: int):
        if self.annotations and len(self.annotations) != ground_size:
            raise ValueError("annotation count does not match ground size")
