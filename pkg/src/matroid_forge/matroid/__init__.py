from .core import (BasisMatroid, BudgetError, CircuitMatroid, LinearMatroid, Matroid, MinorMatroid,
                   MinorSpec, bits, circuit_masks, circuits, closure_of, coloops, corank, covers,
                   epsilon, flat_levels, flats, girth, hyperplane_masks, is_simple, line_point_counts,
                   lines, loops, minor, parallel_classes, popcount, rank, si, simplify, uniform)
from .graphs import FrameMatroid, LiftMatroid
from .search import (find_embedding, find_minor, find_representation, has_line_minor, has_minor,
                     is_isomorphic, max_line_minor)
from .catalog import (DirectSum, Relabeled, complete_graphic, fano, free_matroid, free_spike, graphic,
                      projective_geometry, random_linear)
from .io import format_matroid, parse_matroid

__all__ = [name for name in dir() if not name.startswith("_")]
