"""Instance generators: n-queens, padded pigeonhole, model-B random binary CSPs and graph colouring."""
import logging
import math
from itertools import combinations
from typing import Optional

import numpy as np

from backjump.config import settings
from backjump.models.model import ConstraintKind, ConstraintSpec, InvalidModelError, ModelFile, VariableDecl

logger = logging.getLogger(__name__)


def _range_var(name: str, lo: int, hi: int) -> VariableDecl:
    return VariableDecl(name=name, values=list(range(lo, hi + 1)), is_range=True)


def _offset(kind: ConstraintKind, x: str, y: str, c: int) -> ConstraintSpec:
    return ConstraintSpec(kind=kind, scope=[x, y], constant=c)


def gen_queens(n: int) -> ModelFile:
    """q_i is the row of the queen in column i; rows and both diagonals pairwise distinct."""
    if n < 1:
        raise InvalidModelError(f"queens: n must be positive, got {n}")
    names = [f"q{i}" for i in range(n)]
    variables = [_range_var(name, 1, n) for name in names]
    constraints = []
    if n > 1:
        constraints.append(ConstraintSpec(kind=ConstraintKind.alldifferent, scope=names))
    for i, j in combinations(range(n), 2):
        constraints.append(_offset(ConstraintKind.neq, names[i], names[j], j - i))
        constraints.append(_offset(ConstraintKind.neq, names[i], names[j], i - j))
    return ModelFile(variables=variables, constraints=constraints, name=f"queens-{n}").check()


def gen_pigeonhole(pigeons: int, holes: int, padding: int = 0) -> ModelFile:
    """
    `pigeons` variables over 1..holes, pairwise distinct, plus `padding` 0/1 variables.

    Padding variables come right after the first pigeon in declaration order and are
    coupled two by two by a constraint that always holds, so they never take part
    in a conflict between pigeons.
    """
    if pigeons < 1 or holes < 1 or padding < 0:
        raise InvalidModelError(f"pigeon: invalid parameters {pigeons},{holes},{padding}")
    pigeon_names = [f"p{i}" for i in range(pigeons)]
    pad_names = [f"pad{i}" for i in range(padding)]
    variables = [_range_var(pigeon_names[0], 1, holes)]
    variables += [_range_var(name, 0, 1) for name in pad_names]
    variables += [_range_var(name, 1, holes) for name in pigeon_names[1:]]
    constraints = []
    if pigeons > 1:
        constraints.append(ConstraintSpec(kind=ConstraintKind.alldifferent, scope=pigeon_names))
    for i in range(0, padding - 1, 2):
        constraints.append(_offset(ConstraintKind.leq, pad_names[i], pad_names[i + 1], 1))
    return ModelFile(variables=variables, constraints=constraints,
                     name=f"pigeon-{pigeons}-{holes}-{padding}").check()


def _ceil(x: float) -> int:
    # 0.3 * 10 is 3.0000000000000004 in binary floating point
    return math.ceil(round(x, 9))


def gen_randcsp(n: int, d: int, p1: float, p2: float, seed: Optional[int] = None) -> ModelFile:
    """
    Model-B random binary CSP over x0..x{n-1} with domains 0..d-1.

    Exactly ceil(p1·n(n-1)/2) distinct pairs are constrained, each forbidding exactly
    ceil(p2·d²) distinct tuples. Randomness comes from numpy's PCG64; every pair
    draws its tuples from its own child of the instance SeedSequence, so the
    instance depends only on the parameters and the seed.
    """
    if n < 2 or d < 1:
        raise InvalidModelError(f"randcsp: need n >= 2 and d >= 1, got n={n}, d={d}")
    if not (0 <= p1 <= 1 and 0 <= p2 <= 1):
        raise InvalidModelError(f"randcsp: densities must lie in [0, 1], got {p1}, {p2}")
    if seed is None:
        seed = settings.eser_seed
    logger.debug("randcsp n=%d d=%d p1=%s p2=%s seed=%d", n, d, p1, p2, seed)

    pairs = list(combinations(range(n), 2))
    n_pairs = _ceil(p1 * len(pairs))
    n_tuples = _ceil(p2 * d * d)
    root = np.random.SeedSequence(seed)
    pair_seq, *tuple_seqs = root.spawn(n_pairs + 1)
    rng = np.random.Generator(np.random.PCG64(pair_seq))
    chosen = sorted(rng.choice(len(pairs), size=n_pairs, replace=False).tolist())

    names = [f"x{i}" for i in range(n)]
    variables = [_range_var(name, 0, d - 1) for name in names]
    constraints = []
    for k, pair_index in enumerate(chosen):
        i, j = pairs[pair_index]
        pair_rng = np.random.Generator(np.random.PCG64(tuple_seqs[k]))
        cells = sorted(pair_rng.choice(d * d, size=n_tuples, replace=False).tolist())
        tuples = [(c // d, c % d) for c in cells]
        if tuples:
            constraints.append(ConstraintSpec(kind=ConstraintKind.forbidden,
                                              scope=[names[i], names[j]], tuples=tuples))
    return ModelFile(variables=variables, constraints=constraints,
                     name=f"randcsp-{n}-{d}-{p1}-{p2}-{seed}").check()


def parse_dimacs_graph(text: str) -> tuple[int, list[tuple[int, int]]]:
    """Read a DIMACS `p edge` graph; vertices are numbered from 1."""
    n_vertices = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        fields = raw.split()
        if not fields or fields[0] == "c":
            continue
        if fields[0] == "p":
            if len(fields) < 4 or fields[1] not in ("edge", "col"):
                raise InvalidModelError(f"line {lineno}: expected 'p edge <vertices> <edges>'")
            n_vertices = int(fields[2])
        elif fields[0] == "e":
            if n_vertices is None:
                raise InvalidModelError(f"line {lineno}: edge before the 'p' line")
            u, v = int(fields[1]), int(fields[2])
            if not (1 <= u <= n_vertices and 1 <= v <= n_vertices):
                raise InvalidModelError(f"line {lineno}: vertex out of range")
            edges.append((u, v))
        else:
            raise InvalidModelError(f"line {lineno}: unknown line type {fields[0]!r}")
    if n_vertices is None:
        raise InvalidModelError("missing 'p edge' line")
    return n_vertices, edges


def gen_coloring(graph: str, k: int, name: str = "coloring") -> ModelFile:
    """k-colouring of a DIMACS graph given as text; adjacent vertices take different colours."""
    if k < 1:
        raise InvalidModelError(f"coloring: k must be positive, got {k}")
    n_vertices, edges = parse_dimacs_graph(graph)
    names = [f"c{i}" for i in range(1, n_vertices + 1)]
    variables = [_range_var(v, 0, k - 1) for v in names]
    seen = set()
    constraints = []
    for u, v in edges:
        if u == v:
            raise InvalidModelError(f"coloring: self-loop on vertex {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            continue
        seen.add(key)
        constraints.append(_offset(ConstraintKind.neq, names[key[0] - 1], names[key[1] - 1], 0))
    return ModelFile(variables=variables, constraints=constraints, name=f"{name}-{k}").check()


def generate(spec: str) -> ModelFile:
    """
    Build an instance from a generator spec string:
    queens:N, pigeon:P,H,K, randcsp:N,D,P1,P2[,SEED] or coloring:FILE,K.
    """
    family, _, params = spec.partition(":")
    args = [a.strip() for a in params.split(",")] if params else []
    try:
        if family == "queens" and len(args) == 1:
            return gen_queens(int(args[0]))
        if family == "pigeon" and len(args) in (2, 3):
            return gen_pigeonhole(*(int(a) for a in args))
        if family == "randcsp" and len(args) in (4, 5):
            seed = int(args[4]) if len(args) == 5 else None
            return gen_randcsp(int(args[0]), int(args[1]), float(args[2]), float(args[3]), seed)
        if family == "coloring" and len(args) == 2:
            with open(args[0], encoding="utf-8") as f:
                graph = f.read()
            stem = args[0].replace("\\", "/").rsplit("/", 1)[-1].rsplit(".", 1)[0]
            return gen_coloring(graph, int(args[1]), stem)
    except (TypeError, ValueError) as exc:
        if isinstance(exc, InvalidModelError):
            raise
        raise InvalidModelError(f"bad generator spec {spec!r}: {exc}") from exc
    raise InvalidModelError(f"unknown generator spec {spec!r}")
