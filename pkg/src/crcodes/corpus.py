"""Named code constructions and the reference corpus of completely regular codes."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .codes import Code
from .cosets import AdditiveCode, rifa_zinoviev
from .errors import ParameterOutOfRange
from .graphs import AntipodalMap, Graph, antipodal_map, generate


def hamming_code(r: int, q: int = 2) -> AdditiveCode:
    """Perfect Hamming code: parity-check columns are the normalised nonzero vectors of GF(q)^r."""
    cols = [v for v in itertools.product(range(q), repeat=r) if any(v) and v[next(i for i, x in enumerate(v) if x)] == 1]
    h = np.array(cols, dtype=np.int64).T
    return AdditiveCode.from_parity_check(h, q, name=f"Hamming[{h.shape[1]},{h.shape[1] - r}]_{q}")


def repetition_code(n: int, q: int = 2) -> AdditiveCode:
    return AdditiveCode.from_generators([[1] * n], q, name=f"repetition({n},{q})")


def even_weight_code(n: int, q: int = 2) -> AdditiveCode:
    """Words with digit sum 0 mod q (the even-weight code when q = 2)."""
    gens = [[1 if j == i else 0 for j in range(n - 1)] + [q - 1] for i in range(n - 1)]
    return AdditiveCode.from_generators(gens, q, n, name=f"even-weight({n},{q})")


def _set(text: str) -> list[int]:
    return sorted({int(x) for x in text.replace("{", "").replace("}", "").split(",") if x.strip()})


def _mask(s) -> int:
    return sum(1 << i for i in s)


def subsets_of(g: Graph, s) -> Code:
    """All vertices (subsets) contained in the set s."""
    m = _mask(s)
    vs = [v for v, key in enumerate(g.keys.tolist()) if key & ~m == 0]
    if not vs:
        raise ParameterOutOfRange(f"no vertex of {g.describe()} lies inside {sorted(s)}")
    return Code.from_vertices(g, vs, f"subsets of {{{','.join(map(str, s))}}}")


def containing(g: Graph, s) -> Code:
    """All vertices (subsets) containing the set s."""
    m = _mask(s)
    vs = [v for v, key in enumerate(g.keys.tolist()) if key & m == m]
    if not vs:
        raise ParameterOutOfRange(f"no vertex of {g.describe()} contains {sorted(s)}")
    return Code.from_vertices(g, vs, f"containing {{{','.join(map(str, s))}}}")


def antipodal_pair(g: Graph, v: int = 0) -> Code:
    pi = antipodal_map(g)
    if not isinstance(pi, AntipodalMap):
        raise ParameterOutOfRange(f"{g.describe()} is not an antipodal 2-cover: {pi.reason}")
    return Code.from_vertices(g, [v, pi(v)], "antipodal pair")


def _need_hamming(g: Graph, what: str) -> tuple[int, int]:
    if g.family != "hamming":
        raise ParameterOutOfRange(f"{what} lives in a Hamming graph, not {g.describe()}")
    return g.params


def named_code(g: Graph, spec: str) -> tuple[Code, AdditiveCode | None]:
    """Build a code from a generator name.

    Names: singleton[:v], antipodal-pair, repetition, even-weight,
    hamming-code, rifa-zinoviev:M:L, subsets-of:S, containing:S where S is
    a comma list such as 0,1,2,3.
    """
    name, _, arg = spec.partition(":")
    name = name.strip().lower().replace("_", "-")
    if name == "singleton":
        v = g.vertex(arg) if arg else 0
        return Code.from_vertices(g, [v], "singleton"), None
    if name == "antipodal-pair":
        return antipodal_pair(g), None
    if name in ("repetition", "even-weight", "hamming-code", "rifa-zinoviev"):
        n, q = _need_hamming(g, name)
        if name == "repetition":
            add = repetition_code(n, q)
        elif name == "even-weight":
            add = even_weight_code(n, q)
        elif name == "hamming-code":
            r = next((r for r in range(1, 21) if (q**r - 1) // (q - 1) == n), None)
            if r is None:
                raise ParameterOutOfRange(f"no Hamming code has length {n} over GF({q})")
            add = hamming_code(r, q)
        else:
            try:
                m, l = (int(x) for x in arg.split(":"))
            except ValueError:
                raise ParameterOutOfRange("use rifa-zinoviev:M:L") from None
            add = rifa_zinoviev(m, l)
            if (add.n, add.q) != (n, q):
                raise ParameterOutOfRange(f"RZ({m},{l}) has length {add.n}; the graph is hamming({n},{q})")
        return add.as_code(g), add
    if name in ("subsets-of", "containing"):
        if g.family not in ("johnson", "doubled_odd"):
            raise ParameterOutOfRange(f"{name} needs a set-type graph, not {g.describe()}")
        s = _set(arg)
        return (subsets_of if name == "subsets-of" else containing)(g, s), None
    raise ParameterOutOfRange(f"unknown code generator {spec!r}")


# ---------------------------------------------------------------------------
# reference corpus


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    graph: tuple  # (family, *params) for graphs.generate
    code: str  # generator name for named_code, or "words:" followed by codewords
    tags: tuple[str, ...] = ()

    def build(self) -> tuple[Graph, Code, AdditiveCode | None]:
        g = _graph(self.graph)
        if self.code.startswith("words:"):
            c = Code.from_words(g, self.code[len("words:"):].split(), self.name)
            return g, c, None
        c, add = named_code(g, self.code)
        return g, Code(g, c.vertices, self.name), add


_GRAPHS: dict[tuple, Graph] = {}


def _graph(key: tuple) -> Graph:
    if key not in _GRAPHS:
        _GRAPHS[key] = generate(*key)
    return _GRAPHS[key]


CORPUS: tuple[CorpusEntry, ...] = (
    CorpusEntry("singleton H(3,2)", ("hamming", 3, 2), "singleton", ("singleton",)),
    CorpusEntry("singleton H(4,2)", ("hamming", 4, 2), "singleton", ("singleton",)),
    CorpusEntry("singleton H(3,3)", ("hamming", 3, 3), "singleton", ("singleton",)),
    CorpusEntry("singleton J(5,2)", ("johnson", 5, 2), "singleton", ("singleton",)),
    CorpusEntry("singleton J(6,3)", ("johnson", 6, 3), "singleton", ("singleton",)),
    CorpusEntry("singleton halved 6-cube", ("halved_cube", 6), "singleton", ("singleton", "halved")),
    CorpusEntry("singleton folded 6-cube", ("folded_cube", 6), "singleton", ("singleton", "folded")),
    CorpusEntry("singleton Desargues", ("doubled_odd", 3), "singleton", ("singleton",)),
    CorpusEntry("singleton pentagon", ("cycle", 5), "singleton", ("singleton", "irrational")),
    *(CorpusEntry(f"repetition H({n},2)", ("hamming", n, 2), "repetition", ("repetition", "additive"))
      for n in range(2, 9)),
    CorpusEntry("repetition H(3,3)", ("hamming", 3, 3), "repetition", ("repetition", "additive")),
    CorpusEntry("Hamming [7,4]", ("hamming", 7, 2), "hamming-code", ("perfect", "additive")),
    CorpusEntry("ternary Hamming [4,2]", ("hamming", 4, 3), "hamming-code", ("perfect", "additive")),
    *(CorpusEntry(f"RZ({m},2)", ("hamming", m * (m - 1) // 2, 2), f"rifa-zinoviev:{m}:2", ("rz", "additive"))
      for m in (4, 5, 6)),
    CorpusEntry("even-weight H(4,2)", ("hamming", 4, 2), "even-weight", ("additive",)),
    CorpusEntry("even-weight H(6,2)", ("hamming", 6, 2), "even-weight", ("additive",)),
    CorpusEntry("product of repetition codes H(6,2)", ("hamming", 6, 2),
                "words: 000000 000111 111000 111111", ("product",)),
    CorpusEntry("subsets of a 4-set in J(5,2)", ("johnson", 5, 2), "subsets-of:0,1,2,3", ("johnson",)),
    CorpusEntry("pairs through a point in J(6,2)", ("johnson", 6, 2), "containing:0", ("johnson",)),
    CorpusEntry("triples inside a 4-set in J(7,3)", ("johnson", 7, 3), "subsets-of:0,1,2,3", ("johnson",)),
    CorpusEntry("antipodal pair Desargues", ("doubled_odd", 3), "antipodal-pair", ("antipodal",)),
    CorpusEntry("antipodal pair halved 6-cube", ("halved_cube", 6), "antipodal-pair", ("antipodal", "halved")),
    CorpusEntry("antipodal pair J(6,3)", ("johnson", 6, 3), "antipodal-pair", ("antipodal",)),
    CorpusEntry("antipodal pair hexagon", ("cycle", 6), "antipodal-pair", ("antipodal",)),
    CorpusEntry("even half of folded 6-cube", ("folded_cube", 6),
                "words: " + " ".join(format(w, "05b") for w in range(32) if bin(w).count("1") % 2 == 0),
                ("folded",)),
)


def corpus(tags: tuple[str, ...] = (), skip: tuple[str, ...] = ()) -> list[CorpusEntry]:
    out = [e for e in CORPUS if not tags or set(tags) & set(e.tags)]
    return [e for e in out if not set(skip) & set(e.tags)]


def entry(name: str) -> CorpusEntry:
    for e in CORPUS:
        if e.name == name:
            return e
    raise KeyError(name)
