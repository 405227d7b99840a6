"""Integer-indexed views of the label tables, for vectorised law checks."""
from __future__ import annotations

from typing import Iterator

import numpy as np

CHUNK = 1 << 16


class CategoryIndex:
    """Morphisms numbered in enumeration order; composition as a dense table."""

    def __init__(self, cat):
        self.labels = list(cat.morphisms)
        self.pos = {f: k for k, f in enumerate(self.labels)}
        obj_pos = {c: k for k, c in enumerate(cat.objects)}
        n = len(self.labels)
        self.dom = np.array([obj_pos[cat.dom(f)] for f in self.labels], dtype=np.int64)
        self.cod = np.array([obj_pos[cat.cod(f)] for f in self.labels], dtype=np.int64)
        self.comp = np.full((n, n), -1, dtype=np.int32)
        for (g, f), h in cat.composition.items():
            self.comp[self.pos[g], self.pos[f]] = self.pos[h]
        # out-edges by domain object, in enumeration order
        nobj = len(cat.objects)
        order = np.argsort(self.dom, kind="stable")
        self.out_idx = order.astype(np.int64)
        counts = np.bincount(self.dom, minlength=nobj) if n else np.zeros(nobj, np.int64)
        self.out_ptr = np.concatenate([[0], np.cumsum(counts)]).astype(np.int64)
        self.outdeg = counts.astype(np.int64)

    def _expand(self, cod_of_last: np.ndarray):
        """For each row, one copy per morphism out of ``cod_of_last``."""
        counts = self.outdeg[cod_of_last]
        total = int(counts.sum())
        rows = np.repeat(np.arange(len(counts)), counts)
        starts = np.repeat(self.out_ptr[cod_of_last], counts)
        offs = np.arange(total) - np.repeat(np.cumsum(counts) - counts, counts)
        return rows, self.out_idx[starts + offs]

    def pairs(self) -> tuple[np.ndarray, np.ndarray]:
        """All composable ``(f, g)``, innermost first, in enumeration order."""
        f = np.arange(len(self.labels), dtype=np.int64)
        rows, g = self._expand(self.cod[f])
        return f[rows], g

    def triples(self) -> Iterator[tuple[np.ndarray, np.ndarray, np.ndarray]]:
        """Composable ``(f, g, h)`` in enumeration order, in chunks."""
        F, G = self.pairs()
        step = max(1, CHUNK // max(1, int(self.outdeg.max(initial=1))))
        for s in range(0, len(F), step):
            f, g = F[s:s + step], G[s:s + step]
            rows, h = self._expand(self.cod[g])
            yield f[rows], g[rows], h
