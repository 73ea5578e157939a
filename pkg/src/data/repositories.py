"""
File access layer.

Repositories keep the rest of the code away from paths and text formats: graphs are read
from and written to edge-list files, reports and tables are written to the output directory.
"""

import json
import logging
import os
from pathlib import Path
from typing import Any, Dict, Iterable, List, Tuple, Union

import pandas as pd

from data.models import Graph, Triangle, format_triangles, make_edge
from errors import ConfigurationError, GraphFormatError

logger = logging.getLogger(__name__)

PathLike = Union[str, "os.PathLike[str]"]


class EdgeListRepository:
    """Reads and writes the whitespace-separated edge-list format"""

    def parse(self, lines: Iterable[str]) -> Graph:
        n = None
        declared_edges = None
        edges: List[Tuple[int, int]] = []
        seen = set()
        for line_number, raw in enumerate(lines, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            tokens = line.split()
            if n is None:
                n, declared_edges = self._parse_header(line_number, tokens)
                continue
            if len(tokens) != 2:
                raise GraphFormatError(line_number, f"expected 'j k', got {line!r}")
            try:
                j, k = int(tokens[0]), int(tokens[1])
            except ValueError:
                raise GraphFormatError(line_number, f"non-integer vertex id in {line!r}") from None
            if j == k:
                raise GraphFormatError(line_number, f"self-loop at vertex {j}")
            if not (0 <= j < n and 0 <= k < n):
                raise GraphFormatError(line_number, f"vertex id out of range 0..{n - 1} in {line!r}")
            edge = make_edge(j, k)
            if edge in seen:
                raise GraphFormatError(line_number, f"duplicate edge {{{j}, {k}}}")
            seen.add(edge)
            edges.append(edge)

        if n is None:
            raise GraphFormatError(0, "missing header line 'n <count>'")
        if declared_edges is not None and declared_edges != len(edges):
            raise GraphFormatError(0, f"header declares {declared_edges} edges, file has {len(edges)}")
        return Graph.from_edges(n, edges)

    @staticmethod
    def _parse_header(line_number: int, tokens: List[str]):
        # "n <count>" or "<n> <m>"
        try:
            if len(tokens) == 2 and tokens[0] == "n":
                return int(tokens[1]), None
            if len(tokens) == 2:
                return int(tokens[0]), int(tokens[1])
        except ValueError:
            pass
        raise GraphFormatError(line_number, f"malformed header {' '.join(tokens)!r}, expected 'n <count>'")

    def load(self, path: PathLike) -> Graph:
        try:
            with open(path, "r", encoding="utf-8") as handle:
                graph = self.parse(handle)
        except OSError as e:
            raise GraphFormatError(0, f"cannot read edge list {path}: {e.strerror or e}") from e
        except UnicodeDecodeError as e:
            raise GraphFormatError(0, f"edge list {path} is not UTF-8 text: {e.reason}") from e
        logger.info("Loaded graph n=%d m=%d from %s", graph.n, graph.m, path)
        return graph

    def dumps(self, g: Graph) -> str:
        lines = [f"n {g.n}"]
        lines.extend(f"{j} {k}" for j, k in sorted(g.edges))
        return "\n".join(lines) + "\n"

    def save(self, g: Graph, path: PathLike):
        Path(path).write_text(self.dumps(g), encoding="utf-8")


class ReportRepository:
    """Writes reports, tables and triangle lists below one output directory"""

    def __init__(self, output_dir: PathLike):
        self.output_dir = Path(output_dir)

    def _target(self, name: str) -> Path:
        try:
            self.output_dir.mkdir(parents=True, exist_ok=True)
        except OSError as e:
            raise ConfigurationError(f"output directory {self.output_dir} is not writable: {e}") from e
        return self.output_dir / name

    def save_report(self, name: str, report: Dict[str, Any]) -> Path:
        target = self._target(name)
        try:
            target.write_text(json.dumps(report, indent=2, sort_keys=True) + "\n", encoding="utf-8")
        except OSError as e:
            raise ConfigurationError(f"cannot write report {target}: {e}") from e
        logger.info("Report written to %s", target)
        return target

    def save_table(self, name: str, table: pd.DataFrame) -> Path:
        target = self._target(name)
        try:
            table.to_csv(target, index=False)
        except OSError as e:
            raise ConfigurationError(f"cannot write table {target}: {e}") from e
        logger.info("Table written to %s", target)
        return target

    def save_triangles(self, name: str, triangles: Iterable[Triangle]) -> Path:
        target = self._target(name)
        try:
            target.write_text(format_triangles(triangles), encoding="utf-8")
        except OSError as e:
            raise ConfigurationError(f"cannot write triangles {target}: {e}") from e
        return target


def load_edge_list(path: PathLike) -> Graph:
    return EdgeListRepository().load(path)


def save_edge_list(g: Graph, path: PathLike):
    EdgeListRepository().save(g, path)
