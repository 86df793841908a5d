import json
from pathlib import Path
from typing import Union

from pydantic import ValidationError

from apsbench.exc.graphs import GraphFormatException
from apsbench.schemas.graphs import Edge, Graph


def graph_to_json(g: Graph) -> str:
    """Serialises a graph as its pydantic JSON document."""
    return g.model_dump_json()


def graph_from_json(text: str) -> Graph:
    """
    Parses a graph from its JSON form {n, edges: [{u, v, mult, w}]}.

    A document with a top-level "graph" key (a constructed instance) is accepted as well.

    Args:
        text (str): JSON text.

    Returns:
        Graph: The parsed graph.

    Raises:
        GraphFormatException: If the text is not a valid graph document.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise GraphFormatException(source=f"invalid JSON ({e.msg})")
    if isinstance(data, dict) and "graph" in data:
        data = data["graph"]
    try:
        return Graph.model_validate(data)
    except ValidationError as e:
        raise GraphFormatException(source=f"{e.error_count()} schema errors")


def graph_to_edgelist(g: Graph) -> str:
    """Serialises a graph in the edge-list form read by `graph_from_edgelist`."""
    lines = [f"# n={g.n}"]
    lines.extend(f"{e.u} {e.v} {e.mult} {e.w!r}" for e in g.edges)
    return "\n".join(lines) + "\n"


def graph_from_edgelist(text: str) -> Graph:
    """
    Parses the plain edge-list form: one "u v [mult [w]]" line per edge, '#' starts a comment.

    The order is taken from an "# n=<order>" comment when present, otherwise from the largest vertex.

    Raises:
        GraphFormatException: If a line cannot be parsed.
    """
    n = None
    edges = []
    for raw in text.splitlines():
        line, _, comment = raw.partition("#")
        comment = comment.strip()
        if comment.startswith("n="):
            try:
                n = int(comment[2:])
            except ValueError:
                raise GraphFormatException(source=raw)
        fields = line.split()
        if not fields:
            continue
        if len(fields) < 2 or len(fields) > 4:
            raise GraphFormatException(source=raw)
        try:
            u, v = int(fields[0]), int(fields[1])
            mult = int(fields[2]) if len(fields) > 2 else 1
            w = float(fields[3]) if len(fields) > 3 else 1.0
            edges.append(Edge(u=u, v=v, mult=mult, w=w))
        except (ValueError, ValidationError):
            raise GraphFormatException(source=raw)
    if n is None:
        n = 1 + max((max(e.u, e.v) for e in edges), default=-1)
    return Graph(n=n, edges=edges)


def read_graph(path: Union[str, Path]) -> Graph:
    """
    Reads a graph file, JSON for a ".json" suffix and edge list otherwise.

    Raises:
        GraphFormatException: If the file cannot be read or parsed.
    """
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise GraphFormatException(source=f"{path} ({e.strerror})")
    if path.suffix.lower() == ".json":
        return graph_from_json(text)
    return graph_from_edgelist(text)


def write_graph(g: Graph, path: Union[str, Path]) -> None:
    """Writes a graph as JSON when the suffix is .json, as an edge list otherwise."""
    path = Path(path)
    text = graph_to_json(g) if path.suffix.lower() == ".json" else graph_to_edgelist(g)
    path.write_text(text)
