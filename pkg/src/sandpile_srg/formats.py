"""Text formats: graph6, 0/1 adjacency rows, integer matrices, parameter tables.

Adjacency text grammar: one row per line; ``#`` starts a comment line; the
characters ``& , ; [ ] \\`` and whitespace are separators and ignored, so
both ``0110`` and ``0 & 1 & 1 & 0 \\\\`` read as the same row. Every remaining
character must be ``0`` or ``1``.

Matrix text grammar: first line ``rows cols``, then ``rows*cols``
whitespace-separated integers in row-major order.

Parameter tables: one row per line of 4 (``v k lambda mu``) or 8
(``... r_L f s_L g``) integers separated by whitespace, commas or ``|``;
blank lines and ``#`` comments are skipped.
"""

import re
from dataclasses import dataclass

from .errors import AsymmetricMatrix, NonBinaryEntry, ParseError
from .graphs import Graph
from .linalg import IntMatrix

GRAPH6_HEADER = ">>graph6<<"


# graph6

def _encode_n(n):
    if n < 63:
        return chr(n + 63)
    if n < 258048:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    if n < 2**36:
        return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))
    raise ValueError("graph too large for graph6")


def to_graph6(G):
    bits = [G.adjacency[i][j] for j in range(1, G.n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    body = "".join(
        chr(63 + int("".join(map(str, bits[k:k + 6])), 2)) for k in range(0, len(bits), 6)
    )
    return _encode_n(G.n) + body


def _decode_line(line, lineno):
    if line.startswith(GRAPH6_HEADER):
        line = line[len(GRAPH6_HEADER):]
    for pos, ch in enumerate(line, 1):
        if not 63 <= ord(ch) <= 126:
            raise ParseError(f"invalid graph6 byte {ch!r}", line=lineno, pos=pos)
    data = [ord(ch) - 63 for ch in line]
    if not data:
        raise ParseError("empty graph6 string", line=lineno)
    if data[0] < 63:
        n, off = data[0], 1
    elif len(data) >= 2 and data[1] == 63:
        if len(data) < 8:
            raise ParseError("truncated graph6 size header", line=lineno)
        n, off = 0, 8
        for x in data[2:8]:
            n = (n << 6) | x
    else:
        if len(data) < 4:
            raise ParseError("truncated graph6 size header", line=lineno)
        n, off = 0, 4
        for x in data[1:4]:
            n = (n << 6) | x
    nbits = n * (n - 1) // 2
    need = -(-nbits // 6)
    body = data[off:]
    if len(body) != need:
        raise ParseError(
            f"graph6 body has {len(body)} bytes, {need} expected for n={n}",
            line=lineno, pos=off + min(len(body), need) + 1,
        )
    bits = [(x >> s) & 1 for x in body for s in range(5, -1, -1)]
    if any(bits[nbits:]):
        raise ParseError("nonzero graph6 padding bits", line=lineno, pos=len(line))
    adj = [[0] * n for _ in range(n)]
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                adj[i][j] = adj[j][i] = 1
            k += 1
    return Graph(n, adj)


def parse_graph6_all(text):
    graphs = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if line:
            graphs.append(_decode_line(line, lineno))
    if not graphs:
        raise ParseError("no graph6 data", line=1)
    return graphs


def parse_graph6(text):
    """Exactly one graph6 record (blank lines ignored)."""
    graphs = parse_graph6_all(text)
    if len(graphs) != 1:
        raise ParseError(f"expected one graph, found {len(graphs)}")
    return graphs[0]


# adjacency rows

_SEPARATORS = re.compile(r"[\s&,;\[\]\\]+")


def parse_adjacency_text(text):
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        if raw.lstrip().startswith("#"):
            continue
        line = _SEPARATORS.sub("", raw)
        if not line:
            continue
        for pos, ch in enumerate(raw, 1):
            if ch in "01" or _SEPARATORS.fullmatch(ch):
                continue
            if ch.isdigit() or ch == "-":
                raise NonBinaryEntry(f"entry {ch!r} is not 0 or 1", line=lineno, pos=pos)
            raise ParseError(f"unexpected character {ch!r}", line=lineno, pos=pos)
        rows.append((lineno, [int(ch) for ch in line]))
    if not rows:
        raise ParseError("no matrix rows found")
    n = len(rows)
    for lineno, row in rows:
        if len(row) != n:
            raise ParseError(f"row has {len(row)} entries, matrix has {n} rows", line=lineno)
    adj = [row for _, row in rows]
    for i in range(n):
        if adj[i][i]:
            raise ParseError(f"nonzero diagonal entry at vertex {i}", line=rows[i][0])
        for j in range(i):
            if adj[i][j] != adj[j][i]:
                raise AsymmetricMatrix(f"entries ({i},{j}) and ({j},{i}) differ", line=rows[i][0])
    return Graph(n, adj)


def format_adjacency_text(G):
    return "\n".join("".join(map(str, row)) for row in G.adjacency) + "\n"


# integer matrices

def parse_matrix_text(text):
    tokens = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0]
        for tok in line.split():
            tokens.append((lineno, tok))
    if len(tokens) < 2:
        raise ParseError("missing 'rows cols' header", line=1)
    try:
        vals = [int(tok) for _, tok in tokens]
    except ValueError:
        lineno, tok = next((ln, t) for ln, t in tokens if not re.fullmatch(r"[+-]?\d+", t))
        raise ParseError(f"not an integer: {tok!r}", line=lineno) from None
    rows, cols = vals[:2]
    if rows < 0 or cols < 0:
        raise ParseError("negative dimension", line=tokens[0][0])
    body = vals[2:]
    if len(body) != rows * cols:
        raise ParseError(f"expected {rows * cols} entries, found {len(body)}",
                         line=tokens[-1][0])
    return IntMatrix(rows, cols, tuple(body))


def format_matrix_text(M):
    lines = [f"{M.rows} {M.cols}"]
    lines += [" ".join(str(x) for x in M.row(i)) for i in range(M.rows)]
    return "\n".join(lines) + "\n"


# parameter tables

@dataclass(frozen=True)
class TableRow:
    v: int
    k: int
    lam: int
    mu: int
    r_L: int | None = None
    f: int | None = None
    s_L: int | None = None
    g: int | None = None
    line: int | None = None

    @property
    def params(self):
        return (self.v, self.k, self.lam, self.mu)

    @property
    def has_spectrum(self):
        return self.r_L is not None

    def spectrum_problems(self):
        """Violated spectrum identities among the row's own columns."""
        if not self.has_spectrum:
            return []
        v, k, lam, mu, r, f, s, g = (self.v, self.k, self.lam, self.mu,
                                     self.r_L, self.f, self.s_L, self.g)
        checks = [
            (f + g == v - 1, "f + g != v - 1"),
            (r * f + s * g == v * k, "r f + s g != v k"),
            (r + s == 2 * k - lam + mu, "r + s != 2k - lambda + mu"),
            (r * s == mu * v, "r s != mu v"),
            (0 < r < s, "need 0 < r < s"),
        ]
        return [msg for ok, msg in checks if not ok]


def parse_parameter_table(text):
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = [f for f in re.split(r"[\s,|]+", line) if f]
        try:
            nums = [int(f) for f in fields]
        except ValueError:
            raise ParseError(f"non-integer field in {line!r}", line=lineno) from None
        if len(nums) not in (4, 8):
            raise ParseError(f"expected 4 or 8 integers, found {len(nums)}", line=lineno)
        rows.append(TableRow(*nums, line=lineno) if len(nums) == 8
                    else TableRow(*nums, line=lineno))
    return rows
