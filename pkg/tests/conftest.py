import importlib.resources
from pathlib import Path

import pytest

from sandpile_srg.graphs import build_family, srg_parameters
from sandpile_srg.formats import parse_adjacency_text, parse_graph6
from sandpile_srg.errors import ComplementDegenerate
from sandpile_srg.srg import complement_params, laplacian_spectrum

FIXTURES = Path(__file__).parent / "fixtures"
DATA = importlib.resources.files("sandpile_srg") / "data"

# (family, args) for every built-in strongly regular graph exercised by the suite
BUILTIN = [
    ("petersen", ()),
    ("rook", (3,)), ("rook", (4,)), ("rook", (5,)),
    ("shrikhande", ()),
    ("kneser", (5, 2)), ("kneser", (6, 2)), ("kneser", (7, 2)), ("kneser", (8, 2)),
    ("triangular", (5,)), ("triangular", (6,)), ("triangular", (7,)), ("triangular", (8,)),
    ("schlafli", ()),
    ("paley", (5,)), ("paley", (9,)), ("paley", (13,)), ("paley", (17,)),
    ("paley", (25,)), ("paley", (29,)),
]


def data_text(name):
    return (DATA / name).read_text(encoding="utf-8")


def spence_graph():
    return parse_adjacency_text(data_text("spence25_1.txt"))


def chang_complement():
    return parse_graph6((FIXTURES / "chang1_complement.g6").read_text())


def _all_srgs():
    out = []
    for name, args in BUILTIN:
        G = build_family(name, *args)
        label = f"{name}({','.join(map(str, args))})" if args else name
        out.append((label, G))
        try:
            complement_params(srg_parameters(G))
        except ComplementDegenerate:
            continue
        out.append((f"co-{label}", build_family(name, *args, complemented=True)))
    out.append(("spence25_1", spence_graph()))
    out.append(("chang1-complement", chang_complement()))
    return out


_SRGS = None


def all_srgs():
    """Every built-in srg, the connected complements, and the file fixtures."""
    global _SRGS
    if _SRGS is None:
        _SRGS = _all_srgs()
    return _SRGS


def integral_srgs():
    return [(label, G) for label, G in all_srgs()
            if laplacian_spectrum(srg_parameters(G)).integral]


@pytest.fixture(scope="session")
def srgs():
    return all_srgs()


# one line per acceptance criterion, printed after the run
ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
