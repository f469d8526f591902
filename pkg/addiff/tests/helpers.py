"""
Shared fixtures for the test suite.
"""

from pathlib import Path

from addiff.core.models.diagram import ActivityDiagram
from addiff.core.text.parser import parse_or_raise

FIXTURES = Path(__file__).parent / "fixtures"

HIRE_VERSIONS = ("hire_v1", "hire_v2", "hire_v3", "hire_v4")
PROJ_VERSIONS = ("proj_v1", "proj_v2", "proj_v3")


def fixture_path(name: str) -> Path:
    return FIXTURES / f"{name}.ad"


def load_fixture(name: str) -> ActivityDiagram:
    """Parse tests/fixtures/<name>.ad"""
    path = fixture_path(name)
    return parse_or_raise(path.read_text(encoding="utf-8"), source=str(path))


def diagram(text: str) -> ActivityDiagram:
    return parse_or_raise(text)


# initial -> a -> b -> final, no variables
CHAIN_AB = """
activity chain {
  initial start;
  action a "a";
  action b "b";
  final stop;
  start -> a;
  a -> b;
  b -> stop;
}
"""

CHAIN_AC = CHAIN_AB.replace('action b "b"', 'action b "c"')

CHOICE = """
activity choice {
  input x : bool;
  initial start;
  action a "a";
  decision d;
  action yes "yes";
  action no "no";
  final stop;
  start -> a;
  a -> d;
  d -> yes [x];
  d -> no [!x];
  yes -> stop;
  no -> stop;
}
"""

PARALLEL = """
activity par {
  initial start;
  action a "a";
  fork f;
  action x1 "x";
  action x2 "y";
  join j;
  action z "z";
  final stop;
  start -> a;
  a -> f;
  f -> x1;
  f -> x2;
  x1 -> j;
  x2 -> j;
  j -> z;
  z -> stop;
}
"""

# two enumerations and a local sharing the literal x
SHARED_LITERALS = """
activity shared {
  input a : enum { x, y };
  input b : enum { x, z };
  local c : enum { z, x };
  initial start;
  action first "first" { c = x; };
  decision d;
  action p "p";
  action q "q";
  final stop;
  start -> first;
  first -> d;
  d -> p [b = x];
  d -> q [x != b];
  p -> stop;
  q -> stop;
}
"""
