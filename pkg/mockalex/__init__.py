from mockalex.diagram import DiagramMap, parse
from mockalex.invariants import mock_alexander, nabla_sharp
from mockalex.models import DiagramDocument, RunConfig
from mockalex.poly import LaurentPoly
from mockalex.stars import StarredDiagram, make_starred

__all__ = [
    "DiagramMap",
    "parse",
    "mock_alexander",
    "nabla_sharp",
    "DiagramDocument",
    "RunConfig",
    "LaurentPoly",
    "StarredDiagram",
    "make_starred",
]
