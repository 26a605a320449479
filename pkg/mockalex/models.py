import json
import os
from pathlib import Path
from typing import Annotated, Any, Literal, Union

import pydantic
import yaml
from pydantic import BaseModel, ConfigDict, Field as PydanticField

from mockalex.poly import LaurentPoly


class StrictModel(BaseModel):
    model_config = ConfigDict(extra="forbid")


def Field(*args, example: Any = None, **kwargs):
    if example is not None:
        kwargs["examples"] = [example]
    return PydanticField(*args, **kwargs)


PortDoc = tuple[str, int]
Side = Literal["left", "right"]


# diagram documents


class CrossingDoc(StrictModel):
    id: str = Field(min_length=1)
    over_in_slot: Literal[1, 3] = Field(description="Slot of the incoming over-strand; 3 means a positive crossing")


class EndpointDoc(StrictModel):
    id: str = Field(min_length=1)
    kind: Literal["tail", "head"]


class EdgeDoc(StrictModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    from_: PortDoc = Field(alias="from", example=["a", 2])
    to: PortDoc = Field(example=["b", 3])


class StarsDoc(StrictModel):
    """Star decorations. At most one of the two lists may be non-empty."""
    regions: list[str] | None = Field(default=None, description="Face refs, either canonical ids like 'f2' or corner refs like 'a:1'")
    crossings: list[str] | None = None


class DiagramDocument(StrictModel):
    """Serialized combinatorial map of a link, linkoid or knotoid universe"""
    name: str | None = None
    crossings: list[CrossingDoc] = Field(default_factory=list)
    endpoints: list[EndpointDoc] = Field(default_factory=list)
    loops: list[str] = Field(default_factory=list, description="Crossingless circles, each oriented with its first face on the left")
    edges: list[EdgeDoc] = Field(default_factory=list)
    merges: list[list[str]] = Field(default_factory=list, description="Sets of face refs forming one region")
    stars: StarsDoc | None = None
    outer_face: str | None = Field(default=None, description="Face ref of the exterior, used by planar invariants")

    @classmethod
    def from_file(cls, path: Path) -> "DiagramDocument":
        return cls.model_validate_json(Path(path).read_text())

    def to_json_text(self) -> str:
        return self.model_dump_json(by_alias=True, exclude_none=True, indent=2)


# polynomials


class PolyTermDoc(StrictModel):
    exponents: list[int]
    coeff: int


class PolyDoc(StrictModel):
    variables: list[str]
    text: str
    terms: list[PolyTermDoc]
    engine: str | None = None

    @classmethod
    def from_poly(cls, p: LaurentPoly, engine: str | None = None) -> "PolyDoc":
        return cls(
            variables=list(p.variables),
            text=p.to_text(),
            terms=[PolyTermDoc(**t) for t in p.to_json()],
            engine=engine,
        )

    def to_poly(self) -> LaurentPoly:
        return LaurentPoly.from_json([t.model_dump() for t in self.terms], self.variables)


class MatrixDoc(StrictModel):
    variables: list[str]
    rows: list[str] = Field(description="Unstarred crossing ids")
    columns: list[str] = Field(description="Unstarred region names")
    entries: list[list[str]] = Field(description="Canonical text of each entry")


# move sites


class R1AddSite(StrictModel):
    kind: Literal["R1+"] = "R1+"
    edge: PortDoc
    side: Side
    first: Literal["over", "under"]


class R1RemoveSite(StrictModel):
    kind: Literal["R1-"] = "R1-"
    crossing: str


class R2AddSite(StrictModel):
    kind: Literal["R2+"] = "R2+"
    upper: PortDoc
    upper_side: Side
    lower: PortDoc
    lower_side: Side
    over: bool = True


class R2RemoveSite(StrictModel):
    kind: Literal["R2-"] = "R2-"
    crossings: tuple[str, str]


class R3Site(StrictModel):
    kind: Literal["R3"] = "R3"
    crossings: tuple[str, str, str]


class ConnectR2Site(StrictModel):
    kind: Literal["connectR2"] = "connectR2"
    upper: PortDoc
    upper_side: Side
    lower: PortDoc
    lower_side: Side
    over: bool = True


class ExtendSite(StrictModel):
    """Pull an endpoint across an edge of its region (changes the knotoid)."""
    kind: Literal["extend"] = "extend"
    endpoint: str
    edge: PortDoc
    side: Side
    over: bool = True


class SwitchSite(StrictModel):
    kind: Literal["switch"] = "switch"
    crossing: str


MoveSite = Annotated[
    Union[R1AddSite, R1RemoveSite, R2AddSite, R2RemoveSite, R3Site, ConnectR2Site, ExtendSite, SwitchSite],
    pydantic.Field(discriminator="kind"),
]


class TraceStep(StrictModel):
    step: int
    site: MoveSite | None = None
    skipped: bool = False


# reports


class CensusReport(StrictModel):
    n: int
    f: int
    f_effective: int
    e: int
    k: int
    m: int
    genus: int
    admissible: bool


class CheckRecord(StrictModel):
    identity: str
    site: str
    lhs: str
    rhs: str
    verdict: bool


class Counterexample(StrictModel):
    identity: str
    detail: str
    diagram: DiagramDocument
    trace: list[TraceStep] = Field(default_factory=list)


class SuiteReport(StrictModel):
    suite: str
    seed: int
    iterations: int
    passed: int = 0
    failed: int = 0
    records: list[CheckRecord] = Field(default_factory=list)
    counterexamples: list[Counterexample] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failed == 0


class SkeinReport(StrictModel):
    identity: Literal["skein", "equality", "unclassified"]
    case: str
    site: str
    nabla_plus: str
    nabla_minus: str
    nabla_zero_raw: str | None = None
    nabla_zero_connected: str | None = None
    lhs: str | None = None
    rhs: str | None = None
    verdict: bool | None = None


class ConjectureReport(StrictModel):
    count: int
    seed: int
    size_bound: int
    conjecture1_passed: int = 0
    conjecture1_failed: int = 0
    conjecture2_passed: int = 0
    conjecture2_failed: int = 0
    counterexamples: list[Counterexample] = Field(default_factory=list)


# run configuration


def _threads_from_env() -> int:
    raw = os.environ.get("MOCKALEX_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


Suite = Literal["invariance", "skein", "symmetry", "perm", "conjectures"]


class RunConfig(StrictModel):
    """Everything a CLI invocation needs. Flags override values loaded from YAML."""
    command: str
    inputs: list[Path] = Field(default_factory=list)
    seed: int = 0
    iterations: int = Field(default=100, ge=0)
    steps: int = Field(default=20, ge=0)
    size_bound: int = Field(default=8, ge=1)
    output_format: Literal["text", "json"] = "text"
    outer_face: str | None = None
    star_regions: list[str] | None = None
    star_crossings: list[str] | None = None
    engine: Literal["states", "permanent", "ryser"] = "permanent"
    labels: Literal["mock", "mock-specialized", "planar"] = "mock-specialized"
    kbang: bool = False
    threads: int = Field(default_factory=_threads_from_env, ge=1)
    artifacts_dir: Path = Path("counterexamples")
    crossing: str | None = None
    edge: str | None = None
    faces: list[str] | None = None
    pairs: list[tuple[str, str]] | None = None
    kind: Literal["twist", "spiral"] | None = None
    n: int | None = None
    suite: Suite | None = None
    output: Path | None = None
    log_json: bool = False

    @classmethod
    def load(cls, path: Path | None, **overrides: Any) -> "RunConfig":
        data: dict[str, Any] = {}
        if path is not None:
            loaded = yaml.safe_load(Path(path).read_text()) or {}
            if not isinstance(loaded, dict):
                raise ValueError(f"{path}: config must be a mapping")
            data.update(loaded)
        data.update({k: v for k, v in overrides.items() if v is not None})
        return cls.model_validate(data)


if __name__ == "__main__":
    # Save the document schema
    schema = pydantic.TypeAdapter(DiagramDocument).json_schema(by_alias=True)
    with open("mockalex-diagram-schema.json", "w") as f:
        json.dump(schema, f, indent=2)
