"""
JSON records for CLI output and saved complexes.
"""
from typing import Any, Optional

from pydantic import BaseModel, Field


class HomologyGroupRecord(BaseModel):
    rank: int
    torsion: list[int] = Field(default_factory=list)


class DegreeGroupRecord(BaseModel):
    degree: int
    group: HomologyGroupRecord


class DiagramRecord(BaseModel):
    n: int
    pairs: list[list[str]]


class TermRecord(BaseModel):
    coefficient: str
    word: str
    diagram: DiagramRecord


class ElementRecord(BaseModel):
    n: int
    ring: str
    rendering: str
    terms: list[TermRecord] = Field(default_factory=list)


class ComplexManifest(BaseModel):
    ring: str
    degrees: list[int]
    dims: list[int]
    labels: dict[str, list[str]]
    name: Optional[str] = None


class ComplexReport(BaseModel):
    name: str
    context: str
    dims: dict[str, int]
    homology: list[DegreeGroupRecord]
    expected_top_rank: Optional[int] = None


class VerificationReport(BaseModel):
    name: str
    context: str
    passed: bool
    groups: dict[str, HomologyGroupRecord] = Field(default_factory=dict)
    evidence: dict[str, Any] = Field(default_factory=dict)


class ScoreboardRow(BaseModel):
    item: str
    claim: str
    passed: bool
    seconds: float
    detail: str = ""
