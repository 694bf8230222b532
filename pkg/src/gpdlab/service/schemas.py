"""Pydantic request / response models for the service endpoints."""

from __future__ import annotations

from typing import Any, Optional

from pydantic import BaseModel, Field


class MorphismModel(BaseModel):
    id: str
    src: str
    dst: str


class GroupoidModel(BaseModel):
    objects: list[str]
    morphisms: list[MorphismModel]
    compose: list[list[str]]
    identities: dict[str, str]
    inverses: dict[str, str]


class FunctorModel(BaseModel):
    source: GroupoidModel
    target: GroupoidModel
    onObjects: dict[str, str]
    onMorphisms: dict[str, str]


class ValidateRequest(BaseModel):
    payload: dict[str, Any]


class ValidateResponse(BaseModel):
    ok: bool
    kind: str
    structural: list[str]
    axioms: list[str]


class FactorRequest(BaseModel):
    functor: FunctorModel
    bound: int = 10000


class MapModel(BaseModel):
    onObjects: dict[str, str]
    onMorphisms: dict[str, str]


class PresentedModel(BaseModel):
    objects: list[str]
    generators: list[MorphismModel]
    relations: list[list[list[str]]]


class FactorResponse(BaseModel):
    config: dict[str, Any]
    checks: dict[str, str]
    middle: Optional[GroupoidModel] = None
    middle_presented: PresentedModel
    first: Optional[MapModel] = None
    second: Optional[MapModel] = None
    warnings: list[str] = Field(default_factory=list)


class MoritaRequest(BaseModel):
    functor: FunctorModel
    seed: int = 0
    tol: float = 1e-9


class MoritaResponse(BaseModel):
    config: dict[str, Any]
    ok: bool
    error: Optional[str] = None
    error_kind: Optional[str] = None
    acyclic_cofibration: Optional[bool] = None
    k0_iso: Optional[bool] = None
    k0_matrix: Optional[list[list[int]]] = None
    k0_defect: Optional[float] = None
    equivalence_failures: list[str] = Field(default_factory=list)
    full_corner_witnesses: list[dict[str, Any]] = Field(default_factory=list)


class NerveSuiteRequest(BaseModel):
    fixtures: list[str]
    dim: int = 3
    max_k: int = 1
    budget: int = 200000
    seed: int = 0


class LevelVerdict(BaseModel):
    k: int
    dim: int
    h0_isomorphic: bool
    h1_isomorphic: bool
    full_profile: str
    marked_profile: str


class NerveSuiteResponse(BaseModel):
    config: dict[str, Any]
    ok: bool
    error: Optional[str] = None
    error_kind: Optional[str] = None
    estimate: Optional[int] = None
    levels: list[LevelVerdict] = Field(default_factory=list)
    margin_checks: dict[str, bool] = Field(default_factory=dict)
    retraction_identity: Optional[bool] = None


class FixturesResponse(BaseModel):
    names: list[str]
