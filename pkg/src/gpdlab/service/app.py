"""FastAPI service exposing validation, factorization, the Morita suite and
the nerve comparison suite over the core package."""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from .. import io as gio
from ..algebra import ResolutionFailure, RoundingDefect, morita_check
from ..cylinders import mapping_cylinder_factorization
from ..fixtures import fixture, fixture_names
from ..groupoids import (GroupoidError, NonCofibrationError, validate_functor,
                         validate_groupoid)
from ..homology import homology
from ..nerves import (BudgetError, classification_level, diagonal_retraction_check,
                      double_nerve_margins, nerve_of_sample)
from ..presentations import validate_presentation
from ..samples import SampleSizeError, enumerate_sample
from .schemas import (FactorRequest, FactorResponse, FixturesResponse,
                      LevelVerdict, MapModel, MoritaRequest, MoritaResponse,
                      NerveSuiteRequest, NerveSuiteResponse, ValidateRequest,
                      ValidateResponse)

app = FastAPI(title="gpdlab", version="0.1.0",
              description="Finite groupoid laboratory: algebra, factorizations "
                          "and nerve comparisons as a service.")


def _parse_functor(model):
    try:
        return gio.functor_from_dict(model.model_dump())
    except gio.FormatError as exc:
        raise HTTPException(status_code=400, detail=str(exc))


def _require_valid_functor(F):
    for g, label in ((F.source, "source"), (F.target, "target")):
        rep = validate_groupoid(g)
        if not rep.ok:
            raise HTTPException(status_code=400,
                                detail="invalid %s groupoid: %s"
                                       % (label, "; ".join(rep.all_messages()[:3])))
    rep = validate_functor(F)
    if not rep.ok:
        raise HTTPException(status_code=400,
                            detail="invalid functor: %s"
                                   % "; ".join(rep.all_messages()[:3]))


@app.get("/health")
def health():
    return {"status": "ok"}


@app.get("/fixtures", response_model=FixturesResponse)
def list_fixtures():
    return FixturesResponse(names=fixture_names())


@app.post("/validate", response_model=ValidateResponse)
def validate(req: ValidateRequest):
    try:
        kind = gio.detect_kind(req.payload)
        if kind == "groupoid":
            rep = validate_groupoid(gio.groupoid_from_dict(req.payload))
        elif kind == "functor":
            F = gio.functor_from_dict(req.payload)
            rep = validate_groupoid(F.source)
            if rep.ok:
                rep = validate_groupoid(F.target)
            if rep.ok:
                rep = validate_functor(F)
        else:
            rep = validate_presentation(gio.presented_from_dict(req.payload))
    except gio.FormatError as exc:
        raise HTTPException(status_code=400, detail=str(exc))
    return ValidateResponse(ok=rep.ok, kind=kind, structural=list(rep.structural),
                            axioms=list(rep.axioms))


@app.post("/factor", response_model=FactorResponse)
def factor(req: FactorRequest):
    F = _parse_functor(req.functor)
    _require_valid_functor(F)
    if req.bound <= 0:
        raise HTTPException(status_code=400, detail="bound must be positive")
    fact = mapping_cylinder_factorization(F, bound=req.bound)
    config = {"command": "factor", "bound": req.bound}
    warnings = []
    middle = first = second = None
    if fact.middle is None:
        warnings.append("concretization bound exceeded; equivalence check deferred")
    else:
        middle = gio.groupoid_to_dict(fact.middle)
        first = MapModel(onObjects=fact.first.object_map,
                         onMorphisms=fact.first.morphism_map)
        second = MapModel(onObjects=fact.second.object_map,
                          onMorphisms=fact.second.morphism_map)
    return FactorResponse(
        config=config, checks=dict(fact.checks), middle=middle,
        middle_presented=gio.presented_to_dict(fact.presentation),
        first=first, second=second, warnings=warnings)


@app.post("/morita", response_model=MoritaResponse)
def morita(req: MoritaRequest):
    F = _parse_functor(req.functor)
    _require_valid_functor(F)
    if req.tol <= 0:
        raise HTTPException(status_code=400, detail="tol must be positive")
    config = {"command": "morita", "seed": req.seed, "tol": req.tol}
    try:
        report = morita_check(F, tol=req.tol, seed=req.seed)
    except NonCofibrationError as exc:
        return MoritaResponse(config=config, ok=False, error=str(exc),
                              error_kind="functoriality")
    except (ResolutionFailure, RoundingDefect) as exc:
        return MoritaResponse(config=config, ok=False, error=str(exc),
                              error_kind="numerical")
    return MoritaResponse(
        config=config, ok=True,
        acyclic_cofibration=report.acyclic_cofibration,
        k0_iso=report.k0_iso,
        k0_matrix=report.k0.matrix,
        k0_defect=report.k0.defect,
        equivalence_failures=list(report.equivalence_failures),
        full_corner_witnesses=report.full_corner_witnesses)


@app.post("/nerve-suite", response_model=NerveSuiteResponse)
def nerve_suite(req: NerveSuiteRequest):
    config = {"command": "nerve-suite", "fixtures": sorted(req.fixtures),
              "dim": req.dim, "max_k": req.max_k, "budget": req.budget,
              "seed": req.seed}
    try:
        gs = [fixture(name) for name in sorted(req.fixtures)]
    except GroupoidError as exc:
        raise HTTPException(status_code=400, detail=str(exc))
    if req.dim < 2 or req.dim > 4:
        raise HTTPException(status_code=400, detail="dim must be between 2 and 4")
    if req.max_k < 0 or req.max_k > 2:
        raise HTTPException(status_code=400, detail="max_k must be between 0 and 2")
    try:
        sample = enumerate_sample(gs, names=sorted(req.fixtures), budget=req.budget)
    except SampleSizeError as exc:
        raise HTTPException(status_code=400, detail=str(exc))
    levels = []
    try:
        for k in range(req.max_k + 1):
            if k == 0:
                dim = req.dim
                full = nerve_of_sample(sample, dim, mask=sample.w_mask,
                                       budget=req.budget)
                marked = nerve_of_sample(sample, dim, mask=sample.wc_mask(),
                                         budget=req.budget)
                hf, hm = homology(full), homology(marked)
            else:
                dim = min(req.dim, 2)
                cl = classification_level(sample, k, d=dim, budget=req.budget)
                hf = homology(cl.full_nerve, top=dim - 1)
                hm = homology(cl.marked_nerve, top=dim - 1)
            levels.append(LevelVerdict(
                k=k, dim=dim,
                h0_isomorphic=hf.degrees[0] == hm.degrees[0],
                h1_isomorphic=hf.degrees[1] == hm.degrees[1],
                full_profile=hf.describe(),
                marked_profile=hm.describe()))
        margins = double_nerve_margins(sample, d=min(req.dim, 3))
        retraction = diagonal_retraction_check(sample, d=min(req.dim, 3))
    except BudgetError as exc:
        return NerveSuiteResponse(config=config, ok=False, error=str(exc),
                                  error_kind="budget", estimate=exc.estimate,
                                  levels=levels)
    ok = (all(lv.h0_isomorphic and lv.h1_isomorphic for lv in levels)
          and all(margins.values()) and retraction)
    return NerveSuiteResponse(config=config, ok=ok, levels=levels,
                              margin_checks=margins,
                              retraction_identity=retraction)
