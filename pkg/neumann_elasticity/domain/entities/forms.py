"""Bilinear form kinds that can be assembled."""
from typing import Literal, Union

from pydantic import BaseModel, Field


class ElasticStiffness(BaseModel):
    """2mu (eps(u), eps(v)) + lam (div u, div v)."""
    kind: Literal["elastic"] = "elastic"
    mu: float = Field(gt=0)
    lam: float = Field(ge=0)


class EpsilonStiffness(BaseModel):
    """2mu (eps(u), eps(v))."""
    kind: Literal["epsilon"] = "epsilon"
    mu: float = Field(gt=0)


class VectorMass(BaseModel):
    kind: Literal["vector-mass"] = "vector-mass"


class ScalarMass(BaseModel):
    kind: Literal["scalar-mass"] = "scalar-mass"


class ScalarStiffness(BaseModel):
    kind: Literal["scalar-stiffness"] = "scalar-stiffness"


class DivCoupling(BaseModel):
    """(p, div v): scalar trial, vector test."""
    kind: Literal["div"] = "div"


class H1Inner(BaseModel):
    """(u, v) + (grad u, grad v)."""
    kind: Literal["h1"] = "h1"


FormKind = Union[ElasticStiffness, EpsilonStiffness, VectorMass, ScalarMass, ScalarStiffness, DivCoupling, H1Inner]
