"""Homogeneous integer linear systems with named variables."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .exact_linalg import IntMatrix, rational_rank


@dataclass(frozen=True)
class LinearSystem:
    coefficients: IntMatrix
    variables: tuple  # column names
    provenance: tuple  # one tag per row

    def __post_init__(self):
        if self.coefficients.cols != len(self.variables):
            raise ValueError("column count does not match the variable layout")
        if self.coefficients.rows != len(self.provenance):
            raise ValueError("every row needs a provenance tag")

    @property
    def num_variables(self) -> int:
        return len(self.variables)

    @property
    def num_equations(self) -> int:
        return self.coefficients.rows

    @cached_property
    def rank(self) -> int:
        return rational_rank(self.coefficients)

    @property
    def corank(self) -> int:
        return self.num_variables - self.rank

    def to_dict(self) -> dict:
        return {
            "variables": list(self.variables),
            "rows": [
                {"tag": tag, "coefficients": list(self.coefficients.row(i))}
                for i, tag in enumerate(self.provenance)
            ],
            "num_variables": self.num_variables,
            "num_equations": self.num_equations,
            "rank": self.rank,
            "corank": self.corank,
        }


class RowBuilder:
    """Accumulates sparse rows, summing coefficients that hit the same column."""

    def __init__(self, nvars: int):
        self.nvars = nvars
        self.rows: list[list[int]] = []
        self.tags: list[str] = []

    def add(self, terms, tag: str):
        row = [0] * self.nvars
        for col, coef in terms:
            row[col] += coef
        self.rows.append(row)
        self.tags.append(tag)

    def build(self, variables) -> LinearSystem:
        return LinearSystem(
            IntMatrix.from_rows(self.rows, cols=self.nvars),
            tuple(variables),
            tuple(self.tags),
        )
