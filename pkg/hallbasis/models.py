from __future__ import annotations

from enum import Enum
from pathlib import Path
from typing import Dict, List, Optional, Union

from pydantic import BaseModel, Field, field_validator, model_validator


class Settings(BaseModel):
    # 验证容差
    coincidence_tol: float = Field(1e-9, gt=0, description="见证对中非目标不变量的相对一致容差")
    separation_floor: float = Field(1e-6, gt=0, description="见证对中目标不变量的最小分离量")
    isotropy_tol: float = Field(1e-8, gt=0, description="各向同性/半各向同性检验的相对容差")
    identity_tol: float = Field(1e-10, gt=0, description="A(<Q>K) = det(Q) <Q>A(K) 的残差上限")
    float_rank_threshold: float = Field(1e-8, gt=0, description="浮点秩交叉检验的奇异值阈值（相对最大奇异值）")

    # 随机检验
    seed: int = Field(0, description="随机种子")
    fuzz_trials: int = Field(1000, ge=1, description="各向同性随机检验次数")
    fuzz_tensor_count: int = Field(100, ge=1, description="随机整数 Hall 张量的个数")
    rows_multiplier: int = Field(2, ge=1, description="随机取点时行数 = 倍数 × 单项式个数")
    random_entry_bound: int = Field(5, ge=1, description="随机整数分量范围 [-bound, bound]")

    # 运行
    max_workers: int = Field(4, ge=1, description="并行计算的线程数")
    log_level: str = Field("INFO", description="日志级别")


class OutputMode(str, Enum):
    HUMAN = "human"
    JSON = "json"


class PointSource(str, Enum):
    PAPER = "paper"
    RANDOM = "random"


class CommandConfig(BaseModel):
    """One CLI invocation, after flags have been merged over Settings."""
    subcommand: str
    input_path: Optional[Path] = None
    seed: int = 0
    trials: int = Field(1, ge=1)
    coincidence_tol: float = Field(1e-9, gt=0)
    separation_floor: float = Field(1e-6, gt=0)
    isotropy_tol: float = Field(1e-8, gt=0)
    output: OutputMode = OutputMode.HUMAN

    @model_validator(mode="after")
    def _floor_above_tol(self) -> "CommandConfig":
        if self.separation_floor <= self.coincidence_tol:
            raise ValueError("separation_floor must exceed coincidence_tol")
        return self


# ===== Tensor file =====

class TensorFile(BaseModel):
    """{"k": [k121, k122, k123, k131, k132, k133, k231, k232, k233]}"""
    k: List[Union[int, float, str]] = Field(..., min_length=9, max_length=9)

    @field_validator("k", mode="before")
    @classmethod
    def _no_bools(cls, v):
        if isinstance(v, list):
            for i, x in enumerate(v):
                if isinstance(x, bool):
                    raise ValueError(f"k[{i}] must be a number or a 'p/q' string")
        return v


# ===== Reports =====

class InvariantsReport(BaseModel):
    exact: bool
    invariants: Dict[str, Union[float, str]]


class RankReport(BaseModel):
    degree: int
    monomial_count: int
    point_count: int
    rank: int
    float_rank: Optional[int] = None
    passed: bool
    points: List[List[int]]


class MinimalityReport(BaseModel):
    source: PointSource
    seed: Optional[int] = None
    rows_multiplier: Optional[int] = None
    ranks: List[int]
    passed: bool
    reports: List[RankReport]


class SeparationReport(BaseModel):
    case_id: int
    target: str
    target_delta: float
    max_mismatch: float
    worst_invariant: Optional[str] = None
    passed: bool
    values: Dict[str, float]
    values_prime: Dict[str, float]
    # set only when the pair differs from its documented form
    transcription_note: Optional[str] = None
    printed_max_mismatch: Optional[float] = None
    printed_worst_invariant: Optional[str] = None


class FunctionBasisReport(BaseModel):
    coincidence_tol: float
    separation_floor: float
    passed_count: int
    case_count: int
    passed: bool
    cases: List[SeparationReport]


class FuzzReport(BaseModel):
    seed: int
    trials: int
    tensor_count: int
    tolerance: float
    max_relative_deviation: float
    per_invariant: Dict[str, float]
    max_hemitropy_deviation: float
    max_identity_residual: float
    passed: bool


class FieldReport(BaseModel):
    current: List[float]
    magnetic: List[float]
    electric: List[float]
