"""Qualitative pairwise comparison and rule mining for software project data.

Workflow: parse a project dataset, compare projects pairwise into sign-valued
records oriented on a pivot attribute, filter by a fixed antecedent, mine
consequents whose frequency and accuracy strictly clear their thresholds,
and classify effort trends across adjacent complexity scales.
"""

from .comparator import (
    DEFAULT_ANTECEDENT,
    DEFAULT_PIVOT,
    Antecedent,
    ComparisonRecord,
    ComparisonTable,
    Sign,
    apply_antecedent,
    build_comparison_table,
    compare_projects,
    write_table_csv,
)
from .dataset import (
    ACTUAL,
    ATTRIBUTES,
    DATASET_COLUMNS,
    DRIVERS,
    LOC,
    DatasetError,
    DevMode,
    Project,
    ProjectSet,
    Rating,
    parse_dataset,
    serialize_dataset,
)
from .miner import (
    AssociationRule,
    CandidateEvaluation,
    Consequent,
    MiningConfig,
    MiningError,
    MiningWarning,
    brute_force_oracle,
    evaluate_candidate,
    mine_rules,
    mine_rules_optimized,
    prune_for_consequent,
)
from .report import (
    Analysis,
    Engine,
    PipelineConfig,
    ReportFormat,
    RunReport,
    Scope,
    ScopeReport,
    emit_report,
    run_pipeline,
)
from .trend import (
    SCALE_PAIRS,
    ScalePair,
    ScalePairAnalysis,
    Trend,
    TrendAnalysis,
    TurningKind,
    TurningPoint,
    analyze_trends,
    classify_trend,
    effort_change_distribution,
    scale_pair_subsets,
    turning_points,
)

__version__ = "0.1.0"

__all__ = [
    "ACTUAL",
    "ATTRIBUTES",
    "Analysis",
    "Antecedent",
    "AssociationRule",
    "CandidateEvaluation",
    "ComparisonRecord",
    "ComparisonTable",
    "Consequent",
    "DATASET_COLUMNS",
    "DEFAULT_ANTECEDENT",
    "DEFAULT_PIVOT",
    "DRIVERS",
    "DatasetError",
    "DevMode",
    "Engine",
    "LOC",
    "MiningConfig",
    "MiningError",
    "MiningWarning",
    "PipelineConfig",
    "Project",
    "ProjectSet",
    "Rating",
    "ReportFormat",
    "RunReport",
    "SCALE_PAIRS",
    "ScalePair",
    "ScalePairAnalysis",
    "Scope",
    "ScopeReport",
    "Sign",
    "Trend",
    "TrendAnalysis",
    "TurningKind",
    "TurningPoint",
    "analyze_trends",
    "apply_antecedent",
    "brute_force_oracle",
    "build_comparison_table",
    "classify_trend",
    "compare_projects",
    "effort_change_distribution",
    "emit_report",
    "evaluate_candidate",
    "mine_rules",
    "mine_rules_optimized",
    "parse_dataset",
    "prune_for_consequent",
    "run_pipeline",
    "scale_pair_subsets",
    "serialize_dataset",
    "turning_points",
    "write_table_csv",
]
