"""Fuzzy and neutrosophic tools for process-engineering case studies.

Mamdani controllers with mean-of-maximum output, set-point selection by
center max-min, fuzzy relational equations with a one-layer network fallback,
raw-mix proportioning, α-cut fuzzy linear programming and neutrosophic
relations. Worked cases ship as scenario files; see :mod:`fuzzyproc.runner`.
"""

from .ckd import (
    CKD_RULES,
    CKD_RULES_LISTING,
    REPROCESS_RULES,
    MamdaniController,
    RuleTable,
    VolatileTable,
    alkali_ratio,
    ckd_controller,
    evaluate,
    fire_rules,
    infer,
    reprocessing_controller,
)
from .errors import (
    ConfigurationError,
    DomainError,
    EmptyOutputError,
    FuzzyProcError,
    InfeasibleError,
    ScenarioError,
    SingularSystemError,
    UnboundedError,
)
from .flp import (
    FlpProblem,
    ParametricConstraint,
    alpha_sweep,
    constraint_membership,
    decision_feasibility,
    objective_bounds,
    objective_membership,
    parametric_rhs,
    solve_parametric,
)
from .fre import FnnConfig, FreSystem, compose, fnn_solve, greatest_solution, partition_diagnose, two_stage_solve
from .lp import solve_crisp_lp
from .membership import LinguisticVariable, TriangularMF, aggregate, defuzz_mom, fuzzify, mf_grade
from .neutro import (
    I,
    SAMPLE_RELATION,
    NeutroMatrix,
    NeutroValue,
    dom,
    height,
    is_reflexive,
    is_symmetric,
    is_transitive,
    n_compose,
    nre_solve,
    ran,
    sagittal_edges,
    tconorm,
    tnorm,
    transitive_closure,
)
from .plants import FlowScenario, build_extraction, build_flowsheet, build_pipe_network, solve_crisp
from .rawmix import (
    MixState,
    OxideComposition,
    RefineConfig,
    build_mix_system,
    fnn_refine,
    mix_error,
    moduli,
    moduli_jacobian,
    norm_band_flags,
    solve_dw,
)
from .runner import emit_csv, reproduce_paper, run
from .scenario import load_scenario
from .setpoint import RuleGrades, SetpointCandidate, ThrottleSubset, centroid_combine, rule_throttle, select_setpoint

__version__ = "0.1.0"
