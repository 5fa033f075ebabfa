"""Finite-group workbench for commutative transitivity and conjugate
separation: exact field arithmetic, Cayley-table group engine, property
deciders with cross-checking methods and witnesses, a prenex sentence
evaluator, and reproduction suites over a configurable corpus."""

from .errors import (
    ActionNotAutomorphism,
    ActionNotHomomorphism,
    ConfigError,
    DepthCapExceeded,
    DivisibilityViolated,
    DivisionByZero,
    FieldTooLarge,
    InfiniteFieldUnsupported,
    IsCSA,
    NoMatrixLabels,
    NoModulusAvailable,
    NonClosedArithmetic,
    NonPrime,
    NotCharTwo,
    NotCharTwoFinite,
    NotCT,
    NotNormal,
    NotSolvableCT,
    OrderCapExceeded,
    ParseError,
    PreconditionFailed,
    RecipeError,
    SpecMismatch,
    UnboundVariable,
    UnknownBuiltin,
    WorkbenchError,
)
from .fields import (
    FieldScalar,
    FieldSpec,
    format_scalar,
    frobenius,
    is_sum_of_two_squares,
    make_field,
    op_tables,
    parse_scalar,
)
from .groups import (
    FiniteGroup,
    SubgroupSet,
    alternating_group,
    center,
    centralizer,
    close_generators,
    conjugacy_classes,
    cyclic_group,
    derived_series,
    dihedral_group,
    direct_product,
    find_isomorphism,
    fitting_subgroup,
    frobenius_pq,
    is_isomorphic,
    is_malnormal,
    is_nilpotent,
    is_simple,
    is_solvable,
    maximal_abelian_subgroups,
    minimal_normal_subgroups,
    monolith,
    normal_closure,
    normal_subgroups,
    semidirect_product,
    subgroup_generated,
    symmetric_group,
)
from .logic import (
    BUILTIN_NAMES,
    EvalResult,
    Sentence,
    builtin,
    check_assignment,
    evaluate,
    negate_sentence,
    parse,
    to_text,
)
from .properties import (
    CSA_METHODS,
    CT_METHODS,
    PropertyReport,
    WuClassification,
    csa_implies_abelian_scan,
    is_csa,
    is_ct,
    notmal_witness,
    theorem41_extract,
    verify_wu_solvable_structure,
    wu_classify,
)
from .psl2 import (
    GroupAutomorphism,
    Mat2,
    ProjMat2,
    char0_ct_counterexample,
    commutes,
    compose,
    conjugation_kernel,
    equal_automorphisms,
    frobenius_automorphism,
    gaussian_tuv_example,
    inner_automorphism,
    matrix_index,
    psl2_group,
    psl2_order,
    scalar_centralizer_check,
    sl2_group,
)
from .recipes import build_group, normalize_recipe, parse_recipe
from .harness import (
    Caps,
    Config,
    CorpusEntry,
    SuiteRow,
    SUITE_NAMES,
    config_from_dict,
    config_hash,
    config_to_dict,
    default_config,
    emit_json,
    emit_markdown,
    failing_rows,
    group_info,
    load_config,
    rows_pass,
    run_all,
    run_suite,
)

__version__ = "0.1.0"
