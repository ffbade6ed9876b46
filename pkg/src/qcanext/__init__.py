"""Exact computation with quantale-enriched spaces, MacNeille completions and
canonical extensions on finite instances."""

__version__ = "0.1.0"

from .errors import (
    AxiomViolation,
    BudgetExceeded,
    ClassNotClosed,
    InvalidInput,
    QcanextError,
    ReflexivityViolation,
    ShapeMismatch,
    TransitivityViolation,
)
from .quantale import (
    INF,
    Bool2,
    LanguageTrunc,
    LawvereChain,
    Quantale,
    SimilarityChain,
    check_quantale_laws,
    opposite,
)
from .space import (
    FinSpace,
    SpaceMap,
    check_functor,
    discrete_space,
    generated_space,
    is_skeletal,
    one_point,
    opposite_space,
    order_on_maps,
    self_enrichment,
    underlying_order,
    validate_space,
)
from .relation import (
    QRel,
    compose,
    copresheaf_space,
    lres_rel,
    presheaf_space,
    rel_order,
    rres_rel,
    yoneda_down,
    yoneda_up,
)
from .limits import (
    colimit,
    limit,
    observability,
    pointwise_colim,
    pointwise_lim,
    power,
    preserves_colimits,
    preserves_limits,
    reachability,
    tensor,
)
from .macneille import (
    CompletionSpace,
    Concept,
    Context,
    closure,
    coclosure,
    completion_iso,
    down,
    enumerate_concepts,
    is_completion_of,
    mc_colimit,
    mc_embed_a,
    mc_embed_x,
    mc_hom,
    mc_limit,
    restrict_discrete,
    to_dot,
    up,
)
from .canext import (
    CanExt,
    canonical_extension,
    check_compactness,
    check_density,
    check_embedding_preservation,
    closed_element,
    enumerate_filters,
    enumerate_ideals,
    intermediate_context,
    open_element,
)
from .funext import (
    ExtensionBundle,
    check_adjunction,
    check_exchange,
    check_functoriality,
    check_virtual_adjoint,
    commutation_report,
    gext,
    glift,
    gpi,
    gsigma,
    precompose,
)
