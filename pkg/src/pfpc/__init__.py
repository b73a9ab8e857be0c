"""pfpc: an interpreter and semantics laboratory for a call-by-value
probabilistic lambda calculus with recursive types.

The package splits along the natural seams of the problem:

* syntax / surface / prelude - terms, types, parsing, printing, derived forms
* typecheck / generate       - formation rules and a random well-typed generator
* operational / distribution - small-step reduction and exact/sampled
                               reduction distributions
* valuations / kegelspitze   - the subprobability valuations monad on finite
                               posets and its convex-algebra structure
* denotational               - the definitional interpreter plus soundness,
                               adequacy and let-reordering checkers
* corpus / cli               - bundled example programs and the `pfpc` tool
"""

from .syntax import (
    App, Arrow, Case, Fold, Inj, Lam, Let, Mu, Or, Pair, Prod, Proj, Sum,
    Term, TVar, Type, Unfold, Var, alpha_eq, alpha_normalize, free_vars,
    subst_term, subst_type, types_equal,
)
from .surface import ParseError, parse_file, parse_term, parse_type, pretty, pretty_type
from .typecheck import TypeCheckError, check_program, elaborate, infer, is_empty_type, wf_type
from .operational import StuckTermError, decompose, is_value, plug, step
from .distribution import (
    DistReport, FrontierLimitError, estimate, explore, halt_lower_bound,
    sample_run,
)
from .valuations import (
    FinitePoset, ScottFunction, Valuation, check_fubini, choquet, eval_open,
    from_open_map, kleisli_ext, law_suite, multiply, stochastic_leq, strength,
    tensor, unit,
)
from .kegelspitze import (
    PointwiseFunctions, UnitInterval, ValuationSpace, barycenter, combine,
    convex_sum, em_law_suite, kleisli_convexity_suite, scale,
)
from .denotational import (
    SemValue, adequacy_check, denote, denote_value, let_commutativity_check,
    soundness_check,
)

__version__ = "0.1.0"
