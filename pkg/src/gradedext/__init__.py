"""gradedext: exact Ext and duality computations over p-local graded rings."""

from .abgroup import PGroup, cokernel
from .charts import (Chart, bundled_chart, chart_from_dict, chart_to_dict,
                     chart_to_module, compare_charts, dualize_chart,
                     load_chart, render_chart_ascii, render_chart_svg,
                     save_chart)
from .ext import (DualityReport, ExtTable, LocallyFiniteFamily,
                  NotLocallyFinite, duality_map, ext_group_presentation,
                  ext_table, ext_via_truncation, pontryagin_dual,
                  truncate_above, verify_duality)
from .graded import (ChainComplex, GradedFreeModule, GradedMap, GradedRing,
                     Poly, bp_ring, load_ring, make_ring)
from .plocal import PLocalMatrix, snf, vp
from .presentations import (GradedModulePresentation, check_local_finiteness,
                            content_range, cyclic_presentation, direct_sum,
                            free_presentation, load_presentation,
                            minimize_presentation, presentation,
                            save_presentation, suspend)
from .random_modules import random_finite_abelian_group, random_finite_module
from .resolutions import (BoundExceeded, Resolution, ext_profinite,
                          koszul_resolution, lift_chain_map,
                          minimal_free_resolution, p_power, var_power,
                          verify_exactness)

__version__ = "1.0.0"

__all__ = [
    "BoundExceeded", "ChainComplex", "Chart", "DualityReport", "ExtTable",
    "GradedFreeModule", "GradedMap", "GradedModulePresentation", "GradedRing",
    "LocallyFiniteFamily", "NotLocallyFinite", "PGroup", "PLocalMatrix",
    "Poly", "Resolution", "bp_ring", "bundled_chart", "chart_from_dict",
    "chart_to_dict", "chart_to_module", "check_local_finiteness", "cokernel",
    "compare_charts", "content_range", "cyclic_presentation", "direct_sum",
    "duality_map", "dualize_chart", "ext_group_presentation", "ext_profinite",
    "ext_table", "ext_via_truncation", "free_presentation",
    "koszul_resolution", "lift_chain_map", "load_chart", "load_presentation",
    "load_ring", "make_ring", "minimal_free_resolution",
    "minimize_presentation", "p_power", "pontryagin_dual", "presentation",
    "random_finite_abelian_group", "random_finite_module",
    "render_chart_ascii", "render_chart_svg", "save_chart",
    "save_presentation", "snf", "suspend", "truncate_above", "var_power",
    "verify_duality", "verify_exactness", "vp",
]
