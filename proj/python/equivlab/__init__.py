"""Verification workbench for complex vs self-adjoint random matrix/tensor
ensemble equivalences.

The heavy lifting lives in the C++ extension; this package re-exports it.
"""

from ._core import (  # noqa: F401
    DomainError,
    InputError,
    ResourceError,
    build_ck,
    catalan,
    character_expectation,
    class_size,
    cm_expect,
    compose,
    convergence_check,
    ct_expect,
    cycle_type,
    dual_weight_sum,
    gl_character,
    hm_expect,
    list_suites,
    pillow_det,
    pillow_logz,
    quartic_cm_logz,
    rt_logz,
    run_job,
    sn_character,
    st_det,
    st_logz,
    tensor_dual_weight_sum,
    verify_ck_residuals,
)

__all__ = [
    "DomainError",
    "InputError",
    "ResourceError",
    "build_ck",
    "catalan",
    "character_expectation",
    "class_size",
    "cm_expect",
    "compose",
    "convergence_check",
    "ct_expect",
    "cycle_type",
    "dual_weight_sum",
    "gl_character",
    "hm_expect",
    "list_suites",
    "pillow_det",
    "pillow_logz",
    "quartic_cm_logz",
    "rt_logz",
    "run_job",
    "sn_character",
    "st_det",
    "st_logz",
    "tensor_dual_weight_sum",
    "verify_ck_residuals",
]

__version__ = "0.1.0"
