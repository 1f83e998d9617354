"""Exact computer algebra for peak quasisymmetric functions, flag-vector
enumeration of graded posets, and the toric g-homomorphism."""

__version__ = "0.1.0"

from .combinat import (
    Composition,
    IntervalFamily,
    Subset,
    cd_words,
    composition_of_subset,
    compositions_of,
    fibonacci,
    interval_family_of_right_sparse,
    interval_family_of_word,
    is_even_word,
    peaks,
    reverse_word,
    subset_of_composition,
    subsets,
    sw_of_word,
    word_degree,
    word_of_left_sparse,
)
from .qsym import (
    QSym,
    antipode,
    convert,
    coproduct,
    dilate,
    f_coeffs,
    flag_f_to_h,
    flag_f_to_k,
    flag_h_to_k,
    from_f_coeffs,
    from_k_coeffs,
    from_m_coeffs,
    interval_qsym,
    k_coeffs,
    raise_degree,
    right_sparse_projection,
)
from .poset import (
    GradedPoset,
    PosetValidationError,
    adjoin_hat_below,
    boolean,
    build_family,
    chain,
    cube_faces,
    dual,
    from_covers,
    polygon,
    product,
    qsym_of_poset,
    simplex_faces,
)
from .peak import (
    CdPolynomial,
    NotInPeakAlgebraError,
    c2d_index,
    cd_index,
    cd_index_via_ab,
    dehn_sommerville_relations,
    dual_cd_check,
    eulerian_projection,
    is_in_peak_algebra,
    peak_antipode_rule,
    peak_combination,
    peak_expansion,
    peak_function,
    peak_function_of_set,
    sparse_peak_function,
)
from .transfer import (
    PeakDistribution,
    TransferMatrix,
    cone_check,
    eigen_expansion,
    peak_distribution,
    peak_transfer,
    transfer_eigenvector,
    transfer_eigenvector_theta,
    transfer_matrix,
    transfer_matrix_brute,
    transfer_spectrum,
    walk_step,
    zonotope_check,
)
from .toricg import (
    Polynomial,
    ballot,
    fg_poly_poset,
    g_on_qsym,
    g_theta,
    q_poly,
    t_poly,
    toric_h,
    truncate_rank,
)
from .linalg import SingularSystemError
