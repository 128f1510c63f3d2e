"""Enumerate two-level designs whose information matrix is an Ehlich matrix."""

from ._core import (
    ENGINE_VERSION,
    KEY_FORMAT_VERSION,
    CatalogError,
    EhlichSpec,
    Enumerator,
    InvalidSpecError,
    SingularMatrixError,
    TypeTag,
    alias_stats,
    build_matrix,
    candidate_sizes,
    canonical_key,
    check_ehlich_form,
    count_formulas,
    det_closed_form,
    display_c,
    efficiency_csv,
    efficiency_grid,
    initial_design,
    make_spec,
    read_catalog,
    trace_inv_closed_form,
    verify_catalog,
    write_cell,
)

__version__ = ENGINE_VERSION


def enumerate_all(n, p, s, threads=None):
    """Designs of every applicable type for K(n,p,s), keyed by TypeTag."""
    engine = Enumerator(n, threads)
    return {t: engine.enumerate_class(p, s, t) for t in Enumerator.types_for(n, p, s)}
