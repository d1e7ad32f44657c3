mod check;
mod diagram;
mod element;
pub(crate) mod family;
mod json;
mod ops;
mod proxy;

pub use check::{
    bgg_degree_shift, bgg_suite, check_cesaro_volterra, check_cochain, check_complexify,
    check_f_iso, check_homogeneous_grading, check_oned, check_proxy_agreement, homotopy_check_bgg,
    homotopy_check_twisted,
};
pub use diagram::{BuiltinDiagram, DiagramSpec};
pub use element::{twisted_from_json, ElementBasis, TwistedElement, MAX_JSON_ROWS};
pub use family::{
    check_complex_property, check_d_squared, check_homotopy, upsilon_samples, BggFamily,
    Complexified, DeRhamFamily, HomotopyFamily, TwistedFamily,
};
pub use json::{
    diagram_from_json, diagram_to_json, DiagramJson, SBlockJson, MAX_DIAGRAM_DIM, MAX_DIAGRAM_ROWS,
};
pub use proxy::{bgg_from_proxy, bgg_to_proxy, expected_proxy_operator};
