//! Value spaces, polynomial differential forms with values in them, and the
//! algebraic proxy maps relating vector/matrix fields to forms.

mod form;
mod json;
mod proxy;
mod value;

pub use form::{form_indices, FormBasis, FormIndex, PolyForm};
pub use json::{
    polyform_from_json, polyform_to_json, PolyFormJson, TermJson, MAX_JSON_DIM, MAX_JSON_EXPONENT,
};
pub(crate) use proxy::wedge_sign;
pub use proxy::{form_to_proxy, proxy_to_form, ProxyField};
pub use value::{proxy_map, ProxyMapName, ValueMap, ValueSpace, ValueTag};
