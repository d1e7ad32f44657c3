use super::diagram::{BuiltinDiagram, DiagramSpec};
use super::element::TwistedElement;
use crate::derham::ProxyOp;
use crate::error::{AlgebraError, Result};
use crate::forms::{form_to_proxy, proxy_to_form, ProxyField};

/// Proxy of a BGG element: the scalar/vector/matrix field of its single
/// active row.
pub fn bgg_to_proxy(spec: &DiagramSpec, u: &TwistedElement) -> Result<ProxyField> {
    u.check_against(spec)?;
    let row = active_row(spec, u.degree())?;
    if u.support().iter().any(|&j| j != row) {
        return Err(AlgebraError::NotInSubspace(format!(
            "Υ^{} of {}",
            u.degree(),
            spec.name()
        )));
    }
    form_to_proxy(u.component(row))
}

/// BGG element of degree `degree` with the given proxy in the active row.
/// Fails if the field does not lie in `Υ`.
pub fn bgg_from_proxy(
    spec: &DiagramSpec,
    degree: usize,
    field: &ProxyField,
) -> Result<TwistedElement> {
    let row = active_row(spec, degree)?;
    let f = proxy_to_form(field, spec.n(), degree, spec.rows()[row])?;
    let u = TwistedElement::in_row(spec, row, f)?;
    if !spec.in_upsilon(&u)? {
        return Err(AlgebraError::NotInSubspace(format!(
            "Υ^{degree} of {}",
            spec.name()
        )));
    }
    Ok(u)
}

fn active_row(spec: &DiagramSpec, degree: usize) -> Result<usize> {
    if degree > spec.n() {
        return Err(AlgebraError::FormDegree {
            k: degree,
            reason: "exceeds n",
        });
    }
    spec.active_row(degree).ok_or_else(|| {
        AlgebraError::Unsupported(format!("Υ^{degree} of {} spans several rows", spec.name()))
    })
}

/// The classical operator (with sign) that `𝒟ⁱ` reproduces on proxies for
/// the 3D builtins.
pub fn expected_proxy_operator(which: BuiltinDiagram, degree: usize) -> Option<(ProxyOp, i64)> {
    use ProxyOp::*;
    let table: [(ProxyOp, i64); 3] = match which {
        BuiltinDiagram::Elasticity => [(Def, 1), (Inc, -1), (Div, 1)],
        BuiltinDiagram::Hessian => [(Hess, 1), (Curl, 1), (Div, 1)],
        BuiltinDiagram::DivDiv => [(DevGrad, 1), (SymCurl, 1), (DivDiv, 1)],
        BuiltinDiagram::OneD => return None,
    };
    table.get(degree).copied()
}
