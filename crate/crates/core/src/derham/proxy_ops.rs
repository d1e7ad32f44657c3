use std::str::FromStr;

use crate::error::{AlgebraError, Result};
use crate::forms::ProxyField;
use crate::ratpoly::{rat, Poly};

/// Differential operators on scalar/vector/matrix proxies. Matrix arguments
/// are differentiated row by row.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProxyOp {
    Grad,
    Curl,
    Div,
    Def,
    Hess,
    Inc,
    DivDiv,
    SymCurl,
    DevGrad,
    DevHess,
    DevDef,
}

impl ProxyOp {
    pub const ALL: [ProxyOp; 11] = [
        ProxyOp::Grad,
        ProxyOp::Curl,
        ProxyOp::Div,
        ProxyOp::Def,
        ProxyOp::Hess,
        ProxyOp::Inc,
        ProxyOp::DivDiv,
        ProxyOp::SymCurl,
        ProxyOp::DevGrad,
        ProxyOp::DevHess,
        ProxyOp::DevDef,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ProxyOp::Grad => "grad",
            ProxyOp::Curl => "curl",
            ProxyOp::Div => "div",
            ProxyOp::Def => "def",
            ProxyOp::Hess => "hess",
            ProxyOp::Inc => "inc",
            ProxyOp::DivDiv => "divdiv",
            ProxyOp::SymCurl => "symcurl",
            ProxyOp::DevGrad => "devgrad",
            ProxyOp::DevHess => "devhess",
            ProxyOp::DevDef => "devdef",
        }
    }
}

impl FromStr for ProxyOp {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self> {
        ProxyOp::ALL
            .into_iter()
            .find(|op| op.name() == s)
            .ok_or_else(|| AlgebraError::UnknownName(s.to_string()))
    }
}

type Matrix = Vec<Vec<Poly>>;

fn grad_scalar(p: &Poly) -> Vec<Poly> {
    (0..p.dim()).map(|c| p.d(c)).collect()
}

fn grad_vector(v: &[Poly]) -> Matrix {
    v.iter().map(grad_scalar).collect()
}

fn curl_vector(v: &[Poly]) -> Result<Vec<Poly>> {
    if v.len() != 3 || v[0].dim() != 3 {
        return Err(AlgebraError::Unsupported("curl needs n = 3".into()));
    }
    Ok(vec![
        &v[2].d(1) - &v[1].d(2),
        &v[0].d(2) - &v[2].d(0),
        &v[1].d(0) - &v[0].d(1),
    ])
}

fn div_vector(v: &[Poly]) -> Poly {
    let mut acc = Poly::zero(v[0].dim());
    for (c, p) in v.iter().enumerate() {
        acc = &acc + &p.d(c);
    }
    acc
}

fn transpose(m: &Matrix) -> Matrix {
    let n = m.len();
    (0..n)
        .map(|i| (0..n).map(|j| m[j][i].clone()).collect())
        .collect()
}

fn sym(m: &Matrix) -> Matrix {
    let n = m.len();
    let half = rat(1, 2);
    (0..n)
        .map(|i| (0..n).map(|j| (&m[i][j] + &m[j][i]).scale(&half)).collect())
        .collect()
}

fn dev(m: &Matrix) -> Matrix {
    let n = m.len();
    let mut tr = Poly::zero(m[0][0].dim());
    for (i, row) in m.iter().enumerate() {
        tr = &tr + &row[i];
    }
    let t = tr.scale(&rat(1, n as i64));
    let mut out = m.clone();
    for (i, row) in out.iter_mut().enumerate() {
        row[i] = &row[i] - &t;
    }
    out
}

fn square(m: &Matrix) -> bool {
    let n = m.len();
    n > 0 && m.iter().all(|r| r.len() == n)
}

/// Applies a named proxy operator to a field.
pub fn proxy_operator(op: ProxyOp, field: &ProxyField) -> Result<ProxyField> {
    use ProxyField::{Matrix as Mat, Scalar, Vector};
    let mismatch =
        || AlgebraError::ShapeMismatch(format!("{} of a {} field", op.name(), field.kind()));
    Ok(match (op, field) {
        (ProxyOp::Grad, Scalar(p)) => Vector(grad_scalar(p)),
        (ProxyOp::Grad, Vector(v)) => Mat(grad_vector(v)),
        (ProxyOp::Curl, Vector(v)) => Vector(curl_vector(v)?),
        (ProxyOp::Curl, Mat(m)) if square(m) => {
            Mat(m.iter().map(|r| curl_vector(r)).collect::<Result<_>>()?)
        }
        (ProxyOp::Div, Vector(v)) if !v.is_empty() => Scalar(div_vector(v)),
        (ProxyOp::Div, Mat(m)) if square(m) => Vector(m.iter().map(|r| div_vector(r)).collect()),
        (ProxyOp::Def, Vector(v)) if !v.is_empty() => Mat(sym(&grad_vector(v))),
        (ProxyOp::Hess, Scalar(p)) => Mat(grad_vector(&grad_scalar(p))),
        (ProxyOp::Inc, Mat(m)) if square(m) => {
            let c: Matrix = m.iter().map(|r| curl_vector(r)).collect::<Result<_>>()?;
            let ct = transpose(&c);
            Mat(ct.iter().map(|r| curl_vector(r)).collect::<Result<_>>()?)
        }
        (ProxyOp::DivDiv, Mat(m)) if square(m) => {
            let w: Vec<Poly> = m.iter().map(|r| div_vector(r)).collect();
            Scalar(div_vector(&w))
        }
        (ProxyOp::SymCurl, Mat(m)) if square(m) => {
            let c: Matrix = m.iter().map(|r| curl_vector(r)).collect::<Result<_>>()?;
            Mat(sym(&c))
        }
        (ProxyOp::DevGrad, Vector(v)) if !v.is_empty() => Mat(dev(&grad_vector(v))),
        (ProxyOp::DevHess, Scalar(p)) => Mat(dev(&grad_vector(&grad_scalar(p)))),
        (ProxyOp::DevDef, Vector(v)) if !v.is_empty() => Mat(dev(&sym(&grad_vector(v)))),
        _ => return Err(mismatch()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::int;

    fn x(i: usize) -> Poly {
        Poly::var(3, i)
    }

    fn zeros() -> Matrix {
        vec![vec![Poly::zero(3); 3]; 3]
    }

    #[test]
    fn def_of_shear() {
        let w = ProxyField::Vector(vec![x(1), Poly::zero(3), Poly::zero(3)]);
        let mut expected = zeros();
        expected[0][1] = Poly::constant(3, rat(1, 2));
        expected[1][0] = Poly::constant(3, rat(1, 2));
        assert_eq!(
            proxy_operator(ProxyOp::Def, &w).unwrap(),
            ProxyField::Matrix(expected)
        );
    }

    #[test]
    fn hess_of_product() {
        let mut expected = zeros();
        expected[0][1] = Poly::constant(3, int(1));
        expected[1][0] = Poly::constant(3, int(1));
        let h = proxy_operator(ProxyOp::Hess, &ProxyField::Scalar(&x(0) * &x(1))).unwrap();
        assert_eq!(h, ProxyField::Matrix(expected));
    }

    #[test]
    fn inc_kills_def() {
        let w = ProxyField::Vector(vec![&x(1) * &x(2), &(&x(0) * &x(0)) * &x(2), &x(1) * &x(1)]);
        let e = proxy_operator(ProxyOp::Def, &w).unwrap();
        assert!(proxy_operator(ProxyOp::Inc, &e).unwrap().is_zero());
    }

    #[test]
    fn shape_errors() {
        assert!(proxy_operator(ProxyOp::Inc, &ProxyField::Scalar(x(0))).is_err());
        assert!(proxy_operator(
            ProxyOp::Curl,
            &ProxyField::Vector(vec![Poly::var(2, 0), Poly::var(2, 1)])
        )
        .is_err());
        assert!("curl".parse::<ProxyOp>().is_ok());
        assert!("rot".parse::<ProxyOp>().is_err());
    }
}
