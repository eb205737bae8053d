//! Homogeneous polynomials over the rationals.

mod monomial;
mod parse;
mod poly;

use std::fmt;
use std::sync::Arc;

pub use monomial::{binomial, Monomial, MonomialOrder, MAX_VARS};
pub use parse::parse_polynomial;
pub use poly::{Poly, Polynomial};

use crate::error::{Error, Result};
use crate::field::{Field, Rational};

/// Variables and monomial order of a polynomial ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingDescriptor {
    var_names: Vec<String>,
    order: MonomialOrder,
}

pub type Ring = Arc<RingDescriptor>;

impl RingDescriptor {
    pub fn new(var_names: Vec<String>) -> Result<Ring> {
        if var_names.is_empty() || var_names.len() > MAX_VARS {
            return Err(Error::InvalidInput(format!("ring needs between 1 and {MAX_VARS} variables")));
        }
        for (i, a) in var_names.iter().enumerate() {
            if !is_identifier(a) {
                return Err(Error::InvalidInput(format!("invalid variable name `{a}`")));
            }
            if var_names[..i].contains(a) {
                return Err(Error::InvalidInput(format!("duplicate variable name `{a}`")));
            }
        }
        Ok(Arc::new(RingDescriptor { var_names, order: MonomialOrder::GRevLex }))
    }

    /// `x0..x{n}`: the coordinate ring of P^n.
    pub fn projective(n: usize) -> Ring {
        Self::new((0..=n).map(|i| format!("x{i}")).collect()).expect("valid default ring")
    }

    /// Coordinate ring of P^4 with variables x0..x4.
    pub fn p4() -> Ring {
        Self::projective(4)
    }

    pub fn num_vars(&self) -> usize {
        self.var_names.len()
    }

    /// n for P^n.
    pub fn projective_dim(&self) -> usize {
        self.var_names.len() - 1
    }

    pub fn var_names(&self) -> &[String] {
        &self.var_names
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.var_names.iter().position(|v| v == name)
    }

    pub fn with_order(&self, order: MonomialOrder) -> Ring {
        Arc::new(RingDescriptor { var_names: self.var_names.clone(), order })
    }

    pub fn display<'a, F: Field>(&'a self, p: &'a Poly<F>) -> PolyDisplay<'a, F> {
        PolyDisplay { ring: self, poly: p }
    }

    pub fn format(&self, p: &Polynomial) -> String {
        self.display(p).to_string()
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (i, name) in self.var_names.iter().enumerate() {
            match m.exp(i) {
                0 => {}
                1 => parts.push(name.clone()),
                e => parts.push(format!("{name}^{e}")),
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    pub fn parse(&self, src: &str) -> Result<Polynomial> {
        parse_polynomial(src, self)
    }
}

pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub struct PolyDisplay<'a, F> {
    ring: &'a RingDescriptor,
    poly: &'a Poly<F>,
}

impl<F: Field> fmt::Display for PolyDisplay<'_, F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.poly.terms().iter().enumerate() {
            let mut cs = c.to_string();
            let negative = cs.starts_with('-');
            if negative {
                cs.remove(0);
            }
            if k == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if negative { "-" } else { "+" })?;
            }
            let mono = self.ring.format_monomial(m);
            match (cs.as_str(), mono.as_str()) {
                (_, "1") => write!(f, "{cs}")?,
                ("1", _) => write!(f, "{mono}")?,
                _ => write!(f, "{cs}*{mono}")?,
            }
        }
        Ok(())
    }
}

/// Formal partial derivative with respect to variable `var_index`.
pub fn partial_derivative(f: &Polynomial, var_index: usize, ring: &RingDescriptor) -> Result<Polynomial> {
    if var_index >= ring.num_vars() {
        return Err(Error::IndexOutOfRange { index: var_index, len: ring.num_vars() });
    }
    Ok(f.partial_derivative(var_index))
}

/// Sets the listed variables to zero; the result lives in the residual variables.
pub fn restrict_to_coordinate_subspace(f: &Polynomial, vanishing_vars: &[usize], ring: &RingDescriptor) -> Result<Polynomial> {
    if let Some(&bad) = vanishing_vars.iter().find(|&&v| v >= ring.num_vars()) {
        return Err(Error::IndexOutOfRange { index: bad, len: ring.num_vars() });
    }
    Ok(f.restrict_to_zero(vanishing_vars))
}

/// The gradient `(df/dx_0, ..., df/dx_n)`.
pub fn gradient(f: &Polynomial, ring: &RingDescriptor) -> Vec<Polynomial> {
    (0..ring.num_vars()).map(|i| f.partial_derivative(i)).collect()
}

pub fn rational(v: i64) -> Rational {
    Rational::from_i64(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_round_trip() {
        let r = RingDescriptor::p4();
        for src in ["x0^5+x1^5+x2^5+x3^5+x4^5", "x2*x0^4 + x3*x1^4 + x4*x0^3*x1", "-1/2*x0*x1 + 3*x2^2 - x4^2"] {
            let f = r.parse(src).unwrap();
            let again = r.parse(&r.format(&f)).unwrap();
            assert_eq!(f, again);
        }
    }

    #[test]
    fn derivative_and_restriction_examples() {
        let r = RingDescriptor::p4();
        let f = r.parse("x2*x0^4 + x3*x1^4 + x4*x0^3*x1").unwrap();
        assert_eq!(partial_derivative(&f, 2, &r).unwrap(), r.parse("x0^4").unwrap());
        assert!(partial_derivative(&f, 5, &r).is_err());
        assert!(restrict_to_coordinate_subspace(&f, &[2, 3, 4], &r).unwrap().is_zero());
        let fermat = r.parse("x0^5+x1^5+x2^5+x3^5+x4^5").unwrap();
        assert_eq!(restrict_to_coordinate_subspace(&fermat, &[2, 3, 4], &r).unwrap(), r.parse("x0^5+x1^5").unwrap());
        let g = r.parse("x0*x2").unwrap();
        assert!(restrict_to_coordinate_subspace(&g, &[2], &r).unwrap().is_zero());
    }

    #[test]
    fn ring_validation() {
        assert!(RingDescriptor::new(vec!["x".into(), "x".into()]).is_err());
        assert!(RingDescriptor::new(vec!["1x".into()]).is_err());
        assert_eq!(RingDescriptor::p4().num_vars(), 5);
    }
}
