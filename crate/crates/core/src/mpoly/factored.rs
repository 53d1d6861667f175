//! Splitting a polynomial against a list of known factors.

use std::fmt;

use serde::Serialize;

use super::poly::{Mono, MultiPoly};
use crate::exact::QuadExt;

/// `monomial · Π factor^mult · residual`; `residual` carries the scalar.
#[derive(Clone, Debug, PartialEq)]
pub struct Factored {
    pub monomial: Mono,
    pub factors: Vec<(MultiPoly, u32)>,
    pub residual: MultiPoly,
}

pub fn factor_against(p: &MultiPoly, hints: &[MultiPoly]) -> Factored {
    let monomial = p.monomial_content();
    let mut rest = p.div_monomial(&monomial);
    let mut factors = Vec::new();
    for h in hints.iter().filter(|h| !h.is_constant() && h.nvars() == p.nvars() && h.num_terms() > 1) {
        let mut times = 0;
        while let Some(q) = rest.exact_div(h) {
            rest = q;
            times += 1;
        }
        if times > 0 {
            factors.push((h.clone(), times));
        }
    }
    Factored { monomial, factors, residual: rest }
}

impl Factored {
    pub fn expand(&self) -> MultiPoly {
        let n = self.residual.nvars();
        let mono = MultiPoly::monomial(n, self.monomial, QuadExt::from_int(1));
        self.factors.iter().fold(mono.mul(&self.residual), |acc, (f, k)| acc.mul(&f.pow(*k)))
    }

    /// Total degree of the monomial part.
    pub fn monomial_degree(&self) -> u32 {
        self.monomial.degree()
    }
}

impl fmt::Display for Factored {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.residual.nvars();
        let mut parts = Vec::new();
        if !self.residual.is_constant() || self.residual.num_terms() != 1 || self.residual.coeff(&Mono::default()) != QuadExt::from_int(1) {
            parts.push(format!("({})", self.residual));
        }
        if self.monomial.degree() > 0 {
            parts.push(MultiPoly::monomial(n, self.monomial, QuadExt::from_int(1)).to_string());
        }
        for (h, k) in &self.factors {
            parts.push(if *k == 1 { format!("({h})") } else { format!("({h})^{k}") });
        }
        write!(f, "{}", parts.join("*"))
    }
}

impl Serialize for Factored {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
