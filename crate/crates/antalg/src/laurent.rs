//! Laurent polynomials with exact rational coefficients, in one variable (z)
//! and in two (p, q). Negative exponents are first-class; there is no
//! rational-function field anywhere in the crate.

use crate::scalar::{format_signed, Scalar};
use num::Zero;
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Laurent1 {
    /// exponent -> nonzero coefficient
    terms: BTreeMap<i64, Scalar>,
}

impl Laurent1 {
    pub fn zero() -> Self {
        Laurent1::default()
    }

    pub fn monomial(c: Scalar, e: i64) -> Self {
        let mut p = Laurent1::zero();
        p.add_term(e, c);
        p
    }

    pub fn one() -> Self {
        Laurent1::monomial(crate::scalar::one(), 0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, e: i64, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(Scalar::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn add(&self, other: &Laurent1) -> Laurent1 {
        let mut out = self.clone();
        for (&e, c) in &other.terms {
            out.add_term(e, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Laurent1) -> Laurent1 {
        let mut out = self.clone();
        for (&e, c) in &other.terms {
            out.add_term(e, -c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Laurent1 {
        if c.is_zero() {
            return Laurent1::zero();
        }
        Laurent1 {
            terms: self.terms.iter().map(|(&e, v)| (e, v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Laurent1) -> Laurent1 {
        let mut out = Laurent1::zero();
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &other.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }

    /// d/dz.
    pub fn derivative(&self) -> Laurent1 {
        let mut out = Laurent1::zero();
        for (&e, c) in &self.terms {
            out.add_term(e - 1, c * crate::scalar::int(e));
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Scalar)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    /// The single (coefficient, exponent) pair of a monomial, if it is one.
    pub fn as_monomial(&self) -> Option<(Scalar, i64)> {
        if self.terms.len() == 1 {
            let (&e, c) = self.terms.iter().next().unwrap();
            Some((c.clone(), e))
        } else {
            None
        }
    }

    pub fn format(&self, var: &str) -> String {
        format_terms(
            self.terms.iter().map(|(&e, c)| {
                let mono = match e {
                    0 => String::new(),
                    1 => var.to_string(),
                    _ => format!("{var}^{e}"),
                };
                (c.clone(), mono)
            }),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Laurent2 {
    /// (p-exponent, q-exponent) -> nonzero coefficient
    terms: BTreeMap<(i64, i64), Scalar>,
}

impl Laurent2 {
    pub fn zero() -> Self {
        Laurent2::default()
    }

    pub fn monomial(c: Scalar, ep: i64, eq: i64) -> Self {
        let mut p = Laurent2::zero();
        p.add_term(ep, eq, c);
        p
    }

    pub fn one() -> Self {
        Laurent2::monomial(crate::scalar::one(), 0, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, ep: i64, eq: i64, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((ep, eq)).or_insert_with(Scalar::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(ep, eq));
        }
    }

    pub fn add(&self, other: &Laurent2) -> Laurent2 {
        let mut out = self.clone();
        for (&(ep, eq), c) in &other.terms {
            out.add_term(ep, eq, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Laurent2) -> Laurent2 {
        let mut out = self.clone();
        for (&(ep, eq), c) in &other.terms {
            out.add_term(ep, eq, -c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Laurent2 {
        if c.is_zero() {
            return Laurent2::zero();
        }
        Laurent2 {
            terms: self.terms.iter().map(|(&k, v)| (k, v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Laurent2) -> Laurent2 {
        let mut out = Laurent2::zero();
        for (&(p1, q1), c1) in &self.terms {
            for (&(p2, q2), c2) in &other.terms {
                out.add_term(p1 + p2, q1 + q2, c1 * c2);
            }
        }
        out
    }

    pub fn d_p(&self) -> Laurent2 {
        let mut out = Laurent2::zero();
        for (&(ep, eq), c) in &self.terms {
            out.add_term(ep - 1, eq, c * crate::scalar::int(ep));
        }
        out
    }

    pub fn d_q(&self) -> Laurent2 {
        let mut out = Laurent2::zero();
        for (&(ep, eq), c) in &self.terms {
            out.add_term(ep, eq - 1, c * crate::scalar::int(eq));
        }
        out
    }

    /// p d/dp + q d/dq: multiplies each monomial by its total degree.
    pub fn euler(&self) -> Laurent2 {
        let mut out = Laurent2::zero();
        for (&(ep, eq), c) in &self.terms {
            out.add_term(ep, eq, c * crate::scalar::int(ep + eq));
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = ((i64, i64), &Scalar)> {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    pub fn as_monomial(&self) -> Option<(Scalar, i64, i64)> {
        if self.terms.len() == 1 {
            let (&(ep, eq), c) = self.terms.iter().next().unwrap();
            Some((c.clone(), ep, eq))
        } else {
            None
        }
    }

    pub fn format(&self, extra: &str) -> String {
        format_terms(self.terms.iter().map(|(&(ep, eq), c)| {
            let mut mono = String::new();
            for (var, e) in [("p", ep), ("q", eq)] {
                match e {
                    0 => {}
                    1 => {
                        if !mono.is_empty() {
                            mono.push(' ');
                        }
                        mono.push_str(var);
                    }
                    _ => {
                        if !mono.is_empty() {
                            mono.push(' ');
                        }
                        mono.push_str(&format!("{var}^{e}"));
                    }
                }
            }
            if !extra.is_empty() {
                if !mono.is_empty() {
                    mono.push(' ');
                }
                mono.push_str(extra);
            }
            (c.clone(), mono)
        }))
    }
}

fn format_terms(terms: impl Iterator<Item = (Scalar, String)>) -> String {
    let mut out = String::new();
    let mut first = true;
    for (c, mono) in terms {
        let (neg, mag) = format_signed(&c);
        if first {
            if neg {
                out.push('-');
            }
            first = false;
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if mag != "1" || mono.is_empty() {
            out.push_str(&mag);
            if !mono.is_empty() {
                out.push(' ');
            }
        }
        out.push_str(&mono);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int};

    #[test]
    fn laurent1_arithmetic() {
        let z = Laurent1::monomial(int(1), 1);
        let zinv = Laurent1::monomial(int(1), -1);
        assert_eq!(z.mul(&zinv), Laurent1::one());
        assert_eq!(z.derivative(), Laurent1::one());
        assert_eq!(
            Laurent1::monomial(int(1), -2).derivative(),
            Laurent1::monomial(int(-2), -3)
        );
    }

    #[test]
    fn laurent2_partials_and_euler() {
        // f = 3/2 p^2 q^-1
        let f = Laurent2::monomial(frac(3, 2), 2, -1);
        assert_eq!(f.d_p(), Laurent2::monomial(int(3), 1, -1));
        assert_eq!(f.d_q(), Laurent2::monomial(frac(-3, 2), 2, -2));
        assert_eq!(f.euler(), f.scale(&int(1))); // degree 2 - 1 = 1
    }

    #[test]
    fn display_forms() {
        let mut f = Laurent2::monomial(int(2), 1, 0);
        f.add_term(0, 1, int(-1));
        assert_eq!(f.format(""), "-q + 2 p");
        assert_eq!(Laurent1::zero().format("z"), "0");
    }
}
