//! Tensor-density calculus at genus 0 with two marked points.
//!
//! A [`Density`] is a Laurent polynomial in z with a half-integer weight
//! (stored doubled). Weight carries the parity: weight -1/2 densities are
//! odd, all other half-integer weights even. The three products:
//!
//! * `dmul`: (f dz^mu) . (g dz^lambda) = fg dz^{lambda+mu}
//! * `dbracket`: (f dz^mu, g dz^lambda) -> (-mu f g' + lambda f' g) dz^{lambda+mu+1}
//! * weight pairs in {0, -1/2}: the Lie antialgebra product `antiproduct`
//! * weight pairs in {-1, -1/2}: the adjoint Lie superbracket `superbracket`
//!
//! The window realizations use the dictionary eps_n -> z^{-n} in F_0 and
//! a_i -> z^{1/2-i} dz^{-1/2}; the naive eps_n -> z^n dictionary flips the
//! sign of the odd-odd products relative to the AK(1) table, which is what
//! the window-comparison test pins down.

use crate::error::Error;
use crate::laurent::Laurent1;
use crate::scalar::{frac, half, int, Scalar};
use crate::superalg::{AlgebraDef, BasisSymbol, Element, Parity, ProfileHint, TableEntry, WindowSpec};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// A weighted Laurent density f(z) dz^lambda; `doubled_weight` stores 2*lambda.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Density {
    pub poly: Laurent1,
    pub doubled_weight: i64,
}

impl Density {
    pub fn new(poly: Laurent1, doubled_weight: i64) -> Self {
        Density {
            poly,
            doubled_weight,
        }
    }

    pub fn monomial(c: Scalar, exp: i64, doubled_weight: i64) -> Self {
        Density::new(Laurent1::monomial(c, exp), doubled_weight)
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// Parity convention: weight -1/2 densities are odd; the even slots used
    /// here are F_0 and F_{-1}.
    pub fn parity(&self) -> Parity {
        if self.doubled_weight == -1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn weight(&self) -> Scalar {
        frac(self.doubled_weight, 2)
    }

    pub fn format(&self) -> String {
        let w = if self.doubled_weight % 2 == 0 {
            format!("{}", self.doubled_weight / 2)
        } else {
            format!("{}/2", self.doubled_weight)
        };
        format!("{} @ {}", self.poly.format("z"), w)
    }
}

/// Natural multiplication: weights add.
pub fn dmul(a: &Density, b: &Density) -> Density {
    Density::new(a.poly.mul(&b.poly), a.doubled_weight + b.doubled_weight)
}

/// The skew pairing F_mu x F_lambda -> F_{lambda+mu+1}:
/// (f, g) -> -mu f g' + lambda f' g.
pub fn dbracket(a: &Density, b: &Density) -> Density {
    let mu = frac(a.doubled_weight, 2);
    let lambda = frac(b.doubled_weight, 2);
    let term1 = a.poly.mul(&b.poly.derivative()).scale(&-mu);
    let term2 = a.poly.derivative().mul(&b.poly).scale(&lambda);
    Density::new(
        term1.add(&term2),
        a.doubled_weight + b.doubled_weight + 2,
    )
}

/// The Lie antialgebra product on F_0 (+) F_{-1/2}:
/// f o g = f.g, f o gamma = 1/2 f.gamma, phi o gamma = {phi, gamma}.
pub fn antiproduct(a: &Density, b: &Density) -> Result<Density, Error> {
    let ok = |d: &Density| d.doubled_weight == 0 || d.doubled_weight == -1;
    if !ok(a) || !ok(b) {
        return Err(Error::Input(format!(
            "antiproduct needs weights in {{0, -1/2}}, got {} and {}",
            a.weight(),
            b.weight()
        )));
    }
    Ok(match (a.doubled_weight, b.doubled_weight) {
        (0, 0) => dmul(a, b),
        (0, -1) | (-1, 0) => {
            let mut r = dmul(a, b);
            r.poly = r.poly.scale(&half());
            r
        }
        (-1, -1) => dbracket(a, b),
        _ => unreachable!(),
    })
}

/// The adjoint Lie superbracket on F_{-1} (+) F_{-1/2}.
pub fn superbracket(a: &Density, b: &Density) -> Result<Density, Error> {
    let ok = |d: &Density| d.doubled_weight == -2 || d.doubled_weight == -1;
    if !ok(a) || !ok(b) {
        return Err(Error::Input(format!(
            "superbracket needs weights in {{-1, -1/2}}, got {} and {}",
            a.weight(),
            b.weight()
        )));
    }
    Ok(match (a.doubled_weight, b.doubled_weight) {
        (-1, -1) => {
            // [phi dz^{-1/2}, gamma dz^{-1/2}] = 1/2 phi gamma dz^{-1}
            let mut r = dmul(a, b);
            r.poly = r.poly.scale(&half());
            r
        }
        _ => dbracket(a, b),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RealizeSpace {
    Antialgebra,
    LieSuper,
}

impl RealizeSpace {
    pub fn parse(s: &str) -> Option<RealizeSpace> {
        match s {
            "antialgebra" => Some(RealizeSpace::Antialgebra),
            "liesuper" => Some(RealizeSpace::LieSuper),
            _ => None,
        }
    }
}

/// Windowed basis of the density realization.
///
/// * antialgebra: eps_n -> z^{-n} in F_0 (even), a_i -> z^{1/2-i} dz^{-1/2} (odd)
/// * liesuper:    L_n  -> z^{1-n} dz^{-1} (even), a_i -> z^{1/2-i} dz^{-1/2} (odd)
fn window_symbols(space: RealizeSpace, w: &WindowSpec) -> Vec<(BasisSymbol, Density)> {
    let mut out = Vec::new();
    let (even_name, even_weight_doubled, even_exp): (&str, i64, fn(i64) -> i64) = match space {
        RealizeSpace::Antialgebra => ("eps", 0, |n| -n),
        RealizeSpace::LieSuper => ("L", -2, |n| 1 - n),
    };
    let mut evens: Vec<i64> = Vec::new();
    let mut d = 0i64;
    while w.contains_doubled(d) {
        evens.push(d);
        if d != 0 {
            evens.push(-d);
        }
        d += 2;
    }
    evens.sort_unstable();
    for d in evens {
        let n = d / 2;
        out.push((
            BasisSymbol::indexed(even_name, Parity::Even, d),
            Density::monomial(int(1), even_exp(n), even_weight_doubled),
        ));
    }
    let mut odds: Vec<i64> = Vec::new();
    let mut d = 1i64;
    while w.contains_doubled(d) {
        odds.push(d);
        odds.push(-d);
        d += 2;
    }
    odds.sort_unstable();
    for di in odds {
        // a_i -> z^{1/2 - i}: with doubled index di, exponent (1 - di)/2
        out.push((
            BasisSymbol::indexed("a", Parity::Odd, di),
            Density::monomial(int(1), (1 - di) / 2, -1),
        ));
    }
    out
}

/// Matches a density against the realization dictionary; `None` when the
/// monomial leaves the window (out-of-window) — zero stays zero.
fn density_to_element(
    space: RealizeSpace,
    w: &WindowSpec,
    symbols: &[(BasisSymbol, Density)],
    d: &Density,
) -> Option<Element> {
    if d.is_zero() {
        return Some(Element::zero());
    }
    let mut out = Element::zero();
    for (exp, c) in d.poly.terms() {
        // invert the dictionary per weight slot
        let doubled_index = match (space, d.doubled_weight) {
            (RealizeSpace::Antialgebra, 0) => -2 * exp,
            (RealizeSpace::LieSuper, -2) => 2 * (1 - exp),
            (_, -1) => 1 - 2 * exp,
            _ => return None,
        };
        if !w.contains_doubled(doubled_index) {
            return None;
        }
        let pos = symbols.iter().position(|(s, _)| {
            s.index == Some(doubled_index) && s.parity == d.parity()
        })?;
        out.add_term(pos, c.clone());
    }
    Some(out)
}

/// Materializes the density realization on a window as a structure-constant
/// table, with out-of-window markers where products leave the window.
pub fn realize_window(space: RealizeSpace, w: &WindowSpec) -> AlgebraDef {
    let symbols = window_symbols(space, w);
    let basis: Vec<BasisSymbol> = symbols.iter().map(|(s, _)| s.clone()).collect();
    let dim = basis.len();
    let mut table = Vec::with_capacity(dim * dim);
    for (_, di) in &symbols {
        for (_, dj) in &symbols {
            let prod = match space {
                RealizeSpace::Antialgebra => antiproduct(di, dj),
                RealizeSpace::LieSuper => superbracket(di, dj),
            }
            .expect("window symbols have valid weights");
            match density_to_element(space, w, &symbols, &prod) {
                Some(e) => table.push(TableEntry::Value(e)),
                None => table.push(TableEntry::OutOfWindow),
            }
        }
    }
    let (name, hint) = match space {
        RealizeSpace::Antialgebra => ("ak1-density", ProfileHint::Antialgebra),
        RealizeSpace::LieSuper => ("k1", ProfileHint::LieSuper),
    };
    AlgebraDef::new(name, basis, table, hint).expect("realization respects parity")
}

/// One failed sample of the Poisson/Leibniz audit.
#[derive(Debug, Clone)]
pub struct LeibnizWitness {
    pub a: Density,
    pub b: Density,
    pub c: Density,
    pub lhs: Density,
    pub rhs: Density,
}

#[derive(Debug, Clone)]
pub struct LeibnizReport {
    pub samples: usize,
    pub failures: Vec<LeibnizWitness>,
    pub weight_violations: usize,
}

impl LeibnizReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.weight_violations == 0
    }
}

/// Verifies {a, b.c} = {a,b}.c + b.{a,c} exactly on random monomial triples
/// with weights in (1/2)Z intersected with [-3, 3], along with the weight
/// bookkeeping of both products. Deterministically seeded.
pub fn check_poisson_leibniz(samples: usize) -> LeibnizReport {
    let mut rng = StdRng::seed_from_u64(0x4c65_6962);
    let mut report = LeibnizReport {
        samples,
        failures: Vec::new(),
        weight_violations: 0,
    };
    for _ in 0..samples {
        let rand_density = |rng: &mut StdRng| {
            let dw = rng.gen_range(-6..=6); // doubled weight in [-3, 3]
            let exp = rng.gen_range(-4..=4);
            let num = loop {
                let n = rng.gen_range(-5..=5);
                if n != 0 {
                    break n;
                }
            };
            let den = rng.gen_range(1..=4);
            Density::monomial(frac(num, den), exp, dw)
        };
        let a = rand_density(&mut rng);
        let b = rand_density(&mut rng);
        let c = rand_density(&mut rng);
        let lhs = dbracket(&a, &dmul(&b, &c));
        let rhs_1 = dmul(&dbracket(&a, &b), &c);
        let rhs_2 = dmul(&b, &dbracket(&a, &c));
        let rhs = Density::new(rhs_1.poly.add(&rhs_2.poly), rhs_1.doubled_weight);
        if lhs.doubled_weight != rhs_1.doubled_weight
            || rhs_1.doubled_weight != rhs_2.doubled_weight
        {
            report.weight_violations += 1;
            continue;
        }
        // weight bookkeeping: dbracket adds weights plus one; dmul adds
        if lhs.doubled_weight != a.doubled_weight + b.doubled_weight + c.doubled_weight + 2 {
            report.weight_violations += 1;
        }
        if dmul(&b, &c).doubled_weight != b.doubled_weight + c.doubled_weight {
            report.weight_violations += 1;
        }
        if lhs.poly != rhs.poly {
            report.failures.push(LeibnizWitness { a, b, c, lhs, rhs });
        }
    }
    report
}

/// Parses a density literal: `3/2 z^-2 + z @ -1/2` (terms, then weight).
pub fn parse_density(text: &str) -> Result<Density, Error> {
    let (terms_text, weight_text) = text
        .split_once('@')
        .ok_or_else(|| Error::Input(format!("density literal `{text}` is missing `@ weight`")))?;
    let weight_text = weight_text.trim();
    let weight = crate::scalar::parse_scalar(weight_text).map_err(Error::Input)?;
    let doubled = weight * int(2);
    if !doubled.is_integer() {
        return Err(Error::Input(format!(
            "weight `{weight_text}` is not a half-integer"
        )));
    }
    let doubled = num::ToPrimitive::to_i64(doubled.numer())
        .ok_or_else(|| Error::Input("weight out of range".into()))?;
    let mut poly = Laurent1::zero();
    for (sign, term) in split_signed_terms(terms_text) {
        let term = term.trim();
        if term.is_empty() {
            continue;
        }
        let mut coeff = int(sign);
        let mut exp = 0i64;
        for tok in term.split_whitespace() {
            if let Some(rest) = tok.strip_prefix("z^") {
                exp += rest
                    .parse::<i64>()
                    .map_err(|_| Error::Input(format!("bad exponent in `{tok}`")))?;
            } else if tok == "z" {
                exp += 1;
            } else {
                coeff *= crate::scalar::parse_scalar(tok).map_err(Error::Input)?;
            }
        }
        poly.add_term(exp, coeff);
    }
    Ok(Density::new(poly, doubled))
}

/// Splits `a + b - c` into signed chunks at top level.
pub(crate) fn split_signed_terms(text: &str) -> Vec<(i64, String)> {
    let mut out = Vec::new();
    let mut current = String::new();
    let mut sign = 1i64;
    let mut prev_space = true;
    for ch in text.chars() {
        if (ch == '+' || ch == '-') && prev_space && !current.trim().is_empty() {
            out.push((sign, current.clone()));
            current.clear();
            sign = if ch == '-' { -1 } else { 1 };
        } else if (ch == '-') && current.trim().is_empty() {
            sign = -sign;
        } else if ch != '+' || !current.trim().is_empty() {
            current.push(ch);
        }
        prev_space = ch.is_whitespace();
    }
    if !current.trim().is_empty() {
        out.push((sign, current));
    }
    out
}
