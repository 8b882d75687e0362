//! Z2-graded algebras presented by structure constants.
//!
//! An [`AlgebraDef`] is an ordered basis of homogeneous symbols together with
//! a total multiplication table. Tables of windowed infinite families mark
//! entries whose product index leaves the window as [`TableEntry::OutOfWindow`];
//! that marker is distinct from zero and makes truncation visible to every
//! identity check downstream.
//!
//! Half-integer indices are stored doubled: a stored index `k` means the label
//! `k/2`. AK(1)'s `eps_n` therefore carries an even stored index and `a_i` an
//! odd one, and window bounds stay integral.

use crate::error::Error;
use crate::scalar::{format_signed, half, int, parse_scalar, Scalar};
use num::Zero;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }

    pub fn product(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    /// Koszul sign (-1)^{|x||y|}.
    pub fn koszul(self, other: Parity) -> i32 {
        if self.is_odd() && other.is_odd() {
            -1
        } else {
            1
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parity::Even => write!(f, "even"),
            Parity::Odd => write!(f, "odd"),
        }
    }
}

/// A named homogeneous basis vector, optionally indexed (doubled convention).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisSymbol {
    pub name: String,
    pub parity: Parity,
    /// Doubled index: stored `k` means label `k/2`. `None` for plain symbols.
    pub index: Option<i64>,
}

impl BasisSymbol {
    pub fn plain(name: &str, parity: Parity) -> Self {
        BasisSymbol {
            name: name.to_string(),
            parity,
            index: None,
        }
    }

    pub fn indexed(name: &str, parity: Parity, doubled_index: i64) -> Self {
        BasisSymbol {
            name: name.to_string(),
            parity,
            index: Some(doubled_index),
        }
    }

    /// Display label: integer indices plain, half-integers as `k/2`.
    pub fn label(&self) -> String {
        match self.index {
            None => self.name.clone(),
            Some(d) if d % 2 == 0 => format!("{}{}", self.name, d / 2),
            Some(d) => format!("{}{}/2", self.name, d),
        }
    }
}

/// A finite linear combination of basis symbols of one algebra, held as a map
/// from basis position to nonzero coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Element {
    terms: BTreeMap<usize, Scalar>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn basis(i: usize) -> Self {
        Element::single(i, int(1))
    }

    pub fn single(i: usize, c: Scalar) -> Self {
        let mut e = Element::zero();
        e.add_term(i, c);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, i: usize, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(i).or_insert_with(Scalar::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&i);
        }
    }

    pub fn add(&self, other: &Element) -> Element {
        let mut out = self.clone();
        for (&i, c) in &other.terms {
            out.add_term(i, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Element) -> Element {
        let mut out = self.clone();
        for (&i, c) in &other.terms {
            out.add_term(i, -c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        if c.is_zero() {
            return Element::zero();
        }
        Element {
            terms: self.terms.iter().map(|(&i, v)| (i, v * c)).collect(),
        }
    }

    pub fn neg(&self) -> Element {
        self.scale(&int(-1))
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.terms.iter().map(|(&i, c)| (i, c))
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.terms.get(&i).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Coordinates in the ambient basis of `alg`.
    pub fn to_vec(&self, dim: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); dim];
        for (&i, c) in &self.terms {
            v[i] = c.clone();
        }
        v
    }

    pub fn from_vec(v: &[Scalar]) -> Element {
        let mut e = Element::zero();
        for (i, c) in v.iter().enumerate() {
            e.add_term(i, c.clone());
        }
        e
    }
}

/// Table value: a product, or the marker for products truncated away by a
/// window. The marker is not zero; identity checks skip tuples that touch it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TableEntry {
    Value(Element),
    OutOfWindow,
}

impl TableEntry {
    pub fn value(&self) -> Option<&Element> {
        match self {
            TableEntry::Value(e) => Some(e),
            TableEntry::OutOfWindow => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProfileHint {
    Antialgebra,
    LieSuper,
    JordanSuper,
    None,
}

impl ProfileHint {
    pub fn as_str(self) -> &'static str {
        match self {
            ProfileHint::Antialgebra => "antialgebra",
            ProfileHint::LieSuper => "lie-super",
            ProfileHint::JordanSuper => "jordan-super",
            ProfileHint::None => "none",
        }
    }

    pub fn parse(s: &str) -> Option<ProfileHint> {
        match s {
            "antialgebra" => Some(ProfileHint::Antialgebra),
            "lie-super" => Some(ProfileHint::LieSuper),
            "jordan-super" => Some(ProfileHint::JordanSuper),
            "none" => Some(ProfileHint::None),
            _ => None,
        }
    }
}

/// A finite Z2-graded algebra given by structure constants.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraDef {
    pub name: String,
    basis: Vec<BasisSymbol>,
    /// Row-major `dim * dim` table of ordered products.
    table: Vec<TableEntry>,
    pub profile_hint: ProfileHint,
}

impl AlgebraDef {
    /// Builds an algebra from an explicit full table. Checks that every entry
    /// is parity-homogeneous with parity `|x|+|y|`.
    pub fn new(
        name: &str,
        basis: Vec<BasisSymbol>,
        table: Vec<TableEntry>,
        profile_hint: ProfileHint,
    ) -> Result<Self, Error> {
        let dim = basis.len();
        if table.len() != dim * dim {
            return Err(Error::Input(format!(
                "table has {} entries, expected {}",
                table.len(),
                dim * dim
            )));
        }
        let alg = AlgebraDef {
            name: name.to_string(),
            basis,
            table,
            profile_hint,
        };
        for i in 0..dim {
            for j in 0..dim {
                if let TableEntry::Value(e) = alg.entry(i, j) {
                    let want = alg.basis[i].parity.product(alg.basis[j].parity);
                    for (k, _) in e.terms() {
                        if alg.basis[k].parity != want {
                            return Err(Error::Input(format!(
                                "product {} * {} has a {} term {}, expected parity {}",
                                alg.basis[i].label(),
                                alg.basis[j].label(),
                                alg.basis[k].parity,
                                alg.basis[k].label(),
                                want
                            )));
                        }
                    }
                }
            }
        }
        Ok(alg)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisSymbol] {
        &self.basis
    }

    pub fn symbol(&self, i: usize) -> &BasisSymbol {
        &self.basis[i]
    }

    pub fn entry(&self, i: usize, j: usize) -> &TableEntry {
        &self.table[i * self.basis.len() + j]
    }

    pub fn find(&self, label: &str) -> Option<usize> {
        self.basis.iter().position(|s| s.label() == label)
    }

    pub fn even_indices(&self) -> Vec<usize> {
        (0..self.dim())
            .filter(|&i| self.basis[i].parity == Parity::Even)
            .collect()
    }

    pub fn odd_indices(&self) -> Vec<usize> {
        (0..self.dim())
            .filter(|&i| self.basis[i].parity == Parity::Odd)
            .collect()
    }

    /// Graded dimension `(even, odd)`.
    pub fn graded_dim(&self) -> (usize, usize) {
        (self.even_indices().len(), self.odd_indices().len())
    }

    /// Whether any table entry is an out-of-window marker.
    pub fn is_windowed(&self) -> bool {
        self.table
            .iter()
            .any(|e| matches!(e, TableEntry::OutOfWindow))
    }

    /// Basis-to-basis product.
    pub fn product(&self, i: usize, j: usize) -> &TableEntry {
        self.entry(i, j)
    }

    /// Bilinear extension of the table. `None` when a needed entry is out of
    /// window.
    pub fn multiply_opt(&self, x: &Element, y: &Element) -> Option<Element> {
        let mut out = Element::zero();
        for (i, a) in x.terms() {
            for (j, b) in y.terms() {
                match self.entry(i, j) {
                    TableEntry::Value(e) => {
                        let c = a * b;
                        for (k, v) in e.terms() {
                            out.add_term(k, v * &c);
                        }
                    }
                    TableEntry::OutOfWindow => return None,
                }
            }
        }
        Some(out)
    }

    /// Renders an element over this algebra's basis, e.g. `1/2 eps0 + -1 a1/2`
    /// is shown as `1/2 eps0 - a1/2`.
    pub fn format_element(&self, e: &Element) -> String {
        if e.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (pos, (i, c)) in e.terms().enumerate() {
            let (neg, mag) = format_signed(c);
            if pos == 0 {
                if neg {
                    out.push_str("- ");
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            if mag != "1" {
                out.push_str(&mag);
                out.push(' ');
            }
            out.push_str(&self.basis[i].label());
        }
        out
    }

    /// Parses `c1 sym1 + c2 sym2 ...` over this algebra's basis labels.
    pub fn parse_element(&self, text: &str) -> Result<Element, Error> {
        let text = text.trim();
        if text == "0" {
            return Ok(Element::zero());
        }
        let mut out = Element::zero();
        // split on + / - while keeping signs attached to coefficients
        let mut term = String::new();
        let mut terms: Vec<String> = Vec::new();
        for (i, ch) in text.chars().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 && text[..i].chars().last() == Some(' ') {
                terms.push(term.trim().to_string());
                term = if ch == '-' { "-".to_string() } else { String::new() };
            } else if i == 0 && ch == '-' {
                term.push('-');
            } else if ch != '+' || !term.trim().is_empty() {
                term.push(ch);
            }
        }
        terms.push(term.trim().to_string());
        for t in terms.into_iter().filter(|t| !t.is_empty() && t != "-") {
            let mut parts = t.split_whitespace().collect::<Vec<_>>();
            let neg = parts[0] == "-";
            if neg {
                parts.remove(0);
            }
            let (coeff, sym) = match parts.len() {
                1 => {
                    if parts[0].starts_with(|c: char| c.is_ascii_digit() || c == '-') {
                        return Err(Error::Input(format!("term `{t}` is missing a symbol")));
                    }
                    (int(1), parts[0])
                }
                2 => (
                    parse_scalar(parts[0]).map_err(Error::Input)?,
                    parts[1],
                ),
                _ => return Err(Error::Input(format!("cannot parse term `{t}`"))),
            };
            let coeff = if neg { -coeff } else { coeff };
            let idx = self
                .find(sym)
                .ok_or_else(|| Error::UnknownSymbol(sym.to_string()))?;
            out.add_term(idx, coeff);
        }
        Ok(out)
    }
}

/// Public `multiply` per the module contract: errors on out-of-window.
pub fn multiply(x: &Element, y: &Element, alg: &AlgebraDef) -> Result<Element, Error> {
    for (i, _) in x.terms().chain(y.terms()) {
        if i >= alg.dim() {
            return Err(Error::UnknownSymbol(format!("basis #{i}")));
        }
    }
    alg.multiply_opt(x, y)
        .ok_or_else(|| Error::Input("product leaves the window".to_string()))
}

/// Parity of an element: `Some(p)` when homogeneous, `None` for mixed.
/// The zero element reports even by convention.
pub fn parity_of(e: &Element, alg: &AlgebraDef) -> Option<Parity> {
    let mut parity = None;
    for (i, _) in e.terms() {
        let p = alg.symbol(i).parity;
        match parity {
            None => parity = Some(p),
            Some(q) if q != p => return None,
            _ => {}
        }
    }
    Some(parity.unwrap_or(Parity::Even))
}

/// Finite truncation window for rule-based families. Indices are compared in
/// the doubled convention: a symbol with doubled index `d` is in the window
/// when `|d| <= 2 * bound`.
#[derive(Debug, Clone, PartialEq)]
pub struct WindowSpec {
    pub bound: Scalar,
    pub guard: Scalar,
}

impl WindowSpec {
    pub fn new(bound: i64, guard: i64) -> Self {
        WindowSpec {
            bound: int(bound),
            guard: int(guard),
        }
    }

    pub fn with_bound(bound: i64) -> Self {
        WindowSpec::new(bound, 0)
    }

    pub fn contains_doubled(&self, d: i64) -> bool {
        int(d.abs()) <= int(2) * &self.bound
    }

    pub fn guard_contains_doubled(&self, d: i64) -> bool {
        int(d.abs()) <= int(2) * &self.guard
    }
}

/// A symbol of a rule-based family: a family member name plus doubled index.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FamilySymbol {
    pub name: &'static str,
    pub parity: Parity,
    pub doubled_index: i64,
}

/// One term of a closed-form product: coefficient times a family symbol.
pub type FamilyProduct = Vec<(Scalar, FamilySymbol)>;

/// A rule-based graded algebra family with closed-form structure constants.
pub trait IndexedFamily {
    fn name(&self) -> &'static str;
    /// Symbols whose doubled index lies within the window, in a fixed order.
    fn window_basis(&self, w: &WindowSpec) -> Vec<FamilySymbol>;
    /// Closed-form product of two family symbols (total on the domain).
    fn rule(&self, x: &FamilySymbol, y: &FamilySymbol) -> FamilyProduct;
    /// Short description of the index domain, for documentation and errors.
    fn index_domain(&self) -> &'static str;
}

/// AK(1): even `eps_n`, n integer; odd `a_i`, i half-integer, with
/// eps_n eps_m = eps_{n+m}, eps_n a_i = 1/2 a_{n+i}, a_i a_j = 1/2 (i-j) eps_{i+j}.
pub struct Ak1Family;

impl Ak1Family {
    fn eps(d: i64) -> FamilySymbol {
        debug_assert!(d % 2 == 0);
        FamilySymbol {
            name: "eps",
            parity: Parity::Even,
            doubled_index: d,
        }
    }

    fn a(d: i64) -> FamilySymbol {
        debug_assert!(d % 2 != 0);
        FamilySymbol {
            name: "a",
            parity: Parity::Odd,
            doubled_index: d,
        }
    }
}

impl IndexedFamily for Ak1Family {
    fn name(&self) -> &'static str {
        "ak1"
    }

    fn window_basis(&self, w: &WindowSpec) -> Vec<FamilySymbol> {
        let mut basis = Vec::new();
        let mut d = 0i64;
        // even doubled indices in increasing label order
        let mut evens: Vec<i64> = Vec::new();
        loop {
            if !w.contains_doubled(d) {
                break;
            }
            evens.push(d);
            if d != 0 {
                evens.push(-d);
            }
            d += 2;
        }
        evens.sort_unstable();
        for d in evens {
            basis.push(Ak1Family::eps(d));
        }
        let mut odds: Vec<i64> = Vec::new();
        let mut d = 1i64;
        loop {
            if !w.contains_doubled(d) {
                break;
            }
            odds.push(d);
            odds.push(-d);
            d += 2;
        }
        odds.sort_unstable();
        for d in odds {
            basis.push(Ak1Family::a(d));
        }
        basis
    }

    fn rule(&self, x: &FamilySymbol, y: &FamilySymbol) -> FamilyProduct {
        let (dx, dy) = (x.doubled_index, y.doubled_index);
        match (x.parity, y.parity) {
            (Parity::Even, Parity::Even) => vec![(int(1), Ak1Family::eps(dx + dy))],
            (Parity::Even, Parity::Odd) => vec![(half(), Ak1Family::a(dx + dy))],
            (Parity::Odd, Parity::Even) => vec![(half(), Ak1Family::a(dx + dy))],
            (Parity::Odd, Parity::Odd) => {
                // 1/2 (i - j) with doubled indices: (dx - dy) / 4
                let c = Scalar::new(num::BigInt::from(dx - dy), num::BigInt::from(4));
                vec![(c, Ak1Family::eps(dx + dy))]
            }
        }
    }

    fn index_domain(&self) -> &'static str {
        "eps_n for integer n; a_i for half-integer i"
    }
}

/// Materializes a rule-based family on a window. Products whose target index
/// leaves the window become out-of-window markers; zero-coefficient products
/// stay zero regardless of the target index.
pub fn materialize_window(fam: &dyn IndexedFamily, w: &WindowSpec) -> AlgebraDef {
    let fam_basis = fam.window_basis(w);
    let basis: Vec<BasisSymbol> = fam_basis
        .iter()
        .map(|s| BasisSymbol::indexed(s.name, s.parity, s.doubled_index))
        .collect();
    let lookup: BTreeMap<(&'static str, i64), usize> = fam_basis
        .iter()
        .enumerate()
        .map(|(i, s)| ((s.name, s.doubled_index), i))
        .collect();
    let dim = basis.len();
    let mut table = Vec::with_capacity(dim * dim);
    for x in &fam_basis {
        for y in &fam_basis {
            let mut element = Element::zero();
            let mut out_of_window = false;
            for (c, sym) in fam.rule(x, y) {
                if c.is_zero() {
                    continue;
                }
                match lookup.get(&(sym.name, sym.doubled_index)) {
                    Some(&k) => element.add_term(k, c),
                    None => out_of_window = true,
                }
            }
            table.push(if out_of_window {
                TableEntry::OutOfWindow
            } else {
                TableEntry::Value(element)
            });
        }
    }
    AlgebraDef::new(fam.name(), basis, table, ProfileHint::Antialgebra)
        .expect("family rule respects parity")
}
