//! Symbolic calculus on R^{2|1}: superfunctions F = f(p,q) + tau g(p,q), the
//! two brackets coming from the invariant bivectors, Euler homogeneity, the
//! invariant-bivector solve, and extraction of structure-constant tables from
//! stable function subspaces.
//!
//! # Calibration block
//!
//! The contraction conventions are frozen here once and used everywhere. The
//! bracket of the even bivector (slots `(1, 0, 0, 1/2)` below) is
//!
//! ```text
//! {F,G} = F_p G_q - F_q G_p - (-1)^{|F|} F_tau G_tau
//! ```
//!
//! and the odd bracket is
//!
//! ```text
//! ]F,G[ = -(-1)^{|F|}/2 [ F_tau E(G) - (-1)^{|F|} E(F) G_tau
//!                         + tau (F_p G_q - F_q G_p) ]
//! ```
//!
//! with `E = p d_p + q d_q + tau d_tau` the Euler field. The Koszul signs are
//! fixed by requiring that the linear extraction reproduce the K3 table
//! exactly and the degree-1 window extraction reproduce the AK(1) window
//! (see `tests::calibration_is_unique`, which asserts this choice is the only
//! one in its sign family), and the remaining even-bracket sign by the
//! equivariance of the odd bracket under the quadratic Hamiltonian flows.
//! `]F,G[` is supercommutative in the parity-shifted sense,
//! `]F,G[ = (-1)^{(|F|+1)(|G|+1)} ]G,F[`, which is what makes the extracted
//! tables supercommutative after parity inversion.
//!
//! A bivector with coefficient slots `(c_pq, c_pt, c_qt, c_tt)` acts as
//!
//! ```text
//! B(F,G) = c_pq (F_p G_q - F_q G_p)
//!        + c_pt (F_tau G_p - (-1)^{|F|} F_p G_tau)
//!        + c_qt (F_tau G_q - (-1)^{|F|} F_q G_tau)
//!        + c_tt (2 F_tau G_tau)
//! ```
//!
//! Under these conventions the two invariant bivectors have coefficient
//! arrays P = (1, 0, 0, 1/2) and Lambda = (tau, p, q, tau); applied to
//! functions they give exactly the two brackets above (Lambda up to the
//! `-(-1)^{|F|}/2` normalization).

use crate::error::Error;
use crate::laurent::Laurent2;
use crate::matrix::{coords_in_span, RowSpace};
use crate::scalar::{frac, half, int, parse_scalar, Scalar};
use crate::superalg::{
    AlgebraDef, BasisSymbol, Element, Parity, ProfileHint, TableEntry,
};
use num::Zero;

/// A superfunction on R^{2|1}: `body(p,q) + tau * soul(p,q)` with Laurent
/// polynomial components. Parity is even iff soul = 0, odd iff body = 0.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SuperFunction {
    pub body: Laurent2,
    pub soul: Laurent2,
}

impl SuperFunction {
    pub fn zero() -> Self {
        SuperFunction::default()
    }

    pub fn from_body(body: Laurent2) -> Self {
        SuperFunction {
            body,
            soul: Laurent2::zero(),
        }
    }

    pub fn from_soul(soul: Laurent2) -> Self {
        SuperFunction {
            body: Laurent2::zero(),
            soul,
        }
    }

    pub fn monomial(c: Scalar, ep: i64, eq: i64, tau: bool) -> Self {
        if tau {
            SuperFunction::from_soul(Laurent2::monomial(c, ep, eq))
        } else {
            SuperFunction::from_body(Laurent2::monomial(c, ep, eq))
        }
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero() && self.soul.is_zero()
    }

    /// `Some(parity)` for homogeneous functions; zero counts as even.
    pub fn parity(&self) -> Option<Parity> {
        match (self.body.is_zero(), self.soul.is_zero()) {
            (true, false) => Some(Parity::Odd),
            (_, true) => Some(Parity::Even),
            (false, false) => None,
        }
    }

    pub fn add(&self, other: &SuperFunction) -> SuperFunction {
        SuperFunction {
            body: self.body.add(&other.body),
            soul: self.soul.add(&other.soul),
        }
    }

    pub fn sub(&self, other: &SuperFunction) -> SuperFunction {
        SuperFunction {
            body: self.body.sub(&other.body),
            soul: self.soul.sub(&other.soul),
        }
    }

    pub fn scale(&self, c: &Scalar) -> SuperFunction {
        SuperFunction {
            body: self.body.scale(c),
            soul: self.soul.scale(c),
        }
    }

    /// Supercommutative product with tau^2 = 0 built in.
    pub fn mul(&self, other: &SuperFunction) -> SuperFunction {
        SuperFunction {
            body: self.body.mul(&other.body),
            soul: self
                .soul
                .mul(&other.body)
                .add(&self.body.mul(&other.soul)),
        }
    }

    pub fn d_p(&self) -> SuperFunction {
        SuperFunction {
            body: self.body.d_p(),
            soul: self.soul.d_p(),
        }
    }

    pub fn d_q(&self) -> SuperFunction {
        SuperFunction {
            body: self.body.d_q(),
            soul: self.soul.d_q(),
        }
    }

    /// Left derivative by tau: d_tau(f + tau g) = g.
    pub fn d_tau(&self) -> SuperFunction {
        SuperFunction::from_body(self.soul.clone())
    }

    /// Euler field E = p d_p + q d_q + tau d_tau.
    pub fn euler(&self) -> SuperFunction {
        let mut soul = self.soul.euler();
        soul = soul.add(&self.soul); // tau d_tau contributes one more
        SuperFunction {
            body: self.body.euler(),
            soul,
        }
    }

    pub fn format(&self) -> String {
        match (self.body.is_zero(), self.soul.is_zero()) {
            (true, true) => "0".to_string(),
            (false, true) => self.body.format(""),
            (true, false) => self.soul.format("t"),
            (false, false) => format!("{} + {}", self.body.format(""), self.soul.format("t")),
        }
    }
}

fn require_homogeneous(f: &SuperFunction, what: &str) -> Result<Parity, Error> {
    f.parity()
        .ok_or_else(|| Error::MixedParity(format!("{what}: {}", f.format())))
}

fn koszul_f(p: Parity) -> Scalar {
    if p.is_odd() {
        int(-1)
    } else {
        int(1)
    }
}

/// Poisson-type bracket of the even invariant bivector:
/// `{F,G} = F_p G_q - F_q G_p - (-1)^{|F|} F_tau G_tau`.
pub fn pbracket(f: &SuperFunction, g: &SuperFunction) -> Result<SuperFunction, Error> {
    let pf = require_homogeneous(f, "pbracket left argument")?;
    require_homogeneous(g, "pbracket right argument")?;
    Ok(pbracket_raw(f, g, pf))
}

fn pbracket_raw(f: &SuperFunction, g: &SuperFunction, pf: Parity) -> SuperFunction {
    let main = f.d_p().mul(&g.d_q()).sub(&f.d_q().mul(&g.d_p()));
    let tau_term = f.d_tau().mul(&g.d_tau()).scale(&-koszul_f(pf));
    main.add(&tau_term)
}

/// The odd bracket `]F,G[` from the calibration block above.
pub fn abracket(f: &SuperFunction, g: &SuperFunction) -> Result<SuperFunction, Error> {
    let pf = require_homogeneous(f, "abracket left argument")?;
    require_homogeneous(g, "abracket right argument")?;
    Ok(abracket_with_signs(f, g, pf, &CALIBRATED_SIGNS))
}

/// The five sign slots of the odd-bracket ansatz; only these ever matter
/// (every other combination multiplies a term that vanishes identically).
/// Order: eps1(odd,even), eps1(odd,odd), eps2(even,odd), eps2(odd,odd), eps3.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AbracketSigns(pub [i64; 5]);

/// Frozen by the calibration tests: see the module docs.
pub const CALIBRATED_SIGNS: AbracketSigns = AbracketSigns([1, 1, -1, 1, 1]);

fn abracket_with_signs(
    f: &SuperFunction,
    g: &SuperFunction,
    pf: Parity,
    signs: &AbracketSigns,
) -> SuperFunction {
    let [e1_oe, e1_oo, e2_eo, e2_oo, e3] = signs.0;
    let pg = g.parity().unwrap_or(Parity::Even);
    let e1 = match (pf, pg) {
        (Parity::Odd, Parity::Even) => e1_oe,
        (Parity::Odd, Parity::Odd) => e1_oo,
        _ => 1, // multiplies d_tau F = 0
    };
    let e2 = match (pf, pg) {
        (Parity::Even, Parity::Odd) => e2_eo,
        (Parity::Odd, Parity::Odd) => e2_oo,
        _ => 1,
    };
    let tau = SuperFunction::monomial(int(1), 0, 0, true);
    let t1 = f.d_tau().mul(&g.euler()).scale(&int(e1));
    let t2 = f.euler().mul(&g.d_tau()).scale(&int(e2));
    let t3 = tau
        .mul(&f.d_p().mul(&g.d_q()).sub(&f.d_q().mul(&g.d_p())))
        .scale(&int(e3));
    let total = t1.add(&t2).add(&t3);
    total.scale(&(-koszul_f(pf) * half()))
}

/// Euler degree: the eigenvalue lambda with E(F) = lambda F.
pub fn euler_degree(f: &SuperFunction) -> Result<Scalar, Error> {
    if f.is_zero() {
        return Err(Error::NonHomogeneous("zero function has no degree".into()));
    }
    let mut degree: Option<i64> = None;
    for ((ep, eq), _) in f.body.terms() {
        let d = ep + eq;
        if *degree.get_or_insert(d) != d {
            return Err(Error::NonHomogeneous(f.format()));
        }
    }
    for ((ep, eq), _) in f.soul.terms() {
        let d = ep + eq + 1;
        if *degree.get_or_insert(d) != d {
            return Err(Error::NonHomogeneous(f.format()));
        }
    }
    Ok(int(degree.expect("nonzero function has a term")))
}

/// A bivector ansatz in the four nonvanishing coordinate slots
/// `c_pq d_p^d_q + c_pt d_p^d_tau + c_qt d_q^d_tau + c_tt d_tau^d_tau`.
/// The slots `d_p^d_p` and `d_q^d_q` vanish identically (even wedge factors),
/// so they are not stored. Coefficients keep tau-degree <= 1 by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct Bivector {
    pub parity: Parity,
    pub c_pq: SuperFunction,
    pub c_pt: SuperFunction,
    pub c_qt: SuperFunction,
    pub c_tt: SuperFunction,
}

impl Bivector {
    /// The inverse of the symplectic form: `(1, 0, 0, 1/2)`.
    pub fn standard_poisson() -> Bivector {
        Bivector {
            parity: Parity::Even,
            c_pq: SuperFunction::monomial(int(1), 0, 0, false),
            c_pt: SuperFunction::zero(),
            c_qt: SuperFunction::zero(),
            c_tt: SuperFunction::monomial(half(), 0, 0, false),
        }
    }

    /// The odd invariant bivector: `(tau, p, q, tau)`.
    pub fn odd_invariant() -> Bivector {
        Bivector {
            parity: Parity::Odd,
            c_pq: SuperFunction::monomial(int(1), 0, 0, true),
            c_pt: SuperFunction::monomial(int(1), 1, 0, false),
            c_qt: SuperFunction::monomial(int(1), 0, 1, false),
            c_tt: SuperFunction::monomial(int(1), 0, 0, true),
        }
    }

    /// Contraction with dF ^ dG per the calibration block.
    pub fn apply(&self, f: &SuperFunction, g: &SuperFunction) -> Result<SuperFunction, Error> {
        let pf = require_homogeneous(f, "bivector left argument")?;
        require_homogeneous(g, "bivector right argument")?;
        let kf = koszul_f(pf);
        let d_pq = f.d_p().mul(&g.d_q()).sub(&f.d_q().mul(&g.d_p()));
        let d_pt = f.d_tau().mul(&g.d_p()).sub(&f.d_p().mul(&g.d_tau()).scale(&kf));
        let d_qt = f.d_tau().mul(&g.d_q()).sub(&f.d_q().mul(&g.d_tau()).scale(&kf));
        let d_tt = f.d_tau().mul(&g.d_tau()).scale(&int(2));
        Ok(self
            .c_pq
            .mul(&d_pq)
            .add(&self.c_pt.mul(&d_pt))
            .add(&self.c_qt.mul(&d_qt))
            .add(&self.c_tt.mul(&d_tt)))
    }

    pub fn coefficients(&self) -> [&SuperFunction; 4] {
        [&self.c_pq, &self.c_pt, &self.c_qt, &self.c_tt]
    }

    pub fn format(&self) -> String {
        let slots = ["∂p∧∂q", "∂p∧∂τ", "∂q∧∂τ", "∂τ∧∂τ"];
        let parts: Vec<String> = self
            .coefficients()
            .iter()
            .zip(slots)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, s)| format!("({}) {}", c.format(), s))
            .collect();
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

/// The five quadratic Hamiltonian generators: p^2, pq, q^2, p tau, q tau.
fn hamiltonian_generators() -> Vec<SuperFunction> {
    vec![
        SuperFunction::monomial(int(1), 2, 0, false),
        SuperFunction::monomial(int(1), 1, 1, false),
        SuperFunction::monomial(int(1), 0, 2, false),
        SuperFunction::monomial(int(1), 1, 0, true),
        SuperFunction::monomial(int(1), 0, 1, true),
    ]
}

/// Monomials p^a q^b tau^c with a, b <= `deg` and c <= 1, used as test
/// functions. Evaluating the invariance identity on these determines it as a
/// bidifferential-operator identity (the operators here are order <= 2 per
/// argument in p, q and order <= 1 in tau).
fn test_monomials(deg: i64) -> Vec<SuperFunction> {
    let mut out = Vec::new();
    for a in 0..=deg {
        for b in 0..=deg {
            for tau in [false, true] {
                out.push(SuperFunction::monomial(int(1), a, b, tau));
            }
        }
    }
    out
}

/// Ansatz coefficient monomials: Euler degree (p-deg + q-deg + tau) <= max_deg.
fn ansatz_monomials(max_deg: i64, parity: Parity) -> Vec<SuperFunction> {
    let mut out = Vec::new();
    for a in 0..=max_deg {
        for b in 0..=(max_deg - a) {
            for tau in [false, true] {
                let d = a + b + i64::from(tau);
                if d > max_deg {
                    continue;
                }
                let mono = SuperFunction::monomial(int(1), a, b, tau);
                if mono.parity() == Some(parity) {
                    out.push(mono);
                }
            }
        }
    }
    out
}

/// Solves `L_{X_H} B = 0` exactly for the five Hamiltonian generators over
/// bivector ansatz coefficients of polynomial Euler degree <= `max_deg`, via
/// the Leibniz characterization
/// `{H, B(F,G)} = B({H,F}, G) + (-1)^{|H|(|F|+|B|)} B(F, {H,G})`.
/// Returns a deterministic basis of the solution space (even solutions, then
/// odd).
pub fn invariant_bivectors(max_deg: i64) -> Vec<Bivector> {
    let hams = hamiltonian_generators();
    let tests = test_monomials(2);
    let mut basis = Vec::new();

    for parity in [Parity::Even, Parity::Odd] {
        // unknown slots: (slot index, coefficient monomial)
        // slot parities: pq even, pt odd, qt odd, tt even (relative to B)
        let slot_parity = [Parity::Even, Parity::Odd, Parity::Odd, Parity::Even];
        let mut unknowns: Vec<(usize, SuperFunction)> = Vec::new();
        for (slot, &sp) in slot_parity.iter().enumerate() {
            let coeff_parity = parity.product(sp);
            for mono in ansatz_monomials(max_deg, coeff_parity) {
                unknowns.push((slot, mono));
            }
        }
        if unknowns.is_empty() {
            continue;
        }
        let elementary = |slot: usize, mono: &SuperFunction| {
            let mut b = Bivector {
                parity,
                c_pq: SuperFunction::zero(),
                c_pt: SuperFunction::zero(),
                c_qt: SuperFunction::zero(),
                c_tt: SuperFunction::zero(),
            };
            match slot {
                0 => b.c_pq = mono.clone(),
                1 => b.c_pt = mono.clone(),
                2 => b.c_qt = mono.clone(),
                3 => b.c_tt = mono.clone(),
                _ => unreachable!(),
            }
            b
        };

        // defect of each elementary ansatz bivector on each (H, F, G)
        let mut rows = RowSpace::new();
        for h in &hams {
            let ph = h.parity().unwrap();
            for f in &tests {
                let pf = f.parity().unwrap();
                let sign = if ph.is_odd() && pf.product(parity) == Parity::Even {
                    // (-1)^{|H|(|F|+|B|)} with |F|+|B| odd overall parity:
                    // compute below; placeholder replaced right after
                    int(1)
                } else {
                    int(1)
                };
                let _ = sign;
                for g in &tests {
                    // Collect, per unknown, the defect superfunction.
                    let mut defects: Vec<SuperFunction> = Vec::with_capacity(unknowns.len());
                    for (slot, mono) in &unknowns {
                        let b = elementary(*slot, mono);
                        let bfg = b.apply(f, g).unwrap();
                        let term1 = if bfg.is_zero() {
                            SuperFunction::zero()
                        } else {
                            pbracket_raw(h, &bfg, ph)
                        };
                        let hf = pbracket_raw(h, f, ph);
                        let hg = pbracket_raw(h, g, ph);
                        let term2 = if hf.is_zero() {
                            SuperFunction::zero()
                        } else {
                            apply_via_parity(&b, &hf, g, pf.product(ph))
                        };
                        let s = if ph.is_odd()
                            && pf.product(parity) == Parity::Odd
                        {
                            int(-1)
                        } else {
                            int(1)
                        };
                        let term3 = if hg.is_zero() {
                            SuperFunction::zero()
                        } else {
                            apply_via_parity(&b, f, &hg, pf).scale(&s)
                        };
                        defects.push(term1.sub(&term2).sub(&term3));
                    }
                    // one linear equation per monomial of the defect span
                    let mut monos: std::collections::BTreeSet<(bool, i64, i64)> =
                        std::collections::BTreeSet::new();
                    for d in &defects {
                        for ((ep, eq), _) in d.body.terms() {
                            monos.insert((false, ep, eq));
                        }
                        for ((ep, eq), _) in d.soul.terms() {
                            monos.insert((true, ep, eq));
                        }
                    }
                    for (tau, ep, eq) in monos {
                        let row: Vec<Scalar> = defects
                            .iter()
                            .map(|d| {
                                let poly = if tau { &d.soul } else { &d.body };
                                poly.terms()
                                    .find(|&((a, b), _)| (a, b) == (ep, eq))
                                    .map(|(_, c)| c.clone())
                                    .unwrap_or_else(Scalar::zero)
                            })
                            .collect();
                        rows.insert(row);
                    }
                }
            }
        }
        for v in rows.nullspace(unknowns.len()) {
            let mut b = Bivector {
                parity,
                c_pq: SuperFunction::zero(),
                c_pt: SuperFunction::zero(),
                c_qt: SuperFunction::zero(),
                c_tt: SuperFunction::zero(),
            };
            for ((slot, mono), c) in unknowns.iter().zip(v) {
                if c.is_zero() {
                    continue;
                }
                let scaled = mono.scale(&c);
                match slot {
                    0 => b.c_pq = b.c_pq.add(&scaled),
                    1 => b.c_pt = b.c_pt.add(&scaled),
                    2 => b.c_qt = b.c_qt.add(&scaled),
                    3 => b.c_tt = b.c_tt.add(&scaled),
                    _ => unreachable!(),
                }
            }
            basis.push(b);
        }
    }
    basis
}

/// B(F, G) where F may be a Hamiltonian image whose parity is supplied by the
/// caller (it can be zero, in which case the result is zero anyway).
fn apply_via_parity(
    b: &Bivector,
    f: &SuperFunction,
    g: &SuperFunction,
    pf: Parity,
) -> SuperFunction {
    if f.is_zero() || g.is_zero() {
        return SuperFunction::zero();
    }
    debug_assert_eq!(f.parity(), Some(pf));
    b.apply(f, g).expect("homogeneous by construction")
}

/// Flattens a bivector's coefficients over a shared monomial index so that
/// span membership can be tested with exact linear algebra.
pub fn bivector_coords(bs: &[Bivector]) -> (Vec<Vec<Scalar>>, Vec<(usize, bool, i64, i64)>) {
    let mut index: Vec<(usize, bool, i64, i64)> = Vec::new();
    for b in bs {
        for (slot, c) in b.coefficients().iter().enumerate() {
            for ((ep, eq), _) in c.body.terms() {
                let key = (slot, false, ep, eq);
                if !index.contains(&key) {
                    index.push(key);
                }
            }
            for ((ep, eq), _) in c.soul.terms() {
                let key = (slot, true, ep, eq);
                if !index.contains(&key) {
                    index.push(key);
                }
            }
        }
    }
    index.sort_unstable();
    let coords = bs
        .iter()
        .map(|b| {
            index
                .iter()
                .map(|&(slot, tau, ep, eq)| {
                    let c = b.coefficients()[slot];
                    let poly = if tau { &c.soul } else { &c.body };
                    poly.terms()
                        .find(|&((a, bq), _)| (a, bq) == (ep, eq))
                        .map(|(_, v)| v.clone())
                        .unwrap_or_else(Scalar::zero)
                })
                .collect()
        })
        .collect();
    (coords, index)
}

/// True when `b` lies in the exact linear span of `basis`.
pub fn bivector_in_span(b: &Bivector, basis: &[Bivector]) -> bool {
    let mut all = basis.to_vec();
    all.push(b.clone());
    let (coords, _) = bivector_coords(&all);
    let target = coords.last().unwrap().clone();
    coords_in_span(&target, &coords[..basis.len()]).is_some()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtractSpace {
    Linear,
    Quadratic,
    Deg1Window(i64),
    Deg2Window(i64),
}

impl ExtractSpace {
    pub fn parse(space: &str, window: Option<i64>) -> Result<ExtractSpace, Error> {
        match (space, window) {
            ("linear", _) => Ok(ExtractSpace::Linear),
            ("quadratic", _) => Ok(ExtractSpace::Quadratic),
            ("deg1-window", Some(n)) => Ok(ExtractSpace::Deg1Window(n)),
            ("deg2-window", Some(n)) => Ok(ExtractSpace::Deg2Window(n)),
            ("deg1-window" | "deg2-window", None) => Err(Error::Input(
                "rational-function spaces need --window".to_string(),
            )),
            _ => Err(Error::Input(format!("unknown extract space `{space}`"))),
        }
    }
}

/// Builds a structure-constant table from a stable subspace of functions.
///
/// * `linear`: basis {tau, q, p}, odd bracket, parity inversion: exactly K3.
/// * `quadratic`: basis {p^2, pq, q^2, p tau, q tau}, even bracket: osp(1,2).
/// * `deg1-window(n)`: tau (q/p)^k and p (q/p)^{i+1/2} windows, odd bracket,
///   parity inversion: the AK(1) window.
/// * `deg2-window(n)`: p^2 (q/p)^{k+1} and tau p (q/p)^{i+1/2}, even bracket:
///   the K(1) window.
pub fn extract_table(space: ExtractSpace) -> Result<AlgebraDef, Error> {
    match space {
        ExtractSpace::Linear => {
            let basis = vec![
                (BasisSymbol::plain("eps", Parity::Even), SuperFunction::monomial(int(1), 0, 0, true)),
                (BasisSymbol::plain("a", Parity::Odd), SuperFunction::monomial(int(1), 0, 1, false)),
                (BasisSymbol::plain("b", Parity::Odd), SuperFunction::monomial(int(1), 1, 0, false)),
            ];
            extract(
                "k3-geom",
                &basis,
                BracketKind::Odd,
                ProfileHint::Antialgebra,
            )
        }
        ExtractSpace::Quadratic => {
            let basis = vec![
                (BasisSymbol::plain("e", Parity::Even), SuperFunction::monomial(int(1), 2, 0, false)),
                (BasisSymbol::plain("h", Parity::Even), SuperFunction::monomial(int(1), 1, 1, false)),
                (BasisSymbol::plain("f", Parity::Even), SuperFunction::monomial(int(1), 0, 2, false)),
                (BasisSymbol::plain("A", Parity::Odd), SuperFunction::monomial(int(1), 1, 0, true)),
                (BasisSymbol::plain("B", Parity::Odd), SuperFunction::monomial(int(1), 0, 1, true)),
            ];
            extract("osp12-geom", &basis, BracketKind::Even, ProfileHint::LieSuper)
        }
        ExtractSpace::Deg1Window(n) => {
            let mut basis = Vec::new();
            // eps_k = tau (q/p)^k, even symbol after parity inversion
            for k in -n..=n {
                basis.push((
                    BasisSymbol::indexed("eps", Parity::Even, 2 * k),
                    SuperFunction::monomial(int(1), -k, k, true),
                ));
            }
            // a_i = p (q/p)^{i+1/2} = p^{1/2 - i} q^{1/2 + i}, doubled index d:
            // exponents ((1 - d)/2, (1 + d)/2)
            let mut ds: Vec<i64> = (0..=n).flat_map(|k| [2 * k + 1, -(2 * k + 1)]).collect();
            ds.sort_unstable();
            ds.dedup();
            ds.retain(|d| d.abs() <= 2 * n);
            for d in ds {
                basis.push((
                    BasisSymbol::indexed("a", Parity::Odd, d),
                    SuperFunction::monomial(int(1), (1 - d) / 2, (1 + d) / 2, false),
                ));
            }
            extract("ak1-geom", &basis, BracketKind::Odd, ProfileHint::Antialgebra)
        }
        ExtractSpace::Deg2Window(n) => {
            let mut basis = Vec::new();
            // L_k ~ p^2 (q/p)^{k+1} = p^{1-k} q^{k+1}
            for k in -n..=n {
                basis.push((
                    BasisSymbol::indexed("L", Parity::Even, 2 * k),
                    SuperFunction::monomial(int(1), 1 - k, k + 1, false),
                ));
            }
            // G_i ~ tau p (q/p)^{i+1/2} = tau p^{(1-d)/2} q^{(1+d)/2}, d = 2i
            let mut ds: Vec<i64> = (0..=n).flat_map(|k| [2 * k + 1, -(2 * k + 1)]).collect();
            ds.sort_unstable();
            ds.dedup();
            ds.retain(|d| d.abs() <= 2 * n);
            for d in ds {
                basis.push((
                    BasisSymbol::indexed("G", Parity::Odd, d),
                    SuperFunction::monomial(int(1), (1 - d) / 2, (1 + d) / 2, true),
                ));
            }
            extract("k1-geom", &basis, BracketKind::Even, ProfileHint::LieSuper)
        }
    }
}

enum BracketKind {
    /// pbracket, no parity inversion.
    Even,
    /// abracket followed by parity inversion.
    Odd,
}

fn extract(
    name: &str,
    basis: &[(BasisSymbol, SuperFunction)],
    kind: BracketKind,
    hint: ProfileHint,
) -> Result<AlgebraDef, Error> {
    // For the odd bracket the table symbol parity is the inverse of the
    // function parity; assert the declared symbols agree.
    for (sym, f) in basis {
        let fp = f.parity().expect("basis functions are homogeneous");
        let expected = match kind {
            BracketKind::Even => fp,
            BracketKind::Odd => fp.flip(),
        };
        debug_assert_eq!(sym.parity, expected, "symbol {}", sym.label());
    }
    let dim = basis.len();
    let mut table = Vec::with_capacity(dim * dim);
    for (_, fi) in basis {
        for (_, fj) in basis {
            let prod = match kind {
                BracketKind::Even => pbracket(fi, fj)?,
                BracketKind::Odd => abracket(fi, fj)?,
            };
            table.push(match function_to_element(&prod, basis) {
                Some(e) => TableEntry::Value(e),
                None => TableEntry::OutOfWindow,
            });
        }
    }
    let symbols: Vec<BasisSymbol> = basis.iter().map(|(s, _)| s.clone()).collect();
    AlgebraDef::new(name, symbols, table, hint)
}

/// Expresses a superfunction in the given function basis; `None` when it has
/// a component outside the span (out-of-window for the rational families).
fn function_to_element(
    f: &SuperFunction,
    basis: &[(BasisSymbol, SuperFunction)],
) -> Option<Element> {
    if f.is_zero() {
        return Some(Element::zero());
    }
    let mut remaining = f.clone();
    let mut out = Element::zero();
    for (pos, (_, bf)) in basis.iter().enumerate() {
        // basis functions here are monomials; match on the leading monomial
        let (c_b, ep, eq, tau) = if let Some((c, ep, eq)) = bf.body.as_monomial() {
            (c, ep, eq, false)
        } else if let Some((c, ep, eq)) = bf.soul.as_monomial() {
            (c, ep, eq, true)
        } else {
            continue;
        };
        let poly = if tau { &remaining.soul } else { &remaining.body };
        let coeff = poly
            .terms()
            .find(|&((a, b), _)| (a, b) == (ep, eq))
            .map(|(_, v)| v.clone());
        if let Some(c) = coeff {
            let ratio = c / &c_b;
            out.add_term(pos, ratio.clone());
            remaining = remaining.sub(&bf.scale(&ratio));
        }
    }
    if remaining.is_zero() {
        Some(out)
    } else {
        None
    }
}

/// Parses a superfunction literal like `3/2 p^2 q^-1 t - q`.
pub fn parse_superfunction(text: &str) -> Result<SuperFunction, Error> {
    let mut out = SuperFunction::zero();
    for (sign, term) in crate::densities::split_signed_terms(text) {
        let term = term.trim();
        if term.is_empty() {
            continue;
        }
        let mut coeff = int(sign);
        let mut ep = 0i64;
        let mut eq = 0i64;
        let mut tau = false;
        for tok in term.split_whitespace() {
            if tok == "t" || tok == "tau" {
                if tau {
                    return Err(Error::Input("tau exponent exceeds 1".to_string()));
                }
                tau = true;
            } else if let Some(rest) = tok.strip_prefix("p^") {
                ep += rest
                    .parse::<i64>()
                    .map_err(|_| Error::Input(format!("bad exponent `{tok}`")))?;
            } else if let Some(rest) = tok.strip_prefix("q^") {
                eq += rest
                    .parse::<i64>()
                    .map_err(|_| Error::Input(format!("bad exponent `{tok}`")))?;
            } else if tok == "p" {
                ep += 1;
            } else if tok == "q" {
                eq += 1;
            } else {
                coeff *= parse_scalar(tok).map_err(Error::Input)?;
            }
        }
        out = out.add(&SuperFunction::monomial(coeff, ep, eq, tau));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::{check_profile, Profile, Verdict};
    use crate::builtins::{builtin, BuiltinName};
    use crate::superalg::WindowSpec;

    fn sf(text: &str) -> SuperFunction {
        parse_superfunction(text).unwrap()
    }

    #[test]
    fn pbracket_examples() {
        assert_eq!(pbracket(&sf("p"), &sf("q")).unwrap(), sf("1"));
        assert_eq!(pbracket(&sf("p^2"), &sf("q")).unwrap(), sf("2 p"));
        assert!(pbracket(&sf("p + t"), &sf("q")).is_err());
    }

    #[test]
    fn abracket_k3_values() {
        // oracle: the K3 correspondence eps = Pi(tau), a = Pi(q), b = Pi(p)
        assert_eq!(abracket(&sf("t"), &sf("t")).unwrap(), sf("t"));
        assert_eq!(abracket(&sf("t"), &sf("q")).unwrap(), sf("1/2 q"));
        assert_eq!(abracket(&sf("q"), &sf("t")).unwrap(), sf("1/2 q"));
        assert_eq!(abracket(&sf("q"), &sf("p")).unwrap(), sf("1/2 t"));
        assert_eq!(abracket(&sf("p"), &sf("q")).unwrap(), sf("-1/2 t"));
        assert!(abracket(&sf("q"), &sf("q")).unwrap().is_zero());
    }

    #[test]
    fn euler_degree_examples() {
        assert_eq!(euler_degree(&sf("p^2")).unwrap(), int(2));
        for n in -3..=3i64 {
            let f = SuperFunction::monomial(int(1), -n, n, true); // tau (q/p)^n
            assert_eq!(euler_degree(&f).unwrap(), int(1));
        }
        assert!(euler_degree(&sf("p + p^2")).is_err());
    }

    #[test]
    fn euler_degree_additive() {
        let fs = [sf("p^2 q^-1"), sf("q^3"), sf("p q t")];
        for f in &fs {
            for g in &fs {
                let fg = f.mul(g);
                if fg.is_zero() {
                    continue;
                }
                assert_eq!(
                    euler_degree(&fg).unwrap(),
                    euler_degree(f).unwrap() + euler_degree(g).unwrap()
                );
            }
        }
    }

    #[test]
    fn brackets_shift_euler_degree() {
        // pbracket: deg a + deg b - 2; abracket: deg a + deg b - 1
        let fs = [sf("p^2"), sf("p q^2"), sf("q t"), sf("p^3 t")];
        for f in &fs {
            for g in &fs {
                let pb = pbracket(f, g).unwrap();
                if !pb.is_zero() {
                    assert_eq!(
                        euler_degree(&pb).unwrap(),
                        euler_degree(f).unwrap() + euler_degree(g).unwrap() - int(2)
                    );
                }
                let ab = abracket(f, g).unwrap();
                if !ab.is_zero() {
                    assert_eq!(
                        euler_degree(&ab).unwrap(),
                        euler_degree(f).unwrap() + euler_degree(g).unwrap() - int(1)
                    );
                }
            }
        }
    }

    /// Monomials of total degree <= 6 with tau-degree <= 1.
    fn monomial_span(max_total: i64) -> Vec<SuperFunction> {
        let mut out = Vec::new();
        for a in 0..=max_total {
            for b in 0..=(max_total - a) {
                for tau in [false, true] {
                    if a + b + i64::from(tau) <= max_total {
                        out.push(SuperFunction::monomial(int(1), a, b, tau));
                    }
                }
            }
        }
        out
    }

    #[test]
    fn pbracket_skew_and_abracket_shifted_supercomm() {
        for f in monomial_span(3) {
            for g in monomial_span(3) {
                let (pf, pg) = (f.parity().unwrap(), g.parity().unwrap());
                let k = pf.koszul(pg) as i64;
                let pb_fg = pbracket(&f, &g).unwrap();
                let pb_gf = pbracket(&g, &f).unwrap();
                assert_eq!(pb_fg, pb_gf.scale(&int(-k)), "pbracket skew");
                // shifted supercommutativity of the odd bracket
                let shift = if pf == Parity::Even && pg == Parity::Even {
                    -1
                } else if pf == Parity::Odd && pg == Parity::Odd {
                    1
                } else {
                    1
                };
                let ab_fg = abracket(&f, &g).unwrap();
                let ab_gf = abracket(&g, &f).unwrap();
                assert_eq!(ab_fg, ab_gf.scale(&int(shift)), "abracket symmetry");
            }
        }
    }

    /// Equivariance of the odd bracket under quadratic Hamiltonian flows:
    /// {H, ]F,G[} = ]{H,F}, G[ + (-1)^{|H|(|F|+1)} ]F, {H,G}[.
    #[test]
    fn abracket_equivariance() {
        for h in hamiltonian_generators() {
            let ph = h.parity().unwrap();
            for f in monomial_span(4) {
                for g in monomial_span(2) {
                    let pf = f.parity().unwrap();
                    let lhs_inner = abracket(&f, &g).unwrap();
                    let lhs = if lhs_inner.is_zero() {
                        SuperFunction::zero()
                    } else {
                        pbracket(&h, &lhs_inner).unwrap()
                    };
                    let hf = pbracket(&h, &f).unwrap();
                    let hg = pbracket(&h, &g).unwrap();
                    let t1 = if hf.is_zero() {
                        SuperFunction::zero()
                    } else {
                        abracket(&hf, &g).unwrap()
                    };
                    let s = if ph.is_odd() && pf == Parity::Even {
                        int(-1)
                    } else {
                        int(1)
                    };
                    let t2 = if hg.is_zero() {
                        SuperFunction::zero()
                    } else {
                        abracket(&f, &hg).unwrap().scale(&s)
                    };
                    assert_eq!(lhs, t1.add(&t2), "H={} F={} G={}", h.format(), f.format(), g.format());
                }
            }
        }
    }

    #[test]
    fn invariant_bivectors_dimensions() {
        let b0 = invariant_bivectors(0);
        assert_eq!(b0.len(), 1);
        assert!(bivector_in_span(&Bivector::standard_poisson(), &b0));

        let b1 = invariant_bivectors(1);
        assert_eq!(b1.len(), 2);
        assert!(bivector_in_span(&Bivector::standard_poisson(), &b1));
        assert!(bivector_in_span(&Bivector::odd_invariant(), &b1));

        let b2 = invariant_bivectors(2);
        assert_eq!(b2.len(), 2);
        assert!(bivector_in_span(&Bivector::standard_poisson(), &b2));
        assert!(bivector_in_span(&Bivector::odd_invariant(), &b2));
    }

    #[test]
    fn bivector_brackets_match_calibrated_formulas() {
        let p = Bivector::standard_poisson();
        let l = Bivector::odd_invariant();
        for f in monomial_span(3) {
            for g in monomial_span(3) {
                assert_eq!(p.apply(&f, &g).unwrap(), pbracket(&f, &g).unwrap());
                let pf = f.parity().unwrap();
                let norm = -koszul_f(pf) * half();
                assert_eq!(
                    l.apply(&f, &g).unwrap().scale(&norm),
                    abracket(&f, &g).unwrap()
                );
            }
        }
    }

    #[test]
    fn extract_linear_equals_k3() {
        let geom = extract_table(ExtractSpace::Linear).unwrap();
        let k3 = builtin(BuiltinName::K3, None).unwrap();
        assert_eq!(geom.basis(), k3.basis());
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(geom.entry(i, j), k3.entry(i, j), "entry ({i},{j})");
            }
        }
    }

    #[test]
    fn extract_deg1_equals_ak1_window() {
        for n in [1i64, 3] {
            let geom = extract_table(ExtractSpace::Deg1Window(n)).unwrap();
            let ak1 = builtin(BuiltinName::Ak1, Some(WindowSpec::with_bound(n))).unwrap();
            assert_eq!(geom.basis(), ak1.basis(), "window {n}");
            for i in 0..geom.dim() {
                for j in 0..geom.dim() {
                    assert_eq!(geom.entry(i, j), ak1.entry(i, j), "window {n} ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn extract_quadratic_is_osp12() {
        let alg = extract_table(ExtractSpace::Quadratic).unwrap();
        assert_eq!(alg.graded_dim(), (3, 2));
        for (ax, r) in check_profile(&alg, Profile::LieSuper) {
            assert_eq!(r.verdict, Verdict::Pass, "axiom {ax}");
        }
    }

    /// Frozen K(1) relations in the degree-2 picture:
    /// {f_n, f_m} = 2(m-n) f_{n+m}, {f_n, g_i} = (2i-n) g_{n+i},
    /// {g_i, g_j} = f_{i+j} (hand evaluation of the even bracket).
    #[test]
    fn extract_deg2_window_table() {
        let alg = extract_table(ExtractSpace::Deg2Window(2)).unwrap();
        let l = |k: i64| alg.find(&format!("L{k}")).unwrap();
        let g = |d: i64| alg.find(&format!("G{d}/2")).unwrap();
        assert_eq!(
            *alg.entry(l(1), l(-1)),
            TableEntry::Value(Element::single(l(0), int(-4)))
        );
        assert_eq!(
            *alg.entry(l(1), g(1)),
            TableEntry::Value(Element::single(g(3), Scalar::zero() - int(0) + int(0)))
        );
        // {f_1, g_{1/2}} = (2*1/2 - 1) g_{3/2} = 0: zero coefficient
        match alg.entry(l(1), g(1)) {
            TableEntry::Value(e) => assert!(e.is_zero()),
            _ => panic!("expected in-window zero"),
        }
        // {g_{1/2}, g_{-1/2}} = f_0
        assert_eq!(
            *alg.entry(g(1), g(-1)),
            TableEntry::Value(Element::basis(l(0)))
        );
        // window edge: {f_2, f_1} = 2(1-2) f_3 leaves the bound-2 window
        assert_eq!(*alg.entry(l(2), l(1)), TableEntry::OutOfWindow);
        // profile
        for (ax, r) in check_profile(&alg, Profile::LieSuper) {
            assert_eq!(r.verdict, Verdict::Pass, "axiom {ax}");
            assert!(r.checked > 0);
        }
    }

    /// The calibration is the unique sign assignment in its family that
    /// reproduces the K3 table and the AK(1) bound-2 window.
    #[test]
    fn calibration_is_unique() {
        let lin_basis = [
            SuperFunction::monomial(int(1), 0, 0, true), // tau -> eps
            SuperFunction::monomial(int(1), 0, 1, false), // q -> a
            SuperFunction::monomial(int(1), 1, 0, false), // p -> b
        ];
        // expected K3 products under the correspondence, as superfunctions
        let expected_lin: Vec<Vec<SuperFunction>> = vec![
            vec![lin_basis[0].clone(), lin_basis[1].scale(&half()), lin_basis[2].scale(&half())],
            vec![
                lin_basis[1].scale(&half()),
                SuperFunction::zero(),
                lin_basis[0].scale(&half()),
            ],
            vec![
                lin_basis[2].scale(&half()),
                lin_basis[0].scale(&-half()),
                SuperFunction::zero(),
            ],
        ];
        let mut matches = Vec::new();
        for mask in 0..32u32 {
            let signs = AbracketSigns([
                if mask & 1 != 0 { 1 } else { -1 },
                if mask & 2 != 0 { 1 } else { -1 },
                if mask & 4 != 0 { 1 } else { -1 },
                if mask & 8 != 0 { 1 } else { -1 },
                if mask & 16 != 0 { 1 } else { -1 },
            ]);
            let mut ok = true;
            'outer: for (i, f) in lin_basis.iter().enumerate() {
                for (j, g) in lin_basis.iter().enumerate() {
                    let got = abracket_with_signs(f, g, f.parity().unwrap(), &signs);
                    if got != expected_lin[i][j] {
                        ok = false;
                        break 'outer;
                    }
                }
            }
            if ok {
                // AK(1) window cross-check at bound 2: a_i a_j sign pattern
                // (needs the even-even slot, which the linear test pins too;
                // also pin the odd-odd eps slots via eps_1 eps_1 = eps_2)
                let eps1 = SuperFunction::monomial(int(1), -1, 1, true);
                let eps2 = SuperFunction::monomial(int(1), -2, 2, true);
                let got = abracket_with_signs(&eps1, &eps1, Parity::Odd, &signs);
                if got == eps2 {
                    matches.push(signs);
                }
            }
        }
        assert_eq!(matches, vec![CALIBRATED_SIGNS]);
    }

    #[test]
    fn quadratic_span_closes_under_pbracket() {
        let quads = [sf("p^2"), sf("p q"), sf("q^2"), sf("p t"), sf("q t")];
        let basis: Vec<(BasisSymbol, SuperFunction)> = [
            ("e", Parity::Even),
            ("h", Parity::Even),
            ("f", Parity::Even),
            ("A", Parity::Odd),
            ("B", Parity::Odd),
        ]
        .iter()
        .zip(quads.iter())
        .map(|(&(n, p), f)| (BasisSymbol::plain(n, p), f.clone()))
        .collect();
        for (_, f) in &basis {
            for (_, g) in &basis {
                let pb = pbracket(f, g).unwrap();
                assert!(
                    function_to_element(&pb, &basis).is_some(),
                    "{} {}",
                    f.format(),
                    g.format()
                );
            }
        }
    }

    #[test]
    fn parse_superfunction_literals() {
        assert_eq!(sf("3/2 p^2 q^-1 t").format(), "3/2 p^2 q^-1 t");
        assert_eq!(sf("p - q").format(), "-q + p");
        assert!(parse_superfunction("t t").is_err());
    }
}
