//! The adjoint Lie superalgebra g(a) = S^2_{a0} a1 (+) a1, the derivation
//! algebra, and the embedding g(a) -> Der(a).
//!
//! The bracket on g(a), for odd elements y of the source antialgebra:
//!
//! ```text
//! [y1, y2]           = y1 (.) y2
//! [y1 (.) y2, y3]    = y1(y2 y3) + y2(y1 y3) = -[y3, y1 (.) y2]
//! [u, y3 (.) y4]     = [u, y3] (.) y4 + [u, y4] (.) y3      (u even)
//! ```
//!
//! Endomorphisms of `a` compose in application order here: `P * Q` means
//! "apply P, then Q", the natural composition for right multiplications.
//! With that convention the map `y -> R_y`, `y1 (.) y2 -> R_{y1} R_{y2} +
//! R_{y2} R_{y1}` respects brackets on the nose; under the opposite
//! convention it would be an antihomomorphism on the mixed and even pairs.
//! The choice is pinned by the K3 instance in the tests below.

use crate::axioms::{profile_passes, Profile};
use crate::error::Error;
use crate::matrix::{coords_in_span, Matrix, RowSpace};
use crate::scalar::{int, Scalar};
use crate::superalg::{AlgebraDef, BasisSymbol, Element, Parity, ProfileHint, TableEntry};
use num::Zero;

/// The quotient S^2_{a0} a1: symmetric pairs of odd basis vectors modulo
/// `y1 x (.) y2 - y1 (.) y2 x`.
#[derive(Debug, Clone)]
pub struct SymSpace {
    /// Global odd basis indices of the source algebra, in basis order.
    pub odd: Vec<usize>,
    /// Ambient symbols: local odd index pairs (i, j) with i <= j.
    pub ambient: Vec<(usize, usize)>,
    /// Raw relation vectors over the ambient coordinates (pre-reduction).
    pub relations: Vec<Vec<Scalar>>,
    /// Echelonized relation span.
    span: RowSpace,
    /// Ambient positions that survive to the quotient (non-pivot columns).
    pub quotient: Vec<usize>,
}

impl SymSpace {
    pub fn dim(&self) -> usize {
        self.quotient.len()
    }

    /// Quotient representative pairs in global basis indices.
    pub fn quotient_pairs(&self) -> Vec<(usize, usize)> {
        self.quotient
            .iter()
            .map(|&q| {
                let (i, j) = self.ambient[q];
                (self.odd[i], self.odd[j])
            })
            .collect()
    }

    fn local(&self, global: usize) -> Option<usize> {
        self.odd.iter().position(|&g| g == global)
    }

    /// Embeds `u (.) v` (both elements of a1) into ambient coordinates.
    pub fn sym_embed(&self, u: &Element, v: &Element) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.ambient.len()];
        for (i, a) in u.terms() {
            let li = self.local(i).expect("u must lie in the odd part");
            for (j, b) in v.terms() {
                let lj = self.local(j).expect("v must lie in the odd part");
                let key = (li.min(lj), li.max(lj));
                let pos = self
                    .ambient
                    .iter()
                    .position(|&p| p == key)
                    .expect("ambient pair");
                out[pos] += a * b;
            }
        }
        out
    }

    /// Kills the relation span and reads off quotient coordinates.
    pub fn reduce(&self, ambient: &[Scalar]) -> Vec<Scalar> {
        let mut v = ambient.to_vec();
        for (row, &p) in self.span.rows().iter().zip(self.span.pivots()) {
            if !v[p].is_zero() {
                let factor = v[p].clone();
                for (x, y) in v.iter_mut().zip(row) {
                    let nv = &*x - &factor * y;
                    *x = nv;
                }
            }
        }
        self.quotient.iter().map(|&q| v[q].clone()).collect()
    }
}

/// The adjoint Lie superalgebra together with its provenance.
#[derive(Debug, Clone)]
pub struct LieSuperDef {
    pub algebra: AlgebraDef,
    pub source_name: String,
    pub sym: SymSpace,
    /// Global odd index of the source algebra per odd basis position of `algebra`.
    pub odd_map: Vec<usize>,
    /// Representative pairs (global indices) per even basis position.
    pub even_reps: Vec<(usize, usize)>,
}

fn require_antialgebra(a: &AlgebraDef) -> Result<(), Error> {
    if !profile_passes(a, Profile::Antialgebra) {
        return Err(Error::NotAntialgebra(a.name.clone()));
    }
    Ok(())
}

/// Builds the quotient space S^2_{a0} a1 of `a`. Errors when `a` fails the
/// antialgebra profile. Relations touching out-of-window products are skipped
/// (window truncations must not invent relations).
pub fn sym2_quotient(a: &AlgebraDef) -> Result<SymSpace, Error> {
    require_antialgebra(a)?;
    Ok(sym2_quotient_unchecked(a))
}

fn sym2_quotient_unchecked(a: &AlgebraDef) -> SymSpace {
    let odd = a.odd_indices();
    let m = odd.len();
    let mut ambient = Vec::new();
    for i in 0..m {
        for j in i..m {
            ambient.push((i, j));
        }
    }
    let mut space = SymSpace {
        odd: odd.clone(),
        ambient,
        relations: Vec::new(),
        span: RowSpace::new(),
        quotient: Vec::new(),
    };
    for &x in &a.even_indices() {
        for li in 0..m {
            for lj in 0..m {
                let yi_x = a.entry(odd[li], x);
                let yj_x = a.entry(odd[lj], x);
                let (TableEntry::Value(yi_x), TableEntry::Value(yj_x)) = (yi_x, yj_x) else {
                    continue;
                };
                let lhs = space.sym_embed(yi_x, &Element::basis(odd[lj]));
                let rhs = space.sym_embed(&Element::basis(odd[li]), yj_x);
                let rel: Vec<Scalar> = lhs.iter().zip(&rhs).map(|(l, r)| l - r).collect();
                if rel.iter().any(|c| !c.is_zero()) {
                    space.relations.push(rel.clone());
                    space.span.insert(rel);
                }
            }
        }
    }
    space.quotient = (0..space.ambient.len())
        .filter(|c| !space.span.pivots().contains(c))
        .collect();
    space
}

/// `[u (.) v, w] = u(vw) + v(uw)` for odd elements u, v, w of the source.
fn mixed_bracket(a: &AlgebraDef, u: &Element, v: &Element, w: &Element) -> Option<Element> {
    let vw = a.multiply_opt(v, w)?;
    let uw = a.multiply_opt(u, w)?;
    let t1 = a.multiply_opt(u, &vw)?;
    let t2 = a.multiply_opt(v, &uw)?;
    Some(t1.add(&t2))
}

/// Constructs g(a) with the bracket above. Verifies well-definedness on the
/// quotient: `[y1 x (.) y2, y3] = [y1 (.) y2 x, y3]` for all basis tuples.
pub fn adjoint_algebra(a: &AlgebraDef) -> Result<LieSuperDef, Error> {
    require_antialgebra(a)?;
    let sym = sym2_quotient_unchecked(a);
    let odd = sym.odd.clone();
    let m = odd.len();

    // Well-definedness ("exercice"): both placements of x give equal brackets.
    for &x in &a.even_indices() {
        for &y1 in &odd {
            for &y2 in &odd {
                for &y3 in &odd {
                    let (TableEntry::Value(y1x), TableEntry::Value(y2x)) =
                        (a.entry(y1, x), a.entry(y2, x))
                    else {
                        continue;
                    };
                    let lhs = mixed_bracket(a, y1x, &Element::basis(y2), &Element::basis(y3));
                    let rhs = mixed_bracket(a, &Element::basis(y1), y2x, &Element::basis(y3));
                    if let (Some(l), Some(r)) = (lhs, rhs) {
                        if l != r {
                            return Err(Error::WellDefinedness(format!(
                                "tuple (x={}, y1={}, y2={}, y3={})",
                                a.symbol(x).label(),
                                a.symbol(y1).label(),
                                a.symbol(y2).label(),
                                a.symbol(y3).label()
                            )));
                        }
                    }
                }
            }
        }
    }

    let qpairs = sym.quotient_pairs();
    let qdim = qpairs.len();
    let mut basis = Vec::new();
    for &(gi, gj) in &qpairs {
        basis.push(BasisSymbol::plain(
            &format!("s({},{})", a.symbol(gi).label(), a.symbol(gj).label()),
            Parity::Even,
        ));
    }
    for &g in &odd {
        basis.push(BasisSymbol::plain(&a.symbol(g).label(), Parity::Odd));
    }
    let dim = qdim + m;

    // quotient coords -> element over g's even positions
    let quo_elem = |coords: Vec<Scalar>| {
        let mut e = Element::zero();
        for (k, c) in coords.into_iter().enumerate() {
            e.add_term(k, c);
        }
        e
    };
    // element of a1 -> element over g's odd positions
    let odd_elem = |e: &Element| {
        let mut out = Element::zero();
        for (g, c) in e.terms() {
            let lo = odd.iter().position(|&o| o == g).expect("odd image");
            out.add_term(qdim + lo, c.clone());
        }
        out
    };

    let mut table = vec![TableEntry::Value(Element::zero()); dim * dim];
    let set = |table: &mut Vec<TableEntry>, i: usize, j: usize, v: TableEntry| {
        table[i * dim + j] = v;
    };

    // odd-odd: [y_i, y_j] = y_i (.) y_j, reduced
    for (li, &gi) in odd.iter().enumerate() {
        for (lj, &gj) in odd.iter().enumerate() {
            let amb = sym.sym_embed(&Element::basis(gi), &Element::basis(gj));
            let v = quo_elem(sym.reduce(&amb));
            set(&mut table, qdim + li, qdim + lj, TableEntry::Value(v));
        }
    }
    // even-odd and odd-even
    for (q, &(gi, gj)) in qpairs.iter().enumerate() {
        for (lk, &gk) in odd.iter().enumerate() {
            let val = mixed_bracket(
                a,
                &Element::basis(gi),
                &Element::basis(gj),
                &Element::basis(gk),
            );
            match val {
                Some(w) => {
                    let w = odd_elem(&w);
                    set(&mut table, q, qdim + lk, TableEntry::Value(w.clone()));
                    set(&mut table, qdim + lk, q, TableEntry::Value(w.neg()));
                }
                None => {
                    set(&mut table, q, qdim + lk, TableEntry::OutOfWindow);
                    set(&mut table, qdim + lk, q, TableEntry::OutOfWindow);
                }
            }
        }
    }
    // even-even: [s_q, s_r] = [s_q, y_k] (.) y_l + [s_q, y_l] (.) y_k
    for (q, &(gi, gj)) in qpairs.iter().enumerate() {
        for (r, &(gk, gl)) in qpairs.iter().enumerate() {
            let wk = mixed_bracket(
                a,
                &Element::basis(gi),
                &Element::basis(gj),
                &Element::basis(gk),
            );
            let wl = mixed_bracket(
                a,
                &Element::basis(gi),
                &Element::basis(gj),
                &Element::basis(gl),
            );
            match (wk, wl) {
                (Some(wk), Some(wl)) => {
                    let amb: Vec<Scalar> = sym
                        .sym_embed(&wk, &Element::basis(gl))
                        .iter()
                        .zip(&sym.sym_embed(&wl, &Element::basis(gk)))
                        .map(|(x, y)| x + y)
                        .collect();
                    let v = quo_elem(sym.reduce(&amb));
                    set(&mut table, q, r, TableEntry::Value(v));
                }
                _ => set(&mut table, q, r, TableEntry::OutOfWindow),
            }
        }
    }

    let algebra = AlgebraDef::new(
        &format!("g({})", a.name),
        basis,
        table,
        ProfileHint::LieSuper,
    )?;
    Ok(LieSuperDef {
        algebra,
        source_name: a.name.clone(),
        sym,
        odd_map: odd,
        even_reps: qpairs,
    })
}

/// A homogeneous endomorphism of a graded structure-constant algebra, stored
/// as a full matrix in the algebra's basis (columns are inputs).
#[derive(Debug, Clone, PartialEq)]
pub struct GradedEndo {
    pub parity: Parity,
    pub matrix: Matrix,
}

impl GradedEndo {
    /// Application-order composition: `self` first, then `other`.
    pub fn then(&self, other: &GradedEndo) -> GradedEndo {
        GradedEndo {
            parity: self.parity.product(other.parity),
            matrix: other.matrix.mul(&self.matrix),
        }
    }

    /// Supercommutator in application-order composition.
    pub fn super_bracket(&self, other: &GradedEndo) -> GradedEndo {
        let pq = self.then(other);
        let qp = other.then(self);
        let s = self.parity.koszul(other.parity) as i64;
        GradedEndo {
            parity: pq.parity,
            matrix: pq.matrix.sub(&qp.matrix.scale(&int(s))),
        }
    }

    pub fn anticommutator(&self, other: &GradedEndo) -> GradedEndo {
        let pq = self.then(other);
        let qp = other.then(self);
        GradedEndo {
            parity: pq.parity,
            matrix: pq.matrix.add(&qp.matrix),
        }
    }
}

/// Right multiplication by basis vector `y` as an endomorphism matrix.
pub fn right_mul(a: &AlgebraDef, y: usize) -> Option<GradedEndo> {
    let n = a.dim();
    let mut m = Matrix::zero(n, n);
    for c in 0..n {
        match a.entry(c, y) {
            TableEntry::Value(e) => {
                for (r, coeff) in e.terms() {
                    m[(r, c)] = coeff.clone();
                }
            }
            TableEntry::OutOfWindow => return None,
        }
    }
    Some(GradedEndo {
        parity: a.symbol(y).parity,
        matrix: m,
    })
}

/// Whether `d` satisfies `D(uv) = D(u)v + (-1)^{|D||u|} u D(v)` on all pairs
/// with in-window products.
pub fn is_derivation(a: &AlgebraDef, d: &GradedEndo) -> bool {
    let n = a.dim();
    let apply = |e: &Element| {
        let v = d.matrix.mul_vec(&e.to_vec(n));
        Element::from_vec(&v)
    };
    for i in 0..n {
        for j in 0..n {
            let TableEntry::Value(uv) = a.entry(i, j) else {
                continue;
            };
            let lhs = apply(uv);
            let s = if d.parity.is_odd() && a.symbol(i).parity.is_odd() {
                -1
            } else {
                1
            };
            let di = apply(&Element::basis(i));
            let dj = apply(&Element::basis(j));
            let Some(t1) = a.multiply_opt(&di, &Element::basis(j)) else {
                continue;
            };
            let Some(t2) = a.multiply_opt(&Element::basis(i), &dj) else {
                continue;
            };
            if lhs != t1.add(&t2.scale(&int(s))) {
                return false;
            }
        }
    }
    true
}

/// The derivation algebra of `a`, with its generators and the structure
/// constants of the supercommutator bracket (application-order convention).
#[derive(Debug, Clone)]
pub struct DerivationAlgebra {
    pub algebra: AlgebraDef,
    pub generators: Vec<GradedEndo>,
}

impl DerivationAlgebra {
    pub fn graded_dim(&self) -> (usize, usize) {
        self.algebra.graded_dim()
    }
}

/// Solves the derivation equations for each parity and assembles the
/// derivation Lie superalgebra.
pub fn derivations(a: &AlgebraDef) -> DerivationAlgebra {
    let n = a.dim();
    let mut generators: Vec<GradedEndo> = Vec::new();
    for parity in [Parity::Even, Parity::Odd] {
        // variables: entries (r, c) with |basis_r| = |basis_c| + parity
        let vars: Vec<(usize, usize)> = (0..n)
            .flat_map(|r| (0..n).map(move |c| (r, c)))
            .filter(|&(r, c)| a.symbol(r).parity == a.symbol(c).parity.product(parity))
            .collect();
        let var_pos = |r: usize, c: usize| vars.iter().position(|&v| v == (r, c));
        let mut rows = RowSpace::new();
        for i in 0..n {
            for j in 0..n {
                let TableEntry::Value(uv) = a.entry(i, j) else {
                    continue;
                };
                // skip pairs whose Leibniz terms touch out-of-window products
                let col_parity_i = a.symbol(i).parity.product(parity);
                let col_parity_j = a.symbol(j).parity.product(parity);
                let mut usable = true;
                for r in 0..n {
                    if a.symbol(r).parity == col_parity_i
                        && matches!(a.entry(r, j), TableEntry::OutOfWindow)
                    {
                        usable = false;
                    }
                    if a.symbol(r).parity == col_parity_j
                        && matches!(a.entry(i, r), TableEntry::OutOfWindow)
                    {
                        usable = false;
                    }
                }
                if !usable {
                    continue;
                }
                let s = if parity.is_odd() && a.symbol(i).parity.is_odd() {
                    int(-1)
                } else {
                    int(1)
                };
                for k in 0..n {
                    let mut row = vec![Scalar::zero(); vars.len()];
                    let mut nonzero = false;
                    // D(uv)_k = sum_c uv_c D[k, c]
                    for (c, coeff) in uv.terms() {
                        if let Some(p) = var_pos(k, c) {
                            row[p] += coeff.clone();
                            nonzero = true;
                        }
                    }
                    // -(D(b_i) b_j)_k = -sum_r D[r, i] (b_r b_j)_k
                    for r in 0..n {
                        if let Some(p) = var_pos(r, i) {
                            if let TableEntry::Value(e) = a.entry(r, j) {
                                let c = e.coeff(k);
                                if !c.is_zero() {
                                    row[p] -= c;
                                    nonzero = true;
                                }
                            }
                        }
                        if let Some(p) = var_pos(r, j) {
                            if let TableEntry::Value(e) = a.entry(i, r) {
                                let c = e.coeff(k);
                                if !c.is_zero() {
                                    row[p] -= &s * c;
                                    nonzero = true;
                                }
                            }
                        }
                    }
                    if nonzero {
                        rows.insert(row);
                    }
                }
            }
        }
        for v in rows.nullspace(vars.len()) {
            let mut m = Matrix::zero(n, n);
            for (p, &(r, c)) in vars.iter().enumerate() {
                m[(r, c)] = v[p].clone();
            }
            generators.push(GradedEndo { parity, matrix: m });
        }
    }

    // structure constants of the supercommutator over the generator basis
    let flats: Vec<Vec<Scalar>> = generators.iter().map(|g| g.matrix.flatten()).collect();
    let dim = generators.len();
    let basis: Vec<BasisSymbol> = generators
        .iter()
        .enumerate()
        .map(|(i, g)| BasisSymbol::plain(&format!("D{i}"), g.parity))
        .collect();
    let mut table = Vec::with_capacity(dim * dim);
    for gi in &generators {
        for gj in &generators {
            let br = gi.super_bracket(gj);
            let coords = coords_in_span(&br.matrix.flatten(), &flats)
                .expect("derivations close under the supercommutator");
            let mut e = Element::zero();
            for (k, c) in coords.into_iter().enumerate() {
                e.add_term(k, c);
            }
            table.push(TableEntry::Value(e));
        }
    }
    let algebra = AlgebraDef::new(
        &format!("Der({})", a.name),
        basis,
        table,
        ProfileHint::LieSuper,
    )
    .expect("derivation brackets respect parity");
    DerivationAlgebra {
        algebra,
        generators,
    }
}

#[derive(Debug, Clone)]
pub struct EmbeddingReport {
    pub well_defined: bool,
    pub lands_in_derivations: bool,
    pub homomorphism: bool,
    pub injective: bool,
    pub surjective: bool,
    pub g_dim: (usize, usize),
    pub der_dim: (usize, usize),
}

impl EmbeddingReport {
    pub fn bijective(&self) -> bool {
        self.injective && self.surjective
    }

    pub fn all_checks_pass(&self) -> bool {
        self.well_defined && self.lands_in_derivations && self.homomorphism && self.injective
    }
}

/// Builds `iota: g(a) -> End(a)` by `iota(y) = R_y`,
/// `iota(y1 (.) y2) = R_{y1} R_{y2} + R_{y2} R_{y1}` and verifies it is well
/// defined on the quotient, lands in Der(a), respects brackets, and is
/// injective; reports surjectivity onto Der(a).
pub fn embedding_check(a: &AlgebraDef) -> Result<EmbeddingReport, Error> {
    let g = adjoint_algebra(a)?;
    let der = derivations(a);
    let n = a.dim();

    let r_mul = |y: usize| right_mul(a, y).ok_or_else(|| {
        Error::Input("embedding check needs a fully in-window algebra".to_string())
    });

    // images of g's basis
    let mut images: Vec<GradedEndo> = Vec::new();
    for &(gi, gj) in &g.even_reps {
        let ri = r_mul(gi)?;
        let rj = r_mul(gj)?;
        images.push(ri.anticommutator(&rj));
    }
    for &gk in &g.odd_map {
        images.push(r_mul(gk)?);
    }

    // well-definedness on the quotient: relation vectors map to zero
    let mut well_defined = true;
    for rel in &g.sym.relations {
        let mut acc = Matrix::zero(n, n);
        for (pos, coeff) in rel.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            let (li, lj) = g.sym.ambient[pos];
            let ri = r_mul(g.sym.odd[li])?;
            let rj = r_mul(g.sym.odd[lj])?;
            acc = acc.add(&ri.anticommutator(&rj).matrix.scale(coeff));
        }
        if !acc.is_zero() {
            well_defined = false;
        }
    }

    let lands_in_derivations = images.iter().all(|m| is_derivation(a, m));

    // homomorphism on all basis pairs of g
    let gdim = g.algebra.dim();
    let image_elt = |e: &Element| {
        let mut acc = Matrix::zero(n, n);
        for (k, c) in e.terms() {
            acc = acc.add(&images[k].matrix.scale(c));
        }
        acc
    };
    let mut homomorphism = true;
    for u in 0..gdim {
        for v in 0..gdim {
            let TableEntry::Value(buv) = g.algebra.entry(u, v) else {
                continue;
            };
            let lhs = image_elt(buv);
            let rhs = images[u].super_bracket(&images[v]).matrix;
            if lhs != rhs {
                homomorphism = false;
            }
        }
    }

    // injectivity: rank of flattened images equals dim g
    let mut rank_g = RowSpace::new();
    for m in &images {
        rank_g.insert(m.matrix.flatten());
    }
    let injective = rank_g.rank() == gdim;

    // surjectivity onto Der(a): every derivation generator lies in the image span
    let image_flats: Vec<Vec<Scalar>> = images.iter().map(|m| m.matrix.flatten()).collect();
    let surjective = der
        .generators
        .iter()
        .all(|d| coords_in_span(&d.matrix.flatten(), &image_flats).is_some());

    Ok(EmbeddingReport {
        well_defined,
        lands_in_derivations,
        homomorphism,
        injective,
        surjective,
        g_dim: g.algebra.graded_dim(),
        der_dim: der.graded_dim(),
    })
}
