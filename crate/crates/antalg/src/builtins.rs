//! The named algebras from the survey: K3, AK(1), osp(1,2), K(1), Witt.
//!
//! `osp12` is constructed as the adjoint Lie superalgebra of K3; `k1` is the
//! tensor-density realization window re-exported as a table; `witt` is the
//! even part of `k1`.

use crate::adjoint::adjoint_algebra;
use crate::densities::{realize_window, RealizeSpace};
use crate::error::Error;
use crate::scalar::half;
use crate::superalg::{
    materialize_window, Ak1Family, AlgebraDef, BasisSymbol, Element, Parity, ProfileHint,
    TableEntry, WindowSpec,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BuiltinName {
    K3,
    Ak1,
    Osp12,
    K1,
    Witt,
}

impl BuiltinName {
    pub fn parse(s: &str) -> Option<BuiltinName> {
        match s {
            "k3" => Some(BuiltinName::K3),
            "ak1" => Some(BuiltinName::Ak1),
            "osp12" => Some(BuiltinName::Osp12),
            "k1" => Some(BuiltinName::K1),
            "witt" => Some(BuiltinName::Witt),
            _ => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            BuiltinName::K3 => "k3",
            BuiltinName::Ak1 => "ak1",
            BuiltinName::Osp12 => "osp12",
            BuiltinName::K1 => "k1",
            BuiltinName::Witt => "witt",
        }
    }
}

/// The tiny Kaplansky algebra: eps even, a, b odd, with
/// eps eps = eps, eps a = 1/2 a, eps b = 1/2 b, a b = 1/2 eps.
pub fn k3() -> AlgebraDef {
    let basis = vec![
        BasisSymbol::plain("eps", Parity::Even),
        BasisSymbol::plain("a", Parity::Odd),
        BasisSymbol::plain("b", Parity::Odd),
    ];
    let (eps, a, b) = (0usize, 1usize, 2usize);
    let e = Element::basis;
    let z = Element::zero;
    let v = |el: Element| TableEntry::Value(el);
    let table = vec![
        // eps row
        v(e(eps)),
        v(e(a).scale(&half())),
        v(e(b).scale(&half())),
        // a row
        v(e(a).scale(&half())),
        v(z()),
        v(e(eps).scale(&half())),
        // b row
        v(e(b).scale(&half())),
        v(e(eps).scale(&-half())),
        v(z()),
    ];
    AlgebraDef::new("k3", basis, table, ProfileHint::Antialgebra).expect("k3 table is valid")
}

/// Window of the Witt algebra: L_n, brackets [L_n, L_m] = (n - m) L_{n+m}.
/// The sign convention matches the even part of the density realization.
fn witt_window(w: &WindowSpec) -> AlgebraDef {
    let k1 = realize_window(RealizeSpace::LieSuper, w);
    let evens = k1.even_indices();
    let basis: Vec<BasisSymbol> = evens.iter().map(|&i| k1.symbol(i).clone()).collect();
    let dim = basis.len();
    let mut table = Vec::with_capacity(dim * dim);
    for (_, &i) in evens.iter().enumerate() {
        for (_, &j) in evens.iter().enumerate() {
            match k1.entry(i, j) {
                TableEntry::OutOfWindow => table.push(TableEntry::OutOfWindow),
                TableEntry::Value(e) => {
                    let mut out = Element::zero();
                    for (k, c) in e.terms() {
                        let pos = evens
                            .iter()
                            .position(|&ei| ei == k)
                            .expect("even products stay even");
                        out.add_term(pos, c.clone());
                    }
                    table.push(TableEntry::Value(out));
                }
            }
        }
    }
    AlgebraDef::new("witt", basis, table, ProfileHint::LieSuper).expect("witt table is valid")
}

/// Builds a named algebra. `ak1`, `k1` and `witt` are infinite families and
/// require a window.
pub fn builtin(name: BuiltinName, window: Option<WindowSpec>) -> Result<AlgebraDef, Error> {
    match name {
        BuiltinName::K3 => Ok(k3()),
        BuiltinName::Ak1 => {
            let w = window.ok_or_else(|| {
                Error::Input("builtin ak1 is an infinite family: a window is required".into())
            })?;
            Ok(materialize_window(&Ak1Family, &w))
        }
        BuiltinName::Osp12 => {
            let g = adjoint_algebra(&k3())?;
            let mut alg = g.algebra;
            alg.name = "osp12".into();
            Ok(alg)
        }
        BuiltinName::K1 => {
            let w = window.ok_or_else(|| {
                Error::Input("builtin k1 is an infinite family: a window is required".into())
            })?;
            Ok(realize_window(RealizeSpace::LieSuper, &w))
        }
        BuiltinName::Witt => {
            let w = window.ok_or_else(|| {
                Error::Input("builtin witt is an infinite family: a window is required".into())
            })?;
            Ok(witt_window(&w))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    #[test]
    fn k3_table_has_exactly_four_nonzero_products_up_to_mirrors() {
        let alg = k3();
        let mut nonzero = Vec::new();
        for i in 0..alg.dim() {
            for j in 0..alg.dim() {
                if let TableEntry::Value(e) = alg.entry(i, j) {
                    if !e.is_zero() {
                        nonzero.push((i, j));
                    }
                }
            }
        }
        // eps*eps, eps*a, eps*b, a*b plus the three sign-forced mirrors
        assert_eq!(nonzero.len(), 7);
    }

    #[test]
    fn ak1_requires_window() {
        assert!(builtin(BuiltinName::Ak1, None).is_err());
        let alg = builtin(BuiltinName::Ak1, Some(WindowSpec::with_bound(2))).unwrap();
        let eps1 = alg.find("eps1").unwrap();
        let eps2 = alg.find("eps2").unwrap();
        assert_eq!(
            *alg.entry(eps1, eps1),
            TableEntry::Value(Element::basis(eps2))
        );
    }

    #[test]
    fn osp12_mixed_bracket() {
        // [a(.)b, a] = -1/4 a; oracle: direct expansion of the adjoint
        // bracket with the K3 table, a(ba) + b(aa) = a(-1/2 eps) = -1/4 a.
        let alg = builtin(BuiltinName::Osp12, None).unwrap();
        let s_ab = alg.find("s(a,b)").unwrap();
        let a = alg.find("a").unwrap();
        assert_eq!(
            *alg.entry(s_ab, a),
            TableEntry::Value(Element::single(a, -crate::scalar::frac(1, 4)))
        );
    }

    #[test]
    fn witt_is_even_part_of_k1() {
        let w = WindowSpec::with_bound(3);
        let witt = builtin(BuiltinName::Witt, Some(w.clone())).unwrap();
        let l1 = witt.find("L1").unwrap();
        let l_1 = witt.find("L-1").unwrap();
        let l0 = witt.find("L0").unwrap();
        // [L_1, L_(-1)] = (1 - (-1)) L_0 = 2 L_0
        assert_eq!(
            *witt.entry(l1, l_1),
            TableEntry::Value(Element::single(l0, int(2)))
        );
        assert!(witt.odd_indices().is_empty());
    }
}
