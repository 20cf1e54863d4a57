//! Integral closure of a rank-two module via the determinantal criterion.
//!
//! With `Ī` the closure of `I(M)`, an element `v = (p, q)` of F is integral
//! over M exactly when `p·b − q·a ∈ Ī` for every column `(a, b)` of M. Since
//! `m^D ⊆ Ī` for `D = power_containment_degree(Ī)`, the closure contains
//! `m^D F` and is determined by the solutions with `deg p, deg q < D`.

use num_traits::Zero;

use crate::linalg::{kernel, SparseVec};
use crate::qpoly::{Monomial, Poly};
use crate::staircase::Staircase;
use crate::trunclin::{ModuleSpan, TruncSpace};

use super::{Column, ModuleError, ModuleMat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureResult {
    pub closed: bool,
    /// The input columns followed by `new_elements`.
    pub closure_gens: ModuleMat,
    /// Closure elements independent modulo `M + m·closure(M)`.
    pub new_elements: Vec<Column>,
    /// `m^cutoff F ⊆ closure(M)`.
    pub cutoff: u32,
}

/// Generators of `closure(M)` given `Ī = closure(I(M))`.
pub fn module_closure(m: &ModuleMat, ibar: &Staircase) -> Result<ClosureResult, ModuleError> {
    let d = ibar.power_containment_degree();
    let mut candidates = determinantal_solutions(m, ibar, d);
    for mono in Monomial::of_degree(d) {
        let g = Poly::monomial(mono);
        candidates.push([g.clone(), Poly::zero()]);
        candidates.push([Poly::zero(), g]);
    }

    // m^{d+1} F ⊆ m·closure, so F/m^{d+1}F sees the whole quotient closure/m·closure.
    let scaled: Vec<Column> = m
        .cols()
        .iter()
        .chain(candidates.iter())
        .flat_map(|c| {
            [
                [&c[0] * &Poly::x(), &c[1] * &Poly::x()],
                [&c[0] * &Poly::y(), &c[1] * &Poly::y()],
            ]
        })
        .collect();
    let mut span = ModuleSpan::new(&scaled, d + 1);
    for c in m.cols() {
        span.insert_vector(c);
    }
    let mut new_elements = Vec::new();
    for c in &candidates {
        let nf = span.normal_form(c);
        if nf[0].is_zero() && nf[1].is_zero() {
            continue;
        }
        let nf = make_monic(nf);
        span.insert_vector(&nf);
        new_elements.push(nf);
    }

    let mut gens = m.cols().to_vec();
    gens.extend(new_elements.iter().cloned());
    Ok(ClosureResult {
        closed: new_elements.is_empty(),
        closure_gens: ModuleMat::from_cols_unchecked(gens),
        new_elements,
        cutoff: d,
    })
}

/// Basis of `{(p, q) : deg < d, p·b − q·a ∈ Ī for every column (a, b)}`.
fn determinantal_solutions(m: &ModuleMat, ibar: &Staircase, d: u32) -> Vec<Column> {
    let standard = ibar.standard_monomials();
    let nstd = standard.len();
    let basis: Vec<Monomial> = TruncSpace::new(d).basis().collect();
    // unknown 2k is p = μ_k, unknown 2k+1 is q = μ_k
    let mut images: Vec<SparseVec> = Vec::new();
    for &mu in &basis {
        for comp in 0..2 {
            let mut v = SparseVec::new();
            for (i, col) in m.cols().iter().enumerate() {
                let f = if comp == 0 {
                    col[1].mul_monomial(mu)
                } else {
                    -col[0].mul_monomial(mu)
                };
                for (s_idx, s) in standard.iter().enumerate() {
                    let c = f.coeff(*s);
                    if !c.is_zero() {
                        v.insert(i * nstd + s_idx, c);
                    }
                }
            }
            images.push(v);
        }
    }
    kernel(&images)
        .into_iter()
        .map(|combo| {
            let mut p = Poly::zero();
            let mut q = Poly::zero();
            for (u, c) in combo {
                let mono = basis[u / 2];
                if u % 2 == 0 {
                    p.add_term(mono, c);
                } else {
                    q.add_term(mono, c);
                }
            }
            [p, q]
        })
        .collect()
}

/// Scale so the lowest term of the first nonzero coordinate has coefficient 1.
fn make_monic(v: Column) -> Column {
    let lead = v
        .iter()
        .find(|p| !p.is_zero())
        .and_then(|p| p.terms().next().map(|(_, c)| c.clone()))
        .expect("nonzero column");
    let inv = lead.recip();
    [v[0].scale(&inv), v[1].scale(&inv)]
}
