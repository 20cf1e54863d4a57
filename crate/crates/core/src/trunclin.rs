//! Linear algebra on truncated quotients `R/(J + m^D)` and `F/(N + m^D F)`.
//!
//! Every truncation used for a yes/no answer carries a certificate that the
//! dropped part `m^D` (or `m^D F`) already lies inside the ideal (module), so
//! the finite-dimensional answer is the exact answer in the local ring.

use thiserror::Error;

use crate::linalg::{Echelon, SparseVec};
use crate::qpoly::{Monomial, Poly};
use crate::staircase::Staircase;

/// Default degree at which cutoff searches give up.
pub const DEFAULT_DEGREE_BOUND: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TruncError {
    #[error("no Nakayama cutoff found up to degree {0}; the ideal is not m-primary")]
    Diverged(u32),
    #[error("module membership requested without a certified cutoff for these columns")]
    UncertifiedCutoff,
}

/// Position of a monomial in the ascending graded basis. Independent of the
/// truncation degree, so vectors from different truncations share coordinates.
pub fn monomial_index(m: Monomial) -> usize {
    let d = m.degree() as usize;
    d * (d + 1) / 2 + m.b as usize
}

pub fn index_monomial(idx: usize) -> Monomial {
    let mut d = 0usize;
    while (d + 1) * (d + 2) / 2 <= idx {
        d += 1;
    }
    let b = idx - d * (d + 1) / 2;
    Monomial::new((d - b) as u32, b as u32)
}

/// The monomials of degree `< degree`, a basis of `R/m^degree`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TruncSpace {
    pub degree: u32,
}

impl TruncSpace {
    pub fn new(degree: u32) -> Self {
        TruncSpace { degree }
    }

    pub fn dim(&self) -> usize {
        let d = self.degree as usize;
        d * (d + 1) / 2
    }

    pub fn basis(&self) -> impl Iterator<Item = Monomial> {
        Monomial::below_degree(self.degree)
    }

    pub fn vector(&self, p: &Poly) -> SparseVec {
        p.terms()
            .filter(|(m, _)| m.degree() < self.degree)
            .map(|(m, c)| (monomial_index(*m), c.clone()))
            .collect()
    }

    pub fn poly(&self, v: &SparseVec) -> Poly {
        Poly::from_terms(v.iter().map(|(k, c)| (index_monomial(*k), c.clone())))
    }

    /// Coordinates of `(p, q) ∈ F = R²`, interleaved so degree dominates.
    pub fn pair_vector(&self, v: &[Poly; 2]) -> SparseVec {
        let mut out = SparseVec::new();
        for (comp, p) in v.iter().enumerate() {
            for (k, c) in self.vector(p) {
                out.insert(2 * k + comp, c);
            }
        }
        out
    }

    pub fn pair(&self, v: &SparseVec) -> [Poly; 2] {
        let mut out = [Poly::zero(), Poly::zero()];
        for (k, c) in v {
            out[k % 2].add_term(index_monomial(k / 2), c.clone());
        }
        out
    }
}

/// The span of `(gens) + m^D` inside `R/m^D`, with the multiplier of every
/// row recorded so memberships come with explicit combinations.
#[derive(Clone, Debug)]
pub struct IdealSpan {
    space: TruncSpace,
    echelon: Echelon,
    labels: Vec<(usize, Monomial)>,
}

impl IdealSpan {
    pub fn new(gens: &[Poly], degree: u32) -> Self {
        Self::build(gens, degree, false)
    }

    pub fn tracking(gens: &[Poly], degree: u32) -> Self {
        Self::build(gens, degree, true)
    }

    fn build(gens: &[Poly], degree: u32, track: bool) -> Self {
        let space = TruncSpace::new(degree);
        let mut echelon = if track { Echelon::tracking() } else { Echelon::new() };
        let mut labels = Vec::new();
        for mu in space.basis() {
            for (i, g) in gens.iter().enumerate() {
                let v = space.vector(&g.mul_monomial(mu));
                if v.is_empty() {
                    continue;
                }
                labels.push((i, mu));
                echelon.insert(v);
            }
        }
        IdealSpan {
            space,
            echelon,
            labels,
        }
    }

    pub fn space(&self) -> TruncSpace {
        self.space
    }

    pub fn rank(&self) -> usize {
        self.echelon.rank()
    }

    pub fn contains(&self, f: &Poly) -> bool {
        self.echelon.contains(&self.space.vector(f))
    }

    pub fn normal_form(&self, f: &Poly) -> SparseVec {
        self.echelon.normal_form(&self.space.vector(f))
    }

    /// Multipliers `h_i` with `Σ h_i·g_i ≡ f (mod m^D)`.
    pub fn combination(&self, f: &Poly) -> Option<Vec<Poly>> {
        let combo = self.echelon.solve(&self.space.vector(f))?;
        let n = self.labels.iter().map(|l| l.0 + 1).max().unwrap_or(0);
        let mut out = vec![Poly::zero(); n];
        for (label, c) in combo {
            let (i, mu) = self.labels[label];
            out[i].add_term(mu, c);
        }
        Some(out)
    }
}

/// `dim_ℚ R/((gens) + m^D)`.
pub fn quotient_dim(gens: &[Poly], degree: u32) -> usize {
    TruncSpace::new(degree).dim() - IdealSpan::new(gens, degree).rank()
}

/// Least D with `m^D ⊆ (gens) + m^{D+1}`, hence `m^D ⊆ (gens)` by Nakayama.
pub fn nakayama_degree(gens: &[Poly]) -> Result<u32, TruncError> {
    nakayama_degree_bounded(gens, DEFAULT_DEGREE_BOUND)
}

pub fn nakayama_degree_bounded(gens: &[Poly], bound: u32) -> Result<u32, TruncError> {
    // m^D ⊆ J + m^{D+1} exactly when J + m^D = J + m^{D+1}, i.e. when the two
    // quotients have the same dimension.
    let mut prev = quotient_dim(gens, 0);
    for d in 0..=bound {
        let next = quotient_dim(gens, d + 1);
        if next == prev {
            return Ok(d);
        }
        prev = next;
    }
    Err(TruncError::Diverged(bound))
}

/// Colength of an m-primary polynomial ideal.
pub fn colength(gens: &[Poly], bound: u32) -> Result<usize, TruncError> {
    let d = nakayama_degree_bounded(gens, bound)?;
    Ok(quotient_dim(gens, d))
}

/// `f ∈ (gens)` in the local ring.
pub fn ideal_membership(f: &Poly, gens: &[Poly]) -> Result<bool, TruncError> {
    ideal_membership_bounded(f, gens, DEFAULT_DEGREE_BOUND)
}

pub fn ideal_membership_bounded(f: &Poly, gens: &[Poly], bound: u32) -> Result<bool, TruncError> {
    let d = nakayama_degree_bounded(gens, bound)?;
    Ok(IdealSpan::new(gens, d).contains(f))
}

/// `(gens) = target` in the local ring.
///
/// `(gens) ⊆ target` is checked term by term. For the reverse inclusion it is
/// enough that `target ⊆ (gens) + m^s` with `m^s ⊆ m·target`, since then
/// `target ⊆ (gens) + m·target` and Nakayama closes the gap.
pub fn ideal_equals_staircase(gens: &[Poly], target: &Staircase) -> bool {
    if !gens.iter().all(|g| target.contains_poly(g)) {
        return false;
    }
    let s = target.product(&Staircase::maximal()).power_containment_degree();
    let span = IdealSpan::new(gens, s);
    target.generators().iter().all(|g| span.contains(g))
}

/// A degree D for which `m^D F` has been verified to lie inside the module
/// generated by `columns`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifiedCutoff {
    degree: u32,
    columns: Vec<[Poly; 2]>,
}

impl CertifiedCutoff {
    pub(crate) fn new(degree: u32, columns: Vec<[Poly; 2]>) -> Self {
        CertifiedCutoff { degree, columns }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// The certificate transfers to any generating set containing the
    /// certified columns.
    pub fn covers(&self, cols: &[[Poly; 2]]) -> bool {
        self.columns.iter().all(|c| cols.contains(c))
    }
}

/// The span of `N + m^D F` inside `F/m^D F`, for `N` generated by columns.
#[derive(Clone, Debug)]
pub struct ModuleSpan {
    space: TruncSpace,
    echelon: Echelon,
    labels: Vec<(usize, Monomial)>,
}

impl ModuleSpan {
    pub fn new(cols: &[[Poly; 2]], degree: u32) -> Self {
        Self::build(cols, degree, false)
    }

    pub fn tracking(cols: &[[Poly; 2]], degree: u32) -> Self {
        Self::build(cols, degree, true)
    }

    fn build(cols: &[[Poly; 2]], degree: u32, track: bool) -> Self {
        let space = TruncSpace::new(degree);
        let mut echelon = if track { Echelon::tracking() } else { Echelon::new() };
        let mut labels = Vec::new();
        for mu in space.basis() {
            for (i, c) in cols.iter().enumerate() {
                let v = space.pair_vector(&[c[0].mul_monomial(mu), c[1].mul_monomial(mu)]);
                if v.is_empty() {
                    continue;
                }
                labels.push((i, mu));
                echelon.insert(v);
            }
        }
        ModuleSpan {
            space,
            echelon,
            labels,
        }
    }

    pub fn space(&self) -> TruncSpace {
        self.space
    }

    pub fn rank(&self) -> usize {
        self.echelon.rank()
    }

    pub fn contains(&self, v: &[Poly; 2]) -> bool {
        self.echelon.contains(&self.space.pair_vector(v))
    }

    /// Insert one more vector (not multiplied by monomials).
    pub fn insert_vector(&mut self, v: &[Poly; 2]) -> bool {
        self.labels.push((usize::MAX, Monomial::ONE));
        self.echelon.insert(self.space.pair_vector(v))
    }

    pub fn normal_form(&self, v: &[Poly; 2]) -> [Poly; 2] {
        self.space
            .pair(&self.echelon.normal_form(&self.space.pair_vector(v)))
    }

    /// Multipliers `h_i` with `Σ h_i·col_i ≡ v (mod m^D F)`.
    pub fn combination(&self, v: &[Poly; 2]) -> Option<Vec<Poly>> {
        let combo = self.echelon.solve(&self.space.pair_vector(v))?;
        let n = self
            .labels
            .iter()
            .filter(|l| l.0 != usize::MAX)
            .map(|l| l.0 + 1)
            .max()
            .unwrap_or(0);
        let mut out = vec![Poly::zero(); n];
        for (label, c) in combo {
            let (i, mu) = self.labels[label];
            if i == usize::MAX {
                return None;
            }
            out[i].add_term(mu, c);
        }
        Some(out)
    }
}

/// `v ∈ span(cols)`, decided in `F/m^D F` for a certified D.
pub fn module_membership(
    v: &[Poly; 2],
    cols: &[[Poly; 2]],
    cutoff: &CertifiedCutoff,
) -> Result<bool, TruncError> {
    if !cutoff.covers(cols) {
        return Err(TruncError::UncertifiedCutoff);
    }
    Ok(ModuleSpan::new(cols, cutoff.degree).contains(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qpoly::parse_poly;

    fn polys(s: &[&str]) -> Vec<Poly> {
        s.iter().map(|t| parse_poly(t).unwrap()).collect()
    }

    #[test]
    fn index_round_trip() {
        for m in Monomial::below_degree(9) {
            assert_eq!(index_monomial(monomial_index(m)), m);
        }
        assert_eq!(TruncSpace::new(4).dim(), 10);
    }

    #[test]
    fn quotient_dims() {
        assert_eq!(quotient_dim(&polys(&["x", "y"]), 3), 1);
        assert_eq!(quotient_dim(&polys(&["x^2 - y^3"]), 2), 3);
        assert_eq!(quotient_dim(&polys(&["x^3", "x*y", "y^3"]), 6), 5);
    }

    #[test]
    fn nakayama_cutoffs() {
        assert_eq!(nakayama_degree(&polys(&["x", "y"])), Ok(1));
        let g = polys(&["x^2 + y^5", "y^2"]);
        let d = nakayama_degree(&g).unwrap();
        // every degree-d monomial must be an explicit combination modulo m^{d+3}
        let span = IdealSpan::new(&g, d + 3);
        for m in Monomial::of_degree(d) {
            assert!(span.contains(&Poly::monomial(m)));
        }
        assert_eq!(d, 3);
        assert_eq!(
            nakayama_degree_bounded(&polys(&["x*y"]), 12),
            Err(TruncError::Diverged(12))
        );
    }

    #[test]
    fn memberships() {
        assert_eq!(ideal_membership(&parse_poly("x^2").unwrap(), &polys(&["x^2 + y^3", "y^3"])), Ok(true));
        assert_eq!(ideal_membership(&Poly::x(), &polys(&["x^2", "x*y", "y^2"])), Ok(false));
        assert_eq!(ideal_membership(&Poly::xy(2, 2), &polys(&["x^3", "x*y", "y^3"])), Ok(true));
    }

    #[test]
    fn combinations_resubstitute() {
        let g = polys(&["x^3 + y^4", "x*y", "y^3"]);
        let span = IdealSpan::tracking(&g, 5);
        let target = Poly::xy(3, 0);
        let h = span.combination(&target).unwrap();
        let mut acc = Poly::zero();
        for (hi, gi) in h.iter().zip(&g) {
            acc = acc + hi * gi;
        }
        assert_eq!(acc.truncate(5), target);
    }

    #[test]
    fn equality_with_staircase() {
        let m2 = Staircase::maximal_power(2);
        assert!(ideal_equals_staircase(&polys(&["x^2", "x*y", "y^2"]), &m2));
        let fam = Staircase::family(3, 3);
        assert!(!ideal_equals_staircase(&polys(&["x^3", "y^3"]), &fam));
        assert!(ideal_equals_staircase(&polys(&["x^3 + y^4", "x*y", "y^3"]), &fam));
    }

    #[test]
    fn module_membership_requires_certificate() {
        let mf: Vec<[Poly; 2]> = vec![
            [Poly::x(), Poly::zero()],
            [Poly::y(), Poly::zero()],
            [Poly::zero(), Poly::x()],
            [Poly::zero(), Poly::y()],
        ];
        let cut = CertifiedCutoff::new(2, mf.clone());
        assert_eq!(module_membership(&[Poly::x(), Poly::zero()], &mf, &cut), Ok(true));
        assert_eq!(module_membership(&[Poly::one(), Poly::zero()], &mf, &cut), Ok(false));
        let other = vec![[Poly::x(), Poly::zero()]];
        assert_eq!(
            module_membership(&[Poly::x(), Poly::zero()], &other, &cut),
            Err(TruncError::UncertifiedCutoff)
        );
    }
}
