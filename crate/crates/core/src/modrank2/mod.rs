//! Rank-two modules `M ⊆ F = R²`, given by a 2×n matrix whose columns generate M.

mod certificate;
mod closure;
mod nonexis;

use std::fmt;

use thiserror::Error;

use crate::qpoly::{is_local_unit, ParseError, Poly};
use crate::staircase::{minimalize, newton_closure, Staircase};
use crate::trunclin::{
    ideal_equals_staircase, ideal_membership_bounded, nakayama_degree_bounded, CertifiedCutoff,
    ModuleSpan, TruncError, DEFAULT_DEGREE_BOUND,
};

pub use certificate::{certify_indecomposable, Certificate, CertificateKind};
pub use closure::{module_closure, ClosureResult};
pub use nonexis::{decompose_nonexis, replay, ColumnOp, FamilyParams, NonexisDecomposition};

pub type Column = [Poly; 2];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModuleError {
    #[error("all 2x2 minors vanish; the columns do not span a rank-two module")]
    RankDeficient,
    #[error("could not certify m^D F inside the module within degree bound {0}")]
    CannotCertify(u32),
    #[error("the relevant ideal is not representable as a monomial closure")]
    NotMonomialClosure,
    #[error("minors do not generate the family ideal (x^{m}, xy, y^{n})")]
    NotInFamily { m: u32, n: u32 },
    #[error("normalization failed at step: {0}")]
    NormalizationFailed(String),
    #[error("no certificate available: {0}")]
    CertificateUnavailable(String),
    #[error(transparent)]
    Trunc(#[from] TruncError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Generators of a rank-two module, one column per generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub struct ModuleMat {
    cols: Vec<Column>,
}

impl ModuleMat {
    pub fn new(cols: Vec<Column>) -> Result<Self, ModuleError> {
        let m = ModuleMat { cols };
        if m.minors2_raw().is_empty() {
            return Err(ModuleError::RankDeficient);
        }
        Ok(m)
    }

    pub fn from_rows(top: Vec<Poly>, bottom: Vec<Poly>) -> Result<Self, ModuleError> {
        assert_eq!(top.len(), bottom.len(), "rows must have equal length");
        ModuleMat::new(top.into_iter().zip(bottom).map(|(p, q)| [p, q]).collect())
    }

    /// `I ⊕ J`: columns `(g, 0)` for g ∈ I and `(0, h)` for h ∈ J.
    pub fn direct_sum(first: &Staircase, second: &Staircase) -> Self {
        let mut cols: Vec<Column> = first
            .generators()
            .into_iter()
            .map(|g| [g, Poly::zero()])
            .collect();
        cols.extend(second.generators().into_iter().map(|h| [Poly::zero(), h]));
        ModuleMat::new(cols).expect("a sum of two m-primary ideals has rank two")
    }

    /// `m F = m ⊕ m`.
    pub fn maximal_free() -> Self {
        ModuleMat::direct_sum(&Staircase::maximal(), &Staircase::maximal())
    }

    pub fn cols(&self) -> &[Column] {
        &self.cols
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn row(&self, k: usize) -> Vec<Poly> {
        self.cols.iter().map(|c| c[k].clone()).collect()
    }

    fn minors2_raw(&self) -> Vec<Poly> {
        let mut out: Vec<Poly> = Vec::new();
        for i in 0..self.cols.len() {
            for j in i + 1..self.cols.len() {
                let (a, b) = (&self.cols[i], &self.cols[j]);
                let d = &(&a[0] * &b[1]) - &(&a[1] * &b[0]);
                if !d.is_zero() && !out.contains(&d) {
                    out.push(d);
                }
            }
        }
        out
    }

    /// Nonzero 2×2 minors (generators of `I₂(M) = I(M)`), duplicates merged.
    pub fn minors2(&self) -> Vec<Poly> {
        self.minors2_raw()
    }

    /// Nonzero entries (generators of `I₁(M)`), duplicates merged.
    pub fn entries_ideal(&self) -> Vec<Poly> {
        let mut out: Vec<Poly> = Vec::new();
        for c in &self.cols {
            for e in c {
                if !e.is_zero() && !out.contains(e) {
                    out.push(e.clone());
                }
            }
        }
        out
    }

    /// `I(M) = target` in the local ring.
    pub fn minors_equal(&self, target: &Staircase) -> bool {
        ideal_equals_staircase(&self.minors2(), target)
    }

    /// `I₁(M) = m`.
    pub fn entries_generate_maximal(&self) -> bool {
        ideal_equals_staircase(&self.entries_ideal(), &Staircase::maximal())
    }

    /// `M ⊆ mF`: no entry is a unit. A unit entry splits off a free summand.
    pub fn in_mf(&self) -> bool {
        self.cols.iter().flatten().all(|e| !is_local_unit(e))
    }

    /// The closure of `I(M)` when the minors generate a monomial ideal.
    pub fn minors_closure(&self) -> Result<Staircase, ModuleError> {
        let minors = self.minors2();
        let support = minimalize(
            minors
                .iter()
                .flat_map(|p| p.terms().map(|(m, _)| *m).collect::<Vec<_>>()),
        )
        .map_err(|_| ModuleError::NotMonomialClosure)?;
        if !ideal_equals_staircase(&minors, &support) {
            return Err(ModuleError::NotMonomialClosure);
        }
        newton_closure(support.corners().iter().copied()).map_err(|_| ModuleError::NotMonomialClosure)
    }

    /// `P·M` for a 2×2 polynomial matrix.
    pub fn apply_rows(&self, p: &[[Poly; 2]; 2]) -> ModuleMat {
        ModuleMat {
            cols: self.cols.iter().map(|c| mat_vec(p, c)).collect(),
        }
    }

    /// Substitute coordinates in every entry.
    pub fn apply_change(&self, u: &crate::qpoly::GL2Change) -> ModuleMat {
        ModuleMat {
            cols: self
                .cols
                .iter()
                .map(|c| [crate::qpoly::apply_change(&c[0], u), crate::qpoly::apply_change(&c[1], u)])
                .collect(),
        }
    }

    pub(crate) fn from_cols_unchecked(cols: Vec<Column>) -> Self {
        ModuleMat { cols }
    }
}

pub(crate) fn mat_vec(p: &[[Poly; 2]; 2], c: &Column) -> Column {
    [
        &(&p[0][0] * &c[0]) + &(&p[0][1] * &c[1]),
        &(&p[1][0] * &c[0]) + &(&p[1][1] * &c[1]),
    ]
}

impl fmt::Display for ModuleMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_columns(&self.cols))
    }
}

/// `[[p11, p12, ...],[p21, p22, ...]]`.
pub fn render_columns(cols: &[Column]) -> String {
    let row = |k: usize| {
        cols.iter()
            .map(|c| c[k].to_string())
            .collect::<Vec<_>>()
            .join(", ")
    };
    format!("[[{}],[{}]]", row(0), row(1))
}

/// Check `Ī·F ⊆ M` and return a cutoff D with `m^D F ⊆ m·M`.
///
/// With `s = power_containment_degree(m·Ī)` it suffices that every `(g, 0)`
/// and `(0, g)` lies in `M + m^s F ⊆ M + m·ĪF`; Nakayama then gives
/// `ĪF ⊆ M`. The returned `D = power_containment_degree(Ī) + 1` satisfies
/// `m^D F ⊆ m·ĪF ⊆ m·M`.
pub fn scaled_free_check(m: &ModuleMat, ibar: &Staircase) -> Result<CertifiedCutoff, ModuleError> {
    scaled_free_check_bounded(m, ibar, DEFAULT_DEGREE_BOUND)
}

pub fn scaled_free_check_bounded(
    m: &ModuleMat,
    ibar: &Staircase,
    bound: u32,
) -> Result<CertifiedCutoff, ModuleError> {
    let s = ibar.product(&Staircase::maximal()).power_containment_degree();
    if s > bound {
        return Err(ModuleError::CannotCertify(bound));
    }
    let span = ModuleSpan::new(&m.cols, s);
    for g in ibar.generators() {
        if !span.contains(&[g.clone(), Poly::zero()]) || !span.contains(&[Poly::zero(), g]) {
            return Err(ModuleError::CannotCertify(bound));
        }
    }
    Ok(CertifiedCutoff::new(
        ibar.power_containment_degree() + 1,
        m.cols.clone(),
    ))
}

/// Pick columns forming a basis of `M/mM`; `μ(M)` is their number.
pub fn minimal_generators(m: &ModuleMat, ibar: &Staircase) -> Result<(ModuleMat, usize), ModuleError> {
    let cutoff = scaled_free_check(m, ibar)?;
    let chosen = minimal_subset(m.cols(), cutoff.degree());
    let mu = chosen.len();
    Ok((ModuleMat::new(chosen)?, mu))
}

/// Greedy basis of `M/mM`, computed in `F/m^D F` where `m^D F ⊆ mM`.
pub(crate) fn minimal_subset(cols: &[Column], degree: u32) -> Vec<Column> {
    let m_cols: Vec<Column> = cols
        .iter()
        .flat_map(|c| {
            [
                [&c[0] * &Poly::x(), &c[1] * &Poly::x()],
                [&c[0] * &Poly::y(), &c[1] * &Poly::y()],
            ]
        })
        .collect();
    let mut span = ModuleSpan::new(&m_cols, degree);
    let mut chosen = Vec::new();
    for c in cols {
        if span.insert_vector(c) {
            chosen.push(c.clone());
        }
    }
    chosen
}

/// Is `f` integral over the ideal generated by `entries`?
///
/// Decided when that ideal is monomial (Newton closure) or of order one
/// (m-primary ideals of order one are integrally closed).
pub fn integral_over_ideal(f: &Poly, entries: &[Poly], bound: u32) -> Result<bool, ModuleError> {
    let support = minimalize(
        entries
            .iter()
            .flat_map(|p| p.terms().map(|(m, _)| *m).collect::<Vec<_>>()),
    );
    if let Ok(s) = &support {
        if ideal_equals_staircase(entries, s) {
            let closure =
                newton_closure(s.corners().iter().copied()).expect("support is m-primary");
            return Ok(closure.contains_poly(f));
        }
    }
    let order_one = entries.iter().any(|e| e.order() == Some(1));
    if order_one && nakayama_degree_bounded(entries, bound).is_ok() {
        return Ok(ideal_membership_bounded(f, entries, bound)?);
    }
    Err(ModuleError::NotMonomialClosure)
}

/// Necessary condition for `v` to be integral over M: each coordinate is
/// integral over the ideal of the corresponding row.
pub fn row_integrality_filter(v: &Column, m: &ModuleMat) -> Result<bool, ModuleError> {
    for k in 0..2 {
        let row: Vec<Poly> = m.row(k).into_iter().filter(|p| !p.is_zero()).collect();
        if !integral_over_ideal(&v[k], &row, DEFAULT_DEGREE_BOUND)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A random presentation of the same module: rows mixed by a constant
/// invertible matrix, columns by `L·U·Π` with L unit lower triangular, U upper
/// triangular with nonzero constant diagonal, off-diagonal entries in
/// `ℚ + m`, and Π a permutation.
pub fn scramble(m: &ModuleMat, seed: u64) -> ModuleMat {
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let small = |rng: &mut rand_chacha::ChaCha8Rng| Poly::constant(crate::qpoly::q(rng.gen_range(-3..=3)));
    let p = loop {
        let p = [[small(&mut rng), small(&mut rng)], [small(&mut rng), small(&mut rng)]];
        let det = &(&p[0][0] * &p[1][1]) - &(&p[0][1] * &p[1][0]);
        if !det.is_zero() {
            break p;
        }
    };
    let mut cols: Vec<Column> = m.cols().iter().map(|c| mat_vec(&p, c)).collect();
    let k = cols.len();
    let entry = |rng: &mut rand_chacha::ChaCha8Rng| {
        let mut e = small(rng);
        if rng.gen_bool(0.5) {
            let v = if rng.gen_bool(0.5) { Poly::x() } else { Poly::y() };
            e = e + &v * &small(rng);
        }
        e
    };
    // columns ↦ columns · L, then · U
    for j in 0..k {
        for i in j + 1..k {
            let f = entry(&mut rng);
            add_scaled(&mut cols, j, i, &f);
        }
    }
    for j in (0..k).rev() {
        let d = loop {
            let d = rng.gen_range(-3..=3);
            if d != 0 {
                break d;
            }
        };
        let d = Poly::constant(crate::qpoly::q(d));
        cols[j] = [&cols[j][0] * &d, &cols[j][1] * &d];
        for i in 0..j {
            let f = entry(&mut rng);
            add_scaled(&mut cols, j, i, &f);
        }
    }
    cols.shuffle(&mut rng);
    ModuleMat::new(cols).expect("isomorphic presentation keeps rank two")
}

/// `col[target] += f·col[source]`.
fn add_scaled(cols: &mut [Column], target: usize, source: usize, f: &Poly) {
    let src = cols[source].clone();
    for k in 0..2 {
        cols[target][k] = &cols[target][k] + &(f * &src[k]);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qpoly::parse_poly;

    pub(crate) fn col(p: &str, q: &str) -> Column {
        [parse_poly(p).unwrap(), parse_poly(q).unwrap()]
    }

    pub(crate) fn module(cols: &[(&str, &str)]) -> ModuleMat {
        ModuleMat::new(cols.iter().map(|(p, q)| col(p, q)).collect()).unwrap()
    }

    #[test]
    fn minors_of_small_modules() {
        let mf = ModuleMat::maximal_free();
        assert!(ideal_equals_staircase(&mf.minors2(), &Staircase::maximal_power(2)));
        let m = module(&[("x", "0"), ("y^2", "0"), ("0", "x^2"), ("0", "y")]);
        let minors = m.minors2();
        assert_eq!(minors.len(), 4);
        assert!(m.minors_equal(&Staircase::family(3, 3)));
        let single = module(&[("x", "0"), ("0", "y")]);
        assert_eq!(single.minors2(), vec![Poly::xy(1, 1)]);
        assert_eq!(
            ModuleMat::new(vec![col("x", "0"), col("y", "0")]),
            Err(ModuleError::RankDeficient)
        );
    }

    #[test]
    fn minors_equal_cases() {
        assert!(ModuleMat::maximal_free().minors_equal(&Staircase::maximal_power(2)));
        let m = module(&[("x", "0"), ("y^2", "0"), ("0", "x^2"), ("0", "y")]);
        assert!(!m.minors_equal(&Staircase::maximal_power(3)));
    }

    #[test]
    fn free_summand_detection() {
        assert!(ModuleMat::maximal_free().in_mf());
        assert!(!module(&[("1", "0"), ("0", "x")]).in_mf());
    }

    #[test]
    fn scaled_free_cutoffs() {
        let c = scaled_free_check(&ModuleMat::maximal_free(), &Staircase::maximal_power(2)).unwrap();
        assert_eq!(c.degree(), 3);
        let m = module(&[("x^2", "0"), ("y^2", "0"), ("0", "x"), ("0", "y")]);
        assert!(scaled_free_check(&m, &Staircase::maximal_power(3)).is_ok());
        let thin = module(&[("x", "0"), ("0", "y")]);
        assert!(matches!(
            scaled_free_check(&thin, &Staircase::maximal_power(2)),
            Err(ModuleError::CannotCertify(_))
        ));
    }

    #[test]
    fn minimal_generator_counts() {
        let (_, mu) = minimal_generators(&ModuleMat::maximal_free(), &Staircase::maximal_power(2)).unwrap();
        assert_eq!(mu, 4);
        // M' for I = m^3: [m^2 y 0; 0 x m^2]
        let mp = module(&[
            ("x^2", "0"),
            ("x*y", "0"),
            ("y^2", "0"),
            ("y", "x"),
            ("0", "x^2"),
            ("0", "x*y"),
            ("0", "y^2"),
        ]);
        let (gens, mu) = minimal_generators(&mp, &Staircase::maximal_power(3)).unwrap();
        assert_eq!(mu, 5);
        // (0,x^2) ≡ -(xy,0) and (0,xy) ≡ -(y^2,0) modulo mM
        assert!(!gens.cols().contains(&col("0", "x^2")));
        assert!(!gens.cols().contains(&col("0", "x*y")));
    }

    #[test]
    fn row_filter() {
        let m = module(&[("x^2", "0"), ("y^2", "0"), ("0", "x"), ("0", "y")]);
        assert_eq!(row_integrality_filter(&col("x*y", "0"), &m), Ok(true));
        assert_eq!(
            row_integrality_filter(&col("1", "0"), &ModuleMat::maximal_free()),
            Ok(false)
        );
        for c in m.cols() {
            assert_eq!(row_integrality_filter(c, &m), Ok(true));
        }
        // order-one row ideal that is not monomial
        let g = module(&[("x^2", "0"), ("x + y", "x"), ("y^3", "0"), ("0", "y^2")]);
        assert_eq!(row_integrality_filter(&col("x + y + x^2", "x"), &g), Ok(true));
        assert_eq!(row_integrality_filter(&col("x", "0"), &g), Ok(false));
    }

    #[test]
    fn renders_matrix_grammar() {
        let m = module(&[("x", "0"), ("y^2", "0"), ("0", "x^2"), ("0", "y")]);
        assert_eq!(m.to_string(), "[[x, y^2, 0, 0],[0, 0, x^2, y]]");
    }
}
