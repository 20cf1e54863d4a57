//! Witness construction and classification of integrally closed monomial
//! ideals as ideals of minors of indecomposable closed rank-two modules.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::linalg::{kernel, SparseVec};
use crate::modrank2::{
    certify_indecomposable, decompose_nonexis, minimal_generators, module_closure, Certificate,
    CertificateKind, FamilyParams, ModuleError, ModuleMat, NonexisDecomposition,
};
use crate::qpoly::{q, Monomial, Poly};
use crate::staircase::{newton_closure, Staircase};
use crate::trunclin::{
    colength, ideal_membership_bounded, nakayama_degree_bounded, IdealSpan, TruncError, TruncSpace,
    DEFAULT_DEGREE_BOUND,
};

const REDUCTION_ATTEMPTS: usize = 64;
const GENERAL_CANDIDATES: usize = 32;
const PAIR_CANDIDATES: usize = 400;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("ideal is not integrally closed")]
    NotClosed,
    #[error("order {0} is too small for this construction")]
    OrderTooSmall(u32),
    #[error("I = m(I:m) is required")]
    NotContracted,
    #[error("no generic choice found among the bounded candidates")]
    GenericityExhausted,
    #[error("the reduction already equals the ideal; no socle element")]
    NoSocle,
    #[error("no syzygy pair found up to degree {0}")]
    SearchExhausted(u32),
    #[error("the minors of the syzygy matrix do not generate the ideal")]
    MinorsMismatch,
    #[error("witness verification failed: {0}")]
    VerificationFailed(String),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Trunc(#[from] TruncError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Settings {
    pub seed: u64,
    pub degree_bound: u32,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            seed: 0,
            degree_bound: DEFAULT_DEGREE_BOUND,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionPair {
    pub a: Poly,
    pub b: Poly,
}

/// The resolution map of `(a, b, c)`: rows indexed by the generators, each
/// column a syzygy.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SyzygyMatrix {
    pub rows: [[Poly; 2]; 3],
}

impl SyzygyMatrix {
    /// Signed 2×2 minors `(Δ_a, Δ_b, Δ_c)`, so that `aΔ_a + bΔ_b + cΔ_c = 0`.
    pub fn signed_minors(&self) -> [Poly; 3] {
        let r = &self.rows;
        let det = |i: usize, j: usize| &(&r[i][0] * &r[j][1]) - &(&r[i][1] * &r[j][0]);
        [det(1, 2), -det(0, 2), det(0, 1)]
    }

    /// The 2×3 module whose columns are the rows of this matrix.
    pub fn transpose(&self) -> Result<ModuleMat, ModuleError> {
        ModuleMat::new(self.rows.to_vec())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoordinatePair {
    pub x_gen: Poly,
    pub y_gen: Poly,
}

/// `a, b` random combinations of the generators with `ℓ(R/(a,b)) = e(I)`.
pub fn minimal_reduction(i: &Staircase, settings: Settings) -> Result<ReductionPair, ConstructError> {
    i.require_closed().map_err(|_| ConstructError::NotClosed)?;
    let e = i.multiplicity().map_err(|_| ConstructError::NotClosed)?;
    let gens = i.generators();
    let mut rng = ChaCha8Rng::seed_from_u64(settings.seed);
    let bound = (e as u32 + 1).min(settings.degree_bound);
    for _ in 0..REDUCTION_ATTEMPTS {
        let combo = |rng: &mut ChaCha8Rng| {
            gens.iter()
                .fold(Poly::zero(), |acc, g| acc + g.scale(&q(rng.gen_range(1..=7))))
        };
        let a = combo(&mut rng);
        let b = combo(&mut rng);
        if let Ok(len) = colength(&[a.clone(), b.clone()], bound) {
            if len as u64 == e {
                return Ok(ReductionPair { a, b });
            }
        }
    }
    Err(ConstructError::GenericityExhausted)
}

/// `c ∈ I \ (a, b)` with `m·c ⊆ (a, b)`.
pub fn socle_element(i: &Staircase, r: &ReductionPair, settings: Settings) -> Result<Poly, ConstructError> {
    let pair = [r.a.clone(), r.b.clone()];
    let t = nakayama_degree_bounded(&pair, settings.degree_bound)?;
    if colength(&pair, settings.degree_bound)? as u64 == i.colength() {
        return Err(ConstructError::NoSocle);
    }
    // m^t ⊆ (a, b): candidates are the monomials of I below degree t.
    let span = IdealSpan::new(&pair, t);
    let candidates: Vec<Monomial> = TruncSpace::new(t)
        .basis()
        .filter(|m| i.contains_monomial(*m))
        .collect();
    let images: Vec<SparseVec> = candidates
        .iter()
        .map(|&mono| {
            let mut v = SparseVec::new();
            for (k, shift) in [Monomial::X, Monomial::Y].into_iter().enumerate() {
                for (idx, c) in span.normal_form(&Poly::monomial(mono.mul(shift))) {
                    v.insert(2 * idx + k, c);
                }
            }
            v
        })
        .collect();
    for combo in kernel(&images) {
        let c = Poly::from_terms(combo.iter().map(|(k, coef)| (candidates[*k], coef.clone())));
        if !span.contains(&c) {
            let in_pair = |f: &Poly| ideal_membership_bounded(f, &pair, settings.degree_bound);
            if in_pair(&(&c * &Poly::x()))? && in_pair(&(&c * &Poly::y()))? {
                return Ok(c);
            }
        }
    }
    Err(ConstructError::NoSocle)
}

/// Two syzygies of `(a, b, c)` whose signed minors generate `(a, b, c)`.
pub fn hilbert_burch(a: &Poly, b: &Poly, c: &Poly, settings: Settings) -> Result<SyzygyMatrix, ConstructError> {
    let gens = [a.clone(), b.clone(), c.clone()];
    let top = gens.iter().filter_map(|g| g.degree()).max().unwrap_or(0);
    let max_degree = (top + 1).min(settings.degree_bound);
    // a generator inside the ideal of the other two admits no such pair
    for k in 0..3 {
        let others: Vec<Poly> = (0..3).filter(|&l| l != k).map(|l| gens[l].clone()).collect();
        if ideal_membership_bounded(&gens[k], &others, settings.degree_bound).unwrap_or(false) {
            return Err(ConstructError::MinorsMismatch);
        }
    }
    let target_span = IdealSpan::new(&gens, nakayama_degree_bounded(&gens, settings.degree_bound)?);
    for d in 1..=max_degree {
        let syz = polynomial_syzygies(&gens, d);
        let mut pairs: Vec<(usize, usize)> = (0..syz.len())
            .flat_map(|i| (i + 1..syz.len()).map(move |j| (i, j)))
            .collect();
        // pairs whose last rows have independent linear parts first
        pairs.sort_by_key(|&(i, j)| !linear_parts_independent(&syz[i][2], &syz[j][2]));
        for &(i, j) in pairs.iter().take(PAIR_CANDIDATES) {
            let m = SyzygyMatrix {
                rows: [
                    [syz[i][0].clone(), syz[j][0].clone()],
                    [syz[i][1].clone(), syz[j][1].clone()],
                    [syz[i][2].clone(), syz[j][2].clone()],
                ],
            };
            if minors_generate(&m, &gens, &target_span, settings)? {
                return Ok(m);
            }
        }
    }
    Err(ConstructError::SearchExhausted(max_degree))
}

fn minors_generate(
    m: &SyzygyMatrix,
    gens: &[Poly; 3],
    target_span: &IdealSpan,
    settings: Settings,
) -> Result<bool, ConstructError> {
    let minors = m.signed_minors();
    if minors.iter().any(|p| p.is_zero() || crate::qpoly::is_local_unit(p)) {
        return Ok(false);
    }
    if !minors.iter().all(|p| target_span.contains(p)) {
        return Ok(false);
    }
    let minors: Vec<Poly> = minors.to_vec();
    let Ok(t) = nakayama_degree_bounded(&minors, settings.degree_bound) else {
        return Ok(false);
    };
    let span = IdealSpan::new(&minors, t.max(target_span.space().degree));
    Ok(gens.iter().all(|g| span.contains(g)))
}

/// Basis of `{(p, r, t) : deg ≤ d, a·p + b·r + c·t = 0}`, exact polynomial identity.
fn polynomial_syzygies(gens: &[Poly; 3], d: u32) -> Vec<[Poly; 3]> {
    let basis: Vec<Monomial> = TruncSpace::new(d + 1).basis().collect();
    let images: Vec<SparseVec> = basis
        .iter()
        .flat_map(|&mu| {
            gens.iter().map(move |g| {
                let prod = g.mul_monomial(mu);
                prod.terms()
                    .map(|(m, c)| (crate::trunclin::monomial_index(*m), c.clone()))
                    .collect()
            })
        })
        .collect();
    kernel(&images)
        .into_iter()
        .map(|combo| {
            let mut out = [Poly::zero(), Poly::zero(), Poly::zero()];
            for (u, c) in combo {
                out[u % 3].add_term(basis[u / 3], c);
            }
            out
        })
        .filter(|s| s.iter().all(|p| !crate::qpoly::is_local_unit(p)))
        .collect()
}

fn linear_parts_independent(s: &Poly, t: &Poly) -> bool {
    let det = &(&s.coeff(Monomial::X) * &t.coeff(Monomial::Y))
        - &(&s.coeff(Monomial::Y) * &t.coeff(Monomial::X));
    det != q(0)
}

/// Everything the order-two construction produced, for inspection.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Order2Construction {
    pub reduction: ReductionPair,
    pub socle: Poly,
    pub syzygies: SyzygyMatrix,
    /// A minimal generating set of the closure of the transposed presentation.
    pub module: ModuleMat,
}

/// A closed module M with `I(M) = I` and `I₁(M) = m`.
pub fn construct_order2_module(i: &Staircase, settings: Settings) -> Result<Order2Construction, ConstructError> {
    i.require_closed().map_err(|_| ConstructError::NotClosed)?;
    if i.order() < 2 {
        return Err(ConstructError::OrderTooSmall(i.order()));
    }
    let reduction = minimal_reduction(i, settings)?;
    let socle = socle_element(i, &reduction, settings)?;
    let syzygies = hilbert_burch(&reduction.a, &reduction.b, &socle, settings)?;
    let presented = syzygies.transpose()?;
    let closure = module_closure(&presented, i)?;
    let (module, _) = minimal_generators(&closure.closure_gens, i)?;
    if !module.minors_equal(i) {
        return Err(ConstructError::VerificationFailed("I(M) != I".into()));
    }
    if !module.entries_generate_maximal() {
        return Err(ConstructError::VerificationFailed("I1(M) != m".into()));
    }
    if !module_closure(&module, i)?.closed {
        return Err(ConstructError::VerificationFailed("closure is not closed".into()));
    }
    Ok(Order2Construction {
        reduction,
        socle,
        syzygies,
        module,
    })
}

/// A linear form `ℓ` with `(I : ℓ) = (I : m)`, and a complement spanning m.
pub fn choose_general_pair(i: &Staircase, settings: Settings) -> Result<CoordinatePair, ConstructError> {
    i.require_closed().map_err(|_| ConstructError::NotClosed)?;
    if i.order() < 3 {
        return Err(ConstructError::OrderTooSmall(i.order()));
    }
    let maximal = Staircase::maximal();
    let j = i.colon(&maximal);
    if j.product(&maximal) != *i {
        return Err(ConstructError::NotContracted);
    }
    let gens = i.generators();
    for (cx, cy) in general_candidates() {
        let ell = Poly::linear(q(cx), q(cy));
        let mut with_ell = gens.clone();
        with_ell.push(ell.clone());
        // ℓ(R/(I:ℓ)) = ℓ(R/I) − ℓ(R/(I + (ℓ)))
        let cut = colength(&with_ell, settings.degree_bound)? as u64;
        if i.colength() - cut == j.colength() {
            let x_gen = if cy != 0 { Poly::x() } else { Poly::y() };
            return Ok(CoordinatePair { x_gen, y_gen: ell });
        }
    }
    Err(ConstructError::GenericityExhausted)
}

/// `y, x, x+y, x−y, x+2y, 2x+y, …`: at most 32 forms, as coefficient pairs.
pub fn general_candidates() -> Vec<(i64, i64)> {
    let mut out = vec![(0, 1), (1, 0)];
    let mut k = 1;
    while out.len() < GENERAL_CANDIDATES {
        for c in [(1, k), (1, -k), (k, 1), (-k, 1)] {
            if !out.contains(&c) && out.len() < GENERAL_CANDIDATES {
                out.push(c);
            }
        }
        k += 1;
    }
    out
}

/// `M′ = [J y 0; 0 x J]` for a general pair, with its IMAGE certificate.
pub fn construct_mprime(j: &Staircase, pair: &CoordinatePair) -> Result<(ModuleMat, Certificate), ConstructError> {
    if j.order() < 2 {
        return Err(ConstructError::OrderTooSmall(j.order()));
    }
    let mut cols: Vec<[Poly; 2]> = j.generators().into_iter().map(|g| [g, Poly::zero()]).collect();
    cols.push([pair.y_gen.clone(), pair.x_gen.clone()]);
    cols.extend(j.generators().into_iter().map(|g| [Poly::zero(), g]));
    let m = ModuleMat::new(cols)?;
    let i = j.product(&Staircase::maximal());
    let cert = certify_indecomposable(&m, &i, CertificateKind::Image)?;
    Ok((m, cert))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Exists,
    NotExists,
    /// The input is not integrally closed.
    Rejected,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Branch {
    #[serde(rename = "ORD_GE_3")]
    OrdGe3,
    #[serde(rename = "ORD2_SIMPLE")]
    Ord2Simple,
    #[serde(rename = "ORD2_PRODUCT_OK")]
    Ord2ProductOk,
    #[serde(rename = "ORD1")]
    Ord1,
    Msquare,
    NonexisFamily,
    NotClosed,
}

impl Branch {
    pub fn name(self) -> &'static str {
        match self {
            Branch::OrdGe3 => "ORD_GE_3",
            Branch::Ord2Simple => "ORD2_SIMPLE",
            Branch::Ord2ProductOk => "ORD2_PRODUCT_OK",
            Branch::Ord1 => "ORD1",
            Branch::Msquare => "MSQUARE",
            Branch::NonexisFamily => "NONEXIS_FAMILY",
            Branch::NotClosed => "NOT_CLOSED",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessChecks {
    pub in_mf: bool,
    pub integrally_closed: bool,
    pub minors_equal: bool,
    pub mu: usize,
    pub mu_is_order_plus_two: bool,
    pub certificate: bool,
}

impl WitnessChecks {
    pub fn all_pass(&self) -> bool {
        self.in_mf && self.integrally_closed && self.minors_equal && self.mu_is_order_plus_two && self.certificate
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub module: ModuleMat,
    pub certificate: Certificate,
    pub checks: WitnessChecks,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Obstruction {
    pub params: FamilyParams,
    /// Columns `(x,0), (y^{n−1},0), (0,x^{m−1}), (0,y)`.
    pub canonical_module: ModuleMat,
    pub canonical_closed: bool,
    pub decomposition: NonexisDecomposition,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationResult {
    pub ideal: Staircase,
    pub verdict: Verdict,
    pub branch: Branch,
    pub witness: Option<Witness>,
    pub obstruction: Option<Obstruction>,
    /// The Newton closure, offered when the input is not closed.
    pub repair_hint: Option<Staircase>,
}

/// Run the five witness checks against `I`.
pub fn verify_witness(m: &ModuleMat, i: &Staircase, kind: CertificateKind) -> Result<WitnessChecks, ConstructError> {
    let integrally_closed = module_closure(m, i)?.closed;
    let mu = minimal_generators(m, i).map(|(_, mu)| mu).unwrap_or(0);
    Ok(WitnessChecks {
        in_mf: m.in_mf(),
        integrally_closed,
        minors_equal: m.minors_equal(i),
        mu,
        mu_is_order_plus_two: mu == i.order() as usize + 2,
        certificate: certify_indecomposable(m, i, kind).is_ok(),
    })
}

fn witness(m: ModuleMat, i: &Staircase, kind: CertificateKind) -> Result<Witness, ConstructError> {
    let certificate = certify_indecomposable(&m, i, kind)?;
    let checks = verify_witness(&m, i, kind)?;
    if !checks.all_pass() {
        return Err(ConstructError::VerificationFailed(format!("{checks:?}")));
    }
    Ok(Witness {
        module: m,
        certificate,
        checks,
    })
}

/// Decide whether I is the ideal of minors of an indecomposable closed module,
/// with a verified witness or an explicit obstruction.
pub fn classify(i: &Staircase, settings: Settings) -> Result<ClassificationResult, ConstructError> {
    let mut result = ClassificationResult {
        ideal: i.clone(),
        verdict: Verdict::NotExists,
        branch: Branch::Ord1,
        witness: None,
        obstruction: None,
        repair_hint: None,
    };
    if !i.is_integrally_closed() {
        result.verdict = Verdict::Rejected;
        result.branch = Branch::NotClosed;
        result.repair_hint = newton_closure(i.corners().iter().copied()).ok();
        return Ok(result);
    }
    let order = i.order();
    if order <= 1 {
        return Ok(result);
    }
    let maximal = Staircase::maximal();
    if order >= 3 {
        result.verdict = Verdict::Exists;
        result.branch = Branch::OrdGe3;
        let j = i.colon(&maximal);
        result.witness = Some(if j.product(&maximal) != *i {
            let m = construct_order2_module(i, settings)?.module;
            witness(m, i, CertificateKind::Decom)?
        } else {
            let pair = choose_general_pair(i, settings)?;
            let (m, _) = construct_mprime(&j, &pair)?;
            witness(m, i, CertificateKind::Image)?
        });
        return Ok(result);
    }

    let factors = i.zariski_factor().map_err(|_| ConstructError::NotClosed)?;
    if factors.len() == 1 && factors[0].mult == 1 {
        result.verdict = Verdict::Exists;
        result.branch = Branch::Ord2Simple;
        let m = construct_order2_module(i, settings)?.module;
        result.witness = Some(witness(m, i, CertificateKind::SimpleClash)?);
        return Ok(result);
    }
    let (jf, kf) = if factors.len() == 1 {
        (factors[0].ideal(), factors[0].ideal())
    } else {
        (factors[0].ideal(), factors[1].ideal())
    };
    if jf.sum(&kf) != maximal {
        result.verdict = Verdict::Exists;
        result.branch = Branch::Ord2ProductOk;
        let m = construct_order2_module(i, settings)?.module;
        result.witness = Some(witness(m, i, CertificateKind::FactorClash)?);
        return Ok(result);
    }

    // I = (x^m, xy, y^n)
    let params = FamilyParams {
        m: i.x_extent(),
        n: i.y_extent(),
    };
    debug_assert_eq!(params.ideal(), *i);
    result.branch = if params.m == 2 && params.n == 2 {
        Branch::Msquare
    } else {
        Branch::NonexisFamily
    };
    let canonical = canonical_module(params);
    let canonical_closed = module_closure(&canonical, i)?.closed && canonical.minors_equal(i);
    let decomposition = decompose_nonexis(&canonical, params)?;
    result.obstruction = Some(Obstruction {
        params,
        canonical_module: canonical,
        canonical_closed,
        decomposition,
    });
    Ok(result)
}

/// `(x, 0), (y^{n−1}, 0), (0, x^{m−1}), (0, y)`.
pub fn canonical_module(p: FamilyParams) -> ModuleMat {
    ModuleMat::new(vec![
        [Poly::x(), Poly::zero()],
        [Poly::xy(0, p.n - 1), Poly::zero()],
        [Poly::zero(), Poly::xy(p.m - 1, 0)],
        [Poly::zero(), Poly::y()],
    ])
    .expect("rank two")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qpoly::parse_poly;

    fn st(pairs: &[(u32, u32)]) -> Staircase {
        Staircase::from_exponents(pairs).unwrap()
    }

    #[test]
    fn reductions_have_the_multiplicity_as_colength() {
        for i in [Staircase::maximal(), Staircase::maximal_power(2), Staircase::family(3, 3)] {
            let r = minimal_reduction(&i, Settings::default()).unwrap();
            let len = colength(&[r.a.clone(), r.b.clone()], 64).unwrap() as u64;
            assert_eq!(len, i.multiplicity().unwrap());
            assert!(i.contains_poly(&r.a) && i.contains_poly(&r.b));
        }
    }

    #[test]
    fn socle_of_maximal_square() {
        let r = ReductionPair {
            a: parse_poly("x^2").unwrap(),
            b: parse_poly("y^2").unwrap(),
        };
        let c = socle_element(&Staircase::maximal_power(2), &r, Settings::default()).unwrap();
        assert_eq!(c, Poly::xy(1, 1));
        let m = ReductionPair {
            a: Poly::x(),
            b: Poly::y(),
        };
        assert_eq!(
            socle_element(&Staircase::maximal(), &m, Settings::default()),
            Err(ConstructError::NoSocle)
        );
    }

    #[test]
    fn hilbert_burch_for_maximal_square() {
        let (a, b, c) = (Poly::xy(2, 0), Poly::xy(0, 2), Poly::xy(1, 1));
        let h = hilbert_burch(&a, &b, &c, Settings::default()).unwrap();
        for k in 0..2 {
            let rel = &(&(&a * &h.rows[0][k]) + &(&b * &h.rows[1][k])) + &(&c * &h.rows[2][k]);
            assert!(rel.is_zero());
        }
        let last = vec![h.rows[2][0].clone(), h.rows[2][1].clone()];
        assert!(crate::trunclin::ideal_equals_staircase(&last, &Staircase::maximal()));
    }

    #[test]
    fn degenerate_triple_is_rejected() {
        let r = hilbert_burch(&Poly::x(), &Poly::y(), &Poly::linear(q(1), q(1)), Settings::default());
        assert_eq!(r, Err(ConstructError::MinorsMismatch));
    }

    #[test]
    fn order2_module_for_simple_ideal() {
        let i = st(&[(2, 0), (1, 2), (0, 3)]);
        let c = construct_order2_module(&i, Settings::default()).unwrap();
        assert!(c.module.minors_equal(&i));
        assert!(c.module.entries_generate_maximal());
        let (_, mu) = minimal_generators(&c.module, &i).unwrap();
        assert_eq!(mu, 4);
        assert!(matches!(
            construct_order2_module(&Staircase::maximal(), Settings::default()),
            Err(ConstructError::OrderTooSmall(1))
        ));
    }

    #[test]
    fn general_pair_for_maximal_cube() {
        let p = choose_general_pair(&Staircase::maximal_power(3), Settings::default()).unwrap();
        assert_eq!(p.y_gen, Poly::y());
        assert_eq!(p.x_gen, Poly::x());
        let (m, cert) = construct_mprime(&Staircase::maximal_power(2), &p).unwrap();
        assert_eq!(m.ncols(), 7);
        assert_eq!(cert.kind, CertificateKind::Image);
        assert!(matches!(
            construct_mprime(&Staircase::maximal(), &p),
            Err(ConstructError::OrderTooSmall(1))
        ));
    }

    #[test]
    fn classification_examples() {
        let s = Settings::default();
        let c = classify(&Staircase::maximal_power(2), s).unwrap();
        assert_eq!((c.verdict, c.branch), (Verdict::NotExists, Branch::Msquare));
        let c = classify(&Staircase::family(3, 3), s).unwrap();
        assert_eq!((c.verdict, c.branch), (Verdict::NotExists, Branch::NonexisFamily));
        assert_eq!(c.obstruction.unwrap().params, FamilyParams { m: 3, n: 3 });
        let c = classify(&Staircase::maximal_power(3), s).unwrap();
        assert_eq!((c.verdict, c.branch), (Verdict::Exists, Branch::OrdGe3));
        assert_eq!(c.witness.unwrap().certificate.kind, CertificateKind::Image);
        let c = classify(&st(&[(2, 0), (1, 2), (0, 3)]), s).unwrap();
        assert_eq!((c.verdict, c.branch), (Verdict::Exists, Branch::Ord2Simple));
        let c = classify(&st(&[(2, 0), (1, 2), (0, 5)]), s).unwrap();
        assert_eq!((c.verdict, c.branch), (Verdict::Exists, Branch::Ord2ProductOk));
        let c = classify(&Staircase::maximal(), s).unwrap();
        assert_eq!((c.verdict, c.branch), (Verdict::NotExists, Branch::Ord1));
        let c = classify(&st(&[(2, 0), (0, 2)]), s).unwrap();
        assert_eq!((c.verdict, c.branch), (Verdict::Rejected, Branch::NotClosed));
        assert_eq!(c.repair_hint, Some(Staircase::maximal_power(2)));
    }
}
