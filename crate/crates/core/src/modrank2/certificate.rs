//! Indecomposability certificates. Each one lists the predicates that were
//! checked while building it; nothing is asserted without a check.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::qpoly::{Monomial, Poly};
use crate::staircase::{minimalize, Staircase};

use super::closure::module_closure;
use super::{scaled_free_check, Column, ModuleError, ModuleMat};
use crate::trunclin::module_membership;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CertificateKind {
    /// `I = m²`, `M = mF`: decomposable.
    Msquare,
    /// `I₁(M) = m`, `ord(I) ≥ 3`, `I ≠ m(I:m)`.
    Decom,
    /// `M = [J ℓ_y 0; 0 ℓ_x J]` with `ord(J) ≥ 2`.
    Image,
    /// `I₁(M) = m`, `ord(I) = 2`, I simple.
    SimpleClash,
    /// `I₁(M) = m`, `I = JK` with `J + K ≠ m`.
    FactorClash,
    /// An explicit splitting `M ≅ (x, y^{n−1}) ⊕ (x^{m−1}, y)`.
    NonexisDecomp,
}

impl CertificateKind {
    pub fn name(self) -> &'static str {
        match self {
            CertificateKind::Msquare => "MSQUARE",
            CertificateKind::Decom => "DECOM",
            CertificateKind::Image => "IMAGE",
            CertificateKind::SimpleClash => "SIMPLE_CLASH",
            CertificateKind::FactorClash => "FACTOR_CLASH",
            CertificateKind::NonexisDecomp => "NONEXIS_DECOMP",
        }
    }

    pub fn proves_indecomposable(self) -> bool {
        !matches!(self, CertificateKind::Msquare | CertificateKind::NonexisDecomp)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub kind: CertificateKind,
    /// Checked predicates, in the order they were checked.
    pub predicates: Vec<String>,
    pub details: BTreeMap<String, String>,
}

impl Certificate {
    pub(crate) fn new(kind: CertificateKind) -> Self {
        Certificate {
            kind,
            predicates: Vec::new(),
            details: BTreeMap::new(),
        }
    }

    fn require(&mut self, holds: bool, name: &str) -> Result<(), ModuleError> {
        if !holds {
            return Err(ModuleError::CertificateUnavailable(format!(
                "{} fails: {}",
                self.kind.name(),
                name
            )));
        }
        self.predicates.push(name.to_string());
        Ok(())
    }
}

/// Check the hypotheses of the indecomposability argument `kind` for a module
/// M with `I(M) = I`, and return the record of checked predicates.
pub fn certify_indecomposable(
    m: &ModuleMat,
    i: &Staircase,
    kind: CertificateKind,
) -> Result<Certificate, ModuleError> {
    let mut cert = Certificate::new(kind);
    if !kind.proves_indecomposable() {
        return Err(ModuleError::CertificateUnavailable(format!(
            "{} does not argue indecomposability",
            kind.name()
        )));
    }
    cert.require(i.is_integrally_closed(), "I integrally closed")?;
    cert.require(m.in_mf(), "M in mF")?;
    cert.require(m.minors_equal(i), "I(M) = I")?;
    cert.require(module_closure(m, i)?.closed, "M integrally closed")?;
    let maximal = Staircase::maximal();
    cert.details.insert("I".into(), i.to_string());
    match kind {
        CertificateKind::Decom => {
            cert.require(m.entries_generate_maximal(), "I1(M) = m")?;
            cert.require(i.order() >= 3, "ord(I) >= 3")?;
            let j = i.colon(&maximal);
            cert.require(j.product(&maximal) != *i, "I != m(I:m)")?;
            cert.details.insert("I:m".into(), j.to_string());
        }
        CertificateKind::Image => {
            let shape = match image_shape(m) {
                Some(shape) => Some(shape),
                None => image_span(m, i)?,
            };
            cert.require(shape.is_some(), "M = [J ly 0; 0 lx J]")?;
            let (j, ly, lx) = shape.expect("checked");
            cert.require(j.order() >= 2, "ord(J) >= 2")?;
            cert.require(linear_pair_spans(&ly, &lx), "(ly, lx) = m")?;
            cert.details.insert("J".into(), j.to_string());
            cert.details.insert("ly".into(), ly.to_string());
            cert.details.insert("lx".into(), lx.to_string());
        }
        CertificateKind::SimpleClash => {
            cert.require(m.entries_generate_maximal(), "I1(M) = m")?;
            cert.require(i.order() == 2, "ord(I) = 2")?;
            cert.require(i.is_simple().unwrap_or(false), "I simple")?;
        }
        CertificateKind::FactorClash => {
            cert.require(m.entries_generate_maximal(), "I1(M) = m")?;
            cert.require(i.order() == 2, "ord(I) = 2")?;
            let factors = i.zariski_factor().unwrap_or_default();
            let total: u32 = factors.iter().map(|f| f.mult).sum();
            cert.require(total == 2, "I = JK with J, K simple")?;
            let (j, k) = if factors.len() == 1 {
                (factors[0].ideal(), factors[0].ideal())
            } else {
                (factors[0].ideal(), factors[1].ideal())
            };
            cert.require(j.sum(&k) != maximal, "J + K != m")?;
            cert.details.insert("J".into(), j.to_string());
            cert.details.insert("K".into(), k.to_string());
        }
        CertificateKind::Msquare | CertificateKind::NonexisDecomp => unreachable!(),
    }
    Ok(cert)
}

/// Recognize `[J ℓ_y 0; 0 ℓ_x J]`: the same monomial ideal J in both
/// coordinates plus one column of linear forms.
fn image_shape(m: &ModuleMat) -> Option<(Staircase, Poly, Poly)> {
    let mut top = Vec::new();
    let mut bottom = Vec::new();
    let mut mixed = Vec::new();
    for c in m.cols() {
        match (c[0].is_zero(), c[1].is_zero()) {
            (false, true) => top.push(unit_monomial(&c[0])?),
            (true, false) => bottom.push(unit_monomial(&c[1])?),
            (false, false) => mixed.push(c.clone()),
            (true, true) => {}
        }
    }
    if mixed.len() != 1 {
        return None;
    }
    let j = minimalize(top.iter().copied()).ok()?;
    let j2 = minimalize(bottom.iter().copied()).ok()?;
    if j != j2 || top.len() != j.corners().len() || bottom.len() != j.corners().len() {
        return None;
    }
    let [ly, lx] = mixed.pop()?;
    let is_linear_form = |p: &Poly| p.order() == Some(1) && p.degree() == Some(1);
    (is_linear_form(&ly) && is_linear_form(&lx)).then_some((j, ly, lx))
}

/// The same module as `[J ℓ_y 0; 0 ℓ_x J]` with `J = I:m`, for some column
/// `(ℓ_y, ℓ_x)` of linear forms, checked by membership both ways.
fn image_span(m: &ModuleMat, i: &Staircase) -> Result<Option<(Staircase, Poly, Poly)>, ModuleError> {
    let j = i.colon(&Staircase::maximal());
    let is_linear_form = |p: &Poly| p.order() == Some(1) && p.degree() == Some(1);
    for [ly, lx] in m.cols() {
        if !(is_linear_form(ly) && is_linear_form(lx) && linear_pair_spans(ly, lx)) {
            continue;
        }
        let mut cols: Vec<Column> = j.generators().into_iter().map(|g| [g, Poly::zero()]).collect();
        cols.push([ly.clone(), lx.clone()]);
        cols.extend(j.generators().into_iter().map(|g| [Poly::zero(), g]));
        let image = ModuleMat::new(cols)?;
        if image.minors_equal(i) && spans(m, &image, i)? && spans(&image, m, i)? {
            return Ok(Some((j, ly.clone(), lx.clone())));
        }
    }
    Ok(None)
}

/// Every column of `b` lies in the span of `a`; both have minors closing to `I`.
fn spans(a: &ModuleMat, b: &ModuleMat, i: &Staircase) -> Result<bool, ModuleError> {
    let cutoff = scaled_free_check(a, i)?;
    for v in b.cols() {
        if !module_membership(v, a.cols(), &cutoff)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn unit_monomial(p: &Poly) -> Option<Monomial> {
    let (m, c) = p.as_single_term()?;
    (*c == crate::qpoly::q(1)).then_some(m)
}

fn linear_pair_spans(a: &Poly, b: &Poly) -> bool {
    let det = &(&a.coeff(Monomial::X) * &b.coeff(Monomial::Y))
        - &(&a.coeff(Monomial::Y) * &b.coeff(Monomial::X));
    det != crate::qpoly::q(0)
}
