//! m-primary monomial ideals as staircases of minimal generators.
//!
//! Integral closure of a monomial ideal is read off its Newton polygon, and the
//! polygon's edges give the factorization into simple complete ideals.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::qpoly::{Monomial, Poly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StaircaseError {
    #[error("generators do not contain pure powers of both x and y")]
    NotMPrimary,
    #[error("ideal is not integrally closed")]
    NotClosed,
}

/// Minimal monomial generators of an m-primary monomial ideal, sorted with the
/// x-exponent strictly decreasing (so the y-exponent strictly increases). The
/// first corner is a pure power of x and the last a pure power of y.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Staircase {
    corners: Vec<Monomial>,
}

/// Lower-left boundary of the Newton polyhedron, from `(0, h)` to `(w, 0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    pub vertices: Vec<Monomial>,
}

/// `mult` copies of the simple ideal `closure(x^d, y^e)`, `gcd(d, e) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SimpleFactor {
    pub d: u32,
    pub e: u32,
    pub mult: u32,
}

impl SimpleFactor {
    /// The simple ideal itself (ignoring `mult`).
    pub fn ideal(&self) -> Staircase {
        newton_closure([Monomial::new(self.d, 0), Monomial::new(0, self.e)])
            .expect("pure powers present")
    }

    /// The ideal raised to `mult`.
    pub fn power(&self) -> Staircase {
        let base = self.ideal();
        let mut acc = Staircase::unit();
        for _ in 0..self.mult {
            acc = acc.product(&base);
        }
        acc
    }
}

/// Keep the minimal elements of a monomial set under divisibility.
pub fn minimalize<I: IntoIterator<Item = Monomial>>(gens: I) -> Result<Staircase, StaircaseError> {
    let mut v: Vec<Monomial> = gens.into_iter().collect();
    v.sort_by(|p, q| p.a.cmp(&q.a).then(p.b.cmp(&q.b)));
    v.dedup();
    // Scanning by increasing a, a monomial is minimal iff its b is below every
    // b seen so far.
    let mut corners: Vec<Monomial> = Vec::new();
    let mut best_b = u32::MAX;
    for m in v {
        if m.b < best_b {
            best_b = m.b;
            corners.push(m);
        }
    }
    corners.reverse();
    let first = corners.first().ok_or(StaircaseError::NotMPrimary)?;
    let last = corners.last().expect("non-empty");
    if first.b != 0 || last.a != 0 {
        return Err(StaircaseError::NotMPrimary);
    }
    Ok(Staircase { corners })
}

impl Staircase {
    /// The unit ideal R.
    pub fn unit() -> Self {
        Staircase {
            corners: vec![Monomial::ONE],
        }
    }

    /// The maximal ideal (x, y).
    pub fn maximal() -> Self {
        Staircase {
            corners: vec![Monomial::X, Monomial::Y],
        }
    }

    /// `m^k`.
    pub fn maximal_power(k: u32) -> Self {
        Staircase {
            corners: Monomial::of_degree(k).collect(),
        }
    }

    /// `(x^m, xy, y^n)`.
    pub fn family(m: u32, n: u32) -> Self {
        minimalize([Monomial::new(m, 0), Monomial::new(1, 1), Monomial::new(0, n)])
            .expect("m-primary")
    }

    pub fn from_exponents(pairs: &[(u32, u32)]) -> Result<Self, StaircaseError> {
        minimalize(pairs.iter().map(|&(a, b)| Monomial::new(a, b)))
    }

    pub fn corners(&self) -> &[Monomial] {
        &self.corners
    }

    pub fn generators(&self) -> Vec<Poly> {
        self.corners.iter().map(|&m| Poly::monomial(m)).collect()
    }

    /// Exponent of the pure power of x.
    pub fn x_extent(&self) -> u32 {
        self.corners[0].a
    }

    /// Exponent of the pure power of y.
    pub fn y_extent(&self) -> u32 {
        self.corners[self.corners.len() - 1].b
    }

    pub fn contains_monomial(&self, m: Monomial) -> bool {
        self.corners.iter().any(|c| c.divides(m))
    }

    /// Membership in the localized ring.
    ///
    /// For a monomial ideal I and a unit u, the terms of u·f of minimal order
    /// are c·(minimal terms of f), so u·f ∈ I forces each term of f into I by
    /// induction on the number of terms. Hence f ∈ I·R_m iff every monomial
    /// of f lies in I.
    pub fn contains_poly(&self, f: &Poly) -> bool {
        f.terms().all(|(m, _)| self.contains_monomial(*m))
    }

    /// Height of the staircase over column `a`: the least b with x^a y^b ∈ I.
    fn height_at(&self, a: u32) -> u32 {
        self.corners
            .iter()
            .filter(|c| c.a <= a)
            .map(|c| c.b)
            .min()
            .unwrap_or(u32::MAX)
    }

    /// Standard monomials (those outside I).
    pub fn standard_monomials(&self) -> Vec<Monomial> {
        (0..self.x_extent())
            .flat_map(|a| (0..self.height_at(a)).map(move |b| Monomial::new(a, b)))
            .collect()
    }

    /// `dim_ℚ R/I`.
    pub fn colength(&self) -> u64 {
        (0..self.x_extent()).map(|a| self.height_at(a) as u64).sum()
    }

    /// Largest k with I ⊆ m^k.
    pub fn order(&self) -> u32 {
        self.corners.iter().map(|m| m.degree()).min().expect("non-empty")
    }

    /// Least s with m^s ⊆ I.
    pub fn power_containment_degree(&self) -> u32 {
        self.standard_monomials()
            .iter()
            .map(|m| m.degree() + 1)
            .max()
            .unwrap_or(0)
    }

    pub fn product(&self, other: &Staircase) -> Staircase {
        minimalize(
            self.corners
                .iter()
                .flat_map(|p| other.corners.iter().map(move |q| p.mul(*q))),
        )
        .expect("product of m-primary ideals is m-primary")
    }

    pub fn sum(&self, other: &Staircase) -> Staircase {
        minimalize(self.corners.iter().chain(other.corners.iter()).copied())
            .expect("sum of m-primary ideals is m-primary")
    }

    /// `(I : g)` for a monomial g.
    pub fn colon_monomial(&self, g: Monomial) -> Staircase {
        minimalize(
            self.corners
                .iter()
                .map(|c| Monomial::new(c.a.saturating_sub(g.a), c.b.saturating_sub(g.b))),
        )
        .expect("colon of an m-primary ideal is m-primary")
    }

    /// `(I : J) = ∩_{g ∈ J} (I : g)`.
    pub fn colon(&self, other: &Staircase) -> Staircase {
        let (w, h) = (self.x_extent(), self.y_extent());
        let members = (0..=w).flat_map(|a| (0..=h).map(move |b| Monomial::new(a, b)));
        minimalize(members.filter(|mu| {
            other
                .corners
                .iter()
                .all(|g| self.contains_monomial(mu.mul(*g)))
        }))
        .expect("x^w and y^h always lie in the colon")
    }

    /// I ⊆ J.
    pub fn is_subset_of(&self, other: &Staircase) -> bool {
        self.corners.iter().all(|c| other.contains_monomial(*c))
    }

    pub fn newton_polygon(&self) -> NewtonPolygon {
        // Lower convex hull of the corners, scanned by increasing a.
        let mut pts: Vec<Monomial> = self.corners.clone();
        pts.reverse();
        let mut hull: Vec<Monomial> = Vec::new();
        for p in pts {
            while hull.len() >= 2 {
                let o = hull[hull.len() - 2];
                let a = hull[hull.len() - 1];
                if cross(o, a, p) <= 0 {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(p);
        }
        NewtonPolygon { vertices: hull }
    }

    pub fn is_integrally_closed(&self) -> bool {
        newton_closure(self.corners.iter().copied()).as_ref() == Ok(self)
    }

    /// `e(I)`: twice the area between the axes and the Newton polygon.
    pub fn multiplicity(&self) -> Result<u64, StaircaseError> {
        self.require_closed()?;
        Ok(self.newton_polygon().twice_area())
    }

    pub fn require_closed(&self) -> Result<(), StaircaseError> {
        if self.is_integrally_closed() {
            Ok(())
        } else {
            Err(StaircaseError::NotClosed)
        }
    }

    /// Factor a complete monomial ideal into simple complete ideals.
    ///
    /// Each polygon edge with displacement `(d·g, -e·g)`, `gcd(d, e) = 1`,
    /// contributes `closure(x^d, y^e)^g`. Factors are sorted by ascending
    /// slope e/d.
    pub fn zariski_factor(&self) -> Result<Vec<SimpleFactor>, StaircaseError> {
        self.require_closed()?;
        let mut out: Vec<SimpleFactor> = self
            .newton_polygon()
            .vertices
            .windows(2)
            .map(|w| {
                let width = w[1].a - w[0].a;
                let height = w[0].b - w[1].b;
                let g = width.gcd(&height);
                SimpleFactor {
                    d: width / g,
                    e: height / g,
                    mult: g,
                }
            })
            .collect();
        out.sort_by(|p, q| (p.e as u64 * q.d as u64).cmp(&(q.e as u64 * p.d as u64)));
        Ok(out)
    }

    pub fn is_simple(&self) -> Result<bool, StaircaseError> {
        let f = self.zariski_factor()?;
        Ok(f.len() == 1 && f[0].mult == 1)
    }

    /// ASCII picture: rows from the top y down to 0, `#` for monomials in I.
    pub fn render_ascii(&self) -> String {
        let (w, h) = (self.x_extent(), self.y_extent());
        let mut s = String::new();
        for b in (0..=h).rev() {
            for a in 0..=w {
                s.push(if self.contains_monomial(Monomial::new(a, b)) {
                    '#'
                } else {
                    '.'
                });
            }
            s.push('\n');
        }
        s
    }
}

fn cross(o: Monomial, a: Monomial, b: Monomial) -> i64 {
    let (ox, oy) = (o.a as i64, o.b as i64);
    (a.a as i64 - ox) * (b.b as i64 - oy) - (a.b as i64 - oy) * (b.a as i64 - ox)
}

impl NewtonPolygon {
    pub fn twice_area(&self) -> u64 {
        self.vertices
            .windows(2)
            .map(|w| (w[1].a - w[0].a) as u64 * (w[0].b + w[1].b) as u64)
            .sum()
    }

    /// Does the lattice point lie on or above every edge?
    pub fn covers(&self, m: Monomial) -> bool {
        self.vertices.windows(2).all(|w| {
            let (a1, b1) = (w[0].a as i64, w[0].b as i64);
            let (a2, b2) = (w[1].a as i64, w[1].b as i64);
            let (na, nb) = (b1 - b2, a2 - a1);
            na * m.a as i64 + nb * m.b as i64 >= na * a1 + nb * b1
        })
    }
}

/// Integral closure of the monomial ideal generated by `gens`.
pub fn newton_closure<I: IntoIterator<Item = Monomial>>(gens: I) -> Result<Staircase, StaircaseError> {
    let base = minimalize(gens)?;
    let poly = base.newton_polygon();
    let (w, h) = (base.x_extent(), base.y_extent());
    let pts = (0..=w).flat_map(|a| (0..=h).map(move |b| Monomial::new(a, b)));
    minimalize(pts.filter(|m| poly.covers(*m)))
}

impl fmt::Display for Staircase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .corners
            .iter()
            .map(|m| crate::qpoly::render_monomial(*m))
            .collect();
        f.write_str(&parts.join(", "))
    }
}
