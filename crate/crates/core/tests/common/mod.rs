//! Seeded generators shared by the integration tests.
#![allow(dead_code)]

use izclose::qpoly::q;
use izclose::{minimalize, newton_closure, Branch, Monomial, Poly, Staircase, Verdict};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// An m-primary staircase with generators of degree at most `max_degree`.
pub fn random_staircase(rng: &mut ChaCha8Rng, max_degree: u32) -> Staircase {
    let mut gens = vec![
        Monomial::new(rng.gen_range(1..=max_degree), 0),
        Monomial::new(0, rng.gen_range(1..=max_degree)),
    ];
    for _ in 0..rng.gen_range(0..5) {
        let d = rng.gen_range(2..=max_degree);
        let a = rng.gen_range(1..d);
        gens.push(Monomial::new(a, d - a));
    }
    minimalize(gens).expect("pure powers present")
}

/// The Newton closure of a random staircase.
pub fn random_closed(rng: &mut ChaCha8Rng, max_degree: u32) -> Staircase {
    let s = random_staircase(rng, max_degree);
    newton_closure(s.corners().iter().copied()).expect("m-primary")
}

/// A closed staircase with `lo ≤ order ≤ hi`.
pub fn random_closed_with_order(rng: &mut ChaCha8Rng, max_degree: u32, lo: u32, hi: u32) -> Staircase {
    loop {
        let s = random_closed(rng, max_degree);
        if (lo..=hi).contains(&s.order()) {
            return s;
        }
    }
}

/// A polynomial with up to `terms` terms of degree at most `max_degree`.
pub fn random_poly(rng: &mut ChaCha8Rng, max_degree: u32, terms: usize) -> Poly {
    let mut p = Poly::zero();
    for _ in 0..rng.gen_range(1..=terms) {
        let d = rng.gen_range(0..=max_degree);
        let a = rng.gen_range(0..=d);
        let c = q(rng.gen_range(-5..=5));
        p = p + Poly::term(c, Monomial::new(a, d - a));
    }
    p
}

/// A random monomial in m of degree at most `max_degree`, or zero.
pub fn random_entry(rng: &mut ChaCha8Rng, max_degree: u32) -> Poly {
    if rng.gen_bool(0.25) {
        return Poly::zero();
    }
    let d = rng.gen_range(1..=max_degree);
    let a = rng.gen_range(0..=d);
    Poly::xy(a, d - a)
}

pub fn st(pairs: &[(u32, u32)]) -> Staircase {
    Staircase::from_exponents(pairs).unwrap()
}

pub fn closure_of(pairs: &[(u32, u32)]) -> Staircase {
    izclose::newton_closure(st(pairs).corners().iter().copied()).unwrap()
}

/// The classification table: name, ideal, expected verdict and branch.
pub fn fixtures() -> Vec<(String, Staircase, Verdict, Branch)> {
    use Branch::*;
    use Verdict::*;
    let m = Staircase::maximal();
    let mut out = vec![("m^2".to_string(), Staircase::maximal_power(2), NotExists, Msquare)];
    for a in 2..=5 {
        for b in 2..=5 {
            if a == 2 && b == 2 {
                continue;
            }
            let name = format!("(x^{a}, xy, y^{b})");
            out.push((name, Staircase::family(a, b), NotExists, NonexisFamily));
        }
    }
    let order3 = [
        ("m^3", Staircase::maximal_power(3)),
        ("m^4", Staircase::maximal_power(4)),
        ("closure(x^3, y^4)", closure_of(&[(3, 0), (0, 4)])),
        ("closure(x^3, y^5)", closure_of(&[(3, 0), (0, 5)])),
        ("m(x^2, xy^2, y^3)", m.product(&st(&[(2, 0), (1, 2), (0, 3)]))),
        ("closure(x^3, y^6)", closure_of(&[(3, 0), (0, 6)])),
        ("closure(x^4, y^5)", closure_of(&[(4, 0), (0, 5)])),
        ("m^2 (x, y^2)", Staircase::maximal_power(2).product(&st(&[(1, 0), (0, 2)]))),
        ("m (x, y^2)(x, y^3)", m.product(&st(&[(1, 0), (0, 2)])).product(&st(&[(1, 0), (0, 3)]))),
        ("(x, y^3)^3", st(&[(1, 0), (0, 3)]).product(&st(&[(1, 0), (0, 3)])).product(&st(&[(1, 0), (0, 3)]))),
    ];
    for (name, i) in order3 {
        out.push((name.to_string(), i, Exists, OrdGe3));
    }
    out.push(("(x^2, xy^2, y^3)".into(), st(&[(2, 0), (1, 2), (0, 3)]), Exists, Ord2Simple));
    out.push(("closure(x^2, y^5)".into(), closure_of(&[(2, 0), (0, 5)]), Exists, Ord2Simple));
    out.push((
        "(x, y^2)(x, y^3)".into(),
        st(&[(1, 0), (0, 2)]).product(&st(&[(1, 0), (0, 3)])),
        Exists,
        Ord2ProductOk,
    ));
    out.push(("(x, y^2)^2".into(), st(&[(1, 0), (0, 2)]).product(&st(&[(1, 0), (0, 2)])), Exists, Ord2ProductOk));
    out.push(("m".into(), m.clone(), NotExists, Ord1));
    out.push(("(x, y^4)".into(), st(&[(1, 0), (0, 4)]), NotExists, Ord1));
    out
}
