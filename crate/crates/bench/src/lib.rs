//! Fixed workloads shared by the criterion benches.

use izclose::modrank2::scramble;
use izclose::{newton_closure, FamilyParams, ModuleMat, Monomial, Poly, Staircase};

/// Closed ideals of growing size, one per classification branch that builds
/// a witness.
pub fn classify_inputs() -> Vec<(&'static str, Staircase)> {
    let simple = |d, e| newton_closure([Monomial::new(d, 0), Monomial::new(0, e)]).expect("m-primary");
    vec![
        ("m^3", Staircase::maximal_power(3)),
        ("m^5", Staircase::maximal_power(5)),
        ("closure(x^3,y^5)", simple(3, 5)),
        ("closure(x^4,y^7)", simple(4, 7)),
        ("closure(x^2,y^5)", simple(2, 5)),
        ("(x,y^2)(x,y^3)", simple(1, 2).product(&simple(1, 3))),
    ]
}

/// Two-generator columns `(x^a, 0), (y^b, 0), (0, x), (0, y)` whose closure
/// gains new elements for `a, b ≥ 2`.
pub fn closure_input(a: u32, b: u32) -> ModuleMat {
    ModuleMat::new(vec![
        [Poly::xy(a, 0), Poly::zero()],
        [Poly::xy(0, b), Poly::zero()],
        [Poly::zero(), Poly::x()],
        [Poly::zero(), Poly::y()],
    ])
    .expect("rank two")
}

/// A scrambled member of the decomposable family, with its parameters.
pub fn nonexis_input(m: u32, n: u32, seed: u64) -> (ModuleMat, FamilyParams) {
    let p = FamilyParams { m, n };
    (scramble(&ModuleMat::new(p.block()).expect("rank two"), seed), p)
}
