//! Text grammar round trips over the fixture table and random inputs.

mod common;

use common::fixtures;
use izclose::grammar::{render_ideal, render_matrix};
use izclose::modrank2::scramble;
use izclose::qpoly::q;
use izclose::{
    classify, parse_ideal, parse_matrix, parse_poly, FamilyParams, ModuleMat, Monomial, Poly,
    Settings, Verdict,
};
use proptest::prelude::*;

const FIXTURE_FILE: &str = include_str!("../../../fixtures/classification.txt");

#[test]
fn fixture_file_matches_the_table() {
    let rows: Vec<Vec<&str>> = FIXTURE_FILE
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(|l| l.split(" ; ").collect())
        .collect();
    let table = fixtures();
    assert_eq!(rows.len(), table.len());
    for (row, (name, ideal, verdict, branch)) in rows.iter().zip(&table) {
        assert_eq!(row[0], name);
        let expected = match verdict {
            Verdict::Exists => "EXISTS",
            Verdict::NotExists => "NOT_EXISTS",
            Verdict::Rejected => "REJECTED",
        };
        assert_eq!(row[1], expected);
        assert_eq!(row[2], branch.name());
        assert_eq!(parse_ideal(row[3]).unwrap(), *ideal, "{name}");
    }
}

#[test]
fn fixture_ideals_round_trip() {
    for (name, i, _, _) in fixtures() {
        assert_eq!(parse_ideal(&render_ideal(&i)).unwrap(), i, "{name}");
    }
}

#[test]
fn fixture_modules_round_trip() {
    let mut modules = Vec::new();
    for (_, i, _, _) in fixtures() {
        let r = classify(&i, Settings::default()).unwrap();
        if let Some(w) = r.witness {
            modules.push(w.module);
        }
        if let Some(o) = r.obstruction {
            modules.push(scramble(&o.canonical_module, 3));
            modules.push(o.canonical_module);
        }
    }
    for p in [FamilyParams { m: 3, n: 4 }, FamilyParams { m: 5, n: 2 }] {
        modules.push(ModuleMat::new(p.block()).unwrap());
    }
    assert!(modules.len() >= 32);
    for m in modules {
        assert_eq!(parse_matrix(&render_matrix(&m)).unwrap(), m);
    }
}

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec((0u32..=6, 0u32..=6, -50i64..=50, 1i64..=9), 0..8).prop_map(|terms| {
        terms.into_iter().fold(Poly::zero(), |acc, (a, b, n, d)| {
            acc + Poly::term(q(n) / q(d), Monomial::new(a, b))
        })
    })
}

proptest! {
    #[test]
    fn polynomials_round_trip(p in poly()) {
        prop_assert_eq!(parse_poly(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn matrices_round_trip(top in prop::collection::vec(poly(), 2..5), bottom in prop::collection::vec(poly(), 2..5)) {
        let k = top.len().min(bottom.len());
        if let Ok(m) = ModuleMat::from_rows(top[..k].to_vec(), bottom[..k].to_vec()) {
            prop_assert_eq!(parse_matrix(&render_matrix(&m)).unwrap(), m);
        }
    }
}
