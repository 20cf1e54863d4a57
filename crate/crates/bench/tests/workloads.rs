use izclose::{classify, decompose_nonexis, module_closure, Settings, Verdict};
use izclose_bench::{classify_inputs, closure_input, nonexis_input};

#[test]
fn classify_inputs_all_have_witnesses() {
    for (name, i) in classify_inputs() {
        let r = classify(&i, Settings::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Exists, "{name}");
    }
}

#[test]
fn closure_inputs_are_not_closed() {
    for (a, b) in [(2, 2), (3, 3), (4, 2)] {
        let m = closure_input(a, b);
        let r = module_closure(&m, &m.minors_closure().unwrap()).unwrap();
        assert!(!r.closed, "({a}, {b})");
    }
}

#[test]
fn nonexis_inputs_decompose() {
    let (m, p) = nonexis_input(4, 3, 11);
    assert_eq!(decompose_nonexis(&m, p).unwrap().params, p);
}
