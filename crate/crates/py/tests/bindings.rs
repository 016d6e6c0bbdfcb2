use pyo3::prelude::*;
use pyo3::types::{PyDict, PyModule};

fn with_module(code: &std::ffi::CStr) {
    Python::attach(|py| {
        let m = PyModule::new(py, "pytdpair").unwrap();
        pytdpair::register(&m).unwrap();
        let locals = PyDict::new(py);
        locals.set_item("tp", m).unwrap();
        if let Err(e) = py.run(code, None, Some(&locals)) {
            e.print(py);
            panic!("python assertion failed");
        }
    });
}

#[test]
fn sequences_and_certificates() {
    with_module(
        c"
geo = tp.Sequence.geometric(2, 2)
assert geo.theta == ['1', '2', '4'] and geo.d == 2 and geo.field == 'rational'
c = tp.directness(geo, n=2)
assert (c['dim'], c['zigzag'], c['rank'], c['direct']) == (27, 6, 21, True)
c = tp.directness(geo, lam='length=4,begin=E0,end=e1')
assert c['dim'] == 9 and c['direct']
assert tp.mu_verify(geo, 2)['evidence_up_to_n_max']
",
    );
}

#[test]
fn words_and_monomials() {
    with_module(
        c"
assert len(tp.words(1, n=1)) == 2
assert tp.monomials(2, 1) == [[0, 0], [1, 0], [1, 1]]
assert str(tp.monomial_to_word([1, 2])) == 'E0 e2 E0 e1 E0'
w = tp.Word('E0 e2 E0 e1 E0')
assert w.indices == [0, 2, 0, 1, 0] and w.monomial() == [2, 1]
assert str(tp.Word('E0 e1') * tp.Word('e1 E2')) == 'E0 e1 E2'
",
    );
}

#[test]
fn errors_become_value_errors() {
    with_module(
        c"
try:
    tp.Sequence([1, 2], [1, 2, 3])
except ValueError:
    pass
else:
    raise AssertionError
try:
    tp.Sequence.geometric(1, 3)
except ValueError as e:
    assert 'root of unity' in str(e) or 'distinct' in str(e), str(e)
else:
    raise AssertionError
",
    );
}
