use catconv::Rat;
use pycatconv::{to_fraction, to_rat};
use pyo3::prelude::*;
use pyo3::types::PyFloat;

fn py_rat(py: Python<'_>, expr: &str) -> PyResult<Rat> {
    let code = std::ffi::CString::new(expr).unwrap();
    let obj = py.eval(&code, None, None)?;
    to_rat(&obj)
}

#[test]
fn rationals_cross_the_boundary_exactly() {
    Python::initialize();
    Python::attach(|py| {
        assert_eq!(py_rat(py, "3").unwrap(), Rat::from(3));
        assert_eq!(py_rat(py, "'-4/9'").unwrap(), Rat::from_frac(-4, 9));
        assert_eq!(
            py_rat(py, "__import__('fractions').Fraction(14, 10)").unwrap(),
            Rat::from_frac(7, 5)
        );
        let huge = py_rat(py, "10**40").unwrap();
        assert_eq!(huge.to_string(), format!("1{}", "0".repeat(40)));
        assert!(py_rat(py, "1.5").is_err());
        assert!(py_rat(py, "'1/0'").is_err());
        assert!(py_rat(py, "None").is_err());

        let frac = to_fraction(py, &Rat::from_frac(44, 3)).unwrap();
        assert_eq!(frac.str().unwrap().to_string(), "44/3");
        assert!(!frac.is_instance_of::<PyFloat>());
    });
}
