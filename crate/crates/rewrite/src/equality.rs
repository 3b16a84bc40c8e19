//! Semantic equality of diagrams by dense evaluation.

use tensorcore::ComplexMatrix;
use zxgraph::{evaluate, ZXDiagram, ZxError};

/// How strictly two evaluated tensors must agree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EqualityMode {
    /// Entrywise agreement within tolerance, global scalar included.
    Exact,
    /// Agreement up to one global complex phase of unit magnitude.
    Phase,
    /// Agreement up to a global ±1.
    Sign,
}

impl std::str::FromStr for EqualityMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exact" => Ok(EqualityMode::Exact),
            "phase" => Ok(EqualityMode::Phase),
            "sign" => Ok(EqualityMode::Sign),
            other => Err(format!(
                "unknown equality mode {other:?} (expected exact, phase, or sign)"
            )),
        }
    }
}

/// Evaluates both diagrams and compares the tensors under `mode`.
///
/// Diagrams of different arity are simply unequal (`Ok(false)`), not an
/// error; evaluation failures (invalid diagram, cap exceeded) propagate.
pub fn semantics_equal(
    a: &ZXDiagram,
    b: &ZXDiagram,
    mode: EqualityMode,
    tol: f64,
) -> Result<bool, ZxError> {
    if a.inputs().len() != b.inputs().len() || a.outputs().len() != b.outputs().len() {
        return Ok(false);
    }
    let ta = evaluate(a)?;
    let tb = evaluate(b)?;
    Ok(matrices_equal(&ta, &tb, mode, tol))
}

/// The comparison itself, exposed for callers that already hold tensors.
pub fn matrices_equal(ta: &ComplexMatrix, tb: &ComplexMatrix, mode: EqualityMode, tol: f64) -> bool {
    match mode {
        EqualityMode::Exact => ta.approx_equal(tb, tol),
        EqualityMode::Phase => ta.equal_up_to_global_phase(tb, tol),
        EqualityMode::Sign => ta.equal_up_to_sign(tb, tol),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use zxgraph::{Color, RationalPhase};

    fn z_gate() -> ZXDiagram {
        let mut d = ZXDiagram::new();
        let i = d.add_input();
        let o = d.add_output();
        let s = d.add_spider(Color::Green, RationalPhase::pi());
        d.add_edge(i, s);
        d.add_edge(s, o);
        d
    }

    #[test]
    fn modes_are_ordered_by_strictness() {
        let d = z_gate();
        let mut e = z_gate();
        e.multiply_scalar(Complex64::new(-1.0, 0.0));
        assert!(!semantics_equal(&d, &e, EqualityMode::Exact, 1e-10).unwrap());
        assert!(semantics_equal(&d, &e, EqualityMode::Sign, 1e-10).unwrap());
        assert!(semantics_equal(&d, &e, EqualityMode::Phase, 1e-10).unwrap());

        let mut f = z_gate();
        f.multiply_scalar(Complex64::from_polar(1.0, 0.3));
        assert!(!semantics_equal(&d, &f, EqualityMode::Exact, 1e-10).unwrap());
        assert!(!semantics_equal(&d, &f, EqualityMode::Sign, 1e-10).unwrap());
        assert!(semantics_equal(&d, &f, EqualityMode::Phase, 1e-10).unwrap());
    }

    #[test]
    fn arity_mismatch_is_unequal_not_error() {
        let d = z_gate();
        let mut e = ZXDiagram::new();
        let o = e.add_output();
        let s = e.add_spider(Color::Green, RationalPhase::zero());
        e.add_edge(s, o);
        assert!(!semantics_equal(&d, &e, EqualityMode::Phase, 1e-10).unwrap());
    }

    #[test]
    fn mode_parsing() {
        assert_eq!("exact".parse::<EqualityMode>().unwrap(), EqualityMode::Exact);
        assert_eq!("phase".parse::<EqualityMode>().unwrap(), EqualityMode::Phase);
        assert_eq!("sign".parse::<EqualityMode>().unwrap(), EqualityMode::Sign);
        assert!("loose".parse::<EqualityMode>().is_err());
    }
}
