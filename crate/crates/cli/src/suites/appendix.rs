//! Bell-pair CNOT appendix suite: the four-convention dressing table of the
//! Bell-pair construction, row by row.
//!
//! For every assignment of a correction convention to the construction's
//! two merges, and every pair of heralded outcomes, the branch equals
//! `(P_control ⊗ P_target) · CNOT / 2` up to the catalogued residual: most
//! rows hold exactly, the doubly-heralded rows only up to a sign or a
//! factor of ±i. The mode column prints which relation the table states
//! (`exact`, `sign`, or `phase`); the comparison itself always includes the
//! catalogued residual, so each row is checked entry-for-entry.

use super::cnot::{conv_word, dressed_cnot, mode_of, Table, CATALOG};
use super::distance;
use crate::report::{VerifyCase, VerifyReport};
use crate::CliError;

use surgery::{builtin, enumerate_branches};

fn bellpair_tables() -> impl Iterator<Item = &'static Table> {
    CATALOG.iter().filter(|t| t.name == "cnot-bellpair")
}

pub fn run(tol: f64, seed: u64) -> Result<VerifyReport, CliError> {
    let mut cases = Vec::new();

    for table in bellpair_tables() {
        let mut p = builtin(table.name)?;
        p.set_conventions(table.convs);
        let e = enumerate_branches(&p)?;
        let smooth = conv_word(table.convs[0]);
        let rough = conv_word(table.convs[1]);
        for (bits, pc, pt, phase) in table.rows {
            let got = &e.branches[e.index_of(bits)].kraus;
            let want = dressed_cnot(*pc, *pt, *phase, table.scale);
            let err = distance(got, &want);
            let mode = mode_of(*phase);
            let relation = match mode {
                "exact" => "=",
                "sign" => "= −",
                _ => "≅",
            };
            cases.push(VerifyCase::new(
                format!(
                    "appendix/smooth-{}-rough-{}-b{}{}",
                    smooth, rough, bits[0], bits[1]
                ),
                format!(
                    "bell-pair CNOT, smooth merge {smooth} / rough merge {rough}, \
                     outcomes ({}, {}): branch {relation} {pc}⊗{pt} · CNOT / 2",
                    bits[0], bits[1]
                ),
                mode,
                err,
                err <= tol,
            ));
        }
    }

    Ok(VerifyReport::new("appendix", tol, seed, cases))
}
