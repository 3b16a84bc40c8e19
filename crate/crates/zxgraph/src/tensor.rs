//! Tensor semantics: per-spider tensors and whole-diagram evaluation.
//!
//! # Normalization convention
//!
//! Spiders carry a *mixed* normalization, chosen so the standard two-spider
//! CNOT diagram evaluates to exactly (1/√2)·CNOT and so squared diagram
//! 2-norms read directly as branch probabilities:
//!
//! * degree 1 — unit-norm states/effects:
//!   green `(|0⟩ + e^{iα}|1⟩)/√2`, red `(|+⟩ + e^{iα}|−⟩)/√2`
//!   (effects are the transposes, same entry values);
//! * degree k ≥ 2 — unnormalized basis sums:
//!   green `Σ_b e^{ibα} |b…b⟩⟨b…b|`-pattern (entries 1 and e^{iα} on the
//!   two all-equal index tuples), red the same in the |±⟩ basis, which in
//!   computational components is `(1/√2)^k · (1 + e^{iα}(−1)^{Σ indices})`.
//!
//! A degree-1 spider therefore carries one extra 1/√2 relative to the
//! degree-k formula specialized to k = 1; the rewrite engine's scalar
//! bookkeeping accounts for this when fusions change boundary degrees.
//!
//! # Index conventions
//!
//! Matrix rows are indexed by the diagram outputs in declared order and
//! columns by the inputs; the first boundary of each list is the most
//! significant index bit. Spider tensors are symmetric under leg exchange,
//! so no per-leg ordering is needed beyond this boundary convention.

use num_complex::Complex64;
use tensorcore::ComplexMatrix;

use crate::diagram::{Color, NodeKind, ZXDiagram};
use crate::phase::RationalPhase;
use crate::ZxError;

/// Hard ceiling on wire counts during evaluation: a diagram may have at most
/// this many edges, at most this many boundary nodes, and no intermediate
/// contraction result may exceed this rank.
pub const EVAL_CAP: usize = 24;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Raw spider tensor entries for a spider of the given colour, phase, and
/// degree, indexed row-major with leg 0 as the most significant bit.
fn spider_values(color: Color, phase: &RationalPhase, degree: usize) -> Vec<Complex64> {
    debug_assert!(degree >= 1);
    let w = phase.phase_factor();
    let n = 1usize << degree;
    match color {
        Color::Green => {
            if degree == 1 {
                let s = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
                vec![s, w * s]
            } else {
                let mut v = vec![ZERO; n];
                v[0] = ONE;
                v[n - 1] = w;
                v
            }
        }
        Color::Red => {
            // (1/√2)^k basis factors, with one extra 1/√2 at degree 1 for
            // the unit-norm convention.
            let halves = degree + usize::from(degree == 1);
            let scale = Complex64::new(0.5f64.powf(halves as f64 / 2.0), 0.0);
            (0..n)
                .map(|idx| {
                    let sign = if (idx as u32).count_ones() % 2 == 0 {
                        ONE
                    } else {
                        -ONE
                    };
                    scale * (ONE + w * sign)
                })
                .collect()
        }
    }
}

/// The matrix of a single spider with the given leg split: `out_legs` output
/// legs (rows, first leg most significant) and `in_legs` input legs (columns).
///
/// Degree = `in_legs + out_legs` must be at least 1.
pub fn node_tensor(
    color: Color,
    phase: &RationalPhase,
    in_legs: usize,
    out_legs: usize,
) -> Result<ComplexMatrix, ZxError> {
    let degree = in_legs + out_legs;
    if degree == 0 {
        return Err(ZxError::ZeroDegree);
    }
    if degree > EVAL_CAP {
        return Err(ZxError::CapExceeded(format!(
            "spider degree {degree} exceeds cap {EVAL_CAP}"
        )));
    }
    let values = spider_values(color, phase, degree);
    Ok(ComplexMatrix::from_entries(1 << out_legs, 1 << in_legs, values)
        .expect("entry count matches 2^degree"))
}

/// One end of an edge: the axis label used during contraction. Edge `i`
/// contributes ends `(i, 0)` and `(i, 1)`; contraction glues the pair.
type Axis = (usize, u8);

/// A dense intermediate tensor; `data.len() == 2^axes.len()`, axis 0 is the
/// most significant index bit.
struct Tensor {
    axes: Vec<Axis>,
    data: Vec<Complex64>,
}

impl Tensor {
    fn rank(&self) -> usize {
        self.axes.len()
    }

    /// Reorders axes; `perm[k]` is the old position of the axis that moves
    /// to position `k`.
    fn permute(&self, perm: &[usize]) -> Tensor {
        let r = self.rank();
        debug_assert_eq!(perm.len(), r);
        let axes = perm.iter().map(|&p| self.axes[p]).collect();
        let mut data = vec![ZERO; self.data.len()];
        for (new_idx, slot) in data.iter_mut().enumerate() {
            let mut old_idx = 0usize;
            for (k, &p) in perm.iter().enumerate() {
                let bit = (new_idx >> (r - 1 - k)) & 1;
                old_idx |= bit << (r - 1 - p);
            }
            *slot = self.data[old_idx];
        }
        Tensor { axes, data }
    }

    /// Outer product, `self`'s axes more significant.
    fn outer(&self, rhs: &Tensor) -> Tensor {
        let mut axes = self.axes.clone();
        axes.extend_from_slice(&rhs.axes);
        let mut data = Vec::with_capacity(self.data.len() * rhs.data.len());
        for &a in &self.data {
            for &b in &rhs.data {
                data.push(a * b);
            }
        }
        Tensor { axes, data }
    }
}

/// Edge ids occurring in both tensors (each edge's two ends always live in
/// different tensors, so a shared id means a contractible pair).
fn shared_edges(a: &Tensor, b: &Tensor) -> Vec<usize> {
    let mut shared: Vec<usize> = a
        .axes
        .iter()
        .filter(|(e, _)| b.axes.iter().any(|(e2, _)| e2 == e))
        .map(|&(e, _)| e)
        .collect();
    shared.sort_unstable();
    shared.dedup();
    shared
}

/// Contracts two tensors over every edge they share.
fn contract(a: &Tensor, b: &Tensor, shared: &[usize]) -> Result<Tensor, ZxError> {
    let pos_of = |t: &Tensor, e: usize| t.axes.iter().position(|&(e2, _)| e2 == e).unwrap();
    let a_shared: Vec<usize> = shared.iter().map(|&e| pos_of(a, e)).collect();
    let b_shared: Vec<usize> = shared.iter().map(|&e| pos_of(b, e)).collect();
    debug_assert!(shared
        .iter()
        .zip(&a_shared)
        .zip(&b_shared)
        .all(|((&e, &pa), &pb)| a.axes[pa].1 != b.axes[pb].1 && a.axes[pa].0 == e));

    let a_open: Vec<usize> = (0..a.rank()).filter(|p| !a_shared.contains(p)).collect();
    let b_open: Vec<usize> = (0..b.rank()).filter(|p| !b_shared.contains(p)).collect();
    let result_rank = a_open.len() + b_open.len();
    if result_rank > EVAL_CAP {
        return Err(ZxError::CapExceeded(format!(
            "intermediate tensor of rank {result_rank} exceeds cap {EVAL_CAP}"
        )));
    }

    // A: open axes first, shared last; B: shared first (same edge order), open last.
    let pa: Vec<usize> = a_open.iter().chain(&a_shared).copied().collect();
    let pb: Vec<usize> = b_shared.iter().chain(&b_open).copied().collect();
    let at = a.permute(&pa);
    let bt = b.permute(&pb);

    let s = shared.len();
    let rows = 1usize << a_open.len();
    let mid = 1usize << s;
    let cols = 1usize << b_open.len();
    let mut data = vec![ZERO; rows * cols];
    for i in 0..rows {
        for k in 0..mid {
            let av = at.data[i * mid + k];
            if av == ZERO {
                continue;
            }
            for j in 0..cols {
                data[i * cols + j] += av * bt.data[k * cols + j];
            }
        }
    }
    let mut axes: Vec<Axis> = at.axes[..a_open.len()].to_vec();
    axes.extend_from_slice(&bt.axes[s..]);
    Ok(Tensor { axes, data })
}

/// Evaluates a diagram to its dense matrix: rows indexed by outputs in
/// declared order, columns by inputs, first boundary most significant; the
/// global scalar and every closed component's value are folded in.
///
/// Fails on invalid diagrams and on wire counts beyond [`EVAL_CAP`].
pub fn evaluate(d: &ZXDiagram) -> Result<ComplexMatrix, ZxError> {
    d.validated()?;
    let inputs = d.inputs();
    let outputs = d.outputs();
    let n_boundary = inputs.len() + outputs.len();
    if n_boundary > EVAL_CAP {
        return Err(ZxError::CapExceeded(format!(
            "{n_boundary} boundary wires exceed cap {EVAL_CAP}"
        )));
    }
    if d.edges().len() > EVAL_CAP {
        return Err(ZxError::CapExceeded(format!(
            "{} edges exceed cap {EVAL_CAP}",
            d.edges().len()
        )));
    }

    // One tensor per spider (axes = incident edge ends) and one identity
    // tensor per boundary-to-boundary wire.
    let mut tensors: Vec<Tensor> = Vec::new();
    for (id, kind) in d.nodes() {
        if let NodeKind::Spider { color, phase } = kind {
            let mut axes: Vec<Axis> = Vec::new();
            for (i, &(a, b)) in d.edges().iter().enumerate() {
                if a == id {
                    axes.push((i, 0));
                }
                if b == id {
                    axes.push((i, 1));
                }
            }
            let data = spider_values(*color, phase, axes.len());
            tensors.push(Tensor { axes, data });
        }
    }
    for (i, &(a, b)) in d.edges().iter().enumerate() {
        let both_boundary = d.node(a).is_some_and(NodeKind::is_boundary)
            && d.node(b).is_some_and(NodeKind::is_boundary);
        if both_boundary {
            tensors.push(Tensor {
                axes: vec![(i, 0), (i, 1)],
                data: vec![ONE, ZERO, ZERO, ONE],
            });
        }
    }

    let mut scalar = d.scalar();

    // Greedy pairwise contraction: repeatedly contract the edge-sharing pair
    // whose result has the smallest rank (first such pair on ties), folding
    // fully-contracted components into the scalar.
    loop {
        let mut k = 0;
        while k < tensors.len() {
            if tensors[k].rank() == 0 {
                scalar *= tensors[k].data[0];
                tensors.remove(k);
            } else {
                k += 1;
            }
        }

        let mut best: Option<(usize, usize, usize)> = None;
        for p in 0..tensors.len() {
            for q in (p + 1)..tensors.len() {
                let shared = shared_edges(&tensors[p], &tensors[q]);
                if shared.is_empty() {
                    continue;
                }
                let rr = tensors[p].rank() + tensors[q].rank() - 2 * shared.len();
                if best.is_none_or(|(_, _, r)| rr < r) {
                    best = Some((p, q, rr));
                }
            }
        }
        let Some((p, q, _)) = best else { break };
        let b = tensors.remove(q);
        let a = tensors.remove(p);
        let shared = shared_edges(&a, &b);
        let merged = contract(&a, &b, &shared)?;
        tensors.insert(p, merged);
    }

    // Disconnected open components: outer-product them (final rank is the
    // boundary count, already under the cap).
    let mut result: Option<Tensor> = None;
    for t in tensors {
        result = Some(match result {
            None => t,
            Some(acc) => acc.outer(&t),
        });
    }

    let Some(result) = result else {
        // Fully closed diagram.
        return Ok(ComplexMatrix::scalar(scalar));
    };

    // A boundary sitting at end e of its single edge is exposed under the
    // far end's axis label (i, 1−e): the spider (or wire tensor) at the
    // other side carries that axis, and it stays open.
    let claimed_axis = |bid| -> Axis {
        let i = d.incident_edges(bid)[0];
        let my_end: u8 = if d.edges()[i].0 == bid { 0 } else { 1 };
        (i, 1 - my_end)
    };

    let mut target: Vec<Axis> = Vec::with_capacity(n_boundary);
    for &o in &outputs {
        target.push(claimed_axis(o));
    }
    for &i in &inputs {
        target.push(claimed_axis(i));
    }
    debug_assert_eq!(target.len(), result.rank());
    let perm: Vec<usize> = target
        .iter()
        .map(|ax| {
            result
                .axes
                .iter()
                .position(|a| a == ax)
                .expect("every boundary axis is open in the contracted tensor")
        })
        .collect();
    let ordered = result.permute(&perm);

    let rows = 1usize << outputs.len();
    let cols = 1usize << inputs.len();
    let entries: Vec<Complex64> = ordered.data.iter().map(|&z| z * scalar).collect();
    Ok(ComplexMatrix::from_entries(rows, cols, entries).expect("shape matches rank"))
}

/// Frobenius norm of the evaluated diagram. With a normalized pure input
/// appended, the square of this value is the branch probability.
pub fn two_norm_of(d: &ZXDiagram) -> Result<f64, ZxError> {
    Ok(evaluate(d)?.two_norm())
}
