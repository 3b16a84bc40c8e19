//! Dense state-vector cross-check for small lattices.
//!
//! Everything in this module recomputes the physics with no stabilizer
//! machinery at all: states are explicit complex amplitude vectors, patch
//! encoding is the literal product of plaquette projectors, and merges are
//! sequences of projective measurements with the corrections applied as
//! actual operators. It exists to certify the tableau implementation on
//! systems small enough to afford it — two distance-2 patches plus one
//! seam qubit is 11 physical qubits, under the 12-qubit cap.
//!
//! Qubit order: site `i` of the patch's canonical site list is bit
//! `n−1−i` of the basis index, i.e. the first site is the most significant
//! bit, matching the tensor conventions of the logical layer.

use std::collections::BTreeMap;

use num_complex::Complex64;
use tensorcore::ComplexMatrix;

use surgery::merge_kraus;

use crate::channel::OpKind;
use crate::geometry::{PlanarPatch, Plaquette, PlaquetteKind, Site};
use crate::workspace::FrameConvention;
use crate::SurfaceError;

/// Hard cap on dense register width.
pub const MAX_DENSE_QUBITS: usize = 12;

struct DenseRegister {
    n: usize,
    index: BTreeMap<Site, usize>,
    amp: Vec<Complex64>,
}

impl DenseRegister {
    fn new(sites: &[Site]) -> Result<Self, SurfaceError> {
        let n = sites.len();
        if n > MAX_DENSE_QUBITS {
            return Err(SurfaceError::DenseCapacity(n));
        }
        let mut index = BTreeMap::new();
        for (i, &s) in sites.iter().enumerate() {
            if index.insert(s, i).is_some() {
                return Err(SurfaceError::Geometry(format!("duplicate site {s:?}")));
            }
        }
        Ok(Self {
            n,
            index,
            amp: vec![Complex64::new(0.0, 0.0); 1 << n],
        })
    }

    fn mask_of(&self, sites: &[Site]) -> Result<usize, SurfaceError> {
        let mut mask = 0usize;
        for s in sites {
            let &i = self
                .index
                .get(s)
                .ok_or(SurfaceError::UnknownSite(s.0, s.1))?;
            mask |= 1 << (self.n - 1 - i);
        }
        Ok(mask)
    }

    fn plaquette_masks(&self, plq: &Plaquette) -> Result<(usize, usize), SurfaceError> {
        let m = self.mask_of(&plq.sites)?;
        Ok(match plq.kind {
            PlaquetteKind::XVertex => (m, 0),
            PlaquetteKind::ZFace => (0, m),
        })
    }

    /// Applies `X^x · Z^z` (disjoint masks — no `Y` factors arise here).
    fn apply(&mut self, x: usize, z: usize) {
        assert_eq!(x & z, 0, "dense corrections are pure X or pure Z");
        let old = self.amp.clone();
        for b in 0..self.amp.len() {
            let src = b ^ x;
            let sign = if (src & z).count_ones() % 2 == 1 {
                -1.0
            } else {
                1.0
            };
            self.amp[b] = old[src] * sign;
        }
    }

    /// Projects onto the `sign` eigenspace of `X^x · Z^z`; returns the
    /// post-projection squared norm.
    fn project(&mut self, x: usize, z: usize, sign: i8) -> f64 {
        let old = self.amp.clone();
        let s = f64::from(sign);
        for b in 0..self.amp.len() {
            let src = b ^ x;
            let phase = if (src & z).count_ones() % 2 == 1 {
                -1.0
            } else {
                1.0
            };
            self.amp[b] = (old[b] + old[src] * (s * phase)) * 0.5;
        }
        self.norm2()
    }

    fn norm2(&self) -> f64 {
        self.amp.iter().map(|a| a.norm_sqr()).sum()
    }

    fn scale(&mut self, f: f64) {
        for a in &mut self.amp {
            *a *= f;
        }
    }

    fn inner(&self, other: &[Complex64]) -> Complex64 {
        self.amp
            .iter()
            .zip(other)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }
}

/// Encodes `amps[0]·|L0⟩ + amps[1]·|L1⟩` on a single patch by projecting
/// the seeded bare state onto every plaquette's `+1` eigenspace.
///
/// The returned vector is ordered by the patch's canonical site list
/// (first site = most significant bit) and carries the norm of `amps`.
pub fn dense_encode(
    patch: &PlanarPatch,
    amps: [Complex64; 2],
) -> Result<Vec<Complex64>, SurfaceError> {
    let sites = patch.sites();
    let mut reg = DenseRegister::new(&sites)?;
    let xl = reg.mask_of(&patch.x_logical_sites())?;
    reg.amp[0] = amps[0];
    reg.amp[xl] = amps[1];
    for plq in patch.plaquettes() {
        let (x, z) = reg.plaquette_masks(&plq)?;
        reg.project(x, z, 1);
    }
    let input_norm2 = amps[0].norm_sqr() + amps[1].norm_sqr();
    let norm2 = reg.norm2();
    if norm2 <= 0.0 {
        return Err(SurfaceError::InvalidState(
            "plaquette projection annihilated the seeded state".into(),
        ));
    }
    reg.scale((input_norm2 / norm2).sqrt());
    Ok(reg.amp)
}

/// Reads the logical amplitudes back out of a dense patch state.
///
/// Returns `([⟨L0|ψ⟩, ⟨L1|ψ⟩], leakage)` where leakage is the squared
/// norm lying outside the code space.
pub fn dense_decode(
    patch: &PlanarPatch,
    amp: &[Complex64],
) -> Result<([Complex64; 2], f64), SurfaceError> {
    let sites = patch.sites();
    if amp.len() != 1 << sites.len() {
        return Err(SurfaceError::InvalidState(format!(
            "state has {} amplitudes but the patch needs {}",
            amp.len(),
            1usize << sites.len()
        )));
    }
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let l0 = dense_encode(patch, [one, zero])?;
    let l1 = dense_encode(patch, [zero, one])?;
    let mut reg = DenseRegister::new(&sites)?;
    reg.amp = l0;
    let a0 = reg.inner(amp);
    reg.amp = l1;
    let a1 = reg.inner(amp);
    let total: f64 = amp.iter().map(|a| a.norm_sqr()).sum();
    let leakage = total - a0.norm_sqr() - a1.norm_sqr();
    Ok(([a0, a1], leakage))
}

/// Expectation of a logical Pauli on a dense patch state.
pub fn dense_logical_expectation(
    patch: &PlanarPatch,
    amp: &[Complex64],
    basis: crate::workspace::PauliBasis,
) -> Result<f64, SurfaceError> {
    use crate::workspace::PauliBasis;
    let sites = patch.sites();
    let mut reg = DenseRegister::new(&sites)?;
    reg.amp = amp.to_vec();
    let xl = reg.mask_of(&patch.x_logical_sites())?;
    let zl = reg.mask_of(&patch.z_logical_sites())?;
    let mut work = DenseRegister::new(&sites)?;
    work.amp = amp.to_vec();
    let mut phase = Complex64::new(1.0, 0.0);
    match basis {
        PauliBasis::X => work.apply(xl, 0),
        PauliBasis::Z => work.apply(0, zl),
        PauliBasis::Y => {
            // Y_L = i · X_L · Z_L; apply Z first, then X.
            work.apply(0, zl);
            work.apply(xl, 0);
            phase = Complex64::new(0.0, 1.0);
        }
    }
    Ok((reg.inner(&work.amp) * phase).re)
}

/// One fully-resolved merge branch of the dense simulation.
#[derive(Debug, Clone)]
pub struct DenseMergeBranch {
    /// Join plaquette outcome bits, in grid order.
    pub joins: Vec<u8>,
    /// Seam gauge pair outcome bits.
    pub gauge: Vec<u8>,
    /// Logical outcome bit (parity of `joins`).
    pub outcome_bit: u8,
    /// Probability of this exact outcome pattern.
    pub probability: f64,
    /// Squared overlap of the decoded child state with the Kraus branch.
    pub fidelity: f64,
    /// Squared norm left outside the child code space after corrections.
    pub leakage: f64,
}

/// Dense enumeration of every branch of a distance-2 merge.
#[derive(Debug, Clone)]
pub struct DenseMergeReport {
    pub op: OpKind,
    pub conv: String,
    pub qubits: usize,
    pub branches: Vec<DenseMergeBranch>,
    /// Total probability observed for outcome bits 0 and 1.
    pub observed_probability: [f64; 2],
    /// Kraus-model probability for outcome bits 0 and 1.
    pub predicted_probability: [f64; 2],
    pub min_fidelity: f64,
    pub max_leakage: f64,
}

/// Runs a full dense merge of two distance-2 patches prepared with logical
/// amplitudes `amps1` and `amps2`, enumerating all join and gauge outcomes.
///
/// Every correction the stabilizer protocol defers to the Pauli frame is
/// applied here as an actual operator, so each branch's decoded state is
/// directly comparable to `merge_kraus(kind, conv, M)` acting on
/// `amps1 ⊗ amps2`.
pub fn dense_merge_check(
    kind: OpKind,
    conv: FrameConvention,
    amps1: [Complex64; 2],
    amps2: [Complex64; 2],
) -> Result<DenseMergeReport, SurfaceError> {
    if kind.is_split() {
        return Err(SurfaceError::InvalidState(
            "dense merge check only handles merges".into(),
        ));
    }
    let rough = kind == OpKind::RoughMerge;
    let (patch_a, patch_b, child, seam) = if rough {
        (
            PlanarPatch::new((0, 0), 2, 2)?,
            PlanarPatch::new((0, 4), 2, 2)?,
            PlanarPatch::new((0, 0), 2, 4)?,
            (1, 3),
        )
    } else {
        (
            PlanarPatch::new((0, 0), 2, 2)?,
            PlanarPatch::new((4, 0), 2, 2)?,
            PlanarPatch::new((0, 0), 4, 2)?,
            (3, 1),
        )
    };
    let sites = child.sites();
    let n = sites.len();

    // Base state: both parents encoded in place, seam qubit prepared.
    let mut base = DenseRegister::new(&sites)?;
    let xa = base.mask_of(&patch_a.x_logical_sites())?;
    let xb = base.mask_of(&patch_b.x_logical_sites())?;
    base.amp[0] = amps1[0] * amps2[0];
    base.amp[xa] = amps1[1] * amps2[0];
    base.amp[xb] = amps1[0] * amps2[1];
    base.amp[xa | xb] = amps1[1] * amps2[1];
    for plq in patch_a.plaquettes().iter().chain(patch_b.plaquettes().iter()) {
        let (x, z) = base.plaquette_masks(plq)?;
        base.project(x, z, 1);
    }
    let seam_mask = base.mask_of(&[seam])?;
    if rough {
        // |0⟩ → |+⟩ on the seam qubit.
        base.project(seam_mask, 0, 1);
        base.scale(std::f64::consts::SQRT_2);
    }
    let norm2 = base.norm2();
    if norm2 <= 0.0 {
        return Err(SurfaceError::InvalidState(
            "encoding annihilated the parent states".into(),
        ));
    }
    base.scale(1.0 / norm2.sqrt());

    // Seam plaquettes of the child: the joins and the facing gauge pair.
    let joins: Vec<Plaquette> = if rough {
        child
            .x_vertices()
            .into_iter()
            .filter(|p| p.center.1 == seam.1)
            .collect()
    } else {
        child
            .z_faces()
            .into_iter()
            .filter(|p| p.center.0 == seam.0)
            .collect()
    };
    let (gauge_left, gauge_right) = if rough {
        let f = |c: Site| {
            child
                .z_faces()
                .into_iter()
                .find(|p| p.center == c)
                .expect("seam-adjacent face")
        };
        (f((1, 2)), f((1, 4)))
    } else {
        let f = |c: Site| {
            child
                .x_vertices()
                .into_iter()
                .find(|p| p.center == c)
                .expect("seam-adjacent vertex")
        };
        (f((2, 1)), f((4, 1)))
    };

    // Kraus predictions per logical branch.
    let psi1 = ComplexMatrix::column(&amps1).expect("two amplitudes");
    let psi2 = ComplexMatrix::column(&amps2).expect("two amplitudes");
    let joint = psi1.kron(&psi2);
    let mut predicted_probability = [0.0f64; 2];
    let mut predicted_state: Vec<Vec<Complex64>> = Vec::new();
    for m in 0..2u8 {
        let k = merge_kraus(kind.surgery_kind(), conv, m);
        let out = k.matmul(&joint).expect("2x1 branch state");
        let v = [out.get(0, 0), out.get(1, 0)];
        let p = v[0].norm_sqr() + v[1].norm_sqr();
        predicted_probability[m as usize] = p;
        let f = if p > 0.0 { 1.0 / p.sqrt() } else { 0.0 };
        predicted_state.push(vec![v[0] * f, v[1] * f]);
    }

    let mut branches = Vec::new();
    let mut observed_probability = [0.0f64; 2];
    for pattern in 0..1u32 << joins.len() {
        let join_bits: Vec<u8> = (0..joins.len())
            .map(|k| ((pattern >> (joins.len() - 1 - k)) & 1) as u8)
            .collect();
        for g in 0..2u8 {
            let mut leaf = DenseRegister::new(&sites)?;
            leaf.amp = base.amp.clone();
            for (plq, &bit) in joins.iter().zip(&join_bits) {
                let (x, z) = leaf.plaquette_masks(plq)?;
                leaf.project(x, z, if bit == 0 { 1 } else { -1 });
            }
            let (gx, gz) = leaf.plaquette_masks(&gauge_left)?;
            let w = leaf.project(gx, gz, if g == 0 { 1 } else { -1 });
            if w < 1e-15 {
                continue;
            }

            // Corrections, applied as actual operators.
            for (plq, &bit) in joins.iter().zip(&join_bits) {
                if bit == 0 {
                    continue;
                }
                let parent = match conv {
                    FrameConvention::CorrectFirst => &patch_a,
                    FrameConvention::CorrectSecond => &patch_b,
                };
                let chain: Vec<Site> = if rough {
                    (0..parent.w())
                        .map(|k| (plq.center.0, parent.origin().1 + 2 * k as i32))
                        .collect()
                } else {
                    (0..parent.h())
                        .map(|k| (parent.origin().0 + 2 * k as i32, plq.center.1))
                        .collect()
                };
                let m = leaf.mask_of(&chain)?;
                if rough {
                    leaf.apply(0, m); // Z chain repairs a −1 join X-vertex
                } else {
                    leaf.apply(m, 0); // X chain repairs a −1 join Z-face
                }
            }
            if g == 1 {
                if rough {
                    leaf.apply(seam_mask, 0);
                } else {
                    leaf.apply(0, seam_mask);
                }
            }
            let (grx, grz) = leaf.plaquette_masks(&gauge_right)?;
            let w_after = leaf.project(grx, grz, 1);
            if (w_after - w).abs() > 1e-12 {
                return Err(SurfaceError::InvalidState(format!(
                    "seam gauge pair decorrelated in the dense run: \
                     weight {w:.3e} became {w_after:.3e}"
                )));
            }

            leaf.scale(1.0 / w.sqrt());
            let (decoded, leakage) = dense_decode(&child, &leaf.amp)?;
            let m_bit = join_bits.iter().fold(0u8, |acc, b| acc ^ b);
            let dn = (decoded[0].norm_sqr() + decoded[1].norm_sqr()).sqrt();
            let pred = &predicted_state[m_bit as usize];
            let overlap = (decoded[0].conj() * pred[0] + decoded[1].conj() * pred[1]).norm_sqr();
            let fidelity = if dn > 0.0 { overlap / (dn * dn) } else { 0.0 };
            observed_probability[m_bit as usize] += w;
            branches.push(DenseMergeBranch {
                joins: join_bits.clone(),
                gauge: vec![g],
                outcome_bit: m_bit,
                probability: w,
                fidelity,
                leakage,
            });
        }
    }

    let min_fidelity = branches.iter().fold(1.0f64, |m, b| m.min(b.fidelity));
    let max_leakage = branches
        .iter()
        .fold(0.0f64, |m, b| m.max(b.leakage.abs()));
    Ok(DenseMergeReport {
        op: kind,
        conv: conv.to_string(),
        qubits: n,
        branches,
        observed_probability,
        predicted_probability,
        min_fidelity,
        max_leakage,
    })
}
