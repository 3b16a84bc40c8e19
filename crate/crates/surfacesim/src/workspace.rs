//! A lattice workspace: patches laid out on one grid, one tableau, one frame.
//!
//! The workspace owns the global site→qubit assignment, the stabilizer
//! tableau holding the joint physical state, the Pauli frame of deferred
//! corrections, and the set of live patches by label. Splits and merges are
//! performed in place: they measure physical operators, translate the
//! outcomes into frame updates, and retire/register patches.
//!
//! Outcome conventions match the logical layer: bit `0` means the `+1`
//! eigenvalue was observed. Every outcome reported by an operation is
//! *frame-adjusted* — it is the outcome the experimenter would reconstruct
//! after accounting for all corrections deferred so far. Forced outcomes
//! are specified in the same adjusted picture and are honoured exactly when
//! the underlying measurement is random.

use std::collections::BTreeMap;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::frame::PauliFrame;
use crate::geometry::{PlanarPatch, Plaquette, PlaquetteKind, Site};
use crate::tableau::{PauliString, StabilizerTableau};
use crate::SurfaceError;

pub use surgery::FrameConvention;

/// A single-qubit logical Pauli basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PauliBasis {
    X,
    Y,
    Z,
}

impl PauliBasis {
    pub const ALL: [PauliBasis; 3] = [PauliBasis::X, PauliBasis::Y, PauliBasis::Z];

    pub fn as_char(self) -> char {
        match self {
            PauliBasis::X => 'X',
            PauliBasis::Y => 'Y',
            PauliBasis::Z => 'Z',
        }
    }
}

/// The six single-qubit stabilizer states a patch can be initialized to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LogicalState {
    Zero,
    One,
    Plus,
    Minus,
    PlusI,
    MinusI,
}

impl LogicalState {
    pub const ALL: [LogicalState; 6] = [
        LogicalState::Zero,
        LogicalState::One,
        LogicalState::Plus,
        LogicalState::Minus,
        LogicalState::PlusI,
        LogicalState::MinusI,
    ];

    /// Display name, e.g. `|0⟩` or `|i−⟩`.
    pub fn name(self) -> &'static str {
        match self {
            LogicalState::Zero => "|0⟩",
            LogicalState::One => "|1⟩",
            LogicalState::Plus => "|+⟩",
            LogicalState::Minus => "|−⟩",
            LogicalState::PlusI => "|i+⟩",
            LogicalState::MinusI => "|i−⟩",
        }
    }

    /// The state as a two-component vector over the computational basis.
    pub fn amplitudes(self) -> [num_complex::Complex64; 2] {
        use num_complex::Complex64;
        let s = std::f64::consts::FRAC_1_SQRT_2;
        match self {
            LogicalState::Zero => [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
            LogicalState::One => [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
            LogicalState::Plus => [Complex64::new(s, 0.0), Complex64::new(s, 0.0)],
            LogicalState::Minus => [Complex64::new(s, 0.0), Complex64::new(-s, 0.0)],
            LogicalState::PlusI => [Complex64::new(s, 0.0), Complex64::new(0.0, s)],
            LogicalState::MinusI => [Complex64::new(s, 0.0), Complex64::new(0.0, -s)],
        }
    }
}

impl FromStr for LogicalState {
    type Err = SurfaceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let core = s
            .trim()
            .trim_start_matches('|')
            .trim_end_matches('⟩')
            .trim_end_matches('>');
        match core {
            "0" => Ok(LogicalState::Zero),
            "1" => Ok(LogicalState::One),
            "+" => Ok(LogicalState::Plus),
            "-" | "−" => Ok(LogicalState::Minus),
            "i+" => Ok(LogicalState::PlusI),
            "i-" | "i−" => Ok(LogicalState::MinusI),
            _ => Err(SurfaceError::Parse(format!("unknown logical state {s:?}"))),
        }
    }
}

/// Which boundary a split's correction chains run to.
///
/// `Low` is the boundary with the smaller coordinate: the top (smooth)
/// boundary for a rough split, the left (rough) boundary for a smooth one.
/// The two choices differ by the stabilizer `X_L⊗X_L` (resp. `Z_L⊗Z_L`),
/// so mixing them across the two daughters is a deliberate corruption used
/// as a negative control.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ChainBoundary {
    #[default]
    Low,
    High,
}

/// Per-daughter correction-chain choices for a split.
#[derive(Debug, Clone, Copy, Default)]
pub struct SplitFixup {
    pub first: ChainBoundary,
    pub second: ChainBoundary,
}

/// Outcome summary of a physical split.
#[derive(Debug, Clone)]
pub struct SplitRecord {
    /// Frame-adjusted outcomes of the measured seam qubits, in grid order.
    pub outcomes: Vec<u8>,
    /// Labels of the two daughter patches (low side first).
    pub daughters: (String, String),
}

/// Outcome summary of a physical merge.
#[derive(Debug, Clone)]
pub struct MergeRecord {
    /// Frame-adjusted outcomes of the join plaquettes, in grid order.
    pub joins: Vec<u8>,
    /// Frame-adjusted outcomes of the seam gauge pairs, in grid order.
    pub gauge: Vec<u8>,
    /// The logical merge outcome bit: parity of `joins` (0 ⇔ `M = +1`).
    pub outcome_bit: u8,
    /// Label of the merged child patch.
    pub child: String,
}

/// One logged measurement outcome (frame-adjusted).
#[derive(Debug, Clone)]
pub struct OutcomeRecord {
    pub what: String,
    pub bit: u8,
}

/// Patches, tableau, and frame for one lattice experiment.
#[derive(Debug, Clone)]
pub struct LatticeWorkspace {
    site_index: BTreeMap<Site, usize>,
    tableau: StabilizerTableau,
    frame: PauliFrame,
    patches: BTreeMap<String, PlanarPatch>,
    rng: ChaCha8Rng,
    log: Vec<OutcomeRecord>,
}

impl LatticeWorkspace {
    /// Creates an empty workspace with a deterministic random stream.
    pub fn new(seed: u64) -> Self {
        Self {
            site_index: BTreeMap::new(),
            tableau: StabilizerTableau::new(0).expect("empty tableau"),
            frame: PauliFrame::new(),
            patches: BTreeMap::new(),
            rng: ChaCha8Rng::seed_from_u64(seed),
            log: Vec::new(),
        }
    }

    /// The live patch registered under `label`.
    pub fn patch(&self, label: &str) -> Result<&PlanarPatch, SurfaceError> {
        self.patches
            .get(label)
            .ok_or_else(|| SurfaceError::UnknownPatch(label.to_string()))
    }

    /// Labels of all live patches.
    pub fn patch_labels(&self) -> Vec<String> {
        self.patches.keys().cloned().collect()
    }

    /// Number of physical qubits allocated so far (including retired ones).
    pub fn qubit_count(&self) -> usize {
        self.tableau.qubit_count()
    }

    /// All frame-adjusted outcomes recorded so far, in order.
    pub fn outcome_log(&self) -> &[OutcomeRecord] {
        &self.log
    }

    fn site(&self, s: Site) -> Result<usize, SurfaceError> {
        self.site_index
            .get(&s)
            .copied()
            .ok_or(SurfaceError::UnknownSite(s.0, s.1))
    }

    fn alloc_site(&mut self, s: Site) -> Result<usize, SurfaceError> {
        if self.site_index.contains_key(&s) {
            return Err(SurfaceError::Geometry(format!(
                "site {s:?} is already occupied"
            )));
        }
        let q = self.tableau.add_qubit()?;
        self.site_index.insert(s, q);
        Ok(q)
    }

    /// Builds the Pauli acting as `kind` on every listed site.
    fn pauli_on(&self, sites: &[Site], kind: PlaquetteKind) -> Result<PauliString, SurfaceError> {
        let mut p = PauliString::identity();
        for &s in sites {
            let q = self.site(s)?;
            let single = match kind {
                PlaquetteKind::ZFace => PauliString::z_on(q),
                PlaquetteKind::XVertex => PauliString::x_on(q),
            };
            p = p.mul(&single);
        }
        Ok(p)
    }

    fn plaquette_pauli(&self, plq: &Plaquette) -> Result<PauliString, SurfaceError> {
        self.pauli_on(&plq.sites, plq.kind)
    }

    /// Physical representative of a logical Pauli on one patch.
    pub fn logical_pauli(
        &self,
        label: &str,
        basis: PauliBasis,
    ) -> Result<PauliString, SurfaceError> {
        let patch = self.patch(label)?.clone();
        let z_rep = self.pauli_on(&patch.z_logical_sites(), PlaquetteKind::ZFace)?;
        let x_rep = self.pauli_on(&patch.x_logical_sites(), PlaquetteKind::XVertex)?;
        Ok(match basis {
            PauliBasis::Z => z_rep,
            PauliBasis::X => x_rep,
            PauliBasis::Y => {
                let mut y = x_rep.mul(&z_rep);
                y.r = (y.r + 1) % 4;
                y
            }
        })
    }

    /// Frame-adjusted expectation of one patch's logical Pauli.
    pub fn logical_expectation(
        &self,
        label: &str,
        basis: PauliBasis,
    ) -> Result<Option<i8>, SurfaceError> {
        self.logical_product_expectation(&[(label, basis)])
    }

    /// Frame-adjusted expectation of a product of logical Paulis across
    /// several (distinct) patches.
    pub fn logical_product_expectation(
        &self,
        factors: &[(&str, PauliBasis)],
    ) -> Result<Option<i8>, SurfaceError> {
        let mut p = PauliString::identity();
        for &(label, basis) in factors {
            p = p.mul(&self.logical_pauli(label, basis)?);
        }
        let raw = self.tableau.expectation(&p)?;
        Ok(self.frame.adjust_expectation(raw, &p))
    }

    /// Measures a Pauli, forcing the *frame-adjusted* outcome when random.
    fn measure_adjusted(
        &mut self,
        p: &PauliString,
        forced: Option<u8>,
        what: &str,
    ) -> Result<(u8, bool), SurfaceError> {
        let flip = u8::from(self.frame.flips(p));
        let raw_forced = forced.map(|b| (b & 1) ^ flip);
        let m = self.tableau.measure(p, raw_forced, &mut self.rng)?;
        let adjusted = m.bit ^ flip;
        self.log.push(OutcomeRecord {
            what: what.to_string(),
            bit: adjusted,
        });
        Ok((adjusted, m.random))
    }

    /// Allocates, stabilizes, and registers a fresh patch in `state`.
    ///
    /// All plaquettes are driven to `+1`; the logical qubit is prepared in
    /// the requested stabilizer state.
    pub fn init_patch(
        &mut self,
        label: &str,
        patch: PlanarPatch,
        state: LogicalState,
    ) -> Result<(), SurfaceError> {
        if self.patches.contains_key(label) {
            return Err(SurfaceError::Geometry(format!(
                "patch label {label:?} is already in use"
            )));
        }
        for s in patch.sites() {
            self.alloc_site(s)?;
        }
        for plq in patch.plaquettes() {
            let p = self.plaquette_pauli(&plq)?;
            self.measure_adjusted(&p, Some(0), &format!("init plaquette {:?}", plq.center))?;
        }
        self.patches.insert(label.to_string(), patch);
        let (basis, bit) = match state {
            LogicalState::Zero => (PauliBasis::Z, 0),
            LogicalState::One => (PauliBasis::Z, 1),
            LogicalState::Plus => (PauliBasis::X, 0),
            LogicalState::Minus => (PauliBasis::X, 1),
            LogicalState::PlusI => (PauliBasis::Y, 0),
            LogicalState::MinusI => (PauliBasis::Y, 1),
        };
        let p = self.logical_pauli(label, basis)?;
        let (got, _) = self.measure_adjusted(&p, Some(bit), &format!("init logical {label}"))?;
        if got != bit {
            // The logical was deterministic with the wrong sign (only possible
            // for Z after plaquette stabilization, i.e. |1⟩): apply the
            // conjugate logical operator physically to flip it.
            let flip = match basis {
                PauliBasis::Z => self.logical_pauli(label, PauliBasis::X)?,
                PauliBasis::X | PauliBasis::Y => self.logical_pauli(label, PauliBasis::Z)?,
            };
            self.tableau.apply_pauli(&flip);
        }
        Ok(())
    }

    /// Checks that every plaquette of a live patch stabilizes the current
    /// state with frame-adjusted sign `+1`.
    pub fn assert_patch_stabilized(&self, label: &str) -> Result<(), SurfaceError> {
        let patch = self.patch(label)?.clone();
        for plq in patch.plaquettes() {
            let p = self.plaquette_pauli(&plq)?;
            let e = self.frame.adjust_expectation(self.tableau.expectation(&p)?, &p);
            if e != Some(1) {
                return Err(SurfaceError::InvalidState(format!(
                    "plaquette {:?} of patch {label:?} is not a +1 stabilizer (value {e:?})",
                    plq.center
                )));
            }
        }
        Ok(())
    }

    fn take_patch(&mut self, label: &str) -> Result<PlanarPatch, SurfaceError> {
        self.patches
            .remove(label)
            .ok_or_else(|| SurfaceError::UnknownPatch(label.to_string()))
    }

    fn register(&mut self, label: &str, patch: PlanarPatch) -> Result<(), SurfaceError> {
        if self.patches.contains_key(label) {
            return Err(SurfaceError::Geometry(format!(
                "patch label {label:?} is already in use"
            )));
        }
        self.patches.insert(label.to_string(), patch);
        Ok(())
    }

    /// Splits a patch along a vertical seam between primal columns
    /// `w1−1` and `w1`, measuring the seam's dual qubits in the `Z` basis.
    ///
    /// The mother of width `w` becomes daughters of widths `w1` and `w−w1`.
    /// `forced` (length `h−1`) pins the seam outcomes where they are random.
    /// Each `−1` outcome leaves one `−1` boundary Z-face on *each* daughter;
    /// both are repaired by frame chains of `X` running to the boundary
    /// chosen in `fixup`.
    pub fn rough_split(
        &mut self,
        mother: &str,
        w1: usize,
        first: &str,
        second: &str,
        forced: Option<&[u8]>,
        fixup: SplitFixup,
    ) -> Result<SplitRecord, SurfaceError> {
        let patch = self.take_patch(mother)?;
        let (h, w) = (patch.h(), patch.w());
        if w1 < 2 || w < w1 + 2 {
            self.patches.insert(mother.to_string(), patch);
            return Err(SurfaceError::Geometry(format!(
                "rough split of width-{w} patch at {w1} leaves a daughter below distance 2"
            )));
        }
        if let Some(f) = forced {
            if f.len() != h - 1 {
                self.patches.insert(mother.to_string(), patch);
                return Err(SurfaceError::Geometry(format!(
                    "rough split of a height-{h} patch takes {} forced bits, got {}",
                    h - 1,
                    f.len()
                )));
            }
        }
        let (r0, c0) = patch.origin();
        let cut = c0 + 2 * w1 as i32 - 1;
        let mut outcomes = Vec::with_capacity(h - 1);
        for i in 0..h - 1 {
            let dual = (r0 + 2 * i as i32 + 1, cut);
            let p = PauliString::z_on(self.site(dual)?);
            let (bit, _) =
                self.measure_adjusted(&p, forced.map(|f| f[i]), &format!("split seam {dual:?}"))?;
            outcomes.push(bit);
            if bit == 1 {
                let chain_a = self.split_chain_sites(r0, cut - 1, h, i, fixup.first);
                let chain_b = self.split_chain_sites(r0, cut + 1, h, i, fixup.second);
                let pa = self.pauli_on(&chain_a, PlaquetteKind::XVertex)?;
                let pb = self.pauli_on(&chain_b, PlaquetteKind::XVertex)?;
                self.frame.record(&pa);
                self.frame.record(&pb);
            }
        }
        self.register(first, PlanarPatch::new((r0, c0), h, w1)?)?;
        self.register(second, PlanarPatch::new((r0, cut + 1), h, w - w1)?)?;
        Ok(SplitRecord {
            outcomes,
            daughters: (first.to_string(), second.to_string()),
        })
    }

    /// Vertical correction chain for a rough-split defect at dual row
    /// index `i`, running along primal column `col` to the chosen boundary.
    fn split_chain_sites(
        &self,
        r0: i32,
        col: i32,
        h: usize,
        i: usize,
        boundary: ChainBoundary,
    ) -> Vec<Site> {
        match boundary {
            ChainBoundary::Low => (0..=i).map(|k| (r0 + 2 * k as i32, col)).collect(),
            ChainBoundary::High => (i + 1..h).map(|k| (r0 + 2 * k as i32, col)).collect(),
        }
    }

    /// Splits a patch along a horizontal seam between primal rows
    /// `h1−1` and `h1`, measuring the seam's dual qubits in the `X` basis.
    ///
    /// The mirror of [`rough_split`](Self::rough_split) under exchanging
    /// rows with columns and `X` with `Z`: defects are `−1` boundary
    /// X-vertices, repaired by frame chains of `Z` running to the left or
    /// right rough boundary.
    pub fn smooth_split(
        &mut self,
        mother: &str,
        h1: usize,
        first: &str,
        second: &str,
        forced: Option<&[u8]>,
        fixup: SplitFixup,
    ) -> Result<SplitRecord, SurfaceError> {
        let patch = self.take_patch(mother)?;
        let (h, w) = (patch.h(), patch.w());
        if h1 < 2 || h < h1 + 2 {
            self.patches.insert(mother.to_string(), patch);
            return Err(SurfaceError::Geometry(format!(
                "smooth split of height-{h} patch at {h1} leaves a daughter below distance 2"
            )));
        }
        if let Some(f) = forced {
            if f.len() != w - 1 {
                self.patches.insert(mother.to_string(), patch);
                return Err(SurfaceError::Geometry(format!(
                    "smooth split of a width-{w} patch takes {} forced bits, got {}",
                    w - 1,
                    f.len()
                )));
            }
        }
        let (r0, c0) = patch.origin();
        let cut = r0 + 2 * h1 as i32 - 1;
        let mut outcomes = Vec::with_capacity(w - 1);
        for j in 0..w - 1 {
            let dual = (cut, c0 + 2 * j as i32 + 1);
            let p = PauliString::x_on(self.site(dual)?);
            let (bit, _) =
                self.measure_adjusted(&p, forced.map(|f| f[j]), &format!("split seam {dual:?}"))?;
            outcomes.push(bit);
            if bit == 1 {
                let chain_a = self.split_chain_cols(c0, cut - 1, w, j, fixup.first);
                let chain_b = self.split_chain_cols(c0, cut + 1, w, j, fixup.second);
                let pa = self.pauli_on(&chain_a, PlaquetteKind::ZFace)?;
                let pb = self.pauli_on(&chain_b, PlaquetteKind::ZFace)?;
                self.frame.record(&pa);
                self.frame.record(&pb);
            }
        }
        self.register(first, PlanarPatch::new((r0, c0), h1, w)?)?;
        self.register(second, PlanarPatch::new((cut + 1, c0), h - h1, w)?)?;
        Ok(SplitRecord {
            outcomes,
            daughters: (first.to_string(), second.to_string()),
        })
    }

    /// Horizontal correction chain for a smooth-split defect at dual column
    /// index `j`, running along primal row `row` to the chosen boundary.
    fn split_chain_cols(
        &self,
        c0: i32,
        row: i32,
        w: usize,
        j: usize,
        boundary: ChainBoundary,
    ) -> Vec<Site> {
        match boundary {
            ChainBoundary::Low => (0..=j).map(|k| (row, c0 + 2 * k as i32)).collect(),
            ChainBoundary::High => (j + 1..w).map(|k| (row, c0 + 2 * k as i32)).collect(),
        }
    }

    /// Merges two patches along their facing rough boundaries.
    ///
    /// The parents must share their height and row origin and be exactly one
    /// dual column apart. Fresh seam qubits are prepared in `|+⟩`, the `h`
    /// join X-vertices are measured (`forced` pins them where random), and
    /// the parity of their outcomes is the logical `X_L⊗X_L` outcome. Each
    /// `−1` join plaquette is repaired — and the corresponding logical `Z`
    /// dressing realized — by a frame chain of `Z` through the convention
    /// parent to its outer rough boundary. Finally the `h−1` seam gauge
    /// pairs of Z-faces are measured (always forced to `+1` when `forced`
    /// is given) and repaired by frame `X` on the shared seam qubit.
    pub fn rough_merge(
        &mut self,
        first: &str,
        second: &str,
        child: &str,
        conv: FrameConvention,
        forced: Option<&[u8]>,
    ) -> Result<MergeRecord, SurfaceError> {
        let a = self.patch(first)?.clone();
        let b = self.patch(second)?.clone();
        let h = a.h();
        if b.h() != h || b.origin().0 != a.origin().0 {
            return Err(SurfaceError::Geometry(format!(
                "rough merge needs parents of equal height on the same rows; \
                 got {first:?} at {:?} ({},{}) and {second:?} at {:?} ({},{})",
                a.origin(),
                a.h(),
                a.w(),
                b.origin(),
                b.h(),
                b.w()
            )));
        }
        let (r0, c0) = a.origin();
        let cut = c0 + 2 * a.w() as i32 - 1;
        if b.origin().1 != cut + 1 {
            return Err(SurfaceError::Geometry(format!(
                "rough merge needs parents one dual column apart; \
                 {second:?} starts at column {} but the seam is at {cut}",
                b.origin().1
            )));
        }
        if let Some(f) = forced {
            if f.len() != h {
                return Err(SurfaceError::Geometry(format!(
                    "rough merge of height-{h} patches takes {h} forced bits, got {}",
                    f.len()
                )));
            }
        }

        // Seam qubits, prepared in |+⟩.
        for i in 0..h - 1 {
            let dual = (r0 + 2 * i as i32 + 1, cut);
            let q = self.alloc_site(dual)?;
            self.tableau
                .measure(&PauliString::x_on(q), Some(0), &mut self.rng)?;
        }

        let merged = PlanarPatch::new((r0, c0), h, a.w() + b.w())?;

        // Join X-vertices along the seam.
        let mut joins = Vec::with_capacity(h);
        for i in 0..h {
            let center = (r0 + 2 * i as i32, cut);
            let plq = merged
                .x_vertices()
                .into_iter()
                .find(|p| p.center == center)
                .expect("seam vertex exists in the merged patch");
            let p = self.plaquette_pauli(&plq)?;
            let (bit, _) =
                self.measure_adjusted(&p, forced.map(|f| f[i]), &format!("join {center:?}"))?;
            joins.push(bit);
            if bit == 1 {
                let parent = match conv {
                    FrameConvention::CorrectFirst => &a,
                    FrameConvention::CorrectSecond => &b,
                };
                let row: Vec<Site> = (0..parent.w())
                    .map(|k| (center.0, parent.origin().1 + 2 * k as i32))
                    .collect();
                let chain = self.pauli_on(&row, PlaquetteKind::ZFace)?;
                self.frame.record(&chain);
            }
        }

        // Seam gauge pairs: facing boundary Z-faces that regrew to weight 4.
        let mut gauge = Vec::with_capacity(h - 1);
        for i in 0..h - 1 {
            let row = r0 + 2 * i as i32 + 1;
            let left = merged
                .z_faces()
                .into_iter()
                .find(|p| p.center == (row, cut - 1))
                .expect("seam-adjacent face exists");
            let right = merged
                .z_faces()
                .into_iter()
                .find(|p| p.center == (row, cut + 1))
                .expect("seam-adjacent face exists");
            let pl = self.plaquette_pauli(&left)?;
            let pr = self.plaquette_pauli(&right)?;
            let (bit, _) = self.measure_adjusted(
                &pl,
                forced.map(|_| 0),
                &format!("seam gauge {:?}", left.center),
            )?;
            let (bit_r, random_r) =
                self.measure_adjusted(&pr, None, &format!("seam gauge {:?}", right.center))?;
            if random_r || bit_r != bit {
                return Err(SurfaceError::InvalidState(format!(
                    "seam gauge pair at row {row} decorrelated: {bit} vs {bit_r}"
                )));
            }
            gauge.push(bit);
            if bit == 1 {
                let q = self.site((row, cut))?;
                self.frame.record(&PauliString::x_on(q));
            }
        }

        self.take_patch(first)?;
        self.take_patch(second)?;
        self.register(child, merged)?;
        let outcome_bit = joins.iter().fold(0, |acc, b| acc ^ b);
        Ok(MergeRecord {
            joins,
            gauge,
            outcome_bit,
            child: child.to_string(),
        })
    }

    /// Merges two patches along their facing smooth boundaries.
    ///
    /// The mirror of [`rough_merge`](Self::rough_merge): seam qubits start
    /// in `|0⟩`, the `w` join Z-faces are measured (parity = the logical
    /// `Z_L⊗Z_L` outcome), each `−1` join is repaired by a frame chain of
    /// `X` through the convention parent to its outer smooth boundary, and
    /// the seam gauge pairs of X-vertices are repaired by frame `Z` on the
    /// shared seam qubit.
    pub fn smooth_merge(
        &mut self,
        first: &str,
        second: &str,
        child: &str,
        conv: FrameConvention,
        forced: Option<&[u8]>,
    ) -> Result<MergeRecord, SurfaceError> {
        let a = self.patch(first)?.clone();
        let b = self.patch(second)?.clone();
        let w = a.w();
        if b.w() != w || b.origin().1 != a.origin().1 {
            return Err(SurfaceError::Geometry(format!(
                "smooth merge needs parents of equal width on the same columns; \
                 got {first:?} at {:?} ({},{}) and {second:?} at {:?} ({},{})",
                a.origin(),
                a.h(),
                a.w(),
                b.origin(),
                b.h(),
                b.w()
            )));
        }
        let (r0, c0) = a.origin();
        let cut = r0 + 2 * a.h() as i32 - 1;
        if b.origin().0 != cut + 1 {
            return Err(SurfaceError::Geometry(format!(
                "smooth merge needs parents one dual row apart; \
                 {second:?} starts at row {} but the seam is at {cut}",
                b.origin().0
            )));
        }
        if let Some(f) = forced {
            if f.len() != w {
                return Err(SurfaceError::Geometry(format!(
                    "smooth merge of width-{w} patches takes {w} forced bits, got {}",
                    f.len()
                )));
            }
        }

        // Seam qubits start in |0⟩ — exactly the state fresh qubits carry.
        for j in 0..w - 1 {
            let dual = (cut, c0 + 2 * j as i32 + 1);
            self.alloc_site(dual)?;
        }

        let merged = PlanarPatch::new((r0, c0), a.h() + b.h(), w)?;

        // Join Z-faces along the seam.
        let mut joins = Vec::with_capacity(w);
        for j in 0..w {
            let center = (cut, c0 + 2 * j as i32);
            let plq = merged
                .z_faces()
                .into_iter()
                .find(|p| p.center == center)
                .expect("seam face exists in the merged patch");
            let p = self.plaquette_pauli(&plq)?;
            let (bit, _) =
                self.measure_adjusted(&p, forced.map(|f| f[j]), &format!("join {center:?}"))?;
            joins.push(bit);
            if bit == 1 {
                let parent = match conv {
                    FrameConvention::CorrectFirst => &a,
                    FrameConvention::CorrectSecond => &b,
                };
                let col: Vec<Site> = (0..parent.h())
                    .map(|k| (parent.origin().0 + 2 * k as i32, center.1))
                    .collect();
                let chain = self.pauli_on(&col, PlaquetteKind::XVertex)?;
                self.frame.record(&chain);
            }
        }

        // Seam gauge pairs: facing boundary X-vertices regrown to weight 4.
        let mut gauge = Vec::with_capacity(w - 1);
        for j in 0..w - 1 {
            let col = c0 + 2 * j as i32 + 1;
            let up = merged
                .x_vertices()
                .into_iter()
                .find(|p| p.center == (cut - 1, col))
                .expect("seam-adjacent vertex exists");
            let down = merged
                .x_vertices()
                .into_iter()
                .find(|p| p.center == (cut + 1, col))
                .expect("seam-adjacent vertex exists");
            let pu = self.plaquette_pauli(&up)?;
            let pd = self.plaquette_pauli(&down)?;
            let (bit, _) = self.measure_adjusted(
                &pu,
                forced.map(|_| 0),
                &format!("seam gauge {:?}", up.center),
            )?;
            let (bit_d, random_d) =
                self.measure_adjusted(&pd, None, &format!("seam gauge {:?}", down.center))?;
            if random_d || bit_d != bit {
                return Err(SurfaceError::InvalidState(format!(
                    "seam gauge pair at column {col} decorrelated: {bit} vs {bit_d}"
                )));
            }
            gauge.push(bit);
            if bit == 1 {
                let q = self.site((cut, col))?;
                self.frame.record(&PauliString::z_on(q));
            }
        }

        self.take_patch(first)?;
        self.take_patch(second)?;
        self.register(child, merged)?;
        let outcome_bit = joins.iter().fold(0, |acc, b| acc ^ b);
        Ok(MergeRecord {
            joins,
            gauge,
            outcome_bit,
            child: child.to_string(),
        })
    }
}
