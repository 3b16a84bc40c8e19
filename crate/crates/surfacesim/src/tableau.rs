//! Stabilizer-tableau simulation of Pauli measurements on up to 64 qubits.
//!
//! The tableau tracks a pure stabilizer state on `n` qubits as `n` stabilizer
//! generators plus `n` paired destabilizers, each stored as a bit-packed
//! Pauli string. Beyond the usual measurement update, two read-only queries
//! drive the lattice experiments here: the deterministic expectation value
//! of an arbitrary Pauli (±1 or "random"), and measurement with a *forced*
//! outcome that is honoured exactly when the measured operator is random —
//! deterministic outcomes can never be overridden.

use rand::Rng;

use crate::SurfaceError;

/// Maximum number of qubits a tableau can hold (masks are single `u64`s).
pub const MAX_QUBITS: usize = 64;

/// A Pauli operator `i^r · X^x · Z^z` on up to 64 qubits.
///
/// Bit `q` of `x` (resp. `z`) marks an `X` (resp. `Z`) factor on qubit `q`;
/// a qubit with both bits set carries `X·Z`, so a Hermitian `Y = i·X·Z`
/// contributes one unit to the phase exponent `r` (mod 4).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PauliString {
    pub x: u64,
    pub z: u64,
    pub r: u8,
}

impl PauliString {
    /// The identity operator.
    pub fn identity() -> Self {
        Self { x: 0, z: 0, r: 0 }
    }

    /// A single-qubit `X`.
    pub fn x_on(qubit: usize) -> Self {
        Self {
            x: 1 << qubit,
            z: 0,
            r: 0,
        }
    }

    /// A single-qubit `Z`.
    pub fn z_on(qubit: usize) -> Self {
        Self {
            x: 0,
            z: 1 << qubit,
            r: 0,
        }
    }

    /// A single-qubit Hermitian `Y = i·X·Z`.
    pub fn y_on(qubit: usize) -> Self {
        Self {
            x: 1 << qubit,
            z: 1 << qubit,
            r: 1,
        }
    }

    /// The product `self · other` in normal form.
    pub fn mul(&self, other: &Self) -> Self {
        let cross = (self.z & other.x).count_ones() as u8;
        Self {
            x: self.x ^ other.x,
            z: self.z ^ other.z,
            r: (self.r + other.r + 2 * cross) % 4,
        }
    }

    /// True when the two operators anticommute.
    pub fn anticommutes(&self, other: &Self) -> bool {
        let overlap =
            (self.x & other.z).count_ones() + (self.z & other.x).count_ones();
        overlap % 2 == 1
    }

    /// True when the operator squares to `+1` (so it is measurable).
    pub fn is_hermitian(&self) -> bool {
        (2 * self.r as u32 + 2 * (self.x & self.z).count_ones()) % 4 == 0
    }

    /// True when the operator acts on no qubits at all.
    pub fn is_identity_support(&self) -> bool {
        self.x == 0 && self.z == 0
    }
}

/// Outcome of a Pauli measurement on the tableau.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MeasureResult {
    /// Outcome bit: `0` for the `+1` eigenvalue, `1` for `−1`.
    pub bit: u8,
    /// Whether the outcome was random (and therefore forceable).
    pub random: bool,
}

/// A pure stabilizer state on `n ≤ 64` qubits, with destabilizers.
#[derive(Debug, Clone)]
pub struct StabilizerTableau {
    n: usize,
    destab: Vec<PauliString>,
    stab: Vec<PauliString>,
}

impl StabilizerTableau {
    /// Creates the all-`|0⟩` state on `n` qubits.
    pub fn new(n: usize) -> Result<Self, SurfaceError> {
        if n > MAX_QUBITS {
            return Err(SurfaceError::Capacity(n));
        }
        Ok(Self {
            n,
            destab: (0..n).map(PauliString::x_on).collect(),
            stab: (0..n).map(PauliString::z_on).collect(),
        })
    }

    /// Number of qubits currently tracked.
    pub fn qubit_count(&self) -> usize {
        self.n
    }

    /// Appends a fresh qubit in `|0⟩` and returns its index.
    pub fn add_qubit(&mut self) -> Result<usize, SurfaceError> {
        if self.n == MAX_QUBITS {
            return Err(SurfaceError::Capacity(self.n + 1));
        }
        let q = self.n;
        self.destab.push(PauliString::x_on(q));
        self.stab.push(PauliString::z_on(q));
        self.n += 1;
        Ok(q)
    }

    /// Conjugates the state by a Pauli operator (applies it as a gate).
    pub fn apply_pauli(&mut self, p: &PauliString) {
        for row in self.destab.iter_mut().chain(self.stab.iter_mut()) {
            if row.anticommutes(p) {
                row.r = (row.r + 2) % 4;
            }
        }
    }

    /// Measures the Hermitian Pauli `p`.
    ///
    /// When the outcome is random, `forced` (if given) selects it;
    /// when the outcome is determined by the state, `forced` is ignored.
    pub fn measure(
        &mut self,
        p: &PauliString,
        forced: Option<u8>,
        rng: &mut impl Rng,
    ) -> Result<MeasureResult, SurfaceError> {
        self.check_measurable(p)?;
        match self.find_anticommuting_stabilizer(p) {
            Some(pivot) => {
                let bit = match forced {
                    Some(b) => b & 1,
                    None => u8::from(rng.gen_bool(0.5)),
                };
                let old = self.stab[pivot];
                for i in 0..self.n {
                    if i != pivot && self.stab[i].anticommutes(p) {
                        self.stab[i] = self.stab[i].mul(&old);
                    }
                    if self.destab[i].anticommutes(p) {
                        self.destab[i] = self.destab[i].mul(&old);
                    }
                }
                self.destab[pivot] = old;
                self.stab[pivot] = PauliString {
                    x: p.x,
                    z: p.z,
                    r: (p.r + 2 * bit) % 4,
                };
                Ok(MeasureResult { bit, random: true })
            }
            None => {
                let bit = self.deterministic_bit(p)?;
                Ok(MeasureResult { bit, random: false })
            }
        }
    }

    /// Expectation value of a Hermitian Pauli without disturbing the state:
    /// `Some(+1)`/`Some(−1)` when determined, `None` when random.
    pub fn expectation(&self, p: &PauliString) -> Result<Option<i8>, SurfaceError> {
        self.check_measurable(p)?;
        if self.find_anticommuting_stabilizer(p).is_some() {
            return Ok(None);
        }
        let bit = self.deterministic_bit(p)?;
        Ok(Some(if bit == 0 { 1 } else { -1 }))
    }

    fn check_measurable(&self, p: &PauliString) -> Result<(), SurfaceError> {
        let mask = if self.n == MAX_QUBITS {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        };
        if p.x & !mask != 0 || p.z & !mask != 0 {
            return Err(SurfaceError::InvalidOperator(
                "Pauli acts on qubits outside the tableau".into(),
            ));
        }
        if !p.is_hermitian() {
            return Err(SurfaceError::InvalidOperator(
                "measured Pauli must square to +1".into(),
            ));
        }
        if p.is_identity_support() {
            return Err(SurfaceError::InvalidOperator(
                "measured Pauli must act on at least one qubit".into(),
            ));
        }
        Ok(())
    }

    fn find_anticommuting_stabilizer(&self, p: &PauliString) -> Option<usize> {
        (0..self.n).find(|&i| self.stab[i].anticommutes(p))
    }

    /// For `p` commuting with every stabilizer, finds the sign `s` such that
    /// `(−1)^s · p` lies in the stabilizer group.
    fn deterministic_bit(&self, p: &PauliString) -> Result<u8, SurfaceError> {
        let mut acc = PauliString::identity();
        for i in 0..self.n {
            if self.destab[i].anticommutes(p) {
                acc = acc.mul(&self.stab[i]);
            }
        }
        if acc.x != p.x || acc.z != p.z {
            return Err(SurfaceError::InvalidOperator(
                "operator is not in the ± stabilizer group despite commuting".into(),
            ));
        }
        let diff = (acc.r + 4 - p.r) % 4;
        if diff % 2 != 0 {
            return Err(SurfaceError::InvalidOperator(
                "stabilizer decomposition produced an imaginary phase".into(),
            ));
        }
        Ok(diff / 2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(7)
    }

    #[test]
    fn fresh_qubits_are_in_the_z_plus_state() {
        let t = StabilizerTableau::new(3).unwrap();
        for q in 0..3 {
            assert_eq!(t.expectation(&PauliString::z_on(q)).unwrap(), Some(1));
            assert_eq!(t.expectation(&PauliString::x_on(q)).unwrap(), None);
        }
    }

    #[test]
    fn forced_outcomes_are_honoured_only_when_random() {
        let mut t = StabilizerTableau::new(1).unwrap();
        // X on |0⟩ is random: forcing −1 must stick.
        let m = t.measure(&PauliString::x_on(0), Some(1), &mut rng()).unwrap();
        assert!(m.random);
        assert_eq!(m.bit, 1);
        // X is now deterministic: forcing +1 cannot override the −1.
        let m = t.measure(&PauliString::x_on(0), Some(0), &mut rng()).unwrap();
        assert!(!m.random);
        assert_eq!(m.bit, 1);
        assert_eq!(t.expectation(&PauliString::x_on(0)).unwrap(), Some(-1));
    }

    #[test]
    fn bell_pair_correlations() {
        let mut t = StabilizerTableau::new(2).unwrap();
        let xx = PauliString::x_on(0).mul(&PauliString::x_on(1));
        let zz = PauliString::z_on(0).mul(&PauliString::z_on(1));
        t.measure(&xx, Some(0), &mut rng()).unwrap();
        assert_eq!(t.expectation(&xx).unwrap(), Some(1));
        assert_eq!(t.expectation(&zz).unwrap(), Some(1));
        // YY = (iXZ)(iXZ) on the Bell pair equals −XX·ZZ → −1.
        let yy = PauliString::y_on(0).mul(&PauliString::y_on(1));
        assert_eq!(t.expectation(&yy).unwrap(), Some(-1));
        // Single-qubit operators stay random.
        assert_eq!(t.expectation(&PauliString::z_on(0)).unwrap(), None);
    }

    #[test]
    fn applying_a_pauli_flips_anticommuting_signs() {
        let mut t = StabilizerTableau::new(1).unwrap();
        t.apply_pauli(&PauliString::x_on(0));
        assert_eq!(t.expectation(&PauliString::z_on(0)).unwrap(), Some(-1));
        t.apply_pauli(&PauliString::y_on(0));
        assert_eq!(t.expectation(&PauliString::z_on(0)).unwrap(), Some(1));
    }

    #[test]
    fn forcing_y_prepares_the_circular_state() {
        let mut t = StabilizerTableau::new(1).unwrap();
        let m = t.measure(&PauliString::y_on(0), Some(1), &mut rng()).unwrap();
        assert!(m.random);
        assert_eq!(t.expectation(&PauliString::y_on(0)).unwrap(), Some(-1));
        assert_eq!(t.expectation(&PauliString::z_on(0)).unwrap(), None);
        assert_eq!(t.expectation(&PauliString::x_on(0)).unwrap(), None);
    }

    #[test]
    fn added_qubits_start_fresh_without_disturbing_the_rest() {
        let mut t = StabilizerTableau::new(1).unwrap();
        t.measure(&PauliString::x_on(0), Some(1), &mut rng()).unwrap();
        let q = t.add_qubit().unwrap();
        assert_eq!(q, 1);
        assert_eq!(t.expectation(&PauliString::z_on(1)).unwrap(), Some(1));
        assert_eq!(t.expectation(&PauliString::x_on(0)).unwrap(), Some(-1));
    }

    #[test]
    fn non_hermitian_operators_are_rejected() {
        let t = StabilizerTableau::new(1).unwrap();
        let xz = PauliString {
            x: 1,
            z: 1,
            r: 0,
        };
        assert!(t.expectation(&xz).is_err());
    }
}
