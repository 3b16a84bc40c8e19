//! Structural invariants of the planar patch across every size in range:
//! stabilizers commute pairwise, are independent over GF(2), and the two
//! boundary logicals commute with everything except each other.

use std::collections::HashMap;

use surfacesim::{PlanarPatch, Plaquette, PlaquetteKind, Site};

fn sizes() -> impl Iterator<Item = (usize, usize)> {
    (2..=5).flat_map(|h| (2..=5).map(move |w| (h, w)))
}

/// Encodes a set of sites as a bit mask over the patch's site list.
fn mask(index: &HashMap<Site, usize>, sites: &[Site]) -> u128 {
    sites.iter().fold(0u128, |m, s| m | (1 << index[s]))
}

/// Symplectic product: plaquettes of the same kind always commute, and a
/// Z-face anticommutes with an X-vertex exactly when they share an odd
/// number of sites.
fn anticommute(a: &Plaquette, b: &Plaquette, index: &HashMap<Site, usize>) -> bool {
    if a.kind == b.kind {
        return false;
    }
    let shared = (mask(index, &a.sites) & mask(index, &b.sites)).count_ones();
    shared % 2 == 1
}

fn site_index(patch: &PlanarPatch) -> HashMap<Site, usize> {
    patch
        .sites()
        .into_iter()
        .enumerate()
        .map(|(i, s)| (s, i))
        .collect()
}

#[test]
fn plaquettes_commute_pairwise_at_every_size() {
    for (h, w) in sizes() {
        let patch = PlanarPatch::new((0, 0), h, w).unwrap();
        let index = site_index(&patch);
        let plaquettes = patch.plaquettes();
        for (i, a) in plaquettes.iter().enumerate() {
            for b in &plaquettes[i + 1..] {
                assert!(
                    !anticommute(a, b, &index),
                    "({h},{w}): {:?}@{:?} vs {:?}@{:?}",
                    a.kind,
                    a.center,
                    b.kind,
                    b.center
                );
            }
        }
    }
}

#[test]
fn plaquettes_are_independent_and_one_short_of_the_qubit_count() {
    for (h, w) in sizes() {
        let patch = PlanarPatch::new((0, 0), h, w).unwrap();
        let index = site_index(&patch);
        let n = patch.qubit_count();
        // Row vectors over GF(2): X support in the low bits, Z in the high.
        let mut rows: Vec<u128> = patch
            .plaquettes()
            .iter()
            .map(|p| {
                let m = mask(&index, &p.sites);
                match p.kind {
                    PlaquetteKind::XVertex => m,
                    PlaquetteKind::ZFace => m << n,
                }
            })
            .collect();
        let total = rows.len();
        assert_eq!(total, n - 1, "({h},{w}): generator count");

        // Gaussian elimination.
        let mut rank = 0;
        for bit in (0..2 * n).rev() {
            let Some(pos) = (rank..total).find(|&r| rows[r] >> bit & 1 == 1) else {
                continue;
            };
            rows.swap(rank, pos);
            for r in 0..total {
                if r != rank && rows[r] >> bit & 1 == 1 {
                    rows[r] ^= rows[rank];
                }
            }
            rank += 1;
        }
        assert_eq!(rank, total, "({h},{w}): generators are dependent");
    }
}

#[test]
fn logicals_commute_with_every_plaquette_and_anticommute_with_each_other() {
    for (h, w) in sizes() {
        let patch = PlanarPatch::new((0, 0), h, w).unwrap();
        let index = site_index(&patch);
        let zl = mask(&index, &patch.z_logical_sites());
        let xl = mask(&index, &patch.x_logical_sites());
        for p in patch.plaquettes() {
            let m = mask(&index, &p.sites);
            let overlap = match p.kind {
                // Z_L can only clash with X-type plaquettes and vice versa.
                PlaquetteKind::XVertex => (zl & m).count_ones(),
                PlaquetteKind::ZFace => (xl & m).count_ones(),
            };
            assert_eq!(overlap % 2, 0, "({h},{w}): logical crosses {:?}", p.center);
        }
        assert_eq!(
            (zl & xl).count_ones() % 2,
            1,
            "({h},{w}): Z_L and X_L must anticommute"
        );
        assert_eq!(patch.z_logical_sites().len(), w, "Z_L spans the top row");
        assert_eq!(patch.x_logical_sites().len(), h, "X_L spans the left column");
    }
}

#[test]
fn split_sizes_conserve_qubits_up_to_the_seam() {
    // A rough split at w₁ retires the h−1 line qubits between the parts.
    for (h, w) in sizes().filter(|&(_, w)| w >= 4) {
        let mother = PlanarPatch::new((0, 0), h, w).unwrap();
        for w1 in 2..=(w - 2) {
            let a = PlanarPatch::new((0, 0), h, w1).unwrap();
            let b =
                PlanarPatch::new((0, 2 * w1 as i32), h, w - w1).unwrap();
            assert_eq!(
                mother.qubit_count(),
                a.qubit_count() + b.qubit_count() + (h - 1),
                "({h},{w}) split at {w1}"
            );
        }
    }
}
