//! Planar surface-code patch geometry.
//!
//! A patch lives on an integer grid in which data qubits occupy two parity
//! classes and stabilizer generators occupy the other two:
//!
//! * **primal** data qubits at (even row, even col),
//! * **dual** data qubits at (odd row, odd col),
//! * **Z-faces** centred at (odd row, even col), measuring `Z` on the
//!   primal qubits above/below and the dual qubits left/right,
//! * **X-vertices** centred at (even row, odd col), measuring `X` on the
//!   primal qubits left/right and the dual qubits above/below.
//!
//! A rectangular patch of height `h` and width `w` (both counted in primal
//! rows/columns) therefore holds `h·w + (h−1)(w−1)` data qubits and
//! `(h−1)·w + h·(w−1)` stabilizer generators — one fewer than the qubit
//! count, leaving exactly one encoded qubit. Its top and bottom edges are
//! smooth (X-type) boundaries; its left and right edges are rough (Z-type)
//! boundaries. The logical `Z` runs along the top primal row between the
//! rough boundaries; the logical `X` runs down the leftmost primal column
//! between the smooth boundaries.

use crate::SurfaceError;

/// A grid coordinate, `(row, col)`. Rows grow downward, columns rightward.
pub type Site = (i32, i32);

/// Which stabilizer type a plaquette measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PlaquetteKind {
    /// Product of `Z` on the surrounding data qubits.
    ZFace,
    /// Product of `X` on the surrounding data qubits.
    XVertex,
}

/// One stabilizer generator: its type, grid centre, and member data qubits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Plaquette {
    pub kind: PlaquetteKind,
    pub center: Site,
    pub sites: Vec<Site>,
}

/// A rectangular planar patch anchored at an (even, even) origin.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarPatch {
    origin: Site,
    h: usize,
    w: usize,
}

impl PlanarPatch {
    /// Creates a patch whose top-left primal qubit sits at `origin`.
    ///
    /// Both coordinates of `origin` must be even and both distances at
    /// least 2 so that every boundary has a genuine plaquette row behind it.
    pub fn new(origin: Site, h: usize, w: usize) -> Result<Self, SurfaceError> {
        if origin.0 % 2 != 0 || origin.1 % 2 != 0 {
            return Err(SurfaceError::Geometry(format!(
                "patch origin {origin:?} must have even coordinates"
            )));
        }
        if h < 2 || w < 2 {
            return Err(SurfaceError::Geometry(format!(
                "patch distances must be at least 2, got ({h}, {w})"
            )));
        }
        Ok(Self { origin, h, w })
    }

    pub fn origin(&self) -> Site {
        self.origin
    }

    /// Height: the number of primal rows (smooth-to-smooth distance).
    pub fn h(&self) -> usize {
        self.h
    }

    /// Width: the number of primal columns (rough-to-rough distance).
    pub fn w(&self) -> usize {
        self.w
    }

    /// Primal data qubits in row-major order.
    pub fn primal_sites(&self) -> Vec<Site> {
        let (r0, c0) = self.origin;
        let mut out = Vec::with_capacity(self.h * self.w);
        for i in 0..self.h as i32 {
            for j in 0..self.w as i32 {
                out.push((r0 + 2 * i, c0 + 2 * j));
            }
        }
        out
    }

    /// Dual data qubits in row-major order.
    pub fn dual_sites(&self) -> Vec<Site> {
        let (r0, c0) = self.origin;
        let mut out = Vec::with_capacity((self.h - 1) * (self.w - 1));
        for i in 0..self.h as i32 - 1 {
            for j in 0..self.w as i32 - 1 {
                out.push((r0 + 2 * i + 1, c0 + 2 * j + 1));
            }
        }
        out
    }

    /// All data qubits: primal sites followed by dual sites.
    pub fn sites(&self) -> Vec<Site> {
        let mut out = self.primal_sites();
        out.extend(self.dual_sites());
        out
    }

    /// True if `site` is a data qubit of this patch.
    pub fn contains_site(&self, site: Site) -> bool {
        let (r, c) = (site.0 - self.origin.0, site.1 - self.origin.1);
        let (hh, ww) = (2 * (self.h as i32 - 1), 2 * (self.w as i32 - 1));
        if r < 0 || c < 0 || r > hh || c > ww {
            return false;
        }
        (r % 2 == 0 && c % 2 == 0) || (r % 2 == 1 && c % 2 == 1)
    }

    /// The Z-face generators, row-major by centre.
    pub fn z_faces(&self) -> Vec<Plaquette> {
        let (r0, c0) = self.origin;
        let mut out = Vec::with_capacity((self.h - 1) * self.w);
        for i in 0..self.h as i32 - 1 {
            for j in 0..self.w as i32 {
                let center = (r0 + 2 * i + 1, c0 + 2 * j);
                out.push(self.face_at(center));
            }
        }
        out
    }

    /// The X-vertex generators, row-major by centre.
    pub fn x_vertices(&self) -> Vec<Plaquette> {
        let (r0, c0) = self.origin;
        let mut out = Vec::with_capacity(self.h * (self.w - 1));
        for i in 0..self.h as i32 {
            for j in 0..self.w as i32 - 1 {
                let center = (r0 + 2 * i, c0 + 2 * j + 1);
                out.push(self.vertex_at(center));
            }
        }
        out
    }

    /// All stabilizer generators: Z-faces followed by X-vertices.
    pub fn plaquettes(&self) -> Vec<Plaquette> {
        let mut out = self.z_faces();
        out.extend(self.x_vertices());
        out
    }

    fn face_at(&self, center: Site) -> Plaquette {
        let (r, c) = center;
        let candidates = [(r - 1, c), (r + 1, c), (r, c - 1), (r, c + 1)];
        let sites = candidates
            .into_iter()
            .filter(|&s| self.contains_site(s))
            .collect();
        Plaquette {
            kind: PlaquetteKind::ZFace,
            center,
            sites,
        }
    }

    fn vertex_at(&self, center: Site) -> Plaquette {
        let (r, c) = center;
        let candidates = [(r, c - 1), (r, c + 1), (r - 1, c), (r + 1, c)];
        let sites = candidates
            .into_iter()
            .filter(|&s| self.contains_site(s))
            .collect();
        Plaquette {
            kind: PlaquetteKind::XVertex,
            center,
            sites,
        }
    }

    /// Representative of the logical `Z`: the top primal row.
    pub fn z_logical_sites(&self) -> Vec<Site> {
        let (r0, c0) = self.origin;
        (0..self.w as i32).map(|j| (r0, c0 + 2 * j)).collect()
    }

    /// Representative of the logical `X`: the leftmost primal column.
    pub fn x_logical_sites(&self) -> Vec<Site> {
        let (r0, c0) = self.origin;
        (0..self.h as i32).map(|i| (r0 + 2 * i, c0)).collect()
    }

    /// Total number of data qubits, `h·w + (h−1)(w−1)`.
    pub fn qubit_count(&self) -> usize {
        self.h * self.w + (self.h - 1) * (self.w - 1)
    }

    /// Total number of stabilizer generators (always `qubit_count() − 1`).
    pub fn plaquette_count(&self) -> usize {
        (self.h - 1) * self.w + self.h * (self.w - 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_the_closed_forms() {
        for h in 2..=5 {
            for w in 2..=5 {
                let p = PlanarPatch::new((0, 0), h, w).unwrap();
                assert_eq!(p.sites().len(), p.qubit_count());
                assert_eq!(p.plaquettes().len(), p.plaquette_count());
                assert_eq!(p.plaquette_count(), p.qubit_count() - 1);
            }
        }
    }

    #[test]
    fn distance_three_square_has_thirteen_qubits_and_twelve_generators() {
        let p = PlanarPatch::new((0, 0), 3, 3).unwrap();
        assert_eq!(p.qubit_count(), 13);
        assert_eq!(p.plaquette_count(), 12);
    }

    #[test]
    fn interior_plaquettes_have_weight_four_and_boundary_weight_three() {
        let p = PlanarPatch::new((0, 0), 3, 3).unwrap();
        for f in p.z_faces() {
            let boundary = f.center.1 == 0 || f.center.1 == 4;
            assert_eq!(f.sites.len(), if boundary { 3 } else { 4 });
        }
        for v in p.x_vertices() {
            let boundary = v.center.0 == 0 || v.center.0 == 4;
            assert_eq!(v.sites.len(), if boundary { 3 } else { 4 });
        }
    }

    #[test]
    fn logicals_span_the_patch() {
        let p = PlanarPatch::new((2, 4), 3, 4).unwrap();
        assert_eq!(p.z_logical_sites(), vec![(2, 4), (2, 6), (2, 8), (2, 10)]);
        assert_eq!(p.x_logical_sites(), vec![(2, 4), (4, 4), (6, 4)]);
    }

    #[test]
    fn odd_origins_are_rejected() {
        assert!(PlanarPatch::new((1, 0), 2, 2).is_err());
        assert!(PlanarPatch::new((0, 0), 1, 2).is_err());
    }
}
