//! Generalized triangulations of closed 3-manifolds: tetrahedra with face
//! gluing permutations, validation, quotient cell structures, generators and
//! Pachner moves.

pub mod cells;
pub mod format;
pub mod generators;
pub mod pachner;
pub mod perm;

pub use cells::{cells, CellStructure};
pub use format::{parse_tri, ParseError};
pub use generators::{cf_eval, fan_lens, layered_lens, CfError, MonodromySequence};
pub use pachner::pachner_obfuscate;
pub use perm::Perm4;

use thiserror::Error;

/// One side of a face pairing: the partner tetrahedron and the corner
/// permutation carrying this tetrahedron's corners to the partner's.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Gluing {
    pub tet: usize,
    pub perm: Perm4,
}

/// A generalized (Delta) triangulation: `t` tetrahedra whose 4t face slots
/// are glued in pairs. Face `f` of a tetrahedron is the one opposite corner
/// `f`; a gluing with permutation `p` sends face `f` to face `p(f)` of the
/// partner. Boundary slots are `None`; all public constructors produce
/// closed triangulations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangulation {
    gluings: Vec<[Option<Gluing>; 4]>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TriError {
    #[error("involution violation at tet {tet} face {face}")]
    Involution { tet: usize, face: usize },
    #[error("face of tet {tet} glued to itself at face {face}")]
    SelfFace { tet: usize, face: usize },
    #[error("gluing at tet {tet} face {face} references tet {target} out of range")]
    OutOfRange { tet: usize, face: usize, target: usize },
}

impl Triangulation {
    pub fn empty(t: usize) -> Self {
        Triangulation {
            gluings: vec![[None; 4]; t],
        }
    }

    pub fn tet_count(&self) -> usize {
        self.gluings.len()
    }

    pub(crate) fn push_empty_tet(&mut self) {
        self.gluings.push([None; 4]);
    }

    pub fn gluing(&self, tet: usize, face: u8) -> Option<Gluing> {
        self.gluings[tet][face as usize]
    }

    /// Installs a gluing together with its inverse partner. Panics on a
    /// face glued literally to itself; that is never a manifold gluing.
    pub fn glue(&mut self, tet: usize, face: u8, to_tet: usize, perm: Perm4) {
        let to_face = perm.apply(face);
        assert!(
            !(tet == to_tet && face == to_face),
            "face glued to itself at tet {tet} face {face}"
        );
        self.gluings[tet][face as usize] = Some(Gluing { tet: to_tet, perm });
        self.gluings[to_tet][to_face as usize] = Some(Gluing {
            tet,
            perm: perm.inverse(),
        });
    }

    /// Sets one slot without touching the partner; callers must restore the
    /// involution themselves (the parser does, via `check_involution`).
    pub(crate) fn set_raw(&mut self, tet: usize, face: u8, g: Gluing) {
        self.gluings[tet][face as usize] = Some(g);
    }

    pub fn unglue(&mut self, tet: usize, face: u8) {
        if let Some(g) = self.gluings[tet][face as usize].take() {
            self.gluings[g.tet][g.perm.apply(face) as usize] = None;
        }
    }

    pub fn is_closed(&self) -> bool {
        self.gluings
            .iter()
            .all(|faces| faces.iter().all(|g| g.is_some()))
    }

    /// Structural well-formedness: indices in range, involution, no face
    /// glued to itself.
    pub fn check_involution(&self) -> Result<(), TriError> {
        for (i, faces) in self.gluings.iter().enumerate() {
            for (f, g) in faces.iter().enumerate() {
                let Some(g) = g else { continue };
                if g.tet >= self.gluings.len() {
                    return Err(TriError::OutOfRange {
                        tet: i,
                        face: f,
                        target: g.tet,
                    });
                }
                let tf = g.perm.apply(f as u8);
                if g.tet == i && tf == f as u8 {
                    return Err(TriError::SelfFace { tet: i, face: f });
                }
                let back = self.gluings[g.tet][tf as usize];
                let ok = back
                    .map(|b| b.tet == i && b.perm == g.perm.inverse())
                    .unwrap_or(false);
                if !ok {
                    return Err(TriError::Involution { tet: i, face: f });
                }
            }
        }
        Ok(())
    }

    /// Connectivity of the face-pairing graph.
    pub fn is_connected(&self) -> bool {
        let t = self.tet_count();
        if t == 0 {
            return true;
        }
        let mut seen = vec![false; t];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for f in 0..4 {
                if let Some(g) = self.gluings[i][f] {
                    if !seen[g.tet] {
                        seen[g.tet] = true;
                        stack.push(g.tet);
                    }
                }
            }
        }
        seen.into_iter().all(|x| x)
    }

    /// Per-tetrahedron signs making every face gluing orientation-reversing
    /// on faces (gluings between sign-equal tetrahedra must be odd
    /// permutations). `None` exactly when the quotient is non-orientable.
    pub fn coherent_orientation(&self) -> Option<Vec<i8>> {
        let t = self.tet_count();
        let mut sign = vec![0i8; t];
        for start in 0..t {
            if sign[start] != 0 {
                continue;
            }
            sign[start] = 1;
            let mut stack = vec![start];
            while let Some(i) = stack.pop() {
                for f in 0..4 {
                    let Some(g) = self.gluings[i][f] else { continue };
                    let want = -sign[i] * g.perm.sign();
                    if sign[g.tet] == 0 {
                        sign[g.tet] = want;
                        stack.push(g.tet);
                    } else if sign[g.tet] != want {
                        return None;
                    }
                }
            }
        }
        Some(sign)
    }

    /// Mirror image: relabels corners 2 and 3 of every tetrahedron. The
    /// quotient manifold is the same space with reversed orientation.
    pub fn mirror(&self) -> Triangulation {
        let swap = Perm4::new([0, 1, 3, 2]).unwrap();
        let mut out = Triangulation::empty(self.tet_count());
        for (i, faces) in self.gluings.iter().enumerate() {
            for (f, g) in faces.iter().enumerate() {
                let Some(g) = g else { continue };
                let new_face = swap.apply(f as u8);
                let new_perm = swap.compose(&g.perm).compose(&swap);
                out.gluings[i][new_face as usize] = Some(Gluing {
                    tet: g.tet,
                    perm: new_perm,
                });
            }
        }
        debug_assert!(out.check_involution().is_ok());
        out
    }
}

/// Validation summary for a triangulation, as reported by [`validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub closed: bool,
    pub connected: bool,
    pub orientable: bool,
    /// Euler characteristic of the quotient cell structure. Zero for closed
    /// 3-manifolds; nonzero signals non-sphere vertex links.
    pub chi: i64,
    /// No edge identified with itself in reverse.
    pub edges_valid: bool,
    pub structure: Result<(), TriError>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.closed
            && self.connected
            && self.orientable
            && self.chi == 0
            && self.edges_valid
            && self.structure.is_ok()
    }
}

/// Checks closedness, orientability, edge validity and `chi = 0`.
pub fn validate(tri: &Triangulation) -> ValidationReport {
    let structure = tri.check_involution();
    let closed = tri.is_closed();
    let connected = tri.is_connected();
    let orientable = structure.is_ok() && tri.coherent_orientation().is_some();
    let (chi, edges_valid) = if structure.is_ok() && closed {
        match cells::skeleton_counts(tri) {
            Ok((v, e, f, t)) => (v as i64 - e as i64 + f as i64 - t as i64, true),
            Err(_) => (i64::MIN, false),
        }
    } else {
        (i64::MIN, false)
    };
    ValidationReport {
        closed,
        connected,
        orientable,
        chi,
        edges_valid,
        structure,
    }
}
