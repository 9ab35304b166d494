//! Quotient cell structure of a generalized triangulation: orbit classes of
//! vertices, edges, faces and tetrahedra under the gluing identifications,
//! with deterministic representatives, orientations and the incidence data
//! needed by the chain complexes.

use thiserror::Error;

use super::perm::Perm4;
use super::Triangulation;

/// Vertex pairs of the six edges of a tetrahedron, in lexicographic order.
pub const EDGE_VERTS: [(u8, u8); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

pub fn edge_index(a: u8, b: u8) -> usize {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    EDGE_VERTS.iter().position(|&(x, y)| (x, y) == (a, b)).unwrap()
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CellError {
    #[error("triangulation has boundary faces")]
    NotClosed,
    #[error("structural error: {0}")]
    Structure(#[from] super::TriError),
    #[error("edge identified with itself in reverse at tet {tet} edge {edge}")]
    InvalidEdge { tet: usize, edge: usize },
    #[error("triangulation is non-orientable")]
    NonOrientable,
    #[error("triangulation is not connected")]
    Disconnected,
}

/// Union-find with a Z/2 orientation bit on each element relative to its root.
struct SignedUf {
    parent: Vec<usize>,
    flip: Vec<bool>, // orientation relative to parent
}

impl SignedUf {
    fn new(n: usize) -> Self {
        SignedUf {
            parent: (0..n).collect(),
            flip: vec![false; n],
        }
    }

    fn find(&mut self, x: usize) -> (usize, bool) {
        if self.parent[x] == x {
            return (x, false);
        }
        let (root, pf) = self.find(self.parent[x]);
        let f = self.flip[x] ^ pf;
        self.parent[x] = root;
        self.flip[x] = f;
        (root, f)
    }

    /// Merge with relative orientation `rel` (`true` = reversed). Returns
    /// false on an orientation conflict (element identified with itself
    /// reversed).
    fn union(&mut self, a: usize, b: usize, rel: bool) -> bool {
        let (ra, fa) = self.find(a);
        let (rb, fb) = self.find(b);
        if ra == rb {
            return fa ^ fb == rel;
        }
        self.parent[rb] = ra;
        self.flip[rb] = fa ^ fb ^ rel;
        true
    }
}

struct PlainUf {
    parent: Vec<usize>,
}

impl PlainUf {
    fn new(n: usize) -> Self {
        PlainUf {
            parent: (0..n).collect(),
        }
    }
    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] == x {
            x
        } else {
            let r = self.find(self.parent[x]);
            self.parent[x] = r;
            r
        }
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[rb.max(ra)] = ra.min(rb);
        }
    }
}

/// The quotient cell structure. Cell classes in each dimension are indexed
/// `0..count`, ordered by their lexicographically smallest instance, which is
/// also the representative fixing the cell's vertex ordering and orientation.
pub struct CellStructure {
    pub tet_count: usize,
    vertex_class: Vec<[usize; 4]>,
    /// per (tet, edge): class index and instance direction (+1 when the
    /// instance's increasing direction agrees with the representative's).
    edge_class: Vec<[(usize, i8); 6]>,
    /// per (tet, face): class index and corner map onto the representative.
    face_class: Vec<[(usize, Perm4); 4]>,
    vertex_rep: Vec<(usize, u8)>,
    edge_rep: Vec<(usize, u8)>,
    face_rep: Vec<(usize, u8)>,
    /// Basis orientation signs per dimension, flippable; all +1 initially.
    pub orient: [Vec<i8>; 4],
    /// Coherent orientation signs of the tetrahedra (fundamental class).
    pub tet_sign: Vec<i8>,
}

impl CellStructure {
    pub fn counts(&self) -> [usize; 4] {
        [
            self.vertex_rep.len(),
            self.edge_rep.len(),
            self.face_rep.len(),
            self.tet_count,
        ]
    }

    pub fn euler_characteristic(&self) -> i64 {
        let [v, e, f, t] = self.counts();
        v as i64 - e as i64 + f as i64 - t as i64
    }

    pub fn vertex_class(&self, tet: usize, v: u8) -> usize {
        self.vertex_class[tet][v as usize]
    }

    /// Class of the edge {a, b} of `tet` and the sign of direction `a -> b`
    /// relative to the class representative's canonical direction.
    pub fn edge_class_dir(&self, tet: usize, a: u8, b: u8) -> (usize, i8) {
        let (class, par) = self.edge_class[tet][edge_index(a, b)];
        if a < b {
            (class, par)
        } else {
            (class, -par)
        }
    }

    pub fn face_class(&self, tet: usize, f: u8) -> (usize, Perm4) {
        self.face_class[tet][f as usize]
    }

    pub fn vertex_rep(&self, c: usize) -> (usize, u8) {
        self.vertex_rep[c]
    }

    /// Representative edge as (tet, (a, b)) with a < b; canonical direction
    /// is a -> b.
    pub fn edge_rep(&self, c: usize) -> (usize, (u8, u8)) {
        let (t, e) = self.edge_rep[c];
        (t, EDGE_VERTS[e as usize])
    }

    /// Representative face corners, ascending.
    pub fn face_rep_corners(&self, c: usize) -> (usize, [u8; 3]) {
        let (t, f) = self.face_rep[c];
        let mut corners = [0u8; 3];
        let mut k = 0;
        for v in 0..4u8 {
            if v != f {
                corners[k] = v;
                k += 1;
            }
        }
        (t, corners)
    }

    pub fn flip_orientation(&mut self, dim: usize, cell: usize) {
        self.orient[dim][cell] = -self.orient[dim][cell];
    }
}

/// Internal: computes the four orbit counts, failing on invalid edges.
/// Shared by `validate` (which must not require orientability).
pub(crate) fn skeleton_counts(
    tri: &Triangulation,
) -> Result<(usize, usize, usize, usize), CellError> {
    let (v, e, f) = orbit_data(tri)?.3;
    Ok((v, e, f, tri.tet_count()))
}

type OrbitData = (SignedUf, PlainUf, Vec<Option<(usize, Perm4)>>, (usize, usize, usize));

fn orbit_data(tri: &Triangulation) -> Result<OrbitData, CellError> {
    tri.check_involution()?;
    if !tri.is_closed() {
        return Err(CellError::NotClosed);
    }
    let t = tri.tet_count();
    let mut vuf = PlainUf::new(4 * t);
    let mut euf = SignedUf::new(6 * t);
    // face partner map: for each (tet, face) the partner slot and perm
    let mut fpartner: Vec<Option<(usize, Perm4)>> = vec![None; 4 * t];

    for i in 0..t {
        for f in 0..4u8 {
            let g = tri.gluing(i, f).unwrap();
            let pf = g.perm.apply(f);
            fpartner[4 * i + f as usize] = Some((4 * g.tet + pf as usize, g.perm));
            // vertex and edge identifications induced on the face
            for v in 0..4u8 {
                if v == f {
                    continue;
                }
                vuf.union(4 * i + v as usize, 4 * g.tet + g.perm.apply(v) as usize);
            }
            for a in 0..4u8 {
                for b in a + 1..4u8 {
                    if a == f || b == f {
                        continue;
                    }
                    let (ia, ib) = (g.perm.apply(a), g.perm.apply(b));
                    let rel = (a < b) != (ia < ib); // always a < b here
                    let e1 = 6 * i + edge_index(a, b);
                    let e2 = 6 * g.tet + edge_index(ia, ib);
                    if !euf.union(e1, e2, rel) {
                        return Err(CellError::InvalidEdge {
                            tet: i,
                            edge: edge_index(a, b),
                        });
                    }
                }
            }
        }
    }
    // count orbits
    let mut vroots = std::collections::BTreeSet::new();
    for x in 0..4 * t {
        let r = vuf.find(x);
        vroots.insert(r);
    }
    let mut eroots = std::collections::BTreeSet::new();
    for x in 0..6 * t {
        let (r, _) = euf.find(x);
        eroots.insert(r);
    }
    let fcount = 2 * t; // 4t slots in glued pairs
    Ok((euf, vuf, fpartner, (vroots.len(), eroots.len(), fcount)))
}

/// Computes the full cell structure of a validated closed orientable
/// connected triangulation.
pub fn cells(tri: &Triangulation) -> Result<CellStructure, CellError> {
    if !tri.is_connected() {
        return Err(CellError::Disconnected);
    }
    let tet_sign = tri.coherent_orientation().ok_or(CellError::NonOrientable)?;
    let (mut euf, mut vuf, fpartner, _) = orbit_data(tri)?;
    let t = tri.tet_count();

    // Vertex classes: order by smallest instance.
    let mut vclass_of_root = std::collections::BTreeMap::new();
    let mut vertex_rep = Vec::new();
    let mut vertex_class = vec![[usize::MAX; 4]; t];
    for i in 0..t {
        for v in 0..4u8 {
            let root = vuf.find(4 * i + v as usize);
            let next = vclass_of_root.len();
            let class = *vclass_of_root.entry(root).or_insert_with(|| {
                vertex_rep.push((i, v));
                next
            });
            vertex_class[i][v as usize] = class;
        }
    }

    // Edge classes with instance directions. The representative is the
    // first-seen instance (lexicographically smallest), whose increasing
    // direction is the canonical one.
    let mut eclass_of_root = std::collections::BTreeMap::new();
    let mut edge_rep = Vec::new();
    let mut rep_flip = Vec::new(); // orientation of rep relative to its root
    let mut edge_class = vec![[(usize::MAX, 0i8); 6]; t];
    for i in 0..t {
        for e in 0..6u8 {
            let (root, flip) = euf.find(6 * i + e as usize);
            let next = eclass_of_root.len();
            let class = *eclass_of_root.entry(root).or_insert_with(|| {
                edge_rep.push((i, e));
                rep_flip.push(flip);
                next
            });
            let par = if flip == rep_flip[class] { 1 } else { -1 };
            edge_class[i][e as usize] = (class, par);
        }
    }

    // Face classes: glued slot pairs; representative is the smaller slot.
    let mut face_rep = Vec::new();
    let mut face_class = vec![[(usize::MAX, Perm4::IDENTITY); 4]; t];
    for i in 0..t {
        for f in 0..4u8 {
            let slot = 4 * i + f as usize;
            if face_class[i][f as usize].0 != usize::MAX {
                continue;
            }
            let (pslot, perm) = fpartner[slot].unwrap();
            let class = face_rep.len();
            if pslot == slot {
                unreachable!("face glued to itself is rejected earlier");
            }
            face_rep.push((i, f));
            face_class[i][f as usize] = (class, Perm4::IDENTITY);
            let (pt, pf) = (pslot / 4, (pslot % 4) as u8);
            // map from the partner instance onto the representative
            face_class[pt][pf as usize] = (class, perm.inverse());
        }
    }

    let counts = [vertex_rep.len(), edge_rep.len(), face_rep.len(), t];
    Ok(CellStructure {
        tet_count: t,
        vertex_class,
        edge_class,
        face_class,
        vertex_rep,
        edge_rep,
        face_rep,
        orient: [
            vec![1; counts[0]],
            vec![1; counts[1]],
            vec![1; counts[2]],
            vec![1; counts[3]],
        ],
        tet_sign,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triangulation::{fan_lens, validate};

    #[test]
    fn fan_counts() {
        for (n, k) in [(1u64, 1u64), (2, 1), (5, 1), (7, 2), (12, 5)] {
            let tri = fan_lens(n, k).unwrap();
            assert!(validate(&tri).is_ok(), "fan_lens({n},{k}) invalid");
            let cs = cells(&tri).unwrap();
            assert_eq!(cs.counts()[3], n as usize);
            assert_eq!(cs.euler_characteristic(), 0);
        }
    }

    #[test]
    fn one_tet_counts() {
        let tri = fan_lens(1, 1).unwrap();
        let cs = cells(&tri).unwrap();
        assert_eq!(cs.counts()[3], 1);
        assert_eq!(cs.counts()[2], 2);
    }
}
