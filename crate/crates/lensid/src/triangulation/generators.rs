//! Triangulation generators: the n-tetrahedron fan, continued-fraction
//! evaluation of monodromy sequences, and layered solid torus triangulations
//! whose homology order is exponential in the tetrahedron count.

use thiserror::Error;

use super::perm::Perm4;
use super::Triangulation;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CfError {
    #[error("k = {k} is not a unit mod n = {n}")]
    NotUnit { n: u64, k: u64 },
    #[error("monodromy sequence is empty")]
    Empty,
    #[error("monodromy coefficient {0} outside 1..=5")]
    CoefficientRange(u64),
    #[error("first monodromy coefficient must exceed 1")]
    FirstCoefficient,
    #[error("continued fraction overflows u64")]
    Overflow,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// The fan triangulation of L(n, k) with exactly n tetrahedra.
///
/// Tetrahedron `i` models the wedge [N, e_i, e_{i+1}, S] of the lens: the
/// polar axis NS is shared, the equator vertices e_* cycle around. Corners
/// are (0, 1, 2, 3) = (N, e_i, e_{i+1}, S). Face 1 of tet i is glued to face
/// 2 of tet i+1 (the internal wall), and the top face 3 is glued to the
/// bottom face 0 of tet i+k, realizing the 2*pi*k/n twist.
pub fn fan_lens(n: u64, k: u64) -> Result<Triangulation, CfError> {
    if n == 0 || gcd(k % n, n) != 1 {
        return Err(CfError::NotUnit { n, k });
    }
    let n_us = usize::try_from(n).expect("fan size fits usize");
    let mut tri = Triangulation::empty(n_us);
    let wall = Perm4::new([0, 2, 1, 3]).unwrap(); // face 1 -> face 2
    let twist = Perm4::new([3, 1, 2, 0]).unwrap(); // face 3 -> face 0
    for i in 0..n_us {
        tri.glue(i, 1, (i + 1) % n_us, wall);
    }
    let k_us = (k % n) as usize;
    for i in 0..n_us {
        tri.glue(i, 3, (i + k_us) % n_us, twist);
    }
    debug_assert!(tri.check_involution().is_ok());
    Ok(tri)
}

/// A sequence of torus-bundle monodromy coefficients (a_1, ..., a_m) with
/// a_1 > 1 and 1 <= a_j <= 5.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonodromySequence {
    a: Vec<u64>,
}

impl MonodromySequence {
    pub fn new(a: Vec<u64>) -> Result<Self, CfError> {
        if a.is_empty() {
            return Err(CfError::Empty);
        }
        if a[0] <= 1 {
            return Err(CfError::FirstCoefficient);
        }
        for &x in &a {
            if !(1..=5).contains(&x) {
                return Err(CfError::CoefficientRange(x));
            }
        }
        Ok(MonodromySequence { a })
    }

    pub fn coefficients(&self) -> &[u64] {
        &self.a
    }
}

/// Evaluates n/k = a_m + 1/(a_{m-1} + ... + 1/a_1) by the recurrence
/// n_j = a_j n_{j-1} + n_{j-2}, k_j = n_{j-1}, with n_0 = 1.
pub fn cf_eval(a: &MonodromySequence) -> Result<(u64, u64), CfError> {
    let mut prev: u128 = 1; // n_0
    let mut cur: u128 = a.a[0] as u128; // n_1
    for &aj in &a.a[1..] {
        let next = aj as u128 * cur + prev;
        if next > (1u128 << 62) {
            return Err(CfError::Overflow);
        }
        prev = cur;
        cur = next;
    }
    Ok((cur as u64, prev as u64))
}

/// Boundary state of a triangulated solid torus whose boundary is a
/// two-triangle torus. The lower face carries edges (A: p0->p1, B: p1->p2,
/// C: p0->p2) and the upper face (B: q0->q1, A: q1->q2, C: q0->q2); C is the
/// diagonal, homologous to A + B. `w` holds the signed windings of (A, B, C)
/// around the solid torus core, so w[2] = w[0] + w[1] always.
struct TorusState {
    lface: (usize, u8),
    lc: [u8; 3],
    uface: (usize, u8),
    uc: [u8; 3],
    w: [i64; 3],
}

impl TorusState {
    fn check(&self) {
        debug_assert_eq!(self.w[2], self.w[0] + self.w[1]);
    }

    /// Swap the roles of A and B (relabelling only).
    fn swap_ab(&mut self) {
        std::mem::swap(&mut self.lface, &mut self.uface);
        std::mem::swap(&mut self.lc, &mut self.uc);
        self.w = [self.w[1], self.w[0], self.w[2]];
        self.check();
    }

    /// Relabel so the old A edge becomes the diagonal: (A,B,C) -> (-B, C, A).
    fn diag_a(&mut self) {
        let new_l = (self.uface, [self.uc[1], self.uc[0], self.uc[2]]);
        let new_u = (self.lface, [self.lc[0], self.lc[2], self.lc[1]]);
        self.lface = new_l.0;
        self.lc = new_l.1;
        self.uface = new_u.0;
        self.uc = new_u.1;
        self.w = [-self.w[1], self.w[2], self.w[0]];
        self.check();
    }

    /// Relabel so the old B edge becomes the diagonal: (A,B,C) -> (C, -A, B).
    fn diag_b(&mut self) {
        let new_l = (self.uface, [self.uc[0], self.uc[2], self.uc[1]]);
        let new_u = (self.lface, [self.lc[1], self.lc[0], self.lc[2]]);
        self.lface = new_l.0;
        self.lc = new_l.1;
        self.uface = new_u.0;
        self.uc = new_u.1;
        self.w = [self.w[2], -self.w[0], self.w[1]];
        self.check();
    }

    /// Layer a new tetrahedron over the diagonal. Faces 012 and 013 of the
    /// new tetrahedron cover the lower and upper faces with edge 01 along
    /// the diagonal; the new boundary is faces 1 and 0 of the new
    /// tetrahedron, and the new edge 23 replaces the diagonal with B - A.
    fn layer(&mut self, tri: &mut Triangulation) {
        let d = tri.add_tet();
        let (lt, lf) = self.lface;
        let (ut, uf) = self.uface;
        let pl = Perm4::from_images(&[(0, self.lc[0]), (1, self.lc[2]), (2, self.lc[1]), (3, lf)])
            .expect("lower layering map");
        let pu = Perm4::from_images(&[(0, self.uc[0]), (1, self.uc[2]), (3, self.uc[1]), (2, uf)])
            .expect("upper layering map");
        tri.glue(d, 3, lt, pl);
        tri.glue(d, 2, ut, pu);
        self.lface = (d, 1);
        self.lc = [0, 2, 3];
        self.uface = (d, 0);
        self.uc = [2, 3, 1];
        self.w = [self.w[0], self.w[1] - self.w[0], self.w[1]];
        self.check();
    }

    /// Close the boundary by folding the two faces together, fixing the
    /// diagonal pointwise. Kills the curve homologous to A - B, so the
    /// closed manifold has |H_1| = |w_A - w_B|.
    fn fold(self, tri: &mut Triangulation) {
        let (lt, lf) = self.lface;
        let (ut, uf) = self.uface;
        let p = Perm4::from_images(&[
            (self.lc[0], self.uc[0]),
            (self.lc[1], self.uc[1]),
            (self.lc[2], self.uc[2]),
            (lf, uf),
        ])
        .expect("fold map");
        tri.glue(lt, lf, ut, p);
    }
}

impl Triangulation {
    fn add_tet(&mut self) -> usize {
        let idx = self.tet_count();
        self.push_empty_tet();
        idx
    }
}

/// The one-tetrahedron layered solid torus with boundary edge windings
/// (1, 2, 3): face 012 of tet 0 is glued to face 130.
fn base_solid_torus() -> (Triangulation, TorusState) {
    let mut tri = Triangulation::empty(1);
    let p = Perm4::new([1, 3, 0, 2]).unwrap(); // 0->1, 1->3, 2->0 (face 3 -> face 2)
    tri.glue(0, 3, 0, p);
    let state = TorusState {
        lface: (0, 1),
        lc: [2, 0, 3],
        uface: (0, 0),
        uc: [2, 1, 3],
        w: [1, 2, 3],
    };
    state.check();
    (tri, state)
}

/// Builds a triangulation of L(n, k) with O(m) tetrahedra from a monodromy
/// sequence, where (n, k) = cf_eval(a). Each continued-fraction coefficient
/// is realized by a run of layerings on the boundary torus; the final fold
/// closes the torus killing the meridian of winding n.
///
/// The walk keeps the boundary pair (w_A, w_B) at consecutive convergents
/// (n_{j-1}, n_j) up to sign. One addition of the first coefficient is the
/// composite [diag_b, layer, diag_b] taking (1, c) to (1, c+1); middle
/// coefficients use [diag_a, layer x a_j, diag_b, swap]; the last
/// coefficient stops two additions short, and the fold over the torus
/// supplies them by killing the winding-n curve.
pub fn layered_lens(a: &MonodromySequence) -> Result<(Triangulation, u64, u64), CfError> {
    let (n, k) = cf_eval(a)?;
    let (mut tri, mut st) = base_solid_torus();
    let coeffs = a.coefficients();
    let m = coeffs.len();

    if m == 1 {
        // Pure buildup of (1, a_1 - 2), with layerings on the diagonal
        // standing in for negative additions.
        let add = coeffs[0] as i64 - 4;
        if add >= 0 {
            for _ in 0..add {
                st.diag_b();
                st.layer(&mut tri);
                st.diag_b();
            }
        } else {
            for _ in 0..(-add) {
                st.layer(&mut tri);
            }
        }
        st.diag_b();
    } else {
        for _ in 0..coeffs[0] - 2 {
            st.diag_b();
            st.layer(&mut tri);
            st.diag_b();
        }
        for &c in &coeffs[1..m - 1] {
            st.diag_a();
            for _ in 0..c {
                st.layer(&mut tri);
            }
            st.diag_b();
            st.swap_ab();
        }
        let last = coeffs[m - 1] as i64 - 2;
        match last.cmp(&0) {
            std::cmp::Ordering::Greater => {
                st.diag_a();
                for _ in 0..last {
                    st.layer(&mut tri);
                }
                st.diag_b();
                st.diag_a();
            }
            std::cmp::Ordering::Equal => {
                st.diag_a();
            }
            std::cmp::Ordering::Less => {
                st.layer(&mut tri);
                st.diag_b();
            }
        }
    }

    assert_eq!(
        (st.w[0] - st.w[1]).unsigned_abs(),
        n,
        "fold winding mismatch: state {:?} for n={n}",
        st.w
    );
    st.fold(&mut tri);
    debug_assert!(tri.is_closed());
    debug_assert!(tri.check_involution().is_ok());
    Ok((tri, n, k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triangulation::validate;

    #[test]
    fn cf_values() {
        let a = MonodromySequence::new(vec![2]).unwrap();
        assert_eq!(cf_eval(&a).unwrap(), (2, 1));
        let a = MonodromySequence::new(vec![3, 2]).unwrap();
        assert_eq!(cf_eval(&a).unwrap(), (7, 3));
        let a = MonodromySequence::new(vec![2, 2]).unwrap();
        assert_eq!(cf_eval(&a).unwrap(), (5, 2));
    }

    #[test]
    fn cf_fibonacci_growth() {
        // (2, 1, 1, ..., 1) grows at least as fast as the Fibonacci numbers
        for m in 2..20usize {
            let mut v = vec![2u64];
            v.extend(std::iter::repeat(1).take(m - 1));
            let a = MonodromySequence::new(v).unwrap();
            let (n, _) = cf_eval(&a).unwrap();
            let mut fib = (1u64, 1u64);
            for _ in 0..m {
                fib = (fib.1, fib.0 + fib.1);
            }
            assert!(n >= fib.1, "n_m = {n} < Fib(m+1) = {}", fib.1);
        }
    }

    #[test]
    fn cf_sequence_constraints() {
        assert!(MonodromySequence::new(vec![]).is_err());
        assert!(MonodromySequence::new(vec![1, 2]).is_err());
        assert!(MonodromySequence::new(vec![2, 6]).is_err());
    }

    #[test]
    fn fan_rejects_non_units() {
        assert!(fan_lens(6, 3).is_err());
        assert!(fan_lens(6, 5).is_ok());
    }

    #[test]
    fn layered_small_instances_valid() {
        for coeffs in [vec![2], vec![3], vec![4], vec![5], vec![2, 1], vec![3, 2], vec![2, 2, 2]] {
            let a = MonodromySequence::new(coeffs.clone()).unwrap();
            let (tri, n, _k) = layered_lens(&a).unwrap();
            let report = validate(&tri);
            assert!(report.is_ok(), "layered_lens({coeffs:?}) invalid: {report:?} (n={n})");
        }
    }

    #[test]
    fn layered_tet_count_linear() {
        let a = MonodromySequence::new(vec![5; 8]).unwrap();
        let (tri, n, _) = layered_lens(&a).unwrap();
        assert!(n > 390_000, "n = {n}");
        assert!(tri.tet_count() <= 8 * 6, "t = {}", tri.tet_count());
    }
}
