//! Permutations of the four corners of a tetrahedron.

use std::fmt;

/// A permutation of {0,1,2,3}; `p.apply(v)` is the image of corner `v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Perm4([u8; 4]);

impl Perm4 {
    pub const IDENTITY: Perm4 = Perm4([0, 1, 2, 3]);

    pub fn new(images: [u8; 4]) -> Option<Perm4> {
        let mut seen = [false; 4];
        for &v in &images {
            if v > 3 || seen[v as usize] {
                return None;
            }
            seen[v as usize] = true;
        }
        Some(Perm4(images))
    }

    pub fn apply(&self, v: u8) -> u8 {
        self.0[v as usize]
    }

    pub fn inverse(&self) -> Perm4 {
        let mut inv = [0u8; 4];
        for v in 0..4 {
            inv[self.0[v] as usize] = v as u8;
        }
        Perm4(inv)
    }

    /// `self.compose(other)` applies `other` first: (self∘other)(v) = self(other(v)).
    pub fn compose(&self, other: &Perm4) -> Perm4 {
        let mut out = [0u8; 4];
        for v in 0..4 {
            out[v] = self.0[other.0[v] as usize];
        }
        Perm4(out)
    }

    /// +1 for even permutations, -1 for odd.
    pub fn sign(&self) -> i8 {
        let mut inversions = 0;
        for i in 0..4 {
            for j in i + 1..4 {
                if self.0[i] > self.0[j] {
                    inversions += 1;
                }
            }
        }
        if inversions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn is_identity(&self) -> bool {
        self.0 == [0, 1, 2, 3]
    }

    /// Builds a permutation from explicit image pairs, filling the one
    /// remaining corner. Used by gluing constructors that know where three
    /// corners go.
    pub fn from_images(pairs: &[(u8, u8)]) -> Option<Perm4> {
        let mut img = [u8::MAX; 4];
        let mut used = [false; 4];
        for &(src, dst) in pairs {
            if src > 3 || dst > 3 || img[src as usize] != u8::MAX || used[dst as usize] {
                return None;
            }
            img[src as usize] = dst;
            used[dst as usize] = true;
        }
        let missing_src = (0..4).find(|&v| img[v] == u8::MAX);
        let missing_dst = (0..4).find(|&v| !used[v]);
        match (missing_src, missing_dst) {
            (Some(s), Some(d)) => {
                img[s] = d as u8;
                Perm4::new([img[0], img[1], img[2], img[3]])
            }
            (None, None) => Perm4::new([img[0], img[1], img[2], img[3]]),
            _ => None,
        }
    }

    pub fn digits(&self) -> [u8; 4] {
        self.0
    }
}

impl fmt::Display for Perm4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}{}{}",
            self.0[0], self.0[1], self.0[2], self.0[3]
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_laws() {
        let a = Perm4::new([1, 0, 3, 2]).unwrap();
        let b = Perm4::new([2, 1, 0, 3]).unwrap();
        assert_eq!(a.compose(&a.inverse()), Perm4::IDENTITY);
        assert_eq!(a.compose(&b).apply(0), a.apply(b.apply(0)));
        assert_eq!(a.sign(), 1); // (01)(23) is even
        assert_eq!(b.sign(), -1); // transposition
        assert_eq!(Perm4::new([0, 1, 1, 3]), None);
    }

    #[test]
    fn fill_missing() {
        let p = Perm4::from_images(&[(0, 2), (1, 0), (3, 3)]).unwrap();
        assert_eq!(p.apply(2), 1);
    }
}
