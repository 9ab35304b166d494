//! Bistellar 2-3 and 3-2 moves, and seeded random obfuscation walks.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::cells::edge_index;
use super::perm::Perm4;
use super::{Gluing, Triangulation};

/// Copies every gluing of the old slots named in `map` onto the new slots,
/// composing corner maps; partners inside the removed region are rewired to
/// each other.
struct Rewirer {
    /// old (tet, face) -> (new tet, corner map old-tet-corners -> new-tet-corners)
    moved: Vec<((usize, u8), (usize, Perm4))>,
}

impl Rewirer {
    fn lookup(&self, slot: (usize, u8)) -> Option<(usize, Perm4)> {
        self.moved.iter().find(|(s, _)| *s == slot).map(|(_, d)| *d)
    }

    /// `old` describes the boundary of the removed region inside the old
    /// triangulation; `out` already contains the new tetrahedra (appended
    /// after the old ones). Returns gluings to install, in old-index space.
    fn rewire(&self, old: &Triangulation) -> Vec<(usize, u8, usize, u8, Perm4)> {
        let mut jobs = Vec::new();
        for &((t, f), (nt, map)) in &self.moved {
            let g = old.gluing(t, f).expect("closed input");
            let pf = g.perm.apply(f);
            let nf = map.apply(f);
            match self.lookup((g.tet, pf)) {
                Some((pt, pmap)) => {
                    // partner also moved: new gluing = pmap . g.perm . map^-1
                    let perm = pmap.compose(&g.perm).compose(&map.inverse());
                    jobs.push((nt, nf, pt, perm.apply(nf), perm));
                }
                None => {
                    let perm = g.perm.compose(&map.inverse());
                    jobs.push((nt, nf, g.tet, perm.apply(nf), perm));
                }
            }
        }
        jobs
    }
}

/// Rebuilds a triangulation dropping the tetrahedra in `remove` (sorted) and
/// appending `extra` fresh tetrahedra; `jobs` are gluings expressed with new
/// tets already at indices `old_count..old_count+extra`.
fn compact(
    old: &Triangulation,
    remove: &[usize],
    extra: usize,
    jobs: &[(usize, u8, usize, u8, Perm4)],
) -> Triangulation {
    let old_count = old.tet_count();
    let mut new_index = vec![usize::MAX; old_count + extra];
    let mut next = 0;
    for i in 0..old_count + extra {
        if remove.binary_search(&i).is_err() {
            new_index[i] = next;
            next += 1;
        }
    }
    let mut out = Triangulation::empty(next);
    // untouched gluings among surviving old tets
    for i in 0..old_count {
        if new_index[i] == usize::MAX {
            continue;
        }
        for f in 0..4u8 {
            let Some(g) = old.gluing(i, f) else { continue };
            if new_index[g.tet] == usize::MAX {
                continue; // replaced by a rewire job
            }
            out.set_raw(
                new_index[i],
                f,
                Gluing {
                    tet: new_index[g.tet],
                    perm: g.perm,
                },
            );
        }
    }
    for &(t1, f1, t2, f2, perm) in jobs {
        out.set_raw(new_index[t1], f1, Gluing { tet: new_index[t2], perm });
        out.set_raw(
            new_index[t2],
            f2,
            Gluing {
                tet: new_index[t1],
                perm: perm.inverse(),
            },
        );
    }
    out
}

/// 2-3 move across face `face` of tetrahedron `tet`. Legal whenever the two
/// sides of the face are distinct tetrahedra. The bipyramid over the face is
/// re-cut into three tetrahedra around the new edge joining the two apexes.
pub fn move_2_3(tri: &Triangulation, tet: usize, face: u8) -> Option<Triangulation> {
    let g = tri.gluing(tet, face)?;
    if g.tet == tet {
        return None;
    }
    let t1 = tet;
    let t2 = g.tet;
    let apex1 = face; // corner of t1 opposite the shared face
    let apex2 = g.perm.apply(face);
    // b, c, d: the shared face corners in t1's labelling
    let mut bcd = [0u8; 3];
    let mut k = 0;
    for v in 0..4u8 {
        if v != apex1 {
            bcd[k] = v;
            k += 1;
        }
    }
    let [b, c, d] = bcd;
    let old_count = tri.tet_count();
    // New tets n_i have corners (0, 1, 2, 3) = (A, E, x_i, y_i) with
    // (x_i, y_i) cycling through (b,c), (c,d), (d,b) in t1 labels.
    let pairs = [(b, c), (c, d), (d, b)];
    let n = [old_count, old_count + 1, old_count + 2];

    // Outer faces: t1's face opposite w maps into the new tet containing the
    // other three of {A, b, c, d}. Face opposite corner 1 (=E) of n_i is
    // (A, x_i, y_i); face opposite corner 0 (=A) is (E, x_i, y_i).
    let mut moved = Vec::new();
    for (i, &(x, y)) in pairs.iter().enumerate() {
        // t1's face (apex1, x, y) is t1's face opposite w where w is the
        // remaining corner of bcd.
        let w = bcd.iter().copied().find(|&v| v != x && v != y).unwrap();
        // map t1 corners -> n_i corners: apex1 -> 0, x -> 2, y -> 3, w -> 1
        // (w is the removed corner; routing it to slot 1 makes the map a
        // permutation; only the face corners matter).
        let map1 = Perm4::from_images(&[(apex1, 0), (x, 2), (y, 3), (w, 1)]).unwrap();
        moved.push(((t1, w), (n[i], map1)));
        // t2's face (apex2, px, py): in t2 labels via g.perm
        let (px, py, pw) = (g.perm.apply(x), g.perm.apply(y), g.perm.apply(w));
        let map2 = Perm4::from_images(&[(apex2, 1), (px, 2), (py, 3), (pw, 0)]).unwrap();
        moved.push(((t2, pw), (n[i], map2)));
    }
    let rew = Rewirer { moved };
    let mut jobs = rew.rewire(tri);
    // Inner faces: n_i's face opposite 3 (corners 0,1,2 = A,E,x_i) glues to
    // n_{i-1}'s face opposite 2 (corners 0,1,3 = A,E,y_{i-1} with y_{i-1} = x_i).
    for i in 0..3 {
        let prev = (i + 2) % 3;
        let perm = Perm4::new([0, 1, 3, 2]).unwrap(); // 0->0, 1->1, 2->3 (x_i -> y_prev), 3->2
        jobs.push((n[i], 3, n[prev], 2, perm));
    }
    let out = compact(tri, &[t1.min(t2), t1.max(t2)], 3, &jobs);
    debug_assert!(out.check_involution().is_ok(), "2-3 broke involution");
    Some(out)
}

/// 3-2 move around an edge of degree three with three distinct tetrahedra.
/// Inverse of `move_2_3`.
pub fn move_3_2(tri: &Triangulation, tet: usize, edge: u8) -> Option<Triangulation> {
    let (a0, e0) = super::cells::EDGE_VERTS[edge as usize];
    let others: Vec<u8> = (0..4u8).filter(|&v| v != a0 && v != e0).collect();
    // Walk around the edge (a, e), always crossing the face opposite c, the
    // corner we did not enter through. The gluing images keep (a, e, b, c)
    // aligned from tet to tet: b' = image of c (the new transversal corner),
    // c' = image of b (the shared-face corner, crossed next).
    let start = (tet, a0, e0);
    let mut ring = Vec::new(); // (tet, a, e, b, c)
    let mut cur = (tet, a0, e0, others[0], others[1]);
    let mut closed = false;
    for _ in 0..4 {
        let (t, a, e, b, c) = cur;
        ring.push((t, a, e, b, c));
        let g = tri.gluing(t, c)?;
        let p = g.perm;
        let next = (g.tet, p.apply(a), p.apply(e), p.apply(c), p.apply(b));
        if (next.0, super::cells::edge_index(next.1, next.2))
            == (start.0, super::cells::edge_index(start.1, start.2))
        {
            if next.1 != start.1 {
                return None; // edge endpoints swapped around the ring
            }
            closed = true;
            break;
        }
        cur = next;
    }
    if !closed || ring.len() != 3 {
        return None;
    }
    let tets: Vec<usize> = ring.iter().map(|r| r.0).collect();
    if tets[0] == tets[1] || tets[1] == tets[2] || tets[0] == tets[2] {
        return None;
    }

    // Bipyramid model: ring[i] = (A, E, q_{i+1}, q_i) as (a, e, b, c); the
    // walk identifies ring[i]'s b with ring[i+1]'s c, so corner q_j is well
    // defined on the equator. Replace by T1 = (A, q0, q1, q2) and
    // T2 = (E, q0, q1, q2), with q_j at corner 1 + j.
    let old_count = tri.tet_count();
    let (n1, n2) = (old_count, old_count + 1);
    let mut moved = Vec::new();
    for (i, &(t, a, e, b, c)) in ring.iter().enumerate() {
        let sc = (1 + i) as u8; // slot of q_i = corner c of ring[i]
        let sb = (1 + (i + 1) % 3) as u8; // slot of q_{i+1} = corner b
        let spare = pick_spare(sc, sb);
        // face of ring[i] opposite e, corners (a, b, c), maps into T1
        let map1 = Perm4::from_images(&[(a, 0), (c, sc), (b, sb), (e, spare)]).unwrap();
        moved.push(((t, e), (n1, map1)));
        // face opposite a, corners (e, b, c), maps into T2
        let map2 = Perm4::from_images(&[(e, 0), (c, sc), (b, sb), (a, spare)]).unwrap();
        moved.push(((t, a), (n2, map2)));
    }
    let rew = Rewirer { moved };
    let mut jobs = rew.rewire(tri);
    // T1 and T2 share the equator triangle (slots 1, 2, 3).
    jobs.push((n1, 0, n2, 0, Perm4::IDENTITY));
    let mut remove = tets.clone();
    remove.sort_unstable();
    let out = compact(tri, &remove, 2, &jobs);
    debug_assert!(out.check_involution().is_ok(), "3-2 broke involution");
    Some(out)
}

fn pick_spare(s1: u8, s2: u8) -> u8 {
    (1..=3u8).find(|&s| s != s1 && s != s2).unwrap()
}

/// Applies `moves` random bistellar moves (2-3 and 3-2 mixed), resampling
/// illegal picks with a retry cap of 100 per move. Deterministic given the
/// seed; the output is PL-homeomorphic to the input.
pub fn pachner_obfuscate(tri: &Triangulation, moves: u32, seed: u64) -> Triangulation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cur = tri.clone();
    for _ in 0..moves {
        let mut done = false;
        for _ in 0..100 {
            let t = cur.tet_count();
            // Bias toward growth so 3-2 opportunities appear.
            let do_23 = rng.gen_bool(0.55) || t < 3;
            if do_23 {
                let tet = rng.gen_range(0..t);
                let face = rng.gen_range(0..4u8);
                if let Some(next) = move_2_3(&cur, tet, face) {
                    cur = next;
                    done = true;
                    break;
                }
            } else {
                let tet = rng.gen_range(0..t);
                let edge = rng.gen_range(0..6u8);
                if let Some(next) = move_3_2(&cur, tet, edge) {
                    cur = next;
                    done = true;
                    break;
                }
            }
        }
        if !done {
            break; // no legal move found within the retry cap
        }
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triangulation::{fan_lens, validate};

    #[test]
    fn two_three_adds_one_tet() {
        let tri = fan_lens(4, 1).unwrap();
        let out = move_2_3(&tri, 0, 1).unwrap();
        assert_eq!(out.tet_count(), tri.tet_count() + 1);
        assert!(validate(&out).is_ok());
    }

    #[test]
    fn three_two_inverts_two_three(){
        let tri = fan_lens(5, 2).unwrap();
        let grown = move_2_3(&tri, 1, 1).unwrap();
        assert!(validate(&grown).is_ok());
        // find some legal 3-2 and check the count drops
        let mut shrunk = None;
        'outer: for tet in 0..grown.tet_count() {
            for edge in 0..6u8 {
                if let Some(s) = move_3_2(&grown, tet, edge) {
                    shrunk = Some(s);
                    break 'outer;
                }
            }
        }
        let s = shrunk.expect("a 3-2 move should be legal after a 2-3");
        assert_eq!(s.tet_count(), grown.tet_count() - 1);
        assert!(validate(&s).is_ok());
    }

    #[test]
    fn zero_moves_is_identity() {
        let tri = fan_lens(7, 2).unwrap();
        assert_eq!(pachner_obfuscate(&tri, 0, 1), tri);
    }

    #[test]
    fn obfuscation_keeps_validity() {
        let tri = fan_lens(7, 2).unwrap();
        for seed in 0..4 {
            let out = pachner_obfuscate(&tri, 25, seed);
            assert!(validate(&out).is_ok(), "seed {seed} broke validity");
            assert!(out.tet_count() >= 2);
        }
    }
}
