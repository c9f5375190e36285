//! Average-linkage (UPGMA) agglomerative clustering.
//!
//! Cluster ids follow the usual convention: leaves are `0..n`, and the
//! cluster created by merge `k` gets id `n + k`.

use std::fmt::Write as _;

use crate::compare::DistanceMatrix;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Merge {
    pub left: usize,
    pub right: usize,
    pub height: f64,
    pub size: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Dendrogram {
    pub leaves: Vec<String>,
    pub merges: Vec<Merge>,
}

pub fn upgma(dm: &DistanceMatrix) -> Result<Dendrogram> {
    let n = dm.len();
    if n < 2 {
        return Err(Error::InvalidArgument("clustering needs at least two items".into()));
    }
    // active clusters: (id, size); dist indexed by position in `active`
    let mut active: Vec<(usize, usize)> = (0..n).map(|i| (i, 1)).collect();
    let mut dist: Vec<Vec<f64>> = (0..n).map(|i| dm.row(i).to_vec()).collect();
    let mut merges = Vec::with_capacity(n - 1);

    while active.len() > 1 {
        let mut best: Option<(f64, (usize, usize), usize, usize)> = None;
        for a in 0..active.len() {
            for b in a + 1..active.len() {
                let d = dist[a][b];
                let (ia, ib) = (active[a].0, active[b].0);
                let key = (ia.min(ib), ia.max(ib));
                let better = match best {
                    None => true,
                    Some((bd, bkey, _, _)) => d < bd || (d == bd && key < bkey),
                };
                if better {
                    best = Some((d, key, a, b));
                }
            }
        }
        let (height, (left, right), a, b) = best.expect("at least two active clusters");
        let (sa, sb) = (active[a].1, active[b].1);
        let size = sa + sb;
        merges.push(Merge {
            left,
            right,
            height,
            size,
        });

        // row a becomes the merged cluster, row b is removed
        for c in (0..active.len()).filter(|&c| c != a && c != b) {
            let d = (dist[a][c] * sa as f64 + dist[b][c] * sb as f64) / size as f64;
            dist[a][c] = d;
            dist[c][a] = d;
        }
        active[a] = (n + merges.len() - 1, size);
        active.remove(b);
        dist.remove(b);
        for row in &mut dist {
            row.remove(b);
        }
    }

    Ok(Dendrogram {
        leaves: dm.names.clone(),
        merges,
    })
}

impl Dendrogram {
    pub fn leaf_count(&self) -> usize {
        self.leaves.len()
    }

    fn height_of(&self, id: usize) -> f64 {
        let n = self.leaf_count();
        if id < n {
            0.0
        } else {
            self.merges[id - n].height
        }
    }

    fn members(&self, id: usize) -> Vec<usize> {
        let n = self.leaf_count();
        let mut out = Vec::new();
        let mut stack = vec![id];
        while let Some(c) = stack.pop() {
            if c < n {
                out.push(c);
            } else {
                let m = &self.merges[c - n];
                stack.push(m.right);
                stack.push(m.left);
            }
        }
        out
    }

    /// Cluster label per leaf after undoing the `k - 1` highest merges.
    /// Labels are numbered by first appearance in leaf order.
    pub fn cut(&self, k: usize) -> Result<Vec<usize>> {
        let n = self.leaf_count();
        if k == 0 || k > n {
            return Err(Error::InvalidArgument(format!("cut size {k} outside 1..={n}")));
        }
        // union-find over the first n - k merges
        let mut parent: Vec<usize> = (0..2 * n - 1).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for (step, m) in self.merges.iter().take(n - k).enumerate() {
            let id = n + step;
            let l = find(&mut parent, m.left);
            let r = find(&mut parent, m.right);
            parent[l] = id;
            parent[r] = id;
        }
        let mut label_of_root = std::collections::HashMap::new();
        Ok((0..n)
            .map(|leaf| {
                let root = find(&mut parent, leaf);
                let next = label_of_root.len();
                *label_of_root.entry(root).or_insert(next)
            })
            .collect())
    }

    /// Height of the merge that first joins leaves `i` and `j`.
    pub fn cophenetic(&self) -> Vec<Vec<f64>> {
        let n = self.leaf_count();
        let mut out = vec![vec![0.0; n]; n];
        for m in &self.merges {
            let (l, r) = (self.members(m.left), self.members(m.right));
            for &a in &l {
                for &b in &r {
                    out[a][b] = m.height;
                    out[b][a] = m.height;
                }
            }
        }
        out
    }

    /// Newick string whose branch lengths are parent height minus child height.
    pub fn to_newick(&self) -> String {
        let n = self.leaf_count();
        let root = n + self.merges.len() - 1;
        let mut out = String::new();
        self.write_newick(root, &mut out);
        out.push(';');
        out
    }

    fn write_newick(&self, id: usize, out: &mut String) {
        let n = self.leaf_count();
        if id < n {
            out.push_str(&newick_label(&self.leaves[id]));
            return;
        }
        let m = &self.merges[id - n];
        out.push('(');
        for (k, child) in [m.left, m.right].into_iter().enumerate() {
            if k > 0 {
                out.push(',');
            }
            self.write_newick(child, out);
            let _ = write!(out, ":{}", m.height - self.height_of(child));
        }
        out.push(')');
    }
}

fn newick_label(name: &str) -> String {
    if name.contains(|c: char| c.is_whitespace() || "():;,[]'".contains(c)) {
        format!("'{}'", name.replace('\'', "''"))
    } else {
        name.to_owned()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn dm(names: &[&str], full: &[f64]) -> DistanceMatrix {
        DistanceMatrix::from_full(names.iter().map(|s| s.to_string()).collect(), "test", full.to_vec())
            .unwrap()
    }

    #[test]
    fn two_leaves() {
        let d = upgma(&dm(&["a", "b"], &[0.0, 0.7, 0.7, 0.0])).unwrap();
        assert_eq!(
            d.merges,
            vec![Merge {
                left: 0,
                right: 1,
                height: 0.7,
                size: 2
            }]
        );
        assert_eq!(d.to_newick(), "(a:0.7,b:0.7);");
    }

    #[test]
    fn three_leaves_hand_trace() {
        let d = upgma(&dm(&["A", "B", "C"], &[0., 1., 4., 1., 0., 4., 4., 4., 0.])).unwrap();
        assert_eq!(d.merges[0], Merge { left: 0, right: 1, height: 1.0, size: 2 });
        assert_eq!(d.merges[1], Merge { left: 2, right: 3, height: 4.0, size: 3 });
        assert_eq!(d.cut(2).unwrap(), vec![0, 0, 1]);
        assert_eq!(d.cut(1).unwrap(), vec![0, 0, 0]);
        assert_eq!(d.cut(3).unwrap(), vec![0, 1, 2]);
        assert!(d.cut(0).is_err());
        assert!(d.cut(4).is_err());
        assert_eq!(d.to_newick(), "(C:4,(A:1,B:1):3);");
    }

    #[test]
    fn size_weighted_average() {
        // {a,b} joins c at (2 + 4) / 2, then d sits at (2 * 10 + 1 * 16) / 3
        let full = [
            0., 1., 2., 10., //
            1., 0., 4., 10., //
            2., 4., 0., 16., //
            10., 10., 16., 0.,
        ];
        let d = upgma(&dm(&["a", "b", "c", "d"], &full)).unwrap();
        assert_eq!(d.merges[1].height, 3.0);
        assert_eq!(d.merges[2].height, 12.0);
    }

    #[test]
    fn ties_use_smallest_id_pair() {
        let d = upgma(&dm(&["a", "b", "c"], &[0., 1., 1., 1., 0., 1., 1., 1., 0.])).unwrap();
        assert_eq!((d.merges[0].left, d.merges[0].right), (0, 1));
    }

    #[test]
    fn quoted_newick_labels() {
        let d = upgma(&dm(&["a b", "c"], &[0.0, 1.0, 1.0, 0.0])).unwrap();
        assert_eq!(d.to_newick(), "('a b':1,c:1);");
    }

    // random ultrametric: leaves placed under a random binary tree with
    // increasing heights
    fn ultrametric(n: usize, seed: u64) -> Vec<f64> {
        let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407) | 1;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        let mut groups: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
        let mut full = vec![0.0; n * n];
        let mut h = 0.0;
        while groups.len() > 1 {
            let a = (next() % groups.len() as u64) as usize;
            let ga = groups.remove(a);
            let b = (next() % groups.len() as u64) as usize;
            let gb = groups.remove(b);
            h += 1.0 + (next() % 5) as f64;
            for &x in &ga {
                for &y in &gb {
                    full[x * n + y] = h;
                    full[y * n + x] = h;
                }
            }
            groups.push([ga, gb].concat());
        }
        full
    }

    proptest! {
        #[test]
        fn ultrametric_reproduced_and_monotone(n in 2usize..12, seed in any::<u64>()) {
            let full = ultrametric(n, seed);
            let names: Vec<String> = (0..n).map(|i| format!("g{i}")).collect();
            let m = DistanceMatrix::from_full(names, "u", full.clone()).unwrap();
            let d = upgma(&m).unwrap();
            prop_assert_eq!(d.merges.len(), n - 1);
            for w in d.merges.windows(2) {
                prop_assert!(w[0].height <= w[1].height);
            }
            let coph = d.cophenetic();
            for i in 0..n {
                for j in 0..n {
                    prop_assert_eq!(coph[i][j], full[i * n + j]);
                }
            }
        }

        #[test]
        fn heights_monotone_on_random_input(n in 2usize..10, raw in prop::collection::vec(0f64..10.0, 45)) {
            let mut full = vec![0.0; n * n];
            let mut k = 0;
            for i in 0..n {
                for j in i + 1..n {
                    full[i * n + j] = raw[k];
                    full[j * n + i] = raw[k];
                    k += 1;
                }
            }
            let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
            let d = upgma(&DistanceMatrix::from_full(names, "r", full).unwrap()).unwrap();
            for w in d.merges.windows(2) {
                prop_assert!(w[0].height <= w[1].height + 1e-12);
            }
        }
    }
}
