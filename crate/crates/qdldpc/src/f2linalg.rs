//! Binary linear algebra and Tanner-graph analysis: rank, row-space
//! membership, F2 matrix products, girth, and 4-cycle counting.

use crate::dyadic::BinaryMatrix;
use crate::error::{Error, Result};

/// Rank over F2 by column-pivot Gaussian elimination on bit-packed rows.
pub fn rank_f2(h: &BinaryMatrix) -> usize {
    let wpr = h.words_per_row();
    let mut rows: Vec<Vec<u64>> = (0..h.rows()).map(|i| h.packed_row(i).to_vec()).collect();
    let mut rank = 0;
    for col in 0..h.cols() {
        let (w, bit) = (col >> 6, 1u64 << (col & 63));
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][w] & bit != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let (head, tail) = rows.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        for r in tail.iter_mut() {
            if r[w] & bit != 0 {
                for k in 0..wpr {
                    r[k] ^= pivot_row[k];
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Row-echelon form of a matrix, supporting O(rank · n/64) membership tests.
#[derive(Debug, Clone)]
pub struct RowSpace {
    cols: usize,
    /// (pivot column, packed row) with strictly increasing pivots.
    rows: Vec<(usize, Vec<u64>)>,
}

impl RowSpace {
    pub fn new(h: &BinaryMatrix) -> RowSpace {
        let wpr = h.words_per_row();
        let mut echelon: Vec<(usize, Vec<u64>)> = Vec::new();
        for i in 0..h.rows() {
            let mut row = h.packed_row(i).to_vec();
            for (piv, prow) in &echelon {
                if row[piv >> 6] & (1u64 << (piv & 63)) != 0 {
                    for k in 0..wpr {
                        row[k] ^= prow[k];
                    }
                }
            }
            if let Some(piv) = first_set_bit(&row) {
                echelon.push((piv, row));
                echelon.sort_by_key(|&(p, _)| p);
                // keep reduced form so later insertions stay cheap
                let snapshot = echelon.clone();
                for (piv, prow) in snapshot {
                    for (p2, r2) in echelon.iter_mut() {
                        if *p2 != piv && r2[piv >> 6] & (1u64 << (piv & 63)) != 0 {
                            for k in 0..wpr {
                                r2[k] ^= prow[k];
                            }
                        }
                    }
                }
            }
        }
        RowSpace { cols: h.cols(), rows: echelon }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// True iff `v` (one 0/1 byte per column) lies in the span of the rows.
    pub fn contains_bits(&self, v: &[u8]) -> Result<bool> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, got: v.len() });
        }
        let mut packed = vec![0u64; self.cols.div_ceil(64)];
        for (j, &b) in v.iter().enumerate() {
            if b != 0 {
                packed[j >> 6] |= 1u64 << (j & 63);
            }
        }
        Ok(self.contains_packed(&mut packed))
    }

    fn contains_packed(&self, v: &mut [u64]) -> bool {
        for (piv, prow) in &self.rows {
            if v[piv >> 6] & (1u64 << (piv & 63)) != 0 {
                for k in 0..v.len() {
                    v[k] ^= prow[k];
                }
            }
        }
        v.iter().all(|&w| w == 0)
    }
}

fn first_set_bit(words: &[u64]) -> Option<usize> {
    words
        .iter()
        .enumerate()
        .find(|(_, &w)| w != 0)
        .map(|(i, w)| (i << 6) + w.trailing_zeros() as usize)
}

/// True iff `v` is an F2 linear combination of the rows of `h`.
pub fn in_rowspace(h: &BinaryMatrix, v: &[u8]) -> Result<bool> {
    RowSpace::new(h).contains_bits(v)
}

/// A·Bᵀ over F2: entry (i, j) is the parity of the support overlap of
/// row i of `a` and row j of `b`.
pub fn matmul_f2(a: &BinaryMatrix, b_transposed: &BinaryMatrix) -> Result<BinaryMatrix> {
    if a.cols() != b_transposed.cols() {
        return Err(Error::DimensionMismatch { expected: a.cols(), got: b_transposed.cols() });
    }
    let wpr = a.words_per_row();
    let mut rows = Vec::with_capacity(a.rows());
    for i in 0..a.rows() {
        let ra = a.packed_row(i);
        let mut support = Vec::new();
        for j in 0..b_transposed.rows() {
            let rb = b_transposed.packed_row(j);
            let parity = (0..wpr).fold(0u32, |acc, k| acc ^ (ra[k] & rb[k]).count_ones()) & 1;
            if parity == 1 {
                support.push(j as u32);
            }
        }
        rows.push(support);
    }
    BinaryMatrix::from_rows(b_transposed.rows(), rows)
}

/// Exact number of 4-cycles: Σ over row pairs of C(overlap, 2).
pub fn count_4cycles(h: &BinaryMatrix) -> u64 {
    let wpr = h.words_per_row();
    let packed = h.packed_rows();
    let mut total = 0u64;
    for i in 0..h.rows() {
        let ri = &packed[i * wpr..(i + 1) * wpr];
        for j in i + 1..h.rows() {
            let rj = &packed[j * wpr..(j + 1) * wpr];
            let overlap = (0..wpr).map(|k| (ri[k] & rj[k]).count_ones() as u64).sum::<u64>();
            total += overlap * overlap.saturating_sub(1) / 2;
        }
    }
    total
}

/// Bipartite Tanner graph of a binary matrix: check node i ~ variable node j
/// iff H[i][j] = 1.
#[derive(Debug, Clone)]
pub struct TannerGraph {
    check_adj: Vec<Vec<u32>>,
    var_adj: Vec<Vec<u32>>,
}

impl TannerGraph {
    pub fn new(h: &BinaryMatrix) -> TannerGraph {
        TannerGraph { check_adj: h.row_supports().to_vec(), var_adj: h.col_supports() }
    }

    pub fn checks(&self) -> usize {
        self.check_adj.len()
    }

    pub fn vars(&self) -> usize {
        self.var_adj.len()
    }

    fn neighbors(&self, node: usize) -> &[u32] {
        if node < self.checks() {
            &self.check_adj[node]
        } else {
            &self.var_adj[node - self.checks()]
        }
    }

    fn neighbor_node(&self, node: usize, k: u32) -> usize {
        if node < self.checks() {
            self.checks() + k as usize
        } else {
            k as usize
        }
    }
}

/// Length of the shortest cycle, or `None` for a forest. Always even on a
/// bipartite graph. Per-node BFS, pruned at the best length found so far.
pub fn girth(g: &TannerGraph) -> Option<usize> {
    let n = g.checks() + g.vars();
    let mut best: Option<usize> = None;
    let mut dist = vec![u32::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut queue = std::collections::VecDeque::new();
    for start in 0..n {
        dist.fill(u32::MAX);
        queue.clear();
        dist[start] = 0;
        parent[start] = usize::MAX;
        queue.push_back(start);
        while let Some(u) = queue.pop_front() {
            if let Some(b) = best {
                // future detections have length >= 2*dist[u]
                if 2 * dist[u] as usize >= b {
                    break;
                }
            }
            for &k in g.neighbors(u) {
                let v = g.neighbor_node(u, k);
                if dist[v] == u32::MAX {
                    dist[v] = dist[u] + 1;
                    parent[v] = u;
                    queue.push_back(v);
                } else if parent[u] != v {
                    let len = (dist[u] + dist[v] + 1) as usize;
                    if best.map_or(true, |b| len < b) {
                        best = Some(len);
                    }
                }
            }
        }
    }
    best
}
