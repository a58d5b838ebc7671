use crate::error::{Error, Result};

/// A k-tuple of multi-indices (α¹, …, α^k) in the index set 𝒜_{j,k}.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndexTuple {
    pub j: usize,
    pub k: usize,
    pub alphas: Vec<Vec<usize>>,
}

impl MultiIndexTuple {
    /// Total derivative orders |α^m|.
    pub fn orders(&self) -> Vec<usize> {
        self.alphas.iter().map(|a| a.iter().sum()).collect()
    }

    pub fn is_valid(&self) -> bool {
        let d = self.alphas.first().map_or(0, Vec::len);
        let orders = self.orders();
        self.alphas.len() == self.k
            && self.alphas.iter().all(|a| a.len() == d)
            && orders.iter().all(|&o| o + self.k <= self.j)
            && orders.iter().sum::<usize>() == 2 * (self.j - self.k)
            && (0..d).all(|l| self.alphas.iter().map(|a| a[l]).sum::<usize>() % 2 == 0)
    }
}

/// All multi-indices in N^d with |α| <= max_order, in lexicographic order.
fn multi_indices(d: usize, max_order: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0; d];
    fn rec(pos: usize, budget: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if pos == cur.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..=budget {
            cur[pos] = v;
            rec(pos + 1, budget - v, cur, out);
        }
        cur[pos] = 0;
    }
    rec(0, max_order, &mut cur, &mut out);
    out
}

/// Enumerates 𝒜_{j,k} in lexicographic order of the concatenated tuple.
pub fn enumerate_index_set(j: usize, k: usize, d: usize) -> Result<Vec<MultiIndexTuple>> {
    if j < 3 || k < 3 || k > j {
        return Err(Error::InvalidArgument(format!("index set needs j >= 3 and 3 <= k <= j, got j={j}, k={k}")));
    }
    if d != 1 && d != 3 {
        return Err(Error::InvalidArgument(format!("index set dimension must be 1 or 3, got {d}")));
    }
    let cap = j - k;
    let target = 2 * cap;
    let candidates = multi_indices(d, cap);
    let mut out = Vec::new();
    let mut stack: Vec<usize> = Vec::with_capacity(k);
    fn rec(
        pos: usize,
        sum: usize,
        k: usize,
        cap: usize,
        target: usize,
        candidates: &[Vec<usize>],
        stack: &mut Vec<usize>,
        emit: &mut dyn FnMut(&[usize]),
    ) {
        if pos == k {
            if sum == target {
                emit(stack);
            }
            return;
        }
        let remaining = k - pos - 1;
        for (ci, c) in candidates.iter().enumerate() {
            let o: usize = c.iter().sum();
            let s = sum + o;
            if s > target || s + remaining * cap < target {
                continue;
            }
            stack.push(ci);
            rec(pos + 1, s, k, cap, target, candidates, stack, emit);
            stack.pop();
        }
    }
    let mut emit = |idx: &[usize]| {
        let alphas: Vec<Vec<usize>> = idx.iter().map(|&i| candidates[i].clone()).collect();
        if (0..d).all(|l| alphas.iter().map(|a| a[l]).sum::<usize>() % 2 == 0) {
            out.push(MultiIndexTuple { j, k, alphas });
        }
    };
    rec(0, 0, k, cap, target, &candidates, &mut stack, &mut emit);
    Ok(out)
}

/// The bijection i ↦ α(i) from positive integers to N^d in graded
/// lexicographic order (by total degree, then lexicographically descending),
/// truncated at depth `i_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrechetIndexing {
    dimension: usize,
    depth: usize,
    order: Vec<Vec<usize>>,
}

impl FrechetIndexing {
    pub const DEFAULT_DEPTH: usize = 24;

    pub fn new(dimension: usize, depth: usize) -> Self {
        let mut order = Vec::with_capacity(depth);
        let mut degree = 0;
        while order.len() < depth {
            let mut block: Vec<Vec<usize>> =
                multi_indices(dimension, degree).into_iter().filter(|a| a.iter().sum::<usize>() == degree).collect();
            block.sort_by(|a, b| b.cmp(a));
            order.extend(block);
            degree += 1;
        }
        order.truncate(depth);
        FrechetIndexing { dimension, depth, order }
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// α(i) for 1 <= i <= depth.
    pub fn multi_index(&self, i: usize) -> Vec<usize> {
        assert!(i >= 1 && i <= self.depth, "index {i} outside 1..={}", self.depth);
        self.order[i - 1].clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_index_sets() {
        let a = enumerate_index_set(3, 3, 1).unwrap();
        assert_eq!(a.len(), 1);
        assert_eq!(a[0].alphas, vec![vec![0], vec![0], vec![0]]);
        assert_eq!(enumerate_index_set(4, 4, 1).unwrap().len(), 1);
        let b = enumerate_index_set(4, 3, 1).unwrap();
        let tuples: Vec<Vec<usize>> = b.iter().map(|t| t.orders()).collect();
        assert_eq!(tuples, vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]);
        assert!(enumerate_index_set(2, 3, 1).is_err());
    }

    #[test]
    fn graded_order_in_three_dimensions() {
        let idx = FrechetIndexing::new(3, 5);
        assert_eq!(idx.multi_index(1), vec![0, 0, 0]);
        assert_eq!(idx.multi_index(2), vec![1, 0, 0]);
        assert_eq!(idx.multi_index(4), vec![0, 0, 1]);
        assert_eq!(idx.multi_index(5), vec![2, 0, 0]);
        let line = FrechetIndexing::new(1, 24);
        assert_eq!(line.multi_index(24), vec![23]);
    }
}
