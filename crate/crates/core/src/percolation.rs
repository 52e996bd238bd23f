//! Percolation functions on multigraphs: exact truth tables at small edge
//! counts, per-configuration witness/block quantities via shortest paths
//! and minimum cuts, and seeded Monte-Carlo estimators for larger grids.
//!
//! Randomness contract: sample `j` of a run draws from a ChaCha8 stream
//! seeded with `splitmix64(seed ^ splitmix64(j))`. Estimates therefore
//! depend only on `(seed, samples)`; sharding a run splits the sample
//! index range and cannot change the result.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::VecDeque;

use crate::bf::BooleanFunction;
use crate::dtree::{self, DecisionTree};
use crate::error::{Error, Result};

/// Finite multigraph with two terminal vertex sets. Parallel edges and
/// self-loops are allowed; the percolation function is the indicator of
/// an open path between the terminal sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multigraph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    side_a: Vec<usize>,
    side_b: Vec<usize>,
}

impl Multigraph {
    pub fn new(
        vertex_count: usize,
        edges: Vec<(usize, usize)>,
        side_a: Vec<usize>,
        side_b: Vec<usize>,
    ) -> Result<Self> {
        for &(u, v) in &edges {
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::InvalidParam(format!(
                    "edge ({u},{v}) out of range for {vertex_count} vertices"
                )));
            }
        }
        for &v in side_a.iter().chain(&side_b) {
            if v >= vertex_count {
                return Err(Error::InvalidParam(format!("terminal {v} out of range")));
            }
        }
        Ok(Multigraph {
            vertex_count,
            edges,
            side_a,
            side_b,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn side_a(&self) -> &[usize] {
        &self.side_a
    }

    pub fn side_b(&self) -> &[usize] {
        &self.side_b
    }

    fn check_omega(&self, omega: &[bool]) -> Result<()> {
        if omega.len() != self.edges.len() {
            return Err(Error::ArityMismatch {
                expected: self.edges.len(),
                got: omega.len(),
            });
        }
        Ok(())
    }

    fn check_terminals(&self) -> Result<()> {
        if self.side_a.is_empty() || self.side_b.is_empty() {
            return Err(Error::InvalidParam(
                "percolation needs nonempty terminal sets".into(),
            ));
        }
        Ok(())
    }

    fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            adj[u].push((v, i));
            if u != v {
                adj[v].push((u, i));
            }
        }
        adj
    }
}

/// The square-crossing grid: vertices and edges of the integer box
/// `[0, m+1] x [0, m]`, horizontal edges listed row by row (bottom row
/// first), then vertical edges column by column. The terminal sets are
/// the left and right columns.
pub fn grid_graph(m: usize) -> Multigraph {
    let cols = m + 2;
    let rows = m + 1;
    let id = |x: usize, y: usize| x * rows + y;
    let mut edges = Vec::new();
    for y in 0..rows {
        for x in 0..cols - 1 {
            edges.push((id(x, y), id(x + 1, y)));
        }
    }
    for x in 0..cols {
        for y in 0..rows - 1 {
            edges.push((id(x, y), id(x, y + 1)));
        }
    }
    let side_a = (0..rows).map(|y| id(0, y)).collect();
    let side_b = (0..rows).map(|y| id(cols - 1, y)).collect();
    Multigraph::new(cols * rows, edges, side_a, side_b).expect("grid is well formed")
}

struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }
    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
    }
}

fn connected_where<F: Fn(usize) -> bool>(g: &Multigraph, open: F) -> bool {
    let mut uf = UnionFind::new(g.vertex_count + 1);
    // weld the A side onto a virtual root so one pass suffices
    let root = g.vertex_count;
    for &a in &g.side_a {
        uf.union(root, a);
    }
    for (i, &(u, v)) in g.edges.iter().enumerate() {
        if open(i) {
            uf.union(u, v);
        }
    }
    let r = uf.find(root);
    g.side_b.iter().any(|&b| uf.find(b) == r)
}

/// Whether the open subgraph connects the two terminal sets.
pub fn connected(g: &Multigraph, omega: &[bool]) -> Result<bool> {
    g.check_omega(omega)?;
    g.check_terminals()?;
    Ok(connected_where(g, |i| omega[i]))
}

/// The percolation function of `g`; bit `i` is edge `i` in list order.
pub fn perc_function(g: &Multigraph) -> Result<BooleanFunction> {
    perc_function_with_cap(g, crate::bf::DEFAULT_TABLE_CAP)
}

pub fn perc_function_with_cap(g: &Multigraph, cap: usize) -> Result<BooleanFunction> {
    g.check_terminals()?;
    let e = g.edge_count();
    if e > cap {
        return Err(Error::CapExceeded {
            what: "percolation truth table",
            cap,
            need: e,
        });
    }
    BooleanFunction::from_indicator_with_cap(e, |idx| connected_where(g, |i| idx >> i & 1 == 1), cap)
}

/// Minimum witness size of the configuration: the edge length of a
/// shortest open terminal-to-terminal path when connected, and the
/// minimum closed edge cut separating the terminal components otherwise.
pub fn witness_at(g: &Multigraph, omega: &[bool]) -> Result<usize> {
    g.check_omega(omega)?;
    g.check_terminals()?;
    if connected_where(g, |i| omega[i]) {
        Ok(shortest_open_path(g, omega))
    } else {
        Ok(min_closed_cut(g, omega))
    }
}

fn shortest_open_path(g: &Multigraph, omega: &[bool]) -> usize {
    let adj = g.adjacency();
    let mut dist = vec![usize::MAX; g.vertex_count];
    let mut queue = VecDeque::new();
    for &a in &g.side_a {
        if dist[a] == usize::MAX {
            dist[a] = 0;
            queue.push_back(a);
        }
    }
    let on_b = {
        let mut mark = vec![false; g.vertex_count];
        for &b in &g.side_b {
            mark[b] = true;
        }
        mark
    };
    while let Some(v) = queue.pop_front() {
        if on_b[v] {
            return dist[v];
        }
        for &(to, eid) in &adj[v] {
            if omega[eid] && dist[to] == usize::MAX {
                dist[to] = dist[v] + 1;
                queue.push_back(to);
            }
        }
    }
    unreachable!("caller checked connectivity")
}

/// Collapses open components and runs unit-capacity max flow over the
/// closed edges between them (a super source over the A components and a
/// super sink over the B components).
fn min_closed_cut(g: &Multigraph, omega: &[bool]) -> usize {
    let mut uf = UnionFind::new(g.vertex_count);
    for (i, &(u, v)) in g.edges.iter().enumerate() {
        if omega[i] {
            uf.union(u, v);
        }
    }
    // map component roots to dense ids; 0 = source, 1 = sink
    let mut comp_of = vec![usize::MAX; g.vertex_count];
    let mut is_a = vec![false; g.vertex_count];
    let mut is_b = vec![false; g.vertex_count];
    for &a in &g.side_a {
        let r = uf.find(a);
        is_a[r] = true;
    }
    for &b in &g.side_b {
        let r = uf.find(b);
        is_b[r] = true;
    }
    let mut next = 2;
    let mut node_of_root = |r: usize, comp_of: &mut Vec<usize>| -> usize {
        if is_a[r] {
            0
        } else if is_b[r] {
            1
        } else {
            if comp_of[r] == usize::MAX {
                comp_of[r] = next;
                next += 1;
            }
            comp_of[r]
        }
    };
    let mut arcs: Vec<(usize, usize)> = Vec::new();
    for (i, &(u, v)) in g.edges.iter().enumerate() {
        if !omega[i] {
            let ru = uf.find(u);
            let rv = uf.find(v);
            if ru == rv {
                continue;
            }
            let nu = node_of_root(ru, &mut comp_of);
            let nv = node_of_root(rv, &mut comp_of);
            if nu != nv {
                arcs.push((nu, nv));
            }
        }
    }
    max_flow_unit(next, &arcs, 0, 1)
}

/// Edmonds-Karp with unit capacities on undirected arcs.
fn max_flow_unit(nodes: usize, arcs: &[(usize, usize)], s: usize, t: usize) -> usize {
    // residual graph: each undirected arc becomes two directed arcs of
    // capacity 1, each with its reverse of capacity 0
    let mut head: Vec<usize> = Vec::new();
    let mut cap: Vec<i32> = Vec::new();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); nodes];
    let push_arc = |u: usize, v: usize, c: i32,
                        head: &mut Vec<usize>,
                        cap: &mut Vec<i32>,
                        adj: &mut Vec<Vec<usize>>| {
        adj[u].push(head.len());
        head.push(v);
        cap.push(c);
        adj[v].push(head.len());
        head.push(u);
        cap.push(0);
    };
    for &(u, v) in arcs {
        push_arc(u, v, 1, &mut head, &mut cap, &mut adj);
        push_arc(v, u, 1, &mut head, &mut cap, &mut adj);
    }
    let mut flow = 0;
    loop {
        let mut prev_arc = vec![usize::MAX; nodes];
        let mut visited = vec![false; nodes];
        visited[s] = true;
        let mut queue = VecDeque::from([s]);
        'bfs: while let Some(v) = queue.pop_front() {
            for &e in &adj[v] {
                if cap[e] > 0 && !visited[head[e]] {
                    visited[head[e]] = true;
                    prev_arc[head[e]] = e;
                    if head[e] == t {
                        break 'bfs;
                    }
                    queue.push_back(head[e]);
                }
            }
        }
        if !visited[t] {
            return flow;
        }
        let mut v = t;
        while v != s {
            let e = prev_arc[v];
            cap[e] -= 1;
            cap[e ^ 1] += 1;
            v = head[e ^ 1];
        }
        flow += 1;
    }
}

/// Number of edges whose flip changes connectivity.
pub fn pivotal_count(g: &Multigraph, omega: &[bool]) -> Result<usize> {
    g.check_omega(omega)?;
    g.check_terminals()?;
    let base = connected_where(g, |i| omega[i]);
    let mut count = 0;
    for e in 0..g.edge_count() {
        let flipped = connected_where(g, |i| if i == e { !omega[i] } else { omega[i] });
        if flipped != base {
            count += 1;
        }
    }
    Ok(count)
}

// ---------------------------------------------------------------------------
// Monte Carlo
// ---------------------------------------------------------------------------

/// Seeded estimate with its standard error
/// (sample standard deviation over the square root of the sample count).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub samples: u64,
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum McQuantity {
    Crossing,
    Sensitivity,
    Witness,
}

impl std::str::FromStr for McQuantity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "crossing" => Ok(McQuantity::Crossing),
            "sensitivity" => Ok(McQuantity::Sensitivity),
            "witness" => Ok(McQuantity::Witness),
            other => Err(Error::Parse(format!("unknown quantity {other:?}"))),
        }
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// The per-sample generator; see the module docs for the contract.
pub fn sample_rng(seed: u64, sample_index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(splitmix64(seed ^ splitmix64(sample_index)))
}

fn sample_omega(g: &Multigraph, p: f64, rng: &mut ChaCha8Rng) -> Vec<bool> {
    (0..g.edge_count()).map(|_| rng.gen::<f64>() < p).collect()
}

/// All sampled quantities are small integers, so the sums accumulate
/// exactly; grouping samples into shards cannot change the estimate.
#[derive(Clone, Copy, Default)]
struct Accumulator {
    n: u64,
    sum: u64,
    sum_sq: u128,
}

impl Accumulator {
    fn push(&mut self, x: u64) {
        self.n += 1;
        self.sum += x;
        self.sum_sq += (x as u128) * (x as u128);
    }
    fn merge(&mut self, o: Accumulator) {
        self.n += o.n;
        self.sum += o.sum;
        self.sum_sq += o.sum_sq;
    }
    fn finish(self, seed: u64) -> McEstimate {
        let n = self.n as f64;
        let mean = self.sum as f64 / n;
        let var = if self.n > 1 {
            ((self.sum_sq as f64 - n * mean * mean) / (n - 1.0)).max(0.0)
        } else {
            0.0
        };
        McEstimate {
            mean,
            std_error: (var / n).sqrt(),
            samples: self.n,
            seed,
        }
    }
}

fn sample_quantity(
    g: &Multigraph,
    p: f64,
    quantity: McQuantity,
    seed: u64,
    j: u64,
) -> Result<u64> {
    let mut rng = sample_rng(seed, j);
    let omega = sample_omega(g, p, &mut rng);
    Ok(match quantity {
        McQuantity::Crossing => connected(g, &omega)? as u64,
        McQuantity::Sensitivity => pivotal_count(g, &omega)? as u64,
        McQuantity::Witness => witness_at(g, &omega)? as u64,
    })
}

fn check_mc_args(g: &Multigraph, p: f64, samples: u64) -> Result<()> {
    g.check_terminals()?;
    if samples == 0 {
        return Err(Error::InvalidParam("need at least one sample".into()));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Domain(format!("p = {p} outside [0,1]")));
    }
    Ok(())
}

/// Seeded i.i.d. estimate of a per-configuration quantity under `pi_p`.
pub fn mc_estimate(
    g: &Multigraph,
    p: f64,
    quantity: McQuantity,
    samples: u64,
    seed: u64,
) -> Result<McEstimate> {
    mc_estimate_sharded(g, p, quantity, samples, seed, 1)
}

/// Same estimate computed over `shards` contiguous sample-index ranges
/// and merged; exact integer accumulation makes the result identical for
/// every shard count.
pub fn mc_estimate_sharded(
    g: &Multigraph,
    p: f64,
    quantity: McQuantity,
    samples: u64,
    seed: u64,
    shards: u64,
) -> Result<McEstimate> {
    check_mc_args(g, p, samples)?;
    if shards == 0 {
        return Err(Error::InvalidParam("need at least one shard".into()));
    }
    let mut total = Accumulator::default();
    let per = samples.div_ceil(shards);
    for s in 0..shards {
        let lo = s * per;
        let hi = ((s + 1) * per).min(samples);
        let mut acc = Accumulator::default();
        for j in lo..hi {
            acc.push(sample_quantity(g, p, quantity, seed, j)?);
        }
        total.merge(acc);
    }
    Ok(total.finish(seed))
}

/// Minimum sampled value of a quantity over the same sample stream.
pub fn mc_minimum(
    g: &Multigraph,
    p: f64,
    quantity: McQuantity,
    samples: u64,
    seed: u64,
) -> Result<u64> {
    check_mc_args(g, p, samples)?;
    let mut min = u64::MAX;
    for j in 0..samples {
        min = min.min(sample_quantity(g, p, quantity, seed, j)?);
    }
    Ok(min)
}

// ---------------------------------------------------------------------------
// Cluster exploration
// ---------------------------------------------------------------------------

/// The next edge the left-to-right cluster exploration reveals, given the
/// revealed statuses so far: grow the open cluster of each A-side vertex
/// in order, and query the first unrevealed edge adjacent to the cluster
/// under construction. `None` once every A-cluster is sealed.
pub fn exploration_next(g: &Multigraph, status: &[Option<bool>]) -> Option<usize> {
    let adj = g.adjacency();
    let mut visited = vec![false; g.vertex_count];
    for &a in &g.side_a {
        if visited[a] {
            continue;
        }
        visited[a] = true;
        let mut queue = VecDeque::from([a]);
        while let Some(v) = queue.pop_front() {
            for &(to, eid) in &adj[v] {
                match status[eid] {
                    None => return Some(eid),
                    Some(true) => {
                        if !visited[to] {
                            visited[to] = true;
                            queue.push_back(to);
                        }
                    }
                    Some(false) => {}
                }
            }
        }
    }
    None
}

/// Whether the revealed statuses already determine the crossing event:
/// either the revealed open edges connect the sides, or even opening all
/// unrevealed edges cannot.
pub fn exploration_determined(g: &Multigraph, status: &[Option<bool>]) -> Option<bool> {
    if connected_where(g, |i| status[i] == Some(true)) {
        Some(true)
    } else if !connected_where(g, |i| status[i] != Some(false)) {
        Some(false)
    } else {
        None
    }
}

/// Seeded estimate of the expected number of edges the exploration
/// reveals before the crossing event is determined; an upper bound on
/// the optimal expected query count.
pub fn explore_cost(g: &Multigraph, p: f64, samples: u64, seed: u64) -> Result<McEstimate> {
    g.check_terminals()?;
    if samples == 0 {
        return Err(Error::InvalidParam("need at least one sample".into()));
    }
    let mut acc = Accumulator::default();
    for j in 0..samples {
        let mut rng = sample_rng(seed, j);
        let omega = sample_omega(g, p, &mut rng);
        let mut status: Vec<Option<bool>> = vec![None; g.edge_count()];
        let mut revealed = 0u64;
        while exploration_determined(g, &status).is_none() {
            let e = exploration_next(g, &status)
                .expect("undetermined crossing leaves a frontier edge");
            status[e] = Some(omega[e]);
            revealed += 1;
        }
        acc.push(revealed);
    }
    Ok(acc.finish(seed))
}

/// The exploration strategy as an explicit decision tree over the edges
/// of `g`; its exact expected cost cross-checks the estimator on graphs
/// small enough for a truth table.
pub fn exploration_tree(g: &Multigraph) -> Result<DecisionTree> {
    let f = perc_function(g)?;
    dtree::tree_from_strategy(&f, |r| {
        let status: Vec<Option<bool>> = (0..g.edge_count())
            .map(|i| {
                if r.assigns(i) {
                    Some(r.values >> i & 1 == 1)
                } else {
                    None
                }
            })
            .collect();
        exploration_next(g, &status)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    fn parallel_series_gadget() -> Multigraph {
        // a =(2 edges)= v =(2 edges)= b
        Multigraph::new(3, vec![(0, 1), (0, 1), (1, 2), (1, 2)], vec![0], vec![2]).unwrap()
    }

    #[test]
    fn tiny_percolation_functions() {
        let two_parallel =
            Multigraph::new(2, vec![(0, 1), (0, 1)], vec![0], vec![1]).unwrap();
        assert_eq!(perc_function(&two_parallel).unwrap(), zoo::or(2).unwrap());
        let path =
            Multigraph::new(3, vec![(0, 1), (1, 2)], vec![0], vec![2]).unwrap();
        assert_eq!(perc_function(&path).unwrap(), zoo::and(2).unwrap());
        let gadget = perc_function(&parallel_series_gadget()).unwrap();
        let and_or = zoo::and(2)
            .unwrap()
            .compose(&zoo::or(2).unwrap())
            .unwrap();
        assert_eq!(gadget, and_or);
    }

    #[test]
    fn grid_shape() {
        let g = grid_graph(1);
        assert_eq!(g.edge_count(), 7);
        assert_eq!(g.vertex_count(), 6);
        assert_eq!(g.side_a().len(), 2);
        let g = grid_graph(2);
        assert_eq!(g.edge_count(), 17);
        assert_eq!(g.side_a().len(), 3);
    }

    #[test]
    fn connectivity_cases() {
        let g = grid_graph(1);
        assert!(connected(&g, &vec![true; 7]).unwrap());
        assert!(!connected(&g, &vec![false; 7]).unwrap());
        // bottom row open: horizontal edges 0 and 1
        let mut omega = vec![false; 7];
        omega[0] = true;
        omega[1] = true;
        assert!(connected(&g, &omega).unwrap());
        assert_eq!(witness_at(&g, &omega).unwrap(), 2);
        assert!(connected(&g, &[true]).is_err());
    }

    #[test]
    fn witness_on_closed_grid() {
        let g = grid_graph(1);
        assert_eq!(witness_at(&g, &vec![false; 7]).unwrap(), 2);
        // series path: every open edge pivotal
        let path = Multigraph::new(4, vec![(0, 1), (1, 2), (2, 3)], vec![0], vec![3]).unwrap();
        assert_eq!(pivotal_count(&path, &vec![true; 3]).unwrap(), 3);
        let two_parallel =
            Multigraph::new(2, vec![(0, 1), (0, 1)], vec![0], vec![1]).unwrap();
        assert_eq!(pivotal_count(&two_parallel, &vec![true; 2]).unwrap(), 0);
    }

    #[test]
    fn witness_and_pivotal_match_generic_engines_on_small_grid() {
        let g = grid_graph(1);
        let f = perc_function(&g).unwrap();
        for idx in 0..128u32 {
            let omega: Vec<bool> = (0..7).map(|i| idx >> i & 1 == 1).collect();
            assert_eq!(
                witness_at(&g, &omega).unwrap(),
                crate::pointwise::witness_size_at(&f, idx),
                "witness mismatch at {idx:#b}"
            );
            assert_eq!(
                witness_at(&g, &omega).unwrap(),
                crate::pointwise::block_sensitivity_at(&f, idx),
                "block mismatch at {idx:#b}"
            );
            assert_eq!(
                pivotal_count(&g, &omega).unwrap(),
                crate::pointwise::sensitivity_at(&f, idx),
                "sensitivity mismatch at {idx:#b}"
            );
        }
    }

    #[test]
    fn self_loops_are_inert() {
        let g = Multigraph::new(3, vec![(0, 0), (0, 1), (1, 2), (2, 2)], vec![0], vec![2])
            .unwrap();
        let omega = vec![false, true, true, false];
        assert!(connected(&g, &omega).unwrap());
        assert_eq!(witness_at(&g, &omega).unwrap(), 2);
    }

    #[test]
    fn estimates_are_seed_deterministic() {
        let g = grid_graph(2);
        let a = mc_estimate(&g, 0.5, McQuantity::Crossing, 500, 7).unwrap();
        let b = mc_estimate(&g, 0.5, McQuantity::Crossing, 500, 7).unwrap();
        assert_eq!(a, b);
        let c = mc_estimate(&g, 0.5, McQuantity::Crossing, 500, 8).unwrap();
        assert_ne!(a.mean, c.mean);
    }

    #[test]
    fn crossing_estimate_near_half() {
        let g = grid_graph(2);
        let est = mc_estimate(&g, 0.5, McQuantity::Crossing, 4000, 42).unwrap();
        assert!((est.mean - 0.5).abs() < 5.0 * est.std_error, "{est:?}");
    }

    #[test]
    fn exploration_matches_exact_tree_cost() {
        use num_traits::ToPrimitive;
        let g = grid_graph(1);
        let f = perc_function(&g).unwrap();
        let t = exploration_tree(&g).unwrap();
        let exact_cost =
            dtree::tree_cost(&t, &f, &crate::measure::ProductMeasure::half()).unwrap();
        let exact_cost = exact_cost.to_f64().unwrap();
        let est = explore_cost(&g, 0.5, 4000, 11).unwrap();
        assert!(
            (est.mean - exact_cost).abs() < 5.0 * est.std_error,
            "{est:?} vs exact {exact_cost}"
        );
    }

    #[test]
    fn exploration_cost_bounded_by_edges() {
        let g = grid_graph(2);
        for j in 0..50 {
            let mut rng = sample_rng(3, j);
            let omega = sample_omega(&g, 0.3, &mut rng);
            let mut status = vec![None; g.edge_count()];
            let mut revealed = 0;
            while exploration_determined(&g, &status).is_none() {
                let e = exploration_next(&g, &status).unwrap();
                status[e] = Some(omega[e]);
                revealed += 1;
            }
            assert!(revealed <= g.edge_count());
        }
    }
}
