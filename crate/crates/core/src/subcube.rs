//! Subcube partitions: verification, exact optimal costs (worst-case and
//! distributional), the algorithm-induced test, and edge boundaries.
//!
//! The optimum search is an exact-cover branch and bound run separately
//! on each level set (every cell lies inside one, and both objectives
//! decompose). Candidate cells at the current pivot point are *all*
//! constant cells containing it, not just maximal ones — optimal
//! partitions can need non-maximal cells. Two prunes keep it exact and
//! fast: the mass-weighted minimum-witness bound for the distributional
//! objective, and a parity-balance argument for the worst-case decision
//! problem (every cell with a free bit covers equally many even- and
//! odd-weight points, so a side with nonzero signed point count forces a
//! full-codimension singleton).

use crate::bf::{BooleanFunction, Restriction};
use crate::dtree::DecisionTree;
use crate::error::{Error, Result};
use crate::measure::ProductMeasure;
use crate::scalar::Scalar;

/// Default arity cap for the exact partition search.
pub const DEFAULT_SUBCUBE_CAP: usize = 6;

/// Hard ceiling of the search engine (point sets are 256-bit).
pub const SUBCUBE_SEARCH_CEILING: usize = 8;

/// A subcube given by fixing a subset of bits: bit `i` of `fixed` set
/// means input bit `i+1` is pinned to bit `i` of `values`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct SubcubePattern {
    arity: usize,
    fixed: u32,
    values: u32,
}

impl SubcubePattern {
    pub fn new(arity: usize, fixed: u32, values: u32) -> Result<Self> {
        let full = if arity == 32 { u32::MAX } else { (1u32 << arity) - 1 };
        if fixed & !full != 0 || values & !fixed != 0 {
            return Err(Error::InvalidParam(
                "pattern fixes bits outside its arity or values outside its mask".into(),
            ));
        }
        Ok(SubcubePattern {
            arity,
            fixed,
            values,
        })
    }

    pub fn full_cube(arity: usize) -> Self {
        SubcubePattern {
            arity,
            fixed: 0,
            values: 0,
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn fixed_mask(&self) -> u32 {
        self.fixed
    }

    pub fn values(&self) -> u32 {
        self.values
    }

    pub fn codimension(&self) -> usize {
        self.fixed.count_ones() as usize
    }

    pub fn contains_index(&self, x: u32) -> bool {
        x & self.fixed == self.values
    }

    /// Two patterns intersect iff they agree on every commonly fixed bit.
    pub fn intersects(&self, other: &SubcubePattern) -> bool {
        let common = self.fixed & other.fixed;
        self.values & common == other.values & common
    }

    pub fn as_restriction(&self) -> Restriction {
        Restriction {
            assigned: self.fixed,
            values: self.values,
        }
    }

    /// One character per bit over `{0,1,*}`, bit 1 first.
    pub fn to_text(&self) -> String {
        (0..self.arity)
            .map(|i| {
                if self.fixed >> i & 1 == 0 {
                    '*'
                } else if self.values >> i & 1 == 1 {
                    '1'
                } else {
                    '0'
                }
            })
            .collect()
    }

    pub fn from_text(line: &str) -> Result<Self> {
        let mut fixed = 0u32;
        let mut values = 0u32;
        let mut arity = 0;
        for (i, ch) in line.trim().chars().enumerate() {
            if i >= 32 {
                return Err(Error::Parse("pattern longer than 32 bits".into()));
            }
            match ch {
                '*' => {}
                '0' => fixed |= 1 << i,
                '1' => {
                    fixed |= 1 << i;
                    values |= 1 << i;
                }
                _ => return Err(Error::Parse(format!("bad pattern character {ch:?}"))),
            }
            arity += 1;
        }
        SubcubePattern::new(arity, fixed, values)
    }
}

impl std::fmt::Debug for SubcubePattern {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

/// Why a cell list fails to be a partition determining `f`.
#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum PartitionDefect {
    #[error("cells {0} and {1} overlap")]
    Overlap(usize, usize),
    #[error("input index {0} is not covered by any cell")]
    Gap(u32),
    #[error("function is not constant on cell {0}")]
    NonConstant(usize),
    #[error("cell {0} has arity {got}, partition has arity {expected}", got = .1, expected = .2)]
    ArityMismatch(usize, usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubcubePartition {
    arity: usize,
    cells: Vec<SubcubePattern>,
}

impl SubcubePartition {
    pub fn new(arity: usize, cells: Vec<SubcubePattern>) -> Result<Self> {
        for (i, c) in cells.iter().enumerate() {
            if c.arity != arity {
                return Err(Error::Partition(PartitionDefect::ArityMismatch(
                    i, c.arity, arity,
                )));
            }
        }
        Ok(SubcubePartition { arity, cells })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn cells(&self) -> &[SubcubePattern] {
        &self.cells
    }

    /// Pairwise disjointness plus exact coverage: disjoint cells cover the
    /// cube iff the cell sizes sum to `2^n`.
    pub fn check_cover(&self) -> std::result::Result<(), PartitionDefect> {
        for i in 0..self.cells.len() {
            for j in i + 1..self.cells.len() {
                if self.cells[i].intersects(&self.cells[j]) {
                    return Err(PartitionDefect::Overlap(i, j));
                }
            }
        }
        let total: u64 = self
            .cells
            .iter()
            .map(|c| 1u64 << (self.arity - c.codimension()))
            .sum();
        if total != 1u64 << self.arity {
            // locate a witness gap for the diagnostic
            for x in 0..1u32 << self.arity {
                if self.cell_index_of(x).is_none() {
                    return Err(PartitionDefect::Gap(x));
                }
            }
        }
        Ok(())
    }

    pub fn cell_index_of(&self, x: u32) -> Option<usize> {
        self.cells.iter().position(|c| c.contains_index(x))
    }

    /// One cell per line over `{0,1,*}`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.cells {
            out.push_str(&c.to_text());
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let cells: Vec<SubcubePattern> = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(SubcubePattern::from_text)
            .collect::<Result<_>>()?;
        let arity = cells
            .first()
            .map(|c| c.arity)
            .ok_or_else(|| Error::Parse("empty partition document".into()))?;
        SubcubePartition::new(arity, cells)
    }

    /// The leaves of a decision tree, as a partition.
    pub fn from_tree(arity: usize, tree: &DecisionTree) -> Self {
        fn walk(r: Restriction, t: &DecisionTree, arity: usize, out: &mut Vec<SubcubePattern>) {
            match t {
                DecisionTree::Leaf(_) => out.push(SubcubePattern {
                    arity,
                    fixed: r.assigned,
                    values: r.values,
                }),
                DecisionTree::Query { bit, zero, one } => {
                    walk(r.fix(*bit, false), zero, arity, out);
                    walk(r.fix(*bit, true), one, arity, out);
                }
            }
        }
        let mut cells = Vec::new();
        walk(Restriction::EMPTY, tree, arity, &mut cells);
        SubcubePartition { arity, cells }
    }
}

/// Full verification: partition-ness plus `f` constant on every cell.
pub fn check_partition(
    p: &SubcubePartition,
    f: &BooleanFunction,
) -> std::result::Result<(), PartitionDefect> {
    if p.arity != f.arity() {
        return Err(PartitionDefect::ArityMismatch(0, p.arity, f.arity()));
    }
    p.check_cover()?;
    for (i, c) in p.cells.iter().enumerate() {
        if f.restricted_constant(c.as_restriction()).is_none() {
            return Err(PartitionDefect::NonConstant(i));
        }
    }
    Ok(())
}

pub fn verify_partition(p: &SubcubePartition, f: &BooleanFunction) -> bool {
    check_partition(p, f).is_ok()
}

/// Worst-case cost of a verified partition: the maximum codimension.
pub fn partition_cost_det(p: &SubcubePartition, f: &BooleanFunction) -> Result<usize> {
    check_partition(p, f)?;
    Ok(p.cells.iter().map(|c| c.codimension()).max().unwrap_or(0))
}

/// Expected number of fixed bits of the cell containing `x ~ pi_p`.
pub fn partition_cost<S: Scalar>(
    p: &SubcubePartition,
    f: &BooleanFunction,
    m: &ProductMeasure<S>,
) -> Result<S> {
    check_partition(p, f)?;
    Ok(raw_partition_cost(p, m))
}

fn raw_partition_cost<S: Scalar>(p: &SubcubePartition, m: &ProductMeasure<S>) -> S {
    let mut acc = S::zero();
    for c in &p.cells {
        let mut mass = S::zero();
        let free = !c.fixed & (((1u64 << p.arity) - 1) as u32);
        let mut sub = free;
        loop {
            mass = mass + m.index_probability(p.arity, c.values | sub);
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & free;
        }
        acc = acc + mass * S::from_usize(c.codimension()).expect("small count");
    }
    acc
}

/// Number of hypercube edges whose endpoints lie in different cells.
/// Requires a genuine partition (coverage checked, `f` not involved).
pub fn partition_boundary(p: &SubcubePartition) -> Result<u64> {
    p.check_cover().map_err(Error::Partition)?;
    let mut count = 0;
    for x in 0..1u32 << p.arity {
        let cx = p.cell_index_of(x).expect("cover checked");
        for i in 0..p.arity {
            if x >> i & 1 == 0 && p.cell_index_of(x | 1 << i).expect("cover checked") != cx {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// Recursive test for partitions that arise as the leaves of a decision
/// tree: either the single full cube, or some coordinate is fixed by
/// every cell and both induced half-partitions are again of this form.
pub fn is_algorithm_induced(p: &SubcubePartition) -> Result<bool> {
    p.check_cover().map_err(Error::Partition)?;
    fn induced(arity: usize, cells: &[(u32, u32)]) -> bool {
        if cells.len() == 1 && cells[0].0 == 0 {
            return true;
        }
        'axis: for i in 0..arity {
            let bit = 1u32 << i;
            for &(fixed, _) in cells {
                if fixed & bit == 0 {
                    continue 'axis;
                }
            }
            let drop = |mask: u32| -> u32 {
                let low = mask & (bit - 1);
                let high = (mask >> 1) & !(bit - 1);
                low | high
            };
            let halves: [Vec<(u32, u32)>; 2] = [
                cells
                    .iter()
                    .filter(|&&(_, v)| v & bit == 0)
                    .map(|&(f, v)| (drop(f), drop(v)))
                    .collect(),
                cells
                    .iter()
                    .filter(|&&(_, v)| v & bit != 0)
                    .map(|&(f, v)| (drop(f), drop(v)))
                    .collect(),
            ];
            if induced(arity - 1, &halves[0]) && induced(arity - 1, &halves[1]) {
                return true;
            }
        }
        false
    }
    let cells: Vec<(u32, u32)> = p.cells.iter().map(|c| (c.fixed, c.values)).collect();
    Ok(induced(p.arity, &cells))
}

// ---------------------------------------------------------------------------
// Exact optimum search
// ---------------------------------------------------------------------------

/// 256-bit point set, enough for the n <= 8 search ceiling.
#[derive(Clone, Copy, PartialEq, Eq, Default)]
struct Pts([u64; 4]);

impl Pts {
    fn set(&mut self, i: u32) {
        self.0[(i / 64) as usize] |= 1 << (i % 64);
    }
    fn contains(&self, i: u32) -> bool {
        self.0[(i / 64) as usize] >> (i % 64) & 1 == 1
    }
    fn disjoint(&self, o: &Pts) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a & b == 0)
    }
    fn union_with(&mut self, o: &Pts) {
        for (a, b) in self.0.iter_mut().zip(&o.0) {
            *a |= b;
        }
    }
    fn subtract(&mut self, o: &Pts) {
        for (a, b) in self.0.iter_mut().zip(&o.0) {
            *a &= !b;
        }
    }
    fn lowest(&self) -> Option<u32> {
        for (k, &w) in self.0.iter().enumerate() {
            if w != 0 {
                return Some(64 * k as u32 + w.trailing_zeros());
            }
        }
        None
    }
}

struct Cell {
    pattern: SubcubePattern,
    pts: Pts,
    codim: usize,
}

/// All f-constant cells on the given level set.
fn level_cells(f: &BooleanFunction, level: bool) -> Vec<Cell> {
    let n = f.arity();
    let full = ((1u64 << n) - 1) as u32;
    let mut out = Vec::new();
    for fixed in 0..=full {
        // enumerate assignments of the fixed bits
        let mut values = 0u32;
        loop {
            let r = Restriction {
                assigned: fixed,
                values,
            };
            if f.restricted_constant(r) == Some(level) {
                let mut pts = Pts::default();
                let free = full & !fixed;
                let mut sub = free;
                loop {
                    pts.set(values | sub);
                    if sub == 0 {
                        break;
                    }
                    sub = (sub - 1) & free;
                }
                out.push(Cell {
                    pattern: SubcubePattern {
                        arity: n,
                        fixed,
                        values,
                    },
                    pts,
                    codim: fixed.count_ones() as usize,
                });
            }
            // next submask assignment
            values = values.wrapping_sub(fixed) & fixed;
            if values == 0 {
                break;
            }
        }
        if fixed == full {
            break;
        }
    }
    out
}

fn check_search_cap(f: &BooleanFunction, cap: usize) -> Result<()> {
    let cap = cap.min(SUBCUBE_SEARCH_CEILING);
    if f.arity() > cap {
        return Err(Error::CapExceeded {
            what: "subcube partition search",
            cap,
            need: f.arity(),
        });
    }
    Ok(())
}

/// Signed point count of a level set; nonzero forces a singleton cell.
fn signed_balance(f: &BooleanFunction, level: bool) -> i64 {
    let mut bal = 0i64;
    for x in 0..f.table_len() as u32 {
        if f.eval_index(x) == level {
            bal += if x.count_ones() % 2 == 0 { 1 } else { -1 };
        }
    }
    bal
}

/// Minimum over partitions of one level set of the maximum codimension.
fn det_side(f: &BooleanFunction, level: bool) -> usize {
    let n = f.arity();
    let region: Vec<u32> = (0..f.table_len() as u32)
        .filter(|&x| f.eval_index(x) == level)
        .collect();
    if region.is_empty() {
        return 0;
    }
    if signed_balance(f, level) != 0 {
        return n;
    }
    let cells = level_cells(f, level);
    let mut region_pts = Pts::default();
    for &x in &region {
        region_pts.set(x);
    }
    // lower bound: every point sits in a cell fixing at least its minimum
    // witness count
    let lower = region
        .iter()
        .map(|&x| {
            cells
                .iter()
                .filter(|c| c.pts.contains(x))
                .map(|c| c.codim)
                .min()
                .unwrap_or(n)
        })
        .max()
        .unwrap_or(0);

    fn feasible(cells: &[Cell], region: Pts, covered: Pts, budget: usize) -> bool {
        let mut remaining = region;
        remaining.subtract(&covered);
        let pivot = match remaining.lowest() {
            None => return true,
            Some(p) => p,
        };
        for c in cells {
            if c.codim <= budget && c.pts.contains(pivot) && c.pts.disjoint(&covered) {
                let mut next = covered;
                next.union_with(&c.pts);
                if feasible(cells, region, next, budget) {
                    return true;
                }
            }
        }
        false
    }

    for budget in lower..n {
        if feasible(&cells, region_pts, Pts::default(), budget) {
            return budget;
        }
    }
    n
}

/// Worst-case optimal subcube partition cost `min max codimension`.
pub fn sc_det(f: &BooleanFunction) -> Result<usize> {
    sc_det_with_cap(f, DEFAULT_SUBCUBE_CAP)
}

pub fn sc_det_with_cap(f: &BooleanFunction, cap: usize) -> Result<usize> {
    check_search_cap(f, cap)?;
    Ok(det_side(f, false).max(det_side(f, true)))
}

/// Exact distributional optimum on one level set: minimum of
/// `sum_cells mass(cell) * codim(cell)` over exact covers of the set.
fn dist_side<S: Scalar>(
    f: &BooleanFunction,
    m: &ProductMeasure<S>,
    level: bool,
) -> (S, Vec<SubcubePattern>) {
    let n = f.arity();
    let region: Vec<u32> = (0..f.table_len() as u32)
        .filter(|&x| f.eval_index(x) == level)
        .collect();
    if region.is_empty() {
        return (S::zero(), Vec::new());
    }
    let weights = m.weights(n);
    let mut cells = level_cells(f, level);
    // larger cells first: the first DFS descent doubles as a greedy
    // incumbent
    cells.sort_by_key(|c| c.codim);
    let cell_mass: Vec<S> = cells
        .iter()
        .map(|c| {
            let mut mass = S::zero();
            for &x in &region {
                if c.pts.contains(x) {
                    mass = mass + weights[x as usize].clone();
                }
            }
            mass * S::from_usize(c.codim).expect("small count")
        })
        .collect();
    let mut region_pts = Pts::default();
    for &x in &region {
        region_pts.set(x);
    }

    // per-point cell lists sorted by codimension, for the dynamic bound
    let cells_of_point: Vec<Vec<usize>> = region
        .iter()
        .map(|&x| {
            let mut ids: Vec<usize> = (0..cells.len())
                .filter(|&i| cells[i].pts.contains(x))
                .collect();
            ids.sort_by_key(|&i| cells[i].codim);
            ids
        })
        .collect();

    // Exact cover by recursive decomposition: a remaining region splits
    // into connected components under "some usable cell contains both
    // points", each solved independently and memoized. Inside one
    // component, branch over the cells at the lowest point; the
    // mass-weighted cheapest-usable-cell bound skips candidates that
    // cannot beat the component's incumbent.
    struct Search<'a, S: Scalar> {
        cells: &'a [Cell],
        cell_mass: &'a [S],
        region: &'a [u32],
        point_weight: &'a [S],
        point_index: &'a [usize],
        cells_of_point: &'a [Vec<usize>],
        memo: std::collections::HashMap<[u64; 4], (S, Vec<usize>)>,
    }

    impl<S: Scalar> Search<'_, S> {
        fn usable(&self, i: usize, region: &Pts) -> bool {
            let mut outside = self.cells[i].pts;
            outside.subtract(region);
            outside.lowest().is_none()
        }

        /// Mass-weighted sum over the region of the smallest codimension
        /// among cells usable inside it.
        fn bound(&self, region: &Pts) -> S {
            let mut acc = S::zero();
            for (k, &x) in self.region.iter().enumerate() {
                if !region.contains(x) {
                    continue;
                }
                let codim = self.cells_of_point[k]
                    .iter()
                    .copied()
                    .find(|&i| self.usable(i, region))
                    .map(|i| self.cells[i].codim)
                    .expect("the singleton cell of a region point is usable");
                acc = acc
                    + self.point_weight[k].clone() * S::from_usize(codim).expect("small count");
            }
            acc
        }

        /// Connected component of the region's lowest point under shared
        /// usable cells.
        fn first_component(&self, region: &Pts) -> Pts {
            let mut comp = Pts::default();
            comp.set(region.lowest().expect("nonempty region"));
            loop {
                let mut grown = comp;
                for (k, &x) in self.region.iter().enumerate() {
                    if comp.contains(x) {
                        for &i in &self.cells_of_point[k] {
                            if self.usable(i, region) {
                                grown.union_with(&self.cells[i].pts);
                            }
                        }
                    }
                }
                if grown == comp {
                    return comp;
                }
                comp = grown;
            }
        }

        fn solve_region(&mut self, region: Pts) -> (S, Vec<usize>) {
            if region.lowest().is_none() {
                return (S::zero(), Vec::new());
            }
            let comp = self.first_component(&region);
            if comp == region {
                return self.solve_component(region);
            }
            let (v1, mut chosen) = self.solve_component(comp);
            let mut rest = region;
            rest.subtract(&comp);
            let (v2, more) = self.solve_region(rest);
            chosen.extend(more);
            (v1 + v2, chosen)
        }

        fn solve_component(&mut self, comp: Pts) -> (S, Vec<usize>) {
            if let Some(v) = self.memo.get(&comp.0) {
                return v.clone();
            }
            let pivot = comp.lowest().expect("nonempty component");
            let k = self.point_index[pivot as usize];
            let mut best: Option<(S, Vec<usize>)> = None;
            for &i in &self.cells_of_point[k] {
                if !self.usable(i, &comp) {
                    continue;
                }
                let mut rest = comp;
                rest.subtract(&self.cells[i].pts);
                if let Some((b, _)) = &best {
                    let lb = self.cell_mass[i].clone() + self.bound(&rest);
                    if lb >= *b {
                        continue;
                    }
                }
                let (v, mut chosen) = self.solve_region(rest);
                let total = self.cell_mass[i].clone() + v;
                if best.as_ref().map(|(b, _)| total < *b).unwrap_or(true) {
                    chosen.push(i);
                    best = Some((total, chosen));
                }
            }
            let best = best.expect("component points have singleton cells");
            self.memo.insert(comp.0, best.clone());
            best
        }
    }

    let point_weight: Vec<S> = region.iter().map(|&x| weights[x as usize].clone()).collect();
    let mut point_index = vec![usize::MAX; f.table_len()];
    for (k, &x) in region.iter().enumerate() {
        point_index[x as usize] = k;
    }

    let mut search = Search {
        cells: &cells,
        cell_mass: &cell_mass,
        region: &region,
        point_weight: &point_weight,
        point_index: &point_index,
        cells_of_point: &cells_of_point,
        memo: std::collections::HashMap::new(),
    };
    let (cost, ids) = search.solve_region(region_pts);
    (cost, ids.into_iter().map(|i| cells[i].pattern).collect())
}

/// Distributional subcube partition complexity `sc(f, pi_p)`, exact.
pub fn sc_dist<S: Scalar>(f: &BooleanFunction, m: &ProductMeasure<S>) -> Result<S> {
    sc_dist_with_cap(f, m, DEFAULT_SUBCUBE_CAP)
}

pub fn sc_dist_with_cap<S: Scalar>(
    f: &BooleanFunction,
    m: &ProductMeasure<S>,
    cap: usize,
) -> Result<S> {
    check_search_cap(f, cap)?;
    let (c1, _) = dist_side(f, m, true);
    let (c0, _) = dist_side(f, m, false);
    Ok(c1 + c0)
}

/// An optimal partition together with its cost.
pub fn optimal_partition<S: Scalar>(
    f: &BooleanFunction,
    m: &ProductMeasure<S>,
) -> Result<(S, SubcubePartition)> {
    optimal_partition_with_cap(f, m, DEFAULT_SUBCUBE_CAP)
}

pub fn optimal_partition_with_cap<S: Scalar>(
    f: &BooleanFunction,
    m: &ProductMeasure<S>,
    cap: usize,
) -> Result<(S, SubcubePartition)> {
    check_search_cap(f, cap)?;
    let (c1, mut cells) = dist_side(f, m, true);
    let (c0, cells0) = dist_side(f, m, false);
    cells.extend(cells0);
    Ok((c1 + c0, SubcubePartition::new(f.arity(), cells)?))
}

/// Expected fixed-bit count conditional on one level set: the optimal
/// cost of partitioning that side alone, divided by its probability.
pub fn sc_dist_conditional<S: Scalar>(
    f: &BooleanFunction,
    m: &ProductMeasure<S>,
    level: bool,
) -> Result<S> {
    sc_dist_conditional_with_cap(f, m, level, DEFAULT_SUBCUBE_CAP)
}

pub fn sc_dist_conditional_with_cap<S: Scalar>(
    f: &BooleanFunction,
    m: &ProductMeasure<S>,
    level: bool,
    cap: usize,
) -> Result<S> {
    check_search_cap(f, cap)?;
    let weights = m.weights(f.arity());
    let mut side_mass = S::zero();
    for x in 0..f.table_len() as u32 {
        if f.eval_index(x) == level {
            side_mass = side_mass + weights[x as usize].clone();
        }
    }
    if side_mass.is_zero() {
        return Err(Error::Domain(format!(
            "level set f = {} has probability zero",
            level as u8
        )));
    }
    let (cost, _) = dist_side(f, m, level);
    Ok(cost / side_mass)
}

/// Minimum edge boundary over partitions refining the level sets of `f`,
/// by exhaustive cover enumeration with edge counting. Exponential; meant
/// for cross-checking at n <= 3.
pub fn min_refining_boundary(f: &BooleanFunction) -> Result<u64> {
    check_search_cap(f, 4)?;
    let mut cells = level_cells(f, true);
    cells.extend(level_cells(f, false));
    let full_pts = {
        let mut p = Pts::default();
        for x in 0..f.table_len() as u32 {
            p.set(x);
        }
        p
    };
    fn rec(
        f: &BooleanFunction,
        cells: &[Cell],
        covered: Pts,
        full: Pts,
        chosen: &mut Vec<SubcubePattern>,
        best: &mut Option<u64>,
    ) {
        let mut remaining = full;
        remaining.subtract(&covered);
        let pivot = match remaining.lowest() {
            None => {
                let part = SubcubePartition::new(f.arity(), chosen.clone()).unwrap();
                let b = partition_boundary(&part).expect("complete cover");
                if best.map(|x| b < x).unwrap_or(true) {
                    *best = Some(b);
                }
                return;
            }
            Some(p) => p,
        };
        for c in cells {
            if c.pts.contains(pivot) && c.pts.disjoint(&covered) {
                let mut next = covered;
                next.union_with(&c.pts);
                chosen.push(c.pattern);
                rec(f, cells, next, full, chosen, best);
                chosen.pop();
            }
        }
    }
    let mut best = None;
    rec(f, &cells, Pts::default(), full_pts, &mut Vec::new(), &mut best);
    Ok(best.expect("singleton cover always exists"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dtree;
    use crate::scalar::exact;
    use crate::zoo;

    fn maj4_partition() -> SubcubePartition {
        SubcubePartition::from_text(
            "*111\n*000\n110*\n010*\n1*10\n0*10\n10*1\n00*1\n",
        )
        .unwrap()
    }

    fn aeq3_partition() -> SubcubePartition {
        SubcubePartition::from_text("000\n10*\n*10\n0*1\n111\n").unwrap()
    }

    #[test]
    fn verify_known_partitions() {
        assert!(verify_partition(&maj4_partition(), &zoo::maj4()));
        assert!(verify_partition(&aeq3_partition(), &zoo::all_equal3()));
    }

    #[test]
    fn verify_diagnoses_defects() {
        let overlap = SubcubePartition::from_text("0*\n*0\n11\n").unwrap();
        assert_eq!(overlap.check_cover(), Err(PartitionDefect::Overlap(0, 1)));
        let gap = SubcubePartition::from_text("00\n11\n").unwrap();
        assert!(matches!(gap.check_cover(), Err(PartitionDefect::Gap(_))));
        let nonconst = SubcubePartition::from_text("0*\n1*\n").unwrap();
        assert_eq!(
            check_partition(&nonconst, &zoo::and(2).unwrap()),
            Err(PartitionDefect::NonConstant(1))
        );
    }

    #[test]
    fn partition_costs() {
        let half = ProductMeasure::half();
        assert_eq!(
            partition_cost(&aeq3_partition(), &zoo::all_equal3(), &half).unwrap(),
            exact(9, 4)
        );
        assert_eq!(
            partition_cost_det(&maj4_partition(), &zoo::maj4()).unwrap(),
            3
        );
        // singleton partition of the 2-cube
        let singletons = SubcubePartition::from_text("00\n10\n01\n11\n").unwrap();
        assert_eq!(
            partition_cost_det(&singletons, &zoo::and(2).unwrap()).unwrap(),
            2
        );
    }

    #[test]
    fn sc_det_values() {
        assert_eq!(sc_det(&zoo::maj4()).unwrap(), 3);
        assert_eq!(sc_det(&zoo::tribes(2, 2).unwrap()).unwrap(), 4);
        for n in 1..=4 {
            assert_eq!(sc_det(&zoo::parity(n).unwrap()).unwrap(), n);
        }
        assert_eq!(sc_det(&BooleanFunction::constant(3, true)).unwrap(), 0);
        // the signed-balance shortcut makes the 8-bit case immediate
        assert_eq!(sc_det_with_cap(&zoo::nisan(8).unwrap(), 8).unwrap(), 8);
    }

    use crate::bf::BooleanFunction;

    #[test]
    fn sc_dist_values() {
        let half = ProductMeasure::half();
        assert_eq!(sc_dist(&zoo::maj(3).unwrap(), &half).unwrap(), exact(5, 2));
        assert_eq!(sc_dist(&zoo::g4(), &half).unwrap(), exact(11, 4));
        assert_eq!(sc_dist(&zoo::h4(), &half).unwrap(), exact(11, 4));
        assert_eq!(sc_dist(&zoo::all_equal3(), &half).unwrap(), exact(9, 4));
        let third = ProductMeasure::new(exact(1, 3)).unwrap();
        assert_eq!(sc_dist(&zoo::maj(3).unwrap(), &third).unwrap(), exact(22, 9));
    }

    #[test]
    fn conditional_side_costs() {
        let half = ProductMeasure::half();
        assert_eq!(
            sc_dist_conditional(&zoo::g4(), &half, true).unwrap(),
            exact(7, 2)
        );
        assert_eq!(
            sc_dist_conditional(&zoo::g4(), &half, false).unwrap(),
            exact(5, 2)
        );
        assert_eq!(
            sc_dist_conditional(&zoo::h4(), &half, true).unwrap(),
            exact(11, 4)
        );
        assert_eq!(
            sc_dist_conditional(&zoo::h4(), &half, false).unwrap(),
            exact(11, 4)
        );
        assert!(
            sc_dist_conditional(&BooleanFunction::constant(2, false), &half, true).is_err()
        );
    }

    #[test]
    fn algorithm_induced_tests() {
        assert!(!is_algorithm_induced(&aeq3_partition()).unwrap());
        let two_cells = SubcubePartition::from_text("0*\n1*\n").unwrap();
        assert!(is_algorithm_induced(&two_cells).unwrap());
        let half = ProductMeasure::half();
        for f in [zoo::maj(3).unwrap(), zoo::g4(), zoo::maj4()] {
            let t = dtree::extract_tree(&f, &half).unwrap();
            let p = SubcubePartition::from_tree(f.arity(), &t);
            assert!(is_algorithm_induced(&p).unwrap());
        }
    }

    #[test]
    fn boundary_counts() {
        let singletons = SubcubePartition::new(
            3,
            (0..8u32)
                .map(|x| SubcubePattern::new(3, 0b111, x).unwrap())
                .collect(),
        )
        .unwrap();
        assert_eq!(partition_boundary(&singletons).unwrap(), 3 * 4);
        let full = SubcubePartition::new(3, vec![SubcubePattern::full_cube(3)]).unwrap();
        assert_eq!(partition_boundary(&full).unwrap(), 0);
    }

    #[test]
    fn boundary_codimension_identity() {
        // sum_x c(P, x) = 2 * |boundary(P)| for any partition
        let half = ProductMeasure::half();
        for p in [maj4_partition(), aeq3_partition()] {
            let n = p.arity();
            let total: u64 = (0..1u32 << n)
                .map(|x| p.cells[p.cell_index_of(x).unwrap()].codimension() as u64)
                .sum();
            assert_eq!(total, 2 * partition_boundary(&p).unwrap());
            let _ = &half;
        }
    }

    #[test]
    fn optimal_partition_is_verified_and_optimal() {
        let half = ProductMeasure::half();
        for f in [zoo::g4(), zoo::h4(), zoo::all_equal3(), zoo::maj4()] {
            let (cost, part) = optimal_partition(&f, &half).unwrap();
            assert!(verify_partition(&part, &f));
            assert_eq!(partition_cost(&part, &f, &half).unwrap(), cost);
            assert_eq!(cost, sc_dist(&f, &half).unwrap());
        }
    }

    #[test]
    fn pattern_text_round_trip() {
        for s in ["*111", "000", "1*0*"] {
            assert_eq!(SubcubePattern::from_text(s).unwrap().to_text(), s);
        }
        assert!(SubcubePattern::from_text("01x").is_err());
    }

    #[test]
    fn search_cap_enforced() {
        let f = BooleanFunction::constant(7, false);
        assert!(sc_det(&f).is_err());
        assert!(sc_det_with_cap(&f, 7).is_ok());
        assert!(sc_det_with_cap(&BooleanFunction::constant(9, false), 12).is_err());
    }
}
