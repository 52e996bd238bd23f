//! Optimal decision trees: worst-case depth, exact expected cost under a
//! product measure, tree extraction, revealments and the variance bound.
//!
//! Both dynamic programs run over restrictions (partial assignments); the
//! memo key is the restriction itself, not a canonicalized subfunction —
//! canonicalization is a possible optimization hook. At most `3^n` states
//! are reachable, so arities above the cap are rejected up front.

use std::collections::HashMap;


use crate::bf::{BooleanFunction, Restriction};
use crate::error::{Error, Result};
use crate::measure::ProductMeasure;
use crate::scalar::Scalar;

/// Default ceiling for the restriction DP (3^16 is about 43M states).
pub const DEFAULT_DTREE_CAP: usize = 16;

/// A binary decision tree; queries never repeat a bit along a path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecisionTree {
    Leaf(bool),
    Query {
        bit: usize,
        zero: Box<DecisionTree>,
        one: Box<DecisionTree>,
    },
}

impl DecisionTree {
    pub fn depth(&self) -> usize {
        match self {
            DecisionTree::Leaf(_) => 0,
            DecisionTree::Query { zero, one, .. } => 1 + zero.depth().max(one.depth()),
        }
    }

    /// Nested text form: leaves are `=0` / `=1`, internal nodes are
    /// `(i? zero-subtree : one-subtree)` with 1-based bit indices.
    pub fn to_text(&self) -> String {
        match self {
            DecisionTree::Leaf(v) => format!("={}", *v as u8),
            DecisionTree::Query { bit, zero, one } => {
                format!("({}? {} : {})", bit + 1, zero.to_text(), one.to_text())
            }
        }
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut chars = text.trim().char_indices().peekable();
        let tree = Self::parse(text.trim(), &mut chars)?;
        if chars.next().is_some() {
            return Err(Error::Parse("trailing input after decision tree".into()));
        }
        Ok(tree)
    }

    fn parse(
        src: &str,
        it: &mut std::iter::Peekable<std::str::CharIndices>,
    ) -> Result<Self> {
        while matches!(it.peek(), Some((_, c)) if c.is_whitespace()) {
            it.next();
        }
        match it.next() {
            Some((_, '=')) => match it.next() {
                Some((_, '0')) => Ok(DecisionTree::Leaf(false)),
                Some((_, '1')) => Ok(DecisionTree::Leaf(true)),
                other => Err(Error::Parse(format!("expected =0 or =1, got {other:?}"))),
            },
            Some((start, '(')) => {
                let mut end = start + 1;
                while matches!(it.peek(), Some((_, c)) if c.is_ascii_digit()) {
                    end = it.next().unwrap().0 + 1;
                }
                let bit: usize = src[start + 1..end]
                    .parse()
                    .map_err(|_| Error::Parse("missing bit index in tree node".into()))?;
                if bit == 0 {
                    return Err(Error::Parse("bit indices are 1-based".into()));
                }
                expect(it, '?')?;
                let zero = Self::parse(src, it)?;
                expect(it, ':')?;
                let one = Self::parse(src, it)?;
                expect(it, ')')?;
                Ok(DecisionTree::Query {
                    bit: bit - 1,
                    zero: Box::new(zero),
                    one: Box::new(one),
                })
            }
            other => Err(Error::Parse(format!("unexpected token {other:?} in tree"))),
        }
    }
}

fn expect(it: &mut std::iter::Peekable<std::str::CharIndices>, want: char) -> Result<()> {
    while matches!(it.peek(), Some((_, c)) if c.is_whitespace()) {
        it.next();
    }
    match it.next() {
        Some((_, c)) if c == want => Ok(()),
        other => Err(Error::Parse(format!("expected {want:?}, got {other:?}"))),
    }
}

fn check_cap(f: &BooleanFunction, cap: usize) -> Result<()> {
    if f.arity() > cap {
        return Err(Error::CapExceeded {
            what: "decision-tree search",
            cap,
            need: f.arity(),
        });
    }
    Ok(())
}

fn key(r: Restriction) -> u64 {
    (r.assigned as u64) << 32 | r.values as u64
}

/// Worst-case optimal depth `min_A max_x c_f(A, x)`.
pub fn det_depth(f: &BooleanFunction) -> Result<usize> {
    det_depth_with_cap(f, DEFAULT_DTREE_CAP)
}

pub fn det_depth_with_cap(f: &BooleanFunction, cap: usize) -> Result<usize> {
    check_cap(f, cap)?;
    let mut memo: HashMap<u64, usize> = HashMap::new();
    fn value(f: &BooleanFunction, r: Restriction, memo: &mut HashMap<u64, usize>) -> usize {
        if let Some(&v) = memo.get(&key(r)) {
            return v;
        }
        let v = if f.restricted_constant(r).is_some() {
            0
        } else {
            (0..f.arity())
                .filter(|&i| !r.assigns(i))
                .map(|i| {
                    1 + value(f, r.fix(i, false), memo).max(value(f, r.fix(i, true), memo))
                })
                .min()
                .expect("nonconstant restriction has free bits")
        };
        memo.insert(key(r), v);
        v
    }
    Ok(value(f, Restriction::EMPTY, &mut memo))
}

struct ExpectimaxDp<'a, S: Scalar> {
    f: &'a BooleanFunction,
    p: S,
    q: S,
    memo: HashMap<u64, S>,
}

impl<'a, S: Scalar> ExpectimaxDp<'a, S> {
    fn new(f: &'a BooleanFunction, m: &ProductMeasure<S>) -> Self {
        ExpectimaxDp {
            f,
            p: m.p().clone(),
            q: m.q().clone(),
            memo: HashMap::new(),
        }
    }

    fn value(&mut self, r: Restriction) -> S {
        if let Some(v) = self.memo.get(&key(r)) {
            return v.clone();
        }
        let v = match self.best_query(r) {
            None => S::zero(),
            Some((_, v)) => v,
        };
        self.memo.insert(key(r), v.clone());
        v
    }

    /// Optimal query at `r` with its value; `None` when `f` is constant
    /// on `r`. Ties break toward the lowest bit index.
    fn best_query(&mut self, r: Restriction) -> Option<(usize, S)> {
        if self.f.restricted_constant(r).is_some() {
            return None;
        }
        let mut best: Option<(usize, S)> = None;
        for i in 0..self.f.arity() {
            if r.assigns(i) {
                continue;
            }
            let v = S::one()
                + self.q.clone() * self.value(r.fix(i, false))
                + self.p.clone() * self.value(r.fix(i, true));
            match &best {
                Some((_, cur)) if *cur <= v => {}
                _ => best = Some((i, v)),
            }
        }
        best
    }
}

/// Optimal expected number of queries `min_A E[c_f(A, x)]`, exact.
pub fn dist_cost<S: Scalar>(f: &BooleanFunction, m: &ProductMeasure<S>) -> Result<S> {
    dist_cost_with_cap(f, m, DEFAULT_DTREE_CAP)
}

pub fn dist_cost_with_cap<S: Scalar>(
    f: &BooleanFunction,
    m: &ProductMeasure<S>,
    cap: usize,
) -> Result<S> {
    check_cap(f, cap)?;
    Ok(ExpectimaxDp::new(f, m).value(Restriction::EMPTY))
}

/// An optimal tree for `f` under `pi_p`, ties broken toward the lowest
/// bit index; its [`tree_cost`] equals [`dist_cost`].
pub fn extract_tree<S: Scalar>(f: &BooleanFunction, m: &ProductMeasure<S>) -> Result<DecisionTree> {
    extract_tree_with_cap(f, m, DEFAULT_DTREE_CAP)
}

pub fn extract_tree_with_cap<S: Scalar>(
    f: &BooleanFunction,
    m: &ProductMeasure<S>,
    cap: usize,
) -> Result<DecisionTree> {
    check_cap(f, cap)?;
    let mut dp = ExpectimaxDp::new(f, m);
    fn build<S: Scalar>(dp: &mut ExpectimaxDp<S>, r: Restriction) -> DecisionTree {
        match dp.best_query(r) {
            None => DecisionTree::Leaf(dp.f.restricted_constant(r).unwrap()),
            Some((bit, _)) => DecisionTree::Query {
                bit,
                zero: Box::new(build(dp, r.fix(bit, false))),
                one: Box::new(build(dp, r.fix(bit, true))),
            },
        }
    }
    Ok(build(&mut dp, Restriction::EMPTY))
}

/// Builds the tree of a deterministic querying strategy: `pick` sees the
/// current restriction and chooses the next bit; a leaf is emitted at the
/// first moment the restriction forces `f` constant.
pub fn tree_from_strategy<F>(f: &BooleanFunction, mut pick: F) -> Result<DecisionTree>
where
    F: FnMut(Restriction) -> Option<usize>,
{
    fn build<F>(f: &BooleanFunction, r: Restriction, pick: &mut F) -> Result<DecisionTree>
    where
        F: FnMut(Restriction) -> Option<usize>,
    {
        if let Some(v) = f.restricted_constant(r) {
            return Ok(DecisionTree::Leaf(v));
        }
        let bit = pick(r).ok_or_else(|| {
            Error::InvalidParam("strategy returned no query on a nonconstant state".into())
        })?;
        if bit >= f.arity() || r.assigns(bit) {
            return Err(Error::InvalidParam(format!(
                "strategy picked unavailable bit {bit}"
            )));
        }
        Ok(DecisionTree::Query {
            bit,
            zero: Box::new(build(f, r.fix(bit, false), pick)?),
            one: Box::new(build(f, r.fix(bit, true), pick)?),
        })
    }
    build(f, Restriction::EMPTY, &mut pick)
}

struct Walk<S> {
    cost: S,
    revealment: Vec<S>,
}

/// Shared weighted traversal; errors unless every leaf value matches `f`
/// on the leaf's whole subcube and no path repeats a bit.
fn walk<S: Scalar>(t: &DecisionTree, f: &BooleanFunction, m: &ProductMeasure<S>) -> Result<Walk<S>> {
    fn rec<S: Scalar>(
        t: &DecisionTree,
        f: &BooleanFunction,
        m: &ProductMeasure<S>,
        r: Restriction,
        weight: S,
        acc: &mut Walk<S>,
    ) -> Result<()> {
        match t {
            DecisionTree::Leaf(v) => {
                if f.restricted_constant(r) != Some(*v) {
                    return Err(Error::TreeMismatch);
                }
                Ok(())
            }
            DecisionTree::Query { bit, zero, one } => {
                if *bit >= f.arity() || r.assigns(*bit) {
                    return Err(Error::TreeMismatch);
                }
                acc.cost = acc.cost.clone() + weight.clone();
                acc.revealment[*bit] = acc.revealment[*bit].clone() + weight.clone();
                rec(zero, f, m, r.fix(*bit, false), weight.clone() * m.q().clone(), acc)?;
                rec(one, f, m, r.fix(*bit, true), weight * m.p().clone(), acc)
            }
        }
    }
    let mut acc = Walk {
        cost: S::zero(),
        revealment: vec![S::zero(); f.arity()],
    };
    rec(t, f, m, Restriction::EMPTY, S::one(), &mut acc)?;
    Ok(acc)
}

/// Exact expected root-to-leaf depth of `t` under `pi_p`.
pub fn tree_cost<S: Scalar>(
    t: &DecisionTree,
    f: &BooleanFunction,
    m: &ProductMeasure<S>,
) -> Result<S> {
    Ok(walk(t, f, m)?.cost)
}

/// For each bit, the probability that `t` queries it before reaching a
/// leaf. The revealments sum to the tree cost.
pub fn revealment<S: Scalar>(
    t: &DecisionTree,
    f: &BooleanFunction,
    m: &ProductMeasure<S>,
) -> Result<Vec<S>> {
    Ok(walk(t, f, m)?.revealment)
}

/// `P[i pivotal]` for every bit, exact.
pub fn pivotal_probabilities<S: Scalar>(f: &BooleanFunction, m: &ProductMeasure<S>) -> Vec<S> {
    let weights = m.weights(f.arity());
    let mut out = vec![S::zero(); f.arity()];
    for x in 0..f.table_len() as u32 {
        let v = f.eval_index(x);
        for (i, o) in out.iter_mut().enumerate() {
            if f.eval_index(x ^ (1 << i)) != v {
                *o = o.clone() + weights[x as usize].clone();
            }
        }
    }
    out
}

/// Both sides of the variance bound
/// `Var_p(f) <= 4p(1-p) sum_i P[i queried] P[i pivotal]`.
#[derive(Clone, Debug, PartialEq)]
pub struct VarianceBound<S: Scalar> {
    pub holds: bool,
    pub variance: S,
    pub bound: S,
}

pub fn osss_check<S: Scalar>(
    f: &BooleanFunction,
    m: &ProductMeasure<S>,
    t: &DecisionTree,
) -> Result<VarianceBound<S>> {
    let rev = revealment(t, f, m)?;
    let piv = pivotal_probabilities(f, m);
    let four_pq =
        S::from_i64(4).expect("small integer") * m.p().clone() * m.q().clone();
    let mut sum = S::zero();
    for (r, pv) in rev.into_iter().zip(piv) {
        sum = sum + r * pv;
    }
    let bound = four_pq * sum;
    let variance = crate::measure::variance(f, m);
    Ok(VarianceBound {
        holds: variance <= bound,
        variance,
        bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{exact, Exact};
    use crate::zoo;

    #[test]
    fn det_depth_examples() {
        assert_eq!(det_depth(&zoo::maj4()).unwrap(), 4);
        assert_eq!(det_depth(&zoo::nisan(8).unwrap()).unwrap(), 8);
        assert_eq!(det_depth(&BooleanFunction::constant(3, true)).unwrap(), 0);
        assert_eq!(det_depth(&zoo::maj(3).unwrap()).unwrap(), 3);
        assert_eq!(det_depth(&zoo::address(2).unwrap()).unwrap(), 3);
    }

    #[test]
    fn dist_cost_examples() {
        let half = ProductMeasure::half();
        assert_eq!(dist_cost(&zoo::maj(3).unwrap(), &half).unwrap(), exact(5, 2));
        assert_eq!(dist_cost(&zoo::g4(), &half).unwrap(), exact(11, 4));
        assert_eq!(dist_cost(&zoo::h4(), &half).unwrap(), exact(3, 1));
        for n in 1..=5usize {
            for (num, den) in [(1, 3), (1, 2), (2, 3)] {
                let p = exact(num, den);
                let m = ProductMeasure::new(p.clone()).unwrap();
                let expected = (Exact::one() - p.pow(n as i32))
                    / (Exact::one() - p);
                assert_eq!(dist_cost(&zoo::and(n).unwrap(), &m).unwrap(), expected);
            }
        }
    }

    use num_traits::One;

    #[test]
    fn extract_tree_and_cost_agree() {
        let half = ProductMeasure::half();
        for f in [
            zoo::maj(3).unwrap(),
            zoo::g4(),
            zoo::h4(),
            zoo::tribes(2, 2).unwrap(),
            zoo::all_equal3(),
        ] {
            let t = extract_tree(&f, &half).unwrap();
            assert_eq!(
                tree_cost(&t, &f, &half).unwrap(),
                dist_cost(&f, &half).unwrap()
            );
        }
    }

    #[test]
    fn and2_optimal_tree_shape() {
        let half = ProductMeasure::half();
        let t = extract_tree(&zoo::and(2).unwrap(), &half).unwrap();
        assert_eq!(t.to_text(), "(1? =0 : (2? =0 : =1))");
        assert_eq!(
            tree_cost(&t, &zoo::and(2).unwrap(), &half).unwrap(),
            exact(3, 2)
        );
        // constant function: a single leaf
        let c = BooleanFunction::constant(2, true);
        assert_eq!(extract_tree(&c, &half).unwrap(), DecisionTree::Leaf(true));
    }

    #[test]
    fn address_tree_cost() {
        let half = ProductMeasure::half();
        let f = zoo::address(2).unwrap();
        let t = extract_tree(&f, &half).unwrap();
        assert_eq!(tree_cost(&t, &f, &half).unwrap(), exact(3, 1));
        assert_eq!(t.depth(), 3);
    }

    #[test]
    fn tree_text_round_trip() {
        let half = ProductMeasure::half();
        for f in [zoo::maj(3).unwrap(), zoo::g4(), zoo::parity(3).unwrap()] {
            let t = extract_tree(&f, &half).unwrap();
            assert_eq!(DecisionTree::from_text(&t.to_text()).unwrap(), t);
        }
        assert!(DecisionTree::from_text("(0? =0 : =1)").is_err());
        assert!(DecisionTree::from_text("=2").is_err());
        assert!(DecisionTree::from_text("(1? =0 : =1) junk").is_err());
    }

    #[test]
    fn tree_cost_rejects_wrong_leaf() {
        let half = ProductMeasure::half();
        let bad = DecisionTree::Leaf(true);
        assert!(matches!(
            tree_cost(&bad, &zoo::and(2).unwrap(), &half),
            Err(Error::TreeMismatch)
        ));
        // repeated bit on a path
        let t = DecisionTree::from_text("(1? =0 : (1? =0 : =1))").unwrap();
        assert!(tree_cost(&t, &zoo::and(2).unwrap(), &half).is_err());
    }

    #[test]
    fn scan_tree_for_and2() {
        let half = ProductMeasure::half();
        let f = zoo::and(2).unwrap();
        let t = tree_from_strategy(&f, |r| (0..2).find(|&i| !r.assigns(i))).unwrap();
        assert_eq!(tree_cost(&t, &f, &half).unwrap(), exact(3, 2));
    }

    #[test]
    fn parity_needs_full_depth() {
        let half = ProductMeasure::half();
        for n in 1..=4usize {
            let f = zoo::parity(n).unwrap();
            let t = extract_tree(&f, &half).unwrap();
            assert_eq!(tree_cost(&t, &f, &half).unwrap(), exact(n as i64, 1));
            let rev = revealment(&t, &f, &half).unwrap();
            assert!(rev.iter().all(|r| *r == Exact::one()));
        }
    }

    #[test]
    fn revealment_examples() {
        let half = ProductMeasure::half();
        let f = zoo::and(2).unwrap();
        let t = extract_tree(&f, &half).unwrap();
        let rev = revealment(&t, &f, &half).unwrap();
        assert_eq!(rev, vec![exact(1, 1), exact(1, 2)]);
        let total: Exact = rev.into_iter().fold(Exact::zero(), |a, b| a + b);
        assert_eq!(total, tree_cost(&t, &f, &half).unwrap());
    }

    use num_traits::Zero;

    #[test]
    fn osss_examples() {
        let half = ProductMeasure::half();
        for f in [zoo::maj(3).unwrap(), zoo::tribes(2, 2).unwrap()] {
            let t = extract_tree(&f, &half).unwrap();
            let r = osss_check(&f, &half, &t).unwrap();
            assert!(r.holds, "{:?} vs {:?}", r.variance, r.bound);
        }
        let c = BooleanFunction::constant(2, false);
        let t = extract_tree(&c, &half).unwrap();
        let r = osss_check(&c, &half, &t).unwrap();
        assert!(r.holds);
        assert_eq!(r.variance, Exact::zero());
    }

    use crate::bf::BooleanFunction;

    #[test]
    fn cap_refuses_large_arities() {
        let f = BooleanFunction::constant(18, false);
        assert!(matches!(
            det_depth(&f),
            Err(Error::CapExceeded { .. })
        ));
    }
}
