//! The two-level partial-information query model at `pi_{1/2}`.
//!
//! A strategy may ask a *coarse* question about an untouched bit (cost
//! `kappa`, fair answer `Z`) or complete a coarsely-known bit to a *full*
//! answer `X` (cost `1 - kappa`, with `P[X = Z] = p`); a classical query
//! is the two moves back to back at total cost 1. The function counts as
//! determined by the fully answered bits alone — coarse answers shift
//! probabilities but never determine. The optimal cost is a minimum of
//! finitely many lines `alpha + beta * kappa`, so everything here is
//! exact rational arithmetic; `kappa` may exceed 1 (coarse answers are
//! then never worth keeping, but the cost remains well defined).

use std::collections::HashMap;

use num_traits::{One, Signed, Zero};

use crate::bf::{BooleanFunction, Restriction};
use crate::dtree;
use crate::error::{Error, Result};
use crate::measure::ProductMeasure;
use crate::scalar::Exact;

/// Default arity cap; the state space has `5^n` entries.
pub const DEFAULT_PARTIAL_CAP: usize = 10;

/// Cost of a strategy as a line in `kappa`:
/// `full + kappa * partial`, where `full` is the expected number of
/// fully answered bits at stopping and `partial` the expected number of
/// bits left with only the coarse answer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrategyLine {
    pub full: Exact,
    pub partial: Exact,
}

impl StrategyLine {
    pub fn cost_at(&self, kappa: &Exact) -> Exact {
        self.full.clone() + self.partial.clone() * kappa.clone()
    }
}

/// Per-bit knowledge: untouched, coarse answer 0/1, full answer 0/1.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Tag {
    Unknown = 0,
    Coarse0 = 1,
    Coarse1 = 2,
    Full0 = 3,
    Full1 = 4,
}

struct Solver<'a> {
    f: &'a BooleanFunction,
    n: usize,
    p: Exact,
    q: Exact,
    kappa: Exact,
    pow5: Vec<u32>,
    memo: HashMap<u32, StrategyLine>,
}

impl<'a> Solver<'a> {
    fn new(f: &'a BooleanFunction, p: &Exact, kappa: &Exact) -> Self {
        let n = f.arity();
        let mut pow5 = vec![1u32];
        for i in 0..n {
            pow5.push(pow5[i] * 5);
        }
        Solver {
            f,
            n,
            p: p.clone(),
            q: Exact::one() - p.clone(),
            kappa: kappa.clone(),
            pow5,
            memo: HashMap::new(),
        }
    }

    fn tag(&self, state: u32, i: usize) -> Tag {
        match state / self.pow5[i] % 5 {
            0 => Tag::Unknown,
            1 => Tag::Coarse0,
            2 => Tag::Coarse1,
            3 => Tag::Full0,
            _ => Tag::Full1,
        }
    }

    fn with_tag(&self, state: u32, i: usize, t: Tag) -> u32 {
        let old = state / self.pow5[i] % 5;
        state - old * self.pow5[i] + (t as u32) * self.pow5[i]
    }

    /// The full answers force `f` constant.
    fn determined(&self, state: u32) -> bool {
        let mut r = Restriction::EMPTY;
        for i in 0..self.n {
            match self.tag(state, i) {
                Tag::Full0 => r = r.fix(i, false),
                Tag::Full1 => r = r.fix(i, true),
                _ => {}
            }
        }
        self.f.restricted_constant(r).is_some()
    }

    /// Optimal line at `state`; ties at the current `kappa` break toward
    /// the smaller `partial` coefficient, then the lower bit index.
    fn line(&mut self, state: u32) -> StrategyLine {
        if let Some(l) = self.memo.get(&state) {
            return l.clone();
        }
        let line = if self.determined(state) {
            StrategyLine {
                full: Exact::zero(),
                partial: Exact::zero(),
            }
        } else {
            let half = crate::scalar::exact(1, 2);
            let mut best: Option<(Exact, StrategyLine)> = None;
            for i in 0..self.n {
                let cand = match self.tag(state, i) {
                    Tag::Unknown => {
                        let z0 = self.line(self.with_tag(state, i, Tag::Coarse0));
                        let z1 = self.line(self.with_tag(state, i, Tag::Coarse1));
                        StrategyLine {
                            full: (z0.full + z1.full) * half.clone(),
                            partial: Exact::one() + (z0.partial + z1.partial) * half.clone(),
                        }
                    }
                    Tag::Coarse0 | Tag::Coarse1 => {
                        let z = self.tag(state, i) == Tag::Coarse1;
                        let same = self.line(self.with_tag(
                            state,
                            i,
                            if z { Tag::Full1 } else { Tag::Full0 },
                        ));
                        let flip = self.line(self.with_tag(
                            state,
                            i,
                            if z { Tag::Full0 } else { Tag::Full1 },
                        ));
                        StrategyLine {
                            full: Exact::one()
                                + self.p.clone() * same.full
                                + self.q.clone() * flip.full,
                            partial: -Exact::one()
                                + self.p.clone() * same.partial
                                + self.q.clone() * flip.partial,
                        }
                    }
                    _ => continue,
                };
                let value = cand.cost_at(&self.kappa);
                let better = match &best {
                    None => true,
                    Some((bv, bl)) => {
                        value < *bv || (value == *bv && cand.partial < bl.partial)
                    }
                };
                if better {
                    best = Some((value, cand));
                }
            }
            best.expect("undetermined state has moves").1
        };
        self.memo.insert(state, line.clone());
        line
    }
}

fn check_args(f: &BooleanFunction, p: &Exact, kappa: &Exact, cap: usize) -> Result<()> {
    if f.arity() > cap {
        return Err(Error::CapExceeded {
            what: "partial-information search",
            cap,
            need: f.arity(),
        });
    }
    let half = crate::scalar::exact(1, 2);
    if *p <= half || *p >= Exact::one() {
        return Err(Error::Domain(format!(
            "coarse-answer level p must lie strictly between 1/2 and 1, got {p}"
        )));
    }
    if kappa.is_negative() {
        return Err(Error::Domain(format!("kappa must be >= 0, got {kappa}")));
    }
    Ok(())
}

/// Optimal expected cost of determining `f` in the `(p, kappa)` model.
pub fn pk_cost(f: &BooleanFunction, p: &Exact, kappa: &Exact) -> Result<Exact> {
    pk_cost_with_cap(f, p, kappa, DEFAULT_PARTIAL_CAP)
}

pub fn pk_cost_with_cap(
    f: &BooleanFunction,
    p: &Exact,
    kappa: &Exact,
    cap: usize,
) -> Result<Exact> {
    Ok(pk_strategy_line_with_cap(f, p, kappa, cap)?.cost_at(kappa))
}

/// `(full, partial)` coefficients of an optimal strategy at this `kappa`.
pub fn pk_strategy_line(f: &BooleanFunction, p: &Exact, kappa: &Exact) -> Result<StrategyLine> {
    pk_strategy_line_with_cap(f, p, kappa, DEFAULT_PARTIAL_CAP)
}

pub fn pk_strategy_line_with_cap(
    f: &BooleanFunction,
    p: &Exact,
    kappa: &Exact,
    cap: usize,
) -> Result<StrategyLine> {
    check_args(f, p, kappa, cap)?;
    Ok(Solver::new(f, p, kappa).line(0))
}

/// The least `kappa` at which the partial-information optimum equals the
/// classical optimum `a(f, pi_{1/2})`.
///
/// The cost is a concave piecewise-linear minimum of finitely many lines,
/// so the walk below is exact: from a `kappa` with value still below the
/// classical cost, the active line `alpha + beta * kappa` reaches the
/// classical cost at `(a - alpha) / beta`, and the optimum cannot get
/// there earlier. Finitely many lines, so finitely many steps.
pub fn kappa_critical(f: &BooleanFunction, p: &Exact) -> Result<Exact> {
    kappa_critical_with_cap(f, p, DEFAULT_PARTIAL_CAP)
}

pub fn kappa_critical_with_cap(f: &BooleanFunction, p: &Exact, cap: usize) -> Result<Exact> {
    check_args(f, p, &Exact::zero(), cap)?;
    let classical = dtree::dist_cost_with_cap(f, &ProductMeasure::half(), cap.max(16))?;
    let mut at = Exact::zero();
    loop {
        let line = pk_strategy_line_with_cap(f, p, &at, cap)?;
        let value = line.cost_at(&at);
        debug_assert!(value <= classical);
        if value == classical {
            return Ok(at);
        }
        assert!(
            line.partial.is_positive(),
            "a kappa-independent strategy cannot stay below the classical cost"
        );
        at = (classical.clone() - line.full) / line.partial;
    }
}

/// The closed-form threshold `1 / (1 + (1/n) ((1-p)/2)^n)`: above it, the
/// optimal cost always equals the classical one.
pub fn kappa0_bound(n: usize, p: &Exact) -> Result<Exact> {
    if n == 0 {
        return Err(Error::InvalidParam("threshold needs n >= 1".into()));
    }
    let half_q = (Exact::one() - p.clone()) / Exact::from_integer(2.into());
    let mut pow = Exact::one();
    for _ in 0..n {
        pow = pow * half_q.clone();
    }
    let denom = Exact::one() + pow / Exact::from_integer((n as i64).into());
    Ok(Exact::one() / denom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::exact;
    use crate::zoo;

    #[test]
    fn classical_limit_at_kappa_one() {
        let one = Exact::one();
        for p in [exact(2, 3), exact(3, 4), exact(9, 10)] {
            let v = pk_cost(&zoo::and(2).unwrap(), &p, &one).unwrap();
            assert_eq!(v, exact(3, 2));
        }
    }

    #[test]
    fn and2_cost_formula_below_critical() {
        for (pn, pd) in [(2i64, 3i64), (3, 4)] {
            let p = exact(pn, pd);
            for kappa in [exact(0, 1), exact(1, 10), exact(1, 4)] {
                if kappa >= exact(2 * pn - pd, pd) {
                    continue;
                }
                let got = pk_cost(&zoo::and(2).unwrap(), &p, &kappa).unwrap();
                let want = exact(3, 2) + (kappa - exact(2 * pn - pd, pd)) / exact(4, 1);
                assert_eq!(got, want, "p={p} kappa mismatch");
            }
        }
    }

    #[test]
    fn and2_critical_kappa() {
        for (pn, pd) in [(2i64, 3i64), (3, 4)] {
            let p = exact(pn, pd);
            assert_eq!(
                kappa_critical(&zoo::and(2).unwrap(), &p).unwrap(),
                exact(2 * pn - pd, pd)
            );
        }
    }

    #[test]
    fn parity_gains_nothing() {
        let p = exact(3, 4);
        for n in 1..=3usize {
            let f = zoo::parity(n).unwrap();
            assert_eq!(kappa_critical(&f, &p).unwrap(), Exact::zero());
            let line = pk_strategy_line(&f, &p, &Exact::zero()).unwrap();
            assert_eq!(line.full, exact(n as i64, 1));
            assert_eq!(line.partial, Exact::zero());
        }
    }

    #[test]
    fn maj3_critical_kappa_frozen() {
        assert_eq!(
            kappa_critical(&zoo::maj(3).unwrap(), &exact(3, 4)).unwrap(),
            exact(1, 2)
        );
        assert_eq!(
            kappa_critical(&zoo::maj(3).unwrap(), &exact(2, 3)).unwrap(),
            exact(1, 3)
        );
    }

    #[test]
    fn and2_strategy_lines() {
        let p = exact(3, 4);
        let at_one = pk_strategy_line(&zoo::and(2).unwrap(), &p, &Exact::one()).unwrap();
        assert_eq!(at_one.partial, Exact::zero());
        let at_zero = pk_strategy_line(&zoo::and(2).unwrap(), &p, &Exact::zero()).unwrap();
        assert!(at_zero.partial.is_positive());
        assert_eq!(
            at_zero.cost_at(&Exact::zero()),
            pk_cost(&zoo::and(2).unwrap(), &p, &Exact::zero()).unwrap()
        );
    }

    #[test]
    fn address7_beats_classical_at_small_kappa() {
        let f = zoo::address7();
        let p = exact(9, 10);
        let kappa = exact(1, 100);
        let v = pk_cost(&f, &p, &kappa).unwrap();
        // cost of the coarse-first strategy on the parity pairs
        let u = p.clone() * p.clone() + (Exact::one() - p.clone()) * (Exact::one() - p.clone());
        let bound = exact(9, 2)
            + kappa.clone()
            + exact(6, 1) * p.clone() * (Exact::one() - p.clone()) * u;
        assert!(v <= bound);
        assert!(v < exact(5, 1));
        // frozen exact optimum
        assert_eq!(v, exact(485101789, 100000000));
    }

    #[test]
    fn kappa0_values() {
        assert_eq!(kappa0_bound(2, &exact(3, 4)).unwrap(), exact(128, 129));
        // n = 1: 1 / (1 + (1-p)/2)
        let p = exact(1, 3);
        assert_eq!(kappa0_bound(1, &p).unwrap(), exact(3, 4));
        assert!(kappa0_bound(0, &p).is_err());
        // increasing in n and p
        let k23 = kappa0_bound(2, &exact(2, 3)).unwrap();
        let k33 = kappa0_bound(3, &exact(2, 3)).unwrap();
        let k24 = kappa0_bound(2, &exact(3, 4)).unwrap();
        assert!(k23 < k33);
        assert!(k23 < k24);
    }

    #[test]
    fn domain_checks() {
        let f = zoo::and(2).unwrap();
        assert!(pk_cost(&f, &exact(1, 2), &Exact::zero()).is_err());
        assert!(pk_cost(&f, &exact(1, 1), &Exact::zero()).is_err());
        assert!(pk_cost(&f, &exact(3, 4), &exact(-1, 2)).is_err());
        // kappa above 1 is allowed (needed when thresholds exceed 1)
        assert!(pk_cost(&f, &exact(3, 4), &exact(3, 2)).is_ok());
        let big = BooleanFunction::constant(11, false);
        assert!(matches!(
            pk_cost(&big, &exact(3, 4), &Exact::zero()),
            Err(Error::CapExceeded { .. })
        ));
    }

    use crate::bf::BooleanFunction;
}
