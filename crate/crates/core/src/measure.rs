//! Product measures `pi_p` on the hypercube and the basic exact statistics.


use crate::bf::BooleanFunction;
use crate::error::{Error, Result};
use crate::scalar::{Exact, Scalar};

/// Product measure on `{0,1}^n` with marginal `p` for each bit.
#[derive(Clone, Debug, PartialEq)]
pub struct ProductMeasure<S: Scalar = Exact> {
    p: S,
    q: S, // 1 - p
}

impl<S: Scalar> ProductMeasure<S> {
    pub fn new(p: S) -> Result<Self> {
        if p < S::zero() || p > S::one() {
            return Err(Error::Domain(format!("marginal {p:?} outside [0,1]")));
        }
        let q = S::one() - p.clone();
        Ok(ProductMeasure { p, q })
    }

    pub fn p(&self) -> &S {
        &self.p
    }

    /// `1 - p`.
    pub fn q(&self) -> &S {
        &self.q
    }

    pub fn point_probability(&self, x: &[bool]) -> S {
        let mut acc = S::one();
        for &b in x {
            acc = acc * if b { self.p.clone() } else { self.q.clone() };
        }
        acc
    }

    /// `pi_p` mass of the input with the given table index.
    pub fn index_probability(&self, arity: usize, idx: u32) -> S {
        let ones = idx.count_ones() as usize;
        let mut acc = S::one();
        for _ in 0..ones {
            acc = acc * self.p.clone();
        }
        for _ in 0..arity - ones {
            acc = acc * self.q.clone();
        }
        acc
    }

    /// Masses of all `2^arity` inputs, indexed by table index.
    pub fn weights(&self, arity: usize) -> Vec<S> {
        // pow table avoids repeated multiplication chains
        let mut ppow = vec![S::one()];
        let mut qpow = vec![S::one()];
        for i in 0..arity {
            ppow.push(ppow[i].clone() * self.p.clone());
            qpow.push(qpow[i].clone() * self.q.clone());
        }
        (0..1u32 << arity)
            .map(|idx| {
                let ones = idx.count_ones() as usize;
                ppow[ones].clone() * qpow[arity - ones].clone()
            })
            .collect()
    }
}

impl ProductMeasure<Exact> {
    pub fn half() -> Self {
        ProductMeasure::new(crate::scalar::exact(1, 2)).unwrap()
    }
}

/// `P_{x ~ pi_p}[f(x) = 1]`, computed exactly.
pub fn output_probability<S: Scalar>(f: &BooleanFunction, m: &ProductMeasure<S>) -> S {
    let weights = m.weights(f.arity());
    let mut acc = S::zero();
    for (idx, w) in weights.into_iter().enumerate() {
        if f.eval_index(idx as u32) {
            acc = acc + w;
        }
    }
    acc
}

/// `Var_p(f) = g(p) (1 - g(p))` with `g(p)` the output probability.
pub fn variance<S: Scalar>(f: &BooleanFunction, m: &ProductMeasure<S>) -> S {
    let g = output_probability(f, m);
    g.clone() * (S::one() - g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{exact, ratio};
    use crate::zoo;

    #[test]
    fn point_probabilities() {
        let m: ProductMeasure = ProductMeasure::new(exact(1, 2)).unwrap();
        assert_eq!(m.point_probability(&[true, false, true]), exact(1, 8));
        let m3: ProductMeasure = ProductMeasure::new(exact(1, 3)).unwrap();
        assert_eq!(m3.point_probability(&[true, true, false]), exact(2, 27));
        let m1: ProductMeasure = ProductMeasure::new(exact(1, 1)).unwrap();
        assert_eq!(m1.point_probability(&[true, true]), exact(1, 1));
    }

    #[test]
    fn output_probabilities() {
        let half = ProductMeasure::half();
        assert_eq!(output_probability(&zoo::and(2).unwrap(), &half), exact(1, 4));
        assert_eq!(output_probability(&zoo::maj(3).unwrap(), &half), exact(1, 2));
        assert_eq!(output_probability(&zoo::all_equal3(), &half), exact(1, 4));
    }

    #[test]
    fn variances() {
        let half = ProductMeasure::half();
        assert_eq!(variance(&zoo::maj(3).unwrap(), &half), exact(1, 4));
        assert_eq!(
            variance(&crate::BooleanFunction::constant(3, false), &half),
            exact(0, 1)
        );
        assert_eq!(variance(&zoo::and(2).unwrap(), &half), exact(3, 16));
    }

    #[test]
    fn rejects_bad_marginal() {
        assert!(ProductMeasure::new(exact(3, 2)).is_err());
        assert!(ProductMeasure::new(exact(-1, 2)).is_err());
        assert!(ProductMeasure::new(-0.25f64).is_err());
    }

    #[test]
    fn float_instantiation_matches_exact() {
        use num_traits::ToPrimitive;
        let f = zoo::tribes(2, 2).unwrap();
        let e: Exact = output_probability(&f, &ProductMeasure::new(ratio(1, 3)).unwrap());
        let d: f64 = output_probability(&f, &ProductMeasure::new(ratio(1, 3)).unwrap());
        assert!((d - e.to_f64().unwrap()).abs() < 1e-12);
    }
}
