//! Truth-table representation of Boolean functions.
//!
//! The global bit convention: an input `x = (x_1, ..., x_n)` is stored at
//! table index `sum x_i * 2^(i-1)`, so input bit `i` (1-based) is bit
//! `i-1` of the index. Everything in the crate uses this convention.

use crate::error::{Error, Result};

/// Default ceiling on arity; a 2^24-bit table is 2 MiB.
pub const DEFAULT_TABLE_CAP: usize = 24;

/// A Boolean function on `arity` bits, stored as a packed truth table.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BooleanFunction {
    arity: usize,
    table: Vec<u64>,
}

/// A partial assignment: bit `i` of `assigned` set means input bit `i+1`
/// is fixed to bit `i` of `values`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Restriction {
    pub assigned: u32,
    pub values: u32,
}

impl Restriction {
    pub const EMPTY: Restriction = Restriction {
        assigned: 0,
        values: 0,
    };

    pub fn new(assigned: u32, values: u32) -> Result<Self> {
        if values & !assigned != 0 {
            return Err(Error::InvalidParam(
                "restriction assigns values outside its mask".into(),
            ));
        }
        Ok(Restriction { assigned, values })
    }

    pub fn fix(self, bit: usize, value: bool) -> Restriction {
        let m = 1u32 << bit;
        Restriction {
            assigned: self.assigned | m,
            values: if value { self.values | m } else { self.values & !m },
        }
    }

    pub fn assigns(self, bit: usize) -> bool {
        self.assigned >> bit & 1 == 1
    }

    pub fn len(self) -> usize {
        self.assigned.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.assigned == 0
    }

    /// Scatters an assignment of the free bits (in increasing index order)
    /// into a full input index.
    pub fn merge(self, arity: usize, free_index: u32) -> u32 {
        let mut idx = self.values;
        let mut k = 0;
        for i in 0..arity {
            if self.assigned >> i & 1 == 0 {
                idx |= (free_index >> k & 1) << i;
                k += 1;
            }
        }
        idx
    }
}

impl BooleanFunction {
    pub fn from_indicator<F: FnMut(u32) -> bool>(arity: usize, pred: F) -> Result<Self> {
        Self::from_indicator_with_cap(arity, pred, DEFAULT_TABLE_CAP)
    }

    pub fn from_indicator_with_cap<F: FnMut(u32) -> bool>(
        arity: usize,
        mut pred: F,
        cap: usize,
    ) -> Result<Self> {
        if arity > cap {
            return Err(Error::CapExceeded {
                what: "truth table",
                cap,
                need: arity,
            });
        }
        let size = 1usize << arity;
        let mut table = vec![0u64; size.div_ceil(64)];
        for idx in 0..size as u32 {
            if pred(idx) {
                table[idx as usize / 64] |= 1 << (idx % 64);
            }
        }
        Ok(BooleanFunction { arity, table })
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(arity: usize, bits: I) -> Result<Self> {
        let bits: Vec<bool> = bits.into_iter().collect();
        if bits.len() != 1 << arity {
            return Err(Error::InvalidParam(format!(
                "table length {} does not match arity {}",
                bits.len(),
                arity
            )));
        }
        Self::from_indicator(arity, |i| bits[i as usize])
    }

    pub fn constant(arity: usize, value: bool) -> Self {
        Self::from_indicator(arity, |_| value).expect("constant within cap")
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn table_len(&self) -> usize {
        1 << self.arity
    }

    #[inline]
    pub fn eval_index(&self, idx: u32) -> bool {
        debug_assert!((idx as usize) < self.table_len());
        self.table[idx as usize / 64] >> (idx % 64) & 1 == 1
    }

    /// Evaluates on an explicit input vector `(x_1, ..., x_n)`.
    pub fn evaluate(&self, x: &[bool]) -> Result<bool> {
        if x.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                got: x.len(),
            });
        }
        let mut idx = 0u32;
        for (i, &b) in x.iter().enumerate() {
            idx |= (b as u32) << i;
        }
        Ok(self.eval_index(idx))
    }

    pub fn ones_count(&self) -> u64 {
        self.table.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn is_constant(&self) -> Option<bool> {
        match self.ones_count() {
            0 => Some(false),
            c if c == self.table_len() as u64 => Some(true),
            _ => None,
        }
    }

    pub fn complement(&self) -> Self {
        Self::from_indicator(self.arity, |i| !self.eval_index(i)).expect("same arity")
    }

    /// Value of the function on the subcube described by `r`, if constant.
    pub fn restricted_constant(&self, r: Restriction) -> Option<bool> {
        let full = (self.table_len() - 1) as u32;
        let free = full & !r.assigned;
        let first = self.eval_index(r.values);
        // enumerate submasks of `free`
        let mut sub = free;
        loop {
            if self.eval_index(r.values | sub) != first {
                return None;
            }
            if sub == 0 {
                return Some(first);
            }
            sub = (sub - 1) & free;
        }
    }

    /// Subfunction on the unassigned bits, kept in increasing index order.
    pub fn restrict(&self, r: Restriction) -> Self {
        let sub_arity = self.arity - r.assigned.count_ones() as usize;
        Self::from_indicator(sub_arity, |free_idx| {
            self.eval_index(r.merge(self.arity, free_idx))
        })
        .expect("restriction shrinks the table")
    }

    /// Block composition: block `i` of `g`-inputs feeds input `i` of `f`.
    pub fn compose(&self, g: &BooleanFunction) -> Result<Self> {
        self.compose_with_cap(g, DEFAULT_TABLE_CAP)
    }

    pub fn compose_with_cap(&self, g: &BooleanFunction, cap: usize) -> Result<Self> {
        let (n, m) = (self.arity, g.arity);
        let need = n.checked_mul(m).ok_or(Error::CapExceeded {
            what: "composition",
            cap,
            need: usize::MAX,
        })?;
        if need > cap {
            return Err(Error::CapExceeded {
                what: "composition",
                cap,
                need,
            });
        }
        let block_mask = ((1u64 << m) - 1) as u32;
        Self::from_indicator_with_cap(
            need,
            |idx| {
                let mut y = 0u32;
                for i in 0..n {
                    let block = (idx >> (i * m)) & block_mask;
                    y |= (g.eval_index(block) as u32) << i;
                }
                self.eval_index(y)
            },
            cap,
        )
    }

    /// `(f xor PAR_k)(x, y_1, ..., y_k) = f(x) ^ y_1 ^ ... ^ y_k`.
    pub fn xor_parity(&self, k: usize) -> Result<Self> {
        self.xor_parity_with_cap(k, DEFAULT_TABLE_CAP)
    }

    pub fn xor_parity_with_cap(&self, k: usize, cap: usize) -> Result<Self> {
        let need = self.arity + k;
        if need > cap {
            return Err(Error::CapExceeded {
                what: "xor extension",
                cap,
                need,
            });
        }
        let low = ((1u64 << self.arity) - 1) as u32;
        Self::from_indicator_with_cap(
            need,
            |idx| self.eval_index(idx & low) ^ ((idx >> self.arity).count_ones() % 2 == 1),
            cap,
        )
    }

    /// `k`-fold composition `f o f o ... o f`.
    pub fn iterate(&self, k: usize) -> Result<Self> {
        self.iterate_with_cap(k, DEFAULT_TABLE_CAP)
    }

    pub fn iterate_with_cap(&self, k: usize, cap: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParam("iterate needs k >= 1".into()));
        }
        let mut acc = self.clone();
        for _ in 1..k {
            acc = self.compose_with_cap(&acc, cap)?;
        }
        Ok(acc)
    }

    /// True iff `f(x) <= f(y)` whenever `x <= y` coordinatewise.
    pub fn is_monotone(&self) -> bool {
        for idx in 0..self.table_len() as u32 {
            for i in 0..self.arity {
                if idx >> i & 1 == 0 && self.eval_index(idx) && !self.eval_index(idx | 1 << i) {
                    return false;
                }
            }
        }
        true
    }

    /// Coefficients of the multilinear polynomial representing `f`,
    /// indexed by subset mask: `c_S = sum_{T subset S} (-1)^(|S\T|) f(1_T)`.
    pub fn moebius_coefficients(&self) -> Vec<i64> {
        let size = self.table_len();
        let mut c: Vec<i64> = (0..size as u32).map(|i| self.eval_index(i) as i64).collect();
        for i in 0..self.arity {
            let bit = 1usize << i;
            for s in 0..size {
                if s & bit != 0 {
                    c[s] -= c[s ^ bit];
                }
            }
        }
        c
    }

    /// Degree of the multilinear polynomial; constants have degree 0.
    pub fn degree(&self) -> usize {
        self.moebius_coefficients()
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(s, _)| s.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    /// Number of hypercube edges `{x, y}` with `f(x) != f(y)`.
    pub fn edge_boundary(&self) -> u64 {
        let mut count = 0;
        for idx in 0..self.table_len() as u32 {
            for i in 0..self.arity {
                if idx >> i & 1 == 0 && self.eval_index(idx) != self.eval_index(idx | 1 << i) {
                    count += 1;
                }
            }
        }
        count
    }

    /// Serializes as two lines: `n=<arity>` and the table in hex,
    /// least significant hex digit carrying indices 0..4.
    pub fn to_text(&self) -> String {
        let digits = self.table_len().div_ceil(4);
        let mut hex = String::with_capacity(digits);
        for d in (0..digits).rev() {
            let mut nibble = 0u8;
            for b in 0..4 {
                let idx = d * 4 + b;
                if idx < self.table_len() && self.eval_index(idx as u32) {
                    nibble |= 1 << b;
                }
            }
            hex.push(char::from_digit(nibble as u32, 16).unwrap());
        }
        format!("n={}\n{}\n", self.arity, hex)
    }

    pub fn from_text(text: &str) -> Result<Self> {
        Self::from_text_with_cap(text, DEFAULT_TABLE_CAP)
    }

    pub fn from_text_with_cap(text: &str, cap: usize) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty truth-table document".into()))?;
        let arity: usize = header
            .strip_prefix("n=")
            .ok_or_else(|| Error::Parse(format!("expected n=<arity>, got {header:?}")))?
            .parse()
            .map_err(|_| Error::Parse(format!("bad arity in {header:?}")))?;
        let hex = lines
            .next()
            .ok_or_else(|| Error::Parse("missing hex table line".into()))?;
        if arity > cap {
            return Err(Error::CapExceeded {
                what: "truth table",
                cap,
                need: arity,
            });
        }
        let size = 1usize << arity;
        let mut bits = vec![false; size];
        for (pos, ch) in hex.chars().rev().enumerate() {
            let nibble = ch
                .to_digit(16)
                .ok_or_else(|| Error::Parse(format!("bad hex digit {ch:?}")))?;
            for b in 0..4 {
                let idx = pos * 4 + b;
                if nibble >> b & 1 == 1 {
                    if idx >= size {
                        return Err(Error::Parse(format!(
                            "hex table sets bit {idx}, beyond 2^{arity} entries"
                        )));
                    }
                    bits[idx] = true;
                }
            }
        }
        Self::from_bits(arity, bits)
    }
}

impl std::fmt::Debug for BooleanFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BooleanFunction(n={}, ones={})", self.arity, self.ones_count())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    #[test]
    fn evaluate_and_indexing() {
        let and2 = zoo::and(2).unwrap();
        assert!(and2.evaluate(&[true, true]).unwrap());
        assert!(!and2.evaluate(&[true, false]).unwrap());
        let maj3 = zoo::maj(3).unwrap();
        assert!(maj3.evaluate(&[true, true, false]).unwrap());
        assert!(matches!(
            maj3.evaluate(&[true]),
            Err(Error::ArityMismatch { .. })
        ));
    }

    #[test]
    fn compose_gives_tribes() {
        let tribes = zoo::or(2).unwrap().compose(&zoo::and(2).unwrap()).unwrap();
        assert_eq!(tribes, zoo::tribes(2, 2).unwrap());
        // block order: bits 1,2 feed the first AND
        assert!(tribes.evaluate(&[true, true, false, false]).unwrap());
        assert!(!tribes.evaluate(&[true, false, true, false]).unwrap());
    }

    #[test]
    fn compose_identity_and_iterate() {
        let id = zoo::parity(1).unwrap();
        let maj3 = zoo::maj(3).unwrap();
        assert_eq!(maj3.compose(&id).unwrap(), maj3);
        assert_eq!(maj3.iterate(1).unwrap(), maj3);
        let m9 = maj3.iterate(2).unwrap();
        assert_eq!(m9.arity(), 9);
        assert_eq!(m9, maj3.compose(&maj3).unwrap());
    }

    #[test]
    fn xor_parity_basics() {
        assert_eq!(
            BooleanFunction::constant(0, false).xor_parity(2).unwrap(),
            zoo::parity(2).unwrap()
        );
        assert_eq!(
            zoo::parity(1).unwrap().xor_parity(1).unwrap(),
            zoo::parity(2).unwrap()
        );
    }

    #[test]
    fn restrict_majority() {
        let maj3 = zoo::maj(3).unwrap();
        let with_x1_true = maj3.restrict(Restriction::new(0b001, 0b001).unwrap());
        assert_eq!(with_x1_true, zoo::or(2).unwrap());
        let with_x1_false = maj3.restrict(Restriction::new(0b001, 0).unwrap());
        assert_eq!(with_x1_false, zoo::and(2).unwrap());
        let and3 = zoo::and(3).unwrap();
        assert_eq!(
            and3.restrict(Restriction::new(0b010, 0).unwrap()),
            BooleanFunction::constant(2, false)
        );
    }

    #[test]
    fn monotonicity() {
        assert!(zoo::maj(3).unwrap().is_monotone());
        assert!(!zoo::parity(2).unwrap().is_monotone());
        assert!(!zoo::all_equal3().is_monotone());
        assert!(zoo::maj4().is_monotone());
    }

    #[test]
    fn degree_values() {
        assert_eq!(zoo::and(2).unwrap().degree(), 2);
        assert_eq!(zoo::parity(2).unwrap().degree(), 2);
        assert_eq!(zoo::maj(3).unwrap().degree(), 3);
        assert_eq!(BooleanFunction::constant(3, true).degree(), 0);
        assert_eq!(BooleanFunction::constant(0, false).degree(), 0);
        // top coefficient of MAJ3 is -2
        assert_eq!(zoo::maj(3).unwrap().moebius_coefficients()[0b111], -2);
    }

    #[test]
    fn edge_boundary_values() {
        for n in 1..=4 {
            assert_eq!(
                zoo::parity(n).unwrap().edge_boundary(),
                (n as u64) << (n - 1)
            );
        }
        assert_eq!(BooleanFunction::constant(4, true).edge_boundary(), 0);
        assert_eq!(zoo::maj(3).unwrap().edge_boundary(), 6);
    }

    #[test]
    fn text_round_trip() {
        for f in [
            zoo::maj(3).unwrap(),
            zoo::g4(),
            zoo::nisan(8).unwrap(),
            BooleanFunction::constant(0, true),
            BooleanFunction::constant(2, false),
        ] {
            let text = f.to_text();
            assert_eq!(BooleanFunction::from_text(&text).unwrap(), f);
        }
        assert!(BooleanFunction::from_text("n=2\nff\n").is_err()); // bit 7 > 3
        assert!(BooleanFunction::from_text("n=zz\n0\n").is_err());
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            BooleanFunction::from_indicator(25, |_| false),
            Err(Error::CapExceeded { .. })
        ));
        let f = zoo::maj(3).unwrap();
        assert!(f.compose_with_cap(&zoo::maj(3).unwrap(), 8).is_err());
    }

    #[test]
    fn restricted_constant_matches_restrict() {
        let f = zoo::h4();
        for assigned in 0..16u32 {
            for values in 0..16u32 {
                if values & !assigned != 0 {
                    continue;
                }
                let r = Restriction::new(assigned, values).unwrap();
                assert_eq!(f.restricted_constant(r), f.restrict(r).is_constant());
            }
        }
    }
}
