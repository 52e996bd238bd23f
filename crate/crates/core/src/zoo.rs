//! The function zoo: named families used throughout the test suites and
//! the CLI mini-language.

use crate::bf::BooleanFunction;
use crate::error::{Error, Result};

pub fn and(n: usize) -> Result<BooleanFunction> {
    let full = ((1u64 << n) - 1) as u32;
    BooleanFunction::from_indicator(n, |idx| idx == full)
}

pub fn or(n: usize) -> Result<BooleanFunction> {
    BooleanFunction::from_indicator(n, |idx| idx != 0)
}

pub fn parity(n: usize) -> Result<BooleanFunction> {
    BooleanFunction::from_indicator(n, |idx| idx.count_ones() % 2 == 1)
}

/// Majority on an odd number of bits.
pub fn maj(n: usize) -> Result<BooleanFunction> {
    if n % 2 == 0 {
        return Err(Error::InvalidParam(format!("MAJ needs odd arity, got {n}")));
    }
    let threshold = (n as u32 + 1) / 2;
    BooleanFunction::from_indicator(n, |idx| idx.count_ones() >= threshold)
}

/// Four-bit majority with the first bit doubled to break ties.
pub fn maj4() -> BooleanFunction {
    BooleanFunction::from_indicator(4, |idx| (idx & 1) + idx.count_ones() >= 3)
        .expect("arity 4 within cap")
}

/// 1 iff all three bits agree.
pub fn all_equal3() -> BooleanFunction {
    BooleanFunction::from_indicator(3, |idx| idx == 0 || idx == 0b111).expect("arity 3")
}

/// 1 iff the number of ones is `n/2` or `n/2 + 1`; requires `n % 4 == 0`.
pub fn nisan(n: usize) -> Result<BooleanFunction> {
    if n == 0 || n % 4 != 0 {
        return Err(Error::InvalidParam(format!(
            "this family needs arity divisible by 4, got {n}"
        )));
    }
    let half = n as u32 / 2;
    BooleanFunction::from_indicator(n, |idx| {
        let w = idx.count_ones();
        w == half || w == half + 1
    })
}

/// `OR_l` of `l` tribes, each the `AND` of `m` bits.
pub fn tribes(l: usize, m: usize) -> Result<BooleanFunction> {
    if l == 0 || m == 0 {
        return Err(Error::InvalidParam("tribes needs l, m >= 1".into()));
    }
    or(l)?.compose(&and(m)?)
}

/// `ADDRESS_m` on `m + 2^m` bits: the `m` address bits come first and
/// select one of the `2^m` data bits.
pub fn address(m: usize) -> Result<BooleanFunction> {
    if m == 0 {
        return Err(Error::InvalidParam("address needs m >= 1".into()));
    }
    let arity = m + (1usize << m);
    BooleanFunction::from_indicator(arity, |idx| {
        let addr = idx & ((1 << m) - 1);
        idx >> (m as u32 + addr) & 1 == 1
    })
}

/// Seven-bit address variant: three selector bits pick one of two parity
/// pairs, `x1 ^ x2` when `x5 ^ x6 ^ x7 = 1` and `x3 ^ x4` otherwise.
pub fn address7() -> BooleanFunction {
    BooleanFunction::from_indicator(7, |idx| {
        let sel = (idx >> 4).count_ones() % 2 == 1;
        if sel {
            (idx & 1) ^ (idx >> 1 & 1) == 1
        } else {
            (idx >> 2 & 1) ^ (idx >> 3 & 1) == 1
        }
    })
    .expect("arity 7")
}

/// The four-bit function whose value-1 inputs are exactly
/// `(1,0,0,1), (0,0,0,1), (0,1,0,1), (0,1,1,0)`.
pub fn g4() -> BooleanFunction {
    BooleanFunction::from_indicator(4, |idx| matches!(idx, 0b1001 | 0b1000 | 0b1010 | 0b0110))
        .expect("arity 4")
}

/// The four-bit function whose value-1 inputs are the cells
/// `(*,*,0,1), (1,1,1,*), (1,0,0,0), (0,0,1,1)`.
pub fn h4() -> BooleanFunction {
    BooleanFunction::from_indicator(4, |idx| {
        let (x1, x2, x3, x4) = (idx & 1, idx >> 1 & 1, idx >> 2 & 1, idx >> 3 & 1);
        (x3, x4) == (0, 1) || (x1, x2, x3) == (1, 1, 1) || idx == 0b0001 || idx == 0b1100
    })
    .expect("arity 4")
}

/// Looks a family up by name, as used by the CLI mini-language.
/// Names are case-insensitive.
pub fn by_name(name: &str, params: &[usize]) -> Result<BooleanFunction> {
    let want = |k: usize| -> Result<()> {
        if params.len() == k {
            Ok(())
        } else {
            Err(Error::InvalidParam(format!(
                "{name} takes {k} parameter(s), got {}",
                params.len()
            )))
        }
    };
    match name.to_ascii_uppercase().as_str() {
        "AND" => want(1).and_then(|_| and(params[0])),
        "OR" => want(1).and_then(|_| or(params[0])),
        "PAR" | "PARITY" => want(1).and_then(|_| parity(params[0])),
        "MAJ" => want(1).and_then(|_| maj(params[0])),
        "MAJ4" => want(0).map(|_| maj4()),
        "AEQ3" | "A-EQ3" | "ALLEQUAL3" => want(0).map(|_| all_equal3()),
        "NISAN" => want(1).and_then(|_| nisan(params[0])),
        "TRIBES" => want(2).and_then(|_| tribes(params[0], params[1])),
        "ADDRESS" | "ADDR" => want(1).and_then(|_| address(params[0])),
        "ADDR7" => want(0).map(|_| address7()),
        "G4" => want(0).map(|_| g4()),
        "H4" => want(0).map(|_| h4()),
        "CONST0" => want(1).map(|_| BooleanFunction::constant(params[0], false)),
        "CONST1" => want(1).map(|_| BooleanFunction::constant(params[0], true)),
        _ => Err(Error::InvalidParam(format!("unknown function family {name:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn majority_table() {
        let m = maj(3).unwrap();
        for idx in 0..8u32 {
            assert_eq!(m.eval_index(idx), idx.count_ones() >= 2);
        }
        assert!(maj(4).is_err());
    }

    #[test]
    fn nisan_weights() {
        let g = nisan(8).unwrap();
        for idx in 0..256u32 {
            assert_eq!(g.eval_index(idx), matches!(idx.count_ones(), 4 | 5));
        }
        assert!(nisan(6).is_err());
    }

    #[test]
    fn g4_listed_inputs() {
        let g = g4();
        assert_eq!(g.ones_count(), 4);
        assert!(g.evaluate(&[true, false, false, true]).unwrap());
        assert!(g.evaluate(&[false, false, false, true]).unwrap());
        assert!(g.evaluate(&[false, true, false, true]).unwrap());
        assert!(g.evaluate(&[false, true, true, false]).unwrap());
    }

    #[test]
    fn h4_listed_cells() {
        let h = h4();
        assert_eq!(h.ones_count(), 8);
        assert!(h.evaluate(&[false, true, false, true]).unwrap()); // (*,*,0,1)
        assert!(h.evaluate(&[true, true, true, true]).unwrap()); // (1,1,1,*)
        assert!(h.evaluate(&[true, false, false, false]).unwrap());
        assert!(h.evaluate(&[false, false, true, true]).unwrap());
        assert!(!h.evaluate(&[false, false, false, false]).unwrap());
    }

    #[test]
    fn address_selects_data_bit() {
        let a = address(2).unwrap();
        assert_eq!(a.arity(), 6);
        // address 2 -> data bit y_2, stored at input position 5
        let mut x = [false; 6];
        x[1] = true; // x2 = 1 => address = 2
        x[2 + 2] = true; // y_2
        assert!(a.evaluate(&x).unwrap());
        x[4] = false;
        assert!(!a.evaluate(&x).unwrap());
    }

    #[test]
    fn address7_branches() {
        let f = address7();
        // x5^x6^x7 = 1 -> x1 ^ x2
        assert!(f
            .evaluate(&[true, false, false, false, true, false, false])
            .unwrap());
        // x5^x6^x7 = 0 -> x3 ^ x4
        assert!(f
            .evaluate(&[false, false, true, false, false, false, false])
            .unwrap());
        assert!(!f
            .evaluate(&[true, true, false, false, true, false, false])
            .unwrap());
    }

    #[test]
    fn maj4_tie_break() {
        let m = maj4();
        assert!(m.evaluate(&[true, true, false, false]).unwrap()); // 2*1+1 = 3
        assert!(!m.evaluate(&[false, true, true, false]).unwrap()); // 2
        assert!(m.evaluate(&[false, true, true, true]).unwrap()); // 3
    }

    #[test]
    fn lookup_by_name() {
        assert_eq!(by_name("maj", &[3]).unwrap(), maj(3).unwrap());
        assert_eq!(by_name("TRIBES", &[2, 2]).unwrap(), tribes(2, 2).unwrap());
        assert!(by_name("MAJ", &[3, 1]).is_err());
        assert!(by_name("WAT", &[]).is_err());
    }
}
