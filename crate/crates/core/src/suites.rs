//! Cross-module invariant suites: hierarchies, characterizations,
//! composition laws, variance bounds, flow/packing agreement, and the
//! open-question probes. Each suite returns one outcome; probes report
//! findings instead of failing.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bf::BooleanFunction;
use crate::dtree;
use crate::local_witness;
use crate::measure::{output_probability, ProductMeasure};
use crate::partial_info;
use crate::percolation::{self, McQuantity, Multigraph};
use crate::pointwise;
use crate::scalar::{exact, format_exact, Exact};
use crate::subcube;
use crate::zoo;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SuiteLevel {
    Fast,
    Full,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SuiteStatus {
    Pass,
    Fail,
    /// Outcome of an open-question probe: informative, never a failure.
    Finding,
}

#[derive(Clone, Debug)]
pub struct SuiteOutcome {
    pub id: &'static str,
    pub status: SuiteStatus,
    pub detail: String,
    pub millis: u64,
}

fn check(id: &'static str, ok: bool, detail: String) -> SuiteOutcome {
    SuiteOutcome {
        id,
        status: if ok { SuiteStatus::Pass } else { SuiteStatus::Fail },
        detail,
        millis: 0,
    }
}

fn finding(id: &'static str, detail: String) -> SuiteOutcome {
    SuiteOutcome {
        id,
        status: SuiteStatus::Finding,
        detail,
        millis: 0,
    }
}

fn measure(num: i64, den: i64) -> ProductMeasure<Exact> {
    ProductMeasure::new(exact(num, den)).unwrap()
}

fn random_function(rng: &mut ChaCha8Rng, n: usize) -> BooleanFunction {
    BooleanFunction::from_indicator(n, |_| rng.gen::<bool>()).unwrap()
}

fn all_functions(n: usize) -> impl Iterator<Item = BooleanFunction> {
    let size = 1usize << n;
    (0u64..1 << size).map(move |t| {
        BooleanFunction::from_indicator(n, |idx| t >> idx & 1 == 1).unwrap()
    })
}

fn monotone_functions(n: usize) -> Vec<BooleanFunction> {
    all_functions(n).filter(|f| f.is_monotone()).collect()
}

fn is_dictator(f: &BooleanFunction) -> bool {
    (0..f.arity()).any(|i| {
        (0..f.table_len() as u32).all(|x| f.eval_index(x) == (x >> i & 1 == 1))
    })
}

fn is_parity_on_subset_or_complement(f: &BooleanFunction) -> bool {
    let n = f.arity();
    (0..1u32 << n).any(|s| {
        let direct = (0..f.table_len() as u32).all(|x| {
            f.eval_index(x) == ((x & s).count_ones() % 2 == 1)
        });
        let complement = (0..f.table_len() as u32).all(|x| {
            f.eval_index(x) != ((x & s).count_ones() % 2 == 1)
        });
        direct || complement
    })
}

/// Named functions with arity at most 4.
fn small_zoo() -> Vec<(&'static str, BooleanFunction)> {
    vec![
        ("AND2", zoo::and(2).unwrap()),
        ("AND3", zoo::and(3).unwrap()),
        ("AND4", zoo::and(4).unwrap()),
        ("OR2", zoo::or(2).unwrap()),
        ("OR3", zoo::or(3).unwrap()),
        ("PAR1", zoo::parity(1).unwrap()),
        ("PAR2", zoo::parity(2).unwrap()),
        ("PAR3", zoo::parity(3).unwrap()),
        ("PAR4", zoo::parity(4).unwrap()),
        ("MAJ3", zoo::maj(3).unwrap()),
        ("MAJ4", zoo::maj4()),
        ("AEQ3", zoo::all_equal3()),
        ("G4", zoo::g4()),
        ("H4", zoo::h4()),
        ("TRIBES22", zoo::tribes(2, 2).unwrap()),
        ("ADDRESS1", zoo::address(1).unwrap()),
        ("CONST0-2", BooleanFunction::constant(2, false)),
        ("CONST1-3", BooleanFunction::constant(3, true)),
    ]
}

/// Pairs for the composition laws, keyed by composed arity.
fn composition_pairs(max_arity: usize) -> Vec<(&'static str, BooleanFunction, BooleanFunction)> {
    let raw = vec![
        ("OR2.AND2", zoo::or(2).unwrap(), zoo::and(2).unwrap()),
        ("AND2.OR2", zoo::and(2).unwrap(), zoo::or(2).unwrap()),
        ("AND2.AND2", zoo::and(2).unwrap(), zoo::and(2).unwrap()),
        ("PAR2.PAR2", zoo::parity(2).unwrap(), zoo::parity(2).unwrap()),
        ("AND2.PAR2", zoo::and(2).unwrap(), zoo::parity(2).unwrap()),
        ("PAR2.AND2", zoo::parity(2).unwrap(), zoo::and(2).unwrap()),
        ("MAJ3.AND2", zoo::maj(3).unwrap(), zoo::and(2).unwrap()),
        ("AND2.MAJ3", zoo::and(2).unwrap(), zoo::maj(3).unwrap()),
        ("PAR2.MAJ3", zoo::parity(2).unwrap(), zoo::maj(3).unwrap()),
        ("MAJ3.PAR2", zoo::maj(3).unwrap(), zoo::parity(2).unwrap()),
        ("AND3.PAR2", zoo::and(3).unwrap(), zoo::parity(2).unwrap()),
        ("AEQ3.PAR2", zoo::all_equal3(), zoo::parity(2).unwrap()),
        ("ADDRESS1.PAR2", zoo::address(1).unwrap(), zoo::parity(2).unwrap()),
        ("MAJ3.MAJ3", zoo::maj(3).unwrap(), zoo::maj(3).unwrap()),
        ("MAJ4.MAJ3", zoo::maj4(), zoo::maj(3).unwrap()),
        ("ADDRESS2.PAR2", zoo::address(2).unwrap(), zoo::parity(2).unwrap()),
    ];
    raw.into_iter()
        .filter(|(_, f, g)| f.arity() * g.arity() <= max_arity)
        .collect()
}

fn dist_chain_holds(f: &BooleanFunction, m: &ProductMeasure<Exact>) -> bool {
    let d = pointwise::distributional_measures::<Exact>(f, m);
    d.sensitivity <= d.block_sensitivity && d.block_sensitivity <= d.witness
}

// --------------------------------------------------------------------------
// core
// --------------------------------------------------------------------------

fn moebius_round_trip(rng: &mut ChaCha8Rng, level: SuiteLevel) -> SuiteOutcome {
    let reconstructs = |f: &BooleanFunction| -> bool {
        let c = f.moebius_coefficients();
        (0..f.table_len() as u32).all(|x| {
            let mut acc = 0i64;
            let mut s = x;
            loop {
                acc += c[s as usize];
                if s == 0 {
                    break;
                }
                s = (s - 1) & x;
            }
            (acc == 1) == f.eval_index(x) && (acc == 0 || acc == 1)
        })
    };
    let mut ok = true;
    for n in 0..=4 {
        ok &= all_functions(n.min(3)).all(|f| reconstructs(&f));
    }
    let samples = if level == SuiteLevel::Full { 1000 } else { 200 };
    for _ in 0..samples {
        let n = rng.gen_range(1..=10);
        ok &= reconstructs(&random_function(rng, n));
    }
    check(
        "core/moebius-round-trip",
        ok,
        format!("exhaustive n<=3 plus {samples} random functions up to n=10"),
    )
}

fn composition_output_probability() -> SuiteOutcome {
    let mut ok = true;
    for (_, f, g) in composition_pairs(12) {
        for (pn, pd) in [(1i64, 2i64), (1, 3)] {
            let m = measure(pn, pd);
            let fg = f.compose(&g).unwrap();
            let inner = output_probability(&g, &m);
            let lifted = ProductMeasure::new(inner).unwrap();
            ok &= output_probability(&fg, &m) == output_probability(&f, &lifted);
        }
    }
    check(
        "core/composition-output-probability",
        ok,
        "g(p) chain rule on all listed pairs at p in {1/2, 1/3}".into(),
    )
}

fn xor_parity_balance(rng: &mut ChaCha8Rng) -> SuiteOutcome {
    let half = measure(1, 2);
    let mut ok = true;
    for f in [zoo::all_equal3(), zoo::and(3).unwrap(), zoo::g4()] {
        for k in 1..=2 {
            let x = f.xor_parity(k).unwrap();
            ok &= output_probability(&x, &half) == exact(1, 2);
        }
    }
    for _ in 0..20 {
        let f = random_function(rng, 4);
        ok &= output_probability(&f.xor_parity(1).unwrap(), &half) == exact(1, 2);
    }
    check(
        "core/xor-parity-balance",
        ok,
        "every 1-bit extension is balanced at p = 1/2".into(),
    )
}

fn restrict_merge_identity() -> SuiteOutcome {
    let mut ok = true;
    for f in [zoo::maj4(), zoo::h4(), zoo::all_equal3()] {
        let n = f.arity();
        for assigned in 0..1u32 << n {
            let mut values = 0u32;
            loop {
                let r = crate::bf::Restriction { assigned, values };
                let sub = f.restrict(r);
                for free in 0..1u32 << (n - assigned.count_ones() as usize) {
                    ok &= sub.eval_index(free) == f.eval_index(r.merge(n, free));
                }
                values = values.wrapping_sub(assigned) & assigned;
                if values == 0 {
                    break;
                }
            }
        }
    }
    check(
        "core/restrict-merge-identity",
        ok,
        "restrict agrees with evaluating the merged input, exhaustively on 3 functions".into(),
    )
}

// --------------------------------------------------------------------------
// pointwise
// --------------------------------------------------------------------------

fn pointwise_chain(rng: &mut ChaCha8Rng, level: SuiteLevel) -> SuiteOutcome {
    let chain_at = |f: &BooleanFunction| {
        (0..f.table_len() as u32).all(|x| {
            let s = pointwise::sensitivity_at(f, x);
            let b = pointwise::block_sensitivity_at(f, x);
            let w = pointwise::witness_size_at(f, x);
            s <= b && b <= w
        })
    };
    let mut ok = (0..=3).all(|n| all_functions(n).all(|f| chain_at(&f)));
    let mut scope = String::from("exhaustive n<=3");
    if level == SuiteLevel::Full {
        ok &= all_functions(4).all(|f| chain_at(&f));
        scope = String::from("exhaustive n<=4");
    }
    let samples = if level == SuiteLevel::Full { 60 } else { 20 };
    for _ in 0..samples {
        let n = rng.gen_range(5..=10);
        ok &= chain_at(&random_function(rng, n));
    }
    check(
        "pointwise/chain",
        ok,
        format!("s <= b <= w pointwise; {scope} plus {samples} random functions up to n=10"),
    )
}

fn distributional_chain() -> SuiteOutcome {
    let mut ok = true;
    for (_, f) in small_zoo() {
        for (pn, pd) in [(1i64, 2i64), (1, 3)] {
            ok &= dist_chain_holds(&f, &measure(pn, pd));
        }
    }
    check(
        "pointwise/distributional-chain",
        ok,
        "s <= b <= w in expectation over the zoo at p in {1/2, 1/3}".into(),
    )
}

fn parity_characterization() -> SuiteOutcome {
    let m = measure(1, 3);
    let mut ok = true;
    for f in all_functions(3) {
        let d = pointwise::distributional_measures::<Exact>(&f, &m);
        let equal = d.sensitivity == d.block_sensitivity;
        ok &= equal == is_parity_on_subset_or_complement(&f);
    }
    check(
        "pointwise/parity-characterization",
        ok,
        "s = b at p = 1/3 exactly for (anti-)parities, all 256 functions on 3 bits".into(),
    )
}

fn monotone_deterministic_equality() -> SuiteOutcome {
    let mut ok = true;
    for n in 1..=4 {
        for f in monotone_functions(n) {
            let d = pointwise::deterministic_measures(&f);
            ok &= d.witness == d.block_sensitivity && d.block_sensitivity == d.sensitivity;
        }
    }
    check(
        "pointwise/monotone-deterministic-equality",
        ok,
        "w_D = b_D = s_D for every monotone function with n <= 4".into(),
    )
}

// --------------------------------------------------------------------------
// decision trees
// --------------------------------------------------------------------------

fn cost_hierarchy() -> SuiteOutcome {
    let mut ok = true;
    let mut detail = String::new();
    for (name, f) in small_zoo() {
        for (pn, pd) in [(1i64, 2i64), (1, 3)] {
            let m = measure(pn, pd);
            let a = dtree::dist_cost(&f, &m).unwrap();
            let sc = subcube::sc_dist(&f, &m).unwrap();
            let l = local_witness::local_witness_complexity(&f, &m).unwrap();
            let w = pointwise::distributional_measures::<Exact>(&f, &m).witness;
            let good = a >= sc && sc >= l && l >= w;
            if !good {
                detail.push_str(&format!("{name} at {pn}/{pd} breaks the chain; "));
            }
            ok &= good;
        }
    }
    if detail.is_empty() {
        detail = "a >= sc >= l >= w over the zoo at p in {1/2, 1/3}".into();
    }
    check("dtree/cost-hierarchy", ok, detail)
}

fn deterministic_composition() -> SuiteOutcome {
    let mut ok = true;
    for (name, f, g) in composition_pairs(12) {
        let fg = f.compose(&g).unwrap();
        let lhs = dtree::det_depth(&fg).unwrap();
        let rhs = dtree::det_depth(&f).unwrap() * dtree::det_depth(&g).unwrap();
        if lhs != rhs {
            return check(
                "dtree/deterministic-composition",
                false,
                format!("{name}: depth {lhs} vs product {rhs}"),
            );
        }
        ok &= lhs == rhs;
    }
    check(
        "dtree/deterministic-composition",
        ok,
        "optimal depth is multiplicative on all listed pairs".into(),
    )
}

fn distributional_composition_bound() -> SuiteOutcome {
    let mut ok = true;
    for (_, f, g) in composition_pairs(9) {
        for (pn, pd) in [(1i64, 2i64), (1, 3)] {
            let m = measure(pn, pd);
            let fg = f.compose(&g).unwrap();
            let lifted = ProductMeasure::new(output_probability(&g, &m)).unwrap();
            let lhs = dtree::dist_cost(&fg, &m).unwrap();
            let rhs = dtree::dist_cost(&f, &lifted).unwrap() * dtree::dist_cost(&g, &m).unwrap();
            ok &= lhs <= rhs;
        }
    }
    check(
        "dtree/distributional-composition-bound",
        ok,
        "a(f.g, p) <= a(f, g(p)) a(g, p) on pairs up to 9 bits".into(),
    )
}

fn sensitivity_composition() -> SuiteOutcome {
    let mut ok = true;
    for (_, f, g) in composition_pairs(12) {
        for (pn, pd) in [(1i64, 2i64), (1, 3)] {
            let m = measure(pn, pd);
            let fg = f.compose(&g).unwrap();
            let lifted = ProductMeasure::new(output_probability(&g, &m)).unwrap();
            let s_fg = pointwise::distributional_measures::<Exact>(&fg, &m).sensitivity;
            let s_f = pointwise::distributional_measures::<Exact>(&f, &lifted).sensitivity;
            let s_g = pointwise::distributional_measures::<Exact>(&g, &m).sensitivity;
            ok &= s_fg == s_f.clone() * s_g;
            if fg.arity() <= 8 {
                // block sensitivity lower bound s(f, g(p)) * b(g, p)
                let b_fg = pointwise::distributional_measures::<Exact>(&fg, &m).block_sensitivity;
                let b_g = pointwise::distributional_measures::<Exact>(&g, &m).block_sensitivity;
                ok &= b_fg >= s_f * b_g;
            }
        }
    }
    check(
        "dtree/sensitivity-composition",
        ok,
        "s is exactly multiplicative; b(f.g) >= s(f, g(p)) b(g, p) up to 8 bits".into(),
    )
}

fn iterated_majority_strictness() -> SuiteOutcome {
    let half = measure(1, 2);
    let squared = zoo::maj(3).unwrap().iterate(2).unwrap();
    let a = dtree::dist_cost(&squared, &half).unwrap();
    let ok = a >= exact(81, 16) && a < exact(25, 4);
    check(
        "dtree/iterated-majority-strictness",
        ok,
        format!("a(MAJ3.MAJ3, 1/2) = {} inside [81/16, 25/4)", format_exact(&a)),
    )
}

fn osss_sweep(rng: &mut ChaCha8Rng, level: SuiteLevel) -> SuiteOutcome {
    let mut ok = true;
    for (pn, pd) in [(1i64, 2i64), (1, 3)] {
        let m = measure(pn, pd);
        for n in 0..=3 {
            for f in all_functions(n) {
                let t = dtree::extract_tree(&f, &m).unwrap();
                ok &= dtree::osss_check(&f, &m, &t).unwrap().holds;
            }
        }
        let samples = if level == SuiteLevel::Full { 500 } else { 100 };
        for _ in 0..samples {
            let f = random_function(rng, 4);
            let t = dtree::extract_tree(&f, &m).unwrap();
            ok &= dtree::osss_check(&f, &m, &t).unwrap().holds;
        }
    }
    check(
        "dtree/osss-sweep",
        ok,
        "variance bound for optimal trees: exhaustive n<=3, sampled n=4, p in {1/2, 1/3}".into(),
    )
}

// --------------------------------------------------------------------------
// subcube
// --------------------------------------------------------------------------

fn gamma_identity() -> SuiteOutcome {
    let half = measure(1, 2);
    let mut ok = true;
    for f in all_functions(3) {
        if f.is_constant().is_some() {
            continue;
        }
        let sc = subcube::sc_dist(&f, &half).unwrap();
        let s = pointwise::distributional_measures::<Exact>(&f, &half).sensitivity;
        let min_b = subcube::min_refining_boundary(&f).unwrap();
        let eb = f.edge_boundary();
        // sc / s  ==  min_b / eb, cross-multiplied
        ok &= sc * exact(eb as i64, 1) == exact(min_b as i64, 1) * s;
    }
    check(
        "subcube/gamma-identity",
        ok,
        "sc/s equals the minimum refining boundary ratio on all nonconstant 3-bit functions"
            .into(),
    )
}

fn dictator_characterization() -> SuiteOutcome {
    let half = measure(1, 2);
    let mut ok = true;
    for n in 1..=4 {
        for f in monotone_functions(n) {
            if f.is_constant().is_some() {
                continue;
            }
            let sc = subcube::sc_dist(&f, &half).unwrap();
            let w = pointwise::distributional_measures::<Exact>(&f, &half).witness;
            ok &= (sc == w) == is_dictator(&f);
        }
    }
    check(
        "subcube/dictator-characterization",
        ok,
        "sc = w at 1/2 exactly for dictators among monotone nonconstant f, n <= 4".into(),
    )
}

fn and_closure() -> SuiteOutcome {
    let mut ok = true;
    for n in 1..=5usize {
        for (pn, pd) in [(1i64, 4i64), (1, 2)] {
            let m = measure(pn, pd);
            let f = zoo::and(n).unwrap();
            ok &= subcube::sc_dist(&f, &m).unwrap() == dtree::dist_cost(&f, &m).unwrap();
        }
    }
    check(
        "subcube/and-closure",
        ok,
        "sc(AND_n, p) = a(AND_n, p) for n <= 5 at p in {1/4, 1/2}".into(),
    )
}

fn odonnell_servedio() -> SuiteOutcome {
    let mut ok = true;
    for n in 1..=4 {
        for f in monotone_functions(n) {
            for (pn, pd) in [(1i64, 2i64), (1, 3)] {
                let m = measure(pn, pd);
                let s = pointwise::distributional_measures::<Exact>(&f, &m).sensitivity;
                let four_pq = exact(4, 1) * m.p().clone() * m.q().clone();
                let rhs = four_pq * s.clone() * s;
                ok &= subcube::sc_dist(&f, &m).unwrap() >= rhs;
                ok &= local_witness::local_witness_complexity(&f, &m).unwrap() >= rhs;
            }
        }
    }
    check(
        "subcube/odonnell-servedio",
        ok,
        "sc and l dominate 4p(1-p) s^2 for monotone f, n <= 4, p in {1/2, 1/3}".into(),
    )
}

fn subcube_composition_bound() -> SuiteOutcome {
    let mut ok = true;
    for (_, f, g) in composition_pairs(6) {
        for (pn, pd) in [(1i64, 2i64), (1, 3)] {
            let m = measure(pn, pd);
            let fg = f.compose(&g).unwrap();
            let lifted = ProductMeasure::new(output_probability(&g, &m)).unwrap();
            let lhs = subcube::sc_dist(&fg, &m).unwrap();
            let rhs =
                subcube::sc_dist(&f, &lifted).unwrap() * subcube::sc_dist(&g, &m).unwrap();
            ok &= lhs <= rhs;
        }
    }
    check(
        "subcube/composition-bound",
        ok,
        "sc(f.g, p) <= sc(f, g(p)) sc(g, p) on pairs up to 6 bits".into(),
    )
}

fn monotone_cost_question() -> SuiteOutcome {
    let half = measure(1, 2);
    for n in 1..=4 {
        for f in monotone_functions(n) {
            if f.is_constant().is_some() {
                continue;
            }
            let a = dtree::dist_cost(&f, &half).unwrap();
            let sc = subcube::sc_dist(&f, &half).unwrap();
            if a != sc {
                // a genuine counterexample would be a research finding;
                // fail loudly with the witness
                return check(
                    "subcube/monotone-cost-question",
                    false,
                    format!(
                        "monotone counterexample: table {:?} has a = {}, sc = {}",
                        f,
                        format_exact(&a),
                        format_exact(&sc)
                    ),
                );
            }
        }
    }
    check(
        "subcube/monotone-cost-question",
        true,
        "a = sc at 1/2 for every monotone nonconstant f with n <= 4".into(),
    )
}

// --------------------------------------------------------------------------
// local witness
// --------------------------------------------------------------------------

fn local_witness_sandwich(rng: &mut ChaCha8Rng, level: SuiteLevel) -> SuiteOutcome {
    let mut ok = true;
    for (pn, pd) in [(1i64, 2i64), (1, 3)] {
        let m = measure(pn, pd);
        for n in 0..=3 {
            for f in all_functions(n) {
                let l = local_witness::local_witness_complexity(&f, &m).unwrap();
                let w = pointwise::distributional_measures::<Exact>(&f, &m).witness;
                let sc = subcube::sc_dist(&f, &m).unwrap();
                ok &= w <= l && l <= sc;
            }
        }
        let n4: Vec<BooleanFunction> = if level == SuiteLevel::Full {
            let mut v = monotone_functions(4);
            for _ in 0..100 {
                v.push(random_function(rng, 4));
            }
            v
        } else {
            (0..20).map(|_| random_function(rng, 4)).collect()
        };
        for f in n4 {
            let l = local_witness::local_witness_complexity(&f, &m).unwrap();
            let w = pointwise::distributional_measures::<Exact>(&f, &m).witness;
            let sc = subcube::sc_dist(&f, &m).unwrap();
            ok &= w <= l && l <= sc;
        }
    }
    check(
        "localwit/sandwich",
        ok,
        "w <= l <= sc: exhaustive n<=3 plus n=4 sweeps at p in {1/2, 1/3}".into(),
    )
}

fn local_witness_composition() -> SuiteOutcome {
    let mut ok = true;
    for (_, f, g) in composition_pairs(4) {
        for (pn, pd) in [(1i64, 2i64), (1, 3)] {
            let m = measure(pn, pd);
            let fg = f.compose(&g).unwrap();
            let lifted = ProductMeasure::new(output_probability(&g, &m)).unwrap();
            let lhs = local_witness::local_witness_complexity(&fg, &m).unwrap();
            let rhs = local_witness::local_witness_complexity(&f, &lifted).unwrap()
                * local_witness::local_witness_complexity(&g, &m).unwrap();
            ok &= lhs <= rhs;
        }
    }
    check(
        "localwit/composition-bound",
        ok,
        "l(f.g, p) <= l(f, g(p)) l(g, p) on pairs up to 4 bits".into(),
    )
}

fn local_witness_separation() -> SuiteOutcome {
    let half = measure(1, 2);
    let l = local_witness::local_witness_complexity(&zoo::g4(), &half).unwrap();
    let sc = subcube::sc_dist(&zoo::g4(), &half).unwrap();
    check(
        "localwit/strict-separation",
        l == exact(21, 8) && sc == exact(11, 4) && l < sc,
        format!("l = {} < sc = {}", format_exact(&l), format_exact(&sc)),
    )
}

fn local_witness_duality() -> SuiteOutcome {
    let mut ok = true;
    for (_, f) in small_zoo() {
        let m = measure(1, 3);
        let prog = local_witness::build_program(&f, &m).unwrap();
        let sol = local_witness::solve(&prog);
        // solve() re-checks everything; confirm the reported pieces agree
        let by: Exact = sol
            .dual
            .iter()
            .enumerate()
            .fold(Exact::zero(), |acc, (i, y)| {
                acc + m.index_probability(f.arity(), i as u32) * y.clone()
            });
        ok &= by == sol.value && sol.basis.len() == prog.constraint_count();
    }
    check(
        "localwit/strong-duality",
        ok,
        "dual certificate value equals the primal optimum over the zoo at p = 1/3".into(),
    )
}

fn local_witness_mixture_locality() -> SuiteOutcome {
    // the fair mixture of the two set maps factorizes exactly:
    // counts of (coin, x) with I = J and fixed values on J are constant
    // over the completions outside J
    use std::collections::HashMap;
    let mut counts: HashMap<(u32, u32), HashMap<u32, u32>> = HashMap::new();
    for x in 0..16u32 {
        for coin in [false, true] {
            let set = local_witness::g4_witness_family(coin, x);
            *counts
                .entry((set, x & set))
                .or_default()
                .entry(x & !set)
                .or_insert(0) += 1;
        }
    }
    let mut ok = true;
    for ((set, _), completions) in counts {
        let expected = 1u32 << (4 - set.count_ones());
        let total: u32 = completions.values().sum();
        ok &= completions.len() as u32 == expected;
        ok &= completions.values().all(|&c| c * expected == total);
    }
    check(
        "localwit/mixture-locality",
        ok,
        "the fair mixture of the two set maps is a local witness family".into(),
    )
}

fn local_witness_dictator_probe(level: SuiteLevel) -> SuiteOutcome {
    let half = measure(1, 2);
    let top = if level == SuiteLevel::Full { 4 } else { 3 };
    let mut equality_iff_dictator = true;
    let mut example = String::new();
    for n in 1..=top {
        for f in monotone_functions(n) {
            if f.is_constant().is_some() {
                continue;
            }
            let l = local_witness::local_witness_complexity(&f, &half).unwrap();
            let w = pointwise::distributional_measures::<Exact>(&f, &half).witness;
            if (l == w) != is_dictator(&f) {
                equality_iff_dictator = false;
                example = format!(
                    " (e.g. {:?} with l = {}, w = {})",
                    f,
                    format_exact(&l),
                    format_exact(&w)
                );
            }
        }
    }
    finding(
        "localwit/dictator-probe",
        format!(
            "does l = w characterize dictators among monotone f, n <= {top}? observed: {}{}",
            equality_iff_dictator, example
        ),
    )
}

// --------------------------------------------------------------------------
// partial information
// --------------------------------------------------------------------------

fn kappa_threshold_bound() -> SuiteOutcome {
    let half = measure(1, 2);
    let mut ok = true;
    for n in [2usize, 3] {
        for (pn, pd) in [(2i64, 3i64), (3, 4)] {
            let p = exact(pn, pd);
            let kappa = partial_info::kappa0_bound(n, &p).unwrap() + exact(1, 1000);
            for f in all_functions(n) {
                let classical = dtree::dist_cost(&f, &half).unwrap();
                let v = partial_info::pk_cost(&f, &p, &kappa).unwrap();
                ok &= v == classical;
                let line = partial_info::pk_strategy_line(&f, &p, &kappa).unwrap();
                ok &= line.partial.is_zero();
            }
        }
    }
    check(
        "partialinfo/threshold-bound",
        ok,
        "above the closed-form threshold the cost is classical and no coarse answers remain \
         (all f, n in {2,3}, p in {2/3, 3/4})"
            .into(),
    )
}

fn kappa_one_classical() -> SuiteOutcome {
    let half = measure(1, 2);
    let p = exact(3, 4);
    let mut ok = true;
    for n in 0..=3 {
        for f in all_functions(n) {
            ok &= partial_info::pk_cost(&f, &p, &Exact::one()).unwrap()
                == dtree::dist_cost(&f, &half).unwrap();
        }
    }
    check(
        "partialinfo/kappa-one-classical",
        ok,
        "cost at kappa = 1 equals the classical optimum for every f with n <= 3".into(),
    )
}

fn kappa_monotonicity() -> SuiteOutcome {
    let half = measure(1, 2);
    let grid: Vec<Exact> = (0..=8).map(|k| exact(k, 8)).collect();
    let zoo3 = [
        zoo::and(2).unwrap(),
        zoo::or(2).unwrap(),
        zoo::maj(3).unwrap(),
        zoo::all_equal3(),
        zoo::parity(3).unwrap(),
        zoo::address7(),
    ];
    let mut ok = true;
    for f in &zoo3 {
        let p = exact(3, 4);
        let mut last: Option<Exact> = None;
        for kappa in &grid {
            let v = partial_info::pk_cost(f, &p, kappa).unwrap();
            if let Some(prev) = last {
                ok &= prev <= v;
            }
            last = Some(v);
        }
    }
    // implication grid: reaching the classical cost is inherited by
    // smaller p and larger kappa
    for f in &zoo3 {
        if f.arity() > 4 {
            continue;
        }
        let classical = dtree::dist_cost(f, &half).unwrap();
        for (kn, kd) in [(1i64, 4i64), (1, 2), (3, 4)] {
            let kappa = exact(kn, kd);
            let hit_at_34 =
                partial_info::pk_cost(f, &exact(3, 4), &kappa).unwrap() == classical;
            if hit_at_34 {
                ok &= partial_info::pk_cost(f, &exact(2, 3), &kappa).unwrap() == classical;
                ok &= partial_info::pk_cost(f, &exact(3, 4), &exact(kn + kd, kd * 2).max(kappa.clone()))
                    .unwrap()
                    == classical;
            }
        }
    }
    check(
        "partialinfo/monotonicity",
        ok,
        "cost nondecreasing in kappa; classical cost inherited at smaller p / larger kappa"
            .into(),
    )
}

fn partial_cost_sandwich() -> SuiteOutcome {
    let half = measure(1, 2);
    let mut ok = true;
    for (_, f) in small_zoo() {
        let w = pointwise::distributional_measures::<Exact>(&f, &half).witness;
        let a = dtree::dist_cost(&f, &half).unwrap();
        for (pn, pd) in [(2i64, 3i64), (3, 4), (9, 10)] {
            for (kn, kd) in [(0i64, 1i64), (1, 4), (1, 2), (1, 1)] {
                let v = partial_info::pk_cost(&f, &exact(pn, pd), &exact(kn, kd)).unwrap();
                ok &= w <= v && v <= a;
            }
        }
    }
    check(
        "partialinfo/cost-sandwich",
        ok,
        "w <= partial-information cost <= a over the zoo and a (p, kappa) grid".into(),
    )
}

fn kappa_concavity() -> SuiteOutcome {
    let mut ok = true;
    let p = exact(3, 4);
    for f in [
        zoo::and(2).unwrap(),
        zoo::maj(3).unwrap(),
        zoo::all_equal3(),
        zoo::address7(),
    ] {
        let grid: Vec<Exact> = (0..=4).map(|k| exact(k, 4)).collect();
        for window in grid.windows(3) {
            let (a, b, c) = (&window[0], &window[1], &window[2]);
            let va = partial_info::pk_cost(&f, &p, a).unwrap();
            let vb = partial_info::pk_cost(&f, &p, b).unwrap();
            let vc = partial_info::pk_cost(&f, &p, c).unwrap();
            // midpoint concavity: 2 v(b) >= v(a) + v(c) for b = (a+c)/2
            ok &= exact(2, 1) * vb >= va + vc;
        }
    }
    check(
        "partialinfo/concavity",
        ok,
        "midpoint concavity of the cost in kappa on an exact grid".into(),
    )
}

fn kappa_critical_probe() -> SuiteOutcome {
    let p = exact(3, 4);
    let two_p_minus_1 = exact(1, 2);
    // permutation-invariant functions on 3 bits: one value per weight
    let mut sup_symmetric = Exact::zero();
    for profile in 0..16u32 {
        let f = BooleanFunction::from_indicator(3, |x| profile >> x.count_ones() & 1 == 1)
            .unwrap();
        let kc = partial_info::kappa_critical(&f, &p).unwrap();
        if kc > sup_symmetric {
            sup_symmetric = kc;
        }
    }
    let mut sup_all = Exact::zero();
    for f in all_functions(3) {
        let kc = partial_info::kappa_critical(&f, &p).unwrap();
        if kc > sup_all {
            sup_all = kc;
        }
    }
    finding(
        "partialinfo/critical-sup-probe",
        format!(
            "at p = 3/4: sup kappa_c = {} over permutation-invariant f (n = 3), {} over all f \
             (n = 3); compare 2p - 1 = {}",
            format_exact(&sup_symmetric),
            format_exact(&sup_all),
            format_exact(&two_p_minus_1)
        ),
    )
}

// --------------------------------------------------------------------------
// percolation
// --------------------------------------------------------------------------

fn random_multigraph(rng: &mut ChaCha8Rng) -> Multigraph {
    let v = rng.gen_range(2..=6);
    let e = rng.gen_range(1..=10);
    let edges = (0..e)
        .map(|_| (rng.gen_range(0..v), rng.gen_range(0..v)))
        .collect();
    // disjoint nonempty terminal sets
    let a_size = rng.gen_range(1..v);
    let b_size = rng.gen_range(1..=(v - a_size));
    let side_a = (0..a_size).collect();
    let side_b = (v - b_size..v).collect();
    Multigraph::new(v, edges, side_a, side_b).unwrap()
}

fn menger_agreement(rng: &mut ChaCha8Rng) -> SuiteOutcome {
    let mut ok = true;
    let mut graphs = vec![percolation::grid_graph(1)];
    for _ in 0..20 {
        graphs.push(random_multigraph(rng));
    }
    for g in &graphs {
        let f = percolation::perc_function(g).unwrap();
        for idx in 0..f.table_len() as u32 {
            let omega: Vec<bool> = (0..g.edge_count()).map(|i| idx >> i & 1 == 1).collect();
            let w = percolation::witness_at(g, &omega).unwrap();
            ok &= w == pointwise::block_sensitivity_at(&f, idx);
            ok &= w == pointwise::witness_size_at(&f, idx);
            ok &= percolation::pivotal_count(g, &omega).unwrap()
                == pointwise::sensitivity_at(&f, idx);
        }
    }
    check(
        "percolation/menger-agreement",
        ok,
        "path/cut witness equals block sensitivity (and pivotal count equals sensitivity) on \
         every configuration of the small grid and 20 seeded multigraphs"
            .into(),
    )
}

fn percolation_strict_chain() -> SuiteOutcome {
    let mut ok = true;
    let mut detail = String::new();
    let grid1 = percolation::perc_function(&percolation::grid_graph(1)).unwrap();
    let and_or = zoo::and(2).unwrap().compose(&zoo::or(2).unwrap()).unwrap();
    let tribes = zoo::tribes(2, 2).unwrap();
    for (name, f) in [("AND2.OR2", &and_or), ("TRIBES22", &tribes), ("grid1", &grid1)] {
        for (pn, pd) in [(1i64, 3i64), (1, 2)] {
            let m = measure(pn, pd);
            let d = pointwise::distributional_measures::<Exact>(f, &m);
            let sc = subcube::sc_dist_with_cap(f, &m, 7).unwrap();
            let good = sc > d.witness
                && d.witness == d.block_sensitivity
                && d.block_sensitivity > d.sensitivity;
            if !good {
                detail.push_str(&format!("{name} at {pn}/{pd} fails; "));
            }
            ok &= good;
        }
    }
    if detail.is_empty() {
        detail = "sc > w = b > s at p in {1/3, 1/2} for three percolation functions".into();
    }
    check("percolation/strict-chain", ok, detail)
}

fn percolation_witness_floor(level: SuiteLevel) -> SuiteOutcome {
    let samples = if level == SuiteLevel::Full { 2000 } else { 500 };
    let mut ok = true;
    let mut detail = String::new();
    for m in 2..=5usize {
        let g = percolation::grid_graph(m);
        let min =
            percolation::mc_minimum(&g, 0.5, McQuantity::Witness, samples, 23).unwrap();
        detail.push_str(&format!("m={m}: min {min}; "));
        ok &= min as usize >= m + 1;
    }
    check(
        "percolation/witness-floor",
        ok,
        format!("sampled witnesses never fall below m+1 ({samples} samples per grid): {detail}"),
    )
}

fn percolation_determinism() -> SuiteOutcome {
    let g = percolation::grid_graph(2);
    let one = percolation::mc_estimate_sharded(&g, 0.4, McQuantity::Crossing, 2000, 9, 1).unwrap();
    let four = percolation::mc_estimate_sharded(&g, 0.4, McQuantity::Crossing, 2000, 9, 4).unwrap();
    let again = percolation::mc_estimate_sharded(&g, 0.4, McQuantity::Crossing, 2000, 9, 1).unwrap();
    let other = percolation::mc_estimate(&g, 0.4, McQuantity::Crossing, 2000, 10).unwrap();
    let ok = one == four && one == again && one.mean != other.mean;
    check(
        "percolation/seed-and-shard-determinism",
        ok,
        format!("1 vs 4 shards: {} vs {}", one.mean, four.mean),
    )
}

fn ratio_growth() -> SuiteOutcome {
    let half = measure(1, 2);
    let mut ok = true;
    let mut detail = String::new();

    // local witness over plain witness for iterated 3-majority: exact at
    // one level, the squared-sensitivity lower bound one level up
    let maj3 = zoo::maj(3).unwrap();
    let r1 = local_witness::local_witness_complexity(&maj3, &half).unwrap() / exact(2, 1);
    let squared = maj3.iterate(2).unwrap();
    let s9 = pointwise::distributional_measures::<Exact>(&squared, &half).sensitivity;
    let w9 = pointwise::distributional_measures::<Exact>(&squared, &half).witness;
    let r2 = s9.clone() * s9 / w9;
    ok &= r2 > r1;
    detail.push_str(&format!(
        "l/w chain: {} then at least {}; ",
        format_exact(&r1),
        format_exact(&r2)
    ));

    // witness over block sensitivity for majorities
    let mut last: Option<Exact> = None;
    for n in [3usize, 5, 7, 9] {
        let f = zoo::maj(n).unwrap();
        let d = pointwise::distributional_measures::<Exact>(&f, &half);
        let ratio = d.witness / d.block_sensitivity;
        if let Some(prev) = &last {
            ok &= ratio > *prev;
        }
        last = Some(ratio);
    }
    detail.push_str(&format!(
        "w/b grows along odd majorities up to 9 (last {}); ",
        format_exact(last.as_ref().unwrap())
    ));

    // block sensitivity over sensitivity for widening tribes
    let t1 = pointwise::distributional_measures::<Exact>(&zoo::tribes(2, 1).unwrap(), &half);
    let t2 = pointwise::distributional_measures::<Exact>(&zoo::tribes(4, 2).unwrap(), &half);
    let g1 = t1.block_sensitivity / t1.sensitivity;
    let g2 = t2.block_sensitivity / t2.sensitivity;
    ok &= g2 > g1;
    detail.push_str(&format!(
        "b/s for tribes: {} then {}",
        format_exact(&g1),
        format_exact(&g2)
    ));

    check("percolation/ratio-growth", ok, detail)
}

// --------------------------------------------------------------------------
// polynomial relations
// --------------------------------------------------------------------------

fn polynomial_relations(level: SuiteLevel) -> SuiteOutcome {
    let relations = |f: &BooleanFunction| -> bool {
        let d = pointwise::deterministic_measures(f);
        let depth = dtree::det_depth(f).unwrap();
        let deg = f.degree();
        if f.is_constant().is_some() {
            return depth == 0 && deg == 0 && d.witness == 0;
        }
        depth <= d.witness * d.block_sensitivity
            && d.witness <= d.block_sensitivity * d.sensitivity
            && d.block_sensitivity <= deg * deg
            && deg <= d.sensitivity * d.sensitivity
    };
    let mut ok = true;
    for n in 0..=3 {
        ok &= all_functions(n).all(|f| relations(&f));
    }
    let mut scope = "exhaustive n<=3".to_string();
    if level == SuiteLevel::Full {
        ok &= all_functions(4).all(|f| relations(&f));
        scope = "exhaustive n<=4".to_string();
    }
    for (_, f) in small_zoo() {
        ok &= relations(&f);
    }
    check(
        "relations/deterministic-polynomial",
        ok,
        format!("a_D <= w_D b_D, w_D <= b_D s_D, b_D <= deg^2, deg <= s_D^2; {scope} plus zoo"),
    )
}

/// Runs every suite at the given level. `seed` drives all sampled parts.
pub fn run_invariant_suites(seed: u64, level: SuiteLevel) -> Vec<SuiteOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut run = |outcome_fn: &mut dyn FnMut(&mut ChaCha8Rng) -> SuiteOutcome,
                   rng: &mut ChaCha8Rng| {
        let start = std::time::Instant::now();
        let mut outcome = outcome_fn(rng);
        outcome.millis = start.elapsed().as_millis() as u64;
        out.push(outcome);
    };
    run(&mut |r| moebius_round_trip(r, level), &mut rng);
    run(&mut |_| composition_output_probability(), &mut rng);
    run(&mut xor_parity_balance, &mut rng);
    run(&mut |_| restrict_merge_identity(), &mut rng);
    run(&mut |r| pointwise_chain(r, level), &mut rng);
    run(&mut |_| distributional_chain(), &mut rng);
    run(&mut |_| parity_characterization(), &mut rng);
    run(&mut |_| monotone_deterministic_equality(), &mut rng);
    run(&mut |_| cost_hierarchy(), &mut rng);
    run(&mut |_| deterministic_composition(), &mut rng);
    run(&mut |_| distributional_composition_bound(), &mut rng);
    run(&mut |_| sensitivity_composition(), &mut rng);
    run(&mut |_| iterated_majority_strictness(), &mut rng);
    run(&mut |r| osss_sweep(r, level), &mut rng);
    run(&mut |_| gamma_identity(), &mut rng);
    run(&mut |_| dictator_characterization(), &mut rng);
    run(&mut |_| and_closure(), &mut rng);
    run(&mut |_| odonnell_servedio(), &mut rng);
    run(&mut |_| subcube_composition_bound(), &mut rng);
    run(&mut |_| monotone_cost_question(), &mut rng);
    run(&mut |r| local_witness_sandwich(r, level), &mut rng);
    run(&mut |_| local_witness_composition(), &mut rng);
    run(&mut |_| local_witness_separation(), &mut rng);
    run(&mut |_| local_witness_duality(), &mut rng);
    run(&mut |_| local_witness_mixture_locality(), &mut rng);
    run(&mut |_| local_witness_dictator_probe(level), &mut rng);
    run(&mut |_| kappa_threshold_bound(), &mut rng);
    run(&mut |_| kappa_one_classical(), &mut rng);
    run(&mut |_| kappa_monotonicity(), &mut rng);
    run(&mut |_| partial_cost_sandwich(), &mut rng);
    run(&mut |_| kappa_concavity(), &mut rng);
    run(&mut |_| kappa_critical_probe(), &mut rng);
    run(&mut menger_agreement, &mut rng);
    run(&mut |_| percolation_strict_chain(), &mut rng);
    run(&mut |_| percolation_witness_floor(level), &mut rng);
    run(&mut |_| percolation_determinism(), &mut rng);
    run(&mut |_| ratio_growth(), &mut rng);
    run(&mut |_| polynomial_relations(level), &mut rng);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fast_suites_pass() {
        for outcome in run_invariant_suites(1, SuiteLevel::Fast) {
            assert_ne!(
                outcome.status,
                SuiteStatus::Fail,
                "{}: {}",
                outcome.id,
                outcome.detail
            );
        }
    }
}
