use bflab::measure::ProductMeasure;
use bflab::scalar::{exact, Exact};
use bflab::{subcube, zoo};

#[test]
#[ignore]
fn time_sc_pairs() {
    let pairs: Vec<(&str, bflab::BooleanFunction)> = vec![
        ("OR2.AND2", zoo::or(2).unwrap().compose(&zoo::and(2).unwrap()).unwrap()),
        ("AND2.OR2", zoo::and(2).unwrap().compose(&zoo::or(2).unwrap()).unwrap()),
        ("AND2.AND2", zoo::and(2).unwrap().compose(&zoo::and(2).unwrap()).unwrap()),
        ("PAR2.PAR2", zoo::parity(2).unwrap().compose(&zoo::parity(2).unwrap()).unwrap()),
        ("AND2.PAR2", zoo::and(2).unwrap().compose(&zoo::parity(2).unwrap()).unwrap()),
        ("PAR2.AND2", zoo::parity(2).unwrap().compose(&zoo::and(2).unwrap()).unwrap()),
        ("MAJ3.AND2", zoo::maj(3).unwrap().compose(&zoo::and(2).unwrap()).unwrap()),
        ("AND2.MAJ3", zoo::and(2).unwrap().compose(&zoo::maj(3).unwrap()).unwrap()),
        ("PAR2.MAJ3", zoo::parity(2).unwrap().compose(&zoo::maj(3).unwrap()).unwrap()),
        ("MAJ3.PAR2", zoo::maj(3).unwrap().compose(&zoo::parity(2).unwrap()).unwrap()),
        ("AND3.PAR2", zoo::and(3).unwrap().compose(&zoo::parity(2).unwrap()).unwrap()),
        ("AEQ3.PAR2", zoo::all_equal3().compose(&zoo::parity(2).unwrap()).unwrap()),
        ("ADDRESS1.PAR2", zoo::address(1).unwrap().compose(&zoo::parity(2).unwrap()).unwrap()),
    ];
    for (name, fg) in pairs {
        for (pn, pd) in [(1i64, 2i64), (1, 3)] {
            let m = ProductMeasure::new(exact(pn, pd)).unwrap();
            let t = std::time::Instant::now();
            let v: Exact = subcube::sc_dist(&fg, &m).unwrap();
            println!("{name} p={pn}/{pd}: {} in {:?}", bflab::format_exact(&v), t.elapsed());
        }
    }
}
