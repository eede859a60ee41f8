use asinv::catalog::load_builtin;
use asinv::groebner::Budget;
use asinv::invariants::*;
use asinv::pipeline::build_locus;
use asinv::superpotential::compute_superpotential;
use asinv::tensor::Partition;

fn main() {
    let spec = load_builtin("skew").unwrap();
    let w = compute_superpotential(&spec.relation_space().unwrap()).unwrap().w;
    for (l, expect) in [
        (Partition::P4_, "[2,1]x4 | [1,1]x6"),
        (Partition::P22, "[2,1]x8 | [1,1]x12"),
        (Partition::P211, "[2,1]x8, [2,2]x6 | [1,1]x24"),
    ] {
        let t0 = std::time::Instant::now();
        let locus = build_locus(&w, l).unwrap().unwrap();
        let x = Scheme::from_locus(&locus).unwrap();
        let m = dimdeg_pc(&x, 1, &mut Budget::default()).unwrap();
        print!("{}: X = {}   ", l.label(), m);
        let s = singular_subscheme(&x, &mut Budget::default()).unwrap();
        let ms = dimdeg_pc(&s, 1, &mut Budget::default()).unwrap();
        println!("sing = {}   (expected {})  [{:?}]", ms, expect, t0.elapsed());
    }
}
