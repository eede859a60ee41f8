use asinv::catalog::load_builtin;
use asinv::groebner::Budget;
use asinv::invariants::*;
use asinv::loci::locus_400;
use asinv::superpotential::compute_superpotential;

fn main() {
    let spec = load_builtin("algebra-H").unwrap();
    let w = compute_superpotential(&spec.relation_space().unwrap()).unwrap().w;
    let t0 = std::time::Instant::now();
    let l = locus_400(&w);
    let x = Scheme::from_locus(&l).unwrap();
    let m = dimdeg_pc(&x, 1, &mut Budget::default()).unwrap();
    println!("X:        {}   ({:?})", m, t0.elapsed());
    let r = reduced_subscheme(&x, 1, &mut Budget::default()).unwrap();
    let mr = dimdeg_pc(&r, 1, &mut Budget::default()).unwrap();
    println!("reduced:  {}   ({:?})", mr, t0.elapsed());
    let s = singular_subscheme(&x, &mut Budget::default()).unwrap();
    let ms = dimdeg_pc(&s, 1, &mut Budget::default()).unwrap();
    println!("singular: {}   ({:?})", ms, t0.elapsed());
    let rs = reduced_subscheme(&s, 1, &mut Budget::default()).unwrap();
    let mrs = dimdeg_pc(&rs, 1, &mut Budget::default()).unwrap();
    println!("red-sing: {}   ({:?})", mrs, t0.elapsed());
    println!("expected: [2,2]x2 | [2,2], [2,1] | [2,1], [1,4], [1,1] | [2,1], [1,1]");
}
