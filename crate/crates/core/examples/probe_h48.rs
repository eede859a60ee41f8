use asinv::catalog::load_builtin;
use asinv::groebner::Budget;
use asinv::invariants::*;
use asinv::loci::locus_400;
use asinv::superpotential::compute_superpotential;

fn main() {
    let spec = load_builtin("algebra-H").unwrap();
    let w = compute_superpotential(&spec.relation_space().unwrap()).unwrap().w;
    let l = locus_400(&w);
    let x = Scheme::from_locus(&l).unwrap();
    let t0 = std::time::Instant::now();
    let refined = refine_over_extension(&x, 1, &mut Budget::default()).unwrap();
    println!("complete: {} ext: {:?}", refined.complete, refined.extension.as_ref().map(|m| m.iter().map(|c| format!("{}", c)).collect::<Vec<_>>()));
    println!("X_KK:     {}   ({:?})", refined.multiset, t0.elapsed());
    let xk = refined.scheme;
    let r = reduced_subscheme(&xk, 1, &mut Budget::default()).unwrap();
    println!("reduced:  {}   ({:?})", dimdeg_pc(&r, 1, &mut Budget::default()).unwrap(), t0.elapsed());
    let s = singular_subscheme(&xk, &mut Budget::default()).unwrap();
    println!("singular: {}   ({:?})", dimdeg_pc(&s, 1, &mut Budget::default()).unwrap(), t0.elapsed());
    let rs = reduced_subscheme(&s, 1, &mut Budget::default()).unwrap();
    println!("red-sing: {}   ({:?})", dimdeg_pc(&rs, 1, &mut Budget::default()).unwrap(), t0.elapsed());
    println!("expected: [2,2], [2,1]x2 | [2,1]x3 | [2,1], [1,2]x2, [1,1] | [2,1], [1,1]");
}
