use linkform_core::complex::SimplicialComplex;
use linkform_core::reduction::Reduction;
use std::time::Instant;

fn report(name: &str, k: &SimplicialComplex) {
    let t0 = Instant::now();
    let basis = k.cells_by_dim();
    let total: usize = basis.iter().map(|b| b.len()).sum();
    let t1 = Instant::now();
    let red = Reduction::new(k, &basis);
    let t2 = Instant::now();
    let crit: Vec<usize> = (0..=k.dimension()).map(|d| red.critical_count(d)).collect();
    println!(
        "{name}: cells={total} closure={:?} reduce={:?} critical={:?} (total {})",
        t1 - t0,
        t2 - t1,
        crit,
        red.total_critical()
    );
}

fn main() {
    report("rp5", &SimplicialComplex::rp_space(5).unwrap());
    let l41 = SimplicialComplex::lens_space(4, 1).unwrap();
    report("L(4,1)", &l41);
    let l81 = SimplicialComplex::lens_space(8, 1).unwrap();
    report("L(8,1)", &l81);
    let s2 = SimplicialComplex::sphere(2);
    let p41 = SimplicialComplex::product(&s2, &l41);
    report("S2xL(4,1)", &p41);
    let p81 = SimplicialComplex::product(&s2, &l81);
    report("S2xL(8,1)", &p81);
}
// trace helper appended during development
