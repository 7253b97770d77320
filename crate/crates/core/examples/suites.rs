use linkform_core::complex::SimplicialComplex;
use linkform_core::cohomology::Space;
use linkform_core::verify::{run_suite, Suite};

fn main() {
    let s = Space::new(SimplicialComplex::sphere(2));
    for suite in [Suite::Axioms, Suite::CochainIdentities, Suite::Bss] {
        let r = run_suite(&s, suite, 0).unwrap();
        println!("{:?}: {} passed, {} failed", suite, r.passed, r.failed);
        for c in &r.checks {
            if !c.pass {
                println!("  FAIL {}: {}", c.name, c.detail);
            }
        }
    }
    let rp3 = Space::new(SimplicialComplex::rp_space(3).unwrap());
    let r = run_suite(&rp3, Suite::Pairing, 0).unwrap();
    println!("Pairing(rp3): {} passed, {} failed", r.passed, r.failed);
    for c in &r.checks {
        println!("  {} {}: {}", if c.pass { "ok  " } else { "FAIL" }, c.name, c.detail);
    }
}
