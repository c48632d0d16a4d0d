use sno_core::*;
use std::time::Instant;

fn main() {
    for (class, k, name) in [
        (ClassTag::CircleTrapezoid, 4, "circle-trapezoid"),
        (ClassTag::KPolygon, 5, "5-polygon"),
        (ClassTag::Trapezoid, 4, "trapezoid"),
        (ClassTag::Permutation, 2, "permutation"),
    ] {
        let t = Instant::now();
        for seed in 0..200u64 {
            let n = 1 + (seed as usize * 37) % 50;
            let d = generate(class, n, k, seed).unwrap();
            let outcome = check_diagram(class, &d, ImplChoice::Unified, None).unwrap();
            assert!(outcome.passed());
        }
        let smalls = t.elapsed().as_secs_f64();
        let t = Instant::now();
        for seed in 0..4u64 {
            let d = generate(class, 500, k, 1000 + seed).unwrap();
            let outcome = check_diagram(class, &d, ImplChoice::Unified, None).unwrap();
            assert!(outcome.passed());
        }
        let big4 = t.elapsed().as_secs_f64();
        println!("{name:18} 200 smalls {smalls:6.2}s   4 bigs {big4:6.2}s  -> est corpus {:.0}s", smalls + big4 * 5.0);
    }
}
