use coverlift_core::curve_complex::enumerate_universe;
use coverlift_core::overlay::Overlay;
use coverlift_core::triangulation::build_surface;
use coverlift_core::twist::dehn_twist;
use std::sync::Arc;
use std::time::Instant;

fn main() {
    let tri = Arc::new(build_surface(0, 5).unwrap());
    let u = enumerate_universe(&tri, 2).unwrap();
    println!("pool sizes: {:?}", u.iter().take(8).map(|c| c.coords().small().unwrap().iter().sum::<u64>()).collect::<Vec<_>>());
    // Simulate a mutation: iterated twists with powers ±1/±2.
    let mut c = u[0].clone();
    let seq = [(1usize, 1i64), (2, -1), (3, 2), (1, -2), (4, 1), (2, 1)];
    for (step, (idx, pw)) in seq.iter().enumerate() {
        let t0 = Instant::now();
        c = dehn_twist(&c, &u[*idx], *pw).unwrap();
        let total: u64 = c.coords().small().unwrap().iter().sum();
        println!("step {}: total weight {} ({:?})", step, total, t0.elapsed());
    }
    let mut d = u[5].clone();
    for (idx, pw) in seq.iter() {
        d = dehn_twist(&d, &u[*idx], *pw).unwrap();
    }
    let t0 = Instant::now();
    let ov = Overlay::build(tri.clone(), c.coords().small().unwrap(), d.coords().small().unwrap()).unwrap();
    println!("i(mutated, mutated) = {} removed {} in {:?}", ov.crossing_count(), ov.bigons_removed, t0.elapsed());
}
