use chamber_atlas::arrangement::*;
use std::time::Instant;

#[test]
#[ignore]
fn probe_res4_th5() {
    let t0 = Instant::now();
    let c = enumerate_chambers(&resonance_arrangement(4).unwrap()).unwrap();
    println!("R_4 = {} in {:?}", c.len(), t0.elapsed());
    let t0 = Instant::now();
    let c = enumerate_chambers(&threshold_arrangement(5).unwrap()).unwrap();
    println!("T_4 = {} in {:?}", c.len(), t0.elapsed());
}

#[test]
#[ignore]
fn probe_res5() {
    let t0 = Instant::now();
    let c = enumerate_chambers(&resonance_arrangement(5).unwrap()).unwrap();
    println!("R_5 = {} in {:?}", c.len(), t0.elapsed());
}

#[test]
#[ignore]
fn probe_th6() {
    let t0 = Instant::now();
    let c = enumerate_chambers(&threshold_arrangement(6).unwrap()).unwrap();
    println!("T_5 = {} in {:?}", c.len(), t0.elapsed());
}
