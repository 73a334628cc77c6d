//! Stress sweep of the two decision paths well past the test-suite caps:
//! every enumerated instance of rows 21-41 must be accepted by the clause
//! checker, and a large random sample of non-matching truly-spatial triples
//! must be rejected.
use kleinian_rp::config::{EnumCaps, Tolerances};
use kleinian_rp::moebius::{construct_generators, ParamTriple};
use kleinian_rp::oracle::{self, check_theorem_a, match_table};
use kleinian_rp::witnesses::WitnessSet;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::f64::consts::PI;

fn main() {
    let t = Tolerances::default();
    let caps = EnumCaps { max_n: 25, max_m: 60, max_p: 60, max_k: 60 };
    let mcaps = EnumCaps::uniform(400);
    let mut total = 0usize;
    let mut bad = 0usize;
    for row in 21..=41u32 {
        for inst in oracle::enumerate_row(row, &caps, &t).unwrap() {
            total += 1;
            let pair = construct_generators(&inst.triple, &t).unwrap();
            let ok = WitnessSet::build(&pair.f, &pair.g, &t)
                .ok()
                .and_then(|ws| check_theorem_a(&pair.f, &pair.g, &ws, &t).ok())
                .map(|o| o.discrete)
                .unwrap_or(false);
            if !ok {
                bad += 1;
                if bad < 10 { eprintln!("REJECTED row {row} {:?} {:?}", inst.params, inst.triple); }
            }
        }
    }
    println!("acceptance sweep: {total} instances, {bad} failures");
    let shell = t.with_eps_match(2e-6);
    let mut rng = StdRng::seed_from_u64(99);
    let (mut tested, mut fa) = (0usize, 0usize);
    while tested < 40_000 {
        let n = [3u32,5,7,9,11,13,15,17,19,21,23,25][rng.gen_range(0..12)];
        let beta = -4.0*(PI/n as f64).sin().powi(2);
        let bp: f64 = rng.gen_range(0.05..25.0);
        let hi = (-beta*bp/4.0)*(1.0-1e-6); if hi <= 2e-3 { continue; } let gamma: f64 = rng.gen_range(1e-3..hi);
        let triple = ParamTriple::new(beta, bp, gamma);
        if !match_table(&triple, &mcaps, &shell).is_empty() { continue; }
        tested += 1;
        let pair = construct_generators(&triple, &t).unwrap();
        let acc = WitnessSet::build(&pair.f, &pair.g, &t)
            .ok()
            .and_then(|ws| check_theorem_a(&pair.f, &pair.g, &ws, &t).ok())
            .map(|o| o.discrete)
            .unwrap_or(false);
        if acc { fa += 1; if fa < 10 { eprintln!("FALSE ACCEPT {triple:?}"); } }
    }
    println!("rejection sweep: {tested} tested, {fa} false accepts");
}
