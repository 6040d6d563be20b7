//! Invariants, vector classes and mirror geometry on the bundled fixtures.

use lorentz_roots::arith::{ivec, rat, rvec};
use lorentz_roots::fixtures;
use lorentz_roots::geometry::{classify_int_vector, classify_mirrors};

fn main() -> lorentz_roots::Result<()> {
    for l in fixtures::hyperbolic_suite() {
        let inv = l.invariants();
        println!("{}: {:?}", l.name().unwrap_or("?"), inv);
    }

    let l = fixtures::ex134();
    let orient = ivec(&[1, 1, 1]);
    for x in [ivec(&[1, 1, 1]), ivec(&[0, 1, 1]), ivec(&[1, 0, 0])] {
        println!("{x:?} is {:?}", classify_int_vector(&l, &x, &orient)?);
    }
    let (d1, d2) = (ivec(&[1, 0, 0]), ivec(&[0, 1, 0]));
    println!("mirrors of δ1, δ2: {:?}", classify_mirrors(&l, &d1, &d2)?);
    println!("S(ρ,ρ) for ρ = (1,1,1)/2: {}", l.pair(&rvec(&[1, 1, 1]), &rvec(&[1, 1, 1]))? / rat(4, 1));
    Ok(())
}
