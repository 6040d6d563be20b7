//! Dual cones, the arithmetic-type test and membership in `Q₊`.

use lorentz_roots::arith::ivec;
use lorentz_roots::cones::{is_arithmetic_type, k_elements, q_plus_membership};
use lorentz_roots::fixtures;

fn main() -> lorentz_roots::Result<()> {
    let l = fixtures::ex134();
    let p = vec![ivec(&[1, 0, 0]), ivec(&[0, 1, 0]), ivec(&[0, 0, 1])];
    let rep = is_arithmetic_type(&l, &p)?;
    println!("triangle: arithmetic {}, rays {:?}", rep.arithmetic, rep.cone.rays);
    println!("K elements to height 3: {:?}", k_elements(&l, &p, 3));
    println!("(3,2,2) in Q+: {:?}", q_plus_membership(&l, &p, &ivec(&[3, 2, 2]), 10_000));

    let single = is_arithmetic_type(&l, &p[..1])?;
    println!("{{δ1}}: arithmetic {}, witness {:?}", single.arithmetic, single.witness);
    Ok(())
}
