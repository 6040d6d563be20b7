//! The parabolic translation `φ = s_{δ3} s_{δ2}` and windows of the `P_k` family.

use lorentz_roots::arith::ivec;
use lorentz_roots::fixtures;
use lorentz_roots::weylstruct::{build_pk_sample, fixed_isotropic, is_unipotent, parabolic_translation};

fn main() -> lorentz_roots::Result<()> {
    let l = fixtures::ex134();
    let phi = parabolic_translation(&l, &ivec(&[0, 1, 0]), &ivec(&[0, 0, 1]))?;
    println!("φ = {:?}", phi.matrix().to_rows());
    println!("unipotent {}, cusp {:?}", is_unipotent(&phi), fixed_isotropic(&l, std::slice::from_ref(&phi))?);
    for k in 2..=4 {
        let s = build_pk_sample(&l, &phi, &ivec(&[1, 0, 0]), &ivec(&[4, 2, 0]), &ivec(&[4, 0, 2]), k, 3)?;
        println!("k = {k}: {} walls, norms {:?}", s.roots.len(), s.roots.norms(&l));
        for (t, r) in s.shifts.iter().zip(s.roots.roots()) {
            println!("  t = {t:>2}  {r:?}");
        }
    }
    Ok(())
}
