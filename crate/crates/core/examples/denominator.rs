//! Root multiplicities of the triangle algebra from the denominator identity.

use lorentz_roots::arith::ivec;
use lorentz_roots::fixtures;
use lorentz_roots::kacmoody::{anti_invariance_check, solve_multiplicities, weyl_elements, RootDatum};
use lorentz_roots::weylstruct::RootSet;

fn main() -> lorentz_roots::Result<()> {
    let l = fixtures::ex134();
    let p = RootSet::new(&l, vec![ivec(&[1, 0, 0]), ivec(&[0, 1, 0]), ivec(&[0, 0, 1])])?;
    let datum = RootDatum::new(l, p)?;
    println!("Cartan matrix {:?}", datum.cartan.a.to_rows());

    for w in weyl_elements(&datum, 4)? {
        println!("  w = {:?}  exponent {:?}  sign {}", w.word, w.exponent, w.sign);
    }
    println!("anti-invariant to height 4: {}", anti_invariance_check(&datum, 4)?);

    let table = solve_multiplicities(&datum, 8)?;
    println!("residual zero: {}", table.residual_zero);
    for g in &table.imaginary {
        println!("  imaginary {g:?}: mult {}", table.mult(g));
    }
    Ok(())
}
