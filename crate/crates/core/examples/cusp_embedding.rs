//! Embedding `S` into `S ⊕ U(k)` along an isotropic vector.

use lorentz_roots::arith::rat;
use lorentz_roots::fixtures;
use lorentz_roots::kacmoody::{cusp_embedding, extended_lattice};

fn main() -> lorentz_roots::Result<()> {
    let l = fixtures::ex134();
    let z = vec![rat(1, 2), rat(-3, 4), rat(5, 3)];
    for k in 1..=3 {
        let w = cusp_embedding(&l, k, &z)?;
        let ext = extended_lattice(&l, k)?;
        let shown: Vec<String> = w.iter().map(ToString::to_string).collect();
        println!("k = {k}: ω = {shown:?}, S'(ω,ω) = {}", ext.pair(&w, &w)?);
    }
    Ok(())
}
