//! Lattice Weyl vectors, symmetry groups and chamber classification.

use lorentz_roots::arith::ivec;
use lorentz_roots::fixtures;
use lorentz_roots::weylstruct::{classify_chamber, lattice_weyl_vector, symmetry_group, RootSet};

fn main() -> lorentz_roots::Result<()> {
    let l = fixtures::ex134();
    let sets = [
        vec![ivec(&[1, 0, 0]), ivec(&[0, 1, 0]), ivec(&[0, 0, 1])],
        vec![ivec(&[1, 0, 0]), ivec(&[4, 2, 0]), ivec(&[4, 0, 2])],
    ];
    for roots in sets {
        let p = RootSet::new(&l, roots)?;
        let w = lattice_weyl_vector(&l, &p)?;
        let rho: Option<Vec<String>> = w.rho.map(|r| r.iter().map(ToString::to_string).collect());
        println!("P = {:?}", p.roots());
        println!("  rho {rho:?}, S(rho,rho) = {:?}, {}", w.rho_norm.map(|x| x.to_string()), w.kind.as_str());
        let sym = symmetry_group(&l, &p)?;
        println!("  symmetry order {:?}", sym.order);
        println!("  chamber {}", classify_chamber(&l, &p, &sym)?.as_str());
    }
    Ok(())
}
