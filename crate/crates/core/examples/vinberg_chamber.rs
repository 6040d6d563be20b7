//! Vinberg's algorithm on each fixture, with the gram bound on the result.

use lorentz_roots::arith::ivec;
use lorentz_roots::fixtures;
use lorentz_roots::vinberg::{gram_bound_check, run, Limits, RootFilter};

fn main() -> lorentz_roots::Result<()> {
    let jobs = [
        (fixtures::ex134(), vec![1, 1, 1], vec![2]),
        (fixtures::ex134(), vec![4, 3, 2], vec![2, 8]),
        (fixtures::u_a1(), vec![3, 5, 1], vec![2]),
        (fixtures::u_a2(), vec![5, 7, 1, 1], vec![2]),
        (fixtures::u_a1a1(), vec![5, 7, 1, 2], vec![2, 4]),
    ];
    for (l, h, norms) in jobs {
        let filter = RootFilter::new(norms.iter().copied())?;
        let rep = run(&l, &ivec(&h), &filter, &Limits::default())?;
        println!("{} h={h:?} norms={norms:?}", l.name().unwrap_or("?"));
        for (r, k) in rep.accepted.iter().zip(&rep.keys) {
            println!("  {r:?} key {k}");
        }
        let bound = gram_bound_check(&l, &rep.accepted, true)?;
        println!("  terminated {} violations {:?}", rep.terminated, bound.violations);
    }
    Ok(())
}
