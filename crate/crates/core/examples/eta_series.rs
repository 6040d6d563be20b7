//! Eta powers, Ramanujan's tau and the one-variable cusp identity.

use lorentz_roots::arith::int;
use lorentz_roots::qseries::{cusp_identity, eta_power, ramanujan_tau, Direction};

fn main() -> lorentz_roots::Result<()> {
    println!("1/η²⁴: {:?}", eta_power(-24, 10).coeffs());
    println!("τ(1..12): {:?}", ramanujan_tau(12));
    let tau = vec![int(24); 8];
    let m = cusp_identity(Direction::TauToM, &tau, 8)?;
    println!("m for τ ≡ 24: {m:?}");
    println!("back: {:?}", cusp_identity(Direction::MToTau, &m, 8)?);
    Ok(())
}
