//! Lattices shipped with the crate (the same files live under `fixtures/`).

use crate::lattice::Lattice;

pub const EX134_JSON: &str = include_str!("../fixtures/ex134.json");
pub const U_JSON: &str = include_str!("../fixtures/u.json");
pub const U_A1_JSON: &str = include_str!("../fixtures/u_a1.json");
pub const U_A2_JSON: &str = include_str!("../fixtures/u_a2.json");
pub const U_A1A1_JSON: &str = include_str!("../fixtures/u_a1a1.json");

fn parse(text: &str) -> Lattice {
    Lattice::from_json(text).expect("shipped fixture parses")
}

/// Rank 3 lattice spanned by three norm-2 roots with pairwise products −2;
/// its 2-reflection group has an ideal triangle as chamber.
pub fn ex134() -> Lattice {
    parse(EX134_JSON)
}

/// The hyperbolic plane.
pub fn u() -> Lattice {
    parse(U_JSON)
}

pub fn u_a1() -> Lattice {
    parse(U_A1_JSON)
}

pub fn u_a2() -> Lattice {
    parse(U_A2_JSON)
}

pub fn u_a1a1() -> Lattice {
    parse(U_A1A1_JSON)
}

/// Every shipped hyperbolic fixture of rank at least 3.
pub fn hyperbolic_suite() -> Vec<Lattice> {
    vec![ex134(), u_a1(), u_a2(), u_a1a1()]
}

/// Looks up a shipped fixture by file name, e.g. `"ex134.json"`.
pub fn by_file_name(name: &str) -> Option<Lattice> {
    let text = match name {
        "ex134.json" => EX134_JSON,
        "u.json" => U_JSON,
        "u_a1.json" => U_A1_JSON,
        "u_a2.json" => U_A2_JSON,
        "u_a1a1.json" => U_A1A1_JSON,
        _ => return None,
    };
    Some(parse(text))
}
