//! Bundled example seeds.

use crate::seed::Seed;

pub const A1: &str = include_str!("../fixtures/a1.json");
pub const A2: &str = include_str!("../fixtures/a2.json");
pub const A3: &str = include_str!("../fixtures/a3.json");
pub const A4: &str = include_str!("../fixtures/a4.json");
pub const SL3: &str = include_str!("../fixtures/sl3.json");
pub const HEXAGON: &str = include_str!("../fixtures/hexagon.json");

/// Name and JSON text of every bundled seed.
pub const ALL: [(&str, &str); 6] = [
    ("a1", A1),
    ("a2", A2),
    ("a3", A3),
    ("a4", A4),
    ("sl3", SL3),
    ("hexagon", HEXAGON),
];

pub fn get(name: &str) -> Option<&'static str> {
    ALL.iter().find(|(n, _)| *n == name).map(|(_, text)| *text)
}

/// Parses a bundled seed; panics on an unknown name.
pub fn seed(name: &str) -> Seed {
    let text = get(name).unwrap_or_else(|| panic!("no fixture named {name}"));
    Seed::parse_json(text).expect("bundled fixtures parse")
}
