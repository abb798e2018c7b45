//! Searches seeded random multigraphs for the two witnesses kept under
//! `tests/fixtures/`. Prints them, and writes them into the directory given
//! as the first argument if there is one.

use std::path::PathBuf;

use sandpile_parking::enumeration::{find_nonunique_decomposition, find_quantifier_gap};

fn main() {
    let out_dir = std::env::args().nth(1).map(PathBuf::from);
    let save = |name: &str, json: String| {
        println!("{json}");
        if let Some(dir) = &out_dir {
            std::fs::write(dir.join(name), json + "\n").expect("write fixture");
        }
    };
    match (0..20).find_map(|seed| find_quantifier_gap(seed, 200, 5)) {
        Some(gap) => save("quantifier_gap.json", gap.fixture().to_json()),
        None => eprintln!("no quantifier gap found"),
    }
    match (0..20).find_map(|seed| find_nonunique_decomposition(seed, 200, 5)) {
        Some(w) => save("nonunique_decomposition.json", w.fixture().to_json()),
        None => eprintln!("no non-unique decomposition found"),
    }
}
