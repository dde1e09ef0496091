#![allow(dead_code)]

pub mod props;

use smp_core::model::{parse_instance, parse_pairs, BoyId, GirlId, Instance, InstanceFile, Matching};
use std::path::PathBuf;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

pub fn fixture_text(name: &str) -> String {
    std::fs::read_to_string(fixture_path(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn fixture_file(name: &str) -> InstanceFile {
    parse_instance(&fixture_text(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn fixture(name: &str) -> Instance {
    fixture_file(name).instance
}

pub fn pairs(inst: &Instance, text: &str) -> Vec<(BoyId, GirlId)> {
    parse_pairs(inst, text).unwrap()
}

pub fn matching(inst: &Instance, text: &str) -> Matching {
    Matching::from_pairs(inst.n(), pairs(inst, text)).unwrap()
}

pub fn boy(inst: &Instance, label: &str) -> BoyId {
    pairs(inst, &format!("{label} g{}", inst.base()))[0].0
}

pub fn girl(inst: &Instance, label: &str) -> GirlId {
    pairs(inst, &format!("b{} {label}", inst.base()))[0].1
}

/// Removes all whitespace and unifies separators so printed lines compare
/// against formatter output.
pub fn normalize(text: &str) -> String {
    text.replace("->", "→").replace(';', "|").chars().filter(|c| !c.is_whitespace()).collect()
}

/// Drops `(bK)` winner annotations for traces printed with them elided.
pub fn strip_winners(text: &str) -> String {
    let mut out = String::new();
    let mut chars = text.chars().peekable();
    while let Some(c) = chars.next() {
        if c == '(' && chars.peek() == Some(&'b') {
            for d in chars.by_ref() {
                if d == ')' {
                    break;
                }
            }
        } else {
            out.push(c);
        }
    }
    out
}
