use smp_core::model::{parse_instance, parse_pairs, BoyId, GirlId, Instance, InstanceFile};
use std::io::Read;
use std::path::{Path, PathBuf};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("{0}")]
    Budget(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Invariant(_) => 3,
            CliError::Budget(_) => 4,
        }
    }
}

/// Reads a file, or stdin for `None` and `-`.
pub fn read_text(path: Option<&Path>) -> Result<String, CliError> {
    match path {
        Some(p) if p != Path::new("-") => {
            std::fs::read_to_string(p).map_err(|e| CliError::Parse(format!("{}: {e}", p.display())))
        }
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::Parse(format!("stdin: {e}")))?;
            Ok(s)
        }
    }
}

pub fn read_instance(path: Option<&PathBuf>) -> Result<InstanceFile, CliError> {
    let name = path.map_or("stdin".into(), |p| p.display().to_string());
    parse_instance(&read_text(path.map(PathBuf::as_path))?).map_err(|e| CliError::Parse(format!("{name}: {e}")))
}

pub fn read_pairs(inst: &Instance, path: &Path) -> Result<Vec<(BoyId, GirlId)>, CliError> {
    parse_pairs(inst, &read_text(Some(path))?).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

/// `b4` or `4` in the instance's label base.
fn label(inst: &Instance, text: &str, prefix: char) -> Result<usize, CliError> {
    let digits = text.trim().trim_start_matches(prefix);
    let k: usize = digits.parse().map_err(|_| CliError::Parse(format!("bad id `{text}`")))?;
    k.checked_sub(inst.base()).filter(|&i| i < inst.n()).ok_or_else(|| CliError::Parse(format!("unknown id `{text}`")))
}

pub fn boy(inst: &Instance, text: &str) -> Result<BoyId, CliError> {
    label(inst, text, 'b').map(BoyId)
}

pub fn girl(inst: &Instance, text: &str) -> Result<GirlId, CliError> {
    label(inst, text, 'g').map(GirlId)
}

/// Whitespace- or comma-separated labels.
pub fn boys(inst: &Instance, text: &str) -> Result<Vec<BoyId>, CliError> {
    text.split([' ', ',']).filter(|t| !t.is_empty()).map(|t| boy(inst, t)).collect()
}

pub fn girls(inst: &Instance, text: &str) -> Result<Vec<GirlId>, CliError> {
    text.split([' ', ',']).filter(|t| !t.is_empty()).map(|t| girl(inst, t)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst() -> Instance {
        Instance::from_orders(&[vec![0, 1], vec![1, 0]], &[vec![0, 1], vec![1, 0]]).unwrap()
    }

    #[test]
    fn labels_follow_the_base() {
        assert_eq!(boy(&inst(), "b2").unwrap(), BoyId(1));
        assert_eq!(girl(&inst(), "1").unwrap(), GirlId(0));
        assert!(boy(&inst(), "b0").is_err());
        assert!(boy(&inst(), "b3").is_err());
        assert_eq!(girl(&inst().with_base(0), "g0").unwrap(), GirlId(0));
    }

    #[test]
    fn lists_split_on_spaces_and_commas() {
        assert_eq!(boys(&inst(), "b1, b2").unwrap(), vec![BoyId(0), BoyId(1)]);
        assert!(girls(&inst(), "g1 x").is_err());
    }

    #[test]
    fn codes_by_kind() {
        assert_eq!(CliError::Parse(String::new()).code(), 2);
        assert_eq!(CliError::Invariant(String::new()).code(), 3);
        assert_eq!(CliError::Budget(String::new()).code(), 4);
    }
}
