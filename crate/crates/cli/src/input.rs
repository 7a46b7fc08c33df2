use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use zinbiel::algebra::Algebra;
use zinbiel::catalog::{make, Family, FamilyId};
use zinbiel::linalg::{parse_q, q, Q};

/// A catalog label such as `F_6^1` or `mu_2^7(1/2)`, or a path to a `zalg 1` file.
pub fn load_algebra(spec: &str) -> Result<Algebra> {
    if let Some(id) = FamilyId::from_label(spec) {
        return Ok(make(&id)?);
    }
    let path = Path::new(spec);
    if !path.exists() {
        bail!("`{spec}` is neither a catalog label nor a file");
    }
    let text = fs::read_to_string(path).with_context(|| format!("reading {spec}"))?;
    Algebra::parse_zalg(&text).map_err(|e| anyhow!("{spec}: {e}"))
}

pub fn family_id(family: &str, n: usize, alpha: Option<&str>) -> Result<FamilyId> {
    let family = Family::parse(family).ok_or_else(|| anyhow!("unknown family `{family}`"))?;
    let alpha = alpha.map(|a| parse_q(a).ok_or_else(|| anyhow!("bad rational `{a}`"))).transpose()?;
    let id = FamilyId { family, n, alpha };
    id.validate()?;
    Ok(id)
}

pub fn filiform(family: &str) -> Result<Family> {
    match Family::parse(family) {
        Some(f) if f.filiform_index().is_some() => Ok(f),
        _ => bail!("expected F1, F2 or F3, got `{family}`"),
    }
}

/// `p/q`, an integer, or `1e-9` style.
pub fn parse_tol(s: &str) -> Result<Q> {
    let bad = || anyhow!("bad tolerance `{s}`");
    let t = match s.split_once(['e', 'E']) {
        Some((m, e)) => {
            let mut v = parse_q(m).ok_or_else(bad)?;
            let e: i32 = e.parse().map_err(|_| bad())?;
            for _ in 0..e.unsigned_abs() {
                v = if e < 0 { v / q(10) } else { v * q(10) };
            }
            v
        }
        None => parse_q(s).ok_or_else(bad)?,
    };
    if t <= q(0) {
        bail!("tolerance must be positive");
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use zinbiel::linalg::qf;

    #[test]
    fn tolerances() {
        assert_eq!(parse_tol("1e-3").unwrap(), qf(1, 1000));
        assert_eq!(parse_tol("1/7").unwrap(), qf(1, 7));
        assert_eq!(parse_tol("5E2").unwrap(), q(500));
        assert!(parse_tol("0").is_err());
        assert!(parse_tol("x").is_err());
    }

    #[test]
    fn labels_resolve() {
        assert_eq!(load_algebra("F_6^1").unwrap().dim(), 6);
        assert!(load_algebra("nowhere.zalg").is_err());
        assert!(family_id("mu2", 7, None).is_err());
        assert!(family_id("mu2", 7, Some("1/2")).is_ok());
    }
}
