use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::abelian_aut::AbelianSpec;
use crate::group_engine::{self as ge, CayleyGroup, GroupError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("bad group spec {text:?}: {reason}")]
pub struct GroupSpecError {
    pub text: String,
    pub reason: String,
}

/// A group named in the CLI mini-language:
///
/// ```text
/// cyclic:n | abelian:p^e1,e2;q^f1 | dihedral:n | dicyclic:n | sym:n | alt:n
/// | heisenberg:p | product:(SPEC)x(SPEC)[x(SPEC)...]
/// ```
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(u64),
    Abelian(AbelianSpec),
    Dihedral(u64),
    Dicyclic(u64),
    Symmetric(u64),
    Alternating(u64),
    Heisenberg(u64),
    Product(Vec<GroupSpec>),
}

impl GroupSpec {
    pub fn build(&self) -> Result<CayleyGroup, GroupError> {
        match self {
            GroupSpec::Cyclic(n) => ge::make_cyclic(*n),
            GroupSpec::Abelian(spec) => ge::make_abelian(spec),
            GroupSpec::Dihedral(n) => ge::make_dihedral(*n),
            GroupSpec::Dicyclic(n) => ge::make_dicyclic(*n),
            GroupSpec::Symmetric(n) => ge::make_symmetric(*n),
            GroupSpec::Alternating(n) => ge::make_alternating(*n),
            GroupSpec::Heisenberg(p) => ge::make_heisenberg(*p),
            GroupSpec::Product(parts) => {
                let mut acc = parts[0].build()?;
                for part in &parts[1..] {
                    acc = ge::direct_product(&acc, &part.build()?)?;
                }
                Ok(acc)
            }
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "cyclic:{n}"),
            GroupSpec::Abelian(s) => write!(f, "abelian:{s}"),
            GroupSpec::Dihedral(n) => write!(f, "dihedral:{n}"),
            GroupSpec::Dicyclic(n) => write!(f, "dicyclic:{n}"),
            GroupSpec::Symmetric(n) => write!(f, "sym:{n}"),
            GroupSpec::Alternating(n) => write!(f, "alt:{n}"),
            GroupSpec::Heisenberg(p) => write!(f, "heisenberg:{p}"),
            GroupSpec::Product(parts) => {
                write!(f, "product:")?;
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, "x")?;
                    }
                    write!(f, "({p})")?;
                }
                Ok(())
            }
        }
    }
}

/// Split `(A)x(B)x(C)` into `["A", "B", "C"]`, respecting nesting.
fn split_factors(body: &str) -> Result<Vec<&str>, String> {
    let bytes = body.as_bytes();
    let mut parts = Vec::new();
    let mut i = 0;
    loop {
        if bytes.get(i) != Some(&b'(') {
            return Err(format!("expected '(' at offset {i}"));
        }
        let mut depth = 0usize;
        let mut end = None;
        for (j, &c) in bytes.iter().enumerate().skip(i) {
            match c {
                b'(' => depth += 1,
                b')' => {
                    depth -= 1;
                    if depth == 0 {
                        end = Some(j);
                        break;
                    }
                }
                _ => {}
            }
        }
        let end = end.ok_or("unbalanced parentheses")?;
        parts.push(&body[i + 1..end]);
        i = end + 1;
        match bytes.get(i) {
            None => break,
            Some(b'x') => i += 1,
            Some(_) => return Err(format!("expected 'x' between factors at offset {i}")),
        }
    }
    if parts.len() < 2 {
        return Err("a product needs at least two factors".into());
    }
    Ok(parts)
}

impl FromStr for GroupSpec {
    type Err = GroupSpecError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let fail = |reason: String| GroupSpecError { text: text.to_string(), reason };
        let trimmed = text.trim();
        let (kind, arg) = trimmed.split_once(':').ok_or_else(|| fail("expected KIND:ARG".into()))?;
        let number =
            || arg.trim().parse::<u64>().map_err(|_| fail(format!("{:?} is not a nonnegative integer", arg.trim())));
        Ok(match kind.trim() {
            "cyclic" => GroupSpec::Cyclic(number()?),
            "dihedral" => GroupSpec::Dihedral(number()?),
            "dicyclic" => GroupSpec::Dicyclic(number()?),
            "sym" => GroupSpec::Symmetric(number()?),
            "alt" => GroupSpec::Alternating(number()?),
            "heisenberg" => GroupSpec::Heisenberg(number()?),
            "abelian" => {
                GroupSpec::Abelian(arg.parse().map_err(|e: crate::abelian_aut::AbelianError| fail(e.to_string()))?)
            }
            "product" => {
                let parts = split_factors(arg.trim()).map_err(fail)?;
                GroupSpec::Product(parts.into_iter().map(str::parse).collect::<Result<_, _>>()?)
            }
            other => return Err(fail(format!("unknown group kind {other:?}"))),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_every_kind() {
        for (text, order) in [
            ("cyclic:12", 12),
            ("abelian:2^1,2;3^1", 24),
            ("dihedral:5", 10),
            ("dicyclic:2", 8),
            ("sym:3", 6),
            ("alt:4", 12),
            ("heisenberg:3", 27),
            ("product:(cyclic:2)x(sym:3)", 12),
            ("product:(product:(cyclic:2)x(cyclic:2))x(cyclic:3)x(cyclic:5)", 60),
        ] {
            let spec: GroupSpec = text.parse().unwrap();
            assert_eq!(spec.to_string().parse::<GroupSpec>().unwrap(), spec);
            assert_eq!(spec.build().unwrap().order(), order, "{text}");
        }
    }

    #[test]
    fn rejects_malformed() {
        for bad in [
            "cyclic",
            "cyclic:x",
            "torus:3",
            "abelian:4^1",
            "product:(cyclic:2)",
            "product:(cyclic:2)(cyclic:3)",
            "product:(cyclic:2)x(cyclic:3",
            "product:cyclic:2",
        ] {
            assert!(bad.parse::<GroupSpec>().is_err(), "{bad}");
        }
        assert!(matches!("sym:6".parse::<GroupSpec>().unwrap().build(), Err(GroupError::InvalidParameter(_))));
        assert!(matches!("cyclic:100000".parse::<GroupSpec>().unwrap().build(), Err(GroupError::CapExceeded { .. })));
    }
}
