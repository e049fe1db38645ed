//! Addresses into application spines.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use super::term::LmuTerm;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dir {
    /// The function side of an application.
    L,
    /// The argument side.
    R,
}

/// A list of steps; the head applies at the outermost application.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Address(pub Vec<Dir>);

impl Address {
    pub fn empty() -> Self {
        Address(Vec::new())
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Every address defined on `m`, shortest first.
    pub fn all_in(m: &LmuTerm) -> Vec<Address> {
        let mut out = vec![Address::empty()];
        let mut i = 0;
        while i < out.len() {
            let a = out[i].clone();
            if let Some(LmuTerm::App(..)) = addr_get(m, &a) {
                for d in [Dir::L, Dir::R] {
                    let mut b = a.clone();
                    b.0.push(d);
                    out.push(b);
                }
            }
            i += 1;
        }
        out
    }
}

impl fmt::Display for Address {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<&str> = self
            .0
            .iter()
            .map(|d| match d {
                Dir::L => "l",
                Dir::R => "r",
            })
            .collect();
        write!(f, "[{}]", parts.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("bad address `{0}` (expected e.g. `[r,l]`)")]
pub struct AddressParseError(pub String);

impl FromStr for Address {
    type Err = AddressParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s.trim().trim_start_matches('[').trim_end_matches(']');
        let mut steps = Vec::new();
        for part in inner.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            steps.push(match part {
                "l" => Dir::L,
                "r" => Dir::R,
                _ => return Err(AddressParseError(s.to_string())),
            });
        }
        Ok(Address(steps))
    }
}

/// `M_a`, or `None` if the address leaves the application spine.
pub fn addr_get<'a>(m: &'a LmuTerm, a: &Address) -> Option<&'a LmuTerm> {
    let mut cur = m;
    for d in &a.0 {
        let LmuTerm::App(f, x) = cur else { return None };
        cur = match d {
            Dir::L => f,
            Dir::R => x,
        };
    }
    Some(cur)
}

/// `M⟨a = N⟩`, or `None` if the address is undefined on `m`.
pub fn addr_set(m: &LmuTerm, a: &Address, n: LmuTerm) -> Option<LmuTerm> {
    addr_get(m, a)?;
    let path: Vec<usize> = a
        .0
        .iter()
        .map(|d| match d {
            Dir::L => 0,
            Dir::R => 1,
        })
        .collect();
    m.replace_at(&path, n)
}

/// One elementary μ-substitution `[α =_r T]` or `[α =_l T]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Elementary {
    Right(LmuTerm),
    Left(LmuTerm),
}

impl fmt::Display for Elementary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elementary::Right(t) => write!(f, "[=r {t}]"),
            Elementary::Left(t) => write!(f, "[=l {t}]"),
        }
    }
}

/// Splits `[α =_a M]` into elementary substitutions, innermost first.
///
/// Applying the chain in order to any `N` gives `N[α =_a M]` provided
/// `α ∉ FV(M)`: later steps also rewrite the `(α U)` inside arguments
/// inserted by earlier ones.
pub fn decompose_addr_subst(a: &Address, m: &LmuTerm) -> Option<Vec<Elementary>> {
    let mut chain = Vec::new();
    let mut cur = m;
    for d in &a.0 {
        let LmuTerm::App(f, x) = cur else { return None };
        match d {
            Dir::R => {
                chain.push(Elementary::Left((**f).clone()));
                cur = x;
            }
            Dir::L => {
                chain.push(Elementary::Right((**x).clone()));
                cur = f;
            }
        }
    }
    chain.reverse();
    Some(chain)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lmu::parse_lmu;

    fn addr(s: &str) -> Address {
        s.parse().unwrap()
    }

    #[test]
    fn get() {
        let m = parse_lmu("(p (q r))").unwrap();
        assert_eq!(addr_get(&m, &addr("[r,l]")), Some(&LmuTerm::var("q")));
        assert_eq!(addr_get(&m, &Address::empty()), Some(&m));
        assert_eq!(addr_get(&parse_lmu("\\x. x").unwrap(), &addr("[l]")), None);
    }

    #[test]
    fn set() {
        let m = parse_lmu("(p q)").unwrap();
        assert_eq!(addr_set(&m, &addr("[r]"), LmuTerm::var("r")), Some(parse_lmu("(p r)").unwrap()));
        assert_eq!(addr_set(&m, &Address::empty(), LmuTerm::var("r")), Some(LmuTerm::var("r")));
        assert_eq!(addr_set(&m, &addr("[r,r]"), LmuTerm::var("r")), None);
    }

    #[test]
    fn decomposition() {
        let m = parse_lmu("(p ((r (x t)) q))").unwrap();
        let chain = decompose_addr_subst(&addr("[r,l,r,l]"), &m).unwrap();
        let v = LmuTerm::var;
        assert_eq!(
            chain,
            vec![
                Elementary::Right(v("t")),
                Elementary::Left(v("r")),
                Elementary::Right(v("q")),
                Elementary::Left(v("p")),
            ]
        );
        let pq = parse_lmu("(p q)").unwrap();
        assert_eq!(decompose_addr_subst(&addr("[r]"), &pq).unwrap(), vec![Elementary::Left(v("p"))]);
        assert!(decompose_addr_subst(&Address::empty(), &pq).unwrap().is_empty());
    }

    #[test]
    fn enumerate_addresses() {
        let m = parse_lmu("(p (q r))").unwrap();
        let all: Vec<String> = Address::all_in(&m).iter().map(ToString::to_string).collect();
        assert_eq!(all, ["[]", "[l]", "[r]", "[r,l]", "[r,r]"]);
        assert_eq!("[ r , l ]".parse::<Address>().unwrap(), addr("[r,l]"));
    }
}
