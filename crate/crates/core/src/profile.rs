use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// One approval bit per agent; `true` means the agent approves.
///
/// Serialized as a string of `0`/`1` characters, agent 1 first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Profile {
    bits: Vec<bool>,
}

impl Profile {
    pub fn new(bits: Vec<bool>) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::Domain("a profile needs at least one agent".into()));
        }
        Ok(Profile { bits })
    }

    pub fn zeros(n: usize) -> Result<Self> {
        Profile::new(vec![false; n])
    }

    pub fn ones(n: usize) -> Result<Self> {
        Profile::new(vec![true; n])
    }

    /// Agent `i` approves iff bit `i` of `mask` is set.
    pub fn from_mask(n: usize, mask: u64) -> Result<Self> {
        if n > 64 {
            return Err(Error::Domain(format!(
                "bitmask profiles hold at most 64 agents, got {n}"
            )));
        }
        Profile::new((0..n).map(|i| mask >> i & 1 == 1).collect())
    }

    pub fn to_mask(&self) -> Option<u64> {
        if self.bits.len() > 64 {
            return None;
        }
        Some(
            self.bits
                .iter()
                .enumerate()
                .fold(0u64, |acc, (i, &b)| acc | (u64::from(b) << i)),
        )
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn get(&self, agent: usize) -> Option<bool> {
        self.bits.get(agent).copied()
    }

    /// Number of approving agents.
    pub fn approvals(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// Componentwise `self <= other`.
    pub fn is_below(&self, other: &Profile) -> bool {
        self.len() == other.len() && self.bits.iter().zip(&other.bits).all(|(&a, &b)| !a || b)
    }

    /// True when no agent approves in both profiles.
    pub fn is_disjoint(&self, other: &Profile) -> bool {
        self.len() == other.len() && self.bits.iter().zip(&other.bits).all(|(&a, &b)| !(a && b))
    }

    /// Reorders agents: agent `i` of the result is agent `perm[i]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Profile> {
        if perm.len() != self.len() {
            return Err(Error::Dimension {
                expected: self.len(),
                found: perm.len(),
            });
        }
        let mut seen = vec![false; perm.len()];
        for &p in perm {
            if p >= perm.len() || std::mem::replace(&mut seen[p], true) {
                return Err(Error::Domain(format!("{perm:?} is not a permutation")));
            }
        }
        Profile::new(perm.iter().map(|&p| self.bits[p]).collect())
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Profile({self})")
    }
}

impl FromStr for Profile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Parse(format!(
                    "profile character {other:?} is not 0 or 1"
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        Profile::new(bits)
    }
}

impl Serialize for Profile {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Profile {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(deserializer)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Profile {
        s.parse().unwrap()
    }

    #[test]
    fn approvals_counts_ones() {
        assert_eq!(p("11010").approvals(), 3);
        assert_eq!(p("000").approvals(), 0);
        assert_eq!(Profile::ones(7).unwrap().approvals(), 7);
    }

    #[test]
    fn empty_profile_rejected() {
        assert!(Profile::new(vec![]).is_err());
        assert!("".parse::<Profile>().is_err());
        assert!("10a".parse::<Profile>().is_err());
    }

    #[test]
    fn mask_round_trip() {
        let v = Profile::from_mask(5, 0b01011).unwrap();
        assert_eq!(v.to_string(), "11010");
        assert_eq!(v.to_mask(), Some(0b01011));
    }

    #[test]
    fn order_and_disjointness() {
        assert!(p("100").is_below(&p("110")));
        assert!(!p("101").is_below(&p("110")));
        assert!(p("100").is_disjoint(&p("011")));
        assert!(!p("110").is_disjoint(&p("011")));
    }

    #[test]
    fn permutation_checks() {
        assert_eq!(p("110").permuted(&[2, 0, 1]).unwrap().to_string(), "011");
        assert!(p("110").permuted(&[0, 0, 1]).is_err());
        assert!(p("110").permuted(&[0, 1]).is_err());
    }
}
