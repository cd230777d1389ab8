//! Ideal-profile generators: seeded random draws and exhaustive enumeration.

use std::fmt;
use std::str::FromStr;

use rand::distributions::{Distribution, WeightedIndex};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::preferences::IdealProfile;
use crate::rational::Rational;
use crate::rule::{delta_grid, snap_delta};

/// Deterministic generator for `seed`, with an independent stream per `stream`.
pub fn seeded_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

#[derive(Debug, Clone, PartialEq)]
pub enum IdealDistribution {
    /// Every agent draws a grid value uniformly.
    Uniform,
    /// Every agent draws one of the listed peaks with the given relative weight.
    Clustered(Vec<(Rational, f64)>),
}

impl fmt::Display for IdealDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdealDistribution::Uniform => f.write_str("uniform"),
            IdealDistribution::Clustered(peaks) => {
                f.write_str("clustered(")?;
                for (i, (peak, w)) in peaks.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{peak}:{w}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl FromStr for IdealDistribution {
    type Err = Error;

    /// `uniform` or `clustered(1/2:0.6,4/5:0.4)`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "uniform" {
            return Ok(IdealDistribution::Uniform);
        }
        let inner = s
            .strip_prefix("clustered(")
            .and_then(|rest| rest.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("unknown distribution {s:?}")))?;
        let peaks = inner
            .split(',')
            .map(|item| {
                let (peak, weight) = item
                    .split_once(':')
                    .ok_or_else(|| Error::Parse(format!("cluster {item:?} is not peak:weight")))?;
                let peak: Rational = peak.parse()?;
                if !peak.in_unit_supermajority_range() {
                    return Err(Error::OutOfRange { value: peak });
                }
                let weight: f64 = weight
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad weight in {item:?}")))?;
                if !(weight.is_finite() && weight > 0.0) {
                    return Err(Error::Parse(format!("weight in {item:?} must be positive")));
                }
                Ok((peak, weight))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(IdealDistribution::Clustered(peaks))
    }
}

/// Draws one ideal profile of `n` agents; clustered peaks are snapped to the grid.
pub fn sample_profile<R: Rng>(
    n: usize,
    dist: &IdealDistribution,
    rng: &mut R,
) -> Result<IdealProfile> {
    if n == 0 {
        return Err(Error::Domain("n must be at least 1".into()));
    }
    let (support, weights): (Vec<Rational>, Vec<f64>) = match dist {
        IdealDistribution::Uniform => {
            let grid = delta_grid(n);
            let w = vec![1.0; grid.len()];
            (grid, w)
        }
        IdealDistribution::Clustered(peaks) => peaks
            .iter()
            .map(|&(p, w)| Ok((snap_delta(n, p)?.canonical_delta(), w)))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .unzip(),
    };
    let pick = WeightedIndex::new(&weights).map_err(|e| Error::Domain(e.to_string()))?;
    IdealProfile::on_grid((0..n).map(|_| support[pick.sample(rng)]).collect())
}

/// Every grid ideal profile for `n` agents (`|grid|^n` of them), in odometer order.
pub fn all_grid_profiles(n: usize) -> impl Iterator<Item = IdealProfile> {
    let grid = delta_grid(n);
    let mut digits = if n == 0 { None } else { Some(vec![0usize; n]) };
    std::iter::from_fn(move || {
        let current = digits.as_mut()?;
        let profile = IdealProfile::on_grid(current.iter().map(|&i| grid[i]).collect())
            .expect("grid values are on the grid");
        let mut pos = 0;
        loop {
            if pos == current.len() {
                digits = None;
                break;
            }
            current[pos] += 1;
            if current[pos] < grid.len() {
                break;
            }
            current[pos] = 0;
            pos += 1;
        }
        Some(profile)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(p, q)
    }

    #[test]
    fn parses_distributions() {
        assert_eq!(
            "uniform".parse::<IdealDistribution>().unwrap(),
            IdealDistribution::Uniform
        );
        let c: IdealDistribution = "clustered(1/2:0.6,4/5:0.4)".parse().unwrap();
        assert_eq!(
            c,
            IdealDistribution::Clustered(vec![(r(1, 2), 0.6), (r(4, 5), 0.4)])
        );
        assert_eq!(c.to_string(), "clustered(1/2:0.6,4/5:0.4)");
        assert!("gaussian".parse::<IdealDistribution>().is_err());
        assert!("clustered(1/2:-1)".parse::<IdealDistribution>().is_err());
        assert!("clustered(1:1)".parse::<IdealDistribution>().is_err());
    }

    #[test]
    fn sampling_is_deterministic() {
        let draw = |seed| {
            let mut rng = seeded_rng(seed, 5);
            (0..3)
                .map(|_| sample_profile(5, &IdealDistribution::Uniform, &mut rng).unwrap())
                .collect::<Vec<_>>()
        };
        assert_eq!(draw(1), draw(1));
        assert_ne!(draw(1), draw(2));
    }

    #[test]
    fn clustered_support() {
        let dist: IdealDistribution = "clustered(1/2:0.6,4/5:0.4)".parse().unwrap();
        let mut rng = seeded_rng(7, 0);
        for _ in 0..200 {
            let p = sample_profile(5, &dist, &mut rng).unwrap();
            assert!(p.ideals().iter().all(|&d| d == r(1, 2) || d == r(4, 5)));
        }
    }

    #[test]
    fn exhaustive_enumeration_counts() {
        for n in 1..=7 {
            let g = delta_grid(n).len();
            let all: Vec<_> = all_grid_profiles(n).collect();
            assert_eq!(all.len(), g.pow(n as u32));
            let distinct: std::collections::HashSet<_> = all.iter().collect();
            assert_eq!(distinct.len(), all.len());
        }
    }
}
