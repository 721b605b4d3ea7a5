use std::fmt;

use num_bigint::BigInt;

use crate::exact_arith::BigRational;

/// Half-integer offset attached to a position, `0` or `1/2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HalfIndex {
    Zero,
    Half,
}

/// Affine hyperplane in `s`-space on which a pole may sit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Hyperplane {
    /// `s_from + ⋯ + s_r = value`.
    SuffixSum { from: usize, value: i64 },
    /// `s_index = value`.
    Coordinate { index: usize, value: i64 },
}

impl Hyperplane {
    /// Whether the rational point `s` (1-based coordinates) lies on it.
    pub fn contains(&self, s: &[BigRational]) -> bool {
        match *self {
            Self::SuffixSum { from, value } => {
                let sum: BigRational = s[from - 1..].iter().sum();
                sum == BigRational::from_integer(BigInt::from(value))
            }
            Self::Coordinate { index, value } => {
                s[index - 1] == BigRational::from_integer(BigInt::from(value))
            }
        }
    }
}

impl fmt::Display for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::SuffixSum { from, value } => {
                write!(f, "s{from}+…+s_r = {value}")
            }
            Self::Coordinate { index, value } => write!(f, "s{index} = {value}"),
        }
    }
}

/// Candidate pole hyperplanes for positions `j = 2..=r` (offsets
/// `offsets[j−2]`) and derivative orders `p = 0..=order`.
pub fn singular_hyperplanes(r: usize, offsets: &[HalfIndex], order: u32) -> Vec<Hyperplane> {
    assert_eq!(offsets.len() + 1, r, "one offset per position 2..=r");
    let mut out = Vec::new();
    for j in 2..=r {
        for p in 0..=i64::from(order) {
            out.push(match offsets[j - 2] {
                HalfIndex::Zero => Hyperplane::SuffixSum {
                    from: j,
                    value: (r - j) as i64 - p,
                },
                HalfIndex::Half => Hyperplane::Coordinate {
                    index: j - 1,
                    value: -p,
                },
            });
        }
    }
    out
}

/// Whether `s` lies on any of the hyperplanes.
pub fn on_singular_hyperplane(planes: &[Hyperplane], s: &[BigRational]) -> bool {
    planes.iter().any(|h| h.contains(s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::rat_int;

    #[test]
    fn examples() {
        assert_eq!(
            singular_hyperplanes(2, &[HalfIndex::Zero], 0),
            vec![Hyperplane::SuffixSum { from: 2, value: 0 }]
        );
        assert_eq!(
            singular_hyperplanes(2, &[HalfIndex::Half], 1),
            vec![
                Hyperplane::Coordinate { index: 1, value: 0 },
                Hyperplane::Coordinate {
                    index: 1,
                    value: -1
                },
            ]
        );
    }

    #[test]
    fn membership() {
        let s = [rat_int(5), rat_int(7)];
        for n in 0..=3 {
            for off in [HalfIndex::Zero, HalfIndex::Half] {
                assert!(!on_singular_hyperplane(
                    &singular_hyperplanes(2, &[off], n),
                    &s
                ));
            }
        }
        let s = [rat_int(-1), rat_int(0)];
        assert!(on_singular_hyperplane(
            &singular_hyperplanes(2, &[HalfIndex::Zero], 0),
            &s
        ));
        assert!(on_singular_hyperplane(
            &singular_hyperplanes(2, &[HalfIndex::Half], 1),
            &s
        ));
    }
}
