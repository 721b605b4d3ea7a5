use std::fmt;

use serde::{Deserialize, Serialize};

use super::ExpansionError;

/// Point `(−l_1, …, −l_r)` of the lattice of non-positive integers, `r ≥ 2`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PointSpec {
    l: Vec<u32>,
}

impl PointSpec {
    pub fn new(l: Vec<u32>) -> Result<Self, ExpansionError> {
        if l.len() < 2 {
            return Err(ExpansionError::DepthTooSmall(l.len()));
        }
        Ok(Self { l })
    }

    pub fn r(&self) -> usize {
        self.l.len()
    }

    pub fn l(&self) -> &[u32] {
        &self.l
    }

    /// `l_i + ⋯ + l_r` with 1-based `i`; zero for `i > r`.
    pub fn l_suffix(&self, i: usize) -> u64 {
        self.l
            .iter()
            .skip(i.saturating_sub(1))
            .map(|&x| u64::from(x))
            .sum()
    }

    /// Total degree `l_1 + ⋯ + l_r + r` of the admitted compositions.
    pub fn total_degree(&self) -> u32 {
        self.l.iter().sum::<u32>() + self.r() as u32
    }
}

impl fmt::Display for PointSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "l=({})", join(&self.l))
    }
}

/// Degrees `(n_1, …, n_r)` of the atoms `B_{n_j}(a_j; z_j)` of a term.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Composition(pub Vec<u32>);

impl Composition {
    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// `n_i + ⋯ + n_r` with 1-based `i`.
    pub fn suffix(&self, i: usize) -> u64 {
        self.0
            .iter()
            .skip(i.saturating_sub(1))
            .map(|&x| u64::from(x))
            .sum()
    }

    pub fn total(&self) -> u64 {
        self.suffix(1)
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", join(&self.0))
    }
}

/// Branch selector `d ∈ {0,1}^{r−1}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct BranchVector(Vec<bool>);

impl BranchVector {
    pub fn new(bits: Vec<bool>) -> Self {
        Self(bits)
    }

    pub fn from_digits(digits: &[u8]) -> Result<Self, ExpansionError> {
        digits
            .iter()
            .map(|&d| match d {
                0 => Ok(false),
                1 => Ok(true),
                other => Err(ExpansionError::Malformed(format!("branch digit {other}"))),
            })
            .collect::<Result<_, _>>()
            .map(Self)
    }

    /// All `2^{len}` vectors, ordered as binary numbers with `d_1` most
    /// significant.
    pub fn all(len: usize) -> Vec<Self> {
        (0..1u64 << len)
            .map(|m| Self((0..len).map(|j| m >> (len - 1 - j) & 1 == 1).collect()))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `d_j` with 1-based `j`.
    pub fn get(&self, j: usize) -> bool {
        self.0[j - 1]
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn digits(&self) -> Vec<u8> {
        self.0.iter().map(|&b| u8::from(b)).collect()
    }
}

impl fmt::Display for BranchVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.digits().iter().try_for_each(|d| write!(f, "{d}"))
    }
}

/// Product of suffix sums `ε(i,r) = ε_i + ⋯ + ε_r` over a product of
/// suffix sums, stored as sorted index lists with no index on both sides.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct EpsRatioMonomial {
    num: Vec<usize>,
    den: Vec<usize>,
}

impl EpsRatioMonomial {
    /// Cancels common indices (with multiplicity) and sorts.
    pub fn new(mut num: Vec<usize>, mut den: Vec<usize>) -> Self {
        num.sort_unstable();
        den.sort_unstable();
        let (mut n, mut d) = (Vec::new(), Vec::new());
        let (mut i, mut k) = (0, 0);
        while i < num.len() || k < den.len() {
            match (num.get(i), den.get(k)) {
                (Some(a), Some(b)) if a == b => {
                    i += 1;
                    k += 1;
                }
                (Some(a), Some(b)) if a < b => {
                    n.push(*a);
                    i += 1;
                }
                (Some(_), Some(b)) => {
                    d.push(*b);
                    k += 1;
                }
                (Some(a), None) => {
                    n.push(*a);
                    i += 1;
                }
                (None, Some(b)) => {
                    d.push(*b);
                    k += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Self { num: n, den: d }
    }

    /// `Π_{j : d_j = 1} ε(j+1,r)/ε(j,r)`, reduced.
    pub fn from_branch(d: &BranchVector) -> Self {
        let ones: Vec<usize> = (1..=d.len()).filter(|&j| d.get(j)).collect();
        Self::new(ones.iter().map(|j| j + 1).collect(), ones)
    }

    pub fn one() -> Self {
        Self::default()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_empty() && self.den.is_empty()
    }

    pub fn numerator(&self) -> &[usize] {
        &self.num
    }

    pub fn denominator(&self) -> &[usize] {
        &self.den
    }

    /// Evaluates with a caller-supplied value for each suffix symbol.
    pub fn eval_with<T, E>(
        &self,
        one: T,
        mut suffix: impl FnMut(usize) -> Result<T, E>,
        mul: impl Fn(&T, &T) -> T,
        div: impl Fn(&T, &T) -> T,
    ) -> Result<T, E> {
        let mut acc = one;
        for &i in &self.num {
            acc = mul(&acc, &suffix(i)?);
        }
        for &i in &self.den {
            acc = div(&acc, &suffix(i)?);
        }
        Ok(acc)
    }

    /// Text form such as `ε2/(ε1+ε2)`.
    pub fn render(&self, r: usize) -> String {
        let sym = |i: usize, wrap: bool| {
            if i == r {
                format!("ε{i}")
            } else {
                let s = (i..=r)
                    .map(|k| format!("ε{k}"))
                    .collect::<Vec<_>>()
                    .join("+");
                if wrap {
                    format!("({s})")
                } else {
                    s
                }
            }
        };
        let side = |idx: &[usize]| -> String {
            match idx {
                [] => "1".into(),
                [i] => sym(*i, true),
                many => many
                    .iter()
                    .map(|&i| sym(i, true))
                    .collect::<Vec<_>>()
                    .join("·"),
            }
        };
        let num = side(&self.num);
        match self.den.as_slice() {
            [] => num,
            [_] => format!("{num}/{}", side(&self.den)),
            _ => format!("{num}/({})", side(&self.den)),
        }
    }
}

pub(crate) fn join<T: fmt::Display>(xs: &[T]) -> String {
    xs.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suffix_sums() {
        let p = PointSpec::new(vec![1, 0, 2]).unwrap();
        assert_eq!(p.l_suffix(1), 3);
        assert_eq!(p.l_suffix(3), 2);
        assert_eq!(p.l_suffix(4), 0);
        assert_eq!(p.total_degree(), 6);
        assert!(PointSpec::new(vec![0]).is_err());
    }

    #[test]
    fn branch_order() {
        let all: Vec<String> = BranchVector::all(2)
            .iter()
            .map(ToString::to_string)
            .collect();
        assert_eq!(all, ["00", "01", "10", "11"]);
    }

    #[test]
    fn monomial_reduction_and_render() {
        let d = BranchVector::from_digits(&[1, 1, 0]).unwrap();
        let m = EpsRatioMonomial::from_branch(&d);
        assert_eq!((m.numerator(), m.denominator()), (&[3][..], &[1][..]));
        assert_eq!(m.render(4), "(ε3+ε4)/(ε1+ε2+ε3+ε4)");
        let d = BranchVector::from_digits(&[1, 0, 1]).unwrap();
        let m = EpsRatioMonomial::from_branch(&d);
        assert_eq!(m.render(4), "(ε2+ε3+ε4)·ε4/((ε1+ε2+ε3+ε4)·(ε3+ε4))");
        assert_eq!(
            EpsRatioMonomial::from_branch(&BranchVector::from_digits(&[1]).unwrap()).render(2),
            "ε2/(ε1+ε2)"
        );
        assert!(EpsRatioMonomial::new(vec![2, 3], vec![3, 2]).is_one());
    }
}
