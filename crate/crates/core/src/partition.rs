use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Weakly decreasing sequence of nonnegative integers, trailing zeros trimmed.
///
/// Ordered lexicographically on the parts, so `() < (1) < (1,1) < (2)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn new(parts: impl Into<Vec<u32>>) -> Result<Self> {
        let mut parts = parts.into();
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!(
                "{parts:?} is not weakly decreasing"
            )));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Number of nonzero parts.
    pub fn length(&self) -> usize {
        self.0.len()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The i-th part (0-based), zero past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn first_part(&self) -> u32 {
        self.part(0)
    }

    /// Parts padded with zeros to length `n`. Panics if there are more than `n` parts.
    pub fn padded(&self, n: usize) -> Vec<u32> {
        assert!(self.length() <= n, "partition {self} has more than {n} parts");
        let mut v = self.0.clone();
        v.resize(n, 0);
        v
    }

    pub fn fits_in_box(&self, rows: usize, cols: usize) -> bool {
        self.length() <= rows && self.first_part() as usize <= cols
    }

    pub fn check_box(&self, rows: usize, cols: usize) -> Result<()> {
        if self.fits_in_box(rows, cols) {
            Ok(())
        } else {
            Err(Error::OutOfBox {
                partition: self.to_string(),
                rows,
                cols,
            })
        }
    }

    /// Partitions obtained by adding one box, with at most `max_rows` rows.
    pub fn add_one_box(&self, max_rows: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        for i in 0..=self.length() {
            if i >= max_rows {
                break;
            }
            if i == 0 || self.part(i - 1) > self.part(i) {
                let mut parts = self.0.clone();
                if i == parts.len() {
                    parts.push(1);
                } else {
                    parts[i] += 1;
                }
                out.push(Partition(parts));
            }
        }
        out
    }

    /// Partitions obtained by removing one corner box.
    pub fn remove_one_box(&self) -> Vec<Partition> {
        let mut out = Vec::new();
        for i in 0..self.length() {
            if self.part(i) > self.part(i + 1) {
                let mut parts = self.0.clone();
                parts[i] -= 1;
                out.push(Partition::new(parts).expect("corner removal keeps order"));
            }
        }
        out
    }

    /// All partitions in the `rows` x `cols` box, in lex order.
    pub fn all_in_box(rows: usize, cols: usize) -> Vec<Partition> {
        fn rec(rows: usize, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if prefix.len() == rows {
                out.push(Partition::new(prefix.clone()).expect("decreasing by construction"));
                return;
            }
            for p in 0..=max {
                prefix.push(p);
                rec(rows, p, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(rows, cols as u32, &mut Vec::new(), &mut out);
        out.sort();
        out
    }

    /// All partitions of `size` with at most `rows` parts, in lex order.
    pub fn all_of_size(size: u32, rows: usize) -> Vec<Partition> {
        Self::all_in_box(rows, size as usize)
            .into_iter()
            .filter(|p| p.size() == size)
            .collect()
    }

    /// `self + rho` for arity `n`.
    pub fn plus_rho(&self, n: usize) -> StrictSequence {
        let parts = self
            .padded(n)
            .into_iter()
            .enumerate()
            .map(|(i, p)| p + (n - 1 - i) as u32)
            .collect();
        StrictSequence(parts)
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Comma-separated weakly decreasing integers; the empty string is the empty partition.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|piece| {
                piece
                    .trim()
                    .parse::<u32>()
                    .map_err(|_| Error::InvalidPartition(format!("cannot parse {s:?}")))
            })
            .collect::<Result<Vec<u32>>>()?;
        Partition::new(parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

/// Strictly decreasing sequence of nonnegative integers of fixed length.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StrictSequence(Vec<u32>);

impl StrictSequence {
    pub fn new(parts: impl Into<Vec<u32>>) -> Result<Self> {
        let parts = parts.into();
        if parts.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::InvalidSequence(format!(
                "{parts:?} is not strictly decreasing"
            )));
        }
        Ok(StrictSequence(parts))
    }

    /// The staircase `(n-1, ..., 1, 0)`.
    pub fn rho(n: usize) -> Self {
        StrictSequence((0..n as u32).rev().collect())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `self - rho`, always a partition.
    pub fn minus_rho(&self) -> Partition {
        let n = self.0.len();
        Partition::new(
            self.0
                .iter()
                .enumerate()
                .map(|(i, &p)| p - (n - 1 - i) as u32)
                .collect::<Vec<_>>(),
        )
        .expect("strictly decreasing minus staircase is weakly decreasing")
    }

    /// All strictly decreasing sequences of length `n` with entries below `bound`.
    pub fn all_below(n: usize, bound: u32) -> Vec<StrictSequence> {
        if (bound as usize) < n {
            return Vec::new();
        }
        Partition::all_in_box(n, bound as usize - n)
            .iter()
            .map(|p| p.plus_rho(n))
            .collect()
    }
}

impl fmt::Display for StrictSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Serialize for StrictSequence {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn parsing() {
        assert_eq!("".parse::<Partition>().unwrap(), Partition::empty());
        assert_eq!("3,0".parse::<Partition>().unwrap(), p(&[3]));
        assert_eq!(" 2, 1 ".parse::<Partition>().unwrap(), p(&[2, 1]));
        assert!("1,,2".parse::<Partition>().is_err());
        assert!("1,2".parse::<Partition>().is_err());
        assert!("a".parse::<Partition>().is_err());
        assert!("-1".parse::<Partition>().is_err());
    }

    #[test]
    fn adding_and_removing_boxes() {
        assert_eq!(p(&[]).add_one_box(2), vec![p(&[1])]);
        assert_eq!(p(&[1]).add_one_box(2), vec![p(&[2]), p(&[1, 1])]);
        assert_eq!(p(&[1, 1]).add_one_box(2), vec![p(&[2, 1])]);
        assert_eq!(p(&[2, 1]).add_one_box(3), vec![p(&[3, 1]), p(&[2, 2]), p(&[2, 1, 1])]);
        assert_eq!(p(&[3, 1]).remove_one_box(), vec![p(&[2, 1]), p(&[3])]);
    }

    #[test]
    fn box_enumeration() {
        let all = Partition::all_in_box(2, 2);
        assert_eq!(all.len(), 6);
        assert_eq!(all[0], Partition::empty());
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(Partition::all_in_box(3, 3).len(), 20);
        assert_eq!(Partition::all_of_size(3, 3).len(), 3);
        assert!(p(&[2, 2]).fits_in_box(2, 2));
        assert!(!p(&[3]).fits_in_box(2, 2));
        assert!(!p(&[1, 1, 1]).fits_in_box(2, 2));
    }

    #[test]
    fn rho_shift() {
        assert_eq!(p(&[2]).plus_rho(3).parts(), &[4, 1, 0]);
        assert_eq!(p(&[2]).plus_rho(3).minus_rho(), p(&[2]));
        assert_eq!(StrictSequence::rho(3).parts(), &[2, 1, 0]);
        assert!(StrictSequence::new(vec![2, 2]).is_err());
        assert_eq!(StrictSequence::all_below(2, 4).len(), 6);
    }
}
