use super::OrbitError;
use itertools::Itertools;
use std::fmt;
use std::str::FromStr;

/// A partition of `n`, parts weakly decreasing.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self, OrbitError> {
        if parts.contains(&0) {
            return Err(OrbitError::InvalidPartition(format!("{parts:?} has a zero part")));
        }
        if parts.is_empty() {
            return Err(OrbitError::InvalidPartition("empty partition".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn conjugate(&self) -> Partition {
        let largest = self.0[0];
        Partition(
            (1..=largest)
                .map(|k| self.0.iter().filter(|&&p| p >= k).count())
                .collect(),
        )
    }

    /// The partition `(1, …, 1)` of the zero orbit.
    pub fn trivial(n: usize) -> Partition {
        Partition(vec![1; n])
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.iter().join(","))
    }
}

impl FromStr for Partition {
    type Err = OrbitError;

    fn from_str(s: &str) -> Result<Self, OrbitError> {
        let trimmed = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
        let parts = trimmed
            .split([',', ' '])
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| OrbitError::InvalidPartition(s.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Partition::new(parts)
    }
}

/// All partitions of `n` in reverse lexicographic order, `(n)` first.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn go(rest: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        for p in (1..=max.min(rest)).rev() {
            prefix.push(p);
            go(rest - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        go(n, n, &mut Vec::new(), &mut out);
    }
    out
}

/// Dominance order `p ⊴ q`: every partial sum of `p` is at most that of `q`.
pub fn dominance_leq(p: &Partition, q: &Partition) -> Result<bool, OrbitError> {
    if p.size() != q.size() {
        return Err(OrbitError::InvalidPartition(format!(
            "cannot compare partitions of {} and {}",
            p.size(),
            q.size()
        )));
    }
    let len = p.0.len().max(q.0.len());
    let (mut sp, mut sq) = (0, 0);
    for i in 0..len {
        sp += p.0.get(i).copied().unwrap_or(0);
        sq += q.0.get(i).copied().unwrap_or(0);
        if sp > sq {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The weighted Dynkin diagram of the nilpotent orbit of `sl_n` with Jordan
/// type `lambda`: eigenvalues of the neutral element of an sl2-triple,
/// sorted decreasingly, and their consecutive differences.
pub fn weighted_dynkin_from_partition(lambda: &Partition) -> Vec<i64> {
    let mut h: Vec<i64> = lambda
        .parts()
        .iter()
        .flat_map(|&k| {
            let k = k as i64;
            (0..k).map(move |j| k - 1 - 2 * j)
        })
        .collect();
    h.sort_unstable_by(|a, b| b.cmp(a));
    h.windows(2).map(|w| w[0] - w[1]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn counts() {
        let counts: Vec<usize> = (1..=8).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 3, 5, 7, 11, 15, 22]);
        assert_eq!(partitions(3), vec![p(&[3]), p(&[2, 1]), p(&[1, 1, 1])]);
    }

    #[test]
    fn dominance() {
        assert!(dominance_leq(&p(&[2, 1]), &p(&[3])).unwrap());
        assert!(dominance_leq(&p(&[2, 2]), &p(&[3, 1])).unwrap());
        assert!(!dominance_leq(&p(&[3, 1]), &p(&[2, 2])).unwrap());
        assert!(!dominance_leq(&p(&[3, 3]), &p(&[4, 1, 1])).unwrap());
        assert!(!dominance_leq(&p(&[4, 1, 1]), &p(&[3, 3])).unwrap());
        assert!(dominance_leq(&p(&[2]), &p(&[2, 1])).is_err());
    }

    #[test]
    fn dynkin_diagrams() {
        assert_eq!(weighted_dynkin_from_partition(&p(&[2])), vec![2]);
        assert_eq!(weighted_dynkin_from_partition(&p(&[3, 1])), vec![2, 0, 2]);
        assert_eq!(weighted_dynkin_from_partition(&p(&[2, 2])), vec![0, 2, 0]);
        assert_eq!(weighted_dynkin_from_partition(&p(&[2, 1])), vec![1, 1]);
        assert_eq!(weighted_dynkin_from_partition(&p(&[1, 1, 1, 1])), vec![0, 0, 0]);
        assert_eq!(weighted_dynkin_from_partition(&p(&[5])), vec![2, 2, 2, 2]);
    }

    #[test]
    fn parse_and_conjugate() {
        let q: Partition = "2,2,1".parse().unwrap();
        assert_eq!(q, p(&[2, 2, 1]));
        assert_eq!(q.conjugate(), p(&[3, 2]));
        assert_eq!("(1,3)".parse::<Partition>().unwrap(), p(&[3, 1]));
        assert!("2,0".parse::<Partition>().is_err());
        assert!("x".parse::<Partition>().is_err());
    }
}
