//! Partitions, permutations of `[n]`, conjugacy-class sizes and Stirling
//! numbers of the first kind.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// A weakly decreasing sequence of positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Sorts `parts` into weakly decreasing order; zero parts are rejected.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?}")));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    /// The one-part partition `(n)`.
    pub fn single(n: usize) -> Self {
        if n == 0 {
            Partition { parts: vec![] }
        } else {
            Partition { parts: vec![n] }
        }
    }

    /// `(1, ..., 1)` with `n` ones.
    pub fn ones(n: usize) -> Self {
        Partition { parts: vec![1; n] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `(length, multiplicity)` pairs in decreasing length order.
    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((len, m)) if *len == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// Centralizer order: the product of `i^m_i * m_i!`.
    pub fn z(&self) -> BigInt {
        self.multiplicities()
            .into_iter()
            .fold(BigInt::one(), |acc, (i, m)| {
                acc * BigInt::from(i).pow(m as u32) * factorial(m)
            })
    }

    /// Number of permutations of this cycle type, `n!/z`.
    pub fn class_size(&self) -> BigInt {
        factorial(self.n()) / self.z()
    }

    /// Parity of a permutation of this type: `n - len` even.
    pub fn is_even_type(&self) -> bool {
        (self.n() - self.len()) % 2 == 0
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

/// Comma-separated positive integers in any order, e.g. `"2,3,3"`.
impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidPartition(s.to_string());
        if s.trim().is_empty() {
            return Err(bad());
        }
        let parts = s
            .split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts).map_err(|_| bad())
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All partitions of `n` in reverse-lexicographic order, starting at `(n)`.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    fn rec(remaining: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition { parts: prefix.clone() });
            return;
        }
        for first in (1..=remaining.min(max)).rev() {
            prefix.push(first);
            rec(remaining - first, first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// A bijection of `{1, ..., n}`.
///
/// Stored 0-based internally; every public accessor speaks 1-based images.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// `images[i]` is the image of `i + 1`.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x == 0 || x > n || seen[x - 1] {
                return Err(Error::InvalidPermutation(images));
            }
            seen[x - 1] = true;
        }
        Ok(Permutation {
            images: images.into_iter().map(|x| x - 1).collect(),
        })
    }

    pub(crate) fn from_zero_based(images: Vec<usize>) -> Self {
        Permutation { images }
    }

    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    pub fn size(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|x| x + 1).collect()
    }

    pub(crate) fn raw(&self) -> &[usize] {
        &self.images
    }

    /// Image of `i` (1-based).
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1] + 1
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.size()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { images: inv }
    }

    /// Cycles in 1-based labels, each starting at its smallest element,
    /// ordered by that element. Fixed points are included.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.size();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_type(&self) -> Partition {
        let lengths = cycle_lengths(&self.images);
        Partition::new(lengths).expect("cycle lengths are positive")
    }

    /// Number of cycles, fixed points included.
    pub fn kappa(&self) -> usize {
        kappa_raw(&self.images)
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation, e.g. `(1,2,3)(4,5)(6)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in self.cycles() {
            let c: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", c.join(","))?;
        }
        Ok(())
    }
}

/// `u * v`: apply `v` first, then `u`.
///
/// Panics when the sizes differ.
pub fn compose(u: &Permutation, v: &Permutation) -> Permutation {
    assert_eq!(u.size(), v.size(), "composing permutations of different sizes");
    Permutation {
        images: compose_raw(&u.images, &v.images),
    }
}

pub fn try_compose(u: &Permutation, v: &Permutation) -> Result<Permutation> {
    if u.size() != v.size() {
        return Err(Error::SizeMismatch {
            left: u.size(),
            right: v.size(),
        });
    }
    Ok(compose(u, v))
}

pub(crate) fn compose_raw(u: &[usize], v: &[usize]) -> Vec<usize> {
    v.iter().map(|&x| u[x]).collect()
}

pub(crate) fn kappa_raw(images: &[usize]) -> usize {
    let mut seen = vec![false; images.len()];
    let mut count = 0;
    for start in 0..images.len() {
        if seen[start] {
            continue;
        }
        count += 1;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = images[x];
        }
    }
    count
}

fn cycle_lengths(images: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; images.len()];
    let mut out = Vec::new();
    for start in 0..images.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = images[x];
            len += 1;
        }
        out.push(len);
    }
    out
}

/// Cycles on consecutive blocks of `[n]` in the order of the parts;
/// `(3,3,2)` gives `(1,2,3)(4,5,6)(7,8)`.
pub fn canonical_of_type(mu: &Partition) -> Permutation {
    let mut images = Vec::with_capacity(mu.n());
    let mut start = 0;
    for &len in mu.parts() {
        for j in 0..len {
            images.push(start + (j + 1) % len);
        }
        start += len;
    }
    Permutation { images }
}

/// The n-cycle `1 -> 2 -> ... -> n -> 1`.
pub fn long_cycle(n: usize) -> Permutation {
    canonical_of_type(&Partition::single(n))
}

/// Calls `visit` once for every permutation of cycle type `lambda`
/// (0-based images), in a fixed deterministic order.
///
/// Cycles are generated directly: the smallest unassigned point opens a new
/// cycle of some still-available length, and the remaining points of that
/// cycle are chosen as an ordered tuple of unassigned points.
pub fn for_each_in_class<F: FnMut(&[usize])>(lambda: &Partition, mut visit: F) {
    let n = lambda.n();
    let mut avail: Vec<(usize, usize)> = lambda.multiplicities();
    let mut images = vec![usize::MAX; n];
    let mut used = vec![false; n];

    fn open_cycle<F: FnMut(&[usize])>(
        avail: &mut [(usize, usize)],
        images: &mut [usize],
        used: &mut [bool],
        visit: &mut F,
    ) {
        let Some(s) = used.iter().position(|u| !u) else {
            visit(images);
            return;
        };
        used[s] = true;
        for idx in 0..avail.len() {
            if avail[idx].1 == 0 {
                continue;
            }
            let len = avail[idx].0;
            avail[idx].1 -= 1;
            extend_cycle(s, s, len - 1, avail, images, used, visit);
            avail[idx].1 += 1;
        }
        used[s] = false;
    }

    fn extend_cycle<F: FnMut(&[usize])>(
        start: usize,
        last: usize,
        left: usize,
        avail: &mut [(usize, usize)],
        images: &mut [usize],
        used: &mut [bool],
        visit: &mut F,
    ) {
        if left == 0 {
            images[last] = start;
            open_cycle(avail, images, used, visit);
            return;
        }
        for next in 0..images.len() {
            if used[next] {
                continue;
            }
            used[next] = true;
            images[last] = next;
            extend_cycle(start, next, left - 1, avail, images, used, visit);
            used[next] = false;
        }
    }

    open_cycle(&mut avail, &mut images, &mut used, &mut visit);
}

/// Every permutation of type `lambda`, refusing when `n > cap`.
pub fn enumerate_class(lambda: &Partition, cap: usize) -> Result<Vec<Permutation>> {
    if lambda.n() > cap {
        return Err(Error::CapExceeded {
            what: "class enumeration",
            n: lambda.n(),
            cap,
        });
    }
    let mut out = Vec::new();
    for_each_in_class(lambda, |images| {
        out.push(Permutation::from_zero_based(images.to_vec()))
    });
    Ok(out)
}

/// All of `S_n` in lexicographic order of images.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut a: Vec<usize> = (0..n).collect();
    let mut out = vec![Permutation::from_zero_based(a.clone())];
    loop {
        let Some(i) = (1..n).rev().find(|&i| a[i - 1] < a[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| a[j] > a[i - 1]).unwrap();
        a.swap(i - 1, j);
        a[i..].reverse();
        out.push(Permutation::from_zero_based(a.clone()));
    }
}

/// Row `n` of the signless Stirling numbers of the first kind,
/// `c(n, 0..=n)`, from `c(m+1, k) = m c(m, k) + c(m, k-1)`.
pub fn stirling_first_row(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for m in 0..n {
        let mut next = vec![BigInt::zero(); m + 2];
        for k in 0..=m + 1 {
            if k <= m {
                next[k] += &row[k] * m;
            }
            if k >= 1 {
                next[k] += &row[k - 1];
            }
        }
        row = next;
    }
    row
}

/// `c(n, k)`; zero when `k > n`.
pub fn stirling_first(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    stirling_first_row(n).swap_remove(k)
}
