use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use super::SpinError;

/// Permutation of `{1..n}`, stored 0-based as one-line images.
///
/// Products compose right to left: `(g * h)(x) = g(h(x))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// From 1-based one-line notation.
    pub fn from_images(images: &[usize]) -> Result<Self, SpinError> {
        let n = images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::with_capacity(n);
        for &x in images {
            if x == 0 || x > n || seen[x - 1] {
                return Err(SpinError::NotAPermutation(images.to_vec()));
            }
            seen[x - 1] = true;
            out.push(x - 1);
        }
        Ok(Permutation { images: out })
    }

    /// From disjoint 1-based cycles, e.g. `&[&[1, 2], &[3, 4]]` for `(12)(34)`.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self, SpinError> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                let next = cycle[(i + 1) % cycle.len()];
                if x == 0 || x > n || next == 0 || next > n || touched[x - 1] {
                    return Err(SpinError::NotAPermutation(cycle.to_vec()));
                }
                touched[x - 1] = true;
                images[x - 1] = next - 1;
            }
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_zero_based(images: Vec<usize>) -> Self {
        debug_assert!({
            let mut s = images.clone();
            s.sort();
            s.into_iter().enumerate().all(|(i, x)| i == x)
        });
        Permutation { images }
    }

    /// Transposition of the 0-based points `a` and `b`.
    pub(crate) fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut p = Permutation::identity(n);
        p.images.swap(a, b);
        p
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 0-based point `x`.
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Permutation {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { images: inv }
    }

    /// `self * k * self^-1`
    pub fn conjugate(&self, k: &Permutation) -> Permutation {
        self.compose(k).compose(&self.inverse())
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn commutes_with(&self, other: &Permutation) -> bool {
        self.compose(other) == other.compose(self)
    }

    /// All cycles including fixed points, each starting at its smallest
    /// element and listed in order of that element (0-based).
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_type(&self) -> CycleType {
        CycleType::from_lengths(self.degree(), self.cycles().iter().map(Vec::len))
    }

    /// `+1` exactly when [`CycleType::parity`] is 0.
    pub fn sign(&self) -> i8 {
        if self.cycle_type().parity() == 0 {
            1
        } else {
            -1
        }
    }

    /// A transposition factorization `g = t_1 t_2 ... t_L` with
    /// `L = n - #cycles`, as 0-based pairs. Each cycle
    /// `(a1 a2 ... ak)` is written `(a1 ak)(a1 a(k-1)) ... (a1 a2)`.
    pub fn transposition_word(&self) -> Vec<(usize, usize)> {
        let mut word = Vec::new();
        for cycle in self.cycles() {
            for x in cycle[1..].iter().rev() {
                word.push((cycle[0], *x));
            }
        }
        word
    }

    /// Number of orbits of the group generated by `self` and `other`.
    pub fn joint_orbit_count(&self, other: &Permutation) -> usize {
        let n = self.degree();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut orbits = n;
        for x in 0..n {
            for y in [self.images[x], other.images[x]] {
                let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
                if rx != ry {
                    parent[rx] = ry;
                    orbits -= 1;
                }
            }
        }
        orbits
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation without fixed points, 1-based; `()` for the identity.
    /// Points are separated by spaces once the degree reaches 10.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.degree() >= 10 { " " } else { "" };
        let mut any = false;
        for cycle in self.cycles().into_iter().filter(|c| c.len() > 1) {
            any = true;
            let body: Vec<String> = cycle.iter().map(|x| (x + 1).to_string()).collect();
            write!(f, "({})", body.join(sep))?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Conjugacy class of `S_n`: multiplicities `a_j` of `j`-cycles.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleType {
    n: usize,
    /// `multiplicities[j]` is `a_j`; index 0 unused.
    multiplicities: Vec<usize>,
}

impl CycleType {
    pub fn from_lengths(n: usize, lengths: impl IntoIterator<Item = usize>) -> Self {
        let mut multiplicities = vec![0; n + 1];
        for j in lengths {
            multiplicities[j] += 1;
        }
        let ct = CycleType { n, multiplicities };
        debug_assert_eq!(ct.total(), n);
        ct
    }

    /// From a partition of `n` (parts in any order).
    pub fn from_partition(parts: &[usize]) -> Self {
        let n = parts.iter().sum();
        CycleType::from_lengths(n, parts.iter().copied())
    }

    fn total(&self) -> usize {
        self.multiplicities
            .iter()
            .enumerate()
            .map(|(j, a)| j * a)
            .sum()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `a_j`, zero beyond `n`.
    pub fn multiplicity(&self, j: usize) -> usize {
        self.multiplicities.get(j).copied().unwrap_or(0)
    }

    /// `(j, a_j)` for every `a_j > 0`, by increasing `j`.
    pub fn parts(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.multiplicities
            .iter()
            .enumerate()
            .filter(|(_, a)| **a > 0)
            .map(|(j, a)| (j, *a))
    }

    /// Parts as a weakly decreasing list.
    pub fn partition(&self) -> Vec<usize> {
        let mut parts = Vec::new();
        for j in (1..=self.n).rev() {
            parts.extend(std::iter::repeat_n(j, self.multiplicity(j)));
        }
        parts
    }

    /// `p(g) = Σ_{j even} a_j mod 2`.
    pub fn parity(&self) -> u8 {
        (self
            .multiplicities
            .iter()
            .enumerate()
            .filter(|(j, _)| j % 2 == 0 && *j > 0)
            .map(|(_, a)| a)
            .sum::<usize>()
            % 2) as u8
    }

    /// `Π_j j^{a_j} a_j!`
    pub fn centralizer_order(&self) -> BigInt {
        let mut order = BigInt::one();
        for (j, a) in self.parts() {
            order *= BigInt::from(j).pow(a as u32) * factorial(a);
        }
        order
    }

    /// `n! / |C(g)|`
    pub fn class_size(&self) -> BigInt {
        factorial(self.n) / self.centralizer_order()
    }

    /// Canonical representative: cycles on consecutive points, longest first.
    /// `(2,1,1)` gives `(12)`, `(2,2)` gives `(12)(34)`.
    pub fn representative(&self) -> Permutation {
        let mut images: Vec<usize> = (0..self.n).collect();
        let mut start = 0;
        for j in self.partition() {
            for k in 0..j {
                images[start + k] = start + (k + 1) % j;
            }
            start += j;
        }
        Permutation::from_zero_based(images)
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.partition().iter().map(|j| j.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// All partitions of `n`, each weakly decreasing, in reverse lexicographic
/// order starting from `[n]`.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            prefix.push(part);
            go(rest - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// One cycle type per conjugacy class of `S_n`.
pub fn conjugacy_classes(n: usize) -> Vec<CycleType> {
    partitions(n)
        .iter()
        .map(|p| CycleType::from_partition(p).with_degree(n))
        .collect()
}

impl CycleType {
    fn with_degree(mut self, n: usize) -> Self {
        self.multiplicities.resize(n + 1, 0);
        self.n = n;
        self
    }
}

/// Every permutation of `{1..n}` in lexicographic order of images.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut current: Vec<usize> = (0..n).collect();
    let mut out = vec![Permutation::from_zero_based(current.clone())];
    while next_permutation(&mut current) {
        out.push(Permutation::from_zero_based(current.clone()));
    }
    out
}

/// Advances to the next lexicographic permutation; `false` (and reset to
/// sorted order) after the last one.
pub(crate) fn next_permutation(v: &mut [usize]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        v.reverse();
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}
