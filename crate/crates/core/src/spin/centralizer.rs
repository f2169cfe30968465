//! Centralizers `C(g)` as products of wreath products `(Z/j)^{a_j} ⋊ S_{a_j}`.

use super::permutation::{next_permutation, Permutation};
use super::SpinError;

/// Cycles of `g` of one length `j`, each listed from its base point along `g`.
#[derive(Clone, Debug)]
struct Block {
    j: usize,
    cycles: Vec<Vec<usize>>,
}

fn blocks_of(g: &Permutation) -> Vec<Block> {
    let mut blocks: Vec<Block> = Vec::new();
    for cycle in g.cycles() {
        let j = cycle.len();
        match blocks.iter_mut().find(|b| b.j == j) {
            Some(b) => b.cycles.push(cycle),
            None => blocks.push(Block {
                j,
                cycles: vec![cycle],
            }),
        }
    }
    blocks.sort_by_key(|b| b.j);
    blocks
}

/// Lazy enumeration of every element of `C(g)`.
///
/// Each element is given by, per cycle length `j`, a permutation `σ` of the
/// `j`-cycles and a rotation offset `k_i` per cycle: the point `g^s(base_i)`
/// goes to `g^{s + k_i}(base_{σ(i)})`.
pub struct CentralizerIter {
    n: usize,
    blocks: Vec<Block>,
    sigma: Vec<Vec<usize>>,
    rot: Vec<Vec<usize>>,
    done: bool,
}

impl CentralizerIter {
    pub fn new(g: &Permutation) -> Self {
        let blocks = blocks_of(g);
        let sigma = blocks
            .iter()
            .map(|b| (0..b.cycles.len()).collect())
            .collect();
        let rot = blocks.iter().map(|b| vec![0; b.cycles.len()]).collect();
        CentralizerIter {
            n: g.degree(),
            blocks,
            sigma,
            rot,
            done: false,
        }
    }

    fn current(&self) -> Permutation {
        let mut images = vec![0; self.n];
        for (bi, block) in self.blocks.iter().enumerate() {
            let j = block.j;
            for (i, cycle) in block.cycles.iter().enumerate() {
                let target = &block.cycles[self.sigma[bi][i]];
                let k = self.rot[bi][i];
                for s in 0..j {
                    images[cycle[s]] = target[(s + k) % j];
                }
            }
        }
        Permutation::from_zero_based(images)
    }

    fn advance(&mut self) {
        for bi in 0..self.blocks.len() {
            let j = self.blocks[bi].j;
            for k in self.rot[bi].iter_mut() {
                *k += 1;
                if *k < j {
                    return;
                }
                *k = 0;
            }
            if next_permutation(&mut self.sigma[bi]) {
                return;
            }
        }
        self.done = true;
    }
}

impl Iterator for CentralizerIter {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.done {
            return None;
        }
        let out = self.current();
        self.advance();
        Some(out)
    }
}

/// Every element commuting with `g`.
pub fn centralizer_elements(g: &Permutation) -> CentralizerIter {
    CentralizerIter::new(g)
}

/// A generator of `C(g)` in the wreath-product description.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CentralizerGenerator {
    /// `τ(j)_{ab}`: swaps the `j`-cycles with indices `a` and `b` (in
    /// order of smallest element among cycles of that length), matching
    /// their base points.
    CycleSwap { j: usize, a: usize, b: usize },
    /// `c^power` for the `j`-cycle with index `cycle`.
    Rotation {
        j: usize,
        cycle: usize,
        power: usize,
    },
}

impl CentralizerGenerator {
    pub fn cycle_length(&self) -> usize {
        match self {
            CentralizerGenerator::CycleSwap { j, .. }
            | CentralizerGenerator::Rotation { j, .. } => *j,
        }
    }

    /// The permutation this generator denotes for the element `g`.
    pub fn to_permutation(&self, g: &Permutation) -> Permutation {
        let blocks = blocks_of(g);
        let mut images: Vec<usize> = (0..g.degree()).collect();
        match *self {
            CentralizerGenerator::CycleSwap { j, a, b } => {
                let block = blocks
                    .iter()
                    .find(|bl| bl.j == j)
                    .expect("cycle length present");
                let (ca, cb) = (&block.cycles[a], &block.cycles[b]);
                for s in 0..j {
                    images[ca[s]] = cb[s];
                    images[cb[s]] = ca[s];
                }
            }
            CentralizerGenerator::Rotation { j, cycle, power } => {
                let block = blocks
                    .iter()
                    .find(|bl| bl.j == j)
                    .expect("cycle length present");
                let c = &block.cycles[cycle];
                for s in 0..j {
                    images[c[s]] = c[(s + power) % j];
                }
            }
        }
        Permutation::from_zero_based(images)
    }
}

/// Writes `h ∈ C(g)` as `τ_1 ⋯ τ_r · Π rotations`.
///
/// For each cycle length the induced permutation of cycles is split into
/// swaps cycle by cycle, `(i1 ... ir) = (i1 ir) ⋯ (i1 i2)`; what is left
/// after removing those swaps fixes every cycle setwise and is read off as
/// rotations.
pub fn decompose(g: &Permutation, h: &Permutation) -> Result<Vec<CentralizerGenerator>, SpinError> {
    if g.degree() != h.degree() || !g.commutes_with(h) {
        return Err(SpinError::NotInCentralizer {
            g: g.to_string(),
            h: h.to_string(),
        });
    }
    let blocks = blocks_of(g);
    let mut swaps = Vec::new();
    let mut rotations = Vec::new();
    for block in &blocks {
        let j = block.j;
        let a = block.cycles.len();
        // position of every point inside its cycle
        let locate = |x: usize| -> (usize, usize) {
            for (i, c) in block.cycles.iter().enumerate() {
                if let Some(s) = c.iter().position(|&y| y == x) {
                    return (i, s);
                }
            }
            unreachable!("point belongs to a cycle of this length")
        };
        let mut sigma = vec![0; a];
        let mut offset = vec![0; a];
        for (i, cycle) in block.cycles.iter().enumerate() {
            let (target, s) = locate(h.apply(cycle[0]));
            sigma[i] = target;
            offset[i] = s;
        }
        // cycles of σ, each as a swap word
        let mut seen = vec![false; a];
        for start in 0..a {
            if seen[start] {
                continue;
            }
            let mut orbit = vec![start];
            seen[start] = true;
            let mut x = sigma[start];
            while x != start {
                seen[x] = true;
                orbit.push(x);
                x = sigma[x];
            }
            for &other in orbit[1..].iter().rev() {
                swaps.push(CentralizerGenerator::CycleSwap {
                    j,
                    a: orbit[0],
                    b: other,
                });
            }
        }
        // after undoing σ, cycle i is left rotated by its own offset
        for (i, &k) in offset.iter().enumerate() {
            if k != 0 {
                rotations.push(CentralizerGenerator::Rotation {
                    j,
                    cycle: i,
                    power: k,
                });
            }
        }
    }
    swaps.extend(rotations);
    Ok(swaps)
}
