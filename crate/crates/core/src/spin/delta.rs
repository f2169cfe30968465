use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use super::centralizer::{centralizer_elements, decompose, CentralizerGenerator};
use super::clifford::{lift_bounded, CliffordElement, Lift};
use super::permutation::{all_permutations, conjugacy_classes, Permutation};
use super::{SpinError, DEFAULT_ORACLE_BOUND};

/// Where `δ(g, h)` comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DeltaProvider {
    /// Commutator of Clifford lifts.
    Oracle,
    /// Closed-form signs on centralizer generators.
    Rules,
    /// `δ ≡ 1`, no discrete torsion.
    Trivial,
}

impl DeltaProvider {
    pub const ALL: [DeltaProvider; 3] = [
        DeltaProvider::Oracle,
        DeltaProvider::Rules,
        DeltaProvider::Trivial,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DeltaProvider::Oracle => "oracle",
            DeltaProvider::Rules => "rules",
            DeltaProvider::Trivial => "trivial",
        }
    }

    pub fn delta(self, g: &Permutation, h: &Permutation) -> Result<i8, SpinError> {
        match self {
            DeltaProvider::Oracle => delta_oracle(g, h),
            DeltaProvider::Rules => delta_rules(g, h),
            DeltaProvider::Trivial => {
                check_commuting(g, h)?;
                Ok(1)
            }
        }
    }
}

impl fmt::Display for DeltaProvider {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DeltaProvider {
    type Err = SpinError;

    fn from_str(s: &str) -> Result<Self, SpinError> {
        match s {
            "oracle" => Ok(DeltaProvider::Oracle),
            "rules" => Ok(DeltaProvider::Rules),
            "trivial" | "none" => Ok(DeltaProvider::Trivial),
            other => Err(SpinError::UnknownProvider(other.to_string())),
        }
    }
}

fn check_commuting(g: &Permutation, h: &Permutation) -> Result<(), SpinError> {
    if g.degree() != h.degree() || !g.commutes_with(h) {
        return Err(SpinError::NotInCentralizer {
            g: g.to_string(),
            h: h.to_string(),
        });
    }
    Ok(())
}

fn commutator_sign(g: &Permutation, h: &Permutation, a: &Lift, b: &Lift) -> Result<i8, SpinError> {
    let ab = a.element.mul(&b.element)?;
    let ba = b.element.mul(&a.element)?;
    if ab == ba {
        Ok(1)
    } else if ab == ba.neg() {
        Ok(-1)
    } else {
        Err(SpinError::NotProjectivelyCommuting {
            g: g.to_string(),
            h: h.to_string(),
        })
    }
}

/// `δ(g, h)` from `ĝĥ = δ ĥĝ`, compared termwise.
pub fn delta_oracle(g: &Permutation, h: &Permutation) -> Result<i8, SpinError> {
    delta_oracle_bounded(g, h, DEFAULT_ORACLE_BOUND)
}

pub fn delta_oracle_bounded(
    g: &Permutation,
    h: &Permutation,
    bound: usize,
) -> Result<i8, SpinError> {
    check_commuting(g, h)?;
    commutator_sign(g, h, &lift_bounded(g, bound)?, &lift_bounded(h, bound)?)
}

/// Sign the rules assign to one centralizer generator of `g`.
///
/// Swapping two `j`-cycles gives `(-1)^(j-1)`. Rotating a `j`-cycle gives
/// `1` for odd `j` and `(-1)^(p(g)-1)` per unit of rotation for even `j`.
pub fn rule_sign(g: &Permutation, generator: &CentralizerGenerator) -> i8 {
    match *generator {
        CentralizerGenerator::CycleSwap { j, .. } => {
            if j % 2 == 1 {
                1
            } else {
                -1
            }
        }
        CentralizerGenerator::Rotation { j, power, .. } => {
            if j % 2 == 1 || g.cycle_type().parity() == 1 || power % 2 == 0 {
                1
            } else {
                -1
            }
        }
    }
}

/// `δ(g, h)` as the product of [`rule_sign`] over a decomposition of `h`.
pub fn delta_rules(g: &Permutation, h: &Permutation) -> Result<i8, SpinError> {
    Ok(decompose(g, h)?.iter().map(|x| rule_sign(g, x)).product())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationCheck {
    pub relation: String,
    pub holds: bool,
}

#[derive(Clone, Debug)]
pub struct PresentationReport {
    pub n: usize,
    pub checks: Vec<RelationCheck>,
}

impl PresentationReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &RelationCheck> {
        self.checks.iter().filter(|c| !c.holds)
    }
}

/// Checks the defining relations of the cover on `t̂_i = e_i - e_{i+1}`:
/// `t̂_i^2 = z`, the braid relation, and `t̂_i t̂_j = z t̂_j t̂_i` for
/// `j > i + 1`, with `z = -1` and the unnormalized square `-2`.
pub fn verify_presentation(n: usize) -> Result<PresentationReport, SpinError> {
    if n > DEFAULT_ORACLE_BOUND {
        return Err(SpinError::OracleBound {
            n,
            bound: DEFAULT_ORACLE_BOUND,
        });
    }
    let t: Vec<CliffordElement> = (0..n.saturating_sub(1))
        .map(|i| CliffordElement::transposition_vector(i, i + 1))
        .collect();
    let mut checks = Vec::new();
    for (i, ti) in t.iter().enumerate() {
        checks.push(RelationCheck {
            relation: format!("t{}^2 = z", i + 1),
            holds: ti.mul(ti)? == CliffordElement::scalar(-2),
        });
    }
    for i in 0..t.len().saturating_sub(1) {
        let left = t[i].mul(&t[i + 1])?.mul(&t[i])?;
        let right = t[i + 1].mul(&t[i])?.mul(&t[i + 1])?;
        checks.push(RelationCheck {
            relation: format!("t{a} t{b} t{a} = t{b} t{a} t{b}", a = i + 1, b = i + 2),
            holds: left == right,
        });
    }
    for i in 0..t.len() {
        for j in i + 2..t.len() {
            checks.push(RelationCheck {
                relation: format!("t{a} t{b} = z t{b} t{a}", a = i + 1, b = j + 1),
                holds: t[i].mul(&t[j])? == t[j].mul(&t[i])?.neg(),
            });
        }
    }
    Ok(PresentationReport { n, checks })
}

#[derive(Clone, Debug)]
pub struct DeltaRow {
    pub g: Permutation,
    pub h: Permutation,
    pub oracle: i8,
    pub rules: i8,
    /// Whether the decomposition of `h` swaps cycles of odd length.
    pub odd_swap: bool,
}

impl DeltaRow {
    pub fn agree(&self) -> bool {
        self.oracle == self.rules
    }
}

#[derive(Clone, Debug)]
pub struct DeltaComparison {
    pub n: usize,
    pub rows: Vec<DeltaRow>,
}

impl DeltaComparison {
    pub fn disagreements(&self) -> impl Iterator<Item = &DeltaRow> {
        self.rows.iter().filter(|r| !r.agree())
    }

    pub fn row(&self, g: &Permutation, h: &Permutation) -> Option<&DeltaRow> {
        self.rows.iter().find(|r| &r.g == g && &r.h == h)
    }
}

/// Both providers on every class representative `g` and every `h ∈ C(g)`.
pub fn delta_compare(n: usize, bound: usize) -> Result<DeltaComparison, SpinError> {
    if n > bound {
        return Err(SpinError::OracleBound { n, bound });
    }
    let mut rows = Vec::new();
    for ct in conjugacy_classes(n) {
        let g = ct.representative();
        let g_lift = lift_bounded(&g, bound)?;
        let hs: Vec<Permutation> = centralizer_elements(&g).collect();
        let block: Vec<DeltaRow> = hs
            .into_par_iter()
            .map(|h| {
                let oracle = commutator_sign(&g, &h, &g_lift, &lift_bounded(&h, bound)?)?;
                let word = decompose(&g, &h)?;
                let rules = word.iter().map(|x| rule_sign(&g, x)).product();
                let odd_swap = word
                    .iter()
                    .any(|x| matches!(x, CentralizerGenerator::CycleSwap { j, .. } if j % 2 == 1));
                Ok(DeltaRow {
                    g: g.clone(),
                    h,
                    oracle,
                    rules,
                    odd_swap,
                })
            })
            .collect::<Result<_, SpinError>>()?;
        rows.extend(block);
    }
    Ok(DeltaComparison { n, rows })
}

#[derive(Clone, Debug)]
pub struct GeneratorRow {
    pub g: Permutation,
    pub generator: CentralizerGenerator,
    pub h: Permutation,
    pub oracle: i8,
    pub rules: i8,
}

impl GeneratorRow {
    pub fn agree(&self) -> bool {
        self.oracle == self.rules
    }

    pub fn is_swap(&self) -> bool {
        matches!(self.generator, CentralizerGenerator::CycleSwap { .. })
    }
}

/// Both providers on the individual generators (every cycle swap and every
/// unit rotation) of `C(g)` for each class representative.
pub fn compare_generators(n: usize, bound: usize) -> Result<Vec<GeneratorRow>, SpinError> {
    let mut rows = Vec::new();
    for ct in conjugacy_classes(n) {
        let g = ct.representative();
        let mut generators = Vec::new();
        for (j, a) in ct.parts() {
            for x in 0..a {
                for y in x + 1..a {
                    generators.push(CentralizerGenerator::CycleSwap { j, a: x, b: y });
                }
                if j > 1 {
                    generators.push(CentralizerGenerator::Rotation {
                        j,
                        cycle: x,
                        power: 1,
                    });
                }
            }
        }
        for generator in generators {
            let h = generator.to_permutation(&g);
            rows.push(GeneratorRow {
                oracle: delta_oracle_bounded(&g, &h, bound)?,
                rules: rule_sign(&g, &generator),
                g: g.clone(),
                generator,
                h,
            });
        }
    }
    Ok(rows)
}

/// `δ` on every commuting pair of `S_n`.
pub struct DeltaTable {
    pub n: usize,
    pub provider: DeltaProvider,
    perms: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    values: HashMap<(usize, usize), i8>,
}

impl DeltaTable {
    pub fn build(n: usize, provider: DeltaProvider) -> Result<Self, SpinError> {
        let perms = all_permutations(n);
        let index: HashMap<Permutation, usize> = perms
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        let lifts: Vec<Lift> = match provider {
            DeltaProvider::Oracle => perms
                .par_iter()
                .map(|p| lift_bounded(p, DEFAULT_ORACLE_BOUND))
                .collect::<Result<_, _>>()?,
            _ => Vec::new(),
        };
        let per_g: Vec<Vec<((usize, usize), i8)>> = perms
            .par_iter()
            .enumerate()
            .map(|(gi, g)| {
                centralizer_elements(g)
                    .map(|h| {
                        let hi = index[&h];
                        let d = match provider {
                            DeltaProvider::Oracle => {
                                commutator_sign(g, &h, &lifts[gi], &lifts[hi])?
                            }
                            other => other.delta(g, &h)?,
                        };
                        Ok(((gi, hi), d))
                    })
                    .collect::<Result<Vec<_>, SpinError>>()
            })
            .collect::<Result<_, _>>()?;
        Ok(DeltaTable {
            n,
            provider,
            perms,
            index,
            values: per_g.into_iter().flatten().collect(),
        })
    }

    pub fn pair_count(&self) -> usize {
        self.values.len()
    }

    pub fn get(&self, g: &Permutation, h: &Permutation) -> Option<i8> {
        let gi = *self.index.get(g)?;
        let hi = *self.index.get(h)?;
        self.values.get(&(gi, hi)).copied()
    }

    /// Commuting pairs in a fixed order.
    pub fn pairs(&self) -> Vec<(&Permutation, &Permutation, i8)> {
        let mut keys: Vec<&(usize, usize)> = self.values.keys().collect();
        keys.sort();
        keys.into_iter()
            .map(|k| (&self.perms[k.0], &self.perms[k.1], self.values[k]))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyCheck {
    pub name: &'static str,
    pub checked: usize,
    pub violations: usize,
    pub witness: Option<String>,
}

impl PropertyCheck {
    fn new(name: &'static str) -> Self {
        PropertyCheck {
            name,
            checked: 0,
            violations: 0,
            witness: None,
        }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.violations += 1;
            if self.witness.is_none() {
                self.witness = Some(witness());
            }
        }
    }

    pub fn holds(&self) -> bool {
        self.violations == 0
    }
}

#[derive(Clone, Debug)]
pub struct PropertyReport {
    pub n: usize,
    pub provider: DeltaProvider,
    pub pairs: usize,
    pub checks: Vec<PropertyCheck>,
}

impl PropertyReport {
    pub fn check(&self, name: &str) -> Option<&PropertyCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(PropertyCheck::holds)
    }
}

/// Exhaustive check of the structural properties of `δ` on `S_n`.
///
/// Checks, over all commuting pairs: `values` (±1), `self` (`δ(g,g) = 1`),
/// `reciprocity` (`δ(g,h)δ(h,g) = 1`), `character` (multiplicative in `h`
/// on `C(g)`), `shift` (`δ(g,h) = δ(gh⁻¹,h)`), `swap` (`δ(g,h) = δ(h,g⁻¹)`),
/// `conjugation` (invariance under simultaneous conjugation) and, for
/// `n <= 3`, `trivial`.
pub fn sweep_properties(n: usize, provider: DeltaProvider) -> Result<PropertyReport, SpinError> {
    let table = DeltaTable::build(n, provider)?;
    let lookup = |g: &Permutation, h: &Permutation| {
        table
            .get(g, h)
            .unwrap_or_else(|| panic!("missing pair g={g} h={h}"))
    };
    let mut values = PropertyCheck::new("values");
    let mut selfc = PropertyCheck::new("self");
    let mut recip = PropertyCheck::new("reciprocity");
    let mut character = PropertyCheck::new("character");
    let mut shift = PropertyCheck::new("shift");
    let mut swap = PropertyCheck::new("swap");
    let mut conj = PropertyCheck::new("conjugation");
    let mut trivial = PropertyCheck::new("trivial");
    let adjacent: Vec<Permutation> = (0..n.saturating_sub(1))
        .map(|i| Permutation::transposition(n, i, i + 1))
        .collect();

    for (g, h, d) in table.pairs() {
        let pair = || format!("g={g} h={h}");
        values.record(d == 1 || d == -1, pair);
        if g == h {
            selfc.record(d == 1, pair);
        }
        recip.record(d * lookup(h, g) == 1, pair);
        shift.record(d == lookup(&g.compose(&h.inverse()), h), pair);
        swap.record(d == lookup(h, &g.inverse()), pair);
        for k in &adjacent {
            conj.record(d == lookup(&k.conjugate(g), &k.conjugate(h)), || {
                format!("g={g} h={h} k={k}")
            });
        }
        if n <= 3 {
            trivial.record(d == 1, pair);
        }
    }
    for g in &table.perms {
        let c: Vec<Permutation> = centralizer_elements(g).collect();
        let signs: Vec<i8> = c.iter().map(|h| lookup(g, h)).collect();
        for (h1, s1) in c.iter().zip(&signs) {
            for (h2, s2) in c.iter().zip(&signs) {
                character.record(lookup(g, &h1.compose(h2)) == s1 * s2, || {
                    format!("g={g} h1={h1} h2={h2}")
                });
            }
        }
    }

    let mut checks = vec![values, selfc, recip, character, shift, swap, conj];
    if n <= 3 {
        checks.push(trivial);
    }
    Ok(PropertyReport {
        n,
        provider,
        pairs: table.pair_count(),
        checks,
    })
}
