//! Integer Clifford algebra with `e_i^2 = -1`, `e_i e_k = -e_k e_i`.
//!
//! Basis monomials `e_S` are indexed by bitmasks of the (0-based) generator
//! set `S`, written in ascending order. A transposition `(a b)` lifts to the
//! unnormalized vector `e_a - e_b`, which squares to `-2`; normalization
//! factors are carried as a separate power of two and never enter the
//! coefficients.

use std::collections::BTreeMap;
use std::fmt;

use super::permutation::Permutation;
use super::SpinError;

/// Largest number of generators the bitmask representation supports.
pub const MAX_GENERATORS: usize = 32;

/// Sign of `e_A e_B` relative to `e_{A xor B}`.
///
/// Moving each generator of `B` left past the larger generators of `A`
/// costs one sign each; every shared generator then squares to `-1`.
pub fn basis_product_sign(a: u32, b: u32) -> i64 {
    let mut swaps = 0u32;
    let mut rest = b;
    while rest != 0 {
        let i = rest.trailing_zeros();
        rest &= rest - 1;
        let above = if i == 31 { 0 } else { a >> (i + 1) };
        swaps += above.count_ones();
    }
    swaps += (a & b).count_ones();
    if swaps.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CliffordElement {
    terms: BTreeMap<u32, i64>,
}

impl CliffordElement {
    pub fn zero() -> Self {
        CliffordElement::default()
    }

    pub fn scalar(c: i64) -> Self {
        let mut x = CliffordElement::zero();
        if c != 0 {
            x.terms.insert(0, c);
        }
        x
    }

    /// `e_{i+1}` for the 0-based index `i`.
    pub fn generator(i: usize) -> Self {
        assert!(i < MAX_GENERATORS);
        CliffordElement {
            terms: BTreeMap::from([(1u32 << i, 1)]),
        }
    }

    /// `c * e_S` for the 0-based generator set encoded in `mask`.
    pub fn monomial(mask: u32, c: i64) -> Self {
        let mut x = CliffordElement::zero();
        if c != 0 {
            x.terms.insert(mask, c);
        }
        x
    }

    /// `e_a - e_b` for 0-based `a != b`.
    pub fn transposition_vector(a: usize, b: usize) -> Self {
        assert!(a != b && a < MAX_GENERATORS && b < MAX_GENERATORS);
        CliffordElement {
            terms: BTreeMap::from([(1u32 << a, 1), (1u32 << b, -1)]),
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, i64)> + '_ {
        self.terms.iter().map(|(m, c)| (*m, *c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some(c)` when the element is the scalar `c`.
    pub fn as_scalar(&self) -> Option<i64> {
        match self.terms.len() {
            0 => Some(0),
            1 => self.terms.get(&0).copied(),
            _ => None,
        }
    }

    /// Parity of the monomial lengths, `None` if mixed.
    pub fn grade_parity(&self) -> Option<u32> {
        let mut parities = self.terms.keys().map(|m| m.count_ones() % 2);
        let first = parities.next()?;
        parities.all(|p| p == first).then_some(first)
    }

    pub fn neg(&self) -> Self {
        CliffordElement {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, SpinError> {
        let mut out = self.terms.clone();
        for (m, c) in &other.terms {
            let entry = out.entry(*m).or_insert(0);
            *entry = entry
                .checked_add(*c)
                .ok_or(SpinError::CoefficientOverflow)?;
            if *entry == 0 {
                out.remove(m);
            }
        }
        Ok(CliffordElement { terms: out })
    }

    /// Exact product; fails only if a coefficient leaves `i64`.
    pub fn mul(&self, other: &Self) -> Result<Self, SpinError> {
        let mut out: BTreeMap<u32, i64> = BTreeMap::new();
        for (&ma, &ca) in &self.terms {
            for (&mb, &cb) in &other.terms {
                let c = ca
                    .checked_mul(cb)
                    .and_then(|c| c.checked_mul(basis_product_sign(ma, mb)))
                    .ok_or(SpinError::CoefficientOverflow)?;
                let entry = out.entry(ma ^ mb).or_insert(0);
                *entry = entry.checked_add(c).ok_or(SpinError::CoefficientOverflow)?;
            }
        }
        out.retain(|_, c| *c != 0);
        Ok(CliffordElement { terms: out })
    }
}

impl fmt::Display for CliffordElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{c:+}")?;
            if *m != 0 {
                write!(f, "*e")?;
                let idx: Vec<String> = (0..32)
                    .filter(|k| m >> k & 1 == 1)
                    .map(|k| (k + 1).to_string())
                    .collect();
                write!(f, "{}", idx.join("."))?;
            }
        }
        Ok(())
    }
}

/// Unnormalized lift of a permutation: the product of `length` transposition
/// vectors. The normalized element is `element / 2^(length/2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lift {
    pub element: CliffordElement,
    pub length: usize,
}

/// Lift along an explicit 0-based transposition word `t_1 t_2 ⋯ t_L`.
pub fn lift_word(word: &[(usize, usize)]) -> Result<Lift, SpinError> {
    let mut element = CliffordElement::scalar(1);
    for &(a, b) in word {
        element = element.mul(&CliffordElement::transposition_vector(a, b))?;
    }
    Ok(Lift {
        element,
        length: word.len(),
    })
}

/// Lift via [`Permutation::transposition_word`], subject to `bound` on the degree.
pub fn lift_bounded(g: &Permutation, bound: usize) -> Result<Lift, SpinError> {
    if g.degree() > bound.min(MAX_GENERATORS) {
        return Err(SpinError::OracleBound {
            n: g.degree(),
            bound,
        });
    }
    lift_word(&g.transposition_word())
}

/// Lift with the default oracle bound.
pub fn lift(g: &Permutation) -> Result<Lift, SpinError> {
    lift_bounded(g, super::DEFAULT_ORACLE_BOUND)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spin::permutation::all_permutations;

    fn e(i: usize) -> CliffordElement {
        CliffordElement::generator(i - 1)
    }

    #[test]
    fn generators_anticommute_and_square_to_minus_one() {
        let e12 = CliffordElement::monomial(0b11, 1);
        assert_eq!(e(1).mul(&e(2)).unwrap(), e12);
        assert_eq!(e(2).mul(&e(1)).unwrap(), e12.neg());
        assert_eq!(e(3).mul(&e(3)).unwrap(), CliffordElement::scalar(-1));
    }

    #[test]
    fn transposition_vector_squares_to_minus_two() {
        let v = CliffordElement::transposition_vector(0, 1);
        assert_eq!(v.mul(&v).unwrap(), CliffordElement::scalar(-2));
    }

    #[test]
    fn disjoint_vectors_anticommute() {
        let u = CliffordElement::transposition_vector(0, 1);
        let w = CliffordElement::transposition_vector(2, 3);
        assert_eq!(u.mul(&w).unwrap(), w.mul(&u).unwrap().neg());
    }

    #[test]
    fn product_is_associative_on_monomials() {
        for a in 0u32..16 {
            for b in 0u32..16 {
                for c in 0u32..16 {
                    let (x, y, z) = (
                        CliffordElement::monomial(a, 1),
                        CliffordElement::monomial(b, 1),
                        CliffordElement::monomial(c, 1),
                    );
                    let left = x.mul(&y).unwrap().mul(&z).unwrap();
                    let right = x.mul(&y.mul(&z).unwrap()).unwrap();
                    assert_eq!(left, right);
                }
            }
        }
    }

    #[test]
    fn lifts_of_small_permutations() {
        assert_eq!(
            lift(&Permutation::identity(3)).unwrap().element,
            CliffordElement::scalar(1)
        );
        let t = Permutation::from_cycles(3, &[&[1, 2]]).unwrap();
        assert_eq!(
            lift(&t).unwrap().element,
            CliffordElement::transposition_vector(0, 1)
        );
    }

    #[test]
    fn lift_times_lift_of_inverse_is_scalar() {
        for g in all_permutations(5) {
            let a = lift(&g).unwrap();
            let b = lift(&g.inverse()).unwrap();
            assert_eq!(a.length, b.length);
            let s = a.element.mul(&b.element).unwrap().as_scalar().unwrap();
            assert_eq!(s.abs(), 1 << a.length, "g = {g}");
            assert_eq!(a.element.grade_parity().unwrap() as usize, a.length % 2);
        }
    }

    #[test]
    fn oracle_bound_is_enforced() {
        let g = Permutation::identity(11);
        assert!(matches!(lift(&g), Err(SpinError::OracleBound { .. })));
        assert!(lift_bounded(&g, 12).is_ok());
    }
}
