//! Finite abelian groups presented as products of cyclic factors
//! `Z_{q1} x ... x Z_{qk}`, their elements and their characters.
//!
//! Elements double as character indices: the character attached to `a` is
//! `chi_a(x) = exp(2 pi i * sum_j a_j x_j / q_j)`. Phases are kept as exact
//! integers modulo the group exponent `L = lcm(q_j)`, so the only rounding
//! happens in the final `cos`/`sin` evaluation, and quarter turns are exact.

use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest group order accepted by [`AbelianGroup::new`].
pub const MAX_GROUP_ORDER: u64 = 1 << 62;

/// Default cap on the number of elements any exhaustive enumeration visits.
pub const DEFAULT_ENUMERATION_LIMIT: u64 = 1 << 24;

/// `Z_{q1} x ... x Z_{qk}` with every `q_j >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GroupRepr", into = "GroupRepr")]
pub struct AbelianGroup {
    orders: Vec<u64>,
    order: u64,
    exponent: u64,
    // exponent / q_j
    phase_weights: Vec<u64>,
    boolean: bool,
}

#[derive(Serialize, Deserialize)]
struct GroupRepr {
    orders: Vec<u64>,
}

impl TryFrom<GroupRepr> for AbelianGroup {
    type Error = Error;

    fn try_from(repr: GroupRepr) -> Result<Self> {
        AbelianGroup::new(repr.orders)
    }
}

impl From<AbelianGroup> for GroupRepr {
    fn from(group: AbelianGroup) -> Self {
        GroupRepr { orders: group.orders }
    }
}

/// A residue vector. Used both for group elements and for character indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement(Vec<u64>);

impl GroupElement {
    /// Wraps raw residues without reducing them. Use [`AbelianGroup::element`]
    /// to build a checked element.
    pub fn from_residues(residues: Vec<u64>) -> Self {
        GroupElement(residues)
    }

    pub fn residues(&self) -> &[u64] {
        &self.0
    }

    pub fn into_residues(self) -> Vec<u64> {
        self.0
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, r) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{r}")?;
        }
        f.write_str(")")
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl AbelianGroup {
    pub fn new(orders: Vec<u64>) -> Result<Self> {
        if orders.is_empty() {
            return Err(Error::InvalidParameter(
                "a group needs at least one cyclic factor".into(),
            ));
        }
        let mut order: u64 = 1;
        let mut exponent: u64 = 1;
        for &q in &orders {
            if q < 2 {
                return Err(Error::InvalidParameter(format!("cyclic factor order {q} is below 2")));
            }
            order = order.checked_mul(q).filter(|&o| o <= MAX_GROUP_ORDER).ok_or_else(|| {
                let size = orders.iter().fold(1u128, |acc, &q| acc.saturating_mul(q as u128));
                Error::capacity("group order", size, MAX_GROUP_ORDER)
            })?;
            // exponent divides order, so it cannot overflow once order fits
            exponent = exponent / gcd(exponent, q) * q;
        }
        let phase_weights = orders.iter().map(|&q| exponent / q).collect();
        let boolean = orders.iter().all(|&q| q == 2);
        Ok(AbelianGroup {
            orders,
            order,
            exponent,
            phase_weights,
            boolean,
        })
    }

    /// `Z_q`.
    pub fn cyclic(q: u64) -> Result<Self> {
        Self::new(vec![q])
    }

    /// `Z_2^n`.
    pub fn boolean_cube(n: usize) -> Result<Self> {
        Self::new(vec![2; n])
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    /// `|G|`.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// Number of cyclic factors.
    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    /// `lcm(q_1, ..., q_k)`; every character value is a power of the
    /// primitive root of unity of this order.
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    /// True when every factor is `Z_2`, i.e. the group is a Boolean cube.
    pub fn is_boolean(&self) -> bool {
        self.boolean
    }

    /// `ceil(log2 |G|)`.
    pub fn bit_length(&self) -> u32 {
        ceil_log2(self.order)
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement(vec![0; self.rank()])
    }

    /// Builds an element, reducing each residue modulo its factor order.
    pub fn element(&self, residues: Vec<u64>) -> Result<GroupElement> {
        self.check_len(residues.len())?;
        Ok(GroupElement(
            residues.into_iter().zip(&self.orders).map(|(r, &q)| r % q).collect(),
        ))
    }

    /// True when `e` has the right length and every residue is reduced.
    pub fn contains(&self, e: &GroupElement) -> bool {
        e.0.len() == self.rank() && e.0.iter().zip(&self.orders).all(|(&r, &q)| r < q)
    }

    /// Structural check used by every operation that accepts foreign elements.
    pub fn check(&self, e: &GroupElement) -> Result<()> {
        self.check_len(e.0.len())?;
        if let Some((j, (&r, &q))) = e.0.iter().zip(&self.orders).enumerate().find(|(_, (&r, &q))| r >= q) {
            return Err(Error::InvalidParameter(format!(
                "residue {r} at coordinate {j} is not reduced modulo {q}"
            )));
        }
        Ok(())
    }

    fn check_len(&self, got: usize) -> Result<()> {
        if got != self.rank() {
            return Err(Error::Dimension {
                expected: self.rank(),
                got,
            });
        }
        Ok(())
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(GroupElement(
            a.0.iter()
                .zip(&b.0)
                .zip(&self.orders)
                .map(|((&x, &y), &q)| ((x as u128 + y as u128) % q as u128) as u64)
                .collect(),
        ))
    }

    pub fn neg(&self, a: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        Ok(GroupElement(
            a.0.iter().zip(&self.orders).map(|(&x, &q)| (q - x) % q).collect(),
        ))
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.add(a, &self.neg(b)?)
    }

    /// Position of `e` in the lexicographic enumeration (last coordinate
    /// varies fastest). For Boolean cubes this is the bitmask of `e` with
    /// coordinate 0 as the most significant bit.
    pub fn index_of(&self, e: &GroupElement) -> u64 {
        e.0.iter().zip(&self.orders).fold(0, |acc, (&r, &q)| acc * q + r)
    }

    /// Inverse of [`index_of`](Self::index_of). `index` is taken modulo `|G|`.
    pub fn element_at(&self, index: u64) -> GroupElement {
        let mut rest = index % self.order;
        let mut residues = vec![0; self.rank()];
        for (slot, &q) in residues.iter_mut().zip(&self.orders).rev() {
            *slot = rest % q;
            rest /= q;
        }
        GroupElement(residues)
    }

    /// All elements in lexicographic order, refusing groups above `limit`.
    pub fn enumerate_with_limit(&self, limit: u64) -> Result<Elements<'_>> {
        self.ensure_enumerable(limit)?;
        Ok(Elements { group: self, next: 0 })
    }

    /// All elements in lexicographic order, up to [`DEFAULT_ENUMERATION_LIMIT`].
    pub fn enumerate(&self) -> Result<Elements<'_>> {
        self.enumerate_with_limit(DEFAULT_ENUMERATION_LIMIT)
    }

    pub(crate) fn ensure_enumerable(&self, limit: u64) -> Result<()> {
        if self.order > limit {
            return Err(Error::capacity("group", self.order as u128, limit));
        }
        Ok(())
    }

    /// Numerator `n` of the phase `chi_a(x) = exp(2 pi i n / L)`, with
    /// `L = exponent()` and `0 <= n < L`. Symmetric in `a` and `x`.
    pub(crate) fn phase_raw(&self, a: &[u64], x: &[u64]) -> u64 {
        let l = self.exponent as u128;
        let mut acc: u128 = 0;
        for ((&aj, &xj), (&q, &w)) in a.iter().zip(x).zip(self.orders.iter().zip(&self.phase_weights)) {
            let prod = (aj as u128 * xj as u128) % q as u128;
            acc = (acc + prod * w as u128) % l;
        }
        acc as u64
    }

    /// Checked phase numerator; see [`unit_root`].
    pub fn phase(&self, a: &GroupElement, x: &GroupElement) -> Result<u64> {
        self.check(a)?;
        self.check(x)?;
        Ok(self.phase_raw(&a.0, &x.0))
    }

    /// `chi_a(x)`. Boolean cubes take the integer sign path; all other
    /// groups go through [`character_value_general`](Self::character_value_general).
    pub fn character_value(&self, a: &GroupElement, x: &GroupElement) -> Result<Complex64> {
        if self.boolean {
            Ok(Complex64::new(f64::from(self.character_sign(a, x)?), 0.0))
        } else {
            self.character_value_general(a, x)
        }
    }

    /// `chi_a(x)` through the trigonometric route, for any group.
    pub fn character_value_general(&self, a: &GroupElement, x: &GroupElement) -> Result<Complex64> {
        Ok(unit_root(self.phase(a, x)?, self.exponent))
    }

    /// `(-1)^{(a,x)}` for Boolean cubes.
    pub fn character_sign(&self, a: &GroupElement, x: &GroupElement) -> Result<i8> {
        if !self.boolean {
            return Err(Error::Usage(
                "sign characters exist only for Boolean cubes Z_2^n".into(),
            ));
        }
        self.check(a)?;
        self.check(x)?;
        let parity = a.0.iter().zip(&x.0).fold(0, |acc, (&u, &v)| acc ^ (u & v));
        Ok(if parity == 0 { 1 } else { -1 })
    }
}

/// `exp(2 pi i n / l)` for `0 <= n < l`. Multiples of a quarter turn are
/// returned exactly.
pub fn unit_root(n: u64, l: u64) -> Complex64 {
    let n = n % l;
    let four_n = n as u128 * 4;
    if four_n.is_multiple_of(l as u128) {
        return match four_n / l as u128 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    let angle = TAU * (n as f64 / l as f64);
    Complex64::new(angle.cos(), angle.sin())
}

/// `ceil(log2 n)` for `n >= 1`.
pub fn ceil_log2(n: u64) -> u32 {
    if n <= 1 {
        0
    } else {
        64 - (n - 1).leading_zeros()
    }
}

/// Iterator over a group's elements in lexicographic order.
pub struct Elements<'a> {
    group: &'a AbelianGroup,
    next: u64,
}

impl Iterator for Elements<'_> {
    type Item = GroupElement;

    fn next(&mut self) -> Option<GroupElement> {
        if self.next >= self.group.order {
            return None;
        }
        let e = self.group.element_at(self.next);
        self.next += 1;
        Some(e)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.group.order - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for Elements<'_> {}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn el(v: &[u64]) -> GroupElement {
        GroupElement::from_residues(v.to_vec())
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn identity_is_all_zero() {
        let g = AbelianGroup::new(vec![4, 2]).unwrap();
        assert_eq!(g.identity(), el(&[0, 0]));
        assert_eq!(AbelianGroup::cyclic(2).unwrap().identity(), el(&[0]));
        assert_eq!(AbelianGroup::cyclic(6).unwrap().identity(), el(&[0]));
    }

    #[test]
    fn arithmetic_examples() {
        let z4 = AbelianGroup::cyclic(4).unwrap();
        assert_eq!(z4.add(&el(&[3]), &el(&[2])).unwrap(), el(&[1]));
        let z2z2 = AbelianGroup::boolean_cube(2).unwrap();
        assert_eq!(z2z2.add(&el(&[1, 0]), &el(&[1, 1])).unwrap(), el(&[0, 1]));
        let z6 = AbelianGroup::cyclic(6).unwrap();
        assert_eq!(z6.neg(&el(&[2])).unwrap(), el(&[4]));
        assert_eq!(z6.sub(&el(&[1]), &el(&[5])).unwrap(), el(&[2]));
    }

    #[test]
    fn dimension_mismatch_is_structural() {
        let g = AbelianGroup::new(vec![3, 5]).unwrap();
        let err = g.add(&el(&[1]), &el(&[1, 1])).unwrap_err();
        assert!(matches!(err, Error::Dimension { expected: 2, got: 1 }));
        assert!(g.character_value(&el(&[1, 2, 3]), &el(&[0, 0])).is_err());
        assert!(g.check(&el(&[3, 0])).is_err());
    }

    #[test]
    fn construction_limits() {
        assert!(AbelianGroup::new(vec![]).is_err());
        assert!(AbelianGroup::new(vec![1, 2]).is_err());
        assert!(AbelianGroup::boolean_cube(62).is_ok());
        assert!(matches!(AbelianGroup::boolean_cube(63), Err(Error::Capacity { .. })));
        let g = AbelianGroup::new(vec![4, 6, 10]).unwrap();
        assert_eq!(g.order(), 240);
        assert_eq!(g.exponent(), 60);
    }

    #[test]
    fn character_examples() {
        let z4 = AbelianGroup::cyclic(4).unwrap();
        assert_eq!(
            z4.character_value(&el(&[1]), &el(&[2])).unwrap(),
            Complex64::new(-1.0, 0.0)
        );

        let cube = AbelianGroup::boolean_cube(3).unwrap();
        assert_eq!(
            cube.character_value(&el(&[1, 0, 1]), &el(&[1, 1, 1])).unwrap(),
            Complex64::new(1.0, 0.0)
        );
        assert_eq!(cube.character_sign(&el(&[1, 0, 1]), &el(&[1, 0, 0])).unwrap(), -1);

        let z6 = AbelianGroup::cyclic(6).unwrap();
        let v = z6.character_value(&el(&[1]), &el(&[1])).unwrap();
        assert!(close(v, Complex64::new(0.5, 3f64.sqrt() / 2.0), 1e-12));
    }

    #[test]
    fn enumeration_order() {
        let g = AbelianGroup::boolean_cube(2).unwrap();
        let all: Vec<_> = g.enumerate().unwrap().collect();
        assert_eq!(all, vec![el(&[0, 0]), el(&[0, 1]), el(&[1, 0]), el(&[1, 1])]);

        let z3: Vec<_> = AbelianGroup::cyclic(3).unwrap().enumerate().unwrap().collect();
        assert_eq!(z3, vec![el(&[0]), el(&[1]), el(&[2])]);

        let c3: Vec<_> = AbelianGroup::boolean_cube(3).unwrap().enumerate().unwrap().collect();
        assert_eq!(c3.len(), 8);
        assert_eq!(c3[0], el(&[0, 0, 0]));
        assert_eq!(c3[7], el(&[1, 1, 1]));
    }

    #[test]
    fn enumeration_capacity_names_limit() {
        let g = AbelianGroup::boolean_cube(30).unwrap();
        match g.enumerate().err().unwrap() {
            Error::Capacity { limit, .. } => assert_eq!(limit, DEFAULT_ENUMERATION_LIMIT),
            e => panic!("unexpected {e}"),
        }
        assert!(g.enumerate_with_limit(1 << 30).is_ok());
    }

    #[test]
    fn index_round_trip() {
        let g = AbelianGroup::new(vec![3, 4, 2]).unwrap();
        for (i, e) in g.enumerate().unwrap().enumerate() {
            assert_eq!(g.index_of(&e), i as u64);
        }
    }

    fn small_groups() -> Vec<AbelianGroup> {
        [
            vec![2],
            vec![7],
            vec![2, 2, 2],
            vec![4, 2],
            vec![3, 3],
            vec![2, 3, 5],
            vec![8, 8],
            vec![6, 4, 2],
        ]
        .into_iter()
        .map(|o| AbelianGroup::new(o).unwrap())
        .collect()
    }

    #[test]
    fn multiplicativity_and_conjugation_exhaustive() {
        for g in small_groups().into_iter().filter(|g| g.order() <= 64) {
            let all: Vec<_> = g.enumerate().unwrap().collect();
            for a in &all {
                let na = g.neg(a).unwrap();
                for x in &all {
                    let cx = g.character_value(a, x).unwrap();
                    assert!((cx.norm() - 1.0).abs() <= 1e-12);
                    assert_eq!(cx, g.character_value(x, a).unwrap());
                    assert!(close(g.character_value(&na, x).unwrap(), cx.conj(), 1e-12));
                    for y in &all {
                        let lhs = g.character_value(a, &g.add(x, y).unwrap()).unwrap();
                        let rhs = cx * g.character_value(a, y).unwrap();
                        assert!(close(lhs, rhs, 1e-12), "{g:?} {a} {x} {y}");
                    }
                }
            }
        }
    }

    #[test]
    fn orthogonality_exhaustive() {
        for g in small_groups() {
            let all: Vec<_> = g.enumerate().unwrap().collect();
            for a in all.iter().skip(1) {
                let s: Complex64 = all.iter().map(|x| g.character_value(a, x).unwrap()).sum();
                assert!(s.norm() <= 1e-9 * g.order() as f64, "{a} {s}");
            }
        }
    }

    #[test]
    fn group_json_shape() {
        let g = AbelianGroup::new(vec![4, 2]).unwrap();
        assert_eq!(serde_json::to_string(&g).unwrap(), r#"{"orders":[4,2]}"#);
        let back: AbelianGroup = serde_json::from_str(r#"{"orders":[4,2]}"#).unwrap();
        assert_eq!(back, g);
        assert!(serde_json::from_str::<AbelianGroup>(r#"{"orders":[1]}"#).is_err());
        assert_eq!(serde_json::to_string(&el(&[3, 1])).unwrap(), "[3,1]");
    }

    #[test]
    fn ceil_log2_values() {
        assert_eq!(ceil_log2(1), 0);
        assert_eq!(ceil_log2(2), 1);
        assert_eq!(ceil_log2(12), 4);
        assert_eq!(ceil_log2(256), 8);
        assert_eq!(ceil_log2(257), 9);
    }

    proptest! {
        #[test]
        fn multiplicativity_random(
            orders in prop::collection::vec(2u64..1000, 1..4),
            seed in any::<u64>(),
        ) {
            let g = AbelianGroup::new(orders).unwrap();
            let pick = |s: u64| g.element_at(crate::rng::splitmix64(s));
            let (a, x, y) = (pick(seed), pick(seed ^ 1), pick(seed ^ 2));
            let lhs = g.character_value(&a, &g.add(&x, &y).unwrap()).unwrap();
            let rhs = g.character_value(&a, &x).unwrap() * g.character_value(&a, &y).unwrap();
            prop_assert!(close(lhs, rhs, 1e-12));
            prop_assert!((lhs.norm() - 1.0).abs() <= 1e-12);
            let conj = g.character_value(&g.neg(&a).unwrap(), &x).unwrap();
            prop_assert!(close(conj, g.character_value(&a, &x).unwrap().conj(), 1e-12));
        }
    }
}
