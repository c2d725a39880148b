//! Growth invariants of transitive faithful permutation actions: the
//! minimal index drop a_π, its restriction to normal subgroups, and the
//! derived rational exponents m_π, m_reg, m(G).

use crate::bitset::BitSet;
use crate::perm::{Perm, PermGroup};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum MalleError {
    #[error("the trivial group has no non-identity elements")]
    TrivialGroup,
    #[error("the restricted subgroup is trivial")]
    TrivialSubgroup,
    #[error("N is not a normal subgroup")]
    NotNormal,
    #[error("the action is not transitive")]
    NotTransitive,
    #[error("the action is not faithful")]
    NotFaithful,
}

/// A transitive, faithful permutation action of a group. `images[e]` is the
/// permutation of {0..n-1} by which element `e` acts.
pub struct PermAction<'a> {
    pub group: &'a PermGroup,
    pub degree: usize,
    pub images: Vec<Perm>,
}

impl<'a> PermAction<'a> {
    /// The group acting on its own points (it must be transitive there).
    pub fn natural(group: &'a PermGroup) -> Result<Self, MalleError> {
        if !group.is_transitive() {
            return Err(MalleError::NotTransitive);
        }
        let images: Vec<Perm> = (0..group.order())
            .map(|e| group.elements[e].clone())
            .collect();
        let a = PermAction { group, degree: group.degree, images };
        a.validate()?;
        Ok(a)
    }

    /// The right regular action on the element set.
    pub fn regular(group: &'a PermGroup) -> Result<Self, MalleError> {
        let n = group.order();
        let images: Vec<Perm> = (0..n)
            .map(|e| {
                // x ↦ e·x; a left translation is a permutation of elements.
                let img: Vec<u16> = (0..n).map(|x| group.mul(e, x) as u16).collect();
                Perm::from_images(img)
            })
            .collect();
        let a = PermAction { group, degree: n, images };
        a.validate()?;
        Ok(a)
    }

    /// Action on the cosets of a point stabilizer — here: any transitive
    /// action given explicitly by generator images is realized upstream;
    /// this constructor checks an arbitrary explicit assignment.
    pub fn explicit(group: &'a PermGroup, images: Vec<Perm>) -> Result<Self, MalleError> {
        let degree = images[0].degree();
        let a = PermAction { group, degree, images };
        a.validate()?;
        Ok(a)
    }

    fn validate(&self) -> Result<(), MalleError> {
        assert_eq!(self.images.len(), self.group.order());
        // Homomorphism (spot-checked exhaustively on generators × elements),
        // faithfulness, transitivity.
        for e in 0..self.group.order() {
            for gp in self.group.gens.iter() {
                let gid = self.group.id_of(gp).unwrap();
                let lhs = &self.images[self.group.mul(gid, e)];
                let rhs = self.images[gid].compose(&self.images[e]);
                assert_eq!(lhs.images(), rhs.images(), "action is not a homomorphism");
            }
        }
        for e in 1..self.group.order() {
            if self.images[e].is_identity() {
                return Err(MalleError::NotFaithful);
            }
        }
        // Transitivity: orbit of point 0 under generators.
        let mut seen = vec![false; self.degree];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for gp in self.group.gens.iter() {
                let y = gp_apply(&self.images, self.group, gp, x);
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        if count != self.degree {
            return Err(MalleError::NotTransitive);
        }
        Ok(())
    }

    /// n − #Orb_π(g): the index drop of one element.
    pub fn index_drop(&self, e: usize) -> usize {
        self.degree - self.images[e].orbit_count()
    }
}

fn gp_apply(images: &[Perm], group: &PermGroup, gp: &Perm, x: usize) -> usize {
    let gid = group.id_of(gp).unwrap();
    images[gid].apply(x)
}

/// a_π(G) = min over non-identity g of (n − #Orb_π(g)). The drop is a class
/// function, so class representatives suffice.
pub fn a_pi(action: &PermAction) -> Result<usize, MalleError> {
    if action.group.order() == 1 {
        return Err(MalleError::TrivialGroup);
    }
    Ok(action
        .group
        .classes()
        .iter()
        .skip(1)
        .map(|c| action.index_drop(c.rep))
        .min()
        .unwrap())
}

/// a_π(G, N′) restricted to the non-identity elements of N′; None when N′
/// is trivial from the caller's perspective is an error instead.
pub fn a_pi_restricted(action: &PermAction, nprime: &BitSet) -> Result<usize, MalleError> {
    if nprime.count() <= 1 {
        return Err(MalleError::TrivialSubgroup);
    }
    Ok(action
        .group
        .classes()
        .iter()
        .skip(1)
        .filter(|c| nprime.contains(c.rep))
        .map(|c| action.index_drop(c.rep))
        .min()
        .unwrap())
}

fn admissible_nprimes(g: &PermGroup, n_set: &BitSet) -> Vec<BitSet> {
    g.normal_subgroups()
        .into_iter()
        .filter(|np| np.count() > 1 && !n_set.is_subset(np))
        .collect()
}

/// m_π(G,N) = max over nontrivial normal N′ with N ⊄ N′ of 1/a_π(G,N′);
/// zero when no admissible N′ exists.
pub fn m_pi(action: &PermAction, n_set: &BitSet) -> Result<BigRational, MalleError> {
    if !action.group.is_normal(n_set) {
        return Err(MalleError::NotNormal);
    }
    let mut best = BigRational::zero();
    for np in admissible_nprimes(action.group, n_set) {
        let a = a_pi_restricted(action, &np)?;
        let v = BigRational::new(BigInt::from(1), BigInt::from(a as i64));
        if v > best {
            best = v;
        }
    }
    Ok(best)
}

/// Closed form for the regular action:
/// max over admissible N′ of max_{1≠g∈N′} |⟨g⟩| / (|G|(|⟨g⟩|−1)).
/// The inner quotient is 1/a_reg(G,N′) because the orbits of g acting by
/// translation are the |G|/|⟨g⟩| cosets of ⟨g⟩.
pub fn m_reg(g: &PermGroup, n_set: &BitSet) -> Result<BigRational, MalleError> {
    if !g.is_normal(n_set) {
        return Err(MalleError::NotNormal);
    }
    let mut best = BigRational::zero();
    for np in admissible_nprimes(g, n_set) {
        let mut inner = BigRational::zero();
        for c in g.classes().iter().skip(1) {
            if !np.contains(c.rep) {
                continue;
            }
            let m = c.order as i64;
            let v = BigRational::new(BigInt::from(m), BigInt::from(g.order() as i64 * (m - 1)));
            if v > inner {
                inner = v;
            }
        }
        if inner > best {
            best = inner;
        }
    }
    Ok(best)
}

/// m(G): the N = G case of m_reg, ranging over nontrivial proper normal
/// subgroups. Zero for simple (or trivial) G.
pub fn m_of_g(g: &PermGroup) -> BigRational {
    let mut full = BitSet::new(g.order());
    for i in 0..g.order() {
        full.insert(i);
    }
    m_reg(g, &full).expect("the full group is normal")
}

/// (1/8 − 27/(32 n)) / n!, exact; negative for small n.
pub fn structural_exponent(n: u64) -> Result<(BigRational, bool), MalleError> {
    if n < 2 {
        return Err(MalleError::TrivialGroup);
    }
    let base = BigRational::new(BigInt::from(1), BigInt::from(8))
        - BigRational::new(BigInt::from(27), BigInt::from(32 * n as i64));
    let mut fact = BigInt::from(1);
    for k in 2..=n {
        fact *= BigInt::from(k);
    }
    let v = base / BigRational::from_integer(fact);
    let nonpositive = !v.is_positive();
    Ok((v, nonpositive))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::smallgroups::{alternating, by_name, cyclic, symmetric};

    #[test]
    fn a_pi_natural_examples() {
        let s5 = symmetric(5, 1000).unwrap();
        let act = PermAction::natural(&s5).unwrap();
        assert_eq!(a_pi(&act).unwrap(), 1);
        let c5 = cyclic(5, 10).unwrap();
        let act = PermAction::natural(&c5).unwrap();
        assert_eq!(a_pi(&act).unwrap(), 4);
        let a5 = alternating(5, 100).unwrap();
        let act = PermAction::natural(&a5).unwrap();
        assert_eq!(a_pi(&act).unwrap(), 2);
    }

    #[test]
    fn a_pi_restricted_examples() {
        let s4 = symmetric(4, 100).unwrap();
        let act = PermAction::natural(&s4).unwrap();
        let v4 = s4.normal_subgroups().into_iter().find(|s| s.count() == 4).unwrap();
        assert_eq!(a_pi_restricted(&act, &v4).unwrap(), 2);
        let s5 = symmetric(5, 1000).unwrap();
        let act = PermAction::natural(&s5).unwrap();
        let a5 = s5.normal_subgroups().into_iter().find(|s| s.count() == 60).unwrap();
        assert_eq!(a_pi_restricted(&act, &a5).unwrap(), 2);
        // min only grows when restricting
        assert!(a_pi(&act).unwrap() <= a_pi_restricted(&act, &a5).unwrap());
    }

    #[test]
    fn regular_drop_closed_form() {
        // n − #Orb(g) = |G|(1 − 1/ord g) in the regular action.
        let g = symmetric(3, 10).unwrap();
        let act = PermAction::regular(&g).unwrap();
        for c in g.classes().iter().skip(1) {
            let expect = g.order() - g.order() / c.order;
            assert_eq!(act.index_drop(c.rep), expect);
        }
    }

    #[test]
    fn m_values() {
        // m(S3) = 1/4 (N′ = A3, order-3 elements: 3/(6·2)).
        let s3 = symmetric(3, 10).unwrap();
        assert_eq!(m_of_g(&s3), BigRational::new(1.into(), 4.into()));
        // m(A4) = 1/6 (N′ = V4: 2/(12·1)).
        let a4 = alternating(4, 100).unwrap();
        assert_eq!(m_of_g(&a4), BigRational::new(1.into(), 6.into()));
        // m(S4) = 1/12.
        let s4 = symmetric(4, 100).unwrap();
        assert_eq!(m_of_g(&s4), BigRational::new(1.into(), 12.into()));
        // Simple: m(A5) = 0.
        let a5 = alternating(5, 100).unwrap();
        assert!(m_of_g(&a5).is_zero());
    }

    #[test]
    fn m_pi_regular_matches_m_reg() {
        for name in ["S3", "S4", "A4", "D4", "Q8", "C6", "C12", "D6"] {
            let g = by_name(name, 100).unwrap();
            let act = PermAction::regular(&g).unwrap();
            let mut full = BitSet::new(g.order());
            for i in 0..g.order() {
                full.insert(i);
            }
            assert_eq!(m_pi(&act, &full).unwrap(), m_reg(&g, &full).unwrap(), "{name}");
            // And for each nontrivial proper normal N.
            for n in g.normal_subgroups() {
                if n.count() <= 1 {
                    continue;
                }
                assert_eq!(m_pi(&act, &n).unwrap(), m_reg(&g, &n).unwrap(), "{name}");
            }
        }
    }

    #[test]
    fn m_pi_zero_cases() {
        // (S_n, A_n): the normals are 1, A_n, S_n; every nontrivial one
        // contains A_n, so no admissible N′ exists.
        let s5 = symmetric(5, 1000).unwrap();
        let a5 = s5.normal_subgroups().into_iter().find(|s| s.count() == 60).unwrap();
        assert!(m_reg(&s5, &a5).unwrap().is_zero());
        // Unique minimal normal subgroup ⇒ m = 0 for N that subgroup.
        let a4 = alternating(4, 100).unwrap();
        let mins = a4.minimal_normal_subgroups();
        assert_eq!(mins.len(), 1);
        assert!(m_reg(&a4, &mins[0]).unwrap().is_zero());
    }

    #[test]
    fn structural_exponent_values() {
        let (v, flag) = structural_exponent(7).unwrap();
        assert_eq!(v, BigRational::new(1.into(), 1128960.into()));
        assert!(!flag);
        let (v, flag) = structural_exponent(2).unwrap();
        assert!(v.is_negative() && flag);
        assert!(structural_exponent(1).is_err());
    }

    #[test]
    fn action_validation_errors() {
        let s4 = symmetric(4, 100).unwrap();
        assert!(PermAction::natural(&s4).is_ok());
        // A non-faithful explicit action: everything acts trivially.
        let ims: Vec<Perm> = (0..s4.order()).map(|_| Perm::identity(1)).collect();
        assert!(matches!(PermAction::explicit(&s4, ims), Err(MalleError::NotFaithful)));
    }
}
