use std::collections::{BTreeSet, HashSet};

use super::f2::{F2Matrix, F2Vector};
use crate::error::{Error, Result};

/// Largest genus for which the mod-2 image is enumerated element by element
/// (`|Sp₆(𝔽₂)| = 1451520`).
pub const MAX_ENUMERATION_GENUS: usize = 3;

/// `|Sp_{2g}(𝔽₂)| = 2^{g²} Π_{i=1}^{g} (4^i − 1)`.
pub fn sp_order_f2(genus: u32) -> u128 {
    let mut order = 1u128 << (genus * genus);
    for i in 1..=genus {
        order *= (1u128 << (2 * i)) - 1;
    }
    order
}

/// A finite subgroup of `Sp_{2g}(𝔽₂)` listed element by element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroupEnumeration {
    genus: usize,
    generators: Vec<F2Matrix>,
    /// Packed encodings ([`F2Matrix::pack`]), sorted ascending.
    elements: Vec<u64>,
}

impl FiniteGroupEnumeration {
    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[F2Matrix] {
        &self.generators
    }

    pub fn packed_elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn elements(&self) -> impl Iterator<Item = F2Matrix> + '_ {
        self.elements.iter().map(|&p| F2Matrix::unpack(self.genus, p))
    }

    pub fn contains(&self, m: &F2Matrix) -> bool {
        m.genus() == self.genus && m.pack().is_some_and(|p| self.elements.binary_search(&p).is_ok())
    }

    pub fn is_full(&self) -> bool {
        self.order() as u128 == sp_order_f2(self.genus as u32)
    }
}

/// Breadth-first closure of `generators` inside `Sp_{2g}(𝔽₂)`, `g ≤ 3`.
///
/// Each frontier is sorted before expansion so the traversal order is
/// reproducible; the element set itself does not depend on it.
pub fn generated_subgroup_mod2(genus: usize, generators: &[F2Matrix]) -> Result<FiniteGroupEnumeration> {
    if genus == 0 {
        return Err(Error::InvalidInput("genus must be positive".into()));
    }
    if genus > MAX_ENUMERATION_GENUS {
        return Err(Error::GuardExceeded {
            what: "genus for subgroup enumeration",
            size: genus as u128,
            limit: MAX_ENUMERATION_GENUS as u128,
        });
    }
    for (i, g) in generators.iter().enumerate() {
        if g.genus() != genus {
            return Err(Error::DimensionMismatch(format!("generator {i} has genus {}", g.genus())));
        }
        if !g.is_symplectic() {
            return Err(Error::InvalidInput(format!("generator {i} is not symplectic mod 2")));
        }
    }
    let gens: BTreeSet<F2Matrix> = generators.iter().filter(|g| !g.is_identity()).cloned().collect();
    let gens: Vec<F2Matrix> = gens.into_iter().collect();

    let identity = F2Matrix::identity(genus).pack().expect("g ≤ 3 packs");
    let mut seen: HashSet<u64> = HashSet::from([identity]);
    let mut frontier = vec![identity];
    while !frontier.is_empty() {
        frontier.sort_unstable();
        let mut next = Vec::new();
        for &packed in &frontier {
            let x = F2Matrix::unpack(genus, packed);
            for s in &gens {
                let y = s.mul(&x).pack().expect("g ≤ 3 packs");
                if seen.insert(y) {
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    let mut elements: Vec<u64> = seen.into_iter().collect();
    elements.sort_unstable();
    Ok(FiniteGroupEnumeration { genus, generators: generators.to_vec(), elements })
}

/// Orbit of `v` under the group generated by `generators` (any genus whose
/// homology fits in 2²⁰ vectors).
pub fn orbit_mod2(v: F2Vector, generators: &[F2Matrix]) -> Result<BTreeSet<F2Vector>> {
    if let Some(g) = generators.first() {
        if g.genus() > 10 {
            return Err(Error::GuardExceeded { what: "genus for orbit search", size: g.genus() as u128, limit: 10 });
        }
    }
    let mut orbit = BTreeSet::from([v]);
    let mut stack = vec![v];
    while let Some(x) = stack.pop() {
        for s in generators {
            let y = s.apply(x);
            if orbit.insert(y) {
                stack.push(y);
            }
        }
    }
    Ok(orbit)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn transvections(genus: usize, vs: &[u64]) -> Vec<F2Matrix> {
        vs.iter().map(|&v| F2Matrix::transvection(genus, v).unwrap()).collect()
    }

    #[test]
    fn order_formula() {
        assert_eq!(sp_order_f2(1), 6);
        assert_eq!(sp_order_f2(2), 720);
        assert_eq!(sp_order_f2(3), 1_451_520);
    }

    #[test]
    fn empty_generators_give_trivial_group() {
        let g = generated_subgroup_mod2(2, &[]).unwrap();
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn genus_one_transvections_generate_sp2() {
        let g = generated_subgroup_mod2(1, &transvections(1, &[0b01, 0b10])).unwrap();
        assert_eq!(g.order(), 6);
        assert!(g.is_full());
    }

    #[test]
    fn genus_two_transvections_generate_sp4() {
        // a₁, b₁, a₂, b₂, a₁ + a₂
        let g = generated_subgroup_mod2(2, &transvections(2, &[0b0001, 0b0010, 0b0100, 0b1000, 0b0101])).unwrap();
        assert_eq!(g.order(), 720);
    }

    #[test]
    fn disconnected_handles_give_a_product() {
        let g = generated_subgroup_mod2(2, &transvections(2, &[0b0001, 0b0010, 0b0100, 0b1000])).unwrap();
        assert_eq!(g.order(), 36);
    }

    #[test]
    fn closure_is_idempotent() {
        let g = generated_subgroup_mod2(2, &transvections(2, &[0b0001, 0b0110, 0b1000])).unwrap();
        let all: Vec<F2Matrix> = g.elements().collect();
        let again = generated_subgroup_mod2(2, &all).unwrap();
        assert_eq!(again.packed_elements(), g.packed_elements());
        for x in g.elements() {
            for y in g.elements().take(20) {
                assert!(g.contains(&x.mul(&y)));
            }
        }
    }

    #[test]
    fn genus_guard() {
        assert!(matches!(
            generated_subgroup_mod2(4, &[]),
            Err(Error::GuardExceeded { .. })
        ));
    }

    #[test]
    fn orbit_of_nonzero_vectors_under_full_group() {
        let gens = transvections(2, &[0b0001, 0b0010, 0b0100, 0b1000, 0b0101]);
        assert_eq!(orbit_mod2(0b0001, &gens).unwrap().len(), 15);
    }
}
