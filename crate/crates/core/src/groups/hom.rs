use num_bigint::BigInt;
use num_traits::Zero;

use super::{AbelianGroup, FGAbelianElement, GroupError};
use crate::thickset::{SymmetricSet, Symbolic};

/// A homomorphism between finitely generated abelian groups, given by the
/// images of the standard generators (free generators first).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupHom {
    domain: AbelianGroup,
    codomain: AbelianGroup,
    images: Vec<FGAbelianElement>,
}

impl GroupHom {
    /// Checks that every image lies in the codomain and that
    /// `c_i * image(e_i) = 0` for each torsion generator of order `c_i`.
    pub fn new(
        domain: AbelianGroup,
        codomain: AbelianGroup,
        images: Vec<FGAbelianElement>,
    ) -> Result<Self, GroupError> {
        if images.len() != domain.num_generators() {
            return Err(GroupError::Invalid(format!(
                "expected {} generator images, got {}",
                domain.num_generators(),
                images.len()
            )));
        }
        for img in &images {
            if !codomain.contains(img) {
                return Err(GroupError::NotInGroup(img.to_string()));
            }
        }
        for (j, c) in domain.moduli().iter().enumerate() {
            let i = domain.rank() + j;
            if !images[i].scale(c).is_zero() {
                return Err(GroupError::IllDefinedHom { generator: i, order: c.clone() });
            }
        }
        Ok(GroupHom { domain, codomain, images })
    }

    /// The projection of `Z^r ⊕ ...` onto free coordinate `axis`, as a map to `Z`.
    pub fn projection(domain: AbelianGroup, axis: usize) -> Result<Self, GroupError> {
        let codomain = AbelianGroup::free(1);
        let images = (0..domain.num_generators())
            .map(|i| {
                if i == axis {
                    codomain.generator(0)
                } else {
                    codomain.zero()
                }
            })
            .collect();
        Self::new(domain, codomain, images)
    }

    /// Reduction `Z -> Z/k`.
    pub fn reduction(k: u64) -> Result<Self, GroupError> {
        let codomain = AbelianGroup::torsion(&[k]);
        let img = codomain.generator(0);
        Self::new(AbelianGroup::free(1), codomain, vec![img])
    }

    pub fn domain(&self) -> &AbelianGroup {
        &self.domain
    }

    pub fn codomain(&self) -> &AbelianGroup {
        &self.codomain
    }

    pub fn images(&self) -> &[FGAbelianElement] {
        &self.images
    }

    /// Image by generator expansion.
    pub fn apply(&self, x: &FGAbelianElement) -> Result<FGAbelianElement, GroupError> {
        if !self.domain.contains(x) {
            return Err(GroupError::NotInGroup(x.to_string()));
        }
        let mut acc = self.codomain.zero();
        for (coord, img) in x.coordinates().iter().zip(&self.images) {
            if !coord.is_zero() {
                acc = acc.add(&img.scale(coord));
            }
        }
        Ok(acc)
    }

    /// Image of an integer when the domain is `Z`.
    pub fn apply_int(&self, n: &BigInt) -> Result<FGAbelianElement, GroupError> {
        let x = self.domain.element(vec![n.clone()], vec![])?;
        self.apply(&x)
    }
}

pub fn hom_apply(h: &GroupHom, x: &FGAbelianElement) -> Result<FGAbelianElement, GroupError> {
    h.apply(x)
}

/// The preimage `h^{-1}(S)`; symmetric because `h(-x) = -h(x)`.
pub fn hom_preimage(h: &GroupHom, s: &SymmetricSet<FGAbelianElement>) -> SymmetricSet<FGAbelianElement> {
    let h2 = h.clone();
    let s2 = s.clone();
    SymmetricSet::from_oracle(
        move |x: &FGAbelianElement| match h2.apply(x) {
            Ok(y) => s2.contains(&y),
            Err(_) => Ok(false),
        },
        Symbolic::Preimage(format!("{} -> {}", h.domain.signature(), h.codomain.signature())),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::thickset::{max_independent_set, SearchLimits};

    #[test]
    fn projection_picks_first_coordinate() {
        let h = GroupHom::projection(AbelianGroup::free(2), 0).unwrap();
        let x = FGAbelianElement::new(vec![3, 7], vec![], vec![]).unwrap();
        assert_eq!(h.apply(&x).unwrap().free, vec![BigInt::from(3)]);
    }

    #[test]
    fn preimage_of_subgroup_of_z6_is_3z() {
        let h = GroupHom::reduction(6).unwrap();
        let z6 = h.codomain().clone();
        let s = SymmetricSet::finite(&z6, &[z6.zero(), z6.element(vec![], vec![3.into()]).unwrap()]);
        let pre = hom_preimage(&h, &s);
        for n in -60i64..=60 {
            let x = FGAbelianElement::new(vec![n], vec![], vec![]).unwrap();
            assert_eq!(pre.contains(&x).unwrap(), n % 3 == 0, "n = {n}");
        }
    }

    #[test]
    fn torsion_relation_is_checked() {
        // e_0 of order 2 sent to a generator of Z/3
        let dom = AbelianGroup::torsion(&[2]);
        let cod = AbelianGroup::torsion(&[3]);
        let err = GroupHom::new(dom, cod.clone(), vec![cod.generator(0)]).unwrap_err();
        assert!(matches!(err, GroupError::IllDefinedHom { generator: 0, .. }));
        // order 2 into Z/4 via 2 is fine
        let dom = AbelianGroup::torsion(&[2]);
        let cod = AbelianGroup::torsion(&[4]);
        let img = cod.element(vec![], vec![2.into()]).unwrap();
        assert!(GroupHom::new(dom, cod, vec![img]).is_ok());
    }

    #[test]
    fn preimage_keeps_thickness_on_window() {
        // {0,3} is 3-thick in Z/6 (any 3 residues have two differing by 0 or 3? no:
        // {0,1,2} is independent), so compute the thickness and compare.
        let h = GroupHom::reduction(6).unwrap();
        let z6 = h.codomain().clone();
        let s = SymmetricSet::finite(&z6, &[z6.zero(), z6.element(vec![], vec![3.into()]).unwrap()]);
        let universe_cod: Vec<FGAbelianElement> =
            (0..6).map(|i| z6.element(vec![], vec![i.into()]).unwrap()).collect();
        let cod_size = max_independent_set(&z6, &s, &universe_cod, SearchLimits::default()).unwrap();
        let pre = hom_preimage(&h, &s);
        let zz = AbelianGroup::free(1);
        let window: Vec<FGAbelianElement> =
            (-30..=30).map(|n| zz.element(vec![BigInt::from(n)], vec![]).unwrap()).collect();
        let dom_size = max_independent_set(&zz, &pre, &window, SearchLimits::default()).unwrap();
        assert!(dom_size.size() <= cod_size.size());
        assert_eq!(cod_size.size(), 3);
    }
}
