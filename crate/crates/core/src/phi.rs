//! The map from decreasing chains of the intersection lattice to the lower
//! Bruhat interval: a chain with labels `j_1 < ... < j_m` is sent to
//! `t_{j_1} ... t_{j_m} w`.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::arrangement::{build_lattice, decreasing_chains, DecreasingChain, IntersectionLattice, SetPartition};
use crate::bruhat::{self, bruhat_leq};
use crate::error::{Error, Result};
use crate::patterns::is_chromobruhatic;
use crate::perm::{Permutation, ReducedExpression};

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct PhiImage {
    pub chain: DecreasingChain,
    /// `p(C) = t_{j_1} ... t_{j_m}`.
    pub product: Permutation,
    /// `p(C) w`.
    pub image: Permutation,
}

/// The partition of `[n]` into orbits of `p`.
pub fn orbit_partition(p: &Permutation) -> SetPartition {
    (1..=p.n()).fold(SetPartition::discrete(p.n()), |acc, i| acc.merge(i, p.image(i)))
}

/// The map for one permutation and reduced expression, with its lattice.
#[derive(Clone, Debug)]
pub struct PhiMap {
    w: Permutation,
    lattice: IntersectionLattice,
    checks: bool,
}

impl PhiMap {
    /// Eager invariant checks are on by default.
    pub fn new(w: &Permutation, expr: &ReducedExpression) -> Result<Self> {
        Ok(PhiMap {
            w: *w,
            lattice: build_lattice(w, expr)?,
            checks: true,
        })
    }

    pub fn with_checks(mut self, checks: bool) -> Self {
        self.checks = checks;
        self
    }

    pub fn w(&self) -> &Permutation {
        &self.w
    }

    pub fn lattice(&self) -> &IntersectionLattice {
        &self.lattice
    }

    pub fn chains(&self) -> Vec<DecreasingChain> {
        decreasing_chains(&self.lattice)
    }

    pub fn product(&self, chain: &DecreasingChain) -> Permutation {
        let hyperplanes = self.lattice.hyperplanes();
        chain.labels.iter().fold(Permutation::identity(self.w.n()).expect("size already checked"), |acc, &j| {
            acc.compose_unchecked(&hyperplanes[j - 1].to_permutation(self.w.n()))
        })
    }

    pub fn apply(&self, chain: &DecreasingChain) -> Result<PhiImage> {
        chain.validate(&self.lattice)?;
        let product = self.product(chain);
        let image = product.compose_unchecked(&self.w);
        if self.checks {
            if !bruhat_leq(&image, &self.w)? {
                return Err(Error::InvariantViolation(format!("image {image} is not below {}", self.w)));
            }
            if product.absolute_length() != chain.len() {
                return Err(Error::InvariantViolation(format!(
                    "product {} of chain {} has absolute length {}",
                    product.cycle_string(),
                    chain.label_word(),
                    product.absolute_length()
                )));
            }
            if orbit_partition(&product) != *chain.top() {
                return Err(Error::InvariantViolation(format!(
                    "orbits of {} differ from the chain top {}",
                    product.cycle_string(),
                    chain.top()
                )));
            }
        }
        Ok(PhiImage {
            chain: chain.clone(),
            product,
            image,
        })
    }

    /// Images of every decreasing chain, in chain order.
    pub fn images(&self) -> Result<Vec<PhiImage>> {
        self.chains().par_iter().map(|c| self.apply(c)).collect()
    }
}

/// Image of one chain under the map for `(w, expr)`.
pub fn phi(chain: &DecreasingChain, w: &Permutation, expr: &ReducedExpression) -> Result<PhiImage> {
    PhiMap::new(w, expr)?.apply(chain)
}

/// One row of the chain table.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct PhiRow {
    /// The chain as `0 < 12|3|4 < 123|4`.
    pub chain: String,
    pub labels: Vec<usize>,
    /// Label word such as `t1t2`.
    pub word: String,
    /// `p(C)` in cycle notation.
    pub product: String,
    /// Canonical reduced expression of the image.
    pub image_word: String,
    pub image: Permutation,
}

impl PhiRow {
    fn of(image: &PhiImage) -> Self {
        let chain = std::iter::once("0".to_string())
            .chain(image.chain.chain[1..].iter().map(|x| x.to_string()))
            .collect::<Vec<_>>()
            .join(" < ");
        PhiRow {
            chain,
            labels: image.chain.labels.clone(),
            word: image.chain.label_word(),
            product: image.product.cycle_string(),
            image_word: ReducedExpression::canonical(&image.image).to_string(),
            image: image.image,
        }
    }

    /// Tab-separated: chain, label word, image word, image.
    pub fn to_line(&self) -> String {
        format!("{}\t{}\t{}\t{}", self.chain, self.word, self.image_word, self.image)
    }
}

pub fn phi_table(w: &Permutation, expr: &ReducedExpression) -> Result<Vec<PhiRow>> {
    Ok(PhiMap::new(w, expr)?.images()?.iter().map(PhiRow::of).collect())
}

/// Whether no two chains share an image.
pub fn verify_injective(w: &Permutation, expr: &ReducedExpression) -> Result<bool> {
    injective(&PhiMap::new(w, expr)?)
}

pub fn injective(map: &PhiMap) -> Result<bool> {
    let images = map.images()?;
    let distinct: HashSet<Permutation> = images.iter().map(|i| i.image).collect();
    Ok(distinct.len() == images.len())
}

/// Whether every element of `[e, w]` is hit, with the missed elements in
/// lexicographic order.
pub fn verify_surjective(w: &Permutation, expr: &ReducedExpression) -> Result<(bool, Vec<Permutation>)> {
    surjective(&PhiMap::new(w, expr)?)
}

pub fn surjective(map: &PhiMap) -> Result<(bool, Vec<Permutation>)> {
    let images: HashSet<Permutation> = map.images()?.into_iter().map(|i| i.image).collect();
    let missed: Vec<Permutation> = bruhat::interval(map.w()).into_iter().filter(|u| !images.contains(u)).collect();
    Ok((missed.is_empty(), missed))
}

/// Every chain's partial products `t_{j_i} ... t_{j_m} w` strictly descend
/// from `w`, and each image sits at directed distance exactly `m` from `w`.
pub fn verify_going_down(w: &Permutation, expr: &ReducedExpression) -> Result<bool> {
    let map = PhiMap::new(w, expr)?;
    let hyperplanes = map.lattice().hyperplanes();
    let distances = bruhat::distances_to(w);
    for chain in map.chains() {
        let mut current = *w;
        for &j in chain.labels.iter().rev() {
            let t = hyperplanes[j - 1];
            let next = current.swap_positions(t.i, t.j);
            if next == current || !bruhat_leq(&next, &current)? {
                return Ok(false);
            }
            current = next;
        }
        let image = map.apply(&chain)?;
        debug_assert_eq!(image.image, current);
        match distances.get(&current) {
            Some(&d) if d as usize == chain.len() => {}
            _ => return Ok(false),
        }
    }
    Ok(true)
}

/// A `u < w` whose directed distance exceeds the absolute length of `u w^{-1}`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct DistanceGap {
    pub u: Permutation,
    pub directed: u32,
    pub absolute: usize,
}

/// All `u < w` with `al(u, w) != l'(u w^{-1})`, in lexicographic order.
pub fn distance_gaps(w: &Permutation) -> Vec<DistanceGap> {
    let inv = w.inverse();
    let mut gaps: Vec<DistanceGap> = bruhat::distances_to(w)
        .into_iter()
        .filter_map(|(u, d)| {
            let absolute = u.compose_unchecked(&inv).absolute_length();
            (d as usize != absolute).then_some(DistanceGap { u, directed: d, absolute })
        })
        .collect();
    gaps.sort_by_key(|g| g.u);
    gaps
}

/// Whether "`al(u, w) = l'(u w^{-1})` for all `u <= w`" agrees with pattern avoidance.
pub fn verify_characterization(w: &Permutation) -> bool {
    distance_gaps(w).is_empty() == is_chromobruhatic(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::region_count;
    use crate::chromatics::acyclic_orientations;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn canonical(s: &str) -> (Permutation, ReducedExpression) {
        let w = p(s);
        let e = ReducedExpression::canonical(&w);
        (w, e)
    }

    #[test]
    fn table_of_4132() {
        let (w, e) = canonical("4132");
        let rows: Vec<(String, String, String)> = phi_table(&w, &e)
            .unwrap()
            .into_iter()
            .map(|r| (r.word, r.image_word, r.image.to_string()))
            .collect();
        let expected = [
            ("e", "s1s2s3s2", "4132"),
            ("t1", "s2s3s2", "1432"),
            ("t1t2", "s3s2", "1342"),
            ("t1t2t4", "s3", "1243"),
            ("t1t3", "e", "1234"),
            ("t1t3t4", "s2", "1324"),
            ("t1t4", "s2s3", "1423"),
            ("t2", "s1s3s2", "3142"),
            ("t2t4", "s1s3", "2143"),
            ("t3", "s1", "2134"),
            ("t3t4", "s1s2", "3124"),
            ("t4", "s1s2s3", "4123"),
        ];
        let expected: Vec<(String, String, String)> =
            expected.iter().map(|(a, b, c)| (a.to_string(), b.to_string(), c.to_string())).collect();
        assert_eq!(rows, expected);
    }

    #[test]
    fn row_rendering() {
        let (w, e) = canonical("4132");
        let table = phi_table(&w, &e).unwrap();
        assert_eq!(table[0].to_line(), "0\te\ts1s2s3s2\t4132");
        assert_eq!(table[3].to_line(), "0 < 12|3|4 < 123|4 < 1234\tt1t2t4\ts3\t1243");
        assert_eq!(table[3].product, "(1 2 4 3)");
        let json = serde_json::to_value(&table[8]).unwrap();
        assert_eq!(json["labels"], serde_json::json!([2, 4]));
        assert_eq!(json["image"], "2143");
    }

    #[test]
    fn empty_chain_maps_to_w() {
        let (w, e) = canonical("35124");
        let map = PhiMap::new(&w, &e).unwrap();
        let image = map.apply(&map.chains()[0]).unwrap();
        assert!(image.product.is_identity());
        assert_eq!(image.image, w);
        assert_eq!(phi(&map.chains()[0], &w, &e).unwrap(), image);
    }

    #[test]
    fn rejects_mislabelled_chain() {
        let (w, e) = canonical("4132");
        let map = PhiMap::new(&w, &e).unwrap();
        let mut chain = map.chains()[2].clone();
        assert_eq!(chain.labels, [1, 2]);
        chain.labels = vec![1, 3];
        assert_eq!(map.apply(&chain), Err(Error::NotDecreasing));
    }

    #[test]
    fn identity_is_trivially_bijective() {
        let (w, e) = canonical("123");
        assert!(verify_injective(&w, &e).unwrap());
        assert_eq!(verify_surjective(&w, &e).unwrap(), (true, vec![]));
        assert!(verify_going_down(&w, &e).unwrap());
        assert!(verify_characterization(&w));
    }

    #[test]
    fn image_of_4231() {
        let (w, e) = canonical("4231");
        assert!(verify_injective(&w, &e).unwrap());
        let (surjective, missed) = verify_surjective(&w, &e).unwrap();
        assert!(!surjective);
        let re = region_count(&w);
        assert_eq!(re, acyclic_orientations(&w.inversion_graph()));
        assert_eq!(missed.len() as u64, bruhat::interval_size(&w) - re);
        let even = missed.iter().filter(|u| u.length() % 2 == 0).count();
        assert_eq!(2 * even, missed.len());
    }

    #[test]
    fn gaps_of_4231() {
        let gaps = distance_gaps(&p("4231"));
        assert!(gaps.iter().any(|g| g.u == p("1324") && g.absolute == 2 && g.directed == 4));
        assert!(gaps.iter().all(|g| g.directed as usize > g.absolute));
        assert!(verify_characterization(&p("4231")));
    }

    #[test]
    fn exhaustive_on_s5() {
        for n in 1..=5 {
            for w in Permutation::all(n).unwrap() {
                let e = ReducedExpression::canonical(&w);
                let images = PhiMap::new(&w, &e).unwrap().images().unwrap();
                for image in &images {
                    let m = image.chain.len();
                    let drop = w.length() - image.image.length();
                    assert!(drop >= m && (drop - m) % 2 == 0, "{w}");
                }
                assert!(verify_injective(&w, &e).unwrap(), "{w}");
                let (surjective, _) = verify_surjective(&w, &e).unwrap();
                assert_eq!(surjective, is_chromobruhatic(&w), "{w}");
                assert!(verify_going_down(&w, &e).unwrap(), "{w}");
                assert!(verify_characterization(&w), "{w}");
            }
        }
    }

    #[test]
    fn injective_for_every_expression_on_s4() {
        for w in Permutation::all(4).unwrap() {
            let mut images_per_expr = Vec::new();
            for e in ReducedExpression::all_for(&w) {
                assert!(verify_injective(&w, &e).unwrap(), "{w} {e}");
                images_per_expr.push(PhiMap::new(&w, &e).unwrap().images().unwrap().len());
            }
            assert!(images_per_expr.windows(2).all(|p| p[0] == p[1]));
        }
    }

    #[test]
    fn unchecked_mode_gives_same_images() {
        let (w, e) = canonical("53412");
        let checked = PhiMap::new(&w, &e).unwrap().images().unwrap();
        let fast = PhiMap::new(&w, &e).unwrap().with_checks(false).images().unwrap();
        assert_eq!(checked, fast);
    }
}
