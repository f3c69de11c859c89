use std::collections::{BTreeMap, VecDeque};
use std::fmt::Debug;
use std::hash::Hash;

use rayon::prelude::*;
use serde_json::{json, Value};

use super::pgroup::PGroup;
use crate::error::{Error, Result};
use crate::flag::unipotent_fixed_check;
use crate::linalg::{enumerate_group, GfMatrix, GroupKind, MatrixGroup, Prime};

/// A finite group that homomorphisms may land in.
pub trait HomTarget: Sync {
    type Elem: Clone + Eq + Ord + Hash + Debug + Send + Sync;

    /// Every element, in a fixed order.
    fn elements(&self) -> Vec<Self::Elem>;
    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn render(&self, a: &Self::Elem) -> String;

    fn order(&self) -> usize {
        self.elements().len()
    }

    /// `c x c⁻¹`.
    fn conjugate(&self, c: &Self::Elem, x: &Self::Elem) -> Self::Elem {
        self.mul(&self.mul(c, x), &self.inv(c))
    }
}

/// `(Z/p)^n` written additively as coordinate vectors.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct VectorGroup {
    pub n: usize,
    pub p: Prime,
}

impl HomTarget for VectorGroup {
    type Elem = Vec<u8>;

    fn elements(&self) -> Vec<Vec<u8>> {
        let q = self.p.get() as usize;
        (0..q.pow(self.n as u32))
            .map(|x| {
                (0..self.n)
                    .map(|i| (x / q.pow(i as u32) % q) as u8)
                    .collect()
            })
            .collect()
    }
    fn identity(&self) -> Vec<u8> {
        vec![0; self.n]
    }
    fn mul(&self, a: &Vec<u8>, b: &Vec<u8>) -> Vec<u8> {
        a.iter().zip(b).map(|(&x, &y)| self.p.add(x, y)).collect()
    }
    fn inv(&self, a: &Vec<u8>) -> Vec<u8> {
        a.iter().map(|&x| self.p.neg(x)).collect()
    }
    fn render(&self, a: &Vec<u8>) -> String {
        format!("{a:?}")
    }
    fn order(&self) -> usize {
        (self.p.get() as usize).pow(self.n as u32)
    }
    fn conjugate(&self, _: &Vec<u8>, x: &Vec<u8>) -> Vec<u8> {
        x.clone()
    }
}

impl HomTarget for MatrixGroup {
    type Elem = GfMatrix;

    fn elements(&self) -> Vec<GfMatrix> {
        MatrixGroup::elements(self).to_vec()
    }
    fn identity(&self) -> GfMatrix {
        GfMatrix::identity(self.prime(), self.degree())
    }
    fn mul(&self, a: &GfMatrix, b: &GfMatrix) -> GfMatrix {
        a.mul(b)
    }
    fn inv(&self, a: &GfMatrix) -> GfMatrix {
        a.inverse().expect("group elements are invertible")
    }
    fn render(&self, a: &GfMatrix) -> String {
        a.to_string()
    }
    fn order(&self) -> usize {
        MatrixGroup::order(self)
    }
}

impl HomTarget for PGroup {
    type Elem = usize;

    fn elements(&self) -> Vec<usize> {
        (0..self.order()).collect()
    }
    fn identity(&self) -> usize {
        0
    }
    fn mul(&self, a: &usize, b: &usize) -> usize {
        PGroup::mul(self, *a, *b)
    }
    fn inv(&self, a: &usize) -> usize {
        PGroup::inv(self, *a)
    }
    fn render(&self, a: &usize) -> String {
        a.to_string()
    }
    fn order(&self) -> usize {
        PGroup::order(self)
    }
}

/// A homomorphism out of a [`PGroup`], stored as the image of every element.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupHom<E> {
    images: Vec<E>,
}

impl<E: Clone + Eq> GroupHom<E> {
    /// Wraps a table of images without checking it.
    pub fn from_images(images: Vec<E>) -> Self {
        GroupHom { images }
    }

    pub fn image(&self, g: usize) -> &E {
        &self.images[g]
    }

    pub fn images(&self) -> &[E] {
        &self.images
    }

    /// Sorted element ids of the kernel.
    pub fn kernel(&self) -> Vec<usize> {
        (0..self.images.len())
            .filter(|&g| self.images[g] == self.images[0])
            .collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.images.iter().all(|x| *x == self.images[0])
    }

    /// The distinct values taken.
    pub fn image_set(&self) -> Vec<E>
    where
        E: Ord,
    {
        let mut out = self.images.clone();
        out.sort();
        out.dedup();
        out
    }

    /// Checks `f(xy) = f(x) f(y)` on every pair.
    pub fn is_homomorphism<T: HomTarget<Elem = E>>(&self, source: &PGroup, target: &T) -> bool {
        self.images.len() == source.order()
            && (0..source.order()).all(|x| {
                (0..source.order()).all(|y| {
                    self.images[source.mul(x, y)] == target.mul(&self.images[x], &self.images[y])
                })
            })
    }

    /// `c f c⁻¹`.
    pub fn conjugate<T: HomTarget<Elem = E>>(&self, target: &T, c: &E) -> GroupHom<E> {
        GroupHom {
            images: self.images.iter().map(|x| target.conjugate(c, x)).collect(),
        }
    }
}

/// Extends generator images along a breadth-first walk of the Cayley graph, rejecting the
/// assignment as soon as two paths disagree.
fn extend<T: HomTarget>(
    g: &PGroup,
    target: &T,
    gen_images: &[T::Elem],
) -> Option<GroupHom<T::Elem>> {
    let mut images: Vec<Option<T::Elem>> = vec![None; g.order()];
    images[0] = Some(target.identity());
    let mut queue = VecDeque::from([0]);
    while let Some(x) = queue.pop_front() {
        let fx = images[x].clone().unwrap();
        for (s, fs) in g.generators().iter().zip(gen_images) {
            let y = g.mul(x, *s);
            let fy = target.mul(&fx, fs);
            match &images[y] {
                Some(existing) if *existing != fy => return None,
                Some(_) => {}
                None => {
                    images[y] = Some(fy);
                    queue.push_back(y);
                }
            }
        }
    }
    Some(GroupHom {
        images: images.into_iter().map(Option::unwrap).collect(),
    })
}

/// All homomorphisms `g → target`, ordered by generator images in the target's element order.
pub fn enumerate_homs<T: HomTarget>(g: &PGroup, target: &T) -> Vec<GroupHom<T::Elem>> {
    let elements = target.elements();
    let k = g.generators().len();
    let total = elements.len().pow(k as u32);
    (0..total)
        .into_par_iter()
        .filter_map(|mut code| {
            let mut gen_images = Vec::with_capacity(k);
            for _ in 0..k {
                gen_images.push(elements[code % elements.len()].clone());
                code /= elements.len();
            }
            extend(g, target, &gen_images)
        })
        .collect()
}

/// `Γ_f = {(h, f(h))}`.
pub fn graph_subgroup<E: Clone>(f: &GroupHom<E>) -> Vec<(usize, E)> {
    f.images.iter().cloned().enumerate().collect()
}

/// Elements of the target commuting with every value of `f`.
pub fn centralizer_of_image<T: HomTarget>(f: &GroupHom<T::Elem>, target: &T) -> Vec<T::Elem> {
    let values = f.image_set();
    target
        .elements()
        .into_iter()
        .filter(|c| values.iter().all(|x| target.conjugate(c, x) == *x))
        .collect()
}

/// One conjugacy class of `Hom(H, Λ)`.
#[derive(Clone, Debug)]
pub struct HomClass<E> {
    /// The least member of the class.
    pub representative: GroupHom<E>,
    pub centralizer: Vec<E>,
    pub orbit_size: usize,
}

/// `Hom(H, Λ)/Λ` with centralizers, after checking orbit sizes against centralizer orders.
pub fn fixed_point_index<T: HomTarget>(h: &PGroup, target: &T) -> Result<Vec<HomClass<T::Elem>>> {
    let homs = enumerate_homs(h, target);
    let elements = target.elements();
    let mut class_of: BTreeMap<GroupHom<T::Elem>, usize> = BTreeMap::new();
    let mut classes = Vec::new();
    let mut sorted = homs.clone();
    sorted.sort();
    for f in &sorted {
        if class_of.contains_key(f) {
            continue;
        }
        let id = classes.len();
        let mut orbit: Vec<GroupHom<T::Elem>> =
            elements.iter().map(|c| f.conjugate(target, c)).collect();
        orbit.sort();
        orbit.dedup();
        for g in &orbit {
            class_of.insert(g.clone(), id);
        }
        let centralizer = centralizer_of_image(f, target);
        if orbit.len() * centralizer.len() != elements.len() {
            return Err(Error::verification(
                "fixed-point-index",
                json!({ "orbit": orbit.len(), "centralizer": centralizer.len(), "target_order": elements.len() }),
            ));
        }
        classes.push(HomClass {
            representative: f.clone(),
            centralizer,
            orbit_size: orbit.len(),
        });
    }
    let covered: usize = classes.iter().map(|c| c.orbit_size).sum();
    if covered != homs.len() {
        return Err(Error::verification(
            "fixed-point-index",
            json!({ "orbit_total": covered, "homs": homs.len() }),
        ));
    }
    Ok(classes)
}

/// JSON summary of a fixed-point index.
pub fn fixed_point_index_report<T: HomTarget>(h: &PGroup, target: &T) -> Result<Value> {
    let classes = fixed_point_index(h, target)?;
    let rows: Vec<Value> = classes
        .iter()
        .map(|c| {
            let gens: Vec<String> = h
                .generators()
                .iter()
                .map(|&g| target.render(c.representative.image(g)))
                .collect();
            json!({
                "generator_images": gens,
                "trivial": c.representative.is_trivial(),
                "orbit_size": c.orbit_size,
                "centralizer_order": c.centralizer.len(),
            })
        })
        .collect();
    Ok(json!({
        "source_order": h.order(),
        "target_order": target.order(),
        "homs": classes.iter().map(|c| c.orbit_size).sum::<usize>(),
        "classes": rows,
    }))
}

/// For each class of nontrivial `f: H → GL_n(F_p)`, the fixed subposet of `im f` is acyclic;
/// the trivial class is the one surviving summand.
pub fn contractible_summand_report(h: &PGroup, n: usize, p: Prime) -> Result<Value> {
    if let Some(q) = h.prime() {
        if q != p {
            return Err(Error::InvalidParameters(format!(
                "{} is a {q}-group, not a {p}-group",
                h.name()
            )));
        }
    }
    let gl = enumerate_group(&GroupKind::General, n, p)?;
    let classes = fixed_point_index(h, &gl)?;
    let mut contractible = Vec::new();
    let mut surviving = Vec::new();
    for class in &classes {
        let f = &class.representative;
        if f.is_trivial() {
            surviving
                .push(json!({ "class": "trivial", "centralizer_order": class.centralizer.len() }));
            continue;
        }
        let image = MatrixGroup::from_elements(n, p, f.image_set());
        let witness = unipotent_fixed_check(&image)?;
        contractible.push(json!({
            "image_order": image.order(),
            "orbit_size": class.orbit_size,
            "fixed_poset_vertices": witness["fixed_poset_vertices"],
            "fixed_space": witness["fixed_space"],
        }));
    }
    Ok(json!({
        "classes": classes.len(),
        "contractible": contractible,
        "surviving": surviving,
        "surviving_nontrivial": 0,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equivariant::pgroup::{make_pgroup, GroupSpec};

    fn p(v: u32) -> Prime {
        Prime::new(v).unwrap()
    }

    fn group(s: &str) -> PGroup {
        make_pgroup(&s.parse::<GroupSpec>().unwrap()).unwrap()
    }

    #[test]
    fn small_hom_counts() {
        assert_eq!(
            enumerate_homs(&group("C4"), &VectorGroup { n: 1, p: p(2) }).len(),
            2
        );
        assert_eq!(
            enumerate_homs(&group("C2"), &VectorGroup { n: 2, p: p(2) }).len(),
            4
        );
        assert_eq!(
            enumerate_homs(&group("1"), &VectorGroup { n: 3, p: p(2) }).len(),
            1
        );
        assert_eq!(
            enumerate_homs(&group("Q8"), &VectorGroup { n: 1, p: p(2) }).len(),
            4
        );
    }

    #[test]
    fn homs_are_homomorphisms_and_distinct() {
        let g = group("D8");
        let target = group("C2^2");
        let homs = enumerate_homs(&g, &target);
        assert!(homs.iter().all(|f| f.is_homomorphism(&g, &target)));
        let mut sorted = homs.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), homs.len());
        assert!(homs.iter().all(|f| g.is_normal(&f.kernel())));
    }

    #[test]
    fn transvection_centralizer_and_classes() {
        let gl = enumerate_group(&GroupKind::General, 2, p(2)).unwrap();
        let c2 = group("C2");
        let t = GfMatrix::from_rows(p(2), &[&[1, 1], &[0, 1]]).unwrap();
        let f = enumerate_homs(&c2, &gl)
            .into_iter()
            .find(|f| f.image(1) == &t)
            .unwrap();
        assert_eq!(centralizer_of_image(&f, &gl).len(), 2);
        assert_eq!(graph_subgroup(&f).len(), 2);
        let classes = fixed_point_index(&c2, &gl).unwrap();
        let mut sizes: Vec<usize> = classes.iter().map(|c| c.orbit_size).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 3]);
    }

    #[test]
    fn abelian_target_orbits_are_points() {
        let classes = fixed_point_index(&group("C2^2"), &VectorGroup { n: 2, p: p(2) }).unwrap();
        assert_eq!(classes.len(), 16);
        assert!(classes
            .iter()
            .all(|c| c.orbit_size == 1 && c.centralizer.len() == 4));
    }

    #[test]
    fn contractible_summands() {
        let w = contractible_summand_report(&group("C2"), 2, p(2)).unwrap();
        assert_eq!(w["contractible"].as_array().unwrap().len(), 1);
        let w = contractible_summand_report(&group("1"), 2, p(2)).unwrap();
        assert!(w["contractible"].as_array().unwrap().is_empty());
        let w = contractible_summand_report(&group("C3"), 2, p(3)).unwrap();
        assert_eq!(w["classes"], 2);
        assert!(contractible_summand_report(&group("C3"), 2, p(2)).is_err());
    }
}
