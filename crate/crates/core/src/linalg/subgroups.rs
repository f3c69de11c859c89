use std::collections::BTreeSet;

use super::{enumerate_group, GfMatrix, GroupKind, MatrixGroup, Prime};
use crate::error::Result;

/// Every subgroup of a finite matrix group, as joins of cyclic subgroups.
///
/// Returned in order of increasing size, then by element list.
pub fn all_subgroups(group: &MatrixGroup) -> Vec<MatrixGroup> {
    let (n, p) = (group.degree(), group.prime());
    let key = |h: &MatrixGroup| h.elements().to_vec();
    let mut cyclic: Vec<(GfMatrix, MatrixGroup)> = Vec::new();
    let mut seen: BTreeSet<Vec<GfMatrix>> = BTreeSet::new();
    for g in group.elements() {
        let c = MatrixGroup::generated_by(n, p, std::slice::from_ref(g));
        if seen.insert(key(&c)) {
            cyclic.push((g.clone(), c));
        }
    }
    let mut found: Vec<MatrixGroup> = cyclic.iter().map(|(_, c)| c.clone()).collect();
    let mut frontier = found.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for h in &frontier {
            for (g, _) in &cyclic {
                if h.contains(g) {
                    continue;
                }
                let mut gens = h.generators();
                gens.push(g.clone());
                let joined = MatrixGroup::generated_by(n, p, &gens);
                if seen.insert(key(&joined)) {
                    next.push(joined);
                }
            }
        }
        found.extend(next.iter().cloned());
        frontier = next;
    }
    found.sort_by(|a, b| {
        a.order()
            .cmp(&b.order())
            .then_with(|| a.elements().cmp(b.elements()))
    });
    found
}

pub fn conjugate(h: &MatrixGroup, g: &GfMatrix) -> Result<MatrixGroup> {
    let gi = g.inverse()?;
    let elements = h.elements().iter().map(|x| g.mul(x).mul(&gi)).collect();
    Ok(MatrixGroup::from_elements(h.degree(), h.prime(), elements))
}

/// `{g ∈ ambient : g H g⁻¹ = H}`.
pub fn normalizer(h: &MatrixGroup, ambient: &MatrixGroup) -> Result<MatrixGroup> {
    let gens = h.generators();
    let mut elements = Vec::new();
    for g in ambient.elements() {
        let gi = g.inverse()?;
        if gens.iter().all(|x| h.contains(&g.mul(x).mul(&gi))) {
            elements.push(g.clone());
        }
    }
    Ok(MatrixGroup::from_elements(h.degree(), h.prime(), elements))
}

/// Nontrivial `p`-subgroups of `GL_n(F_p)`, one per conjugacy class.
///
/// Every `p`-subgroup is conjugate into the upper unitriangular group, so its subgroups are
/// enumerated and merged by the smallest conjugate element list.
pub fn p_subgroups_up_to_conjugacy(n: usize, p: Prime) -> Result<Vec<MatrixGroup>> {
    let sylow = enumerate_group(&GroupKind::UpperUnitriangular, n, p)?;
    let gl = enumerate_group(&GroupKind::General, n, p)?;
    let mut classes: BTreeSet<Vec<GfMatrix>> = BTreeSet::new();
    let mut out = Vec::new();
    for h in all_subgroups(&sylow).into_iter().filter(|h| h.order() > 1) {
        let mut canonical: Option<Vec<GfMatrix>> = None;
        for g in gl.elements() {
            let c = conjugate(&h, g)?.elements().to_vec();
            if canonical.as_ref().is_none_or(|best| c < *best) {
                canonical = Some(c);
            }
        }
        if classes.insert(canonical.unwrap()) {
            out.push(h);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: u32) -> Prime {
        Prime::new(v).unwrap()
    }

    #[test]
    fn subgroup_counts() {
        // S_3 ≅ GL_2(F_2): trivial, three of order 2, one of order 3, whole group
        let gl = enumerate_group(&GroupKind::General, 2, p(2)).unwrap();
        let orders: Vec<usize> = all_subgroups(&gl).iter().map(MatrixGroup::order).collect();
        assert_eq!(orders, vec![1, 2, 2, 2, 3, 6]);
        // the dihedral group of order 8 has 10 subgroups
        let sylow = enumerate_group(&GroupKind::UpperUnitriangular, 3, p(2)).unwrap();
        assert_eq!(all_subgroups(&sylow).len(), 10);
    }

    #[test]
    fn normalizers() {
        let gl = enumerate_group(&GroupKind::General, 2, p(3)).unwrap();
        let u = enumerate_group(&GroupKind::UpperUnitriangular, 2, p(3)).unwrap();
        let b = enumerate_group(&GroupKind::Borel, 2, p(3)).unwrap();
        assert_eq!(normalizer(&u, &gl).unwrap().elements(), b.elements());
    }

    #[test]
    fn classes_of_p_subgroups() {
        assert_eq!(p_subgroups_up_to_conjugacy(2, p(2)).unwrap().len(), 1);
        assert_eq!(p_subgroups_up_to_conjugacy(2, p(3)).unwrap().len(), 1);
        // in GL_3(F_2): one class of order 2, two Klein four-groups, one cyclic of order 4, D_8
        let orders: Vec<usize> = p_subgroups_up_to_conjugacy(3, p(2))
            .unwrap()
            .iter()
            .map(MatrixGroup::order)
            .collect();
        assert_eq!(orders, vec![2, 4, 4, 4, 8]);
    }
}
