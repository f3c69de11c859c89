use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Prime;

/// Named constructions of small `p`-groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    /// `Z/m` for a prime power `m` (or `m = 1`).
    Cyclic(u32),
    /// `(Z/p)^k`.
    ElementaryAbelian {
        p: u32,
        k: u32,
    },
    Dihedral8,
    Quaternion8,
    /// Upper unitriangular `3 × 3` matrices over `F_p`.
    Heisenberg(u32),
    Product(Box<GroupSpec>, Box<GroupSpec>),
    /// A Cayley table read from a JSON file.
    CayleyTable(String),
}

impl FromStr for GroupSpec {
    type Err = Error;

    /// Accepts `C4`, `C2^2`, `C2xC4`, `D8`, `Q8`, `Heis3`, `1` and `file:<path>`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidParameters(format!("unrecognised group `{s}`"));
        if let Some(path) = s.strip_prefix("file:") {
            return Ok(GroupSpec::CayleyTable(path.to_string()));
        }
        if let Some((a, b)) = s.split_once(['x', '×']) {
            return Ok(GroupSpec::Product(
                Box::new(a.parse()?),
                Box::new(b.parse()?),
            ));
        }
        match s {
            "1" | "C1" | "trivial" => return Ok(GroupSpec::Cyclic(1)),
            "D8" => return Ok(GroupSpec::Dihedral8),
            "Q8" => return Ok(GroupSpec::Quaternion8),
            _ => {}
        }
        if let Some(p) = s.strip_prefix("Heis") {
            return Ok(GroupSpec::Heisenberg(p.parse().map_err(|_| bad())?));
        }
        let body = s
            .strip_prefix('C')
            .or_else(|| s.strip_prefix('Z'))
            .ok_or_else(bad)?;
        match body.split_once('^') {
            Some((p, k)) => Ok(GroupSpec::ElementaryAbelian {
                p: p.parse().map_err(|_| bad())?,
                k: k.parse().map_err(|_| bad())?,
            }),
            None => Ok(GroupSpec::Cyclic(body.parse().map_err(|_| bad())?)),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(m) => write!(f, "C{m}"),
            GroupSpec::ElementaryAbelian { p, k } => write!(f, "C{p}^{k}"),
            GroupSpec::Dihedral8 => f.write_str("D8"),
            GroupSpec::Quaternion8 => f.write_str("Q8"),
            GroupSpec::Heisenberg(p) => write!(f, "Heis{p}"),
            GroupSpec::Product(a, b) => write!(f, "{a}x{b}"),
            GroupSpec::CayleyTable(path) => write!(f, "file:{path}"),
        }
    }
}

/// The JSON layout of an ingested Cayley table.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CayleyTableFile {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    pub generators: Vec<usize>,
}

/// A finite `p`-group given by its multiplication table; element `0` is the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PGroup {
    name: String,
    p: Option<Prime>,
    order: usize,
    table: Vec<usize>,
    inverses: Vec<usize>,
    generators: Vec<usize>,
}

impl PGroup {
    /// Validates the axioms, moves the identity to `0` and checks the order is a prime power.
    pub fn from_table(
        name: impl Into<String>,
        table: Vec<Vec<usize>>,
        generators: Vec<usize>,
    ) -> Result<Self> {
        let order = table.len();
        let invalid = |msg: String| Error::InvalidTable(msg);
        if order == 0 {
            return Err(invalid("empty table".into()));
        }
        if table
            .iter()
            .any(|row| row.len() != order || row.iter().any(|&x| x >= order))
        {
            return Err(invalid(
                "rows must have one entry below the order per element".into(),
            ));
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| invalid("no identity element".into()))?;
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(invalid(format!("({a}·{b})·{c} ≠ {a}·({b}·{c})")));
                    }
                }
            }
            if !(0..order).any(|b| table[a][b] == identity) {
                return Err(invalid(format!("{a} has no inverse")));
            }
        }
        if let Some(&g) = generators.iter().find(|&&g| g >= order) {
            return Err(invalid(format!("generator {g} out of range")));
        }
        // relabel so that the identity is 0
        let swap = |x: usize| {
            if x == identity {
                0
            } else if x == 0 {
                identity
            } else {
                x
            }
        };
        let mut flat = vec![0; order * order];
        for a in 0..order {
            for b in 0..order {
                flat[swap(a) * order + swap(b)] = swap(table[a][b]);
            }
        }
        let p = prime_of_power(order)?;
        let inverses = (0..order)
            .map(|a| (0..order).find(|&b| flat[a * order + b] == 0).unwrap())
            .collect();
        let group = PGroup {
            name: name.into(),
            p,
            order,
            table: flat,
            inverses,
            generators: generators
                .into_iter()
                .map(swap)
                .filter(|&g| g != 0)
                .collect(),
        };
        if group.generated(&group.generators).len() != order {
            return Err(invalid("generators do not generate the group".into()));
        }
        Ok(group)
    }

    pub fn from_json(name: impl Into<String>, json: &str) -> Result<Self> {
        let file: CayleyTableFile = serde_json::from_str(json)?;
        if file.order != file.table.len() {
            return Err(Error::InvalidTable(format!(
                "declared order {} but {} rows",
                file.order,
                file.table.len()
            )));
        }
        PGroup::from_table(name, file.table, file.generators)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        PGroup::from_json(format!("file:{}", path.display()), &text)
    }

    pub fn to_json(&self) -> CayleyTableFile {
        let table = (0..self.order)
            .map(|a| (0..self.order).map(|b| self.mul(a, b)).collect())
            .collect();
        CayleyTableFile {
            order: self.order,
            table,
            generators: self.generators.clone(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// `None` for the trivial group.
    pub fn prime(&self) -> Option<Prime> {
        self.p
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        (0..k).fold(0, |acc, _| self.mul(acc, a))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        (0..self.order)
            .map(|a| self.element_order(a))
            .max()
            .unwrap_or(1)
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.order)
            .filter(|&z| (0..self.order).all(|x| self.mul(z, x) == self.mul(x, z)))
            .collect()
    }

    /// The subgroup generated by `gens`, sorted.
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for &s in gens {
                let y = self.mul(x, s);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..self.order).filter(|&x| seen[x]).collect()
    }

    pub fn is_subgroup(&self, h: &[usize]) -> bool {
        let set: BTreeSet<usize> = h.iter().copied().collect();
        set.contains(&0)
            && h.iter()
                .all(|&a| h.iter().all(|&b| set.contains(&self.mul(a, self.inv(b)))))
    }

    pub fn is_normal(&self, h: &[usize]) -> bool {
        let set: BTreeSet<usize> = h.iter().copied().collect();
        self.is_subgroup(h)
            && (0..self.order).all(|g| {
                h.iter()
                    .all(|&x| set.contains(&self.mul(self.mul(g, x), self.inv(g))))
            })
    }

    /// Every subgroup, sorted by size then elements.
    pub fn subgroups(&self) -> Vec<Vec<usize>> {
        let cyclic: BTreeSet<Vec<usize>> = (0..self.order).map(|g| self.generated(&[g])).collect();
        let mut found: BTreeSet<Vec<usize>> = cyclic.clone();
        let mut frontier: Vec<Vec<usize>> = cyclic.iter().cloned().collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for h in &frontier {
                for c in &cyclic {
                    if c.iter().all(|x| h.binary_search(x).is_ok()) {
                        continue;
                    }
                    let gens: Vec<usize> = h.iter().chain(c.iter()).copied().collect();
                    let joined = self.generated(&gens);
                    if found.insert(joined.clone()) {
                        next.push(joined);
                    }
                }
            }
            frontier = next;
        }
        let mut out: Vec<Vec<usize>> = found.into_iter().collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    /// The subgroup `h` as a group in its own right, elements relabelled in increasing order.
    pub fn restrict(&self, h: &[usize], name: impl Into<String>) -> Result<PGroup> {
        if !self.is_subgroup(h) {
            return Err(Error::InvalidParameters("not a subgroup".into()));
        }
        let mut elements = h.to_vec();
        elements.sort_unstable();
        let pos = |x: usize| elements.binary_search(&x).unwrap();
        let table = elements
            .iter()
            .map(|&a| elements.iter().map(|&b| pos(self.mul(a, b))).collect())
            .collect();
        let generators = (0..elements.len()).collect();
        let mut group = PGroup::from_table(name, table, generators)?;
        group.generators = minimal_generators(&group);
        Ok(group)
    }
}

fn minimal_generators(g: &PGroup) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut span = g.generated(&gens);
    for x in 0..g.order() {
        if span.binary_search(&x).is_err() {
            gens.push(x);
            span = g.generated(&gens);
        }
    }
    gens
}

fn prime_of_power(order: usize) -> Result<Option<Prime>> {
    if order == 1 {
        return Ok(None);
    }
    let p = (2..=order).find(|d| order.is_multiple_of(*d)).unwrap();
    let mut rest = order;
    while rest.is_multiple_of(p) {
        rest /= p;
    }
    if rest != 1 {
        return Err(Error::NotPGroup(order));
    }
    Prime::new(p as u32).map(Some)
}

fn cyclic_table(m: usize) -> Vec<Vec<usize>> {
    (0..m)
        .map(|a| (0..m).map(|b| (a + b) % m).collect())
        .collect()
}

/// Builds a group from a named construction.
pub fn make_pgroup(spec: &GroupSpec) -> Result<PGroup> {
    let name = spec.to_string();
    match spec {
        GroupSpec::Cyclic(m) => {
            let m = *m as usize;
            prime_of_power(m.max(1))?;
            PGroup::from_table(
                name,
                cyclic_table(m.max(1)),
                if m > 1 { vec![1] } else { vec![] },
            )
        }
        GroupSpec::ElementaryAbelian { p, k } => {
            let prime = Prime::new(*p)?;
            let q = prime.get() as usize;
            let order = q.pow(*k);
            let digits = |x: usize| (0..*k).map(move |i| x / q.pow(i) % q);
            let table = (0..order)
                .map(|a| {
                    (0..order)
                        .map(|b| {
                            digits(a)
                                .zip(digits(b))
                                .enumerate()
                                .map(|(i, (x, y))| (x + y) % q * q.pow(i as u32))
                                .sum()
                        })
                        .collect()
                })
                .collect();
            PGroup::from_table(name, table, (0..*k).map(|i| q.pow(i)).collect())
        }
        GroupSpec::Dihedral8 => {
            // r^i s^j ↦ i + 4j, with s r s = r⁻¹
            let table = (0..8)
                .map(|x: usize| {
                    (0..8)
                        .map(|y: usize| {
                            let (a, b, c, d) = (x % 4, x / 4, y % 4, y / 4);
                            let rot = if b == 0 { (a + c) % 4 } else { (a + 4 - c) % 4 };
                            rot + 4 * ((b + d) % 2)
                        })
                        .collect()
                })
                .collect();
            PGroup::from_table(name, table, vec![1, 4])
        }
        GroupSpec::Quaternion8 => {
            // ±1, ±i, ±j, ±k ↦ unit + 4·[negative], units 1, i, j, k = 0..4
            const UNIT: [[(usize, bool); 4]; 4] = [
                [(0, false), (1, false), (2, false), (3, false)],
                [(1, false), (0, true), (3, false), (2, true)],
                [(2, false), (3, true), (0, true), (1, false)],
                [(3, false), (2, false), (1, true), (0, true)],
            ];
            let table = (0..8)
                .map(|x: usize| {
                    (0..8)
                        .map(|y: usize| {
                            let (u, neg) = UNIT[x % 4][y % 4];
                            u + 4 * usize::from(neg ^ (x >= 4) ^ (y >= 4))
                        })
                        .collect()
                })
                .collect();
            PGroup::from_table(name, table, vec![1, 2])
        }
        GroupSpec::Heisenberg(p) => {
            let q = Prime::new(*p)?.get() as usize;
            // (a, b, c) ↔ [[1, a, c], [0, 1, b], [0, 0, 1]] ↦ a + q b + q² c
            let split = |x: usize| (x % q, x / q % q, x / (q * q));
            let table = (0..q.pow(3))
                .map(|x| {
                    (0..q.pow(3))
                        .map(|y| {
                            let ((a, b, c), (d, e, f)) = (split(x), split(y));
                            (a + d) % q + q * ((b + e) % q) + q * q * ((c + f + a * e) % q)
                        })
                        .collect()
                })
                .collect();
            PGroup::from_table(name, table, vec![1, q])
        }
        GroupSpec::Product(a, b) => {
            let (a, b) = (make_pgroup(a)?, make_pgroup(b)?);
            let (m, n) = (a.order(), b.order());
            let table = (0..m * n)
                .map(|x| {
                    (0..m * n)
                        .map(|y| a.mul(x / n, y / n) * n + b.mul(x % n, y % n))
                        .collect()
                })
                .collect();
            let gens = a
                .generators()
                .iter()
                .map(|&g| g * n)
                .chain(b.generators().iter().copied())
                .collect();
            PGroup::from_table(name, table, gens)
        }
        GroupSpec::CayleyTable(path) => PGroup::from_file(Path::new(path)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(s: &str) -> PGroup {
        make_pgroup(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn built_in_groups() {
        let e = group("C2^2");
        assert_eq!((e.order(), e.exponent()), (4, 2));
        let c = group("C4");
        assert_eq!((0..4).filter(|&x| c.element_order(x) == 4).count(), 2);
        let q = group("Q8");
        assert_eq!((0..8).filter(|&x| q.element_order(x) == 2).count(), 1);
        assert_eq!(q.center().len(), 2);
        let d = group("D8");
        assert_eq!((0..8).filter(|&x| d.element_order(x) == 2).count(), 5);
        let h = group("Heis3");
        assert_eq!((h.order(), h.exponent(), h.center().len()), (27, 3, 3));
        let prod = group("C2xC4");
        assert_eq!(
            (prod.order(), prod.exponent(), prod.center().len()),
            (8, 4, 8)
        );
        assert_eq!(group("1").order(), 1);
        assert_eq!(group("C9").exponent(), 9);
    }

    #[test]
    fn subgroup_lattices() {
        assert_eq!(group("C2^2").subgroups().len(), 5);
        assert_eq!(group("D8").subgroups().len(), 10);
        assert_eq!(group("Q8").subgroups().len(), 6);
        assert_eq!(group("C4").subgroups().len(), 3);
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(matches!(
            make_pgroup(&GroupSpec::Cyclic(6)),
            Err(Error::NotPGroup(6))
        ));
        let not_assoc = vec![vec![0, 1, 2], vec![1, 0, 0], vec![2, 0, 1]];
        assert!(matches!(
            PGroup::from_table("bad", not_assoc, vec![1]),
            Err(Error::InvalidTable(_))
        ));
        assert!(matches!(
            PGroup::from_table("bad", cyclic_table(4), vec![2]),
            Err(Error::InvalidTable(_))
        ));
    }

    #[test]
    fn json_round_trip_moves_identity() {
        // Z/2 with the identity listed second
        let json = r#"{"order": 2, "table": [[1, 0], [0, 1]], "generators": [0]}"#;
        let g = PGroup::from_json("t", json).unwrap();
        assert_eq!(g.mul(1, 1), 0);
        assert_eq!(g.generators(), &[1]);
        let again = PGroup::from_json("t", &serde_json::to_string(&g.to_json()).unwrap()).unwrap();
        assert_eq!(again.to_json().table, g.to_json().table);
    }

    #[test]
    fn restriction() {
        let d = group("D8");
        let rotations = d.generated(&[1]);
        let r = d.restrict(&rotations, "C4").unwrap();
        assert_eq!((r.order(), r.exponent()), (4, 4));
    }
}
