use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use super::FreeProdError;

/// First violated group axiom found by [`group_validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupViolation {
    Empty,
    /// Row `row` does not have `order` entries.
    Shape { row: usize },
    OutOfRange { row: usize, col: usize },
    NotLatinRow { row: usize },
    NotLatinColumn { col: usize },
    NoIdentity,
    NotAssociative { a: usize, b: usize, c: usize },
    Names { expected: usize, found: usize },
}

impl fmt::Display for GroupViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupViolation::Empty => write!(f, "empty table"),
            GroupViolation::Shape { row } => write!(f, "row {row} has the wrong length"),
            GroupViolation::OutOfRange { row, col } => write!(f, "entry ({row},{col}) out of range"),
            GroupViolation::NotLatinRow { row } => write!(f, "not Latin: row {row} repeats an entry"),
            GroupViolation::NotLatinColumn { col } => write!(f, "not Latin: column {col} repeats an entry"),
            GroupViolation::NoIdentity => write!(f, "no two-sided identity"),
            GroupViolation::NotAssociative { a, b, c } => write!(f, "associativity fails on ({a},{b},{c})"),
            GroupViolation::Names { expected, found } => write!(f, "expected {expected} names, found {found}"),
        }
    }
}

/// Validation outcome for a raw Cayley table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupReport {
    pub order: usize,
    pub violation: Option<GroupViolation>,
}

impl GroupReport {
    pub fn is_valid(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks that `table` is the multiplication table of a group. Reports the first violation.
pub fn group_validate(table: &[Vec<usize>]) -> GroupReport {
    let order = table.len();
    let report = |v| GroupReport {
        order,
        violation: Some(v),
    };
    if order == 0 {
        return report(GroupViolation::Empty);
    }
    for (i, row) in table.iter().enumerate() {
        if row.len() != order {
            return report(GroupViolation::Shape { row: i });
        }
        if let Some(j) = row.iter().position(|&x| x >= order) {
            return report(GroupViolation::OutOfRange { row: i, col: j });
        }
    }
    for (i, row) in table.iter().enumerate() {
        let distinct: BTreeSet<_> = row.iter().collect();
        if distinct.len() != order {
            return report(GroupViolation::NotLatinRow { row: i });
        }
    }
    for j in 0..order {
        let distinct: BTreeSet<_> = table.iter().map(|row| row[j]).collect();
        if distinct.len() != order {
            return report(GroupViolation::NotLatinColumn { col: j });
        }
    }
    if find_identity(table).is_none() {
        return report(GroupViolation::NoIdentity);
    }
    for a in 0..order {
        for b in 0..order {
            let ab = table[a][b];
            for c in 0..order {
                if table[ab][c] != table[a][table[b][c]] {
                    return report(GroupViolation::NotAssociative { a, b, c });
                }
            }
        }
    }
    GroupReport { order, violation: None }
}

fn find_identity(table: &[Vec<usize>]) -> Option<usize> {
    let n = table.len();
    (0..n).find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
}

/// A finite group given by its Cayley table: `table[i][j]` is the index of `g_i g_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
    names: Vec<String>,
    /// Set for permutation groups.
    permutations: Option<Vec<Vec<usize>>>,
}

impl FiniteGroup {
    /// Builds a group from a validated table. Missing names default to `g0, g1, …`.
    pub fn from_table(table: Vec<Vec<usize>>, names: Option<Vec<String>>) -> Result<FiniteGroup, FreeProdError> {
        let report = group_validate(&table);
        if let Some(v) = report.violation {
            return Err(FreeProdError::InvalidGroup(v));
        }
        let n = table.len();
        let names = match names {
            Some(names) if names.len() != n => {
                return Err(FreeProdError::InvalidGroup(GroupViolation::Names {
                    expected: n,
                    found: names.len(),
                }))
            }
            Some(names) => names,
            None => (0..n).map(|i| format!("g{i}")).collect(),
        };
        let identity = find_identity(&table).expect("validated");
        let inverse = (0..n)
            .map(|a| (0..n).find(|&b| table[a][b] == identity).expect("validated"))
            .collect();
        Ok(FiniteGroup {
            table,
            identity,
            inverse,
            names,
            permutations: None,
        })
    }

    pub fn trivial() -> FiniteGroup {
        FiniteGroup::from_table(vec![vec![0]], Some(vec!["e".into()])).expect("trivial group")
    }

    /// `Z_n` with elements named `0 … n-1`.
    pub fn cyclic(n: usize) -> FiniteGroup {
        assert!(n > 0);
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let names = (0..n).map(|i| i.to_string()).collect();
        FiniteGroup::from_table(table, Some(names)).expect("cyclic group")
    }

    /// The full symmetric group on `n` points, elements in lexicographic order of their images.
    pub fn symmetric(n: usize) -> FiniteGroup {
        let mut perms = Vec::new();
        permutations(&mut (0..n).collect(), 0, &mut perms);
        FiniteGroup::from_permutations(perms).expect("symmetric group")
    }

    /// Symmetries of the regular `n`-gon acting on its vertices (order `2n`).
    pub fn dihedral(n: usize) -> FiniteGroup {
        assert!(n >= 3);
        let rotation: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let reflection: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
        FiniteGroup::generated_by(n, &[rotation, reflection])
    }

    /// Closure of the given permutations of `{0, …, degree-1}` under composition.
    pub fn generated_by(degree: usize, generators: &[Vec<usize>]) -> FiniteGroup {
        let id: Vec<usize> = (0..degree).collect();
        let mut seen = BTreeSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(p) = queue.pop_front() {
            for g in generators {
                let q = compose(&p, g);
                if seen.insert(q.clone()) {
                    queue.push_back(q);
                }
            }
        }
        FiniteGroup::from_permutations(seen.into_iter().collect()).expect("closed under composition")
    }

    /// Group of permutations, composed as functions: `(p q)(i) = p(q(i))`.
    ///
    /// Elements are named in cycle notation on points `1 … n`, with `e` for the identity.
    pub fn from_permutations(perms: Vec<Vec<usize>>) -> Result<FiniteGroup, FreeProdError> {
        let index = |p: &Vec<usize>| perms.iter().position(|q| q == p);
        let mut table = Vec::with_capacity(perms.len());
        for p in &perms {
            let mut row = Vec::with_capacity(perms.len());
            for q in &perms {
                let pq = compose(p, q);
                row.push(index(&pq).ok_or(FreeProdError::InvalidGroup(GroupViolation::OutOfRange {
                    row: table.len(),
                    col: row.len(),
                }))?);
            }
            table.push(row);
        }
        let names = perms.iter().map(|p| cycle_notation(p)).collect();
        let mut g = FiniteGroup::from_table(table, Some(names))?;
        g.permutations = Some(perms);
        Ok(g)
    }

    /// The permutation realising `a`, for permutation groups.
    pub fn permutation(&self, a: usize) -> Option<&[usize]> {
        self.permutations.as_ref().map(|p| p[a].as_slice())
    }

    /// Number of points moved by the permutation representation.
    pub fn degree(&self) -> Option<usize> {
        self.permutations.as_ref().map(|p| p[0].len())
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(a) } else { a };
        (0..k.unsigned_abs()).fold(self.identity, |acc, _| self.mul(acc, base))
    }

    /// `s t s⁻¹`
    pub fn conjugate(&self, s: usize, t: usize) -> usize {
        self.mul(self.mul(s, t), self.inv(s))
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn element_by_name(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    /// Elements commuting with every element of `subset`.
    pub fn centralizer(&self, subset: &[usize]) -> Vec<usize> {
        self.elements()
            .filter(|&g| subset.iter().all(|&h| self.mul(g, h) == self.mul(h, g)))
            .collect()
    }

    pub fn center(&self) -> Vec<usize> {
        let all: Vec<usize> = self.elements().collect();
        self.centralizer(&all)
    }

    /// A generating set chosen greedily in index order.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = BTreeSet::from([self.identity]);
        for g in self.elements() {
            if !span.contains(&g) {
                gens.push(g);
                span = self.subgroup_generated(&gens);
            }
        }
        gens
    }

    pub fn subgroup_generated(&self, gens: &[usize]) -> BTreeSet<usize> {
        let mut span = BTreeSet::from([self.identity]);
        let mut queue = VecDeque::from([self.identity]);
        while let Some(a) = queue.pop_front() {
            for &g in gens {
                let b = self.mul(a, g);
                if span.insert(b) {
                    queue.push_back(b);
                }
            }
        }
        span
    }
}

fn compose(p: &[usize], q: &[usize]) -> Vec<usize> {
    q.iter().map(|&i| p[i]).collect()
}

#[allow(clippy::ptr_arg)]
fn permutations(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == items.len() {
        out.push(items.clone());
        return;
    }
    // lexicographic order: rotate the chosen element into position k
    for i in k..items.len() {
        let mut next = items.clone();
        let chosen = next.remove(i);
        next.insert(k, chosen);
        permutations(&mut next, k + 1, out);
    }
}

fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        out.push('(');
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            let label = (i + 1).to_string();
            out.push_str(&label);
            i = p[i];
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push('e');
    }
    out
}

/// A verified group homomorphism given as a full index map.
#[derive(Clone, Debug)]
pub struct GroupHom<'a> {
    source: &'a FiniteGroup,
    target: &'a FiniteGroup,
    map: Vec<usize>,
}

impl<'a> GroupHom<'a> {
    pub fn new(source: &'a FiniteGroup, target: &'a FiniteGroup, map: Vec<usize>) -> Result<Self, FreeProdError> {
        if map.len() != source.order() || map.iter().any(|&x| x >= target.order()) {
            return Err(FreeProdError::GroupMismatch);
        }
        for a in source.elements() {
            for b in source.elements() {
                if map[source.mul(a, b)] != target.mul(map[a], map[b]) {
                    return Err(FreeProdError::NotAHomomorphism { a, b });
                }
            }
        }
        Ok(GroupHom { source, target, map })
    }

    pub fn identity(g: &'a FiniteGroup) -> Self {
        GroupHom {
            source: g,
            target: g,
            map: g.elements().collect(),
        }
    }

    pub fn trivial(source: &'a FiniteGroup, target: &'a FiniteGroup) -> Self {
        GroupHom {
            source,
            target,
            map: vec![target.identity(); source.order()],
        }
    }

    pub fn source(&self) -> &'a FiniteGroup {
        self.source
    }

    pub fn target(&self) -> &'a FiniteGroup {
        self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }

    /// `self ∘ first`
    pub fn after(&self, first: &GroupHom<'a>) -> Result<GroupHom<'a>, FreeProdError> {
        if first.target != self.source {
            return Err(FreeProdError::GroupMismatch);
        }
        Ok(GroupHom {
            source: first.source,
            target: self.target,
            map: first.map.iter().map(|&x| self.map[x]).collect(),
        })
    }

    /// Every homomorphism `source → target`, by extending all images of a generating set.
    pub fn enumerate(source: &'a FiniteGroup, target: &'a FiniteGroup) -> Vec<GroupHom<'a>> {
        let gens = source.generators();
        let mut out = Vec::new();
        let mut images = vec![0usize; gens.len()];
        loop {
            if let Some(map) = extend_from_generators(source, target, &gens, &images) {
                if let Ok(h) = GroupHom::new(source, target, map) {
                    out.push(h);
                }
            }
            // odometer over target^gens
            let mut k = 0;
            loop {
                if k == images.len() {
                    out.sort_by(|a, b| a.map.cmp(&b.map));
                    return out;
                }
                images[k] += 1;
                if images[k] < target.order() {
                    break;
                }
                images[k] = 0;
                k += 1;
            }
        }
    }
}

impl PartialEq for GroupHom<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.source == other.source && self.target == other.target && self.map == other.map
    }
}

fn extend_from_generators(
    source: &FiniteGroup,
    target: &FiniteGroup,
    gens: &[usize],
    images: &[usize],
) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; source.order()];
    map[source.identity()] = target.identity();
    let mut queue = VecDeque::from([source.identity()]);
    while let Some(a) = queue.pop_front() {
        for (&g, &img) in gens.iter().zip(images) {
            let b = source.mul(a, g);
            let fb = target.mul(map[a], img);
            if map[b] == usize::MAX {
                map[b] = fb;
                queue.push_back(b);
            } else if map[b] != fb {
                return None;
            }
        }
    }
    Some(map)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z2_is_valid() {
        assert!(group_validate(&[vec![0, 1], vec![1, 0]]).is_valid());
    }

    #[test]
    fn repeated_row_entry_is_not_latin() {
        let r = group_validate(&[vec![0, 1], vec![1, 1]]);
        assert_eq!(r.violation, Some(GroupViolation::NotLatinRow { row: 1 }));
    }

    #[test]
    fn latin_but_not_associative() {
        // a Latin square of order 5 with identity 0 that is not a group
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let r = group_validate(&t);
        assert!(matches!(r.violation, Some(GroupViolation::NotAssociative { .. })));
    }

    #[test]
    fn s3_from_permutations() {
        let s3 = FiniteGroup::symmetric(3);
        assert_eq!(s3.order(), 6);
        assert_eq!(
            s3.names(),
            &["e", "(23)", "(12)", "(123)", "(132)", "(13)"].map(String::from)
        );
        assert!(group_validate(s3.table()).is_valid());
        let t = s3.element_by_name("(12)").unwrap();
        assert_eq!(s3.inv(t), t);
        // (123)(12)(132) = (23) with right-to-left composition
        let c = s3.element_by_name("(123)").unwrap();
        assert_eq!(s3.name(s3.conjugate(c, t)), "(23)");
        assert_eq!(s3.center(), vec![s3.identity()]);
    }

    #[test]
    fn dihedral_order_and_center() {
        let d4 = FiniteGroup::dihedral(4);
        assert_eq!(d4.order(), 8);
        assert_eq!(d4.center().len(), 2);
        assert_eq!(FiniteGroup::cyclic(6).center().len(), 6);
    }

    #[test]
    fn homomorphism_counts() {
        let s3 = FiniteGroup::symmetric(3);
        let z2 = FiniteGroup::cyclic(2);
        // trivial and the sign map
        assert_eq!(GroupHom::enumerate(&s3, &z2).len(), 2);
        // |End(S3)| = 6 automorphisms + 3 maps onto an involution subgroup + trivial
        assert_eq!(GroupHom::enumerate(&s3, &s3).len(), 10);
        let z6 = FiniteGroup::cyclic(6);
        assert_eq!(GroupHom::enumerate(&z6, &z6).len(), 6);
    }

    #[test]
    fn non_homomorphism_rejected() {
        let z2 = FiniteGroup::cyclic(2);
        assert!(matches!(
            GroupHom::new(&z2, &z2, vec![1, 0]),
            Err(FreeProdError::NotAHomomorphism { .. })
        ));
    }
}
