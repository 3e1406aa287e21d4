use std::collections::BTreeSet;

use crate::freeprod::FiniteGroup;

use super::GSetError;

/// A finite right `G`-set: `action[p][g]` is `p·g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GSet<'a> {
    group: &'a FiniteGroup,
    action: Vec<Vec<usize>>,
}

impl<'a> GSet<'a> {
    pub fn new(group: &'a FiniteGroup, action: Vec<Vec<usize>>) -> Result<GSet<'a>, GSetError> {
        let n = action.len();
        for (p, row) in action.iter().enumerate() {
            if row.len() != group.order() {
                return Err(GSetError::Shape { point: p });
            }
            if let Some(g) = row.iter().position(|&q| q >= n) {
                return Err(GSetError::OutOfRange { point: p, element: g });
            }
        }
        let e = group.identity();
        for (p, row) in action.iter().enumerate() {
            if row[e] != p {
                return Err(GSetError::InvalidAction {
                    point: p,
                    g: e,
                    h: e,
                });
            }
            for g in group.elements() {
                for h in group.elements() {
                    if action[row[g]][h] != row[group.mul(g, h)] {
                        return Err(GSetError::InvalidAction { point: p, g, h });
                    }
                }
            }
        }
        Ok(GSet { group, action })
    }

    /// `G` acting on itself by right multiplication.
    pub fn regular(group: &'a FiniteGroup) -> GSet<'a> {
        let action = group
            .elements()
            .map(|p| group.elements().map(|g| group.mul(p, g)).collect())
            .collect();
        GSet { group, action }
    }

    /// `n` fixed points.
    pub fn trivial(group: &'a FiniteGroup, n: usize) -> GSet<'a> {
        let action = (0..n).map(|p| vec![p; group.order()]).collect();
        GSet { group, action }
    }

    /// A permutation group on its points, as a right action: `p·g = g⁻¹(p)`.
    pub fn natural(group: &'a FiniteGroup) -> Option<GSet<'a>> {
        let n = group.degree()?;
        let action = (0..n)
            .map(|p| {
                group
                    .elements()
                    .map(|g| group.permutation(group.inv(g)).expect("permutation group")[p])
                    .collect()
            })
            .collect();
        Some(GSet { group, action })
    }

    /// Right cosets `Hx` of the subgroup generated by `gens`, acted on by right multiplication.
    pub fn cosets(group: &'a FiniteGroup, gens: &[usize]) -> GSet<'a> {
        let h = group.subgroup_generated(gens);
        let mut cosets: Vec<BTreeSet<usize>> = Vec::new();
        for x in group.elements() {
            let c: BTreeSet<usize> = h.iter().map(|&k| group.mul(k, x)).collect();
            if !cosets.contains(&c) {
                cosets.push(c);
            }
        }
        let index = |x: usize| cosets.iter().position(|c| c.contains(&x)).expect("cosets cover G");
        let action = cosets
            .iter()
            .map(|c| {
                let x = *c.iter().next().expect("nonempty coset");
                group.elements().map(|g| index(group.mul(x, g))).collect()
            })
            .collect();
        GSet { group, action }
    }

    /// Points of `self` first, then those of `other` shifted by `self.points()`.
    pub fn disjoint_union(&self, other: &GSet<'a>) -> Result<GSet<'a>, GSetError> {
        if self.group != other.group {
            return Err(GSetError::GroupMismatch);
        }
        let shift = self.points();
        let mut action = self.action.clone();
        action.extend(other.action.iter().map(|row| row.iter().map(|q| q + shift).collect()));
        Ok(GSet {
            group: self.group,
            action,
        })
    }

    pub fn group(&self) -> &'a FiniteGroup {
        self.group
    }

    pub fn points(&self) -> usize {
        self.action.len()
    }

    pub fn act(&self, p: usize, g: usize) -> usize {
        self.action[p][g]
    }

    pub fn action(&self) -> &[Vec<usize>] {
        &self.action
    }

    pub fn stabilizer(&self, p: usize) -> Vec<usize> {
        self.group.elements().filter(|&g| self.act(p, g) == p).collect()
    }

    pub fn orbit(&self, p: usize) -> BTreeSet<usize> {
        self.group.elements().map(|g| self.act(p, g)).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RepChoice {
    Min,
    Max,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitData {
    /// Orbits sorted by their representative.
    pub orbits: Vec<Vec<usize>>,
    pub reps: Vec<usize>,
    pub stabilizers: Vec<Vec<usize>>,
    /// `C_G(G_s)` for each representative `s`.
    pub centralizers: Vec<Vec<usize>>,
    /// Index into `orbits` for every point.
    pub orbit_of: Vec<usize>,
}

pub fn orbit_data(a: &GSet<'_>) -> OrbitData {
    orbit_data_with(a, RepChoice::Min)
}

pub fn orbit_data_with(a: &GSet<'_>, choice: RepChoice) -> OrbitData {
    let mut seen = vec![false; a.points()];
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for p in 0..a.points() {
        if seen[p] {
            continue;
        }
        let orbit: Vec<usize> = a.orbit(p).into_iter().collect();
        for &q in &orbit {
            seen[q] = true;
        }
        orbits.push(orbit);
    }
    let reps: Vec<usize> = orbits
        .iter()
        .map(|o| match choice {
            RepChoice::Min => o[0],
            RepChoice::Max => *o.last().expect("nonempty orbit"),
        })
        .collect();
    let mut orbit_of = vec![0; a.points()];
    for (i, o) in orbits.iter().enumerate() {
        for &q in o {
            orbit_of[q] = i;
        }
    }
    let stabilizers: Vec<Vec<usize>> = reps.iter().map(|&s| a.stabilizer(s)).collect();
    let centralizers = stabilizers.iter().map(|st| a.group().centralizer(st)).collect();
    OrbitData {
        orbits,
        reps,
        stabilizers,
        centralizers,
        orbit_of,
    }
}

/// A verified `G`-map `source → target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivariantMap<'a, 'b> {
    source: &'b GSet<'a>,
    target: &'b GSet<'a>,
    map: Vec<usize>,
}

impl<'a, 'b> EquivariantMap<'a, 'b> {
    pub fn new(source: &'b GSet<'a>, target: &'b GSet<'a>, map: Vec<usize>) -> Result<Self, GSetError> {
        if source.group() != target.group() {
            return Err(GSetError::GroupMismatch);
        }
        if map.len() != source.points() || map.iter().any(|&q| q >= target.points()) {
            return Err(GSetError::NotEquivariant { point: 0, g: 0 });
        }
        for q in 0..source.points() {
            for g in source.group().elements() {
                if map[source.act(q, g)] != target.act(map[q], g) {
                    return Err(GSetError::NotEquivariant { point: q, g });
                }
            }
        }
        Ok(EquivariantMap { source, target, map })
    }

    pub fn identity(a: &'b GSet<'a>) -> Self {
        EquivariantMap {
            source: a,
            target: a,
            map: (0..a.points()).collect(),
        }
    }

    pub fn source(&self) -> &'b GSet<'a> {
        self.source
    }

    pub fn target(&self) -> &'b GSet<'a> {
        self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, q: usize) -> usize {
        self.map[q]
    }

    /// `self ∘ first`
    pub fn after(&self, first: &EquivariantMap<'a, 'b>) -> Result<EquivariantMap<'a, 'b>, GSetError> {
        if first.target != self.source {
            return Err(GSetError::GroupMismatch);
        }
        Ok(EquivariantMap {
            source: first.source,
            target: self.target,
            map: first.map.iter().map(|&q| self.map[q]).collect(),
        })
    }

    /// All `G`-maps `source → target`, sorted by their point tables.
    pub fn enumerate(source: &'b GSet<'a>, target: &'b GSet<'a>) -> Vec<EquivariantMap<'a, 'b>> {
        let od = orbit_data(source);
        // an orbit rep q can go to any t whose stabilizer contains G_q
        let options: Vec<Vec<usize>> = od
            .reps
            .iter()
            .zip(&od.stabilizers)
            .map(|(_, st)| {
                (0..target.points())
                    .filter(|&t| st.iter().all(|&g| target.act(t, g) == t))
                    .collect()
            })
            .collect();
        let mut out = Vec::new();
        let mut pick = vec![0usize; options.len()];
        if options.iter().any(Vec::is_empty) {
            return out;
        }
        loop {
            let mut map = vec![usize::MAX; source.points()];
            for (k, &s) in od.reps.iter().enumerate() {
                let t = options[k][pick[k]];
                for g in source.group().elements() {
                    map[source.act(s, g)] = target.act(t, g);
                }
            }
            out.push(EquivariantMap { source, target, map });
            let mut k = 0;
            loop {
                if k == pick.len() {
                    out.sort_by(|x, y| x.map.cmp(&y.map));
                    return out;
                }
                pick[k] += 1;
                if pick[k] < options[k].len() {
                    break;
                }
                pick[k] = 0;
                k += 1;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn natural_s3_action() {
        let g = FiniteGroup::symmetric(3);
        let a = GSet::natural(&g).unwrap();
        assert!(GSet::new(&g, a.action().to_vec()).is_ok());
        let od = orbit_data(&a);
        assert_eq!(od.orbits.len(), 1);
        assert_eq!(od.stabilizers[0].len(), 2);
        assert_eq!(od.centralizers[0].len(), 2);
    }

    #[test]
    fn regular_and_trivial_orbits() {
        let g = FiniteGroup::symmetric(3);
        let od = orbit_data(&GSet::regular(&g));
        assert_eq!((od.orbits.len(), od.stabilizers[0].len(), od.centralizers[0].len()), (1, 1, 6));
        let od = orbit_data(&GSet::trivial(&g, 1));
        assert_eq!(od.stabilizers[0].len(), 6);
        assert_eq!(od.centralizers[0], g.center());
    }

    #[test]
    fn invalid_action_rejected() {
        let g = FiniteGroup::cyclic(3);
        // swapping two points is not a Z3 action
        let bad = vec![vec![0, 1, 1], vec![1, 0, 0]];
        assert!(matches!(GSet::new(&g, bad), Err(GSetError::InvalidAction { .. })));
    }

    #[test]
    fn cosets_and_maps() {
        let g = FiniteGroup::symmetric(3);
        let t = g.element_by_name("(12)").unwrap();
        let c = GSet::cosets(&g, &[t]);
        assert_eq!(c.points(), 3);
        let reg = GSet::regular(&g);
        // maps from the regular set are determined by the image of e
        assert_eq!(EquivariantMap::enumerate(&reg, &c).len(), 3);
        assert!(EquivariantMap::enumerate(&c, &reg).is_empty());
        assert_eq!(EquivariantMap::enumerate(&c, &c).len(), 1);
    }
}
