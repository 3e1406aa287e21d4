use super::{orbit_data, orbit_data_with, EquivariantMap, GSet, GSetError, OrbitData, RepChoice};

/// A choice of `g_s ∈ C_G(G_s)` for each orbit representative `s`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CoInnerDatum {
    pub reps: Vec<usize>,
    pub choice: Vec<usize>,
}

impl CoInnerDatum {
    pub fn new(a: &GSet<'_>, choice: Vec<usize>) -> Result<CoInnerDatum, GSetError> {
        let od = orbit_data(a);
        if choice.len() != od.reps.len() {
            return Err(GSetError::ChoiceLength {
                expected: od.reps.len(),
                found: choice.len(),
            });
        }
        for (k, &g) in choice.iter().enumerate() {
            if !od.centralizers[k].contains(&g) {
                return Err(GSetError::NotCentralizing { rep: od.reps[k], element: g });
            }
        }
        Ok(CoInnerDatum { reps: od.reps, choice })
    }

    pub fn identity(a: &GSet<'_>) -> CoInnerDatum {
        let od = orbit_data(a);
        let e = a.group().identity();
        CoInnerDatum {
            choice: vec![e; od.reps.len()],
            reps: od.reps,
        }
    }

    /// Pointwise product.
    pub fn compose(&self, other: &CoInnerDatum, a: &GSet<'_>) -> CoInnerDatum {
        let g = a.group();
        CoInnerDatum {
            reps: self.reps.clone(),
            choice: self.choice.iter().zip(&other.choice).map(|(&x, &y)| g.mul(x, y)).collect(),
        }
    }
}

/// The self-map `q ↦ q·(h⁻¹ g_s h)` of `f.source()`, where `f(q) = s·h`.
pub fn apply_coinner(d: &CoInnerDatum, a: &GSet<'_>, f: &EquivariantMap<'_, '_>) -> Result<Vec<usize>, GSetError> {
    if f.target() != a {
        return Err(GSetError::GroupMismatch);
    }
    let g = a.group();
    let od = orbit_data(a);
    if od.reps != d.reps {
        return Err(GSetError::ChoiceLength {
            expected: od.reps.len(),
            found: d.reps.len(),
        });
    }
    let b = f.source();
    (0..b.points())
        .map(|q| {
            let t = f.apply(q);
            let k = od.orbit_of[t];
            let s = od.reps[k];
            let gs = d.choice[k];
            let mut value = None;
            for h in g.elements().filter(|&h| a.act(s, h) == t) {
                let v = b.act(q, g.mul(g.mul(g.inv(h), gs), h));
                match value {
                    None => value = Some(v),
                    Some(w) if w != v => return Err(GSetError::NotWellDefined { point: q }),
                    _ => {}
                }
            }
            value.ok_or(GSetError::NoDecomposition { point: q })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoInnerGroup {
    /// All datums in lexicographic order of their choices.
    pub elements: Vec<CoInnerDatum>,
    pub order: usize,
    /// `table[i][j]` indexes `elements[i] · elements[j]`.
    pub table: Vec<Vec<usize>>,
    /// Composition of induced maps matches the table, and distinct datums induce distinct maps,
    /// on a test object with one free orbit over each orbit of `a`.
    pub iso_check: bool,
    /// Same order when every orbit is represented by its largest point.
    pub rep_independent: bool,
}

fn product_size(od: &OrbitData) -> usize {
    od.centralizers.iter().map(Vec::len).product()
}

fn all_choices(od: &OrbitData) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for c in &od.centralizers {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<usize>| {
                c.iter().map(move |&g| {
                    let mut v = prefix.clone();
                    v.push(g);
                    v
                })
            })
            .collect();
    }
    out
}

/// `⊔_s G` with the map sending `g` in copy `k` to `s_k·g`; faithful for co-inner datums.
pub fn free_cover<'a>(a: &GSet<'a>) -> (GSet<'a>, Vec<usize>) {
    let g = a.group();
    let od = orbit_data(a);
    let reg = GSet::regular(g);
    let mut cover = GSet::trivial(g, 0);
    let mut map = Vec::new();
    for &s in &od.reps {
        cover = cover.disjoint_union(&reg).expect("same group");
        map.extend(g.elements().map(|x| a.act(s, x)));
    }
    (cover, map)
}

pub fn coinner_group(a: &GSet<'_>) -> CoInnerGroup {
    let od = orbit_data(a);
    let elements: Vec<CoInnerDatum> = all_choices(&od)
        .into_iter()
        .map(|choice| CoInnerDatum {
            reps: od.reps.clone(),
            choice,
        })
        .collect();
    let index = |d: &CoInnerDatum| elements.binary_search(d).expect("closed under products");
    let table: Vec<Vec<usize>> = elements
        .iter()
        .map(|x| elements.iter().map(|y| index(&x.compose(y, a))).collect())
        .collect();

    let (cover, map) = free_cover(a);
    let f = EquivariantMap::new(&cover, a, map).expect("orbit maps are equivariant");
    let maps: Vec<Vec<usize>> = elements
        .iter()
        .map(|d| apply_coinner(d, a, &f).expect("valid datum"))
        .collect();
    let mut distinct = maps.clone();
    distinct.sort();
    distinct.dedup();
    let composition_ok = (0..elements.len()).all(|i| {
        (0..elements.len()).all(|j| {
            let composed: Vec<usize> = maps[j].iter().map(|&q| maps[i][q]).collect();
            composed == maps[table[i][j]]
        })
    });
    let rep_independent = product_size(&orbit_data_with(a, RepChoice::Max)) == elements.len();
    CoInnerGroup {
        order: elements.len(),
        iso_check: composition_ok && distinct.len() == elements.len() && elements.len() == product_size(&od),
        elements,
        table,
        rep_independent,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleReport {
    /// Every `g: A → G` with `g_{a·h} = h⁻¹ g_a h`, in lexicographic order.
    pub solutions: Vec<Vec<usize>>,
    pub expected: usize,
    /// The solutions restrict bijectively to the datums of [`coinner_group`].
    pub matches: bool,
}

pub const ORACLE_BUDGET: usize = 10_000;

/// Backtracking search for families `(g_a)` satisfying the naturality equations.
pub fn naturality_oracle(a: &GSet<'_>, budget: usize) -> Result<OracleReport, GSetError> {
    let g = a.group();
    let size = a.points() * g.order();
    if size > budget {
        return Err(GSetError::BudgetExceeded { needed: size, budget });
    }
    let n = a.points();
    let mut assign: Vec<Option<usize>> = vec![None; n];
    let mut solutions = Vec::new();
    search(a, 0, &mut assign, &mut solutions);
    let od = orbit_data(a);
    let group = coinner_group(a);
    let mut restricted: Vec<Vec<usize>> = solutions.iter().map(|s| od.reps.iter().map(|&r| s[r]).collect()).collect();
    restricted.sort();
    restricted.dedup();
    let datums: Vec<Vec<usize>> = group.elements.iter().map(|d| d.choice.clone()).collect();
    let expected = product_size(&od);
    Ok(OracleReport {
        matches: solutions.len() == expected && restricted.len() == solutions.len() && restricted == datums,
        solutions,
        expected,
    })
}

fn consistent(a: &GSet<'_>, assign: &[Option<usize>], p: usize) -> bool {
    let g = a.group();
    let gp = assign[p].expect("just assigned");
    g.elements().all(|h| {
        let q = a.act(p, h);
        match assign[q] {
            Some(gq) => gq == g.mul(g.mul(g.inv(h), gp), h),
            None => true,
        }
    }) && (0..p).all(|r| {
        let gr = assign[r].expect("assigned earlier");
        g.elements()
            .filter(|&h| a.act(r, h) == p)
            .all(|h| gp == g.mul(g.mul(g.inv(h), gr), h))
    })
}

fn search(a: &GSet<'_>, p: usize, assign: &mut Vec<Option<usize>>, out: &mut Vec<Vec<usize>>) {
    if p == assign.len() {
        out.push(assign.iter().map(|x| x.expect("complete")).collect());
        return;
    }
    for x in a.group().elements() {
        assign[p] = Some(x);
        if consistent(a, assign, p) {
            search(a, p + 1, assign, out);
        }
    }
    assign[p] = None;
}
