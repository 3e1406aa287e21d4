use std::path::{Path, PathBuf};

use serde_json::Value;

use crate::exactmath::{Field, Scalar};
use crate::freeprod::{FiniteGroup, FreeProdError, GroupHom, GroupViolation};
use crate::gset::{GSet, GSetError};
use crate::rewrite::{LieData, NcPolynomial, RewriteError, RewriteSystem, Rule, Monomial};
use crate::tensoralg::{AlgebraViolation, StructAlgebra, TensorElement, TensorError};

use super::IoError;

/// Loads documents referenced by path from inside another document.
pub trait Resolver {
    fn load(&self, path: &str) -> Result<String, IoError>;
}

/// Resolves relative paths against a base directory.
#[derive(Clone, Debug)]
pub struct FsResolver {
    base: PathBuf,
}

impl FsResolver {
    pub fn new(base: impl Into<PathBuf>) -> FsResolver {
        FsResolver { base: base.into() }
    }

    /// Resolver for documents referenced from `file`.
    pub fn beside(file: &Path) -> FsResolver {
        FsResolver::new(file.parent().map(Path::to_path_buf).unwrap_or_default())
    }
}

impl Resolver for FsResolver {
    fn load(&self, path: &str) -> Result<String, IoError> {
        let full = self.base.join(path);
        std::fs::read_to_string(&full).map_err(|_| IoError::FileNotFound(full.display().to_string()))
    }
}

fn parse_json(text: &str) -> Result<Value, IoError> {
    serde_json::from_str(text).map_err(|e| IoError::Json {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

struct Node<'a> {
    v: &'a Value,
    ptr: String,
}

impl<'a> Node<'a> {
    fn root(v: &'a Value) -> Node<'a> {
        Node { v, ptr: String::new() }
    }

    fn schema(&self, message: impl Into<String>) -> IoError {
        IoError::SchemaViolation {
            pointer: self.ptr.clone(),
            message: message.into(),
        }
    }

    fn invalid(&self, message: impl Into<String>) -> IoError {
        IoError::ValidationFailure {
            pointer: self.ptr.clone(),
            message: message.into(),
        }
    }

    fn child(&self, key: &str) -> String {
        format!("{}/{}", self.ptr, key.replace('~', "~0").replace('/', "~1"))
    }

    fn opt(&self, key: &str) -> Option<Node<'a>> {
        self.v.get(key).filter(|v| !v.is_null()).map(|v| Node { v, ptr: self.child(key) })
    }

    fn get(&self, key: &str) -> Result<Node<'a>, IoError> {
        if !self.v.is_object() {
            return Err(self.schema("expected an object"));
        }
        self.opt(key).ok_or_else(|| IoError::SchemaViolation {
            pointer: self.child(key),
            message: "missing field".into(),
        })
    }

    fn items(&self) -> Result<Vec<Node<'a>>, IoError> {
        let arr = self.v.as_array().ok_or_else(|| self.schema("expected an array"))?;
        Ok(arr
            .iter()
            .enumerate()
            .map(|(i, v)| Node {
                v,
                ptr: format!("{}/{i}", self.ptr),
            })
            .collect())
    }

    fn items_len(&self, len: usize) -> Result<Vec<Node<'a>>, IoError> {
        let items = self.items()?;
        if items.len() != len {
            return Err(self.schema(format!("expected {len} entries, found {}", items.len())));
        }
        Ok(items)
    }

    fn usize(&self) -> Result<usize, IoError> {
        self.v
            .as_u64()
            .map(|n| n as usize)
            .ok_or_else(|| self.schema("expected a nonnegative integer"))
    }

    fn string(&self) -> Result<String, IoError> {
        self.v
            .as_str()
            .map(str::to_string)
            .ok_or_else(|| self.schema("expected a string"))
    }

    fn strings(&self) -> Result<Vec<String>, IoError> {
        self.items()?.iter().map(Node::string).collect()
    }

    fn scalar(&self, field: Field) -> Result<Scalar, IoError> {
        let text = match self.v {
            Value::String(s) => s.clone(),
            Value::Number(n) if n.is_i64() => n.to_string(),
            _ => return Err(self.schema("expected an integer or a scalar string")),
        };
        field.parse_scalar(&text).map_err(|e| self.schema(e.to_string()))
    }

    fn scalars(&self, field: Field, len: usize) -> Result<Vec<Scalar>, IoError> {
        self.items_len(len)?.iter().map(|n| n.scalar(field)).collect()
    }

    fn field(&self) -> Result<Field, IoError> {
        let c = self.get("char")?;
        let p = c.v.as_u64().ok_or_else(|| c.schema("expected a nonnegative integer"))?;
        Field::from_characteristic(p).map_err(|e| c.schema(e.to_string()))
    }
}

fn group_from(root: &Node<'_>) -> Result<FiniteGroup, IoError> {
    let order_node = root.get("order")?;
    let order = order_node.usize()?;
    let table_node = root.get("table")?;
    let rows = table_node.items()?;
    if rows.len() != order {
        return Err(table_node.schema(format!("expected {order} rows, found {}", rows.len())));
    }
    let mut table = Vec::with_capacity(order);
    for row in &rows {
        table.push(row.items()?.iter().map(Node::usize).collect::<Result<Vec<_>, _>>()?);
    }
    let names = root.opt("names").map(|n| n.strings()).transpose()?;
    FiniteGroup::from_table(table, names).map_err(|e| match e {
        FreeProdError::InvalidGroup(v) => {
            let msg = v.to_string();
            match v {
                GroupViolation::Shape { row } | GroupViolation::NotLatinRow { row } => IoError::SchemaViolation {
                    pointer: format!("/table/{row}"),
                    message: msg,
                },
                GroupViolation::OutOfRange { row, col } => IoError::SchemaViolation {
                    pointer: format!("/table/{row}/{col}"),
                    message: msg,
                },
                GroupViolation::NotLatinColumn { .. } | GroupViolation::Empty => table_node.schema(msg),
                GroupViolation::Names { .. } => IoError::SchemaViolation {
                    pointer: "/names".into(),
                    message: msg,
                },
                GroupViolation::NoIdentity | GroupViolation::NotAssociative { .. } => table_node.invalid(msg),
            }
        }
        other => root.invalid(other.to_string()),
    })
}

/// Group file: `{"order": n, "table": [[...]], "names": [...]}`.
pub fn parse_group(text: &str) -> Result<FiniteGroup, IoError> {
    group_from(&Node::root(&parse_json(text)?))
}

fn load_group(node: &Node<'_>, resolver: &dyn Resolver) -> Result<FiniteGroup, IoError> {
    let path = node.string()?;
    let text = resolver.load(&path)?;
    parse_group(&text).map_err(|e| e.in_file(&path))
}

/// A homomorphism file together with the groups it references.
#[derive(Clone, Debug)]
pub struct GroupHomFile {
    pub from: FiniteGroup,
    pub to: FiniteGroup,
    pub map: Vec<usize>,
}

impl GroupHomFile {
    pub fn hom(&self) -> Result<GroupHom<'_>, IoError> {
        GroupHom::new(&self.from, &self.to, self.map.clone()).map_err(|e| IoError::ValidationFailure {
            pointer: "/map".into(),
            message: e.to_string(),
        })
    }
}

/// Homomorphism file: `{"from": path, "to": path, "map": [...]}`.
pub fn parse_group_hom(text: &str, resolver: &dyn Resolver) -> Result<GroupHomFile, IoError> {
    let v = parse_json(text)?;
    let root = Node::root(&v);
    let from = load_group(&root.get("from")?, resolver)?;
    let to = load_group(&root.get("to")?, resolver)?;
    let map_node = root.get("map")?;
    let map = map_node
        .items_len(from.order())?
        .iter()
        .map(|n| {
            let x = n.usize()?;
            if x >= to.order() {
                return Err(n.schema("element index out of range"));
            }
            Ok(x)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let file = GroupHomFile { from, to, map };
    file.hom()?;
    Ok(file)
}

/// Algebra file: `{"dim": d, "field": {"char": p}, "structure": [[[...]]], "unit": [...], "names": [...]}`
/// with `structure[i][j]` the coordinates of `eᵢeⱼ`.
pub fn parse_algebra(text: &str) -> Result<StructAlgebra, IoError> {
    let v = parse_json(text)?;
    let root = Node::root(&v);
    let dim_node = root.get("dim")?;
    let dim = dim_node.usize()?;
    if dim == 0 {
        return Err(dim_node.schema("dimension must be positive"));
    }
    let field = root.get("field")?.field()?;
    let mut structure = Vec::with_capacity(dim);
    for row in root.get("structure")?.items_len(dim)? {
        let mut out = Vec::with_capacity(dim);
        for cell in row.items_len(dim)? {
            out.push(cell.scalars(field, dim)?);
        }
        structure.push(out);
    }
    let unit_node = root.get("unit")?;
    let unit = unit_node.scalars(field, dim)?;
    let names = match root.opt("names") {
        Some(n) => {
            let names = n.strings()?;
            if names.len() != dim {
                return Err(n.schema(format!("expected {dim} names, found {}", names.len())));
            }
            Some(names)
        }
        None => None,
    };
    StructAlgebra::new(field, structure, &unit, names).map_err(|e| match e {
        TensorError::InvalidAlgebra(v) => {
            let pointer = match v {
                AlgebraViolation::UnitNotFirstBasisVector | AlgebraViolation::UnitNotIdentity { .. } => "/unit",
                AlgebraViolation::Empty => "/dim",
                _ => "/structure",
            };
            IoError::ValidationFailure {
                pointer: pointer.into(),
                message: v.to_string(),
            }
        }
        other => root.invalid(other.to_string()),
    })
}

/// Candidate file: `{"w": [[...]]}` with `w[i][j]` the coefficient of `eᵢ⊗eⱼ`, or
/// `{"pairs": [{"a": [...], "b": [...]}]}` for `Σ a⊗b`.
pub fn parse_candidate(text: &str, r: &StructAlgebra) -> Result<TensorElement, IoError> {
    let v = parse_json(text)?;
    let root = Node::root(&v);
    let d = r.dim();
    let field = r.field();
    let shape = |e: TensorError| root.invalid(e.to_string());
    if let Some(w) = root.opt("w") {
        let mut coords = Vec::with_capacity(d * d);
        for row in w.items_len(d)? {
            coords.extend(row.scalars(field, d)?);
        }
        return TensorElement::from_coords(field, d, 2, coords).map_err(shape);
    }
    if let Some(pairs) = root.opt("pairs") {
        let mut out = Vec::new();
        for p in pairs.items()? {
            out.push((p.get("a")?.scalars(field, d)?, p.get("b")?.scalars(field, d)?));
        }
        return TensorElement::from_pairs(field, d, &out).map_err(shape);
    }
    Err(root.schema("expected a \"w\" or \"pairs\" field"))
}

/// System file: `{"field": {"char": p}, "generators": [...], "precedence": [...], "rules": [...]}`.
///
/// `precedence` lists the generators from lowest to highest and defaults to the order of
/// `generators`; the field defaults to `Q`. Each rule is
/// `{"lhs": ["y1", "x1"], "rhs": [{"word": [], "coeff": "1"}]}`.
pub fn parse_system(text: &str) -> Result<RewriteSystem, IoError> {
    let v = parse_json(text)?;
    let root = Node::root(&v);
    let field = root.opt("field").map(|n| n.field()).transpose()?.unwrap_or(Field::Rational);
    let gens_node = root.get("generators")?;
    let gens = gens_node.strings()?;
    let mut sorted = gens.clone();
    sorted.sort();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(gens_node.schema("duplicate generator name"));
    }
    let order = match root.opt("precedence") {
        Some(n) => {
            let p = n.strings()?;
            let mut ps = p.clone();
            ps.sort();
            if ps != sorted {
                return Err(n.schema("precedence must list every generator exactly once"));
            }
            p
        }
        None => gens,
    };
    let id = |node: &Node<'_>| -> Result<u32, IoError> {
        let name = node.string()?;
        order
            .iter()
            .position(|g| *g == name)
            .map(|i| i as u32)
            .ok_or_else(|| node.schema(format!("unknown generator {name:?}")))
    };
    let rules_node = root.get("rules")?;
    let mut rules = Vec::new();
    for rule in rules_node.items()? {
        let lhs = rule.get("lhs")?.items()?.iter().map(&id).collect::<Result<Vec<_>, _>>()?;
        let mut rhs = NcPolynomial::zero(field);
        for term in rule.get("rhs")?.items()? {
            let word = term.get("word")?.items()?.iter().map(&id).collect::<Result<Vec<_>, _>>()?;
            rhs.add_term(Monomial(word), term.get("coeff")?.scalar(field)?);
        }
        rules.push(Rule { lhs, rhs });
    }
    RewriteSystem::new(field, order, rules).map_err(|e| {
        let at = |i: usize, suffix: &str| format!("/rules/{i}{suffix}");
        match e {
            RewriteError::EmptyLhs(i) => IoError::SchemaViolation {
                pointer: at(i, "/lhs"),
                message: e.to_string(),
            },
            RewriteError::NotDecreasing(i) | RewriteError::UnknownGenerator(i) => IoError::ValidationFailure {
                pointer: at(i, ""),
                message: e.to_string(),
            },
            other => rules_node.invalid(other.to_string()),
        }
    })
}

/// Lie file: `{"dim": d, "field": {"char": p}, "brackets": [[[...]]], "names": [...]}` with
/// `brackets[i][j]` the coordinates of `[eᵢ, eⱼ]`.
pub fn parse_lie(text: &str) -> Result<LieData, IoError> {
    let v = parse_json(text)?;
    let root = Node::root(&v);
    let dim = root.get("dim")?.usize()?;
    let field = root.get("field")?.field()?;
    let mut brackets = Vec::with_capacity(dim * dim);
    for row in root.get("brackets")?.items_len(dim)? {
        for cell in row.items_len(dim)? {
            brackets.push(cell.scalars(field, dim)?);
        }
    }
    let names = match root.opt("names") {
        Some(n) => {
            let names = n.strings()?;
            if names.len() != dim {
                return Err(n.schema(format!("expected {dim} names, found {}", names.len())));
            }
            Some(names)
        }
        None => None,
    };
    LieData::new(field, dim, brackets, names).map_err(|e| match e {
        RewriteError::AntisymmetryViolation { i, j } => IoError::ValidationFailure {
            pointer: format!("/brackets/{i}/{j}"),
            message: e.to_string(),
        },
        other => root.invalid(other.to_string()),
    })
}

/// A G-set file with its group loaded.
#[derive(Clone, Debug)]
pub struct GSetFile {
    pub group: FiniteGroup,
    pub action: Vec<Vec<usize>>,
}

impl GSetFile {
    pub fn gset(&self) -> Result<GSet<'_>, IoError> {
        GSet::new(&self.group, self.action.clone()).map_err(|e| {
            let pointer = match e {
                GSetError::Shape { point } | GSetError::InvalidAction { point, .. } => format!("/action/{point}"),
                GSetError::OutOfRange { point, element } => format!("/action/{point}/{element}"),
                _ => "/action".into(),
            };
            IoError::ValidationFailure {
                pointer,
                message: e.to_string(),
            }
        })
    }
}

/// G-set file: `{"group": path, "points": n, "action": [[...]]}` with `action[p][g] = p·g`.
pub fn parse_gset(text: &str, resolver: &dyn Resolver) -> Result<GSetFile, IoError> {
    let v = parse_json(text)?;
    let root = Node::root(&v);
    let group = load_group(&root.get("group")?, resolver)?;
    let points = root.get("points")?.usize()?;
    let mut action = Vec::with_capacity(points);
    for row in root.get("action")?.items_len(points)? {
        let mut out = Vec::with_capacity(group.order());
        for cell in row.items_len(group.order())? {
            let q = cell.usize()?;
            if q >= points {
                return Err(cell.schema("point index out of range"));
            }
            out.push(q);
        }
        action.push(out);
    }
    let file = GSetFile { group, action };
    file.gset()?;
    Ok(file)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn non_latin_table_reports_row() {
        let text = r#"{"order": 3, "table": [[0,1,2],[1,2,0],[2,2,1]]}"#;
        let err = parse_group(text).unwrap_err();
        assert_eq!(err.pointer(), Some("/table/2"));
        assert!(matches!(err, IoError::SchemaViolation { .. }));
    }

    #[test]
    fn missing_and_mistyped_fields() {
        let err = parse_group(r#"{"table": [[0]]}"#).unwrap_err();
        assert_eq!(err.pointer(), Some("/order"));
        let err = parse_group(r#"{"order": 1, "table": [["a"]]}"#).unwrap_err();
        assert_eq!(err.pointer(), Some("/table/0/0"));
        assert!(matches!(parse_group("{"), Err(IoError::Json { .. })));
    }

    #[test]
    fn wrong_unit_names_axiom() {
        // K[z]/(z²) with the unit given as z
        let text = r#"{"dim": 2, "field": {"char": 0},
            "structure": [[[1,0],[0,1]],[[0,1],[0,0]]], "unit": [0,1]}"#;
        let err = parse_algebra(text).unwrap_err();
        assert_eq!(err.pointer(), Some("/unit"));
        assert!(err.to_string().contains("unit axiom"));
    }

    #[test]
    fn scalars_in_both_forms() {
        let text = r#"{"dim": 1, "field": {"char": 3}, "structure": [[["1 mod 3"]]], "unit": [4]}"#;
        let r = parse_algebra(text).unwrap();
        assert_eq!(r.field(), Field::Prime(3));
        let bad = r#"{"dim": 1, "field": {"char": 3}, "structure": [[["1 mod 5"]]], "unit": [1]}"#;
        assert_eq!(parse_algebra(bad).unwrap_err().pointer(), Some("/structure/0/0/0"));
    }

    #[test]
    fn system_precedence_and_orientation() {
        let text = r#"{"generators": ["x", "y"], "precedence": ["y", "x"],
            "rules": [{"lhs": ["x", "y"], "rhs": [{"word": ["y", "x"], "coeff": "1"}]}]}"#;
        let rs = parse_system(text).unwrap();
        assert_eq!(rs.generators(), ["y", "x"]);
        // with the default precedence the same rule increases the order
        let flipped = text.replace(r#""precedence": ["y", "x"],"#, "");
        assert_eq!(parse_system(&flipped).unwrap_err().pointer(), Some("/rules/0"));
    }

    #[test]
    fn lie_antisymmetry_pointer() {
        let text = r#"{"dim": 2, "field": {"char": 0}, "brackets": [[[0,0],[1,0]],[[1,0],[0,0]]]}"#;
        assert_eq!(parse_lie(text).unwrap_err().pointer(), Some("/brackets/0/1"));
    }
}
