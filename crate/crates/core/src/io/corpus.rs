use super::{IoError, Resolver};

/// The bundled example files, by file name.
pub const CORPUS_FILES: &[(&str, &str)] = &[
    ("s3.json", include_str!("../../corpus/s3.json")),
    ("d4.json", include_str!("../../corpus/d4.json")),
    ("z6.json", include_str!("../../corpus/z6.json")),
    ("z4.json", include_str!("../../corpus/z4.json")),
    ("m2f2.json", include_str!("../../corpus/m2f2.json")),
    ("gf2.json", include_str!("../../corpus/gf2.json")),
    ("qz2.json", include_str!("../../corpus/qz2.json")),
    ("sl2q.json", include_str!("../../corpus/sl2q.json")),
    ("sl2f3.json", include_str!("../../corpus/sl2f3.json")),
    ("heis-f2.json", include_str!("../../corpus/heis-f2.json")),
    ("leavitt2.json", include_str!("../../corpus/leavitt2.json")),
    ("s3-natural-gset.json", include_str!("../../corpus/s3-natural-gset.json")),
];

pub fn corpus_file(name: &str) -> Option<&'static str> {
    CORPUS_FILES.iter().find(|(n, _)| *n == name).map(|(_, text)| *text)
}

/// Resolves references between corpus files.
#[derive(Clone, Copy, Debug, Default)]
pub struct CorpusResolver;

impl Resolver for CorpusResolver {
    fn load(&self, path: &str) -> Result<String, IoError> {
        corpus_file(path)
            .map(str::to_string)
            .ok_or_else(|| IoError::FileNotFound(path.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::Field;
    use crate::freeprod::FiniteGroup;
    use crate::io::{parse_algebra, parse_group, parse_gset, parse_lie, parse_system};
    use crate::rewrite::{leavitt_system, LieData};
    use crate::tensoralg::StructAlgebra;

    fn text(name: &str) -> &'static str {
        corpus_file(name).unwrap()
    }

    #[test]
    fn groups_match_builders() {
        for (name, g) in [
            ("s3.json", FiniteGroup::symmetric(3)),
            ("d4.json", FiniteGroup::dihedral(4)),
            ("z6.json", FiniteGroup::cyclic(6)),
            ("z4.json", FiniteGroup::cyclic(4)),
        ] {
            let parsed = parse_group(text(name)).unwrap();
            assert_eq!(parsed.table(), g.table(), "{name}");
            assert_eq!(parsed.names(), g.names(), "{name}");
        }
    }

    #[test]
    fn algebras_match_builders() {
        let f2 = Field::prime(2).unwrap();
        for (name, r) in [
            ("m2f2.json", StructAlgebra::matrix_algebra(2, f2)),
            ("gf2.json", StructAlgebra::ground_field(f2)),
            ("qz2.json", StructAlgebra::truncated_polynomial(Field::Rational, 2)),
        ] {
            let parsed = parse_algebra(text(name)).unwrap();
            assert_eq!(parsed.dim(), r.dim(), "{name}");
            assert_eq!(parsed.structure(), r.structure(), "{name}");
            assert_eq!(parsed.names(), r.names(), "{name}");
        }
    }

    #[test]
    fn lie_and_systems_match_builders() {
        for (name, l) in [
            ("sl2q.json", LieData::sl2(Field::Rational)),
            ("sl2f3.json", LieData::sl2(Field::prime(3).unwrap())),
            ("heis-f2.json", LieData::heisenberg(Field::prime(2).unwrap())),
        ] {
            assert_eq!(parse_lie(text(name)).unwrap(), l, "{name}");
        }
        let rs = parse_system(text("leavitt2.json")).unwrap();
        assert_eq!(rs, leavitt_system(2, Field::Rational).unwrap());
    }

    #[test]
    fn gset_resolves_group() {
        let file = parse_gset(text("s3-natural-gset.json"), &CorpusResolver).unwrap();
        let g = FiniteGroup::symmetric(3);
        assert_eq!(file.group.table(), g.table());
        let nat = crate::gset::GSet::natural(&g).unwrap();
        assert_eq!(file.gset().unwrap().action(), nat.action());
        assert!(matches!(CorpusResolver.load("nope.json"), Err(IoError::FileNotFound(_))));
    }
}
