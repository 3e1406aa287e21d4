//! Exact checks for extended inner endomorphisms, inner derivations and co-inner maps of
//! groups, associative algebras, Lie algebras and G-sets.

pub mod embed;
pub mod exactmath;
pub mod freeprod;
pub mod gset;
pub mod io;
pub mod rewrite;
pub mod selftest;
pub mod tensoralg;
