//! Finite groups by multiplication table, homomorphisms, subgroups, and
//! matrices over the integral group ring.

mod group;
mod ring;
mod spec;

pub use group::{FiniteGroup, GroupHom, Structure, Subgroup, MAX_GROUP_ORDER};
pub use ring::{GroupRingElement, ZGMatrix};
pub use spec::build_group;
