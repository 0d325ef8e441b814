//! Exact computation of Tate cohomology, its cup products, and the secondary
//! (Kreck) product on the homology of classifying spaces of finite groups.
//!
//! The layers build on each other:
//!
//! - [`exactlinalg`]: big-integer matrices, Smith normal form, solvers.
//! - [`groupalg`]: groups by table and matrices over `ZG`.
//! - [`complexes`]: windowed complexes of free `ZG`-modules and chain maps.
//! - [`resolutions`]: free and complete resolutions, induced maps, transfers.
//! - [`tate`]: Tate groups and cup products by composing chain maps.
//! - [`products`]: the primary and secondary products on `H_*(BG)`.
//! - [`joinoracle`]: lens-space models and the geometric join product.
//! - [`suite`]: the verification suites run by the CLI and the tests.

pub mod complexes;
pub mod error;
pub mod exactlinalg;
pub mod groupalg;
pub mod joinoracle;
pub mod products;
pub mod resolutions;
pub mod suite;
pub mod tate;

pub use error::{Error, Result};

/// Engine version reported by the CLI.
pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Sign conventions in force. Reports carry a hash of this table, so any
/// change to a convention changes the fingerprint.
pub const SIGN_CONVENTIONS: &[(&str, &str)] = &[
    (
        "matrix",
        "column j of a ZG-matrix is the image of e_j; f(g e_j) = g f(e_j)",
    ),
    (
        "tensor",
        "d(a⊗b) = da⊗b + (-1)^|a| a⊗db, blocks ordered by ascending |a|",
    ),
    ("dual", "dual = transpose with antipode g ↦ g^-1"),
    (
        "complete",
        "X_n = P_n, X_-n = P_(n-1)^*, d_-k = (-1)^k dual(d_k), d_0 = ε_i ε_j N",
    ),
    ("shift", "(X[k])_n = X_(n+k), d ↦ (-1)^k d"),
    (
        "cone",
        "cone_n = A_(n-1) ⊕ B_n, d(a,b) = (-da, f(a) + db), boundary (a,b) ↦ a",
    ),
    ("chain map", "d f = f d with no sign for any shift"),
    (
        "cup",
        "u ∪ v = ε ∘ v̂_(p+q) composed with u, where ε v̂_q = v",
    ),
    (
        "homology-tate",
        "[z] ∈ H_k ↦ [z] ∈ Ĥ^(-k-1) on the same chain vector",
    ),
    ("secondary", "a ∗ b = Φ^-1(Φ a ∪ Φ b)"),
    (
        "join",
        "cone of (i, -j): W → S ⊕ S', top class oriented so that ∂ = +[W]",
    ),
    ("lens", "a_(2k+1) = image of the top cell of the lens model"),
];
