//! Exact computation of Mazur–Tate elements and their Iwasawa invariants
//! for Ramanujan's Δ and for rational elliptic curves.
//!
//! The pipeline runs bottom-up through the modules:
//!
//! * [`exactnum`]: rationals, `Z/p^M`, Teichmüller lifts, cyclotomic
//!   discrete logarithms, continued-fraction paths;
//! * [`qseries`]: q-expansions of Δ and of η-quotients, congruence scans;
//! * [`curves`]: Weierstrass models, point counts, torsion, curve files;
//! * [`modsymb`]: weight-k modular symbols for Γ₀(N) via Manin symbols,
//!   Hecke operators and normalized eigen-symbols;
//! * [`mazurtate`]: θ elements, μ/λ invariants, corestriction and the
//!   norm-relation checks.

pub mod curves;
pub mod error;
pub mod exactnum;
pub mod mazurtate;
pub mod modsymb;
pub mod qseries;

pub use error::{Error, Result};
pub use exactnum::{ordp, Rational, ResidueRing, UnimodularPath, Valuation};
pub use mazurtate::{GroupRingElement, IwasawaInvariants, RawTheta};
pub use modsymb::{EigenSymbol, HomogeneousPoly, ManinSymbolSpace};
pub use qseries::QSeries;
pub use curves::{ReductionData, ReductionType, WeierstrassCurve};
