//! Ideals, Gröbner bases, radical membership and the certified real-radical
//! closure.

mod closure;
mod groebner;
#[allow(clippy::module_inception)]
mod ideal;
mod radical;
mod sos;

pub use closure::{
    real_radical_closure, verify_certificates, CertificateError, CertificateKind, Closure, ClosureCaps,
    ClosureTruncation, GroebnerBudgetExceeded, RadicalCertificate, RadicalMode, Witness,
};
pub use groebner::{
    groebner_basis, groebner_basis_bounded, groebner_extend, normal_form, reduce_basis, reduces_to_zero, s_polynomial,
    DEFAULT_GROEBNER_WORK, DEFAULT_RADICAL_WORK,
};
pub use ideal::{groebner, Ideal};
pub use radical::{
    power_membership, rabinowitsch, rabinowitsch_bounded, radical_contains, radical_contains_bounded, RadicalVerdict,
    DEFAULT_POWER_CAP,
};
pub use sos::{
    assemble, sos_split, sos_split_capped, verify_split, NotRealError, SosOutcome, SosTerm, DEFAULT_GRAM_CAP,
};
