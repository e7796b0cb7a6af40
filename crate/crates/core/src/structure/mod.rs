//! Cutset structure: star-matchings, clique-component checks and the
//! decomposition the cycle assembly starts from.

mod decompose;
mod lemmas;
mod matching;
mod sweep;

pub use decompose::{decompose_cutset, CutsetDecomposition};
pub use lemmas::{
    check_lemma3, check_lemma4, check_lemma5, CliqueComponentViolation, ConnectionPart,
    ConnectionViolation, LemmaVerdict, SingleComponentViolation,
};
pub use matching::{star_matching, Star, StarMatching, StarMatchingResult};
pub use sweep::{sweep_lemmas, LemmaTally};
