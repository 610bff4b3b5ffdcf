//! Active learning of weighted finite automata over the max-plus semiring.
//!
//! The learner keeps its observation table both row-closed and column-closed,
//! which makes every hypothesis agree with every membership answer it has
//! seen. Arithmetic is exact over `ℚ ∪ {−∞}`.
//!
//! ```
//! use tropical_lstar::learner::{learn_target, LearnConfig};
//! use tropical_lstar::witnesses;
//!
//! let target = witnesses::three_state();
//! let outcome = learn_target(&target, &LearnConfig::named("column-closed").unwrap()).unwrap();
//! assert!(outcome.converged());
//! let ab = target.alphabet().parse_word("ab").unwrap();
//! let learned = outcome.hypothesis.unwrap();
//! assert_eq!(learned.evaluate(&ab).unwrap(), target.evaluate(&ab).unwrap());
//! ```

pub mod gen;
pub mod hankel;
pub mod learner;
pub mod linalg;
pub mod oracles;
pub mod semiring;
pub mod wfa;
pub mod witnesses;
pub mod word;

pub use semiring::Scalar;
pub use wfa::Wfa;
pub use word::{Alphabet, Word};
