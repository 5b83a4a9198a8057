pub mod argument;
pub mod check;
pub mod coherence;
pub mod formula;
pub mod framework;
pub mod kb;
pub mod semantics;
