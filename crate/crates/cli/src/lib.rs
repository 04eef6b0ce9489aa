//! Library half of the `fbpath` command: the verification sweeps.

pub mod checks;
