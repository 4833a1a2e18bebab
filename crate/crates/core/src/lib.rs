pub mod cli;
pub mod complexify;
pub mod euler_darboux;
pub mod exact_arith;
pub mod expr_io;
pub mod jet;
