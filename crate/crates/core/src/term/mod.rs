//! Terms over rings with quasi-inversion, and identity checking.

mod ast;
mod identity;
mod parse;

pub use ast::{
    env_xy, gamma, join, meet, ominus, plus, s_n, t_n, term_gamma, term_join, term_meet,
    term_ominus, term_plus, term_s, term_t, Node, Term,
};
pub use identity::{check_identity, Verdict};
pub use parse::{parse_term, MAX_INDEX};
