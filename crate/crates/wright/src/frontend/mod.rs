//! Wright concrete syntax: lexing, parsing, printing and static checks.

pub mod lexer;
pub mod parser;
pub mod pretty;
pub mod static_check;

pub use parser::{parse_process, parse_wright, SyntaxError};
pub use pretty::{event_to_string, process_to_string, unit_to_string};
pub use static_check::check_static;
