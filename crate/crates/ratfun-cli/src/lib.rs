//! Library surface of the `approx` command-line tool: expression parsing,
//! the saved-fit JSON schema, CSV plot-data files, and the subcommand
//! implementations.

pub mod expr;
pub mod io;
pub mod run;
pub mod schema;
