//! Presentations shipped with the library, addressed as `builtin:NAME`.

use crate::error::{Error, Result};
use crate::presentation::{parse_presentation, Presentation};

const U_TEXT: &str = include_str!("../data/u.pres");
const A_TEXT: &str = include_str!("../data/a.pres");

/// Relations of the degree-4 Veronese subalgebra of `U` in letters
/// `X1..X8, Y1..Y8`, one `name: lhs = rhs` per line.
pub const V4U_APPENDIX: &str = include_str!("../data/v4u_appendix.txt");

/// Names of the built-in associative presentations.
pub const PRESENTATIONS: &[&str] = &["U", "A"];

/// The text of a built-in presentation.
pub fn presentation_text(name: &str) -> Result<&'static str> {
    match name {
        "U" => Ok(U_TEXT),
        "A" => Ok(A_TEXT),
        "L" => Err(Error::InvalidArgument(
            "builtin:L is a Lie algebra, not an associative presentation".into(),
        )),
        other => Err(Error::InvalidArgument(format!("unknown builtin `{other}`"))),
    }
}

pub fn presentation(name: &str) -> Result<Presentation> {
    Ok(parse_presentation(presentation_text(name)?)?.presentation)
}

/// The enveloping algebra on `x < y` with two quartic relators.
pub fn u() -> Presentation {
    presentation("U").expect("shipped presentation parses")
}

/// The monoid algebra on `a < b < c` with seven cubic relators, ordered shortlex.
pub fn a() -> Presentation {
    presentation("A").expect("shipped presentation parses")
}
