//! Singular script export.
//!
//! Format, byte for byte:
//!
//! ```text
//! ring R = 0,(x1,x2,...,xn),dp;
//! ideal I = g1, g2, ...;
//! ```
//!
//! Generators use the monomial text form (`x1^2*x3`) in lex-descending order; the
//! zero ideal is written `ideal I = 0;`. Each line ends with `\n`.

use std::fs;
use std::path::Path;

use crate::error::Result;
use crate::ideal::MonomialIdeal;

pub fn singular_script(ideal: &MonomialIdeal) -> String {
    let vars: Vec<String> = (1..=ideal.n()).map(|i| format!("x{i}")).collect();
    let gens = if ideal.is_empty() {
        "0".to_string()
    } else {
        ideal.gens().iter().map(|g| g.to_string()).collect::<Vec<_>>().join(", ")
    };
    format!("ring R = 0,({}),dp;\nideal I = {};\n", vars.join(","), gens)
}

pub fn export_singular(ideal: &MonomialIdeal, path: &Path) -> Result<()> {
    fs::write(path, singular_script(ideal))?;
    Ok(())
}
