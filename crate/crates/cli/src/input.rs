//! Reading polynomials, block declarations and witnesses from the command
//! line or from input files.

use std::fs;
use std::path::Path;

use apolarity::poly::{parse_linear_form, BlockDecomposition, LinearForm};

use crate::CliError;

/// Non-empty lines of a file with `#` comments removed.
pub fn read_lines(path: &Path) -> Result<Vec<String>, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        source: e,
    })?;
    Ok(text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim().to_string())
        .filter(|l| !l.is_empty())
        .collect())
}

/// Polynomials from a positional argument or a file, one per line.
pub fn polynomials(arg: Option<&str>, file: Option<&Path>) -> Result<Vec<String>, CliError> {
    match (arg, file) {
        (Some(p), None) => Ok(vec![p.to_string()]),
        (None, Some(f)) => {
            let lines = read_lines(f)?;
            if lines.is_empty() {
                return Err(CliError::Usage(format!("{} contains no polynomial", f.display())));
            }
            Ok(lines)
        }
        (Some(_), Some(_)) => Err(CliError::Usage("give either a polynomial or --file, not both".into())),
        (None, None) => Err(CliError::Usage("a polynomial or --file is required".into())),
    }
}

/// One `vars: form` declaration, e.g. `x,y: x*y`.
fn parse_block(decl: &str) -> Result<(Vec<String>, String), CliError> {
    let (vars, form) = decl
        .split_once(':')
        .ok_or_else(|| CliError::Usage(format!("block `{decl}` lacks `vars: form`")))?;
    let vars: Vec<String> = vars
        .split(',')
        .map(|v| v.trim().to_string())
        .filter(|v| !v.is_empty())
        .collect();
    if vars.is_empty() {
        return Err(CliError::Usage(format!("block `{decl}` declares no variables")));
    }
    Ok((vars, form.trim().to_string()))
}

/// Block declarations separated by `;` or newlines.
pub fn parse_blocks(text: &str) -> Result<BlockDecomposition, CliError> {
    let decls: Vec<(Vec<String>, String)> = text
        .split([';', '\n'])
        .map(str::trim)
        .filter(|d| !d.is_empty())
        .map(parse_block)
        .collect::<Result<_, _>>()?;
    if decls.is_empty() {
        return Err(CliError::Usage("no blocks declared".into()));
    }
    Ok(BlockDecomposition::from_named(&decls)?)
}

pub fn blocks(inline: Option<&str>, file: Option<&Path>) -> Result<BlockDecomposition, CliError> {
    match (inline, file) {
        (Some(b), None) => parse_blocks(b),
        (None, Some(f)) => parse_blocks(&read_lines(f)?.join("\n")),
        (Some(_), Some(_)) => Err(CliError::Usage("give either --blocks or --file, not both".into())),
        (None, None) => Err(CliError::Usage("--blocks or --file is required".into())),
    }
}

/// A witness such as `t_y`, `y` or `t_x + 2*t_y` over `vars`.
pub fn witness(text: &str, vars: &[String]) -> Result<LinearForm, CliError> {
    Ok(parse_linear_form(text, vars)?)
}
