//! Logic functions `F_p^n → F_p`: tables, ANF, character sums, and the coboundary solver.

mod analysis;
mod anf;
mod coboundary;
mod function;

pub(crate) use analysis::apc_sum_vanishes;
pub use analysis::{
    apc_distance, apc_sum, autocorrelation, autocorrelation_spectrum,
    autocorrelation_spectrum_direct, fwht, is_bent, zset, zset_via_autocorrelation, ApcResult,
};
pub use anf::Polynomial;
pub use coboundary::{check_constraints, solve_coboundary, ShiftConstraint};
pub use function::LogicFunction;

use crate::error::{Error, Result};
use crate::fp_algebra::Prime;

/// Reads `p n` followed by `anf: <polynomial>` or `tt: <digits>`; `#` starts a comment.
pub fn parse_function_file(text: &str) -> Result<LogicFunction> {
    let mut lines = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty());
    let header = lines.next().ok_or_else(|| Error::Parse {
        pos: 0,
        msg: "empty function file".into(),
    })?;
    let (p, n) = parse_header(header)?;
    let body: Vec<&str> = lines.collect();
    let body = body.join(" ");
    if let Some(rest) = body.strip_prefix("anf:") {
        LogicFunction::parse_anf(rest.trim(), p, n)
    } else if let Some(rest) = body.strip_prefix("tt:") {
        LogicFunction::parse_table(rest, p, n)
    } else {
        Err(Error::Parse {
            pos: 1,
            msg: "second line must start with `anf:` or `tt:`".into(),
        })
    }
}

/// Parses a `p n` header line.
pub(crate) fn parse_header(line: &str) -> Result<(Prime, usize)> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(Error::Parse {
            pos: 0,
            msg: format!("expected `p n`, got `{line}`"),
        });
    }
    let num = |s: &str| {
        s.parse::<u32>().map_err(|_| Error::Parse {
            pos: 0,
            msg: format!("not a number: `{s}`"),
        })
    };
    let p = Prime::new(num(fields[0])?)?;
    let n = num(fields[1])? as usize;
    if n == 0 {
        return Err(Error::Parse {
            pos: 0,
            msg: "n must be at least 1".into(),
        });
    }
    Ok((p, n))
}
