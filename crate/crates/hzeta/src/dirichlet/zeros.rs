//! Ordinate lists: one decimal per line, `#` starts a comment.

use std::path::Path;

use rug::Float;

use super::character::DirichletCharacter;
use crate::error::{Error, Result};

pub const ZETA_ZEROS_100: &str = include_str!("../../data/zeta_zeros_100.txt");
pub const MOD4_ZEROS_100: &str = include_str!("../../data/dirichlet_4_1_zeros_100.txt");

/// Ordinates t_n > 0 of zeros 1/2 + i t_n of L(s, χ), ascending.
#[derive(Debug, Clone)]
pub struct ZeroList {
    pub character: DirichletCharacter,
    pub source: String,
    text: Vec<String>,
    approx: Vec<f64>,
}

impl ZeroList {
    pub fn empty(character: DirichletCharacter) -> ZeroList {
        ZeroList { character, source: "empty".into(), text: Vec::new(), approx: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.text.len()
    }

    pub fn is_empty(&self) -> bool {
        self.text.is_empty()
    }

    pub fn approx(&self) -> &[f64] {
        &self.approx
    }

    /// The n-th ordinate parsed from its decimal text at precision `prec`.
    pub fn ordinate(&self, n: usize, prec: u32) -> Float {
        parse_decimal(&self.text[n], prec).expect("validated on load")
    }

    /// Keeps only ordinates up to `height`.
    pub fn truncated(&self, height: f64) -> ZeroList {
        let k = self.approx.iter().take_while(|&&t| t <= height).count();
        ZeroList {
            character: self.character.clone(),
            source: self.source.clone(),
            text: self.text[..k].to_vec(),
            approx: self.approx[..k].to_vec(),
        }
    }
}

pub(crate) fn parse_decimal(s: &str, prec: u32) -> Option<Float> {
    Float::parse(s).ok().map(|v| Float::with_val(prec, v))
}

/// Non-comment, non-blank lines with their 1-based line numbers.
pub(crate) fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let body = line.split('#').next().unwrap_or("").trim();
        (!body.is_empty()).then_some((i + 1, body))
    })
}

pub fn parse_zero_list(text: &str, chi: &DirichletCharacter, source: &str) -> Result<ZeroList> {
    let mut out = ZeroList::empty(chi.clone());
    out.source = source.to_string();
    for (line, body) in data_lines(text) {
        let v = parse_decimal(body, 64)
            .filter(|v| v.is_finite())
            .ok_or_else(|| Error::Parse { line, msg: format!("not a number: {body:?}") })?;
        let t = v.to_f64();
        if t <= 0.0 {
            return Err(Error::Parse { line, msg: "ordinates must be positive".into() });
        }
        if out.approx.last().is_some_and(|&prev| t <= prev) {
            return Err(Error::Monotonicity { line });
        }
        out.text.push(body.to_string());
        out.approx.push(t);
    }
    Ok(out)
}

pub fn load_zero_list(path: &Path, chi: &DirichletCharacter) -> Result<ZeroList> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_zero_list(&text, chi, &path.display().to_string())
}

pub fn bundled_zeta_zeros() -> ZeroList {
    parse_zero_list(ZETA_ZEROS_100, &DirichletCharacter::principal(1), "zeta_zeros_100.txt")
        .expect("bundled list is valid")
}

/// Zeros of L(s, χ₄) for the nontrivial character mod 4.
pub fn bundled_mod4_zeros() -> ZeroList {
    let chi4 = super::character::enumerate_characters(4).pop().expect("two characters mod 4");
    parse_zero_list(MOD4_ZEROS_100, &chi4, "dirichlet_4_1_zeros_100.txt").expect("bundled list is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_lists() {
        let z = bundled_zeta_zeros();
        assert_eq!(z.len(), 100);
        assert!((z.approx()[0] - 14.134725141734).abs() < 1e-6);
        let m = bundled_mod4_zeros();
        assert_eq!(m.len(), 100);
        assert!((m.approx()[0] - 6.020948904698).abs() < 1e-9);
    }

    #[test]
    fn parse_errors() {
        let chi = DirichletCharacter::principal(1);
        assert!(parse_zero_list("", &chi, "x").unwrap().is_empty());
        assert!(parse_zero_list("# only a comment\n\n", &chi, "x").unwrap().is_empty());
        assert_eq!(parse_zero_list("1.0\n3.0\n2.0\n", &chi, "x").unwrap_err(), Error::Monotonicity { line: 3 });
        assert!(matches!(parse_zero_list("1.0\nabc\n", &chi, "x"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_zero_list("-1.0\n", &chi, "x"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn ordinate_precision_follows_request() {
        let z = bundled_zeta_zeros();
        let t = z.ordinate(0, 300);
        assert_eq!(t.prec(), 300);
        let back = Float::with_val(300, Float::parse("14.134725141735").unwrap());
        assert_eq!(t, back);
    }
}
