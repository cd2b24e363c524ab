use serde::{Deserialize, Serialize};

use super::{minimalize, Monomial, MonomialError, MonomialIdeal, MAX_VARS};

/// Parses `factor ('*' factor)*` with `factor := 'x' INDEX ('^' EXPONENT)?`.
/// Repeated factors accumulate; `1 ≤ INDEX ≤ num_vars`, `EXPONENT ≥ 1`.
pub fn parse_monomial(text: &str, num_vars: usize) -> Result<Monomial, MonomialError> {
    let bytes = text.as_bytes();
    let mut pos = 0;
    let mut exps = vec![0u32; num_vars];
    let syntax = |position: usize, message: &str| MonomialError::Syntax { position, message: message.into() };
    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };
    let number = |pos: &mut usize| -> Option<u64> {
        let start = *pos;
        while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
            *pos += 1;
        }
        text[start..*pos].parse().ok()
    };
    loop {
        skip_ws(&mut pos);
        if pos >= bytes.len() || bytes[pos] != b'x' {
            return Err(syntax(pos, "expected `x`"));
        }
        pos += 1;
        let index_at = pos;
        let index = number(&mut pos).ok_or_else(|| syntax(index_at, "expected variable index"))?;
        if index == 0 || index as usize > num_vars {
            return Err(MonomialError::IndexOutOfRange { index: index as usize, num_vars });
        }
        skip_ws(&mut pos);
        let mut exponent = 1;
        if pos < bytes.len() && bytes[pos] == b'^' {
            pos += 1;
            skip_ws(&mut pos);
            let at = pos;
            exponent = number(&mut pos)
                .filter(|&e| e >= 1 && e <= u32::MAX as u64)
                .ok_or_else(|| syntax(at, "expected positive exponent"))?;
            skip_ws(&mut pos);
        }
        exps[index as usize - 1] += exponent as u32;
        if pos == bytes.len() {
            break;
        }
        if bytes[pos] != b'*' {
            return Err(syntax(pos, "expected `*` or end of input"));
        }
        pos += 1;
    }
    Ok(Monomial::new(exps))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GeneratorJson {
    Exponents(Vec<u32>),
    Text(String),
}

/// `{"variables": n, "generators": [[e_1,...,e_n] | "x1*x2", ...]}`
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdealJson {
    pub variables: usize,
    pub generators: Vec<GeneratorJson>,
}

impl From<&MonomialIdeal> for IdealJson {
    fn from(i: &MonomialIdeal) -> Self {
        IdealJson {
            variables: i.num_vars(),
            generators: i.generators().iter().map(|g| GeneratorJson::Text(g.to_string())).collect(),
        }
    }
}

impl IdealJson {
    pub fn to_ideal(&self) -> Result<MonomialIdeal, MonomialError> {
        if self.variables > MAX_VARS {
            return Err(MonomialError::TooManyVariables(self.variables));
        }
        let gens = self
            .generators
            .iter()
            .map(|g| match g {
                GeneratorJson::Exponents(e) => Ok(Monomial::new(e.clone())),
                GeneratorJson::Text(t) => parse_monomial(t, self.variables),
            })
            .collect::<Result<Vec<_>, _>>()?;
        minimalize(self.variables, gens)
    }
}

pub fn parse_ideal_json(text: &str) -> Result<MonomialIdeal, MonomialError> {
    let parsed: IdealJson = serde_json::from_str(text).map_err(|e| MonomialError::Json(e.to_string()))?;
    parsed.to_ideal()
}
