use std::fmt;
use std::str::FromStr;

use parity_lab::curve::{CurveError, TwoTorsionModel, WeierstrassModel};
use serde::{Deserialize, Serialize};

/// A curve as typed by the user: `a1,a2,a3,a4,a6` or `tt:a,b`, optionally
/// preceded by a label and whitespace.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveInput {
    pub raw: String,
    pub label: Option<String>,
    #[serde(skip)]
    model: Option<WeierstrassModel>,
    #[serde(skip)]
    two_torsion: Option<TwoTorsionModel>,
}

fn parse_ints(s: &str, n: usize, raw: &str) -> Result<Vec<i128>, CurveError> {
    let v: Vec<i128> = s
        .split(',')
        .map(|t| t.trim().parse::<i128>())
        .collect::<Result<_, _>>()
        .map_err(|_| CurveError::Parse(raw.to_string()))?;
    if v.len() != n {
        return Err(CurveError::Parse(raw.to_string()));
    }
    Ok(v)
}

impl CurveInput {
    pub fn model(&self) -> WeierstrassModel {
        self.model.expect("parsed input always has a model")
    }

    /// The input's own 2-torsion form, if it was given as `tt:a,b`.
    pub fn two_torsion(&self) -> Option<TwoTorsionModel> {
        self.two_torsion
    }
}

impl FromStr for CurveInput {
    type Err = CurveError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let mut parts = s.split_whitespace();
        let (label, body) = match (parts.next(), parts.next(), parts.next()) {
            (Some(body), None, _) => (None, body),
            (Some(label), Some(body), None) => (Some(label.to_string()), body),
            _ => return Err(CurveError::Parse(s.to_string())),
        };
        let (model, two_torsion) = if let Some(rest) = body.strip_prefix("tt:") {
            let v = parse_ints(rest, 2, s)?;
            let t = TwoTorsionModel::new(v[0], v[1])?;
            (t.to_weierstrass(), Some(t))
        } else {
            let v = parse_ints(body, 5, s)?;
            (WeierstrassModel::new(v[0], v[1], v[2], v[3], v[4])?, None)
        };
        Ok(CurveInput {
            raw: body.to_string(),
            label,
            model: Some(model),
            two_torsion,
        })
    }
}

impl fmt::Display for CurveInput {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.label {
            Some(l) => write!(f, "{l} {}", self.raw),
            None => write!(f, "{}", self.raw),
        }
    }
}
