//! Parsing of command-line arguments into engine values.
//!
//! States are accepted either as the JSON produced by `State::to_json` or in a
//! short notation: terms separated by `+`, each `[-][coeff*]atom` with atom
//! `|0>`, `vac`, `e^(c1,..,cr)` or `e^[k]w[i]` (also spelled with `ω`).
//! A surrounding pair of braces is ignored, so `{e^ω}` is accepted.

use latvoa::cyclotomic::CycScalar;
use latvoa::lattice_voa::State;
use latvoa::rational::parse_q;
use latvoa::{Error, Result, RootSystem, Weight};

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

/// Weight in fundamental coordinates, written `1,0` or `(1,0)`; `2` for rank one.
pub fn weight(rs: &RootSystem, s: &str) -> Result<Weight> {
    let body = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
    let coords = body
        .split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|_| parse_err(format!("bad weight coordinate `{x}` in `{s}`"))))
        .collect::<Result<Vec<_>>>()?;
    let w = Weight(coords);
    rs.check_rank(&w)?;
    Ok(w)
}

/// `[-][k](w|ω)[i]`: a multiple of one fundamental weight.
fn omega_multiple(rs: &RootSystem, s: &str) -> Result<Weight> {
    let (neg, rest) = match s.strip_prefix('-') {
        Some(r) => (true, r),
        None => (false, s),
    };
    let pos = rest.find(['w', 'ω']).ok_or_else(|| parse_err(format!("bad exponent `{s}`")))?;
    let (k, tail) = rest.split_at(pos);
    let idx = tail.trim_start_matches(['w', 'ω']);
    let k: i64 = if k.is_empty() { 1 } else { k.parse().map_err(|_| parse_err(format!("bad multiple in `{s}`")))? };
    let i: usize = if idx.is_empty() {
        1
    } else {
        idx.trim_start_matches('_').parse().map_err(|_| parse_err(format!("bad index in `{s}`")))?
    };
    if i == 0 || i > rs.rank() {
        return Err(Error::OutOfRange(format!("fundamental index {i} for rank {}", rs.rank())));
    }
    Ok(rs.omega(i).scale(if neg { -k } else { k }))
}

fn atom(rs: &RootSystem, s: &str) -> Result<State> {
    match s {
        "|0>" | "|0⟩" | "vac" | "1" => return Ok(State::vacuum(rs.rank())),
        _ => {}
    }
    let exponent = s.strip_prefix("e^").ok_or_else(|| parse_err(format!("unknown term `{s}`")))?;
    let exponent = exponent.trim_start_matches('{').trim_end_matches('}');
    let w = if exponent.contains(['w', 'ω']) { omega_multiple(rs, exponent)? } else { weight(rs, exponent)? };
    Ok(State::exp(w))
}

fn split_terms(s: &str) -> Result<Vec<&str>> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (k, ch) in s.char_indices() {
        match ch {
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => depth -= 1,
            '+' if depth == 0 => {
                out.push(&s[start..k]);
                start = k + 1;
            }
            _ => {}
        }
        if depth < 0 {
            return Err(parse_err(format!("unbalanced brackets in `{s}`")));
        }
    }
    if depth != 0 {
        return Err(parse_err(format!("unbalanced brackets in `{s}`")));
    }
    out.push(&s[start..]);
    Ok(out)
}

fn shorthand(rs: &RootSystem, s: &str) -> Result<State> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut body = compact.as_str();
    if body.starts_with('{') && body.ends_with('}') {
        body = &body[1..body.len() - 1];
    }
    if body.is_empty() {
        return Err(parse_err("empty state"));
    }
    let mut out = State::zero();
    for term in split_terms(body)? {
        let (neg, term) = match term.strip_prefix('-') {
            Some(t) => (true, t),
            None => (false, term),
        };
        let (coeff, rest) = match term.split_once('*') {
            Some((c, r)) => (parse_q(c)?, r),
            None => (parse_q("1")?, term),
        };
        let coeff = if neg { -coeff } else { coeff };
        out.add_assign(&atom(rs, rest)?.scale(&CycScalar::from_q(coeff)));
    }
    Ok(out)
}

/// A state in JSON or short notation.
pub fn state(rs: &RootSystem, s: &str) -> Result<State> {
    let t = s.trim();
    if t.starts_with('{') && t.contains('"') {
        let v: serde_json::Value = serde_json::from_str(t).map_err(|e| parse_err(format!("state JSON: {e}")))?;
        State::from_json(rs, &v)
    } else {
        shorthand(rs, t)
    }
}

/// `<state>@<m>`: a factor `A t^{-m}` of a ring product.
pub fn factor(rs: &RootSystem, s: &str) -> Result<(State, i64)> {
    match s.rsplit_once('@') {
        Some((a, m)) => {
            let m = m.trim().parse::<i64>().map_err(|_| parse_err(format!("bad exponent in factor `{s}`")))?;
            Ok((state(rs, a)?, m))
        }
        None => Ok((state(rs, s)?, 0)),
    }
}

/// `LATTICE_VOA_MAX_DIM`, default 5000.
pub fn max_dim(var: Option<String>) -> Result<usize> {
    match var {
        None => Ok(5000),
        Some(v) => v.trim().parse().map_err(|_| parse_err(format!("LATTICE_VOA_MAX_DIM must be a nonnegative integer, got `{v}`"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use latvoa::rational::q;

    fn a1() -> RootSystem {
        RootSystem::new("A1").unwrap()
    }

    #[test]
    fn shorthand_states() {
        let rs = a1();
        assert_eq!(state(&rs, "{e^ω}").unwrap(), State::exp(Weight(vec![1])));
        assert_eq!(state(&rs, "{|0⟩}").unwrap(), State::vacuum(1));
        assert_eq!(state(&rs, "e^-2w").unwrap(), State::exp(Weight(vec![-2])));
        let s = state(&rs, "e^(1) + -1/2*e^(-1)").unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.coeff(&latvoa::lattice_voa::FockMonomial::exp(Weight(vec![-1]))), CycScalar::from_q(q(-1, 2)));
        let a2 = RootSystem::new("A2").unwrap();
        assert_eq!(state(&a2, "e^ω2").unwrap(), State::exp(Weight(vec![0, 1])));
        assert_eq!(state(&a2, "e^(1,-1)").unwrap(), State::exp(Weight(vec![1, -1])));
        assert!(matches!(state(&a2, "e^ω3"), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn json_states_round_trip() {
        let rs = a1();
        let s = State::exp(Weight(vec![1]));
        let text = s.to_json(&rs).to_string();
        assert_eq!(state(&rs, &text).unwrap(), s);
        assert!(matches!(state(&rs, "{\"terms\": [}"), Err(Error::Parse(_))));
    }

    #[test]
    fn malformed_input() {
        let rs = a1();
        for bad in ["", "e^", "x^1", "e^(1", "2*", "e^(1,0)"] {
            assert!(state(&rs, bad).is_err(), "{bad}");
        }
        assert!(weight(&rs, "a").is_err());
        assert_eq!(factor(&rs, "e^w@2").unwrap().1, 2);
        assert!(factor(&rs, "e^w@x").is_err());
        assert_eq!(max_dim(None).unwrap(), 5000);
        assert!(max_dim(Some("-3".into())).is_err());
    }
}
