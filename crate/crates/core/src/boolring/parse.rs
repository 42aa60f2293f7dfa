//! Descriptor grammar: `finset:3`, `fincof`, `ordint:w^2*2+w+3`, `ratint`,
//! `prod(a,b)`, `quot(a,alpha)`.
//!
//! Element literals: `{0,2}` (finset), `fin{1,4}` / `cofin{0}` (fincof),
//! `[w,w+3)+[w*2,w*2+1)` (ordint), `[0,1/2)` (ratint), `(x,y)` (product),
//! and `0` / `1` everywhere.

use num_rational::Rational64;

use super::{AlgebraError, BoolAlg, Element, Fincof, IntervalSet, MAX_FINSET};
use crate::ordinal::Ordinal;

fn err(msg: impl Into<String>) -> AlgebraError {
    AlgebraError::Parse(msg.into())
}

/// Splits at top-level occurrences of `sep`, treating `([{` as openers and
/// `)]}` as closers (half-open intervals mix the two).
pub(crate) fn split_top(s: &str, sep: char) -> Result<Vec<&str>, AlgebraError> {
    let mut depth = 0i32;
    let mut parts = Vec::new();
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => {
                depth -= 1;
                if depth < 0 {
                    return Err(err(format!("unbalanced brackets in `{s}`")));
                }
            }
            c if c == sep && depth == 0 => {
                parts.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(err(format!("unbalanced brackets in `{s}`")));
    }
    parts.push(&s[start..]);
    Ok(parts)
}

/// `name(a,b)` → `(a, b)`.
fn binary_args<'a>(s: &'a str, name: &str) -> Result<Option<(&'a str, &'a str)>, AlgebraError> {
    let Some(inner) = s
        .strip_prefix(name)
        .and_then(|r| r.trim_start().strip_prefix('('))
    else {
        return Ok(None);
    };
    let inner = inner
        .strip_suffix(')')
        .ok_or_else(|| err(format!("missing `)` in `{s}`")))?;
    match split_top(inner, ',')?.as_slice() {
        [a, b] => Ok(Some((a.trim(), b.trim()))),
        _ => Err(err(format!("`{name}` takes two arguments in `{s}`"))),
    }
}

fn parse_ordinal(s: &str) -> Result<Ordinal, AlgebraError> {
    s.trim().parse().map_err(|e| err(format!("{e}")))
}

pub fn parse_descriptor(text: &str) -> Result<BoolAlg, AlgebraError> {
    let s = text.trim();
    if let Some((a, b)) = binary_args(s, "prod")? {
        return Ok(BoolAlg::product(parse_descriptor(a)?, parse_descriptor(b)?));
    }
    if let Some((a, alpha)) = binary_args(s, "quot")? {
        return Ok(BoolAlg::quotient(parse_descriptor(a)?, parse_ordinal(alpha)?));
    }
    if let Some(n) = s.strip_prefix("finset:") {
        let n: u32 = n
            .trim()
            .parse()
            .map_err(|_| err(format!("bad finset size in `{s}`")))?;
        if n > MAX_FINSET {
            return Err(err(format!("finset size {n} exceeds {MAX_FINSET}")));
        }
        return Ok(BoolAlg::FinSet(n));
    }
    if let Some(l) = s.strip_prefix("ordint:") {
        return Ok(BoolAlg::OrdInt(parse_ordinal(l)?));
    }
    match s {
        "fincof" => Ok(BoolAlg::Fincof),
        "ratint" => Ok(BoolAlg::RatInt),
        _ => Err(err(format!("unknown algebra descriptor `{s}`"))),
    }
}

fn braced_list(s: &str) -> Result<Vec<u64>, AlgebraError> {
    let inner = s
        .strip_prefix('{')
        .and_then(|r| r.strip_suffix('}'))
        .ok_or_else(|| err(format!("expected `{{…}}`, got `{s}`")))?;
    inner
        .split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| x.parse().map_err(|_| err(format!("bad index `{x}`"))))
        .collect()
}

fn interval_list<T: Ord + Clone>(
    s: &str,
    point: impl Fn(&str) -> Result<T, AlgebraError>,
) -> Result<IntervalSet<T>, AlgebraError> {
    let mut v = Vec::new();
    for part in split_top(s, '+')? {
        let part = part.trim();
        let inner = part
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| err(format!("expected `[a,b)`, got `{part}`")))?;
        let (a, b) = inner
            .split_once(',')
            .ok_or_else(|| err(format!("expected `[a,b)`, got `{part}`")))?;
        let (a, b) = (point(a)?, point(b)?);
        if a >= b {
            return Err(err(format!("empty interval `{part}`")));
        }
        v.push((a, b));
    }
    Ok(IntervalSet::from_intervals(v))
}

fn parse_rational(s: &str) -> Result<Rational64, AlgebraError> {
    s.trim()
        .parse::<Rational64>()
        .map_err(|_| err(format!("bad rational `{}`", s.trim())))
}

pub fn parse_element(alg: &BoolAlg, text: &str) -> Result<Element, AlgebraError> {
    let s = text.trim();
    if let BoolAlg::LoewyQuotient(..) = alg {
        return parse_element(&alg.normalized(), s);
    }
    match s {
        "0" => return Ok(alg.zero()),
        "1" => return Ok(alg.one()),
        _ => {}
    }
    let e = match alg {
        BoolAlg::FinSet(_) => {
            let mut m = 0u64;
            for i in braced_list(s)? {
                if i >= 64 {
                    return Err(err(format!("index {i} out of range")));
                }
                m |= 1 << i;
            }
            Element::Fin(m)
        }
        BoolAlg::Fincof => {
            if let Some(r) = s.strip_prefix("cofin") {
                Element::Fincof(Fincof::cofinite(braced_list(r.trim())?))
            } else if let Some(r) = s.strip_prefix("fin") {
                Element::Fincof(Fincof::finite(braced_list(r.trim())?))
            } else {
                return Err(err(format!("expected `fin{{…}}` or `cofin{{…}}`, got `{s}`")));
            }
        }
        BoolAlg::OrdInt(_) => Element::Ord(interval_list(s, parse_ordinal)?),
        BoolAlg::RatInt => Element::Rat(interval_list(s, parse_rational)?),
        BoolAlg::Product(a, b) => {
            let inner = s
                .strip_prefix('(')
                .and_then(|r| r.strip_suffix(')'))
                .ok_or_else(|| err(format!("expected `(x,y)`, got `{s}`")))?;
            match split_top(inner, ',')?.as_slice() {
                [l, r] => Element::pair(parse_element(a, l)?, parse_element(b, r)?),
                _ => return Err(err(format!("expected `(x,y)`, got `{s}`"))),
            }
        }
        BoolAlg::LoewyQuotient(..) => unreachable!(),
    };
    alg.check(&e)?;
    Ok(e)
}
