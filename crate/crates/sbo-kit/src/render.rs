//! Rendering of operators in plain text, LaTeX and JSON, and the parser that
//! makes the plain form round-trip.

use crate::algebra::{IndexSet, ParamExp, ParamPoly, Q, Rat, XExp};
use crate::kernels::KernelExpression;
use crate::operators::FormOperator;
use crate::weyl::ConstCoeffOp;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt::Write as _;
use std::str::FromStr;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Format {
    Plain,
    Latex,
    Json,
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "plain" => Ok(Format::Plain),
            "latex" => Ok(Format::Latex),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format '{}'", other)),
        }
    }
}

// ---------------------------------------------------------------------------
// Plain text.
// ---------------------------------------------------------------------------

/// Deterministic plain rendering: terms in descending graded-lex order,
/// each `(coefficient)·∂k^e·…`, joined by ` + `.
pub fn plain_const_op(op: &ConstCoeffOp) -> String {
    if op.is_zero() {
        return "0".to_string();
    }
    let mut parts = Vec::new();
    let terms: Vec<_> = op.terms().collect();
    for (d, c) in terms.into_iter().rev() {
        let mut s = format!("({})", c.display(["λ", "ν"]));
        for (k, p) in d.0.iter().enumerate() {
            if *p > 0 {
                let _ = write!(s, "·∂{}", k + 1);
                if *p > 1 {
                    let _ = write!(s, "^{}", p);
                }
            }
        }
        parts.push(s);
    }
    parts.join(" + ")
}

pub fn plain_form_operator(op: &FormOperator) -> String {
    if op.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for ((i, j), entry) in op.entries() {
        let _ = writeln!(out, "{} -> {}: {}", i, j, plain_const_op(entry));
    }
    out
}

pub fn plain_kernel(entry: &KernelExpression) -> String {
    let canon = match entry.canonical() {
        Ok(c) => c,
        Err(e) => return format!("<{}>", e),
    };
    if canon.terms().is_empty() {
        return "0".to_string();
    }
    let mut parts = Vec::new();
    for t in canon.terms() {
        let mut s = format!("{}", t.gamma);
        let _ = write!(s, "·|x|^(2({}))", t.norm_exp.display(["λ", "ν"]));
        let _ = write!(s, "·|xn|^({})", t.abs_exp.display(["λ", "ν"]));
        if t.kappa == 1 {
            let _ = write!(s, "·sgn(xn)");
        }
        let _ = write!(s, "·[{}]", t.poly.display(["λ", "ν"]));
        parts.push(s);
    }
    parts.join(" + ")
}

// ---------------------------------------------------------------------------
// LaTeX.
// ---------------------------------------------------------------------------

fn latex_q(q: &Q) -> String {
    if q.denom().is_one() {
        format!("{}", q.numer())
    } else {
        format!("\\tfrac{{{}}}{{{}}}", q.numer(), q.denom())
    }
}

fn latex_param_poly(p: &ParamPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    let mut first = true;
    for (e, c) in p.terms().collect::<Vec<_>>().into_iter().rev() {
        let neg = c.is_negative();
        let mag = c.abs();
        if first {
            if neg {
                out.push('-');
            }
            first = false;
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if !mag.is_one() || e.total() == 0 {
            out.push_str(&latex_q(&mag));
        }
        if e.l > 0 {
            out.push_str("\\lambda");
            if e.l > 1 {
                let _ = write!(out, "^{{{}}}", e.l);
            }
        }
        if e.n > 0 {
            out.push_str("\\nu");
            if e.n > 1 {
                let _ = write!(out, "^{{{}}}", e.n);
            }
        }
    }
    out
}

fn latex_rat(r: &Rat) -> String {
    if r.denominator() == &ParamPoly::one() {
        latex_param_poly(r.numerator())
    } else {
        format!(
            "\\frac{{{}}}{{{}}}",
            latex_param_poly(r.numerator()),
            latex_param_poly(r.denominator())
        )
    }
}

pub fn latex_const_op(op: &ConstCoeffOp) -> String {
    if op.is_zero() {
        return "0".to_string();
    }
    let mut parts = Vec::new();
    for (d, c) in op.terms().collect::<Vec<_>>().into_iter().rev() {
        let mut s = format!("\\left({}\\right)", latex_rat(c));
        for (k, p) in d.0.iter().enumerate() {
            if *p > 0 {
                let _ = write!(s, "\\,\\partial_{{{}}}", k + 1);
                if *p > 1 {
                    let _ = write!(s, "^{{{}}}", p);
                }
            }
        }
        parts.push(s);
    }
    parts.join(" + ")
}

/// Standalone LaTeX document around a display-math body.
pub fn latex_document(body: &str) -> String {
    format!(
        "\\documentclass{{article}}\n\\usepackage{{amsmath}}\n\\begin{{document}}\n\\[\n{}\n\\]\n\\end{{document}}\n",
        body
    )
}

pub fn latex_form_operator(op: &FormOperator) -> String {
    if op.is_zero() {
        return "0".to_string();
    }
    let mut rows = Vec::new();
    for ((i, j), entry) in op.entries() {
        rows.push(format!(
            "dx_{{{}}} &\\mapsto \\bigl({}\\bigr)\\, dx_{{{}}}",
            latex_index(i),
            latex_const_op(entry),
            latex_index(j)
        ));
    }
    format!(
        "\\begin{{aligned}}\n{}\n\\end{{aligned}}",
        rows.join(" \\\\\n")
    )
}

fn latex_index(i: &IndexSet) -> String {
    let parts: Vec<String> = i.iter().map(|k| k.to_string()).collect();
    parts.join(",")
}

// ---------------------------------------------------------------------------
// JSON.
// ---------------------------------------------------------------------------

pub fn json_const_op(op: &ConstCoeffOp) -> serde_json::Value {
    let terms: Vec<serde_json::Value> = op
        .terms()
        .map(|(d, c)| {
            serde_json::json!({
                "partials": d.0,
                "coeff": format!("{}", c.display(["λ", "ν"])),
            })
        })
        .collect();
    serde_json::json!({ "dim": op.dim(), "terms": terms })
}

pub fn json_form_operator(op: &FormOperator) -> serde_json::Value {
    let entries: Vec<serde_json::Value> = op
        .entries()
        .map(|((i, j), e)| {
            serde_json::json!({
                "from": i.iter().collect::<Vec<u32>>(),
                "to": j.iter().collect::<Vec<u32>>(),
                "op": json_const_op(e),
            })
        })
        .collect();
    serde_json::json!({
        "dim": op.n(),
        "source_degree": op.source_deg(),
        "target_dim": op.target_dim(),
        "target_degree": op.target_deg(),
        "entries": entries,
    })
}

// ---------------------------------------------------------------------------
// Parsing of the plain forms (round-trip support).
// ---------------------------------------------------------------------------

fn split_top_level<'a>(s: &'a str, sep: &str) -> Vec<&'a str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0usize;
    let bytes = s.as_bytes();
    let sep_bytes = sep.as_bytes();
    let mut idx = 0usize;
    while idx < bytes.len() {
        match bytes[idx] {
            b'(' => depth += 1,
            b')' => depth -= 1,
            _ => {}
        }
        if depth == 0 && bytes[idx..].starts_with(sep_bytes) {
            out.push(&s[start..idx]);
            idx += sep_bytes.len();
            start = idx;
            continue;
        }
        idx += 1;
    }
    out.push(&s[start..]);
    out
}

fn parse_q(s: &str) -> Result<Q, String> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n = BigInt::from_str(num.trim()).map_err(|e| e.to_string())?;
        let d = BigInt::from_str(den.trim()).map_err(|e| e.to_string())?;
        if d.is_zero() {
            return Err("zero denominator".into());
        }
        Ok(Q::new(n, d))
    } else {
        let n = BigInt::from_str(s).map_err(|e| format!("bad rational '{}': {}", s, e))?;
        Ok(Q::from_integer(n))
    }
}

/// Parse a polynomial in λ, ν as printed by the plain renderer.
pub fn parse_param_poly(s: &str) -> Result<ParamPoly, String> {
    let s = s.trim();
    if s == "0" {
        return Ok(ParamPoly::zero());
    }
    // Normalize "a - b" into "a + -b" at top level.
    let mut normalized = String::new();
    let mut depth = 0i32;
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0usize;
    while i < chars.len() {
        let c = chars[i];
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if depth == 0 && c == ' ' && i + 2 < chars.len() && chars[i + 1] == '-' && chars[i + 2] == ' '
        {
            normalized.push_str(" + -");
            i += 3;
            continue;
        }
        normalized.push(c);
        i += 1;
    }
    let mut poly = ParamPoly::zero();
    for term in split_top_level(&normalized, " + ") {
        let term = term.trim();
        if term.is_empty() {
            continue;
        }
        let (sign, rest) = if let Some(r) = term.strip_prefix('-') {
            (-Q::one(), r.trim())
        } else {
            (Q::one(), term)
        };
        let mut coeff = sign;
        let mut exp = ParamExp::new(0, 0);
        for factor in rest.split('*') {
            let f = factor.trim();
            if f.is_empty() {
                continue;
            }
            if let Some(body) = f.strip_prefix('λ') {
                exp = ParamExp::new(exp.l + parse_power(body)?, exp.n);
            } else if let Some(body) = f.strip_prefix('ν') {
                exp = ParamExp::new(exp.l, exp.n + parse_power(body)?);
            } else {
                coeff *= parse_q(f)?;
            }
        }
        poly = &poly + &ParamPoly::monomial(exp, coeff);
    }
    Ok(poly)
}

fn parse_power(body: &str) -> Result<u32, String> {
    let body = body.trim();
    if body.is_empty() {
        Ok(1)
    } else if let Some(p) = body.strip_prefix('^') {
        p.trim().parse::<u32>().map_err(|e| e.to_string())
    } else {
        Err(format!("unexpected symbol suffix '{}'", body))
    }
}

/// Parse a rational function as printed: either a bare polynomial or
/// `(num)/(den)`.
pub fn parse_rat(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    if s.starts_with('(') {
        // Look for a top-level ")/(" split.
        let parts = split_top_level(s, "/");
        if parts.len() == 2 {
            let num = parts[0].trim();
            let den = parts[1].trim();
            if num.starts_with('(') && num.ends_with(')') && den.starts_with('(') && den.ends_with(')')
            {
                let np = parse_param_poly(&num[1..num.len() - 1])?;
                let dp = parse_param_poly(&den[1..den.len() - 1])?;
                if dp.is_zero() {
                    return Err("zero denominator".into());
                }
                return Ok(Rat::new(np, dp));
            }
        }
    }
    Ok(Rat::from_poly(parse_param_poly(s)?))
}

/// Parse the plain rendering of a constant-coefficient operator.
pub fn parse_const_op(s: &str, n: usize) -> Result<ConstCoeffOp, String> {
    let s = s.trim();
    if s == "0" {
        return Ok(ConstCoeffOp::zero(n));
    }
    let mut out = ConstCoeffOp::zero(n);
    for term in split_top_level(s, " + ") {
        let term = term.trim();
        if !term.starts_with('(') {
            return Err(format!("term must start with coefficient: '{}'", term));
        }
        // Matching close paren of the coefficient.
        let mut depth = 0i32;
        let mut close = None;
        for (idx, ch) in term.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => {
                    depth -= 1;
                    if depth == 0 {
                        close = Some(idx);
                        break;
                    }
                }
                _ => {}
            }
        }
        let close = close.ok_or_else(|| format!("unbalanced parentheses in '{}'", term))?;
        let coeff = parse_rat(&term[1..close])?;
        let mut exps = vec![0u32; n];
        let tail = &term[close + 1..];
        for factor in tail.split('·') {
            let f = factor.trim();
            if f.is_empty() {
                continue;
            }
            let body = f
                .strip_prefix('∂')
                .ok_or_else(|| format!("expected ∂ factor, got '{}'", f))?;
            let (idx_s, pow) = match body.split_once('^') {
                Some((i, p)) => (i, p.trim().parse::<u32>().map_err(|e| e.to_string())?),
                None => (body, 1),
            };
            let k: usize = idx_s.trim().parse().map_err(|_| format!("bad index '{}'", idx_s))?;
            if k < 1 || k > n {
                return Err(format!("∂ index {} out of range 1..={}", k, n));
            }
            exps[k - 1] += pow;
        }
        out = &out + &ConstCoeffOp::monomial(n, XExp(exps), coeff);
    }
    Ok(out)
}

/// Parse the plain rendering of a form operator with known shape.
pub fn parse_form_operator(
    s: &str,
    n: usize,
    source_deg: u32,
    target_dim: usize,
    target_deg: u32,
) -> Result<FormOperator, String> {
    let s = s.trim();
    let mut op = FormOperator::zero(n, source_deg, target_dim, target_deg);
    if s == "0" {
        return Ok(op);
    }
    for line in s.lines() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let (head, body) = line
            .split_once(": ")
            .ok_or_else(|| format!("missing entry separator in '{}'", line))?;
        let (from, to) = head
            .split_once(" -> ")
            .ok_or_else(|| format!("missing arrow in '{}'", head))?;
        let parse_set = |t: &str| -> Result<IndexSet, String> {
            let t = t.trim();
            let inner = t
                .strip_prefix('{')
                .and_then(|x| x.strip_suffix('}'))
                .ok_or_else(|| format!("bad index set '{}'", t))?;
            if inner.trim().is_empty() {
                return Ok(IndexSet::empty());
            }
            let vals: Result<Vec<u32>, _> =
                inner.split(',').map(|v| v.trim().parse::<u32>()).collect();
            Ok(IndexSet::new(vals.map_err(|e| e.to_string())?))
        };
        op.add_entry(parse_set(from)?, parse_set(to)?, parse_const_op(body, n)?);
    }
    Ok(op)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::{branson_operator, juhl_symbol};

    #[test]
    fn const_op_round_trip() {
        for n in 2..=4usize {
            for l in 0..=5i64 {
                let op = juhl_symbol(n, l);
                let text = plain_const_op(&op);
                let back = parse_const_op(&text, n).unwrap();
                assert_eq!(op, back, "round trip failed for n={} l={}: {}", n, l, text);
            }
        }
    }

    #[test]
    fn form_operator_round_trip() {
        for (n, i, l) in [(3usize, 1u32, 1u32), (4, 2, 2), (2, 1, 0)] {
            let op = branson_operator(n, i, l);
            let text = plain_form_operator(&op);
            let back = parse_form_operator(&text, n, i, n, i).unwrap();
            assert_eq!(op, back, "round trip failed: {}", text);
        }
    }

    #[test]
    fn rational_coefficients_round_trip() {
        // A coefficient with a genuine denominator survives the round trip.
        let lam = Rat::lambda();
        let c = &(&lam + &Rat::from_int(1)) / &(&lam - &Rat::from_int(2));
        let op = ConstCoeffOp::constant(2, c.clone());
        let text = plain_const_op(&op);
        let back = parse_const_op(&text, 2).unwrap();
        assert_eq!(back.coefficient(&XExp(vec![0, 0])), c);
    }

    #[test]
    fn latex_document_structure() {
        let op = juhl_symbol(3, 2);
        let doc = latex_document(&latex_const_op(&op));
        assert!(doc.starts_with("\\documentclass"));
        assert!(doc.contains("\\begin{document}"));
        assert!(doc.contains("\\end{document}"));
        assert!(doc.contains("\\partial_{3}"));
    }

    #[test]
    fn json_shape() {
        let op = juhl_symbol(2, 1);
        let v = json_const_op(&op);
        assert_eq!(v["dim"], 2);
        assert!(v["terms"].as_array().unwrap().len() == 1);
    }
}
