//! JSON encodings of the algebraic objects.
//!
//! Rationals are strings ("3/2"), ℚ[μ] coefficients are arrays of rationals
//! in increasing powers of μ.

use serde_json::{json, Map, Value};

use crate::coeff_ring::{fmt_rational, parse_rational, MuPoly, Rational, TPoly};
use crate::error::{Error, Result};
use crate::relations::{Relation, VerificationReport};
use crate::shuffle_algebra::XPoly;
use crate::stuffle_algebra::YPoly;
use crate::symbolic_values::{GExpr, GSym, TPolyG};
use crate::word_core::{BiIndex, SpecialTriple, Word, WordPoly, XLetter, XWord, YLetter, YWord};

fn bad(what: &str, v: &Value) -> Error {
    Error::Parse(format!("expected {what}, found {v}"))
}

pub fn rational_to_json(r: &Rational) -> Value {
    Value::String(fmt_rational(r))
}

pub fn rational_from_json(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) if n.is_i64() => Ok(Rational::from_integer(n.as_i64().unwrap().into())),
        _ => Err(bad("a rational", v)),
    }
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| Error::Parse(format!("missing field \"{key}\" in {v}")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| bad(what, v))
}

fn uint(v: &Value) -> Result<u32> {
    v.as_u64().and_then(|n| u32::try_from(n).ok()).ok_or_else(|| bad("a non-negative integer", v))
}

pub fn mupoly_to_json(p: &MuPoly) -> Value {
    Value::Array(p.coeffs().iter().map(rational_to_json).collect())
}

pub fn mupoly_from_json(v: &Value) -> Result<MuPoly> {
    match v {
        Value::Array(a) => Ok(MuPoly::new(a.iter().map(rational_from_json).collect::<Result<_>>()?)),
        _ => Ok(MuPoly::constant(rational_from_json(v)?)),
    }
}

pub fn yword_to_json(w: &YWord) -> Value {
    let letters: Vec<Value> = w.letters().iter().map(|l| json!({"k": l.k, "m": fmt_rational(&l.m)})).collect();
    json!({ "letters": letters })
}

pub fn yword_from_json(v: &Value) -> Result<YWord> {
    let letters = array(field(v, "letters")?, "a letter array")?;
    let mut out = Vec::with_capacity(letters.len());
    for l in letters {
        let k = uint(field(l, "k")?)?;
        if k == 0 {
            return Err(Error::Parse("letter exponents must be positive".into()));
        }
        out.push(YLetter::new(k, rational_from_json(field(l, "m")?)?));
    }
    Ok(Word(out))
}

pub fn xword_to_json(w: &XWord) -> Value {
    let letters: Vec<Value> = w
        .letters()
        .iter()
        .map(|l| match l {
            XLetter::X => Value::String("x".into()),
            XLetter::Y(s) => json!({ "y": fmt_rational(s) }),
        })
        .collect();
    json!({ "letters": letters })
}

pub fn xword_from_json(v: &Value) -> Result<XWord> {
    let letters = array(field(v, "letters")?, "a letter array")?;
    letters
        .iter()
        .map(|l| match l {
            Value::String(s) if s == "x" => Ok(XLetter::X),
            Value::Object(_) => Ok(XLetter::Y(rational_from_json(field(l, "y")?)?)),
            _ => Err(bad("\"x\" or {\"y\": …}", l)),
        })
        .collect::<Result<Vec<_>>>()
        .map(Word)
}

pub fn biindex_to_json(b: &BiIndex) -> Value {
    let m: Vec<Value> = b.ms().iter().map(rational_to_json).collect();
    json!({ "k": b.ks(), "m": m })
}

pub fn biindex_from_json(v: &Value) -> Result<BiIndex> {
    let ks = array(field(v, "k")?, "an exponent array")?.iter().map(uint).collect::<Result<Vec<_>>>()?;
    let ms = array(field(v, "m")?, "a shift array")?.iter().map(rational_from_json).collect::<Result<Vec<_>>>()?;
    BiIndex::new(ks, ms)
}

pub fn triple_to_json(t: &SpecialTriple) -> Value {
    let mut v = biindex_to_json(t.base());
    v["alt"] = rational_to_json(t.alt());
    v
}

pub fn triple_from_json(v: &Value) -> Result<SpecialTriple> {
    SpecialTriple::new(biindex_from_json(v)?, rational_from_json(field(v, "alt")?)?)
}

fn wordpoly_to_json<L: Ord + Clone>(p: &WordPoly<L>, word: impl Fn(&Word<L>) -> Value) -> Value {
    let terms: Vec<Value> = p.terms().map(|(w, c)| json!({ "word": word(w), "coeff": mupoly_to_json(c) })).collect();
    json!({ "terms": terms })
}

fn wordpoly_from_json<L: Ord + Clone>(v: &Value, word: impl Fn(&Value) -> Result<Word<L>>) -> Result<WordPoly<L>> {
    if v.get("letters").is_some() {
        return Ok(WordPoly::from_word(word(v)?));
    }
    let mut p = WordPoly::zero();
    for t in array(field(v, "terms")?, "a term array")? {
        p.add_term(word(field(t, "word")?)?, &mupoly_from_json(field(t, "coeff")?)?);
    }
    Ok(p)
}

pub fn ypoly_to_json(p: &YPoly) -> Value {
    wordpoly_to_json(p, yword_to_json)
}

/// Accepts a YPoly or a single YWord.
pub fn ypoly_from_json(v: &Value) -> Result<YPoly> {
    wordpoly_from_json(v, yword_from_json)
}

pub fn xpoly_to_json(p: &XPoly) -> Value {
    wordpoly_to_json(p, xword_to_json)
}

/// Accepts an XPoly or a single XWord.
pub fn xpoly_from_json(v: &Value) -> Result<XPoly> {
    wordpoly_from_json(v, xword_from_json)
}

pub fn tpoly_to_json<C>(p: &TPoly<C>, coeff: impl Fn(&C) -> Value) -> Value {
    json!({ "T": p.coeffs.iter().map(coeff).collect::<Vec<_>>() })
}

pub fn gsym_to_json(s: &GSym) -> Value {
    match s {
        GSym::ZetaMu(b) => json!({ "zeta_mu": biindex_to_json(b) }),
        GSym::DsMu(t) => json!({ "ds_mu": triple_to_json(t) }),
        GSym::ZetaClassical(n) => json!({ "zeta": n }),
        GSym::HDiff(m, mp) => json!({ "hdiff": { "m": fmt_rational(m), "mprime": fmt_rational(mp) } }),
    }
}

/// Parses one symbol into an expression, since orientation rules may flip
/// its sign or make it vanish.
pub fn gsym_from_json(v: &Value) -> Result<GExpr> {
    let obj = v.as_object().filter(|o| o.len() == 1).ok_or_else(|| bad("a tagged symbol", v))?;
    let (tag, body) = obj.iter().next().unwrap();
    match tag.as_str() {
        "zeta_mu" => GExpr::zeta_mu(biindex_from_json(body)?),
        "ds_mu" => GExpr::ds(biindex_from_json(body)?, rational_from_json(field(body, "alt")?)?),
        "zeta" => GExpr::zeta_classical(uint(body)?),
        "hdiff" => {
            Ok(GExpr::hdiff(rational_from_json(field(body, "m")?)?, rational_from_json(field(body, "mprime")?)?))
        }
        _ => Err(Error::Parse(format!("unknown symbol tag \"{tag}\""))),
    }
}

pub fn gexpr_to_json(e: &GExpr) -> Value {
    let terms: Vec<Value> = e
        .terms()
        .map(|(mono, c)| {
            json!({ "mono": mono.iter().map(gsym_to_json).collect::<Vec<_>>(), "coeff": mupoly_to_json(c) })
        })
        .collect();
    json!({ "terms": terms })
}

fn term_from_json(t: &Value) -> Result<GExpr> {
    let mut e = GExpr::constant(mupoly_from_json(field(t, "coeff")?)?);
    for s in array(field(t, "mono")?, "a monomial")? {
        e = &e * &gsym_from_json(s)?;
    }
    Ok(e)
}

/// Accepts {"terms": [...]} or a single {"mono": ..., "coeff": ...}.
pub fn gexpr_from_json(v: &Value) -> Result<GExpr> {
    if v.get("mono").is_some() {
        return term_from_json(v);
    }
    let mut e = GExpr::zero();
    for t in array(field(v, "terms")?, "a term array")? {
        e = &e + &term_from_json(t)?;
    }
    Ok(e)
}

pub fn tpolyg_to_json(p: &TPolyG) -> Value {
    tpoly_to_json(p, gexpr_to_json)
}

/// Accepts {"T": [...]} or a bare GExpr as a constant polynomial.
pub fn tpolyg_from_json(v: &Value) -> Result<TPolyG> {
    match v.get("T") {
        Some(t) => Ok(TPoly::new(array(t, "a coefficient array")?.iter().map(gexpr_from_json).collect::<Result<_>>()?)),
        None => Ok(TPoly::new(vec![gexpr_from_json(v)?])),
    }
}

pub fn relation_to_json(r: &Relation) -> Value {
    let p = &r.provenance;
    json!({
        "lhs": gexpr_to_json(&r.lhs),
        "source": {
            "w": yword_to_json(&p.w),
            "v": yword_to_json(&p.v),
            "anchor": fmt_rational(&p.anchor),
            "t_power": p.t_power,
            "scheme": "regularized double shuffle",
        },
        "residual": r.residual,
        "scale": r.scale,
    })
}

pub fn report_to_json(r: &VerificationReport) -> Value {
    let mut m = Map::new();
    m.insert("name".into(), json!(r.name));
    m.insert("parameters".into(), json!(r.parameters));
    m.insert("lhs".into(), json!(r.lhs));
    m.insert("rhs".into(), json!(r.rhs));
    m.insert("abs_diff".into(), json!(r.abs_diff));
    m.insert("tolerance".into(), json!(r.tolerance));
    m.insert("pass".into(), json!(r.pass));
    Value::Object(m)
}

pub fn parse(s: &str) -> Result<Value> {
    serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
}
