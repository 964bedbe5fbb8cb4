//! The shuffle product on ℚ[μ]⟨X⟩ and decomposition of positive words
//! over the regular subalgebra X⁰.

use std::collections::BTreeMap;

use num_traits::Signed;

use crate::coeff_ring::{MuPoly, Rational, TPoly};
use crate::error::{Error, Result};
use crate::word_core::{anchored_decompose, Word, WordPoly, XLetter, XWord};

pub type XPoly = WordPoly<XLetter>;
pub type TPolyX = TPoly<XPoly>;

/// Combined letter count accepted by [`shuffle_bruteforce`].
pub const BRUTEFORCE_MAX_LETTERS: usize = 12;

fn shuffle_words(u: &XWord, v: &XWord) -> XPoly {
    let (p, q) = (u.letters(), v.letters());
    let mut prev: Vec<XPoly> = (0..=q.len()).map(|j| XPoly::from_word(Word(q[..j].to_vec()))).collect();
    for i in 1..=p.len() {
        let mut row: Vec<XPoly> = Vec::with_capacity(q.len() + 1);
        row.push(XPoly::from_word(Word(p[..i].to_vec())));
        for j in 1..=q.len() {
            let cur = &prev[j].append_letter(&p[i - 1]) + &row[j - 1].append_letter(&q[j - 1]);
            row.push(cur);
        }
        prev = row;
    }
    prev.pop().unwrap()
}

/// Shuffle product, bilinear over ℚ[μ].
pub fn shuffle(a: &XPoly, b: &XPoly) -> XPoly {
    let mut out = XPoly::zero();
    for (u, cu) in a.terms() {
        for (v, cv) in b.terms() {
            let c = cu * cv;
            for (w, cw) in shuffle_words(u, v).terms() {
                out.add_term(w.clone(), &(cw * &c));
            }
        }
    }
    out
}

/// Sums every order-preserving interleaving of `a` and `b` explicitly.
pub fn shuffle_bruteforce(a: &XWord, b: &XWord) -> Result<XPoly> {
    let (r, s) = (a.len(), b.len());
    if r + s > BRUTEFORCE_MAX_LETTERS {
        return Err(Error::TooLarge(format!("{} letters exceed the limit of {BRUTEFORCE_MAX_LETTERS}", r + s)));
    }
    let n = r + s;
    let mut out = XPoly::zero();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != r {
            continue;
        }
        let (mut i, mut j) = (0, 0);
        let mut w = Vec::with_capacity(n);
        for pos in 0..n {
            if mask & (1 << pos) != 0 {
                w.push(a.letters()[i].clone());
                i += 1;
            } else {
                w.push(b.letters()[j].clone());
                j += 1;
            }
        }
        out.add_term(Word(w), &MuPoly::one());
    }
    Ok(out)
}

/// A basis element of X⁰ produced by [`x0_normal_form`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum X0Term {
    /// Positive word ending in `x`, or the empty word.
    Admissible(XWord),
    /// prefix·(y_a − y_anchor) with a positive prefix.
    Difference { prefix: XWord, a: Rational, anchor: Rational },
}

/// Expresses `p` over admissible words and prefix-anchored differences.
/// Words ending in a y letter are grouped by prefix and every group must
/// have zero coefficient sum; `hint` picks the anchor subscript when present.
pub fn x0_normal_form(p: &XPoly, hint: Option<&Rational>) -> Result<Vec<(X0Term, MuPoly)>> {
    let mut out = Vec::new();
    let mut groups: BTreeMap<XWord, Vec<(Rational, MuPoly)>> = BTreeMap::new();
    for (w, c) in p.terms() {
        if !w.is_positive() {
            return Err(Error::NotRegular(format!("word {w} is not positive")));
        }
        match w.last() {
            Some(XLetter::Y(s)) => groups.entry(w.prefix()).or_default().push((s.clone(), c.clone())),
            _ => out.push((X0Term::Admissible(w.clone()), c.clone())),
        }
    }
    for (prefix, members) in groups {
        let total = members.iter().fold(MuPoly::zero(), |acc, (_, c)| acc + c);
        if !total.is_zero() {
            return Err(Error::NotRegular(format!("words {prefix}·y[·] have coefficient sum {total}")));
        }
        let anchor = match hint {
            Some(h) if members.iter().any(|(a, _)| a == h) => h.clone(),
            _ => members.iter().map(|(a, _)| a.clone()).min().unwrap(),
        };
        for (a, c) in members {
            if a != anchor {
                out.push((X0Term::Difference { prefix: prefix.clone(), a, anchor: anchor.clone() }, c));
            }
        }
    }
    Ok(out)
}

pub fn is_in_x0(p: &XPoly) -> bool {
    x0_normal_form(p, None).is_ok()
}

/// Writes a positive word as Σ P_i ⧢ y_m^{⧢i} with every P_i in X⁰.
pub fn decompose_sh(w: &XWord, m: &Rational) -> Result<TPolyX> {
    decompose_sh_poly(&XPoly::from_word(w.clone()), m)
}

pub fn decompose_sh_poly(p: &XPoly, m: &Rational) -> Result<TPolyX> {
    if !m.is_positive() {
        return Err(Error::Domain("anchor must be positive".into()));
    }
    if p.terms().any(|(w, _)| !w.is_positive()) {
        return Err(Error::NotPositive);
    }
    Ok(anchored_decompose(p, &XLetter::Y(m.clone()), |l: &XLetter| matches!(l, XLetter::Y(_)), shuffle))
}

/// Substitutes T ↦ y_m and expands the shuffle powers.
pub fn psi_sh(p: &TPolyX, m: &Rational) -> XPoly {
    let a = XPoly::from_word(Word(vec![XLetter::Y(m.clone())]));
    let mut pow = XPoly::one();
    let mut out = XPoly::zero();
    for (i, c) in p.coeffs.iter().enumerate() {
        if i > 0 {
            pow = shuffle(&pow, &a);
        }
        out = &out + &shuffle(c, &pow);
    }
    out
}
