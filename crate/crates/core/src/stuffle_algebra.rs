//! The ⊙ product on Y-letters, the μ-stuffle product on ℚ[μ]⟨Y⟩, finite
//! nested sums, and decomposition over the regular subalgebra Y⁰.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::coeff_ring::{binomial, factorial, int, MuPoly, Rational, TPoly};
use crate::error::{Error, Result};
use crate::word_core::{anchored_decompose, Word, WordPoly, YLetter, YWord};

pub type YPoly = WordPoly<YLetter>;
pub type TPolyY = TPoly<YPoly>;

/// Coefficients of 1/((x+m)^j (x+n)^k) =
///   coupled·(1/(x+m) − 1/(x+n)) + Σ n_terms c/(x+n)^p + Σ m_terms c/(x+m)^p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialFraction {
    pub coupled: Rational,
    /// (power p ≥ 2, coefficient) against 1/(x+n)^p.
    pub n_terms: Vec<(u32, Rational)>,
    /// (power p ≥ 2, coefficient) against 1/(x+m)^p.
    pub m_terms: Vec<(u32, Rational)>,
}

fn sign(e: u32) -> Rational {
    if e.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

fn rpow(r: &Rational, e: u32) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..e {
        acc *= r;
    }
    acc
}

pub fn partial_fraction(j: u32, k: u32, m: &Rational, n: &Rational) -> Result<PartialFraction> {
    if j == 0 || k == 0 {
        return Err(Error::Invalid("exponents must be positive".into()));
    }
    if m == n {
        return Err(Error::DegenerateShift);
    }
    let d = n - m;
    let coupled = sign(j - 1) * factorial(j + k - 2) / (factorial(j - 1) * factorial(k - 1) * rpow(&d, j + k - 1));
    let n_terms =
        (0..k.saturating_sub(1)).map(|i| (k - i, binomial(i + j - 1, i) * sign(j) / rpow(&d, i + j))).collect();
    let m_terms =
        (0..j.saturating_sub(1)).map(|i| (j - i, binomial(i + k - 1, i) * sign(i) / rpow(&d, i + k))).collect();
    Ok(PartialFraction { coupled, n_terms, m_terms })
}

/// The commutative product of two letters coming from partial fractions.
pub fn odot(a: &YLetter, b: &YLetter) -> YPoly {
    if a.m == b.m {
        return YPoly::from_word(Word(vec![YLetter::new(a.k + b.k, a.m.clone())]));
    }
    let pf = partial_fraction(a.k, b.k, &a.m, &b.m).expect("distinct shifts");
    let mut out = YPoly::zero();
    let one = |k: u32, m: &Rational| Word(vec![YLetter::new(k, m.clone())]);
    out.add_term(one(1, &a.m), &MuPoly::constant(pf.coupled.clone()));
    out.add_term(one(1, &b.m), &MuPoly::constant(-pf.coupled));
    for (p, c) in pf.n_terms {
        out.add_term(one(p, &b.m), &MuPoly::constant(c));
    }
    for (p, c) in pf.m_terms {
        out.add_term(one(p, &a.m), &MuPoly::constant(c));
    }
    out
}

fn stuffle_words(u: &YWord, v: &YWord) -> YPoly {
    let (p, q) = (u.letters(), v.letters());
    let neg_mu = -MuPoly::mu();
    // row[j] holds stuffle(u[..i], v[..j]) for the current i
    let mut prev: Vec<YPoly> = (0..=q.len()).map(|j| YPoly::from_word(Word(q[..j].to_vec()))).collect();
    for i in 1..=p.len() {
        let mut row: Vec<YPoly> = Vec::with_capacity(q.len() + 1);
        row.push(YPoly::from_word(Word(p[..i].to_vec())));
        for j in 1..=q.len() {
            let x = &p[i - 1];
            let y = &q[j - 1];
            let mut cur = prev[j].append_letter(x);
            cur = &cur + &row[j - 1].append_letter(y);
            let corr = prev[j - 1].concat(&odot(x, y)).scale(&neg_mu);
            cur = &cur + &corr;
            row.push(cur);
        }
        prev = row;
    }
    prev.pop().unwrap()
}

/// The μ-stuffle product, bilinear over ℚ[μ].
pub fn mu_stuffle(a: &YPoly, b: &YPoly) -> YPoly {
    let mut out = YPoly::zero();
    for (u, cu) in a.terms() {
        for (v, cv) in b.terms() {
            let c = cu * cv;
            for (w, cw) in stuffle_words(u, v).terms() {
                out.add_term(w.clone(), &(cw * &c));
            }
        }
    }
    out
}

/// ζ^μ_M of a word as an exact rational: all indices bounded by `big_m`.
pub fn zeta_partial_sum(w: &YWord, mu: &Rational, big_m: usize) -> Rational {
    let mut f = vec![Rational::one(); big_m + 1];
    for l in w.letters() {
        let mut acc = Rational::zero();
        for (n, fv) in f.iter_mut().enumerate() {
            let base = int(n as i64) * mu + &l.m;
            let mut den = Rational::one();
            for _ in 0..l.k {
                den *= &base;
            }
            acc += mu * &*fv / den;
            *fv = acc.clone();
        }
    }
    f.pop().unwrap()
}

/// ζ^μ_M extended linearly to polynomials, with μ specialized.
pub fn zeta_partial_sum_poly(p: &YPoly, mu: &Rational, big_m: usize) -> Rational {
    p.terms().map(|(w, c)| c.eval(mu) * zeta_partial_sum(w, mu, big_m)).fold(Rational::zero(), |a, b| a + b)
}

/// A basis element of Y⁰ produced by [`y0_normal_form`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Y0Term {
    /// Admissible word (the empty word included).
    Admissible(YWord),
    /// prefix·(y_{1,a} − y_{1,anchor}).
    Difference { prefix: YWord, a: Rational, anchor: Rational },
}

/// Expresses `p` over admissible words and anchored differences.
///
/// Words ending in an exponent-1 letter are grouped by prefix; each group
/// must have vanishing coefficient sum. The anchor of a group is `hint` when
/// it occurs among the group's final shifts, otherwise the smallest one.
pub fn y0_normal_form(p: &YPoly, hint: Option<&Rational>) -> Result<Vec<(Y0Term, MuPoly)>> {
    let mut out = Vec::new();
    let mut groups: BTreeMap<YWord, Vec<(Rational, MuPoly)>> = BTreeMap::new();
    for (w, c) in p.terms() {
        match w.last() {
            Some(l) if l.k == 1 => groups.entry(w.prefix()).or_default().push((l.m.clone(), c.clone())),
            _ => out.push((Y0Term::Admissible(w.clone()), c.clone())),
        }
    }
    for (prefix, members) in groups {
        let total = members.iter().fold(MuPoly::zero(), |acc, (_, c)| acc + c);
        if !total.is_zero() {
            return Err(Error::NotRegular(format!("words {prefix}·y[1,·] have coefficient sum {total}")));
        }
        let anchor = match hint {
            Some(h) if members.iter().any(|(a, _)| a == h) => h.clone(),
            _ => members.iter().map(|(a, _)| a.clone()).min().unwrap(),
        };
        for (a, c) in members {
            if a != anchor {
                out.push((Y0Term::Difference { prefix: prefix.clone(), a, anchor: anchor.clone() }, c));
            }
        }
    }
    Ok(out)
}

pub fn is_in_y0(p: &YPoly) -> bool {
    y0_normal_form(p, None).is_ok()
}

/// Writes `w` as Σ P_i ∗ y_{1,m}^{∗i} with every P_i in Y⁰.
pub fn decompose_st(w: &YWord, m: &Rational) -> TPolyY {
    decompose_st_poly(&YPoly::from_word(w.clone()), m)
}

pub fn decompose_st_poly(p: &YPoly, m: &Rational) -> TPolyY {
    assert!(m.is_positive(), "anchor must be positive");
    anchored_decompose(p, &YLetter::new(1, m.clone()), |l: &YLetter| l.k == 1, mu_stuffle)
}

/// Substitutes T ↦ y_{1,m} and expands the μ-stuffle powers.
pub fn psi_st(p: &TPolyY, m: &Rational) -> YPoly {
    let a = YPoly::from_word(Word(vec![YLetter::new(1, m.clone())]));
    let mut pow = YPoly::one();
    let mut out = YPoly::zero();
    for (i, c) in p.coeffs.iter().enumerate() {
        if i > 0 {
            pow = mu_stuffle(&pow, &a);
        }
        out = &out + &mu_stuffle(c, &pow);
    }
    out
}
