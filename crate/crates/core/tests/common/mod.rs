//! Independent oracles and random generators shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

use muhzv::coeff_ring::{int, rat, Rational};
use muhzv::shuffle_algebra::XPoly;
use muhzv::stuffle_algebra::YPoly;
use muhzv::word_core::{Word, XLetter, XWord, YLetter, YWord};

/// Σ_{0≤n_1≤…≤n_r≤M} Π μ/(n_iμ+m_i)^{k_i}, enumerating every tuple.
pub fn enumerated_partial_sum(w: &YWord, mu: &Rational, big_m: usize) -> Rational {
    fn go(letters: &[YLetter], lo: usize, mu: &Rational, big_m: usize) -> Rational {
        let Some((first, rest)) = letters.split_first() else {
            return Rational::one();
        };
        let mut total = Rational::zero();
        for n in lo..=big_m {
            let d = Rational::from_integer((n as i64).into()) * mu + &first.m;
            let term = mu / d.pow(first.k as i32);
            total += term * go(rest, n, mu, big_m);
        }
        total
    }
    go(w.letters(), 0, mu, big_m)
}

pub fn enumerated_partial_sum_poly(p: &YPoly, mu: &Rational, big_m: usize) -> Rational {
    p.terms().map(|(w, c)| c.eval(mu) * enumerated_partial_sum(w, mu, big_m)).fold(Rational::zero(), |a, b| a + b)
}

/// Shuffle by the two-sided recursion ua ⧢ vb = (u ⧢ vb)a + (ua ⧢ v)b,
/// returning multiplicities.
pub fn shuffle_counts(a: &[XLetter], b: &[XLetter]) -> BTreeMap<Vec<XLetter>, i64> {
    let mut out = BTreeMap::new();
    if a.is_empty() || b.is_empty() {
        out.insert([a, b].concat(), 1);
        return out;
    }
    let (u, x) = a.split_at(a.len() - 1);
    let (v, y) = b.split_at(b.len() - 1);
    for (w, c) in shuffle_counts(u, b) {
        *out.entry([w, x.to_vec()].concat()).or_insert(0) += c;
    }
    for (w, c) in shuffle_counts(a, v) {
        *out.entry([w, y.to_vec()].concat()).or_insert(0) += c;
    }
    out
}

pub fn counts_match(p: &XPoly, counts: &BTreeMap<Vec<XLetter>, i64>) -> bool {
    p.len() == counts.len() && counts.iter().all(|(w, &c)| p.coeff(&Word(w.clone())).coeffs() == [int(c)])
}

pub fn shift_pool() -> Vec<Rational> {
    vec![int(1), rat(1, 2), int(2), int(3)]
}

/// Random Y-word with length ≤ `max_len` and weight ≤ `max_weight`.
pub fn random_yword<R: Rng>(rng: &mut R, max_len: usize, max_weight: u32, shifts: &[Rational]) -> YWord {
    let len = rng.gen_range(0..=max_len);
    let mut letters = Vec::new();
    let mut weight = 0;
    for _ in 0..len {
        if weight >= max_weight {
            break;
        }
        let k = rng.gen_range(1..=(max_weight - weight).min(3));
        weight += k;
        letters.push(YLetter::new(k, shifts.choose(rng).unwrap().clone()));
    }
    Word(letters)
}

/// Random positive X-word: starts with a y letter and keeps the running
/// shift total positive.
pub fn random_positive_xword<R: Rng>(rng: &mut R, max_len: usize) -> XWord {
    let len = rng.gen_range(1..=max_len);
    let pool = [rat(1, 2), int(1), int(2), int(-1), rat(-1, 2), int(0)];
    let mut letters = vec![XLetter::Y([rat(1, 2), int(1), int(2)].choose(rng).unwrap().clone())];
    let mut total = match &letters[0] {
        XLetter::Y(s) => s.clone(),
        XLetter::X => unreachable!(),
    };
    while letters.len() < len {
        if rng.gen_bool(0.4) {
            letters.push(XLetter::X);
            continue;
        }
        let s = pool.choose(rng).unwrap().clone();
        if &total + &s > Rational::zero() {
            total += &s;
            letters.push(XLetter::Y(s));
        }
    }
    Word(letters)
}

/// Random X-word over {x, y_s}, not necessarily positive.
pub fn random_xword<R: Rng>(rng: &mut R, len: usize) -> XWord {
    let pool = [int(1), rat(1, 2), int(-1)];
    Word(
        (0..len)
            .map(|_| if rng.gen_bool(0.5) { XLetter::X } else { XLetter::Y(pool.choose(rng).unwrap().clone()) })
            .collect(),
    )
}
