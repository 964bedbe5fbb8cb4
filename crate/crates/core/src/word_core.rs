//! Bi-indices, special triples, words over the alphabets Y and X, and the
//! maps between them.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::coeff_ring::{IsZero, MuPoly, Rational};
use crate::error::{Error, Result};

/// Letter y_{k,m} of the alphabet Y. Ordered by `k`, then `m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct YLetter {
    pub k: u32,
    pub m: Rational,
}

impl YLetter {
    pub fn new(k: u32, m: Rational) -> Self {
        YLetter { k, m }
    }
}

/// Letter of the alphabet X: either `x` or y_l with rational subscript.
/// `X` sorts before every `Y`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum XLetter {
    X,
    Y(Rational),
}

/// A word is a finite sequence of letters; the empty word is the unit.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word<L>(pub Vec<L>);

pub type YWord = Word<YLetter>;
pub type XWord = Word<XLetter>;

impl<L: Clone> Word<L> {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[L] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn last(&self) -> Option<&L> {
        self.0.last()
    }

    /// The word with its final letter removed.
    pub fn prefix(&self) -> Self {
        Word(self.0[..self.0.len().saturating_sub(1)].to_vec())
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn with_letter(&self, l: L) -> Self {
        let mut v = self.0.clone();
        v.push(l);
        Word(v)
    }
}

impl YWord {
    pub fn from_pairs(pairs: &[(u32, Rational)]) -> Self {
        Word(pairs.iter().map(|(k, m)| YLetter::new(*k, m.clone())).collect())
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().map(|l| l.k).sum()
    }

    pub fn is_admissible(&self) -> bool {
        self.0.last().is_none_or(|l| l.k > 1)
    }

    pub fn to_biindex(&self) -> Result<BiIndex> {
        BiIndex::new(self.0.iter().map(|l| l.k).collect(), self.0.iter().map(|l| l.m.clone()).collect())
    }
}

impl XWord {
    /// Number of y letters.
    pub fn depth(&self) -> usize {
        self.0.iter().filter(|l| matches!(l, XLetter::Y(_))).count()
    }

    /// Total number of letters.
    pub fn weight(&self) -> usize {
        self.0.len()
    }

    /// Every partial sum of y subscripts is positive, and the word starts with y
    /// (the empty word counts as positive).
    pub fn is_positive(&self) -> bool {
        if matches!(self.0.first(), Some(XLetter::X)) {
            return false;
        }
        let mut acc = Rational::zero();
        for l in &self.0 {
            if let XLetter::Y(s) = l {
                acc += s;
                if !acc.is_positive() {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_admissible(&self) -> bool {
        self.is_positive() && self.0.last().is_none_or(|l| *l == XLetter::X)
    }

    /// Sum of all y subscripts.
    pub fn shift_total(&self) -> Rational {
        self.0
            .iter()
            .filter_map(|l| match l {
                XLetter::Y(s) => Some(s.clone()),
                XLetter::X => None,
            })
            .fold(Rational::zero(), |a, b| a + b)
    }
}

impl fmt::Display for YWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for l in &self.0 {
            write!(f, "y[{},{}]", l.k, l.m)?;
        }
        Ok(())
    }
}

impl fmt::Display for XWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for l in &self.0 {
            match l {
                XLetter::X => write!(f, "x")?,
                XLetter::Y(s) => write!(f, "y[{s}]")?,
            }
        }
        Ok(())
    }
}

/// Exponents and shifts (k;m) indexing a μ-multiple Hurwitz zeta value.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BiIndex {
    ks: Vec<u32>,
    ms: Vec<Rational>,
}

impl BiIndex {
    pub fn new(ks: Vec<u32>, ms: Vec<Rational>) -> Result<Self> {
        if ks.len() != ms.len() {
            return Err(Error::Invalid("k and m have different lengths".into()));
        }
        if ks.contains(&0) {
            return Err(Error::Invalid("exponents must be positive".into()));
        }
        if ms.iter().any(|m| !m.is_positive()) {
            return Err(Error::Invalid("shifts must be positive".into()));
        }
        Ok(BiIndex { ks, ms })
    }

    pub fn empty() -> Self {
        BiIndex { ks: Vec::new(), ms: Vec::new() }
    }

    pub fn ks(&self) -> &[u32] {
        &self.ks
    }

    pub fn ms(&self) -> &[Rational] {
        &self.ms
    }

    pub fn depth(&self) -> usize {
        self.ks.len()
    }

    pub fn weight(&self) -> u32 {
        self.ks.iter().sum()
    }

    pub fn is_admissible(&self) -> bool {
        is_admissible(self)
    }

    pub fn to_word(&self) -> YWord {
        Word(self.ks.iter().zip(&self.ms).map(|(&k, m)| YLetter::new(k, m.clone())).collect())
    }

    /// Copy with the final shift replaced.
    pub fn with_last_shift(&self, m: Rational) -> Result<Self> {
        let mut ms = self.ms.clone();
        match ms.last_mut() {
            Some(l) => *l = m,
            None => return Err(Error::Invalid("empty bi-index has no last shift".into())),
        }
        BiIndex::new(self.ks.clone(), ms)
    }
}

impl fmt::Display for BiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ks: Vec<String> = self.ks.iter().map(|k| k.to_string()).collect();
        let ms: Vec<String> = self.ms.iter().map(|m| m.to_string()).collect();
        write!(f, "{};{}", ks.join(","), ms.join(","))
    }
}

pub fn is_admissible(b: &BiIndex) -> bool {
    b.ks.last().is_none_or(|&k| k > 1)
}

/// (k;m;m̃): a non-admissible bi-index together with an alternative final shift.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpecialTriple {
    base: BiIndex,
    alt: Rational,
}

impl SpecialTriple {
    pub fn new(base: BiIndex, alt: Rational) -> Result<Self> {
        match (base.ks.last(), base.ms.last()) {
            (Some(1), Some(m)) => {
                if !alt.is_positive() {
                    return Err(Error::Invalid("alternative shift must be positive".into()));
                }
                if *m == alt {
                    return Err(Error::Invalid("alternative shift equals the final shift".into()));
                }
                Ok(SpecialTriple { base, alt })
            }
            _ => Err(Error::Invalid("special triple needs a final exponent 1".into())),
        }
    }

    pub fn base(&self) -> &BiIndex {
        &self.base
    }

    pub fn alt(&self) -> &Rational {
        &self.alt
    }

    /// The bi-index with the final shift replaced by the alternative one.
    pub fn alt_index(&self) -> BiIndex {
        self.base.with_last_shift(self.alt.clone()).expect("alternative shift is positive")
    }
}

impl fmt::Display for SpecialTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ms: Vec<String> = self.base.ms[..self.base.ms.len() - 1]
            .iter()
            .map(|m| m.to_string())
            .chain(std::iter::once(self.alt.to_string()))
            .collect();
        write!(f, "{};{}", self.base, ms.join(","))
    }
}

/// Binary sequence with attached shifts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinarySeq {
    pub bits: Vec<u8>,
    pub taus: Vec<Rational>,
}

pub fn bs(b: &BiIndex) -> BinarySeq {
    let mut bits = Vec::new();
    let mut taus = Vec::new();
    let mut prev = Rational::zero();
    for (&k, m) in b.ks.iter().zip(&b.ms) {
        bits.push(1);
        taus.push(m - &prev);
        prev = m.clone();
        for _ in 1..k {
            bits.push(0);
            taus.push(Rational::zero());
        }
    }
    BinarySeq { bits, taus }
}

pub fn bs_inv(s: &BinarySeq) -> Result<BiIndex> {
    if s.bits.len() != s.taus.len() || s.bits.first().is_some_and(|&b| b != 1) {
        return Err(Error::InvalidBinarySeq);
    }
    let mut ks = Vec::new();
    let mut ms = Vec::new();
    let mut acc = Rational::zero();
    for (&bit, tau) in s.bits.iter().zip(&s.taus) {
        match bit {
            1 => {
                acc += tau;
                if !acc.is_positive() {
                    return Err(Error::InvalidBinarySeq);
                }
                ks.push(1);
                ms.push(acc.clone());
            }
            0 if tau.is_zero() => *ks.last_mut().ok_or(Error::InvalidBinarySeq)? += 1,
            _ => return Err(Error::InvalidBinarySeq),
        }
    }
    BiIndex::new(ks, ms)
}

fn xword_to_bs(w: &XWord) -> BinarySeq {
    let mut bits = Vec::new();
    let mut taus = Vec::new();
    for l in &w.0 {
        match l {
            XLetter::X => {
                bits.push(0);
                taus.push(Rational::zero());
            }
            XLetter::Y(s) => {
                bits.push(1);
                taus.push(s.clone());
            }
        }
    }
    BinarySeq { bits, taus }
}

/// The bi-index of a positive X-word, read through its binary sequence.
pub fn xword_biindex(w: &XWord) -> Result<BiIndex> {
    if !w.is_positive() {
        return Err(Error::NotPositive);
    }
    bs_inv(&xword_to_bs(w)).map_err(|_| Error::NotPositive)
}

pub fn phi_mu(w: &YWord) -> XWord {
    let mut out = Vec::new();
    let mut prev = Rational::zero();
    for l in &w.0 {
        out.push(XLetter::Y(&l.m - &prev));
        prev = l.m.clone();
        for _ in 1..l.k {
            out.push(XLetter::X);
        }
    }
    Word(out)
}

pub fn phi_mu_inv(w: &XWord) -> Result<YWord> {
    if !w.is_positive() {
        return Err(Error::NotPositive);
    }
    let mut out: Vec<YLetter> = Vec::new();
    let mut acc = Rational::zero();
    for l in &w.0 {
        match l {
            XLetter::Y(s) => {
                acc += s;
                out.push(YLetter::new(1, acc.clone()));
            }
            XLetter::X => out.last_mut().ok_or(Error::NotPositive)?.k += 1,
        }
    }
    Ok(Word(out))
}

/// The mixed (y,x)-word attached to a bi-index.
pub fn yx_word(b: &BiIndex) -> XWord {
    phi_mu(&b.to_word())
}

/// Finite ℚ[μ]-linear combination of words.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WordPoly<L: Ord> {
    terms: BTreeMap<Word<L>, MuPoly>,
}

impl<L: Ord + Clone> Default for WordPoly<L> {
    fn default() -> Self {
        WordPoly { terms: BTreeMap::new() }
    }
}

impl<L: Ord + Clone> WordPoly<L> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_word(Word::empty())
    }

    pub fn from_word(w: Word<L>) -> Self {
        Self::monomial(w, MuPoly::one())
    }

    pub fn monomial(w: Word<L>, c: MuPoly) -> Self {
        let mut p = Self::zero();
        p.add_term(w, &c);
        p
    }

    pub fn add_term(&mut self, w: Word<L>, c: &MuPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(e) => {
                *e += c;
                if e.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c.clone());
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word<L>, &MuPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word<L>) -> MuPoly {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn scale(&self, c: &MuPoly) -> Self {
        let mut out = Self::zero();
        for (w, a) in &self.terms {
            out.add_term(w.clone(), &(a * c));
        }
        out
    }

    pub fn scale_rat(&self, c: &Rational) -> Self {
        self.scale(&MuPoly::constant(c.clone()))
    }

    /// Appends `l` to every word.
    pub fn append_letter(&self, l: &L) -> Self {
        WordPoly { terms: self.terms.iter().map(|(w, c)| (w.with_letter(l.clone()), c.clone())).collect() }
    }

    /// Concatenation product, extended bilinearly.
    pub fn concat(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.concat(v), &(a * b));
            }
        }
        out
    }

    /// Largest word length appearing.
    pub fn max_len(&self) -> usize {
        self.terms.keys().map(|w| w.len()).max().unwrap_or(0)
    }
}

impl<L: Ord + Clone> From<Word<L>> for WordPoly<L> {
    fn from(w: Word<L>) -> Self {
        Self::from_word(w)
    }
}

impl<L: Ord + Clone> Add for &WordPoly<L> {
    type Output = WordPoly<L>;
    fn add(self, rhs: &WordPoly<L>) -> WordPoly<L> {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c);
        }
        out
    }
}

impl<L: Ord + Clone> Sub for &WordPoly<L> {
    type Output = WordPoly<L>;
    fn sub(self, rhs: &WordPoly<L>) -> WordPoly<L> {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), &-c);
        }
        out
    }
}

impl<L: Ord + Clone> Neg for &WordPoly<L> {
    type Output = WordPoly<L>;
    fn neg(self) -> WordPoly<L> {
        self.scale(&-MuPoly::one())
    }
}

impl<L: Ord + Clone> Add for WordPoly<L> {
    type Output = WordPoly<L>;
    fn add(self, rhs: WordPoly<L>) -> WordPoly<L> {
        &self + &rhs
    }
}

impl<L: Ord + Clone> Sub for WordPoly<L> {
    type Output = WordPoly<L>;
    fn sub(self, rhs: WordPoly<L>) -> WordPoly<L> {
        &self - &rhs
    }
}

impl<L: Ord + Clone> IsZero for WordPoly<L> {
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
}

impl<L: Ord + Clone> fmt::Display for WordPoly<L>
where
    Word<L>: fmt::Display,
{
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> =
            self.terms.iter().map(|(w, c)| if c.is_one() { w.to_string() } else { format!("({c})·{w}") }).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Writes `q = Σ_i c_i · a^i` (concatenation with the anchor letter `a`),
/// where each `c_i` lies in the regular span: words not ending in a tail
/// letter, plus prefix-anchored differences `u·(t − a)`.
pub(crate) fn anchor_split<L: Ord + Clone>(
    q: &WordPoly<L>,
    anchor: &L,
    is_tail: &impl Fn(&L) -> bool,
) -> Vec<WordPoly<L>> {
    let mut comps = Vec::new();
    let mut cur = q.clone();
    loop {
        let mut c0 = WordPoly::zero();
        let mut rest = WordPoly::zero();
        for (w, c) in cur.terms() {
            match w.last() {
                Some(l) if is_tail(l) => {
                    let p = w.prefix();
                    c0.add_term(w.clone(), c);
                    c0.add_term(p.with_letter(anchor.clone()), &-c);
                    rest.add_term(p, c);
                }
                _ => c0.add_term(w.clone(), c),
            }
        }
        comps.push(c0);
        if rest.is_zero() {
            return comps;
        }
        cur = rest;
    }
}

/// Inverts `P ↦ Σ_i P_i ⋆ a^{⋆i}` for a commutative product `⋆` whose
/// leading behaviour is `c ⋆ a^{⋆d} ≡ d!·c·a^d` modulo lower anchor degree.
pub(crate) fn anchored_decompose<L: Ord + Clone>(
    q: &WordPoly<L>,
    anchor: &L,
    is_tail: impl Fn(&L) -> bool,
    product: impl Fn(&WordPoly<L>, &WordPoly<L>) -> WordPoly<L>,
) -> TPolyWords<L> {
    let a = WordPoly::from_word(Word(vec![anchor.clone()]));
    let mut powers = vec![WordPoly::one()];
    let mut out: Vec<WordPoly<L>> = Vec::new();
    let mut q = q.clone();
    let mut last_deg = usize::MAX;
    loop {
        let comps = anchor_split(&q, anchor, &is_tail);
        let d = comps.len() - 1;
        assert!(d < last_deg, "anchored decomposition failed to lower the degree");
        last_deg = d;
        if out.len() <= d {
            out.resize(d + 1, WordPoly::zero());
        }
        if d == 0 {
            out[0] = &out[0] + &comps[0];
            break;
        }
        let lead = comps[d].scale_rat(&(Rational::one() / crate::coeff_ring::factorial(d as u32)));
        while powers.len() <= d {
            let next = product(powers.last().unwrap(), &a);
            powers.push(next);
        }
        out[d] = &out[d] + &lead;
        q = &q - &product(&lead, &powers[d]);
    }
    crate::coeff_ring::TPoly::new(out)
}

pub(crate) type TPolyWords<L> = crate::coeff_ring::TPoly<WordPoly<L>>;
