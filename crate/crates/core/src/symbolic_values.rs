//! Formal expressions in value symbols, the evaluation maps on the regular
//! subalgebras, and the two regularizations into polynomials in T.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::coeff_ring::{binomial, IsZero, MuPoly, Rational, TPoly};
use crate::error::{Error, Result};
use crate::shuffle_algebra::{decompose_sh_poly, x0_normal_form, X0Term, XPoly};
use crate::stuffle_algebra::{decompose_st_poly, mu_stuffle, y0_normal_form, Y0Term, YPoly};
use crate::word_core::{xword_biindex, BiIndex, SpecialTriple, XLetter, XWord, YLetter};

/// A value symbol.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GSym {
    /// ζ^μ(k;m) of an admissible, nonempty bi-index.
    ZetaMu(BiIndex),
    /// 𝒟^μ(k;m;m̃), stored with final shift below the alternative shift.
    DsMu(SpecialTriple),
    /// Classical ζ(n), n ≥ 2.
    ZetaClassical(u32),
    /// H(m'/μ − 1) − H(m/μ − 1), stored with m < m'.
    HDiff(Rational, Rational),
}

impl fmt::Display for GSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GSym::ZetaMu(b) => write!(f, "ζμ({b})"),
            GSym::DsMu(t) => write!(f, "Dμ({t})"),
            GSym::ZetaClassical(n) => write!(f, "ζ({n})"),
            GSym::HDiff(m, mp) => write!(f, "c({m},{mp})"),
        }
    }
}

type Monomial = Vec<GSym>;

/// ℚ[μ]-combination of monomials (sorted multisets) in value symbols.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GExpr {
    terms: BTreeMap<Monomial, MuPoly>,
}

impl GExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(MuPoly::one())
    }

    pub fn constant(c: MuPoly) -> Self {
        let mut e = Self::zero();
        e.add_term(Vec::new(), &c);
        e
    }

    pub fn rational(c: Rational) -> Self {
        Self::constant(MuPoly::constant(c))
    }

    pub fn mu() -> Self {
        Self::constant(MuPoly::mu())
    }

    pub fn symbol(s: GSym) -> Self {
        let mut e = Self::zero();
        e.add_term(vec![s], &MuPoly::one());
        e
    }

    /// ζ^μ(b); the empty bi-index gives 1.
    pub fn zeta_mu(b: BiIndex) -> Result<Self> {
        if !b.is_admissible() {
            return Err(Error::Divergent(format!("ζμ({b})")));
        }
        if b.depth() == 0 {
            return Ok(Self::one());
        }
        Ok(Self::symbol(GSym::ZetaMu(b)))
    }

    /// 𝒟^μ(base; alt). Zero when `alt` equals the final shift; otherwise
    /// oriented so the stored final shift is the smaller one.
    pub fn ds(base: BiIndex, alt: Rational) -> Result<Self> {
        let last = base.ms().last().cloned().ok_or_else(|| Error::Invalid("empty bi-index".into()))?;
        if last == alt {
            if base.ks().last() != Some(&1) {
                return Err(Error::Invalid("special triple needs a final exponent 1".into()));
            }
            return Ok(Self::zero());
        }
        if last < alt {
            Ok(Self::symbol(GSym::DsMu(SpecialTriple::new(base, alt)?)))
        } else {
            let flipped = base.with_last_shift(alt)?;
            Ok(-Self::symbol(GSym::DsMu(SpecialTriple::new(flipped, last)?)))
        }
    }

    pub fn ds_triple(t: &SpecialTriple) -> Self {
        Self::ds(t.base().clone(), t.alt().clone()).expect("valid triple")
    }

    pub fn zeta_classical(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::Domain(format!("ζ({n}) diverges")));
        }
        Ok(Self::symbol(GSym::ZetaClassical(n)))
    }

    /// c_{m,m'}(μ) = H(m'/μ − 1) − H(m/μ − 1).
    pub fn hdiff(m: Rational, mp: Rational) -> Self {
        use std::cmp::Ordering::*;
        match m.cmp(&mp) {
            Equal => Self::zero(),
            Less => Self::symbol(GSym::HDiff(m, mp)),
            Greater => -Self::symbol(GSym::HDiff(mp, m)),
        }
    }

    pub fn add_term(&mut self, mut mono: Monomial, c: &MuPoly) {
        if c.is_zero() {
            return;
        }
        mono.sort();
        match self.terms.get_mut(&mono) {
            Some(e) => {
                *e += c;
                if e.is_zero() {
                    self.terms.remove(&mono);
                }
            }
            None => {
                self.terms.insert(mono, c.clone());
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &MuPoly)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, mono: &[GSym]) -> MuPoly {
        let mut m = mono.to_vec();
        m.sort();
        self.terms.get(&m).cloned().unwrap_or_default()
    }

    pub fn scale(&self, c: &MuPoly) -> Self {
        let mut out = Self::zero();
        for (m, a) in &self.terms {
            out.add_term(m.clone(), &(a * c));
        }
        out
    }

    pub fn scale_rat(&self, c: &Rational) -> Self {
        self.scale(&MuPoly::constant(c.clone()))
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Specializes every coefficient at a rational μ.
    pub fn specialize_mu(&self, mu: &Rational) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), &MuPoly::constant(c.eval(mu)));
        }
        out
    }

    /// Every distinct symbol occurring.
    pub fn symbols(&self) -> Vec<GSym> {
        let mut v: Vec<GSym> = self.terms.keys().flatten().cloned().collect();
        v.sort();
        v.dedup();
        v
    }

    /// True when every monomial has at most one factor.
    pub fn is_linear(&self) -> bool {
        self.terms.keys().all(|m| m.len() <= 1)
    }
}

impl Add for &GExpr {
    type Output = GExpr;
    fn add(self, rhs: &GExpr) -> GExpr {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c);
        }
        out
    }
}

impl Sub for &GExpr {
    type Output = GExpr;
    fn sub(self, rhs: &GExpr) -> GExpr {
        self + &(-rhs)
    }
}

impl Neg for &GExpr {
    type Output = GExpr;
    fn neg(self) -> GExpr {
        self.scale(&-MuPoly::one())
    }
}

impl Neg for GExpr {
    type Output = GExpr;
    fn neg(self) -> GExpr {
        -&self
    }
}

impl Mul for &GExpr {
    type Output = GExpr;
    fn mul(self, rhs: &GExpr) -> GExpr {
        let mut out = GExpr::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                let mut m = a.clone();
                m.extend(b.iter().cloned());
                out.add_term(m, &(ca * cb));
            }
        }
        out
    }
}

impl Add for GExpr {
    type Output = GExpr;
    fn add(self, rhs: GExpr) -> GExpr {
        &self + &rhs
    }
}

impl Sub for GExpr {
    type Output = GExpr;
    fn sub(self, rhs: GExpr) -> GExpr {
        &self - &rhs
    }
}

impl Mul for GExpr {
    type Output = GExpr;
    fn mul(self, rhs: GExpr) -> GExpr {
        &self * &rhs
    }
}

impl IsZero for GExpr {
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
}

impl fmt::Display for GExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let syms: Vec<String> = m.iter().map(|s| s.to_string()).collect();
                match (m.is_empty(), c.is_one()) {
                    (true, _) => format!("({c})"),
                    (false, true) => syms.join("·"),
                    (false, false) => format!("({c})·{}", syms.join("·")),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Polynomial in T over value expressions.
pub type TPolyG = TPoly<GExpr>;

pub fn tpoly_add(a: &TPolyG, b: &TPolyG) -> TPolyG {
    let n = a.coeffs.len().max(b.coeffs.len());
    let zero = GExpr::zero();
    TPoly::new((0..n).map(|i| a.coeffs.get(i).unwrap_or(&zero) + b.coeffs.get(i).unwrap_or(&zero)).collect())
}

pub fn tpoly_sub(a: &TPolyG, b: &TPolyG) -> TPolyG {
    tpoly_add(a, &tpoly_scale(b, &GExpr::rational(-Rational::from_integer(1.into()))))
}

pub fn tpoly_scale(a: &TPolyG, c: &GExpr) -> TPolyG {
    TPoly::new(a.coeffs.iter().map(|x| x * c).collect())
}

pub fn tpoly_mul(a: &TPolyG, b: &TPolyG) -> TPolyG {
    if a.is_zero() || b.is_zero() {
        return TPoly::zero();
    }
    let mut v = vec![GExpr::zero(); a.coeffs.len() + b.coeffs.len() - 1];
    for (i, x) in a.coeffs.iter().enumerate() {
        for (j, y) in b.coeffs.iter().enumerate() {
            v[i + j] = &v[i + j] + &(x * y);
        }
    }
    TPoly::new(v)
}

/// T^s as a polynomial.
pub fn t_power(s: usize) -> TPolyG {
    let mut v = vec![GExpr::zero(); s + 1];
    v[s] = GExpr::one();
    TPoly::new(v)
}

/// Substitutes T ↦ T + c.
pub fn tpoly_shift(p: &TPolyG, c: &GExpr) -> TPolyG {
    let mut out = vec![GExpr::zero(); p.coeffs.len()];
    let powers: Vec<GExpr> = (0..p.coeffs.len()).map(|e| c.pow(e)).collect();
    for (s, a) in p.coeffs.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (i, slot) in out.iter_mut().enumerate().take(s + 1) {
            let term = a * &powers[s - i];
            *slot = &*slot + &term.scale_rat(&binomial(s as u32, i as u32));
        }
    }
    TPoly::new(out)
}

pub fn tpoly_specialize_mu(p: &TPolyG, mu: &Rational) -> TPolyG {
    TPoly::new(p.coeffs.iter().map(|c| c.specialize_mu(mu)).collect())
}

fn y0_term_value(t: &Y0Term) -> Result<GExpr> {
    match t {
        Y0Term::Admissible(w) => GExpr::zeta_mu(w.to_biindex()?),
        Y0Term::Difference { prefix, a, anchor } => {
            let base = prefix.with_letter(YLetter::new(1, a.clone())).to_biindex()?;
            GExpr::ds(base, anchor.clone())
        }
    }
}

fn zeta_star_hinted(p: &YPoly, hint: Option<&Rational>) -> Result<GExpr> {
    let mut out = GExpr::zero();
    for (t, c) in y0_normal_form(p, hint)? {
        out = &out + &y0_term_value(&t)?.scale(&c);
    }
    Ok(out)
}

/// ζ^μ_* on Y⁰.
pub fn zeta_star_sym(p: &YPoly) -> Result<GExpr> {
    zeta_star_hinted(p, None)
}

fn x0_term_value(t: &X0Term) -> Result<GExpr> {
    match t {
        X0Term::Admissible(w) => GExpr::zeta_mu(xword_biindex(w)?),
        X0Term::Difference { prefix, a, anchor } => {
            let shift = prefix.shift_total();
            let base = xword_biindex(&prefix.with_letter(XLetter::Y(a.clone())))?;
            GExpr::ds(base, shift + anchor)
        }
    }
}

fn zeta_sh_hinted(p: &XPoly, hint: Option<&Rational>) -> Result<GExpr> {
    let mut out = GExpr::zero();
    for (t, c) in x0_normal_form(p, hint)? {
        out = &out + &x0_term_value(&t)?.scale(&c);
    }
    Ok(out)
}

/// ζ^μ_⧢ on X⁰.
pub fn zeta_sh_sym(p: &XPoly) -> Result<GExpr> {
    zeta_sh_hinted(p, None)
}

/// Stuffle regularization anchored at y_{1,m}.
pub fn reg_star(w: &crate::word_core::YWord, m: &Rational) -> TPolyG {
    reg_star_poly(&YPoly::from_word(w.clone()), m)
}

pub fn reg_star_poly(p: &YPoly, m: &Rational) -> TPolyG {
    let d = decompose_st_poly(p, m);
    TPoly::new(d.coeffs.iter().map(|c| zeta_star_hinted(c, Some(m)).expect("decomposition lands in Y⁰")).collect())
}

/// Shuffle regularization anchored at y_m.
pub fn reg_sh(w: &XWord, m: &Rational) -> Result<TPolyG> {
    reg_sh_poly(&XPoly::from_word(w.clone()), m)
}

pub fn reg_sh_poly(p: &XPoly, m: &Rational) -> Result<TPolyG> {
    let d = decompose_sh_poly(p, m)?;
    Ok(TPoly::new(d.coeffs.iter().map(|c| zeta_sh_hinted(c, Some(m)).expect("decomposition lands in X⁰")).collect()))
}

/// The Y⁰ element whose ζ_* value is the symbol.
pub fn symbol_word(s: &GSym) -> Result<YPoly> {
    match s {
        GSym::ZetaMu(b) => Ok(YPoly::from_word(b.to_word())),
        GSym::DsMu(t) => Ok(&YPoly::from_word(t.base().to_word()) - &YPoly::from_word(t.alt_index().to_word())),
        other => Err(Error::NotLinearizable(other.to_string())),
    }
}

/// Rewrites products of ζ^μ / 𝒟^μ symbols as linear combinations through
/// the μ-stuffle product.
pub fn linearize(e: &GExpr) -> Result<GExpr> {
    let mut out = GExpr::zero();
    for (mono, c) in e.terms() {
        let mut acc = YPoly::one();
        for s in mono {
            acc = mu_stuffle(&acc, &symbol_word(s)?);
        }
        if mono.len() <= 1 {
            let mut m = GExpr::zero();
            m.add_term(mono.clone(), c);
            out = &out + &m;
        } else {
            out = &out + &zeta_star_sym(&acc)?.scale(c);
        }
    }
    Ok(out)
}
