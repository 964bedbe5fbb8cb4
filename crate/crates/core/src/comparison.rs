//! Comparison maps between the stuffle and shuffle regularizations.

use num_traits::One;

use crate::coeff_ring::{binomial, factorial, int, Rational, TPoly};
use crate::error::{Error, Result};
use crate::shuffle_algebra::XPoly;
use crate::stuffle_algebra::{mu_stuffle, YPoly};
use crate::symbolic_values::{reg_sh_poly, t_power, tpoly_add, tpoly_shift, GExpr, TPolyG};
use crate::word_core::{phi_mu, Word, YLetter};

/// Largest power accepted by [`rho_mixed_direct`].
pub const DIRECT_MAX_POWER: usize = 5;

/// Taylor coefficients γ_k of exp(Σ_{n≥2} (−1)^n ζ(n) u^n / n).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaSeries {
    pub gammas: Vec<GExpr>,
}

pub fn gamma_coeffs(k_max: usize) -> GammaSeries {
    // k γ_k = Σ_{n=2}^{k} (−1)^n ζ(n) γ_{k−n}
    let mut g = vec![GExpr::one()];
    for k in 1..=k_max {
        let mut acc = GExpr::zero();
        for n in 2..=k {
            let z = GExpr::zeta_classical(n as u32).expect("n ≥ 2");
            let sign = if n % 2 == 0 { int(1) } else { int(-1) };
            acc = &acc + &(&z * &g[k - n]).scale_rat(&sign);
        }
        g.push(acc.scale_rat(&(Rational::one() / int(k as i64))));
    }
    GammaSeries { gammas: g }
}

fn apply_linear(p: &TPolyG, image: impl Fn(usize) -> TPolyG) -> TPolyG {
    let mut out = TPoly::zero();
    for (s, c) in p.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let img = image(s);
        out = tpoly_add(&out, &TPoly::new(img.coeffs.iter().map(|x| x * c).collect()));
    }
    out
}

fn shift_map(m: &Rational, mp: &Rational, p: &TPolyG) -> TPolyG {
    tpoly_shift(p, &GExpr::hdiff(m.clone(), mp.clone()))
}

/// Stuffle comparison: T^s ↦ (T + c_{m,m'})^s.
pub fn rho_st(m: &Rational, mp: &Rational, p: &TPolyG) -> TPolyG {
    shift_map(m, mp, p)
}

/// Shuffle comparison, given by the same shift as [`rho_st`].
pub fn rho_sh(m: &Rational, mp: &Rational, p: &TPolyG) -> TPolyG {
    shift_map(m, mp, p)
}

/// T^n ↦ n! Σ_k γ_k/(n−k)! T^{n−k}.
pub fn rho_11(p: &TPolyG) -> TPolyG {
    let g = gamma_coeffs(p.coeffs.len());
    apply_linear(p, |n| {
        let mut v = vec![GExpr::zero(); n + 1];
        for k in 0..=n {
            let c = factorial(n as u32) / factorial((n - k) as u32);
            v[n - k] = g.gammas[k].scale_rat(&c);
        }
        TPoly::new(v)
    })
}

/// Mixed comparison ρ_{m,m'}:
/// T^n ↦ Σ_k C(n,k) c_{m,1}^{n−k} · k! Σ_l γ_l/(k−l)! (T + c_{1,m'})^{k−l}.
pub fn rho_mixed(m: &Rational, mp: &Rational, p: &TPolyG) -> TPolyG {
    let one = int(1);
    let c1 = GExpr::hdiff(m.clone(), one.clone());
    let c2 = GExpr::hdiff(one, mp.clone());
    let g = gamma_coeffs(p.coeffs.len());
    apply_linear(p, |n| {
        let mut out = TPoly::zero();
        for k in 0..=n {
            let outer = c1.pow(n - k).scale_rat(&binomial(n as u32, k as u32));
            for l in 0..=k {
                let c = factorial(k as u32) / factorial((k - l) as u32);
                let coef = &outer * &g.gammas[l].scale_rat(&c);
                let shifted = tpoly_shift(&t_power(k - l), &c2);
                out = tpoly_add(&out, &TPoly::new(shifted.coeffs.iter().map(|x| x * &coef).collect()));
            }
        }
        out
    })
}

/// ρ_{m,m'}(T^s) built from the shuffle decomposition of φ_μ(y_{1,m}^{∗s})
/// anchored at m'.
pub fn rho_mixed_direct(m: &Rational, mp: &Rational, s: usize) -> Result<TPolyG> {
    if s > DIRECT_MAX_POWER {
        return Err(Error::TooLarge(format!("power {s} exceeds {DIRECT_MAX_POWER}")));
    }
    let a = YPoly::from_word(Word(vec![YLetter::new(1, m.clone())]));
    let mut pow = YPoly::one();
    for _ in 0..s {
        pow = mu_stuffle(&pow, &a);
    }
    let mut x = XPoly::zero();
    for (w, c) in pow.terms() {
        x.add_term(phi_mu(w), c);
    }
    reg_sh_poly(&x, mp)
}
