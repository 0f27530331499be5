//! Multivariate polynomial gcd.
//!
//! Over Q the gcd is exact: contents are split off recursively one parameter at a
//! time and the primitive parts go through a primitive pseudo-remainder sequence.
//! When ω occurs in either input only the cheap reductions are attempted (monomial
//! content plus trial division), which leaves a common factor in rare cases; scalar
//! equality never depends on the reduction being complete.

use super::mono::Mono;
use super::poly::Poly;

/// Normalized gcd: integral, primitive, positive leading coefficient. `gcd(0, 0) = 0`.
pub fn poly_gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.primitive();
    }
    if b.is_zero() {
        return a.primitive();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    if a.has_omega() || b.has_omega() {
        return weak_gcd(a, b);
    }
    gcd_rec(a, b).primitive()
}

fn weak_gcd(a: &Poly, b: &Poly) -> Poly {
    let m = a.monomial_content().gcd(&b.monomial_content());
    let a1 = a
        .div_exact(&Poly::monomial(a.monomial_content(), super::coeff::Coeff::one()))
        .unwrap();
    let b1 = b
        .div_exact(&Poly::monomial(b.monomial_content(), super::coeff::Coeff::one()))
        .unwrap();
    let mpoly = Poly::monomial(m, super::coeff::Coeff::one());
    if a1.is_constant() || b1.is_constant() {
        return mpoly;
    }
    if b1.div_exact(&a1).is_some() {
        return a1.primitive().mul(&mpoly);
    }
    if a1.div_exact(&b1).is_some() {
        return b1.primitive().mul(&mpoly);
    }
    mpoly
}

fn strip_monomial(p: &Poly) -> (Mono, Poly) {
    let m = p.monomial_content();
    if m.is_one() {
        return (m, p.clone());
    }
    let q = p
        .div_exact(&Poly::monomial(m.clone(), super::coeff::Coeff::one()))
        .expect("monomial content divides");
    (m, q)
}

fn gcd_rec(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.primitive();
    }
    if b.is_zero() {
        return a.primitive();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    if a == b {
        return a.primitive();
    }
    let (ma, a1) = strip_monomial(a);
    let (mb, b1) = strip_monomial(b);
    let g_mono = Poly::monomial(ma.gcd(&mb), super::coeff::Coeff::one());
    if a1.is_constant() || b1.is_constant() {
        return g_mono;
    }
    let nvars = a1.nvars_used().max(b1.nvars_used());
    // A parameter occurring in only one input can only enter the gcd through that
    // input's content with respect to it.
    for v in 0..nvars {
        let in_a = a1.uses_var(v);
        let in_b = b1.uses_var(v);
        if in_a && !in_b {
            let c = content_in(&a1, v);
            return gcd_rec(&c, &b1).mul(&g_mono);
        }
        if in_b && !in_a {
            let c = content_in(&b1, v);
            return gcd_rec(&a1, &c).mul(&g_mono);
        }
    }
    // pick the shared parameter of smallest degree as main variable
    let v = (0..nvars)
        .filter(|&v| a1.uses_var(v))
        .min_by_key(|&v| (a1.degree_in(v).max(b1.degree_in(v)), v))
        .expect("non-constant polynomial uses a parameter");
    let ca = content_in(&a1, v);
    let cb = content_in(&b1, v);
    let pa = a1.div_exact(&ca).expect("content divides");
    let pb = b1.div_exact(&cb).expect("content divides");
    let g_content = gcd_rec(&ca, &cb);
    let g_prim = primitive_prs(pa, pb, v);
    g_mono.mul(&g_content).mul(&g_prim).primitive()
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `v`.
fn content_in(p: &Poly, v: usize) -> Poly {
    let coeffs = p.coefficients_in(v);
    let mut it = coeffs.into_values();
    let mut g = it.next().unwrap_or_else(Poly::zero).primitive();
    for c in it {
        if g.is_constant() {
            return Poly::one();
        }
        g = gcd_rec(&g, &c);
    }
    if g.is_constant() {
        Poly::one()
    } else {
        g.primitive()
    }
}

fn primitive_part_in(p: &Poly, v: usize) -> Poly {
    let c = content_in(p, v);
    p.div_exact(&c).expect("content divides").primitive()
}

fn pseudo_remainder(a: &Poly, b: &Poly, v: usize) -> Poly {
    let db = b.degree_in(v);
    let bc = b.coefficients_in(v);
    let lc_b = bc.get(&db).cloned().expect("leading coefficient");
    let mut r = a.clone();
    loop {
        let dr = r.degree_in(v);
        if r.is_zero() || dr < db {
            return r;
        }
        let lc_r = r.coefficients_in(v).remove(&dr).expect("leading coefficient");
        let shift = Poly::monomial(Mono::var_pow(v, dr - db), super::coeff::Coeff::one());
        r = r.mul(&lc_b).sub(&lc_r.mul(&shift).mul(b));
        // keep coefficient growth in check; the gcd is insensitive to content here
        if !r.is_zero() {
            r = r.primitive();
        }
    }
}

fn primitive_prs(a: Poly, b: Poly, v: usize) -> Poly {
    let (mut a, mut b) = if a.degree_in(v) >= b.degree_in(v) {
        (a, b)
    } else {
        (b, a)
    };
    loop {
        if b.degree_in(v) == 0 {
            // b is primitive in v and free of v: a unit
            return Poly::one();
        }
        let r = pseudo_remainder(&a, &b, v);
        if r.is_zero() {
            return b.primitive();
        }
        if r.degree_in(v) == 0 {
            return Poly::one();
        }
        a = b;
        b = primitive_part_in(&r, v);
    }
}
