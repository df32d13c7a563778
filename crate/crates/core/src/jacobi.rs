//! Jacobi polynomials on the integer lattice and the algebraic Jacobi functions
//! built from them.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::funcspace::{Image, LabeledFunction, WeightedPoly};
use crate::params::{check_jmq, make_jmq, nab_from_jmq, Condition, JmqTriple, NabTriple};
use crate::scalar::{int, RadicalScalar, Rational};

/// Generalized binomial coefficient `(a+1-s)_s / s!`, valid for any integer `a`.
pub fn gen_binomial(a: i64, s: u64) -> Rational {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for k in 0..s as i64 {
        num *= a - k;
        den *= k + 1;
    }
    Rational::new(num, den)
}

fn factorial(n: i64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Binomial expansion of `((x + shift)/2)^k` as ascending coefficients.
fn half_shifted_pow(shift: i64, k: u64) -> Vec<Rational> {
    (0..=k)
        .map(|i| {
            gen_binomial(k as i64, i)
                * int(shift).pow((k - i) as i32)
                * Rational::new(BigInt::one(), BigInt::from(2).pow(k as u32))
        })
        .collect()
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    WeightedPoly::polynomial(a.to_vec())
        .mul(&WeightedPoly::polynomial(b.to_vec()))
        .expand()
        .expect("polynomial product")
}

/// `J_n^(alpha,beta)(x) = sum_s C(n+alpha, s) C(n+beta, n-s) ((x+1)/2)^s ((x-1)/2)^(n-s)`.
pub fn jacobi_poly(t: &NabTriple) -> WeightedPoly {
    let n = t.n();
    let mut acc = vec![Rational::zero(); n as usize + 1];
    for s in 0..=n {
        let c = gen_binomial(n + t.alpha(), s as u64) * gen_binomial(n + t.beta(), (n - s) as u64);
        if c.is_zero() {
            continue;
        }
        let term = poly_mul(&half_shifted_pow(1, s as u64), &half_shifted_pow(-1, (n - s) as u64));
        for (k, v) in term.into_iter().enumerate() {
            acc[k] += &c * v;
        }
    }
    WeightedPoly::polynomial(acc)
}

/// `Γ(j+m+1)Γ(j-m+1) / (Γ(j+q+1)Γ(j-q+1))` as an exact rational.
pub fn gamma_ratio(t: &JmqTriple) -> Rational {
    let (j, m, q) = (t.j().twice(), t.m().twice(), t.q().twice());
    Rational::new(
        factorial((j + m) / 2) * factorial((j - m) / 2),
        factorial((j + q) / 2) * factorial((j - q) / 2),
    )
}

/// The algebraic Jacobi function with label `t`.
///
/// The `1/2` factors of the two weights are folded into `scale`, so
/// `body = (1-x)^((m+q)/2) (1+x)^((m-q)/2) J_(j-m)^(m+q, m-q)(x)` after clearing
/// negative exponents, and `scale = sqrt(gamma_ratio * 2^(-2m))`.
pub fn ajf(t: &JmqTriple) -> LabeledFunction {
    let nab = nab_from_jmq(*t);
    let p = jacobi_poly(&nab);
    let body = WeightedPoly::weight(nab.alpha(), nab.beta())
        .mul(&p)
        .normalize_exponents()
        .expect("lattice labels cancel the weight poles");
    let two_m = t.m().twice();
    let pow2 = if two_m >= 0 {
        Rational::new(BigInt::one(), BigInt::from(2).pow(two_m as u32))
    } else {
        Rational::from_integer(BigInt::from(2).pow((-two_m) as u32))
    };
    let scale = RadicalScalar::sqrt(&(gamma_ratio(t) * pow2)).expect("positive");
    LabeledFunction {
        label: *t,
        scale,
        body,
    }
}

/// Extension of [`ajf`] by zero to `j < |m|`.
pub fn ajf_hat(two_j: i64, two_m: i64, two_q: i64) -> Result<Image> {
    match check_jmq(two_j, two_m, two_q) {
        Ok(()) => Ok(Image::Function(ajf(&make_jmq(two_j, two_m, two_q)?))),
        Err(Condition::JAtLeastAbsM) => {
            if two_j < 0 {
                return Err(Error::ConditionViolation(Condition::TwoJNatural));
            }
            if (two_j - two_m) % 2 != 0 {
                return Err(Error::ConditionViolation(Condition::JMinusMNatural));
            }
            if (two_j - two_q) % 2 != 0 {
                return Err(Error::ConditionViolation(Condition::JMinusQNatural));
            }
            if two_j < two_q.abs() {
                return Err(Error::ConditionViolation(Condition::JAtLeastAbsQ));
            }
            Ok(Image::Zero)
        }
        Err(c) => Err(Error::ConditionViolation(c)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Symmetry {
    SwapMq,
    NegateQ,
    NegateM,
    NegateMq,
}

impl Symmetry {
    pub const ALL: [Symmetry; 4] = [
        Symmetry::SwapMq,
        Symmetry::NegateQ,
        Symmetry::NegateM,
        Symmetry::NegateMq,
    ];
}

/// `ajf(t)(x) == sign * ajf(label)(reflect ? -x : x)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SymmetryImage {
    pub label: JmqTriple,
    pub sign: i8,
    pub reflect: bool,
}

fn parity_sign(twice: i64) -> i8 {
    debug_assert!(twice % 2 == 0);
    if (twice / 2).rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

pub fn symmetry_image(t: &JmqTriple, which: Symmetry) -> SymmetryImage {
    let (j, m, q) = (t.j(), t.m(), t.q());
    let (label, sign, reflect) = match which {
        Symmetry::SwapMq => (JmqTriple::new(j, q, m), 1, false),
        Symmetry::NegateQ => (JmqTriple::new(j, m, -q), parity_sign((j - m).twice()), true),
        Symmetry::NegateM => (JmqTriple::new(j, -m, q), parity_sign((j - q).twice()), true),
        Symmetry::NegateMq => (JmqTriple::new(j, -m, -q), parity_sign((m + q).twice()), false),
    };
    SymmetryImage {
        label: label.expect("symmetries preserve the lattice"),
        sign,
        reflect,
    }
}

/// Checks one symmetry relation as an exact identity of functions.
pub fn symmetry_holds(t: &JmqTriple, which: Symmetry) -> bool {
    let img = symmetry_image(t, which);
    let lhs = ajf(t);
    let rhs = ajf(&img.label);
    let body = if img.reflect {
        rhs.body.reflect()
    } else {
        rhs.body.clone()
    };
    let rhs = LabeledFunction {
        label: *t,
        scale: rhs.scale.scale(&int(img.sign as i64)),
        body,
    };
    lhs.same_value(&rhs)
}

/// Applies `-(1-x²)D² + 2xD + (2mqx + m² + q²)/(1-x²) - j(j+1)` to `ajf(t)`.
/// The scale is dropped; the result is identically zero on the lattice.
pub fn ode_residual(t: &JmqTriple) -> Result<WeightedPoly> {
    let f = ajf(t).body;
    let (j, m, q) = (t.j().to_rational(), t.m().to_rational(), t.q().to_rational());
    let d1 = f.differentiate();
    let d2 = d1.differentiate();
    let one_minus_x2 = WeightedPoly::weight(2, 2);
    let potential = WeightedPoly::raw(
        -2,
        -2,
        vec![&m * &m + &q * &q, int(2) * &m * &q],
    );
    let terms = [
        one_minus_x2.mul(&d2).neg(),
        WeightedPoly::x().mul(&d1).scale(&int(2)),
        potential.mul(&f),
        f.scale(&-(&j * (&j + Rational::one()))),
    ];
    let mut acc = WeightedPoly::zero();
    for t in &terms {
        acc = acc.add(t)?;
    }
    acc.normalize_exponents()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::make_jmq;
    use crate::scalar::rat;

    fn jmq(a: i64, b: i64, c: i64) -> JmqTriple {
        make_jmq(a, b, c).unwrap()
    }

    #[test]
    fn gen_binomial_values() {
        assert_eq!(gen_binomial(5, 2), int(10));
        assert_eq!(gen_binomial(2, 3), int(0));
        assert_eq!(gen_binomial(-1, 2), int(1));
        assert_eq!(gen_binomial(-2, 3), int(-4));
        assert_eq!(gen_binomial(7, 0), int(1));
    }

    #[test]
    fn jacobi_poly_examples() {
        let j = jacobi_poly(&NabTriple::new(0, 3, 0).unwrap());
        assert_eq!(j, WeightedPoly::one());
        let j = jacobi_poly(&NabTriple::new(1, 0, 0).unwrap());
        assert_eq!(j, WeightedPoly::x());
        let j = jacobi_poly(&NabTriple::new(1, 1, 0).unwrap());
        assert_eq!(j.expand().unwrap(), vec![rat(1, 2), rat(3, 2)]);
    }

    #[test]
    fn ajf_examples() {
        let f = ajf(&jmq(0, 0, 0));
        assert_eq!(f.scale, RadicalScalar::one());
        assert_eq!(f.body, WeightedPoly::one());

        // sqrt((1-x)/2)
        let f = ajf(&jmq(1, 1, 1));
        let expect = LabeledFunction {
            label: jmq(1, 1, 1),
            scale: RadicalScalar::sqrt(&rat(1, 2)).unwrap(),
            body: WeightedPoly::weight(1, 0),
        };
        assert!(f.same_value(&expect));

        // sqrt((1-x^2)/2)
        let f = ajf(&jmq(2, 2, 0));
        let expect = LabeledFunction {
            label: jmq(2, 2, 0),
            scale: RadicalScalar::sqrt(&rat(1, 2)).unwrap(),
            body: WeightedPoly::weight(1, 1),
        };
        assert!(f.same_value(&expect));
    }

    #[test]
    fn ajf_bodies_regular() {
        for t in JmqTriple::window(10) {
            let f = ajf(&t);
            assert!(f.body.is_regular(), "{t}");
            assert!(!f.body.is_zero(), "{t}");
            assert_eq!(f.scale.term_count(), 1);
        }
    }

    #[test]
    fn hat_extension() {
        assert_eq!(ajf_hat(1, 3, 1).unwrap(), Image::Zero);
        assert_eq!(ajf_hat(2, 4, 0).unwrap(), Image::Zero);
        assert_eq!(ajf_hat(2, 0, 0).unwrap(), Image::Function(ajf(&jmq(2, 0, 0))));
        assert_eq!(
            ajf_hat(2, 0, 4),
            Err(Error::ConditionViolation(Condition::JAtLeastAbsQ))
        );
        assert_eq!(
            ajf_hat(2, 3, 0),
            Err(Error::ConditionViolation(Condition::JMinusMNatural))
        );
    }

    #[test]
    fn symmetry_examples() {
        let img = symmetry_image(&jmq(6, 4, 2), Symmetry::SwapMq);
        assert_eq!(img, SymmetryImage { label: jmq(6, 2, 4), sign: 1, reflect: false });
        let img = symmetry_image(&jmq(2, 0, 0), Symmetry::NegateMq);
        assert_eq!(img, SymmetryImage { label: jmq(2, 0, 0), sign: 1, reflect: false });
        let img = symmetry_image(&jmq(2, 2, 0), Symmetry::NegateQ);
        assert_eq!(img, SymmetryImage { label: jmq(2, 2, 0), sign: 1, reflect: true });
    }

    #[test]
    fn symmetries_exhaustive() {
        for t in JmqTriple::window(6) {
            for s in Symmetry::ALL {
                assert!(symmetry_holds(&t, s), "{t} {s:?}");
            }
        }
    }

    #[test]
    fn ode_annihilates() {
        for (a, b, c) in [(2, 0, 0), (1, 1, 1), (4, 2, -2)] {
            assert!(ode_residual(&jmq(a, b, c)).unwrap().is_zero());
        }
        for t in JmqTriple::window(8) {
            assert!(ode_residual(&t).unwrap().is_zero(), "{t}");
        }
    }
}
