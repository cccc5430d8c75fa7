use hopfcole::families::*;
use hopfcole::pde::LinearDiffOp;
use hopfcole::scalar::{factorial, integer, rational};
use hopfcole::{Context, Poly, Rational};
use num_bigint::BigInt;

fn x() -> Poly {
    Poly::var(xy(), "x")
}

fn y() -> Poly {
    Poly::var(xy(), "y")
}

fn x_pow(ctx: Context, n: u32) -> Poly {
    Poly::monomial(ctx, &[("x", n)], integer(1))
}

fn zero() -> Poly {
    Poly::zero(Context::empty())
}

fn big(n: u32) -> Rational {
    Rational::from_integer(factorial(n))
}

#[test]
fn hermite2_appell_recurrence() {
    // H_{n+1} = x H_n + 2y ∂ₓH_n
    for n in 0..12 {
        let h = hermite2(n).unwrap();
        let next = &(&x() * &h) + &(&y().scale(&integer(2)) * &h.partial_derivative("x"));
        assert_eq!(hermite2(n + 1).unwrap(), next, "n={n}");
    }
}

#[test]
fn lacunary_coefficients_and_equations() {
    for m in 2..=7u32 {
        for n in 0..=12u32 {
            let h = hermite_lacunary(n as i64, m as i64).unwrap();
            for r in 0..=n / m {
                let expected = big(n) / (big(n - m * r) * big(r));
                assert_eq!(h.coefficient(&[("x", n - m * r), ("y", r)]), expected, "n={n} m={m} r={r}");
            }
            assert_eq!(h.num_terms() as u32, n / m + 1);
            assert_eq!(h.substitute("y", &zero()), x_pow(Context::new(["x"]), n));
            assert_eq!(h.partial_derivative("y"), h.nth_derivative("x", m), "n={n} m={m}");
        }
    }
}

#[test]
fn laguerre_equation_and_boundaries() {
    let op = LinearDiffOp::laguerre("x");
    for n in 0..=12u32 {
        let l = laguerre2(n as i64).unwrap();
        assert_eq!(l.partial_derivative("t"), op.apply(&l), "n={n}");
        assert_eq!(l.substitute("x", &zero()), Poly::monomial(Context::new(["t"]), &[("t", n)], integer(1)));
        // top coefficient n!/(n!)² = 1/n!
        assert_eq!(l.coefficient(&[("x", n)]), Rational::from_integer(BigInt::from(1)) / big(n));
    }
}

#[test]
fn hybrid_equation_and_boundary() {
    let lhs = LinearDiffOp::laguerre("y");
    for n in 0..=12u32 {
        let psi = hybrid_l2(n as i64).unwrap();
        assert_eq!(lhs.apply(&psi), psi.nth_derivative("x", 2), "n={n}");
        assert_eq!(psi.substitute("y", &zero()), x_pow(Context::new(["x"]), n));
        assert_eq!(
            psi.partial_derivative("x"),
            hybrid_l2(n as i64 - 1).unwrap_or_else(|_| zero()).scale(&integer(n as i64))
        );
    }
}

#[test]
fn complete_family_higher_derivatives() {
    for m in 2..=5u32 {
        for n in 0..=8 {
            let h = hermite_complete_m(n, m as i64).unwrap();
            for k in 2..=m {
                let xk = format!("x{k}");
                assert_eq!(h.partial_derivative(&xk), h.nth_derivative("x1", k), "n={n} m={m} k={k}");
            }
            if n > 0 {
                let lower = hermite_complete_m(n - 1, m as i64).unwrap().scale(&integer(n));
                assert_eq!(h.partial_derivative("x1"), lower);
            }
        }
    }
}

#[test]
fn shifted_family_starts_at_monomial() {
    let triples = [(rational(1, 2), integer(2), integer(-1)), (integer(-3), integer(0), rational(1, 3))];
    for (a, b, c) in &triples {
        for n in 0..=6u32 {
            let psi = shifted_hermite3(n as i64, a, b, c).unwrap();
            assert_eq!(psi.substitute("y", &zero()), x_pow(Context::new(["x"]), n));
            let rhs = LinearDiffOp::cubic("x", a.clone(), b.clone(), c.clone());
            assert_eq!(psi.partial_derivative("y"), rhs.apply(&psi));
        }
    }
    // a pure shift is a translation
    let psi = shifted_hermite3(3, &integer(2), &integer(0), &integer(0)).unwrap();
    let s = &x() + &y().scale(&integer(2));
    assert_eq!(psi, s.pow(3));
}

#[test]
fn bessel_c0_partial_sums() {
    let mut sum = Rational::from_integer(BigInt::from(0));
    for big_n in 0..=10u32 {
        let f = big(big_n);
        sum += Rational::from_integer(BigInt::from(1)) / (&f * &f);
        let c0 = bessel_c0_truncated(big_n as i64).unwrap();
        assert_eq!(c0.evaluate_exact(&[("z", integer(1))]).unwrap(), sum);
    }
}

#[test]
fn family_specs_round_trip_and_validate() {
    for kind in FamilyKind::ALL {
        assert_eq!(FamilyKind::from_cli_name(kind.cli_name()), Some(kind));
    }
    let mut spec = FamilySpec::new(FamilyKind::ShiftedHermite3);
    spec.n = Some(2);
    spec.alpha = Some(rational(-1, 2));
    let text = serde_json::to_string(&spec).unwrap();
    assert_eq!(text, r#"{"kind":"ShiftedHermite3","n":2,"alpha":"-1/2"}"#);
    let back: FamilySpec = serde_json::from_str(&text).unwrap();
    assert_eq!(back.build().unwrap(), spec.build().unwrap());
    assert!(FamilySpec::new(FamilyKind::Hermite2).build().is_err());
    let mut bad = FamilySpec::new(FamilyKind::HermiteLacunary);
    bad.n = Some(3);
    bad.m = Some(1);
    assert!(bad.build().is_err());
}
