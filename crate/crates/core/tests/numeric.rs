use hopfcole::numeric::figures::{panels, Figure};
use hopfcole::numeric::{emit_csv, sample, Axis, GridSpec};
use hopfcole::pde::laguerre_solution;
use hopfcole::ratfunc::phi_solution;
use hopfcole::Rational;
use num_traits::ToPrimitive;

fn exact(v: f64) -> Rational {
    Rational::from_float(v).unwrap()
}

#[test]
fn float_samples_agree_with_exact_values() {
    for (u, time) in [(phi_solution(9, 3).unwrap(), "y"), (laguerre_solution(7).unwrap(), "t")] {
        let grid = GridSpec::line(Axis::new("x", -5.0, 5.0, 400).unwrap(), vec![(time.to_string(), 1.0)]);
        let table = sample(&u, &grid).unwrap();
        let xi = table.columns.iter().position(|c| c == "x").unwrap();
        for row in table.rows.iter().filter(|r| !r.pole) {
            let point = [("x", exact(row.coords[xi])), (time, exact(1.0))];
            let want = u.evaluate_exact(&point).unwrap().to_f64().unwrap();
            assert!((row.value - want).abs() <= 1e-12 * want.abs().max(1e-300), "{} vs {want}", row.value);
        }
    }
}

#[test]
fn csv_has_one_row_per_node() {
    for panel in panels(Figure::PhiLines).unwrap() {
        let mut out = Vec::new();
        emit_csv(&panel.sample().unwrap(), &mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert_eq!(text.lines().count(), 1 + 3 * 401, "{}", panel.name);
        assert!(text.lines().skip(1).all(|l| l.ends_with(",0") || l.ends_with(",1")));
    }
}

#[test]
fn laguerre_poles_sit_on_negative_axis() {
    // all coefficients of L_n are positive, so no poles for x, t > 0
    let u = laguerre_solution(7).unwrap();
    let grid = GridSpec::surface(Axis::new("x", 0.1, 5.0, 40).unwrap(), Axis::new("t", 0.1, 2.0, 20).unwrap(), vec![]);
    assert!(sample(&u, &grid).unwrap().rows.iter().all(|r| !r.pole && r.value > 0.0));
}
