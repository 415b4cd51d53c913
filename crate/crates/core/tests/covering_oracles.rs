use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rips_morse::covering::lp::{lp_solve, LinearProgram, LpOutcome, Relation};
use rips_morse::covering::{
    chebyshev_center_l1, helly_crosscheck, hull_chebyshev_center_l1, min_enclosing_lattice_ball, r_t, verify_covering_hypothesis,
};
use rips_morse::metric::ball_points;
use rips_morse::rational::{int, ratio};
use rips_morse::{Lattice, LatticePoint, MetricSpace, Rational, VertexSet, Window};

/// Solves a square system exactly; `None` when singular.
fn solve(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        b.swap(col, piv);
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = &a[r][col] / &a[col][col];
                for c in col..n {
                    let v = &f * &a[col][c];
                    a[r][c] -= v;
                }
                let v = &f * &b[col];
                b[r] -= v;
            }
        }
    }
    Some((0..n).map(|i| &b[i] / &a[i][i]).collect())
}

/// Minimum over all basic feasible points of a program over `x >= 0`.
fn vertex_enumeration(lp: &LinearProgram) -> Option<Rational> {
    let n = lp.variables();
    let mut rows: Vec<(Vec<Rational>, Rational)> = lp
        .constraints
        .iter()
        .map(|c| (c.coefficients.clone(), c.rhs.clone()))
        .collect();
    for i in 0..n {
        let mut e = vec![int(0); n];
        e[i] = int(1);
        rows.push((e, int(0)));
    }
    let mut best: Option<Rational> = None;
    let m = rows.len();
    for mask in 0u32..1 << m {
        if mask.count_ones() as usize != n {
            continue;
        }
        let chosen: Vec<&(Vec<Rational>, Rational)> = (0..m).filter(|i| mask >> i & 1 == 1).map(|i| &rows[i]).collect();
        let a = chosen.iter().map(|r| r.0.clone()).collect();
        let b = chosen.iter().map(|r| r.1.clone()).collect();
        if let Some(x) = solve(a, b) {
            if lp.is_feasible(&x) {
                let v = lp.objective_value(&x);
                if best.as_ref().is_none_or(|b| v < *b) {
                    best = Some(v);
                }
            }
        }
    }
    best
}

#[test]
fn beale_cycling_example() {
    // cycles under the textbook largest-coefficient rule
    let lp = LinearProgram::minimize(vec![ratio(-3, 4), int(20), ratio(-1, 2), int(6)])
        .constrain(vec![ratio(1, 4), int(-8), int(-1), int(9)], Relation::Le, int(0))
        .constrain(vec![ratio(1, 2), int(-12), ratio(-1, 2), int(3)], Relation::Le, int(0))
        .constrain(vec![int(0), int(0), int(1), int(0)], Relation::Le, int(1));
    let LpOutcome::Optimal { x, value } = lp_solve(&lp).unwrap() else {
        panic!("Beale's program has an optimum");
    };
    assert!(lp.is_feasible(&x));
    assert_eq!(Some(value.clone()), vertex_enumeration(&lp));
    assert_eq!(value, ratio(-5, 4));
    // deterministic
    assert_eq!(lp_solve(&lp).unwrap(), lp_solve(&lp).unwrap());
}

fn small_lps() -> impl Strategy<Value = LinearProgram> {
    (
        2usize..4,
        prop::collection::vec(-4i64..5, 4),
        prop::collection::vec((prop::collection::vec(-3i64..4, 3), 0usize..3, -6i64..10), 0..4),
    )
        .prop_map(|(n, obj, extra)| {
            let mut lp = LinearProgram::minimize(obj[..n].iter().map(|&c| int(c)).collect());
            for i in 0..n {
                let mut row = vec![int(0); n];
                row[i] = int(1);
                lp = lp.constrain(row, Relation::Le, int(4));
            }
            for (coeffs, rel, rhs) in extra {
                let rel = [Relation::Le, Relation::Ge, Relation::Eq][rel];
                lp = lp.constrain(coeffs[..n].iter().map(|&c| int(c)).collect(), rel, int(rhs));
            }
            lp
        })
}

fn lattice_set(n: usize, pts: Vec<Vec<i64>>) -> VertexSet<LatticePoint> {
    let lattice = Lattice::new(n).unwrap();
    VertexSet::new(&lattice, pts.into_iter().map(LatticePoint).collect()).unwrap()
}

/// `min over the grid (1/den)·Z^n ∩ bbox(S)` of the max ℓ¹ distance to `S`.
fn grid_radius(s: &VertexSet<LatticePoint>, den: i64) -> Rational {
    let pts: Vec<Vec<i64>> = s.points().iter().map(|p| p.0.iter().map(|c| c * den).collect()).collect();
    let bbox = Window::bounding_box(&pts.iter().cloned().map(LatticePoint).collect::<Vec<_>>()).unwrap();
    let best = bbox
        .points()
        .map(|g| {
            pts.iter()
                .map(|p| p.iter().zip(&g.0).map(|(a, b)| (a - b).unsigned_abs()).sum::<u64>())
                .max()
                .unwrap()
        })
        .min()
        .unwrap();
    ratio(best as i64, den)
}

#[test]
fn chebyshev_needs_a_half_integer_grid() {
    let s = lattice_set(2, vec![vec![0, 0], vec![1, 0]]);
    let ball = chebyshev_center_l1(&s).unwrap();
    assert_eq!(ball.radius, ratio(1, 2));
    assert_eq!(grid_radius(&s, 2), ratio(1, 2));
    // the thirds grid misses every optimal center
    assert_eq!(grid_radius(&s, 3), ratio(2, 3));
}

fn point_sets(n: usize, max: usize) -> impl Strategy<Value = VertexSet<LatticePoint>> {
    prop::collection::vec(prop::collection::vec(-3i64..4, n), 1..=max).prop_map(move |pts| lattice_set(n, pts))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn simplex_matches_vertex_enumeration(lp in small_lps()) {
        let oracle = vertex_enumeration(&lp);
        match lp_solve(&lp).unwrap() {
            LpOutcome::Optimal { x, value } => {
                prop_assert!(lp.is_feasible(&x));
                prop_assert_eq!(Some(value), oracle);
            }
            LpOutcome::Infeasible => prop_assert!(oracle.is_none()),
            LpOutcome::Unbounded => prop_assert!(false, "boxed programs are bounded"),
        }
    }

    #[test]
    fn chebyshev_matches_fine_grid(s in (1usize..3).prop_flat_map(|n| point_sets(n, 5))) {
        let n = s.points()[0].dim() as i64;
        let ball = chebyshev_center_l1(&s).unwrap();
        prop_assert!(ball.is_valid());
        prop_assert_eq!(ball.radius, grid_radius(&s, 2 * (n + 1)));
    }

    #[test]
    fn lattice_ball_within_rounding_of_chebyshev(s in (1usize..4).prop_flat_map(|n| point_sets(n, 6))) {
        let n = s.points()[0].dim() as i64;
        let rho = chebyshev_center_l1(&s).unwrap().radius;
        let lattice = min_enclosing_lattice_ball(&s);
        prop_assert!(lattice.is_valid());
        prop_assert!(lattice.lattice_center().is_some());
        prop_assert!(lattice.radius >= rho);
        prop_assert!(lattice.radius <= &rho + ratio(n, 2));
    }

    #[test]
    fn ball_points_are_monotone(c in prop::collection::vec(-2i64..3, 2), r1 in 0i64..8, extra in 0i64..4, grow in 0i64..3) {
        let center = LatticePoint(c);
        let small_w = Window::cube(2, -3, 3).unwrap();
        let big_w = small_w.inflated(grow);
        let a = ball_points(&center, &ratio(r1, 2), &small_w).unwrap();
        let b = ball_points(&center, &ratio(r1 + extra, 2), &small_w).unwrap();
        let c2 = ball_points(&center, &ratio(r1, 2), &big_w).unwrap();
        prop_assert!(a.iter().all(|p| b.contains(p)));
        prop_assert!(a.iter().all(|p| c2.contains(p)));
    }

    #[test]
    fn n_bound_holds(s in (1usize..4).prop_flat_map(|n| point_sets(n, 12))) {
        let lattice = Lattice::new(s.points()[0].dim()).unwrap();
        prop_assert!(s.len() as u64 <= lattice.n_bound(s.diam()).unwrap());
    }
}

fn wide_sets(n: usize, lo: i64, hi: i64, max: usize) -> impl Strategy<Value = VertexSet<LatticePoint>> {
    prop::collection::vec(prop::collection::vec(lo..=hi, n), 2..=max).prop_map(move |pts| lattice_set(n, pts))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn covering_hypothesis_on_random_sets(s in wide_sets(2, 0, 6, 8)) {
        let lattice = Lattice::new(2).unwrap();
        prop_assume!(s.diam() >= 6);
        let report = verify_covering_hypothesis(&s, &lattice).unwrap();
        prop_assert!(report.passed(), "{:?}", report.violations);
        prop_assert!(min_enclosing_lattice_ball(&s).radius <= r_t(2, s.diam()).unwrap());
        if s.len() > 3 {
            let helly = helly_crosscheck(&s, &lattice).unwrap();
            prop_assert!(helly.hypothesis_ok && helly.conclusion_ok);
        }
    }

    #[test]
    fn covering_hypothesis_in_one_dimension(s in wide_sets(1, -5, 5, 6)) {
        let lattice = Lattice::new(1).unwrap();
        prop_assume!(s.diam() >= 2);
        let report = verify_covering_hypothesis(&s, &lattice).unwrap();
        prop_assert!(report.passed() && report.proximity_ok);
        if s.len() > 2 {
            let helly = helly_crosscheck(&s, &lattice).unwrap();
            prop_assert!(helly.conclusion_ok);
            prop_assert_eq!(helly.full_radius * int(2), int(s.diam() as i64));
        }
    }
}

#[test]
fn covering_hypothesis_in_three_dimensions() {
    let lattice = Lattice::new(3).unwrap();
    let s = lattice_set(3, vec![vec![0, 0, 0], vec![12, 0, 0], vec![6, 6, 0], vec![6, 0, 6], vec![6, -6, 0]]);
    assert_eq!(s.diam(), 12);
    let report = verify_covering_hypothesis(&s, &lattice).unwrap();
    assert!(report.passed(), "{:?}", report.violations);
    assert!(!report.r_t.is_negative());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn hull_center_is_a_valid_constrained_optimum(s in (1usize..3).prop_flat_map(|n| point_sets(n, 6))) {
        let free = chebyshev_center_l1(&s).unwrap();
        let hull = hull_chebyshev_center_l1(&s).unwrap();
        prop_assert!(hull.is_valid());
        prop_assert!(hull.radius >= free.radius);
        let bbox = Window::bounding_box(s.points()).unwrap();
        for (i, c) in hull.center.iter().enumerate() {
            prop_assert!(*c >= int(bbox.lo().0[i]) && *c <= int(bbox.hi().0[i]));
        }
        // any ball around S covers the hull, so lattice centers of S-balls see the hull center
        let lattice_ball = min_enclosing_lattice_ball(&s);
        let y = lattice_ball.lattice_center().unwrap();
        prop_assert!(rips_morse::covering::rational_l1(&hull.center, &y) <= lattice_ball.radius);
    }
}
