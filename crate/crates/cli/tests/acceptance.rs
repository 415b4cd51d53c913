//! Acceptance suite: one line per criterion, each run at its stated scale,
//! tolerance and time budget.
//!
//! Two criteria cannot hold as stated (the arguments are in the README). They
//! are still executed in full and print `FAIL`, marked as expected. The run
//! exits nonzero on any other failure, and also if an expected failure
//! starts passing, so the list of known failures cannot go stale.

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use rips_morse::covering::{chebyshev_center_l1, helly_crosscheck, r_t};
use rips_morse::homology::Witness;
use rips_morse::morse::{analyze_descending_link, compare_nerve_and_direct, filtration_check, morse_h, FILTRATION_SPACE_CAP};
use rips_morse::rational::{int, ratio, to_fraction_string};
use rips_morse::{
    FiniteMetricSpace, Lattice, LatticePoint, LinkConfig, LinkMethod, Rational, VerdictStatus, VertexSet, Window,
};
use rips_morse_cli::canonical::enumerate_canonical_sets;
use rips_morse_cli::commands::{self, CampaignArgs, Mode, SetArgs};
use rips_morse_cli::input::SpaceSource;

type Verdict = Result<String, String>;

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Duration,
    /// Why the criterion cannot pass as stated, if it cannot.
    expected_failure: Option<&'static str>,
    run: fn() -> Verdict,
}

fn l1(p: &LatticePoint, q: &LatticePoint) -> u64 {
    p.0.iter().zip(&q.0).map(|(a, b)| a.abs_diff(*b)).sum()
}

fn lattice_set(pts: Vec<LatticePoint>) -> VertexSet<LatticePoint> {
    VertexSet::new(&Lattice::new(pts[0].dim()).unwrap(), pts).unwrap()
}

fn sets(n: usize, t: u64, max_size: usize, min_size: usize, mode: Mode, samples: usize) -> SetArgs {
    SetArgs {
        max_size,
        min_size,
        window: (n == 2).then(|| format!("0,0:{t},{t}")),
        mode,
        samples,
        seed: Some(20240601),
        coface_cap: 6,
    }
}

fn check(violations: usize, what: &str, ok: String) -> Verdict {
    if violations == 0 {
        Ok(ok)
    } else {
        Err(format!("{violations} {what}"))
    }
}

fn c1_radius_formula() -> Verdict {
    let mut cases = 0;
    let mut bad = Vec::new();
    for n in 1..=4usize {
        let base = (n * n + n) as u64;
        for t in base..=base + 10 {
            cases += 1;
            let expected = ratio(t as i64 * n as i64, n as i64 + 1) + ratio(n as i64, 2);
            let r = r_t(n, t).map_err(|e| e.to_string())?;
            if r != expected || r > int(t as i64) - ratio(n as i64, 2) {
                bad.push(format!("(n={n}, t={t}): {}", to_fraction_string(&r)));
            }
        }
    }
    check(bad.len(), &format!("mismatches: {bad:?}"), format!("{cases} (n,t) pairs exact"))
}

/// The covering campaign of criteria 2 and 3: exhaustive orbits plus random draws.
fn covering_items() -> Result<Vec<serde_json::Value>, String> {
    let mut items = Vec::new();
    let exhaustive = CampaignArgs { n: 2, t: 6, sets: sets(2, 6, 4, 1, Mode::Exhaustive, 0) };
    let random = CampaignArgs { n: 2, t: 6, sets: sets(2, 6, 10, 5, Mode::Random, 10_000) };
    for args in [exhaustive, random] {
        let out = commands::verify_covering(&args, false).map_err(|e| e.to_string())?;
        items.extend(out.report.items);
    }
    Ok(items)
}

fn c2_covering_bound() -> Verdict {
    let items = covering_items()?;
    let five = int(5);
    let over: Vec<_> = items
        .iter()
        .filter(|i| rips_morse::rational::parse_fraction(i["min_lattice_radius"].as_str().unwrap()).unwrap() > five)
        .collect();
    let exhaustive = items.iter().filter(|i| i["S"].as_array().unwrap().len() <= 4).count();
    check(
        over.len(),
        "sets need a lattice ball larger than r_6 = 5",
        format!(
            "{} sets ({exhaustive} orbits with |S| <= 4, 10^4 random with 5..=10 points), every minimal lattice radius <= 5",
            items.len()
        ),
    )
}

fn c3_center_proximity() -> Verdict {
    let items = covering_items()?;
    let lattice = Lattice::new(2).unwrap();
    let mut bad = 0;
    let mut max_y = 0;
    for item in &items {
        // recompute Y and the distance to y0 independently of the report
        let pts: Vec<LatticePoint> = serde_json::from_value(item["S"].clone()).unwrap();
        let y0: LatticePoint = serde_json::from_value(item["y0"].clone()).unwrap();
        let s = VertexSet::new(&lattice, pts).unwrap();
        let window = Window::bounding_box(s.points()).unwrap().inflated(5);
        let ys: Vec<LatticePoint> = window.points().filter(|y| s.points().iter().all(|p| l1(p, y) <= 5)).collect();
        max_y = max_y.max(ys.len());
        let y0_in_y = ys.contains(&y0);
        if !y0_in_y || ys.iter().any(|y| l1(y, &y0) > 6) || item["proximity_ok"] != true || ys.len() != item["Y_size"] {
            bad += 1;
        }
    }
    check(bad, "sets with a center farther than 6 from y0", format!("{} sets, y0 in Y and within 6 of all of Y (|Y| <= {max_y})", items.len()))
}

fn random_set(rng: &mut ChaCha8Rng, n: usize, max: usize) -> VertexSet<LatticePoint> {
    let size = rng.gen_range(1..=max);
    let pts = (0..size).map(|_| LatticePoint((0..n).map(|_| rng.gen_range(-4..=4)).collect())).collect();
    lattice_set(pts)
}

fn c4_morse_contract() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut bad = Vec::new();
    for _ in 0..10_000 {
        let n = rng.gen_range(1..=3);
        let s = random_set(&mut rng, n, 8);
        let lattice = Lattice::new(n).unwrap();
        let h = morse_h(&lattice, &s).map_err(|e| e.to_string())?.0;
        let d = int(s.diam() as i64);
        // independent formula with n_t = (t+1)^n
        let n_t = (s.diam() as i64 + 1).pow(n as u32);
        if h != &d - ratio(s.len() as i64 - 1, n_t) || !(h > &d - int(1) && h <= d) {
            bad.push(format!("{:?}", s.points()));
        }
    }
    let mut chain_bad = 0;
    for _ in 0..1_000 {
        let n = rng.gen_range(1..=3);
        let lattice = Lattice::new(n).unwrap();
        let mut pts: Vec<LatticePoint> = random_set(&mut rng, n, 8).points().to_vec();
        pts.shuffle(&mut rng);
        let chain: Vec<VertexSet<LatticePoint>> =
            (1..=pts.len()).map(|k| VertexSet::new(&lattice, pts[..k].to_vec()).unwrap()).collect();
        let hs: Vec<Rational> = chain.iter().map(|c| morse_h(&lattice, c).unwrap().0).collect();
        let distinct: BTreeSet<&Rational> = hs.iter().collect();
        let ordered = chain.windows(2).zip(hs.windows(2)).all(|(c, h)| {
            if c[0].diam() == c[1].diam() {
                h[1] < h[0]
            } else {
                h[0] < h[1]
            }
        });
        if distinct.len() != hs.len() || !ordered {
            chain_bad += 1;
        }
    }
    check(
        bad.len() + chain_bad,
        &format!("violations ({} sets, {chain_bad} chains)", bad.len()),
        "10^4 sets with h in (diam-1, diam]; 10^3 chains pairwise distinct and ordered".into(),
    )
}

fn c5_helly() -> Verdict {
    let args = SetArgs { window: Some("0,0:6,6".into()), ..sets(2, 6, 8, 4, Mode::Random, 1_000) };
    let family = commands::campaign_sets(2, 6, &args).map_err(|e| e.to_string())?;
    let lattice = Lattice::new(2).unwrap();
    let four = int(4);
    let results: Vec<Result<bool, String>> = family
        .par_iter()
        .map(|s| {
            let h = helly_crosscheck(s, &lattice).map_err(|e| e.to_string())?;
            Ok(h.hypothesis_ok && h.conclusion_ok && h.max_subset_radius <= four && h.full_radius <= four && h.bound == four)
        })
        .collect();
    let mut bad = 0;
    for r in results {
        if !r? {
            bad += 1;
        }
    }
    check(bad, "sets break the Helly radius 4", format!("{} sets, every triple and every full set has rho* <= 4", family.len()))
}

/// `min over (1/den)·Z^n ∩ bbox(S)` of the largest ℓ¹ distance to `S`.
fn grid_radius(s: &VertexSet<LatticePoint>, den: i64) -> Rational {
    let scaled: Vec<LatticePoint> =
        s.points().iter().map(|p| LatticePoint(p.0.iter().map(|c| c * den).collect())).collect();
    let bbox = Window::bounding_box(&scaled).unwrap();
    let best = bbox.points().map(|g| scaled.iter().map(|p| l1(p, &g)).max().unwrap()).min().unwrap();
    ratio(best as i64, den)
}

fn c6_lp_oracle() -> Verdict {
    let mut family = Vec::new();
    for n in 1..=2usize {
        for t in 1..=6u64 {
            let w = Window::cube(n, 0, t as i64).unwrap();
            family.extend(enumerate_canonical_sets(n, t, 5, &w).map_err(|e| e.to_string())?);
        }
    }
    let rows: Vec<(bool, bool, String)> = family
        .par_iter()
        .map(|s| {
            let n = s.points()[0].dim() as i64;
            let rho = chebyshev_center_l1(s).unwrap().radius;
            let coarse = grid_radius(s, n + 1);
            let fine = grid_radius(s, 2 * (n + 1));
            let note = format!("{:?}: rho* = {}, grid = {}", s.points(), to_fraction_string(&rho), to_fraction_string(&coarse));
            (rho == coarse, rho == fine, note)
        })
        .collect();
    let mismatches: Vec<&String> = rows.iter().filter(|r| !r.0).map(|r| &r.2).collect();
    let fine_ok = rows.iter().filter(|r| r.1).count();
    let summary = format!(
        "{} sets; denominator-(n+1) grid matches on {}; denominator-2(n+1) grid matches on {}",
        rows.len(),
        rows.len() - mismatches.len(),
        fine_ok
    );
    if mismatches.is_empty() {
        Ok(summary)
    } else {
        Err(format!("{summary}; first mismatch {}", mismatches[0]))
    }
}

fn t6_orbits() -> Vec<VertexSet<LatticePoint>> {
    enumerate_canonical_sets(2, 6, 4, &Window::cube(2, 0, 6).unwrap()).unwrap()
}

fn proper_subsets(s: &VertexSet<LatticePoint>) -> Vec<Vec<LatticePoint>> {
    let k = s.len();
    (1u32..(1 << k) - 1)
        .map(|mask| (0..k).filter(|i| mask >> i & 1 == 1).map(|i| s.points()[i].clone()).collect())
        .collect()
}

fn diam(pts: &[LatticePoint]) -> u64 {
    pts.iter().flat_map(|p| pts.iter().map(move |q| l1(p, q))).max().unwrap_or(0)
}

fn c7_link_certificates() -> Verdict {
    let lattice = Lattice::new(2).unwrap();
    let family = t6_orbits();
    let outcomes: Vec<Result<(LinkMethod, bool), String>> = family
        .par_iter()
        .map(|s| {
            let rep = analyze_descending_link(&lattice, s, None, &LinkConfig::default()).map_err(|e| e.to_string())?;
            let t = s.diam();
            let ok = match (&rep.method, &rep.face_link_verdict.witness, &rep.coface_link_verdict.witness) {
                (LinkMethod::ClosureOperator, Witness::ClosureOperator { apex }, _) => {
                    let y = &apex.points()[0];
                    let face: Vec<_> = proper_subsets(s).into_iter().filter(|f| diam(f) < t).collect();
                    let y_ok = s.contains(y) && s.points().iter().all(|p| l1(p, y) <= 5);
                    let closure_ok = face.iter().all(|f| {
                        let mut g = f.clone();
                        g.push(y.clone());
                        diam(&g) < t
                    });
                    y_ok && closure_ok && rep.closure_checked == Some(face.len())
                }
                (LinkMethod::Nerve, _, Witness::NerveCone { apex }) => {
                    let window = Window::bounding_box(s.points()).unwrap().inflated(5);
                    let ys: Vec<LatticePoint> = window
                        .points()
                        .filter(|y| !s.contains(y) && s.points().iter().all(|p| l1(p, y) <= 5))
                        .collect();
                    let y0: Vec<&LatticePoint> = apex.points().iter().filter(|p| !s.contains(p)).collect();
                    y0.len() == 1 && ys.contains(y0[0]) && ys.iter().all(|y| l1(y, y0[0]) <= t)
                }
                _ => false,
            };
            let ok = ok && rep.joined_verdict.status == VerdictStatus::ContractibleCertified && rep.violations.is_empty();
            Ok((rep.method, ok))
        })
        .collect();
    let mut bad = 0;
    let (mut closure, mut nerve) = (0, 0);
    for o in outcomes {
        let (method, ok) = o?;
        match method {
            LinkMethod::ClosureOperator => closure += 1,
            LinkMethod::Nerve => nerve += 1,
            LinkMethod::Direct => {}
        }
        if !ok {
            bad += 1;
        }
    }
    check(
        bad,
        "sets without an independently confirmed certificate",
        format!("{} orbits: {closure} closure-operator, {nerve} nerve-cone, all re-verified", family.len()),
    )
}

fn c8_nerve_vs_direct() -> Verdict {
    let lattice2 = Lattice::new(2).unwrap();
    let lattice1 = Lattice::new(1).unwrap();
    let mut compared = 0;
    let mut disagreements = Vec::new();
    for s in t6_orbits() {
        match compare_nerve_and_direct(&lattice2, &s, None, 6) {
            Ok(cmp) => {
                compared += 1;
                if !cmp.agrees() {
                    disagreements.push(format!("{:?}", s.points()));
                }
            }
            Err(rips_morse::morse::MorseError::CofaceCap { .. }) => {}
            Err(e) => return Err(e.to_string()),
        }
    }
    let from_t6 = compared;
    // no t = 6 orbit has <= 6 candidates (the lens between two points 6 apart
    // already holds more), so small Z^2 scales supply direct comparisons too
    let mut from_small_z2 = 0;
    for t in 1..=3u64 {
        for s in enumerate_canonical_sets(2, t, 4, &Window::cube(2, 0, t as i64).unwrap()).unwrap() {
            match compare_nerve_and_direct(&lattice2, &s, None, 6) {
                Ok(cmp) => {
                    from_small_z2 += 1;
                    if !cmp.agrees() {
                        disagreements.push(format!("{:?}", s.points()));
                    }
                }
                Err(rips_morse::morse::MorseError::CofaceCap { .. }) => {}
                Err(e) => return Err(e.to_string()),
            }
        }
    }
    compared += from_small_z2;
    for t in 1..=4u64 {
        for s in enumerate_canonical_sets(1, t, t as usize + 1, &Window::cube(1, 0, t as i64).unwrap()).unwrap() {
            let cmp = compare_nerve_and_direct(&lattice1, &s, None, 6).map_err(|e| e.to_string())?;
            compared += 1;
            if !cmp.agrees() {
                disagreements.push(format!("{:?}", s.points()));
            }
        }
    }
    check(
        disagreements.len(),
        &format!("disagreements: {disagreements:?}"),
        format!(
            "{compared} instances ({from_t6} from Z^2 at t=6 with <= 6 candidates, {} from Z^1 with t <= 4, {from_small_z2} extra from Z^2 with t <= 3)",
            compared - from_t6 - from_small_z2
        ),
    )
}

fn matrix_space(m: usize, cyclic: bool) -> FiniteMetricSpace {
    let csv: Vec<String> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let d = i.abs_diff(j);
                    (if cyclic { d.min(m - d) } else { d }).to_string()
                })
                .collect::<Vec<_>>()
                .join(",")
        })
        .collect();
    FiniteMetricSpace::from_csv_str(&csv.join("\n")).unwrap()
}

fn c9_filtration() -> Verdict {
    let mut pairs = 0;
    let mut fully_certified = 0;
    let mut bad = Vec::new();
    for (name, space) in [("6-cycle", matrix_space(6, true)), ("Z^1 ∩ [0,5]", matrix_space(6, false))] {
        let diameter = space.diameter();
        for t in 1..=diameter {
            for s in 0..t {
                let rep = filtration_check(&space, s, t, FILTRATION_SPACE_CAP, &LinkConfig::default()).map_err(|e| e.to_string())?;
                pairs += 1;
                if rep.all_certified {
                    fully_certified += 1;
                    if rep.betti_s != rep.betti_t && !rep.betti_s.same_homology(&rep.betti_t) {
                        bad.push(format!("{name} s={s} t={t}"));
                    }
                }
                if !rep.passed() {
                    bad.push(format!("{name} s={s} t={t}: {:?}", rep.violations));
                }
            }
        }
    }
    check(
        bad.len(),
        &format!("discrepancies: {bad:?}"),
        format!("{pairs} (s,t) pairs, {fully_certified} fully certified, Betti vectors agree on all of them"),
    )
}

fn c10_small_cases() -> Verdict {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let line = |m: usize| -> String {
        (0..m).map(|i| (0..m).map(|j| i.abs_diff(j).to_string()).collect::<Vec<_>>().join(",")).collect::<Vec<_>>().join("\n")
    };
    let z20 = dir.path().join("z1_0_20.csv");
    std::fs::write(&z20, line(21)).map_err(|e| e.to_string())?;
    let z20 = SpaceSource::Matrix(z20.to_string_lossy().into_owned());
    let cycle = SpaceSource::Cycle(6);
    let mut results = Vec::new();
    let mut failures = Vec::new();
    for (label, source, t, want) in [
        ("Z^1∩[0,20] t=1", &z20, 1, None),
        ("Z^1∩[0,20] t=2", &z20, 2, None),
        ("Z^1∩[0,20] t=3", &z20, 3, None),
        ("C6 t=2", &cycle, 2, None),
        ("C6 t=3", &cycle, 3, None),
        ("C6 t=1", &cycle, 1, Some(vec![0u64, 1])),
    ] {
        let out = commands::rips_betti(source, t, None).map_err(|e| e.to_string())?;
        let summary = &out.report.summary;
        let ok = match &want {
            None => summary["verdict"] == "ContractibleCertified",
            Some(b) => summary["reduced_betti"] == serde_json::json!(b),
        };
        let got = format!("{label}: {} betti {}", summary["verdict"].as_str().unwrap(), summary["reduced_betti"]);
        if !ok {
            failures.push(got.clone());
        }
        results.push(got);
    }
    if failures.is_empty() {
        Ok(format!("{} cases as expected", results.len()))
    } else {
        Err(format!("{} of {} cases differ: {}", failures.len(), results.len(), failures.join("; ")))
    }
}

fn c11_determinism() -> Verdict {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let campaigns: [&[&str]; 3] = [
        &["verify-covering", "--n", "2", "--t", "6", "--mode", "random", "--samples", "500", "--seed", "9", "--min-size", "5", "--max-size", "10", "--window", "0,0:6,6", "--helly"],
        &["verify-links", "--n", "2", "--t", "6", "--max-size", "4"],
        &["conjecture-scan", "--n", "2", "--t-range", "2..4", "--max-size", "3", "--mode", "random", "--samples", "50", "--seed", "3"],
    ];
    let mut files = 0;
    for (k, args) in campaigns.iter().enumerate() {
        let mut outputs = Vec::new();
        for run in 0..2 {
            let out = dir.path().join(format!("c{k}_{run}.report"));
            let status = Command::new(env!("CARGO_BIN_EXE_rips-morse"))
                .args(*args)
                .arg("--out")
                .arg(&out)
                .env("RIPS_MORSE_THREADS", if run == 0 { "1" } else { "4" })
                .status()
                .map_err(|e| e.to_string())?;
            if !status.success() {
                return Err(format!("{} exited with {status}", args[0]));
            }
            outputs.push(std::fs::read(&out).map_err(|e| e.to_string())?);
            files += 1;
        }
        if outputs[0] != outputs[1] {
            return Err(format!("{} reports differ between runs", args[0]));
        }
    }
    Ok(format!("{files} report files, pairs byte-identical (1 vs 4 threads)"))
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { id: 1, name: "r_t formula and gap", budget: Duration::from_secs(1), expected_failure: None, run: c1_radius_formula },
        Criterion { id: 2, name: "covering bound", budget: Duration::from_secs(300), expected_failure: None, run: c2_covering_bound },
        Criterion { id: 3, name: "center proximity", budget: Duration::from_secs(300), expected_failure: None, run: c3_center_proximity },
        Criterion { id: 4, name: "Morse function contract", budget: Duration::from_secs(30), expected_failure: None, run: c4_morse_contract },
        Criterion { id: 5, name: "Helly cross-check", budget: Duration::from_secs(600), expected_failure: None, run: c5_helly },
        Criterion {
            id: 6,
            name: "LP vs denominator-(n+1) grid",
            budget: Duration::from_secs(300),
            expected_failure: Some("optimal l1 centers can need denominator 2, e.g. {(0,0),(1,0)} has rho* = 1/2 but the thirds grid only reaches 2/3"),
            run: c6_lp_oracle,
        },
        Criterion { id: 7, name: "descending-link certificates", budget: Duration::from_secs(600), expected_failure: None, run: c7_link_certificates },
        Criterion { id: 8, name: "nerve vs direct coface link", budget: Duration::from_secs(600), expected_failure: None, run: c8_nerve_vs_direct },
        Criterion { id: 9, name: "filtration consistency", budget: Duration::from_secs(120), expected_failure: None, run: c9_filtration },
        Criterion {
            id: 10,
            name: "known small cases",
            budget: Duration::from_secs(60),
            expected_failure: Some("Rips_2 of the 6-cycle is the octahedron boundary, a 2-sphere with reduced b2 = 1"),
            run: c10_small_cases,
        },
        Criterion { id: 11, name: "determinism", budget: Duration::from_secs(600), expected_failure: None, run: c11_determinism },
    ];

    let mut unexpected = 0;
    for c in &criteria {
        let start = Instant::now();
        let verdict = (c.run)();
        let elapsed = start.elapsed();
        let verdict = match verdict {
            Ok(detail) if elapsed > c.budget => Err(format!("over budget {:?}: {detail}", c.budget)),
            v => v,
        };
        let secs = elapsed.as_secs_f64();
        match (&verdict, c.expected_failure) {
            (Ok(detail), None) => println!("criterion {:>2} {}: PASS ({secs:.2}s) {detail}", c.id, c.name),
            (Err(detail), Some(why)) => {
                println!("criterion {:>2} {}: FAIL, expected ({secs:.2}s) {detail} [{why}]", c.id, c.name)
            }
            (Ok(detail), Some(_)) => {
                unexpected += 1;
                println!("criterion {:>2} {}: PASS, but a failure was expected ({secs:.2}s) {detail}", c.id, c.name);
            }
            (Err(detail), None) => {
                unexpected += 1;
                println!("criterion {:>2} {}: FAIL ({secs:.2}s) {detail}", c.id, c.name);
            }
        }
    }
    if unexpected == 0 {
        println!("acceptance: all criteria as expected");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {unexpected} unexpected outcome(s)");
        ExitCode::FAILURE
    }
}
