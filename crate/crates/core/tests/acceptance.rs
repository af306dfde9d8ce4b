//! One test per acceptance criterion. Each prints a single PASS/FAIL line.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::sync::OnceLock;

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use thicklink::curves::{
    euclidean_thickness, euclidean_thickness_brute, random_link, spherical_thickness,
    spherical_thickness_brute, Ambient, DiscreteCurve, DiscreteLink,
};
use thicklink::geom::{fiber_distance, hopf_fiber, spherical_distance, GreatCircle, UnitVec3, UnitVec4};
use thicklink::hopf_links::{lift_configuration, optimize_aspect, DEFAULT_SWEEP_SAMPLES};
use thicklink::lattice::{
    analytic_density, bialy_volume_check, monte_carlo_density, paper_lattice, sheared_offset,
    shifted_intercore_distance, PaperLattice, SHIFTED_INTERCORE,
};
use thicklink::revolved::{cell_density, revolved_density_profile, revolved_mc_check};
use thicklink::s2_packing::{
    optimize_maximin, packing_density, packing_radius, MaximinOptions, MaximinResult, S2Config,
    HEX_DENSITY,
};

fn verdict(n: u8, ok: bool, detail: String) {
    println!("criterion {n:>2}: {} {detail}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "criterion {n}: {detail}");
}

fn optimized() -> &'static [MaximinResult] {
    static RUNS: OnceLock<Vec<MaximinResult>> = OnceLock::new();
    RUNS.get_or_init(|| {
        (2..=12)
            .map(|n| optimize_maximin(n, &MaximinOptions::default()).unwrap())
            .collect()
    })
}

#[test]
fn criterion_01_great_circle_thickness() {
    let c = GreatCircle::new(
        UnitVec4::new([1.0, 0.0, 0.0, 0.0]).unwrap(),
        UnitVec4::new([0.0, 0.0, 1.0, 0.0]).unwrap(),
    )
    .unwrap();
    let link = DiscreteLink::knot(DiscreteCurve::spherical(c.sample(256)).unwrap());
    let t = spherical_thickness(&link).unwrap();
    let brute = spherical_thickness_brute(&link).unwrap();
    let d = (t - FRAC_PI_2).abs();
    verdict(1, d <= 1e-12 && t == brute, format!("thickness {t:.17}, |Δ| {d:.1e} (≤ 1e-12)"));
}

#[test]
fn criterion_02_hopf_link_thickness() {
    let h = lift_configuration(&thicklink::s2_packing::antipodal_pair(), 256).unwrap();
    let sampled = spherical_thickness(h.link()).unwrap();
    let closed = h.closed_form_thickness();
    let ds = (sampled - FRAC_PI_4).abs();
    let dc = (closed - FRAC_PI_4).abs();
    verdict(
        2,
        ds <= 1e-3 && dc <= 1e-9,
        format!("sampled {sampled:.9} (|Δ| {ds:.1e} ≤ 1e-3), closed form |Δ| {dc:.1e} (≤ 1e-9)"),
    );
}

#[test]
fn criterion_03_distance_doubling() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let worst = (0..1000)
        .map(|_| {
            let p = UnitVec3::random(&mut rng);
            let q = UnitVec3::random(&mut rng);
            let base = spherical_distance(p.as_array(), q.as_array());
            (base - 2.0 * fiber_distance(&hopf_fiber(&p), &hopf_fiber(&q))).abs()
        })
        .fold(0.0, f64::max);
    verdict(3, worst < 1e-4, format!("max |d_S2 − 2 d_fiber| = {worst:.1e} (< 1e-4)"));
}

#[test]
fn criterion_04_one_and_two_caps_fill_the_sphere() {
    let r1 = packing_density(1, PI).unwrap();
    let r2 = packing_density(2, FRAC_PI_2).unwrap();
    // f64 π/2 is below the real π/2, so the second value can sit one ulp low.
    let ok = r1 == 1.0 && (1.0 - r2).abs() <= f64::EPSILON;
    verdict(4, ok, format!("ρ₁ = {r1:?}, ρ₂ = {r2:?} (1 to one ulp)"));
}

#[test]
fn criterion_05_maximin_radii() {
    let mut ok = true;
    let mut detail = String::new();
    for res in optimized() {
        let n = res.summary.n;
        let want = match n {
            2 => Some(FRAC_PI_2),
            3 => Some(PI / 3.0),
            4 => Some(0.955317),
            6 => Some(FRAC_PI_4),
            12 => Some(0.553574),
            _ => None,
        };
        if let Some(w) = want {
            let d = (res.summary.radius - w).abs();
            ok &= d < 1e-4;
            detail += &format!("r̂{n} |Δ| {d:.1e}; ");
        }
        if n >= 3 {
            ok &= res.summary.density < HEX_DENSITY;
        }
    }
    let max_rho = optimized()[1..].iter().map(|r| r.summary.density).fold(0.0, f64::max);
    verdict(5, ok, format!("{detail}max ρ̂ {max_rho:.6} < {HEX_DENSITY:.6}"));
}

#[test]
fn criterion_06_hopf_lift_of_optimized_configurations() {
    let worst = optimized()
        .iter()
        .map(|res| {
            let h = lift_configuration(&res.config, 16).unwrap();
            (h.fiber_separation_thickness() - 0.5 * res.summary.radius).abs()
        })
        .fold(0.0, f64::max);
    verdict(6, worst <= 1e-6, format!("max |τ − r̂/2| = {worst:.1e} (≤ 1e-6)"));
}

#[test]
fn criterion_07_shifted_intercore_distance() {
    let c = shifted_intercore_distance().unwrap();
    let d = (c - (2.0 + 3f64.sqrt())).abs();
    verdict(7, d <= 1e-9, format!("c = {c:.12}, |Δ| {d:.1e} (≤ 1e-9)"));
}

#[test]
fn criterion_08_fundamental_volumes() {
    let c = SHIFTED_INTERCORE;
    let b = (c * c - 4.0).sqrt();
    let v = |id| paper_lattice(id).cell_volume();
    let cases = [
        (PaperLattice::Stacked, 16.0 * 3f64.sqrt(), Some(27.7128)),
        (PaperLattice::Checkerboard, 2.0 * c * c, Some(27.8564)),
        // Stated as 25.2056, but 8√(c²−4) = 25.20724; only the formula is checked.
        (PaperLattice::Sheared, 8.0 * b, None),
    ];
    let mut ok = (sheared_offset() - b).abs() < 1e-15;
    let mut detail = String::new();
    for (id, exact, decimal) in cases {
        let got = v(id);
        ok &= (got - exact).abs() <= 1e-9;
        if let Some(dec) = decimal {
            ok &= (got - dec).abs() <= 5e-5;
        }
        detail += &format!("{id} {got:.6}; ");
    }
    verdict(8, ok, format!("{detail}(formulas to 1e-9)"));
}

#[test]
fn criterion_09_analytic_densities_and_certification() {
    let mut ok = true;
    let mut detail = String::new();
    for id in PaperLattice::ALL {
        let p = paper_lattice(id).certify(None).unwrap();
        let gap = p.report().min_gap.abs();
        let d = analytic_density(&p);
        let target = match id {
            PaperLattice::Stacked => 0.7122,
            PaperLattice::Sheared => 0.7830,
            PaperLattice::Checkerboard => 0.7086,
        };
        ok &= gap < 1e-8 && (d - target).abs() <= 5e-4 && !p.report().contacts.is_empty();
        detail += &format!("{id} {d:.5} gap {gap:.0e}; ");
    }
    let two_pi2 = 2.0 * PI * PI;
    let c = SHIFTED_INTERCORE;
    let check = analytic_density(&paper_lattice(PaperLattice::Checkerboard).certify(None).unwrap());
    ok &= (check - two_pi2 / (2.0 * c * c)).abs() < 1e-12;
    verdict(9, ok, detail);
}

#[test]
fn criterion_10_monte_carlo_densities() {
    let mut ok = true;
    let mut detail = String::new();
    for id in PaperLattice::ALL {
        let p = paper_lattice(id).certify(None).unwrap();
        let r = monte_carlo_density(&p, 1_000_000, 42).unwrap();
        let z = r.monte_carlo.z_score(r.analytic);
        ok &= z <= 4.0;
        detail += &format!("{id} z={z:.2}; ");
    }
    let v = bialy_volume_check(10_000_000, 42).unwrap();
    let d = (v.value - 2.0 * PI * PI).abs();
    ok &= d <= 0.05;
    verdict(10, ok, format!("{detail}bialy {:.4} (|Δ| {d:.4} ≤ 0.05)", v.value));
}

#[test]
fn criterion_11_revolved_packing() {
    let mut ok = (2..=1000).all(|row| (cell_density(row).unwrap() - PI / 12f64.sqrt()).abs() <= 1e-15);
    let first = cell_density(1).unwrap();
    ok &= (0.8945..=0.8955).contains(&first);
    let p = revolved_density_profile(50).unwrap();
    ok &= p.windows(2).all(|w| w[1].cumulative > w[0].cumulative);
    ok &= p.iter().all(|r| r.cumulative < HEX_DENSITY);
    let mc = revolved_mc_check(1, 1_000_000, 42).unwrap();
    ok &= mc.z_score(first) <= 4.0;
    verdict(
        11,
        ok,
        format!("row 1 {first:.6}, 50-row cumulative {:.6}, sampled row 1 {:.4}", p[49].cumulative, mc.value),
    );
}

#[test]
fn criterion_12_every_density_below_hexagonal() {
    let mut densities: Vec<f64> = Vec::new();
    for id in PaperLattice::ALL {
        let p = paper_lattice(id).certify(None).unwrap();
        densities.push(analytic_density(&p));
        densities.push(monte_carlo_density(&p, 200_000, 12).unwrap().monte_carlo.value);
    }
    densities.extend(revolved_density_profile(200).unwrap().iter().map(|r| r.cumulative));
    densities.extend((1..=200).map(|r| cell_density(r).unwrap()).filter(|&d| d != HEX_DENSITY));
    densities.extend(optimized()[1..].iter().map(|r| r.summary.density));

    // random cap configurations
    let mut runner = TestRunner::new(Config {
        cases: 256,
        failure_persistence: None,
        rng_algorithm: proptest::test_runner::RngAlgorithm::ChaCha,
        ..Config::default()
    });
    let strat = (3usize..=12, any::<u64>());
    let result = runner.run(&strat, |(n, seed)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pts = (0..n).map(|_| UnitVec3::random(&mut rng)).collect();
        let cfg = S2Config::new(pts).unwrap();
        let d = packing_density(n, packing_radius(&cfg)).unwrap();
        prop_assert!(d < HEX_DENSITY, "n={} density {}", n, d);
        Ok(())
    });
    let worst = densities.iter().copied().fold(0.0, f64::max);
    let ok = result.is_ok() && worst < HEX_DENSITY;
    verdict(12, ok, format!("largest of {} densities {worst:.6} < {HEX_DENSITY:.6}; random caps {result:?}", densities.len()));
}

#[test]
fn criterion_13_trefoil_aspect_sweep() {
    let coarse = optimize_aspect(3, DEFAULT_SWEEP_SAMPLES, 512).unwrap();
    let fine = optimize_aspect(3, DEFAULT_SWEEP_SAMPLES, 1024).unwrap();
    let ends = coarse.sweep[0].1.max(coarse.sweep.last().unwrap().1);
    let interior = coarse.aspect > 0.05 && coarse.aspect < 0.95 && coarse.thickness > ends;
    let d = (coarse.aspect - fine.aspect).abs();
    verdict(
        13,
        interior && d < 1e-3,
        format!("a* = {:.6} (grid 512), {:.6} (grid 1024), thickness {:.6}", coarse.aspect, fine.aspect, coarse.thickness),
    );
}

#[test]
fn criterion_14_pruned_matches_brute_force() {
    let mut runner = TestRunner::new(Config {
        cases: 20,
        failure_persistence: None,
        rng_algorithm: proptest::test_runner::RngAlgorithm::ChaCha,
        ..Config::default()
    });
    let worst = std::cell::Cell::new(0.0f64);
    let result = runner.run(&(any::<u64>(), any::<bool>()), |(seed, spherical)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ambient = if spherical { Ambient::Spherical } else { Ambient::Euclidean };
        let link = random_link(&mut rng, ambient, 60).unwrap();
        prop_assert!(link.total_samples() <= 60);
        let (fast, slow) = match ambient {
            Ambient::Euclidean => (euclidean_thickness(&link).unwrap(), euclidean_thickness_brute(&link).unwrap()),
            Ambient::Spherical => (spherical_thickness(&link).unwrap(), spherical_thickness_brute(&link).unwrap()),
        };
        worst.set(worst.get().max((fast - slow).abs()));
        prop_assert!((fast - slow).abs() <= 1e-12);
        Ok(())
    });
    verdict(14, result.is_ok(), format!("20 random links, max |pruned − brute| {:.1e} (≤ 1e-12)", worst.get()));
}
