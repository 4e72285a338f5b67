//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Deserialize;

use wildrep::counting::{self, ReducedCurve};
use wildrep::cyclo12::{self, Cyclo12};
use wildrep::galrep::{self, InertiaImage};
use wildrep::gf3n::FieldDescriptor;
use wildrep::grouprep::{self, GroupElement, Parity, Rep2x2};
use wildrep::serde_rat::parse_rat;
use wildrep::weierstrass::{invariants, tate_algorithm, Kodaira, Rat, Reduction, WeierstrassModel};

type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn int(n: i64) -> Cyclo12 {
    Cyclo12::from_int(n)
}

fn ac1_running_example() -> Check {
    let m = WeierstrassModel::from_ints([0, 0, 0, 0, 9], 1).unwrap();
    let r = galrep::build_representation(&m, false).map_err(|e| e.to_string())?;
    ensure!(r.local_data.v_delta_min == 7, "v(Delta_min) = {}", r.local_data.v_delta_min);
    ensure!(r.j_invariant == Rat::from_integer(0.into()), "j = {}", r.j_invariant);
    ensure!(r.local_data.kodaira == Kodaira::IV, "Kodaira {}", r.local_data.kodaira);
    ensure!(r.inertia == InertiaImage::C3xC4, "inertia {:?}", r.inertia);
    ensure!(r.galois_group_name.as_deref() == Some("C3:D4"), "group {:?}", r.galois_group_name);
    ensure!(r.chi_frob == Some(cyclo12::i_sqrt3()), "chi(Frob) = {:?}", r.chi_frob);
    let six_a = r.psi_table.as_ref().and_then(|t| t.value("6A")).cloned();
    ensure!(six_a == Some(-cyclo12::i_sqrt3()), "psi(6A) = {six_a:?}");
    // trace of rho(sigma) rho(Frob), from the emitted matrices
    let gens = r.rho_generators.as_ref().ok_or("no generators")?;
    let tr = gens.sigma.mul(r.rho_frob.as_ref().ok_or("no Frobenius")?).trace();
    ensure!(tr == int(3), "tr rho(sigma Frob) = {tr}");
    ensure!(r.sigma_frob_trace == Some(int(3)), "reported trace {:?}", r.sigma_frob_trace);
    Ok(())
}

fn ac2_fixed_point_count() -> Check {
    for (n, expected) in [(1u32, 0u64), (3, 36), (5, 216)] {
        let formula = 3i64.pow(n) + (-3i64).pow(n.div_ceil(2));
        ensure!(formula == expected as i64, "formula at n = {n} gives {formula}");
        let count = counting::count_sys_solutions(n).map_err(|e| e.to_string())?;
        ensure!(count == expected, "count_sys_solutions({n}) = {count}, expected {expected}");
    }
    // n = 1 by raw enumeration of (x, y) in F_27 x F_3
    let k = FieldDescriptor::new(3).map_err(|e| e.to_string())?;
    let one = k.one();
    let mut raw = 0;
    for x in k.elements() {
        for y in (0..3).map(|c| k.constant(c)) {
            let eq1 = x == &x.pow(3) + &one;
            let eq2 = y == y.pow(3);
            let eq3 = &y * &y == &x.pow(3) - &x;
            if eq1 && eq2 && eq3 {
                raw += 1;
            }
        }
    }
    ensure!(raw == 0, "raw enumeration over F_27 x F_3 found {raw} solutions");
    Ok(())
}

fn ac3_key_example() -> Check {
    let curve = ReducedCurve::x3_minus_x();
    let count = counting::count_points(&curve, 1).map_err(|e| e.to_string())?;
    ensure!(count == 4, "#E(F_3) = {count}");
    let mut affine: Vec<(i64, i64)> = Vec::new();
    for x in 0..3i64 {
        for y in 0..3i64 {
            if (y * y - (x * x * x - x)).rem_euclid(3) == 0 {
                affine.push((x, y));
            }
        }
    }
    ensure!(affine == [(0, 0), (1, 0), (2, 0)], "affine points over F_3: {affine:?}");

    for n in 1..=6u32 {
        let k = FieldDescriptor::new(n as usize).map_err(|e| e.to_string())?;
        let elems: Vec<_> = k.elements().collect();
        let mut brute = 1u64;
        for x in &elems {
            let rhs = &x.pow(3) - x;
            brute += elems.iter().filter(|y| &(*y * *y) == &rhs).count() as u64;
        }
        let enumerated = counting::count_points(&curve, n).map_err(|e| e.to_string())?;
        let trace = counting::frobenius_trace(&curve, n).map_err(|e| e.to_string())?;
        ensure!(brute == enumerated, "n = {n}: brute force {brute}, count_points {enumerated}");
        ensure!(trace.point_count == brute as i128, "n = {n}: recurrence {} vs {brute}", trace.point_count);
        let half = 3i128.pow(n / 2);
        let expected = match n % 4 {
            0 => 2 * half,
            2 => -2 * half,
            _ => 0,
        };
        ensure!(trace.a_n == expected, "n = {n}: a_n = {}, table gives {expected}", trace.a_n);
        // eigenvalues (+-i sqrt 3)^n
        let eig = &cyclo12::i_sqrt3().pow(n) + &(-cyclo12::i_sqrt3()).pow(n);
        ensure!(eig == int(trace.a_n as i64), "n = {n}: eigenvalue sum {eig}");
    }
    Ok(())
}

fn ac4_characters() -> Check {
    let id = Rep2x2::identity();
    for p in [Parity::Even, Parity::Odd] {
        let m = |g: GroupElement| grouprep::psi_matrix(&g);
        let (s, t) = (m(GroupElement::sigma(p)), m(GroupElement::tau(p)));
        let t_inv = t.inverse().ok_or("tau not invertible")?;
        let s_inv = s.inverse().ok_or("sigma not invertible")?;
        ensure!(s.mul(&s).mul(&s) == id, "{p:?}: sigma^3 != 1");
        ensure!(t.mul(&t).mul(&t).mul(&t) == id, "{p:?}: tau^4 != 1");
        ensure!(t.mul(&s).mul(&t_inv) == s_inv, "{p:?}: tau sigma tau^-1 != sigma^-1");
        if p == Parity::Odd {
            let f = m(GroupElement::phi());
            ensure!(f.mul(&f) == id, "phi^2 != 1");
            ensure!(s.mul(&f) == f.mul(&s), "sigma phi != phi sigma");
            ensure!(f.mul(&t).mul(&f) == t_inv, "phi tau phi != tau^-1");
        }
    }

    let isq = cyclo12::i_sqrt3();
    let even: Vec<(&str, usize, Cyclo12)> =
        vec![("1", 1, int(2)), ("2", 1, int(-2)), ("3", 2, int(-1)), ("4A", 3, int(0)), ("4B", 3, int(0)), ("6", 2, int(1))];
    let odd: Vec<(&str, usize, Cyclo12)> = vec![
        ("1", 1, int(2)),
        ("2A", 1, int(-2)),
        ("2B", 2, int(0)),
        ("2C", 6, int(0)),
        ("3", 2, int(-1)),
        ("4", 6, int(0)),
        ("6A", 2, -isq.clone()),
        ("6B", 2, isq.clone()),
        ("6C", 2, int(1)),
    ];
    let odd_etale: Vec<(&str, usize, Cyclo12)> = odd
        .iter()
        .map(|(c, s, v)| match *c {
            "6A" => (*c, *s, isq.clone()),
            "6B" => (*c, *s, -isq.clone()),
            _ => (*c, *s, v.clone()),
        })
        .collect();

    for (p, table, etale) in [(Parity::Even, &even, &even), (Parity::Odd, &odd, &odd_etale)] {
        let psi = grouprep::psi_table(p);
        let dual = grouprep::etale_dual(p);
        ensure!(psi.entries.len() == table.len(), "{p:?}: {} classes", psi.entries.len());
        for ((entry, dual_entry), ((label, size, value), (_, _, et))) in
            psi.entries.iter().zip(&dual.entries).zip(table.iter().zip(etale.iter()))
        {
            ensure!(entry.class == *label && entry.size == *size, "{p:?}: class {} size {}", entry.class, entry.size);
            ensure!(&entry.value == value, "{p:?}: psi({label}) = {}", entry.value);
            ensure!(&dual_entry.value == et, "{p:?}: psi_et({label}) = {}", dual_entry.value);
        }
        let mut norm = int(0);
        for g in grouprep::elements(p) {
            let tr = grouprep::psi_matrix(&g).trace();
            let class = grouprep::conjugacy_class(&g);
            let expected = psi.value(class.label).ok_or("missing class")?;
            ensure!(&tr == expected, "{p:?}: trace of {g} is {tr}, class {} has {expected}", class.label);
            norm = &norm + &(&tr * &tr.conj());
        }
        ensure!(norm == int(p.group_order() as i64), "{p:?}: sum |psi|^2 = {norm}");
    }
    Ok(())
}

fn ac5_determinants() -> Check {
    for n in 1..=6u32 {
        let d = galrep::rho_frob(n).det();
        ensure!(d == int(3i64.pow(n)), "n = {n}: det rho(Frob) = {d}");
    }
    for p in [Parity::Even, Parity::Odd] {
        for g in [GroupElement::sigma(p), GroupElement::tau(p)] {
            let d = grouprep::psi_matrix(&g).det();
            ensure!(d == int(1), "{p:?}: det psi({g}) = {d}");
        }
    }
    Ok(())
}

/// Random integral models with additive, potentially good reduction.
fn additive_corpus(target: usize) -> Vec<WeierstrassModel> {
    let mut rng = StdRng::seed_from_u64(0x3a_d1c0);
    let mut out = Vec::new();
    while out.len() < target {
        let k: u32 = rng.gen_range(1..=4);
        let coeffs: [i64; 5] = std::array::from_fn(|i| {
            let weight = [1, 2, 3, 4, 6][i];
            let r: i64 = rng.gen_range(-40..=40);
            // divisibility by 3^min(k, weight) pushes the model towards additive reduction
            r * 3i64.pow(k.min(weight)) * if rng.gen_bool(0.2) { 3 } else { 1 }
        });
        let Ok(m) = WeierstrassModel::from_ints(coeffs, 1) else { continue };
        let Ok(ld) = tate_algorithm(&m) else { continue };
        if ld.reduction == Reduction::Additive && ld.potentially_good {
            out.push(m);
        }
    }
    out
}

fn ac6_classifier() -> Check {
    let corpus = additive_corpus(400);
    ensure!(corpus.len() >= 200, "corpus has {} models", corpus.len());
    let mut seen = std::collections::BTreeMap::new();
    for m in &corpus {
        ensure!(m.is_integral(), "{m} is not integral");
        let inv = invariants(m);
        ensure!(wildrep::weierstrass::potentially_good(&inv), "{m}: j not integral");
        let ld = tate_algorithm(m).map_err(|e| e.to_string())?;
        let fired = galrep::fired_cases(&ld);
        ensure!(fired == 1, "{m}: {fired} cases fire ({} v={})", ld.kodaira, ld.v_delta_min);
        let side = match ld.kodaira {
            Kodaira::I0Star => Some(6),
            Kodaira::III => Some(3),
            Kodaira::IIIStar => Some(9),
            _ => None,
        };
        if let Some(v) = side {
            ensure!(ld.v_delta_min == v, "{m}: type {} with v = {}", ld.kodaira, ld.v_delta_min);
        }
        let image = galrep::classify_inertia(&ld).map_err(|e| format!("{m}: {e}"))?;
        ensure!(12 % image.order() == 0, "{m}: inertia order {}", image.order());
        *seen.entry(image.name()).or_insert(0usize) += 1;
    }
    println!("      corpus: {} models, inertia images {seen:?}", corpus.len());
    Ok(())
}

fn ac7_epsilon() -> Check {
    ensure!(galrep::EPSILON == -1, "hard-coded epsilon is {}", galrep::EPSILON);
    for n in [1, 3, 5] {
        let c = galrep::verify_sigma_frob_trace(n).map_err(|e| e.to_string())?;
        ensure!(c.agree, "n = {n}: characters give {}, count gives {}", c.from_characters, c.from_count);
        let expected = -(-3i64).pow(n.div_ceil(2));
        ensure!(c.from_count == expected, "n = {n}: trace {} expected {expected}", c.from_count);
    }
    Ok(())
}

#[derive(Deserialize)]
struct Fixture {
    a_invariants: Vec<String>,
    kodaira: String,
    v_delta_min: u32,
}

fn ac8_tate_regression() -> Check {
    let fixtures: Vec<Fixture> = include_str!("fixtures/tate_regression.jsonl")
        .lines()
        .map(|l| serde_json::from_str(l).map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    ensure!(fixtures.len() >= 10, "only {} regression curves", fixtures.len());
    for required in [["0", "0", "0", "0", "9"], ["0", "0", "0", "0", "729"], ["0", "0", "0", "-1", "0"], ["0", "0", "0", "0", "3"]] {
        ensure!(fixtures.iter().any(|f| f.a_invariants == required), "fixture list lacks {required:?}");
    }
    for f in &fixtures {
        let coeffs: Vec<Rat> = f.a_invariants.iter().map(|s| parse_rat(s).ok_or(format!("bad rational {s}"))).collect::<Result<_, _>>()?;
        let m = WeierstrassModel::new(coeffs.try_into().unwrap(), 1).map_err(|e| e.to_string())?;
        let ld = tate_algorithm(&m).map_err(|e| e.to_string())?;
        let expected: Kodaira = f.kodaira.parse().map_err(|e: String| e)?;
        ensure!(
            ld.kodaira == expected && ld.v_delta_min == f.v_delta_min,
            "{:?}: got {} v={}, oracle {} v={}",
            f.a_invariants,
            ld.kodaira,
            ld.v_delta_min,
            expected,
            f.v_delta_min
        );
    }
    Ok(())
}

fn main() -> ExitCode {
    type Criterion = (&'static str, &'static str, fn() -> Check, Option<Duration>);
    let criteria: [Criterion; 8] = [
        ("AC1", "running example y^2 = x^3 + 9, n = 1", ac1_running_example, Some(Duration::from_secs(1))),
        ("AC2", "fixed-point count 3^n + (-3)^((n+1)/2)", ac2_fixed_point_count, Some(Duration::from_secs(60))),
        ("AC3", "point counts and traces of y^2 = x^3 - x", ac3_key_example, Some(Duration::from_secs(30))),
        ("AC4", "character tables and matrix relations", ac4_characters, Some(Duration::from_secs(1))),
        ("AC5", "determinants of rho(Frob), psi(sigma), psi(tau)", ac5_determinants, Some(Duration::from_secs(1))),
        ("AC6", "inertia classifier totality on additive corpus", ac6_classifier, Some(Duration::from_secs(60))),
        ("AC7", "sign epsilon from the sigma Frob count", ac7_epsilon, None),
        ("AC8", "Tate regression against PARI/GP", ac8_tate_regression, None),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failures = 0;
    for (id, name, check, limit) in criteria {
        let start = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let elapsed = start.elapsed();
        let result = match (result, limit) {
            (Ok(()), Some(l)) if elapsed > l => Err(format!("took {elapsed:.2?}, limit {l:.0?}")),
            (r, _) => r,
        };
        match result {
            Ok(()) => println!("{id} PASS {name} ({elapsed:.3?})"),
            Err(why) => {
                failures += 1;
                println!("{id} FAIL {name} ({elapsed:.3?}): {why}");
            }
        }
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
