//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.

use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use torsion_genus::euler::{euler_crosscheck, euler_torsion};
use torsion_genus::genus::GenusTable;
use torsion_genus::series::{rat, Exponent, IntSeries, Rational, Truncation};
use torsion_genus::spin::{
    compare_generators, delta_compare, sweep_properties, verify_presentation, DeltaProvider,
    Permutation, DEFAULT_ORACLE_BOUND,
};
use torsion_genus::sym::{
    brute_supertrace_symwedge, direct_orbifold_series, product_formula_series,
    sector_average_numeric, superdimension, sym_generating, verify_dmvv, wedge_generating, Power,
    SuperVector,
};
use torsion_genus::theta::check_identities;

const DMVV_BUDGET: Duration = Duration::from_secs(60);
const THETA_BUDGET: Duration = Duration::from_secs(10);
const THETA_TOL: f64 = 1e-9;
const THETA_SAMPLES: usize = 100;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn dmvv_tables() -> Vec<(String, GenusTable)> {
    let mut tables = vec![("point".to_string(), GenusTable::point())];
    for seed in 1..=5 {
        tables.push((
            format!("random seed {seed}"),
            GenusTable::random(seed, 2, 2, 3, 2),
        ));
    }
    tables
}

fn dmvv_criterion(twisted: bool) -> Outcome {
    let start = Instant::now();
    let trunc = Truncation::int(5, 2);
    for (name, t) in dmvv_tables() {
        let r = verify_dmvv(&t, twisted, trunc).map_err(|e| e.to_string())?;
        if !r.matches() {
            return Err(format!(
                "{name}: {} differing terms, first {:?}",
                r.differences.len(),
                r.differences[0]
            ));
        }
    }
    let elapsed = start.elapsed();
    if elapsed > DMVV_BUDGET {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!("6 tables, P=5, Q=2, {elapsed:.2?}"))
}

fn flat_coefficients(s: &IntSeries, p_max: u32) -> Vec<BigInt> {
    let flat = s.specialize(true, true);
    (0..=p_max)
        .map(|n| flat.coefficient_at(&Exponent::int(n, 0, 0)))
        .collect()
}

fn point_values() -> Outcome {
    let t = GenusTable::point();
    let trunc = Truncation::int(4, 0);
    for (twisted, want) in [(true, [1, 1, 2, 3, 4]), (false, [1, 1, 2, 3, 5])] {
        let want: Vec<BigInt> = want.iter().map(|&x| BigInt::from(x)).collect();
        let direct = flat_coefficients(&direct_orbifold_series(&t, twisted, trunc).unwrap(), 4);
        let product = flat_coefficients(&product_formula_series(&t, twisted, trunc).unwrap(), 4);
        if direct != want || product != want {
            return Err(format!(
                "twisted={twisted}: direct {direct:?}, product {product:?}"
            ));
        }
    }
    Ok("twisted 1,1,2,3,4 and untwisted 1,1,2,3,5 on both paths".into())
}

fn presentation() -> Outcome {
    let mut relations = 0;
    for n in 2..=8 {
        let r = verify_presentation(n).map_err(|e| e.to_string())?;
        if let Some(f) = r.failures().next() {
            return Err(format!("n={n}: {} fails", f.relation));
        }
        relations += r.checks.len();
    }
    Ok(format!("{relations} relations for N = 2..8"))
}

fn oracle_properties() -> Outcome {
    let mut pairs = 0;
    for n in 1..=6 {
        let r = sweep_properties(n, DeltaProvider::Oracle).map_err(|e| e.to_string())?;
        for c in &r.checks {
            if !c.holds() {
                return Err(format!(
                    "n={n}: {} fails at {}",
                    c.name,
                    c.witness.clone().unwrap_or_default()
                ));
            }
        }
        if n <= 3 && r.check("trivial").is_none() {
            return Err(format!("n={n}: triviality not checked"));
        }
        pairs += r.pairs;
    }
    Ok(format!("{pairs} commuting pairs for N = 1..6"))
}

fn rules_vs_oracle() -> Outcome {
    let mut generators = 0;
    for n in 1..=8 {
        for r in compare_generators(n, DEFAULT_ORACLE_BOUND).map_err(|e| e.to_string())? {
            let j = r.generator.cycle_length();
            let must_agree = !r.is_swap() || j % 2 == 0;
            if must_agree && !r.agree() {
                return Err(format!("n={n}: g={} generator {:?}", r.g, r.generator));
            }
            generators += 1;
        }
    }
    let cmp = delta_compare(8, DEFAULT_ORACLE_BOUND).map_err(|e| e.to_string())?;
    if let Some(r) = cmp.disagreements().find(|r| !r.odd_swap) {
        return Err(format!(
            "n=8: g={} h={} disagree without an odd swap",
            r.g, r.h
        ));
    }
    let g = Permutation::from_cycles(4, &[&[1, 2]]).unwrap();
    let h = Permutation::from_cycles(4, &[&[3, 4]]).unwrap();
    let witness = delta_compare(4, DEFAULT_ORACLE_BOUND).unwrap();
    let row = witness.row(&g, &h).ok_or("witness row missing")?;
    if (row.oracle, row.rules) != (-1, 1) {
        return Err(format!(
            "witness has oracle {} rules {}",
            row.oracle, row.rules
        ));
    }
    let out = Command::new(env!("CARGO_BIN_EXE_torsion-genus"))
        .args(["delta", "--n", "4"])
        .output()
        .map_err(|e| e.to_string())?;
    let text = String::from_utf8_lossy(&out.stdout);
    if out.status.code() != Some(0) || !text.lines().any(|l| l == "(12)\t(34)\t-1\t1\tDISAGREE") {
        return Err(format!(
            "CLI exit {:?} without the witness row",
            out.status.code()
        ));
    }
    Ok(format!(
        "{generators} generators checked, N=8 has {} disagreements all on odd swaps, witness (12),(34) emitted",
        cmp.disagreements().count()
    ))
}

fn random_space(rng: &mut ChaCha8Rng) -> Vec<SuperVector> {
    let dim = rng.gen_range(1..=4);
    (0..dim)
        .map(|_| {
            SuperVector::new(
                rng.gen_bool(0.5),
                rat(rng.gen_range(-2..=2), 2),
                rat(rng.gen_range(0..=2), 2),
            )
        })
        .collect()
}

fn symwedge_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    let w = Truncation::int(3, 3);
    let qy = Truncation::new(0, Rational::from_integer(3));
    for case in 0..20 {
        let space = random_space(&mut rng);
        let f = superdimension(&space, qy).unwrap();
        let sym = sym_generating(&f, 1, w).unwrap();
        let wedge = wedge_generating(&f, 1, -1, w).unwrap();
        for n in 0..=3u32 {
            for (power, generating) in [(Power::Sym, &sym), (Power::Wedge, &wedge)] {
                let brute = brute_supertrace_symwedge(&space, n as usize, power, qy)
                    .unwrap()
                    .ok_or("space too large")?;
                if brute != generating.p_coefficient(n).truncate(qy) {
                    return Err(format!("case {case}: {power:?}^{n} of {space:?}"));
                }
            }
        }
    }
    Ok("20 spaces, N <= 3, Sym and exterior powers".into())
}

fn euler_check() -> Outcome {
    let mut tables = vec![("point".to_string(), GenusTable::point())];
    for seed in 11..=13 {
        tables.push((
            format!("random seed {seed}"),
            GenusTable::random(seed, 2, 2, 3, 2),
        ));
    }
    for (name, t) in &tables {
        let checks = euler_crosscheck(t, 5).map_err(|e| e.to_string())?;
        let untwisted = flat_coefficients(
            &direct_orbifold_series(t, false, Truncation::int(5, 0)).unwrap(),
            5,
        );
        for c in &checks {
            if !c.rules_match() {
                return Err(format!(
                    "{name} N={}: rules {} vs series {}",
                    c.n, c.rules, c.series
                ));
            }
            if c.trivial != BigRational::from_integer(untwisted[c.n].clone()) {
                return Err(format!(
                    "{name} N={}: trivial {} vs untwisted {}",
                    c.n, c.trivial, untwisted[c.n]
                ));
            }
        }
    }
    let rules = euler_torsion(4, 1, DeltaProvider::Rules).unwrap();
    let oracle = euler_torsion(4, 1, DeltaProvider::Oracle).unwrap();
    if rules != BigRational::from_integer(4.into()) || oracle != BigRational::from_integer(3.into())
    {
        return Err(format!("point N=4: rules {rules}, oracle {oracle}"));
    }
    Ok(format!(
        "4 tables, N <= 5; point N=4: rules {rules}, oracle {oracle}"
    ))
}

fn theta_suite() -> Outcome {
    let start = Instant::now();
    let results = check_identities(THETA_SAMPLES, 2024, THETA_TOL);
    let elapsed = start.elapsed();
    let mut worst: f64 = 0.0;
    for r in &results {
        if !r.passes() {
            return Err(format!(
                "{}: max relative error {:.2e}",
                r.name, r.max_rel_error
            ));
        }
        worst = worst.max(r.max_rel_error);
    }
    if elapsed > THETA_BUDGET {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!(
        "{} identities x {THETA_SAMPLES} samples, worst {worst:.1e}, {elapsed:.2?}",
        results.len()
    ))
}

fn sector_averages() -> Outcome {
    let trunc = Truncation::int(0, 2);
    let mut worst: f64 = 0.0;
    for seed in [1, 2, 3] {
        let t = GenusTable::random(seed, 8, 2, 5, 2);
        for j in 2..=4 {
            for signed in [false, true] {
                if signed && j % 2 == 1 {
                    continue;
                }
                let r = sector_average_numeric(&t, j, signed, trunc).map_err(|e| e.to_string())?;
                if !r.matches() || r.compared == 0 {
                    return Err(format!("seed {seed} j={j} signed={signed}: {r:?}"));
                }
                worst = worst.max(r.max_error);
            }
        }
    }
    Ok(format!("3 tables, j = 2..4, worst {worst:.1e}"))
}

fn main() {
    let criteria: Vec<Criterion> = vec![
        ("untwisted DMVV identity", || dmvv_criterion(false)),
        ("twisted DMVV half-sum identity", || dmvv_criterion(true)),
        ("point table values", point_values),
        ("spin cover presentation", presentation),
        ("oracle properties", oracle_properties),
        ("rules vs oracle report", rules_vs_oracle),
        ("Sym and exterior power oracle", symwedge_oracle),
        ("Euler cross-check", euler_check),
        ("theta identities", theta_suite),
        ("sector averages", sector_averages),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {} ({name}): PASS [{detail}]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} ({name}): FAIL [{detail}]", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
