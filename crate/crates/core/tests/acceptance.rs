//! One line per acceptance criterion; exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use qcuntz_core::braid::q_antisymmetric_space;
use qcuntz_core::qmatrix::{pairing_welldefined, perturbed_relation_detected};
use qcuntz_core::{run_suite, CheckReport, SuiteParams};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn p() -> SuiteParams {
    SuiteParams::default()
}

fn suite(name: &str, params: SuiteParams) -> Result<CheckReport, String> {
    run_suite(name, &params).map_err(|e| e.to_string())
}

fn all_pass(reports: &[CheckReport]) -> Outcome {
    let total: usize = reports.iter().map(|r| r.cases.len()).sum();
    let failed: Vec<String> = reports
        .iter()
        .flat_map(|r| r.failures().map(move |c| format!("{}/{}: {}", r.suite, c.id, c.witness.clone().unwrap_or_default())))
        .collect();
    if failed.is_empty() {
        Ok(format!("{total} cases"))
    } else {
        Err(failed.join("; "))
    }
}

fn c1() -> Outcome {
    all_pass(&[suite("relations", p().with_d(2, 4))?])
}

fn c2() -> Outcome {
    all_pass(&[suite("ybe", p().with_d(2, 4))?])
}

fn c3() -> Outcome {
    all_pass(&[suite("braid", p().with_d(2, 3).with_strands(3))?])
}

fn require_cases(reports: &[CheckReport], names: &[&str]) -> Outcome {
    for r in reports {
        for d in 2..=3 {
            for n in names {
                let id = format!("d={d}/{n}");
                let c = r.cases.iter().find(|c| c.id == id).ok_or(format!("{}/{id} missing", r.suite))?;
                if !c.pass {
                    return Err(format!("{}/{id} failed", r.suite));
                }
            }
        }
    }
    all_pass(reports)
}

fn c4() -> Outcome {
    let reports = [suite("fixed", p().with_d(2, 3))?, suite("cofixed", p().with_d(2, 3))?];
    require_cases(&reports, &["theta1", "theta2"])
}

fn c5() -> Outcome {
    for d in 2..=3 {
        let dim = q_antisymmetric_space(d).map_err(|e| e.to_string())?.len();
        if dim != 1 {
            return Err(format!("d={d}: solution space has dimension {dim}"));
        }
    }
    let reports = [suite("fixed", p().with_d(2, 3))?, suite("cofixed", p().with_d(2, 3))?];
    require_cases(&reports[..1], &["Sq-space-dimension"])?;
    require_cases(&reports, &["Sq"])
}

fn c6() -> Outcome {
    all_pass(&[suite("fixed-eq-cofixed", p().with_d(2, 2).with_random(50))?])
}

fn c7() -> Outcome {
    all_pass(&[
        suite("duality", p().with_d(2, 2).with_wordlen(3).with_random(50))?,
        suite("duality", p().with_d(3, 3).with_wordlen(2).with_random(50))?,
    ])
}

fn c8() -> Outcome {
    let mut checked = 0;
    for d in 2..=3 {
        let rep = pairing_welldefined(d, 3).map_err(|e| e.to_string())?;
        if !rep.pass() {
            return Err(format!("d={d}: {:?}", rep.failures.iter().take(3).collect::<Vec<_>>()));
        }
        if !perturbed_relation_detected(d, 3).map_err(|e| e.to_string())? {
            return Err(format!("d={d}: perturbed relation went undetected"));
        }
        checked += rep.relations * rep.words;
    }
    Ok(format!("{checked} relation/word pairs"))
}

fn c9() -> Outcome {
    all_pass(&[suite("qdet", p().with_d(2, 3).with_wordlen(3))?])
}

fn c10() -> Outcome {
    all_pass(&[suite("antipode", p().with_d(2, 3))?])
}

fn c11() -> Outcome {
    all_pass(&[suite("rll", p().with_d(2, 2).with_wordlen(3))?])
}

fn c12() -> Outcome {
    let r = suite("oracle", p().with_d(2, 3).with_random(200))?;
    for c in &r.cases {
        if c.id.ends_with("/equalities") && c.params["samples"] != 200 {
            return Err("expected 200 equalities".into());
        }
        if c.id.ends_with("/inequalities") && c.params["samples"] != 50 {
            return Err("expected 50 inequalities".into());
        }
    }
    all_pass(&[r])
}

fn c13() -> Outcome {
    all_pass(&[suite("frt-confluence", p().with_d(2, 3).with_random(100))?])
}

fn main() -> ExitCode {
    let criteria: [Criterion; 13] = [
        ("Jimbo relations under pi and (pi x pi) Delta, n = 2..4", c1),
        ("Yang-Baxter equation for R, d = 2..4", c2),
        ("braid and distant commutation relations for theta_1..theta_3, d = 2,3", c3),
        ("theta_1, theta_2 fixed and co-fixed, d = 2,3", c4),
        ("S_q unique up to scale, fixed and co-fixed, d = 2,3", c5),
        ("fixed iff co-fixed on corpus plus 50 random elements, d = 2", c6),
        ("dual action equals action (len 3 at d = 2, len 2 at d = 3)", c7),
        ("pairing well defined on FRT relations and qdet - 1, len 3, d = 2,3", c8),
        ("qdet pairs as the counit and reduces to 1, d = 2,3", c9),
        ("antipode inverts U; omega(s_i*) omega(s_j) = delta_ij, d = 2,3", c10),
        ("RLL relations against monomials of degree 3, d = 2", c11),
        ("oracle confirms 200 equalities and refutes 50 inequalities", c12),
        ("FRT overlaps confluent and product associative, d = 2,3", c13),
    ];
    let mut failures = 0;
    for (k, (label, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let ms = start.elapsed().as_secs_f64() * 1e3;
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {label} [{detail}, {ms:.0} ms]", k + 1),
            Err(why) => {
                failures += 1;
                println!("criterion {:>2} FAIL  {label}: {why}", k + 1);
            }
        }
    }
    println!("acceptance: {}/13 criteria passed", 13 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
