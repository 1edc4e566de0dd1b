//! Acceptance gate: one line per criterion, nonzero exit if any fails.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use gcat_duality::exactlin::{Mat, RingSpec};
use gcat_duality::fixtures::{self, theorem_suite};
use gcat_duality::gcat::GCategory;
use gcat_duality::ginv::{f1_map, f2_map, is_covering, InvFunctor};
use gcat_duality::lincat::{compose_functors, functor_equal, validate_functor, LinFunctor};
use gcat_duality::orbit::{orbit2_iso, orbit_category, to_matrix_form};
use gcat_duality::smash::{q_factorization, smash_product};
use gcat_duality::twofun::verify_main_theorem;

type Outcome = Result<(), String>;

const Q: RingSpec = RingSpec::Rationals;

fn fixtures_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

/// G-categories of the suite plus the free actions on two smash carriers.
fn gcategories() -> Vec<(String, Arc<GCategory>)> {
    let mut out = theorem_suite(Q, true).gcats;
    for (name, b) in theorem_suite(Q, false).graded {
        if name == "GA2" || name == "GR2" {
            out.push((
                format!("{name}#G"),
                smash_product(&b).unwrap().carrier().clone(),
            ));
        }
    }
    out
}

// dim (C/G)(x,y) against a count over the orbit of x under the raw
// object permutations
fn criterion_1() -> Outcome {
    for (name, c) in gcategories() {
        let o = orbit_category(&c).map_err(|e| format!("{name}: {e}"))?;
        let base = c.base();
        let n = base.num_objects();
        for x in 0..n {
            for y in 0..n {
                let expected: usize = (0..c.group().order())
                    .map(|a| base.dim(c.functor(a).obj_map()[x], y))
                    .sum();
                if o.category().dim(x, y) != expected {
                    return Err(format!(
                        "{name}: dim at ({x},{y}) is {} not {expected}",
                        o.category().dim(x, y)
                    ));
                }
            }
        }
    }
    let pt2 = orbit_category(&Arc::new(fixtures::pt2(Q))).unwrap();
    if pt2.category().dim(0, 0) != 2 {
        return Err("PT2 point hom is not 2-dimensional".into());
    }
    Ok(())
}

fn iso_iff(name: &str, f: &InvFunctor) -> Outcome {
    let n = f.dom().base().num_objects();
    for x in 0..n {
        for y in 0..n {
            let (a, b) = (
                f1_map(f, x, y).is_invertible(),
                f2_map(f, x, y).is_invertible(),
            );
            if a != b {
                return Err(format!("{name}: F1 and F2 disagree at ({x},{y})"));
            }
        }
    }
    Ok(())
}

fn all_f1_invertible(name: &str, f: &InvFunctor) -> Outcome {
    let n = f.dom().base().num_objects();
    for x in 0..n {
        for y in 0..n {
            if !f1_map(f, x, y).is_invertible() {
                return Err(format!("{name}: F1 singular at ({x},{y})"));
            }
        }
    }
    Ok(())
}

fn criterion_2() -> Outcome {
    for (name, c) in gcategories() {
        let o = orbit_category(&c).map_err(|e| e.to_string())?;
        let cov = is_covering(o.p(), &[]).map_err(|e| e.to_string())?;
        if !cov.passed() {
            return Err(format!("{name}: P is not a covering\n{cov}"));
        }
        all_f1_invertible(&format!("{name}/P"), o.p())?;
        iso_iff(&format!("{name}/P"), o.p())?;
    }
    for (name, b) in theorem_suite(Q, false).graded {
        let s = smash_product(&b).map_err(|e| e.to_string())?;
        let cov = is_covering(s.q(), &[]).map_err(|e| e.to_string())?;
        if !cov.passed() {
            return Err(format!("{name}: Q is not a covering\n{cov}"));
        }
        all_f1_invertible(&format!("{name}/Q"), s.q())?;
        iso_iff(&format!("{name}/Q"), s.q())?;
    }
    // functors that are not precoverings must agree too
    iso_iff("x0-into-SW2", &fixtures::sw2_point_inclusion(Q))?;
    let pt = Arc::new(fixtures::point_category(Q));
    let collapse = InvFunctor::strict(
        Arc::new(fixtures::pt2(Q)),
        pt.clone(),
        LinFunctor::identity(&pt),
    )
    .unwrap();
    if f1_map(&collapse, 0, 0).is_invertible() {
        return Err("PT2 -> point has an invertible F1".into());
    }
    iso_iff("PT2->point", &collapse)
}

fn criterion_3() -> Outcome {
    for (name, c) in gcategories() {
        let o = orbit_category(&c).map_err(|e| e.to_string())?;
        let report = orbit2_iso(&o);
        if !report.passed() {
            return Err(format!("{name}:\n{report}"));
        }
        // entry (b,a) of the matrix form is A_b applied to block b^{-1}a
        let g = c.group();
        let cat = o.category();
        for x in 0..cat.num_objects() {
            for y in 0..cat.num_objects() {
                for i in 0..cat.dim(x, y) {
                    let f = cat.basis_morphism(x, y, i);
                    let m = to_matrix_form(&o, &f);
                    for b in g.elements() {
                        for a in g.elements() {
                            let want = c.act(b, &o.block(&f, g.mul(g.inv(b), a)));
                            if m.entry(b, a) != &want {
                                return Err(format!(
                                    "{name}: matrix entry ({b},{a}) of {}",
                                    cat.basis(x, y)[i]
                                ));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn criterion_4() -> Outcome {
    let s = smash_product(&Arc::new(fixtures::ga2(Q))).map_err(|e| e.to_string())?;
    let carrier = s.category().clone();
    let m2 = Arc::new(fixtures::matrix2_category(Q));
    // x^(a) -> object a; the single basis vector of each hom to e_ab
    let obj: Vec<usize> = (0..2).map(|u| s.split(u).1).collect();
    let to_m2 = LinFunctor::from_fn(carrier.clone(), m2.clone(), obj.clone(), |u, v| {
        Mat::identity(Q, carrier.dim(u, v))
    })
    .map_err(|e| e.to_string())?;
    let mut back_obj = vec![0; 2];
    for (u, &a) in obj.iter().enumerate() {
        back_obj[a] = u;
    }
    let from_m2 = LinFunctor::from_fn(m2.clone(), carrier.clone(), back_obj, |i, j| {
        Mat::identity(Q, m2.dim(i, j))
    })
    .map_err(|e| e.to_string())?;
    for (label, f) in [("to M2", &to_m2), ("from M2", &from_m2)] {
        let r = validate_functor(f);
        if !r.passed() {
            return Err(format!("{label} is not a functor\n{r}"));
        }
    }
    let there_and_back = compose_functors(&from_m2, &to_m2).map_err(|e| e.to_string())?;
    let back_and_there = compose_functors(&to_m2, &from_m2).map_err(|e| e.to_string())?;
    if !functor_equal(&there_and_back, &LinFunctor::identity(&carrier))
        || !functor_equal(&back_and_there, &LinFunctor::identity(&m2))
    {
        return Err("the two functors are not mutually inverse".into());
    }
    let h = q_factorization(&s).map_err(|e| e.to_string())?;
    let n = h.dom().num_objects();
    for x in 0..n {
        for y in 0..n {
            if !h.mat(x, y).is_invertible() {
                return Err(format!("H hom matrix at ({x},{y}) is singular"));
            }
        }
    }
    if !h.is_object_surjective() {
        return Err("H is not dense".into());
    }
    Ok(())
}

fn is_battery(subject: &str) -> bool {
    subject.starts_with("slash-functor:") || subject.starts_with("hash-functor:")
}

fn theorem_part(functoriality: bool) -> Outcome {
    for ring in [Q, RingSpec::PrimeField(5)] {
        let report = verify_main_theorem(&theorem_suite(ring, true));
        let mut seen = 0;
        for rec in report
            .records
            .iter()
            .filter(|r| is_battery(&r.subject) == functoriality)
        {
            seen += 1;
            if let Some(c) = rec.report.first_failure() {
                return Err(format!(
                    "{} over {ring}: {} at {:?}",
                    rec.subject, c.name, c.locus
                ));
            }
        }
        if seen == 0 {
            return Err("no records".into());
        }
    }
    Ok(())
}

fn gcat_bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_gcat"))
}

fn run_cli(args: &[&str], input: &str) -> Result<(i32, serde_json::Value), String> {
    let out = gcat_bin()
        .args(args)
        .arg("--input")
        .arg(fixtures_dir().join(input))
        .output()
        .map_err(|e| e.to_string())?;
    let code = out.status.code().unwrap_or(-1);
    let json = serde_json::from_slice(&out.stdout).map_err(|e| {
        format!(
            "{input}: report is not JSON ({e}); stderr {}",
            String::from_utf8_lossy(&out.stderr)
        )
    })?;
    Ok((code, json))
}

fn criterion_5() -> Outcome {
    theorem_part(false)?;
    for input in ["suite.json", "suite_f5.json"] {
        let (code, report) = run_cli(&["verify-theorem"], input)?;
        if code != 0 || report["status"] != "pass" {
            return Err(format!("verify-theorem on {input}: exit {code}"));
        }
    }
    Ok(())
}

fn criterion_6() -> Outcome {
    theorem_part(true)
}

fn failing<'a>(report: &'a serde_json::Value, name: &str) -> Option<&'a str> {
    report["checks"]
        .as_array()?
        .iter()
        .find(|c| c["name"] == name && c["passed"] == false)
        .and_then(|c| c["locus"].as_str())
}

fn criterion_7() -> Outcome {
    let controls = [
        (
            "validate",
            "neg_scaled_action.json",
            "gcategory:SW2-scaled/homomorphism",
            "(a,b) = (s,s)",
        ),
        (
            "validate",
            "neg_misgraded.json",
            "graded:GA2-misgraded/homogeneous-composition",
            "us . us",
        ),
        (
            "validate",
            "neg_broken_square.json",
            "equiv_cell:broken/adjuster-square",
            "a = s",
        ),
        (
            "verify-theorem",
            "neg_broken_square.json",
            "equiv-2cell:broken/valid",
            "adjuster-square",
        ),
        (
            "orbit",
            "neg_scaled_action.json",
            "gcategory:SW2-scaled/homomorphism",
            "(s,s)",
        ),
        (
            "smash",
            "neg_misgraded.json",
            "graded:GA2-misgraded/homogeneous-composition",
            "us . us",
        ),
        (
            "check-covering",
            "non_dense.json",
            "x0-into-SW2/dense",
            "density",
        ),
    ];
    for (cmd, input, check, locus) in controls {
        let (code, report) = run_cli(&[cmd, "--no-timing"], input)?;
        if code != 1 {
            return Err(format!("{cmd} {input}: exit {code}, expected 1"));
        }
        match failing(&report, check) {
            Some(l) if l.contains(locus) => {}
            other => {
                return Err(format!(
                    "{cmd} {input}: {check} locus {other:?}, expected {locus:?}"
                ))
            }
        }
    }
    Ok(())
}

fn criterion_8() -> Outcome {
    let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
    let goldens = [
        ("verify-theorem", "suite.json", "verify-theorem_suite.json"),
        (
            "verify-theorem",
            "suite_f5.json",
            "verify-theorem_suite_f5.json",
        ),
        ("orbit", "pt2.json", "orbit_pt2.json"),
        ("smash", "ga2.json", "smash_ga2.json"),
        (
            "check-covering",
            "non_dense.json",
            "check-covering_non_dense.json",
        ),
        (
            "validate",
            "neg_scaled_action.json",
            "validate_neg_scaled_action.json",
        ),
        (
            "validate",
            "neg_misgraded.json",
            "validate_neg_misgraded.json",
        ),
        (
            "validate",
            "neg_broken_square.json",
            "validate_neg_broken_square.json",
        ),
    ];
    for (cmd, input, golden) in goldens {
        let mut runs = Vec::new();
        for k in 0..2 {
            let out = tmp.path().join(format!("{golden}.{k}"));
            gcat_bin()
                .args([cmd, "--no-timing", "--input"])
                .arg(fixtures_dir().join(input))
                .arg("--output")
                .arg(&out)
                .output()
                .map_err(|e| e.to_string())?;
            runs.push(std::fs::read(&out).map_err(|e| format!("{golden}: {e}"))?);
        }
        if runs[0] != runs[1] {
            return Err(format!("{cmd} {input}: consecutive runs differ"));
        }
        let want =
            std::fs::read(fixtures_dir().join("golden").join(golden)).map_err(|e| e.to_string())?;
        if runs[0] != want {
            return Err(format!(
                "{cmd} {input}: report differs from golden/{golden}"
            ));
        }
    }
    Ok(())
}

type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);

fn main() {
    let criteria: [Criterion; 8] = [
        (
            "1 orbit dimensions",
            criterion_1,
            Some(Duration::from_secs(1)),
        ),
        (
            "2 covering certificates",
            criterion_2,
            Some(Duration::from_secs(1)),
        ),
        (
            "3 orbit-form isomorphisms",
            criterion_3,
            Some(Duration::from_secs(1)),
        ),
        (
            "4 smash of GA2 is the matrix category",
            criterion_4,
            Some(Duration::from_secs(1)),
        ),
        (
            "5 main theorem battery",
            criterion_5,
            Some(Duration::from_secs(10)),
        ),
        (
            "6 2-functoriality battery",
            criterion_6,
            Some(Duration::from_secs(5)),
        ),
        ("7 negative controls", criterion_7, None),
        ("8 golden determinism", criterion_8, None),
    ];
    let mut failed = 0;
    for (name, run, limit) in criteria {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let verdict = match (&outcome, limit) {
            (Err(e), _) => Err(e.clone()),
            (Ok(()), Some(l)) if took > l => Err(format!("took {took:?}, limit {l:?}")),
            _ => Ok(()),
        };
        match verdict {
            Ok(()) => println!("criterion {name}: PASS ({} ms)", took.as_millis()),
            Err(e) => {
                failed += 1;
                println!("criterion {name}: FAIL ({} ms): {e}", took.as_millis());
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
