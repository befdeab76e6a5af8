//! Acceptance harness: one pass/fail line per criterion.

use std::collections::{BTreeMap, BTreeSet};
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use usl_core::claims::{run_all, run_claim, ClaimOptions, ClaimReport, Tier, Verdict};
use usl_core::constructions::{k3, ta, tb};
use usl_core::matrices::{all_field_matrices, BoolMatrix, FieldMatrix, InvolutiveField};
use usl_core::{FiniteUnarySemigroup, UnarySemigroup};

#[path = "../../core/tests/support/mod.rs"]
mod support;

type Outcome = Result<String, String>;
type Criterion = fn() -> Outcome;

fn passed(report: &ClaimReport) -> Result<(), String> {
    match report.verdict {
        Verdict::Pass => Ok(()),
        _ => Err(format!("{} {:?}: {}", report.id, report.verdict, report.witness)),
    }
}

fn claim(id: &str) -> Result<ClaimReport, String> {
    let report = run_claim(id, &ClaimOptions::default()).map_err(|e| e.to_string())?;
    passed(&report)?;
    Ok(report)
}

fn require(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Splits `a->b, c->d` at bracket depth zero.
fn parse_map(body: &str) -> Vec<(String, String)> {
    let mut entries = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    let bytes = body.as_bytes();
    for (i, &c) in bytes.iter().enumerate() {
        match c {
            b'[' | b'(' => depth += 1,
            b']' | b')' => depth -= 1,
            b',' if depth == 0 => {
                entries.push(&body[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    entries.push(&body[start..]);
    entries
        .into_iter()
        .filter_map(|e| {
            e.trim()
                .split_once("->")
                .map(|(a, b)| (a.trim().to_string(), b.trim().to_string()))
        })
        .collect()
}

/// Every `{...}` map that follows `marker` in the witness text.
fn maps_after(witness: &str, marker: &str) -> Vec<Vec<(String, String)>> {
    witness
        .match_indices(marker)
        .filter_map(|(i, _)| {
            let rest = &witness[i + marker.len()..];
            let open = rest.find('{')?;
            let close = rest[open..].find('}')? + open;
            Some(parse_map(&rest[open + 1..close]))
        })
        .collect()
}

/// Label-level unary semigroups with independently implemented operations.
enum Algebra {
    Table(FiniteUnarySemigroup),
    Field(Arc<InvolutiveField>, fn(&FieldMatrix) -> FieldMatrix),
    Bool(fn(&BoolMatrix) -> BoolMatrix),
}

impl Algebra {
    fn mul(&self, a: &str, b: &str) -> Result<String, String> {
        Ok(match self {
            Algebra::Table(s) => {
                let id = |l: &str| s.find_label(l).ok_or_else(|| format!("unknown label {l}"));
                s.label(s.mul(id(a)?, id(b)?))
            }
            Algebra::Field(f, _) => {
                let p = |l: &str| FieldMatrix::parse(f, l).map_err(|e| e.to_string());
                p(a)?.mul(&p(b)?).map_err(|e| e.to_string())?.to_string()
            }
            Algebra::Bool(_) => {
                let p = |l: &str| BoolMatrix::parse(l).map_err(|e| e.to_string());
                p(a)?.mul(&p(b)?).to_string()
            }
        })
    }

    fn star(&self, a: &str) -> Result<String, String> {
        Ok(match self {
            Algebra::Table(s) => s.label(s.star(0, s.find_label(a).ok_or_else(|| format!("unknown label {a}"))?)),
            Algebra::Field(f, t) => t(&FieldMatrix::parse(f, a).map_err(|e| e.to_string())?).to_string(),
            Algebra::Bool(t) => t(&BoolMatrix::parse(a).map_err(|e| e.to_string())?).to_string(),
        })
    }
}

/// Re-checks a label map as a unary homomorphism onto `image_size`
/// elements; with `bijective` the map must also be injective.
fn revalidate(
    map: &[(String, String)],
    dom: &Algebra,
    cod: &Algebra,
    image_size: usize,
    bijective: bool,
) -> Result<(), String> {
    let m: BTreeMap<&str, &str> = map.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    require(m.len() == map.len(), || "duplicate domain entries".into())?;
    let image = |x: &str| m.get(x).copied().ok_or_else(|| format!("{x} is outside the domain"));
    for &a in m.keys() {
        for &b in m.keys() {
            let ab = dom.mul(a, b)?;
            let expected = cod.mul(image(a)?, image(b)?)?;
            require(image(&ab)? == expected, || format!("f({a}{b}) != f({a})f({b})"))?;
        }
        require(image(&dom.star(a)?)? == cod.star(image(a)?)?, || {
            format!("f({a}*) != f({a})*")
        })?;
    }
    let values: BTreeSet<&str> = m.values().copied().collect();
    require(values.len() == image_size, || {
        format!("image has {} elements, expected {image_size}", values.len())
    })?;
    require(!bijective || m.len() == image_size, || "map is not injective".into())
}

/// Domain, codomain, image size and bijectivity of one emitted map.
type MapCheck<'a> = (&'a Algebra, &'a Algebra, usize, bool);

fn revalidate_claim(id: &str, marker: &str, pairs: &[MapCheck]) -> Result<(), String> {
    let report = claim(id)?;
    let maps = maps_after(&report.witness, marker);
    require(maps.len() == pairs.len(), || {
        format!("{id}: {} maps after `{marker}`, expected {}", maps.len(), pairs.len())
    })?;
    for (map, (dom, cod, size, bij)) in maps.iter().zip(pairs) {
        revalidate(map, dom, cod, *size, *bij).map_err(|e| format!("{id}: {e}"))?;
    }
    Ok(())
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let reports = run_all(Some(Tier::Fast), &ClaimOptions::default());
    let elapsed = start.elapsed();
    let ids: Vec<&str> = reports.iter().map(|r| r.id.as_str()).collect();
    let expected: Vec<String> = (1..=22).map(|i| format!("C{i}")).collect();
    require(ids == expected, || format!("fast tier is {ids:?}"))?;
    for r in &reports {
        passed(r)?;
    }
    require(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    Ok(format!("C1-C22 pass in {:.1} s", elapsed.as_secs_f64()))
}

fn criterion_2() -> Outcome {
    let report = claim("C3")?;
    require(
        report.witness.contains("all 100 products") && report.witness.contains("all 361 pairs"),
        || report.witness.clone(),
    )?;
    let maps = maps_after(&report.witness, "bijection");
    let map = maps.first().ok_or("no bijection emitted")?;
    let targets: BTreeSet<&str> = map.iter().map(|(_, b)| b.as_str()).collect();
    let k = k3();
    let labels: BTreeSet<String> = k.elements().map(|a| k.label(a)).collect();
    require(map.len() == 10 && targets.len() == 10, || format!("bijection {map:?}"))?;
    require(targets.iter().all(|t| labels.contains(*t)), || {
        "bijection leaves K3".into()
    })?;
    Ok("19-element subsemigroup of M2(GF(3)) modulo H_ij is K3 via a 10-entry bijection".into())
}

fn criterion_3() -> Outcome {
    let report = claim("C6")?;
    require(report.witness.contains("(256 assignments)"), || report.witness.clone())?;
    let at = report.witness.find("K3 fails").ok_or("no K3 witness")?;
    let witness = report.witness[at..].split(';').next().unwrap_or_default();
    Ok(witness.to_string())
}

fn criterion_4() -> Outcome {
    let report = claim("C14")?;
    let f = Arc::new(InvolutiveField::prime(3).map_err(|e| e.to_string())?);
    let all = all_field_matrices(&f, 2).map_err(|e| e.to_string())?;
    let id = FieldMatrix::identity(&f, 2);
    let mul = |a: &FieldMatrix, b: &FieldMatrix| a.mul(b).unwrap();
    let order = |g: &FieldMatrix| {
        let (mut x, mut k) = (g.clone(), 1u64);
        while x != id {
            x = mul(&x, g);
            k += 1;
        }
        k
    };
    let gl: Vec<&FieldMatrix> = all.iter().filter(|a| a.rank() == 2).collect();
    require(gl.len() == 48, || format!("GL2(GF(3)) has {} elements", gl.len()))?;
    let d = gl.iter().map(|g| order(g)).fold(1, num_integer::lcm);
    require(
        report.witness.contains(&format!("d = lcm of element orders = {d}")),
        || report.witness.clone(),
    )?;
    for x in &all {
        let xtx = mul(&x.transpose(), x);
        let mut p = id.clone();
        for _ in 0..d {
            p = mul(&p, &xtx);
        }
        require(mul(x, &p) == *x, || format!("x = x(x'x)^{d} fails at {x}"))?;
    }
    Ok(format!(
        "d = {d} from 48 element orders; identity holds on all 81 elements"
    ))
}

fn criterion_5() -> Outcome {
    let field = |p| Arc::new(InvolutiveField::prime(p).unwrap());
    let transpose: fn(&FieldMatrix) -> FieldMatrix = FieldMatrix::transpose;
    let symplectic: fn(&FieldMatrix) -> FieldMatrix = |m| m.symplectic().unwrap();
    let (tb, ta) = (Algebra::Table(tb()), Algebra::Table(ta()));
    let (gf2, gf3, gf5) = (
        Algebra::Field(field(2), transpose),
        Algebra::Field(field(3), transpose),
        Algebra::Field(field(5), transpose),
    );
    let sp3 = Algebra::Field(field(3), symplectic);
    let bool_t = Algebra::Bool(BoolMatrix::transpose);
    let bool_a = Algebra::Bool(BoolMatrix::anti_diag);
    revalidate_claim(
        "C12",
        "verified isomorphism",
        &[(&ta, &gf2, 6, true), (&ta, &gf5, 6, true)],
    )?;
    revalidate_claim("C13", "verified isomorphism", &[(&ta, &gf3, 6, true)])?;
    revalidate_claim("C15", "verified onto homomorphism", &[(&sp3, &tb, 6, false)])?;
    revalidate_claim("C16", "verified isomorphism", &[(&tb, &bool_t, 6, true)])?;
    revalidate_claim("C18", "verified onto homomorphism", &[(&bool_a, &ta, 6, false)])?;
    Ok("6 emitted maps re-checked with raw matrix arithmetic and TA/TB tables".into())
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let report = claim("C20")?;
    let elapsed = start.elapsed();
    let w = &report.witness;
    require(w.contains("385 elements") && w.matches("!=").count() >= 2, || w.clone())?;
    require(w.contains("all 16 lambda restrictions normalize"), || w.clone())?;
    require(elapsed < Duration::from_secs(10), || format!("took {elapsed:?}"))?;
    Ok(format!(
        "385-element T_1 separates both sides; 16 lambda normalize; {:.1} s",
        elapsed.as_secs_f64()
    ))
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let report = claim("C23")?;
    let elapsed = start.elapsed();
    require(report.witness.contains("43046721 assignments"), || {
        report.witness.clone()
    })?;
    require(elapsed < Duration::from_secs(600), || format!("took {elapsed:?}"))?;
    Ok(format!(
        "Zimin identity with n = 4 holds on 81^4 assignments in {:.1} s",
        elapsed.as_secs_f64()
    ))
}

fn criterion_8() -> Outcome {
    let a = support::identity_agreement(1000, 0x5eed)?;
    let f = Arc::new(InvolutiveField::prime(3).map_err(|e| e.to_string())?);
    let invertible = support::mp_agreement(&f)?;
    require(invertible == 81, || {
        format!("{invertible} of 81 matrices have an inverse")
    })?;
    Ok(format!(
        "1000 instances agree ({} hold, {} fail); mp_inverse matches search on all 81",
        a.holds, a.fails
    ))
}

fn criterion_9() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut outputs = Vec::new();
    for threads in ["1", "8"] {
        let path = dir.path().join(format!("report-{threads}.json"));
        let status = Command::new(env!("CARGO_BIN_EXE_usl"))
            .args(["verify", "--tier", "fast", "--threads", threads, "--json"])
            .arg(&path)
            .output()
            .map_err(|e| e.to_string())?;
        require(status.status.success(), || {
            format!("--threads {threads} exited with {}", status.status)
        })?;
        outputs.push(std::fs::read(&path).map_err(|e| e.to_string())?);
    }
    require(outputs[0] == outputs[1], || "JSON reports differ".into())?;
    Ok(format!("JSON reports are byte-identical ({} bytes)", outputs[0].len()))
}

fn main() {
    let criteria: [(&str, Criterion); 9] = [
        ("fast claims", criterion_1),
        ("K3 quotient", criterion_2),
        ("transpose identity", criterion_3),
        ("GL2 exponent", criterion_4),
        ("embeddings", criterion_5),
        ("critical structure", criterion_6),
        ("Zimin identity", criterion_7),
        ("oracle equivalence", criterion_8),
        ("determinism", criterion_9),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {} PASS {name}: {detail}", i + 1),
            Err(detail) => {
                failures += 1;
                println!("criterion {} FAIL {name}: {detail}", i + 1);
            }
        }
    }
    println!("{}/{} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
