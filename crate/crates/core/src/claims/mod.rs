//! The claim registry: each entry rebuilds its structures from scratch and
//! reports a verdict together with the certificate or witness it found.

mod combinatorial;
mod field;

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::semigroup::{verify_morphism, FiniteUnarySemigroup, MorphismMode, UnarySemigroup};
use crate::terms::{check_identity, parse_identity, IdentityVerdict, Witness};
use crate::{Error, Result, DEFAULT_ASSIGNMENT_BUDGET, DEFAULT_MORPHISM_BUDGET};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tier {
    Fast,
    Slow,
}

impl Tier {
    pub fn parse(text: &str) -> Result<Self> {
        match text {
            "fast" => Ok(Tier::Fast),
            "slow" => Ok(Tier::Slow),
            other => Err(Error::UnknownName(format!("tier {other}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimReport {
    pub id: String,
    pub title: String,
    pub verdict: Verdict,
    /// Certificate on pass, witness on fail, budget marker when inconclusive.
    pub witness: String,
    pub ms: u64,
    pub tier: Tier,
}

/// Registry entry.
#[derive(Clone, Copy, Debug)]
pub struct ClaimInfo {
    pub id: &'static str,
    pub title: &'static str,
    pub tier: Tier,
    run: fn(&ClaimOptions, &mut Evidence) -> Result<()>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClaimOptions {
    /// Bound on the assignments of any single identity check.
    pub assignment_budget: u64,
    /// Node budget of any single morphism search.
    pub morphism_budget: u64,
}

impl Default for ClaimOptions {
    fn default() -> Self {
        ClaimOptions {
            assignment_budget: DEFAULT_ASSIGNMENT_BUDGET,
            morphism_budget: DEFAULT_MORPHISM_BUDGET,
        }
    }
}

const fn claim(
    id: &'static str,
    title: &'static str,
    tier: Tier,
    run: fn(&ClaimOptions, &mut Evidence) -> Result<()>,
) -> ClaimInfo {
    ClaimInfo { id, title, tier, run }
}

pub const CLAIMS: [ClaimInfo; 23] = [
    claim("C1", "rank-1 identity: A^2BA = ABA^2 for rank-1 A over M2(GF(2)) and M2(GF(3))", Tier::Fast, field::c1),
    claim("C2", "L1_2(GF(q)) satisfies x^2yx = xyx^2 for q = 2, 3, 5", Tier::Fast, field::c2),
    claim("C3", "K3 is the quotient of the 19-element H_ij subsemigroup of M2(GF(3)) with Moore-Penrose inverse", Tier::Fast, field::c3),
    claim("C4", "rank-1 Moore-Penrose formula and A^+ = scalar * A^* on M2(GF(3))", Tier::Fast, field::c4),
    claim("C5", "Moore-Penrose inverse is total on M2(GF(3)) and partial on M2(GF(5))", Tier::Fast, field::c5),
    claim("C6", "M2(GF(2)) with transpose satisfies and K3 fails (xx*)^3(yy*)^3 = (yy*)^3(xx*)^3", Tier::Fast, field::c6),
    claim("C7", "TB is realized by six 0/1 matrices", Tier::Fast, field::c7),
    claim("C8", "TA is realized by six 0/1 matrices and TB is an image of a subsemigroup of TA x TA", Tier::Fast, field::c8),
    claim("C9", "Hermitian part of M2(GF(3)) with Moore-Penrose inverse lies in L1_2 and satisfies x^2yx = xyx^2; GL2(GF(3)) does not", Tier::Fast, field::c9),
    claim("C10", "{A : A^+ = A^*} in GL2(GF(3)) is non-abelian; K3 with both operations is a quotient of the H_ij set", Tier::Fast, field::c10),
    claim("C11", "O2(GF(3)) is non-abelian; the d-th power part of M2(GF(3)) with transpose satisfies x^2yx = xyx^2", Tier::Fast, field::c11),
    claim("C12", "degree-2 H_ij matrices over GF(2) and GF(5) form a copy of TA", Tier::Fast, field::c12),
    claim("C13", "degree-3 H_ij matrices over GF(3) form a copy of TA", Tier::Fast, field::c13),
    claim("C14", "M2(GF(3)) with transpose satisfies x = x(x'x)^d, d the exponent of GL2(GF(3))", Tier::Fast, field::c14),
    claim("C15", "symplectic H_ij matrices over GF(3) map onto TB", Tier::Fast, field::c15),
    claim("C16", "Boolean B_ij matrices with transpose form a copy of TB", Tier::Fast, combinatorial::c16),
    claim("C17", "Hall matrices in B2 and B3 are closed under product and transpose", Tier::Fast, combinatorial::c17),
    claim("C18", "the BT3 submonoid generated by X and Y maps onto TA", Tier::Fast, combinatorial::c18),
    claim("C19", "Zimin words Z2 and Z3 have no bounded equal word in TB", Tier::Fast, combinatorial::c19),
    claim("C20", "critical T_1 over S3 with m = 2: separation and normalization of every restriction", Tier::Fast, combinatorial::c20),
    claim("C21", "substitution words are square-free and the twisted model satisfies xx* = x^2 = 0", Tier::Fast, combinatorial::c21),
    claim("C22", "zeta and eta generate a free subgroup of SL2(Z) up to word length 10", Tier::Fast, combinatorial::c22),
    claim("C23", "M2(GF(3)) with transpose satisfies the Zimin omega identity for n = h + 1", Tier::Slow, combinatorial::c23),
];

pub fn claim_info(id: &str) -> Result<&'static ClaimInfo> {
    CLAIMS
        .iter()
        .find(|c| c.id.eq_ignore_ascii_case(id))
        .ok_or_else(|| Error::UnknownName(format!("claim {id}")))
}

/// Runs one claim. Internal errors become a fail verdict carrying the error.
pub fn run_claim(id: &str, options: &ClaimOptions) -> Result<ClaimReport> {
    let info = claim_info(id)?;
    let start = Instant::now();
    let mut evidence = Evidence::default();
    if let Err(e) = (info.run)(options, &mut evidence) {
        evidence.fail(format!("error: {e}"));
    }
    Ok(ClaimReport {
        id: info.id.to_string(),
        title: info.title.to_string(),
        verdict: evidence.verdict,
        witness: evidence.notes.join("; "),
        ms: start.elapsed().as_millis() as u64,
        tier: info.tier,
    })
}

/// Runs every claim of the tier (all claims for `None`) in parallel; the
/// reports keep registry order.
pub fn run_all(tier: Option<Tier>, options: &ClaimOptions) -> Vec<ClaimReport> {
    CLAIMS
        .par_iter()
        .filter(|c| tier.is_none_or(|t| c.tier == t))
        .map(|c| run_claim(c.id, options).expect("registered id"))
        .collect()
}

/// JSON array of reports; `ms` is zeroed unless `timings` is set so that
/// repeated runs serialize identically.
pub fn reports_to_json(reports: &[ClaimReport], timings: bool) -> String {
    let rows: Vec<ClaimReport> = reports
        .iter()
        .map(|r| ClaimReport {
            ms: if timings { r.ms } else { 0 },
            ..r.clone()
        })
        .collect();
    serde_json::to_string_pretty(&rows).expect("reports serialize")
}

/// Accumulated verdict and notes of one claim.
#[derive(Debug)]
pub(crate) struct Evidence {
    verdict: Verdict,
    notes: Vec<String>,
}

impl Default for Evidence {
    fn default() -> Self {
        Evidence {
            verdict: Verdict::Pass,
            notes: Vec::new(),
        }
    }
}

impl Evidence {
    pub(crate) fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub(crate) fn fail(&mut self, text: impl Into<String>) {
        self.verdict = Verdict::Fail;
        self.notes.push(format!("FAIL {}", text.into()));
    }

    pub(crate) fn inconclusive(&mut self, text: impl Into<String>) {
        if self.verdict == Verdict::Pass {
            self.verdict = Verdict::Inconclusive;
        }
        self.notes.push(format!("INCONCLUSIVE {}", text.into()));
    }

    /// Notes `text` when `ok`, otherwise records it as a failure.
    pub(crate) fn check(&mut self, ok: bool, text: impl Into<String>) {
        if ok {
            self.note(text);
        } else {
            self.fail(text);
        }
    }

    /// Checks `text` exhaustively in `s` and records whether it `should_hold`.
    pub(crate) fn identity<S: UnarySemigroup + ?Sized>(
        &mut self,
        s: &S,
        name: &str,
        text: &str,
        should_hold: bool,
        options: &ClaimOptions,
    ) -> Result<Option<Witness>> {
        let (u, v) = parse_identity(text, s.arity())?;
        let verdict = check_identity(s, &u, &v, options.assignment_budget)?;
        match &verdict {
            IdentityVerdict::Holds { assignments } => self.check(
                should_hold,
                format!("{name} satisfies {text} ({assignments} assignments)"),
            ),
            IdentityVerdict::Fails(w) => self.check(!should_hold, format!("{name} fails {text} at {}", w.describe(s))),
            IdentityVerdict::Inconclusive { space, budget } => {
                self.inconclusive(format!("{name}: {text} needs {space} assignments, budget {budget}"))
            }
        }
        Ok(verdict.witness().cloned())
    }

    /// Re-validates `map` as a morphism of the requested mode.
    pub(crate) fn morphism(
        &mut self,
        s: &FiniteUnarySemigroup,
        t: &FiniteUnarySemigroup,
        map: &[u32],
        mode: MorphismMode,
        name: &str,
    ) {
        let kind = match mode {
            MorphismMode::Onto => "onto homomorphism",
            MorphismMode::Isomorphism => "isomorphism",
        };
        match verify_morphism(s, t, map, mode) {
            Ok(()) => {
                let pairs: Vec<String> = s
                    .elements()
                    .map(|a| format!("{}->{}", s.label(a), t.label(map[a as usize])))
                    .collect();
                self.note(format!("{name}: verified {kind} {{{}}}", pairs.join(", ")));
            }
            Err(e) => self.fail(format!("{name}: {kind} rejected: {e}")),
        }
    }
}
