//! Reproducible audit runs, one per constructive ingredient.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow};
use serde::Serialize;
use serde_json::{json, Value};

use crate::definable::{
    alternative_constant, f_identity_holds, leading_constant, poly_f, verify_chain, w_member,
    Derivation,
};
use crate::enumerator::{
    default_order, family_set_with_domain, family_w_domain, is_galois_closed, is_totally_between,
    naive_box_scan, naive_radius, totally_bounded_box, BoxQuery,
};
use crate::error::{Error, Result};
use crate::field::{Element, FieldSpec};
use crate::formula::{define_set, parse, Assignment, Domains, FAMILY_FORMULA_SCOPED};
use crate::units::{
    hasse_square_decompose, is_unit, roots_of_unity, rou_boundary_check, standard_unit_sample,
    unit_power_in_k,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LemmaId {
    JrNumber,
    MuFinite,
    UnitPower,
    Hasse,
    Delta,
    FIdentity,
    WMember,
    Family,
}

impl LemmaId {
    pub const ALL: [LemmaId; 8] = [
        LemmaId::JrNumber,
        LemmaId::MuFinite,
        LemmaId::UnitPower,
        LemmaId::Hasse,
        LemmaId::Delta,
        LemmaId::FIdentity,
        LemmaId::WMember,
        LemmaId::Family,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            LemmaId::JrNumber => "jrnumber",
            LemmaId::MuFinite => "mu-finite",
            LemmaId::UnitPower => "unit-power",
            LemmaId::Hasse => "hasse",
            LemmaId::Delta => "delta",
            LemmaId::FIdentity => "f-identity",
            LemmaId::WMember => "w-member",
            LemmaId::Family => "family",
        }
    }
}

impl fmt::Display for LemmaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LemmaId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        LemmaId::ALL
            .into_iter()
            .find(|l| l.as_str() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown audit `{s}`")))
    }
}

impl Serialize for LemmaId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// Optional inputs; each audit reads the ones it needs and falls back to
/// fixed defaults, so a report records the values actually used.
#[derive(Clone, Debug, Default)]
pub struct AuditParams {
    pub primes: Option<Vec<u64>>,
    pub t: Option<u64>,
    pub maximal: bool,
    pub bound: Option<u64>,
    pub n: Option<u64>,
    pub k: Option<u64>,
    pub constant: Option<BigInt>,
    pub max_x: Option<u64>,
    pub p: Option<u64>,
    pub q: Option<u64>,
    pub pool: Option<(u64, u64)>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CaseOutcome {
    pub case: String,
    pub checks: BTreeMap<String, bool>,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
    pub passed: bool,
}

impl CaseOutcome {
    fn new(case: impl Into<String>, checks: &[(&str, bool)], detail: impl Into<String>) -> Self {
        let checks: BTreeMap<String, bool> =
            checks.iter().map(|(k, v)| (k.to_string(), *v)).collect();
        Self {
            case: case.into(),
            passed: checks.values().all(|&v| v),
            checks,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct AuditReport {
    pub lemma_id: LemmaId,
    pub parameters: BTreeMap<String, Value>,
    pub outcomes: Vec<CaseOutcome>,
    pub summary: Summary,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    /// Wall time; kept out of the JSON so reports are reproducible.
    #[serde(skip)]
    pub runtime_ms: u128,
}

impl AuditReport {
    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    /// `0` when every case passed, `1` otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.all_passed() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One line per case, then notes and the summary.
    pub fn table(&self) -> String {
        let mut out = format!("audit {}", self.lemma_id);
        for (k, v) in &self.parameters {
            out.push_str(&format!(" {k}={v}"));
        }
        out.push('\n');
        for o in &self.outcomes {
            let checks: Vec<String> = o
                .checks
                .iter()
                .map(|(k, v)| format!("{k}={}", if *v { "ok" } else { "FAIL" }))
                .collect();
            out.push_str(&format!(
                "{}  {}  {}",
                if o.passed { "PASS" } else { "FAIL" },
                o.case,
                checks.join(" ")
            ));
            if !o.detail.is_empty() {
                out.push_str(&format!("  [{}]", o.detail));
            }
            out.push('\n');
        }
        for note in &self.notes {
            out.push_str(&format!("note: {note}\n"));
        }
        out.push_str(&format!(
            "{} passed, {} failed, {} ms\n",
            self.summary.passed, self.summary.failed, self.runtime_ms
        ));
        out
    }
}

struct Draft {
    parameters: BTreeMap<String, Value>,
    outcomes: Vec<CaseOutcome>,
    notes: Vec<String>,
}

impl Draft {
    fn new() -> Self {
        Self {
            parameters: BTreeMap::new(),
            outcomes: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn param(&mut self, key: &str, value: Value) {
        self.parameters.insert(key.to_string(), value);
    }

    fn case(
        &mut self,
        case: impl Into<String>,
        checks: &[(&str, bool)],
        detail: impl Into<String>,
    ) {
        self.outcomes.push(CaseOutcome::new(case, checks, detail));
    }
}

pub fn run_audit(lemma: LemmaId, params: &AuditParams) -> Result<AuditReport> {
    let start = Instant::now();
    let mut d = Draft::new();
    match lemma {
        LemmaId::JrNumber => jrnumber(params, &mut d)?,
        LemmaId::MuFinite => mu_finite(params, &mut d)?,
        LemmaId::UnitPower => unit_power(params, &mut d)?,
        LemmaId::Hasse => hasse(&mut d)?,
        LemmaId::Delta => delta(params, &mut d)?,
        LemmaId::FIdentity => f_identity(params, &mut d)?,
        LemmaId::WMember => w_member_audit(params, &mut d)?,
        LemmaId::Family => family(params, &mut d)?,
    }
    let passed = d.outcomes.iter().filter(|o| o.passed).count();
    Ok(AuditReport {
        lemma_id: lemma,
        summary: Summary {
            passed,
            failed: d.outcomes.len() - passed,
        },
        parameters: d.parameters,
        outcomes: d.outcomes,
        notes: d.notes,
        runtime_ms: start.elapsed().as_millis(),
    })
}

fn positive(name: &str, value: u64) -> Result<u64> {
    if value == 0 {
        return Err(Error::InvalidParameter(format!(
            "--{name} must be positive"
        )));
    }
    Ok(value)
}

fn jrnumber(params: &AuditParams, d: &mut Draft) -> Result<()> {
    let primes = params.primes.clone().unwrap_or_else(|| vec![2]);
    let t = positive("t", params.t.unwrap_or(4))?;
    d.param("primes", json!(primes));
    d.param("t", json!(t));
    d.param("maximal", json!(params.maximal));
    let field = FieldSpec::new(&primes, false)?;
    let order = default_order(&field, params.maximal)?;
    let query = BoxQuery::up_to(order, BigRational::from_integer(t.into()))?;
    let found = totally_bounded_box(&query);
    let zero = BigRational::from_integer(0.into());
    for x in &found {
        let between = is_totally_between(x, &zero, query.upper());
        d.case(
            x.to_string(),
            &[("totally_between", between), ("integral", x.is_integral())],
            "",
        );
    }
    let radius = naive_radius(&query);
    let naive = naive_box_scan(&query, radius);
    let same = naive.len() == found.len() && naive.iter().all(|x| found.contains(x));
    d.case(
        "naive coordinate scan",
        &[("equal", same)],
        format!("{} elements, oracle radius {radius}", naive.len()),
    );
    d.case(
        "Galois closure",
        &[("closed", is_galois_closed(&found))],
        "",
    );
    d.notes
        .push(format!("{} elements with 0 << x << {t}", found.len()));
    Ok(())
}

fn mu_finite(params: &AuditParams, d: &mut Draft) -> Result<()> {
    let bound = params.bound.unwrap_or(200);
    d.param("bound", json!(bound));
    let report = roots_of_unity(bound)?;
    let n = report.order_n;
    let boundary = rou_boundary_check(&report)?;
    for (k, (root, record)) in report.roots.iter().zip(&boundary).enumerate() {
        let order = report.order_of(k);
        let power_one = root.pow(n).is_one();
        let exact_order = root.pow(order).is_one()
            && (1..order)
                .filter(|m| order % m == 0)
                .all(|m| !root.pow(m).is_one());
        d.case(
            format!("zeta^{k} = {root}"),
            &[
                ("power_N_is_one", power_one),
                ("exact_order", exact_order),
                ("t_in_closed_range", record.closed),
            ],
            format!(
                "order {order}, t = {}, {}",
                record.t_value,
                if record.strict { "strict" } else { "boundary" }
            ),
        );
    }
    let roots = &report.roots;
    let closed = roots.iter().all(|a| {
        roots.iter().all(|b| report.index_of(&(a * b)).is_some())
            && a.inv().is_ok_and(|inv| report.index_of(&inv).is_some())
    });
    let distinct = (0..roots.len()).all(|i| (0..i).all(|j| roots[i] != roots[j]));
    d.case(
        "group table",
        &[
            ("closed", closed),
            ("distinct", distinct),
            ("count_is_N", roots.len() as u64 == n),
        ],
        format!("N = {n}, host {}", report.host_field),
    );
    // an order m is realized iff some root has exactly that order, and
    // realized orders are the divisors of N
    let realized: Vec<u64> = (0..roots.len()).map(|k| report.order_of(k)).collect();
    let divisors_match = report
        .admissible_orders
        .iter()
        .all(|m| n % m == 0 && realized.contains(m))
        && (1..=n)
            .filter(|m| n % m == 0)
            .all(|m| report.admissible_orders.contains(&m));
    d.case(
        "admissible orders",
        &[("divisors_of_N", divisors_match)],
        format!("{:?}", report.admissible_orders),
    );
    let boundary_roots: Vec<String> = boundary
        .iter()
        .filter(|r| !r.strict)
        .map(|r| r.root.to_string())
        .collect();
    d.notes.push(format!(
        "t = 2 + w + 1/w touches the boundary of (0, 4) for w in {{{}}}",
        boundary_roots.join(", ")
    ));
    Ok(())
}

fn sample_n(params: &AuditParams) -> Result<u64> {
    match params.n {
        Some(n) => positive("N", n),
        None => Ok(roots_of_unity(200)?.order_n),
    }
}

fn unit_power(params: &AuditParams, d: &mut Draft) -> Result<()> {
    let n = sample_n(params)?;
    d.param("N", json!(n));
    d.param("sample", json!("standard-50"));
    for (j, u) in standard_unit_sample().iter().enumerate() {
        let record = unit_power_in_k(u, n);
        let integral = record.power.is_integral();
        let norm = record.power.norm();
        let norm_ok = norm.is_one() || (-norm).is_one();
        d.case(
            format!("#{j} {}", u.u),
            &[
                ("i_part_zero", record.in_real_subfield),
                ("unit", record.is_unit),
                ("integral", integral),
                ("norm_pm_one", norm_ok),
            ],
            "",
        );
    }
    Ok(())
}

fn hasse(d: &mut Draft) -> Result<()> {
    let roots = roots_of_unity(200)?;
    d.param("sample", json!("standard-50"));
    for (j, u) in standard_unit_sample().iter().enumerate() {
        let checks = match hasse_square_decompose(u, &roots) {
            None => vec![("found", false)],
            Some(h) => {
                let product = h.zeta.try_mul(&h.w)?;
                vec![
                    ("found", true),
                    ("square_matches", product.same_value(&u.u.square())),
                    ("w_real", !h.w.has_imaginary_part()),
                    ("w_unit", is_unit(&h.w).is_some()),
                    ("zeta_root", roots.index_of(&h.zeta).is_some()),
                ]
            }
        };
        d.case(format!("#{j} {}", u.u), &checks, "");
    }
    Ok(())
}

fn delta(params: &AuditParams, d: &mut Draft) -> Result<()> {
    let n = positive("N", params.n.unwrap_or(1))?;
    let k = positive("k", params.k.unwrap_or(2))?;
    d.param("N", json!(n));
    d.param("k", json!(k));
    let f = poly_f(n);
    let two_n = 2 * n as u32;
    let lead_expected = BigInt::one() << (2 * n) as usize;
    d.case(
        format!("f = {f}"),
        &[
            ("degree_2N", f.degree() == Some(2 * n as usize)),
            ("leading_2^2N", f.leading_coefficient() == lead_expected),
        ],
        "",
    );
    let kk = BigInt::from(k);
    let diff = f.delta_iter(&kk, 2 * n as usize);
    let expected = leading_constant(n) * kk.clone().pow(two_n);
    let value = diff.as_constant();
    d.case(
        format!("delta_{k}^{} f", 2 * n),
        &[
            ("constant", value.is_some()),
            ("equals_(2N)!2^2N k^2N", value.as_ref() == Some(&expected)),
        ],
        format!(
            "value {}",
            value
                .map(|v| v.to_string())
                .unwrap_or_else(|| diff.to_string())
        ),
    );
    let alternative = alternative_constant(n) * kk.pow(two_n);
    if alternative != expected {
        d.notes.push(format!(
            "the constant 2*(2N)! would give {alternative} here, not {expected}; it omits the factor a_2N/2 = 2^(2N-1)"
        ));
    }
    Ok(())
}

fn f_identity(params: &AuditParams, d: &mut Draft) -> Result<()> {
    let max_x = params.max_x.unwrap_or(20);
    let ns: Vec<u64> = match params.n {
        Some(n) => vec![positive("N", n)?],
        None => vec![1, 2, 3],
    };
    d.param("N", json!(ns));
    d.param("max_x", json!(max_x));
    for &n in &ns {
        for x in 0..=max_x {
            let holds = f_identity_holds(x, n)?;
            d.case(
                format!("N={n} x={x}"),
                &[("f(x) = u^2N + u^-2N", holds)],
                "",
            );
        }
    }
    Ok(())
}

fn w_member_audit(params: &AuditParams, d: &mut Draft) -> Result<()> {
    let n = positive("N", params.n.unwrap_or(1))?;
    let constant = params
        .constant
        .clone()
        .unwrap_or_else(|| leading_constant(n));
    let max_x = params.max_x.unwrap_or(100);
    d.param("N", json!(n));
    d.param("C", json!(constant.to_string()));
    d.param("max_x", json!(max_x));
    for x in 0..=max_x {
        match w_member(x, n, &constant)? {
            None => d.case(format!("x={x}"), &[("certified", false)], ""),
            Some(chain) => {
                let verified = verify_chain(&chain, n)?;
                let detail = match &chain.derivation {
                    Derivation::Sum {
                        terms, remainder, ..
                    } => {
                        let values: Vec<String> =
                            terms.iter().map(|t| t.target.to_string()).collect();
                        format!("terms [{}] + {remainder}", values.join(", "))
                    }
                    _ => String::new(),
                };
                d.case(
                    format!("x={x}"),
                    &[("certified", true), ("verified", verified)],
                    detail,
                );
            }
        }
    }
    if constant != leading_constant(n) {
        d.notes.push(format!(
            "C = {constant} differs from the verified constant {}",
            leading_constant(n)
        ));
    }
    Ok(())
}

fn family(params: &AuditParams, d: &mut Draft) -> Result<()> {
    let p = positive("p", params.p.unwrap_or(1))?;
    let q = positive("q", params.q.unwrap_or(5))?;
    let n = positive("N", params.n.unwrap_or(1))?;
    let (lo, hi) = params.pool.unwrap_or((0, q));
    d.param("p", json!(p));
    d.param("q", json!(q));
    d.param("N", json!(n));
    d.param("pool", json!(format!("{lo}..{hi}")));
    let rationals = FieldSpec::rationals();
    let pool: Vec<Element> = (lo..=hi)
        .map(|v| Element::from_integer(&rationals, v))
        .collect();
    let domain = family_w_domain(q, n)?;
    let fam = family_set_with_domain(p, q, &domain, &pool)?;

    let phi = parse(FAMILY_FORMULA_SCOPED).expect("built-in formula parses");
    let mut a = Assignment::new();
    a.insert("p".into(), Element::from_integer(&rationals, p));
    a.insert("q".into(), Element::from_integer(&rationals, q));
    let mut domains = Domains::new();
    domains.insert("W".into(), domain.elements());
    let defined = define_set(&phi, &a, "x", &pool, &domains)?;

    let bound = BigRational::from_integer(q.into());
    let zero = BigRational::from_integer(0.into());
    for x in &pool {
        let member = fam.members.iter().find(|m| &m.x == x);
        let by_formula = defined.contains(x);
        let mut checks = vec![("formula_agrees", member.is_some() == by_formula)];
        let mut detail = String::from("not a member");
        if let Some(m) = member {
            let px = x.scale(&BigRational::from_integer(p.into()));
            checks.push((
                "totally_between_0_q",
                is_totally_between(&px, &zero, &bound),
            ));
            detail = format!(
                "px = {} = {:?}, q - px = {:?}",
                m.px, m.px_squares, m.complement_squares
            );
        }
        d.case(format!("x={x}"), &checks, detail);
    }
    if p == 1 && lo == 0 && hi >= q && q >= 2 {
        d.case(
            "cardinality",
            &[("equals_q_minus_1", fam.members.len() as u64 == q - 1)],
            format!("{} members", fam.members.len()),
        );
    }
    d.notes.push(format!("W domain {:?}", domain.members));
    Ok(())
}
