//! Randomized exact identity checking.
//!
//! Every catalogued identity draws random homogeneous arguments from a
//! seeded generator, evaluates two or more expressions that must agree, and
//! compares them exactly. A trial's draws depend only on the suite seed, the
//! identity name and the trial index, so reports are reproducible
//! regardless of scheduling.

use std::fmt;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, Result};
use crate::extended::ExtendedClass;
use crate::kernel::{Element, Ring};
use crate::sample::{seeded_rng, DegreeWindow, MonomialTable};
use crate::StringAlgebra;

/// Kinds of random argument an identity can ask for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArgKind {
    /// A loop homology class.
    Loop,
    /// A class of constant loops, `ℍ*(M) ⊂ ℍ*(LM)`.
    ConstantLoop,
    /// A class of `H*(M)`.
    Base,
    /// A class of `H*(LM)`.
    Cohomology,
    /// A class of `H*(M) ⊕ ℍ*(LM)`: base only, loop only, or both parts in
    /// matching degree.
    Extended,
    /// Zero to three classes of `H*(M)`.
    BaseList,
}

/// A drawn argument or an evaluated side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Elem(Element),
    Ext(ExtendedClass),
    List(Vec<Element>),
}

impl Value {
    fn elem(&self) -> &Element {
        match self {
            Value::Elem(x) => x,
            other => panic!("expected an element, got {other}"),
        }
    }

    fn ext(&self) -> &ExtendedClass {
        match self {
            Value::Ext(x) => x,
            other => panic!("expected an extended class, got {other}"),
        }
    }

    fn list(&self) -> &[Element] {
        match self {
            Value::List(xs) => xs,
            other => panic!("expected a list, got {other}"),
        }
    }

    fn term_count(&self) -> usize {
        match self {
            Value::Elem(x) => x.len(),
            Value::Ext(x) => x.len(),
            Value::List(xs) => xs.iter().map(Element::len).sum(),
        }
    }

    /// The same value with its `n`-th term removed.
    fn without_term(&self, n: usize) -> Value {
        fn drop_nth(x: &Element, n: usize) -> Element {
            Element::from_terms(
                x.ring(),
                x.rank(),
                x.terms()
                    .enumerate()
                    .filter(|&(i, _)| i != n)
                    .map(|(_, (m, c))| (m.clone(), c.clone()))
                    .collect::<Vec<_>>(),
            )
        }
        match self {
            Value::Elem(x) => Value::Elem(drop_nth(x, n)),
            Value::Ext(x) => {
                let nb = x.base().len();
                let (base, lp) = if n < nb {
                    (drop_nth(x.base(), n), x.loop_part().clone())
                } else {
                    (x.base().clone(), drop_nth(x.loop_part(), n - nb))
                };
                Value::Ext(ExtendedClass::new(base, lp).expect("same rings"))
            }
            Value::List(xs) => {
                let mut rest = n;
                let mut out = Vec::with_capacity(xs.len());
                for x in xs {
                    if rest < x.len() && rest != usize::MAX {
                        out.push(drop_nth(x, rest));
                        rest = usize::MAX;
                    } else {
                        if rest != usize::MAX {
                            rest -= x.len();
                        }
                        out.push(x.clone());
                    }
                }
                Value::List(out)
            }
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Elem(x) => write!(f, "{x}"),
            Value::Ext(x) => write!(f, "{x}"),
            Value::List(xs) => {
                let parts: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
                write!(f, "[{}]", parts.join(", "))
            }
        }
    }
}

/// Groups of values that must all be equal.
pub type Chains = Vec<Vec<Value>>;

/// One catalogued identity.
pub struct IdentityCase {
    pub id: &'static str,
    pub statement: &'static str,
    pub args: &'static [ArgKind],
    pub evaluate: fn(&StringAlgebra, &[Value]) -> Chains,
}

impl IdentityCase {
    pub fn arity(&self) -> usize {
        self.args.len()
    }
}

impl fmt::Debug for IdentityCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IdentityCase")
            .field("id", &self.id)
            .field("args", &self.args)
            .finish()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// A failing trial: which draw, what was drawn, and the two sides that
/// disagreed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub trial: u64,
    pub inputs: Vec<String>,
    pub lhs: String,
    pub rhs: String,
    /// Inputs after greedily dropping terms that are not needed to fail.
    pub minimized: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub identity: String,
    pub model: String,
    pub trials: u64,
    pub seed: u64,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Witness>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn from_json_line(line: &str) -> Result<Self> {
        serde_json::from_str(line)
            .map_err(|e| AlgebraError::ReplayMismatch(format!("unreadable report: {e}")))
    }
}

/// Which identities to run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Selection {
    All,
    Only(Vec<String>),
}

impl Selection {
    pub fn only<S: AsRef<str>>(ids: &[S]) -> Self {
        Selection::Only(ids.iter().map(|s| s.as_ref().to_string()).collect())
    }
}

/// Sampling parameters shared by every argument.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteConfig {
    /// Defaults to `[-d-2, 2d]`.
    pub window: Option<DegreeWindow>,
    pub exponent_cap: u32,
    pub max_terms: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            window: None,
            exponent_cap: 6,
            max_terms: 3,
        }
    }
}

struct Samplers {
    lp: MonomialTable,
    constant: MonomialTable,
    base: MonomialTable,
    coh: MonomialTable,
    max_terms: usize,
}

impl Samplers {
    fn new(alg: &StringAlgebra, config: &SuiteConfig) -> Self {
        let model = alg.model();
        let d = model.dimension();
        let window = config.window.unwrap_or(DegreeWindow::new(-d - 2, 2 * d));
        let cap = config.exponent_cap;
        Samplers {
            lp: MonomialTable::new(model, Ring::LoopHomology, window, cap),
            constant: MonomialTable::new(model, Ring::LoopHomology, window, 0),
            base: MonomialTable::new(model, Ring::BaseCohomology, window, 0),
            coh: MonomialTable::new(model, Ring::Cohomology, window, cap),
            max_terms: config.max_terms,
        }
    }

    fn draw<R: Rng>(&self, rng: &mut R, kind: ArgKind) -> Value {
        let n = self.max_terms;
        match kind {
            ArgKind::Loop => Value::Elem(self.lp.sample(rng, n)),
            ArgKind::ConstantLoop => Value::Elem(self.constant.sample(rng, n)),
            ArgKind::Base => Value::Elem(self.base.sample(rng, n)),
            ArgKind::Cohomology => Value::Elem(self.coh.sample(rng, n)),
            ArgKind::BaseList => {
                let len = rng.gen_range(0..=3);
                Value::List((0..len).map(|_| self.base.sample(rng, n)).collect())
            }
            ArgKind::Extended => Value::Ext(match rng.gen_range(0..3) {
                0 => ExtendedClass::from_base(self.base.sample(rng, n)),
                1 => ExtendedClass::from_loop(self.lp.sample(rng, n)),
                _ => {
                    let base = self.base.sample(rng, n);
                    let k = self.base_degree(&base);
                    let lp = self.lp.sample_in_degree(rng, -k, n);
                    ExtendedClass::new(base, lp).expect("rings match")
                }
            }),
        }
    }

    fn base_degree(&self, x: &Element) -> i64 {
        // Degree of the first term; sampled classes are homogeneous.
        x.terms()
            .next()
            .map(|(m, _)| {
                self.base
                    .all()
                    .find(|(_, n)| *n == m)
                    .map(|(d, _)| d)
                    .expect("sampled monomial is in the table")
            })
            .unwrap_or(0)
    }
}

/// Runs catalogued identities against one algebra.
pub struct Suite<'a> {
    alg: &'a StringAlgebra,
    samplers: Samplers,
}

impl<'a> Suite<'a> {
    pub fn new(alg: &'a StringAlgebra) -> Self {
        Self::with_config(alg, SuiteConfig::default())
    }

    pub fn with_config(alg: &'a StringAlgebra, config: SuiteConfig) -> Self {
        Suite {
            alg,
            samplers: Samplers::new(alg, &config),
        }
    }

    /// One report per selected identity, in catalog order.
    pub fn run(&self, trials: u64, seed: u64, selection: &Selection) -> Result<Vec<CheckReport>> {
        assert!(trials >= 1, "at least one trial is required");
        let cases: Vec<&IdentityCase> = match selection {
            Selection::All => catalog().iter().collect(),
            Selection::Only(ids) => ids
                .iter()
                .map(|id| {
                    find_identity(id).ok_or_else(|| AlgebraError::UnknownIdentity(id.clone()))
                })
                .collect::<Result<_>>()?,
        };
        Ok(cases
            .par_iter()
            .map(|case| self.check(case, trials, seed))
            .collect())
    }

    /// Re-runs the identity and parameters recorded in a report.
    pub fn replay(&self, report: &CheckReport) -> Result<CheckReport> {
        if report.model != self.alg.model().name() {
            return Err(AlgebraError::ReplayMismatch(format!(
                "report is for model `{}`, not `{}`",
                report.model,
                self.alg.model().name()
            )));
        }
        let case = find_identity(&report.identity)
            .ok_or_else(|| AlgebraError::UnknownIdentity(report.identity.clone()))?;
        Ok(self.check(case, report.trials, report.seed))
    }

    /// The arguments drawn for one trial.
    pub fn draw(&self, case: &IdentityCase, seed: u64, trial: u64) -> Vec<Value> {
        let mut rng = seeded_rng(trial_seed(seed, case.id, trial));
        case.args
            .iter()
            .map(|&kind| self.samplers.draw(&mut rng, kind))
            .collect()
    }

    pub fn check(&self, case: &IdentityCase, trials: u64, seed: u64) -> CheckReport {
        let mut report = CheckReport {
            identity: case.id.to_string(),
            model: self.alg.model().name().to_string(),
            trials,
            seed,
            status: Status::Pass,
            witness: None,
        };
        for trial in 0..trials {
            let args = self.draw(case, seed, trial);
            if let Some((lhs, rhs)) = first_mismatch(self.alg, case, &args) {
                let minimized = minimize(self.alg, case, args.clone());
                report.status = Status::Fail;
                report.witness = Some(Witness {
                    trial,
                    inputs: args.iter().map(Value::to_string).collect(),
                    lhs: lhs.to_string(),
                    rhs: rhs.to_string(),
                    minimized: minimized.iter().map(Value::to_string).collect(),
                });
                break;
            }
        }
        report
    }
}

/// Runs the suite on `alg` with default sampling parameters.
pub fn run_suite(
    alg: &StringAlgebra,
    trials: u64,
    seed: u64,
    selection: &Selection,
) -> Result<Vec<CheckReport>> {
    Suite::new(alg).run(trials, seed, selection)
}

pub fn replay(alg: &StringAlgebra, report: &CheckReport) -> Result<CheckReport> {
    Suite::new(alg).replay(report)
}

fn first_mismatch(
    alg: &StringAlgebra,
    case: &IdentityCase,
    args: &[Value],
) -> Option<(Value, Value)> {
    for chain in (case.evaluate)(alg, args) {
        let (head, rest) = chain.split_first()?;
        if let Some(other) = rest.iter().find(|v| *v != head) {
            return Some((head.clone(), other.clone()));
        }
    }
    None
}

fn minimize(alg: &StringAlgebra, case: &IdentityCase, mut args: Vec<Value>) -> Vec<Value> {
    loop {
        let mut shrunk = false;
        for i in 0..args.len() {
            let mut n = 0;
            while n < args[i].term_count() {
                let mut candidate = args.clone();
                candidate[i] = args[i].without_term(n);
                if first_mismatch(alg, case, &candidate).is_some() {
                    args = candidate;
                    shrunk = true;
                } else {
                    n += 1;
                }
            }
        }
        if !shrunk {
            return args;
        }
    }
}

fn fnv1a(text: &str) -> u64 {
    text.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ u64::from(b)).wrapping_mul(0x0000_0100_0000_01b3)
    })
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of one trial's draws.
pub fn trial_seed(seed: u64, identity: &str, trial: u64) -> u64 {
    splitmix(splitmix(seed ^ fnv1a(identity)).wrapping_add(trial))
}

pub fn find_identity(id: &str) -> Option<&'static IdentityCase> {
    catalog().iter().find(|c| c.id == id)
}

pub fn catalog() -> &'static [IdentityCase] {
    &CATALOG
}

// ---------------------------------------------------------------------------
// Catalog
// ---------------------------------------------------------------------------

/// Koszul parity of a homogeneous element (0 for zero).
fn par(x: &Element) -> usize {
    x.terms().next().map_or(0, |(m, _)| m.parity() as usize)
}

fn ext_par(x: &ExtendedClass) -> usize {
    par(x.base()).max(par(x.loop_part()))
}

fn odd(e: usize) -> bool {
    e % 2 == 1
}

fn el(x: Element) -> Value {
    Value::Elem(x)
}

fn ex(x: ExtendedClass) -> Value {
    Value::Ext(x)
}

use ArgKind::*;

const LLL: &[ArgKind] = &[Loop, Loop, Loop];
const LL: &[ArgKind] = &[Loop, Loop];
const BLL: &[ArgKind] = &[Base, Loop, Loop];
const BBL: &[ArgKind] = &[Base, Base, Loop];
const EEE: &[ArgKind] = &[Extended, Extended, Extended];
const EE: &[ArgKind] = &[Extended, Extended];

static CATALOG: [IdentityCase; 43] = [
    // Loop homology as a BV algebra.
    IdentityCase {
        id: "loop-commutativity",
        statement: "b·c = (-1)^{|b||c|} c·b",
        args: LL,
        evaluate: |alg, x| {
            let (b, c) = (x[0].elem(), x[1].elem());
            vec![vec![
                el(alg.loop_product(b, c)),
                el(alg.loop_product(c, b).signed(odd(par(b) * par(c)))),
            ]]
        },
    },
    IdentityCase {
        id: "loop-associativity",
        statement: "(a·b)·c = a·(b·c)",
        args: LLL,
        evaluate: |alg, x| {
            let (a, b, c) = (x[0].elem(), x[1].elem(), x[2].elem());
            vec![vec![
                el(alg.loop_product(&alg.loop_product(a, b), c)),
                el(alg.loop_product(a, &alg.loop_product(b, c))),
            ]]
        },
    },
    IdentityCase {
        id: "loop-unit",
        statement: "s_*[M]·b = b·s_*[M] = b",
        args: &[Loop],
        evaluate: |alg, x| {
            let b = x[0].elem();
            let one = alg.loop_unit();
            vec![vec![
                el(alg.loop_product(&one, b)),
                el(alg.loop_product(b, &one)),
                el(b.clone()),
            ]]
        },
    },
    IdentityCase {
        id: "bv-identity",
        statement: "Δ(a·b) = Δa·b + (-1)^|a| a·Δb + (-1)^|a| {a,b}",
        args: LL,
        evaluate: |alg, x| {
            let (a, b) = (x[0].elem(), x[1].elem());
            let s = odd(par(a));
            let rhs = &(&alg.loop_product(&alg.bv_delta(a), b)
                + &alg.loop_product(a, &alg.bv_delta(b)).signed(s))
                + &alg.loop_bracket(a, b).signed(s);
            vec![vec![el(alg.bv_delta(&alg.loop_product(a, b))), el(rhs)]]
        },
    },
    IdentityCase {
        id: "poisson",
        statement: "{a, b·c} = {a,b}·c + (-1)^{|b|(|a|+1)} b·{a,c}",
        args: LLL,
        evaluate: |alg, x| {
            let (a, b, c) = (x[0].elem(), x[1].elem(), x[2].elem());
            let rhs = &alg.loop_product(&alg.loop_bracket(a, b), c)
                + &alg
                    .loop_product(b, &alg.loop_bracket(a, c))
                    .signed(odd(par(b) * (par(a) + 1)));
            vec![vec![
                el(alg.loop_bracket(a, &alg.loop_product(b, c))),
                el(rhs),
            ]]
        },
    },
    IdentityCase {
        id: "bracket-antisymmetry",
        statement: "{a,b} = -(-1)^{(|a|+1)(|b|+1)} {b,a}",
        args: LL,
        evaluate: |alg, x| {
            let (a, b) = (x[0].elem(), x[1].elem());
            let flip = !odd((par(a) + 1) * (par(b) + 1));
            vec![vec![
                el(alg.loop_bracket(a, b)),
                el(alg.loop_bracket(b, a).signed(flip)),
            ]]
        },
    },
    IdentityCase {
        id: "jacobi",
        statement: "{a,{b,c}} = {{a,b},c} + (-1)^{(|a|+1)(|b|+1)} {b,{a,c}}",
        args: LLL,
        evaluate: |alg, x| {
            let (a, b, c) = (x[0].elem(), x[1].elem(), x[2].elem());
            let rhs = &alg.loop_bracket(&alg.loop_bracket(a, b), c)
                + &alg
                    .loop_bracket(b, &alg.loop_bracket(a, c))
                    .signed(odd((par(a) + 1) * (par(b) + 1)));
            vec![vec![
                el(alg.loop_bracket(a, &alg.loop_bracket(b, c))),
                el(rhs),
            ]]
        },
    },
    IdentityCase {
        id: "delta-squared",
        statement: "Δ∘Δ = 0",
        args: &[Loop],
        evaluate: |alg, x| {
            let b = x[0].elem();
            vec![vec![
                el(alg.bv_delta(&alg.bv_delta(b))),
                el(alg.zero(Ring::LoopHomology)),
            ]]
        },
    },
    IdentityCase {
        id: "operator-poisson",
        statement: "[D_a, M_b] = M_{{a,b}} with D_a = {a,-}, M_b = b·-",
        args: LLL,
        evaluate: |alg, x| {
            let (a, b, c) = (x[0].elem(), x[1].elem(), x[2].elem());
            // |D_a| = |a| + 1, |M_b| = |b|.
            let commutator = &alg.loop_bracket(a, &alg.loop_product(b, c))
                - &alg
                    .loop_product(b, &alg.loop_bracket(a, c))
                    .signed(odd((par(a) + 1) * par(b)));
            vec![vec![
                el(commutator),
                el(alg.loop_product(&alg.loop_bracket(a, b), c)),
            ]]
        },
    },
    IdentityCase {
        id: "operator-jacobi",
        statement: "[D_a, D_b] = D_{{a,b}}",
        args: LLL,
        evaluate: |alg, x| {
            let (a, b, c) = (x[0].elem(), x[1].elem(), x[2].elem());
            let commutator = &alg.loop_bracket(a, &alg.loop_bracket(b, c))
                - &alg
                    .loop_bracket(b, &alg.loop_bracket(a, c))
                    .signed(odd((par(a) + 1) * (par(b) + 1)));
            vec![vec![
                el(commutator),
                el(alg.loop_bracket(&alg.loop_bracket(a, b), c)),
            ]]
        },
    },
    IdentityCase {
        id: "constant-loop-inclusion",
        statement: "s_* is a unital ring map and Δ∘s_* = 0",
        args: &[ConstantLoop, ConstantLoop],
        evaluate: |alg, x| {
            let (p, q) = (x[0].elem(), x[1].elem());
            let s = |y: &Element| alg.s_star(y).expect("constant loop class");
            let one = alg.loop_unit();
            vec![
                vec![el(s(&(p * q))), el(alg.loop_product(&s(p), &s(q)))],
                vec![el(s(&one)), el(one.clone())],
                vec![
                    el(alg.bv_delta(&s(p))),
                    el(alg.bv_delta(&one)),
                    el(alg.zero(Ring::LoopHomology)),
                ],
            ]
        },
    },
    IdentityCase {
        id: "poincare-duality-multiplicative",
        statement: "D(a·b) = D(a) ∪ D(b), D⁻¹∘D = id",
        args: &[ConstantLoop, ConstantLoop],
        evaluate: |alg, x| {
            let (p, q) = (x[0].elem(), x[1].elem());
            let d = |y: &Element| alg.poincare_dual(y).expect("constant loop class");
            vec![
                vec![el(d(&alg.loop_product(p, q))), el(alg.cup(&d(p), &d(q)))],
                vec![
                    el(alg.poincare_dual_inverse(&d(p)).expect("base class")),
                    el(p.clone()),
                ],
            ]
        },
    },
    IdentityCase {
        id: "intersection-cap-commute",
        statement: "α∩(b·c) = (α∩b)·c = (-1)^{|α||b|} b·(α∩c) on constant loops, D(α∩b) = α∪D(b)",
        args: &[Base, ConstantLoop, ConstantLoop],
        evaluate: |alg, x| {
            let (alpha, b, c) = (x[0].elem(), x[1].elem(), x[2].elem());
            vec![
                vec![
                    el(alg.cap(alpha, &alg.loop_product(b, c))),
                    el(alg.loop_product(&alg.cap(alpha, b), c)),
                    el(alg
                        .loop_product(b, &alg.cap(alpha, c))
                        .signed(odd(par(alpha) * par(b)))),
                ],
                vec![
                    el(alg
                        .poincare_dual(&alg.cap(alpha, b))
                        .expect("constant loop class")),
                    el(alg.cup(alpha, &alg.poincare_dual(b).expect("constant loop class"))),
                ],
            ]
        },
    },
    // Cohomology of the loop space.
    IdentityCase {
        id: "cup-delta-derivation",
        statement: "Δ(α∪β) = Δα∪β + (-1)^|α| α∪Δβ",
        args: &[Cohomology, Cohomology],
        evaluate: |alg, x| {
            let (a, b) = (x[0].elem(), x[1].elem());
            let rhs =
                &alg.cup(&alg.coh_delta(a), b) + &alg.cup(a, &alg.coh_delta(b)).signed(odd(par(a)));
            vec![vec![el(alg.coh_delta(&alg.cup(a, b))), el(rhs)]]
        },
    },
    IdentityCase {
        id: "cup-delta-squared",
        statement: "Δ∘Δ = 0 on H*(LM)",
        args: &[Cohomology],
        evaluate: |alg, x| {
            let a = x[0].elem();
            vec![vec![
                el(alg.coh_delta(&alg.coh_delta(a))),
                el(alg.zero(Ring::Cohomology)),
            ]]
        },
    },
    // Cap products and the loop algebra.
    IdentityCase {
        id: "cap-commutes-with-product",
        statement: "α∩(b·c) = (α∩b)·c = (-1)^{|α||b|} b·(α∩c)",
        args: BLL,
        evaluate: |alg, x| {
            let (alpha, b, c) = (x[0].elem(), x[1].elem(), x[2].elem());
            vec![vec![
                el(alg.cap(alpha, &alg.loop_product(b, c))),
                el(alg.loop_product(&alg.cap(alpha, b), c)),
                el(alg
                    .loop_product(b, &alg.cap(alpha, c))
                    .signed(odd(par(alpha) * par(b)))),
            ]]
        },
    },
    IdentityCase {
        id: "cap-derivation-on-product",
        statement: "Δα∩(b·c) = (Δα∩b)·c + (-1)^{(|α|-1)|b|} b·(Δα∩c)",
        args: BLL,
        evaluate: |alg, x| {
            let (alpha, b, c) = (x[0].elem(), x[1].elem(), x[2].elem());
            let dalpha = alg.coh_delta(&alg.pullback(alpha));
            let rhs = &alg.loop_product(&alg.cap(&dalpha, b), c)
                + &alg
                    .loop_product(b, &alg.cap(&dalpha, c))
                    .signed(odd((par(alpha) + 1) * par(b)));
            vec![vec![el(alg.cap(&dalpha, &alg.loop_product(b, c))), el(rhs)]]
        },
    },
    IdentityCase {
        id: "cap-derivation-on-bracket",
        statement: "Δα∩{b,c} = {Δα∩b, c} + (-1)^{(|α|-1)(|b|+1)} {b, Δα∩c}",
        args: BLL,
        evaluate: |alg, x| {
            let (alpha, b, c) = (x[0].elem(), x[1].elem(), x[2].elem());
            let dalpha = alg.coh_delta(&alg.pullback(alpha));
            let rhs = &alg.loop_bracket(&alg.cap(&dalpha, b), c)
                + &alg
                    .loop_bracket(b, &alg.cap(&dalpha, c))
                    .signed(odd((par(alpha) + 1) * (par(b) + 1)));
            vec![vec![el(alg.cap(&dalpha, &alg.loop_bracket(b, c))), el(rhs)]]
        },
    },
    IdentityCase {
        id: "delta-derivation-on-cap",
        statement: "Δ(ω∩b) = Δω∩b + (-1)^|ω| ω∩Δb for every ω in H*(LM)",
        args: &[Cohomology, Loop],
        evaluate: |alg, x| {
            let (omega, b) = (x[0].elem(), x[1].elem());
            let rhs = &alg.cap(&alg.coh_delta(omega), b)
                + &alg.cap(omega, &alg.bv_delta(b)).signed(odd(par(omega)));
            vec![vec![el(alg.bv_delta(&alg.cap(omega, b))), el(rhs)]]
        },
    },
    IdentityCase {
        id: "cap-delta-constant-loops",
        statement: "Δα∩x = 0 for constant-loop classes x",
        args: &[Base, ConstantLoop],
        evaluate: |alg, x| {
            let (alpha, p) = (x[0].elem(), x[1].elem());
            let dalpha = alg.coh_delta(&alg.pullback(alpha));
            vec![vec![
                el(alg.cap(&dalpha, p)),
                el(alg.zero(Ring::LoopHomology)),
            ]]
        },
    },
    // Poisson and Jacobi identities in H*(M) ⊕ ℍ*(LM).
    IdentityCase {
        id: "poisson-base-base-loop",
        statement: "{α, β·c} = {α,β}·c + (-1)^{|β|(|α|-1)} β·{α,c}",
        args: BBL,
        evaluate: |alg, x| {
            let (a, b, c) = base_base_loop(x);
            let (pa, pb) = (par(x[0].elem()), par(x[1].elem()));
            let lhs = alg.extended_bracket(&a, &alg.extended_product(&b, &c));
            let rhs = &alg.extended_product(&alg.extended_bracket(&a, &b), &c)
                + &alg
                    .extended_product(&b, &alg.extended_bracket(&a, &c))
                    .signed(odd(pb * (pa + 1)));
            vec![vec![ex(lhs), ex(rhs)]]
        },
    },
    IdentityCase {
        id: "poisson-cup-loop",
        statement: "{αβ, c} = α·{β,c} + (-1)^{|α||β|} β·{α,c}",
        args: BBL,
        evaluate: |alg, x| {
            let (a, b, c) = base_base_loop(x);
            let (pa, pb) = (par(x[0].elem()), par(x[1].elem()));
            let lhs = alg.extended_bracket(&alg.extended_product(&a, &b), &c);
            let rhs = &alg.extended_product(&a, &alg.extended_bracket(&b, &c))
                + &alg
                    .extended_product(&b, &alg.extended_bracket(&a, &c))
                    .signed(odd(pa * pb));
            vec![vec![ex(lhs), ex(rhs)]]
        },
    },
    IdentityCase {
        id: "poisson-base-loop-loop",
        statement: "{α, b·c} = {α,b}·c + (-1)^{|b|(|α|-1)} b·{α,c}",
        args: BLL,
        evaluate: |alg, x| {
            let (a, b, c) = base_loop_loop(x);
            let (pa, pb) = (par(x[0].elem()), par(x[1].elem()));
            let lhs = alg.extended_bracket(&a, &alg.extended_product(&b, &c));
            let rhs = &alg.extended_product(&alg.extended_bracket(&a, &b), &c)
                + &alg
                    .extended_product(&b, &alg.extended_bracket(&a, &c))
                    .signed(odd(pb * (pa + 1)));
            vec![vec![ex(lhs), ex(rhs)]]
        },
    },
    IdentityCase {
        id: "poisson-cap-bracket",
        statement:
            "{α·b, c} = α·{b,c} + (-1)^{|b|(|c|+1)} {α,c}·b = α·{b,c} + (-1)^{|α||b|} b·{α,c}",
        args: BLL,
        evaluate: |alg, x| {
            let (a, b, c) = base_loop_loop(x);
            let (pa, pb, pc) = (par(x[0].elem()), par(x[1].elem()), par(x[2].elem()));
            let lhs = alg.extended_bracket(&alg.extended_product(&a, &b), &c);
            let a_bc = alg.extended_product(&a, &alg.extended_bracket(&b, &c));
            let first = &a_bc
                + &alg
                    .extended_product(&alg.extended_bracket(&a, &c), &b)
                    .signed(odd(pb * (pc + 1)));
            let second = &a_bc
                + &alg
                    .extended_product(&b, &alg.extended_bracket(&a, &c))
                    .signed(odd(pa * pb));
            vec![vec![ex(lhs), ex(first), ex(second)]]
        },
    },
    IdentityCase {
        id: "jacobi-base-base-loop",
        statement: "{α,{β,c}} = {{α,β},c} + (-1)^{(|α|-1)(|β|-1)} {β,{α,c}}",
        args: BBL,
        evaluate: |alg, x| {
            let (a, b, c) = base_base_loop(x);
            let (pa, pb) = (par(x[0].elem()), par(x[1].elem()));
            let lhs = alg.extended_bracket(&a, &alg.extended_bracket(&b, &c));
            let rhs = &alg.extended_bracket(&alg.extended_bracket(&a, &b), &c)
                + &alg
                    .extended_bracket(&b, &alg.extended_bracket(&a, &c))
                    .signed(odd((pa + 1) * (pb + 1)));
            vec![vec![ex(lhs), ex(rhs)]]
        },
    },
    IdentityCase {
        id: "jacobi-extended",
        statement: "{α,{b,c}} = {{α,b},c} + (-1)^{(|α|-1)(|b|+1)} {b,{α,c}}",
        args: BLL,
        evaluate: |alg, x| {
            let (a, b, c) = base_loop_loop(x);
            let (pa, pb) = (par(x[0].elem()), par(x[1].elem()));
            let lhs = alg.extended_bracket(&a, &alg.extended_bracket(&b, &c));
            let rhs = &alg.extended_bracket(&alg.extended_bracket(&a, &b), &c)
                + &alg
                    .extended_bracket(&b, &alg.extended_bracket(&a, &c))
                    .signed(odd((pa + 1) * (pb + 1)));
            vec![vec![ex(lhs), ex(rhs)]]
        },
    },
    // The BV axioms on random elements of H*(M) ⊕ ℍ*(LM).
    IdentityCase {
        id: "extended-commutativity",
        statement: "X·Y = (-1)^{|X||Y|} Y·X",
        args: EE,
        evaluate: |alg, x| {
            let (a, b) = (x[0].ext(), x[1].ext());
            vec![vec![
                ex(alg.extended_product(a, b)),
                ex(alg
                    .extended_product(b, a)
                    .signed(odd(ext_par(a) * ext_par(b)))),
            ]]
        },
    },
    IdentityCase {
        id: "extended-associativity",
        statement: "(X·Y)·Z = X·(Y·Z)",
        args: EEE,
        evaluate: |alg, x| {
            let (a, b, c) = (x[0].ext(), x[1].ext(), x[2].ext());
            vec![vec![
                ex(alg.extended_product(&alg.extended_product(a, b), c)),
                ex(alg.extended_product(a, &alg.extended_product(b, c))),
            ]]
        },
    },
    IdentityCase {
        id: "extended-unit",
        statement: "1·X = X·1 = X with 1 ∈ H⁰(M)",
        args: &[Extended],
        evaluate: |alg, x| {
            let a = x[0].ext();
            let one = alg.extended_unit();
            vec![vec![
                ex(alg.extended_product(&one, a)),
                ex(alg.extended_product(a, &one)),
                ex(a.clone()),
            ]]
        },
    },
    IdentityCase {
        id: "extended-bv-identity",
        statement: "𝚫(X·Y) = 𝚫X·Y + (-1)^|X| X·𝚫Y + (-1)^|X| {X,Y}",
        args: EE,
        evaluate: |alg, x| {
            let (a, b) = (x[0].ext(), x[1].ext());
            let s = odd(ext_par(a));
            let rhs = &(&alg.extended_product(&alg.extended_delta(a), b)
                + &alg.extended_product(a, &alg.extended_delta(b)).signed(s))
                + &alg.extended_bracket(a, b).signed(s);
            vec![vec![
                ex(alg.extended_delta(&alg.extended_product(a, b))),
                ex(rhs),
            ]]
        },
    },
    IdentityCase {
        id: "extended-poisson",
        statement: "{X, Y·Z} = {X,Y}·Z + (-1)^{|Y|(|X|+1)} Y·{X,Z}",
        args: EEE,
        evaluate: |alg, x| {
            let (a, b, c) = (x[0].ext(), x[1].ext(), x[2].ext());
            let rhs = &alg.extended_product(&alg.extended_bracket(a, b), c)
                + &alg
                    .extended_product(b, &alg.extended_bracket(a, c))
                    .signed(odd(ext_par(b) * (ext_par(a) + 1)));
            vec![vec![
                ex(alg.extended_bracket(a, &alg.extended_product(b, c))),
                ex(rhs),
            ]]
        },
    },
    IdentityCase {
        id: "extended-bracket-antisymmetry",
        statement: "{X,Y} = -(-1)^{(|X|+1)(|Y|+1)} {Y,X}",
        args: EE,
        evaluate: |alg, x| {
            let (a, b) = (x[0].ext(), x[1].ext());
            let flip = !odd((ext_par(a) + 1) * (ext_par(b) + 1));
            vec![vec![
                ex(alg.extended_bracket(a, b)),
                ex(alg.extended_bracket(b, a).signed(flip)),
            ]]
        },
    },
    IdentityCase {
        id: "extended-jacobi",
        statement: "{X,{Y,Z}} = {{X,Y},Z} + (-1)^{(|X|+1)(|Y|+1)} {Y,{X,Z}}",
        args: EEE,
        evaluate: |alg, x| {
            let (a, b, c) = (x[0].ext(), x[1].ext(), x[2].ext());
            let rhs = &alg.extended_bracket(&alg.extended_bracket(a, b), c)
                + &alg
                    .extended_bracket(b, &alg.extended_bracket(a, c))
                    .signed(odd((ext_par(a) + 1) * (ext_par(b) + 1)));
            vec![vec![
                ex(alg.extended_bracket(a, &alg.extended_bracket(b, c))),
                ex(rhs),
            ]]
        },
    },
    IdentityCase {
        id: "extended-delta-squared",
        statement: "𝚫∘𝚫 = 0",
        args: &[Extended],
        evaluate: |alg, x| {
            let a = x[0].ext();
            vec![vec![
                ex(alg.extended_delta(&alg.extended_delta(a))),
                ex(alg.extended_zero()),
            ]]
        },
    },
    IdentityCase {
        id: "bracket-product-exchange",
        statement: "{α,b·c} + (-1)^|b| α·{b,c} = {α,b}·c + (-1)^|b| {α·b,c} \
                    = (-1)^{(|α|+1)|b|} (b·{α,c} + (-1)^|α| {b,α·c})",
        args: BLL,
        evaluate: |alg, x| {
            let (a, b, c) = base_loop_loop(x);
            let (pa, pb) = (par(x[0].elem()), par(x[1].elem()));
            let sb = odd(pb);
            let p = |x: &ExtendedClass, y: &ExtendedClass| alg.extended_product(x, y);
            let br = |x: &ExtendedClass, y: &ExtendedClass| alg.extended_bracket(x, y);
            let first = &br(&a, &p(&b, &c)) + &p(&a, &br(&b, &c)).signed(sb);
            let second = &p(&br(&a, &b), &c) + &br(&p(&a, &b), &c).signed(sb);
            let third = (&p(&b, &br(&a, &c)) + &br(&b, &p(&a, &c)).signed(odd(pa)))
                .signed(odd((pa + 1) * pb));
            vec![vec![ex(first), ex(second), ex(third)]]
        },
    },
    // Cap products through the BV structure.
    IdentityCase {
        id: "cap-dual-class",
        statement: "α∩b = a·b with a = D⁻¹(α)",
        args: &[Base, Loop],
        evaluate: |alg, x| {
            let (alpha, b) = (x[0].elem(), x[1].elem());
            let a = alg.poincare_dual_inverse(alpha).expect("base class");
            vec![vec![el(alg.cap(alpha, b)), el(alg.loop_product(&a, b))]]
        },
    },
    IdentityCase {
        id: "cap-delta-class",
        statement: "(-1)^|α| Δα∩b = {a,b} with a = D⁻¹(α)",
        args: &[Base, Loop],
        evaluate: |alg, x| {
            let (alpha, b) = (x[0].elem(), x[1].elem());
            let a = alg.poincare_dual_inverse(alpha).expect("base class");
            let lhs = alg
                .cap(&alg.coh_delta(&alg.pullback(alpha)), b)
                .signed(odd(par(alpha)));
            vec![vec![el(lhs), el(alg.loop_bracket(&a, b))]]
        },
    },
    IdentityCase {
        id: "cap-nested-brackets",
        statement: "(α_0 ∪ Δα_1 ∪ Δα_2)∩b = (-1)^{|a_1|+|a_2|} a_0·{a_1,{a_2,b}}",
        args: &[Base, Base, Base, Loop],
        evaluate: |alg, x| {
            let (a0, a1, a2, b) = (x[0].elem(), x[1].elem(), x[2].elem(), x[3].elem());
            let omega = alg.cup(
                &alg.cup(&alg.pullback(a0), &alg.coh_delta(&alg.pullback(a1))),
                &alg.coh_delta(&alg.pullback(a2)),
            );
            let dual = |y: &Element| alg.poincare_dual_inverse(y).expect("base class");
            let nested = alg.loop_product(
                &dual(a0),
                &alg.loop_bracket(&dual(a1), &alg.loop_bracket(&dual(a2), b)),
            );
            vec![vec![
                el(alg.cap(&omega, b)),
                el(nested.signed(odd(par(a1) + par(a2)))),
            ]]
        },
    },
    IdentityCase {
        id: "cap-bracket-order-independence",
        statement: "{a,{a',b}} = (-1)^{(|a|+1)(|a'|+1)} {a',{a,b}} for constant-loop a, a'",
        args: &[ConstantLoop, ConstantLoop, Loop],
        evaluate: |alg, x| {
            let (a, a2, b) = (x[0].elem(), x[1].elem(), x[2].elem());
            vec![vec![
                el(alg.loop_bracket(a, &alg.loop_bracket(a2, b))),
                el(alg
                    .loop_bracket(a2, &alg.loop_bracket(a, b))
                    .signed(odd((par(a) + 1) * (par(a2) + 1)))),
            ]]
        },
    },
    IdentityCase {
        id: "cap-module-axiom",
        statement: "(ω_1∪ω_2)∩b = ω_1∩(ω_2∩b) and 1∩b = b",
        args: &[Cohomology, Cohomology, Loop],
        evaluate: |alg, x| {
            let (w1, w2, b) = (x[0].elem(), x[1].elem(), x[2].elem());
            let one = alg.one(Ring::Cohomology);
            vec![
                vec![
                    el(alg.cap(&alg.cup(w1, w2), b)),
                    el(alg.cap(w1, &alg.cap(w2, b))),
                ],
                vec![el(alg.cap(&one, b)), el(b.clone())],
            ]
        },
    },
    IdentityCase {
        id: "cap-intertwiner",
        statement: "{(α,0),(0,b)} = (0,{a,b}) and (α,0)·(0,b) = (0,a·b) with a = D⁻¹(α)",
        args: &[Base, Loop],
        evaluate: |alg, x| {
            let (alpha, b) = (x[0].elem(), x[1].elem());
            let a = alg.poincare_dual_inverse(alpha).expect("base class");
            let (ea, eb) = (
                ExtendedClass::from_base(alpha.clone()),
                ExtendedClass::from_loop(b.clone()),
            );
            vec![
                vec![
                    ex(alg.extended_bracket(&ea, &eb)),
                    ex(ExtendedClass::from_loop(alg.loop_bracket(&a, b))),
                ],
                vec![
                    ex(alg.extended_product(&ea, &eb)),
                    ex(ExtendedClass::from_loop(alg.loop_product(&a, b))),
                ],
            ]
        },
    },
    IdentityCase {
        id: "loop-intersection",
        statement: "(-1)^{Σ j|β_j| - s} (α_1⋯α_r'·Δβ_1⋯Δβ_s)∩b \
                    = (-1)^{Σ j|β_j| - s + Σ|β_j|} a_1⋯a_r'·{b_1,{…{b_s,b}…}}",
        args: &[BaseList, BaseList, Loop],
        evaluate: |alg, x| {
            let (at, free, b) = (x[0].list(), x[1].list(), x[2].elem());
            let result = alg
                .loop_intersection(at, free, b)
                .expect("homogeneous classes");
            let degree = |y: &Element| alg.model().degree(y).value().unwrap_or(0);
            let exponent: i64 = free
                .iter()
                .enumerate()
                .map(|(j, beta)| (j as i64 + 1) * degree(beta))
                .sum::<i64>()
                - free.len() as i64;
            let mut omega = alg.one(Ring::Cohomology);
            for alpha in at {
                omega = alg.cup(&omega, &alg.pullback(alpha));
            }
            for beta in free {
                omega = alg.cup(&omega, &alg.coh_delta(&alg.pullback(beta)));
            }
            let by_cap = alg.cap(&omega, b).signed(exponent % 2 != 0);
            let dual = |y: &Element| alg.poincare_dual_inverse(y).expect("base class");
            let mut nested = b.clone();
            for beta in free.iter().rev() {
                nested = alg.loop_bracket(&dual(beta), &nested);
            }
            let mut prefix = alg.loop_unit();
            for alpha in at {
                prefix = alg.loop_product(&prefix, &dual(alpha));
            }
            let total: i64 = free.iter().map(degree).sum();
            let by_brackets = alg
                .loop_product(&prefix, &nested)
                .signed((exponent + total) % 2 != 0);
            vec![vec![el(result), el(by_cap), el(by_brackets)]]
        },
    },
    IdentityCase {
        id: "cap-loop-product-unit",
        statement: "α∩s_*[M] = D⁻¹(α) and Δα∩s_*[M] = 0",
        args: &[Base],
        evaluate: |alg, x| {
            let alpha = x[0].elem();
            let one = alg.loop_unit();
            vec![
                vec![
                    el(alg.cap(alpha, &one)),
                    el(alg.poincare_dual_inverse(alpha).expect("base class")),
                ],
                vec![
                    el(alg.cap(&alg.coh_delta(&alg.pullback(alpha)), &one)),
                    el(alg.zero(Ring::LoopHomology)),
                ],
            ]
        },
    },
];

fn base_base_loop(x: &[Value]) -> (ExtendedClass, ExtendedClass, ExtendedClass) {
    (
        ExtendedClass::from_base(x[0].elem().clone()),
        ExtendedClass::from_base(x[1].elem().clone()),
        ExtendedClass::from_loop(x[2].elem().clone()),
    )
}

fn base_loop_loop(x: &[Value]) -> (ExtendedClass, ExtendedClass, ExtendedClass) {
    (
        ExtendedClass::from_base(x[0].elem().clone()),
        ExtendedClass::from_loop(x[1].elem().clone()),
        ExtendedClass::from_loop(x[2].elem().clone()),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::ModelSpec;
    use crate::Mutation;
    use std::collections::HashSet;

    #[test]
    fn catalog_ids_are_unique() {
        let ids: HashSet<_> = catalog().iter().map(|c| c.id).collect();
        assert_eq!(ids.len(), catalog().len());
    }

    #[test]
    fn sphere_suite_passes() {
        let alg = StringAlgebra::new(ModelSpec::sphere(3).unwrap());
        for report in run_suite(&alg, 40, 42, &Selection::All).unwrap() {
            assert!(report.passed(), "{}", report.to_json_line());
        }
    }

    #[test]
    fn unknown_identity_is_an_error() {
        let alg = StringAlgebra::new(ModelSpec::sphere(3).unwrap());
        let err = run_suite(&alg, 1, 0, &Selection::only(&["no-such-identity"])).unwrap_err();
        assert_eq!(
            err,
            AlgebraError::UnknownIdentity("no-such-identity".into())
        );
    }

    #[test]
    fn draws_depend_on_seed_identity_and_trial() {
        let alg = StringAlgebra::new(ModelSpec::special_unitary(3).unwrap());
        let suite = Suite::new(&alg);
        let case = find_identity("jacobi").unwrap();
        assert_eq!(suite.draw(case, 5, 3), suite.draw(case, 5, 3));
        assert_ne!(trial_seed(5, "jacobi", 3), trial_seed(6, "jacobi", 3));
        assert_ne!(trial_seed(5, "jacobi", 3), trial_seed(5, "poisson", 3));
        assert_ne!(trial_seed(5, "jacobi", 3), trial_seed(5, "jacobi", 4));
    }

    #[test]
    fn mutated_bracket_fails_with_minimized_witness() {
        let alg = StringAlgebra::mutated(ModelSpec::sphere(3).unwrap(), Mutation::BracketSignFlip);
        let reports = run_suite(&alg, 50, 1, &Selection::only(&["bv-identity"])).unwrap();
        let witness = reports[0].witness.as_ref().expect("failure detected");
        assert_eq!(reports[0].status, Status::Fail);
        assert_eq!(witness.inputs.len(), 2);
        assert!(witness.minimized.len() == 2);
        assert_ne!(witness.lhs, witness.rhs);
    }

    #[test]
    fn report_json_shape() {
        let report = CheckReport {
            identity: "jacobi".into(),
            model: "s3".into(),
            trials: 10,
            seed: 4,
            status: Status::Pass,
            witness: None,
        };
        assert_eq!(
            report.to_json_line(),
            r#"{"identity":"jacobi","model":"s3","trials":10,"seed":4,"status":"pass"}"#
        );
        assert_eq!(
            CheckReport::from_json_line(&report.to_json_line()).unwrap(),
            report
        );
    }
}
