//! Machinery shared by both calculi: rule sets, redexes, reduction
//! sequences, strategies and the normalization driver.

use std::fmt;
use std::hash::Hash;
use std::marker::PhantomData;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

/// A rewrite rule tag of one calculus.
pub trait RuleTag:
    Copy + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    const ALL: &'static [Self];

    fn tag(self) -> &'static str;

    fn from_tag(s: &str) -> Option<Self>;

    fn index(self) -> usize {
        Self::ALL.iter().position(|r| *r == self).expect("rule listed in ALL")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown rule `{0}`")]
pub struct UnknownRule(pub String);

/// A set of enabled rules.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct RuleSet<R> {
    bits: u32,
    _rule: PhantomData<R>,
}

impl<R: RuleTag> RuleSet<R> {
    pub fn empty() -> Self {
        RuleSet {
            bits: 0,
            _rule: PhantomData,
        }
    }

    pub fn all() -> Self {
        Self::of(R::ALL)
    }

    pub fn of(rules: &[R]) -> Self {
        let mut s = Self::empty();
        for r in rules {
            s.insert(*r);
        }
        s
    }

    pub fn insert(&mut self, r: R) {
        self.bits |= 1 << r.index();
    }

    pub fn contains(&self, r: R) -> bool {
        self.bits & (1 << r.index()) != 0
    }

    pub fn union(self, other: Self) -> Self {
        RuleSet {
            bits: self.bits | other.bits,
            _rule: PhantomData,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = R> + '_ {
        R::ALL.iter().copied().filter(|r| self.contains(*r))
    }

    pub fn tags(&self) -> Vec<&'static str> {
        self.iter().map(R::tag).collect()
    }

    /// Parses a comma-separated list of rule tags.
    pub fn parse(list: &str) -> Result<Self, UnknownRule> {
        let mut s = Self::empty();
        for part in list.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            s.insert(R::from_tag(part).ok_or_else(|| UnknownRule(part.to_string()))?);
        }
        Ok(s)
    }
}

impl<R: RuleTag> fmt::Debug for RuleSet<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl<R: RuleTag> fmt::Display for RuleSet<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tags().join(","))
    }
}

/// A rule instance at a position (path of child indices from the root).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Redex<R> {
    pub position: Vec<usize>,
    pub rule: R,
}

impl<R> Redex<R> {
    pub fn new(position: Vec<usize>, rule: R) -> Self {
        Redex { position, rule }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReduceError {
    #[error("no subterm at position {0:?}")]
    BadPosition(Vec<usize>),
    #[error("rule {rule} does not apply at position {position:?}")]
    NoMatch { rule: String, position: Vec<usize> },
}

/// A calculus viewed as an abstract rewriting system.
///
/// Positions and rule applicability are invariant under α-conversion, so a
/// redex found in one representative of an α-class can be contracted in any
/// other.
pub trait Calculus: Sync {
    type Term: Clone + Send + Sync + fmt::Display + fmt::Debug;
    type Key: Hash + Eq + Clone + Send + Sync + fmt::Debug;
    type Rule: RuleTag;

    fn rules(&self) -> RuleSet<Self::Rule>;

    /// All redexes of the enabled rules, in preorder with rules in
    /// declaration order at each position.
    fn redexes(&self, t: &Self::Term) -> Vec<Redex<Self::Rule>>;

    fn contract(
        &self,
        t: &Self::Term,
        r: &Redex<Self::Rule>,
    ) -> Result<Self::Term, ReduceError>;

    /// Canonical (nameless) form: equal keys iff α-equivalent terms.
    fn key(&self, t: &Self::Term) -> Self::Key;

    fn cxty(&self, t: &Self::Term) -> usize;

    fn to_json(&self, t: &Self::Term) -> Value;
}

/// One reduction step.
#[derive(Debug, Clone)]
pub struct Step<T, R> {
    pub from: T,
    pub redex: Redex<R>,
    pub to: T,
}

/// A contiguous reduction sequence. Empty sequences still know their start.
#[derive(Debug, Clone)]
pub struct Sequence<T, R> {
    pub start: T,
    pub steps: Vec<Step<T, R>>,
}

impl<T: Clone, R: Clone> Sequence<T, R> {
    pub fn empty(start: T) -> Self {
        Sequence {
            start,
            steps: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn last(&self) -> &T {
        self.steps.last().map(|s| &s.to).unwrap_or(&self.start)
    }

    pub fn redexes(&self) -> Vec<Redex<R>> {
        self.steps.iter().map(|s| s.redex.clone()).collect()
    }
}

/// Rebuilds a sequence by contracting `redexes` one after the other from
/// `start`.
pub fn replay<C: Calculus>(
    calc: &C,
    start: &C::Term,
    redexes: &[Redex<C::Rule>],
) -> Result<Sequence<C::Term, C::Rule>, ReduceError> {
    let mut seq = Sequence::empty(start.clone());
    let mut cur = start.clone();
    for r in redexes {
        let next = calc.contract(&cur, r)?;
        seq.steps.push(Step {
            from: cur,
            redex: r.clone(),
            to: next.clone(),
        });
        cur = next;
    }
    Ok(seq)
}

/// Checks that every step's target is its source contracted at the step's
/// redex (up to α) and that consecutive steps chain.
pub fn validate_sequence<C: Calculus>(calc: &C, seq: &Sequence<C::Term, C::Rule>) -> bool {
    let mut cur = calc.key(&seq.start);
    for step in &seq.steps {
        if calc.key(&step.from) != cur {
            return false;
        }
        let Ok(next) = calc.contract(&step.from, &step.redex) else {
            return false;
        };
        let k = calc.key(&next);
        if k != calc.key(&step.to) {
            return false;
        }
        cur = k;
    }
    true
}

/// Redex selection strategy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Strategy {
    /// First redex in preorder.
    LeftmostOutermost,
    /// Last redex in preorder: the rightmost redex with no redex below it.
    RightmostInnermost,
    /// Uniform choice from a seeded generator.
    Random(u64),
    /// Leftmost redex of the named rule, falling back to leftmost-outermost.
    Prefer(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown strategy `{0}` (expected leftmost, rightmost, random or prefer:<rule>)")]
pub struct UnknownStrategy(pub String);

impl Strategy {
    /// Parses `leftmost`, `rightmost`, `random` (uses `seed`) or
    /// `prefer:<rule>`.
    pub fn parse(s: &str, seed: u64) -> Result<Self, UnknownStrategy> {
        match s {
            "leftmost" | "leftmost-outermost" | "lo" => Ok(Strategy::LeftmostOutermost),
            "rightmost" | "rightmost-innermost" | "ri" => Ok(Strategy::RightmostInnermost),
            "random" => Ok(Strategy::Random(seed)),
            _ => match s.strip_prefix("prefer:") {
                Some(rule) if !rule.is_empty() => Ok(Strategy::Prefer(rule.to_string())),
                _ => Err(UnknownStrategy(s.to_string())),
            },
        }
    }

    pub fn seed(&self) -> Option<u64> {
        match self {
            Strategy::Random(s) => Some(*s),
            _ => None,
        }
    }
}

/// Stateful redex chooser; the random strategy keeps its generator across
/// steps so a run is reproducible from its seed.
pub struct Chooser {
    strategy: Strategy,
    rng: Option<ChaCha8Rng>,
}

impl Chooser {
    pub fn new(strategy: Strategy) -> Self {
        let rng = strategy.seed().map(ChaCha8Rng::seed_from_u64);
        Chooser { strategy, rng }
    }

    pub fn choose<R: RuleTag>(&mut self, redexes: &[Redex<R>]) -> Option<usize> {
        if redexes.is_empty() {
            return None;
        }
        Some(match &self.strategy {
            Strategy::LeftmostOutermost => 0,
            Strategy::RightmostInnermost => redexes.len() - 1,
            Strategy::Random(_) => {
                let rng = self.rng.as_mut().expect("seeded");
                rng.gen_range(0..redexes.len())
            }
            Strategy::Prefer(tag) => {
                let wanted = R::from_tag(tag);
                redexes
                    .iter()
                    .position(|r| Some(r.rule) == wanted)
                    .unwrap_or(0)
            }
        })
    }
}

/// A normalization that ran out of steps.
#[derive(Debug, Clone)]
pub struct BudgetExhausted<T, R> {
    pub max_steps: usize,
    pub partial: Sequence<T, R>,
}

/// Reduces `t` with `strategy` until a normal form or `max_steps` steps.
pub fn normalize<C: Calculus>(
    calc: &C,
    t: &C::Term,
    strategy: &Strategy,
    max_steps: usize,
) -> Result<(C::Term, Sequence<C::Term, C::Rule>), BudgetExhausted<C::Term, C::Rule>> {
    let mut chooser = Chooser::new(strategy.clone());
    let mut seq = Sequence::empty(t.clone());
    let mut cur = t.clone();
    loop {
        let redexes = calc.redexes(&cur);
        let Some(i) = chooser.choose(&redexes) else {
            return Ok((cur, seq));
        };
        if seq.len() == max_steps {
            return Err(BudgetExhausted {
                max_steps,
                partial: seq,
            });
        }
        let r = redexes[i].clone();
        let next = calc
            .contract(&cur, &r)
            .expect("redexes returned by the calculus contract");
        seq.steps.push(Step {
            from: cur,
            redex: r,
            to: next.clone(),
        });
        cur = next;
    }
}

/// One line of a JSON-lines trace.
#[derive(Debug, Clone, Serialize, serde::Deserialize, PartialEq)]
pub struct TraceLine {
    pub rule: String,
    pub position: Vec<usize>,
    pub from: Value,
    pub to: Value,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

/// Renders a sequence as JSON lines, one step per line.
pub fn trace_lines<C: Calculus>(
    calc: &C,
    seq: &Sequence<C::Term, C::Rule>,
    seed: Option<u64>,
) -> Vec<String> {
    seq.steps
        .iter()
        .map(|s| {
            let line = TraceLine {
                rule: s.redex.rule.tag().to_string(),
                position: s.redex.position.clone(),
                from: calc.to_json(&s.from),
                to: calc.to_json(&s.to),
                seed,
                note: None,
            };
            serde_json::to_string(&line).expect("trace lines serialize")
        })
        .collect()
}

#[derive(Debug, Error)]
pub enum TraceError {
    #[error("line {line}: {source}")]
    Json {
        line: usize,
        source: serde_json::Error,
    },
    #[error("line {line}: unknown rule `{rule}`")]
    Rule { line: usize, rule: String },
}

/// Parses JSON-lines trace text into its redex list (blank lines skipped).
pub fn parse_trace<R: RuleTag>(text: &str) -> Result<Vec<(Redex<R>, TraceLine)>, TraceError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        if raw.trim().is_empty() {
            continue;
        }
        let line: TraceLine = serde_json::from_str(raw).map_err(|source| TraceError::Json {
            line: i + 1,
            source,
        })?;
        let rule = R::from_tag(&line.rule).ok_or_else(|| TraceError::Rule {
            line: i + 1,
            rule: line.rule.clone(),
        })?;
        out.push((Redex::new(line.position.clone(), rule), line));
    }
    Ok(out)
}

/// JSON summary of a redex, used by reports.
pub fn redex_json<R: RuleTag>(r: &Redex<R>) -> Value {
    json!({"rule": r.rule.tag(), "position": r.position})
}
