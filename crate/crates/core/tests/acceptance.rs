//! Acceptance suite: one PASS/FAIL line per criterion.

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use symcalc::analyzer::enumerate::{
    annotate_lmu, default_lbar_contexts, default_lmu_context, enumerate_lbar, enumerate_lmu, enumerate_typed_lbar,
    enumerate_typed_lmu, lmu_terms_of_size, VarPool,
};
use symcalc::analyzer::graph::paths_replay;
use symcalc::analyzer::lemmas::{check_fresh_cut, LemmaOutcome};
use symcalc::analyzer::props::{search_counterexamples, Property};
use symcalc::analyzer::sn::find_cycle;
use symcalc::analyzer::{build_graph, confluence_witnesses, sn_check, sweep_sn, verdict, ReductionGraph, SnVerdict};
use symcalc::lbar::postpone::is_partitioned;
use symcalc::lbar::{parse_any, postpone, Lbar, LbarRule, LbarSequence, LbarTerm};
use symcalc::lmu::{
    addr_set, apply_chain, decompose_addr_subst, parse_lmu, rename_mu, subst_mu_addr, subst_mu_l, subst_mu_r,
    Address, Dir, Elementary, Lmu, LmuRule, LmuTerm,
};
use symcalc::names::Name;
use symcalc::rewrite::{replay, validate_sequence, Calculus, RuleSet, Sequence, Step};
use symcalc::typing::{lmu_type_of, subject_lbar_on, subject_lmu_on, LmuType};

const BUDGET: usize = 100_000;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lmu(s: &str) -> LmuTerm {
    parse_lmu(s).unwrap()
}

fn normal_forms<C: Calculus>(g: &ReductionGraph<C>) -> Vec<C::Term> {
    g.normal_forms().into_iter().map(|n| g.term(n).clone()).collect()
}

fn same_set<C: Calculus>(calc: &C, got: &[C::Term], want: &[&C::Term]) -> bool {
    let a: HashSet<_> = got.iter().map(|t| calc.key(t)).collect();
    let b: HashSet<_> = want.iter().map(|t| calc.key(t)).collect();
    got.len() == want.len() && a == b
}

fn c1_witnesses() -> Check {
    let calc = Lbar::new(LbarRule::mu_mutilde());
    let t = parse_any("< mu @a. < x | @b > | mu y. < x | @a > >").unwrap();
    let g = build_graph(&calc, &t, BUDGET);
    let nfs = normal_forms(&g);
    let want = [parse_any("< x | @b >").unwrap(), parse_any("< x | @a >").unwrap()];
    ensure(g.complete && same_set(&calc, &nfs, &[&want[0], &want[1]]), || {
        format!("lbar witness normal forms: {nfs:?}")
    })?;
    ensure(confluence_witnesses(&g).map(|w| w.len()) == Ok(1), || "witness pair count".into())?;

    let cases = [
        ("(mu @a. x mu @b. y)", LmuRule::mu_mu_prime(), ["mu @a. x", "mu @b. y"]),
        ("(\\z. x mu @b. y)", RuleSet::of(&[LmuRule::Beta, LmuRule::MuPrime]), ["x", "mu @b. y"]),
        ("(\\z. x mu @b. y)", LmuRule::beta_mu_mu_prime(), ["x", "mu @b. y"]),
    ];
    for (src, rules, want) in cases {
        let calc = Lmu::new(rules);
        let g = build_graph(&calc, &lmu(src), BUDGET);
        let nfs = normal_forms(&g);
        let want = [lmu(want[0]), lmu(want[1])];
        ensure(g.complete && same_set(&calc, &nfs, &[&want[0], &want[1]]), || {
            format!("{src} under {:?}: {nfs:?}", rules.tags())
        })?;
    }
    Ok("lbar witness and both lmu witnesses have exactly the expected normal forms".into())
}

fn c2_s_termination() -> Check {
    let terms = enumerate_lbar(8, false, &VarPool::default());
    ensure(terms.len() == 19091, || format!("expected 19091 terms, got {}", terms.len()))?;
    let calc = Lbar::new(LbarRule::simplification());
    let bad: Vec<String> = terms
        .par_iter()
        .filter_map(|t| {
            let g = build_graph(&calc, t, BUDGET);
            let decreasing = g.edges().all(|(s, _, d)| g.term(d).cxty() < g.term(s).cxty());
            let bounded = matches!(verdict(&calc, &g), SnVerdict::Sn { eta, .. } if eta <= t.cxty());
            (!decreasing || !bounded).then(|| t.to_string())
        })
        .collect();
    ensure(bad.is_empty(), || format!("{} violations, first {}", bad.len(), bad[0]))?;
    Ok(format!("{} terms: every s-step shrinks cxty; longest s-reduction <= cxty", terms.len()))
}

fn is_mixed(seq: &LbarSequence) -> bool {
    let kinds: HashSet<bool> = seq.steps.iter().map(|s| s.redex.rule.is_logical()).collect();
    kinds.len() == 2
}

/// Every reduction sequence of length at most `depth` from `t`.
fn for_each_sequence(calc: &Lbar, t: &LbarTerm, depth: usize, f: &mut impl FnMut(&LbarSequence)) {
    fn go(calc: &Lbar, seq: &mut LbarSequence, depth: usize, f: &mut impl FnMut(&LbarSequence)) {
        f(seq);
        if seq.len() == depth {
            return;
        }
        let cur = seq.last().clone();
        for r in calc.redexes(&cur) {
            let next = calc.contract(&cur, &r).unwrap();
            seq.steps.push(Step {
                from: cur.clone(),
                redex: r,
                to: next,
            });
            go(calc, seq, depth, f);
            seq.steps.pop();
        }
    }
    go(calc, &mut Sequence::empty(t.clone()), depth, f);
}

fn c3_postponement() -> Check {
    let terms = enumerate_lbar(7, false, &VarPool::default());
    let all = Lbar::new(RuleSet::all());
    let logical = Lbar::new(LbarRule::logical());
    let results: Vec<Result<(usize, bool), String>> = terms
        .par_iter()
        .map(|t| {
            let mut checked = 0;
            let mut err = None;
            for_each_sequence(&all, t, 5, &mut |seq| {
                if err.is_some() || !is_mixed(seq) {
                    return;
                }
                checked += 1;
                match postpone(seq) {
                    Ok(p) => {
                        let ok = validate_sequence(&all, &p)
                            && is_partitioned(&p)
                            && p.start == seq.start
                            && p.last().alpha_eq(seq.last());
                        if !ok {
                            err = Some(format!("bad postponement of {:?} from {t}", seq.redexes()));
                        }
                    }
                    Err(e) => err = Some(format!("{t}: {e}")),
                }
            });
            if let Some(e) = err {
                return Err(e);
            }
            let l_sn = sn_check(&logical, t, BUDGET).is_sn();
            if l_sn && !sn_check(&all, t, BUDGET).is_sn() {
                return Err(format!("{t} is l-SN but not ls-SN"));
            }
            Ok((checked, l_sn))
        })
        .collect();
    let mut sequences = 0;
    let mut l_sn = 0;
    for r in results {
        let (n, sn) = r?;
        sequences += n;
        l_sn += sn as usize;
    }
    Ok(format!(
        "{sequences} mixed sequences from {} terms postponed; {l_sn} l-SN terms are ls-SN",
        terms.len()
    ))
}

fn c4_restricted_sweep() -> Result<(String, Vec<LbarTerm>), String> {
    let terms = enumerate_lbar(9, true, &VarPool::default());
    ensure(terms.len() == 332, || format!("expected 332 terms, got {}", terms.len()))?;
    let r = sweep_sn(&Lbar::new(LbarRule::mu_mutilde()), "lbar-restricted cxty<=9", &terms, BUDGET);
    ensure(r.all_sn() && r.cycle == 0 && r.budget == 0, || r.summary())?;
    Ok((r.summary(), terms))
}

fn c5_lmu_sweep() -> Check {
    let terms = enumerate_lmu(7, &VarPool::default());
    ensure(terms.len() == 87170, || format!("expected 87170 terms, got {}", terms.len()))?;
    let r = sweep_sn(&Lmu::new(LmuRule::mu_mu_prime()), "lmu cxty<=7", &terms, BUDGET);
    ensure(r.all_sn(), || r.summary())?;
    Ok(r.summary())
}

fn c6_typed_sweeps() -> Check {
    let atoms = [Name::new("A")];
    let lterms = enumerate_typed_lbar(7, false, &atoms);
    let lctx = default_lbar_contexts();
    let lcalc = Lbar::new(LbarRule::logical());
    let lbad: Vec<String> = lterms
        .par_iter()
        .filter_map(|t| {
            let g = build_graph(&lcalc, t, BUDGET);
            let v = verdict(&lcalc, &g);
            let sr = subject_lbar_on(&g, t, &lctx).map(|r| r.holds()).unwrap_or(false);
            (!v.is_sn() || !sr).then(|| format!("{t}: {}, subject={sr}", v.summary()))
        })
        .collect();
    ensure(!lterms.is_empty() && lbad.is_empty(), || {
        format!("lbar: {} failures, first {:?}", lbad.len(), lbad.first())
    })?;

    let mterms = enumerate_typed_lmu(7, &atoms);
    let mctx = default_lmu_context();
    let mcalc = Lmu::new(LmuRule::beta_mu_mu_prime()).with_context(mctx.clone());
    let mbad: Vec<String> = mterms
        .par_iter()
        .filter_map(|t| {
            let g = build_graph(&mcalc, t, BUDGET);
            let v = verdict(&mcalc, &g);
            let sr = subject_lmu_on(&g, t, &mctx).map(|r| r.holds()).unwrap_or(false);
            (!v.is_sn() || !sr).then(|| format!("{t}: {}, subject={sr}", v.summary()))
        })
        .collect();
    ensure(!mterms.is_empty() && mbad.is_empty(), || {
        format!("lmu: {} failures, first {:?}", mbad.len(), mbad.first())
    })?;
    Ok(format!(
        "{} typed lbar and {} typed lmu terms are SN with subject reduction on every edge",
        lterms.len(),
        mterms.len()
    ))
}

fn c7_fresh_cut(terms: &[LbarTerm]) -> Check {
    let calc = Lbar::new(LbarRule::mu_mutilde());
    let mut checked = 0;
    for t in terms {
        match check_fresh_cut(&calc, t, BUDGET) {
            LemmaOutcome::Holds => checked += 1,
            LemmaOutcome::Vacuous => {}
            other => return Err(format!("{t}: {other:?}")),
        }
    }
    Ok(format!("{checked} l/r-terms stay SN when cut against a fresh variable"))
}

fn c8_addresses() -> Check {
    let a = Name::new("a");
    let n = lmu("\\x. [@a] \\y. (x mu @b. [@a] y)");
    let m = lmu("(m1 (m2 m3))");
    let addr: Address = "[r,l]".parse().unwrap();
    let got = subst_mu_addr(&n, &a, &addr, &m).ok_or("address undefined")?;
    let want = lmu("\\x. [@a] (m1 (\\y. (x mu @b. [@a] (m1 (y m3))) m3))");
    ensure(got.alpha_eq(&want), || format!("reference example gave {got}"))?;

    let chain = decompose_addr_subst(&"[r,l,r,l]".parse().unwrap(), &lmu("(p ((r (x t)) q))")).unwrap();
    let want_chain = [
        Elementary::Right(lmu("t")),
        Elementary::Left(lmu("r")),
        Elementary::Right(lmu("q")),
        Elementary::Left(lmu("p")),
    ];
    ensure(chain == want_chain, || format!("chain {chain:?}"))?;

    // Targets: every term up to cxty 4 with a free (α U), plus the reference N.
    let pool = VarPool::default();
    let mut targets: Vec<LmuTerm> = enumerate_lmu(4, &pool).into_iter().filter(|t| t.has_free_r(&a)).collect();
    targets.push(n);
    // The chain re-rewrites the (α U) inside arguments it has already
    // inserted, so it needs α ∉ FV(M). When the enumerated M mentions @a,
    // the substituted name is α-converted to the fresh @c first.
    let c = Name::new("c");
    let renamed: Vec<LmuTerm> = targets.iter().map(|t| rename_mu(t, &a, &c)).collect();
    let ms = enumerate_lmu(6, &pool);
    let clashing = ms.iter().filter(|m| m.has_free_r(&a)).count();
    let z = lmu("\\w. w");
    let failures: Vec<String> = ms
        .par_iter()
        .flat_map_iter(|m| Address::all_in(m).into_iter().map(move |ad| (m, ad)))
        .filter_map(|(m, ad)| {
            let (alpha, ts) = if m.has_free_r(&a) { (&c, &renamed) } else { (&a, &targets) };
            let chain = decompose_addr_subst(&ad, m)?;
            let m_z = addr_set(m, &ad, z.clone())?;
            for t in ts {
                let direct = subst_mu_addr(t, alpha, &ad, m)?;
                if !apply_chain(t, alpha, &chain).alpha_eq(&direct) {
                    return Some(format!("chain mismatch for {t} at {ad} in {m}"));
                }
                if !subst_mu_addr(t, alpha, &ad, &m_z)?.alpha_eq(&direct) {
                    return Some(format!("depends on the addressed subterm: {t} at {ad} in {m}"));
                }
            }
            if ad.is_empty() && !chain.is_empty() {
                return Some(format!("empty address gave a chain for {m}"));
            }
            if let (LmuTerm::App(p, _), [Dir::R]) = (m, ad.0.as_slice()) {
                for t in ts {
                    if !subst_mu_addr(t, alpha, &ad, m)?.alpha_eq(&subst_mu_l(t, alpha, p)) {
                        return Some(format!("[r] is not [=l] for {m}"));
                    }
                }
            }
            None
        })
        .collect();
    ensure(failures.is_empty(), || format!("{} failures, first {}", failures.len(), failures[0]))?;
    Ok(format!(
        "reference example exact; chains agree for {} M (cxty<=6, {} renamed apart from @a) x all addresses x {} N",
        ms.len(),
        clashing,
        targets.len()
    ))
}

fn c9_type_change() -> Check {
    let a = Name::new("a");
    let pool = VarPool::default();
    let atom = LmuType::atom("A");
    let arrow = LmuType::arrow(atom.clone(), atom.clone());
    let small = [atom.clone(), arrow.clone()];
    let ty_pool = symcalc::analyzer::enumerate::lmu_type_pool(&[Name::new("A")]);
    let ms: Vec<LmuTerm> = enumerate_lmu(6, &pool).into_iter().filter(|t| t.has_free_r(&a)).collect();
    let base = default_lmu_context();
    // Arguments: well-typed terms of cxty <= 2 under the base context.
    let args: Vec<(LmuTerm, LmuType)> = (1..=2)
        .flat_map(|s| lmu_terms_of_size(s, &pool))
        .flat_map(|t| annotate_lmu(&t, &base, &ty_pool))
        .collect();
    let mut instances = 0usize;
    for t in &small {
        for u in &small {
            let to = LmuType::arrow(t.clone(), u.clone());
            let right_ctx = base.clone().with_covar("a", to.clone());
            let after = base.clone().with_covar("a", u.clone());
            let left_ctx = base.clone().with_covar("a", t.clone());
            let n_right: Vec<&LmuTerm> = args.iter().filter(|(_, ty)| ty == t).map(|(n, _)| n).collect();
            let n_left: Vec<&LmuTerm> = args.iter().filter(|(_, ty)| *ty == to).map(|(n, _)| n).collect();
            let res: Vec<Result<usize, String>> = ms
                .par_iter()
                .map(|m| {
                    let mut count = 0;
                    for (mt, ty) in annotate_lmu(m, &right_ctx, &ty_pool) {
                        for n in &n_right {
                            count += 1;
                            let s = subst_mu_r(&mt, &a, n);
                            if lmu_type_of(&s, &after).as_ref() != Ok(&ty) {
                                return Err(format!("right: {mt} with N={n}: {s}"));
                            }
                        }
                    }
                    for (mt, ty) in annotate_lmu(m, &left_ctx, &ty_pool) {
                        for n in &n_left {
                            count += 1;
                            let s = subst_mu_l(&mt, &a, n);
                            if lmu_type_of(&s, &after).as_ref() != Ok(&ty) {
                                return Err(format!("left: {mt} with N={n}: {s}"));
                            }
                        }
                    }
                    Ok(count)
                })
                .collect();
            for r in res {
                instances += r?;
            }
        }
    }
    ensure(instances > 0, || "no instances".into())?;
    Ok(format!("{instances} typed instances keep their type with @a retyped"))
}

/// Independent cycle oracle: iterative DFS colouring.
fn has_cycle<C: Calculus>(g: &ReductionGraph<C>) -> bool {
    let n = g.node_count();
    let mut colour = vec![0u8; n];
    for s in 0..n {
        if colour[s] != 0 {
            continue;
        }
        let mut stack = vec![(s, 0usize)];
        colour[s] = 1;
        while let Some(&mut (v, ref mut i)) = stack.last_mut() {
            let succ: Vec<usize> = g
                .successors(petgraph::graph::NodeIndex::new(v))
                .iter()
                .map(|(t, _)| t.index())
                .collect();
            if *i < succ.len() {
                let w = succ[*i];
                *i += 1;
                match colour[w] {
                    0 => {
                        colour[w] = 1;
                        stack.push((w, 0));
                    }
                    1 => return true,
                    _ => {}
                }
            } else {
                colour[v] = 2;
                stack.pop();
            }
        }
    }
    false
}

fn c10_soundness() -> Check {
    let calc = Lmu::new(RuleSet::of(&[LmuRule::Mu, LmuRule::MuPrime, LmuRule::Rho]));
    let terms = enumerate_lmu(5, &VarPool::default());
    let mut incomplete = 0;
    for budget in [2, 5, 50] {
        for t in &terms {
            let g = build_graph(&calc, t, budget);
            let v = verdict(&calc, &g);
            if !g.complete {
                incomplete += 1;
            }
            ensure(!v.is_sn() || (g.complete && !has_cycle(&g)), || format!("SN on {t} at {budget}"))?;
            ensure(v.is_cycle() == has_cycle(&g), || format!("cycle oracle disagrees on {t}"))?;
            ensure(paths_replay(&calc, &g), || format!("paths do not replay for {t}"))?;
        }
    }
    ensure(incomplete > 0, || "no incomplete graph exercised".into())?;

    let beta = Lmu::new(RuleSet::of(&[LmuRule::Beta]));
    let omega = lmu("(\\x. (x x) \\x. (x x))");
    let SnVerdict::CycleFound(w) = sn_check(&beta, &omega, BUDGET) else {
        return Err("omega not flagged".into());
    };
    ensure(w.prefix.is_empty() && w.cycle.len() == 1 && w.replays(&beta, &omega), || format!("{w:?}"))?;
    let seq = replay(&beta, &omega, &w.cycle).map_err(|e| e.to_string())?;
    ensure(seq.last().alpha_eq(&omega), || "self-loop does not close".into())?;
    ensure(find_cycle(&build_graph(&beta, &omega, 10)).is_some(), || "no self-loop edge".into())?;
    Ok(format!("{} graphs ({incomplete} incomplete) never certified SN unsoundly; omega self-loop replays", terms.len() * 3))
}

fn c11_props() -> Check {
    let three = search_counterexamples(Property::Head, 6, 10_000);
    ensure(three.suspects.is_empty(), || {
        format!("property 3 suspects: {:?}", three.suspects.iter().map(|c| c.conclusion.to_string()).collect::<Vec<_>>())
    })?;
    let mut parts = vec![three.summary()];
    for p in [Property::Lambda, Property::Mu] {
        let r = search_counterexamples(p, 6, 10_000);
        let listed: Vec<String> = r.suspects.iter().map(|c| c.conclusion.to_string()).collect();
        parts.push(format!("{} {listed:?}", r.summary()));
    }
    Ok(parts.join("; "))
}

fn report(n: usize, name: &str, limit: Duration, f: impl FnOnce() -> Check) -> bool {
    let start = Instant::now();
    let res = f();
    let took = start.elapsed();
    let res = res.and_then(|msg| {
        if took <= limit {
            Ok(msg)
        } else {
            Err(format!("{msg}; took {took:.1?}, limit {limit:?}"))
        }
    });
    match &res {
        Ok(msg) => println!("PASS {n:>2} {name}: {msg} [{took:.2?}]"),
        Err(msg) => println!("FAIL {n:>2} {name}: {msg} [{took:.2?}]"),
    }
    res.is_ok()
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let mut ok = true;
    ok &= report(1, "non-confluence witnesses", secs(1), c1_witnesses);
    ok &= report(2, "s-termination", secs(60), c2_s_termination);
    ok &= report(3, "postponement", secs(300), c3_postponement);
    let mut restricted = Vec::new();
    let start4 = Instant::now();
    ok &= report(4, "restricted mu/mutilde sweep", secs(600), || {
        c4_restricted_sweep().map(|(msg, ts)| {
            restricted = ts;
            msg
        })
    });
    let left = secs(600).saturating_sub(start4.elapsed());
    ok &= report(7, "cut against a fresh variable", left, || c7_fresh_cut(&restricted));
    ok &= report(5, "lmu mu/mu' sweep", secs(600), c5_lmu_sweep);
    ok &= report(6, "typed sweeps with subject reduction", secs(900), c6_typed_sweeps);
    ok &= report(8, "address substitutions", secs(60), c8_addresses);
    ok &= report(9, "mu-substitution type change", secs(120), c9_type_change);
    ok &= report(10, "soundness with rho", secs(1), c10_soundness);
    ok &= report(11, "closure properties", secs(600), c11_props);
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
