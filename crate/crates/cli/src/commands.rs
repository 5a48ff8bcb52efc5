use std::str::FromStr;

use mfo_core::rng::replica_rng;
use mfo_core::{log_star, log_star_star, mallows_pmf_exact, tower, wowzer, BigNat, MallowsParams, Permutation};
use mfo_lab::{
    chain_occupancy, chain_trace, coupling_bound, displacement_bound_check, estimate_sat_prob, exact_sat_prob,
    poisson_cycle_distance_exact, poisson_cycle_estimate, tv_exact_mallows, tv_tgeo_uniform, ExperimentConfig,
    Occupancy, OccupancyKey, QSchedule, Record,
};
use mfo_logic::{
    ef_equivalent, ef_type, evaluate, parse, parse_any, relativize, relativize_to_witness, relativize_with, render,
    reverse_formula, Assignment, Formula, Signature, Var,
};
use mfo_stats::{
    admissible, build_j1_witness, build_k1_witness, build_lambda, build_omega, build_oscillating, build_rho,
    build_universal_phi, build_xi1, build_xi2, build_zeta, induced_graph, j1, k1, minimal_intervals, positions, w_set,
    Interval,
};
use num_bigint::BigUint;
use num_rational::BigRational;
use serde_json::json;

use crate::args::*;
use crate::{CliError, Output};

type Result<T> = std::result::Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

pub fn execute(cmd: &Command) -> Result<Output> {
    match cmd {
        Command::Sample(a) => sample(a),
        Command::Pmf(a) => pmf(a),
        Command::Eval(a) => eval(a),
        Command::Transform(a) => transform(a),
        Command::Ef(a) => ef(a),
        Command::Stats(a) => stats(a),
        Command::Tv(a) => tv(a),
        Command::Experiment(a) => experiment(a),
        Command::Chain(a) => chain(a),
        Command::BuildSentence(a) => build_sentence(a),
        Command::Towers(a) => towers(a),
    }
}

fn perm_text(p: &Permutation) -> String {
    if p.is_empty() {
        "()".to_string()
    } else {
        p.to_string()
    }
}

fn parse_perm(s: &str) -> Result<Permutation> {
    s.parse().map_err(|e| usage(format!("{e}")))
}

fn read_perms(input: &PermInput) -> Result<Vec<Permutation>> {
    if let Some(p) = &input.perm {
        return Ok(vec![parse_perm(p)?]);
    }
    let path = input.perm_file.as_ref().expect("clap requires one input");
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).map(parse_perm).collect()
}

fn signature(s: SigArg) -> Signature {
    match s {
        SigArg::Toob => Signature::Toob,
        SigArg::Toto => Signature::Toto,
    }
}

fn parse_formula(text: &str, sig: Option<SigArg>) -> Result<Formula> {
    let parsed = match sig {
        Some(s) => parse(text, signature(s)),
        None => parse_any(text).map(|(f, _)| f),
    };
    parsed.map_err(|e| usage(format!("formula: {e}")))
}

fn parse_interval(s: &str) -> Result<Interval> {
    s.parse().map_err(|e| usage(format!("interval {s:?}: {e}")))
}

fn parse_big(s: &str) -> Result<BigNat> {
    let s = s.trim();
    if let Some(e) = s.strip_prefix("2^") {
        let e: u32 = e.parse().map_err(|_| usage(format!("bad exponent in {s:?}")))?;
        if e > 1 << 24 {
            return Err(usage(format!("{s} is too large")));
        }
        return Ok(BigNat::from(BigUint::from(1u32) << e));
    }
    BigNat::from_str(s).map_err(|_| usage(format!("{s:?} is not a natural number")))
}

fn required<T: Copy>(v: Option<T>, flag: &str, mode: &str) -> Result<T> {
    v.ok_or_else(|| usage(format!("--{flag} is required for {mode}")))
}

fn sample(a: &SampleArgs) -> Result<Output> {
    let params = MallowsParams::new(a.n, a.q)?;
    let mut out = Output::default();
    for i in 0..a.count {
        let p = params.sample(&mut replica_rng(a.seed, &[i as u64]));
        let text = perm_text(&p);
        out.push(Record::new("sample", text.clone()).param("index", i).n(a.n).q(a.q).seed(a.seed), text);
    }
    Ok(out)
}

fn pmf(a: &PmfArgs) -> Result<Output> {
    let perms = read_perms(&a.input)?;
    let mut out = Output::default();
    if a.exact {
        let q = BigRational::from_str(a.q.trim()).map_err(|_| usage(format!("{:?} is not a rational", a.q)))?;
        if q <= BigRational::from_integer(0.into()) {
            return Err(usage("q must be positive"));
        }
        for p in perms {
            let v = mallows_pmf_exact(&p, &q).to_string();
            out.push(Record::new("pmf", v.clone()).param("perm", perm_text(&p)).param("q", q.to_string()).n(p.len()), v);
        }
        return Ok(out);
    }
    let q: f64 = a.q.parse().map_err(|_| usage(format!("{:?} is not a number", a.q)))?;
    if !(q.is_finite() && q > 0.0) {
        return Err(usage(format!("q must be positive, got {q}")));
    }
    for p in perms {
        let v = MallowsParams::new(p.len(), q)?.pmf(&p)?;
        out.push(Record::new("pmf", v).param("perm", perm_text(&p)).n(p.len()).q(q), v.to_string());
    }
    Ok(out)
}

fn parse_assignment(s: &str) -> Result<Assignment> {
    let mut a = Assignment::new();
    for part in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let (name, value) = part.split_once('=').ok_or_else(|| usage(format!("bad assignment {part:?}")))?;
        let value: usize = value.trim().parse().map_err(|_| usage(format!("bad value in {part:?}")))?;
        a.set(Var::new(name.trim()), value);
    }
    Ok(a)
}

fn eval(a: &EvalArgs) -> Result<Output> {
    let f = parse_formula(&a.formula.formula, a.formula.sig)?;
    let assignment = match &a.assign {
        Some(s) => parse_assignment(s)?,
        None => Assignment::new(),
    };
    let mut out = Output::default();
    for p in read_perms(&a.input)? {
        let v = evaluate(&p, &f, &assignment)?;
        out.push(Record::new("eval", v).param("perm", perm_text(&p)).n(p.len()), v.to_string());
    }
    Ok(out)
}

fn transform(a: &TransformArgs) -> Result<Output> {
    let f = parse_formula(&a.formula.formula, a.formula.sig)?;
    let (g, op, var) = if a.reverse {
        (reverse_formula(&f)?, "reverse", None)
    } else if let Some(w) = &a.witness {
        let xi = parse_formula(w, Some(SigArg::Toto))?;
        (relativize_to_witness(&xi, &f)?, "relativize_to_witness", None)
    } else if let Some(v) = &a.var {
        (relativize_with(&f, Var::new(v))?, "relativize", Some(v.clone()))
    } else {
        let (g, y) = relativize(&f)?;
        (g, "relativize", Some(y.name().to_string()))
    };
    let text = render(&g);
    let mut rec = Record::new("transform", text.clone()).param("op", op).param("depth", g.depth());
    if let Some(v) = var {
        rec = rec.param("var", v);
    }
    let mut out = Output::default();
    out.push(rec, text);
    Ok(out)
}

fn ef(a: &EfArgs) -> Result<Output> {
    let p = parse_perm(&a.perm)?;
    let sig = signature(a.sig);
    let mut out = Output::default();
    match &a.other {
        Some(o) => {
            let s = parse_perm(o)?;
            let v = ef_equivalent(&p, &s, a.depth, sig)?;
            let rec = Record::new("ef", v).param("perm", perm_text(&p)).param("other", perm_text(&s));
            out.push(rec.param("d", a.depth).param("sig", sig.to_string()), v.to_string());
        }
        None => {
            let t = ef_type(&p, a.depth, sig)?.to_string();
            let rec = Record::new("ef", t.clone()).param("perm", perm_text(&p)).param("d", a.depth);
            out.push(rec.param("sig", sig.to_string()).n(p.len()), t);
        }
    }
    Ok(out)
}

fn stats(a: &StatsArgs) -> Result<Output> {
    let p = parse_perm(&a.perm)?;
    let mut out = Output::default();
    let base = |op: &str| Record::new(op, serde_json::Value::Null).param("perm", perm_text(&p)).n(p.len());
    if a.j1 {
        let v = j1(&p);
        let mut rec = base("j1");
        rec.value = json!(v);
        out.push(rec, v.map_or("none".to_string(), |j| j.to_string()));
    } else if a.k1 {
        let v = k1(&p)?;
        let mut rec = base("k1");
        rec.value = json!(v);
        out.push(rec, v.to_string());
    } else {
        let k = a.k.expect("clap requires --k");
        let i = parse_interval(a.i.as_deref().expect("clap requires --I"))?;
        if a.admissible {
            let v = admissible(&p, &i, k)?;
            let mut rec = base("admissible").param("I", i.to_string()).param("k", k);
            rec.value = json!(v);
            out.push(rec, v.to_string());
        } else if a.wk {
            let w = w_set(&p, &positions(&i), k)?;
            let ivs = minimal_intervals(&p, &i, k)?;
            let w_text: Vec<String> = w.iter().map(usize::to_string).collect();
            let mut rec = base("wk").param("I", i.to_string()).param("k", k);
            rec.value = json!({ "w": w, "intervals": ivs.to_string() });
            out.records.push(rec);
            out.lines.push(format!("W {}", w_text.join(",")));
            out.lines.push(format!("intervals {ivs}"));
        } else {
            let j = parse_interval(a.j.as_deref().expect("clap requires --J"))?;
            let ii = minimal_intervals(&p, &i, k)?;
            let jj = minimal_intervals(&p, &j, k)?;
            let g = induced_graph(&p, &ii, &jj)?;
            let names: Vec<String> = ii.iter().map(|iv| iv.to_string()).collect();
            let arcs: Vec<(String, String)> = g.arcs().map(|(u, v)| (names[u].clone(), names[v].clone())).collect();
            let mut rec = base("hgraph").param("I", i.to_string()).param("J", j.to_string()).param("k", k);
            rec.value = json!({ "vertices": names, "j_intervals": jj.to_string(), "arcs": arcs });
            out.records.push(rec);
            out.lines.push(format!("vertices {ii}"));
            out.lines.push(format!("j_intervals {jj}"));
            out.lines.extend(arcs.iter().map(|(u, v)| format!("arc {u} {v}")));
        }
    }
    Ok(out)
}

fn tv(a: &TvArgs) -> Result<Output> {
    let mut out = Output::default();
    match a.mode {
        TvMode::Mallows => {
            let n = required(a.n, "n", "mode mallows")?;
            let q1 = required(a.q1, "q1", "mode mallows")?;
            let q2 = a.q2.unwrap_or(1.0);
            let v = tv_exact_mallows(n, q1, q2)?;
            out.push(Record::new("tv_exact_mallows", v).param("q1", q1).param("q2", q2).n(n), v.to_string());
        }
        TvMode::Tgeo => {
            let m = required(a.m, "m", "mode tgeo")?;
            let q = required(a.q, "q", "mode tgeo")?;
            let v = tv_tgeo_uniform(m, q)?;
            out.push(Record::new("tv_tgeo_uniform", v).param("m", m).q(q), v.to_string());
        }
        TvMode::Coupling => {
            let n = required(a.n, "n", "mode coupling")?;
            let q = required(a.q, "q", "mode coupling")?;
            let v = coupling_bound(n, q)?;
            out.push(Record::new("coupling_bound", v).n(n).q(q), v.to_string());
        }
        TvMode::Cycles => {
            let n = required(a.n, "n", "mode cycles")?;
            let b = required(a.b, "b", "mode cycles")?;
            if a.exact {
                let v = poisson_cycle_distance_exact(n, b)?;
                out.push(Record::new("poisson_cycle_distance", v).param("b", b).param("exact", true).n(n), v.to_string());
            } else {
                let samples = required(a.samples, "samples", "mode cycles")?;
                let seed = required(a.seed, "seed", "mode cycles")?;
                let e = poisson_cycle_estimate(n, b, samples, seed)?;
                let rec = Record::new("poisson_cycle_distance", e.distance).param("b", b).param("samples", samples);
                out.push(rec.n(n).ci(e.half_width_95).seed(seed), format!("{} {}", e.distance, e.half_width_95));
            }
        }
    }
    Ok(out)
}

fn experiment(a: &ExperimentArgs) -> Result<Output> {
    let schedule: QSchedule = a.schedule.parse().map_err(|e| usage(format!("{e}")))?;
    let mut sizes = a.sizes.clone();
    sizes.sort_unstable();
    sizes.dedup();
    let mut out = Output::default();
    match a.kind {
        ExperimentKind::Sat => {
            let text = a.formula.as_deref().ok_or_else(|| usage("--formula is required for sat experiments"))?;
            let sentence = parse_formula(text, a.sig)?;
            let config = ExperimentConfig {
                sentence: sentence.clone(),
                schedule,
                sizes,
                samples: a.samples,
                seed: a.seed,
                workers: a.workers,
            };
            for r in estimate_sat_prob(&config)? {
                let e = r.estimate;
                let mut rec = Record::new("estimate_sat_prob", e.p_hat)
                    .param("schedule", schedule.to_string())
                    .param("samples", e.samples)
                    .n(r.n)
                    .q(r.q)
                    .ci(e.half_width_95)
                    .seed(a.seed);
                let mut line = format!("{} {} {} {}", r.n, r.q, e.p_hat, e.half_width_95);
                if a.exact {
                    let exact = exact_sat_prob(&sentence, r.n, r.q)?;
                    rec = rec.param("exact", exact);
                    line.push_str(&format!(" {exact}"));
                }
                out.push(rec, line);
            }
        }
        ExperimentKind::Displacement => {
            for n in sizes {
                let q = schedule.q_at(n)?;
                let r = displacement_bound_check(n, q, a.samples, a.seed)?;
                let rec = Record::new("displacement_bound_check", r.holds)
                    .param("mean", r.mean)
                    .param("std_err", r.std_err)
                    .param("bound", r.bound)
                    .param("samples", a.samples)
                    .n(n)
                    .q(q)
                    .seed(a.seed);
                out.push(rec, format!("{n} {q} {} {} {} {}", r.mean, r.std_err, r.bound, r.holds));
            }
        }
    }
    Ok(out)
}

fn chain(a: &ChainArgs) -> Result<Output> {
    let mut out = Output::default();
    match a.runs {
        None => {
            let t = chain_trace(a.q, a.depth, a.n_max, a.seed)?;
            for s in &t.states {
                let tail: Vec<String> = s.tail.iter().map(usize::to_string).collect();
                let label = s.class_label.short_hex();
                let rec = Record::new("chain_trace", json!({ "class": label, "tail": s.tail }))
                    .param("d", a.depth)
                    .n(s.n)
                    .q(a.q)
                    .seed(a.seed);
                out.push(rec, format!("{} {} {}", s.n, label, if tail.is_empty() { "()".into() } else { tail.join(",") }));
            }
        }
        Some(runs) => {
            let laws = chain_occupancy(a.q, a.depth, &[a.n_max], runs, a.seed, Occupancy::ClassAndTailLength)?;
            for (key, p) in &laws[0] {
                let OccupancyKey::ClassAndTailLength(label, len) = key else { unreachable!() };
                let rec = Record::new("chain_occupancy", *p)
                    .param("class", label.short_hex())
                    .param("tail_length", *len)
                    .param("runs", runs)
                    .param("d", a.depth)
                    .n(a.n_max)
                    .q(a.q)
                    .seed(a.seed);
                out.push(rec, format!("{} {len} {p}", label.short_hex()));
            }
        }
    }
    Ok(out)
}

fn build_sentence(a: &BuildArgs) -> Result<Output> {
    let needs_k2 = matches!(
        a.name,
        SentenceName::Oscillating | SentenceName::Omega | SentenceName::Xi1 | SentenceName::Xi2 | SentenceName::Phi
    );
    if needs_k2 && a.k < 2 {
        return Err(usage("this sentence needs --k >= 2"));
    }
    if a.name == SentenceName::Zeta && a.k == 0 {
        return Err(usage("zeta needs --k >= 1"));
    }
    let f = match a.name {
        SentenceName::Zeta => build_zeta(a.k),
        SentenceName::J1Witness => build_j1_witness(),
        SentenceName::K1Witness => build_k1_witness(),
        SentenceName::Rho => build_rho(),
        SentenceName::Lambda => build_lambda(),
        SentenceName::Oscillating => build_oscillating(a.k),
        SentenceName::Omega => build_omega(a.k),
        SentenceName::Xi1 => build_xi1(a.k),
        SentenceName::Xi2 => build_xi2(a.k),
        SentenceName::Phi => build_universal_phi(a.k),
    };
    let text = render(&f);
    let free: Vec<&str> = f.free_vars().iter().map(|v| v.name()).collect();
    let name = format!("{:?}", a.name).to_lowercase();
    let rec = Record::new("build_sentence", text.clone())
        .param("name", name)
        .param("k", a.k)
        .param("size", f.size())
        .param("depth", f.depth())
        .param("free", free);
    let mut out = Output::default();
    out.push(rec, text);
    Ok(out)
}

fn towers(a: &TowersArgs) -> Result<Output> {
    let mut out = Output::default();
    if let Some(n) = a.tower {
        let v = tower(n)?.to_string();
        out.push(Record::new("tower", v.clone()).param("n", n), v);
    } else if let Some(n) = a.wowzer {
        let v = wowzer(n)?.to_string();
        out.push(Record::new("wowzer", v.clone()).param("n", n), v);
    } else if let Some(x) = &a.logstar {
        let v = log_star(&parse_big(x)?);
        out.push(Record::new("log_star", v).param("x", x.as_str()), v.to_string());
    } else if let Some(x) = &a.logstarstar {
        let v = log_star_star(&parse_big(x)?);
        out.push(Record::new("log_star_star", v).param("x", x.as_str()), v.to_string());
    }
    Ok(out)
}
