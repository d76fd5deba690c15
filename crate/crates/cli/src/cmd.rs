use anyhow::{bail, Context, Result};
use cyclicbent::boolfun::{BoolFun, BoolFunJson, Domain};
use cyclicbent::codebook::{
    build_mub, build_real_codebook, build_restricted_codebook, build_semibent_codebook, levenshtein_complex_sq,
    levenshtein_real_sq, mub_to_codebook,
};
use cyclicbent::codes::{build_code_f, build_code_g, code_f_weights, code_g_weights, NonlinearCode};
use cyclicbent::construct::{
    chain_fn, derive_semibent, gold_fn, is_cyclic_bent_full, is_cyclic_bent_reduced, is_cyclic_semibent,
    CertifyOptions, ChainSpec, CyclicBent, CyclicCertificate, CyclicSemiBent, VerifyMode,
};
use cyclicbent::gf2::{default_field, FieldElem};
use cyclicbent::linpoly::{is_cyclic_semibent_quadratic, KernelPath, LinPoly};
use cyclicbent::seqfam::{
    binary_family, binary_table, quaternary_family, quaternary_table, semibent_family, semibent_table, CorrDist,
};
use cyclicbent::{Codebook, Rational64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::output::{check, emit, rat, rat_json};
use crate::{BentArgs, Cli, CodeKind, CodebookKind, Command, Mode, PathChoice, SemiArgs, SeqKind};

pub fn run(cli: &Cli) -> Result<bool> {
    match &cli.cmd {
        Command::Construct { bent, semibent, semi } => construct(cli, bent, *semibent, semi),
        Command::Verify { input } => verify(cli, input),
        Command::Codebook { kind, bent, semi } => codebook(cli, *kind, bent, semi),
        Command::Mub { bent } => mub(cli, bent),
        Command::Seqfam { kind, table_check, bent, semi } => seqfam(cli, *kind, *table_check, bent, semi),
        Command::Code { kind, bent, semi } => code(cli, *kind, bent, semi),
        Command::Design { kind, k, t, bent, semi } => design(cli, *kind, k.as_deref(), *t, bent, semi),
        Command::Charquad { m, l, path, walsh } => charquad(cli, *m, l, *path, *walsh),
        Command::Selftest { seed } => selftest(*seed),
    }
}

fn opts(cli: &Cli) -> CertifyOptions {
    CertifyOptions { allow_large: cli.allow_large }
}

fn mode(cli: &Cli) -> VerifyMode {
    match cli.mode {
        Mode::Full => VerifyMode::Full,
        Mode::Reduced => VerifyMode::Reduced,
    }
}

fn chain_spec(m: u32, chain: Option<&[u32]>, gamma: Option<&[u32]>) -> Result<ChainSpec> {
    let Some(e) = chain else {
        return Ok(ChainSpec::kerdock(m)?);
    };
    let gamma: Vec<FieldElem> = match gamma {
        Some(g) => g.iter().map(|&i| FieldElem(i)).collect(),
        None => (0..e.len().saturating_sub(1)).map(|j| FieldElem((j == 0) as u32)).collect(),
    };
    Ok(ChainSpec::new(m, e.to_vec(), gamma)?)
}

fn bent_spec(args: &BentArgs) -> Result<ChainSpec> {
    chain_spec(args.m, args.chain.as_deref(), args.gamma.as_deref())
}

fn certify_bent(cli: &Cli, spec: &ChainSpec) -> Result<CyclicBent> {
    let f = chain_fn(spec)?;
    CyclicBent::certify_with(f, mode(cli), opts(cli)).context("certifying the bent function")
}

fn semi_fn(cli: &Cli, bent: &BentArgs, semi: &SemiArgs) -> Result<BoolFun> {
    match semi.restrict {
        Some(eps) => {
            if eps > 1 {
                bail!("--restrict must be 0 or 1");
            }
            let spec = chain_spec(semi.n + 1, bent.chain.as_deref(), bent.gamma.as_deref())?;
            Ok(derive_semibent(&certify_bent(cli, &spec)?, eps))
        }
        None => Ok(gold_fn(semi.n, semi.gold)?),
    }
}

fn certify_semi(cli: &Cli, bent: &BentArgs, semi: &SemiArgs) -> Result<CyclicSemiBent> {
    let g = semi_fn(cli, bent, semi)?;
    CyclicSemiBent::certify_with(g, mode(cli), opts(cli)).context("certifying the semi-bent function")
}

fn eps_vector(args: &BentArgs, len: usize) -> Vec<u8> {
    match args.eps_seed {
        Some(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..len).map(|_| rng.gen_range(0..2u8)).collect()
        }
        None => vec![0; len],
    }
}

fn cert_detail(c: &CyclicCertificate) -> String {
    let mode = match c.mode {
        VerifyMode::Full => "full",
        VerifyMode::Reduced => "reduced",
    };
    match &c.witness_of_failure {
        None => format!("mode={mode} cases={}", c.verified_pairs),
        Some(w) if w.a == 0 && w.b == 0 => format!("mode={mode} base function fails"),
        Some(w) => format!("mode={mode} cases={} first failure a={} b={} eps={}", c.verified_pairs, w.a, w.b, w.eps),
    }
}

fn truth_table_csv(f: &BoolFun) -> String {
    let mut s = String::from("index,value\n");
    for i in 0..f.len() {
        s.push_str(&format!("{i},{}\n", f.get(i)));
    }
    s
}

fn construct(cli: &Cli, bent: &BentArgs, semibent: bool, semi: &SemiArgs) -> Result<bool> {
    let (f, cert, spec) = if semibent {
        let g = semi_fn(cli, bent, semi)?;
        let cert = is_cyclic_semibent(&g, mode(cli), opts(cli))?;
        (g, cert, None)
    } else {
        let spec = bent_spec(bent)?;
        let f = chain_fn(&spec)?;
        let cert = match mode(cli) {
            VerifyMode::Full => is_cyclic_bent_full(&f, opts(cli))?,
            VerifyMode::Reduced => is_cyclic_bent_reduced(&f, opts(cli))?,
        };
        (f, cert, Some(spec))
    };
    let what = match &spec {
        Some(s) => {
            let e: Vec<String> = s.e().iter().map(u32::to_string).collect();
            let g: Vec<String> = s.gamma().iter().map(|x| x.0.to_string()).collect();
            format!("m={} chain={} gamma={}", s.m(), e.join(","), g.join(","))
        }
        None => format!("n={} semi-bent", f.n_vars()),
    };
    let ok = check(cert.passed(), "certificate", format!("{what} {}", cert_detail(&cert)));
    let report = json!({
        "kind": if semibent { "semibent" } else { "bent" },
        "spec": spec.map(|s| s.to_json()),
        "function": f.to_json(),
        "certificate": cert,
    });
    emit(cli, report, Some(truth_table_csv(&f)))?;
    Ok(ok)
}

fn verify(cli: &Cli, input: &std::path::Path) -> Result<bool> {
    let text = std::fs::read_to_string(input).with_context(|| format!("reading {}", input.display()))?;
    let v: Value = serde_json::from_str(&text)?;
    let fj: BoolFunJson = serde_json::from_value(v.get("function").cloned().unwrap_or(v))?;
    let f = BoolFun::from_json(&fj)?;
    let cert = match (f.domain(), mode(cli)) {
        (Domain::FieldTimesBit(_), VerifyMode::Full) => is_cyclic_bent_full(&f, opts(cli))?,
        (Domain::FieldTimesBit(_), VerifyMode::Reduced) => is_cyclic_bent_reduced(&f, opts(cli))?,
        (Domain::Field(_), m) => is_cyclic_semibent(&f, m, opts(cli))?,
    };
    let kind = if matches!(f.domain(), Domain::Field(_)) { "cyclic semi-bent" } else { "cyclic bent" };
    let ok = check(cert.passed(), kind, format!("{} variables, {}", f.n_vars(), cert_detail(&cert)));
    emit(cli, json!({ "certificate": cert }), None)?;
    Ok(ok)
}

fn codebook_report(kind: &str, cb: &Codebook, imax: &Rational64, bound: &Rational64) -> Value {
    json!({
        "kind": kind,
        "n": cb.n(),
        "k": cb.k(),
        "alphabet_size": cb.alphabet_size(),
        "imax_sq": rat_json(imax),
        "bound_sq": rat_json(bound),
        "ratio": rat_json(&(imax / bound)),
        "codebook": cb.to_json(),
    })
}

fn codebook(cli: &Cli, kind: CodebookKind, bent: &BentArgs, semi: &SemiArgs) -> Result<bool> {
    let (cb, expected) = match kind {
        CodebookKind::Real => {
            let f = certify_bent(cli, &bent_spec(bent)?)?;
            (build_real_codebook(&f, &eps_vector(bent, f.field().size() - 1))?, None)
        }
        CodebookKind::Complex => (mub_to_codebook(&build_mub(&certify_bent(cli, &bent_spec(bent)?)?)), None),
        CodebookKind::Semibent => {
            let g = certify_semi(cli, bent, semi)?;
            (build_semibent_codebook(&g)?, Some(Rational64::new(2, g.field().size() as i64)))
        }
        CodebookKind::Restricted => {
            let f = certify_bent(cli, &bent_spec(bent)?)?;
            let size = f.field().size();
            (build_restricted_codebook(&f, &eps_vector(bent, size - 1))?, Some(Rational64::new(2, size as i64)))
        }
    };
    let (n, k) = (cb.n() as i64, cb.k() as i64);
    let bound = if cb.is_real() { levenshtein_real_sq(n, k)? } else { levenshtein_complex_sq(n, k)? };
    let imax = cb.imax_sq()?;
    let ok = match expected {
        None => {
            let optimal = imax == bound;
            println!(
                "N={n} K={k} imax_sq={} bound_sq={} {}",
                cyclicbent::rational_string(&imax),
                cyclicbent::rational_string(&bound),
                if optimal { "OPTIMAL" } else { "NOT OPTIMAL" }
            );
            check(optimal, "levenshtein", format!("imax_sq={} bound_sq={}", rat(&imax), rat(&bound)))
        }
        Some(want) => {
            println!(
                "N={n} K={k} imax_sq={} bound_sq={} ratio={}",
                cyclicbent::rational_string(&imax),
                cyclicbent::rational_string(&bound),
                rat(&(imax / bound))
            );
            check(imax == want, "imax", format!("imax_sq={} expected 2/K={}", rat(&imax), rat(&want)))
        }
    };
    println!("alphabet size {}", cb.alphabet_size());
    let name = format!("{kind:?}").to_lowercase();
    emit(cli, codebook_report(&name, &cb, &imax, &bound), Some(cb.to_csv()))?;
    Ok(ok)
}

fn mub(cli: &Cli, bent: &BentArgs) -> Result<bool> {
    let f = certify_bent(cli, &bent_spec(bent)?)?;
    let mubs = build_mub(&f);
    let r = mubs.verify();
    let ok = check(
        r.passed(),
        "mub",
        format!(
            "{} bases of C^{}, orthonormal={} unbiased={} vector pairs={}",
            r.bases, r.dim, r.orthonormal, r.unbiased, r.vector_pairs_checked
        ),
    );
    let cb = mub_to_codebook(&mubs);
    let imax = cb.imax_sq()?;
    let bound = levenshtein_complex_sq(cb.n() as i64, cb.k() as i64)?;
    let ok = check(imax == bound, "codebook", format!("N={} K={} imax_sq={} bound_sq={}", cb.n(), cb.k(), rat(&imax), rat(&bound))) && ok;
    let report = json!({ "report": r, "codebook": codebook_report("complex", &cb, &imax, &bound) });
    emit(cli, report, Some(cb.to_csv()))?;
    Ok(ok)
}

fn print_distribution(d: &CorrDist) {
    for (v, c) in &d.counts {
        println!("  {:>12}  {c}", v.to_string());
    }
}

fn seqfam(cli: &Cli, kind: SeqKind, table_check: bool, bent: &BentArgs, semi: &SemiArgs) -> Result<bool> {
    let (fam, table) = match kind {
        SeqKind::Quaternary => {
            let f = certify_bent(cli, &bent_spec(bent)?)?.normalized();
            (quaternary_family(&f)?, quaternary_table(f.m()))
        }
        SeqKind::Binary => {
            let f = certify_bent(cli, &bent_spec(bent)?)?.normalized();
            (binary_family(&f)?, binary_table(f.m()))
        }
        SeqKind::Semibent => {
            let g = certify_semi(cli, bent, semi)?;
            (semibent_family(&g)?, semibent_table(g.n()))
        }
    };
    let dist = fam.full_distribution();
    println!(
        "{} sequences of period {}, {} correlation values, R_max^2 = {}",
        fam.len(),
        fam.period(),
        dist.total,
        fam.r_max_sq()
    );
    print_distribution(&dist);
    let mut ok = true;
    if table_check {
        let table = table?;
        ok = check(dist == table, "table-check", format!("distribution {} the closed form", if dist == table { "matches" } else { "differs from" }));
    }
    let report = json!({
        "kind": format!("{kind:?}").to_lowercase(),
        "period": fam.period(),
        "size": fam.len(),
        "r_max_sq": fam.r_max_sq(),
        "distribution": dist.to_json(),
        "family": fam.to_json(),
    });
    emit(cli, report, Some(fam.to_csv()))?;
    Ok(ok)
}

fn build_code(cli: &Cli, kind: CodeKind, bent: &BentArgs, semi: &SemiArgs) -> Result<(NonlinearCode, std::collections::BTreeMap<usize, u64>)> {
    Ok(match kind {
        CodeKind::Bent => {
            let f = certify_bent(cli, &bent_spec(bent)?)?.normalized();
            (build_code_f(&f)?, code_f_weights(f.m())?)
        }
        CodeKind::Semibent => {
            let g = certify_semi(cli, bent, semi)?;
            (build_code_g(&g)?, code_g_weights(g.n())?)
        }
    })
}

fn code(cli: &Cli, kind: CodeKind, bent: &BentArgs, semi: &SemiArgs) -> Result<bool> {
    let (code, expected) = build_code(cli, kind, bent, semi)?;
    let d = code.distributions();
    let min = d.min_distance().unwrap_or(0);
    println!("({}, {}, {min}) code", code.length(), code.size());
    for (w, a) in &d.weight {
        println!("  A_{w} = {a}  B_{w} = {}", cyclicbent::rational_string(&d.distance[w]));
    }
    let mut ok = check(code.all_distinct(), "distinct", format!("{} codewords", code.size()));
    ok &= check(d.weight == expected, "weights", "weight distribution against the closed form");
    if kind == CodeKind::Bent {
        ok &= check(d.distance_equals_weight(), "distance", "distance distribution equals weight distribution");
    }
    let report = json!({
        "length": code.length(),
        "size": code.size(),
        "min_distance": min,
        "distributions": d.to_json(),
        "words": code.to_hex(),
    });
    let mut csv = String::from("index,word\n");
    for (i, w) in code.to_hex().iter().enumerate() {
        csv.push_str(&format!("{i},{w}\n"));
    }
    emit(cli, report, Some(csv))?;
    Ok(ok)
}

fn design(cli: &Cli, kind: CodeKind, ks: Option<&[usize]>, t: usize, bent: &BentArgs, semi: &SemiArgs) -> Result<bool> {
    let (code, _) = build_code(cli, kind, bent, semi)?;
    let v = code.length();
    let ks: Vec<usize> = match ks {
        Some(k) => k.to_vec(),
        None => code.distributions().weight.keys().copied().filter(|&w| w > 0 && w < v).collect(),
    };
    let mut ok = true;
    let mut results = Vec::new();
    for k in ks {
        let r = code.support_design(k, t)?;
        let detail = match (r.lambda, &r.witness) {
            (Some(l), _) => format!("{t}-({v},{k},{l}) with {} blocks", r.b),
            (None, Some((s, c))) => format!("blocks of size {k} are not a {t}-design: subset {s:?} covered {c} times"),
            (None, None) => format!("blocks of size {k} are not a {t}-design"),
        };
        ok &= check(r.is_design() && r.identity_holds(), &format!("design k={k}"), detail);
        results.push(r);
    }
    emit(cli, json!({ "designs": results }), None)?;
    Ok(ok)
}

fn charquad(cli: &Cli, m: u32, l: &str, path: PathChoice, walsh: bool) -> Result<bool> {
    let ctx = default_field(m)?;
    let lp = LinPoly::parse(ctx, l)?;
    let paths: &[KernelPath] = match path {
        PathChoice::Gcrd => &[KernelPath::Gcrd],
        PathChoice::Rank => &[KernelPath::Rank],
        PathChoice::Both => &[KernelPath::Gcrd, KernelPath::Rank],
    };
    let reports = paths.iter().map(|&p| is_cyclic_semibent_quadratic(&lp, p)).collect::<Result<Vec<_>, _>>()?;
    let verdict = reports[0].cyclic_semibent;
    let mut ok = reports.iter().all(|r| r.cyclic_semibent == verdict);
    let note = match (path, ok) {
        (PathChoice::Both, true) => "both paths agree",
        (PathChoice::Both, false) => "paths DISAGREE",
        (PathChoice::Gcrd, _) => "gcrd path",
        (PathChoice::Rank, _) => "rank path",
    };
    println!("L = {lp}");
    println!("cyclic-semi-bent: {verdict} ({note})");
    if let Some(r) = reports.first() {
        println!("kernel dim of L + L*: {}; tau values checked: {}", r.base_kernel_dim, r.taus_checked);
        if let Some((tau, dim)) = r.failing_tau {
            println!("first failing tau: {tau} (kernel dim {dim})");
        }
    }
    if path == PathChoice::Both {
        ok = check(ok, "paths", note);
    }
    if walsh {
        let cert = is_cyclic_semibent(&lp.quad_form(), mode(cli), opts(cli))?;
        ok &= check(cert.passed() == verdict, "walsh", format!("Walsh certifier says {} ({})", cert.passed(), cert_detail(&cert)));
    }
    emit(cli, json!({ "l": lp.to_indices(), "reports": reports }), None)?;
    Ok(ok)
}

fn selftest(seed: u64) -> Result<bool> {
    let o = CertifyOptions::default();
    let f = CyclicBent::certify_with(chain_fn(&ChainSpec::kerdock(4)?)?, VerifyMode::Full, o)?;
    let mut ok = check(true, "kerdock m=4", cert_detail(f.certificate()));

    let cb = build_real_codebook(&f, &[0; 7])?;
    let (imax, bound) = (cb.imax_sq()?, levenshtein_real_sq(cb.n() as i64, cb.k() as i64)?);
    ok &= check(imax == bound, "real codebook", format!("({}, {}) imax_sq={}", cb.n(), cb.k(), rat(&imax)));

    let r = build_mub(&f).verify();
    ok &= check(r.passed(), "mub", format!("{} bases of C^{}", r.bases, r.dim));

    let d = quaternary_family(&f)?.full_distribution();
    ok &= check(d == quaternary_table(4)?, "quaternary family", format!("{} values", d.total));

    let d = binary_family(&f)?.full_distribution();
    ok &= check(d == binary_table(4)?, "binary family", format!("{} values", d.total));

    let g = CyclicSemiBent::certify(gold_fn(3, 1)?, o)?;
    let d = semibent_family(&g)?.full_distribution();
    ok &= check(d == semibent_table(3)?, "semi-bent family", format!("{} values", d.total));

    let w = build_code_f(&f)?.distributions().weight;
    ok &= check(w == code_f_weights(4)?, "code C(f)", format!("{w:?}"));
    let w = build_code_g(&g)?.distributions().weight;
    ok &= check(w == code_g_weights(3)?, "code C(g)", format!("{w:?}"));

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut agree = 0;
    for m in [3u32, 5] {
        let ctx = default_field(m)?;
        for _ in 0..20 {
            let c: Vec<FieldElem> = (0..m).map(|_| FieldElem(rng.gen_range(0..ctx.size() as u32))).collect();
            let l = LinPoly::new(ctx.clone(), c)?;
            let a = is_cyclic_semibent_quadratic(&l, KernelPath::Gcrd)?.cyclic_semibent;
            let b = is_cyclic_semibent_quadratic(&l, KernelPath::Rank)?.cyclic_semibent;
            let c = is_cyclic_semibent(&l.quad_form(), VerifyMode::Reduced, o)?.passed();
            agree += (a == b && b == c) as u32;
        }
    }
    ok &= check(agree == 40, "skew-polynomial test", format!("{agree}/40 random L agree with the Walsh certifier (seed {seed})"));
    println!("selftest: {}", if ok { "all checks passed" } else { "FAILURES" });
    Ok(ok)
}
