use std::fmt::Write as _;
use std::path::Path;

use oa_core::codes::{hadamard_code, Builtin, Code, DistanceProfile};
use oa_core::delsarte::{
    delsarte_q, det_fission_closed, divisibility_tests, fission_q, fission_q_matrix, DesignParams,
};
use oa_core::exact::{parse_rat, ExactMatrix, Int, Rat};
use oa_core::extremal::{
    design_identity_residuals, e2_bounds, e2_check, e2_classification_consistent, e3_check,
    profile_residuals, rref_a_and_melzak,
};
use oa_core::krawtchouk::{kraw_eval, KrawSpec};
use oa_core::scheme::SchemeParams;
use oa_core::search::{feasible_tuples, render_csv, symmetric_search, SearchRange, Section};
use oa_core::triples::{self, tight3 as tight3_report, triple_feasible, TripleSystem};

use crate::{CodeSource, DesignArgs, Format};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Ok,
    Infeasible,
}

pub type Output = Result<(String, Verdict), CliError>;

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn parse_int(s: &str) -> Result<Int, CliError> {
    s.trim().parse().map_err(|_| usage(format!("not an integer: {s}")))
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn verdict_of(ok: bool) -> Verdict {
    if ok {
        Verdict::Ok
    } else {
        Verdict::Infeasible
    }
}

pub fn kraw(n: i64, q: i64, j: i64, x: i64) -> Output {
    let spec = KrawSpec::new(n, q, j).map_err(usage)?;
    let value = kraw_eval(spec, x).map_err(usage)?;
    Ok((format!("{value}\n"), Verdict::Ok))
}

fn parse_matrix(text: &str) -> Result<ExactMatrix, CliError> {
    let rows: Vec<Vec<Rat>> = text
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            l.split(',')
                .map(|c| parse_rat(c).ok_or_else(|| usage(format!("not a rational: {}", c.trim()))))
                .collect()
        })
        .collect::<Result<_, _>>()?;
    if rows.is_empty() || rows.iter().any(|r| r.len() != rows.len()) {
        return Err(usage("the Q-matrix must be square"));
    }
    Ok(ExactMatrix::from_rows(rows))
}

fn describe_scheme(out: &mut String, scheme: &SchemeParams) {
    let d = scheme.classes() + 1;
    writeln!(out, "v = {}, classes = {}", scheme.size(), scheme.classes()).unwrap();
    writeln!(out, "Q =\n{}", scheme.q_matrix()).unwrap();
    writeln!(out, "P =\n{}", scheme.p_matrix()).unwrap();
    writeln!(out, "valencies = {}", join(scheme.valencies())).unwrap();
    writeln!(out, "multiplicities = {}", join(scheme.multiplicities())).unwrap();
    for k in 0..d {
        let rows: Vec<String> = (0..d)
            .map(|i| (0..d).map(|j| scheme.p(i, j, k).to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        writeln!(out, "p_{{ij}}^{k}:\n  {}", rows.join("\n  ")).unwrap();
    }
    for k in 0..d {
        let rows: Vec<String> = (0..d)
            .map(|i| (0..d).map(|j| scheme.krein(i, j, k).to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        writeln!(out, "q_{{ij}}^{k}:\n  {}", rows.join("\n  ")).unwrap();
    }
    let orderings = scheme.qpoly_orderings();
    if orderings.is_empty() {
        writeln!(out, "Q-polynomial orderings: none").unwrap();
    }
    for o in &orderings {
        writeln!(
            out,
            "Q-polynomial ordering 0,{}: Krein array {}{}",
            join(&o.order),
            o.krein_array(),
            if o.q_antipodal { " (Q-antipodal)" } else { "" }
        )
        .unwrap();
    }
    if let Some(srg) = scheme.srg_parameters() {
        writeln!(out, "SRG parameters (v,k,lambda,mu) = ({})", join(&srg)).unwrap();
    }
}

fn feasibility_lines(out: &mut String, scheme: &SchemeParams) -> bool {
    let report = scheme.feasibility();
    writeln!(out, "intersection numbers integral: {}", report.p_integral).unwrap();
    writeln!(out, "intersection numbers nonnegative: {}", report.p_nonnegative).unwrap();
    writeln!(out, "Krein parameters nonnegative: {}", report.krein_nonnegative).unwrap();
    for v in &report.violations {
        writeln!(out, "violation: {v}").unwrap();
    }
    let ok = report.is_feasible();
    writeln!(out, "feasible: {}", if ok { "yes" } else { "no" }).unwrap();
    ok
}

pub fn scheme(path: &Path, size: &str) -> Output {
    let q = parse_matrix(&read(path)?)?;
    let scheme = SchemeParams::from_q(q, parse_int(size)?).map_err(usage)?;
    let mut out = String::new();
    describe_scheme(&mut out, &scheme);
    let ok = feasibility_lines(&mut out, &scheme);
    Ok((out, verdict_of(ok)))
}

fn design(d: &DesignArgs) -> Result<DesignParams, CliError> {
    let size = parse_int(&d.size)?;
    let t = d.t.unwrap_or(2 * d.alphas.len() as i64 - 1);
    DesignParams::new(size, d.n, d.q, d.alphas.clone(), t).map_err(usage)
}

pub fn delsarte(args: &DesignArgs, fission: bool) -> Output {
    let d = design(args)?;
    let mut out = format!("design {d}\n");
    let scheme = if fission {
        fission_q(&d).map_err(usage)?
    } else {
        delsarte_q(&d).map_err(usage)?
    };
    describe_scheme(&mut out, &scheme);
    let mut ok = feasibility_lines(&mut out, &scheme);
    if fission {
        let det = fission_q_matrix(&d).map_err(usage)?.det().map_err(usage)?;
        let closed = det_fission_closed(&d);
        writeln!(out, "det Q = {det}").unwrap();
        let agrees = det == closed || -det.clone() == closed;
        writeln!(out, "|det Q| closed form = {closed} ({})", if agrees { "agrees" } else { "DIFFERS" })
            .unwrap();
    }
    for check in divisibility_tests(&d) {
        ok &= check.passed();
        writeln!(out, "{check}").unwrap();
    }
    Ok((out, verdict_of(ok)))
}

fn design_from_list(list: &str) -> Result<DesignParams, CliError> {
    let parts: Vec<&str> = list.split(',').collect();
    if parts.len() < 4 {
        return Err(usage("expected N,n,q,a1,..,as"));
    }
    let num = |s: &str| s.trim().parse::<i64>().map_err(|_| usage(format!("not an integer: {s}")));
    let alphas = parts[3..].iter().map(|p| num(p)).collect::<Result<Vec<_>, _>>()?;
    DesignParams::extremal(parse_int(parts[0])?, num(parts[1])?, num(parts[2])?, alphas).map_err(usage)
}

fn scheme_source(source: &str, size: Option<&str>) -> Result<SchemeParams, CliError> {
    if let Some(q) = source.strip_prefix("tight3:") {
        let q: i64 = q.trim().parse().map_err(|_| usage(format!("not an integer: {q}")))?;
        return Ok(tight3_report(q).map_err(usage)?.scheme);
    }
    if let Some(list) = source.strip_prefix("delsarte:") {
        return delsarte_q(&design_from_list(list)?).map_err(usage);
    }
    if let Some(list) = source.strip_prefix("fission:") {
        return fission_q(&design_from_list(list)?).map_err(usage);
    }
    let size = size.ok_or_else(|| usage("a Q-matrix file needs --size"))?;
    let q = parse_matrix(&read(Path::new(source))?)?;
    SchemeParams::from_q(q, parse_int(size)?).map_err(usage)
}

fn verdict_line(v: &triples::Verdict) -> String {
    match v {
        triples::Verdict::Feasible(_) => "feasible".into(),
        triples::Verdict::Infeasible(w) => format!("infeasible: {w}"),
        triples::Verdict::Unknown => "unknown".into(),
    }
}

pub fn triples(source: &str, size: Option<&str>, base: Option<Vec<usize>>) -> Output {
    let scheme = scheme_source(source, size)?;
    let mut out = String::new();
    match base {
        Some(b) => {
            let system = TripleSystem::new(&scheme, b[0], b[1], b[2]).map_err(usage)?;
            let solution = system.solve();
            writeln!(out, "base triple ({},{},{})", b[0], b[1], b[2]).unwrap();
            writeln!(
                out,
                "unknowns = {}, rank = {}, Krein equations = {}",
                system.unknowns().len(),
                system.rank(),
                system.krein_equation_count()
            )
            .unwrap();
            match solution.kernel_dimension() {
                Some(k) => writeln!(out, "kernel dimension = {k}").unwrap(),
                None => writeln!(out, "system inconsistent").unwrap(),
            }
            for ((r, s, t), v) in solution.determined() {
                writeln!(out, "[{r} {s} {t}] = {v}").unwrap();
            }
            let v = triples::verdict(&system);
            writeln!(out, "verdict: {}", verdict_line(&v)).unwrap();
            let ok = !matches!(v, triples::Verdict::Infeasible(_));
            Ok((out, verdict_of(ok)))
        }
        None => {
            let result = triple_feasible(&scheme);
            for ((a, b, c), v) in &result.checked {
                writeln!(out, "({a},{b},{c}): {}", verdict_line(v)).unwrap();
            }
            writeln!(out, "verdict: {}", verdict_line(&result.verdict)).unwrap();
            let ok = !matches!(result.verdict, triples::Verdict::Infeasible(_));
            Ok((out, verdict_of(ok)))
        }
    }
}

pub fn tight3(q: i64) -> Output {
    if q < 2 {
        return Err(usage(format!("q = {q} must be at least 2")));
    }
    let r = tight3_report(q).map_err(usage)?;
    let mut out = format!("tight 3-design ({}, {}, {}, {{{}, {}}})\n", q * q * q, q + 2, q, q, q + 2);
    writeln!(out, "fission Q matches closed form: {}", r.matches_closed_form).unwrap();
    if let Some(k) = &r.krein_array {
        writeln!(out, "Krein array {k}").unwrap();
    }
    writeln!(out, "p_{{2,2}}^2 = {}", r.p222).unwrap();
    if let Some(v) = &r.value_123 {
        writeln!(out, "[1 2 3] = {v} at triple (2,2,2)").unwrap();
    }
    if q == 2 {
        writeln!(out, "q = 2: p_{{2,2}}^2 = 0, no triple at (2,2,2); exempt").unwrap();
    }
    let rejected = r.rejected();
    match &r.verdict {
        triples::Verdict::Infeasible(w) => writeln!(out, "verdict: rejected, {w}").unwrap(),
        _ => writeln!(out, "verdict: not rejected").unwrap(),
    }
    if !rejected && !r.parameters.is_feasible() {
        let first = &r.parameters.violations[0];
        writeln!(out, "note: the scheme parameters fail elsewhere, {first}").unwrap();
    }
    Ok((out, verdict_of(!rejected)))
}

fn load_code(src: &CodeSource) -> Result<Code, CliError> {
    match (&src.name, &src.file) {
        (Some(name), _) => name.parse::<Builtin>().and_then(|b| b.build()).map_err(usage),
        (_, Some(path)) => Code::parse(&read(path)?).map_err(usage),
        _ => Err(usage("give --name or --file")),
    }
}

fn code_report(out: &mut String, code: &Code) -> bool {
    let p = code.profile();
    writeln!(out, "{p}").unwrap();
    writeln!(out, "distance distribution = {}", join(&p.distribution)).unwrap();
    let t = p.strength.max(0) as usize;
    writeln!(out, "direct column check at strength {t}: {}", code.oa_strength_direct(t)).unwrap();
    let mut ok = true;
    let s = p.degree() as i64;
    if s >= 1 && p.strength == 2 * s - 1 {
        ok &= extremal_report(out, &p);
    }
    if s >= 1 && p.strength >= 2 * s - 2 && p.strength <= 2 * s {
        if let Ok(d) = DesignParams::new(p.size.clone(), p.n, p.q, p.degree_set.clone(), p.strength) {
            for check in divisibility_tests(&d) {
                ok &= check.passed();
                writeln!(out, "{check}").unwrap();
            }
            if let Ok(scheme) = delsarte_q(&d) {
                let feasible = scheme.feasibility().is_feasible();
                ok &= feasible;
                writeln!(out, "Delsarte scheme feasible: {feasible}").unwrap();
                if let Some(srg) = scheme.srg_parameters() {
                    writeln!(out, "SRG parameters (v,k,lambda,mu) = ({})", join(&srg)).unwrap();
                }
            }
        }
    }
    ok
}

fn extremal_report(out: &mut String, p: &DistanceProfile) -> bool {
    let mut ok = true;
    if let Ok(b) = e2_check(p.n, p.q, &p.complement) {
        writeln!(
            out,
            "sum bound: {} <= {} <= {}: {}{}{}",
            b.lower,
            b.sum,
            b.upper,
            b.within,
            if b.equal_lower { " (equal to lower bound)" } else { "" },
            if b.equal_upper { " (equal to upper bound)" } else { "" }
        )
        .unwrap();
        ok &= b.within;
    }
    if let Ok(consistent) = e2_classification_consistent(p) {
        writeln!(out, "equality classification consistent: {consistent}").unwrap();
        ok &= consistent;
    }
    if let Ok(sums) = e3_check(&p.complement) {
        let holds = sums.iter().all(|s| s.holds);
        writeln!(out, "partial sum bounds hold: {holds}").unwrap();
        ok &= holds;
    }
    if let Ok(res) = profile_residuals(p) {
        let zero = res.iter().all(|r| *r == Rat::from_integer(0.into()));
        writeln!(out, "design identity residuals = {} ({})", join(&res), if zero { "all zero" } else { "NONZERO" })
            .unwrap();
        ok &= zero;
    }
    ok
}

pub fn verify_code(src: &CodeSource) -> Output {
    let code = load_code(src)?;
    let mut out = String::new();
    let ok = code_report(&mut out, &code);
    Ok((out, verdict_of(ok)))
}

fn parse_hadamard(text: &str) -> Result<Vec<Vec<i8>>, CliError> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let l = l.trim();
            let tokens: Vec<&str> = if l.contains(char::is_whitespace) {
                l.split_whitespace().collect()
            } else {
                let mut v = Vec::new();
                let mut rest = l;
                while !rest.is_empty() {
                    let cut = if rest.starts_with(['+', '-']) && rest[1..].starts_with('1') { 2 } else { 1 };
                    let cut = cut.min(rest.len());
                    v.push(&rest[..cut]);
                    rest = &rest[cut..];
                }
                v
            };
            tokens
                .into_iter()
                .map(|t| match t {
                    "1" | "+1" | "+" => Ok(1),
                    "-1" | "-" => Ok(-1),
                    _ => Err(usage(format!("not a +1/-1 entry: {t}"))),
                })
                .collect()
        })
        .collect()
}

pub fn hadamard(path: &Path) -> Output {
    let h = parse_hadamard(&read(path)?)?;
    let code = match hadamard_code(&h) {
        Ok(c) => c,
        Err(e) => return Ok((format!("{e}\n"), Verdict::Infeasible)),
    };
    let n = code.n() as i64;
    let mut out = String::new();
    code_report(&mut out, &code);
    let p = code.profile();
    let ok = p.degree_set == vec![n / 2, n] && n % 2 == 0;
    writeln!(out, "degree set equals {{{}, {}}}: {ok}", n / 2, n).unwrap();
    Ok((out, verdict_of(ok)))
}

pub fn contraction(src: &CodeSource, column: usize, symbol: usize, out_path: Option<&Path>) -> Output {
    let code = load_code(src)?;
    if symbol == 0 {
        return Err(usage("symbols are numbered from 1"));
    }
    let c = code.contraction(column, symbol).map_err(usage)?;
    let before = code.profile();
    let after = c.profile();
    let mut out = String::new();
    writeln!(
        out,
        "input: N = {}, n = {}, q = {}, strength {}, {}",
        before.size, before.n, before.q, before.strength, before.tightness
    )
    .unwrap();
    writeln!(out, "contraction at column {column}, symbol {symbol}:").unwrap();
    writeln!(out, "{after}").unwrap();
    if let Some(path) = out_path {
        write(path, &c.to_text())?;
    }
    Ok((out, Verdict::Ok))
}

pub fn inequality(n: i64, q: i64, s: i64, alphas: Option<Vec<i64>>, size: Option<&str>) -> Output {
    let (lower, upper) = e2_bounds(n, q, s).map_err(usage)?;
    let mut out = format!("n = {n}, q = {q}, s = {s}\n");
    writeln!(out, "sum bounds: {lower} <= x_1 + ... + x_s <= {upper}").unwrap();
    let melzak = rref_a_and_melzak(n, q, s).map_err(usage)?;
    writeln!(out, "reduced A matches closed form: {}", melzak.rref_matches).unwrap();
    for (i, (l, r)) in melzak.melzak.iter().enumerate() {
        writeln!(out, "sum identity {}: {l} = {r} ({})", i + 1, l == r).unwrap();
    }
    let mut ok = true;
    if let Some(alphas) = alphas {
        if alphas.len() as i64 != s || alphas.iter().any(|&a| a < 1 || a > n) {
            return Err(usage(format!("expected {s} distances in 1..={n}")));
        }
        let mut xs: Vec<i64> = alphas.iter().map(|a| n - a).collect();
        xs.sort_unstable();
        writeln!(out, "x = {}", join(&xs)).unwrap();
        let b = e2_check(n, q, &xs).map_err(usage)?;
        writeln!(
            out,
            "sum = {}: within {}, equal lower {}, equal upper {}",
            b.sum, b.within, b.equal_lower, b.equal_upper
        )
        .unwrap();
        ok &= b.within;
        for p in e3_check(&xs).map_err(usage)? {
            writeln!(out, "partial sum m = {}: {} >= {}: {}", p.m, p.sum, p.bound, p.holds).unwrap();
            ok &= p.holds;
        }
        if let Some(size) = size {
            let res = design_identity_residuals(&parse_int(size)?, n, q, &xs).map_err(usage)?;
            let zero = res.iter().all(|r| *r == Rat::from_integer(0.into()));
            writeln!(out, "design identity residuals = {}", join(&res)).unwrap();
            ok &= zero;
        }
    } else if size.is_some() {
        return Err(usage("--N needs --distances"));
    }
    Ok((out, verdict_of(ok)))
}

pub struct SearchArgs {
    pub s: i64,
    pub q_min: i64,
    pub q_max: i64,
    pub n_min: i64,
    pub n_max: i64,
    pub exhaustive: bool,
}

pub fn search(args: SearchArgs, out_path: Option<&Path>, jobs: Option<usize>, format: Format) -> Output {
    let range = SearchRange {
        s: args.s,
        q_min: args.q_min,
        q_max: args.q_max,
        n_min: args.n_min,
        n_max: args.n_max,
        exhaustive: args.exhaustive,
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        builder = builder.num_threads(j.max(1));
    }
    let pool = builder.build().map_err(usage)?;
    let outcome = pool.install(|| feasible_tuples(&range)).map_err(usage)?;
    let s = args.s as usize;
    let main = outcome.section(Section::Main);
    if let Some(path) = out_path {
        write(path, &render_csv(s, &main))?;
    }
    let mut out = String::new();
    for section in [Section::Main, Section::Hadamard, Section::Tight2s] {
        let rows = outcome.section(section);
        if section != Section::Main && rows.is_empty() {
            continue;
        }
        match format {
            Format::Csv => {
                writeln!(out, "# {section}").unwrap();
                out.push_str(&render_csv(s, &rows));
            }
            Format::Text => {
                writeln!(out, "{section} ({} rows)", rows.len()).unwrap();
                for r in &rows {
                    let srg = r.srg.as_ref().map(|v| format!(" srg=({})", join(v))).unwrap_or_default();
                    writeln!(
                        out,
                        "  N={} n={} q={} alphas={{{}}}{srg}{}",
                        r.size,
                        r.n,
                        r.q,
                        join(&r.alphas),
                        if r.tight { " tight" } else { "" }
                    )
                    .unwrap();
                }
            }
        }
    }
    for u in &outcome.unresolved {
        writeln!(out, "unresolved: N={} n={} q={}: {}", u.size, u.n, u.q, u.reason).unwrap();
    }
    Ok((out, Verdict::Ok))
}

pub fn symmetric(s: i64, n_max: i64) -> Output {
    let rows = symmetric_search(s, n_max).map_err(usage)?;
    let mut out = String::new();
    for r in &rows {
        let m = r.m.map(|m| format!(" m={m}")).unwrap_or_default();
        writeln!(
            out,
            "n={} N={} a={}{m} alphas={{{}}}{}",
            r.n,
            r.size,
            r.a,
            join(&r.alphas),
            if r.conditional { " (needs a Hadamard matrix of order n)" } else { "" }
        )
        .unwrap();
    }
    if rows.is_empty() {
        out.push_str("no solutions\n");
    }
    Ok((out, Verdict::Ok))
}
