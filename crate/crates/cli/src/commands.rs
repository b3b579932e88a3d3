use std::collections::BTreeSet;

use num_traits::Signed;
use rand::Rng;
use ternmap::analysis::boxcount::{graph_boxcount, Cells};
use ternmap::analysis::identities::{check_all, check_identity_by_id, Identity};
use ternmap::analysis::integral::{integral, riemann_tolerance, selfsimilar_integral, Method};
use ternmap::analysis::levelset::{
    levelset_enumerate, levelset_frequency_sweep, levelset_regression, LevelSetReport, PositionRule,
};
use ternmap::analysis::limits::{one_sided_limits, quotient_probe};
use ternmap::analysis::mapping::{
    fixed_point_candidates, fixed_points, injectivity_families, monotonicity_check,
    range_membership,
};
use ternmap::analysis::random::{random_rep, random_terminating, random_trits, rng};
use ternmap::rational::to_decimal;
use ternmap::transducer::{apply, apply_raw, builtin, decompose, eval, DigitMap, BUILTIN_NAMES};
use ternmap::{parse_rep_strict, Error as CoreError, TernaryRep, Trit};

use crate::config::{CliError, CliResult, RunConfig};
use crate::report::{Cell, Report};

fn header(cfg: &RunConfig, columns: &[&'static str]) -> Report {
    let mut r = Report::new(columns);
    r.meta("command", cfg.subcommand);
    r.meta("seed", cfg.seed);
    r
}

fn resolve_map(cfg: &RunConfig, default: &str) -> CliResult<DigitMap> {
    Ok(match (&cfg.map_table, &cfg.map_name) {
        (Some(table), _) => DigitMap::from_table_str(table)?,
        (None, Some(name)) => builtin(name)?,
        (None, None) => builtin(default)?,
    })
}

fn required_rep(value: &Option<String>, flag: &str) -> CliResult<TernaryRep> {
    match value {
        Some(text) => Ok(parse_rep_strict(text)?),
        None => Err(CliError::Config(format!("missing required flag {flag}"))),
    }
}

fn optional_rep(value: &Option<String>) -> CliResult<Option<TernaryRep>> {
    value.as_deref().map(parse_rep_strict).transpose().map_err(Into::into)
}

pub fn parse_prefix(text: &str) -> CliResult<Vec<Trit>> {
    text.chars()
        .map(|c| {
            Trit::from_char(c).ok_or_else(|| {
                CliError::Config(format!(
                    "invalid prefix {text:?}: {c:?} is not a ternary digit (expected digits 0, 1, 2 only)"
                ))
            })
        })
        .collect()
}

fn prefix_text(prefix: &[Trit]) -> String {
    prefix.iter().map(|d| char::from(b'0' + d.value())).collect()
}

pub fn eval_cmd(cfg: &RunConfig) -> CliResult<Report> {
    let map = resolve_map(cfg, "f")?;
    let x = required_rep(&cfg.x, "--x")?;
    let raw = apply_raw(&map, &x);
    let image = apply(&map, &x);
    let mut r = header(cfg, &["role", "rep", "value"]);
    r.meta("map", map.name());
    r.row(vec!["input".into(), x.to_string().into(), x.to_rational().into()]);
    r.row(vec!["raw".into(), raw.to_string().into(), raw.to_rational().into()]);
    r.row(vec!["image".into(), image.to_string().into(), image.to_rational().into()]);
    r.summary(
        "result",
        format!("{} = {}", image, ternmap::format_rational(&eval(&map, &x))),
    );
    Ok(r)
}

pub fn verify_cmd(cfg: &RunConfig, id: Option<&str>) -> CliResult<Report> {
    let mut r = header(cfg, &["identity", "formula", "passed", "checked"]);
    let identities: Vec<Identity> = match id {
        Some(id) => vec![id.parse()?],
        None => Identity::ALL.to_vec(),
    };
    r.meta("identities", identities.iter().map(|i| i.id()).collect::<Vec<_>>().join(","));

    let points: Vec<TernaryRep> = match optional_rep(&cfg.x)? {
        Some(x) => {
            r.meta("x", &x);
            vec![x]
        }
        None => {
            let trials = cfg.trials_or(1000)?;
            r.meta("trials", trials);
            let mut g = rng(cfg.seed);
            (0..trials).map(|_| random_rep(&mut g)).collect()
        }
    };

    let mut passed = vec![0u64; identities.len()];
    let mut first_failure: Option<String> = None;
    for x in &points {
        let checks = if identities.len() == Identity::ALL.len() {
            check_all(x)
        } else {
            identities
                .iter()
                .map(|i| check_identity_by_id(i.id(), x))
                .collect::<Result<_, _>>()?
        };
        for (slot, c) in passed.iter_mut().zip(&checks) {
            if c.holds() {
                *slot += 1;
            } else if first_failure.is_none() {
                first_failure = Some(format!(
                    "{} at {} (residual {})",
                    c.identity,
                    x,
                    ternmap::format_rational(&c.residual)
                ));
            }
        }
    }
    let n = points.len() as u64;
    for (identity, &p) in identities.iter().zip(&passed) {
        r.row(vec![identity.id().into(), identity.formula().into(), p.into(), n.into()]);
    }
    let total: u64 = passed.iter().sum();
    r.summary("passed", format!("{}/{}", total, n * identities.len() as u64));
    if let Some(f) = first_failure {
        r.summary("first_failure", f);
    }
    r.check("all_residuals_zero", total == n * identities.len() as u64);
    Ok(r)
}

pub fn sample_cmd(cfg: &RunConfig) -> CliResult<Report> {
    let map = resolve_map(cfg, "f")?;
    let depth = cfg.depth.unwrap_or(4);
    if depth > cfg.budget.max_sample_depth {
        return Err(CoreError::OverBudget {
            what: "sample depth",
            value: depth as u64,
            max: cfg.budget.max_sample_depth as u64,
        }
        .into());
    }
    let mut r = header(cfg, &["x_num", "x_den", "y_num", "y_den", "x_dec", "y_dec"]);
    r.meta("map", map.name());
    r.meta("depth", depth);
    let n = 3u64.pow(depth);
    let mut digits = vec![Trit::ZERO; depth as usize];
    for k in 0..n {
        let mut rest = k;
        for slot in digits.iter_mut().rev() {
            *slot = Trit::new((rest % 3) as u8).expect("digit");
            rest /= 3;
        }
        let x = TernaryRep::terminating(digits.clone());
        let xq = x.to_rational();
        let yq = eval(&map, &x);
        r.row(vec![
            Cell::Big(xq.numer().to_string()),
            Cell::Big(xq.denom().to_string()),
            Cell::Big(yq.numer().to_string()),
            Cell::Big(yq.denom().to_string()),
            to_decimal(&xq, 15).into(),
            to_decimal(&yq, 15).into(),
        ]);
    }
    Ok(r)
}

pub fn jump_cmd(cfg: &RunConfig) -> CliResult<Report> {
    let map = resolve_map(cfg, "f")?;
    let mut r = header(
        cfg,
        &["point", "n", "last_digit", "left_limit", "right_limit", "jump", "closed_form", "matches"],
    );
    r.meta("map", map.name());
    let points = match optional_rep(&cfg.x)? {
        Some(x) => vec![x],
        None => {
            let trials = cfg.trials_or(100)?;
            let max_len = cfg.depth.unwrap_or(12).max(1) as usize;
            r.meta("trials", trials);
            r.meta("max_digits", max_len);
            let mut g = rng(cfg.seed);
            (0..trials).map(|_| random_terminating(&mut g, max_len)).collect()
        }
    };
    let mut matched = 0;
    for x in &points {
        let j = one_sided_limits(&map, x)?;
        let ok = j.matches_closed_form();
        matched += ok as usize;
        r.row(vec![
            j.point.to_string().into(),
            j.position_n.into(),
            j.last_digit.value().into(),
            (&j.left_limit).into(),
            (&j.right_limit).into(),
            (&j.jump).into(),
            (&j.closed_form).into(),
            ok.into(),
        ]);
    }
    r.summary("matched", format!("{}/{}", matched, points.len()));
    r.check("jump_equals_closed_form", matched == points.len());
    Ok(r)
}

pub fn probe_cmd(cfg: &RunConfig) -> CliResult<Report> {
    let map = resolve_map(cfg, "f")?;
    let max_depth = cfg.depth.unwrap_or(8) as usize;
    let depths: Vec<usize> = (1..=max_depth).collect();
    let mut r = header(cfg, &["point", "depth", "digit", "perturbed", "quotient"]);
    r.meta("map", map.name());
    r.meta("depths", format!("1..={max_depth}"));
    let points = match optional_rep(&cfg.x)? {
        Some(x) => vec![x],
        None => {
            let trials = cfg.trials_or(100)?;
            r.meta("trials", trials);
            let mut g = rng(cfg.seed);
            (0..trials).map(|_| random_rep(&mut g)).collect()
        }
    };
    let mut all_values = BTreeSet::new();
    let mut certified = 0;
    for x in &points {
        let p = quotient_probe(&map, x, &depths)?;
        certified += p.certifies_no_derivative() as usize;
        for s in &p.samples {
            r.row(vec![
                x.to_string().into(),
                s.depth.into(),
                s.digit.value().into(),
                s.perturbed.value().into(),
                (&s.quotient).into(),
            ]);
        }
        all_values.extend(p.accumulation_values);
    }
    let values: Vec<String> = all_values.iter().map(ternmap::format_rational).collect();
    r.summary("quotient_values", values.join(" "));
    r.summary("certified", format!("{}/{}", certified, points.len()));
    r.check("no_derivative", certified == points.len());
    Ok(r)
}

pub fn boxcount_cmd(cfg: &RunConfig) -> CliResult<Report> {
    let map = resolve_map(cfg, "f")?;
    let rank = cfg.rank.or(cfg.depth).unwrap_or(8);
    let cells = if cfg.closed { Cells::Closed } else { Cells::HalfOpen };
    let mut r = header(cfg, &["rank", "cell_count", "cell_side", "dimension_estimate"]);
    r.meta("map", map.name());
    r.meta("rank", rank);
    r.meta("cells", if cfg.closed { "closed" } else { "half-open" });
    if rank == 0 {
        // let the core report the range error
        graph_boxcount(&map, rank, cells, &cfg.budget)?;
    }
    let mut exact = true;
    for m in 1..=rank {
        let b = graph_boxcount(&map, m, cells, &cfg.budget)?;
        exact &= b.cell_count == 3u64.pow(m) && b.dimension_estimate == 1.0;
        r.row(vec![
            b.rank.into(),
            b.cell_count.into(),
            format!("1/{}", b.cell_side_den).into(),
            b.dimension_estimate.into(),
        ]);
    }
    if !cfg.closed {
        r.check("count_is_3^m", exact);
    }
    Ok(r)
}

fn levelset_cells(l: &LevelSetReport) -> Vec<Cell> {
    vec![
        l.map_name.as_str().into(),
        l.target.to_string().into(),
        l.depth.into(),
        l.forced_positions.into(),
        Cell::Big(l.prefix_count.to_string()),
        l.empty.into(),
        l.dimension_estimate.into(),
    ]
}

const LEVELSET_COLUMNS: [&str; 7] = [
    "map",
    "target",
    "depth",
    "forced_positions",
    "prefix_count",
    "empty",
    "dimension_estimate",
];

fn merge_map_name(cfg: &RunConfig) -> CliResult<String> {
    if cfg.map_table.is_some() {
        return Err(CliError::Config(
            "level sets are defined for the named merge maps f01, f02, f12".into(),
        ));
    }
    Ok(cfg.map_name.clone().unwrap_or_else(|| "f01".into()))
}

pub fn levelset_cmd(cfg: &RunConfig, regression: bool) -> CliResult<Report> {
    let map = merge_map_name(cfg)?;
    let y = match optional_rep(&cfg.y)? {
        Some(y) => y,
        None => TernaryRep::zero(),
    };
    let depth = cfg.depth.unwrap_or(10) as usize;
    check_levelset_depth(cfg, depth)?;
    let mut r = header(cfg, &LEVELSET_COLUMNS);
    r.meta("map", &map);
    r.meta("y", &y);
    let report = levelset_enumerate(&map, &y, depth)?;
    r.row(levelset_cells(&report));
    if regression {
        let slope = levelset_regression(&map, &y, depth)?;
        r.summary(
            "regression_slope",
            slope.map(Cell::Float).unwrap_or_else(|| "none".into()),
        );
    }
    Ok(r)
}

fn check_levelset_depth(cfg: &RunConfig, depth: usize) -> CliResult<()> {
    if depth > cfg.budget.max_levelset_depth {
        return Err(CoreError::OverBudget {
            what: "level-set depth",
            value: depth as u64,
            max: cfg.budget.max_levelset_depth as u64,
        }
        .into());
    }
    Ok(())
}

pub fn sweep_cmd(cfg: &RunConfig, rule: Option<&str>) -> CliResult<Report> {
    let map = merge_map_name(cfg)?;
    let depth = cfg.depth.unwrap_or(20) as usize;
    check_levelset_depth(cfg, depth)?;
    let rules: Vec<PositionRule> = match rule {
        Some(text) => vec![text.parse()?],
        None => PositionRule::ALL.to_vec(),
    };
    let mut columns = vec!["rule"];
    columns.extend(LEVELSET_COLUMNS);
    let mut r = header(cfg, &columns);
    r.meta("map", &map);
    r.meta("depth", depth);
    let mut finals = Vec::new();
    for rule in &rules {
        let reports = levelset_frequency_sweep(&map, *rule, depth)?;
        for l in &reports {
            let mut cells = vec![Cell::from(rule.name())];
            cells.extend(levelset_cells(l));
            r.row(cells);
        }
        let last = reports.last().expect("depth >= 4").dimension_estimate;
        r.summary(&format!("{}_estimate", rule.name()), last);
        finals.push((*rule, last));
    }
    if rules.len() == PositionRule::ALL.len() {
        let [lin, quad, exp] = [finals[0].1, finals[1].1, finals[2].1];
        r.check("linear_is_zero", lin == 0.0);
        r.check("ordered", lin <= quad && quad <= exp);
    }
    Ok(r)
}

pub fn integral_cmd(cfg: &RunConfig, method: &str) -> CliResult<Report> {
    let map = resolve_map(cfg, "f")?;
    let method: Method = method.parse()?;
    let depth = cfg.depth.unwrap_or(10);
    let exact = selfsimilar_integral(&map);
    let mut r = header(cfg, &["method", "depth", "value", "deviation", "tolerance", "within"]);
    r.meta("map", map.name());
    r.meta("method", method);
    match method {
        Method::SelfSimilar => {
            let v = integral(&map, method, depth, &cfg.budget)?;
            r.row(vec![
                method.to_string().into(),
                "-".into(),
                (&v).into(),
                "-".into(),
                "-".into(),
                "-".into(),
            ]);
            r.summary("value_decimal", to_decimal(&v, 15));
        }
        Method::Riemann => {
            let v = integral(&map, method, depth, &cfg.budget)?;
            let deviation = (&v - &exact).abs();
            let tolerance = riemann_tolerance(depth);
            let within = deviation <= tolerance;
            r.row(vec![
                method.to_string().into(),
                depth.into(),
                (&v).into(),
                (&deviation).into(),
                (&tolerance).into(),
                within.into(),
            ]);
            r.summary("value_decimal", to_decimal(&v, 15));
            r.summary("reference", &exact);
            r.check("within_tolerance", within);
        }
    }
    Ok(r)
}

pub fn decompose_cmd(cfg: &RunConfig) -> CliResult<Report> {
    let maps: Vec<DigitMap> = if cfg.map_name.is_some() || cfg.map_table.is_some() {
        vec![resolve_map(cfg, "f")?]
    } else {
        BUILTIN_NAMES.iter().map(|n| builtin(n)).collect::<Result<_, _>>()?
    };
    let trials = cfg.trials_or(100)?;
    let mut r = header(cfg, &["map", "pair", "a", "b", "c", "digitwise", "value_checks"]);
    r.meta("trials", trials);
    let mut g = rng(cfg.seed);
    let points: Vec<TernaryRep> = (0..trials).map(|_| random_rep(&mut g)).collect();
    let mut all_ok = true;
    let mut every_map_decomposes = true;
    for m in &maps {
        let ds = decompose(m);
        every_map_decomposes &= !ds.is_empty();
        for d in &ds {
            let digitwise = d.holds_digitwise(m);
            let passed = points.iter().filter(|x| eval(m, x) == d.value_rhs(x)).count();
            all_ok &= digitwise && passed == points.len();
            r.row(vec![
                m.name().into(),
                d.pair.label().into(),
                (&d.a).into(),
                (&d.b).into(),
                (&d.c).into(),
                digitwise.into(),
                format!("{}/{}", passed, points.len()).into(),
            ]);
        }
    }
    r.check("every_map_decomposes", every_map_decomposes);
    r.check("zero_residual", all_ok);
    Ok(r)
}

pub fn fixedpoints_cmd(cfg: &RunConfig) -> CliResult<Report> {
    let depth = cfg.depth.unwrap_or(8) as usize;
    if depth == 0 {
        return Err(CoreError::TooSmall { what: "depth", value: 0, min: 1 }.into());
    }
    if depth > cfg.budget.max_fixedpoint_depth {
        return Err(CoreError::OverBudget {
            what: "fixed-point depth",
            value: depth as u64,
            max: cfg.budget.max_fixedpoint_depth as u64,
        }
        .into());
    }
    let mut r = header(cfg, &["point", "value"]);
    r.meta("depth", depth);
    let points = fixed_points(depth);
    for p in &points {
        r.row(vec![p.to_string().into(), p.to_rational().into()]);
    }
    r.summary("candidates", fixed_point_candidates(depth).len());
    r.check("only_zero", points == [TernaryRep::zero()]);
    Ok(r)
}

pub fn range_cmd(cfg: &RunConfig) -> CliResult<Report> {
    let y = required_rep(&cfg.y, "--y")?;
    let m = range_membership(&y);
    let mut r = header(cfg, &["y", "value", "member", "witness", "witness_image"]);
    let (witness, image): (Cell, Cell) = match &m.witness {
        Some(w) => (w.to_string().into(), apply(&builtin("f")?, w).to_string().into()),
        None => ("-".into(), "-".into()),
    };
    r.row(vec![
        y.to_string().into(),
        y.to_rational().into(),
        m.is_member().into(),
        witness,
        image,
    ]);
    if let Some(w) = &m.witness {
        r.check("witness_maps_to_y", eval(&builtin("f")?, w) == y.to_rational());
    }
    Ok(r)
}

pub fn mono_cmd(cfg: &RunConfig, prefix: Option<&str>) -> CliResult<Report> {
    let prefix = parse_prefix(prefix.unwrap_or(""))?;
    let trials = cfg.trials_or(100)?;
    let rep = monotonicity_check(&prefix, trials as usize, cfg.seed);
    let mut r = header(cfg, &["x1", "x2"]);
    r.meta("prefix", prefix_text(&prefix));
    r.meta("trials", trials);
    for (a, b) in &rep.failures {
        r.row(vec![a.to_string().into(), b.to_string().into()]);
    }
    r.summary("decreasing_passed", format!("{}/{}", rep.decreasing_passed, rep.trials));
    r.summary("increasing_passed", format!("{}/{}", rep.increasing_passed, rep.trials));
    r.summary("regenerated", rep.regenerated);
    r.check("monotone", rep.passed());
    Ok(r)
}

pub fn inject_cmd(cfg: &RunConfig, prefix: Option<&str>) -> CliResult<Report> {
    let mut r = header(cfg, &["prefix", "family", "x1", "x2", "image1", "image2", "common_value", "verified"]);
    let prefixes: Vec<Vec<Trit>> = match prefix {
        Some(p) => vec![parse_prefix(p)?],
        None => {
            let trials = cfg.trials_or(100)?;
            r.meta("trials", trials);
            let mut g = rng(cfg.seed);
            (0..trials)
                .map(|_| {
                    let len = g.gen_range(0..=8);
                    random_trits(&mut g, len)
                })
                .collect()
        }
    };
    let mut verified = 0;
    let mut total = 0;
    for p in &prefixes {
        for pair in injectivity_families(p) {
            let ok = pair.verified();
            verified += ok as usize;
            total += 1;
            r.row(vec![
                prefix_text(p).into(),
                pair.family.to_string().into(),
                pair.x1.to_string().into(),
                pair.x2.to_string().into(),
                pair.image1.to_string().into(),
                pair.image2.to_string().into(),
                pair.image1.to_rational().into(),
                ok.into(),
            ]);
        }
    }
    r.summary("verified", format!("{verified}/{total}"));
    r.check("all_pairs_collide", verified == total);
    Ok(r)
}
