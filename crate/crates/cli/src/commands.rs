use std::path::Path;

use massforge::exact::parse_rational;
use massforge::genfun::{an_genfun, bn_genfun, dn_genfun_odd, dn_mass_odd};
use massforge::lfdata::perm::{parse_cycles, Perm};
use massforge::lfdata::{
    c123_check, d4_audit_first_principles, d4_mass_from_data, D4Audit, LocalFieldTable,
};
use massforge::tame::{is_uniform_tame, tame_quasi_poly, QuasiPoly};
use massforge::weyl::{parse_group, GroupOptions};
use massforge::wild::{
    census_mass, g2_q2_census_mass, g2_wild_char2_mass, g2_wild_char3_mass, mu_c2_from_census,
    z2_q2, z2d_f2t, z2d_q2, Census,
};
use massforge::{rat, Exec, LaurentPoly, MassError, MatGroup, Result};
use serde_json::{json, Value};

use crate::config::Config;
use crate::output::{poly_json, rational, Report};
use crate::{Check, Cli, Command, Series};

pub fn run(cli: &Cli) -> Result<Report> {
    let config = match &cli.config {
        Some(p) => Config::load(p)?,
        None => Config::default(),
    };
    let opts = config.group_options(cli.allow_e6, cli.z3_gl1);
    match &cli.command {
        Command::TameMass { group, q } => tame_mass(cli, &opts, group, *q),
        Command::Uniformity { group } => uniformity(cli, &opts, group),
        Command::Genfun { series, order } => genfun(cli, *series, *order),
        Command::Verify {
            check,
            census,
            q,
            expect,
        } => match (check, census) {
            (Some(c), _) => verify(cli, &opts, *c),
            (None, Some(path)) => verify_census(cli, path, q.unwrap_or(2), expect.as_deref()),
            (None, None) => Err(MassError::domain("nothing to verify")),
        },
        Command::AuditD4 {
            fixtures,
            derive,
            emit_series,
        } => audit_d4(cli, fixtures.as_deref(), *derive, *emit_series),
        Command::C123 {
            group,
            subgroup,
            max_order,
        } => c123(cli, group, subgroup, config.max_order(*max_order)),
    }
}

fn quasi_json(qp: &QuasiPoly) -> Value {
    json!({
        "modulus": qp.modulus(),
        "uniform": qp.uniform().map(poly_json),
        "entries": qp.table().iter().map(|(r, p)| json!({"residue": r, "poly": poly_json(p)})).collect::<Vec<_>>(),
    })
}

fn tame_mass(cli: &Cli, opts: &GroupOptions, descriptor: &str, q: Option<u64>) -> Result<Report> {
    let group = parse_group(descriptor, opts)?;
    let qp = tame_quasi_poly(&group);
    let mass = q.map(|q| qp.eval(q).map(|m| (q, m))).transpose()?;
    if cli.json {
        let mut v =
            json!({"group": descriptor, "order": group.order(), "quasi_poly": quasi_json(&qp)});
        if let Some((q, m)) = &mass {
            v["q"] = json!(q);
            v["mass"] = json!(m.to_string());
        }
        return Ok(Report::json(true, v));
    }
    let mut text = format!("{qp}\n");
    if let Some((q, m)) = mass {
        text += &format!("mass at q = {q}: {}\n", rational(&m, cli.decimal));
    }
    Ok(Report::new(true, text))
}

fn uniformity(cli: &Cli, opts: &GroupOptions, descriptor: &str) -> Result<Report> {
    let group = parse_group(descriptor, opts)?;
    let (uniform, poly) = is_uniform_tame(&group);
    let rational_group = group.is_rational_group();
    if cli.json {
        return Ok(Report::json(
            true,
            json!({
                "group": descriptor,
                "uniform": uniform,
                "rational_group": rational_group,
                "poly": poly.as_ref().map(poly_json),
            }),
        ));
    }
    let mut text = format!("uniform: {uniform}\nrational group: {rational_group}\n");
    if let Some(p) = poly {
        text += &format!("polynomial: {p}\n");
    }
    Ok(Report::new(true, text))
}

fn genfun(cli: &Cli, series: Series, order: usize) -> Result<Report> {
    let s = match series {
        Series::An => an_genfun(order),
        Series::Bn => bn_genfun(order),
        Series::DnOdd => dn_genfun_odd(order),
    };
    let coeffs: Vec<&LaurentPoly> = (0..=order).map(|k| s.coeff(k)).collect();
    if cli.json {
        return Ok(Report::json(
            true,
            json!({"order": order, "coefficients": coeffs.iter().map(|p| poly_json(p)).collect::<Vec<_>>()}),
        ));
    }
    let text = coeffs
        .iter()
        .enumerate()
        .map(|(k, p)| format!("x^{k}: {p}\n"))
        .collect();
    Ok(Report::new(true, text))
}

enum Shown {
    Rat(massforge::Rational),
    Poly(LaurentPoly),
    Text(String),
}

fn verdict(cli: &Cli, name: &str, value: Shown, ok: bool, expected: &str) -> Report {
    let shown = match &value {
        Shown::Rat(r) => rational(r, cli.decimal),
        Shown::Poly(p) => p.to_string(),
        Shown::Text(s) => s.clone(),
    };
    if cli.json {
        let v = match value {
            Shown::Rat(r) => json!(r.to_string()),
            Shown::Poly(p) => poly_json(&p),
            Shown::Text(s) => json!(s),
        };
        return Report::json(
            ok,
            json!({"check": name, "value": v, "expected": expected, "ok": ok}),
        );
    }
    if ok {
        Report::new(true, format!("{shown} OK\n"))
    } else {
        Report::new(false, format!("{shown} MISMATCH (expected {expected})\n"))
    }
}

fn tame_poly(descriptor: &str, opts: &GroupOptions) -> Result<QuasiPoly> {
    parse_group(descriptor, opts).map(|g: MatGroup| tame_quasi_poly(&g))
}

fn verify(cli: &Cli, opts: &GroupOptions, check: Check) -> Result<Report> {
    let census_check = |name: &str, c: Census, expected: massforge::Rational| -> Result<Report> {
        let v = census_mass(&c, 2)?;
        let ok = v == expected;
        Ok(verdict(cli, name, Shown::Rat(v), ok, &expected.to_string()))
    };
    match check {
        Check::Z2 => census_check("z2", z2_q2(), rat(3, 2)),
        Check::Z2Doubled => census_check("z2-doubled", z2d_q2(), rat(35, 32)),
        Check::F2t => census_check("f2t", z2d_f2t(), rat(15, 14)),
        Check::G2Q2 => {
            let direct = g2_q2_census_mass()?;
            let mu = mu_c2_from_census(&z2d_q2(), 2)?;
            let via_mu = g2_wild_char2_mass(&LaurentPoly::constant(mu)).eval_at_q(2)?;
            let ok = direct == rat(83, 32) && via_mu == direct;
            Ok(verdict(cli, "g2-q2", Shown::Rat(direct), ok, "83/32"))
        }
        Check::G2Char3 => {
            let wild = g2_wild_char3_mass()?;
            let tame = tame_poly("G2", opts)?;
            let expected =
                LaurentPoly::from_terms([(0, rat(1, 1)), (1, rat(2, 1)), (2, rat(3, 1))]);
            let ok = wild == expected && tame.uniform() == Some(&expected);
            Ok(verdict(
                cli,
                "g2-char3",
                Shown::Poly(wild),
                ok,
                &expected.to_string(),
            ))
        }
        Check::D2D3Isos => {
            let d2 = tame_poly("D2", opts)?;
            let d3 = tame_poly("D3", opts)?;
            let ok = d2 == tame_poly("A1×A1", opts)?
                && d3 == tame_poly("A3", opts)?
                && d2.uniform() == Some(&dn_mass_odd(2))
                && d3.uniform() == Some(&dn_mass_odd(3));
            let text = format!(
                "D2: {}; D3: {}",
                d2.uniform().map_or("not uniform".into(), |p| p.to_string()),
                d3.uniform().map_or("not uniform".into(), |p| p.to_string()),
            );
            Ok(verdict(
                cli,
                "d2-d3-isos",
                Shown::Text(text),
                ok,
                "D2 = A1×A1 and D3 = A3",
            ))
        }
    }
}

fn verify_census(cli: &Cli, path: &Path, q: u64, expect: Option<&str>) -> Result<Report> {
    let census = Census::from_path(path)?;
    let v = census_mass(&census, q)?;
    match expect {
        Some(e) => {
            let e = parse_rational(e)?;
            let ok = v == e;
            Ok(verdict(cli, "census", Shown::Rat(v), ok, &e.to_string()))
        }
        None if cli.json => Ok(Report::json(true, json!({"q": q, "mass": v.to_string()}))),
        None => Ok(Report::new(
            true,
            format!("{}\n", rational(&v, cli.decimal)),
        )),
    }
}

const CLASS_NAMES: [&str; 4] = ["a", "b", "c", "d"];

fn audit_d4(cli: &Cli, fixtures: Option<&Path>, derive: bool, emit_series: bool) -> Result<Report> {
    let (source, audit): (String, D4Audit) = if derive {
        (
            "Eisenstein enumeration".into(),
            d4_audit_first_principles(Exec::default())?,
        )
    } else if let Some(dir) = fixtures {
        let table = LocalFieldTable::load_dir(dir)?;
        (
            format!("field records in {}", dir.display()),
            d4_mass_from_data(&table)?,
        )
    } else {
        return Err(MassError::domain(
            "no field records: pass --fixtures DIR, set MASSFORGE_FIXTURES, or use --derive",
        ));
    };
    let mass = audit.mass(2)?;
    let nonsplit = audit.nonsplit_a[3].eval_at_q(2)?;
    let odd = dn_genfun_odd(4).coeff(4).eval_at_q(2)?;
    let logs: Vec<Vec<massforge::Rational>> = audit
        .logs
        .iter()
        .map(|l| l.eval_at_q(2))
        .collect::<Result<_>>()?;
    if cli.json {
        let mut v = json!({
            "source": source,
            "mass": mass.to_string(),
            "nonsplit_log_a_x4": nonsplit.to_string(),
            "odd_formula_x4": odd.to_string(),
            "uniform": mass == odd,
        });
        if emit_series {
            for (name, l) in CLASS_NAMES.iter().zip(&logs) {
                v["log_series"][name] =
                    json!(l[1..].iter().map(|c| c.to_string()).collect::<Vec<_>>());
            }
        }
        return Ok(Report::json(true, v));
    }
    let d = cli.decimal;
    let mut text = format!(
        "source: {source}\nnonsplit log a, x^4 coefficient: {}\nW(D4) mass at q = 2: {}\nodd-characteristic formula at q = 2: {}\nuniform: {}\n",
        rational(&nonsplit, d),
        rational(&mass, d),
        rational(&odd, d),
        mass == odd
    );
    if emit_series {
        for (name, l) in CLASS_NAMES.iter().zip(&logs) {
            let cs: Vec<String> = l[1..].iter().map(|c| rational(c, d)).collect();
            text += &format!("log {name}: {}\n", cs.join(", "));
        }
    }
    Ok(Report::new(true, text))
}

/// Generator file: one permutation per line in cycle notation; `#` starts a
/// comment and an optional `degree N` line fixes the number of letters.
fn read_generators(path: &Path) -> Result<(Option<usize>, Vec<(usize, String)>)> {
    let text = std::fs::read_to_string(path).map_err(|e| MassError::Io {
        path: path.display().to_string(),
        msg: e.to_string(),
    })?;
    let mut degree = None;
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(d) = line.strip_prefix("degree") {
            let d = d.trim_start_matches([':', ' ']).trim();
            degree = Some(d.parse().map_err(|_| MassError::Parse {
                line: i + 1,
                msg: format!("bad degree {d:?}"),
            })?);
        } else {
            lines.push((i + 1, line.to_string()));
        }
    }
    Ok((degree, lines))
}

fn max_letter(lines: &[(usize, String)]) -> usize {
    lines
        .iter()
        .flat_map(|(_, l)| {
            l.split(|c: char| !c.is_ascii_digit())
                .filter_map(|x| x.parse::<usize>().ok())
        })
        .max()
        .unwrap_or(1)
}

fn perms(lines: &[(usize, String)], degree: usize) -> Result<Vec<Perm>> {
    lines
        .iter()
        .map(|(n, l)| {
            parse_cycles(l, degree).map_err(|e| MassError::Parse {
                line: *n,
                msg: e.to_string(),
            })
        })
        .collect()
}

fn c123(cli: &Cli, g: &Path, h: &Path, max_order: usize) -> Result<Report> {
    let (dg, gl) = read_generators(g)?;
    let (dh, hl) = read_generators(h)?;
    let degree = dg
        .or(dh)
        .unwrap_or_else(|| max_letter(&gl).max(max_letter(&hl)));
    let rows = c123_check(
        &perms(&gl, degree)?,
        &perms(&hl, degree)?,
        degree,
        max_order,
    )?;
    if cli.json {
        let v: Vec<Value> = rows
            .iter()
            .map(|r| {
                json!({
                    "orbit": r.orbit, "c1": r.c1, "c2": r.c2, "c3": r.c3,
                    "unique_tower": r.unique_tower(), "aut_equal": r.aut_equal(),
                })
            })
            .collect();
        return Ok(Report::json(true, json!({"degree": degree, "rows": v})));
    }
    if rows.is_empty() {
        return Ok(Report::new(
            true,
            "no length-2 orbits with a tower\n".into(),
        ));
    }
    let text = rows
        .iter()
        .map(|r| {
            format!(
                "orbit {:?}: c1 = {}, c2 = {}, c3 = {}, unique tower: {}, aut equal: {}\n",
                r.orbit,
                r.c1,
                r.c2,
                r.c3,
                r.unique_tower(),
                r.aut_equal()
            )
        })
        .collect();
    Ok(Report::new(true, text))
}
