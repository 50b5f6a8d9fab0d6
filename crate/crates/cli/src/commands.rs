use std::collections::{BTreeMap, BTreeSet};

use gcr_engine::centralizer::{separability_scan, Certificate, Method};
use gcr_engine::chevalley::Parabolic;
use gcr_engine::crcheck::{case_spec, is_gcr_perm, table_classes_in, verify_case, CaseReport, CaseSpec, CASES};
use gcr_engine::field::{F2Poly, RationalFunction};
use gcr_engine::kulshammer::{A2Family, E6Family};
use gcr_engine::rootdata::{build_root_system, RootType};
use gcr_engine::weyl::classify_subgroups;
use gcr_engine::{Char2Field, EngineError, Gf16, Gf2, Gf256, Gf4, Gf64, Result};
use rayon::prelude::*;
use serde::Serialize;

use crate::golden;
use crate::render::Outcome;

/// Runs `$body` with `$F` bound to GF(2^m).
macro_rules! with_field {
    ($m:expr, $F:ident => $body:expr) => {
        match $m {
            1 => {
                type $F = Gf2;
                $body
            }
            2 => {
                type $F = Gf4;
                $body
            }
            4 => {
                type $F = Gf16;
                $body
            }
            6 => {
                type $F = Gf64;
                $body
            }
            8 => {
                type $F = Gf256;
                $body
            }
            m => Err(EngineError::Parse(format!("unsupported field degree {m}"))),
        }
    };
}

fn levi_degree(ty: RootType) -> Result<usize> {
    ty.levi_degree().ok_or_else(|| EngineError::UnknownType(ty.to_string()))
}

fn torus_text(spec: &CaseSpec) -> String {
    if spec.t.is_empty() {
        return "1".into();
    }
    let mut s = String::new();
    for (i, (l, k)) in spec.t.iter().enumerate() {
        let sign = if *k < 0 { "-" } else if i > 0 { "+" } else { "" };
        let k = k.abs();
        let coeff = if k == 1 { String::new() } else { k.to_string() };
        s.push_str(&format!("{sign}{coeff}{l}∨"));
    }
    format!("({s})(c)")
}

fn join<T: ToString>(xs: &[T], sep: &str) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
}

#[derive(Serialize)]
struct ClassRow {
    id: usize,
    order: usize,
    normalizer_order: usize,
    generators: Vec<String>,
}

#[derive(Serialize)]
struct ClassifyResult {
    r#type: String,
    degree: usize,
    classes: usize,
    nontrivial: usize,
    list: Vec<ClassRow>,
}

pub fn classify(ty: RootType, golden: bool) -> Result<Outcome> {
    let n = levi_degree(ty)?;
    let classes = classify_subgroups(n)?;
    let nontrivial = classes.iter().filter(|c| c.order > 1).count();
    let res = ClassifyResult {
        r#type: ty.to_string(),
        degree: n,
        classes: classes.len(),
        nontrivial,
        list: classes
            .iter()
            .map(|c| ClassRow {
                id: c.id,
                order: c.order,
                normalizer_order: c.normalizer_order,
                generators: c.generators.iter().map(ToString::to_string).collect(),
            })
            .collect(),
    };
    let mut out = Outcome::new("classify", &res);
    out.line(format!("{} classes ({} non-trivial)", classes.len(), nontrivial));
    for c in &classes {
        out.line(c.export_line());
    }
    out.csv_header = vec!["id", "order", "normalizer_order", "generators"];
    out.csv_rows = res
        .list
        .iter()
        .map(|r| vec![r.id.to_string(), r.order.to_string(), r.normalizer_order.to_string(), r.generators.join(" ")])
        .collect();
    if golden {
        if let Some((all, nt)) = golden::class_count(ty) {
            out.check(
                "class count",
                (all, nt) == (classes.len(), nontrivial),
                format!("expected {all} ({nt} non-trivial), got {} ({nontrivial})", classes.len()),
            );
        }
    }
    Ok(out)
}

#[derive(Serialize)]
struct ScanRow {
    class_id: usize,
    order: usize,
    generators: Vec<String>,
    tangent_dim: usize,
    group_dim: usize,
    method: Method,
    gcr: bool,
    certificates: Vec<Certificate>,
    case: Option<usize>,
    torus: Option<String>,
    /// In the labelling of the case's own root table; `None` for a table
    /// row means the first certificate orbit.
    v_support: Option<Vec<u32>>,
}

#[derive(Serialize)]
struct ScanResult {
    r#type: String,
    field_degree: u32,
    filter: &'static str,
    classes: usize,
    gcr_nontrivial: usize,
    non_separable: usize,
    rows: Vec<ScanRow>,
    table: Vec<(usize, usize)>,
}

pub fn scan(ty: RootType, m: u32, golden: bool) -> Result<Outcome> {
    with_field!(m, F => scan_in::<F>(ty, golden))
}

fn scan_in<F: Char2Field>(ty: RootType, golden: bool) -> Result<Outcome> {
    let n = levi_degree(ty)?;
    let par: Parabolic<F> = Parabolic::new(build_root_system(ty)?)?;
    let classes = classify_subgroups(n)?;
    let reports = separability_scan(&par, &classes)?;
    let gcr: Vec<bool> = classes
        .par_iter()
        .map(|c| is_gcr_perm(n, &c.generators))
        .collect::<Result<_>>()?;
    // In E6 the torus element t supplies complete reducibility, so K′ is
    // scanned unfiltered; E7 and E8 keep only G-cr classes.
    let need_gcr = ty != RootType::E6;
    let table = table_classes_in(ty, &classes)?;
    let case_of: BTreeMap<usize, usize> = table.iter().map(|&(case, id)| (id, case)).collect();

    let mut rows = Vec::new();
    let mut gap_mismatch = Vec::new();
    for ((c, r), &g) in classes.iter().zip(&reports).zip(&gcr) {
        if (r.tangent_dim > r.group_dim) != !r.certificates.is_empty() {
            gap_mismatch.push(c.id);
        }
        if r.separable || (need_gcr && !g) {
            continue;
        }
        let spec = case_of.get(&c.id).map(|&k| case_spec(ty, k)).transpose()?;
        rows.push(ScanRow {
            class_id: c.id,
            order: c.order,
            generators: c.generators.iter().map(ToString::to_string).collect(),
            tangent_dim: r.tangent_dim,
            group_dim: r.group_dim,
            method: r.method,
            gcr: g,
            certificates: r.certificates.clone(),
            case: spec.map(|s| s.case),
            torus: spec.map(torus_text),
            v_support: spec.and_then(|s| s.v_support.map(<[u32]>::to_vec)),
        });
    }
    let res = ScanResult {
        r#type: ty.to_string(),
        field_degree: F::DEGREE,
        filter: if need_gcr { "G-cr and non-separable" } else { "non-separable" },
        classes: classes.len(),
        gcr_nontrivial: classes.iter().zip(&gcr).filter(|(c, g)| c.order > 1 && **g).count(),
        non_separable: reports.iter().filter(|r| !r.separable).count(),
        rows,
        table,
    };
    let mut out = Outcome::new("scan", &res);
    out.line(format!(
        "{}: {} classes, {} non-separable, {} non-trivial G-cr; {} rows ({})",
        res.r#type,
        res.classes,
        res.non_separable,
        res.gcr_nontrivial,
        res.rows.len(),
        res.filter
    ));
    out.line("case  class  |K'|  t              tangent/group  v(a) support       generators");
    for r in &res.rows {
        out.line(format!(
            "{:<5} {:<6} {:<5} {:<14} {:>7}/{:<5}  {:<18} {}",
            r.case.map_or("-".into(), |c| c.to_string()),
            r.class_id,
            r.order,
            r.torus.as_deref().unwrap_or("-"),
            r.tangent_dim,
            r.group_dim,
            match (&r.v_support, r.case) {
                (Some(v), _) => join(v, ","),
                (None, Some(_)) => "cert. orbit".into(),
                (None, None) => "-".into(),
            },
            r.generators.join(", ")
        ));
    }
    out.csv_header = vec!["case", "class_id", "order", "torus", "tangent_dim", "group_dim", "gcr", "v_support", "generators"];
    out.csv_rows = res
        .rows
        .iter()
        .map(|r| {
            vec![
                r.case.map_or(String::new(), |c| c.to_string()),
                r.class_id.to_string(),
                r.order.to_string(),
                r.torus.clone().unwrap_or_default(),
                r.tangent_dim.to_string(),
                r.group_dim.to_string(),
                r.gcr.to_string(),
                r.v_support.as_ref().map_or(String::new(), |v| join(v, " ")),
                r.generators.join(" "),
            ]
        })
        .collect();

    out.check(
        "certificate iff dimension gap",
        gap_mismatch.is_empty(),
        if gap_mismatch.is_empty() {
            format!("all {} classes agree", classes.len())
        } else {
            format!("classes {gap_mismatch:?} disagree")
        },
    );
    let found: BTreeSet<usize> = res.rows.iter().map(|r| r.class_id).collect();
    let expected: BTreeSet<usize> = res.table.iter().map(|&(_, id)| id).collect();
    out.check(
        "rows match the embedded table",
        found == expected,
        format!("table classes {expected:?}, scan found {found:?}"),
    );
    if golden {
        if let Some(orders) = golden::scan_orders(ty) {
            let mut got: Vec<usize> = res.rows.iter().map(|r| r.order).collect();
            got.sort_unstable();
            out.check("row orders", got == orders, format!("expected {orders:?}, got {got:?}"));
        }
        if let Some(want) = golden::gcr_count(ty) {
            out.check(
                "G-cr classes",
                res.gcr_nontrivial == want,
                format!("expected {want} of {}, got {}", classes.len() - 1, res.gcr_nontrivial),
            );
        }
    }
    Ok(out)
}

fn case_lines(out: &mut Outcome, r: &CaseReport) {
    out.line(format!("case {} over GF(2^{})", r.case, r.field_degree));
    out.line(format!(
        "|K'| = {} (table {}), class matches: {}",
        r.generated_order, r.order, r.matches_table_class
    ));
    let orbits: Vec<String> = r.orbits.iter().map(|o| format!("{{{}}}", join(o, ","))).collect();
    out.line(format!("orbits: {}", orbits.join(" ")));
    for c in &r.certificates {
        out.line(format!(
            "certificate: orbit {{{}}}, pair ({}, {}) -> correction {}, swapper {}",
            join(&c.orbit, ","),
            c.pair.0,
            c.pair.1,
            c.correction,
            c.swapper.as_deref().unwrap_or("-")
        ));
    }
    out.line(format!(
        "dims: K tangent {} group {}; K' tangent {} group {}",
        r.dims.tangent, r.dims.group, r.weyl_dims.tangent, r.weyl_dims.group
    ));
    out.line(format!("G-cr: {} ({})", r.gcr, r.gcr_justification));
    out.line(format!("radical of P_lambda(M): {{{}}}", join(&r.m_radical, ",")));
    out.line(format!("v(a) support: {{{}}}", join(&r.v_support, ",")));
    for n in &r.non_mcr {
        out.line(format!("a = {}: H in M {}, conjugation system inconsistent {}", n.a, n.h_in_m, n.inconsistent));
    }
    if let Some(p) = &r.pair_variant {
        for n in p {
            out.line(format!("pair variant a = {}: H in M {}, inconsistent {}", n.a, n.h_in_m, n.inconsistent));
        }
    }
    for t in &r.transcripts {
        out.line(t);
    }
}

fn case_checks(out: &mut Outcome, r: &CaseReport) {
    let id = &r.case;
    out.check(
        &format!("{id} class"),
        r.matches_table_class,
        format!("generated order {}, table order {}", r.generated_order, r.order),
    );
    out.check(
        &format!("{id} non-separable"),
        r.dims.tangent > r.dims.group && !r.certificates.is_empty(),
        format!(
            "tangent {} group {}, {} certificates",
            r.dims.tangent,
            r.dims.group,
            r.certificates.len()
        ),
    );
    out.check(&format!("{id} G-cr"), r.gcr, format!("natural module semisimple: {}", r.gcr));
    let bad: Vec<&str> = r.non_mcr.iter().filter(|n| !n.not_mcr()).map(|n| n.a.as_str()).collect();
    out.check(
        &format!("{id} non-M-cr"),
        !r.non_mcr.is_empty() && bad.is_empty(),
        if bad.is_empty() {
            format!("refuted for all {} nonzero a", r.non_mcr.len())
        } else {
            format!("not refuted for a in {bad:?}")
        },
    );
}

pub fn verify(ty: RootType, case: usize, m: u32) -> Result<Outcome> {
    let spec = case_spec(ty, case)?;
    let r = with_field!(m, F => verify_case::<F>(spec))?;
    let mut out = Outcome::new("verify", &r);
    case_lines(&mut out, &r);
    case_checks(&mut out, &r);
    out.csv_header = vec!["a", "h_in_m", "inconsistent", "variant"];
    out.csv_rows = r
        .non_mcr
        .iter()
        .map(|n| (n, "orbit"))
        .chain(r.pair_variant.iter().flatten().map(|n| (n, "pair")))
        .map(|(n, v)| vec![n.a.clone(), n.h_in_m.to_string(), n.inconsistent.to_string(), v.to_string()])
        .collect();
    Ok(out)
}

pub fn tables(m: u32) -> Result<Outcome> {
    let reports: Vec<CaseReport> = with_field!(m, F => CASES.par_iter().map(verify_case::<F>).collect::<Result<Vec<_>>>())?;
    let mut out = Outcome::new("tables", &reports);
    out.line("case  |K'|  t              K tangent/group  G-cr   non-M-cr  generators");
    for (spec, r) in CASES.iter().zip(&reports) {
        out.line(format!(
            "{:<5} {:<5} {:<14} {:>9}/{:<5}  {:<6} {:<9} {}",
            r.case,
            r.generated_order,
            torus_text(spec),
            r.dims.tangent,
            r.dims.group,
            r.gcr,
            r.non_mcr.iter().all(|n| n.not_mcr()),
            spec.perms.join(", ")
        ));
    }
    for r in &reports {
        case_checks(&mut out, r);
    }
    out.csv_header = vec!["case", "order", "torus", "tangent_dim", "group_dim", "gcr", "non_mcr", "v_support", "generators"];
    out.csv_rows = CASES
        .iter()
        .zip(&reports)
        .map(|(spec, r)| {
            vec![
                r.case.clone(),
                r.generated_order.to_string(),
                torus_text(spec),
                r.dims.tangent.to_string(),
                r.dims.group.to_string(),
                r.gcr.to_string(),
                r.non_mcr.iter().all(|n| n.not_mcr()).to_string(),
                join(&r.v_support, " "),
                spec.perms.join(" "),
            ]
        })
        .collect();
    Ok(out)
}

pub fn kulshammer_e6(m: u32, golden: bool) -> Result<Outcome> {
    with_field!(m, F => kulshammer_e6_in::<F>(golden))
}

fn kulshammer_e6_in<F: Char2Field>(golden: bool) -> Result<Outcome> {
    let fam = E6Family::<F>::new()?;
    let r = fam.report()?;
    let mut out = Outcome::new("kulshammer", &r);
    out.line(format!("E6 family over GF(2^{}), c = {}", r.field_degree, r.c));
    out.line(format!("order of H' = <t_i, q_1, q_2>: {}", r.order_h_prime));
    out.line(format!("order of <t_i>: {}", r.order_torus_part));
    out.line(format!("presentation of Gamma: generators {}", fam.gamma().generators().join(" ")));
    for rel in fam.gamma().relations() {
        out.line(format!("  {}", rel.text));
    }
    out.line("relations of H' (q.x read as q x q^-1):");
    for c in &r.relations {
        out.line(format!("  {} : {}", c.relation, c.holds));
    }
    out.line(format!("right-action reading holds: {}", r.right_reading_holds));
    let par = fam.parabolic();
    let rho = fam.rho(F::one())?;
    for (name, g) in fam.gamma().generators().iter().zip(&rho.images) {
        out.line(format!("rho_1({name}) = {}", par.format(g)));
    }
    out.line(format!(
        "torus-tuple centralizer roots {:?}, Weyl stabilizer {} (inside <s21>: {})",
        r.centralizer.roots, r.centralizer.weyl_stabilizer, r.centralizer.weyl_in_s21
    ));
    out.line(format!("fixed cocharacters: {:?}", r.fixed_cocharacters));
    for n in &r.nonconjugacy {
        match &n.conjugator {
            Some(m) => out.line(format!(
                "rho_{} ~ rho_{}: conjugator [[{}, {}], [{}, {}]], replayed {}",
                n.a, n.b, m[0][0], m[0][1], m[1][0], m[1][1], n.witness_replayed
            )),
            None => out.line(format!("rho_{} !~ rho_{}: inconsistent system {}", n.a, n.b, n.equations.join("; "))),
        }
    }

    if golden {
        out.check(
            "order of H'",
            r.order_h_prime == golden::E6_ORDER_H_PRIME,
            format!("expected {}, got {}", golden::E6_ORDER_H_PRIME, r.order_h_prime),
        );
    }
    let broken: Vec<&str> = r.relations.iter().filter(|c| !c.holds).map(|c| c.relation.as_str()).collect();
    out.check("H' relations", broken.is_empty(), format!("{} relations, broken {broken:?}", r.relations.len()));
    out.check("rho_a well defined", r.rho_well_defined, "every relation of Gamma holds for every a");
    out.check("Sylow restriction", r.sylow_conjugates, "u(sqrt a) carries rho_0 to rho_a on Gamma_2");
    out.check("q_2 centralizes G_21", r.q2_centralizes_g21, "");
    out.check(
        "torus-tuple centralizer",
        r.centralizer.roots == [21, -21] && r.centralizer.weyl_in_s21,
        format!("roots {:?}", r.centralizer.roots),
    );
    out.check("fixed torus in Z(G).21", r.fixed_torus_in_g21, "");
    let wrong: Vec<(String, String)> = r
        .nonconjugacy
        .iter()
        .filter(|n| (n.a == n.b) == n.nonconjugate)
        .map(|n| (n.a.clone(), n.b.clone()))
        .collect();
    out.check("non-conjugacy for a != b", wrong.is_empty(), format!("unexpected verdicts {wrong:?}"));

    out.csv_header = vec!["a", "b", "nonconjugate", "system_inconsistent", "witness_replayed"];
    out.csv_rows = r
        .nonconjugacy
        .iter()
        .map(|n| {
            vec![
                n.a.clone(),
                n.b.clone(),
                n.nonconjugate.to_string(),
                n.system_inconsistent.to_string(),
                n.witness_replayed.to_string(),
            ]
        })
        .collect();
    Ok(out)
}

/// Least supported m with d | 2^m - 1.
fn default_a2_field(d: u64) -> u32 {
    [2, 4, 6, 8].into_iter().find(|&m| ((1u64 << m) - 1) % d == 0).unwrap_or(2)
}

pub fn kulshammer_a2(d: u64, m: Option<u32>) -> Result<Outcome> {
    let m = m.unwrap_or_else(|| default_a2_field(d));
    with_field!(m, F => kulshammer_a2_in::<F>(d))
}

fn kulshammer_a2_in<F: Char2Field>(d: u64) -> Result<Outcome> {
    let fam = A2Family::<F>::new(d)?;
    // the whole group is small enough only over GF(2) and GF(4)
    let r = fam.report(F::DEGREE <= 2)?;
    let mut out = Outcome::new("kulshammer", &r);
    out.line(format!("A2 family, d = {}, over GF(2^{}), c = {}", r.d, r.field_degree, r.c));
    out.line(format!("t = {} (scalar: {})", r.t, r.t_central));
    out.line(format!("presentation of Gamma: generators {}", fam.gamma().generators().join(" ")));
    for rel in fam.gamma().relations() {
        out.line(format!("  {}", rel.text));
    }
    out.line(format!("search: {}", r.method));
    let elems: Vec<String> = F::elements().iter().map(|x| x.to_hex()).collect();
    let conj: BTreeSet<(&str, &str)> = r.conjugate_pairs.iter().map(|(a, b, _)| (a.as_str(), b.as_str())).collect();
    out.line("non-conjugacy matrix (rows a, columns b; 1 = rho_a not conjugate to rho_b):");
    out.line(format!("      {}", elems.iter().map(|e| format!("{e:>5}")).collect::<String>()));
    for a in &elems {
        let row: String = elems
            .iter()
            .map(|b| {
                let v = a != b && !conj.contains(&(a.as_str(), b.as_str()));
                format!("{:>5}", if a == b { "-" } else if v { "1" } else { "0" })
            })
            .collect();
        out.line(format!("{a:>5} {row}"));
    }
    for (a, b, g) in &r.conjugate_pairs {
        out.line(format!("rho_{a} ~ rho_{b} via {g}"));
    }
    out.check("rho_a well defined", r.rho_well_defined, "");
    out.check("Sylow restriction", r.sylow_conjugates, "rho_a and rho_0 agree on Gamma_2 up to conjugacy");
    if let Some(agree) = r.methods_agree {
        out.check("brute force agrees with centralizer search", agree, "");
    }
    out.check(
        "non-conjugacy off the diagonal",
        r.nonconjugate_off_diagonal,
        format!("{} conjugate ordered pairs with a != b", r.conjugate_pairs.len()),
    );
    out.csv_header = vec!["a", "b", "conjugator"];
    out.csv_rows = r
        .conjugate_pairs
        .iter()
        .map(|(a, b, g)| vec![a.clone(), b.clone(), g.clone()])
        .collect();
    Ok(out)
}

#[derive(Serialize)]
struct SquareRow {
    expression: String,
    reduced: String,
    is_square: bool,
}

pub fn rational_demo() -> Result<Outcome> {
    let t = F2Poly::t();
    let one = F2Poly::one();
    let cases = [
        ("t", RationalFunction::from_poly(t.clone()), false),
        ("t^2", RationalFunction::from_poly(t.mul(&t)), true),
        ("t^3 + t", RationalFunction::from_poly(F2Poly::from_exponents(&[3, 1])), false),
        (
            "(t^2 + 1)/t^4",
            RationalFunction::new(F2Poly::from_exponents(&[2, 0]), F2Poly::from_exponents(&[4]))?,
            true,
        ),
        (
            "(t + 1)/t",
            RationalFunction::new(t.add(&one), t.clone())?,
            false,
        ),
    ];
    let rows: Vec<SquareRow> = cases
        .iter()
        .map(|(e, f, _)| SquareRow {
            expression: e.to_string(),
            reduced: f.to_string(),
            is_square: f.is_square(),
        })
        .collect();
    let mut out = Outcome::new("rational-demo", &rows);
    out.line("squares in k0 = F_2(t)");
    for r in &rows {
        out.line(format!("{:<14} = {:<16} square: {}", r.expression, r.reduced, r.is_square));
    }
    out.line("a = t is not a square in k0, so the conjugator u(sqrt a) is defined only over k0(sqrt t):");
    out.line("H_t is conjugate to K over the closure but not over k0.");
    for ((e, _, want), r) in cases.iter().zip(&rows) {
        out.check(&format!("{e} square"), r.is_square == *want, format!("expected {want}"));
    }
    out.csv_header = vec!["expression", "reduced", "is_square"];
    out.csv_rows = rows
        .iter()
        .map(|r| vec![r.expression.clone(), r.reduced.clone(), r.is_square.to_string()])
        .collect();
    Ok(out)
}
