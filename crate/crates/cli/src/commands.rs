//! One function per command. Each returns a JSON report and a human
//! readable rendering of the same content.

use ccnet_core::colored::{colored_sn_decompose, ColoredNetworkSpec, ColoredPolyFamily};
use ccnet_core::liealg::{kernel_gamma, sigma_bracket, sigma_compose};
use ccnet_core::network::fundamental_network;
use ccnet_core::normalform::{normal_form, normal_form_symmetry_check, sn_decompose, NormalFormOptions, Strategy};
use ccnet_core::rational::render;
use ccnet_core::structure::{balanced_partitions, dynamical_input_symmetries, network_symmetries, InputSymmetryPair};
use ccnet_core::{unipoly, NetworkSpec, PolyMap, RationalMatrix};
use log::debug;
use serde_json::{json, Value};

use crate::document::{render_family, Document, Function, Network};
use crate::error::{CliError, CliResult};

pub struct Report {
    pub json: Value,
    pub text: String,
}

/// `7` → `₇`.
pub fn sub(n: usize) -> String {
    n.to_string().chars().map(|c| char::from_u32(0x2080 + c.to_digit(10).unwrap()).unwrap()).collect()
}

fn tuple(v: &[usize]) -> String {
    format!("({})", v.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
}

fn polys(p: &PolyMap) -> Value {
    json!(p.render())
}

fn matrix(m: &RationalMatrix) -> Value {
    json!(m.to_rows().iter().map(|r| r.iter().map(render).collect::<Vec<_>>()).collect::<Vec<_>>())
}

fn matrix_text(m: &RationalMatrix) -> String {
    let rows: Vec<Vec<String>> = m.to_rows().iter().map(|r| r.iter().map(render).collect()).collect();
    let w = rows.iter().flatten().map(String::len).max().unwrap_or(1);
    rows.iter()
        .map(|r| format!("  [{}]", r.iter().map(|x| format!("{x:>w$}")).collect::<Vec<_>>().join(" ")))
        .collect::<Vec<_>>()
        .join("\n")
}

fn comps_text(v: &[String]) -> String {
    if v.len() == 1 {
        v[0].clone()
    } else {
        format!("({})", v.join(", "))
    }
}

fn homogeneous<'a>(doc: &'a Document, command: &str) -> CliResult<(&'a NetworkSpec, &'a NetworkSpec, &'a [String])> {
    match &doc.network {
        Network::Homogeneous { original, closed, closed_names, .. } => Ok((original, closed, closed_names)),
        Network::Colored { .. } => Err(CliError::Usage(format!("`{command}` is not available for colored networks"))),
    }
}

fn homogeneous_function(doc: &Document, arg: &str) -> CliResult<PolyMap> {
    match doc.resolve_function(arg).map_err(|e| CliError::Usage(e.0))? {
        Function::Homogeneous(p) => Ok(p),
        Function::Colored(_) => unreachable!("homogeneous networks hold homogeneous functions"),
    }
}

fn colored_function(doc: &Document, arg: &str) -> CliResult<ColoredPolyFamily> {
    match doc.resolve_function(arg).map_err(|e| CliError::Usage(e.0))? {
        Function::Colored(f) => Ok(f),
        Function::Homogeneous(_) => unreachable!("colored networks hold colored functions"),
    }
}

pub fn normalize(doc: &Document) -> Report {
    let json = doc.to_json();
    let text = serde_json::to_string_pretty(&json).expect("serializable");
    Report { json, text }
}

pub fn complete(doc: &Document) -> CliResult<Report> {
    match &doc.network {
        Network::Homogeneous { original, closed, closed_names, .. } => complete_homogeneous(original, closed, closed_names),
        Network::Colored { original, closed, closed_names, .. } => complete_colored(original, closed, closed_names),
    }
}

fn complete_homogeneous(original: &NetworkSpec, closed: &NetworkSpec, names: &[String]) -> CliResult<Report> {
    let t = closed.table()?;
    let n = t.len();
    let n0 = original.n();
    let fun = fundamental_network(closed)?;
    let maps: Vec<Value> = (0..n)
        .map(|k| json!({"name": names[k], "images": t.elements()[k].one_based(), "listed": k < n0}))
        .collect();
    let table: Vec<Vec<usize>> = t.table().iter().map(|r| r.iter().map(|x| x + 1).collect()).collect();
    let tilde: Vec<Vec<usize>> = (0..n).map(|a| t.tilde(a).iter().map(|x| x + 1).collect()).collect();
    let a_maps: Vec<Vec<usize>> = (0..n).map(|j| closed.a_map(j).map(|a| a.one_based())).collect::<Result<_, _>>()?;
    let json = json!({
        "command": "complete",
        "cells": closed.cells(),
        "dim": closed.dim(),
        "listed": n0,
        "closure_applied": n > n0,
        "maps": maps,
        "identity": t.identity_index().map(|i| i + 1),
        "table": table,
        "tilde": tilde,
        "a_maps": a_maps,
        "faithful": fun.faithful,
    });
    let mut text = String::new();
    for k in 0..n {
        let note = if k < n0 { "" } else { "  (added by closure)" };
        text += &format!("σ{} = {} = {}{}\n", sub(k + 1), names[k], tuple(&t.elements()[k].one_based()), note);
    }
    text += "\ncomposition table, row a column b: σ_a∘σ_b\n";
    for row in &table {
        text += &format!("  {}\n", row.iter().map(|x| format!("σ{}", sub(*x))).collect::<Vec<_>>().join(" "));
    }
    text += "\n";
    for (a, row) in tilde.iter().enumerate() {
        text += &format!("σ̃{} = {}\n", sub(a + 1), tuple(row));
    }
    text += "\n";
    let xs: Vec<String> = (1..=n).map(|k| format!("X{}", sub(k))).collect();
    for (j, sel) in a_maps.iter().enumerate() {
        let img: Vec<String> = sel.iter().map(|k| format!("X{}", sub(*k))).collect();
        text += &format!("A_{{σ{}}}({}) = ({})\n", sub(j + 1), xs.join(","), img.join(","));
    }
    text += &format!("\nfundamental network is {}\n", if fun.faithful { "faithful" } else { "not faithful" });
    Ok(Report { json, text })
}

fn complete_colored(original: &ColoredNetworkSpec, closed: &ColoredNetworkSpec, names: &[Vec<Vec<String>>]) -> CliResult<Report> {
    let k = closed.colors();
    let mut maps = Vec::new();
    let mut a_maps = Vec::new();
    let mut text = String::new();
    for d in 0..k {
        for c in 0..k {
            for j in 0..closed.count(d, c) {
                let m = closed.map(d, c, j);
                let images: Vec<usize> = m.images.iter().map(|i| i + 1).collect();
                let listed = j < original.count(d, c);
                let sel = closed.a_map(d, c, j)?.one_based();
                maps.push(json!({"name": names[d][c][j], "type": [d + 1, c + 1], "images": images, "listed": listed}));
                a_maps.push(json!({"name": names[d][c][j], "selector": sel}));
                let note = if listed { "" } else { "  (added by closure)" };
                text += &format!("{} : color {} → color {} = {}{}\n", names[d][c][j], c + 1, d + 1, tuple(&images), note);
            }
        }
    }
    text += "\n";
    for c in 0..k {
        let vars: Vec<String> = closed.profile(c).iter().map(|(d, j)| names[*d][c][*j].clone()).collect();
        text += &format!("color {} cells read: {}\n", c + 1, vars.join(", "));
    }
    let json = json!({
        "command": "complete",
        "colors": closed.cell_counts().iter().zip(closed.dims()).map(|(c, d)| json!({"cells": c, "dim": d})).collect::<Vec<_>>(),
        "closure_applied": all_counts(closed) > all_counts(original),
        "maps": maps,
        "a_maps": a_maps,
    });
    Ok(Report { json, text })
}

fn all_counts(spec: &ColoredNetworkSpec) -> usize {
    let k = spec.colors();
    (0..k).flat_map(|d| (0..k).map(move |c| (d, c))).map(|(d, c)| spec.count(d, c)).sum()
}

pub fn fundamental(doc: &Document) -> CliResult<Report> {
    let (_, closed, _) = homogeneous(doc, "fundamental")?;
    let fun = fundamental_network(closed)?;
    let maps: Vec<Vec<usize>> = fun.spec.maps().iter().map(|m| m.one_based()).collect();
    let pis: Vec<Vec<usize>> = (0..closed.cells()).map(|i| closed.pi(i).map(|p| p.one_based())).collect::<Result<_, _>>()?;
    let json = json!({"command": "fundamental", "cells": fun.spec.cells(), "faithful": fun.faithful, "maps": maps, "pi": pis});
    let mut text = format!("fundamental network on {} cells ({})\n", fun.spec.cells(), if fun.faithful { "faithful" } else { "not faithful" });
    for (k, m) in maps.iter().enumerate() {
        text += &format!("σ̃{} = {}\n", sub(k + 1), tuple(m));
    }
    for (i, p) in pis.iter().enumerate() {
        let img: Vec<String> = p.iter().map(|c| format!("x{}", sub(*c))).collect();
        text += &format!("π{}(x) = ({})\n", sub(i + 1), img.join(","));
    }
    Ok(Report { json, text })
}

pub fn symmetries(doc: &Document) -> CliResult<Report> {
    let (original, _, _) = homogeneous(doc, "symmetries")?;
    let group = network_symmetries(original)?;
    let perms: Vec<Vec<usize>> = group.iter().map(|p| p.one_based()).collect();
    let json = json!({"command": "symmetries", "order": perms.len(), "group": perms});
    let mut text = format!("symmetry group of order {}\n", perms.len());
    for p in &perms {
        text += &format!("  {}\n", tuple(p));
    }
    Ok(Report { json, text })
}

pub fn synchrony(doc: &Document) -> CliResult<Report> {
    let (original, _, _) = homogeneous(doc, "synchrony")?;
    let parts = balanced_partitions(original)?;
    let json = json!({
        "command": "synchrony",
        "count": parts.len(),
        "partitions": parts.iter().map(|p| p.one_based()).collect::<Vec<_>>(),
    });
    let mut text = format!("{} balanced partitions\n", parts.len());
    for p in &parts {
        text += &format!("  {p}\n");
    }
    Ok(Report { json, text })
}

fn input_pairs(closed: &NetworkSpec) -> CliResult<Vec<InputSymmetryPair>> {
    Ok(dynamical_input_symmetries(closed)?)
}

pub fn input_symmetries(doc: &Document) -> CliResult<Report> {
    let (_, closed, _) = homogeneous(doc, "input-symmetries")?;
    let pairs = input_pairs(closed)?;
    let json = json!({
        "command": "input-symmetries",
        "count": pairs.len(),
        "pairs": pairs.iter().map(|g| json!({"p": g.p.one_based(), "q": g.q.one_based()})).collect::<Vec<_>>(),
    });
    let mut text = format!("{} dynamical input symmetries (p∘σ_j = σ_q(j)∘p)\n", pairs.len());
    for (k, g) in pairs.iter().enumerate() {
        text += &format!("  {}: p = {}, q = {}\n", k + 1, tuple(&g.p.one_based()), tuple(&g.q.one_based()));
    }
    Ok(Report { json, text })
}

/// `compose` and `bracket`.
pub fn binary(doc: &Document, bracket: bool, f: &str, g: &str) -> CliResult<Report> {
    let command = if bracket { "bracket" } else { "compose" };
    let op = if bracket { "[f,g]_Σ" } else { "f∘_Σ g" };
    match &doc.network {
        Network::Homogeneous { closed, .. } => {
            let (pf, pg) = (homogeneous_function(doc, f)?, homogeneous_function(doc, g)?);
            let r = if bracket { sigma_bracket(closed, &pf, &pg)? } else { sigma_compose(closed, &pf, &pg)? };
            let json = json!({"command": command, "f": polys(&pf), "g": polys(&pg), "result": polys(&r), "zero": r.is_zero()});
            let text = format!(
                "f = {}\ng = {}\n{} = {}\n",
                comps_text(&pf.render()),
                comps_text(&pg.render()),
                op,
                comps_text(&r.render())
            );
            Ok(Report { json, text })
        }
        Network::Colored { closed, .. } => {
            let (cf, cg) = (colored_function(doc, f)?, colored_function(doc, g)?);
            let r = if bracket { closed.bracket(&cf, &cg)? } else { closed.compose(&cf, &cg)? };
            let rf = render_family(closed, &r);
            let json = json!({
                "command": command,
                "f": render_family(closed, &cf),
                "g": render_family(closed, &cg),
                "result": rf,
                "zero": r.is_zero(),
            });
            let mut text = String::new();
            for (c, comps) in rf.iter().enumerate() {
                text += &format!("{}^({}) = {}\n", op, c + 1, comps_text(comps));
            }
            Ok(Report { json, text })
        }
    }
}

pub fn kernel(doc: &Document, k: i32, l: u32) -> CliResult<Report> {
    let (_, closed, _) = homogeneous(doc, "kernel-gamma")?;
    let kg = kernel_gamma(closed, k, l, doc.params)?;
    let basis: Vec<Value> = kg.polys().iter().map(polys).collect();
    let json = json!({
        "command": "kernel-gamma",
        "k": k,
        "l": l,
        "space_dim": kg.basis.len(),
        "kernel_dim": kg.dim(),
        "quotient_dim": kg.quotient_dim(),
        "basis": basis,
    });
    let mut text = format!("ker γ ∩ P^{{{k},{l}}}: dimension {} of {}\n", kg.dim(), kg.basis.len());
    for p in kg.polys() {
        text += &format!("  {}\n", comps_text(&p.render()));
    }
    Ok(Report { json, text })
}

pub fn sn(doc: &Document, f0: &str) -> CliResult<Report> {
    match &doc.network {
        Network::Homogeneous { closed, .. } => {
            let f = homogeneous_function(doc, f0)?;
            let s = sn_decompose(closed, &f)?;
            let mu = s.s_matrix.minimal_polynomial();
            let squarefree = unipoly::degree(&unipoly::gcd(&mu, &unipoly::derivative(&mu))) == Some(0);
            let nilpotent = s.n_matrix.is_nilpotent();
            let commute = s.s_matrix.commutes_with(&s.n_matrix);
            let bracket = sigma_bracket(closed, &s.f0_s, &s.f0_n)?;
            let bracket_zero = closed.gamma_symbolic(&bracket)?.iter().all(PolyMap::is_zero);
            debug!("sn: witness of degree {:?}", unipoly::degree(&s.witness));
            let json = json!({
                "command": "sn",
                "f0": polys(&s.f0),
                "f0_s": polys(&s.f0_s),
                "f0_n": polys(&s.f0_n),
                "witness": s.witness.iter().map(render).collect::<Vec<_>>(),
                "matrix": matrix(&s.matrix),
                "s_matrix": matrix(&s.s_matrix),
                "n_matrix": matrix(&s.n_matrix),
                "checks": {
                    "semisimple_squarefree": squarefree,
                    "nilpotent": nilpotent,
                    "commute": commute,
                    "bracket_vanishes_mod_ker_gamma": bracket_zero,
                },
            });
            let text = format!(
                "f0   = {}\nf0_S = {}\nf0_N = {}\n\nγ_f0 =\n{}\nS =\n{}\nN =\n{}\n\nsquare-free minimal polynomial of S: {squarefree}\nN nilpotent: {nilpotent}\n[S, N] = 0: {commute}\n[f0_S, f0_N]_Σ ∈ ker γ: {bracket_zero}\n",
                comps_text(&s.f0.render()),
                comps_text(&s.f0_s.render()),
                comps_text(&s.f0_n.render()),
                matrix_text(&s.matrix),
                matrix_text(&s.s_matrix),
                matrix_text(&s.n_matrix),
            );
            Ok(Report { json, text })
        }
        Network::Colored { closed, .. } => {
            let f = colored_function(doc, f0)?;
            let s = colored_sn_decompose(closed, &f)?;
            let n_matrix = s.matrix.sub(&s.s_matrix);
            let json = json!({
                "command": "sn",
                "experimental": true,
                "f0": render_family(closed, &f),
                "f0_s": render_family(closed, &s.f0_s),
                "f0_n": render_family(closed, &s.f0_n),
                "matrix": matrix(&s.matrix),
                "s_matrix": matrix(&s.s_matrix),
                "n_matrix": matrix(&n_matrix),
                "checks": {"nilpotent": n_matrix.is_nilpotent(), "commute": s.s_matrix.commutes_with(&n_matrix)},
            });
            let mut text = String::from("colored SN-decomposition (experimental)\n");
            for (c, (a, b)) in render_family(closed, &s.f0_s).iter().zip(render_family(closed, &s.f0_n)).enumerate() {
                text += &format!("color {}: f0_S = {}, f0_N = {}\n", c + 1, comps_text(a), comps_text(&b));
            }
            Ok(Report { json, text })
        }
    }
}

pub struct NormalFormArgs<'a> {
    pub f: &'a str,
    pub degree: i32,
    pub param_degree: u32,
    pub strategy: Strategy,
    pub invariant: Option<&'a str>,
    pub full_space: bool,
}

/// `all`, or a comma separated list of 1-based positions in the
/// `input-symmetries` report.
fn select_pairs(closed: &NetworkSpec, spec: &str) -> CliResult<Vec<InputSymmetryPair>> {
    let all = input_pairs(closed)?;
    if spec.trim() == "all" {
        return Ok(all);
    }
    let mut out = Vec::new();
    for part in spec.split(',') {
        let k: usize = part.trim().parse().map_err(|_| CliError::Usage(format!("--invariant: cannot read \"{part}\"")))?;
        match all.get(k.wrapping_sub(1)) {
            Some(p) => out.push(p.clone()),
            None => return Err(CliError::Usage(format!("--invariant: there are {} input symmetries, not {k}", all.len()))),
        }
    }
    Ok(out)
}

pub fn normal_form_cmd(doc: &Document, a: &NormalFormArgs) -> CliResult<Report> {
    let (_, closed, _) = homogeneous(doc, "normal-form")?;
    let f = homogeneous_function(doc, a.f)?;
    let symmetry = a.invariant.map(|g| select_pairs(closed, g)).transpose()?;
    let options = NormalFormOptions { strategy: a.strategy, full_space: a.full_space, symmetry };
    let res = normal_form(closed, &f, a.degree, a.param_degree, &options)?;
    let check = match &res.split {
        Some(s) => Some(normal_form_symmetry_check(closed, s, &res.fbar, a.degree, a.param_degree)?),
        None => None,
    };
    let strategy = match a.strategy {
        Strategy::Sn => "sn",
        Strategy::ImageComplement => "image",
    };
    let grades: Vec<Value> = res
        .grades
        .iter()
        .map(|g| {
            json!({
                "k": g.k,
                "l": g.l,
                "kernel_dim": g.kernel_dim,
                "quotient_dim": g.quotient_dim,
                "normal_basis": g.normal_basis.iter().map(polys).collect::<Vec<_>>(),
                "residual": polys(&g.residual),
                "in_normal_space": g.in_normal_space,
            })
        })
        .collect();
    let json = json!({
        "command": "normal-form",
        "strategy": strategy,
        "r1": a.degree,
        "r2": a.param_degree,
        "invariant": a.invariant,
        "f": polys(&f),
        "normal_form": polys(&res.fbar),
        "split": res.split.as_ref().map(|s| json!({"f0_s": polys(&s.f0_s), "f0_n": polys(&s.f0_n)})),
        "generators": res.generators.iter().map(|g| json!({"k": g.k, "l": g.l, "g": polys(&g.g)})).collect::<Vec<_>>(),
        "grades": grades,
        "symmetry_check": check,
    });
    let mut text = format!("f = {}\nf̄ = {}\n", comps_text(&f.render()), comps_text(&res.fbar.render()));
    if let Some(s) = &res.split {
        text += &format!("f0_S = {}, f0_N = {}\n", comps_text(&s.f0_s.render()), comps_text(&s.f0_n.render()));
    }
    text += "\ngrade    dim ker γ  dim quotient  N^{k,l}\n";
    for g in &res.grades {
        let basis: Vec<String> = g.normal_basis.iter().map(|p| comps_text(&p.render())).collect();
        text += &format!(
            "({:>2},{})   {:>9}  {:>12}  span{{{}}}\n      residual: {}\n",
            g.k,
            g.l,
            g.kernel_dim,
            g.quotient_dim,
            basis.join(", "),
            comps_text(&g.residual.render())
        );
    }
    if let Some(c) = check {
        text += &format!("\nf̄ commutes with the flow of γ_f0_S: {c}\n");
    }
    Ok(Report { json, text })
}
