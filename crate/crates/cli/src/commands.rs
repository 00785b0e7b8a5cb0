use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;
use std::time::Instant;

use opkls::bar::{bar_complex, cohomology, kl_via_complexes, kls_complex, koszul_complex, BarOperad, GradedChainComplex, Variant};
use opkls::gerst::{normal_monomials, GerstOperad, OperadKind};
use opkls::kls::{inverse_kl_polynomials, kl_polynomials};
use opkls::poset::{el_labeling_min_atom, GeometricLattice};
use opkls::{Poly, Result};
use serde_json::{json, Value};

use crate::report::Report;
use crate::{RunConfig, VariantArg};

pub fn load(cfg: &RunConfig) -> Result<Arc<GeometricLattice>> {
    let t = Instant::now();
    let l = Arc::new(cfg.source.lattice(&cfg.caps)?);
    if cfg.verbose {
        eprintln!("lattice: {} elements, rank {} ({:?})", l.len(), l.rank(), t.elapsed());
    }
    Ok(l)
}

pub fn gerst(cfg: &RunConfig, l: &Arc<GeometricLattice>) -> Result<GerstOperad> {
    let t = Instant::now();
    let g = GerstOperad::new(Arc::clone(l))?;
    if cfg.verbose {
        eprintln!("gerst operad tabulated ({:?})", t.elapsed());
    }
    Ok(g)
}

fn betti_json(m: &BTreeMap<i64, usize>) -> Value {
    Value::Object(m.iter().map(|(k, v)| (k.to_string(), json!(v))).collect())
}

fn betti_text(m: &BTreeMap<i64, usize>) -> String {
    m.iter().map(|(k, v)| format!("H^{k}={v}")).collect::<Vec<_>>().join(" ")
}

pub fn lattice(cfg: &RunConfig) -> Result<Report> {
    let l = load(cfg)?;
    let p = l.poset();
    let mu = p.mobius_table();
    let chi = p.characteristic_polynomial();
    let name = cfg.source.name();
    let atoms: Vec<&str> = l.atoms().iter().map(|&a| p.label(a)).collect();
    let elements: Vec<Value> = (0..p.len())
        .map(|x| json!({"index": x, "label": p.label(x), "rank": p.rank_of(x), "mobius": mu[0][x]}))
        .collect();
    let table: Vec<Vec<Option<i64>>> = (0..p.len())
        .map(|x| (0..p.len()).map(|y| p.leq(x, y).then_some(mu[x][y])).collect())
        .collect();
    let json = json!({
        "lattice": name,
        "elements": elements,
        "size": p.len(),
        "rank": p.rank(),
        "atoms": atoms,
        "mobius": table,
        "characteristic_polynomial": chi.to_json(),
    });
    let mut rows = vec![vec!["index".into(), "label".into(), "rank".into(), "mobius".into()]];
    for x in 0..p.len() {
        rows.push(vec![x.to_string(), p.label(x).into(), p.rank_of(x).to_string(), mu[0][x].to_string()]);
    }
    let mut text = String::new();
    let _ = writeln!(text, "lattice {name}: {} elements, rank {}", p.len(), p.rank());
    let _ = writeln!(text, "atoms: {}", atoms.join(" "));
    let _ = writeln!(text, "characteristic polynomial: {chi}");
    let _ = writeln!(text, "elements (index label rank mu(0,x)):");
    for x in 0..p.len() {
        let _ = writeln!(text, "  {x} {} {} {}", p.label(x), p.rank_of(x), mu[0][x]);
    }
    let _ = writeln!(text, "mobius table (. = incomparable):");
    for row in &table {
        let cells: Vec<String> = row.iter().map(|c| c.map_or(".".into(), |v| v.to_string())).collect();
        let _ = writeln!(text, "  {}", cells.join(" "));
    }
    Ok(Report { json, rows, text, ok: true })
}

pub fn kl(cfg: &RunConfig) -> Result<Report> {
    let l = load(cfg)?;
    let (b, t) = (l.bottom(), l.top());
    let p_rec = kl_polynomials(l.poset_arc())?.get(b, t).clone();
    let q_rec = inverse_kl_polynomials(l.poset_arc())?.get(b, t).clone();
    let g = gerst(cfg, &l)?;
    let start = Instant::now();
    let cx = kl_via_complexes(&g, &cfg.caps)?;
    if cfg.verbose {
        eprintln!("KLS complexes ({:?})", start.elapsed());
    }
    let ok = p_rec == cx.p && q_rec == cx.q;
    let verdict = if ok { "match" } else { "mismatch" };
    let table_json = |t: &opkls::bar::BettiTable| -> Value {
        Value::Object(t.betti.iter().map(|(w, m)| (w.to_string(), betti_json(m))).collect())
    };
    let name = cfg.source.name();
    let json = json!({
        "lattice": name,
        "rank": l.rank(),
        "p": {"recursion": p_rec.to_json(), "complexes": cx.p.to_json()},
        "q": {"recursion": q_rec.to_json(), "complexes": cx.q.to_json()},
        "match": ok,
        "betti": {"rkls": table_json(&cx.rkls), "lkls-hat": table_json(&cx.lkls_hat)},
    });
    let rows = vec![
        vec!["polynomial".into(), "recursion".into(), "complexes".into(), "match".into()],
        vec!["P".into(), p_rec.to_string(), cx.p.to_string(), (p_rec == cx.p).to_string()],
        vec!["Q".into(), q_rec.to_string(), cx.q.to_string(), (q_rec == cx.q).to_string()],
    ];
    let mut text = String::new();
    let _ = writeln!(text, "lattice {name} (rank {})", l.rank());
    let _ = writeln!(text, "P = {p_rec}  (complexes: {})", cx.p);
    let _ = writeln!(text, "Q = {q_rec}  (complexes: {})", cx.q);
    for (label, table) in [("RKLS", &cx.rkls), ("LKLS-hat", &cx.lkls_hat)] {
        for (w, m) in &table.betti {
            let _ = writeln!(text, "  {label}_({w}): {}", betti_text(m));
        }
    }
    let _ = writeln!(text, "{verdict}");
    Ok(Report { json, rows, text, ok })
}

pub fn dims(cfg: &RunConfig) -> Result<Report> {
    let l = load(cfg)?;
    let (b, t) = (l.bottom(), l.top());
    let g = gerst(cfg, &l)?;
    let space = g.gerst_space(b, t);
    let whitney = g.os().algebra(b, t).dims();
    let hilbert = space.hilbert_series();
    let chi_plus = l.poset().unsigned_characteristic_polynomial();
    let el = el_labeling_min_atom(&l);
    let counts: Vec<(&str, usize)> = [("com", OperadKind::Com), ("lie", OperadKind::Lie), ("gerst", OperadKind::Gerst)]
        .into_iter()
        .map(|(n, k)| (n, normal_monomials(&l, &el, b, t, k).len()))
        .collect();
    let ok = hilbert == chi_plus && counts[2].1 == space.dim() && whitney.iter().sum::<usize>() == space.dim();
    let mut bigraded: Vec<((usize, usize), usize)> = space.dims.iter().map(|(&k, &v)| (k, v)).collect();
    bigraded.sort_by_key(|a| std::cmp::Reverse(a.0));
    let name = cfg.source.name();
    let json = json!({
        "lattice": name,
        "rank": l.rank(),
        "gerst": bigraded.iter().map(|&((c, l), n)| json!({"c": c, "l": l, "dim": n})).collect::<Vec<_>>(),
        "gerst_dim": space.dim(),
        "hilbert_series": hilbert.to_json(),
        "chi_plus": chi_plus.to_json(),
        "os_whitney": whitney,
        "normal_monomials": counts.iter().map(|&(n, c)| (n.to_string(), json!(c))).collect::<serde_json::Map<_, _>>(),
        "consistent": ok,
    });
    let mut rows = vec![vec!["c".into(), "l".into(), "dim".into()]];
    rows.extend(bigraded.iter().map(|&((c, l), n)| vec![c.to_string(), l.to_string(), n.to_string()]));
    let mut text = String::new();
    let _ = writeln!(text, "lattice {name} (rank {})", l.rank());
    let cells: Vec<String> = bigraded.iter().map(|&((c, l), n)| format!("({c},{l}):{n}")).collect();
    let _ = writeln!(text, "gerst (C,L): {}", cells.join(" "));
    let _ = writeln!(text, "hilbert series: {hilbert}  chi+: {chi_plus}");
    let ws: Vec<String> = whitney.iter().map(|w| w.to_string()).collect();
    let _ = writeln!(text, "OS whitney numbers: {}", ws.join(" "));
    let cs: Vec<String> = counts.iter().map(|(n, c)| format!("{n}={c}")).collect();
    let _ = writeln!(text, "normal monomials: {}", cs.join(" "));
    Ok(Report { json, rows, text, ok })
}

fn build(g: &GerstOperad, v: VariantArg, w: usize, cfg: &RunConfig) -> Result<GradedChainComplex> {
    match v {
        VariantArg::Bar => bar_complex(g, w, BarOperad::Gerst, &cfg.caps),
        VariantArg::Kos => koszul_complex(g, w),
        VariantArg::Rkls => kls_complex(g, w, Variant::Rkls, &cfg.caps),
        VariantArg::Lkls => kls_complex(g, w, Variant::Lkls, &cfg.caps),
        VariantArg::RklsHat => kls_complex(g, w, Variant::RklsHat, &cfg.caps),
        VariantArg::LklsHat => kls_complex(g, w, Variant::LklsHat, &cfg.caps),
    }
}

pub fn variant_name(v: VariantArg) -> &'static str {
    match v {
        VariantArg::Bar => "bar",
        VariantArg::Kos => "kos",
        VariantArg::Rkls => "rkls",
        VariantArg::Lkls => "lkls",
        VariantArg::RklsHat => "rkls-hat",
        VariantArg::LklsHat => "lkls-hat",
    }
}

pub fn betti(cfg: &RunConfig) -> Result<Report> {
    let l = load(cfg)?;
    let g = gerst(cfg, &l)?;
    let v = cfg.variant.unwrap_or(VariantArg::Bar);
    let weights: Vec<usize> = match cfg.weight {
        Some(w) => vec![w],
        None => (0..=l.rank()).collect(),
    };
    let name = cfg.source.name();
    let mut entries = Vec::new();
    let mut rows = vec![["lattice", "variant", "weight", "degree", "dim", "betti"].map(String::from).to_vec()];
    let mut text = String::new();
    for w in weights {
        let start = Instant::now();
        let c = build(&g, v, w, cfg)?;
        let h = cohomology(&c);
        if cfg.verbose {
            eprintln!("{} weight {w}: {} basis vectors ({:?})", variant_name(v), c.total_dim(), start.elapsed());
        }
        let euler: i64 = h
            .iter()
            .map(|(&k, &n)| if k.rem_euclid(2) == 0 { n as i64 } else { -(n as i64) })
            .sum();
        entries.push(json!({
            "lattice": name,
            "variant": variant_name(v),
            "weight": w,
            "dims": betti_json(&c.dims),
            "betti": betti_json(&h),
            "euler": euler,
        }));
        for (&k, &n) in &h {
            rows.push(vec![name.clone(), variant_name(v).into(), w.to_string(), k.to_string(), c.dim(k).to_string(), n.to_string()]);
        }
        let _ = writeln!(text, "{} weight {w}: {}  (euler {euler})", variant_name(v), betti_text(&h));
    }
    let json = if entries.len() == 1 {
        entries.pop().expect("one entry")
    } else {
        Value::Array(entries)
    };
    Ok(Report { json, rows, text, ok: true })
}

/// `Σ_{G ∈ [x, y]} |μ(x, G)| t^{rk [G, y]}`.
pub fn chi_plus(l: &GeometricLattice, mu: &[Vec<i64>], x: usize, y: usize) -> Poly {
    let p = l.poset();
    let r = p.interval_rank(x, y);
    let mut coeffs = vec![0i64; r + 1];
    for g in p.interval_elements(x, y) {
        coeffs[p.interval_rank(g, y)] += mu[x][g].abs();
    }
    Poly::from_i64s(&coeffs)
}
