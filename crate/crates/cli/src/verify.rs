use std::fmt::Write as _;
use std::sync::Arc;
use std::time::Instant;

use opkls::bar::{bar_com_poset, bar_complex, cohomology, kl_via_complexes, kls_complex, koszul_complex, BarOperad, Variant};
use opkls::gerst::{
    normal_monomials, rewrite_normal_form_at, AdmissibleOrder, DecoratedChainMonomial, GerstOperad, OperadKind,
    RewritePosition,
};
use opkls::kls::{inverse_kl_polynomials, kl_polynomials, IncidencePolynomial};
use opkls::poset::{el_labeling_min_atom, order_complex_homology, GeometricLattice};
use opkls::{Error, Result};
use serde_json::json;

use crate::commands::{chi_plus, gerst};
use crate::report::Report;
use crate::RunConfig;

pub const CHECKS: [&str; 13] = [
    "geometric",
    "kernel",
    "el",
    "dims",
    "grobner",
    "os-coproduct",
    "operad-axiom",
    "order-complex",
    "bar-acyclic",
    "kos-acyclic",
    "kls-concentration",
    "kls-symmetry",
    "kl-match",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Status {
    Pass,
    Fail,
    Skip,
}

impl Status {
    fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skip => "skip",
        }
    }
}

struct Ctx {
    lattice: Arc<GeometricLattice>,
    gerst: GerstOperad,
    mu: Vec<Vec<i64>>,
}

type Outcome = std::result::Result<String, String>;

/// Intervals `x < y` of the lattice.
fn intervals(l: &GeometricLattice) -> Vec<(usize, usize)> {
    let p = l.poset();
    (0..p.len())
        .flat_map(|x| p.up_set(x).iter().filter(move |&y| y != x).map(move |y| (x, y)))
        .collect()
}

fn check(name: &str, ctx: &Ctx, cfg: &RunConfig) -> Result<Outcome> {
    let l = &*ctx.lattice;
    let p = l.poset();
    let (b, t) = (l.bottom(), l.top());
    let rk = l.rank();
    let caps = &cfg.caps;
    Ok(match name {
        "geometric" => Ok(format!("{} elements, rank {rk}", l.len())),
        "kernel" => match IncidencePolynomial::characteristic(l.poset_arc()).kernel_witness()? {
            None => Ok("chi-bar * chi = delta".into()),
            Some((x, y)) => Err(format!("fails on [{}, {}]", p.label(x), p.label(y))),
        },
        "el" => match el_labeling_min_atom(l).verify(l, rk) {
            Ok(()) => Ok("minimal-atom labeling is EL on every interval".into()),
            Err(e) => Err(e.to_string()),
        },
        "dims" => {
            let el = el_labeling_min_atom(l);
            for (x, y) in intervals(l).into_iter().chain([(b, b)]) {
                let space = ctx.gerst.gerst_space(x, y);
                let os_dim = ctx.gerst.os().algebra(x, y).dim();
                let mu_sum: i64 = p.interval_elements(x, y).iter().map(|&g| ctx.mu[x][g].abs()).sum();
                let normal = normal_monomials(l, &el, x, y, OperadKind::Gerst).len();
                if space.hilbert_series() != chi_plus(l, &ctx.mu, x, y) {
                    return Ok(Err(format!("Hilbert series differs from chi+ on [{}, {}]", p.label(x), p.label(y))));
                }
                if [os_dim, mu_sum as usize, normal].iter().any(|&d| d != space.dim()) {
                    return Ok(Err(format!(
                        "[{}, {}]: gerst {} os {os_dim} mobius {mu_sum} normal {normal}",
                        p.label(x),
                        p.label(y),
                        space.dim()
                    )));
                }
            }
            Ok(format!("dim Gerst = {}", ctx.gerst.gerst_space(b, t).dim()))
        }
        "grobner" => {
            let el = el_labeling_min_atom(l);
            let order = AdmissibleOrder::for_com(el.clone());
            for (x, y) in intervals(l) {
                let com = normal_monomials(l, &el, x, y, OperadKind::Com);
                let lie = normal_monomials(l, &el, x, y, OperadKind::Lie);
                if com.len() != 1 || lie.len() as i64 != ctx.mu[x][y].abs() {
                    return Ok(Err(format!(
                        "[{}, {}]: {} Com and {} Lie normal monomials",
                        p.label(x),
                        p.label(y),
                        com.len(),
                        lie.len()
                    )));
                }
                if p.interval_rank(x, y) > 4 {
                    continue;
                }
                for chain in p.maximal_chains(x, y) {
                    let m = DecoratedChainMonomial::undecorated(chain);
                    let left = rewrite_normal_form_at(l, &m, OperadKind::Com, &order, RewritePosition::Leftmost)?;
                    let right = rewrite_normal_form_at(l, &m, OperadKind::Com, &order, RewritePosition::Rightmost)?;
                    let expected = [(com[0].clone(), 1)].into_iter().collect();
                    if left != right || left != expected {
                        return Ok(Err(format!("Com rewriting is not confluent on {:?}", m.chain)));
                    }
                }
            }
            Ok("Com: 1 per interval, Lie: |mu| per interval, Com rewriting confluent".into())
        }
        "os-coproduct" => {
            let os = ctx.gerst.os();
            for (x, y) in intervals(l) {
                if p.interval_rank(x, y) < 2 {
                    continue;
                }
                for twisted in [false, true] {
                    if let Some((g, a, c)) = os.check_multiplicative(x, y, twisted)? {
                        return Ok(Err(format!("multiplicativity fails at G = {} on {a:b} * {c:b}", p.label(g))));
                    }
                    if let Some((g1, g2, s)) = os.check_coassociative(x, y, twisted, twisted) {
                        return Ok(Err(format!(
                            "coassociativity fails at {} < {} on {s:b}",
                            p.label(g1),
                            p.label(g2)
                        )));
                    }
                }
            }
            Ok("plain and twisted coproducts multiplicative and coassociative".into())
        }
        "operad-axiom" => {
            for (x, y) in intervals(l) {
                if p.interval_rank(x, y) > 4 {
                    continue;
                }
                if let Some((g1, g2)) = ctx.gerst.check_operad_axiom(x, y) {
                    return Ok(Err(format!("fails at {} < {}", p.label(g1), p.label(g2))));
                }
            }
            Ok("mu associative on every interval of rank <= 4".into())
        }
        "order-complex" => {
            for (x, y) in intervals(l) {
                let sub = p.interval(x, y)?;
                let r = sub.rank() as i64;
                let bar = cohomology(&bar_com_poset(&sub, caps)?);
                let simplicial = order_complex_homology(&sub, caps)?;
                for (&k, &n) in &bar {
                    if simplicial.get(&(r - 2 - k)).copied().unwrap_or(0) != n {
                        return Ok(Err(format!("[{}, {}]: degree {k} disagrees", p.label(x), p.label(y))));
                    }
                }
                let top: usize = bar.get(&0).copied().unwrap_or(0);
                let rest: usize = bar.iter().filter(|&(&k, _)| k != 0).map(|(_, &n)| n).sum();
                if rest != 0 || top as i64 != ctx.mu[x][y].abs() {
                    return Ok(Err(format!("[{}, {}]: not concentrated with dimension |mu|", p.label(x), p.label(y))));
                }
            }
            Ok("Bar(Com) matches the order complex on every interval".into())
        }
        "bar-acyclic" => {
            let mut h0 = Vec::new();
            for w in 0..=rk {
                let h = cohomology(&bar_complex(&ctx.gerst, w, BarOperad::Gerst, caps)?);
                if h.iter().any(|(&k, &n)| k > 0 && n > 0) {
                    return Ok(Err(format!("weight {w}: {h:?}")));
                }
                h0.push(h.get(&0).copied().unwrap_or(0).to_string());
            }
            Ok(format!("H^0 by weight: {}", h0.join(" ")))
        }
        "kos-acyclic" => {
            for w in 0..=rk {
                let c = koszul_complex(&ctx.gerst, w)?;
                if c.euler_characteristic() != 0 {
                    return Ok(Err(format!("weight {w}: Euler characteristic {}", c.euler_characteristic())));
                }
                if cohomology(&c).values().any(|&n| n > 0) {
                    return Ok(Err(format!("weight {w}: not acyclic")));
                }
            }
            Ok("acyclic with zero Euler characteristic in every weight".into())
        }
        "kls-concentration" => {
            for v in Variant::ALL {
                for w in 0..=rk {
                    let h = cohomology(&kls_complex(&ctx.gerst, w, v, caps)?);
                    let expected = if 2 * w < rk {
                        Some(w as i64)
                    } else if 2 * w > rk {
                        Some(w as i64 - 1)
                    } else {
                        None
                    };
                    if let Some((&k, _)) = h.iter().find(|&(&k, &n)| n > 0 && Some(k) != expected) {
                        return Ok(Err(format!("{} weight {w}: cohomology in degree {k}", v.name())));
                    }
                }
            }
            Ok("all four variants concentrated as predicted".into())
        }
        "kls-symmetry" => {
            use std::collections::BTreeSet;
            let shapes = |v: Variant, w: usize| -> Result<BTreeSet<Vec<(usize, usize, usize)>>> {
                let c = kls_complex(&ctx.gerst, w, v, caps)?;
                Ok(c.summands.values().flatten().map(|s| s.shape()).collect())
            };
            for w in 0..=rk {
                let r = shapes(Variant::Rkls, w)?;
                let flip = |s: &BTreeSet<Vec<(usize, usize, usize)>>| -> BTreeSet<_> {
                    s.iter().map(|v| v.iter().rev().copied().collect::<Vec<_>>()).collect()
                };
                let swap = |s: &BTreeSet<Vec<(usize, usize, usize)>>| -> BTreeSet<_> {
                    s.iter().map(|v| v.iter().map(|&(r, i, j)| (r, j, i)).collect::<Vec<_>>()).collect()
                };
                if shapes(Variant::Lkls, w)? != flip(&r) {
                    return Ok(Err(format!("weight {w}: LKLS is not RKLS flipped")));
                }
                if shapes(Variant::RklsHat, w)? != swap(&r) {
                    return Ok(Err(format!("weight {w}: hatted RKLS is not RKLS with C and L exchanged")));
                }
                if shapes(Variant::LklsHat, w)? != swap(&flip(&r)) {
                    return Ok(Err(format!("weight {w}: hatted LKLS is not LKLS with C and L exchanged")));
                }
            }
            Ok("flip and swap bijections on summand shapes".into())
        }
        "kl-match" => {
            let p_rec = kl_polynomials(l.poset_arc())?.get(b, t).clone();
            let q_rec = inverse_kl_polynomials(l.poset_arc())?.get(b, t).clone();
            let cx = kl_via_complexes(&ctx.gerst, caps)?;
            if p_rec == cx.p && q_rec == cx.q {
                Ok(format!("P = {p_rec}, Q = {q_rec}"))
            } else {
                Err(format!("recursion P = {p_rec}, Q = {q_rec}; complexes P = {}, Q = {}", cx.p, cx.q))
            }
        }
        other => return Err(Error::InvalidInput(format!("unknown check `{other}` (known: {})", CHECKS.join(", ")))),
    })
}

pub fn run(cfg: &RunConfig) -> Result<Report> {
    let selected: Vec<&str> = match &cfg.check {
        Some(name) if CHECKS.contains(&name.as_str()) => vec![name.as_str()],
        Some(name) => {
            return Err(Error::InvalidInput(format!("unknown check `{name}` (known: {})", CHECKS.join(", "))))
        }
        None => CHECKS.to_vec(),
    };
    let mut results: Vec<(&str, Status, String)> = Vec::new();
    match cfg.source.lattice(&cfg.caps) {
        Ok(l) => {
            let lattice = Arc::new(l);
            let g = gerst(cfg, &lattice)?;
            let mu = lattice.poset().mobius_table();
            let ctx = Ctx { lattice, gerst: g, mu };
            for name in selected {
                let start = Instant::now();
                let outcome = match check(name, &ctx, cfg) {
                    Ok(o) => o,
                    Err(e @ Error::SizeGuardExceeded { .. }) => return Err(e),
                    Err(e) => Err(e.to_string()),
                };
                if cfg.verbose {
                    eprintln!("{name}: {:?}", start.elapsed());
                }
                results.push(match outcome {
                    Ok(d) => (name, Status::Pass, d),
                    Err(d) => (name, Status::Fail, d),
                });
            }
        }
        Err(e @ (Error::NotGeometric { .. } | Error::NotALattice(..) | Error::NotGraded(_) | Error::MatroidAxiom(_))) => {
            for name in CHECKS {
                if name == "geometric" {
                    results.push((name, Status::Fail, e.to_string()));
                } else if selected.contains(&name) {
                    results.push((name, Status::Skip, "input is not a geometric lattice".into()));
                }
            }
        }
        Err(e) => return Err(e),
    }
    let ok = results.iter().all(|r| r.1 != Status::Fail);
    let name = cfg.source.name();
    let json = json!({
        "lattice": name,
        "ok": ok,
        "checks": results.iter().map(|(n, s, d)| json!({"name": n, "status": s.as_str(), "detail": d})).collect::<Vec<_>>(),
    });
    let mut rows = vec![vec!["check".to_string(), "status".into(), "detail".into()]];
    let mut text = format!("verify {name}\n");
    for (n, s, d) in &results {
        rows.push(vec![n.to_string(), s.as_str().into(), d.clone()]);
        let _ = writeln!(text, "  {n:<18} {:<4}  {d}", s.as_str());
    }
    let _ = writeln!(text, "{}", if ok { "all checks passed" } else { "FAILED" });
    Ok(Report { json, rows, text, ok })
}
