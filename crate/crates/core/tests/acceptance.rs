//! End-to-end acceptance checks. Runs without the libtest harness so that
//! each criterion prints one line whether or not it passes.

use std::time::{Duration, Instant};

use brauer_forge::fusion::fusion_system;
use brauer_forge::harness::catalog::{catalog, CatalogGroup, CATALOG};
use brauer_forge::harness::checks::{check_ik1_consequence, check_lemma31, check_theorem2};
use brauer_forge::harness::Verdict;
use brauer_forge::linalg::{Field, Matrix};
use brauer_forge::modrep::{brauer_quotient, decompose, is_indecomposable, Representation, Summand};
use brauer_forge::nilpotent::{find_hq, HQPath};
use brauer_forge::scott::scott;
use brauer_forge::semidihedral::make_semidihedral;
use brauer_forge::{cli, Group, Subgroup};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn gf2() -> Field {
    Field::gf2()
}

fn flagship() -> (CatalogGroup, CatalogGroup) {
    let gl = catalog("gl23").expect("gl23");
    (gl.clone(), gl)
}

fn delta_p() -> (CatalogGroup, Subgroup) {
    let h = catalog("gl23xgl23").expect("product");
    let dp = h.subgroup("delta").expect("delta P");
    (h, dp)
}

fn criterion1() -> Outcome {
    let (g, g2) = flagship();
    let start = Instant::now();
    let report = check_theorem2(&g, &g2, gf2(), 0).map_err(|e| e.to_string())?;
    let code = cli::run(["brauer-forge", "thm2", "gl23", "gl23", "--quiet"]);
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(300), "took {elapsed:?}");
    ensure!(code == 0, "exit code {code}");
    ensure!(report.verdict.is_pass(), "verdict {}", report.verdict.label());
    for r in &report.subgroup_results {
        ensure!(
            r.outcome == "indecomposable" || r.outcome == "zero",
            "{}: {}",
            r.subgroup,
            r.outcome
        );
    }
    let (h, dp) = delta_p();
    let sc = scott(&h.group, &dp, gf2(), 0).map_err(|e| e.to_string())?;
    ensure!(sc.parent.dim() == 48 * 48 / 16, "permutation module has dim {}", sc.parent.dim());
    Ok(format!(
        "{} classes, Sc of dim {} inside dim {}, {:.2?}",
        report.subgroup_results.len(),
        sc.dim(),
        sc.parent.dim(),
        elapsed
    ))
}

/// Cosets `xH` with `Q x H = x H`, counted from coset representatives.
fn fixed_cosets(g: &Group, h: &Subgroup, q: &Subgroup) -> usize {
    let mut seen = vec![false; g.order()];
    let mut count = 0;
    for x in 0..g.order() {
        if seen[x] {
            continue;
        }
        for &k in h.elements() {
            seen[g.mul(x, k)] = true;
        }
        let xi = g.inv(x);
        if q.elements().iter().all(|&a| h.contains(g.mul(g.mul(xi, a), x))) {
            count += 1;
        }
    }
    count
}

fn criterion2() -> Outcome {
    let mut triples = 0;
    for name in ["s3", "a4", "q8", "sd16", "gl23", "sd16xc3"] {
        let cg = catalog(name).map_err(|e| e.to_string())?;
        let g = &cg.group;
        let p_subs = g.subgroups_of(&cg.sylow).map_err(|e| e.to_string())?;
        let hs: Vec<Subgroup> = {
            let mut v = vec![g.trivial(), cg.sylow.clone()];
            v.extend(p_subs.iter().filter(|s| s.order() == 2).take(1).cloned());
            v.dedup();
            v
        };
        for h in &hs {
            let m = Representation::perm_module(g, &g.coset_action(h), gf2()).map_err(|e| e.to_string())?;
            for q in p_subs.iter().step_by(3) {
                let br = brauer_quotient(&m, q).map_err(|e| e.to_string())?;
                let expected = fixed_cosets(g, h, q);
                ensure!(
                    br.dim() == expected,
                    "{name}, |H| = {}, |Q| = {}: dim {} vs {expected} fixed cosets",
                    h.order(),
                    q.order(),
                    br.dim()
                );
                triples += 1;
            }
        }
    }
    ensure!(triples >= 20, "only {triples} triples");
    Ok(format!("{triples} (G, H, Q) triples"))
}

fn test_matrix() -> Vec<(String, Representation)> {
    let mut out = Vec::new();
    for (name, h) in [("s3", "1"), ("a4", "1"), ("gl23", "sylow"), ("gl23", "z"), ("sd16xc3", "1")] {
        let cg = catalog(name).expect("catalog");
        let h = cg.subgroup(h).expect("subgroup");
        let m = Representation::perm_module(&cg.group, &cg.group.coset_action(&h), gf2()).expect("module");
        out.push((format!("{name}/{}", h.order()), m));
    }
    let s3 = catalog("s3").expect("s3");
    let k = Representation::trivial(&s3.group, gf2());
    out.push(("k+k over s3".into(), k.direct_sum(&k).expect("sum")));
    out
}

fn soundness(name: &str, m: &Representation, parts: &[Summand]) -> Result<(), String> {
    ensure!(!parts.is_empty(), "{name}: no summands");
    let f = parts[0].inclusion.field();
    let d = m.dim();
    let total: usize = parts.iter().map(Summand::dim).sum();
    ensure!(total == d, "{name}: dims sum to {total}, not {d}");
    let mut sum = Matrix::zeros(f, d, d);
    for (i, a) in parts.iter().enumerate() {
        let e = a.idempotent();
        ensure!(e.mul(&e).unwrap() == e, "{name}: summand {i} is not idempotent");
        sum.add_scaled(1, &e).unwrap();
        for (j, b) in parts.iter().enumerate() {
            if i != j {
                ensure!(e.mul(&b.idempotent()).unwrap().is_zero(), "{name}: e{i} e{j} != 0");
            }
        }
        let ind = is_indecomposable(&a.rep).map_err(|e| e.to_string())?;
        ensure!(ind.indecomposable, "{name}: summand {i} is not local");
        ensure!(ind.certificate.residue_dim == 1, "{name}: summand {i} has End/J of dim {}", ind.certificate.residue_dim);
        let again = decompose(&a.rep, 7).map_err(|e| e.to_string())?;
        ensure!(again.len() == 1 && again[0].dim() == a.dim(), "{name}: summand {i} splits again");
    }
    ensure!(sum == Matrix::identity(f, d), "{name}: idempotents do not sum to 1");
    Ok(())
}

fn on_threads<T: Send>(n: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build()
        .expect("pool")
        .install(f)
}

fn criterion3() -> Outcome {
    let mut modules = 0;
    for (name, m) in test_matrix() {
        let a = decompose(&m, 0).map_err(|e| e.to_string())?;
        let b = decompose(&m, 0).map_err(|e| e.to_string())?;
        soundness(&name, &m, &a)?;
        let same = |x: &[Summand], y: &[Summand]| {
            x.len() == y.len()
                && x.iter().zip(y).all(|(s, t)| s.inclusion == t.inclusion && s.projection == t.projection)
        };
        ensure!(same(&a, &b), "{name}: two runs differ");
        let one = on_threads(1, || decompose(&m, 0)).map_err(|e| e.to_string())?;
        let many = on_threads(4, || decompose(&m, 0)).map_err(|e| e.to_string())?;
        ensure!(same(&one, &many) && same(&a, &one), "{name}: 1 vs 4 threads differ");
        modules += 1;
    }
    let (g, g2) = flagship();
    let one = on_threads(1, || check_theorem2(&g, &g2, gf2(), 0)).map_err(|e| e.to_string())?;
    let many = on_threads(4, || check_theorem2(&g, &g2, gf2(), 0)).map_err(|e| e.to_string())?;
    ensure!(
        one.to_canonical_json().unwrap() == many.to_canonical_json().unwrap(),
        "flagship report differs between 1 and 4 threads"
    );
    Ok(format!("{modules} modules decomposed, flagship report thread-independent"))
}

fn criterion4() -> Outcome {
    for n in 4..=6u32 {
        let sd = make_semidihedral(n).map_err(|e| e.to_string())?;
        let g = sd.group();
        let x = g.index_of(&sd.x()).unwrap();
        let y = g.index_of(&sd.y()).unwrap();
        let order = 1usize << n;
        let subs = g.subgroups_all().map_err(|e| e.to_string())?;
        let maximal: Vec<&Subgroup> = subs.iter().filter(|s| s.order() == order / 2).collect();
        ensure!(maximal.len() == 3, "SD{order}: {} maximal subgroups", maximal.len());
        // cyclic: an element of full order; dihedral: more involutions than
        // quaternion's single one
        let mut kinds: Vec<&str> = maximal
            .iter()
            .map(|m| {
                let involutions = m.elements().iter().filter(|&&a| g.element_order(a) == 2).count();
                if m.elements().iter().any(|&a| g.element_order(a) == m.order()) {
                    "cyclic"
                } else if involutions == 1 {
                    "quaternion"
                } else {
                    "dihedral"
                }
            })
            .collect();
        kinds.sort_unstable();
        ensure!(kinds == ["cyclic", "dihedral", "quaternion"], "SD{order}: maximal types {kinds:?}");
        let z = g.center();
        let zx = g.pow(x, 1 << (n - 2));
        ensure!(z.order() == 2 && z.contains(zx), "SD{order}: Z = {} elements", z.order());
        let kleins: Vec<&Subgroup> = subs
            .iter()
            .filter(|s| s.order() == 4 && s.elements().iter().all(|&a| g.element_order(a) <= 2))
            .collect();
        ensure!(
            kleins.iter().all(|k| g.are_conjugate(kleins[0], k).is_some()),
            "SD{order}: Klein fours are not all conjugate"
        );
        ensure!(
            kleins.iter().all(|k| g.centralizer(k) == **k),
            "SD{order}: C_P(Q) != Q for a Klein four"
        );
        let xy = g.mul(x, y);
        let cxy = g.subgroup(&[xy]);
        ensure!(g.centralizer(&cxy) == cxy, "SD{order}: C_P(<xy>) != <xy>");
        for i in 0..(order / 2) {
            let e = g.mul(g.pow(x, i), y);
            ensure!((g.element_order(e) == 2) == (i % 2 == 0), "SD{order}: order of x^{i} y");
        }
    }
    Ok("SD16, SD32, SD64".into())
}

/// Normal 2-complement by counting: the odd-order elements form a subgroup
/// of odd index equal to the 2-part.
fn two_nilpotent_oracle(g: &Group, c: &Subgroup) -> bool {
    let odd: Vec<usize> = c.elements().iter().copied().filter(|&a| g.element_order(a) % 2 == 1).collect();
    let odd_part = c.order() >> c.order().trailing_zeros();
    odd.len() == odd_part && g.subgroup(&odd).order() == odd_part
}

fn criterion5() -> Outcome {
    let mut done = Vec::new();
    for name in ["gl23", "m11"] {
        let cg = catalog(name).map_err(|e| e.to_string())?;
        let g = &cg.group;
        let report = check_lemma31(name, g, &cg.sylow, 0).map_err(|e| e.to_string())?;
        ensure!(report.verdict.is_pass(), "{name}: verdict {}", report.verdict.label());
        let large: Vec<Subgroup> = g
            .subgroups_of(&cg.sylow)
            .map_err(|e| e.to_string())?
            .into_iter()
            .filter(|q| q.order() >= 8)
            .collect();
        ensure!(large.len() == report.subgroup_results.len(), "{name}: subgroup count");
        for q in &large {
            ensure!(two_nilpotent_oracle(g, &g.centralizer(q)), "{name}: oracle disagrees at |Q| = {}", q.order());
        }
        done.push(format!("{name} ({} subgroups)", large.len()));
    }
    let code = cli::run(["brauer-forge", "lemma31", "m11", "--extended", "--quiet"]);
    ensure!(code == 0, "lemma31 m11 --extended exited {code}");
    Ok(done.join(", "))
}

fn criterion6() -> Outcome {
    let (h, dp) = delta_p();
    let fusion = fusion_system(&h.group, &dp).map_err(|e| e.to_string())?;
    let reps = fusion.fully_normalized_representatives();
    for q in &reps {
        let r = check_ik1_consequence("gl23xgl23", &h.group, &dp, q, gf2(), 0).map_err(|e| e.to_string())?;
        ensure!(
            !r.assertions.iter().any(|c| matches!(c.verdict, Verdict::Skipped(_))),
            "unknown outcome at |Q| = {}",
            q.order()
        );
        ensure!(r.verdict.is_pass() && r.hypotheses_hold, "not isomorphic at |Q| = {}", q.order());
    }
    Ok(format!("{} fully normalized classes isomorphic", reps.len()))
}

fn criterion7() -> Outcome {
    let (h, dp) = delta_p();
    let g = &h.group;
    let fusion = fusion_system(g, &dp).map_err(|e| e.to_string())?;
    let mut paths = Vec::new();
    let mut all_two = true;
    for q in fusion.fully_normalized_representatives().iter().filter(|q| !q.is_trivial()) {
        let c = g.centralizer(q);
        if !two_nilpotent_oracle(g, &c) {
            continue;
        }
        let w = find_hq(g, &dp, q).map_err(|e| e.to_string())?;
        let n = g.normalizer(q);
        let np = g.normalizer_in(&dp, q);
        let two = |k: usize| k & (k - 1) == 0;
        ensure!(np.is_subgroup_of(&w.h_q) && w.h_q.is_subgroup_of(&n), "containments at |Q| = {}", q.order());
        ensure!(
            w.h_q.order() / (w.h_q.order() >> w.h_q.order().trailing_zeros()) == np.order(),
            "N_P(Q) not Sylow in H_Q at |Q| = {}",
            q.order()
        );
        ensure!(two(n.order() / w.h_q.order()), "index not a power of 2 at |Q| = {}", q.order());
        all_two &= w.quotient_is_two_group;
        paths.push(w.path);
    }
    let (g1, g2) = flagship();
    let report = check_theorem2(&g1, &g2, gf2(), 0).map_err(|e| e.to_string())?;
    let explained = report
        .assertions
        .iter()
        .find(|c| c.name == "H_Q construction paths")
        .is_some_and(|c| c.verdict.is_pass());
    ensure!(explained, "report lacks the construction-path explanation");
    ensure!(paths.contains(&HQPath::S3Lift) || all_two, "no S3 lift and some quotient is not a 2-group");
    Ok(format!("{} witnesses, paths {:?}", paths.len(), paths))
}

fn criterion8() -> Outcome {
    let gl = catalog("gl23").map_err(|e| e.to_string())?;
    let f = fusion_system(&gl.group, &gl.sylow).map_err(|e| e.to_string())?;
    let sat = f.is_saturated();
    ensure!(sat.saturated, "F_P(GL(2,3)) unsaturated: {:?}", sat.witnesses.first().map(|w| &w.reason));
    let mut reflexive = 0;
    for e in CATALOG {
        let cg = catalog(e.name).map_err(|e| e.to_string())?;
        let a = fusion_system(&cg.group, &cg.sylow).map_err(|e| e.to_string())?;
        let b = fusion_system(&cg.group, &cg.sylow).map_err(|e| e.to_string())?;
        ensure!(brauer_forge::fusion::fusion_equal(&a, &b).unwrap(), "{} not reflexive", e.name);
        reflexive += 1;
    }
    let inner = fusion_system(&gl.group.as_group(&gl.sylow), &gl.group.as_group(&gl.sylow).whole())
        .map_err(|e| e.to_string())?;
    // P as a group in its own right, pushed back into GL(2,3)
    let map: Vec<usize> = (0..gl.sylow.order()).collect();
    let pushed = inner.transport(&gl.group, &gl.sylow, &map).map_err(|e| e.to_string())?;
    ensure!(!brauer_forge::fusion::fusion_equal(&pushed, &f).unwrap(), "F_P(P) = F_P(GL(2,3))");
    Ok(format!("saturated; reflexive on {reflexive} catalog groups; F_P(P) differs"))
}

fn criterion9() -> Outcome {
    let s3 = catalog("s3").map_err(|e| e.to_string())?;
    let k = Representation::trivial(&s3.group, gf2());
    let kk = k.direct_sum(&k).unwrap();
    let ind = is_indecomposable(&kk).map_err(|e| e.to_string())?;
    ensure!(!ind.indecomposable, "k + k reported indecomposable");
    ensure!(decompose(&kk, 0).unwrap().len() == 2, "k + k does not split in two");

    let gl = catalog("gl23").map_err(|e| e.to_string())?;
    let mut f = fusion_system(&gl.group, &gl.sylow).map_err(|e| e.to_string())?;
    let q8 = gl.subgroup("x^2,xy").unwrap();
    let autos = f.automorphisms(&q8).unwrap();
    let inner: Vec<Vec<u32>> = q8.elements().iter().map(|&a| f.inner_map(&q8, a).unwrap()).collect();
    let outer = autos
        .iter()
        .find(|t| !inner.contains(t))
        .ok_or("Q8 has no outer automorphism in F")?
        .clone();
    ensure!(f.remove_map(&q8, &q8, &outer).unwrap(), "removal failed");
    let sat = f.is_saturated();
    ensure!(!sat.saturated && !sat.witnesses.is_empty(), "corrupted table still saturated");
    Ok(format!("k + k splits; corrupted table: {}", sat.witnesses[0].reason))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("flagship product run", criterion1),
        ("Brauer quotients of permutation modules", criterion2),
        ("decomposition soundness and determinism", criterion3),
        ("semidihedral structure", criterion4),
        ("large subgroups have 2-nilpotent centralizers", criterion5),
        ("Brauer quotient vs local Scott module", criterion6),
        ("H_Q witnesses", criterion7),
        ("fusion systems", criterion8),
        ("negative controls", criterion9),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let t = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS criterion {}: {name} ({detail}; {t:.2?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
