//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Expected values come from closed formulas or from oracles written
//! here independently of the library.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use xpq_core::compgroup::{
    blow_up, component_group, degree_check, element_order_by_snf, k_law_solve, quotient_by_wq, MultiGraph, Node,
};
use xpq_core::graph::{
    edge_brandt, edge_classes, genus, ss_oracle, vertex_brandt, vertex_classes, BrandtMatrix, EdgeSet, VertexKind,
    VertexSet,
};
use xpq_core::gross::{
    apply_wp, apply_wq_edges, edge_embedding_table, eisenstein_modular, eisenstein_shimura, gross_modular,
    gross_shimura, s_star, t_star, vertex_embedding_table, QuadDisc,
};

type Outcome = Result<String, String>;

fn frac(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn graph(p: u64, q: u64) -> (VertexSet, EdgeSet) {
    let vs = vertex_classes(q).expect("vertex classes");
    let es = edge_classes(p, &vs).expect("edge classes");
    (vs, es)
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

// ---------------------------------------------------------------------------
// Oracles

/// Kronecker symbol `(d|n)` for `n > 0`.
fn kronecker(d: i64, n: u64) -> i64 {
    let mut result = 1;
    let mut n = n;
    let a = d;
    while n.is_multiple_of(2) {
        n /= 2;
        if a % 2 == 0 {
            return 0;
        }
        if matches!(a.rem_euclid(8), 3 | 5) {
            result = -result;
        }
    }
    // Jacobi symbol (a|n), n odd
    let mut a = a.rem_euclid(n as i64) as u64;
    while a != 0 {
        while a.is_multiple_of(2) {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

fn is_fundamental(d: i64) -> bool {
    let m = d.rem_euclid(16);
    let squarefree = |x: i64| (2..).take_while(|k| k * k <= x).all(|k| x % (k * k) != 0);
    if d.rem_euclid(4) == 1 {
        return squarefree(-d);
    }
    (m == 8 || m == 12) && squarefree(-d / 4)
}

/// Class number from the analytic formula for the fundamental part and the
/// conductor formula for orders.
fn class_number_analytic(d: i64) -> i64 {
    let mut f = 1;
    let mut d0 = d;
    for k in (1..).take_while(|k| k * k <= -d).collect::<Vec<i64>>().into_iter().rev() {
        if d % (k * k) == 0 && is_fundamental(d / (k * k)) {
            f = k;
            d0 = d / (k * k);
            break;
        }
    }
    let n = -d0;
    let s: i64 = (1..n).map(|a| kronecker(d0, a as u64) * a).sum();
    let w0 = match d0 {
        -3 => 6,
        -4 => 4,
        _ => 2,
    };
    // h(D0) = -(w/2n) sum chi(a) a
    let h0 = -s * w0 / (2 * n);
    let mut num = h0 * f;
    let mut den = 1;
    let mut m = f;
    let mut l = 2;
    while m > 1 {
        if m % l == 0 {
            num *= l - kronecker(d0, l as u64);
            den *= l;
            while m % l == 0 {
                m /= l;
            }
        }
        l += 1;
    }
    let unit_index = if f > 1 { w0 / 2 } else { 1 };
    num / den / unit_index
}

/// Number of primitive reduced forms `(a, b, c)` of discriminant `d < 0`.
fn class_number_forms(d: i64) -> i64 {
    let mut h = 0;
    let mut a = 1;
    while 3 * a * a <= -d {
        for b in -a + 1..=a {
            let num = b * b - d;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || (c == a && b < 0) {
                continue;
            }
            if gcd(gcd(a as i128, b as i128), c as i128) == 1 {
                h += 1;
            }
        }
        a += 1;
    }
    h
}

/// Determinant by fraction-free elimination.
fn bareiss(mut m: Vec<Vec<i128>>) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            let Some(r) = (k + 1..n).find(|&r| m[r][k] != 0) else { return 0 };
            m.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Order of `source - sink` in the cokernel of the Laplacian, by Cramer's
/// rule on the reduced system: `nu_i = det_i / kappa`.
fn cokernel_order_oracle(g: &MultiGraph, source: usize, sink: usize) -> i128 {
    let lap = g.laplacian();
    let keep: Vec<usize> = (0..g.node_count()).filter(|&i| i != sink).collect();
    let reduced: Vec<Vec<i128>> =
        keep.iter().map(|&i| keep.iter().map(|&j| lap[i][j] as i128).collect()).collect();
    let kappa = bareiss(reduced.clone());
    let rhs: Vec<i128> = keep.iter().map(|&i| if i == source { 1 } else { 0 }).collect();
    let mut g_all = kappa;
    for c in 0..keep.len() {
        let mut m = reduced.clone();
        for r in 0..keep.len() {
            m[r][c] = rhs[r];
        }
        g_all = gcd(g_all, bareiss(m));
    }
    kappa.abs() / g_all
}

// ---------------------------------------------------------------------------
// Criteria

fn ac1() -> Outcome {
    let mut worst = Duration::ZERO;
    for q in [11u64, 23, 47, 59, 71, 83, 101, 251] {
        let t = Instant::now();
        let vs = vertex_classes(q).map_err(|e| e.to_string())?;
        let dt = t.elapsed();
        worst = worst.max(dt);
        let mass = vs.weights().iter().fold(BigRational::zero(), |a, &w| a + frac(1, w as i64));
        ensure(mass == frac(q as i64 - 1, 12), || format!("q={q}: mass {mass}"))?;
        ensure(vs.len() as u64 == genus(q) + 1, || format!("q={q}: {} classes, genus {}", vs.len(), genus(q)))?;
        ensure(dt < Duration::from_secs(60), || format!("q={q}: {dt:?}"))?;
    }
    Ok(format!("8 primes, slowest {worst:.2?}"))
}

fn ac2_3() -> (Outcome, Outcome) {
    let mut worst = Duration::ZERO;
    let mut r2 = Ok(());
    let mut r3 = Ok(());
    for (p, q) in [(5u64, 23u64), (13, 47), (29, 251)] {
        let t = Instant::now();
        let (vs, es) = graph(p, q);
        let dt = t.elapsed();
        worst = worst.max(dt);
        let expected = frac(((p + 1) * (q - 1)) as i64, 12);
        if r2.is_ok() {
            r2 = ensure(es.mass() == expected, || format!("({p},{q}): edge mass {}", es.mass()))
                .and(ensure(dt < Duration::from_secs(300), || format!("({p},{q}): {dt:?}")));
        }
        let a = eisenstein_shimura(&es);
        let target = eisenstein_modular(&vs).scale(&frac(p as i64 + 1, 1));
        if r3.is_ok() {
            r3 = ensure(
                s_star(&vs, &es, &a).unwrap() == target && t_star(&vs, &es, &a).unwrap() == target,
                || format!("({p},{q}): boundary of a_E"),
            );
        }
    }
    (r2.map(|_| format!("3 pairs, slowest {worst:.2?}")), r3.map(|_| "3 pairs".to_string()))
}

fn ac4() -> Outcome {
    let (vs, es) = graph(13, 47);
    let g = quotient_by_wq(&vs, &es);
    let side = |s: u8| g.nodes.iter().filter(|n| n.side() == Some(s)).count();
    ensure(side(1) == 5 && side(2) == 5, || format!("sides {} / {}", side(1), side(2)))?;
    let pos = |n: Node| g.position(&n).ok_or_else(|| format!("missing {n}"));
    let mut generic_degrees = Vec::new();
    for s in [1u8, 2] {
        ensure(g.degree(pos(Node::J(s))?) == 4, || format!("N(J{s}) = {}", g.degree(pos(Node::J(s)).unwrap())))?;
        ensure(g.degree(pos(Node::G(s))?) == 3, || format!("N(G{s})"))?;
        for k in 1..=3 {
            let i = pos(Node::Generic(s, k))?;
            generic_degrees.push(g.degree(i));
            let expected = if g.members[i].len() == 1 { 7 } else { 14 };
            ensure(g.degree(i) == expected, || format!("N(j{s},{k}) = {}", g.degree(i)))?;
        }
    }
    ensure(degree_check(&g, 13).passes(), || "degree formulas at (13,47)".into())?;
    // every class at q = 47 is rational; the non-rational formula needs a larger q
    let (vs83, es83) = graph(13, 83);
    let report = degree_check(&quotient_by_wq(&vs83, &es83), 13);
    let non_rational = (0..vs83.len()).filter(|&k| !vs83.is_rational(k)).count();
    ensure(non_rational > 0 && report.passes(), || format!("(13,83): {:?}", report.rows))?;
    let b = blow_up(&g);
    for n in [Node::Chain2, Node::Chain3(1), Node::Chain3(2)] {
        ensure(b.position(&n).is_some(), || format!("no exceptional vertex {n}"))?;
    }
    let bp = |n: Node| b.position(&n).unwrap();
    ensure(b.n_between(bp(Node::J(1)), bp(Node::Chain2)) == 1 && b.n_between(bp(Node::J(2)), bp(Node::Chain2)) == 1, || {
        "𝒥 is not between J1 and J2".into()
    })?;
    ensure(
        b.n_between(bp(Node::G(1)), bp(Node::Chain3(1))) == 1
            && b.n_between(bp(Node::Chain3(1)), bp(Node::Chain3(2))) == 1
            && b.n_between(bp(Node::Chain3(2)), bp(Node::G(2))) == 1,
        || "chain G1 - 𝒥1 - 𝒥2 - G2 missing".into(),
    )?;
    // rows J1, j11, j12, j13, G1 against J2, j21, j22, j23, G2, up to
    // relabelling the generic vertices
    let fixture = [[1, 1, 0, 1, 0], [1, 2, 2, 1, 1], [0, 2, 2, 2, 1], [1, 1, 2, 3, 0], [0, 1, 1, 0, 0]];
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let order = |s: u8, pm: &[usize; 3]| -> Vec<usize> {
        let mut v = vec![bp(Node::J(s))];
        v.extend(pm.iter().map(|&k| bp(Node::Generic(s, k + 1))));
        v.push(bp(Node::G(s)));
        v
    };
    let matched = perms.iter().any(|pa| {
        perms.iter().any(|pb| {
            let (rows, cols) = (order(1, pa), order(2, pb));
            (0..5).all(|r| (0..5).all(|c| b.n_between(rows[r], cols[c]) == fixture[r][c]))
        })
    });
    ensure(matched, || "adjacency differs from the fixture".into())?;
    Ok(format!("J=4, G=3, generic={generic_degrees:?}; fixture matched; (13,83) with {non_rational} non-rational classes"))
}

fn ac5() -> Outcome {
    let mut notes = Vec::new();
    for (p, q) in [(5u64, 23u64), (13, 23), (13, 47), (37, 59), (29, 251)] {
        let (vs, es) = graph(p, q);
        if p % 4 == 1 && q % 4 == 3 {
            let j = vs.index_of_kind(VertexKind::J1728).ok_or("no 1728 vertex")?;
            let twos: Vec<usize> = (0..es.len()).filter(|&e| es.length(e) == 2).collect();
            ensure(twos.len() == 2, || format!("({p},{q}): {} length-2 edges", twos.len()))?;
            ensure(twos.iter().all(|&e| es.s(e) == j && es.t(e) == j), || format!("({p},{q}): length-2 not at 1728"))?;
            ensure(es.wq()[twos[0]] == twos[1], || format!("({p},{q}): length-2 edges not swapped by w_q"))?;
        }
        if p % 3 == 1 && q % 3 == 2 {
            let z = vs.index_of_kind(VertexKind::J0).ok_or("no 0 vertex")?;
            let threes: Vec<usize> = (0..es.len()).filter(|&e| es.length(e) == 3).collect();
            ensure(threes.len() == 2, || format!("({p},{q}): {} length-3 edges", threes.len()))?;
            ensure(threes.iter().all(|&e| es.s(e) == z && es.t(e) == z), || format!("({p},{q}): length-3 not at 0"))?;
        }
        notes.push(format!("({p},{q})"));
    }
    Ok(notes.join(" "))
}

fn ac6() -> Outcome {
    let mut count = 0;
    for (p, q) in [(5u64, 23u64), (13, 47)] {
        let (vs, es) = graph(p, q);
        let ds: Vec<QuadDisc> = (-200i64..0)
            .filter(|d| matches!(d.rem_euclid(4), 0 | 1))
            .filter(|d| d % p as i64 != 0 && d % q as i64 != 0)
            .map(|d| QuadDisc::new(d).unwrap())
            .collect();
        let hv = vertex_embedding_table(&vs, &ds);
        let he = edge_embedding_table(&vs, &es, &ds);
        for (t, d) in ds.iter().enumerate() {
            let h = class_number_forms(d.d);
            ensure(h == class_number_analytic(d.d), || format!("D={}: oracles disagree", d.d))?;
            let sq = kronecker(d.d, q);
            let sp = kronecker(d.d, p);
            let total_v: i64 = hv.iter().map(|row| row[t] as i64).sum();
            let total_e: i64 = he.iter().map(|row| row[t] as i64).sum();
            ensure(total_v == (1 - sq) * h, || format!("({p},{q}) D={}: vertices {total_v} vs {}", d.d, (1 - sq) * h))?;
            ensure(total_e == (1 - sq) * (1 + sp) * h, || {
                format!("({p},{q}) D={}: edges {total_e} vs {}", d.d, (1 - sq) * (1 + sp) * h)
            })?;
            count += 1;
        }
    }
    Ok(format!("{count} (pair, D) cases"))
}

fn ac7() -> Outcome {
    let mut tested = Vec::new();
    for (p, q) in [(5u64, 23u64), (13, 47)] {
        let (vs, es) = graph(p, q);
        for d in (-200i64..-4).rev().filter(|d| matches!(d.rem_euclid(4), 0 | 1)) {
            if kronecker(d, q) != -1 || kronecker(d, p) != 1 {
                continue;
            }
            let disc = QuadDisc::new(d).unwrap();
            let gamma = gross_shimura(&vs, &es, &disc);
            if (0..es.len()).any(|e| es.length(e) > 1 && !gamma[e].is_zero()) {
                continue;
            }
            let big = gross_modular(&vs, &disc).scale(&frac(4, 1));
            ensure(s_star(&vs, &es, &gamma).unwrap() == big, || format!("({p},{q}) D={d}: s_*"))?;
            ensure(t_star(&vs, &es, &gamma).unwrap() == big, || format!("({p},{q}) D={d}: t_*"))?;
            ensure(apply_wq_edges(&es, &gamma).unwrap() == gamma, || format!("({p},{q}) D={d}: w_q"))?;
            ensure(apply_wp(&es, &gamma).unwrap() == -&gamma, || format!("({p},{q}) D={d}: w_p"))?;
            tested.push(d);
            if tested.len() >= 12 {
                return Ok(format!("{} discriminants", tested.len()));
            }
        }
    }
    ensure(tested.len() >= 10, || format!("only {} discriminants qualified", tested.len()))?;
    Ok(format!("{} discriminants", tested.len()))
}

fn hecke_suite(ms: &[BrandtMatrix], weights: &[usize], what: &str) -> Result<(), String> {
    for b in ms {
        ensure(b.row_sums().iter().all(|&s| s == b.l as i64 + 1), || format!("{what}: row sums of T_{}", b.l))?;
        ensure(b.is_weighted_symmetric(weights), || format!("{what}: T_{} not weighted symmetric", b.l))?;
    }
    for i in 0..ms.len() {
        for j in i + 1..ms.len() {
            ensure(ms[i].commutes_with(&ms[j]), || format!("{what}: T_{} T_{}", ms[i].l, ms[j].l))?;
        }
    }
    Ok(())
}

fn ac8() -> Outcome {
    for q in [11u64, 23, 47, 101] {
        let vs = vertex_classes(q).unwrap();
        let ms: Vec<BrandtMatrix> =
            [2u64, 3, 5, 7].iter().filter(|&&l| l != q).map(|&l| vertex_brandt(&vs, l).unwrap()).collect();
        hecke_suite(&ms, vs.weights(), &format!("q={q}"))?;
    }
    for (p, q) in [(5u64, 23u64), (13, 47)] {
        let (vs, es) = graph(p, q);
        let ms: Vec<BrandtMatrix> =
            [2u64, 3, 5, 7].iter().filter(|&&l| l != p && l != q).map(|&l| edge_brandt(&vs, &es, l).unwrap()).collect();
        let lengths: Vec<usize> = (0..es.len()).map(|e| es.length(e)).collect();
        hecke_suite(&ms, &lengths, &format!("({p},{q}) edges"))?;
    }
    let vs = vertex_classes(11).unwrap();
    let b = vertex_brandt(&vs, 2).unwrap();
    // weight-2 class first
    let mut perm: Vec<usize> = (0..vs.len()).collect();
    perm.sort_by_key(|&k| std::cmp::Reverse(vs.weight(k) == 2));
    ensure(b.permuted(&perm).entries == vec![vec![1, 2], vec![3, 0]], || format!("q=11: {:?}", b.entries))?;
    Ok("vertex level q in {11,23,47,101}, edge level (5,23),(13,47); q=11 fixture".into())
}

fn random_graph(rng: &mut StdRng) -> MultiGraph {
    let n = rng.gen_range(2..=12);
    let mut g = MultiGraph::new(n);
    for v in 1..n {
        let u = rng.gen_range(0..v);
        g.add_edge(u, v, 1);
    }
    for _ in 0..rng.gen_range(0..=2 * n) {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        if a != b {
            g.add_edge(a, b, 1);
        }
    }
    g
}

fn ac9() -> Outcome {
    for k in 1..=12usize {
        let mut banana = MultiGraph::new(2);
        let mut cycle = MultiGraph::new(k.max(1));
        for i in 0..k {
            banana.add_edge(0, 1, 1);
            if k > 1 {
                cycle.add_edge(i, (i + 1) % k, 1);
            }
        }
        let expect = |m: usize| if m > 1 { vec![BigInt::from(m)] } else { vec![] };
        ensure(component_group(&banana).unwrap().factors == expect(k), || format!("banana {k}"))?;
        if k > 2 {
            ensure(component_group(&cycle).unwrap().factors == expect(k), || format!("cycle {k}"))?;
        }
    }
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for trial in 0..20 {
        let g = random_graph(&mut rng);
        let n = g.node_count();
        let source = rng.gen_range(0..n);
        let sink = (source + rng.gen_range(1..n)) % n;
        let current = BigInt::from(rng.gen_range(1..=12));
        let order = cokernel_order_oracle(&g, source, sink);
        let snf = element_order_by_snf(&g, source, sink).unwrap();
        ensure(snf == BigInt::from(order), || format!("trial {trial}: SNF order {snf}, oracle {order}"))?;
        let solved = k_law_solve(&g, source, sink, &current).unwrap();
        let divides = (&current % BigInt::from(order)).is_zero();
        ensure(solved.integral == divides, || format!("trial {trial}: integral {} vs order {order}", solved.integral))?;
        ensure(solved.potentials.iter().min().is_some_and(|m| m.is_zero()), || format!("trial {trial}: min not 0"))?;
    }
    Ok("banana/cycle k<=12, 20 random graphs against the Cramer oracle".into())
}

fn ac10() -> Outcome {
    let primes: Vec<u64> = (5..=101).filter(|&q| is_prime(q)).collect();
    for &q in &primes {
        let vs = vertex_classes(q).unwrap();
        let (count, rational) = ss_oracle(q);
        ensure(count == vs.len(), || format!("q={q}: oracle {count}, classes {}", vs.len()))?;
        ensure(rational == vs.rational_count(), || format!("q={q}: rational {rational} vs {}", vs.rational_count()))?;
    }
    Ok(format!("{} primes q <= 101", primes.len()))
}

fn ac11() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_criterion");
    let run = || -> Result<(Vec<u8>, Duration, i32), String> {
        let t = Instant::now();
        let out = Command::new(bin)
            .args(["check", "--p", "29", "--q", "251", "--override-hypotheses"])
            .env_remove("CRITERION_CACHE_DIR")
            .output()
            .map_err(|e| e.to_string())?;
        Ok((out.stdout, t.elapsed(), out.status.code().unwrap_or(-1)))
    };
    let (a, ta, code) = run()?;
    let (b, tb, _) = run()?;
    ensure(a == b, || "certificates differ between runs".into())?;
    ensure(ta.max(tb) < Duration::from_secs(1800), || format!("took {:?}", ta.max(tb)))?;
    ensure(code == 0 || code == 1, || format!("exit code {code}"))?;
    let cert: serde_json::Value = serde_json::from_slice(&a).map_err(|e| e.to_string())?;
    let verdict = &cert["verdict"];
    if verdict == "criterion_satisfied" {
        let cycle = &cert["cycle"];
        let residual_zero = cert["decomposition"]["residual"].as_array().is_some_and(|r| r.iter().all(|x| x == "0/1"));
        ensure(residual_zero && cycle["closed"] == true && cycle["multiplicity_matches"] == true, || {
            "satisfied verdict without its checks".into()
        })?;
        ensure(cycle["multiplicity_coprime_to_p"] == true, || "gcd(2 lambda_0, 29) != 1".into())?;
        Ok(format!("criterion satisfied in {ta:.2?}; byte-identical reruns"))
    } else if let Some(name) = verdict.get("check_failed").and_then(|v| v.as_str()) {
        Ok(format!("named check failure '{name}' in {ta:.2?}; byte-identical reruns"))
    } else {
        Err(format!("unexpected verdict {verdict}"))
    }
}

fn main() -> ExitCode {
    let (r2, r3) = ac2_3();
    let results: Vec<(&str, Outcome)> = vec![
        ("AC1", ac1()),
        ("AC2", r2),
        ("AC3", r3),
        ("AC4", ac4()),
        ("AC5", ac5()),
        ("AC6", ac6()),
        ("AC7", ac7()),
        ("AC8", ac8()),
        ("AC9", ac9()),
        ("AC10", ac10()),
        ("AC11", ac11()),
    ];
    let mut failed = false;
    for (name, r) in &results {
        match r {
            Ok(detail) => println!("{name} PASS {detail}"),
            Err(why) => {
                failed = true;
                println!("{name} FAIL {why}");
            }
        }
    }
    if failed {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
