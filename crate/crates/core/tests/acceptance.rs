//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fails.
//!
//! Every criterion is exact (counts, isomorphism verdicts, set equalities);
//! the only tolerances are the wall-clock budgets below, measured per
//! criterion.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use sphere_rigidity::complex::search::{search_embedding, search_embedding_exhaustive, search_isomorphism};
use sphere_rigidity::genus_zero::{build_caterpillar_window, build_genus_zero_complex, catalog, BOUNDARY_EFFECT};
use sphere_rigidity::homology::betti_numbers;
use sphere_rigidity::pants::{
    classify_link, enumerate_pants, flip_partners, pants_flip_graph, DualMultigraph, JoinDecomposition,
};
use sphere_rigidity::rigidity::{
    caterpillar_witness, check_caterpillar_witness, good_pair_census, label_action, link_equivalence_classes,
    verify_rigidity, CutLabeling, RigidityMode,
};
use sphere_rigidity::sampling::{random_connected_multigraph, random_sphere_system, rng, scramble};
use sphere_rigidity::whitney::{
    find_k3_k13_pair, is_edge_isomorphism, lift_edge_isomorphism, EdgeBijection, LiftResult, Multigraph,
};
use sphere_rigidity::{FlagComplex, ManifoldSignature};

/// Wall-clock budgets in seconds. Unoptimized test builds get a 5x allowance.
const BUDGETS: [f64; 11] = [1.0, 5.0, 30.0, 10.0, 20.0, 1.0, 10.0, 60.0, 10.0, 1.0, 20.0];
const DEBUG_SLOWDOWN: f64 = 5.0;

const WHITNEY_SEED: u64 = 20_240_601;
const WHITNEY_GRAPHS: usize = 100;
const SYSTEM_SEED: u64 = 7_000_007;
const SYSTEM_COUNT: usize = 200;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn four_holed() -> Outcome {
    let gz = build_genus_zero_complex(4).map_err(err)?;
    let c = gz.complex();
    ensure(c.len() == 3 && c.edge_count() == 0, || format!("{} vertices, {} edges", c.len(), c.edge_count()))?;
    let pants = enumerate_pants(&gz).map_err(err)?;
    ensure(pants.len() == 3, || format!("{} pants decompositions", pants.len()))?;
    for p in &pants {
        let a = p.members()[0];
        let partners: BTreeSet<usize> = flip_partners(&gz, p, a).map_err(err)?.into_iter().collect();
        let others: BTreeSet<usize> = (0..3).filter(|&v| v != a).collect();
        ensure(partners == others, || format!("partners of {} are {partners:?}", c.id(a)))?;
    }
    Ok("3 vertices, 0 edges, every pair flip-related".into())
}

fn five_holed() -> Outcome {
    let gz = build_genus_zero_complex(5).map_err(err)?;
    let c = gz.complex();
    ensure(c.len() == 10 && c.edge_count() == 15, || format!("{} vertices, {} edges", c.len(), c.edge_count()))?;
    let petersen = catalog("petersen").map_err(err)?;
    let iso = search_isomorphism(c, &petersen).ok_or("no isomorphism to the Petersen graph")?;
    ensure(iso.is_isomorphism(c, &petersen), || "returned map is not an isomorphism".into())?;
    let action = label_action(&gz).map_err(err)?;
    ensure(action.group_order == 120, || format!("|Aut| = {}", action.group_order))?;
    ensure(action.faithful && action.surjective, || format!("label action {action:?}"))?;
    Ok("Petersen isomorphism found, |Aut| = 120 = |S5 image|".into())
}

fn six_holed() -> Outcome {
    let gz = build_genus_zero_complex(6).map_err(err)?;
    let c = gz.complex();
    let f = c.f_vector(3);
    ensure(f.counts == [25, 105, 105, 0], || format!("f-vector {:?}", f.counts))?;
    ensure(f.euler_characteristic == 25, || format!("chi = {}", f.euler_characteristic))?;
    let h = betti_numbers(c, 2);
    ensure(h.complete, || "simplices above dimension 2".into())?;
    ensure(h.betti[0] == 1 && h.betti[2] >= 1, || format!("betti {:?}", h.betti))?;
    let alt = h.betti[0] as i64 - h.betti[1] as i64 + h.betti[2] as i64;
    ensure(alt == 25, || format!("b0 - b1 + b2 = {alt}"))?;
    Ok(format!("f = (25, 105, 105), chi = 25, betti = {:?}, torsion = {:?}", h.betti, h.torsion))
}

fn non_embedding() -> Outcome {
    let k33 = catalog("k33").map_err(err)?;
    let petersen = catalog("petersen").map_err(err)?;
    ensure(search_embedding_exhaustive(&k33, &petersen).is_none(), || "K3,3 embeds in Petersen".into())?;
    ensure(search_embedding(&k33, &petersen).is_none(), || "K3,3 embeds in Petersen".into())?;
    ensure(petersen.len() > k33.len(), || "vertex-count precheck does not apply".into())?;
    ensure(search_embedding(&petersen, &k33).is_none(), || "Petersen embeds in K3,3".into())?;
    let window = build_caterpillar_window(10);
    for (name, src) in [("K3,3", &k33), ("Petersen", &petersen)] {
        let shortcut = search_embedding(src, &window);
        let full = search_embedding_exhaustive(src, &window);
        ensure(shortcut.is_none() && full.is_none(), || format!("{name} embeds in the caterpillar window"))?;
    }
    Ok("no K3,3 -> Petersen, no Petersen -> K3,3, neither into the m = 10 window (shortcut = exhaustive)".into())
}

fn pants_and_flips() -> Outcome {
    let mut counts = Vec::new();
    for s in 4..=6 {
        let gz = build_genus_zero_complex(s).map_err(err)?;
        let pants = enumerate_pants(&gz).map_err(err)?;
        counts.push(pants.len());
        let g = pants_flip_graph(&gz).map_err(err)?;
        ensure(g.connected, || format!("flip graph for s = {s} is disconnected"))?;
        for p in &pants {
            for &a in p.members() {
                let n = flip_partners(&gz, p, a).map_err(err)?.len();
                ensure(n == 2, || format!("s = {s}: {} has {n} flip partners", gz.complex().id(a)))?;
            }
        }
    }
    ensure(counts == [3, 15, 105], || format!("pants counts {counts:?}"))?;
    Ok("3 / 15 / 105 pants decompositions, flip graphs connected, 2 partners each".into())
}

fn link_table() -> Outcome {
    let sig = |n, s| ManifoldSignature::new(n, s);
    let legs = |v: &[usize]| -> Vec<(usize, &'static str)> { v.iter().map(|&p| (p, "x")).collect() };
    // pants graphs with every non-chosen slot filled by a leg or a cut bond
    let rows: Vec<(&str, DualMultigraph, Vec<usize>, Vec<ManifoldSignature>)> = vec![
        ("loop", DualMultigraph::from_edges(1, &[(0, 0)], &legs(&[0])).map_err(err)?, vec![0], vec![sig(1, 1)]),
        (
            "single non-loop",
            DualMultigraph::from_edges(2, &[(0, 1)], &legs(&[0, 0, 1, 1])).map_err(err)?,
            vec![0],
            vec![sig(0, 4)],
        ),
        (
            "disjoint pair",
            DualMultigraph::from_edges(4, &[(0, 1), (2, 3)], &legs(&[0, 0, 1, 1, 2, 2, 3, 3])).map_err(err)?,
            vec![0, 1],
            vec![sig(0, 4), sig(0, 4)],
        ),
        (
            "shared-vertex pair",
            DualMultigraph::from_edges(3, &[(0, 1), (1, 2)], &legs(&[0, 0, 1, 2, 2])).map_err(err)?,
            vec![0, 1],
            vec![sig(0, 5)],
        ),
        (
            "bigon",
            DualMultigraph::from_edges(2, &[(0, 1), (0, 1)], &legs(&[0, 1])).map_err(err)?,
            vec![0, 1],
            vec![sig(1, 2)],
        ),
        (
            "loop + adjacent edge",
            DualMultigraph::from_edges(2, &[(0, 0), (0, 1)], &legs(&[1, 1])).map_err(err)?,
            vec![0, 1],
            vec![sig(1, 2)],
        ),
        (
            "loop + disjoint edge",
            DualMultigraph::from_edges(3, &[(0, 0), (1, 2)], &legs(&[0, 1, 1, 2, 2])).map_err(err)?,
            vec![0, 1],
            vec![sig(1, 1), sig(0, 4)],
        ),
        (
            "K1,3",
            DualMultigraph::from_edges(4, &[(0, 1), (0, 2), (0, 3)], &legs(&[1, 1, 2, 2, 3, 3])).map_err(err)?,
            vec![0, 1, 2],
            vec![sig(0, 6)],
        ),
        (
            "K3",
            DualMultigraph::from_edges(3, &[(0, 1), (1, 2), (0, 2)], &legs(&[0, 1, 2])).map_err(err)?,
            vec![0, 1, 2],
            vec![sig(1, 3)],
        ),
    ];
    for (name, d, eta, want) in &rows {
        let got = classify_link(d, eta).map_err(err)?;
        let want = JoinDecomposition::new(want.clone());
        ensure(got == want, || format!("{name}: got {got}, expected {want}"))?;
    }
    Ok(format!("all {} rows reproduced", rows.len()))
}

fn whitney() -> Outcome {
    let mut r = rng(WHITNEY_SEED);
    for i in 0..WHITNEY_GRAPHS {
        let g = random_connected_multigraph(&mut r, 3..=12);
        let (psi, perm) = scramble(&g, &mut r);
        ensure(is_edge_isomorphism(&psi), || format!("graph {i}: scramble is not an edge isomorphism"))?;
        let lift = lift_edge_isomorphism(&psi).map_err(err)?;
        ensure(lift.vertex_map() == Some(perm.as_slice()), || {
            format!("graph {i}: lifted {lift:?}, expected {perm:?}")
        })?;
    }
    let k3 = Multigraph::from_pairs(3, &[(0, 1), (1, 2), (0, 2)]).map_err(err)?;
    let k13 = Multigraph::from_pairs(4, &[(0, 1), (0, 2), (0, 3)]).map_err(err)?;
    let psi = EdgeBijection::new(k3, k13, vec![0, 1, 2]).map_err(err)?;
    ensure(is_edge_isomorphism(&psi), || "K3 -> K1,3 rejected as edge isomorphism".into())?;
    ensure(find_k3_k13_pair(&psi).map_err(err)? == Some([0, 1, 2]), || "K3/K1,3 pair not found".into())?;
    ensure(matches!(lift_edge_isomorphism(&psi).map_err(err)?, LiftResult::Obstructed { .. }), || {
        "K3 -> K1,3 was lifted".into()
    })?;
    let theta = Multigraph::from_pairs(2, &[(0, 1), (0, 1), (0, 1)]).map_err(err)?;
    let psi = EdgeBijection::new(theta.clone(), theta, vec![1, 2, 0]).map_err(err)?;
    ensure(lift_edge_isomorphism(&psi).map_err(err)? == LiftResult::AmbiguousOrder2, || {
        "order-2 case not flagged".into()
    })?;
    Ok(format!("{WHITNEY_GRAPHS} scramble roundtrips exact, K3/K1,3 obstruction found, order-2 ambiguity flagged"))
}

fn rigidity_enumeration() -> Outcome {
    let mut found = Vec::new();
    for (s, want) in [(5, 120), (6, 720)] {
        let c = build_genus_zero_complex(s).map_err(err)?.into_complex();
        let name = format!("m0{s}");
        let cert = verify_rigidity(&c, &name, &c, &name, RigidityMode::Plain).map_err(err)?;
        ensure(cert.total_maps == want, || format!("s = {s}: {} maps", cert.total_maps))?;
        ensure(cert.all_extend, || format!("s = {s}: {:?} does not extend uniquely", cert.counterexample))?;
        ensure(cert.maps.iter().all(|m| m.extensions == 1), || format!("s = {s}: non-unique extension"))?;
        found.push(cert.total_maps);
    }
    Ok(format!("{} and {} self-maps, each extending to exactly one automorphism", found[0], found[1]))
}

/// Connected vertex subsets of size `lo..=hi`, grown from their smallest vertex.
fn connected_subsets(c: &FlagComplex, allowed: &[usize], lo: usize, hi: usize) -> Vec<Vec<usize>> {
    fn grow(
        c: &FlagComplex,
        allowed: &BTreeSet<usize>,
        root: usize,
        set: &mut Vec<usize>,
        hi: usize,
        out: &mut BTreeSet<Vec<usize>>,
    ) {
        let mut sorted = set.clone();
        sorted.sort_unstable();
        if !out.insert(sorted) || set.len() == hi {
            return;
        }
        let frontier: BTreeSet<usize> = set
            .iter()
            .flat_map(|&v| c.neighbors(v).iter().copied())
            .filter(|&w| w > root && allowed.contains(&w) && !set.contains(&w))
            .collect();
        for w in frontier {
            set.push(w);
            grow(c, allowed, root, set, hi, out);
            set.pop();
        }
    }
    let allowed_set: BTreeSet<usize> = allowed.iter().copied().collect();
    let mut out = BTreeSet::new();
    for &root in allowed {
        grow(c, &allowed_set, root, &mut vec![root], hi, &mut out);
    }
    out.into_iter().filter(|s| s.len() >= lo).collect()
}

fn caterpillar() -> Outcome {
    let window = build_caterpillar_window(6);
    let interior: Vec<usize> = (0..window.len()).filter(|&v| !window.has_tag(v, BOUNDARY_EFFECT)).collect();
    let subsets = connected_subsets(&window, &interior, 2, 8);
    for set in &subsets {
        let x = window.induced(set);
        let w = caterpillar_witness(&x, &window).map_err(|e| format!("{:?}: {e}", x.ids()))?;
        ensure(check_caterpillar_witness(&x, &window, &w), || format!("{:?}: witness fails its check", x.ids()))?;
    }
    Ok(format!("{} connected interior subcomplexes, every witness verified", subsets.len()))
}

fn census() -> Outcome {
    for n in 1..=3 {
        for s in 0..=8 {
            let cut = CutLabeling::new(n, s).map_err(err)?;
            for a in 1..=n {
                let c = good_pair_census(&cut, a).map_err(err)?;
                let expect = 2 * n + s >= 6;
                ensure((c.count > 0) == expect, || format!("(n, s) = ({n}, {s}), A{a}: {} good pairs", c.count))?;
            }
        }
    }
    Ok("census nonempty exactly when 2n + s >= 6 for n in 1..=3, s in 0..=8".into())
}

fn equivalence_classes() -> Outcome {
    let gz = build_genus_zero_complex(7).map_err(err)?;
    let mut r = rng(SYSTEM_SEED);
    let mut class_total = 0;
    for i in 0..SYSTEM_COUNT {
        let sigma = random_sphere_system(&gz, &mut r);
        let classes = link_equivalence_classes(&gz, &sigma).map_err(|e| format!("system {i}: {e}"))?;
        ensure(classes.bijective, || format!("system {i}: classes do not match regions: {classes:?}"))?;
        class_total += classes.classes.len();
    }
    Ok(format!("{SYSTEM_COUNT} systems, relation transitive, {class_total} classes matched to non-pants regions"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("S(M0,4) has 3 isolated, pairwise flip-related vertices", four_holed),
        ("S(M0,5) is the Petersen graph with 120 automorphisms", five_holed),
        ("S(M0,6) f-vector, Euler characteristic and homology", six_holed),
        ("non-embedding of K3,3 and Petersen", non_embedding),
        ("pants counts and flip graph connectivity", pants_and_flips),
        ("link classification table", link_table),
        ("Whitney lifting", whitney),
        ("rigidity of S(M0,5) and S(M0,6) by enumeration", rigidity_enumeration),
        ("caterpillar non-rigidity witnesses", caterpillar),
        ("good-pair census threshold", census),
        ("link equivalence classes on random systems in S(M0,7)", equivalence_classes),
    ];
    let slowdown = if cfg!(debug_assertions) { DEBUG_SLOWDOWN } else { 1.0 };
    let mut failures = 0;
    for (i, ((name, run), budget)) in criteria.iter().zip(BUDGETS).enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let elapsed = start.elapsed();
        let limit = Duration::from_secs_f64(budget * slowdown);
        let outcome = outcome.and_then(|detail| {
            if elapsed <= limit {
                Ok(detail)
            } else {
                Err(format!("{detail}; took {elapsed:.2?}, budget {limit:.2?}"))
            }
        });
        match outcome {
            Ok(detail) => println!("PASS criterion {:>2}: {name} ({elapsed:.2?}): {detail}", i + 1),
            Err(detail) => {
                failures += 1;
                println!("FAIL criterion {:>2}: {name} ({elapsed:.2?}): {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
