use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{anyhow, bail, Context as _, Result};
use serde_json::{json, Value};

use sphere_rigidity::complex::search::{search_embedding, search_embedding_exhaustive};
use sphere_rigidity::complex::ComplexDocument;
use sphere_rigidity::genus_zero::{
    build_caterpillar_window, build_genus_zero_complex, catalog, GenusZeroComplex, CATALOG_NAMES,
};
use sphere_rigidity::homology::betti_numbers;
use sphere_rigidity::pants::{
    classify_link, dual_of_pants, enumerate_pants, pants_flip_graph, signature_of_dual, DualDocument,
    PantsDecomposition, SphereSystem,
};
use sphere_rigidity::rigidity::{
    automorphism_group, build_x_sigma, caterpillar_witness, check_caterpillar_witness, detect_x_detectable,
    find_split_pairs, find_split_spheres, good_pair_census, label_action, link_equivalence_classes, verify_rigidity,
    CutLabeling, RigidityMode,
};
use sphere_rigidity::sampling::{random_connected_multigraph, rng, scramble};
use sphere_rigidity::whitney::{
    find_k3_k13_pair, is_edge_isomorphism, lift_edge_isomorphism, EdgeMapDocument, LiftResult,
};
use sphere_rigidity::{FlagComplex, VertexMap};

use crate::args::{
    CatalogArgs, CensusCmd, Cli, Command, ComplexCmd, DualCmd, Mode, NonembedArgs, PantsCmd, RigidityCmd, Source,
    WhitneyCmd,
};
use crate::report::{write_file, Context};

struct Loaded {
    name: String,
    complex: FlagComplex,
    genus_zero: Option<GenusZeroComplex>,
}

fn load(ctx: &mut Context, source: &Source) -> Result<Loaded> {
    if let Some(s) = source.genus_zero {
        let gz = build_genus_zero_complex(s)?;
        return Ok(Loaded { name: format!("genus-zero:{s}"), complex: gz.complex().clone(), genus_zero: Some(gz) });
    }
    if let Some(m) = source.caterpillar {
        return Ok(Loaded { name: format!("caterpillar:{m}"), complex: build_caterpillar_window(m), genus_zero: None });
    }
    if let Some(name) = &source.catalog {
        return Ok(Loaded { name: name.clone(), complex: catalog(name)?, genus_zero: None });
    }
    let path = source.input.as_ref().expect("clap requires one source");
    Ok(Loaded { name: path.display().to_string(), complex: read_complex(ctx, path)?, genus_zero: None })
}

fn read_complex(ctx: &mut Context, path: &Path) -> Result<FlagComplex> {
    let text = ctx.read(path)?;
    let doc = ComplexDocument::from_json(&text).with_context(|| format!("parsing {}", path.display()))?;
    Ok(doc.into_complex()?)
}

/// `petersen`, `genus-zero:6`, `caterpillar:10`, or a file path.
fn load_named(ctx: &mut Context, name: &str) -> Result<FlagComplex> {
    if let Some(s) = name.strip_prefix("genus-zero:") {
        return Ok(build_genus_zero_complex(s.parse().context("genus-zero:S expects a number")?)?.into_complex());
    }
    if let Some(m) = name.strip_prefix("caterpillar:") {
        return Ok(build_caterpillar_window(m.parse().context("caterpillar:M expects a number")?));
    }
    if CATALOG_NAMES.contains(&name) {
        return Ok(catalog(name)?);
    }
    read_complex(ctx, Path::new(name))
}

fn parse_sides(text: &str) -> Result<Vec<Vec<usize>>> {
    text.split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|side| {
            side.split(',')
                .map(|l| l.trim().parse::<usize>().map_err(|_| anyhow!("bad label `{l}` in `{side}`")))
                .collect()
        })
        .collect()
}

fn sphere_indices(gz: &GenusZeroComplex, text: &str) -> Result<Vec<usize>> {
    parse_sides(text)?.iter().map(|side| Ok(gz.vertex(side)?)).collect()
}

fn one_sphere(gz: &GenusZeroComplex, text: &str) -> Result<usize> {
    match sphere_indices(gz, text)?.as_slice() {
        [v] => Ok(*v),
        _ => bail!("expected exactly one sphere in `{text}`"),
    }
}

fn ids(c: &FlagComplex, vs: &[usize]) -> Vec<String> {
    vs.iter().map(|&v| c.id(v).to_string()).collect()
}

fn order_value(order: u128) -> Value {
    u64::try_from(order).map_or_else(|_| json!(order.to_string()), |o| json!(o))
}

pub fn run(cli: &Cli, ctx: &mut Context) -> Result<()> {
    match &cli.command {
        Command::Complex { cmd } => complex(cli, ctx, cmd),
        Command::Pants { cmd } => pants(cli, ctx, cmd),
        Command::Dual { cmd } => dual(ctx, cmd),
        Command::Whitney { cmd } => whitney(cli, ctx, cmd),
        Command::Rigidity { cmd } => rigidity(ctx, cmd),
        Command::Nonembed(args) => nonembed(ctx, args),
        Command::Census { cmd } => census(ctx, cmd),
        Command::Catalog(args) => catalog_cmd(cli, ctx, args),
    }
}

fn complex(cli: &Cli, ctx: &mut Context, cmd: &ComplexCmd) -> Result<()> {
    match cmd {
        ComplexCmd::Build { source, save } => {
            let l = load(ctx, source)?;
            let c = &l.complex;
            ctx.set("name", &l.name);
            ctx.set("vertices", c.len());
            ctx.set("edges", c.edge_count());
            ctx.set("dimension", c.dimension());
            ctx.set("f_vector", c.f_vector(c.dimension().max(0) as usize));
            if let Some(path) = save {
                write_file(path, &ComplexDocument::from(c).to_json())?;
            }
            if cli.dot.is_some() {
                ctx.dot = Some(c.to_dot(&l.name));
            }
        }
        ComplexCmd::Stats { source } => {
            let l = load(ctx, source)?;
            let c = &l.complex;
            let mut degrees: BTreeMap<usize, usize> = BTreeMap::new();
            for v in 0..c.len() {
                *degrees.entry(c.degree(v)).or_default() += 1;
            }
            ctx.set("name", &l.name);
            ctx.set("vertices", c.len());
            ctx.set("edges", c.edge_count());
            ctx.set("dimension", c.dimension());
            ctx.set("f_vector", c.f_vector(c.dimension().max(0) as usize));
            ctx.set("components", c.component_count());
            ctx.set("maximal_simplices", c.maximal_cliques().len());
            ctx.set("degree_histogram", degrees);
            if cli.dot.is_some() {
                ctx.dot = Some(c.to_dot(&l.name));
            }
        }
        ComplexCmd::Homology { source, max_dim } => {
            let l = load(ctx, source)?;
            let top = max_dim.unwrap_or(l.complex.dimension().max(0) as usize);
            let h = betti_numbers(&l.complex, top);
            ctx.check("euler_from_betti", h.euler_characteristic == h.euler_from_betti, h.euler_from_betti);
            ctx.set("name", &l.name);
            ctx.set("homology", h);
        }
    }
    Ok(())
}

fn flip_graph_dot(nodes: usize, edges: &[(usize, usize)]) -> String {
    let mut out = String::from("graph flips {\n");
    for v in 0..nodes {
        out.push_str(&format!("  {v};\n"));
    }
    for (a, b) in edges {
        out.push_str(&format!("  {a} -- {b};\n"));
    }
    out.push_str("}\n");
    out
}

fn pants(cli: &Cli, ctx: &mut Context, cmd: &PantsCmd) -> Result<()> {
    match cmd {
        PantsCmd::Enumerate { s } => {
            let gz = build_genus_zero_complex(*s)?;
            let all = enumerate_pants(&gz)?;
            let lists: Vec<Vec<String>> = all.iter().map(|p| p.ids(gz.complex())).collect();
            ctx.set("s", s);
            ctx.set("count", all.len());
            ctx.set("decompositions", lists);
        }
        PantsCmd::FlipGraph { s, check_connected } => {
            let gz = build_genus_zero_complex(*s)?;
            let g = pants_flip_graph(&gz)?;
            if *check_connected {
                ctx.check("connected", g.connected, g.connected);
            }
            let degrees: Vec<usize> = (0..g.node_count()).map(|v| g.degree(v)).collect();
            ctx.set("s", s);
            ctx.set("nodes", g.node_count());
            ctx.set("edges", g.edges.len());
            ctx.set("connected", g.connected);
            ctx.set("diameter", g.diameter);
            ctx.set("min_degree", degrees.iter().min());
            ctx.set("max_degree", degrees.iter().max());
            if cli.dot.is_some() {
                ctx.dot = Some(flip_graph_dot(g.node_count(), &g.edges));
            }
        }
        PantsCmd::Dual { s, spheres, save } => {
            let gz = build_genus_zero_complex(*s)?;
            let p = PantsDecomposition::new(gz.complex(), sphere_indices(&gz, spheres)?)?;
            let d = dual_of_pants(&gz, &p);
            ctx.set("signature", signature_of_dual(&d)?);
            ctx.set("dual", DualDocument::from(&d));
            if let Some(path) = save {
                write_file(path, &DualDocument::from(&d).to_json())?;
            }
            if cli.dot.is_some() {
                ctx.dot = Some(d.to_dot("dual"));
            }
        }
    }
    Ok(())
}

fn dual(ctx: &mut Context, cmd: &DualCmd) -> Result<()> {
    let DualCmd::Classify { input, edges } = cmd;
    let text = ctx.read(input)?;
    let d = DualDocument::from_json(&text).with_context(|| format!("parsing {}", input.display()))?.into_dual()?;
    let sep = if edges.contains(';') { ';' } else { ',' };
    let eta = edges
        .split(sep)
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<usize>()
                .ok()
                .or_else(|| d.bonds().iter().position(|b| b.label.as_deref() == Some(t)))
                .ok_or_else(|| anyhow!("no bond `{t}`"))
        })
        .collect::<Result<Vec<usize>>>()?;
    let join = classify_link(&d, &eta)?;
    ctx.set("edges", &eta);
    ctx.set("display", join.to_string());
    ctx.set("sphere_count", join.sphere_count());
    ctx.set("factors", &join.factors);
    Ok(())
}

fn whitney(cli: &Cli, ctx: &mut Context, cmd: &WhitneyCmd) -> Result<()> {
    match cmd {
        WhitneyCmd::Check { input: Some(path), .. } => {
            let text = ctx.read(path)?;
            let psi = EdgeMapDocument::from_json(&text)?.into_bijection()?;
            let ok = is_edge_isomorphism(&psi);
            ctx.check("edge_isomorphism", ok, ok);
            if ok {
                let pair = find_k3_k13_pair(&psi)?;
                let named = pair.map(|t| t.iter().map(|&e| psi.source().edge_ids()[e].clone()).collect::<Vec<_>>());
                ctx.set("k3_k13_pair", named);
            }
        }
        WhitneyCmd::Check { random: Some(count), .. } => {
            let mut r = rng(cli.seed);
            let mut recovered = 0;
            for _ in 0..*count {
                let g = random_connected_multigraph(&mut r, 3..=12);
                let (psi, perm) = scramble(&g, &mut r);
                if lift_edge_isomorphism(&psi)?.vertex_map() == Some(perm.as_slice()) {
                    recovered += 1;
                }
            }
            ctx.check("roundtrips_recovered", recovered == *count, json!({ "recovered": recovered, "total": count }));
            ctx.set("seed", cli.seed);
        }
        WhitneyCmd::Check { .. } => unreachable!("clap requires --input or --random"),
        WhitneyCmd::Lift { input } => {
            let text = ctx.read(input)?;
            let psi = EdgeMapDocument::from_json(&text)?.into_bijection()?;
            let lift = lift_edge_isomorphism(&psi)?;
            ctx.check("lifted", matches!(lift, LiftResult::Lifted { .. }), lift.verdict());
            ctx.set("verdict", lift.verdict());
            match &lift {
                LiftResult::Lifted { vertex_map } => {
                    let named: BTreeMap<&str, &str> = vertex_map
                        .iter()
                        .enumerate()
                        .map(|(v, &t)| (psi.source().vertices()[v].as_str(), psi.target().vertices()[t].as_str()))
                        .collect();
                    ctx.set("vertex_map", named);
                }
                LiftResult::Obstructed { obstruction } => {
                    let named: Vec<&str> = obstruction.iter().map(|&e| psi.source().edge_ids()[e].as_str()).collect();
                    ctx.set("obstruction", named);
                }
                LiftResult::AmbiguousOrder2 => {}
            }
        }
    }
    Ok(())
}

fn named_map(m: &VertexMap, c: &FlagComplex) -> BTreeMap<String, String> {
    m.to_named(c, c)
}

fn rigidity(ctx: &mut Context, cmd: &RigidityCmd) -> Result<()> {
    match cmd {
        RigidityCmd::Aut { source, label_action: with_labels } => {
            let l = load(ctx, source)?;
            let c = &l.complex;
            let g = automorphism_group(c);
            ctx.set("name", &l.name);
            ctx.set("order", order_value(g.order));
            ctx.set("base", ids(c, &g.base));
            ctx.set("orbit_sizes", &g.orbit_sizes);
            ctx.set("generators", g.generators.iter().map(|m| named_map(m, c)).collect::<Vec<_>>());
            if *with_labels {
                let gz = l.genus_zero.as_ref().ok_or_else(|| anyhow!("--label-action needs --genus-zero"))?;
                let action = label_action(gz)?;
                ctx.check("label_action_surjective", action.surjective, action.surjective);
                ctx.set("label_action", action);
            }
        }
        RigidityCmd::Verify { source, vertices, mode } => {
            let l = load(ctx, source)?;
            let x = match vertices {
                Some(list) => {
                    let wanted: Vec<&str> = list.split(';').map(str::trim).filter(|s| !s.is_empty()).collect();
                    l.complex.induced_by_ids(&wanted)?
                }
                None => l.complex.clone(),
            };
            let mode = match mode {
                Mode::Plain => RigidityMode::Plain,
                Mode::OverMaximalMaps => RigidityMode::OverMaximalMaps,
            };
            let name = if vertices.is_some() { "subcomplex" } else { l.name.as_str() };
            let cert = verify_rigidity(&x, name, &l.complex, &l.name, mode)?;
            ctx.check("all_extend", cert.all_extend, cert.total_maps);
            ctx.set("certificate", cert);
        }
        RigidityCmd::Split { s, pants, at, pairs } => {
            let gz = build_genus_zero_complex(*s)?;
            let c = gz.complex();
            let p = PantsDecomposition::new(c, sphere_indices(&gz, pants)?)?;
            let a = one_sphere(&gz, at)?;
            let splits = find_split_spheres(c, &p, a)?;
            let rest = p.system().without(a);
            let ok = splits.iter().all(|&b| !c.adjacent(a, b) && rest.iter().all(|&r| c.adjacent(r, b)));
            ctx.check("split_spheres_recheck", ok, splits.len());
            ctx.set("at", c.id(a));
            ctx.set("split_spheres", ids(c, &splits));
            if *pairs {
                let all: Vec<usize> = (0..c.len()).collect();
                let found = find_split_pairs(c, &all, a)?;
                let ok = found.iter().all(|&(x, y)| x != y && c.adjacent(x, y));
                ctx.check("split_pairs_disjoint", ok, found.len());
                let named: Vec<[&str; 2]> = found.iter().map(|&(x, y)| [c.id(x), c.id(y)]).collect();
                ctx.set("split_pairs", named);
            }
        }
        RigidityCmd::Xsigma { s, pants } => {
            let gz = build_genus_zero_complex(*s)?;
            let c = gz.complex();
            let sigma = sphere_indices(&gz, pants)?;
            let (vertices, sub) = build_x_sigma(c, &sigma)?;
            ctx.check("contains_sigma", sigma.iter().all(|v| vertices.contains(v)), vertices.len());
            ctx.set("vertices", ids(c, &vertices));
            ctx.set("edges", sub.edge_count());
            ctx.dot = Some(sub.to_dot("x_sigma"));
        }
        RigidityCmd::Witness { window, vertices } => {
            let w = build_caterpillar_window(*window);
            let wanted: Vec<&str> = vertices.split([';', ',']).map(str::trim).filter(|s| !s.is_empty()).collect();
            let x = w.induced_by_ids(&wanted)?;
            let witness = caterpillar_witness(&x, &w)?;
            ctx.check("witness_verified", check_caterpillar_witness(&x, &w, &witness), &witness.vertex);
            ctx.set("witness", &witness);
            ctx.dot = Some(x.to_dot("subcomplex"));
        }
        RigidityCmd::Classes { s, spheres } => {
            let gz = build_genus_zero_complex(*s)?;
            let c = gz.complex();
            let sigma = SphereSystem::new(c, sphere_indices(&gz, spheres)?)?;
            let classes = link_equivalence_classes(&gz, &sigma)?;
            ctx.check("classes_match_regions", classes.bijective, classes.classes.len());
            let named: Vec<Value> = classes
                .classes
                .iter()
                .map(|k| json!({ "members": ids(c, &k.members), "region": k.region, "signature": k.signature }))
                .collect();
            ctx.set("classes", named);
            ctx.set("non_pants_regions", &classes.non_pants_regions);
        }
        RigidityCmd::Detect { s, within, a, b } => {
            let gz = build_genus_zero_complex(*s)?;
            let c = gz.complex();
            let x = sphere_indices(&gz, within)?;
            let (a, b) = (one_sphere(&gz, a)?, one_sphere(&gz, b)?);
            let hit = detect_x_detectable(c, &x, a, b)?;
            ctx.set("detectable", hit.is_some());
            ctx.set("witness", hit.map(|(p, q)| [p.ids(c), q.ids(c)]));
        }
    }
    Ok(())
}

fn nonembed(ctx: &mut Context, args: &NonembedArgs) -> Result<()> {
    let src = load_named(ctx, &args.source)?;
    let dst = load_named(ctx, &args.target)?;
    let found = if args.exhaustive { search_embedding_exhaustive(&src, &dst) } else { search_embedding(&src, &dst) };
    let shortcut = if src.len() > dst.len() {
        Some("vertex count")
    } else if src.edge_count() > dst.edge_count() {
        Some("edge count")
    } else if src.has_cycle() && !dst.has_cycle() {
        Some("cycle into forest")
    } else {
        None
    };
    ctx.check("no_embedding", found.is_none(), if found.is_none() { "no embedding" } else { "embeds" });
    ctx.set("verdict", if found.is_none() { "no embedding" } else { "embeds" });
    ctx.set("shortcut", if args.exhaustive { None } else { shortcut });
    ctx.set("embedding", found.map(|m| m.to_named(&src, &dst)));
    Ok(())
}

fn census(ctx: &mut Context, cmd: &CensusCmd) -> Result<()> {
    let CensusCmd::GoodPairs { n, s, pair, list } = cmd;
    let cut = CutLabeling::new(*n, *s)?;
    let c = good_pair_census(&cut, *pair)?;
    let expected = 2 * n + s >= 6;
    ctx.check("threshold", (c.count > 0) == expected, json!({ "nonempty": c.count > 0, "two_n_plus_s": 2 * n + s }));
    ctx.set("labels", &cut.labels);
    ctx.set("delta", &cut.delta);
    ctx.set("spare", &c.spare);
    ctx.set("count", c.count);
    if *list {
        ctx.set("pairs", &c.pairs);
    }
    Ok(())
}

fn catalog_cmd(cli: &Cli, ctx: &mut Context, args: &CatalogArgs) -> Result<()> {
    match &args.name {
        None => {
            let entries: Vec<Value> = CATALOG_NAMES
                .iter()
                .map(|&name| {
                    let c = catalog(name).expect("catalog names resolve");
                    json!({ "name": name, "vertices": c.len(), "edges": c.edge_count() })
                })
                .collect();
            ctx.set("catalog", entries);
        }
        Some(name) => {
            let c = catalog(name)?;
            let doc = ComplexDocument::from(&c);
            if let Some(path) = &args.save {
                write_file(path, &doc.to_json())?;
            }
            ctx.set("complex", doc);
            if cli.dot.is_some() {
                ctx.dot = Some(c.to_dot(name));
            }
        }
    }
    Ok(())
}
