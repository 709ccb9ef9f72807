//! One function per subcommand.

use std::fmt::Display;

use m0n_core::arrangements::{
    braid_arrangement, chi_at, deletion_restriction_check, fp_complement_count, grav_dims, grav_ny_dims,
    grav_ny_factor, m0n_arrangement, m0n_half_arrangement, ny_arrangement, residue_dims, SuspensionConvention,
};
use m0n_core::involution::{
    classify_ny_config, doubling_map, epsilon_stratify, flat_meets_fixed_locus, format_labels, label_involution,
    monad_law_check, ny_compose, rho_point, tree_orbits, FramePoint, NyStratumDescriptor, ProjectivePoint, NY_TABLE,
};
use m0n_core::keel::{is_crossing, KeelElement};
use m0n_core::rational::parse_rational;
use m0n_core::strata::{betti_numbers, maximal_degenerations, strata_poset};
use m0n_core::trees::{enumerate_stable_trees, Flag};
use m0n_core::{
    Arrangement, GradedDims, Hyperplane, IntPoly, KeelRing, LabelSet, PairedConfig, PairedLabel, PairedLabelSet,
    Rational, StableTree,
};
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::args::{Builder, Cli, Command, Convention, TreeOp};
use crate::formats::{
    element_text, forest_dot, hasse_dot, monomial_text, parse_element, parse_side, read_tree, tree_dot, tree_text,
    TreeJson,
};
use crate::report::{table, Report};

pub const MAX_N: u32 = 10;
pub const MAX_PAIRS: u32 = 4;

/// Every library operation and an invocation that reaches it.
pub const OPERATIONS: &[(&str, &[&str])] = &[
    ("canonical_form", &["tree", "canonical", TREE_EXAMPLE]),
    ("enumerate_stable_trees", &["trees", "--n", "5", "--grade", "1"]),
    (
        "split",
        &["tree", "split", TREE_EXAMPLE, "--vertex", "0", "--flags", "1,2"],
    ),
    ("contract", &["tree", "contract", TREE_EXAMPLE, "--edge", "0"]),
    (
        "graft",
        &[
            "tree",
            "graft",
            TREE_EXAMPLE,
            "--leaf",
            "5",
            "--guest",
            GUEST_EXAMPLE,
            "--root",
            "6",
        ],
    ),
    ("strata_poset", &["strata", "--n", "5"]),
    ("maximal_degenerations", &["maxdeg", "--n", "5"]),
    ("open_stratum_count_poly", &["grav", "--n", "5", "--residue"]),
    ("compactified_count_poly", &["strata", "--n", "6"]),
    ("betti_numbers", &["strata", "--n", "5"]),
    ("divisor_classes", &["keel", "--n", "5"]),
    ("four_point_relation", &["keel", "--n", "5", "--relations"]),
    ("is_crossing", &["keel", "--n", "5", "--crossing", "1,2", "1,3"]),
    ("graded_dimension", &["keel", "--n", "5", "--degree", "1"]),
    ("normal_form", &["keel", "--n", "5", "--reduce", "1:1,2|1,3"]),
    (
        "intersection_poset",
        &["arrangement", "--builder", "braid", "--param", "3"],
    ),
    (
        "characteristic_polynomial",
        &["arrangement", "--builder", "m0n", "--param", "5"],
    ),
    (
        "poincare_complement",
        &["arrangement", "--builder", "m0n-half", "--param", "5"],
    ),
    (
        "braid_arrangement",
        &["arrangement", "--builder", "braid", "--param", "4"],
    ),
    (
        "m0n_arrangement",
        &["arrangement", "--builder", "m0n", "--param", "6", "--verify-fp", "7"],
    ),
    ("ny_arrangement", &["arrangement", "--builder", "ny", "--param", "2"]),
    (
        "deletion_restriction_check",
        &[
            "arrangement",
            "--builder",
            "ny",
            "--param",
            "2",
            "--deletion-restriction",
        ],
    ),
    ("grav_dims", &["grav", "--n", "5"]),
    ("grav_ny_dims", &["grav", "--n", "5", "--ny"]),
    ("residue_dim_check", &["grav", "--n", "5", "--residue"]),
    ("rho_point", &["involution", "--pairs", "1", "--rho", "1/3,inf"]),
    ("doubling_map", &["classify", "--z", "1/3,1/2"]),
    ("label_involution", &["involution", "--pairs", "2"]),
    (
        "induced_tree_action",
        &["involution", "--pairs", "1", "--orbits", "--grade", "1"],
    ),
    ("classify_ny_config", &["classify", "--z", "1/5,1/5,1/2"]),
    (
        "epsilon_stratify",
        &["classify", "--z", "1/2,51/100,1/7", "--epsilon", "1/10"],
    ),
    (
        "flat_meets_fixed_locus",
        &["arrangement", "--builder", "ny", "--param", "2", "--fixed-locus"],
    ),
    ("ny_compose", &["compose", "--a", "1", "--b", "2"]),
    ("monad_law_check", &["involution", "--pairs", "1", "--monad"]),
    ("cross_check", &["cross-check", "--n", "5"]),
];

/// Two vertices: `{1, 2, 3}` and `{4, 5}` joined by edge 0.
pub const TREE_EXAMPLE: &str = r#"{"labels":["1","2","3","4","5"],"vertices":2,"edges":[[0,1]],"leaves":[0,0,0,1,1]}"#;
const GUEST_EXAMPLE: &str = r#"{"labels":["6","7","8"],"vertices":1,"edges":[],"leaves":[0,0,0]}"#;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Domain(String),
}

fn domain(e: impl Display) -> CliError {
    CliError::Domain(e.to_string())
}

fn guard_n(what: &str, n: usize, force: bool) -> Result<(), CliError> {
    if n > MAX_N as usize && !force {
        return Err(CliError::Domain(format!(
            "{what} = {n} exceeds the default bound {MAX_N}; pass --force to run anyway"
        )));
    }
    Ok(())
}

fn guard_pairs(p: u32, force: bool) -> Result<(), CliError> {
    if p > MAX_PAIRS && !force {
        return Err(CliError::Domain(format!(
            "{p} pairs exceeds the default bound {MAX_PAIRS}; pass --force to run anyway"
        )));
    }
    Ok(())
}

/// Whether the command has a Graphviz rendering.
pub fn has_dot(cmd: &Command) -> bool {
    match cmd {
        Command::Strata(_) | Command::Maxdeg(_) | Command::Trees { .. } | Command::Tree { .. } => true,
        Command::Arrangement { .. } | Command::Compose { .. } => true,
        Command::Involution { orbits, .. } => *orbits,
        _ => false,
    }
}

pub fn execute(cli: &Cli) -> Result<Report, CliError> {
    let force = cli.force;
    match &cli.command {
        Command::Strata(m) => strata(m.n, force),
        Command::Maxdeg(m) => maxdeg(m.n, force),
        Command::Trees { marked, grade } => trees(marked.n, *grade, force),
        Command::Tree { op } => tree(op),
        Command::Keel {
            n,
            degree,
            basis,
            relations,
            crossing,
            reduce,
        } => keel(
            *n,
            *degree,
            *basis,
            *relations,
            crossing.as_deref(),
            reduce.as_deref(),
            force,
        ),
        Command::Arrangement {
            builder,
            param,
            verify_fp,
            deletion_restriction,
            fixed_locus,
        } => arrangement(*builder, *param, *verify_fp, *deletion_restriction, *fixed_locus, force),
        Command::Grav {
            marked,
            ny,
            convention,
            residue,
        } => grav(marked.n, *ny, *convention, *residue, force),
        Command::Involution {
            pairs,
            grade,
            orbits,
            monad,
            rho,
        } => involution(*pairs, *grade, *orbits, *monad, rho, force),
        Command::Compose { a, b, slot } => compose(*a, *b, *slot, force),
        Command::Classify { z, epsilon, table } => {
            if *table {
                classify_table()
            } else {
                classify(z, epsilon.as_deref(), force)
            }
        }
        Command::CrossCheck { n } => cross_check(*n),
    }
}

fn labels(n: u32) -> Result<LabelSet<u32>, CliError> {
    LabelSet::range(n).map_err(domain)
}

fn strings<T: Display>(xs: impl IntoIterator<Item = T>) -> Vec<String> {
    xs.into_iter().map(|x| x.to_string()).collect()
}

fn joined<T: Display>(xs: impl IntoIterator<Item = T>) -> String {
    strings(xs).join(" ")
}

fn tree_value<L: Ord + Clone + Display>(t: &StableTree<L>) -> Value {
    serde_json::to_value(TreeJson::from_tree(t)).expect("tree JSON serializes")
}

fn splits_value<L: Ord + Clone + Display>(t: &StableTree<L>) -> Value {
    let s: Vec<Vec<String>> = t
        .splits()
        .iter()
        .map(|b| b.iter().map(|&i| t.labels()[i].to_string()).collect())
        .collect();
    json!(s)
}

fn dims_value(g: &GradedDims) -> Value {
    json!({
        "dims": g.dims(),
        "degree_shift": g.degree_shift,
        "weight_shift": g.weight_shift,
    })
}

pub fn strata(n: u32, force: bool) -> Result<Report, CliError> {
    guard_n("n", n as usize, force)?;
    let s = labels(n)?;
    let poset = strata_poset(&s);
    let counts = poset.counts_by_codim();
    let betti = betti_numbers(&s);
    let poly = poset.count_poly();
    let mut r = Report::new("strata").param("n", n);
    r.set("n", n);
    r.set("counts_by_codim", json!(counts));
    r.set("betti", json!(betti.even()));
    r.set("betti_all_degrees", json!(betti.all()));
    r.set("count_polynomial", json!(poly.coeffs()));
    r.set("euler_characteristic", betti.euler_characteristic());
    r.set("strata", poset.len());
    r.set("covers", poset.covers().len());
    r.set("covers_consistent", poset.covers_are_consistent());
    let rows: Vec<Vec<String>> = counts
        .iter()
        .enumerate()
        .map(|(k, c)| {
            vec![
                k.to_string(),
                c.to_string(),
                betti.even().get(k).map_or(String::new(), u64::to_string),
            ]
        })
        .collect();
    r.table = table(&["codim", "strata", "b_2k"], &rows);
    r.line(format!("points over F_q: {poly}"));
    r.line(format!("euler characteristic: {}", betti.euler_characteristic()));
    let nodes: Vec<(usize, String)> = poset
        .strata()
        .iter()
        .map(|st| (st.codim(), tree_text(st.tree())))
        .collect();
    r.dot = Some(hasse_dot("strata", &nodes, poset.covers()));
    Ok(r)
}

fn tree_list<L: Ord + Clone + Display>(r: &mut Report, trees: &[StableTree<L>]) {
    r.set("count", trees.len());
    r.set("trees", Value::Array(trees.iter().map(tree_value).collect()));
    for t in trees {
        r.line(tree_text(t));
    }
    r.dot = Some(forest_dot(trees));
}

pub fn maxdeg(n: u32, force: bool) -> Result<Report, CliError> {
    guard_n("n", n as usize, force)?;
    let trees: Vec<StableTree<u32>> = maximal_degenerations(&labels(n)?)
        .into_iter()
        .map(|s| s.tree().clone())
        .collect();
    let mut r = Report::new("strata").param("n", n);
    tree_list(&mut r, &trees);
    Ok(r)
}

pub fn trees(n: u32, grade: Option<usize>, force: bool) -> Result<Report, CliError> {
    guard_n("n", n as usize, force)?;
    let s = labels(n)?;
    if let Some(g) = grade.filter(|&g| g > s.max_grade()) {
        return Err(CliError::Domain(format!(
            "grade {g} exceeds the maximum {} for n = {n}",
            s.max_grade()
        )));
    }
    let mut r = Report::new("stable_trees").param("n", n);
    if let Some(g) = grade {
        r = r.param("grade", g);
    }
    tree_list(&mut r, &enumerate_stable_trees(&s, grade));
    Ok(r)
}

fn parse_flag(t: &StableTree<u32>, s: &str) -> Result<Flag, CliError> {
    if let Some(h) = s.strip_prefix('h') {
        return h
            .parse()
            .map(Flag::Half)
            .map_err(|_| CliError::Usage(format!("bad half-edge {s:?}")));
    }
    let l: u32 = s.parse().map_err(|_| CliError::Usage(format!("bad flag {s:?}")))?;
    t.labels()
        .index_of(&l)
        .map(Flag::Leaf)
        .ok_or_else(|| CliError::Domain(format!("label {l} is not on the tree")))
}

pub fn tree(op: &TreeOp) -> Result<Report, CliError> {
    let read = |s: &str| read_tree::<u32>(s).map_err(CliError::Usage);
    let (name, result) = match op {
        TreeOp::Canonical { tree } => ("canonical", read(tree)?.canonical_form()),
        TreeOp::Contract { tree, edge } => ("contract", read(tree)?.contract(*edge).map_err(domain)?),
        TreeOp::Split { tree, vertex, flags } => {
            let t = read(tree)?;
            let part: Vec<Flag> = flags.iter().map(|f| parse_flag(&t, f)).collect::<Result<_, _>>()?;
            ("split", t.split(*vertex, &part).map_err(domain)?)
        }
        TreeOp::Graft {
            tree,
            leaf,
            guest,
            root,
        } => ("graft", read(tree)?.graft(leaf, &read(guest)?, root).map_err(domain)?),
    };
    let mut r = Report::new("stable_trees").param("op", name);
    r.set("tree", tree_value(&result));
    r.set("codim", result.codim());
    r.set("splits", splits_value(&result));
    r.line(tree_text(&result));
    r.line(serde_json::to_string(&TreeJson::from_tree(&result)).expect("tree JSON serializes"));
    r.dot = Some(tree_dot(&result));
    Ok(r)
}

#[allow(clippy::too_many_arguments)]
pub fn keel(
    n: u32,
    degree: Option<usize>,
    basis: bool,
    relations: bool,
    crossing: Option<&[String]>,
    reduce: Option<&str>,
    force: bool,
) -> Result<Report, CliError> {
    guard_n("n", n as usize, force)?;
    let s = labels(n)?;
    let ring = KeelRing::new(&s).map_err(domain)?;
    let mut r = Report::new("keel_ring").param("n", n);
    r.set("classes", ring.classes().len());
    r.set("top_degree", ring.top_degree());
    match degree {
        Some(d) => {
            r = r.param("degree", d);
            let dim = ring.graded_dimension(d).map_err(domain)?;
            r.set("degree", d);
            r.set("dimension", dim);
            r.line(dim.to_string());
            if basis {
                let b = ring.basis(d).map_err(domain)?;
                let text: Vec<String> = b.iter().map(|m| monomial_text(&s, m)).collect();
                for t in &text {
                    r.line(t);
                }
                r.set("basis", json!(text));
            }
        }
        None => {
            let dims = ring.graded_dimensions();
            let rows: Vec<Vec<String>> = dims
                .iter()
                .enumerate()
                .map(|(k, d)| vec![k.to_string(), d.to_string()])
                .collect();
            r.table = table(&["degree", "dimension"], &rows);
            r.set("graded_dimensions", json!(dims));
        }
    }
    if relations {
        keel_relations(&ring, &s, &mut r)?;
    }
    if let Some([a, b]) = crossing {
        let (da, db) = (parse_side(&s, a).map_err(domain)?, parse_side(&s, b).map_err(domain)?);
        let crosses = is_crossing(&da, &db).map_err(domain)?;
        r = r.param("crossing", json!([a, b]));
        r.set("crossing", crosses);
        r.line(format!(
            "{} and {} cross: {crosses}",
            monomial_text(&s, &[da]),
            monomial_text(&s, &[db])
        ));
    }
    if let Some(text) = reduce {
        let x = parse_element(&s, text).map_err(domain)?;
        let nf = ring.normal_form(&x).map_err(domain)?;
        r = r.param("reduce", text);
        r.set("normal_form", element_text(&s, &nf));
        r.set("reduces_to_zero", nf.is_zero());
        r.line(format!("normal form: {}", element_text(&s, &nf)));
    }
    Ok(r)
}

fn keel_relations(ring: &KeelRing<u32>, s: &LabelSet<u32>, r: &mut Report) -> Result<(), CliError> {
    let labels: Vec<u32> = s.iter().copied().collect();
    let piece1 = ring.graded_piece(1).map_err(domain)?;
    let mut linear = Vec::new();
    let mut all_vanish = true;
    for (a, &i) in labels.iter().enumerate() {
        for (b, &j) in labels.iter().enumerate().skip(a + 1) {
            for (c, &k) in labels.iter().enumerate().skip(b + 1) {
                for &l in labels.iter().skip(c + 1) {
                    for (k, l) in [(k, l), (l, k)] {
                        let rel = ring.four_point_relation(&i, &j, &k, &l).map_err(domain)?;
                        let zero = ring.normal_form_in(&piece1, &rel).map_err(domain)?.is_zero();
                        all_vanish &= zero;
                        linear
                            .push(json!({"labels": [i, j, k, l], "relation": element_text(s, &rel), "vanishes": zero}));
                    }
                }
            }
        }
    }
    let pairs = ring.relation_set().vanishing_pairs;
    let piece2 = (ring.top_degree() >= 2)
        .then(|| ring.graded_piece(2))
        .transpose()
        .map_err(domain)?;
    let mut crossing = Vec::new();
    for (a, b) in &pairs {
        let prod = KeelElement::generator(*a).mul(&KeelElement::generator(*b));
        // Above the top degree the quotient is zero.
        let zero = match &piece2 {
            Some(p) => ring.normal_form_in(p, &prod).map_err(domain)?.is_zero(),
            None => true,
        };
        all_vanish &= zero;
        crossing.push(json!({"product": monomial_text(s, &[*a, *b]), "vanishes": zero}));
    }
    r.line(format!(
        "{} four-point relations, {} crossing products, all reduce to zero: {all_vanish}",
        linear.len(),
        crossing.len()
    ));
    r.set("four_point_relations", Value::Array(linear));
    r.set("crossing_products", Value::Array(crossing));
    r.set("relations_vanish", all_vanish);
    r.ok &= all_vanish;
    Ok(())
}

fn builder_name(b: Builder) -> &'static str {
    match b {
        Builder::Braid => "braid",
        Builder::M0n => "m0n",
        Builder::M0nHalf => "m0n-half",
        Builder::Ny => "ny",
    }
}

fn hyperplane_text(h: &Hyperplane) -> String {
    let mut out = String::new();
    for (i, c) in h.normal().iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        let sign = if c.is_negative() { "-" } else { "+" };
        let mag = c.abs();
        let coef = if mag.is_one() { String::new() } else { format!("{mag}*") };
        if out.is_empty() {
            out = format!("{}{coef}x{}", if c.is_negative() { "-" } else { "" }, i + 1);
        } else {
            out.push_str(&format!(" {sign} {coef}x{}", i + 1));
        }
    }
    format!("{out} = {}", h.offset())
}

fn build(builder: Builder, param: usize, force: bool) -> Result<Arrangement, CliError> {
    match builder {
        Builder::Ny => guard_pairs(param as u32, force)?,
        _ => guard_n("param", param, force)?,
    }
    match builder {
        Builder::Braid => braid_arrangement(param),
        Builder::M0n => m0n_arrangement(param),
        Builder::M0nHalf => m0n_half_arrangement(param),
        Builder::Ny => ny_arrangement(param),
    }
    .map_err(domain)
}

fn poly_value(p: &IntPoly) -> Value {
    json!({"coefficients": p.coeffs(), "text": p.to_string()})
}

pub fn arrangement(
    builder: Builder,
    param: usize,
    verify_fp: Option<u64>,
    deletion_restriction: bool,
    fixed_locus: bool,
    force: bool,
) -> Result<Report, CliError> {
    if fixed_locus && builder != Builder::Ny {
        return Err(CliError::Domain("--fixed-locus needs the ny builder".into()));
    }
    let a = build(builder, param, force)?;
    let poset = a.intersection_poset();
    let chi = poset.characteristic_polynomial();
    let poincare = poset.poincare();
    let mut r = Report::new("arrangements")
        .param("builder", builder_name(builder))
        .param("param", param);
    r.set("dim", a.dim());
    r.set(
        "hyperplanes",
        json!(a.hyperplanes().iter().map(hyperplane_text).collect::<Vec<_>>()),
    );
    r.set("flats", poset.len());
    r.set("flats_by_codim", json!(poset.counts_by_codim()));
    r.set("characteristic_polynomial", poly_value(&chi));
    r.set("poincare", dims_value(&poincare));
    r.line(format!(
        "{}({param}): {} hyperplanes in dimension {}",
        builder_name(builder),
        a.len(),
        a.dim()
    ));
    r.line(format!("flats by codimension: {}", joined(poset.counts_by_codim())));
    r.line(format!("characteristic polynomial: {chi}"));
    r.line(format!("betti numbers of the complement: {}", joined(poincare.dims())));
    if let Some(p) = verify_fp {
        let brute = fp_complement_count(&a, p).map_err(domain)?;
        let from_chi = chi_at(&a, p);
        let agree = from_chi == brute as i128;
        r = r.param("verify_fp", p);
        r.set(
            "fp_check",
            json!({"p": p, "chi_at_p": from_chi.to_string(), "count": brute, "agree": agree}),
        );
        r.line(format!(
            "chi({p}) = {from_chi}, complement over F_{p} has {brute} points, agree: {agree}"
        ));
        r.ok &= agree;
    }
    if deletion_restriction {
        let checks: Vec<bool> = a
            .hyperplanes()
            .iter()
            .map(|h| deletion_restriction_check(&a, h))
            .collect::<Result<_, _>>()
            .map_err(domain)?;
        let all = checks.iter().all(|&b| b);
        r = r.param("deletion_restriction", true);
        r.set("deletion_restriction", json!({"per_hyperplane": checks, "all": all}));
        r.line(format!(
            "deletion-restriction holds for all {} hyperplanes: {all}",
            checks.len()
        ));
        r.ok &= all;
    }
    if fixed_locus {
        let mut by_codim = vec![0usize; a.dim() + 1];
        for f in poset.flats().iter().filter(|f| flat_meets_fixed_locus(f)) {
            by_codim[f.codim()] += 1;
        }
        r = r.param("fixed_locus", true);
        r.set("fixed_locus_flats_by_codim", json!(by_codim));
        r.line(format!(
            "flats meeting the fixed locus, by codimension: {}",
            joined(&by_codim)
        ));
    }
    let flats = poset.flats();
    let nodes: Vec<(usize, String)> = flats
        .iter()
        .map(|f| {
            let hs = f.containing_indices();
            let label = if hs.is_empty() {
                "ambient".to_string()
            } else {
                hs.iter().map(|i| format!("H{}", i + 1)).collect::<Vec<_>>().join(",")
            };
            (f.codim(), label)
        })
        .collect();
    let mut covers = Vec::new();
    for (i, f) in flats.iter().enumerate() {
        for (j, g) in flats.iter().enumerate() {
            if g.codim() == f.codim() + 1 && g.containing() & f.containing() == f.containing() {
                covers.push((i, j));
            }
        }
    }
    r.dot = Some(hasse_dot("flats", &nodes, &covers));
    Ok(r)
}

pub fn grav(n: u32, ny: bool, convention: Convention, residue: bool, force: bool) -> Result<Report, CliError> {
    guard_n("n", n as usize, force)?;
    let n_us = n as usize;
    let mut r = Report::new("arrangements").param("n", n);
    if ny {
        let conv = match convention {
            Convention::Once => SuspensionConvention::Once,
            Convention::PerFactor => SuspensionConvention::PerFactor,
        };
        let factor = grav_ny_factor(n_us).map_err(domain)?;
        let dims = grav_ny_dims(n_us, conv).map_err(domain)?;
        let squared = dims.poly() == &factor.poly() * &factor.poly();
        r = r.param("ny", true).param(
            "convention",
            if conv == SuspensionConvention::Once {
                "once"
            } else {
                "per-factor"
            },
        );
        r.set("factor", dims_value(&factor));
        r.set("grav_ny", dims_value(&dims));
        r.set("square_of_factor", squared);
        r.line(format!("factor: {}", joined(factor.dims())));
        r.line(format!(
            "grav_ny: {} (degree shift {})",
            joined(dims.dims()),
            dims.degree_shift
        ));
        r.line(format!("square of the factor: {squared}"));
        r.ok &= squared;
    } else {
        let dims = grav_dims(n_us).map_err(domain)?;
        r.set("grav", dims_value(&dims));
        r.line(format!(
            "grav: {} (degree shift {})",
            joined(dims.dims()),
            dims.degree_shift
        ));
    }
    if residue {
        let s = labels(n)?;
        let mut rows = Vec::new();
        let mut table_rows = Vec::new();
        let mut all = true;
        for t in enumerate_stable_trees(&s, Some(1)) {
            let rep = residue_dims(&t).map_err(domain)?;
            all &= rep.passes();
            let split = splits_value(&t);
            table_rows.push(vec![
                split[0]
                    .as_array()
                    .map_or(String::new(), |b| joined(b.iter().map(|v| v.as_str().unwrap_or("")))),
                format!("{},{}", rep.valences.0, rep.valences.1),
                joined(rep.kunneth.dims()),
                rep.passes().to_string(),
            ]);
            rows.push(json!({
                "split": split[0],
                "valences": [rep.valences.0, rep.valences.1],
                "kunneth": dims_value(&rep.kunneth),
                "product_arrangement": dims_value(&rep.product_arrangement),
                "from_point_count": dims_value(&rep.from_point_count),
                "passes": rep.passes(),
            }));
        }
        r = r.param("residue", true);
        r.set("residue", Value::Array(rows));
        r.set("residue_all_pass", all);
        r.table
            .push_str(&table(&["block", "valences", "dims", "agree"], &table_rows));
        r.ok &= all;
    }
    Ok(r)
}

fn parse_point(s: &str) -> Result<ProjectivePoint, CliError> {
    match s.trim() {
        "inf" | "∞" => Ok(ProjectivePoint::Infinity),
        t => parse_rational(t)
            .map(ProjectivePoint::Finite)
            .map_err(|e| CliError::Usage(e.to_string())),
    }
}

pub fn involution(
    pairs: u32,
    grade: usize,
    orbits: bool,
    monad: bool,
    rho: &[String],
    force: bool,
) -> Result<Report, CliError> {
    guard_pairs(pairs, force)?;
    let set = PairedLabelSet::new(pairs);
    let inv = label_involution(&set);
    let mut r = Report::new("involution_ny").param("pairs", pairs);
    r.set("labels", json!(strings(set.labels().iter())));
    r.set(
        "transpositions",
        json!(inv
            .transpositions()
            .iter()
            .map(|(a, b)| [a.to_string(), b.to_string()])
            .collect::<Vec<_>>()),
    );
    r.set("fixed_points", json!(strings(inv.fixed_points())));
    r.set("order_two", inv.is_identity_squared());
    r.line(format!("labels: {}", format_labels(set.labels())));
    let swaps: Vec<String> = inv.transpositions().iter().map(|(a, b)| format!("{a}<->{b}")).collect();
    r.line(format!(
        "involution: {}; fixed: {}",
        swaps.join(" "),
        joined(inv.fixed_points())
    ));
    if orbits {
        if grade > set.labels().max_grade() {
            return Err(CliError::Domain(format!(
                "grade {grade} exceeds the maximum {}",
                set.labels().max_grade()
            )));
        }
        let orbs = tree_orbits(&set, grade);
        let fixed = orbs.iter().filter(|o| o.len() == 1).count();
        r = r.param("grade", grade).param("orbits", true);
        r.set("orbit_count", orbs.len());
        r.set("fixed_trees", fixed);
        r.set(
            "orbits",
            Value::Array(
                orbs.iter()
                    .map(|o| Value::Array(o.iter().map(tree_value).collect()))
                    .collect(),
            ),
        );
        r.line(format!("{} orbits at grade {grade}, {fixed} fixed trees", orbs.len()));
        for o in &orbs {
            r.line(o.iter().map(tree_text).collect::<Vec<_>>().join("  <->  "));
        }
        let all: Vec<StableTree<PairedLabel>> = orbs.into_iter().flatten().collect();
        r.dot = Some(forest_dot(&all));
    }
    if monad {
        let holds = monad_law_check();
        r = r.param("monad", true);
        r.set("involution_laws", holds);
        r.line(format!("involution laws hold: {holds}"));
        r.ok &= holds;
    }
    if !rho.is_empty() {
        let pts: Vec<ProjectivePoint> = rho.iter().map(|s| parse_point(s)).collect::<Result<_, _>>()?;
        let images: Vec<[String; 2]> = pts.iter().map(|x| [x.to_string(), rho_point(x).to_string()]).collect();
        r = r.param("rho", json!(rho));
        for [x, y] in &images {
            r.line(format!("rho({x}) = {y}"));
        }
        r.set("rho", json!(images));
    }
    Ok(r)
}

pub fn compose(a: u32, b: u32, slot: u32, force: bool) -> Result<Report, CliError> {
    guard_pairs(a, force)?;
    guard_pairs(b, force)?;
    let c = ny_compose(&PairedLabelSet::new(a), &PairedLabel::Z(slot), &PairedLabelSet::new(b)).map_err(domain)?;
    let mut r = Report::new("involution_ny")
        .param("a", a)
        .param("b", b)
        .param("slot", slot);
    r.set("pairs", c.labels.pairs());
    r.set("labels", json!(strings(c.labels.labels().iter())));
    r.set("marked_points", c.labels.len());
    r.set("alternative_marked_points", c.alternative_label_count);
    r.set("tree", tree_value(&c.tree));
    r.line(format!(
        "{} pairs, {} marked points: {}",
        c.labels.pairs(),
        c.labels.len(),
        format_labels(c.labels.labels())
    ));
    r.line(format!("boundary tree: {}", tree_text(&c.tree)));
    r.dot = Some(tree_dot(&c.tree));
    Ok(r)
}

fn frame_name(f: FramePoint) -> &'static str {
    match f {
        FramePoint::Zero => "0",
        FramePoint::One => "1",
        FramePoint::Infinity => "inf",
    }
}

fn descriptor_value(d: &NyStratumDescriptor) -> Value {
    let one_based = |v: &[usize]| v.iter().map(|i| i + 1).collect::<Vec<_>>();
    json!({
        "codim": d.codim,
        "collision_pattern": d.collision_pattern.iter().map(|b| one_based(b)).collect::<Vec<_>>(),
        "half_incidences": one_based(&d.half_incidences),
        "frame_incidences": d.frame_incidences.iter().map(|(i, f)| json!([i + 1, frame_name(*f)])).collect::<Vec<_>>(),
        "mirror_pairs": d.mirror_pairs.iter().map(|(i, j)| [i + 1, j + 1]).collect::<Vec<_>>(),
        "table_row": d.table_row,
    })
}

pub fn classify(z: &[String], epsilon: Option<&str>, force: bool) -> Result<Report, CliError> {
    let pts: Vec<ProjectivePoint> = z.iter().map(|s| parse_point(s)).collect::<Result<_, _>>()?;
    guard_pairs(pts.len() as u32, force)?;
    let c = PairedConfig::new(pts.clone());
    let d = classify_ny_config(&c);
    let mut r = Report::new("involution_ny").param("z", json!(strings(&pts)));
    r.set("stratum", descriptor_value(&d));
    r.set("generic", c.is_generic());
    r.line(format!("codim {} (table row {})", d.codim, d.table_row.unwrap_or("-")));
    let finite: Option<Vec<Rational>> = pts.iter().map(|p| p.finite().cloned()).collect();
    match finite {
        Some(xs) => {
            let dbl = doubling_map(&xs);
            r.set(
                "doubling",
                json!({"values": strings(&dbl.values), "degenerate": dbl.degenerate, "collision": dbl.collision}),
            );
            r.line(format!("doubled: {}", joined(&dbl.values)));
        }
        None => r.set("doubling", Value::Null),
    }
    if let Some(e) = epsilon {
        let eps = parse_rational(e).map_err(|e| CliError::Usage(e.to_string()))?;
        let j = epsilon_stratify(&c, &eps).map_err(domain)?;
        r = r.param("epsilon", eps.to_string());
        r.set("epsilon_depth", j);
        r.line(format!("depth at epsilon {eps}: {j}"));
    }
    Ok(r)
}

pub fn classify_table() -> Result<Report, CliError> {
    let mut r = Report::new("involution_ny").param("table", true);
    let mut rows = Vec::new();
    let mut values = Vec::new();
    for row in &NY_TABLE {
        let d = classify_ny_config(&row.witness());
        let conforms = d.codim == row.codim;
        r.ok &= conforms;
        rows.push(vec![
            row.name.to_string(),
            row.codim.to_string(),
            d.codim.to_string(),
            d.table_row.unwrap_or("-").to_string(),
            conforms.to_string(),
        ]);
        values.push(json!({
            "row": row.name,
            "expected_codim": row.codim,
            "witness_codim": d.codim,
            "witness_row": d.table_row,
            "conforms": conforms,
        }));
    }
    r.table = table(&["row", "codim", "witness", "matches", "conforms"], &rows);
    r.set("rows", Value::Array(values));
    r.set("all_conform", r.ok);
    Ok(r)
}

pub fn cross_check(n: u32) -> Result<Report, CliError> {
    if !(4..=7).contains(&n) {
        return Err(CliError::Domain(format!(
            "cross-check runs for 4 <= n <= 7, got n = {n}"
        )));
    }
    let s = labels(n)?;
    let counted = betti_numbers(&s).even().to_vec();
    let keel: Vec<u64> = KeelRing::new(&s)
        .map_err(domain)?
        .graded_dimensions()
        .into_iter()
        .map(|d| d as u64)
        .collect();
    let agree = counted == keel;
    let mut r = Report::new("cli").param("n", n);
    r.set("point_count_betti", json!(counted));
    r.set("keel_dimensions", json!(keel));
    r.set("agree", agree);
    r.line(format!("point count: {}", joined(&counted)));
    r.line(format!("keel ring:   {}", joined(&keel)));
    r.line(format!("agree: {agree}"));
    r.ok = agree;
    Ok(r)
}
