//! One function per subcommand. Each returns an [`Outcome`]; errors from
//! the library are mapped to exit statuses by the caller.

use std::fs;
use std::sync::Arc;

use serde_json::json;

use sarc::digraph::{self_paired_scan, swap_certificate, unswappable_pair, CosetDigraph, DEFAULT_ARC_CAP, SWAP_ORBIT_CAP};
use sarc::error::{Error, Result};
use sarc::factor::{audit_all, search_homogeneous, SearchOptions};
use sarc::groups::{construct_with, degree_of, BuildOptions, GroupSpec};
use sarc::linalg::{pair_profile, Field, FormedSpace, FqMatrix, Subspace};
use sarc::permgroup::{Perm, PermGroup, DEFAULT_SEED};
use sarc::subgroups::{subgroup_classes_capped, DEFAULT_ELEMENT_CAP};

use crate::expr::parse_group_expr;
use crate::outcome::{Outcome, Status};

/// Options shared by every subcommand.
#[derive(Clone, Debug)]
pub struct Options {
    pub seed: u64,
    /// None means the default for the command.
    pub threads: Option<usize>,
    pub cap_degree: usize,
    pub cap_order: u64,
    pub min_order: Option<u64>,
    pub require_conjugate: bool,
}

impl Default for Options {
    fn default() -> Options {
        Options {
            seed: DEFAULT_SEED,
            threads: None,
            cap_degree: 1_000_000,
            cap_order: DEFAULT_ELEMENT_CAP,
            min_order: None,
            require_conjugate: false,
        }
    }
}

impl Options {
    pub fn search_threads(&self) -> usize {
        self.threads.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
    }

    pub fn plain_threads(&self) -> usize {
        self.threads.unwrap_or(1)
    }

    pub fn build(&self, spec: &GroupSpec) -> Result<PermGroup> {
        construct_with(spec, &BuildOptions { degree_cap: self.cap_degree, seed: self.seed })
    }

    pub fn search_options(&self, order_divisor: Option<u64>) -> SearchOptions {
        SearchOptions {
            require_conjugate: self.require_conjugate,
            order_divisor,
            cap: self.cap_order,
            threads: self.search_threads(),
        }
    }
}

fn group_of(text: &str, opts: &Options) -> Result<(GroupSpec, PermGroup)> {
    let spec = parse_group_expr(text)?;
    let g = opts.build(&spec)?;
    Ok((spec, g))
}

pub fn order(text: &str, opts: &Options) -> Result<Outcome> {
    let (spec, g) = group_of(text, opts)?;
    let order = g.order();
    let base = g.chain().base().iter().map(|b| b + 1).collect::<Vec<_>>();
    let report = json!({
        "group": spec.to_string(),
        "degree": degree_of(&spec)?,
        "order": order.to_string(),
        "base": base,
        "transitive": g.is_transitive(),
        "seed": opts.seed,
    });
    Ok(Outcome::new(Status::Match, report, format!("|{spec}| = {order} on {} points", g.degree())))
}

pub fn subgroups(text: &str, opts: &Options) -> Result<Outcome> {
    let (spec, g) = group_of(text, opts)?;
    let min = opts.min_order.unwrap_or(1);
    let classes = subgroup_classes_capped(&g, min, opts.cap_order)?;
    let report = json!({
        "group": spec.to_string(),
        "order": g.order().to_string(),
        "min_order": min,
        "class_count": classes.len(),
        "classes": classes,
    });
    Ok(Outcome::new(Status::Match, report, format!("{spec}: {} classes of order ≥ {min}", classes.len())))
}

pub fn homfac(text: &str, order_divisor: Option<u64>, opts: &Options) -> Result<Outcome> {
    let (spec, g) = group_of(text, opts)?;
    let mut rep = search_homogeneous(&g, &spec.to_string(), &opts.search_options(order_divisor));
    if let Some(m) = opts.min_order {
        rep.witnesses.retain(|w| w.order >= m);
    }
    let summary = format!(
        "{spec}: {} witness(es), {}",
        rep.witnesses.len(),
        if rep.certified { "certified" } else { "NON-CERTIFIED" }
    );
    let status = if rep.certified { Status::Match } else { Status::NonCertified };
    Ok(Outcome::new(status, serde_json::to_value(&rep).expect("serialisable"), summary))
}

/// Generators separated by ';', each in 1-based cycle notation.
pub fn parse_generators(text: &str, degree: usize) -> Result<Vec<Perm>> {
    text.split(';')
        .filter(|s| !s.trim().is_empty())
        .map(|s| Perm::parse(s.trim(), degree).map_err(Error::from))
        .collect()
}

pub struct DigraphArgs<'a> {
    pub stabiliser: &'a str,
    pub connector: &'a str,
    /// Largest s tried by both methods.
    pub max_s: usize,
    /// Exponent used by the p-part test.
    pub p_part_s: u32,
}

pub fn digraph_analyze(text: &str, args: &DigraphArgs, opts: &Options) -> Result<Outcome> {
    let (spec, g) = group_of(text, opts)?;
    let n = g.degree();
    let h = g.subgroup(parse_generators(args.stabiliser, n)?);
    if !h.is_subgroup_of(&g) {
        return Err(Error::InvalidArgument("stabiliser generators are not in the group".into()));
    }
    let conn = Perm::parse(args.connector.trim(), n)?;
    if !g.contains(&conn) {
        return Err(Error::InvalidArgument("connector is not in the group".into()));
    }
    let d = CosetDigraph::new(&g, &h, &conn, opts.cap_degree)?;
    let by_criterion = d.max_s_by_criterion(args.max_s);
    let by_orbits = d.max_s_by_orbits(args.max_s, DEFAULT_ARC_CAP)?;
    let orbitals = d.orbitals(opts.plain_threads())?;
    let self_paired = orbitals.iter().filter(|o| o.self_paired).count();
    let report = json!({
        "group": spec.to_string(),
        "vertices": d.vertex_count(),
        "valency": d.valency(),
        "connected": d.is_connected(),
        "max_s_criterion": by_criterion,
        "max_s_orbits": by_orbits,
        "max_s_cap": args.max_s,
        "self_paired_orbitals": self_paired,
        "orbitals": orbitals,
        "base_orbital": d.base_orbital(&orbitals),
        "p_part_s": args.p_part_s,
        "p_part_verdicts": d.valency_p_part_check(args.p_part_s),
        "arc_chain": d.arc_chain(args.max_s),
    });
    let summary = format!(
        "{} vertices, valency {}, max s {} (criterion) / {} (orbits), cap {}",
        d.vertex_count(),
        d.valency(),
        by_criterion,
        by_orbits,
        args.max_s
    );
    let status = if by_criterion == by_orbits { Status::Match } else { Status::Mismatch };
    Ok(Outcome::new(status, report, summary))
}

pub fn selfpaired_scan(text: &str, opts: &Options) -> Result<Outcome> {
    let (spec, g) = group_of(text, opts)?;
    let orbitals = self_paired_scan(&g, opts.cap_degree, opts.plain_threads())?;
    let all = orbitals.iter().all(|o| o.self_paired);
    let report = json!({
        "group": spec.to_string(),
        "degree": g.degree(),
        "all_self_paired": all,
        "orbitals": orbitals,
    });
    let summary = format!(
        "{spec}: {} orbitals, {} self-paired",
        orbitals.len(),
        orbitals.iter().filter(|o| o.self_paired).count()
    );
    Ok(Outcome::new(Status::Match, report, summary))
}

pub fn table_audit() -> Result<Outcome> {
    let verdicts = audit_all()?;
    let bad: Vec<String> = verdicts.iter().filter(|v| !v.as_expected()).map(|v| v.id.clone()).collect();
    let report = json!({ "rows": verdicts.len(), "unexpected": bad, "verdicts": verdicts });
    let summary = format!("{} rows audited, {} unexpected", verdicts.len(), bad.len());
    Ok(Outcome::check(bad.is_empty(), report, summary))
}

pub struct GeometryArgs<'a> {
    pub n: usize,
    pub q: u32,
    pub w1: Option<&'a str>,
    pub w2: Option<&'a str>,
}

fn read_subspace(space: &Arc<FormedSpace>, path: &str) -> Result<Subspace> {
    let text = fs::read_to_string(path).map_err(|e| Error::InvalidArgument(format!("{path}: {e}")))?;
    let m = FqMatrix::parse_text(space.field(), &text)?;
    if m.cols() != space.dim() {
        return Err(Error::InvalidArgument(format!("{path}: expected {} columns, found {}", space.dim(), m.cols())));
    }
    Ok(Subspace::from_matrix(space, &m))
}

/// The swap certificate for a pair of subspaces of the standard symplectic
/// space of dimension 2n, read from files or the built-in example.
pub fn geometry(args: &GeometryArgs, opts: &Options) -> Result<Outcome> {
    let field = Field::of_order(args.q)?;
    let (w1, w2) = match (args.w1, args.w2) {
        (None, None) => {
            let (_, w1, w2) = unswappable_pair(args.n, &field)?;
            (w1, w2)
        }
        (Some(a), Some(b)) => {
            let space = FormedSpace::standard_symplectic(args.n, &field);
            (read_subspace(&space, a)?, read_subspace(&space, b)?)
        }
        _ => return Err(Error::InvalidArgument("--w1 and --w2 go together".into())),
    };
    let cert = swap_certificate(&w1, &w2, opts.cap_degree.min(SWAP_ORBIT_CAP))?;
    let report = json!({
        "dimension": 2 * args.n,
        "q": args.q,
        "w1": w1.basis().to_text(),
        "w2": w2.basis().to_text(),
        "profile": pair_profile(&w1, &w2)?,
        "certificate": cert,
        "self_paired": cert.self_paired(),
    });
    let summary = format!(
        "orbit of W1 has {} points under a group of order {}; pair {} be reversed",
        cert.orbit_size,
        cert.group_order,
        if cert.self_paired() { "can" } else { "cannot" }
    );
    Ok(Outcome::new(Status::Match, report, summary))
}
