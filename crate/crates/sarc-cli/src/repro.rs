//! Named reproduction runs. Each one builds its groups, runs the relevant
//! computation and compares against a fixed expected outcome.

use num_bigint::BigUint;
use serde_json::{json, Value};

use sarc::digraph::{
    flag_group_order, orbital_digraphs, self_paired_scan, swap_certificate, symplectic_flags, unswappable_pair,
    CosetDigraph, DEFAULT_ARC_CAP, SWAP_ORBIT_CAP,
};
use sarc::error::{Error, Result};
use sarc::factor::{search_homogeneous, FactorisationReport, SearchOptions};
use sarc::groups::{c4_tensor_group, psl2_with_field_automorphism, GroupSpec, C4_GROUP_ORDER};
use sarc::linalg::Field;
use sarc::permgroup::PermGroup;
use sarc::subgroups::{are_isomorphic, subgroup_classes_capped, ElementGroup};

use crate::commands::{table_audit, Options};
use crate::expr::parse_group_expr;
use crate::outcome::{Outcome, Status};

pub struct Entry {
    pub name: &'static str,
    pub description: &'static str,
    /// Group expressions the run builds, if any.
    pub groups: &'static [&'static str],
    run: fn(&Options) -> Result<Outcome>,
}

pub const REGISTRY: &[Entry] = &[
    Entry {
        name: "a6-homfac",
        description: "A6 = A5 · PSL2(5), one class pair, certified",
        groups: &["A(6)"],
        run: a6_homfac,
    },
    Entry { name: "s5-homfac", description: "S5 has no homogeneous factorisation", groups: &["S(5)"], run: s5_homfac },
    Entry {
        name: "s6-homfac",
        description: "S6 = PGL2(5) · S5, one class pair, certified",
        groups: &["S(6)"],
        run: s6_homfac,
    },
    Entry {
        name: "sp23-s2-report",
        description: "Sp2(3) wr S2: two pairs of factors of order 48, none conjugate",
        groups: &["wr(Sp(2,3),2)"],
        run: sp23_s2,
    },
    Entry {
        name: "sp23-s4",
        description: "Sp2(3) wr S4 has no homogeneous factorisation (min order 6912, index 1152)",
        groups: &["wr(Sp(2,3),4)"],
        run: sp23_s4,
    },
    Entry {
        name: "sp23-s6-div",
        description: "Sp2(3) wr S6 has no isomorphic factors of order divisible by 2^14·3^6·5",
        groups: &["wr(Sp(2,3),6)"],
        run: sp23_s6_div,
    },
    Entry {
        name: "c4-psp2-pgo4",
        description: "(PSp2(3) × PGO4-(3)).2 of order 17280 has no factorisation into conjugate factors",
        groups: &[],
        run: c4_psp2_pgo4,
    },
    Entry {
        name: "c17-unique-sylow",
        description: "C17:4 has one subgroup of order 17, no homogeneous factorisation, and its digraphs have s ≤ 1",
        groups: &["MC(17,4,4)"],
        run: c17_unique_sylow,
    },
    Entry {
        name: "flags-sp42",
        description: "Every orbital of <Sp4(2), duality> on the 45 flags of W(3,2) is self-paired",
        groups: &[],
        run: flags_sp42,
    },
    Entry {
        name: "geometry-c1-example",
        description: "The dimension-12 pair over GF(2) cannot be reversed by an isometry",
        groups: &[],
        run: geometry_c1,
    },
    Entry { name: "table-audit-all", description: "All factorisation table rows pass the audit", groups: &[], run: table_audit_all },
    Entry {
        name: "frob21-tournament",
        description: "The Frobenius group of order 21 gives a 1-arc-transitive tournament on 7 vertices",
        groups: &["MC(7,2,3)"],
        run: frob21,
    },
];

pub fn find(name: &str) -> Option<&'static Entry> {
    REGISTRY.iter().find(|e| e.name == name)
}

pub fn run_repro(name: &str, opts: &Options) -> Result<Outcome> {
    let entry = find(name).ok_or_else(|| Error::InvalidArgument(format!("unknown repro name {name:?}")))?;
    let mut out = (entry.run)(opts)?;
    if let Value::Object(m) = &mut out.report {
        m.insert("repro".into(), json!(entry.name));
        m.insert("seed".into(), json!(opts.seed));
        m.insert("status".into(), json!(format!("{:?}", out.status)));
    }
    out.summary = format!("{}: {}", entry.name, out.summary);
    Ok(out)
}

fn build(text: &str, opts: &Options) -> Result<PermGroup> {
    opts.build(&parse_group_expr(text)?)
}

fn search(g: &PermGroup, label: &str, opts: &Options, require_conjugate: bool, div: Option<u64>) -> FactorisationReport {
    let so = SearchOptions { require_conjugate, ..opts.search_options(div) };
    search_homogeneous(g, label, &so)
}

fn to_value(r: &FactorisationReport) -> Value {
    serde_json::to_value(r).expect("serialisable")
}

/// Certified with no witnesses: Match; uncertified with none: NonCertified;
/// any witness: Mismatch.
fn expect_empty(r: &FactorisationReport, extra_ok: bool) -> Status {
    match (r.witnesses.is_empty() && extra_ok, r.certified) {
        (false, _) => Status::Mismatch,
        (true, true) => Status::Match,
        (true, false) => Status::NonCertified,
    }
}

/// One witness of the given order, with exactly one transitive factor.
fn one_natural_pair(g: &PermGroup, label: &str, order: u64, opts: &Options) -> Result<Outcome> {
    let r = search(g, label, opts, false, None);
    let ok = r.certified
        && r.witnesses.len() == 1
        && r.witnesses[0].order == order
        && r.witnesses[0].h.is_transitive() != r.witnesses[0].k.is_transitive();
    let summary = format!("{} witness(es), certified {}", r.witnesses.len(), r.certified);
    Ok(Outcome::check(ok, to_value(&r), summary))
}

fn a6_homfac(opts: &Options) -> Result<Outcome> {
    one_natural_pair(&build("A(6)", opts)?, "A(6)", 60, opts)
}

fn s6_homfac(opts: &Options) -> Result<Outcome> {
    one_natural_pair(&build("S(6)", opts)?, "S(6)", 120, opts)
}

fn s5_homfac(opts: &Options) -> Result<Outcome> {
    let r = search(&build("S(5)", opts)?, "S(5)", opts, false, None);
    let status = expect_empty(&r, true);
    Ok(Outcome::new(status, to_value(&r), format!("{} witness(es), certified {}", r.witnesses.len(), r.certified)))
}

fn sp23_s2(opts: &Options) -> Result<Outcome> {
    let g = build("wr(Sp(2,3),2)", opts)?;
    let any = search(&g, "wr(Sp(2,3),2)", opts, false, None);
    let conj = search(&g, "wr(Sp(2,3),2)", opts, true, None);
    let ok = any.certified
        && conj.certified
        && any.witnesses.len() == 2
        && any.witnesses.iter().all(|w| w.order == 48 && w.intersection_order == 2)
        && conj.witnesses.is_empty();
    let summary =
        format!("{} witness(es) of order 48, {} with conjugate factors", any.witnesses.len(), conj.witnesses.len());
    Ok(Outcome::check(ok, json!({ "any": to_value(&any), "conjugate": to_value(&conj) }), summary))
}

fn sp23_s4(opts: &Options) -> Result<Outcome> {
    let g = build("wr(Sp(2,3),4)", opts)?;
    let r = search(&g, "wr(Sp(2,3),4)", opts, false, None);
    let bounds = r.group_order == "7962624" && r.min_order == "6912" && r.max_index == "1152";
    let status = if bounds { expect_empty(&r, true) } else { Status::Mismatch };
    let summary = format!(
        "order {}, min order {}, index bound {}, certified {}",
        r.group_order, r.min_order, r.max_index, r.certified
    );
    Ok(Outcome::new(status, to_value(&r), summary))
}

/// 2^14 · 3^6 · 5
pub const SP23_S6_DIVISOR: u64 = 16384 * 729 * 5;

fn sp23_s6_div(opts: &Options) -> Result<Outcome> {
    let g = build("wr(Sp(2,3),6)", opts)?;
    let r = search(&g, "wr(Sp(2,3),6)", opts, false, Some(SP23_S6_DIVISOR));
    let expected_order = BigUint::from(24u32).pow(6) * BigUint::from(720u32);
    let status = if r.group_order == expected_order.to_string() { expect_empty(&r, true) } else { Status::Mismatch };
    Ok(Outcome::new(status, to_value(&r), format!("order {}, certified {}", r.group_order, r.certified)))
}

fn c4_psp2_pgo4(opts: &Options) -> Result<Outcome> {
    let (g, _) = c4_tensor_group(opts.seed)?;
    let r = search(&g, "(PSp2(3) x PGO4-(3)).2", opts, true, None);
    let status = expect_empty(&r, r.group_order == C4_GROUP_ORDER.to_string());
    Ok(Outcome::new(status, to_value(&r), format!("{} witness(es), certified {}", r.witnesses.len(), r.certified)))
}

/// C17:4 inside PΓL2(16) on 17 · 16 · 15 / 68 = 240 cosets: the
/// normaliser of a Sylow 17-subgroup is C17:8, and H is the subgroup
/// generated by the squares of its elements.
pub fn c17_overgroup(opts: &Options) -> Result<(PermGroup, PermGroup)> {
    let g = psl2_with_field_automorphism(16, 1)?.with_seed(opts.seed);
    let eg = ElementGroup::new(&g, opts.cap_order.max(16320))?;
    let x = (0..eg.len() as u32).find(|&i| eg.elem_order(i) == 17).expect("element of order 17");
    let n = eg.normaliser(&eg.closure(&[x]));
    let squares: Vec<u32> = (0..eg.len() as u32).filter(|&i| n.contains(i)).map(|i| eg.mul(i, i)).collect();
    let h = eg.to_perm_group(&eg.closure(&squares));
    Ok((g, h))
}

/// Every digraph Cos(G, H, g) with G = PΓL2(16), H = C17:4, up to the choice
/// of orbital.
pub fn c17_digraphs(opts: &Options) -> Result<Vec<CosetDigraph>> {
    let (g, h) = c17_overgroup(opts)?;
    orbital_digraphs(&g, &h, opts.cap_degree)
}

fn c17_unique_sylow(opts: &Options) -> Result<Outcome> {
    let mc = build("MC(17,4,4)", opts)?;
    let sylow: Vec<u64> =
        subgroup_classes_capped(&mc, 17, opts.cap_order)?.iter().filter(|c| c.order == 17).map(|c| c.class_size).collect();
    let fac = search(&mc, "MC(17,4,4)", opts, false, None);
    let (_, h) = c17_overgroup(opts)?;
    let same = are_isomorphic(&h, &mc)?;
    let mut family = Vec::new();
    let mut family_ok = true;
    for d in c17_digraphs(opts)? {
        let crit = d.max_s_by_criterion(4);
        let orb = d.max_s_by_orbits(4, DEFAULT_ARC_CAP)?;
        family_ok &= crit == orb && crit <= 1;
        family.push(json!({
            "vertices": d.vertex_count(),
            "valency": d.valency(),
            "connected": d.is_connected(),
            "max_s_criterion": crit,
            "max_s_orbits": orb,
        }));
    }
    let ok = sylow == [1] && fac.certified && fac.witnesses.is_empty() && same && !family.is_empty() && family_ok;
    let report = json!({
        "order": mc.order().to_string(),
        "sylow17_class_sizes": sylow,
        "homfac": to_value(&fac),
        "stabiliser_isomorphic_to_mc": same,
        "digraphs": family,
    });
    let summary = format!("{} digraph(s) in PGammaL2(16), all with s ≤ 1: {family_ok}", family.len());
    Ok(Outcome::check(ok, report, summary))
}

fn flags_sp42(opts: &Options) -> Result<Outcome> {
    let fa = symplectic_flags(2)?;
    let threads = opts.plain_threads();
    let with = self_paired_scan(&fa.group, opts.cap_degree, threads)?;
    let without = self_paired_scan(&fa.isometries, opts.cap_degree, threads)?;
    let all = with.iter().all(|o| o.self_paired);
    let order_ok = fa.group.order() == flag_group_order(2);
    let report = json!({
        "flags": fa.flags.len(),
        "group_order": fa.group.order().to_string(),
        "all_self_paired": all,
        "orbitals": with,
        "isometries_only": {
            "order": fa.isometries.order().to_string(),
            "orbitals": without.len(),
            "not_self_paired": without.iter().filter(|o| !o.self_paired).count(),
        },
    });
    let summary = format!("{} flags, {} orbitals, all self-paired: {all}", fa.flags.len(), with.len());
    Ok(Outcome::check(all && order_ok, report, summary))
}

fn geometry_c1(opts: &Options) -> Result<Outcome> {
    let field = Field::of_order(2)?;
    let (_, w1, w2) = unswappable_pair(6, &field)?;
    let cert = swap_certificate(&w1, &w2, opts.cap_degree.min(SWAP_ORBIT_CAP))?;
    let a = cert.forward.first_perp_second;
    let b = cert.forward.second_perp_first;
    let ok = a.dim == 2 && a.rank == 2 && b.dim == 2 && b.rank == 0 && cert.w2_in_orbit && !cert.self_paired();
    let summary = format!(
        "W1∩W2^⊥ dim {} rank {}, W2∩W1^⊥ dim {} rank {}, reversible: {}",
        a.dim,
        a.rank,
        b.dim,
        b.rank,
        cert.self_paired()
    );
    Ok(Outcome::check(ok, serde_json::to_value(&cert).expect("serialisable"), summary))
}

fn table_audit_all(_: &Options) -> Result<Outcome> {
    table_audit()
}

/// Cos(F21, C3, x ↦ x + 1).
pub fn frob21_digraph(opts: &Options) -> Result<CosetDigraph> {
    let g = opts.build(&GroupSpec::Metacyclic { n: 7, r: 2, m: 3 })?;
    let h = g.subgroup(vec![g.gens()[1].clone()]);
    CosetDigraph::new(&g, &h, &g.gens()[0], opts.cap_degree)
}

fn frob21(opts: &Options) -> Result<Outcome> {
    let d = frob21_digraph(opts)?;
    let n = d.vertex_count() as u32;
    let tournament = (0..n).all(|x| (0..n).all(|y| x == y || d.is_arc(x, y) != d.is_arc(y, x)));
    let crit = d.max_s_by_criterion(4);
    let orb = d.max_s_by_orbits(4, DEFAULT_ARC_CAP)?;
    let orbitals = d.orbitals(1)?;
    let ok = n == 7 && d.valency() == 3 && tournament && crit == 1 && orb == 1;
    let report = json!({
        "vertices": n,
        "valency": d.valency(),
        "tournament": tournament,
        "max_s_criterion": crit,
        "max_s_orbits": orb,
        "orbitals": orbitals,
    });
    Ok(Outcome::check(ok, report, format!("tournament {tournament}, max s {crit} / {orb}")))
}
