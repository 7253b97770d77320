//! Machine-readable reports: deterministic JSON, one document per run.

use linkform_core::cohomology::Space;
use linkform_core::error::Result;
use linkform_core::pairings::Gram;
use linkform_core::ring::Ring;
use linkform_core::Error;
use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Serialize)]
pub struct Report {
    pub version: String,
    pub complex: ComplexInfo,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cohomology: Option<Vec<GroupLine>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub steenrod: Option<Vec<SqLine>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bss: Option<Vec<BssLine>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pairing: Option<Vec<PairingLine>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wu: Option<WuSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<VerdictSection>,
    pub status: Vec<StatusLine>,
}

#[derive(Serialize)]
pub struct ComplexInfo {
    pub name: String,
    pub hash: String,
    pub dimension: usize,
    pub f_vector: Vec<usize>,
}

#[derive(Serialize)]
pub struct GroupLine {
    pub ring: String,
    pub degree: usize,
    pub free_rank: usize,
    pub torsion_orders: Vec<u64>,
}

#[derive(Serialize)]
pub struct SqLine {
    pub generator: String,
    pub i: i64,
    pub value: String,
}

#[derive(Serialize)]
pub struct BssLine {
    pub n: u32,
    pub page: u32,
    pub orders_by_degree: Vec<Vec<u64>>,
    pub differential_image_order_by_degree: Vec<u64>,
}

#[derive(Serialize)]
pub struct PairingLine {
    pub kind: String,
    pub n: u32,
    pub degree: usize,
    pub basis_orders: Vec<u64>,
    pub gram: Vec<Vec<String>>,
    pub skew_symmetric: bool,
    pub alternating: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nondegenerate: Option<bool>,
}

#[derive(Serialize)]
pub struct WuSection {
    pub v: String,
    pub v_components: Vec<String>,
    pub w: String,
    pub w_components: Vec<String>,
    pub middle_degree: usize,
    pub beta_tilde_v_mid: String,
    pub beta_lift_obstruction: String,
    pub lifts: bool,
}

#[derive(Serialize)]
pub struct VerdictSection {
    pub dimension: usize,
    pub levels: Vec<VerdictLevel>,
    pub lifts: bool,
    pub verdict: String,
}

#[derive(Serialize)]
pub struct VerdictLevel {
    pub n: u32,
    pub skew_symmetric: bool,
    pub alternating: bool,
}

#[derive(Serialize)]
pub struct StatusLine {
    pub assertion: String,
    pub pass: bool,
}

pub fn content_hash(space: &Space) -> String {
    let facets: Vec<&[u32]> = space
        .complex()
        .facets()
        .iter()
        .map(|s| s.vertices())
        .collect();
    let canonical = serde_json::to_string(&facets).expect("serialize facets");
    let digest = Sha256::digest(canonical.as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

fn class_label(space: &Space, class: &linkform_core::CohomologyClass) -> String {
    let group = space.cohomology(class.ring, class.degree);
    let mut terms = Vec::new();
    for (i, &c) in class.coords.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let name = gen_name(class.degree, i, group.summands());
        if c == 1 {
            terms.push(name);
        } else {
            terms.push(format!("{c}*{name}"));
        }
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn gen_name(degree: usize, index: usize, summands: usize) -> String {
    if degree == 0 {
        "1".into()
    } else if summands == 1 {
        format!("g{degree}")
    } else {
        format!("g{degree}_{index}")
    }
}

fn total_label(parts: &[String]) -> String {
    let nonzero: Vec<&str> = parts
        .iter()
        .map(|s| s.as_str())
        .filter(|s| *s != "0")
        .collect();
    if nonzero.is_empty() {
        "0".into()
    } else {
        nonzero.join(" + ")
    }
}

pub struct ReportOptions {
    pub sections: Vec<String>,
    pub n_max: u32,
}

pub fn build_report(space: &Space, opts: &ReportOptions) -> Result<Report> {
    let mut status = Vec::new();
    let dim = space.dimension();
    let has = |name: &str| opts.sections.iter().any(|s| s == name);

    let cohomology = if has("cohomology") {
        let mut lines = Vec::new();
        let mut rings = vec![Ring::Z];
        for n in 1..=opts.n_max {
            rings.push(Ring::mod2n(n));
        }
        for ring in rings {
            for k in 0..=dim {
                let g = space.cohomology(ring, k);
                lines.push(GroupLine {
                    ring: ring.to_string(),
                    degree: k,
                    free_rank: g.free_rank,
                    torsion_orders: g.torsion_orders.clone(),
                });
            }
        }
        Some(lines)
    } else {
        None
    };

    let steenrod = if has("steenrod") {
        let mut lines = Vec::new();
        for k in 0..=dim {
            let g = space.cohomology(Ring::Mod(2), k);
            for gi in 0..g.summands() {
                let mut coords = vec![0i64; g.summands()];
                coords[gi] = 1;
                let x = space.class_from_coords(&g, &coords);
                for i in 0..=(dim - k) as i64 {
                    let sq = space.sq(i, &x)?;
                    lines.push(SqLine {
                        generator: gen_name(k, gi, g.summands()),
                        i,
                        value: class_label(space, &sq),
                    });
                }
            }
        }
        Some(lines)
    } else {
        None
    };

    let bss = if has("bss") {
        let mut lines = Vec::new();
        for page in 1..=4u32 {
            let p = space.bss_page(1, page)?;
            let orders: Vec<Vec<u64>> =
                p.degrees.iter().map(|d| d.orders.clone()).collect();
            let image_orders: Vec<u64> = (0..p.degrees.len())
                .map(|k| {
                    let t = p
                        .degrees
                        .get(k + 1)
                        .map(|d| d.orders.clone())
                        .unwrap_or_default();
                    if t.is_empty() {
                        1
                    } else {
                        linkform_core::abelian::subgroup_order(
                            &t,
                            &p.degrees[k].differential,
                        )
                    }
                })
                .collect();
            lines.push(BssLine {
                n: 1,
                page,
                orders_by_degree: orders,
                differential_image_order_by_degree: image_orders,
            });
        }
        Some(lines)
    } else {
        None
    };

    let pairing = if has("pairing") {
        if dim % 2 == 0 {
            return Err(Error::Parity { dim });
        }
        let mut lines = Vec::new();
        for n in 1..=opts.n_max {
            let aux = space.aux_pairing(n)?;
            let gram = match &aux.gram {
                Gram::Aux(g) => g
                    .iter()
                    .map(|row| row.iter().map(|v| v.to_string()).collect())
                    .collect(),
                Gram::Linking(_) => unreachable!(),
            };
            if dim % 4 == 1 {
                status.push(StatusLine {
                    assertion: format!("aux_pairing_skew_n{n}"),
                    pass: aux.skew_symmetric,
                });
            }
            lines.push(PairingLine {
                kind: "auxiliary".into(),
                n,
                degree: aux.degree,
                basis_orders: aux.basis_orders.clone(),
                gram,
                skew_symmetric: aux.skew_symmetric,
                alternating: aux.alternating,
                nondegenerate: aux.nondegenerate,
            });
            let link = space.linking_form(n)?;
            let gram = match &link.gram {
                Gram::Linking(g) => g
                    .iter()
                    .map(|row| row.iter().map(|v| v.to_string()).collect())
                    .collect(),
                Gram::Aux(_) => unreachable!(),
            };
            if let Some(nd) = link.nondegenerate {
                status.push(StatusLine {
                    assertion: format!("linking_form_nondegenerate_n{n}"),
                    pass: nd,
                });
            }
            lines.push(PairingLine {
                kind: "linking".into(),
                n,
                degree: link.degree,
                basis_orders: link.basis_orders.clone(),
                gram,
                skew_symmetric: link.skew_symmetric,
                alternating: link.alternating,
                nondegenerate: link.nondegenerate,
            });
        }
        Some(lines)
    } else {
        None
    };

    let wu = if has("wu") {
        let v = space.wu_classes()?;
        let w = space.sw_from_wu()?;
        let v_components: Vec<String> =
            v.components.iter().map(|c| class_label(space, c)).collect();
        let w_components: Vec<String> = w.iter().map(|c| class_label(space, c)).collect();
        if dim % 2 == 1 {
            let md = dim / 2;
            let obs = space.wu_lift_obstruction(opts.n_max)?;
            Some(WuSection {
                v: total_label(&v_components),
                v_components,
                w: total_label(&w_components),
                w_components,
                middle_degree: md,
                beta_tilde_v_mid: class_label(space, &obs.beta_tilde_v),
                beta_lift_obstruction: class_label(space, &obs.beta_2n_v),
                lifts: obs.lifts,
            })
        } else {
            Some(WuSection {
                v: total_label(&v_components),
                v_components,
                w: total_label(&w_components),
                w_components,
                middle_degree: dim / 2,
                beta_tilde_v_mid: "n/a".into(),
                beta_lift_obstruction: "n/a".into(),
                lifts: true,
            })
        }
    } else {
        None
    };

    let verdict = if has("verdict") {
        let r = space.theorem73_verdict(opts.n_max)?;
        status.push(StatusLine {
            assertion: "theorem73_consistent".into(),
            pass: r.consistent,
        });
        Some(VerdictSection {
            dimension: r.dimension,
            levels: r
                .levels
                .iter()
                .map(|l| VerdictLevel {
                    n: l.n,
                    skew_symmetric: l.skew_symmetric,
                    alternating: l.alternating,
                })
                .collect(),
            lifts: r.lifts,
            verdict: if r.consistent {
                "CONSISTENT".into()
            } else {
                "INCONSISTENT".into()
            },
        })
    } else {
        None
    };

    Ok(Report {
        version: env!("CARGO_PKG_VERSION").to_string(),
        complex: ComplexInfo {
            name: space.complex().name().to_string(),
            hash: content_hash(space),
            dimension: dim,
            f_vector: space.complex().f_vector(),
        },
        cohomology,
        steenrod,
        bss,
        pairing,
        wu,
        verdict,
        status,
    })
}
