use super::{Constraint, Family, IlpModel, ModelError, ModelMeta, RowTag, Sense, VarKind};
use crate::graph::WeightedGraph;

fn meta(g: &WeightedGraph, k: usize, family: Family, reduced: bool) -> ModelMeta {
    ModelMeta {
        n: g.node_count(),
        k,
        family,
        reduced,
        lb: None,
        ub: None,
        max_components: None,
        dropped_vacuous: 0,
    }
}

fn triples(n: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (1..=n).flat_map(move |i| (i + 1..=n).flat_map(move |j| (j + 1..=n).map(move |k| (i, j, k))))
}

/// Signs of `(ij, jk, ik)` in the three triangle orientations.
const ORIENTATIONS: [[f64; 3]; 3] = [[1.0, 1.0, -1.0], [1.0, -1.0, 1.0], [-1.0, 1.0, 1.0]];

fn triangle_row(m: &IlpModel, (i, j, k): (usize, usize, usize), signs: [f64; 3], tag: u8) -> Constraint {
    let vars = [m.pair_var(i, j), m.pair_var(j, k), m.pair_var(i, k)];
    let terms = vars.iter().zip(signs).map(|(v, s)| (v.expect("pair variable"), s)).collect();
    Constraint { terms, sense: Sense::Le, rhs: 1.0, tag: RowTag::Family(tag) }
}

fn edge_vars_and_objective(m: &mut IlpModel, g: &WeightedGraph) {
    for e in g.edges() {
        let id = m.add_var(VarKind::EdgeX { i: e.i, j: e.j });
        m.objective.push((id, e.w));
    }
}

/// Clique partitioning on a complete graph: rows (1)-(3) for every triple.
pub fn build_f1c(g: &WeightedGraph) -> Result<IlpModel, ModelError> {
    let n = g.node_count();
    let missing = n * (n - 1) / 2 - g.edge_count();
    if missing > 0 {
        return Err(ModelError::NotComplete { missing });
    }
    let mut m = IlpModel::new(meta(g, 1, Family::F1c, false));
    edge_vars_and_objective(&mut m, g);
    for (tag, signs) in (1u8..=3).zip(ORIENTATIONS) {
        for t in triples(n) {
            let row = triangle_row(&m, t, signs, tag);
            m.constraints.push(row);
        }
    }
    Ok(m)
}

/// Sparse clique partitioning: triangle rows (5)-(7) over triples whose three
/// pairs are edges, and row (8) over every triple missing exactly one pair.
pub fn build_f1s(g: &WeightedGraph) -> IlpModel {
    let n = g.node_count();
    let mut m = IlpModel::new(meta(g, 1, Family::F1s, false));
    edge_vars_and_objective(&mut m, g);
    let full: Vec<_> = triples(n)
        .filter(|&(i, j, k)| g.has_edge(i, j) && g.has_edge(j, k) && g.has_edge(i, k))
        .collect();
    for (tag, signs) in (5u8..=7).zip(ORIENTATIONS) {
        for &t in &full {
            let row = triangle_row(&m, t, signs, tag);
            m.constraints.push(row);
        }
    }
    for (i, j, k) in triples(n) {
        let present: Vec<(usize, usize)> =
            [(i, j), (i, k), (j, k)].into_iter().filter(|&(a, b)| g.has_edge(a, b)).collect();
        if present.len() == 2 {
            let terms = present.iter().map(|&(a, b)| (m.pair_var(a, b).expect("edge variable"), 1.0)).collect();
            m.constraints.push(Constraint { terms, sense: Sense::Le, rhs: 1.0, tag: RowTag::Family(8) });
        }
    }
    m
}

/// k-plex partitioning with missing-pair variables: triangle rows (10)-(12)
/// over all triples and degree rows (13).
///
/// With `reduce` and `k = 2`, triangle rows whose two positive-sign pairs are
/// both missing are omitted; row (13) already caps each node at one selected
/// missing pair, so those rows cannot bind.
pub fn build_fks(g: &WeightedGraph, k: usize, reduce: bool) -> Result<IlpModel, ModelError> {
    if k < 2 {
        return Err(ModelError::KTooSmall { k });
    }
    let n = g.node_count();
    let reduced = reduce && k == 2;
    let mut m = IlpModel::new(meta(g, k, Family::Fks, reduced));
    for i in 1..=n {
        for j in i + 1..=n {
            match g.weight(i, j) {
                Some(w) => {
                    let id = m.add_var(VarKind::EdgeX { i, j });
                    m.objective.push((id, w));
                }
                None => {
                    m.add_var(VarKind::MissingV { i, j });
                }
            }
        }
    }
    for (tag, signs) in (10u8..=12).zip(ORIENTATIONS) {
        for (i, j, kk) in triples(n) {
            if reduced {
                let pairs = [(i, j), (j, kk), (i, kk)];
                let positives_missing = pairs
                    .iter()
                    .zip(signs)
                    .filter(|(_, s)| *s > 0.0)
                    .all(|(&(a, b), _)| !g.has_edge(a, b));
                if positives_missing {
                    continue;
                }
            }
            let row = triangle_row(&m, (i, j, kk), signs, tag);
            m.constraints.push(row);
        }
    }
    for i in 1..=n {
        let terms: Vec<(usize, f64)> = (1..=n)
            .filter(|&j| j != i && !g.has_edge(i, j))
            .map(|j| (m.pair_var(i, j).expect("missing-pair variable"), 1.0))
            .collect();
        if terms.is_empty() {
            m.meta.dropped_vacuous += 1;
        } else {
            m.constraints.push(Constraint { terms, sense: Sense::Le, rhs: (k - 1) as f64, tag: RowTag::Family(13) });
        }
    }
    Ok(m)
}

/// Per-node rows bounding the node weight of the node's component:
/// (16)/(17) for F1c and F1s, (18)/(19) for Fks.
pub fn add_capacity_bounds(
    m: &IlpModel,
    g: &WeightedGraph,
    lb: Option<f64>,
    ub: Option<f64>,
) -> Result<IlpModel, ModelError> {
    for b in [lb, ub].into_iter().flatten() {
        if !(b.is_finite() && b >= 0.0) {
            return Err(ModelError::BadCapacity);
        }
    }
    if let (Some(lb), Some(ub)) = (lb, ub) {
        if lb > ub {
            return Err(ModelError::LbAboveUb { lb, ub });
        }
    }
    if lb.is_some() && m.meta.lb.is_some() {
        return Err(ModelError::AlreadyPresent { what: "a lower capacity bound" });
    }
    if ub.is_some() && m.meta.ub.is_some() {
        return Err(ModelError::AlreadyPresent { what: "an upper capacity bound" });
    }
    let total = g.total_node_weight();
    if let Some(lb) = lb {
        if lb > total {
            return Err(ModelError::LbAboveTotal { lb, total });
        }
    }
    let mut out = m.clone();
    let n = g.node_count();
    let fks = m.meta.family == Family::Fks;
    let row_terms = |i: usize| -> Vec<(usize, f64)> {
        (1..=n)
            .filter(|&j| j != i && (fks || g.has_edge(i, j)))
            .map(|j| (m.pair_var(i, j).expect("pair variable"), g.node_weight(j)))
            .collect()
    };
    let (lb_tag, ub_tag) = if fks { (18, 19) } else { (16, 17) };
    if let Some(lb) = lb {
        for i in 1..=n {
            out.constraints.push(Constraint {
                terms: row_terms(i),
                sense: Sense::Ge,
                rhs: lb - g.node_weight(i),
                tag: RowTag::Family(lb_tag),
            });
        }
        out.meta.lb = Some(lb);
    }
    if let Some(ub) = ub {
        for i in 1..=n {
            out.constraints.push(Constraint {
                terms: row_terms(i),
                sense: Sense::Le,
                rhs: ub - g.node_weight(i),
                tag: RowTag::Family(ub_tag),
            });
        }
        out.meta.ub = Some(ub);
    }
    Ok(out)
}

/// Node/component variables `z_i^p`, `p = 1..=limit`, with rows (20)-(22)
/// for F1c and F1s or (23)-(24) for Fks.
pub fn add_component_limit(m: &IlpModel, g: &WeightedGraph, limit: usize) -> Result<IlpModel, ModelError> {
    if limit == 0 {
        return Err(ModelError::ZeroComponents);
    }
    if m.meta.max_components.is_some() {
        return Err(ModelError::AlreadyPresent { what: "a component limit" });
    }
    let n = g.node_count();
    let mut out = m.clone();
    let mut z = vec![vec![0usize; limit]; n];
    for i in 1..=n {
        for p in 1..=limit {
            z[i - 1][p - 1] = out.add_var(VarKind::NodeComp { node: i, comp: p });
        }
    }
    let fks = m.meta.family == Family::Fks;
    let (assign_tag, pair_tag, missing_tag) = if fks { (23, 24, 24) } else { (20, 21, 22) };
    for row in &z {
        out.constraints.push(Constraint {
            terms: row.iter().map(|&v| (v, 1.0)).collect(),
            sense: Sense::Eq,
            rhs: 1.0,
            tag: RowTag::Family(assign_tag),
        });
    }
    let mut linked = Vec::new();
    let mut separated = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            let pair = m.pair_var(i, j);
            for p in 0..limit {
                let mut terms = vec![(z[i - 1][p], 1.0), (z[j - 1][p], 1.0)];
                match pair {
                    Some(var) => {
                        terms.push((var, -1.0));
                        linked.push(Constraint { terms, sense: Sense::Le, rhs: 1.0, tag: RowTag::Family(pair_tag) });
                    }
                    None => separated.push(Constraint {
                        terms,
                        sense: Sense::Le,
                        rhs: 1.0,
                        tag: RowTag::Family(missing_tag),
                    }),
                }
            }
        }
    }
    out.constraints.extend(linked);
    out.constraints.extend(separated);
    out.meta.max_components = Some(limit);
    Ok(out)
}
