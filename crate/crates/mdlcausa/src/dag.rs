//! Multivariate scoring: sum per-node conditional codelengths over a DAG
//! and search small variable sets exhaustively.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::codecs::{self, Codec};
use crate::distributions::PairedSample;
use crate::error::{Error, Result};

/// Default cap on the variable count of an exhaustive search
/// (29281 labeled DAGs at five nodes).
pub const DEFAULT_MAX_M: usize = 5;

/// A labeled DAG given by one parent set per node. Parent lists are kept
/// sorted, which makes the derived ordering the lexicographic
/// parent-set encoding used for tie-breaking.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dag {
    parents: Vec<Vec<usize>>,
}

impl Dag {
    /// Validates node indices, self-loops and acyclicity.
    pub fn new(parents: Vec<Vec<usize>>) -> Result<Self> {
        let m = parents.len();
        if m == 0 {
            return Err(Error::invalid("a DAG needs at least one node"));
        }
        let mut normalized = Vec::with_capacity(m);
        for (child, set) in parents.iter().enumerate() {
            let mut set = set.clone();
            set.sort_unstable();
            set.dedup();
            for &p in &set {
                if p >= m {
                    return Err(Error::invalid(format!(
                        "node {child} lists parent {p}, but the graph has {m} nodes"
                    )));
                }
                if p == child {
                    return Err(Error::invalid(format!("node {child} is its own parent")));
                }
            }
            normalized.push(set);
        }
        let dag = Dag {
            parents: normalized,
        };
        if !dag.is_acyclic() {
            return Err(Error::invalid("graph contains a cycle"));
        }
        Ok(dag)
    }

    /// The graph with no edges.
    pub fn empty(m: usize) -> Result<Self> {
        Dag::new(vec![Vec::new(); m])
    }

    pub fn var_count(&self) -> usize {
        self.parents.len()
    }

    pub fn parents(&self, node: usize) -> &[usize] {
        &self.parents[node]
    }

    pub fn parent_sets(&self) -> &[Vec<usize>] {
        &self.parents
    }

    /// All edges as (parent, child) pairs, ordered by child.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parents
            .iter()
            .enumerate()
            .flat_map(|(child, ps)| ps.iter().map(move |&p| (p, child)))
    }

    fn is_acyclic(&self) -> bool {
        let masks: Vec<u64> = self
            .parents
            .iter()
            .map(|ps| ps.iter().fold(0u64, |m, &p| m | 1 << p))
            .collect();
        acyclic_masks(&masks)
    }
}

/// Kahn-style check over parent bitmasks.
fn acyclic_masks(parent_masks: &[u64]) -> bool {
    let m = parent_masks.len();
    let mut removed = 0u64;
    let mut removed_count = 0;
    loop {
        let mut progressed = false;
        for (node, &mask) in parent_masks.iter().enumerate() {
            let bit = 1u64 << node;
            if removed & bit == 0 && mask & !removed == 0 {
                removed |= bit;
                removed_count += 1;
                progressed = true;
            }
        }
        if removed_count == m {
            return true;
        }
        if !progressed {
            return false;
        }
    }
}

/// Total codelength of the sample under the DAG's factorization: each node
/// is encoded conditionally on the joint configuration of its parents,
/// root nodes by their marginal code. Parent configurations never observed
/// cost nothing.
pub fn score_dag(s: &PairedSample, dag: &Dag, codec: &Codec) -> Result<f64> {
    if dag.var_count() != s.num_columns() {
        return Err(Error::invalid(format!(
            "DAG has {} nodes but the sample has {} columns",
            dag.var_count(),
            s.num_columns()
        )));
    }
    if matches!(codec, Codec::Oracle(_)) {
        return Err(Error::invalid(
            "the oracle codec is bivariate and oriented; DAG scoring supports the count-based codecs",
        ));
    }
    let mut bits = 0.0;
    for node in 0..dag.var_count() {
        bits += codecs::conditional_cost_grouped(s, dag.parents(node), node, codec)?;
    }
    Ok(bits)
}

/// Every labeled DAG on `m` nodes, by assigning each node a parent set and
/// keeping the acyclic assignments.
pub fn enumerate_dags(m: usize) -> Result<Vec<Dag>> {
    if m == 0 {
        return Err(Error::invalid("a DAG needs at least one node"));
    }
    if m > 63 {
        return Err(Error::resource(
            "bitmask enumeration supports at most 63 nodes",
        ));
    }
    let mut out = Vec::new();
    let mut masks = vec![0u64; m];
    fill_assignments(m, 0, &mut masks, &mut out);
    Ok(out)
}

fn fill_assignments(m: usize, node: usize, masks: &mut Vec<u64>, out: &mut Vec<Dag>) {
    if node == m {
        if acyclic_masks(masks) {
            let parents = masks
                .iter()
                .map(|&mask| (0..m).filter(|&p| mask & 1 << p != 0).collect())
                .collect();
            out.push(Dag { parents });
        }
        return;
    }
    let self_bit = 1u64 << node;
    let full = (1u64 << m) - 1;
    let candidates = full & !self_bit;
    // Iterate the subsets of `candidates` in increasing mask order.
    let mut subset = 0u64;
    loop {
        masks[node] = subset;
        fill_assignments(m, node + 1, masks, out);
        if subset == candidates {
            break;
        }
        subset = (subset.wrapping_sub(candidates)) & candidates;
    }
}

/// Outcome of an exhaustive search: the minimizing DAG and the full
/// score-sorted ranking (ties broken by the parent-set encoding).
#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult {
    pub best: Dag,
    pub score: f64,
    pub ranking: Vec<(Dag, f64)>,
}

/// Scores every labeled DAG on the sample's columns and returns the
/// minimum. Family costs (node, parent set) are shared across the
/// enumeration, so each DAG costs only a few lookups.
pub fn exhaustive_search(
    s: &PairedSample,
    codec: &Codec,
    max_m: usize,
    parallel: bool,
) -> Result<SearchResult> {
    let m = s.num_columns();
    if m > max_m {
        return Err(Error::resource(format!(
            "exhaustive search over {m} variables exceeds max_m = {max_m}"
        )));
    }
    if matches!(codec, Codec::Oracle(_)) {
        return Err(Error::invalid(
            "the oracle codec is bivariate and oriented; DAG scoring supports the count-based codecs",
        ));
    }

    // Cost of every (node, parent mask) family.
    let families: Vec<(usize, u64)> = (0..m)
        .flat_map(|node| {
            let full = ((1u64 << m) - 1) & !(1 << node);
            let mut sets = vec![(node, 0u64)];
            let mut subset = 0u64;
            while subset != full {
                subset = (subset.wrapping_sub(full)) & full;
                sets.push((node, subset));
            }
            sets
        })
        .collect();
    let family_cost = |&(node, mask): &(usize, u64)| -> Result<((usize, u64), f64)> {
        let cols: Vec<usize> = (0..m).filter(|&p| mask & 1 << p != 0).collect();
        Ok((
            (node, mask),
            codecs::conditional_cost_grouped(s, &cols, node, codec)?,
        ))
    };
    #[cfg(feature = "parallel")]
    let costs: Vec<((usize, u64), f64)> = if parallel {
        families
            .par_iter()
            .map(family_cost)
            .collect::<Result<_>>()?
    } else {
        families.iter().map(family_cost).collect::<Result<_>>()?
    };
    #[cfg(not(feature = "parallel"))]
    let costs: Vec<((usize, u64), f64)> = {
        let _ = parallel;
        families.iter().map(family_cost).collect::<Result<_>>()?
    };
    let costs: std::collections::HashMap<(usize, u64), f64> = costs.into_iter().collect();

    let mut ranking: Vec<(Dag, f64)> = enumerate_dags(m)?
        .into_iter()
        .map(|dag| {
            let score = (0..m)
                .map(|node| {
                    let mask = dag.parents(node).iter().fold(0u64, |acc, &p| acc | 1 << p);
                    costs[&(node, mask)]
                })
                .sum();
            (dag, score)
        })
        .collect();
    ranking.sort_by(|(da, sa), (db, sb)| sa.total_cmp(sb).then_with(|| da.cmp(db)));

    let (best, score) = ranking[0].clone();
    Ok(SearchResult {
        best,
        score,
        ranking,
    })
}
