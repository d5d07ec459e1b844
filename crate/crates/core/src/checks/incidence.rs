use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::{big, CheckError, ClaimId, Verdict};
use crate::graph::{Graph, Orientation};
use crate::linalg::{det, IntMatrix};
use crate::oracle::{classify_subgraph, ComponentKind};

/// Graphs with at most this many edges are swept over every `(R, S)`.
pub const EXHAUSTIVE_EDGE_LIMIT: usize = 6;
/// Largest `|R| = |S|` in an exhaustive sweep.
pub const EXHAUSTIVE_SUBSET_LIMIT: usize = 4;
/// Number of seeded `(R, S)` draws on larger graphs.
pub const RANDOM_PAIRS: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Matrix {
    Oriented,
    Unoriented,
}

/// Result of one `(R, S)` pair.
struct PairOutcome {
    rows: Vec<usize>,
    cols: Vec<usize>,
    det: BigInt,
    conditions: bool,
    expected_abs_det: Option<BigInt>,
}

impl PairOutcome {
    fn ok(&self) -> bool {
        let invertible = !self.det.is_zero();
        invertible == self.conditions
            && (!invertible || self.expected_abs_det.as_ref() == Some(&self.det.abs()))
    }

    fn to_json(&self) -> Value {
        json!({
            "R": self.rows,
            "S": self.cols,
            "det": big(&self.det),
            "conditions": self.conditions,
            "expected_abs_det": self.expected_abs_det.as_ref().map(big),
        })
    }
}

/// Vertex sets and edge counts of the components of `⟨S⟩`.
fn span_components(g: &Graph, edges: &[usize]) -> Vec<(Vec<usize>, usize)> {
    let mut parent: Vec<usize> = (0..g.order()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for &j in edges {
        let (u, v) = g.edge(j);
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        parent[a] = b;
    }
    let mut by_root: std::collections::BTreeMap<usize, (Vec<usize>, usize)> = Default::default();
    for &j in edges {
        let (u, v) = g.edge(j);
        let root = find(&mut parent, u);
        let entry = by_root.entry(root).or_default();
        entry.0.extend([u, v]);
        entry.1 += 1;
    }
    by_root
        .into_values()
        .map(|(mut vs, e)| {
            vs.sort_unstable();
            vs.dedup();
            (vs, e)
        })
        .collect()
}

fn omitted(vertices: &[usize], rows: &[usize]) -> usize {
    vertices
        .iter()
        .filter(|v| rows.binary_search(v).is_err())
        .count()
}

/// The combinatorial side of each criterion, plus the predicted `|det|`.
fn conditions(g: &Graph, which: Matrix, rows: &[usize], cols: &[usize]) -> (bool, Option<BigInt>) {
    let comps = span_components(g, cols);
    let mut support: Vec<usize> = comps
        .iter()
        .flat_map(|(vs, _)| vs.iter().copied())
        .collect();
    support.sort_unstable();
    let r_in_support = rows.iter().all(|r| support.binary_search(r).is_ok());
    match which {
        Matrix::Oriented => {
            let forest = comps.iter().all(|(vs, e)| *e + 1 == vs.len());
            let one_each = comps.iter().all(|(vs, _)| omitted(vs, rows) == 1);
            let ok = r_in_support && forest && one_each;
            (ok, ok.then(BigInt::one))
        }
        Matrix::Unoriented => {
            let Some(tu) = classify_subgraph(g, cols) else {
                return (false, None);
            };
            let one_per_tree = tu
                .components
                .iter()
                .filter(|c| c.kind == ComponentKind::Tree)
                .all(|c| omitted(&c.vertices, rows) == 1);
            let ok = r_in_support && one_per_tree;
            (ok, ok.then(|| BigInt::one() << tu.unicyclic_count()))
        }
    }
}

fn evaluate(
    g: &Graph,
    m: &IntMatrix,
    which: Matrix,
    rows: Vec<usize>,
    cols: Vec<usize>,
) -> PairOutcome {
    let sub = m.submatrix(&rows, &cols).expect("indices validated");
    let det = det(&sub).expect("square");
    let (conditions, expected_abs_det) = conditions(g, which, &rows, &cols);
    PairOutcome {
        rows,
        cols,
        det,
        conditions,
        expected_abs_det,
    }
}

fn normalize(indices: &[usize], bound: usize) -> Result<Vec<usize>, CheckError> {
    if let Some(&bad) = indices.iter().find(|&&i| i >= bound) {
        return Err(CheckError::IndexOutOfRange(bad));
    }
    let mut v = indices.to_vec();
    v.sort_unstable();
    v.dedup();
    Ok(v)
}

fn single_pair(
    g: &Graph,
    m: &IntMatrix,
    which: Matrix,
    r: &[usize],
    s: &[usize],
) -> Result<Verdict, CheckError> {
    let rows = normalize(r, g.order())?;
    let cols = normalize(s, g.size())?;
    if rows.len() != cols.len() || rows.is_empty() {
        return Err(CheckError::SizeMismatch {
            rows: rows.len(),
            cols: cols.len(),
        });
    }
    let claim = match which {
        Matrix::Oriented => ClaimId::LemInvertD,
        Matrix::Unoriented => ClaimId::LemInvertX,
    };
    let outcome = evaluate(g, m, which, rows, cols);
    Ok(Verdict::decide(claim, g, outcome.ok(), outcome.to_json()))
}

/// `D(R, S)` is invertible exactly when `R ⊆ V_0`, `⟨S⟩` is a forest and
/// `V_0 ∖ R` holds one vertex of each component of `⟨S⟩`; then `det = ±1`.
pub fn check_lemma_invert_d(
    g: &Graph,
    orientation: &Orientation,
    r: &[usize],
    s: &[usize],
) -> Result<Verdict, CheckError> {
    if r.is_empty() || s.is_empty() {
        return Err(CheckError::SizeMismatch {
            rows: r.len(),
            cols: s.len(),
        });
    }
    let d = g.incidence_oriented(orientation)?;
    single_pair(g, &d, Matrix::Oriented, r, s)
}

/// `X(R, S)` is invertible exactly when `R ⊆ V_0`, every component of `⟨S⟩`
/// is a tree or odd-unicyclic and `V_0 ∖ R` holds one vertex of each tree;
/// then `|det| = 2^c` for `c` odd-unicyclic components.
pub fn check_lemma_invert_x(g: &Graph, r: &[usize], s: &[usize]) -> Result<Verdict, CheckError> {
    if r.is_empty() || s.is_empty() {
        return Err(CheckError::SizeMismatch {
            rows: r.len(),
            cols: s.len(),
        });
    }
    let x = g.incidence_unoriented()?;
    single_pair(g, &x, Matrix::Unoriented, r, s)
}

/// Every pair with `|R| = |S| ≤ EXHAUSTIVE_SUBSET_LIMIT`.
fn exhaustive_pairs(g: &Graph) -> impl Iterator<Item = (Vec<usize>, Vec<usize>)> + '_ {
    let top = EXHAUSTIVE_SUBSET_LIMIT.min(g.order()).min(g.size());
    (1..=top).flat_map(move |k| {
        (0..g.size())
            .combinations(k)
            .flat_map(move |s| (0..g.order()).combinations(k).map(move |r| (r, s.clone())))
    })
}

/// Seeded pairs. Every other draw takes `R` inside `V_0(S)` so that the
/// invertible side of each criterion is exercised.
fn random_pairs(g: &Graph, seed: u64) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let top = g.order().min(g.size());
    (0..RANDOM_PAIRS)
        .map(|i| {
            let k = rng.random_range(1..=top);
            let mut s = sample(&mut rng, g.size(), k).into_vec();
            s.sort_unstable();
            let support: Vec<usize> = g_support(g, &s);
            let mut r = if i % 2 == 0 && support.len() >= k {
                sample(&mut rng, support.len(), k)
                    .into_iter()
                    .map(|j| support[j])
                    .collect()
            } else {
                sample(&mut rng, g.order(), k).into_vec()
            };
            r.sort_unstable();
            (r, s)
        })
        .collect()
}

fn g_support(g: &Graph, edges: &[usize]) -> Vec<usize> {
    let mut v: Vec<usize> = edges
        .iter()
        .flat_map(|&j| <[usize; 2]>::from(g.edge(j)))
        .collect();
    v.sort_unstable();
    v.dedup();
    v
}

fn sweep(g: &Graph, which: Matrix, seed: u64) -> Verdict {
    let claim = match which {
        Matrix::Oriented => ClaimId::LemInvertD,
        Matrix::Unoriented => ClaimId::LemInvertX,
    };
    if g.size() == 0 {
        return Verdict::not_applicable(claim, g, "graph has no edges");
    }
    let m = match which {
        Matrix::Oriented => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6f72_6965_6e74);
            g.incidence_oriented(&Orientation::random(g, &mut rng))
        }
        Matrix::Unoriented => g.incidence_unoriented(),
    }
    .expect("graph has edges");
    let exhaustive = g.size() <= EXHAUSTIVE_EDGE_LIMIT;
    let pairs: Box<dyn Iterator<Item = (Vec<usize>, Vec<usize>)>> = if exhaustive {
        Box::new(exhaustive_pairs(g))
    } else {
        Box::new(random_pairs(g, seed).into_iter())
    };
    let (mut checked, mut invertible) = (0usize, 0usize);
    let mut failure = None;
    for (r, s) in pairs {
        let outcome = evaluate(g, &m, which, r, s);
        checked += 1;
        invertible += usize::from(!outcome.det.is_zero());
        if !outcome.ok() {
            failure = Some(outcome);
            break;
        }
    }
    let witness = json!({
        "mode": if exhaustive { "exhaustive" } else { "random" },
        "pairs_checked": checked,
        "invertible_pairs": invertible,
        "failure": failure.as_ref().map(PairOutcome::to_json),
    });
    Verdict::decide(claim, g, failure.is_none(), witness)
}

/// Sweeps `check_lemma_invert_d` over `(R, S)` pairs under a seeded random
/// orientation: exhaustively for small graphs, by seeded sampling otherwise.
pub fn sweep_lemma_invert_d(g: &Graph, seed: u64) -> Verdict {
    sweep(g, Matrix::Oriented, seed)
}

/// Sweeps `check_lemma_invert_x` over `(R, S)` pairs.
pub fn sweep_lemma_invert_x(g: &Graph, seed: u64) -> Verdict {
    sweep(g, Matrix::Unoriented, seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::checks::Status;
    use crate::graph::{complete_graph, cycle, path, random_connected};

    #[test]
    fn oriented_examples() {
        let c3 = cycle(3).unwrap();
        let o = Orientation::default_for(&c3);
        let (e01, e12) = (c3.edge_index(0, 1).unwrap(), c3.edge_index(1, 2).unwrap());
        let v = check_lemma_invert_d(&c3, &o, &[0, 1], &[e01, e12]).unwrap();
        assert!(v.holds());
        assert_eq!(v.witness["det"].as_i64().unwrap().abs(), 1);
        let v = check_lemma_invert_d(&c3, &o, &[0, 1, 2], &[0, 1, 2]).unwrap();
        assert!(v.holds());
        assert_eq!(
            (v.witness["det"].clone(), v.witness["conditions"].clone()),
            (json!(0), json!(false))
        );

        let p3 = path(3).unwrap();
        let v = check_lemma_invert_d(
            &p3,
            &Orientation::default_for(&p3),
            &[2],
            &[p3.edge_index(0, 1).unwrap()],
        )
        .unwrap();
        assert!(v.holds());
        assert_eq!(v.witness["det"], 0);
    }

    #[test]
    fn unoriented_examples() {
        let v = check_lemma_invert_x(&cycle(3).unwrap(), &[0, 1, 2], &[0, 1, 2]).unwrap();
        assert!(v.holds());
        assert_eq!(v.witness["det"].as_i64().unwrap().abs(), 2);
        let v = check_lemma_invert_x(&cycle(4).unwrap(), &[0, 1, 2, 3], &[0, 1, 2, 3]).unwrap();
        assert!(v.holds());
        assert_eq!(v.witness["det"], 0);
        let v = check_lemma_invert_x(&path(3).unwrap(), &[0, 1], &[0, 1]).unwrap();
        assert!(v.holds());
        assert_eq!(v.witness["det"].as_i64().unwrap().abs(), 1);
    }

    #[test]
    fn malformed_selections() {
        let g = cycle(3).unwrap();
        assert_eq!(
            check_lemma_invert_x(&g, &[0], &[0, 1]),
            Err(CheckError::SizeMismatch { rows: 1, cols: 2 })
        );
        assert!(matches!(
            check_lemma_invert_x(&g, &[], &[]),
            Err(CheckError::SizeMismatch { .. })
        ));
        assert_eq!(
            check_lemma_invert_x(&g, &[7], &[0]),
            Err(CheckError::IndexOutOfRange(7))
        );
        let short = Orientation::new(vec![true]);
        assert!(matches!(
            check_lemma_invert_d(&g, &short, &[0], &[0]),
            Err(CheckError::Graph(_))
        ));
    }

    #[test]
    fn sweeps() {
        let v = sweep_lemma_invert_x(&complete_graph(4).unwrap(), 1);
        assert!(v.holds());
        assert_eq!(v.witness["mode"], "exhaustive");
        assert!(v.witness["invertible_pairs"].as_u64().unwrap() > 0);
        let g = random_connected(9, 0.4, 3).unwrap();
        for v in [sweep_lemma_invert_d(&g, 7), sweep_lemma_invert_x(&g, 7)] {
            assert!(v.holds(), "{}", v.witness);
            assert_eq!(v.witness["mode"], "random");
            assert_eq!(v.witness["pairs_checked"], RANDOM_PAIRS);
            assert!(v.witness["invertible_pairs"].as_u64().unwrap() > 0);
        }
        assert_eq!(
            sweep_lemma_invert_d(&Graph::empty(3).unwrap(), 0).status,
            Status::NotApplicable
        );
    }
}
