use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::json;

use super::{big, tree_count, ClaimId, Verdict, DISCONNECTED};
use crate::graph::Graph;
use crate::linalg::{
    char_poly, det, principal_full_rank_submatrix_gf2, rank_gf2, smith_normal_form, IntMatrix,
    IntPolynomial,
};
use crate::oracle::{
    coefficient_tables, spanning_tree_count_bruteforce, WeightedCount, MAX_ORACLE_EDGES,
};

/// `A(L(G)) + 2I = XᵀX`, entrywise.
pub fn check_eq1_shift(g: &Graph) -> Verdict {
    let claim = ClaimId::Eq1Shift;
    let Ok(x) = g.incidence_unoriented() else {
        return Verdict::not_applicable(claim, g, "graph has no edges");
    };
    let lhs = g
        .line_graph()
        .adjacency()
        .add(&IntMatrix::scalar(g.size(), 2));
    let rhs = x.transpose().mul(&x);
    let mismatch = (0..g.size())
        .flat_map(|i| (0..g.size()).map(move |j| (i, j)))
        .find(|&(i, j)| lhs.get(i, j) != rhs.get(i, j));
    let witness = match mismatch {
        None => json!({ "order": g.size() }),
        Some((i, j)) => json!({
            "row": i, "col": j,
            "shifted_adjacency": big(lhs.get(i, j)),
            "gram": big(rhs.get(i, j)),
        }),
    };
    Verdict::decide(claim, g, mismatch.is_none(), witness)
}

/// Indices `j = 1..len` where the table and the polynomial disagree.
fn coefficient_mismatches(table: &WeightedCount, p: &IntPolynomial, len: usize) -> Vec<usize> {
    (1..=len)
        .filter(|&j| table.get(j) != p.descending_coeff(j))
        .collect()
}

fn table_json(t: &WeightedCount) -> serde_json::Value {
    serde_json::Value::Array(t.values().iter().map(big).collect())
}

/// Weighted subgraph sums against the coefficients of `p_L`, `p_Q`, and of
/// `p_{L1}`, `p_{Q1}` with vertex 0 deleted.
pub fn check_coef_theorem(g: &Graph) -> Verdict {
    let claim = ClaimId::ThmCoef;
    let tables = match coefficient_tables(g, 0) {
        Ok(t) => t,
        Err(e) => return Verdict::not_applicable(claim, g, e.to_string()),
    };
    let n = g.order();
    let l = g.laplacian();
    let q = g.signless_laplacian();
    let poly = |m: &IntMatrix| char_poly(m).expect("square");
    let p_l = poly(&l);
    let p_q = poly(&q);
    let p_l1 = poly(&l.minor_matrix(0, 0).expect("order >= 1"));
    let p_q1 = poly(&q.minor_matrix(0, 0).expect("order >= 1"));

    let bad_l = coefficient_mismatches(&tables.laplacian, &p_l, n - 1);
    let bad_q = coefficient_mismatches(&tables.signless, &p_q, n);
    let bad_l1 = coefficient_mismatches(&tables.reduced_laplacian, &p_l1, n - 1);
    let bad_q1 = coefficient_mismatches(&tables.reduced_signless, &p_q1, n - 1);
    // p_L has no constant term: ℓ_n = 0 always.
    let l_constant_ok = p_l.coeff(0).is_zero();
    let ok = bad_l.is_empty()
        && bad_q.is_empty()
        && bad_l1.is_empty()
        && bad_q1.is_empty()
        && l_constant_ok;
    let witness = json!({
        "laplacian": table_json(&tables.laplacian),
        "signless": table_json(&tables.signless),
        "reduced_laplacian": table_json(&tables.reduced_laplacian),
        "reduced_signless": table_json(&tables.reduced_signless),
        "char_poly_laplacian": p_l.to_string(),
        "char_poly_signless": p_q.to_string(),
        "mismatches": {
            "laplacian": bad_l, "signless": bad_q,
            "reduced_laplacian": bad_l1, "reduced_signless": bad_q1,
        },
    });
    Verdict::decide(claim, g, ok, witness)
}

/// Full-rank principal submatrices mod 2 for `Q(G)` and `A(L(G))`.
pub fn check_principal(g: &Graph) -> Verdict {
    let claim = ClaimId::LemPrinc;
    let mut targets = vec![("signless", g.signless_laplacian())];
    if g.size() > 0 {
        targets.push(("line_adjacency", g.line_graph().adjacency()));
    }
    let mut ok = true;
    let mut witness = serde_json::Map::new();
    for (name, m) in targets {
        let rank = rank_gf2(&m);
        let entry = match principal_full_rank_submatrix_gf2(&m) {
            Ok(idx) => {
                let sub_rank = rank_gf2(&m.principal(&idx).expect("indices in range"));
                ok &= idx.len() == rank && sub_rank == rank;
                json!({ "rank": rank, "indices": idx, "submatrix_rank": sub_rank })
            }
            Err(e) => {
                ok = false;
                json!({ "rank": rank, "error": e.to_string() })
            }
        };
        witness.insert(name.into(), entry);
    }
    Verdict::decide(claim, g, ok, witness.into())
}

/// Binary rank of `A(L(G))` is `n − 1` for odd `n` and `n − 2` for even `n`.
pub fn check_doob(g: &Graph) -> Verdict {
    let claim = ClaimId::ThmDoob;
    if !g.is_connected() {
        return Verdict::not_applicable(claim, g, DISCONNECTED);
    }
    if g.size() == 0 {
        return Verdict::not_applicable(claim, g, "graph has no edges");
    }
    let n = g.order();
    let rank = rank_gf2(&g.line_graph().adjacency());
    let expected = if n % 2 == 1 { n - 1 } else { n - 2 };
    Verdict::decide(
        claim,
        g,
        rank == expected,
        json!({ "n": n, "rank_gf2": rank, "expected": expected }),
    )
}

/// `s_1 ⋯ s_{n−1} = τ` for the Smith invariants of `L`, with rank `n − 1`.
pub fn check_snf_tau(g: &Graph) -> Verdict {
    let claim = ClaimId::SnfTau;
    if !g.is_connected() {
        return Verdict::not_applicable(claim, g, DISCONNECTED);
    }
    let snf = smith_normal_form(&g.laplacian());
    let tau = tree_count(g);
    let product = snf.product();
    let ok = snf.rank() == g.order() - 1 && product == tau;
    let witness = json!({
        "invariant_factors": snf.invariant_factors.iter().map(big).collect::<Vec<_>>(),
        "rank": snf.rank(),
        "product": big(&product),
        "tau": big(&tau),
    });
    Verdict::decide(claim, g, ok, witness)
}

/// Every signed cofactor of `L` equals `τ`, the coefficient `ℓ_{n−1}` equals
/// `(−1)^{n−1} n τ`, and brute-force enumeration (when within the cap) agrees.
pub fn check_matrix_tree(g: &Graph) -> Verdict {
    let claim = ClaimId::MatrixTree;
    if !g.is_connected() {
        return Verdict::not_applicable(claim, g, DISCONNECTED);
    }
    let n = g.order();
    let l = g.laplacian();
    let tau = tree_count(g);
    let mut bad_cofactors = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let minor = det(&l.minor_matrix(i, j).expect("in range")).expect("square");
            let cofactor = if (i + j) % 2 == 0 { minor } else { -minor };
            if cofactor != tau {
                bad_cofactors.push(json!([i, j, big(&cofactor)]));
            }
        }
    }
    let p_l = char_poly(&l).expect("square");
    let linear = p_l.descending_coeff(n - 1);
    let sign = if (n - 1).is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    };
    let expected_linear = sign * BigInt::from(n) * &tau;
    let brute = if g.size() <= MAX_ORACLE_EDGES {
        Some(spanning_tree_count_bruteforce(g).expect("within cap"))
    } else {
        None
    };
    let ok = bad_cofactors.is_empty()
        && linear == expected_linear
        && brute.as_ref().is_none_or(|b| *b == tau);
    let witness = json!({
        "tau": big(&tau),
        "cofactor_mismatches": bad_cofactors,
        "linear_coefficient": big(&linear),
        "expected_linear_coefficient": big(&expected_linear),
        "bruteforce": brute.as_ref().map(big),
    });
    Verdict::decide(claim, g, ok, witness)
}
