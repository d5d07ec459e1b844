use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::{big, integer_spectrum, spectrum_json, tree_count, ClaimId, Verdict, DISCONNECTED};
use crate::graph::Graph;
use crate::linalg::IntegerSpectrum;
use crate::oracle::{factor_tree_count, TreeCountFactored};

fn factored_tau(g: &Graph) -> TreeCountFactored {
    factor_tree_count(&tree_count(g)).expect("connected graphs have a spanning tree")
}

fn tau_json(f: &TreeCountFactored) -> Value {
    json!({ "tau": big(&f.tau), "t": f.t, "s": big(&f.s) })
}

/// Largest multiplicity among `(λ, mult)` pairs; the first such pair wins ties.
fn most_repeated(pairs: &[(BigInt, usize)]) -> Option<&(BigInt, usize)> {
    pairs
        .iter()
        .fold(None, |best: Option<&(BigInt, usize)>, p| match best {
            Some(b) if b.1 >= p.1 => Some(b),
            _ => Some(p),
        })
}

fn pairs_json(pairs: &[(BigInt, usize)]) -> Value {
    Value::Array(pairs.iter().map(|(l, m)| json!([big(l), m])).collect())
}

/// Checks every multiplicity against `bound`. The witness records the most
/// repeated eigenvalue; tight when it meets the bound.
fn bounded_multiplicity(
    claim: ClaimId,
    g: &Graph,
    evens: Vec<(BigInt, usize)>,
    bound: usize,
    mut witness: serde_json::Map<String, Value>,
) -> Verdict {
    let ok = evens.iter().all(|(_, m)| *m <= bound);
    let top = most_repeated(&evens);
    witness.insert("bound".into(), bound.into());
    witness.insert("even_eigenvalues".into(), pairs_json(&evens));
    witness.insert("lambda".into(), top.map_or(Value::Null, |(l, _)| big(l)));
    witness.insert("multiplicity".into(), top.map_or(0, |(_, m)| *m).into());
    let tight = top.is_some_and(|(_, m)| *m == bound);
    Verdict::decide(claim, g, ok, witness.into()).with_tight(tight)
}

fn even_pairs(s: &IntegerSpectrum) -> Vec<(BigInt, usize)> {
    s.even().map(|(l, m)| (l.clone(), m)).collect()
}

/// Even eigenvalues `λ ≠ −2` of `A(L(G))` with multiplicities, read off the
/// nonzero even eigenvalues `λ + 2` of `Q(G)`.
pub(crate) fn line_even_eigenvalues(q: &IntegerSpectrum) -> Vec<(BigInt, usize)> {
    q.even()
        .filter(|(mu, _)| !mu.is_zero())
        .map(|(mu, m)| (mu - 2, m))
        .collect()
}

/// Every even integer eigenvalue of `Q` has multiplicity at most `t + 1`,
/// where `τ = 2^t s`.
pub fn check_tplus1_q(g: &Graph) -> Verdict {
    let claim = ClaimId::ThmTplus1Q;
    if !g.is_connected() {
        return Verdict::not_applicable(claim, g, DISCONNECTED);
    }
    let f = factored_tau(g);
    let q = integer_spectrum(&g.signless_laplacian());
    let mut w = serde_json::Map::new();
    w.insert("tree_count".into(), tau_json(&f));
    w.insert("q_spectrum".into(), spectrum_json(&q));
    bounded_multiplicity(claim, g, even_pairs(&q), f.t as usize + 1, w)
}

fn line_bound_check(g: &Graph, claim: ClaimId, with_rank_term: bool) -> Verdict {
    if !g.is_connected() {
        return Verdict::not_applicable(claim, g, DISCONNECTED);
    }
    if g.size() == 0 {
        return Verdict::not_applicable(claim, g, "graph has no edges");
    }
    let f = factored_tau(g);
    let q = integer_spectrum(&g.signless_laplacian());
    let (n, e) = (g.order(), g.size());
    let t_bound = f.t as usize + 1;
    // Connected graphs have e ≥ n − 1, so this never underflows.
    let rank_bound = e + 2 - 2 * n.div_ceil(2);
    let bound = if with_rank_term {
        t_bound.min(rank_bound)
    } else {
        t_bound
    };
    let mut w = serde_json::Map::new();
    w.insert("tree_count".into(), tau_json(&f));
    w.insert("t_plus_1".into(), t_bound.into());
    w.insert("rank_term".into(), rank_bound.into());
    bounded_multiplicity(claim, g, line_even_eigenvalues(&q), bound, w)
}

/// Even eigenvalues `λ ≠ −2` of `A(L(G))` have multiplicity at most `t + 1`.
pub fn check_tplus1_line(g: &Graph) -> Verdict {
    line_bound_check(g, ClaimId::ThmTplus1Line, false)
}

/// Even eigenvalues `λ ≠ −2` of `A(L(G))` have multiplicity at most
/// `min{t + 1, e − 2⌈n/2⌉ + 2}`.
pub fn check_min_bound(g: &Graph) -> Verdict {
    line_bound_check(g, ClaimId::ThmMinBound, true)
}

fn residue_class(s: &IntegerSpectrum, modulus: i64, residue: i64) -> Vec<(BigInt, usize)> {
    let m = BigInt::from(modulus);
    s.iter()
        .filter(|(l, _)| l.mod_floor(&m) == BigInt::from(residue))
        .map(|(l, k)| (l.clone(), k))
        .collect()
}

/// For connected `G` of odd order with `4 ∤ τ`: `L` has no nonzero even
/// integer eigenvalue, `Q` has no integer eigenvalue `≡ 2 (mod 4)`, and `Q`
/// has at most one eigenvalue `≡ 0 (mod 4)`, which is simple.
pub fn check_nodd(g: &Graph) -> Verdict {
    let claim = ClaimId::ThmNodd;
    if !g.is_connected() {
        return Verdict::not_applicable(claim, g, DISCONNECTED);
    }
    if g.order().is_multiple_of(2) {
        return Verdict::not_applicable(claim, g, "order is even");
    }
    let f = factored_tau(g);
    if f.t >= 2 {
        return Verdict::not_applicable(claim, g, "tree count is divisible by 4");
    }
    let l = integer_spectrum(&g.laplacian());
    let q = integer_spectrum(&g.signless_laplacian());
    let l_even_nonzero: Vec<_> = even_pairs(&l)
        .into_iter()
        .filter(|(x, _)| !x.is_zero())
        .collect();
    let q_two = residue_class(&q, 4, 2);
    let q_zero = residue_class(&q, 4, 0);
    let clause_iii = q_zero.len() <= 1 && q_zero.iter().all(|(_, m)| *m == 1);
    let ok = l_even_nonzero.is_empty() && q_two.is_empty() && clause_iii;
    let witness = json!({
        "tree_count": tau_json(&f),
        "l_spectrum": spectrum_json(&l),
        "q_spectrum": spectrum_json(&q),
        "l_nonzero_even": pairs_json(&l_even_nonzero),
        "q_2_mod_4": pairs_json(&q_two),
        "q_0_mod_4": pairs_json(&q_zero),
    });
    Verdict::decide(claim, g, ok, witness)
}

/// A repeated even integer eigenvalue of `L` or `Q` forces `4 | τ`.
pub fn check_mult2(g: &Graph) -> Verdict {
    let claim = ClaimId::ThmMult2;
    if !g.is_connected() {
        return Verdict::not_applicable(claim, g, DISCONNECTED);
    }
    let f = factored_tau(g);
    let l = integer_spectrum(&g.laplacian());
    let q = integer_spectrum(&g.signless_laplacian());
    let repeated = |s: &IntegerSpectrum| -> Vec<(BigInt, usize)> {
        even_pairs(s).into_iter().filter(|(_, m)| *m >= 2).collect()
    };
    let (rl, rq) = (repeated(&l), repeated(&q));
    let premise = !rl.is_empty() || !rq.is_empty();
    let ok = !premise || f.t >= 2;
    let witness = json!({
        "tree_count": tau_json(&f),
        "l_repeated_even": pairs_json(&rl),
        "q_repeated_even": pairs_json(&rq),
        "premise": premise,
    });
    Verdict::decide(claim, g, ok, witness)
}

/// For connected unicyclic `G`: line-graph nullity 2 implies the cycle length
/// is divisible by 4. The nullity is the multiplicity of 2 in `Q(G)`.
pub fn check_unicyclic_corollary(g: &Graph) -> Verdict {
    let claim = ClaimId::CorUnicyclic;
    let Ok(cycle_len) = g.cycle_length_of_unicyclic() else {
        return Verdict::not_applicable(claim, g, "graph is not connected unicyclic");
    };
    let q = integer_spectrum(&g.signless_laplacian());
    let nullity = q.multiplicity_of(2);
    let ok = nullity != 2 || cycle_len % 4 == 0;
    let witness = json!({
        "cycle_length": cycle_len,
        "line_nullity": nullity,
        "q_spectrum": spectrum_json(&q),
    });
    Verdict::decide(claim, g, ok, witness)
}

/// For connected `G` with `τ = 2^t s`: (i) if `n` is odd, no nonzero integer
/// eigenvalue of `L` is divisible by `2^{max(1,t)}`; (ii) an integer
/// eigenvalue `2^{t'} s'` (`t' ≥ 1`) of multiplicity at least 2 forces
/// `2^{t'+1} | τ`.
pub fn check_general_laplacian(g: &Graph) -> Verdict {
    let claim = ClaimId::ThmGeneralL;
    if !g.is_connected() {
        return Verdict::not_applicable(claim, g, DISCONNECTED);
    }
    let f = factored_tau(g);
    let l = integer_spectrum(&g.laplacian());
    let odd_order = g.order() % 2 == 1;

    let clause_i_violations: Vec<(BigInt, usize)> = if odd_order {
        let divisor = BigInt::one() << f.t.max(1);
        l.iter()
            .filter(|(x, _)| !x.is_zero() && x.is_multiple_of(&divisor))
            .map(|(x, m)| (x.clone(), m))
            .collect()
    } else {
        Vec::new()
    };
    let mut clause_ii = Vec::new();
    let mut clause_ii_violations = Vec::new();
    for (x, m) in l.iter() {
        if x.is_zero() || x.is_odd() || m < 2 {
            continue;
        }
        let t_prime = x.trailing_zeros().expect("nonzero");
        let needed = BigInt::one() << (t_prime + 1);
        let entry = json!([big(x), m, t_prime]);
        if !f.tau.is_multiple_of(&needed) {
            clause_ii_violations.push(entry.clone());
        }
        clause_ii.push(entry);
    }
    let ok = clause_i_violations.is_empty() && clause_ii_violations.is_empty();
    let witness = json!({
        "tree_count": tau_json(&f),
        "l_spectrum": spectrum_json(&l),
        "clause_i_checked": odd_order,
        "clause_i_violations": pairs_json(&clause_i_violations),
        "clause_ii_cases": clause_ii,
        "clause_ii_violations": clause_ii_violations,
    });
    Verdict::decide(claim, g, ok, witness)
}
