//! Genus-0 intersection numbers of psi- and kappa-classes, and the
//! descendant recursion that trades one psi-class for kappa and boundary
//! terms.

use std::collections::HashMap;
use std::sync::{LazyLock, RwLock};

use thiserror::Error;

use crate::arith::{binom2, multinomial, Rational};
use crate::cover::{Problem, ProblemError};
use crate::enumerate::two_vertex_covers;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecursionError {
    #[error(transparent)]
    Problem(#[from] ProblemError),
    #[error("the recursion is only evaluated in genus 0, got genus {0}")]
    Genus(u32),
    #[error("marking {marking} has no psi-class to remove")]
    NoPsi { marking: usize },
    #[error("marking {marking} out of range for {n} markings")]
    Marking { marking: usize, n: usize },
    #[error("dimension mismatch: |e| + f = {found} but n - 3 = {expected}")]
    Dimension { found: i64, expected: i64 },
}

/// `int_{M_{0,n}} prod psi_i^{e_i}`: the multinomial `(n-3)!/prod e_i!`
/// when `|e| = n - 3`, else zero.
pub fn psi_integral(n: usize, e: &[u32]) -> Rational {
    assert_eq!(e.len(), n, "one exponent per marking");
    let total: i64 = e.iter().map(|&v| v as i64).sum();
    if n < 3 || total != n as i64 - 3 {
        return Rational::zero();
    }
    multinomial(e)
}

type MemoKey = (Vec<u32>, u32);

static KAPPA_MEMO: LazyLock<RwLock<HashMap<MemoKey, Rational>>> = LazyLock::new(|| RwLock::new(HashMap::new()));

/// `int_{M_{0,n}} prod psi_i^{e_i} kappa_1^f` with `n = e.len()`.
///
/// Each kappa_1 is removed by adding a marking: kappa_1 pulls back to
/// `kappa_1 - psi_{n+1}` and pushes forward from `psi_{n+1}^2`.
pub fn psi_kappa_integral(e: &[u32], f: u32) -> Rational {
    let n = e.len();
    let total: i64 = e.iter().map(|&v| v as i64).sum::<i64>() + f as i64;
    if n < 3 || total != n as i64 - 3 {
        return Rational::zero();
    }
    if f == 0 {
        return multinomial(e);
    }
    let mut key: Vec<u32> = e.iter().copied().filter(|&v| v > 0).collect();
    key.sort_unstable();
    // zeros are recovered from n
    key.push(n as u32);
    let memo_key = (key, f);
    if let Some(v) = KAPPA_MEMO.read().expect("memo lock poisoned").get(&memo_key) {
        return v.clone();
    }
    let mut value = Rational::zero();
    let mut extended = e.to_vec();
    extended.push(0);
    for j in 0..f {
        extended[n] = j + 2;
        let term = psi_kappa_integral(&extended, f - 1 - j) * binom2(f as i64 - 1, j as i64, (f - 1 - j) as i64);
        if j % 2 == 0 {
            value += term;
        } else {
            value -= &term;
        }
    }
    KAPPA_MEMO
        .write()
        .expect("memo lock poisoned")
        .insert(memo_key, value.clone());
    value
}

/// Right-hand side of the genus-0 recursion
/// `x_s (n-2) H(x, e, f) = k H(x, e - d_s, f + 1) + sum_pi rho(pi, s) mult(pi) Cont`,
/// where `pi` runs over two-vertex covers and `Cont` is the product of the
/// vertex integrals with the kappa power split binomially. `s` is 0-based.
pub fn recursion_rhs(p: &Problem, s: usize, f: u32) -> Result<Rational, RecursionError> {
    if p.g != 0 {
        return Err(RecursionError::Genus(p.g));
    }
    let n = p.n();
    if p.e.len() != n {
        return Err(ProblemError::LengthMismatch { x: n, e: p.e.len() }.into());
    }
    if s >= n {
        return Err(RecursionError::Marking { marking: s + 1, n });
    }
    if p.e[s] == 0 {
        return Err(RecursionError::NoPsi { marking: s + 1 });
    }
    let found = p.psi_total() + f as i64;
    if found != n as i64 - 3 {
        return Err(RecursionError::Dimension {
            found,
            expected: n as i64 - 3,
        });
    }
    let plain = Problem::plain(0, p.k, p.x.clone());
    plain.validate()?;

    let mut es = p.e.clone();
    es[s] -= 1;
    let mut rhs = Rational::from(p.k) * psi_kappa_integral(&es, f + 1);

    for cover in two_vertex_covers(&plain) {
        let weight = cover.edges[0].weight.value_at(&plain);
        let mut cont = Rational::one();
        let mut fs = [0i64; 2];
        for (side, vertex) in cover.vertices.iter().enumerate() {
            // markings of the vertex plus the edge slot, which has no psi
            let mut local: Vec<u32> = vertex.ends.iter().map(|&i| es[i]).collect();
            local.push(0);
            let psi: i64 = local.iter().map(|&v| v as i64).sum();
            fs[side] = local.len() as i64 - 3 - psi;
            if fs[side] < 0 {
                cont = Rational::zero();
                break;
            }
            cont *= psi_kappa_integral(&local, fs[side] as u32);
        }
        if cont.is_zero() {
            continue;
        }
        cont *= binom2(f as i64, fs[0], fs[1]);
        let n_left = cover.vertices[0].ends.len() as i64 + 1;
        let n_right = cover.vertices[1].ends.len() as i64 + 1;
        let rho = if cover.vertices[0].ends.contains(&s) {
            n_right - 2
        } else {
            -(n_left - 2)
        };
        rhs += Rational::from(rho * weight) * cont;
    }
    Ok(rhs)
}

/// Left-hand side `x_s (n - 2) H(x, e, f)` of the same identity.
pub fn recursion_lhs(p: &Problem, s: usize, f: u32) -> Rational {
    Rational::from(p.x[s] * p.euler()) * psi_kappa_integral(&p.e, f)
}
