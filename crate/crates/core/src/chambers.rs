//! Genus-0 chamber polynomials, walls, wall-crossing and the vanishing
//! classifier.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, LazyLock, RwLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{binom2, LinForm, Poly, Rational};
use crate::cover::{Problem, ProblemError};
use crate::enumerate::{count_linear_extensions, enumerate_types, solve_weights_tree, CombinatorialType};
use crate::oracle::genus_zero_mult;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChamberError {
    #[error(transparent)]
    Problem(#[from] ProblemError),
    #[error("only genus 0 is supported, got genus {0}")]
    Genus(u32),
    #[error("reference point lies on the walls {}", list(.0))]
    OnWall(Vec<Wall>),
    #[error("points do not flank {wall}: need {wall} > 0 at the first point and < 0 at the second")]
    NotFlanking { wall: Wall },
    #[error("points straddle further walls {}", list(.0))]
    Straddles(Vec<Wall>),
    #[error("invalid wall subset {0:?}")]
    BadSubset(Vec<usize>),
    #[error("no generic flanking points found for {0}")]
    NoFlankingPoints(Wall),
}

fn list(walls: &[Wall]) -> String {
    walls.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(", ")
}

/// A wall `delta_I = sum_{i in I} x_i - k(|I| - 1) = 0`, stored with the
/// representative of `{I, I^c}` that contains the first marking.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Wall {
    subset: Vec<usize>,
    form: LinForm,
}

impl Wall {
    /// `subset` is 0-based. On the degree hyperplane the forms of `I` and
    /// `I^c` differ by sign, so the complement is replaced when needed.
    pub fn new(subset: &[usize], n: usize) -> Result<Wall, ChamberError> {
        let mut s = subset.to_vec();
        s.sort_unstable();
        s.dedup();
        if s.len() != subset.len() || s.iter().any(|&i| i >= n) || s.len() < 2 || s.len() + 2 > n {
            return Err(ChamberError::BadSubset(subset.iter().map(|i| i + 1).collect()));
        }
        if s[0] != 0 {
            s = (0..n).filter(|i| !s.contains(i)).collect();
        }
        let mut form = LinForm::k_term(-(s.len() as i64 - 1));
        for &i in &s {
            form.add_var(i, 1);
        }
        Ok(Wall { subset: s, form })
    }

    /// 0-based indices.
    pub fn subset(&self) -> &[usize] {
        &self.subset
    }

    pub fn form(&self) -> &LinForm {
        &self.form
    }

    pub fn value_at(&self, x: &[i64], k: i64) -> i64 {
        self.form.eval(x, k).expect("wall form indexes the profile")
    }
}

impl fmt::Display for Wall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.subset.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "{{{}}}: {}", names.join(","), self.form)
    }
}

#[derive(Serialize, Deserialize)]
struct WallJson {
    subset: Vec<usize>,
    form: LinForm,
}

impl Serialize for Wall {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        WallJson {
            subset: self.subset.iter().map(|i| i + 1).collect(),
            form: self.form.clone(),
        }
        .serialize(s)
    }
}

/// All walls for `n` markings, ordered by subset. The forms keep `k`
/// symbolic.
pub fn walls(n: usize) -> Vec<Wall> {
    if n < 4 {
        return Vec::new();
    }
    let mut out = Vec::new();
    // subsets containing marking 0, encoded on the other n - 1 markings
    for mask in 0u32..(1 << (n - 1)) {
        let subset: Vec<usize> = std::iter::once(0)
            .chain((1..n).filter(|i| mask & (1 << (i - 1)) != 0))
            .collect();
        if subset.len() >= 2 && subset.len() + 2 <= n {
            out.push(Wall::new(&subset, n).expect("subset sizes checked"));
        }
    }
    out.sort();
    out
}

/// A region of profile space cut out by the signs of all wall forms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Chamber {
    pub reference: Vec<i64>,
    /// `true` where the wall form is positive at the reference point.
    pub signs: Vec<(Wall, bool)>,
}

impl Chamber {
    pub fn at(k: i64, x: &[i64]) -> Result<Chamber, ChamberError> {
        let mut on = Vec::new();
        let mut signs = Vec::new();
        for w in walls(x.len()) {
            let v = w.value_at(x, k);
            if v == 0 {
                on.push(w);
            } else {
                signs.push((w, v > 0));
            }
        }
        if !on.is_empty() {
            return Err(ChamberError::OnWall(on));
        }
        Ok(Chamber {
            reference: x.to_vec(),
            signs,
        })
    }

    pub fn contains(&self, k: i64, x: &[i64]) -> bool {
        x.len() == self.reference.len() && self.signs.iter().all(|(w, pos)| (w.value_at(x, k) > 0) == *pos && w.value_at(x, k) != 0)
    }
}

type TypeKey = (usize, Vec<u32>);

static TREE_TYPES: LazyLock<RwLock<HashMap<TypeKey, Arc<Vec<CombinatorialType>>>>> =
    LazyLock::new(|| RwLock::new(HashMap::new()));

/// Genus-0 types only depend on `n` and `e`, so they are shared between
/// the many chambers of one problem shape.
fn genus_zero_types(p: &Problem) -> Arc<Vec<CombinatorialType>> {
    let key = (p.n(), p.e.clone());
    if let Some(t) = TREE_TYPES.read().expect("type cache poisoned").get(&key) {
        return t.clone();
    }
    let types = Arc::new(enumerate_types(p));
    TREE_TYPES
        .write()
        .expect("type cache poisoned")
        .entry(key)
        .or_insert(types)
        .clone()
}

fn check_genus_zero(p: &Problem) -> Result<(), ChamberError> {
    if p.g != 0 {
        return Err(ChamberError::Genus(p.g));
    }
    p.validate()?;
    Ok(())
}

/// The polynomial computing `H_0(x, e)` on the chamber of `p.x`, in normal
/// form on the degree hyperplane (`x_n` eliminated).
pub fn chamber_polynomial(p: &Problem) -> Result<Poly, ChamberError> {
    check_genus_zero(p)?;
    Chamber::at(p.k, &p.x)?;
    Ok(chamber_polynomial_unchecked(p))
}

fn chamber_polynomial_unchecked(p: &Problem) -> Poly {
    let n = p.n();
    let mut total = Poly::zero(n);
    for t in genus_zero_types(p).iter() {
        let tw = solve_weights_tree(p, t);
        let pairs: Vec<(usize, usize)> = tw.edges.iter().map(|&(a, b, _)| (a, b)).collect();
        let ext = count_linear_extensions(t.num_vertices(), &pairs);
        if ext == 0 {
            continue;
        }
        let mut scalar = Rational::from(ext);
        for v in 0..t.num_vertices() {
            let psi: Vec<u32> = t.ends[v].iter().map(|&i| p.e[i]).collect();
            scalar *= genus_zero_mult(t.valence(v), &psi);
        }
        let mut term = Poly::constant(n, scalar);
        for (_, _, form) in &tw.edges {
            term = term.mul(&form.to_poly(n, p.k));
        }
        total = total.add(&term);
    }
    total.restrict_to_degree_hyperplane(p.k, 0)
}

fn check_flanking(k: i64, wall: &Wall, plus: &[i64], minus: &[i64]) -> Result<(), ChamberError> {
    if wall.value_at(plus, k) <= 0 || wall.value_at(minus, k) >= 0 {
        return Err(ChamberError::NotFlanking { wall: wall.clone() });
    }
    let mut on = Vec::new();
    let mut straddled = Vec::new();
    for w in walls(plus.len()) {
        if &w == wall {
            continue;
        }
        let (a, b) = (w.value_at(plus, k), w.value_at(minus, k));
        if a == 0 || b == 0 {
            on.push(w);
        } else if (a > 0) != (b > 0) {
            straddled.push(w);
        }
    }
    if !on.is_empty() {
        return Err(ChamberError::OnWall(on));
    }
    if !straddled.is_empty() {
        return Err(ChamberError::Straddles(straddled));
    }
    Ok(())
}

/// Chamber polynomial at `plus` minus the one at `minus`, where the two
/// points lie on the positive and negative side of `wall` and on the same
/// side of every other wall.
pub fn wall_crossing(k: i64, e: &[u32], wall: &Wall, plus: &[i64], minus: &[i64]) -> Result<Poly, ChamberError> {
    let pp = Problem::new(0, k, plus.to_vec(), e.to_vec());
    let pm = Problem::new(0, k, minus.to_vec(), e.to_vec());
    check_genus_zero(&pp)?;
    check_genus_zero(&pm)?;
    check_flanking(k, wall, plus, minus)?;
    Ok(chamber_polynomial_unchecked(&pp).sub(&chamber_polynomial_unchecked(&pm)))
}

/// Closed form of the same difference:
/// `binom(r; r1, r2) * delta * H_0(x_I, -delta) * H_0(x_{I^c}, delta)`,
/// the factors being chamber polynomials of the two halves at the point
/// induced by `plus`, with the cut end appended as last marking.
pub fn wall_crossing_formula(k: i64, e: &[u32], wall: &Wall, plus: &[i64]) -> Result<Poly, ChamberError> {
    let n = plus.len();
    let p = Problem::new(0, k, plus.to_vec(), e.to_vec());
    check_genus_zero(&p)?;
    let minus_check = wall.value_at(plus, k);
    if minus_check <= 0 {
        return Err(ChamberError::NotFlanking { wall: wall.clone() });
    }
    let inside: Vec<usize> = wall.subset.clone();
    let outside: Vec<usize> = (0..n).filter(|i| !inside.contains(i)).collect();
    let psi_of = |s: &[usize]| s.iter().map(|&i| e[i] as i64).sum::<i64>();
    let r = n as i64 - 2 - p.psi_total();
    let r1 = inside.len() as i64 - 1 - psi_of(&inside);
    let r2 = outside.len() as i64 - 1 - psi_of(&outside);
    let coeff = binom2(r, r1, r2);
    if coeff.is_zero() || r1 < 1 || r2 < 1 {
        return Ok(Poly::zero(n));
    }
    let delta = wall.form.to_poly(n, k);
    let delta_value = minus_check;
    let half = |side: &[usize], sign: i64| -> Poly {
        let mut x: Vec<i64> = side.iter().map(|&i| plus[i]).collect();
        x.push(sign * delta_value);
        let mut es: Vec<u32> = side.iter().map(|&i| e[i]).collect();
        es.push(0);
        let sub = Problem::new(0, k, x, es);
        let poly = chamber_polynomial_unchecked(&sub);
        let mut subs: Vec<Poly> = side.iter().map(|&i| Poly::var(n, i)).collect();
        subs.push(delta.scale(&Rational::from(sign)));
        poly.compose(&subs)
    };
    let product = delta
        .mul(&half(&inside, -1))
        .mul(&half(&outside, 1))
        .scale(&coeff);
    Ok(product.restrict_to_degree_hyperplane(k, 0))
}

/// Deterministic search for integer points `x+`, `x-` flanking `wall` and
/// agreeing in sign on every other wall.
pub fn flanking_points(n: usize, k: i64, wall: &Wall) -> Result<(Vec<i64>, Vec<i64>), ChamberError> {
    let inside = wall.subset.clone();
    let outside: Vec<usize> = (0..n).filter(|i| !inside.contains(i)).collect();
    let (a, b) = (inside[0], outside[0]);
    let others: Vec<Wall> = walls(n).into_iter().filter(|w| w != wall).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ n as u64);
    let range = 4 * n as i64 + 2 * k.abs();
    for _ in 0..10_000 {
        // a point on the wall, with every other wall form at least 2 away
        // from zero so a unit step across the wall keeps their signs
        let mut y: Vec<i64> = (0..n).map(|_| rng.gen_range(-range..=range)).collect();
        let rest: i64 = inside.iter().filter(|&&i| i != a).map(|&i| y[i]).sum();
        y[a] = k * (inside.len() as i64 - 1) - rest;
        let others_sum: i64 = (0..n).filter(|&i| i != b).map(|i| y[i]).sum();
        y[b] = k * (n as i64 - 2) - others_sum;
        if others.iter().all(|w| w.value_at(&y, k).abs() >= 2) {
            let mut plus = y.clone();
            plus[a] += 1;
            plus[b] -= 1;
            let mut minus = y;
            minus[a] -= 1;
            minus[b] += 1;
            return Ok((plus, minus));
        }
    }
    Err(ChamberError::NoFlankingPoints(wall.clone()))
}

/// Both sides of the wall-crossing identity at one pair of flanking points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WallCrossing {
    pub wall: Wall,
    pub plus: Vec<i64>,
    pub minus: Vec<i64>,
    pub computed: Poly,
    pub formula: Poly,
}

impl WallCrossing {
    pub fn agrees(&self) -> bool {
        self.computed == self.formula
    }
}

/// Wall-crossing at automatically chosen flanking points.
pub fn cross_wall(k: i64, e: &[u32], wall: &Wall) -> Result<WallCrossing, ChamberError> {
    let (plus, minus) = flanking_points(e.len(), k, wall)?;
    cross_wall_at(k, e, wall, plus, minus)
}

pub fn cross_wall_at(k: i64, e: &[u32], wall: &Wall, plus: Vec<i64>, minus: Vec<i64>) -> Result<WallCrossing, ChamberError> {
    let computed = wall_crossing(k, e, wall, &plus, &minus)?;
    let formula = wall_crossing_formula(k, e, wall, &plus)?;
    Ok(WallCrossing {
        wall: wall.clone(),
        plus,
        minus,
        computed,
        formula,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Vanishing {
    Zero,
    Positive,
}

impl fmt::Display for Vanishing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vanishing::Zero => write!(f, "Zero"),
            Vanishing::Positive => write!(f, "Positive"),
        }
    }
}

/// Decides whether `H_0(x, e)` vanishes without enumerating covers.
pub fn classify(p: &Problem) -> Result<Vanishing, ChamberError> {
    check_genus_zero(p)?;
    let n = p.n() as i64;
    if p.k == 0 {
        let zero = p.x.iter().all(|&v| v == 0) && n > p.psi_total() + 3;
        return Ok(if zero { Vanishing::Zero } else { Vanishing::Positive });
    }
    if p.k % 2 != 0 {
        return Ok(Vanishing::Positive);
    }
    let half = p.k / 2;
    let mut slack = Vec::with_capacity(p.x.len());
    for (&x, &e) in p.x.iter().zip(&p.e) {
        if x % half != 0 || x / half <= 0 {
            return Ok(Vanishing::Positive);
        }
        // the condition on I reads sum_I (e_i - m_i + 1) < 1
        slack.push(e as i64 - x / half + 1);
    }
    Ok(if subset_sum_reaches(&slack, 1) {
        Vanishing::Positive
    } else {
        Vanishing::Zero
    })
}

/// Whether some nonempty subset of `terms` sums to at least `target`,
/// by depth-first scan pruned with the best remaining gain.
fn subset_sum_reaches(terms: &[i64], target: i64) -> bool {
    let mut sorted = terms.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    // best[i] = sum of the positive terms from i on
    let mut best = vec![0; sorted.len() + 1];
    for i in (0..sorted.len()).rev() {
        best[i] = best[i + 1] + sorted[i].max(0);
    }
    fn dfs(i: usize, sum: i64, nonempty: bool, terms: &[i64], best: &[i64], target: i64) -> bool {
        if nonempty && sum >= target {
            return true;
        }
        if i == terms.len() {
            return false;
        }
        // a nonempty subset needs at least one more element if empty so far
        let bound = sum + if nonempty { best[i] } else { best[i].max(terms[i]) };
        if bound < target {
            return false;
        }
        dfs(i + 1, sum + terms[i], true, terms, best, target) || dfs(i + 1, sum, nonempty, terms, best, target)
    }
    dfs(0, 0, false, &sorted, &best, target)
}
