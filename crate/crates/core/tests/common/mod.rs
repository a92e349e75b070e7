#![allow(dead_code)]

use itertools::Itertools;
use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::Rng;

use srujac::constructions::{gen_family, FamilySpec};
use srujac::eisenstein::{Eisenstein, SixthRoot};
use srujac::hmatrix::{apply_op, EquivalenceOp};
use srujac::matrix::MatrixE;

pub fn e(a: i64, b: i64) -> Eisenstein {
    Eisenstein::new(a, b)
}

pub fn family(spec: &str) -> MatrixE {
    gen_family(spec.parse::<FamilySpec>().unwrap()).unwrap().into_matrix()
}

/// The four families the property suite runs on.
pub fn property_families() -> Vec<(&'static str, MatrixE)> {
    ["u24", "ag23", "t_r:3", "whirl:3"]
        .into_iter()
        .map(|s| (s, family(s)))
        .collect()
}

pub fn random_op(rng: &mut StdRng, m: &MatrixE) -> EquivalenceOp {
    let (rows, cols) = m.shape();
    loop {
        match rng.gen_range(0..5) {
            0 => {
                return EquivalenceOp::ScaleRow {
                    row: rng.gen_range(0..rows),
                    unit: SixthRoot::new(rng.gen_range(0..6)),
                }
            }
            1 => {
                return EquivalenceOp::ScaleCol {
                    col: rng.gen_range(0..cols),
                    unit: SixthRoot::new(rng.gen_range(0..6)),
                }
            }
            2 => return EquivalenceOp::SwapRows(rng.gen_range(0..rows), rng.gen_range(0..rows)),
            3 => return EquivalenceOp::SwapCols(rng.gen_range(0..cols), rng.gen_range(0..cols)),
            _ => {
                let nonzero: Vec<(usize, usize)> = (0..rows)
                    .cartesian_product(0..cols)
                    .filter(|&(i, j)| !num_traits::Zero::is_zero(&m[(i, j)]))
                    .collect();
                if nonzero.is_empty() {
                    continue;
                }
                let (row, col) = nonzero[rng.gen_range(0..nonzero.len())];
                return EquivalenceOp::Pivot { row, col };
            }
        }
    }
}

/// Applies a random sequence of 1..=len operations, then conjugates with
/// probability 1/2.
pub fn random_equivalent(rng: &mut StdRng, m: &MatrixE, len: usize) -> (MatrixE, Vec<EquivalenceOp>, bool) {
    let mut out = m.clone();
    let mut ops = vec![];
    for _ in 0..rng.gen_range(1..=len) {
        let op = random_op(rng, &out);
        out = apply_op(&out, &op).unwrap();
        ops.push(op);
    }
    let conj = rng.gen_bool(0.5);
    if conj {
        out = out.conj();
    }
    (out, ops, conj)
}

/// Spanning trees by checking every (V-1)-subset of edges for acyclicity.
pub fn spanning_trees(vertices: usize, edges: &[(usize, usize)]) -> usize {
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    edges
        .iter()
        .combinations(vertices - 1)
        .filter(|tree| {
            let mut parent: Vec<usize> = (0..vertices).collect();
            tree.iter().all(|&&(u, v)| {
                let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
                parent[ru] = rv;
                ru != rv
            })
        })
        .count()
}

pub fn fib(n: usize) -> BigInt {
    let (mut a, mut b) = (BigInt::from(0), BigInt::from(1));
    for _ in 0..n {
        let c = &a + &b;
        a = b;
        b = c;
    }
    a
}

fn int(k: usize) -> Eisenstein {
    Eisenstein::from_int(k as i64)
}

/// Closed-form SNF of the T_r Laplacian for r >= 3.
pub fn t_r_snf_formula(r: usize) -> Vec<Eisenstein> {
    let theta = e(1, 1);
    let rep = |k: usize| std::iter::repeat(int(r + 2)).take(k);
    let mut out: Vec<Eisenstein> = match r % 6 {
        1 | 3 => [int(1), int(1)]
            .into_iter()
            .chain(rep(r - 3))
            .chain([int(3 * r * (r + 2))])
            .collect(),
        5 => [int(1), int(1)]
            .into_iter()
            .chain(rep(r - 4))
            .chain([&theta * &int(r + 2), &theta * &int(r * (r + 2))])
            .collect(),
        0 | 4 => [int(1), int(2)]
            .into_iter()
            .chain(rep(r - 3))
            .chain([int(3 * r * (r + 2) / 2)])
            .collect(),
        _ => [int(1), int(2)]
            .into_iter()
            .chain(rep(r - 4))
            .chain([&theta * &int(r + 2), &theta * &int(r * (r + 2) / 2)])
            .collect(),
    };
    out.iter_mut().for_each(|x| *x = x.canonical());
    out
}

/// Closed-form SNF of the whirl Laplacian.
pub fn whirl_snf_formula(r: usize) -> Vec<Eisenstein> {
    let det = Eisenstein::from_int(fib(2 * r + 2) - fib(2 * r - 2) - 1);
    let mut out = vec![int(1); r];
    if r % 4 == 2 {
        let theta = e(1, 1);
        out[r - 2] = theta.clone();
        out[r - 1] = det.exact_div(&theta).expect("1+w divides det").canonical();
    } else {
        out[r - 1] = det;
    }
    out
}

/// The six instances printed next to the T_r formula, r = 3..=8.
pub fn t_r_printed(r: usize) -> Vec<Eisenstein> {
    let t = |k: i64| e(k, k);
    let n = |k: i64| e(k, 0);
    match r {
        3 => vec![n(1), n(1), n(45)],
        4 => vec![n(1), n(2), n(6), n(36)],
        5 => vec![n(1), n(1), n(7), t(7), t(35)],
        6 => vec![n(1), n(2), n(8), n(8), n(8), n(72)],
        7 => vec![n(1), n(1), n(9), n(9), n(9), n(9), n(189)],
        8 => vec![n(1), n(2), n(10), n(10), n(10), n(10), t(10), t(40)],
        _ => panic!("no printed instance for r = {r}"),
    }
}
