//! Small groups used throughout the examples and the shipped corpus.

use crate::group::Group;
use crate::perm::Perm;

fn cycles(degree: usize, cs: &[&[usize]]) -> Perm {
    Perm::from_cycles(degree, cs).expect("catalog permutations are valid")
}

fn build(name: &str, degree: usize, gens: Vec<Perm>) -> Group {
    Group::from_generators(name, degree, gens).expect("catalog groups are under the cap")
}

pub fn cyclic(n: usize) -> Group {
    let c: Vec<usize> = (0..n).collect();
    build(&format!("C{n}"), n, vec![cycles(n, &[&c])])
}

pub fn symmetric_3() -> Group {
    build("S3", 3, vec![cycles(3, &[&[0, 1]]), cycles(3, &[&[0, 1, 2]])])
}

/// Dihedral of order 8 on the square's vertices.
pub fn d8() -> Group {
    build("D8", 4, vec![cycles(4, &[&[0, 1, 2, 3]]), cycles(4, &[&[0, 2]])])
}

pub fn s4() -> Group {
    build("S4", 4, vec![cycles(4, &[&[0, 1]]), cycles(4, &[&[0, 1, 2, 3]])])
}

pub fn a4() -> Group {
    build("A4", 4, vec![cycles(4, &[&[0, 1, 2]]), cycles(4, &[&[0, 1], &[2, 3]])])
}

pub fn a6() -> Group {
    build("A6", 6, vec![cycles(6, &[&[0, 1, 2]]), cycles(6, &[&[1, 2, 3, 4, 5]])])
}

/// Quaternion group in its regular representation: point `2k + s` stands for
/// `(-1)^s · u_k` with `u = 1, i, j, k`.
pub fn q8() -> Group {
    // unit products u_a u_b = sign · u_c
    let table = |a: usize, b: usize| -> (usize, usize) {
        const T: [[(usize, usize); 4]; 4] = [
            [(0, 0), (0, 1), (0, 2), (0, 3)],
            [(0, 1), (1, 0), (0, 3), (1, 2)],
            [(0, 2), (1, 3), (1, 0), (0, 1)],
            [(0, 3), (0, 2), (1, 1), (1, 0)],
        ];
        T[a][b]
    };
    let right = |u: usize| {
        Perm::new(
            (0..8)
                .map(|pt| {
                    let (k, s) = (pt / 2, pt % 2);
                    let (sign, c) = table(k, u);
                    2 * c + (s + sign) % 2
                })
                .collect(),
        )
        .unwrap()
    };
    build("Q8", 8, vec![right(1), right(2)])
}

pub fn c4_x_c2() -> Group {
    build("C4xC2", 6, vec![cycles(6, &[&[0, 1, 2, 3]]), cycles(6, &[&[4, 5]])])
}

/// Elementary abelian of order 16 generated by `a, b, c, d`, in that order.
pub fn e16() -> Group {
    build(
        "E16",
        8,
        vec![
            cycles(8, &[&[6, 7]]),
            cycles(8, &[&[4, 5]]),
            cycles(8, &[&[2, 3]]),
            cycles(8, &[&[0, 1]]),
        ],
    )
}

/// `D8 × C2` generated by `x = (0 1 2 3)`, `y = (1 3)`, `z = (4 5)`.
pub fn d8_x_c2() -> Group {
    build(
        "D8xC2",
        6,
        vec![
            cycles(6, &[&[0, 1, 2, 3]]),
            cycles(6, &[&[1, 3]]),
            cycles(6, &[&[4, 5]]),
        ],
    )
}

/// `SL_2(3)` acting on the eight nonzero vectors of `F_3^2`.
pub fn sl2_3() -> Group {
    let points: Vec<(usize, usize)> = (0..9).map(|i| (i % 3, i / 3)).filter(|&v| v != (0, 0)).collect();
    let idx = |v: (usize, usize)| points.iter().position(|&w| w == v).unwrap();
    let mat = |m: [[usize; 2]; 2]| {
        Perm::new(
            points
                .iter()
                .map(|&(x, y)| idx(((x * m[0][0] + y * m[1][0]) % 3, (x * m[0][1] + y * m[1][1]) % 3)))
                .collect(),
        )
        .unwrap()
    };
    build("SL2(3)", 8, vec![mat([[1, 1], [0, 1]]), mat([[1, 0], [1, 1]])])
}

pub fn s4_x_c3() -> Group {
    build(
        "S4xC3",
        7,
        vec![
            cycles(7, &[&[0, 1]]),
            cycles(7, &[&[0, 1, 2, 3]]),
            cycles(7, &[&[4, 5, 6]]),
        ],
    )
}
