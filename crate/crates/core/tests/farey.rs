mod common;

use common::*;
use fibonadic::farey::{
    ball, ball_n, boundary, descent, genealogy, level_at, level_function, mat_mul, sl2_matrix, weighted_norm,
    z_set, Mat2, PointSet,
};
use fibonadic::fibzeck::{big_m, FibTable};
use fibonadic::{LatticePoint, ZeckWord};

#[test]
fn descent_reproduces_every_point() {
    for v in ball(60) {
        let mut g: Mat2 = [[1, 0], [0, 1]];
        for t in descent(v).unwrap() {
            g = mat_mul(&t.generator(), &g);
            assert_eq!(g[0][0] * g[1][1] - g[0][1] * g[1][0], 1);
        }
        assert_eq!(g, sl2_matrix(v).unwrap());
        assert_eq!((g[0][0] + g[1][0], g[0][1] + g[1][1]), (v.x(), v.y()));
    }
}

#[test]
fn mediant_identity_and_unimodularity() {
    for v in ball(1000) {
        let g = genealogy(v).unwrap();
        assert_eq!(g.mother + g.father, v);
        assert_eq!(g.lower + g.upper, v);
        assert_eq!(g.lower.det(&g.upper), 1, "{v}");
        if v != LatticePoint::ROOT {
            assert!(g.mother.norm() > g.father.norm(), "{v}");
        }
    }
}

#[test]
fn weighted_norm_recurrence() {
    for v in ball(40) {
        assert_eq!(weighted_norm(v, 0).unwrap(), v.norm() as u128);
        for k in 1..40 {
            let sum = weighted_norm(v, k).unwrap() + weighted_norm(v, k - 1).unwrap();
            assert_eq!(weighted_norm(v, k + 1).unwrap(), sum);
        }
    }
}

#[test]
fn boundaries_of_norm_balls_are_unimodular() {
    for r in 2..=120u64 {
        let m = big_m(&r).unwrap();
        for n in 0..m {
            // BoundaryPath::new rejects any non-unimodular step.
            boundary(&ball_n(r, n).unwrap()).unwrap();
        }
    }
}

#[test]
fn level_function_matches_exact_criterion() {
    let mut r = rng(41);
    for i in 0..400 {
        let z = if i % 2 == 0 { random_principal(&mut r, 14) } else { random_tailed_principal(&mut r, 14) };
        for v in ball(16) {
            assert_eq!(level_function(&z, v).unwrap(), level_exact(&z, v), "z={z} v={v}");
        }
    }
    for v in ball(30) {
        assert_eq!(level_function(&ZeckWord::principal_max(), v).unwrap(), level_exact(&ZeckWord::principal_max(), v));
    }
}

#[test]
fn coherent_radii_have_the_right_order() {
    let mut r = rng(42);
    for _ in 0..200 {
        let z = random_principal(&mut r, 20);
        for m in 1..120u64 {
            let rm: u128 = z.coherent(m).unwrap();
            assert_eq!(FibTable::covering(&rm).big_m(&rm).unwrap() as u64, m, "z={z} m={m}");
        }
    }
}

/// `v ∈ Z(z) ∩ ℓ(n, z)` iff `|v + F(v)|_{m-n-1} <= R^z_m < |v|_{m-n}` for
/// large `m`, where `m = M(R^z_m)`.
#[test]
fn z_set_norm_criterion() {
    let mut r = rng(43);
    for _ in 0..40 {
        let z = random_principal(&mut r, 12);
        let zs = z_set(&z, 20).unwrap();
        let m = 80u64;
        let rm: u128 = z.coherent(m).unwrap();
        for v in ball(20) {
            let n = level_function(&z, v).unwrap() as u64;
            assert_eq!(level_at(&z, v, m).unwrap(), Some(n as u32));
            let w = v + genealogy(v).unwrap().father;
            let inner = weighted_norm(w, (m - n - 1) as u32).unwrap() <= rm;
            let outer = rm < weighted_norm(v, (m - n) as u32).unwrap();
            assert!(outer);
            assert_eq!(zs.contains(&v), inner, "z={z} v={v}");
        }
    }
}

#[test]
fn z_set_small_cases() {
    let b2: PointSet = config_points(&[(1, 1), (1, 2), (2, 1)]);
    assert!(z_set(&ZeckWord::one(), 3).unwrap().is_disjoint(&b2));
    let alt = z_set(&ZeckWord::principal_max(), 4).unwrap();
    assert!(alt.contains(&LatticePoint::new(1, 2).unwrap()));
    assert!(alt.contains(&LatticePoint::new(2, 1).unwrap()));
}

fn config_points(pts: &[(u64, u64)]) -> PointSet {
    pts.iter().map(|&(x, y)| LatticePoint::new(x, y).unwrap()).collect()
}
