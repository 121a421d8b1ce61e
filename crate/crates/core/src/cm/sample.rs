use rand::seq::SliceRandom;
use rand::Rng;

use super::{conjugate, fourier_flow, kp_flow, standard_pair, CMPair, Matrix};
use crate::arith::{Poly, Scalar};

/// A pair of size `n`: a standard pair with small distinct integer
/// positions and small rational momenta, moved by a random word of length
/// at most 3 in KP flows (`z^2`, `z^3`), the Fourier flow and elementary
/// conjugations.
pub fn random_pair<R: Rng>(n: usize, rng: &mut R) -> CMPair {
    let mut positions: Vec<i64> = (-4..=4).collect();
    positions.shuffle(rng);
    let positions: Vec<Scalar> = positions[..n].iter().map(|&a| Scalar::from_int(a)).collect();
    let momenta: Vec<Scalar> = (0..n).map(|_| Scalar::new(rng.gen_range(-3..=3), rng.gen_range(1..=2))).collect();
    let mut p = standard_pair(&positions, &momenta).expect("distinct positions");
    for _ in 0..rng.gen_range(0..=3) {
        p = match rng.gen_range(0..4) {
            0 => kp_flow(&p, &Poly::monomial(Scalar::one(), 2)),
            1 => kp_flow(&p, &Poly::monomial(Scalar::one(), 3)),
            2 => fourier_flow(&p),
            _ => conjugate(&p, &elementary(n, rng)).expect("invertible"),
        };
    }
    p
}

/// `I + c E_ij` with `i != j` and `c in {-2, -1, 1, 2}`, or a permutation.
fn elementary<R: Rng>(n: usize, rng: &mut R) -> Matrix {
    if n < 2 {
        return Matrix::identity(n);
    }
    let mut rows = Matrix::identity(n).rows().to_vec();
    let i = rng.gen_range(0..n);
    let j = (i + rng.gen_range(1..n)) % n;
    if rng.gen_bool(0.25) {
        rows.swap(i, j);
    } else {
        rows[i][j] = Scalar::from_int(*[-2, -1, 1, 2].choose(rng).expect("nonempty"));
    }
    Matrix::new(rows).expect("square")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cm::verify_rank_one;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn samples_satisfy_rank_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 0..5 {
            for _ in 0..20 {
                let p = random_pair(n, &mut rng);
                assert_eq!(p.size(), n);
                assert!(verify_rank_one(p.x(), p.y()).unwrap());
            }
        }
    }

    #[test]
    fn traces_are_conjugation_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let p = random_pair(3, &mut rng);
            let g = elementary(3, &mut rng);
            let q = conjugate(&p, &g).unwrap();
            for k in 1..4 {
                assert_eq!(p.x().pow(k).trace(), q.x().pow(k).trace());
                assert_eq!(p.y().pow(k).trace(), q.y().pow(k).trace());
            }
        }
    }
}
