//! Independent oracles for the acceptance suite. Everything here recomputes
//! results from first principles — explicit box search, finite-field brute
//! force — without calling the code paths under test.

use num_traits::Signed;
use rand::Rng;
use stabwalls::chern::ChernCharacter;
use stabwalls::rational::{int, ratio, Rational};

/// Brute-force search of an explicit integer box for truncated classes
/// (ch₀, ch₁, ch₂) that could destabilize `v` at (β, α²): ch₀ bounded by
/// `rank_bound`, Z(w) parallel to Z(v), 0 < Im Z(w) < Im Z(v), both
/// discriminants nonnegative, lattice parity 2·ch₂ ≡ ch₁ (mod 2).
/// Returns `(ch₀, ch₁, 2·ch₂)` triples in lexicographic order.
pub fn destabilizer_box_oracle(
    v: &ChernCharacter,
    beta: &Rational,
    alpha_sq: &Rational,
    rank_bound: i64,
) -> Vec<(i64, i64, i64)> {
    let charge = |r: &Rational, c: &Rational, d: &Rational| {
        let im = c - beta * r;
        let re = -(d - beta * c + beta * beta / int(2) * r) + alpha_sq / int(2) * r;
        (re, im)
    };
    let delta = |r: &Rational, c: &Rational, d: &Rational| c * c - int(2) * r * d;
    let (re_v, im_v) = charge(&v.ch0, &v.ch1, &v.ch2);

    let mut out = Vec::new();
    for r in -rank_bound..=rank_bound {
        for c in -12i64..=12 {
            for two_d in -60i64..=60 {
                if (two_d - c).rem_euclid(2) != 0 {
                    continue;
                }
                let (rq, cq, dq) = (int(r), int(c), ratio(two_d, 2));
                let (re_w, im_w) = charge(&rq, &cq, &dq);
                if !im_w.is_positive() || im_w >= im_v {
                    continue;
                }
                if &re_w * &im_v != &re_v * &im_w {
                    continue;
                }
                if delta(&rq, &cq, &dq).is_negative() {
                    continue;
                }
                let (vr, vc, vd) = (&v.ch0 - &rq, &v.ch1 - &cq, &v.ch2 - &dq);
                if delta(&vr, &vc, &vd).is_negative() {
                    continue;
                }
                out.push((r, c, two_d));
            }
        }
    }
    out
}

/// Arithmetic in the field with p² elements for p = 127 (p ≡ 3 mod 4, so
/// x² = −1 is irreducible and the field is F_p[i]).
pub mod fp2 {
    /// The prime.
    pub const P: u64 = 127;

    /// An element a + b·i with i² = −1.
    #[derive(Debug, Clone, Copy, PartialEq, Eq)]
    pub struct Fp2 {
        a: u64,
        b: u64,
    }

    impl Fp2 {
        /// The zero element.
        pub const ZERO: Fp2 = Fp2 { a: 0, b: 0 };

        /// Reduces a signed integer into the prime field.
        pub fn from_int(n: i64) -> Fp2 {
            Fp2 { a: n.rem_euclid(P as i64) as u64, b: 0 }
        }

        /// Builds a + b·i from residues.
        pub fn new(a: u64, b: u64) -> Fp2 {
            Fp2 { a: a % P, b: b % P }
        }

        /// True when zero.
        pub fn is_zero(self) -> bool {
            self.a == 0 && self.b == 0
        }

        /// Sum.
        pub fn add(self, rhs: Fp2) -> Fp2 {
            Fp2 { a: (self.a + rhs.a) % P, b: (self.b + rhs.b) % P }
        }

        /// Difference.
        pub fn sub(self, rhs: Fp2) -> Fp2 {
            Fp2 { a: (self.a + P - rhs.a) % P, b: (self.b + P - rhs.b) % P }
        }

        /// Product: (a+bi)(c+di) = (ac − bd) + (ad + bc)i.
        pub fn mul(self, rhs: Fp2) -> Fp2 {
            let ac = self.a * rhs.a % P;
            let bd = self.b * rhs.b % P;
            let ad = self.a * rhs.b % P;
            let bc = self.b * rhs.a % P;
            Fp2 { a: (ac + P - bd) % P, b: (ad + bc) % P }
        }

        /// Multiplicative inverse via the norm a² + b² ∈ F_p*.
        pub fn inv(self) -> Fp2 {
            assert!(!self.is_zero(), "inverse of zero");
            let norm = (self.a * self.a + self.b * self.b) % P;
            let norm_inv = pow_mod(norm, P - 2);
            Fp2 {
                a: self.a * norm_inv % P,
                b: (P - self.b) * norm_inv % P,
            }
        }

        /// Every field element, in a fixed order.
        pub fn all() -> impl Iterator<Item = Fp2> {
            (0..P).flat_map(|a| (0..P).map(move |b| Fp2 { a, b }))
        }
    }

    fn pow_mod(mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % P;
            }
            base = base * base % P;
            exp >>= 1;
        }
        acc
    }

    /// Rank of a small matrix by Gaussian elimination.
    pub fn rank(mut m: Vec<Vec<Fp2>>) -> usize {
        let rows = m.len();
        let cols = if rows == 0 { 0 } else { m[0].len() };
        let mut rank = 0;
        for col in 0..cols {
            let Some(pivot) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(rank, pivot);
            let inv = m[rank][col].inv();
            for c in col..cols {
                m[rank][c] = m[rank][c].mul(inv);
            }
            for r in 0..rows {
                if r != rank && !m[r][col].is_zero() {
                    let factor = m[r][col];
                    for c in col..cols {
                        let sub = factor.mul(m[rank][c]);
                        m[r][c] = m[r][c].sub(sub);
                    }
                }
            }
            rank += 1;
            if rank == rows {
                break;
            }
        }
        rank
    }
}

/// Brute-force θ-stability of a (2, 3) representation of the 4-arrow
/// Kronecker quiver over the field with 127² elements.
///
/// The destabilizing subdimensions are (1,0), (1,1), (2,0), (2,1), (2,2).
/// A subrepresentation of type (2, k) exists iff the total image has
/// dimension ≤ 2; one of type (1, k≤1) exists iff some source line maps
/// into a single line, which is checked at every point of the projective
/// line over the field. Returns true when unstable.
pub fn fp2_unstable_oracle(rep: &[[[i64; 2]; 3]; 4]) -> bool {
    use fp2::Fp2;
    let m: Vec<[[Fp2; 2]; 3]> = rep
        .iter()
        .map(|f| f.map(|row| row.map(Fp2::from_int)))
        .collect();

    // Total image: the 3×8 matrix of all four images of the standard basis.
    let total: Vec<Vec<Fp2>> = (0..3)
        .map(|r| {
            m.iter()
                .flat_map(|f| [f[r][0], f[r][1]])
                .collect()
        })
        .collect();
    if fp2::rank(total) <= 2 {
        return true;
    }

    // Source lines: v = (1, t) for every t, then v = (0, 1). The images
    // f_i·v must span at most a line, i.e. be pairwise proportional.
    let images_rank_le_1 = |v0: Fp2, v1: Fp2| -> bool {
        let imgs: Vec<[Fp2; 3]> = m
            .iter()
            .map(|f| {
                [
                    f[0][0].mul(v0).add(f[0][1].mul(v1)),
                    f[1][0].mul(v0).add(f[1][1].mul(v1)),
                    f[2][0].mul(v0).add(f[2][1].mul(v1)),
                ]
            })
            .collect();
        let Some(first) = imgs.iter().find(|w| w.iter().any(|x| !x.is_zero())) else {
            return true; // all images zero
        };
        imgs.iter().all(|w| {
            // Cross product first × w = 0 componentwise.
            first[1].mul(w[2]) == first[2].mul(w[1])
                && first[0].mul(w[2]) == first[2].mul(w[0])
                && first[0].mul(w[1]) == first[1].mul(w[0])
        })
    };

    if Fp2::all().any(|t| images_rank_le_1(Fp2::new(1, 0), t)) {
        return true;
    }
    images_rank_le_1(Fp2::ZERO, Fp2::new(1, 0))
}

/// A random representation with entries in −2..=2 (raw integer form).
pub fn random_rep_raw<R: Rng>(rng: &mut R) -> [[[i64; 2]; 3]; 4] {
    let mut rep = [[[0i64; 2]; 3]; 4];
    for f in &mut rep {
        for row in f.iter_mut() {
            for entry in row.iter_mut() {
                *entry = rng.gen_range(-2..=2);
            }
        }
    }
    rep
}

/// A random invertible 2×2 rational matrix with small integer entries.
pub fn random_gl2<R: Rng>(rng: &mut R) -> [[Rational; 2]; 2] {
    loop {
        let e: [[i64; 2]; 2] = [
            [rng.gen_range(-3..=3), rng.gen_range(-3..=3)],
            [rng.gen_range(-3..=3), rng.gen_range(-3..=3)],
        ];
        if e[0][0] * e[1][1] - e[0][1] * e[1][0] != 0 {
            return e.map(|row| row.map(int));
        }
    }
}

/// A random invertible 3×3 rational matrix with small integer entries.
pub fn random_gl3<R: Rng>(rng: &mut R) -> [[Rational; 3]; 3] {
    loop {
        let mut e = [[0i64; 3]; 3];
        for row in &mut e {
            for entry in row.iter_mut() {
                *entry = rng.gen_range(-3..=3);
            }
        }
        let det = e[0][0] * (e[1][1] * e[2][2] - e[1][2] * e[2][1])
            - e[0][1] * (e[1][0] * e[2][2] - e[1][2] * e[2][0])
            + e[0][2] * (e[1][0] * e[2][1] - e[1][1] * e[2][0]);
        if det != 0 {
            return e.map(|row| row.map(int));
        }
    }
}
