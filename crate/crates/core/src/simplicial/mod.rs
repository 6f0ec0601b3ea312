//! Dold–Kan at low simplicial levels and the coherence data of `Aut(E)`.

mod witness;

pub use witness::{
    fill_inner_horn, quasi_automorphism_inverse, verify_g1_edge, verify_g1_vertex, verify_g2_vertex, AutWitness,
    G2Triangle, QuasiInverse, WitnessFailure,
};

use crate::complex::Complex;
use crate::derived::truncate_le;
use crate::error::{Error, Result};
use crate::linalg::{kernel_matrix, rank, Matrix, RingSpec};

/// Highest simplicial level that is built.
pub const TOP_LEVEL: usize = 3;

/// An order-preserving surjection `[n] -> [k]`, stored as its values.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Surjection(pub Vec<usize>);

impl Surjection {
    pub fn source_dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn target_dim(&self) -> usize {
        *self.0.last().unwrap()
    }
}

/// All surjections `[n] -> [k]` ordered by `k`, then lexicographically by
/// the set of positions where the value steps up.
fn surjections(n: usize) -> Vec<Surjection> {
    let mut out = Vec::new();
    for k in 0..=n {
        let mut steps: Vec<Vec<usize>> = Vec::new();
        subsets(1, n, k, &mut Vec::new(), &mut steps);
        for s in steps {
            let values = (0..=n).map(|i| s.iter().filter(|&&j| j <= i).count()).collect();
            out.push(Surjection(values));
        }
    }
    out
}

fn subsets(from: usize, to: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == k {
        out.push(cur.clone());
        return;
    }
    for j in from..=to {
        cur.push(j);
        subsets(j + 1, to, k, cur, out);
        cur.pop();
    }
}

/// Coface `δ^i : [n-1] -> [n]` skipping `i`.
fn coface(i: usize, j: usize) -> usize {
    if j < i {
        j
    } else {
        j + 1
    }
}

/// Codegeneracy `σ^i : [n+1] -> [n]` hitting `i` twice.
fn codegeneracy(i: usize, j: usize) -> usize {
    if j <= i {
        j
    } else {
        j - 1
    }
}

/// Levels `0..=3` of the simplicial vector space `Γ(τ≤0 C)`.
#[derive(Clone, Debug)]
pub struct DkTruncation {
    base: Complex,
    summands: Vec<Vec<Surjection>>,
    offsets: Vec<Vec<usize>>,
    ranks: Vec<usize>,
    /// `faces[n][i] : Γ_n -> Γ_{n-1}` for `1 <= n <= 3`.
    faces: Vec<Vec<Matrix>>,
    /// `degeneracies[n][j] : Γ_n -> Γ_{n+1}` for `n <= 2`.
    degeneracies: Vec<Vec<Matrix>>,
}

impl DkTruncation {
    fn ring(&self) -> &RingSpec {
        self.base.ring()
    }

    /// `N_k = (τ≤0 C)^{-k}`.
    fn normalized_rank(&self, k: usize) -> usize {
        self.base.rank(-(k as i64))
    }

    pub fn base(&self) -> &Complex {
        &self.base
    }

    pub fn level_rank(&self, n: usize) -> usize {
        self.ranks[n]
    }

    pub fn summands(&self, n: usize) -> &[Surjection] {
        &self.summands[n]
    }

    pub fn face(&self, n: usize, i: usize) -> &Matrix {
        &self.faces[n][i]
    }

    pub fn degeneracy(&self, n: usize, j: usize) -> &Matrix {
        &self.degeneracies[n][j]
    }

    /// Matrix of `θ^* : Γ_n -> Γ_m` for a monotone `θ : [m] -> [n]`.
    fn induced(&self, n: usize, m: usize, theta: impl Fn(usize) -> usize) -> Matrix {
        let ring = self.ring().clone();
        let mut out = Matrix::zeros(&ring, self.ranks[m], self.ranks[n]);
        for (si, sigma) in self.summands[n].iter().enumerate() {
            let k = sigma.target_dim();
            let composite: Vec<usize> = (0..=m).map(|j| sigma.0[theta(j)]).collect();
            let mut image = composite.clone();
            image.dedup();
            let tau = Surjection(
                composite
                    .iter()
                    .map(|v| image.iter().position(|x| x == v).unwrap())
                    .collect(),
            );
            let t = tau.target_dim();
            let block = if image.len() == k + 1 {
                Matrix::identity(&ring, self.normalized_rank(k))
            } else if image.len() == k && image[0] == 1 {
                self.base.d(-(k as i64))
            } else {
                continue;
            };
            let ti = self.summands[m]
                .iter()
                .position(|s| *s == tau)
                .expect("surjection listed");
            debug_assert_eq!(block.rows(), self.normalized_rank(t));
            let (r0, c0) = (self.offsets[m][ti], self.offsets[n][si]);
            for r in 0..block.rows() {
                for c in 0..block.cols() {
                    out.set(r0 + r, c0 + c, block.get(r, c).clone());
                }
            }
        }
        out
    }

    /// Checks every simplicial identity up to level 3, naming the first failure.
    pub fn check_identities(&self) -> std::result::Result<(), String> {
        let eq = |a: &Matrix, b: &Matrix, what: String| if a == b { Ok(()) } else { Err(what) };
        let mul = |a: &Matrix, b: &Matrix| a.mul(b).expect("composable");
        for n in 2..=TOP_LEVEL {
            for j in 1..=n {
                for i in 0..j {
                    let lhs = mul(&self.faces[n - 1][i], &self.faces[n][j]);
                    let rhs = mul(&self.faces[n - 1][j - 1], &self.faces[n][i]);
                    eq(&lhs, &rhs, format!("d_{i} d_{j} = d_{} d_{i} on level {n}", j - 1))?;
                }
            }
        }
        for n in 0..TOP_LEVEL - 1 {
            for j in 0..=n {
                for i in 0..=j {
                    let lhs = mul(&self.degeneracies[n + 1][i], &self.degeneracies[n][j]);
                    let rhs = mul(&self.degeneracies[n + 1][j + 1], &self.degeneracies[n][i]);
                    eq(&lhs, &rhs, format!("s_{i} s_{j} = s_{} s_{i} on level {n}", j + 1))?;
                }
            }
        }
        for n in 0..TOP_LEVEL {
            for j in 0..=n {
                for i in 0..=n + 1 {
                    let lhs = mul(&self.faces[n + 1][i], &self.degeneracies[n][j]);
                    let what = format!("d_{i} s_{j} on level {n}");
                    if i < j {
                        eq(&lhs, &mul(&self.degeneracies[n - 1][j - 1], &self.faces[n][i]), what)?;
                    } else if i == j || i == j + 1 {
                        eq(&lhs, &Matrix::identity(self.ring(), self.ranks[n]), what)?;
                    } else {
                        eq(&lhs, &mul(&self.degeneracies[n - 1][j], &self.faces[n][i - 1]), what)?;
                    }
                }
            }
        }
        Ok(())
    }

    /// Basis (as columns) of the Moore complex `∩_{i≥1} ker d_i` at level `k`.
    fn moore_basis(&self, k: usize) -> Result<Matrix> {
        let ring = self.ring();
        if k == 0 {
            return Ok(Matrix::identity(ring, self.ranks[0]));
        }
        let mut stacked = Matrix::zeros(ring, 0, self.ranks[k]);
        for i in 1..=k {
            stacked = stacked.vstack(&self.faces[k][i])?;
        }
        kernel_matrix(&stacked)
    }

    /// `dim π_k`, the homology of the Moore complex with differential `d_0`.
    pub fn pi(&self, k: usize) -> Result<usize> {
        if k >= TOP_LEVEL {
            return Err(Error::ShapeMismatch(format!("π_{k} needs simplicial level {}", k + 1)));
        }
        let here = self.moore_basis(k)?;
        let out = if k == 0 {
            0
        } else {
            rank(&self.faces[k][0].mul(&here)?)?
        };
        let above = self.moore_basis(k + 1)?;
        let incoming = rank(&self.faces[k + 1][0].mul(&above)?)?;
        Ok(here.cols() - out - incoming)
    }
}

/// Builds `Γ(τ≤0 C)` on levels `0..=3` and checks the simplicial identities.
pub fn dk_build(c: &Complex) -> Result<DkTruncation> {
    c.ring().require_field()?;
    let base = truncate_le(c, 0)?;
    let summands: Vec<Vec<Surjection>> = (0..=TOP_LEVEL).map(surjections).collect();
    let mut offsets = Vec::new();
    let mut ranks = Vec::new();
    for level in &summands {
        let mut off = Vec::new();
        let mut total = 0;
        for s in level {
            off.push(total);
            total += base.rank(-(s.target_dim() as i64));
        }
        offsets.push(off);
        ranks.push(total);
    }
    let mut dk = DkTruncation {
        base,
        summands,
        offsets,
        ranks,
        faces: Vec::new(),
        degeneracies: Vec::new(),
    };
    let faces: Vec<Vec<Matrix>> = (0..=TOP_LEVEL)
        .map(|n| {
            if n == 0 {
                Vec::new()
            } else {
                (0..=n).map(|i| dk.induced(n, n - 1, |j| coface(i, j))).collect()
            }
        })
        .collect();
    let degeneracies: Vec<Vec<Matrix>> = (0..TOP_LEVEL)
        .map(|n| (0..=n).map(|i| dk.induced(n, n + 1, |j| codegeneracy(i, j))).collect())
        .collect();
    dk.faces = faces;
    dk.degeneracies = degeneracies;
    dk.check_identities()
        .map_err(|e| Error::Internal(format!("simplicial identity failed: {e}")))?;
    Ok(dk)
}

/// `dim π_k` of the Dold–Kan object of `τ≤0 C`, for `k ∈ {0, 1, 2}`.
pub fn dk_pi(c: &Complex, k: usize) -> Result<usize> {
    dk_build(c)?.pi(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::cohomology_dims;

    fn q() -> RingSpec {
        RingSpec::rationals()
    }

    #[test]
    fn surjection_counts() {
        let counts: Vec<Vec<usize>> = (0..=3)
            .map(|n| {
                (0..=n)
                    .map(|k| surjections(n).iter().filter(|s| s.target_dim() == k).count())
                    .collect()
            })
            .collect();
        assert_eq!(counts, vec![vec![1], vec![1, 1], vec![1, 2, 1], vec![1, 3, 3, 1]]);
    }

    #[test]
    fn level_ranks() {
        let ranks = |c: &Complex| {
            let dk = dk_build(c).unwrap();
            (0..=3).map(|n| dk.level_rank(n)).collect::<Vec<_>>()
        };
        assert_eq!(ranks(&Complex::single(&q(), 0, 1)), vec![1, 1, 1, 1]);
        assert_eq!(ranks(&Complex::single(&q(), -1, 1)), vec![0, 1, 2, 3]);
        assert_eq!(ranks(&Complex::zero(&q())), vec![0, 0, 0, 0]);
    }

    #[test]
    fn homotopy_groups_match_cohomology() {
        let c = Complex::new(
            &q(),
            -3,
            vec![1, 2, 2, 1, 1],
            vec![
                Matrix::from_i64(&q(), &[&[1], &[0]]),
                Matrix::from_i64(&q(), &[&[0, 0], &[0, 1]]),
                Matrix::from_i64(&q(), &[&[0, 0]]),
                Matrix::from_i64(&q(), &[&[1]]),
            ],
        )
        .unwrap();
        let h = cohomology_dims(&c).unwrap();
        for k in 0..3 {
            let expect = h.get(&-(k as i64)).copied().unwrap_or(0);
            assert_eq!(dk_pi(&c, k).unwrap(), expect, "π_{k}");
        }
        let top = Complex::single(&q(), -2, 1);
        assert_eq!(
            (0..3).map(|k| dk_pi(&top, k).unwrap()).collect::<Vec<_>>(),
            vec![0, 0, 1]
        );
    }

    #[test]
    fn rejects_non_field() {
        let p = RingSpec::polynomial(q(), ["t"]).unwrap();
        assert!(matches!(
            dk_build(&Complex::single(&p, 0, 1)),
            Err(Error::NonFieldRing(_))
        ));
    }
}
