//! Elementary-symmetric coordinates of conjugacy classes.
//!
//! The Viète map sends t ∈ R^g to s(t) = (s_1(t), …, s_g(t)), the signed
//! coefficients of h(u) = ∏(u − t_j) = Σ (−1)^n s_n u^{g−n}. Its image of the
//! box [−2, 2]^g is the symmetric alcove Σ_g, which is cut out by
//!
//! * Π_g: the Hankel matrix of power sums (the bezoutian) has non-negative
//!   leading minors, i.e. h has only real roots;
//! * Θ_g: 2g affine forms L_i^±(2; s) are non-negative, i.e. those roots lie
//!   in [−2, 2].
//!
//! The second half of the module relates s to the palindromic polynomial
//! ∏(u² − t_j u + 1) = Σ (−1)^n a_n u^{2g−n} and to traces of exterior powers.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::specfun::chebyshev_c_coeffs;

/// Absolute tolerance on the signs of minors and affine forms. Points within
/// it of the boundary count as members (the alcove is closed).
pub const TOL_GEOM: f64 = 1e-9;

/// Largest rank accepted by the constructors.
pub const MAX_G: usize = 8;

fn check_rank(g: usize) -> Result<()> {
    if (1..=MAX_G).contains(&g) {
        Ok(())
    } else {
        Err(Error::InvalidRank(g))
    }
}

pub(crate) fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// A point (s_1, …, s_g) of R^g.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SymmetricPoint {
    s: Vec<f64>,
}

impl SymmetricPoint {
    pub fn new(s: Vec<f64>) -> Result<Self> {
        check_rank(s.len())?;
        if s.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidInput("symmetric coordinates must be finite".into()));
        }
        Ok(Self { s })
    }

    pub fn g(&self) -> usize {
        self.s.len()
    }

    pub fn s(&self) -> &[f64] {
        &self.s
    }

    /// s_n with the conventions s_0 = 1 and s_n = 0 for n > g.
    pub fn get(&self, n: usize) -> f64 {
        match n {
            0 => 1.0,
            n if n <= self.s.len() => self.s[n - 1],
            _ => 0.0,
        }
    }

    /// |s_i| ≤ 2^i·binom(g, i) for every i.
    pub fn in_bounding_box(&self) -> bool {
        let g = self.g() as u64;
        self.s.iter().enumerate().all(|(i, x)| {
            let i = i as u64 + 1;
            x.abs() <= (1u64 << i) as f64 * binom(g, i) as f64 + TOL_GEOM
        })
    }
}

/// The half (a_0, …, a_g) of a monic palindromic polynomial of degree 2g,
/// Σ_{n=0}^{2g} (−1)^n a_n u^{2g−n} with a_{2g−n} = a_n.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PalindromicPolynomial {
    a: Vec<f64>,
}

impl PalindromicPolynomial {
    /// From (a_0, …, a_g); requires a_0 = 1.
    pub fn new(a: Vec<f64>) -> Result<Self> {
        if a.len() < 2 {
            return Err(Error::InvalidInput("need at least a_0 and a_1".into()));
        }
        check_rank(a.len() - 1)?;
        if a[0] != 1.0 {
            return Err(Error::InvalidInput(format!("a_0 must be 1, got {}", a[0])));
        }
        Ok(Self { a })
    }

    pub fn g(&self) -> usize {
        self.a.len() - 1
    }

    pub fn a(&self) -> &[f64] {
        &self.a
    }

    /// All 2g + 1 unsigned coefficients a_0, …, a_{2g}.
    pub fn full(&self) -> Vec<f64> {
        let g = self.g();
        (0..=2 * g).map(|n| self.a[n.min(2 * g - n)]).collect()
    }

    /// Coefficients of the actual polynomial, highest degree first
    /// (that is, (−1)^n a_n for n = 0, …, 2g).
    pub fn signed(&self) -> Vec<f64> {
        self.full()
            .into_iter()
            .enumerate()
            .map(|(n, a)| if n % 2 == 0 { a } else { -a })
            .collect()
    }
}

/// Elementary symmetric functions of `t` by expanding ∏(u − t_j).
pub fn viete(t: &[f64]) -> Result<SymmetricPoint> {
    check_rank(t.len())?;
    // e[k] = e_k of the roots processed so far
    let mut e = vec![0.0; t.len() + 1];
    e[0] = 1.0;
    for (j, &x) in t.iter().enumerate() {
        for k in (1..=j + 1).rev() {
            e[k] += x * e[k - 1];
        }
    }
    SymmetricPoint::new(e[1..].to_vec())
}

/// Power sums p_1, …, p_upto of the roots of h_s.
///
/// Degrees n ≤ g use Girard's formula
/// p_n = (−1)^n Σ n (b_1+…+b_g − 1)! / (b_1!⋯b_g!) ∏ (−s_i)^{b_i}
/// over b_1 + 2b_2 + … + g b_g = n; higher degrees continue with Newton's
/// recurrence p_n = Σ_{i=1}^{g} (−1)^{i−1} s_i p_{n−i}.
pub fn girard_power_sums(p: &SymmetricPoint, upto: usize) -> Vec<f64> {
    let g = p.g();
    let mut out = Vec::with_capacity(upto);
    for n in 1..=upto.min(g) {
        out.push(girard(p, n));
    }
    for n in g + 1..=upto {
        let mut v = 0.0;
        for i in 1..=g {
            let sign = if i % 2 == 1 { 1.0 } else { -1.0 };
            v += sign * p.get(i) * out[n - i - 1];
        }
        out.push(v);
    }
    out
}

fn girard(p: &SymmetricPoint, n: usize) -> f64 {
    let g = p.g().min(n);
    let mut b = vec![0u32; g + 1];
    let mut total = 0.0;
    girard_rec(p, n, g, &mut b, &mut total);
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    sign * n as f64 * total
}

/// Enumerates multiplicities b_part for parts ≤ `largest` summing to `rest`.
fn girard_rec(p: &SymmetricPoint, rest: usize, largest: usize, b: &mut [u32], total: &mut f64) {
    if rest == 0 {
        let parts: u32 = b.iter().sum();
        let mut term = factorial((parts - 1) as usize);
        for (i, &bi) in b.iter().enumerate().skip(1) {
            term *= (-p.get(i)).powi(bi as i32) / factorial(bi as usize);
        }
        *total += term;
        return;
    }
    if largest == 0 {
        return;
    }
    for k in (0..=rest / largest).rev() {
        b[largest] = k as u32;
        girard_rec(p, rest - k * largest, largest - 1, b, total);
    }
    b[largest] = 0;
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// √D₀(t) = ∏_{j<k} |t_k − t_j|, the absolute Jacobian determinant of the
/// Viète map.
pub fn jacobian_factor(t: &[f64]) -> f64 {
    let mut d = 1.0;
    for j in 0..t.len() {
        for k in j + 1..t.len() {
            d *= (t[k] - t[j]).abs();
        }
    }
    d
}

/// Determinant by Gaussian elimination with partial pivoting.
pub(crate) fn det(mut m: Vec<Vec<f64>>) -> f64 {
    let n = m.len();
    let mut d = 1.0;
    for c in 0..n {
        let piv = (c..n)
            .max_by(|&i, &j| m[i][c].abs().total_cmp(&m[j][c].abs()))
            .expect("non-empty column");
        if m[piv][c] == 0.0 {
            return 0.0;
        }
        if piv != c {
            m.swap(piv, c);
            d = -d;
        }
        d *= m[c][c];
        for r in c + 1..n {
            let f = m[r][c] / m[c][c];
            for k in c..n {
                m[r][k] -= f * m[c][k];
            }
        }
    }
    d
}

/// Leading principal minors m_1, …, m_g of the Hankel matrix (p_{i+j}) of
/// power sums, p_0 = g. Always m_1 = g, and m_g = d₀(s) is the discriminant.
pub fn bezoutian_minors(p: &SymmetricPoint) -> Vec<f64> {
    let g = p.g();
    let mut ps = vec![g as f64];
    ps.extend(girard_power_sums(p, 2 * g - 2));
    (1..=g)
        .map(|k| {
            let h: Vec<Vec<f64>> = (0..k).map(|i| (0..k).map(|j| ps[i + j]).collect()).collect();
            det(h)
        })
        .collect()
}

/// d₀(s) = m_g(s) = ∏_{j<k}(t_k − t_j)².
pub fn d0(p: &SymmetricPoint) -> f64 {
    *bezoutian_minors(p).last().expect("g ≥ 1")
}

/// All roots of h_s real: m_j(s) ≥ −TOL_GEOM for 2 ≤ j ≤ g.
pub fn in_pi(p: &SymmetricPoint) -> bool {
    bezoutian_minors(p).iter().skip(1).all(|&m| m >= -TOL_GEOM)
}

/// The affine forms (L_i^+(2; s), L_i^−(2; s)) for i = 1, …, g, where
/// L_i^+(2; s) = Σ_{k=0}^{i} binom(g−i+k, k) 2^k s_{i−k} and L_i^− is the
/// same form at (−s_1, s_2, −s_3, …).
pub fn linear_forms(p: &SymmetricPoint) -> Vec<(f64, f64)> {
    let g = p.g();
    (1..=g)
        .map(|i| {
            let mut plus = 0.0;
            let mut minus = 0.0;
            for k in 0..=i {
                let c = binom((g - i + k) as u64, k as u64) as f64 * (1u64 << k) as f64;
                let j = i - k;
                let s = p.get(j);
                plus += c * s;
                minus += c * if j % 2 == 1 { -s } else { s };
            }
            (plus, minus)
        })
        .collect()
}

/// d₁(s) = L_g^+(2; s)·L_g^−(2; s) = ∏(4 − t_j²).
pub fn d1(p: &SymmetricPoint) -> f64 {
    let (plus, minus) = *linear_forms(p).last().expect("g ≥ 1");
    plus * minus
}

/// Result of testing s ∈ Σ_g = Θ_g ∩ Π_g.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MembershipReport {
    pub g: usize,
    pub s: Vec<f64>,
    pub in_pi: bool,
    pub in_theta: bool,
    pub in_sigma: bool,
    pub minors: Vec<f64>,
    pub forms_plus: Vec<f64>,
    pub forms_minus: Vec<f64>,
}

pub fn in_sigma(p: &SymmetricPoint) -> MembershipReport {
    let minors = bezoutian_minors(p);
    let forms = linear_forms(p);
    let in_pi = minors.iter().skip(1).all(|&m| m >= -TOL_GEOM);
    let in_theta = forms.iter().all(|&(a, b)| a >= -TOL_GEOM && b >= -TOL_GEOM);
    MembershipReport {
        g: p.g(),
        s: p.s().to_vec(),
        in_pi,
        in_theta,
        in_sigma: in_pi && in_theta,
        minors,
        forms_plus: forms.iter().map(|f| f.0).collect(),
        forms_minus: forms.iter().map(|f| f.1).collect(),
    }
}

/// Diagnostic only, for g = 3: is s inside the tetrahedron spanned by the
/// images of (−2,−2,−2), (−2,−2,2), (−2,2,2), (2,2,2)? Σ_3 is contained in
/// it but the converse fails, so this never decides membership.
pub fn in_delta3(p: &SymmetricPoint) -> Result<bool> {
    if p.g() != 3 {
        return Err(Error::InvalidRank(p.g()));
    }
    let verts: Vec<Vec<f64>> = [[-2.0, -2.0, -2.0], [-2.0, -2.0, 2.0], [-2.0, 2.0, 2.0], [2.0, 2.0, 2.0]]
        .iter()
        .map(|t| viete(t).map(|v| v.s().to_vec()))
        .collect::<Result<_>>()?;
    // barycentric coordinates: solve [v1−v0 | v2−v0 | v3−v0] λ = s − v0
    let m: Vec<Vec<f64>> = (0..3)
        .map(|r| (1..4).map(|c| verts[c][r] - verts[0][r]).collect())
        .collect();
    let rhs: Vec<f64> = (0..3).map(|r| p.s()[r] - verts[0][r]).collect();
    let dm = det(m.clone());
    let mut lambda = [0.0; 3];
    for (c, l) in lambda.iter_mut().enumerate() {
        let mut mc = m.clone();
        for r in 0..3 {
            mc[r][c] = rhs[r];
        }
        *l = det(mc) / dm;
    }
    let l0 = 1.0 - lambda.iter().sum::<f64>();
    Ok(l0 >= -TOL_GEOM && lambda.iter().all(|&l| l >= -TOL_GEOM))
}

/// The unipotent lower-triangular matrix q with a = q·(1, s_1, …, s_g):
/// q[n][n−2j] = binom(g + 2j − n, j).
pub fn q_matrix(g: usize) -> Vec<Vec<u64>> {
    (0..=g)
        .map(|n| {
            let mut row = vec![0u64; g + 1];
            for j in 0..=n / 2 {
                row[n - 2 * j] = binom((g + 2 * j - n) as u64, j as u64);
            }
            row
        })
        .collect()
}

/// a_n = Σ_j binom(g+2j−n, j) s_{n−2j}: the palindromic polynomial
/// ∏(u² − t_j u + 1) of the class whose real Weil polynomial is h_s.
pub fn coeffs_from_sym(p: &SymmetricPoint) -> PalindromicPolynomial {
    let g = p.g();
    let q = q_matrix(g);
    let a = q
        .iter()
        .map(|row| row.iter().enumerate().map(|(k, &c)| c as f64 * p.get(k)).sum())
        .collect();
    PalindromicPolynomial { a }
}

/// Inverse of [`coeffs_from_sym`] through the reciprocal map
/// h(u) = Σ_{n=0}^{g} (−1)^n a_n c_{g−n}(u), with c_0 = 1 and
/// c_k(u + 1/u) = u^k + u^{−k}.
pub fn sym_from_coeffs(poly: &PalindromicPolynomial) -> SymmetricPoint {
    let g = poly.g();
    // h as ascending coefficients
    let mut h = vec![0.0; g + 1];
    for (n, &an) in poly.a().iter().enumerate() {
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        for (k, &c) in chebyshev_c_coeffs((g - n) as u32).iter().enumerate() {
            h[k] += sign * an * c as f64;
        }
    }
    // h(u) = Σ (−1)^n s_n u^{g−n}
    let s = (1..=g)
        .map(|n| {
            let c = h[g - n];
            if n % 2 == 0 {
                c
            } else {
                -c
            }
        })
        .collect();
    SymmetricPoint { s }
}

/// Trace of ∧ⁿ of the standard representation at the class with
/// coefficient vector t; τ_{2g−n} = τ_n.
pub fn exterior_trace(t: &[f64], n: usize) -> Result<f64> {
    let g = t.len();
    if n > 2 * g {
        return Err(Error::Domain(format!("exterior power {n} exceeds 2g = {}", 2 * g)));
    }
    let a = coeffs_from_sym(&viete(t)?);
    Ok(a.a()[n.min(2 * g - n)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn sp(s: &[f64]) -> SymmetricPoint {
        SymmetricPoint::new(s.to_vec()).unwrap()
    }

    #[test]
    fn viete_examples() {
        assert_eq!(viete(&[1.0, 2.0]).unwrap().s(), &[3.0, 2.0]);
        assert_eq!(viete(&[2.0, 2.0, 2.0]).unwrap().s(), &[6.0, 12.0, 8.0]);
        assert_eq!(viete(&[-2.0, -2.0, -2.0]).unwrap().s(), &[-6.0, 12.0, -8.0]);
    }

    #[test]
    fn power_sums() {
        let p = girard_power_sums(&sp(&[3.0, 2.0]), 3);
        assert_eq!(p, vec![3.0, 5.0, 9.0]);
        let p = girard_power_sums(&sp(&[3.0, 3.0, 1.0]), 4);
        assert_eq!(p, vec![3.0, 3.0, 3.0, 3.0]);
        // Girard and Newton must agree where both apply
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            let t: Vec<f64> = (0..3).map(|_| rng.gen_range(-2.0..2.0)).collect();
            let ps = girard_power_sums(&viete(&t).unwrap(), 6);
            for (n, v) in ps.iter().enumerate() {
                let direct: f64 = t.iter().map(|x| x.powi(n as i32 + 1)).sum();
                assert!((v - direct).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn jacobian_examples() {
        assert_eq!(jacobian_factor(&[0.0, 1.0]), 1.0);
        assert_eq!(jacobian_factor(&[1.0, 2.0, 4.0]), 6.0);
        assert_eq!(jacobian_factor(&[0.5, 0.5, 1.0]), 0.0);
    }

    #[test]
    fn minors_closed_forms() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..100 {
            let s: Vec<f64> = (0..3).map(|_| rng.gen_range(-5.0..5.0)).collect();
            let (s1, s2, s3) = (s[0], s[1], s[2]);
            let m = bezoutian_minors(&sp(&s));
            assert_eq!(m[0], 3.0);
            let d = s1 * s1 * s2 * s2 - 4.0 * s2.powi(3) - 4.0 * s1.powi(3) * s3 + 18.0 * s1 * s2 * s3
                - 27.0 * s3 * s3;
            assert!((m[2] - d).abs() < 1e-9 * d.abs().max(1.0));
            let m2 = bezoutian_minors(&sp(&s[..2]));
            assert!((m2[1] - (s1 * s1 - 4.0 * s2)).abs() < 1e-12);
        }
    }

    #[test]
    fn discriminant_is_d0() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..1000 {
            let g = rng.gen_range(2..=3);
            let t: Vec<f64> = (0..g).map(|_| rng.gen_range(-3.0..3.0)).collect();
            let j = jacobian_factor(&t);
            let m = d0(&viete(&t).unwrap());
            assert!((m - j * j).abs() <= 1e-10 * (j * j).max(1.0), "{m} vs {}", j * j);
        }
    }

    #[test]
    fn pi_membership_examples() {
        assert!(in_pi(&sp(&[0.0, -1.0])));
        assert!(!in_pi(&sp(&[0.0, 1.0])));
    }

    #[test]
    fn forms_examples() {
        let f = linear_forms(&sp(&[1.5, -0.5, 0.25]));
        assert_eq!(f[0], (1.5 + 6.0, -1.5 + 6.0));
        assert_eq!(f[2].0, 0.25 + 2.0 * -0.5 + 4.0 * 1.5 + 8.0);
        assert_eq!(f[2].1, -0.25 + 2.0 * -0.5 - 4.0 * 1.5 + 8.0);
        let f = linear_forms(&viete(&[2.0, -2.0]).unwrap());
        assert_eq!(f[1], (0.0, 0.0));
        assert_eq!(d1(&sp(&[0.0, 0.0])), 16.0);
        let s = sp(&[0.7, -1.1]);
        assert!((d1(&s) - ((-1.1f64 + 4.0).powi(2) - 4.0 * 0.49)).abs() < 1e-14);
    }

    #[test]
    fn d1_is_product_of_edges() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..1000 {
            let g = rng.gen_range(1..=4);
            let t: Vec<f64> = (0..g).map(|_| rng.gen_range(-2.0..2.0)).collect();
            let direct: f64 = t.iter().map(|x| 4.0 - x * x).product();
            assert!((d1(&viete(&t).unwrap()) - direct).abs() < 1e-10);
        }
    }

    #[test]
    fn sigma_examples() {
        assert!(in_sigma(&sp(&[6.0, 12.0, 8.0])).in_sigma);
        let r = in_sigma(&sp(&[5.0, 0.0]));
        assert!(!r.in_sigma && !r.in_theta);
        assert!(!sp(&[5.0, 0.0]).in_bounding_box());
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10_000 {
            let g = rng.gen_range(1..=3);
            let t: Vec<f64> = (0..g).map(|_| rng.gen_range(-2.0..=2.0)).collect();
            let s = viete(&t).unwrap();
            assert!(in_sigma(&s).in_sigma, "t = {t:?}");
            assert!(s.in_bounding_box());
            let wide: Vec<f64> = (0..g).map(|_| rng.gen_range(-10.0..10.0)).collect();
            assert!(in_pi(&viete(&wide).unwrap()));
        }
    }

    #[test]
    fn g3_pi_is_one_inequality() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..10_000 {
            let s: Vec<f64> = (0..3).map(|i| rng.gen_range(-1.0..1.0) * [6.0, 12.0, 8.0][i]).collect();
            let m = bezoutian_minors(&sp(&s));
            assert_eq!(m[2] >= 0.0, m[1] >= 0.0 && m[2] >= 0.0);
        }
    }

    #[test]
    fn tetrahedron_contains_alcove() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..1000 {
            let t: Vec<f64> = (0..3).map(|_| rng.gen_range(-2.0..=2.0)).collect();
            assert!(in_delta3(&viete(&t).unwrap()).unwrap());
        }
        assert!(!in_delta3(&sp(&[0.0, 20.0, 0.0])).unwrap());
    }

    #[test]
    fn q_matrices() {
        assert_eq!(q_matrix(2), vec![vec![1, 0, 0], vec![0, 1, 0], vec![2, 0, 1]]);
        assert_eq!(
            q_matrix(3),
            vec![vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![3, 0, 1, 0], vec![0, 2, 0, 1]]
        );
        assert_eq!(coeffs_from_sym(&sp(&[0.0, 0.0])).a(), &[1.0, 0.0, 2.0]);
    }

    #[test]
    fn reciprocal_map_examples() {
        let p = PalindromicPolynomial::new(vec![1.0, 0.0, 2.0]).unwrap();
        assert_eq!(sym_from_coeffs(&p).s(), &[0.0, 0.0]);
        let p = PalindromicPolynomial::new(vec![1.0, 4.0, 6.0]).unwrap();
        assert_eq!(sym_from_coeffs(&p).s(), &[4.0, 4.0]);
        assert_eq!(p.full(), vec![1.0, 4.0, 6.0, 4.0, 1.0]);
        assert_eq!(p.signed(), vec![1.0, -4.0, 6.0, -4.0, 1.0]);
    }

    fn expand_palindromic(t: &[f64]) -> Vec<f64> {
        // highest degree first
        let mut poly = vec![1.0];
        for &x in t {
            let f = [1.0, -x, 1.0];
            let mut next = vec![0.0; poly.len() + 2];
            for (i, &a) in poly.iter().enumerate() {
                for (j, &b) in f.iter().enumerate() {
                    next[i + j] += a * b;
                }
            }
            poly = next;
        }
        poly
    }

    #[test]
    fn appendix_identities() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for _ in 0..2000 {
            let g = rng.gen_range(2..=3);
            let t: Vec<f64> = (0..g).map(|_| rng.gen_range(-2.0..=2.0)).collect();
            let s = viete(&t).unwrap();
            let a = coeffs_from_sym(&s);
            let brute = expand_palindromic(&t);
            for (x, y) in a.signed().iter().zip(&brute) {
                assert!((x - y).abs() < 1e-12);
            }
            let back = sym_from_coeffs(&a);
            for (x, y) in back.s().iter().zip(s.s()) {
                assert!((x - y).abs() < 1e-12);
            }
        }
        let t2 = [0.3, -1.2];
        let s = viete(&t2).unwrap();
        assert!((exterior_trace(&t2, 2).unwrap() - (s.s()[1] + 2.0)).abs() < 1e-15);
        let t3 = [0.3, -1.2, 1.9];
        let s = viete(&t3).unwrap();
        assert!((exterior_trace(&t3, 3).unwrap() - (s.s()[2] + 2.0 * s.s()[0])).abs() < 1e-14);
        assert!((exterior_trace(&t3, 5).unwrap() - s.s()[0]).abs() < 1e-14);
        assert!(exterior_trace(&t3, 7).is_err());
    }

    #[test]
    fn exterior_traces_at_identity_are_binomials() {
        for g in 1..=4 {
            let t = vec![2.0; g];
            for n in 0..=2 * g {
                let v = exterior_trace(&t, n).unwrap();
                assert_eq!(v, binom(2 * g as u64, n as u64) as f64, "g={g} n={n}");
            }
        }
    }
}
