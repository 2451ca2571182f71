//! Rank-two even lattices given by an integer Gram matrix.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{int, QuadScalar, Rational};

/// A lattice point in coordinates of the fixed basis `{a1, a2}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct LatVec(pub i64, pub i64);

impl LatVec {
    pub const ZERO: LatVec = LatVec(0, 0);

    pub fn is_zero(&self) -> bool {
        self.0 == 0 && self.1 == 0
    }

    pub fn to_hvec(self) -> HVec {
        HVec(QuadScalar::from_int(self.0), QuadScalar::from_int(self.1))
    }

    pub fn coords(self) -> [i64; 2] {
        [self.0, self.1]
    }

    pub fn gcd(self) -> i64 {
        self.0.gcd(&self.1)
    }

    /// `v / gcd(v)`, the primitive vector on the same ray.
    pub fn primitive_part(self) -> LatVec {
        let g = self.gcd();
        if g == 0 {
            self
        } else {
            LatVec(self.0 / g, self.1 / g)
        }
    }

    /// Flip so the first nonzero coordinate is positive.
    pub fn oriented(self) -> LatVec {
        if self.0 < 0 || (self.0 == 0 && self.1 < 0) {
            -self
        } else {
            self
        }
    }

    pub fn max_abs(self) -> i64 {
        self.0.abs().max(self.1.abs())
    }
}

impl Add for LatVec {
    type Output = LatVec;
    fn add(self, o: LatVec) -> LatVec {
        LatVec(self.0 + o.0, self.1 + o.1)
    }
}

impl Sub for LatVec {
    type Output = LatVec;
    fn sub(self, o: LatVec) -> LatVec {
        LatVec(self.0 - o.0, self.1 - o.1)
    }
}

impl Neg for LatVec {
    type Output = LatVec;
    fn neg(self) -> LatVec {
        LatVec(-self.0, -self.1)
    }
}

impl Mul<LatVec> for i64 {
    type Output = LatVec;
    fn mul(self, v: LatVec) -> LatVec {
        LatVec(self * v.0, self * v.1)
    }
}

impl fmt::Display for LatVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.0, self.1)
    }
}

/// A vector of `E = R (x) L` with coordinates in the session field.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct HVec(pub QuadScalar, pub QuadScalar);

impl HVec {
    pub fn is_zero(&self) -> bool {
        self.0.is_zero() && self.1.is_zero()
    }

    pub fn from_rationals(x: Rational, y: Rational) -> Self {
        HVec(x.into(), y.into())
    }

    pub fn scale(&self, c: &QuadScalar) -> HVec {
        HVec(&self.0 * c, &self.1 * c)
    }

    /// The coordinates as rationals, if both are rational.
    pub fn to_rational(&self) -> Option<[Rational; 2]> {
        Some([self.0.to_rational()?, self.1.to_rational()?])
    }

    /// The integer point, if both coordinates are integers.
    pub fn to_latvec(&self) -> Option<LatVec> {
        let [x, y] = self.to_rational()?;
        if !x.is_integer() || !y.is_integer() {
            return None;
        }
        Some(LatVec(x.to_integer().to_i64()?, y.to_integer().to_i64()?))
    }
}

impl Add for &HVec {
    type Output = HVec;
    fn add(self, o: &HVec) -> HVec {
        HVec(&self.0 + &o.0, &self.1 + &o.1)
    }
}

impl fmt::Display for HVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.0, self.1)
    }
}

impl From<LatVec> for HVec {
    fn from(v: LatVec) -> HVec {
        v.to_hvec()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Side {
    Minus,
    Zero,
    Plus,
}

impl Side {
    pub fn from_sign(s: i8) -> Side {
        match s.signum() {
            1 => Side::Plus,
            0 => Side::Zero,
            _ => Side::Minus,
        }
    }
}

/// An even, positive-definite lattice `Z a1 + Z a2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GramLattice {
    gram: [[i64; 2]; 2],
    names: [String; 2],
}

impl GramLattice {
    pub fn new(gram: [[i64; 2]; 2]) -> Result<Self> {
        Self::with_names(gram, ["a1".to_string(), "a2".to_string()])
    }

    pub fn with_names(gram: [[i64; 2]; 2], names: [String; 2]) -> Result<Self> {
        if gram[0][1] != gram[1][0] {
            return Err(Error::BadLattice("Gram matrix is not symmetric".into()));
        }
        if gram[0][0] % 2 != 0 || gram[1][1] % 2 != 0 {
            return Err(Error::BadLattice("Gram matrix has an odd diagonal entry".into()));
        }
        let det = gram[0][0] * gram[1][1] - gram[0][1] * gram[1][0];
        if gram[0][0] <= 0 || det <= 0 {
            return Err(Error::BadLattice("Gram matrix is not positive-definite".into()));
        }
        Ok(GramLattice { gram, names })
    }

    /// The root lattice A2.
    pub fn a2() -> Self {
        Self::new([[2, -1], [-1, 2]]).unwrap()
    }

    /// `diag(a, b)` for even positive `a`, `b`.
    pub fn diag(a: i64, b: i64) -> Self {
        Self::new([[a, 0], [0, b]]).unwrap()
    }

    pub fn gram(&self) -> [[i64; 2]; 2] {
        self.gram
    }

    pub fn names(&self) -> &[String; 2] {
        &self.names
    }

    pub fn det(&self) -> i64 {
        self.gram[0][0] * self.gram[1][1] - self.gram[0][1] * self.gram[1][0]
    }

    pub fn inner_lat(&self, u: LatVec, v: LatVec) -> i64 {
        let g = &self.gram;
        u.0 * (g[0][0] * v.0 + g[0][1] * v.1) + u.1 * (g[1][0] * v.0 + g[1][1] * v.1)
    }

    pub fn norm(&self, v: LatVec) -> i64 {
        self.inner_lat(v, v)
    }

    /// `G v` for a lattice point.
    pub fn apply(&self, v: LatVec) -> LatVec {
        let g = &self.gram;
        LatVec(g[0][0] * v.0 + g[0][1] * v.1, g[1][0] * v.0 + g[1][1] * v.1)
    }

    pub fn inner(&self, u: &HVec, v: &HVec) -> QuadScalar {
        let g = |i: usize, j: usize| QuadScalar::from_int(self.gram[i][j]);
        let gv0 = &g(0, 0) * &v.0 + &g(0, 1) * &v.1;
        let gv1 = &g(1, 0) * &v.0 + &g(1, 1) * &v.1;
        &u.0 * &gv0 + &u.1 * &gv1
    }

    pub fn inner_hl(&self, gamma: &HVec, v: LatVec) -> QuadScalar {
        let gv = self.apply(v);
        &gamma.0.scale(&int(gv.0)) + &gamma.1.scale(&int(gv.1))
    }

    pub fn side(&self, gamma: &HVec, v: LatVec) -> Result<Side> {
        if gamma.is_zero() {
            return Err(Error::ZeroGamma);
        }
        Ok(Side::from_sign(self.inner_hl(gamma, v).sign()))
    }

    /// Inverse Gram matrix over Q.
    pub fn gram_inverse(&self) -> [[Rational; 2]; 2] {
        let d = int(self.det());
        let g = &self.gram;
        [
            [int(g[1][1]) / &d, int(-g[0][1]) / &d],
            [int(-g[1][0]) / &d, int(g[0][0]) / &d],
        ]
    }

    /// Primitive generator of `P(gamma) ∩ L`, first nonzero coordinate
    /// positive, or `None` when the intersection is `{0}`.
    pub fn line_intersection(&self, gamma: &HVec) -> Result<Option<LatVec>> {
        if gamma.is_zero() {
            return Err(Error::ZeroGamma);
        }
        // (gamma|v) = c . v with c = G gamma; split c into rational and sqrt(D) parts.
        let g = |i: usize, j: usize| QuadScalar::from_int(self.gram[i][j]);
        let c0 = &g(0, 0) * &gamma.0 + &g(1, 0) * &gamma.1;
        let c1 = &g(0, 1) * &gamma.0 + &g(1, 1) * &gamma.1;
        let rows = [
            [c0.rational_part().clone(), c1.rational_part().clone()],
            [c0.irrational_part().clone(), c1.irrational_part().clone()],
        ];
        let det = &rows[0][0] * &rows[1][1] - &rows[0][1] * &rows[1][0];
        if !det.is_zero() {
            return Ok(None);
        }
        let row = rows
            .iter()
            .find(|r| !r[0].is_zero() || !r[1].is_zero())
            .expect("nonzero gamma gives a nonzero row");
        // Kernel of (p, q) is spanned by (-q, p); clear denominators.
        let l = row[0].denom().lcm(row[1].denom());
        let p = (&row[0] * Rational::from_integer(l.clone())).to_integer();
        let q = (&row[1] * Rational::from_integer(l)).to_integer();
        let g = p.gcd(&q);
        let x = (-&q / &g).to_i64().expect("coordinate fits in i64");
        let y = (&p / &g).to_i64().expect("coordinate fits in i64");
        Ok(Some(LatVec(x, y).oriented()))
    }

    /// A basis of `L` inside the open half-plane `P+(gamma)`: flip signs of
    /// the standard basis, or use `{b1, b1 - b2}` when the sides disagree.
    pub fn halfplane_basis(&self, gamma: &HVec) -> Result<(LatVec, LatVec)> {
        let e1 = LatVec(1, 0);
        let e2 = LatVec(0, 1);
        let s1 = self.side(gamma, e1)?;
        let s2 = self.side(gamma, e2)?;
        if s1 == s2 && s1 != Side::Zero {
            return Ok(if s1 == Side::Plus { (e1, e2) } else { (-e1, -e2) });
        }
        let (b1, b2, sb2) = if s1 != Side::Zero { (e1, e2, s2) } else { (e2, e1, s1) };
        let b1 = if self.side(gamma, b1)? == Side::Plus { b1 } else { -b1 };
        let b2 = if sb2 == Side::Plus { -b2 } else { b2 };
        Ok((b1, b1 - b2))
    }

    /// Primitive integer vector spanning the orthogonal complement of `alpha`.
    pub fn orthogonal_primitive(&self, alpha: LatVec) -> Result<LatVec> {
        if alpha.is_zero() {
            return Err(Error::ZeroVector);
        }
        let ga = self.apply(alpha);
        Ok(LatVec(-ga.1, ga.0).primitive_part().oriented())
    }

    pub fn discriminant(&self) -> DiscriminantData {
        let g = &self.gram;
        let d1 = g[0][0].gcd(&g[0][1]).gcd(&g[1][1]);
        let det = self.det();
        let invariant_factors = vec![d1, det / d1];
        let inv = self.gram_inverse();
        let mut reps: Vec<[Rational; 2]> = Vec::new();
        for w0 in 0..det {
            for w1 in 0..det {
                let x = &inv[0][0] * int(w0) + &inv[0][1] * int(w1);
                let y = &inv[1][0] * int(w0) + &inv[1][1] * int(w1);
                let r = [frac(&x), frac(&y)];
                if !reps.contains(&r) {
                    reps.push(r);
                }
            }
        }
        reps.sort();
        DiscriminantData { invariant_factors, coset_reps: reps }
    }

    /// All points with both coordinates in `[-r, r]`, row-major.
    pub fn box_points(r: i64) -> impl Iterator<Item = LatVec> {
        (-r..=r).flat_map(move |x| (-r..=r).map(move |y| LatVec(x, y)))
    }
}

fn frac(x: &Rational) -> Rational {
    x - x.floor()
}

/// Smith invariants of `G` and canonical representatives of `L°/L` in
/// rational lattice coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscriminantData {
    pub invariant_factors: Vec<i64>,
    pub coset_reps: Vec<[Rational; 2]>,
}

impl DiscriminantData {
    pub fn order(&self) -> i64 {
        self.invariant_factors.iter().product()
    }
}

/// Cosets of `(Z alpha)°/(Z alpha)` for `(alpha|alpha) = 2N`, as the
/// multiples `i/(2N)` of alpha.
pub fn rank_one_cosets(norm: i64) -> Vec<Rational> {
    (0..norm).map(|i| Rational::new(i.into(), norm.into())).collect()
}

pub fn det2(u: LatVec, v: LatVec) -> i64 {
    u.0 * v.1 - u.1 * v.0
}

pub fn is_primitive(v: LatVec) -> Result<bool> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(v.gcd() == 1)
}

pub fn is_basis_pair(u: LatVec, v: LatVec) -> bool {
    det2(u, v).abs() == 1
}

/// Coefficients `(m1, m2) >= 0` with `m1 a1 + m2 a2 = v`, if they exist.
pub fn cone_member(a1: LatVec, a2: LatVec, v: LatVec) -> Result<Option<(i64, i64)>> {
    let d = det2(a1, a2);
    if d == 0 {
        return Err(Error::DependentGenerators);
    }
    let n1 = det2(v, a2);
    let n2 = det2(a1, v);
    if n1 % d != 0 || n2 % d != 0 {
        return Ok(None);
    }
    let (m1, m2) = (n1 / d, n2 / d);
    Ok((m1 >= 0 && m2 >= 0).then_some((m1, m2)))
}

/// Rational vector helper: `(x, y)` scaled to a primitive integer vector.
pub fn primitive_from_rationals(x: &Rational, y: &Rational) -> Option<LatVec> {
    if x.is_zero() && y.is_zero() {
        return None;
    }
    let l = x.denom().lcm(y.denom());
    let xi = (x * Rational::from_integer(l.clone())).to_integer();
    let yi = (y * Rational::from_integer(l)).to_integer();
    let g = xi.gcd(&yi);
    Some(LatVec((xi / &g).to_i64()?, (yi / &g).to_i64()?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::QuadField;

    fn hv(a: i64, b: i64) -> HVec {
        LatVec(a, b).to_hvec()
    }

    fn gamma_sqrt2() -> HVec {
        HVec(QuadScalar::one(), QuadField::new(2).unwrap().sqrt_d())
    }

    #[test]
    fn inner_examples() {
        let a2 = GramLattice::a2();
        assert_eq!(a2.inner(&hv(1, 0), &hv(0, 1)), QuadScalar::from_int(-1));
        assert_eq!(a2.inner(&hv(0, 0), &hv(3, 7)), QuadScalar::zero());
        let d24 = GramLattice::diag(2, 4);
        assert_eq!(d24.inner(&hv(1, 1), &hv(1, 1)), QuadScalar::from_int(6));
    }

    #[test]
    fn side_examples() {
        let l = GramLattice::diag(2, 2);
        assert_eq!(l.side(&hv(0, 1), LatVec(5, 0)).unwrap(), Side::Zero);
        assert_eq!(l.side(&hv(0, 1), LatVec(-3, 2)).unwrap(), Side::Plus);
        assert_eq!(l.side(&gamma_sqrt2(), LatVec(-3, 2)).unwrap(), Side::Minus);
        assert_eq!(l.side(&hv(0, 0), LatVec(1, 0)), Err(Error::ZeroGamma));
    }

    #[test]
    fn line_intersection_examples() {
        let l = GramLattice::diag(2, 2);
        assert_eq!(l.line_intersection(&hv(0, 1)).unwrap(), Some(LatVec(1, 0)));
        assert_eq!(l.line_intersection(&hv(1, 2)).unwrap(), Some(LatVec(2, -1)));
        assert_eq!(l.line_intersection(&gamma_sqrt2()).unwrap(), None);
    }

    #[test]
    fn primitivity_and_bases() {
        assert!(is_primitive(LatVec(1, 2)).unwrap());
        assert!(!is_primitive(LatVec(2, 4)).unwrap());
        assert!(is_primitive(LatVec(-3, 5)).unwrap());
        assert_eq!(is_primitive(LatVec(0, 0)), Err(Error::ZeroVector));
        assert!(is_basis_pair(LatVec(1, 0), LatVec(0, 1)));
        assert!(!is_basis_pair(LatVec(1, 0), LatVec(1, 2)));
        assert!(is_basis_pair(LatVec(2, 1), LatVec(1, 1)));
    }

    #[test]
    fn cone_member_examples() {
        let e1 = LatVec(1, 0);
        let e2 = LatVec(0, 1);
        assert_eq!(cone_member(e1, e2, LatVec(3, 4)).unwrap(), Some((3, 4)));
        assert_eq!(cone_member(e1, e2, LatVec(-1, 0)).unwrap(), None);
        assert_eq!(cone_member(LatVec(2, 1), LatVec(1, 1), LatVec(5, 3)).unwrap(), Some((2, 1)));
        assert_eq!(cone_member(e1, LatVec(2, 0), e1), Err(Error::DependentGenerators));
    }

    #[test]
    fn halfplane_basis_examples() {
        let l = GramLattice::diag(2, 2);
        for (lat, g) in [
            (l.clone(), hv(1, 0)),
            (l.clone(), hv(1, 1)),
            (l.clone(), hv(-1, 3)),
            (l.clone(), hv(0, -1)),
            (GramLattice::a2(), gamma_sqrt2()),
        ] {
            let (b1, b2) = lat.halfplane_basis(&g).unwrap();
            assert_eq!(lat.side(&g, b1).unwrap(), Side::Plus);
            assert_eq!(lat.side(&g, b2).unwrap(), Side::Plus);
            assert!(is_basis_pair(b1, b2));
        }
        assert_eq!(l.halfplane_basis(&hv(1, 1)).unwrap(), (LatVec(1, 0), LatVec(0, 1)));
    }

    #[test]
    fn discriminant_examples() {
        let d = GramLattice::diag(2, 2).discriminant();
        assert_eq!(d.invariant_factors, vec![2, 2]);
        assert_eq!(d.coset_reps.len(), 4);
        let d = GramLattice::a2().discriminant();
        assert_eq!(d.order(), 3);
        assert_eq!(d.coset_reps.len(), 3);
        // A2 dual: (1/3)(2,1) and (1/3)(1,2)
        assert!(d.coset_reps.contains(&[Rational::new(2.into(), 3.into()), Rational::new(1.into(), 3.into())]));
        assert_eq!(rank_one_cosets(4).len(), 4);
    }

    #[test]
    fn discriminant_reps_are_dual_vectors() {
        for l in [GramLattice::diag(2, 4), GramLattice::new([[4, 1], [1, 6]]).unwrap()] {
            let d = l.discriminant();
            assert_eq!(d.coset_reps.len() as i64, l.det());
            let g = l.gram();
            for r in &d.coset_reps {
                for row in g {
                    let s = &r[0] * int(row[0]) + &r[1] * int(row[1]);
                    assert!(s.is_integer());
                }
            }
        }
    }

    #[test]
    fn rejects_bad_grams() {
        assert!(GramLattice::new([[2, 1], [0, 2]]).is_err());
        assert!(GramLattice::new([[3, 0], [0, 2]]).is_err());
        assert!(GramLattice::new([[2, 3], [3, 2]]).is_err());
        assert!(GramLattice::new([[-2, 0], [0, -2]]).is_err());
    }

    #[test]
    fn orthogonal_vector() {
        let a2 = GramLattice::a2();
        let b = a2.orthogonal_primitive(LatVec(1, 0)).unwrap();
        assert_eq!(a2.inner_lat(b, LatVec(1, 0)), 0);
        assert_eq!(b, LatVec(1, 2));
    }
}
