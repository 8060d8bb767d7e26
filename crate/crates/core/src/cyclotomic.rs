//! Exact arithmetic for fivefold geometry.
//!
//! [`Cyclo5`] is an integer combination of the five unit vectors
//! `e_j = (cos 2πj/5, sin 2πj/5)`. [`QSqrt5`] is an element of the real
//! field `Q(√5)`, which holds every dot product and ratio of sines needed by
//! the pentagrid construction.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive, Zero};

pub type Rational = Ratio<i128>;

/// `Σ_j k[j] e_j` in canonical form (`k[4] == 0`, using `Σ e_j = 0`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Cyclo5([i64; 5]);

impl Cyclo5 {
    pub const ZERO: Cyclo5 = Cyclo5([0; 5]);

    pub fn new(k: [i64; 5]) -> Cyclo5 {
        let t = k[4];
        Cyclo5([k[0] - t, k[1] - t, k[2] - t, k[3] - t, 0])
    }

    /// The unit vector `e_j`.
    pub fn unit(j: usize) -> Cyclo5 {
        let mut k = [0; 5];
        k[j % 5] = 1;
        Cyclo5::new(k)
    }

    pub fn coefficients(&self) -> [i64; 5] {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0 == [0; 5]
    }

    /// Clockwise rotation by 2π/5: `e_j ↦ e_{j-1}`.
    pub fn rotate_cw(&self) -> Cyclo5 {
        let k = self.0;
        Cyclo5::new([k[1], k[2], k[3], k[4], k[0]])
    }

    /// Counter-clockwise rotation by 2π/5: `e_j ↦ e_{j+1}`.
    pub fn rotate_ccw(&self) -> Cyclo5 {
        let k = self.0;
        Cyclo5::new([k[4], k[0], k[1], k[2], k[3]])
    }

    /// `Some(±(j+1))` when the vector is `±e_j`.
    pub fn as_signed_unit(&self) -> Option<i32> {
        (0..5).find_map(|j| {
            if *self == Cyclo5::unit(j) {
                Some(j as i32 + 1)
            } else if *self == -Cyclo5::unit(j) {
                Some(-(j as i32 + 1))
            } else {
                None
            }
        })
    }

    pub fn to_f64(&self) -> [f64; 2] {
        let mut p = [0.0, 0.0];
        for (j, &k) in self.0.iter().enumerate() {
            let a = std::f64::consts::TAU * j as f64 / 5.0;
            p[0] += k as f64 * a.cos();
            p[1] += k as f64 * a.sin();
        }
        p
    }

    /// Dot product with `e_j`, exactly.
    pub fn dot_unit(&self, j: usize) -> QSqrt5 {
        (0..5)
            .map(|i| unit_dot(i, j) * QSqrt5::from_int(self.0[i] as i128))
            .fold(QSqrt5::zero(), |a, b| a + b)
    }

    /// Squared Euclidean length, exactly.
    pub fn norm_sq(&self) -> QSqrt5 {
        (0..5)
            .map(|j| QSqrt5::from_int(self.0[j] as i128) * self.dot_unit(j))
            .fold(QSqrt5::zero(), |a, b| a + b)
    }
}

impl Add for Cyclo5 {
    type Output = Cyclo5;
    fn add(self, o: Cyclo5) -> Cyclo5 {
        let (a, b) = (self.0, o.0);
        Cyclo5::new([
            a[0] + b[0],
            a[1] + b[1],
            a[2] + b[2],
            a[3] + b[3],
            a[4] + b[4],
        ])
    }
}

impl Sub for Cyclo5 {
    type Output = Cyclo5;
    fn sub(self, o: Cyclo5) -> Cyclo5 {
        self + (-o)
    }
}

impl Neg for Cyclo5 {
    type Output = Cyclo5;
    fn neg(self) -> Cyclo5 {
        let a = self.0;
        Cyclo5::new([-a[0], -a[1], -a[2], -a[3], -a[4]])
    }
}

/// `e_i · e_j = cos(2π(i−j)/5)`.
fn unit_dot(i: usize, j: usize) -> QSqrt5 {
    cos_fifth((i + 5 - j % 5) % 5)
}

/// `cos(2πm/5)`: 1, (√5−1)/4, −(√5+1)/4, −(√5+1)/4, (√5−1)/4.
pub fn cos_fifth(m: usize) -> QSqrt5 {
    let q = |a: i128, b: i128| QSqrt5::new(Ratio::new(a, 4), Ratio::new(b, 4));
    match m % 5 {
        0 => QSqrt5::one(),
        1 | 4 => q(-1, 1),
        _ => q(-1, -1),
    }
}

/// `sin(2πm/5) / sin(2π·2/5)`: 0, φ, 1, −1, −φ.
pub fn sin_fifth_ratio(m: i64) -> QSqrt5 {
    match m.rem_euclid(5) {
        0 => QSqrt5::zero(),
        1 => QSqrt5::phi(),
        2 => QSqrt5::one(),
        3 => -QSqrt5::one(),
        _ => -QSqrt5::phi(),
    }
}

/// `a + b√5` with rational `a`, `b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QSqrt5 {
    pub a: Rational,
    pub b: Rational,
}

impl QSqrt5 {
    pub fn new(a: Rational, b: Rational) -> QSqrt5 {
        QSqrt5 { a, b }
    }

    pub fn from_rational(a: Rational) -> QSqrt5 {
        QSqrt5::new(a, Rational::zero())
    }

    pub fn from_int(a: i128) -> QSqrt5 {
        QSqrt5::from_rational(Rational::from_integer(a))
    }

    pub fn zero() -> QSqrt5 {
        QSqrt5::from_int(0)
    }

    pub fn one() -> QSqrt5 {
        QSqrt5::from_int(1)
    }

    /// The golden ratio `(1 + √5)/2`.
    pub fn phi() -> QSqrt5 {
        QSqrt5::new(Ratio::new(1, 2), Ratio::new(1, 2))
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// The integer value, if this is an integer.
    pub fn as_integer(&self) -> Option<i128> {
        (self.b.is_zero() && self.a.is_integer()).then(|| self.a.to_integer())
    }

    pub fn signum(&self) -> i32 {
        let (sa, sb) = (sign(&self.a), sign(&self.b));
        if sa == sb || sb == 0 {
            return sa;
        }
        if sa == 0 {
            return sb;
        }
        // opposite signs: compare a² with 5b²
        let a2 = self.a * self.a;
        let b2 = self.b * self.b * Rational::from_integer(5);
        match a2.cmp(&b2) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.a.to_f64().unwrap() + self.b.to_f64().unwrap() * 5f64.sqrt()
    }

    /// Least integer `n` with `n ≥ self`.
    pub fn ceil(&self) -> i64 {
        let mut n = self.to_f64().ceil() as i64;
        while (QSqrt5::from_int(n as i128) - *self).signum() < 0 {
            n += 1;
        }
        while (QSqrt5::from_int(n as i128 - 1) - *self).signum() >= 0 {
            n -= 1;
        }
        n
    }

    /// Greatest integer `n` with `n ≤ self`.
    pub fn floor(&self) -> i64 {
        -(-*self).ceil()
    }

    pub fn recip(&self) -> QSqrt5 {
        // 1/(a + b√5) = (a − b√5)/(a² − 5b²)
        let d = self.a * self.a - self.b * self.b * Rational::from_integer(5);
        assert!(!d.is_zero(), "division by zero in Q(√5)");
        QSqrt5::new(self.a / d, -self.b / d)
    }
}

fn sign(r: &Rational) -> i32 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

impl PartialOrd for QSqrt5 {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for QSqrt5 {
    fn cmp(&self, o: &Self) -> Ordering {
        (*self - *o).signum().cmp(&0)
    }
}

impl Add for QSqrt5 {
    type Output = QSqrt5;
    fn add(self, o: QSqrt5) -> QSqrt5 {
        QSqrt5::new(self.a + o.a, self.b + o.b)
    }
}

impl Sub for QSqrt5 {
    type Output = QSqrt5;
    fn sub(self, o: QSqrt5) -> QSqrt5 {
        QSqrt5::new(self.a - o.a, self.b - o.b)
    }
}

impl Neg for QSqrt5 {
    type Output = QSqrt5;
    fn neg(self) -> QSqrt5 {
        QSqrt5::new(-self.a, -self.b)
    }
}

impl Mul for QSqrt5 {
    type Output = QSqrt5;
    fn mul(self, o: QSqrt5) -> QSqrt5 {
        let five = Rational::from_integer(5);
        QSqrt5::new(
            self.a * o.a + five * self.b * o.b,
            self.a * o.b + self.b * o.a,
        )
    }
}

impl Div for QSqrt5 {
    type Output = QSqrt5;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: QSqrt5) -> QSqrt5 {
        self * o.recip()
    }
}

impl fmt::Display for QSqrt5 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}√5", self.a, self.b)
    }
}
