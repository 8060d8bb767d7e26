//! Complete bipartite frameworks with one part on each coordinate axis.
//!
//! Infinite parts are modelled as a finite prefix plus a declared infimum of
//! the absolute values in the remaining tail.

use std::ops::{Mul, Sub};

use num_traits::One;

use crate::error::{Error, Result};
use crate::flex::Motion;
use crate::framework::{Framework, Point};
use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq)]
pub struct DixonLinkage {
    /// Part A at `(x_n, 0)`.
    pub x: Vec<f64>,
    /// Part B at `(0, y_n)`.
    pub y: Vec<f64>,
    /// Infimum of `|x_n|` over an undeclared tail, if there is one.
    pub tail_inf_x: Option<f64>,
    pub tail_inf_y: Option<f64>,
}

impl DixonLinkage {
    pub fn finite(x: Vec<f64>, y: Vec<f64>) -> Self {
        DixonLinkage {
            x,
            y,
            tail_inf_x: None,
            tail_inf_y: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, vals, tail) in [
            ("x", &self.x, self.tail_inf_x),
            ("y", &self.y, self.tail_inf_y),
        ] {
            if vals.is_empty() {
                return Err(Error::InvalidLinkage(format!("no {name}-values")));
            }
            if vals.iter().any(|v| !v.is_finite() || *v == 0.0) {
                return Err(Error::InvalidLinkage(format!(
                    "{name}-values must be finite and nonzero"
                )));
            }
            let mut sorted = vals.clone();
            sorted.sort_by(f64::total_cmp);
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidLinkage(format!("repeated {name}-value")));
            }
            if let Some(t) = tail {
                let min = vals.iter().map(|v| v.abs()).fold(f64::INFINITY, f64::min);
                if !(0.0..=min).contains(&t) {
                    return Err(Error::InvalidLinkage(format!(
                        "tail infimum {t} of {name} must lie in [0, {min}]"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Infimum of `|x_n|` over the listed values and the tail.
    pub fn effective_inf_x(&self) -> f64 {
        effective(&self.x, self.tail_inf_x)
    }

    pub fn effective_inf_y(&self) -> f64 {
        effective(&self.y, self.tail_inf_y)
    }

    /// `K_{m,n}` with part A as vertices `0..m` and part B as `m..m+n`.
    pub fn graph(&self) -> Graph {
        let m = self.x.len();
        let n = self.y.len();
        let edges: Vec<(usize, usize)> = (0..m)
            .flat_map(|i| (0..n).map(move |j| (i, m + j)))
            .collect();
        Graph::from_indexed(m + n, &edges).expect("complete bipartite graph")
    }

    pub fn framework(&self) -> Framework {
        let pts = self
            .x
            .iter()
            .map(|&x| [x, 0.0])
            .chain(self.y.iter().map(|&y| [0.0, y]))
            .collect();
        Framework::new(self.graph(), pts).expect("one point per vertex")
    }
}

fn effective(vals: &[f64], tail: Option<f64>) -> f64 {
    let listed = vals.iter().map(|v| v.abs()).fold(f64::INFINITY, f64::min);
    tail.map_or(listed, |t| t.min(listed))
}

/// Flexible iff the larger of the two effective infima is positive.
pub fn dixon_flexible(d: &DixonLinkage) -> Result<bool> {
    d.validate()?;
    Ok(d.effective_inf_x().max(d.effective_inf_y()) > 0.0)
}

/// Squared coordinates at parameter `t`: the side with the larger infimum
/// shrinks by `c²s` and the other grows by the same amount, where
/// `s = 1 − (1 − t)²`.
pub fn squared_paths<T>(x2: &[T], y2: &[T], c2: T, t: T, shrink_x: bool) -> (Vec<T>, Vec<T>)
where
    T: Clone + One + Sub<Output = T> + Mul<Output = T> + std::ops::Add<Output = T>,
{
    let u = T::one() - t;
    let shift = c2 * (T::one() - u.clone() * u);
    let down = |v: &T| v.clone() - shift.clone();
    let up = |v: &T| v.clone() + shift.clone();
    if shrink_x {
        (x2.iter().map(down).collect(), y2.iter().map(up).collect())
    } else {
        (x2.iter().map(up).collect(), y2.iter().map(down).collect())
    }
}

/// The axis-sliding flex of a Dixon linkage over `t ∈ [0, 1]`.
#[derive(Clone, Debug)]
pub struct DixonFlex {
    pub linkage: DixonLinkage,
    pub c: f64,
    pub shrink_x: bool,
    graph: Graph,
}

pub fn dixon_flex(d: &DixonLinkage) -> Result<DixonFlex> {
    d.validate()?;
    let (ix, iy) = (d.effective_inf_x(), d.effective_inf_y());
    let c = ix.max(iy);
    if c <= 0.0 {
        return Err(Error::DixonDegenerate);
    }
    Ok(DixonFlex {
        linkage: d.clone(),
        c,
        shrink_x: ix >= iy,
        graph: d.graph(),
    })
}

impl DixonFlex {
    /// Coordinates `(x_n(t), y_n(t))`, keeping the signs of the initial values.
    pub fn coordinates(&self, t: f64) -> (Vec<f64>, Vec<f64>) {
        let sq = |v: &[f64]| v.iter().map(|a| a * a).collect::<Vec<_>>();
        let (x2, y2) = squared_paths(
            &sq(&self.linkage.x),
            &sq(&self.linkage.y),
            self.c * self.c,
            t,
            self.shrink_x,
        );
        let root = |v2: &[f64], v0: &[f64]| -> Vec<f64> {
            v2.iter()
                .zip(v0)
                .map(|(s, o)| s.max(0.0).sqrt().copysign(*o))
                .collect()
        };
        (root(&x2, &self.linkage.x), root(&y2, &self.linkage.y))
    }
}

impl Motion for DixonFlex {
    fn graph(&self) -> &Graph {
        &self.graph
    }

    fn placement_at(&self, t: f64) -> Vec<Point> {
        let (x, y) = self.coordinates(t);
        x.into_iter()
            .map(|x| [x, 0.0])
            .chain(y.into_iter().map(|y| [0.0, y]))
            .collect()
    }

    fn domain(&self) -> (f64, f64) {
        (0.0, 1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::Rational;
    use crate::flex::check_flex;

    #[test]
    fn single_bar_keeps_length_five() {
        let d = DixonLinkage::finite(vec![3.0], vec![4.0]);
        let x = dixon_flex(&d).unwrap();
        for i in 0..=10 {
            let p = x.placement_at(i as f64 / 10.0);
            assert!(((p[0][0] - p[1][0]).hypot(p[0][1] - p[1][1]) - 5.0).abs() < 1e-12);
        }
    }

    #[test]
    fn smallest_x_reaches_origin() {
        let d = DixonLinkage::finite(vec![1.0, 2.0], vec![1.0, 3.0]);
        let x = dixon_flex(&d).unwrap();
        assert_eq!(x.c, 1.0);
        let (xs, _) = x.coordinates(1.0);
        assert_eq!(xs[0], 0.0);
        assert_eq!(x.placement_at(0.0), d.framework().points);
    }

    #[test]
    fn exact_length_identity_on_rationals() {
        let x2 = vec![Rational::new(9, 4), Rational::from_integer(7)];
        let y2 = vec![Rational::new(1, 3), Rational::from_integer(5)];
        let c2 = Rational::new(9, 4);
        for t in [
            Rational::new(0, 1),
            Rational::new(1, 3),
            Rational::new(1, 1),
        ] {
            let (a, b) = squared_paths(&x2, &y2, c2, t, true);
            for i in 0..2 {
                for j in 0..2 {
                    assert_eq!(a[i] + b[j], x2[i] + y2[j]);
                }
            }
        }
    }

    #[test]
    fn verdicts() {
        let mut d = DixonLinkage::finite(vec![1.0, 2.0], vec![1.5, 3.0]);
        assert!(dixon_flexible(&d).unwrap());
        d.tail_inf_x = Some(1.0);
        d.tail_inf_y = Some(1.5);
        assert!(dixon_flexible(&d).unwrap());
        d.tail_inf_x = Some(0.0);
        d.tail_inf_y = Some(0.0);
        assert!(!dixon_flexible(&d).unwrap());
        assert!(matches!(dixon_flex(&d), Err(Error::DixonDegenerate)));
        // a single vanishing side is compensated by sliding the other axis
        d.tail_inf_y = Some(1.5);
        assert!(dixon_flexible(&d).unwrap());
        let x = dixon_flex(&d).unwrap();
        assert!(!x.shrink_x);
        let r = check_flex(&d.framework(), &x, 64, None);
        assert!(r.max_length_deviation < 1e-9 && r.nontrivial());
    }

    #[test]
    fn invalid_linkages() {
        assert!(DixonLinkage::finite(vec![1.0, 1.0], vec![2.0])
            .validate()
            .is_err());
        assert!(DixonLinkage::finite(vec![0.0], vec![2.0])
            .validate()
            .is_err());
        let mut d = DixonLinkage::finite(vec![1.0], vec![2.0]);
        d.tail_inf_x = Some(3.0);
        assert!(d.validate().is_err());
    }
}
