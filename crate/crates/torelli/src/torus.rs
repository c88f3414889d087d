//! Lattice lines on the square torus `R²/2Z²` with the point involution
//! `(x, y) ↦ (2−x, 2−y)`: realizations of primitive homology classes by
//! involution-invariant lines avoiding marked points, the two-line
//! construction for classes with vanishing ν-value, an annulus-occupancy
//! isotopy test in the marked complement, the middle-basis normalization
//! table, and an SVG picture of the fundamental domain.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::euclid::nu;
use crate::linalg::{gcd_i64, IntMatrix};

/// First marked point, fixed by the involution.
pub const MARKED_P: (i64, i64) = (1, 1);
/// Second marked point, fixed by the involution.
pub const MARKED_Q: (i64, i64) = (1, 0);

/// The line `{(x, y) : a·x + b·y + c ≡ 0 mod 2}` on the torus `R²/2Z²`,
/// with `gcd(a, b) = 1` and `c = c2/2` stored through its doubled value
/// `c2 ∈ {0, 1, 2, 3}` (so `c` is an integer or a half-integer, mod 2).
///
/// The realized homology class, in the basis `(e₁, e₂)` of the two
/// coordinate loops, is `(b, −a)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "LatticeLineRepr", into = "LatticeLineRepr")]
pub struct LatticeLine {
    a: i64,
    b: i64,
    c2: u8,
}

#[derive(Serialize, Deserialize)]
struct LatticeLineRepr {
    a: i64,
    b: i64,
    c2: u8,
}

impl TryFrom<LatticeLineRepr> for LatticeLine {
    type Error = Error;
    fn try_from(r: LatticeLineRepr) -> Result<Self> {
        LatticeLine::new(r.a, r.b, r.c2)
    }
}

impl From<LatticeLine> for LatticeLineRepr {
    fn from(l: LatticeLine) -> Self {
        LatticeLineRepr { a: l.a, b: l.b, c2: l.c2 }
    }
}

impl LatticeLine {
    pub fn new(a: i64, b: i64, c2: u8) -> Result<Self> {
        if a == 0 && b == 0 {
            return Err(Error::InvalidInput("line needs (a, b) != (0, 0)".into()));
        }
        if gcd_i64(a, b) != 1 {
            return Err(Error::InvalidInput(format!(
                "line coefficients ({a}, {b}) are not coprime"
            )));
        }
        if c2 > 3 {
            return Err(Error::InvalidInput(format!(
                "doubled offset must be reduced mod 4, got {c2}"
            )));
        }
        Ok(LatticeLine { a, b, c2 })
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    /// Doubled offset: the line's constant term is `c2/2`, taken mod 2.
    pub fn c2(&self) -> u8 {
        self.c2
    }

    /// The homology class traced out by the line, `(b, −a)`.
    pub fn realized_class(&self) -> Result<[i64; 2]> {
        let neg_a = self
            .a
            .checked_neg()
            .ok_or(Error::Overflow("line coefficient negation"))?;
        Ok([self.b, neg_a])
    }

    /// ν-value of the realized class; equals `a(1 + b) mod 2`.
    pub fn class_nu(&self) -> u8 {
        (self.a.rem_euclid(2) * (1 + self.b.rem_euclid(2)) % 2) as u8
    }

    /// Image under the involution `(x, y) ↦ (2−x, 2−y)`: the parallel line
    /// with negated offset.
    pub fn involution_image(&self) -> LatticeLine {
        LatticeLine { a: self.a, b: self.b, c2: (4 - self.c2) % 4 }
    }

    /// Whether the involution maps the line onto itself as a set.
    pub fn is_involution_invariant(&self) -> bool {
        self.same_set(&self.involution_image())
    }

    /// Set equality of lines: equal coefficient triples, or triples
    /// differing by an overall sign (`(−a, −b, −c)` cuts out the same set).
    pub fn same_set(&self, other: &LatticeLine) -> bool {
        (self.a == other.a && self.b == other.b && self.c2 == other.c2)
            || (self.a == -other.a
                && self.b == -other.b
                && self.c2 == (4 - other.c2) % 4)
    }

    /// Whether two lines have the same direction (coefficients equal up to
    /// an overall sign).
    pub fn is_parallel_to(&self, other: &LatticeLine) -> bool {
        (self.a == other.a && self.b == other.b)
            || (self.a == -other.a && self.b == -other.b)
    }

    /// Whether a lattice point of `Z²` lies on the line.
    pub fn contains_point(&self, point: (i64, i64)) -> bool {
        (self.doubled_height(point) + self.c2 as i64).rem_euclid(4) == 0
    }

    /// Doubled transverse height `2(a·x + b·y) mod 4` of a lattice point;
    /// the line itself sits at height `−c2 mod 4` on the transverse circle.
    fn doubled_height(&self, point: (i64, i64)) -> i64 {
        let v = 2 * (self.a as i128 * point.0 as i128 + self.b as i128 * point.1 as i128);
        v.rem_euclid(4) as i64
    }
}

fn coefficients_for_class(w: [i64; 2]) -> Result<(i64, i64)> {
    if gcd_i64(w[0], w[1]) != 1 {
        return Err(Error::Precondition(format!(
            "class ({}, {}) is not primitive",
            w[0], w[1]
        )));
    }
    let a = w[1]
        .checked_neg()
        .ok_or(Error::Overflow("class coordinate negation"))?;
    Ok((a, w[0]))
}

/// Realize a primitive class by an involution-invariant line avoiding the
/// marked point [`MARKED_P`]: coefficients `(a, b) = (−w₂, w₁)`, offset
/// `c = 0` if `a + b` is odd and `c = 1` otherwise.
pub fn realize_symmetric(w: [i64; 2]) -> Result<LatticeLine> {
    let (a, b) = coefficients_for_class(w)?;
    let c2 = if (a + b).rem_euclid(2) == 1 { 0 } else { 2 };
    LatticeLine::new(a, b, c2)
}

/// Realize a primitive class with ν-value 1 by an involution-invariant
/// line through the origin, avoiding both marked points. The ν condition
/// is exactly `a` odd and `b` even for the line coefficients.
pub fn realize_nu1(w: [i64; 2]) -> Result<LatticeLine> {
    let (a, b) = coefficients_for_class(w)?;
    if nu(w[0], w[1]) != 1 {
        return Err(Error::Precondition(format!(
            "class ({}, {}) has vanishing form value; the single-line realization needs value 1",
            w[0], w[1]
        )));
    }
    debug_assert!(a.rem_euclid(2) == 1 && b.rem_euclid(2) == 0);
    LatticeLine::new(a, b, 0)
}

/// Realize a primitive class with ν-value 0 by a pair of disjoint parallel
/// lines with offsets `1/2` and `3/2` that the involution swaps; each
/// avoids both marked points, and the marked points sit in different
/// complementary annuli (so the lines are not isotopic in the marked
/// complement).
pub fn realize_nu0_pair(w: [i64; 2]) -> Result<(LatticeLine, LatticeLine)> {
    let (a, b) = coefficients_for_class(w)?;
    if nu(w[0], w[1]) != 0 {
        return Err(Error::Precondition(format!(
            "class ({}, {}) has form value 1; the two-line realization needs value 0",
            w[0], w[1]
        )));
    }
    Ok((LatticeLine::new(a, b, 1)?, LatticeLine::new(a, b, 3)?))
}

/// Decide isotopy of two disjoint parallel lines in the complement of the
/// marked points: the complement of the two lines is a pair of annuli, and
/// the lines are isotopic there exactly when one annulus contains no
/// marked point. Errors if the lines are not parallel, coincide, or a
/// marked point lies on one of them.
pub fn isotopic_in_marked_complement(
    l1: &LatticeLine,
    l2: &LatticeLine,
    marked: &[(i64, i64)],
) -> Result<bool> {
    if !l1.is_parallel_to(l2) {
        return Err(Error::Precondition(
            "isotopy test requires parallel lines".into(),
        ));
    }
    if l1.same_set(l2) {
        return Err(Error::Precondition(
            "isotopy test requires two distinct lines".into(),
        ));
    }
    // Normalize the second line to the first one's coefficient sign so both
    // heights live on the same transverse circle.
    let l2n = if l2.a == l1.a && l2.b == l1.b {
        *l2
    } else {
        LatticeLine { a: l1.a, b: l1.b, c2: (4 - l2.c2) % 4 }
    };
    let h1 = (4 - l1.c2 as i64) % 4;
    let h2 = (4 - l2n.c2 as i64) % 4;
    // A point at height h lies in annulus 0 if h is strictly between h1 and
    // h2 going counterclockwise on the transverse circle R/4Z, else in
    // annulus 1.
    let span = (h2 - h1).rem_euclid(4);
    let mut counts = [0usize; 2];
    for &m in marked {
        let h = l1.doubled_height(m);
        if h == h1 || h == h2 {
            return Err(Error::Precondition(format!(
                "marked point ({}, {}) lies on one of the lines",
                m.0, m.1
            )));
        }
        let offset = (h - h1).rem_euclid(4);
        if offset < span {
            counts[0] += 1;
        } else {
            counts[1] += 1;
        }
    }
    Ok(counts[0] == 0 || counts[1] == 0)
}

/// A change of symplectic basis `(u, v) ↦ (u″, v″)` on a rank-2 summand,
/// as a determinant-1 integer matrix whose rows are the coordinates of the
/// new vectors in the old basis, together with the quadratic-form values
/// on the new basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MiddleBasisChange {
    pub matrix: IntMatrix,
    pub values: [u8; 2],
}

/// Normalize the quadratic-form values on a symplectic basis pair of the
/// middle summand to the pattern `(0, 1)`. The input values must have Arf
/// contribution `u_value · v_value = 0`:
///
/// * `(0, 0)` maps `(u, v)` to `(u, u + v)`;
/// * `(0, 1)` keeps the basis;
/// * `(1, 0)` maps `(u, v)` to `(u + v, u + 2v)`;
/// * `(1, 1)` is rejected.
pub fn normalize_middle_basis(u_value: u8, v_value: u8) -> Result<MiddleBasisChange> {
    if u_value > 1 || v_value > 1 {
        return Err(Error::InvalidInput(format!(
            "form values must be bits, got ({u_value}, {v_value})"
        )));
    }
    let rows: [[i64; 2]; 2] = match (u_value, v_value) {
        (0, 0) => [[1, 0], [1, 1]],
        (0, 1) => [[1, 0], [0, 1]],
        (1, 0) => [[1, 1], [1, 2]],
        _ => {
            return Err(Error::Precondition(
                "value pattern (1, 1) has Arf contribution 1 and cannot occur".into(),
            ))
        }
    };
    let matrix = IntMatrix::from_rows(&[rows[0].to_vec(), rows[1].to_vec()])?;
    debug_assert_eq!(matrix.det().expect("2x2"), 1);
    // Value of m·u + n·v under the form: m·ω(u) + n·ω(v) + m·n on the
    // symplectic pair (u, v); reduced mod 2.
    let value = |r: [i64; 2]| -> u8 {
        ((r[0] * u_value as i64 + r[1] * v_value as i64 + r[0] * r[1]).rem_euclid(2)) as u8
    };
    let values = [value(rows[0]), value(rows[1])];
    Ok(MiddleBasisChange { matrix, values })
}

/// Render lines and marked points in the fundamental domain `[0, 2)²` as a
/// standalone SVG document. Geometry predicates elsewhere in this module
/// are exact; floating point here only places the picture's coordinates.
pub fn fundamental_domain_svg(lines: &[LatticeLine], marked: &[(i64, i64)]) -> String {
    const PALETTE: [&str; 4] = ["#1f6fb4", "#c23b22", "#2a9d4e", "#8a4fbf"];
    let mut out = String::new();
    out.push_str(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-0.3 -0.3 2.6 2.6\" \
         width=\"520\" height=\"520\">\n",
    );
    out.push_str(
        "  <rect x=\"0\" y=\"0\" width=\"2\" height=\"2\" fill=\"#fdfdf8\" \
         stroke=\"#444\" stroke-width=\"0.02\"/>\n",
    );
    let flip = |y: f64| 2.0 - y;
    for (li, line) in lines.iter().enumerate() {
        let color = PALETTE[li % PALETTE.len()];
        let (a, b) = (line.a as f64, line.b as f64);
        let c = line.c2 as f64 / 2.0;
        // Segments of {a x + b y + c ≡ 0 mod 2} inside [0, 2]²: one line
        // a x + b y = 2k − c for every integer k that meets the square.
        let corner_vals = [0.0, 2.0 * a, 2.0 * b, 2.0 * (a + b)];
        let lo = corner_vals.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = corner_vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let k_lo = ((lo + c) / 2.0).floor() as i64;
        let k_hi = ((hi + c) / 2.0).ceil() as i64;
        for k in k_lo..=k_hi {
            let t = 2.0 * k as f64 - c;
            // Intersections of a x + b y = t with the four edges.
            let mut pts: Vec<(f64, f64)> = Vec::new();
            if b != 0.0 {
                for x in [0.0, 2.0] {
                    let y = (t - a * x) / b;
                    if (-1e-9..=2.0 + 1e-9).contains(&y) {
                        pts.push((x, y));
                    }
                }
            }
            if a != 0.0 {
                for y in [0.0, 2.0] {
                    let x = (t - b * y) / a;
                    if (-1e-9..=2.0 + 1e-9).contains(&x) {
                        pts.push((x, y));
                    }
                }
            }
            pts.dedup_by(|p, q| (p.0 - q.0).abs() < 1e-9 && (p.1 - q.1).abs() < 1e-9);
            if pts.len() < 2 {
                continue;
            }
            let (p0, p1) = (pts[0], pts[1]);
            if (p0.0 - p1.0).abs() < 1e-9 && (p0.1 - p1.1).abs() < 1e-9 {
                continue;
            }
            out.push_str(&format!(
                "  <line x1=\"{:.4}\" y1=\"{:.4}\" x2=\"{:.4}\" y2=\"{:.4}\" \
                 stroke=\"{}\" stroke-width=\"0.035\"/>\n",
                p0.0,
                flip(p0.1),
                p1.0,
                flip(p1.1),
                color
            ));
        }
    }
    for &(mx, my) in marked {
        let x = mx.rem_euclid(2) as f64;
        let y = flip(my.rem_euclid(2) as f64);
        out.push_str(&format!(
            "  <circle cx=\"{x:.4}\" cy=\"{y:.4}\" r=\"0.05\" fill=\"#111\"/>\n"
        ));
        out.push_str(&format!(
            "  <text x=\"{:.4}\" y=\"{:.4}\" font-size=\"0.14\" fill=\"#111\">({mx}, {my})</text>\n",
            x + 0.08,
            y - 0.06
        ));
    }
    out.push_str("</svg>\n");
    out
}
