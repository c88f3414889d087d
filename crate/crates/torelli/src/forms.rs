//! Quadratic refinements of the mod-2 intersection pairing and their Arf
//! invariants.
//!
//! A form is determined by its `2g` values on the standard basis via the
//! polarization rule `omega(x + y) = omega(x) + omega(y) + (x . y) mod 2`,
//! and evaluates on coordinates as
//! `omega(sum c_i e_i) = sum c_i omega(e_i) + sum_k c_{a_k} c_{b_k} (mod 2)`
//! because only the handle pairs `(a_k, b_k)` intersect.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::symplectic::{intersection, HVector, Sublattice};

/// Largest genus for which `enumerate_forms` will materialize all `2^{2g}` forms.
pub const MAX_ENUMERATION_GENUS: usize = 8;

/// A quadratic form refining the mod-2 intersection pairing, stored as its
/// values on the standard basis `(a_1, b_1, ..., a_g, b_g)`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SpQuadraticFormRepr", into = "SpQuadraticFormRepr")]
pub struct SpQuadraticForm {
    genus: usize,
    basis_values: Vec<u8>,
}

#[derive(Serialize, Deserialize)]
struct SpQuadraticFormRepr {
    genus: usize,
    basis_values: Vec<u8>,
}

impl TryFrom<SpQuadraticFormRepr> for SpQuadraticForm {
    type Error = Error;
    fn try_from(r: SpQuadraticFormRepr) -> Result<Self> {
        SpQuadraticForm::new(r.genus, r.basis_values)
    }
}

impl From<SpQuadraticForm> for SpQuadraticFormRepr {
    fn from(f: SpQuadraticForm) -> Self {
        SpQuadraticFormRepr { genus: f.genus, basis_values: f.basis_values }
    }
}

impl std::fmt::Debug for SpQuadraticForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SpQuadraticForm(g={}, {:?})", self.genus, self.basis_values)
    }
}

impl SpQuadraticForm {
    pub fn new(genus: usize, basis_values: Vec<u8>) -> Result<Self> {
        if genus == 0 || basis_values.len() != 2 * genus {
            return Err(Error::Dimension(format!(
                "genus {genus} needs {} basis values, got {}",
                2 * genus,
                basis_values.len()
            )));
        }
        if basis_values.iter().any(|&v| v > 1) {
            return Err(Error::InvalidInput("basis values must be 0 or 1".into()));
        }
        Ok(SpQuadraticForm { genus, basis_values })
    }

    /// Decode from the little-endian bit-vector integer (bit `i` is the value
    /// on the `i`-th basis vector).
    pub fn from_bits(genus: usize, bits: u32) -> Result<Self> {
        let values = (0..2 * genus).map(|i| ((bits >> i) & 1) as u8).collect();
        SpQuadraticForm::new(genus, values)
    }

    /// The little-endian bit-vector integer encoding the basis values.
    pub fn to_bits(&self) -> u32 {
        self.basis_values
            .iter()
            .enumerate()
            .fold(0u32, |acc, (i, &v)| acc | ((v as u32) << i))
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn basis_values(&self) -> &[u8] {
        &self.basis_values
    }

    /// Value on `a_i` (1-based handle index).
    pub fn value_on_a(&self, i: usize) -> u8 {
        self.basis_values[2 * (i - 1)]
    }

    /// Value on `b_i` (1-based handle index).
    pub fn value_on_b(&self, i: usize) -> u8 {
        self.basis_values[2 * (i - 1) + 1]
    }

    /// Evaluate the form on an arbitrary lattice vector.
    pub fn evaluate(&self, x: &HVector) -> Result<u8> {
        if x.genus() != self.genus {
            return Err(Error::Dimension(format!(
                "vector genus {} does not match form genus {}",
                x.genus(),
                self.genus
            )));
        }
        let c = x.coords();
        let mut acc: u8 = 0;
        for i in 0..2 * self.genus {
            acc ^= (c[i].rem_euclid(2) as u8) & self.basis_values[i];
        }
        for k in 0..self.genus {
            acc ^= (c[2 * k].rem_euclid(2) & c[2 * k + 1].rem_euclid(2)) as u8;
        }
        Ok(acc)
    }

    /// Arf invariant: the democratic invariant `sum_i omega(x_i) omega(y_i)`
    /// over any symplectic basis; computed here on the standard basis.
    pub fn arf(&self) -> u8 {
        (0..self.genus)
            .map(|k| self.basis_values[2 * k] & self.basis_values[2 * k + 1])
            .fold(0, |a, b| a ^ b)
    }

    /// Arf invariant computed on a caller-supplied symplectic basis
    /// `(x_1, y_1, ..., x_g, y_g)`; errors unless the supplied vectors
    /// actually pair like the standard basis.
    pub fn arf_on_basis(&self, basis: &[HVector]) -> Result<u8> {
        if basis.len() != 2 * self.genus {
            return Err(Error::Dimension(format!(
                "expected {} basis vectors, got {}",
                2 * self.genus,
                basis.len()
            )));
        }
        for i in 0..basis.len() {
            for j in i + 1..basis.len() {
                let expected = if j == i + 1 && i % 2 == 0 { 1 } else { 0 };
                if intersection(&basis[i], &basis[j])? != expected {
                    return Err(Error::Precondition(
                        "supplied vectors do not form a symplectic basis".into(),
                    ));
                }
            }
        }
        let mut acc = 0u8;
        for k in 0..self.genus {
            acc ^= self.evaluate(&basis[2 * k])? & self.evaluate(&basis[2 * k + 1])?;
        }
        Ok(acc)
    }

    /// Restrict to a rank-2 direct summand on which the pairing is
    /// unimodular; the result is a genus-1 form on the (possibly swapped)
    /// basis pair, normalized so the pair intersects positively.
    pub fn restrict(&self, v: &Sublattice) -> Result<SpQuadraticForm> {
        if v.rank() != 2 {
            return Err(Error::Precondition(format!(
                "restriction needs a rank-2 sublattice, got rank {}",
                v.rank()
            )));
        }
        let (u, w) = (&v.basis()[0], &v.basis()[1]);
        let (u, w) = match intersection(u, w)? {
            1 => (u, w),
            -1 => (w, u),
            d => {
                return Err(Error::Precondition(format!(
                    "pairing is not unimodular on the summand (basis pair intersects in {d})"
                )))
            }
        };
        SpQuadraticForm::new(1, vec![self.evaluate(u)?, self.evaluate(w)?])
    }
}

/// The reference genus-3 form: value 0 on `a_2`, value 1 on the five other
/// basis vectors. Its Arf invariant is 0.
pub fn reference_form() -> SpQuadraticForm {
    let f = SpQuadraticForm::new(3, vec![1, 1, 0, 1, 1, 1]).expect("static data");
    assert_eq!(f.arf(), 0, "reference form must have Arf invariant 0");
    f
}

/// All genus-`g` forms with the given Arf invariant, sorted by their
/// little-endian bit-vector integer.
pub fn enumerate_forms(genus: usize, arf: u8) -> Result<Vec<SpQuadraticForm>> {
    if genus == 0 || genus > MAX_ENUMERATION_GENUS {
        return Err(Error::ResourceLimit(format!(
            "form enumeration supports genus 1..={MAX_ENUMERATION_GENUS}, got {genus}"
        )));
    }
    if arf > 1 {
        return Err(Error::InvalidInput("Arf invariant must be 0 or 1".into()));
    }
    Ok((0u32..1 << (2 * genus))
        .map(|bits| SpQuadraticForm::from_bits(genus, bits).expect("bits in range"))
        .filter(|f| f.arf() == arf)
        .collect())
}

/// The involution value of a genus-3, Arf-0 form:
/// `omega(a_1) omega(b_1) (omega(a_2) + 1) omega(b_2)  (mod 2)`.
///
/// On the 36 Arf-0 forms this single product agrees with the full two-index
/// sum [`involution_value_expanded`], and it is 1 on exactly one form (the
/// reference form).
pub fn birman_craggs_involution_value(f: &SpQuadraticForm) -> Result<u8> {
    check_involution_domain(f)?;
    Ok(f.value_on_a(1) & f.value_on_b(1) & (f.value_on_a(2) ^ 1) & f.value_on_b(2))
}

/// The unreduced two-index expansion of the involution value:
/// `sum_{i < j} omega(a_i) omega(b_i) (omega(a_j) + 1) omega(b_j)  (mod 2)`.
///
/// Used as an independent oracle for [`birman_craggs_involution_value`]: the
/// two must agree on every Arf-0 form.
pub fn involution_value_expanded(f: &SpQuadraticForm) -> Result<u8> {
    check_involution_domain(f)?;
    let mut acc = 0u8;
    for i in 1..=3 {
        for j in i + 1..=3 {
            acc ^= f.value_on_a(i)
                & f.value_on_b(i)
                & (f.value_on_a(j) ^ 1)
                & f.value_on_b(j);
        }
    }
    Ok(acc)
}

fn check_involution_domain(f: &SpQuadraticForm) -> Result<()> {
    if f.genus() != 3 {
        return Err(Error::Precondition(format!(
            "involution value is defined for genus 3, got genus {}",
            f.genus()
        )));
    }
    if f.arf() != 0 {
        return Err(Error::Precondition(
            "involution value is defined for Arf-0 forms only".into(),
        ));
    }
    Ok(())
}
