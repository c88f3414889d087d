//! The symplectic group over Z/2: packed bit matrices, closed-form group
//! orders, the orbit-count quotient by the symmetric-group order,
//! brute-force enumeration of the whole group by transvection closure
//! (with a versioned binary cache), and the orbit census of quadratic
//! forms under the group action.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::forms::SpQuadraticForm;
use crate::linalg::IntMatrix;

/// Largest genus whose matrices fit one packed 64-bit word (2g·2g ≤ 64).
pub const MAX_PACKED_GENUS: usize = 4;
/// Largest genus for which full group enumeration is attempted.
pub const MAX_ENUMERATION_GENUS: usize = 3;

const CACHE_MAGIC: &[u8; 8] = b"SP2GRP01";
const CACHE_VERSION: u32 = 1;

fn check_packed_genus(g: usize) -> Result<()> {
    if g == 0 || g > MAX_PACKED_GENUS {
        return Err(Error::Dimension(format!(
            "packed mod-2 matrices support genus 1 through {MAX_PACKED_GENUS}, got {g}"
        )));
    }
    Ok(())
}

fn dim_mask(dim: usize) -> u64 {
    if dim == 64 {
        u64::MAX
    } else {
        (1u64 << dim) - 1
    }
}

/// Swap the bits of adjacent handle positions (0↔1, 2↔3, …) in the low
/// `dim` bits: the mod-2 pairing of `x` with a basis vector `e_j` is bit
/// `j` of the swapped word.
fn swap_adjacent_bits(v: u64, dim: usize) -> u64 {
    const EVEN: u64 = 0x5555_5555_5555_5555;
    (((v & EVEN) << 1) | ((v >> 1) & EVEN)) & dim_mask(dim)
}

fn mul_bits(a: u64, b: u64, dim: usize) -> u64 {
    let mask = dim_mask(dim);
    let mut out = 0u64;
    for r in 0..dim {
        let mut arow = (a >> (r * dim)) & mask;
        let mut orow = 0u64;
        while arow != 0 {
            let k = arow.trailing_zeros() as usize;
            arow &= arow - 1;
            orow ^= (b >> (k * dim)) & mask;
        }
        out |= orow << (r * dim);
    }
    out
}

fn identity_bits(dim: usize) -> u64 {
    let mut out = 0u64;
    for r in 0..dim {
        out |= 1u64 << (r * dim + r);
    }
    out
}

fn transvection_bits(v: u64, dim: usize) -> u64 {
    // Column c of the transvection along v is e_c + (e_c, v)·v, and the
    // mod-2 pairing (e_c, v) is bit c of the adjacent-swapped v.
    let pairing = swap_adjacent_bits(v, dim);
    let mut out = identity_bits(dim);
    for c in 0..dim {
        if (pairing >> c) & 1 == 1 {
            for r in 0..dim {
                if (v >> r) & 1 == 1 {
                    out ^= 1u64 << (r * dim + c);
                }
            }
        }
    }
    out
}

/// A 2g×2g matrix over Z/2, rows packed consecutively into one 64-bit
/// word (row `r` occupies bits `r·2g` through `r·2g + 2g − 1`).
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct F2Matrix {
    g: usize,
    bits: u64,
}

impl std::fmt::Debug for F2Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let dim = 2 * self.g;
        write!(f, "F2Matrix(g={}, rows=[", self.g)?;
        for r in 0..dim {
            if r > 0 {
                write!(f, " ")?;
            }
            for c in 0..dim {
                write!(f, "{}", self.get(r, c))?;
            }
        }
        write!(f, "])")
    }
}

impl F2Matrix {
    pub fn from_bits(g: usize, bits: u64) -> Result<Self> {
        check_packed_genus(g)?;
        let dim = 2 * g;
        let used = dim * dim;
        if used < 64 && bits >> used != 0 {
            return Err(Error::InvalidInput(format!(
                "bit pattern has data beyond the {used} bits of a genus-{g} matrix"
            )));
        }
        Ok(F2Matrix { g, bits })
    }

    pub fn identity(g: usize) -> Result<Self> {
        check_packed_genus(g)?;
        Ok(F2Matrix { g, bits: identity_bits(2 * g) })
    }

    /// Reduce an integer matrix mod 2.
    pub fn from_int_matrix(m: &IntMatrix) -> Result<Self> {
        if !m.is_square() || m.rows() % 2 != 0 {
            return Err(Error::Dimension(format!(
                "expected a square even-sized matrix, got {}x{}",
                m.rows(),
                m.cols()
            )));
        }
        let g = m.rows() / 2;
        check_packed_genus(g)?;
        let dim = 2 * g;
        let mut bits = 0u64;
        for r in 0..dim {
            for c in 0..dim {
                if m.get(r, c).rem_euclid(2) == 1 {
                    bits |= 1u64 << (r * dim + c);
                }
            }
        }
        Ok(F2Matrix { g, bits })
    }

    pub fn genus(&self) -> usize {
        self.g
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn get(&self, r: usize, c: usize) -> u8 {
        let dim = 2 * self.g;
        ((self.bits >> (r * dim + c)) & 1) as u8
    }

    pub fn mul(&self, rhs: &F2Matrix) -> Result<F2Matrix> {
        if self.g != rhs.g {
            return Err(Error::Dimension(format!(
                "cannot multiply genus-{} by genus-{} matrices",
                self.g, rhs.g
            )));
        }
        Ok(F2Matrix { g: self.g, bits: mul_bits(self.bits, rhs.bits, 2 * self.g) })
    }

    pub fn transpose(&self) -> F2Matrix {
        let dim = 2 * self.g;
        let mut bits = 0u64;
        for r in 0..dim {
            for c in 0..dim {
                if (self.bits >> (r * dim + c)) & 1 == 1 {
                    bits |= 1u64 << (c * dim + r);
                }
            }
        }
        F2Matrix { g: self.g, bits }
    }

    /// The mod-2 intersection matrix (block anti-diagonal pairs).
    pub fn intersection_form(g: usize) -> Result<F2Matrix> {
        check_packed_genus(g)?;
        let dim = 2 * g;
        let mut bits = 0u64;
        for k in 0..g {
            bits |= 1u64 << ((2 * k) * dim + 2 * k + 1);
            bits |= 1u64 << ((2 * k + 1) * dim + 2 * k);
        }
        Ok(F2Matrix { g, bits })
    }

    /// Whether the matrix preserves the mod-2 pairing: `Mᵀ J M = J`.
    pub fn is_symplectic(&self) -> Result<bool> {
        let j = F2Matrix::intersection_form(self.g)?;
        Ok(self.transpose().mul(&j)?.mul(self)? == j)
    }

    /// Inverse of a symplectic matrix: `J Mᵀ J` (mod 2 the pairing matrix
    /// is its own inverse).
    pub fn inverse_symplectic(&self) -> Result<F2Matrix> {
        if !self.is_symplectic()? {
            return Err(Error::Precondition(
                "mod-2 inverse formula needs a symplectic matrix".into(),
            ));
        }
        let j = F2Matrix::intersection_form(self.g)?;
        j.mul(&self.transpose())?.mul(&j)
    }

    /// Apply to a packed column vector: bit `r` of the result is the
    /// parity of `row_r AND x`.
    pub fn apply_vec(&self, x: u64) -> Result<u64> {
        let dim = 2 * self.g;
        if x & !dim_mask(dim) != 0 {
            return Err(Error::Dimension(format!(
                "vector has bits beyond dimension {dim}"
            )));
        }
        let mut out = 0u64;
        for r in 0..dim {
            let row = (self.bits >> (r * dim)) & dim_mask(dim);
            out |= (((row & x).count_ones() & 1) as u64) << r;
        }
        Ok(out)
    }

    /// Column `c` as a packed vector.
    pub fn column(&self, c: usize) -> u64 {
        let dim = 2 * self.g;
        let mut out = 0u64;
        for r in 0..dim {
            out |= (((self.bits >> (r * dim + c)) & 1) as u64) << r;
        }
        out
    }
}

/// Mod-2 transvection along a nonzero packed vector.
pub fn transvection_mod2(g: usize, v: u64) -> Result<F2Matrix> {
    check_packed_genus(g)?;
    let dim = 2 * g;
    if v & !dim_mask(dim) != 0 {
        return Err(Error::Dimension(format!(
            "vector has bits beyond dimension {dim}"
        )));
    }
    if v == 0 {
        return Err(Error::Precondition(
            "transvection along the zero vector is undefined".into(),
        ));
    }
    Ok(F2Matrix { g, bits: transvection_bits(v, dim) })
}

/// Mod-2 pairing of two packed vectors.
pub fn intersection_mod2(g: usize, x: u64, y: u64) -> Result<u8> {
    check_packed_genus(g)?;
    let dim = 2 * g;
    let mask = dim_mask(dim);
    if x & !mask != 0 || y & !mask != 0 {
        return Err(Error::Dimension(format!(
            "vector has bits beyond dimension {dim}"
        )));
    }
    Ok(((x & swap_adjacent_bits(y, dim)).count_ones() & 1) as u8)
}

/// Value of the quadratic form with the given basis bits on a packed
/// vector: the linear part on the set coordinates plus one for every
/// handle whose two coordinates are both present.
pub fn form_value_mod2(g: usize, form_bits: u64, v: u64) -> Result<u8> {
    check_packed_genus(g)?;
    let dim = 2 * g;
    let mask = dim_mask(dim);
    if form_bits & !mask != 0 || v & !mask != 0 {
        return Err(Error::Dimension(format!(
            "bit pattern beyond dimension {dim}"
        )));
    }
    let linear = (form_bits & v).count_ones();
    const EVEN: u64 = 0x5555_5555_5555_5555;
    let handles = (v & (v >> 1) & EVEN).count_ones();
    Ok(((linear + handles) & 1) as u8)
}

/// Action of a transvection on a quadratic form, on basis bits: the form
/// is fixed when it takes value 1 on the transvection vector, and
/// otherwise every basis value with odd pairing against the vector flips.
pub fn transvection_action_on_form(g: usize, form_bits: u64, v: u64) -> Result<u64> {
    let value = form_value_mod2(g, form_bits, v)?;
    if v == 0 {
        return Err(Error::Precondition(
            "transvection along the zero vector is undefined".into(),
        ));
    }
    if value == 1 {
        Ok(form_bits)
    } else {
        Ok(form_bits ^ swap_adjacent_bits(v, 2 * g))
    }
}

/// Action of a symplectic mod-2 matrix on a quadratic form:
/// `(M·ω)(x) = ω(M⁻¹x)`, returned as basis bits.
pub fn matrix_action_on_form(m: &F2Matrix, form_bits: u64) -> Result<u64> {
    let g = m.genus();
    let inv = m.inverse_symplectic()?;
    let mut out = 0u64;
    for j in 0..2 * g {
        if form_value_mod2(g, form_bits, inv.column(j))? == 1 {
            out |= 1u64 << j;
        }
    }
    Ok(out)
}

/// `|Sp(2g, Z/2)| = 2^{g²} · ∏_{i=1}^{g} (2^{2i} − 1)`, exactly.
pub fn sp_order_mod2(g: usize) -> Result<BigUint> {
    if g == 0 {
        return Err(Error::Dimension("genus must be positive".into()));
    }
    let mut order = BigUint::from(1u8) << (g * g);
    for i in 1..=g {
        order *= (BigUint::from(1u8) << (2 * i)) - BigUint::from(1u8);
    }
    Ok(order)
}

fn factorial(n: usize) -> BigUint {
    let mut out = BigUint::from(1u8);
    for k in 2..=n {
        out *= BigUint::from(k);
    }
    out
}

/// Whether the orbit-count formula's hypothesis (genus at least 3) holds;
/// smaller genera still divide exactly in some cases but sit outside the
/// formula's stated range.
pub fn in_validity_range(g: usize) -> bool {
    g >= 3
}

/// The group order divided by `(2g+2)!`, exactly; errors when the
/// division leaves a remainder.
pub fn hyperelliptic_orbit_count(g: usize) -> Result<BigUint> {
    let order = sp_order_mod2(g)?;
    let denom = factorial(2 * g + 2);
    let rem = &order % &denom;
    if rem != BigUint::from(0u8) {
        return Err(Error::Arithmetic(format!(
            "group order {order} is not divisible by (2g+2)! = {denom}"
        )));
    }
    Ok(order / denom)
}

fn cache_path(dir: &Path, g: usize) -> PathBuf {
    dir.join(format!("sp2_g{g}_v{CACHE_VERSION}.bin"))
}

fn expected_count(g: usize) -> u64 {
    match g {
        1 => 6,
        2 => 720,
        3 => 1_451_520,
        _ => unreachable!("enumeration is capped at genus 3"),
    }
}

fn try_read_cache(dir: &Path, g: usize) -> Option<Vec<u64>> {
    let mut f = std::fs::File::open(cache_path(dir, g)).ok()?;
    let mut header = [0u8; 24];
    f.read_exact(&mut header).ok()?;
    if &header[0..8] != CACHE_MAGIC {
        return None;
    }
    let version = u32::from_le_bytes(header[8..12].try_into().unwrap());
    let file_g = u32::from_le_bytes(header[12..16].try_into().unwrap());
    let count = u64::from_le_bytes(header[16..24].try_into().unwrap());
    if version != CACHE_VERSION || file_g as usize != g || count != expected_count(g) {
        return None;
    }
    let mut data = Vec::new();
    f.read_to_end(&mut data).ok()?;
    if data.len() as u64 != count * 8 {
        return None;
    }
    let mask = dim_mask(2 * g);
    let full_mask = if 2 * g * 2 * g == 64 {
        u64::MAX
    } else {
        (1u64 << (2 * g * 2 * g)) - 1
    };
    let mut out = Vec::with_capacity(count as usize);
    let mut prev: Option<u64> = None;
    for chunk in data.chunks_exact(8) {
        let x = u64::from_le_bytes(chunk.try_into().unwrap());
        if x & !full_mask != 0 {
            return None;
        }
        if let Some(p) = prev {
            if x <= p {
                return None;
            }
        }
        prev = Some(x);
        out.push(x);
    }
    let _ = mask;
    // The identity must be a member; a sorted file without it is corrupt.
    if out.binary_search(&identity_bits(2 * g)).is_err() {
        return None;
    }
    Some(out)
}

fn write_cache(dir: &Path, g: usize, elements: &[u64]) -> Result<()> {
    let io_err = |e: std::io::Error| Error::Cache(format!("cache write failed: {e}"));
    std::fs::create_dir_all(dir).map_err(io_err)?;
    let final_path = cache_path(dir, g);
    let tmp_path = final_path.with_extension("tmp");
    {
        let mut f = std::fs::File::create(&tmp_path).map_err(io_err)?;
        let mut header = Vec::with_capacity(24);
        header.extend_from_slice(CACHE_MAGIC);
        header.extend_from_slice(&CACHE_VERSION.to_le_bytes());
        header.extend_from_slice(&(g as u32).to_le_bytes());
        header.extend_from_slice(&(elements.len() as u64).to_le_bytes());
        f.write_all(&header).map_err(io_err)?;
        let mut buf = Vec::with_capacity(elements.len() * 8);
        for &x in elements {
            buf.extend_from_slice(&x.to_le_bytes());
        }
        f.write_all(&buf).map_err(io_err)?;
        f.flush().map_err(io_err)?;
    }
    std::fs::rename(&tmp_path, &final_path).map_err(io_err)?;
    Ok(())
}

fn close_group(g: usize) -> Vec<u64> {
    let dim = 2 * g;
    let gens: Vec<u64> = (1u64..1 << dim).map(|v| transvection_bits(v, dim)).collect();
    let id = identity_bits(dim);
    let mut seen: HashSet<u64> = HashSet::with_capacity(2 * expected_count(g) as usize);
    let mut queue: VecDeque<u64> = VecDeque::new();
    seen.insert(id);
    queue.push_back(id);
    while let Some(m) = queue.pop_front() {
        for &t in &gens {
            let n = mul_bits(t, m, dim);
            if seen.insert(n) {
                queue.push_back(n);
            }
        }
    }
    let mut out: Vec<u64> = seen.into_iter().collect();
    out.sort_unstable();
    out
}

/// Enumerate the whole mod-2 symplectic group (genus at most 3) as sorted
/// packed matrices: the closure of all transvections under multiplication.
/// With a cache directory, a previously written enumeration is reused when
/// its header and shape validate, and a fresh enumeration is persisted;
/// a cache that cannot be written is an error.
pub fn enumerate_sp_mod2(g: usize, cache_dir: Option<&Path>) -> Result<Vec<u64>> {
    check_packed_genus(g)?;
    if g > MAX_ENUMERATION_GENUS {
        return Err(Error::ResourceLimit(format!(
            "full enumeration is capped at genus {MAX_ENUMERATION_GENUS} \
             (genus {g} has {} elements)",
            sp_order_mod2(g)?
        )));
    }
    if let Some(dir) = cache_dir {
        if let Some(cached) = try_read_cache(dir, g) {
            return Ok(cached);
        }
    }
    let elements = close_group(g);
    if let Some(dir) = cache_dir {
        write_cache(dir, g, &elements)?;
    }
    Ok(elements)
}

/// Orbit census of all `2^{2g}` quadratic forms under the transvection
/// action (the transvections generate the group, so the orbits agree with
/// the full group action): returns the map from Arf invariant to the size
/// of its orbit. Two distinct orbits with equal Arf invariant would be an
/// arithmetic fault.
pub fn form_orbit_census(g: usize) -> Result<BTreeMap<u8, u64>> {
    check_packed_genus(g)?;
    if g > MAX_ENUMERATION_GENUS {
        return Err(Error::ResourceLimit(format!(
            "form census is capped at genus {MAX_ENUMERATION_GENUS}"
        )));
    }
    let dim = 2 * g;
    let total = 1u64 << dim;
    let mut seen = vec![false; total as usize];
    let mut census = BTreeMap::new();
    for start in 0..total {
        if seen[start as usize] {
            continue;
        }
        let mut orbit = vec![start];
        seen[start as usize] = true;
        let mut head = 0;
        while head < orbit.len() {
            let form = orbit[head];
            head += 1;
            for v in 1..total {
                let image = transvection_action_on_form(g, form, v)?;
                if !seen[image as usize] {
                    seen[image as usize] = true;
                    orbit.push(image);
                }
            }
        }
        let arf = SpQuadraticForm::from_bits(g, start as u32)?.arf();
        if census.insert(arf, orbit.len() as u64).is_some() {
            return Err(Error::Arithmetic(format!(
                "two distinct orbits share Arf invariant {arf}"
            )));
        }
    }
    Ok(census)
}
