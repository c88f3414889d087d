//! Integer linking forms on the standard handlebody embedding, twist
//! functionals computed from them, the signed pairing of a functional pair
//! against a symmetric splitting's two boundary twists, and searchable,
//! independently re-checkable linear-independence certificates built from
//! full-rank pairing matrices.

use serde::{Deserialize, Serialize};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::splittings::{canonical_form, is_symmetric_splitting, OrthogonalSplitting};
use crate::symplectic::{intersection, HVector, SpMatrix, Sublattice};

/// A bilinear linking form on the rank-`2g` lattice, stored as the matrix
/// `L[u][v] = l(e_u, e_v)`. Its defining relation is that the antisymmetric
/// part is the intersection form: `Lᵀ − L = J`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "IntMatrix", into = "IntMatrix")]
pub struct LinkingForm {
    m: IntMatrix,
}

impl TryFrom<IntMatrix> for LinkingForm {
    type Error = Error;
    fn try_from(m: IntMatrix) -> Result<Self> {
        LinkingForm::new(m)
    }
}

impl From<LinkingForm> for IntMatrix {
    fn from(l: LinkingForm) -> IntMatrix {
        l.m
    }
}

impl LinkingForm {
    pub fn new(m: IntMatrix) -> Result<Self> {
        if !m.is_square() || m.rows() == 0 || m.rows() % 2 != 0 {
            return Err(Error::Dimension(format!(
                "linking form needs a nonempty square matrix of even size, got {}x{}",
                m.rows(),
                m.cols()
            )));
        }
        let j = crate::symplectic::intersection_matrix(m.rows() / 2);
        if m.transpose().checked_sub(&m)? != j {
            return Err(Error::Precondition(
                "linking relation failed: transpose minus matrix must be the intersection form"
                    .into(),
            ));
        }
        Ok(LinkingForm { m })
    }

    pub fn genus(&self) -> usize {
        self.m.rows() / 2
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.m
    }

    /// Evaluate the form: `l(x, y) = xᵀ L y`.
    pub fn evaluate(&self, x: &HVector, y: &HVector) -> Result<i64> {
        let n = self.m.rows();
        if x.coords().len() != n || y.coords().len() != n {
            return Err(Error::Dimension(format!(
                "form of size {n} applied to vectors of length {} and {}",
                x.coords().len(),
                y.coords().len()
            )));
        }
        let mut acc: i128 = 0;
        for u in 0..n {
            let xu = x.coords()[u] as i128;
            if xu == 0 {
                continue;
            }
            for v in 0..n {
                acc += xu * self.m.get(u, v) as i128 * y.coords()[v] as i128;
            }
        }
        i64::try_from(acc).map_err(|_| Error::Overflow("linking form evaluation"))
    }
}

/// The linking form of the standard embedding: `l(b_i, a_i) = 1` and every
/// other basis pairing zero.
pub fn standard_linking_form(g: usize) -> Result<LinkingForm> {
    if g == 0 {
        return Err(Error::Dimension("genus must be positive".into()));
    }
    let mut m = IntMatrix::zero(2 * g, 2 * g);
    for i in 0..g {
        m.set(2 * i + 1, 2 * i, 1);
    }
    LinkingForm::new(m)
}

/// Precompose a linking form with a symplectic matrix: the form
/// `(x, y) ↦ l(Mx, My)`, i.e. `Mᵀ L M`. The linking relation is preserved
/// because `M` preserves the intersection form.
pub fn pushforward(l: &LinkingForm, m: &SpMatrix) -> Result<LinkingForm> {
    if m.genus() != l.genus() {
        return Err(Error::Dimension(format!(
            "matrix genus {} does not match form genus {}",
            m.genus(),
            l.genus()
        )));
    }
    let pushed = m.matrix().transpose().checked_mul(l.matrix())?.checked_mul(m.matrix())?;
    LinkingForm::new(pushed)
}

/// The twist functional value determined by a linking form on a symplectic
/// pair `(a, b)` spanning a genus-one piece:
/// `l(a,a)·l(b,b) − l(a,b)·l(b,a)`. Invariant under determinant-1 changes
/// of the pair.
pub fn morita_twist_value(l: &LinkingForm, pair: (&HVector, &HVector)) -> Result<i64> {
    let (a, b) = pair;
    if intersection(a, b)? != 1 {
        return Err(Error::Precondition(format!(
            "twist side pair must have intersection 1, got {}",
            intersection(a, b)?
        )));
    }
    let aa = l.evaluate(a, a)? as i128;
    let bb = l.evaluate(b, b)? as i128;
    let ab = l.evaluate(a, b)? as i128;
    let ba = l.evaluate(b, a)? as i128;
    i64::try_from(aa * bb - ab * ba).map_err(|_| Error::Overflow("twist value"))
}

/// The two boundary twists of a symmetric splitting, described by
/// symplectic side pairs: `gamma_side` spans the first summand and
/// `delta_side` the third, each normalized to intersection `+1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "CycleRepr", into = "CycleRepr")]
pub struct CycleDescriptor {
    splitting: OrthogonalSplitting,
    gamma_side: [HVector; 2],
    delta_side: [HVector; 2],
}

#[derive(Serialize, Deserialize)]
struct CycleRepr {
    splitting: OrthogonalSplitting,
    gamma_side: [HVector; 2],
    delta_side: [HVector; 2],
}

impl TryFrom<CycleRepr> for CycleDescriptor {
    type Error = Error;
    fn try_from(r: CycleRepr) -> Result<Self> {
        let c = CycleDescriptor {
            splitting: r.splitting,
            gamma_side: r.gamma_side,
            delta_side: r.delta_side,
        };
        c.validate()?;
        Ok(c)
    }
}

impl From<CycleDescriptor> for CycleRepr {
    fn from(c: CycleDescriptor) -> Self {
        CycleRepr {
            splitting: c.splitting,
            gamma_side: c.gamma_side,
            delta_side: c.delta_side,
        }
    }
}

fn oriented_pair(v: &Sublattice) -> Result<[HVector; 2]> {
    let (x, y) = (&v.basis()[0], &v.basis()[1]);
    match intersection(x, y)? {
        1 => Ok([x.clone(), y.clone()]),
        -1 => Ok([y.clone(), x.clone()]),
        d => Err(Error::Precondition(format!(
            "summand basis pair has intersection {d}, expected ±1"
        ))),
    }
}

impl CycleDescriptor {
    /// Build the descriptor of a symmetric splitting's twist pair, taking
    /// the side pairs from the outer summands.
    pub fn new(splitting: OrthogonalSplitting) -> Result<Self> {
        if !is_symmetric_splitting(&splitting)? {
            return Err(Error::Precondition(
                "cycle descriptors require a symmetric splitting".into(),
            ));
        }
        let gamma_side = oriented_pair(splitting.summand(0))?;
        let delta_side = oriented_pair(splitting.summand(2))?;
        Ok(CycleDescriptor { splitting, gamma_side, delta_side })
    }

    fn validate(&self) -> Result<()> {
        if !is_symmetric_splitting(&self.splitting)? {
            return Err(Error::Precondition(
                "cycle descriptor's splitting is not symmetric".into(),
            ));
        }
        for (side, summand, name) in [
            (&self.gamma_side, self.splitting.summand(0), "gamma"),
            (&self.delta_side, self.splitting.summand(2), "delta"),
        ] {
            if intersection(&side[0], &side[1])? != 1 {
                return Err(Error::Precondition(format!(
                    "{name} side pair must have intersection 1"
                )));
            }
            let span = Sublattice::from_vectors(&[&side[0], &side[1]])?;
            if span.hermite_basis()? != summand.hermite_basis()? {
                return Err(Error::Precondition(format!(
                    "{name} side pair does not span the corresponding summand"
                )));
            }
        }
        Ok(())
    }

    pub fn splitting(&self) -> &OrthogonalSplitting {
        &self.splitting
    }

    pub fn gamma_side(&self) -> (&HVector, &HVector) {
        (&self.gamma_side[0], &self.gamma_side[1])
    }

    pub fn delta_side(&self) -> (&HVector, &HVector) {
        (&self.delta_side[0], &self.delta_side[1])
    }

    /// The same geometric pair with the roles of the two twists exchanged
    /// (the splitting read right-to-left).
    pub fn reversed(&self) -> Result<CycleDescriptor> {
        let [v1, v2, v3] = self.splitting.summands().clone();
        CycleDescriptor::new(OrthogonalSplitting::new(v3, v2, v1)?)
    }

    /// Key identifying the cycle up to reversal: the encoding of its
    /// splitting's canonical form.
    pub fn canonical_key(&self) -> Result<Vec<Vec<Vec<i64>>>> {
        let (canon, _) = canonical_form(&self.splitting)?;
        Ok(canon.ordered_encoding()?.to_vec())
    }
}

/// The signed 2×2 pairing of two twist functionals against a cycle:
/// `−det [[λ₁(γ), λ₁(δ)], [λ₂(γ), λ₂(δ)]]` where `λ_k` is the twist value
/// of `l_k` on the respective side pair.
pub fn cycle_pairing(
    l1: &LinkingForm,
    l2: &LinkingForm,
    cycle: &CycleDescriptor,
) -> Result<i64> {
    let lg1 = morita_twist_value(l1, cycle.gamma_side())? as i128;
    let ld1 = morita_twist_value(l1, cycle.delta_side())? as i128;
    let lg2 = morita_twist_value(l2, cycle.gamma_side())? as i128;
    let ld2 = morita_twist_value(l2, cycle.delta_side())? as i128;
    i64::try_from(-(lg1 * ld2 - ld1 * lg2)).map_err(|_| Error::Overflow("cycle pairing"))
}

/// The standard pair of functional witnesses: two symplectic matrices
/// whose pushforwards of the standard linking form evaluate to the 2×2
/// identity on the standard cycle's twist pair (first matrix detects the
/// first twist, second the third-summand twist).
pub fn reference_witness_pair() -> (SpMatrix, SpMatrix) {
    let m1 = SpMatrix::from_rows(&[
        vec![1, 1, 1, 0, 0, 0],
        vec![0, 1, 1, 0, 0, 0],
        vec![1, 0, 1, 1, 0, 0],
        vec![1, 0, 0, 1, 0, 0],
        vec![0, 0, 0, 0, 1, 0],
        vec![0, 0, 0, 0, 0, 1],
    ])
    .expect("static data");
    let m2 = SpMatrix::from_rows(&[
        vec![1, 0, 0, 0, 0, 0],
        vec![0, 1, 0, 0, 0, 0],
        vec![0, 0, 1, 1, 1, 0],
        vec![0, 0, 0, 1, 1, 0],
        vec![0, 0, 1, 0, 1, 1],
        vec![0, 0, 1, 0, 0, 1],
    ])
    .expect("static data");
    (m1, m2)
}

/// A machine-checkable witness that a family of cycles is linearly
/// independent: functional pairs (stored flat, two matrices per row) whose
/// pairing matrix against the cycles has full rank.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndependenceCertificate {
    pub cycles: Vec<CycleDescriptor>,
    pub functionals: Vec<SpMatrix>,
    pub value_matrix: IntMatrix,
    pub rank: usize,
}

fn check_cycles_distinct(cycles: &[CycleDescriptor]) -> Result<()> {
    if cycles.is_empty() {
        return Err(Error::Precondition("cycle list is empty".into()));
    }
    let mut keys = Vec::with_capacity(cycles.len());
    for c in cycles {
        keys.push(c.canonical_key()?);
    }
    for i in 0..keys.len() {
        for j in i + 1..keys.len() {
            if keys[i] == keys[j] {
                return Err(Error::Precondition(format!(
                    "cycles {} and {} coincide up to reversal",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    Ok(())
}

fn pairing_row(
    base: &LinkingForm,
    pair: (&SpMatrix, &SpMatrix),
    cycles: &[CycleDescriptor],
) -> Result<Vec<i64>> {
    let l1 = pushforward(base, pair.0)?;
    let l2 = pushforward(base, pair.1)?;
    cycles.iter().map(|c| cycle_pairing(&l1, &l2, c)).collect()
}

/// Largest absolute value allowed in a kept pairing row: keeps the
/// fraction-free rank elimination of small families comfortably inside
/// 64-bit range and the resulting certificates auditable by hand.
const ROW_ENTRY_BOUND: i64 = 1_000_000;

/// Search for an independence certificate for the given cycles. Hint pairs
/// are tried first and do not count against the budget; afterwards,
/// candidate functional pairs are generated from seeded transvection words
/// (lengths 1 through 12) until the pairing matrix reaches full rank. A
/// row is kept exactly when it enlarges the rank, so the result is the
/// first success in deterministic seeded order. Candidates whose pairing
/// values overflow, exceed [`ROW_ENTRY_BOUND`], or defeat the rank
/// elimination are skipped, not fatal.
pub fn find_independence_certificate(
    cycles: &[CycleDescriptor],
    seed: u64,
    budget: u64,
    hints: &[(SpMatrix, SpMatrix)],
) -> Result<IndependenceCertificate> {
    check_cycles_distinct(cycles)?;
    let n = cycles.len();
    let base = standard_linking_form(3)?;

    let mut kept_rows: Vec<Vec<i64>> = Vec::new();
    let mut functionals: Vec<SpMatrix> = Vec::new();
    let mut rank = 0usize;

    let consider = |pair: (&SpMatrix, &SpMatrix),
                        kept_rows: &mut Vec<Vec<i64>>,
                        functionals: &mut Vec<SpMatrix>,
                        rank: &mut usize|
     -> Result<bool> {
        let row = match pairing_row(&base, pair, cycles) {
            Ok(row) => row,
            // A candidate whose pairing leaves 64-bit range is useless but
            // harmless; skip it and keep searching.
            Err(Error::Overflow(_)) => return Ok(false),
            Err(e) => return Err(e),
        };
        if row.iter().all(|&v| v == 0) {
            return Ok(false);
        }
        if row.iter().any(|&v| v.abs() > ROW_ENTRY_BOUND) {
            return Ok(false);
        }
        kept_rows.push(row);
        let candidate_rank = match IntMatrix::from_rows(kept_rows)?.rank() {
            Ok(r) => r,
            Err(Error::Overflow(_)) => {
                kept_rows.pop();
                return Ok(false);
            }
            Err(e) => return Err(e),
        };
        if candidate_rank > *rank {
            *rank = candidate_rank;
            functionals.push(pair.0.clone());
            functionals.push(pair.1.clone());
            Ok(true)
        } else {
            kept_rows.pop();
            Ok(false)
        }
    };

    for (m1, m2) in hints {
        if rank == n {
            break;
        }
        consider((m1, m2), &mut kept_rows, &mut functionals, &mut rank)?;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut spent = 0u64;
    while rank < n {
        if spent >= budget {
            return Err(Error::SearchExhausted(format!(
                "pairing matrix reached rank {rank} of {n} after {spent} candidate pairs"
            )));
        }
        spent += 1;
        let len1 = rng.random_range(1..=12usize);
        let len2 = rng.random_range(1..=12usize);
        let m1 = crate::symplectic::random_sp_element_from(&mut rng, 3, len1)?;
        let m2 = crate::symplectic::random_sp_element_from(&mut rng, 3, len2)?;
        consider((&m1, &m2), &mut kept_rows, &mut functionals, &mut rank)?;
    }

    let value_matrix = IntMatrix::from_rows(&kept_rows)?;
    Ok(IndependenceCertificate { cycles: cycles.to_vec(), functionals, value_matrix, rank })
}

/// Outcome of re-checking a certificate from its stored data alone.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateVerification {
    pub matrix_matches: bool,
    pub recomputed_rank: usize,
    pub rank_matches: bool,
    pub full_rank: bool,
}

impl CertificateVerification {
    pub fn is_valid(&self) -> bool {
        self.matrix_matches && self.rank_matches && self.full_rank
    }
}

/// Re-derive every claim of a certificate independently of how it was
/// found: revalidate the cycles, recompute the pairing matrix from the
/// stored functionals, and recompute its exact rank.
pub fn verify_certificate(cert: &IndependenceCertificate) -> Result<CertificateVerification> {
    check_cycles_distinct(&cert.cycles)?;
    for c in &cert.cycles {
        c.validate()?;
    }
    let n = cert.cycles.len();
    if cert.functionals.len() != 2 * n {
        return Err(Error::InvalidInput(format!(
            "certificate stores {} functionals, expected {}",
            cert.functionals.len(),
            2 * n
        )));
    }
    if cert.value_matrix.rows() != n || cert.value_matrix.cols() != n {
        return Err(Error::InvalidInput(format!(
            "value matrix is {}x{}, expected {n}x{n}",
            cert.value_matrix.rows(),
            cert.value_matrix.cols()
        )));
    }
    let base = standard_linking_form(3)?;
    let mut rows = Vec::with_capacity(n);
    for k in 0..n {
        rows.push(pairing_row(
            &base,
            (&cert.functionals[2 * k], &cert.functionals[2 * k + 1]),
            &cert.cycles,
        )?);
    }
    let recomputed = IntMatrix::from_rows(&rows)?;
    let matrix_matches = recomputed == cert.value_matrix;
    let recomputed_rank = recomputed.rank()?;
    Ok(CertificateVerification {
        matrix_matches,
        recomputed_rank,
        rank_matches: recomputed_rank == cert.rank,
        full_rank: recomputed_rank == n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::splittings::{seeded_symmetric_splitting, standard_splitting};
    use crate::symplectic::random_sp_element;

    fn hv(coords: &[i64]) -> HVector {
        HVector::new(coords.to_vec()).unwrap()
    }

    fn standard_cycle() -> CycleDescriptor {
        CycleDescriptor::new(standard_splitting()).unwrap()
    }

    #[test]
    fn standard_form_entries() {
        let l = standard_linking_form(3).unwrap();
        let m = l.matrix();
        let nonzero: Vec<(usize, usize)> = (0..6)
            .flat_map(|r| (0..6).map(move |c| (r, c)))
            .filter(|&(r, c)| m.get(r, c) != 0)
            .collect();
        assert_eq!(nonzero, vec![(1, 0), (3, 2), (5, 4)]);
        // The antisymmetric part is the intersection form.
        let j = crate::symplectic::intersection_matrix(3);
        assert_eq!(m.transpose().checked_sub(m).unwrap(), j);
        let a1 = HVector::a(3, 1).unwrap();
        let b1 = HVector::b(3, 1).unwrap();
        assert_eq!(l.evaluate(&a1, &b1).unwrap(), 0);
        assert_eq!(l.evaluate(&b1, &a1).unwrap(), 1);
        assert!(standard_linking_form(0).is_err());
    }

    #[test]
    fn linking_relation_enforced() {
        // A symmetric matrix fails the relation.
        assert!(LinkingForm::new(IntMatrix::identity(6)).is_err());
        assert!(LinkingForm::new(IntMatrix::zero(3, 3)).is_err());
    }

    #[test]
    fn pushforward_identity_and_relation() {
        let l = standard_linking_form(3).unwrap();
        let id = SpMatrix::identity(3);
        assert_eq!(pushforward(&l, &id).unwrap(), l);
        for seed in 0..100u64 {
            let m = random_sp_element(3, seed, 6).unwrap();
            // The constructor of the result re-checks the linking relation,
            // so success of the call is the property.
            let pushed = pushforward(&l, &m).unwrap();
            assert_eq!(pushed.genus(), 3);
        }
    }

    #[test]
    fn witness_values_on_standard_cycle() {
        let l0 = standard_linking_form(3).unwrap();
        let (m1, m2) = reference_witness_pair();
        // Direct evaluation of the standard form on the first witness's
        // image vectors.
        let c = hv(&[1, 0, 1, 1, 0, 0]); // image of the first basis vector
        let d = hv(&[1, 1, 0, 0, 0, 0]); // image of the second
        assert_eq!(l0.evaluate(&c, &c).unwrap(), 1);
        assert_eq!(l0.evaluate(&d, &d).unwrap(), 1);
        assert_eq!(l0.evaluate(&c, &d).unwrap(), 0);
        assert_eq!(l0.evaluate(&d, &c).unwrap(), 1);
        // The images under the witness matrices match those vectors.
        let a1 = HVector::a(3, 1).unwrap();
        let b1 = HVector::b(3, 1).unwrap();
        assert_eq!(m1.apply(&a1).unwrap(), c);
        assert_eq!(m1.apply(&b1).unwrap(), d);

        let l1 = pushforward(&l0, &m1).unwrap();
        let l2 = pushforward(&l0, &m2).unwrap();
        let a3 = HVector::a(3, 3).unwrap();
        let b3 = HVector::b(3, 3).unwrap();
        // The frozen 2x2 value table: the two witnesses separate the twists.
        assert_eq!(morita_twist_value(&l1, (&a1, &b1)).unwrap(), 1);
        assert_eq!(morita_twist_value(&l1, (&a3, &b3)).unwrap(), 0);
        assert_eq!(morita_twist_value(&l2, (&a1, &b1)).unwrap(), 0);
        assert_eq!(morita_twist_value(&l2, (&a3, &b3)).unwrap(), 1);
        // All twist values vanish on the un-pushed standard form.
        assert_eq!(morita_twist_value(&l0, (&a1, &b1)).unwrap(), 0);
        assert_eq!(morita_twist_value(&l0, (&a3, &b3)).unwrap(), 0);
        // Intersection precondition.
        assert!(morita_twist_value(&l0, (&b1, &a1)).is_err());
    }

    #[test]
    fn twist_value_is_basis_invariant() {
        for seed in 0..100u64 {
            let m = random_sp_element(3, seed, 5).unwrap();
            let l = pushforward(&standard_linking_form(3).unwrap(), &m).unwrap();
            let t = random_sp_element(3, seed.wrapping_add(1000), 4).unwrap();
            let a = t.apply(&HVector::a(3, 1).unwrap()).unwrap();
            let b = t.apply(&HVector::b(3, 1).unwrap()).unwrap();
            let base = morita_twist_value(&l, (&a, &b)).unwrap();
            let k = (seed % 5) as i64 - 2;
            // (a, b + ka)
            let bka = b.checked_add(&a.checked_scale(k).unwrap()).unwrap();
            assert_eq!(morita_twist_value(&l, (&a, &bka)).unwrap(), base);
            // (a + kb, b)
            let akb = a.checked_add(&b.checked_scale(k).unwrap()).unwrap();
            assert_eq!(morita_twist_value(&l, (&akb, &b)).unwrap(), base);
            // (b, −a)
            let neg_a = a.checked_scale(-1).unwrap();
            assert_eq!(morita_twist_value(&l, (&b, &neg_a)).unwrap(), base);
        }
    }

    #[test]
    fn cycle_pairing_values() {
        let l0 = standard_linking_form(3).unwrap();
        let (m1, m2) = reference_witness_pair();
        let l1 = pushforward(&l0, &m1).unwrap();
        let l2 = pushforward(&l0, &m2).unwrap();
        let cycle = standard_cycle();
        assert_eq!(cycle_pairing(&l1, &l2, &cycle).unwrap(), -1);
        // Equal functionals give a degenerate determinant.
        assert_eq!(cycle_pairing(&l1, &l1, &cycle).unwrap(), 0);
        assert_eq!(cycle_pairing(&l0, &l0, &cycle).unwrap(), 0);
        // Reversing the cycle flips the sign.
        assert_eq!(cycle_pairing(&l1, &l2, &cycle.reversed().unwrap()).unwrap(), 1);
        for seed in 0..30u64 {
            let s = seeded_symmetric_splitting(seed).unwrap();
            let c = CycleDescriptor::new(s).unwrap();
            let v = cycle_pairing(&l1, &l2, &c).unwrap();
            let vr = cycle_pairing(&l1, &l2, &c.reversed().unwrap()).unwrap();
            assert_eq!(v, -vr, "seed {seed}");
        }
    }

    #[test]
    fn cycle_descriptor_validation() {
        // Asymmetric splittings are rejected.
        let s = standard_splitting();
        let [v1, v2, v3] = s.summands().clone();
        let asym = OrthogonalSplitting::new(v2.clone(), v1.clone(), v3.clone()).unwrap();
        assert!(CycleDescriptor::new(asym).is_err());
        // Side pairs are normalized to intersection +1.
        let c = standard_cycle();
        let (x, y) = c.gamma_side();
        assert_eq!(intersection(x, y).unwrap(), 1);
        // Tampering with a side pair is caught by the serde validator.
        let mut js: serde_json::Value = serde_json::to_value(&c).unwrap();
        js["gamma_side"][0] = serde_json::json!([0, 0, 1, 0, 0, 0]);
        assert!(serde_json::from_value::<CycleDescriptor>(js).is_err());
    }

    #[test]
    fn certificate_with_hints() {
        let cycle = standard_cycle();
        let cert =
            find_independence_certificate(&[cycle], 0, 0, &[reference_witness_pair()]).unwrap();
        assert_eq!(cert.rank, 1);
        assert_eq!(cert.functionals.len(), 2);
        assert_eq!(cert.value_matrix.to_rows(), vec![vec![-1]]);
        let check = verify_certificate(&cert).unwrap();
        assert!(check.is_valid());
        assert_eq!(check.recomputed_rank, 1);
    }

    #[test]
    fn certificate_seeded_search() {
        let cycles = [
            standard_cycle(),
            CycleDescriptor::new(seeded_symmetric_splitting(1).unwrap()).unwrap(),
        ];
        let cert = find_independence_certificate(&cycles, 0, 20_000, &[]).unwrap();
        assert_eq!(cert.rank, 2);
        assert_eq!(cert.functionals.len(), 4);
        let check = verify_certificate(&cert).unwrap();
        assert!(check.is_valid());
        // Determinism of the search outcome.
        let again = find_independence_certificate(&cycles, 0, 20_000, &[]).unwrap();
        assert_eq!(cert, again);
    }

    #[test]
    fn certificate_preconditions_and_budget() {
        assert!(find_independence_certificate(&[], 0, 10, &[]).is_err());
        let c = standard_cycle();
        // A cycle and its reversal coincide up to reversal.
        assert!(matches!(
            find_independence_certificate(
                &[c.clone(), c.reversed().unwrap()],
                0,
                10,
                &[]
            ),
            Err(Error::Precondition(_))
        ));
        // Zero budget with no hints cannot reach rank 1.
        assert!(matches!(
            find_independence_certificate(&[c], 0, 0, &[]),
            Err(Error::SearchExhausted(_))
        ));
    }

    #[test]
    fn certificate_tamper_detection() {
        let cycle = standard_cycle();
        let cert =
            find_independence_certificate(&[cycle], 0, 0, &[reference_witness_pair()]).unwrap();
        let mut bad = cert.clone();
        bad.value_matrix = IntMatrix::from_rows(&[vec![5]]).unwrap();
        let check = verify_certificate(&bad).unwrap();
        assert!(!check.matrix_matches);
        assert!(!check.is_valid());
        let mut bad = cert.clone();
        bad.rank = 0;
        let check = verify_certificate(&bad).unwrap();
        assert!(!check.rank_matches);
        assert!(!check.is_valid());
        let mut bad = cert;
        bad.functionals.pop();
        assert!(verify_certificate(&bad).is_err());
    }

    #[test]
    fn certificate_serde_round_trip() {
        let cycles = [standard_cycle()];
        let cert =
            find_independence_certificate(&cycles, 0, 0, &[reference_witness_pair()]).unwrap();
        let js = serde_json::to_string(&cert).unwrap();
        let back: IndependenceCertificate = serde_json::from_str(&js).unwrap();
        assert_eq!(back, cert);
        assert!(verify_certificate(&back).unwrap().is_valid());
    }
}
