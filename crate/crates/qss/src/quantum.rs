//! Dense n-qubit states, GHZ preparation, projective σx/σy measurements, and a
//! closed-form amplitude oracle for GHZ states expanded in mixed measuring bases.
//!
//! # Conventions
//!
//! * Basis-state indices are read as the binary string `i₁i₂…iₙ` with party 1
//!   (Alice, `party_index` 0) in the **most significant** bit.
//! * [`Outcome::Zero`] is the positive-axis eigenstate of the chosen measuring
//!   basis, [`Outcome::One`] the negative-axis eigenstate.
//! * Eigenstates: |0⟩ₓ = (|0⟩+|1⟩)/√2, |1⟩ₓ = (|0⟩−|1⟩)/√2,
//!   |0⟩ᵧ = (|0⟩+i|1⟩)/√2, |1⟩ᵧ = (|0⟩−i|1⟩)/√2.
//!
//! Expanding the GHZ state (|0…0⟩+|1…1⟩)/√2 in the product eigenbasis selected
//! by a [`BasisVector`] gives the coefficient
//!
//! ```text
//! 2^{-(n+1)/2} · (1 + (−i)^m · (−1)^p)
//! ```
//!
//! for the outcome tuple with parity `p`, where `m` counts the parties that
//! measure in the σy basis. [`ghz_amplitude`] evaluates that closed form
//! directly, without a state vector, and serves as the independent reference
//! against which the dense path ([`StateVector::ghz`] plus
//! [`StateVector::measure_all`]) is checked. Consequences of the formula:
//!
//! * `m` odd: every outcome tuple has magnitude 2^{-n/2}, so the joint
//!   distribution is uniform and no parity relation exists.
//! * `m ≡ 0 (mod 4)`: the support is exactly the even-parity tuples.
//! * `m ≡ 2 (mod 4)`: the support is exactly the odd-parity tuples.
//!
//! [`ghz_sample_outcomes`] draws a joint outcome straight from that support
//! law without materializing 2^n amplitudes, which is what allows sessions
//! with more than [`MAX_QUBITS`] parties when no interception is modeled.

use std::fmt;
use std::ops::{BitXor, Index};
use std::str::FromStr;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Complex amplitude of a basis state.
pub type Amplitude = Complex64;

/// Smallest supported register (one transit qubit).
pub const MIN_QUBITS: usize = 2;
/// Largest register the dense state vector supports.
pub const MAX_QUBITS: usize = 16;
/// Tolerance for normalization checks.
pub const NORM_TOLERANCE: f64 = 1e-12;
/// Tolerance when comparing the dense expansion against the closed form.
pub const ORACLE_TOLERANCE: f64 = 1e-12;
/// Branches with projection probability below this are never sampled.
const BRANCH_EPSILON: f64 = 1e-12;

/// Measuring basis for a single qubit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    X,
    Y,
}

impl Basis {
    pub fn as_char(self) -> char {
        match self {
            Basis::X => 'x',
            Basis::Y => 'y',
        }
    }

    pub fn from_char(c: char) -> Option<Basis> {
        match c.to_ascii_lowercase() {
            'x' => Some(Basis::X),
            'y' => Some(Basis::Y),
            _ => None,
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// Result of a single-qubit measurement: 0 for the positive-axis eigenstate,
/// 1 for the negative-axis eigenstate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    Zero,
    One,
}

impl Outcome {
    pub fn bit(self) -> u8 {
        match self {
            Outcome::Zero => 0,
            Outcome::One => 1,
        }
    }

    pub fn from_bool(one: bool) -> Outcome {
        if one {
            Outcome::One
        } else {
            Outcome::Zero
        }
    }

    pub fn is_one(self) -> bool {
        self == Outcome::One
    }

    pub fn as_char(self) -> char {
        match self {
            Outcome::Zero => '0',
            Outcome::One => '1',
        }
    }
}

impl BitXor for Outcome {
    type Output = Outcome;

    fn bitxor(self, rhs: Outcome) -> Outcome {
        Outcome::from_bool(self != rhs)
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// XOR of all outcomes: `Zero` for even parity, `One` for odd.
pub fn parity(outcomes: &[Outcome]) -> Outcome {
    outcomes
        .iter()
        .fold(Outcome::Zero, |acc, &o| acc ^ o)
}

/// Render outcomes as a bit string, Alice first.
pub fn outcomes_string(outcomes: &[Outcome]) -> String {
    outcomes.iter().map(|o| o.as_char()).collect()
}

/// Pack an outcome tuple into a basis-state index (Alice in the MSB).
pub fn outcomes_to_index(outcomes: &[Outcome]) -> usize {
    outcomes
        .iter()
        .fold(0usize, |idx, &o| (idx << 1) | o.bit() as usize)
}

/// Unpack a basis-state index into an outcome tuple of length `n`.
pub fn index_to_outcomes(index: usize, n: usize) -> Vec<Outcome> {
    (0..n)
        .map(|p| Outcome::from_bool(index >> (n - 1 - p) & 1 == 1))
        .collect()
}

/// One measuring-basis choice per party; position 0 is Alice.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BasisVector(Vec<Basis>);

impl BasisVector {
    pub fn new(bases: Vec<Basis>) -> BasisVector {
        BasisVector(bases)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Basis> {
        self.0.iter()
    }

    /// Number of parties measuring in the σy basis.
    pub fn y_count(&self) -> usize {
        self.0.iter().filter(|&&b| b == Basis::Y).count()
    }

    pub fn as_slice(&self) -> &[Basis] {
        &self.0
    }
}

impl Index<usize> for BasisVector {
    type Output = Basis;

    fn index(&self, party: usize) -> &Basis {
        &self.0[party]
    }
}

impl fmt::Display for BasisVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl FromStr for BasisVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<BasisVector> {
        s.chars()
            .map(|c| {
                Basis::from_char(c)
                    .ok_or_else(|| Error::Config(format!("invalid basis character {c:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(BasisVector)
    }
}

/// Dense state of an n-qubit register: 2^n complex amplitudes.
///
/// Values are immutable; measurements return a fresh collapsed state, so a
/// `StateVector` can be shared read-only across threads.
#[derive(Debug, Clone)]
pub struct StateVector {
    n: usize,
    amps: Vec<Amplitude>,
}

impl StateVector {
    /// Prepare the n-party GHZ state (|0…0⟩+|1…1⟩)/√2.
    pub fn ghz(n: usize) -> Result<StateVector> {
        if !(MIN_QUBITS..=MAX_QUBITS).contains(&n) {
            return Err(Error::QubitCount(n));
        }
        let mut amps = vec![Amplitude::new(0.0, 0.0); 1 << n];
        let s = Amplitude::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        amps[0] = s;
        amps[(1 << n) - 1] = s;
        Ok(StateVector { n, amps })
    }

    /// Build a state from explicit amplitudes, rejecting wrong lengths,
    /// non-finite entries, and vectors that are not normalized.
    pub fn from_amplitudes(n: usize, amps: Vec<Amplitude>) -> Result<StateVector> {
        if !(MIN_QUBITS..=MAX_QUBITS).contains(&n) {
            return Err(Error::QubitCount(n));
        }
        if amps.len() != 1 << n {
            return Err(Error::AmplitudeLength {
                got: amps.len(),
                expected: 1 << n,
            });
        }
        if amps.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::NonFiniteAmplitude);
        }
        let norm_sqr: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sqr - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::NotNormalized(norm_sqr));
        }
        Ok(StateVector { n, amps })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Amplitude] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Projectively measure one qubit in the given basis.
    ///
    /// The outcome is sampled with its Born probability (computed before any
    /// renormalization) and the returned state is the renormalized projection
    /// onto the sampled eigenstate, i.e. what an intercept-resend adversary
    /// forwards down the channel.
    pub fn measure_qubit(
        &self,
        party_index: usize,
        basis: Basis,
        rng: &mut impl Rng,
    ) -> Result<(Outcome, StateVector)> {
        if party_index >= self.n {
            return Err(Error::PartyIndex {
                index: party_index,
                n: self.n,
            });
        }
        let mut next = self.clone();
        let outcome = measure_in_place(&mut next.amps, self.n, party_index, basis, rng);
        Ok((outcome, next))
    }

    /// Measure every qubit, Alice first. The joint distribution does not
    /// depend on the measurement order (the projectors act on distinct
    /// qubits), so the fixed order is only a random-stream convention.
    pub fn measure_all(&self, bases: &BasisVector, rng: &mut impl Rng) -> Result<Vec<Outcome>> {
        if bases.len() != self.n {
            return Err(Error::BasisLength {
                got: bases.len(),
                expected: self.n,
            });
        }
        let mut amps = self.amps.clone();
        let outcomes = (0..self.n)
            .map(|p| measure_in_place(&mut amps, self.n, p, bases[p], rng))
            .collect();
        Ok(outcomes)
    }

    /// Coefficients of this state in the product eigenbasis selected by
    /// `bases`: entry `i` is ⟨o₁…oₙ|ψ⟩ for the outcome tuple packed into `i`.
    pub fn coefficients_in(&self, bases: &BasisVector) -> Result<Vec<Amplitude>> {
        if bases.len() != self.n {
            return Err(Error::BasisLength {
                got: bases.len(),
                expected: self.n,
            });
        }
        let mut c = self.amps.clone();
        for party in 0..self.n {
            let (a0, b0) = eigenvector(bases[party], Outcome::Zero);
            let (a1, b1) = eigenvector(bases[party], Outcome::One);
            let (a0, b0, a1, b1) = (a0.conj(), b0.conj(), a1.conj(), b1.conj());
            let bit = 1usize << (self.n - 1 - party);
            for i0 in 0..c.len() {
                if i0 & bit != 0 {
                    continue;
                }
                let i1 = i0 | bit;
                let (u, v) = (c[i0], c[i1]);
                c[i0] = a0 * u + b0 * v;
                c[i1] = a1 * u + b1 * v;
            }
        }
        Ok(c)
    }
}

/// Components (⟨0|e⟩, ⟨1|e⟩) of the eigenstate `|e⟩` for a basis and outcome.
fn eigenvector(basis: Basis, outcome: Outcome) -> (Amplitude, Amplitude) {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let head = Amplitude::new(s, 0.0);
    let tail = match (basis, outcome) {
        (Basis::X, Outcome::Zero) => Amplitude::new(s, 0.0),
        (Basis::X, Outcome::One) => Amplitude::new(-s, 0.0),
        (Basis::Y, Outcome::Zero) => Amplitude::new(0.0, s),
        (Basis::Y, Outcome::One) => Amplitude::new(0.0, -s),
    };
    (head, tail)
}

fn branch_probability(
    amps: &[Amplitude],
    n: usize,
    party: usize,
    basis: Basis,
    outcome: Outcome,
) -> f64 {
    let (alpha, beta) = eigenvector(basis, outcome);
    let (ac, bc) = (alpha.conj(), beta.conj());
    let bit = 1usize << (n - 1 - party);
    let mut p = 0.0;
    for i0 in 0..amps.len() {
        if i0 & bit != 0 {
            continue;
        }
        p += (ac * amps[i0] + bc * amps[i0 | bit]).norm_sqr();
    }
    p
}

fn collapse_onto(amps: &mut [Amplitude], n: usize, party: usize, basis: Basis, outcome: Outcome) {
    let (alpha, beta) = eigenvector(basis, outcome);
    let (ac, bc) = (alpha.conj(), beta.conj());
    let bit = 1usize << (n - 1 - party);
    let mut norm_sqr = 0.0;
    for i0 in 0..amps.len() {
        if i0 & bit != 0 {
            continue;
        }
        let i1 = i0 | bit;
        let t = ac * amps[i0] + bc * amps[i1];
        amps[i0] = alpha * t;
        amps[i1] = beta * t;
        norm_sqr += t.norm_sqr();
    }
    let scale = 1.0 / norm_sqr.sqrt();
    for a in amps.iter_mut() {
        *a *= scale;
    }
}

fn measure_in_place(
    amps: &mut [Amplitude],
    n: usize,
    party: usize,
    basis: Basis,
    rng: &mut impl Rng,
) -> Outcome {
    let p_zero = branch_probability(amps, n, party, basis, Outcome::Zero);
    // Sample only among branches with nonzero probability, so a forbidden
    // outcome can never be produced by floating-point dust. The degenerate
    // cases also skip the random draw.
    let outcome = if p_zero < BRANCH_EPSILON {
        Outcome::One
    } else if p_zero > 1.0 - BRANCH_EPSILON {
        Outcome::Zero
    } else {
        Outcome::from_bool(rng.random::<f64>() >= p_zero)
    };
    collapse_onto(amps, n, party, basis, outcome);
    outcome
}

/// 2^{-e/2}, exact for even exponents.
fn pow2_neg_half(e: usize) -> f64 {
    let whole = 2f64.powi(-((e / 2) as i32));
    if e % 2 == 0 {
        whole
    } else {
        whole * std::f64::consts::FRAC_1_SQRT_2
    }
}

/// Closed-form coefficient of an outcome eigenstate in the GHZ expansion:
/// `2^{-(n+1)/2} · (1 + (−i)^m · (−1)^p)` with `m` the σy count of `bases`
/// and `p` the parity of `outcomes`. Computed without any state vector; this
/// is the independent reference for the dense simulation path.
pub fn ghz_amplitude(n: usize, bases: &BasisVector, outcomes: &[Outcome]) -> Result<Amplitude> {
    if bases.len() != n {
        return Err(Error::BasisLength {
            got: bases.len(),
            expected: n,
        });
    }
    if outcomes.len() != n {
        return Err(Error::OutcomeLength {
            got: outcomes.len(),
            expected: n,
        });
    }
    let phase = match bases.y_count() % 4 {
        0 => Amplitude::new(1.0, 0.0),
        1 => Amplitude::new(0.0, -1.0),
        2 => Amplitude::new(-1.0, 0.0),
        _ => Amplitude::new(0.0, 1.0),
    };
    let sign = if parity(outcomes).is_one() { -1.0 } else { 1.0 };
    Ok((Amplitude::new(1.0, 0.0) + phase * sign) * pow2_neg_half(n + 1))
}

/// Born probabilities of all 2^n outcome tuples for a GHZ state measured in
/// `bases`, indexed by the packed outcome tuple. Derived from
/// [`ghz_amplitude`], so it shares none of the dense measurement code.
pub fn ghz_distribution(n: usize, bases: &BasisVector) -> Result<Vec<f64>> {
    if !(MIN_QUBITS..=MAX_QUBITS).contains(&n) {
        return Err(Error::QubitCount(n));
    }
    (0..1usize << n)
        .map(|idx| Ok(ghz_amplitude(n, bases, &index_to_outcomes(idx, n))?.norm_sqr()))
        .collect()
}

/// Draw one joint outcome tuple for a GHZ state measured in `bases`, straight
/// from the closed-form support law and without 2^n memory:
///
/// * odd σy count: all n bits independent and uniform;
/// * even σy count `m`: n−1 uniform bits, last bit fixed so the total parity
///   is `m/2 mod 2`.
///
/// Works for any `n ≥ 2`; this is the sampling route for registers larger
/// than [`MAX_QUBITS`].
pub fn ghz_sample_outcomes(
    n: usize,
    bases: &BasisVector,
    rng: &mut impl Rng,
) -> Result<Vec<Outcome>> {
    if n < MIN_QUBITS {
        return Err(Error::QubitCount(n));
    }
    if bases.len() != n {
        return Err(Error::BasisLength {
            got: bases.len(),
            expected: n,
        });
    }
    let m = bases.y_count();
    if m % 2 == 1 {
        return Ok((0..n)
            .map(|_| Outcome::from_bool(rng.random_bool(0.5)))
            .collect());
    }
    let target = Outcome::from_bool((m / 2) % 2 == 1);
    let mut outcomes: Vec<Outcome> = (0..n - 1)
        .map(|_| Outcome::from_bool(rng.random_bool(0.5)))
        .collect();
    outcomes.push(target ^ parity(&outcomes));
    Ok(outcomes)
}

/// Summary of one oracle-equivalence sweep.
#[derive(Debug, Clone, Copy)]
pub struct OracleReport {
    pub n: usize,
    pub bases_checked: usize,
    pub comparisons: u64,
    pub max_deviation: f64,
}

/// Compare the dense GHZ expansion against [`ghz_amplitude`] for every basis
/// vector and every outcome tuple of an n-party register.
///
/// Fails with [`Error::OracleMismatch`] naming the first (bases, outcomes)
/// pair that deviates by more than [`ORACLE_TOLERANCE`].
pub fn check_oracle_equivalence(n: usize) -> Result<OracleReport> {
    let ghz = StateVector::ghz(n)?;
    let mut comparisons = 0u64;
    let mut max_deviation = 0.0f64;
    for mask in 0..1usize << n {
        let bases = BasisVector::new(
            (0..n)
                .map(|p| if mask >> (n - 1 - p) & 1 == 1 { Basis::Y } else { Basis::X })
                .collect(),
        );
        let dense = ghz.coefficients_in(&bases)?;
        for idx in 0..1usize << n {
            let outcomes = index_to_outcomes(idx, n);
            let oracle = ghz_amplitude(n, &bases, &outcomes)?;
            let deviation = (dense[idx] - oracle).norm();
            comparisons += 1;
            max_deviation = max_deviation.max(deviation);
            if deviation > ORACLE_TOLERANCE {
                return Err(Error::OracleMismatch {
                    n,
                    bases: bases.to_string(),
                    outcomes: outcomes_string(&outcomes),
                    dense: dense[idx],
                    oracle,
                });
            }
        }
    }
    Ok(OracleReport {
        n,
        bases_checked: 1 << n,
        comparisons,
        max_deviation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    fn rng(seed: u64) -> ChaCha12Rng {
        ChaCha12Rng::seed_from_u64(seed)
    }

    fn bv(s: &str) -> BasisVector {
        s.parse().unwrap()
    }

    fn assert_close(a: Amplitude, b: Amplitude, tol: f64) {
        assert!(
            (a - b).norm() <= tol,
            "amplitudes differ: {a} vs {b}"
        );
    }

    #[test]
    fn ghz_amplitudes_for_three_parties() {
        let s = StateVector::ghz(3).unwrap();
        let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
        assert_close(s.amplitudes()[0], Amplitude::new(inv_sqrt2, 0.0), 1e-15);
        assert_close(s.amplitudes()[7], Amplitude::new(inv_sqrt2, 0.0), 1e-15);
        for idx in 1..7 {
            assert_eq!(s.amplitudes()[idx], Amplitude::new(0.0, 0.0));
        }
    }

    #[test]
    fn ghz_two_parties_is_epr_pair() {
        let s = StateVector::ghz(2).unwrap();
        let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
        assert_close(s.amplitudes()[0], Amplitude::new(inv_sqrt2, 0.0), 1e-15);
        assert_close(s.amplitudes()[3], Amplitude::new(inv_sqrt2, 0.0), 1e-15);
    }

    #[test]
    fn ghz_four_parties_normalized_with_two_nonzeros() {
        let s = StateVector::ghz(4).unwrap();
        assert!((s.norm_sqr() - 1.0).abs() < NORM_TOLERANCE);
        let nonzero = s
            .amplitudes()
            .iter()
            .filter(|a| a.norm_sqr() > 0.0)
            .count();
        assert_eq!(nonzero, 2);
    }

    #[test]
    fn ghz_rejects_out_of_range_counts() {
        assert!(matches!(StateVector::ghz(1), Err(Error::QubitCount(1))));
        assert!(matches!(StateVector::ghz(17), Err(Error::QubitCount(17))));
    }

    #[test]
    fn from_amplitudes_validates() {
        let bad_len = StateVector::from_amplitudes(2, vec![Amplitude::new(1.0, 0.0); 3]);
        assert!(matches!(bad_len, Err(Error::AmplitudeLength { .. })));

        let mut amps = vec![Amplitude::new(0.0, 0.0); 4];
        amps[0] = Amplitude::new(0.9, 0.0);
        assert!(matches!(
            StateVector::from_amplitudes(2, amps),
            Err(Error::NotNormalized(_))
        ));

        let mut amps = vec![Amplitude::new(0.0, 0.0); 4];
        amps[0] = Amplitude::new(f64::NAN, 0.0);
        assert!(matches!(
            StateVector::from_amplitudes(2, amps),
            Err(Error::NonFiniteAmplitude)
        ));
    }

    #[test]
    fn measuring_zero_ket_in_x_is_unbiased() {
        // |00⟩, measure party 0 in X: half/half.
        let mut amps = vec![Amplitude::new(0.0, 0.0); 4];
        amps[0] = Amplitude::new(1.0, 0.0);
        let state = StateVector::from_amplitudes(2, amps).unwrap();
        let mut r = rng(11);
        let trials = 20_000u64;
        let ones: u64 = (0..trials)
            .map(|_| {
                let (o, post) = state.measure_qubit(0, Basis::X, &mut r).unwrap();
                assert!((post.norm_sqr() - 1.0).abs() < NORM_TOLERANCE);
                o.bit() as u64
            })
            .sum();
        let sigma = (trials as f64 * 0.25).sqrt();
        assert!((ones as f64 - trials as f64 * 0.5).abs() < 5.0 * sigma);
    }

    #[test]
    fn measuring_an_eigenstate_is_deterministic() {
        // |0⟩ₓ ⊗ |0⟩: measuring party 0 in X always gives Zero.
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let mut amps = vec![Amplitude::new(0.0, 0.0); 4];
        amps[0b00] = Amplitude::new(s, 0.0);
        amps[0b10] = Amplitude::new(s, 0.0);
        let state = StateVector::from_amplitudes(2, amps).unwrap();
        let mut r = rng(5);
        for _ in 0..100 {
            let (o, _) = state.measure_qubit(0, Basis::X, &mut r).unwrap();
            assert_eq!(o, Outcome::Zero);
        }
    }

    #[test]
    fn repeated_measurement_in_same_basis_repeats_outcome() {
        let mut r = rng(17);
        for _ in 0..200 {
            let state = StateVector::ghz(3).unwrap();
            let (o1, post) = state.measure_qubit(1, Basis::Y, &mut r).unwrap();
            let (o2, post2) = post.measure_qubit(1, Basis::Y, &mut r).unwrap();
            assert_eq!(o1, o2);
            assert!((post2.norm_sqr() - 1.0).abs() < NORM_TOLERANCE);
        }
    }

    #[test]
    fn all_x_rounds_have_even_parity() {
        let bases = bv("xxx");
        let mut r = rng(23);
        for _ in 0..2000 {
            let outcomes = StateVector::ghz(3)
                .unwrap()
                .measure_all(&bases, &mut r)
                .unwrap();
            assert_eq!(parity(&outcomes), Outcome::Zero);
        }
    }

    #[test]
    fn two_y_rounds_have_odd_parity() {
        let bases = bv("yyx");
        let mut r = rng(29);
        for _ in 0..2000 {
            let outcomes = StateVector::ghz(3)
                .unwrap()
                .measure_all(&bases, &mut r)
                .unwrap();
            assert_eq!(parity(&outcomes), Outcome::One);
        }
    }

    #[test]
    fn single_y_round_is_uniform_over_all_tuples() {
        let bases = bv("yxx");
        let mut r = rng(31);
        let trials = 100_000u64;
        let mut counts = [0u64; 8];
        let ghz = StateVector::ghz(3).unwrap();
        for _ in 0..trials {
            let outcomes = ghz.measure_all(&bases, &mut r).unwrap();
            counts[outcomes_to_index(&outcomes)] += 1;
        }
        let p = 1.0 / 8.0;
        let sigma = (trials as f64 * p * (1.0 - p)).sqrt();
        for (idx, &c) in counts.iter().enumerate() {
            assert!(
                (c as f64 - trials as f64 * p).abs() < 5.0 * sigma,
                "tuple {idx}: count {c}"
            );
        }
    }

    #[test]
    fn measurement_order_does_not_change_the_distribution() {
        let bases = bv("yxx");
        let expected = ghz_distribution(3, &bases).unwrap();
        let trials = 100_000u64;
        for (seed, order) in [(41u64, [0usize, 1, 2]), (43, [2, 1, 0]), (47, [1, 2, 0])] {
            let mut r = rng(seed);
            let mut counts = [0u64; 8];
            for _ in 0..trials {
                let mut state = StateVector::ghz(3).unwrap();
                let mut outcomes = [Outcome::Zero; 3];
                for &p in &order {
                    let (o, next) = state.measure_qubit(p, bases[p], &mut r).unwrap();
                    outcomes[p] = o;
                    state = next;
                }
                counts[outcomes_to_index(&outcomes)] += 1;
            }
            for idx in 0..8 {
                let p = expected[idx];
                let sigma = (trials as f64 * p * (1.0 - p)).sqrt().max(1.0);
                assert!(
                    (counts[idx] as f64 - trials as f64 * p).abs() < 5.0 * sigma,
                    "order {order:?}, tuple {idx}: count {}",
                    counts[idx]
                );
            }
        }
    }

    #[test]
    fn closed_form_matches_displayed_three_party_expansion() {
        // ψ in the y⊗x⊗x eigenbasis: (1−i)/4 on even-parity tuples,
        // (1+i)/4 on odd-parity tuples.
        let bases = bv("yxx");
        for idx in 0..8usize {
            let outcomes = index_to_outcomes(idx, 3);
            let amp = ghz_amplitude(3, &bases, &outcomes).unwrap();
            let expected = if parity(&outcomes).is_one() {
                Amplitude::new(0.25, 0.25)
            } else {
                Amplitude::new(0.25, -0.25)
            };
            assert_close(amp, expected, 1e-15);
        }
    }

    #[test]
    fn closed_form_zeroes_odd_parity_all_x_terms() {
        let bases = bv("xxx");
        let amp = ghz_amplitude(3, &bases, &index_to_outcomes(0b100, 3)).unwrap();
        assert_eq!(amp, Amplitude::new(0.0, 0.0));
    }

    #[test]
    fn closed_form_magnitude_for_two_y_four_parties() {
        let bases = bv("yyxx");
        // Support is the odd-parity tuples, each with magnitude 2^{-3/2}.
        let odd = ghz_amplitude(4, &bases, &index_to_outcomes(0b1000, 4)).unwrap();
        assert!((odd.norm() - pow2_neg_half(3)).abs() < 1e-15);
        let even = ghz_amplitude(4, &bases, &index_to_outcomes(0b0000, 4)).unwrap();
        assert_eq!(even.norm(), 0.0);
    }

    #[test]
    fn distribution_examples() {
        let d = ghz_distribution(3, &bv("xxx")).unwrap();
        let nonzero: Vec<_> = d.iter().filter(|&&p| p > 0.0).collect();
        assert_eq!(nonzero.len(), 4);
        assert!(nonzero.iter().all(|&&p| (p - 0.25).abs() < 1e-15));

        let d = ghz_distribution(3, &bv("yxx")).unwrap();
        assert!(d.iter().all(|&p| (p - 0.125).abs() < 1e-15));

        let d = ghz_distribution(2, &bv("yy")).unwrap();
        assert_eq!(
            d.iter().map(|&p| (p * 2.0).round() as u64).collect::<Vec<_>>(),
            vec![0, 1, 1, 0]
        );
    }

    #[test]
    fn distributions_sum_to_one() {
        for n in MIN_QUBITS..=8 {
            for mask in 0..1usize << n {
                let bases = BasisVector::new(
                    (0..n)
                        .map(|p| if mask >> p & 1 == 1 { Basis::Y } else { Basis::X })
                        .collect(),
                );
                let total: f64 = ghz_distribution(n, &bases).unwrap().iter().sum();
                assert!((total - 1.0).abs() < NORM_TOLERANCE, "n={n} bases={bases}");
            }
        }
    }

    #[test]
    fn support_law_holds_exhaustively() {
        for n in MIN_QUBITS..=6 {
            for mask in 0..1usize << n {
                let bases = BasisVector::new(
                    (0..n)
                        .map(|p| if mask >> p & 1 == 1 { Basis::Y } else { Basis::X })
                        .collect(),
                );
                let m = bases.y_count();
                for idx in 0..1usize << n {
                    let outcomes = index_to_outcomes(idx, n);
                    let mag = ghz_amplitude(n, &bases, &outcomes).unwrap().norm();
                    if m % 2 == 1 {
                        assert!((mag - pow2_neg_half(n)).abs() < 1e-14);
                    } else if parity(&outcomes).bit() as usize == (m / 2) % 2 {
                        assert!((mag - pow2_neg_half(n - 1)).abs() < 1e-14);
                    } else {
                        assert_eq!(mag, 0.0);
                    }
                }
            }
        }
    }

    #[test]
    fn oracle_matches_dense_expansion_for_small_registers() {
        for n in MIN_QUBITS..=5 {
            let report = check_oracle_equivalence(n).unwrap();
            assert_eq!(report.bases_checked, 1 << n);
            assert!(report.max_deviation <= ORACLE_TOLERANCE);
        }
    }

    #[test]
    fn direct_sampler_agrees_with_dense_measurement() {
        let trials = 40_000u64;
        for mask in 0..8usize {
            let bases = BasisVector::new(
                (0..3)
                    .map(|p| if mask >> p & 1 == 1 { Basis::Y } else { Basis::X })
                    .collect(),
            );
            let expected = ghz_distribution(3, &bases).unwrap();
            let mut r = rng(1000 + mask as u64);
            let mut counts = [0u64; 8];
            for _ in 0..trials {
                let outcomes = ghz_sample_outcomes(3, &bases, &mut r).unwrap();
                counts[outcomes_to_index(&outcomes)] += 1;
            }
            for idx in 0..8 {
                let p = expected[idx];
                if p == 0.0 {
                    assert_eq!(counts[idx], 0, "bases {bases}, tuple {idx}");
                } else {
                    let sigma = (trials as f64 * p * (1.0 - p)).sqrt();
                    assert!(
                        (counts[idx] as f64 - trials as f64 * p).abs() < 5.0 * sigma,
                        "bases {bases}, tuple {idx}: count {}",
                        counts[idx]
                    );
                }
            }
        }
    }

    #[test]
    fn direct_sampler_supports_large_registers() {
        let bases = BasisVector::new(vec![Basis::Y; 20]);
        let mut r = rng(7);
        for _ in 0..200 {
            let outcomes = ghz_sample_outcomes(20, &bases, &mut r).unwrap();
            // 20 σy choices: 20/2 = 10 is even, so parity must be even.
            assert_eq!(parity(&outcomes), Outcome::Zero);
        }
    }

    #[test]
    fn index_helpers_round_trip() {
        for n in 1..=6 {
            for idx in 0..1usize << n {
                assert_eq!(outcomes_to_index(&index_to_outcomes(idx, n)), idx);
            }
        }
    }

    #[test]
    fn basis_vector_parse_and_display() {
        let b = bv("yxY");
        assert_eq!(b.to_string(), "yxy");
        assert_eq!(b.y_count(), 2);
        assert!(BasisVector::from_str("yxz").is_err());
    }

    #[test]
    fn measure_qubit_rejects_bad_index() {
        let state = StateVector::ghz(3).unwrap();
        let mut r = rng(3);
        assert!(matches!(
            state.measure_qubit(3, Basis::X, &mut r),
            Err(Error::PartyIndex { index: 3, n: 3 })
        ));
    }
}
