//! Quantum hash states `|ψ_S(a)⟩ = |S|^{-1/2} Σ_j χ_a(x_j) |j⟩`.
//!
//! Basis states are labelled by list position `j`, so repeated elements of a
//! multiset occupy distinct basis states. The vector is zero-padded to
//! `2^⌈log₂|S|⌉` entries.

use std::io::{Read, Write};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bias::{sampling_size, BiasedSet, NeumaierComplex, Provenance};
use crate::error::{Error, Result};
use crate::group::{ceil_log2, GroupElement};

/// Groups above this order are refused by [`collision_spectrum`].
pub const DEFAULT_PAIRWISE_LIMIT: u64 = 1 << 12;

/// Histogram resolution of [`collision_spectrum`] over `[0, 1]`.
pub const SPECTRUM_BINS: usize = 20;

/// Largest Boolean cube dimension accepted by [`code_matrix`].
pub const MAX_CODE_DIMENSION: usize = 16;

const MAX_CODE_BITS: u128 = 1 << 30;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuantumHash {
    set_id: String,
    message: GroupElement,
    qubits: u32,
    amplitudes: Vec<Complex64>,
}

impl QuantumHash {
    pub fn set_id(&self) -> &str {
        &self.set_id
    }

    pub fn message(&self) -> &GroupElement {
        &self.message
    }

    pub fn qubits(&self) -> u32 {
        self.qubits
    }

    /// All `2^qubits` amplitudes, padding included.
    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn to_writer<W: Write>(&self, mut writer: W) -> Result<()> {
        serde_json::to_writer(&mut writer, self).map_err(|e| Error::Io(e.into()))?;
        writer.write_all(b"\n")?;
        Ok(())
    }

    /// Parses a hash file, checking the vector length and unit norm.
    pub fn from_reader<R: Read>(reader: R) -> Result<Self> {
        let h: QuantumHash = serde_json::from_reader(reader).map_err(|e| Error::Parse {
            location: format!("line {} column {}", e.line(), e.column()),
            message: e.to_string(),
        })?;
        if h.qubits >= 32 || h.amplitudes.len() != 1usize << h.qubits {
            return Err(Error::Parse {
                location: "amplitudes".into(),
                message: format!("expected 2^{} amplitudes, found {}", h.qubits, h.amplitudes.len()),
            });
        }
        if (h.norm() - 1.0).abs() > 1e-9 {
            return Err(Error::Parse {
                location: "amplitudes".into(),
                message: format!("state norm {} is not 1", h.norm()),
            });
        }
        Ok(h)
    }
}

/// Hashes messages against one fixed set.
pub struct QuantumHasher<'a> {
    set: &'a BiasedSet,
    set_id: String,
    qubits: u32,
    scale: f64,
}

impl<'a> QuantumHasher<'a> {
    pub fn new(set: &'a BiasedSet) -> Self {
        QuantumHasher {
            set,
            set_id: set.content_id(),
            qubits: ceil_log2(set.len() as u64),
            scale: 1.0 / (set.len() as f64).sqrt(),
        }
    }

    pub fn qubits(&self) -> u32 {
        self.qubits
    }

    pub fn hash(&self, message: &GroupElement) -> Result<QuantumHash> {
        let group = self.set.group();
        group.check(message)?;
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1usize << self.qubits];
        for (amp, x) in amplitudes.iter_mut().zip(self.set.elements()) {
            *amp = group.character_value(message, x)? * self.scale;
        }
        Ok(QuantumHash {
            set_id: self.set_id.clone(),
            message: message.clone(),
            qubits: self.qubits,
            amplitudes,
        })
    }
}

/// `|ψ_S(message)⟩`.
pub fn hash(set: &BiasedSet, message: &GroupElement) -> Result<QuantumHash> {
    QuantumHasher::new(set).hash(message)
}

fn overlap(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    let mut acc = NeumaierComplex::default();
    for (a, b) in u.iter().zip(v) {
        acc.add(a.conj() * b);
    }
    acc.value()
}

/// `⟨h1|h2⟩`, conjugate-linear in `h1`. Hashes of different sets are
/// incomparable and give a usage error.
pub fn inner_product(h1: &QuantumHash, h2: &QuantumHash) -> Result<Complex64> {
    if h1.set_id != h2.set_id {
        return Err(Error::Usage(format!(
            "hashes come from different sets ({} vs {})",
            h1.set_id, h2.set_id
        )));
    }
    if h1.amplitudes.len() != h2.amplitudes.len() {
        return Err(Error::Dimension {
            expected: h1.amplitudes.len(),
            got: h2.amplitudes.len(),
        });
    }
    Ok(overlap(&h1.amplitudes, &h2.amplitudes))
}

/// Pairwise overlap statistics over all distinct message pairs.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CollisionSpectrum {
    pub set_id: String,
    pub messages: u64,
    pub pairs: u64,
    pub max_modulus: f64,
    /// First pair (in enumeration order) attaining `max_modulus`.
    pub witness: (GroupElement, GroupElement),
    /// Pair counts over [`SPECTRUM_BINS`] equal-width bins of `[0, 1]`.
    pub histogram: Vec<u64>,
}

pub fn collision_spectrum(set: &BiasedSet) -> Result<CollisionSpectrum> {
    collision_spectrum_with_limit(set, DEFAULT_PAIRWISE_LIMIT)
}

/// Hashes every message and scans every unordered pair of distinct messages.
/// The max is reduced with a total order, so the result does not depend on
/// the thread count.
pub fn collision_spectrum_with_limit(set: &BiasedSet, limit: u64) -> Result<CollisionSpectrum> {
    let group = set.group();
    group.ensure_enumerable(limit)?;
    let hasher = QuantumHasher::new(set);
    let hashes: Vec<QuantumHash> = group
        .enumerate_with_limit(limit)?
        .collect::<Vec<_>>()
        .par_iter()
        .map(|a| hasher.hash(a))
        .collect::<Result<_>>()?;

    let n = hashes.len();
    let (best, histogram) = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut hist = vec![0u64; SPECTRUM_BINS];
            let mut best = (f64::NEG_INFINITY, u64::MAX);
            for j in i + 1..n {
                let m = overlap(&hashes[i].amplitudes, &hashes[j].amplitudes).norm();
                hist[((m * SPECTRUM_BINS as f64) as usize).min(SPECTRUM_BINS - 1)] += 1;
                if m > best.0 {
                    best = (m, (i * n + j) as u64);
                }
            }
            (best, hist)
        })
        .reduce(
            || ((f64::NEG_INFINITY, u64::MAX), vec![0u64; SPECTRUM_BINS]),
            |(b1, mut h1), (b2, h2)| {
                for (x, y) in h1.iter_mut().zip(h2) {
                    *x += y;
                }
                let b = if b1.0 > b2.0 || (b1.0 == b2.0 && b1.1 < b2.1) {
                    b1
                } else {
                    b2
                };
                (b, h1)
            },
        );
    let (i, j) = ((best.1 / n as u64) as usize, (best.1 % n as u64) as usize);
    Ok(CollisionSpectrum {
        set_id: hasher.set_id.clone(),
        messages: n as u64,
        pairs: (n as u64) * (n as u64 - 1) / 2,
        max_modulus: best.0,
        witness: (hashes[i].message.clone(), hashes[j].message.clone()),
        histogram,
    })
}

/// Generator matrix view of a set over `Z_2^n`: row `a` (every nonzero
/// message) has bit `j` equal to `(a, x_j) mod 2`.
#[derive(Clone, Debug, PartialEq)]
pub struct CodeMatrix {
    n: usize,
    columns: usize,
    words: usize,
    bits: Vec<u64>,
}

/// How far codeword weights stray from one half.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BalanceReport {
    /// `max_a |1 - 2 w(a)|` over nonzero messages, `w` the fractional weight.
    pub max_deviation: f64,
    pub witness: GroupElement,
    pub min_fractional_weight: f64,
    pub max_fractional_weight: f64,
}

#[derive(Serialize)]
struct CodeMatrixFile<'a> {
    n: usize,
    columns: usize,
    rows: Vec<String>,
    balance: &'a BalanceReport,
}

impl CodeMatrix {
    pub fn dimension(&self) -> usize {
        self.n
    }

    /// `2^n - 1`.
    pub fn rows(&self) -> usize {
        (1usize << self.n) - 1
    }

    /// Block length `|S|`.
    pub fn columns(&self) -> usize {
        self.columns
    }

    /// Bit of the codeword for the message with enumeration index `row + 1`.
    pub fn bit(&self, row: usize, col: usize) -> u8 {
        ((self.bits[row * self.words + col / 64] >> (col % 64)) & 1) as u8
    }

    pub fn row_weight(&self, row: usize) -> u64 {
        self.bits[row * self.words..(row + 1) * self.words]
            .iter()
            .map(|w| w.count_ones() as u64)
            .sum()
    }

    pub fn balance(&self) -> BalanceReport {
        let len = self.columns as f64;
        let mut report = BalanceReport {
            max_deviation: f64::NEG_INFINITY,
            witness: GroupElement::from_residues(vec![]),
            min_fractional_weight: f64::INFINITY,
            max_fractional_weight: f64::NEG_INFINITY,
        };
        let mut witness_row = 0;
        for r in 0..self.rows() {
            let w = self.row_weight(r) as f64 / len;
            let dev = (1.0 - 2.0 * w).abs();
            if dev > report.max_deviation {
                report.max_deviation = dev;
                witness_row = r;
            }
            report.min_fractional_weight = report.min_fractional_weight.min(w);
            report.max_fractional_weight = report.max_fractional_weight.max(w);
        }
        let message = witness_row as u64 + 1;
        report.witness = GroupElement::from_residues((0..self.n).map(|j| (message >> (self.n - 1 - j)) & 1).collect());
        report
    }

    /// JSON with one `0`/`1` string per row plus the balance report.
    pub fn to_writer<W: Write>(&self, mut writer: W) -> Result<()> {
        let balance = self.balance();
        let rows = (0..self.rows())
            .map(|r| {
                (0..self.columns)
                    .map(|c| if self.bit(r, c) == 1 { '1' } else { '0' })
                    .collect()
            })
            .collect();
        let file = CodeMatrixFile {
            n: self.n,
            columns: self.columns,
            rows,
            balance: &balance,
        };
        serde_json::to_writer(&mut writer, &file).map_err(|e| Error::Io(e.into()))?;
        writer.write_all(b"\n")?;
        Ok(())
    }
}

pub fn code_matrix(set: &BiasedSet) -> Result<CodeMatrix> {
    let group = set.group();
    if !group.is_boolean() {
        return Err(Error::Usage("code matrices are defined only over Z_2^n".into()));
    }
    let n = group.rank();
    if n > MAX_CODE_DIMENSION {
        return Err(Error::capacity("code dimension", n as u128, MAX_CODE_DIMENSION as u64));
    }
    let rows = (1usize << n) - 1;
    let columns = set.len();
    if rows as u128 * columns as u128 > MAX_CODE_BITS {
        return Err(Error::capacity(
            "code matrix bits",
            rows as u128 * columns as u128,
            MAX_CODE_BITS as u64,
        ));
    }
    let words = columns.div_ceil(64);
    let masks: Vec<u64> = set.elements().iter().map(|x| group.index_of(x)).collect();
    let mut bits = vec![0u64; rows * words];
    bits.par_chunks_mut(words).enumerate().for_each(|(r, row)| {
        let a = r as u64 + 1;
        for (c, &x) in masks.iter().enumerate() {
            row[c / 64] |= ((a & x).count_ones() as u64 & 1) << (c % 64);
        }
    });
    Ok(CodeMatrix {
        n,
        columns,
        words,
        bits,
    })
}

/// Hash size accounting next to the sampling-size and fingerprinting
/// lower-bound forms. Nothing relates the two forms; both are reported.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SizeReport {
    /// `⌈log₂|G|⌉`.
    pub input_bits: u32,
    pub set_size: u64,
    /// `⌈log₂|S|⌉`.
    pub qubits: u32,
    pub epsilon: f64,
    /// `⌈c·ln|G|/ε²⌉`, for randomly sampled sets.
    pub sampling_size: Option<u64>,
    /// `log₂(c·ln|G|/ε²)`, for randomly sampled sets.
    pub sampling_size_log2: Option<f64>,
    /// `log₂(log₂|G|/ε)`; infinite (serialized as null) at ε = 0.
    pub lower_bound_log2: f64,
}

impl SizeReport {
    /// Pure arithmetic for a group of order `2^log2_group_order`, which
    /// need not be representable.
    pub fn from_scale(log2_group_order: f64, set_size: u64, epsilon: f64, sampling_constant: Option<f64>) -> Self {
        let ln_order = log2_group_order * std::f64::consts::LN_2;
        let raw = sampling_constant
            .filter(|_| epsilon > 0.0)
            .map(|c| c * ln_order / (epsilon * epsilon));
        SizeReport {
            input_bits: log2_group_order.ceil() as u32,
            set_size,
            qubits: ceil_log2(set_size),
            epsilon,
            sampling_size: raw.map(|t| t.ceil() as u64),
            sampling_size_log2: raw.map(f64::log2),
            lower_bound_log2: (log2_group_order / epsilon).log2(),
        }
    }
}

/// Size report for a concrete set. The sampling forms are filled in when the
/// set was drawn at random, using its recorded constant.
pub fn size_report(set: &BiasedSet, epsilon: f64) -> Result<SizeReport> {
    if !(epsilon >= 0.0 && epsilon.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "epsilon {epsilon} must be non-negative"
        )));
    }
    let group = set.group();
    let c = match set.provenance() {
        Provenance::Random { c, .. } => Some(*c),
        _ => None,
    };
    let log2_order = (group.order() as f64).log2();
    let mut report = SizeReport::from_scale(log2_order, set.len() as u64, epsilon, c);
    report.input_bits = group.bit_length();
    if let (Some(c), true) = (c, epsilon > 0.0 && epsilon < 1.0) {
        report.sampling_size = Some(sampling_size(group.order(), epsilon, c)?);
    }
    Ok(report)
}
