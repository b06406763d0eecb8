//! ε-biased multisets: the bias oracles, three constructions and the
//! versioned JSON set file.
//!
//! The bias of a multiset `S ⊆ G` is
//! `max_{a ≠ 0} |Σ_{x∈S} χ_a(x)| / |S|`. Boolean cubes compute it with an
//! integer Walsh-Hadamard transform of the multiplicity vector, so their
//! certificates carry no rounding at all. Other groups sum each character
//! directly with compensated summation, in parallel over characters.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::ops::{Add, Sub};
use std::path::Path;

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::gf2m::{dot_gf2, FieldGF2m};
use crate::group::{unit_root, AbelianGroup, GroupElement, DEFAULT_ENUMERATION_LIMIT};
use crate::rng;

/// Groups above this order are refused by [`greedy_biased_set`].
pub const DEFAULT_GREEDY_LIMIT: u64 = 1 << 14;

/// Characters drawn when a construction must fall back to sampled certification.
pub const DEFAULT_SAMPLED_CHARACTERS: usize = 4096;

/// Slack allowed when comparing floating-point biases.
pub const CERTIFICATION_TOLERANCE: f64 = 1e-9;

/// Default constant in the random-sampling size `⌈c·ln|G|/ε²⌉`.
pub const DEFAULT_SAMPLING_CONSTANT: f64 = 4.0;

/// Largest multiset any construction will materialize.
pub const MAX_SET_SIZE: u64 = 1 << 24;

pub const SET_FILE_VERSION: u32 = 1;

// Root-of-unity tables are built only up to this group exponent.
const ROOT_TABLE_LIMIT: u64 = 1 << 20;

/// How a set's `certified_epsilon` was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Certification {
    /// Exhaustive maximum over all nontrivial characters.
    Exact,
    /// Maximum over `characters` random nontrivial characters drawn with
    /// `seed`. Only a lower estimate of the true bias.
    Sampled { characters: usize, seed: u64 },
    /// A proven upper bound for the construction.
    AnalyticBound,
}

/// Where a set came from.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "lowercase")]
pub enum Provenance {
    Random {
        seed: u64,
        attempts: u32,
        epsilon: f64,
        c: f64,
    },
    Greedy {
        size: usize,
    },
    Aghp {
        n: usize,
        field: FieldGF2m,
    },
    Manual,
}

/// An ordered multiset of group elements, optionally carrying a bias
/// certificate.
#[derive(Clone, Debug, PartialEq)]
pub struct BiasedSet {
    group: AbelianGroup,
    elements: Vec<GroupElement>,
    certified_epsilon: Option<f64>,
    certification: Option<Certification>,
    provenance: Provenance,
}

impl BiasedSet {
    /// An uncertified set with manual provenance.
    pub fn new(group: AbelianGroup, elements: Vec<GroupElement>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::InvalidParameter(
                "a biased set needs at least one element".into(),
            ));
        }
        for e in &elements {
            group.check(e)?;
        }
        Ok(BiasedSet {
            group,
            elements,
            certified_epsilon: None,
            certification: None,
            provenance: Provenance::Manual,
        })
    }

    /// The whole group, in enumeration order.
    pub fn whole_group(group: AbelianGroup) -> Result<Self> {
        let elements = group.enumerate()?.collect();
        Self::new(group, elements)
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    /// `|S|`, counting repetitions.
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn certified_epsilon(&self) -> Option<f64> {
        self.certified_epsilon
    }

    pub fn certification(&self) -> Option<Certification> {
        self.certification
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// Attaches the exact bias as certificate.
    pub fn certify_exact(self) -> Result<Self> {
        self.certify_exact_with_limit(DEFAULT_ENUMERATION_LIMIT)
    }

    pub fn certify_exact_with_limit(mut self, limit: u64) -> Result<Self> {
        let eps = bias_exact_with_limit(&self, limit)?;
        self.certified_epsilon = Some(eps);
        self.certification = Some(Certification::Exact);
        Ok(self)
    }

    /// Attaches a sampled (lower-estimate) certificate.
    pub fn certify_sampled(mut self, characters: usize, seed: u64) -> Result<Self> {
        let eps = bias_sampled(&self, characters, seed)?;
        self.certified_epsilon = Some(eps);
        self.certification = Some(Certification::Sampled { characters, seed });
        Ok(self)
    }

    pub fn with_provenance(mut self, provenance: Provenance) -> Self {
        self.provenance = provenance;
        self
    }

    /// Hex SHA-256 over the group orders and the element list. Two sets share
    /// an id exactly when they have the same group and the same ordered
    /// elements, whatever their certificates say.
    pub fn content_id(&self) -> String {
        let mut h = Sha256::new();
        h.update(b"abelian-qhash/set/v1");
        h.update((self.group.rank() as u64).to_le_bytes());
        for q in self.group.orders() {
            h.update(q.to_le_bytes());
        }
        h.update((self.elements.len() as u64).to_le_bytes());
        for e in &self.elements {
            for r in e.residues() {
                h.update(r.to_le_bytes());
            }
        }
        hex::encode(h.finalize())
    }

    /// Distinct elements with multiplicities, sorted by enumeration index.
    fn histogram(&self) -> Vec<(u64, u64)> {
        let mut idx: Vec<u64> = self.elements.iter().map(|e| self.group.index_of(e)).collect();
        idx.sort_unstable();
        let mut out: Vec<(u64, u64)> = Vec::new();
        for i in idx {
            match out.last_mut() {
                Some((j, c)) if *j == i => *c += 1,
                _ => out.push((i, 1)),
            }
        }
        out
    }
}

/// A bias value with the first character (in enumeration order) attaining it.
#[derive(Clone, Debug, PartialEq)]
pub struct BiasWitness {
    pub bias: f64,
    pub character: GroupElement,
}

/// Exact bias over all nontrivial characters.
pub fn bias_exact(set: &BiasedSet) -> Result<f64> {
    bias_exact_with_limit(set, DEFAULT_ENUMERATION_LIMIT)
}

pub fn bias_exact_with_limit(set: &BiasedSet, limit: u64) -> Result<f64> {
    Ok(bias_witness_with_limit(set, limit)?.bias)
}

/// Exact bias together with a maximizing character.
pub fn bias_witness(set: &BiasedSet) -> Result<BiasWitness> {
    bias_witness_with_limit(set, DEFAULT_ENUMERATION_LIMIT)
}

pub fn bias_witness_with_limit(set: &BiasedSet, limit: u64) -> Result<BiasWitness> {
    let group = set.group();
    if group.order() > limit {
        return Err(Error::Capacity {
            what: "group",
            size: group.order() as u128,
            limit,
            hint: "; use bias_sampled for groups this large",
        });
    }
    let len = set.len() as f64;
    let hist = set.histogram();
    // the trivial group character is excluded; |G| >= 2 always
    let (best, index) = if group.is_boolean() {
        let mut counts = vec![0i64; group.order() as usize];
        for &(i, c) in &hist {
            counts[i as usize] = c as i64;
        }
        walsh_hadamard(&mut counts);
        let mut best = (0i64, 1u64);
        for (a, &v) in counts.iter().enumerate().skip(1) {
            if v.abs() > best.0 {
                best = (v.abs(), a as u64);
            }
        }
        (best.0 as f64, best.1)
    } else {
        let summer = CharacterSummer::new(group, &hist);
        (1..group.order())
            .into_par_iter()
            .map(|a| (summer.sum(&group.element_at(a)).norm(), a))
            .reduce(|| (f64::NEG_INFINITY, u64::MAX), pick_max)
    };
    Ok(BiasWitness {
        bias: best / len,
        character: group.element_at(index),
    })
}

// max by value, ties to the smaller index; associative and commutative
fn pick_max(x: (f64, u64), y: (f64, u64)) -> (f64, u64) {
    if x.0 > y.0 || (x.0 == y.0 && x.1 < y.1) {
        x
    } else {
        y
    }
}

/// Max normalized character sum over `num_characters` nontrivial characters
/// drawn uniformly (with replacement) from the stream seeded by `seed`.
/// Never exceeds [`bias_exact`] on the same set.
pub fn bias_sampled(set: &BiasedSet, num_characters: usize, seed: u64) -> Result<f64> {
    if num_characters == 0 {
        return Err(Error::InvalidParameter("num_characters must be at least 1".into()));
    }
    let group = set.group();
    let mut rng = rng::stream(seed, 0);
    let picks: Vec<u64> = (0..num_characters).map(|_| rng.gen_range(1..group.order())).collect();
    let hist = set.histogram();
    let best = if group.is_boolean() {
        picks
            .par_iter()
            .map(|&a| {
                hist.iter()
                    .map(|&(x, c)| {
                        if (a & x).count_ones() & 1 == 0 {
                            c as i64
                        } else {
                            -(c as i64)
                        }
                    })
                    .sum::<i64>()
                    .abs() as f64
            })
            .reduce(|| 0.0, f64::max)
    } else {
        let summer = CharacterSummer::new(group, &hist);
        picks
            .par_iter()
            .map(|&a| summer.sum(&group.element_at(a)).norm())
            .reduce(|| 0.0, f64::max)
    };
    Ok(best / set.len() as f64)
}

/// Direct character sums over a histogram, shared by the exact and sampled
/// oracles so both produce bit-identical per-character values.
struct CharacterSummer<'a> {
    group: &'a AbelianGroup,
    points: Vec<(GroupElement, f64)>,
    roots: Option<Vec<Complex64>>,
}

impl<'a> CharacterSummer<'a> {
    fn new(group: &'a AbelianGroup, hist: &[(u64, u64)]) -> Self {
        let l = group.exponent();
        let roots = (l <= ROOT_TABLE_LIMIT).then(|| (0..l).map(|n| unit_root(n, l)).collect());
        let points = hist.iter().map(|&(i, c)| (group.element_at(i), c as f64)).collect();
        CharacterSummer { group, points, roots }
    }

    fn sum(&self, a: &GroupElement) -> Complex64 {
        let l = self.group.exponent();
        let mut acc = NeumaierComplex::default();
        for (x, c) in &self.points {
            let n = self.group.phase_raw(a.residues(), x.residues());
            let z = match &self.roots {
                Some(t) => t[n as usize],
                None => unit_root(n, l),
            };
            acc.add(z * *c);
        }
        acc.value()
    }
}

/// Compensated (Neumaier) summation on both components.
#[derive(Default)]
pub(crate) struct NeumaierComplex {
    re: Neumaier,
    im: Neumaier,
}

impl NeumaierComplex {
    pub(crate) fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    pub(crate) fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

#[derive(Default)]
struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// In-place unnormalized Walsh-Hadamard transform; `v.len()` must be a power
/// of two. Index bits follow [`AbelianGroup::index_of`] on Boolean cubes.
pub(crate) fn walsh_hadamard<T>(v: &mut [T])
where
    T: Copy + Add<Output = T> + Sub<Output = T>,
{
    debug_assert!(v.len().is_power_of_two());
    let mut h = 1;
    while h < v.len() {
        for block in v.chunks_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (x, y) in lo.iter_mut().zip(hi.iter_mut()) {
                let (a, b) = (*x, *y);
                *x = a + b;
                *y = a - b;
            }
        }
        h *= 2;
    }
}

/// `⌈c·ln|G|/ε²⌉`, the sample count used by [`random_biased_set`].
pub fn sampling_size(group_order: u64, epsilon: f64, c: f64) -> Result<u64> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::InvalidParameter(format!("epsilon {epsilon} outside (0, 1)")));
    }
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::InvalidParameter(format!("constant c = {c} must be positive")));
    }
    let t = (c * (group_order as f64).ln() / (epsilon * epsilon)).ceil().max(1.0);
    if t > MAX_SET_SIZE as f64 {
        return Err(Error::capacity("sampled set", t as u128, MAX_SET_SIZE));
    }
    Ok(t as u64)
}

/// Las-Vegas sampling: draw `⌈c·ln|G|/ε²⌉` uniform elements with
/// replacement, certify, and resample on failure.
///
/// Attempt `i` (from 0) draws from the seed `splitmix64(seed + i)`. Groups
/// beyond the exhaustive limit are certified on
/// [`DEFAULT_SAMPLED_CHARACTERS`] random characters and flagged as such.
pub fn random_biased_set(
    group: &AbelianGroup,
    epsilon: f64,
    c: f64,
    seed: u64,
    max_attempts: u32,
) -> Result<BiasedSet> {
    if max_attempts == 0 {
        return Err(Error::InvalidParameter("max_attempts must be at least 1".into()));
    }
    let t = sampling_size(group.order(), epsilon, c)?;
    let exact = group.order() <= DEFAULT_ENUMERATION_LIMIT;
    let mut best = f64::INFINITY;
    for attempt in 0..max_attempts {
        let attempt_seed = rng::derive_seed(seed, attempt as u64);
        let mut draw = rng::seeded(attempt_seed);
        let elements = (0..t)
            .map(|_| group.element_at(draw.gen_range(0..group.order())))
            .collect();
        let set = BiasedSet::new(group.clone(), elements)?;
        let set = if exact {
            set.certify_exact()?
        } else {
            set.certify_sampled(DEFAULT_SAMPLED_CHARACTERS, rng::splitmix64(attempt_seed))?
        };
        let bias = set.certified_epsilon.expect("just certified");
        if bias <= epsilon {
            return Ok(set.with_provenance(Provenance::Random {
                seed,
                attempts: attempt + 1,
                epsilon,
                c,
            }));
        }
        best = best.min(bias);
    }
    Err(Error::ConstructionFailure {
        attempts: max_attempts,
        best_bias: best,
    })
}

/// Deterministic greedy construction by the method of conditional
/// expectations, certified exactly.
///
/// Each step appends the element minimizing the pessimistic estimator
/// `Σ_{a≠0} cosh(λ·Re T_a) + cosh(λ·Im T_a)`, where `T_a` is the running
/// character sum, with `λ = min(1, sqrt(2·ln(4|G|)/size))`. Ties go to the
/// earliest element in enumeration order. The first element is always the
/// identity, since translating a set does not change its bias. Boolean cubes evaluate every
/// candidate at once through a Walsh-Hadamard transform.
pub fn greedy_biased_set(group: &AbelianGroup, size: usize) -> Result<BiasedSet> {
    greedy_biased_set_with_limit(group, size, DEFAULT_GREEDY_LIMIT)
}

pub fn greedy_biased_set_with_limit(group: &AbelianGroup, size: usize, limit: u64) -> Result<BiasedSet> {
    if size == 0 {
        return Err(Error::InvalidParameter("greedy set size must be at least 1".into()));
    }
    if size as u64 > MAX_SET_SIZE {
        return Err(Error::capacity("greedy set", size as u128, MAX_SET_SIZE));
    }
    group.ensure_enumerable(limit)?;
    let lambda = greedy_lambda(group.order(), size);
    let picks = if group.is_boolean() {
        greedy_boolean(group.order() as usize, size, lambda)
    } else {
        greedy_general(group, size, lambda)
    };
    let elements = picks.into_iter().map(|i| group.element_at(i)).collect();
    Ok(BiasedSet::new(group.clone(), elements)?
        .certify_exact()?
        .with_provenance(Provenance::Greedy { size }))
}

fn greedy_lambda(order: u64, size: usize) -> f64 {
    (2.0 * (4.0 * order as f64).ln() / size as f64).sqrt().min(1.0)
}

/// First index whose score is within `tol` of the minimum.
fn first_near_min(scores: &[f64], tol: f64) -> u64 {
    let min = scores.iter().copied().fold(f64::INFINITY, f64::min);
    scores.iter().position(|&s| s <= min + tol).expect("nonempty scores") as u64
}

pub(crate) fn greedy_boolean(order: usize, size: usize, lambda: f64) -> Vec<u64> {
    // the first pick is the identity: translating S leaves every |T_a| fixed
    let mut sums = vec![1i64; order];
    let mut scores = vec![0f64; order];
    let mut picks = Vec::with_capacity(size);
    picks.push(0);
    for _ in 1..size {
        let shift = lambda * sums[1..].iter().map(|t| t.unsigned_abs()).max().unwrap_or(0) as f64;
        scores[0] = 0.0;
        let mut mass = 0.0;
        for (w, &t) in scores.iter_mut().zip(&sums).skip(1) {
            let u = lambda * t as f64;
            *w = 0.5 * ((u - shift).exp() - (-u - shift).exp());
            mass += w.abs();
        }
        // scores[y] = Σ_a sinh(λ T_a) (-1)^{a·y}, up to a positive factor and
        // an additive constant shared by all y
        walsh_hadamard(&mut scores);
        let y = first_near_min(&scores, 1e-12 * mass);
        picks.push(y);
        for (a, t) in sums.iter_mut().enumerate() {
            *t += if (a as u64 & y).count_ones() & 1 == 0 { 1 } else { -1 };
        }
    }
    picks
}

pub(crate) fn greedy_general(group: &AbelianGroup, size: usize, lambda: f64) -> Vec<u64> {
    let order = group.order() as usize;
    let l = group.exponent();
    let all: Vec<GroupElement> = (0..group.order()).map(|i| group.element_at(i)).collect();
    let roots: Vec<Complex64> = (0..l).map(|n| unit_root(n, l)).collect();
    // per phase n: cosh(λ cos θ) - 1, sinh(λ cos θ), cosh(λ sin θ) - 1, sinh(λ sin θ)
    let kernel: Vec<[f64; 4]> = roots
        .iter()
        .map(|z| {
            let (c, s) = (lambda * z.re, lambda * z.im);
            [c.cosh() - 1.0, c.sinh(), s.cosh() - 1.0, s.sinh()]
        })
        .collect();
    let mut sums = vec![Complex64::new(1.0, 0.0); order];
    let mut picks = Vec::with_capacity(size);
    picks.push(0);
    for _ in 1..size {
        let shift = lambda * sums[1..].iter().map(|t| t.re.abs().max(t.im.abs())).fold(0.0, f64::max);
        let mut mass = 0.0;
        let coeffs: Vec<[f64; 4]> = sums
            .iter()
            .map(|t| {
                let (u, v) = (lambda * t.re, lambda * t.im);
                let (ep, em) = ((u - shift).exp(), (-u - shift).exp());
                let (fp, fm) = ((v - shift).exp(), (-v - shift).exp());
                let c = [0.5 * (ep + em), 0.5 * (ep - em), 0.5 * (fp + fm), 0.5 * (fp - fm)];
                mass += c.iter().map(|x| x.abs()).sum::<f64>();
                c
            })
            .collect();
        let scores: Vec<f64> = all
            .par_iter()
            .map(|y| {
                let mut acc = 0.0;
                for (a, c) in all.iter().zip(&coeffs).skip(1) {
                    let k = &kernel[group.phase_raw(a.residues(), y.residues()) as usize];
                    acc += c[0] * k[0] + c[1] * k[1] + c[2] * k[2] + c[3] * k[3];
                }
                acc
            })
            .collect();
        let y = first_near_min(&scores, 1e-12 * mass);
        picks.push(y);
        let ye = &all[y as usize];
        for (a, t) in all.iter().zip(sums.iter_mut()) {
            *t += roots[group.phase_raw(a.residues(), ye.residues()) as usize];
        }
    }
    picks
}

/// The powering construction over `Z_2^n` with the pinned GF(2^m) field.
pub fn aghp_set(n: usize, m: u32) -> Result<BiasedSet> {
    aghp_set_with_field(n, FieldGF2m::new(m)?)
}

/// `S = { r(x, y) : x, y ∈ GF(2^m) }` where bit `i` of `r(x, y)` is
/// `<x^i, y>` over GF(2), for `i = 0..n`. Its bias is at most `(n-1)/2^m`.
/// Elements are listed with `x` outer and `y` inner; coordinate `i` of each
/// element holds bit `i`.
pub fn aghp_set_with_field(n: usize, field: FieldGF2m) -> Result<BiasedSet> {
    if n == 0 {
        return Err(Error::InvalidParameter("string length n must be at least 1".into()));
    }
    let group = AbelianGroup::boolean_cube(n)?;
    let q = field.size() as u64;
    if q * q > MAX_SET_SIZE {
        return Err(Error::capacity("powering set", (q * q) as u128, MAX_SET_SIZE));
    }
    let mut elements = Vec::with_capacity((q * q) as usize);
    let mut powers = vec![0u32; n];
    for x in 0..field.size() {
        let mut p = 1;
        for slot in powers.iter_mut() {
            *slot = p;
            p = field.mul(p, x);
        }
        for y in 0..field.size() {
            let bits = powers.iter().map(|&p| dot_gf2(p, y) as u64).collect();
            elements.push(GroupElement::from_residues(bits));
        }
    }
    let bound = ((n - 1) as f64 / q as f64).min(1.0);
    let mut set = BiasedSet::new(group, elements)?.with_provenance(Provenance::Aghp { n, field });
    set.certified_epsilon = Some(bound);
    set.certification = Some(Certification::AnalyticBound);
    Ok(set)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum CertificationTag {
    Exact,
    Sampled,
    AnalyticBound,
}

#[derive(Serialize, Deserialize)]
struct SetFile {
    version: u32,
    group: AbelianGroup,
    elements: Vec<GroupElement>,
    certified_epsilon: Option<f64>,
    certification: Option<CertificationTag>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    sampled_characters: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    sampling_seed: Option<u64>,
    provenance: Provenance,
}

/// Writes the versioned JSON set file.
pub fn save_set<W: Write>(set: &BiasedSet, writer: W) -> Result<()> {
    let (tag, characters, seed) = match set.certification {
        None => (None, None, None),
        Some(Certification::Exact) => (Some(CertificationTag::Exact), None, None),
        Some(Certification::AnalyticBound) => (Some(CertificationTag::AnalyticBound), None, None),
        Some(Certification::Sampled { characters, seed }) => {
            (Some(CertificationTag::Sampled), Some(characters), Some(seed))
        }
    };
    let file = SetFile {
        version: SET_FILE_VERSION,
        group: set.group.clone(),
        elements: set.elements.clone(),
        certified_epsilon: set.certified_epsilon,
        certification: tag,
        sampled_characters: characters,
        sampling_seed: seed,
        provenance: set.provenance.clone(),
    };
    let mut writer = writer;
    serde_json::to_writer(&mut writer, &file).map_err(|e| Error::Io(e.into()))?;
    writer.write_all(b"\n")?;
    Ok(())
}

/// Reads a set file. With `verify`, the stored certificate is recomputed and
/// a disagreement is reported as [`Error::CertificationMismatch`].
pub fn load_set<R: Read>(reader: R, verify: bool) -> Result<BiasedSet> {
    let file: SetFile = serde_json::from_reader(reader).map_err(|e| Error::Parse {
        location: format!("line {} column {}", e.line(), e.column()),
        message: e.to_string(),
    })?;
    if file.version != SET_FILE_VERSION {
        return Err(Error::Parse {
            location: "version".into(),
            message: format!("unsupported set file version {}", file.version),
        });
    }
    if file.elements.is_empty() {
        return Err(Error::Parse {
            location: "elements".into(),
            message: "empty element list".into(),
        });
    }
    for (i, e) in file.elements.iter().enumerate() {
        file.group.check(e).map_err(|err| Error::Parse {
            location: format!("elements[{i}]"),
            message: err.to_string(),
        })?;
    }
    let certification = match file.certification {
        None => None,
        Some(CertificationTag::Exact) => Some(Certification::Exact),
        Some(CertificationTag::AnalyticBound) => Some(Certification::AnalyticBound),
        Some(CertificationTag::Sampled) => match (file.sampled_characters, file.sampling_seed) {
            (Some(characters), Some(seed)) => Some(Certification::Sampled { characters, seed }),
            _ => {
                return Err(Error::Parse {
                    location: "certification".into(),
                    message: "sampled certification needs sampled_characters and sampling_seed".into(),
                })
            }
        },
    };
    if certification.is_some() != file.certified_epsilon.is_some() {
        return Err(Error::Parse {
            location: "certified_epsilon".into(),
            message: "certified_epsilon and certification must be both present or both null".into(),
        });
    }
    let set = BiasedSet {
        group: file.group,
        elements: file.elements,
        certified_epsilon: file.certified_epsilon,
        certification,
        provenance: file.provenance,
    };
    if verify {
        verify_certificate(&set)?;
    }
    Ok(set)
}

/// Recomputes a set's certificate. Exact and sampled certificates must be
/// reproduced within [`CERTIFICATION_TOLERANCE`]; analytic bounds must not be
/// exceeded by the exact bias.
pub fn verify_certificate(set: &BiasedSet) -> Result<()> {
    let (Some(stored), Some(cert)) = (set.certified_epsilon, set.certification) else {
        return Ok(());
    };
    let recomputed = match cert {
        Certification::Exact | Certification::AnalyticBound => bias_exact(set)?,
        Certification::Sampled { characters, seed } => bias_sampled(set, characters, seed)?,
    };
    let ok = match cert {
        Certification::AnalyticBound => recomputed <= stored + CERTIFICATION_TOLERANCE,
        _ => (recomputed - stored).abs() <= CERTIFICATION_TOLERANCE,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::CertificationMismatch {
            stored: Some(stored),
            recomputed,
        })
    }
}

pub fn save_set_to_path(set: &BiasedSet, path: impl AsRef<Path>) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    save_set(set, &mut w)?;
    w.flush()?;
    Ok(())
}

pub fn load_set_from_path(path: impl AsRef<Path>, verify: bool) -> Result<BiasedSet> {
    load_set(BufReader::new(File::open(path)?), verify)
}
