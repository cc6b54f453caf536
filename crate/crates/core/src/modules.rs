//! The simple modules indexed by `(p, g, c, eps)`: closed-form highest
//! weights, formal characters computed from colorings, and a report that
//! cross-checks every available route.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use itertools::Itertools;
use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lollipop;
use crate::params::{self, half, Case};
use crate::verlinde::{self, TrigEvalConfig};
use crate::weights::{
    alcove_pairing, dominance_leq, dominant_representative, epsilon_to_omega, reduce_weight,
    DominantWeight, ReducedWeight, Weight,
};
use crate::weyl;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ModuleDescriptor {
    pub p: u32,
    pub g: usize,
    pub c: u32,
    pub eps: u8,
}

impl ModuleDescriptor {
    pub fn new(p: u32, g: usize, c: u32, eps: u8) -> Result<Self> {
        params::check(p, g, c, eps)?;
        Ok(ModuleDescriptor { p, g, c, eps })
    }

    pub fn d(&self) -> u32 {
        half(self.p)
    }

    pub fn case(&self) -> Case {
        Case::of(self.c, self.eps)
    }

    /// Every descriptor with `p ≤ pmax` and `g ≤ gmax`, ordered by `(p, g, c, eps)`.
    pub fn grid(pmax: u32, gmax: usize) -> Vec<ModuleDescriptor> {
        let mut out = Vec::new();
        for p in params::primes_between(5, pmax) {
            for g in 1..=gmax {
                for c in 0..half(p) {
                    for eps in 0..2 {
                        out.push(ModuleDescriptor { p, g, c, eps });
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for ModuleDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(p={}, g={}, c={}, eps={})", self.p, self.g, self.c, self.eps)
    }
}

/// Weights with positive multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "MultisetJson", try_from = "MultisetJson")]
pub struct WeightMultiset {
    g: usize,
    entries: BTreeMap<Weight, u64>,
}

impl WeightMultiset {
    pub fn new(g: usize) -> Self {
        WeightMultiset { g, entries: BTreeMap::new() }
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn insert(&mut self, w: Weight, k: u64) {
        assert_eq!(w.g(), self.g, "rank mismatch");
        if k > 0 {
            *self.entries.entry(w).or_insert(0) += k;
        }
    }

    pub fn mult(&self, w: &Weight) -> u64 {
        self.entries.get(w).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, u64)> {
        self.entries.iter().map(|(w, &k)| (w, k))
    }

    /// Number of distinct weights.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Sum of multiplicities.
    pub fn mass(&self) -> BigUint {
        self.entries.values().map(|&k| BigUint::from(k)).sum()
    }

    pub fn reduce(&self, modulus: u64) -> BTreeMap<ReducedWeight, u64> {
        let mut out = BTreeMap::new();
        for (w, k) in self.iter() {
            *out.entry(reduce_weight(w, modulus)).or_insert(0) += k;
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
struct EntryJson {
    weight: Vec<i64>,
    mult: u64,
}

#[derive(Serialize, Deserialize)]
struct MultisetJson {
    g: usize,
    entries: Vec<EntryJson>,
}

impl From<WeightMultiset> for MultisetJson {
    fn from(m: WeightMultiset) -> Self {
        MultisetJson {
            g: m.g,
            entries: m
                .entries
                .into_iter()
                .map(|(w, mult)| EntryJson { weight: w.coords().to_vec(), mult })
                .collect(),
        }
    }
}

impl TryFrom<MultisetJson> for WeightMultiset {
    type Error = Error;

    fn try_from(j: MultisetJson) -> Result<Self> {
        let mut m = WeightMultiset::new(j.g);
        for e in j.entries {
            if e.weight.len() != j.g {
                return Err(Error::RankMismatch(j.g, e.weight.len()));
            }
            if e.mult == 0 {
                return Err(Error::bad("multiplicities must be positive"));
            }
            m.insert(Weight::new(e.weight), e.mult);
        }
        Ok(m)
    }
}

/// The highest weight predicted by the case formulas, with `ω_0 = 0`.
/// Fails with [`Error::WeightUndefined`] when a formula needs `ω_i`, `i < 0`.
pub fn highest_weight_closed(desc: &ModuleDescriptor) -> Result<DominantWeight> {
    let (g, d, c) = (desc.g as i64, desc.d() as u64, desc.c as u64);
    let terms: Vec<(i64, u64)> = match desc.case() {
        Case::I => vec![(g, d - 1)],
        Case::II => vec![(g, d - c - 1), (g - 1, c)],
        Case::III => vec![(g, d - c - 1), (g - 1, c - 1), (g - 2, 1)],
        Case::IV => vec![(g, d - 2), (g - 3, 1)],
    };
    let mut lam = DominantWeight::zero(desc.g);
    for (index, k) in terms {
        if index < 0 {
            return Err(Error::WeightUndefined { g: desc.g, index });
        }
        lam.add_fundamental(index as usize, k);
    }
    Ok(lam)
}

/// Weights `w(σ)` over all colorings of the given type.
///
/// The weight of a coloring only depends on its sticks and loops, so each
/// such choice is counted once with the number of trunk completions as
/// multiplicity.
pub fn character(desc: &ModuleDescriptor) -> Result<WeightMultiset> {
    let ModuleDescriptor { p, g, c, eps } = *desc;
    params::check(p, g, c, eps)?;
    let d = desc.d();
    let mut hist: HashMap<Vec<i64>, u64> = HashMap::new();
    for a in (0..g).map(|_| 0..d).multi_cartesian_product() {
        if (c + a.iter().sum::<u32>()) % 2 != eps as u32 {
            continue;
        }
        let n = lollipop::trunk_completions(p, c, &a);
        if n == 0 {
            continue;
        }
        for b in a.iter().map(|&ai| 0..d - ai).multi_cartesian_product() {
            let w = a.iter().zip(&b).map(|(&ai, &bi)| (d - 1) as i64 - ai as i64 - 2 * bi as i64).collect();
            *hist.entry(w).or_insert(0) += n;
        }
    }
    let mut m = WeightMultiset::new(g);
    for (w, k) in hist {
        m.insert(Weight::new(w), k);
    }
    Ok(m)
}

/// [`character`] computed by visiting every coloring.
pub fn character_by_enumeration(desc: &ModuleDescriptor) -> Result<WeightMultiset> {
    let hist = lollipop::fold(
        desc.p,
        desc.g,
        desc.c,
        desc.eps,
        HashMap::<Weight, u64>::new,
        |acc, sigma| *acc.entry(lollipop::weight_of(sigma)).or_insert(0) += 1,
        |mut a, b| {
            for (w, k) in b {
                *a.entry(w).or_insert(0) += k;
            }
            a
        },
    )?;
    let mut m = WeightMultiset::new(desc.g);
    for (w, k) in hist {
        m.insert(w, k);
    }
    Ok(m)
}

/// The character reduced modulo `p − 1`.
pub fn reduced_character(desc: &ModuleDescriptor) -> Result<BTreeMap<ReducedWeight, u64>> {
    Ok(character(desc)?.reduce(desc.p as u64 - 1))
}

/// `Σ (g − i) · w_i`: strictly increasing along every positive root.
fn height(w: &Weight) -> i64 {
    let g = w.g() as i64;
    w.coords().iter().enumerate().map(|(i, &x)| (g - i as i64) * x).sum()
}

/// The unique dominance-maximal weight of `m`, checked against every member
/// and required to occur once.
pub fn highest_weight_from_character(m: &WeightMultiset) -> Result<DominantWeight> {
    let top = m.iter().map(|(w, _)| height(w)).max().ok_or(Error::EmptyModule)?;
    let mut at_top = m.iter().filter(|(w, _)| height(w) == top);
    let (mu, mult) = at_top.next().expect("nonempty");
    if at_top.next().is_some() || mult != 1 || !mu.is_dominant() {
        return Err(Error::NoUniqueMaximum);
    }
    for (w, _) in m.iter() {
        if !dominance_leq(w, mu)? {
            return Err(Error::NoUniqueMaximum);
        }
    }
    epsilon_to_omega(mu)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DimMethod {
    Count,
    Formula,
    Polynomial,
}

impl DimMethod {
    pub fn all() -> [DimMethod; 3] {
        [DimMethod::Count, DimMethod::Formula, DimMethod::Polynomial]
    }
}

impl fmt::Display for DimMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DimMethod::Count => "count",
            DimMethod::Formula => "formula",
            DimMethod::Polynomial => "polynomial",
        })
    }
}

impl std::str::FromStr for DimMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "count" => Ok(DimMethod::Count),
            "formula" => Ok(DimMethod::Formula),
            "polynomial" => Ok(DimMethod::Polynomial),
            _ => Err(Error::bad(format!("unknown method {s:?}"))),
        }
    }
}

pub fn dim(desc: &ModuleDescriptor, method: DimMethod) -> Result<BigUint> {
    dim_with(desc, method, &TrigEvalConfig::for_params(desc.p, desc.g))
}

/// [`dim`] with an explicit precision for the formula route.
pub fn dim_with(desc: &ModuleDescriptor, method: DimMethod, cfg: &TrigEvalConfig) -> Result<BigUint> {
    let ModuleDescriptor { p, g, c, eps } = *desc;
    match method {
        DimMethod::Count => lollipop::count(p, g, c, eps),
        DimMethod::Formula => verlinde::dim_formula(p, g, c, eps, cfg),
        DimMethod::Polynomial => {
            let v = verlinde::closed_form_eval(g, desc.case(), p, c)?;
            v.to_biguint().ok_or_else(|| Error::NonIntegralResult(format!("negative value {v}")))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub check: String,
    #[serde(rename = "routeA")]
    pub route_a: String,
    #[serde(rename = "routeB")]
    pub route_b: String,
    pub pass: bool,
}

impl CheckRecord {
    fn new(check: &str, route_a: impl ToString, route_b: impl ToString, pass: bool) -> Self {
        CheckRecord { check: check.into(), route_a: route_a.to_string(), route_b: route_b.to_string(), pass }
    }

    fn compare<T: PartialEq + fmt::Display>(check: &str, a: &T, b: &T) -> Self {
        CheckRecord::new(check, a, b, a == b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConsistencyReport {
    pub descriptor: ModuleDescriptor,
    pub records: Vec<CheckRecord>,
}

impl ConsistencyReport {
    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| !r.pass)
    }

    pub fn record(&self, check: &str) -> Option<&CheckRecord> {
        self.records.iter().find(|r| r.check == check)
    }
}

impl Serialize for ConsistencyReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.records.serialize(s)
    }
}

fn shown<T: fmt::Display>(r: &Result<T>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => e.to_string(),
    }
}

fn factorial(n: usize) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

/// Size of the signed-permutation orbit of `w`.
fn orbit_size(w: &Weight) -> BigUint {
    let rep = dominant_representative(w);
    let mut runs: BTreeMap<i64, usize> = BTreeMap::new();
    for &x in rep.coords() {
        *runs.entry(x).or_insert(0) += 1;
    }
    let nonzero = rep.coords().iter().filter(|&&x| x != 0).count();
    let stab: BigUint = runs.values().map(|&k| factorial(k)).product();
    factorial(w.g()) / stab * (BigUint::from(1u32) << nonzero)
}

/// Multiplicity is constant on each orbit and every orbit is complete.
pub fn is_weyl_invariant(m: &WeightMultiset) -> bool {
    let mut orbits: HashMap<Weight, (u64, usize)> = HashMap::new();
    for (w, k) in m.iter() {
        let slot = orbits.entry(dominant_representative(w)).or_insert((k, 0));
        if slot.0 != k {
            return false;
        }
        slot.1 += 1;
    }
    orbits.iter().all(|(rep, &(_, seen))| orbit_size(rep) == BigUint::from(seen))
}

/// Reduction modulo `2d` is injective on `m` and the symmetric lift
/// recovers each weight.
pub fn reduction_is_faithful(m: &WeightMultiset, modulus: u64) -> bool {
    let reduced = m.reduce(modulus);
    reduced.len() == m.len()
        && m.iter().all(|(w, _)| reduce_weight(w, modulus).lift_symmetric().as_ref() == Some(w))
}

/// Runs every applicable cross-check; failures are recorded, not raised.
pub fn consistency_report(desc: &ModuleDescriptor) -> ConsistencyReport {
    let cfg = TrigEvalConfig::for_params(desc.p, desc.g);
    let ((count, formula), (chi, closed)) = rayon::join(
        || rayon::join(|| dim(desc, DimMethod::Count), || dim_with(desc, DimMethod::Formula, &cfg)),
        || rayon::join(|| character(desc), || highest_weight_closed(desc)),
    );
    let mut records = vec![CheckRecord::new(
        "dim count = formula",
        shown(&count),
        shown(&formula),
        matches!((&count, &formula), (Ok(a), Ok(b)) if a == b),
    )];

    if verlinde::closed_form_poly(desc.g, desc.case()).is_ok() {
        let poly = dim(desc, DimMethod::Polynomial);
        records.push(CheckRecord::new(
            "dim count = polynomial",
            shown(&count),
            shown(&poly),
            matches!((&count, &poly), (Ok(a), Ok(b)) if a == b),
        ));
    }

    let chi = match chi {
        Ok(chi) => chi,
        Err(e) => {
            records.push(CheckRecord::new("character", e, "", false));
            return ConsistencyReport { descriptor: *desc, records };
        }
    };
    if let Ok(n) = &count {
        records.push(CheckRecord::compare("character mass = dim", &chi.mass(), n));
    }

    let extracted = highest_weight_from_character(&chi);
    let hw_pass = match (&extracted, &closed) {
        (Ok(a), Ok(b)) => a == b,
        (Err(Error::EmptyModule), Err(Error::WeightUndefined { .. })) => true,
        // The closed form exists but the module is empty.
        (Err(Error::EmptyModule), Ok(_)) => count.as_ref().is_ok_and(|n| n.is_zero()),
        _ => false,
    };
    records.push(CheckRecord::new("highest weight", shown(&extracted), shown(&closed), hw_pass));

    records.push(CheckRecord::new("Weyl invariance", is_weyl_invariant(&chi), true, is_weyl_invariant(&chi)));

    let d = desc.d() as i64;
    let in_box = chi.iter().all(|(w, _)| w.in_box(1 - d, d - 1));
    records.push(CheckRecord::new("weights in box", in_box, true, in_box));

    let modulus = desc.p as u64 - 1;
    let reduced_mass: BigUint = chi.reduce(modulus).values().map(|&k| BigUint::from(k)).sum();
    records.push(CheckRecord::compare("reduced mass = mass", &reduced_mass, &chi.mass()));
    let faithful = reduction_is_faithful(&chi, modulus);
    records.push(CheckRecord::new("reduction injective", faithful, true, faithful));

    if let (2, Ok(lam), Ok(n)) = (desc.g, &closed, &count) {
        if !n.is_zero() {
            records.push(CheckRecord::new(
                "Weyl dimension (rank 2)",
                n,
                shown(&weyl::weyl_dim(2, lam)),
                weyl::weyl_dim(2, lam).as_ref().is_ok_and(|w| w == n),
            ));
        }
    }
    if let (3, 0, Ok(n)) = (desc.g, desc.eps, &count) {
        let j = weyl::jantzen_rank3_dim(desc.p, desc.c);
        records.push(CheckRecord::new("Jantzen (rank 3)", n, shown(&j), j.as_ref().is_ok_and(|j| j == n)));
    }
    if let (true, Ok(lam)) = (desc.g >= 5, &closed) {
        let expect = desc.p as i64 + 2 * desc.g as i64 - 4;
        records.push(CheckRecord::compare("alcove pairing", &alcove_pairing(lam), &expect));
    }

    ConsistencyReport { descriptor: *desc, records }
}
