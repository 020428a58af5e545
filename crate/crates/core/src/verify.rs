//! Exhaustive checks of the structural claims over every small poset.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::{
    fence_endpoints, fence_recognize, figure2_make, figure2_make_id, figure2_recognize,
    figure2_recognize_unpinned, v_cover_make, v_cover_recognize, x_generate, x_recognize,
    CatalogEntry, Figure2Id, Figure2Name,
};
use crate::covers::CoverSearch;
use crate::enumeration::{
    canonical_form, embeds_pinned, isomorphic_pinned, levels_with, pinned_form_of, PinnedForm,
    Strategy, ENUMERATION_MAX_N,
};
use crate::error::{Error, Result};
use crate::poset::{PinnedTriple, Poset};
use crate::subset::{Bits, Subset};

pub const MIN_N: usize = 3;
pub const MAX_N: usize = ENUMERATION_MAX_N;
/// Largest family member used by the rigidity sweeps.
pub const RIGIDITY_X_MAX: usize = 9;
pub const VERSION: &str = concat!("indeco ", env!("CARGO_PKG_VERSION"));

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Claim {
    TwoChainCovers,
    TwoAntichainCovers,
    Corollary,
    StGrowth,
    Rigidity,
    XEquiv,
}

impl Claim {
    pub const ALL: [Claim; 6] = [
        Claim::TwoChainCovers,
        Claim::TwoAntichainCovers,
        Claim::Corollary,
        Claim::StGrowth,
        Claim::Rigidity,
        Claim::XEquiv,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Claim::TwoChainCovers => "2chfinal",
            Claim::TwoAntichainCovers => "2aclem",
            Claim::Corollary => "corollary",
            Claim::StGrowth => "st_growth",
            Claim::Rigidity => "rigidity",
            Claim::XEquiv => "x_equiv",
        }
    }

    /// Whether the instance set grows with `max_n`.
    pub fn uses_max_n(self) -> bool {
        self != Claim::Rigidity
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Claim {
    type Err = Error;

    /// Accepts the report ids and their dashed spellings.
    fn from_str(s: &str) -> Result<Claim> {
        let norm = s.replace('-', "_");
        Claim::ALL
            .into_iter()
            .find(|c| c.id() == norm)
            .ok_or_else(|| Error::UnknownName(s.to_string()))
    }
}

impl Serialize for Claim {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.id())
    }
}

/// One failed instance. `poset` is the hex canonical form; the enumerated
/// posets are their own canonical labelings, so `pins` and `subset` index
/// into the decoded poset directly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub poset: String,
    pub pins: Vec<usize>,
    pub subset: Vec<usize>,
    pub reason: String,
}

impl Violation {
    fn new(p: &Poset, pins: &[usize], subset: u64, reason: impl Into<String>) -> Violation {
        Violation {
            poset: encode(p),
            pins: pins.to_vec(),
            subset: Bits(subset).collect(),
            reason: reason.into(),
        }
    }

    /// The recorded poset.
    pub fn decode(&self) -> Option<Poset> {
        crate::enumeration::CanonicalForm::from_hex(&self.poset).map(|f| f.to_poset())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub claim: Claim,
    pub max_n: usize,
    pub instances_checked: u64,
    pub violations: Vec<Violation>,
    pub elapsed_ms: u64,
    pub version: String,
    /// Observations for the text rendering; not part of the JSON schema.
    #[serde(skip)]
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

fn encode(p: &Poset) -> String {
    canonical_form(p)
        .map(|f| f.to_hex())
        .unwrap_or_else(|_| relations_text(p))
}

fn relations_text(p: &Poset) -> String {
    let rels: Vec<String> = p
        .relations()
        .iter()
        .map(|(x, y)| format!("{x}<{y}"))
        .collect();
    format!("n={} {}", p.len(), rels.join(","))
}

#[derive(Default)]
struct Outcome {
    instances: u64,
    violations: Vec<Violation>,
    counters: BTreeMap<String, u64>,
    maxima: BTreeMap<usize, usize>,
}

impl Outcome {
    fn bump(&mut self, key: impl Into<String>) {
        *self.counters.entry(key.into()).or_default() += 1;
    }

    fn count(&self, key: &str) -> u64 {
        self.counters.get(key).copied().unwrap_or(0)
    }

    fn merge(&mut self, other: Outcome) {
        self.instances += other.instances;
        self.violations.extend(other.violations);
        for (k, v) in other.counters {
            *self.counters.entry(k).or_default() += v;
        }
        for (k, v) in other.maxima {
            let e = self.maxima.entry(k).or_default();
            *e = (*e).max(v);
        }
    }
}

struct RigidityOutcome {
    outcome: Outcome,
    violations_by_pair: Vec<bool>,
}

/// Worker pool plus the enumerated levels, shared across claims.
pub struct Engine {
    pool: rayon::ThreadPool,
    levels: Vec<Vec<Poset>>,
}

impl Engine {
    /// `jobs = 0` uses one worker per core.
    pub fn new(jobs: usize) -> Result<Engine> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::PreconditionViolated(e.to_string()))?;
        Ok(Engine {
            pool,
            levels: Vec::new(),
        })
    }

    fn check_bound(max_n: usize) -> Result<()> {
        if !(MIN_N..=MAX_N).contains(&max_n) {
            return Err(Error::SizeBound {
                got: max_n,
                bound: MAX_N,
            });
        }
        Ok(())
    }

    fn ensure_levels(&mut self, max_n: usize) -> Result<()> {
        if self.levels.len() < max_n {
            let pool = &self.pool;
            self.levels = pool.install(|| levels_with(max_n, Strategy::Cut, MAX_N))?;
        }
        Ok(())
    }

    /// Posets with `lo..=hi` elements, smallest first.
    fn posets(&self, lo: usize, hi: usize) -> impl Iterator<Item = &Poset> {
        self.levels[lo - 1..hi].iter().flatten()
    }

    fn sweep<F>(&self, lo: usize, hi: usize, f: F) -> Outcome
    where
        F: Fn(&Poset) -> Outcome + Sync,
    {
        let all: Vec<&Poset> = self.posets(lo, hi).collect();
        let parts: Vec<Outcome> = self.pool.install(|| all.par_iter().map(|p| f(p)).collect());
        parts.into_iter().fold(Outcome::default(), |mut acc, o| {
            acc.merge(o);
            acc
        })
    }

    pub fn run(&mut self, claim: Claim, max_n: usize) -> Result<VerificationReport> {
        let start = Instant::now();
        let (max_n, out, notes) = match claim {
            Claim::Rigidity => {
                let (out, notes) = self.rigidity();
                (RIGIDITY_X_MAX, out, notes)
            }
            _ => {
                Self::check_bound(max_n)?;
                self.ensure_levels(max_n)?;
                let (out, notes) = match claim {
                    Claim::TwoChainCovers => self.two_chain(max_n),
                    Claim::TwoAntichainCovers => self.two_antichain(max_n),
                    Claim::Corollary => self.corollary(max_n),
                    Claim::StGrowth => self.st_growth(max_n),
                    Claim::XEquiv => self.x_equiv(max_n),
                    Claim::Rigidity => unreachable!(),
                };
                (max_n, out, notes)
            }
        };
        Ok(VerificationReport {
            claim,
            max_n,
            instances_checked: out.instances,
            violations: out.violations,
            elapsed_ms: start.elapsed().as_millis() as u64,
            version: VERSION.to_string(),
            notes,
        })
    }

    /// Every claim in [`Claim::ALL`] order over one shared enumeration.
    pub fn run_all(&mut self, max_n: usize) -> Result<Vec<VerificationReport>> {
        Self::check_bound(max_n)?;
        Claim::ALL.iter().map(|&c| self.run(c, max_n)).collect()
    }

    fn two_chain(&self, max_n: usize) -> (Outcome, Vec<String>) {
        let out = self.sweep(MIN_N, max_n, |t| {
            let mut o = Outcome::default();
            let mut search = CoverSearch::new(t);
            if !search.indecomposable(t.ground_mask()) {
                return o;
            }
            for (a, b) in t.relations() {
                let seed = Subset::from_mask_unchecked(t.len(), 1 << a | 1 << b);
                let covers = search
                    .upper_covers(&seed)
                    .expect("2-chains are indecomposable");
                for h in covers.covers {
                    o.instances += 1;
                    let sub = PinnedTriple {
                        poset: t.clone(),
                        a,
                        b,
                    }
                    .restrict(&h)
                    .expect("cover contains the pins");
                    if let Some(id) = figure2_recognize(&sub) {
                        o.bump("figure2");
                        o.bump(format!("id {id}"));
                    } else if x_recognize(&sub).is_some() {
                        o.bump("x_member");
                    } else if figure2_recognize_unpinned(&sub.poset).is_some() {
                        o.bump("unpinned_only");
                    } else {
                        o.violations.push(Violation::new(
                            t,
                            &[a, b],
                            h.mask(),
                            format!("upper cover of size {} is not in the catalog", h.len()),
                        ));
                    }
                }
            }
            o
        });
        let mut notes = vec![format!(
            "identified: figure2 {}, x_member {}, unpinned only {}",
            out.count("figure2"),
            out.count("x_member"),
            out.count("unpinned_only"),
        )];
        notes.extend(
            out.counters
                .iter()
                .filter_map(|(k, v)| k.strip_prefix("id ").map(|id| format!("{id}: {v}"))),
        );
        (out, notes)
    }

    fn two_antichain(&self, max_n: usize) -> (Outcome, Vec<String>) {
        let mut out = self.sweep(MIN_N, max_n, |t| {
            let mut search = CoverSearch::new(t);
            if !search.indecomposable(t.ground_mask()) {
                return Outcome::default();
            }
            let mut o = Outcome::default();
            for a in 0..t.len() {
                for b in a + 1..t.len() {
                    if t.incomparable(a, b) {
                        check_antichain(&mut search, a, b, &mut o);
                    }
                }
            }
            o
        });
        let mut notes = vec![format!(
            "accepted: fence path {}, fence with d = 2 {} (pins interior {}), v-cover {}",
            out.count("fence_far"),
            out.count("fence_d2"),
            out.count("fence_d2_interior"),
            out.count("vcover"),
        )];
        let example = antichain_example();
        let mut search = CoverSearch::new(&example);
        let mut reg = Outcome::default();
        check_antichain(&mut search, 0, 3, &mut reg);
        let four_fence = Subset::from_mask_unchecked(5, 0b01111);
        let smallest = search
            .upper_covers(&Subset::from_mask_unchecked(5, 0b01001))
            .map(|r| r.smallest)
            .unwrap_or_default();
        if !smallest.contains(&four_fence) {
            reg.violations.push(Violation::new(
                &example,
                &[0, 3],
                four_fence.mask(),
                "regression: the 4-fence is not a smallest superset",
            ));
        }
        notes.push(format!(
            "regression a<f2>f3<b with l<a,b: smallest supersets {}",
            smallest
                .iter()
                .map(|s| s.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        ));
        out.merge(reg);
        (out, notes)
    }

    fn corollary(&self, max_n: usize) -> (Outcome, Vec<String>) {
        let out = self.sweep(2, max_n, |s| {
            let mut o = Outcome::default();
            let mut search = CoverSearch::new(s);
            for (a, b) in s.relations() {
                let k = s.longest_chain_between(a, b).expect("a < b");
                let seed = Subset::from_mask_unchecked(s.len(), 1 << a | 1 << b);
                let covers = search
                    .upper_covers(&seed)
                    .expect("2-chains are indecomposable");
                for u in covers.covers {
                    o.instances += 1;
                    let e = o.maxima.entry(k).or_default();
                    *e = (*e).max(u.len());
                    if u.len() > (2 * k).max(9) {
                        o.violations.push(Violation::new(
                            s,
                            &[a, b],
                            u.mask(),
                            format!("|U| = {} exceeds max(2 * {k}, 9)", u.len()),
                        ));
                    }
                }
            }
            o
        });
        let mut notes: Vec<String> = out
            .maxima
            .iter()
            .map(|(k, u)| format!("|K| = {k}: largest |U| = {u}"))
            .collect();
        for name in [Figure2Name::BPrime, Figure2Name::BDoublePrime] {
            let w = sharpness_witness(name);
            notes.push(format!(
                "{name} with pins a, b: |K| = {}, upper covers of sizes {:?}",
                w.k, w.cover_sizes
            ));
        }
        (out, notes)
    }

    fn st_growth(&self, max_n: usize) -> (Outcome, Vec<String>) {
        if max_n < 6 {
            return (Outcome::default(), Vec::new());
        }
        let out = self.sweep(6, max_n, |t| {
            let mut o = Outcome::default();
            let mut search = CoverSearch::new(t);
            let full = t.ground_mask();
            if !search.indecomposable(full) {
                return o;
            }
            let n = t.len();
            for m in 1..full {
                let k = m.count_ones() as usize;
                if k < 4 || k + 2 > n || !search.indecomposable(m) {
                    continue;
                }
                o.instances += 1;
                let p = Subset::from_mask_unchecked(n, m);
                if let Err(e) = search.st_gap2_witness(&p) {
                    o.violations.push(Violation::new(t, &[], m, e.to_string()));
                }
            }
            o
        });
        (out, Vec::new())
    }

    fn rigidity(&self) -> (Outcome, Vec<String>) {
        let classes = rigidity_classes();
        let n = classes.len();
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .collect();
        let hits: Vec<Option<Violation>> = self.pool.install(|| {
            pairs
                .par_iter()
                .map(|&(i, j)| {
                    let (s, l) = (&classes[i].1, &classes[j].1);
                    embeds_pinned(s, l).then(|| {
                        Violation::new(
                            &l.poset,
                            &[l.a, l.b],
                            0,
                            format!("{} embeds into {}", classes[i].0, classes[j].0),
                        )
                    })
                })
                .collect()
        });
        let out = RigidityOutcome {
            violations_by_pair: hits.iter().map(Option::is_some).collect(),
            outcome: Outcome {
                instances: pairs.len() as u64,
                violations: hits.into_iter().flatten().collect(),
                ..Outcome::default()
            },
        };
        let own_cover: Vec<bool> = self.pool.install(|| {
            classes
                .par_iter()
                .map(|(_, t)| only_full_superset(t).is_none())
                .collect()
        });
        let mut notes = vec![format!("{n} distinct pinned classes")];
        for (i, (title, _)) in classes.iter().enumerate() {
            if !own_cover[i] {
                notes.push(format!(
                    "{title}: the whole set is not the only cover of its pins"
                ));
            }
        }
        let among_own = pairs
            .iter()
            .zip(&out.violations_by_pair)
            .filter(|(&(i, j), hit)| **hit && own_cover[i] && own_cover[j])
            .count();
        notes.push(format!(
            "embeddings among the {} classes that are their own upper cover: {among_own}",
            own_cover.iter().filter(|&&b| b).count()
        ));
        (out.outcome, notes)
    }

    fn x_equiv(&self, max_n: usize) -> (Outcome, Vec<String>) {
        let hi = max_n.min(ENUMERATION_MAX_N);
        let generated = x_generate(RIGIDITY_X_MAX);
        let mut out = Outcome::default();
        let mut notes = Vec::new();
        for s in 4..=hi {
            let expected: BTreeSet<PinnedForm> = generated
                .iter()
                .filter(|e| e.triple.len() == s)
                .map(|e| pinned_form_of(&e.triple).expect("small"))
                .collect();
            let level = &self.levels[s - 1];
            let found: Vec<Vec<(PinnedForm, usize, usize, usize)>> = self.pool.install(|| {
                level
                    .par_iter()
                    .enumerate()
                    .map(|(idx, p)| {
                        p.relations()
                            .into_iter()
                            .filter(|&(a, b)| {
                                x_recognize(&PinnedTriple {
                                    poset: p.clone(),
                                    a,
                                    b,
                                })
                                .is_some()
                            })
                            .map(|(a, b)| {
                                (crate::enumeration::pinned_form(p, a, b).unwrap(), idx, a, b)
                            })
                            .collect()
                    })
                    .collect()
            });
            let mut accepted: BTreeMap<PinnedForm, (usize, usize, usize)> = BTreeMap::new();
            for (form, idx, a, b) in found.into_iter().flatten() {
                out.instances += 1;
                accepted.entry(form).or_insert((idx, a, b));
            }
            for (form, &(idx, a, b)) in &accepted {
                if !expected.contains(form) {
                    out.violations.push(Violation::new(
                        &level[idx],
                        &[a, b],
                        0,
                        "accepted by the recognizer but not generated",
                    ));
                }
            }
            for e in generated.iter().filter(|e| e.triple.len() == s) {
                if !accepted.contains_key(&pinned_form_of(&e.triple).unwrap()) {
                    out.violations.push(Violation::new(
                        &e.triple.poset,
                        &[e.triple.a, e.triple.b],
                        0,
                        format!("generated member {} not accepted", e.title()),
                    ));
                }
            }
            notes.push(format!("size {s}: {} pinned classes", accepted.len()));
        }
        let rigid: Vec<Outcome> = self.pool.install(|| {
            generated
                .par_iter()
                .map(|e| {
                    let mut o = Outcome {
                        instances: 1,
                        ..Outcome::default()
                    };
                    if let Some(v) = only_full_superset(&e.triple) {
                        o.violations.push(v);
                    }
                    o
                })
                .collect()
        });
        notes.push(format!(
            "rigidity of {} members up to size {RIGIDITY_X_MAX}",
            generated.len()
        ));
        for o in rigid {
            out.merge(o);
        }
        (out, notes)
    }
}

fn check_antichain(search: &mut CoverSearch<'_>, a: usize, b: usize, o: &mut Outcome) {
    let t = search.poset().clone();
    let d = t.fence_distance(a, b);
    let seed = Subset::from_mask_unchecked(t.len(), 1 << a | 1 << b);
    let smallest = match search.upper_covers(&seed) {
        Ok(r) => r.smallest,
        Err(e) => {
            o.violations
                .push(Violation::new(&t, &[a, b], 0, e.to_string()));
            return;
        }
    };
    if smallest.is_empty() {
        o.violations
            .push(Violation::new(&t, &[a, b], 0, "no indecomposable superset"));
    }
    for i in smallest {
        o.instances += 1;
        let sub = PinnedTriple {
            poset: t.clone(),
            a,
            b,
        }
        .restrict(&i)
        .expect("superset contains the pins");
        let verdict = match d {
            Some(d) if d > 2 => match fence_recognize(&sub) {
                Some(f) if f.elements == d + 1 => Ok("fence_far"),
                _ => Err(format!("d = {d} but not a fence with {} elements", d + 1)),
            },
            Some(2) => {
                if let Some((s, e)) = fence_endpoints(&sub.poset).filter(|_| sub.len() >= 4) {
                    if !((s, e) == (sub.a, sub.b) || (s, e) == (sub.b, sub.a)) {
                        o.bump("fence_d2_interior");
                    }
                    Ok("fence_d2")
                } else if v_cover_recognize(&sub).ok().flatten().is_some() {
                    Ok("vcover")
                } else {
                    Err("d = 2 but neither a fence nor a V-cover".to_string())
                }
            }
            _ => Err(format!("unexpected distance {d:?}")),
        };
        match verdict {
            Ok(k) => o.bump(k),
            Err(reason) => o
                .violations
                .push(Violation::new(&t, &[a, b], i.mask(), reason)),
        }
    }
}

/// `a < f2 > f3 < b` with an extra `l < a, b`, as `a = 0, f2 = 1, f3 = 2,
/// b = 3, l = 4`.
pub fn antichain_example() -> Poset {
    Poset::from_relations(5, &[(0, 1), (2, 1), (2, 3), (4, 0), (4, 3)]).unwrap()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SharpnessWitness {
    pub name: Figure2Name,
    pub k: usize,
    pub cover_sizes: Vec<usize>,
}

impl SharpnessWitness {
    /// The whole set is the unique upper cover of `{a, b}` and meets
    /// `max(2|K|, 9)` with equality.
    pub fn is_tight(&self) -> bool {
        self.cover_sizes == [(2 * self.k).max(9)]
    }
}

/// Upper covers of the pins inside a catalog diagram.
pub fn sharpness_witness(name: Figure2Name) -> SharpnessWitness {
    let t = figure2_make(name, false, false).triple;
    let seed = t.pins();
    let r = CoverSearch::new(&t.poset)
        .upper_covers(&seed)
        .expect("2-chains are indecomposable");
    SharpnessWitness {
        name,
        k: t.poset.longest_chain_between(t.a, t.b).unwrap(),
        cover_sizes: r.covers.iter().map(|c| c.len()).collect(),
    }
}

/// `None` if the full set is the only indecomposable subset properly
/// containing the pins.
fn only_full_superset(t: &PinnedTriple) -> Option<Violation> {
    let found = CoverSearch::new(&t.poset)
        .supersets(&t.pins(), t.len())
        .expect("valid pins");
    let full = Subset::full(t.len());
    (found != [full]).then(|| {
        let other = found
            .iter()
            .find(|s| **s != full)
            .map(|s| s.mask())
            .unwrap_or(0);
        Violation::new(
            &t.poset,
            &[t.a, t.b],
            other,
            "another indecomposable subset contains the pins",
        )
    })
}

/// One representative per pinned class among the Figure-2 variants and the
/// family members up to [`RIGIDITY_X_MAX`] elements.
pub fn rigidity_classes() -> Vec<(String, PinnedTriple)> {
    let mut entries: Vec<CatalogEntry> = Figure2Id::all().map(figure2_make_id).collect();
    entries.extend(x_generate(RIGIDITY_X_MAX));
    let mut classes: Vec<(String, PinnedTriple)> = Vec::new();
    for e in entries {
        if !classes.iter().any(|(_, t)| isomorphic_pinned(t, &e.triple)) {
            classes.push((e.title(), e.triple));
        }
    }
    classes
}

/// For V-covers with fence length `1..=max_len`, violations of "the whole
/// V-cover is the only indecomposable subset properly containing `{a, b}`".
pub fn v_cover_rigidity(max_len: usize) -> (u64, Vec<Violation>) {
    let mut violations = Vec::new();
    for m in 1..=max_len {
        let t = v_cover_make(m).expect("m >= 1").triple;
        violations.extend(only_full_superset(&t));
    }
    (max_len as u64, violations)
}

pub fn verify(claim: Claim, max_n: usize) -> Result<VerificationReport> {
    Engine::new(0)?.run(claim, max_n)
}

pub fn verify_2chfinal(max_n: usize) -> Result<VerificationReport> {
    verify(Claim::TwoChainCovers, max_n)
}

pub fn verify_2aclem(max_n: usize) -> Result<VerificationReport> {
    verify(Claim::TwoAntichainCovers, max_n)
}

pub fn verify_corollary(max_n: usize) -> Result<VerificationReport> {
    verify(Claim::Corollary, max_n)
}

pub fn verify_st_growth(max_n: usize) -> Result<VerificationReport> {
    verify(Claim::StGrowth, max_n)
}

pub fn verify_rigidity() -> Result<VerificationReport> {
    verify(Claim::Rigidity, MAX_N)
}

pub fn verify_x_equiv(max_n: usize) -> Result<VerificationReport> {
    verify(Claim::XEquiv, max_n)
}
