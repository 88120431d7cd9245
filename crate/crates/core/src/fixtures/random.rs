use std::collections::BTreeMap;

use chrono::{Datelike, Duration, NaiveDate};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::FixtureError;
use crate::model::{
    auth, kind, Application, ApplnId, AuthorityCode, Citation, CountryCode, FamilyId, FamilyMembership,
    IpcAssignment, KindCode, PatstatDataset, Person, PersonApplnLink, PersonId, PriorityClaim, Publication, PublnId,
};

/// IPC symbols drawn for applications. Mixed case and padding on purpose.
const IPC_POOL: [&str; 8] = [
    "F03D   1/00",
    "F03D   9/00",
    "f03d   7/02",
    "F03D  11/04",
    "F03B  13/26",
    "H02K   7/18",
    "B63H   1/36",
    "H02J   3/38",
];

const COUNTRIES: [&str; 10] = ["DE", "US", "JP", "FR", "GB", "CN", "CH", "DK", "ES", "KR"];

/// Knobs of the random generator. Shares are probabilities in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorParams {
    pub seed: u64,
    pub n_applications: usize,
    pub n_persons: usize,
    /// Success probability of the geometric family-size distribution
    /// (mean size `1 / p`).
    pub family_p: f64,
    /// Expected number of patent citations made by each publication.
    pub citation_density: f64,
    /// Share of applications filed as PCT (kind W).
    pub pct_share: f64,
    /// Share of dates and person countries left missing.
    pub missing_share: f64,
    /// Share of inventor/applicant positions that skip a sequence number.
    pub sequence_gap_share: f64,
    /// Offices applications are filed at. `WO` is only used for publications.
    pub authorities: Vec<AuthorityCode>,
}

impl Default for GeneratorParams {
    fn default() -> Self {
        GeneratorParams {
            seed: 7,
            n_applications: 2_000,
            n_persons: 3_000,
            family_p: 0.35,
            citation_density: 1.2,
            pct_share: 0.12,
            missing_share: 0.04,
            sequence_gap_share: 0.08,
            authorities: ["DE", "EP", "US", "CN", "JP", "GB", "DK", "FR", "KR"].into_iter().map(auth).collect(),
        }
    }
}

impl GeneratorParams {
    pub fn with_seed(seed: u64) -> Self {
        GeneratorParams { seed, ..Self::default() }
    }

    pub fn validate(&self) -> Result<(), FixtureError> {
        let shares = [
            ("pct_share", self.pct_share),
            ("missing_share", self.missing_share),
            ("sequence_gap_share", self.sequence_gap_share),
        ];
        for (name, v) in shares {
            if !(0.0..=1.0).contains(&v) {
                return Err(FixtureError::InvalidParams(format!("{name} must be in [0, 1], got {v}")));
            }
        }
        if !(self.family_p > 0.0 && self.family_p <= 1.0) {
            return Err(FixtureError::InvalidParams(format!("family_p must be in (0, 1], got {}", self.family_p)));
        }
        if !(self.citation_density.is_finite() && self.citation_density >= 0.0) {
            return Err(FixtureError::InvalidParams(format!(
                "citation_density must be finite and >= 0, got {}",
                self.citation_density
            )));
        }
        if !self.authorities.iter().any(|a| *a != AuthorityCode::WO) {
            return Err(FixtureError::InvalidParams("authority alphabet needs an office other than WO".into()));
        }
        Ok(())
    }
}

const MAX_FAMILY: usize = 40;

struct Gen<'a> {
    rng: ChaCha8Rng,
    params: &'a GeneratorParams,
    offices: Vec<AuthorityCode>,
    ds: PatstatDataset,
}

impl Gen<'_> {
    fn chance(&mut self, p: f64) -> bool {
        p > 0.0 && self.rng.gen_bool(p.min(1.0))
    }

    fn office(&mut self) -> AuthorityCode {
        *self.offices.choose(&mut self.rng).expect("validated non-empty")
    }

    fn maybe_date(&mut self, date: NaiveDate) -> Option<NaiveDate> {
        let missing = self.params.missing_share;
        (!self.chance(missing)).then_some(date)
    }

    fn family_size(&mut self, remaining: usize) -> usize {
        let p = self.params.family_p;
        let mut size = 1;
        while size < MAX_FAMILY && !self.chance(p) {
            size += 1;
        }
        size.min(remaining)
    }

    fn applications(&mut self) {
        let n = self.params.n_applications;
        let mut next_id = 0u64;
        let mut family_id = 0u64;
        while self.ds.applications.len() < n {
            let size = self.family_size(n - self.ds.applications.len());
            family_id += 1;
            let in_family = !self.chance(0.05);
            let wo_only = self.chance(0.03);
            let first_year = self.rng.gen_range(2003..=2007);
            let first_day = self.rng.gen_range(0..365);
            let first_date = NaiveDate::from_ymd_opt(first_year, 1, 1).expect("valid") + Duration::days(first_day);
            let mut members: Vec<(ApplnId, KindCode)> = Vec::with_capacity(size);
            for i in 0..size {
                next_id += self.rng.gen_range(1..=3);
                let id = ApplnId(next_id);
                let is_pct = wo_only || self.chance(self.params.pct_share);
                let appln_kind = if is_pct {
                    kind("W")
                } else if self.chance(0.05) {
                    kind("U")
                } else {
                    kind("A")
                };
                let filed = if i == 0 { first_date } else { first_date + Duration::days(self.rng.gen_range(0..400)) };
                let appln_auth = self.office();
                let internat = members
                    .iter()
                    .find(|(_, k)| *k == kind("W"))
                    .filter(|_| !is_pct && self.rng.gen_bool(0.6))
                    .map_or(ApplnId(0), |(pct, _)| *pct);
                let appln_filing_date = self.maybe_date(filed);
                self.ds.applications.push(Application {
                    appln_id: id,
                    appln_auth,
                    appln_nr: format!("{}{:07}", filed.year(), self.rng.gen_range(0..10_000_000u32)),
                    appln_kind,
                    appln_filing_date,
                    internat_appln_id: internat,
                });
                self.ipc(id);
                self.publications(id, appln_auth, appln_kind, filed, wo_only);
                if in_family {
                    self.ds.families.push(FamilyMembership { appln_id: id, inpadoc_family_id: FamilyId(family_id) });
                }
                if i > 0 {
                    let first = members[0].0;
                    self.ds.priority_claims.push(PriorityClaim {
                        appln_id: id,
                        prior_appln_id: first,
                        prior_appln_seq_nr: Some(1),
                    });
                    if i >= 2 && self.chance(0.25) {
                        let second = members[1].0;
                        let seq = (!self.chance(0.1)).then_some(2);
                        self.ds.priority_claims.push(PriorityClaim {
                            appln_id: id,
                            prior_appln_id: second,
                            prior_appln_seq_nr: seq,
                        });
                    }
                }
                members.push((id, appln_kind));
            }
        }
    }

    fn ipc(&mut self, id: ApplnId) {
        if self.chance(0.08) {
            return;
        }
        let n = self.rng.gen_range(1..=3);
        for symbol in IPC_POOL.choose_multiple(&mut self.rng, n) {
            self.ds.ipc.push(IpcAssignment { appln_id: id, ipc_class_symbol: symbol.to_string() });
        }
    }

    fn publications(&mut self, id: ApplnId, office: AuthorityCode, appln_kind: KindCode, filed: NaiveDate, wo_only: bool) {
        let count = match self.rng.gen_range(0..10) {
            0 => 0,
            1..=5 => 1,
            6..=8 => 2,
            _ => 3,
        };
        let mut granted = false;
        for j in 0..count {
            let (publn_auth, publn_kind) = if appln_kind == kind("W") && (j == 0 || wo_only) {
                (AuthorityCode::WO, kind("A1"))
            } else if office == auth("GB") && self.chance(0.2) {
                (office, kind("D0"))
            } else if j > 0 && self.chance(0.5) {
                (office, kind("B1"))
            } else {
                (office, kind("A"))
            };
            let first_grant = publn_kind == kind("B1") && !granted;
            granted |= first_grant;
            let published = filed + Duration::days(self.rng.gen_range(150..1500));
            let publn_date = self.maybe_date(published);
            let digits = if self.chance(0.05) { 5 } else { 7 };
            let publn_nr = format!("{:0width$}", self.rng.gen_range(0..10u64.pow(digits)), width = digits as usize);
            let pat_publn_id = PublnId(self.ds.publications.len() as u64 + 1);
            self.ds.publications.push(Publication {
                pat_publn_id,
                appln_id: id,
                publn_auth,
                publn_nr,
                publn_kind,
                publn_date,
                publn_first_grant: first_grant,
            });
        }
    }

    fn persons(&mut self) {
        for i in 0..self.params.n_persons {
            let person_ctry_code: Option<CountryCode> = if self.chance(self.params.missing_share) {
                None
            } else {
                Some(auth(COUNTRIES.choose(&mut self.rng).expect("non-empty")))
            };
            self.ds.persons.push(Person { person_id: PersonId(i as u64 + 1), person_ctry_code });
        }
    }

    /// Sequence numbers 1, 2, ... with occasional skipped positions.
    fn sequence(&mut self, n: usize) -> Vec<u32> {
        let mut out = Vec::with_capacity(n);
        let mut seq = 0u32;
        for _ in 0..n {
            seq += if self.chance(self.params.sequence_gap_share) { 2 } else { 1 };
            out.push(seq);
        }
        out
    }

    fn links(&mut self) {
        let n_persons = self.params.n_persons;
        if n_persons == 0 {
            return;
        }
        let ids: Vec<ApplnId> = self.ds.applications.iter().map(|a| a.appln_id).collect();
        for id in ids {
            let n_inv = match self.rng.gen_range(0..10) {
                0 => 0,
                1..=4 => 1,
                5..=7 => 2,
                _ => self.rng.gen_range(3..=5),
            };
            let n_app = self.rng.gen_range(0..=2);
            let mut roles: BTreeMap<u64, (u32, u32)> = BTreeMap::new();
            // distinct persons within a role, so sequence numbers are never overwritten
            let n_inv = n_inv.min(n_persons);
            let inventors = rand::seq::index::sample(&mut self.rng, n_persons, n_inv).into_vec();
            for (p, seq) in inventors.into_iter().zip(self.sequence(n_inv)) {
                roles.entry(p as u64 + 1).or_default().0 = seq;
            }
            let n_app = n_app.min(n_persons);
            let applicants = rand::seq::index::sample(&mut self.rng, n_persons, n_app).into_vec();
            for (p, seq) in applicants.into_iter().zip(self.sequence(n_app)) {
                roles.entry(p as u64 + 1).or_default().1 = seq;
            }
            for (p, (invt_seq_nr, applt_seq_nr)) in roles {
                self.ds.person_links.push(PersonApplnLink {
                    person_id: PersonId(p),
                    appln_id: id,
                    invt_seq_nr,
                    applt_seq_nr,
                });
            }
        }
    }

    fn citations(&mut self) {
        let n = self.ds.publications.len() as u64;
        if n == 0 {
            return;
        }
        // geometric count with the requested mean
        let more = self.params.citation_density / (1.0 + self.params.citation_density);
        for citing in 1..=n {
            while self.chance(more) {
                let cited = if self.chance(0.04) { 0 } else { self.rng.gen_range(1..=n) };
                self.ds.citations.push(Citation { pat_publn_id: PublnId(citing), cited_pat_publn_id: PublnId(cited) });
            }
        }
    }
}

/// Seeded random dataset (ChaCha8 seeded from `params.seed` via
/// `SeedableRng::seed_from_u64`). Every reference resolves, so the result
/// validates clean.
pub fn generate_random_dataset(params: &GeneratorParams) -> Result<PatstatDataset, FixtureError> {
    params.validate()?;
    let offices: Vec<AuthorityCode> = params.authorities.iter().copied().filter(|a| *a != AuthorityCode::WO).collect();
    let mut g = Gen { rng: ChaCha8Rng::seed_from_u64(params.seed), params, offices, ds: PatstatDataset::default() };
    g.persons();
    g.applications();
    g.links();
    g.citations();
    Ok(g.ds)
}
