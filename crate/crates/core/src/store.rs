//! Read-only hash and sort indexes over a [`PatstatDataset`].
//!
//! Every index answers exactly what a full scan of the underlying table
//! would; the store is immutable after [`build_store`].

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::hash::Hash;
use std::ops::Range;

use chrono::NaiveDate;
use thiserror::Error;

use crate::model::{
    Application, ApplnId, FamilyId, PatstatDataset, Person, PersonApplnLink, PersonId, Publication,
    PublnId,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KeyKind {
    ApplnId,
    PatPublnId,
    PersonId,
    /// An application listed in two INPADOC families.
    FamilyMember,
}

impl fmt::Display for KeyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            KeyKind::ApplnId => "appln_id",
            KeyKind::PatPublnId => "pat_publn_id",
            KeyKind::PersonId => "person_id",
            KeyKind::FamilyMember => "tls219_inpadoc_fam.appln_id",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StoreError {
    #[error("duplicate {kind} {id}")]
    DuplicateKey { kind: KeyKind, id: u64 },
}

/// Values grouped by key in one flat buffer; each key owns a contiguous
/// slice, in input order.
#[derive(Debug, Clone)]
struct Grouped<K, V> {
    values: Vec<V>,
    ranges: HashMap<K, Range<usize>>,
}

impl<K: Hash + Eq + Ord + Copy, V> Grouped<K, V> {
    fn build(pairs: impl Iterator<Item = (K, V)>) -> Self {
        let mut pairs: Vec<(K, V)> = pairs.collect();
        pairs.sort_by_key(|(k, _)| *k);
        let mut ranges = HashMap::new();
        let mut values = Vec::with_capacity(pairs.len());
        let mut start = 0;
        let mut current: Option<K> = None;
        for (i, (k, v)) in pairs.into_iter().enumerate() {
            if current != Some(k) {
                if let Some(prev) = current {
                    ranges.insert(prev, start..i);
                }
                current = Some(k);
                start = i;
            }
            values.push(v);
        }
        if let Some(prev) = current {
            ranges.insert(prev, start..values.len());
        }
        Grouped { values, ranges }
    }

    fn get(&self, key: &K) -> &[V] {
        self.ranges.get(key).map_or(&[], |r| &self.values[r.clone()])
    }

    fn keys(&self) -> impl Iterator<Item = &K> {
        self.ranges.keys()
    }
}

fn unique_index<K: Hash + Eq + Copy>(
    keys: impl Iterator<Item = K>,
    kind: KeyKind,
    raw: impl Fn(K) -> u64,
) -> Result<HashMap<K, usize>, StoreError> {
    let mut map = HashMap::new();
    for (row, key) in keys.enumerate() {
        if map.insert(key, row).is_some() {
            return Err(StoreError::DuplicateKey { kind, id: raw(key) });
        }
    }
    Ok(map)
}

/// Uppercased, trimmed form of a user-supplied IPC prefix.
pub fn normalize_ipc_prefix(prefix: &str) -> String {
    prefix.trim().to_uppercase()
}

/// The dataset plus the join indexes the indicators need.
#[derive(Debug, Clone)]
pub struct IndexedStore {
    dataset: PatstatDataset,
    app_by_id: HashMap<ApplnId, usize>,
    apps_by_internat: Grouped<ApplnId, usize>,
    publns_by_appln: Grouped<ApplnId, usize>,
    publn_by_id: HashMap<PublnId, usize>,
    /// (compare key, appln_id), sorted, so a prefix is a contiguous run.
    ipc_keys: Vec<(String, ApplnId)>,
    claimants: HashSet<ApplnId>,
    family_by_appln: HashMap<ApplnId, FamilyId>,
    family_members: Grouped<FamilyId, ApplnId>,
    links_by_appln: Grouped<ApplnId, usize>,
    person_by_id: HashMap<PersonId, usize>,
    citing_by_cited: Grouped<PublnId, PublnId>,
}

/// Indexes `dataset`. Fails when a primary key repeats or an application
/// sits in two INPADOC families.
pub fn build_store(dataset: PatstatDataset) -> Result<IndexedStore, StoreError> {
    let ds = &dataset;
    let app_by_id = unique_index(ds.applications.iter().map(|a| a.appln_id), KeyKind::ApplnId, |k| k.0)?;
    let publn_by_id = unique_index(ds.publications.iter().map(|p| p.pat_publn_id), KeyKind::PatPublnId, |k| k.0)?;
    let person_by_id = unique_index(ds.persons.iter().map(|p| p.person_id), KeyKind::PersonId, |k| k.0)?;

    let mut family_by_appln = HashMap::with_capacity(ds.families.len());
    for m in &ds.families {
        if family_by_appln.insert(m.appln_id, m.inpadoc_family_id).is_some() {
            return Err(StoreError::DuplicateKey { kind: KeyKind::FamilyMember, id: m.appln_id.0 });
        }
    }
    let family_members = Grouped::build(ds.families.iter().map(|m| (m.inpadoc_family_id, m.appln_id)));

    let apps_by_internat = Grouped::build(
        ds.applications
            .iter()
            .enumerate()
            .filter(|(_, a)| a.internat_appln_id.0 != 0)
            .map(|(i, a)| (a.internat_appln_id, i)),
    );
    let publns_by_appln = Grouped::build(ds.publications.iter().enumerate().map(|(i, p)| (p.appln_id, i)));
    let links_by_appln = Grouped::build(ds.person_links.iter().enumerate().map(|(i, l)| (l.appln_id, i)));
    let citing_by_cited = Grouped::build(
        ds.citations
            .iter()
            .filter(|c| c.cited_pat_publn_id.0 != 0)
            .map(|c| (c.cited_pat_publn_id, c.pat_publn_id)),
    );

    let mut ipc_keys: Vec<(String, ApplnId)> = ds.ipc.iter().map(|r| (r.compare_key(), r.appln_id)).collect();
    ipc_keys.sort_unstable();

    let claimants = ds.priority_claims.iter().map(|c| c.appln_id).collect();

    Ok(IndexedStore {
        app_by_id,
        apps_by_internat,
        publns_by_appln,
        publn_by_id,
        ipc_keys,
        claimants,
        family_by_appln,
        family_members,
        links_by_appln,
        person_by_id,
        citing_by_cited,
        dataset,
    })
}

impl IndexedStore {
    pub fn dataset(&self) -> &PatstatDataset {
        &self.dataset
    }

    pub fn into_dataset(self) -> PatstatDataset {
        self.dataset
    }

    pub fn application(&self, id: ApplnId) -> Option<&Application> {
        self.app_by_id.get(&id).map(|&i| &self.dataset.applications[i])
    }

    /// Applications whose `internat_appln_id` is `pct_id`, in table order.
    pub fn national_phase_children(&self, pct_id: ApplnId) -> impl Iterator<Item = &Application> + '_ {
        self.apps_by_internat.get(&pct_id).iter().map(move |&i| &self.dataset.applications[i])
    }

    pub fn publications_of(&self, id: ApplnId) -> impl Iterator<Item = &Publication> + '_ {
        self.publns_by_appln.get(&id).iter().map(move |&i| &self.dataset.publications[i])
    }

    pub fn publication(&self, id: PublnId) -> Option<&Publication> {
        self.publn_by_id.get(&id).map(|&i| &self.dataset.publications[i])
    }

    /// `appln_id` of every IPC row whose compare key starts with `prefix`
    /// (normalized first). Ids repeat when an application has several
    /// matching symbols.
    pub fn ipc_prefix_matches(&self, prefix: &str) -> impl Iterator<Item = ApplnId> + '_ {
        let prefix = normalize_ipc_prefix(prefix);
        let start = self.ipc_keys.partition_point(|(k, _)| k.as_str() < prefix.as_str());
        self.ipc_keys[start..]
            .iter()
            .take_while(move |(k, _)| k.starts_with(prefix.as_str()))
            .map(|(_, id)| *id)
    }

    /// True when the application claims at least one priority.
    pub fn claims_priority(&self, id: ApplnId) -> bool {
        self.claimants.contains(&id)
    }

    pub fn family_of(&self, id: ApplnId) -> Option<FamilyId> {
        self.family_by_appln.get(&id).copied()
    }

    pub fn family_members(&self, family: FamilyId) -> &[ApplnId] {
        self.family_members.get(&family)
    }

    pub fn family_ids(&self) -> impl Iterator<Item = FamilyId> + '_ {
        self.family_members.keys().copied()
    }

    pub fn person_links(&self, id: ApplnId) -> impl Iterator<Item = &PersonApplnLink> + '_ {
        self.links_by_appln.get(&id).iter().map(move |&i| &self.dataset.person_links[i])
    }

    pub fn person(&self, id: PersonId) -> Option<&Person> {
        self.person_by_id.get(&id).map(|&i| &self.dataset.persons[i])
    }

    /// Citing `pat_publn_id`s of every citation row pointing at `cited`.
    /// Rows with `cited_pat_publn_id == 0` are not indexed.
    pub fn citing_publications(&self, cited: PublnId) -> &[PublnId] {
        self.citing_by_cited.get(&cited)
    }

    pub fn earliest_publication_date(&self, id: ApplnId) -> Option<NaiveDate> {
        earliest_publication_date(self, id)
    }
}

/// Earliest known publication date of an application over all authorities;
/// `None` when no publication carries a real date.
pub fn earliest_publication_date(store: &IndexedStore, id: ApplnId) -> Option<NaiveDate> {
    store.publications_of(id).filter_map(|p| p.publn_date).min()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{auth, kind, Citation, FamilyMembership, IpcAssignment};

    fn ymd(y: i32, m: u32, d: u32) -> Option<NaiveDate> {
        NaiveDate::from_ymd_opt(y, m, d)
    }

    fn app(id: u64) -> Application {
        Application {
            appln_id: ApplnId(id),
            appln_auth: auth("DE"),
            appln_nr: id.to_string(),
            appln_kind: kind("A"),
            appln_filing_date: ymd(2005, 1, 1),
            internat_appln_id: ApplnId(0),
        }
    }

    fn publn(id: u64, appln: u64, date: Option<NaiveDate>) -> Publication {
        Publication {
            pat_publn_id: PublnId(id),
            appln_id: ApplnId(appln),
            publn_auth: auth("DE"),
            publn_nr: id.to_string(),
            publn_kind: kind("A1"),
            publn_date: date,
            publn_first_grant: false,
        }
    }

    #[test]
    fn empty_store_answers_empty() {
        let store = build_store(PatstatDataset::default()).unwrap();
        assert!(store.application(ApplnId(1)).is_none());
        assert_eq!(store.publications_of(ApplnId(1)).count(), 0);
        assert_eq!(store.ipc_prefix_matches("F03D").count(), 0);
        assert!(!store.claims_priority(ApplnId(1)));
        assert!(store.family_of(ApplnId(1)).is_none());
        assert!(store.family_members(FamilyId(1)).is_empty());
        assert!(store.citing_publications(PublnId(1)).is_empty());
        assert_eq!(store.earliest_publication_date(ApplnId(1)), None);
    }

    #[test]
    fn duplicate_keys_fail_the_build() {
        let ds = PatstatDataset { applications: vec![app(1), app(1)], ..Default::default() };
        assert_eq!(build_store(ds).unwrap_err(), StoreError::DuplicateKey { kind: KeyKind::ApplnId, id: 1 });

        let ds = PatstatDataset { publications: vec![publn(5, 1, None), publn(5, 2, None)], ..Default::default() };
        assert_eq!(build_store(ds).unwrap_err(), StoreError::DuplicateKey { kind: KeyKind::PatPublnId, id: 5 });

        let ds = PatstatDataset {
            families: vec![
                FamilyMembership { appln_id: ApplnId(1), inpadoc_family_id: FamilyId(1) },
                FamilyMembership { appln_id: ApplnId(1), inpadoc_family_id: FamilyId(2) },
            ],
            ..Default::default()
        };
        assert!(matches!(build_store(ds), Err(StoreError::DuplicateKey { kind: KeyKind::FamilyMember, .. })));
    }

    #[test]
    fn earliest_date_examples() {
        let ds = PatstatDataset {
            applications: vec![app(1), app(2), app(3)],
            publications: vec![
                publn(10, 1, ymd(2006, 1, 1)),
                publn(11, 1, ymd(2005, 6, 1)),
                publn(12, 1, None),
                publn(13, 2, None),
            ],
            ..Default::default()
        };
        let store = build_store(ds).unwrap();
        assert_eq!(store.earliest_publication_date(ApplnId(1)), ymd(2005, 6, 1));
        assert_eq!(store.earliest_publication_date(ApplnId(2)), None);
        assert_eq!(store.earliest_publication_date(ApplnId(3)), None);
    }

    #[test]
    fn ipc_prefix_is_case_and_padding_insensitive() {
        let ipc = |id, s: &str| IpcAssignment { appln_id: ApplnId(id), ipc_class_symbol: s.into() };
        let ds = PatstatDataset {
            ipc: vec![ipc(1, "F03D   1/00"), ipc(2, "f03d 7/02"), ipc(3, "F03B  13/26"), ipc(1, "F03D   5/02")],
            ..Default::default()
        };
        let store = build_store(ds).unwrap();
        let mut hits: Vec<u64> = store.ipc_prefix_matches("f03d ").map(|a| a.0).collect();
        hits.sort();
        assert_eq!(hits, vec![1, 1, 2]);
        assert_eq!(store.ipc_prefix_matches("F03").count(), 4);
        assert_eq!(store.ipc_prefix_matches("ZZZZ").count(), 0);
    }

    #[test]
    fn npl_citations_are_not_indexed() {
        let ds = PatstatDataset {
            citations: vec![
                Citation { pat_publn_id: PublnId(1), cited_pat_publn_id: PublnId(0) },
                Citation { pat_publn_id: PublnId(2), cited_pat_publn_id: PublnId(9) },
                Citation { pat_publn_id: PublnId(3), cited_pat_publn_id: PublnId(9) },
            ],
            ..Default::default()
        };
        let store = build_store(ds).unwrap();
        assert!(store.citing_publications(PublnId(0)).is_empty());
        assert_eq!(store.citing_publications(PublnId(9)), &[PublnId(2), PublnId(3)]);
    }
}
