//! Integrity report over a loaded dataset. Validation never fails; it counts.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::hash::Hash;

use super::{ApplnId, PatstatDataset, PersonId, PublnId, Table};

const DEFAULT_SAMPLES: usize = 5;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TableReport {
    pub rows: u64,
    pub rejected_rows: u64,
    pub duplicate_keys: u64,
    pub dangling_refs: u64,
    /// Informational: dates stored as missing (sentinel or empty).
    pub missing_dates: u64,
    pub duplicate_samples: Vec<String>,
    pub dangling_samples: Vec<String>,
}

impl TableReport {
    pub fn violations(&self) -> u64 {
        self.rejected_rows + self.duplicate_keys + self.dangling_refs
    }

    fn duplicate(&mut self, key: String, cap: usize) {
        self.duplicate_keys += 1;
        if self.duplicate_samples.len() < cap {
            self.duplicate_samples.push(key);
        }
    }

    fn dangling(&mut self, key: String, cap: usize) {
        self.dangling_refs += 1;
        if self.dangling_samples.len() < cap {
            self.dangling_samples.push(key);
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub tables: BTreeMap<Table, TableReport>,
}

impl ValidationReport {
    pub fn table(&self, table: Table) -> &TableReport {
        &self.tables[&table]
    }

    pub fn total_violations(&self) -> u64 {
        self.tables.values().map(TableReport::violations).sum()
    }

    pub fn is_clean(&self) -> bool {
        self.total_violations() == 0
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{:<20} {:>10} {:>9} {:>10} {:>9} {:>13}",
            "table", "rows", "rejected", "duplicates", "dangling", "missing_dates"
        )?;
        for (table, r) in &self.tables {
            writeln!(
                f,
                "{:<20} {:>10} {:>9} {:>10} {:>9} {:>13}",
                table.name(),
                r.rows,
                r.rejected_rows,
                r.duplicate_keys,
                r.dangling_refs,
                r.missing_dates
            )?;
            if !r.duplicate_samples.is_empty() {
                writeln!(f, "  duplicate keys: {}", r.duplicate_samples.join(", "))?;
            }
            if !r.dangling_samples.is_empty() {
                writeln!(f, "  dangling references: {}", r.dangling_samples.join(", "))?;
            }
        }
        write!(f, "total violations: {}", self.total_violations())
    }
}

pub fn validate_dataset(dataset: &PatstatDataset) -> ValidationReport {
    validate_dataset_with_samples(dataset, DEFAULT_SAMPLES)
}

/// Counts duplicate keys, dangling references, and missing dates for every
/// table, keeping up to `samples` offending keys per class.
pub fn validate_dataset_with_samples(dataset: &PatstatDataset, samples: usize) -> ValidationReport {
    let mut tables: BTreeMap<Table, TableReport> = Table::ALL
        .into_iter()
        .map(|t| {
            let report = TableReport {
                rows: dataset.row_count(t) as u64,
                rejected_rows: dataset
                    .stats
                    .tables
                    .get(&t)
                    .map_or(0, |s| s.rejected.len() as u64),
                ..TableReport::default()
            };
            (t, report)
        })
        .collect();

    let appln_ids: HashSet<ApplnId> = dataset.applications.iter().map(|a| a.appln_id).collect();
    let publn_ids: HashSet<PublnId> = dataset.publications.iter().map(|p| p.pat_publn_id).collect();
    let person_ids: HashSet<PersonId> = dataset.persons.iter().map(|p| p.person_id).collect();

    {
        let r = tables.get_mut(&Table::Appln).unwrap();
        for key in duplicates(dataset.applications.iter().map(|a| a.appln_id)) {
            r.duplicate(key.to_string(), samples);
        }
        for a in &dataset.applications {
            if a.internat_appln_id.0 != 0 && !appln_ids.contains(&a.internat_appln_id) {
                r.dangling(format!("internat_appln_id {} (appln {})", a.internat_appln_id, a.appln_id), samples);
            }
            if a.appln_filing_date.is_none() {
                r.missing_dates += 1;
            }
        }
    }
    {
        let r = tables.get_mut(&Table::PatPubln).unwrap();
        for key in duplicates(dataset.publications.iter().map(|p| p.pat_publn_id)) {
            r.duplicate(key.to_string(), samples);
        }
        for p in &dataset.publications {
            if !appln_ids.contains(&p.appln_id) {
                r.dangling(format!("appln_id {} (publn {})", p.appln_id, p.pat_publn_id), samples);
            }
            if p.publn_date.is_none() {
                r.missing_dates += 1;
            }
        }
    }
    {
        let r = tables.get_mut(&Table::Person).unwrap();
        for key in duplicates(dataset.persons.iter().map(|p| p.person_id)) {
            r.duplicate(key.to_string(), samples);
        }
    }
    {
        let r = tables.get_mut(&Table::PersAppln).unwrap();
        for (person, appln) in duplicates(dataset.person_links.iter().map(|l| (l.person_id, l.appln_id))) {
            r.duplicate(format!("({person}, {appln})"), samples);
        }
        for l in &dataset.person_links {
            if !person_ids.contains(&l.person_id) {
                r.dangling(format!("person_id {}", l.person_id), samples);
            }
            if !appln_ids.contains(&l.appln_id) {
                r.dangling(format!("appln_id {}", l.appln_id), samples);
            }
        }
    }
    {
        let r = tables.get_mut(&Table::ApplnIpc).unwrap();
        for row in &dataset.ipc {
            if !appln_ids.contains(&row.appln_id) {
                r.dangling(format!("appln_id {}", row.appln_id), samples);
            }
        }
    }
    {
        let r = tables.get_mut(&Table::ApplnPrior).unwrap();
        for (a, p) in duplicates(dataset.priority_claims.iter().map(|c| (c.appln_id, c.prior_appln_id))) {
            r.duplicate(format!("({a}, {p})"), samples);
        }
        for c in &dataset.priority_claims {
            if !appln_ids.contains(&c.appln_id) {
                r.dangling(format!("appln_id {}", c.appln_id), samples);
            }
            if !appln_ids.contains(&c.prior_appln_id) {
                r.dangling(format!("prior_appln_id {}", c.prior_appln_id), samples);
            }
        }
    }
    {
        let r = tables.get_mut(&Table::InpadocFam).unwrap();
        for key in duplicates(dataset.families.iter().map(|m| m.appln_id)) {
            r.duplicate(key.to_string(), samples);
        }
        for m in &dataset.families {
            if !appln_ids.contains(&m.appln_id) {
                r.dangling(format!("appln_id {}", m.appln_id), samples);
            }
        }
    }
    {
        let r = tables.get_mut(&Table::Citation).unwrap();
        for c in &dataset.citations {
            if !publn_ids.contains(&c.pat_publn_id) {
                r.dangling(format!("pat_publn_id {}", c.pat_publn_id), samples);
            }
            if c.cited_pat_publn_id.0 != 0 && !publn_ids.contains(&c.cited_pat_publn_id) {
                r.dangling(format!("cited_pat_publn_id {}", c.cited_pat_publn_id), samples);
            }
        }
    }

    ValidationReport { tables }
}

/// Keys seen more than once, each reported once per extra occurrence, in
/// input order.
fn duplicates<K: Hash + Eq + Copy>(keys: impl Iterator<Item = K>) -> Vec<K> {
    let mut seen = HashSet::new();
    keys.filter(|k| !seen.insert(*k)).collect()
}
