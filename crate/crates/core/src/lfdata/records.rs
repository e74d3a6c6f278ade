//! Local field records in JSON-lines form and the tower sums built from them.

use std::collections::{BTreeSet, HashMap};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::perm::{c123_check, dihedral_octic_model};
use super::sqclass::SquareClass;
use crate::error::{MassError, Result};
use crate::exact::{LaurentPoly, Rational};

/// Transitive group label of `D_4` acting regularly on 8 letters.
pub const DIHEDRAL_OCTIC_LABEL: &str = "8T4";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubfieldRef {
    pub label: String,
    /// Number of subfields of the record isomorphic to `label`.
    pub count: u32,
}

/// One extension of the base field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LocalFieldRecord {
    pub label: String,
    pub base: String,
    pub n: u32,
    pub e: u32,
    pub f: u32,
    /// Discriminant exponent.
    pub c: u32,
    /// `#Aut(L/K)`.
    pub aut: u32,
    pub galois_label: String,
    /// Discriminant root field.
    pub drf: String,
    #[serde(default)]
    pub subfields: Vec<SubfieldRef>,
}

impl LocalFieldRecord {
    fn validate(&self) -> std::result::Result<SquareClass, String> {
        if self.base != "Q2" {
            return Err(format!("unsupported base field {:?}", self.base));
        }
        if self.e == 0 || self.f == 0 || self.e * self.f != self.n {
            return Err(format!(
                "e*f = {}*{} does not equal n = {}",
                self.e, self.f, self.n
            ));
        }
        if self.c + 1 < self.e {
            return Err(format!("discriminant exponent {} below e - 1", self.c));
        }
        if self.aut == 0 || self.n % self.aut != 0 {
            return Err(format!("aut = {} does not divide n = {}", self.aut, self.n));
        }
        if self.subfields.iter().any(|s| s.count == 0) {
            return Err("subfield multiplicity must be positive".into());
        }
        self.drf.parse::<SquareClass>().map_err(|e| e.to_string())
    }
}

/// Parse JSON lines; blank lines are skipped and errors carry 1-based line
/// numbers.
pub fn parse_records(text: &str) -> Result<Vec<LocalFieldRecord>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let perr = |msg: String| MassError::Parse { line: i + 1, msg };
        let rec: LocalFieldRecord = serde_json::from_str(line).map_err(|e| perr(e.to_string()))?;
        rec.validate().map_err(perr)?;
        out.push(rec);
    }
    Ok(out)
}

/// Records indexed by label.
#[derive(Debug, Clone, Default)]
pub struct LocalFieldTable {
    records: Vec<LocalFieldRecord>,
    classes: Vec<SquareClass>,
    by_label: HashMap<String, usize>,
}

impl LocalFieldTable {
    pub fn new(records: Vec<LocalFieldRecord>) -> Result<Self> {
        let mut t = Self::default();
        for (i, r) in records.into_iter().enumerate() {
            let class = r
                .validate()
                .map_err(|msg| MassError::Parse { line: i + 1, msg })?;
            if t.by_label
                .insert(r.label.clone(), t.records.len())
                .is_some()
            {
                return Err(MassError::domain(format!("duplicate label {:?}", r.label)));
            }
            t.records.push(r);
            t.classes.push(class);
        }
        Ok(t)
    }

    /// Load every `*.jsonl` file of a directory.
    pub fn load_dir(dir: &Path) -> Result<Self> {
        let io = |e: std::io::Error, p: &Path| MassError::Io {
            path: p.display().to_string(),
            msg: e.to_string(),
        };
        let mut paths: Vec<_> = std::fs::read_dir(dir)
            .map_err(|e| io(e, dir))?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "jsonl"))
            .collect();
        paths.sort();
        let mut records = Vec::new();
        for p in paths {
            let text = std::fs::read_to_string(&p).map_err(|e| io(e, &p))?;
            records.extend(parse_records(&text).map_err(|e| match e {
                MassError::Parse { line, msg } => MassError::Parse {
                    line,
                    msg: format!("{}: {msg}", p.display()),
                },
                other => other,
            })?);
        }
        Self::new(records)
    }

    pub fn records(&self) -> &[LocalFieldRecord] {
        &self.records
    }

    pub fn get(&self, label: &str) -> Option<&LocalFieldRecord> {
        self.by_label.get(label).map(|&i| &self.records[i])
    }

    pub fn degree(&self, n: u32) -> impl Iterator<Item = &LocalFieldRecord> {
        self.records.iter().filter(move |r| r.n == n)
    }

    pub fn degrees(&self) -> BTreeSet<u32> {
        self.records.iter().map(|r| r.n).collect()
    }

    fn class_of(&self, label: &str) -> SquareClass {
        self.classes[self.by_label[label]]
    }
}

/// The `x^n` coefficient of a tower log series, split into towers whose top
/// is a field and split towers `L ⊕ L`.
#[derive(Debug, Clone, PartialEq)]
pub struct TowerLogTerms {
    pub fields: LaurentPoly,
    pub split: LaurentPoly,
}

impl TowerLogTerms {
    pub fn total(&self) -> LaurentPoly {
        &self.fields + &self.split
    }
}

/// Sum `t^(c(M) - c(L)) / #Aut(M/L/K)` over towers `M ⊃ L ⊃ Q_2` with
/// `[L:Q_2] = n`, `M` quadratic over `L` with discriminant root field `target`.
///
/// `M` acts on its `count` subfields isomorphic to `L` transitively, so the
/// towers with top `M` and bottom `≅ L` contribute `count / aut(M)`. Split
/// towers contribute `t^c(L) / (2 aut(L))` to the trivial class.
pub fn tower_log_terms(
    table: &LocalFieldTable,
    n: u32,
    target: SquareClass,
) -> Result<TowerLogTerms> {
    if !(1..=4).contains(&n) {
        return Err(MassError::domain(format!("tower degree {n} outside 1..=4")));
    }
    let mut fields = LaurentPoly::zero();
    for m in table.degree(2 * n) {
        if table.class_of(&m.label) != target {
            continue;
        }
        let mut seen = BTreeSet::new();
        for s in &m.subfields {
            let l = table
                .get(&s.label)
                .ok_or_else(|| MassError::UnresolvedLabel(s.label.clone()))?;
            if l.n != n || !seen.insert(&s.label) {
                continue;
            }
            if m.c < l.c {
                return Err(MassError::domain(format!(
                    "{} has smaller discriminant than its subfield {}",
                    m.label, l.label
                )));
            }
            if m.galois_label == DIHEDRAL_OCTIC_LABEL && l.aut == 2 {
                check_dihedral_multiplicity(m, s.count)?;
            }
            fields.add_term(
                i64::from(m.c - l.c),
                Rational::new(s.count.into(), m.aut.into()),
            );
        }
    }
    let mut split = LaurentPoly::zero();
    if target == SquareClass::TRIVIAL {
        for l in table.degree(n) {
            split.add_term(i64::from(l.c), Rational::new(1.into(), (2 * l.aut).into()));
        }
    }
    Ok(TowerLogTerms { fields, split })
}

/// A Galois `D_4` octic has two conjugate copies of each non-Galois quartic
/// subfield; its towers over them carry `#N_G(H) = 4` automorphisms.
fn check_dihedral_multiplicity(m: &LocalFieldRecord, count: u32) -> Result<()> {
    let (g, h) = dihedral_octic_model();
    let rows = c123_check(&g, &h, 8, 8)?;
    let ok = m.aut == 8
        && rows.iter().all(|r| {
            r.unique_tower()
                && !r.aut_equal()
                && r.c1 == count as usize
                && r.normalizer_order as u32 * count == m.aut
        });
    if ok {
        Ok(())
    } else {
        Err(MassError::domain(format!(
            "{}: dihedral octic with subfield multiplicity {count} and aut {} disagrees with the permutation model",
            m.label, m.aut
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn rec(
        label: &str,
        n: u32,
        e: u32,
        c: u32,
        aut: u32,
        gal: &str,
        drf: &str,
        subs: &[(&str, u32)],
    ) -> String {
        serde_json::to_string(&LocalFieldRecord {
            label: label.into(),
            base: "Q2".into(),
            n,
            e,
            f: n / e,
            c,
            aut,
            galois_label: gal.into(),
            drf: drf.into(),
            subfields: subs
                .iter()
                .map(|(l, c)| SubfieldRef {
                    label: l.to_string(),
                    count: *c,
                })
                .collect(),
        })
        .unwrap()
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        assert!(parse_records("").unwrap().is_empty());
        let good = rec("2.1.0.1", 1, 1, 0, 1, "1T1", "Q2", &[]);
        let bad_ef = good.replace("\"f\":1", "\"f\":2");
        match parse_records(&format!("{good}\n\n{bad_ef}\n")) {
            Err(MassError::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        let bad_drf = good.replace("\"drf\":\"Q2\"", "\"drf\":\"Q3\"");
        assert!(matches!(
            parse_records(&bad_drf),
            Err(MassError::Parse { line: 1, .. })
        ));
        let bad_c = rec("x", 2, 2, 0, 2, "2T1", "Q2(sqrt(-1))", &[]);
        assert!(parse_records(&bad_c).is_err());
        assert!(parse_records("{\"label\": 1}").is_err());
    }

    #[test]
    fn dihedral_octic_weight() {
        let lines = [
            rec("Q2", 1, 1, 0, 1, "1T1", "Q2", &[]),
            rec("L", 4, 4, 8, 2, "4T3", "Q2(sqrt(-1))", &[]),
            rec("M", 8, 8, 22, 8, "8T4", "Q2", &[("L", 2), ("Q2", 1)]),
        ];
        let t = LocalFieldTable::new(parse_records(&lines.join("\n")).unwrap()).unwrap();
        let terms = tower_log_terms(&t, 4, SquareClass::TRIVIAL).unwrap();
        assert_eq!(terms.fields, LaurentPoly::monomial(rat(1, 4), 14));

        let wrong = rec("M", 8, 8, 22, 8, "8T4", "Q2", &[("L", 1)]);
        let t = LocalFieldTable::new(parse_records(&[lines[1].clone(), wrong].join("\n")).unwrap())
            .unwrap();
        assert!(tower_log_terms(&t, 4, SquareClass::TRIVIAL).is_err());
    }

    #[test]
    fn unresolved_subfield() {
        let m = rec("M", 2, 2, 2, 2, "2T1", "Q2(sqrt(-1))", &[("missing", 1)]);
        let t = LocalFieldTable::new(parse_records(&m).unwrap()).unwrap();
        assert_eq!(
            tower_log_terms(&t, 1, SquareClass::MINUS_ONE),
            Err(MassError::UnresolvedLabel("missing".into()))
        );
    }
}
