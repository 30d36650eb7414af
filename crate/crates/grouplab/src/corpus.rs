//! Built-in group corpus with recomputed structural tags.

use crate::aut::automorphism_group;
use crate::error::Result;
use crate::group::parse::parse_group;
use crate::group::table::GroupTable;
use std::collections::BTreeSet;

/// Largest order for which the complete-group tag is computed.
const COMPLETE_TAG_CAP: usize = 128;

pub struct CorpusEntry {
    pub name: String,
    pub table: GroupTable,
    pub tags: BTreeSet<String>,
}

/// Structural tags derived from the table; never hand-entered.
pub fn compute_tags(table: &GroupTable) -> BTreeSet<String> {
    let mut tags = BTreeSet::new();
    if table.is_abelian() {
        tags.insert("abelian".to_string());
    }
    if table.is_solvable() {
        tags.insert("solvable".to_string());
    }
    if table.is_simple() {
        tags.insert("simple".to_string());
    }
    if let Some(d) = table.perm_degree() {
        tags.insert(format!("permutation-degree:{d}"));
    }
    if table.order() <= COMPLETE_TAG_CAP && table.center().order() == 1 {
        if let Ok(aut) = automorphism_group(table) {
            if aut.order() == table.order() {
                tags.insert("complete".to_string());
            }
        }
    }
    tags
}

fn corpus_specs(max_order: usize) -> Vec<String> {
    let mut specs = Vec::new();
    for n in 1..=max_order {
        specs.push(format!("C{n}"));
    }
    let mut m = 6;
    while m <= max_order {
        specs.push(format!("D{m}"));
        m += 2;
    }
    for s in ["V4", "Q8", "SL(2,3)"] {
        specs.push(s.to_string());
    }
    for n in 3..=6 {
        specs.push(format!("S{n}"));
    }
    for n in 4..=6 {
        specs.push(format!("A{n}"));
    }
    for q in [4, 5, 7, 8, 9, 11] {
        specs.push(format!("PSL(2,{q})"));
    }
    for s in ["S3xA5", "A4xC2", "A5xA5"] {
        specs.push(s.to_string());
    }
    specs
}

/// Deterministic corpus of all built-in groups of order at most max_order,
/// sorted by order and then by name.
pub fn builtin_corpus(max_order: usize) -> Result<Vec<CorpusEntry>> {
    let mut out = Vec::new();
    for spec in corpus_specs(max_order) {
        let table = parse_group(&spec)?;
        if table.order() > max_order {
            continue;
        }
        let tags = compute_tags(&table);
        out.push(CorpusEntry {
            name: spec,
            table,
            tags,
        });
    }
    out.sort_by(|a, b| {
        (a.table.order(), a.name.as_str()).cmp(&(b.table.order(), b.name.as_str()))
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_corpus_contents() {
        let corpus = builtin_corpus(12).unwrap();
        let names: BTreeSet<&str> = corpus.iter().map(|e| e.name.as_str()).collect();
        for want in [
            "C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "C9", "C10", "C11", "C12", "S3",
            "A4", "D6", "D8", "D10", "D12", "Q8", "V4",
        ] {
            assert!(names.contains(want), "missing {want}");
        }
        assert!(!names.contains("A5"));
        for e in &corpus {
            assert!(e.table.order() <= 12);
        }
    }

    #[test]
    fn a5_included_at_60() {
        let corpus = builtin_corpus(60).unwrap();
        let a5 = corpus.iter().find(|e| e.name == "A5").unwrap();
        assert!(a5.tags.contains("simple"));
        assert!(!a5.tags.contains("solvable"));
        let psl24 = corpus.iter().find(|e| e.name == "PSL(2,4)").unwrap();
        assert_eq!(psl24.table.order(), 60);
    }

    #[test]
    fn tags_match_recomputation() {
        for e in builtin_corpus(64).unwrap() {
            assert_eq!(e.tags, compute_tags(&e.table), "tags differ for {}", e.name);
        }
    }

    #[test]
    fn corpus_is_deterministic_and_sorted() {
        let a = builtin_corpus(30).unwrap();
        let b = builtin_corpus(30).unwrap();
        let names_a: Vec<&String> = a.iter().map(|e| &e.name).collect();
        let names_b: Vec<&String> = b.iter().map(|e| &e.name).collect();
        assert_eq!(names_a, names_b);
        for w in a.windows(2) {
            assert!(
                (w[0].table.order(), &w[0].name) <= (w[1].table.order(), &w[1].name),
                "corpus not sorted"
            );
        }
    }

    #[test]
    fn s3_is_complete() {
        let corpus = builtin_corpus(6).unwrap();
        let s3 = corpus.iter().find(|e| e.name == "S3").unwrap();
        assert!(s3.tags.contains("complete"));
        let c6 = corpus.iter().find(|e| e.name == "C6").unwrap();
        assert!(!c6.tags.contains("complete"));
        assert!(c6.tags.contains("abelian"));
    }
}
