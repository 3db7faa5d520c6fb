//! The shipped catalog parses, covers the table of components and passes.

use std::collections::BTreeSet;

use artinian::catalog::{embedded_fixtures, run_all, run_fixtures, CheckStatus, Fixture, TableCell};

fn fixtures() -> Vec<Fixture> {
    embedded_fixtures().into_iter().map(|r| r.unwrap_or_else(|(name, e)| panic!("{name}: {e}"))).collect()
}

#[test]
fn every_fixture_file_is_embedded() {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures");
    let on_disk: BTreeSet<String> = std::fs::read_dir(dir)
        .unwrap()
        .filter_map(|e| e.ok().map(|e| e.file_name().to_string_lossy().into_owned()))
        .filter(|n| n.ends_with(".json"))
        .collect();
    let ids: BTreeSet<String> = fixtures().iter().map(|f| format!("{}.json", f.id)).collect();
    assert_eq!(on_disk, ids);
}

#[test]
fn every_table_cell_is_covered() {
    let fx = fixtures();
    let report = run_fixtures(&fx.iter().filter(|f| f.cell.is_some()).cloned().collect::<Vec<_>>());
    for n in [4, 5, 6] {
        for d in [8, 9, 10] {
            let cell = TableCell { n, d };
            let hit = report.rows.iter().any(|row| {
                row.cell == Some(cell)
                    && row.checks.iter().any(|c| {
                        c.check == "colength"
                            && c.params.is_null()
                            && c.status == CheckStatus::Pass
                            && c.computed == serde_json::json!(d)
                    })
            });
            assert!(hit, "no passing fixture of colength {d} for n = {n}");
        }
    }
}

#[test]
fn catalog_passes_and_is_deterministic() {
    let first = run_all();
    println!("{}", first.to_text());
    assert!(first.all_pass, "{}", first.to_text());
    let second = run_all();
    assert_eq!(first.without_timings().to_json(), second.without_timings().to_json());
    assert_eq!(first.to_text(), second.to_text());
}
