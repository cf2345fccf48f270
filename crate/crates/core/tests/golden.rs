//! Catalog output is frozen in `data/catalog`. Regenerate with
//! `UPDATE_GOLDEN=1 cargo test -p scorza-core --test golden`.

use std::path::PathBuf;

use scorza_core::catalog::{golden_hermitian, golden_scorza, hermitian_json, scorza_json, GOLDEN_K, GOLDEN_R};

fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/catalog")
}

fn check(name: &str, fresh: String, frozen: &str) {
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(data_dir().join(name), &fresh).unwrap();
        return;
    }
    assert_eq!(fresh, frozen, "{name} drifted; rerun with UPDATE_GOLDEN=1 if intended");
}

#[test]
fn scorza_tables_match_golden() {
    for k in GOLDEN_K {
        check(&format!("scorza_k{k}.json"), scorza_json(k).unwrap(), golden_scorza(k).unwrap());
    }
}

#[test]
fn hermitian_lists_match_golden() {
    for r in GOLDEN_R {
        check(&format!("hermitian_r{r}.json"), hermitian_json(r, false).unwrap(), golden_hermitian(r).unwrap());
    }
}
