//! Classification tables: Scorza varieties by index `k`, and simple hermitian
//! Lie algebras by real rank and regularity. Everything here is data; the
//! dimension columns come from closed formulas and are cross-checked against
//! the Jacobian oracle in [`crate::strata`] by the test suites.

use serde::{Deserialize, Serialize};

use crate::error::{input, Error, Result};
use crate::strata::PSpaceModel;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScorzaEntry {
    pub label: String,
    pub k: usize,
    pub model: PSpaceModel,
    pub embedding: String,
    pub variety: String,
    pub regular: bool,
    pub dim_x: usize,
    pub dim_x_formula: String,
    pub ambient_m: usize,
    pub ambient_m_formula: String,
    pub delta: usize,
    pub k0: usize,
}

fn scorza_row(
    label: &str,
    k: usize,
    model: PSpaceModel,
    embedding: &str,
    variety: String,
    regular: bool,
    (dim_x, dim_x_formula): (usize, &str),
    (ambient_m, ambient_m_formula): (usize, &str),
    delta: usize,
) -> ScorzaEntry {
    ScorzaEntry {
        label: label.into(),
        k,
        model,
        embedding: embedding.into(),
        variety,
        regular,
        dim_x,
        dim_x_formula: dim_x_formula.into(),
        ambient_m,
        ambient_m_formula: ambient_m_formula.into(),
        delta,
        k0: dim_x / delta,
    }
}

/// The `k`-Scorza varieties: five infinite families, plus the exceptional
/// Severi variety when `k = 2`.
pub fn catalog_scorza(k: usize) -> Result<Vec<ScorzaEntry>> {
    if k < 2 {
        return input(format!("Scorza index k must be >= 2, got {k}"));
    }
    let mut out = vec![
        scorza_row(
            "1.1.k",
            k,
            PSpaceModel::Sym { r: k + 1 },
            "Veronese",
            format!("P^{k}"),
            true,
            (k, "k"),
            (k * (k + 3) / 2, "k(k+3)/2"),
            1,
        ),
        scorza_row(
            "1.2.k.r",
            k,
            PSpaceModel::Mat { q: k + 1, p: k + 1 },
            "Segre",
            format!("P^{k} x P^{k}"),
            true,
            (2 * k, "2k"),
            (k * (k + 2), "k(k+2)"),
            2,
        ),
        scorza_row(
            "1.2.k.n",
            k,
            PSpaceModel::Mat { q: k + 1, p: k + 2 },
            "Segre",
            format!("P^{k} x P^{}", k + 1),
            false,
            (2 * k + 1, "2k+1"),
            (k * k + 3 * k + 1, "k^2+3k+1"),
            2,
        ),
        scorza_row(
            "1.3.k.r",
            k,
            PSpaceModel::Skew { n: 2 * k + 2 },
            "Pluecker",
            format!("G(2,{})", 2 * k + 2),
            true,
            (4 * k, "4k"),
            (k * (2 * k + 3), "k(2k+3)"),
            4,
        ),
        scorza_row(
            "1.3.k.n",
            k,
            PSpaceModel::Skew { n: 2 * k + 3 },
            "Pluecker",
            format!("G(2,{})", 2 * k + 3),
            false,
            (4 * k + 2, "4k+2"),
            (2 * k * k + 5 * k + 2, "2k^2+5k+2"),
            4,
        ),
    ];
    if k == 2 {
        out.push(scorza_row(
            "1.4",
            2,
            PSpaceModel::Exc27,
            "exceptional",
            "E6/P1 (Cayley plane)".into(),
            true,
            (16, "16"),
            (26, "26"),
            8,
        ));
    }
    Ok(out)
}

/// Critical Severi relation `m = (3/2) n + 2`, defined for regular rows
/// with `k = 2`.
pub fn severi_check(entry: &ScorzaEntry) -> Result<bool> {
    if !entry.regular || entry.k != 2 {
        return Err(Error::Contract(format!(
            "Severi relation applies to regular k = 2 rows, got {} with k = {}",
            entry.label, entry.k
        )));
    }
    Ok(2 * entry.ambient_m == 3 * entry.dim_x + 4)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HermitianAlgebraEntry {
    pub family: String,
    /// Range of the free parameter for infinite families.
    pub parameter: Option<String>,
    pub rank: usize,
    pub regular: bool,
    pub p_model: Option<PSpaceModel>,
    pub p_model_name: String,
    pub kc: String,
    pub dim_p: Option<usize>,
    pub dim_p_formula: String,
    pub isomorphisms: Vec<String>,
}

struct Row<'a> {
    family: String,
    parameter: Option<String>,
    regular: bool,
    p_model: Option<PSpaceModel>,
    p_model_name: String,
    kc: String,
    dim_p: Option<usize>,
    dim_p_formula: String,
    isomorphisms: &'a [&'a str],
}

impl Row<'_> {
    fn build(self, rank: usize) -> HermitianAlgebraEntry {
        HermitianAlgebraEntry {
            family: self.family,
            parameter: self.parameter,
            rank,
            regular: self.regular,
            p_model: self.p_model,
            p_model_name: self.p_model_name,
            kc: self.kc,
            dim_p: self.dim_p,
            dim_p_formula: self.dim_p_formula,
            isomorphisms: self.isomorphisms.iter().map(|s| s.to_string()).collect(),
        }
    }
}

fn sp(r: usize, iso: &'static [&'static str]) -> Row<'static> {
    Row {
        family: format!("sp({r},R)"),
        parameter: None,
        regular: true,
        p_model: Some(PSpaceModel::Sym { r }),
        p_model_name: format!("Sym({r})"),
        kc: format!("GL({r},C) on S^2 C^{r}"),
        dim_p: Some(r * (r + 1) / 2),
        dim_p_formula: "r(r+1)/2".into(),
        isomorphisms: iso,
    }
}

fn su_rr(r: usize) -> Row<'static> {
    Row {
        family: format!("su({r},{r})"),
        parameter: None,
        regular: true,
        p_model: Some(PSpaceModel::Mat { q: r, p: r }),
        p_model_name: format!("Mat({r},{r})"),
        kc: format!("S(GL({r},C) x GL({r},C)) on M_{{{r},{r}}}(C)"),
        dim_p: Some(r * r),
        dim_p_formula: "r^2".into(),
        isomorphisms: &[],
    }
}

/// `so*(2n)` with p-model `Skew(n)`.
fn so_star(n: usize, regular: bool, iso: &'static [&'static str]) -> Row<'static> {
    Row {
        family: format!("so*({})", 2 * n),
        parameter: None,
        regular,
        p_model: Some(PSpaceModel::Skew { n }),
        p_model_name: format!("Skew({n})"),
        kc: format!("GL({n},C) on Lambda^2 C^{n}"),
        dim_p: Some(n * (n - 1) / 2),
        dim_p_formula: "n(n-1)/2".into(),
        isomorphisms: iso,
    }
}

fn su_pr(r: usize) -> Row<'static> {
    Row {
        family: format!("su(p,{r})"),
        parameter: Some(format!("p > {r}")),
        regular: false,
        p_model: None,
        p_model_name: format!("Mat({r},p)"),
        kc: format!("S(GL({r},C) x GL(p,C)) on M_{{{r},p}}(C)"),
        dim_p: None,
        dim_p_formula: if r == 1 { "p".into() } else { format!("{r}p") },
        isomorphisms: &[],
    }
}

/// The simple hermitian Lie algebras of real rank `r`, regular ones first.
pub fn list_hermitian(r: usize, regular_only: bool) -> Result<Vec<HermitianAlgebraEntry>> {
    if r == 0 {
        return input("real rank must be >= 1");
    }
    let mut rows: Vec<Row<'static>> = match r {
        1 => vec![sp(1, &["su(1,1)", "so(2,1)"]), so_star(2, true, &[])],
        2 => vec![Row {
            family: "so(p,2)".into(),
            parameter: Some("p >= 3".into()),
            regular: true,
            p_model: None,
            p_model_name: "quadric cone in C^p".into(),
            kc: "SO(p,C) x C^* on C^p".into(),
            dim_p: None,
            dim_p_formula: "p".into(),
            isomorphisms: &["so(3,2) = sp(2,R)", "so(4,2) = su(2,2)", "so(6,2) = so*(8)"],
        }],
        3 => vec![
            sp(3, &[]),
            su_rr(3),
            so_star(6, true, &[]),
            Row {
                family: "e7(-25)".into(),
                parameter: None,
                regular: true,
                p_model: Some(PSpaceModel::Exc27),
                p_model_name: "Exc27".into(),
                kc: "E6(C) x C^* on H_3(O_C)".into(),
                dim_p: Some(27),
                dim_p_formula: "27".into(),
                isomorphisms: &[],
            },
        ],
        _ => vec![sp(r, &[]), su_rr(r), so_star(2 * r, true, &[])],
    };
    if !regular_only {
        match r {
            1 => rows.extend([su_pr(1), so_star(3, false, &["so*(6) = su(3,1)"])]),
            2 => rows.extend([
                so_star(5, false, &[]),
                Row {
                    family: "e6(-14)".into(),
                    parameter: None,
                    regular: false,
                    p_model: None,
                    p_model_name: "half-spin C^16".into(),
                    kc: "Spin(10,C) x C^* on C^16".into(),
                    dim_p: Some(16),
                    dim_p_formula: "16".into(),
                    isomorphisms: &[],
                },
                su_pr(2),
            ]),
            _ => rows.extend([su_pr(r), so_star(2 * r + 1, false, &[])]),
        }
    }
    Ok(rows.into_iter().map(|row| row.build(r)).collect())
}

/// Compact JSON plus trailing newline; the byte format of the golden files.
pub fn to_json_line<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("catalog data serializes");
    s.push('\n');
    s
}

pub fn scorza_json(k: usize) -> Result<String> {
    Ok(to_json_line(&catalog_scorza(k)?))
}

pub fn hermitian_json(r: usize, regular_only: bool) -> Result<String> {
    Ok(to_json_line(&list_hermitian(r, regular_only)?))
}

pub const GOLDEN_K: std::ops::RangeInclusive<usize> = 2..=6;
pub const GOLDEN_R: std::ops::RangeInclusive<usize> = 1..=6;

/// Frozen catalog outputs embedded at build time.
pub fn golden_scorza(k: usize) -> Option<&'static str> {
    Some(match k {
        2 => include_str!("../data/catalog/scorza_k2.json"),
        3 => include_str!("../data/catalog/scorza_k3.json"),
        4 => include_str!("../data/catalog/scorza_k4.json"),
        5 => include_str!("../data/catalog/scorza_k5.json"),
        6 => include_str!("../data/catalog/scorza_k6.json"),
        _ => return None,
    })
}

pub fn golden_hermitian(r: usize) -> Option<&'static str> {
    Some(match r {
        1 => include_str!("../data/catalog/hermitian_r1.json"),
        2 => include_str!("../data/catalog/hermitian_r2.json"),
        3 => include_str!("../data/catalog/hermitian_r3.json"),
        4 => include_str!("../data/catalog/hermitian_r4.json"),
        5 => include_str!("../data/catalog/hermitian_r5.json"),
        6 => include_str!("../data/catalog/hermitian_r6.json"),
        _ => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pairs(k: usize, regular: bool) -> Vec<(usize, usize)> {
        catalog_scorza(k).unwrap().into_iter().filter(|e| e.regular == regular).map(|e| (e.dim_x, e.ambient_m)).collect()
    }

    #[test]
    fn severi_rows() {
        assert_eq!(pairs(2, true), vec![(2, 5), (4, 8), (8, 14), (16, 26)]);
        assert_eq!(pairs(2, false), vec![(5, 11), (10, 20)]);
        for e in catalog_scorza(2).unwrap().iter().filter(|e| e.regular) {
            assert!(severi_check(e).unwrap(), "{}", e.label);
        }
    }

    #[test]
    fn k3_rows() {
        let c = catalog_scorza(3).unwrap();
        let n = c.iter().find(|e| e.label == "1.2.k.n").unwrap();
        assert_eq!((n.dim_x, n.ambient_m), (7, 19));
        let r = c.iter().find(|e| e.label == "1.3.k.r").unwrap();
        assert_eq!(r.ambient_m, 27);
        assert_eq!(c.len(), 5);
    }

    #[test]
    fn severi_check_contract() {
        let mut e = catalog_scorza(2).unwrap()[1].clone();
        e.ambient_m = 9;
        assert!(!severi_check(&e).unwrap());
        let n = catalog_scorza(2).unwrap()[2].clone();
        assert!(matches!(severi_check(&n), Err(Error::Contract(_))));
        let k3 = catalog_scorza(3).unwrap()[0].clone();
        assert!(severi_check(&k3).is_err());
        assert!(catalog_scorza(1).is_err());
    }

    #[test]
    fn hermitian_lists() {
        let names = |r, reg| list_hermitian(r, reg).unwrap().into_iter().map(|e| e.family).collect::<Vec<_>>();
        assert_eq!(names(3, true), ["sp(3,R)", "su(3,3)", "so*(12)", "e7(-25)"]);
        assert_eq!(names(5, true), ["sp(5,R)", "su(5,5)", "so*(20)"]);
        assert_eq!(names(2, true), ["so(p,2)"]);
        assert_eq!(names(4, false), ["sp(4,R)", "su(4,4)", "so*(16)", "su(p,4)", "so*(18)"]);
        assert_eq!(names(2, false)[1..], ["so*(10)", "e6(-14)", "su(p,2)"]);
        assert!(list_hermitian(0, true).is_err());
    }

    #[test]
    fn dim_p_matches_model() {
        for r in GOLDEN_R {
            for e in list_hermitian(r, false).unwrap() {
                if let (Some(m), Some(d)) = (e.p_model, e.dim_p) {
                    assert_eq!(m.ambient_dim(), d, "{}", e.family);
                    assert_eq!(m.max_rank(), r, "{}", e.family);
                    assert_eq!(m.is_regular(), e.regular, "{}", e.family);
                }
            }
        }
    }
}
