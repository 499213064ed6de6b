use serde::Serialize;

use crate::bounds::{
    asymptotics, ball_lower, general_lower, hypercone_root, hypercone_upper, kn_bounds, l1_bounds,
    monomial_domain_radius, refined_cone_upper, round_down, round_up, HYPERCONE_ROOT_CEILING,
};
use crate::{MultiIndex, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Json,
    Csv,
    Markdown,
}

impl std::str::FromStr for TableFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "json" => Ok(TableFormat::Json),
            "csv" => Ok(TableFormat::Csv),
            "md" => Ok(TableFormat::Markdown),
            other => Err(format!("unknown format `{other}` (expected json|csv|md)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableRow {
    pub id: String,
    pub description: String,
    pub value: f64,
    /// Six-decimal rendering, rounded away from the bounded quantity.
    pub display: String,
    /// Published figure this row reproduces, if any.
    pub published: Option<String>,
    /// Outcome of the comparison against the published claim.
    pub check: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstantTable {
    pub rows: Vec<TableRow>,
}

impl ConstantTable {
    pub fn all_checks_pass(&self) -> bool {
        self.rows.iter().all(|r| r.check != Some(false))
    }

    pub fn render(&self, format: TableFormat) -> String {
        match format {
            TableFormat::Json => crate::json::to_string(self),
            TableFormat::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(["id", "description", "value", "display", "published", "check"])
                    .expect("in-memory write");
                for r in &self.rows {
                    w.write_record([
                        r.id.as_str(),
                        r.description.as_str(),
                        &format!("{:.16e}", r.value),
                        r.display.as_str(),
                        r.published.as_deref().unwrap_or(""),
                        check_label(r.check),
                    ])
                    .expect("in-memory write");
                }
                String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
            }
            TableFormat::Markdown => {
                let mut out = String::from("| id | description | value | published | check |\n|---|---|---|---|---|\n");
                for r in &self.rows {
                    out.push_str(&format!(
                        "| {} | {} | {} | {} | {} |\n",
                        r.id,
                        r.description,
                        r.display,
                        r.published.as_deref().unwrap_or(""),
                        check_label(r.check)
                    ));
                }
                out
            }
        }
    }
}

fn check_label(check: Option<bool>) -> &'static str {
    match check {
        Some(true) => "pass",
        Some(false) => "FAIL",
        None => "",
    }
}

struct Rows(Vec<TableRow>);

impl Rows {
    fn push(
        &mut self,
        id: impl Into<String>,
        description: impl Into<String>,
        value: f64,
        display: String,
        published: Option<&str>,
        check: Option<bool>,
    ) {
        self.0.push(TableRow {
            id: id.into(),
            description: description.into(),
            value,
            display,
            published: published.map(str::to_owned),
            check,
        });
    }
}

fn round6(v: f64) -> f64 {
    (v * 1e6).round() / 1e6
}

/// Every reproducible constant, with one-sided six-decimal renderings and a
/// pass/fail comparison wherever a published figure exists.
pub fn build_constant_table(n_max: usize) -> Result<ConstantTable> {
    let mut rows = Rows(Vec::new());

    let classical = general_lower(1)?;
    rows.push(
        "classical_radius",
        "one-variable Bohr radius",
        classical.value,
        "1/3".into(),
        Some("1/3"),
        Some(classical.value == 1.0 / 3.0),
    );
    for n in 1..=n_max.max(1) {
        let b = general_lower(n)?;
        let (published, check) = if n == 2 {
            (Some("0.183502"), Some((0.183502..=0.183504).contains(&b.value)))
        } else {
            (None, None)
        };
        rows.push(
            format!("general_lower_n{n}"),
            format!("1 - (2/3)^(1/{n})"),
            b.value,
            b.display(6),
            published,
            check,
        );
    }

    let root = hypercone_root()?;
    let root_ok = round6(root.lo) == 0.446662 && round6(root.hi) == 0.446662 && root.hi < HYPERCONE_ROOT_CEILING;
    rows.push(
        "hypercone_root_lo",
        "root of sum x^k/k^k = 1/2, certified lower end",
        root.lo,
        round_down(root.lo, 6),
        Some("0.446662"),
        Some(root_ok),
    );
    rows.push(
        "hypercone_root_hi",
        "root of sum x^k/k^k = 1/2, certified upper end",
        root.hi,
        round_up(root.hi, 6),
        Some("0.446663"),
        Some(root.hi < HYPERCONE_ROOT_CEILING),
    );
    for (n, published) in [(1usize, "0.446663"), (2, "0.223332")] {
        let b = hypercone_upper(n)?;
        rows.push(
            format!("hypercone_upper_n{n}"),
            format!("B_{n}(hypercone) upper bound"),
            b.value,
            b.display(6),
            Some(published),
            Some(b.value <= HYPERCONE_ROOT_CEILING / n as f64 + 1e-15 && b.display(6).as_str() <= published),
        );
    }

    let (l_lo, l_hi) = l1_bounds()?;
    rows.push(
        "l1_lower",
        "L_n(hypercone) lower bound, any n",
        l_lo.value,
        l_lo.display(6),
        Some("0.238843"),
        Some(l_lo.value > 0.238843),
    );
    rows.push(
        "l1_upper",
        "L_n(hypercone) upper bound, any n",
        l_hi.value,
        "1/3".into(),
        Some("1/3"),
        Some(l_hi.value == 1.0 / 3.0),
    );

    let asym = asymptotics()?;
    rows.push(
        "log_three_halves",
        "slope of n(1 - (2/3)^(1/n))",
        asym.slope,
        round_down(asym.slope, 6),
        Some("0.405465"),
        Some((asym.slope - 0.405465).abs() <= 1e-6),
    );
    rows.push(
        "ratio_limsup",
        "0.446663 / log(3/2)",
        asym.ratio_limsup,
        round_up(asym.ratio_limsup, 6),
        Some("< 1.1016"),
        Some(asym.ratio_limsup < 1.1016),
    );
    rows.push(
        "ratio_from_root",
        "certified root / log(3/2)",
        asym.ratio_from_root,
        round_up(asym.ratio_from_root, 6),
        None,
        None,
    );

    let lower2 = general_lower(2)?;
    let refined2 = refined_cone_upper(2, 60)?;
    rows.push(
        "b2_hypercone_lower",
        "B_2(hypercone) lower bound",
        lower2.value,
        lower2.display(6),
        Some("0.183502"),
        Some(lower2.value > 0.183502),
    );
    rows.push(
        "b2_hypercone_refined_upper",
        "B_2(hypercone) upper bound, exact layer sums",
        refined2.value,
        refined2.display(6),
        Some("0.191373"),
        Some(refined2.value < 0.191373),
    );
    let refined1 = refined_cone_upper(1, 60)?;
    rows.push(
        "b1_refined_upper",
        "exact layer sums at n = 1",
        refined1.value,
        refined1.display(6),
        Some("1/3"),
        Some((refined1.value - 1.0 / 3.0).abs() <= 1e-9),
    );

    for n in [2usize, 4, 9] {
        let (lo, hi) = kn_bounds(n)?;
        rows.push(
            format!("kn_lower_n{n}"),
            format!("K_{n} lower bound 2/(5 sqrt n)"),
            lo.value,
            lo.display(6),
            None,
            None,
        );
        rows.push(
            format!("kn_upper_n{n}"),
            format!("K_{n} upper bound 2 sqrt(log n)/sqrt n"),
            hi.value,
            hi.display(6),
            None,
            None,
        );
    }
    for n in [2usize, 4, 10] {
        let b = ball_lower(n)?;
        rows.push(
            format!("ball_lower_n{n}"),
            format!("B_{n}(ball) lower bound 2/(5n)"),
            b.value,
            b.display(6),
            None,
            None,
        );
    }
    for beta in [vec![1u32], vec![1, 1], vec![1, 2], vec![2, 3]] {
        let beta = MultiIndex::new(beta)?;
        let b = monomial_domain_radius(&beta)?;
        let label = beta.parts().iter().map(u32::to_string).collect::<Vec<_>>().join("_");
        rows.push(
            format!("monomial_radius_{label}"),
            format!("exact radius for beta = {beta}"),
            b.value,
            round_down(b.value, 6),
            None,
            None,
        );
    }

    Ok(ConstantTable { rows: rows.0 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_is_deterministic() {
        let a = build_constant_table(4).unwrap();
        let b = build_constant_table(4).unwrap();
        assert_eq!(a.render(TableFormat::Json), b.render(TableFormat::Json));
        assert!(a.rows.iter().any(|r| r.id == "hypercone_root_lo"));
    }

    #[test]
    fn renders() {
        let t = build_constant_table(2).unwrap();
        let csv = t.render(TableFormat::Csv);
        assert!(csv.starts_with("id,description,value"));
        assert_eq!(csv.lines().count(), t.rows.len() + 1);
        let md = t.render(TableFormat::Markdown);
        assert!(md.contains("| l1_lower |"));
        let json: serde_json::Value = serde_json::from_str(&t.render(TableFormat::Json)).unwrap();
        assert_eq!(json["rows"].as_array().unwrap().len(), t.rows.len());
    }

    #[test]
    fn expected_rows() {
        let t = build_constant_table(3).unwrap();
        let get = |id: &str| t.rows.iter().find(|r| r.id == id).unwrap();
        assert_eq!(get("hypercone_root_lo").check, Some(true));
        assert_eq!(get("l1_lower").check, Some(true));
        assert_eq!(get("log_three_halves").display, "0.405465");
        assert_eq!(get("b2_hypercone_refined_upper").check, Some(true));
        // 0.446663 / log(3/2) = 1.1016065 does not satisfy the published "< 1.1016"
        assert_eq!(get("ratio_limsup").check, Some(false));
        assert!(!t.all_checks_pass());
    }
}
