//! Embedded tables: the low-crossing members of the `D_n` and `D'_n`
//! families, and census knot complements sharing a filling with `4_1`,
//! with volume bound checks and Gromov norms.

use std::sync::OnceLock;

use serde::Serialize;

use crate::arith::Slope;
use crate::surgery::shared_surgery;
use crate::twistknots::Family;
use crate::{Error, Result};

/// Volume of the regular ideal tetrahedron.
pub const V_TET: f64 = 1.01494;
/// Volume of the regular ideal octahedron.
pub const V_OCT: f64 = 3.6638;

const KNOT_TABLES_CSV: &str = include_str!("../data/knot_tables.csv");
const CENSUS_CSV: &str = include_str!("../data/census.csv");
const NO_VALUE: &str = "-";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KnotTableRow {
    pub family: Family,
    pub n: i64,
    pub rolfsen_name: String,
}

/// One shared filling `M_K(slope_on_k) ≅ M_{4_1}(slope_on_41)`. Volumes keep
/// their printed decimal strings; `None` slopes mark the row without a filling.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub census_name: String,
    pub vol_complement: String,
    pub slope_on_k: Option<Slope>,
    pub slope_on_41: Option<Slope>,
    pub vol_filled: Option<String>,
    pub knot_name: Option<String>,
}

impl CensusRow {
    pub fn vol_complement(&self) -> f64 {
        self.vol_complement.parse().expect("validated at load")
    }

    pub fn vol_filled(&self) -> Option<f64> {
        self.vol_filled.as_ref().map(|v| v.parse().expect("validated at load"))
    }

    pub fn tetrahedra(&self) -> u32 {
        tetrahedra(&self.census_name).expect("validated at load")
    }

    pub fn has_filling(&self) -> bool {
        self.slope_on_k.is_some()
    }
}

fn parse_knot_tables(text: &str) -> Result<Vec<KnotTableRow>> {
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let mut out = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| Error::Parse(e.to_string()))?;
        let n = rec[1].parse().map_err(|_| Error::Parse(format!("bad n {:?}", &rec[1])))?;
        out.push(KnotTableRow { family: rec[0].parse()?, n, rolfsen_name: rec[2].to_string() });
    }
    Ok(out)
}

fn optional(field: &str) -> Option<&str> {
    (field != NO_VALUE && !field.is_empty()).then_some(field)
}

/// Parses the census CSV (header `censusName,volComplement,slopeOnK,slopeOn41,volFilled,knotName`).
pub fn parse_census(text: &str) -> Result<Vec<CensusRow>> {
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let mut out = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| Error::Parse(e.to_string()))?;
        if rec.len() != 6 {
            return Err(Error::Parse(format!("expected 6 fields, got {}", rec.len())));
        }
        tetrahedra(&rec[0])?;
        let vol_ok = |s: &str| s.parse::<f64>().map(|v| v > 0.0).unwrap_or(false);
        if !vol_ok(&rec[1]) {
            return Err(Error::Parse(format!("bad volume {:?}", &rec[1])));
        }
        let slope = |s: &str| optional(s).map(|s| s.parse::<Slope>()).transpose();
        let vol_filled = optional(&rec[4]).map(str::to_string);
        if let Some(v) = &vol_filled {
            if !vol_ok(v) {
                return Err(Error::Parse(format!("bad volume {v:?}")));
            }
        }
        let row = CensusRow {
            census_name: rec[0].to_string(),
            vol_complement: rec[1].to_string(),
            slope_on_k: slope(&rec[2])?,
            slope_on_41: slope(&rec[3])?,
            vol_filled,
            knot_name: optional(&rec[5]).map(str::to_string),
        };
        if row.slope_on_k.is_some() != row.slope_on_41.is_some() || row.slope_on_k.is_some() != row.vol_filled.is_some()
        {
            return Err(Error::Parse(format!("{}: partial filling data", row.census_name)));
        }
        out.push(row);
    }
    Ok(out)
}

/// Writes rows back in the embedded CSV format.
pub fn serialize_census(rows: &[CensusRow]) -> String {
    let mut wtr = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(vec![]);
    wtr.write_record(["censusName", "volComplement", "slopeOnK", "slopeOn41", "volFilled", "knotName"])
        .expect("in-memory write");
    for r in rows {
        let slope = |s: &Option<Slope>| s.as_ref().map(|s| s.to_string()).unwrap_or_else(|| NO_VALUE.into());
        wtr.write_record([
            r.census_name.clone(),
            r.vol_complement.clone(),
            slope(&r.slope_on_k),
            slope(&r.slope_on_41),
            r.vol_filled.clone().unwrap_or_else(|| NO_VALUE.into()),
            r.knot_name.clone().unwrap_or_default(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(wtr.into_inner().expect("flush")).expect("utf-8")
}

pub fn embedded_census_csv() -> &'static str {
    CENSUS_CSV
}

pub fn knot_table() -> &'static [KnotTableRow] {
    static TABLE: OnceLock<Vec<KnotTableRow>> = OnceLock::new();
    TABLE.get_or_init(|| parse_knot_tables(KNOT_TABLES_CSV).expect("embedded table is valid"))
}

pub fn census() -> &'static [CensusRow] {
    static ROWS: OnceLock<Vec<CensusRow>> = OnceLock::new();
    ROWS.get_or_init(|| parse_census(CENSUS_CSV).expect("embedded census is valid"))
}

/// Tetrahedron count encoded as the leading integer of `K<t>_<index>`.
pub fn tetrahedra(census_name: &str) -> Result<u32> {
    let bad = || Error::MalformedName(census_name.to_string());
    let rest = census_name.strip_prefix('K').ok_or_else(bad)?;
    let (t, idx) = rest.split_once('_').ok_or_else(bad)?;
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    if !digits(t) || !digits(idx) {
        return Err(bad());
    }
    let t: u32 = t.parse().map_err(|_| bad())?;
    if t == 0 {
        return Err(bad());
    }
    Ok(t)
}

/// `vol / v_tet`.
pub fn gromov_norm(vol: f64) -> Result<f64> {
    if vol < 0.0 || vol.is_nan() {
        return Err(Error::InvalidArgument(format!("volume must be non-negative, got {vol}")));
    }
    Ok(vol / V_TET)
}

/// Outcome of the two volume inequalities for one census row.
#[derive(Clone, Debug, Serialize)]
pub struct BoundCheck {
    pub census_name: String,
    pub slope_on_k: Option<Slope>,
    /// `v_oct · t - vol_filled`
    pub upper_margin: Option<f64>,
    /// `vol_complement - vol_filled`
    pub lower_margin: Option<f64>,
    pub no_filling: bool,
    pub passes: bool,
}

/// Checks `vol_filled ≤ v_oct · t` and `vol_filled < vol_complement`; rows
/// without a filling pass vacuously.
pub fn check_volume_bounds(row: &CensusRow) -> BoundCheck {
    let t = row.tetrahedra() as f64;
    match row.vol_filled() {
        None => BoundCheck {
            census_name: row.census_name.clone(),
            slope_on_k: None,
            upper_margin: None,
            lower_margin: None,
            no_filling: true,
            passes: true,
        },
        Some(vf) => {
            let upper = V_OCT * t - vf;
            let lower = row.vol_complement() - vf;
            BoundCheck {
                census_name: row.census_name.clone(),
                slope_on_k: row.slope_on_k.clone(),
                upper_margin: Some(upper),
                lower_margin: Some(lower),
                no_filling: false,
                passes: upper >= 0.0 && lower > 0.0,
            }
        }
    }
}

pub fn lookup(family: Family, n: i64) -> Result<&'static KnotTableRow> {
    knot_table().iter().find(|r| r.family == family && r.n == n).ok_or_else(|| Error::NotFound(format!("{family}_{n}")))
}

/// Table entries naming the given knot (`5_2` and `4_1` lie in both families).
pub fn families_of(rolfsen_name: &str) -> Vec<&'static KnotTableRow> {
    knot_table().iter().filter(|r| r.rolfsen_name == rolfsen_name).collect()
}

/// First row with the given census name.
pub fn find_shared(census_name: &str) -> Result<&'static CensusRow> {
    census().iter().find(|r| r.census_name == census_name).ok_or_else(|| Error::NotFound(census_name.to_string()))
}

/// All rows with the given census name.
pub fn rows_named(census_name: &str) -> Vec<&'static CensusRow> {
    census().iter().filter(|r| r.census_name == census_name).collect()
}

/// Agreement of one census row with the family formula.
#[derive(Clone, Debug, Serialize)]
pub struct FamilyMatch {
    pub census_name: String,
    pub knot_name: String,
    pub family: Family,
    pub n: i64,
    pub matches: bool,
}

/// For every row whose knot lies in one of the two families, whether its
/// slope pair equals the family formula with the `4_1` slope taken up to sign.
/// Knots in both families match if either identification does.
pub fn family_rows_match() -> Vec<FamilyMatch> {
    let mut out = Vec::new();
    for row in census() {
        let (Some(name), Some(sk), Some(s41)) = (&row.knot_name, &row.slope_on_k, &row.slope_on_41) else {
            continue;
        };
        let ids = families_of(name);
        if ids.is_empty() {
            continue;
        }
        let hit = ids.iter().find(|id| match shared_surgery(id.family, id.n) {
            Ok((a, b)) => &a == sk && (&b == s41 || b.neg() == *s41),
            Err(_) => false,
        });
        let id = hit.copied().unwrap_or(ids[0]);
        out.push(FamilyMatch {
            census_name: row.census_name.clone(),
            knot_name: name.clone(),
            family: id.family,
            n: id.n,
            matches: hit.is_some(),
        });
    }
    out
}

/// Census row for the filling of the given family member, if tabulated.
pub fn filling_row(family: Family, n: i64) -> Option<&'static CensusRow> {
    let name = &lookup(family, n).ok()?.rolfsen_name;
    let (sk, _) = shared_surgery(family, n).ok()?;
    census().iter().find(|r| r.knot_name.as_deref() == Some(name) && r.slope_on_k.as_ref() == Some(&sk))
}

/// Complement volume of a tabulated knot.
pub fn complement_volume(rolfsen_name: &str) -> Option<f64> {
    census().iter().find(|r| r.knot_name.as_deref() == Some(rolfsen_name)).map(|r| r.vol_complement())
}
