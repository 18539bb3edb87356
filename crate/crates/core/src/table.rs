//! Character tables and their serialized forms.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::clifford::{canonical_gp_specs, chi_irreducible, GPElementSpec, IrredLabelGP};
use crate::content::ContentModel;
use crate::error::{Error, Result};
use crate::laurent::{Bindings, VarSet};
use crate::mn::{mn_character, ClassLabel, StandardElementSpec};
use crate::ratfn::Frac;
use crate::scalar::Scalar;
use crate::shapes::MultiPartition;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowLabel {
    pub shape: MultiPartition,
    /// `(j, f_λ, |K_λ|)` for `H(r,p,n)` rows.
    pub clifford: Option<(usize, usize, usize)>,
}

impl fmt::Display for RowLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.clifford {
            None => write!(f, "{}", self.shape),
            Some((j, _, _)) => write!(f, "{} j={j}", self.shape),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ColumnLabel {
    Hrn(StandardElementSpec),
    Hrpn(GPElementSpec),
}

impl fmt::Display for ColumnLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ColumnLabel::Hrn(s) => write!(f, "{s}"),
            ColumnLabel::Hrpn(s) => write!(f, "{s}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CharacterTable<Q> {
    r: usize,
    p: usize,
    n: u32,
    vars: VarSet,
    order: u32,
    rows: Vec<RowLabel>,
    cols: Vec<ColumnLabel>,
    entries: Vec<Vec<Frac<Q>>>,
}

#[derive(Serialize, Deserialize)]
struct TableDoc {
    algebra: AlgebraDoc,
    rows: Vec<RowDoc>,
    cols: Vec<ColDoc>,
    entries: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
struct AlgebraDoc {
    r: usize,
    p: usize,
    n: u32,
    #[serde(rename = "N")]
    order: u32,
    params: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct RowDoc {
    shape: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    j: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    f_lambda: Option<usize>,
    #[serde(default, rename = "K_size", skip_serializing_if = "Option::is_none")]
    k_size: Option<usize>,
}

#[derive(Serialize, Deserialize)]
struct ColDoc {
    ell: Vec<usize>,
    i: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tilde: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    alpha: Option<usize>,
}

impl<Q: Scalar> CharacterTable<Q> {
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn rows(&self) -> &[RowLabel] {
        &self.rows
    }

    pub fn cols(&self) -> &[ColumnLabel] {
        &self.cols
    }

    pub fn entries(&self) -> &[Vec<Frac<Q>>] {
        &self.entries
    }

    pub fn entry(&self, row: usize, col: usize) -> &Frac<Q> {
        &self.entries[row][col]
    }

    /// The content model the entries live over.
    pub fn model(&self) -> ContentModel<Q> {
        if self.p == 1 {
            ContentModel::hrn(self.r).expect("validated at construction")
        } else {
            ContentModel::hrpn(self.r, self.p).expect("validated at construction")
        }
    }

    /// Entrywise image under `bindings`; a pole names its entry.
    pub fn specialize(&self, bindings: &Bindings<Q>) -> Result<Self> {
        let mut entries = Vec::with_capacity(self.rows.len());
        for (row, values) in self.rows.iter().zip(&self.entries) {
            let mut out = Vec::with_capacity(values.len());
            for (col, v) in self.cols.iter().zip(values) {
                out.push(v.substitute(bindings).map_err(|e| Error::Entry {
                    row: row.to_string(),
                    col: col.to_string(),
                    message: e.to_string(),
                })?);
            }
            entries.push(out);
        }
        Ok(CharacterTable { entries, ..self.clone() })
    }

    /// Cells equal up to rational-function equality.
    pub fn rf_equal(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.entries.iter().flatten().zip(other.entries.iter().flatten()).all(|(a, b)| a.rf_equal(b))
    }

    fn header(&self) -> String {
        let algebra = if self.p == 1 {
            format!("H({},{})", self.r, self.n)
        } else {
            format!("H({},{},{})", self.r, self.p, self.n)
        };
        format!("{algebra} N={} params={}", self.order, self.vars.names().join(","))
    }

    pub fn to_text(&self) -> String {
        let mut grid: Vec<Vec<String>> = Vec::with_capacity(self.rows.len() + 1);
        grid.push(std::iter::once(String::new()).chain(self.cols.iter().map(ToString::to_string)).collect());
        for (row, values) in self.rows.iter().zip(&self.entries) {
            grid.push(std::iter::once(row.to_string()).chain(values.iter().map(ToString::to_string)).collect());
        }
        let widths: Vec<usize> =
            (0..grid[0].len()).map(|c| grid.iter().map(|line| line[c].chars().count()).max().unwrap_or(0)).collect();
        let mut out = self.header();
        out.push('\n');
        for line in &grid {
            let cells: Vec<String> = line.iter().zip(&widths).map(|(s, &w)| format!("{s:<w$}")).collect();
            out.push_str(cells.join(" | ").trim_end());
            out.push('\n');
        }
        out
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let hrpn = self.p > 1;
        let mut head = vec!["shape".to_string()];
        if hrpn {
            head.push("j".into());
        }
        head.extend(self.cols.iter().map(ToString::to_string));
        let io = |e: csv::Error| Error::InvalidArgument(format!("csv: {e}"));
        w.write_record(&head).map_err(io)?;
        for (row, values) in self.rows.iter().zip(&self.entries) {
            let mut rec = vec![row.shape.to_string()];
            if let Some((j, _, _)) = row.clifford {
                rec.push(j.to_string());
            }
            rec.extend(values.iter().map(ToString::to_string));
            w.write_record(&rec).map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::InvalidArgument(format!("csv: {e}")))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    pub fn to_json(&self) -> String {
        let doc = TableDoc {
            algebra: AlgebraDoc {
                r: self.r,
                p: self.p,
                n: self.n,
                order: self.order,
                params: self.vars.names().to_vec(),
            },
            rows: self
                .rows
                .iter()
                .map(|row| RowDoc {
                    shape: row.shape.to_string(),
                    j: row.clifford.map(|c| c.0),
                    f_lambda: row.clifford.map(|c| c.1),
                    k_size: row.clifford.map(|c| c.2),
                })
                .collect(),
            cols: self
                .cols
                .iter()
                .map(|col| match col {
                    ColumnLabel::Hrn(s) => ColDoc { ell: s.ell().to_vec(), i: s.exps().to_vec(), tilde: None, alpha: None },
                    ColumnLabel::Hrpn(g) => ColDoc {
                        ell: g.spec().ell().to_vec(),
                        i: g.spec().exps().to_vec(),
                        tilde: Some(g.tilde()),
                        alpha: g.alpha(),
                    },
                })
                .collect(),
            entries: self.entries.iter().map(|row| row.iter().map(ToString::to_string).collect()).collect(),
        };
        let mut s = serde_json::to_string_pretty(&doc).expect("plain data serializes");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let doc: TableDoc = serde_json::from_str(s).map_err(|e| Error::Parse(format!("table json: {e}")))?;
        let AlgebraDoc { r, p, n, order, params } = doc.algebra;
        let vars = VarSet::new(&params);
        let expected = if p == 1 { ContentModel::<Q>::hrn(r)? } else { ContentModel::<Q>::hrpn(r, p)? };
        if expected.vars() != &vars || expected.order() != order {
            return Err(Error::Parse(format!("header does not describe H({r},{p},{n})")));
        }
        let rows = doc
            .rows
            .into_iter()
            .map(|row| {
                let shape: MultiPartition = row.shape.parse()?;
                let clifford = match (row.j, row.f_lambda, row.k_size) {
                    (None, None, None) => None,
                    (Some(j), Some(f), Some(k)) => Some((j, f, k)),
                    _ => return Err(Error::Parse(format!("row {shape}: j, f_lambda and K_size go together"))),
                };
                Ok(RowLabel { shape, clifford })
            })
            .collect::<Result<Vec<_>>>()?;
        let cols = doc
            .cols
            .into_iter()
            .map(|col| {
                let spec = StandardElementSpec::new(col.ell, col.i)?;
                Ok(match col.tilde {
                    None if col.alpha.is_none() => ColumnLabel::Hrn(spec),
                    tilde => ColumnLabel::Hrpn(GPElementSpec::new(tilde.unwrap_or(false), spec, col.alpha)?),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        if doc.entries.len() != rows.len() || doc.entries.iter().any(|e| e.len() != cols.len()) {
            return Err(Error::Parse(format!("entries are not {}×{}", rows.len(), cols.len())));
        }
        let entries = doc
            .entries
            .iter()
            .map(|line| line.iter().map(|e| Frac::parse(&vars, order, e)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(CharacterTable { r, p, n, vars, order, rows, cols, entries })
    }
}

fn fill<Q: Scalar, R: Sync, C: Sync>(
    rows: &[R],
    cols: &[C],
    cell: impl Fn(&R, &C) -> Result<Frac<Q>> + Sync,
) -> Result<Vec<Vec<Frac<Q>>>> {
    let flat: Vec<Frac<Q>> = (0..rows.len() * cols.len())
        .into_par_iter()
        .map(|k| cell(&rows[k / cols.len()], &cols[k % cols.len()]))
        .collect::<Result<_>>()?;
    Ok(flat.chunks(cols.len().max(1)).map(<[_]>::to_vec).collect())
}

/// Rows: all `r`-partitions of `n`; columns: standard elements of all class labels.
pub fn character_table_hrn<Q: Scalar>(r: usize, n: u32) -> Result<CharacterTable<Q>> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let model = ContentModel::<Q>::hrn(r)?;
    let shapes = MultiPartition::all(r, n);
    let specs: Vec<StandardElementSpec> = ClassLabel::all(r, n).iter().map(ClassLabel::standard_element).collect();
    let entries = fill(&shapes, &specs, |s, e| mn_character(&model, s, e))?;
    Ok(CharacterTable {
        r,
        p: 1,
        n,
        vars: model.vars().clone(),
        order: model.order(),
        rows: shapes.into_iter().map(|shape| RowLabel { shape, clifford: None }).collect(),
        cols: specs.into_iter().map(ColumnLabel::Hrn).collect(),
        entries,
    })
}

/// Rows: `(λ, j)` with one `λ` per σ-orbit; columns: [`canonical_gp_specs`].
/// For `p = 1` this is the `H(r,n)` table.
pub fn character_table_hrpn<Q: Scalar>(r: usize, p: usize, n: u32) -> Result<CharacterTable<Q>> {
    if p == 0 || !r.is_multiple_of(p) {
        return Err(Error::InvalidArgument(format!("p = {p} must divide r = {r}")));
    }
    if p == 1 {
        return character_table_hrn(r, n);
    }
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let model = ContentModel::<Q>::hrpn(r, p)?;
    let labels = IrredLabelGP::all(r, p, n);
    let specs = canonical_gp_specs(r, p, n);
    let entries = fill(&labels, &specs, |l, s| chi_irreducible(&model, l, s))?;
    let rows = labels
        .iter()
        .map(|l| {
            let (f, k) = l.shape().stabilizer(p);
            RowLabel { shape: l.shape().clone(), clifford: Some((l.j(), f, k)) }
        })
        .collect();
    Ok(CharacterTable {
        r,
        p,
        n,
        vars: model.vars().clone(),
        order: model.order(),
        rows,
        cols: specs.into_iter().map(ColumnLabel::Hrpn).collect(),
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type T = CharacterTable<BigRational>;

    #[test]
    fn symmetric_group_two() {
        let t: T = character_table_hrn(1, 2).unwrap();
        let cells: Vec<String> = t.entries().iter().flatten().map(ToString::to_string).collect();
        assert_eq!(t.cols()[0].to_string(), "ell=2 i=0");
        assert_eq!(cells, ["(1)*q^1", "(1)", "(-1)*q^-1", "(1)"]);
    }

    #[test]
    fn hrpn_two_two_two() {
        let t: T = character_table_hrpn(2, 2, 2).unwrap();
        assert_eq!(t.rows().len(), 4);
        let a2 = t.cols().iter().position(|c| c.to_string() == "ell=2 i=0 tilde=0").unwrap();
        let split: Vec<String> = t
            .rows()
            .iter()
            .zip(t.entries())
            .filter(|(row, _)| row.shape.to_string() == "1|1")
            .map(|(_, e)| e[a2].to_string())
            .collect();
        assert_eq!(split, ["(1)*q^1", "(-1)*q^-1"]);
    }

    #[test]
    fn p_one_is_hrn() {
        let a: T = character_table_hrpn(2, 1, 2).unwrap();
        let b: T = character_table_hrn(2, 2).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        assert!(character_table_hrpn::<BigRational>(1, 2, 1).is_err());
    }

    #[test]
    fn json_round_trip_is_byte_exact() {
        for t in [character_table_hrn::<BigRational>(2, 2).unwrap(), character_table_hrpn(2, 2, 3).unwrap()] {
            let s = t.to_json();
            let back = T::from_json(&s).unwrap();
            assert!(back.rf_equal(&t));
            assert_eq!(back.to_json(), s);
        }
    }

    #[test]
    fn text_and_csv_shapes() {
        let t: T = character_table_hrpn(2, 2, 2).unwrap();
        let text = t.to_text();
        assert!(text.starts_with("H(2,2,2) N=2 params=q,y0\n"));
        assert_eq!(text.lines().count(), 6);
        let csv = t.to_csv().unwrap();
        assert!(csv.starts_with("shape,j,"));
        assert_eq!(csv.lines().count(), 5);
    }

    #[test]
    fn specialization_and_poles() {
        let t: T = character_table_hrn(1, 3).unwrap();
        let s = t.specialize(&t.model().group_bindings()).unwrap();
        let trivial = s.rows().iter().position(|r| r.shape.to_string() == "3").unwrap();
        assert!(s.entries()[trivial].iter().all(|e| e.is_one()));
        let vars = t.vars().clone();
        let bad = T::from_json(&t.to_json().replace("\"(1)\"", "\"[(1)]/[(1)*q^1 + (-1)]\"")).unwrap();
        let err = bad.specialize(&Bindings::new().bind("q", crate::laurent::Laurent::one(&vars, 1)));
        assert!(matches!(err, Err(Error::Entry { .. })), "{err:?}");
    }
}
