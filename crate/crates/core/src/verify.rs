//! Invariant suites: every closed form against its independent oracle.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;

use crate::clifford::{bitrace_closed, bitrace_of_spec, c_constant, canonical_gp_specs, quantum_int};
use crate::content::ContentModel;
use crate::cyclo::Cyclo;
use crate::error::{Error, Result};
use crate::group::{check_orthogonality, ReflectionGroup};
use crate::mn::{delta_shape_bruteforce, delta_shape_closed, mn_character_with, ClassLabel, DeltaFn};
use crate::poset::{delta_poset, delta_poset_product, linear_extension_sum, verify_poset_theorem, PosetPoint, ShapePoset};
use crate::scalar::Scalar;
use crate::seminormal::SeminormalRep;
use crate::shapes::{compressed_skew_shapes, multi_skew_shapes, MultiPartition};
use crate::table::{character_table_hrpn, ColumnLabel};

type Q = BigRational;

/// One checked identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub failure: Option<String>,
}

impl Check {
    fn from_result(name: String, r: Result<std::result::Result<(), String>>) -> Self {
        let failure = match r {
            Ok(Ok(())) => None,
            Ok(Err(msg)) => Some(msg),
            Err(e) => Some(format!("error: {e}")),
        };
        Check { name, failure }
    }

    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(f, "ok   {}", self.name),
            Some(msg) => write!(f, "FAIL {}: {msg}", self.name),
        }
    }
}

fn agree<T: PartialEq + fmt::Display>(lhs: &T, rhs: &T) -> std::result::Result<(), String> {
    if lhs == rhs {
        Ok(())
    } else {
        Err(format!("{lhs} ≠ {rhs}"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scale {
    /// Small cases, for smoke runs.
    Quick,
    /// The full ranges.
    Full,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Relations,
    MnOracle,
    Poset,
    CliffordOracle,
    SpecializeOrthogonality,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 6] =
        ["relations", "mn-oracle", "poset", "clifford-oracle", "specialize-orthogonality", "all"];
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "relations" => Suite::Relations,
            "mn-oracle" => Suite::MnOracle,
            "poset" => Suite::Poset,
            "clifford-oracle" => Suite::CliffordOracle,
            "specialize-orthogonality" => Suite::SpecializeOrthogonality,
            "all" => Suite::All,
            _ => return Err(Error::InvalidArgument(format!("unknown suite `{s}`; expected one of {:?}", Self::NAMES))),
        })
    }
}

/// The `Δ` evaluator under test, with the name used in reports.
pub struct DeltaUnderTest<'a> {
    pub name: &'a str,
    pub delta: &'a DeltaFn<Q>,
}

impl Default for DeltaUnderTest<'static> {
    fn default() -> Self {
        DeltaUnderTest { name: "delta_shape_closed", delta: &delta_shape_closed::<Q> }
    }
}

fn hrn_range(scale: Scale) -> Vec<(usize, u32)> {
    match scale {
        Scale::Quick => vec![(1, 3), (2, 2), (2, 3)],
        Scale::Full => {
            let mut v: Vec<(usize, u32)> = (1..=3).flat_map(|r| (1..=4).map(move |n| (r, n))).collect();
            v.push((4, 3));
            v
        }
    }
}

/// `(r, p, n)` triples for the twisted-bitrace checks.
pub fn clifford_triples(scale: Scale) -> Vec<(usize, usize, u32)> {
    match scale {
        Scale::Quick => vec![(2, 2, 2), (2, 2, 3), (4, 4, 2)],
        Scale::Full => vec![(2, 2, 2), (2, 2, 3), (2, 2, 4), (4, 2, 3), (3, 3, 3), (4, 4, 2)],
    }
}

/// Seminormal generators satisfy the defining relations, in `H(r,n)` and
/// (for the bitrace triples) `H(r,p,n)` with σ commuting.
pub fn relations(scale: Scale) -> Vec<Check> {
    let mut cases: Vec<(String, ContentModel<Q>, MultiPartition)> = Vec::new();
    for (r, n) in hrn_range(scale) {
        let m = ContentModel::hrn(r).unwrap();
        cases.extend(MultiPartition::all(r, n).into_iter().map(|s| (format!("H({r},{n})"), m.clone(), s)));
    }
    for (r, p, n) in clifford_triples(scale).into_iter().filter(|t| t.2 <= 3) {
        let m = ContentModel::hrpn(r, p).unwrap();
        cases.extend(MultiPartition::all(r, n).into_iter().map(|s| (format!("H({r},{p},{n})"), m.clone(), s)));
    }
    cases
        .par_iter()
        .map(|(alg, m, s)| {
            let r = SeminormalRep::build(s, m).map(|rep| rep.verify_relations());
            Check::from_result(format!("verify_relations {alg} λ={s}"), r)
        })
        .collect()
}

/// The chain rule against seminormal traces on every class standard element.
pub fn mn_vs_oracle(scale: Scale, delta: &DeltaUnderTest<'_>) -> Vec<Check> {
    let cases: Vec<(usize, u32, MultiPartition)> = hrn_range(scale)
        .into_iter()
        .flat_map(|(r, n)| MultiPartition::all(r, n).into_iter().map(move |s| (r, n, s)))
        .collect();
    cases
        .par_iter()
        .map(|(r, n, shape)| {
            let m = ContentModel::<Q>::hrn(*r).unwrap();
            let run = || -> Result<std::result::Result<(), String>> {
                let rep = SeminormalRep::build(shape, &m)?;
                for c in ClassLabel::all(*r, *n) {
                    let spec = c.standard_element();
                    let closed = mn_character_with(&m, shape, &spec, delta.delta)?;
                    let oracle = rep.trace_of(&spec.word())?;
                    if closed != oracle {
                        return Ok(Err(format!("class {c}: {closed} ≠ trace {oracle}")));
                    }
                }
                Ok(Ok(()))
            };
            Check::from_result(format!("mn_character[{}] = trace H({r},{n}) λ={shape}", delta.name), run())
        })
        .collect()
}

/// Closed `Δ^{(k)}` against the tableau sum, `0 ≤ k ≤ r−1`.
pub fn delta_closed_vs_brute(scale: Scale, delta: &DeltaUnderTest<'_>) -> Vec<Check> {
    let max = if scale == Scale::Full { 6 } else { 4 };
    let cases: Vec<(usize, MultiPartition)> =
        (1..=3).flat_map(|r| multi_skew_shapes(r, max).into_iter().map(move |s| (r, s))).collect();
    cases
        .par_iter()
        .map(|(r, shape)| {
            let m = ContentModel::<Q>::hrn(*r).unwrap();
            let run = || -> Result<std::result::Result<(), String>> {
                for k in 0..*r as i64 {
                    let closed = (delta.delta)(&m, shape, k)?;
                    let brute = delta_shape_bruteforce(&m, shape, k)?;
                    if closed != brute {
                        return Ok(Err(format!("k={k}: {closed} ≠ {brute}")));
                    }
                }
                Ok(Ok(()))
            };
            Check::from_result(format!("{} = tableau sum r={r} λ={shape}", delta.name), run())
        })
        .collect()
}

/// The poset identity at generic box variables, `0 ≤ k ≤ 3`; up to six boxes
/// also the product form and the specialization to contents.
pub fn poset_identity(scale: Scale) -> Vec<Check> {
    let max = if scale == Scale::Full { 7 } else { 5 };
    let model = ContentModel::<Q>::hrn(1).unwrap();
    compressed_skew_shapes(max)
        .par_iter()
        .map(|shape| {
            let point = PosetPoint::<Q>::generic(shape);
            let run = || -> Result<std::result::Result<(), String>> {
                for k in 0..=3 {
                    if !verify_poset_theorem(shape, k, &point)? {
                        return Ok(Err(format!("k={k}: linear-extension sum ≠ corner formula")));
                    }
                }
                if shape.size() > 6 {
                    return Ok(Ok(()));
                }
                let by_mobius = delta_poset(&ShapePoset::new(shape), 0, &point)?;
                if by_mobius != delta_poset_product(shape, &point)? {
                    return Ok(Err("Möbius sum ≠ weight product".into()));
                }
                let at_contents = PosetPoint::contents(&model, shape);
                for k in 0..=3 {
                    let lhs = linear_extension_sum(shape, k, &at_contents)?;
                    if !verify_poset_theorem(shape, k, &at_contents)? || lhs != delta_shape_closed(&model, shape, k)? {
                        return Ok(Err(format!("k={k}: specialization to contents")));
                    }
                }
                Ok(Ok(()))
            };
            Check::from_result(format!("poset identity λ={shape}"), run())
        })
        .collect()
}

/// Closed twisted bitraces against seminormal twisted bitraces, both for the
/// `S`-words and for their reduced `R`-words.
pub fn clifford_vs_oracle(scale: Scale) -> Vec<Check> {
    let cases: Vec<(usize, usize, u32, MultiPartition)> = clifford_triples(scale)
        .into_iter()
        .flat_map(|(r, p, n)| MultiPartition::all(r, n).into_iter().map(move |s| (r, p, n, s)))
        .collect();
    cases
        .par_iter()
        .map(|(r, p, n, shape)| {
            let m = ContentModel::<Q>::hrpn(*r, *p).unwrap();
            let run = || -> Result<std::result::Result<(), String>> {
                let rep = SeminormalRep::build(shape, &m)?;
                let (_, k) = shape.stabilizer(*p);
                for spec in canonical_gp_specs(*r, *p, *n) {
                    let (rw, _) = spec.reduce_to_r(*p);
                    for alpha in 0..k {
                        let closed = bitrace_of_spec(&m, shape, &spec, alpha)?;
                        let oracle = rep.twisted_bitrace(&spec.word(), alpha)?;
                        if closed != oracle {
                            return Ok(Err(format!("{spec} α={alpha}: {closed} ≠ {oracle}")));
                        }
                        let closed = bitrace_closed(&m, shape, &rw, alpha)?;
                        let oracle = rep.twisted_bitrace(&rw.word(), alpha)?;
                        if closed != oracle {
                            return Ok(Err(format!("R-word {rw} α={alpha}: {closed} ≠ {oracle}")));
                        }
                    }
                }
                Ok(Ok(()))
            };
            Check::from_result(format!("bitrace_closed = twisted bitrace H({r},{p},{n}) λ={shape}"), run())
        })
        .collect()
}

/// `Σ_j χ^{(λ,j)}(h) ε^{jαf_λ} = χ^λ(hσ^{αf_λ})`, table entries against the oracle.
pub fn inversion_round_trip(scale: Scale) -> Vec<Check> {
    clifford_triples(scale)
        .into_iter()
        .flat_map(|(r, p, n)| {
            let table = match character_table_hrpn::<Q>(r, p, n) {
                Ok(t) => t,
                Err(e) => {
                    return vec![Check { name: format!("character_table_hrpn({r},{p},{n})"), failure: Some(e.to_string()) }]
                }
            };
            let m = ContentModel::<Q>::hrpn(r, p).unwrap();
            let d = (r / p) as i64;
            let mut shapes: Vec<MultiPartition> = table.rows().iter().map(|row| row.shape.clone()).collect();
            shapes.dedup();
            shapes
                .par_iter()
                .map(|shape| {
                    let run = || -> Result<std::result::Result<(), String>> {
                        let rep = SeminormalRep::build(shape, &m)?;
                        let (f, k) = shape.stabilizer(p);
                        let rows: Vec<usize> = (0..table.rows().len()).filter(|&i| &table.rows()[i].shape == shape).collect();
                        for (c, col) in table.cols().iter().enumerate() {
                            let ColumnLabel::Hrpn(spec) = col else { unreachable!("p > 1 tables") };
                            for alpha in 0..k {
                                let kappa = (alpha * f) as i64;
                                let mut sum = m.zero();
                                for &i in &rows {
                                    let j = table.rows()[i].clifford.unwrap().0 as i64;
                                    let w = Cyclo::root_of_unity(m.order(), d * j * kappa);
                                    sum = &sum + &table.entry(i, c).scale(&w);
                                }
                                let oracle = rep.twisted_bitrace(&spec.word(), alpha)?;
                                if sum != oracle {
                                    return Ok(Err(format!("{spec} α={alpha}: Σ_j = {sum} ≠ {oracle}")));
                                }
                            }
                        }
                        Ok(Ok(()))
                    };
                    Check::from_result(format!("inversion round trip H({r},{p},{n}) λ={shape}"), run())
                })
                .collect::<Vec<_>>()
        })
        .collect()
}

/// Specialized tables are orthogonal against brute-force class sizes.
pub fn group_orthogonality(scale: Scale) -> Vec<Check> {
    let mut cases = vec![(1, 1, 3), (2, 1, 2), (3, 1, 2), (2, 2, 2)];
    if scale == Scale::Full {
        cases.extend([(2, 1, 3), (4, 2, 2)]);
    }
    cases
        .par_iter()
        .map(|&(r, p, n)| {
            let run = || -> Result<std::result::Result<(), String>> {
                let t = character_table_hrpn::<Q>(r, p, n)?;
                let s = t.specialize(&t.model().group_bindings())?;
                let g = ReflectionGroup::generate(r as u32, p as u32, n as usize, 10_000)?;
                let expected = ReflectionGroup::order_formula(r as u32, p as u32, n as usize);
                if g.order() != expected {
                    return Ok(Err(format!("|G| = {} but the order formula gives {expected}", g.order())));
                }
                let report = check_orthogonality(&s, &g);
                Ok(if report.passed() { Ok(()) } else { Err(report.failures.join("; ")) })
            };
            let size = ReflectionGroup::order_formula(r as u32, p as u32, n as usize);
            Check::from_result(format!("orthogonality G({r},{p},{n}) |G|={size}"), run())
        })
        .collect()
}

/// Per-block `C = [γ]/γ` for every primitive `γ`-th root `ω̃`.
pub fn c_constant_identity(scale: Scale) -> Vec<Check> {
    let top = if scale == Scale::Full { 6 } else { 4 };
    (2..=top)
        .map(|gamma: usize| {
            let run = || -> Result<std::result::Result<(), String>> {
                let m = ContentModel::<Q>::hrpn(gamma, gamma)?;
                let expected = quantum_int(&m, gamma).scale(&Cyclo::from_rational(Q::one() / Q::from_int(gamma as i64)));
                for root in (1..gamma as i64).filter(|k| num_integer::gcd(*k, gamma as i64) == 1) {
                    let c = c_constant(&m, root, gamma, 1)?;
                    if let Err(msg) = agree(&c, &expected) {
                        return Ok(Err(format!("ω̃ = ζ^{root}: {msg}")));
                    }
                }
                Ok(Ok(()))
            };
            Check::from_result(format!("C = [γ]/γ for γ={gamma}"), run())
        })
        .collect()
}

pub fn run_suite(suite: Suite, scale: Scale, delta: &DeltaUnderTest<'_>) -> Vec<Check> {
    match suite {
        Suite::Relations => relations(scale),
        Suite::MnOracle => {
            let mut v = delta_closed_vs_brute(scale, delta);
            v.extend(mn_vs_oracle(scale, delta));
            v
        }
        Suite::Poset => poset_identity(scale),
        Suite::CliffordOracle => {
            let mut v = clifford_vs_oracle(scale);
            v.extend(inversion_round_trip(scale));
            v.extend(c_constant_identity(scale));
            v
        }
        Suite::SpecializeOrthogonality => group_orthogonality(scale),
        Suite::All => [Suite::Relations, Suite::MnOracle, Suite::Poset, Suite::CliffordOracle, Suite::SpecializeOrthogonality]
            .into_iter()
            .flat_map(|s| run_suite(s, scale, delta))
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfn::Frac;

    fn all_pass(checks: &[Check]) {
        assert!(!checks.is_empty());
        let failed: Vec<String> = checks.iter().filter(|c| !c.passed()).map(ToString::to_string).collect();
        assert!(failed.is_empty(), "{failed:#?}");
    }

    #[test]
    fn quick_suites_pass() {
        let d = DeltaUnderTest::default();
        for suite in [Suite::Relations, Suite::MnOracle, Suite::CliffordOracle, Suite::SpecializeOrthogonality] {
            all_pass(&run_suite(suite, Scale::Quick, &d));
        }
    }

    #[test]
    fn sign_bug_in_delta_zero_is_named() {
        let buggy = |m: &ContentModel<Q>, s: &MultiPartition, k: i64| -> Result<Frac<Q>> {
            let v = delta_shape_closed(m, s, k)?;
            Ok(if k == 0 { -v } else { v })
        };
        let d = DeltaUnderTest { name: "delta_shape_closed", delta: &buggy };
        let checks = run_suite(Suite::MnOracle, Scale::Quick, &d);
        let failed: Vec<&Check> = checks.iter().filter(|c| !c.passed()).collect();
        assert!(!failed.is_empty());
        assert!(failed.iter().all(|c| c.name.contains("delta_shape_closed")));
    }

    #[test]
    fn suite_names_parse() {
        for name in Suite::NAMES {
            assert!(name.parse::<Suite>().is_ok());
        }
        assert!("everything".parse::<Suite>().is_err());
    }
}
