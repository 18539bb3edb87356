//! Characters of `H(r,p,n)` through σ-twisted bitraces on `H(r,n)`-modules.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::content::{ContentModel, Mode};
use crate::cyclo::Cyclo;
use crate::error::{Error, Result};
use crate::laurent::Laurent;
use crate::mn::{mn_character, split_fields, ClassLabel, StandardElementSpec};
use crate::ratfn::Frac;
use crate::scalar::Scalar;
use crate::seminormal::{AlgebraWord, Letter};
use crate::shapes::{enumerate_tableaux, Cell, MultiPartition, Partition, Tableau};

/// `χ^{(λ,j)}`, with `λ` the least shape of its σ-orbit.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IrredLabelGP {
    shape: MultiPartition,
    j: usize,
}

impl IrredLabelGP {
    pub fn new(shape: &MultiPartition, j: usize, p: usize) -> Result<Self> {
        let (_, k) = shape.stabilizer(p);
        if j >= k {
            return Err(Error::InvalidArgument(format!("j = {j} must be below |K_λ| = {k} for {shape}")));
        }
        Ok(IrredLabelGP { shape: shape.orbit_representative(p), j })
    }

    pub fn shape(&self) -> &MultiPartition {
        &self.shape
    }

    pub fn j(&self) -> usize {
        self.j
    }

    /// One label per σ-orbit and per `j`, in shape order.
    pub fn all(r: usize, p: usize, n: u32) -> Vec<IrredLabelGP> {
        let mut reps: Vec<MultiPartition> =
            MultiPartition::all(r, n).into_iter().filter(|s| s.orbit_representative(p) == *s).collect();
        reps.dedup();
        reps.into_iter()
            .flat_map(|s| {
                let (_, k) = s.stabilizer(p);
                (0..k).map(move |j| IrredLabelGP { shape: s.clone(), j })
            })
            .collect()
    }
}

/// `S̃_{1ℓ_1}^{(i_1)} S_{ℓ_1+1,ℓ_2}^{(i_2)} ⋯` or the untilded product, optionally paired with `σ^{αf}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GPElementSpec {
    tilde: bool,
    spec: StandardElementSpec,
    alpha: Option<usize>,
}

impl GPElementSpec {
    pub fn new(tilde: bool, spec: StandardElementSpec, alpha: Option<usize>) -> Result<Self> {
        if tilde && spec.ell()[0] < 2 {
            return Err(Error::InvalidElement("the tilde form needs ℓ_1 ≥ 2".into()));
        }
        Ok(GPElementSpec { tilde, spec, alpha })
    }

    pub fn tilde(&self) -> bool {
        self.tilde
    }

    pub fn spec(&self) -> &StandardElementSpec {
        &self.spec
    }

    pub fn alpha(&self) -> Option<usize> {
        self.alpha
    }

    pub fn with_alpha(&self, alpha: Option<usize>) -> Self {
        GPElementSpec { alpha, ..self.clone() }
    }

    /// The word in `a_0, …, a_n` and `S_k`.
    pub fn word(&self) -> AlgebraWord {
        let mut w = AlgebraWord::new();
        for (b, (s, e, i)) in self.spec.blocks().enumerate() {
            w.push(Letter::S(s), i);
            if b == 0 && self.tilde {
                w.push(Letter::A(1), 1);
                for j in 3..=e {
                    w.push(Letter::A(j), 1);
                }
            } else {
                for j in s + 1..=e {
                    w.push(Letter::A(j), 1);
                }
            }
        }
        w
    }

    /// The `R`-word exponents and the power `e` with
    /// `χ^λ(Xσ^κ) = ε^{κe} χ^λ(Rσ^κ)`.
    pub fn reduce_to_r(&self, p: usize) -> (StandardElementSpec, i64) {
        let exps = self.spec.exps();
        let rest: i64 = exps[1..].iter().sum();
        let mut reduced = exps.to_vec();
        reduced[0] = exps[0] * p as i64 - rest;
        let spec = StandardElementSpec::new(self.spec.ell().to_vec(), reduced).expect("same ℓ");
        let prefactor = match (self.tilde, self.spec.ell()[0]) {
            (true, _) => 1 - rest,
            (false, 1) => 0,
            (false, _) => -rest,
        };
        (spec, prefactor)
    }
}

impl fmt::Display for GPElementSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} tilde={}", self.spec, u8::from(self.tilde))?;
        if let Some(a) = self.alpha {
            write!(f, " alpha={a}")?;
        }
        Ok(())
    }
}

impl FromStr for GPElementSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let fields = split_fields(s)?;
        if let Some(k) = fields.keys().find(|k| !["ell", "i", "tilde", "alpha"].contains(&k.as_str())) {
            return Err(Error::Parse(format!("unknown key `{k}`")));
        }
        let spec = StandardElementSpec::parse_fields(&fields)?;
        let tilde = match fields.get("tilde").map(String::as_str) {
            None | Some("0") => false,
            Some("1") => true,
            Some(v) => return Err(Error::Parse(format!("tilde must be 0 or 1, got `{v}`"))),
        };
        let alpha = fields
            .get("alpha")
            .map(|a| a.parse::<usize>().map_err(|_| Error::Parse(format!("bad alpha `{a}`"))))
            .transpose()?;
        Self::new(tilde, spec, alpha)
    }
}

/// Column family of the `H(r,p,n)` tables: every class label with color sum
/// `≡ 0 mod p`, as the untilded element reducing to the class's `R`-word, then
/// the tilded variant when `ℓ_1 ≥ 2` and `p > 1`.
pub fn canonical_gp_specs(r: usize, p: usize, n: u32) -> Vec<GPElementSpec> {
    let mut out = Vec::new();
    for c in ClassLabel::all(r, n) {
        let base = c.standard_element();
        let total: i64 = base.exps().iter().sum();
        if total % p as i64 != 0 {
            continue;
        }
        let mut exps = base.exps().to_vec();
        exps[0] = total / p as i64;
        let s = StandardElementSpec::new(base.ell().to_vec(), exps).expect("same ℓ");
        out.push(GPElementSpec::new(false, s.clone(), None).unwrap());
        if p > 1 && s.ell()[0] >= 2 {
            out.push(GPElementSpec::new(true, s, None).unwrap());
        }
    }
    out
}

/// Order of `ε^{αf_λ}`.
pub fn gamma_of(alpha: usize, k_size: usize) -> usize {
    k_size / alpha.gcd(&k_size)
}

fn hrpn_params<Q: Scalar>(model: &ContentModel<Q>) -> Result<(usize, usize)> {
    match model.mode() {
        Mode::Hrpn { r, p } => Ok((r, p)),
        m => Err(Error::InvalidArgument(format!("expected H(r,p,n) contents, got {m}"))),
    }
}

/// `λ̄^{(k,τ)} = λ^{(k,τ)}` for `τ < p/γ`.
pub fn bar_shape(shape: &MultiPartition, p: usize, gamma: usize) -> MultiPartition {
    let pbar = p / gamma;
    let d = shape.r() / p;
    let pick = |v: &[Partition]| -> Vec<Partition> {
        (0..d).flat_map(|k| (0..pbar).map(move |t| k * p + t)).map(|c| v[c].clone()).collect()
    };
    MultiPartition::skew(pick(shape.outer()), pick(shape.inner())).expect("components stay nested")
}

/// `[γ] = (q^γ − q^{−γ}) / (q − q^{−1})`.
pub fn quantum_int<Q: Scalar>(model: &ContentModel<Q>, gamma: usize) -> Frac<Q> {
    let q = Laurent::var(model.vars(), model.order(), "q").unwrap();
    let top = &q.pow(gamma as i64).unwrap() - &q.pow(-(gamma as i64)).unwrap();
    Frac::new(top, &q - &q.inv_unit().unwrap()).expect("q − q⁻¹ ≠ 0")
}

/// `Π_{i=1}^{γ−1} (q/(1 − ω̃^{−i}) + q⁻¹/(1 − ω̃^{i}))^{n̄}` with `ω̃ = ζ^{root}`
/// in the model's cyclotomic field.
pub fn c_constant<Q: Scalar>(model: &ContentModel<Q>, root: i64, gamma: usize, nbar: u32) -> Result<Frac<Q>> {
    let order = model.order();
    let q = Laurent::var(model.vars(), order, "q").unwrap();
    let qinv = q.inv_unit().unwrap();
    let one = Cyclo::<Q>::one();
    let mut block = model.one();
    for i in 1..gamma as i64 {
        let minus = (&one - &Cyclo::root_of_unity(order, -root * i)).inv()?;
        let plus = (&one - &Cyclo::root_of_unity(order, root * i)).inv()?;
        let factor = &q.scale(&minus) + &qinv.scale(&plus);
        block = &block * &Frac::from_poly(factor);
    }
    block.pow(nbar as i64)
}

/// `χ^λ(h σ^{αf_λ})` for `h = R_{1,ℓ_1}^{(i_1)} ⋯`, in closed form.
pub fn bitrace_closed<Q: Scalar>(
    model: &ContentModel<Q>,
    shape: &MultiPartition,
    r_word: &StandardElementSpec,
    alpha: usize,
) -> Result<Frac<Q>> {
    let (r, p) = hrpn_params(model)?;
    let (f, k) = shape.stabilizer(p);
    if alpha >= k {
        return Err(Error::InvalidArgument(format!("α = {alpha} must be below |K_λ| = {k}")));
    }
    if r_word.exps().iter().sum::<i64>().rem_euclid(p as i64) != 0 {
        return Err(Error::InvalidElement(format!("{r_word} is not in H({r},{p},n): exponent sum ≢ 0 mod {p}")));
    }
    let gamma = gamma_of(alpha, k);
    if gamma == 1 {
        return mn_character(model, shape, r_word);
    }
    let g = gamma as i64;
    if r_word.ell().iter().any(|&l| l % gamma != 0) || r_word.exps().iter().any(|&i| i % g != 0) {
        return Ok(model.zero());
    }
    let bar = ContentModel::bar(r, p, gamma)?;
    let bar_spec = StandardElementSpec::new(
        r_word.ell().iter().map(|l| l / gamma).collect(),
        r_word.exps().iter().map(|i| i / g).collect(),
    )?;
    let chi_bar = mn_character(&bar, &bar_shape(shape, p, gamma), &bar_spec)?;
    let nbar = shape.size() / gamma as u32;
    let m = r_word.len() as i64;
    let kappa = (alpha * f) as i64;
    let d = (r / p) as i64;
    let c = c_constant(model, d * kappa, gamma, nbar)?;
    let gpow = model.int(g.pow(nbar));
    let bracket = quantum_int(model, gamma).pow(nbar as i64 - m)?;
    Ok(&(&(&c * &gpow) / &bracket) * &chi_bar)
}

/// `χ^λ(X σ^{αf_λ})` for an `S`/`S̃` element `X`, via its `R`-word.
pub fn bitrace_of_spec<Q: Scalar>(
    model: &ContentModel<Q>,
    shape: &MultiPartition,
    spec: &GPElementSpec,
    alpha: usize,
) -> Result<Frac<Q>> {
    let (r, p) = hrpn_params(model)?;
    let (f, _) = shape.stabilizer(p);
    let (r_word, e) = spec.reduce_to_r(p);
    let value = bitrace_closed(model, shape, &r_word, alpha)?;
    let kappa = (alpha * f) as i64;
    Ok(value.scale(&Cyclo::root_of_unity(model.order(), (r / p) as i64 * kappa * e)))
}

/// `χ^{(λ,j)}(X) = (1/|K_λ|) Σ_α ε^{−jαf_λ} χ^λ(X σ^{αf_λ})`.
pub fn chi_irreducible<Q: Scalar>(
    model: &ContentModel<Q>,
    label: &IrredLabelGP,
    spec: &GPElementSpec,
) -> Result<Frac<Q>> {
    let (r, p) = hrpn_params(model)?;
    let shape = label.shape();
    let (f, k) = shape.stabilizer(p);
    let d = (r / p) as i64;
    let mut acc = model.zero();
    for alpha in 0..k {
        let kappa = (alpha * f) as i64;
        let twist = Cyclo::root_of_unity(model.order(), -d * label.j() as i64 * kappa);
        acc = &acc + &bitrace_of_spec(model, shape, spec, alpha)?.scale(&twist);
    }
    Ok(acc.scale(&Cyclo::from_rational(Q::one() / Q::from_int(k as i64))))
}

/// A κ-laced tableau with its coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LacedTableau {
    pub tableau: Tableau,
    pub rho: Vec<usize>,
    pub d: Vec<usize>,
    pub quotient: Tableau,
}

/// `w_1 L`: entry `j` moves to where `j − 1` was, cyclically in blocks of `γ`.
pub fn lace_shift(l: &Tableau, gamma: usize) -> Tableau {
    let cells = l.cells();
    let shifted = (0..cells.len())
        .map(|j| {
            let base = j - j % gamma;
            cells[base + (j % gamma + gamma - 1) % gamma]
        })
        .collect();
    Tableau::from_cells(shifted)
}

/// All `L` with `σ^{−κ}L = w_1 L`, with `ρ`, `d` (relative to the blocks `ell`) and `L̄`.
pub fn kappa_laced_tableaux(
    shape: &MultiPartition,
    p: usize,
    kappa: usize,
    ell: &[usize],
) -> Result<Vec<LacedTableau>> {
    let gamma = p / kappa.gcd(&p);
    let n = shape.size() as usize;
    if !n.is_multiple_of(gamma) {
        return Err(Error::InvalidArgument(format!("γ = {gamma} does not divide n = {n}")));
    }
    let pbar = p / gamma;
    let ell_bar: Vec<usize> = ell.iter().filter(|l| *l % gamma == 0).map(|l| l / gamma).collect();
    let mut out = Vec::new();
    for l in enumerate_tableaux(shape) {
        if l.sigma_shift(p, -(kappa as i64)) != lace_shift(&l, gamma) {
            continue;
        }
        let mut rho = Vec::with_capacity(n / gamma);
        let mut bar_cells = Vec::with_capacity(n / gamma);
        for m in 1..=n / gamma {
            let b = l.cell(m * gamma);
            let (k, slot) = (b.comp / p, b.comp % p);
            rho.push(slot / pbar);
            bar_cells.push(Cell::new(k * pbar + slot % pbar, b.row, b.col));
        }
        let d = (0..rho.len())
            .map(|j| {
                if j == 0 || ell_bar.contains(&j) {
                    rho[j] % gamma
                } else {
                    (rho[j - 1] + gamma - rho[j]) % gamma
                }
            })
            .collect();
        out.push(LacedTableau { tableau: l, rho, d, quotient: Tableau::from_cells(bar_cells) });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seminormal::SeminormalRep;
    use num_rational::BigRational;

    type M = ContentModel<BigRational>;

    fn mp(s: &str) -> MultiPartition {
        s.parse().unwrap()
    }

    fn gp(s: &str) -> GPElementSpec {
        s.parse().unwrap()
    }

    #[test]
    fn gamma_examples() {
        assert_eq!(gamma_of(0, 3), 1);
        assert_eq!(gamma_of(1, 2), 2);
        assert_eq!(gamma_of(2, 4), 2);
        assert_eq!(gamma_of(3, 6), 2);
    }

    #[test]
    fn reductions() {
        let (r, e) = gp("ell=2 i=1 tilde=1").reduce_to_r(2);
        assert_eq!((r.exps().to_vec(), e), (vec![2], 1));
        let (r, e) = gp("ell=2 i=0").reduce_to_r(2);
        assert_eq!((r.exps().to_vec(), e), (vec![0], 0));
        let (r, e) = gp("ell=2,3 i=1,1").reduce_to_r(2);
        assert_eq!((r.exps().to_vec(), e), (vec![1, 1], -1));
        let (_, e) = gp("ell=1,3 i=1,1").reduce_to_r(2);
        assert_eq!(e, 0);
        assert!("ell=1 i=0 tilde=1".parse::<GPElementSpec>().is_err());
        assert_eq!(gp("ell=2 i=1 tilde=1 alpha=1").to_string(), "ell=2 i=1 tilde=1 alpha=1");
        assert_eq!(gp("ell=2,3 i=0,1").word().to_string(), "a2 S3");
        assert_eq!(gp("ell=3 i=1 tilde=1").word().to_string(), "S1 a1 a3");
    }

    #[test]
    fn c_constant_is_quantum_integer_over_gamma() {
        for gamma in 1..=4usize {
            let m = M::hrpn(gamma.max(1), gamma).unwrap();
            let c = c_constant(&m, 1, gamma, 1).unwrap();
            let expected = quantum_int(&m, gamma).scale(&Cyclo::from_rational(BigRational::new(1.into(), (gamma as i64).into())));
            assert_eq!(c, expected, "γ = {gamma}");
        }
        let m = M::hrpn(2, 2).unwrap();
        assert_eq!(c_constant(&m, 1, 2, 1).unwrap(), Frac::parse(m.vars(), 2, "[(1/2)*q^2 + (1/2)]/[(1)*q^1]").unwrap());
    }

    #[test]
    fn two_by_two_examples() {
        let m = M::hrpn(2, 2).unwrap();
        let lam = mp("1|1");
        let q = Frac::from_poly(m.q().clone());
        let qinv = Frac::from_poly(m.q().inv_unit().unwrap());
        let full = "ell=2 i=0".parse().unwrap();
        assert_eq!(bitrace_closed(&m, &lam, &full, 1).unwrap(), &q + &qinv);
        assert!(bitrace_closed(&m, &lam, &"ell=1,2 i=0,0".parse().unwrap(), 1).unwrap().is_zero());
        let a2 = gp("ell=2 i=0");
        assert_eq!(chi_irreducible(&m, &IrredLabelGP::new(&lam, 0, 2).unwrap(), &a2).unwrap(), q);
        assert_eq!(chi_irreducible(&m, &IrredLabelGP::new(&lam, 1, 2).unwrap(), &a2).unwrap(), -&qinv);
        assert!(bitrace_closed(&m, &lam, &"ell=2 i=1".parse().unwrap(), 0).is_err());
    }

    #[test]
    fn irreducible_labels() {
        let labels = IrredLabelGP::all(2, 2, 2);
        let names: Vec<String> = labels.iter().map(|l| format!("{} {}", l.shape(), l.j())).collect();
        assert_eq!(names.len(), 4);
        assert!(names.contains(&"1|1 0".to_string()) && names.contains(&"1|1 1".to_string()));
        assert!(IrredLabelGP::new(&mp("2|-"), 1, 2).is_err());
        assert_eq!(IrredLabelGP::new(&mp("-|2"), 0, 2).unwrap().shape(), &mp("-|2"));
    }

    fn oracle_check(r: usize, p: usize, n: u32) {
        let m = M::hrpn(r, p).unwrap();
        for shape in MultiPartition::all(r, n) {
            let rep = SeminormalRep::build(&shape, &m).unwrap();
            let (_, k) = shape.stabilizer(p);
            for spec in canonical_gp_specs(r, p, n) {
                for alpha in 0..k {
                    let closed = bitrace_of_spec(&m, &shape, &spec, alpha).unwrap();
                    let oracle = rep.twisted_bitrace(&spec.word(), alpha).unwrap();
                    assert_eq!(closed, oracle, "{shape} {spec} α={alpha}");
                    let (rw, _) = spec.reduce_to_r(p);
                    let r_closed = bitrace_closed(&m, &shape, &rw, alpha).unwrap();
                    let r_oracle = rep.twisted_bitrace(&rw.word(), alpha).unwrap();
                    assert_eq!(r_closed, r_oracle, "{shape} {rw} α={alpha}");
                }
            }
        }
    }

    #[test]
    fn closed_bitraces_match_oracle() {
        oracle_check(2, 2, 2);
        oracle_check(2, 2, 3);
        oracle_check(4, 4, 2);
        oracle_check(3, 3, 3);
    }

    #[test]
    fn laced_tableaux_biject_with_quotients() {
        for (r, p, n) in [(2, 2, 2), (2, 2, 4), (4, 2, 4), (4, 4, 4), (3, 3, 3)] {
            for shape in MultiPartition::all(r, n) {
                let (f, k) = shape.stabilizer(p);
                for alpha in 0..k {
                    let kappa = alpha * f;
                    let gamma = gamma_of(alpha, k);
                    if !(n as usize).is_multiple_of(gamma) {
                        continue;
                    }
                    let laced = kappa_laced_tableaux(&shape, p, kappa, &[n as usize]).unwrap();
                    let bar = bar_shape(&shape, p, gamma);
                    let quotients = enumerate_tableaux(&bar).len();
                    assert_eq!(laced.len(), gamma.pow(n / gamma as u32) * quotients, "{shape} κ={kappa}");
                    let mut keys: Vec<_> = laced.iter().map(|t| (t.d.clone(), t.quotient.clone())).collect();
                    keys.sort();
                    keys.dedup();
                    assert_eq!(keys.len(), laced.len());
                    let m = M::hrpn(r, p).unwrap();
                    let eps = |e: i64| Cyclo::root_of_unity(r as u32, (r / p) as i64 * e);
                    for t in &laced {
                        assert!(t.quotient.is_standard(&bar));
                        for j in 1..=n as usize {
                            let top = j.div_ceil(gamma) * gamma;
                            let expected = m.content(&t.tableau.cell(top)).scale(&eps(-((top - j) as i64) * kappa as i64));
                            assert_eq!(m.content(&t.tableau.cell(j)), expected);
                        }
                    }
                }
            }
        }
        let m = mp("1|1");
        let laced = kappa_laced_tableaux(&m, 2, 1, &[2]).unwrap();
        assert_eq!(laced.len(), 2);
        assert!(laced.iter().all(|t| t.quotient.len() == 1));
    }

    /// `F_j` read off the matrices agrees with the per-box closed values.
    #[test]
    fn per_box_factors() {
        let (r, p) = (2, 2);
        let m = M::hrpn(r, p).unwrap();
        let shape = mp("2|2");
        let rep = SeminormalRep::build(&shape, &m).unwrap();
        let (f, k) = shape.stabilizer(p);
        assert_eq!(k, 2);
        let kappa = f;
        let gamma = 2;
        let n = 4;
        let ell = [2usize, 4];
        let omega = |e: i64| Cyclo::root_of_unity(r as u32, (r / p) as i64 * kappa as i64 * e);
        let one = Cyclo::<BigRational>::one();
        let q = m.q().clone();
        let qinv = q.inv_unit().unwrap();
        // w_j L as a tableau, applying s_i for i ≥ j, γ ∤ i − 1, rightmost first.
        let w = |j: usize, t: &Tableau| -> Tableau {
            let mut out = t.clone();
            for i in (j.max(2)..=n).rev().filter(|i| (i - 1) % gamma != 0) {
                out = out.swap(i);
            }
            out
        };
        for laced in kappa_laced_tableaux(&shape, p, kappa, &ell).unwrap() {
            let l = &laced.tableau;
            for j in 2..=n {
                let t = rep.letter_matrix(Letter::T(j), 1).unwrap();
                let kk = j.div_ceil(gamma);
                if (j - 1) % gamma != 0 {
                    let row = rep.index_of(&w(j, l)).unwrap();
                    let col = rep.index_of(&w(j + 1, l)).unwrap();
                    let e = (kk * gamma + 1 - j) as i64;
                    let closed = &q.scale(&(&one - &omega(-e)).inv().unwrap()) + &qinv.scale(&(&one - &omega(e)).inv().unwrap());
                    assert_eq!(t.get(row, col).unwrap(), &Frac::from_poly(closed));
                } else if !ell.contains(&(j - 1)) {
                    let idx = rep.index_of(&w(j + 1, l)).unwrap();
                    // Contents of the quotient come from λ̄ read inside the full ring.
                    let top = rep.content(idx, j);
                    let prev = rep.content(idx, j - 1);
                    let dk = laced.d[kk - 1] as i64;
                    let lbar = |i: usize| {
                        let c = laced.quotient.cell(i);
                        let (kq, tau) = (c.comp / (p / gamma), c.comp % (p / gamma));
                        m.content(&Cell::new(kq * p + tau, c.row, c.col))
                    };
                    let w_ratio = (&lbar(kk - 1) * &lbar(kk).inv_unit().unwrap())
                        .scale(&Cyclo::root_of_unity(r as u32, (r / p) as i64 * (p / gamma) as i64 * dk));
                    assert_eq!(prev * &top.inv_unit().unwrap(), w_ratio);
                    assert_eq!(t.get(idx, idx).unwrap(), &m.t_diag(prev, top));
                }
            }
        }
    }
}
