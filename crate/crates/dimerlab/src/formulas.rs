//! Closed-form product formulas, evaluated exactly and checked against the
//! counting engines over parameter grids.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, ToPrimitive, Zero};

use crate::analytics::{exact_sqrt, hexagon_moments, inverse_entry_sum, pillow_series, transfer_count, PillowKind};
use crate::error::{domain, Error, Result};
use crate::kasteleyn::count_int;
use crate::region::{generate, Family, RegionSpec};

/// Every formula the registry knows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FormulaId {
    MacMahon,
    Aztec,
    Gcz,
    Dragon,
    Fortress,
    AztecDungeon,
    HexDungeon,
    InverseSum,
    MomentH,
    KasteleynProduct,
    SecondQuotient,
    PillowGf,
}

const FORMULAS: &[(FormulaId, &str, &[&str], &str)] = &[
    (FormulaId::MacMahon, "macmahon", &["a", "b", "c"], "prod (i+j+k-1)/(i+j+k-2) over the a x b x c box"),
    (FormulaId::Aztec, "aztec", &["n"], "2^(n(n+1)/2)"),
    (FormulaId::Gcz, "gcz", &["N"], "2^(N/4), N = number of cells"),
    (FormulaId::Dragon, "dragon", &["n"], "2^(n(n+1))"),
    (FormulaId::Fortress, "fortress", &["n"], "5^(n^2/4) (n even); 2^[n=1 mod 4] 5^((n^2-1)/4) (n odd)"),
    (FormulaId::AztecDungeon, "aztec_dungeon", &["n"], "13^((n+1)^2/3) (n=2 mod 3); 13^(n(n+2)/3) otherwise"),
    (FormulaId::HexDungeon, "hex_dungeon", &["a", "b"], "13^(2a^2) 14^floor(a^2/2), b >= 2a"),
    (FormulaId::InverseSum, "inverse_sum", &["n"], "(n-1)(n+3)/2 - 2^(n-1) + 2"),
    (FormulaId::MomentH, "moment_h", &["n"], "(n^4 - n^2)/6"),
    (
        FormulaId::KasteleynProduct,
        "kasteleyn_product",
        &["a", "b"],
        "prod (4cos^2(pi j/(a+1)) + 4cos^2(pi k/(b+1)))^(1/4)",
    ),
    (
        FormulaId::SecondQuotient,
        "second_quotient_formula",
        &["n"],
        "(27/64)(3n-2)(3n-1)^2(3n+1)^2(3n+2)/((2n-1)^3(2n+1)^3)",
    ),
    (FormulaId::PillowGf, "pillow_gf", &["kind", "n"], "coefficient of the pillow generating function (kind 0 or 2)"),
];

impl FormulaId {
    fn entry(self) -> &'static (FormulaId, &'static str, &'static [&'static str], &'static str) {
        FORMULAS.iter().find(|e| e.0 == self).expect("every formula is registered")
    }

    pub fn name(self) -> &'static str {
        self.entry().1
    }

    pub fn params(self) -> &'static [&'static str] {
        self.entry().2
    }

    pub fn description(self) -> &'static str {
        self.entry().3
    }

    pub fn all() -> impl Iterator<Item = FormulaId> {
        FORMULAS.iter().map(|e| e.0)
    }
}

impl FromStr for FormulaId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FORMULAS.iter().find(|e| e.1 == s).map(|e| e.0).ok_or_else(|| Error::Parse(format!("unknown formula '{s}'")))
    }
}

impl fmt::Display for FormulaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn int(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

fn pow(base: u32, exp: u64) -> BigRational {
    int(BigInt::from(base).pow(exp as u32))
}

fn check_arity(id: FormulaId, params: &[i64]) -> Result<()> {
    if params.len() != id.params().len() {
        return Err(Error::Parameter(format!(
            "{id} takes {} parameters ({}), got {}",
            id.params().len(),
            id.params().join(", "),
            params.len()
        )));
    }
    if let Some(p) = params.iter().find(|&&p| p < 0) {
        return Err(Error::Parameter(format!("{id}: parameters must be nonnegative, got {p}")));
    }
    Ok(())
}

fn macmahon(a: i64, b: i64, c: i64) -> BigRational {
    let mut r = BigRational::one();
    for i in 1..=a {
        for j in 1..=b {
            for k in 1..=c {
                r *= BigRational::new((i + j + k - 1).into(), (i + j + k - 2).into());
            }
        }
    }
    r
}

/// Evaluates a formula exactly.
pub fn evaluate(id: FormulaId, params: &[i64]) -> Result<BigRational> {
    check_arity(id, params)?;
    let p = |i: usize| params[i];
    let n = params.first().copied().unwrap_or(0) as u64;
    Ok(match id {
        FormulaId::MacMahon => macmahon(p(0), p(1), p(2)),
        FormulaId::Aztec => pow(2, n * (n + 1) / 2),
        FormulaId::Gcz => {
            if !n.is_multiple_of(4) {
                return domain(format!("gcz: N = {n} is not a multiple of 4"));
            }
            pow(2, n / 4)
        }
        FormulaId::Dragon => pow(2, n * (n + 1)),
        FormulaId::Fortress => {
            if n.is_multiple_of(2) {
                pow(5, n * n / 4)
            } else if n % 4 == 1 {
                pow(5, (n * n - 1) / 4) * int(2)
            } else {
                pow(5, (n * n - 1) / 4)
            }
        }
        FormulaId::AztecDungeon => {
            if n % 3 == 2 {
                pow(13, (n + 1) * (n + 1) / 3)
            } else {
                pow(13, n * (n + 2) / 3)
            }
        }
        FormulaId::HexDungeon => {
            let (a, b) = (p(0) as u64, p(1) as u64);
            if b < 2 * a {
                return domain(format!("hex_dungeon needs b >= 2a, got a={a}, b={b}"));
            }
            pow(13, 2 * a * a) * pow(14, a * a / 2)
        }
        FormulaId::InverseSum => {
            if n == 0 {
                return domain("inverse_sum needs n >= 1");
            }
            let n = n as i64;
            BigRational::new(((n - 1) * (n + 3)).into(), 2.into()) - pow(2, n as u64 - 1) + int(2)
        }
        FormulaId::MomentH => {
            let n = BigInt::from(n);
            BigRational::new(n.pow(4) - &n * &n, 6.into())
        }
        FormulaId::KasteleynProduct => int(kasteleyn_product(p(0) as usize, p(1) as usize)?),
        FormulaId::SecondQuotient => {
            if n == 0 {
                return domain("second_quotient_formula needs n >= 1");
            }
            let m = n as i64;
            let num = BigInt::from(27)
                * (3 * m - 2)
                * BigInt::from(3 * m - 1).pow(2)
                * BigInt::from(3 * m + 1).pow(2)
                * (3 * m + 2);
            let den = BigInt::from(64) * BigInt::from(2 * m - 1).pow(3) * BigInt::from(2 * m + 1).pow(3);
            BigRational::new(num, den)
        }
        FormulaId::PillowGf => {
            let kind = pillow_kind(p(0))?;
            let order = p(1) as u64;
            if order < kind.offset() {
                return domain(format!("pillow_gf: the series starts at order {}", kind.offset()));
            }
            let idx = (order - kind.offset()) as usize;
            int(pillow_series(kind, idx + 1).pop().expect("nonempty series"))
        }
    })
}

fn pillow_kind(k: i64) -> Result<PillowKind> {
    match k {
        0 => Ok(PillowKind::ZeroMod4),
        2 => Ok(PillowKind::TwoMod4),
        _ => Err(Error::Parameter(format!("pillow kind must be 0 or 2, got {k}"))),
    }
}

/// Domino tilings of the `a × b` rectangle from the trigonometric product,
/// evaluated in floating point with a rigorous error bound. The result is
/// returned only when the enclosing interval is narrower than 1/4 and
/// contains exactly one integer.
pub fn kasteleyn_product(a: usize, b: usize) -> Result<BigInt> {
    if a == 0 || b == 0 {
        return Ok(BigInt::one());
    }
    if a % 2 == 1 && b % 2 == 1 {
        // The factor with j = (a+1)/2, k = (b+1)/2 vanishes.
        return Ok(BigInt::zero());
    }
    // Each cosine carries an absolute error of a few ulps, so a factor
    // t = 4cj² + 4ck² has relative error at most ~46ε/√t; every
    // multiplication adds one more rounding.
    let pi = std::f64::consts::PI;
    let eps = f64::EPSILON;
    let mut product = 1.0f64;
    let mut rel = 0.0f64;
    for j in 1..=a {
        let cj = (pi * j as f64 / (a + 1) as f64).cos();
        for k in 1..=b {
            let ck = (pi * k as f64 / (b + 1) as f64).cos();
            let t = 4.0 * cj * cj + 4.0 * ck * ck;
            product *= t;
            rel += 64.0 * eps / t.sqrt() + 4.0 * eps;
        }
    }
    if !product.is_finite() {
        return Err(Error::Limit(format!("{a} x {b} product is out of floating-point range")));
    }
    // The fourth root quarters the relative error and adds a few ulps.
    let root = product.sqrt().sqrt();
    let rel = rel / 4.0 + 4.0 * eps;
    let lo = root * (1.0 - rel);
    let hi = root * (1.0 + rel);
    if hi - lo >= 0.25 {
        return Err(Error::Limit(format!("{a} x {b}: enclosure [{lo}, {hi}] too wide to certify an integer")));
    }
    let candidate = lo.ceil();
    if candidate > hi {
        return domain(format!("{a} x {b}: enclosure [{lo}, {hi}] contains no single integer"));
    }
    BigInt::from_f64(candidate).ok_or_else(|| Error::Domain(format!("{candidate} is not an integer")))
}

fn region_count(family: Family, params: &[i64]) -> Result<BigRational> {
    let p: Vec<u64> = params.iter().map(|&x| x as u64).collect();
    Ok(int(count_int(&generate(&RegionSpec::new(family, &p))?)?))
}

/// The independently computed value a formula is checked against, when
/// one exists.
pub fn computed(id: FormulaId, params: &[i64]) -> Result<Option<BigRational>> {
    check_arity(id, params)?;
    let n = params.first().copied().unwrap_or(0);
    Ok(Some(match id {
        FormulaId::MacMahon => region_count(Family::Hexagon, params)?,
        FormulaId::Aztec => region_count(Family::AztecDiamond, params)?,
        FormulaId::Gcz => {
            // N = 2m(m+1) cells.
            let m = (0..).find(|&m: &i64| 2 * m * (m + 1) >= n).expect("unbounded search");
            if 2 * m * (m + 1) != n {
                return domain(format!("gcz: no Aztec diamond has {n} cells"));
            }
            region_count(Family::AztecDiamond, &[m])?
        }
        FormulaId::Dragon => region_count(Family::Dragon, params)?,
        FormulaId::Fortress => region_count(Family::Fortress, params)?,
        FormulaId::AztecDungeon => region_count(Family::AztecDungeon, params)?,
        FormulaId::HexDungeon => region_count(Family::HexagonalDungeon, params)?,
        FormulaId::InverseSum => inverse_entry_sum(n as u64)?,
        FormulaId::MomentH => hexagon_moments(n as u64)?.0,
        FormulaId::KasteleynProduct => int(transfer_count(params[0] as usize, params[1] as usize)?),
        FormulaId::SecondQuotient => {
            if n < 2 {
                return domain("the second quotient needs n >= 2");
            }
            let s: Vec<BigRational> =
                (n - 1..=n + 1).map(|m| region_count(Family::Hexagon, &[m, m, m])).collect::<Result<_>>()?;
            &s[0] * &s[2] / (&s[1] * &s[1])
        }
        FormulaId::PillowGf => {
            let kind = pillow_kind(params[0])?;
            let count = region_count(kind.family(), &params[1..])?.to_integer();
            let coeff = evaluate(id, params)?.to_integer();
            // Strip the largest square factor s² with count = s² · coeff.
            if !coeff.is_zero() && (&count % &coeff).is_zero() {
                if let Some(s) = exact_sqrt(&(&count / &coeff)) {
                    return Ok(Some(int(&count / (&s * &s))));
                }
            }
            int(count)
        }
    }))
}

/// One grid point of a verification run.
#[derive(Clone, Debug, PartialEq)]
pub struct VerificationLine {
    pub params: Vec<i64>,
    pub formula: Option<BigRational>,
    pub count: Option<BigRational>,
    pub error: Option<String>,
}

impl VerificationLine {
    pub fn matches(&self) -> bool {
        self.error.is_none() && self.formula.is_some() && self.formula == self.count
    }
}

/// Formula-versus-count table over a grid.
#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub id: FormulaId,
    pub lines: Vec<VerificationLine>,
}

impl VerificationReport {
    pub fn all_match(&self) -> bool {
        self.lines.iter().all(VerificationLine::matches)
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &VerificationLine> {
        self.lines.iter().filter(|l| !l.matches())
    }
}

fn show(x: &Option<BigRational>) -> String {
    x.as_ref().map_or("-".into(), |v| v.to_string())
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.id.params();
        for l in &self.lines {
            let params: Vec<String> = names.iter().zip(&l.params).map(|(n, v)| format!("{n}={v}")).collect();
            let verdict = match &l.error {
                Some(e) => format!("error: {e}"),
                None if l.matches() => "match".into(),
                None => "MISMATCH".into(),
            };
            writeln!(f, "{}  formula={}  count={}  {}", params.join(" "), show(&l.formula), show(&l.count), verdict)?;
        }
        let bad = self.mismatches().count();
        write!(f, "{}: {} points, {} mismatches", self.id, self.lines.len(), bad)
    }
}

/// Evaluates `id` and its counting backend at every grid point. Failures
/// at individual points are recorded as mismatches, not propagated.
pub fn verify(id: FormulaId, grid: &Grid) -> Result<VerificationReport> {
    if grid.vars.len() != id.params().len() {
        return Err(Error::Parameter(format!(
            "{id} takes parameters {}; the grid defines {}",
            id.params().join(", "),
            grid.vars.iter().map(|v| v.name.as_str()).collect::<Vec<_>>().join(", ")
        )));
    }
    let lines = grid
        .points()?
        .into_iter()
        .map(|params| {
            let formula = evaluate(id, &params);
            let count = computed(id, &params);
            let error = match (&formula, &count) {
                (Err(e), _) | (_, Err(e)) => Some(e.to_string()),
                (_, Ok(None)) => Some("no counting backend".into()),
                _ => None,
            };
            VerificationLine { params, formula: formula.ok(), count: count.ok().flatten(), error }
        })
        .collect();
    Ok(VerificationReport { id, lines })
}

/// Parses `id` and `grid` text and runs [`verify`].
pub fn verify_str(id: &str, grid: &str) -> Result<VerificationReport> {
    verify(id.parse()?, &grid.parse()?)
}

/// `c₀ + Σ cᵢ·varᵢ` over previously defined grid variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearExpr {
    pub constant: i64,
    pub terms: Vec<(usize, i64)>,
}

impl LinearExpr {
    fn eval(&self, env: &[i64]) -> i64 {
        self.constant + self.terms.iter().map(|&(v, c)| c * env[v]).sum::<i64>()
    }

    fn parse(s: &str, known: &[String]) -> Result<LinearExpr> {
        let err = |m: String| Error::Parse(format!("bad expression '{s}': {m}"));
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(err("empty".into()));
        }
        let mut expr = LinearExpr { constant: 0, terms: Vec::new() };
        let mut rest = s.as_str();
        let mut first = true;
        while !rest.is_empty() {
            let mut sign = 1;
            if let Some(r) = rest.strip_prefix('+') {
                rest = r;
            } else if let Some(r) = rest.strip_prefix('-') {
                sign = -1;
                rest = r;
            } else if !first {
                return Err(err("expected + or -".into()));
            }
            first = false;
            let digits = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
            let coef: Option<i64> = if digits > 0 {
                Some(rest[..digits].parse().map_err(|_| err("number too large".into()))?)
            } else {
                None
            };
            rest = &rest[digits..];
            if coef.is_some() {
                rest = rest.strip_prefix('*').unwrap_or(rest);
            }
            let ident = rest.find(|c: char| !(c.is_ascii_alphanumeric() || c == '_')).unwrap_or(rest.len());
            if ident == 0 {
                match coef {
                    Some(c) => expr.constant += sign * c,
                    None => return Err(err("expected a number or variable".into())),
                }
                continue;
            }
            let name = &rest[..ident];
            rest = &rest[ident..];
            let var = known
                .iter()
                .position(|k| k == name)
                .ok_or_else(|| err(format!("'{name}' is not an earlier variable")))?;
            expr.terms.push((var, sign * coef.unwrap_or(1)));
        }
        Ok(expr)
    }
}

/// One grid variable ranging over `lo..=hi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridVar {
    pub name: String,
    pub lo: LinearExpr,
    pub hi: LinearExpr,
}

/// A parameter grid such as `a=1..3 b=2a..2a+2 c=a`; later bounds may be
/// linear in earlier variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grid {
    pub vars: Vec<GridVar>,
}

/// Upper bound on the number of points a grid may expand to.
pub const MAX_GRID_POINTS: usize = 100_000;

impl Grid {
    /// Every point in lexicographic order of the variables.
    pub fn points(&self) -> Result<Vec<Vec<i64>>> {
        let mut out = Vec::new();
        let mut env = Vec::with_capacity(self.vars.len());
        self.expand(&mut env, &mut out)?;
        Ok(out)
    }

    fn expand(&self, env: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) -> Result<()> {
        let Some(var) = self.vars.get(env.len()) else {
            if out.len() >= MAX_GRID_POINTS {
                return Err(Error::Limit(format!("grid has more than {MAX_GRID_POINTS} points")));
            }
            out.push(env.clone());
            return Ok(());
        };
        for x in var.lo.eval(env)..=var.hi.eval(env) {
            env.push(x);
            self.expand(env, out)?;
            env.pop();
        }
        Ok(())
    }
}

impl FromStr for Grid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Grid> {
        let mut names: Vec<String> = Vec::new();
        let mut vars = Vec::new();
        for item in s.split_whitespace() {
            let (name, range) =
                item.split_once('=').ok_or_else(|| Error::Parse(format!("expected name=range, got '{item}'")))?;
            if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(Error::Parse(format!("bad variable name '{name}'")));
            }
            if names.iter().any(|n| n == name) {
                return Err(Error::Parse(format!("variable '{name}' defined twice")));
            }
            let (lo, hi) = match range.split_once("..") {
                Some((lo, hi)) => (LinearExpr::parse(lo, &names)?, LinearExpr::parse(hi, &names)?),
                None => {
                    let e = LinearExpr::parse(range, &names)?;
                    (e.clone(), e)
                }
            };
            vars.push(GridVar { name: name.to_string(), lo, hi });
            names.push(name.to_string());
        }
        if vars.is_empty() {
            return Err(Error::Parse("empty grid".into()));
        }
        Ok(Grid { vars })
    }
}

/// Approximate value, for display next to exact rationals.
pub fn approx(x: &BigRational) -> f64 {
    x.numer().to_f64().unwrap_or(f64::NAN) / x.denom().to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn registry_round_trips() {
        for id in FormulaId::all() {
            assert_eq!(id.name().parse::<FormulaId>().unwrap(), id);
        }
        assert!("nope".parse::<FormulaId>().unwrap_err().is_parse());
    }

    #[test]
    fn exact_values() {
        assert_eq!(evaluate(FormulaId::MacMahon, &[2, 2, 2]).unwrap(), q(20, 1));
        assert_eq!(evaluate(FormulaId::Aztec, &[4]).unwrap(), q(1024, 1));
        assert_eq!(evaluate(FormulaId::Gcz, &[24]).unwrap(), q(64, 1));
        assert_eq!(evaluate(FormulaId::Fortress, &[5]).unwrap(), q(2 * 5i64.pow(6), 1));
        assert_eq!(evaluate(FormulaId::Fortress, &[4]).unwrap(), q(625, 1));
        assert_eq!(evaluate(FormulaId::AztecDungeon, &[2]).unwrap(), q(13i64.pow(3), 1));
        assert_eq!(evaluate(FormulaId::InverseSum, &[1]).unwrap(), q(1, 1));
        assert_eq!(evaluate(FormulaId::InverseSum, &[2]).unwrap(), q(5, 2));
        assert_eq!(evaluate(FormulaId::MomentH, &[3]).unwrap(), q(12, 1));
        assert_eq!(evaluate(FormulaId::SecondQuotient, &[2]).unwrap(), q(49, 10));
        assert_eq!(evaluate(FormulaId::PillowGf, &[0, 1]).unwrap(), q(5, 1));
    }

    #[test]
    fn second_quotient_formula_is_even() {
        for n in 1..6 {
            // Substituting n -> -n permutes the factors.
            let m = n as i64;
            let f = |m: i64| {
                q(27, 64) * q((3 * m - 2) * (3 * m - 1).pow(2) * (3 * m + 1).pow(2) * (3 * m + 2), 1)
                    / q(((2 * m - 1) * (2 * m + 1)).pow(3), 1)
            };
            assert_eq!(f(m), f(-m));
            assert_eq!(evaluate(FormulaId::SecondQuotient, &[m]).unwrap(), f(m));
        }
    }

    #[test]
    fn arity_and_domain_errors() {
        assert!(matches!(evaluate(FormulaId::Aztec, &[1, 2]), Err(Error::Parameter(_))));
        assert!(matches!(evaluate(FormulaId::Gcz, &[6]), Err(Error::Domain(_))));
        assert!(matches!(evaluate(FormulaId::PillowGf, &[1, 3]), Err(Error::Parameter(_))));
    }

    #[test]
    fn trig_product_certifies() {
        assert_eq!(kasteleyn_product(2, 3).unwrap(), 3.into());
        assert_eq!(kasteleyn_product(8, 8).unwrap(), 12988816.into());
        assert_eq!(kasteleyn_product(3, 5).unwrap(), 0.into());
        for a in 1..=10 {
            for b in 1..=10 {
                assert_eq!(
                    kasteleyn_product(a, b).map_err(|e| e.to_string()),
                    Ok(transfer_count(a, b).unwrap()),
                    "{a}x{b}"
                );
            }
        }
    }

    #[test]
    fn grids() {
        let g: Grid = "a=1..2 b=2a..2a+2".parse().unwrap();
        assert_eq!(g.points().unwrap(), vec![vec![1, 2], vec![1, 3], vec![1, 4], vec![2, 4], vec![2, 5], vec![2, 6]]);
        let g: Grid = "a=1..2 b=a c=3-a".parse().unwrap();
        assert_eq!(g.points().unwrap(), vec![vec![1, 1, 2], vec![2, 2, 1]]);
        let g: Grid = "n=3..1".parse().unwrap();
        assert!(g.points().unwrap().is_empty());
        for bad in ["", "a", "a=b", "a=1..2 a=3", "a=1..2x", "a=1++2", "a=1..2 b=2*c"] {
            assert!(bad.parse::<Grid>().is_err(), "{bad}");
        }
        assert_eq!("a=1 b=2*a+1".parse::<Grid>().unwrap().points().unwrap(), vec![vec![1, 3]]);
    }

    #[test]
    fn small_verification() {
        let r = verify_str("macmahon", "a=1..2 b=1..2 c=1").unwrap();
        assert!(r.all_match(), "{r}");
        assert_eq!(r.lines.len(), 4);
        let r = verify_str("aztec_dungeon", "n=3").unwrap();
        assert!(!r.all_match());
        assert_eq!(r.lines[0].count, Some(q(742586, 1)));
        assert!(r.to_string().contains("MISMATCH"));
        assert!(verify_str("aztec", "a=1 b=2").is_err());
    }
}
