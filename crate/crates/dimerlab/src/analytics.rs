//! Number-theoretic and probabilistic analysis of matching counts:
//! factorisation and roundness, exact edge probabilities, moments, inverse
//! entry sums, exact sampling, transfer-matrix counts and sequence fitting.

use std::collections::HashMap;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{domain, Error, Result};
use crate::graph::{Color, Embedding, PlanarGraph};
use crate::kasteleyn::{build_bipartite, build_pfaffian_orientation, count_matchings, SignRule};
use crate::linalg::{invert, RatMatrix};
use crate::poly::Polynomial;
use crate::region::{generate, Family, RegionSpec};

// ---------------------------------------------------------------------------
// Factorisation

/// Prime factorisation `±∏ pᵉ`, possibly with an unfactored cofactor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorList {
    pub negative: bool,
    /// Primes ascending, exponents ≥ 1.
    pub factors: Vec<(BigInt, u32)>,
    /// Composite part Pollard rho could not split, if any.
    pub cofactor: Option<BigInt>,
}

impl FactorList {
    pub fn is_complete(&self) -> bool {
        self.cofactor.is_none()
    }

    /// Multiplies the factorisation back out.
    pub fn product(&self) -> BigInt {
        let mut p = self.cofactor.clone().unwrap_or_else(BigInt::one);
        for (q, e) in &self.factors {
            p *= q.pow(*e);
        }
        if self.negative {
            -p
        } else {
            p
        }
    }

    pub fn largest_prime(&self) -> Option<&BigInt> {
        self.factors.last().map(|(p, _)| p)
    }

    /// Exponent of `p` (zero when absent).
    pub fn exponent(&self, p: u64) -> u32 {
        let p = BigInt::from(p);
        self.factors.iter().find(|(q, _)| *q == p).map_or(0, |(_, e)| *e)
    }
}

impl fmt::Display for FactorList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.negative {
            parts.push("-1".into());
        }
        for (p, e) in &self.factors {
            parts.push(if *e == 1 { p.to_string() } else { format!("{p}^{e}") });
        }
        if let Some(c) = &self.cofactor {
            parts.push(format!("[{c}]"));
        }
        if parts.is_empty() {
            return f.write_str("1");
        }
        f.write_str(&parts.join(" * "))
    }
}

const TRIAL_LIMIT: u64 = 1_000_000;

fn small_primes(limit: u64) -> Vec<u64> {
    let n = limit as usize + 1;
    let mut sieve = vec![true; n];
    sieve[0] = false;
    if n > 1 {
        sieve[1] = false;
    }
    let mut i = 2;
    while i * i < n {
        if sieve[i] {
            for j in (i * i..n).step_by(i) {
                sieve[j] = false;
            }
        }
        i += 1;
    }
    (0..n).filter(|&i| sieve[i]).map(|i| i as u64).collect()
}

const MR_BASES: [u64; 24] =
    [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89];

/// Miller–Rabin with the first 24 prime bases: a proof of primality below
/// 3.3·10²⁴ and a strong probable-prime test beyond.
pub fn is_prime(n: &BigInt) -> bool {
    let two = BigInt::from(2);
    if *n < two {
        return false;
    }
    for &p in &MR_BASES {
        let p = BigInt::from(p);
        if *n == p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let n1: BigInt = n - 1;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    'bases: for &a in &MR_BASES {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x.is_one() || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Brent's variant of Pollard's rho; `None` if no split was found.
fn pollard_rho(n: &BigInt) -> Option<BigInt> {
    if n.is_even() {
        return Some(BigInt::from(2));
    }
    for c in 1u32..64 {
        let c = BigInt::from(c);
        let f = |x: &BigInt| (x * x + &c) % n;
        let (mut y, mut r, mut q) = (BigInt::from(2), 1u64, BigInt::one());
        let mut g = BigInt::one();
        let (mut x, mut ys) = (y.clone(), y.clone());
        let m = 128u64;
        let mut spent = 0u64;
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..m.min(r - k) {
                    y = f(&y);
                    q = (q * (&x - &y).abs()) % n;
                }
                g = q.gcd(n);
                k += m;
            }
            r *= 2;
            spent += r;
            if spent > 1 << 22 {
                break;
            }
        }
        if g == *n {
            loop {
                ys = f(&ys);
                g = (&x - &ys).abs().gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if !g.is_one() && g != *n {
            return Some(g);
        }
    }
    None
}

/// Factorises `n`: trial division up to 10⁶, then Pollard rho with
/// Miller–Rabin certification of the prime factors.
pub fn factorize(n: &BigInt) -> Result<FactorList> {
    if n.is_zero() {
        return domain("cannot factor zero");
    }
    let negative = n.is_negative();
    let mut m = n.abs();
    let mut found: Vec<BigInt> = Vec::new();
    for p in small_primes(TRIAL_LIMIT) {
        let bp = BigInt::from(p);
        if &bp * &bp > m {
            break;
        }
        while (&m % &bp).is_zero() {
            m /= &bp;
            found.push(bp.clone());
        }
    }
    let mut cofactor = BigInt::one();
    let mut stack = vec![m];
    while let Some(x) = stack.pop() {
        if x.is_one() {
            continue;
        }
        if x < BigInt::from(TRIAL_LIMIT) * BigInt::from(TRIAL_LIMIT) || is_prime(&x) {
            // Below 10¹², anything left after trial division is prime.
            found.push(x);
            continue;
        }
        match pollard_rho(&x) {
            Some(d) => {
                let other = &x / &d;
                stack.push(d);
                stack.push(other);
            }
            None => cofactor *= x,
        }
    }
    found.sort();
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    for p in found {
        match factors.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => factors.push((p, 1)),
        }
    }
    Ok(FactorList { negative, factors, cofactor: (!cofactor.is_one()).then_some(cofactor) })
}

/// Heuristic roundness classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Roundness {
    Round,
    GrayArea,
    NotRound,
}

impl Roundness {
    pub fn name(self) -> &'static str {
        match self {
            Roundness::Round => "round",
            Roundness::GrayArea => "gray-area",
            Roundness::NotRound => "not round",
        }
    }
}

/// How "round" a number looks, for product-formula hunting.
#[derive(Clone, Debug, PartialEq)]
pub struct RoundnessReport {
    pub largest_prime: Option<BigInt>,
    /// `ln p / ln n` for the largest prime `p` (0 for n ≤ 1).
    pub log_ratio: f64,
    pub verdict: Roundness,
    /// Primes larger than `log₂ n`, the ones that make a number suspicious.
    pub suspects: Vec<BigInt>,
}

impl fmt::Display for RoundnessReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lp = self.largest_prime.as_ref().map_or("none".to_string(), |p| p.to_string());
        write!(f, "{} (largest prime {lp}, log ratio {:.3}", self.verdict.name(), self.log_ratio)?;
        if !self.suspects.is_empty() {
            let s: Vec<String> = self.suspects.iter().map(|p| p.to_string()).collect();
            write!(f, ", suspect primes {}", s.join(", "))?;
        }
        f.write_str(")")
    }
}

fn log2_big(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits <= 60 {
        return n.to_f64().unwrap_or(0.0).log2();
    }
    let top = (n >> (bits - 53)).to_f64().unwrap_or(1.0);
    top.log2() + (bits - 53) as f64
}

/// Classifies `n` by its prime factors: all primes ≤ log₂ n is round, some
/// prime above log₂ n but ≤ (log₂ n)² is gray-area, anything larger is
/// not round. The thresholds are a heuristic, not a definition.
pub fn roundness_report(n: &BigInt) -> Result<RoundnessReport> {
    let fl = factorize(n)?;
    let m = n.abs();
    let lg = log2_big(&m);
    let mut primes: Vec<BigInt> = fl.factors.iter().map(|(p, _)| p.clone()).collect();
    if let Some(c) = &fl.cofactor {
        primes.push(c.clone());
    }
    let largest = primes.iter().max().cloned();
    let log_ratio = match &largest {
        Some(p) if lg > 0.0 => log2_big(p) / lg,
        _ => 0.0,
    };
    let suspects: Vec<BigInt> = primes.iter().filter(|p| log2_big(p).exp2() > lg.max(2.0)).cloned().collect();
    let verdict = match &largest {
        None => Roundness::Round,
        Some(p) => {
            let pf = log2_big(p).exp2();
            if pf <= lg.max(2.0) {
                Roundness::Round
            } else if pf <= lg * lg {
                Roundness::GrayArea
            } else {
                Roundness::NotRound
            }
        }
    };
    Ok(RoundnessReport { largest_prime: largest, log_ratio, verdict, suspects })
}

/// 2-adic valuation of a nonzero integer.
pub fn two_adic_valuation(n: &BigInt) -> u64 {
    n.trailing_zeros().unwrap_or(0)
}

/// Exact integer square root, if `n` is a perfect square.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Splits `n > 0` as `squarefree · s²`.
pub fn squarefree_split(n: &BigInt) -> Result<(BigInt, BigInt)> {
    let fl = factorize(n)?;
    if !fl.is_complete() {
        return domain("factorisation incomplete; cannot split off the square part");
    }
    let (mut free, mut root) = (BigInt::one(), BigInt::one());
    for (p, e) in &fl.factors {
        root *= p.pow(e / 2);
        if e % 2 == 1 {
            free *= p;
        }
    }
    Ok((free, root))
}

// ---------------------------------------------------------------------------
// Edge probabilities

/// How edge probabilities are computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProbabilityBackend {
    /// `w(e) · count(g − u − v) / count(g)`.
    Deletion,
    /// `|K(e) · K⁻¹(e)|` from the signed counting matrix.
    Inverse,
}

impl std::str::FromStr for ProbabilityBackend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "deletion" => Ok(ProbabilityBackend::Deletion),
            "inverse" => Ok(ProbabilityBackend::Inverse),
            _ => Err(Error::Parse(format!("unknown backend '{s}' (expected deletion or inverse)"))),
        }
    }
}

fn matchable_total(g: &PlanarGraph) -> Result<BigRational> {
    let total = count_matchings(g)?;
    if total.is_zero() {
        return domain("graph has no perfect matching");
    }
    Ok(total)
}

fn deletion_probabilities(g: &PlanarGraph) -> Result<Vec<BigRational>> {
    let total = matchable_total(g)?;
    g.edges
        .iter()
        .map(|e| {
            let keep: Vec<usize> = (0..g.vertex_count()).filter(|&x| x != e.u && x != e.v).collect();
            Ok(&e.weight * count_matchings(&g.induced(&keep))? / &total)
        })
        .collect()
}

fn inverse_probabilities(g: &PlanarGraph) -> Result<Vec<BigRational>> {
    if !g.planar {
        return domain("the inverse backend needs a planar graph");
    }
    matchable_total(g)?;
    let g = if g.is_colored() { g.clone() } else { g.clone().with_coloring() };
    if g.is_bipartite() {
        let k = build_bipartite(&g, SignRule::GenericPlanar)?;
        let inv = invert(&k.matrix)?;
        let mut rpos = vec![usize::MAX; g.vertex_count()];
        let mut cpos = vec![usize::MAX; g.vertex_count()];
        for (i, &x) in k.rows.iter().enumerate() {
            rpos[x] = i;
        }
        for (j, &x) in k.cols.iter().enumerate() {
            cpos[x] = j;
        }
        return Ok(g
            .edges
            .iter()
            .map(|e| {
                let (r, c) = if rpos[e.u] != usize::MAX { (rpos[e.u], cpos[e.v]) } else { (rpos[e.v], cpos[e.u]) };
                (&k.matrix[(r, c)] * &inv[(c, r)]).abs()
            })
            .collect());
    }
    let s = build_pfaffian_orientation(&g)?;
    let inv = invert(&s.matrix)?;
    Ok(g.edges.iter().map(|e| (&s.matrix[(e.u, e.v)] * &inv[(e.v, e.u)]).abs()).collect())
}

/// Probability of each edge (by index) lying in a random matching drawn
/// with probability proportional to its weight.
pub fn edge_probabilities_with(g: &PlanarGraph, backend: ProbabilityBackend) -> Result<Vec<BigRational>> {
    match backend {
        ProbabilityBackend::Deletion => deletion_probabilities(g),
        ProbabilityBackend::Inverse => inverse_probabilities(g),
    }
}

/// Edge probabilities with the inverse backend for planar graphs (deletion
/// otherwise). Debug builds cross-check small graphs against deletion.
pub fn edge_probabilities(g: &PlanarGraph) -> Result<Vec<BigRational>> {
    if !g.planar {
        return deletion_probabilities(g);
    }
    let p = inverse_probabilities(g)?;
    if cfg!(debug_assertions) && g.vertex_count() <= 40 {
        debug_assert_eq!(p, deletion_probabilities(g)?, "probability backends disagree");
    }
    Ok(p)
}

/// Index of the edge whose midpoint is nearest the centre of the bounding
/// box; vertical edges win ties, then lower indices.
pub fn central_edge(g: &PlanarGraph) -> Option<usize> {
    let xs = g.vertices.iter().map(|v| v.pos.0);
    let ys = g.vertices.iter().map(|v| v.pos.1);
    let (x0, x1) = (xs.clone().min()?, xs.max()?);
    let (y0, y1) = (ys.clone().min()?, ys.max()?);
    let two = Rational64::from_integer(2);
    let (cx, cy) = ((x0 + x1) / two, (y0 + y1) / two);
    (0..g.edge_count()).min_by_key(|&k| {
        let (a, b) = (g.vertices[g.edges[k].u].pos, g.vertices[g.edges[k].v].pos);
        let dx = (a.0 + b.0) / two - cx;
        let dy = (a.1 + b.1) / two - cy;
        (dx * dx + dy * dy, a.0 != b.0, k)
    })
}

/// Moments of inertia `(Ix, Iy)` of the vertical-edge probabilities of a
/// honeycomb region. Rows sit at unit spacing and columns at half-unit
/// spacing, so both are indexed by integers after doubling `x`; both axes
/// are centred halfway between the extreme rows/columns.
pub fn moments_of_inertia(g: &PlanarGraph) -> Result<(BigRational, BigRational)> {
    if g.embedding != Embedding::Triangular {
        return domain("moments of inertia are defined for honeycomb regions");
    }
    let probs = edge_probabilities(g)?;
    let two = BigRational::from_integer(2.into());
    let vertical: Vec<(BigRational, BigRational, &BigRational)> = g
        .edges
        .iter()
        .zip(&probs)
        .filter(|(e, _)| g.vertices[e.u].pos.0 == g.vertices[e.v].pos.0)
        .map(|(e, p)| {
            let (a, b) = (g.vertices[e.u].pos, g.vertices[e.v].pos);
            let x = BigRational::new((*a.0.numer()).into(), (*a.0.denom()).into()) * &two;
            let my = (a.1 + b.1) / Rational64::from_integer(2);
            let y = BigRational::new((*my.numer()).into(), (*my.denom()).into());
            (x, y, p)
        })
        .collect();
    if vertical.is_empty() {
        return Ok((BigRational::zero(), BigRational::zero()));
    }
    let mid = |f: &dyn Fn(&(BigRational, BigRational, &BigRational)) -> BigRational| {
        let lo = vertical.iter().map(f).min().expect("nonempty");
        let hi = vertical.iter().map(f).max().expect("nonempty");
        (lo + hi) / &two
    };
    let cx = mid(&|t| t.0.clone());
    let cy = mid(&|t| t.1.clone());
    let mut ix = BigRational::zero();
    let mut iy = BigRational::zero();
    for (x, y, p) in &vertical {
        let dy = y - &cy;
        let dx = x - &cx;
        ix += *p * &dy * &dy;
        iy += *p * &dx * &dx;
    }
    Ok((ix, iy))
}

/// Moments of the regular hexagon of side `n`.
pub fn hexagon_moments(n: u64) -> Result<(BigRational, BigRational)> {
    moments_of_inertia(&generate(&RegionSpec::new(Family::Hexagon, &[n, n, n]))?)
}

/// Sum of all entries of `K⁻¹` for the Aztec diamond of order `n`, where
/// `K` is the bipartite adjacency matrix with every vertical edge whose
/// white end is on top negated.
pub fn inverse_entry_sum(n: u64) -> Result<BigRational> {
    if n == 0 {
        return domain("order must be at least 1");
    }
    let g = generate(&RegionSpec::new(Family::AztecDiamond, &[n]))?;
    let white: Vec<usize> = (0..g.vertex_count()).filter(|&x| g.vertices[x].color == Color::White).collect();
    let black: Vec<usize> = (0..g.vertex_count()).filter(|&x| g.vertices[x].color == Color::Black).collect();
    let mut pos = vec![0; g.vertex_count()];
    for (i, &x) in white.iter().enumerate() {
        pos[x] = i;
    }
    for (j, &x) in black.iter().enumerate() {
        pos[x] = j;
    }
    let mut k = RatMatrix::zeros(white.len(), black.len());
    for e in &g.edges {
        let (w, b) = if g.vertices[e.u].color == Color::White { (e.u, e.v) } else { (e.v, e.u) };
        let (pw, pb) = (g.vertices[w].pos, g.vertices[b].pos);
        let flip = pw.0 == pb.0 && pw.1 > pb.1;
        k[(pos[w], pos[b])] = if flip { -e.weight.clone() } else { e.weight.clone() };
    }
    let inv = invert(&k)?;
    let mut s = BigRational::zero();
    for i in 0..inv.rows() {
        for j in 0..inv.cols() {
            s += &inv[(i, j)];
        }
    }
    Ok(s)
}

// ---------------------------------------------------------------------------
// Sampling

/// Exact sampler by sequential conditioning. Counts of the partially
/// matched graphs are memoised, so drawing many samples from one graph is
/// much cheaper than the first.
pub struct Sampler<'a> {
    g: &'a PlanarGraph,
    adj: Vec<Vec<(usize, usize)>>,
    memo: HashMap<Vec<u64>, BigRational>,
}

fn key(alive: &[bool]) -> Vec<u64> {
    alive.chunks(64).map(|c| c.iter().enumerate().fold(0u64, |acc, (i, &b)| acc | ((b as u64) << i))).collect()
}

/// Uniform integer in `[0, n)` by rejection sampling on random bits.
fn uniform_below(rng: &mut impl RngCore, n: &BigInt) -> BigInt {
    let bits = n.bits();
    let bytes = bits.div_ceil(8) as usize;
    let mut buf = vec![0u8; bytes];
    loop {
        rng.fill_bytes(&mut buf);
        let extra = bytes as u64 * 8 - bits;
        if extra > 0 {
            buf[0] &= 0xffu8 >> extra;
        }
        let x = BigInt::from_bytes_be(Sign::Plus, &buf);
        if x < *n {
            return x;
        }
    }
}

impl<'a> Sampler<'a> {
    pub fn new(g: &'a PlanarGraph) -> Result<Self> {
        matchable_total(g)?;
        Ok(Sampler { g, adj: g.adjacency(), memo: HashMap::new() })
    }

    fn count(&mut self, alive: &[bool]) -> Result<BigRational> {
        let k = key(alive);
        if let Some(c) = self.memo.get(&k) {
            return Ok(c.clone());
        }
        let keep: Vec<usize> = (0..alive.len()).filter(|&i| alive[i]).collect();
        let c = if keep.is_empty() { BigRational::one() } else { count_matchings(&self.g.induced(&keep))? };
        self.memo.insert(k, c.clone());
        Ok(c)
    }

    /// Draws one matching (edge indices, sorted).
    pub fn sample(&mut self, rng: &mut impl RngCore) -> Result<Vec<usize>> {
        let n = self.g.vertex_count();
        let mut alive = vec![true; n];
        let mut out = Vec::with_capacity(n / 2);
        while let Some(u) = alive.iter().position(|&a| a) {
            alive[u] = false;
            let mut options: Vec<(usize, usize, BigRational)> = Vec::new();
            for &(v, k) in &self.adj[u].clone() {
                if !alive[v] {
                    continue;
                }
                alive[v] = false;
                let c = self.count(&alive)? * &self.g.edges[k].weight;
                alive[v] = true;
                if !c.is_zero() {
                    options.push((v, k, c));
                }
            }
            if options.is_empty() {
                return domain("sampler reached an unmatchable state");
            }
            // Scale the weights to integers and draw exactly.
            let lcm = options.iter().fold(BigInt::one(), |acc, o| acc.lcm(o.2.denom()));
            let ints: Vec<BigInt> =
                options.iter().map(|o| (&o.2 * BigRational::from_integer(lcm.clone())).to_integer()).collect();
            let total: BigInt = ints.iter().sum();
            let mut r = uniform_below(rng, &total);
            let mut pick = options.len() - 1;
            for (i, w) in ints.iter().enumerate() {
                if r < *w {
                    pick = i;
                    break;
                }
                r -= w;
            }
            let (v, k, _) = options[pick];
            alive[v] = false;
            out.push(k);
        }
        out.sort_unstable();
        Ok(out)
    }
}

/// One matching drawn with probability proportional to its weight
/// (uniformly for unit weights), reproducible from `seed`.
pub fn sample_matching(g: &PlanarGraph, seed: u64) -> Result<Vec<usize>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Sampler::new(g)?.sample(&mut rng)
}

// ---------------------------------------------------------------------------
// Transfer matrices

/// Domino tilings of the `a × b` rectangle (`a` rows, `b` columns) by
/// profile dynamic programming over the `2^a` column states.
pub fn transfer_count(a: usize, b: usize) -> Result<BigInt> {
    if a > 24 {
        return Err(Error::Limit(format!("transfer matrix for height {a} has too many states")));
    }
    if (a * b) % 2 == 1 {
        return Ok(BigInt::zero());
    }
    let states = 1usize << a;
    let mut cur = vec![BigInt::zero(); states];
    cur[0] = BigInt::one();
    for _ in 0..b {
        let mut next = vec![BigInt::zero(); states];
        for (mask, ways) in cur.iter().enumerate() {
            if ways.is_zero() {
                continue;
            }
            fill_column(a, mask, 0, 0, ways, &mut next);
        }
        cur = next;
    }
    Ok(cur[0].clone())
}

/// Fills one column whose cells in `mask` are already covered; horizontal
/// dominoes started here set bits of `out` in the next column.
fn fill_column(a: usize, mask: usize, row: usize, out: usize, ways: &BigInt, next: &mut [BigInt]) {
    if row == a {
        next[out] += ways;
        return;
    }
    if mask & (1 << row) != 0 {
        fill_column(a, mask, row + 1, out, ways, next);
        return;
    }
    fill_column(a, mask, row + 1, out | (1 << row), ways, next);
    if row + 1 < a && mask & (1 << (row + 1)) == 0 {
        fill_column(a, mask, row + 2, out, ways, next);
    }
}

// ---------------------------------------------------------------------------
// Sequence fitting

/// A linear recurrence `s_n = c₁ s_{n−1} + … + c_d s_{n−d}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecurrenceFit {
    pub coefficients: Vec<BigRational>,
    pub degree: usize,
    /// Number of trailing terms that were held out of the fit and checked.
    pub held_out: usize,
}

impl RecurrenceFit {
    /// Extends `seq` by `extra` terms.
    pub fn extend(&self, seq: &[BigRational], extra: usize) -> Vec<BigRational> {
        let mut s = seq.to_vec();
        for _ in 0..extra {
            let n = s.len();
            let next = self.coefficients.iter().enumerate().map(|(i, c)| c * &s[n - 1 - i]).sum();
            s.push(next);
        }
        s
    }
}

impl fmt::Display for RecurrenceFit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> =
            self.coefficients.iter().enumerate().map(|(i, c)| format!("({c})*s[n-{}]", i + 1)).collect();
        let rhs = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
        write!(f, "degree {}: s[n] = {rhs}", self.degree)
    }
}

/// Berlekamp–Massey over the rationals: the shortest recurrence generating
/// `seq`, as `(coefficients, degree)`.
pub fn berlekamp_massey(seq: &[BigRational]) -> Vec<BigRational> {
    let mut c = vec![BigRational::one()];
    let mut b = vec![BigRational::one()];
    let mut l = 0usize;
    let mut m = 1usize;
    let mut bd = BigRational::one();
    for n in 0..seq.len() {
        let mut d = seq[n].clone();
        for i in 1..=l {
            d += &c[i] * &seq[n - i];
        }
        if d.is_zero() {
            m += 1;
            continue;
        }
        let coef = &d / &bd;
        let t = c.clone();
        if c.len() < b.len() + m {
            c.resize(b.len() + m, BigRational::zero());
        }
        for (i, bi) in b.iter().enumerate() {
            c[i + m] -= &coef * bi;
        }
        if 2 * l <= n {
            l = n + 1 - l;
            b = t;
            bd = d;
            m = 1;
        } else {
            m += 1;
        }
    }
    c.resize(l + 1, BigRational::zero());
    c[1..].iter().map(|x| -x).collect()
}

/// Minimum number of held-out terms checked by [`fit_recurrence`].
pub const MIN_HOLDOUT: usize = 4;

/// Fits the minimal linear recurrence on all but the last `holdout` terms
/// (at least [`MIN_HOLDOUT`]) and checks it reproduces them. A degree-`d`
/// claim needs at least `2d + holdout` terms.
pub fn fit_recurrence_with(seq: &[BigRational], holdout: usize) -> Result<RecurrenceFit> {
    let holdout = holdout.max(MIN_HOLDOUT);
    if seq.len() <= holdout {
        return domain(format!("need more than {holdout} terms to fit a recurrence"));
    }
    let fit = &seq[..seq.len() - holdout];
    let coefficients = berlekamp_massey(fit);
    let degree = coefficients.len();
    if seq.len() < 2 * degree + holdout {
        return domain(format!("degree {degree} needs at least {} terms, got {}", 2 * degree + holdout, seq.len()));
    }
    let rec = RecurrenceFit { coefficients, degree, held_out: holdout };
    let regenerated = rec.extend(&seq[..degree], seq.len() - degree);
    if regenerated != seq {
        return domain(format!("the degree-{degree} fit does not reproduce the held-out terms"));
    }
    Ok(rec)
}

/// [`fit_recurrence_with`] with the minimum hold-out.
pub fn fit_recurrence(seq: &[BigRational]) -> Result<RecurrenceFit> {
    fit_recurrence_with(seq, MIN_HOLDOUT)
}

/// A polynomial fitted through data, with the number of points it was
/// checked against but not fitted to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolynomialFit {
    pub poly: Polynomial,
    pub held_out: usize,
}

/// Lowest-degree polynomial through the first `d + 1` points that also
/// passes through every remaining point, with at least `holdout` points
/// left over for checking.
pub fn fit_polynomial_with(points: &[(BigRational, BigRational)], holdout: usize) -> Result<PolynomialFit> {
    let mut xs: Vec<&BigRational> = points.iter().map(|p| &p.0).collect();
    xs.sort();
    if xs.windows(2).any(|w| w[0] == w[1]) {
        return domain("interpolation points must have distinct x");
    }
    for d in 0..points.len() {
        let poly = Polynomial::interpolate(&points[..d + 1]);
        if points[d + 1..].iter().all(|(x, y)| poly.eval(x) == *y) {
            let left = points.len() - d - 1;
            if left < holdout {
                return domain(format!(
                    "a degree-{d} fit leaves {left} held-out points; at least {holdout} are required"
                ));
            }
            return Ok(PolynomialFit { poly, held_out: left });
        }
    }
    domain("no polynomial fits the data")
}

/// [`fit_polynomial_with`] requiring two held-out points.
pub fn fit_polynomial(points: &[(BigRational, BigRational)]) -> Result<PolynomialFit> {
    fit_polynomial_with(points, 2)
}

/// `s_{n−1} s_{n+1} / s_n²` for every interior index.
pub fn second_quotient(seq: &[BigRational]) -> Result<Vec<BigRational>> {
    if seq.iter().any(Zero::is_zero) {
        return domain("second quotient needs nonzero terms");
    }
    Ok(seq.windows(3).map(|w| &w[0] * &w[2] / (&w[1] * &w[1])).collect())
}

// ---------------------------------------------------------------------------
// Pillows

/// The two even pillow families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PillowKind {
    ZeroMod4,
    TwoMod4,
}

impl PillowKind {
    /// Numerator and denominator of the generating function, ascending.
    fn series(self) -> ([i64; 4], [i64; 5]) {
        let den = [1, -2, -2, -2, 1];
        match self {
            PillowKind::ZeroMod4 => ([5, 3, 1, -1], den),
            PillowKind::TwoMod4 => ([5, 6, 3, -2], den),
        }
    }

    /// Index of the series coefficient that matches order 1 (resp. 2) and
    /// up: order `n` pairs with the coefficient of `x^{n − offset}`.
    pub fn offset(self) -> u64 {
        match self {
            PillowKind::ZeroMod4 => 1,
            PillowKind::TwoMod4 => 2,
        }
    }

    pub fn family(self) -> Family {
        match self {
            PillowKind::ZeroMod4 => Family::Pillow0Mod4,
            PillowKind::TwoMod4 => Family::Pillow2Mod4,
        }
    }
}

/// First `terms` Taylor coefficients of the pillow generating function, by
/// exact power-series division.
pub fn pillow_series(kind: PillowKind, terms: usize) -> Vec<BigInt> {
    let (num, den) = kind.series();
    let mut out: Vec<BigInt> = Vec::with_capacity(terms);
    for n in 0..terms {
        let mut c = BigInt::from(num.get(n).copied().unwrap_or(0));
        for k in 1..den.len().min(n + 1) {
            c -= &out[n - k] * den[k];
        }
        out.push(c); // den[0] = 1
    }
    out
}

/// Count of a pillow tested against the generating-function claim.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PillowReport {
    pub order: u64,
    pub count: BigInt,
    pub squarefree: BigInt,
    pub coefficient: BigInt,
    /// `s` with `count = s² · coefficient`, when it exists.
    pub square_root: Option<BigInt>,
}

impl PillowReport {
    pub fn holds(&self) -> bool {
        self.square_root.is_some()
    }
}

/// Counts the pillow of the given order and tests
/// `count = (perfect square) · coefficient`. The square factor removed is
/// `count / coefficient` when that is a perfect square; the report also
/// gives the square-free part, which the coefficient must be a multiple of.
pub fn pillow_report(kind: PillowKind, order: u64) -> Result<PillowReport> {
    if order < kind.offset() {
        return domain(format!("the generating function starts at order {}", kind.offset()));
    }
    let g = generate(&RegionSpec::new(kind.family(), &[order]))?;
    let count = crate::kasteleyn::count_int(&g)?;
    let idx = (order - kind.offset()) as usize;
    let coefficient = pillow_series(kind, idx + 1).pop().expect("nonempty series");
    let (squarefree, _) = squarefree_split(&count)?;
    let square_root = if !coefficient.is_zero() && (&count % &coefficient).is_zero() {
        exact_sqrt(&(&count / &coefficient))
    } else {
        None
    };
    Ok(PillowReport { order, count, squarefree, coefficient, square_root })
}
