//! Points and lines of the projective plane over `F_p`, and certified
//! constructions of star, quasi star and generic point configurations.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::ideal::{self, Ideal};
use crate::linalg;
use crate::poly::{Polynomial, Ring};

/// Attempts per sampled object before giving up on a seed.
pub const MAX_ATTEMPTS: usize = 256;

/// Stream offsets so every sampled object has its own reproducible stream.
const STREAM_LINES: u64 = 0;
const STREAM_TAIL: u64 = 1 << 20;
const STREAM_AUX: u64 = 2 << 20;
const STREAM_GENERIC: u64 = 3 << 20;

fn rng_for(seed: u64, object: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(object);
    rng
}

fn random_vector(rng: &mut ChaCha8Rng, field: PrimeField) -> [u32; 3] {
    loop {
        let v = [
            rng.gen_range(0..field.modulus()),
            rng.gen_range(0..field.modulus()),
            rng.gen_range(0..field.modulus()),
        ];
        if v.iter().any(|&x| x != 0) {
            return v;
        }
    }
}

/// Scales so that the first nonzero entry is 1.
fn normalize(field: PrimeField, v: [u32; 3]) -> Option<[u32; 3]> {
    let lead = *v.iter().find(|&&x| x != 0)?;
    let inv = field.inv(lead)?;
    Some([field.mul(v[0], inv), field.mul(v[1], inv), field.mul(v[2], inv)])
}

fn cross(field: PrimeField, a: &[u32; 3], b: &[u32; 3]) -> [u32; 3] {
    let m = |x, y| field.mul(x, y);
    [
        field.sub(m(a[1], b[2]), m(a[2], b[1])),
        field.sub(m(a[2], b[0]), m(a[0], b[2])),
        field.sub(m(a[0], b[1]), m(a[1], b[0])),
    ]
}

fn dot(field: PrimeField, a: &[u32; 3], b: &[u32; 3]) -> u32 {
    (0..3).fold(0, |acc, i| field.add(acc, field.mul(a[i], b[i])))
}

fn det3(field: PrimeField, a: &[u32; 3], b: &[u32; 3], c: &[u32; 3]) -> u32 {
    dot(field, a, &cross(field, b, c))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ProjectivePoint {
    coords: [u32; 3],
}

impl ProjectivePoint {
    pub fn new(field: PrimeField, coords: [u32; 3]) -> Result<Self> {
        let coords = [coords[0] % field.modulus(), coords[1] % field.modulus(), coords[2] % field.modulus()];
        let coords = normalize(field, coords)
            .ok_or_else(|| Error::InvalidParameter("all point coordinates are zero".into()))?;
        Ok(ProjectivePoint { coords })
    }

    pub fn coords(&self) -> &[u32; 3] {
        &self.coords
    }

    /// Index of the coordinate normalized to 1.
    pub fn chart(&self) -> usize {
        self.coords.iter().position(|&x| x != 0).expect("nonzero point")
    }
}

/// A nonzero linear form, normalized to leading coefficient 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LinearForm {
    coeffs: [u32; 3],
}

impl LinearForm {
    pub fn new(field: PrimeField, coeffs: [u32; 3]) -> Result<Self> {
        let coeffs = [coeffs[0] % field.modulus(), coeffs[1] % field.modulus(), coeffs[2] % field.modulus()];
        let coeffs =
            normalize(field, coeffs).ok_or_else(|| Error::InvalidParameter("zero linear form".into()))?;
        Ok(LinearForm { coeffs })
    }

    pub fn coeffs(&self) -> &[u32; 3] {
        &self.coeffs
    }

    pub fn eval(&self, field: PrimeField, p: &ProjectivePoint) -> u32 {
        dot(field, &self.coeffs, &p.coords)
    }

    pub fn vanishes_at(&self, field: PrimeField, p: &ProjectivePoint) -> bool {
        self.eval(field, p) == 0
    }

    pub fn to_poly(&self, ring: &Ring) -> Polynomial {
        ring.linear(self.coeffs)
    }
}

pub fn intersect_lines(field: PrimeField, l: &LinearForm, m: &LinearForm) -> Result<ProjectivePoint> {
    let c = cross(field, &l.coeffs, &m.coeffs);
    normalize(field, c)
        .map(|coords| ProjectivePoint { coords })
        .ok_or(Error::ProportionalLines)
}

pub fn line_through(field: PrimeField, p: &ProjectivePoint, q: &ProjectivePoint) -> Result<LinearForm> {
    let c = cross(field, &p.coords, &q.coords);
    normalize(field, c)
        .map(|coeffs| LinearForm { coeffs })
        .ok_or_else(|| Error::InvalidParameter("coincident points span no line".into()))
}

pub fn collinear(field: PrimeField, a: &ProjectivePoint, b: &ProjectivePoint, c: &ProjectivePoint) -> bool {
    det3(field, &a.coords, &b.coords, &c.coords) == 0
}

/// The ideal of a point: two independent linear forms in reduced echelon form.
pub fn point_ideal(ring: &Ring, p: &ProjectivePoint) -> Ideal {
    let field = ring.field();
    let e = linalg::echelon(field, vec![p.coords.to_vec()], 3);
    let kernel = e.kernel_basis(field);
    let r = linalg::rref(field, kernel, 3);
    let gens = r
        .rows
        .iter()
        .map(|row| ring.linear([row[0], row[1], row[2]]))
        .collect();
    Ideal::new(*ring, gens).expect("two nonzero linear forms")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub description: String,
    pub passed: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenericityCertificate {
    pub seed: u64,
    pub checks: Vec<Check>,
    /// Incidents recorded without rejecting (e.g. collinear subsets of `T_d`).
    #[serde(default)]
    pub notes: Vec<String>,
}

impl GenericityCertificate {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn push(&mut self, description: impl Into<String>, passed: bool) {
        self.checks.push(Check {
            description: description.into(),
            passed,
        });
    }
}

/// Checks that no two lines are proportional and no three are concurrent.
pub fn certify_general_lines(field: PrimeField, lines: &[LinearForm], seed: u64) -> GenericityCertificate {
    let mut cert = GenericityCertificate {
        seed,
        ..Default::default()
    };
    let n = lines.len();
    let mut distinct = true;
    for i in 0..n {
        for j in (i + 1)..n {
            if lines[i] == lines[j] {
                distinct = false;
            }
        }
    }
    cert.push(format!("{n} lines pairwise distinct (pairwise intersections are points)"), distinct);
    let mut concurrent = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                if det3(field, &lines[i].coeffs, &lines[j].coeffs, &lines[k].coeffs) == 0 {
                    concurrent.push((i, j, k));
                }
            }
        }
    }
    cert.push(
        match concurrent.first() {
            None => "no three lines concurrent (all triple determinants nonzero)".to_string(),
            Some((i, j, k)) => format!("lines {i}, {j}, {k} are concurrent"),
        },
        concurrent.is_empty(),
    );
    cert
}

/// Samples `d` lines such that no two coincide and no three meet in a point.
pub fn make_general_lines(field: PrimeField, d: usize, seed: u64) -> Result<(Vec<LinearForm>, GenericityCertificate)> {
    if d < 3 {
        return Err(Error::InvalidParameter(format!("need at least 3 lines, got {d}")));
    }
    let lines = sample_general_lines(field, d, seed, STREAM_LINES)?;
    let cert = certify_general_lines(field, &lines, seed);
    if !cert.passed() {
        return Err(Error::RejectionExhausted {
            what: "general lines".into(),
            attempts: MAX_ATTEMPTS,
        });
    }
    Ok((lines, cert))
}

fn sample_general_lines(field: PrimeField, d: usize, seed: u64, stream: u64) -> Result<Vec<LinearForm>> {
    let mut lines: Vec<LinearForm> = Vec::with_capacity(d);
    for idx in 0..d {
        let mut rng = rng_for(seed, stream + idx as u64);
        let mut accepted = None;
        for _ in 0..MAX_ATTEMPTS {
            let cand = LinearForm::new(field, random_vector(&mut rng, field))?;
            let ok = lines.iter().all(|l| *l != cand)
                && (0..lines.len()).all(|i| {
                    ((i + 1)..lines.len())
                        .all(|j| det3(field, &lines[i].coeffs, &lines[j].coeffs, &cand.coeffs) != 0)
                });
            if ok {
                accepted = Some(cand);
                break;
            }
        }
        match accepted {
            Some(l) => lines.push(l),
            None => {
                return Err(Error::RejectionExhausted {
                    what: format!("line {idx}"),
                    attempts: MAX_ATTEMPTS,
                })
            }
        }
    }
    Ok(lines)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum ConfigurationKind {
    Star { d: usize },
    QuasiStar { d: usize },
    GenericPoints { n: usize },
    Custom,
}

/// How the extra points `q_i` of a quasi star configuration are placed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum TailLayout {
    /// `q_i` sampled uniformly on `L_i`.
    #[default]
    Random,
    /// `q_i = L_i ∩ M_{i mod k}` for `k` extra carrier lines `M_j` in general
    /// position with the `L_i`; the `q_i` then lie on a curve of degree `k`.
    OnCarrierLines { k: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedPoint {
    pub point: ProjectivePoint,
    pub multiplicity: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Configuration {
    pub kind: ConfigurationKind,
    pub seed: u64,
    pub prime: u32,
    pub points: Vec<WeightedPoint>,
    /// The lines `L_i` (star and quasi star configurations).
    #[serde(default)]
    pub lines: Vec<LinearForm>,
    /// The lines `L'_i`, filled in by [`aux_lines`].
    #[serde(default)]
    pub aux_lines: Vec<LinearForm>,
    /// Carrier lines of [`TailLayout::OnCarrierLines`].
    #[serde(default)]
    pub carrier_lines: Vec<LinearForm>,
    #[serde(default)]
    pub tail_layout: TailLayout,
    pub certificate: GenericityCertificate,
}

impl Configuration {
    pub fn field(&self) -> Result<PrimeField> {
        PrimeField::new(self.prime)
    }

    pub fn ring(&self) -> Result<Ring> {
        Ok(Ring::plane(self.field()?))
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        self.points.iter().all(|p| p.multiplicity == 1)
    }

    pub fn point_list(&self) -> Vec<ProjectivePoint> {
        self.points.iter().map(|p| p.point).collect()
    }

    /// Scheme degree `Σ binom(m_i + 1, 2)`.
    pub fn degree(&self) -> u64 {
        self.points
            .iter()
            .map(|p| p.multiplicity as u64 * (p.multiplicity as u64 + 1) / 2)
            .sum()
    }

    /// The extra points `q_1..q_d` of a quasi star configuration.
    pub fn tail_points(&self) -> Vec<ProjectivePoint> {
        match self.kind {
            ConfigurationKind::QuasiStar { d } => {
                self.points[self.points.len() - d..].iter().map(|p| p.point).collect()
            }
            _ => Vec::new(),
        }
    }

    /// A custom configuration of the given points and multiplicities.
    pub fn custom(field: PrimeField, points: Vec<(ProjectivePoint, u32)>) -> Result<Self> {
        let cfg = Configuration {
            kind: ConfigurationKind::Custom,
            seed: 0,
            prime: field.modulus(),
            points: points
                .into_iter()
                .map(|(point, multiplicity)| WeightedPoint { point, multiplicity })
                .collect(),
            lines: Vec::new(),
            aux_lines: Vec::new(),
            carrier_lines: Vec::new(),
            tail_layout: TailLayout::Random,
            certificate: GenericityCertificate::default(),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Checks structural invariants after deserialization.
    pub fn validate(&self) -> Result<()> {
        let field = self.field()?;
        for (i, p) in self.points.iter().enumerate() {
            if p.multiplicity == 0 {
                return Err(Error::Config(format!("point {i} has multiplicity 0")));
            }
            if ProjectivePoint::new(field, p.point.coords)? != p.point {
                return Err(Error::Config(format!("point {i} is not normalized")));
            }
            for q in &self.points[..i] {
                if q.point == p.point {
                    return Err(Error::Config(format!("point {i} is repeated")));
                }
            }
        }
        if self.points.is_empty() {
            return Err(Error::Config("configuration has no points".into()));
        }
        match self.kind {
            ConfigurationKind::Star { d } => {
                if self.lines.len() != d || self.points.len() != d * (d - 1) / 2 {
                    return Err(Error::Config("star configuration has wrong size".into()));
                }
            }
            ConfigurationKind::QuasiStar { d } => {
                if self.lines.len() != d || self.points.len() != d * (d + 1) / 2 {
                    return Err(Error::Config("quasi star configuration has wrong size".into()));
                }
            }
            ConfigurationKind::GenericPoints { n } => {
                if self.points.len() != n {
                    return Err(Error::Config("generic configuration has wrong size".into()));
                }
            }
            ConfigurationKind::Custom => {}
        }
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let cfg: Configuration = serde_json::from_str(s)?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// SHA-256 of the canonical JSON form.
    pub fn content_hash(&self) -> String {
        let json = serde_json::to_string(self).expect("serializable");
        hex::encode(Sha256::digest(json.as_bytes()))
    }

    /// The same construction over another prime: named families are rebuilt
    /// from their seed, custom points keep their coordinates reduced mod `prime`.
    pub fn at_prime(&self, prime: u32) -> Result<Configuration> {
        let field = PrimeField::new(prime)?;
        let mut cfg = match self.kind {
            ConfigurationKind::Star { d } => star_configuration(field, d, self.seed)?,
            ConfigurationKind::QuasiStar { d } => quasi_star_with_layout(field, d, self.seed, self.tail_layout)?,
            ConfigurationKind::GenericPoints { n } => generic_points(field, n, self.seed)?,
            ConfigurationKind::Custom => {
                let pts = self
                    .points
                    .iter()
                    .map(|p| Ok((ProjectivePoint::new(field, p.point.coords.map(|x| x % prime))?, p.multiplicity)))
                    .collect::<Result<Vec<_>>>()?;
                return Configuration::custom(field, pts);
            }
        };
        if !self.aux_lines.is_empty() {
            cfg = with_aux_lines(&cfg)?;
        }
        let m = self.points.iter().map(|p| p.multiplicity).max().unwrap_or(1);
        if self.points.iter().all(|p| p.multiplicity == m) && m > 1 {
            cfg = cfg.scaled(m);
        }
        Ok(cfg)
    }

    /// The same configuration with every multiplicity multiplied by `m`.
    pub fn scaled(&self, m: u32) -> Configuration {
        let mut c = self.clone();
        for p in c.points.iter_mut() {
            p.multiplicity *= m;
        }
        c
    }
}

fn star_points(field: PrimeField, lines: &[LinearForm]) -> Result<Vec<ProjectivePoint>> {
    let mut pts = Vec::new();
    for i in 0..lines.len() {
        for j in (i + 1)..lines.len() {
            pts.push(intersect_lines(field, &lines[i], &lines[j])?);
        }
    }
    Ok(pts)
}

fn reduced(points: Vec<ProjectivePoint>) -> Vec<WeightedPoint> {
    points
        .into_iter()
        .map(|point| WeightedPoint { point, multiplicity: 1 })
        .collect()
}

/// `S_2(2,d)`: the pairwise intersections of `d` general lines.
pub fn star_configuration(field: PrimeField, d: usize, seed: u64) -> Result<Configuration> {
    let (lines, mut cert) = make_general_lines(field, d, seed)?;
    let pts = star_points(field, &lines)?;
    let mut distinct = true;
    for i in 0..pts.len() {
        for j in (i + 1)..pts.len() {
            distinct &= pts[i] != pts[j];
        }
    }
    cert.push(format!("{} star points pairwise distinct", pts.len()), distinct);
    let on_two = pts.iter().all(|p| lines.iter().filter(|l| l.vanishes_at(field, p)).count() == 2);
    cert.push("each star point lies on exactly two lines", on_two);
    if !cert.passed() {
        return Err(Error::RejectionExhausted {
            what: "star configuration".into(),
            attempts: MAX_ATTEMPTS,
        });
    }
    Ok(Configuration {
        kind: ConfigurationKind::Star { d },
        seed,
        prime: field.modulus(),
        points: reduced(pts),
        lines,
        aux_lines: Vec::new(),
        carrier_lines: Vec::new(),
        tail_layout: TailLayout::Random,
        certificate: cert,
    })
}

/// A point sampled uniformly on the line `l` (never the zero vector).
fn random_point_on(rng: &mut ChaCha8Rng, field: PrimeField, l: &LinearForm) -> Result<ProjectivePoint> {
    let e = linalg::echelon(field, vec![l.coeffs.to_vec()], 3);
    let basis = e.kernel_basis(field);
    loop {
        let s = rng.gen_range(0..field.modulus());
        let t = rng.gen_range(0..field.modulus());
        if s == 0 && t == 0 {
            continue;
        }
        let v = [0, 1, 2].map(|k| field.add(field.mul(s, basis[0][k]), field.mul(t, basis[1][k])));
        return ProjectivePoint::new(field, v);
    }
}

/// Accepts a tail point candidate for line `i`.
fn tail_point_ok(field: PrimeField, lines: &[LinearForm], i: usize, q: &ProjectivePoint) -> bool {
    lines.iter().enumerate().all(|(j, l)| (j == i) == l.vanishes_at(field, q))
}

fn collinear_subsets(field: PrimeField, pts: &[ProjectivePoint]) -> usize {
    let n = pts.len();
    let mut count = 0;
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                if collinear(field, &pts[i], &pts[j], &pts[k]) {
                    count += 1;
                }
            }
        }
    }
    count
}

fn all_collinear(field: PrimeField, pts: &[ProjectivePoint]) -> bool {
    linalg::rank(field, pts.iter().map(|p| p.coords.to_vec()).collect(), 3) < 3
}

/// `Z_d = T_d + S_2(2,d)` with the `q_i` sampled uniformly on `L_i`.
pub fn quasi_star(field: PrimeField, d: usize, seed: u64) -> Result<Configuration> {
    quasi_star_with_layout(field, d, seed, TailLayout::Random)
}

pub fn quasi_star_with_layout(field: PrimeField, d: usize, seed: u64, layout: TailLayout) -> Result<Configuration> {
    if d < 3 {
        return Err(Error::InvalidParameter(format!("quasi star needs d >= 3, got {d}")));
    }
    let (lines, carriers) = match layout {
        TailLayout::Random => (make_general_lines(field, d, seed)?.0, Vec::new()),
        TailLayout::OnCarrierLines { k } => {
            if k < 2 || 2 * k > d {
                return Err(Error::InvalidParameter(format!(
                    "carrier line count must satisfy 2 <= k <= d/2, got k={k}, d={d}"
                )));
            }
            let all = sample_general_lines(field, d + k, seed, STREAM_LINES)?;
            (all[..d].to_vec(), all[d..].to_vec())
        }
    };
    let stars = star_points(field, &lines)?;
    let mut tail = Vec::with_capacity(d);
    match layout {
        TailLayout::Random => {
            // resample the whole tail until it is not contained in one line
            let mut rngs: Vec<ChaCha8Rng> = (0..d).map(|i| rng_for(seed, STREAM_TAIL + i as u64)).collect();
            let mut done = false;
            for _ in 0..MAX_ATTEMPTS {
                tail.clear();
                for (i, rng) in rngs.iter_mut().enumerate() {
                    let mut found = None;
                    for _ in 0..MAX_ATTEMPTS {
                        let q = random_point_on(rng, field, &lines[i])?;
                        if tail_point_ok(field, &lines, i, &q) {
                            found = Some(q);
                            break;
                        }
                    }
                    tail.push(found.ok_or_else(|| Error::RejectionExhausted {
                        what: format!("tail point q_{}", i + 1),
                        attempts: MAX_ATTEMPTS,
                    })?);
                }
                if !all_collinear(field, &tail) {
                    done = true;
                    break;
                }
            }
            if !done {
                return Err(Error::RejectionExhausted {
                    what: "non-collinear tail".into(),
                    attempts: MAX_ATTEMPTS,
                });
            }
        }
        TailLayout::OnCarrierLines { k } => {
            for (i, l) in lines.iter().enumerate() {
                tail.push(intersect_lines(field, l, &carriers[i % k])?);
            }
        }
    }

    let mut cert = certify_general_lines(field, &lines, seed);
    cert.push(
        format!("{} star points pairwise distinct", stars.len()),
        (0..stars.len()).all(|i| ((i + 1)..stars.len()).all(|j| stars[i] != stars[j])),
    );
    cert.push(
        "each q_i lies on L_i and on no other L_j",
        tail.iter().enumerate().all(|(i, q)| tail_point_ok(field, &lines, i, q)),
    );
    cert.push(
        "no q_i is a star point",
        tail.iter().all(|q| !stars.contains(q)),
    );
    cert.push("the q_i are not all collinear", !all_collinear(field, &tail));
    let triples = collinear_subsets(field, &tail);
    if triples > 0 {
        cert.notes.push(format!("{triples} collinear triples among the q_i"));
    }
    if let TailLayout::OnCarrierLines { k } = layout {
        cert.notes.push(format!("q_i placed on {k} carrier lines"));
    }
    if !cert.passed() {
        return Err(Error::RejectionExhausted {
            what: "quasi star configuration".into(),
            attempts: MAX_ATTEMPTS,
        });
    }
    let mut points = stars;
    points.extend(tail);
    Ok(Configuration {
        kind: ConfigurationKind::QuasiStar { d },
        seed,
        prime: field.modulus(),
        points: reduced(points),
        lines,
        aux_lines: Vec::new(),
        carrier_lines: carriers,
        tail_layout: layout,
        certificate: cert,
    })
}

/// Degree-`t` monomials evaluated at the points, one row per point.
pub fn evaluation_matrix(field: PrimeField, pts: &[ProjectivePoint], t: u32) -> Vec<Vec<u32>> {
    let basis = crate::monomial::Monomial::plane_basis(t);
    pts.iter()
        .map(|p| {
            basis
                .iter()
                .map(|m| {
                    (0..3).fold(1u32, |acc, i| field.mul(acc, field.pow(p.coords[i], m.0[i] as u64)))
                })
                .collect()
        })
        .collect()
}

/// Whether the points impose independent conditions in every degree, i.e.
/// `H(R/I, t) = min(binom(t+2,2), n)` for all `t`.
pub fn has_generic_hilbert_function(field: PrimeField, pts: &[ProjectivePoint]) -> bool {
    let n = pts.len();
    let mut t = 0;
    loop {
        let dim = ideal::plane_dim(t);
        let r = linalg::rank(field, evaluation_matrix(field, pts, t), dim);
        if r != dim.min(n) {
            return false;
        }
        if dim >= n {
            return true;
        }
        t += 1;
    }
}

/// `n` random points with generic Hilbert function and no three collinear.
pub fn generic_points(field: PrimeField, n: usize, seed: u64) -> Result<Configuration> {
    if n == 0 {
        return Err(Error::InvalidParameter("need at least one point".into()));
    }
    let mut rng = rng_for(seed, STREAM_GENERIC);
    for _ in 0..MAX_ATTEMPTS {
        let mut pts: Vec<ProjectivePoint> = Vec::with_capacity(n);
        while pts.len() < n {
            let p = ProjectivePoint::new(field, random_vector(&mut rng, field))?;
            if !pts.contains(&p) {
                pts.push(p);
            }
        }
        let mut cert = GenericityCertificate {
            seed,
            ..Default::default()
        };
        cert.push(
            format!("evaluation matrices of {n} points have maximal rank in every degree (generic Hilbert function)"),
            has_generic_hilbert_function(field, &pts),
        );
        cert.push("no three points collinear", collinear_subsets(field, &pts) == 0);
        if cert.passed() {
            return Ok(Configuration {
                kind: ConfigurationKind::GenericPoints { n },
                seed,
                prime: field.modulus(),
                points: reduced(pts),
                lines: Vec::new(),
                aux_lines: Vec::new(),
                carrier_lines: Vec::new(),
                tail_layout: TailLayout::Random,
                certificate: cert,
            });
        }
    }
    Err(Error::RejectionExhausted {
        what: "generic points".into(),
        attempts: MAX_ATTEMPTS,
    })
}

/// For each `q_i`, a line through `q_i` missing every other point of the
/// quasi star configuration.
pub fn aux_lines(cfg: &Configuration) -> Result<Vec<LinearForm>> {
    let ConfigurationKind::QuasiStar { d } = cfg.kind else {
        return Err(Error::InvalidParameter("auxiliary lines need a quasi star configuration".into()));
    };
    let field = cfg.field()?;
    let pts = cfg.point_list();
    let tail = cfg.tail_points();
    let mut out = Vec::with_capacity(d);
    for (i, q) in tail.iter().enumerate() {
        let mut rng = rng_for(cfg.seed, STREAM_AUX + i as u64);
        let mut found = None;
        for _ in 0..MAX_ATTEMPTS {
            let r = ProjectivePoint::new(field, random_vector(&mut rng, field))?;
            if r == *q {
                continue;
            }
            let l = line_through(field, q, &r)?;
            if pts.iter().all(|p| p == q || !l.vanishes_at(field, p)) {
                found = Some(l);
                break;
            }
        }
        out.push(found.ok_or_else(|| Error::RejectionExhausted {
            what: format!("auxiliary line L'_{}", i + 1),
            attempts: MAX_ATTEMPTS,
        })?);
    }
    Ok(out)
}

/// Returns the configuration with its auxiliary lines filled in.
pub fn with_aux_lines(cfg: &Configuration) -> Result<Configuration> {
    let mut c = cfg.clone();
    if c.aux_lines.is_empty() {
        c.aux_lines = aux_lines(cfg)?;
    }
    Ok(c)
}

/// The ideal of maximal minors of the `(d+1) x d` matrix with `L_1..L_d` on
/// the diagonal and `L'_1..L'_d` as last row:
/// `(L_1⋯L_d, L'_1 L_2⋯L_d, …, L_1⋯L_{d-1} L'_d)`.
pub fn determinantal_ideal(cfg: &Configuration) -> Result<Ideal> {
    let ConfigurationKind::QuasiStar { d } = cfg.kind else {
        return Err(Error::InvalidParameter("determinantal ideal needs a quasi star configuration".into()));
    };
    let ring = cfg.ring()?;
    let aux = if cfg.aux_lines.len() == d {
        cfg.aux_lines.clone()
    } else {
        aux_lines(cfg)?
    };
    let ls: Vec<Polynomial> = cfg.lines.iter().map(|l| l.to_poly(&ring)).collect();
    let mut gens = vec![Polynomial::product(&ring, &ls)?];
    for i in 0..d {
        let mut factors = ls.clone();
        factors[i] = aux[i].to_poly(&ring);
        gens.push(Polynomial::product(&ring, &factors)?);
    }
    Ideal::new(ring, gens)
}
