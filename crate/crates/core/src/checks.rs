//! The verification catalog: one check per computational claim, run against
//! a corpus with cached intermediate complexes.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::bar::{bar_homology, mayer_vietoris_h3};
use crate::complex::{ChainMap, FreeComplex};
use crate::corpus::Corpus;
use crate::error::{Error, Result};
use crate::group::{enumerate, GroupHom, GroupId};
use crate::homology::{
    bounded_kernel_search, content, coordinates, homology, left_annihilator, principal_left_ideal,
    AbelianGroupDescriptor, SearchOutcome,
};
use crate::intmat::{smith, IntMatrix, Transforms};
use crate::matrix::RingMatrix;
use crate::par::{self, Parallelism};
use crate::ring::{OrientationCharacter, RingElement};
use crate::rmodule::{cyclic_sum, r_module_invariants};
use crate::tensor::{verify_collapse, verify_diagonal, verify_embedding, Cell, DiagonalMode, DiagonalTable};

pub const DEFAULT_MAX_LENGTH: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Pass,
    Fail,
    /// Certified on the ball of radius L only.
    Partial(usize),
    /// A bounded search found kernel elements without a witness within the slack.
    Inconclusive(usize),
    Skip,
}

impl Status {
    pub fn bound(self) -> Option<usize> {
        match self {
            Status::Partial(l) | Status::Inconclusive(l) => Some(l),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Partial(_) => "PARTIAL",
            Status::Inconclusive(_) => "INCONCLUSIVE",
            Status::Skip => "SKIP",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.bound() {
            Some(l) => write!(f, "{}({l})", self.name()),
            None => write!(f, "{}", self.name()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub id: &'static str,
    pub title: &'static str,
    pub reference: &'static str,
    pub status: Status,
    pub details: BTreeMap<String, String>,
    pub wall_time: Duration,
}

pub struct CheckDef {
    pub id: &'static str,
    pub title: &'static str,
    /// The claim being checked, as a formula.
    pub reference: &'static str,
    pub deps: &'static [&'static str],
    run: fn(&Workbench) -> Result<Outcome>,
}

struct Outcome {
    status: Status,
    details: BTreeMap<String, String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome { status: Status::Pass, details: BTreeMap::new() }
    }

    fn note(&mut self, key: &str, value: impl fmt::Display) -> &mut Self {
        self.details.insert(key.to_string(), value.to_string());
        self
    }

    /// Records `key: ok` or `key: <problem>` and fails on a problem.
    fn require(&mut self, key: &str, problem: Option<String>) -> &mut Self {
        match problem {
            None => {
                self.note(key, "ok");
            }
            Some(p) => {
                self.status = Status::Fail;
                self.note(key, p);
            }
        }
        self
    }

    fn require_eq<T: PartialEq + fmt::Display>(&mut self, key: &str, got: &T, want: &T) -> &mut Self {
        if got == want {
            self.note(key, got)
        } else {
            self.status = Status::Fail;
            self.note(key, format!("{got}, expected {want}"))
        }
    }

    fn done(self) -> Result<Outcome> {
        Ok(self)
    }
}

/// Corpus plus lazily built complexes shared by the checks.
pub struct Workbench {
    pub corpus: Corpus,
    pub max_length: usize,
    pub par: Parallelism,
    k: OnceLock<Result<FreeComplex>>,
    l: OnceLock<Result<FreeComplex>>,
    x: OnceLock<Result<FreeComplex>>,
    x_adapted: OnceLock<Result<FreeComplex>>,
    y: OnceLock<Result<FreeComplex>>,
    y_adapted: OnceLock<Result<FreeComplex>>,
    z: OnceLock<Result<FreeComplex>>,
    z_adapted: OnceLock<Result<FreeComplex>>,
    delta_l: OnceLock<Result<DiagonalTable>>,
    delta_k: OnceLock<Result<DiagonalTable>>,
}

fn cached<T>(cell: &OnceLock<Result<T>>, f: impl FnOnce() -> Result<T>) -> Result<&T> {
    cell.get_or_init(f).as_ref().map_err(Clone::clone)
}

impl Workbench {
    pub fn new(corpus: Corpus, max_length: usize, par: Parallelism) -> Self {
        Workbench {
            corpus,
            max_length,
            par,
            k: OnceLock::new(),
            l: OnceLock::new(),
            x: OnceLock::new(),
            x_adapted: OnceLock::new(),
            y: OnceLock::new(),
            y_adapted: OnceLock::new(),
            z: OnceLock::new(),
            z_adapted: OnceLock::new(),
            delta_l: OnceLock::new(),
            delta_k: OnceLock::new(),
        }
    }

    /// Presentation complex of S3.
    pub fn k(&self) -> Result<&FreeComplex> {
        cached(&self.k, || FreeComplex::fox_lyndon(&self.corpus.presentation("s3")?))
    }

    /// Presentation complex of pi.
    pub fn l(&self) -> Result<&FreeComplex> {
        cached(&self.l, || FreeComplex::fox_lyndon(&self.corpus.presentation("pi")?))
    }

    pub fn x(&self) -> Result<&FreeComplex> {
        cached(&self.x, || self.k()?.attach_top_cell(&self.corpus.cycle("psi")?, "g"))
    }

    pub fn y(&self) -> Result<&FreeComplex> {
        cached(&self.y, || self.l()?.attach_top_cell(&self.corpus.cycle("theta")?, "g"))
    }

    pub fn z(&self) -> Result<&FreeComplex> {
        cached(&self.z, || self.l()?.attach_top_cell(&self.corpus.cycle("xi")?, "g"))
    }

    pub fn x_adapted(&self) -> Result<&FreeComplex> {
        cached(&self.x_adapted, || self.x()?.change_basis(&self.corpus.basis("x")?))
    }

    pub fn y_adapted(&self) -> Result<&FreeComplex> {
        cached(&self.y_adapted, || self.y()?.change_basis(&self.corpus.basis("y")?))
    }

    pub fn z_adapted(&self) -> Result<&FreeComplex> {
        cached(&self.z_adapted, || self.z()?.change_basis(&self.corpus.basis("z")?))
    }

    pub fn complex(&self, name: &str) -> Result<&FreeComplex> {
        match name {
            "k" => self.k(),
            "l" => self.l(),
            "x" => self.x_adapted(),
            "y" => self.y_adapted(),
            "z" => self.z_adapted(),
            _ => Err(Error::UnknownArtifact(format!("complex {name}"))),
        }
    }

    pub fn delta_l(&self) -> Result<&DiagonalTable> {
        cached(&self.delta_l, || {
            let cx = self.complex(self.corpus.diagonal_basis("l")?)?;
            self.corpus.diagonal_table("l", cx)
        })
    }

    pub fn delta_k(&self) -> Result<&DiagonalTable> {
        cached(&self.delta_k, || {
            let cx = self.complex(self.corpus.diagonal_basis("k")?)?;
            self.corpus.diagonal_table("k", cx)
        })
    }
}

fn check(
    id: &'static str,
    title: &'static str,
    reference: &'static str,
    deps: &'static [&'static str],
    run: fn(&Workbench) -> Result<Outcome>,
) -> CheckDef {
    CheckDef { id, title, reference, deps, run }
}

pub fn catalog() -> Vec<CheckDef> {
    vec![
        check(
            "X1",
            "presentation complex of S3 matches the displayed differentials",
            "d1 = (a-1, b-1); d2 = [[a+1, b^2*a+1], [0, a-b-1]]",
            &[],
            x1,
        ),
        check("X2", "psi is a 2-cycle", "d2(psi) = 0 for psi = (a-1, -b*a+a+b^2-b)", &["X1"], x2),
        check(
            "X3",
            "e/f basis diagonalizes d2 with hermitian entries",
            "d2 = diag(a+1, b^2*a+a-1) = conj-transpose(d2)",
            &["X2"],
            x3,
        ),
        check("X4", "C is self-dual in the e/f/g basis", "d3 = conj-transpose(d1); dual complex equals C", &["X3"], x4),
        check(
            "X5",
            "homology of the universal cover and of X",
            "H(C) = (Z, 0, 0, Z); H(Z (x) C) = (Z, Z/2, 0, Z)",
            &["X2"],
            x5,
        ),
        check(
            "X6",
            "annihilators of the diagonal entries are principal",
            "Ann(a+1) = Z[S3](a-1); Ann(b^2*a+a-1) = Z[S3](b-1)(b*a-1)",
            &[],
            x6,
        ),
        check(
            "X7",
            "lifting identity for every basis pair of Z[B]",
            "d3((p(b*a+b+1) + q(b*a+b))g) = p(a-1)f1 + q(b-1)(b*a-1)f2",
            &["X3", "X6"],
            x7,
        ),
        check(
            "X8",
            "H3 of the universal cover is generated by nu*g",
            "ker d3 = Z nu; nu = beta(a+1) = sum of S3; tr(1 (x) g) = nu g",
            &["X2"],
            x8,
        ),
        check(
            "Y1",
            "presentation complex of pi matches the displayed differentials",
            "d2 columns (a+1,0,0), (b^2*a+1, a-b-1, 0), (c^2*a+1, 0, a-c-1)",
            &[],
            y1,
        ),
        check(
            "Y2",
            "theta is a 2-cycle and the e~/f~ basis diagonalizes d2",
            "d2(theta) = 0; d2 = diag(a+1, b^2*a+a-1, c^2*a+a-1)",
            &["Y1"],
            y2,
        ),
        check("Y3", "D is self-dual in the e~/f~/g~ basis", "d2 hermitian; d3 = conj-transpose(d1)", &["Y2"], y3),
        check(
            "Y4",
            "claimed generators lie in ker d2",
            "(a-1)f1, (b-1)(b*a-1)f2, (c-1)(c*a-1)f3 in ker d2",
            &["Y2"],
            y4,
        ),
        check(
            "Y5",
            "ker d2 is generated by the claimed elements (bounded support)",
            "h d_i = 0 with supp h in ball(L) implies h in Pi k_i",
            &["Y4"],
            y5,
        ),
        check(
            "Y6",
            "d3 is injective (bounded support)",
            "h theta = 0 with supp h in ball(L) implies h = 0",
            &["Y2"],
            y6,
        ),
        check("Y7", "homology of Y with integer coefficients", "H(Z (x) D) = (Z, Z/2, 0, Z)", &["Y2"], y7),
        check(
            "Y8",
            "mod 2 Betti numbers and the square of u",
            "b(Y; F2) = (1, 1, 1, 1); u cup u != 0 in H2(Y; F2)",
            &["Y9"],
            y8,
        ),
        check(
            "Y9",
            "diagonal table satisfies the counit and chain-map identities",
            "(eps (x) 1)D = id = (1 (x) eps)D; dD = Dd in degrees <= 2",
            &["Y2", "X3"],
            y9,
        ),
        check(
            "Y10",
            "diagonal table is compatible with both embeddings of K",
            "D_L(i x) = (i (x) i) D_K(x) for i = i_b, i_c",
            &["Y9"],
            y10,
        ),
        check("Y11", "H1 of the double covers of Y and Z", "H1(Y') = H1(Z') = (Z/3)^2", &["Y2", "Z1"], y11),
        check(
            "Z1",
            "the xi-complex is self-dual with the homology of Y",
            "d2(xi) = 0; Z self-dual; H(Z (x) E) = H(Z (x) D)",
            &["Y1"],
            z1,
        ),
        check(
            "O1",
            "orientability obstruction over R = Z[a]/(a^2-1)",
            "R (x) I(pi) = R/(a+1) + (R/(a+1,3))^2; R (x) J = R/(a+w) + (R/(a+w,3))^2",
            &["Y1"],
            o1,
        ),
        check(
            "H1",
            "H3 from bar resolutions and Mayer-Vietoris",
            "H3(Z/2) = Z/2; H3(S3) = Z/6; H3(pi) = (Z/3)^2 + Z/2",
            &[],
            h1,
        ),
    ]
}

/// Sort key `X2 < X10 < Y1`.
pub fn id_order(id: &str) -> (String, u32) {
    let split = id.find(|c: char| c.is_ascii_digit()).unwrap_or(id.len());
    (id[..split].to_string(), id[split..].parse().unwrap_or(0))
}

/// Ids matching a filter: an exact id, or a prefix followed by `*`.
pub fn select(filters: &[String]) -> Result<Vec<&'static str>> {
    let all: Vec<&'static str> = catalog().iter().map(|c| c.id).collect();
    let mut chosen = BTreeSet::new();
    for f in filters {
        if let Some(prefix) = f.strip_suffix('*') {
            chosen.extend(all.iter().filter(|id| id.starts_with(prefix)));
        } else if let Some(id) = all.iter().find(|id| **id == f.as_str()) {
            chosen.insert(id);
        } else {
            return Err(Error::UnknownCheck(f.clone()));
        }
    }
    let mut out: Vec<&'static str> = chosen.into_iter().copied().collect();
    out.sort_by_key(|id| id_order(id));
    Ok(out)
}

/// Runs `ids` and their dependencies; returns results for `ids` only, sorted.
pub fn run_checks(bench: &Workbench, ids: &[&str]) -> Result<Vec<CheckResult>> {
    let defs = catalog();
    let by_id: BTreeMap<&str, &CheckDef> = defs.iter().map(|d| (d.id, d)).collect();
    let mut needed = BTreeSet::new();
    let mut stack: Vec<&str> = ids.to_vec();
    while let Some(id) = stack.pop() {
        let def = by_id.get(id).ok_or_else(|| Error::UnknownCheck(id.to_string()))?;
        if needed.insert(def.id) {
            stack.extend(def.deps);
        }
    }
    let mut done: BTreeMap<&str, CheckResult> = BTreeMap::new();
    while done.len() < needed.len() {
        let wave: Vec<&CheckDef> = needed
            .iter()
            .filter(|id| !done.contains_key(*id))
            .map(|id| by_id[id])
            .filter(|d| d.deps.iter().all(|dep| done.contains_key(dep)))
            .collect();
        assert!(!wave.is_empty(), "dependency cycle in the check catalog");
        let blocked: Vec<Option<&str>> = wave
            .iter()
            .map(|d| d.deps.iter().copied().find(|dep| matches!(done[dep].status, Status::Fail | Status::Skip)))
            .collect();
        let results = par::map_range(bench.par, wave.len(), |i| run_one(bench, wave[i], blocked[i]));
        for r in results {
            done.insert(r.id, r);
        }
    }
    let mut out: Vec<CheckResult> = ids.iter().map(|id| done[id].clone()).collect();
    out.sort_by_key(|r| id_order(r.id));
    Ok(out)
}

fn run_one(bench: &Workbench, def: &CheckDef, blocked: Option<&str>) -> CheckResult {
    let start = Instant::now();
    let (status, details) = match blocked {
        Some(dep) => {
            (Status::Skip, BTreeMap::from([("skipped".to_string(), format!("dependency {dep} did not pass"))]))
        }
        None => match (def.run)(bench) {
            Ok(o) => (o.status, o.details),
            Err(e) => (Status::Fail, BTreeMap::from([("error".to_string(), e.to_string())])),
        },
    };
    CheckResult { id: def.id, title: def.title, reference: def.reference, status, details, wall_time: start.elapsed() }
}

fn fmt_descriptors(hs: &[AbelianGroupDescriptor]) -> String {
    format!("({})", hs.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))
}

fn matrix_problem(got: &RingMatrix, want: &RingMatrix) -> Option<String> {
    let diff = got.differences(want);
    (!diff.is_empty()).then(|| diff.join("; "))
}

fn column_problem(residual: &[RingElement]) -> Option<String> {
    residual
        .iter()
        .any(|x| !x.is_zero())
        .then(|| format!("residual ({})", residual.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")))
}

fn compare_fox(cx: &FreeComplex, displayed: &[RingMatrix]) -> Result<Outcome> {
    let mut o = Outcome::new();
    for (k, want) in displayed.iter().enumerate() {
        o.require(&format!("d{}", k + 1), matrix_problem(cx.differential(k + 1), want));
    }
    o.require("d1*d2", cx.check().err().map(|e| e.to_string()));
    o.done()
}

fn x1(b: &Workbench) -> Result<Outcome> {
    compare_fox(b.k()?, &b.corpus.displayed_differentials("k")?)
}

fn y1(b: &Workbench) -> Result<Outcome> {
    compare_fox(b.l()?, &b.corpus.displayed_differentials("l")?)
}

fn cycle_check(o: &mut Outcome, cx: &FreeComplex, z: &[RingElement], key: &str) -> Result<()> {
    let residual = cx.differential(2).apply(z)?;
    o.require(key, column_problem(&residual));
    Ok(())
}

fn x2(b: &Workbench) -> Result<Outcome> {
    let mut o = Outcome::new();
    cycle_check(&mut o, b.k()?, &b.corpus.cycle("psi")?, "d2(psi)")?;
    o.done()
}

/// Differentials against the expected ones, diagonal and hermitian d2.
fn adapted_check(o: &mut Outcome, cx: &FreeComplex, expected: &[RingMatrix]) {
    for (k, want) in expected.iter().enumerate() {
        o.require(&format!("d{}", k + 1), matrix_problem(cx.differential(k + 1), want));
    }
    let d2 = cx.differential(2);
    o.require("d2 diagonal", (!d2.is_diagonal()).then(|| d2.to_string()));
    let herm = d2.differences(&d2.conjugate_transpose(OrientationCharacter::TRIVIAL));
    o.require("d2 hermitian", (!herm.is_empty()).then(|| herm.join("; ")));
}

fn x3(b: &Workbench) -> Result<Outcome> {
    let mut o = Outcome::new();
    adapted_check(&mut o, b.x_adapted()?, &b.corpus.expected_differentials("x")?);
    o.done()
}

fn self_dual_check(o: &mut Outcome, cx: &FreeComplex) -> Result<()> {
    let chi = OrientationCharacter::TRIVIAL;
    let sd = cx.self_duality(chi)?;
    o.require("d2 hermitian", (!sd.hermitian.is_empty()).then(|| sd.hermitian.join("; ")));
    o.require("d3 = conj-transpose(d1)", (!sd.transpose.is_empty()).then(|| sd.transpose.join("; ")));
    let dual = cx.dual_conjugate_transpose(chi);
    let same = dual.differentials() == cx.differentials();
    o.require("dual complex equals the complex", (!same).then(|| "differentials differ".to_string()));
    let back = dual.dual_conjugate_transpose(chi);
    o.require("dual of dual", (back != *cx).then(|| "not the original complex".to_string()));
    Ok(())
}

fn x4(b: &Workbench) -> Result<Outcome> {
    let mut o = Outcome::new();
    self_dual_check(&mut o, b.x_adapted()?)?;
    o.done()
}

fn x5(b: &Workbench) -> Result<Outcome> {
    let mut o = Outcome::new();
    let universal = homology(&b.x()?.flatten()?, b.par)?;
    o.require_eq(
        "universal cover",
        &fmt_descriptors(&universal),
        &fmt_descriptors(&b.corpus.expected_homology("x_universal")?),
    );
    let adapted = homology(&b.x_adapted()?.flatten()?, b.par)?;
    o.require_eq("universal cover, e/f basis", &fmt_descriptors(&adapted), &fmt_descriptors(&universal));
    let quotient = homology(&b.x()?.augment(), b.par)?;
    o.require_eq("X", &fmt_descriptors(&quotient), &fmt_descriptors(&b.corpus.expected_homology("x")?));
    o.done()
}

fn x6(b: &Workbench) -> Result<Outcome> {
    let mut o = Outcome::new();
    for (x, y) in b.corpus.annihilators()? {
        let ann = left_annihilator(&x)?;
        let ideal = principal_left_ideal(&y)?;
        let key = format!("Ann({x})");
        if ann == ideal {
            o.note(&key, format!("Z[S3]({y}), rank {}", ann.rank()));
        } else {
            o.require(
                &key,
                Some(format!("rank {} lattice differs from Z[S3]({y}) of rank {}", ann.rank(), ideal.rank())),
            );
        }
        let elements = enumerate(x.group(), None)?;
        let killed = ann.basis_dense().iter().all(|v| {
            let h = RingElement::from_terms(x.group(), elements.iter().cloned().zip(v.iter().cloned())).expect("S3");
            h.try_mul(&x).map(|p| p.is_zero()).unwrap_or(false)
        });
        o.require(&format!("Ann({x}) * ({x}) = 0"), (!killed).then(|| "a basis vector does not annihilate".into()));
    }
    o.done()
}

fn x7(b: &Workbench) -> Result<Outcome> {
    let mut o = Outcome::new();
    let cx = b.x_adapted()?;
    let lift = b.corpus.lifting_coefficients()?;
    let gens: Vec<RingElement> = b.corpus.annihilators()?.into_iter().map(|(_, y)| y).collect();
    if lift.len() != 2 || gens.len() != 2 {
        return Err(Error::Format("two lifting coefficients and two annihilator generators are required".into()));
    }
    let zb: Vec<RingElement> = enumerate(GroupId::S3, None)?
        .into_iter()
        .filter(|g| g.a_parity() == 0)
        .map(RingElement::from_element)
        .collect();
    let mut failures = Vec::new();
    for p in &zb {
        for q in &zb {
            let h = p.try_mul(&lift[0])?.try_add(&q.try_mul(&lift[1])?)?;
            let lhs = cx.differential(3).apply(&[h])?;
            let rhs = vec![p.try_mul(&gens[0])?, q.try_mul(&gens[1])?];
            if lhs != rhs {
                failures.push(format!("p = {p}, q = {q}"));
            }
        }
    }
    o.note("pairs", zb.len() * zb.len());
    o.require("identity", (!failures.is_empty()).then(|| failures.join("; ")));
    o.done()
}

fn x8(b: &Workbench) -> Result<Outcome> {
    let mut o = Outcome::new();
    let nu = b.corpus.named_element("nu")?;
    let beta = b.corpus.named_element("beta")?;
    let product = beta.try_mul(&RingElement::parse(GroupId::S3, "a + 1")?)?;
    o.require("nu = beta(a+1)", (product != nu).then(|| format!("beta(a+1) = {product}, nu = {nu}")));
    let sum = enumerate(GroupId::S3, None)?
        .into_iter()
        .fold(RingElement::zero(GroupId::S3), |acc, g| acc.try_add(&RingElement::from_element(g)).expect("S3"));
    o.require("transfer: sum of s*g = nu*g", (sum != nu).then(|| format!("sum of S3 is {sum}")));
    o.require_eq("support of nu", &nu.support_len(), &6);
    let d3 = b.x()?.differential(3).flatten()?;
    let s = smith(&d3, Transforms::RIGHT, b.par);
    let kernel = s.kernel_basis().expect("tracked");
    o.require_eq("rank of ker d3", &kernel.len(), &1);
    if let Some(k) = kernel.first() {
        let primitive = content(k).is_one();
        let target = coordinates(&nu)?;
        let neg: Vec<BigInt> = target.iter().map(|x| -x).collect();
        o.require("ker d3 = Z nu g", (!primitive || (k != &target && k != &neg)).then(|| format!("generator {k:?}")));
    }
    let nu_psi = b.x()?.differential(3).apply(std::slice::from_ref(&nu))?;
    o.require("nu*g is a cycle", column_problem(&nu_psi));
    let h3 = homology(&b.x()?.augment(), b.par)?;
    let aug_d3 = b.x()?.augment().differential(3).clone();
    o.require(
        "1 (x) g is a cycle generating H3(X)",
        (!aug_d3.is_zero() || h3[3] != AbelianGroupDescriptor::free(1)).then(|| h3[3].to_string()),
    );
    o.done()
}

fn y2(b: &Workbench) -> Result<Outcome> {
    let mut o = Outcome::new();
    cycle_check(&mut o, b.l()?, &b.corpus.cycle("theta")?, "d2(theta)")?;
    adapted_check(&mut o, b.y_adapted()?, &b.corpus.expected_differentials("y")?);
    o.done()
}

fn y3(b: &Workbench) -> Result<Outcome> {
    let mut o = Outcome::new();
    self_dual_check(&mut o, b.y_adapted()?)?;
    o.done()
}

fn diagonal_entries(cx: &FreeComplex) -> Vec<RingElement> {
    let d2 = cx.differential(2);
    (0..d2.cols()).map(|i| d2.get(i, i).clone()).collect()
}

fn y4(b: &Workbench) -> Result<Outcome> {
    let mut o = Outcome::new();
    let d = diagonal_entries(b.y_adapted()?);
    let gens = b.corpus.kernel_generators()?;
    o.require_eq("number of generators", &gens.len(), &d.len());
    for (i, (k, di)) in gens.iter().zip(&d).enumerate() {
        let p = k.try_mul(di)?;
        o.require(&format!("({k}) f{}", i + 1), (!p.is_zero()).then(|| format!("d2 gives ({p}) e{}", i + 1)));
    }
    o.done()
}

fn y5(b: &Workbench) -> Result<Outcome> {
    let mut o = Outcome::new();
    let l = b.max_length;
    let d = diagonal_entries(b.y_adapted()?);
    let gens = b.corpus.kernel_generators()?;
    let mut inconclusive = false;
    for (i, (k, di)) in gens.iter().zip(&d).enumerate() {
        let slack = k.length() + 2;
        let s = bounded_kernel_search(std::slice::from_ref(di), l, Some(k), slack, b.par)?;
        let msg = format!(
            "kernel rank {} on ball({l}) of {} elements, {} outside Pi({k}) within ball({})",
            s.kernel.len(),
            s.ball_size,
            s.unexplained.len(),
            l + slack
        );
        o.note(&format!("f{}", i + 1), msg);
        inconclusive |= s.outcome != SearchOutcome::Certified;
    }
    o.status = if inconclusive { Status::Inconclusive(l) } else { Status::Partial(l) };
    o.done()
}

fn y6(b: &Workbench) -> Result<Outcome> {
    let mut o = Outcome::new();
    let l = b.max_length;
    let theta = b.y_adapted()?.differential(3).column(0);
    let s = bounded_kernel_search(&theta, l, None, 0, b.par)?;
    o.note("ball size", s.ball_size);
    o.note("kernel rank", s.kernel.len());
    o.status = match s.outcome {
        SearchOutcome::Fail => {
            o.note("kernel element", &s.kernel[0]);
            Status::Fail
        }
        _ => Status::Partial(l),
    };
    o.done()
}

fn y7(b: &Workbench) -> Result<Outcome> {
    let mut o = Outcome::new();
    let h = homology(&b.y()?.augment(), b.par)?;
    o.require_eq("Y", &fmt_descriptors(&h), &fmt_descriptors(&b.corpus.expected_homology("y")?));
    let d2 = b.y_adapted()?.augment().differential(2).clone();
    o.note("augmented d2, e~/f~ basis", d2.to_string().replace('\n', " "));
    o.done()
}

fn y8(b: &Workbench) -> Result<Outcome> {
    let mut o = Outcome::new();
    let cx = b.y_adapted()?;
    let aug = cx.augment();
    let betti = crate::homology::betti_mod(&aug, 2);
    o.require_eq("F2 Betti numbers", &format!("{betti:?}"), &format!("{:?}", b.corpus.expected_betti("y_betti_f2")?));
    // u is dual to e1; u cup u on a 2-cell pairs u (x) u with the (1,1) part of D
    let table = b.delta_l()?;
    let e1 = Cell { degree: 1, index: 0 };
    let two = BigInt::from(2);
    let uu: Vec<BigInt> = (0..cx.ranks()[2])
        .map(|j| {
            let value = table.get(Cell { degree: 2, index: j });
            let sum: BigInt = value
                .map(|v| v.terms().filter(|(k, _)| k.left == e1 && k.right == e1).map(|(_, n)| n.clone()).sum())
                .unwrap_or_default();
            ((sum % &two) + &two) % &two
        })
        .collect();
    o.note("u cup u on (f1, f2, f3)", format!("{uu:?}"));
    let d2 = aug.differential(2);
    let du: BigInt = (0..d2.cols()).map(|j| d2.get(0, j).clone()).filter(|x| !(x % &two).is_zero()).count().into();
    o.require("u is a cocycle", (!du.is_zero()).then(|| "d2 has odd e1-coefficients".to_string()));
    let d3 = aug.differential(3);
    let pairing: BigInt = (0..d3.rows()).map(|i| &uu[i] * d3.get(i, 0)).sum();
    o.require("u cup u is a cocycle", (!(pairing % &two).is_zero()).then(|| "nonzero on g".to_string()));
    let coboundaries = d2.transpose();
    let with_uu = IntMatrix::from_fn(coboundaries.rows() + 1, coboundaries.cols(), |i, j| {
        if i < coboundaries.rows() {
            coboundaries.get(i, j).clone()
        } else {
            uu[j].clone()
        }
    });
    let nonzero = with_uu.rank_mod(2) > coboundaries.rank_mod(2);
    o.require("u cup u != 0 in H2", (!nonzero).then(|| "u cup u is a coboundary".to_string()));
    o.done()
}

fn diagonal_report(o: &mut Outcome, key: &str, r: &crate::tensor::DiagonalReport) {
    let problem =
        (!r.passed()).then(|| r.failures.iter().map(|(c, res)| format!("{c}: {res}")).collect::<Vec<_>>().join("; "));
    o.require(key, problem);
}

fn y9(b: &Workbench) -> Result<Outcome> {
    let mut o = Outcome::new();
    for (name, table, cx) in [("L", b.delta_l()?, b.y_adapted()?), ("K", b.delta_k()?, b.x_adapted()?)] {
        for (mode, label) in [(DiagonalMode::Counit, "counit"), (DiagonalMode::ChainMap, "chain map")] {
            let r = verify_diagonal(table, cx, mode)?;
            diagonal_report(&mut o, &format!("{name} {label}"), &r);
        }
    }
    o.done()
}

/// Cellular embeddings of K (e/f basis) into L (e~/f~ basis) in degrees <= 2.
pub fn embeddings() -> Result<Vec<(&'static str, ChainMap)>> {
    let mk = |hom: GroupHom, slot: usize| -> Result<ChainMap> {
        let one = |rows: usize, cols: usize, pairs: &[(usize, usize)]| {
            let mut m = RingMatrix::zeros(GroupId::Pi, rows, cols);
            for &(i, j) in pairs {
                m.set(i, j, RingElement::one(GroupId::Pi));
            }
            m
        };
        Ok(ChainMap::new(
            hom,
            vec![one(1, 1, &[(0, 0)]), one(3, 2, &[(0, 0), (slot, 1)]), one(3, 2, &[(0, 0), (slot, 1)])],
        ))
    };
    Ok(vec![("i_b", mk(GroupHom::inclusion_b(), 1)?), ("i_c", mk(GroupHom::inclusion_c(), 2)?)])
}

/// Cellular retractions of L onto K: the collapsed 1-cell goes to the
/// boundary-compatible multiple of e1, the collapsed 2-cell to one of f1.
pub fn retractions() -> Result<Vec<(&'static str, ChainMap)>> {
    let s3 = |s: &str| RingElement::parse(GroupId::S3, s);
    let build = |hom: GroupHom, keep: usize, drop: usize| -> Result<ChainMap> {
        let mut d0 = RingMatrix::zeros(GroupId::S3, 1, 1);
        d0.set(0, 0, s3("1")?);
        let mut d1 = RingMatrix::zeros(GroupId::S3, 2, 3);
        d1.set(0, 0, s3("1")?);
        d1.set(1, keep, s3("1")?);
        d1.set(0, drop, s3("-a - 1")?);
        let mut d2 = RingMatrix::zeros(GroupId::S3, 2, 3);
        d2.set(0, 0, s3("1")?);
        d2.set(1, keep, s3("1")?);
        d2.set(0, drop, s3("-a")?);
        Ok(ChainMap::new(hom, vec![d0, d1, d2]))
    };
    Ok(vec![("r_b", build(GroupHom::retraction_b(), 1, 2)?), ("r_c", build(GroupHom::retraction_c(), 2, 1)?)])
}

fn truncate(cx: &FreeComplex) -> Result<FreeComplex> {
    FreeComplex::new(cx.group(), cx.differentials()[..2].to_vec(), cx.all_labels()[..3].to_vec())
}

fn y10(b: &Workbench) -> Result<Outcome> {
    let mut o = Outcome::new();
    let (k, l) = (truncate(b.x_adapted()?)?, truncate(b.y_adapted()?)?);
    for (name, f) in embeddings()? {
        let bad = f.failures(&k, &l)?;
        o.require(&format!("{name} is a chain map"), (!bad.is_empty()).then(|| format!("fails in degrees {bad:?}")));
        let r = verify_embedding(b.delta_k()?, &k, b.delta_l()?, &l, &f)?;
        diagonal_report(&mut o, &format!("{name} compatibility"), &r);
    }
    for (name, r) in retractions()? {
        let bad = r.failures(&l, &k)?;
        o.note(
            &format!("{name} chain map"),
            if bad.is_empty() { "yes".into() } else { format!("fails in degrees {bad:?}") },
        );
        let rep = verify_collapse(b.delta_l()?, &l, b.delta_k()?, &k, &r)?;
        let summary = if rep.passed() {
            "compatible on every cell".to_string()
        } else {
            rep.failures.iter().map(|(c, res)| format!("{c}: {res}")).collect::<Vec<_>>().join("; ")
        };
        o.note(&format!("{name} collapse residuals (informational)"), summary);
    }
    o.done()
}

fn double_cover_h1(cx: &FreeComplex, par: Parallelism) -> Result<(Vec<usize>, AbelianGroupDescriptor)> {
    let r = cx.restrict_to_index_two()?;
    let h = homology(&r.augment(), par)?;
    Ok((r.ranks().to_vec(), h[1].clone()))
}

fn y11(b: &Workbench) -> Result<Outcome> {
    let mut o = Outcome::new();
    let want = b.corpus.expected_descriptor("homology", "y_double_h1")?;
    for (name, cx) in [("Y'", b.y()?), ("Z'", b.z()?)] {
        let (ranks, h1) = double_cover_h1(cx, b.par)?;
        o.note(&format!("{name} ranks over Z[pi']"), format!("{ranks:?}"));
        o.require_eq(&format!("H1({name})"), &h1.primary_form(), &want.primary_form());
    }
    o.done()
}

fn z1(b: &Workbench) -> Result<Outcome> {
    let mut o = Outcome::new();
    cycle_check(&mut o, b.l()?, &b.corpus.cycle("xi")?, "d2(xi)")?;
    let cx = b.z_adapted()?;
    adapted_check(&mut o, cx, &b.corpus.expected_differentials("z")?);
    self_dual_check(&mut o, cx)?;
    let hz = homology(&b.z()?.augment(), b.par)?;
    let hy = homology(&b.y()?.augment(), b.par)?;
    o.require_eq("H(Z) = H(Y)", &fmt_descriptors(&hz), &fmt_descriptors(&hy));
    o.done()
}

fn o1(b: &Workbench) -> Result<Outcome> {
    let mut o = Outcome::new();
    let d2 = b.l()?.differential(2);
    let i_pi = r_module_invariants(&d2.to_r());
    let i_ref = r_module_invariants(&cyclic_sum(&b.corpus.module_reference("i_pi")?));
    o.require_eq("R (x) I(pi)", &i_pi.to_string(), &i_ref.to_string());
    for (w, name) in [(1i8, "j_plus"), (-1, "j_minus")] {
        let chi = OrientationCharacter::new(w)?;
        let j = r_module_invariants(&d2.conjugate_transpose(chi).to_r());
        let j_ref = r_module_invariants(&cyclic_sum(&b.corpus.module_reference(name)?));
        o.require_eq(&format!("R (x) J, w = {w:+}"), &j.to_string(), &j_ref.to_string());
        let verdict = if j == i_pi { "MATCH" } else { "MISMATCH" };
        let expected = if w == 1 { "MATCH" } else { "MISMATCH" };
        o.require_eq(&format!("comparison, w = {w:+}"), &verdict, &expected);
    }
    o.done()
}

fn h1(b: &Workbench) -> Result<Outcome> {
    let mut o = Outcome::new();
    let c = &b.corpus;
    o.require_eq("H3(Z/2)", &bar_homology(GroupId::Z2, 3, b.par)?, &c.expected_descriptor("group_homology", "h3_z2")?);
    let mv = mayer_vietoris_h3(b.par)?;
    o.require_eq("H3(S3)", &mv.h3_factor, &c.expected_descriptor("group_homology", "h3_s3")?);
    o.require("H2(Z/2) = 0", (!mv.h2_amalgamated.is_zero()).then(|| mv.h2_amalgamated.to_string()));
    let want = c.expected_descriptor("group_homology", "h3_pi")?;
    if mv.h3 == want {
        o.note("H3(pi)", mv.h3.primary_form());
    } else {
        o.require("H3(pi)", Some(format!("{}, expected {}", mv.h3.primary_form(), want.primary_form())));
    }
    o.done()
}

/// Outcome of one injected fault.
#[derive(Clone, Debug)]
pub struct MutationOutcome {
    pub site: String,
    pub failing: Vec<&'static str>,
}

/// Runs the full suite on `count` sampled single-coefficient mutations.
pub fn mutation_audit(
    corpus: &Corpus,
    count: usize,
    seed: u64,
    max_length: usize,
    par: Parallelism,
) -> Result<Vec<MutationOutcome>> {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    let sites = corpus.mutation_sites();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let chosen: Vec<_> = sites.choose_multiple(&mut rng, count.min(sites.len())).cloned().collect();
    audit_sites(corpus, &chosen, max_length, par)
}

pub fn audit_sites(
    corpus: &Corpus,
    sites: &[crate::corpus::MutationSite],
    max_length: usize,
    par: Parallelism,
) -> Result<Vec<MutationOutcome>> {
    let ids: Vec<&str> = catalog().iter().map(|c| c.id).collect();
    let runs = par::map(par, sites, |site| -> Result<MutationOutcome> {
        let bench = Workbench::new(corpus.mutate(site)?, max_length, Parallelism::Sequential);
        let results = run_checks(&bench, &ids)?;
        let failing = results.iter().filter(|r| r.status == Status::Fail).map(|r| r.id).collect();
        Ok(MutationOutcome { site: site.to_string(), failing })
    });
    runs.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selection_and_order() {
        assert_eq!(select(&["Y1".into(), "X*".into()]).unwrap().len(), 9);
        assert!(matches!(select(&["Q9".into()]), Err(Error::UnknownCheck(_))));
        let mut ids = vec!["Y10", "X2", "Y2", "H1"];
        ids.sort_by_key(|id| id_order(id));
        assert_eq!(ids, ["H1", "X2", "Y2", "Y10"]);
    }

    #[test]
    fn full_suite_on_embedded_corpus() {
        let bench = Workbench::new(Corpus::embedded(), 3, Parallelism::Parallel);
        let ids: Vec<&str> = catalog().iter().map(|c| c.id).collect();
        let results = run_checks(&bench, &ids).unwrap();
        for r in &results {
            eprintln!("{} {} {:?}", r.id, r.status, r.details);
        }
        for r in &results {
            assert!(matches!(r.status, Status::Pass | Status::Partial(_)), "{} {}", r.id, r.status);
        }
    }

    #[test]
    #[ignore = "runs the suite once per corpus coefficient"]
    fn every_mutation_site_is_caught() {
        let corpus = Corpus::embedded();
        let sites = corpus.mutation_sites();
        let outcomes = audit_sites(&corpus, &sites, 2, Parallelism::Parallel).unwrap();
        let escaped: Vec<&str> = outcomes.iter().filter(|o| o.failing.is_empty()).map(|o| o.site.as_str()).collect();
        eprintln!("{} sites", sites.len());
        assert!(escaped.is_empty(), "{escaped:#?}");
    }
}
