//! Seeded randomized smoke tests at a degree bound above the exhaustive
//! one.  These are explicitly opt-in (`--sample <seed>`), printed
//! alongside the report, and never affect the verdict or exit code.

use thetakit_core::oracle::ReedyOracle;
use thetakit_core::term::MultiMorphism;

/// SplitMix64: tiny, deterministic, dependency-free.
pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng(seed)
    }

    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    fn below(&mut self, n: usize) -> usize {
        (self.next() % n as u64) as usize
    }
}

pub struct SmokeResult {
    pub what: &'static str,
    pub bound: u32,
    pub seed: u64,
    pub trials: u32,
    pub failures: Vec<String>,
}

impl SmokeResult {
    pub fn render(&self) -> String {
        let mut out = format!(
            "sample[{}] seed={} bound={}: {}/{} ok",
            self.what,
            self.seed,
            self.bound,
            self.trials - self.failures.len() as u32,
            self.trials
        );
        for f in &self.failures {
            out.push_str("\n  sample failure: ");
            out.push_str(f);
        }
        out
    }
}

const TRIALS: u32 = 200;

pub fn smoke_category(oracle: &dyn ReedyOracle, bound: u32, seed: u64) -> SmokeResult {
    let mut rng = Rng::new(seed);
    let objects = oracle.enumerate_objects(bound);
    let mut failures = Vec::new();
    for _ in 0..TRIALS {
        let a = &objects[rng.below(objects.len())];
        let b = &objects[rng.below(objects.len())];
        let c = &objects[rng.below(objects.len())];
        let d = &objects[rng.below(objects.len())];
        let (hab, hbc, hcd) = match (
            oracle.enumerate_hom(a, b),
            oracle.enumerate_hom(b, c),
            oracle.enumerate_hom(c, d),
        ) {
            (Ok(x), Ok(y), Ok(z)) => (x, y, z),
            _ => {
                failures.push("hom enumeration failed".to_string());
                continue;
            }
        };
        if hab.is_empty() || hbc.is_empty() || hcd.is_empty() {
            continue;
        }
        let f = &hab[rng.below(hab.len())];
        let g = &hbc[rng.below(hbc.len())];
        let h = &hcd[rng.below(hcd.len())];
        let left = oracle.compose(g, f).and_then(|gf| oracle.compose(h, &gf));
        let right = oracle.compose(h, g).and_then(|hg| oracle.compose(&hg, f));
        match (left, right) {
            (Ok(l), Ok(r)) if l == r => {}
            _ => failures.push(format!(
                "associativity failed at f={} g={} h={}",
                f.render_name(),
                g.render_name(),
                h.render_name()
            )),
        }
    }
    SmokeResult {
        what: "category",
        bound,
        seed,
        trials: TRIALS,
        failures,
    }
}

pub fn smoke_multireedy(
    oracle: &dyn ReedyOracle,
    bound: u32,
    valence: u32,
    seed: u64,
) -> SmokeResult {
    let mut rng = Rng::new(seed);
    let objects = oracle.enumerate_objects(bound);
    let mut failures = Vec::new();
    for _ in 0..TRIALS {
        let c = &objects[rng.below(objects.len())];
        let u = rng.below(valence as usize + 1);
        let mut components = Vec::with_capacity(u);
        let mut ok = true;
        for _ in 0..u {
            let d = &objects[rng.below(objects.len())];
            match oracle.enumerate_hom(c, d) {
                Ok(hom) if !hom.is_empty() => {
                    components.push(hom[rng.below(hom.len())].clone());
                }
                _ => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            continue;
        }
        let family = MultiMorphism::new(c.clone(), components);
        match oracle.factorize(&family) {
            Ok(fac) => {
                let valid = oracle.is_minus(&fac.minus_part)
                    && oracle.is_plus_family(&fac.plus_part)
                    && fac
                        .plus_part
                        .components
                        .iter()
                        .zip(&family.components)
                        .all(|(h, f)| {
                            oracle
                                .compose(h, &fac.minus_part)
                                .map(|back| &back == f)
                                .unwrap_or(false)
                        });
                if !valid {
                    failures.push(format!(
                        "factorization invalid for a family out of {}",
                        c.render()
                    ));
                }
            }
            Err(e) => failures.push(format!("factorize failed: {e}")),
        }
    }
    SmokeResult {
        what: "multireedy",
        bound,
        seed,
        trials: TRIALS,
        failures,
    }
}

pub fn smoke_ez(oracle: &dyn ReedyOracle, bound: u32, seed: u64) -> SmokeResult {
    let mut rng = Rng::new(seed);
    let objects = oracle.enumerate_objects(bound);
    let mut failures = Vec::new();
    for _ in 0..TRIALS {
        let c = &objects[rng.below(objects.len())];
        let d = &objects[rng.below(objects.len())];
        let minus: Vec<_> = match oracle.enumerate_hom(c, d) {
            Ok(hom) => hom.into_iter().filter(|f| oracle.is_minus(f)).collect(),
            Err(_) => continue,
        };
        if minus.is_empty() {
            continue;
        }
        let sigma = &minus[rng.below(minus.len())];
        let id = match oracle.identity(d) {
            Ok(id) => id,
            Err(_) => continue,
        };
        let has_section = oracle
            .enumerate_hom(d, c)
            .map(|hom| {
                hom.iter().any(|beta| {
                    oracle
                        .compose(sigma, beta)
                        .map(|h| h == id)
                        .unwrap_or(false)
                })
            })
            .unwrap_or(false);
        if !has_section {
            failures.push(format!("no section for sigma={}", sigma.render_name()));
        }
    }
    SmokeResult {
        what: "ez",
        bound,
        seed,
        trials: TRIALS,
        failures,
    }
}
