use std::path::Path;

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use higgsgrass::grasseq::{rankd_ideal, GrassIdeal};
use higgsgrass::grobner::{default_spair_budget, monomial_minimal_primes, set_default_spair_budget, Ideal};
use higgsgrass::polyring::{format_rat, parse_poly, parse_rat, PolyMatrix, Rat, VarSet};
use higgsgrass::rank2::{classify_rank2, singular_locus_rank2};
use higgsgrass::spectral::{spectral_fiber_degree, spectral_ideal};
use higgsgrass::structure::{classify_morphism, predicted_ideal, JordanSpec, PredictMode, Predicted};
use higgsgrass::systems::{flag_fiber_report, flag_ideal, quot_canonicalize, simpson_grass_check, flag_case_field, FlagCase};

use crate::output::{gens, num, strings, strings_blocks};
use crate::problem::{self, ProblemFile};
use crate::{CliError, Command, Mode};

/// State of one invocation: the seed in force and a digest over everything
/// read.
pub struct Run {
    seed_flag: Option<u64>,
    file_seed: Option<u64>,
    hasher: Sha256,
}

impl Run {
    pub fn new(seed_flag: Option<u64>) -> Self {
        Run {
            seed_flag,
            file_seed: None,
            hasher: Sha256::new(),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed_flag.or(self.file_seed).unwrap_or(0)
    }

    pub fn budget(&self) -> u64 {
        default_spair_budget()
    }

    pub fn digest(&self) -> String {
        hex::encode(self.hasher.clone().finalize())
    }

    fn note(&mut self, key: &str, value: &str) {
        self.hasher.update(format!("{key}={value}\n").as_bytes());
    }

    fn load(&mut self, path: &Path) -> Result<ProblemFile, CliError> {
        let l = problem::load(path)?;
        self.note("file", &l.digest);
        if self.file_seed.is_none() {
            self.file_seed = l.problem.seed;
        }
        if let Some(b) = l.problem.spair_budget {
            set_default_spair_budget(b);
        }
        Ok(l.problem)
    }

    pub fn dispatch(&mut self, cmd: &Command) -> Result<Value, CliError> {
        self.note("command", cmd.name());
        match cmd {
            Command::Check { input } => {
                let h = self.load(input)?.higgs()?;
                Ok(json!({ "valid": true, "base_dim": num(h.n()), "rank": num(h.r()) }))
            }
            Command::Grass { input, d, pluecker_relations } => {
                self.note("d", &d.to_string());
                self.note("pluecker_relations", &pluecker_relations.to_string());
                let h = self.load(input)?.higgs()?;
                let g = rankd_ideal(&h, *d, *pluecker_relations)?;
                Ok(grass_value(&g))
            }
            Command::Structure { spec, mode, component } => {
                self.note("mode", &format!("{mode:?}"));
                self.note("component", &component.to_string());
                let s = self.load(spec)?.spec()?;
                structure(&s, *mode, *component)
            }
            Command::Classify2 { input } => {
                let h = self.load(input)?.higgs()?;
                let c = classify_rank2(&h)?;
                let w = &c.witness;
                let opt = |p: &Option<higgsgrass::polyring::Poly>| p.as_ref().map_or(Value::Null, |p| json!(p.to_string()));
                Ok(json!({
                    "tag": c.tag.as_str(),
                    "delta": c.delta.to_string(),
                    "which": c.which.map_or(Value::Null, num),
                    "witness": {
                        "gcd": opt(&w.gcd),
                        "sqrt_delta": opt(&w.sqrt_delta),
                        "factors": strings(&w.factors),
                        "quadric": opt(&w.quadric),
                    },
                }))
            }
            Command::Singular2 { input, which } => {
                self.note("which", &which.to_string());
                let h = self.load(input)?.higgs()?;
                let i = singular_locus_rank2(&h, *which)?;
                let basis = i.basis()?;
                Ok(json!({ "vars": i.vars().names(), "generators": strings(basis), "unit": i.is_unit()? }))
            }
            Command::Spectral { input } => {
                let h = self.load(input)?.higgs()?;
                let s = spectral_ideal(&h)?;
                let keys: Vec<Vec<String>> = s.keys.iter().map(|k| k.iter().map(u32::to_string).collect()).collect();
                Ok(json!({ "vars": s.ideal.vars().names(), "generators": gens(&s.ideal), "keys": keys }))
            }
            Command::SpectralDegree { input, point } => {
                self.note("point", point);
                let h = self.load(input)?.higgs()?;
                let s = spectral_ideal(&h)?;
                let p = parse_point(point)?;
                Ok(json!({ "point": point_strings(&p), "degree": num(spectral_fiber_degree(&s, &p)?) }))
            }
            Command::Simpson { n, d } => {
                self.note("n", &n.to_string());
                self.note("d", &d.to_string());
                let rep = simpson_grass_check(*n, *d)?;
                Ok(json!({
                    "grass": grass_value(&rep.grass),
                    "radical": gens(&rep.radical),
                    "power": num(rep.power),
                    "certified": true,
                }))
            }
            Command::Flag { case_file, point } => {
                self.note("point", point);
                let bytes = std::fs::read(case_file)
                    .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", case_file.display())))?;
                self.note("file", &problem::digest(&bytes));
                let case = parse_case(&bytes)?;
                let f = flag_ideal(&flag_case_field(&case)?)?;
                let p = parse_point(point)?;
                let rep = flag_fiber_report(&f, &p, self.seed())?;
                let nb = f.base_vars.len();
                let blocks = [(nb..nb + 6).collect(), (0..nb).collect()];
                Ok(json!({
                    "vars": f.ideal.vars().names(),
                    "generators": strings_blocks(f.ideal.gens(), &blocks),
                    "point": point_strings(&p),
                    "length": num(rep.length),
                    "point_count": rep.point_count.map_or(Value::Null, num),
                }))
            }
            Command::Fiber { input, d, point, groups } => {
                self.note("d", &d.to_string());
                self.note("point", point);
                self.note("groups", groups.as_deref().unwrap_or(""));
                let h = self.load(input)?.higgs()?;
                let g = rankd_ideal(&h, *d, *d >= 2)?;
                let p = parse_point(point)?;
                let fiber = g.restrict_fiber(&p)?;
                let groups = match groups {
                    Some(s) => parse_groups(s, fiber.vars().len())?,
                    None => vec![(0..fiber.vars().len()).collect()],
                };
                let deg = fiber.projective_degree(&groups, self.seed())?;
                Ok(json!({
                    "vars": fiber.vars().names(),
                    "generators": gens(&fiber),
                    "point": point_strings(&p),
                    "degree": num(deg),
                }))
            }
            Command::Quot { matrix, var } => {
                self.note("matrix", matrix);
                self.note("var", var);
                let rows: Vec<Vec<String>> =
                    serde_json::from_str(matrix).map_err(|e| CliError::Usage(format!("--matrix: {e}")))?;
                let vars = VarSet::new([var.as_str()]).map_err(higgsgrass::Error::from)?;
                let m = PolyMatrix::parse(&rows, &vars).map_err(higgsgrass::Error::from)?;
                let r = quot_canonicalize(&m)?;
                Ok(json!({
                    "p1": r.point.p1.to_string(),
                    "p2": r.point.p2.to_string(),
                    "q": r.point.q.to_string(),
                    "invariant": r.invariant,
                    "colength": num(r.colength),
                    "phi_pair": [gens(&r.phi_pair.0), gens(&r.phi_pair.1)],
                }))
            }
            Command::Compare { input, against } => {
                let (a, b) = self.two_ideals(input, against)?;
                Ok(json!({ "equal": a.equals(&b)? }))
            }
            Command::Member { input, poly } => {
                self.note("poly", poly);
                let i = self.load(input)?.ideal()?;
                let p = parse_poly(poly, i.vars()).map_err(higgsgrass::Error::from)?;
                Ok(json!({ "member": i.contains(&p)?, "normal_form": i.normal_form(&p)?.to_string() }))
            }
            Command::Intersect { input, against } => {
                let (a, b) = self.two_ideals(input, against)?;
                let i = a.intersect(&b)?;
                Ok(json!({ "vars": i.vars().names(), "generators": strings(i.basis()?) }))
            }
            Command::MinimalPrimes { input } => {
                let i = self.load(input)?.ideal()?;
                let primes = monomial_minimal_primes(&i)?;
                let list: Vec<Value> = primes.iter().map(gens).collect();
                Ok(json!({ "primes": list, "count": num(primes.len()) }))
            }
        }
    }

    fn two_ideals(&mut self, a: &Path, b: &Path) -> Result<(Ideal, Ideal), CliError> {
        let a = self.load(a)?.ideal()?;
        let b = self.load(b)?.ideal()?;
        if a.vars() != b.vars() {
            return Err(CliError::Input("the two ideals are over different variables".into()));
        }
        Ok((a, b))
    }
}

/// Fiber variables first, then the base.
fn fiber_first(vars: &VarSet, nb: usize) -> [Vec<usize>; 2] {
    [(nb..vars.len()).collect(), (0..nb).collect()]
}

fn grass_value(g: &GrassIdeal) -> Value {
    let vars = g.ideal.vars();
    let blocks = fiber_first(vars, g.base_vars.len());
    json!({
        "d": num(g.d),
        "vars": vars.names(),
        "fiber_vars": g.fiber_vars,
        "generators": strings_blocks(g.ideal.gens(), &blocks),
        "raw_generator_count": num(g.raw_generator_count),
        "pluecker_relations": g.include_pluecker_relations,
    })
}

fn structure(s: &JordanSpec, mode: Mode, component: usize) -> Result<Value, CliError> {
    let mode = match mode {
        Mode::Full => PredictMode::Full,
        Mode::Component => PredictMode::Component(component),
        Mode::Single => PredictMode::Single,
    };
    let p = predicted_ideal(s, mode)?;
    let i = p.ideal();
    let blocks = fiber_first(i.vars(), s.base_vars().len());
    let m = classify_morphism(s);
    let mut v = json!({
        "vars": i.vars().names(),
        "generators": strings_blocks(i.gens(), &blocks),
        "finite": m.finite,
        "reduced": m.reduced,
    });
    if let Predicted::Component(c) = &p {
        v["component"] = num(c.v);
        v["dimension"] = num(c.dimension);
        v["fiber_degree"] = num(c.fiber_degree);
    }
    Ok(v)
}

fn parse_point(s: &str) -> Result<Vec<Rat>, CliError> {
    s.split(',')
        .map(|t| parse_rat(t).map_err(|e| CliError::Usage(format!("--point: {e}"))))
        .collect()
}

fn point_strings(p: &[Rat]) -> Vec<String> {
    p.iter().map(format_rat).collect()
}

fn parse_groups(s: &str, nvars: usize) -> Result<Vec<Vec<usize>>, CliError> {
    let bad = || CliError::Usage(format!("--groups: expected indices below {nvars} like 0,1;2,3, got {s:?}"));
    s.split(';')
        .map(|g| {
            g.split(',')
                .map(|t| t.trim().parse::<usize>().ok().filter(|&k| k < nvars).ok_or_else(bad))
                .collect()
        })
        .collect()
}

fn parse_case(bytes: &[u8]) -> Result<FlagCase, CliError> {
    #[derive(serde::Deserialize)]
    #[serde(deny_unknown_fields)]
    struct CaseJson {
        case: String,
        alpha: Option<String>,
        beta: Option<String>,
        gamma: Option<String>,
    }
    let c: CaseJson = serde_json::from_slice(bytes).map_err(|e| CliError::Input(format!("case file: {e}")))?;
    let q = |name: &str, v: &Option<String>| -> Result<Rat, CliError> {
        let s = v.as_deref().ok_or_else(|| CliError::Input(format!("case {} needs {name}", c.case)))?;
        Ok(parse_rat(s).map_err(higgsgrass::Error::from)?)
    };
    match c.case.as_str() {
        "A" => Ok(FlagCase::A),
        "B" => Ok(FlagCase::B { alpha: q("alpha", &c.alpha)? }),
        "C" => Ok(FlagCase::C {
            beta: q("beta", &c.beta)?,
            gamma: q("gamma", &c.gamma)?,
        }),
        other => Err(CliError::Input(format!("unknown case {other:?}"))),
    }
}
