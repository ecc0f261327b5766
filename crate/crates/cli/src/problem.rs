//! Problem files: a Higgs field, a Jordan specification or a bare ideal,
//! plus optional engine settings.

use std::path::Path;

use serde::Deserialize;
use sha2::{Digest, Sha256};

use higgsgrass::grobner::Ideal;
use higgsgrass::higgsfield::{HiggsField, HiggsFieldJson};
use higgsgrass::polyring::{MonomialOrder, VarSet};
use higgsgrass::structure::{JordanSpec, JordanSpecJson};

use crate::CliError;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub higgs: Option<HiggsFieldJson>,
    pub spec: Option<JordanSpecJson>,
    pub ideal: Option<IdealJson>,
    pub order: Option<String>,
    pub seed: Option<u64>,
    pub spair_budget: Option<u64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdealJson {
    pub vars: Vec<String>,
    pub gens: Vec<String>,
}

pub struct Loaded {
    pub problem: ProblemFile,
    pub digest: String,
}

pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn load(path: &Path) -> Result<Loaded, CliError> {
    let bytes = std::fs::read(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let problem: ProblemFile =
        serde_json::from_slice(&bytes).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    Ok(Loaded {
        problem,
        digest: digest(&bytes),
    })
}

impl ProblemFile {
    pub fn higgs(&self) -> Result<HiggsField, CliError> {
        let j = self.higgs.as_ref().ok_or_else(|| CliError::Input("problem file has no \"higgs\" entry".into()))?;
        Ok(HiggsField::from_json(j)?)
    }

    pub fn spec(&self) -> Result<JordanSpec, CliError> {
        let j = self.spec.as_ref().ok_or_else(|| CliError::Input("problem file has no \"spec\" entry".into()))?;
        Ok(JordanSpec::from_json(j)?)
    }

    pub fn order(&self) -> Result<MonomialOrder, CliError> {
        match self.order.as_deref() {
            None | Some("grevlex") => Ok(MonomialOrder::Grevlex),
            Some("lex") => Ok(MonomialOrder::Lex),
            Some(o) => Err(CliError::Input(format!("unknown order {o:?}"))),
        }
    }

    pub fn ideal(&self) -> Result<Ideal, CliError> {
        let j = self.ideal.as_ref().ok_or_else(|| CliError::Input("problem file has no \"ideal\" entry".into()))?;
        let vars = VarSet::new(j.vars.iter().cloned()).map_err(higgsgrass::Error::from)?;
        let gens: Vec<&str> = j.gens.iter().map(String::as_str).collect();
        let mut i = Ideal::parse(&vars, &gens).map_err(higgsgrass::Error::from)?.with_order(self.order()?);
        if let Some(b) = self.spair_budget {
            i = i.with_budget(b);
        }
        Ok(i)
    }
}
