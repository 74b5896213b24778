//! A preset name or a spec file path, together with the global options.

use std::path::Path;

use wsa_core::algebra::WeightedSurfaceAlgebra;
use wsa_core::families::{Chain, Preset, PresetArgs};
use wsa_core::field::Field;
use wsa_core::specfile::{AlgebraSpec, LambdaSection};
use wsa_core::TriangulationData;

use crate::commands::CliError;
use crate::GlobalOpts;

pub struct Target {
    pub id: String,
    pub preset: Option<Preset>,
    pub spec: AlgebraSpec,
    pub field: Field,
}

impl Target {
    pub fn resolve(name: &str, opts: &GlobalOpts) -> Result<Target, CliError> {
        let path = Path::new(name);
        if !name.starts_with("preset:") && path.is_file() {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{name}: {e}")))?;
            let mut spec = AlgebraSpec::parse(&text)?;
            if let Some(l) = &opts.lambda {
                spec.lambda = Some(LambdaSection { value: l.clone() });
            }
            let field = match opts.field {
                Some(f) => f,
                None => spec.field()?,
            };
            spec.set_field(field);
            let id = path.file_stem().map_or(name.to_string(), |s| s.to_string_lossy().into_owned());
            return Ok(Target {
                id,
                preset: None,
                spec,
                field,
            });
        }
        let args = PresetArgs {
            lambda: opts.lambda.clone(),
            k: opts.k,
            n: opts.n,
            m: opts.m,
            m_prime: opts.m_prime,
        };
        let preset = Preset::from_name(name, &args)
            .map_err(|e| CliError::Input(format!("`{name}` is neither a spec file nor a preset ({e})")))?;
        let field = opts.field.unwrap_or(Field::Rational);
        preset.check_lambda(field)?;
        Ok(Target {
            id: preset.id(),
            spec: preset.spec(field),
            preset: Some(preset),
            field,
        })
    }

    pub fn data(&self) -> Result<TriangulationData, CliError> {
        Ok(self.spec.to_data(Some(self.field))?)
    }

    pub fn algebra(&self) -> Result<WeightedSurfaceAlgebra, CliError> {
        Ok(WeightedSurfaceAlgebra::build(&self.data()?)?)
    }

    pub fn lambda(&self) -> Option<String> {
        self.spec.lambda.as_ref().map(|l| l.value.clone())
    }

    pub fn chain(&self) -> Option<Chain> {
        self.preset.as_ref().and_then(Preset::chain)
    }
}
