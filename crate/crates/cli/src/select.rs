//! Group selectors such as `alt:5`, `psl2:7` or `file:gens.txt`.

use invgen_core::builder::{self, AffineGroup, GroupSpec};
use invgen_core::PermGroup;

use crate::error::CliError;

pub struct Selected {
    pub selector: String,
    pub group: PermGroup,
    pub affine: Option<AffineGroup>,
}

impl Selected {
    /// Generators in the group file format; the basis for cache keys and input hashes.
    pub fn canonical_text(&self) -> String {
        GroupSpec::from_group(&self.group).to_text()
    }
}

fn number(kind: &str, arg: &str) -> Result<usize, CliError> {
    arg.parse()
        .map_err(|_| CliError::Usage(format!("{kind}: expected a number, got {arg:?}")))
}

fn read(path: &str) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {path}: {e}")))
}

pub fn select(selector: &str) -> Result<Selected, CliError> {
    let (kind, arg) = selector.split_once(':').ok_or_else(|| {
        CliError::Usage(format!("group selector {selector:?} must look like kind:arg"))
    })?;
    let mut affine = None;
    let group = match kind {
        "alt" => builder::alternating(number(kind, arg)?)?,
        "sym" => builder::symmetric(number(kind, arg)?)?,
        "cyclic" => builder::cyclic(number(kind, arg)?)?,
        "dicyclic" => builder::dicyclic(number(kind, arg)?)?,
        "psl2" => {
            let p = u32::try_from(number(kind, arg)?)
                .map_err(|_| CliError::Usage(format!("psl2: {arg} is too large")))?;
            builder::psl2(p)?
        }
        "affine" => {
            let a = builder::parse_affine(&read(arg)?)?;
            let g = a.group.clone();
            affine = Some(a);
            g
        }
        "file" => GroupSpec::parse(&read(arg)?)?.group()?,
        "builtin" => {
            let ng = builder::builtin(arg)?;
            affine = ng.affine;
            ng.group
        }
        _ => {
            return Err(CliError::Usage(format!(
                "unknown selector kind {kind:?} (alt, sym, cyclic, dicyclic, psl2, affine, file, builtin)"
            )))
        }
    };
    Ok(Selected {
        selector: selector.to_string(),
        group,
        affine,
    })
}
