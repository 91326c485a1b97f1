//! A loaded case with its chambers and compiled kernel.

use crate::cases::{load_case, CaseLabel, CaseSpec};
use crate::chambers::{enumerate_chambers, ChamberFamily};
use crate::error::Result;
use crate::kernel::CaseKernel;

#[derive(Clone, Debug)]
pub struct CaseContext {
    pub spec: CaseSpec,
    pub family: ChamberFamily,
    pub kernel: CaseKernel,
}

impl CaseContext {
    pub fn load(label: CaseLabel) -> Result<Self> {
        let spec = load_case(label)?;
        let family = enumerate_chambers(&spec)?;
        let kernel = CaseKernel::new(&spec, &family)?;
        Ok(CaseContext { spec, family, kernel })
    }

    pub fn label(&self) -> CaseLabel {
        self.spec.label
    }

    pub fn s(&self) -> usize {
        self.family.len()
    }
}
