use sha2::{Digest, Sha256};

use super::{Root, RootType};
use crate::error::{EngineError, Result};

/// A labelled set of roots shipped with the crate.
#[derive(Debug)]
pub struct EmbeddedTable {
    pub name: &'static str,
    pub ty: RootType,
    text: &'static str,
    sha256: &'static str,
}

pub const E6_POSITIVE: EmbeddedTable = EmbeddedTable {
    name: "e6_positive_roots",
    ty: RootType::E6,
    text: include_str!("../../data/e6_positive_roots.txt"),
    sha256: "9353b40d1f26fdc99238c3312ef7321d4da4b2f32e73c757a74c5575c0fd1040",
};

pub const E7_CASE2: EmbeddedTable = EmbeddedTable {
    name: "e7_case2_roots",
    ty: RootType::E7,
    text: include_str!("../../data/e7_case2_roots.txt"),
    sha256: "3e846a379875a2858a0d2dfc62ec8e428f074b573f54403106d85ea53da19408",
};

pub const E8_CASE1: EmbeddedTable = EmbeddedTable {
    name: "e8_case1_roots",
    ty: RootType::E8,
    text: include_str!("../../data/e8_case1_roots.txt"),
    sha256: "5d0ba0e8f3027f83ed1a286e676816a823160151467ea58b3b4f141b242c768d",
};

pub const E8_CASE2: EmbeddedTable = EmbeddedTable {
    name: "e8_case2_roots",
    ty: RootType::E8,
    text: include_str!("../../data/e8_case2_roots.txt"),
    sha256: "709bb350320c15a06225da1e39346d27b94da667dd7cf8102b0ba77595958c93",
};

impl EmbeddedTable {
    pub fn checksum(&self) -> String {
        let digest = Sha256::digest(self.text.as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Parses the table after verifying its checksum. Each line is
    /// `label sigma c_1 ... c_{r-1}`; the returned roots use the internal
    /// diagram order with the σ-coefficient last.
    pub fn entries(&self) -> Result<Vec<(u32, Root)>> {
        if self.checksum() != self.sha256 {
            return Err(EngineError::Table(format!("{}: checksum mismatch", self.name)));
        }
        let rank = self.ty.rank();
        let mut out = Vec::new();
        for line in self.text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let nums: Vec<i32> = line
                .split_whitespace()
                .map(|s| s.parse::<i32>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| EngineError::Table(format!("{}: {e}", self.name)))?;
            if nums.len() != rank + 1 || nums[0] <= 0 {
                return Err(EngineError::Table(format!("{}: malformed line `{line}`", self.name)));
            }
            let mut coeffs: Vec<i32> = nums[2..].to_vec();
            coeffs.push(nums[1]);
            out.push((nums[0] as u32, Root(coeffs)));
        }
        Ok(out)
    }
}
