//! Autonomy level of a plan, from where humans stay in the loop.

use serde::{Deserialize, Serialize};

use super::{Checkpoint, PipelinePlan, Stage};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmdLevel {
    pub level: u8,
    pub rationale: String,
}

/// Rule table, first match wins:
///
/// | rule | condition                                        | level |
/// |------|--------------------------------------------------|-------|
/// | R0   | no stages                                        | 0     |
/// | R4   | no checkpoints                                   | 4     |
/// | R1   | every stage checkpointed, geometry/mesh only     | 1     |
/// | R2a  | every stage checkpointed                         | 2     |
/// | R3   | only the final stage checkpointed                | 3     |
/// | R2b  | some intermediate handoff checkpointed           | 2     |
///
/// Removing a checkpoint never lowers the level.
pub fn classify_amd_level(plan: &PipelinePlan) -> AmdLevel {
    const NOTE: &str = "one quantization of qualitative level definitions";
    let reviewed: Vec<Stage> = plan
        .stages
        .iter()
        .copied()
        .filter(|&s| plan.checkpoint(s) == Checkpoint::HumanReview)
        .collect();
    let (level, rule, why) = if plan.stages.is_empty() {
        (0, "R0", "no automated stages")
    } else if reviewed.is_empty() {
        (4, "R4", "end-to-end automation with no human checkpoints")
    } else if reviewed.len() == plan.stages.len() {
        if plan
            .stages
            .iter()
            .all(|s| matches!(s, Stage::GenerateGeometry | Stage::AssembleMesh))
        {
            (
                1,
                "R1",
                "only geometry and mesh generation automated, every decision reviewed",
            )
        } else {
            (
                2,
                "R2a",
                "domain stages automated, every stage boundary reviewed",
            )
        }
    } else if reviewed == [*plan.stages.last().expect("non-empty")] {
        (
            3,
            "R3",
            "cross-stage handoffs automated, only the final result reviewed",
        )
    } else {
        (2, "R2b", "an intermediate handoff still needs human review")
    };
    AmdLevel {
        level,
        rationale: format!("rule {rule}: {why} ({NOTE})"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pipeline::{plan, DesignSpec};

    fn default_plan() -> PipelinePlan {
        plan(&DesignSpec::from_toml(include_str!("../../fixtures/vessel_spec.toml")).unwrap())
            .unwrap()
    }

    fn with_mask(base: &PipelinePlan, mask: u32) -> PipelinePlan {
        let mut p = base.clone();
        for (i, &s) in base.stages.iter().enumerate() {
            let cp = if mask & (1 << i) != 0 {
                Checkpoint::HumanReview
            } else {
                Checkpoint::None
            };
            p.checkpoints.insert(s, cp);
        }
        p
    }

    #[test]
    fn table_examples() {
        let base = default_plan();
        assert_eq!(classify_amd_level(&base).level, 4);
        assert!(classify_amd_level(&with_mask(&base, 0b111111)).level <= 2);
        assert_eq!(classify_amd_level(&with_mask(&base, 0b100000)).level, 3);
        assert_eq!(classify_amd_level(&with_mask(&base, 0b000100)).level, 2);
        let mut empty = base.clone();
        empty.stages.clear();
        assert_eq!(classify_amd_level(&empty).level, 0);
        let mut geo = with_mask(&base, 0b000011);
        geo.stages.truncate(2);
        assert_eq!(classify_amd_level(&geo).level, 1);
        assert!(classify_amd_level(&base).rationale.contains("rule R4"));
    }

    #[test]
    fn removing_a_checkpoint_never_lowers_level() {
        let base = default_plan();
        for mask in 0u32..64 {
            let level = classify_amd_level(&with_mask(&base, mask)).level;
            for bit in 0..6 {
                if mask & (1 << bit) != 0 {
                    let fewer = classify_amd_level(&with_mask(&base, mask & !(1 << bit))).level;
                    assert!(
                        fewer >= level,
                        "mask {mask:06b} -> bit {bit}: {level} -> {fewer}"
                    );
                }
            }
        }
    }
}
