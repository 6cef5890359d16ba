//! Projections of subgroups of a wreath product A≀S_k onto the top group
//! and onto the components of the base.

use crate::error::{Error, Result};
use crate::groups::base_and_top;
use crate::permgroup::{intersection, Perm, PermGroup};

#[derive(Clone, Debug)]
pub struct WreathProjections {
    /// Image of H in S_k acting on the blocks.
    pub top: PermGroup,
    /// H ∩ M, with M the base group.
    pub base_part: PermGroup,
    /// Projection of H ∩ M to each component, on the component's own points.
    pub components: Vec<PermGroup>,
}

/// Top image and component projections of `h ≤ w`, where `w` was built as a
/// wreath product.
pub fn wreath_projections(w: &PermGroup, h: &PermGroup) -> Result<WreathProjections> {
    let info = w.wreath().ok_or_else(|| Error::InvalidArgument("group was not built as a wreath product".into()))?;
    if !h.is_subgroup_of(w) {
        return Err(Error::Precondition("subgroup is not contained in the wreath product".into()));
    }
    let (base, _) = base_and_top(w)?;
    let d = info.component_degree;
    let k = info.blocks;
    let top_gens: Vec<Perm> = h
        .gens()
        .iter()
        .map(|g| Perm::from_images_unchecked((0..k).map(|b| info.block_of(g.apply((b * d) as u32)) as u32).collect()))
        .collect();
    let top = PermGroup::new(k, top_gens);
    let base_part = intersection(h, &base);
    let components = (0..k)
        .map(|b| {
            let lo = (b * d) as u32;
            let gens = base_part
                .gens()
                .iter()
                .map(|g| Perm::from_images_unchecked((0..d as u32).map(|x| g.apply(lo + x) - lo).collect()))
                .filter(|p: &Perm| !p.is_identity())
                .collect();
            PermGroup::new(d, gens)
        })
        .collect();
    Ok(WreathProjections { top, base_part, components })
}
