#pragma once

#include "woe/grid.hpp"

namespace woe {

/// Signed distance to the interface of a 0/1 interior mask (values > 0.5 are
/// inside), solved with first-order Godunov Fast Marching on a binary-heap
/// narrow band. The interface is placed halfway between nodes of opposite
/// sign; output is negative inside and positive outside. Throws if the mask
/// is all-interior or all-exterior.
GridField fmm_distance(const GridField& interior_mask);

}  // namespace woe
