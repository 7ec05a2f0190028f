#pragma once

#include <optional>

#include "qprim/ring.hpp"

namespace qprim {

/// Finds a ring isomorphism A -> B or certifies none exists. Prunes by
/// order, characteristic, unit/idempotent/nilpotent counts and the additive
/// order histogram before backtracking over generator images. Throws
/// SearchCapExceeded above the order cap.
std::optional<RingHom> ring_isomorphic(const RingPtr& a, const RingPtr& b, int order_cap = 512);

}  // namespace qprim
