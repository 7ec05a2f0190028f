#pragma once

#include <string>

#include "qprim/spectrum.hpp"

namespace qprim {

/// "{0,4,8}" for an ideal's element list, ascending.
std::string element_set_string(const std::vector<std::uint16_t>& elems);

/// Specialization preorder on points: edge Q -> Q' when Q' lies in the
/// closure of Q (self-edges omitted). Node labels are ideal element lists.
std::string specialization_dot(const TopologyLattice& topo);

/// Hasse diagram of the distinct closed sets, labeled by witness ideals.
std::string closed_lattice_dot(const TopologyLattice& topo);

}  // namespace qprim
