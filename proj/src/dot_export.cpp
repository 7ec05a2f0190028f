#include "qprim/dot_export.hpp"

#include <algorithm>
#include <sstream>

namespace qprim {

std::string element_set_string(const std::vector<std::uint16_t>& elems) {
  std::ostringstream out;
  out << "{";
  for (size_t i = 0; i < elems.size(); ++i) {
    if (i) out << ",";
    out << elems[i];
  }
  out << "}";
  return out.str();
}

std::string specialization_dot(const TopologyLattice& topo) {
  const SpectrumPtr& sp = topo.spectrum();
  std::ostringstream out;
  out << "digraph specialization {\n";
  out << "  rankdir=BT;\n";
  for (int q = 0; q < sp->size(); ++q)
    out << "  Q" << q << " [label=\"" << element_set_string(sp->point(q).ideal.elements())
        << "\"];\n";
  for (int q = 0; q < sp->size(); ++q) {
    ClosedSet cl = closure(sp, q);
    for (int t : cl.points)
      if (t != q) out << "  Q" << q << " -> Q" << t << ";\n";
  }
  out << "}\n";
  return out.str();
}

std::string closed_lattice_dot(const TopologyLattice& topo) {
  std::ostringstream out;
  out << "digraph closed_sets {\n";
  out << "  rankdir=BT;\n";
  for (int c = 0; c < topo.size(); ++c)
    out << "  C" << c << " [label=\"V(" << element_set_string(topo[c].witness.elements())
        << ")\"];\n";
  auto strict_subset = [](const std::vector<int>& a, const std::vector<int>& b) {
    return a != b && std::includes(b.begin(), b.end(), a.begin(), a.end());
  };
  for (int a = 0; a < topo.size(); ++a)
    for (int b = 0; b < topo.size(); ++b) {
      if (!strict_subset(topo[a].points, topo[b].points)) continue;
      bool cover = true;
      for (int m = 0; m < topo.size(); ++m)
        if (m != a && m != b && strict_subset(topo[a].points, topo[m].points) &&
            strict_subset(topo[m].points, topo[b].points)) {
          cover = false;
          break;
        }
      if (cover) out << "  C" << a << " -> C" << b << ";\n";
    }
  out << "}\n";
  return out.str();
}

}  // namespace qprim
