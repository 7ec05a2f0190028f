#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "qprim/dot_export.hpp"
#include "qprim/json_io.hpp"
#include "qprim/sheaf.hpp"
#include "qprim/verify.hpp"

namespace {

using namespace qprim;

struct RingArgs {
  int zmod = 0;
  std::string ring_file;
  int order_cap = 512;
  int ideal_cap = 4096;
};

void add_ring_options(CLI::App* cmd, RingArgs& args) {
  cmd->add_option("--zmod", args.zmod, "shorthand for the ring of integers mod n");
  cmd->add_option("--ring", args.ring_file, "path to a ring spec JSON file");
  cmd->add_option("--order-cap", args.order_cap, "maximum ring order")->capture_default_str();
  cmd->add_option("--ideal-cap", args.ideal_cap, "maximum ideal count")->capture_default_str();
}

RingPtr resolve_ring(const RingArgs& args) {
  if ((args.zmod > 0) == !args.ring_file.empty())
    throw InputError("exactly one of --zmod and --ring is required");
  RingSpec spec = RingSpec::zmod(1);
  if (args.zmod > 0) {
    spec = RingSpec::zmod(args.zmod);
  } else {
    std::ifstream in(args.ring_file);
    if (!in) throw InputError("cannot open ring spec file: " + args.ring_file);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw InputError(std::string("ring spec file: ") + e.what());
    }
    spec = ring_spec_from_json(j);
  }
  return build_ring(spec, BuildOptions{args.order_cap});
}

SpectrumKind parse_kind(const std::string& kind) {
  if (kind == "spec") return SpectrumKind::Spec;
  if (kind == "prim") return SpectrumKind::Prim;
  if (kind == "qprim") return SpectrumKind::QPrim;
  throw InputError("unknown kind \"" + kind + "\" (expected spec, prim or qprim)");
}

std::string list_elements(const std::vector<int>& xs) {
  std::ostringstream out;
  for (size_t i = 0; i < xs.size(); ++i) {
    if (i) out << ",";
    out << xs[i];
  }
  return out.str();
}

std::string point_list(const SpectrumPtr& sp, const std::vector<int>& pts) {
  std::ostringstream out;
  out << "[";
  for (size_t i = 0; i < pts.size(); ++i) {
    if (i) out << " ";
    out << element_set_string(sp->point(pts[i]).ideal.elements());
  }
  out << "]";
  return out.str();
}

int cmd_inspect(const RingArgs& args) {
  RingPtr ring = resolve_ring(args);
  std::vector<int> units, idempotents, nilpotents, zero_divisors;
  for (int x = 0; x < ring->order(); ++x) {
    if (ring->is_unit(x)) units.push_back(x);
    if (ring->is_idempotent(x)) idempotents.push_back(x);
    if (ring->is_nilpotent(x)) nilpotents.push_back(x);
    if (ring->is_zero_divisor(x)) zero_divisors.push_back(x);
  }
  std::cout << "ring: " << ring->name() << "\n";
  std::cout << "order: " << ring->order() << "\n";
  std::cout << "characteristic: " << ring->characteristic() << "\n";
  std::cout << "units (" << units.size() << "): " << list_elements(units) << "\n";
  std::cout << "idempotents (" << idempotents.size() << "): " << list_elements(idempotents)
            << "\n";
  std::cout << "nilpotents (" << nilpotents.size() << "): " << list_elements(nilpotents) << "\n";
  std::cout << "zero_divisors (" << zero_divisors.size() << "): " << list_elements(zero_divisors)
            << "\n";
  return 0;
}

int cmd_spectrum(const RingArgs& args, const std::string& kind) {
  RingPtr ring = resolve_ring(args);
  SpectrumPtr sp = make_spectrum(ring, parse_kind(kind), args.ideal_cap);
  std::cout << "ring: " << ring->name() << "\n";
  std::cout << "kind: " << kind << "\n";
  std::cout << "points: " << sp->size() << "\n";
  for (int q = 0; q < sp->size(); ++q)
    std::cout << element_set_string(sp->point(q).ideal.elements())
              << "  radical=" << element_set_string(sp->point(q).radical_ideal.elements())
              << "\n";
  return 0;
}

int cmd_topology(const RingArgs& args, const std::string& kind) {
  RingPtr ring = resolve_ring(args);
  SpectrumPtr sp = make_spectrum(ring, parse_kind(kind), args.ideal_cap);
  TopologyLattice topo = topology_lattice(sp);
  std::cout << "ring: " << ring->name() << "\n";
  std::cout << "kind: " << kind << "\n";
  std::cout << "points: " << sp->size() << "\n";
  std::cout << "closed_sets: " << topo.size() << "\n";
  for (int c = 0; c < topo.size(); ++c)
    std::cout << "  V(" << element_set_string(topo[c].witness.elements())
              << ") = " << point_list(sp, topo[c].points) << "\n";
  auto comps = irreducible_components(topo);
  std::cout << "components: " << comps.size() << "\n";
  for (const auto& comp : comps)
    std::cout << "  " << point_list(sp, comp.points)
              << " generic=" << point_list(sp, generic_points(topo, comp)) << "\n";
  std::cout << "connected: " << (is_connected(topo) ? "yes" : "no") << "\n";
  std::cout << "irreducible: "
            << (sp->size() > 0 && space_irreducible(topo) ? "yes" : "no") << "\n";
  if (sp->size() == 0) {
    std::cout << "dimension: empty spectrum\n";
  } else {
    ChainDimension d = chain_dimension(topo);
    std::cout << "dimension: terms=" << d.terms << " krull=" << d.krull << "\n";
  }
  return 0;
}

int cmd_sheaf(const RingArgs& args, const std::string& kind) {
  RingPtr ring = resolve_ring(args);
  SpectrumPtr sp = make_spectrum(ring, parse_kind(kind), args.ideal_cap);
  SheafAssignment sheaf = build_sheaf(sp);
  std::cout << "ring: " << ring->name() << "\n";
  std::cout << "kind: " << kind << "\n";
  std::cout << "basic_open_classes: " << sheaf.class_count() << "\n";
  for (int c = 0; c < sheaf.class_count(); ++c) {
    const BasicOpenClass& cl = sheaf.basic_class(c);
    std::cout << "  a=" << cl.representative << " members=" << cl.members.size()
              << " open=" << point_list(sp, cl.open.points)
              << " F_order=" << cl.loc.result->order() << "\n";
  }
  std::vector<OpenSet> opens = sheaf.topology().opens();
  std::sort(opens.begin(), opens.end(),
            [](const OpenSet& a, const OpenSet& b) { return a.points < b.points; });
  std::cout << "opens: " << opens.size() << "\n";
  for (size_t i = 0; i < opens.size(); ++i) {
    SectionRing s = sections(sheaf, opens[i]);
    std::cout << "  U" << i << " points=" << point_list(sp, opens[i].points)
              << " F_order=" << s.ring->order() << "\n";
  }
  std::cout << "stalks:\n";
  for (int q = 0; q < sp->size(); ++q) {
    StalkResult st = stalk(sheaf, q);
    std::cout << "  at " << element_set_string(sp->point(q).ideal.elements())
              << ": order=" << st.ring->order() << " local=" << (st.is_local ? "yes" : "no")
              << " matches_localization=" << (st.matches_prime_localization ? "yes" : "no")
              << "\n";
  }
  DirectImageReport rep = direct_image_check(ring);
  std::cout << "direct_image: " << (rep.ok ? "ok" : ("FAIL: " + rep.failure)) << "\n";
  std::cout << "global_sections_recover_ring: " << (rep.global_sections_match ? "yes" : "no")
            << "\n";
  return rep.ok ? 0 : 1;
}

int cmd_verify(const std::string& corpus_arg, const std::string& out_path,
               const std::string& filter, SuiteOptions opts) {
  Corpus corpus;
  if (corpus_arg == "default") {
    corpus = Corpus::default_corpus();
  } else {
    std::ifstream in(corpus_arg);
    if (!in) throw InputError("cannot open corpus file: " + corpus_arg);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw InputError(std::string("corpus file: ") + e.what());
    }
    corpus = corpus_from_json(j);
  }
  if (!filter.empty()) {
    std::stringstream ss(filter);
    std::string id;
    while (std::getline(ss, id, ','))
      if (!id.empty()) opts.check_filter.push_back(id);
  }

  std::vector<Verdict> verdicts = run_suite(corpus, opts);
  std::string report = report_string(verdicts, opts);

  int fails = 0, skips = 0;
  bool hard_cap = false;
  for (const Verdict& v : verdicts) {
    if (v.status == CheckStatus::Fail) ++fails;
    if (v.status == CheckStatus::SkippedCap) ++skips;
    hard_cap = hard_cap || v.hard_cap;
  }

  if (out_path.empty()) {
    std::cout << report;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw InputError("cannot write report to " + out_path);
    out << report;
    std::cout << "rings: " << corpus.entries.size() << "\n";
    std::cout << "verdicts: " << verdicts.size() << "\n";
    std::cout << "fail: " << fails << "\n";
    std::cout << "skipped: " << skips << "\n";
    std::cout << "report: " << out_path << "\n";
  }
  for (const Verdict& v : verdicts)
    if (v.status == CheckStatus::Fail)
      std::cerr << "FAIL " << v.check_id << " on " << v.ring_label << ": "
                << v.counterexample.dump() << "\n";
  if (fails > 0) return 1;
  if (hard_cap) return 3;
  return 0;
}

int cmd_export_dot(const RingArgs& args, const std::string& kind,
                   const std::string& points_out, const std::string& lattice_out) {
  RingPtr ring = resolve_ring(args);
  SpectrumPtr sp = make_spectrum(ring, parse_kind(kind), args.ideal_cap);
  TopologyLattice topo = topology_lattice(sp);
  {
    std::ofstream out(points_out, std::ios::binary);
    if (!out) throw InputError("cannot write " + points_out);
    out << specialization_dot(topo);
  }
  {
    std::ofstream out(lattice_out, std::ios::binary);
    if (!out) throw InputError("cannot write " + lattice_out);
    out << closed_lattice_dot(topo);
  }
  std::cout << "wrote " << points_out << " and " << lattice_out << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quasi-primary spectra of finite commutative rings"};
  app.require_subcommand(1);

  RingArgs ring_args;
  std::string kind = "qprim";

  CLI::App* inspect = app.add_subcommand("inspect", "element classification summary");
  add_ring_options(inspect, ring_args);

  CLI::App* spectrum = app.add_subcommand("spectrum", "list the points of a spectrum");
  add_ring_options(spectrum, ring_args);
  spectrum->add_option("--kind", kind, "spec | prim | qprim")->capture_default_str();

  CLI::App* topology = app.add_subcommand("topology", "closed sets, components, dimension");
  add_ring_options(topology, ring_args);
  topology->add_option("--kind", kind, "spec | prim | qprim")->capture_default_str();

  CLI::App* sheaf = app.add_subcommand("sheaf", "section rings, stalks, direct image");
  add_ring_options(sheaf, ring_args);
  sheaf->add_option("--kind", kind, "spec | prim | qprim")->capture_default_str();

  std::string corpus_arg = "default";
  std::string out_path, filter;
  qprim::SuiteOptions suite_opts;
  CLI::App* verify = app.add_subcommand("verify", "run the theorem suite over a ring corpus");
  verify->add_option("--corpus", corpus_arg, "\"default\" or a corpus JSON file")
      ->capture_default_str();
  verify->add_option("--out", out_path, "write the JSON report here");
  verify->add_option("--filter", filter, "comma-separated check ids");
  verify->add_option("--seed", suite_opts.seed, "sampling seed")->capture_default_str();
  verify->add_option("--order-cap", suite_opts.order_cap)->capture_default_str();
  verify->add_option("--ideal-cap", suite_opts.ideal_cap)->capture_default_str();
  verify->add_flag("--timings", suite_opts.timings, "emit measured per-check times");

  std::string points_out = "specialization.dot";
  std::string lattice_out = "closed_sets.dot";
  CLI::App* export_dot = app.add_subcommand("export-dot", "Graphviz export of the topology");
  add_ring_options(export_dot, ring_args);
  export_dot->add_option("--kind", kind, "spec | prim | qprim")->capture_default_str();
  export_dot->add_option("--points-out", points_out, "specialization preorder file")
      ->capture_default_str();
  export_dot->add_option("--lattice-out", lattice_out, "closed-set Hasse diagram file")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (inspect->parsed()) return cmd_inspect(ring_args);
    if (spectrum->parsed()) return cmd_spectrum(ring_args, kind);
    if (topology->parsed()) return cmd_topology(ring_args, kind);
    if (sheaf->parsed()) return cmd_sheaf(ring_args, kind);
    if (verify->parsed()) return cmd_verify(corpus_arg, out_path, filter, suite_opts);
    if (export_dot->parsed()) return cmd_export_dot(ring_args, kind, points_out, lattice_out);
  } catch (const qprim::OrderCapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const qprim::IdealCountCapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const qprim::SearchCapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const qprim::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
