// Command line front end: constructs the graph families, analyzes their
// symmetry, classifies dipole covers, runs the order-2p^2 census and the
// acceptance suite.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "p2pg/constructions.hpp"
#include "p2pg/symmetry.hpp"
#include "p2pg/verify.hpp"
#include "p2pg/voltagecover.hpp"

namespace {

using nlohmann::ordered_json;

int usage_error(const std::string& kind, const std::string& message) {
  ordered_json j;
  j["error"] = kind;
  j["message"] = message;
  std::cerr << j.dump() << std::endl;
  return 2;
}

p2pg::NamedGraph build_family(const std::string& id, std::optional<int64_t> p,
                              std::optional<int64_t> ell,
                              std::optional<int64_t> lambda) {
  p2pg::FamilyId fid = p2pg::parse_family(id, p);
  return p2pg::family(fid, ell, lambda);
}

ordered_json voltage_json(const p2pg::Dip5Voltage& z) {
  ordered_json j;
  j["p"] = z.p;
  j["n"] = z.n;
  j["zeta"] = z.zeta;
  return j;
}

ordered_json class_json(const p2pg::CoverClass& c) {
  ordered_json j;
  j["representative"] = voltage_json(c.representative);
  j["lifting_group_order"] = c.lifting_group_order;
  j["arc_transitive"] = c.arc_transitive;
  j["family"] = c.matched_family
                    ? ordered_json(p2pg::family_name(*c.matched_family))
                    : ordered_json(nullptr);
  return j;
}

bool class_lists_agree(const std::vector<p2pg::CoverClass>& a,
                       const std::vector<p2pg::CoverClass>& b) {
  if (a.size() != b.size()) return false;
  std::vector<char> used(b.size(), 0);
  for (const auto& ca : a) {
    bool matched = false;
    for (size_t i = 0; i < b.size() && !matched; ++i) {
      if (used[i]) continue;
      if (p2pg::covers_isomorphic(ca.representative, b[i].representative)) {
        used[i] = 1;
        matched = true;
      }
    }
    if (!matched) return false;
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pentavalent symmetric graphs of order twice a prime power"};
  app.require_subcommand(1);

  // construct
  auto* construct = app.add_subcommand("construct", "emit a family graph");
  std::string c_family;
  std::optional<int64_t> c_p, c_ell, c_lambda;
  std::string c_out;
  construct->add_option("--family", c_family, "family id")->required();
  construct->add_option("--p", c_p, "prime parameter");
  construct->add_option("--ell", c_ell, "order-5 unit override");
  construct->add_option("--lambda", c_lambda, "square root of 5 override");
  construct->add_option("--out", c_out, "output file (default stdout)");

  // analyze
  auto* analyze = app.add_subcommand("analyze", "symmetry report for a graph");
  std::string a_in, a_family;
  std::optional<int64_t> a_p, a_ell, a_lambda;
  bool a_pretty = false;
  analyze->add_option("--in", a_in, "edge-list file");
  analyze->add_option("--family", a_family, "family id");
  analyze->add_option("--p", a_p, "prime parameter");
  analyze->add_option("--ell", a_ell, "order-5 unit override");
  analyze->add_option("--lambda", a_lambda, "square root of 5 override");
  analyze->add_flag("--pretty", a_pretty, "aligned text output");

  // classify-covers
  auto* classify = app.add_subcommand("classify-covers",
                                      "symmetric dipole covers over Z_p^n");
  int64_t k_p = 0;
  int k_n = 0;
  std::string k_strategy = "both";
  bool k_pretty = false;
  classify->add_option("--p", k_p, "prime")->required();
  classify->add_option("--n", k_n, "rank 2..4")->required();
  classify->add_option("--strategy", k_strategy, "brute|analytic|both")
      ->check(CLI::IsMember({"brute", "analytic", "both"}));
  classify->add_flag("--pretty", k_pretty, "aligned text output");

  // quotient
  auto* quotient = app.add_subcommand("quotient", "normal quotient chain");
  std::string q_family;
  std::optional<int64_t> q_p, q_ell, q_lambda;
  bool q_pretty = false;
  quotient->add_option("--family", q_family, "family id")->required();
  quotient->add_option("--p", q_p, "prime parameter");
  quotient->add_option("--ell", q_ell, "order-5 unit override");
  quotient->add_option("--lambda", q_lambda, "square root of 5 override");
  quotient->add_flag("--pretty", q_pretty, "aligned text output");

  // census
  auto* census = app.add_subcommand("census", "order 2p^2 census");
  int64_t x_p = 0;
  bool x_pretty = false;
  census->add_option("--p", x_p, "prime")->required();
  census->add_flag("--pretty", x_pretty, "aligned text output");

  // verify
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  std::string v_suite = "acceptance";
  bool v_deep = false;
  verify->add_option("--suite", v_suite, "suite name")
      ->check(CLI::IsMember({"acceptance"}));
  verify->add_flag("--deep", v_deep, "include the two large instances");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    return usage_error("usage", e.what());
  }

  try {
    if (construct->parsed()) {
      p2pg::NamedGraph ng = build_family(c_family, c_p, c_ell, c_lambda);
      std::string text = ng.graph.to_edge_list();
      if (c_out.empty()) {
        std::cout << text;
      } else {
        std::ofstream out(c_out);
        if (!out) return usage_error("io", "cannot open output file " + c_out);
        out << text;
      }
      return 0;
    }

    if (analyze->parsed()) {
      if (a_in.empty() == a_family.empty())
        return usage_error("usage", "analyze needs exactly one of --in/--family");
      p2pg::SymmetryReport rep;
      if (!a_in.empty()) {
        std::ifstream in(a_in);
        if (!in) return usage_error("io", "cannot open input file " + a_in);
        std::stringstream buf;
        buf << in.rdbuf();
        p2pg::Graph g = p2pg::Graph::from_edge_list(buf.str());
        rep = p2pg::analyze(g, nullptr);
      } else {
        p2pg::NamedGraph ng = build_family(a_family, a_p, a_ell, a_lambda);
        rep = p2pg::analyze(ng.graph, &ng);
      }
      std::cout << (a_pretty ? rep.to_pretty() : rep.to_json() + "\n");
      return 0;
    }

    if (classify->parsed()) {
      std::vector<p2pg::CoverClass> primary, secondary;
      bool agree = true;
      if (k_strategy == "brute" || k_strategy == "both")
        primary = p2pg::classify(k_p, k_n, p2pg::ClassifyStrategy::Brute);
      if (k_strategy == "analytic")
        primary = p2pg::classify(k_p, k_n, p2pg::ClassifyStrategy::Analytic);
      if (k_strategy == "both") {
        secondary = p2pg::classify(k_p, k_n, p2pg::ClassifyStrategy::Analytic);
        agree = class_lists_agree(primary, secondary);
      }

      if (k_pretty) {
        std::cout << "covers over Z_" << k_p << "^" << k_n << ": "
                  << primary.size() << " class(es)\n";
        for (const auto& c : primary) {
          std::cout << "  " << voltage_json(c.representative).dump()
                    << "  lifting group " << c.lifting_group_order
                    << (c.matched_family
                            ? "  = " + p2pg::family_name(*c.matched_family)
                            : "")
                    << '\n';
        }
        if (k_strategy == "both")
          std::cout << "  strategies agree: " << (agree ? "yes" : "no") << '\n';
      } else {
        ordered_json j;
        j["p"] = k_p;
        j["n"] = k_n;
        j["strategy"] = k_strategy;
        j["count"] = primary.size();
        j["classes"] = ordered_json::array();
        for (const auto& c : primary) j["classes"].push_back(class_json(c));
        j["strategies_agree"] =
            k_strategy == "both" ? ordered_json(agree) : ordered_json(nullptr);
        std::cout << j.dump() << '\n';
      }
      return agree ? 0 : 1;
    }

    if (quotient->parsed()) {
      p2pg::NamedGraph ng = build_family(q_family, q_p, q_ell, q_lambda);
      p2pg::PermGroup aut = p2pg::aut_group(ng.graph);
      auto lat = p2pg::translation_lattice(ng);
      auto chain = p2pg::basic_quotient_chain(ng.graph, aut, lat);
      std::optional<std::string> final_name;
      if (!chain.empty() && chain.back().recognized)
        final_name = p2pg::family_name(*chain.back().recognized);
      if (q_pretty) {
        std::cout << "quotient chain for " << p2pg::family_name(ng.id) << '\n';
        if (chain.empty()) std::cout << "  already basic\n";
        for (const auto& st : chain)
          std::cout << "  / subgroup of order " << st.subgroup_order << " -> "
                    << st.quotient.vertex_count() << " vertices"
                    << (st.recognized
                            ? " = " + p2pg::family_name(*st.recognized)
                            : "")
                    << '\n';
      } else {
        ordered_json j;
        j["family"] = p2pg::family_name(ng.id);
        j["vertices"] = ng.graph.vertex_count();
        j["steps"] = ordered_json::array();
        for (const auto& st : chain) {
          ordered_json js;
          js["subgroup_order"] = st.subgroup_order;
          js["quotient_vertices"] = st.quotient.vertex_count();
          js["recognized"] = st.recognized
                                 ? ordered_json(p2pg::family_name(*st.recognized))
                                 : ordered_json(nullptr);
          j["steps"].push_back(js);
        }
        j["final"] = final_name ? ordered_json(*final_name) : ordered_json(nullptr);
        std::cout << j.dump() << '\n';
      }
      return 0;
    }

    if (census->parsed()) {
      p2pg::CensusReport rep = p2pg::census_2p2(x_p);
      std::cout << (x_pretty ? rep.to_pretty() : rep.to_json() + "\n");
      return 0;
    }

    if (verify->parsed()) {
      p2pg::verify::SuiteResult r = p2pg::verify::run_acceptance(v_deep, &std::cerr);
      std::cout << p2pg::verify::format_results(r);
      return r.all_passed() ? 0 : 1;
    }
  } catch (const std::invalid_argument& e) {
    return usage_error("invalid-argument", e.what());
  } catch (const std::runtime_error& e) {
    return usage_error("runtime", e.what());
  }
  return usage_error("usage", "no subcommand");
}
