// amal — classification of simplicial amalgams of finite groups
// SPDX-License-Identifier: Apache-2.0

#include "amal/cli.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "amal/classify.hpp"
#include "amal/io.hpp"

namespace amal::cli {

using nlohmann::ordered_json;

namespace {

ordered_json budgets_json(const JobSpec& job) {
  // The worker count is execution configuration, not a budget: leaving it
  // out keeps machine reports byte-identical across worker counts.
  ordered_json b;
  b["max_order"] = job.budgets.max_order;
  b["aut_budget"] = job.budgets.aut_nodes;
  b["cocycle_budget"] = job.budgets.cocycles;
  b["orbit_budget"] = job.budgets.orbit_moves;
  b["oracle_budget"] = job.budgets.oracle_states;
  b["seed"] = job.seed;
  return b;
}

ordered_json envelope(const JobSpec& job) {
  ordered_json j;
  j["command"] = job.command;
  j["inputs"] = job.inputs;
  j["budgets"] = budgets_json(job);
  return j;
}

ordered_json complex_json(const SimplicialComplex& X) {
  ordered_json j;
  j["vertices"] = X.n_vertices();
  ordered_json simplices = ordered_json::array();
  for (const Simplex& s : X.simplices()) simplices.push_back(s);
  j["simplices"] = std::move(simplices);
  return j;
}

ordered_json cochain_json(const CoefficientSystem& A, const Cochain1& z) {
  const SimplicialComplex& X = *A.complex();
  const std::vector<int>& edges = X.of_rank(1);
  ordered_json j = ordered_json::object();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto& group = A.at(edges[e]);
    if (group.auts)
      j[simplex_name(X.simplex(edges[e]))] = group.auts->aut(z.values[e]);
    else
      j[simplex_name(X.simplex(edges[e]))] = z.values[e];
  }
  return j;
}

ordered_json amalgam_json(const Amalgam& G) {
  return ordered_json::parse(io::amalgam_to_json(G));
}

struct AlphaFacts {
  bool injective = true;
  bool surjective = true;
};

AlphaFacts alpha_facts(const CoefficientSystem& A, int sigma, int tau) {
  AlphaFacts f;
  const auto& a = A.alpha_cover(sigma, tau);
  std::vector<char> hit(A.table(tau)->order(), 0);
  std::size_t distinct = 0;
  for (Elt v : a) {
    if (hit[v])
      f.injective = false;
    else {
      hit[v] = 1;
      ++distinct;
    }
  }
  f.surjective = distinct == A.table(tau)->order();
  return f;
}

// --- command handlers, each returning the machine report -------------------

ordered_json do_validate(const JobSpec& job, const AmalgamPtr& G) {
  ordered_json j = envelope(job);
  j["valid"] = true;  // parse_amalgam already ran the full validation
  j["complex"] = complex_json(*G->complex());
  ordered_json orders = ordered_json::object();
  for (std::size_t s = 0; s < G->complex()->size(); ++s)
    orders[simplex_name(G->complex()->simplex(static_cast<int>(s)))] =
        G->group(static_cast<int>(s))->order();
  j["group_orders"] = std::move(orders);
  j["cover_maps"] = G->covers().size();
  return j;
}

ordered_json do_coeffs(const JobSpec& job, const AmalgamPtr& G) {
  CoeffPtr A = coefficient_system_of(*G, job.budgets);
  const SystemReport rep = validate_system(*A);
  if (!rep.ok) throw InternalError("constructed system failed validation: " + rep.violation);
  const SimplicialComplex& X = *A->complex();
  ordered_json j = envelope(job);
  ordered_json auts = ordered_json::object();
  for (std::size_t s = 0; s < X.size(); ++s)
    auts[simplex_name(X.simplex(static_cast<int>(s)))] = A->table(static_cast<int>(s))->order();
  j["aut_orders"] = std::move(auts);
  ordered_json alphas = ordered_json::array();
  for (const auto& [pair, a] : A->alphas()) {
    const AlphaFacts f = alpha_facts(*A, pair.first, pair.second);
    ordered_json ja;
    ja["from"] = simplex_name(X.simplex(pair.first));
    ja["to"] = simplex_name(X.simplex(pair.second));
    ja["injective"] = f.injective;
    ja["surjective"] = f.surjective;
    alphas.push_back(std::move(ja));
  }
  j["alphas"] = std::move(alphas);
  j["valid"] = true;
  return j;
}

ordered_json do_h0(const JobSpec& job, const AmalgamPtr& G) {
  CoeffPtr A = coefficient_system_of(*G, job.budgets);
  const H0Result H = h0(*A, job.budgets);
  ordered_json j = envelope(job);
  j["order"] = H.elements.size();
  ordered_json elements = ordered_json::array();
  for (const Cochain0& a : H.elements) elements.push_back(a.values);
  j["elements"] = std::move(elements);
  return j;
}

ordered_json do_h1(const JobSpec& job, const AmalgamPtr& G) {
  CoeffPtr A = coefficient_system_of(*G, job.budgets);
  const CohomologySet H = h1(A, job.budgets);
  ordered_json j = envelope(job);
  j["cocycle_count"] = H.cocycles.size();
  j["class_count"] = H.size();
  ordered_json classes = ordered_json::array();
  for (std::size_t c = 0; c < H.size(); ++c) {
    ordered_json jc;
    jc["id"] = c;
    jc["base_point"] = H.classes[c].base_point;
    jc["orbit_size"] = H.classes[c].orbit_size;
    jc["cocycle"] = cochain_json(*A, H.classes[c].representative);
    classes.push_back(std::move(jc));
  }
  j["classes"] = std::move(classes);
  return j;
}

ordered_json do_classify(const JobSpec& job, const AmalgamPtr& G) {
  const Classification cls = classify(G, job.budgets);
  ordered_json j = envelope(job);
  j["complex"] = complex_json(*G->complex());
  j["cocycle_count"] = cls.cohomology.cocycles.size();
  j["class_count"] = cls.cohomology.size();
  ordered_json classes = ordered_json::array();
  for (std::size_t c = 0; c < cls.cohomology.size(); ++c) {
    ordered_json jc;
    jc["id"] = c;
    jc["base_point"] = c == cls.base_class;
    jc["orbit_size"] = cls.cohomology.classes[c].orbit_size;
    jc["cocycle"] = cochain_json(*cls.system, cls.cohomology.classes[c].representative);
    jc["amalgam"] = amalgam_json(*cls.representatives[c]);
    classes.push_back(std::move(jc));
  }
  j["classes"] = std::move(classes);
  return j;
}

ordered_json do_oracle(const JobSpec& job, const AmalgamPtr& G) {
  const OracleClassification oc(oracle_enumerate_type(G, job.budgets), job.budgets);
  // Canonical labels: per class, the lexicographically smallest cocycle of
  // its normalized members. Counting and membership come from the oracle
  // sweep alone; the label makes the report comparable with `classify`.
  CoeffPtr A = coefficient_system_of(*G, job.budgets);
  const std::size_t nclasses = oc.class_count();
  std::vector<std::optional<Cochain1>> canon(nclasses);
  std::vector<std::size_t> canon_member(nclasses);
  for (std::size_t i = 0; i < oc.enumeration().size(); ++i) {
    const Amalgam member = oc.enumeration().materialize(i);
    if (!is_normalized(member, *G)) continue;
    const Cochain1 z = cocycle_of(member, *G, *A);
    const std::size_t c = oc.class_of(i);
    if (!canon[c] || z.values < canon[c]->values) {
      canon[c] = z;
      canon_member[c] = i;
    }
  }
  for (std::size_t c = 0; c < nclasses; ++c)
    if (!canon[c])
      throw InternalError("an oracle class has no normalized member");

  // Emit classes sorted by canonical cocycle, matching `classify` order.
  std::vector<std::size_t> order(nclasses);
  for (std::size_t c = 0; c < nclasses; ++c) order[c] = c;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return canon[a]->values < canon[b]->values;
  });

  const std::size_t ref = oc.class_of(oc.enumeration().reference_index());
  ordered_json j = envelope(job);
  j["complex"] = complex_json(*G->complex());
  j["amalgam_count"] = oc.enumeration().size();
  j["class_count"] = nclasses;
  ordered_json classes = ordered_json::array();
  for (std::size_t rank = 0; rank < nclasses; ++rank) {
    const std::size_t c = order[rank];
    ordered_json jc;
    jc["id"] = rank;
    jc["base_point"] = c == ref;
    jc["size"] = oc.class_sizes()[c];
    jc["cocycle"] = cochain_json(*A, *canon[c]);
    jc["amalgam"] = amalgam_json(oc.enumeration().materialize(canon_member[c]));
    classes.push_back(std::move(jc));
  }
  j["classes"] = std::move(classes);
  return j;
}

ordered_json do_normalize(const JobSpec& job, const AmalgamPtr& G, const AmalgamPtr& G0) {
  const NormalizationResult res = normalize(*G, *G0);
  const IsoReport rep = check_iso(res.iso);
  if (!rep.ok) throw InternalError("normalization witness failed: " + rep.violation);
  ordered_json j = envelope(job);
  j["normalized"] = amalgam_json(*res.amalgam);
  ordered_json comps = ordered_json::object();
  const SimplicialComplex& X = *G->complex();
  for (std::size_t s = 0; s < X.size(); ++s)
    comps[simplex_name(X.simplex(static_cast<int>(s)))] = res.iso.components[s].map;
  j["iso_components"] = std::move(comps);
  j["verified"] = true;
  return j;
}

ordered_json do_iso_check(const JobSpec& job, const AmalgamPtr& G1, const AmalgamPtr& G2) {
  const auto witness = oracle_isomorphic(G1, G2, job.budgets);
  ordered_json j = envelope(job);
  j["isomorphic"] = witness.has_value();
  if (witness) {
    ordered_json comps = ordered_json::object();
    const SimplicialComplex& X = *G1->complex();
    for (std::size_t s = 0; s < X.size(); ++s)
      comps[simplex_name(X.simplex(static_cast<int>(s)))] = witness->components[s].map;
    j["witness"] = std::move(comps);
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

ordered_json do_goldschmidt(const JobSpec& job, const AmalgamPtr& G) {
  const GoldschmidtResult res = goldschmidt(G, job.budgets);
  ordered_json j = envelope(job);
  j["double_coset_count"] = res.count();
  j["h1_class_count"] = res.h1_classes.size();
  ordered_json reps = ordered_json::array();
  const int edge = G->complex()->id_of({1, 2});
  for (Elt r : res.representatives) {
    ordered_json jr;
    jr["element"] = r;
    jr["automorphism"] = res.system->at(edge).auts->aut(r);
    reps.push_back(std::move(jr));
  }
  j["coset_representatives"] = std::move(reps);
  j["class_to_coset"] = res.class_to_coset;
  return j;
}

// --- human rendering --------------------------------------------------------

std::string render_human(const ordered_json& j) {
  const std::string cmd = j.at("command").get<std::string>();
  std::ostringstream os;
  if (cmd == "validate") {
    os << "valid amalgam: " << j.at("cover_maps").get<std::size_t>() << " cover maps, groups";
    for (const auto& [k, v] : j.at("group_orders").items()) os << " |" << k << "|=" << v;
    os << "\n";
  } else if (cmd == "coeffs") {
    os << "coefficient system:";
    for (const auto& [k, v] : j.at("aut_orders").items()) os << " |A_" << k << "|=" << v;
    os << "\n";
    for (const auto& a : j.at("alphas"))
      os << "  alpha {" << a.at("from").get<std::string>() << "} -> {"
         << a.at("to").get<std::string>() << "}: "
         << (a.at("injective").get<bool>() ? "injective" : "non-injective") << ", "
         << (a.at("surjective").get<bool>() ? "surjective" : "non-surjective") << "\n";
  } else if (cmd == "h0") {
    os << "|H^0| = " << j.at("order").get<std::size_t>() << "\n";
  } else if (cmd == "h1") {
    os << "|Z^1| = " << j.at("cocycle_count").get<std::size_t>() << ", |H^1| = "
       << j.at("class_count").get<std::size_t>() << "\n";
    for (const auto& c : j.at("classes"))
      os << "  class " << c.at("id").get<std::size_t>() << ": orbit size "
         << c.at("orbit_size").get<std::size_t>()
         << (c.at("base_point").get<bool>() ? " (base point)" : "") << "\n";
  } else if (cmd == "classify") {
    os << "isomorphism classes of this type: " << j.at("class_count").get<std::size_t>() << "\n";
    for (const auto& c : j.at("classes"))
      os << "  class " << c.at("id").get<std::size_t>() << ": orbit size "
         << c.at("orbit_size").get<std::size_t>()
         << (c.at("base_point").get<bool>() ? " (base point: the input amalgam)" : "") << "\n";
  } else if (cmd == "oracle") {
    os << "oracle: " << j.at("amalgam_count").get<std::size_t>() << " amalgams of this type, "
       << j.at("class_count").get<std::size_t>() << " isomorphism classes\n";
    for (const auto& c : j.at("classes"))
      os << "  class " << c.at("id").get<std::size_t>() << ": " << c.at("size").get<std::size_t>()
         << " members" << (c.at("base_point").get<bool>() ? " (contains the input)" : "") << "\n";
  } else if (cmd == "normalize") {
    os << "normalized; isomorphism verified\n";
  } else if (cmd == "iso-check") {
    os << (j.at("isomorphic").get<bool>() ? "isomorphic (witness found)\n" : "not isomorphic\n");
  } else if (cmd == "goldschmidt") {
    os << "double cosets: " << j.at("double_coset_count").get<std::size_t>()
       << ", |H^1| = " << j.at("h1_class_count").get<std::size_t>() << "\n";
  } else {
    os << j.dump(2) << "\n";
  }
  return os.str();
}

}  // namespace

std::string diff_reports(const std::string& report_a, const std::string& report_b) {
  ordered_json a, b;
  try {
    a = ordered_json::parse(report_a);
    b = ordered_json::parse(report_b);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("report is not valid JSON: ") + e.what());
  }
  const auto count_a = a.at("class_count").get<std::size_t>();
  const auto count_b = b.at("class_count").get<std::size_t>();
  if (count_a != count_b)
    return "class count differs: " + std::to_string(count_a) + " vs " + std::to_string(count_b);
  for (std::size_t c = 0; c < count_a; ++c) {
    const ordered_json& ca = a.at("classes").at(c);
    const ordered_json& cb = b.at("classes").at(c);
    if (ca.at("cocycle") != cb.at("cocycle"))
      return "canonical cocycle differs at class " + std::to_string(c);
    if (ca.contains("amalgam") && cb.contains("amalgam") && ca.at("amalgam") != cb.at("amalgam"))
      return "representative amalgam differs at class " + std::to_string(c);
    if (ca.at("base_point") != cb.at("base_point"))
      return "base point flag differs at class " + std::to_string(c);
  }
  return "";
}

RunResult run(const JobSpec& job) {
  RunResult res;
  try {
    static const std::vector<std::string> known = {
        "validate",  "coeffs",      "h0",     "h1",   "classify",
        "normalize", "iso-check",   "goldschmidt", "oracle", "diff"};
    if (std::find(known.begin(), known.end(), job.command) == known.end())
      throw ValidationError("unknown command \"" + job.command + "\"");
    const std::size_t arity =
        (job.command == "normalize" || job.command == "iso-check" || job.command == "diff") ? 2 : 1;
    if (job.inputs.size() != arity)
      throw ValidationError("command \"" + job.command + "\" takes exactly " +
                            std::to_string(arity) + " input file(s)");

    if (job.command == "diff") {
      auto slurp = [](const std::string& path) {
        std::ifstream in(path);
        if (!in) throw ValidationError("cannot open input file: " + path);
        std::ostringstream buf;
        buf << in.rdbuf();
        return buf.str();
      };
      const std::string divergence = diff_reports(slurp(job.inputs[0]), slurp(job.inputs[1]));
      ordered_json j = envelope(job);
      j["equal"] = divergence.empty();
      if (!divergence.empty()) j["divergence"] = divergence;
      res.out = job.machine ? j.dump(2) + "\n"
                            : (divergence.empty() ? "reports are equal\n"
                                                  : "reports differ: " + divergence + "\n");
      res.exit_code = divergence.empty() ? 0 : 1;
      return res;
    }

    const AmalgamPtr G = io::read_amalgam_file(job.inputs[0], job.budgets);
    ordered_json report;
    if (job.command == "validate") {
      report = do_validate(job, G);
    } else if (job.command == "coeffs") {
      report = do_coeffs(job, G);
    } else if (job.command == "h0") {
      report = do_h0(job, G);
    } else if (job.command == "h1") {
      report = do_h1(job, G);
    } else if (job.command == "classify") {
      report = do_classify(job, G);
    } else if (job.command == "oracle") {
      report = do_oracle(job, G);
    } else if (job.command == "goldschmidt") {
      report = do_goldschmidt(job, G);
    } else if (job.command == "normalize") {
      report = do_normalize(job, G, io::read_amalgam_file(job.inputs[1], job.budgets));
    } else if (job.command == "iso-check") {
      report = do_iso_check(job, G, io::read_amalgam_file(job.inputs[1], job.budgets));
    } else {
      throw ValidationError("unknown command \"" + job.command + "\"");
    }
    res.out = job.machine ? report.dump(2) + "\n" : render_human(report);
    res.exit_code = 0;
  } catch (const BudgetError& e) {
    res.err = std::string("budget exhausted: ") + e.what();
    res.exit_code = 2;
  } catch (const ValidationError& e) {
    res.err = std::string("error: ") + e.what();
    res.exit_code = 1;
  } catch (const InternalError& e) {
    res.err = std::string("internal invariant failure: ") + e.what();
    res.exit_code = 3;
  }
  return res;
}

int main_entry(int argc, const char* const* argv) {
  CLI::App app{"amal — classification of simplicial amalgams of finite groups"};
  app.require_subcommand(1);

  JobSpec job;
  std::uint64_t cocycle_budget = 1'000'000;

  auto add_common = [&](CLI::App* sub, std::size_t n_inputs) {
    sub->add_option("--input", job.inputs, "input amalgam file (JSON)")
        ->required()
        ->expected(static_cast<int>(n_inputs));
    sub->add_flag("--json", job.machine, "emit a machine-readable report");
    sub->add_option("--max-order", job.budgets.max_order, "largest allowed group order");
    sub->add_option("--aut-budget", job.budgets.aut_nodes,
                    "automorphism backtracking node budget");
    sub->add_option("--cocycle-budget", cocycle_budget,
                    "Z^1 enumeration budget (the oracle may visit 10x as many nodes)");
    sub->add_option("--orbit-budget", job.budgets.orbit_moves, "orbit sweep move budget");
    sub->add_option("--workers", job.budgets.workers, "worker threads for the searches");
    sub->add_option("--seed", job.seed, "seed echoed into reports (randomized test drivers)");
  };

  struct Cmd {
    const char* name;
    const char* help;
    std::size_t inputs;
  };
  const std::vector<Cmd> cmds = {
      {"validate", "validate an amalgam file (groups, injectivity, coherence)", 1},
      {"coeffs", "build the coefficient system and report the alpha maps", 1},
      {"h0", "compute H^0 of the coefficient system", 1},
      {"h1", "compute H^1 of the coefficient system", 1},
      {"classify", "classify all amalgams of the input's type", 1},
      {"normalize", "normalize amalgam (1st input) against a reference type (2nd input)", 2},
      {"iso-check", "search for an isomorphism between two amalgams", 2},
      {"goldschmidt", "double-coset classification on the 1-simplex", 1},
      {"oracle", "exhaustively enumerate and classify the input's type", 1},
      {"diff", "compare two machine-readable classification reports", 2},
  };
  for (const Cmd& c : cmds) add_common(app.add_subcommand(c.name, c.help), c.inputs);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    std::printf("%s", app.help().c_str());
    return 0;
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "error: %s\n%s", e.what(), app.help().c_str());
    return 1;
  }
  job.command = app.get_subcommands().front()->get_name();
  job.budgets.cocycles = cocycle_budget;
  job.budgets.oracle_states = cocycle_budget * 10;

  const RunResult res = run(job);
  if (!res.out.empty()) std::fputs(res.out.c_str(), stdout);
  if (!res.err.empty()) std::fprintf(stderr, "%s\n", res.err.c_str());
  return res.exit_code;
}

}  // namespace amal::cli
