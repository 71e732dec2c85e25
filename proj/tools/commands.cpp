#include "commands.hpp"

#include <sstream>
#include <stdexcept>

#include "io.hpp"
#include "tropical/errors.hpp"
#include "tropical/format.hpp"
#include "tropical/graph.hpp"
#include "tropical/trellis.hpp"

namespace tropical::cli {

namespace {

json node_list(const std::vector<Index>& nodes) {
  json out = json::array();
  for (Index v : nodes) out.push_back(v + 1);
  return out;
}

json verdict_json(const AssumptionVerdict& v) {
  return {{"passed", v.passed},
          {"message", v.message},
          {"member", v.member ? json(*v.member + 1) : json(nullptr)},
          {"witness", node_list(v.witness)}};
}

json empty_report(const std::string& command) {
  return {{"command", command}, {"family", nullptr},   {"validation", nullptr}, {"derived", nullptr},
          {"bounds", nullptr},  {"check", nullptr},    {"transient", nullptr},  {"deviations", json::array()},
          {"error", nullptr}};
}

CommandResult fail(json report, int code, const std::string& message) {
  report["error"] = {{"code", code}, {"message", message}};
  return {code, std::move(report)};
}

struct Loaded {
  FamilyFile file;
  std::optional<MatrixFamily> family;
  json expected = json::object();
};

// Reads the family file and the expected values; input problems become exit code 1.
std::optional<CommandResult> load(const CommonOptions& opts, json& report, Loaded& out) {
  try {
    out.file = read_family_file(opts.family_path);
    out.family.emplace(out.file.to_family());
    if (opts.expected_path) {
      out.expected = parse_exact_json(read_text(*opts.expected_path));
      if (!out.expected.is_object()) throw ParseError("expected-values file must be a JSON object");
    } else if (out.file.expected) {
      out.expected = *out.file.expected;
    }
  } catch (const std::exception& e) {
    return fail(std::move(report), kInputError, e.what());
  }
  json names = json::array();
  for (const auto& n : out.file.names) names.push_back(n);
  report["family"] = {{"n", out.file.n}, {"members", names}};
  report["validation"] = validation_json(out.family->validation());
  return std::nullopt;
}

std::optional<ProductSequence> load_sequence(const std::string& path, const MatrixFamily& family, json& report,
                                             std::optional<CommandResult>& failure) {
  try {
    ProductSequence seq = read_sequence_file(path);
    check_indices(family, seq);
    return seq;
  } catch (const std::exception& e) {
    failure = fail(std::move(report), kInputError, e.what());
    return std::nullopt;
  }
}

// Every derived quantity we can compute; under --force, failures are recorded per field.
json derived_json(const MatrixFamily& family, json& flat) {
  json d;
  const MatrixXq& sup = family.sup();
  d["a_sup"] = flat["a_sup"] = to_json(sup);
  d["a_inf"] = flat["a_inf"] = to_json(family.inf());
  CycleMean<Rational> ls = lambda_star(sup);
  d["lambda_star"] = {{"value", to_string(ls.mean)}, {"witness", node_list(ls.witness)}};
  flat["lambda_star"] = to_string(ls.mean);

  auto attempt = [&](const char* key, auto&& compute) {
    try {
      d[key] = flat[key] = compute();
    } catch (const std::exception& e) {
      d[key] = nullptr;
      d["errors"][key] = e.what();
    }
  };
  attempt("alpha", [&] { return to_json(best_paths_to_pivot(sup)); });
  attempt("beta", [&] { return to_json(best_paths_from_pivot(sup)); });
  attempt("gamma", [&] { return to_json(pivot_avoiding_walks(sup)); });
  attempt("w", [&] { return to_json(best_paths_to_pivot(family.inf())); });
  attempt("v", [&] { return to_json(best_paths_from_pivot(family.inf())); });
  return d;
}

void add_bound_flat(const BoundReport& r, const std::string& prefix, json& flat) {
  flat[prefix + "_term1"] = to_json(r.term1);
  flat[prefix + "_term2"] = to_json(r.term2);
  flat[prefix + "_overall"] = r.overall ? json(r.overall->get_str()) : json(nullptr);
}

// The explicit bound with any intermediate quantity present in `expected` substituted for the computed one.
std::optional<json> bound_from_expected(const MatrixFamily& family, const json& expected) {
  static const char* const keys[] = {"alpha", "beta", "gamma", "w", "v", "lambda_star"};
  json used = json::array();
  for (const char* k : keys)
    if (expected.contains(k)) used.push_back(k);
  if (used.empty()) return std::nullopt;

  BoundInputs in = explicit_inputs(family);
  const Index n = family.dim();
  if (expected.contains("alpha")) in.alpha = vector_from_json(expected["alpha"], n);
  if (expected.contains("beta")) in.beta = vector_from_json(expected["beta"], n);
  if (expected.contains("gamma")) in.gamma = matrix_from_json(expected["gamma"], n, n);
  if (expected.contains("w")) in.to_pivot = vector_from_json(expected["w"], n);
  if (expected.contains("v")) in.from_pivot = vector_from_json(expected["v"], n);
  if (expected.contains("lambda_star")) in.lambda = scalar_from_json(expected["lambda_star"]);
  json out = bound_json(evaluate_bound(in, BoundMode::Explicit));
  out["substituted"] = used;
  return out;
}

void compare(const std::string& key, const json& exp, const json& got, json& index, json& out) {
  if (exp.is_array() != got.is_array() || (exp.is_array() && exp.size() != got.size())) {
    out.push_back({{"quantity", key}, {"index", index}, {"expected", exp}, {"computed", got}});
    return;
  }
  if (exp.is_array()) {
    for (std::size_t i = 0; i < exp.size(); ++i) {
      index.push_back(i + 1);
      compare(key, exp[i], got[i], index, out);
      index.erase(index.size() - 1);
    }
    return;
  }
  bool same = false;
  try {
    same = !got.is_null() && scalar_from_json(exp) == scalar_from_json(got);
  } catch (const ParseError&) {
    same = exp == got;
  }
  if (!same) {
    json e = exp.is_string() || exp.is_null() ? exp : json(to_string(scalar_from_json(exp)));
    out.push_back({{"quantity", key}, {"index", index}, {"expected", e}, {"computed", got}});
  }
}

}  // namespace

json validation_json(const ValidationReport& report) {
  return {{"passed", report.all_passed()},
          {"assumptions",
           {{"common_support", verdict_json(report.common_support)},
            {"member_loop", verdict_json(report.member_loop)},
            {"sup_loop", verdict_json(report.sup_loop)}}}};
}

json bound_json(const BoundReport& r) {
  json out = {{"mode", r.mode == BoundMode::Explicit ? "explicit" : "implicit"},
              {"term1", to_json(r.term1)},
              {"term2", to_json(r.term2)},
              {"per_entry", to_json(r.per_entry)},
              {"overall", r.overall ? json(r.overall->get_str()) : json(nullptr)},
              {"min_admissible_length", r.min_admissible_length() ? json(*r.min_admissible_length()) : json(nullptr)},
              {"lambda_acyclic", r.lambda_acyclic},
              {"argmax", nullptr}};
  if (r.argmax) {
    out["argmax"] = {{"row", r.argmax->row + 1},
                     {"col", r.argmax->col + 1},
                     {"term", r.argmax->term == BoundTerm::AvoidPivot ? "term1" : "term2"}};
  }
  return out;
}

json deviations(const json& expected, const json& computed) {
  json out = json::array();
  for (auto it = expected.begin(); it != expected.end(); ++it) {
    if (!computed.contains(it.key())) continue;
    json index = json::array();
    compare(it.key(), it.value(), computed[it.key()], index, out);
  }
  return out;
}

CommandResult run_validate(const CommonOptions& opts) {
  json report = empty_report("validate");
  Loaded in;
  if (auto failure = load(opts, report, in)) return *failure;
  const bool ok = in.family->valid();
  return {ok ? kSuccess : kAssumptionFailure, std::move(report)};
}

CommandResult run_derive(const CommonOptions& opts) {
  json report = empty_report("derive");
  Loaded in;
  if (auto failure = load(opts, report, in)) return *failure;
  if (!in.family->valid() && !opts.force) {
    return fail(std::move(report), kAssumptionFailure, "family fails validation (use --force for partial output)");
  }
  json flat;
  report["derived"] = derived_json(*in.family, flat);
  report["deviations"] = deviations(in.expected, flat);
  return {kSuccess, std::move(report)};
}

CommandResult run_bound(const CommonOptions& opts, const std::optional<std::string>& sequence_path) {
  json report = empty_report("bound");
  Loaded in;
  if (auto failure = load(opts, report, in)) return *failure;
  std::optional<ProductSequence> seq;
  if (sequence_path) {
    std::optional<CommandResult> failure;
    seq = load_sequence(*sequence_path, *in.family, report, failure);
    if (failure) return *failure;
  }
  if (!in.family->valid()) return fail(std::move(report), kAssumptionFailure, "family fails validation");

  const MatrixFamily& family = *in.family;
  json flat;
  report["derived"] = derived_json(family, flat);

  BoundReport expl = explicit_bound(family);
  json bounds = {{"explicit", bound_json(expl)}};
  add_bound_flat(expl, "explicit", flat);
  try {
    if (auto alt = bound_from_expected(family, in.expected)) bounds["explicit_from_expected"] = *alt;
  } catch (const std::exception& e) {
    return fail(std::move(report), kInputError, std::string("expected values: ") + e.what());
  }

  if (seq) {
    MatrixXq gamma_k = fold(family, *seq);
    BoundReport impl = implicit_bound(family, gamma_k);
    flat["gamma_k"] = to_json(gamma_k);
    add_bound_flat(impl, "implicit", flat);
    const bool sufficient = check_length_sufficient(expl, seq->size());
    bounds["implicit"] = bound_json(impl);
    bounds["sequence"] = {{"length", seq->size()},
                          {"gamma_k", to_json(gamma_k)},
                          {"length_guaranteed", sufficient},
                          {"implicit_length_guaranteed", check_length_sufficient(impl, seq->size())},
                          {"note", sufficient ? "length exceeds the explicit bound" : "length not guaranteed"}};
  }
  report["bounds"] = std::move(bounds);
  report["deviations"] = deviations(in.expected, flat);
  return {kSuccess, std::move(report)};
}

CommandResult run_check(const CommonOptions& opts, const std::string& sequence_path) {
  json report = empty_report("check");
  Loaded in;
  if (auto failure = load(opts, report, in)) return *failure;
  std::optional<CommandResult> failure;
  std::optional<ProductSequence> seq = load_sequence(sequence_path, *in.family, report, failure);
  if (failure) return *failure;
  if (!in.family->valid()) return fail(std::move(report), kAssumptionFailure, "family fails validation");

  const MatrixFamily& family = *in.family;
  MatrixXq gamma_k = fold(family, *seq);
  TrellisDigraph trellis(family, *seq);
  VectorXq w_star = initial_walk_weights(trellis);
  VectorXq v_star = final_walk_weights(trellis);

  json check = {{"length", seq->size()},   {"gamma_k", to_json(gamma_k)}, {"w_star", to_json(w_star)},
                {"v_star", to_json(v_star)}, {"rank_one", false},          {"factors", nullptr},
                {"consistent", false}};
  bool rank_one = false;
  bool consistent = false;
  if (auto f = rank_one_factor(gamma_k)) {
    rank_one = true;
    check["factors"] = {{"column", to_json(f->column)}, {"row", to_json(f->row)}};
    VectorXq first_row = gamma_k.row(kPivot).transpose();
    consistent = equal(f->column, w_star) && equal(first_row, v_star);
  }
  check["rank_one"] = rank_one;
  check["consistent"] = consistent;
  BoundReport expl = explicit_bound(family);
  check["explicit_overall"] = expl.overall ? json(expl.overall->get_str()) : json(nullptr);
  check["length_guaranteed"] = check_length_sufficient(expl, seq->size());
  report["check"] = std::move(check);

  json flat = {{"gamma_k", to_json(gamma_k)}, {"w_star", to_json(w_star)}, {"v_star", to_json(v_star)}};
  report["deviations"] = deviations(in.expected, flat);
  if (!rank_one) return fail(std::move(report), kNotRankOne, "product is not rank one");
  if (!consistent) return fail(std::move(report), kNotRankOne, "factors disagree with the optimal walk weights");
  return {kSuccess, std::move(report)};
}

CommandResult run_transient(const CommonOptions& opts, const TransientArgs& args) {
  json report = empty_report("transient");
  if (args.horizon == 0) return fail(std::move(report), kInputError, "--horizon must be at least 1");
  Loaded in;
  if (auto failure = load(opts, report, in)) return *failure;
  if (!in.family->valid()) return fail(std::move(report), kAssumptionFailure, "family fails validation");

  TransientOptions topt;
  topt.horizon = args.horizon;
  topt.mode = args.mode;
  topt.samples_per_length = args.samples;
  topt.seed = args.seed;
  topt.threads = args.threads;
  topt.budget = args.budget;
  topt.max_counterexamples = args.max_counterexamples;

  TransientEstimate est;
  try {
    est = estimate_transient(*in.family, topt);
  } catch (const BudgetExceeded& e) {
    return fail(std::move(report), kBudgetExceeded, e.what());
  }

  BoundReport expl = explicit_bound(*in.family);
  std::size_t above = 0;
  for (std::size_t len = 1; len <= est.horizon; ++len)
    if (check_length_sufficient(expl, len)) above += est.failures[len - 1];

  json examples = json::array();
  for (const auto& c : est.counterexamples) examples.push_back({{"length", c.length}, {"sequence", c.sequence.members}});
  const bool exhaustive = est.mode == SearchMode::Exhaustive;
  report["transient"] = {
      {"mode", exhaustive ? "exhaustive" : "sampled"},
      {"horizon", est.horizon},
      {"seed", exhaustive ? json(nullptr) : json(est.seed)},
      {"samples_per_length", exhaustive ? json(nullptr) : json(args.samples)},
      {"first_all_rank_one", est.first_all_rank_one ? json(*est.first_all_rank_one) : json(nullptr)},
      {"examined", est.examined},
      {"failures", est.failures},
      {"counterexample_count", est.counterexample_count},
      {"counterexamples", examples},
      {"explicit_overall", expl.overall ? json(expl.overall->get_str()) : json(nullptr)},
      {"counterexamples_above_bound", above}};
  return {kSuccess, std::move(report)};
}

std::string render_pretty(const json& report) {
  std::ostringstream os;
  os << "command: " << report["command"].get<std::string>() << "\n";
  if (!report["error"].is_null()) os << "error: " << report["error"]["message"].get<std::string>() << "\n";
  if (!report["validation"].is_null()) {
    os << "validation: " << (report["validation"]["passed"].get<bool>() ? "pass" : "FAIL") << "\n";
    for (const auto& [name, v] : report["validation"]["assumptions"].items()) {
      os << "  " << name << ": " << (v["passed"].get<bool>() ? "pass" : "FAIL");
      if (!v["passed"].get<bool>()) os << " (" << v["message"].get<std::string>() << ")";
      os << "\n";
    }
  }
  auto print_block = [&](const std::string& title, const json& value) {
    if (value.is_null()) return;
    os << title << ":\n";
    if (value.is_array() && !value.empty() && value[0].is_array()) {
      for (const auto& row : value) {
        os << "  ";
        for (const auto& x : row) os << x.get<std::string>() << "\t";
        os << "\n";
      }
    } else {
      os << "  " << value.dump() << "\n";
    }
  };
  if (!report["derived"].is_null()) {
    const json& d = report["derived"];
    os << "lambda*: " << d["lambda_star"]["value"].get<std::string>() << " cycle " << d["lambda_star"]["witness"].dump()
       << "\n";
    for (const char* key : {"a_sup", "a_inf", "alpha", "beta", "gamma", "w", "v"}) print_block(key, d[key]);
  }
  if (!report["bounds"].is_null()) {
    for (const auto& [name, b] : report["bounds"].items()) {
      if (name == "sequence") {
        os << "sequence length " << b["length"] << ": " << b["note"].get<std::string>() << "\n";
        continue;
      }
      os << name << " bound: " << (b["overall"].is_null() ? "none" : b["overall"].get<std::string>());
      if (!b["argmax"].is_null()) {
        os << " at (" << b["argmax"]["row"] << "," << b["argmax"]["col"] << ") "
           << b["argmax"]["term"].get<std::string>();
      }
      if (!b["min_admissible_length"].is_null()) os << ", rank one for k >= " << b["min_admissible_length"];
      os << "\n";
    }
  }
  if (!report["check"].is_null()) {
    const json& c = report["check"];
    os << "length " << c["length"] << ": " << (c["rank_one"].get<bool>() ? "rank one" : "not rank one")
       << (c["consistent"].get<bool>() ? ", factors match w*/v*" : "") << "\n";
    print_block("gamma_k", c["gamma_k"]);
    print_block("w*", c["w_star"]);
    print_block("v*", c["v_star"]);
  }
  if (!report["transient"].is_null()) {
    const json& t = report["transient"];
    os << t["mode"].get<std::string>() << " search to length " << t["horizon"] << ": ";
    if (t["first_all_rank_one"].is_null()) {
      os << "no rank-one window\n";
    } else {
      os << "all examined products rank one from length " << t["first_all_rank_one"] << "\n";
    }
    os << "counterexamples: " << t["counterexample_count"] << " (" << t["counterexamples_above_bound"]
       << " above the explicit bound)\n";
  }
  if (!report["deviations"].empty()) {
    os << "deviations from expected values:\n";
    for (const auto& d : report["deviations"]) {
      os << "  " << d["quantity"].get<std::string>() << d["index"].dump() << ": expected " << d["expected"].dump()
         << ", computed " << d["computed"].dump() << "\n";
    }
  }
  return os.str();
}

}  // namespace tropical::cli
