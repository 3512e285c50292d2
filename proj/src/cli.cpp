#include "latnum/cli.hpp"

#include "latnum/bounds.hpp"
#include "latnum/classify.hpp"
#include "latnum/davenport.hpp"
#include "latnum/io.hpp"
#include "latnum/lattice_count.hpp"
#include "latnum/parallel.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

namespace latnum {

namespace {

using json = nlohmann::json;

// Raised for bad combinations of otherwise well-formed options.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Global {
  std::string format = "json";
  unsigned jobs = 1;
  std::uint64_t seed = 0;
};

json int_json(const Integer& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

json interval_json(const Interval& i) { return json::array({i.lo.str(), i.hi.str()}); }

json scalar_json(const PiScaled& x) {
  if (x.is_rational()) return x.coeff().str();
  return {{"value", x.str()}, {"enclosure", interval_json(x.enclose(64))}};
}

json report_json(const BoundReport& r) {
  return {{"inequality", r.name},
          {"status", "checked"},
          {"lhs", scalar_json(r.lhs)},
          {"rhs", scalar_json(r.rhs)},
          {"holds", r.holds},
          {"equality", r.equality},
          {"slack", r.slack ? json(r.slack->str()) : json(nullptr)}};
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

std::string csv_value(const json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_object() && v.contains("value")) return v["value"].get<std::string>();
  return v.dump();
}

// Flat CSV from an array of flat JSON objects, columns in the given order.
void write_csv(std::ostream& out, const std::vector<std::string>& columns, const json& rows) {
  for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
  out << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      out << (i ? "," : "");
      if (row.contains(columns[i])) out << csv_field(csv_value(row[columns[i]]));
    }
    out << "\n";
  }
}

std::vector<IntVector> parse_generators(const std::string& text, std::size_t n) {
  std::vector<IntVector> rows;
  std::stringstream rs(text);
  for (std::string row; std::getline(rs, row, ';');) {
    IntVector v;
    std::stringstream cs(row);
    for (std::string x; std::getline(cs, x, ',');) {
      const Rational q = Rational::parse(x);
      if (!q.is_integer()) throw UsageError("generator entries must be integers");
      v.push_back(q.num());
    }
    if (v.size() != n) throw UsageError("each generator needs " + std::to_string(n) + " entries");
    rows.push_back(std::move(v));
  }
  if (rows.size() != n) throw UsageError("need exactly " + std::to_string(n) + " generators");
  return rows;
}

// ---------------------------------------------------------------------------

int cmd_count(const Global& g, const std::string& body, std::ostream& out) {
  const LatticeCount c = count(load_body(body));
  json j = {{"total", int_json(c.total)}, {"interior", int_json(c.interior)}, {"boundary", int_json(c.boundary)}};
  if (g.format == "csv") write_csv(out, {"total", "interior", "boundary"}, json::array({j}));
  else out << j.dump() << "\n";
  return 0;
}

int cmd_volume(const Global& g, const std::string& body, std::ostream& out) {
  const VPolytope k = load_body(body);
  json j = {{"dim", k.dim()}, {"volume", volume(k).str()}};
  if (g.format == "csv") write_csv(out, {"dim", "volume"}, json::array({j}));
  else out << j.dump() << "\n";
  return 0;
}

int cmd_polar(const Global& g, const std::string& body, std::ostream& out) {
  const VPolytope p = polar(load_body(body));
  if (g.format == "csv") {
    for (const auto& v : p.vertices()) {
      for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i].str();
      out << "\n";
    }
  } else {
    out << polytope_json(p) << "\n";
  }
  return 0;
}

int cmd_davenport(const Global& g, const std::string& body, const std::string& gens, std::ostream& out) {
  const VPolytope k = load_body(body);
  const std::size_t n = k.ambient_dim();
  if (n > 6) throw UsageError("davenport supports dimension at most 6");
  const ParallelepipedSpec p = gens.empty() ? ParallelepipedSpec::unit_cell(n)
                                            : ParallelepipedSpec(IntMatrix::from_rows(parse_generators(gens, n)));
  const DavenportDecomposition d = volume_polynomial(k, p, g.jobs);
  const DavenportCheck c = davenport_bound_check(k, p, d);
  const bool consistent = c.holds && c.equality == c.characterization;
  if (g.format == "csv") {
    json rows = json::array();
    for (std::uint32_t s = 0; s < d.coefficients.size(); ++s)
      rows.push_back({{"subset", subset_label(s, n)}, {"coefficient", d.coefficients[s].str()}});
    write_csv(out, {"subset", "coefficient"}, rows);
  } else {
    json coeffs = json::object();
    for (std::uint32_t s = 0; s < d.coefficients.size(); ++s) coeffs[subset_label(s, n)] = d.coefficients[s].str();
    out << json{{"coefficients", coeffs},
                {"lhs", int_json(c.lhs)},
                {"rhs", c.rhs.str()},
                {"holds", c.holds},
                {"equality", c.equality},
                {"characterization", c.characterization}}
               .dump()
        << "\n";
  }
  return consistent ? 0 : 2;
}

// ---------------------------------------------------------------------------
// verify

using SuiteFn = std::function<std::vector<BoundReport>(const VPolytope&)>;

std::vector<std::pair<std::string, SuiteFn>> suites(std::size_t subset_cap) {
  return {
      {"blichfeldt", [](const VPolytope& k) { return std::vector{blichfeldt_lower_check(k)}; }},
      {"vdcorput", [](const VPolytope& k) { return std::vector{vdcorput_upper_check(k)}; }},
      {"sym-exact",
       [subset_cap](const VPolytope& k) {
         auto r = sym_blichfeldt_exact_check(k, subset_cap);
         return std::vector{r.bound, r.davenport_step, r.chain_step};
       }},
      {"gs-product",
       [](const VPolytope& k) { return std::vector{gs_product_exact_check(k), gs_product_lower_check(k)}; }},
      {"gs-ratio", [](const VPolytope& k) { return std::vector{gs_ratio_lower_check(k).bound}; }},
      {"mahler", [](const VPolytope& k) { return std::vector{mahler_planar_check(k)}; }},
  };
}

int cmd_verify(const Global& g, const std::string& suite, const std::vector<std::string>& bodies, bool builtin,
               std::size_t random, long coord, std::size_t subset_cap, std::ostream& out) {
  auto all = suites(subset_cap);
  std::vector<std::pair<std::string, SuiteFn>> chosen;
  for (auto& s : all)
    if (suite == "all" || suite == s.first) chosen.push_back(s);
  if (chosen.empty()) throw UsageError("unknown suite " + suite);

  std::vector<std::pair<std::string, VPolytope>> corpus;
  for (const auto& b : bodies) corpus.emplace_back(b, load_body(b));
  if (builtin)
    for (const auto& b : builtin_corpus()) corpus.emplace_back(b, load_body(b));
  std::mt19937_64 rng(g.seed);
  for (std::size_t i = 0; i < random; ++i) {
    const std::size_t dim = 2 + i % 3;
    corpus.emplace_back("random:" + std::to_string(i), random_symmetric_polytope(rng, dim, coord));
  }
  if (corpus.empty()) throw UsageError("verify needs --body, --builtin or --random");

  std::vector<json> per_body(corpus.size());
  parallel_for(corpus.size(), g.jobs, [&](std::size_t i) {
    json rows = json::array();
    for (const auto& [name, fn] : chosen) {
      try {
        for (const auto& r : fn(corpus[i].second)) {
          json row = report_json(r);
          row["body"] = corpus[i].first;
          row["suite"] = name;
          rows.push_back(std::move(row));
        }
      } catch (const HypothesisError& e) {
        rows.push_back({{"body", corpus[i].first}, {"suite", name}, {"inequality", name},
                        {"status", "skipped"}, {"reason", e.what()}});
      }
    }
    per_body[i] = std::move(rows);
  });

  json results = json::array();
  std::size_t checked = 0, skipped = 0, failed = 0;
  for (auto& rows : per_body)
    for (auto& row : rows) {
      if (row["status"] == "skipped") ++skipped;
      else if (row["holds"].get<bool>()) ++checked;
      else ++checked, ++failed;
      results.push_back(std::move(row));
    }
  if (g.format == "csv") {
    write_csv(out, {"body", "suite", "inequality", "status", "lhs", "rhs", "holds", "equality", "slack", "reason"},
              results);
  } else {
    out << json{{"suite", suite},
                {"bodies", corpus.size()},
                {"checked", checked},
                {"skipped", skipped},
                {"failed", failed},
                {"all_hold", failed == 0},
                {"results", results}}
               .dump()
        << "\n";
  }
  return failed == 0 ? 0 : 2;
}

// ---------------------------------------------------------------------------
// report

int cmd_report_asymptotics(const Global& g, unsigned n_max, const std::string& eps_text, std::ostream& out) {
  const Rational eps = Rational::parse(eps_text);
  if (eps <= Rational(0) || eps > Rational(1)) throw UsageError("--epsilon must lie in (0, 1]");
  const AsymptoticReport rep = asymptotic_report(n_max, eps);
  json rows = json::array();
  for (const auto& r : rep.rows) {
    rows.push_back({{"n", r.n},
                    {"laguerre_ratio", r.laguerre_ratio.str()},
                    {"laguerre_ratio_approx", r.laguerre_ratio_approx},
                    {"szego_approx", r.szego_approx},
                    {"exponential_bound_approx", r.exponential_bound},
                    {"threshold", r.threshold.str()},
                    {"below_threshold", r.below_threshold},
                    {"product_constant", scalar_json(r.product_constant)},
                    {"product_root_enclosure", interval_json(r.product_root)},
                    {"product_root_approx", r.product_root.lo.to_double()},
                    {"product_root_below_pi_plus_epsilon", r.product_root_below}});
  }
  auto opt = [](const std::optional<unsigned>& v) { return v ? json(*v) : json(nullptr); };
  if (g.format == "csv") {
    write_csv(out, {"n", "laguerre_ratio", "laguerre_ratio_approx", "szego_approx", "exponential_bound_approx",
                    "threshold", "below_threshold", "product_root_approx", "product_root_below_pi_plus_epsilon"},
              rows);
  } else {
    out << json{{"epsilon", eps.str()},
                {"n_max", n_max},
                {"first_threshold_crossing", opt(rep.first_threshold_crossing)},
                {"first_product_crossing", opt(rep.first_product_crossing)},
                {"rows", rows}}
               .dump()
        << "\n";
  }
  return 0;
}

int cmd_report_crosspolytope(const Global& g, unsigned n, unsigned long l_max, std::ostream& out) {
  if (n < 1 || n > 6) throw UsageError("--n must lie in [1, 6]");
  if (l_max < 1) throw UsageError("--l-max must be positive");
  std::vector<CrosspolytopeStats> stats(l_max);
  parallel_for(l_max, g.jobs, [&](std::size_t i) { stats[i] = crosspolytope_stats({n, i + 1}); });
  json rows = json::array();
  bool agree = true, monotone = true;
  for (std::size_t i = 0; i < l_max; ++i) {
    const auto& s = stats[i];
    agree = agree && s.agree;
    if (i > 0) monotone = monotone && stats[i - 1].normalized_power < s.normalized_power;
    rows.push_back({{"l", i + 1},
                    {"count", int_json(s.enumerated_count)},
                    {"volume", s.computed_volume.str()},
                    {"closed_forms_agree", s.agree},
                    {"normalized_power", s.normalized_power.str()},
                    {"ratio_root_enclosure", interval_json(s.normalized_root)},
                    {"ratio_root_approx", s.normalized_root.lo.to_double()}});
  }
  if (g.format == "csv") {
    write_csv(out, {"l", "count", "volume", "closed_forms_agree", "normalized_power", "ratio_root_approx"}, rows);
  } else {
    out << json{{"n", n}, {"l_max", l_max}, {"all_agree", agree}, {"monotone_in_l", monotone}, {"rows", rows}}.dump()
        << "\n";
  }
  return agree && monotone ? 0 : 2;
}

int cmd_report_g(const Global& g, unsigned k_max, std::ostream& out) {
  const auto steps = g_monotonicity_check(k_max);
  json rows = json::array();
  bool ok = true;
  for (const auto& s : steps) {
    for (const auto* r : {&s.nonincreasing, &s.ball_estimate, &s.sufficient}) {
      json row = report_json(*r);
      row["k"] = s.k;
      ok = ok && r->holds;
      rows.push_back(std::move(row));
    }
  }
  if (g.format == "csv") write_csv(out, {"k", "inequality", "lhs", "rhs", "holds", "equality"}, rows);
  else out << json{{"k_max", k_max}, {"all_hold", ok}, {"results", rows}}.dump() << "\n";
  return ok ? 0 : 2;
}

int cmd_report_audit(const Global& g, unsigned k_max, std::ostream& out) {
  json rows = json::array();
  for (const auto& r : laguerre_recurrence_audit(k_max))
    rows.push_back({{"k", r.k},
                    {"direct", r.direct.str()},
                    {"stated", r.stated.str()},
                    {"discrepancy", r.discrepancy.str()},
                    {"agree", r.discrepancy.is_zero()}});
  if (g.format == "csv") write_csv(out, {"k", "direct", "stated", "discrepancy", "agree"}, rows);
  else out << json{{"k_max", k_max}, {"rows", rows}}.dump() << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// search

int cmd_search(const Global& g, unsigned dim, unsigned bound, std::optional<long> interior,
               const std::string& checkpoint, bool resume, std::optional<std::uint64_t> max_nodes,
               std::uint64_t save_every, std::ostream& out) {
  if (resume && checkpoint.empty()) throw UsageError("--resume needs --checkpoint");
  SearchState s;
  if (resume) {
    if (!std::filesystem::exists(checkpoint)) throw std::runtime_error("no checkpoint at " + checkpoint);
    s = load_checkpoint(checkpoint);
    if (s.options.dim != dim || s.options.bound != bound || s.options.interior_filter != interior)
      throw UsageError("checkpoint was written for a different search");
  } else {
    s = start_search({dim, bound, interior});
  }
  std::uint64_t remaining = max_nodes.value_or(UINT64_MAX);
  while (!s.finished && remaining > 0) {
    const std::uint64_t step =
        checkpoint.empty() ? remaining : std::min(remaining, std::max<std::uint64_t>(save_every, 1));
    const std::uint64_t before = s.counters.nodes;
    run_search(s, step);
    remaining -= std::min(remaining, s.counters.nodes - before);
    if (!checkpoint.empty()) save_checkpoint(s, checkpoint);
  }
  if (!checkpoint.empty()) save_checkpoint(s, checkpoint);

  const auto ranked = rank_classes(s.classes);
  json classes = json::array();
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    const auto& c = ranked[i];
    json verts = json::array();
    for (const auto& v : c.vertices) {
      json row = json::array();
      for (const auto& x : v) row.push_back(int_json(x));
      verts.push_back(std::move(row));
    }
    classes.push_back({{"rank", i + 1},
                       {"class", c.name.empty() ? json(nullptr) : json(c.name)},
                       {"value", c.value.str()},
                       {"total", int_json(c.total)},
                       {"interior", int_json(c.interior)},
                       {"vertex_count", c.vertices.size()},
                       {"hash", c.form.hash},
                       {"vertices", std::move(verts)}});
  }
  const std::string scope = "classes with a representative whose vertices lie in [-" + std::to_string(bound) + "," +
                            std::to_string(bound) + "]^" + std::to_string(dim);
  if (g.format == "csv") {
    write_csv(out, {"rank", "class", "value", "total", "interior", "vertex_count", "hash"}, classes);
  } else {
    out << json{{"dim", dim},
                {"bound", bound},
                {"interior_filter", interior ? json(*interior) : json(nullptr)},
                {"scope", scope},
                {"complete", s.finished},
                {"counters",
                 {{"nodes", s.counters.nodes},
                  {"full_dimensional", s.counters.full_dimensional},
                  {"filtered_out", s.counters.filtered_out},
                  {"skipped_no_interior_origin", s.counters.skipped_no_interior_origin}}},
                {"class_count", ranked.size()},
                {"top_value", ranked.empty() ? json(nullptr) : json(ranked.front().value.str())},
                {"top_class", ranked.empty() || ranked.front().name.empty() ? json(nullptr)
                                                                            : json(ranked.front().name)},
                {"classes", classes}}
               .dump()
        << "\n";
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact lattice point and volume inequalities for lattice polytopes", "latnum"};
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--jobs", g.jobs, "Worker threads")->check(CLI::Range(1u, 256u));
  app.add_option("--seed", g.seed, "Seed for random corpora");

  std::string body, gens, suite = "all", eps = "1", checkpoint;
  std::vector<std::string> bodies;
  bool builtin = false, asymptotics = false, cross = false, resume = false;
  std::size_t random = 0, subset_cap = 1;
  long coord = 4;
  unsigned n_max = 60, cross_n = 2, g_k = 0, audit_k = 0, dim = 2, bound = 1;
  unsigned long l_max = 50;
  std::optional<long> interior;
  std::optional<std::uint64_t> max_nodes;
  std::uint64_t save_every = 500;

  auto* count_cmd = app.add_subcommand("count", "Lattice points in a body");
  count_cmd->add_option("--body", body, "@name or polytope JSON file")->required();
  auto* volume_cmd = app.add_subcommand("volume", "Exact volume");
  volume_cmd->add_option("--body", body, "@name or polytope JSON file")->required();
  auto* polar_cmd = app.add_subcommand("polar", "Polar body");
  polar_cmd->add_option("--body", body, "@name or polytope JSON file")->required();
  auto* dav_cmd = app.add_subcommand("davenport", "Volume polynomial of K plus a lattice parallelepiped");
  dav_cmd->add_option("--body", body, "@name or polytope JSON file")->required();
  dav_cmd->add_option("--gens", gens, "Generators as \"a,b;c,d\" (default: unit cell)");

  auto* verify_cmd = app.add_subcommand("verify", "Check inequalities on bodies");
  verify_cmd->add_option("--suite", suite, "blichfeldt|vdcorput|sym-exact|gs-product|gs-ratio|mahler|all")
      ->check(CLI::IsMember({"blichfeldt", "vdcorput", "sym-exact", "gs-product", "gs-ratio", "mahler", "all"}));
  verify_cmd->add_option("--body", bodies, "@name or polytope JSON file (repeatable)");
  verify_cmd->add_flag("--builtin", builtin, "Add the built-in corpus");
  verify_cmd->add_option("--random", random, "Add random symmetric bodies in dimensions 2-4");
  verify_cmd->add_option("--coord", coord, "Coordinate bound for random bodies")->check(CLI::Range(1L, 50L));
  verify_cmd->add_option("--subset-cap", subset_cap, "Independent point sets tried by sym-exact")
      ->check(CLI::Range(std::size_t{1}, std::size_t{100000}));

  auto* report_cmd = app.add_subcommand("report", "Tables");
  report_cmd->add_flag("--asymptotics", asymptotics, "Laguerre growth and crossing table");
  report_cmd->add_option("--n-max", n_max, "Largest n")->check(CLI::Range(1u, 400u));
  report_cmd->add_option("--epsilon", eps, "Epsilon in (0, 1]");
  report_cmd->add_flag("--crosspolytope", cross, "Crosspolytope family table");
  report_cmd->add_option("--n", cross_n, "Crosspolytope dimension");
  report_cmd->add_option("--l-max", l_max, "Largest stretch")->check(CLI::Range(1UL, 1000UL));
  report_cmd->add_option("--g-monotonicity", g_k, "Check g(k) >= g(k+1) for k < K")->check(CLI::Range(1u, 400u));
  report_cmd->add_option("--laguerre-audit", audit_k, "Audit the stated recurrence for k <= K")
      ->check(CLI::Range(0u, 400u));

  auto* search_cmd = app.add_subcommand("search", "Enumerate symmetric lattice polytopes up to unimodular maps");
  search_cmd->add_option("--dim", dim, "Dimension (2 or 3)")->required();
  search_cmd->add_option("--bound", bound, "Coordinate bound B")->required();
  search_cmd->add_option("--interior", interior, "Keep classes with exactly this many interior points");
  search_cmd->add_option("--checkpoint", checkpoint, "Checkpoint file");
  search_cmd->add_flag("--resume", resume, "Resume from the checkpoint");
  search_cmd->add_option("--max-nodes", max_nodes, "Stop after this many nodes");
  search_cmd->add_option("--save-every", save_every, "Nodes between checkpoint writes");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*count_cmd) return cmd_count(g, body, out);
    if (*volume_cmd) return cmd_volume(g, body, out);
    if (*polar_cmd) return cmd_polar(g, body, out);
    if (*dav_cmd) return cmd_davenport(g, body, gens, out);
    if (*verify_cmd) return cmd_verify(g, suite, bodies, builtin, random, coord, subset_cap, out);
    if (*report_cmd) {
      const int picked = int(asymptotics) + int(cross) + int(g_k > 0) + int(report_cmd->count("--laguerre-audit") > 0);
      if (picked != 1)
        throw UsageError("report needs exactly one of --asymptotics, --crosspolytope, --g-monotonicity, --laguerre-audit");
      if (asymptotics) return cmd_report_asymptotics(g, n_max, eps, out);
      if (cross) return cmd_report_crosspolytope(g, cross_n, l_max, out);
      if (g_k > 0) return cmd_report_g(g, g_k, out);
      return cmd_report_audit(g, audit_k, out);
    }
    if (*search_cmd) return cmd_search(g, dim, bound, interior, checkpoint, resume, max_nodes, save_every, out);
  } catch (const std::exception& e) {
    err << "latnum: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace latnum
