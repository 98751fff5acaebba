#pragma once

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fqcount/fqcount.hpp"
#include "fqcount/serialize.hpp"
#include "fqcount/verify.hpp"

namespace fqcount {

// Exit codes: 0 success, 1 verification failure, 2 usage/validation error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;

namespace cli_detail {

enum class Format { table, json, csv };

struct CommonOpts {
  uint64_t q = 0;
  uint64_t p = 0;
  uint32_t k = 1;
  std::string format = "table";
  std::string out_path;
  uint64_t seed = kDefaultSeed;
  uint32_t threads = 1;
  bool timings = false;

  Format fmt() const {
    if (format == "table") return Format::table;
    if (format == "json") return Format::json;
    if (format == "csv") return Format::csv;
    fail(Errc::parse_error, "unknown format '" + format + "'");
  }

  FieldSpec field() const {
    if (q != 0) {
      if (p != 0) fail(Errc::parse_error, "give either --q or (--p, --k), not both");
      return field_from_q(q);
    }
    if (p == 0) fail(Errc::parse_error, "a field is required: --q or (--p, --k)");
    return field_create(p, k);
  }
};

inline void add_field_opts(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--q", o.q, "field size q = p^k (prime power)");
  cmd->add_option("--p", o.p, "field characteristic (with --k)");
  cmd->add_option("--k", o.k, "extension degree (with --p)");
}

inline void add_output_opts(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--format", o.format, "output format: table|json|csv")->default_str("table");
  cmd->add_option("--out", o.out_path, "write output to FILE instead of stdout");
}

inline void emit(const CommonOpts& o, const std::string& text, std::ostream& out) {
  if (o.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.out_path, std::ios::binary);
  if (!f) fail(Errc::parse_error, "cannot open output file '" + o.out_path + "'");
  f << text;
}

inline std::string render_bound(const BoundResult& b, Format fmt) {
  if (fmt == Format::json) return to_json(b).dump(2) + "\n";
  std::ostringstream os;
  os << "bound " << to_string(b.name) << "\n";
  os << "  value         " << b.value.str() << "\n";
  os << "  hypothesis_ok " << (b.hypothesis_ok ? "yes" : "no") << "\n";
  if (!b.note.empty()) os << "  note          " << b.note << "\n";
  os << "  params       ";
  for (const auto& [key, value] : b.params) os << " " << key << "=" << value.str();
  os << "\n";
  return os.str();
}

// "n:deg,n:deg" component list for the couvreur subcommand.
inline std::vector<std::pair<int64_t, uint64_t>> parse_components(const std::string& text) {
  std::vector<std::pair<int64_t, uint64_t>> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    size_t colon = item.find(':');
    if (colon == std::string::npos)
      fail(Errc::parse_error, "component '" + item + "' is not of the form dim:deg");
    try {
      out.emplace_back(std::stoll(item.substr(0, colon)), std::stoull(item.substr(colon + 1)));
    } catch (const std::exception&) {
      fail(Errc::parse_error, "component '" + item + "' is not of the form dim:deg");
    }
  }
  if (out.empty()) fail(Errc::parse_error, "empty component list");
  return out;
}

inline std::vector<HomogPoly> read_poly_file(const std::string& path, uint32_t m, const FieldSpec& F) {
  std::ifstream in(path);
  if (!in) fail(Errc::parse_error, "cannot open polynomial file '" + path + "'");
  std::vector<HomogPoly> polys;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    bool blank = line.find_first_not_of(" \t\r") == std::string::npos;
    if (blank) continue;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    try {
      polys.push_back(parse_homog_poly(line, m, F));
    } catch (const Error& e) {
      fail(Errc::parse_error, path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (polys.empty()) fail(Errc::empty_input, "no polynomials in '" + path + "'");
  return polys;
}

}  // namespace cli_detail

// Builds and runs the fqcount CLI against argv-style arguments. Streams are
// injectable so tests can drive the CLI in-process.
inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  using cli_detail::CommonOpts;
  using cli_detail::Format;

  CLI::App app{"point counts, bounds, and PRM code weights for hypersurfaces over finite fields"};
  app.require_subcommand(1);
  int exit_code = kExitOk;

  // ---- bound ----------------------------------------------------------
  CommonOpts bound_opts;
  std::string bound_name;
  uint32_t bound_d = 1, bound_m = 1, bound_r = 1;
  uint64_t bound_a = 1;
  int64_t bound_n = 0;
  uint64_t bound_deg = 1;
  std::string bound_components;
  auto* bound = app.add_subcommand("bound", "evaluate a closed-form bound");
  bound->add_option("name", bound_name,
                    "one of: schwarz-zippel, serre, tb, zanella, homma, zanella-set, couvreur, "
                    "couvreur-equidim, tb-ci, couvreur-ci, tb-ci-lower")
      ->required();
  bound->add_option("--d", bound_d, "degree");
  bound->add_option("--m", bound_m, "projective dimension");
  bound->add_option("--r", bound_r, "number of independent forms");
  bound->add_option("--a", bound_a, "max hyperplane section size");
  bound->add_option("--n", bound_n, "component dimension (couvreur-equidim)");
  bound->add_option("--deg", bound_deg, "component degree (couvreur-equidim)");
  bound->add_option("--components", bound_components, "components as dim:deg,dim:deg (couvreur)");
  cli_detail::add_field_opts(bound, bound_opts);
  cli_detail::add_output_opts(bound, bound_opts);
  bound->callback([&] {
    uint64_t q = bound_opts.q != 0 ? bound_opts.q : bound_opts.field().q;
    BoundResult res;
    if (bound_name == "schwarz-zippel") res = schwarz_zippel_bound(bound_d, bound_m, q);
    else if (bound_name == "serre") res = serre_bound(bound_d, bound_m, q);
    else if (bound_name == "tb") res = tb_bound(bound_d, bound_m, bound_r, q);
    else if (bound_name == "zanella") res = zanella_quadric_bound(bound_m, bound_r, q);
    else if (bound_name == "homma") res = homma_bound(bound_a, bound_m, q);
    else if (bound_name == "zanella-set") res = zanella_set_bound_result(bound_a, q);
    else if (bound_name == "couvreur") res = couvreur_bound(bound_m, q, cli_detail::parse_components(bound_components));
    else if (bound_name == "couvreur-equidim") res = couvreur_equidim_bound(bound_m, q, bound_n, bound_deg);
    else if (bound_name == "tb-ci") res = ci_compare(bound_d, bound_m, bound_r, q).tb;
    else if (bound_name == "couvreur-ci") res = ci_compare(bound_d, bound_m, bound_r, q).couvreur;
    else if (bound_name == "tb-ci-lower") {
      BoundResult r;
      r.name = BoundName::tb_ci;
      r.value = tb_lower_bound_ci(bound_d, bound_m, bound_r, q);
      r.note = "lower bound on T_r(d)";
      r.params = {{"d", bound_d}, {"m", bound_m}, {"r", bound_r}, {"q", q}};
      res = r;
    } else {
      fail(Errc::parse_error, "unknown bound name '" + bound_name + "'");
    }
    cli_detail::emit(bound_opts, cli_detail::render_bound(res, bound_opts.fmt()), out);
  });

  // ---- compare-ci -----------------------------------------------------
  CommonOpts ci_opts;
  uint32_t ci_d = 2, ci_m = 2, ci_r = 2;
  auto* ci = app.add_subcommand("compare-ci", "compare the TB and Couvreur complete-intersection bounds");
  ci->add_option("--d", ci_d, "degree")->required();
  ci->add_option("--m", ci_m, "projective dimension")->required();
  ci->add_option("--r", ci_r, "codimension")->required();
  cli_detail::add_field_opts(ci, ci_opts);
  cli_detail::add_output_opts(ci, ci_opts);
  ci->callback([&] {
    uint64_t q = ci_opts.q != 0 ? ci_opts.q : ci_opts.field().q;
    CiComparison cmp = ci_compare(ci_d, ci_m, ci_r, q);
    if (ci_opts.fmt() == Format::json) {
      Json j;
      j["tb"] = to_json(cmp.tb);
      j["couvreur"] = to_json(cmp.couvreur);
      j["couvreur_vs_tb"] = to_string(cmp.couvreur_vs_tb);
      cli_detail::emit(ci_opts, j.dump(2) + "\n", out);
    } else {
      std::ostringstream os;
      os << "T_r(d) = " << cmp.tb.value.str() << "\n";
      os << "C_r(d) = " << cmp.couvreur.value.str() << "\n";
      os << "couvreur_vs_tb: " << to_string(cmp.couvreur_vs_tb) << "\n";
      if (!cmp.tb.hypothesis_ok) os << "note: " << cmp.tb.note << "\n";
      cli_detail::emit(ci_opts, os.str(), out);
    }
  });

  // ---- count ----------------------------------------------------------
  CommonOpts count_opts;
  std::string count_file;
  uint32_t count_m = 1;
  auto* count = app.add_subcommand("count", "count projective zeros of a polynomial system");
  count->add_option("--file", count_file, "polynomial file: one per line, '#' comments")->required();
  count->add_option("--m", count_m, "projective dimension")->required();
  cli_detail::add_field_opts(count, count_opts);
  cli_detail::add_output_opts(count, count_opts);
  count->callback([&] {
    FieldSpec F = count_opts.field();
    auto polys = cli_detail::read_poly_file(count_file, count_m, F);
    uint64_t n = count_projective_zeros(polys, count_m, F);
    if (count_opts.fmt() == Format::json) {
      Json j;
      j["count"] = n;
      j["m"] = count_m;
      j["q"] = F.q;
      j["polynomials"] = polys.size();
      cli_detail::emit(count_opts, j.dump(2) + "\n", out);
    } else {
      cli_detail::emit(count_opts, std::to_string(n) + "\n", out);
    }
  });

  // ---- search ---------------------------------------------------------
  CommonOpts search_opts;
  uint32_t search_d = 1, search_m = 1, search_r = 1;
  std::string search_mode = "exhaustive";
  uint64_t search_budget = 10000;
  auto* search = app.add_subcommand("search", "maximize |V(F_1..F_r)| over independent degree-d families");
  search->add_option("--d", search_d, "degree")->required();
  search->add_option("--m", search_m, "projective dimension")->required();
  search->add_option("--r", search_r, "family size")->required();
  search->add_option("--mode", search_mode, "exhaustive|randomized")->default_str("exhaustive");
  search->add_option("--budget", search_budget, "random trials (randomized mode)");
  search->add_option("--seed", search_opts.seed, "PRNG seed (randomized mode)");
  search->add_option("--threads", search_opts.threads, "worker threads");
  search->add_flag("--timings", search_opts.timings, "include elapsed_ms in output");
  cli_detail::add_field_opts(search, search_opts);
  cli_detail::add_output_opts(search, search_opts);
  search->callback([&] {
    FieldSpec F = search_opts.field();
    SearchMode mode;
    if (search_mode == "exhaustive") mode = SearchMode::exhaustive;
    else if (search_mode == "randomized") mode = SearchMode::randomized;
    else fail(Errc::parse_error, "unknown mode '" + search_mode + "'");
    CountReport rep = search_max_points(search_d, search_m, search_r, F, mode, search_budget,
                                        search_opts.seed, search_opts.threads);
    if (search_opts.fmt() == Format::json) {
      cli_detail::emit(search_opts, to_json(rep, F, search_opts.timings).dump(2) + "\n", out);
    } else {
      std::ostringstream os;
      os << "count " << rep.count << " (" << to_string(rep.method) << ")\n";
      os << "witness:\n";
      for (const auto& f : rep.witness) os << "  " << to_string(f, F) << "\n";
      if (search_opts.timings) os << "elapsed_ms " << rep.elapsed_ms << "\n";
      cli_detail::emit(search_opts, os.str(), out);
    }
  });

  // ---- census ---------------------------------------------------------
  CommonOpts census_opts;
  uint32_t census_m = 2;
  auto* census = app.add_subcommand("census", "TB vs Zanella gap table over r = 1..delta_m");
  census->add_option("--m", census_m, "projective dimension")->required();
  cli_detail::add_field_opts(census, census_opts);
  cli_detail::add_output_opts(census, census_opts);
  census->callback([&] {
    uint64_t q = census_opts.q != 0 ? census_opts.q : census_opts.field().q;
    if (!prime_power_decompose(q)) fail(Errc::not_prime_power, "q must be a prime power");
    auto rows = tb_zanella_census(census_m, q);
    uint64_t failing = census_failing_rows(rows);
    BigInt quota = binomial(census_m - 1, 2);
    std::string summary = "failing_rows " + std::to_string(failing) + " (expected >= C(m-1,2) = " +
                          quota.str() + ")\n";
    Format fmt = census_opts.fmt();
    if (fmt == Format::json) {
      Json j;
      j["m"] = census_m;
      j["q"] = q;
      j["rows"] = to_json(rows);
      j["failing_rows"] = failing;
      j["cor34_quota"] = json_int(quota);
      cli_detail::emit(census_opts, j.dump(2) + "\n", out);
    } else if (fmt == Format::csv) {
      cli_detail::emit(census_opts, census_csv(rows) + summary, out);
    } else {
      std::ostringstream os;
      os << "   r   k   i          T_r          Z_r    gap\n";
      for (const auto& row : rows) {
        os << std::setw(4) << row.r << std::setw(4) << row.k << std::setw(4) << row.i << std::setw(13)
           << row.tb.str() << std::setw(13) << row.zanella.str() << std::setw(7) << row.gap.str() << "\n";
      }
      os << summary;
      cli_detail::emit(census_opts, os.str(), out);
    }
  });

  // ---- prm ------------------------------------------------------------
  CommonOpts prm_opts;
  uint32_t prm_d = 1, prm_m = 1;
  std::string prm_action;
  auto* prm = app.add_subcommand("prm", "projective Reed-Muller code tools");
  prm->add_option("action", prm_action, "matrix | weights | closed-forms")->required();
  prm->add_option("--d", prm_d, "degree")->required();
  prm->add_option("--m", prm_m, "projective dimension")->required();
  prm->add_option("--threads", prm_opts.threads, "worker threads");
  cli_detail::add_field_opts(prm, prm_opts);
  cli_detail::add_output_opts(prm, prm_opts);
  prm->callback([&] {
    FieldSpec F = prm_opts.field();
    Format fmt = prm_opts.fmt();
    if (prm_action == "matrix") {
      LinearCode C = prm_code(prm_d, prm_m, F);
      if (fmt == Format::json)
        cli_detail::emit(prm_opts, to_json(C).dump(2) + "\n", out);
      else
        cli_detail::emit(prm_opts, matrix_text(C), out);
    } else if (prm_action == "weights") {
      LinearCode C = prm_code(prm_d, prm_m, F);
      WeightHierarchy h;
      h.label = C.label;
      h.method = WeightMethod::subspace_search;
      for (uint32_t r = 1; r <= C.k; ++r) h.weights.push_back(higher_weight(C, r));
      if (fmt == Format::json) {
        cli_detail::emit(prm_opts, to_json(h).dump(2) + "\n", out);
      } else if (fmt == Format::csv) {
        std::string text = "r,d_r\n";
        for (uint32_t r = 1; r <= h.weights.size(); ++r)
          text += std::to_string(r) + "," + std::to_string(h.weights[r - 1]) + "\n";
        cli_detail::emit(prm_opts, text, out);
      } else {
        std::string text;
        for (uint64_t w : h.weights) text += (text.empty() ? "" : " ") + std::to_string(w);
        cli_detail::emit(prm_opts, text + "\n", out);
      }
    } else if (prm_action == "closed-forms") {
      PartialWeights w = prm_quadric_closed_forms(prm_m, F.q);
      if (prm_d != 2) fail(Errc::hypothesis_violated, "closed forms exist for d = 2 only");
      if (fmt == Format::json) {
        cli_detail::emit(prm_opts, to_json(w).dump(2) + "\n", out);
      } else if (fmt == Format::csv) {
        std::string text = "r,d_r\n";
        for (const auto& [r, v] : w.by_r) text += std::to_string(r) + "," + std::to_string(v) + "\n";
        cli_detail::emit(prm_opts, text, out);
      } else {
        std::string text;
        for (const auto& [r, v] : w.by_r)
          text += "d_" + std::to_string(r) + " = " + std::to_string(v) + "\n";
        cli_detail::emit(prm_opts, text, out);
      }
    } else {
      fail(Errc::parse_error, "unknown prm action '" + prm_action + "'");
    }
  });

  // ---- verify ---------------------------------------------------------
  CommonOpts verify_opts;
  std::string verify_suite = "fast";
  auto* verify = app.add_subcommand("verify", "run the acceptance checks");
  verify->add_option("suite", verify_suite, "fast | full")->default_str("fast");
  verify->add_option("--seed", verify_opts.seed, "seed for the randomized checks");
  verify->add_option("--threads", verify_opts.threads, "worker threads");
  verify->callback([&] {
    Suite suite;
    if (verify_suite == "fast") suite = Suite::fast;
    else if (verify_suite == "full") suite = Suite::full;
    else fail(Errc::parse_error, "unknown suite '" + verify_suite + "'");
    auto results = run_acceptance(suite, verify_opts.seed, verify_opts.threads);
    bool all = true;
    for (const auto& r : results) {
      out << format_check_line(r) << "\n";
      all = all && r.pass;
    }
    out << (all ? "all checks passed" : "CHECKS FAILED") << "\n";
    if (!all) exit_code = kExitVerifyFailed;
  });

  try {
    std::reverse(args.begin(), args.end());  // CLI11 consumes args back to front
    app.parse(std::move(args));
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return exit_code;
}

}  // namespace fqcount
