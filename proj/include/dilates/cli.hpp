#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "compression.hpp"
#include "config.hpp"
#include "constructions.hpp"
#include "oracles.hpp"
#include "point_set.hpp"
#include "report.hpp"
#include "search.hpp"

namespace dilates::cli {

namespace detail {

inline PointSet load_set(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open set file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_set(ss.str());
}

inline void emit(const std::string& payload, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << payload;
    return;
  }
  std::ofstream f(out_path);
  if (!f) throw parse_error("cannot open output '" + out_path + "'");
  f << payload;
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string render_reports(const std::vector<Report>& reports, const std::string& format) {
  std::string payload;
  if (format == "jsonl") {
    for (const auto& r : reports) payload += r.to_json().dump() + '\n';
  } else if (format == "csv") {
    payload = "claim,inputs,lhs,rhs,slack,exact,pass,witness\n";
    for (const auto& r : reports)
      payload += csv_escape(r.claim) + ',' + csv_escape(r.inputs) + ',' + csv_escape(r.lhs) + ',' +
                 csv_escape(r.rhs) + ',' + csv_escape(r.slack) + ',' + (r.exact ? "true" : "false") +
                 ',' + (r.pass ? "true" : "false") + ',' + csv_escape(r.witness) + '\n';
  } else {
    for (const auto& r : reports) payload += r.text_line() + '\n';
  }
  return payload;
}

inline std::string render_record(const SearchRecord& r, const std::string& format) {
  if (format == "jsonl" || format == "csv") return record_to_json(r).dump() + '\n';
  std::string out = "n=" + std::to_string(r.n) + " best_value=" + std::to_string(r.best_value) +
                    " d=" + std::to_string(r.d) + " method=" + r.method +
                    " seed=" + std::to_string(r.seed) +
                    " proven_optimal=" + (r.proven_optimal ? "true" : "false");
  if (r.method == "exhaustive")
    out += " d_max=" + std::to_string(r.d_max) +
           " dim_certified=" + (r.dim_certified ? "true" : "false");
  if (r.method == "local") out += " budget=" + std::to_string(r.budget);
  out += "\nwitness:\n" + serialize_pts(r.witness);
  return out;
}

}  // namespace detail

// Runs the command line. Exit codes: 0 success / all checks verified;
// 1 a verifier reported a violation (an implementation bug: the checked
// statements are theorems); 2 usage or format error; 3 resource cap exceeded
// or 64-bit coordinate overflow.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact laboratory for sums of dilates under the shift map"};
  app.require_subcommand(1);

  std::string out_path;
  std::string format = "text";
  std::uint64_t seed = 0;
  int workers = 1;
  std::optional<std::size_t> cap_override;
  std::string config_path;
  const char* env_ledger = std::getenv("DILATES_LEDGER");
  std::string ledger_path = env_ledger ? env_ledger : "dilates_ledger.jsonl";

  app.add_option("--out", out_path, "write the primary output to this path instead of stdout");
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"text", "jsonl", "csv"}));
  app.add_option("--seed", seed, "random seed for seeded subcommands");
  app.add_option("--workers", workers, "worker threads for parallel sweeps")
      ->check(CLI::PositiveNumber);
  app.add_option("--cap", cap_override, "element cap for sumset enumerations");
  app.add_option("--config", config_path, "key=value config file (caps, annealing)");
  app.add_option("--ledger", ledger_path, "search results ledger path (env DILATES_LEDGER)");

  // set operations
  std::string arg_a, arg_b, arg_c;
  auto* cmd_sumset = app.add_subcommand("sumset", "Minkowski sum of two set files");
  cmd_sumset->add_option("A", arg_a, "set file")->required();
  cmd_sumset->add_option("B", arg_b, "set file")->required();
  auto* cmd_dilate = app.add_subcommand("dilate", "A + Phi(A) for a set file");
  cmd_dilate->add_option("A", arg_a, "set file")->required();
  auto* cmd_compress = app.add_subcommand("compress", "full compression of a set file");
  cmd_compress->add_option("A", arg_a, "set file")->required();
  auto* cmd_reduce = app.add_subcommand("reduce", "compression plus dimension reduction");
  cmd_reduce->add_option("A", arg_a, "set file")->required();

  // verify
  auto* cmd_verify = app.add_subcommand("verify", "exact verifiers for the toolkit's inequalities");
  cmd_verify->require_subcommand(1);
  std::string idx_text, j1_text, j2_text;
  int alpha_m = 1;
  auto* v_discbm = cmd_verify->add_subcommand("discbm", "projection-sum lower bound for A+B");
  v_discbm->add_option("A", arg_a)->required();
  v_discbm->add_option("B", arg_b)->required();
  auto* v_hdsums = cmd_verify->add_subcommand("hdsums", "full-dimensional sumset lower bound");
  v_hdsums->add_option("A", arg_a)->required();
  v_hdsums->add_option("B", arg_b)->required();
  auto* v_triangle = cmd_verify->add_subcommand("triangle", "Ruzsa triangle inequality");
  v_triangle->add_option("X", arg_a)->required();
  v_triangle->add_option("Y", arg_b)->required();
  v_triangle->add_option("Z", arg_c)->required();
  auto* v_prchain = cmd_verify->add_subcommand("prchain", "doubling chain up to K^10");
  v_prchain->add_option("A", arg_a)->required();
  auto* v_projbound = cmd_verify->add_subcommand("projbound", "projection bound for compressed sets");
  v_projbound->add_option("A", arg_a)->required();
  v_projbound->add_option("--index", idx_text, "single index set, e.g. 1,3 ('-' = empty)");
  auto* v_injection = cmd_verify->add_subcommand("injection", "pair-map injection witness");
  v_injection->add_option("A", arg_a)->required();
  v_injection->add_option("--j1", j1_text, "index set J1")->required();
  v_injection->add_option("--j2", j2_text, "index set J2")->required();
  auto* v_alphacount = cmd_verify->add_subcommand("alphacount", "histogram of longest runs");
  v_alphacount->add_option("--m", alpha_m, "ambient arity")->required()->check(CLI::PositiveNumber);
  auto* v_trace = cmd_verify->add_subcommand("trace", "replay the lower-bound argument on a set");
  v_trace->add_option("A", arg_a)->required();

  // construct
  auto* cmd_construct = app.add_subcommand("construct", "generators emitting .pts sets");
  cmd_construct->require_subcommand(1);
  std::int64_t gen_n = 1;
  int gen_m = 1, gen_d = 1;
  auto* c_grid = cmd_construct->add_subcommand("grid", "{0..n-1}^m");
  c_grid->add_option("--n", gen_n)->required()->check(CLI::PositiveNumber);
  c_grid->add_option("--m", gen_m)->required()->check(CLI::PositiveNumber);
  auto* c_ap = cmd_construct->add_subcommand("ap", "{0..n-1} in one dimension");
  c_ap->add_option("--n", gen_n)->required()->check(CLI::PositiveNumber);
  auto* c_ideal = cmd_construct->add_subcommand("ideal", "seeded random downward-closed set");
  c_ideal->add_option("--n", gen_n)->required()->check(CLI::PositiveNumber);
  c_ideal->add_option("--d", gen_d)->required()->check(CLI::PositiveNumber);

  // search
  auto* cmd_search = app.add_subcommand("search", "extremal search for min |A+Phi(A)|");
  cmd_search->require_subcommand(1);
  std::size_t search_n = 1;
  int search_dmax = 4, search_d = 2;
  std::uint64_t budget = 1000;
  std::string n_list_text;
  double env_c = 0.1, env_cprime = 1.0;
  auto* s_exact = cmd_search->add_subcommand("exact", "exhaustive over downward-closed sets");
  s_exact->add_option("--n", search_n)->required()->check(CLI::PositiveNumber);
  s_exact->add_option("--dmax", search_dmax)->check(CLI::PositiveNumber);
  auto* s_local = cmd_search->add_subcommand("local", "seeded simulated annealing");
  s_local->add_option("--n", search_n)->required()->check(CLI::PositiveNumber);
  s_local->add_option("--d", search_d)->required()->check(CLI::PositiveNumber);
  s_local->add_option("--budget", budget)->check(CLI::PositiveNumber);
  auto* s_table = cmd_search->add_subcommand("table", "best-known values vs envelopes, CSV");
  s_table->add_option("--n-list", n_list_text, "comma-separated sizes")->required();
  s_table->add_option("--c", env_c, "lower envelope constant");
  s_table->add_option("--cprime", env_cprime, "upper envelope constant");

  // bound
  auto* cmd_bound = app.add_subcommand("bound", "envelope value e^(c sqrt(log n)) * n");
  std::size_t bound_n = 1;
  double bound_c = 0.1;
  cmd_bound->add_option("n", bound_n)->required()->check(CLI::PositiveNumber);
  cmd_bound->add_option("c", bound_c);

  // global flags are accepted after subcommand names as well
  std::function<void(CLI::App*)> enable_fallthrough = [&](CLI::App* node) {
    for (CLI::App* sub : node->get_subcommands([](CLI::App*) { return true; })) {
      sub->fallthrough();
      enable_fallthrough(sub);
    }
  };
  enable_fallthrough(&app);

  try {
    std::reverse(args.begin(), args.end());
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    Config cfg = config_path.empty() ? Config{} : Config::from_file(config_path);
    if (cap_override) cfg.element_cap = *cap_override;

    auto emit_set = [&](const PointSet& a) { detail::emit(serialize_pts(a), out_path, out); };
    auto finish_reports = [&](std::vector<Report> reports) {
      detail::emit(detail::render_reports(reports, format), out_path, out);
      if (!all_pass(reports)) {
        err << "verifier reported a violation; the checked statement is a theorem, so this "
               "signals an implementation bug\n";
        return 1;
      }
      return 0;
    };

    if (cmd_sumset->parsed())
      emit_set(minkowski(detail::load_set(arg_a), detail::load_set(arg_b), cfg.element_cap));
    else if (cmd_dilate->parsed())
      emit_set(dilate_sum(detail::load_set(arg_a), cfg.element_cap));
    else if (cmd_compress->parsed())
      emit_set(compress_full(detail::load_set(arg_a)));
    else if (cmd_reduce->parsed())
      emit_set(reduce_dim(detail::load_set(arg_a)));
    else if (cmd_verify->parsed()) {
      if (v_discbm->parsed())
        return finish_reports({check_discbm(detail::load_set(arg_a), detail::load_set(arg_b),
                                            cfg.subset_dim_cap, cfg.element_cap)});
      if (v_hdsums->parsed())
        return finish_reports(
            {check_hdsums(detail::load_set(arg_a), detail::load_set(arg_b), cfg.element_cap)});
      if (v_triangle->parsed())
        return finish_reports({check_ruzsa_triangle(detail::load_set(arg_a), detail::load_set(arg_b),
                                                    detail::load_set(arg_c), cfg.element_cap)});
      if (v_prchain->parsed()) {
        DoublingChain chain = pr_chain(detail::load_set(arg_a), cfg.element_cap);
        return finish_reports(std::move(chain.steps));
      }
      if (v_projbound->parsed()) {
        std::optional<IndexSet> only;
        if (!idx_text.empty()) only = IndexSet::parse(idx_text);
        return finish_reports({check_projection_bound(detail::load_set(arg_a), only,
                                                      cfg.subset_dim_cap, cfg.element_cap, workers)});
      }
      if (v_injection->parsed())
        return finish_reports({check_injection_claim(detail::load_set(arg_a),
                                                     IndexSet::parse(j1_text),
                                                     IndexSet::parse(j2_text), cfg.element_cap)});
      if (v_alphacount->parsed()) {
        AlphaCount ac = count_by_alpha(alpha_m, cfg.alpha_m_cap);
        std::string hist = "histogram:";
        for (std::size_t k = 0; k < ac.hist.size(); ++k)
          hist += " h[" + std::to_string(k) + "]=" + std::to_string(ac.hist[k]);
        ac.report.inputs += " " + hist;
        return finish_reports({ac.report});
      }
      if (v_trace->parsed())
        return finish_reports(
            theorem_trace(detail::load_set(arg_a), cfg.subset_dim_cap, cfg.element_cap, workers));
    } else if (cmd_construct->parsed()) {
      if (c_grid->parsed()) emit_set(kl_grid(gen_n, gen_m, cfg.element_cap));
      if (c_ap->parsed()) emit_set(ap(gen_n));
      if (c_ideal->parsed())
        emit_set(random_ideal(static_cast<std::size_t>(gen_n), gen_d, seed));
    } else if (cmd_search->parsed()) {
      if (s_exact->parsed()) {
        SearchRecord rec = exact_min(search_n, search_dmax, cfg.enum_n_cap, cfg.enum_d_cap,
                                     cfg.element_cap, workers);
        append_to_ledger(ledger_path, rec);
        out << detail::render_record(rec, format);
        if (!out_path.empty()) detail::emit(serialize_pts(rec.witness), out_path, out);
      }
      if (s_local->parsed()) {
        SearchRecord rec =
            local_search(search_n, search_d, budget, seed, cfg.anneal, cfg.element_cap);
        append_to_ledger(ledger_path, rec);
        out << detail::render_record(rec, format);
        if (!out_path.empty()) detail::emit(serialize_pts(rec.witness), out_path, out);
      }
      if (s_table->parsed()) {
        std::vector<std::size_t> ns;
        std::stringstream ss(n_list_text);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
          if (tok.empty()) throw parse_error("malformed --n-list");
          ns.push_back(std::stoull(tok));
        }
        auto rows = bounds_table(ns, env_c, env_cprime, read_ledger(ledger_path), cfg.enum_n_cap,
                                 cfg.enum_d_cap, cfg.element_cap, workers);
        detail::emit(bounds_csv(rows), out_path, out);
      }
    } else if (cmd_bound->parsed()) {
      const double value = lower_bound_value(bound_n, bound_c);
      if (format == "jsonl") {
        nlohmann::json j;
        j["n"] = bound_n;
        j["c"] = bound_c;
        j["value"] = value;
        detail::emit(j.dump() + "\n", out_path, out);
      } else {
        detail::emit("envelope(n=" + std::to_string(bound_n) + ", c=" + std::to_string(bound_c) +
                         ") = " + std::to_string(value) + "\n",
                     out_path, out);
      }
    }
    return 0;
  } catch (const parse_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const precondition_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const cap_exceeded& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const overflow_error& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const nlohmann::json::exception& e) {
    err << "error: malformed ledger or record: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace dilates::cli
